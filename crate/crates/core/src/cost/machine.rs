use serde::{Deserialize, Serialize};

use crate::count::OpCount;
use crate::error::{Error, Result};

/// A computer characterised only by its addition and multiplication rates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MachineProfile {
    pub name: String,
    #[serde(rename = "adds_per_sec")]
    pub additions_per_second: f64,
    #[serde(rename = "mults_per_sec")]
    pub multiplications_per_second: f64,
}

impl MachineProfile {
    pub fn new(name: impl Into<String>, adds_per_sec: f64, mults_per_sec: f64) -> Result<Self> {
        let p = MachineProfile {
            name: name.into(),
            additions_per_second: adds_per_sec,
            multiplications_per_second: mults_per_sec,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let ok = |r: f64| r.is_finite() && r > 0.0;
        if ok(self.additions_per_second) && ok(self.multiplications_per_second) {
            Ok(())
        } else {
            Err(Error::BadRate(self.name.clone()))
        }
    }

    /// 5000 additions or 357 multiplications per second.
    pub fn eniac() -> Self {
        MachineProfile {
            name: "ENIAC".into(),
            additions_per_second: 5000.0,
            multiplications_per_second: 357.0,
        }
    }

    /// 62500 additions or 3333 multiplications per second.
    pub fn tradic() -> Self {
        MachineProfile {
            name: "TRADIC".into(),
            additions_per_second: 62500.0,
            multiplications_per_second: 3333.0,
        }
    }

    pub fn builtin() -> Vec<MachineProfile> {
        vec![Self::eniac(), Self::tradic()]
    }

    /// Looks a built-in profile up by case-insensitive name.
    pub fn by_name(name: &str) -> Result<Self> {
        Self::builtin()
            .into_iter()
            .find(|p| p.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownMachine(name.to_string()))
    }
}

/// Parses a JSON array of `{"name", "adds_per_sec", "mults_per_sec"}`.
pub fn load_profiles(json: &str) -> Result<Vec<MachineProfile>> {
    let profiles: Vec<MachineProfile> =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    for p in &profiles {
        p.validate()?;
    }
    Ok(profiles)
}

/// Milliseconds to perform `counts` at the profile's rates, with no other
/// overhead: `1000 * (mults / mult_rate + adds / add_rate)`.
pub fn runtime_ms(profile: &MachineProfile, counts: OpCount) -> f64 {
    1000.0
        * (counts.multiplications as f64 / profile.multiplications_per_second
            + counts.additions as f64 / profile.additions_per_second)
}

/// Rounds half away from zero to `decimals` places.
pub fn round_half_up(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (x.abs() * scale + 0.5).floor() / scale * x.signum()
}

/// One-decimal rendering used by every table.
pub fn format_ms(x: f64) -> String {
    format!("{:.1}", round_half_up(x, 1))
}
