//! Count and running-time tables, rendered as Markdown, CSV or JSON with the
//! same numeric content.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::formula::{count_formula, AddsVariant, Provenance};
use super::machine::{format_ms, runtime_ms, MachineProfile};
use super::mpbsm_time_ms;
use crate::algos::{store_zechin_attributed, Algorithm};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::SquareMatrix;

/// Note attached to tables holding derived Store-zechin counts.
pub const DERIVED_NOTE: &str =
    "* derived closed form n*2^(n-1)-n, n*2^(n-1)-2^n+1; not among the published counts";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellValue {
    Count(u64),
    Millis(f64),
}

/// One table cell: the display string plus the full-precision numbers behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub display: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<CellValue>,
    /// Parenthesized alternate (Ryser with the claimed addition count).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt: Option<CellValue>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub derived: bool,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell {
            display: s.into(),
            value: None,
            alt: None,
            derived: false,
        }
    }

    pub fn count(v: u64, alt: Option<u64>, derived: bool) -> Self {
        let mut display = v.to_string();
        if let Some(a) = alt {
            let _ = write!(display, " ({a})");
        }
        if derived {
            display.push('*');
        }
        Cell {
            display,
            value: Some(CellValue::Count(v)),
            alt: alt.map(CellValue::Count),
            derived,
        }
    }

    pub fn millis(v: f64, alt: Option<f64>, derived: bool) -> Self {
        let mut display = format_ms(v);
        if let Some(a) = alt {
            let _ = write!(display, " ({})", format_ms(a));
        }
        if derived {
            display.push('*');
        }
        Cell {
            display,
            value: Some(CellValue::Millis(v)),
            alt: alt.map(CellValue::Millis),
            derived,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub id: String,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::Parse(format!("unknown table format `{s}`"))),
        }
    }
}

impl Table {
    /// Row whose first cell displays `label`.
    pub fn row(&self, label: &str) -> Option<&[Cell]> {
        self.rows
            .iter()
            .find(|r| r.first().is_some_and(|c| c.display == label))
            .map(Vec::as_slice)
    }

    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Markdown => self.to_markdown(),
            TableFormat::Csv => self.to_csv(),
            TableFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("tables serialize");
                s.push('\n');
                s
            }
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("**{}**\n\n", self.title);
        let _ = writeln!(out, "| {} |", self.columns.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(self.columns.len()));
        for row in &self.rows {
            let cells: Vec<&str> = row.iter().map(|c| c.display.as_str()).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        for note in &self.notes {
            let _ = write!(out, "\n{note}\n");
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.display.as_str()))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

pub const PUBLISHED_ORDERS: [usize; 3] = [3, 4, 5];

/// Multiplication and addition counts of the three algorithms at each order.
pub fn build_table4() -> Table {
    build_count_table(&PUBLISHED_ORDERS).expect("published orders are valid")
}

pub fn build_count_table(orders: &[usize]) -> Result<Table> {
    let mut columns = vec!["Algorithm".to_string()];
    for n in orders {
        columns.push(format!("n={n} x"));
        columns.push(format!("n={n} +"));
    }
    let mut rows = Vec::new();
    let mut any_derived = false;
    for alg in Algorithm::ALL {
        let mut row = vec![Cell::text(alg.display_name())];
        for &n in orders {
            let f = count_formula(alg, n, AddsVariant::Exact)?;
            let alt = match alg {
                Algorithm::Ryser => Some(
                    count_formula(alg, n, AddsVariant::Claimed)?
                        .counts
                        .additions,
                ),
                _ => None,
            };
            let derived = f.provenance == Provenance::Derived;
            any_derived |= derived;
            row.push(Cell::count(f.counts.multiplications, None, derived));
            row.push(Cell::count(f.counts.additions, alt, derived));
        }
        rows.push(row);
    }
    let mut notes =
        vec!["Parenthesized Ryser additions use the estimate (2^n-2)(n+1).".to_string()];
    if any_derived {
        notes.push(DERIVED_NOTE.to_string());
    }
    Ok(Table {
        id: "table4".into(),
        title: "Arithmetic steps of the three algorithms".into(),
        columns,
        rows,
        notes,
    })
}

/// Classical running times on ENIAC and TRADIC against the MPBSM sampling times.
pub fn build_table5() -> Table {
    build_runtime_table(&PUBLISHED_ORDERS, &MachineProfile::builtin())
        .expect("published orders are valid")
}

pub fn build_runtime_table(orders: &[usize], machines: &[MachineProfile]) -> Result<Table> {
    let mut columns = vec!["Algorithm".to_string(), "Machine".to_string()];
    columns.extend(orders.iter().map(|n| format!("n={n} (ms)")));
    let mut rows = Vec::new();
    let mut any_derived = false;
    for alg in Algorithm::ALL {
        for machine in machines {
            let mut row = vec![Cell::text(alg.display_name()), Cell::text(&machine.name)];
            for &n in orders {
                let f = count_formula(alg, n, AddsVariant::Exact)?;
                let alt = match alg {
                    Algorithm::Ryser => Some(runtime_ms(
                        machine,
                        count_formula(alg, n, AddsVariant::Claimed)?.counts,
                    )),
                    _ => None,
                };
                let derived = f.provenance == Provenance::Derived;
                any_derived |= derived;
                row.push(Cell::millis(runtime_ms(machine, f.counts), alt, derived));
            }
            rows.push(row);
        }
    }
    let mut quantum = vec![Cell::text("Quantum"), Cell::text("MPBSM")];
    for &n in orders {
        quantum.push(match mpbsm_time_ms(n) {
            Ok(t) => Cell::millis(t, None, false),
            Err(_) => Cell::text("n/a"),
        });
    }
    rows.push(quantum);

    let mut notes = vec![
        "Parenthesized Ryser times use the estimate (2^n-2)(n+1) additions.".to_string(),
        "MPBSM times are measured reference values, not computed.".to_string(),
    ];
    if any_derived {
        notes.push(DERIVED_NOTE.to_string());
    }
    Ok(Table {
        id: "table5".into(),
        title: "Classical running times and MPBSM running times (milliseconds)".into(),
        columns,
        rows,
        notes,
    })
}

/// Per-term Store-zechin operation counts for an order-`n` permanent,
/// measured by running the instrumented algorithm.
pub fn build_attribution_table(n: usize) -> Result<Table> {
    let probe = SquareMatrix::from_fn(n, |i, j| (i * n + j + 1) as f64)?;
    let (_, report) = store_zechin_attributed(&probe, &Limits::default())?;
    let mut rows: Vec<Vec<Cell>> = report
        .per_term
        .iter()
        .enumerate()
        .map(|(j, c)| {
            vec![
                Cell::text(format!("Term {}", j + 1)),
                Cell::count(c.multiplications, None, false),
                Cell::count(c.additions, None, false),
            ]
        })
        .collect();
    rows.push(vec![
        Cell::text("Σ"),
        Cell::count(0, None, false),
        Cell::count(report.final_combination_adds, None, false),
    ]);
    rows.push(vec![
        Cell::text("Total"),
        Cell::count(report.totals.multiplications, None, false),
        Cell::count(report.totals.additions, None, false),
    ]);
    let id = match n {
        3 => "table1".to_string(),
        4 => "table2".to_string(),
        5 => "table3".to_string(),
        _ => format!("attribution-{n}"),
    };
    Ok(Table {
        id,
        title: format!("Multiplications and additions taken by Store-zechin for order {n}"),
        columns: vec![
            "At layer 1".into(),
            "Multiplications".into(),
            "Additions".into(),
        ],
        rows,
        notes: Vec::new(),
    })
}

/// Attribution tables for orders 3, 4 and 5.
pub fn build_tables123() -> Vec<Table> {
    PUBLISHED_ORDERS
        .iter()
        .map(|&n| build_attribution_table(n).expect("small orders are valid"))
        .collect()
}

/// Table by its published number, 1 through 5.
pub fn table_by_number(number: u8) -> Result<Table> {
    match number {
        1..=3 => build_attribution_table(number as usize + 2),
        4 => Ok(build_table4()),
        5 => Ok(build_table5()),
        _ => Err(Error::Parse(format!(
            "there is no table {number}; choose 1 to 5"
        ))),
    }
}
