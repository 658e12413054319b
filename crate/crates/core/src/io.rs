//! Matrix text formats.
//!
//! JSON:
//!
//! ```json
//! {"order": 2, "ring": "int", "entries": [[1, 2], [3, 4]]}
//! ```
//!
//! `ring` is `"int"`, `"rational"` or `"complex"`. Integers are JSON numbers
//! (or decimal strings when they do not fit in 64 bits), rationals are
//! `"p/q"` strings and complex entries are `[re, im]` pairs. Emitted complex
//! values round-trip bit-exactly.
//!
//! CSV: one matrix row per line, comma separated. Only the integer and
//! rational rings are representable; rational cells may be decimals
//! (`0.25`) or fractions (`1/4`).

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::ring::{Ring, RingTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Json,
    Csv,
}

impl FromStr for MatrixFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(MatrixFormat::Json),
            "csv" => Ok(MatrixFormat::Csv),
            _ => Err(Error::Parse(format!("unknown matrix format `{s}`"))),
        }
    }
}

/// A matrix over one of the three user-facing rings.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Int(SquareMatrix<BigInt>),
    Rational(SquareMatrix<BigRational>),
    Complex(SquareMatrix<Complex64>),
}

impl AnyMatrix {
    pub fn ring(&self) -> RingTag {
        match self {
            AnyMatrix::Int(_) => RingTag::Int,
            AnyMatrix::Rational(_) => RingTag::Rational,
            AnyMatrix::Complex(_) => RingTag::Complex,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            AnyMatrix::Int(m) => m.order(),
            AnyMatrix::Rational(m) => m.order(),
            AnyMatrix::Complex(m) => m.order(),
        }
    }

    pub fn into_complex(self) -> Result<SquareMatrix<Complex64>> {
        match self {
            AnyMatrix::Complex(m) => Ok(m),
            other => Err(Error::RingMismatch {
                expected: "complex",
                found: other.ring().as_str(),
            }),
        }
    }
}

impl From<SquareMatrix<BigInt>> for AnyMatrix {
    fn from(m: SquareMatrix<BigInt>) -> Self {
        AnyMatrix::Int(m)
    }
}

impl From<SquareMatrix<BigRational>> for AnyMatrix {
    fn from(m: SquareMatrix<BigRational>) -> Self {
        AnyMatrix::Rational(m)
    }
}

impl From<SquareMatrix<Complex64>> for AnyMatrix {
    fn from(m: SquareMatrix<Complex64>) -> Self {
        AnyMatrix::Complex(m)
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses text in the given format. `csv_ring` names the ring of CSV input
/// and is ignored for JSON, which carries its own tag.
pub fn parse_matrix(text: &str, format: MatrixFormat, csv_ring: RingTag) -> Result<AnyMatrix> {
    match format {
        MatrixFormat::Json => {
            let value: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
            matrix_from_json(&value)
        }
        MatrixFormat::Csv => parse_csv(text, csv_ring),
    }
}

pub fn emit_matrix(m: &AnyMatrix, format: MatrixFormat) -> Result<String> {
    match format {
        MatrixFormat::Json => Ok(json_text(&matrix_to_json(m)?)),
        MatrixFormat::Csv => emit_csv(m),
    }
}

/// Decodes the JSON object form. Extra keys are ignored so that files with
/// additional metadata (an interferometer's `modes`) load as plain matrices.
pub fn matrix_from_json(value: &Value) -> Result<AnyMatrix> {
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err("matrix JSON must be an object"))?;
    let order =
        obj.get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| parse_err("`order` must be a nonnegative integer"))? as usize;
    let ring = obj
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("missing `ring`"))?;
    let rows = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("`entries` must be an array of rows"))?;
    if order == 0 {
        return Err(Error::EmptyMatrix);
    }
    if rows.len() != order {
        return Err(Error::NotSquare {
            expected: order * order,
            found: rows.len() * order,
        });
    }
    match ring {
        "int" => collect_rows(order, rows, int_from_json).map(AnyMatrix::Int),
        "rational" => collect_rows(order, rows, rational_from_json).map(AnyMatrix::Rational),
        "complex" => collect_rows(order, rows, complex_from_json).map(AnyMatrix::Complex),
        other => Err(parse_err(format!("unknown ring `{other}`"))),
    }
}

fn collect_rows<R: Ring>(
    order: usize,
    rows: &[Value],
    entry: impl Fn(&Value) -> Result<R>,
) -> Result<SquareMatrix<R>> {
    let mut entries = Vec::with_capacity(order * order);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| parse_err(format!("row {} is not an array", i + 1)))?;
        if row.len() != order {
            return Err(Error::NotSquare {
                expected: order * order,
                found: row.len() * order,
            });
        }
        for v in row {
            entries.push(entry(v)?);
        }
    }
    SquareMatrix::new(order, entries)
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::RingMismatch {
                    expected: "int",
                    found: "real",
                })
            }
        }
        Value::String(s) => parse_bigint(s),
        Value::Array(_) => Err(Error::RingMismatch {
            expected: "int",
            found: "complex",
        }),
        _ => Err(parse_err(format!("`{v}` is not an integer"))),
    }
}

fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(_) => int_from_json(v).map(BigRational::from_integer),
        Value::Array(_) => Err(Error::RingMismatch {
            expected: "rational",
            found: "complex",
        }),
        _ => Err(parse_err(format!("`{v}` is not a rational"))),
    }
}

fn complex_from_json(v: &Value) -> Result<Complex64> {
    let pair = v.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
        if v.is_number() || v.is_string() {
            Error::RingMismatch {
                expected: "complex",
                found: "int",
            }
        } else {
            parse_err(format!("`{v}` is not a [re, im] pair"))
        }
    })?;
    let part = |x: &Value| {
        x.as_f64()
            .ok_or_else(|| parse_err(format!("`{x}` is not a number")))
    };
    Ok(Complex64::new(part(&pair[0])?, part(&pair[1])?))
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| parse_err(format!("`{s}` is not an integer")))
}

/// Accepts `p`, `p/q` and terminating decimals such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || parse_err(format!("`{s}` is not a rational"));
    if let Some((p, q)) = s.split_once('/') {
        let q = parse_bigint(q).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(parse_bigint(p).map_err(|_| bad())?, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let mut numer: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(numer, denom));
    }
    parse_bigint(s)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

pub fn matrix_to_json(m: &AnyMatrix) -> Result<Value> {
    let rows: Vec<Value> = match m {
        AnyMatrix::Int(a) => a
            .rows()
            .map(|r| Value::Array(r.iter().map(int_to_json).collect()))
            .collect(),
        AnyMatrix::Rational(a) => a
            .rows()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|q| Value::String(rational_to_string(q)))
                        .collect(),
                )
            })
            .collect(),
        AnyMatrix::Complex(a) => a
            .rows()
            .map(|r| {
                r.iter()
                    .map(complex_to_json)
                    .collect::<Result<Vec<_>>>()
                    .map(Value::Array)
            })
            .collect::<Result<_>>()?,
    };
    let mut obj = Map::new();
    obj.insert("order".into(), Value::from(m.order()));
    obj.insert("ring".into(), Value::from(m.ring().as_str()));
    obj.insert("entries".into(), Value::Array(rows));
    Ok(Value::Object(obj))
}

pub fn int_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(v.to_string()),
    }
}

pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn complex_to_json(z: &Complex64) -> Result<Value> {
    let part = |x: f64| {
        serde_json::Number::from_f64(x)
            .map(Value::Number)
            .ok_or_else(|| parse_err(format!("{x} is not representable in JSON")))
    };
    Ok(Value::Array(vec![part(z.re)?, part(z.im)?]))
}

/// Serializes an object with one matrix row per line.
pub fn json_text(value: &Value) -> String {
    let Some(obj) = value.as_object() else {
        return value.to_string();
    };
    let mut out = String::from("{\n");
    let last = obj.len().saturating_sub(1);
    for (i, (key, v)) in obj.iter().enumerate() {
        let _ = write!(out, "  {}: ", Value::from(key.as_str()));
        match (key.as_str(), v) {
            ("entries", Value::Array(rows)) => {
                out.push_str("[\n");
                for (r, row) in rows.iter().enumerate() {
                    let sep = if r + 1 < rows.len() { "," } else { "" };
                    let _ = writeln!(out, "    {row}{sep}");
                }
                out.push_str("  ]");
            }
            _ => out.push_str(&v.to_string()),
        }
        out.push_str(if i < last { ",\n" } else { "\n" });
    }
    out.push_str("}\n");
    out
}

fn parse_csv(text: &str, ring: RingTag) -> Result<AnyMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<String>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| parse_err(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        rows.push(record.iter().map(str::to_string).collect());
    }
    match ring {
        RingTag::Int => csv_rows(rows, parse_bigint).map(AnyMatrix::Int),
        RingTag::Rational => csv_rows(rows, parse_rational).map(AnyMatrix::Rational),
        other => Err(parse_err(format!(
            "CSV cannot carry the {} ring",
            other.as_str()
        ))),
    }
}

fn csv_rows<R: Ring>(
    rows: Vec<Vec<String>>,
    cell: impl Fn(&str) -> Result<R>,
) -> Result<SquareMatrix<R>> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|c| cell(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    SquareMatrix::from_rows(parsed)
}

fn emit_csv(m: &AnyMatrix) -> Result<String> {
    let cells: Vec<Vec<String>> = match m {
        AnyMatrix::Int(a) => a
            .rows()
            .map(|r| r.iter().map(BigInt::to_string).collect())
            .collect(),
        AnyMatrix::Rational(a) => a
            .rows()
            .map(|r| r.iter().map(rational_to_csv).collect())
            .collect(),
        AnyMatrix::Complex(_) => return Err(parse_err("CSV cannot carry the complex ring")),
    };
    let mut out = String::new();
    for row in cells {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Exact decimal when the denominator has only factors 2 and 5, `p/q` otherwise.
fn rational_to_csv(q: &BigRational) -> String {
    if q.denom().is_one() {
        return q.numer().to_string();
    }
    let mut d = q.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0usize, 0usize);
    while d.is_multiple_of(&two) {
        d /= &two;
        twos += 1;
    }
    while d.is_multiple_of(&five) {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return rational_to_string(q);
    }
    let places = twos.max(fives);
    let scaled = q.numer() * num_traits::pow(BigInt::from(10), places) / q.denom();
    let negative = scaled.is_negative();
    let digits = format!("{:0>width$}", scaled.magnitude(), width = places + 1);
    let (whole, frac) = digits.split_at(digits.len() - places);
    format!("{}{whole}.{frac}", if negative { "-" } else { "" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn json_int_example() {
        let m = parse_matrix(
            r#"{"order":2,"ring":"int","entries":[[1,2],[3,4]]}"#,
            MatrixFormat::Json,
            RingTag::Int,
        )
        .unwrap();
        let expected = SquareMatrix::new(2, [1, 2, 3, 4].map(BigInt::from).to_vec()).unwrap();
        assert_eq!(m, AnyMatrix::Int(expected.clone()));
        let csv = parse_matrix("1,2\n3,4\n", MatrixFormat::Csv, RingTag::Int).unwrap();
        assert_eq!(csv, AnyMatrix::Int(expected));
    }

    #[test]
    fn json_rejects_malformed_input() {
        let bad = [
            r#"{"order":2,"ring":"int","entries":[[1,2],[3]]}"#,
            r#"{"order":2,"ring":"int","entries":[[1,2]]}"#,
            r#"{"order":1,"ring":"int","entries":[[[1,0]]]}"#,
            r#"{"order":1,"ring":"complex","entries":[[1]]}"#,
            r#"{"order":1,"ring":"quaternion","entries":[[1]]}"#,
            r#"{"order":0,"ring":"int","entries":[]}"#,
            r#"{"order":1,"ring":"rational","entries":[["1/0"]]}"#,
            r#"[1,2]"#,
            "not json",
        ];
        for text in bad {
            assert!(
                parse_matrix(text, MatrixFormat::Json, RingTag::Int).is_err(),
                "{text}"
            );
        }
    }

    #[test]
    fn csv_rejects_non_square_and_complex() {
        assert!(parse_matrix("1,2\n3\n", MatrixFormat::Csv, RingTag::Int).is_err());
        assert!(parse_matrix("1,2,3\n4,5,6\n", MatrixFormat::Csv, RingTag::Int).is_err());
        assert!(parse_matrix("1.5", MatrixFormat::Csv, RingTag::Int).is_err());
        assert!(parse_matrix("1", MatrixFormat::Csv, RingTag::Complex).is_err());
    }

    #[test]
    fn rational_text_forms() {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("-0.5").unwrap(), q(-1, 2));
        assert!(parse_rational("1.").is_err());
        assert_eq!(rational_to_csv(&q(-5, 4)), "-1.25");
        assert_eq!(rational_to_csv(&q(-1, 20)), "-0.05");
        assert_eq!(rational_to_csv(&q(1, 3)), "1/3");
        assert_eq!(rational_to_csv(&q(4, 1)), "4");
    }

    #[test]
    fn big_integers_survive_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let m = AnyMatrix::Int(SquareMatrix::new(1, vec![big]).unwrap());
        let text = emit_matrix(&m, MatrixFormat::Json).unwrap();
        assert_eq!(
            parse_matrix(&text, MatrixFormat::Json, RingTag::Int).unwrap(),
            m
        );
    }

    fn arb_complex() -> impl Strategy<Value = Complex64> {
        (any::<f64>(), any::<f64>())
            .prop_filter("finite", |(a, b)| a.is_finite() && b.is_finite())
            .prop_map(|(a, b)| Complex64::new(a, b))
    }

    proptest! {
        #[test]
        fn complex_json_round_trips_bit_exactly(n in 1usize..5, seed in proptest::collection::vec(arb_complex(), 16)) {
            let m = SquareMatrix::from_fn(n, |i, j| seed[i * n + j]).unwrap();
            let any = AnyMatrix::Complex(m.clone());
            let back = parse_matrix(&emit_matrix(&any, MatrixFormat::Json).unwrap(), MatrixFormat::Json, RingTag::Complex)
                .unwrap()
                .into_complex()
                .unwrap();
            for (x, y) in m.entries().iter().zip(back.entries()) {
                prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
                prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }

        #[test]
        fn exact_rings_round_trip(n in 1usize..5, nums in proptest::collection::vec(any::<i64>(), 16), dens in proptest::collection::vec(1i64..1000, 16)) {
            let ints = AnyMatrix::Int(SquareMatrix::from_fn(n, |i, j| BigInt::from(nums[i * n + j])).unwrap());
            let rats = AnyMatrix::Rational(SquareMatrix::from_fn(n, |i, j| {
                BigRational::new(BigInt::from(nums[i * n + j]), BigInt::from(dens[i * n + j]))
            }).unwrap());
            for m in [ints, rats] {
                for fmt in [MatrixFormat::Json, MatrixFormat::Csv] {
                    let text = emit_matrix(&m, fmt).unwrap();
                    prop_assert_eq!(&parse_matrix(&text, fmt, m.ring()).unwrap(), &m);
                }
            }
        }
    }
}
