//! JSON and CSV wire formats.
//!
//! Scalars that may be complex are accepted either as a plain number or as
//! a `[re, im]` pair, and are emitted as a plain number whenever the
//! imaginary part is exactly zero. All floating-point output is printed
//! with 12 significant digits so that identical runs produce byte-identical
//! files.
//!
//! Schemas:
//! - space: `{"weights": [w, ...]}`
//! - random variable: `{"values": [x, ...]}` with `x` a number or `[re, im]`
//! - partition: `{"blocks": [[i, ...], ...]}`
//! - matrix: `{"rows": [[x, ...], ...]}`
//! - distribution: `{"atoms": [[value, mass], ...]}`
//! - grid function: `{"cells": n, "values": [x, ...]}`

use crate::error::{Error, Result};
use crate::interval::GridFunction;
use crate::opnorm::{CMatrix, OptReport};
use crate::prob::{FiniteProbSpace, Partition, RandVar};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::Value;
use std::io::Write;

/// A scalar that may arrive as a real number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ScalarJson> for Complex64 {
    fn from(s: ScalarJson) -> Complex64 {
        match s {
            ScalarJson::Real(x) => Complex64::new(x, 0.0),
            ScalarJson::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Deserialize)]
struct SpaceJson {
    weights: Vec<f64>,
}

#[derive(Deserialize)]
struct RandVarJson {
    values: Vec<ScalarJson>,
}

#[derive(Deserialize)]
struct PartitionJson {
    blocks: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct MatrixJson {
    rows: Vec<Vec<ScalarJson>>,
}

#[derive(Deserialize)]
struct DistributionJson {
    atoms: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct GridFunctionJson {
    cells: usize,
    values: Vec<ScalarJson>,
}

fn from_str<'a, T: Deserialize<'a>>(s: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Schema(format!("{what}: {e}")))
}

pub fn parse_space(s: &str) -> Result<FiniteProbSpace> {
    let j: SpaceJson = from_str(s, "space")?;
    FiniteProbSpace::new(j.weights)
}

pub fn parse_rand_var(s: &str) -> Result<RandVar> {
    let j: RandVarJson = from_str(s, "random variable")?;
    Ok(RandVar::new(j.values.into_iter().map(Into::into).collect()))
}

pub fn parse_partition(s: &str, atoms: usize) -> Result<Partition> {
    let j: PartitionJson = from_str(s, "partition")?;
    Partition::new(j.blocks, atoms)
}

pub fn parse_matrix(s: &str) -> Result<CMatrix> {
    let j: MatrixJson = from_str(s, "matrix")?;
    let n = j.rows.len();
    if n == 0 || j.rows.iter().any(|r| r.len() != n) {
        return Err(Error::Schema("matrix rows must form a square".into()));
    }
    let mut m = CMatrix::zeros(n, n);
    for (i, row) in j.rows.into_iter().enumerate() {
        for (jx, v) in row.into_iter().enumerate() {
            m[(i, jx)] = v.into();
        }
    }
    Ok(m)
}

pub fn parse_distribution(s: &str) -> Result<crate::mixture::DiscreteDistribution> {
    let j: DistributionJson = from_str(s, "distribution")?;
    crate::mixture::DiscreteDistribution::new(j.atoms.into_iter().map(|[v, m]| (v, m)).collect())
}

pub fn parse_grid_function(s: &str) -> Result<GridFunction> {
    let j: GridFunctionJson = from_str(s, "grid function")?;
    GridFunction::new(j.cells, j.values.into_iter().map(Into::into).collect())
}

/// Parses either a single grid function object or a JSON array of them.
pub fn parse_grid_functions(s: &str) -> Result<Vec<GridFunction>> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Schema(format!("functions: {e}")))?;
    let items: Vec<Value> = match v {
        Value::Array(items) => items,
        obj @ Value::Object(_) => vec![obj],
        _ => return Err(Error::Schema("expected a grid function or an array".into())),
    };
    items
        .into_iter()
        .map(|item| parse_grid_function(&item.to_string()))
        .collect()
}

/// JSON value for a complex scalar: plain number when purely real.
pub fn complex_value(z: Complex64) -> Value {
    if z.im == 0.0 {
        Value::from(z.re)
    } else {
        Value::from(vec![z.re, z.im])
    }
}

pub fn rand_var_value(xi: &RandVar) -> Value {
    Value::from(
        xi.values()
            .iter()
            .map(|&z| complex_value(z))
            .collect::<Vec<_>>(),
    )
}

pub fn report_value(rep: &OptReport) -> Value {
    serde_json::json!({
        "value": rep.value,
        "witness": rand_var_value(&rep.witness),
        "converged": rep.converged,
        "starts_used": rep.starts_used,
    })
}

/// Serializer formatter printing every float with 12 significant digits.
struct SigDigits;

impl serde_json::ser::Formatter for SigDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.11e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        write!(writer, "{value:.11e}")
    }
}

/// Renders a JSON value with deterministic 12-significant-digit floats and
/// a trailing newline.
pub fn to_json_string(v: &Value) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits);
    serde::Serialize::serialize(v, &mut ser)?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Schema(format!("non-utf8 output: {e}")))
}

/// Formats one float for CSV output: 12 significant digits.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.11e}")
}

/// An RFC-4180 CSV writer (CRLF line endings) over an in-memory buffer.
pub fn csv_from_rows(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let buf = w
        .into_inner()
        .map_err(|e| Error::Schema(format!("csv: {e}")))?;
    String::from_utf8(buf).map_err(|e| Error::Schema(format!("non-utf8 output: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spaces_and_rand_vars() {
        let sp = parse_space(r#"{"weights": [0.25, 0.75]}"#).unwrap();
        assert_eq!(sp.atoms(), 2);
        assert!(parse_space(r#"{"weights": [0.25, 0.5]}"#).is_err());

        let xi = parse_rand_var(r#"{"values": [1.0, [0.5, -0.5], -2]}"#).unwrap();
        assert_eq!(xi.values()[1], Complex64::new(0.5, -0.5));
        assert_eq!(xi.values()[2], Complex64::new(-2.0, 0.0));
    }

    #[test]
    fn parses_partitions_and_matrices() {
        let part = parse_partition(r#"{"blocks": [[0, 2], [1]]}"#, 3).unwrap();
        assert_eq!(part.blocks().len(), 2);
        assert!(parse_partition(r#"{"blocks": [[0]]}"#, 2).is_err());

        let m = parse_matrix(r#"{"rows": [[1, 0], [[0, 1], 2]]}"#).unwrap();
        assert_eq!(m[(1, 0)], Complex64::new(0.0, 1.0));
        assert!(parse_matrix(r#"{"rows": [[1, 0]]}"#).is_err());
    }

    #[test]
    fn real_values_round_trip_exactly() {
        let xi = parse_rand_var(r#"{"values": [0.1, -3.75]}"#).unwrap();
        assert!(xi.is_real());
        assert_eq!(xi.values()[0].re, 0.1);
        let v = rand_var_value(&xi);
        assert_eq!(v[0], Value::from(0.1));
    }

    #[test]
    fn json_floats_have_twelve_digits() {
        let v = serde_json::json!({"x": 1.0957314336981363, "n": 3});
        let s = to_json_string(&v).unwrap();
        assert!(s.contains("1.09573143370e0"), "{s}");
        assert!(s.contains("\"n\":3"));
        assert!(s.ends_with('\n'));
    }

    #[test]
    fn csv_is_crlf_terminated() {
        let s = csv_from_rows(&["a", "b"], &[vec!["1".into(), "2".into()]]).unwrap();
        assert_eq!(s, "a,b\r\n1,2\r\n");
    }
}
