//! File formats: matrices (JSON or CSV), weight vectors, verification reports and
//! irrep tables. Writers print every float with 17 significant digits, so files
//! round-trip `f64` values exactly.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::birkhoff::{BirkhoffWeights, ReportResiduals, Strategy, VerifyReport};
use crate::error::{Error, Result};
use crate::irreps::IrrepTable;
use crate::matrix::CMatrix;
use crate::perm::{enumerate, Permutation};

/// 17 significant digits; `null` for non-finite values.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

/// `{"rows": r, "cols": c, "entries": [[re, im], ...]}`, entries row-major.
pub fn matrix_to_json(m: &CMatrix) -> String {
    let mut s = format!("{{\n  \"rows\": {},\n  \"cols\": {},\n  \"entries\": [", m.rows(), m.cols());
    for (k, z) in m.as_slice().iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        let _ = write!(s, "\n    [{}, {}]", fmt_f64(z.re), fmt_f64(z.im));
    }
    s.push_str("\n  ]\n}\n");
    s
}

pub fn matrix_from_json(text: &str) -> Result<CMatrix> {
    let file: MatrixFile = serde_json::from_str(text)?;
    let data = file
        .entries
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    CMatrix::from_vec(file.rows, file.cols, data)
}

fn fmt_complex_cell(z: Complex64) -> String {
    let im = fmt_f64(z.im);
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{}{sign}{im}i", fmt_f64(z.re))
}

/// One row per line, comma separated `a+bi` cells.
pub fn matrix_to_csv(m: &CMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let cells: Vec<String> = m.row(i).iter().map(|&z| fmt_complex_cell(z)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, with optional exponents on either part.
pub fn parse_complex(cell: &str) -> Result<Complex64> {
    let t: String = cell.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("bad complex number {cell:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let num = |s: &str| -> Result<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0));
    };
    // split at the last sign that is not leading and not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(
            body[..k].parse().map_err(|_| bad())?,
            num(&body[k..])?,
        )),
        None => Ok(Complex64::new(0.0, num(body)?)),
    }
}

pub fn matrix_from_csv(text: &str) -> Result<CMatrix> {
    let rows: Vec<Vec<Complex64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(parse_complex).collect())
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::Shape {
            expected: format!("{cols} cells per row"),
            got: format!("{}", bad.len()),
        });
    }
    let n = rows.len();
    CMatrix::from_vec(n, cols, rows.into_iter().flatten().collect())
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Reads a matrix, choosing CSV for a `.csv` extension and JSON otherwise.
pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path)?;
    if is_csv(path) {
        matrix_from_csv(&text)
    } else {
        matrix_from_json(&text)
    }
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    let text = if is_csv(path) {
        matrix_to_csv(m)
    } else {
        matrix_to_json(m)
    };
    std::fs::write(path, text)?;
    Ok(())
}

/// `{"n", "strategy", ["tau",] "weights": [{"perm", "re", "im"}, ...]}` in enumeration
/// order, zeros included.
pub fn weights_to_json(w: &BirkhoffWeights) -> String {
    let mut s = format!(
        "{{\n  \"n\": {},\n  \"strategy\": \"{}\",\n",
        w.degree(),
        w.strategy().name()
    );
    if let Some(tau) = w.strategy().tau() {
        let _ = writeln!(s, "  \"tau\": \"{tau}\",");
    }
    s.push_str("  \"weights\": [");
    for (k, (perm, c)) in w.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        let _ = write!(
            s,
            "\n    {{\"perm\": \"{perm}\", \"re\": {}, \"im\": {}}}",
            fmt_f64(c.re),
            fmt_f64(c.im)
        );
    }
    s.push_str("\n  ]\n}\n");
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightEntry {
    perm: Permutation,
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightsFile {
    n: usize,
    strategy: String,
    #[serde(default)]
    tau: Option<Permutation>,
    weights: Vec<WeightEntry>,
}

pub fn parse_strategy(name: &str, tau: Option<Permutation>, n: usize) -> Result<Strategy> {
    match name {
        "general" => Ok(Strategy::General),
        "canonical-tau" => Ok(Strategy::CanonicalTau(
            tau.unwrap_or_else(|| Permutation::identity(n)),
        )),
        "even-only" => Ok(Strategy::EvenOnly),
        "even-odd-split" => Ok(Strategy::EvenOddSplit),
        other => Err(Error::Parse(format!("unknown strategy {other:?}"))),
    }
}

/// Parses a weight file; permutations must appear exactly once each, in enumeration order.
pub fn weights_from_json(text: &str) -> Result<BirkhoffWeights> {
    let file: WeightsFile = serde_json::from_str(text)?;
    let perms = enumerate(file.n)?;
    if perms.len() != file.weights.len() {
        return Err(Error::Parse(format!(
            "expected {} weights for n = {}, found {}",
            perms.len(),
            file.n,
            file.weights.len()
        )));
    }
    for (expected, entry) in perms.iter().zip(&file.weights) {
        if &entry.perm != expected {
            return Err(Error::Parse(format!(
                "weights out of enumeration order: expected {expected}, found {}",
                entry.perm
            )));
        }
    }
    let strategy = parse_strategy(&file.strategy, file.tau, file.n)?;
    let weights = file
        .weights
        .iter()
        .map(|e| Complex64::new(e.re, e.im))
        .collect();
    BirkhoffWeights::new(file.n, weights, strategy)
}

/// The four named residuals as a JSON object.
pub fn report_to_json(r: &VerifyReport) -> String {
    let res: ReportResiduals = r.residuals();
    format!(
        "{{\n  \"weight_sum\": {},\n  \"squared_modulus_sum\": {},\n  \"reconstruction\": {},\n  \"circulant_unitarity\": {}\n}}\n",
        fmt_f64(res.weight_sum),
        fmt_f64(res.squared_modulus_sum),
        fmt_f64(res.reconstruction),
        res.circulant_unitarity.map_or("null".to_string(), fmt_f64),
    )
}

pub fn report_from_json(text: &str) -> Result<ReportResiduals> {
    Ok(serde_json::from_str(text)?)
}

/// Irrep metadata plus the character table (irreps × classes) in the matrix format.
pub fn irrep_table_to_json(table: &IrrepTable) -> Result<String> {
    let mut s = format!("{{\n  \"n\": {},\n  \"irreps\": [", table.degree());
    for (k, irrep) in table.irreps().iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        let _ = write!(
            s,
            "\n    {{\"index\": {k}, \"partition\": {:?}, \"dimension\": {}, \"realization\": \"{}\"}}",
            irrep.label().parts(),
            irrep.dimension(),
            irrep.realization()
        );
    }
    s.push_str("\n  ],\n  \"classes\": [");
    for (k, (ct, rep)) in table.classes().iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        let _ = write!(
            s,
            "\n    {{\"cycle_type\": {:?}, \"representative\": \"{rep}\"}}",
            ct.partition().parts()
        );
    }
    s.push_str("\n  ],\n  \"characters\": ");
    let chars = matrix_to_json(&table.character_table()?);
    s.push_str(chars.trim_end().replace('\n', "\n  ").as_str());
    s.push_str("\n}\n");
    Ok(s)
}

/// Plain-text irrep table: one row per irrep with its character vector.
pub fn irrep_table_to_text(table: &IrrepTable) -> Result<String> {
    let chars = table.character_table()?;
    let mut s = String::new();
    let class_labels: Vec<String> = table.classes().iter().map(|(ct, _)| ct.to_string()).collect();
    let _ = writeln!(
        s,
        "{:<3} {:<14} {:>4}  {:<22} {}",
        "#",
        "partition",
        "dim",
        "realization",
        class_labels.join(" ")
    );
    for (k, irrep) in table.irreps().iter().enumerate() {
        let row: Vec<String> = (0..chars.cols())
            .map(|j| {
                let z = chars[(k, j)];
                let v = if z.re.abs() < 1e-9 { 0.0 } else { z.re };
                format!("{:>w$}", format!("{v:.0}"), w = class_labels[j].len())
            })
            .collect();
        let _ = writeln!(
            s,
            "{:<3} {:<14} {:>4}  {:<22} {}",
            k,
            irrep.label().to_string(),
            irrep.dimension(),
            irrep.realization().to_string(),
            row.join(" ")
        );
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birkhoff::{decompose, verify, StrategyChoice};
    use crate::golden::phased_fourier4;
    use crate::irreps::irrep_table;
    use crate::matrix::Tolerance;
    use crate::xu::random_xu;

    #[test]
    fn matrix_json_roundtrip_exact() {
        let x = random_xu(5, 3).into_matrix();
        let back = matrix_from_json(&matrix_to_json(&x)).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn matrix_csv_roundtrip_exact() {
        let x = random_xu(4, 8).into_matrix();
        let text = matrix_to_csv(&x);
        assert_eq!(text.lines().count(), 4);
        assert_eq!(matrix_from_csv(&text).unwrap(), x);
        assert_eq!(matrix_from_csv(&matrix_to_csv(&phased_fourier4())).unwrap(), phased_fourier4());
    }

    #[test]
    fn parse_complex_forms() {
        let c = Complex64::new;
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("-1.5e-3-2e+2i").unwrap(), c(-1.5e-3, -200.0));
        assert_eq!(parse_complex("0.5").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex(" 3 - i ").unwrap(), c(3.0, -1.0));
        assert_eq!(parse_complex("2.5e-1i").unwrap(), c(0.0, 0.25));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn malformed_inputs() {
        assert!(matrix_from_json(r#"{"rows": 2, "cols": 2, "entries": [[1,0]]}"#).is_err());
        assert!(matrix_from_json("not json").is_err());
        assert!(matrix_from_csv("1,2\n3").is_err());
    }

    #[test]
    fn weights_roundtrip_and_order() {
        let x = phased_fourier4();
        let w = decompose(&x, &StrategyChoice::CanonicalTau(Permutation::new(&[2, 1, 3, 4]).unwrap()), Tolerance::default()).unwrap();
        let text = weights_to_json(&w);
        let back = weights_from_json(&text).unwrap();
        assert_eq!(back.weights(), w.weights());
        assert_eq!(back.strategy(), w.strategy());
        assert_eq!(
            verify(&back, &x, Tolerance::default()),
            verify(&w, &x, Tolerance::default())
        );

        let swapped = text.replacen("[1,2,3,4]", "[1,2,4,3]", 1);
        assert!(weights_from_json(&swapped).is_err());
    }

    #[test]
    fn report_json_has_four_residuals() {
        let w = BirkhoffWeights::delta(&Permutation::identity(3));
        let r = verify(&w, &CMatrix::identity(3), Tolerance::default());
        let parsed = report_from_json(&report_to_json(&r)).unwrap();
        assert_eq!(parsed, r.residuals());
        let v: serde_json::Value = serde_json::from_str(&report_to_json(&r)).unwrap();
        assert_eq!(v.as_object().unwrap().len(), 4);
    }

    #[test]
    fn irrep_table_outputs() {
        let t = irrep_table(4).unwrap();
        let v: serde_json::Value = serde_json::from_str(&irrep_table_to_json(&t).unwrap()).unwrap();
        assert_eq!(v["irreps"].as_array().unwrap().len(), 5);
        let chars = matrix_from_json(&v["characters"].to_string()).unwrap();
        assert_eq!((chars.rows(), chars.cols()), (5, 5));
        let text = irrep_table_to_text(&t).unwrap();
        assert!(text.contains("fourier-standard"));
        assert_eq!(text.lines().count(), 6);
    }
}
