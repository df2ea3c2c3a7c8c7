//! Deterministic JSON reports: sorted keys, fixed float formatting (17
//! significant digits), and the matrix/certificate/decision schemas.

use std::fmt::Write as _;

use crate::decide::{Decision, Verdict};
use crate::error::{Error, Result};
use crate::matrix::{AnyMatrix, Matrix};
use crate::scalar::{rat_from_str, Rat};
use crate::spectrum::{json_f64, json_rat, AnySpectrum};
use crate::verify::Certificate;

/// Minimal JSON document model with deterministic serialization.
#[derive(Clone, Debug)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn to_string_pretty(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Json::Float(v) => out.push_str(&fmt_f64(*v)),
            Json::Str(s) => write_json_string(out, s),
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    item.write(out, indent + 1);
                }
                out.push(']');
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                let mut sorted: Vec<&(String, Json)> = fields.iter().collect();
                sorted.sort_by(|a, b| a.0.cmp(&b.0));
                out.push_str("{\n");
                let pad = "  ".repeat(indent + 1);
                for (i, (key, value)) in sorted.iter().enumerate() {
                    out.push_str(&pad);
                    write_json_string(out, key);
                    out.push_str(": ");
                    value.write(out, indent + 1);
                    if i + 1 < sorted.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }
}

/// 17 significant digits, deterministic across runs.
fn fmt_f64(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{v:.1}")
    } else {
        format!("{v:.16e}")
    }
}

fn write_json_string(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

// ── Matrix schema: {"n": int, "rows": [[...]], "exact": bool} ───────

pub fn matrix_to_json(m: &AnyMatrix) -> Json {
    match m {
        AnyMatrix::Exact(m) => Json::Obj(vec![
            ("n".into(), Json::Int(m.nrows() as i64)),
            ("exact".into(), Json::Bool(true)),
            (
                "rows".into(),
                Json::Arr(
                    (0..m.nrows())
                        .map(|i| {
                            Json::Arr(
                                m.row(i)
                                    .iter()
                                    .map(|v| Json::Str(v.to_string()))
                                    .collect(),
                            )
                        })
                        .collect(),
                ),
            ),
        ]),
        AnyMatrix::Float(m) => Json::Obj(vec![
            ("n".into(), Json::Int(m.nrows() as i64)),
            ("exact".into(), Json::Bool(false)),
            (
                "rows".into(),
                Json::Arr(
                    (0..m.nrows())
                        .map(|i| Json::Arr(m.row(i).iter().map(|&v| Json::Float(v)).collect()))
                        .collect(),
                ),
            ),
        ]),
    }
}

/// Parse the matrix schema; `"exact": true` rows hold "p/q" strings or
/// decimal numbers, floating rows hold numbers.
pub fn matrix_from_json(text: &str) -> Result<AnyMatrix> {
    let doc: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Json("matrix document must be an object".into()))?;
    let exact = obj.get("exact").and_then(|v| v.as_bool()).unwrap_or(false);
    let rows = obj
        .get("rows")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Json("missing \"rows\" array".into()))?;
    let n = obj
        .get("n")
        .and_then(|v| v.as_u64())
        .unwrap_or(rows.len() as u64) as usize;
    if rows.len() != n {
        return Err(Error::Json(format!(
            "\"n\" = {n} but {} rows are present",
            rows.len()
        )));
    }
    if exact {
        let mut data: Vec<Vec<Rat>> = Vec::with_capacity(n);
        for row in rows {
            let entries = row
                .as_array()
                .ok_or_else(|| Error::Json("rows must be arrays".into()))?;
            let mut out = Vec::with_capacity(entries.len());
            for (i, entry) in entries.iter().enumerate() {
                match entry {
                    serde_json::Value::String(s) => out.push(rat_from_str(s)?),
                    other => out.push(json_rat(other, i)?),
                }
            }
            data.push(out);
        }
        Ok(AnyMatrix::Exact(Matrix::from_rows(data)?))
    } else {
        let mut data: Vec<Vec<f64>> = Vec::with_capacity(n);
        for row in rows {
            let entries = row
                .as_array()
                .ok_or_else(|| Error::Json("rows must be arrays".into()))?;
            let mut out = Vec::with_capacity(entries.len());
            for (i, entry) in entries.iter().enumerate() {
                let v = json_f64(entry, i)?;
                if !v.is_finite() {
                    return Err(Error::NonFinite(i));
                }
                out.push(v);
            }
            data.push(out);
        }
        Ok(AnyMatrix::Float(Matrix::from_rows(data)?))
    }
}

pub fn spectrum_to_json(s: &AnySpectrum) -> Json {
    match s {
        AnySpectrum::Exact(s) => Json::Obj(vec![
            ("exact".into(), Json::Bool(true)),
            (
                "values".into(),
                Json::Arr(
                    s.values()
                        .iter()
                        .map(|v| {
                            Json::Arr(vec![
                                Json::Str(v.re.to_string()),
                                Json::Str(v.im.to_string()),
                            ])
                        })
                        .collect(),
                ),
            ),
        ]),
        AnySpectrum::Float(s) => Json::Obj(vec![
            ("exact".into(), Json::Bool(false)),
            (
                "values".into(),
                Json::Arr(
                    s.values()
                        .iter()
                        .map(|v| Json::Arr(vec![Json::Float(v.re), Json::Float(v.im)]))
                        .collect(),
                ),
            ),
        ]),
    }
}

pub fn certificate_to_json(c: &Certificate) -> Json {
    Json::Obj(vec![
        ("n".into(), Json::Int(c.n as i64)),
        ("nonneg".into(), Json::Bool(c.nonneg)),
        ("min_entry".into(), Json::Float(c.min_entry)),
        ("permutative".into(), Json::Bool(c.permutative)),
        ("row_sum_constant".into(), Json::Bool(c.row_sum_constant)),
        (
            "row_sum".into(),
            c.row_sum.map_or(Json::Null, Json::Float),
        ),
        ("symmetric".into(), Json::Bool(c.symmetric)),
        ("circulant".into(), Json::Bool(c.circulant)),
        (
            "spectral_residual".into(),
            Json::Float(c.spectral_residual),
        ),
        (
            "diag".into(),
            Json::Arr(c.diag.iter().map(|&v| Json::Float(v)).collect()),
        ),
        ("exact".into(), Json::Bool(c.exact)),
        ("pass".into(), Json::Bool(c.pass())),
        (
            "tolerances".into(),
            Json::Obj(vec![
                ("nonneg".into(), Json::Float(c.tolerances.nonneg)),
                ("permutative".into(), Json::Float(c.tolerances.permutative)),
                ("row_sum".into(), Json::Float(c.tolerances.row_sum)),
                ("symmetry".into(), Json::Float(c.tolerances.symmetry)),
                ("spectral".into(), Json::Float(c.tolerances.spectral)),
                ("imag".into(), Json::Float(c.tolerances.imag)),
            ]),
        ),
    ])
}

pub fn decision_to_json(d: &Decision) -> Json {
    let mut evidence: Vec<(String, Json)> = vec![
        ("detail".into(), Json::Str(d.detail.clone())),
        (
            "attempts".into(),
            Json::Arr(
                d.attempts
                    .iter()
                    .map(|a| {
                        Json::Obj(vec![
                            ("method".into(), Json::Str(a.method.into())),
                            ("outcome".into(), Json::Str(a.outcome.clone())),
                        ])
                    })
                    .collect(),
            ),
        ),
    ];
    if let Some(cases) = &d.case_analysis {
        evidence.push((
            "diagonal_cases".into(),
            Json::Arr(
                cases
                    .iter()
                    .map(|c| {
                        Json::Obj(vec![
                            ("shape".into(), Json::Str(c.shape.into())),
                            ("refuted".into(), Json::Bool(c.refuted)),
                            ("exact".into(), Json::Bool(c.exact)),
                            ("detail".into(), Json::Str(c.detail.clone())),
                        ])
                    })
                    .collect(),
            ),
        ));
    }
    if let Some(b) = &d.brute_force {
        evidence.push((
            "brute_force".into(),
            Json::Obj(vec![
                ("min_residual".into(), Json::Float(b.min_residual)),
                (
                    "pattern_minima".into(),
                    Json::Arr(b.pattern_minima.iter().map(|&v| Json::Float(v)).collect()),
                ),
            ]),
        ));
    }
    if let Some(sw) = &d.side_witness {
        evidence.push((
            "side_witness".into(),
            Json::Obj(vec![
                ("label".into(), Json::Str(sw.label.clone())),
                ("matrix".into(), matrix_to_json(&sw.matrix)),
                ("certificate".into(), certificate_to_json(&sw.certificate)),
            ]),
        ));
    }
    Json::Obj(vec![
        ("verdict".into(), Json::Str(d.verdict.as_str().into())),
        (
            "method".into(),
            d.method
                .map_or(Json::Null, |m| Json::Str(m.as_str().into())),
        ),
        (
            "witness".into(),
            d.witness.as_ref().map_or(Json::Null, matrix_to_json),
        ),
        (
            "certificate".into(),
            d.certificate
                .as_ref()
                .map_or(Json::Null, certificate_to_json),
        ),
        ("evidence".into(), Json::Obj(evidence)),
    ])
}

/// Exit-code mapping for decisions.
pub fn decision_exit_code(d: &Decision) -> i32 {
    match d.verdict {
        Verdict::Realizable => 0,
        Verdict::NotPermutativelyRealizable3 => 4,
        Verdict::Unknown => 5,
        Verdict::Invalid => 2,
    }
}

/// Top-level run report: deterministic field order via sorted keys.
pub struct RunReport {
    pub command: String,
    pub input: Json,
    pub method: Option<String>,
    pub witness: Option<Json>,
    pub certificate: Option<Json>,
    pub decision: Option<Json>,
}

impl RunReport {
    pub fn to_json(&self) -> Json {
        Json::Obj(vec![
            ("command".into(), Json::Str(self.command.clone())),
            ("input".into(), self.input.clone()),
            (
                "method".into(),
                self.method
                    .as_ref()
                    .map_or(Json::Null, |m| Json::Str(m.clone())),
            ),
            (
                "witness".into(),
                self.witness.clone().unwrap_or(Json::Null),
            ),
            (
                "certificate".into(),
                self.certificate.clone().unwrap_or(Json::Null),
            ),
            (
                "decision".into(),
                self.decision.clone().unwrap_or(Json::Null),
            ),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mat_i64;

    #[test]
    fn float_formatting_is_fixed_width() {
        assert_eq!(fmt_f64(1.5), "1.5000000000000000e0");
        assert_eq!(fmt_f64(2.0), "2.0");
        assert_eq!(fmt_f64(-0.1), "-1.0000000000000001e-1");
    }

    #[test]
    fn keys_are_sorted() {
        let j = Json::Obj(vec![
            ("zeta".into(), Json::Int(1)),
            ("alpha".into(), Json::Int(2)),
        ]);
        let text = j.to_string_pretty();
        assert!(text.find("alpha").unwrap() < text.find("zeta").unwrap());
    }

    #[test]
    fn matrix_round_trip_exact() {
        let m = AnyMatrix::Exact(mat_i64::<Rat>(&[&[1, 2], &[3, 4]]));
        let text = matrix_to_json(&m).to_string_pretty();
        let back = matrix_from_json(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn matrix_round_trip_float() {
        let m = AnyMatrix::Float(mat_i64::<f64>(&[&[0, 1], &[1, 0]]));
        let text = matrix_to_json(&m).to_string_pretty();
        let back = matrix_from_json(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn matrix_json_rejects_bad_shape() {
        assert!(matrix_from_json(r#"{"n": 3, "rows": [[1,2],[3,4]]}"#).is_err());
        assert!(matrix_from_json(r#"{"rows": "nope"}"#).is_err());
    }
}
