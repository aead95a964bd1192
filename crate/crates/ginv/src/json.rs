//! JSON formats for matrices, quadruples and reports.
//!
//! Matrix:
//!
//! ```json
//! {"n": 2, "backend": "exact",
//!  "entries": [[{"re": "1/2", "im": "0"}, {"re": "-1", "im": "3"}], ...]}
//! ```
//!
//! Exact entries are strings `"p/q"` or `"p"`; float entries are numbers.
//! Parsing is strict: unknown fields, a string in a float matrix, a number
//! in an exact matrix, or rows of the wrong length are all rejected.

use std::any::Any;
use std::str::FromStr;

use ginv_core::cline::ConditionCheck;
use ginv_core::spectral::{LambdaCheck, SpectralReport, SpectrumSet};
use ginv_core::{
    Backend, ClineQuadruple, Complex64, ConditionFamily, DrazinResult, ExactMatrix, FloatMatrix, GaussianRational,
    HypothesisReport, Matrix, Residual, Scalar,
};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON at line {line} column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid document: {0}")]
    Invalid(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_syntax() || e.is_eof() {
            FormatError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
        } else {
            FormatError::Invalid(e.to_string())
        }
    }
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub re: Value,
    pub im: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub n: usize,
    pub backend: String,
    pub entries: Vec<Vec<EntryDoc>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadrupleDoc {
    pub family: String,
    pub a: MatrixDoc,
    pub b: MatrixDoc,
    pub c: MatrixDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<MatrixDoc>,
}

/// A matrix on whichever backend its document declared.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Exact(ExactMatrix),
    Float(FloatMatrix),
}

impl AnyMatrix {
    pub fn backend(&self) -> Backend {
        match self {
            AnyMatrix::Exact(_) => Backend::Exact,
            AnyMatrix::Float(_) => Backend::F64,
        }
    }

    pub fn to_exact(&self) -> Result<ExactMatrix, FormatError> {
        match self {
            AnyMatrix::Exact(m) => Ok(m.clone()),
            AnyMatrix::Float(m) => float_to_exact(m),
        }
    }

    pub fn to_float(&self) -> FloatMatrix {
        match self {
            AnyMatrix::Exact(m) => m.to_float(),
            AnyMatrix::Float(m) => m.clone(),
        }
    }
}

fn float_to_exact(m: &FloatMatrix) -> Result<ExactMatrix, FormatError> {
    let rows = m
        .to_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|z| GaussianRational::from_c64(z).ok_or_else(|| invalid("non-finite entry")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    ExactMatrix::from_rows(rows).map_err(|e| invalid(e.to_string()))
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyQuadruple {
    Exact(ClineQuadruple<GaussianRational>),
    Float(ClineQuadruple<Complex64>),
}

impl AnyQuadruple {
    pub fn to_exact(&self) -> Result<ClineQuadruple<GaussianRational>, FormatError> {
        match self {
            AnyQuadruple::Exact(q) => Ok(q.clone()),
            AnyQuadruple::Float(q) => ClineQuadruple::new(
                float_to_exact(&q.a)?,
                float_to_exact(&q.b)?,
                float_to_exact(&q.c)?,
                float_to_exact(&q.d)?,
                q.family,
            )
            .map_err(|e| invalid(e.to_string())),
        }
    }

    pub fn to_float(&self) -> ClineQuadruple<Complex64> {
        match self {
            AnyQuadruple::Exact(q) => float_quadruple(q),
            AnyQuadruple::Float(q) => q.clone(),
        }
    }
}

pub fn float_quadruple(q: &ClineQuadruple<GaussianRational>) -> ClineQuadruple<Complex64> {
    ClineQuadruple::new(q.a.to_float(), q.b.to_float(), q.c.to_float(), q.d.to_float(), q.family).expect("same shapes")
}

fn rational_string(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

fn parse_rational(v: &Value, at: (usize, usize)) -> Result<BigRational, FormatError> {
    let Value::String(s) = v else {
        return Err(invalid(format!("entry ({}, {}): exact entries must be strings, found {v}", at.0, at.1)));
    };
    let t = s.trim();
    if t.is_empty() || t != s {
        return Err(invalid(format!("entry ({}, {}): malformed rational {s:?}", at.0, at.1)));
    }
    BigRational::from_str(t).map_err(|e| invalid(format!("entry ({}, {}): malformed rational {s:?}: {e}", at.0, at.1)))
}

fn parse_float(v: &Value, at: (usize, usize)) -> Result<f64, FormatError> {
    match v {
        Value::Number(n) => {
            n.as_f64().ok_or_else(|| invalid(format!("entry ({}, {}): number out of range", at.0, at.1)))
        }
        _ => Err(invalid(format!("entry ({}, {}): f64 entries must be numbers, found {v}", at.0, at.1))),
    }
}

pub fn exact_entry(z: &GaussianRational) -> EntryDoc {
    EntryDoc { re: rational_string(&z.re), im: rational_string(&z.im) }
}

pub fn float_entry(z: &Complex64) -> EntryDoc {
    EntryDoc { re: json!(z.re), im: json!(z.im) }
}

impl MatrixDoc {
    pub fn from_exact(m: &ExactMatrix) -> Self {
        MatrixDoc {
            n: m.rows(),
            backend: Backend::Exact.as_str().into(),
            entries: m.to_rows().iter().map(|r| r.iter().map(exact_entry).collect()).collect(),
        }
    }

    pub fn from_float(m: &FloatMatrix) -> Self {
        MatrixDoc {
            n: m.rows(),
            backend: Backend::F64.as_str().into(),
            entries: m.to_rows().iter().map(|r| r.iter().map(float_entry).collect()).collect(),
        }
    }

    pub fn from_any(m: &AnyMatrix) -> Self {
        match m {
            AnyMatrix::Exact(m) => MatrixDoc::from_exact(m),
            AnyMatrix::Float(m) => MatrixDoc::from_float(m),
        }
    }

    pub fn decode(&self) -> Result<AnyMatrix, FormatError> {
        if self.n == 0 {
            return Err(invalid("n must be positive"));
        }
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(invalid(format!("entries must be an {0}x{0} array of rows", self.n)));
        }
        let at = |i: usize, j: usize| (i, j);
        match self.backend.as_str() {
            "exact" => {
                let mut rows = Vec::with_capacity(self.n);
                for (i, row) in self.entries.iter().enumerate() {
                    let mut out = Vec::with_capacity(self.n);
                    for (j, e) in row.iter().enumerate() {
                        out.push(GaussianRational::new(
                            parse_rational(&e.re, at(i, j))?,
                            parse_rational(&e.im, at(i, j))?,
                        ));
                    }
                    rows.push(out);
                }
                Ok(AnyMatrix::Exact(Matrix::from_rows(rows).map_err(|e| invalid(e.to_string()))?))
            }
            "f64" => {
                let mut rows = Vec::with_capacity(self.n);
                for (i, row) in self.entries.iter().enumerate() {
                    let mut out = Vec::with_capacity(self.n);
                    for (j, e) in row.iter().enumerate() {
                        out.push(Complex64::new(parse_float(&e.re, at(i, j))?, parse_float(&e.im, at(i, j))?));
                    }
                    rows.push(out);
                }
                Ok(AnyMatrix::Float(Matrix::from_rows(rows).map_err(|e| invalid(e.to_string()))?))
            }
            other => Err(invalid(format!("unknown backend {other:?} (expected \"exact\" or \"f64\")"))),
        }
    }
}

impl QuadrupleDoc {
    pub fn from_exact(q: &ClineQuadruple<GaussianRational>) -> Self {
        QuadrupleDoc {
            family: q.family.as_str().into(),
            a: MatrixDoc::from_exact(&q.a),
            b: MatrixDoc::from_exact(&q.b),
            c: MatrixDoc::from_exact(&q.c),
            d: Some(MatrixDoc::from_exact(&q.d)),
        }
    }

    pub fn from_float(q: &ClineQuadruple<Complex64>) -> Self {
        QuadrupleDoc {
            family: q.family.as_str().into(),
            a: MatrixDoc::from_float(&q.a),
            b: MatrixDoc::from_float(&q.b),
            c: MatrixDoc::from_float(&q.c),
            d: Some(MatrixDoc::from_float(&q.d)),
        }
    }

    pub fn decode(&self) -> Result<AnyQuadruple, FormatError> {
        let family = ConditionFamily::from_str(&self.family).map_err(|e| invalid(e.to_string()))?;
        let d_doc = match &self.d {
            Some(d) => d,
            None if family.forces_d_equal_a() => &self.a,
            None => return Err(invalid(format!("\"d\" may only be omitted for classical or lian-zeng, not {family}"))),
        };
        let parts = [&self.a, &self.b, &self.c, d_doc].map(MatrixDoc::decode);
        let [a, b, c, d] = parts;
        let (a, b, c, d) = (a?, b?, c?, d?);
        let shape_err = |e: ginv_core::Error| invalid(e.to_string());
        match (a, b, c, d) {
            (AnyMatrix::Exact(a), AnyMatrix::Exact(b), AnyMatrix::Exact(c), AnyMatrix::Exact(d)) => {
                Ok(AnyQuadruple::Exact(ClineQuadruple::new(a, b, c, d, family).map_err(shape_err)?))
            }
            (AnyMatrix::Float(a), AnyMatrix::Float(b), AnyMatrix::Float(c), AnyMatrix::Float(d)) => {
                Ok(AnyQuadruple::Float(ClineQuadruple::new(a, b, c, d, family).map_err(shape_err)?))
            }
            _ => Err(invalid("all matrices of a quadruple must share one backend")),
        }
    }
}

pub fn parse_matrix(text: &str) -> Result<AnyMatrix, FormatError> {
    serde_json::from_str::<MatrixDoc>(text)?.decode()
}

pub fn parse_quadruple(text: &str) -> Result<AnyQuadruple, FormatError> {
    serde_json::from_str::<QuadrupleDoc>(text)?.decode()
}

/// Matrix document for either scalar type; exact entries are written in
/// their lossless string form.
pub fn any_matrix_value<S: Scalar>(m: &Matrix<S>) -> Value {
    let doc = match (m as &dyn Any).downcast_ref::<ExactMatrix>() {
        Some(exact) => MatrixDoc::from_exact(exact),
        None => MatrixDoc::from_float(&m.to_float()),
    };
    serde_json::to_value(doc).expect("serializable")
}

fn residual_value(r: &Residual) -> Value {
    match r {
        Residual::ExactZero => json!(0),
        Residual::Exact(x) | Residual::Float(x) => json!(x),
        Residual::Skipped => json!("skipped"),
    }
}

pub fn report_value(r: &HypothesisReport) -> Value {
    json!({
        "overall": r.overall,
        "conditions": r.conditions.iter().map(|c| json!({
            "name": c.name,
            "residual": residual_value(&c.residual),
            "holds": c.holds,
        })).collect::<Vec<_>>(),
    })
}

pub fn check_value(c: &ConditionCheck) -> Value {
    let mut v = report_value(&c.report);
    let obj = v.as_object_mut().expect("object");
    obj.insert("family".into(), json!(c.family.as_str()));
    obj.insert("also_holds".into(), json!(c.also_holds.iter().map(|f| f.as_str()).collect::<Vec<_>>()));
    v
}

/// Matrix JSON of `a^D` plus `"index"`.
pub fn drazin_value<S: Scalar>(r: &DrazinResult<S>) -> Value {
    let mut v = any_matrix_value(&r.inverse);
    v.as_object_mut().expect("object").insert("index".into(), json!(r.index));
    v
}

pub fn complex_value(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn spectrum_value(s: &SpectrumSet) -> Value {
    Value::Array(s.values.iter().map(|&z| complex_value(z)).collect())
}

fn lambda_check_value(c: &LambdaCheck) -> Value {
    let mut m = Map::new();
    m.insert("lambda".into(), complex_value(c.lambda));
    m.insert("transfer_holds".into(), json!(c.transfer_holds));
    m.insert("ac_invertible".into(), json!(c.ac_invertible));
    m.insert("bd_invertible".into(), json!(c.bd_invertible));
    m.insert("formula_verified".into(), json!(c.formula_verified));
    Value::Object(m)
}

pub fn spectral_value(r: &SpectralReport) -> Value {
    json!({
        "lambda_checks": r.lambda_checks.iter().map(lambda_check_value).collect::<Vec<_>>(),
        "nonzero_spectrum_equal": r.nonzero_spectrum_equal,
        "ac_nonzero": spectrum_value(&r.ac_nonzero),
        "bd_nonzero": spectrum_value(&r.bd_nonzero),
    })
}

pub fn quadruple_value(q: &ClineQuadruple<GaussianRational>) -> Value {
    serde_json::to_value(QuadrupleDoc::from_exact(q)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ginv_core::gen::example_3_7;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    #[test]
    fn exact_round_trip() {
        let i = GaussianRational::new(BigRational::from_integer(0.into()), BigRational::from_integer(1.into()));
        let m = ExactMatrix::from_rows(vec![vec![q(1, 2), q(-3, 1)], vec![i.clone() * q(2, 3) + q(1, 1), q(0, 1)]])
            .unwrap();
        let text = serde_json::to_string(&MatrixDoc::from_exact(&m)).unwrap();
        assert!(text.contains("\"1/2\"") && text.contains("\"-3\""));
        assert_eq!(parse_matrix(&text).unwrap(), AnyMatrix::Exact(m));
    }

    #[test]
    fn float_round_trip() {
        let m = FloatMatrix::from_i64(2, &[1, 2, 3, 4]).scale(&Complex64::new(0.1, 0.3));
        let text = serde_json::to_string(&MatrixDoc::from_float(&m)).unwrap();
        assert_eq!(parse_matrix(&text).unwrap(), AnyMatrix::Float(m));
    }

    #[test]
    fn quadruple_round_trip() {
        let quad = example_3_7();
        let text = serde_json::to_string(&QuadrupleDoc::from_exact(&quad)).unwrap();
        assert_eq!(parse_quadruple(&text).unwrap(), AnyQuadruple::Exact(quad));
    }

    #[test]
    fn omitted_d() {
        let m = r#"{"n":1,"backend":"exact","entries":[[{"re":"2","im":"0"}]]}"#;
        let doc = format!(r#"{{"family":"lian-zeng","a":{m},"b":{m},"c":{m}}}"#);
        let AnyQuadruple::Exact(quad) = parse_quadruple(&doc).unwrap() else { panic!() };
        assert_eq!(quad.d, quad.a);
        let doc = format!(r#"{{"family":"ring-four","a":{m},"b":{m},"c":{m}}}"#);
        assert!(parse_quadruple(&doc).is_err());
    }

    #[test]
    fn strictness() {
        let mixed = r#"{"n":1,"backend":"exact","entries":[[{"re":1,"im":"0"}]]}"#;
        assert!(matches!(parse_matrix(mixed), Err(FormatError::Invalid(_))));
        let mixed = r#"{"n":1,"backend":"f64","entries":[[{"re":"1","im":0}]]}"#;
        assert!(matches!(parse_matrix(mixed), Err(FormatError::Invalid(_))));
        let ragged = r#"{"n":2,"backend":"f64","entries":[[{"re":1,"im":0}],[{"re":1,"im":0},{"re":1,"im":0}]]}"#;
        assert!(matches!(parse_matrix(ragged), Err(FormatError::Invalid(_))));
        let zero_den = r#"{"n":1,"backend":"exact","entries":[[{"re":"1/0","im":"0"}]]}"#;
        assert!(matches!(parse_matrix(zero_den), Err(FormatError::Invalid(_))));
        let extra = r#"{"n":1,"backend":"exact","entries":[[{"re":"1","im":"0"}]],"x":1}"#;
        assert!(matches!(parse_matrix(extra), Err(FormatError::Invalid(_))));
        let m = r#"{"n":1,"backend":"exact","entries":[[{"re":"1","im":"0"}]]}"#;
        let f = r#"{"n":1,"backend":"f64","entries":[[{"re":1,"im":0}]]}"#;
        let doc = format!(r#"{{"family":"ring-four","a":{m},"b":{f},"c":{m},"d":{m}}}"#);
        assert!(matches!(parse_quadruple(&doc), Err(FormatError::Invalid(_))));
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_matrix("{\n  \"n\": 1,\n  \"backend\" \"exact\"\n}").unwrap_err();
        let FormatError::Syntax { line, column, .. } = err else { panic!("{err:?}") };
        assert_eq!((line, column), (3, 13));
    }

    #[test]
    fn report_shape() {
        let mut r = HypothesisReport::new();
        r.push("x", Residual::ExactZero, &Default::default());
        let v = report_value(&r);
        assert_eq!(v["overall"], json!(true));
        assert_eq!(v["conditions"][0]["name"], json!("x"));
        assert_eq!(v["conditions"][0]["residual"], json!(0));
    }
}
