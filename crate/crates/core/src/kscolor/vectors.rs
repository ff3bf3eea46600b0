use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::KsError;

/// Default tolerance for floating-point orthogonality and normalization.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Rational,
    Float,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("rational"),
            Field::Float => f.write_str("float"),
        }
    }
}

/// One ray of a vector set.
///
/// Rational rays keep their exact components as given, together with
/// their squared norm. `unit` always holds the normalized float direction.
#[derive(Debug, Clone, PartialEq)]
pub struct Ray {
    pub label: String,
    exact: Option<Vec<BigRational>>,
    norm_sqr: Option<BigRational>,
    unit: Vec<f64>,
}

impl Ray {
    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    /// Squared norm of the components as given (rational rays only).
    pub fn scale(&self) -> Option<&BigRational> {
        self.norm_sqr.as_ref()
    }

    pub fn unit(&self) -> &[f64] {
        &self.unit
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorSet {
    dim: usize,
    field: Field,
    tol: f64,
    rays: Vec<Ray>,
    warnings: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSet {
    dim: i64,
    field: Field,
    vectors: Vec<RawVector>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVector {
    #[serde(default)]
    label: Option<String>,
    components: Vec<Value>,
}

fn parse_rational(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::String(s) => BigRational::from_str(s.trim()).map_err(|e| format!("`{s}`: {e}")),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigRational::from_integer(BigInt::from(i))),
            None => Err(format!("{n} is not an integer or an \"n/m\" string")),
        },
        other => Err(format!("unexpected {other}")),
    }
}

fn parse_float(v: &Value) -> Result<f64, String> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| format!("{n} is out of range")),
        Value::String(s) => {
            if let Ok(q) = BigRational::from_str(s.trim()) {
                return q.to_f64().ok_or_else(|| format!("`{s}` is out of range"));
            }
            s.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"))
        }
        other => Err(format!("unexpected {other}")),
    }
}

fn exact_parallel(a: &[BigRational], b: &[BigRational]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

fn float_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl VectorSet {
    /// Exact set from rational rays, which need not be normalized.
    pub fn rational(dim: usize, vectors: Vec<(String, Vec<BigRational>)>) -> Result<Self, KsError> {
        let mut set = VectorSet::empty(dim, Field::Rational, DEFAULT_TOL)?;
        for (label, comps) in vectors {
            set.push_rational(label, comps)?;
        }
        Ok(set)
    }

    /// Floating-point set; every vector must have unit norm within `tol`.
    pub fn float(dim: usize, vectors: Vec<(String, Vec<f64>)>, tol: f64) -> Result<Self, KsError> {
        let mut set = VectorSet::empty(dim, Field::Float, tol)?;
        for (label, comps) in vectors {
            set.push_float(label, comps)?;
        }
        Ok(set)
    }

    fn empty(dim: usize, field: Field, tol: f64) -> Result<Self, KsError> {
        if dim < 2 {
            return Err(KsError::DimensionTooSmall(dim));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(KsError::Schema(format!("tolerance {tol} must be positive")));
        }
        Ok(VectorSet { dim, field, tol, rays: Vec::new(), warnings: Vec::new() })
    }

    fn check_len(&self, label: &str, len: usize) -> Result<(), KsError> {
        if len != self.dim {
            return Err(KsError::WrongLength { label: label.to_string(), expected: self.dim, found: len });
        }
        Ok(())
    }

    fn note_duplicate(&mut self, label: &str, kept: usize) {
        let msg = format!(
            "vector `{label}` spans the same ray as `{}`; keeping `{}`",
            self.rays[kept].label, self.rays[kept].label
        );
        log::warn!("{msg}");
        self.warnings.push(msg);
    }

    fn push_rational(&mut self, label: String, comps: Vec<BigRational>) -> Result<(), KsError> {
        self.check_len(&label, comps.len())?;
        let norm_sqr: BigRational = comps.iter().map(|c| c * c).sum();
        if norm_sqr.is_zero() {
            return Err(KsError::ZeroVector(label));
        }
        if let Some(k) = self.rays.iter().position(|r| exact_parallel(r.exact.as_deref().unwrap_or(&[]), &comps)) {
            self.note_duplicate(&label, k);
            return Ok(());
        }
        let norm = norm_sqr.to_f64().unwrap_or(f64::NAN).sqrt();
        let unit = comps.iter().map(|c| c.to_f64().unwrap_or(f64::NAN) / norm).collect();
        self.rays.push(Ray { label, exact: Some(comps), norm_sqr: Some(norm_sqr), unit });
        Ok(())
    }

    fn push_float(&mut self, label: String, comps: Vec<f64>) -> Result<(), KsError> {
        self.check_len(&label, comps.len())?;
        if comps.iter().any(|c| !c.is_finite()) {
            return Err(KsError::InvalidComponent { label, reason: "non-finite component".into() });
        }
        let norm = float_dot(&comps, &comps).sqrt();
        if norm == 0.0 {
            return Err(KsError::ZeroVector(label));
        }
        if (norm - 1.0).abs() > self.tol {
            return Err(KsError::NotUnit { label, norm });
        }
        let unit: Vec<f64> = comps.iter().map(|c| c / norm).collect();
        if let Some(k) = self.rays.iter().position(|r| float_dot(&r.unit, &unit).abs() >= 1.0 - self.tol) {
            self.note_duplicate(&label, k);
            return Ok(());
        }
        self.rays.push(Ray { label, exact: None, norm_sqr: None, unit });
        Ok(())
    }

    /// Parses the JSON vector-set format.
    pub fn from_json(text: &str, tol: f64) -> Result<Self, KsError> {
        let raw: RawSet = serde_json::from_str(text).map_err(|e| KsError::Schema(e.to_string()))?;
        if raw.dim < 2 {
            return Err(KsError::DimensionTooSmall(raw.dim.max(0) as usize));
        }
        let mut set = VectorSet::empty(raw.dim as usize, raw.field, tol)?;
        for (i, v) in raw.vectors.into_iter().enumerate() {
            let label = v.label.unwrap_or_else(|| format!("v{i}"));
            match raw.field {
                Field::Rational => {
                    let comps = v
                        .components
                        .iter()
                        .map(parse_rational)
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|reason| KsError::InvalidComponent { label: label.clone(), reason })?;
                    set.push_rational(label, comps)?;
                }
                Field::Float => {
                    let comps = v
                        .components
                        .iter()
                        .map(parse_float)
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|reason| KsError::InvalidComponent { label: label.clone(), reason })?;
                    set.push_float(label, comps)?;
                }
            }
        }
        if set.dim == 2 {
            let msg = "dimension 2: every set of rays is colorable basis by basis".to_string();
            log::info!("{msg}");
            set.warnings.push(msg);
        }
        Ok(set)
    }

    /// Serializes back to the JSON vector-set format.
    pub fn to_json(&self) -> Value {
        let vectors: Vec<Value> = self
            .rays
            .iter()
            .map(|r| {
                let comps: Vec<Value> = match &r.exact {
                    Some(q) => q.iter().map(|c| Value::String(c.to_string())).collect(),
                    None => r.unit.iter().map(|&c| Value::from(c)).collect(),
                };
                serde_json::json!({ "label": r.label, "components": comps })
            })
            .collect();
        serde_json::json!({ "dim": self.dim, "field": self.field, "vectors": vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// Messages about deduplicated rays and other non-fatal conditions.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Orthogonality of rays `i` and `j`: exact for rational sets,
    /// `|⟨u_i, u_j⟩| ≤ tol` on unit vectors otherwise.
    pub fn orthogonal(&self, i: usize, j: usize, tol: f64) -> bool {
        let (a, b) = (&self.rays[i], &self.rays[j]);
        match (&a.exact, &b.exact) {
            (Some(x), Some(y)) => x.iter().zip(y).map(|(s, t)| s * t).sum::<BigRational>().is_zero(),
            _ => float_dot(&a.unit, &b.unit).abs() <= tol,
        }
    }

    /// Applies a real `dim × dim` matrix to every ray, giving a float set.
    pub fn transformed(&self, m: &nalgebra::DMatrix<f64>) -> Result<Self, KsError> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(KsError::WrongLength { label: "transform".into(), expected: self.dim, found: m.nrows() });
        }
        let vectors = self
            .rays
            .iter()
            .map(|r| {
                let v = m * nalgebra::DVector::from_column_slice(&r.unit);
                (r.label.clone(), v.as_slice().to_vec())
            })
            .collect();
        VectorSet::float(self.dim, vectors, self.tol.max(DEFAULT_TOL))
    }
}

/// Reads and validates a vector-set file.
pub fn load_vector_set(path: impl AsRef<Path>) -> Result<VectorSet, KsError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| KsError::Io(format!("{}: {e}", path.display())))?;
    VectorSet::from_json(&text, DEFAULT_TOL)
}
