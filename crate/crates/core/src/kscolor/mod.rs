//! Kochen-Specker colorability of finite sets of rays.
//!
//! A set is colorable when the rays can be given values 0 or 1 so that
//! every orthonormal basis drawn from the set has exactly one ray valued 1.

mod search;
mod vectors;

pub use search::{find_bases, search_valuation, verify_valuation, BasisList, Valuation, Verdict};
pub use vectors::{load_vector_set, Field, Ray, VectorSet, DEFAULT_TOL};

/// Vector sets shipped with the crate, as `(name, json)` pairs.
pub const BUNDLED: &[(&str, &str)] = &[
    ("ks18-d4", include_str!("../../../../data/ks18-d4.json")),
    ("ks18-d4-float", include_str!("../../../../data/ks18-d4-float.json")),
    ("standard-basis-d3", include_str!("../../../../data/standard-basis-d3.json")),
    ("shared-axes-d3", include_str!("../../../../data/shared-axes-d3.json")),
    ("rays-d2", include_str!("../../../../data/rays-d2.json")),
];

/// Looks up a bundled set by name.
pub fn bundled(name: &str) -> Option<VectorSet> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| VectorSet::from_json(text, DEFAULT_TOL).expect("bundled data is valid"))
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KsError {
    #[error("{0}")]
    Io(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("dimension {0} is below 2")]
    DimensionTooSmall(usize),
    #[error("vector `{label}` has {found} components, expected {expected}")]
    WrongLength { label: String, expected: usize, found: usize },
    #[error("vector `{label}`: {reason}")]
    InvalidComponent { label: String, reason: String },
    #[error("vector `{0}` is zero")]
    ZeroVector(String),
    #[error("vector `{label}` has norm {norm}, expected 1")]
    NotUnit { label: String, norm: f64 },
    #[error("valuation has no value for vector {0}")]
    PartialValuation(usize),
    #[error("valuation gives vector {index} the value {value}")]
    InvalidValue { index: usize, value: u8 },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_sets_load() {
        for (name, _) in BUNDLED {
            assert!(bundled(name).is_some(), "{name}");
        }
        assert_eq!(bundled("ks18-d4").unwrap().len(), 18);
        assert!(bundled("nope").is_none());
    }

    #[test]
    fn ks18_bases() {
        let vs = bundled("ks18-d4").unwrap();
        let bl = find_bases(&vs, DEFAULT_TOL);
        assert_eq!(bl.len(), 9);
        assert!(bl.multiplicities().iter().all(|&m| m == 2));
        let float = find_bases(&bundled("ks18-d4-float").unwrap(), DEFAULT_TOL);
        assert_eq!(bl, float);
    }

    #[test]
    fn small_sets() {
        assert_eq!(find_bases(&bundled("standard-basis-d3").unwrap(), DEFAULT_TOL).len(), 1);
        let q = |xs: [i64; 3]| xs.iter().map(|&x| num_rational::BigRational::from_integer(x.into())).collect();
        let two = VectorSet::rational(3, vec![("a".into(), q([1, 0, 0])), ("b".into(), q([0, 1, 0]))]).unwrap();
        assert!(find_bases(&two, DEFAULT_TOL).is_empty());
        let d2 = bundled("rays-d2").unwrap();
        assert!(!d2.warnings().is_empty());
        assert!(search_valuation(&find_bases(&d2, DEFAULT_TOL)).colorable);
    }
}
