use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vec, zero_vec, RVec, Rational};

use super::LieAlgebra;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub k: usize,
    pub c: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<CoeffEntry>,
}

/// On-disk form: only `i < j` pairs are listed, indices are 0-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraJson {
    pub name: String,
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
}

pub(crate) fn coeffs_to_vec(dim: usize, coeffs: &[CoeffEntry]) -> Result<RVec> {
    let mut v = zero_vec(dim);
    for e in coeffs {
        if e.k >= dim {
            return Err(Error::Invalid(format!("coefficient index k={} out of range", e.k)));
        }
        v[e.k] += &e.c;
    }
    Ok(v)
}

pub(crate) fn vec_to_coeffs(v: &[Rational]) -> Vec<CoeffEntry> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| CoeffEntry { k, c: c.clone() }).collect()
}

impl TryFrom<LieAlgebraJson> for LieAlgebra {
    type Error = Error;

    fn try_from(j: LieAlgebraJson) -> Result<Self> {
        let brackets =
            j.brackets.iter().map(|b| Ok((b.i, b.j, coeffs_to_vec(j.dim, &b.coeffs)?))).collect::<Result<Vec<_>>>()?;
        LieAlgebra::from_brackets(j.name, j.dim, &brackets)
    }
}

impl From<&LieAlgebra> for LieAlgebraJson {
    fn from(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let brackets = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !is_zero_vec(g.bracket_basis(i, j)))
            .map(|(i, j)| BracketEntry { i, j, coeffs: vec_to_coeffs(g.bracket_basis(i, j)) })
            .collect();
        LieAlgebraJson { name: g.name().to_string(), dim: n, brackets }
    }
}

impl Serialize for LieAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LieAlgebraJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LieAlgebraJson::deserialize(d)?;
        LieAlgebra::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog;

    #[test]
    fn parses_documented_shape() {
        let text = r#"{"name": "h3", "dim": 3,
            "brackets": [{"i": 0, "j": 1, "coeffs": [{"k": 2, "c": "1"}]}]}"#;
        let g: LieAlgebra = serde_json::from_str(text).unwrap();
        assert_eq!(g, catalog::heisenberg3());
    }

    #[test]
    fn rejects_lower_triangle_and_bad_rationals() {
        let text = r#"{"name": "x", "dim": 2, "brackets": [{"i": 1, "j": 0, "coeffs": []}]}"#;
        assert!(serde_json::from_str::<LieAlgebra>(text).is_err());
        let text = r#"{"name": "x", "dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": [{"k": 0, "c": "1/0"}]}]}"#;
        assert!(serde_json::from_str::<LieAlgebra>(text).is_err());
    }

    #[test]
    fn sl3_survives_serialization() {
        let g = catalog::sl(3);
        let s = serde_json::to_string(&g).unwrap();
        let back: LieAlgebra = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
