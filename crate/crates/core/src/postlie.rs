//! Post-Lie algebra structures `(g, [·,·]_dot, ▷)` and the integrability
//! obstructions that follow from the classification labels of the two
//! brackets.
//!
//! The circ bracket is never stored: it is always derived as
//! `[x, y]_circ = [x, y]_dot + x ▷ y − y ▷ x`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{axpy, unit_vec, zero_vec, RVec, Rational};
use crate::liealg::json::{coeffs_to_vec, vec_to_coeffs};
use crate::liealg::{catalog, BracketEntry, ClassLabel, InvariantBattery, LieAlgebra};

/// Caveat attached to every obstruction report.
pub const CONNECTED_CAVEAT: &str = "obstructions apply to integration into a connected Lie skew brace";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostLieStructure {
    dot: LieAlgebra,
    triangle: Vec<Rational>,
}

/// Which identity failed and on which basis triple (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: u8,
    pub triple: (usize, usize, usize),
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (i, j, k) = self.triple;
        write!(f, "axiom ({}) fails on (e{}, e{}, e{})", self.axiom, i + 1, j + 1, k + 1)
    }
}

impl PostLieStructure {
    /// `triangle[(i*n + j)*n + k]` is the `e_k` coefficient of `e_i ▷ e_j`.
    pub fn new(dot: LieAlgebra, triangle: Vec<Rational>) -> Result<Self> {
        let n = dot.dim();
        if triangle.len() != n * n * n {
            return Err(Error::Dimension(format!("{} triangle coefficients for dimension {n}", triangle.len())));
        }
        Ok(PostLieStructure { dot, triangle })
    }

    /// The structure with zero product: circ equals dot.
    pub fn trivial(dot: LieAlgebra) -> Self {
        let n = dot.dim();
        PostLieStructure { dot, triangle: vec![Rational::zero(); n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.dot.dim()
    }

    pub fn dot(&self) -> &LieAlgebra {
        &self.dot
    }

    pub fn triangle_tensor(&self) -> &[Rational] {
        &self.triangle
    }

    /// `e_i ▷ e_j`.
    pub fn triangle_basis(&self, i: usize, j: usize) -> &[Rational] {
        let n = self.dim();
        let s = (i * n + j) * n;
        &self.triangle[s..s + n]
    }

    pub fn triangle_is_zero(&self) -> bool {
        self.triangle.iter().all(Rational::is_zero)
    }

    /// `x ▷ y` for arbitrary vectors.
    pub fn product(&self, x: &[Rational], y: &[Rational]) -> RVec {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                axpy(&mut out, &(xi * yj), self.triangle_basis(i, j));
            }
        }
        out
    }

    fn circ_brackets(&self) -> Vec<(usize, usize, RVec)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = self.dot.bracket_basis(i, j).to_vec();
                axpy(&mut v, &Rational::one(), self.triangle_basis(i, j));
                axpy(&mut v, &Rational::from(-1), self.triangle_basis(j, i));
                out.push((i, j, v));
            }
        }
        out
    }

    /// The sub-adjacent bracket `[x,y]_dot + x ▷ y − y ▷ x`.  Fails when the
    /// result violates Jacobi, which only happens for invalid structures.
    pub fn derive_circ(&self) -> Result<LieAlgebra> {
        let name = format!("circ({})", self.dot.name());
        let g = LieAlgebra::from_brackets(name, self.dim(), &self.circ_brackets())?;
        g.jacobi_check()?;
        Ok(g)
    }

    fn circ_unchecked(&self) -> LieAlgebra {
        LieAlgebra::from_brackets("circ", self.dim(), &self.circ_brackets()).expect("pairs are i < j")
    }

    /// Checks the derivation rule and the homomorphism rule on every basis
    /// triple:
    ///
    /// * (2) `x ▷ [y, z] = [x ▷ y, z] + [y, x ▷ z]` (dot brackets),
    /// * (3) `[x, y]_circ ▷ z = x ▷ (y ▷ z) − y ▷ (x ▷ z)`.
    ///
    /// Returns the first violation found, scanning axiom (2) first.
    pub fn check_axioms(&self) -> Result<Option<AxiomViolation>> {
        self.dot.jacobi_check().map_err(|e| Error::Precondition(format!("dot bracket: {e}")))?;
        let n = self.dim();
        let units: Vec<RVec> = (0..n).map(|i| unit_vec(n, i)).collect();
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    let lhs = self.product(&units[i], self.dot.bracket_basis(j, k));
                    let mut rhs = self.dot.bracket_unchecked(self.triangle_basis(i, j), &units[k]);
                    let t = self.dot.bracket_unchecked(&units[j], self.triangle_basis(i, k));
                    axpy(&mut rhs, &Rational::one(), &t);
                    if lhs != rhs {
                        return Ok(Some(AxiomViolation { axiom: 2, triple: (i, j, k) }));
                    }
                }
            }
        }
        let circ = self.circ_unchecked();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let lhs = self.product(circ.bracket_basis(i, j), &units[k]);
                    let mut rhs = self.product(&units[i], self.triangle_basis(j, k));
                    let t = self.product(&units[j], self.triangle_basis(i, k));
                    axpy(&mut rhs, &Rational::from(-1), &t);
                    if lhs != rhs {
                        return Ok(Some(AxiomViolation { axiom: 3, triple: (i, j, k) }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Left-symmetry of the associator; only defined when the dot bracket is
    /// zero.  Returns the first failing triple.
    pub fn check_prelie(&self) -> Result<Option<(usize, usize, usize)>> {
        if !self.dot.is_abelian() {
            return Err(Error::Precondition("pre-Lie check needs a zero dot bracket".into()));
        }
        let n = self.dim();
        let units: Vec<RVec> = (0..n).map(|i| unit_vec(n, i)).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut lhs = self.product(&units[i], self.triangle_basis(j, k));
                    let t = self.product(&units[j], self.triangle_basis(i, k));
                    axpy(&mut lhs, &Rational::from(-1), &t);
                    let mut rhs = self.product(self.triangle_basis(i, j), &units[k]);
                    let t = self.product(self.triangle_basis(j, i), &units[k]);
                    axpy(&mut rhs, &Rational::from(-1), &t);
                    if lhs != rhs {
                        return Ok(Some((i, j, k)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Applies the integrability obstruction rules.  Every rule is reported,
    /// fired or not.
    pub fn obstruction_scan(&self) -> Result<Vec<ObstructionReport>> {
        if let Some(v) = self.check_axioms()? {
            return Err(Error::Precondition(format!("not a post-Lie structure: {v}")));
        }
        let circ = self.derive_circ()?;
        let dot_label = self.dot.classify();
        let circ_label = circ.classify();
        let labels = format!("dot {dot_label}, circ {circ_label}");

        let s2 = dot_label.is_solvable() && !circ_label.is_solvable();
        let r1 = circ_label.is_nilpotent() && !dot_label.is_solvable();

        let mut r2_detail = labels.clone();
        let r2 = if circ_label.is_semisimple() {
            let (a, b) = (self.dot.invariants(), circ.invariants());
            let diffs = invariant_differences(&a, &b);
            if !diffs.is_empty() {
                r2_detail = format!("{labels}; invariants differ: {}", diffs.join(", "));
            }
            !diffs.is_empty()
        } else {
            false
        };

        let one_dim = self.dim() == 1 && !self.triangle_is_zero();

        Ok(vec![
            ObstructionReport {
                rule: ObstructionRule::S2,
                fired: s2,
                detail: format!("{labels}; dot solvable forces circ solvable"),
            },
            ObstructionReport {
                rule: ObstructionRule::R1,
                fired: r1,
                detail: format!("{labels}; circ nilpotent forces dot solvable"),
            },
            ObstructionReport {
                rule: ObstructionRule::R2Necessary,
                fired: r2,
                detail: format!("{r2_detail}; circ semisimple forces dot isomorphic to circ"),
            },
            ObstructionReport {
                rule: ObstructionRule::OneDimensional,
                fired: one_dim,
                detail: "on a 1-dimensional connected group the only brace is the trivial one, \
                         whose lambda-map has zero differential; a nonzero product cannot integrate"
                    .into(),
            },
        ])
    }

    /// Whether any rule certifies non-integrability.
    pub fn is_certified_non_integrable(&self) -> Result<bool> {
        Ok(self.obstruction_scan()?.iter().any(|r| r.fired))
    }
}

fn invariant_differences(a: &InvariantBattery, b: &InvariantBattery) -> Vec<String> {
    let mut d = Vec::new();
    if a.derived_dim != b.derived_dim {
        d.push(format!("derived dim {} vs {}", a.derived_dim, b.derived_dim));
    }
    if a.derived_series != b.derived_series {
        d.push(format!("derived series {:?} vs {:?}", a.derived_series, b.derived_series));
    }
    if a.lower_central_series != b.lower_central_series {
        d.push(format!("lower central series {:?} vs {:?}", a.lower_central_series, b.lower_central_series));
    }
    if a.killing_rank != b.killing_rank {
        d.push(format!("Killing rank {} vs {}", a.killing_rank, b.killing_rank));
    }
    if a.killing_signature != b.killing_signature {
        d.push(format!("Killing signature {:?} vs {:?}", a.killing_signature, b.killing_signature));
    }
    if a.center_dim != b.center_dim {
        d.push(format!("center dim {} vs {}", a.center_dim, b.center_dim));
    }
    d
}

/// Human-readable list of necessary invariants in which two algebras differ.
pub fn differing_invariants(a: &LieAlgebra, b: &LieAlgebra) -> Vec<String> {
    invariant_differences(&a.invariants(), &b.invariants())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObstructionRule {
    S2,
    R1,
    #[serde(rename = "R2-necessary")]
    R2Necessary,
    #[serde(rename = "one-dimensional")]
    OneDimensional,
}

impl std::fmt::Display for ObstructionRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ObstructionRule::S2 => "S2",
            ObstructionRule::R1 => "R1",
            ObstructionRule::R2Necessary => "R2-necessary",
            ObstructionRule::OneDimensional => "one-dimensional",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub rule: ObstructionRule,
    pub fired: bool,
    pub detail: String,
}

/// Matrix algebra `M_n(ℝ)` with zero dot bracket and `X ▷ Y = XY`, in the
/// elementary basis `E_ab ↦ a*n + b`.
pub fn gln_prelie(n: usize) -> Result<PostLieStructure> {
    if n == 0 {
        return Err(Error::Invalid("gln_prelie needs n >= 1".into()));
    }
    let d = n * n;
    let mut t = vec![Rational::zero(); d * d * d];
    // E_ab E_cd = δ_bc E_ad
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let i = a * n + b;
                let j = b * n + c;
                let k = a * n + c;
                t[(i * d + j) * d + k] = Rational::one();
            }
        }
    }
    PostLieStructure::new(LieAlgebra::abelian(d).with_name(format!("M{n}")), t)
}

/// Abelian dot bracket on ℝ² with `x ▷ y = (0, x₁ y₂)`.
pub fn aff1_prelie() -> PostLieStructure {
    let mut t = vec![Rational::zero(); 8];
    // e1 ▷ e2 = e2 at index (i·2 + j)·2 + k
    t[3] = Rational::one();
    PostLieStructure::new(LieAlgebra::abelian(2), t).expect("8 coefficients")
}

/// Is `circ` the `gl_n` commutator tensor?
pub fn is_gln_commutator(circ: &LieAlgebra, n: usize) -> bool {
    circ.tensor() == catalog::gl(n).tensor()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PostLieJson {
    pub dot: LieAlgebra,
    pub triangle: Vec<BracketEntry>,
}

impl TryFrom<PostLieJson> for PostLieStructure {
    type Error = Error;
    fn try_from(j: PostLieJson) -> Result<Self> {
        let n = j.dot.dim();
        let mut t = vec![Rational::zero(); n * n * n];
        let mut seen = std::collections::BTreeSet::new();
        for e in &j.triangle {
            if e.i >= n || e.j >= n {
                return Err(Error::Invalid(format!("triangle entry ({}, {}) out of range", e.i, e.j)));
            }
            if !seen.insert((e.i, e.j)) {
                return Err(Error::Invalid(format!("duplicate triangle entry ({}, {})", e.i, e.j)));
            }
            let v = coeffs_to_vec(n, &e.coeffs)?;
            for (k, x) in v.into_iter().enumerate() {
                t[(e.i * n + e.j) * n + k] = x;
            }
        }
        PostLieStructure::new(j.dot, t)
    }
}

/// Every `(i, j)` pair is written, zero products included; on input missing
/// pairs read as zero.
impl From<&PostLieStructure> for PostLieJson {
    fn from(p: &PostLieStructure) -> Self {
        let n = p.dim();
        let triangle = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| BracketEntry { i, j, coeffs: vec_to_coeffs(p.triangle_basis(i, j)) })
            .collect();
        PostLieJson { dot: p.dot.clone(), triangle }
    }
}

impl Serialize for PostLieStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PostLieJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PostLieStructure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PostLieStructure::try_from(PostLieJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Convenience: labels of the two brackets.
pub fn labels(p: &PostLieStructure) -> Result<(ClassLabel, ClassLabel)> {
    Ok((p.dot().classify(), p.derive_circ()?.classify()))
}
