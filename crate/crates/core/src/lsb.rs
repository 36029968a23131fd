//! Lie skew braces: a second group law `∘` on the underlying manifold of a
//! catalog group `(G, ·)` with `a ∘ (b·c) = (a ∘ b) · a⁻¹ · (a ∘ c)`.
//!
//! Instances are built from a [`LsbSpec`]; everything downstream (the
//! lambda-map, sampled verification, post-Lie extraction) works on raw
//! element data in the dot group's layout.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::Rational;
use crate::liealg::LieAlgebra;
use crate::matgrp::numeric::{basis_curve, mixed_partial};
use crate::matgrp::{bracket_tensor, dist_inf, mat, Action, Group, GroupElement, GroupLaw, GroupSpec, Mat};
use crate::par::par_map;
use crate::postlie::{AxiomViolation, PostLieStructure};
use crate::report::VerificationReport;

pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance for `s(g) = (g₁, g₂)` reproducing `g`.
pub const SPLIT_TOL: f64 = 1e-10;

/// `λ` counts as non-trivial when it moves some sample by more than this.
pub const LAMBDA_TRIVIAL_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construction", deny_unknown_fields)]
pub enum LsbSpec {
    /// `a ∘ b = a · b`.
    #[serde(rename = "trivial")]
    Trivial { group: GroupSpec },
    /// `a ∘ b = b · a`.
    #[serde(rename = "opposite-trivial")]
    OppositeTrivial { group: GroupSpec },
    #[serde(rename = "product")]
    Product { factors: Vec<LsbSpec> },
    /// `a ∘ b = a₁ · b · a₂` where `a = a₁ · a₂`.
    #[serde(rename = "zappa")]
    Zappa { group: GroupSpec, factorization: Factorization },
    /// Dot is `G₂ × G₁`, circ is the semidirect law with `G₂` acting on `G₁`.
    #[serde(rename = "semidirect-twist")]
    SemidirectTwist { g1: GroupSpec, g2: GroupSpec, action: Action },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factorization {
    /// `g = k · (a n)`.
    #[serde(rename = "iwasawa_k_an")]
    IwasawaKAn,
    /// `(x, y, z) = (0, y, z) · (x, 0, 0)`.
    #[serde(rename = "h3_normal_split")]
    H3NormalSplit,
    /// `(a, b) = (0, b) · (a, 0)`.
    #[serde(rename = "aff1_split")]
    Aff1Split,
    /// `(h, n) = (e, n) · (h, e)`.
    #[serde(rename = "semidirect_split")]
    SemidirectSplit,
}

impl Factorization {
    pub fn as_str(self) -> &'static str {
        match self {
            Factorization::IwasawaKAn => "iwasawa_k_an",
            Factorization::H3NormalSplit => "h3_normal_split",
            Factorization::Aff1Split => "aff1_split",
            Factorization::SemidirectSplit => "semidirect_split",
        }
    }
}

impl LsbSpec {
    pub fn trivial(group: GroupSpec) -> Self {
        LsbSpec::Trivial { group }
    }

    pub fn zappa(group: GroupSpec, factorization: Factorization) -> Self {
        LsbSpec::Zappa { group, factorization }
    }

    pub fn twist(g1: GroupSpec, g2: GroupSpec, action: Action) -> Self {
        LsbSpec::SemidirectTwist { g1, g2, action }
    }

    pub fn product(factors: Vec<LsbSpec>) -> Self {
        LsbSpec::Product { factors }
    }

    /// The dot group this spec lives on.
    pub fn dot_spec(&self) -> GroupSpec {
        match self {
            LsbSpec::Trivial { group } | LsbSpec::OppositeTrivial { group } | LsbSpec::Zappa { group, .. } => {
                group.clone()
            }
            LsbSpec::Product { factors } => GroupSpec::product(factors.iter().map(LsbSpec::dot_spec).collect()),
            LsbSpec::SemidirectTwist { g1, g2, .. } => GroupSpec::product(vec![g2.clone(), g1.clone()]),
        }
    }

    pub fn name(&self) -> String {
        match self {
            LsbSpec::Trivial { group } => format!("trivial({})", group.name()),
            LsbSpec::OppositeTrivial { group } => format!("opposite-trivial({})", group.name()),
            LsbSpec::Product { factors } => {
                format!("product({})", factors.iter().map(LsbSpec::name).collect::<Vec<_>>().join(", "))
            }
            LsbSpec::Zappa { group, factorization } => {
                format!("zappa({}, {})", group.name(), factorization.as_str())
            }
            LsbSpec::SemidirectTwist { g1, g2, action } => {
                format!("semidirect-twist({}, {}, {})", g1.name(), g2.name(), action.as_str())
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Circ {
    Same,
    Opposite,
    Zappa(Factorization),
    Twist(Group),
    Product(Vec<LsbInstance>),
}

#[derive(Clone, Debug)]
pub struct LsbInstance {
    spec: LsbSpec,
    dot: Group,
    circ: Circ,
    perturbation: Option<(usize, f64)>,
}

/// Builds an instance, checking the factorization oracle on the identity and
/// a few seeded samples.
pub fn realize(spec: &LsbSpec) -> Result<LsbInstance> {
    let dot = Group::new(&spec.dot_spec())?;
    let circ = match spec {
        LsbSpec::Trivial { .. } => Circ::Same,
        LsbSpec::OppositeTrivial { .. } => Circ::Opposite,
        LsbSpec::Product { factors } => {
            if factors.is_empty() {
                return Err(Error::Invalid("product needs at least one factor".into()));
            }
            Circ::Product(factors.iter().map(realize).collect::<Result<_>>()?)
        }
        LsbSpec::Zappa { group, factorization } => {
            let supported = match factorization {
                Factorization::IwasawaKAn => matches!(group, GroupSpec::Sl { .. }),
                Factorization::H3NormalSplit => *group == GroupSpec::Heisenberg3,
                Factorization::Aff1Split => *group == GroupSpec::Aff1,
                Factorization::SemidirectSplit => dot.semidirect_parts().is_some(),
            };
            if !supported {
                return Err(Error::Factorization { factorization: factorization.as_str().into(), group: group.name() });
            }
            check_split(&dot, *factorization)?;
            Circ::Zappa(*factorization)
        }
        LsbSpec::SemidirectTwist { g1, g2, action } => {
            Circ::Twist(Group::new(&GroupSpec::semidirect(g1.clone(), g2.clone(), *action))?)
        }
    };
    Ok(LsbInstance { spec: spec.clone(), dot, circ, perturbation: None })
}

fn check_split(dot: &Group, f: Factorization) -> Result<()> {
    let id = dot.identity().coords;
    let (e1, e2) = split(dot, f, &id);
    let mut worst = dist_inf(&e1, &id).max(dist_inf(&e2, &id));
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..8 {
        let g = dot.sample(&mut rng).coords;
        let (g1, g2) = split(dot, f, &g);
        worst = worst.max(dist_inf(&dot.mul(&g1, &g2), &g));
    }
    if worst.is_nan() || worst >= SPLIT_TOL {
        return Err(Error::Splitting(worst));
    }
    Ok(())
}

/// `g ↦ (g₁, g₂)` with `g = g₁ · g₂`, both in the ambient layout.
fn split(dot: &Group, f: Factorization, g: &[f64]) -> (Vec<f64>, Vec<f64>) {
    match f {
        Factorization::IwasawaKAn => {
            let n = dot.matrix_size().expect("checked at realize");
            let m = Mat::from_row_major(n, g.to_vec()).expect("length checked");
            match mat::iwasawa(&m) {
                Ok(w) => (w.k.into_vec(), w.a.mul(&w.n).into_vec()),
                Err(_) => (vec![f64::NAN; n * n], vec![f64::NAN; n * n]),
            }
        }
        Factorization::H3NormalSplit => (vec![0.0, g[1], g[2]], vec![g[0], 0.0, 0.0]),
        Factorization::Aff1Split => (vec![0.0, g[1]], vec![g[0], 0.0]),
        Factorization::SemidirectSplit => {
            let (_, acting, _) = dot.semidirect_parts().expect("checked at realize");
            let k = acting.data_len();
            let id = dot.identity().coords;
            let mut g1 = id[..k].to_vec();
            g1.extend_from_slice(&g[k..]);
            let mut g2 = g[..k].to_vec();
            g2.extend_from_slice(&id[k..]);
            (g1, g2)
        }
    }
}

impl LsbInstance {
    pub fn spec(&self) -> &LsbSpec {
        &self.spec
    }

    pub fn dot(&self) -> &Group {
        &self.dot
    }

    pub fn dim(&self) -> usize {
        self.dot.dim()
    }

    /// Same instance with `δ` added to coordinate `coord` of every circ
    /// product.  Used to confirm the checks can fail.
    pub fn with_perturbation(&self, coord: usize, delta: f64) -> Result<LsbInstance> {
        if coord >= self.dot.data_len() {
            return Err(Error::Dimension(format!("coordinate {coord} out of range")));
        }
        Ok(LsbInstance { perturbation: Some((coord, delta)), ..self.clone() })
    }

    pub(crate) fn circ_raw(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = match &self.circ {
            Circ::Same => self.dot.mul(a, b),
            Circ::Opposite => self.dot.mul(b, a),
            Circ::Zappa(f) => {
                let (a1, a2) = split(&self.dot, *f, a);
                self.dot.mul(&self.dot.mul(&a1, b), &a2)
            }
            Circ::Twist(g) => g.mul(a, b),
            Circ::Product(parts) => {
                let mut out = Vec::with_capacity(a.len());
                let mut off = 0;
                for p in parts {
                    let k = p.dot.data_len();
                    out.extend(p.circ_raw(&a[off..off + k], &b[off..off + k]));
                    off += k;
                }
                out
            }
        };
        if let Some((k, d)) = self.perturbation {
            out[k] += d;
        }
        out
    }

    pub(crate) fn circ_inv_raw(&self, a: &[f64]) -> Vec<f64> {
        match &self.circ {
            Circ::Same | Circ::Opposite => self.dot.inv(a),
            Circ::Zappa(f) => {
                let (a1, a2) = split(&self.dot, *f, a);
                self.dot.mul(&self.dot.inv(&a1), &self.dot.inv(&a2))
            }
            Circ::Twist(g) => g.inv(a),
            Circ::Product(parts) => {
                let mut out = Vec::with_capacity(a.len());
                let mut off = 0;
                for p in parts {
                    let k = p.dot.data_len();
                    out.extend(p.circ_inv_raw(&a[off..off + k]));
                    off += k;
                }
                out
            }
        }
    }

    pub(crate) fn lambda_raw(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        self.dot.mul(&self.dot.inv(a), &self.circ_raw(a, b))
    }

    pub fn circ(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.dot.check(a)?;
        self.dot.check(b)?;
        Ok(GroupElement::new(self.circ_raw(&a.coords, &b.coords)))
    }

    /// Inverse for the circ law.
    pub fn circ_inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.dot.check(a)?;
        Ok(GroupElement::new(self.circ_inv_raw(&a.coords)))
    }

    /// `λ_a(b) = a⁻¹ · (a ∘ b)`.
    pub fn lambda(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.dot.check(a)?;
        self.dot.check(b)?;
        Ok(GroupElement::new(self.lambda_raw(&a.coords, &b.coords)))
    }

    /// `ρ(a)(b) = a · λ_a(b)`.
    pub fn rho(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let l = self.lambda(a, b)?;
        self.dot.multiply(a, &l)
    }

    fn sample_tuples(&self, samples: usize, seed: u64, arity: usize) -> Result<Vec<Vec<Vec<f64>>>> {
        if samples == 0 {
            return Err(Error::Invalid("samples must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok((0..samples).map(|_| (0..arity).map(|_| self.dot.sample(&mut rng).coords).collect()).collect())
    }
}

pub fn lambda_map(inst: &LsbInstance, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    inst.lambda(a, b)
}

fn run_check(
    name: &str,
    seed: u64,
    tol: f64,
    tuples: &[Vec<Vec<f64>>],
    residual: impl Fn(&[Vec<f64>]) -> f64 + Sync + Send,
) -> VerificationReport {
    let residuals = par_map(tuples, |t| residual(t));
    VerificationReport::from_residuals(name, seed, tol, &residuals, |i| tuples[i].clone())
}

/// Max over sampled triples of `‖a ∘ (b·c) − (a ∘ b)·a⁻¹·(a ∘ c)‖_∞`.
pub fn verify_lsb(inst: &LsbInstance, samples: usize, seed: u64, tol: f64) -> Result<VerificationReport> {
    let tuples = inst.sample_tuples(samples, seed, 3)?;
    let g = &inst.dot;
    Ok(run_check("lsb-identity", seed, tol, &tuples, |t| {
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        let lhs = inst.circ_raw(a, &g.mul(b, c));
        let rhs = g.mul(&g.mul(&inst.circ_raw(a, b), &g.inv(a)), &inst.circ_raw(a, c));
        dist_inf(&lhs, &rhs)
    }))
}

/// Automorphism, homomorphism, post-Lie group axiom and reconstruction
/// checks for `λ`, one report each.
pub fn verify_lambda_properties(
    inst: &LsbInstance,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    let tuples = inst.sample_tuples(samples, seed, 3)?;
    let g = &inst.dot;
    let l = |a: &[f64], b: &[f64]| inst.lambda_raw(a, b);
    Ok(vec![
        run_check("lambda-automorphism", seed, tol, &tuples, |t| {
            let (a, b, c) = (&t[0], &t[1], &t[2]);
            dist_inf(&l(a, &g.mul(b, c)), &g.mul(&l(a, b), &l(a, c)))
        }),
        run_check("lambda-homomorphism", seed, tol, &tuples, |t| {
            let (a, b, c) = (&t[0], &t[1], &t[2]);
            dist_inf(&l(&inst.circ_raw(a, b), c), &l(a, &l(b, c)))
        }),
        run_check("post-lie-group", seed, tol, &tuples, |t| {
            let (a, b, c) = (&t[0], &t[1], &t[2]);
            dist_inf(&l(&g.mul(a, &l(a, b)), c), &l(a, &l(b, c)))
        }),
        run_check("reconstruction", seed, tol, &tuples, |t| {
            let (a, b) = (&t[0], &t[1]);
            dist_inf(&inst.circ_raw(a, b), &g.mul(a, &l(a, b)))
        }),
    ])
}

/// `ρ(a)(e) = a` and `ρ(a ∘ b)(c) = ρ(a)(ρ(b)(c))` on samples.
pub fn verify_simple_transitivity(
    inst: &LsbInstance,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    let tuples = inst.sample_tuples(samples, seed, 3)?;
    let g = &inst.dot;
    let id = g.identity().coords;
    let rho = |a: &[f64], b: &[f64]| g.mul(a, &inst.lambda_raw(a, b));
    Ok(vec![
        run_check("orbit-at-identity", seed, tol, &tuples, |t| dist_inf(&rho(&t[0], &id), &t[0])),
        run_check("affine-action", seed, tol, &tuples, |t| {
            let (a, b, c) = (&t[0], &t[1], &t[2]);
            dist_inf(&rho(&inst.circ_raw(a, b), c), &rho(a, &rho(b, c)))
        }),
    ])
}

/// Largest `‖λ_a(b) − b‖_∞` over sampled pairs.
pub fn lambda_displacement(inst: &LsbInstance, samples: usize, seed: u64) -> Result<f64> {
    let tuples = inst.sample_tuples(samples, seed, 2)?;
    let d = par_map(&tuples, |t| dist_inf(&inst.lambda_raw(&t[0], &t[1]), &t[1]));
    Ok(d.into_iter().fold(0.0, f64::max))
}

/// Whether `λ` moves some sampled point by more than [`LAMBDA_TRIVIAL_TOL`].
pub fn lambda_nontrivial(inst: &LsbInstance, samples: usize, seed: u64) -> Result<bool> {
    Ok(lambda_displacement(inst, samples, seed)? > LAMBDA_TRIVIAL_TOL)
}

/// The circ law read through the dot group's chart.
struct CircLaw<'a>(&'a LsbInstance);

impl GroupLaw for CircLaw<'_> {
    fn mul(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        self.0.circ_raw(a, b)
    }
    fn inv(&self, a: &[f64]) -> Vec<f64> {
        self.0.circ_inv_raw(a)
    }
    fn exp_raw(&self, v: &[f64]) -> Vec<f64> {
        self.0.dot.exp(v)
    }
    fn log_raw(&self, a: &[f64]) -> Result<Vec<f64>> {
        self.0.dot.log(a)
    }
    fn chart_dim(&self) -> usize {
        self.0.dot.dim()
    }
}

/// Entries below this are treated as exact zeros.
pub const ZERO_CUTOFF: f64 = 1e-4;
/// Allowed distance to the nearest small rational.
pub const RATIONAL_TOL: f64 = 1e-5;
pub const MAX_DENOMINATOR: i64 = 8;
/// Numeric budget for `circ − dot = t − tᵀ`.
pub const AXIOM1_TOL: f64 = 1e-4;

pub fn rationalize(x: f64) -> Option<Rational> {
    if x.abs() < ZERO_CUTOFF {
        Some(Rational::zero())
    } else {
        Rational::approximate(x, MAX_DENOMINATOR, RATIONAL_TOL)
    }
}

fn rationalize_tensor(what: &str, n: usize, t: &[f64]) -> Result<Vec<Rational>> {
    t.iter()
        .enumerate()
        .map(|(idx, &x)| {
            rationalize(x).ok_or_else(|| {
                let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
                Error::Inconclusive(format!(
                    "extraction inconclusive: {what}[{i}][{j}][{k}] = {x} is not near a rational with denominator <= {MAX_DENOMINATOR}"
                ))
            })
        })
        .collect()
}

/// Result of differentiating an instance at the identity.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub dot_numeric: Vec<f64>,
    pub circ_numeric: Vec<f64>,
    pub triangle_numeric: Vec<f64>,
    /// `max |circ − dot − (t − tᵀ)|` before rationalization.
    pub axiom1_residual: f64,
    pub structure: PostLieStructure,
    /// The rationalized circ tensor; equal to `structure.derive_circ()`.
    pub circ: LieAlgebra,
    /// First exact axiom failure, if any.
    pub axioms: Option<AxiomViolation>,
}

/// Numeric brackets of both laws and `t[i][j] = ∂²/∂s∂t log λ_{exp s eᵢ}(exp t eⱼ)`,
/// rationalized and checked exactly.
pub fn extract_postlie(inst: &LsbInstance) -> Result<Extraction> {
    let n = inst.dim();
    let dot = &inst.dot;
    let dot_numeric = bracket_tensor(dot, dot)?;
    let circ_numeric = bracket_tensor(&CircLaw(inst), dot)?;

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let cols = par_map(&pairs, |&(i, j)| {
        mixed_partial(|s, t| {
            let a = basis_curve(dot, i, s);
            let b = basis_curve(dot, j, t);
            dot.log(&inst.lambda_raw(&a, &b))
        })
    });
    let mut triangle_numeric = vec![0.0; n * n * n];
    for (&(i, j), col) in pairs.iter().zip(cols) {
        triangle_numeric[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&col?);
    }

    let mut axiom1_residual = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = circ_numeric[(i * n + j) * n + k];
                let d = dot_numeric[(i * n + j) * n + k];
                let t = triangle_numeric[(i * n + j) * n + k] - triangle_numeric[(j * n + i) * n + k];
                axiom1_residual = axiom1_residual.max((c - d - t).abs());
            }
        }
    }
    if axiom1_residual.is_nan() || axiom1_residual >= AXIOM1_TOL {
        return Err(Error::Inconclusive(format!(
            "extraction inconclusive: circ - dot differs from the antisymmetrized product by {axiom1_residual:e}"
        )));
    }

    let name = inst.dot.spec().name();
    let dot_alg = LieAlgebra::new(format!("dot({name})"), n, rationalize_tensor("dot", n, &dot_numeric)?)?;
    let circ = LieAlgebra::new(format!("circ({name})"), n, rationalize_tensor("circ", n, &circ_numeric)?)?;
    let structure = PostLieStructure::new(dot_alg, rationalize_tensor("triangle", n, &triangle_numeric)?)?;
    let derived = structure.derive_circ()?;
    if derived.tensor() != circ.tensor() {
        return Err(Error::Inconclusive(
            "extraction inconclusive: rationalized circ differs from dot + t - t^T".into(),
        ));
    }
    let axioms = structure.check_axioms()?;
    Ok(Extraction { dot_numeric, circ_numeric, triangle_numeric, axiom1_residual, structure, circ, axioms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{catalog, ClassLabel};

    fn el(v: &[f64]) -> GroupElement {
        GroupElement::new(v.to_vec())
    }

    fn aff_twist() -> LsbInstance {
        realize(&LsbSpec::twist(GroupSpec::abelian(1), GroupSpec::abelian(1), Action::Aff1Exp)).unwrap()
    }

    #[test]
    fn twist_gives_affine_law_and_linear_lambda() {
        let inst = aff_twist();
        let p = inst.circ(&el(&[0.5, 2.0]), &el(&[1.0, 3.0])).unwrap();
        assert!(dist_inf(&p.coords, &[1.5, 2.0 + 0.5f64.exp() * 3.0]) < 1e-15);
        let l = inst.lambda(&el(&[0.5, 2.0]), &el(&[1.0, 3.0])).unwrap();
        assert!(dist_inf(&l.coords, &[1.0, 0.5f64.exp() * 3.0]) < 1e-15);
    }

    #[test]
    fn trivial_lambda_is_identity() {
        let inst = realize(&LsbSpec::trivial(GroupSpec::sl(2))).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = inst.dot().sample(&mut rng);
        let b = inst.dot().sample(&mut rng);
        assert!(dist_inf(&inst.lambda(&a, &b).unwrap().coords, &b.coords) < 1e-14);
        assert!(!lambda_nontrivial(&inst, 20, 1).unwrap());
    }

    #[test]
    fn zappa_h3_lambda_at_identity() {
        let inst = realize(&LsbSpec::zappa(GroupSpec::Heisenberg3, Factorization::H3NormalSplit)).unwrap();
        let e = inst.dot().identity();
        let b = el(&[0.3, -0.2, 0.7]);
        assert_eq!(inst.lambda(&e, &b).unwrap(), b);
        assert!(lambda_nontrivial(&inst, 20, 1).unwrap());
    }

    #[test]
    fn zappa_sl2_verifies() {
        let inst = realize(&LsbSpec::zappa(GroupSpec::sl(2), Factorization::IwasawaKAn)).unwrap();
        let r = verify_lsb(&inst, 200, 42, 1e-9).unwrap();
        assert!(r.pass, "{r:?}");
        for r in verify_lambda_properties(&inst, 50, 42, 1e-8).unwrap() {
            assert!(r.pass, "{r:?}");
        }
        for r in verify_simple_transitivity(&inst, 50, 42, 1e-9).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn perturbed_circ_fails() {
        let inst = aff_twist().with_perturbation(0, 0.1).unwrap();
        let r = verify_lsb(&inst, 20, 42, 1e-6).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_failure.as_ref().unwrap().index, 0);
    }

    #[test]
    fn aff_twist_extraction() {
        let x = extract_postlie(&aff_twist()).unwrap();
        let mut expected = vec![0.0; 8];
        expected[3] = 1.0; // (i, j, k) = (0, 1, 1)
        for (a, b) in x.triangle_numeric.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-5);
        }
        assert!(x.structure.dot().is_abelian());
        assert_eq!(x.circ.tensor(), catalog::aff1().tensor());
        assert_eq!(x.axioms, None);
    }

    #[test]
    fn zappa_sl2_extraction_is_solvable() {
        let inst = realize(&LsbSpec::zappa(GroupSpec::sl(2), Factorization::IwasawaKAn)).unwrap();
        let x = extract_postlie(&inst).unwrap();
        assert_eq!(x.structure.dot().tensor(), catalog::sl(2).tensor());
        assert_eq!(x.circ.classify(), ClassLabel::Solv);
        assert_eq!(x.axioms, None);
    }

    #[test]
    fn unsupported_factorization_is_rejected() {
        let e = realize(&LsbSpec::zappa(GroupSpec::Aff1, Factorization::IwasawaKAn)).unwrap_err();
        assert!(matches!(e, Error::Factorization { .. }));
        assert!(realize(&LsbSpec::zappa(GroupSpec::Aff1, Factorization::SemidirectSplit)).is_err());
    }

    #[test]
    fn spec_json() {
        let s: LsbSpec = serde_json::from_str(
            r#"{"construction": "zappa", "group": {"group": "sl", "n": 2}, "factorization": "iwasawa_k_an"}"#,
        )
        .unwrap();
        assert_eq!(s, LsbSpec::zappa(GroupSpec::sl(2), Factorization::IwasawaKAn));
        assert!(serde_json::from_str::<LsbSpec>(r#"{"construction": "trivial", "group": {"group": "aff1"}, "x": 1}"#)
            .is_err());
    }
}
