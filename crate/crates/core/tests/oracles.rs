mod common;

use common::*;
use liebrace::exactlin::Rational;
use liebrace::liealg::{catalog, ClassLabel, LieAlgebra};
use liebrace::lsb::{self, Factorization, LsbSpec};
use liebrace::matgrp::{Action, GroupSpec};
use liebrace::postlie;

fn extract(spec: &LsbSpec) -> lsb::Extraction {
    let inst = lsb::realize(spec).unwrap();
    let x = lsb::extract_postlie(&inst).unwrap();
    assert_eq!(x.structure.dot().tensor(), inst.dot().algebra().tensor(), "{}", spec.name());
    assert!(x.axioms.is_none(), "{}: {:?}", spec.name(), x.axioms);
    x
}

fn zappa_case(group: GroupSpec, f: Factorization, proj: impl Fn(&LieAlgebra) -> Vec<Vec<Rational>>) {
    let spec = LsbSpec::zappa(group, f);
    let x = extract(&spec);
    let g = x.structure.dot().clone();
    let expected = zappa_triangle(&g, &proj(&g));
    assert_eq!(x.structure.triangle_tensor(), expected.as_slice(), "{}", spec.name());
}

#[test]
fn zappa_heisenberg_matches_projection_oracle() {
    zappa_case(GroupSpec::Heisenberg3, Factorization::H3NormalSplit, |g| coordinate_projection(g.dim(), 0..1));
}

#[test]
fn zappa_aff1_matches_projection_oracle() {
    zappa_case(GroupSpec::Aff1, Factorization::Aff1Split, |g| coordinate_projection(g.dim(), 0..1));
}

#[test]
fn zappa_iwasawa_matches_projection_oracle() {
    for n in [2, 3] {
        zappa_case(GroupSpec::sl(n), Factorization::IwasawaKAn, |_| iwasawa_projection(n));
    }
}

#[test]
fn zappa_semidirect_splits_match_projection_oracle() {
    // acting factor first: 1 for the dilation, 2 for aff1 ⋉ aff1, 3 for su2 ⋉ ℝ³
    zappa_case(GroupSpec::DilationSemidirectH3, Factorization::SemidirectSplit, |g| {
        coordinate_projection(g.dim(), 0..1)
    });
    zappa_case(GroupSpec::AdSemidirect { h: Box::new(GroupSpec::Aff1) }, Factorization::SemidirectSplit, |g| {
        coordinate_projection(g.dim(), 0..2)
    });
    zappa_case(GroupSpec::AdjointSemidirectSu2, Factorization::SemidirectSplit, |g| {
        coordinate_projection(g.dim(), 0..3)
    });
}

#[test]
fn twists_match_derivation_oracle() {
    let x = extract(&LsbSpec::twist(GroupSpec::abelian(1), GroupSpec::abelian(1), Action::Aff1Exp));
    assert_eq!(x.structure.triangle_tensor(), twist_triangle(1, 1, &[vec![vec![1]]]).as_slice());

    let x = extract(&LsbSpec::twist(GroupSpec::abelian(2), GroupSpec::abelian(1), Action::HeisenbergShear));
    let shear = vec![vec![0, 0], vec![1, 0]];
    assert_eq!(x.structure.triangle_tensor(), twist_triangle(1, 2, &[shear]).as_slice());
    assert_eq!(x.circ.tensor(), catalog::heisenberg3().tensor());
}

#[test]
fn aff_twist_numeric_triangle_near_closed_form() {
    let inst = lsb::realize(&LsbSpec::twist(GroupSpec::abelian(1), GroupSpec::abelian(1), Action::Aff1Exp)).unwrap();
    let x = lsb::extract_postlie(&inst).unwrap();
    let closed = twist_triangle(1, 1, &[vec![vec![1]]]);
    let worst = x.triangle_numeric.iter().zip(&closed).map(|(a, b)| (a - b.to_f64()).abs()).fold(0.0f64, f64::max);
    assert!(worst < 1e-5, "{worst}");
}

#[test]
fn zappa_sl2_circ_is_so2_plus_an2() {
    let x = extract(&LsbSpec::zappa(GroupSpec::sl(2), Factorization::IwasawaKAn));
    // sl2 chart basis (h, E12, E21).  circ is K × (AN)^op, so so(2) is spanned
    // by E12 − E21 and an(2) by −h, −E12 (x ↦ −x identifies an^op with an)
    let cols = vec![vec![r(0), r(1), r(-1)], vec![r(-1), r(0), r(0)], vec![r(0), r(-1), r(0)]];
    let target = catalog::so(2).direct_sum(&catalog::an(2));
    assert_eq!(in_basis(&x.circ, &cols), target.tensor());
    assert_eq!(x.circ.classify(), ClassLabel::Solv);
}

#[test]
fn zappa_circ_is_direct_sum_of_factors() {
    // h3 = ⟨y, z⟩ ⊕ ⟨x⟩ as algebras under circ: abelian
    let x = extract(&LsbSpec::zappa(GroupSpec::Heisenberg3, Factorization::H3NormalSplit));
    assert!(x.circ.is_abelian());
    // a ∘ b = a₁ b a₂ makes circ the product G₁ × G₂^op; su2 ⋉ ℝ³ becomes su2^op ⊕ ℝ³
    let x = extract(&LsbSpec::zappa(GroupSpec::AdjointSemidirectSu2, Factorization::SemidirectSplit));
    assert_eq!(x.circ.tensor(), catalog::su2().negated().direct_sum(&LieAlgebra::abelian(3)).tensor());
}

#[test]
fn gln_prelie_circ_matches_matrix_commutators() {
    for n in 1..=3 {
        let p = postlie::gln_prelie(n).unwrap();
        assert_eq!(p.derive_circ().unwrap().tensor(), gl_commutator(n).as_slice());
    }
}

#[test]
fn so3_and_su2_share_invariants() {
    let so3 = catalog::so(3);
    let su2 = catalog::su2();
    assert_eq!(so3.invariants(), su2.invariants());
    assert_eq!(so3.classify(), ClassLabel::Simp);
}
