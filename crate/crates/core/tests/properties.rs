mod common;

use common::r;
use liebrace::exactlin::{kernel_basis, rank, solve, span_closure, Rational, RationalMatrix};
use liebrace::liealg::{catalog, ClassLabel, LieAlgebra};
use liebrace::lsb::{self, Factorization, LsbSpec};
use liebrace::matgrp::{catalog_specs, dist_inf, Action, Group, GroupElement, GroupSpec};
use liebrace::postlie::{ObstructionRule, PostLieStructure};
use liebrace::tablerepro::witness;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d))
}

fn matrix(max: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(rational(), rows * cols)
            .prop_map(move |e| RationalMatrix::from_entries(rows, cols, e).unwrap())
    })
}

fn seed_algebras() -> Vec<LieAlgebra> {
    vec![
        LieAlgebra::abelian(2),
        catalog::heisenberg3(),
        catalog::aff1(),
        catalog::sl(2),
        catalog::su2(),
        catalog::euclidean3(),
        catalog::an(3),
        catalog::aff1().direct_sum(&catalog::sl(2)),
    ]
}

/// A catalog algebra written in the basis of columns of `L·U`, with `L`
/// and `U` unipotent, so the change of basis is always invertible.
fn algebra_pair() -> impl Strategy<Value = (LieAlgebra, LieAlgebra)> {
    (0..seed_algebras().len()).prop_flat_map(|idx| {
        let n = seed_algebras()[idx].dim();
        prop::collection::vec(-2i64..=2, n * n).prop_map(move |e| {
            let g = seed_algebras().swap_remove(idx);
            let mut l = RationalMatrix::identity(n);
            let mut u = RationalMatrix::identity(n);
            for i in 0..n {
                for j in 0..i {
                    l[(i, j)] = r(e[i * n + j]);
                    u[(j, i)] = r(e[j * n + i]);
                }
            }
            let h = g.change_basis(&l.matmul(&u).unwrap()).unwrap();
            (g, h)
        })
    })
}

fn algebra() -> impl Strategy<Value = LieAlgebra> {
    algebra_pair().prop_map(|(_, h)| h)
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

fn sparse_triangle(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((0..n * n * n, -1i64..=1), 0..4).prop_map(move |entries| {
        let mut t = vec![Rational::zero(); n * n * n];
        for (k, v) in entries {
            t[k] = r(v);
        }
        t
    })
}

fn postlie_dot() -> impl Strategy<Value = LieAlgebra> {
    prop_oneof![
        Just(LieAlgebra::abelian(2)),
        Just(LieAlgebra::abelian(3)),
        Just(catalog::aff1()),
        Just(catalog::heisenberg3()),
    ]
}

fn postlie() -> impl Strategy<Value = PostLieStructure> {
    postlie_dot().prop_flat_map(|g| {
        let n = g.dim();
        sparse_triangle(n).prop_map(move |t| PostLieStructure::new(g.clone(), t).unwrap())
    })
}

fn pad(dims: &[usize], len: usize) -> Vec<usize> {
    let last = *dims.last().unwrap();
    (0..len).map(|i| dims.get(i).copied().unwrap_or(last)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix(5)) {
        prop_assert_eq!(rank(&m) + kernel_basis(&m).len(), m.cols());
        for v in kernel_basis(&m) {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn solve_substitutes_exactly(m in matrix(4), seed in vector(4)) {
        let x: Vec<Rational> = seed[..m.cols()].to_vec();
        let b = m.mul_vec(&x).unwrap();
        let sol = solve(&m, &b).unwrap();
        prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
    }

    #[test]
    fn span_closure_ignores_order(vs in prop::collection::vec(vector(3), 1..4), rot in 0usize..4) {
        let h3 = catalog::heisenberg3();
        let ext = |a: &[Rational], b: &[Rational]| h3.bracket(a, b).unwrap();
        let a = span_closure(3, &vs, ext);
        let mut ws = vs.clone();
        ws.rotate_left(rot % vs.len());
        ws.reverse();
        let b = span_closure(3, &ws, ext);
        prop_assert!(a.contains_subspace(&b) && b.contains_subspace(&a));
    }

    #[test]
    fn classification_survives_change_of_basis((g, h) in algebra_pair()) {
        prop_assert!(h.jacobi_violation().is_none());
        prop_assert_eq!(g.invariants(), h.invariants());
        prop_assert_eq!(g.classify(), h.classify());
    }

    #[test]
    fn derived_series_below_lower_central(g in algebra()) {
        let d = g.derived_series().dims;
        let l = g.lower_central_series().dims;
        let len = d.len().max(l.len());
        for (a, b) in pad(&d, len).into_iter().zip(pad(&l, len)) {
            prop_assert!(a <= b);
        }
    }

    #[test]
    fn solvable_labels_exclude_nilpotent(g in algebra()) {
        let label = g.classify();
        if label == ClassLabel::Solv {
            prop_assert!(!g.is_nilpotent());
        }
        prop_assert_eq!(label.is_solvable(), g.is_solvable());
    }

    #[test]
    fn killing_is_ad_invariant(g in algebra(), x in vector(6), y in vector(6), z in vector(6)) {
        let n = g.dim();
        let (x, y, z) = (&x[..n], &y[..n], &z[..n]);
        let xy = g.bracket(x, y).unwrap();
        let xz = g.bracket(x, z).unwrap();
        prop_assert!((g.killing(&xy, z) + g.killing(y, &xz)).is_zero());
    }

    #[test]
    fn direct_sum_adds_derived_dims(a in algebra(), b in algebra()) {
        let s = a.direct_sum(&b);
        let (da, db, ds) = (a.derived_series().dims, b.derived_series().dims, s.derived_series().dims);
        let len = da.len().max(db.len()).max(ds.len());
        let sum: Vec<usize> = pad(&da, len).iter().zip(pad(&db, len)).map(|(x, y)| x + y).collect();
        prop_assert_eq!(pad(&ds, len), sum);
    }

    #[test]
    fn circ_jacobi_failure_implies_axiom_failure(p in postlie()) {
        if p.derive_circ().is_err() {
            prop_assert!(p.check_axioms().unwrap().is_some());
        }
    }

    #[test]
    fn prelie_iff_axioms_when_dot_is_zero(n in 2usize..=3, t in sparse_triangle(3)) {
        let t = if n == 3 { t } else { sparse_triangle_restrict(&t) };
        let p = PostLieStructure::new(LieAlgebra::abelian(n), t).unwrap();
        prop_assert_eq!(p.check_axioms().unwrap().is_none(), p.check_prelie().unwrap().is_none());
    }

    #[test]
    fn s2_silent_on_solvable_circ(p in postlie()) {
        if p.check_axioms().unwrap().is_none() {
            let circ = p.derive_circ().unwrap();
            if circ.classify().is_solvable() {
                let s2 = p.obstruction_scan().unwrap().into_iter().find(|r| r.rule == ObstructionRule::S2).unwrap();
                prop_assert!(!s2.fired);
            }
        }
    }

    #[test]
    fn chart_log_inverts_exp(idx in 0usize..64, v in prop::collection::vec(-1.0f64..=1.0, 16)) {
        let specs = catalog_specs();
        let g = Group::new(&specs[idx % specs.len()]).unwrap();
        let v = &v[..g.dim()];
        let back = g.log_chart(&g.exp_chart(v).unwrap()).unwrap();
        prop_assert!(dist_inf(&back, v) < 1e-9, "{}: {:?} vs {:?}", g.spec().name(), back, v);
    }

    #[test]
    fn trivial_action_semidirect_is_product(seed in any::<u64>()) {
        let (base, acting) = (GroupSpec::Heisenberg3, GroupSpec::Aff1);
        let semi = Group::new(&GroupSpec::semidirect(base.clone(), acting.clone(), Action::Trivial)).unwrap();
        let prod = Group::new(&GroupSpec::product(vec![acting, base])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (prod.sample(&mut rng), prod.sample(&mut rng));
        let d = dist_inf(&semi.multiply(&a, &b).unwrap().coords, &prod.multiply(&a, &b).unwrap().coords);
        prop_assert!(d < 1e-14);
    }

    #[test]
    fn lambda_fixes_identity(cell in 0usize..36, seed in any::<u64>()) {
        let dot = ClassLabel::ALL[cell / 6];
        let circ = ClassLabel::ALL[cell % 6];
        if let Some(spec) = witness(dot, circ) {
            let inst = lsb::realize(&spec).unwrap();
            let e = inst.dot().identity();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = inst.dot().sample(&mut rng);
            prop_assert!(dist_inf(&inst.lambda(&e, &a).unwrap().coords, &a.coords) < 1e-12);
            prop_assert!(dist_inf(&inst.lambda(&a, &e).unwrap().coords, &e.coords) < 1e-12);
        }
    }

    #[test]
    fn product_residual_is_max_of_factor_residuals(seed in any::<u64>()) {
        let left = LsbSpec::twist(GroupSpec::abelian(1), GroupSpec::abelian(1), Action::Aff1Exp);
        let right = LsbSpec::zappa(GroupSpec::sl(2), Factorization::IwasawaKAn);
        let prod = lsb::realize(&LsbSpec::product(vec![left.clone(), right.clone()])).unwrap();
        let parts = [lsb::realize(&left).unwrap(), lsb::realize(&right).unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triple: Vec<GroupElement> = (0..3).map(|_| prod.dot().sample(&mut rng)).collect();
        let whole = residual(&prod, &triple[0], &triple[1], &triple[2]);
        let mut off = 0;
        let mut worst = 0.0f64;
        for p in &parts {
            let k = p.dot().data_len();
            let cut = |x: &GroupElement| GroupElement::new(x.coords[off..off + k].to_vec());
            worst = worst.max(residual(p, &cut(&triple[0]), &cut(&triple[1]), &cut(&triple[2])));
            off += k;
        }
        prop_assert_eq!(whole, worst);
    }
}

fn sparse_triangle_restrict(t: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(8);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out.push(t[(i * 3 + j) * 3 + k].clone());
            }
        }
    }
    out
}

/// `‖a ∘ (b·c) − (a∘b)·a⁻¹·(a∘c)‖_∞`, written out with the public operations.
fn residual(inst: &lsb::LsbInstance, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> f64 {
    let g = inst.dot();
    let lhs = inst.circ(a, &g.multiply(b, c).unwrap()).unwrap();
    let ab = inst.circ(a, b).unwrap();
    let ac = inst.circ(a, c).unwrap();
    let rhs = g.multiply(&g.multiply(&ab, &g.inverse(a).unwrap()).unwrap(), &ac).unwrap();
    dist_inf(&lhs.coords, &rhs.coords)
}

#[test]
fn associativity_on_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in catalog_specs() {
        let g = Group::new(&spec).unwrap();
        for _ in 0..100 {
            let (a, b, c) = (g.sample(&mut rng), g.sample(&mut rng), g.sample(&mut rng));
            let l = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
            let r = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
            assert!(dist_inf(&l.coords, &r.coords) < 1e-9, "{}", spec.name());
        }
    }
}

#[test]
fn radical_zero_iff_killing_nonsingular() {
    for g in seed_algebras().into_iter().chain([catalog::sl(3), catalog::so(3), catalog::gl(2)]) {
        let nonsingular = rank(&g.killing_form()) == g.dim();
        assert_eq!(g.radical().dim() == 0, nonsingular, "{}", g.name());
    }
}

#[test]
fn precedence_on_catalog() {
    let expect = [
        (LieAlgebra::abelian(2), ClassLabel::Ab),
        (catalog::heisenberg3(), ClassLabel::Nil),
        (catalog::aff1(), ClassLabel::Solv),
        (catalog::an(3), ClassLabel::Solv),
        (catalog::sl(2), ClassLabel::Simp),
        (catalog::sl(3), ClassLabel::Simp),
        (catalog::so(3), ClassLabel::Simp),
        (catalog::su2(), ClassLabel::Simp),
        (catalog::sl(2).direct_sum(&catalog::su2()), ClassLabel::Ssimp),
        (catalog::euclidean3(), ClassLabel::Mixed),
        (catalog::gl(2), ClassLabel::Mixed),
    ];
    for (g, label) in expect {
        assert_eq!(g.classify(), label, "{}", g.name());
    }
}
