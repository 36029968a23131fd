//! Closed-form oracles built from matrices and projections, independent of
//! the finite-difference extraction.

#![allow(dead_code)]

use liebrace::exactlin::{Rational, RationalMatrix};
use liebrace::liealg::catalog::{matrix_basis, MatrixFamily};
use liebrace::liealg::LieAlgebra;

pub fn r(n: i64) -> Rational {
    Rational::from(n)
}

/// `[x, y]` contracted straight from the structure constants.
pub fn bracket(g: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = g.dim();
    let mut out = vec![Rational::zero(); n];
    for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let xy = xi * yj;
            for (k, o) in out.iter_mut().enumerate() {
                *o = &*o + &(&xy * g.structure_constant(i, j, k));
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
}

/// Triangle of a Zappa–Szép brace `a ∘ b = a₁ b a₂`: differentiating
/// `λ_a(b) = a₂⁻¹ b a₂` gives `x ▷ y = −[P x, y]`, where `P` projects onto
/// the second factor.  `proj[i]` is `P e_i`.
pub fn zappa_triangle(g: &LieAlgebra, proj: &[Vec<Rational>]) -> Vec<Rational> {
    let n = g.dim();
    let mut t = Vec::with_capacity(n * n * n);
    for px in proj {
        for j in 0..n {
            t.extend(bracket(g, px, &unit(n, j)).into_iter().map(|c| -c));
        }
    }
    t
}

/// Projection onto the coordinates in `keep`, zero elsewhere.
pub fn coordinate_projection(n: usize, keep: std::ops::Range<usize>) -> Vec<Vec<Rational>> {
    (0..n).map(|i| if keep.contains(&i) { unit(n, i) } else { vec![Rational::zero(); n] }).collect()
}

/// sl(n) chart coordinates of a traceless matrix: Cartan coordinates are
/// partial sums of the diagonal, off-diagonal ones are read directly.
fn sl_coords(n: usize, m: &RationalMatrix) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut acc = Rational::zero();
    for k in 0..n - 1 {
        acc = &acc + &m[(k, k)];
        out.push(acc.clone());
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(m[(i, j)].clone());
            }
        }
    }
    out
}

/// Projection of sl(n) onto the upper-triangular part along so(n):
/// `X = K + U` with `K` skew and `U` upper triangular.
pub fn iwasawa_projection(n: usize) -> Vec<Vec<Rational>> {
    matrix_basis(MatrixFamily::Sl, n)
        .iter()
        .map(|x| {
            let mut u = RationalMatrix::zeros(n, n);
            for i in 0..n {
                u[(i, i)] = x[(i, i)].clone();
                for j in i + 1..n {
                    u[(i, j)] = &x[(i, j)] + &x[(j, i)];
                }
            }
            sl_coords(n, &u)
        })
        .collect()
}

/// Triangle of a semidirect twist on `acting × base` with abelian base: the
/// brace is `λ_{(h,n)}(h', n') = (h', α(h) n')`, so `x ▷ y = (0, D(x_acting) y_base)`
/// where `ders[i]` is the derivation for acting basis vector `i`.
pub fn twist_triangle(acting: usize, base: usize, ders: &[Vec<Vec<i64>>]) -> Vec<Rational> {
    let n = acting + base;
    let mut t = vec![Rational::zero(); n * n * n];
    for (i, d) in ders.iter().enumerate() {
        for j in 0..base {
            for k in 0..base {
                t[(i * n + acting + j) * n + acting + k] = r(d[k][j]);
            }
        }
    }
    t
}

/// Commutator tensor of `M_n` in the elementary basis `E_ab ↦ a*n + b`,
/// from explicit matrix products.
pub fn gl_commutator(n: usize) -> Vec<Rational> {
    let d = n * n;
    let e = |i: usize| {
        let mut m = vec![vec![0i64; n]; n];
        m[i / n][i % n] = 1;
        m
    };
    let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| {
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        c
    };
    let mut t = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            let (ab, ba) = (mul(&e(i), &e(j)), mul(&e(j), &e(i)));
            for k in 0..d {
                t.push(r(ab[k / n][k % n] - ba[k / n][k % n]));
            }
        }
    }
    t
}

/// Tensor of a Lie algebra written in a new basis, contracted by hand:
/// `[p_i, p_j] = Σ c_ij^k p_k`, solved through the inverse of `p`.
pub fn in_basis(g: &LieAlgebra, cols: &[Vec<Rational>]) -> Vec<Rational> {
    let n = g.dim();
    let p = RationalMatrix::from_columns(n, cols);
    let mut t = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let b = bracket(g, &cols[i], &cols[j]);
            t.extend(liebrace::exactlin::solve(&p, &b).expect("basis is invertible"));
        }
    }
    t
}
