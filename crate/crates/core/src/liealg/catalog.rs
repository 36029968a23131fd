//! Closed-form structure constants for the algebras the group catalog uses.
//!
//! Matrix algebras are computed from explicit basis matrices, so the basis
//! ordering here is the one the group charts use:
//!
//! * `sl(n)`: `H_k = E_kk - E_{k+1,k+1}` for `k < n-1`, then every `E_ij`
//!   with `i != j` in row-major order;
//! * `so(n)`: `E_ij - E_ji` for `i < j`, row-major;
//! * `an(n)`: the `H_k`, then `E_ij` for `i < j`;
//! * `gl(n)`: `E_ab` at index `a*n + b`.

use crate::error::Result;
use crate::exactlin::{solve, unit_vec, zero_vec, RVec, Rational, RationalMatrix};

use super::LieAlgebra;

/// Which family of matrix basis to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFamily {
    Sl,
    So,
    An,
    Gl,
}

fn elementary(n: usize, i: usize, j: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    m[(i, j)] = Rational::one();
    m
}

/// Basis matrices of the family, in the documented order.
pub fn matrix_basis(family: MatrixFamily, n: usize) -> Vec<RationalMatrix> {
    let cartan = || {
        (0..n.saturating_sub(1)).map(move |k| {
            let mut m = RationalMatrix::zeros(n, n);
            m[(k, k)] = Rational::one();
            m[(k + 1, k + 1)] = Rational::from(-1);
            m
        })
    };
    match family {
        MatrixFamily::Sl => cartan()
            .chain(
                (0..n)
                    .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                    .map(|(i, j)| elementary(n, i, j)),
            )
            .collect(),
        MatrixFamily::So => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| elementary(n, i, j).sub(&elementary(n, j, i)))
            .collect(),
        MatrixFamily::An => cartan()
            .chain((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| elementary(n, i, j)))
            .collect(),
        MatrixFamily::Gl => {
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| elementary(n, a, b)).collect()
        }
    }
}

/// Structure constants of the span of `basis` under the matrix commutator.
pub fn from_matrix_basis(name: &str, basis: &[RationalMatrix]) -> Result<LieAlgebra> {
    let d = basis.len();
    let n = basis.first().map_or(0, RationalMatrix::rows);
    let columns: Vec<RVec> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let embed = RationalMatrix::from_columns(n * n, &columns);
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let ab = basis[i].matmul(&basis[j])?;
            let ba = basis[j].matmul(&basis[i])?;
            let comm = ab.sub(&ba);
            brackets.push((i, j, solve(&embed, comm.entries())?));
        }
    }
    LieAlgebra::from_brackets(name, d, &brackets)
}

fn matrix_algebra(name: &str, family: MatrixFamily, n: usize) -> LieAlgebra {
    from_matrix_basis(name, &matrix_basis(family, n)).expect("matrix basis closes under commutator")
}

pub fn sl(n: usize) -> LieAlgebra {
    matrix_algebra(&format!("sl{n}"), MatrixFamily::Sl, n)
}

pub fn so(n: usize) -> LieAlgebra {
    matrix_algebra(&format!("so{n}"), MatrixFamily::So, n)
}

pub fn an(n: usize) -> LieAlgebra {
    matrix_algebra(&format!("an{n}"), MatrixFamily::An, n)
}

pub fn gl(n: usize) -> LieAlgebra {
    matrix_algebra(&format!("gl{n}"), MatrixFamily::Gl, n)
}

/// `[e1, e2] = e3`.
pub fn heisenberg3() -> LieAlgebra {
    LieAlgebra::from_brackets("h3", 3, &[(0, 1, unit_vec(3, 2))]).expect("valid brackets")
}

/// Lie algebra of the affine group of the line: `[e1, e2] = e2`.
pub fn aff1() -> LieAlgebra {
    LieAlgebra::from_brackets("aff1", 2, &[(0, 1, unit_vec(2, 1))]).expect("valid brackets")
}

/// `[e_a, e_b] = ε_abc e_c` (su(2) in the basis `i/2, j/2, k/2`).
pub fn su2() -> LieAlgebra {
    LieAlgebra::from_brackets("su2", 3, &[(0, 1, unit_vec(3, 2)), (1, 2, unit_vec(3, 0)), (0, 2, neg(unit_vec(3, 1)))])
        .expect("valid brackets")
}

fn neg(v: RVec) -> RVec {
    v.into_iter().map(|x| -x).collect()
}

/// Semidirect sum `acting ⋉ base`: the basis lists `acting` first, and
/// `[a_i, b_j] = derivations[i] · b_j`.
pub fn semidirect(
    name: &str,
    acting: &LieAlgebra,
    base: &LieAlgebra,
    derivations: &[RationalMatrix],
) -> Result<LieAlgebra> {
    let (na, nb) = (acting.dim(), base.dim());
    let n = na + nb;
    if derivations.len() != na {
        return Err(crate::error::Error::Dimension(format!(
            "{} derivation matrices for an acting algebra of dimension {na}",
            derivations.len()
        )));
    }
    let mut brackets = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in i + 1..n {
            let mut v = zero_vec(n);
            if j < na {
                for (k, x) in acting.bracket_basis(i, j).iter().enumerate() {
                    v[k] = x.clone();
                }
            } else if i >= na {
                for (k, x) in base.bracket_basis(i - na, j - na).iter().enumerate() {
                    v[na + k] = x.clone();
                }
            } else {
                let d = &derivations[i];
                for k in 0..nb {
                    v[na + k] = d[(k, j - na)].clone();
                }
            }
            brackets.push((i, j, v));
        }
    }
    let g = LieAlgebra::from_brackets(name, n, &brackets)?;
    g.jacobi_check()?;
    Ok(g)
}

/// Matrices of `ad e_i` for every basis element.
pub fn ad_matrices(g: &LieAlgebra) -> Vec<RationalMatrix> {
    (0..g.dim()).map(|i| g.ad(&unit_vec(g.dim(), i))).collect()
}

/// `su(2) ⋉ ℝ³` through the adjoint action: the Euclidean algebra `e(3)`.
pub fn euclidean3() -> LieAlgebra {
    let s = su2();
    semidirect("su2 x| R3", &s, &LieAlgebra::abelian(3), &ad_matrices(&s)).expect("adjoint action")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_brackets_in_hef_basis() {
        let g = sl(2);
        // basis [H, E, F]
        let two = Rational::from(2);
        assert_eq!(g.bracket_basis(0, 1), &[Rational::zero(), two.clone(), Rational::zero()]);
        assert_eq!(g.bracket_basis(0, 2), &[Rational::zero(), Rational::zero(), -two]);
        assert_eq!(g.bracket_basis(1, 2), unit_vec(3, 0).as_slice());
    }

    #[test]
    fn catalog_algebras_satisfy_jacobi() {
        for g in [sl(2), sl(3), so(2), so(3), an(2), an(3), gl(2), gl(3), heisenberg3(), aff1(), su2(), euclidean3()] {
            assert!(g.jacobi_check().is_ok(), "{}", g.name());
        }
        assert_eq!(sl(3).dim(), 8);
        assert_eq!(an(3).dim(), 5);
    }

    #[test]
    fn so3_and_su2_agree_up_to_sign_of_basis() {
        // so(3) basis (E01-E10, E02-E20, E12-E21) is isomorphic to su(2)
        assert_eq!(so(3).invariants(), su2().invariants());
    }
}
