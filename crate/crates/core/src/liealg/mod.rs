//! Finite-dimensional real Lie algebras given by rational structure constants.
//!
//! A [`LieAlgebra`] stores `c[i][j][k]` with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
//! Every invariant computed here (series, Killing form, radical, center,
//! commutant) is exact.

pub mod catalog;
pub(crate) mod json;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{
    axpy, inertia, is_zero_vec, kernel_basis, rank, unit_vec, zero_vec, RVec, Rational, RationalMatrix, Subspace,
};

pub use json::{BracketEntry, CoeffEntry, LieAlgebraJson};

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    c: Vec<Rational>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.name, self.dim)?;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket_basis(i, j);
                if !is_zero_vec(v) {
                    write!(f, " [e{},e{}]={:?}", i + 1, j + 1, v)?;
                }
            }
        }
        Ok(())
    }
}

impl LieAlgebra {
    /// Builds an algebra from a dense `dim³` tensor, checking antisymmetry.
    pub fn new(name: impl Into<String>, dim: usize, c: Vec<Rational>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::Dimension(format!("{} structure constants for dimension {dim}", c.len())));
        }
        let g = LieAlgebra { name: name.into(), dim, c };
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    if g.c[g.idx(i, j, k)] != -g.c[g.idx(j, i, k)].clone() {
                        return Err(Error::Invalid(format!(
                            "structure constants are not antisymmetric at (e{}, e{})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Builds an algebra from brackets `[e_i, e_j]` with `i < j`; the rest is
    /// filled in by antisymmetry.  Missing pairs are zero.
    pub fn from_brackets(name: impl Into<String>, dim: usize, brackets: &[(usize, usize, RVec)]) -> Result<Self> {
        let mut c = vec![Rational::zero(); dim * dim * dim];
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= j || j >= dim {
                return Err(Error::Invalid(format!("bracket entry ({i}, {j}) must satisfy i < j < {dim}")));
            }
            if v.len() != dim {
                return Err(Error::Dimension(format!("bracket value of length {}", v.len())));
            }
            if !seen.insert((i, j)) {
                return Err(Error::Invalid(format!("duplicate bracket entry ({i}, {j})")));
            }
            for (k, x) in v.iter().enumerate() {
                c[(i * dim + j) * dim + k] = x.clone();
                c[(j * dim + i) * dim + k] = -x.clone();
            }
        }
        Ok(LieAlgebra { name: name.into(), dim, c })
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra { name: format!("R^{n}"), dim: n, c: vec![Rational::zero(); n * n * n] }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[self.idx(i, j, k)]
    }

    pub fn tensor(&self) -> &[Rational] {
        &self.c
    }

    /// `[e_i, e_j]` as a coordinate slice.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let start = self.idx(i, j, 0);
        &self.c[start..start + self.dim]
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    /// `[x, y] = Σ x_i y_j [e_i, e_j]`.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<RVec> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::Dimension(format!(
                "bracket of vectors of length {} and {} in dimension {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> RVec {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                if i == j {
                    continue;
                }
                let coeff = xi * yj;
                axpy(&mut out, &coeff, self.bracket_basis(i, j));
            }
        }
        out
    }

    /// Matrix of `ad x`: column `l` holds `[x, e_l]`.
    pub fn ad(&self, x: &[Rational]) -> RationalMatrix {
        let n = self.dim;
        let mut m = RationalMatrix::zeros(n, n);
        for l in 0..n {
            let col = self.bracket_unchecked(x, &unit_vec(n, l));
            for (k, v) in col.into_iter().enumerate() {
                m[(k, l)] = v;
            }
        }
        m
    }

    fn ad_basis(&self, i: usize) -> RationalMatrix {
        let n = self.dim;
        let mut m = RationalMatrix::zeros(n, n);
        for l in 0..n {
            for k in 0..n {
                m[(k, l)] = self.structure_constant(i, l, k).clone();
            }
        }
        m
    }

    /// First basis triple `(i, j, k)` with `i < j < k` on which the Jacobi
    /// identity fails, if any.  Triples with a repeated index satisfy it by
    /// antisymmetry alone.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k));
                    let mut sum = self.bracket_unchecked(self.bracket_basis(i, j), &ek);
                    let t2 = self.bracket_unchecked(self.bracket_basis(j, k), &ei);
                    let t3 = self.bracket_unchecked(self.bracket_basis(k, i), &ej);
                    axpy(&mut sum, &Rational::one(), &t2);
                    axpy(&mut sum, &Rational::one(), &t3);
                    if !is_zero_vec(&sum) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn jacobi_check(&self) -> Result<()> {
        match self.jacobi_violation() {
            None => Ok(()),
            Some((i, j, k)) => Err(Error::NotLie(i, j, k)),
        }
    }

    /// `[A, B]` for subspaces `A`, `B`.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut s = Subspace::zero(self.dim);
        for x in a.basis() {
            for y in b.basis() {
                if s.dim() == self.dim {
                    return s;
                }
                s.insert(self.bracket_unchecked(x, y));
            }
        }
        s
    }

    /// The derived algebra `[g, g]`.
    pub fn derived_algebra(&self) -> Subspace {
        let n = self.dim;
        Subspace::span(
            n,
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| self.bracket_basis(i, j).to_vec()),
        )
    }

    pub fn derived_series(&self) -> Series {
        let mut cur = Subspace::full(self.dim);
        let mut dims = vec![self.dim];
        while cur.dim() > 0 {
            let next = self.bracket_subspaces(&cur, &cur);
            dims.push(next.dim());
            if next.dim() == cur.dim() {
                break;
            }
            cur = next;
        }
        Series { dims }
    }

    pub fn lower_central_series(&self) -> Series {
        let full = Subspace::full(self.dim);
        let mut cur = full.clone();
        let mut dims = vec![self.dim];
        while cur.dim() > 0 {
            let next = self.bracket_subspaces(&full, &cur);
            dims.push(next.dim());
            if next.dim() == cur.dim() {
                break;
            }
            cur = next;
        }
        Series { dims }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().terminates_at_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().terminates_at_zero()
    }

    /// Killing form `K[i][j] = tr(ad e_i ∘ ad e_j)`.
    pub fn killing_form(&self) -> RationalMatrix {
        let n = self.dim;
        let mut k = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                // tr(ad_i ad_j) = Σ_{l,m} c[i][l][m] c[j][m][l]
                let mut t = Rational::zero();
                for l in 0..n {
                    for m in 0..n {
                        let a = self.structure_constant(i, l, m);
                        if a.is_zero() {
                            continue;
                        }
                        let b = self.structure_constant(j, m, l);
                        if !b.is_zero() {
                            t += a * b;
                        }
                    }
                }
                k[(j, i)] = t.clone();
                k[(i, j)] = t;
            }
        }
        k
    }

    /// Killing form evaluated on vectors.
    pub fn killing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let kx = self.killing_form().mul_vec(y).expect("square matrix");
        crate::exactlin::dot(x, &kx)
    }

    /// The solvable radical, as the Killing-orthogonal complement of `[g, g]`.
    pub fn radical(&self) -> Subspace {
        let n = self.dim;
        let derived = self.derived_algebra();
        if derived.dim() == 0 {
            return Subspace::full(n);
        }
        let kf = self.killing_form();
        let rows: Vec<RVec> = derived.basis().iter().map(|y| kf.mul_vec(y).expect("square matrix")).collect();
        let m = RationalMatrix::from_rows(&rows).expect("rows share length");
        Subspace::span(n, kernel_basis(&m))
    }

    /// The center `{x : [x, e_i] = 0 for all i}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // row (i, k), column a: c[a][i][k]
        let mut m = RationalMatrix::zeros(n * n, n);
        for i in 0..n {
            for k in 0..n {
                for a in 0..n {
                    m[(i * n + k, a)] = self.structure_constant(a, i, k).clone();
                }
            }
        }
        Subspace::span(n, kernel_basis(&m))
    }

    /// Dimension of `{M ∈ End(g) : M ad(x) = ad(x) M for all x}`.
    ///
    /// The kernel is refined one basis element at a time: after each step the
    /// unknown `M` is restricted to the commutant found so far, which keeps
    /// the linear systems small.  A fixed generic element is processed first
    /// because its commutant is already small.
    pub fn ad_commutant_dim(&self) -> usize {
        let n = self.dim;
        if n == 0 {
            return 0;
        }
        let generic: RVec = (0..n).map(|i| Rational::from((i as i64 % 7) + 1)).collect();
        let mut ads = vec![self.ad(&generic)];
        ads.extend((0..n).map(|i| self.ad_basis(i)));

        // Columns of `param` span the current candidate space in End(g) (vectorized row-major).
        let mut param: Vec<RVec> = (0..n * n).map(|i| unit_vec(n * n, i)).collect();
        for a in &ads {
            if param.is_empty() {
                break;
            }
            let images: Vec<RVec> = param
                .iter()
                .map(|b| {
                    let bm = RationalMatrix::from_entries(n, n, b.clone()).expect("n*n entries");
                    let lhs = bm.matmul(a).expect("square");
                    let rhs = a.matmul(&bm).expect("square");
                    lhs.sub(&rhs).entries().to_vec()
                })
                .collect();
            if images.iter().all(|v| is_zero_vec(v)) {
                continue;
            }
            let sys = RationalMatrix::from_columns(n * n, &images);
            let kernel = kernel_basis(&sys);
            param = kernel
                .iter()
                .map(|coeffs| {
                    let mut v = zero_vec(n * n);
                    for (c, b) in coeffs.iter().zip(&param) {
                        axpy(&mut v, c, b);
                    }
                    v
                })
                .collect();
        }
        param.len()
    }

    pub fn classify(&self) -> ClassLabel {
        self.classify_detailed().label
    }

    /// Classification with the evidence that produced the label.
    pub fn classify_detailed(&self) -> Classification {
        let derived = self.derived_series();
        let lower = self.lower_central_series();
        let radical_dim = self.radical().dim();
        let mut warnings = Vec::new();
        let mut commutant_dim = None;
        let label = if self.is_abelian() {
            ClassLabel::Ab
        } else if lower.terminates_at_zero() {
            ClassLabel::Nil
        } else if derived.terminates_at_zero() {
            ClassLabel::Solv
        } else if radical_dim == 0 {
            let d = self.ad_commutant_dim();
            commutant_dim = Some(d);
            if d == 1 {
                ClassLabel::Simp
            } else {
                warnings
                    .push(format!("commutant dimension {d}: label assumes every simple ideal is absolutely simple"));
                ClassLabel::Ssimp
            }
        } else {
            ClassLabel::Mixed
        };
        let kf = self.killing_form();
        let (pos, neg, _) = inertia(&kf);
        Classification {
            name: self.name.clone(),
            dim: self.dim,
            label,
            derived_series: derived.dims,
            lower_central_series: lower.dims,
            radical_dim,
            center_dim: self.center().dim(),
            killing_rank: rank(&kf),
            killing_signature: (pos, neg),
            commutant_dim,
            warnings,
        }
    }

    /// The necessary isomorphism invariants used for rigidity comparisons.
    pub fn invariants(&self) -> InvariantBattery {
        let kf = self.killing_form();
        let (pos, neg, _) = inertia(&kf);
        InvariantBattery {
            dim: self.dim,
            derived_dim: self.derived_algebra().dim(),
            derived_series: self.derived_series().dims,
            lower_central_series: self.lower_central_series().dims,
            killing_rank: rank(&kf),
            killing_signature: (pos, neg),
            center_dim: self.center().dim(),
        }
    }

    /// Block-diagonal direct sum `g1 ⊕ g2`; basis of `g1` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let mut c = vec![Rational::zero(); n * n * n];
        for i in 0..n1 {
            for j in 0..n1 {
                for k in 0..n1 {
                    c[(i * n + j) * n + k] = self.structure_constant(i, j, k).clone();
                }
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                for k in 0..n2 {
                    c[((n1 + i) * n + n1 + j) * n + n1 + k] = other.structure_constant(i, j, k).clone();
                }
            }
        }
        LieAlgebra { name: format!("{} + {}", self.name, other.name), dim: n, c }
    }

    /// Same space with bracket `-[x, y]` (the algebra of the opposite group).
    pub fn negated(&self) -> LieAlgebra {
        LieAlgebra { name: format!("{}^op", self.name), dim: self.dim, c: self.c.iter().map(|x| -x).collect() }
    }

    /// Rewrites the structure constants in a new basis whose vectors are the
    /// columns of `p` (expressed in the current basis).
    pub fn change_basis(&self, p: &RationalMatrix) -> Result<LieAlgebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n || rank(p) != n {
            return Err(Error::Invalid("change of basis must be invertible".into()));
        }
        let cols: Vec<RVec> = (0..n).map(|j| p.column(j)).collect();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket_unchecked(&cols[i], &cols[j]);
                brackets.push((i, j, crate::exactlin::solve(p, &b)?));
            }
        }
        LieAlgebra::from_brackets(self.name.clone(), n, &brackets)
    }
}

/// Dimensions of a descending series, starting with `dim g` and ending at the
/// first repeated or zero dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Series {
    pub dims: Vec<usize>,
}

impl Series {
    pub fn terminates_at_zero(&self) -> bool {
        self.dims.last() == Some(&0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassLabel {
    Ab,
    Nil,
    Solv,
    Simp,
    Ssimp,
    Mixed,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 6] =
        [ClassLabel::Ab, ClassLabel::Nil, ClassLabel::Solv, ClassLabel::Simp, ClassLabel::Ssimp, ClassLabel::Mixed];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::Ab => "ab",
            ClassLabel::Nil => "nil",
            ClassLabel::Solv => "solv",
            ClassLabel::Simp => "simp",
            ClassLabel::Ssimp => "ssimp",
            ClassLabel::Mixed => "mixed",
        }
    }

    pub fn is_solvable(self) -> bool {
        matches!(self, ClassLabel::Ab | ClassLabel::Nil | ClassLabel::Solv)
    }

    pub fn is_nilpotent(self) -> bool {
        matches!(self, ClassLabel::Ab | ClassLabel::Nil)
    }

    pub fn is_semisimple(self) -> bool {
        matches!(self, ClassLabel::Simp | ClassLabel::Ssimp)
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ClassLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClassLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown class label {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub name: String,
    pub dim: usize,
    pub label: ClassLabel,
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
    pub radical_dim: usize,
    pub center_dim: usize,
    pub killing_rank: usize,
    pub killing_signature: (usize, usize),
    pub commutant_dim: Option<usize>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantBattery {
    pub dim: usize,
    pub derived_dim: usize,
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
    pub killing_rank: usize,
    pub killing_signature: (usize, usize),
    pub center_dim: usize,
}
