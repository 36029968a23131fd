//! Catalog of concrete Lie groups: exact group laws on float data, chart
//! exponentials and logarithms, Iwasawa factorization, and product and
//! semidirect constructors.
//!
//! Element data is the ambient representation of the group: coordinates for
//! the vector-group kinds, row-major matrix entries for `sl`, `so` and `an`,
//! a unit quaternion for `su2`, and the concatenation of factor data for
//! products and semidirect products.  Semidirect data lists the acting
//! factor first: `(h, n)(h', n') = (hh', n · α(h)(n'))`.

pub mod mat;
pub mod numeric;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Rational, RationalMatrix};
use crate::liealg::{catalog, catalog::MatrixFamily, LieAlgebra};

pub use mat::{Iwasawa, Mat};
pub use numeric::{bracket_tensor, GroupLaw};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "snake_case", from = "SpecRepr")]
pub enum GroupSpec {
    Abelian {
        n: usize,
    },
    Heisenberg3,
    Aff1,
    Sl {
        n: usize,
    },
    So {
        n: usize,
    },
    An {
        n: usize,
    },
    Su2,
    /// `ℝ ⋉ H₃` with `t · (x, y, z) = (eᵗx, eᵗy, e²ᵗz)`.
    DilationSemidirectH3,
    /// `H ⋉ H` with `H` acting on itself by conjugation.
    AdSemidirect {
        h: Box<GroupSpec>,
    },
    /// `SU(2) ⋉ ℝ³` through the rotation action.
    AdjointSemidirectSu2,
    Product {
        factors: Vec<GroupSpec>,
    },
    /// `g2` acts on `g1`.
    Semidirect {
        g1: Box<GroupSpec>,
        g2: Box<GroupSpec>,
        action: Action,
    },
}

// Unit variants of an internally tagged enum ignore extra keys, so input
// goes through this mirror where every variant is a struct.
#[derive(Deserialize)]
#[serde(tag = "group", rename_all = "snake_case", deny_unknown_fields)]
enum SpecRepr {
    Abelian { n: usize },
    Heisenberg3 {},
    Aff1 {},
    Sl { n: usize },
    So { n: usize },
    An { n: usize },
    Su2 {},
    DilationSemidirectH3 {},
    AdSemidirect { h: Box<GroupSpec> },
    AdjointSemidirectSu2 {},
    Product { factors: Vec<GroupSpec> },
    Semidirect { g1: Box<GroupSpec>, g2: Box<GroupSpec>, action: Action },
}

impl From<SpecRepr> for GroupSpec {
    fn from(r: SpecRepr) -> Self {
        match r {
            SpecRepr::Abelian { n } => GroupSpec::Abelian { n },
            SpecRepr::Heisenberg3 {} => GroupSpec::Heisenberg3,
            SpecRepr::Aff1 {} => GroupSpec::Aff1,
            SpecRepr::Sl { n } => GroupSpec::Sl { n },
            SpecRepr::So { n } => GroupSpec::So { n },
            SpecRepr::An { n } => GroupSpec::An { n },
            SpecRepr::Su2 {} => GroupSpec::Su2,
            SpecRepr::DilationSemidirectH3 {} => GroupSpec::DilationSemidirectH3,
            SpecRepr::AdSemidirect { h } => GroupSpec::AdSemidirect { h },
            SpecRepr::AdjointSemidirectSu2 {} => GroupSpec::AdjointSemidirectSu2,
            SpecRepr::Product { factors } => GroupSpec::Product { factors },
            SpecRepr::Semidirect { g1, g2, action } => GroupSpec::Semidirect { g1, g2, action },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    /// `ℝ` on `ℝᵏ`: `a · v = eᵃ v`.
    Aff1Exp,
    H3Dilation,
    /// Conjugation of a group on a copy of itself.
    Inner,
    /// Unit quaternions rotating `ℝ³`.
    Su2Adjoint,
    /// `ℝ` on `ℝ²`: `x · (y, z) = (y, z + xy)`.
    HeisenbergShear,
    Trivial,
}

impl Action {
    pub fn as_str(self) -> &'static str {
        match self {
            Action::Aff1Exp => "aff1_exp",
            Action::H3Dilation => "h3_dilation",
            Action::Inner => "inner",
            Action::Su2Adjoint => "su2_adjoint",
            Action::HeisenbergShear => "heisenberg_shear",
            Action::Trivial => "trivial",
        }
    }
}

impl GroupSpec {
    pub fn abelian(n: usize) -> Self {
        GroupSpec::Abelian { n }
    }

    pub fn sl(n: usize) -> Self {
        GroupSpec::Sl { n }
    }

    pub fn product(factors: Vec<GroupSpec>) -> Self {
        GroupSpec::Product { factors }
    }

    pub fn semidirect(g1: GroupSpec, g2: GroupSpec, action: Action) -> Self {
        GroupSpec::Semidirect { g1: Box::new(g1), g2: Box::new(g2), action }
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match self {
            GroupSpec::Abelian { n } => format!("R^{n}"),
            GroupSpec::Heisenberg3 => "H3".into(),
            GroupSpec::Aff1 => "Aff(R)".into(),
            GroupSpec::Sl { n } => format!("SL{n}"),
            GroupSpec::So { n } => format!("SO{n}"),
            GroupSpec::An { n } => format!("AN{n}"),
            GroupSpec::Su2 => "SU2".into(),
            GroupSpec::DilationSemidirectH3 => "R x| H3".into(),
            GroupSpec::AdSemidirect { h } => format!("{0} x| {0}", h.name()),
            GroupSpec::AdjointSemidirectSu2 => "SU2 x| R^3".into(),
            GroupSpec::Product { factors } => factors.iter().map(GroupSpec::name).collect::<Vec<_>>().join(" x "),
            GroupSpec::Semidirect { g1, g2, action } => {
                format!("{} x|[{}] {}", g2.name(), action.as_str(), g1.name())
            }
        }
    }
}

/// Element data; see the module docs for the layout per kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub coords: Vec<f64>,
}

impl GroupElement {
    pub fn new(coords: Vec<f64>) -> Self {
        GroupElement { coords }
    }
}

/// Largest absolute coordinate difference.
pub fn dist_inf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[derive(Clone, Debug)]
enum Kind {
    Abelian(usize),
    Heisenberg3,
    Aff1,
    Matrix(MatrixFamily, usize, Vec<BasisElt>),
    Su2,
    Product(Vec<Group>),
    Semidirect { base: Box<Group>, acting: Box<Group>, action: Action },
}

#[derive(Clone, Copy, Debug)]
enum BasisElt {
    Cartan(usize),
    Elem(usize, usize),
    Skew(usize, usize),
}

/// Same ordering as [`catalog::matrix_basis`].
fn basis_elts(family: MatrixFamily, n: usize) -> Vec<BasisElt> {
    let cartan = (0..n - 1).map(BasisElt::Cartan);
    let pairs = (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
    match family {
        MatrixFamily::Sl => cartan.chain(pairs.filter(|(i, j)| i != j).map(|(i, j)| BasisElt::Elem(i, j))).collect(),
        MatrixFamily::So => pairs.filter(|(i, j)| i < j).map(|(i, j)| BasisElt::Skew(i, j)).collect(),
        MatrixFamily::An => cartan.chain(pairs.filter(|(i, j)| i < j).map(|(i, j)| BasisElt::Elem(i, j))).collect(),
        MatrixFamily::Gl => pairs.map(|(i, j)| BasisElt::Elem(i, j)).collect(),
    }
}

/// A resolved [`GroupSpec`].
#[derive(Clone, Debug)]
pub struct Group {
    spec: GroupSpec,
    kind: Kind,
    dim: usize,
    len: usize,
}

impl Group {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        let small = |n: usize, what: &str| -> Result<()> {
            if n == 2 || n == 3 {
                Ok(())
            } else {
                Err(Error::Invalid(format!("{what}(n) needs n in {{2, 3}}, got {n}")))
            }
        };
        let matrix = |family, n: usize| {
            let b = basis_elts(family, n);
            (b.len(), n * n, Kind::Matrix(family, n, b))
        };
        let (dim, len, kind) = match spec {
            GroupSpec::Abelian { n } => {
                if *n == 0 {
                    return Err(Error::Invalid("abelian(n) needs n >= 1".into()));
                }
                (*n, *n, Kind::Abelian(*n))
            }
            GroupSpec::Heisenberg3 => (3, 3, Kind::Heisenberg3),
            GroupSpec::Aff1 => (2, 2, Kind::Aff1),
            GroupSpec::Sl { n } => {
                small(*n, "sl")?;
                matrix(MatrixFamily::Sl, *n)
            }
            GroupSpec::So { n } => {
                small(*n, "so")?;
                matrix(MatrixFamily::So, *n)
            }
            GroupSpec::An { n } => {
                small(*n, "an")?;
                matrix(MatrixFamily::An, *n)
            }
            GroupSpec::Su2 => (3, 4, Kind::Su2),
            GroupSpec::DilationSemidirectH3 => {
                return Group::aliased(spec, GroupSpec::Heisenberg3, GroupSpec::abelian(1), Action::H3Dilation)
            }
            GroupSpec::AdSemidirect { h } => return Group::aliased(spec, (**h).clone(), (**h).clone(), Action::Inner),
            GroupSpec::AdjointSemidirectSu2 => {
                return Group::aliased(spec, GroupSpec::abelian(3), GroupSpec::Su2, Action::Su2Adjoint)
            }
            GroupSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::Invalid("product needs at least one factor".into()));
                }
                let gs = factors.iter().map(Group::new).collect::<Result<Vec<_>>>()?;
                let dim = gs.iter().map(|g| g.dim).sum();
                let len = gs.iter().map(|g| g.len).sum();
                (dim, len, Kind::Product(gs))
            }
            GroupSpec::Semidirect { g1, g2, action } => {
                let base = Group::new(g1)?;
                let acting = Group::new(g2)?;
                check_action(*action, &acting.spec, &base.spec)?;
                (
                    base.dim + acting.dim,
                    base.len + acting.len,
                    Kind::Semidirect { base: Box::new(base), acting: Box::new(acting), action: *action },
                )
            }
        };
        Ok(Group { spec: spec.clone(), kind, dim, len })
    }

    fn aliased(spec: &GroupSpec, g1: GroupSpec, g2: GroupSpec, action: Action) -> Result<Self> {
        let mut g = Group::new(&GroupSpec::semidirect(g1, g2, action))?;
        g.spec = spec.clone();
        Ok(g)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Chart dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Length of element data.
    pub fn data_len(&self) -> usize {
        self.len
    }

    /// Factors of a product kind.
    pub fn factors(&self) -> Option<&[Group]> {
        match &self.kind {
            Kind::Product(gs) => Some(gs),
            _ => None,
        }
    }

    /// `(base, acting)` of a semidirect kind.
    pub fn semidirect_parts(&self) -> Option<(&Group, &Group, Action)> {
        match &self.kind {
            Kind::Semidirect { base, acting, action } => Some((base, acting, *action)),
            _ => None,
        }
    }

    pub fn matrix_size(&self) -> Option<usize> {
        match &self.kind {
            Kind::Matrix(_, n, _) => Some(*n),
            _ => None,
        }
    }

    pub fn check(&self, a: &GroupElement) -> Result<()> {
        if a.coords.len() != self.len {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, {} expects {}",
                a.coords.len(),
                self.spec.name(),
                self.len
            )));
        }
        Ok(())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(self.id())
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement::new(self.mul(&a.coords, &b.coords)))
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        if let Kind::Matrix(_, n, _) = &self.kind {
            let m = Mat::from_row_major(*n, a.coords.clone())?;
            return Ok(GroupElement::new(m.inverse()?.into_vec()));
        }
        Ok(GroupElement::new(self.inv(&a.coords)))
    }

    pub fn exp_chart(&self, v: &[f64]) -> Result<GroupElement> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!("chart vector of length {} for dimension {}", v.len(), self.dim)));
        }
        Ok(GroupElement::new(self.exp(v)))
    }

    pub fn log_chart(&self, a: &GroupElement) -> Result<Vec<f64>> {
        self.check(a)?;
        self.log(&a.coords)
    }

    /// Uniform chart vector in `[−1, 1]^dim`, exponentiated.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        let v: Vec<f64> = (0..self.dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
        GroupElement::new(self.exp(&v))
    }

    /// Matrix realization for the matrix kinds.
    pub fn matrix(&self, a: &GroupElement) -> Option<Mat> {
        match &self.kind {
            Kind::Matrix(_, n, _) => Mat::from_row_major(*n, a.coords.clone()).ok(),
            _ => None,
        }
    }

    /// `g = k a n` for `SL(2)` and `SL(3)`.
    pub fn iwasawa(&self, g: &GroupElement) -> Result<Iwasawa> {
        self.check(g)?;
        match &self.kind {
            Kind::Matrix(MatrixFamily::Sl, n, _) => {
                let m = Mat::from_row_major(*n, g.coords.clone())?;
                if (m.det() - 1.0).abs() > 1e-8 {
                    return Err(Error::Invalid(format!("determinant {} is not 1", m.det())));
                }
                mat::iwasawa(&m)
            }
            _ => Err(Error::Invalid(format!("Iwasawa factorization needs sl(n), got {}", self.spec.name()))),
        }
    }

    /// Exact Lie algebra in the chart basis.
    pub fn algebra(&self) -> LieAlgebra {
        match &self.kind {
            Kind::Abelian(n) => LieAlgebra::abelian(*n),
            Kind::Heisenberg3 => catalog::heisenberg3(),
            Kind::Aff1 => catalog::aff1(),
            Kind::Matrix(MatrixFamily::Sl, n, _) => catalog::sl(*n),
            Kind::Matrix(MatrixFamily::So, n, _) => catalog::so(*n),
            Kind::Matrix(MatrixFamily::An, n, _) => catalog::an(*n),
            Kind::Matrix(MatrixFamily::Gl, n, _) => catalog::gl(*n),
            Kind::Su2 => catalog::su2(),
            Kind::Product(gs) => {
                let mut it = gs.iter().map(Group::algebra);
                let first = it.next().expect("non-empty product");
                it.fold(first, |acc, g| acc.direct_sum(&g))
            }
            Kind::Semidirect { base, acting, action } => {
                let b = base.algebra();
                let a = acting.algebra();
                let ders = derivations(*action, &a, &b);
                catalog::semidirect(&self.spec.name(), &a, &b, &ders).expect("action is by derivations")
            }
        }
    }

    /// Numeric structure constants from the group commutator.
    pub fn structure_constants_numeric(&self) -> Result<Vec<f64>> {
        bracket_tensor(self, self)
    }

    pub(crate) fn id(&self) -> Vec<f64> {
        match &self.kind {
            Kind::Abelian(n) => vec![0.0; *n],
            Kind::Heisenberg3 => vec![0.0; 3],
            Kind::Aff1 => vec![0.0; 2],
            Kind::Matrix(_, n, _) => Mat::identity(*n).into_vec(),
            Kind::Su2 => vec![1.0, 0.0, 0.0, 0.0],
            Kind::Product(gs) => gs.iter().flat_map(Group::id).collect(),
            Kind::Semidirect { base, acting, .. } => acting.id().into_iter().chain(base.id()).collect(),
        }
    }

    pub(crate) fn exp(&self, v: &[f64]) -> Vec<f64> {
        match &self.kind {
            Kind::Abelian(_) => v.to_vec(),
            Kind::Heisenberg3 => vec![v[0], v[1], v[2] + v[0] * v[1] / 2.0],
            Kind::Aff1 => vec![v[0], v[1] * phi(v[0])],
            Kind::Matrix(_, n, basis) => mat::expm(&algebra_matrix(*n, basis, v)).into_vec(),
            Kind::Su2 => {
                let half = v.iter().map(|x| x * x).sum::<f64>().sqrt() / 2.0;
                // sin(θ)/(2θ) evaluated stably near 0
                let s = if half < 1e-8 { 0.5 * (1.0 - half * half / 6.0) } else { half.sin() / (2.0 * half) };
                vec![half.cos(), v[0] * s, v[1] * s, v[2] * s]
            }
            Kind::Product(gs) => {
                let mut out = Vec::with_capacity(self.len);
                let mut off = 0;
                for g in gs {
                    out.extend(g.exp(&v[off..off + g.dim]));
                    off += g.dim;
                }
                out
            }
            Kind::Semidirect { base, acting, .. } => {
                let mut out = acting.exp(&v[..acting.dim]);
                out.extend(base.exp(&v[acting.dim..]));
                out
            }
        }
    }

    pub(crate) fn log(&self, a: &[f64]) -> Result<Vec<f64>> {
        Ok(match &self.kind {
            Kind::Abelian(_) => a.to_vec(),
            Kind::Heisenberg3 => vec![a[0], a[1], a[2] - a[0] * a[1] / 2.0],
            Kind::Aff1 => vec![a[0], a[1] / phi(a[0])],
            Kind::Matrix(_, n, basis) => {
                let m = Mat::from_row_major(*n, a.to_vec())?;
                let x = mat::logm(&m)?;
                basis.iter().map(|b| matrix_coordinate(&x, *b)).collect()
            }
            Kind::Su2 => {
                let vn = (a[1] * a[1] + a[2] * a[2] + a[3] * a[3]).sqrt();
                if a[0] <= -1.0 + 1e-12 {
                    return Err(Error::LogOutOfRange("quaternion -1 has no principal logarithm".into()));
                }
                let theta = 2.0 * vn.atan2(a[0]);
                let f = if vn < 1e-12 { 2.0 / a[0] } else { theta / vn };
                vec![a[1] * f, a[2] * f, a[3] * f]
            }
            Kind::Product(gs) => {
                let mut out = Vec::with_capacity(self.dim);
                let mut off = 0;
                for g in gs {
                    out.extend(g.log(&a[off..off + g.len])?);
                    off += g.len;
                }
                out
            }
            Kind::Semidirect { base, acting, .. } => {
                let mut out = acting.log(&a[..acting.len])?;
                out.extend(base.log(&a[acting.len..])?);
                out
            }
        })
    }

    /// `α(h)(n)` for a semidirect kind, on raw data.
    fn act(action: Action, acting: &Group, base: &Group, h: &[f64], n: &[f64]) -> Vec<f64> {
        match action {
            Action::Trivial => n.to_vec(),
            Action::Aff1Exp => {
                let s = h[0].exp();
                n.iter().map(|x| x * s).collect()
            }
            Action::H3Dilation => {
                let s = h[0].exp();
                vec![s * n[0], s * n[1], s * s * n[2]]
            }
            Action::HeisenbergShear => vec![n[0], n[1] + h[0] * n[0]],
            Action::Inner => base.mul(&base.mul(h, n), &acting.inv(h)),
            Action::Su2Adjoint => rotate(h, n),
        }
    }
}

impl GroupLaw for Group {
    fn mul(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        match &self.kind {
            Kind::Abelian(_) => a.iter().zip(b).map(|(x, y)| x + y).collect(),
            Kind::Heisenberg3 => vec![a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]],
            Kind::Aff1 => vec![a[0] + b[0], a[1] + a[0].exp() * b[1]],
            Kind::Matrix(_, n, _) => {
                let x = Mat::from_row_major(*n, a.to_vec()).expect("length checked");
                let y = Mat::from_row_major(*n, b.to_vec()).expect("length checked");
                x.mul(&y).into_vec()
            }
            Kind::Su2 => quat_mul(a, b),
            Kind::Product(gs) => {
                let mut out = Vec::with_capacity(self.len);
                let mut off = 0;
                for g in gs {
                    out.extend(g.mul(&a[off..off + g.len], &b[off..off + g.len]));
                    off += g.len;
                }
                out
            }
            Kind::Semidirect { base, acting, action } => {
                let k = acting.len;
                let (h, n) = a.split_at(k);
                let (h2, n2) = b.split_at(k);
                let mut out = acting.mul(h, h2);
                out.extend(base.mul(n, &Group::act(*action, acting, base, h, n2)));
                out
            }
        }
    }

    fn inv(&self, a: &[f64]) -> Vec<f64> {
        match &self.kind {
            Kind::Abelian(_) => a.iter().map(|x| -x).collect(),
            Kind::Heisenberg3 => vec![-a[0], -a[1], -a[2] + a[0] * a[1]],
            Kind::Aff1 => vec![-a[0], -(-a[0]).exp() * a[1]],
            Kind::Matrix(family, n, _) => {
                let m = Mat::from_row_major(*n, a.to_vec()).expect("length checked");
                if *family == MatrixFamily::So {
                    m.transpose().into_vec()
                } else {
                    m.inverse().map(Mat::into_vec).unwrap_or_else(|_| vec![f64::NAN; n * n])
                }
            }
            Kind::Su2 => vec![a[0], -a[1], -a[2], -a[3]],
            Kind::Product(gs) => {
                let mut out = Vec::with_capacity(self.len);
                let mut off = 0;
                for g in gs {
                    out.extend(g.inv(&a[off..off + g.len]));
                    off += g.len;
                }
                out
            }
            Kind::Semidirect { base, acting, action } => {
                let (h, n) = a.split_at(acting.len);
                let hi = acting.inv(h);
                let ni = Group::act(*action, acting, base, &hi, &base.inv(n));
                let mut out = hi;
                out.extend(ni);
                out
            }
        }
    }

    fn exp_raw(&self, v: &[f64]) -> Vec<f64> {
        self.exp(v)
    }

    fn log_raw(&self, a: &[f64]) -> Result<Vec<f64>> {
        self.log(a)
    }

    fn chart_dim(&self) -> usize {
        self.dim
    }
}

fn check_action(action: Action, acting: &GroupSpec, base: &GroupSpec) -> Result<()> {
    let ok = match action {
        Action::Trivial => true,
        Action::Aff1Exp => *acting == GroupSpec::abelian(1) && matches!(base, GroupSpec::Abelian { .. }),
        Action::H3Dilation => *acting == GroupSpec::abelian(1) && *base == GroupSpec::Heisenberg3,
        Action::HeisenbergShear => *acting == GroupSpec::abelian(1) && *base == GroupSpec::abelian(2),
        Action::Inner => acting == base,
        Action::Su2Adjoint => *acting == GroupSpec::Su2 && *base == GroupSpec::abelian(3),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(format!("action {} cannot act from {} on {}", action.as_str(), acting.name(), base.name())))
    }
}

/// Differentiated action: one matrix on the base algebra per acting basis
/// element.
fn derivations(action: Action, acting: &LieAlgebra, base: &LieAlgebra) -> Vec<RationalMatrix> {
    let nb = base.dim();
    match action {
        Action::Trivial => vec![RationalMatrix::zeros(nb, nb); acting.dim()],
        Action::Aff1Exp => vec![RationalMatrix::identity(nb)],
        Action::H3Dilation => vec![RationalMatrix::from_i64(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 2])],
        Action::HeisenbergShear => vec![RationalMatrix::from_i64(2, 2, &[0, 0, 1, 0])],
        Action::Inner | Action::Su2Adjoint => catalog::ad_matrices(acting),
    }
}

/// `(eᵃ − 1)/a`, equal to 1 at 0.
fn phi(a: f64) -> f64 {
    if a.abs() < 1e-12 {
        1.0 + a / 2.0
    } else {
        a.exp_m1() / a
    }
}

fn algebra_matrix(n: usize, basis: &[BasisElt], v: &[f64]) -> Mat {
    let mut x = Mat::zeros(n);
    for (b, c) in basis.iter().zip(v) {
        match *b {
            BasisElt::Cartan(k) => {
                x.set(k, k, x.get(k, k) + c);
                x.set(k + 1, k + 1, x.get(k + 1, k + 1) - c);
            }
            BasisElt::Elem(i, j) => x.set(i, j, x.get(i, j) + c),
            BasisElt::Skew(i, j) => {
                x.set(i, j, x.get(i, j) + c);
                x.set(j, i, x.get(j, i) - c);
            }
        }
    }
    x
}

fn matrix_coordinate(x: &Mat, b: BasisElt) -> f64 {
    match b {
        BasisElt::Cartan(k) => (0..=k).map(|i| x.get(i, i)).sum(),
        BasisElt::Elem(i, j) => x.get(i, j),
        BasisElt::Skew(i, j) => (x.get(i, j) - x.get(j, i)) / 2.0,
    }
}

fn quat_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// `q v q̄` for a unit quaternion `q` and `v ∈ ℝ³`.
fn rotate(q: &[f64], v: &[f64]) -> Vec<f64> {
    let p = quat_mul(&quat_mul(q, &[0.0, v[0], v[1], v[2]]), &[q[0], -q[1], -q[2], -q[3]]);
    p[1..].to_vec()
}

/// Converts a rational matrix to floats.
pub fn to_mat(m: &RationalMatrix) -> Mat {
    Mat::from_row_major(m.rows(), m.entries().iter().map(Rational::to_f64).collect()).expect("square matrix")
}

/// Every catalog kind, used by tests and the demo.
pub fn catalog_specs() -> Vec<GroupSpec> {
    vec![
        GroupSpec::abelian(1),
        GroupSpec::abelian(3),
        GroupSpec::Heisenberg3,
        GroupSpec::Aff1,
        GroupSpec::sl(2),
        GroupSpec::sl(3),
        GroupSpec::So { n: 2 },
        GroupSpec::So { n: 3 },
        GroupSpec::An { n: 2 },
        GroupSpec::An { n: 3 },
        GroupSpec::Su2,
        GroupSpec::DilationSemidirectH3,
        GroupSpec::AdSemidirect { h: Box::new(GroupSpec::Aff1) },
        GroupSpec::AdjointSemidirectSu2,
        GroupSpec::product(vec![GroupSpec::Heisenberg3, GroupSpec::Aff1]),
        GroupSpec::semidirect(GroupSpec::abelian(2), GroupSpec::abelian(1), Action::HeisenbergShear),
    ]
}
