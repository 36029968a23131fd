//! Finite-difference differentiation of group laws at the identity.

use crate::error::Result;
use crate::par::par_map;

/// Step for every central difference.
pub const STEP: f64 = 1e-3;

/// A group law on raw element data, together with the chart used to read
/// off tangent vectors.
pub trait GroupLaw: Sync {
    fn mul(&self, a: &[f64], b: &[f64]) -> Vec<f64>;
    fn inv(&self, a: &[f64]) -> Vec<f64>;
    fn exp_raw(&self, v: &[f64]) -> Vec<f64>;
    fn log_raw(&self, a: &[f64]) -> Result<Vec<f64>>;
    fn chart_dim(&self) -> usize;
}

/// `t e_i` in chart coordinates.
pub fn basis_curve(chart: &dyn GroupLaw, i: usize, t: f64) -> Vec<f64> {
    let mut v = vec![0.0; chart.chart_dim()];
    v[i] = t;
    chart.exp_raw(&v)
}

/// `f''(0)/2` for a function whose odd Taylor terms are discarded:
/// `g(h) = (f(h) + f(−h)) / 2h²`, then one Richardson level.
pub fn even_second_order<F>(f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<Vec<f64>>,
{
    let g = |h: f64| -> Result<Vec<f64>> {
        let (p, m) = (f(h)?, f(-h)?);
        Ok(p.iter().zip(&m).map(|(a, b)| (a + b) / (2.0 * h * h)).collect())
    };
    let (full, half) = (g(STEP)?, g(STEP / 2.0)?);
    Ok(half.iter().zip(&full).map(|(h2, h1)| (4.0 * h2 - h1) / 3.0).collect())
}

/// `∂²F/∂s∂t` at the origin by the four-point stencil plus one Richardson
/// level.
pub fn mixed_partial<F>(f: F) -> Result<Vec<f64>>
where
    F: Fn(f64, f64) -> Result<Vec<f64>>,
{
    let d = |h: f64| -> Result<Vec<f64>> {
        let (pp, pm, mp, mm) = (f(h, h)?, f(h, -h)?, f(-h, h)?, f(-h, -h)?);
        Ok((0..pp.len()).map(|k| (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * h * h)).collect())
    };
    let (full, half) = (d(STEP)?, d(STEP / 2.0)?);
    Ok(half.iter().zip(&full).map(|(h2, h1)| (4.0 * h2 - h1) / 3.0).collect())
}

/// Structure constants of `law`, in the layout `(i*n + j)*n + k`, from the
/// second-order term of `log(γᵢ γⱼ γᵢ⁻¹ γⱼ⁻¹)` along the chart's coordinate
/// curves.
pub fn bracket_tensor(law: &dyn GroupLaw, chart: &dyn GroupLaw) -> Result<Vec<f64>> {
    let n = chart.chart_dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let columns = par_map(&pairs, |&(i, j)| {
        even_second_order(|t| {
            let a = basis_curve(chart, i, t);
            let b = basis_curve(chart, j, t);
            let c = law.mul(&law.mul(&a, &b), &law.mul(&law.inv(&a), &law.inv(&b)));
            chart.log_raw(&c)
        })
    });
    let mut out = vec![0.0; n * n * n];
    for (&(i, j), col) in pairs.iter().zip(columns) {
        let col = col?;
        for k in 0..n {
            out[(i * n + j) * n + k] = col[k];
            out[(j * n + i) * n + k] = -col[k];
        }
    }
    Ok(out)
}
