//! Numeric root finding, path tracking, monodromy, and the cross-chart
//! verification of the open-string wall-crossing identities.

pub mod aberth;
pub mod monodromy;
pub mod path;
pub mod verify;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::fan::{Brane, ExtendedStackyFan};
use crate::gkz::PBasis;

pub use aberth::aberth_roots;
pub use monodromy::{monodromy_check, MonodromyReport};
pub use path::{track, TrackConfig, VarPath};
pub use verify::{verify_octc, CheckReport, VerifyConfig, VerifyReport};

/// A brane-chart curve equation with every parameter numeric except y:
/// terms coeff * prod(var^exp) * y^y_exp over the roster q_1..q_k, x.
#[derive(Debug, Clone)]
pub struct NumericCurve {
    pub vars: Vec<String>,
    /// Position of the open variable x in the roster (absent for the
    /// restricted equation).
    pub xpos: Option<usize>,
    pub terms: Vec<(f64, Vec<i64>, i64)>,
    pub ymin: i64,
    pub ymax: i64,
}

/// Build the chart equation of a brane with its framing bound.
pub fn numeric_curve(
    fan: &ExtendedStackyFan,
    pbasis: &PBasis,
    brane: &Brane,
) -> Result<NumericCurve> {
    let frame = fan.flag_frame(brane.primary)?;
    let k = pbasis.k();
    let sigma = brane.primary.sigma;
    let mut terms = vec![];
    for i in 0..fan.r() {
        let (m, n) = frame.mn[i];
        let s: Vec<Rat> = if fan.cones[sigma].contains(&i) {
            vec![Rat::zero(); k]
        } else {
            pbasis.s_exponents(sigma, i)?
        };
        let mut exps = vec![0i64; k + 1];
        for (a, e) in s.iter().enumerate() {
            if !e.is_integer() {
                return Err(Error::Numeric("chart exponent is not an integer".into()));
            }
            exps[a] = e
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::Numeric("exponent overflow".into()))?;
        }
        exps[k] = m;
        terms.push((1.0, exps, n - m * brane.framing));
    }
    let ymin = terms.iter().map(|t| t.2).min().unwrap();
    let ymax = terms.iter().map(|t| t.2).max().unwrap();
    let mut vars: Vec<String> = (1..=k).map(|a| format!("q{}", a)).collect();
    vars.push("x".into());
    Ok(NumericCurve { vars, xpos: Some(k), terms, ymin, ymax })
}

/// The restricted equation 1 + q_{a_1} y + ... + q_{a_{l-1}} y^{l-1} + y^l
/// over the roster of its l-1 interior-edge parameters.
pub fn restricted_numeric_curve(ell: i64) -> NumericCurve {
    let nv = (ell - 1).max(0) as usize;
    let mut terms = vec![(1.0, vec![0i64; nv], 0i64), (1.0, vec![0i64; nv], ell)];
    for j in 1..ell {
        let mut exps = vec![0i64; nv];
        exps[(j - 1) as usize] = 1;
        terms.push((1.0, exps, j));
    }
    let vars = (1..ell).map(|j| format!("w{}", j)).collect();
    NumericCurve { vars, xpos: None, terms, ymin: 0, ymax: ell }
}

fn cpow(z: Complex64, e: i64) -> Complex64 {
    z.powi(e as i32)
}

impl NumericCurve {
    pub fn ydeg(&self) -> usize {
        (self.ymax - self.ymin) as usize
    }

    fn check_params(&self, params: &[Complex64]) -> Result<()> {
        if params.len() != self.vars.len() {
            return Err(Error::Dimension("parameter count".into()));
        }
        Ok(())
    }

    /// Ascending coefficients of y^{-ymin} H as a polynomial in y.
    pub fn coeffs_at(&self, params: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_params(params)?;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.ydeg() + 1];
        for (c, exps, ye) in &self.terms {
            let mut v = Complex64::new(*c, 0.0);
            for (p, e) in params.iter().zip(exps) {
                v *= cpow(*p, *e);
            }
            coeffs[(ye - self.ymin) as usize] += v;
        }
        Ok(coeffs)
    }

    /// H, y dH/dy, x dH/dx, and the per-term path derivative
    /// dH/dt = sum term * sum_v e_v dlog(v), in one pass.
    pub fn derivatives_at(
        &self,
        params: &[Complex64],
        dlogs: &[Complex64],
        y: Complex64,
    ) -> Result<CurveDerivatives> {
        self.check_params(params)?;
        let mut h = Complex64::new(0.0, 0.0);
        let mut yhy = Complex64::new(0.0, 0.0);
        let mut xhx = Complex64::new(0.0, 0.0);
        let mut ht = Complex64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        for (c, exps, ye) in &self.terms {
            let mut v = Complex64::new(*c, 0.0) * cpow(y, *ye);
            let mut dlog = Complex64::new(0.0, 0.0);
            for ((p, e), dl) in params.iter().zip(exps).zip(dlogs) {
                v *= cpow(*p, *e);
                dlog += (*e as f64) * dl;
            }
            h += v;
            yhy += (*ye as f64) * v;
            if let Some(xp) = self.xpos {
                xhx += (exps[xp] as f64) * v;
            }
            ht += v * dlog;
            scale += v.norm();
        }
        Ok(CurveDerivatives { h, yhy, xhx, ht, scale: scale.max(1e-300) })
    }

    /// All roots in y at the bound parameters.
    pub fn roots_at(&self, params: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
        let coeffs = self.coeffs_at(params)?;
        let maxc = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        if self.ymin != 0 && coeffs[0].norm() <= 1e-14 * maxc {
            return Err(Error::Numeric(
                "degenerate trailing coefficient (a root collides with y = 0)".into(),
            ));
        }
        aberth_roots(&coeffs, tol)
    }

    /// Newton-polish a single root at fixed parameters.
    pub fn refine_root(
        &self,
        params: &[Complex64],
        y0: Complex64,
        tol: f64,
    ) -> Result<Complex64> {
        let zero = vec![Complex64::new(0.0, 0.0); params.len()];
        let mut y = y0;
        for _ in 0..60 {
            let d = self.derivatives_at(params, &zero, y)?;
            if d.h.norm() <= tol * d.scale {
                return Ok(y);
            }
            if d.yhy.norm() < 1e-280 {
                break;
            }
            y -= d.h * y / d.yhy;
        }
        Err(Error::Numeric("root refinement did not converge".into()))
    }

    /// x dlog y = -(x H_x)/(y H_y) on a branch.
    pub fn x_dlog_y(&self, params: &[Complex64], y: Complex64) -> Result<Complex64> {
        let zero = vec![Complex64::new(0.0, 0.0); params.len()];
        let d = self.derivatives_at(params, &zero, y)?;
        if d.yhy.norm() < 1e-280 {
            return Err(Error::Numeric("vanishing y-derivative on the branch".into()));
        }
        Ok(-d.xhx / d.yhy)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CurveDerivatives {
    pub h: Complex64,
    pub yhy: Complex64,
    pub xhx: Complex64,
    pub ht: Complex64,
    pub scale: f64,
}

/// Injective nearest-neighbor matching: result[i] = index of the target
/// closest to points[i]. Fails when ambiguous (second candidate within 10x)
/// or when the best match exceeds `tol`.
pub fn match_points(
    points: &[Complex64],
    targets: &[Complex64],
    tol: f64,
) -> Result<Vec<usize>> {
    if points.len() > targets.len() {
        return Err(Error::Numeric("more tracked points than match targets".into()));
    }
    let mut used = vec![false; targets.len()];
    let mut out = vec![0usize; points.len()];
    for (i, p) in points.iter().enumerate() {
        let mut dists: Vec<(usize, f64)> = targets
            .iter()
            .enumerate()
            .map(|(j, t)| (j, (p - t).norm()))
            .collect();
        dists.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (j, d0) = dists[0];
        if d0 > tol {
            return Err(Error::Numeric(format!(
                "no match within tolerance: distance {:.3e} > {:.3e}",
                d0, tol
            )));
        }
        if dists.len() > 1 && dists[1].1 <= 10.0 * d0 {
            return Err(Error::Numeric(format!(
                "ambiguous match: distances {:.3e} and {:.3e}",
                d0, dists[1].1
            )));
        }
        if used[j] {
            return Err(Error::Numeric("two points matched the same target".into()));
        }
        used[j] = true;
        out[i] = j;
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gkz;

    #[test]
    fn smooth_chart_root_is_linear() {
        let fan = fixtures::c3();
        let g = gkz::gkz_data(&fan).unwrap();
        let pb = gkz::select_pbasis(&fan, &g, None).unwrap();
        let brane = fan.make_brane((1, 2), 0, None).unwrap();
        let c = numeric_curve(&fan, &pb, &brane).unwrap();
        let roots = c.roots_at(&[Complex64::new(0.1, 0.0)], 1e-13).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - Complex64::new(-1.1, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn transverse_a1_roots_match_the_quadratic_formula() {
        let fan = fixtures::a1();
        let g = gkz::gkz_data(&fan).unwrap();
        let pb = gkz::select_pbasis(&fan, &g, None).unwrap();
        let brane = fan.make_brane((2, 3), 0, None).unwrap();
        let c = numeric_curve(&fan, &pb, &brane).unwrap();
        let q = Complex64::new(0.3, 0.0);
        let x = Complex64::new(0.05, 0.0);
        let roots = c.roots_at(&[q, x], 1e-13).unwrap();
        // y^2 + q y + (1 + x) = 0.
        let disc = (q * q - 4.0 * (1.0 + x)).sqrt();
        let expect = [(-q + disc) / 2.0, (-q - disc) / 2.0];
        let perm = match_points(&expect, &roots, 1e-11).unwrap();
        assert_ne!(perm[0], perm[1]);
    }

    #[test]
    fn restricted_equation_at_origin() {
        let c = restricted_numeric_curve(2);
        let roots = c.roots_at(&[Complex64::new(0.0, 0.0)], 1e-13).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let perm = match_points(&[i, -i], &roots, 1e-12).unwrap();
        assert_ne!(perm[0], perm[1]);
    }
}
