//! Parameter paths with continuous logarithms and predictor-corrector root
//! tracking along them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::NumericCurve;

/// One complex parameter as a function of t in [0, 1]. Logarithms are kept
/// continuous along the path (never re-folded to a principal branch), so
/// fractional powers of a path value are well defined by exp(e * log).
#[derive(Debug, Clone)]
pub enum VarPath {
    Const(Complex64),
    /// exp((1-t) from_log + t to_log).
    LogLinear { from_log: Complex64, to_log: Complex64 },
    /// from + t (to - from).
    Affine { from: Complex64, to: Complex64 },
    /// center + (start - center) e^{2 pi i turns t}.
    Circle { center: Complex64, start: Complex64, turns: f64 },
}

impl VarPath {
    pub fn value(&self, t: f64) -> Complex64 {
        match self {
            VarPath::Const(c) => *c,
            VarPath::LogLinear { from_log, to_log } => {
                (from_log * (1.0 - t) + to_log * t).exp()
            }
            VarPath::Affine { from, to } => from + (to - from) * t,
            VarPath::Circle { center, start, turns } => {
                let phase = Complex64::new(0.0, 2.0 * std::f64::consts::PI * turns * t).exp();
                center + (start - center) * phase
            }
        }
    }

    /// d/dt log value(t) = value'(t) / value(t).
    pub fn dlog(&self, t: f64) -> Complex64 {
        match self {
            VarPath::Const(_) => Complex64::new(0.0, 0.0),
            VarPath::LogLinear { from_log, to_log } => to_log - from_log,
            VarPath::Affine { from, to } => (to - from) / self.value(t),
            VarPath::Circle { center, start, turns } => {
                let phase = Complex64::new(0.0, 2.0 * std::f64::consts::PI * turns * t).exp();
                let dv = (start - center)
                    * phase
                    * Complex64::new(0.0, 2.0 * std::f64::consts::PI * turns);
                dv / self.value(t)
            }
        }
    }

    /// The continuous log of the value, where the path defines one exactly.
    pub fn log_value(&self, t: f64) -> Option<Complex64> {
        match self {
            VarPath::LogLinear { from_log, to_log } => {
                Some(from_log * (1.0 - t) + to_log * t)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrackConfig {
    /// Relative residual accepted for a corrected root.
    pub tol_residual: f64,
    /// Initial / maximal step in t.
    pub h_init: f64,
    pub h_max: f64,
    pub h_min: f64,
}

impl Default for TrackConfig {
    fn default() -> Self {
        TrackConfig { tol_residual: 1e-13, h_init: 0.02, h_max: 0.05, h_min: 1e-10 }
    }
}

fn min_separation(roots: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            m = m.min((roots[i] - roots[j]).norm());
        }
    }
    m
}

fn params_at(paths: &[VarPath], t: f64) -> Vec<Complex64> {
    paths.iter().map(|p| p.value(t)).collect()
}

fn dlogs_at(paths: &[VarPath], t: f64) -> Vec<Complex64> {
    paths.iter().map(|p| p.dlog(t)).collect()
}

/// Track the given subset of roots of `curve` along the parameter paths from
/// t0 to t1 (Euler predictor from the implicit derivative, Newton corrector,
/// steps halved whenever a correction leaves a third of the root-separation
/// basin). Returns the continued roots and the number of accepted steps.
pub fn track(
    curve: &NumericCurve,
    paths: &[VarPath],
    roots: &[Complex64],
    t0: f64,
    t1: f64,
    cfg: &TrackConfig,
) -> Result<(Vec<Complex64>, usize)> {
    if paths.len() != curve.vars.len() {
        return Err(Error::Dimension("one path per curve parameter required".into()));
    }
    let mut zs: Vec<Complex64> = roots.to_vec();
    let mut t = t0;
    let mut h = cfg.h_init * (t1 - t0).signum();
    let mut steps = 0usize;
    while (t1 - t) * (t1 - t0).signum() > 1e-15 {
        if h.abs() < cfg.h_min {
            return Err(Error::Numeric(format!(
                "tracking step underflow near t = {:.6} (discriminant too close)",
                t
            )));
        }
        let mut t2 = t + h;
        if (t2 - t1) * (t1 - t0).signum() > 0.0 {
            t2 = t1;
        }
        let basin = min_separation(&zs) / 3.0;
        let p_now = params_at(paths, t);
        let dl_now = dlogs_at(paths, t);
        let p_next = params_at(paths, t2);
        let zero = vec![Complex64::new(0.0, 0.0); paths.len()];
        let mut proposed = Vec::with_capacity(zs.len());
        let mut ok = true;
        for &z in &zs {
            // Euler predictor: dy/dt = -H_t / H_y.
            let d = curve.derivatives_at(&p_now, &dl_now, z)?;
            if d.yhy.norm() < 1e-280 {
                ok = false;
                break;
            }
            let dy = -d.ht * z / d.yhy;
            let mut y = z + dy * (t2 - t);
            // Newton corrector at t2.
            let mut converged = false;
            for _ in 0..12 {
                let dn = curve.derivatives_at(&p_next, &zero, y)?;
                if dn.h.norm() <= cfg.tol_residual * dn.scale {
                    converged = true;
                    break;
                }
                if dn.yhy.norm() < 1e-280 {
                    break;
                }
                y -= dn.h * y / dn.yhy;
            }
            if !converged || (y - (z + dy * (t2 - t))).norm() > basin {
                ok = false;
                break;
            }
            proposed.push(y);
        }
        // A step that leaves the roots closer than the basin radius has
        // either merged two branches or jumped between them; reject it.
        if ok && (zs.len() < 2 || min_separation(&proposed) > basin) {
            zs = proposed;
            t = t2;
            steps += 1;
            h = (h * 1.5).clamp(-cfg.h_max, cfg.h_max);
        } else {
            h *= 0.5;
        }
    }
    Ok((zs, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{match_points, restricted_numeric_curve};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Roots of y^2 + q y + 1 by the closed formula, ordered (+, -) branch.
    fn quad_roots(q: Complex64) -> [Complex64; 2] {
        let d = (q * q - 4.0).sqrt();
        [(-q + d) / 2.0, (-q - d) / 2.0]
    }

    #[test]
    fn constant_path_is_the_identity() {
        let curve = restricted_numeric_curve(2);
        let q = c(0.3, 0.1);
        let start = curve.roots_at(&[q], 1e-13).unwrap();
        let (end, _) = track(
            &curve,
            &[VarPath::Const(q)],
            &start,
            0.0,
            1.0,
            &TrackConfig::default(),
        )
        .unwrap();
        for (a, b) in start.iter().zip(&end) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn loop_around_the_discriminant_swaps_the_roots() {
        let curve = restricted_numeric_curve(2);
        let q0 = c(2.0, 0.0) + c(1.0, 0.0);
        let start = curve.roots_at(&[q0], 1e-13).unwrap();
        let path = VarPath::Circle { center: c(2.0, 0.0), start: q0, turns: 1.0 };
        let (end, _) =
            track(&curve, &[path], &start, 0.0, 1.0, &TrackConfig::default()).unwrap();
        let perm = match_points(&end, &start, 1e-8).unwrap();
        assert_eq!(perm, vec![1, 0]);
    }

    #[test]
    fn loop_enclosing_no_discriminant_point_is_trivial() {
        let curve = restricted_numeric_curve(2);
        let q0 = c(0.5, 0.4);
        let start = curve.roots_at(&[q0], 1e-13).unwrap();
        let path = VarPath::Circle { center: c(0.3, 0.4), start: q0, turns: 1.0 };
        let (end, _) =
            track(&curve, &[path], &start, 0.0, 1.0, &TrackConfig::default()).unwrap();
        let perm = match_points(&end, &start, 1e-8).unwrap();
        assert_eq!(perm, vec![0, 1]);
    }

    #[test]
    fn segment_tracking_matches_the_quadratic_formula() {
        let curve = restricted_numeric_curve(2);
        // Both endpoints in the first quadrant: q^2 - 4 then never meets the
        // principal-branch cut, so the closed formula continues branchwise.
        let a = c(0.2, 0.3);
        let b = c(1.2, 0.5);
        let start = quad_roots(a);
        let path = VarPath::Affine { from: a, to: b };
        let (end, _) =
            track(&curve, &[path], &start, 0.0, 1.0, &TrackConfig::default()).unwrap();
        // The straight segment stays far from q = +-2, so each closed-form
        // branch continues to itself.
        let expect = quad_roots(b);
        for (e, x) in end.iter().zip(&expect) {
            assert!((e - x).norm() < 1e-9, "{} vs {}", e, x);
        }
    }
}
