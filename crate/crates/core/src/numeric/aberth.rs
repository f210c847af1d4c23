//! Simultaneous polynomial root finding (Aberth-Ehrlich iteration).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Value and derivative of the polynomial with ascending coefficients.
fn horner2(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Magnitude scale of the evaluation, for relative residual tests.
fn eval_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let az = z.norm();
    let mut scale = 0.0;
    let mut pw = 1.0;
    for c in coeffs {
        scale += c.norm() * pw;
        pw *= az;
    }
    scale.max(1e-300)
}

/// All roots of the polynomial with the given ascending coefficients, to a
/// relative residual of `tol` at every root.
pub fn aberth_roots(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Err(Error::Numeric("constant polynomial has no roots".into()));
    }
    let lead = coeffs[n];
    let maxc = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if lead.norm() <= 1e-14 * maxc {
        return Err(Error::Numeric("degenerate leading coefficient".into()));
    }
    // Cauchy-style inclusion radius.
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64) + 0.7123;
            radius * 0.8 * Complex64::new(theta.cos(), theta.sin())
        })
        .collect();
    for _ in 0..400 {
        let mut done = true;
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner2(coeffs, z[i]);
            if p.norm() > tol * eval_scale(coeffs, z[i]) {
                done = false;
            } else {
                continue;
            }
            let w = if dp.norm() > 0.0 { p / dp } else { p };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 1e-280 {
                        s += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() > 1e-280 { w / denom } else { w };
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if done {
            return Ok(z);
        }
        let _ = max_step;
    }
    // Final residual check after the iteration cap.
    for &zi in &z {
        let (p, _) = horner2(coeffs, zi);
        if p.norm() > tol * eval_scale(coeffs, zi) {
            return Err(Error::Numeric("root iteration did not converge".into()));
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn roots_of_a_cubic_with_known_zeros() {
        // (y - 1)(y - 2i)(y + 3) = y^3 + (2 - 2i)y^2 + (-3 - 4i)y + (-6i)... expand directly:
        let r = [c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)];
        let mut coeffs = vec![c(1.0, 0.0)];
        for root in r {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (i, ci) in coeffs.iter().enumerate() {
                next[i] -= ci * root;
                next[i + 1] += ci;
            }
            coeffs = next;
        }
        let mut found = aberth_roots(&coeffs, 1e-13).unwrap();
        for target in r {
            let (pos, d) = found
                .iter()
                .enumerate()
                .map(|(i, z)| (i, (z - target).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            assert!(d < 1e-10, "missing root {}", target);
            found.remove(pos);
        }
    }

    #[test]
    fn degenerate_leading_coefficient_is_reported() {
        let coeffs = [c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        assert!(aberth_roots(&coeffs, 1e-13).is_err());
    }
}
