//! Monodromy of the restricted mirror-curve equation: discriminant points in
//! one active parameter, loop permutations, and the generated group.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::aberth::aberth_roots;
use crate::numeric::path::{track, TrackConfig, VarPath};
use crate::numeric::{match_points, NumericCurve};

#[derive(Debug, Clone)]
pub struct MonodromyReport {
    pub disc_points: Vec<Complex64>,
    /// One permutation per discriminant loop, acting on the base-root labels.
    pub generators: Vec<Vec<usize>>,
    /// The whole generated group, each element with a word in the generators.
    pub group: Vec<(Vec<usize>, Vec<usize>)>,
    pub transitive: bool,
}

impl MonodromyReport {
    /// A word in the loop generators realizing the target permutation.
    pub fn express(&self, target: &[usize]) -> Option<Vec<usize>> {
        self.group
            .iter()
            .find(|(p, _)| p.as_slice() == target)
            .map(|(_, w)| w.clone())
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a then b): i -> b[a[i]].
    a.iter().map(|&ai| b[ai]).collect()
}

/// Discriminant values of the active parameter: zeros of the discriminant of
/// the y-polynomial, recovered by sampling disc(w) on a circle and exact
/// trigonometric interpolation of its polynomial coefficients.
pub fn discriminant_points(
    curve: &NumericCurve,
    base: &[Complex64],
    active: usize,
    tol: f64,
) -> Result<Vec<Complex64>> {
    let n = curve.ydeg();
    let wdeg: i64 = curve
        .terms
        .iter()
        .map(|(_, exps, _)| exps[active])
        .max()
        .unwrap_or(0);
    let bound = ((2 * n).saturating_sub(1) as i64 * wdeg.max(1)) as usize + 1;
    let m = bound + 1;
    let radius = 3.1547;
    let mut samples = vec![];
    for s in 0..m {
        let theta = 2.0 * std::f64::consts::PI * (s as f64) / (m as f64) + 0.2391;
        let w = radius * Complex64::new(theta.cos(), theta.sin());
        let mut params = base.to_vec();
        params[active] = w;
        let coeffs = curve.coeffs_at(&params)?;
        let lead = coeffs[coeffs.len() - 1];
        let roots = aberth_roots(&coeffs, tol)?;
        // disc = lead^{2n-2} prod_{i<j} (r_i - r_j)^2 (up to the sign
        // convention, which does not move the zeros).
        let mut d = lead.powi((2 * n as i32) - 2);
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                let df = roots[i] - roots[j];
                d *= df * df;
            }
        }
        samples.push((w, d));
    }
    // Inverse discrete Fourier transform for the coefficients in w.
    let mut coeffs = vec![];
    for j in 0..m {
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, (_, d)) in samples.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * (s as f64) / (m as f64) + 0.2391;
            let ph = Complex64::new(0.0, -(j as f64) * theta).exp();
            acc += d * ph;
        }
        coeffs.push(acc / (m as f64) / radius.powi(j as i32));
    }
    let maxc = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if maxc == 0.0 {
        return Ok(vec![]);
    }
    while coeffs.len() > 1 && coeffs.last().unwrap().norm() < 1e-8 * maxc {
        coeffs.pop();
    }
    if coeffs.len() == 1 {
        return Ok(vec![]);
    }
    let mut points = aberth_roots(&coeffs, 1e-11)?;
    // Merge numerically coincident zeros (multiple discriminant roots).
    points.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    let mut merged: Vec<Complex64> = vec![];
    for p in points {
        if merged
            .iter()
            .all(|q| (p - q).norm() > 1e-6 * (1.0 + p.norm()))
        {
            merged.push(p);
        }
    }
    Ok(merged)
}

/// Track the base roots around a small loop encircling one discriminant
/// point (segment in, full circle, segment back).
fn loop_permutation(
    curve: &NumericCurve,
    base: &[Complex64],
    base_roots: &[Complex64],
    active: usize,
    point: Complex64,
    others: &[Complex64],
    cfg: &TrackConfig,
) -> Result<Vec<usize>> {
    let w0 = base[active];
    let mut r = 0.35 * (point - w0).norm();
    for o in others {
        let d = (point - o).norm();
        if d > 0.0 {
            r = r.min(0.35 * d);
        }
    }
    if r <= 0.0 {
        return Err(Error::Numeric("degenerate discriminant loop radius".into()));
    }
    let dir = (w0 - point) / (w0 - point).norm();
    let approach = point + dir * r;
    let mk_paths = |p: VarPath| -> Vec<VarPath> {
        base.iter()
            .enumerate()
            .map(|(i, &v)| if i == active { p.clone() } else { VarPath::Const(v) })
            .collect()
    };
    let legs = [
        mk_paths(VarPath::Affine { from: w0, to: approach }),
        mk_paths(VarPath::Circle { center: point, start: approach, turns: 1.0 }),
        mk_paths(VarPath::Affine { from: approach, to: w0 }),
    ];
    let mut zs = base_roots.to_vec();
    for leg in &legs {
        let (out, _) = track(curve, leg, &zs, 0.0, 1.0, cfg)?;
        zs = out;
    }
    let sep = {
        let mut m = f64::INFINITY;
        for i in 0..base_roots.len() {
            for j in (i + 1)..base_roots.len() {
                m = m.min((base_roots[i] - base_roots[j]).norm());
            }
        }
        if m.is_finite() {
            m / 3.0
        } else {
            1e-6
        }
    };
    match_points(&zs, base_roots, sep)
}

/// Loop permutations around every discriminant point of the active
/// parameter, the group they generate, and its transitivity.
pub fn monodromy_check(
    curve: &NumericCurve,
    base: &[Complex64],
    base_roots: &[Complex64],
    active: usize,
    cfg: &TrackConfig,
) -> Result<MonodromyReport> {
    let n = base_roots.len();
    let identity: Vec<usize> = (0..n).collect();
    let disc = if base.is_empty() {
        vec![]
    } else {
        discriminant_points(curve, base, active, cfg.tol_residual)?
    };
    let mut generators = vec![];
    for (i, &p) in disc.iter().enumerate() {
        let others: Vec<Complex64> = disc
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, &q)| q)
            .collect();
        generators.push(loop_permutation(
            curve, base, base_roots, active, p, &others, cfg,
        )?);
    }
    // Breadth-first closure of the generated group, remembering words.
    let mut group: Vec<(Vec<usize>, Vec<usize>)> = vec![(identity.clone(), vec![])];
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        let (perm, word) = group[idx].clone();
        for (gi, g) in generators.iter().enumerate() {
            let np = compose(&perm, g);
            if !group.iter().any(|(p, _)| *p == np) {
                let mut nw = word.clone();
                nw.push(gi);
                group.push((np, nw));
                frontier.push(group.len() - 1);
            }
        }
    }
    // Orbit of label 0 under the generators.
    let mut orbit = vec![false; n];
    if n > 0 {
        orbit[0] = true;
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for g in &generators {
                if !orbit[g[i]] {
                    orbit[g[i]] = true;
                    stack.push(g[i]);
                }
            }
        }
    }
    Ok(MonodromyReport {
        disc_points: disc,
        generators,
        group,
        transitive: orbit.iter().all(|&b| b),
    })
}
