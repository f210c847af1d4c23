//! End-to-end numeric verification of a wall crossing: chart consistency of
//! the root sets, branch matching by analytic continuation between the two
//! large-radius limits, the branch derivative identity, and a monodromy
//! certificate for the realized permutation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{rat_to_f64, Rat};
use crate::fan::ExtendedStackyFan;
use crate::gkz::{restricted_slots, WallCrossing};
use crate::numeric::monodromy::monodromy_check;
use crate::numeric::path::{track, TrackConfig, VarPath};
use crate::numeric::{match_points, numeric_curve, restricted_numeric_curve, NumericCurve};
use crate::series::{branch_system, BranchSystem, TruncatedSeries};
use crate::curve::ChartNames;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Series truncation order for the branch seeds and end targets.
    pub order: usize,
    pub seed: u64,
    /// Root-set agreement between the two charts at a shared point.
    pub tol_consistency: f64,
    /// Continued roots against the minus-chart series evaluations.
    pub tol_match: f64,
    /// Branch derivative identity x dlog y across the charts.
    pub tol_derivative: f64,
    pub track: TrackConfig,
    /// Endpoint magnitude of q_{+,1}; default max(1e2, 10^{3/c_1}).
    pub end_mag: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            order: 12,
            seed: 1,
            tol_consistency: 1e-10,
            tol_match: 1e-8,
            tol_derivative: 1e-9,
            track: TrackConfig::default(),
            end_mag: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub case: &'static str,
    /// Continuation permutation: plus-branch label -> minus-branch label.
    pub permutation: Vec<usize>,
    /// Word in the discriminant loops realizing the inverse permutation.
    pub monodromy_word: Option<Vec<usize>>,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn cx(mag: f64, phase: f64) -> Complex64 {
    mag * Complex64::new(phase.cos(), phase.sin())
}

/// A generic non-real phase, staying away from the real axis.
fn gen_phase(rng: &mut ChaCha8Rng) -> f64 {
    let base = 0.3 + rng.gen_range(0.0..2.5);
    if rng.gen_bool(0.5) {
        -base
    } else {
        base
    }
}

/// Values of the series roster (q-hat, x, z) from chart parameter values.
fn roster_values(
    sys: &BranchSystem<Complex64>,
    qvals: &[Complex64],
    x: Complex64,
) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); sys.ctx.vars.len()];
    out[sys.x_pos] = x;
    for (a, &pos) in sys.slot_pos.iter().enumerate() {
        if sys.z_pos == Some(pos) {
            out[pos] = qvals[a] / x;
        } else {
            out[pos] = qvals[a];
        }
    }
    out
}

fn eval_branches(
    sys: &BranchSystem<Complex64>,
    branches: &[TruncatedSeries<Complex64>],
    qvals: &[Complex64],
    x: Complex64,
) -> Result<Vec<Complex64>> {
    let vals = roster_values(sys, qvals, x);
    branches.iter().map(|b| b.evaluate(&sys.ctx, &vals)).collect()
}

struct Transition {
    c: Vec<f64>,
    e_x: f64,
    e_y: f64,
    e_x2: Option<f64>,
    e_y2: Option<f64>,
}

impl Transition {
    fn minus_q(&self, qplus: &[Complex64], l1: Complex64) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(qplus.len());
        out.push((-self.c[0] * l1).exp());
        for a in 1..qplus.len() {
            out.push(qplus[a] * (self.c[a] * l1).exp());
        }
        out
    }

    fn minus_x(&self, xplus: Complex64, l1: Complex64) -> Complex64 {
        xplus * (self.e_x * l1).exp()
    }

    fn minus_y(&self, yplus: Complex64, l1: Complex64) -> Complex64 {
        yplus * (self.e_y * l1).exp()
    }
}

/// Numeric verification of the wall-crossing identities. Setup failures are
/// hard errors; the individual sub-checks report pass/fail with diagnostics.
pub fn verify_octc(
    fan_plus: &ExtendedStackyFan,
    fan_minus: &ExtendedStackyFan,
    wc: &WallCrossing,
    cfg: &VerifyConfig,
) -> Result<VerifyReport> {
    let k = wc.k;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let f_plus = Rat::from_integer(wc.brane_plus.framing.into());
    let tr = Transition {
        c: wc.c.iter().map(rat_to_f64).collect(),
        e_x: rat_to_f64(&wc.x_exp.bind(&f_plus)),
        e_y: rat_to_f64(&wc.y_exp),
        e_x2: wc.case3.as_ref().map(|c3| rat_to_f64(&c3.x2_exp.bind(&f_plus))),
        e_y2: wc.case3.as_ref().map(|c3| rat_to_f64(&c3.y2_exp)),
    };
    if tr.c[0] <= 0.0 {
        return Err(Error::Numeric("crossing exponent must be positive".into()));
    }
    let cp = numeric_curve(fan_plus, &wc.pb_plus, &wc.brane_plus)?;
    let cm = numeric_curve(fan_minus, &wc.pb_minus, &wc.brane_minus)?;
    let names = ChartNames::plain(k);
    let sys_m = branch_system::<Complex64>(
        fan_minus,
        &wc.pb_minus,
        &wc.brane_minus,
        &names,
        wc.a0,
        cfg.order,
        (),
    )?;
    let sys_p = branch_system::<Complex64>(
        fan_plus,
        &wc.pb_plus,
        &wc.brane_plus,
        &names,
        wc.a0,
        cfg.order,
        (),
    )?;
    let sys_p2 = match &wc.brane_plus2 {
        Some(b2) => Some(branch_system::<Complex64>(
            fan_plus,
            &wc.pb_plus,
            b2,
            &names,
            wc.a0,
            cfg.order,
            (),
        )?),
        None => None,
    };
    let ell = sys_m.ell as usize;
    let ell1 = sys_p.ell as usize;
    let branches_m = sys_m.newton_branches()?;
    let branches_p = sys_p.newton_branches()?;
    let branches_p2 = match &sys_p2 {
        Some(s) => s.newton_branches()?,
        None => vec![],
    };
    if ell1 + branches_p2.len() != ell {
        return Err(Error::Numeric("branch counts differ across the wall".into()));
    }

    let mut checks = vec![];

    // (a) Chart consistency of the y-root sets at one shared generic point.
    checks.push(run_consistency(&cp, &cm, &tr, k, cfg, &mut rng));

    // Continuation path setup. The open variable moves log-linearly as well,
    // so that both large-radius regions are entered with small coordinates.
    let inner = wc.a0.is_some();
    let q_mag: f64 = 1e-2;
    let x_mag: f64 = if inner { 0.1 } else { 1e-2 };
    let end_mag = cfg.end_mag.unwrap_or_else(|| {
        let e: f64 = 10.0f64;
        e.powf((3.0 / tr.c[0]).max(2.0))
    });
    // A generic path misses the discriminant locus, but a particular draw of
    // phases can pass close enough to stall the tracker; redraw and retry.
    let mut paths: Vec<VarPath> = vec![];
    let mut zs: Vec<Complex64> = vec![];
    let mut derivative_worst = 0.0f64;
    let mut derivative_detail = String::new();
    let mut track_error: Option<String> = None;
    for _attempt in 0..6 {
        let l1_from = Complex64::new(q_mag.ln(), gen_phase(&mut rng));
        let l1_to = Complex64::new(end_mag.ln(), gen_phase(&mut rng));
        paths = vec![VarPath::LogLinear { from_log: l1_from, to_log: l1_to }];
        for a in 1..k {
            let from_log = Complex64::new(q_mag.ln(), gen_phase(&mut rng));
            // Aim the minus-side coordinate at a small generic value.
            let to_log =
                Complex64::new(q_mag.ln(), gen_phase(&mut rng)) - tr.c[a] * l1_to;
            paths.push(VarPath::LogLinear { from_log, to_log });
        }
        let x_from = Complex64::new(x_mag.ln(), gen_phase(&mut rng));
        let x_to = Complex64::new(x_mag.ln(), gen_phase(&mut rng)) - tr.e_x * l1_to;
        paths.push(VarPath::LogLinear { from_log: x_from, to_log: x_to });

        // Labeled start roots from the plus-side series.
        let start: Vec<Complex64> = paths.iter().map(|p| p.value(0.0)).collect();
        let (qstart, xstart) = (start[..k].to_vec(), start[k]);
        let mut start_roots = eval_branches(&sys_p, &branches_p, &qstart, xstart)?;
        if let (Some(s2), Some(e_x2), Some(e_y2)) = (&sys_p2, tr.e_x2, tr.e_y2) {
            let l1 = paths[0].log_value(0.0).unwrap();
            let x2 = xstart * (e_x2 * l1).exp();
            for y2 in eval_branches(s2, &branches_p2, &qstart, x2)? {
                // y_{+,2} = y_+ q_{+,1}^{e_y2}.
                start_roots.push(y2 * (-e_y2 * l1).exp());
            }
        }
        for z in start_roots.iter_mut() {
            let refined = cp.refine_root(&start, *z, cfg.track.tol_residual)?;
            if (refined - *z).norm() > 1e-3 * (1.0 + z.norm()) {
                return Err(Error::Numeric(
                    "series seed is too far from a root of the plus chart".into(),
                ));
            }
            *z = refined;
        }

        // (b) Track through the checkpoints, with (c) tested at the interior
        // ones.
        let checkpoints = [0.0, 0.3, 0.55, 0.8, 1.0];
        zs = start_roots;
        derivative_worst = 0.0;
        derivative_detail.clear();
        track_error = None;
        for w in checkpoints.windows(2) {
            match track(&cp, &paths, &zs, w[0], w[1], &cfg.track) {
                Ok((out, _)) => zs = out,
                Err(e) => {
                    track_error = Some(format!("tracking: {}", e));
                    break;
                }
            }
            if w[1] < 1.0 && track_error.is_none() {
                let l1 = paths[0].log_value(w[1]).unwrap();
                match derivative_identity(&cp, &cm, &tr, &paths, l1, w[1], &zs, cfg) {
                    Ok(worst) => derivative_worst = derivative_worst.max(worst),
                    Err(e) => {
                        derivative_detail = format!("at t = {}: {}", w[1], e);
                    }
                }
            }
        }
        if track_error.is_none() {
            break;
        }
    }
    let params_at = |t: f64| -> Vec<Complex64> { paths.iter().map(|p| p.value(t)).collect() };
    let l1_at = |t: f64| -> Complex64 { paths[0].log_value(t).unwrap() };

    let mut permutation = vec![];
    let mut monodromy_word = None;
    if let Some(msg) = track_error {
        checks.push(CheckReport { name: "branch-matching", pass: false, detail: msg });
        checks.push(CheckReport {
            name: "derivative-identity",
            pass: false,
            detail: "skipped: tracking failed".into(),
        });
        checks.push(CheckReport {
            name: "monodromy-certificate",
            pass: false,
            detail: "skipped: tracking failed".into(),
        });
        return Ok(VerifyReport { case: wc.case.label(), permutation, monodromy_word, checks });
    }

    // Match the continued roots against the minus-side series evaluations.
    let l1_end = l1_at(1.0);
    let end = params_at(1.0);
    let q_minus = tr.minus_q(&end[..k], l1_end);
    let x_minus = tr.minus_x(end[k], l1_end);
    let targets = eval_branches(&sys_m, &branches_m, &q_minus, x_minus)?;
    let mapped: Vec<Complex64> = zs.iter().map(|&z| tr.minus_y(z, l1_end)).collect();
    let scale = 1.0 + targets.iter().map(|t| t.norm()).fold(0.0f64, f64::max);
    match match_points(&mapped, &targets, cfg.tol_match * scale) {
        Ok(perm) => {
            let worst = mapped
                .iter()
                .zip(&perm)
                .map(|(m, &j)| (m - targets[j]).norm())
                .fold(0.0f64, f64::max);
            permutation = perm.clone();
            checks.push(CheckReport {
                name: "branch-matching",
                pass: true,
                detail: format!(
                    "permutation {:?}, worst distance {:.3e} (tol {:.1e})",
                    perm,
                    worst,
                    cfg.tol_match * scale
                ),
            });
        }
        Err(e) => {
            checks.push(CheckReport {
                name: "branch-matching",
                pass: false,
                detail: e.to_string(),
            });
        }
    }

    // (c) summary.
    if derivative_detail.is_empty() {
        checks.push(CheckReport {
            name: "derivative-identity",
            pass: derivative_worst <= cfg.tol_derivative,
            detail: format!(
                "worst |x dlog y| deviation {:.3e} (tol {:.1e})",
                derivative_worst, cfg.tol_derivative
            ),
        });
    } else {
        checks.push(CheckReport {
            name: "derivative-identity",
            pass: false,
            detail: derivative_detail,
        });
    }

    // Monodromy certificate: a loop family on the minus side realizes the
    // inverse of the continuation permutation.
    if permutation.len() == ell {
        let check = monodromy_certificate(
            fan_minus, wc, ell, &q_minus, &permutation, cfg, &mut monodromy_word,
        );
        checks.push(check);
    } else {
        checks.push(CheckReport {
            name: "monodromy-certificate",
            pass: false,
            detail: "skipped: no permutation realized".into(),
        });
    }

    Ok(VerifyReport { case: wc.case.label(), permutation, monodromy_word, checks })
}

fn run_consistency(
    cp: &NumericCurve,
    cm: &NumericCurve,
    tr: &Transition,
    k: usize,
    cfg: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let mut inner = || -> Result<(f64, f64)> {
        let mut plus: Vec<Complex64> =
            (0..k).map(|_| cx(1.0, gen_phase(rng))).collect();
        plus.push(cx(1.0, gen_phase(rng)));
        let l1 = plus[0].ln();
        let mut minus = tr.minus_q(&plus[..k], l1);
        minus.push(tr.minus_x(plus[k], l1));
        let roots_p = cp.roots_at(&plus, cfg.track.tol_residual)?;
        let roots_m = cm.roots_at(&minus, cfg.track.tol_residual)?;
        let mapped: Vec<Complex64> =
            roots_p.iter().map(|&y| tr.minus_y(y, l1)).collect();
        let scale = 1.0 + roots_m.iter().map(|r| r.norm()).fold(0.0f64, f64::max);
        let tol = cfg.tol_consistency * scale;
        let perm = match_points(&mapped, &roots_m, tol)?;
        let worst = mapped
            .iter()
            .zip(&perm)
            .map(|(m, &j)| (m - roots_m[j]).norm())
            .fold(0.0f64, f64::max);
        Ok((worst, tol))
    };
    match inner() {
        Ok((worst, tol)) => CheckReport {
            name: "chart-consistency",
            pass: worst <= tol,
            detail: format!("worst root distance {:.3e} (tol {:.1e})", worst, tol),
        },
        Err(e) => CheckReport {
            name: "chart-consistency",
            pass: false,
            detail: e.to_string(),
        },
    }
}

/// Worst deviation of x dlog y between the charts on every tracked branch.
fn derivative_identity(
    cp: &NumericCurve,
    cm: &NumericCurve,
    tr: &Transition,
    paths: &[VarPath],
    l1: Complex64,
    t: f64,
    zs: &[Complex64],
    cfg: &VerifyConfig,
) -> Result<f64> {
    let plus: Vec<Complex64> = paths.iter().map(|p| p.value(t)).collect();
    let k = plus.len() - 1;
    let mut minus = tr.minus_q(&plus[..k], l1);
    minus.push(tr.minus_x(plus[k], l1));
    let mut worst = 0.0f64;
    for &z in zs {
        let e_plus = cp.x_dlog_y(&plus, z)?;
        let y_minus = cm.refine_root(&minus, tr.minus_y(z, l1), cfg.track.tol_residual)?;
        let e_minus = cm.x_dlog_y(&minus, y_minus)?;
        worst = worst.max((e_plus - e_minus).norm() / (1.0 + e_plus.norm()));
    }
    Ok(worst)
}

fn monodromy_certificate(
    fan_minus: &ExtendedStackyFan,
    wc: &WallCrossing,
    ell: usize,
    q_minus: &[Complex64],
    permutation: &[usize],
    cfg: &VerifyConfig,
    word_out: &mut Option<Vec<usize>>,
) -> CheckReport {
    let identity: Vec<usize> = (0..ell).collect();
    let mut target = vec![0usize; ell];
    for (i, &s) in permutation.iter().enumerate() {
        target[s] = i;
    }
    if ell == 1 {
        let pass = permutation == identity;
        *word_out = Some(vec![]);
        return CheckReport {
            name: "monodromy-certificate",
            pass,
            detail: "single branch: trivial loop group".into(),
        };
    }
    let mut inner = || -> Result<(bool, String)> {
        let slots = restricted_slots(fan_minus, &wc.pb_minus, &wc.brane_minus)?;
        let curve = restricted_numeric_curve(ell as i64);
        let base: Vec<Complex64> = slots.iter().map(|&a| q_minus[a]).collect();
        let roots = curve.roots_at(&base, cfg.track.tol_residual)?;
        // Label the base roots by the nearest seed root of 1 + y^ell.
        let seeds: Vec<Complex64> = (1..=ell as i64)
            .map(|j| {
                let th = std::f64::consts::PI * (2 * j - 1) as f64 / ell as f64;
                Complex64::new(th.cos(), th.sin())
            })
            .collect();
        let perm = match_points(&seeds, &roots, 0.5)?;
        let labeled: Vec<Complex64> = perm.iter().map(|&j| roots[j]).collect();
        let rep = monodromy_check(&curve, &base, &labeled, 0, &cfg.track)?;
        match rep.express(&target) {
            Some(word) => {
                *word_out = Some(word.clone());
                Ok((
                    true,
                    format!(
                        "{} discriminant loops, group order {}, inverse realized by word {:?}",
                        rep.generators.len(),
                        rep.group.len(),
                        word
                    ),
                ))
            }
            None => Ok((
                false,
                format!(
                    "inverse permutation {:?} not generated (group order {})",
                    target,
                    rep.group.len()
                ),
            )),
        }
    };
    match inner() {
        Ok((pass, detail)) => CheckReport { name: "monodromy-certificate", pass, detail },
        Err(e) => CheckReport {
            name: "monodromy-certificate",
            pass: false,
            detail: e.to_string(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gkz::parameter_relations;

    #[test]
    fn resolution_pair_passes_the_numeric_checks() {
        let plus = fixtures::kp1o();
        let minus = fixtures::a1();
        let brane = minus.make_brane((2, 3), 0, None).unwrap();
        let wc = parameter_relations(&plus, &minus, &brane).unwrap();
        let rep = verify_octc(&plus, &minus, &wc, &VerifyConfig::default()).unwrap();
        for c in &rep.checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
        assert_eq!(rep.permutation.len(), 2);
        assert!(rep.monodromy_word.is_some());
    }

    #[test]
    fn flop_pair_passes_the_numeric_checks() {
        let plus = fixtures::flop_plus();
        let minus = fixtures::flop_minus();
        let brane = minus.make_brane((1, 2), 0, Some(0)).unwrap();
        let wc = parameter_relations(&plus, &minus, &brane).unwrap();
        let rep = verify_octc(&plus, &minus, &wc, &VerifyConfig::default()).unwrap();
        for c in &rep.checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
        assert_eq!(rep.permutation, vec![0]);
    }
}
