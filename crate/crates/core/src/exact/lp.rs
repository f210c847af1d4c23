//! Exact rational linear programming via the tableau simplex method.
//!
//! Pivoting uses Bland's rule throughout, so every solve terminates without
//! cycling. Problems are desk-scale (tens of variables), so a dense tableau
//! over `BigRational` is plenty.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(Rat),
    Unbounded,
    Infeasible,
}

/// Core simplex: maximize c.x subject to a x = b, x >= 0, given a starting
/// feasible basis (basis[i] indexes the basic variable of row i; its column
/// must be the i-th unit vector and b >= 0).
fn simplex_core(
    a: &mut Vec<Vec<Rat>>,
    b: &mut Vec<Rat>,
    c: &mut Vec<Rat>,
    obj: &mut Rat,
    basis: &mut Vec<usize>,
) -> LpOutcome {
    let m = a.len();
    let n = if m == 0 { c.len() } else { a[0].len() };
    loop {
        // Bland: entering variable = lowest index with positive reduced cost.
        let Some(e) = (0..n).find(|&j| c[j].is_positive()) else {
            return LpOutcome::Optimal(obj.clone());
        };
        // Ratio test, Bland tie-break by lowest variable index.
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if a[i][e].is_positive() {
                let ratio = &b[i] / &a[i][e];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr || (ratio == lr && basis[i] < basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
        }
        let Some((r, _)) = leave else {
            return LpOutcome::Unbounded;
        };
        // Pivot on (r, e).
        let piv = a[r][e].clone();
        for j in 0..n {
            a[r][j] = &a[r][j] / &piv;
        }
        b[r] = &b[r] / &piv;
        for i in 0..m {
            if i != r && !a[i][e].is_zero() {
                let f = a[i][e].clone();
                for j in 0..n {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
                let v = &b[i] - &f * &b[r];
                b[i] = v;
            }
        }
        if !c[e].is_zero() {
            let f = c[e].clone();
            for j in 0..n {
                let v = &c[j] - &f * &a[r][j];
                c[j] = v;
            }
            let v = &*obj + &f * &b[r];
            *obj = v;
        }
        basis[r] = e;
    }
}

/// Is there x >= 0 and y free with a_pos x + a_free y = rhs?
pub fn feasible_combination(a_pos: &[Vec<Rat>], a_free: &[Vec<Rat>], rhs: &[Rat]) -> Result<bool> {
    let m = rhs.len();
    for col in a_pos.iter().chain(a_free.iter()) {
        if col.len() != m {
            return Err(Error::Dimension("feasible_combination column length".into()));
        }
    }
    // Columns: a_pos, a_free as (+,-) pairs, then artificials.
    let np = a_pos.len();
    let nf = a_free.len();
    let n = np + 2 * nf + m;
    let mut a = vec![vec![Rat::zero(); n]; m];
    let mut b = rhs.to_vec();
    for i in 0..m {
        for (j, col) in a_pos.iter().enumerate() {
            a[i][j] = col[i].clone();
        }
        for (j, col) in a_free.iter().enumerate() {
            a[i][np + 2 * j] = col[i].clone();
            a[i][np + 2 * j + 1] = -col[i].clone();
        }
    }
    // Normalize to b >= 0, then install artificial basis.
    for i in 0..m {
        if b[i].is_negative() {
            for j in 0..n {
                a[i][j] = -a[i][j].clone();
            }
            b[i] = -b[i].clone();
        }
        a[i][np + 2 * nf + i] = Rat::one();
    }
    // Phase 1: maximize -(sum of artificials).
    let mut c = vec![Rat::zero(); n];
    let mut obj = Rat::zero();
    let mut basis: Vec<usize> = (0..m).map(|i| np + 2 * nf + i).collect();
    for j in np + 2 * nf..n {
        c[j] = -Rat::one();
    }
    // Price out the initial basis: reduced costs gain +row sums, and the
    // objective starts at -(sum of artificial values) = -(sum of b).
    for i in 0..m {
        for j in 0..n {
            let v = &c[j] + &a[i][j];
            c[j] = v;
        }
        let v = &obj - &b[i];
        obj = v;
    }
    // c now holds reduced costs for objective -(sum artificials) shifted by obj;
    // the artificial columns must be re-zeroed.
    for j in np + 2 * nf..n {
        c[j] = Rat::zero();
    }
    match simplex_core(&mut a, &mut b, &mut c, &mut obj, &mut basis) {
        LpOutcome::Optimal(v) => Ok(v.is_zero()),
        LpOutcome::Unbounded => Err(Error::Numeric("phase-1 LP unbounded".into())),
        LpOutcome::Infeasible => Ok(false),
    }
}

/// Maximize c.x subject to a x <= b with x >= 0 and b >= 0 (slack basis start).
pub fn maximize_leq(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> Result<LpOutcome> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("maximize_leq shape".into()));
    }
    if b.iter().any(|v| v.is_negative()) {
        return Err(Error::Dimension("maximize_leq requires b >= 0".into()));
    }
    let total = n + m;
    let mut at = vec![vec![Rat::zero(); total]; m];
    for i in 0..m {
        for j in 0..n {
            at[i][j] = a[i][j].clone();
        }
        at[i][n + i] = Rat::one();
    }
    let mut bt = b.to_vec();
    let mut ct = vec![Rat::zero(); total];
    ct[..n].clone_from_slice(c);
    let mut obj = Rat::zero();
    let mut basis: Vec<usize> = (0..m).map(|i| n + i).collect();
    Ok(simplex_core(&mut at, &mut bt, &mut ct, &mut obj, &mut basis))
}
