//! Extended Nef cones, parameter bases attached to charts, and wall-crossing
//! parameter relations.
//!
//! The kernel of the height-one point matrix distinguishes each lattice point
//! by a vector D_i in the rank-k parameter lattice. Each maximal cone spans an
//! extended Nef cone from the D_i of the points outside it; the intersection
//! over all cones is the extended Nef cone of the fan. A parameter basis picks
//! k lattice vectors of that cone subject to exactness conditions, giving the
//! moduli monomials s_i(q) of the mirror curve. Two triangulations meeting
//! along a codimension-one wall get a shared parameter basis, from which the
//! chart identification (parameter, open-variable, and framing relations)
//! is computed case by case.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::curve::{
    build_curve, verify_substitution_identity, ChartNames, CurveEquation, ExpAffine, Monomial,
};
use crate::error::{Error, Result};
use crate::exact::{rint, IntMatrix, Rat, RationalCone};
use crate::fan::{frame_change, Brane, BraneKind, ExtendedStackyFan, Flag};

/// Kernel data and extended Nef cones of a fan.
#[derive(Debug, Clone)]
pub struct GkzData {
    pub k: usize,
    /// R x k kernel basis of the point matrix (canonical choice).
    pub kernel: IntMatrix,
    /// D_i = i-th row of the kernel basis.
    pub d: Vec<Vec<BigInt>>,
    /// Extended Nef cone of each maximal cone.
    pub nef_sigma: Vec<RationalCone>,
    /// Extended Nef cone of the fan.
    pub nef: RationalCone,
    /// Rank of the rational Picard group: k minus the rank of the orbifold D_i.
    pub pic_rank: usize,
}

fn to_rat_vec(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn gkz_data(fan: &ExtendedStackyFan) -> Result<GkzData> {
    let kernel = fan.beta().kernel_basis();
    let k = fan.k();
    if kernel.cols != k || kernel.rows != fan.r() {
        return Err(Error::Dimension("kernel basis has unexpected shape".into()));
    }
    let d: Vec<Vec<BigInt>> = (0..fan.r()).map(|i| kernel.row(i)).collect();
    let mut nef_sigma = Vec::with_capacity(fan.cones.len());
    for sigma in 0..fan.cones.len() {
        let outside = fan.outside_indices(sigma);
        if outside.len() != k {
            return Err(Error::Dimension("outside index count is not k".into()));
        }
        let rays: Vec<Vec<BigInt>> = outside.iter().map(|&i| d[i].clone()).collect();
        if k > 0 && IntMatrix::from_big_rows(&rays).rank() != k {
            return Err(Error::UnsupportedWall(format!(
                "chart {} has a degenerate extended Nef cone",
                sigma + 1
            )));
        }
        nef_sigma.push(RationalCone::from_int_rays(k, &rays)?);
    }
    let nef = RationalCone::intersect_all(k, &nef_sigma)?;
    let orb = fan.orb_indices();
    let rank_orb = if orb.is_empty() {
        0
    } else {
        IntMatrix::from_big_rows(&orb.iter().map(|&i| d[i].clone()).collect::<Vec<_>>()).rank()
    };
    Ok(GkzData { k, kernel, d, nef_sigma, nef, pic_rank: k - rank_orb })
}

/// A parameter basis: k lattice vectors of the extended Nef cone together
/// with the orbifold slot assignment and the per-chart expansion exponents.
#[derive(Debug, Clone)]
pub struct PBasis {
    pub p: Vec<Vec<BigInt>>,
    /// Orbifold point index -> slot (0-based).
    pub iota: BTreeMap<usize, usize>,
    /// p_slot = scale * D_i; always one outside hint-validation mode.
    pub iota_scale: BTreeMap<usize, BigInt>,
    /// Per maximal cone: point outside the cone -> per-slot exponents, so
    /// that p_a = sum_i s[sigma][i][a] * D_i over the points outside sigma.
    pub s: Vec<BTreeMap<usize, Vec<BigInt>>>,
}

impl PBasis {
    pub fn k(&self) -> usize {
        self.p.len()
    }

    /// Exponents of the moduli monomial s_i(q) in chart `sigma`.
    pub fn s_exponents(&self, sigma: usize, i: usize) -> Result<Vec<Rat>> {
        let Some(per_point) = self.s.get(sigma) else {
            return Err(Error::Dimension("chart index out of range".into()));
        };
        let Some(col) = per_point.get(&i) else {
            return Err(Error::Dimension(format!(
                "point {} is a vertex of chart {}",
                i + 1,
                sigma + 1
            )));
        };
        Ok(col.iter().map(|e| Rat::from_integer(e.clone())).collect())
    }
}

/// Expansion coefficients of `v` over the D_i outside each maximal cone.
fn expansions(fan: &ExtendedStackyFan, gkz: &GkzData, v: &[Rat]) -> Result<Vec<Vec<Rat>>> {
    let k = gkz.k;
    let mut out = vec![];
    for sigma in 0..fan.cones.len() {
        let outside = fan.outside_indices(sigma);
        let mut m = vec![vec![Rat::zero(); k]; k];
        for (j, &i) in outside.iter().enumerate() {
            for r in 0..k {
                m[r][j] = Rat::from_integer(gkz.d[i][r].clone());
            }
        }
        let sol = crate::exact::matrix::solve_rational(&m, v)?;
        if sol.iter().any(|x| x.is_negative()) {
            return Err(Error::PBasisSearch(format!(
                "negative expansion coefficient in chart {}",
                sigma + 1
            )));
        }
        out.push(sol);
    }
    Ok(out)
}

fn lcm_denoms(vals: &[Rat]) -> BigInt {
    let mut l = BigInt::one();
    for v in vals {
        l = l.lcm(v.denom());
    }
    l
}

/// Scale an integer Nef vector by the least positive integer making all its
/// chart expansions integral. Returns the scaled vector and its expansions.
fn integral_scale(
    fan: &ExtendedStackyFan,
    gkz: &GkzData,
    v: &[BigInt],
) -> Result<(Vec<BigInt>, Vec<Vec<BigInt>>, BigInt)> {
    let exps = expansions(fan, gkz, &to_rat_vec(v))?;
    let all: Vec<Rat> = exps.iter().flatten().cloned().collect();
    let lam = lcm_denoms(&all);
    let lamr = Rat::from_integer(lam.clone());
    let scaled: Vec<BigInt> = v.iter().map(|x| x * &lam).collect();
    let int_exps: Vec<Vec<BigInt>> = exps
        .iter()
        .map(|row| row.iter().map(|x| (x * &lamr).to_integer()).collect())
        .collect();
    Ok((scaled, int_exps, lam))
}

fn condition_iv_ok(fan: &ExtendedStackyFan, gkz: &GkzData, v: &[BigInt]) -> Result<bool> {
    for &i in &fan.orb_indices() {
        let diff: Vec<BigInt> = v.iter().zip(&gkz.d[i]).map(|(a, b)| a - b).collect();
        if gkz.nef.contains_int(&diff)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All integer vectors of length k with given absolute-coordinate sum, in
/// ascending lexicographic order.
fn vectors_with_sum(k: usize, total: i64) -> Vec<Vec<i64>> {
    fn rec(k: usize, total: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in -total..=total {
            if v.abs() <= total {
                cur.push(v);
                rec(k - 1, total - v.abs(), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = vec![];
    rec(k, total, &mut vec![], &mut out);
    out
}

const SEARCH_MAX_SUM: i64 = 20;

fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Validate a full candidate basis and assemble the PBasis record.
fn build_pbasis(
    fan: &ExtendedStackyFan,
    gkz: &GkzData,
    p: Vec<Vec<BigInt>>,
    iota: BTreeMap<usize, usize>,
    iota_scale: BTreeMap<usize, BigInt>,
) -> Result<PBasis> {
    let k = gkz.k;
    if p.len() != k {
        return Err(Error::PBasisSearch(format!("expected {} basis vectors, got {}", k, p.len())));
    }
    // (i): lattice vectors of the extended Nef cone forming a rational basis.
    for (a, pa) in p.iter().enumerate() {
        if !gkz.nef.contains_int(pa)? {
            return Err(Error::PBasisSearch(format!(
                "p{} is not in the extended Nef cone",
                a + 1
            )));
        }
    }
    if k > 0 && IntMatrix::from_big_rows(&p).rank() != k {
        return Err(Error::PBasisSearch("basis vectors are rationally dependent".into()));
    }
    // (iii): orbifold slots carry positive multiples of the matching D_i.
    for (&i, &a) in &iota {
        let scale = iota_scale.get(&i).cloned().unwrap_or_else(BigInt::one);
        if !scale.is_positive() {
            return Err(Error::PBasisSearch("orbifold slot scale must be positive".into()));
        }
        let expect: Vec<BigInt> = gkz.d[i].iter().map(|x| x * &scale).collect();
        if p[a] != expect {
            return Err(Error::PBasisSearch(format!(
                "slot {} does not match the orbifold vector of point {}",
                a + 1,
                i + 1
            )));
        }
    }
    let orb = fan.orb_indices();
    if iota.len() != orb.len() || orb.iter().any(|i| !iota.contains_key(i)) {
        return Err(Error::PBasisSearch("orbifold slot assignment is not a bijection".into()));
    }
    let kahler: Vec<usize> =
        (0..k).filter(|a| !iota.values().any(|&b| b == *a)).collect();
    // (ii): Kahler slots descend to a basis of the rational Picard group.
    if kahler.len() != gkz.pic_rank {
        return Err(Error::PBasisSearch("wrong number of Kahler slots".into()));
    }
    let mut rows: Vec<Vec<BigInt>> = orb.iter().map(|&i| gkz.d[i].clone()).collect();
    let base_rank = if rows.is_empty() { 0 } else { IntMatrix::from_big_rows(&rows).rank() };
    for &a in &kahler {
        rows.push(p[a].clone());
    }
    if !rows.is_empty() && IntMatrix::from_big_rows(&rows).rank() != base_rank + kahler.len() {
        return Err(Error::PBasisSearch(
            "Kahler slots do not descend to a Picard basis".into(),
        ));
    }
    // (iv): no Kahler slot dominates an orbifold vector inside the Nef cone.
    for &a in &kahler {
        for &i in &orb {
            let diff: Vec<BigInt> = p[a].iter().zip(&gkz.d[i]).map(|(x, y)| x - y).collect();
            if gkz.nef.contains_int(&diff)? {
                return Err(Error::PBasisSearch(format!(
                    "p{} minus the orbifold vector of point {} stays in the Nef cone",
                    a + 1,
                    i + 1
                )));
            }
        }
    }
    // Chart expansions: nonnegative integers.
    let mut s: Vec<BTreeMap<usize, Vec<BigInt>>> = vec![];
    for sigma in 0..fan.cones.len() {
        let outside = fan.outside_indices(sigma);
        let mut per_point: BTreeMap<usize, Vec<BigInt>> =
            outside.iter().map(|&i| (i, vec![])).collect();
        for pa in &p {
            let exps = expansions(fan, gkz, &to_rat_vec(pa))?;
            for (j, &i) in outside.iter().enumerate() {
                let val = &exps[sigma][j];
                if !val.is_integer() {
                    return Err(Error::PBasisSearch(format!(
                        "fractional chart exponent in chart {}",
                        sigma + 1
                    )));
                }
                per_point.get_mut(&i).unwrap().push(val.to_integer());
            }
        }
        s.push(per_point);
    }
    Ok(PBasis { p, iota, iota_scale, s })
}

/// Select a parameter basis: the lexicographically smallest valid choice, or
/// validate caller-provided hints (which may carry positive multiples of the
/// orbifold vectors).
pub fn select_pbasis(
    fan: &ExtendedStackyFan,
    gkz: &GkzData,
    hints: Option<&[Vec<i64>]>,
) -> Result<PBasis> {
    let k = gkz.k;
    let orb = fan.orb_indices();
    // Distinct orbifold points must carry distinct vectors, otherwise no slot
    // assignment can separate them.
    for (ai, &i) in orb.iter().enumerate() {
        for &j in &orb[ai + 1..] {
            if gkz.d[i] == gkz.d[j] {
                return Err(Error::PBasisSearch(format!(
                    "orbifold points {} and {} have equal kernel vectors",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    if let Some(hints) = hints {
        if hints.len() != k || hints.iter().any(|h| h.len() != k) {
            return Err(Error::PBasisSearch("hint shape must be k vectors of length k".into()));
        }
        let p: Vec<Vec<BigInt>> = hints.iter().map(|h| big_vec(h)).collect();
        let mut iota = BTreeMap::new();
        let mut iota_scale = BTreeMap::new();
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for &i in &orb {
            let di = &gkz.d[i];
            let nz = di.iter().position(|x| !x.is_zero()).ok_or_else(|| {
                Error::PBasisSearch(format!("orbifold point {} has zero kernel vector", i + 1))
            })?;
            let mut found = None;
            for (a, pa) in p.iter().enumerate() {
                if used.contains(&a) {
                    continue;
                }
                let (lam, rem) = pa[nz].div_rem(&di[nz]);
                if !rem.is_zero() || !lam.is_positive() {
                    continue;
                }
                if pa.iter().zip(di).all(|(x, y)| *x == y * &lam) {
                    found = Some((a, lam));
                    break;
                }
            }
            let Some((a, lam)) = found else {
                return Err(Error::PBasisSearch(format!(
                    "no hint slot is a positive multiple of the orbifold vector of point {}",
                    i + 1
                )));
            };
            used.insert(a);
            iota.insert(i, a);
            iota_scale.insert(i, lam);
        }
        return build_pbasis(fan, gkz, p, iota, iota_scale);
    }
    // Search mode: Kahler slots first (smallest valid vectors), then the
    // orbifold vectors in point order.
    let mut chosen: Vec<Vec<BigInt>> = vec![];
    let mut rank_rows: Vec<Vec<BigInt>> = orb.iter().map(|&i| gkz.d[i].clone()).collect();
    let base_rank =
        if rank_rows.is_empty() { 0 } else { IntMatrix::from_big_rows(&rank_rows).rank() };
    'outer: for total in 1..=SEARCH_MAX_SUM {
        if chosen.len() == gkz.pic_rank {
            break;
        }
        for raw in vectors_with_sum(k, total) {
            let v = big_vec(&raw);
            if !gkz.nef.contains_int(&v)? {
                continue;
            }
            let Ok((scaled, _, _)) = integral_scale(fan, gkz, &v) else { continue };
            if !condition_iv_ok(fan, gkz, &scaled)? {
                continue;
            }
            rank_rows.push(scaled.clone());
            if IntMatrix::from_big_rows(&rank_rows).rank()
                != base_rank + chosen.len() + 1
            {
                rank_rows.pop();
                continue;
            }
            chosen.push(scaled);
            if chosen.len() == gkz.pic_rank {
                break 'outer;
            }
        }
    }
    if chosen.len() != gkz.pic_rank {
        return Err(Error::PBasisSearch("no Kahler slot candidates found within bounds".into()));
    }
    let mut p = chosen;
    let mut iota = BTreeMap::new();
    let mut iota_scale = BTreeMap::new();
    for &i in &orb {
        iota.insert(i, p.len());
        iota_scale.insert(i, BigInt::one());
        p.push(gkz.d[i].clone());
    }
    build_pbasis(fan, gkz, p, iota, iota_scale)
}

/// Exponent vector of q^alpha for an inner brane: the expansion of the
/// opposite-depth monomial divided by r', with the divisibility conditions
/// that make the inner change of variables integral.
pub fn q_alpha(fan: &ExtendedStackyFan, pbasis: &PBasis, brane: &Brane) -> Result<Vec<BigInt>> {
    let Some((i4, rp)) = fan.inner_data(brane)? else {
        return Err(Error::Brane("outer brane has no inner parameter direction".into()));
    };
    let sigma = brane.primary.sigma;
    let frame = fan.flag_frame(brane.primary)?;
    let col = pbasis.s_exponents(sigma, i4)?;
    let rpr = rint(rp);
    let mut alpha = vec![];
    for v in &col {
        let a = v / &rpr;
        if !a.is_integer() {
            return Err(Error::Brane("inner parameter exponent is not integral".into()));
        }
        alpha.push(a.to_integer());
    }
    // Divisibility across every negative-depth point of the chart.
    for i in 0..fan.r() {
        if fan.cones[sigma].contains(&i) {
            continue;
        }
        let m = frame.mn[i].0;
        if m >= 0 {
            continue;
        }
        let depth = rint(-m);
        let ci = pbasis.s_exponents(sigma, i)?;
        for (a, val) in ci.iter().enumerate() {
            if *val < Rat::from_integer(alpha[a].clone()) * &depth {
                return Err(Error::Brane(
                    "inner parameter fails the divisibility condition".into(),
                ));
            }
        }
    }
    Ok(alpha)
}

/// Smallest slot whose parameter divides q^alpha (skipping the crossing slot
/// in a wall context).
pub fn select_a0(alpha: &[BigInt], skip_first: bool) -> Result<usize> {
    for (a, v) in alpha.iter().enumerate() {
        if skip_first && a == 0 {
            continue;
        }
        if v >= &BigInt::one() {
            return Ok(a);
        }
    }
    Err(Error::Brane("no slot divides the inner parameter monomial".into()))
}

/// Slots of the parameters appearing in the restricted equation of a brane:
/// for j = 1..l-1 the slot of the interior edge point at height j.
pub fn restricted_slots(
    fan: &ExtendedStackyFan,
    pbasis: &PBasis,
    brane: &Brane,
) -> Result<Vec<usize>> {
    let frame = fan.flag_frame(brane.primary)?;
    let mut slots = vec![];
    for j in 1..frame.ell {
        let Some(i) = (0..fan.r()).find(|&i| frame.mn[i] == (0, j)) else {
            return Err(Error::Brane(format!("no lattice point at edge height {}", j)));
        };
        let Some(&a) = pbasis.iota.get(&i) else {
            return Err(Error::Brane(format!(
                "edge point {} does not carry an exact parameter slot",
                i + 1
            )));
        };
        if pbasis.iota_scale.get(&i).map(|s| !s.is_one()).unwrap_or(false) {
            return Err(Error::Brane("edge parameter slot carries a multiple".into()));
        }
        slots.push(a);
    }
    Ok(slots)
}

/// The combinatorial type of a codimension-one wall between two
/// triangulations of the same point configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WallKind {
    /// Two triangles re-diagonalized inside a quadrilateral.
    Flop { plus_cones: [[usize; 3]; 2], minus_cones: [[usize; 3]; 2] },
    /// Star subdivision at the extra ray of the plus side.
    Resolution { iex: usize },
}

pub fn classify_wall_crossing(
    plus: &ExtendedStackyFan,
    minus: &ExtendedStackyFan,
) -> Result<WallKind> {
    if plus.points != minus.points {
        return Err(Error::UnsupportedWall("fans have different point configurations".into()));
    }
    let set_p: BTreeSet<[usize; 3]> = plus.cones.iter().cloned().collect();
    let set_m: BTreeSet<[usize; 3]> = minus.cones.iter().cloned().collect();
    let diff_p: Vec<[usize; 3]> = set_p.difference(&set_m).cloned().collect();
    let diff_m: Vec<[usize; 3]> = set_m.difference(&set_p).cloned().collect();
    if plus.rays == minus.rays {
        if diff_p.len() != 2 || diff_m.len() != 2 {
            return Err(Error::UnsupportedWall(
                "triangulations differ in more than one quadrilateral".into(),
            ));
        }
        let verts = |cs: &[[usize; 3]]| -> BTreeSet<usize> {
            cs.iter().flatten().cloned().collect()
        };
        let vp = verts(&diff_p);
        let vm = verts(&diff_m);
        if vp != vm || vp.len() != 4 {
            return Err(Error::UnsupportedWall("changed cones do not form a quadrilateral".into()));
        }
        let shared = |cs: &[[usize; 3]]| -> Vec<usize> {
            cs[0].iter().filter(|v| cs[1].contains(v)).cloned().collect()
        };
        let dp = shared(&diff_p);
        let dm = shared(&diff_m);
        if dp.len() != 2 || dm.len() != 2 || dp == dm {
            return Err(Error::UnsupportedWall("changed cones are not a re-diagonalization".into()));
        }
        return Ok(WallKind::Flop {
            plus_cones: [diff_p[0], diff_p[1]],
            minus_cones: [diff_m[0], diff_m[1]],
        });
    }
    let extra: Vec<usize> = plus.rays.difference(&minus.rays).cloned().collect();
    let missing: Vec<usize> = minus.rays.difference(&plus.rays).cloned().collect();
    if !missing.is_empty() {
        return Err(Error::UnsupportedWall(
            "the first fan must be the side with the extra ray".into(),
        ));
    }
    if extra.len() != 1 {
        return Err(Error::UnsupportedWall("more than one ray changes across the wall".into()));
    }
    let iex = extra[0];
    if diff_p.iter().any(|c| !c.contains(&iex)) || diff_m.iter().any(|c| c.contains(&iex)) {
        return Err(Error::UnsupportedWall(
            "changed cones are not a star subdivision at the extra ray".into(),
        ));
    }
    Ok(WallKind::Resolution { iex })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingCase {
    /// Brane chart untouched by the wall.
    One,
    /// Primary cone flopped, edge survives.
    TwoA,
    /// Primary cone subdivided, edge survives.
    TwoB,
    /// Edge subdivided at the extra ray.
    Three,
}

impl CrossingCase {
    pub fn label(&self) -> &'static str {
        match self {
            CrossingCase::One => "I",
            CrossingCase::TwoA => "IIa",
            CrossingCase::TwoB => "IIb",
            CrossingCase::Three => "III",
        }
    }
}

/// Extra data of an edge-subdivision crossing (two branes on the plus side).
#[derive(Debug, Clone)]
pub struct Case3Data {
    pub iex: usize,
    pub ell1: i64,
    pub ell2: i64,
    pub s14: Rat,
    pub bprime: i64,
    /// q_{+,1} exponent in x_{+,2} = x_+ q_{+,1}^e.
    pub x2_exp: ExpAffine,
    /// q_{+,1} exponent in y_{+,2} = y_+ q_{+,1}^e.
    pub y2_exp: Rat,
}

/// Full wall-crossing identification: shared parameter basis, crossing
/// coefficients, transported brane(s), and the chart substitution exponents
/// (minus-side variables as monomials in plus-side variables).
#[derive(Debug, Clone)]
pub struct WallCrossing {
    pub kind: WallKind,
    pub case: CrossingCase,
    pub k: usize,
    pub gkz_plus: GkzData,
    pub gkz_minus: GkzData,
    pub pb_plus: PBasis,
    pub pb_minus: PBasis,
    /// p_1^+ = -c_1 p_1^- + sum_{a >= 2} c_a p_a, with c_1 > 0.
    pub c: Vec<Rat>,
    pub brane_minus: Brane,
    pub brane_plus: Brane,
    pub brane_plus2: Option<Brane>,
    /// f_- = f_+ - framing_shift.
    pub framing_shift: i64,
    /// q_{+,1} exponent in x_- = x_+ q_{+,1}^e (affine in f_+).
    pub x_exp: ExpAffine,
    /// q_{+,1} exponent in y_- = y_+ q_{+,1}^e.
    pub y_exp: Rat,
    /// Inner-brane slot a_0 and the q_{+,1} exponent in z_- = z_+ q_{+,1}^e.
    pub a0: Option<usize>,
    pub z_exp: Option<ExpAffine>,
    pub case3: Option<Case3Data>,
}

fn find_cone(fan: &ExtendedStackyFan, mut triple: [usize; 3]) -> Option<usize> {
    triple.sort_unstable();
    fan.cones.iter().position(|c| *c == triple)
}

/// Side of point `p` relative to the oriented line through a and b.
fn side(a: (i64, i64), b: (i64, i64), p: (i64, i64)) -> i64 {
    (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0)
}

struct SharedBasis {
    p_plus: Vec<Vec<BigInt>>,
    p_minus: Vec<Vec<BigInt>>,
    iota_plus: BTreeMap<usize, usize>,
    iota_minus: BTreeMap<usize, usize>,
}

fn shared_wall_basis(
    plus: &ExtendedStackyFan,
    minus: &ExtendedStackyFan,
    g_p: &GkzData,
    g_m: &GkzData,
    wall: &RationalCone,
    kind: &WallKind,
) -> Result<SharedBasis> {
    let k = g_p.k;
    let orb_p = plus.orb_indices();
    let orb_m = minus.orb_indices();
    let p1_minus_forced = match kind {
        WallKind::Resolution { iex } => {
            if !orb_m.contains(iex) || orb_p.contains(iex) {
                return Err(Error::UnsupportedWall(
                    "extra ray is not an orbifold point of the unresolved side".into(),
                ));
            }
            Some(g_m.d[*iex].clone())
        }
        WallKind::Flop { .. } => {
            if orb_p != orb_m {
                return Err(Error::UnsupportedWall("orbifold points differ across a flop".into()));
            }
            None
        }
    };
    // Shared orbifold slots: vectors must lie on the wall.
    let shared_orb: Vec<usize> = orb_p.clone();
    for &i in &shared_orb {
        if !wall.contains_int(&g_p.d[i])? {
            return Err(Error::UnsupportedWall(format!(
                "orbifold vector of point {} does not lie on the wall",
                i + 1
            )));
        }
    }
    let searched_count = (k - 1).checked_sub(shared_orb.len()).ok_or_else(|| {
        Error::UnsupportedWall("too many shared orbifold slots for the wall rank".into())
    })?;
    // Search the shared Kahler slots on the wall.
    let mut shared_kahler: Vec<Vec<BigInt>> = vec![];
    let mut rank_rows: Vec<Vec<BigInt>> =
        shared_orb.iter().map(|&i| g_p.d[i].clone()).collect();
    let base_rank =
        if rank_rows.is_empty() { 0 } else { IntMatrix::from_big_rows(&rank_rows).rank() };
    'srch: for total in 1..=SEARCH_MAX_SUM {
        if shared_kahler.len() == searched_count {
            break;
        }
        for raw in vectors_with_sum(k, total) {
            let v = big_vec(&raw);
            if !wall.contains_int(&v)? {
                continue;
            }
            // Integral in both fans' charts.
            let Ok((_, _, l1)) = integral_scale(plus, g_p, &v) else { continue };
            let Ok((_, _, l2)) = integral_scale(minus, g_m, &v) else { continue };
            let lam = l1.lcm(&l2);
            let scaled: Vec<BigInt> = v.iter().map(|x| x * &lam).collect();
            if !condition_iv_ok(plus, g_p, &scaled)? || !condition_iv_ok(minus, g_m, &scaled)? {
                continue;
            }
            rank_rows.push(scaled.clone());
            if IntMatrix::from_big_rows(&rank_rows).rank() != base_rank + shared_kahler.len() + 1 {
                rank_rows.pop();
                continue;
            }
            shared_kahler.push(scaled);
            if shared_kahler.len() == searched_count {
                break 'srch;
            }
        }
    }
    if shared_kahler.len() != searched_count {
        return Err(Error::UnsupportedWall("no shared wall parameters found within bounds".into()));
    }
    let assemble = |p1: &[BigInt], d_here: &GkzData| -> (Vec<Vec<BigInt>>, BTreeMap<usize, usize>) {
        let mut p = vec![p1.to_vec()];
        let mut iota = BTreeMap::new();
        for sk in &shared_kahler {
            p.push(sk.clone());
        }
        for &i in &shared_orb {
            iota.insert(i, p.len());
            p.push(d_here.d[i].clone());
        }
        (p, iota)
    };
    let try_assemble = |fan: &ExtendedStackyFan,
                        gkz: &GkzData,
                        cand: &[BigInt],
                        extra_orb: Option<usize>|
     -> Option<(Vec<Vec<BigInt>>, BTreeMap<usize, usize>)> {
        let (p, mut iota) = assemble(cand, gkz);
        if let Some(iex) = extra_orb {
            iota.insert(iex, 0);
        }
        let scale: BTreeMap<usize, BigInt> = iota.keys().map(|&i| (i, BigInt::one())).collect();
        if build_pbasis(fan, gkz, p.clone(), iota.clone(), scale).is_ok() {
            Some((p, iota))
        } else {
            None
        }
    };
    let pick_p1 = |fan: &ExtendedStackyFan,
                   gkz: &GkzData,
                   forced: Option<Vec<BigInt>>,
                   extra_orb: Option<usize>|
     -> Result<(Vec<Vec<BigInt>>, BTreeMap<usize, usize>)> {
        if let Some(f) = forced {
            return try_assemble(fan, gkz, &f, extra_orb).ok_or_else(|| {
                Error::UnsupportedWall("forced crossing parameter is not admissible".into())
            });
        }
        for total in 1..=SEARCH_MAX_SUM {
            for raw in vectors_with_sum(k, total) {
                let v = big_vec(&raw);
                if !gkz.nef.contains_int(&v)? || wall.contains_int(&v)? {
                    continue;
                }
                let Ok((scaled, _, _)) = integral_scale(fan, gkz, &v) else { continue };
                if !condition_iv_ok(fan, gkz, &scaled)? {
                    continue;
                }
                if let Some(found) = try_assemble(fan, gkz, &scaled, extra_orb) {
                    return Ok(found);
                }
            }
        }
        Err(Error::UnsupportedWall("no valid crossing parameter found".into()))
    };
    let (p_minus, iota_minus) = match (&p1_minus_forced, kind) {
        (Some(f), WallKind::Resolution { iex }) => pick_p1(minus, g_m, Some(f.clone()), Some(*iex))?,
        _ => pick_p1(minus, g_m, None, None)?,
    };
    let (p_plus, iota_plus) = pick_p1(plus, g_p, None, None)?;
    // The shared slots must agree by construction.
    for a in 1..k {
        if p_plus[a] != p_minus[a] {
            return Err(Error::UnsupportedWall("shared slots diverged".into()));
        }
    }
    Ok(SharedBasis { p_plus, p_minus, iota_plus, iota_minus })
}

pub fn parameter_relations(
    fan_plus: &ExtendedStackyFan,
    fan_minus: &ExtendedStackyFan,
    brane_minus: &Brane,
) -> Result<WallCrossing> {
    let kind = classify_wall_crossing(fan_plus, fan_minus)?;
    let g_p = gkz_data(fan_plus)?;
    let g_m = gkz_data(fan_minus)?;
    if g_p.kernel != g_m.kernel {
        return Err(Error::UnsupportedWall("kernel bases differ across the wall".into()));
    }
    let k = g_p.k;
    if k == 0 {
        return Err(Error::UnsupportedWall("no parameters: the fans have no wall".into()));
    }
    let wall = g_p.nef.intersect(&g_m.nef)?;
    if wall.span_rank() != k - 1 {
        return Err(Error::UnsupportedWall(format!(
            "wall has rank {} instead of {}",
            wall.span_rank(),
            k - 1
        )));
    }
    let shared = shared_wall_basis(fan_plus, fan_minus, &g_p, &g_m, &wall, &kind)?;
    let ones = |iota: &BTreeMap<usize, usize>| -> BTreeMap<usize, BigInt> {
        iota.keys().map(|&i| (i, BigInt::one())).collect()
    };
    let pb_plus = build_pbasis(
        fan_plus,
        &g_p,
        shared.p_plus.clone(),
        shared.iota_plus.clone(),
        ones(&shared.iota_plus),
    )?;
    let pb_minus = build_pbasis(
        fan_minus,
        &g_m,
        shared.p_minus.clone(),
        shared.iota_minus.clone(),
        ones(&shared.iota_minus),
    )?;
    // Crossing coefficients: p_1^+ = -c_1 p_1^- + sum_{a>=2} c_a p_a.
    let mut cols: Vec<Vec<Rat>> = vec![to_rat_vec(&pb_minus.p[0])
        .iter()
        .map(|x| -x.clone())
        .collect()];
    for a in 1..k {
        cols.push(to_rat_vec(&pb_plus.p[a]));
    }
    let mut m = vec![vec![Rat::zero(); k]; k];
    for (j, col) in cols.iter().enumerate() {
        for r in 0..k {
            m[r][j] = col[r].clone();
        }
    }
    let c = crate::exact::matrix::solve_rational(&m, &to_rat_vec(&pb_plus.p[0]))?;
    if !c[0].is_positive() {
        return Err(Error::UnsupportedWall("crossing coefficient c1 is not positive".into()));
    }
    // Brane transport.
    let tau = brane_minus.edge;
    let frame_m = fan_minus.flag_frame(brane_minus.primary)?;
    let sigma_m_triple = fan_minus.cones[brane_minus.primary.sigma];
    let primary_survives = find_cone(fan_plus, sigma_m_triple);
    let tau_survives = fan_plus.edges().contains_key(&tau);
    let zero = ExpAffine::from_int(0);
    let mut wc = if let Some(idx) = primary_survives {
        let brane_plus = fan_plus.make_brane(tau, brane_minus.framing, Some(idx))?;
        WallCrossing {
            kind,
            case: CrossingCase::One,
            k,
            gkz_plus: g_p,
            gkz_minus: g_m,
            pb_plus,
            pb_minus,
            c,
            brane_minus: brane_minus.clone(),
            brane_plus,
            brane_plus2: None,
            framing_shift: 0,
            x_exp: zero.clone(),
            y_exp: Rat::zero(),
            a0: None,
            z_exp: None,
            case3: None,
        }
    } else if tau_survives {
        // The primary cone changed but the edge survives: transport to the
        // plus-side cone on the same side of the edge.
        let pa = (fan_plus.points[tau.0][0], fan_plus.points[tau.0][1]);
        let pb = (fan_plus.points[tau.1][0], fan_plus.points[tau.1][1]);
        let i1m = frame_m.i1;
        let p1m = (fan_minus.points[i1m][0], fan_minus.points[i1m][1]);
        let sign_m = side(pa, pb, p1m).signum();
        let adj = fan_plus.edges()[&tau].clone();
        let mut sigma_p = None;
        for idx in adj {
            let opp = *fan_plus.cones[idx]
                .iter()
                .find(|&&v| v != tau.0 && v != tau.1)
                .unwrap();
            let po = (fan_plus.points[opp][0], fan_plus.points[opp][1]);
            if side(pa, pb, po).signum() == sign_m {
                sigma_p = Some(idx);
            }
        }
        let Some(sigma_p) = sigma_p else {
            return Err(Error::UnsupportedWall(
                "no plus-side cone on the brane side of the edge".into(),
            ));
        };
        let frame_p = fan_plus.flag_frame(Flag { tau, sigma: sigma_p })?;
        let ch = frame_change(&frame_m, &frame_p)?;
        let b = ch[1][0];
        let s14 = {
            let col = pb_plus.s_exponents(sigma_p, i1m)?;
            col[0].clone()
        };
        let m4 = frame_p.mn[i1m].0;
        if m4 == 0 {
            return Err(Error::UnsupportedWall("destroyed vertex has zero depth".into()));
        }
        let x_exp = ExpAffine::constant(&s14 / rint(m4));
        let brane_plus = fan_plus.make_brane(tau, brane_minus.framing + b, Some(sigma_p))?;
        let case = match kind {
            WallKind::Flop { .. } => CrossingCase::TwoA,
            WallKind::Resolution { .. } => CrossingCase::TwoB,
        };
        WallCrossing {
            kind,
            case,
            k,
            gkz_plus: g_p,
            gkz_minus: g_m,
            pb_plus,
            pb_minus,
            c,
            brane_minus: brane_minus.clone(),
            brane_plus,
            brane_plus2: None,
            framing_shift: b,
            x_exp,
            y_exp: Rat::zero(),
            a0: None,
            z_exp: None,
            case3: None,
        }
    } else {
        // The edge itself is destroyed: only a subdivision at a relative
        // interior point of the edge is supported.
        let WallKind::Resolution { iex } = kind else {
            return Err(Error::UnsupportedWall(
                "the brane edge is destroyed by the flop; no identification is defined".into(),
            ));
        };
        let (m_ex, n_ex) = frame_m.mn[iex];
        let ell = frame_m.ell;
        if m_ex != 0 || n_ex <= 0 || n_ex >= ell {
            return Err(Error::UnsupportedWall(
                "the brane edge is destroyed away from the extra ray".into(),
            ));
        }
        let (i1m, i2m, i3m) = (frame_m.i1, frame_m.i2, frame_m.i3);
        let ell1 = n_ex;
        let ell2 = ell - n_ex;
        let tau1 = (i3m.min(iex), i3m.max(iex));
        let tau2 = (iex.min(i2m), iex.max(i2m));
        let sig1 = find_cone(fan_plus, [i1m, i3m, iex]).ok_or_else(|| {
            Error::UnsupportedWall("first subdivided cone missing on the plus side".into())
        })?;
        let sig2 = find_cone(fan_plus, [i1m, iex, i2m]).ok_or_else(|| {
            Error::UnsupportedWall("second subdivided cone missing on the plus side".into())
        })?;
        let s14 = {
            let col = pb_plus.s_exponents(sig1, i2m)?;
            col[0].clone()
        };
        let m1 = frame_m.mn[i1m].0;
        let n1 = frame_m.mn[i1m].1;
        let x_exp = ExpAffine::new(
            -&s14 * rint(n1) / (rint(m1) * rint(ell)),
            &s14 / rint(ell),
        );
        let y_exp = &s14 / rint(ell);
        let brane_plus = fan_plus.make_brane(tau1, brane_minus.framing, Some(sig1))?;
        // Second brane frame determines the framing shift b'.
        let frame2 = fan_plus.flag_frame(Flag { tau: tau2, sigma: sig2 })?;
        let n1_2 = frame2.mn[i1m].1;
        let num = n1 - ell1 - n1_2;
        if num % m1 != 0 {
            return Err(Error::UnsupportedWall("second-brane framing shift is fractional".into()));
        }
        let bprime = num / m1;
        let brane_plus2 =
            fan_plus.make_brane(tau2, brane_minus.framing - bprime, Some(sig2))?;
        let x2_exp = ExpAffine::new(
            &s14 * rint(ell1 - n1) / (rint(m1) * rint(ell2)),
            &s14 / rint(ell2),
        );
        let y2_exp = &s14 / rint(ell2);
        WallCrossing {
            kind: WallKind::Resolution { iex },
            case: CrossingCase::Three,
            k,
            gkz_plus: g_p,
            gkz_minus: g_m,
            pb_plus,
            pb_minus,
            c,
            brane_minus: brane_minus.clone(),
            brane_plus,
            brane_plus2: Some(brane_plus2),
            framing_shift: 0,
            x_exp,
            y_exp,
            a0: None,
            z_exp: None,
            case3: Some(Case3Data { iex, ell1, ell2, s14, bprime, x2_exp, y2_exp }),
        }
    };
    // Inner-brane z relation: z = q_{a0} / x in each chart.
    if brane_minus.kind == BraneKind::Inner && wc.brane_plus.kind == BraneKind::Inner {
        let alpha = q_alpha(fan_minus, &wc.pb_minus, brane_minus)?;
        let a0 = select_a0(&alpha, true)?;
        let z_exp = ExpAffine::constant(wc.c[a0].clone()).add(&wc.x_exp.neg());
        wc.a0 = Some(a0);
        wc.z_exp = Some(z_exp);
    }
    Ok(wc)
}

impl WallCrossing {
    /// Substitution rules writing the minus-chart variables as monomials in
    /// the plus-chart variables (with f meaning the plus framing).
    pub fn substitution_rules(
        &self,
        names_plus: &ChartNames,
        names_minus: &ChartNames,
    ) -> BTreeMap<String, Monomial> {
        let q1 = &names_plus.q[0];
        let mut rules = BTreeMap::new();
        rules.insert(
            names_minus.q[0].clone(),
            Monomial::var(q1, ExpAffine::constant(-self.c[0].clone())),
        );
        for a in 1..self.k {
            let m = Monomial::var(&names_plus.q[a], ExpAffine::from_int(1))
                .mul(&Monomial::var(q1, ExpAffine::constant(self.c[a].clone())));
            rules.insert(names_minus.q[a].clone(), m);
        }
        rules.insert(
            names_minus.x.clone(),
            Monomial::var(&names_plus.x, ExpAffine::from_int(1))
                .mul(&Monomial::var(q1, self.x_exp.clone())),
        );
        rules.insert(
            names_minus.y.clone(),
            Monomial::var(&names_plus.y, ExpAffine::from_int(1))
                .mul(&Monomial::var(q1, ExpAffine::constant(self.y_exp.clone()))),
        );
        rules
    }

    /// Substitution rules for the second plus-side brane chart of an
    /// edge-subdivision crossing.
    pub fn second_rules(
        &self,
        names_plus: &ChartNames,
        names_plus2: &ChartNames,
    ) -> Option<BTreeMap<String, Monomial>> {
        let c3 = self.case3.as_ref()?;
        let q1 = &names_plus.q[0];
        let mut rules = BTreeMap::new();
        rules.insert(
            names_plus2.x.clone(),
            Monomial::var(&names_plus.x, ExpAffine::from_int(1))
                .mul(&Monomial::var(q1, c3.x2_exp.clone())),
        );
        rules.insert(
            names_plus2.y.clone(),
            Monomial::var(&names_plus.y, ExpAffine::from_int(1))
                .mul(&Monomial::var(q1, ExpAffine::constant(c3.y2_exp.clone()))),
        );
        Some(rules)
    }
}

/// The charts on both sides of a wall, with the substitution identities
/// verified term by term.
#[derive(Debug, Clone)]
pub struct WallCharts {
    pub minus: CurveEquation,
    pub plus: CurveEquation,
    pub plus2: Option<CurveEquation>,
    pub rules: BTreeMap<String, Monomial>,
    pub rules2: Option<BTreeMap<String, Monomial>>,
}

pub fn verify_wall_charts(
    fan_plus: &ExtendedStackyFan,
    fan_minus: &ExtendedStackyFan,
    wc: &WallCrossing,
    names_plus: &ChartNames,
    names_minus: &ChartNames,
    names_plus2: &ChartNames,
) -> Result<WallCharts> {
    let minus = build_curve(fan_minus, &wc.pb_minus, &wc.brane_minus, names_minus)?;
    let plus = build_curve(fan_plus, &wc.pb_plus, &wc.brane_plus, names_plus)?;
    let rules = wc.substitution_rules(names_plus, names_minus);
    verify_substitution_identity(
        &minus,
        &plus,
        &rules,
        &Monomial::one(),
        &rint(-wc.framing_shift),
    )?;
    let (plus2, rules2) = if let (Some(b2), Some(c3)) = (&wc.brane_plus2, &wc.case3) {
        let n2 = ChartNames {
            q: names_plus.q.clone(),
            x: names_plus2.x.clone(),
            y: names_plus2.y.clone(),
        };
        let curve2 = build_curve(fan_plus, &wc.pb_plus, b2, &n2)?;
        let rules2 = wc.second_rules(names_plus, &n2).unwrap();
        let prefactor = Monomial::var(&names_plus.y, ExpAffine::from_int(c3.ell1));
        verify_substitution_identity(&curve2, &plus, &rules2, &prefactor, &rint(-c3.bprime))?;
        (Some(curve2), Some(rules2))
    } else {
        (None, None)
    };
    Ok(WallCharts { minus, plus, plus2, rules, rules2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::fixtures;

    fn pb(name: &str) -> (ExtendedStackyFan, GkzData, PBasis) {
        let fan = fixtures::by_name(name).unwrap();
        let g = gkz_data(&fan).unwrap();
        let p = select_pbasis(&fan, &g, None).unwrap();
        (fan, g, p)
    }

    fn ivec(v: &[i64]) -> Vec<BigInt> {
        big_vec(v)
    }

    #[test]
    fn transverse_a1_basis_and_hints() {
        let (fan, g, p) = pb("a1");
        assert_eq!(g.d[1], ivec(&[-2]));
        assert_eq!(p.p, vec![ivec(&[-2])]);
        assert_eq!(p.iota.get(&1), Some(&0usize));
        // Hint with a positive multiple is accepted.
        let ph = select_pbasis(&fan, &g, Some(&[vec![-4]])).unwrap();
        assert_eq!(ph.p, vec![ivec(&[-4])]);
        assert_eq!(ph.iota_scale.get(&1), Some(&BigInt::from(2)));
        assert_eq!(ph.s[0].get(&1).unwrap(), &ivec(&[2]));
        // A hint that is not a positive multiple is rejected.
        assert!(select_pbasis(&fan, &g, Some(&[vec![1]])).is_err());
    }

    #[test]
    fn partial_resolution_bases() {
        let (_, _, p) = pb("a2");
        assert_eq!(p.p, vec![ivec(&[-1, 0]), ivec(&[2, 3])]);
        let (_, _, p) = pb("a2res");
        assert_eq!(p.p, vec![ivec(&[0, -1]), ivec(&[2, 3])]);
        let (_, _, p) = pb("kp1o");
        assert_eq!(p.p, vec![ivec(&[1])]);
        let (_, _, p) = pb("c3z3");
        assert_eq!(p.p, vec![ivec(&[-3])]);
    }

    #[test]
    fn inner_brane_parameter_direction() {
        let (fan, _, p) = pb("a1p");
        assert_eq!(p.p, vec![ivec(&[1, 0]), ivec(&[0, -2])]);
        let brane = fan.make_brane((2, 3), 0, Some(0)).unwrap();
        let alpha = q_alpha(&fan, &p, &brane).unwrap();
        assert_eq!(alpha, ivec(&[1, 0]));
        assert_eq!(select_a0(&alpha, false).unwrap(), 0);
        let slots = restricted_slots(&fan, &p, &brane).unwrap();
        assert_eq!(slots, vec![1]);
    }

    #[test]
    fn wall_classification() {
        let a1 = fixtures::a1();
        let kp1o = fixtures::kp1o();
        assert_eq!(
            classify_wall_crossing(&kp1o, &a1).unwrap(),
            WallKind::Resolution { iex: 1 }
        );
        assert!(classify_wall_crossing(&a1, &kp1o).is_err());
        let fp = fixtures::flop_plus();
        let fm = fixtures::flop_minus();
        assert!(matches!(classify_wall_crossing(&fp, &fm).unwrap(), WallKind::Flop { .. }));
    }

    #[test]
    fn transverse_a1_resolution_crossing() {
        let plus = fixtures::kp1o();
        let minus = fixtures::a1();
        let brane = minus.make_brane((2, 3), 0, None).unwrap();
        let wc = parameter_relations(&plus, &minus, &brane).unwrap();
        assert_eq!(wc.case, CrossingCase::Three);
        assert_eq!(wc.c, vec![rat(1, 2)]);
        assert_eq!(wc.x_exp, ExpAffine::new(rat(0, 1), rat(1, 2)));
        assert_eq!(wc.y_exp, rat(1, 2));
        let c3 = wc.case3.as_ref().unwrap();
        assert_eq!((c3.ell1, c3.ell2, c3.bprime), (1, 1, -1));
        assert_eq!(c3.x2_exp, ExpAffine::new(rat(1, 1), rat(1, 1)));
        assert_eq!(c3.y2_exp, rat(1, 1));
        assert_eq!(wc.brane_plus.edge, (1, 2));
        assert_eq!(wc.brane_plus2.as_ref().unwrap().edge, (1, 3));
        assert_eq!(wc.brane_plus2.as_ref().unwrap().framing, 1);
        let np = ChartNames::suffixed(1, "+");
        let nm = ChartNames::suffixed(1, "-");
        let n2 = ChartNames { q: np.q.clone(), x: "x+2".into(), y: "y+2".into() };
        let charts = verify_wall_charts(&plus, &minus, &wc, &np, &nm, &n2).unwrap();
        assert_eq!(charts.minus.render(), "x-*y-^-f + q-1*y- + 1 + y-^2");
        assert_eq!(charts.plus.render(), "x+*y+^-f + y+ + 1 + q+1*y+^2");
        assert_eq!(charts.plus2.unwrap().render(), "x+2*y+2^-f + 1 + q+1*y+2^-1 + y+2");
    }

    #[test]
    fn partial_resolution_crossing() {
        let plus = fixtures::a2res();
        let minus = fixtures::a2();
        let brane = minus.make_brane((2, 3), 0, None).unwrap();
        let wc = parameter_relations(&plus, &minus, &brane).unwrap();
        assert_eq!(wc.case, CrossingCase::Three);
        assert_eq!(wc.c, vec![rat(2, 3), rat(-1, 3)]);
        assert_eq!(wc.x_exp, ExpAffine::new(rat(0, 1), rat(1, 3)));
        assert_eq!(wc.y_exp, rat(1, 3));
        let c3 = wc.case3.as_ref().unwrap();
        assert_eq!((c3.ell1, c3.ell2, c3.bprime), (2, 1, -2));
        let np = ChartNames::suffixed(2, "+");
        let nm = ChartNames::suffixed(2, "-");
        let n2 = ChartNames { q: np.q.clone(), x: "x+2".into(), y: "y+2".into() };
        let charts = verify_wall_charts(&plus, &minus, &wc, &np, &nm, &n2).unwrap();
        assert_eq!(
            charts.minus.render(),
            "x-*y-^-f + q-1*y-^2 + 1 + y-^3 + q-2*y-"
        );
        assert_eq!(
            charts.plus.render(),
            "x+*y+^-f + y+^2 + 1 + q+1*y+^3 + q+2*y+"
        );
    }

    #[test]
    fn flop_crossing() {
        let plus = fixtures::flop_plus();
        let minus = fixtures::flop_minus();
        let brane = minus.make_brane((1, 2), 0, Some(0)).unwrap();
        let wc = parameter_relations(&plus, &minus, &brane).unwrap();
        assert_eq!(wc.case, CrossingCase::TwoA);
        assert_eq!(wc.c, vec![rat(1, 1)]);
        assert_eq!(wc.x_exp, ExpAffine::from_int(1));
        assert_eq!(wc.y_exp, rat(0, 1));
        assert_eq!(wc.framing_shift, -1);
        let np = ChartNames::suffixed(1, "+");
        let nm = ChartNames::suffixed(1, "-");
        let n2 = ChartNames { q: np.q.clone(), x: "x+2".into(), y: "y+2".into() };
        let charts = verify_wall_charts(&plus, &minus, &wc, &np, &nm, &n2).unwrap();
        assert_eq!(charts.plus.render(), "x+*y+^-f + y+ + 1 + q+1*x+*y+^(-f-1)");
    }

    #[test]
    fn orbifold_to_resolved_vertex_crossing() {
        let plus = fixtures::kp2();
        let minus = fixtures::c3z3();
        let brane = minus.make_brane((2, 3), 0, None).unwrap();
        let wc = parameter_relations(&plus, &minus, &brane).unwrap();
        assert_eq!(wc.case, CrossingCase::TwoB);
        assert_eq!(wc.c, vec![rat(1, 3)]);
        assert_eq!(wc.x_exp, ExpAffine::constant(rat(1, 3)));
        assert_eq!(wc.framing_shift, 0);
        let np = ChartNames::suffixed(1, "+");
        let nm = ChartNames::suffixed(1, "-");
        let n2 = ChartNames { q: np.q.clone(), x: "x+2".into(), y: "y+2".into() };
        let charts = verify_wall_charts(&plus, &minus, &wc, &np, &nm, &n2).unwrap();
        assert_eq!(
            charts.minus.render(),
            "q-1*x-*y-^-f + x-^3*y-^(-3f-1) + y- + 1"
        );
    }

    #[test]
    fn brane_away_from_wall() {
        let plus = fixtures::case1_plus();
        let minus = fixtures::case1_minus();
        let brane = minus.make_brane((1, 3), 0, None).unwrap();
        let wc = parameter_relations(&plus, &minus, &brane).unwrap();
        assert_eq!(wc.case, CrossingCase::One);
        assert_eq!(wc.c, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(wc.x_exp, ExpAffine::from_int(0));
        assert_eq!(wc.framing_shift, 0);
        let np = ChartNames::suffixed(2, "+");
        let nm = ChartNames::suffixed(2, "-");
        let n2 = ChartNames { q: np.q.clone(), x: "x+2".into(), y: "y+2".into() };
        verify_wall_charts(&plus, &minus, &wc, &np, &nm, &n2).unwrap();
    }

    #[test]
    fn inner_brane_edge_subdivision_crossing() {
        let plus = fixtures::a1pres();
        let minus = fixtures::a1p();
        let brane = minus.make_brane((2, 3), 0, Some(0)).unwrap();
        let wc = parameter_relations(&plus, &minus, &brane).unwrap();
        assert_eq!(wc.case, CrossingCase::Three);
        assert_eq!(wc.c, vec![rat(1, 2), rat(0, 1)]);
        assert_eq!(wc.a0, Some(1));
        assert_eq!(
            wc.z_exp,
            Some(ExpAffine::new(rat(0, 1), rat(-1, 2)))
        );
        let np = ChartNames::suffixed(2, "+");
        let nm = ChartNames::suffixed(2, "-");
        let n2 = ChartNames { q: np.q.clone(), x: "x+2".into(), y: "y+2".into() };
        verify_wall_charts(&plus, &minus, &wc, &np, &nm, &n2).unwrap();
    }
}
