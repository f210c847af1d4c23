//! Truncated multivariate power series, Newton branch solving for mirror
//! curves, and the framed disk potential.
//!
//! Series are sparse maps from exponent vectors (over a fixed variable
//! roster) to coefficients, truncated at a total degree. Coefficients are
//! either exact cyclotomic numbers or complex floats, behind one trait.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::curve::ChartNames;
use crate::error::{Error, Result};
use crate::exact::{rat_to_f64, Cyclo, Rat};
use crate::fan::{Brane, ExtendedStackyFan};
use crate::gkz::PBasis;

/// Coefficient field interface shared by the exact and float backends.
pub trait Coeff: Clone + std::fmt::Debug {
    type Ctx: Clone + std::fmt::Debug;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_rat(ctx: &Self::Ctx, r: &Rat) -> Self;
    /// e^{2 pi i num / den}.
    fn root_of_unity(ctx: &Self::Ctx, num: i64, den: i64) -> Result<Self>;
    fn add(&self, o: &Self) -> Result<Self>;
    fn sub(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_negligible(&self) -> bool;
    /// Whether the value lies in Q (exactly, or up to float noise).
    fn is_rational(&self) -> bool;
    fn embed(&self) -> Complex64;
}

impl Coeff for Cyclo {
    type Ctx = u32;

    fn zero(ctx: &u32) -> Self {
        Cyclo::zero(*ctx)
    }
    fn one(ctx: &u32) -> Self {
        Cyclo::one(*ctx)
    }
    fn from_rat(ctx: &u32, r: &Rat) -> Self {
        Cyclo::from_rat(*ctx, r)
    }
    fn root_of_unity(ctx: &u32, num: i64, den: i64) -> Result<Self> {
        Cyclo::root_of_unity(*ctx, num, den)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Cyclo::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Cyclo::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Cyclo::mul(self, o)
    }
    fn neg(&self) -> Self {
        Cyclo::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        Cyclo::inv(self)
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn is_rational(&self) -> bool {
        Cyclo::is_rational(self)
    }
    fn embed(&self) -> Complex64 {
        Cyclo::embed(self)
    }
}

const FLOAT_EPS: f64 = 1e-11;

impl Coeff for Complex64 {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one(_: &()) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rat(_: &(), r: &Rat) -> Self {
        Complex64::new(rat_to_f64(r), 0.0)
    }
    fn root_of_unity(_: &(), num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::NotInvertible("zero root order".into()));
        }
        let angle = 2.0 * std::f64::consts::PI * (num as f64) / (den as f64);
        Ok(Complex64::new(angle.cos(), angle.sin()))
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if self.norm_sqr() == 0.0 {
            return Err(Error::NotInvertible("zero complex coefficient".into()));
        }
        Ok(Complex64::new(1.0, 0.0) / self)
    }
    fn is_negligible(&self) -> bool {
        self.norm() < FLOAT_EPS
    }
    fn is_rational(&self) -> bool {
        self.im.abs() <= 1e-9 * (1.0 + self.re.abs())
    }
    fn embed(&self) -> Complex64 {
        *self
    }
}

/// Roster, truncation order, and per-variable x-weight (for the open-string
/// degree: x counts +1, the inner variable z counts -1, parameters count 0).
#[derive(Debug, Clone)]
pub struct SeriesCtx<C: Coeff> {
    pub vars: Vec<String>,
    pub xweight: Vec<i64>,
    pub order: usize,
    pub cctx: C::Ctx,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C: Coeff> {
    pub terms: BTreeMap<Vec<u16>, C>,
}

fn key_degree(k: &[u16]) -> usize {
    k.iter().map(|&e| e as usize).sum()
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero() -> Self {
        TruncatedSeries { terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &SeriesCtx<C>, c: C) -> Self {
        let mut s = Self::zero();
        s.insert(vec![0; ctx.vars.len()], c);
        s
    }

    pub fn one(ctx: &SeriesCtx<C>) -> Self {
        Self::constant(ctx, C::one(&ctx.cctx))
    }

    pub fn var(ctx: &SeriesCtx<C>, pos: usize) -> Self {
        let mut key = vec![0u16; ctx.vars.len()];
        key[pos] = 1;
        let mut s = Self::zero();
        s.insert(key, C::one(&ctx.cctx));
        s
    }

    fn insert(&mut self, key: Vec<u16>, c: C) {
        if !c.is_negligible() {
            self.terms.insert(key, c);
        }
    }

    fn upsert(&mut self, key: Vec<u16>, c: &C) -> Result<()> {
        match self.terms.get_mut(&key) {
            Some(cur) => {
                let nv = cur.add(c)?;
                if nv.is_negligible() {
                    self.terms.remove(&key);
                } else {
                    *cur = nv;
                }
            }
            None => {
                if !c.is_negligible() {
                    self.terms.insert(key, c.clone());
                }
            }
        }
        Ok(())
    }

    pub fn is_negligible(&self) -> bool {
        self.terms.values().all(|c| c.is_negligible())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.upsert(k.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Result<Self> {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.insert(k.clone(), v.mul(c)?);
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Self, ctx: &SeriesCtx<C>) -> Result<Self> {
        let mut out = Self::zero();
        for (ka, ca) in &self.terms {
            let da = key_degree(ka);
            for (kb, cb) in &o.terms {
                if da + key_degree(kb) > ctx.order {
                    continue;
                }
                let key: Vec<u16> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.upsert(key, &ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn constant_term(&self, ctx: &SeriesCtx<C>) -> C {
        self.terms
            .get(&vec![0u16; ctx.vars.len()])
            .cloned()
            .unwrap_or_else(|| C::zero(&ctx.cctx))
    }

    /// Multiplicative inverse (constant term must be invertible), by Newton
    /// iteration doubling the correct order.
    pub fn inv(&self, ctx: &SeriesCtx<C>) -> Result<Self> {
        let c0 = self.constant_term(ctx);
        let mut g = Self::constant(ctx, c0.inv()?);
        let two = Self::constant(ctx, C::from_rat(&ctx.cctx, &crate::exact::rint(2)));
        let mut reached = 1usize;
        while reached <= ctx.order {
            // g <- g * (2 - f g)
            let fg = self.mul(&g, ctx)?;
            let corr = two.sub(&fg)?;
            g = g.mul(&corr, ctx)?;
            reached *= 2;
        }
        Ok(g)
    }

    pub fn pow(&self, e: i64, ctx: &SeriesCtx<C>) -> Result<Self> {
        if e < 0 {
            return self.inv(ctx)?.pow(-e, ctx);
        }
        let mut acc = Self::one(ctx);
        let mut base = self.clone();
        let mut n = e as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, ctx)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, ctx)?;
            }
        }
        Ok(acc)
    }

    /// Open-string Euler operator: multiply each term by its x-degree.
    pub fn x_log_derivative(&self, ctx: &SeriesCtx<C>) -> Result<Self> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let d: i64 = k
                .iter()
                .zip(&ctx.xweight)
                .map(|(&e, &w)| (e as i64) * w)
                .sum();
            if d == 0 {
                continue;
            }
            out.insert(k.clone(), c.mul(&C::from_rat(&ctx.cctx, &crate::exact::rint(d)))?);
        }
        Ok(out)
    }

    /// Inverse of the Euler operator; terms of x-degree zero are rejected.
    pub fn x_antiderivative(&self, ctx: &SeriesCtx<C>) -> Result<Self> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let d: i64 = k
                .iter()
                .zip(&ctx.xweight)
                .map(|(&e, &w)| (e as i64) * w)
                .sum();
            if d == 0 {
                return Err(Error::Series(
                    "antiderivative applied to a term of open-string degree zero".into(),
                ));
            }
            let f = Rat::new(1.into(), d.into());
            out.insert(k.clone(), c.mul(&C::from_rat(&ctx.cctx, &f))?);
        }
        Ok(out)
    }

    /// Keep only terms supported on the given roster positions.
    pub fn project(&self, keep: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| {
                k.iter()
                    .enumerate()
                    .all(|(pos, &e)| e == 0 || keep.contains(&pos))
            })
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        TruncatedSeries { terms }
    }

    pub fn evaluate(&self, ctx: &SeriesCtx<C>, vals: &[C]) -> Result<C> {
        if vals.len() != ctx.vars.len() {
            return Err(Error::Dimension("evaluation point length".into()));
        }
        let mut acc = C::zero(&ctx.cctx);
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (pos, &e) in k.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&vals[pos])?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    pub fn map_embed(&self) -> TruncatedSeries<Complex64> {
        TruncatedSeries {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.embed()))
                .filter(|(_, c)| c.norm() >= FLOAT_EPS)
                .collect(),
        }
    }
}

/// The mirror-curve equation of a brane chart prepared for branch solving:
/// one record (rational coefficient, roster exponents, y-exponent) per
/// lattice point, with the framing bound to the brane's integer framing. For
/// inner branes the slot a0 is substituted by x*z.
#[derive(Debug, Clone)]
pub struct BranchSystem<C: Coeff> {
    pub ctx: SeriesCtx<C>,
    pub ell: i64,
    pub terms: Vec<(Rat, Vec<u16>, i64)>,
    /// Roster position of each parameter slot (a0 maps to the z position).
    pub slot_pos: Vec<usize>,
    pub x_pos: usize,
    pub z_pos: Option<usize>,
}

pub fn branch_system<C: Coeff>(
    fan: &ExtendedStackyFan,
    pbasis: &PBasis,
    brane: &Brane,
    names: &ChartNames,
    a0: Option<usize>,
    order: usize,
    cctx: C::Ctx,
) -> Result<BranchSystem<C>> {
    let frame = fan.flag_frame(brane.primary)?;
    let k = pbasis.k();
    if names.q.len() != k {
        return Err(Error::Dimension("chart names do not match the parameter count".into()));
    }
    if let Some(a0) = a0 {
        if a0 >= k {
            return Err(Error::Dimension("inner slot out of range".into()));
        }
    }
    let mut vars: Vec<String> = vec![];
    let mut xweight: Vec<i64> = vec![];
    let mut slot_pos = vec![0usize; k];
    for a in 0..k {
        if Some(a) == a0 {
            continue;
        }
        slot_pos[a] = vars.len();
        vars.push(names.q[a].clone());
        xweight.push(0);
    }
    let x_pos = vars.len();
    vars.push(names.x.clone());
    xweight.push(1);
    let z_pos = a0.map(|a| {
        slot_pos[a] = vars.len();
        vars.push("z".into());
        xweight.push(-1);
        vars.len() - 1
    });
    let sigma = brane.primary.sigma;
    let mut terms = vec![];
    for i in 0..fan.r() {
        let (m, n) = frame.mn[i];
        let s: Vec<Rat> = if fan.cones[sigma].contains(&i) {
            vec![Rat::zero(); k]
        } else {
            pbasis.s_exponents(sigma, i)?
        };
        let mut key = vec![0u16; vars.len()];
        let mut xdeg = m;
        for (a, e) in s.iter().enumerate() {
            if !e.is_integer() || e.is_negative() {
                return Err(Error::Series("chart exponent is not a nonnegative integer".into()));
            }
            let ei = e.to_integer().to_i64().ok_or_else(|| Error::Series("exponent overflow".into()))?;
            if Some(a) == a0 {
                xdeg += ei;
                key[slot_pos[a]] += u16::try_from(ei)
                    .map_err(|_| Error::Series("exponent overflow".into()))?;
            } else {
                key[slot_pos[a]] += u16::try_from(ei)
                    .map_err(|_| Error::Series("exponent overflow".into()))?;
            }
        }
        if xdeg < 0 {
            return Err(Error::Series(
                "negative open-variable exponent: inner substitution missing".into(),
            ));
        }
        key[x_pos] += u16::try_from(xdeg).map_err(|_| Error::Series("exponent overflow".into()))?;
        let y_exp = n - m * brane.framing;
        terms.push((Rat::from_integer(1.into()), key, y_exp));
    }
    let ctx = SeriesCtx { vars, xweight, order, cctx };
    Ok(BranchSystem { ctx, ell: frame.ell, terms, slot_pos, x_pos, z_pos })
}

impl<C: Coeff> BranchSystem<C> {
    /// Evaluate the equation (or its y-derivative) at a unit series y = kappa.
    fn eval_at(&self, kappa: &TruncatedSeries<C>, derivative: bool) -> Result<TruncatedSeries<C>> {
        let ctx = &self.ctx;
        let mut powers: BTreeMap<i64, TruncatedSeries<C>> = BTreeMap::new();
        let mut acc = TruncatedSeries::zero();
        for (coeff, key, y_exp) in &self.terms {
            let (c, e) = if derivative {
                if *y_exp == 0 {
                    continue;
                }
                (coeff * Rat::from_integer((*y_exp).into()), *y_exp - 1)
            } else {
                (coeff.clone(), *y_exp)
            };
            let kp = match powers.get(&e) {
                Some(p) => p.clone(),
                None => {
                    let p = kappa.pow(e, ctx)?;
                    powers.insert(e, p.clone());
                    p
                }
            };
            let mut mono = TruncatedSeries::constant(ctx, C::from_rat(&ctx.cctx, &c));
            if key_degree(key) > ctx.order {
                continue;
            }
            let mut kterm = TruncatedSeries::zero();
            kterm.insert(key.clone(), C::one(&ctx.cctx));
            mono = mono.mul(&kterm, ctx)?;
            acc = acc.add(&mono.mul(&kp, ctx)?)?;
        }
        Ok(acc)
    }

    /// Conductor needed by the exact backend for this chart alone.
    pub fn conductor(&self) -> u32 {
        2 * (self.ell as u32)
    }

    /// All ell branches of y near the roots of 1 + y^ell.
    pub fn newton_branches(&self) -> Result<Vec<TruncatedSeries<C>>> {
        let ctx = &self.ctx;
        let mut out = vec![];
        for j in 1..=self.ell {
            let seed = C::root_of_unity(&ctx.cctx, 2 * j - 1, 2 * self.ell)?;
            let mut kappa = TruncatedSeries::constant(ctx, seed);
            let mut steps = 0usize;
            loop {
                let res = self.eval_at(&kappa, false)?;
                if res.is_negligible() {
                    break;
                }
                steps += 1;
                if steps > ctx.order + 4 {
                    return Err(Error::Series("branch iteration did not converge".into()));
                }
                let dy = self.eval_at(&kappa, true)?;
                let corr = res.mul(&dy.inv(ctx)?, ctx)?;
                kappa = kappa.sub(&corr)?;
            }
            out.push(kappa);
        }
        Ok(out)
    }
}

/// The m x m discrete pairing matrix [w^{-ij}] with w = e^{2 pi i / m},
/// indices 1..m. Satisfies U U^* = m I.
pub fn u_matrix<C: Coeff>(cctx: &C::Ctx, m: i64) -> Result<Vec<Vec<C>>> {
    let mut rows = vec![];
    for i in 1..=m {
        let mut row = vec![];
        for j in 1..=m {
            row.push(C::root_of_unity(cctx, -(i * j) % m, m)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Framed disk potentials of the branches: W_j with
/// h = U_ell (x dlog kappa_1 / kappa, ...), W_j = xi^{-(ell-j)} D^{-2} h_j,
/// xi = e^{-pi i / ell}.
pub fn disk_potential<C: Coeff>(
    sys: &BranchSystem<C>,
    branches: &[TruncatedSeries<C>],
) -> Result<Vec<TruncatedSeries<C>>> {
    let ctx = &sys.ctx;
    let ell = sys.ell;
    if branches.len() != ell as usize {
        return Err(Error::Series("branch count does not match the edge order".into()));
    }
    let mut g = vec![];
    for kappa in branches {
        let num = kappa.x_log_derivative(ctx)?;
        g.push(num.mul(&kappa.inv(ctx)?, ctx)?);
    }
    let mut out = vec![];
    for i in 0..ell as usize {
        // Pair with w^{+ij} rather than w^{-ij}: complex conjugation of the
        // coefficients swaps branch i with branch ell + 1 - i (their leading
        // roots of unity are conjugate), and only this orientation of the
        // pairing makes every component invariant, hence rational.
        let mut h = TruncatedSeries::zero();
        for (jdx, gj) in g.iter().enumerate() {
            let uc = C::root_of_unity(&ctx.cctx, (i as i64 + 1) * (jdx as i64 + 1), ell)?;
            h = h.add(&gj.scale(&uc)?)?;
        }
        let anti2 = h.x_antiderivative(ctx)?.x_antiderivative(ctx)?;
        let j = (i + 1) as i64;
        let xi_pow = C::root_of_unity(&ctx.cctx, ell - j, 2 * ell)?;
        let w = anti2.scale(&xi_pow)?;
        if let Some((key, _)) = w.terms.iter().find(|(_, c)| !c.is_rational()) {
            return Err(Error::Series(format!(
                "disk potential W_{} has a non-rational coefficient at {:?}",
                j, key
            )));
        }
        out.push(w);
    }
    Ok(out)
}

/// Elementary symmetric series e_1..e_l of the branches.
pub fn elementary_symmetric<C: Coeff>(
    ctx: &SeriesCtx<C>,
    branches: &[TruncatedSeries<C>],
) -> Result<Vec<TruncatedSeries<C>>> {
    // Multiply out prod (1 + t kappa_i) coefficient-wise in t.
    let mut e: Vec<TruncatedSeries<C>> = vec![TruncatedSeries::one(ctx)];
    for kappa in branches {
        let mut next = vec![TruncatedSeries::zero(); e.len() + 1];
        for (d, ed) in e.iter().enumerate() {
            next[d] = next[d].add(ed)?;
            let lifted = ed.mul(kappa, ctx)?;
            next[d + 1] = next[d + 1].add(&lifted)?;
        }
        e = next;
    }
    Ok(e[1..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rint};
    use crate::fixtures;
    use crate::gkz;

    fn exact_system(name: &str, order: usize) -> (BranchSystem<Cyclo>, u32) {
        let fan = fixtures::by_name(name).unwrap();
        let g = gkz::gkz_data(&fan).unwrap();
        let pb = gkz::select_pbasis(&fan, &g, None).unwrap();
        let (edge, pc) = fixtures::default_brane(name).unwrap();
        let brane = fan.make_brane(edge, 0, pc).unwrap();
        let a0 = if brane.secondary.is_some() {
            let alpha = gkz::q_alpha(&fan, &pb, &brane).unwrap();
            Some(gkz::select_a0(&alpha, false).unwrap())
        } else {
            None
        };
        let names = ChartNames::plain(g.k);
        let ell = fan.edge_order(brane.edge) as u32;
        let n = 2 * ell;
        let sys = branch_system::<Cyclo>(&fan, &pb, &brane, &names, a0, order, n).unwrap();
        (sys, n)
    }

    #[test]
    fn smooth_chart_disk_potential_is_the_classical_series() {
        let (sys, _) = exact_system("c3", 8);
        let branches = sys.newton_branches().unwrap();
        assert_eq!(branches.len(), 1);
        let w = disk_potential(&sys, &branches).unwrap();
        // W = sum (-1)^(d-1) x^d / d^2.
        for d in 1..=8i64 {
            let key = vec![d as u16];
            let got = w[0].terms.get(&key).cloned().unwrap_or_else(|| Cyclo::zero(2));
            let expect = Cyclo::from_rat(
                2,
                &(rat(1, d * d) * rint(if d % 2 == 1 { 1 } else { -1 })),
            );
            assert_eq!(got, expect, "degree {}", d);
        }
    }

    #[test]
    fn discrete_pairing_matrix() {
        let u = u_matrix::<Cyclo>(&4, 2).unwrap();
        let minus_one = Cyclo::from_rat(4, &rint(-1));
        let one = Cyclo::one(4);
        assert_eq!(u[0], vec![minus_one, one.clone()]);
        assert_eq!(u[1], vec![one.clone(), one.clone()]);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Cyclo::zero(4);
                for t in 0..2 {
                    acc = acc.add(&u[i][t].mul(&u[j][t].conj()).unwrap()).unwrap();
                }
                let expect = if i == j { rint(2) } else { rint(0) };
                assert_eq!(acc, Cyclo::from_rat(4, &expect));
            }
        }
    }

    #[test]
    fn transverse_a1_restricted_invariants() {
        let (sys, n) = exact_system("a1", 8);
        let branches = sys.newton_branches().unwrap();
        assert_eq!(branches.len(), 2);
        // Project to the restricted subspace (the orbifold slot q1 only).
        let keep = vec![sys.slot_pos[0]];
        let proj: Vec<_> = branches.iter().map(|b| b.project(&keep)).collect();
        let e = elementary_symmetric(&sys.ctx, &proj).unwrap();
        // e_1 = -q1, e_2 = 1.
        let q1 = TruncatedSeries::var(&sys.ctx, sys.slot_pos[0]);
        assert!(e[0].add(&q1).unwrap().is_negligible());
        assert!(e[1].sub(&TruncatedSeries::one(&sys.ctx)).unwrap().is_negligible());
        let _ = n;
    }

    #[test]
    fn inner_chart_branch_system_has_valid_exponents() {
        let (sys, _) = exact_system("a1p", 8);
        assert_eq!(sys.ctx.vars, vec!["q2".to_string(), "x".to_string(), "z".to_string()]);
        assert_eq!(sys.ctx.xweight, vec![0, 1, -1]);
        let branches = sys.newton_branches().unwrap();
        let w = disk_potential(&sys, &branches).unwrap();
        assert_eq!(w.len(), 2);
        // The potential must contain mixed x/z terms from the inner leg.
        assert!(w
            .iter()
            .any(|wj| wj.terms.keys().any(|k| k[2] > 0)));
    }

    #[test]
    fn float_backend_matches_the_exact_one() {
        let fan = fixtures::a1();
        let g = gkz::gkz_data(&fan).unwrap();
        let pb = gkz::select_pbasis(&fan, &g, None).unwrap();
        let brane = fan.make_brane((2, 3), 1, None).unwrap();
        let names = ChartNames::plain(1);
        let se = branch_system::<Cyclo>(&fan, &pb, &brane, &names, None, 8, 4).unwrap();
        let sf = branch_system::<Complex64>(&fan, &pb, &brane, &names, None, 8, ()).unwrap();
        let be = se.newton_branches().unwrap();
        let bf = sf.newton_branches().unwrap();
        let pt_e = vec![Cyclo::from_rat(4, &rat(1, 50)), Cyclo::from_rat(4, &rat(1, 40))];
        let pt_f = vec![Complex64::new(0.02, 0.0), Complex64::new(0.025, 0.0)];
        for (e, f) in be.iter().zip(&bf) {
            let ve = e.evaluate(&se.ctx, &pt_e).unwrap().embed();
            let vf = f.evaluate(&sf.ctx, &pt_f).unwrap();
            assert!((ve - vf).norm() < 1e-9, "{} vs {}", ve, vf);
        }
    }
}
