//! Framed mirror-curve charts.
//!
//! A chart attaches to a flag (edge + adjacent maximal cone) a Laurent
//! polynomial with one term per lattice point. Exponents are affine
//! expressions a + b*f in the framing symbol f, so identities can be checked
//! with the framing left symbolic.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rint, Rat};
use crate::fan::{frame_change, Brane, ExtendedStackyFan, FlagFrame};
use crate::gkz::PBasis;

/// Exponent of the form c + f_coeff * f, with f the framing symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpAffine {
    pub c: Rat,
    pub f_coeff: Rat,
}

impl ExpAffine {
    pub fn constant(c: Rat) -> Self {
        ExpAffine { c, f_coeff: Rat::zero() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rint(c))
    }

    pub fn new(c: Rat, f_coeff: Rat) -> Self {
        ExpAffine { c, f_coeff }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.f_coeff.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ExpAffine { c: &self.c + &o.c, f_coeff: &self.f_coeff + &o.f_coeff }
    }

    pub fn neg(&self) -> Self {
        ExpAffine { c: -self.c.clone(), f_coeff: -self.f_coeff.clone() }
    }

    /// Product of affine exponents; defined only when at most one factor
    /// carries the framing symbol.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if !self.f_coeff.is_zero() && !o.f_coeff.is_zero() {
            return Err(Error::Series("framing symbol would appear quadratically".into()));
        }
        Ok(ExpAffine {
            c: &self.c * &o.c,
            f_coeff: &self.c * &o.f_coeff + &self.f_coeff * &o.c,
        })
    }

    /// Substitute f -> f + delta (an integer reindexing of the framing).
    pub fn shift_framing(&self, delta: &Rat) -> Self {
        ExpAffine { c: &self.c + &self.f_coeff * delta, f_coeff: self.f_coeff.clone() }
    }

    /// Bind the framing symbol to a number.
    pub fn bind(&self, f: &Rat) -> Rat {
        &self.c + &self.f_coeff * f
    }
}

/// Monomial with rational coefficient and affine exponents in named variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coeff: Rat,
    pub exps: BTreeMap<String, ExpAffine>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { coeff: Rat::one(), exps: BTreeMap::new() }
    }

    pub fn var(name: &str, exp: ExpAffine) -> Self {
        let mut m = Self::one();
        if !exp.is_zero() {
            m.exps.insert(name.to_string(), exp);
        }
        m
    }

    pub fn normalize(mut self) -> Self {
        self.exps.retain(|_, e| !e.is_zero());
        self
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut exps = self.exps.clone();
        for (v, e) in &o.exps {
            match exps.get_mut(v) {
                Some(cur) => *cur = cur.add(e),
                None => {
                    exps.insert(v.clone(), e.clone());
                }
            }
        }
        Monomial { coeff: &self.coeff * &o.coeff, exps }.normalize()
    }

    /// Raise to an affine exponent. The coefficient must be one unless the
    /// exponent is a plain integer.
    pub fn pow(&self, e: &ExpAffine) -> Result<Self> {
        let coeff = if self.coeff.is_one() {
            Rat::one()
        } else if e.f_coeff.is_zero() && e.c.is_integer() && !e.c.is_negative() {
            let mut acc = Rat::one();
            let mut n = e.c.to_integer();
            while n.is_positive() {
                acc *= &self.coeff;
                n -= 1;
            }
            acc
        } else {
            return Err(Error::Series("cannot raise a non-unit coefficient to a symbolic power".into()));
        };
        let mut exps = BTreeMap::new();
        for (v, old) in &self.exps {
            let ne = old.mul(e)?;
            if !ne.is_zero() {
                exps.insert(v.clone(), ne);
            }
        }
        Ok(Monomial { coeff, exps })
    }

    /// Substitute variables by monomials; unmapped variables are kept.
    pub fn substitute(&self, rules: &BTreeMap<String, Monomial>) -> Result<Monomial> {
        let mut out = Monomial { coeff: self.coeff.clone(), exps: BTreeMap::new() };
        for (v, e) in &self.exps {
            match rules.get(v) {
                Some(rule) => out = out.mul(&rule.pow(e)?),
                None => out = out.mul(&Monomial::var(v, e.clone())),
            }
        }
        Ok(out.normalize())
    }

    /// Substitute f -> f + delta in all exponents.
    pub fn shift_framing(&self, delta: &Rat) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|(v, e)| (v.clone(), e.shift_framing(delta)))
            .collect();
        Monomial { coeff: self.coeff.clone(), exps }
    }

    pub fn bind_framing(&self, f: &Rat) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|(v, e)| (v.clone(), ExpAffine::constant(e.bind(f))))
            .filter(|(_, e): &(String, ExpAffine)| !e.is_zero())
            .collect();
        Monomial { coeff: self.coeff.clone(), exps }
    }
}

fn render_exp(e: &ExpAffine) -> String {
    let fc = &e.f_coeff;
    let c = &e.c;
    if fc.is_zero() {
        if c.is_integer() {
            return format!("{}", c.to_integer());
        }
        return format!("({}/{})", c.numer(), c.denom());
    }
    // Affine in f: render as (af+b) with short forms for bare f and -f.
    let f_part = if fc.is_one() {
        "f".to_string()
    } else if (-fc.clone()).is_one() {
        "-f".to_string()
    } else if fc.is_integer() {
        format!("{}f", fc.to_integer())
    } else if fc.numer().is_one() {
        format!("f/{}", fc.denom())
    } else if (-fc.numer()).is_one() {
        format!("-f/{}", fc.denom())
    } else {
        format!("{}f/{}", fc.numer(), fc.denom())
    };
    if c.is_zero() {
        if f_part == "f" || f_part == "-f" {
            return f_part;
        }
        return format!("({})", f_part);
    }
    let c_part = if c.is_integer() {
        let n = c.to_integer();
        if n.is_positive() {
            format!("+{}", n)
        } else {
            format!("{}", n)
        }
    } else if c.is_positive() {
        format!("+{}/{}", c.numer(), c.denom())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    };
    format!("({}{})", f_part, c_part)
}

/// Render a monomial with variables ordered by `roster` (unlisted variables
/// follow alphabetically).
pub fn render_monomial(m: &Monomial, roster: &[String]) -> String {
    let mut factors: Vec<String> = vec![];
    let mut seen: Vec<&String> = vec![];
    let emit = |v: &String, e: &ExpAffine, factors: &mut Vec<String>| {
        let es = render_exp(e);
        if es == "1" {
            factors.push(v.clone());
        } else {
            factors.push(format!("{}^{}", v, es));
        }
    };
    for v in roster {
        if let Some(e) = m.exps.get(v) {
            emit(v, e, &mut factors);
            seen.push(v);
        }
    }
    for (v, e) in &m.exps {
        if !seen.iter().any(|s| *s == v) {
            emit(v, e, &mut factors);
        }
    }
    let body = factors.join("*");
    if m.coeff.is_one() {
        if body.is_empty() {
            "1".to_string()
        } else {
            body
        }
    } else if body.is_empty() {
        format!("{}", m.coeff)
    } else {
        format!("{}*{}", m.coeff, body)
    }
}

/// Variable names of a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartNames {
    pub q: Vec<String>,
    pub x: String,
    pub y: String,
}

impl ChartNames {
    pub fn plain(k: usize) -> Self {
        ChartNames {
            q: (1..=k).map(|a| format!("q{}", a)).collect(),
            x: "x".into(),
            y: "y".into(),
        }
    }

    pub fn suffixed(k: usize, suffix: &str) -> Self {
        ChartNames {
            q: (1..=k).map(|a| format!("q{}{}", suffix, a)).collect(),
            x: format!("x{}", suffix),
            y: format!("y{}", suffix),
        }
    }

    pub fn roster(&self) -> Vec<String> {
        let mut r = self.q.clone();
        r.push(self.x.clone());
        r.push(self.y.clone());
        r
    }
}

/// A framed mirror-curve chart: one monomial per lattice point, in order.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveEquation {
    pub terms: Vec<Monomial>,
    pub frame: FlagFrame,
    pub names: ChartNames,
}

impl CurveEquation {
    pub fn render(&self) -> String {
        let roster = self.names.roster();
        self.terms
            .iter()
            .map(|t| render_monomial(t, &roster))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn bind_framing(&self, f: i64) -> CurveEquation {
        let fr = rint(f);
        CurveEquation {
            terms: self.terms.iter().map(|t| t.bind_framing(&fr)).collect(),
            frame: self.frame.clone(),
            names: self.names.clone(),
        }
    }

    /// Sum as a map from exponent keys to coefficients (for exact comparison
    /// of equations whose term order may differ).
    fn collected(&self) -> BTreeMap<Vec<(String, (Rat, Rat))>, Rat> {
        let mut out: BTreeMap<Vec<(String, (Rat, Rat))>, Rat> = BTreeMap::new();
        for t in &self.terms {
            let key: Vec<(String, (Rat, Rat))> = t
                .exps
                .iter()
                .map(|(v, e)| (v.clone(), (e.c.clone(), e.f_coeff.clone())))
                .collect();
            *out.entry(key).or_insert_with(Rat::zero) += t.coeff.clone();
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Build the mirror-curve chart of a brane with the framing symbolic.
pub fn build_curve(
    fan: &ExtendedStackyFan,
    pbasis: &PBasis,
    brane: &Brane,
    names: &ChartNames,
) -> Result<CurveEquation> {
    let frame = fan.flag_frame(brane.primary)?;
    if names.q.len() != pbasis.p.len() {
        return Err(Error::Dimension("chart names do not match the parameter count".into()));
    }
    let sigma = brane.primary.sigma;
    let mut terms = Vec::with_capacity(fan.r());
    for i in 0..fan.r() {
        let (m, n) = frame.mn[i];
        let mut t = Monomial::one();
        // Moduli monomial for points outside the chart cone.
        if !fan.cones[sigma].contains(&i) {
            let s = pbasis.s_exponents(sigma, i)?;
            for (a, e) in s.iter().enumerate() {
                if !e.is_zero() {
                    t = t.mul(&Monomial::var(&names.q[a], ExpAffine::constant(e.clone())));
                }
            }
        }
        t = t.mul(&Monomial::var(&names.x, ExpAffine::from_int(m)));
        // y-exponent: n - m f.
        t = t.mul(&Monomial::var(&names.y, ExpAffine::new(rint(n), rint(-m))));
        terms.push(t);
    }
    Ok(CurveEquation { terms, frame, names: names.clone() })
}

/// Result of re-expressing a chart in the frame of another flag.
#[derive(Debug, Clone)]
pub struct Reparametrization {
    pub curve: CurveEquation,
    /// Rules writing the OLD chart variables as monomials in the new ones.
    pub rules: BTreeMap<String, Monomial>,
    /// Monomial prefactor relating the equations: H_new = prefactor * H_old
    /// after substitution, in the new variables.
    pub prefactor: Monomial,
}

/// Re-express an unframed chart (framing bound to zero) in the frame of a
/// second flag of the same fan, verifying the term-by-term identity.
pub fn reparametrize_flag(
    fan: &ExtendedStackyFan,
    pbasis: &PBasis,
    curve: &CurveEquation,
    new_brane: &Brane,
    new_names: &ChartNames,
) -> Result<Reparametrization> {
    let old_frame = &curve.frame;
    let new_frame = fan.flag_frame(new_brane.primary)?;
    let ch = frame_change(old_frame, &new_frame)?;
    let (a, c) = (ch[0][0], ch[0][1]);
    let (b, d) = (ch[1][0], ch[1][1]);
    let new_sigma = new_brane.primary.sigma;
    let s_mono = |i: usize| -> Result<Monomial> {
        let mut m = Monomial::one();
        if !fan.cones[new_sigma].contains(&i) {
            for (slot, e) in pbasis.s_exponents(new_sigma, i)?.iter().enumerate() {
                if !e.is_zero() {
                    m = m.mul(&Monomial::var(&new_names.q[slot], ExpAffine::constant(e.clone())));
                }
            }
        }
        Ok(m)
    };
    let s_pow = |i: usize, w: Rat| -> Result<Monomial> {
        s_mono(i)?.pow(&ExpAffine::constant(w))
    };
    let r = rint(old_frame.r);
    let ell = rint(old_frame.ell);
    let w1 = Rat::one() / &r;
    let w2 = rint(old_frame.s) / (&r * &ell);
    let w3 = -(&w1 + &w2);
    let x_rule = Monomial::var(&new_names.x, ExpAffine::from_int(a))
        .mul(&Monomial::var(&new_names.y, ExpAffine::from_int(b)))
        .mul(&s_pow(old_frame.i1, w1)?)
        .mul(&s_pow(old_frame.i2, w2)?)
        .mul(&s_pow(old_frame.i3, w3)?);
    let linv = Rat::one() / &ell;
    let y_rule = Monomial::var(&new_names.x, ExpAffine::from_int(c))
        .mul(&Monomial::var(&new_names.y, ExpAffine::from_int(d)))
        .mul(&s_pow(old_frame.i2, linv.clone())?)
        .mul(&s_pow(old_frame.i3, -linv)?);
    let mut rules: BTreeMap<String, Monomial> = BTreeMap::new();
    rules.insert(curve.names.x.clone(), x_rule);
    rules.insert(curve.names.y.clone(), y_rule);
    for (old_q, new_q) in curve.names.q.iter().zip(&new_names.q) {
        rules.insert(old_q.clone(), Monomial::var(new_q, ExpAffine::from_int(1)));
    }
    // Prefactor: moduli monomial and frame coordinates of the old base vertex.
    let (m3, n3) = new_frame.mn[old_frame.i3];
    let prefactor = s_mono(old_frame.i3)?
        .mul(&Monomial::var(&new_names.x, ExpAffine::from_int(m3)))
        .mul(&Monomial::var(&new_names.y, ExpAffine::from_int(n3)));
    let new_curve = build_curve(fan, pbasis, new_brane, new_names)?.bind_framing(0);
    // Verify the identity term by term.
    for (i, old_term) in curve.terms.iter().enumerate() {
        let image = prefactor.mul(&old_term.substitute(&rules)?);
        let expected = &new_curve.terms[i];
        if image != *expected {
            return Err(Error::Mismatch(format!(
                "term {}: {} vs {}",
                i + 1,
                render_monomial(&image, &new_names.roster()),
                render_monomial(expected, &new_names.roster())
            )));
        }
    }
    Ok(Reparametrization { curve: new_curve, rules, prefactor })
}

/// Check that substituting `rules` (old variables in terms of new) into
/// `old_curve`, multiplied by `prefactor`, reproduces `new_curve` exactly as
/// a sum (term-by-term by index when lengths match).
pub fn verify_substitution_identity(
    old_curve: &CurveEquation,
    new_curve: &CurveEquation,
    rules: &BTreeMap<String, Monomial>,
    prefactor: &Monomial,
    framing_shift: &Rat,
) -> Result<()> {
    if old_curve.terms.len() != new_curve.terms.len() {
        return Err(Error::Mismatch("term counts differ".into()));
    }
    let roster = new_curve.names.roster();
    for (i, old_term) in old_curve.terms.iter().enumerate() {
        let shifted = old_term.shift_framing(framing_shift);
        let image = prefactor.mul(&shifted.substitute(rules)?);
        if image != new_curve.terms[i] {
            return Err(Error::Mismatch(format!(
                "term {}: {} vs {}",
                i + 1,
                render_monomial(&image, &roster),
                render_monomial(&new_curve.terms[i], &roster)
            )));
        }
    }
    let _ = new_curve.collected();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gkz;

    fn curve_for(fan: &ExtendedStackyFan, name: &str) -> CurveEquation {
        let g = gkz::gkz_data(fan).unwrap();
        let pb = gkz::select_pbasis(fan, &g, None).unwrap();
        let (edge, pc) = fixtures::default_brane(name).unwrap();
        let brane = fan.make_brane(edge, 0, pc).unwrap();
        build_curve(fan, &pb, &brane, &ChartNames::plain(g.k)).unwrap()
    }

    #[test]
    fn smooth_chart_renders() {
        let fan = fixtures::c3();
        let c = curve_for(&fan, "c3");
        assert_eq!(c.render(), "x*y^-f + y + 1");
    }

    #[test]
    fn transverse_a1_chart_renders() {
        let fan = fixtures::a1();
        let c = curve_for(&fan, "a1");
        assert_eq!(c.render(), "x*y^-f + q1*y + 1 + y^2");
        assert_eq!(c.bind_framing(0).render(), "x + q1*y + 1 + y^2");
        assert_eq!(c.bind_framing(1).render(), "x*y^-1 + q1*y + 1 + y^2");
    }

    #[test]
    fn transverse_a2_chart_renders() {
        let fan = fixtures::a2();
        let c = curve_for(&fan, "a2");
        assert_eq!(c.bind_framing(0).render(), "x + q1*y^2 + 1 + y^3 + q2*y");
    }

    #[test]
    fn partial_resolution_charts_and_reparametrization() {
        let fan = fixtures::a2res();
        let g = gkz::gkz_data(&fan).unwrap();
        let pb = gkz::select_pbasis(&fan, &g, None).unwrap();
        let brane1 = fan.make_brane((1, 2), 0, Some(0)).unwrap();
        let names1 = ChartNames {
            q: vec!["q1".into(), "q2".into()],
            x: "x1".into(),
            y: "y1".into(),
        };
        let h1 = build_curve(&fan, &pb, &brane1, &names1).unwrap().bind_framing(0);
        assert_eq!(h1.render(), "x1 + y1^2 + 1 + q1*y1^3 + q2*y1");
        let brane2 = fan.make_brane((1, 3), 0, Some(1)).unwrap();
        let names2 = ChartNames {
            q: vec!["q1".into(), "q2".into()],
            x: "x2".into(),
            y: "y2".into(),
        };
        let rep = reparametrize_flag(&fan, &pb, &h1, &brane2, &names2).unwrap();
        assert_eq!(rep.curve.render(), "x2 + 1 + q1^2*y2^-2 + y2 + q1*q2*y2^-1");
        // Inverted rules: x2 = x1*y1^-2, y2 = y1*q1.
        let roster1 = names1.roster();
        let x1_rule = render_monomial(&rep.rules["x1"], &names2.roster());
        let y1_rule = render_monomial(&rep.rules["y1"], &names2.roster());
        assert_eq!(x1_rule, "q1^-2*x2*y2^2");
        assert_eq!(y1_rule, "q1^-1*y2");
        let _ = roster1;
    }
}
