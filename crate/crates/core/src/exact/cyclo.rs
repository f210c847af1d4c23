//! Exact arithmetic in cyclotomic fields Q(zeta_n), represented in the power
//! basis 1, zeta, ..., zeta^(phi(n)-1) modulo the n-th cyclotomic polynomial.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Rat;

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients of the n-th cyclotomic polynomial, ascending, monic.
pub fn cyclotomic_poly(n: u32) -> Vec<Rat> {
    assert!(n >= 1);
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed bottom-up.
    let mut acc: Vec<Rat> = vec![-Rat::one()];
    acc.resize(n as usize, Rat::zero());
    acc.push(Rat::one()); // x^n - 1
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            acc = poly_div_exact(&acc, &phi_d);
        }
    }
    acc
}

fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let (q, r) = poly_divmod(num, den);
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 0 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = num.to_vec();
    poly_trim(&mut r);
    let mut d = den.to_vec();
    poly_trim(&mut d);
    assert!(!d.is_empty(), "division by zero polynomial");
    let dd = d.len() - 1;
    if r.len() < d.len() {
        return (vec![], r);
    }
    let mut q = vec![Rat::zero(); r.len() - d.len() + 1];
    let lead = d[dd].clone();
    for i in (0..q.len()).rev() {
        let c = &r[i + dd] / &lead;
        if !c.is_zero() {
            q[i] = c.clone();
            for j in 0..=dd {
                let v = &r[i + j] - &c * &d[j];
                r[i + j] = v;
            }
        }
    }
    poly_trim(&mut r);
    (q, r)
}

/// Extended gcd over Q[x]: returns (g, s, t) with s*a + t*b = g (g monic).
fn poly_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![Rat::one()];
    let mut s1: Vec<Rat> = vec![];
    let mut t0: Vec<Rat> = vec![];
    let mut t1 = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = Rat::one() / lead;
        for p in [&mut r0, &mut s0, &mut t0] {
            for x in p.iter_mut() {
                let v = &*x * &inv;
                *x = v;
            }
        }
    }
    (r0, s0, t0)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let v = &out[i + j] + x * y;
            out[i + j] = v;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        let v = &out[i] - y;
        out[i] = v;
    }
    let mut out = out;
    poly_trim(&mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclo {
    n: u32,
    /// Coefficients in the power basis, length phi(n).
    c: Vec<Rat>,
}

impl Cyclo {
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn zero(n: u32) -> Self {
        Cyclo { n, c: vec![Rat::zero(); euler_phi(n) as usize] }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rat(n, &Rat::one())
    }

    pub fn from_rat(n: u32, r: &Rat) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = r.clone();
        z
    }

    /// zeta_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let kk = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rat::zero(); kk + 1];
        poly[kk] = Rat::one();
        Self::reduce(n, poly)
    }

    /// e^{2 pi i num / den}; den must divide the conductor.
    pub fn root_of_unity(n: u32, num: i64, den: i64) -> Result<Self> {
        let den = if den < 0 {
            return Err(Error::Series("root_of_unity denominator must be positive".into()));
        } else {
            den as u32
        };
        if den == 0 || n % den != 0 {
            return Err(Error::Conductor(n, den));
        }
        Ok(Self::zeta_pow(n, num * (n / den) as i64))
    }

    fn reduce(n: u32, mut poly: Vec<Rat>) -> Self {
        let phi = euler_phi(n) as usize;
        let modulus = cyclotomic_poly(n);
        if poly.len() > phi {
            let (_, r) = poly_divmod(&poly, &modulus);
            poly = r;
        }
        poly.resize(phi.max(1), Rat::zero());
        poly.truncate(phi.max(1));
        Cyclo { n, c: poly }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Conductor(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect();
        Ok(Cyclo { n: self.n, c })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect();
        Ok(Cyclo { n: self.n, c })
    }

    pub fn neg(&self) -> Self {
        Cyclo { n: self.n, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let prod = poly_mul(&self.c, &other.c);
        Ok(Self::reduce(self.n, prod))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Cyclo { n: self.n, c: self.c.iter().map(|a| a * r).collect() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero cyclotomic element".into()));
        }
        let modulus = cyclotomic_poly(self.n);
        let (g, s, _) = poly_ext_gcd(&self.c, &modulus);
        if g.len() != 1 {
            return Err(Error::NotInvertible("gcd with cyclotomic modulus not constant".into()));
        }
        // g is monic constant 1, so s * self == 1 mod Phi_n.
        Ok(Self::reduce(self.n, s))
    }

    /// Complex conjugate (zeta -> zeta^{-1}).
    pub fn conj(&self) -> Self {
        let mut acc = Self::zero(self.n);
        for (j, coeff) in self.c.iter().enumerate() {
            if !coeff.is_zero() {
                let term = Self::zeta_pow(self.n, -(j as i64)).scale(coeff);
                acc = acc.add(&term).unwrap();
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(|x| x.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn embed(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (j as f64) / (self.n as f64);
            acc += Complex64::new(angle.cos(), angle.sin()).scale(rat_to_f64(coeff));
        }
        acc
    }

    /// Change to a larger conductor m (n must divide m).
    pub fn raise_conductor(&self, m: u32) -> Result<Self> {
        if m % self.n != 0 {
            return Err(Error::Conductor(self.n, m));
        }
        let step = (m / self.n) as i64;
        let mut acc = Self::zero(m);
        for (j, coeff) in self.c.iter().enumerate() {
            if !coeff.is_zero() {
                let term = Self::zeta_pow(m, j as i64 * step).scale(coeff);
                acc = acc.add(&term)?;
            }
        }
        Ok(acc)
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let num = r.numer().to_f64();
    let den = r.denom().to_f64();
    match (num, den) {
        (Some(n), Some(d)) => n / d,
        _ => {
            // Fall back through a scaled integer division for huge operands.
            let scaled = (r * Rat::from(BigInt::from(1i64 << 53))).to_integer();
            scaled.to_f64().unwrap_or(f64::NAN) / (1i64 << 53) as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn cyclotomic_polys() {
        let r = |v: i64| Rat::from_integer(v.into());
        assert_eq!(cyclotomic_poly(1), vec![r(-1), r(1)]);
        assert_eq!(cyclotomic_poly(2), vec![r(1), r(1)]);
        assert_eq!(cyclotomic_poly(4), vec![r(1), r(0), r(1)]);
        assert_eq!(cyclotomic_poly(6), vec![r(1), r(-1), r(1)]);
    }

    #[test]
    fn fourth_root_squares_to_minus_one() {
        let i = Cyclo::zeta_pow(4, 1);
        let sq = i.mul(&i).unwrap();
        assert_eq!(sq, Cyclo::from_rat(4, &-Rat::one()));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Cyclo::zeta_pow(12, 5)
            .add(&Cyclo::from_rat(12, &Rat::new(3.into(), 2.into())))
            .unwrap();
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Cyclo::one(12));
    }

    #[test]
    fn embedding_matches_roots() {
        let z = Cyclo::zeta_pow(6, 1).embed();
        assert!((z - Complex64::from_polar(1.0, std::f64::consts::PI / 3.0)).norm() < 1e-12);
        let sum = Cyclo::zeta_pow(3, 1).add(&Cyclo::zeta_pow(3, 2)).unwrap();
        assert!(sum.is_rational());
        assert_eq!(sum.as_rational().unwrap(), -Rat::one());
    }

    #[test]
    fn conjugation_is_involutive() {
        let a = Cyclo::zeta_pow(8, 3).add(&Cyclo::zeta_pow(8, 1).scale(&Rat::new(2.into(), 3.into()))).unwrap();
        assert_eq!(a.conj().conj(), a);
        let norm = a.mul(&a.conj()).unwrap();
        assert!(norm.is_rational());
    }

    #[test]
    fn conductor_raising_preserves_value() {
        let a = Cyclo::zeta_pow(3, 1);
        let b = a.raise_conductor(12).unwrap();
        assert!((a.embed() - b.embed()).norm() < 1e-12);
    }
}
