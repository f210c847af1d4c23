//! Rational polyhedral cones: exact membership, dualization and intersection.
//!
//! Cones are stored by generating rays. Dualization and intersection use the
//! double description method at desk scale, with redundant rays pruned by
//! exact LP membership tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::lp::feasible_combination;
use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCone {
    pub dim: usize,
    /// Canonical generators: primitive integer rays, sorted, irredundant.
    pub rays: Vec<Vec<BigInt>>,
}

fn to_rat(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from(x.clone())).collect()
}

/// Scale a rational vector to a primitive integer vector (same direction).
pub fn primitive(v: &[Rat]) -> Vec<BigInt> {
    let mut denom_lcm = BigInt::from(1);
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from(denom_lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.iter().map(|x| x / &g).collect()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Intermediate double-description state: lineality lines plus rays.
#[derive(Debug, Clone)]
struct DdCone {
    lines: Vec<Vec<Rat>>,
    rays: Vec<Vec<Rat>>,
}

impl DdCone {
    fn full_space(dim: usize) -> Self {
        let lines = (0..dim)
            .map(|i| {
                let mut e = vec![Rat::zero(); dim];
                e[i] = Rat::from(BigInt::from(1));
                e
            })
            .collect();
        DdCone { lines, rays: vec![] }
    }

    /// Intersect with the halfspace {v : <a, v> >= 0}.
    fn cut(&mut self, a: &[Rat]) {
        // First reduce lineality against the cutting functional.
        if let Some(pos) = self.lines.iter().position(|l| !dot(a, l).is_zero()) {
            let l0 = self.lines.remove(pos);
            let p0 = dot(a, &l0);
            for l in &mut self.lines {
                let p = dot(a, l);
                if !p.is_zero() {
                    let f = &p / &p0;
                    for (x, y) in l.iter_mut().zip(&l0) {
                        let v = &*x - &f * y;
                        *x = v;
                    }
                }
            }
            for r in &mut self.rays {
                let p = dot(a, r);
                if !p.is_zero() {
                    let f = &p / &p0;
                    for (x, y) in r.iter_mut().zip(&l0) {
                        let v = &*x - &f * y;
                        *x = v;
                    }
                }
            }
            // The removed line re-enters as a ray on the nonnegative side.
            let oriented: Vec<Rat> = if p0.is_positive() {
                l0
            } else {
                l0.iter().map(|x| -x.clone()).collect()
            };
            self.rays.push(oriented);
            return;
        }
        // No lineality crosses the hyperplane: standard ray combination step.
        let vals: Vec<Rat> = self.rays.iter().map(|r| dot(a, r)).collect();
        let mut next: Vec<Vec<Rat>> = vec![];
        for (r, v) in self.rays.iter().zip(&vals) {
            if !v.is_negative() {
                next.push(r.clone());
            }
        }
        for (i, (ri, vi)) in self.rays.iter().zip(&vals).enumerate() {
            if !vi.is_positive() {
                continue;
            }
            for (rj, vj) in self.rays.iter().zip(&vals).skip(i + 1) {
                if !vj.is_negative() {
                    continue;
                }
                // vi * rj - vj * ri lies on the hyperplane.
                let comb: Vec<Rat> = ri
                    .iter()
                    .zip(rj)
                    .map(|(x, y)| vi * y - vj * x)
                    .collect();
                if comb.iter().any(|x| !x.is_zero()) {
                    next.push(comb);
                }
            }
        }
        self.rays = next;
    }
}

impl RationalCone {
    pub fn from_rays(dim: usize, rays: &[Vec<Rat>]) -> Result<Self> {
        if rays.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("cone ray length".into()));
        }
        let mut c = RationalCone { dim, rays: vec![] };
        c.install(rays.to_vec())?;
        Ok(c)
    }

    pub fn from_int_rays(dim: usize, rays: &[Vec<BigInt>]) -> Result<Self> {
        let rr: Vec<Vec<Rat>> = rays.iter().map(|r| to_rat(r)).collect();
        Self::from_rays(dim, &rr)
    }

    fn install(&mut self, rays: Vec<Vec<Rat>>) -> Result<()> {
        let mut prim: Vec<Vec<BigInt>> = rays
            .iter()
            .map(|r| primitive(r))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        prim.sort();
        prim.dedup();
        // Prune generators one at a time against the remaining set; each
        // removal preserves the generated cone, so this is safe even when the
        // cone has lineality (opposite ray pairs).
        let mut keep = prim;
        loop {
            let mut removed = false;
            for i in 0..keep.len() {
                let others: Vec<Vec<Rat>> = keep
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, r)| to_rat(r))
                    .collect();
                if feasible_combination(&others, &[], &to_rat(&keep[i]))? {
                    keep.remove(i);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
        }
        keep.sort();
        self.rays = keep;
        Ok(())
    }

    pub fn is_trivial(&self) -> bool {
        self.rays.is_empty()
    }

    /// Exact membership test by LP feasibility.
    pub fn contains(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::Dimension("cone membership vector length".into()));
        }
        if v.iter().all(|x| x.is_zero()) {
            return Ok(true);
        }
        let gens: Vec<Vec<Rat>> = self.rays.iter().map(|r| to_rat(r)).collect();
        feasible_combination(&gens, &[], v)
    }

    pub fn contains_int(&self, v: &[BigInt]) -> Result<bool> {
        self.contains(&to_rat(v))
    }

    /// Generators of the dual cone {u : <u, r> >= 0 for all rays r}.
    /// Lineality of the dual (when this cone is not full-dimensional) is
    /// returned as opposite ray pairs.
    pub fn dual(&self) -> Result<RationalCone> {
        let mut dd = DdCone::full_space(self.dim);
        for r in &self.rays {
            dd.cut(&to_rat(r));
        }
        let mut rays = dd.rays;
        for l in dd.lines {
            rays.push(l.iter().map(|x| -x.clone()).collect());
            rays.push(l);
        }
        RationalCone::from_rays(self.dim, &rays)
    }

    /// Intersection of two cones via the halfspace description of `other`.
    pub fn intersect(&self, other: &RationalCone) -> Result<RationalCone> {
        if self.dim != other.dim {
            return Err(Error::Dimension("cone intersection dims".into()));
        }
        let facets = other.dual()?;
        let mut dd = DdCone {
            lines: vec![],
            rays: self.rays.iter().map(|r| to_rat(r)).collect(),
        };
        for f in &facets.rays {
            dd.cut(&to_rat(f));
        }
        RationalCone::from_rays(self.dim, &dd.rays)
    }

    pub fn intersect_all(dim: usize, cones: &[RationalCone]) -> Result<RationalCone> {
        let mut acc: Option<RationalCone> = None;
        for c in cones {
            acc = Some(match acc {
                None => c.clone(),
                Some(a) => a.intersect(c)?,
            });
        }
        match acc {
            Some(a) => Ok(a),
            None => RationalCone::from_rays(dim, &[]),
        }
    }

    /// Dimension of the linear span of the cone.
    pub fn span_rank(&self) -> usize {
        use crate::exact::matrix::IntMatrix;
        if self.rays.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<BigInt>> = self.rays.clone();
        IntMatrix::from_big_rows(&rows).rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }
    fn ray(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn membership_2d() {
        let c = RationalCone::from_rays(2, &[ray(&[1, 0]), ray(&[1, 2])]).unwrap();
        assert!(c.contains(&ray(&[2, 1])).unwrap());
        assert!(c.contains(&ray(&[1, 2])).unwrap());
        assert!(!c.contains(&ray(&[0, 1])).unwrap());
        assert!(!c.contains(&ray(&[-1, 0])).unwrap());
    }

    #[test]
    fn canonical_generators_pruned() {
        let c =
            RationalCone::from_rays(2, &[ray(&[1, 0]), ray(&[1, 1]), ray(&[0, 1]), ray(&[2, 0])])
                .unwrap();
        assert_eq!(c.rays.len(), 2);
        assert!(c.contains(&ray(&[1, 1])).unwrap());
    }

    #[test]
    fn dual_of_quadrant() {
        let c = RationalCone::from_rays(2, &[ray(&[1, 0]), ray(&[0, 1])]).unwrap();
        let d = c.dual().unwrap();
        assert_eq!(d.rays.len(), 2);
        assert!(d.contains(&ray(&[1, 0])).unwrap());
        assert!(d.contains(&ray(&[0, 1])).unwrap());
        assert!(!d.contains(&ray(&[-1, 0])).unwrap());
    }

    #[test]
    fn dual_of_halfline_has_lineality() {
        // dual of ray(1,0) in the plane = halfplane x >= 0, lineality e2.
        let c = RationalCone::from_rays(2, &[ray(&[1, 0])]).unwrap();
        let d = c.dual().unwrap();
        assert!(d.contains(&ray(&[0, 1])).unwrap());
        assert!(d.contains(&ray(&[0, -1])).unwrap());
        assert!(d.contains(&ray(&[3, -2])).unwrap());
        assert!(!d.contains(&ray(&[-1, 0])).unwrap());
    }

    #[test]
    fn intersection_of_overlapping_wedges() {
        let a = RationalCone::from_rays(2, &[ray(&[1, 0]), ray(&[1, 1])]).unwrap();
        let b = RationalCone::from_rays(2, &[ray(&[1, 1]), ray(&[0, 1])]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.rays, vec![primitive(&ray(&[1, 1]))]);
        let j = a.intersect(&a).unwrap();
        assert_eq!(j.rays, a.rays);
    }

    #[test]
    fn intersection_in_3d() {
        let a = RationalCone::from_rays(
            3,
            &[ray(&[1, 0, 0]), ray(&[0, 1, 0]), ray(&[0, 0, 1])],
        )
        .unwrap();
        let b = RationalCone::from_rays(
            3,
            &[ray(&[1, 1, 0]), ray(&[-1, 1, 0]), ray(&[0, 0, 1]), ray(&[0, 1, 1])],
        )
        .unwrap();
        let i = a.intersect(&b).unwrap();
        assert!(i.contains(&ray(&[0, 1, 0])).unwrap());
        assert!(i.contains(&ray(&[0, 0, 1])).unwrap());
        assert!(i.contains(&ray(&[0, 1, 1])).unwrap());
        assert!(i.contains(&ray(&[1, 1, 0])).unwrap());
        assert!(!i.contains(&ray(&[1, 0, 0])).unwrap());
        assert!(!i.contains(&ray(&[2, 1, 0])).unwrap());
    }
}
