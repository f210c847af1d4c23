//! Extended stacky fans for toric Calabi-Yau 3-orbifolds.
//!
//! All lattice points sit at height one, so the combinatorics is that of a
//! lattice polygon with a chosen regular triangulation on a subset of the
//! points (the fan rays); the remaining points are extended (orbifold)
//! vectors. Flags pick an edge together with an adjacent maximal cone and
//! carry a canonical lattice frame.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::lp::{maximize_leq, LpOutcome};
use crate::exact::matrix::{solve_rational, IntMatrix};
use crate::exact::{rint, Rat};

pub type Point = [i64; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedStackyFan {
    /// Lattice points b_1..b_R (0-based storage), each with last coordinate 1.
    pub points: Vec<Point>,
    /// Indices of fan rays (the triangulation vertices).
    pub rays: BTreeSet<usize>,
    /// Maximal cones as sorted index triples.
    pub cones: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flag {
    /// Edge endpoints, sorted.
    pub tau: (usize, usize),
    /// Index into `fan.cones` of the adjacent maximal cone.
    pub sigma: usize,
}

/// Canonical lattice frame attached to a flag: v3 = b_{i3}, b_{i2} = l*v2 + v3,
/// b_{i1} = r*v1 - s*v2 + v3 with 0 <= s < r, and (b_{i1}, b_{i2}, b_{i3})
/// in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagFrame {
    pub flag: Flag,
    pub i1: usize,
    pub i2: usize,
    pub i3: usize,
    pub ell: i64,
    pub r: i64,
    pub s: i64,
    pub v: [[i64; 3]; 3],
    /// (m_i, n_i) coordinates of every point: b_i = m*v1 + n*v2 + v3.
    pub mn: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraneKind {
    Outer,
    Inner,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Brane {
    pub edge: (usize, usize),
    pub kind: BraneKind,
    pub primary: Flag,
    pub secondary: Option<Flag>,
    /// Integer framing used when the framing is bound numerically.
    pub framing: i64,
    pub ell: i64,
}

fn p2(p: &Point) -> (i64, i64) {
    (p[0], p[1])
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn det3(c0: &[i64; 3], c1: &[i64; 3], c2: &[i64; 3]) -> i64 {
    c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1])
        + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1])
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Convex hull (monotone chain), counterclockwise, no collinear points kept.
fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = vec![];
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = vec![];
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn polygon_area2(poly: &[(i64, i64)]) -> i64 {
    let n = poly.len();
    let mut a = 0;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        a += p.0 * q.1 - q.0 * p.1;
    }
    a.abs()
}

fn in_convex(poly: &[(i64, i64)], p: (i64, i64)) -> bool {
    // poly counterclockwise; closed containment.
    let n = poly.len();
    if n == 1 {
        return poly[0] == p;
    }
    if n == 2 {
        return cross(poly[0], poly[1], p) == 0
            && p.0 >= poly[0].0.min(poly[1].0)
            && p.0 <= poly[0].0.max(poly[1].0)
            && p.1 >= poly[0].1.min(poly[1].1)
            && p.1 <= poly[0].1.max(poly[1].1);
    }
    (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) >= 0)
}

fn ccw_triangle(t: [(i64, i64); 3]) -> [(i64, i64); 3] {
    if cross(t[0], t[1], t[2]) < 0 {
        [t[0], t[2], t[1]]
    } else {
        t
    }
}

/// Do the open interiors of two triangles intersect? Exact separating-axis test.
fn interiors_overlap(a: [(i64, i64); 3], b: [(i64, i64); 3]) -> bool {
    let a = ccw_triangle(a);
    let b = ccw_triangle(b);
    for (p, q) in [(a, b), (b, a)] {
        for i in 0..3 {
            let e0 = p[i];
            let e1 = p[(i + 1) % 3];
            // p lies on the left of (e0,e1); if all of q is on the right or on
            // the line, the interiors are separated.
            if q.iter().all(|&v| cross(e0, e1, v) <= 0) {
                return false;
            }
        }
    }
    true
}

impl ExtendedStackyFan {
    pub fn new(points: Vec<Point>, rays: BTreeSet<usize>, cones: Vec<[usize; 3]>) -> Self {
        let cones = cones
            .into_iter()
            .map(|mut c| {
                c.sort();
                c
            })
            .collect();
        ExtendedStackyFan { points, rays, cones }
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    /// Rank of the kernel lattice: R - 3.
    pub fn k(&self) -> usize {
        self.points.len().saturating_sub(3)
    }

    pub fn orb_indices(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|i| !self.rays.contains(i)).collect()
    }

    /// 3 x R matrix with the lattice points as columns.
    pub fn beta(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = (0..3)
            .map(|c| self.points.iter().map(|p| p[c]).collect())
            .collect();
        IntMatrix::from_rows(&rows)
    }

    /// Edges of the triangulation with the indices of adjacent cones.
    pub fn edges(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut out: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (ci, c) in self.cones.iter().enumerate() {
            for (a, b) in [(c[0], c[1]), (c[0], c[2]), (c[1], c[2])] {
                out.entry((a, b)).or_default().push(ci);
            }
        }
        out
    }

    pub fn enumerate_flags(&self) -> Vec<Flag> {
        let mut flags = vec![];
        for (tau, cones) in self.edges() {
            for &sigma in &cones {
                flags.push(Flag { tau, sigma });
            }
        }
        flags
    }

    /// Total stabilizer order of a maximal cone: |det(b_i1, b_i2, b_i3)|.
    pub fn cone_order(&self, sigma: usize) -> i64 {
        let c = self.cones[sigma];
        det3(&self.points[c[0]], &self.points[c[1]], &self.points[c[2]]).abs()
    }

    /// Lattice length of an edge.
    pub fn edge_order(&self, tau: (usize, usize)) -> i64 {
        let a = self.points[tau.0];
        let b = self.points[tau.1];
        gcd(a[0] - b[0], a[1] - b[1])
    }

    /// Indices i with ray(b_i) not a face of sigma, together with the
    /// extended (orbifold) indices. These label the moduli monomials of a
    /// mirror-curve chart at sigma.
    pub fn outside_indices(&self, sigma: usize) -> Vec<usize> {
        let c = self.cones[sigma];
        (0..self.points.len()).filter(|i| !c.contains(i)).collect()
    }

    pub fn validate(&self) -> Vec<String> {
        let mut errs: Vec<String> = vec![];
        let n = self.points.len();
        if n < 3 {
            errs.push("fewer than three lattice points".into());
            return errs;
        }
        if self.points.iter().any(|p| p[2] != 1) {
            errs.push("all lattice points must have last coordinate 1".into());
        }
        {
            let mut seen = BTreeSet::new();
            for p in &self.points {
                if !seen.insert(*p) {
                    errs.push(format!("duplicate lattice point {:?}", p));
                }
            }
        }
        if self.cones.is_empty() {
            errs.push("no maximal cones".into());
            return errs;
        }
        let mut cone_vertices: BTreeSet<usize> = BTreeSet::new();
        for c in &self.cones {
            if c.iter().any(|&i| i >= n) {
                errs.push(format!("cone {:?} references a missing point", c));
                return errs;
            }
            if c[0] == c[1] || c[1] == c[2] {
                errs.push(format!("cone {:?} is degenerate", c));
                return errs;
            }
            if det3(&self.points[c[0]], &self.points[c[1]], &self.points[c[2]]) == 0 {
                errs.push(format!("cone {:?} is not simplicial (zero determinant)", c));
            }
            cone_vertices.extend(c.iter().copied());
        }
        {
            let mut sorted = self.cones.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != self.cones.len() {
                errs.push("repeated maximal cone".into());
            }
        }
        if cone_vertices != self.rays {
            errs.push("ray set does not match the triangulation vertices".into());
        }
        if !errs.is_empty() {
            return errs;
        }
        // Pairwise intersections must be common faces.
        let tri = |c: &[usize; 3]| -> [(i64, i64); 3] {
            [p2(&self.points[c[0]]), p2(&self.points[c[1]]), p2(&self.points[c[2]])]
        };
        for i in 0..self.cones.len() {
            for j in i + 1..self.cones.len() {
                let (a, b) = (self.cones[i], self.cones[j]);
                if interiors_overlap(tri(&a), tri(&b)) {
                    errs.push(format!("cones {:?} and {:?} overlap", a, b));
                    continue;
                }
                let shared: BTreeSet<usize> =
                    a.iter().filter(|x| b.contains(x)).copied().collect();
                for &v in a.iter() {
                    if !shared.contains(&v) && in_convex(&ccw_triangle(tri(&b)), p2(&self.points[v])) {
                        errs.push(format!(
                            "vertex {} of cone {:?} touches cone {:?} outside a common face",
                            v + 1,
                            a,
                            b
                        ));
                    }
                }
                for &v in b.iter() {
                    if !shared.contains(&v) && in_convex(&ccw_triangle(tri(&a)), p2(&self.points[v])) {
                        errs.push(format!(
                            "vertex {} of cone {:?} touches cone {:?} outside a common face",
                            v + 1,
                            b,
                            a
                        ));
                    }
                }
            }
        }
        // Support must be the cone over the full polygon.
        let all2d: Vec<(i64, i64)> = self.points.iter().map(p2).collect();
        let hull = convex_hull(all2d.clone());
        if hull.len() < 3 {
            errs.push("lattice points are collinear".into());
            return errs;
        }
        let hull_area: i64 = polygon_area2(&hull);
        let tri_area: i64 = self
            .cones
            .iter()
            .map(|c| polygon_area2(&tri(c).to_vec()))
            .sum();
        if hull_area != tri_area {
            errs.push(format!(
                "triangulation does not cover the polygon (area {} vs {})",
                tri_area, hull_area
            ));
        }
        // The point list must be the complete list of lattice points of the polygon.
        let (minx, maxx) = hull.iter().fold((i64::MAX, i64::MIN), |(lo, hi), p| {
            (lo.min(p.0), hi.max(p.0))
        });
        let (miny, maxy) = hull.iter().fold((i64::MAX, i64::MIN), |(lo, hi), p| {
            (lo.min(p.1), hi.max(p.1))
        });
        let have: BTreeSet<(i64, i64)> = all2d.iter().copied().collect();
        for x in minx..=maxx {
            for y in miny..=maxy {
                if in_convex(&hull, (x, y)) && !have.contains(&(x, y)) {
                    errs.push(format!("lattice point ({}, {}) of the polygon is missing", x, y));
                }
            }
        }
        // The points must span the lattice over the integers.
        let (diag, _, _) = self.beta().smith();
        if diag.len() != 3 || diag.iter().any(|d| *d != 1.into()) {
            errs.push("lattice points do not span Z^3 (Calabi-Yau normalization violated)".into());
        }
        // Regularity of the triangulation by exact LP.
        match self.regularity_slack() {
            Ok(slack) => {
                if !slack.is_positive() {
                    errs.push("triangulation is not regular (no strictly convex heights)".into());
                }
            }
            Err(e) => errs.push(format!("regularity check failed: {}", e)),
        }
        errs
    }

    /// Maximal strict-convexity slack of a height function on the triangulation
    /// vertices, with heights bounded in [-10^6, 10^6] and slack capped at 1.
    /// Strictly positive slack certifies a regular triangulation.
    pub fn regularity_slack(&self) -> Result<Rat> {
        let verts: Vec<usize> = self.rays.iter().copied().collect();
        let vpos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let nh = verts.len();
        // Variables: h_i = u_i - w_i (2*nh columns), then t.
        let ncols = 2 * nh + 1;
        let mut rows: Vec<Vec<Rat>> = vec![];
        let mut rhs: Vec<Rat> = vec![];
        for ((a, b), adj) in self.edges() {
            if adj.len() != 2 {
                continue;
            }
            let third = |ci: usize| -> usize {
                *self.cones[ci].iter().find(|&&v| v != a && v != b).unwrap()
            };
            let u = third(adj[0]);
            let w = third(adj[1]);
            // w = alpha*a + beta*b + gamma*u affinely in the plane.
            let m: Vec<Vec<Rat>> = vec![
                vec![rint(self.points[a][0]), rint(self.points[b][0]), rint(self.points[u][0])],
                vec![rint(self.points[a][1]), rint(self.points[b][1]), rint(self.points[u][1])],
                vec![rint(1), rint(1), rint(1)],
            ];
            let target = vec![rint(self.points[w][0]), rint(self.points[w][1]), rint(1)];
            let coeffs = solve_rational(&m, &target)?;
            // Constraint: h_w - alpha h_a - beta h_b - gamma h_u >= t,
            // written as t - (that expression) <= 0.
            let mut row = vec![Rat::zero(); ncols];
            let mut add = |idx: usize, c: Rat| {
                row[2 * vpos[&idx]] -= c.clone();
                row[2 * vpos[&idx] + 1] += c;
            };
            add(w, rint(1));
            add(a, -coeffs[0].clone());
            add(b, -coeffs[1].clone());
            add(u, -coeffs[2].clone());
            row[2 * nh] = rint(1);
            rows.push(row);
            rhs.push(Rat::zero());
        }
        let bound = rint(1_000_000);
        for col in 0..2 * nh {
            let mut row = vec![Rat::zero(); ncols];
            row[col] = rint(1);
            rows.push(row);
            rhs.push(bound.clone());
        }
        {
            let mut row = vec![Rat::zero(); ncols];
            row[2 * nh] = rint(1);
            rows.push(row);
            rhs.push(rint(1));
        }
        let mut c = vec![Rat::zero(); ncols];
        c[2 * nh] = rint(1);
        match maximize_leq(&c, &rows, &rhs)? {
            LpOutcome::Optimal(v) => Ok(v),
            other => Err(Error::Numeric(format!("regularity LP outcome {:?}", other))),
        }
    }

    /// Canonical frame of a flag.
    pub fn flag_frame(&self, flag: Flag) -> Result<FlagFrame> {
        let cone = self.cones[flag.sigma];
        let (ta, tb) = flag.tau;
        if !cone.contains(&ta) || !cone.contains(&tb) {
            return Err(Error::Brane(format!(
                "edge ({}, {}) is not a face of cone {:?}",
                ta + 1,
                tb + 1,
                cone
            )));
        }
        let i1 = *cone.iter().find(|&&v| v != ta && v != tb).unwrap();
        // Assign (i2, i3) so that (b_i1, b_i2, b_i3) is counterclockwise.
        let (i2, i3) = if cross(p2(&self.points[i1]), p2(&self.points[ta]), p2(&self.points[tb])) > 0
        {
            (ta, tb)
        } else {
            (tb, ta)
        };
        let ell = self.edge_order(flag.tau);
        let order = self.cone_order(flag.sigma);
        if order % ell != 0 {
            return Err(Error::Brane("edge order does not divide cone order".into()));
        }
        let r = order / ell;
        let v3 = self.points[i3];
        let d = [
            (self.points[i2][0] - v3[0]) / ell,
            (self.points[i2][1] - v3[1]) / ell,
            (self.points[i2][2] - v3[2]) / ell,
        ];
        let v2 = [d[0], d[1], d[2]];
        let mut found: Option<(i64, [i64; 3])> = None;
        for s in 0..r {
            let w = [
                self.points[i1][0] - v3[0] + s * v2[0],
                self.points[i1][1] - v3[1] + s * v2[1],
                self.points[i1][2] - v3[2] + s * v2[2],
            ];
            if w.iter().all(|x| x % r == 0) {
                found = Some((s, [w[0] / r, w[1] / r, w[2] / r]));
                break;
            }
        }
        let Some((s, v1)) = found else {
            return Err(Error::Brane("no admissible shear for the flag frame".into()));
        };
        let det = det3(&v1, &v2, &v3);
        if det.abs() != 1 {
            return Err(Error::Brane("flag frame is not a lattice basis".into()));
        }
        // Coordinates of every point in the frame via the adjugate.
        let adj_row = |p: &Point, a: &[i64; 3], b: &[i64; 3]| -> i64 {
            det3(p, a, b) / det
        };
        let mn: Vec<(i64, i64)> = self
            .points
            .iter()
            .map(|p| {
                let m = adj_row(p, &v2, &v3);
                let nn = adj_row(&v1, p, &v3);
                debug_assert_eq!(adj_row(&v1, &v2, p), 1);
                (m, nn)
            })
            .collect();
        Ok(FlagFrame { flag, i1, i2, i3, ell, r, s, v: [v1, v2, v3], mn })
    }

    /// Construct a brane on an edge. Inner branes (edges with two adjacent
    /// cones) require the caller to name the primary cone.
    pub fn make_brane(
        &self,
        edge: (usize, usize),
        framing: i64,
        primary_cone: Option<usize>,
    ) -> Result<Brane> {
        let tau = (edge.0.min(edge.1), edge.0.max(edge.1));
        let edges = self.edges();
        let Some(adj) = edges.get(&tau) else {
            return Err(Error::Brane(format!(
                "({}, {}) is not an edge of the triangulation",
                tau.0 + 1,
                tau.1 + 1
            )));
        };
        match adj.len() {
            1 => {
                if let Some(pc) = primary_cone {
                    if pc != adj[0] {
                        return Err(Error::Brane("named primary cone is not adjacent to the edge".into()));
                    }
                }
                Ok(Brane {
                    edge: tau,
                    kind: BraneKind::Outer,
                    primary: Flag { tau, sigma: adj[0] },
                    secondary: None,
                    framing,
                    ell: self.edge_order(tau),
                })
            }
            2 => {
                let Some(pc) = primary_cone else {
                    return Err(Error::Brane(
                        "inner brane requires an explicitly named primary cone".into(),
                    ));
                };
                if !adj.contains(&pc) {
                    return Err(Error::Brane("named primary cone is not adjacent to the edge".into()));
                }
                let other = *adj.iter().find(|&&c| c != pc).unwrap();
                let primary = Flag { tau, sigma: pc };
                let secondary = Flag { tau, sigma: other };
                // The opposite vertex of the secondary cone must sit at
                // negative m in the primary frame.
                let frame = self.flag_frame(primary)?;
                let sframe = self.flag_frame(secondary)?;
                if frame.mn[sframe.i1].0 >= 0 {
                    return Err(Error::Brane("secondary cone is not on the opposite side".into()));
                }
                Ok(Brane {
                    edge: tau,
                    kind: BraneKind::Inner,
                    primary,
                    secondary: Some(secondary),
                    framing,
                    ell: self.edge_order(tau),
                })
            }
            _ => Err(Error::Brane("edge with more than two adjacent cones".into())),
        }
    }

    /// Opposite vertex index of the secondary flag of an inner brane, and the
    /// positive integer r' = -m_{i4} in the primary frame.
    pub fn inner_data(&self, brane: &Brane) -> Result<Option<(usize, i64)>> {
        let Some(sec) = brane.secondary else { return Ok(None) };
        let frame = self.flag_frame(brane.primary)?;
        let sframe = self.flag_frame(sec)?;
        let i4 = sframe.i1;
        let rp = -frame.mn[i4].0;
        if rp <= 0 {
            return Err(Error::Brane("inner brane with nonpositive opposite depth".into()));
        }
        Ok(Some((i4, rp)))
    }
}

/// Change-of-basis matrix between two flag frames of the same fan: columns
/// express the `from` frame vectors in `to`-frame coordinates. Always integer
/// with determinant one and bottom row (0, 0, 1).
pub fn frame_change(from: &FlagFrame, to: &FlagFrame) -> Result<[[i64; 3]; 3]> {
    let det = det3(&to.v[0], &to.v[1], &to.v[2]);
    let coord = |w: &[i64; 3]| -> [i64; 3] {
        [
            det3(w, &to.v[1], &to.v[2]) / det,
            det3(&to.v[0], w, &to.v[2]) / det,
            det3(&to.v[0], &to.v[1], w) / det,
        ]
    };
    let c0 = coord(&from.v[0]);
    let c1 = coord(&from.v[1]);
    let c2 = coord(&from.v[2]);
    let m = [
        [c0[0], c1[0], c2[0]],
        [c0[1], c1[1], c2[1]],
        [c0[2], c1[2], c2[2]],
    ];
    if m[2][0] != 0 || m[2][1] != 0 || m[2][2] != 1 {
        return Err(Error::Brane("frame change does not preserve the height form".into()));
    }
    if det3(&[m[0][0], m[1][0], m[2][0]], &[m[0][1], m[1][1], m[2][1]], &[m[0][2], m[1][2], m[2][2]])
        != 1
    {
        return Err(Error::Brane("frame change is not orientation preserving".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn affine_orbifold_chart_frame() {
        let fan = fixtures::a1();
        assert!(fan.validate().is_empty());
        let flag = Flag { tau: (2, 3), sigma: 0 };
        let f = fan.flag_frame(flag).unwrap();
        assert_eq!((f.i1, f.i2, f.i3), (0, 3, 2));
        assert_eq!((f.ell, f.r, f.s), (2, 1, 0));
        assert_eq!(f.v, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(f.mn, vec![(1, 0), (0, 1), (0, 0), (0, 2)]);
    }

    #[test]
    fn resolved_chart_flags() {
        let fan = fixtures::kp1o();
        assert!(fan.validate().is_empty());
        assert_eq!(fan.enumerate_flags().len(), 3 * fan.cones.len());
        let edges = fan.edges();
        let inner: Vec<_> = edges.values().filter(|v| v.len() == 2).collect();
        assert_eq!(inner.len(), 1);
    }

    #[test]
    fn frame_changes_are_unimodular_shears() {
        for fan in [fixtures::a1(), fixtures::kp1o(), fixtures::a2res(), fixtures::kp2()] {
            let flags = fan.enumerate_flags();
            let frames: Vec<_> = flags.iter().map(|&f| fan.flag_frame(f).unwrap()).collect();
            for a in &frames {
                for b in &frames {
                    let m = frame_change(a, b).unwrap();
                    assert_eq!([m[2][0], m[2][1], m[2][2]], [0, 0, 1]);
                }
            }
        }
    }

    #[test]
    fn stabilizer_orders() {
        let fan = fixtures::c3z3();
        assert!(fan.validate().is_empty());
        assert_eq!(fan.cone_order(0), 3);
        let fan = fixtures::a2();
        assert_eq!(fan.cone_order(0), 3);
        assert_eq!(fan.edge_order((2, 3)), 3);
    }

    #[test]
    fn orbifold_indices() {
        let fan = fixtures::c3z3();
        assert_eq!(fan.orb_indices(), vec![0]);
        let fan = fixtures::a2res();
        assert_eq!(fan.orb_indices(), vec![4]);
    }

    #[test]
    fn invalid_fans_rejected() {
        // Missing interior lattice point.
        let fan = ExtendedStackyFan::new(
            vec![[1, 0, 1], [0, 1, 1], [0, 0, 1], [3, -1, 1]],
            [0, 1, 2, 3].into_iter().collect(),
            vec![[0, 1, 2], [0, 2, 3], [0, 1, 3]],
        );
        // The triangulation covers the polygon, yet this set of four points is
        // complete (no interior point is missing) and should validate.
        assert!(fan.validate().is_empty());

        let missing = ExtendedStackyFan::new(
            vec![[0, 1, 1], [0, 0, 1], [3, -1, 1]],
            [0, 1, 2].into_iter().collect(),
            vec![[0, 1, 2]],
        );
        let errs = missing.validate();
        assert!(errs.iter().any(|e| e.contains("missing")), "{:?}", errs);

        let overlapping = ExtendedStackyFan::new(
            vec![[1, 0, 1], [0, 1, 1], [0, 0, 1], [1, 1, 1]],
            [0, 1, 2, 3].into_iter().collect(),
            vec![[0, 1, 2], [0, 2, 3]],
        );
        let errs = overlapping.validate();
        assert!(errs.iter().any(|e| e.contains("overlap")), "{:?}", errs);
    }

    #[test]
    fn inner_brane_requires_primary() {
        let fan = fixtures::a1p();
        assert!(fan.make_brane((2, 3), 0, None).is_err());
        let brane = fan.make_brane((2, 3), 0, Some(0)).unwrap();
        assert_eq!(brane.kind, BraneKind::Inner);
        assert_eq!(brane.ell, 2);
        let (i4, rp) = fan.inner_data(&brane).unwrap().unwrap();
        assert_eq!(i4, 4);
        assert_eq!(rp, 1);
    }

    #[test]
    fn regularity_of_all_fixtures() {
        for fan in fixtures::all_fixtures() {
            assert!(fan.regularity_slack().unwrap().is_positive());
        }
    }
}
