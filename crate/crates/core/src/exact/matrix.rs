//! Dense integer matrices with exact Hermite/Smith reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for &e in row {
                data.push(BigInt::from(e));
            }
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for t in 0..self.cols {
                    acc += self.get(i, t) * other.get(t, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row_a -= q * row_b
    fn row_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(a, j) - q * self.get(b, j);
            self.set(a, j, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j).clone();
            self.set(a, j, v);
        }
    }

    /// Row Hermite normal form. Returns (h, u) with u unimodular and u * self == h.
    /// Pivots are positive; entries above a pivot are reduced into [0, pivot).
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // Euclidean elimination below row r in column c.
            loop {
                let mut piv: Option<usize> = None;
                for i in r..self.rows {
                    if !h.get(i, c).is_zero() {
                        piv = match piv {
                            None => Some(i),
                            Some(p) if h.get(i, c).abs() < h.get(p, c).abs() => Some(i),
                            keep => keep,
                        };
                    }
                }
                let Some(p) = piv else { break };
                h.swap_rows(r, p);
                u.swap_rows(r, p);
                let mut done = true;
                for i in r + 1..self.rows {
                    if !h.get(i, c).is_zero() {
                        let q = h.get(i, c).div_floor(h.get(r, c));
                        h.row_axpy(i, r, &q);
                        u.row_axpy(i, r, &q);
                        if !h.get(i, c).is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if h.get(r, c).is_zero() {
                continue;
            }
            if h.get(r, c).is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            for i in 0..r {
                let q = h.get(i, c).div_floor(h.get(r, c));
                h.row_axpy(i, r, &q);
                u.row_axpy(i, r, &q);
            }
            r += 1;
        }
        (h, u)
    }

    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf();
        (0..h.rows)
            .filter(|&i| (0..h.cols).any(|j| !h.get(i, j).is_zero()))
            .count()
    }

    /// Basis of the integer kernel {v : self * v = 0}, returned as matrix columns.
    /// The basis spans the full (saturated) kernel lattice. Columns are put in a
    /// deterministic reduced form with the last nonzero entry of each column positive.
    pub fn kernel_basis(&self) -> IntMatrix {
        let (h, u) = self.transpose().hnf();
        let rank = (0..h.rows)
            .filter(|&i| (0..h.cols).any(|j| !h.get(i, j).is_zero()))
            .count();
        let k = self.cols - rank;
        if k == 0 {
            return IntMatrix::zero(self.cols, 0);
        }
        // Rows rank..cols of u span the kernel; canonicalize them.
        let raw: Vec<Vec<BigInt>> = (rank..self.cols).map(|i| u.row(i)).collect();
        let (mut hh, _) = IntMatrix::from_big_rows(&raw).hnf();
        for i in 0..hh.rows {
            let last = (0..hh.cols).rev().find(|&j| !hh.get(i, j).is_zero());
            if let Some(j) = last {
                if hh.get(i, j).is_negative() {
                    hh.negate_row(i);
                }
            }
        }
        hh.transpose()
    }

    /// Smith normal form. Returns (diag, l, r) with l * self * r diagonal,
    /// diag[i] >= 0 and diag[i] | diag[i+1].
    pub fn smith(&self) -> (Vec<BigInt>, IntMatrix, IntMatrix) {
        let mut a = self.clone();
        let mut l = IntMatrix::identity(self.rows);
        let mut rt = IntMatrix::identity(self.cols); // column ops = row ops on transpose
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            // Find a nonzero pivot in the trailing block.
            let mut piv: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    if !a.get(i, j).is_zero() {
                        piv = match piv {
                            None => Some((i, j)),
                            Some((pi, pj)) if a.get(i, j).abs() < a.get(pi, pj).abs() => {
                                Some((i, j))
                            }
                            keep => keep,
                        };
                    }
                }
            }
            let Some((pi, pj)) = piv else { break };
            a.swap_rows(t, pi);
            l.swap_rows(t, pi);
            a = a.transpose();
            a.swap_rows(t, pj);
            rt.swap_rows(t, pj);
            a = a.transpose();

            let mut clean = true;
            for i in t + 1..a.rows {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_floor(a.get(t, t));
                    a.row_axpy(i, t, &q);
                    l.row_axpy(i, t, &q);
                    if !a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            a = a.transpose();
            for j in t + 1..a.rows {
                if !a.get(j, t).is_zero() {
                    let q = a.get(j, t).div_floor(a.get(t, t));
                    a.row_axpy(j, t, &q);
                    rt.row_axpy(j, t, &q);
                    if !a.get(j, t).is_zero() {
                        clean = false;
                    }
                }
            }
            a = a.transpose();
            if !clean {
                continue;
            }
            // Enforce divisibility of the rest of the block by the pivot.
            let mut bad: Option<(usize, usize)> = None;
            'outer: for i in t + 1..a.rows {
                for j in t + 1..a.cols {
                    if !(a.get(i, j) % a.get(t, t)).is_zero() {
                        bad = Some((i, j));
                        break 'outer;
                    }
                }
            }
            if let Some((i, _)) = bad {
                let minus_one = -BigInt::one();
                a.row_axpy(t, i, &minus_one);
                l.row_axpy(t, i, &minus_one);
                continue;
            }
            if a.get(t, t).is_negative() {
                a.negate_row(t);
                l.negate_row(t);
            }
            t += 1;
        }
        let diag = (0..n).map(|i| a.get(i, i).clone()).collect();
        (diag, l, rt.transpose())
    }

    /// Determinant via exact rational elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension("det of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| Rat::from(self.get(i, j).clone())).collect())
            .collect();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= a[c][c].clone();
            for i in c + 1..n {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let v = &a[i][j] - &f * &a[c][j];
                    a[i][j] = v;
                }
            }
        }
        debug_assert!(det.is_integer());
        Ok(det.to_integer())
    }
}

/// Solve m * x = rhs exactly over the rationals (m square, invertible).
pub fn solve_rational(m: &[Vec<Rat>], rhs: &[Rat]) -> Result<Vec<Rat>> {
    let n = m.len();
    if n == 0 {
        return Ok(vec![]);
    }
    if m.iter().any(|r| r.len() != n) || rhs.len() != n {
        return Err(Error::Dimension("solve_rational shape".into()));
    }
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Err(Error::NotInvertible("singular linear system".into()));
        };
        a.swap(p, c);
        let inv = a[c][c].clone();
        for j in c..=n {
            a[c][j] = &a[c][j] / &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let v = &a[i][j] - &f * &a[c][j];
                    a[i][j] = v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn hnf_recovers_input() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let (h, u) = m.hnf();
        assert_eq!(u.mul(&m).unwrap(), h);
        // u unimodular
        assert_eq!(u.det().unwrap().abs(), big(1));
    }

    #[test]
    fn hnf_of_height_one_points() {
        let beta = IntMatrix::from_rows(&[vec![1, 0, 0, 0], vec![0, 1, 0, 2], vec![1, 1, 1, 1]]);
        let (h, _) = beta.hnf();
        // full rank 3, pivots 1,1,1
        assert_eq!(h.get(0, 0), &big(1));
        assert_eq!(h.get(1, 1), &big(1));
        assert_eq!(h.get(2, 2), &big(1));
        assert_eq!(beta.rank(), 3);
    }

    #[test]
    fn smith_divisibility_and_transforms() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let (d, l, r) = m.smith();
        let prod = l.mul(&m).unwrap().mul(&r).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(prod.get(i, j), &d[i]);
                } else {
                    assert!(prod.get(i, j).is_zero());
                }
            }
        }
        for i in 0..d.len() - 1 {
            if !d[i].is_zero() {
                assert!((&d[i + 1] % &d[i]).is_zero());
            }
        }
        assert_eq!(l.det().unwrap().abs(), big(1));
        assert_eq!(r.det().unwrap().abs(), big(1));
    }

    #[test]
    fn kernel_of_affine_surface_points() {
        // Four points of a (2,0)-resolution chart; kernel is rank one.
        let beta = IntMatrix::from_rows(&[vec![1, 0, 0, 0], vec![0, 1, 0, 2], vec![1, 1, 1, 1]]);
        let k = beta.kernel_basis();
        assert_eq!((k.rows, k.cols), (4, 1));
        let col: Vec<BigInt> = k.col(0);
        assert_eq!(col, vec![big(0), big(-2), big(1), big(1)]);
        assert!(beta.mul(&k).unwrap().data.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn kernel_is_saturated() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![1, 2]]);
        let k = m.kernel_basis();
        assert_eq!((k.rows, k.cols), (2, 1));
        // primitive vector, not a multiple
        let g = k.get(0, 0).gcd(k.get(1, 0));
        assert_eq!(g, big(1));
    }

    #[test]
    fn solve_rational_roundtrip() {
        let m = vec![
            vec![Rat::from(big(2)), Rat::from(big(1))],
            vec![Rat::from(big(1)), Rat::from(big(-1))],
        ];
        let rhs = vec![Rat::from(big(5)), Rat::from(big(-2))];
        let x = solve_rational(&m, &rhs).unwrap();
        assert_eq!(x[0], Rat::new(big(1), big(1)));
        assert_eq!(x[1], Rat::new(big(3), big(1)));
    }
}
