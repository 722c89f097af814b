//! Prime fields `F_p` (p ≤ 5 in practice) and small dense matrices over them.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    p: u8,
}

impl Fq {
    pub fn new(p: u32) -> Self {
        assert!((2..=251).contains(&p), "field size out of range");
        Self { p: p as u8 }
    }

    pub fn q(self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero in F_p");
        (1..self.p).find(|&x| self.mul(a, x) == 1).expect("p is prime")
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root(self) -> u8 {
        let order = self.p as u32 - 1;
        (1..self.p)
            .find(|&g| {
                let mut x = 1u8;
                for k in 1..=order {
                    x = self.mul(x, g);
                    if x == 1 {
                        return k == order;
                    }
                }
                false
            })
            .expect("F_p has a primitive root")
    }
}

/// Row-major matrix with entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, entries: &[Vec<u8>]) -> Self {
        assert_eq!(entries.len(), rows);
        let mut m = Self::zeros(rows, cols);
        for (i, r) in entries.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &Mat, f: Fq) -> Mat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, rhs.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat, f: Fq) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Mat, f: Fq) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self, f: Fq) -> Mat {
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u8, f: Fq) -> Mat {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        let mut out = Mat::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j));
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Mat::zeros(self.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, rhs);
        out
    }

    pub fn vstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.cols);
        let mut out = Mat::zeros(self.rows + rhs.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, rhs);
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, rhs);
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: Fq) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let t = m.get(r, j);
                    m.set(r, j, m.get(pr, j));
                    m.set(pr, j, t);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i != r && factor != 0 {
                    for j in 0..m.cols {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: Fq) -> usize {
        self.rref(f).1.len()
    }

    /// Columns form a basis of `{x : self·x = 0}`.
    pub fn nullspace(&self, f: Fq) -> Mat {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(r.get(row, fc)));
            }
        }
        out
    }

    /// Independent columns spanning the column space (a subset of the original columns).
    pub fn column_basis(&self, f: Fq) -> Mat {
        let (_, pivots) = self.rref(f);
        let mut out = Mat::zeros(self.rows, pivots.len());
        for (k, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, k, self.get(i, c));
            }
        }
        out
    }

    pub fn inverse(&self, f: Fq) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Mat::identity(n)).rref(f);
        if pivots.len() < n || pivots.get(n.wrapping_sub(1)).is_some_and(|&p| p != n - 1) {
            return None;
        }
        Some(r.submatrix(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self, f: Fq) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// Extend the independent columns of `self` (n×k) to an invertible n×n matrix
    /// whose first k columns are `self`, completing with standard basis vectors.
    pub fn complete_basis(&self, f: Fq) -> Mat {
        let n = self.rows;
        let mut basis = self.clone();
        for e in 0..n {
            if basis.cols == n {
                break;
            }
            let mut unit = Mat::zeros(n, 1);
            unit.set(e, 0, 1);
            let cand = basis.hstack(&unit);
            if cand.rank(f) == cand.cols {
                basis = cand;
            }
        }
        debug_assert_eq!(basis.cols, n);
        basis
    }

    /// Solve `self · x = b` for `x`, assuming `self` has full column rank and a solution exists.
    pub fn solve_left_full_rank(&self, b: &Mat, f: Fq) -> Option<Mat> {
        let k = self.cols;
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref(f);
        if pivots.iter().any(|&p| p >= k) || pivots.len() < k {
            return None;
        }
        Some(r.submatrix(0, k, k, aug.cols))
    }
}

/// All `k`-dimensional subspaces of `F_q^n`, each as an n×k matrix of basis columns
/// (the transpose of its reduced row echelon form).
pub fn subspaces(n: usize, k: usize, f: Fq) -> Vec<Mat> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let q = f.q() as u8;
    for pivots in combinations(n, k) {
        // free positions: (row r, column c) with c > pivots[r] and c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = pivots.clone();
                ((pivots[r] + 1)..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = (q as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut m = Mat::zeros(k, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, 1);
            }
            let mut c = code;
            for &(r, col) in &free {
                m.set(r, col, (c % q as u64) as u8);
                c /= q as u64;
            }
            out.push(m.transpose());
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
