//! Dense matrices over a small field F_q (indices as in [`Fq`]).

use crate::ff::Fq;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    /// Columns may be shorter than `rows`; missing entries are zero.
    pub fn from_columns(rows: usize, cols: &[Vec<u32>]) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate().take(rows) {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Matrix, f: &Fq) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32], f: &Fq) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix, f: &Fq) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &Fq) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            let cols = self.cols;
            let pivot_row: Vec<u32> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            let prime = (f.degree() == 1).then(|| f.characteristic() as u64);
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                let row = &mut self.data[i * cols + c..(i + 1) * cols];
                match prime {
                    // prime field: plain modular arithmetic on the slices
                    Some(p) => {
                        for (cur, &pv) in row.iter_mut().zip(&pivot_row) {
                            *cur = ((*cur as u64 + neg as u64 * pv as u64) % p) as u32;
                        }
                    }
                    None => {
                        for (cur, &pv) in row.iter_mut().zip(&pivot_row) {
                            if pv != 0 {
                                *cur = f.add(*cur, f.mul(neg, pv));
                            }
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &Fq) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the right null space `{x : Mx = 0}`.
    pub fn kernel(&self, f: &Fq) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `Mx = b`, if one exists.
    pub fn solve(&self, b: &[u32], f: &Fq) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self, f: &Fq) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// Expresses vectors in terms of a fixed list of linearly independent columns.
/// Only a k×k block is inverted: coordinates are solved on k pivot rows and
/// then checked against the whole vector.
#[derive(Clone, Debug)]
pub struct ColumnSolver {
    columns: Vec<Vec<u32>>,
    pivot_rows: Vec<usize>,
    // inverse of the k×k block of the columns on the pivot rows
    inverse: Matrix,
}

impl ColumnSolver {
    /// Returns `None` if the columns are dependent.
    pub fn new(dim: usize, columns: &[Vec<u32>], f: &Fq) -> Option<ColumnSolver> {
        let k = columns.len();
        let mut rows = Matrix::zeros(k, dim);
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                rows.set(j, i, v);
            }
        }
        let pivot_rows = rows.rref(f);
        if pivot_rows.len() != k {
            return None;
        }
        let mut aug = Matrix::zeros(k, 2 * k);
        for (i, &row) in pivot_rows.iter().enumerate() {
            for (j, col) in columns.iter().enumerate() {
                aug.set(i, j, col.get(row).copied().unwrap_or(0));
            }
            aug.set(i, k + i, 1);
        }
        aug.rref(f);
        let mut inverse = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                inverse.set(i, j, aug.get(i, k + j));
            }
        }
        Some(ColumnSolver {
            columns: columns.to_vec(),
            pivot_rows,
            inverse,
        })
    }

    /// Coordinates of `v` in the column basis, or `None` if outside the span.
    pub fn coordinates(&self, v: &[u32], f: &Fq) -> Option<Vec<u32>> {
        let at = |i: usize| v.get(i).copied().unwrap_or(0);
        let restricted: Vec<u32> = self.pivot_rows.iter().map(|&r| at(r)).collect();
        let x = self.inverse.mul_vec(&restricted, f);
        let dim = self.columns.iter().map(Vec::len).max().unwrap_or(0).max(v.len());
        for i in 0..dim {
            let combo = self
                .columns
                .iter()
                .zip(&x)
                .fold(0, |acc, (col, &c)| {
                    f.add(acc, f.mul(c, col.get(i).copied().unwrap_or(0)))
                });
            if combo != at(i) {
                return None;
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Fq::get(3).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2, 0, 1], vec![2, 1, 0, 2], vec![0, 0, 1, 1]]);
        let ker = m.kernel(&f);
        assert_eq!(ker.len(), 4 - m.rank(&f));
        for v in ker {
            assert!(m.mul_vec(&v, &f).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_over_f4() {
        let f = Fq::get(4).unwrap();
        // det = 1 − z² = z
        let m = Matrix::from_rows(&[vec![1, 2], vec![2, 1]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&inv, &f), Matrix::identity(2));
        // z·(z + 1) = 1, so this one is singular
        let singular = Matrix::from_rows(&[vec![1, 2], vec![3, 1]]);
        assert!(singular.inverse(&f).is_none());
    }

    #[test]
    fn column_solver_round_trip() {
        let f = Fq::get(5).unwrap();
        let cols = vec![vec![1, 0, 2], vec![3, 1, 4]];
        let s = ColumnSolver::new(3, &cols, &f).unwrap();
        let v: Vec<u32> = (0..3)
            .map(|i| f.add(f.mul(2, cols[0][i]), f.mul(4, cols[1][i])))
            .collect();
        assert_eq!(s.coordinates(&v, &f), Some(vec![2, 4]));
        assert_eq!(s.coordinates(&[0, 0, 1], &f), None);
        assert!(ColumnSolver::new(3, &[vec![1, 1, 1], vec![2, 2, 2]], &f).is_none());
    }
}
