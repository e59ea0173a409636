use std::ops::{Index, IndexMut};

use super::cyclotomic::CycNum;

/// Dense square-or-rectangular matrix over a cyclotomic field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        CycMatrix { rows, cols, data: vec![CycNum::zero(conductor); rows * cols] }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = Self::zeros(n, n, conductor);
        for i in 0..n {
            m[(i, i)] = CycNum::one(conductor);
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        CycMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(entries: &[CycNum]) -> Self {
        let n = entries.len();
        let conductor = entries.first().map_or(1, CycNum::conductor);
        let mut m = Self::zeros(n, n, conductor);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let conductor = self.data.first().map_or(1, CycNum::conductor);
        let mut out = Self::zeros(self.rows, rhs.cols, conductor);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(v.len(), self.rows);
        let conductor = v.first().map_or(1, CycNum::conductor);
        (0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .fold(CycNum::zero(conductor), |acc, (i, x)| &acc + &(x * &self[(i, j)]))
            })
            .collect()
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<CycMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let conductor = self.data.first().map_or(1, CycNum::conductor);
        let mut a = self.clone();
        let mut inv = Self::identity(n, conductor);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let scale = a[(col, col)].inv()?;
            a.scale_row(col, &scale);
            inv.scale_row(col, &scale);
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                a.sub_row_multiple(r, col, &factor);
                inv.sub_row_multiple(r, col, &factor);
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &CycNum) {
        for j in 0..self.cols {
            let v = &self[(r, j)] * s;
            self[(r, j)] = v;
        }
    }

    /// row[r] -= factor * row[src]
    fn sub_row_multiple(&mut self, r: usize, src: usize, factor: &CycNum) {
        for j in 0..self.cols {
            let s = &self[(src, j)];
            if s.is_zero() {
                continue;
            }
            let v = &self[(r, j)] - &(factor * s);
            self[(r, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for CycMatrix {
    type Output = CycNum;

    fn index(&self, (i, j): (usize, usize)) -> &CycNum {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CycMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CycNum {
        &mut self.data[i * self.cols + j]
    }
}
