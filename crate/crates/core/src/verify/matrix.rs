//! Exact dense matrices over the rationals, and fraction-free integer rank.

use num::{One, Zero};

use crate::scalar::{Int, Rat};

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// None if the row lengths are ragged.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Option<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    /// Exact inverse by Gauss–Jordan elimination; None if singular or not
    /// square.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let piv = a.get(c, c).clone();
            a.scale_row(c, &piv.recip());
            inv.scale_row(c, &piv.recip());
            for r in 0..n {
                if r != c && !a.get(r, c).is_zero() {
                    let f = a.get(r, c).clone();
                    a.row_axpy(r, c, &-f.clone());
                    inv.row_axpy(r, c, &-f);
                }
            }
        }
        Some(inv)
    }

    /// gᵀ·g = I.
    pub fn is_orthogonal(&self) -> bool {
        self.rows == self.cols && self.transpose().mul(self).is_identity()
    }

    /// The standard antisymmetric form [[0, I], [−I, 0]] on 2n coordinates.
    pub fn symplectic_form(n: usize) -> Mat {
        let mut j = Mat::zeros(2 * n, 2 * n);
        for i in 0..n {
            j.set(i, n + i, Rat::one());
            j.set(n + i, i, -Rat::one());
        }
        j
    }

    /// gᵀ·J·g = J for the standard form; requires even dimension.
    pub fn is_symplectic(&self) -> bool {
        if self.rows != self.cols || !self.rows.is_multiple_of(2) {
            return false;
        }
        let j = Mat::symplectic_form(self.rows / 2);
        self.transpose().mul(&j).mul(self) == j
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, f: &Rat) {
        for j in 0..self.cols {
            let v = self.get(r, j) * f;
            self.set(r, j, v);
        }
    }

    /// row r += f · row src.
    fn row_axpy(&mut self, r: usize, src: usize, f: &Rat) {
        for j in 0..self.cols {
            let v = self.get(r, j) + f * self.get(src, j);
            self.set(r, j, v);
        }
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination: every
/// intermediate entry is an integer, each elimination step divides exactly
/// by the previous pivot, and no rational arithmetic is needed.
pub fn bareiss_rank(mut m: Vec<Vec<Int>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    assert!(m.iter().all(|r| r.len() == cols), "rank of a ragged matrix");
    let mut rank = 0usize;
    let mut prev = Int::from(1);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let num = &m[r][j] * &m[rank][c] - &m[r][c] * &m[rank][j];
                debug_assert!((&num % &prev).is_zero(), "fraction-free step must divide exactly");
                m[r][j] = num / &prev;
            }
            m[r][c] = Int::ZERO;
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
