//! Dense integer matrices, Smith normal form and exact determinants.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Build from row vectors; all rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &T) {
        for j in 0..self.cols {
            let v = self[(src, j)].clone() * q.clone();
            let e = &mut self.data[dst * self.cols + j];
            *e = e.clone() - v;
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &T) {
        for i in 0..self.rows {
            let v = self[(i, src)].clone() * q.clone();
            let e = &mut self.data[i * self.cols + dst];
            *e = e.clone() - v;
        }
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m[(i, j)].clone() * m[(k, k)].clone()
                        - m[(i, k)].clone() * m[(k, j)].clone())
                        / prev.clone();
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Nonzero diagonal of the Smith normal form together with the shape of
/// the input, so that the cokernel can be read off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub rows: usize,
    pub cols: usize,
    /// Positive invariant factors d_1 | d_2 | ... (ones included).
    pub diagonal: Vec<T>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Free rank of the cokernel Z^cols / image.
    pub fn cokernel_rank(&self) -> usize {
        self.cols - self.diagonal.len()
    }
}

/// Smith normal form by repeated minimal-pivot elimination. Returns only
/// the nonzero diagonal entries, normalised positive.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> SmithForm<T> {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let mut diagonal = Vec::new();
    for t in 0..r.min(c) {
        loop {
            // pivot: smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let v = &a[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a[(bi, bj)].abs() <= v.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm {
                    rows: r,
                    cols: c,
                    diagonal,
                };
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let p = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if !a[(i, t)].is_zero() {
                    let q = a[(i, t)].div_floor(&p);
                    a.sub_row(i, t, &q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..c {
                if !a[(t, j)].is_zero() {
                    let q = a[(t, j)].div_floor(&p);
                    a.sub_col(j, t, &q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = T::one();
                    a.sub_row(t, i, &(-one));
                }
                None => break,
            }
        }
        diagonal.push(a[(t, t)].abs());
    }
    SmithForm {
        rows: r,
        cols: c,
        diagonal,
    }
}
