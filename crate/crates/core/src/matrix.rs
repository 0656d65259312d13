//! Small dense row-major matrices over exact rings.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(Error::Dimension(format!(
                "row {i} has length {} but row 0 has length {m}",
                r.len()
            )));
        }
        Ok(Matrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self
    where
        T: Clone,
    {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Sub-matrix picking the given rows and columns in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self
    where
        T: Clone,
    {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Zero + One + Clone + PartialEq> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }
}

impl<T> Matrix<T>
where
    T: Zero + Clone,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + &self[(i, k)] * &other[(k, j)];
            }
            acc
        }))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-major, space-separated entries, one row per line.
impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

pub fn int_matrix(rows: &[&[i64]]) -> Matrix<Int> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect(),
    )
    .expect("ragged literal matrix")
}

/// Fraction-free (Bareiss) determinant over the integers.
pub fn int_det(m: &Matrix<Int>) -> Result<Int> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Int::one());
    }
    let mut a = m.clone();
    let mut prev = Int::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(p) => {
                    a.swap_rows(k, p);
                    negate = !negate;
                }
                None => return Ok(Int::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = v / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    Ok(if negate { -d } else { d })
}

/// Rank over the rationals, by fraction-free row reduction.
pub fn int_rank(m: &Matrix<Int>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(rank, p);
        for i in rank + 1..rows {
            if a[(i, col)].is_zero() {
                continue;
            }
            let (f, g) = (a[(rank, col)].clone(), a[(i, col)].clone());
            for j in col..cols {
                let v = &a[(i, j)] * &f - &a[(rank, j)] * &g;
                a[(i, j)] = v;
            }
            // keep entries small
            let content = (col..cols).fold(Int::zero(), |acc, j| {
                num_integer::Integer::gcd(&acc, &a[(i, j)])
            });
            if content > Int::one() {
                for j in col..cols {
                    a[(i, j)] = &a[(i, j)] / &content;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn is_unimodular(m: &Matrix<Int>) -> bool {
    int_det(m).map(|d| d.abs().is_one()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        assert_eq!(int_det(&Matrix::<Int>::zeros(0, 0)).unwrap(), Int::one());
        assert_eq!(
            int_det(&int_matrix(&[&[2, 1], &[7, 4]])).unwrap(),
            Int::from(1)
        );
        assert_eq!(
            int_det(&int_matrix(&[&[0, 1], &[1, 0]])).unwrap(),
            Int::from(-1)
        );
        assert_eq!(
            int_det(&int_matrix(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]])).unwrap(),
            Int::from(-3)
        );
        assert!(int_det(&int_matrix(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn rank_small() {
        assert_eq!(int_rank(&int_matrix(&[&[0, 1], &[0, 0]])), 1);
        assert_eq!(int_rank(&int_matrix(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(
            int_rank(&int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])),
            2
        );
        assert_eq!(int_rank(&Matrix::<Int>::zeros(3, 2)), 0);
    }

    #[test]
    fn display_is_space_separated() {
        let m = int_matrix(&[&[0, -1], &[1, 0]]);
        assert_eq!(m.to_string(), "0 -1\n1 0");
    }
}
