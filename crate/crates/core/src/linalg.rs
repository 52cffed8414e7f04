//! Exact rational linear algebra, just enough for equalizer checks.
//!
//! Matrices are dense row-major `Vec<Vec<Rational>>`; the dimensions involved
//! are basis sizes of Weil algebras, so elimination without pivot heuristics
//! is plenty.

use crate::scalar::Rational;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<Rational>>) -> Matrix {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        debug_assert!(data.iter().all(|r| r.len() == cols));
        Matrix { rows, cols, data }
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r][c] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &self.data[i][k] * &other.data[k][j];
                    out.data[i][j] += add;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] -= &other.data[i][j];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let mut rank = 0;
        let mut col = 0;
        while rank < self.rows && col < self.cols {
            let pivot = (rank..self.rows).find(|&r| !m[r][col].is_zero());
            let Some(pivot) = pivot else {
                col += 1;
                continue;
            };
            m.swap(rank, pivot);
            let inv = m[rank][col].recip();
            for entry in m[rank].iter_mut().skip(col) {
                *entry = &*entry * &inv;
            }
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (entry, pivot_entry) in row.iter_mut().zip(&pivot_row).skip(col) {
                        let delta = &factor * pivot_entry;
                        *entry -= delta;
                    }
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Dimension of the null space (columns minus rank).
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_of_identity_and_singular() {
        assert_eq!(m(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rank(), 0);
    }

    #[test]
    fn nullity_complements_rank() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.nullity(), 1);
    }

    #[test]
    fn multiplication_matches_hand_product() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), m(&[&[2, 1], &[4, 3]]));
    }
}
