//! Dense matrices over an exact [`Field`].

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    ///
    /// Every division is exact by the previous pivot, so intermediate entries stay
    /// minors of the input.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut prev = T::one();
        let mut negate = false;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return T::zero();
            };
            if piv != k {
                a.swap_rows(piv, k);
                negate = !negate;
            }
            let pivot = a[(k, k)].clone();
            let prev_inv = prev.checked_inv().expect("Bareiss pivot is nonzero");
            for i in k + 1..n {
                let lead = a[(i, k)].clone();
                for j in k + 1..n {
                    let v = pivot.clone() * a[(i, j)].clone() - lead.clone() * a[(k, j)].clone();
                    a[(i, j)] = v * prev_inv.clone();
                }
                a[(i, k)] = T::zero();
            }
            prev = pivot;
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Row-reduce in place, returning the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(piv, r);
            let inv = self[(r, c)].checked_inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    /// Solve `self · x = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n)] = rhs[i].clone();
        }
        let pivots = aug.echelon();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some((0..n).map(|i| aug[(i, n)].clone()).collect())
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    // cofactor expansion, used as an oracle
    fn laplace(m: &Matrix<Rational>) -> Rational {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = q(0);
        for j in 0..n {
            let minor = Matrix::from_rows(
                (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| m[(i, c)].clone()).collect()).collect(),
            );
            let term = m[(0, j)].clone() * laplace(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn det_needs_pivoting() {
        let m = mat(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(m.det(), laplace(&m));
        assert_eq!(m.det(), q(-2));
    }

    #[test]
    fn singular_has_zero_det_and_low_rank() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.det(), q(0));
        assert_eq!(m.rank(), 2);
        assert!(m.solve(&[q(1), q(2), q(3)]).is_none());
    }

    #[test]
    fn solve_round_trip() {
        let m = mat(&[&[2, 1], &[1, 3]]);
        let x = m.solve(&[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![Rational::new(4.into(), 5.into()), Rational::new(7.into(), 5.into())]);
    }

    proptest::proptest! {
        #[test]
        fn bareiss_matches_laplace(entries in proptest::collection::vec(-5i64..=5, 16)) {
            let m = Matrix::from_rows(entries.chunks(4).map(|r| r.iter().map(|&x| q(x)).collect()).collect());
            proptest::prop_assert_eq!(m.det(), laplace(&m));
        }
    }
}
