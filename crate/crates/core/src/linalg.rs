//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    /// `yᵀ A`.
    pub fn left_mul_vec(&self, y: &[Rational]) -> Result<Vec<Rational>> {
        if y.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} rows",
                y.len(),
                self.rows
            )));
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += yi * a;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = &self[(r, j)] * &factor;
                    self[(i, j)] -= v;
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
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, y)| x * y)
        .fold(Rational::zero(), |acc, t| acc + t)
}

/// Solution set of `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSet {
    /// No solution exists.
    Inconsistent,
    /// `particular + span(nullspace)`; unique when `nullspace` is empty.
    Affine {
        particular: Vec<Rational>,
        nullspace: Vec<Vec<Rational>>,
    },
}

impl SolutionSet {
    pub fn is_unique(&self) -> bool {
        matches!(self, SolutionSet::Affine { nullspace, .. } if nullspace.is_empty())
    }

    pub fn particular(&self) -> Option<&[Rational]> {
        match self {
            SolutionSet::Affine { particular, .. } => Some(particular),
            SolutionSet::Inconsistent => None,
        }
    }
}

/// Solves `A x = b` exactly; free variables are set to zero in the particular
/// solution and each contributes one nullspace basis vector.
pub fn linear_solve(a: &Matrix, b: &[Rational]) -> Result<SolutionSet> {
    if b.len() != a.nrows() {
        return Err(Error::Dimension(format!(
            "right-hand side has {} entries, matrix has {} rows",
            b.len(),
            a.nrows()
        )));
    }
    let n = a.ncols();
    let mut aug = Matrix::zeros(a.nrows(), n + 1);
    for i in 0..a.nrows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(SolutionSet::Inconsistent);
    }
    let mut particular = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[(r, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[(r, f)].clone();
            }
            v
        })
        .collect();
    Ok(SolutionSet::Affine {
        particular,
        nullspace,
    })
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(a: &Matrix) -> Vec<Vec<Rational>> {
    match linear_solve(a, &vec![Rational::zero(); a.nrows()]) {
        Ok(SolutionSet::Affine { nullspace, .. }) => nullspace,
        _ => unreachable!("homogeneous systems are consistent"),
    }
}

/// Rank of a list of vectors of a common length.
pub fn rank_of(vectors: &[Vec<Rational>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), len)
        .expect("vectors share a length")
        .rank()
}

/// A row-reduced basis of the span of `vectors`.
pub fn row_basis(vectors: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(vectors.to_vec(), len).expect("vectors share a length");
    let r = m.rref().len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn identity_solves_to_rhs() {
        let b = vec![int(3), int(-2), int(7)];
        let s = linear_solve(&Matrix::identity(3), &b).unwrap();
        assert!(s.is_unique());
        assert_eq!(s.particular().unwrap(), &b[..]);
    }

    #[test]
    fn one_equation_two_unknowns() {
        let s = linear_solve(&m(&[&[1, 1]]), &[int(1)]).unwrap();
        match s {
            SolutionSet::Affine {
                particular,
                nullspace,
            } => {
                assert_eq!(particular, vec![int(1), int(0)]);
                assert_eq!(nullspace, vec![vec![int(-1), int(1)]]);
            }
            _ => panic!("expected solutions"),
        }
    }

    #[test]
    fn inconsistent_system() {
        let s = linear_solve(&m(&[&[1, 1], &[2, 2]]), &[int(1), int(3)]).unwrap();
        assert_eq!(s, SolutionSet::Inconsistent);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(linear_solve(&Matrix::identity(2), &[int(1)]).is_err());
        assert!(Matrix::from_rows(vec![vec![int(1)], vec![]], 1).is_err());
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        for v in nullspace(&a) {
            assert!(a.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }
}
