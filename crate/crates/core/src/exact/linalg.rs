use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix with `cols` columns; rejects ragged rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
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

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref(self.cols).len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        match solve_exact(self, &vec![Rational::zero(); self.rows]) {
            Ok(LinearSolution::Affine { kernel_basis, .. }) => kernel_basis,
            _ => Vec::new(),
        }
    }

    /// Exact determinant by fraction-carrying elimination.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &pivot;
                for k in c..n {
                    let d = &f * &a[(c, k)];
                    a[(r, k)] -= &d;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place Gauss-Jordan over the first `pivot_cols` columns. Pivots are
    /// the first nonzero entry at or below the current row. Returns the pivot
    /// columns in order; pivot row `i` holds pivot column `result[i]`.
    fn rref(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].recip().expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] *= &inv;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let d = &f * &self[(r, j)];
                    self[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
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

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    Inconsistent,
    /// `particular + span(kernel_basis)`, with a nonempty kernel.
    Affine {
        particular: Vec<Rational>,
        kernel_basis: Vec<Vec<Rational>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolutionKind {
    Unique,
    None,
    Affine,
}

impl LinearSolution {
    pub fn kind(&self) -> SolutionKind {
        match self {
            LinearSolution::Unique(_) => SolutionKind::Unique,
            LinearSolution::Inconsistent => SolutionKind::None,
            LinearSolution::Affine { .. } => SolutionKind::Affine,
        }
    }

    pub fn particular(&self) -> Option<&[Rational]> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            LinearSolution::Affine { particular, .. } => Some(particular),
            LinearSolution::Inconsistent => None,
        }
    }

    pub fn kernel_basis(&self) -> &[Vec<Rational>] {
        match self {
            LinearSolution::Affine { kernel_basis, .. } => kernel_basis,
            _ => &[],
        }
    }
}

/// Solves `A x = rhs` exactly by Gauss-Jordan elimination.
pub fn solve_exact(a: &Matrix, rhs: &[Rational]) -> Result<LinearSolution> {
    if rhs.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} entries for {} rows",
            rhs.len(),
            a.rows
        )));
    }
    let n = a.cols;
    let mut aug = Matrix::zeros(a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = rhs[i].clone();
    }
    let pivots = aug.rref(n);
    if (pivots.len()..a.rows).any(|i| !aug[(i, n)].is_zero()) {
        return Ok(LinearSolution::Inconsistent);
    }

    let mut particular = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[(r, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Ok(LinearSolution::Unique(particular));
    }
    let kernel_basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&aug[(r, f)];
            }
            v
        })
        .collect();
    Ok(LinearSolution::Affine {
        particular,
        kernel_basis,
    })
}
