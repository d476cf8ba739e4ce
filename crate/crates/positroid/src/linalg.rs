//! Dense matrices over a field and integer linear systems.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[S]) {
        for (r, x) in v.iter().enumerate() {
            self.set(r, c, x.clone());
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn scale_row(&mut self, r: usize, f: &S) {
        for c in 0..self.cols {
            let v = self.get(r, c).clone() * f.clone();
            self.set(r, c, v);
        }
    }

    /// Gaussian elimination to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(p * self.cols + c, row * self.cols + c);
            }
            let inv = S::one() / self.get(row, col).clone();
            self.scale_row(row, &inv);
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for c in 0..self.cols {
                    let v = self.get(r, c).clone() - f.clone() * self.get(row, c).clone();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Determinant by elimination; square matrices only.
    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return S::zero();
            };
            if p != col {
                for c in 0..n {
                    a.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pv = a.get(col, col).clone();
            det = det * pv.clone();
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone() / pv.clone();
                for c in col..n {
                    let v = a.get(r, c).clone() - f.clone() * a.get(col, c).clone();
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    /// The unique solution of `self * x = b` for a nonsingular square matrix.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n, b[r].clone());
        }
        let piv = aug.rref();
        if piv.len() != n || piv.iter().any(|&p| p >= n) {
            return None;
        }
        Some((0..n).map(|r| aug.get(r, n).clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut m = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for c in 0..o.cols {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(r, k).clone() * o.get(k, c).clone();
                }
                m.set(r, c, acc);
            }
        }
        m
    }
}

/// Result of [`solve_integer_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSolution {
    /// A solution with every free variable set to zero.
    pub solution: Vec<i64>,
    /// Columns left free by the elimination.
    pub free: Vec<usize>,
    /// Primitive integer kernel vectors, one per free column.
    pub kernel: Vec<Vec<i64>>,
}

impl IntegerSolution {
    pub fn is_unique(&self) -> bool {
        self.free.is_empty()
    }
}

fn normalize_row(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Solves `a x = b` over the integers by fraction-free Gauss-Jordan elimination.
///
/// Returns `None` when the system is inconsistent or the particular solution
/// (free variables at zero) is not integral.
pub fn solve_integer_linear(a: &[Vec<i64>], b: &[i64]) -> Option<IntegerSolution> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(r, &rhs)| r.iter().map(|&x| BigInt::from(x)).chain([BigInt::from(rhs)]).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, row);
        if m[row][col].is_negative() {
            for x in m[row].iter_mut() {
                *x = -x.clone();
            }
        }
        for r in 0..rows {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            let pv = m[row][col].clone();
            for c in 0..=cols {
                m[r][c] = &pv * &m[r][c] - &f * &m[row][c];
            }
            normalize_row(&mut m[r]);
        }
        pivots.push(col);
        row += 1;
    }
    for r in row..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut solution = vec![0i64; cols];
    for (r, &pc) in pivots.iter().enumerate() {
        let (q, rem) = m[r][cols].div_rem(&m[r][pc]);
        if !rem.is_zero() {
            return None;
        }
        solution[pc] = q.to_i64()?;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = Vec::new();
    for &f in &free {
        // x_f = L, x_pc = -m[r][f] * L / m[r][pc], with L the lcm of pivots.
        let mut l = BigInt::one();
        for (r, &pc) in pivots.iter().enumerate() {
            if !m[r][f].is_zero() {
                l = l.lcm(&m[r][pc]);
            }
        }
        let mut v = vec![BigInt::zero(); cols];
        v[f] = l.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -(&m[r][f] * &l) / &m[r][pc];
        }
        normalize_row(&mut v);
        kernel.push(v.iter().map(|x| x.to_i64().unwrap()).collect());
    }
    Some(IntegerSolution { solution, free, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational};
    use crate::Rational;

    #[test]
    fn identity_system() {
        let a = vec![vec![1, 0], vec![0, 1]];
        let s = solve_integer_linear(&a, &[3, -4]).unwrap();
        assert_eq!(s.solution, vec![3, -4]);
        assert!(s.is_unique());
    }

    #[test]
    fn non_integral_and_inconsistent() {
        assert!(solve_integer_linear(&[vec![2]], &[1]).is_none());
        assert!(solve_integer_linear(&[vec![1, 1], vec![1, 1]], &[1, 2]).is_none());
    }

    #[test]
    fn underdetermined_reports_kernel() {
        let a = vec![vec![1, 1, 0], vec![0, 0, 1]];
        let s = solve_integer_linear(&a, &[2, 5]).unwrap();
        assert_eq!(s.free, vec![1]);
        assert_eq!(s.kernel.len(), 1);
        let k = &s.kernel[0];
        assert_eq!(k[0] + k[1], 0);
        assert_eq!(k[2], 0);
        assert_eq!(s.solution, vec![2, 0, 5]);
    }

    #[test]
    fn determinant_and_solve() {
        let m = Matrix::<Rational>::from_rows(vec![
            vec![int(2), int(1), int(0)],
            vec![int(1), int(3), int(1)],
            vec![int(0), int(1), int(4)],
        ]);
        assert_eq!(m.determinant(), int(18));
        let x = m.solve(&[int(1), int(0), int(0)]).unwrap();
        assert_eq!(x[0], rational(11, 18));
        let sing = Matrix::<Rational>::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert_eq!(sing.determinant(), int(0));
        assert!(sing.solve(&[int(1), int(0)]).is_none());
        assert_eq!(sing.rank(), 1);
    }
}
