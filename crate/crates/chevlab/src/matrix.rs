//! Dense square matrices over an exact scalar domain.
//!
//! Determinants and adjugates are computed division-free (Laplace expansion
//! with a column-subset table), so they work verbatim over residue rings
//! and over integer polynomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::MultiPoly;
use crate::rings::{FiniteRing, RingElem};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S: Scalar> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, data: rows.into_iter().flatten().collect() }
    }

    /// Identity matrix in the domain of the `sample` scalar.
    pub fn identity_like(sample: &S, n: usize) -> Self {
        let zero = sample.zero_like();
        let one = sample.one_like();
        let mut data = vec![zero; n * n];
        for i in 0..n {
            data[i * n + i] = one.clone();
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, row: usize, col: usize) -> &S {
        &self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        self.data[row * self.n + col] = value;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        let one = self.data[0].one_like();
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.at(i, j);
                if i == j {
                    if *e != one {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.n, rhs.n, "size mismatch");
        let n = self.n;
        let zero = self.data[0].zero_like();
        let mut data = vec![zero.clone(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    data[idx] = data[idx].add(&a.mul(b));
                }
            }
        }
        Matrix { n, data }
    }

    pub fn transpose(&self) -> Matrix<S> {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix { n, data }
    }

    /// Division-free determinant: dynamic programming over column subsets.
    pub fn det(&self) -> S {
        let n = self.n;
        let zero = self.data[0].zero_like();
        let one = self.data[0].one_like();
        // table[mask] = determinant of the submatrix on rows 0..popcount(mask)
        // and the column set `mask`.
        let mut table: Vec<Option<S>> = vec![None; 1 << n];
        table[0] = Some(one);
        for mask in 1usize..(1 << n) {
            let row = (mask.count_ones() - 1) as usize;
            let mut acc = zero.clone();
            // Laplace expansion along the last row of the submatrix; the
            // cofactor sign alternates with the column's position inside
            // the mask, starting from (-1)^row.
            let mut sign_positive = row % 2 == 0;
            for col in 0..n {
                let bit = 1usize << col;
                if mask & bit == 0 {
                    continue;
                }
                let minor = table[mask ^ bit].clone().expect("filled in order");
                let entry = self.at(row, col);
                if !entry.is_zero() && !minor.is_zero() {
                    let term = entry.mul(&minor);
                    acc = if sign_positive { acc.add(&term) } else { acc.sub(&term) };
                }
                sign_positive = !sign_positive;
            }
            table[mask] = Some(acc);
        }
        table[(1 << n) - 1].take().expect("full mask")
    }

    /// Exact inverse via the adjugate, defined when the determinant is a
    /// unit of the scalar domain.
    pub fn try_inverse(&self) -> Option<Matrix<S>> {
        let det_inv = self.det().try_inv()?;
        let n = self.n;
        let mut data = vec![self.data[0].zero_like(); n * n];
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i).det();
                let cof = if (i + j) % 2 == 0 { minor } else { minor.neg() };
                data[i * n + j] = cof.mul(&det_inv);
            }
        }
        Some(Matrix { n, data })
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Matrix<S> {
        let n = self.n;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == skip_row {
                continue;
            }
            for j in 0..n {
                if j == skip_col {
                    continue;
                }
                data.push(self.at(i, j).clone());
            }
        }
        Matrix { n: n - 1, data }
    }
}

impl Matrix<MultiPoly> {
    /// Specialize a symbolic matrix at a ring assignment, entry-wise.
    pub fn eval(
        &self,
        assignment: &BTreeMap<String, RingElem>,
        ring: &FiniteRing,
    ) -> Result<Matrix<RingElem>, String> {
        let mut data = Vec::with_capacity(self.data.len());
        for e in &self.data {
            data.push(e.eval(assignment, ring)?);
        }
        Ok(Matrix { n: self.n, data })
    }
}

fn fmt_matrix<S: Scalar>(m: &Matrix<S>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for i in 0..m.n {
        write!(f, "[")?;
        for j in 0..m.n {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", m.at(i, j))?;
        }
        writeln!(f, "]")?;
    }
    Ok(())
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_matrix(self, f)
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_matrix(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn rmat(ring: &FiniteRing, rows: &[&[i64]]) -> Matrix<RingElem> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ring.from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_and_inverse_over_residue_ring() {
        let ring = FiniteRing::zmod(8);
        let m = rmat(&ring, &[&[1, 2, 0], &[0, 1, 3], &[0, 0, 1]]);
        assert_eq!(m.det(), ring.one());
        let inv = m.try_inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let ring = FiniteRing::zmod(8);
        let m = rmat(&ring, &[&[2, 0], &[0, 1]]);
        assert!(m.try_inverse().is_none());
    }

    #[test]
    fn symbolic_determinant() {
        let a = parse_poly("a").unwrap();
        let one = MultiPoly::constant(1);
        let zero = MultiPoly::zero();
        let m = Matrix::from_rows(vec![
            vec![one.clone(), a.clone()],
            vec![zero.clone(), one.clone()],
        ]);
        assert_eq!(m.det(), one);
        let inv = m.try_inverse().unwrap();
        assert_eq!(*inv.at(0, 1), parse_poly("-a").unwrap());
    }
}
