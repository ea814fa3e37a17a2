//! Exact integer linear algebra: dense matrices over arbitrary-precision
//! integers and the Smith normal form with unimodular transforms.
//!
//! The reduction pivots on the minimal-absolute-value nonzero entry of the
//! working submatrix to keep coefficient growth down, and enforces the
//! divisibility chain d_1 | d_2 | ... before moving past a pivot.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over `BigInt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
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

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    /// Determinant of a square matrix by fraction-free (Bareiss)
    /// elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            for i in k + 1..n {
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Smith normal form of an integer matrix: `row_transform * m *
/// col_transform` is diagonal with the positive invariant factors
/// `d_1 | d_2 | ... | d_r` in the leading positions and zeros elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub factors: Vec<BigInt>,
    pub diagonal: IntMatrix,
    pub row_transform: IntMatrix,
    pub col_transform: IntMatrix,
}

impl SmithDecomposition {
    /// Re-checks the decomposition against the original matrix by exact
    /// multiplication: transform product equals the diagonal, transforms are
    /// unimodular, factors are positive and form a divisibility chain.
    pub fn verify(&self, original: &IntMatrix) -> std::result::Result<(), String> {
        let product = self.row_transform.mul(original).mul(&self.col_transform);
        if product != self.diagonal {
            return Err("U*m*W does not equal the diagonal form".into());
        }
        if self.row_transform.determinant().abs() != BigInt::one() {
            return Err("row transform is not unimodular".into());
        }
        if self.col_transform.determinant().abs() != BigInt::one() {
            return Err("column transform is not unimodular".into());
        }
        for (k, d) in self.factors.iter().enumerate() {
            if !d.is_positive() {
                return Err(format!("factor {d} is not positive"));
            }
            if self.diagonal.get(k, k) != d {
                return Err("diagonal does not carry the factors".into());
            }
            if k + 1 < self.factors.len() && !(&self.factors[k + 1] % d).is_zero() {
                return Err(format!("divisibility fails: {} does not divide {}", d, self.factors[k + 1]));
            }
        }
        for i in 0..self.diagonal.rows() {
            for j in 0..self.diagonal.cols() {
                let expected_nonzero = i == j && i < self.factors.len();
                if self.diagonal.get(i, j).is_zero() == expected_nonzero {
                    return Err("diagonal has entries outside the factor positions".into());
                }
            }
        }
        Ok(())
    }
}

/// Position of the minimal-absolute-value nonzero entry of the submatrix
/// starting at (k, k), if any.
fn min_abs_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if v.abs() < a.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Computes the Smith normal form with full transform tracking. Empty
/// matrices are allowed and yield an empty factor list.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut w = IntMatrix::identity(cols);
    let limit = rows.min(cols);
    let mut k = 0;
    while k < limit {
        let Some((pi, pj)) = min_abs_pivot(&a, k) else {
            break;
        };
        a.swap_rows(k, pi);
        u.swap_rows(k, pi);
        a.swap_cols(k, pj);
        w.swap_cols(k, pj);
        loop {
            // Euclidean reduction of column k.
            let mut dirty = false;
            for i in k + 1..rows {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let q = -(a.get(i, k) / a.get(k, k));
                a.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                if !a.get(i, k).is_zero() {
                    // Remainder is smaller than the pivot: promote it.
                    a.swap_rows(k, i);
                    u.swap_rows(k, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Euclidean reduction of row k.
            for j in k + 1..cols {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let q = -(a.get(k, j) / a.get(k, k));
                a.add_col_multiple(j, k, &q);
                w.add_col_multiple(j, k, &q);
                if !a.get(k, j).is_zero() {
                    a.swap_cols(k, j);
                    w.swap_cols(k, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide the remaining submatrix for the chain to
            // hold; fold an offending row in and reduce again.
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(a.get(i, j) % a.get(k, k)).is_zero());
            match offender {
                Some((i, _)) => {
                    a.add_row_multiple(k, i, &BigInt::one());
                    u.add_row_multiple(k, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a.get(k, k).is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    let factors: Vec<BigInt> = (0..k).map(|i| a.get(i, i).clone()).collect();
    let snf = SmithDecomposition {
        factors,
        diagonal: a,
        row_transform: u,
        col_transform: w,
    };
    debug_assert_eq!(snf.verify(m), Ok(()));
    snf
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_has_unit_factors() {
        let snf = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(snf.factors, [BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn two_by_two_with_known_factors() {
        // d1*d2 = |det| = 8, d1 = gcd of entries = 2.
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.factors, [BigInt::from(2), BigInt::from(4)]);
        snf.verify(&m).unwrap();
    }

    #[test]
    fn single_nonzero_row_reduces_to_one_factor() {
        for p in [2i64, 3, 5, 7] {
            let m = IntMatrix::from_rows(&[
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0],
                vec![0, p, -p, 0],
            ]);
            let snf = smith_normal_form(&m);
            assert_eq!(snf.factors, [BigInt::from(p)]);
            snf.verify(&m).unwrap();
        }
    }

    #[test]
    fn empty_and_zero_matrices() {
        let empty = IntMatrix::zero(0, 3);
        let snf = smith_normal_form(&empty);
        assert!(snf.factors.is_empty());
        snf.verify(&empty).unwrap();

        let zero = IntMatrix::zero(2, 2);
        let snf = smith_normal_form(&zero);
        assert!(snf.factors.is_empty());
        snf.verify(&zero).unwrap();
    }

    #[test]
    fn divisibility_chain_on_a_stubborn_matrix() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.factors, [BigInt::from(1), BigInt::from(6)]);
        snf.verify(&m).unwrap();
    }

    #[test]
    fn determinant_matches_factor_product_up_to_sign() {
        let m = IntMatrix::from_rows(&[vec![3, 1, -4], vec![2, 5, 6], vec![1, 4, 8]]);
        let snf = smith_normal_form(&m);
        let product: BigInt = snf.factors.iter().product();
        assert_eq!(product, m.determinant().abs());
    }

    proptest! {
        #[test]
        fn random_matrices_verify(
            rows in 1usize..5,
            cols in 1usize..5,
            entries in proptest::collection::vec(-20i64..=20, 16),
        ) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| entries[i * cols + j]).collect())
                .collect();
            let m = IntMatrix::from_rows(&data);
            let snf = smith_normal_form(&m);
            prop_assert_eq!(snf.verify(&m), Ok(()));
        }
    }
}
