//! Dense matrices over the exact rationals.
//!
//! A tiny row-major matrix type with just the operations the quadric
//! analysis needs: products, transposes, fraction-free-safe Gaussian
//! elimination for rank/kernel/determinant, symmetric congruence
//! diagonalization, and the `"numerator/denominator"` string encoding used
//! on the wire.

use num::{BigInt, BigRational, One, Signed, Zero};

use super::QuadricsError;

/// Parses `"a/b"` or `"a"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, QuadricsError> {
    let bad = || QuadricsError::BadRational { text: s.to_string() };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `"numerator/denominator"` in lowest terms.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// A dense matrix with `BigRational` entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl serde::Serialize for QMat {
    /// Rows of `"numerator/denominator"` strings.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&self.to_string_rows(), serializer)
    }
}

impl QMat {
    /// The zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> QMat {
        QMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> QMat {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from rows of rationals; all rows must have equal
    /// length.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<QMat, QuadricsError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(QuadricsError::RaggedMatrix);
        }
        Ok(QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix from integer rows (test and generator convenience).
    pub fn from_i64_rows(rows: &[&[i64]]) -> QMat {
        QMat::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
        .expect("integer rows are rectangular")
    }

    /// Parses a matrix of `"num/den"` strings.
    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<QMat, QuadricsError> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        QMat::from_rows(parsed)
    }

    /// Serializes to rows of `"num/den"` strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format_rational(self.get(i, j))).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i).clone()))
    }

    /// Whether `self = λ · other` for some rational `λ` (zero matrices count
    /// as proportional to everything).
    pub fn is_proportional_to(&self, other: &QMat) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        if self.is_zero() || other.is_zero() {
            return true;
        }
        let k = match self.data.iter().position(|x| !x.is_zero()) {
            Some(k) => k,
            None => return true,
        };
        if other.data[k].is_zero() {
            return false;
        }
        let lambda = &self.data[k] / &other.data[k];
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| *a == b * &lambda)
    }

    pub fn transpose(&self) -> QMat {
        let mut m = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut m = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        m
    }

    pub fn scale(&self, c: &BigRational) -> QMat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a *= c;
        }
        m
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// The congruence transform `Sᵀ · self · S`.
    pub fn congruence(&self, s: &QMat) -> QMat {
        s.transpose().mul(self).mul(s)
    }

    /// Deletes one row and one column (for principal minors/Pfaffians).
    pub fn delete_row_col(&self, r: usize, c: usize) -> QMat {
        let mut out = QMat::zeros(self.rows - 1, self.cols - 1);
        let mut oi = 0;
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let mut oj = 0;
            for j in 0..self.cols {
                if j == c {
                    continue;
                }
                out.set(oi, oj, self.get(i, j).clone());
                oj += 1;
            }
            oi += 1;
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.rows, other.rows);
        let mut m = QMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigRational>]) -> QMat {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = QMat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// The column vectors of the matrix.
    pub fn columns(&self) -> Vec<Vec<BigRational>> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Row echelon data: the rank and a basis of the kernel.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<BigRational>>) {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(row, col).clone();
            for j in 0..m.cols {
                let v = m.get(row, j) / &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for j in 0..m.cols {
                        let v = m.get(r, j) - m.get(row, j) * &factor;
                        m.set(r, j, v);
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let rank = pivot_cols.len();
        let mut kernel = Vec::new();
        let free_cols: Vec<usize> =
            (0..m.cols).filter(|c| !pivot_cols.contains(c)).collect();
        for &fc in &free_cols {
            let mut v = vec![BigRational::zero(); m.cols];
            v[fc] = BigRational::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m.get(r, fc).clone();
            }
            kernel.push(v);
        }
        (rank, kernel)
    }

    /// The rank.
    pub fn rank(&self) -> usize {
        self.rank_kernel().0
    }

    /// The determinant of a square matrix.
    pub fn det(&self) -> BigRational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else {
                return BigRational::zero();
            };
            if p != col {
                det = -det;
                for j in 0..n {
                    let a = m.get(col, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(col, j, b);
                    m.set(p, j, a);
                }
            }
            let pv = m.get(col, col).clone();
            det *= &pv;
            for r in col + 1..n {
                if !m.get(r, col).is_zero() {
                    let factor = m.get(r, col) / &pv;
                    for j in col..n {
                        let v = m.get(r, j) - m.get(col, j) * &factor;
                        m.set(r, j, v);
                    }
                }
            }
        }
        det
    }

    /// Congruence-diagonalizes a symmetric matrix: returns `(T, d)` with
    /// `Tᵀ · self · T = diag(d)`. Zero diagonal entries are pushed to the
    /// positions of the kernel directions encountered.
    pub fn symmetric_diagonalize(&self) -> (QMat, Vec<BigRational>) {
        assert!(self.is_symmetric(), "diagonalization needs a symmetric matrix");
        let n = self.rows;
        let mut d = self.clone();
        let mut t = QMat::identity(n);
        // Column operation col_a += c * col_b applied congruently to `d`
        // (rows and columns) and as a plain column operation to `t`.
        let col_op = |d: &mut QMat, t: &mut QMat, a: usize, b: usize, c: &BigRational| {
            for i in 0..n {
                let v = d.get(i, a) + d.get(i, b) * c;
                d.set(i, a, v);
            }
            for j in 0..n {
                let v = d.get(a, j) + d.get(b, j) * c;
                d.set(a, j, v);
            }
            for i in 0..n {
                let v = t.get(i, a) + t.get(i, b) * c;
                t.set(i, a, v);
            }
        };
        let swap_cols = |d: &mut QMat, t: &mut QMat, a: usize, b: usize| {
            for i in 0..n {
                let x = d.get(i, a).clone();
                let y = d.get(i, b).clone();
                d.set(i, a, y);
                d.set(i, b, x);
            }
            for j in 0..n {
                let x = d.get(a, j).clone();
                let y = d.get(b, j).clone();
                d.set(a, j, y);
                d.set(b, j, x);
            }
            for i in 0..n {
                let x = t.get(i, a).clone();
                let y = t.get(i, b).clone();
                t.set(i, a, y);
                t.set(i, b, x);
            }
        };
        for i in 0..n {
            if d.get(i, i).is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !d.get(j, j).is_zero()) {
                    swap_cols(&mut d, &mut t, i, j);
                } else if let Some(j) = (i + 1..n).find(|&j| !d.get(i, j).is_zero()) {
                    let one = BigRational::one();
                    col_op(&mut d, &mut t, i, j, &one);
                }
            }
            if d.get(i, i).is_zero() {
                continue;
            }
            let pivot = d.get(i, i).clone();
            for j in i + 1..n {
                if !d.get(i, j).is_zero() {
                    let c = -(d.get(i, j) / &pivot);
                    col_op(&mut d, &mut t, j, i, &c);
                }
            }
        }
        let diag = (0..n).map(|i| d.get(i, i).clone()).collect();
        (t, diag)
    }
}

/// Scales a rational vector to a primitive integer vector (clears
/// denominators and divides by the content), preserving the sign of the
/// first nonzero entry.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    use num::Integer;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for x in &scaled {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() || gcd.is_one() {
        return scaled;
    }
    scaled.into_iter().map(|x| x / &gcd).collect()
}

/// The sign (+1, 0, −1) of a rational.
pub fn sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
