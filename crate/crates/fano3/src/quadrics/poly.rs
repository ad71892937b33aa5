//! Univariate polynomials over the rationals: exact arithmetic, division
//! with remainder, Euclidean gcd, Yun's squarefree decomposition, and
//! determinants of small matrices with polynomial entries (used for
//! Sylvester resultants).

use num::{BigInt, BigRational, One, Signed, Zero};

/// A polynomial with exact rational coefficients, stored in ascending
/// degree order with no trailing zeros (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl serde::Serialize for Poly {
    /// Ascending `"numerator/denominator"` coefficient strings.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> =
            self.coeffs.iter().map(super::ratmat::format_rational).collect();
        serde::Serialize::serialize(&strings, serializer)
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Poly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients (empty for zero).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Poly { coeffs: out }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    /// Quotient and remainder with `deg r < deg d`; panics on zero divisor.
    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        let dlead = d.leading().expect("division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / dlead;
            quot[i - dd] = q.clone();
            for (j, c) in d.coeffs.iter().enumerate() {
                let t = &q * c;
                rem[i - dd + j] -= t;
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divmod(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn make_monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic gcd by the Euclidean algorithm (monic-normalized steps).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.make_monic();
        let mut b = other.make_monic();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r.make_monic();
        }
        a
    }

    /// Yun's squarefree decomposition: returns `[(g₁,1), (g₂,2), …]` with
    /// `self = lc · ∏ gᵢ^i`, the `gᵢ` monic, squarefree, pairwise coprime
    /// (constant parts omitted).
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let f = self.make_monic();
        if f.degree() == Some(0) {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1usize;
        while b.degree().unwrap_or(0) > 0 {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g);
            c = d.div_exact(&g);
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// The product of the distinct irreducible factors (monic).
    pub fn radical(&self) -> Poly {
        self.squarefree_decomposition()
            .into_iter()
            .fold(Poly::one(), |acc, (g, _)| acc.mul(&g))
    }

    /// Clears denominators and the content: returns `(k, c)` with `k`
    /// primitive integer coefficients (positive leading) and `self = c·k`.
    pub fn primitive_integer(&self) -> (Vec<BigInt>, BigRational) {
        assert!(!self.is_zero());
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * BigRational::from(denom_lcm.clone())).to_integer()).collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = num::integer::gcd(content, v.clone());
        }
        if ints.last().expect("nonzero").is_negative() {
            content = -content;
        }
        let prim: Vec<BigInt> = ints.iter().map(|v| v / &content).collect();
        let scale = BigRational::new(content, denom_lcm);
        (prim, scale)
    }

    /// Renders with an explicit variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match i {
                0 => format!("{mag}"),
                1 if mag.is_one() => var.to_string(),
                1 => format!("{mag}*{var}"),
                _ if mag.is_one() => format!("{var}^{i}"),
                _ => format!("{mag}*{var}^{i}"),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            parts.push((sign, body));
        }
        let mut out = String::new();
        for (k, (sign, body)) in parts.iter().enumerate() {
            if k == 0 {
                if *sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if *sign == "-" { " - " } else { " + " });
            }
            out.push_str(body);
        }
        out
    }
}

/// Determinant of a small square matrix with polynomial entries, by
/// cofactor expansion (fine for the 4×4 Sylvester matrices used here).
pub fn poly_mat_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix required");
    match n {
        0 => Poly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut det = Poly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&poly_mat_det(&minor));
                if j % 2 == 0 {
                    det = det.add(&term);
                } else {
                    det = det.sub(&term);
                }
            }
            det
        }
    }
}

/// Resultant of two quadratics `a₂v² + a₁v + a₀` and `b₂v² + b₁v + b₀`
/// whose coefficients are themselves polynomials (the 4×4 Sylvester
/// determinant). The inputs are the coefficient triples `[a₀, a₁, a₂]`
/// and `[b₀, b₁, b₂]` in ascending order.
pub fn resultant_of_quadratics(a: &[Poly; 3], b: &[Poly; 3]) -> Poly {
    let z = Poly::zero();
    let rows = vec![
        vec![a[2].clone(), a[1].clone(), a[0].clone(), z.clone()],
        vec![z.clone(), a[2].clone(), a[1].clone(), a[0].clone()],
        vec![b[2].clone(), b[1].clone(), b[0].clone(), z.clone()],
        vec![z.clone(), b[2].clone(), b[1].clone(), b[0].clone()],
    ];
    poly_mat_det(&rows)
}
