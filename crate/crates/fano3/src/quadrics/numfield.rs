//! Arithmetic in a number field `K = ℚ[θ]/(m)` for a monic irreducible
//! minimal polynomial `m` of degree ≤ 4, plus linear algebra and small
//! polynomial gcds over `K`. This is where algebraic intersection points
//! live: coordinates are polynomials in `θ` with rational coefficients.

use num::{BigRational, One, Zero};

use super::poly::Poly;

/// The field `ℚ[θ]/(m)`; all element operations go through this handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    minpoly: Poly,
}

/// An element `c₀ + c₁θ + … + c_{d−1}θ^{d−1}`, always stored with exactly
/// `d` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KElem {
    coeffs: Vec<BigRational>,
}

impl KElem {
    /// Ascending coefficients (length = field degree).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl NumberField {
    /// Wraps a monic irreducible polynomial of degree ≥ 1. Irreducibility
    /// is the caller's contract (factorization output); moniciy is
    /// asserted.
    pub fn new(minpoly: Poly) -> Self {
        assert!(minpoly.is_monic(), "minimal polynomial must be monic");
        assert!(minpoly.degree().unwrap_or(0) >= 1);
        NumberField { minpoly }
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().expect("degree ≥ 1")
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    pub fn zero(&self) -> KElem {
        KElem { coeffs: vec![BigRational::zero(); self.degree()] }
    }

    pub fn one(&self) -> KElem {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, c: BigRational) -> KElem {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    /// The class of the variable, `θ`.
    pub fn theta(&self) -> KElem {
        if self.degree() == 1 {
            // θ is the rational root itself: θ ≡ −c₀.
            self.from_rational(-self.minpoly.coeff(0))
        } else {
            let mut e = self.zero();
            e.coeffs[1] = BigRational::one();
            e
        }
    }

    /// Reduces a rational polynomial modulo the minimal polynomial.
    pub fn from_poly(&self, f: &Poly) -> KElem {
        let (_, r) = f.divmod(&self.minpoly);
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.degree(), BigRational::zero());
        KElem { coeffs }
    }

    pub fn to_poly(&self, e: &KElem) -> Poly {
        Poly::from_coeffs(e.coeffs.clone())
    }

    pub fn add(&self, a: &KElem, b: &KElem) -> KElem {
        KElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &KElem, b: &KElem) -> KElem {
        KElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &KElem) -> KElem {
        KElem { coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &KElem, c: &BigRational) -> KElem {
        KElem { coeffs: a.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        self.from_poly(&self.to_poly(a).mul(&self.to_poly(b)))
    }

    /// Inverse via the extended Euclidean algorithm; `None` for zero.
    pub fn inv(&self, a: &KElem) -> Option<KElem> {
        if a.is_zero() {
            return None;
        }
        // Bézout: s·a + t·m = gcd = constant (irreducible m, deg a < deg m).
        let (mut r0, mut r1) = (self.minpoly.clone(), self.to_poly(a));
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        // r0 = gcd, nonzero constant because m is irreducible.
        let c = r0.coeff(0);
        assert_eq!(r0.degree(), Some(0), "minimal polynomial was reducible");
        Some(self.from_poly(&t0.scale(&c.recip())))
    }

    pub fn div(&self, a: &KElem, b: &KElem) -> Option<KElem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    /// Evaluates a rational-coefficient polynomial at a field element.
    pub fn eval_poly(&self, f: &Poly, x: &KElem) -> KElem {
        let mut acc = self.zero();
        for c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc.coeffs[0] += c;
        }
        acc
    }

    /// The nontrivial automorphism of a degree-2 field: for
    /// `m = θ² + c₁θ + c₀` the conjugate of `θ` is `−c₁ − θ`.
    pub fn conjugate(&self, a: &KElem) -> KElem {
        assert_eq!(self.degree(), 2, "conjugation implemented for degree 2");
        let c1 = self.minpoly.coeff(1);
        let mut out = self.zero();
        out.coeffs[0] = &a.coeffs[0] - &a.coeffs[1] * &c1;
        out.coeffs[1] = -&a.coeffs[1];
        out
    }
}

// ---------------------------------------------------------------------
// Linear algebra over K.
// ---------------------------------------------------------------------

/// Row-reduces a copy of `rows` and returns its rank.
pub fn k_mat_rank(field: &NumberField, rows: &[Vec<KElem>]) -> usize {
    let (rank, _) = k_rank_kernel(field, rows);
    rank
}

/// Rank and a basis of the right kernel of the matrix.
pub fn k_rank_kernel(field: &NumberField, rows: &[Vec<KElem>]) -> (usize, Vec<Vec<KElem>>) {
    let nrows = rows.len();
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut m: Vec<Vec<KElem>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(&m[r][c]).expect("pivot nonzero");
        for j in 0..ncols {
            m[r][j] = field.mul(&m[r][j], &inv);
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = field.mul(&f, &m[r][j]);
                    m[i][j] = field.sub(&m[i][j], &t);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    let mut kernel = Vec::new();
    for c in 0..ncols {
        if pivot_cols.contains(&c) {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[c] = field.one();
        for (pi, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = field.neg(&m[pi][c]);
        }
        kernel.push(v);
    }
    (r, kernel)
}

// ---------------------------------------------------------------------
// Small polynomials over K (ascending coefficients, trimmed).
// ---------------------------------------------------------------------

pub type KPoly = Vec<KElem>;

pub fn kpoly_trim(mut f: KPoly) -> KPoly {
    while f.last().is_some_and(KElem::is_zero) {
        f.pop();
    }
    f
}

pub fn kpoly_deg(f: &KPoly) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn kpoly_mul(field: &NumberField, a: &KPoly, b: &KPoly) -> KPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let t = field.mul(x, y);
            out[i + j] = field.add(&out[i + j], &t);
        }
    }
    kpoly_trim(out)
}

pub fn kpoly_divmod(field: &NumberField, a: &KPoly, d: &KPoly) -> (KPoly, KPoly) {
    let dd = kpoly_deg(d).expect("division by zero polynomial");
    let dinv = field.inv(d.last().unwrap()).expect("nonzero leading coefficient");
    if a.len() < d.len() {
        return (Vec::new(), a.clone());
    }
    let mut rem = a.clone();
    let mut quot = vec![field.zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = field.mul(&rem[i], &dinv);
        quot[i - dd] = q.clone();
        for (j, dc) in d.iter().enumerate() {
            let t = field.mul(&q, dc);
            rem[i - dd + j] = field.sub(&rem[i - dd + j], &t);
        }
    }
    (kpoly_trim(quot), kpoly_trim(rem))
}

/// Monic gcd in `K[v]`.
pub fn kpoly_gcd(field: &NumberField, a: &KPoly, b: &KPoly) -> KPoly {
    let mut a = kpoly_trim(a.clone());
    let mut b = kpoly_trim(b.clone());
    while !b.is_empty() {
        let (_, r) = kpoly_divmod(field, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    if let Some(l) = a.last().cloned() {
        let inv = field.inv(&l).expect("nonzero leading coefficient");
        a = a.iter().map(|c| field.mul(c, &inv)).collect();
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sqrt2() -> NumberField {
        NumberField::new(Poly::from_i64_coeffs(&[-2, 0, 1]))
    }

    #[test]
    fn inverse_in_quadratic_field() {
        // (1 + √2)(√2 − 1) = 1.
        let k = sqrt2();
        let a = k.add(&k.one(), &k.theta());
        let inv = k.inv(&a).unwrap();
        let expected = k.sub(&k.theta(), &k.one());
        assert_eq!(inv, expected);
        assert_eq!(k.mul(&a, &inv), k.one());
        assert!(k.inv(&k.zero()).is_none());
    }

    #[test]
    fn inverse_in_quartic_field() {
        // θ⁴ = −1, so θ·(−θ³) = 1.
        let k = NumberField::new(Poly::from_i64_coeffs(&[1, 0, 0, 0, 1]));
        let inv = k.inv(&k.theta()).unwrap();
        let mut expected = k.zero();
        expected.coeffs[3] = q(-1, 1);
        assert_eq!(inv, expected);
        // Random-ish element sanity.
        let e = k.from_poly(&Poly::from_i64_coeffs(&[3, -1, 0, 2]));
        let ei = k.inv(&e).unwrap();
        assert_eq!(k.mul(&e, &ei), k.one());
    }

    #[test]
    fn degree_one_fields_are_the_rationals() {
        // m = x − 5/2, so θ = 5/2.
        let k = NumberField::new(Poly::from_coeffs(vec![q(-5, 2), q(1, 1)]));
        assert_eq!(k.theta(), k.from_rational(q(5, 2)));
        let prod = k.mul(&k.theta(), &k.theta());
        assert_eq!(prod, k.from_rational(q(25, 4)));
    }

    #[test]
    fn conjugation_of_quadratic_elements() {
        let k = sqrt2();
        let a = k.add(&k.from_rational(q(3, 1)), &k.theta()); // 3 + √2
        let c = k.conjugate(&a); // 3 − √2
        // a + conj = 6, a·conj = 9 − 2 = 7.
        assert_eq!(k.add(&a, &c), k.from_rational(q(6, 1)));
        assert_eq!(k.mul(&a, &c), k.from_rational(q(7, 1)));
    }

    #[test]
    fn rank_and_kernel_over_k() {
        // [[1, θ], [θ, 2]] over ℚ(√2) has determinant 2 − θ² = 0: rank 1.
        let k = sqrt2();
        let rows = vec![
            vec![k.one(), k.theta()],
            vec![k.theta(), k.from_rational(q(2, 1))],
        ];
        let (rank, kernel) = k_rank_kernel(&k, &rows);
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 1);
        // Kernel vector annihilates both rows.
        for row in &rows {
            let mut acc = k.zero();
            for (a, b) in row.iter().zip(&kernel[0]) {
                let t = k.mul(a, b);
                acc = k.add(&acc, &t);
            }
            assert!(acc.is_zero());
        }
        // Full-rank example.
        let rows2 = vec![
            vec![k.one(), k.theta()],
            vec![k.theta(), k.from_rational(q(3, 1))],
        ];
        assert_eq!(k_mat_rank(&k, &rows2), 2);
    }

    #[test]
    fn gcd_in_k_of_v() {
        // (v − θ)(v − 1) and (v − θ)(v + 1) share exactly v − θ.
        let k = sqrt2();
        let v_minus_theta = vec![k.neg(&k.theta()), k.one()];
        let v_minus_one = vec![k.neg(&k.one()), k.one()];
        let v_plus_one = vec![k.one(), k.one()];
        let a = kpoly_mul(&k, &v_minus_theta, &v_minus_one);
        let b = kpoly_mul(&k, &v_minus_theta, &v_plus_one);
        let g = kpoly_gcd(&k, &a, &b);
        assert_eq!(g, v_minus_theta);
        // Coprime pair gives a constant gcd.
        let g2 = kpoly_gcd(&k, &v_minus_one, &v_plus_one);
        assert_eq!(kpoly_deg(&g2), Some(0));
    }

    #[test]
    fn eval_poly_at_field_element() {
        let k = sqrt2();
        // f = x² − 2 vanishes at θ.
        let f = Poly::from_i64_coeffs(&[-2, 0, 1]);
        assert!(k.eval_poly(&f, &k.theta()).is_zero());
        // g = x² + x − 1 at θ: θ² + θ − 1 = 1 + θ.
        let g = Poly::from_i64_coeffs(&[-1, 1, 1]);
        assert_eq!(k.eval_poly(&g, &k.theta()), k.add(&k.one(), &k.theta()));
    }
}
