//! Exact factorization over the rationals for polynomials of degree ≤ 4.
//!
//! Strategy (classical Zassenhaus): transform to a monic integer
//! polynomial, pick a prime where the reduction stays squarefree, detect
//! irreducibility cheaply via Frobenius-power gcds, otherwise factor mod p
//! by trial division, Hensel-lift the factors past a Mignotte bound, and
//! recombine subsets by exact trial division over the integers. Degree 4
//! is all this toolkit ever needs, which keeps every step elementary.

use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};

use super::poly::Poly;
use super::QuadricsError;

/// Degrees beyond this are rejected (the pipelines only produce ≤ 4).
const MAX_DEGREE: usize = 4;

/// Primes are scanned up to this bound when hunting for a squarefree
/// reduction; in practice one of the first few works.
const PRIME_SCAN_LIMIT: u64 = 1000;

// ---------------------------------------------------------------------
// Polynomials over F_p, ascending coefficients in [0, p), trimmed.
// ---------------------------------------------------------------------

pub(super) type FpPoly = Vec<u64>;

pub(super) fn fp_trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(super) fn fp_deg(f: &FpPoly) -> Option<usize> {
    f.len().checked_sub(1)
}

pub(super) fn fp_reduce_bigint(coeffs: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    fp_trim(coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue fits u64")).collect())
}

pub(super) fn fp_mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

pub(super) fn fp_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    fp_trim(out)
}

pub(super) fn fp_scale(a: &FpPoly, c: u64, p: u64) -> FpPoly {
    fp_trim(a.iter().map(|&x| x * c % p).collect())
}

fn fp_powmod_scalar(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(super) fn fp_inv_scalar(a: u64, p: u64) -> u64 {
    fp_powmod_scalar(a, p - 2, p)
}

/// Quotient and remainder; the divisor need not be monic.
pub(super) fn fp_divmod(a: &FpPoly, d: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let dd = fp_deg(d).expect("division by zero polynomial");
    let dlead_inv = fp_inv_scalar(*d.last().unwrap(), p);
    if a.len() < d.len() {
        return (Vec::new(), a.clone());
    }
    let mut rem = a.clone();
    let mut quot = vec![0u64; rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i] % p;
        if c == 0 {
            continue;
        }
        let q = c * dlead_inv % p;
        quot[i - dd] = q;
        for (j, &dc) in d.iter().enumerate() {
            let sub = q * dc % p;
            let cur = rem[i - dd + j] % p;
            rem[i - dd + j] = (cur + p - sub) % p;
        }
    }
    (fp_trim(quot), fp_trim(rem))
}

pub(super) fn fp_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let (_, r) = fp_divmod(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        a = fp_scale(&a, fp_inv_scalar(l, p), p);
    }
    a
}

/// Extended Euclid: returns (s, t) with s·a + t·b ≡ 1, for coprime a, b.
pub(super) fn fp_bezout(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divmod(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    assert_eq!(fp_deg(&r0), Some(0), "inputs were not coprime");
    let inv = fp_inv_scalar(r0[0], p);
    (fp_scale(&s0, inv, p), fp_scale(&t0, inv, p))
}

fn fp_derivative(f: &FpPoly, p: u64) -> FpPoly {
    if f.len() <= 1 {
        return Vec::new();
    }
    fp_trim(f.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % p) % p).collect())
}

pub(super) fn fp_eval(f: &FpPoly, x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

/// `x^p mod f` by square-and-multiply.
fn fp_frobenius(f: &FpPoly, p: u64) -> FpPoly {
    let mut acc = vec![1u64];
    let mut base = vec![0, 1];
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_divmod(&fp_mul(&acc, &base, p), f, p).1;
        }
        base = fp_divmod(&fp_mul(&base, &base, p), f, p).1;
        e >>= 1;
    }
    acc
}

/// Composition `g(h) mod f`.
fn fp_compose_mod(g: &FpPoly, h: &FpPoly, f: &FpPoly, p: u64) -> FpPoly {
    let mut acc: FpPoly = Vec::new();
    for &c in g.iter().rev() {
        acc = fp_divmod(&fp_mul(&acc, h, p), f, p).1;
        if c != 0 {
            if acc.is_empty() {
                acc = vec![c];
            } else {
                acc[0] = (acc[0] + c) % p;
            }
        }
        acc = fp_trim(acc);
    }
    acc
}

/// Irreducibility of a squarefree monic `f` of degree 2..=4 mod p, via
/// gcds with Frobenius powers: no factor of degree 1 or 2 forces
/// irreducibility for degree ≤ 5.
pub(super) fn fp_is_irreducible(f: &FpPoly, p: u64) -> bool {
    let n = fp_deg(f).unwrap();
    debug_assert!((2..=4).contains(&n));
    let xp = fp_frobenius(f, p);
    let x = vec![0u64, 1];
    let d1 = fp_gcd(&fp_sub(&xp, &x, p), f, p);
    if fp_deg(&d1) != Some(0) {
        return false;
    }
    if n <= 3 {
        return true;
    }
    let xp2 = fp_compose_mod(&xp, &xp, f, p);
    let d2 = fp_gcd(&fp_sub(&xp2, &x, p), f, p);
    fp_deg(&d2) == Some(0)
}

/// Full factorization of a squarefree monic `f` (degree 1..=4) mod p by
/// trial division: roots first, then monic quadratics.
fn fp_factor(f: &FpPoly, p: u64) -> Vec<FpPoly> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    for r in 0..p {
        if fp_deg(&rest) == Some(0) {
            break;
        }
        if fp_eval(&rest, r, p) == 0 {
            let lin = vec![(p - r) % p, 1];
            rest = fp_divmod(&rest, &lin, p).0;
            out.push(lin);
        }
    }
    // Any remaining factor of degree 2 or 3 is irreducible (no roots
    // left); degree 4 may still split into two irreducible quadratics.
    if fp_deg(&rest) == Some(4) {
        'outer: for b in 0..p {
            for c in 0..p {
                let quad = vec![c, b, 1];
                let (q, r) = fp_divmod(&rest, &quad, p);
                if r.is_empty() {
                    out.push(quad);
                    out.push(q);
                    rest = vec![1];
                    break 'outer;
                }
            }
        }
    }
    if fp_deg(&rest).unwrap_or(0) > 0 {
        out.push(rest);
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------
// Integer polynomial helpers (ascending BigInt coefficients, trimmed).
// ---------------------------------------------------------------------

type IPoly = Vec<BigInt>;

fn ip_trim(mut f: IPoly) -> IPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn ip_mul(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ip_trim(out)
}

fn ip_sub(a: &IPoly, b: &IPoly) -> IPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(x - y);
    }
    ip_trim(out)
}

/// Symmetric residue in (−m/2, m/2].
fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn ip_sym_mod(f: &IPoly, m: &BigInt) -> IPoly {
    ip_trim(f.iter().map(|c| sym_mod(c, m)).collect())
}

/// Exact division by a monic divisor over ℤ; `None` if not divisible.
fn ip_div_exact_monic(a: &IPoly, d: &IPoly) -> Option<IPoly> {
    assert!(d.last().is_some_and(One::is_one), "monic divisor required");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < d.len() {
        return None;
    }
    let dd = d.len() - 1;
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let q = rem[i].clone();
        if q.is_zero() {
            continue;
        }
        quot[i - dd] = q.clone();
        for (j, dc) in d.iter().enumerate() {
            let t = &q * dc;
            rem[i - dd + j] -= t;
        }
    }
    if ip_trim(rem).is_empty() {
        Some(ip_trim(quot))
    } else {
        None
    }
}

// ---------------------------------------------------------------------
// Hensel lifting.
// ---------------------------------------------------------------------

/// Lifts `f ≡ a·b (mod p)` (all monic, a, b coprime mod p) to
/// `f ≡ A·B (mod p^K)` by linear Hensel steps; returns (A, B) with
/// symmetric coefficients at each level.
fn hensel_pair(f: &IPoly, a0: &FpPoly, b0: &FpPoly, p: u64, k: u32) -> (IPoly, IPoly) {
    let (_, t) = fp_bezout(a0, b0, p);
    let to_ip = |g: &FpPoly, p: u64| -> IPoly {
        let pb = BigInt::from(p);
        ip_trim(g.iter().map(|&c| sym_mod(&BigInt::from(c), &pb)).collect())
    };
    let mut a = to_ip(a0, p);
    let mut b = to_ip(b0, p);
    let pb = BigInt::from(p);
    let mut m = pb.clone(); // p^j, current precision
    for _ in 1..k {
        // e = (f − a·b)/p^j mod p
        let diff = ip_sub(f, &ip_mul(&a, &b));
        let e_over: IPoly = diff.iter().map(|c| c / &m).collect();
        let e = fp_reduce_bigint(&e_over, p);
        if !e.is_empty() {
            // u = t·e mod a0, v = (e − u·b0)/a0 over F_p.
            let (_, u) = fp_divmod(&fp_mul(&t, &e, p), a0, p);
            let num = fp_sub(&e, &fp_mul(&u, b0, p), p);
            let (v, r) = fp_divmod(&num, a0, p);
            debug_assert!(r.is_empty(), "Hensel correction must divide exactly");
            let ui = to_ip(&u, p);
            let vi = to_ip(&v, p);
            for (i, c) in ui.iter().enumerate() {
                while a.len() <= i {
                    a.push(BigInt::zero());
                }
                a[i] += c * &m;
            }
            for (i, c) in vi.iter().enumerate() {
                while b.len() <= i {
                    b.push(BigInt::zero());
                }
                b[i] += c * &m;
            }
            a = ip_trim(a);
            b = ip_trim(b);
        }
        m *= &pb;
    }
    (a, b)
}

/// Lifts a full factor list `f ≡ ∏ fᵢ (mod p)` to precision `p^K`.
fn hensel_list(f: &IPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<IPoly> {
    if factors.len() == 1 {
        let m = BigInt::from(p).pow(k);
        return vec![ip_sym_mod(f, &m)];
    }
    let a0 = &factors[0];
    let mut b0 = vec![1u64];
    for g in &factors[1..] {
        b0 = fp_mul(&b0, g, p);
    }
    let (a, b) = hensel_pair(f, a0, &b0, p, k);
    let mut out = vec![a];
    out.extend(hensel_list(&b, &factors[1..], p, k));
    out
}

// ---------------------------------------------------------------------
// Top level.
// ---------------------------------------------------------------------

pub(super) fn primes_from_3() -> impl Iterator<Item = u64> {
    (3..PRIME_SCAN_LIMIT).filter(|&n| {
        n % 2 == 1 && (3..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    })
}

/// Mignotte-style bound: every monic divisor of monic `g` has
/// coefficients of absolute value ≤ 8·‖g‖₂ (degree ≤ 4).
fn mignotte_bound(g: &IPoly) -> BigInt {
    let norm_sq: BigInt = g.iter().map(|c| c * c).sum();
    (norm_sq.sqrt() + 1) * 8
}

/// Factors a *squarefree* monic integer polynomial of degree 2..=4 into
/// monic integer irreducibles.
fn factor_monic_squarefree_int(g: &IPoly) -> Result<Vec<IPoly>, QuadricsError> {
    let n = g.len() - 1;
    debug_assert!((2..=4).contains(&n));
    debug_assert!(g.last().is_some_and(One::is_one));

    // Find a prime with squarefree reduction; use the Frobenius test for
    // an early irreducibility exit.
    let mut chosen: Option<(u64, Vec<FpPoly>)> = None;
    let mut scanned = 0usize;
    for p in primes_from_3() {
        let fbar = fp_reduce_bigint(g, p);
        if fp_deg(&fbar) != Some(n) {
            continue; // cannot happen for monic g, kept for safety
        }
        let deriv = fp_derivative(&fbar, p);
        if deriv.is_empty() || fp_deg(&fp_gcd(&fbar, &deriv, p)) != Some(0) {
            continue; // not squarefree mod p
        }
        if fp_is_irreducible(&fbar, p) {
            return Ok(vec![g.clone()]);
        }
        scanned += 1;
        if chosen.is_none() {
            let factors = fp_factor(&fbar, p);
            debug_assert!(factors.len() >= 2);
            chosen = Some((p, factors));
        }
        // A handful of primes is enough to be confident in reducibility
        // structure; stop scanning and lift.
        if scanned >= 6 {
            break;
        }
    }
    let (p, modp_factors) = chosen.ok_or(QuadricsError::TooLargeToFactor)?;

    // Precision: p^K > 2·bound.
    let bound = mignotte_bound(g);
    let target = &bound * 2 + 1;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= target {
        pk *= BigInt::from(p);
        k += 1;
    }

    let lifted = hensel_list(g, &modp_factors, p, k);

    // Subset recombination by increasing cardinality. With at most four
    // local factors, iterating bitmasks ordered by popcount is simplest.
    let mut remaining: Vec<IPoly> = lifted;
    let mut current = g.clone();
    let mut out: Vec<IPoly> = Vec::new();
    'restart: loop {
        let m = remaining.len();
        if m <= 1 {
            break;
        }
        let mut masks: Vec<u32> = (1..(1u32 << m) - 1).collect();
        masks.sort_by_key(|mask| mask.count_ones());
        for mask in masks {
            let mut cand: IPoly = vec![BigInt::one()];
            for (i, factor) in remaining.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    cand = ip_mul(&cand, factor);
                }
            }
            cand = ip_sym_mod(&cand, &pk);
            if !cand.iter().all(|c| c.magnitude() <= bound.magnitude()) {
                continue;
            }
            if let Some(q) = ip_div_exact_monic(&current, &cand) {
                out.push(cand);
                current = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) == 0)
                    .map(|(_, f)| f)
                    .collect();
                continue 'restart;
            }
        }
        // No proper subset divides: the rest is irreducible.
        break;
    }
    if current.len() > 1 {
        out.push(current);
    }
    Ok(out)
}

fn compare_polys(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| {
            for i in 0..=a.degree().unwrap_or(0) {
                let ord = a.coeff(i).cmp(&b.coeff(i));
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        })
}

/// Factors a squarefree rational polynomial of degree 1..=4 into monic
/// irreducible rational polynomials (the leading coefficient is dropped),
/// sorted canonically.
pub fn factor_squarefree_poly(f: &Poly) -> Result<Vec<Poly>, QuadricsError> {
    let n = match f.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    if n > MAX_DEGREE {
        return Err(QuadricsError::TooLargeToFactor);
    }
    if n == 1 {
        return Ok(vec![f.make_monic()]);
    }
    let (prim, _) = f.primitive_integer();
    let lc = prim.last().expect("nonzero").clone();

    // Monic transform: h(y) = lc^(n−1)·f(y/lc) is monic with integer
    // coefficients; its roots are lc·(roots of f).
    let mut monic: IPoly = Vec::with_capacity(n + 1);
    for (i, c) in prim.iter().enumerate() {
        if i == n {
            monic.push(BigInt::one());
        } else {
            monic.push(c * lc.pow((n - 1 - i) as u32));
        }
    }

    let int_factors = factor_monic_squarefree_int(&monic)?;

    // Map back: h_j(lc·x), then normalize to monic over ℚ.
    let mut out: Vec<Poly> = int_factors
        .iter()
        .map(|h| {
            let coeffs: Vec<BigRational> = h
                .iter()
                .enumerate()
                .map(|(i, c)| BigRational::from(c * lc.pow(i as u32)))
                .collect();
            Poly::from_coeffs(coeffs).make_monic()
        })
        .collect();
    out.sort_by(compare_polys);

    // Safety: the product of the monic factors must reproduce f/lc.
    let product = out.iter().fold(Poly::one(), |acc, g| acc.mul(g));
    debug_assert_eq!(product, f.make_monic(), "factorization must multiply back");
    Ok(out)
}

/// Full factorization (Yun, then each squarefree part): returns monic
/// irreducible factors with multiplicities, sorted canonically.
pub fn factor_poly(f: &Poly) -> Result<Vec<(Poly, usize)>, QuadricsError> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for g in factor_squarefree_poly(&part)? {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| compare_polys(&a.0, &b.0));
    Ok(out)
}
