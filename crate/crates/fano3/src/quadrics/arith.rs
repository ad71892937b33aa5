//! Exact integer arithmetic: primality testing, factorization, square
//! roots modulo a prime, Chinese remaindering, and squarefree
//! decomposition.
//!
//! Primality is deterministic Miller–Rabin below 2⁶⁴ (the twelve-prime
//! witness set) and Baillie–PSW above it; factoring is trial division
//! followed by Brent's variant of Pollard rho. All routines take and
//! return arbitrary-precision integers.

use std::collections::BTreeMap;

use num::bigint::{BigInt, BigUint};
use num::integer::{ExtendedGcd, Integer};
use num::{One, Signed, ToPrimitive, Zero};

use super::QuadricsError;

/// Bases proving Miller–Rabin deterministic for all n < 3.3·10²⁴ ⊇ u64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Upper bound for the trial-division wheel in [`factor`].
const TRIAL_LIMIT: u64 = 4096;

/// Iteration budget for one Pollard–Brent attempt.
const BRENT_BUDGET: u64 = 1 << 21;

/// Number of Pollard–Brent restarts (fresh parameters) before giving up.
const BRENT_RESTARTS: u64 = 24;

fn mulmod_u128(a: u128, b: u128, m: u128) -> u128 {
    // Fast path: operands fit in 64 bits, so the product fits in 128.
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return a.wrapping_mul(b) % m;
    }
    let big = BigUint::from(a) * BigUint::from(b) % BigUint::from(m);
    big.to_u128().expect("residue fits u128")
}

fn powmod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc: u128 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u128(acc, base, m);
        }
        base = mulmod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u128(n: u128, base: u128) -> bool {
    // n odd, n > 2, base not divisible by n.
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let mut x = powmod_u128(base, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mulmod_u128(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut sign = 1i32;
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let four = BigInt::from(4);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    while !a.is_zero() {
        while a.is_even() {
            a /= &two;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            sign = -sign;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        sign
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
///
/// Assumes `n` odd, `n > 2`, not a perfect square.
fn strong_lucas_prp(n: &BigUint) -> bool {
    let ni = BigInt::from(n.clone());
    // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, &ni) {
            -1 => break,
            0 => {
                // gcd(D, n) > 1 reveals a factor unless |D| = n.
                if d.abs() != ni {
                    return false;
                }
            }
            _ => {}
        }
        d = if d.is_positive() { -(d + BigInt::from(2)) } else { -(d - BigInt::from(2)) };
    }
    let p = BigInt::one();
    let q = (BigInt::one() - &d) / BigInt::from(4);

    // n + 1 = k · 2^s with k odd.
    let np1 = n + 1u32;
    let s = np1.trailing_zeros().expect("n+1 > 0");
    let k = &np1 >> s;

    let reduce = |x: &BigInt| -> BigInt { x.mod_floor(&ni) };
    let inv2 = (&ni + 1) / 2; // inverse of 2 modulo odd n
    let halve = |x: BigInt| -> BigInt {
        if x.is_even() {
            reduce(&(x / 2))
        } else {
            reduce(&(x * &inv2))
        }
    };

    // Lucas ladder for U_k, V_k, Q^k (mod n), consuming bits of k from
    // the second-highest down.
    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = reduce(&q);
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        // (U, V)_m -> (U, V)_{2m}
        u = reduce(&(&u * &v));
        v = reduce(&(&v * &v - 2 * &qk));
        qk = reduce(&(&qk * &qk));
        if k.bit(i) {
            // -> (U, V)_{2m+1}
            let un = halve(&p * &u + &v);
            let vn = halve(&d * &u + &p * &v);
            u = un;
            v = vn;
            qk = reduce(&(&qk * &q));
        }
    }

    if u.is_zero() || v.is_zero() {
        return true;
    }
    // Check V_{k·2^r} for r = 1..s-1.
    for _ in 1..s {
        v = reduce(&(&v * &v - 2 * &qk));
        if v.is_zero() {
            return true;
        }
        qk = reduce(&(&qk * &qk));
    }
    false
}

/// Deterministic primality below 2⁶⁴; Baillie–PSW (no known
/// counterexamples) above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    // n ≥ 2^64 here, certainly odd or caught below.
    if n.is_even() {
        return false;
    }
    let n128 = n.to_u128();
    // Strong base-2 test.
    match n128 {
        Some(m) => {
            if !strong_probable_prime_u128(m, 2) {
                return false;
            }
        }
        None => {
            let d = n - 1u32;
            let s = d.trailing_zeros().expect("n > 1");
            let k = &d >> s;
            let mut x = BigUint::from(2u32).modpow(&k, n);
            let nm1 = n - 1u32;
            if !(x.is_one() || x == nm1) {
                let mut ok = false;
                for _ in 1..s {
                    x = &x * &x % n;
                    if x == nm1 {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return false;
                }
            }
        }
    }
    // Perfect squares are composite and would stall Selfridge's search.
    let r = n.sqrt();
    if &r * &r == *n {
        return false;
    }
    strong_lucas_prp(n)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    MR_BASES
        .iter()
        .all(|&b| strong_probable_prime_u128(n as u128, b as u128))
}

/// One Pollard–Brent attempt; returns a nontrivial factor of composite
/// odd `n` or `None` if the cycle degenerated for these parameters.
fn pollard_brent(n: &BigUint, seed: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1);
    let mut rand_below = |m: &BigUint| -> BigUint {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        BigUint::from(state) % m
    };
    let c = &rand_below(&(n - 3u32)) + 1u32;
    let mut y = &rand_below(&(n - 1u32)) + 1u32;
    let step = |x: &BigUint| -> BigUint { (x * x + &c) % n };
    let m = 128u64;
    let mut g = BigUint::one();
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut spent = 0u64;
    while g.is_one() && spent < BRENT_BUDGET {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0u64;
        while k < r && g.is_one() {
            ys = y.clone();
            let batch = m.min(r - k);
            for _ in 0..batch {
                y = step(&y);
                let diff = if x >= y { &x - &y } else { &y - &x };
                q = q * diff % n;
            }
            g = q.gcd(n);
            k += batch;
            spent += batch;
        }
        r *= 2;
    }
    if g == *n {
        // Backtrack one at a time.
        loop {
            ys = step(&ys);
            let diff = if x >= ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g.is_one() || g == *n {
        None
    } else {
        Some(g)
    }
}

/// Complete factorization of a positive integer into prime powers.
pub fn factor(n: &BigUint) -> Result<BTreeMap<BigUint, u32>, QuadricsError> {
    assert!(!n.is_zero(), "zero has no factorization");
    let mut map = BTreeMap::new();
    let mut n = n.clone();
    // Trial division by 2, 3, and a 6k±1 wheel.
    let push = |map: &mut BTreeMap<BigUint, u32>, p: u64, n: &mut BigUint| {
        let pb = BigUint::from(p);
        while (&*n % &pb).is_zero() {
            *map.entry(pb.clone()).or_insert(0) += 1;
            *n /= &pb;
        }
    };
    push(&mut map, 2, &mut n);
    push(&mut map, 3, &mut n);
    let mut p = 5u64;
    while p < TRIAL_LIMIT && BigUint::from(p) * BigUint::from(p) <= n {
        push(&mut map, p, &mut n);
        push(&mut map, p + 2, &mut n);
        p += 6;
    }
    // Rho on the remaining cofactors.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            *map.entry(m).or_insert(0) += 1;
            continue;
        }
        // Composite: perfect powers split fine under rho, but a square
        // root attempt first is cheap and helps squares of primes.
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let mut found = None;
        for attempt in 0..BRENT_RESTARTS {
            if let Some(d) = pollard_brent(&m, attempt.wrapping_add(0xC0FFEE)) {
                found = Some(d);
                break;
            }
        }
        match found {
            Some(d) => {
                stack.push(&m / &d);
                stack.push(d);
            }
            None => return Err(QuadricsError::TooLargeToFactor),
        }
    }
    Ok(map)
}

/// Factorization of `|n|` for a nonzero signed integer.
pub fn factor_int(n: &BigInt) -> Result<BTreeMap<BigUint, u32>, QuadricsError> {
    factor(n.magnitude())
}

/// Writes `n = s·t²` with `s` squarefree carrying the sign of `n`;
/// returns `(s, t)` with `t > 0`.
pub fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, BigInt), QuadricsError> {
    assert!(!n.is_zero(), "zero has no squarefree part");
    let map = factor_int(n)?;
    let mut s = BigInt::one();
    let mut t = BigInt::one();
    for (p, e) in map {
        let pi = BigInt::from(p);
        if e % 2 == 1 {
            s *= &pi;
        }
        t *= pi.pow(e / 2);
    }
    if n.is_negative() {
        s = -s;
    }
    Ok((s, t))
}

/// Exact integer square root: `Some(r)` with `r² = n` when `n` is a
/// perfect square, `None` otherwise.
pub fn sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let m = n.magnitude();
    let r = m.sqrt();
    if &(&r * &r) == m {
        Some(BigInt::from(r))
    } else {
        None
    }
}

/// Square root of `a` modulo the prime `p` (Tonelli–Shanks), or `None`
/// when `a` is a quadratic nonresidue.
pub fn sqrt_mod_prime(a: &BigUint, p: &BigUint) -> Option<BigUint> {
    let a = a % p;
    if p == &BigUint::from(2u32) {
        return Some(a);
    }
    if a.is_zero() {
        return Some(a);
    }
    let one = BigUint::one();
    let pm1 = p - &one;
    let legendre = a.modpow(&(&pm1 / 2u32), p);
    if legendre != one {
        return None;
    }
    let root = if (p % 4u32) == BigUint::from(3u32) {
        a.modpow(&((p + 1u32) / 4u32), p)
    } else {
        // Full Tonelli–Shanks. p − 1 = q·2^s, q odd.
        let s = pm1.trailing_zeros().expect("p > 1");
        let q = &pm1 >> s;
        // Find a nonresidue z.
        let mut z = BigUint::from(2u32);
        while z.modpow(&(&pm1 / 2u32), p) == one {
            z += 1u32;
        }
        let mut m = s;
        let mut c = z.modpow(&q, p);
        let mut t = a.modpow(&q, p);
        let mut r = a.modpow(&((&q + 1u32) / 2u32), p);
        while !t.is_one() {
            // Least i with t^(2^i) = 1.
            let mut i = 0u64;
            let mut probe = t.clone();
            while !probe.is_one() {
                probe = &probe * &probe % p;
                i += 1;
            }
            let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
            m = i;
            c = &b * &b % p;
            t = t * &c % p;
            r = r * b % p;
        }
        r
    };
    debug_assert_eq!(&root * &root % p, a);
    Some(root)
}

/// Modular inverse of `a` modulo `m` (coprime inputs), reduced to
/// `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let ExtendedGcd { gcd, x, .. } = a.extended_gcd(m);
    if !gcd.is_one() {
        return None;
    }
    Some(x.mod_floor(m))
}

/// Chinese remainder theorem for pairwise coprime moduli; returns the
/// unique residue modulo the product.
pub fn crt(congruences: &[(BigInt, BigInt)]) -> Option<BigInt> {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in congruences {
        // Solve x' ≡ x (mod modulus), x' ≡ r (mod m).
        let inv = mod_inverse(&modulus, m)?;
        let diff = (r - &x).mod_floor(m);
        x += &modulus * (diff * inv).mod_floor(m);
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    Some(x)
}
