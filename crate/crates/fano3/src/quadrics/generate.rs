//! Deterministic, seeded generation of random quadric-net and skew-pencil
//! instances with small integer entries.
//!
//! All generators draw entries from `[-9, 9]` through a SplitMix64 stream,
//! so a seed fully determines the instance. Degenerate draws (singular
//! where invertibility is needed, overlapping vertex planes, …) are
//! retried up to a fixed budget and then reported as an error rather than
//! silently reseeded.

use num::{BigInt, BigRational, Zero};

use super::ratmat::QMat;
use super::{QuadraticForm, QuadricsError, SkewPencil};

/// Retries allowed before a generator reports failure.
pub const RETRY_BUDGET: usize = 8;

/// SplitMix64: a tiny, high-quality 64-bit mixing generator with a
/// one-word state; deterministic across platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `lo..=hi` by rejection (exactly unbiased).
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        let limit = u64::MAX - u64::MAX % span;
        loop {
            let r = self.next_u64();
            if r < limit {
                return lo + (r % span) as i64;
            }
        }
    }

    fn entry(&mut self) -> BigRational {
        BigRational::from(BigInt::from(self.int_in(-9, 9)))
    }
}

/// A random matrix with integer entries in `[-9, 9]`.
pub fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> QMat {
    let mut m = QMat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.entry());
        }
    }
    m
}

/// A random symmetric matrix with integer entries in `[-9, 9]`.
pub fn random_symmetric(rng: &mut SplitMix64, n: usize) -> QMat {
    let mut m = QMat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let e = rng.entry();
            m.set(i, j, e.clone());
            m.set(j, i, e);
        }
    }
    m
}

/// A random antisymmetric matrix with integer entries in `[-9, 9]`.
pub fn random_antisymmetric(rng: &mut SplitMix64, n: usize) -> QMat {
    let mut m = QMat::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let e = rng.entry();
            m.set(i, j, e.clone());
            m.set(j, i, -e);
        }
    }
    m
}

/// A random invertible matrix (entries in `[-9, 9]`), retried within the
/// budget.
pub fn random_invertible(rng: &mut SplitMix64, n: usize) -> QMat {
    // A random integer matrix is invertible with overwhelming
    // probability; the budget is a formality.
    for _ in 0..RETRY_BUDGET {
        let m = random_matrix(rng, n, n);
        if !m.det().is_zero() {
            return m;
        }
    }
    unreachable!("{} singular draws in a row", RETRY_BUDGET)
}

/// A random rank-2 antisymmetric `n×n` matrix `a·bᵀ − b·aᵀ`.
pub fn random_rank2_antisymmetric(rng: &mut SplitMix64, n: usize) -> QMat {
    loop {
        let a: Vec<BigRational> = (0..n).map(|_| rng.entry()).collect();
        let b: Vec<BigRational> = (0..n).map(|_| rng.entry()).collect();
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, &a[i] * &b[j] - &b[i] * &a[j]);
            }
        }
        if !m.is_zero() {
            return m;
        }
    }
}

/// A random symmetric 7×7 form of corank exactly 3: `Tᵀ (D ⊕ 0₃) T` with
/// `T` invertible and `D` an invertible symmetric 4×4 block.
pub fn random_corank3_form(rng: &mut SplitMix64, t: &QMat) -> QuadraticForm {
    let d = loop {
        let cand = random_symmetric(rng, 4);
        if !cand.det().is_zero() {
            break cand;
        }
    };
    let mut padded = QMat::zeros(7, 7);
    for i in 0..4 {
        for j in 0..4 {
            padded.set(i, j, d.get(i, j).clone());
        }
    }
    QuadraticForm::new(padded.congruence(t)).expect("congruence preserves symmetry")
}

/// A net `(Q₁, Q₂, Q₃)` of quadrics in seven variables with
/// `corank(Q₁) = 3` and `Q₂`, `Q₃` random.
pub fn gen_corank3_net(
    seed: u64,
) -> Result<(QuadraticForm, QuadraticForm, QuadraticForm), QuadricsError> {
    let mut rng = SplitMix64::new(seed);
    let t = random_invertible(&mut rng, 7);
    let q1 = random_corank3_form(&mut rng, &t);
    let q2 = QuadraticForm::new(random_symmetric(&mut rng, 7)).expect("symmetric by construction");
    let q3 = QuadraticForm::new(random_symmetric(&mut rng, 7)).expect("symmetric by construction");
    Ok((q1, q2, q3))
}

/// A net `(Q₁, Q₂, Q₃)` with `corank(Q₁) = corank(Q₂) = 3` and the two
/// vertex planes spanning a 6-space (disjoint planes in projective space).
pub fn gen_two_corank3_net(
    seed: u64,
) -> Result<(QuadraticForm, QuadraticForm, QuadraticForm), QuadricsError> {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..RETRY_BUDGET {
        let t1 = random_invertible(&mut rng, 7);
        let t2 = random_invertible(&mut rng, 7);
        let q1 = random_corank3_form(&mut rng, &t1);
        let q2 = random_corank3_form(&mut rng, &t2);
        let (_, v1) = super::corank(&q1);
        let (_, v2) = super::corank(&q2);
        let mut cols: Vec<Vec<BigRational>> = v1;
        cols.extend(v2);
        let stacked = QMat::from_columns(&cols);
        if stacked.rank() == 6 {
            let q3 =
                QuadraticForm::new(random_symmetric(&mut rng, 7)).expect("symmetric by construction");
            return Ok((q1, q2, q3));
        }
    }
    Err(QuadricsError::GenerationExhausted { attempts: RETRY_BUDGET })
}

/// A generic random skew pencil on a 5-space.
pub fn gen_skew_pencil(seed: u64) -> Result<SkewPencil, QuadricsError> {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..RETRY_BUDGET {
        let a = random_antisymmetric(&mut rng, 5);
        let b = random_antisymmetric(&mut rng, 5);
        if let Ok(p) = SkewPencil::new(a, b) {
            return Ok(p);
        }
    }
    Err(QuadricsError::GenerationExhausted { attempts: RETRY_BUDGET })
}

/// A skew pencil through exactly one constructed rank-2 member (the `A`
/// generator), with the other generator generic.
pub fn gen_skew_through_rank2(seed: u64) -> Result<SkewPencil, QuadricsError> {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..RETRY_BUDGET {
        let a = random_rank2_antisymmetric(&mut rng, 5);
        let b = random_antisymmetric(&mut rng, 5);
        if let Ok(p) = SkewPencil::new(a, b) {
            return Ok(p);
        }
    }
    Err(QuadricsError::GenerationExhausted { attempts: RETRY_BUDGET })
}

/// A skew pencil through two independent rank-2 members (both generators
/// rank 2, not proportional).
pub fn gen_skew_two_rank2(seed: u64) -> Result<SkewPencil, QuadricsError> {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..RETRY_BUDGET {
        let a = random_rank2_antisymmetric(&mut rng, 5);
        let b = random_rank2_antisymmetric(&mut rng, 5);
        if let Ok(p) = SkewPencil::new(a, b) {
            return Ok(p);
        }
    }
    Err(QuadricsError::GenerationExhausted { attempts: RETRY_BUDGET })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic_and_in_range() {
        let mut a = SplitMix64::new(12345);
        let mut b = SplitMix64::new(12345);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut seen_lo = false;
        let mut seen_hi = false;
        for _ in 0..2000 {
            let v = a.int_in(-9, 9);
            assert!((-9..=9).contains(&v));
            seen_lo |= v == -9;
            seen_hi |= v == 9;
        }
        assert!(seen_lo && seen_hi);
    }

    #[test]
    fn corank3_generator_hits_the_target_corank() {
        for seed in 1..=10u64 {
            let (q1, q2, _q3) = gen_corank3_net(seed).unwrap();
            assert_eq!(super::super::corank(&q1).0, 3, "seed {seed}");
            // Q₂ is generically nondegenerate.
            assert_eq!(super::super::corank(&q2).0, 0, "seed {seed}");
        }
    }

    #[test]
    fn two_corank3_generator_separates_vertices() {
        for seed in 1..=10u64 {
            let (q1, q2, _q3) = gen_two_corank3_net(seed).unwrap();
            let (c1, v1) = super::super::corank(&q1);
            let (c2, v2) = super::super::corank(&q2);
            assert_eq!((c1, c2), (3, 3), "seed {seed}");
            let mut cols = v1;
            cols.extend(v2);
            assert_eq!(QMat::from_columns(&cols).rank(), 6, "seed {seed}");
        }
    }

    #[test]
    fn antisymmetric_ranks_are_even() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..50 {
            let m = random_antisymmetric(&mut rng, 5);
            assert!(m.is_antisymmetric());
            assert!([0usize, 2, 4].contains(&m.rank()));
        }
        for seed in 1..=10u64 {
            let p = gen_skew_through_rank2(seed).unwrap();
            assert_eq!(p.a().rank(), 2, "seed {seed}");
            let p = gen_skew_two_rank2(seed).unwrap();
            assert_eq!(p.a().rank(), 2);
            assert_eq!(p.b().rank(), 2);
        }
    }

    #[test]
    fn generators_are_reproducible() {
        let (a1, b1, c1) = gen_corank3_net(7).unwrap();
        let (a2, b2, c2) = gen_corank3_net(7).unwrap();
        assert_eq!(a1, a2);
        assert_eq!(b1, b2);
        assert_eq!(c1, c2);
    }
}
