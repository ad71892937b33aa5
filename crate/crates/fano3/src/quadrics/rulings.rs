//! Ruling pencils of a corank-3, rank-4 quadric in P⁶.
//!
//! Such a quadric is a cone with vertex plane Π ≅ P² over a smooth
//! quadric surface S in a complementary P³. When S carries two rational
//! pencils of lines (it is then isomorphic to P¹×P¹ over ℚ), every line
//! ℓ of a pencil spans with Π a 4-space inside the quadric, giving two
//! pencils of 4-dimensional linear subspaces. This happens exactly when
//! the rank-4 part of the form is hyperbolic over ℚ: its discriminant is
//! a square *and* it represents zero. Otherwise the two rulings are
//! conjugate over a quadratic extension, and the analysis reports a
//! squarefree witness `s` such that ℚ(√s) makes them rational.
//!
//! Whether a diagonal ternary form `ax² + by² + cz²` represents zero is
//! decided exactly by Legendre/Lagrange descent: normalize to pairwise
//! coprime squarefree coefficients, reduce to `x² = Ay² + Bz²`, and
//! shrink `B` through square roots modulo its prime factors until a unit
//! coefficient appears. Every step is an equivalence, so "no solution"
//! answers are certificates, and returned solutions are verified exactly.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::arith::{crt, factor, sqrt_exact, squarefree_decompose, sqrt_mod_prime};
use super::ratmat::QMat;
use super::{corank, QuadraticForm, QuadricsError};

/// One pencil of lines, parametrized by `[a : b] ∈ P¹`: the member at
/// `[a : b]` is spanned by the columns of `a·basis_at_a + b·basis_at_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinePencil {
    basis_at_a: QMat,
    basis_at_b: QMat,
}

impl LinePencil {
    /// Generators of the member at `[1 : 0]` (one per column).
    pub fn basis_at_a(&self) -> &QMat {
        &self.basis_at_a
    }

    /// Generators of the member at `[0 : 1]`.
    pub fn basis_at_b(&self) -> &QMat {
        &self.basis_at_b
    }

    /// Spanning matrix of the member at `[a : b]`.
    pub fn line(&self, a: &BigRational, b: &BigRational) -> QMat {
        self.basis_at_a.scale(a).add(&self.basis_at_b.scale(b))
    }
}

impl Serialize for LinePencil {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LinePencil", 2)?;
        s.serialize_field("basis_at_a", &self.basis_at_a.to_string_rows())?;
        s.serialize_field("basis_at_b", &self.basis_at_b.to_string_rows())?;
        s.end()
    }
}

/// The two rational ruling pencils of a corank-3, rank-4 quadric,
/// together with its vertex plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulingPencils {
    vertex: QMat,
    first: LinePencil,
    second: LinePencil,
}

impl RulingPencils {
    /// Basis of the vertex plane (columns).
    pub fn vertex(&self) -> &QMat {
        &self.vertex
    }

    pub fn first(&self) -> &LinePencil {
        &self.first
    }

    pub fn second(&self) -> &LinePencil {
        &self.second
    }

    /// Exact check that the reported data really rules the quadric:
    /// the vertex is in the kernel, and for each pencil every member
    /// line lies on the quadric (the three coefficient identities of
    /// `q(a·u + b·w) ≡ 0` per generator pair, for all `[a : b]`).
    pub fn verify(&self, q: &QuadraticForm) -> bool {
        let qm = q.matrix();
        if !qm.mul(&self.vertex).is_zero() {
            return false;
        }
        for pencil in [&self.first, &self.second] {
            let a = pencil.basis_at_a.columns();
            let b = pencil.basis_at_b.columns();
            let pair = |u: &[BigRational], w: &[BigRational]| q.bilinear(u, w);
            for i in 0..2 {
                if !pair(&a[i], &a[i]).is_zero()
                    || !pair(&a[i], &b[i]).is_zero()
                    || !pair(&b[i], &b[i]).is_zero()
                {
                    return false;
                }
            }
            // Members are totally isotropic: the two generators stay
            // orthogonal at every [a : b].
            if !pair(&a[0], &a[1]).is_zero()
                || !(pair(&a[0], &b[1]) + pair(&b[0], &a[1])).is_zero()
                || !pair(&b[0], &b[1]).is_zero()
            {
                return false;
            }
            // And each endpoint member is a genuine line.
            if pencil.basis_at_a.rank() != 2 || pencil.basis_at_b.rank() != 2 {
                return false;
            }
        }
        true
    }
}

impl Serialize for RulingPencils {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RulingPencils", 3)?;
        s.serialize_field("vertex", &self.vertex.to_string_rows())?;
        s.serialize_field("first", &self.first)?;
        s.serialize_field("second", &self.second)?;
        s.end()
    }
}

/// Outcome of the ruling analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum RulingAnalysis {
    /// Both pencils are rational and returned as parametrized families.
    TwoPencils(Box<RulingPencils>),
    /// The rulings only become rational over ℚ(√witness).
    Irrational {
        #[serde(with = "bigint_string")]
        witness: BigInt,
    },
}

mod bigint_string {
    use num::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}

impl fmt::Display for RulingAnalysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RulingAnalysis::TwoPencils(_) => {
                write!(f, "two rational pencils of ruling 4-spaces")
            }
            RulingAnalysis::Irrational { .. } => {
                write!(f, "irrational rulings, extension degree 2")
            }
        }
    }
}

/// Computes the ruling pencils of a corank-3, rank-4 quadratic form, or
/// the quadratic extension over which they become rational.
pub fn ruling_pencils(q: &QuadraticForm) -> Result<RulingAnalysis, QuadricsError> {
    let dim = q.dim();
    let (c, _) = corank(q);
    if c != 3 {
        return Err(QuadricsError::CorankPrecondition { expected: 3, found: c });
    }
    let rank = dim - c;
    if rank != 4 {
        return Err(QuadricsError::RankNotFour { found: rank });
    }

    let (t, diag) = q.matrix().symmetric_diagonalize();
    let mut support = Vec::new();
    let mut kernel_idx = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d.is_zero() {
            kernel_idx.push(i);
        } else {
            support.push(i);
        }
    }
    let t_cols = t.columns();
    let a: Vec<BigRational> = support.iter().map(|&i| diag[i].clone()).collect();
    let w = QMat::from_columns(&support.iter().map(|&i| t_cols[i].clone()).collect::<Vec<_>>());
    let vertex =
        QMat::from_columns(&kernel_idx.iter().map(|&i| t_cols[i].clone()).collect::<Vec<_>>());

    // Square class of the discriminant a₁a₂a₃a₄, as a squarefree integer.
    let disc: BigRational = a.iter().product();
    let disc_class = disc.numer() * disc.denom();
    let (disc_sf, _) = squarefree_decompose(&disc_class)?;
    if !disc_sf.is_one() {
        return Ok(RulingAnalysis::Irrational { witness: disc_sf });
    }

    // The form is hyperbolic iff α·x² + β·y² + αβ·z² represents zero,
    // where α = a₁a₂ and β = a₁a₃ (Pfister pure part of a₁·q).
    let alpha = &a[0] * &a[1];
    let beta = &a[0] * &a[2];
    let da = alpha.denom();
    let db = beta.denom();
    let ca = alpha.numer() * da * db * db;
    let cb = beta.numer() * db * da * da;
    let cab = alpha.numer() * beta.numer() * da * db;
    let Some((x, y, z)) = solve_ternary(&ca, &cb, &cab)? else {
        let neg_alpha_class = -(alpha.numer() * alpha.denom());
        let (witness, _) = squarefree_decompose(&neg_alpha_class)?;
        return Ok(RulingAnalysis::Irrational { witness });
    };

    // Isotropic vector of ⟨a₁, a₂, a₃, a₄⟩: scale the pure-part solution
    // through a₁·q ≅ ⟨1, α, β, ρ²αβ⟩ with ρ = a₄/√disc.
    let wsqrt = BigRational::new(
        sqrt_exact(disc.numer()).expect("square discriminant"),
        sqrt_exact(disc.denom()).expect("square discriminant"),
    );
    let rho = &a[3] / &wsqrt;
    let v = vec![
        BigRational::zero(),
        BigRational::from(x),
        BigRational::from(y),
        BigRational::from(z) / rho,
    ];
    let qv: BigRational = (0..4).map(|i| &a[i] * &v[i] * &v[i]).sum();
    assert!(qv.is_zero(), "isotropic vector check failed");

    // Complete to a hyperbolic basis (e₁, f₁, e₂, f₂) of the rank-4 part.
    let bil = |u: &[BigRational], w2: &[BigRational]| -> BigRational {
        (0..4).map(|i| &a[i] * &u[i] * &w2[i]).sum()
    };
    let (e1, f1) = hyperbolic_mate(&v, &basis_vectors(), &bil);
    // Orthogonal complement of span(e₁, f₁): kernel of two bilinear rows.
    let rows: Vec<Vec<BigRational>> = [&e1, &f1]
        .iter()
        .map(|u| (0..4).map(|i| &a[i] * &u[i]).collect())
        .collect();
    let mut comp = QMat::zeros(2, 4);
    for (i, r) in rows.iter().enumerate() {
        for (j, x2) in r.iter().enumerate() {
            comp.set(i, j, x2.clone());
        }
    }
    let (_, u_basis) = comp.rank_kernel();
    assert_eq!(u_basis.len(), 2, "hyperbolic complement must be a plane");
    let (u1, u2) = (u_basis[0].clone(), u_basis[1].clone());
    let (q1v, q2v, bv) = (bil(&u1, &u1), bil(&u2, &u2), bil(&u1, &u2));
    let e2: Vec<BigRational> = if q1v.is_zero() {
        u1.clone()
    } else if q2v.is_zero() {
        u2.clone()
    } else {
        // Solve q₁s² + 2bs + q₂ = 0; hyperbolic, so b² − q₁q₂ is a
        // rational square.
        let delta = &bv * &bv - &q1v * &q2v;
        let mu = BigRational::new(
            sqrt_exact(delta.numer()).expect("hyperbolic plane discriminant"),
            sqrt_exact(delta.denom()).expect("hyperbolic plane discriminant"),
        );
        let s = (mu - &bv) / &q1v;
        (0..4).map(|i| &u1[i] * &s + &u2[i]).collect()
    };
    assert!(bil(&e2, &e2).is_zero(), "second isotropic vector check failed");
    let (e2, f2) = hyperbolic_mate(&e2, &[u1, u2], &bil);

    // Determinant coordinates: q ≅ x₀x₃ − x₁x₂ on the basis
    // (e₁, e₂, −f₂/2, f₁/2); rulings are the row and column families of
    // the rank-1 matrices [[x₀,x₁],[x₂,x₃]].
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let p0 = e1;
    let p1 = e2;
    let p2: Vec<BigRational> = f2.iter().map(|x2| -(x2 * &half)).collect();
    let p3: Vec<BigRational> = f1.iter().map(|x2| x2 * &half).collect();
    let ambient = |p: &[BigRational]| -> Vec<BigRational> { w.mul_vec(p) };
    let (g0, g1, g2, g3) = (ambient(&p0), ambient(&p1), ambient(&p2), ambient(&p3));

    let pencils = RulingPencils {
        vertex,
        first: LinePencil {
            basis_at_a: QMat::from_columns(&[g0.clone(), g1.clone()]),
            basis_at_b: QMat::from_columns(&[g2.clone(), g3.clone()]),
        },
        second: LinePencil {
            basis_at_a: QMat::from_columns(&[g0, g2]),
            basis_at_b: QMat::from_columns(&[g1, g3]),
        },
    };
    assert!(pencils.verify(q), "constructed pencils must rule the quadric");
    Ok(RulingAnalysis::TwoPencils(Box::new(pencils)))
}

fn basis_vectors() -> [Vec<BigRational>; 4] {
    let mut out: [Vec<BigRational>; 4] = Default::default();
    for (i, v) in out.iter_mut().enumerate() {
        *v = (0..4)
            .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
            .collect();
    }
    out
}

/// Given an isotropic `v` and candidate vectors `g` not all orthogonal
/// to it, returns the hyperbolic pair `(v, f)` with `q(f) = 0`,
/// `B(v, f) = 1`.
fn hyperbolic_mate<F>(
    v: &[BigRational],
    candidates: &[Vec<BigRational>],
    bil: &F,
) -> (Vec<BigRational>, Vec<BigRational>)
where
    F: Fn(&[BigRational], &[BigRational]) -> BigRational,
{
    let g = candidates
        .iter()
        .find(|g| !bil(v, g).is_zero())
        .expect("nondegenerate form pairs v with something");
    let bvg = bil(v, g);
    let qg = bil(g, g);
    let two = BigRational::from(BigInt::from(2));
    // f = g/B(v,g) − v·q(g)/(2·B(v,g)²): then q(f) = 0 and B(v,f) = 1.
    let coef = &qg / (&two * &bvg * &bvg);
    let f: Vec<BigRational> =
        (0..v.len()).map(|i| &g[i] / &bvg - &v[i] * &coef).collect();
    debug_assert!(bil(&f, &f).is_zero());
    debug_assert!(bil(v, &f).is_one());
    (v.to_vec(), f)
}

// ---------------------------------------------------------------------
// Exact rational points on conics: aX² + bY² + cZ² = 0.
// ---------------------------------------------------------------------

/// Finds a nontrivial integer solution of `aX² + bY² + cZ² = 0`, or
/// proves there is none (`Ok(None)`). Errors only if a coefficient is
/// too large to factor.
pub fn solve_ternary(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
) -> Result<Option<(BigInt, BigInt, BigInt)>, QuadricsError> {
    let sol = solve_ternary_inner(a, b, c)?;
    if let Some((x, y, z)) = &sol {
        let lhs = a * x * x + b * y * y + c * z * z;
        assert!(lhs.is_zero(), "ternary solution check failed");
        assert!(!(x.is_zero() && y.is_zero() && z.is_zero()));
        let g = x.gcd(y).gcd(z);
        return Ok(Some((x / &g, y / &g, z / &g)));
    }
    Ok(sol)
}

fn solve_ternary_inner(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
) -> Result<Option<(BigInt, BigInt, BigInt)>, QuadricsError> {
    if a.is_zero() {
        return Ok(Some((BigInt::one(), BigInt::zero(), BigInt::zero())));
    }
    if b.is_zero() {
        return Ok(Some((BigInt::zero(), BigInt::one(), BigInt::zero())));
    }
    if c.is_zero() {
        return Ok(Some((BigInt::zero(), BigInt::zero(), BigInt::one())));
    }
    if a.is_positive() == b.is_positive() && b.is_positive() == c.is_positive() {
        return Ok(None);
    }
    // Make each coefficient squarefree: a = a₁s² turns a solution of
    // (a₁, b, c) into one of (a, b, c) via (x, sy, sz).
    let (a1, s) = squarefree_decompose(a)?;
    if !s.is_one() {
        return Ok(solve_ternary_inner(&a1, b, c)?.map(|(x, y, z)| (x, &s * y, &s * z)));
    }
    let (b1, s) = squarefree_decompose(b)?;
    if !s.is_one() {
        return Ok(solve_ternary_inner(a, &b1, c)?.map(|(x, y, z)| (&s * x, y, &s * z)));
    }
    let (c1, s) = squarefree_decompose(c)?;
    if !s.is_one() {
        return Ok(solve_ternary_inner(a, b, &c1)?.map(|(x, y, z)| (&s * x, &s * y, z)));
    }
    // Cancel common prime factors pairwise: g | a, g | b sends
    // (a, b, c) to (a/g, b/g, cg) and (x, y, z) to (x, y, gz).
    let g = a.gcd(b);
    if !g.is_one() {
        return Ok(
            solve_ternary_inner(&(a / &g), &(b / &g), &(c * &g))?.map(|(x, y, z)| (x, y, &g * z))
        );
    }
    let g = a.gcd(c);
    if !g.is_one() {
        return Ok(
            solve_ternary_inner(&(a / &g), &(b * &g), &(c / &g))?.map(|(x, y, z)| (x, &g * y, z))
        );
    }
    let g = b.gcd(c);
    if !g.is_one() {
        return Ok(
            solve_ternary_inner(&(a * &g), &(b / &g), &(c / &g))?.map(|(x, y, z)| (&g * x, y, z))
        );
    }
    // Pairwise coprime, squarefree, mixed signs. Multiply by c:
    // (cZ)² = (−ac)X² + (−bc)Y².
    let big_a = -(a * c);
    let big_b = -(b * c);
    Ok(solve_two_term(&big_a, &big_b)?.map(|(x0, x1, x2)| (&x1 * c, &x2 * c, x0)))
}

/// Solves `x₀² = A·x₁² + B·x₂²` for squarefree nonzero `A`, `B` by
/// Lagrange descent, or proves unsolvability.
fn solve_two_term(
    a: &BigInt,
    b: &BigInt,
) -> Result<Option<(BigInt, BigInt, BigInt)>, QuadricsError> {
    if a.is_one() {
        return Ok(Some((BigInt::one(), BigInt::one(), BigInt::zero())));
    }
    if b.is_one() {
        return Ok(Some((BigInt::one(), BigInt::zero(), BigInt::one())));
    }
    if a.is_negative() && b.is_negative() {
        return Ok(None);
    }
    if a.magnitude() > b.magnitude() {
        return Ok(solve_two_term(b, a)?.map(|(x0, x1, x2)| (x0, x2, x1)));
    }
    // |B| ≥ 2 here (|B| = 1 cases fell through above). A solution forces
    // A to be a square modulo every odd prime of B it does not share.
    let two = num::BigUint::from(2u32);
    let mut congruences = Vec::new();
    for (p, _) in factor(b.magnitude())? {
        let pb = BigInt::from(p.clone());
        let residue = a.mod_floor(&pb);
        if residue.is_zero() {
            congruences.push((BigInt::zero(), pb));
        } else if p == two {
            congruences.push((BigInt::one(), pb));
        } else {
            match sqrt_mod_prime(residue.magnitude(), &p) {
                Some(r) => congruences.push((BigInt::from(r), pb)),
                None => return Ok(None),
            }
        }
    }
    let mut x = crt(&congruences).expect("prime moduli are coprime");
    // Center the representative: |x| ≤ |B|/2.
    let babs = BigInt::from(b.magnitude().clone());
    if &x * BigInt::from(2) > babs {
        x -= &babs;
    }
    let m = (&x * &x - a) / b;
    debug_assert!(!m.is_zero(), "A is never a square at this stage");
    let (b1, t) = squarefree_decompose(&m)?;
    Ok(solve_two_term(a, &b1)?.map(|(x0, x1, x2)| {
        // Brahmagupta composition lifts a solution for (A, B₁) to (A, B).
        let nx0 = &x * &x0 + a * &x1;
        let nx1 = &x0 + &x * &x1;
        let nx2 = &b1 * &t * &x2;
        (nx0, nx1, nx2)
    }))
}
