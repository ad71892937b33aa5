//! Counting and certifying the nodes of a quadric-net threefold along the
//! vertex plane of a corank-3 member.
//!
//! Setup: `Q₁` has corank 3, so the quadric `{Q₁ = 0}` is singular along
//! a plane `Π` (the projectivized kernel). The singular points of the
//! threefold `Q₁∩Q₂∩Q₃` on `Π` are the intersection points of the two
//! plane conics `Q₂|_Π`, `Q₃|_Π` — four points counted with multiplicity
//! (Bézout). The intersection is computed exactly: project from a point
//! of `Π` off both conics, take the `v`-resultant (a binary quartic),
//! factor it over ℚ, and read each intersection point off as an algebraic
//! point over the root field of an irreducible factor.
//!
//! Certification: a simple intersection point `P` is an ordinary double
//! point of the threefold when the complete intersection `{Q₂ = Q₃ = 0}`
//! is smooth at `P` (gradient rank 2) and the Hessian of `Q₁` restricted
//! to its tangent 5-space has rank 4 (it automatically kills `P` itself).
//! Both ranks are established exactly — by reduction to a finite field
//! where the rank is forced, falling back to exact number-field
//! elimination when the fast route is inconclusive.

use num::{BigRational, Integer, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::factor::{self, FpPoly};
use super::generate::SplitMix64;
use super::numfield::{
    k_rank_kernel, kpoly_deg, kpoly_gcd, KElem, KPoly, NumberField,
};
use super::poly::{resultant_of_quadratics, Poly};
use super::ratmat::{format_rational, primitive_integer_vector, QMat};
use super::{corank, generate, QuadraticForm, QuadricsError};

/// Projection centers tried before giving up on an instance.
const SHEAR_ATTEMPTS: usize = 8;

/// Primes tried in the fast certification route before the exact
/// number-field fallback.
const CERT_PRIME_TRIES: usize = 10;

/// One geometric intersection point, exact over the root field of its
/// minimal polynomial. Conjugate points share the same coordinate
/// expressions and are distinguished by `root_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicPoint {
    minpoly: Poly,
    root_index: usize,
    multiplicity: usize,
    certified: bool,
    coordinates: Vec<KElem>,
}

impl AlgebraicPoint {
    /// Monic minimal polynomial of the generator θ of the point's field.
    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    /// Which root of the minimal polynomial this point corresponds to
    /// (symbolic label, `0..degree`).
    pub fn root_index(&self) -> usize {
        self.root_index
    }

    /// Intersection multiplicity of the two restricted conics here.
    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Whether the point was proved to be an ordinary double point.
    pub fn certified(&self) -> bool {
        self.certified
    }

    /// Ambient coordinates, each an element of ℚ[θ]/(minpoly).
    pub fn coordinates(&self) -> &[KElem] {
        &self.coordinates
    }

    pub fn field_degree(&self) -> usize {
        self.minpoly.degree().expect("minimal polynomial is nonconstant")
    }
}

impl Serialize for AlgebraicPoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let minpoly: Vec<String> = self.minpoly.coeffs().iter().map(format_rational).collect();
        let coordinates: Vec<Vec<String>> = self
            .coordinates
            .iter()
            .map(|e| e.coeffs().iter().map(format_rational).collect())
            .collect();
        let mut s = serializer.serialize_struct("AlgebraicPoint", 5)?;
        s.serialize_field("minpoly", &minpoly)?;
        s.serialize_field("root_index", &self.root_index)?;
        s.serialize_field("multiplicity", &self.multiplicity)?;
        s.serialize_field("certified", &self.certified)?;
        s.serialize_field("coordinates", &coordinates)?;
        s.end()
    }
}

/// The intersection points on one vertex plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeReport {
    points: Vec<AlgebraicPoint>,
    all_nodes_certified: bool,
}

impl NodeReport {
    pub fn points(&self) -> &[AlgebraicPoint] {
        &self.points
    }

    /// True when every point is simple and certified as a node.
    pub fn all_nodes_certified(&self) -> bool {
        self.all_nodes_certified
    }

    /// Number of distinct geometric points.
    pub fn distinct_count(&self) -> usize {
        self.points.len()
    }

    /// Sum of multiplicities over distinct points (Bézout: always 4).
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }
}

/// Combined report for a net with two corank-3 members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoCorank3Report {
    pub count: usize,
    pub all_nodes_certified: bool,
    pub first: NodeReport,
    pub second: NodeReport,
}

// ---------------------------------------------------------------------
// The resultant-elimination pipeline.
// ---------------------------------------------------------------------

/// The three `v`-coefficients of a plane conic `xᵀCx` in chart
/// coordinates `(u, v, 1)`: returns `[γ(u), β(u), α]` with
/// `conic = α v² + β(u)v + γ(u)`.
fn conic_v_coefficients(c: &QMat) -> [Poly; 3] {
    let two = BigRational::from(num::BigInt::from(2));
    let alpha = Poly::constant(c.get(1, 1).clone());
    let beta = Poly::from_coeffs(vec![&two * c.get(1, 2), &two * c.get(0, 1)]);
    let gamma = Poly::from_coeffs(vec![
        c.get(2, 2).clone(),
        &two * c.get(0, 2),
        c.get(0, 0).clone(),
    ]);
    [gamma, beta, alpha]
}

/// Evaluates conic `v`-coefficients at `u = θ`, as a polynomial in `v`
/// over `K`.
fn conic_over_k(field: &NumberField, coeffs: &[Poly; 3], theta: &KElem) -> KPoly {
    coeffs.iter().map(|c| field.eval_poly(c, theta)).collect()
}

/// Finds the nodes of `Q₁∩Q₂∩Q₃` on the vertex plane of the corank-3
/// form `Q₁`.
pub fn nodes_on_vertex_plane(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    q3: &QuadraticForm,
) -> Result<NodeReport, QuadricsError> {
    let dim = q1.dim();
    for q in [q2, q3] {
        if q.dim() != dim {
            return Err(QuadricsError::DimensionMismatch { left: dim, right: q.dim() });
        }
    }
    let (c, vertex) = corank(q1);
    if c != 3 {
        return Err(QuadricsError::CorankPrecondition { expected: 3, found: c });
    }
    // Primitive integer basis of the vertex plane keeps later
    // coefficients small.
    let cols: Vec<Vec<BigRational>> = vertex
        .iter()
        .map(|v| {
            primitive_integer_vector(v)
                .into_iter()
                .map(BigRational::from)
                .collect()
        })
        .collect();
    let n = QMat::from_columns(&cols);

    let c2 = q2.matrix().congruence(&n);
    let c3 = q3.matrix().congruence(&n);
    if c2.is_zero() || c3.is_zero() {
        // The plane lies inside one of the quadrics: a positive-
        // dimensional singular locus.
        return Err(QuadricsError::NonIsolatedSingularities);
    }

    'shear: for attempt in 0..SHEAR_ATTEMPTS {
        let s = if attempt == 0 {
            QMat::identity(3)
        } else {
            let mut rng = SplitMix64::new(1_000 + attempt as u64);
            generate::random_invertible(&mut rng, 3)
        };
        let d2 = c2.congruence(&s);
        let d3 = c3.congruence(&s);
        // The projection center [0:1:0] must avoid both conics…
        if d2.get(1, 1).is_zero() || d3.get(1, 1).is_zero() {
            continue;
        }
        let a2 = conic_v_coefficients(&d2);
        let a3 = conic_v_coefficients(&d3);
        let r = resultant_of_quadratics(&a2, &a3);
        if r.is_zero() {
            // With a valid center, a vanishing resultant means the two
            // conics share a component.
            return Err(QuadricsError::NonIsolatedSingularities);
        }
        // …and no intersection point may escape to the line w = 0.
        if r.degree() != Some(4) {
            continue;
        }

        let factors = factor::factor_poly(&r)?;
        debug_assert_eq!(
            factors
                .iter()
                .map(|(g, m)| g.degree().unwrap_or(0) * m)
                .sum::<usize>(),
            4,
            "resultant degree must be fully accounted for"
        );

        let ns = n.mul(&s);
        let mut points = Vec::new();
        for (g, mult) in &factors {
            let field = NumberField::new(g.clone());
            let theta = field.theta();
            let k2 = conic_over_k(&field, &a2, &theta);
            let k3 = conic_over_k(&field, &a3, &theta);
            let h = kpoly_gcd(&field, &k2, &k3);
            if kpoly_deg(&h) != Some(1) {
                // Two intersection points over one projection fiber;
                // this center is not injective on the intersection.
                continue 'shear;
            }
            let v0 = field.neg(&h[0]);
            // Chart point (θ, v₀, 1) → ambient through N·S.
            let chart = [theta.clone(), v0, field.one()];
            let coords: Vec<KElem> = (0..dim)
                .map(|i| {
                    let mut acc = field.zero();
                    for (j, cj) in chart.iter().enumerate() {
                        let t = field.scale(cj, ns.get(i, j));
                        acc = field.add(&acc, &t);
                    }
                    acc
                })
                .collect();
            debug_assert!(evaluate_form(&field, q2.matrix(), &coords).is_zero());
            debug_assert!(evaluate_form(&field, q3.matrix(), &coords).is_zero());
            debug_assert!(evaluate_form(&field, q1.matrix(), &coords).is_zero());

            let certified = *mult == 1 && certify_node(q1, q2, q3, &field, &coords);
            for root_index in 0..field.degree() {
                points.push(AlgebraicPoint {
                    minpoly: g.clone(),
                    root_index,
                    multiplicity: *mult,
                    certified,
                    coordinates: coords.clone(),
                });
            }
        }
        let all_nodes_certified =
            points.iter().all(|p| p.multiplicity == 1 && p.certified);
        return Ok(NodeReport { points, all_nodes_certified });
    }
    Err(QuadricsError::ProjectionExhausted { attempts: SHEAR_ATTEMPTS })
}

/// Runs the vertex-plane analysis from both corank-3 members of a net.
/// Their vertex planes must be disjoint, so the two point sets are
/// automatically distinct and the counts add.
pub fn nodes_two_corank3(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    q3: &QuadraticForm,
) -> Result<TwoCorank3Report, QuadricsError> {
    if q1.matrix().is_proportional_to(q2.matrix()) {
        return Err(QuadricsError::ProportionalForms);
    }
    for q in [q1, q2] {
        let (c, _) = corank(q);
        if c != 3 {
            return Err(QuadricsError::CorankPrecondition { expected: 3, found: c });
        }
    }
    let (_, v1) = corank(q1);
    let (_, v2) = corank(q2);
    let mut cols = v1;
    cols.extend(v2);
    if QMat::from_columns(&cols).rank() != 6 {
        return Err(QuadricsError::OverlappingVertices);
    }
    let first = nodes_on_vertex_plane(q1, q2, q3)?;
    let second = nodes_on_vertex_plane(q2, q1, q3)?;
    Ok(TwoCorank3Report {
        count: first.distinct_count() + second.distinct_count(),
        all_nodes_certified: first.all_nodes_certified() && second.all_nodes_certified(),
        first,
        second,
    })
}

/// `xᵀQx` for a rational Gram matrix and a vector over `K`.
fn evaluate_form(field: &NumberField, q: &QMat, x: &[KElem]) -> KElem {
    let qx = mul_rational_matrix(field, q, x);
    let mut acc = field.zero();
    for (a, b) in x.iter().zip(&qx) {
        let t = field.mul(a, b);
        acc = field.add(&acc, &t);
    }
    acc
}

fn mul_rational_matrix(field: &NumberField, q: &QMat, x: &[KElem]) -> Vec<KElem> {
    (0..q.rows())
        .map(|i| {
            let mut acc = field.zero();
            for (j, xj) in x.iter().enumerate() {
                let t = field.scale(xj, q.get(i, j));
                acc = field.add(&acc, &t);
            }
            acc
        })
        .collect()
}

// ---------------------------------------------------------------------
// Node certification.
// ---------------------------------------------------------------------

/// Proves `P` is an ordinary double point, or reports failure.
///
/// The two rank conditions are one-sided: the gradient matrix has rank
/// ≤ 2 for dimension reasons, and the restricted Hessian has rank ≤ 4
/// because `P` itself lies in its kernel (`Q₁·P = 0` holds identically —
/// `P` is built from the kernel basis of `Q₁`). A finite-field image
/// therefore *proves* equality the moment it attains those ranks, and a
/// handful of primes decides almost every instance without touching
/// number-field elimination.
fn certify_node(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    q3: &QuadraticForm,
    field: &NumberField,
    p: &[KElem],
) -> bool {
    let mut inconclusive = 0usize;
    for prime in factor::primes_from_3().take(64) {
        if inconclusive >= CERT_PRIME_TRIES {
            break;
        }
        match certify_mod_p(q1, q2, q3, field, p, prime) {
            Some(true) => return true,
            Some(false) => inconclusive += 1,
            None => {} // prime unusable for this instance; try the next
        }
    }
    certify_exact(q1, q2, q3, field, p)
}

/// One finite-field attempt: `Some(true)` proves the ranks, `Some(false)`
/// is inconclusive (rank dropped mod p), `None` means the prime cannot
/// represent the instance (divides a denominator or the minimal
/// polynomial stays reducible).
fn certify_mod_p(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    q3: &QuadraticForm,
    field: &NumberField,
    point: &[KElem],
    p: u64,
) -> Option<bool> {
    // Reduce the minimal polynomial; it must stay squarefree-irreducible
    // so that the quotient is a field F_{p^d}.
    let (m_int, _) = field.minpoly().primitive_integer();
    let m_lc = m_int.last().expect("nonzero");
    if (m_lc % num::BigInt::from(p)).is_zero() {
        return None;
    }
    let mbar = {
        let raw = factor::fp_reduce_bigint(&m_int, p);
        if raw.len() != m_int.len() {
            return None;
        }
        let inv = factor::fp_inv_scalar(*raw.last().unwrap(), p);
        factor::fp_scale(&raw, inv, p)
    };
    if field.degree() >= 2 && !factor::fp_is_irreducible(&mbar, p) {
        return None;
    }

    let fq = Fq { p, modulus: mbar };
    let to_fq_scalar = |c: &BigRational| -> Option<FpPoly> {
        let num = c.numer().mod_floor(&num::BigInt::from(p)).to_u64()?;
        let den = c.denom().mod_floor(&num::BigInt::from(p)).to_u64()?;
        if den == 0 {
            return None;
        }
        let v = num * factor::fp_inv_scalar(den, p) % p;
        Some(if v == 0 { Vec::new() } else { vec![v] })
    };
    let to_fq_elem = |e: &KElem| -> Option<FpPoly> {
        let mut acc: FpPoly = Vec::new();
        for (i, c) in e.coeffs().iter().enumerate() {
            let s = to_fq_scalar(c)?;
            if let Some(&v) = s.first() {
                while acc.len() <= i {
                    acc.push(0);
                }
                acc[i] = v;
            }
        }
        Some(fq.reduce(acc))
    };

    let pt: Vec<FpPoly> = point.iter().map(&to_fq_elem).collect::<Option<_>>()?;
    let reduce_mat = |q: &QMat| -> Option<Vec<Vec<FpPoly>>> {
        (0..q.rows())
            .map(|i| (0..q.cols()).map(|j| to_fq_scalar(q.get(i, j))).collect())
            .collect()
    };
    let q1m = reduce_mat(q1.matrix())?;
    let q2m = reduce_mat(q2.matrix())?;
    let q3m = reduce_mat(q3.matrix())?;

    let grad = |qm: &Vec<Vec<FpPoly>>| -> Vec<FpPoly> {
        (0..qm.len())
            .map(|i| {
                let mut acc: FpPoly = Vec::new();
                for (j, x) in pt.iter().enumerate() {
                    acc = fq.add(&acc, &fq.mul(&qm[i][j], x));
                }
                acc
            })
            .collect()
    };
    let jac = vec![grad(&q2m), grad(&q3m)];
    let (rank, kernel) = fq.rank_kernel(&jac);
    if rank != 2 {
        return Some(false);
    }
    // Restricted Hessian on the tangent space basis.
    let g: Vec<Vec<FpPoly>> = kernel
        .iter()
        .map(|a| {
            let qa: Vec<FpPoly> = (0..q1m.len())
                .map(|i| {
                    let mut acc: FpPoly = Vec::new();
                    for (j, x) in a.iter().enumerate() {
                        acc = fq.add(&acc, &fq.mul(&q1m[i][j], x));
                    }
                    acc
                })
                .collect();
            kernel
                .iter()
                .map(|b| {
                    let mut acc: FpPoly = Vec::new();
                    for (x, y) in b.iter().zip(&qa) {
                        acc = fq.add(&acc, &fq.mul(x, y));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let (grank, _) = fq.rank_kernel(&g);
    Some(grank == 4)
}

/// Exact certification by number-field elimination.
fn certify_exact(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    q3: &QuadraticForm,
    field: &NumberField,
    p: &[KElem],
) -> bool {
    let jac = vec![
        mul_rational_matrix(field, q2.matrix(), p),
        mul_rational_matrix(field, q3.matrix(), p),
    ];
    let (rank, kernel) = k_rank_kernel(field, &jac);
    if rank != 2 {
        return false;
    }
    let g: Vec<Vec<KElem>> = kernel
        .iter()
        .map(|a| {
            let qa = mul_rational_matrix(field, q1.matrix(), a);
            kernel
                .iter()
                .map(|b| {
                    let mut acc = field.zero();
                    for (x, y) in b.iter().zip(&qa) {
                        let t = field.mul(x, y);
                        acc = field.add(&acc, &t);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let (grank, _) = k_rank_kernel(field, &g);
    grank == 4
}

// ---------------------------------------------------------------------
// Minimal F_{p^d} arithmetic (elements are Fp polynomials reduced mod an
// irreducible modulus).
// ---------------------------------------------------------------------

struct Fq {
    p: u64,
    modulus: FpPoly,
}

impl Fq {
    fn reduce(&self, e: FpPoly) -> FpPoly {
        if e.len() >= self.modulus.len() {
            factor::fp_divmod(&e, &self.modulus, self.p).1
        } else {
            let mut e = e;
            while e.last() == Some(&0) {
                e.pop();
            }
            e
        }
    }

    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            out[i] = (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p;
        }
        self.reduce(out)
    }

    fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            out[i] = (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0))
                % self.p;
        }
        self.reduce(out)
    }

    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        self.reduce(factor::fp_mul(a, b, self.p))
    }

    fn inv(&self, a: &FpPoly) -> FpPoly {
        assert!(!a.is_empty(), "inverse of zero");
        let (s, _) = factor::fp_bezout(a, &self.modulus, self.p);
        self.reduce(s)
    }

    /// Gaussian elimination: rank and right-kernel basis.
    fn rank_kernel(&self, rows: &[Vec<FpPoly>]) -> (usize, Vec<Vec<FpPoly>>) {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        let mut m = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..ncols {
            let Some(pr) = (r..nrows).find(|&i| !m[i][c].is_empty()) else {
                continue;
            };
            m.swap(r, pr);
            let inv = self.inv(&m[r][c]);
            for j in 0..ncols {
                m[r][j] = self.mul(&m[r][j], &inv);
            }
            for i in 0..nrows {
                if i != r && !m[i][c].is_empty() {
                    let f = m[i][c].clone();
                    for j in 0..ncols {
                        let t = self.mul(&f, &m[r][j]);
                        m[i][j] = self.sub(&m[i][j], &t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == nrows {
                break;
            }
        }
        let mut kernel = Vec::new();
        for c in 0..ncols {
            if pivots.contains(&c) {
                continue;
            }
            let mut v = vec![Vec::new(); ncols];
            v[c] = vec![1u64];
            for (pi, &pc) in pivots.iter().enumerate() {
                if !m[pi][c].is_empty() {
                    v[pc] = self.sub(&Vec::new(), &m[pi][c]);
                }
            }
            kernel.push(v);
        }
        (r, kernel)
    }
}
