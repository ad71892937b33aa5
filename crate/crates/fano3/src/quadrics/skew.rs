//! Classification of pencils of antisymmetric 5×5 forms by their
//! singular (rank-2) members.
//!
//! A 5×5 antisymmetric matrix has even rank, at most 4. The rank of the
//! pencil member `A + xB` drops to 2 exactly where all five principal
//! 4×4 Pfaffians vanish, so the rank-2 locus on the parameter line is the
//! common zero set of five quadratics in `x` (with the member `B` at
//! infinity handled separately through its own rank). Because the rank-2
//! locus in the space of antisymmetric forms is cut out by those quadrics,
//! a line meeting it in three or more points lies inside it entirely —
//! hence the trichotomy: no singular member, exactly one, or exactly two,
//! with everything else collapsing to "contained in the dual variety".
//!
//! For two singular members the parameters are either both rational or a
//! conjugate pair over a quadratic field; in both cases the 3-dimensional
//! kernels are computed exactly and the pair of singular lines they induce
//! is checked to be skew (the kernels meet in a single line of the
//! underlying 5-space).

use num::{BigRational, One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::factor::factor_poly;
use super::numfield::{k_mat_rank, k_rank_kernel, KElem, NumberField};
use super::poly::Poly;
use super::ratmat::{format_rational, primitive_integer_vector, QMat};
use super::{QuadricsError, SkewPencil};

/// A point `[s : t]` on the pencil's parameter line: the member is
/// `s·A + t·B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilMember {
    pub s: BigRational,
    pub t: BigRational,
}

impl PencilMember {
    fn finite(x: BigRational) -> Self {
        PencilMember { s: BigRational::one(), t: x }
    }

    fn infinity() -> Self {
        PencilMember { s: BigRational::zero(), t: BigRational::one() }
    }
}

impl Serialize for PencilMember {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PencilMember", 2)?;
        st.serialize_field("s", &format_rational(&self.s))?;
        st.serialize_field("t", &format_rational(&self.t))?;
        st.end()
    }
}

/// Where the two rank-2 members live.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankTwoLocus {
    /// Both parameters rational; kernels given as column bases.
    SplitPair { members: [PencilMember; 2], kernels: [QMat; 2] },
    /// Conjugate parameters over the root field of this minimal
    /// polynomial.
    ConjugatePair { minpoly: Poly },
}

/// Outcome of [`skew_pencil_classify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SkewClassification {
    /// Every member has rank 4.
    AllSmooth,
    /// Exactly one rank-2 member; its kernel is a 3-space.
    OneSingularMember { member: PencilMember, kernel: QMat },
    /// Exactly two rank-2 members; `skew_lines` records that their
    /// kernel 3-spaces meet in a single line, so the two induced
    /// singular lines are skew.
    TwoSingularMembers { locus: RankTwoLocus, skew_lines: bool },
    /// Rank ≤ 2 along the whole pencil, or a rank-2 locus too large for
    /// the trichotomy.
    ContainedInDual,
}

/// Classifies a 5×5 antisymmetric pencil by its rank-2 members.
pub fn skew_pencil_classify(p: &SkewPencil) -> Result<SkewClassification, QuadricsError> {
    if p.dim() != 5 {
        return Err(QuadricsError::DimensionMismatch { left: p.dim(), right: 5 });
    }
    let a = p.a();
    let b = p.b();
    let lin = |r: usize, c: usize| Poly::from_coeffs(vec![a.get(r, c).clone(), b.get(r, c).clone()]);

    // Principal 4×4 Pfaffians of A + xB, one per deleted index.
    let mut pfaffians = Vec::with_capacity(5);
    for i in 0..5 {
        let kept: Vec<usize> = (0..5).filter(|&j| j != i).collect();
        let (j, k, l, m) = (kept[0], kept[1], kept[2], kept[3]);
        let pf = lin(j, k)
            .mul(&lin(l, m))
            .sub(&lin(j, l).mul(&lin(k, m)))
            .add(&lin(j, m).mul(&lin(k, l)));
        pfaffians.push(pf);
    }
    if pfaffians.iter().all(Poly::is_zero) {
        return Ok(SkewClassification::ContainedInDual);
    }
    let gcd = pfaffians
        .iter()
        .filter(|pf| !pf.is_zero())
        .fold(Poly::zero(), |acc, pf| if acc.is_zero() { pf.make_monic() } else { acc.gcd(pf) });
    let radical = gcd.radical();
    let finite_roots = radical.degree().unwrap_or(0);
    // The member at infinity is B itself.
    let infinity_singular = b.rank() == 2;
    let total = finite_roots + usize::from(infinity_singular);

    match total {
        0 => Ok(SkewClassification::AllSmooth),
        1 => {
            let (member, matrix) = if infinity_singular {
                (PencilMember::infinity(), b.clone())
            } else {
                let x = -radical.coeff(0);
                let m = p.member(&BigRational::one(), &x);
                (PencilMember::finite(x), m)
            };
            Ok(SkewClassification::OneSingularMember {
                kernel: rank2_kernel(&matrix),
                member,
            })
        }
        2 => {
            if finite_roots == 2 {
                let factors = factor_poly(&radical)?;
                if factors.len() == 1 {
                    // Irreducible quadratic: conjugate parameters.
                    let minpoly = factors[0].0.clone();
                    let skew_lines = conjugate_kernels_are_skew(p, &minpoly);
                    return Ok(SkewClassification::TwoSingularMembers {
                        locus: RankTwoLocus::ConjugatePair { minpoly },
                        skew_lines,
                    });
                }
                let roots: Vec<BigRational> =
                    factors.iter().map(|(g, _)| -g.coeff(0)).collect();
                let members = [
                    PencilMember::finite(roots[0].clone()),
                    PencilMember::finite(roots[1].clone()),
                ];
                let k0 = rank2_kernel(&p.member(&BigRational::one(), &roots[0]));
                let k1 = rank2_kernel(&p.member(&BigRational::one(), &roots[1]));
                let skew_lines = k0.hstack(&k1).rank() == 5;
                Ok(SkewClassification::TwoSingularMembers {
                    locus: RankTwoLocus::SplitPair { members, kernels: [k0, k1] },
                    skew_lines,
                })
            } else {
                let x = -radical.coeff(0);
                let members =
                    [PencilMember::finite(x.clone()), PencilMember::infinity()];
                let k0 = rank2_kernel(&p.member(&BigRational::one(), &x));
                let k1 = rank2_kernel(b);
                let skew_lines = k0.hstack(&k1).rank() == 5;
                Ok(SkewClassification::TwoSingularMembers {
                    locus: RankTwoLocus::SplitPair { members, kernels: [k0, k1] },
                    skew_lines,
                })
            }
        }
        _ => Ok(SkewClassification::ContainedInDual),
    }
}

/// Kernel of a rank-2 antisymmetric matrix as a primitive-integer
/// column basis (5×3).
fn rank2_kernel(m: &QMat) -> QMat {
    let (rank, kernel) = m.rank_kernel();
    assert_eq!(rank, 2, "a singular pencil member must have rank exactly 2");
    let cols: Vec<Vec<BigRational>> = kernel
        .iter()
        .map(|v| {
            primitive_integer_vector(v).into_iter().map(BigRational::from).collect()
        })
        .collect();
    QMat::from_columns(&cols)
}

/// For conjugate rank-2 parameters θ, θ̄: the kernels of `A + θB` and
/// its conjugate meet in one line exactly when the stacked 5×6 matrix
/// over ℚ(θ) has rank 5.
fn conjugate_kernels_are_skew(p: &SkewPencil, minpoly: &Poly) -> bool {
    let field = NumberField::new(minpoly.clone());
    let theta = field.theta();
    let rows: Vec<Vec<KElem>> = (0..5)
        .map(|i| {
            (0..5)
                .map(|j| {
                    let aij = field.from_rational(p.a().get(i, j).clone());
                    let bij = field.scale(&theta, p.b().get(i, j));
                    field.add(&aij, &bij)
                })
                .collect()
        })
        .collect();
    let (rank, kernel) = k_rank_kernel(&field, &rows);
    assert_eq!(rank, 2, "a singular pencil member must have rank exactly 2");
    let stacked: Vec<Vec<KElem>> = (0..5)
        .map(|i| {
            let mut row: Vec<KElem> = kernel.iter().map(|v| v[i].clone()).collect();
            row.extend(kernel.iter().map(|v| field.conjugate(&v[i])));
            row
        })
        .collect();
    k_mat_rank(&field, &stacked) == 5
}
