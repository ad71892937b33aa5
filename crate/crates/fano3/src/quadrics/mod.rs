//! Exact analysis of quadric nets in seven variables and pencils of
//! antisymmetric forms in five variables.
//!
//! Everything here happens over the rationals with exact arithmetic — no
//! floating point anywhere. The centerpiece ops:
//!
//! * [`corank`] — rank/kernel of a symmetric form by Gaussian elimination;
//! * [`nodes_on_vertex_plane`] — given a net `Q₁∩Q₂∩Q₃` where `Q₁` is
//!   singular along a plane, intersect the restrictions of `Q₂`, `Q₃` to
//!   that plane by resultant elimination and certify each intersection
//!   point as an ordinary double point of the threefold;
//! * [`nodes_two_corank3`] — the same count run from two corank-3 members
//!   of the net;
//! * [`ruling_pencils`] — decide exactly whether the two families of
//!   4-spaces inside a corank-3/rank-4 quadric are rational, and construct
//!   them when they are;
//! * [`skew_pencil_classify`] — the trichotomy for a pencil of
//!   antisymmetric forms on a 5-space by the number of rank-2 members,
//!   located through the five 4×4 principal Pfaffians.
//!
//! Algebraic intersection points are reported as exact data: a minimal
//! polynomial over the rationals plus coordinates in the corresponding root
//! field. Instance generators are deterministic from an explicit seed.

use num::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod arith;
pub mod factor;
pub mod generate;
pub mod nodes;
pub mod numfield;
pub mod poly;
pub mod ratmat;
pub mod rulings;
pub mod skew;

pub use generate::{
    gen_corank3_net, gen_skew_pencil, gen_skew_through_rank2, gen_skew_two_rank2,
    gen_two_corank3_net, SplitMix64,
};
pub use nodes::{
    nodes_on_vertex_plane, nodes_two_corank3, AlgebraicPoint, NodeReport, TwoCorank3Report,
};
pub use ratmat::QMat;
pub use rulings::{ruling_pencils, solve_ternary, LinePencil, RulingAnalysis, RulingPencils};
pub use skew::{skew_pencil_classify, PencilMember, RankTwoLocus, SkewClassification};

/// Errors from quadric-net and skew-pencil analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadricsError {
    /// Matrix input with unequal row lengths (or no entries).
    #[error("matrix rows are missing or have unequal lengths")]
    RaggedMatrix,
    /// A square matrix was required.
    #[error("square matrix required, got {rows}x{cols}")]
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// A matrix entry failed to parse as an exact rational.
    #[error("cannot parse {text:?} as an exact rational")]
    BadRational {
        text: String,
    },
    /// A quadratic form needs an exactly symmetric matrix.
    #[error("quadratic form matrix is not symmetric")]
    NotSymmetric,
    /// A pencil member needs an exactly antisymmetric matrix.
    #[error("pencil matrix is not antisymmetric")]
    NotAntisymmetric,
    /// Two matrices that must share a dimension do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch {
        left: usize,
        right: usize,
    },
    /// The two given forms span a point, not a pencil.
    #[error("the two forms are proportional")]
    ProportionalForms,
    /// An operation needed a specific corank.
    #[error("corank {expected} required, found corank {found}")]
    CorankPrecondition {
        expected: usize,
        found: usize,
    },
    /// The two restricted conics share a component, so the singular locus
    /// is not a finite set of points.
    #[error("non-isolated singularities")]
    NonIsolatedSingularities,
    /// The two vertex planes intersect, so the two node families are not
    /// independent.
    #[error("vertex planes overlap")]
    OverlappingVertices,
    /// The ruling analysis needs the rank-4 part of a corank-3 form.
    #[error("rank-4 quadratic form required, found rank {found}")]
    RankNotFour {
        found: usize,
    },
    /// No projection center in general position was found within the
    /// attempt budget.
    #[error("no suitable projection center after {attempts} attempts")]
    ProjectionExhausted {
        attempts: usize,
    },
    /// Seeded instance generation kept hitting degenerate draws.
    #[error("random instance generation failed after {attempts} attempts")]
    GenerationExhausted {
        attempts: usize,
    },
    /// An integer exceeded the supported factorization range.
    #[error("integer factorization out of supported range")]
    TooLargeToFactor,
}

/// A quadratic form on a finite-dimensional rational vector space, stored
/// as its exactly symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: QMat,
}

impl QuadraticForm {
    /// Validates symmetry and wraps the matrix.
    pub fn new(matrix: QMat) -> Result<Self, QuadricsError> {
        if !matrix.is_square() {
            return Err(QuadricsError::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if !matrix.is_symmetric() {
            return Err(QuadricsError::NotSymmetric);
        }
        Ok(QuadraticForm { matrix })
    }

    /// Builds a form from integer rows (test and generator convenience).
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, QuadricsError> {
        Self::new(QMat::from_i64_rows(rows))
    }

    /// The dimension of the underlying vector space.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The Gram matrix.
    pub fn matrix(&self) -> &QMat {
        &self.matrix
    }

    /// The value `vᵀ Q v`.
    pub fn evaluate(&self, v: &[BigRational]) -> BigRational {
        let qv = self.matrix.mul_vec(v);
        v.iter().zip(&qv).map(|(a, b)| a * b).sum()
    }

    /// The symmetric bilinear value `uᵀ Q v`.
    pub fn bilinear(&self, u: &[BigRational], v: &[BigRational]) -> BigRational {
        let qv = self.matrix.mul_vec(v);
        u.iter().zip(&qv).map(|(a, b)| a * b).sum()
    }

    /// Restricts the form to the span of the columns of `basis`
    /// (`basisᵀ Q basis`).
    pub fn restrict(&self, basis: &QMat) -> QuadraticForm {
        QuadraticForm { matrix: self.matrix.congruence(basis) }
    }
}

/// The corank of a quadratic form together with a basis of its kernel
/// (the linear span of the vertex of the quadric).
pub fn corank(q: &QuadraticForm) -> (usize, Vec<Vec<BigRational>>) {
    let (rank, kernel) = q.matrix.rank_kernel();
    (q.dim() - rank, kernel)
}

/// A pencil of antisymmetric bilinear forms `s·A + t·B` on a rational
/// vector space, with `A`, `B` exactly antisymmetric and not proportional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewPencil {
    a: QMat,
    b: QMat,
}

impl SkewPencil {
    /// Validates both generators and the nontriviality of the pencil.
    pub fn new(a: QMat, b: QMat) -> Result<Self, QuadricsError> {
        for m in [&a, &b] {
            if !m.is_square() {
                return Err(QuadricsError::NotSquare { rows: m.rows(), cols: m.cols() });
            }
            if !m.is_antisymmetric() {
                return Err(QuadricsError::NotAntisymmetric);
            }
        }
        if a.rows() != b.rows() {
            return Err(QuadricsError::DimensionMismatch { left: a.rows(), right: b.rows() });
        }
        if a.is_proportional_to(&b) {
            return Err(QuadricsError::ProportionalForms);
        }
        Ok(SkewPencil { a, b })
    }

    /// The first generator.
    pub fn a(&self) -> &QMat {
        &self.a
    }

    /// The second generator.
    pub fn b(&self) -> &QMat {
        &self.b
    }

    /// The dimension of the underlying space.
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// The member `s·A + t·B`.
    pub fn member(&self, s: &BigRational, t: &BigRational) -> QMat {
        self.a.scale(s).add(&self.b.scale(t))
    }
}

#[derive(Serialize, Deserialize)]
struct FormWire {
    matrix: Vec<Vec<String>>,
}

impl Serialize for QuadraticForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FormWire { matrix: self.matrix.to_string_rows() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadraticForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = FormWire::deserialize(deserializer)?;
        let matrix = QMat::from_string_rows(&wire.matrix).map_err(serde::de::Error::custom)?;
        QuadraticForm::new(matrix).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct PencilWire {
    a: Vec<Vec<String>>,
    b: Vec<Vec<String>>,
}

impl Serialize for SkewPencil {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PencilWire { a: self.a.to_string_rows(), b: self.b.to_string_rows() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SkewPencil {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = PencilWire::deserialize(deserializer)?;
        let a = QMat::from_string_rows(&wire.a).map_err(serde::de::Error::custom)?;
        let b = QMat::from_string_rows(&wire.b).map_err(serde::de::Error::custom)?;
        SkewPencil::new(a, b).map_err(serde::de::Error::custom)
    }
}
