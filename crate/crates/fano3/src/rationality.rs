//! Rationality verdicts for threefolds fibered in conics or del Pezzo
//! surfaces.
//!
//! Two families of criteria are implemented:
//!
//! * **Conic bundles** over the plane or the smooth quadric surface, where
//!   the decision is driven by the discriminant curve: low degree forces
//!   rationality (Iskovskikh), a quintic discriminant is decided by the
//!   parity of its theta-characteristic (Panin), and degree at least six on
//!   a standard model forces nonrationality (Shokurov).
//! * **Del Pezzo fibrations** over a rational curve, where degree at least
//!   five forces rationality (Enriques, Manin) and degree four is decided by
//!   Alekseev's Euler-number trichotomy.
//!
//! [`classify_ci_model`] connects the second family to the [`chow`] module:
//! a rank-5 scroll cut by two relative quadrics is a quartic del Pezzo
//! fibration, and its Euler number feeds the trichotomy directly.
//!
//! Every [`Verdict`] carries the rule that fired as a human-readable string
//! with its classical source, so downstream reports stay auditable.
//! `Undetermined` is the honest answer whenever the hypotheses of a
//! criterion are not met or the deciding invariant was not supplied;
//! intermediate Jacobians and Griffiths components are never computed here.

use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chow::{self, CISpec};

/// Errors from constructing fibration data or classifying a model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalityError {
    /// The complete intersection is not a rank-5 scroll cut by two
    /// relative quadrics, so it is not a quartic del Pezzo fibration.
    #[error("not a dP4 model")]
    NotDp4Model,
    /// A discriminant curve cannot have negative degree.
    #[error("discriminant degree must be nonnegative, got {found}")]
    NegativeDiscriminantDegree {
        /// The offending degree.
        found: i64,
    },
    /// A bidegree only makes sense on the quadric surface base.
    #[error("a bidegree discriminant requires the quadric surface base")]
    BidegreeOverPlane,
    /// Over the quadric surface the discriminant class is a bidegree.
    #[error("a discriminant over the quadric surface base must be a bidegree")]
    TotalOverQuadric,
    /// Del Pezzo fibers have anticanonical degree between 1 and 9.
    #[error("del Pezzo fibration degree must lie in 1..=9, got {found}")]
    DegreeOutOfRange {
        /// The offending degree.
        found: i64,
    },
    /// The Euler number of the model does not fit in a machine integer.
    #[error("Euler number does not fit in a 64-bit integer")]
    EulerOutOfRange,
    /// An underlying Chow-ring computation failed.
    #[error(transparent)]
    Chow(#[from] chow::ChowError),
}

/// Base surface of a conic bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConicBundleBase {
    /// The projective plane.
    Plane,
    /// The smooth quadric surface, i.e. a product of two lines.
    Quadric,
}

/// Degree data of the discriminant curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiscriminantDegree {
    /// Plane curve degree.
    Total(i64),
    /// Bidegree with respect to the two rulings of the quadric surface.
    Bidegree {
        /// Intersection number with a ruling of the first family.
        n1: i64,
        /// Intersection number with a ruling of the second family.
        n2: i64,
    },
}

/// Parity of the theta-characteristic attached to a quintic discriminant.
///
/// The parity is an input here, never computed: it is the classical datum
/// (Panin) that decides rationality when the discriminant is a plane
/// quintic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaParity {
    /// Odd theta-characteristic.
    Odd,
    /// Even theta-characteristic.
    Even,
    /// Parity not supplied.
    Unknown,
}

/// A conic bundle over a minimal rational surface, described by the data
/// entering the rationality criteria.
///
/// Construct through [`ConicBundleData::plane`], [`ConicBundleData::quadric`]
/// or the validating [`ConicBundleData::new`]; the constructors keep the
/// discriminant shape consistent with the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConicBundleData {
    base: ConicBundleBase,
    disc: DiscriminantDegree,
    standard: bool,
    theta_parity: ThetaParity,
}

impl ConicBundleData {
    /// Validates and assembles conic bundle data.
    ///
    /// Degrees must be nonnegative, and the discriminant shape must match
    /// the base: a total degree over the plane, a bidegree over the quadric.
    pub fn new(
        base: ConicBundleBase,
        disc: DiscriminantDegree,
        standard: bool,
        theta_parity: ThetaParity,
    ) -> Result<Self, RationalityError> {
        match (base, disc) {
            (ConicBundleBase::Plane, DiscriminantDegree::Bidegree { .. }) => {
                return Err(RationalityError::BidegreeOverPlane);
            }
            (ConicBundleBase::Quadric, DiscriminantDegree::Total(_)) => {
                return Err(RationalityError::TotalOverQuadric);
            }
            _ => {}
        }
        let degrees: &[i64] = match disc {
            DiscriminantDegree::Total(d) => &[d],
            DiscriminantDegree::Bidegree { n1, n2 } => &[n1, n2],
        };
        if let Some(&found) = degrees.iter().find(|&&d| d < 0) {
            return Err(RationalityError::NegativeDiscriminantDegree { found });
        }
        Ok(ConicBundleData { base, disc, standard, theta_parity })
    }

    /// A conic bundle over the plane with discriminant of the given degree.
    pub fn plane(
        disc_degree: i64,
        standard: bool,
        theta_parity: ThetaParity,
    ) -> Result<Self, RationalityError> {
        Self::new(
            ConicBundleBase::Plane,
            DiscriminantDegree::Total(disc_degree),
            standard,
            theta_parity,
        )
    }

    /// A conic bundle over the quadric surface with discriminant of the
    /// given bidegree. No theta-characteristic enters the criteria used on
    /// this base, so the parity is recorded as unknown.
    pub fn quadric(n1: i64, n2: i64, standard: bool) -> Result<Self, RationalityError> {
        Self::new(
            ConicBundleBase::Quadric,
            DiscriminantDegree::Bidegree { n1, n2 },
            standard,
            ThetaParity::Unknown,
        )
    }

    /// The base surface.
    pub fn base(&self) -> ConicBundleBase {
        self.base
    }

    /// The discriminant degree data.
    pub fn disc(&self) -> DiscriminantDegree {
        self.disc
    }

    /// Whether the bundle is a standard model (smooth total space and base,
    /// relative Picard rank one).
    pub fn standard(&self) -> bool {
        self.standard
    }

    /// The supplied theta-characteristic parity.
    pub fn theta_parity(&self) -> ThetaParity {
        self.theta_parity
    }
}

/// A del Pezzo fibration over a rational curve, described by the data
/// entering the rationality criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DPFibrationData {
    degree: i64,
    euler: Option<i64>,
    smooth_standard: bool,
}

impl DPFibrationData {
    /// Validates and assembles del Pezzo fibration data.
    ///
    /// `degree` is the anticanonical degree of the generic fiber and must
    /// lie in `1..=9`; `euler` is the topological Euler number of the total
    /// space if known; `smooth_standard` records whether the total space is
    /// a smooth standard model, the hypothesis under which the Euler-number
    /// criterion applies.
    pub fn new(
        degree: i64,
        euler: Option<i64>,
        smooth_standard: bool,
    ) -> Result<Self, RationalityError> {
        if !(1..=9).contains(&degree) {
            return Err(RationalityError::DegreeOutOfRange { found: degree });
        }
        Ok(DPFibrationData { degree, euler, smooth_standard })
    }

    /// The anticanonical degree of the generic fiber.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// The Euler number of the total space, if supplied.
    pub fn euler(&self) -> Option<i64> {
        self.euler
    }

    /// Whether the total space is a smooth standard model.
    pub fn smooth_standard(&self) -> bool {
        self.smooth_standard
    }
}

/// Outcome of a rationality criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    /// The variety is rational.
    Rational,
    /// The variety is not rational.
    Nonrational,
    /// No implemented criterion decides the question on this input.
    Undetermined,
}

/// A rationality verdict together with the rule that produced it.
///
/// Serializes as `{"verdict": …, "rule": …}` for report output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    /// The decision.
    #[serde(rename = "verdict")]
    pub status: VerdictStatus,
    /// The criterion that fired, with its classical source.
    pub rule: String,
}

fn verdict(status: VerdictStatus, rule: impl Into<String>) -> Verdict {
    Verdict { status, rule: rule.into() }
}

/// Decides rationality of a conic bundle from its discriminant data.
///
/// Over the plane: degree at most 4 forces rationality; a quintic
/// discriminant on a standard model is decided by the parity of its
/// theta-characteristic; degree at least 6 on a standard model forces
/// nonrationality. A non-standard model with discriminant degree at most 5
/// is rational, because passing to a standard model strictly drops the
/// discriminant degree into the rational range; with larger discriminant
/// nothing is decided. Over the quadric surface: if some ruling meets the
/// discriminant in at most 3 points, the pencil of such rulings makes the
/// bundle rational; otherwise nothing is decided.
pub fn conic_bundle_verdict(cb: &ConicBundleData) -> Verdict {
    match cb.disc {
        DiscriminantDegree::Total(d) => {
            if d <= 4 {
                return verdict(
                    VerdictStatus::Rational,
                    format!(
                        "plane discriminant of degree {d} <= 4: \
                         rational (Iskovskikh's conic bundle criteria)"
                    ),
                );
            }
            if !cb.standard {
                if d <= 5 {
                    return verdict(
                        VerdictStatus::Rational,
                        "non-standard model: a standard model has discriminant \
                         degree < 5, hence is rational (Iskovskikh)",
                    );
                }
                return verdict(
                    VerdictStatus::Undetermined,
                    "non-standard model with discriminant degree >= 6: \
                     the nonrationality criteria need a standard model",
                );
            }
            match d {
                5 => match cb.theta_parity {
                    ThetaParity::Odd => verdict(
                        VerdictStatus::Nonrational,
                        "quintic discriminant with odd theta-characteristic: \
                         nonrational (Panin)",
                    ),
                    ThetaParity::Even => verdict(
                        VerdictStatus::Rational,
                        "quintic discriminant with even theta-characteristic: \
                         rational (Panin)",
                    ),
                    ThetaParity::Unknown => verdict(
                        VerdictStatus::Undetermined,
                        "quintic discriminant: decided by the parity of the \
                         theta-characteristic (Panin), which was not supplied",
                    ),
                },
                _ => verdict(
                    VerdictStatus::Nonrational,
                    format!(
                        "standard conic bundle over the plane with discriminant \
                         degree {d} >= 6: nonrational (Shokurov)"
                    ),
                ),
            }
        }
        DiscriminantDegree::Bidegree { n1, n2 } => {
            let lo = n1.min(n2);
            if lo <= 3 {
                verdict(
                    VerdictStatus::Rational,
                    format!(
                        "a ruling of the quadric base meets the discriminant in \
                         {lo} <= 3 points: rational by the pencil-of-lines \
                         criterion (Iskovskikh)"
                    ),
                )
            } else {
                verdict(
                    VerdictStatus::Undetermined,
                    "every ruling of the quadric base meets the discriminant \
                     in >= 4 points: no implemented criterion applies",
                )
            }
        }
    }
}

/// Decides rationality of a del Pezzo fibration over a rational curve.
///
/// Degree at least 5 is rational for every Euler number. In degree 4 on a
/// smooth standard model the Euler number decides: outside `{0, -8, -4}`
/// the variety is nonrational, at `0` or `-8` it is rational, and at `-4`
/// rationality is equivalent to the vanishing of a Griffiths component,
/// which is not computed here. Everything else is undetermined.
pub fn dp_fibration_verdict(dp: &DPFibrationData) -> Verdict {
    let d = dp.degree;
    if d >= 5 {
        return verdict(
            VerdictStatus::Rational,
            format!(
                "del Pezzo fibration of degree {d} >= 5 over a rational \
                 curve: rational (Enriques, Manin)"
            ),
        );
    }
    if d == 4 {
        if !dp.smooth_standard {
            return verdict(
                VerdictStatus::Undetermined,
                "quartic del Pezzo fibration without a smooth standard model: \
                 the Euler-number criterion (Alekseev) does not apply",
            );
        }
        let Some(eu) = dp.euler else {
            return verdict(
                VerdictStatus::Undetermined,
                "quartic del Pezzo fibration: the Euler number was not \
                 supplied, so the trichotomy (Alekseev) cannot be evaluated",
            );
        };
        return match eu {
            0 | -8 => verdict(
                VerdictStatus::Rational,
                format!(
                    "quartic del Pezzo fibration with Euler number {eu} in \
                     {{0, -8}}: rational (Alekseev)"
                ),
            ),
            -4 => verdict(
                VerdictStatus::Undetermined,
                "quartic del Pezzo fibration with Euler number -4: rational \
                 if and only if the Griffiths component of the intermediate \
                 Jacobian vanishes (Alekseev), which is not decided here",
            ),
            _ => verdict(
                VerdictStatus::Nonrational,
                format!(
                    "quartic del Pezzo fibration with Euler number {eu} \
                     outside {{0, -8, -4}}: nonrational (Alekseev)"
                ),
            ),
        };
    }
    verdict(
        VerdictStatus::Undetermined,
        format!(
            "del Pezzo fibration of degree {d} <= 3: no implemented \
             criterion decides rationality"
        ),
    )
}

/// Classifies a complete-intersection model of a quartic del Pezzo
/// fibration by its Euler number.
///
/// The model must be a rank-5 scroll over the line cut by exactly two
/// divisors of relative degree 2; anything else is rejected. The Euler
/// number is computed exactly in the Chow ring and fed to
/// [`dp_fibration_verdict`] with the smooth-standard hypothesis assumed
/// (the assumption is recorded in the returned rule).
pub fn classify_ci_model(ci: &CISpec) -> Result<Verdict, RationalityError> {
    if !chow::closed_form_applies(ci) {
        return Err(RationalityError::NotDp4Model);
    }
    let eu = chow::euler_ci(ci)?
        .to_i64()
        .ok_or(RationalityError::EulerOutOfRange)?;
    let dp = DPFibrationData::new(4, Some(eu), true)?;
    let mut v = dp_fibration_verdict(&dp);
    v.rule = format!("Eu = {eu}; {} (smooth standard model assumed)", v.rule);
    Ok(v)
}
