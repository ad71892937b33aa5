//! Divisor-class lattices of small rank with the anticanonical pairing.
//!
//! On a threefold `V` with Gorenstein canonical class the bilinear form
//! `<D1, D2> = (-K_V) . D1 . D2` on the divisor class group is preserved by
//! flops, so numerical computations can be carried across every small
//! modification of `V` in a single fixed lattice. (That invariance is a
//! geometric theorem; this module treats it as an axiom justifying the reuse
//! of one Gram matrix across models — it has no internal way to test it.)
//!
//! The module fixes the two lattice shapes that the link analysis needs —
//! rank 2 with basis `(H, M)` or `(H, D)`, and rank 3 for the effective-cone
//! arguments — together with the standard pairing signatures of the extremal
//! contractions that can appear on either end of a link, and the blowup
//! bookkeeping for contractions to a curve.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from lattice construction and pairing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    /// Pairing of classes written in different bases.
    #[error("basis mismatch: classes and form must share a basis")]
    BasisMismatch,
    /// Gram matrix is not symmetric or not square of the basis rank.
    #[error("gram matrix must be symmetric of the basis rank")]
    MalformedGram,
    /// Basis names must be unique.
    #[error("basis names must be unique")]
    DuplicateBasisName,
    /// The form must contain the anticanonical generator `H`.
    #[error("basis has no generator named H")]
    MissingH,
    /// `<H,H>` must equal `2g - 2`.
    #[error("<H,H> = {found}, expected 2g-2 = {expected}")]
    WrongAnticanonicalSquare { found: i64, expected: i64 },
    /// Coordinate vector of the wrong length.
    #[error("coordinate vector has length {found}, basis has rank {rank}")]
    WrongRank { found: usize, rank: usize },
    /// Only fiber-type and B5 contractions have a fixed pairing signature.
    #[error("contraction kind {kind} has no fixed pairing signature")]
    NoSignature { kind: &'static str },
    /// A curve blowup with nonpositive `n` cannot be contracted back.
    #[error("contraction impossible: n = {n} must be positive")]
    ContractionImpossible { n: i64 },
    /// Change of basis by a non-square or non-unimodular matrix.
    #[error("change of basis must be a square integer matrix of the lattice rank")]
    BadBasisChange,
}

/// Minimal Fano threefold of Picard rank 1 on the target end of a birational
/// contraction: index `iota` 2 with its degree, or index 1 with its genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Rho1Target {
    /// Fano index, 1 or 2.
    pub iota: u8,
    /// Degree when `iota = 2`, genus when `iota = 1`.
    pub degree_or_genus: i64,
}

impl Rho1Target {
    pub fn new(iota: u8, degree_or_genus: i64) -> Self {
        Rho1Target {
            iota,
            degree_or_genus,
        }
    }
}

/// Numerical fingerprint of an extremal contraction on one end of a link.
///
/// Divisorial kinds: `B1` (blowup of a curve of anticanonical degree `deg`
/// and arithmetic genus `pa` on the target), `B2` (blowup of a smooth
/// point), `B3B4` (blowup of a `cA1` point), `B5` (blowup of a half-point,
/// exceptional divisor a plane with normal degree -2). Fiber kinds: `C1`/`C2`
/// conic bundles (`C1` carries the discriminant degree over the plane base),
/// `D1`-`D3` del Pezzo fibrations over the line (`D1` carries the fiber
/// degree).
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(tag = "kind")]
pub enum ContractionSignature {
    B1 {
        target: Rho1Target,
        /// Anticanonical degree `-K_Y . Gamma` of the blown-up curve.
        deg: i64,
        /// Arithmetic genus of the blown-up curve.
        pa: i64,
    },
    B2 {
        target: Rho1Target,
    },
    B3B4 {
        target: Rho1Target,
    },
    B5,
    C1 {
        /// Degree of the discriminant curve in the plane base.
        d: i64,
    },
    C2,
    D1 {
        /// Anticanonical degree of the del Pezzo fiber.
        d: i64,
    },
    D2,
    D3,
}

impl ContractionSignature {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ContractionSignature::B1 { .. } => "B1",
            ContractionSignature::B2 { .. } => "B2",
            ContractionSignature::B3B4 { .. } => "B3B4",
            ContractionSignature::B5 => "B5",
            ContractionSignature::C1 { .. } => "C1",
            ContractionSignature::C2 => "C2",
            ContractionSignature::D1 { .. } => "D1",
            ContractionSignature::D2 => "D2",
            ContractionSignature::D3 => "D3",
        }
    }

    /// Whether the contraction is birational (divisorial) rather than a
    /// fibration.
    pub fn is_birational(&self) -> bool {
        matches!(
            self,
            ContractionSignature::B1 { .. }
                | ContractionSignature::B2 { .. }
                | ContractionSignature::B3B4 { .. }
                | ContractionSignature::B5
        )
    }
}

/// Pairing signature of a contraction against the anticanonical class:
/// `(<D,D>, <D,H>)` for the class `D` the contraction distinguishes (the
/// pushed-forward fiber class for fibrations, the exceptional plane for B5).
///
/// Only `B5`, `C1`, `D1` have a fixed table: `B5 -> (-2, 1)`,
/// `D1(d) -> (0, d)`, `C1(d') -> (2, 12 - d')`. The genus is accepted for
/// uniformity with call sites and sanity-checked only.
pub fn signature_pairing(
    kind: &ContractionSignature,
    g: i64,
) -> Result<(i64, i64), LatticeError> {
    debug_assert!(g >= 2, "Fano genus is at least 2");
    match kind {
        ContractionSignature::B5 => Ok((-2, 1)),
        ContractionSignature::D1 { d } => Ok((0, *d)),
        ContractionSignature::C1 { d } => Ok((2, 12 - d)),
        other => Err(LatticeError::NoSignature {
            kind: other.kind_name(),
        }),
    }
}

/// An integral divisor class written in a named basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub coords: Vec<i64>,
    pub basis: Vec<String>,
}

/// The anticanonical pairing on a divisor-class lattice, as a Gram matrix in
/// a named basis containing the anticanonical generator `H`.
///
/// Wire form: `{"genus":5,"basis":["H","M"],"gram":[[8,4],[4,0]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FormWire", into = "FormWire")]
pub struct IntersectionForm {
    genus: i64,
    basis: Vec<String>,
    gram: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize, Clone)]
struct FormWire {
    genus: i64,
    basis: Vec<String>,
    gram: Vec<Vec<i64>>,
}

impl TryFrom<FormWire> for IntersectionForm {
    type Error = LatticeError;
    fn try_from(w: FormWire) -> Result<Self, LatticeError> {
        IntersectionForm::new(w.genus, w.basis, w.gram)
    }
}

impl From<IntersectionForm> for FormWire {
    fn from(f: IntersectionForm) -> FormWire {
        FormWire {
            genus: f.genus,
            basis: f.basis,
            gram: f.gram,
        }
    }
}

impl IntersectionForm {
    /// Validates symmetry, uniqueness of basis names, and `<H,H> = 2g - 2`.
    pub fn new(
        genus: i64,
        basis: Vec<String>,
        gram: Vec<Vec<i64>>,
    ) -> Result<Self, LatticeError> {
        let rank = basis.len();
        for (i, name) in basis.iter().enumerate() {
            if basis[..i].contains(name) {
                return Err(LatticeError::DuplicateBasisName);
            }
        }
        if gram.len() != rank || gram.iter().any(|row| row.len() != rank) {
            return Err(LatticeError::MalformedGram);
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::MalformedGram);
                }
            }
        }
        let h = basis
            .iter()
            .position(|n| n == "H")
            .ok_or(LatticeError::MissingH)?;
        let expected = 2 * genus - 2;
        if gram[h][h] != expected {
            return Err(LatticeError::WrongAnticanonicalSquare {
                found: gram[h][h],
                expected,
            });
        }
        Ok(IntersectionForm { genus, basis, gram })
    }

    /// The rank-2 form of a link whose distinguished class pairs as `sig`:
    /// basis `(H, M)` with `<H,H> = 2g-2`, `<H,M>` and `<M,M>` from the
    /// signature table.
    pub fn for_signature(
        genus: i64,
        sig: &ContractionSignature,
    ) -> Result<Self, LatticeError> {
        let (selfpair, hpair) = signature_pairing(sig, genus)?;
        let second = if matches!(sig, ContractionSignature::B5) {
            "D"
        } else {
            "M"
        };
        IntersectionForm::new(
            genus,
            vec!["H".to_string(), second.to_string()],
            vec![vec![2 * genus - 2, hpair], vec![hpair, selfpair]],
        )
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// A class in this form's basis.
    pub fn class(&self, coords: &[i64]) -> Result<DivisorClass, LatticeError> {
        if coords.len() != self.rank() {
            return Err(LatticeError::WrongRank {
                found: coords.len(),
                rank: self.rank(),
            });
        }
        Ok(DivisorClass {
            coords: coords.to_vec(),
            basis: self.basis.clone(),
        })
    }

    /// Rewrites the form in a new basis whose columns are the new
    /// generators' coordinates in the old basis: `G' = P^T G P`. The new
    /// basis keeps the old names (callers renaming generators can do so on
    /// the returned value); `H` must stay the first... the name mapping is
    /// positional, so the caller is responsible for passing a matrix whose
    /// first column is still the anticanonical class when the result is to
    /// satisfy the `<H,H>` invariant.
    pub fn change_basis(&self, columns: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let rank = self.rank();
        if columns.len() != rank || columns.iter().any(|c| c.len() != rank) {
            return Err(LatticeError::BadBasisChange);
        }
        let mut new_gram = vec![vec![0i64; rank]; rank];
        for (i, ci) in columns.iter().enumerate() {
            for (j, cj) in columns.iter().enumerate() {
                let mut acc = 0i64;
                for (a, cia) in ci.iter().enumerate() {
                    for (b, cjb) in cj.iter().enumerate() {
                        acc += cia * self.gram[a][b] * cjb;
                    }
                }
                new_gram[i][j] = acc;
            }
        }
        IntersectionForm::new(self.genus, self.basis.clone(), new_gram)
    }
}

/// The anticanonical pairing `x^T . gram . y` of two classes in the form's
/// basis.
pub fn pair(
    x: &DivisorClass,
    y: &DivisorClass,
    form: &IntersectionForm,
) -> Result<i64, LatticeError> {
    if x.basis != form.basis || y.basis != form.basis {
        return Err(LatticeError::BasisMismatch);
    }
    let mut acc = 0i64;
    for (i, xi) in x.coords.iter().enumerate() {
        for (j, yj) in y.coords.iter().enumerate() {
            acc += xi * form.gram[i][j] * yj;
        }
    }
    Ok(acc)
}

/// Numerical bookkeeping of blowing up a curve `Gamma` on a Fano threefold
/// `Y`: anticanonical cube upstairs and the degree `n` of the exceptional
/// divisor against the anticanonical square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupInvariants {
    /// `(-K_Y)^3` downstairs.
    pub ky3: i64,
    /// `-K_Y . Gamma`.
    pub mk_gamma: i64,
    /// Arithmetic genus of the curve.
    pub pa: i64,
    /// `(-K)^3` on the blowup.
    pub kx3: i64,
    /// `(-K)^2 . E` on the blowup.
    pub n: i64,
}

/// Invariants of the blowup of a curve:
/// `kx3 = ky3 - 2 (-K_Y . Gamma) + 2 pa - 2` and
/// `n = (-K_Y . Gamma) + 2 - 2 pa`. Errors when `n <= 0` (no such
/// contraction exists).
pub fn blowup_curve_invariants(
    ky3: i64,
    mk_gamma: i64,
    pa: i64,
) -> Result<BlowupInvariants, LatticeError> {
    debug_assert!(mk_gamma >= 1 && pa >= 0);
    let n = mk_gamma + 2 - 2 * pa;
    if n <= 0 {
        return Err(LatticeError::ContractionImpossible { n });
    }
    Ok(BlowupInvariants {
        ky3,
        mk_gamma,
        pa,
        kx3: ky3 - 2 * mk_gamma + 2 * pa - 2,
        n,
    })
}

/// The anticanonical cube of the strict transform of the second fibration
/// structure in the conic-bundle/conic-bundle regime:
/// `2g - 2 - 3 (12 - d) + 6`, which equals `7 - g` on the locus `d = 13 - g`.
pub fn fsharp_cube(g: i64, d: i64) -> i64 {
    2 * g - 2 - 3 * (12 - d) + 6
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn signature_table() {
        assert_eq!(
            signature_pairing(&ContractionSignature::D1 { d: 4 }, 5).unwrap(),
            (0, 4)
        );
        assert_eq!(
            signature_pairing(&ContractionSignature::C1 { d: 5 }, 8).unwrap(),
            (2, 7)
        );
        assert_eq!(signature_pairing(&ContractionSignature::B5, 5).unwrap(), (-2, 1));
        assert_eq!(
            signature_pairing(
                &ContractionSignature::B2 {
                    target: Rho1Target::new(2, 2)
                },
                5
            )
            .unwrap_err(),
            LatticeError::NoSignature { kind: "B2" }
        );
    }

    #[test]
    fn pairing_reproduces_link_polynomials() {
        // Basis (H, M) with <M,M> = 0, <H,M> = d: the del Pezzo fibration shape.
        let g = 5;
        let d = 4;
        let form = IntersectionForm::for_signature(g, &ContractionSignature::D1 { d }).unwrap();
        let h = form.class(&[1, 0]).unwrap();
        assert_eq!(pair(&h, &h, &form).unwrap(), 8);
        for a in 1..=6 {
            let x = form.class(&[a, -1]).unwrap();
            assert_eq!(pair(&x, &x, &form).unwrap(), (2 * g - 2) * a * a - 2 * a * d);
            assert_eq!(pair(&h, &x, &form).unwrap(), (2 * g - 2) * a - d);
        }
    }

    #[test]
    fn basis_mismatch_is_rejected() {
        let form = IntersectionForm::for_signature(5, &ContractionSignature::D1 { d: 4 }).unwrap();
        let other = IntersectionForm::for_signature(5, &ContractionSignature::B5).unwrap();
        let x = form.class(&[1, 0]).unwrap();
        let y = other.class(&[1, 0]).unwrap();
        assert_eq!(pair(&x, &y, &form).unwrap_err(), LatticeError::BasisMismatch);
    }

    #[test]
    fn form_validation() {
        assert_eq!(
            IntersectionForm::new(
                5,
                vec!["H".into(), "M".into()],
                vec![vec![8, 4], vec![3, 0]]
            )
            .unwrap_err(),
            LatticeError::MalformedGram
        );
        assert_eq!(
            IntersectionForm::new(
                5,
                vec!["H".into(), "M".into()],
                vec![vec![6, 4], vec![4, 0]]
            )
            .unwrap_err(),
            LatticeError::WrongAnticanonicalSquare {
                found: 6,
                expected: 8
            }
        );
        assert_eq!(
            IntersectionForm::new(5, vec!["A".into()], vec![vec![8]]).unwrap_err(),
            LatticeError::MissingH
        );
    }

    #[test]
    fn wire_shape() {
        let form = IntersectionForm::for_signature(5, &ContractionSignature::D1 { d: 4 }).unwrap();
        assert_eq!(
            serde_json::to_value(&form).unwrap(),
            serde_json::json!({
                "genus": 5,
                "basis": ["H", "M"],
                "gram": [[8, 4], [4, 0]],
            })
        );
    }

    #[test]
    fn blowup_invariants_examples() {
        let inv = blowup_curve_invariants(24, 2, 0).unwrap();
        assert_eq!((inv.kx3, inv.n), (18, 4));
        let inv = blowup_curve_invariants(16, 2, 0).unwrap();
        assert_eq!((inv.kx3, inv.n), (10, 4));
        for ky3 in [10, 16, 22] {
            let inv = blowup_curve_invariants(ky3, 1, 0).unwrap();
            assert_eq!((inv.kx3, inv.n), (ky3 - 4, 3));
        }
        // A high-genus curve of low degree admits no contraction.
        assert_eq!(
            blowup_curve_invariants(24, 2, 3).unwrap_err(),
            LatticeError::ContractionImpossible { n: -2 }
        );
    }

    #[test]
    fn fsharp_cube_values() {
        assert_eq!(fsharp_cube(8, 5), -1);
        assert_eq!(fsharp_cube(7, 6), 0);
        assert_eq!(fsharp_cube(5, 8), 2);
        for g in 5..=10 {
            assert_eq!(fsharp_cube(g, 13 - g), 7 - g);
        }
    }

    proptest! {
        /// The pairing is symmetric and bilinear.
        #[test]
        fn pairing_laws(
            g in 5i64..=10,
            d in 1i64..=4,
            x0 in -5i64..=5, x1 in -5i64..=5,
            y0 in -5i64..=5, y1 in -5i64..=5,
            z0 in -5i64..=5, z1 in -5i64..=5,
        ) {
            let form = IntersectionForm::for_signature(g, &ContractionSignature::D1 { d }).unwrap();
            let x = form.class(&[x0, x1]).unwrap();
            let y = form.class(&[y0, y1]).unwrap();
            let z = form.class(&[z0, z1]).unwrap();
            prop_assert_eq!(pair(&x, &y, &form).unwrap(), pair(&y, &x, &form).unwrap());
            let sum = form.class(&[y0 + z0, y1 + z1]).unwrap();
            prop_assert_eq!(
                pair(&x, &sum, &form).unwrap(),
                pair(&x, &y, &form).unwrap() + pair(&x, &z, &form).unwrap()
            );
        }

        /// The half-point blowup self-pairing bound: all twisted classes
        /// `aH - D` pair to at least 4 once the genus is at least 5.
        #[test]
        fn b5_selfpair_bound(g in 5i64..=12, a in 1i64..=12) {
            let form = IntersectionForm::for_signature(g, &ContractionSignature::B5).unwrap();
            let x = form.class(&[a, -1]).unwrap();
            let v = pair(&x, &x, &form).unwrap();
            prop_assert_eq!(v, a * a * (2 * g - 2) - 2 * a - 2);
            prop_assert!(v >= 4);
        }

        /// Rewriting the second generator as `aH - M` leaves `<H,H>` fixed.
        #[test]
        fn basis_change_fixes_h(g in 5i64..=10, d in 1i64..=8, a in -6i64..=6) {
            let form = IntersectionForm::for_signature(g, &ContractionSignature::D1 { d }).unwrap();
            let changed = form.change_basis(&[vec![1, 0], vec![a, -1]]);
            // The changed form keeps <H,H> = 2g-2, so validation passes.
            prop_assert!(changed.is_ok());
            let changed = changed.unwrap();
            prop_assert_eq!(changed.gram()[0][0], 2 * g - 2);
        }
    }
}
