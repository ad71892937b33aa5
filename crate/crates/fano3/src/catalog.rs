//! The classified table of Sarkisov self-links and links between the
//! anticanonical models under study.
//!
//! Each row records the genus of the central variety, the two extremal
//! contractions in the order the classification prints them (first map on
//! the left), both as verbatim description text and as a numerical
//! signature, the number of nodes (ordinary double points) the general
//! central member acquires, whether the table lists the row among the
//! symmetric links, and whether nonrationality holds for all members of the
//! family or only for a general one.

use serde::{Deserialize, Serialize};

use crate::lattice::{ContractionSignature, Rho1Target};

/// Whether a statement holds for every member of the deformation family or
/// only for a general member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generality {
    General,
    All,
}

/// One classified link.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogRow {
    /// 1-based position in the classified table.
    pub row: u8,
    /// Genus of the central variety.
    pub genus: i64,
    /// Description of the first contraction, verbatim from the table.
    pub left_desc: &'static str,
    /// Description of the second contraction, verbatim from the table.
    pub right_desc: &'static str,
    /// Signature of the first contraction.
    pub left_sig: ContractionSignature,
    /// Signature of the second contraction.
    pub right_sig: ContractionSignature,
    /// Number of nodes on the general central member.
    pub nodes: i64,
    /// For which members the central variety is nonrational via this link.
    pub nonrational: Generality,
    /// Whether the numerical invariants of the two ends coincide (the
    /// table's "symmetric links" heading).
    pub symmetric: bool,
}

/// The full classified table, in row order.
pub fn catalog() -> Vec<CatalogRow> {
    use ContractionSignature::*;
    let i1 = |g| Rho1Target::new(1, g);
    let i2 = |d| Rho1Target::new(2, d);
    vec![
        CatalogRow {
            row: 1,
            genus: 5,
            left_desc: "del Pezzo fibration of degree 4 over P^1",
            right_desc: "del Pezzo fibration of degree 4 over P^1",
            left_sig: D1 { d: 4 },
            right_sig: D1 { d: 4 },
            nodes: 4,
            nonrational: Generality::General,
            symmetric: true,
        },
        CatalogRow {
            row: 2,
            genus: 5,
            left_desc: "blowup of a conic on a smooth threefold Y_14 in P^9",
            right_desc: "blowup of a conic on a smooth threefold Y_14' in P^9",
            left_sig: B1 {
                target: i1(8),
                deg: 2,
                pa: 0,
            },
            right_sig: B1 {
                target: i1(8),
                deg: 2,
                pa: 0,
            },
            nodes: 10,
            nonrational: Generality::All,
            symmetric: true,
        },
        CatalogRow {
            row: 3,
            genus: 5,
            left_desc: "blowup of a smooth point on a del Pezzo threefold Y_2",
            right_desc: "blowup of a smooth point on Y_2",
            left_sig: B2 { target: i2(2) },
            right_sig: B2 { target: i2(2) },
            nodes: 12,
            nonrational: Generality::General,
            symmetric: true,
        },
        CatalogRow {
            row: 4,
            genus: 8,
            left_desc: "conic bundle over P^2 with discriminant curve of degree 5",
            right_desc: "conic bundle over P^2 with discriminant curve of degree 5",
            left_sig: C1 { d: 5 },
            right_sig: C1 { d: 5 },
            nodes: 1,
            nonrational: Generality::All,
            symmetric: true,
        },
        CatalogRow {
            row: 5,
            genus: 9,
            left_desc: "blowup of a point on a smooth cubic Y_3 in P^4",
            right_desc: "blowup of a point on Y_3 in P^4",
            left_sig: B2 { target: i2(3) },
            right_sig: B2 { target: i2(3) },
            nodes: 6,
            nonrational: Generality::All,
            symmetric: true,
        },
        CatalogRow {
            row: 6,
            genus: 5,
            left_desc: "del Pezzo fibration of degree 3 over P^1",
            right_desc: "conic bundle over P^2 with discriminant curve of degree 7",
            left_sig: D1 { d: 3 },
            right_sig: C1 { d: 7 },
            nodes: 1,
            nonrational: Generality::General,
            symmetric: false,
        },
        CatalogRow {
            row: 7,
            genus: 5,
            left_desc: "blowup of a cA_1-point on locally factorial threefold Y_10^s in P^7",
            right_desc: "conic bundle over P^2 with discriminant curve of degree 6",
            left_sig: B3B4 { target: i1(6) },
            right_sig: C1 { d: 6 },
            nodes: 6,
            nonrational: Generality::General,
            symmetric: false,
        },
        CatalogRow {
            row: 8,
            genus: 6,
            left_desc: "del Pezzo fibration of degree 4 over P^1",
            right_desc: "conic bundle over P^2 with discriminant curve of degree 6",
            left_sig: D1 { d: 4 },
            right_sig: C1 { d: 6 },
            nodes: 2,
            nonrational: Generality::General,
            symmetric: false,
        },
        CatalogRow {
            row: 9,
            genus: 6,
            left_desc: "blowup of a line on a smooth threefold Y_14 in P^9",
            right_desc: "conic bundle over P^2 with discriminant curve of degree 5",
            left_sig: B1 {
                target: i1(8),
                deg: 1,
                pa: 0,
            },
            right_sig: C1 { d: 5 },
            nodes: 6,
            nonrational: Generality::All,
            symmetric: false,
        },
        CatalogRow {
            row: 10,
            genus: 6,
            left_desc: "blowup of a rational twisted cubic curve on a smooth cubic Y_3 in P^4",
            right_desc: "blowup of a point 1/2(1,1,1) on Y_{21/2}",
            left_sig: B1 {
                target: i2(3),
                deg: 6,
                pa: 0,
            },
            right_sig: B5,
            nodes: 6,
            nonrational: Generality::All,
            symmetric: false,
        },
        CatalogRow {
            row: 11,
            genus: 6,
            left_desc: "blowup of a line on a del Pezzo threefold Y_2",
            right_desc: "del Pezzo fibration of degree 3",
            left_sig: B1 {
                target: i2(2),
                deg: 2,
                pa: 0,
            },
            right_sig: D1 { d: 3 },
            nodes: 1,
            nonrational: Generality::General,
            symmetric: false,
        },
        CatalogRow {
            row: 12,
            genus: 8,
            left_desc: "blowup of a conic on a smooth cubic Y_3 in P^4",
            right_desc: "del Pezzo fibration of degree 4 over P^1",
            left_sig: B1 {
                target: i2(3),
                deg: 4,
                pa: 0,
            },
            right_sig: D1 { d: 4 },
            nodes: 1,
            nonrational: Generality::All,
            symmetric: false,
        },
    ]
}

/// Rows whose two ends carry the given unordered pair of signatures at the
/// given genus.
pub fn find_two_sided(
    genus: i64,
    a: &ContractionSignature,
    b: &ContractionSignature,
) -> Vec<CatalogRow> {
    catalog()
        .into_iter()
        .filter(|r| {
            r.genus == genus
                && ((r.left_sig == *a && r.right_sig == *b)
                    || (r.left_sig == *b && r.right_sig == *a))
        })
        .collect()
}

/// Rows whose first (left) end carries the given signature at the given
/// genus.
pub fn find_by_left(genus: i64, left: &ContractionSignature) -> Vec<CatalogRow> {
    catalog()
        .into_iter()
        .filter(|r| r.genus == genus && r.left_sig == *left)
        .collect()
}
