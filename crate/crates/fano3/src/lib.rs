//! Exact-arithmetic invariants of Gorenstein Fano threefolds.
//!
//! The crate mechanizes the numerical bookkeeping that occurs around
//! Sarkisov links between rank-two Mori fiber spaces:
//!
//! * [`chow`] — the Chow ring of a projectivized split bundle over the line,
//!   Chern-class series, and Euler characteristics of complete-intersection
//!   threefolds inside such scrolls;
//! * [`lattice`] — the flop-invariant intersection pairing on the divisor
//!   class group of a nodal threefold with two extremal contractions;
//! * [`enumerate`] — Diophantine solvers that classify the possible pairs of
//!   contractions genus by genus, with an auditable pruning trail;
//! * [`catalog`] — the resulting twelve-row classification table, embedded
//!   as data;
//! * [`rationality`] — rationality/nonrationality verdicts for conic bundles
//!   and del Pezzo fibrations, with the deciding rule cited on every verdict;
//! * [`quadrics`] — exact linear algebra for nets of quadrics in seven
//!   variables (corank strata, nodes on vertex planes, ruling pencils) and
//!   for pencils of antisymmetric forms in five variables;
//! * [`expr`] — a small text grammar for divisor classes, shared with the
//!   command-line front end.
//!
//! All arithmetic is exact: arbitrary-precision integers in the Chow ring,
//! arbitrary-precision rationals in the quadric routines. No floating point
//! is used anywhere.

pub mod catalog;
pub mod chow;
pub mod enumerate;
pub mod expr;
pub mod lattice;
pub mod quadrics;
pub mod rationality;
