//! Exact counting of planar matchings in ordered regular bipartite multigraphs,
//! with independent cross-checks through three other combinatorial models.
//!
//! The library computes, for an r-regular bipartite multigraph on ordered parts
//! of size n, the largest set of pairwise non-crossing edges (a *planar
//! matching*; a *planar subgraph* when edges may share endpoints), and counts
//! the multigraphs whose planar matching (or subgraph) number stays below a
//! bound d. The same counts are obtained along four independent routes:
//!
//! * [`oracle`] — brute-force enumeration with an O(E^2) longest-chain search;
//! * [`walks`] — signed sums of restricted lattice-walk counts over Toeplitz
//!   endpoints, plus a bijective route through walks confined to the chamber
//!   x1 >= x2 >= ... >= xd;
//! * [`tableaux`] — row-insertion (RSK) pairs of standard Young tableaux
//!   filtered by block descent conditions;
//! * [`series`] — exact truncated power series: Bessel-type determinants and a
//!   differential operator that extracts normalized walk counts.
//!
//! Everything is exact: counts are [`num::BigInt`], series coefficients are
//! [`num::BigRational`]. Enumeration streams are budget-guarded (see
//! [`Budget`]). With the default `parallel` feature the heavy inner loops run
//! on rayon; disabling it falls back to equivalent sequential code.
//!
//! The [`multigraph`] module holds the shared ground objects: multiplicity
//! matrices, configurations (perfect matchings on vertex copies), and the
//! expansion/projection maps between them.

pub mod budget;
pub mod error;
mod exec;
pub mod multigraph;
pub mod oracle;
pub mod series;
pub mod tableaux;
pub mod walks;

pub use budget::Budget;
pub use error::{Error, Result};
pub use multigraph::{BipartiteMultigraph, Configuration, QuasiConfiguration};
pub use oracle::{VerificationReport, VerifyOptions};
pub use series::TruncatedSeries;
pub use tableaux::{TableauPair, YoungTableau};
pub use walks::{RepresentativeWalk, Walk};
