//! Exact-arithmetic engine for symmetric association schemes.
//!
//! The crate computes eigenmatrices and Krein parameters over the
//! rationals, decides fusions via the Bannai-Muzychuk criterion on either
//! eigenmatrix, builds fusing-relations and fusing-idempotents graphs,
//! classifies strongly regular relations and idempotents by (negative)
//! Latin square type, and decides amorphicity two independent ways
//! (canonical form of the principal eigenmatrix, and an exhaustive
//! all-partitions oracle).

pub mod amorphic;
pub mod exact;
pub mod fusegraph;
pub mod fusion;
pub mod generators;
pub mod scheme;
pub mod srg;
pub mod text;
