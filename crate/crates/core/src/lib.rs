//! Strongly graded orders over `Z` and `Z[i]` and their hereditariness.
//!
//! The crate builds tiled orders, crossed products and cyclic gradings by
//! Picard elements, and decides whether the resulting graded order is
//! hereditary in two independent ways: through the inner/outer behaviour of
//! Sylow subgroups at each completion, and through a brute-force radical
//! computation on the flattened algebra (module [`oracle`]).

pub mod base_rings;
pub mod cli;
pub mod graded;
pub mod groups;
pub mod io;
pub mod oracle;
pub mod pic;
pub mod semiprime;
pub mod tiled;
