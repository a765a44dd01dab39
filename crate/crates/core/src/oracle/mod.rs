//! An independent hereditariness test: flatten `Λ̂_m` into a `Z_p`-order,
//! compute the radical of `Λ̂_m / p` directly, and test invertibility of the
//! radical of `Λ̂_m`. No group theory is involved.

mod algebra;
mod flatten;
mod linalg;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::base_rings::MaximalIdeal;
use crate::graded::GradedOrder;
use crate::semiprime::{local_verdict_at, SemiprimeError};

pub use algebra::{
    certify_radical, hereditary_oracle, radical, FiniteAlgebra, OracleVerdict, RadicalCertificate,
    StructureConstantOrder,
};
pub use flatten::{flatten, LocalRing, RANK_CAP};
pub use linalg::Subspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("flattened rank {0} exceeds the cap of {RANK_CAP}")]
    RankCapExceeded(usize),
    #[error("structure constants are not associative at ({0}, {1}, {2})")]
    AssociativityFailure(String, String, String),
    #[error("{0} is outside the scope of the order")]
    OutOfScope(MaximalIdeal),
    #[error("radical certificate failed at {0}")]
    CertificateFailed(MaximalIdeal),
    #[error(transparent)]
    Semiprime(#[from] SemiprimeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub place: String,
    pub rank: usize,
    pub radical_dim: usize,
    pub oracle_hereditary: bool,
    pub criterion_hereditary: bool,
    pub agree: bool,
}

/// Places where `Λ̂_m` can fail to be hereditary: the support of the data and
/// every place over a prime dividing `|G|`, within scope.
pub fn relevant_places(l: &GradedOrder) -> Vec<MaximalIdeal> {
    let mut s: BTreeSet<MaximalIdeal> = l.support().into_iter().collect();
    for p in l.group().prime_divisors() {
        s.extend(l.places_over(p));
    }
    s.into_iter().collect()
}

/// Runs the oracle at `m` and compares it with the group-theoretic verdict.
pub fn oracle_check(l: &GradedOrder, m: &MaximalIdeal) -> Result<OracleReport, OracleError> {
    let order = flatten(l, m)?;
    let v = hereditary_oracle(&order);
    if !v.certificate.holds() {
        return Err(OracleError::CertificateFailed(m.clone()));
    }
    let criterion = local_verdict_at(l, m)?;
    Ok(OracleReport {
        place: m.to_string(),
        rank: v.rank,
        radical_dim: v.radical_dim,
        oracle_hereditary: v.hereditary,
        criterion_hereditary: criterion,
        agree: v.hereditary == criterion,
    })
}
