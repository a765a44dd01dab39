//! Semiprime identity components `Δ = Δ_1 ⊕ … ⊕ Δ_t`: the action of `G` on
//! the central idempotents, orbit corners, and the hereditary verdict that
//! applies the prime-case criterion inside each corner.

use thiserror::Error;

use crate::base_rings::MaximalIdeal;
use crate::graded::{
    construct_crossed_product, CrossedProductDatum, GradedError, GradedOrder, HereditaryVerdict, Scope,
};
use crate::groups::{FiniteGroup, GroupAction, GroupError, Perm, Subgroup};
use crate::tiled::{is_hereditary_local, GlobalTiledOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemiprimeError {
    #[error("block permutations of {0} are inconsistent with a group action")]
    InconsistentBlockSupport(Perm),
    #[error("{0} is not a valid choice of orbit representatives")]
    InvalidRepresentatives(String),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `e_a Λ_g = Λ_g e_{g(a)}`, read off the block permutations.
pub fn idempotent_action(l: &GradedOrder) -> Result<GroupAction, SemiprimeError> {
    let table = l.components().iter().map(|c| c.block_perm().to_vec()).collect();
    GroupAction::new(l.group().clone(), l.delta().len(), table).map_err(|e| match e {
        GroupError::ActionAxiom { g, .. } => SemiprimeError::InconsistentBlockSupport(g),
        GroupError::IdentityMoves(_) => SemiprimeError::InconsistentBlockSupport(l.group().identity()),
        other => SemiprimeError::Group(other),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCorner {
    pub representative: usize,
    pub members: Vec<usize>,
    pub stabilizer: Subgroup,
    /// `ε Λ ε`, strongly graded by the stabilizer with prime identity component.
    pub corner: GradedOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub orbits: Vec<OrbitCorner>,
}

/// Orbits with least-index representatives.
pub fn orbit_decompose(l: &GradedOrder) -> Result<OrbitDecomposition, SemiprimeError> {
    orbit_decompose_with(l, None)
}

/// Orbits with the given representatives (one per orbit, in orbit order),
/// or the least index of each orbit.
pub fn orbit_decompose_with(l: &GradedOrder, reps: Option<&[usize]>) -> Result<OrbitDecomposition, SemiprimeError> {
    let action = idempotent_action(l)?;
    let orbits = action.orbits_and_stabilizers();
    if let Some(r) = reps {
        if r.len() != orbits.len() || orbits.iter().zip(r).any(|(o, x)| !o.points.contains(x)) {
            return Err(SemiprimeError::InvalidRepresentatives(format!("{r:?}")));
        }
    }
    let mut out = Vec::with_capacity(orbits.len());
    for (i, o) in orbits.into_iter().enumerate() {
        let rep = reps.map_or(o.representative, |r| r[i]);
        let stabilizer = action.stabilizer(rep);
        let corner = l.central_corner(rep, &stabilizer)?;
        out.push(OrbitCorner { representative: rep, members: o.points, stabilizer, corner });
    }
    Ok(OrbitDecomposition { orbits: out })
}

/// `Λ` is hereditary iff `Δ` is and, in every orbit corner `ε_i Λ ε_i`, the
/// Sylow subgroups of the stabilizer `G_i` are outer at every place over
/// their prime.
pub fn main_hereditary_verdict(l: &GradedOrder) -> Result<HereditaryVerdict, SemiprimeError> {
    main_hereditary_verdict_with(l, None, &|g: &FiniteGroup, p| g.sylow_subgroup(p).expect("p prime"))
}

pub fn main_hereditary_verdict_with(
    l: &GradedOrder,
    reps: Option<&[usize]>,
    choose_sylow: &dyn Fn(&FiniteGroup, i64) -> Subgroup,
) -> Result<HereditaryVerdict, SemiprimeError> {
    if l.is_prime() {
        return Ok(l.prime_hereditary_verdict_with(choose_sylow)?);
    }
    let (delta_hereditary, delta_failing) = l.delta_hereditary();
    let decomposition = orbit_decompose_with(l, reps)?;
    let breakdown: Vec<_> = decomposition
        .orbits
        .iter()
        .enumerate()
        .flat_map(|(i, o)| o.corner.sylow_checks(Some(i), choose_sylow))
        .collect();
    let hereditary = delta_hereditary && breakdown.iter().all(|c| c.inner_witness.is_none());
    Ok(HereditaryVerdict { hereditary, delta_hereditary, delta_failing, breakdown })
}

/// The criterion restricted to the single place `m`.
pub fn local_verdict_at(l: &GradedOrder, m: &MaximalIdeal) -> Result<bool, SemiprimeError> {
    if !l.delta().iter().all(|d| is_hereditary_local(&d.localize(m))) {
        return Ok(false);
    }
    for o in orbit_decompose(l)?.orbits {
        if !o.corner.local_verdict_at(m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Δ^{(d)}` with `S_d` permuting the summands, trivially twisted.
pub fn permutation_crossed_product(
    delta: &GlobalTiledOrder,
    d: usize,
    scope: Scope,
) -> Result<GradedOrder, SemiprimeError> {
    let group = FiniteGroup::symmetric(d);
    let blocks = vec![delta.clone(); d];
    let datum = CrossedProductDatum::permuting_blocks(&group, &blocks);
    Ok(construct_crossed_product(blocks, group, &datum, scope)?)
}
