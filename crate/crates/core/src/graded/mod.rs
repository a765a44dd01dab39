//! Strongly group-graded orders `Λ = ⊕ Λ_g` over a (semi)prime tiled
//! identity component `Δ`, and their inner/outer classification.
//!
//! `Δ = Δ_1 ⊕ … ⊕ Δ_t` is stored block by block. A component `Λ_g` is stored
//! as one ideal matrix per block: `e_a Λ_g = Λ_g e_{σ_g(a)}` is the lattice
//! `blocks[a]` of shape `n_a × n_{σ_g(a)}`. Products are matrix products
//! rescaled by a central multiplier: `x_g · y_h = μ(g, h) x_g y_h ∈ Λ_{gh}`.

mod construct;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::base_rings::{factor_rational_prime, BaseRing, MaximalIdeal, Scalar};
use crate::groups::{FiniteGroup, GroupError, Perm, Subgroup};
use crate::pic::PicError;
use crate::tiled::{
    column_multiplicities, is_hereditary_global, is_hereditary_local, projective_profile, GlobalTiledOrder,
    IdealMatrix, TiledError,
};

pub use construct::{
    construct_crossed_product, construct_from_pic, Cocycle, CrossedProductDatum, MonomialAction, MonomialBlock,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("not strongly graded: {0}")]
    NotStronglyGraded(GradingWitness),
    #[error("identity component is not prime; use the semiprime decomposition")]
    NotPrimeContext,
    #[error("no power X^k with k <= {0} is a scalar multiple of the order")]
    NotFiniteOrder(usize),
    #[error("cocycle identity fails at ({0}, {1}, {2})")]
    CocycleViolation(Perm, Perm, Perm),
    #[error("cocycle is not normalized at the identity")]
    CocycleNotNormalized,
    #[error("action of {0} does not normalize the order")]
    ActionDoesNotNormalize(Perm),
    #[error("action is not a homomorphism up to scalars at ({0}, {1})")]
    ActionNotHomomorphism(Perm, Perm),
    #[error("invalid idempotent selection")]
    InvalidIdempotent,
    #[error("invalid component data: {0}")]
    InvalidComponent(String),
    #[error("identity component is not hereditary at {0}")]
    NotHereditary(MaximalIdeal),
    #[error(transparent)]
    Tiled(#[from] TiledError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Pic(#[from] PicError),
}

/// A pair `(g, h)` with `Λ_g Λ_h ≠ Λ_{gh}`, located at a block and entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingWitness {
    pub g: Perm,
    pub h: Perm,
    pub block: usize,
    /// `None` when the block permutations already disagree.
    pub entry: Option<(usize, usize)>,
}

impl fmt::Display for GradingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g = {}, h = {}, block {}", self.g, self.h, self.block)?;
        if let Some((i, j)) = self.entry {
            write!(f, ", entry ({i}, {j})")?;
        }
        Ok(())
    }
}

/// Where a classification or verdict is computed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scope {
    Global,
    Local(MaximalIdeal),
}

impl Scope {
    pub fn admits(&self, m: &MaximalIdeal) -> bool {
        match self {
            Scope::Global => true,
            Scope::Local(p) => p == m,
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Global => write!(f, "global"),
            Scope::Local(m) => write!(f, "({})", m.display_generator()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradingKind {
    PicConstruction,
    CrossedProduct,
    Explicit,
}

impl GradingKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GradingKind::PicConstruction => "pic-construction",
            GradingKind::CrossedProduct => "crossed-product",
            GradingKind::Explicit => "explicit",
        }
    }
}

/// One homogeneous component: `blocks[a] = e_a Λ_g e_{block_perm[a]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    block_perm: Vec<usize>,
    blocks: Vec<IdealMatrix>,
}

impl Component {
    pub fn new(block_perm: Vec<usize>, blocks: Vec<IdealMatrix>) -> Self {
        Component { block_perm, blocks }
    }

    pub fn prime(block: IdealMatrix) -> Self {
        Component { block_perm: vec![0], blocks: vec![block] }
    }

    pub fn block_perm(&self) -> &[usize] {
        &self.block_perm
    }

    pub fn blocks(&self) -> &[IdealMatrix] {
        &self.blocks
    }

    pub fn fixes_blocks(&self) -> bool {
        self.block_perm.iter().enumerate().all(|(a, &b)| a == b)
    }

    fn support(&self) -> BTreeSet<MaximalIdeal> {
        self.blocks.iter().flat_map(|b| b.support()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOrder {
    group: FiniteGroup,
    delta: Vec<GlobalTiledOrder>,
    components: Vec<Component>,
    multiplier: Vec<Scalar>,
    scope: Scope,
    kind: GradingKind,
    warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerClassification {
    pub subgroup: Subgroup,
    pub inner: Vec<Perm>,
    pub context: Scope,
}

impl InnerClassification {
    pub fn is_outer(&self) -> bool {
        self.inner.len() == 1
    }

    pub fn is_inner(&self) -> bool {
        self.inner.len() == self.subgroup.order()
    }
}

/// Left-module comparison of every component with `Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedProductCheck {
    pub is_crossed_product: bool,
    pub per_element: Vec<(Perm, bool)>,
}

/// One Sylow condition: `Inn(P) = 1` at `place`, inside orbit corner `orbit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowCheck {
    pub orbit: Option<usize>,
    pub p: i64,
    pub place: MaximalIdeal,
    pub sylow: Subgroup,
    pub inner: Vec<Perm>,
    pub inner_witness: Option<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HereditaryVerdict {
    pub hereditary: bool,
    pub delta_hereditary: bool,
    pub delta_failing: Vec<MaximalIdeal>,
    pub breakdown: Vec<SylowCheck>,
}

impl GradedOrder {
    /// Validates shapes, the identity component, the multiplier cocycle and
    /// the strong grading `Λ_g Λ_h = Λ_{gh}`.
    pub fn new(
        group: FiniteGroup,
        delta: Vec<GlobalTiledOrder>,
        components: Vec<Component>,
        multiplier: Option<Vec<Scalar>>,
        scope: Scope,
        kind: GradingKind,
    ) -> Result<Self, GradedError> {
        let ring =
            delta.first().ok_or_else(|| GradedError::InvalidComponent("empty identity component".into()))?.ring();
        if delta.iter().any(|d| d.ring() != ring) {
            return Err(GradedError::InvalidComponent("blocks over different rings".into()));
        }
        let order = group.order();
        if components.len() != order {
            return Err(GradedError::InvalidComponent(format!(
                "expected {order} components, got {}",
                components.len()
            )));
        }
        let t = delta.len();
        for (g, c) in group.elements().iter().zip(&components) {
            let mut seen = vec![false; t];
            if c.block_perm.len() != t || c.blocks.len() != t {
                return Err(GradedError::InvalidComponent(format!("component {g} has the wrong number of blocks")));
            }
            for (a, &b) in c.block_perm.iter().enumerate() {
                if b >= t || std::mem::replace(&mut seen[b], true) {
                    return Err(GradedError::InvalidComponent(format!("component {g} has no block permutation")));
                }
                let m = &c.blocks[a];
                if m.rows() != delta[a].n() || m.cols() != delta[b].n() || m.ring() != ring {
                    return Err(GradedError::InvalidComponent(format!("component {g} block {a} has the wrong shape")));
                }
            }
        }
        let id = &components[group.identity_index()];
        if !id.fixes_blocks() || id.blocks.iter().zip(&delta).any(|(b, d)| b != d.ideals()) {
            return Err(GradedError::InvalidComponent("identity component differs from Δ".into()));
        }
        let multiplier = multiplier.unwrap_or_else(|| vec![Scalar::one(ring); order * order]);
        if multiplier.len() != order * order {
            return Err(GradedError::InvalidComponent("multiplier table has the wrong size".into()));
        }
        let graded = GradedOrder { group, delta, components, multiplier, scope, kind, warnings: Vec::new() };
        graded.check_multiplier()?;
        if let Some(w) = graded.strong_grading_witness() {
            return Err(GradedError::NotStronglyGraded(w));
        }
        Ok(graded)
    }

    fn check_multiplier(&self) -> Result<(), GradedError> {
        let n = self.group.order();
        let e = self.group.identity_index();
        if (0..n).any(|g| !self.mu(e, g).is_one() || !self.mu(g, e).is_one()) {
            return Err(GradedError::CocycleNotNormalized);
        }
        for g in 0..n {
            for h in 0..n {
                let gh = self.group.mul_index(g, h);
                for k in 0..n {
                    let hk = self.group.mul_index(h, k);
                    let lhs = self.mu(g, h).mul(self.mu(gh, k));
                    let rhs = self.mu(h, k).mul(self.mu(g, hk));
                    if lhs != rhs {
                        let el = self.group.elements();
                        return Err(GradedError::CocycleViolation(el[g].clone(), el[h].clone(), el[k].clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// First `(g, h)` violating `Λ_g Λ_h = Λ_{gh}`, in element order.
    pub fn strong_grading_witness(&self) -> Option<GradingWitness> {
        let n = self.group.order();
        let el = self.group.elements();
        for g in 0..n {
            for h in 0..n {
                let gh = self.group.mul_index(g, h);
                let (cg, ch, cgh) = (&self.components[g], &self.components[h], &self.components[gh]);
                for a in 0..self.delta.len() {
                    let b = cg.block_perm[a];
                    let witness = |entry| GradingWitness { g: el[g].clone(), h: el[h].clone(), block: a, entry };
                    if ch.block_perm[b] != cgh.block_perm[a] {
                        return Some(witness(None));
                    }
                    let product = cg.blocks[a].mul(&ch.blocks[b]).scale(self.mu(g, h).ideal());
                    if let Some(entry) = product.first_mismatch(&cgh.blocks[a]) {
                        return Some(witness(Some(entry)));
                    }
                }
            }
        }
        None
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn delta(&self) -> &[GlobalTiledOrder] {
        &self.delta
    }

    pub fn ring(&self) -> BaseRing {
        self.delta[0].ring()
    }

    pub fn is_prime(&self) -> bool {
        self.delta.len() == 1
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn kind(&self) -> GradingKind {
        self.kind
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub(crate) fn push_warning(&mut self, w: String) {
        self.warnings.push(w);
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, g: &Perm) -> Option<&Component> {
        self.group.index_of(g).map(|i| &self.components[i])
    }

    fn mu(&self, g: usize, h: usize) -> &Scalar {
        &self.multiplier[g * self.group.order() + h]
    }

    /// `μ(g, h)` by element indices.
    pub fn multiplier(&self, g: usize, h: usize) -> &Scalar {
        self.mu(g, h)
    }

    /// Places where `Δ` or some component is non-trivial, within scope.
    pub fn support(&self) -> Vec<MaximalIdeal> {
        let mut s: BTreeSet<MaximalIdeal> = self.delta.iter().flat_map(|d| d.support()).collect();
        s.extend(self.components.iter().flat_map(|c| c.support()));
        s.extend(self.multiplier.iter().flat_map(|m| m.ideal().support().cloned()));
        s.into_iter().filter(|m| self.scope.admits(m)).collect()
    }

    /// Maximal ideals over `p` within scope.
    pub fn places_over(&self, p: i64) -> Vec<MaximalIdeal> {
        factor_rational_prime(self.ring(), p)
            .expect("p is a prime divisor of |G|")
            .into_iter()
            .map(|(m, _)| m)
            .filter(|m| self.scope.admits(m))
            .collect()
    }

    /// Hereditariness of `Δ` within scope, with the failing places.
    pub fn delta_hereditary(&self) -> (bool, Vec<MaximalIdeal>) {
        let failing: BTreeSet<MaximalIdeal> = match &self.scope {
            Scope::Global => self.delta.iter().flat_map(|d| is_hereditary_global(d).failing).collect(),
            Scope::Local(m) => {
                if self.delta.iter().all(|d| is_hereditary_local(&d.localize(m))) {
                    BTreeSet::new()
                } else {
                    BTreeSet::from([m.clone()])
                }
            }
        };
        (failing.is_empty(), failing.into_iter().collect())
    }

    /// `Λ_g ≅ Δ` as bimodules in the given context: `g` fixes every block and
    /// each block is a scalar multiple of `Δ_a` (a constant valuation shift
    /// locally; a single fractional ideal globally, which over a PID is
    /// principal).
    pub fn is_inner_element(&self, g: &Perm, ctx: &Scope) -> bool {
        let c = self.component(g).expect("element of the grading group");
        c.fixes_blocks()
            && c.blocks.iter().zip(&self.delta).all(|(b, d)| match ctx {
                Scope::Global => b.scalar_ratio(d.ideals()).is_some(),
                Scope::Local(m) => b.localize(m).constant_offset_from(&d.ideals().localize(m)).is_some(),
            })
    }

    /// Inner elements of `H` for any identity component, prime or not.
    pub fn inner_elements(&self, h: &Subgroup, ctx: &Scope) -> Vec<Perm> {
        h.elements().iter().filter(|g| self.is_inner_element(g, ctx)).cloned().collect()
    }

    pub fn inner_classification(&self, h: &Subgroup, ctx: &Scope) -> Result<InnerClassification, GradedError> {
        if !self.is_prime() {
            return Err(GradedError::NotPrimeContext);
        }
        Ok(InnerClassification { subgroup: h.clone(), inner: self.inner_elements(h, ctx), context: ctx.clone() })
    }

    /// Compares every `Λ_g` with `Δ` as left modules, place by place.
    pub fn is_crossed_product(&self) -> Result<CrossedProductCheck, GradedError> {
        let places = self.support();
        let mut per_element = Vec::with_capacity(self.group.order());
        for (g, c) in self.group.elements().iter().zip(&self.components) {
            let mut ok = true;
            for (a, block) in c.blocks.iter().enumerate() {
                if block.rows() != block.cols() {
                    ok = false;
                    continue;
                }
                for m in &places {
                    let d = self.delta[a].localize(m);
                    let profile = projective_profile(&d).map_err(|_| GradedError::NotHereditary(m.clone()))?;
                    match column_multiplicities(&d, &block.localize(m)) {
                        Ok(mult) => ok &= mult == profile.block_sizes,
                        Err(_) => ok = false,
                    }
                }
            }
            per_element.push((g.clone(), ok));
        }
        let is_crossed_product = per_element.iter().all(|(_, ok)| *ok);
        Ok(CrossedProductCheck { is_crossed_product, per_element })
    }

    /// `eΛe` for `e` the diagonal idempotent at `indices` of a prime `Δ`.
    pub fn corner(&self, indices: &[usize]) -> Result<GradedOrder, GradedError> {
        if !self.is_prime() {
            return Err(GradedError::InvalidIdempotent);
        }
        let delta = self.delta[0].corner(indices).map_err(|_| GradedError::InvalidIdempotent)?;
        let components =
            self.components.iter().map(|c| Component::prime(c.blocks[0].submatrix(indices, indices))).collect();
        GradedOrder::new(
            self.group.clone(),
            vec![delta],
            components,
            Some(self.multiplier.clone()),
            self.scope.clone(),
            GradingKind::Explicit,
        )
    }

    /// The corner at the basic idempotent of `Δ̂_m`.
    pub fn basic_corner_at(&self, m: &MaximalIdeal) -> Result<(GradedOrder, Vec<usize>), GradedError> {
        if !self.is_prime() {
            return Err(GradedError::NotPrimeContext);
        }
        let (_, idx) = crate::tiled::basic_idempotent_corner(&self.delta[0].localize(m))
            .map_err(|_| GradedError::NotHereditary(m.clone()))?;
        Ok((self.corner(&idx)?, idx))
    }

    /// `e_a Λ e_a`, graded by a subgroup fixing block `a`.
    pub fn central_corner(&self, a: usize, stabilizer: &Subgroup) -> Result<GradedOrder, GradedError> {
        if a >= self.delta.len() {
            return Err(GradedError::InvalidIdempotent);
        }
        let group = stabilizer.as_group();
        let idx: Vec<usize> = group
            .elements()
            .iter()
            .map(|h| self.group.index_of(h).ok_or(GradedError::InvalidIdempotent))
            .collect::<Result<_, _>>()?;
        let mut components = Vec::with_capacity(idx.len());
        for &i in &idx {
            let c = &self.components[i];
            if c.block_perm[a] != a {
                return Err(GradedError::InvalidIdempotent);
            }
            components.push(Component::prime(c.blocks[a].clone()));
        }
        let multiplier =
            idx.iter().flat_map(|&g| idx.iter().map(move |&h| (g, h))).map(|(g, h)| self.mu(g, h).clone()).collect();
        GradedOrder::new(
            group,
            vec![self.delta[a].clone()],
            components,
            Some(multiplier),
            self.scope.clone(),
            GradingKind::Explicit,
        )
    }

    /// The prime-case criterion: `Δ` hereditary, and for every prime
    /// `p | |G|` and place `m ⊇ (p)`, `Inn_{Δ̂_m}(P) = 1` for the chosen Sylow
    /// `p`-subgroup.
    pub fn prime_hereditary_verdict(&self) -> Result<HereditaryVerdict, GradedError> {
        self.prime_hereditary_verdict_with(&|g: &FiniteGroup, p| g.sylow_subgroup(p).expect("p prime"))
    }

    pub fn prime_hereditary_verdict_with(
        &self,
        choose_sylow: &dyn Fn(&FiniteGroup, i64) -> Subgroup,
    ) -> Result<HereditaryVerdict, GradedError> {
        if !self.is_prime() {
            return Err(GradedError::NotPrimeContext);
        }
        let (delta_hereditary, delta_failing) = self.delta_hereditary();
        let breakdown = self.sylow_checks(None, choose_sylow);
        let hereditary = delta_hereditary && breakdown.iter().all(|c| c.inner_witness.is_none());
        Ok(HereditaryVerdict { hereditary, delta_hereditary, delta_failing, breakdown })
    }

    pub(crate) fn sylow_checks(
        &self,
        orbit: Option<usize>,
        choose_sylow: &dyn Fn(&FiniteGroup, i64) -> Subgroup,
    ) -> Vec<SylowCheck> {
        let mut out = Vec::new();
        for p in self.group.prime_divisors() {
            let sylow = choose_sylow(&self.group, p);
            for m in self.places_over(p) {
                let inner = self.inner_elements(&sylow, &Scope::Local(m.clone()));
                let inner_witness = inner.iter().find(|g| !g.is_identity()).cloned();
                out.push(SylowCheck { orbit, p, place: m, sylow: sylow.clone(), inner, inner_witness });
            }
        }
        out
    }

    /// The prime-case criterion restricted to the single place `m`.
    pub fn local_verdict_at(&self, m: &MaximalIdeal) -> Result<bool, GradedError> {
        if !self.is_prime() {
            return Err(GradedError::NotPrimeContext);
        }
        if !is_hereditary_local(&self.delta[0].localize(m)) {
            return Ok(false);
        }
        let p = m.characteristic();
        if self.group.order() as i64 % p != 0 {
            return Ok(true);
        }
        let sylow = self.group.sylow_subgroup(p)?;
        Ok(self.inner_elements(&sylow, &Scope::Local(m.clone())).len() == 1)
    }
}

#[cfg(test)]
mod tests;
