//! The two standard ways of producing strongly graded orders: powers of an
//! invertible bimodule, and crossed products from a monomial action.

use std::collections::VecDeque;

use crate::base_rings::{FractionalIdealR, Gauss, Scalar};
use crate::groups::{FiniteGroup, Perm};
use crate::tiled::{GlobalIdealMatrix, GlobalTiledOrder, IdealMatrix};

use super::{Component, GradedError, GradedOrder, GradingKind, Scope};

fn lcm_up_to(n: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..=n.max(1)).fold(1, |acc, k| acc / gcd(acc, k) * k)
}

/// `Λ = ⊕_{i<n} X^i`, graded by `C_n = ⟨(1 2 … n)⟩`, with `X^n = cΔ` and
/// products wrapping past `n` rescaled by `c⁻¹`.
///
/// Without an explicit `n` the least `n` with `X^n` scalar is used; the
/// search is bounded by the exponent of `S_size`, since an invertible
/// bimodule of a tiled order permutes its indecomposable projectives.
pub fn construct_from_pic(x: &GlobalIdealMatrix, n: Option<usize>, scope: Scope) -> Result<GradedOrder, GradedError> {
    let delta = x.order().clone();
    let scalar_power = |k: usize| x.pow(k).ideals().scalar_ratio(delta.ideals());
    let bound = lcm_up_to(delta.n());
    let minimal = (1..=bound).find(|&k| scalar_power(k).is_some());
    let (n, warning) = match n {
        Some(0) => return Err(GradedError::NotFiniteOrder(0)),
        Some(n) => {
            if scalar_power(n).is_none() {
                return Err(GradedError::NotFiniteOrder(n));
            }
            let w = minimal
                .filter(|&k| k < n)
                .map(|k| format!("NonMinimalOrder: X^{k} is already a scalar multiple of the order, n = {n}"));
            (n, w)
        }
        None => (minimal.ok_or(GradedError::NotFiniteOrder(bound))?, None),
    };
    let c = Scalar::from_ideal(&scalar_power(n).expect("checked above"));
    let group = FiniteGroup::cyclic(n);
    let generator = group.gens().first().cloned().unwrap_or_else(|| Perm::identity(1));
    let mut exponent = vec![0usize; n];
    let mut components = vec![None; n];
    let mut power = GlobalIdealMatrix::identity(&delta);
    for i in 0..n {
        let idx = group.index_of(&generator.pow(i)).expect("power of the generator");
        exponent[idx] = i;
        components[idx] = Some(Component::prime(power.ideals().clone()));
        power = power.mul(x).expect("same order");
    }
    let components = components.into_iter().map(|c| c.expect("every element is a power")).collect();
    let wrap = c.inverse();
    let one = Scalar::one(delta.ring());
    let multiplier = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| if exponent[a] + exponent[b] >= n { wrap.clone() } else { one.clone() })
        .collect();
    let mut graded =
        GradedOrder::new(group, vec![delta], components, Some(multiplier), scope, GradingKind::PicConstruction)?;
    if let Some(w) = warning {
        graded.push_warning(w);
    }
    Ok(graded)
}

/// A monomial `n_a × n_b` matrix: column `j` has the single entry
/// `scalars[j]` in row `perm[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBlock {
    pub perm: Vec<usize>,
    pub scalars: Vec<Scalar>,
}

impl MonomialBlock {
    pub fn identity(ring: crate::base_rings::BaseRing, n: usize) -> Self {
        MonomialBlock { perm: (0..n).collect(), scalars: vec![Scalar::one(ring); n] }
    }

    fn is_valid(&self) -> bool {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        self.scalars.len() == n && self.perm.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
    }

    fn mul(&self, other: &MonomialBlock) -> MonomialBlock {
        let perm = other.perm.iter().map(|&k| self.perm[k]).collect();
        let scalars = other.perm.iter().zip(&other.scalars).map(|(&k, s)| self.scalars[k].mul(s)).collect();
        MonomialBlock { perm, scalars }
    }

    /// `Δ_a · W` as a lattice: entry `(i, j)` is `Δ_a[i][perm[j]] · s_j`.
    fn left_span(&self, delta: &GlobalTiledOrder) -> IdealMatrix {
        let d = delta.ideals();
        IdealMatrix::from_fn(delta.ring(), d.rows(), self.perm.len(), |i, j| {
            d.get(i, self.perm[j]).mul(self.scalars[j].ideal())
        })
    }

    /// `W · Δ_b` as a lattice.
    fn right_span(&self, delta: &GlobalTiledOrder) -> IdealMatrix {
        let d = delta.ideals();
        let mut inv = vec![0; self.perm.len()];
        for (j, &i) in self.perm.iter().enumerate() {
            inv[i] = j;
        }
        IdealMatrix::from_fn(delta.ring(), self.perm.len(), d.cols(), |i, j| {
            self.scalars[inv[i]].ideal().mul(d.get(inv[i], j))
        })
    }
}

/// The monomial matrix `w_g` realizing `α(g)` by conjugation, block by block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialAction {
    pub block_perm: Vec<usize>,
    pub blocks: Vec<MonomialBlock>,
}

impl MonomialAction {
    pub fn identity(ring: crate::base_rings::BaseRing, sizes: &[usize]) -> Self {
        MonomialAction {
            block_perm: (0..sizes.len()).collect(),
            blocks: sizes.iter().map(|&n| MonomialBlock::identity(ring, n)).collect(),
        }
    }

    /// `self` then `other`: `(w w')[a] = w[a] · w'[σ(a)]`.
    fn compose(&self, other: &MonomialAction) -> MonomialAction {
        let block_perm = self.block_perm.iter().map(|&b| other.block_perm[b]).collect();
        let blocks = self.blocks.iter().zip(&self.block_perm).map(|(w, &b)| w.mul(&other.blocks[b])).collect();
        MonomialAction { block_perm, blocks }
    }

    /// `Some(λ)` with `self = λ · other` for a single scalar `λ`.
    fn ratio(&self, other: &MonomialAction) -> Option<Scalar> {
        if self.block_perm != other.block_perm {
            return None;
        }
        let mut ratio: Option<Scalar> = None;
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            if a.perm != b.perm {
                return None;
            }
            for (x, y) in a.scalars.iter().zip(&b.scalars) {
                let r = x.div(y);
                match &ratio {
                    None => ratio = Some(r),
                    Some(q) if *q == r => {}
                    Some(_) => return None,
                }
            }
        }
        ratio
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cocycle {
    Trivial,
    /// Values `τ(g, h)` in the units of `R`; unlisted pairs are 1.
    Table(Vec<(Perm, Perm, Gauss)>),
}

/// Action on generators (in the order of `group.gens()`) and a twisting cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedProductDatum {
    pub generator_actions: Vec<MonomialAction>,
    pub cocycle: Cocycle,
}

impl CrossedProductDatum {
    /// Each generator permutes the blocks as it permutes points, acting by
    /// identity matrices; trivial twisting.
    pub fn permuting_blocks(group: &FiniteGroup, delta: &[GlobalTiledOrder]) -> Self {
        let ring = delta[0].ring();
        let sizes: Vec<usize> = delta.iter().map(|d| d.n()).collect();
        let generator_actions = group
            .gens()
            .iter()
            .map(|g| {
                let mut w = MonomialAction::identity(ring, &sizes);
                w.block_perm = (0..sizes.len()).map(|a| if a < g.degree() { g.apply(a) } else { a }).collect();
                w
            })
            .collect();
        CrossedProductDatum { generator_actions, cocycle: Cocycle::Trivial }
    }

    /// Trivial action and trivial twisting: the group ring `ΔG`.
    pub fn trivial(group: &FiniteGroup, delta: &[GlobalTiledOrder]) -> Self {
        let ring = delta[0].ring();
        let sizes: Vec<usize> = delta.iter().map(|d| d.n()).collect();
        CrossedProductDatum {
            generator_actions: group.gens().iter().map(|_| MonomialAction::identity(ring, &sizes)).collect(),
            cocycle: Cocycle::Trivial,
        }
    }
}

/// `Λ_g = Δ w_g`, with `u_g u_h = τ(g, h) u_{gh}`. Writing
/// `w_g w_h = τ'(g, h) w_{gh}`, the stored multiplier is `τ / τ'`.
pub fn construct_crossed_product(
    delta: Vec<GlobalTiledOrder>,
    group: FiniteGroup,
    datum: &CrossedProductDatum,
    scope: Scope,
) -> Result<GradedOrder, GradedError> {
    let ring = delta.first().ok_or_else(|| GradedError::InvalidComponent("empty identity component".into()))?.ring();
    let sizes: Vec<usize> = delta.iter().map(|d| d.n()).collect();
    let order = group.order();
    let el = group.elements().to_vec();
    if datum.generator_actions.len() != group.gens().len() {
        return Err(GradedError::InvalidComponent("one action per group generator is required".into()));
    }

    let mut tau = vec![Gauss::ONE; order * order];
    if let Cocycle::Table(entries) = &datum.cocycle {
        for (g, h, v) in entries {
            let (Some(g), Some(h)) = (group.index_of(g), group.index_of(h)) else {
                return Err(GradedError::InvalidComponent("cocycle entry outside the group".into()));
            };
            if !v.is_unit() || !ring.contains(v) {
                return Err(GradedError::InvalidComponent(format!("cocycle value {v} is not a unit")));
            }
            tau[g * order + h] = *v;
        }
    }
    let e = group.identity_index();
    if tau[e * order + e] != Gauss::ONE {
        return Err(GradedError::CocycleNotNormalized);
    }
    for g in 0..order {
        for h in 0..order {
            let gh = group.mul_index(g, h);
            for k in 0..order {
                let hk = group.mul_index(h, k);
                if tau[g * order + h] * tau[gh * order + k] != tau[h * order + k] * tau[g * order + hk] {
                    return Err(GradedError::CocycleViolation(el[g].clone(), el[h].clone(), el[k].clone()));
                }
            }
        }
    }

    for (s, w) in group.gens().iter().zip(&datum.generator_actions) {
        let t = sizes.len();
        let mut seen = vec![false; t];
        let shape_ok = w.block_perm.len() == t
            && w.blocks.len() == t
            && w.block_perm.iter().all(|&b| b < t && !std::mem::replace(&mut seen[b], true))
            && w.blocks
                .iter()
                .zip(&w.block_perm)
                .enumerate()
                .all(|(a, (blk, &b))| blk.is_valid() && blk.perm.len() == sizes[a] && sizes[a] == sizes[b]);
        if !shape_ok || w.blocks.iter().flat_map(|b| &b.scalars).any(|x| x.ring() != ring) {
            return Err(GradedError::InvalidComponent(format!("malformed action for generator {s}")));
        }
        for (a, blk) in w.blocks.iter().enumerate() {
            if blk.left_span(&delta[a]) != blk.right_span(&delta[w.block_perm[a]]) {
                return Err(GradedError::ActionDoesNotNormalize(s.clone()));
            }
        }
    }

    let mut w: Vec<Option<MonomialAction>> = vec![None; order];
    w[e] = Some(MonomialAction::identity(ring, &sizes));
    let gen_idx: Vec<usize> = group.gens().iter().map(|s| group.index_of(s).expect("generator")).collect();
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for (&s, act) in gen_idx.iter().zip(&datum.generator_actions) {
            let y = group.mul_index(x, s);
            if w[y].is_none() {
                w[y] = Some(w[x].as_ref().expect("visited").compose(act));
                queue.push_back(y);
            }
        }
    }
    let w: Vec<MonomialAction> = w.into_iter().map(|x| x.expect("generators generate")).collect();

    let mut multiplier = Vec::with_capacity(order * order);
    for g in 0..order {
        for h in 0..order {
            let gh = group.mul_index(g, h);
            let tau_prime = w[g]
                .compose(&w[h])
                .ratio(&w[gh])
                .ok_or_else(|| GradedError::ActionNotHomomorphism(el[g].clone(), el[h].clone()))?;
            let t = Scalar::from_parts(tau[g * order + h], FractionalIdealR::unit(ring)).expect("unit");
            multiplier.push(t.div(&tau_prime));
        }
    }

    let components = w
        .iter()
        .map(|wg| {
            let blocks = wg.blocks.iter().enumerate().map(|(a, blk)| blk.left_span(&delta[a])).collect();
            Component::new(wg.block_perm.clone(), blocks)
        })
        .collect();
    GradedOrder::new(group, delta, components, Some(multiplier), scope, GradingKind::CrossedProduct)
}
