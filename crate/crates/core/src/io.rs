//! JSON descriptions of tiled orders, groups and graded orders.
//!
//! Gaussian integers are strings such as `"1+2i"`; ideals are
//! `{"gen": "5"}` or `{"factors": [["1+2i", 1], ["1-2i", -1]]}`. Block and
//! matrix indices are 0-based; permutations use 1-based cycle notation.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::base_rings::{BaseRing, FractionalIdealR, MaximalIdeal, Scalar};
use crate::graded::{
    construct_crossed_product, construct_from_pic, Cocycle, Component, CrossedProductDatum, GradedOrder, GradingKind,
    MonomialAction, MonomialBlock, Scope,
};
use crate::groups::{FiniteGroup, Perm};
use crate::pic::{construct_class_representative, picent_global, PicClass};
use crate::tiled::{radical, validate_order, ExponentMatrix, GlobalIdealMatrix, GlobalTiledOrder, IdealMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("invalid input at {path}: {message}")]
    Schema { path: String, message: String },
}

impl InputError {
    fn at(path: &str, message: impl ToString) -> Self {
        let path = if path.is_empty() { "$".to_string() } else { path.to_string() };
        InputError::Schema { path, message: message.to_string() }
    }
}

pub fn parse_json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))
}

fn join(path: &str, inner: &str) -> String {
    match (path, inner) {
        (p, ".") | (p, "") => p.to_string(),
        ("", i) | (".", i) => i.to_string(),
        (p, i) if i.starts_with('[') => format!("{p}{i}"),
        (p, i) => format!("{p}.{i}"),
    }
}

fn from_value<T: DeserializeOwned>(v: &Value, path: &str) -> Result<T, InputError> {
    serde_path_to_error::deserialize(v.clone())
        .map_err(|e| InputError::at(&join(path, &e.path().to_string()), e.inner()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealSpec {
    Gen { gen: String },
    Factors { factors: Vec<(String, i64)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntriesSpec {
    Exponents(Vec<Vec<i64>>),
    Ideals(Vec<Vec<IdealSpec>>),
}

/// A tiled order: local when `prime` is given (integer exponents), global
/// otherwise (ideal entries).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<BaseRing>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<EntriesSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hereditary_staircase: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gens: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairValue {
    pub g: String,
    pub h: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_perm: Option<Vec<usize>>,
    pub blocks: Vec<EntriesSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialSpec {
    pub perm: Vec<usize>,
    pub scalars: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_perm: Option<Vec<usize>>,
    pub blocks: Vec<MonomialSpec>,
}

/// A graded order. `kind` selects which of the remaining fields apply:
/// `bimodule`/`order` for `pic-construction`, `action`/`cocycle` for
/// `crossed-product`, `components`/`multiplier` for `explicit`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    pub delta: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<PairValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<BTreeMap<String, ComponentSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<Vec<PairValue>>,
}

/// A tiled order together with its place when it was given locally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedOrder {
    pub order: GlobalTiledOrder,
    pub place: Option<MaximalIdeal>,
}

fn ring_of(spec: &OrderSpec) -> BaseRing {
    match (spec.ring, &spec.prime) {
        (Some(r), _) => r,
        (None, Some(p)) if p.contains('i') => BaseRing::GaussianIntegers,
        _ => BaseRing::RationalIntegers,
    }
}

pub fn ideal_from_spec(ring: BaseRing, spec: &IdealSpec, path: &str) -> Result<FractionalIdealR, InputError> {
    match spec {
        IdealSpec::Gen { gen } => {
            let x = ring.parse_element(gen).map_err(|e| InputError::at(&join(path, "gen"), e))?;
            FractionalIdealR::principal(ring, &x).map_err(|e| InputError::at(&join(path, "gen"), e))
        }
        IdealSpec::Factors { factors } => {
            let mut out = Vec::with_capacity(factors.len());
            for (k, (g, e)) in factors.iter().enumerate() {
                let m =
                    MaximalIdeal::parse(ring, g).map_err(|err| InputError::at(&format!("{path}.factors[{k}]"), err))?;
                out.push((m, *e));
            }
            FractionalIdealR::from_factors(ring, out).map_err(|e| InputError::at(path, e))
        }
    }
}

fn ideal_matrix(
    ring: BaseRing,
    place: Option<&MaximalIdeal>,
    entries: &EntriesSpec,
    path: &str,
) -> Result<IdealMatrix, InputError> {
    match entries {
        EntriesSpec::Exponents(rows) => {
            let m = place.ok_or_else(|| InputError::at(path, "integer exponents need a local prime"))?;
            let e = crate::tiled::IntMatrix::from_rows(rows).map_err(|e| InputError::at(path, e))?;
            Ok(IdealMatrix::from_exponents(m, &e))
        }
        EntriesSpec::Ideals(rows) => {
            let mut out = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                let mut r = Vec::with_capacity(row.len());
                for (j, x) in row.iter().enumerate() {
                    r.push(ideal_from_spec(ring, x, &format!("{path}[{i}][{j}]"))?);
                }
                out.push(r);
            }
            IdealMatrix::from_rows(ring, out).map_err(|e| InputError::at(path, e))
        }
    }
}

pub fn build_order(spec: &OrderSpec, path: &str) -> Result<ParsedOrder, InputError> {
    let ring = ring_of(spec);
    let place = match &spec.prime {
        Some(p) => Some(MaximalIdeal::parse(ring, p).map_err(|e| InputError::at(&join(path, "prime"), e))?),
        None => None,
    };
    let order = match (&spec.hereditary_staircase, &spec.entries) {
        (Some(_), Some(_)) => return Err(InputError::at(path, "give either entries or hereditary_staircase")),
        (None, None) => return Err(InputError::at(path, "missing entries or hereditary_staircase")),
        (Some(blocks), None) => match (&place, &spec.ideal) {
            (Some(m), None) => GlobalTiledOrder::from_local(
                &ExponentMatrix::hereditary_staircase(blocks, m.clone())
                    .map_err(|e| InputError::at(&join(path, "hereditary_staircase"), e))?,
            ),
            (None, Some(i)) => {
                let ideal = ideal_from_spec(ring, i, &join(path, "ideal"))?;
                GlobalTiledOrder::hereditary_staircase(blocks, &ideal)
                    .map_err(|e| InputError::at(&join(path, "hereditary_staircase"), e))?
            }
            _ => return Err(InputError::at(path, "a staircase needs exactly one of prime or ideal")),
        },
        (None, Some(entries)) => {
            let epath = join(path, "entries");
            match (&place, entries) {
                (Some(m), EntriesSpec::Exponents(rows)) => GlobalTiledOrder::from_local(
                    &validate_order(rows, m.clone()).map_err(|e| InputError::at(&epath, e))?,
                ),
                (None, EntriesSpec::Ideals(_)) => GlobalTiledOrder::new(ideal_matrix(ring, None, entries, &epath)?)
                    .map_err(|e| InputError::at(&epath, e))?,
                (Some(_), _) => return Err(InputError::at(&epath, "a local order has integer exponent entries")),
                (None, _) => return Err(InputError::at(&epath, "integer exponents need a local prime")),
            }
        }
    };
    if let Some(n) = spec.n {
        if n != order.n() {
            return Err(InputError::at(&join(path, "n"), format!("expected {n}, entries have size {}", order.n())));
        }
    }
    Ok(ParsedOrder { order, place })
}

pub fn parse_order(v: &Value) -> Result<ParsedOrder, InputError> {
    build_order(&from_value(v, "")?, "")
}

pub fn build_group(spec: &GroupSpec, path: &str) -> Result<FiniteGroup, InputError> {
    match spec {
        GroupSpec { cyclic: Some(n), degree: None, gens: None, symmetric: None } => {
            let cycle = Perm::from_images((0..*n).map(|k| (k + 1) % n).collect());
            match cycle {
                Some(c) if *n > 0 => FiniteGroup::new(*n, vec![c]).map_err(|e| InputError::at(path, e)),
                _ => Err(InputError::at(&join(path, "cyclic"), "must be positive")),
            }
        }
        GroupSpec { symmetric: Some(d), degree: None, gens: None, cyclic: None } => {
            if (1..=7).contains(d) {
                Ok(FiniteGroup::symmetric(*d))
            } else {
                Err(InputError::at(&join(path, "symmetric"), "supported degrees are 1 to 7"))
            }
        }
        GroupSpec { degree: Some(d), gens: Some(g), cyclic: None, symmetric: None } => {
            let gens: Vec<&str> = g.iter().map(|s| s.as_str()).collect();
            FiniteGroup::parse(*d, &gens).map_err(|e| InputError::at(path, e))
        }
        _ => Err(InputError::at(path, "expected {degree, gens}, {cyclic} or {symmetric}")),
    }
}

struct DeltaData {
    blocks: Vec<GlobalTiledOrder>,
    place: Option<MaximalIdeal>,
}

fn build_delta(v: &Value) -> Result<DeltaData, InputError> {
    let specs: Vec<(OrderSpec, String)> = match v.get("components") {
        Some(list) => {
            let specs: Vec<OrderSpec> = from_value(list, "delta.components")?;
            specs.into_iter().enumerate().map(|(i, s)| (s, format!("delta.components[{i}]"))).collect()
        }
        None => vec![(from_value(v, "delta")?, "delta".to_string())],
    };
    if specs.is_empty() {
        return Err(InputError::at("delta.components", "at least one block is required"));
    }
    let mut blocks = Vec::with_capacity(specs.len());
    let mut place: Option<MaximalIdeal> = None;
    for (k, (s, path)) in specs.iter().enumerate() {
        let parsed = build_order(s, path)?;
        if k > 0 && (parsed.place != place || parsed.order.ring() != blocks_ring(&blocks)) {
            return Err(InputError::at(path, "blocks must share the base ring and the place"));
        }
        place = parsed.place;
        blocks.push(parsed.order);
    }
    Ok(DeltaData { blocks, place })
}

fn blocks_ring(blocks: &[GlobalTiledOrder]) -> BaseRing {
    blocks[0].ring()
}

fn parse_perm(degree: usize, s: &str, path: &str) -> Result<Perm, InputError> {
    Perm::parse(degree, s).map_err(|e| InputError::at(path, e))
}

fn element_index(group: &FiniteGroup, s: &str, path: &str) -> Result<usize, InputError> {
    let p = parse_perm(group.degree(), s, path)?;
    group.index_of(&p).ok_or_else(|| InputError::at(path, format!("{s} is not in the group")))
}

fn build_scope(spec: &GradedSpec, ring: BaseRing, place: &Option<MaximalIdeal>) -> Result<Scope, InputError> {
    match spec.scope.as_deref() {
        None => Ok(place.clone().map_or(Scope::Global, Scope::Local)),
        Some("global") => Ok(Scope::Global),
        Some(p) => Ok(Scope::Local(MaximalIdeal::parse(ring, p).map_err(|e| InputError::at("scope", e))?)),
    }
}

fn reject(present: bool, field: &str, kind: &str) -> Result<(), InputError> {
    if present {
        Err(InputError::at(field, format!("not used by kind {kind}")))
    } else {
        Ok(())
    }
}

pub fn build_graded(spec: &GradedSpec) -> Result<GradedOrder, InputError> {
    let delta = build_delta(&spec.delta)?;
    let ring = delta.blocks[0].ring();
    let scope = build_scope(spec, ring, &delta.place)?;
    let graded = |e: crate::graded::GradedError| InputError::at("", e);
    let kind = spec.kind.as_str();
    match kind {
        "pic-construction" => {
            reject(spec.group.is_some(), "group", kind)?;
            reject(spec.action.is_some() || spec.cocycle.is_some(), "action", kind)?;
            reject(spec.components.is_some() || spec.multiplier.is_some(), "components", kind)?;
            if delta.blocks.len() != 1 {
                return Err(InputError::at("delta", "the Picard construction needs a prime identity component"));
            }
            let d = &delta.blocks[0];
            let b = spec.bimodule.as_ref().ok_or_else(|| InputError::at("bimodule", "missing"))?;
            let x = build_bimodule(d, b, &delta.place, &scope)?;
            construct_from_pic(&x, spec.order, scope).map_err(graded)
        }
        "crossed-product" => {
            reject(spec.bimodule.is_some() || spec.order.is_some(), "bimodule", kind)?;
            reject(spec.components.is_some() || spec.multiplier.is_some(), "components", kind)?;
            let group = build_group(spec.group.as_ref().ok_or_else(|| InputError::at("group", "missing"))?, "group")?;
            let datum = build_datum(&group, &delta.blocks, spec)?;
            construct_crossed_product(delta.blocks, group, &datum, scope).map_err(graded)
        }
        "explicit" => {
            reject(spec.bimodule.is_some() || spec.order.is_some(), "bimodule", kind)?;
            reject(spec.action.is_some() || spec.cocycle.is_some(), "action", kind)?;
            let group = build_group(spec.group.as_ref().ok_or_else(|| InputError::at("group", "missing"))?, "group")?;
            let comps = spec.components.as_ref().ok_or_else(|| InputError::at("components", "missing"))?;
            let components = build_components(&group, &delta, comps)?;
            let multiplier = match &spec.multiplier {
                None => None,
                Some(entries) => Some(pair_table(
                    &group,
                    entries,
                    "multiplier",
                    |s, p| Scalar::parse(ring, s).map_err(|e| InputError::at(p, e)),
                    Scalar::one(ring),
                )?),
            };
            GradedOrder::new(group, delta.blocks, components, multiplier, scope, GradingKind::Explicit).map_err(graded)
        }
        other => Err(InputError::at(
            "kind",
            format!("unknown kind {other:?}; expected pic-construction, crossed-product or explicit"),
        )),
    }
}

pub fn parse_graded(v: &Value) -> Result<GradedOrder, InputError> {
    build_graded(&from_value(v, "")?)
}

fn build_bimodule(
    d: &GlobalTiledOrder,
    v: &Value,
    place: &Option<MaximalIdeal>,
    scope: &Scope,
) -> Result<GlobalIdealMatrix, InputError> {
    let ring = d.ring();
    let at = |e: &dyn std::fmt::Display| InputError::at("bimodule", e);
    if v.as_str() == Some("radical") {
        let m = match (place, scope) {
            (Some(m), _) | (None, Scope::Local(m)) => m,
            _ => return Err(InputError::at("bimodule", "\"radical\" needs a local prime or a local scope")),
        };
        let rad = radical(&d.localize(m));
        return GlobalIdealMatrix::new(d.clone(), IdealMatrix::from_exponents(m, rad.matrix())).map_err(|e| at(&e));
    }
    if let Some(entries) = v.get("entries") {
        let entries: EntriesSpec = from_value(entries, "bimodule.entries")?;
        let x = ideal_matrix(ring, place.as_ref(), &entries, "bimodule.entries")?;
        return GlobalIdealMatrix::new(d.clone(), x).map_err(|e| at(&e));
    }
    if let Some(class) = v.get("class") {
        let class: BTreeMap<String, i64> = from_value(class, "bimodule.class")?;
        let group = picent_global(d).map_err(|e| at(&e))?;
        let mut target = PicClass::zero(&group);
        for (g, k) in &class {
            let path = format!("bimodule.class.{g}");
            let m = MaximalIdeal::parse(ring, g).map_err(|e| InputError::at(&path, e))?;
            target = target.with(&m, *k).map_err(|e| InputError::at(&path, e))?;
        }
        return construct_class_representative(d, &target).map_err(|e| at(&e));
    }
    Err(InputError::at("bimodule", "expected \"radical\", {entries} or {class}"))
}

fn build_components(
    group: &FiniteGroup,
    delta: &DeltaData,
    comps: &BTreeMap<String, ComponentSpec>,
) -> Result<Vec<Component>, InputError> {
    let ring = delta.blocks[0].ring();
    let t = delta.blocks.len();
    let mut out: Vec<Option<Component>> = vec![None; group.order()];
    for (key, c) in comps {
        let path = format!("components.{key}");
        let g = element_index(group, key, &path)?;
        let block_perm = c.block_perm.clone().unwrap_or_else(|| (0..t).collect());
        if block_perm.len() != t || c.blocks.len() != t {
            return Err(InputError::at(&path, format!("expected {t} blocks")));
        }
        let mut blocks = Vec::with_capacity(t);
        for (a, e) in c.blocks.iter().enumerate() {
            blocks.push(ideal_matrix(ring, delta.place.as_ref(), e, &format!("{path}.blocks[{a}]"))?);
        }
        if out[g].replace(Component::new(block_perm, blocks)).is_some() {
            return Err(InputError::at(&path, "element listed twice"));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| InputError::at("components", format!("missing {}", group.elements()[i]))))
        .collect()
}

/// `|G|²` values indexed by `(g, h)`, defaulting to `one`.
fn pair_table<T: Clone>(
    group: &FiniteGroup,
    entries: &[PairValue],
    field: &str,
    parse: impl Fn(&str, &str) -> Result<T, InputError>,
    one: T,
) -> Result<Vec<T>, InputError> {
    let n = group.order();
    let mut out = vec![one; n * n];
    for (k, e) in entries.iter().enumerate() {
        let path = format!("{field}[{k}]");
        let g = element_index(group, &e.g, &format!("{path}.g"))?;
        let h = element_index(group, &e.h, &format!("{path}.h"))?;
        out[g * n + h] = parse(&e.value, &format!("{path}.value"))?;
    }
    Ok(out)
}

fn build_datum(
    group: &FiniteGroup,
    delta: &[GlobalTiledOrder],
    spec: &GradedSpec,
) -> Result<CrossedProductDatum, InputError> {
    let ring = delta[0].ring();
    let mut datum = match spec.action.as_ref().map(|a| (a, a.as_str())) {
        None | Some((_, Some("trivial"))) => CrossedProductDatum::trivial(group, delta),
        Some((_, Some("permute-blocks"))) => CrossedProductDatum::permuting_blocks(group, delta),
        Some((_, Some(other))) => {
            return Err(InputError::at("action", format!("unknown action {other:?}")));
        }
        Some((v, None)) => {
            let map: BTreeMap<String, ActionSpec> = from_value(v, "action")?;
            let mut actions: Vec<Option<MonomialAction>> = vec![None; group.gens().len()];
            for (key, a) in &map {
                let path = format!("action.{key}");
                let p = parse_perm(group.degree(), key, &path)?;
                let k = group
                    .gens()
                    .iter()
                    .position(|g| *g == p)
                    .ok_or_else(|| InputError::at(&path, "not one of the group generators"))?;
                let mut blocks = Vec::with_capacity(a.blocks.len());
                for (b, m) in a.blocks.iter().enumerate() {
                    let mut scalars = Vec::with_capacity(m.scalars.len());
                    for (j, s) in m.scalars.iter().enumerate() {
                        let sp = format!("{path}.blocks[{b}].scalars[{j}]");
                        scalars.push(Scalar::parse(ring, s).map_err(|e| InputError::at(&sp, e))?);
                    }
                    blocks.push(MonomialBlock { perm: m.perm.clone(), scalars });
                }
                let block_perm = a.block_perm.clone().unwrap_or_else(|| (0..delta.len()).collect());
                actions[k] = Some(MonomialAction { block_perm, blocks });
            }
            let generator_actions = actions
                .into_iter()
                .enumerate()
                .map(|(k, a)| {
                    a.ok_or_else(|| InputError::at("action", format!("missing generator {}", group.gens()[k])))
                })
                .collect::<Result<_, _>>()?;
            CrossedProductDatum { generator_actions, cocycle: Cocycle::Trivial }
        }
    };
    if let Some(entries) = &spec.cocycle {
        let mut table = Vec::with_capacity(entries.len());
        for (k, e) in entries.iter().enumerate() {
            let path = format!("cocycle[{k}]");
            let g = parse_perm(group.degree(), &e.g, &format!("{path}.g"))?;
            let h = parse_perm(group.degree(), &e.h, &format!("{path}.h"))?;
            let v = ring.parse_element(&e.value).map_err(|err| InputError::at(&format!("{path}.value"), err))?;
            table.push((g, h, v));
        }
        datum.cocycle = Cocycle::Table(table);
    }
    Ok(datum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn local_and_global_orders() {
        let local = parse_order(&json!({"prime": "2", "entries": [[0, 0], [1, 0]]})).unwrap();
        assert_eq!(local.place.unwrap().to_string(), "(2)");
        let global = parse_order(&json!({
            "ring": "Z[i]",
            "n": 2,
            "entries": [[{"gen": "1"}, {"gen": "1"}], [{"factors": [["1+2i", 1]]}, {"gen": "1"}]]
        }))
        .unwrap();
        assert_eq!(global.place, None);
        assert_eq!(global.order.support().len(), 1);
        let stair = parse_order(&json!({"ring": "Z", "hereditary_staircase": [1, 1], "ideal": {"gen": "6"}})).unwrap();
        assert_eq!(stair.order.support().len(), 2);
    }

    #[test]
    fn errors_carry_paths() {
        let e = parse_order(&json!({"prime": "2", "entries": [[0, 0], [-1, 0]]})).unwrap_err();
        assert!(matches!(e, InputError::Schema { ref path, .. } if path == "entries"), "{e}");
        let e = parse_order(&json!({"prime": "4", "entries": [[0]]})).unwrap_err();
        assert!(matches!(e, InputError::Schema { ref path, .. } if path == "prime"), "{e}");
        let e = parse_order(&json!({"prime": "2", "entries": [[0]], "extra": 1})).unwrap_err();
        assert!(matches!(e, InputError::Schema { .. }));
        let e = parse_graded(&json!({"kind": "explicit", "delta": {"prime": "2", "entries": [[0]]}})).unwrap_err();
        assert!(matches!(e, InputError::Schema { ref path, .. } if path == "group"), "{e}");
        assert!(matches!(parse_json("{"), Err(InputError::Json(_))));
    }

    #[test]
    fn kinds_agree_on_group_rings() {
        let delta = json!({"ring": "Z", "entries": [[{"gen": "1"}]]});
        let cp = parse_graded(&json!({"kind": "crossed-product", "group": {"cyclic": 2}, "delta": delta})).unwrap();
        let explicit = parse_graded(&json!({
            "kind": "explicit",
            "group": {"degree": 2, "gens": ["(1 2)"]},
            "delta": delta,
            "components": {"()": {"blocks": [[[{"gen": "1"}]]]}, "(1 2)": {"blocks": [[[{"gen": "1"}]]]}}
        }))
        .unwrap();
        assert_eq!(cp.components(), explicit.components());
        assert_eq!(cp.multiplier(1, 1), explicit.multiplier(1, 1));
    }

    #[test]
    fn pic_construction_from_radical_and_class() {
        let l = parse_graded(&json!({
            "kind": "pic-construction",
            "delta": {"prime": "2", "hereditary_staircase": [2, 1]},
            "bimodule": "radical"
        }))
        .unwrap();
        assert_eq!(l.group().order(), 2);
        assert_eq!(l.scope().to_string(), Scope::Local(l.delta()[0].support().into_iter().next().unwrap()).to_string());
        let l = parse_graded(&json!({
            "kind": "pic-construction",
            "delta": {"ring": "Z[i]", "hereditary_staircase": [1, 1, 1, 1, 1], "ideal": {"gen": "5"}},
            "bimodule": {"class": {"1-2i": 1}}
        }))
        .unwrap();
        assert_eq!(l.group().order(), 5);
    }

    #[test]
    fn monomial_actions() {
        let l = parse_graded(&json!({
            "kind": "crossed-product",
            "group": {"cyclic": 2},
            "delta": {"prime": "2", "hereditary_staircase": [1, 1]},
            "action": {"(1 2)": {"blocks": [{"perm": [1, 0], "scalars": ["2", "1"]}]}}
        }))
        .unwrap();
        assert_eq!(l.multiplier(1, 1).to_string(), "1/2");
        let e = parse_graded(&json!({
            "kind": "crossed-product",
            "group": {"cyclic": 2},
            "delta": {"prime": "2", "hereditary_staircase": [1, 1]},
            "action": {"(1 2)": {"blocks": [{"perm": [1, 0], "scalars": ["1", "1"]}]}}
        }))
        .unwrap_err();
        assert!(e.to_string().contains("normalize"), "{e}");
    }
}
