//! Finite permutation groups: closure, Sylow subgroups, conjugation and
//! actions on finite sets.
//!
//! Products follow the left-to-right convention: `a * b` applies `a` first,
//! so points are acted on from the right and `x^(ab) = (x^a)^b`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::base_rings::{factor_integer, is_rational_prime};

/// Largest group order the exhaustive algorithms accept.
pub const MAX_GROUP_ORDER: usize = 10_080;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("{0} is not a prime")]
    NotPrime(i64),
    #[error("group order exceeds the cap of {MAX_GROUP_ORDER}")]
    TooLarge,
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("permutation acts on {found} points, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{0} is not an element of the group")]
    NotInGroup(Perm),
    #[error("action axiom fails for ({g}, {h}) at point {point}")]
    ActionAxiom { g: Perm, h: Perm, point: usize },
    #[error("identity moves point {0}")]
    IdentityMoves(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree).collect() }
    }

    /// From 0-based images; `None` if `images` is not a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Perm { images })
    }

    /// From 1-based cycles, e.g. `&[&[1, 2, 3], &[4, 5]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > degree || b == 0 || b > degree {
                    return None;
                }
                images[a - 1] = b - 1;
            }
        }
        Perm::from_images(images)
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
    pub fn parse(degree: usize, s: &str) -> Result<Self, GroupError> {
        let err = || GroupError::Parse(s.to_string());
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(err)?;
            let close = body.find(')').ok_or_else(err)?;
            let pts = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| err()))
                .collect::<Result<Vec<_>, _>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = body[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(degree, &refs).ok_or_else(err)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a 0-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x] = k;
        }
        Perm { images: inv }
    }

    /// `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Perm) -> Self {
        &(&g.inverse() * self) * g
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut x = self.clone();
        while !x.is_identity() {
            x = &x * self;
            k += 1;
        }
        k
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Perm::identity(self.degree()), |acc, _| &acc * self)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl Mul for &Perm {
    type Output = Perm;
    /// `self` first, then `rhs`.
    fn mul(self, rhs: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&x| rhs.images[x]).collect() }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Closure of `gens` under composition, sorted.
fn close(degree: usize, gens: &[Perm]) -> Result<Vec<Perm>, GroupError> {
    let id = Perm::identity(degree);
    let mut seen: BTreeSet<Perm> = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                if seen.len() > MAX_GROUP_ORDER {
                    return Err(GroupError::TooLarge);
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// A finite permutation group with its full element list cached.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(degree {}, order {}, gens {:?})", self.degree, self.order(), self.gens)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self, GroupError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let elements = close(degree, &gens)?;
        let index = elements.iter().cloned().enumerate().map(|(k, g)| (g, k)).collect();
        Ok(FiniteGroup { degree, gens, elements, index })
    }

    pub fn parse(degree: usize, gens: &[&str]) -> Result<Self, GroupError> {
        let gens = gens.iter().map(|s| Perm::parse(degree, s)).collect::<Result<_, _>>()?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, vec![]).expect("trivial group")
    }

    /// `C_n = ⟨(1 2 … n)⟩`.
    pub fn cyclic(n: usize) -> Self {
        let images = (0..n).map(|k| (k + 1) % n).collect();
        Self::new(n, vec![Perm::from_images(images).expect("n-cycle")]).expect("small group")
    }

    pub fn symmetric(d: usize) -> Self {
        let mut gens = Vec::new();
        if d >= 2 {
            gens.push(Perm::from_cycles(d, &[&[1, 2]]).unwrap());
        }
        if d >= 3 {
            let cycle: Vec<usize> = (1..=d).collect();
            gens.push(Perm::from_cycles(d, &[&cycle]).unwrap());
        }
        Self::new(d, gens).expect("symmetric group within cap")
    }

    /// The dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|k| (n - k) % n).collect();
        Self::new(n, vec![Perm::from_images(rot).unwrap(), Perm::from_images(refl).unwrap()]).expect("small group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&self.identity()).expect("identity present")
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.index[&(&self.elements[a] * &self.elements[b])]
    }

    pub fn inv_index(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { degree: self.degree, gens: self.gens.clone(), elements: self.elements.clone() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::trivial(self.degree)
    }

    /// Subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<Subgroup, GroupError> {
        for g in &gens {
            if !self.contains(g) {
                return Err(GroupError::NotInGroup(g.clone()));
            }
        }
        Subgroup::generated(self.degree, gens)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elements: Vec<Perm> =
            self.elements.iter().filter(|g| h.conjugate(g).elements == h.elements).cloned().collect();
        Subgroup::from_sorted_elements(self.degree, elements)
    }

    pub fn prime_divisors(&self) -> Vec<i64> {
        factor_integer(self.order() as i64).into_iter().map(|(p, _)| p).collect()
    }

    /// A Sylow `p`-subgroup. Among all Sylow `p`-subgroups the one with the
    /// lexicographically least sorted element list is returned.
    pub fn sylow_subgroup(&self, p: i64) -> Result<Subgroup, GroupError> {
        let all = self.all_sylow_subgroups(p)?;
        Ok(all.into_iter().next().expect("Sylow subgroups exist"))
    }

    /// Every Sylow `p`-subgroup, sorted by element list.
    pub fn all_sylow_subgroups(&self, p: i64) -> Result<Vec<Subgroup>, GroupError> {
        let one = self.some_sylow_subgroup(p)?;
        let set: BTreeSet<Vec<Perm>> = self.elements.iter().map(|g| one.conjugate(g).elements).collect();
        Ok(set
            .into_iter()
            .map(|els| {
                let gens = minimal_gens(self.degree, &els);
                Subgroup { degree: self.degree, gens, elements: els }
            })
            .collect())
    }

    /// Builds a Sylow subgroup by repeatedly adjoining an element of order
    /// `p` modulo the current subgroup, found in its normalizer.
    fn some_sylow_subgroup(&self, p: i64) -> Result<Subgroup, GroupError> {
        if !is_rational_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let p = p as usize;
        let mut target = 1;
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
            target *= p;
        }
        let mut h = self.trivial_subgroup();
        while h.order() < target {
            let norm = self.normalizer(&h);
            let x = norm
                .elements
                .iter()
                .find(|x| !h.contains(x) && h.contains(&x.pow(p)))
                .cloned()
                .expect("p divides [N(H):H] while H is not Sylow");
            let mut gens = h.gens.clone();
            gens.push(x);
            h = Subgroup::generated(self.degree, gens)?;
        }
        Ok(h)
    }
}

fn minimal_gens(degree: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut span = vec![Perm::identity(degree)];
    for x in elements {
        if span.binary_search(x).is_err() {
            gens.push(x.clone());
            span = close(degree, &gens).expect("within a finite group");
        }
    }
    gens
}

/// A subgroup of a permutation group, stored by generators and sorted elements.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order(), self.gens)
    }
}

impl Subgroup {
    pub fn trivial(degree: usize) -> Self {
        Subgroup { degree, gens: vec![], elements: vec![Perm::identity(degree)] }
    }

    pub fn generated(degree: usize, gens: Vec<Perm>) -> Result<Self, GroupError> {
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let elements = close(degree, &gens)?;
        Ok(Subgroup { degree, gens, elements })
    }

    fn from_sorted_elements(degree: usize, elements: Vec<Perm>) -> Self {
        let gens = minimal_gens(degree, &elements);
        Subgroup { degree, gens, elements }
    }

    /// From an arbitrary element list; `None` if it is not closed.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Option<Self> {
        elements.sort();
        elements.dedup();
        let s = Self::from_sorted_elements(degree, elements);
        (close(degree, &s.gens).ok()? == s.elements).then_some(s)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// `g⁻¹ H g`.
    pub fn conjugate(&self, g: &Perm) -> Subgroup {
        let mut elements: Vec<Perm> = self.elements.iter().map(|x| x.conjugate_by(g)).collect();
        elements.sort();
        let gens = self.gens.iter().map(|x| x.conjugate_by(g)).collect();
        Subgroup { degree: self.degree, gens, elements }
    }

    pub fn as_group(&self) -> FiniteGroup {
        FiniteGroup::new(self.degree, self.gens.clone()).expect("subgroup of a capped group")
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }
}

/// A right action of a finite group on the points `0..set_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    set_size: usize,
    /// `table[g][x]` is the image of point `x` under element `g`.
    table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub representative: usize,
    pub stabilizer: Subgroup,
}

impl GroupAction {
    /// Checks the action axioms: the identity fixes every point and
    /// `x^(gh) = (x^g)^h`.
    pub fn new(group: FiniteGroup, set_size: usize, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        assert_eq!(table.len(), group.order());
        let e = group.identity_index();
        if let Some(x) = (0..set_size).find(|&x| table[e][x] != x) {
            return Err(GroupError::IdentityMoves(x));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = group.mul_index(a, b);
                for x in 0..set_size {
                    if table[ab][x] != table[b][table[a][x]] {
                        return Err(GroupError::ActionAxiom {
                            g: group.elements[a].clone(),
                            h: group.elements[b].clone(),
                            point: x,
                        });
                    }
                }
            }
        }
        Ok(GroupAction { group, set_size, table })
    }

    pub fn from_fn(group: FiniteGroup, set_size: usize, f: impl Fn(&Perm, usize) -> usize) -> Result<Self, GroupError> {
        let table = group.elements.iter().map(|g| (0..set_size).map(|x| f(g, x)).collect()).collect();
        Self::new(group, set_size, table)
    }

    /// The permutation action of `group` on its own points.
    pub fn natural(group: FiniteGroup) -> Self {
        let d = group.degree();
        Self::from_fn(group, d, |g, x| g.apply(x)).expect("natural action")
    }

    pub fn trivial(group: FiniteGroup, set_size: usize) -> Self {
        Self::from_fn(group, set_size, |_, x| x).expect("trivial action")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn act(&self, x: usize, g: &Perm) -> usize {
        self.table[self.group.index_of(g).expect("element of the acting group")][x]
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let els = self
            .group
            .elements
            .iter()
            .enumerate()
            .filter(|(k, _)| self.table[*k][x] == x)
            .map(|(_, g)| g.clone())
            .collect();
        Subgroup::from_sorted_elements(self.group.degree, els)
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.table.iter().map(|row| row[x]).collect();
        set.into_iter().collect()
    }

    /// Orbits in order of their least point; each representative is that
    /// least point.
    pub fn orbits_and_stabilizers(&self) -> Vec<Orbit> {
        let mut seen = vec![false; self.set_size];
        let mut out = Vec::new();
        for x in 0..self.set_size {
            if seen[x] {
                continue;
            }
            let points = self.orbit_of(x);
            for &y in &points {
                seen[y] = true;
            }
            out.push(Orbit { points, representative: x, stabilizer: self.stabilizer(x) });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, s: &str) -> Perm {
        Perm::parse(d, s).unwrap()
    }

    #[test]
    fn cycle_notation_round_trip() {
        let g = p(5, "(1 2 3)(4 5)");
        assert_eq!(g.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p(3, "()").to_string(), "()");
        assert!(Perm::parse(3, "(1 4)").is_err());
        assert!(Perm::parse(3, "(1 2").is_err());
    }

    #[test]
    fn product_is_left_to_right() {
        let a = p(3, "(1 2)");
        let b = p(3, "(2 3)");
        // 1 -a-> 2 -b-> 3
        assert_eq!((&a * &b).apply(0), 2);
    }

    #[test]
    fn group_orders() {
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::cyclic(5).order(), 5);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::trivial(3).order(), 1);
    }

    #[test]
    fn order_cap_enforced() {
        let gens = vec![p(8, "(1 2)"), p(8, "(1 2 3 4 5 6 7 8)")];
        assert_eq!(FiniteGroup::new(8, gens).map(|g| g.order()), Err(GroupError::TooLarge));
    }

    #[test]
    fn sylow_examples() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.sylow_subgroup(2).unwrap().order(), 2);
        assert_eq!(s3.sylow_subgroup(3).unwrap().order(), 3);
        let s4 = FiniteGroup::symmetric(4);
        assert_eq!(s4.sylow_subgroup(2).unwrap().order(), 8);
        let c5 = FiniteGroup::cyclic(5);
        assert!(c5.sylow_subgroup(2).unwrap().is_trivial());
        assert_eq!(c5.sylow_subgroup(5).unwrap().elements(), c5.elements());
        assert_eq!(s3.sylow_subgroup(4), Err(GroupError::NotPrime(4)));
    }

    #[test]
    fn sylow_counts() {
        assert_eq!(FiniteGroup::symmetric(3).all_sylow_subgroups(2).unwrap().len(), 3);
        assert_eq!(FiniteGroup::symmetric(4).all_sylow_subgroups(2).unwrap().len(), 3);
        assert_eq!(FiniteGroup::symmetric(4).all_sylow_subgroups(3).unwrap().len(), 4);
    }

    #[test]
    fn conjugate_transposition() {
        let s3 = FiniteGroup::symmetric(3);
        let h = s3.subgroup(vec![p(3, "(1 2)")]).unwrap();
        let c = h.conjugate(&p(3, "(2 3)"));
        assert_eq!(c, s3.subgroup(vec![p(3, "(1 3)")]).unwrap());
        assert_eq!(h.conjugate(&s3.identity()), h);
        let a3 = s3.subgroup(vec![p(3, "(1 2 3)")]).unwrap();
        for g in s3.elements() {
            assert_eq!(a3.conjugate(g).elements(), a3.elements());
        }
    }

    #[test]
    fn orbits() {
        let s4 = FiniteGroup::symmetric(4);
        let o = GroupAction::natural(s4).orbits_and_stabilizers();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].stabilizer.order(), 6);

        let g = FiniteGroup::symmetric(3);
        let o = GroupAction::trivial(g, 4).orbits_and_stabilizers();
        assert_eq!(o.len(), 4);
        assert!(o.iter().all(|x| x.stabilizer.order() == 6));

        let c2 = FiniteGroup::parse(3, &["(1 2)"]).unwrap();
        let o = GroupAction::natural(c2).orbits_and_stabilizers();
        assert_eq!(o.iter().map(|x| x.points.clone()).collect::<Vec<_>>(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn left_action_is_rejected() {
        // x ↦ x^(g⁻¹) is a left action, not a right action
        let s3 = FiniteGroup::symmetric(3);
        let err = GroupAction::from_fn(s3, 3, |g, x| g.inverse().apply(x)).unwrap_err();
        assert!(matches!(err, GroupError::ActionAxiom { .. }));
    }
}
