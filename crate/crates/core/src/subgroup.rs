//! Subgroup handles and the set-level operations on them.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{CoreError, Result};
use crate::group::{ElementId, FiniteGroup};

/// A subgroup stored as its sorted member ids plus a generating list.
///
/// Equality, hashing and ordering look at the member set only. The
/// ordering is `(order, members)` so sorted lists run from small to large.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent_tag: u64,
    members: Vec<ElementId>,
    bits: FixedBitSet,
    generators: Vec<ElementId>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

/// Membership bitset over the whole group.
pub(crate) fn bitset(g: &FiniteGroup, ids: impl IntoIterator<Item = ElementId>) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(g.order());
    for i in ids {
        b.insert(i as usize);
    }
    b
}

/// The set `{a·b : a ∈ left, b ∈ right}`.
pub fn product_set(g: &FiniteGroup, left: &[ElementId], right: &[ElementId]) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.order());
    for &a in left {
        for &b in right {
            out.insert(g.mul(a, b) as usize);
        }
    }
    out
}

/// `x·S` for a set given as a bitset.
pub fn left_translate(g: &FiniteGroup, x: ElementId, set: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.order());
    for s in set.ones() {
        out.insert(g.mul(x, s as ElementId) as usize);
    }
    out
}

/// Whether a set is closed under multiplication (finite: hence a subgroup
/// once nonempty).
pub fn is_mul_closed(g: &FiniteGroup, set: &FixedBitSet) -> bool {
    let ids: Vec<ElementId> = set.ones().map(|i| i as ElementId).collect();
    !ids.is_empty()
        && ids
            .iter()
            .all(|&a| ids.iter().all(|&b| set.contains(g.mul(a, b) as usize)))
}

impl Subgroup {
    fn from_bits(g: &FiniteGroup, bits: FixedBitSet, generators: Vec<ElementId>) -> Subgroup {
        let members = bits.ones().map(|i| i as ElementId).collect();
        Subgroup {
            parent_tag: g.tag(),
            members,
            bits,
            generators,
        }
    }

    /// Wraps a member set already known to be a subgroup and picks a
    /// generating list greedily in id order.
    pub(crate) fn from_members_unchecked(g: &FiniteGroup, bits: FixedBitSet) -> Subgroup {
        let mut current = Subgroup::trivial(g);
        for m in bits.ones() {
            if !current.bits.contains(m) {
                current = current.extend(g, &[m as ElementId]);
            }
        }
        debug_assert_eq!(current.bits, bits);
        current
    }

    /// Wraps a member set after verifying closure.
    pub fn from_member_set(g: &FiniteGroup, bits: FixedBitSet) -> Result<Subgroup> {
        if !bits.contains(0) || !is_mul_closed(g, &bits) {
            return Err(CoreError::NotASubgroup);
        }
        Ok(Subgroup::from_members_unchecked(g, bits))
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        Subgroup::from_bits(g, bitset(g, [0]), Vec::new())
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup::from_bits(g, bitset(g, g.elements()), g.generators().to_vec())
    }

    /// `⟨self, extra⟩`, breadth-first from the existing members.
    pub fn extend(&self, g: &FiniteGroup, extra: &[ElementId]) -> Subgroup {
        let mut gens = self.generators.clone();
        for &e in extra {
            if !gens.contains(&e) && e != 0 {
                gens.push(e);
            }
        }
        let mut bits = self.bits.clone();
        let mut queue: Vec<ElementId> = self.members.clone();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in &gens {
                let y = g.mul(x, s);
                if !bits.put(y as usize) {
                    queue.push(y);
                }
            }
        }
        Subgroup::from_bits(g, bits, gens)
    }

    pub fn parent_tag(&self) -> u64 {
        self.parent_tag
    }

    /// Fails with `NotASubgroup` if the handle belongs to another group.
    pub fn check(&self, g: &FiniteGroup) -> Result<()> {
        if self.parent_tag == g.tag() && self.bits.len() == g.order() {
            Ok(())
        } else {
            Err(CoreError::NotASubgroup)
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.bits.is_subset(&other.bits)
    }

    pub fn is_proper_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() < other.order() && self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subgroup::from_members_unchecked(g, bits)
    }

    pub fn join(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        if other.is_subgroup_of(self) {
            return self.clone();
        }
        self.extend(g, other.generators())
    }

    /// `x·self·x⁻¹`.
    pub fn conjugate(&self, g: &FiniteGroup, x: ElementId) -> Subgroup {
        let bits = bitset(g, self.members.iter().map(|&m| g.conj(x, m)));
        let gens = self.generators.iter().map(|&m| g.conj(x, m)).collect();
        Subgroup::from_bits(g, bits, gens)
    }

    /// Whether every element of `by` (checked on its generators) normalises self.
    pub fn is_normalized_by(&self, g: &FiniteGroup, by: &[ElementId]) -> bool {
        by.iter().all(|&x| {
            self.generators
                .iter()
                .all(|&m| self.contains(g.conj(x, m)))
        })
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        self.is_normalized_by(g, g.generators())
    }

    /// Elements as permutations in cycle notation.
    pub fn generator_strings(&self, g: &FiniteGroup) -> Vec<String> {
        self.generators
            .iter()
            .map(|&x| g.permutation(x).to_string())
            .collect()
    }
}

impl FiniteGroup {
    /// The smallest subgroup containing `seed`; its generators are the seed.
    pub fn closure(&self, seed: &[ElementId]) -> Result<Subgroup> {
        for &s in seed {
            self.check_id(s)?;
        }
        Ok(Subgroup::trivial(self).extend(self, seed))
    }

    /// `⟨gens, H ∩ O⟩`, the reduced hull used by the factor-type predicates.
    pub fn reduced_hull(&self, s: &[ElementId], h: &Subgroup, o: &Subgroup) -> Subgroup {
        h.intersection(self, o).extend(self, s)
    }
}
