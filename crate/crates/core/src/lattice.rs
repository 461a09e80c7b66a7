//! Subgroup lattices, conjugacy classes, normal subgroups, and the
//! core / centralizer / normalizer constructions.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::group::{ElementId, FiniteGroup};
use crate::subgroup::{bitset, Subgroup};

/// Subgroups (optionally only those above a floor) with their covering
/// relation. Nodes are sorted by `(order, members)`.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    parent_tag: u64,
    floor: Option<Subgroup>,
    nodes: Vec<Subgroup>,
    covers: Vec<Vec<usize>>,
    lookup: HashMap<Vec<ElementId>, usize>,
}

impl SubgroupLattice {
    fn build(g: &FiniteGroup, floor: Option<Subgroup>, mut nodes: Vec<Subgroup>) -> Self {
        nodes.sort();
        nodes.dedup();
        let covers = covering_relation(&nodes);
        let lookup = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.members().to_vec(), i))
            .collect();
        SubgroupLattice {
            parent_tag: g.tag(),
            floor,
            nodes,
            covers,
            lookup,
        }
    }

    pub fn parent_tag(&self) -> u64 {
        self.parent_tag
    }

    pub fn floor(&self) -> Option<&Subgroup> {
        self.floor.as_ref()
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `covers()[i]` lists the nodes that cover node `i`.
    pub fn covers(&self) -> &[Vec<usize>] {
        &self.covers
    }

    pub fn index_of(&self, k: &Subgroup) -> Option<usize> {
        self.lookup.get(k.members()).copied()
    }

    /// Number of covering pairs.
    pub fn edge_count(&self) -> usize {
        self.covers.iter().map(Vec::len).sum()
    }
}

fn covering_relation(nodes: &[Subgroup]) -> Vec<Vec<usize>> {
    let mut covers = vec![Vec::new(); nodes.len()];
    for i in 0..nodes.len() {
        let mut accepted: Vec<usize> = Vec::new();
        for j in i + 1..nodes.len() {
            if !nodes[i].is_proper_subgroup_of(&nodes[j]) {
                continue;
            }
            if accepted
                .iter()
                .all(|&c| !nodes[c].is_proper_subgroup_of(&nodes[j]))
            {
                accepted.push(j);
            }
        }
        covers[i] = accepted;
    }
    covers
}

/// All subgroups `K` with `floor ≤ K ≤ G` (or all subgroups without a floor).
///
/// The search repeatedly extends known subgroups by one cyclic subgroup at a
/// time; every subgroup above the floor is reached along a chain of such
/// extensions.
pub fn subgroup_lattice(g: &FiniteGroup, floor: Option<&Subgroup>) -> Result<Arc<SubgroupLattice>> {
    match floor {
        None => g.lattice(),
        Some(f) => {
            f.check(g)?;
            if let Some(Ok(full)) = g.memo.lattice.get() {
                let nodes = full
                    .nodes()
                    .iter()
                    .filter(|k| f.is_subgroup_of(k))
                    .cloned()
                    .collect();
                return Ok(Arc::new(SubgroupLattice::build(g, Some(f.clone()), nodes)));
            }
            check_lattice_cap(g)?;
            let nodes = extend_from(g, f);
            Ok(Arc::new(SubgroupLattice::build(g, Some(f.clone()), nodes)))
        }
    }
}

fn check_lattice_cap(g: &FiniteGroup) -> Result<()> {
    if g.order() > g.caps().lattice {
        Err(CoreError::LatticeCapExceeded {
            order: g.order(),
            cap: g.caps().lattice,
        })
    } else {
        Ok(())
    }
}

fn extend_from(g: &FiniteGroup, floor: &Subgroup) -> Vec<Subgroup> {
    let cyclic = g.cyclic_subgroups();
    let mut seen: HashMap<Vec<ElementId>, ()> = HashMap::new();
    seen.insert(floor.members().to_vec(), ());
    let mut found = vec![floor.clone()];
    let mut head = 0;
    while head < found.len() {
        let k = found[head].clone();
        head += 1;
        for c in cyclic.iter() {
            let x = c.generators().first().copied().unwrap_or(0);
            if k.contains(x) {
                continue;
            }
            let j = k.extend(g, &[x]);
            if seen.insert(j.members().to_vec(), ()).is_none() {
                found.push(j);
            }
        }
    }
    found
}

impl FiniteGroup {
    /// The full subgroup lattice, computed once per group.
    pub fn lattice(&self) -> Result<Arc<SubgroupLattice>> {
        self.memo
            .lattice
            .get_or_init(|| {
                check_lattice_cap(self)?;
                let nodes = extend_from(self, &Subgroup::trivial(self));
                Ok(Arc::new(SubgroupLattice::build(self, None, nodes)))
            })
            .clone()
    }

    /// Distinct cyclic subgroups, each generated by its least-id generator,
    /// sorted by `(order, members)`.
    pub fn cyclic_subgroups(&self) -> Arc<Vec<Subgroup>> {
        self.memo
            .cyclic
            .get_or_init(|| {
                let mut seen = FixedBitSet::with_capacity(self.order());
                let mut out = Vec::new();
                let mut keys: HashMap<Vec<ElementId>, ()> = HashMap::new();
                for x in self.elements() {
                    if seen.contains(x as usize) {
                        continue;
                    }
                    let c = Subgroup::trivial(self).extend(self, &[x]);
                    // every generator of <x> yields the same subgroup
                    let n = c.order();
                    let mut y = x;
                    for e in 1..=n {
                        if gcd(e, n) == 1 {
                            seen.insert(y as usize);
                        }
                        y = self.mul(y, x);
                    }
                    if keys.insert(c.members().to_vec(), ()).is_none() {
                        out.push(c);
                    }
                }
                out.sort();
                Arc::new(out)
            })
            .clone()
    }

    /// Conjugacy classes, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Arc<Vec<Vec<ElementId>>> {
        self.memo
            .classes
            .get_or_init(|| {
                let mut seen = FixedBitSet::with_capacity(self.order());
                let mut classes = Vec::new();
                for x in self.elements() {
                    if seen.contains(x as usize) {
                        continue;
                    }
                    let mut class = vec![x];
                    seen.insert(x as usize);
                    let mut head = 0;
                    while head < class.len() {
                        let y = class[head];
                        head += 1;
                        for &s in self.generators() {
                            let z = self.conj(s, y);
                            if !seen.put(z as usize) {
                                class.push(z);
                            }
                        }
                    }
                    class.sort_unstable();
                    classes.push(class);
                }
                Arc::new(classes)
            })
            .clone()
    }

    /// All normal subgroups, ascending by `(order, members)`.
    ///
    /// Built as joins of normal closures of conjugacy classes, so it needs no
    /// subgroup lattice and works up to the order cap.
    pub fn normal_subgroups(&self) -> Result<Arc<Vec<Subgroup>>> {
        self.memo
            .normals
            .get_or_init(|| {
                let mut lookup: HashMap<Vec<ElementId>, ()> = HashMap::new();
                let mut closures: Vec<Subgroup> = Vec::new();
                for class in self.conjugacy_classes().iter() {
                    let n = self.normal_closure(class);
                    if lookup.insert(n.members().to_vec(), ()).is_none() {
                        closures.push(n);
                    }
                }
                let trivial = Subgroup::trivial(self);
                if lookup.insert(trivial.members().to_vec(), ()).is_none() {
                    closures.push(trivial);
                }
                let mut all = closures.clone();
                let mut head = 0;
                while head < all.len() {
                    let a = all[head].clone();
                    head += 1;
                    for b in &closures {
                        if b.is_subgroup_of(&a) {
                            continue;
                        }
                        let j = a.join(self, b);
                        if lookup.insert(j.members().to_vec(), ()).is_none() {
                            all.push(j);
                        }
                    }
                }
                all.sort();
                Ok(Arc::new(all))
            })
            .clone()
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[ElementId]) -> Subgroup {
        let mut k = Subgroup::trivial(self).extend(self, seed);
        loop {
            let extra: Vec<ElementId> = self
                .generators()
                .iter()
                .flat_map(|&s| k.generators().iter().map(move |&m| (s, m)))
                .map(|(s, m)| self.conj(s, m))
                .filter(|&c| !k.contains(c))
                .collect();
            if extra.is_empty() {
                return k;
            }
            k = k.extend(self, &extra);
        }
    }

    /// Minimal nontrivial normal subgroups, ascending.
    pub fn minimal_normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        let normals = self.normal_subgroups()?;
        let nontrivial: Vec<&Subgroup> = normals.iter().filter(|n| !n.is_trivial()).collect();
        Ok(nontrivial
            .iter()
            .filter(|n| !nontrivial.iter().any(|m| m.is_proper_subgroup_of(n)))
            .map(|n| (*n).clone())
            .collect())
    }

    /// Largest normal subgroup of `G` contained in `x`: `⋂ gXg⁻¹`.
    pub fn core_of(&self, x: &Subgroup) -> Subgroup {
        let mut bits = x.bits().clone();
        let mut seen = FixedBitSet::with_capacity(self.order());
        for g in self.elements() {
            if seen.contains(g as usize) {
                continue;
            }
            // gXg⁻¹ depends only on the coset gX
            for &m in x.members() {
                seen.insert(self.mul(g, m) as usize);
            }
            let conj = bitset(self, x.members().iter().map(|&m| self.conj(g, m)));
            bits.intersect_with(&conj);
            if bits.count_ones(..) == 1 {
                break;
            }
        }
        Subgroup::from_members_unchecked(self, bits)
    }

    /// `{g : g·x = x·g for all x ∈ X}`.
    pub fn centralizer(&self, x: &Subgroup) -> Subgroup {
        let gens = x.generators();
        let bits = bitset(
            self,
            self.elements()
                .filter(|&g| gens.iter().all(|&m| self.mul(g, m) == self.mul(m, g))),
        );
        Subgroup::from_members_unchecked(self, bits)
    }

    /// `{g : gXg⁻¹ = X}`.
    pub fn normalizer(&self, x: &Subgroup) -> Subgroup {
        let gens = x.generators();
        let bits = bitset(
            self,
            self.elements()
                .filter(|&g| gens.iter().all(|&m| x.contains(self.conj(g, m)))),
        );
        Subgroup::from_members_unchecked(self, bits)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubgroupMode {
    Core,
    Centralizer,
    Normalizer,
}

pub fn core_centralizer_normalizer(
    g: &FiniteGroup,
    mode: SubgroupMode,
    x: &Subgroup,
) -> Result<Subgroup> {
    x.check(g)?;
    Ok(match mode {
        SubgroupMode::Core => g.core_of(x),
        SubgroupMode::Centralizer => g.centralizer(x),
        SubgroupMode::Normalizer => g.normalizer(x),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alternating, cyclic, dihedral, direct_product, symmetric};
    use crate::perm::Permutation;
    use std::collections::BTreeSet;

    fn sub(g: &FiniteGroup, cycles: &str) -> Subgroup {
        let gens: Vec<_> = Permutation::parse_list(g.degree(), cycles)
            .unwrap()
            .iter()
            .map(|p| g.require(p).unwrap())
            .collect();
        g.closure(&gens).unwrap()
    }

    /// Closures of all pairs of elements, then closed under pairwise joins
    /// until nothing new appears.
    fn oracle_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<ElementId>> {
        let mut set: BTreeSet<Vec<ElementId>> = BTreeSet::new();
        for a in g.elements() {
            for b in g.elements() {
                set.insert(naive_closure(g, &[a, b]));
            }
        }
        loop {
            let list: Vec<_> = set.iter().cloned().collect();
            let mut grew = false;
            for x in &list {
                for y in &list {
                    let mut seed = x.clone();
                    seed.extend_from_slice(y);
                    if set.insert(naive_closure(g, &seed)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    fn naive_closure(g: &FiniteGroup, seed: &[ElementId]) -> Vec<ElementId> {
        let mut set: BTreeSet<ElementId> = seed.iter().copied().collect();
        set.insert(0);
        loop {
            let list: Vec<_> = set.iter().copied().collect();
            let before = set.len();
            for &a in &list {
                for &b in &list {
                    set.insert(g.mul(a, b));
                }
            }
            if set.len() == before {
                return set.into_iter().collect();
            }
        }
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(symmetric(3).unwrap().lattice().unwrap().len(), 6);
        assert_eq!(symmetric(4).unwrap().lattice().unwrap().len(), 30);
        assert_eq!(symmetric(1).unwrap().lattice().unwrap().len(), 1);
        assert_eq!(alternating(5).unwrap().lattice().unwrap().len(), 59);
    }

    #[test]
    fn lattice_matches_join_oracle() {
        let groups = [
            symmetric(4).unwrap(),
            dihedral(6).unwrap(),
            direct_product(&cyclic(2).unwrap(), &alternating(4).unwrap()).unwrap(),
            cyclic(12).unwrap(),
        ];
        for g in &groups {
            let ours: BTreeSet<Vec<ElementId>> = g
                .lattice()
                .unwrap()
                .nodes()
                .iter()
                .map(|k| k.members().to_vec())
                .collect();
            assert_eq!(ours, oracle_subgroups(g), "{}", g.label());
        }
    }

    #[test]
    fn up_sets() {
        let g = symmetric(4).unwrap();
        let whole = Subgroup::whole(&g);
        assert_eq!(subgroup_lattice(&g, Some(&whole)).unwrap().len(), 1);
        let h = sub(&g, "(0,1)");
        let fresh = symmetric(4).unwrap();
        let h2 = sub(&fresh, "(0,1)");
        // computed by filtering the memoized lattice and by direct extension
        g.lattice().unwrap();
        let a = subgroup_lattice(&g, Some(&h)).unwrap();
        let b = subgroup_lattice(&fresh, Some(&h2)).unwrap();
        let ma: Vec<_> = a.nodes().iter().map(|k| k.members().to_vec()).collect();
        let mb: Vec<_> = b.nodes().iter().map(|k| k.members().to_vec()).collect();
        assert_eq!(ma, mb);
        assert_eq!(a.covers(), b.covers());
        assert!(a.nodes().iter().all(|k| h.is_subgroup_of(k)));
    }

    #[test]
    fn covers_are_a_transitive_reduction() {
        let g = symmetric(4).unwrap();
        let lat = g.lattice().unwrap();
        let n = lat.len();
        for i in 0..n {
            for j in 0..n {
                let strictly = lat.nodes()[i].is_proper_subgroup_of(&lat.nodes()[j]);
                let between = (0..n).any(|k| {
                    lat.nodes()[i].is_proper_subgroup_of(&lat.nodes()[k])
                        && lat.nodes()[k].is_proper_subgroup_of(&lat.nodes()[j])
                });
                assert_eq!(lat.covers()[i].contains(&j), strictly && !between);
            }
        }
    }

    #[test]
    fn lattice_cap() {
        let g = symmetric(7).unwrap();
        assert_eq!(
            g.lattice().unwrap_err(),
            CoreError::LatticeCapExceeded {
                order: 5040,
                cap: 2000
            }
        );
    }

    #[test]
    fn normal_subgroup_examples() {
        let g = symmetric(4).unwrap();
        let orders: Vec<usize> = g.normal_subgroups().unwrap().iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let a5 = alternating(5).unwrap();
        assert_eq!(a5.normal_subgroups().unwrap().len(), 2);
        let c12 = cyclic(12).unwrap();
        assert_eq!(
            c12.normal_subgroups().unwrap().len(),
            c12.lattice().unwrap().len()
        );
    }

    #[test]
    fn normals_match_lattice_filter() {
        for g in [
            symmetric(4).unwrap(),
            dihedral(8).unwrap(),
            direct_product(&symmetric(3).unwrap(), &cyclic(3).unwrap()).unwrap(),
        ] {
            let filtered: Vec<Vec<ElementId>> = g
                .lattice()
                .unwrap()
                .nodes()
                .iter()
                .filter(|k| g.elements().all(|x| k.members().iter().all(|&m| k.contains(g.conj(x, m)))))
                .map(|k| k.members().to_vec())
                .collect();
            let ours: Vec<Vec<ElementId>> = g
                .normal_subgroups()
                .unwrap()
                .iter()
                .map(|k| k.members().to_vec())
                .collect();
            assert_eq!(ours, filtered);
        }
    }

    #[test]
    fn core_centralizer_normalizer_examples() {
        let g = symmetric(4).unwrap();
        let stab = sub(&g, "(1,2);(1,2,3)");
        let core = core_centralizer_normalizer(&g, SubgroupMode::Core, &stab).unwrap();
        assert!(core.is_trivial());
        let v4 = sub(&g, "(0,1)(2,3);(0,2)(1,3)");
        let c = core_centralizer_normalizer(&g, SubgroupMode::Centralizer, &v4).unwrap();
        assert_eq!(c, v4);
        let whole = Subgroup::whole(&g);
        let n = core_centralizer_normalizer(&g, SubgroupMode::Normalizer, &whole).unwrap();
        assert_eq!(n, whole);
        // exhaustive commutation oracle
        let brute: Vec<ElementId> = g
            .elements()
            .filter(|&x| v4.members().iter().all(|&m| g.mul(x, m) == g.mul(m, x)))
            .collect();
        assert_eq!(c.members(), brute.as_slice());
    }
}
