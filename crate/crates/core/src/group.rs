//! Fully enumerated finite permutation groups.

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::error::{CoreError, Result};
use crate::lattice::SubgroupLattice;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// Index into a group's element table. Id 0 is always the identity.
pub type ElementId = u32;

/// Orders up to this size get a full Cayley table.
const TABLE_LIMIT: usize = 2048;

static NEXT_TAG: AtomicU64 = AtomicU64::new(1);

/// Size limits for the enumerative algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order `generate_group` will enumerate.
    pub order: usize,
    /// Largest group order for full subgroup-lattice work.
    pub lattice: usize,
    /// Largest index for coset-action (block system) maximality tests.
    pub index: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 20_000,
            lattice: 2_000,
            index: 10_000,
        }
    }
}

impl Caps {
    /// Defaults overridden by `COSETFACTOR_ORDER_CAP`, `COSETFACTOR_LATTICE_CAP`
    /// and `COSETFACTOR_INDEX_CAP` when set to a positive integer.
    pub fn from_env() -> Caps {
        let read = |key: &str, default: usize| {
            std::env::var(key)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&v| v > 0)
                .unwrap_or(default)
        };
        let d = Caps::default();
        Caps {
            order: read("COSETFACTOR_ORDER_CAP", d.order),
            lattice: read("COSETFACTOR_LATTICE_CAP", d.lattice),
            index: read("COSETFACTOR_INDEX_CAP", d.index),
        }
    }
}

/// A group element together with its id in the owning group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub id: ElementId,
    pub image: Permutation,
}

#[derive(Default)]
pub(crate) struct Memo {
    pub(crate) lattice: OnceLock<Result<Arc<SubgroupLattice>>>,
    pub(crate) normals: OnceLock<Result<Arc<Vec<Subgroup>>>>,
    pub(crate) classes: OnceLock<Arc<Vec<Vec<ElementId>>>>,
    pub(crate) cyclic: OnceLock<Arc<Vec<Subgroup>>>,
}

pub struct FiniteGroup {
    tag: u64,
    name: Option<String>,
    degree: usize,
    images: Vec<u32>,
    index: HashMap<Box<[u32]>, ElementId>,
    table: Option<Vec<ElementId>>,
    inverse: Vec<ElementId>,
    generators: Vec<ElementId>,
    caps: Caps,
    pub(crate) memo: Memo,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

/// Closes `generators` under composition. Elements are numbered in
/// breadth-first order from the identity, extending each element by the
/// generators in input order (`x -> x·s`).
pub fn generate_group(degree: usize, generators: &[Permutation]) -> Result<FiniteGroup> {
    FiniteGroup::generate(degree, generators, Caps::default())
}

impl FiniteGroup {
    pub fn generate(degree: usize, generators: &[Permutation], caps: Caps) -> Result<FiniteGroup> {
        for g in generators {
            if g.degree() != degree {
                return Err(CoreError::MalformedPermutation(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
            Permutation::new(g.images().to_vec())?;
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut index: HashMap<Box<[u32]>, ElementId> = HashMap::new();
        index.insert(images.clone().into_boxed_slice(), 0);
        let mut queue = VecDeque::from([0usize]);
        let mut buf = vec![0u32; degree];
        while let Some(x) = queue.pop_front() {
            for g in generators {
                {
                    let xs = &images[x * degree..(x + 1) * degree];
                    // (x·g)(p) = x(g(p))
                    for (p, slot) in buf.iter_mut().enumerate() {
                        *slot = xs[g.apply(p as u32) as usize];
                    }
                }
                if !index.contains_key(buf.as_slice()) {
                    let id = index.len();
                    if id >= caps.order {
                        return Err(CoreError::OrderCapExceeded { cap: caps.order });
                    }
                    index.insert(buf.clone().into_boxed_slice(), id as ElementId);
                    images.extend_from_slice(&buf);
                    queue.push_back(id);
                }
            }
        }
        let gen_ids = generators
            .iter()
            .map(|g| index[g.images()])
            .collect::<Vec<_>>();
        let mut group = FiniteGroup {
            tag: NEXT_TAG.fetch_add(1, Ordering::Relaxed),
            name: None,
            degree,
            images,
            index,
            table: None,
            inverse: Vec::new(),
            generators: gen_ids,
            caps,
            memo: Memo::default(),
        };
        let n = group.order();
        group.inverse = (0..n)
            .map(|i| {
                let p = Permutation::from_images_unchecked(group.perm(i as ElementId).to_vec());
                group.index[p.inverse().images()]
            })
            .collect();
        if n <= TABLE_LIMIT {
            let mut table = vec![0 as ElementId; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = group.mul_slow(a as ElementId, b as ElementId);
                }
            }
            group.table = Some(table);
        }
        Ok(group)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("group(order {}, degree {})", self.order(), self.degree))
    }

    /// Identifies the group instance; subgroup handles carry it.
    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn order(&self) -> usize {
        self.images.len() / self.degree.max(1)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        0..self.order() as ElementId
    }

    pub fn perm(&self, id: ElementId) -> &[u32] {
        let d = self.degree;
        let i = id as usize;
        &self.images[i * d..(i + 1) * d]
    }

    pub fn permutation(&self, id: ElementId) -> Permutation {
        Permutation::from_images_unchecked(self.perm(id).to_vec())
    }

    pub fn element(&self, id: ElementId) -> GroupElement {
        GroupElement {
            id,
            image: self.permutation(id),
        }
    }

    pub fn id_of(&self, images: &[u32]) -> Option<ElementId> {
        if images.len() != self.degree {
            return None;
        }
        self.index.get(images).copied()
    }

    /// Looks up a permutation, failing with `NotAnElement` if it lies outside.
    pub fn require(&self, p: &Permutation) -> Result<ElementId> {
        self.id_of(p.images())
            .ok_or_else(|| CoreError::NotAnElement(p.to_string()))
    }

    pub fn check_id(&self, id: ElementId) -> Result<()> {
        if (id as usize) < self.order() {
            Ok(())
        } else {
            Err(CoreError::ElementOutOfRange {
                id: id as usize,
                order: self.order(),
            })
        }
    }

    fn mul_slow(&self, a: ElementId, b: ElementId) -> ElementId {
        let pa = self.perm(a);
        let prod: Vec<u32> = self.perm(b).iter().map(|&x| pa[x as usize]).collect();
        self.index[prod.as_slice()]
    }

    /// `a·b`, acting as `a(b(x))`.
    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        match &self.table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inverse[a as usize]
    }

    /// `g·x·g⁻¹`.
    pub fn conj(&self, g: ElementId, x: ElementId) -> ElementId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: ElementId) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Generator permutations, for re-serialisation.
    pub fn generator_permutations(&self) -> Vec<Permutation> {
        self.generators.iter().map(|&g| self.permutation(g)).collect()
    }
}
