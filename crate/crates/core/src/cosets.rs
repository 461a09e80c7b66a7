//! Left and double coset partitions, and the coset action of a subgroup.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::group::{ElementId, FiniteGroup};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CosetKind {
    LeftCosets,
    DoubleCosets,
}

/// A partition of the group into cosets. Blocks are ordered by their least
/// member, so block 0 always contains the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    pub kind: CosetKind,
    pub blocks: Vec<Vec<ElementId>>,
    pub index_of: Vec<u32>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: ElementId) -> usize {
        self.index_of[x as usize] as usize
    }

    /// Least element of each block.
    pub fn representatives(&self) -> Vec<ElementId> {
        self.blocks.iter().map(|b| b[0]).collect()
    }
}

const UNSET: u32 = u32::MAX;

/// `gH` blocks, or `UgH` blocks when `u` is given and `kind` asks for them.
pub fn coset_partition(
    g: &FiniteGroup,
    kind: CosetKind,
    h: &Subgroup,
    u: Option<&Subgroup>,
) -> Result<CosetPartition> {
    h.check(g)?;
    match kind {
        CosetKind::LeftCosets => Ok(left_cosets(g, h)),
        CosetKind::DoubleCosets => {
            let u = u.ok_or_else(|| {
                CoreError::PreconditionFailed("double cosets need a left subgroup U".into())
            })?;
            u.check(g)?;
            Ok(double_cosets(g, u, h))
        }
    }
}

pub fn left_cosets(g: &FiniteGroup, h: &Subgroup) -> CosetPartition {
    let mut index_of = vec![UNSET; g.order()];
    let mut blocks = Vec::new();
    for x in g.elements() {
        if index_of[x as usize] != UNSET {
            continue;
        }
        let b = blocks.len() as u32;
        let mut block: Vec<ElementId> = h.members().iter().map(|&m| g.mul(x, m)).collect();
        block.sort_unstable();
        for &y in &block {
            index_of[y as usize] = b;
        }
        blocks.push(block);
    }
    CosetPartition {
        kind: CosetKind::LeftCosets,
        blocks,
        index_of,
    }
}

/// `U\G/H`: each block is `U·x·H` for its least member `x`.
pub fn double_cosets(g: &FiniteGroup, u: &Subgroup, h: &Subgroup) -> CosetPartition {
    let mut index_of = vec![UNSET; g.order()];
    let mut blocks = Vec::new();
    for x in g.elements() {
        if index_of[x as usize] != UNSET {
            continue;
        }
        let b = blocks.len() as u32;
        let mut block = Vec::new();
        for &a in u.members() {
            let ax = g.mul(a, x);
            for &m in h.members() {
                let y = g.mul(ax, m);
                if index_of[y as usize] == UNSET {
                    index_of[y as usize] = b;
                    block.push(y);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    CosetPartition {
        kind: CosetKind::DoubleCosets,
        blocks,
        index_of,
    }
}

/// The action of `k` on the left cosets of `h ≤ k`.
///
/// Cosets are numbered by their least member, so coset 0 is `h` itself.
/// Returns one image array per generator of `k`, together with the coset
/// index of every element of `k` (`u32::MAX` outside `k`).
pub struct CosetAction {
    pub degree: usize,
    pub images: Vec<Vec<u32>>,
    pub coset_of: Vec<u32>,
    pub representatives: Vec<ElementId>,
}

pub fn coset_action(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> CosetAction {
    let mut coset_of = vec![UNSET; g.order()];
    let mut representatives = Vec::new();
    for &x in k.members() {
        if coset_of[x as usize] != UNSET {
            continue;
        }
        let c = representatives.len() as u32;
        representatives.push(x);
        for &m in h.members() {
            coset_of[g.mul(x, m) as usize] = c;
        }
    }
    let images = k
        .generators()
        .iter()
        .map(|&s| {
            representatives
                .iter()
                .map(|&r| coset_of[g.mul(s, r) as usize])
                .collect()
        })
        .collect();
    CosetAction {
        degree: representatives.len(),
        images,
        coset_of,
        representatives,
    }
}
