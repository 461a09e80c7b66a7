//! Maximality of a subgroup inside an ambient subgroup, by block systems of
//! the coset action or by the up-set lattice.

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::cosets::coset_action;
use crate::error::{CoreError, Result};
use crate::group::FiniteGroup;
use crate::lattice::subgroup_lattice;
use crate::subgroup::{bitset, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaximalityMethod {
    BlockSystem,
    Lattice,
}

#[derive(Debug, Clone)]
pub struct MaximalityVerdict {
    pub maximal: bool,
    pub method: MaximalityMethod,
    /// Index of `H` in the ambient group.
    pub index: usize,
    /// A subgroup strictly between `H` and the ambient group, if one exists.
    pub witness: Option<Subgroup>,
    /// The nontrivial block containing the coset `H` (block-system method).
    pub block: Option<Vec<u32>>,
}

/// Smallest block of the permutation action containing points 0 and `j`.
fn minimal_block(degree: usize, gens: &[Vec<u32>], j: u32) -> Vec<u32> {
    let mut uf = UnionFind::<u32>::new(degree);
    let mut queue = vec![(0u32, j)];
    uf.union(0, j);
    while let Some((a, b)) = queue.pop() {
        for s in gens {
            let (x, y) = (s[a as usize], s[b as usize]);
            if uf.union(x, y) {
                queue.push((x, y));
            }
        }
    }
    let root = uf.find(0);
    (0..degree as u32).filter(|&p| uf.find(p) == root).collect()
}

fn chain_check(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Result<()> {
    h.check(g)?;
    k.check(g)?;
    if !h.is_subgroup_of(k) {
        return Err(CoreError::NotAChain("H is not contained in the ambient subgroup".into()));
    }
    if h.order() == k.order() {
        return Err(CoreError::PreconditionFailed(
            "maximality needs a proper subgroup".into(),
        ));
    }
    Ok(())
}

/// Block-system test: `H` is maximal in `K` iff `K` acts primitively on `K/H`.
pub fn maximal_via_blocks(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Result<MaximalityVerdict> {
    chain_check(g, k, h)?;
    let index = k.order() / h.order();
    if index > g.caps().index {
        return Err(CoreError::IndexCapExceeded {
            index,
            cap: g.caps().index,
        });
    }
    let act = coset_action(g, k, h);
    // the minimal block through {0, j} only depends on the H-orbit of j
    let stab_gens: Vec<Vec<u32>> = h
        .generators()
        .iter()
        .map(|&s| {
            act.representatives
                .iter()
                .map(|&r| act.coset_of[g.mul(s, r) as usize])
                .collect()
        })
        .collect();
    let mut orbit_seen = vec![false; act.degree];
    orbit_seen[0] = true;
    for j in 1..act.degree {
        if orbit_seen[j] {
            continue;
        }
        let mut stack = vec![j as u32];
        orbit_seen[j] = true;
        while let Some(x) = stack.pop() {
            for s in &stab_gens {
                let y = s[x as usize];
                if !orbit_seen[y as usize] {
                    orbit_seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        let block = minimal_block(act.degree, &act.images, j as u32);
        if block.len() < act.degree {
            let members = h
                .members()
                .iter()
                .flat_map(|&m| block.iter().map(move |&c| (m, c)))
                .map(|(m, c)| g.mul(act.representatives[c as usize], m));
            let witness = Subgroup::from_members_unchecked(g, bitset(g, members));
            return Ok(MaximalityVerdict {
                maximal: false,
                method: MaximalityMethod::BlockSystem,
                index,
                witness: Some(witness),
                block: Some(block),
            });
        }
    }
    Ok(MaximalityVerdict {
        maximal: true,
        method: MaximalityMethod::BlockSystem,
        index,
        witness: None,
        block: None,
    })
}

/// Lattice test: look for a subgroup strictly between `H` and `K` in the
/// up-set of `H`. The witness is the least such subgroup.
pub fn maximal_via_lattice(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Result<MaximalityVerdict> {
    chain_check(g, k, h)?;
    let up = subgroup_lattice(g, Some(h))?;
    let witness = up
        .nodes()
        .iter()
        .find(|l| h.is_proper_subgroup_of(l) && l.is_proper_subgroup_of(k))
        .cloned();
    Ok(MaximalityVerdict {
        maximal: witness.is_none(),
        method: MaximalityMethod::Lattice,
        index: k.order() / h.order(),
        witness,
        block: None,
    })
}

/// Whether `H` is maximal among proper subgroups of `K`. Uses block systems
/// when the index is within the index cap, else the up-set lattice.
pub fn is_maximal_in(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Result<MaximalityVerdict> {
    chain_check(g, k, h)?;
    let index = k.order() / h.order();
    if index <= g.caps().index {
        maximal_via_blocks(g, k, h)
    } else if g.order() <= g.caps().lattice {
        maximal_via_lattice(g, k, h)
    } else {
        Err(CoreError::IndexCapExceeded {
            index,
            cap: g.caps().index,
        })
    }
}

pub fn is_maximal_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<MaximalityVerdict> {
    is_maximal_in(g, &Subgroup::whole(g), h)
}

/// Maximal proper subgroups of `G` containing `H`, ascending. Returns `[H]`
/// when `H` is itself maximal.
pub fn maximal_overgroups(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    h.check(g)?;
    if h.order() == g.order() {
        return Err(CoreError::PreconditionFailed(
            "H = G has no proper overgroups".into(),
        ));
    }
    let up = subgroup_lattice(g, Some(h))?;
    let top = up.len() - 1;
    Ok(up
        .nodes()
        .iter()
        .enumerate()
        .filter(|(i, _)| up.covers()[*i].contains(&top))
        .map(|(_, k)| k.clone())
        .collect())
}

/// Maximal subgroups of `G`, one per conjugacy class, each represented by
/// the least subgroup of its class.
pub fn maximal_subgroup_classes(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let all = maximal_overgroups(g, &Subgroup::trivial(g))?;
    let mut reps: Vec<Subgroup> = Vec::new();
    for m in all {
        let conjugate_of_earlier = reps
            .iter()
            .any(|r| r.order() == m.order() && g.elements().any(|x| r.conjugate(g, x) == m));
        if !conjugate_of_earlier {
            reps.push(m);
        }
    }
    Ok(reps)
}
