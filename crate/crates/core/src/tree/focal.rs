use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

pub const DEFAULT_SLAB_CAP: usize = 1 << 22;

/// Levels `−R..=R` of the coset tree of `Z_p^d` inside `p^{−R}Z_p^d`.
/// A level-`k` vertex is a coset of `p^k Z_p^d`, stored after scaling by
/// `p^R` as a coordinate vector mod `p^{k+R}`; its parent is the coset one
/// level down containing it, so each vertex has `p^d` children one level up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTreeSlab {
    pub p: u64,
    pub d_rank: usize,
    pub l: usize,
    pub radius: usize,
    /// First vertex index of each level, plus the total at the end.
    pub offsets: Vec<usize>,
}

impl CosetTreeSlab {
    pub fn new(p: u64, d_rank: usize, l: usize, radius: usize, cap: usize) -> Result<CosetTreeSlab> {
        let mut offsets = vec![0usize];
        let mut total: u128 = 0;
        for i in 0..=2 * radius {
            total += (p as u128).pow((i * d_rank) as u32);
            if total > cap as u128 {
                return Err(CoreError::SlabCapExceeded {
                    size: total.min(usize::MAX as u128) as usize,
                    cap,
                });
            }
            offsets.push(total as usize);
        }
        Ok(CosetTreeSlab {
            p,
            d_rank,
            l,
            radius,
            offsets,
        })
    }

    pub fn vertex_count(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn levels(&self) -> std::ops::RangeInclusive<i64> {
        -(self.radius as i64)..=self.radius as i64
    }

    /// Coordinates at level `k` live in `Z/p^{k+R}`.
    pub fn modulus(&self, k: i64) -> u64 {
        self.p.pow((k + self.radius as i64) as u32)
    }

    fn level_slot(&self, k: i64) -> usize {
        (k + self.radius as i64) as usize
    }

    pub fn level_size(&self, k: i64) -> usize {
        let s = self.level_slot(k);
        self.offsets[s + 1] - self.offsets[s]
    }

    pub fn index(&self, k: i64, c: &[u64]) -> usize {
        let m = self.modulus(k);
        self.offsets[self.level_slot(k)]
            + c.iter().rev().fold(0u64, |acc, &x| acc * m + x) as usize
    }

    pub fn coords(&self, k: i64, mut i: usize) -> Vec<u64> {
        let m = self.modulus(k) as usize;
        i -= self.offsets[self.level_slot(k)];
        (0..self.d_rank)
            .map(|_| {
                let x = i % m;
                i /= m;
                x as u64
            })
            .collect()
    }

    pub fn parent(&self, k: i64, c: &[u64]) -> Option<(i64, Vec<u64>)> {
        (k > -(self.radius as i64)).then(|| {
            let m = self.modulus(k - 1);
            (k - 1, c.iter().map(|&x| x % m).collect())
        })
    }

    /// `s_l`: multiplication by `p^{−l}`, defined when the target level is in
    /// the window and every coordinate is divisible by `p^l`.
    pub fn shift(&self, k: i64, c: &[u64]) -> Option<(i64, Vec<u64>)> {
        let target = k - self.l as i64;
        let q = self.p.pow(self.l as u32);
        if target < -(self.radius as i64) || c.iter().any(|&x| x % q != 0) {
            return None;
        }
        let m = self.modulus(target);
        Some((target, c.iter().map(|&x| (x / q) % m).collect()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub level: i64,
    pub vertices: usize,
    pub orbit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FocalCensus {
    pub slab: CosetTreeSlab,
    pub interior_orbits: usize,
    /// One row per (interior level, orbit) pair, levels ascending.
    pub rows: Vec<CensusRow>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| p % q != 0)
}

/// Orbits of the partial action generated by translations and the shift
/// `s_l` on the slab, counted on the interior levels `|k| ≤ R − l`.
pub fn focal_orbit_census(p: u64, d_rank: usize, l: usize, radius: usize) -> Result<FocalCensus> {
    focal_orbit_census_with(p, d_rank, l, radius, DEFAULT_SLAB_CAP)
}

pub fn focal_orbit_census_with(
    p: u64,
    d_rank: usize,
    l: usize,
    radius: usize,
    cap: usize,
) -> Result<FocalCensus> {
    if !is_prime(p) || l == 0 || d_rank == 0 || radius < l + 1 {
        return Err(CoreError::PreconditionFailed(
            "need p prime, d ≥ 1, l ≥ 1 and R ≥ l + 1".into(),
        ));
    }
    let slab = CosetTreeSlab::new(p, d_rank, l, radius, cap)?;
    let mut uf = UnionFind::<usize>::new(slab.vertex_count());
    for k in slab.levels() {
        let m = slab.modulus(k);
        for i in slab.offsets[slab.level_slot(k)]..slab.offsets[slab.level_slot(k) + 1] {
            let c = slab.coords(k, i);
            // translation by each basis vector of the finest level
            for axis in 0..d_rank {
                let mut t = c.clone();
                t[axis] = (t[axis] + 1) % m;
                uf.union(i, slab.index(k, &t));
            }
            if let Some((k2, c2)) = slab.shift(k, &c) {
                uf.union(i, slab.index(k2, &c2));
            }
        }
    }
    let interior = radius as i64 - l as i64;
    let mut labels: Vec<usize> = Vec::new();
    let mut rows = Vec::new();
    for k in -interior..=interior {
        let mut per_orbit: std::collections::BTreeMap<usize, usize> = Default::default();
        let start = slab.offsets[slab.level_slot(k)];
        for i in start..start + slab.level_size(k) {
            let root = uf.find(i);
            let id = labels.iter().position(|&r| r == root).unwrap_or_else(|| {
                labels.push(root);
                labels.len() - 1
            });
            *per_orbit.entry(id).or_insert(0) += 1;
        }
        rows.extend(per_orbit.into_iter().map(|(orbit, vertices)| CensusRow {
            level: k,
            vertices,
            orbit,
        }));
    }
    Ok(FocalCensus {
        slab,
        interior_orbits: labels.len(),
        rows,
    })
}
