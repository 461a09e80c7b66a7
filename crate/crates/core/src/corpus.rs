//! Fixed group corpora for sweeps and surveys.

use crate::error::{CoreError, Result};
use crate::families::{
    alternating_with, cyclic_with, dihedral_with, direct_product, parse_family, power_map,
    semidirect, symmetric_with,
};
use crate::group::{Caps, FiniteGroup};
use crate::irreducible::wreath_product;
use crate::perm::Permutation;

fn perm_group(name: &str, degree: usize, gens: &[Vec<u32>], caps: Caps) -> Result<FiniteGroup> {
    let gens = gens
        .iter()
        .map(|g| Permutation::new(g.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteGroup::generate(degree, &gens, caps)?.with_name(name))
}

pub fn quaternion(caps: Caps) -> Result<FiniteGroup> {
    // regular representation on 8 points
    let a = Permutation::from_cycles(8, &[vec![0, 1, 3, 6], vec![2, 5, 7, 4]])?;
    let b = Permutation::from_cycles(8, &[vec![0, 2, 3, 7], vec![1, 4, 6, 5]])?;
    Ok(FiniteGroup::generate(8, &[a, b], caps)?.with_name("quaternion(8)"))
}

/// Matrices over `F_3` acting on the eight nonzero vectors of `F_3^2`.
fn linear_f3(name: &str, mats: &[[[u32; 2]; 2]], caps: Caps) -> Result<FiniteGroup> {
    let vecs: Vec<[u32; 2]> = (0..9u32)
        .map(|i| [i % 3, i / 3])
        .filter(|v| *v != [0, 0])
        .collect();
    let gens: Vec<Vec<u32>> = mats
        .iter()
        .map(|m| {
            vecs.iter()
                .map(|v| {
                    let w = [
                        (m[0][0] * v[0] + m[0][1] * v[1]) % 3,
                        (m[1][0] * v[0] + m[1][1] * v[1]) % 3,
                    ];
                    vecs.iter().position(|x| *x == w).expect("nonzero image") as u32
                })
                .collect()
        })
        .collect();
    perm_group(name, 8, &gens, caps)
}

pub fn special_linear_2_3(caps: Caps) -> Result<FiniteGroup> {
    linear_f3("sl(2,3)", &[[[1, 1], [0, 1]], [[1, 0], [1, 1]]], caps)
}

pub fn general_linear_2_3(caps: Caps) -> Result<FiniteGroup> {
    linear_f3("gl(2,3)", &[[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[2, 0], [0, 1]]], caps)
}

/// `x ↦ ax + b` over `Z/p` with `a` generating the units.
pub fn affine_line(p: u32, primitive_root: u32, caps: Caps) -> Result<FiniteGroup> {
    let t: Vec<u32> = (0..p).map(|x| (x + 1) % p).collect();
    let m: Vec<u32> = (0..p).map(|x| x * primitive_root % p).collect();
    perm_group(&format!("agl(1,{p})"), p as usize, &[t, m], caps)
}

/// The affine group of `F_8`: translations by a basis and multiplication by
/// a root of `x³ + x + 1`. Vectors are stored as 3-bit integers.
pub fn affine_line_f8(caps: Caps) -> Result<FiniteGroup> {
    let times_x = |v: u32| {
        let w = v << 1;
        if w & 8 != 0 {
            (w ^ 0b1011) & 7
        } else {
            w
        }
    };
    let mut gens: Vec<Vec<u32>> = (0..3).map(|i| (0..8).map(|v| v ^ (1 << i)).collect()).collect();
    gens.push((0..8).map(times_x).collect());
    perm_group("agl(1,8)", 8, &gens, caps)
}

/// `C_n ⋊ C_m` with the generator of `C_m` acting by `x ↦ x^r`.
fn metacyclic(n: usize, m: usize, r: usize, caps: Caps) -> Result<FiniteGroup> {
    let a = cyclic_with(n, caps)?;
    let b = cyclic_with(m, caps)?;
    Ok(semidirect(&a, &b, &[power_map(&a, r)])?.with_name(format!("metacyclic({n},{m},{r})")))
}

fn dp(a: Result<FiniteGroup>, b: Result<FiniteGroup>) -> Result<FiniteGroup> {
    direct_product(&a?, &b?)
}

/// Groups of order at most 24: the named families, a set of direct and
/// semidirect products, and a few matrix groups.
pub fn small_corpus(caps: Caps) -> Result<Vec<FiniteGroup>> {
    let mut out = Vec::new();
    for n in 1..=24 {
        out.push(cyclic_with(n, caps)?);
    }
    for n in 2..=12 {
        out.push(dihedral_with(n, caps)?);
    }
    for n in 3..=4 {
        out.push(symmetric_with(n, caps)?);
        out.push(alternating_with(n, caps)?);
    }
    out.push(quaternion(caps)?);
    out.push(special_linear_2_3(caps)?);
    out.push(affine_line(5, 2, caps)?);
    out.push(metacyclic(3, 4, 2, caps)?);
    out.push(metacyclic(7, 3, 2, caps)?);
    out.push(metacyclic(5, 4, 2, caps)?);
    out.push(metacyclic(3, 8, 2, caps)?);
    let c = |n| cyclic_with(n, caps);
    out.push(dp(dp(c(2), c(2)), c(2))?);
    out.push(dp(c(2), c(4))?);
    out.push(dp(c(2), c(6))?);
    out.push(dp(c(2), c(8))?);
    out.push(dp(c(4), c(4))?);
    out.push(dp(c(3), c(3))?);
    out.push(dp(c(2), c(10))?);
    out.push(dp(c(2), c(12))?);
    out.push(dp(c(2), symmetric_with(3, caps))?);
    out.push(dp(c(3), symmetric_with(3, caps))?);
    out.push(dp(c(4), symmetric_with(3, caps))?);
    out.push(dp(c(2), alternating_with(4, caps))?);
    out.push(dp(c(2), dihedral_with(4, caps))?);
    out.push(dp(c(2), quaternion(caps))?);
    out.push(dp(c(3), quaternion(caps))?);
    out.push(dp(dp(c(2), c(2)), symmetric_with(3, caps))?);
    out.push(dp(c(3), dihedral_with(4, caps))?);
    debug_assert!(out.iter().all(|g| g.order() <= 24));
    Ok(out)
}

/// Groups of order strictly between 24 and 48 inclusive.
pub fn mid_corpus(caps: Caps) -> Result<Vec<FiniteGroup>> {
    let c = |n| cyclic_with(n, caps);
    let s = |n| symmetric_with(n, caps);
    let mut out = Vec::new();
    for n in 13..=24 {
        out.push(dihedral_with(n, caps)?);
    }
    for n in [27, 30, 32, 36, 42, 48] {
        out.push(c(n)?);
    }
    out.push(dp(s(4), c(2))?);
    out.push(dp(s(3), s(3))?);
    out.push(dp(alternating_with(4, caps), c(3))?);
    out.push(dp(alternating_with(4, caps), c(4))?);
    out.push(dp(dihedral_with(4, caps), s(3))?);
    out.push(dp(quaternion(caps), s(3))?);
    out.push(dp(affine_line(5, 2, caps), c(2))?);
    out.push(general_linear_2_3(caps)?);
    out.push(affine_line(7, 3, caps)?);
    out.push(metacyclic(9, 3, 4, caps)?);
    out.push(dp(dp(c(2), c(2)), dihedral_with(4, caps))?);
    debug_assert!(out.iter().all(|g| g.order() > 24 && g.order() <= 48));
    Ok(out)
}

/// Groups of order at most 120: the small and mid corpora plus a selection
/// of larger groups with interesting primitive actions.
pub fn medium_corpus(caps: Caps) -> Result<Vec<FiniteGroup>> {
    let mut out = small_corpus(caps)?;
    out.extend(mid_corpus(caps)?);
    let c = |n| cyclic_with(n, caps);
    out.push(alternating_with(5, caps)?);
    out.push(symmetric_with(5, caps)?);
    out.push(dp(alternating_with(5, caps), c(2))?);
    out.push(affine_line_f8(caps)?);
    out.push(affine_line(11, 2, caps)?);
    out.push(dp(symmetric_with(4, caps), c(3))?);
    out.push(dp(symmetric_with(4, caps), c(5))?);
    out.push(wreath_product(&symmetric_with(3, caps)?, 2)?);
    out.push(dp(special_linear_2_3(caps), c(2))?);
    out.push(dp(general_linear_2_3(caps), c(2))?);
    out.push(dihedral_with(30, caps)?);
    out.push(dihedral_with(60, caps)?);
    out.push(metacyclic(13, 4, 5, caps)?);
    debug_assert!(out.iter().all(|g| g.order() <= 120));
    Ok(out)
}

/// Resolves a corpus spec: `small`, `medium`, `empty` (or blank), or a
/// `;`-separated list of family expressions and corpus names. Groups above
/// `max_order` are dropped.
pub fn corpus(spec: &str, max_order: Option<usize>, caps: Caps) -> Result<Vec<FiniteGroup>> {
    let mut out = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "empty" => {}
            "small" => out.extend(small_corpus(caps)?),
            "mid" => out.extend(mid_corpus(caps)?),
            "medium" => out.extend(medium_corpus(caps)?),
            expr => out.push(parse_family(expr, caps).map_err(|e| match e {
                CoreError::Parse(m) => CoreError::Parse(format!("unknown corpus entry {expr:?}: {m}")),
                other => other,
            })?),
        }
    }
    if let Some(bound) = max_order {
        out.retain(|g| g.order() <= bound);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_orders() {
        let caps = Caps::default();
        assert_eq!(quaternion(caps).unwrap().order(), 8);
        assert_eq!(special_linear_2_3(caps).unwrap().order(), 24);
        assert_eq!(general_linear_2_3(caps).unwrap().order(), 48);
        assert_eq!(affine_line(7, 3, caps).unwrap().order(), 42);
        assert_eq!(affine_line_f8(caps).unwrap().order(), 56);
        assert_eq!(metacyclic(13, 4, 5, caps).unwrap().order(), 52);
        let q = quaternion(caps).unwrap();
        let involutions = q.elements().filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn corpus_bounds() {
        let caps = Caps::default();
        assert!(small_corpus(caps).unwrap().iter().all(|g| g.order() <= 24));
        assert!(mid_corpus(caps)
            .unwrap()
            .iter()
            .all(|g| g.order() > 24 && g.order() <= 48));
        assert!(medium_corpus(caps).unwrap().iter().all(|g| g.order() <= 120));
        assert!(corpus("", None, caps).unwrap().is_empty());
        assert_eq!(corpus("symmetric(5)", None, caps).unwrap().len(), 1);
        assert_eq!(corpus("small;symmetric(5)", Some(24), caps).unwrap().len(), small_corpus(caps).unwrap().len());
        assert!(corpus("nonsense(3)", None, caps).is_err());
    }
}
