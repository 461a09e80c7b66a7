//! Thickenings `T_U(H)`, thinness of overgroups, the degree of a coset
//! space, and the expansivity entourages `E_U`.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::cosets::{double_cosets, left_cosets};
use crate::error::{CoreError, Result};
use crate::group::{ElementId, FiniteGroup};
use crate::subgroup::{bitset, is_mul_closed, left_translate, product_set, Subgroup};

/// `T_U(H) = ⋂_{h∈H} hUH`, the largest subgroup `T` with `H ≤ T ⊆ UH`.
///
/// The running intersection is checked for closure whenever it shrinks to a
/// size compatible with Lagrange; any subgroup between `H` and `UH` lies
/// inside `T`, so the first closed intersection is the answer.
pub fn thickening(g: &FiniteGroup, h: &Subgroup, u: &Subgroup) -> Result<Subgroup> {
    h.check(g)?;
    u.check(g)?;
    if u.is_subgroup_of(h) {
        return Ok(h.clone());
    }
    let uh = product_set(g, u.members(), h.members());
    let mut running = uh.clone();
    let mut last_checked = usize::MAX;
    for &x in h.members() {
        if x != 0 {
            running.intersect_with(&left_translate(g, x, &uh));
        }
        let n = running.count_ones(..);
        if n != last_checked && g.order() % n == 0 && n % h.order() == 0 {
            last_checked = n;
            if is_mul_closed(g, &running) {
                break;
            }
        }
    }
    Ok(Subgroup::from_members_unchecked(g, running))
}

pub fn is_thick(g: &FiniteGroup, h: &Subgroup, u: &Subgroup) -> Result<bool> {
    Ok(thickening(g, h, u)?.order() == h.order())
}

/// An element `g = s·u·h` of `K ∩ sUH` outside `UH`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinWitness {
    pub element: ElementId,
    pub s: ElementId,
    pub u: ElementId,
    pub h: ElementId,
}

#[derive(Debug, Clone)]
pub struct ThinVerdict {
    pub is_thin: bool,
    /// The product set `(K∩U)H`.
    pub product_set: Vec<ElementId>,
    pub witness: Option<ThinWitness>,
}

fn chain(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<()> {
    h.check(g)?;
    k.check(g)?;
    if h.is_subgroup_of(k) {
        Ok(())
    } else {
        Err(CoreError::NotAChain("H is not contained in K".into()))
    }
}

/// Whether `(K∩U)H` is a subgroup, using `AH = HA` for `A = K∩U`.
pub fn is_thin_fast(g: &FiniteGroup, h: &Subgroup, u: &Subgroup, k: &Subgroup) -> bool {
    let a = k.intersection(g, u);
    if a.is_subgroup_of(h) || h.is_subgroup_of(&a) {
        return true;
    }
    product_set(g, a.members(), h.members()) == product_set(g, h.members(), a.members())
}

/// `K` is `U`-thin over `H` when `(K∩U)H` is a subgroup. A failing verdict
/// carries the least violating element of `K ∩ sUH ∖ UH`, with `s` taken
/// from the generators of `H` when they satisfy the criterion hypothesis and
/// expose a violation, otherwise from `H` itself.
pub fn is_thin(g: &FiniteGroup, h: &Subgroup, u: &Subgroup, k: &Subgroup) -> Result<ThinVerdict> {
    chain(g, h, k)?;
    u.check(g)?;
    let a = k.intersection(g, u);
    let prod = product_set(g, a.members(), h.members());
    let thin = is_mul_closed(g, &prod);
    let witness = if thin {
        None
    } else {
        let gens_ok = criterion_hypothesis(g, h, u, h.generators());
        let from_gens = if gens_ok {
            criterion_witness(g, h, u, h.generators(), k)
        } else {
            None
        };
        let w = from_gens.or_else(|| criterion_witness(g, h, u, h.members(), k));
        if w.is_none() {
            return Err(CoreError::InvariantViolation(
                "K is not thin over H but K ∩ HUH ⊆ UH".into(),
            ));
        }
        w
    };
    Ok(ThinVerdict {
        is_thin: thin,
        product_set: prod.ones().map(|i| i as ElementId).collect(),
        witness,
    })
}

/// `H = ⟨S, N_H(U)⟩` with `S ⊆ H`.
fn criterion_hypothesis(g: &FiniteGroup, h: &Subgroup, u: &Subgroup, s: &[ElementId]) -> bool {
    if !s.iter().all(|&x| h.contains(x)) {
        return false;
    }
    let nh = g.normalizer(u).intersection(g, h);
    nh.extend(g, s).order() == h.order()
}

fn symmetric_closure(g: &FiniteGroup, s: &[ElementId]) -> Vec<ElementId> {
    let mut out: Vec<ElementId> = s.iter().flat_map(|&x| [x, g.inv(x)]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Least `x ∈ K ∩ sUH ∖ UH` over `s ∈ S ∪ S⁻¹`, with its decomposition.
fn criterion_witness(
    g: &FiniteGroup,
    h: &Subgroup,
    u: &Subgroup,
    s: &[ElementId],
    k: &Subgroup,
) -> Option<ThinWitness> {
    let uh = product_set(g, u.members(), h.members());
    let mut best: Option<(ElementId, ElementId)> = None;
    for s in symmetric_closure(g, s) {
        let suh = left_translate(g, s, &uh);
        let found = k
            .members()
            .iter()
            .copied()
            .find(|&x| suh.contains(x as usize) && !uh.contains(x as usize));
        if let Some(x) = found {
            if best.is_none_or(|(b, _)| x < b) {
                best = Some((x, s));
            }
        }
    }
    let (x, s) = best?;
    // x = s·u·h  ⇔  u·h = s⁻¹x
    let t = g.mul(g.inv(s), x);
    u.members().iter().find_map(|&a| {
        let b = g.mul(g.inv(a), t);
        h.contains(b).then_some(ThinWitness {
            element: x,
            s,
            u: a,
            h: b,
        })
    })
}

/// The thin criterion: `K ∩ sUH ⊆ UH` for all `s ∈ S ∪ S⁻¹`. Requires
/// `H = ⟨S, N_H(U)⟩`; when the criterion holds, `K ∩ HUH = (K∩U)H ≤ T_U(H)`
/// is checked as well.
pub fn thin_criterion_check(
    g: &FiniteGroup,
    h: &Subgroup,
    u: &Subgroup,
    s: &[ElementId],
    k: &Subgroup,
) -> Result<bool> {
    chain(g, h, k)?;
    u.check(g)?;
    for &x in s {
        g.check_id(x)?;
    }
    if !criterion_hypothesis(g, h, u, s) {
        return Err(CoreError::PreconditionFailed(
            "H is not generated by S and N_H(U)".into(),
        ));
    }
    let uh = product_set(g, u.members(), h.members());
    let holds = symmetric_closure(g, s).into_iter().all(|x| {
        let suh = left_translate(g, x, &uh);
        k.members()
            .iter()
            .all(|&y| !suh.contains(y as usize) || uh.contains(y as usize))
    });
    if holds {
        let huh = product_set(g, h.members(), &uh.ones().map(|i| i as ElementId).collect::<Vec<_>>());
        let mut k_huh = huh;
        k_huh.intersect_with(k.bits());
        let a = k.intersection(g, u);
        let prod = product_set(g, a.members(), h.members());
        let t = thickening(g, h, u)?;
        if k_huh != prod || !prod.is_subset(t.bits()) {
            return Err(CoreError::InvariantViolation(
                "K ∩ HUH = (K∩U)H ≤ T_U(H) fails".into(),
            ));
        }
    }
    Ok(holds)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeResult {
    pub value: usize,
    /// Least element of each counted double coset; the identity comes first.
    pub representatives: Vec<ElementId>,
    /// `⋃_{s∈S∪S⁻¹} sUH`.
    pub covered_set: Vec<ElementId>,
}

/// Number of `(U,H)`-double cosets meeting `⋃_{s∈S∪S⁻¹} sUH`, always
/// counting the double coset of the identity.
pub fn degree(g: &FiniteGroup, h: &Subgroup, u: &Subgroup, s: &[ElementId]) -> Result<DegreeResult> {
    h.check(g)?;
    u.check(g)?;
    for &x in s {
        g.check_id(x)?;
        if !h.contains(x) {
            return Err(CoreError::PreconditionFailed(format!(
                "element {x} of S is not in H"
            )));
        }
    }
    let uh = product_set(g, u.members(), h.members());
    let mut covered = FixedBitSet::with_capacity(g.order());
    for x in symmetric_closure(g, s) {
        covered.union_with(&left_translate(g, x, &uh));
    }
    let dc = double_cosets(g, u, h);
    let mut met = vec![false; dc.len()];
    met[0] = true;
    for x in covered.ones() {
        met[dc.block_of(x as ElementId)] = true;
    }
    let representatives: Vec<ElementId> = met
        .iter()
        .enumerate()
        .filter(|(_, m)| **m)
        .map(|(i, _)| dc.blocks[i][0])
        .collect();
    Ok(DegreeResult {
        value: representatives.len(),
        representatives,
        covered_set: covered.ones().map(|i| i as ElementId).collect(),
    })
}

#[derive(Debug, Clone)]
pub struct ExpansivityReport {
    pub entourage_subgroup: Subgroup,
    pub expansive_at_trivial: bool,
    pub uniformly_expansive: bool,
    /// For each pair of distinct cosets `(i, j)` (numbered by least member),
    /// the least `g` with `(g·x_iH, g·x_jH) ∉ E_U`.
    pub separating_witnesses: BTreeMap<(usize, usize), ElementId>,
    /// `U' = ⋂ g_i⁻¹ U g_i` over `(U,H)`-double coset representatives, built
    /// when the action is expansive at the trivial coset; `H` is `U'`-thick.
    pub thick_subgroup: Option<Subgroup>,
}

/// Expansivity of `G` on `G/H` with respect to the entourage
/// `E_U = {(xH, yH) : xH ⊆ UyH}`.
pub fn expansivity_analysis(g: &FiniteGroup, h: &Subgroup, u: &Subgroup) -> Result<ExpansivityReport> {
    h.check(g)?;
    u.check(g)?;
    let cosets = left_cosets(g, h);
    let reps = cosets.representatives();
    let dc = double_cosets(g, u, h);
    let separate = |x: ElementId, y: ElementId| {
        g.elements()
            .find(|&a| dc.block_of(g.mul(a, x)) != dc.block_of(g.mul(a, y)))
    };
    let mut witnesses = BTreeMap::new();
    let mut at_trivial = true;
    let mut uniform = true;
    for i in 0..reps.len() {
        for j in 0..reps.len() {
            if i == j {
                continue;
            }
            match separate(reps[i], reps[j]) {
                Some(a) => {
                    witnesses.insert((i, j), a);
                }
                None => {
                    uniform = false;
                    if i == 0 {
                        at_trivial = false;
                    }
                }
            }
        }
    }
    let thick_subgroup = if at_trivial {
        let mut bits = u.bits().clone();
        for r in dc.representatives() {
            let conj = bitset(g, u.members().iter().map(|&m| g.conj(g.inv(r), m)));
            bits.intersect_with(&conj);
        }
        let u2 = Subgroup::from_members_unchecked(g, bits);
        if !is_thick(g, h, &u2)? {
            return Err(CoreError::InvariantViolation(
                "H is not thick for the constructed subgroup".into(),
            ));
        }
        Some(u2)
    } else {
        None
    };
    Ok(ExpansivityReport {
        entourage_subgroup: u.clone(),
        expansive_at_trivial: at_trivial,
        uniformly_expansive: uniform,
        separating_witnesses: witnesses,
        thick_subgroup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic, dihedral, symmetric};
    use crate::lattice::subgroup_lattice;
    use crate::perm::Permutation;
    use proptest::prelude::*;

    fn sub(g: &FiniteGroup, cycles: &str) -> Subgroup {
        let gens: Vec<_> = Permutation::parse_list(g.degree(), cycles)
            .unwrap()
            .iter()
            .map(|p| g.require(p).unwrap())
            .collect();
        g.closure(&gens).unwrap()
    }

    fn id(g: &FiniteGroup, c: &str) -> ElementId {
        g.require(&Permutation::parse_cycles(g.degree(), c).unwrap()).unwrap()
    }

    /// The largest subgroup in the up-set of `H` contained in `UH`.
    fn lattice_max(g: &FiniteGroup, h: &Subgroup, u: &Subgroup) -> Subgroup {
        let uh = product_set(g, u.members(), h.members());
        subgroup_lattice(g, Some(h))
            .unwrap()
            .nodes()
            .iter()
            .filter(|k| k.bits().is_subset(&uh))
            .max_by_key(|k| k.order())
            .unwrap()
            .clone()
    }

    #[test]
    fn thickening_examples() {
        let g = symmetric(3).unwrap();
        let h = sub(&g, "(0,1)");
        let u = sub(&g, "(0,2)");
        assert_eq!(thickening(&g, &h, &u).unwrap(), h);
        assert_eq!(thickening(&g, &h, &lattice_max(&g, &h, &u)).unwrap(), h);
        let whole = Subgroup::whole(&g);
        assert_eq!(thickening(&g, &h, &whole).unwrap(), whole);
        assert_eq!(thickening(&g, &h, &Subgroup::trivial(&g)).unwrap(), h);
        assert!(is_thick(&g, &h, &u).unwrap());
        assert!(is_thick(&g, &whole, &u).unwrap());
        let a3 = sub(&g, "(0,1,2)");
        assert!(!is_thick(&g, &h, &a3).unwrap());
    }

    #[test]
    fn thickening_matches_lattice_max_on_small_groups() {
        for g in [symmetric(4).unwrap(), dihedral(6).unwrap(), cyclic(8).unwrap()] {
            let lat = g.lattice().unwrap();
            for h in lat.nodes() {
                for u in lat.nodes() {
                    assert_eq!(thickening(&g, h, u).unwrap(), lattice_max(&g, h, u));
                }
            }
        }
    }

    #[test]
    fn thin_examples() {
        let g = symmetric(3).unwrap();
        let h = sub(&g, "(0,1)");
        let u = sub(&g, "(0,2)");
        let whole = Subgroup::whole(&g);
        assert!(is_thin(&g, &h, &u, &h).unwrap().is_thin);
        let v = is_thin(&g, &h, &u, &whole).unwrap();
        assert!(!v.is_thin);
        assert_eq!(v.product_set.len(), 4);
        let w = v.witness.unwrap();
        assert_eq!(g.mul(g.mul(w.s, w.u), w.h), w.element);
        let uh = product_set(&g, u.members(), h.members());
        assert!(!uh.contains(w.element as usize));

        let t01 = id(&g, "(0,1)");
        assert!(!thin_criterion_check(&g, &h, &u, &[t01], &whole).unwrap());
        assert!(thin_criterion_check(&g, &h, &u, &[t01], &h).unwrap());
        let a3 = sub(&g, "(0,1,2)");
        for k in g.lattice().unwrap().nodes() {
            if h.is_subgroup_of(k) {
                assert!(is_thin(&g, &h, &a3, k).unwrap().is_thin);
            }
        }
        assert!(matches!(
            is_thin(&g, &whole, &u, &h),
            Err(CoreError::NotAChain(_))
        ));
        assert!(matches!(
            thin_criterion_check(&g, &h, &u, &[], &whole),
            Err(CoreError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn fast_thin_test_matches_closure() {
        let g = symmetric(4).unwrap();
        let lat = g.lattice().unwrap();
        for h in lat.nodes() {
            for u in lat.nodes().iter().step_by(2) {
                for k in lat.nodes() {
                    if h.is_subgroup_of(k) {
                        assert_eq!(
                            is_thin_fast(&g, h, u, k),
                            is_thin(&g, h, u, k).unwrap().is_thin
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn degree_examples() {
        let g = symmetric(3).unwrap();
        let h = sub(&g, "(0,1)");
        let u = sub(&g, "(0,2)");
        let t01 = id(&g, "(0,1)");
        let d = degree(&g, &h, &u, &[t01]).unwrap();
        assert_eq!(d.value, 2);
        assert_eq!(d.representatives[0], 0);
        assert_eq!(degree(&g, &h, &u, &[0]).unwrap().value, 1);
        let whole = Subgroup::whole(&g);
        assert_eq!(degree(&g, &whole, &u, whole.members()).unwrap().value, 1);
        assert!(degree(&g, &h, &u, &[id(&g, "(0,2)")]).is_err());
    }

    #[test]
    fn expansivity_examples() {
        let g = symmetric(3).unwrap();
        let h = sub(&g, "(0,1)");
        let v = sub(&g, "(0,2)");
        let r = expansivity_analysis(&g, &h, &v).unwrap();
        assert!(r.expansive_at_trivial);
        let u2 = r.thick_subgroup.unwrap();
        assert_eq!(thickening(&g, &h, &u2).unwrap(), h);
        for (&(i, j), &a) in &r.separating_witnesses {
            let cosets = left_cosets(&g, &h);
            let (x, y) = (cosets.blocks[i][0], cosets.blocks[j][0]);
            let dc = double_cosets(&g, &v, &h);
            assert_ne!(dc.block_of(g.mul(a, x)), dc.block_of(g.mul(a, y)));
        }
        let whole = Subgroup::whole(&g);
        let r = expansivity_analysis(&g, &whole, &v).unwrap();
        assert!(r.uniformly_expansive && r.expansive_at_trivial);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn thickening_is_idempotent_and_sandwiched(hi in 0usize..30, ui in 0usize..30) {
            let g = symmetric(4).unwrap();
            let lat = g.lattice().unwrap();
            let (h, u) = (&lat.nodes()[hi], &lat.nodes()[ui]);
            let t = thickening(&g, h, u).unwrap();
            prop_assert!(h.is_subgroup_of(&t));
            prop_assert!(t.bits().is_subset(&product_set(&g, u.members(), h.members())));
            prop_assert_eq!(thickening(&g, &t, u).unwrap(), t);
        }
    }
}
