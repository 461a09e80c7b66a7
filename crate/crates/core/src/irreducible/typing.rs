//! Primitive-type tags for faithful irreducible pairs, read off the
//! designated minimal normal subgroup `M`, `K = M ∩ H` and `C_G(M)`.

use serde::{Deserialize, Serialize};

use super::IrreducibleReport;
use crate::error::{CoreError, Result};
use crate::families::subgroup_as_group;
use crate::group::FiniteGroup;
use crate::subgroup::{bitset, product_set, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OnanScottType {
    HS,
    HC,
    TW,
    SD,
    CD,
    PA,
    AS,
    #[serde(rename = "ABELIAN")]
    Abelian,
}

impl OnanScottType {
    pub fn label(self) -> &'static str {
        match self {
            OnanScottType::HS => "HS",
            OnanScottType::HC => "HC",
            OnanScottType::TW => "TW",
            OnanScottType::SD => "SD",
            OnanScottType::CD => "CD",
            OnanScottType::PA => "PA",
            OnanScottType::AS => "AS",
            OnanScottType::Abelian => "ABELIAN",
        }
    }
}

impl std::fmt::Display for OnanScottType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypingEvidence {
    /// Index of `M` in the report's minimal normal list.
    pub designated: usize,
    pub socle_order: usize,
    pub component_count: usize,
    pub component_label: String,
    /// `|M ∩ H|`.
    pub k_order: usize,
    pub centralizer_order: usize,
    /// `|π_i(K)|` for each component, in component order.
    pub projection_orders: Vec<usize>,
    /// Whether `M ⊆ H·C_G(M)`, i.e. `H` induces every inner automorphism
    /// of `M`. Only computed when `K = 1`.
    pub inner_induced: Option<bool>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnanScottTag {
    pub tag: OnanScottType,
    pub evidence: TypingEvidence,
}

fn is_abelian_subgroup(g: &FiniteGroup, m: &Subgroup) -> bool {
    let gens = m.generators();
    gens.iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// The simple direct factors of a nonabelian minimal normal subgroup, as
/// subgroups of `g`.
pub(crate) fn components(g: &FiniteGroup, m: &Subgroup) -> Result<Vec<Subgroup>> {
    let (mg, map) = subgroup_as_group(g, m)?;
    let mut out: Vec<Subgroup> = mg
        .minimal_normal_subgroups()?
        .iter()
        .map(|c| {
            let bits = bitset(g, c.members().iter().map(|&x| map[x as usize]));
            Subgroup::from_members_unchecked(g, bits)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Tags the designated minimal normal subgroup of a faithful irreducible
/// report. Fails with `Unclassifiable` when no criterion set matches.
pub fn onan_scott_type(g: &FiniteGroup, report: &IrreducibleReport) -> Result<OnanScottTag> {
    if !report.irreducible {
        return Err(CoreError::PreconditionFailed("pair is not irreducible".into()));
    }
    let w = report.group(g);
    let h = &report.h;
    let m = report.designated();
    let k = m.intersection(w, h);
    let c = w.centralizer(m);
    let mut ev = TypingEvidence {
        designated: report.evidence.designated,
        socle_order: m.order(),
        component_count: 1,
        component_label: String::new(),
        k_order: k.order(),
        centralizer_order: c.order(),
        projection_orders: Vec::new(),
        inner_induced: None,
        note: String::new(),
    };
    if is_abelian_subgroup(w, m) {
        ev.component_label = format!("elementary abelian of order {}", m.order());
        ev.note = "abelian socle, split with H".into();
        return Ok(OnanScottTag {
            tag: OnanScottType::Abelian,
            evidence: ev,
        });
    }

    let comps = components(w, m)?;
    let n = comps.len();
    let s_order = comps[0].order();
    if comps.iter().any(|x| x.order() != s_order || is_abelian_subgroup(w, x)) {
        return Err(CoreError::Unclassifiable(
            "M is not a power of one nonabelian simple group".into(),
        ));
    }
    ev.component_count = n;
    ev.component_label = format!("nonabelian simple of order {s_order}");
    ev.projection_orders = comps
        .iter()
        .map(|si| {
            let ker = w.centralizer(si).intersection(w, m);
            k.order() / k.intersection(w, &ker).order()
        })
        .collect();

    let k_trivial = k.is_trivial();
    let c_trivial = c.is_trivial();
    if k_trivial {
        let hc = product_set(w, h.members(), c.members());
        ev.inner_induced = Some(m.members().iter().all(|&x| hc.contains(x as usize)));
    }
    let all_full = ev.projection_orders.iter().all(|&p| p == s_order);
    let all_partial = ev
        .projection_orders
        .iter()
        .all(|&p| p > 1 && p < s_order);
    let diag_rank = (1..n).find(|&j| s_order.pow(j as u32) == k.order());

    let tag = match (n, k_trivial, c_trivial) {
        (1, true, false) if ev.inner_induced == Some(true) => {
            ev.note = "K = 1, H·C_G(M) ⊇ M".into();
            Some(OnanScottType::HS)
        }
        (1, _, true) => {
            ev.note = format!("M simple, |K| = {}", k.order());
            Some(OnanScottType::AS)
        }
        (_, true, false) if n >= 2 && ev.inner_induced == Some(true) => {
            ev.note = "K = 1, H·C_G(M) ⊇ M".into();
            Some(OnanScottType::HC)
        }
        (_, true, true) if n >= 2 => {
            ev.note = "K = 1 with trivial centralizer".into();
            Some(OnanScottType::TW)
        }
        (_, false, true) if n >= 2 && all_full && diag_rank == Some(1) => {
            ev.note = "K a full diagonal".into();
            Some(OnanScottType::SD)
        }
        (_, false, true) if n >= 2 && all_full && diag_rank.is_some_and(|j| j >= 2) => {
            ev.note = format!("K a product of {} diagonals", diag_rank.unwrap_or(0));
            Some(OnanScottType::CD)
        }
        (_, false, true) if n >= 2 && all_partial => {
            ev.note = "K projects onto a proper nontrivial subgroup of each component".into();
            Some(OnanScottType::PA)
        }
        _ => None,
    };
    match tag {
        Some(tag) => Ok(OnanScottTag { tag, evidence: ev }),
        None => Err(CoreError::Unclassifiable(format!(
            "{n} components of order {s_order}, |K| = {}, |C_G(M)| = {}, projections {:?}",
            k.order(),
            c.order(),
            ev.projection_orders
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alternating, direct_product};
    use crate::irreducible::analyze_irreducible;

    #[test]
    fn square_of_a5_with_diagonal_is_hs() {
        let a5 = alternating(5).unwrap();
        let g = direct_product(&a5, &a5).unwrap();
        let diag: Vec<_> = a5
            .generator_permutations()
            .iter()
            .map(|p| {
                let mut im = p.images().to_vec();
                im.extend(p.images().iter().map(|&x| x + 5));
                g.id_of(&im).unwrap()
            })
            .collect();
        let h = g.closure(&diag).unwrap();
        assert_eq!(h.order(), 60);
        let r = analyze_irreducible(&g, &h).unwrap();
        assert!(r.faithful);
        assert_eq!(r.minimal_normals.len(), 2);
        assert!(r.monolith.is_none());
        let t = r.onan_scott.clone().unwrap();
        assert_eq!(t.tag, OnanScottType::HS);
        assert_eq!(t.evidence.centralizer_order, 60);
        assert_eq!(t.evidence.inner_induced, Some(true));
    }
}
