//! Faithful irreducible coset spaces: faithful form, minimal normal
//! subgroups, monolith, free/supplement/complement flags, and the four-way
//! case split.

mod constructions;
mod typing;

pub use constructions::{
    isomorphism_invariants, sd_construct, twisted_wreath_construct, wreath_product, SdPair,
    TwistedWreath,
};
pub use typing::{onan_scott_type, OnanScottTag, OnanScottType, TypingEvidence};

use serde::{Deserialize, Serialize};

use crate::cosets::coset_action;
use crate::error::{CoreError, Result};
use crate::group::{ElementId, FiniteGroup};
use crate::maximal::is_maximal_subgroup;
use crate::perm::Permutation;
use crate::subgroup::{bitset, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IrreducibleCase {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "iv")]
    IV,
}

impl std::fmt::Display for IrreducibleCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IrreducibleCase::I => "i",
            IrreducibleCase::II => "ii",
            IrreducibleCase::III => "iii",
            IrreducibleCase::IV => "iv",
        })
    }
}

/// `G/core` acting on the cosets of `H`, with `H/core` as a point stabilizer.
pub struct FaithfulForm {
    pub group: FiniteGroup,
    pub h: Subgroup,
}

#[derive(Debug, Clone)]
pub struct NormalFlags {
    pub subgroup: Subgroup,
    /// `N ∩ H = 1`.
    pub free: bool,
    /// `NH = G`.
    pub supplement: bool,
    pub complement: bool,
    pub centralizer: Subgroup,
    pub centralizer_in_h: Subgroup,
}

/// Evidence for the case assignment: which minimal normal subgroup was used
/// and, in case (i), the map `C_G(M) → M` sending `c = m·h` to `m⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseEvidence {
    pub designated: usize,
    pub split: bool,
    pub centralizer_order: usize,
    pub map_is_bijective_homomorphism: bool,
    pub cases_holding: Vec<IrreducibleCase>,
}

pub struct IrreducibleReport {
    pub core: Subgroup,
    pub faithful: bool,
    /// Present when the core is nontrivial; every later field refers to it.
    pub faithful_form: Option<FaithfulForm>,
    /// `H` in the group the analysis ran on.
    pub h: Subgroup,
    pub irreducible: bool,
    pub minimal_normals: Vec<Subgroup>,
    pub monolith: Option<Subgroup>,
    pub per_normal: Vec<NormalFlags>,
    pub case: IrreducibleCase,
    pub evidence: CaseEvidence,
    pub onan_scott: Option<OnanScottTag>,
    /// Why typing failed, if it did.
    pub typing_error: Option<String>,
}

impl IrreducibleReport {
    /// The group the analysis ran on: the faithful form if one was built.
    pub fn group<'a>(&'a self, original: &'a FiniteGroup) -> &'a FiniteGroup {
        self.faithful_form.as_ref().map_or(original, |f| &f.group)
    }

    pub fn designated(&self) -> &Subgroup {
        &self.minimal_normals[self.evidence.designated]
    }
}

/// The action of `G` on `G/H` as a permutation group.
pub fn faithful_form(g: &FiniteGroup, h: &Subgroup) -> Result<FaithfulForm> {
    h.check(g)?;
    let act = coset_action(g, &Subgroup::whole(g), h);
    let gens = act
        .images
        .into_iter()
        .map(Permutation::new)
        .collect::<Result<Vec<_>>>()?;
    let q = FiniteGroup::generate(act.degree.max(1), &gens, g.caps())?
        .with_name(format!("{} on cosets", g.label()));
    let stab = bitset(&q, q.elements().filter(|&x| q.perm(x)[0] == 0));
    let hq = Subgroup::from_members_unchecked(&q, stab);
    Ok(FaithfulForm { group: q, h: hq })
}

/// Whether `NH` is all of `G`, by counting `|N||H|/|N∩H|`.
fn product_is_whole(g: &FiniteGroup, n: &Subgroup, h: &Subgroup) -> bool {
    let nh = n.intersection(g, h);
    n.order() * h.order() / nh.order() == g.order()
}

/// For `G = M ⋊ H`: the map `C_G(M) → M`, `m·h ↦ m⁻¹`, checked to be a
/// bijective homomorphism.
fn centralizer_map_is_iso(g: &FiniteGroup, m: &Subgroup, h: &Subgroup, c: &Subgroup) -> bool {
    if c.order() != m.order() {
        return false;
    }
    let mut image = vec![u32::MAX; g.order()];
    for &x in c.members() {
        let found = m.members().iter().find_map(|&a| {
            let b = g.mul(g.inv(a), x);
            h.contains(b).then_some(g.inv(a))
        });
        match found {
            Some(y) => image[x as usize] = y,
            None => return false,
        }
    }
    let mut seen = bitset(g, std::iter::empty());
    for &x in c.members() {
        if seen.put(image[x as usize] as usize) {
            return false;
        }
    }
    c.members().iter().all(|&x| {
        c.members()
            .iter()
            .all(|&y| image[g.mul(x, y) as usize] == g.mul(image[x as usize], image[y as usize]))
    })
}

/// Analyses `G/H` for `H < G` maximal: reduces to the faithful form, lists
/// minimal normal subgroups, and assigns exactly one of the four cases.
pub fn analyze_irreducible(g: &FiniteGroup, h: &Subgroup) -> Result<IrreducibleReport> {
    h.check(g)?;
    if h.order() == g.order() {
        return Err(CoreError::PreconditionFailed("H must be a proper subgroup".into()));
    }
    let verdict = is_maximal_subgroup(g, h)?;
    if !verdict.maximal {
        let witness = verdict
            .witness
            .map(|w| format!("intermediate subgroup of order {}", w.order()))
            .unwrap_or_else(|| "intermediate subgroup".into());
        return Err(CoreError::NotMaximal { witness });
    }
    let core = g.core_of(h);
    let faithful = core.is_trivial();
    let form = if faithful { None } else { Some(faithful_form(g, h)?) };
    let (w, wh) = match &form {
        Some(f) => (&f.group, f.h.clone()),
        None => (g, h.clone()),
    };

    let normals = w.normal_subgroups()?;
    let minimal_normals = w.minimal_normal_subgroups()?;
    let nontrivial: Vec<&Subgroup> = normals.iter().filter(|n| !n.is_trivial()).collect();
    let monolith = {
        let mut bits = bitset(w, w.elements());
        for n in &nontrivial {
            bits.intersect_with(n.bits());
        }
        let m = Subgroup::from_members_unchecked(w, bits);
        (!m.is_trivial()).then_some(m)
    };
    let per_normal: Vec<NormalFlags> = nontrivial
        .iter()
        .map(|n| {
            let free = n.intersection(w, &wh).is_trivial();
            let supplement = product_is_whole(w, n, &wh);
            let centralizer = w.centralizer(n);
            let centralizer_in_h = centralizer.intersection(w, &wh);
            NormalFlags {
                subgroup: (*n).clone(),
                free,
                supplement,
                complement: free && supplement,
                centralizer,
                centralizer_in_h,
            }
        })
        .collect();

    // case (iii): some minimal normal M with trivial centralizer, equal to
    // the intersection of all nontrivial normal subgroups
    let case_iii = minimal_normals.iter().position(|m| {
        w.centralizer(m).is_trivial() && monolith.as_ref() == Some(m)
    });
    // case (i): some minimal normal M complementing H with C_G(M) ≅ M via
    // the semidirect decomposition
    let split_ok = |m: &Subgroup| {
        m.intersection(w, &wh).is_trivial() && product_is_whole(w, m, &wh)
    };
    let case_i = minimal_normals.iter().position(|m| {
        split_ok(m) && centralizer_map_is_iso(w, m, &wh, &w.centralizer(m))
    });
    // (ii) needs a group without nontrivial finite normal subgroups and (iv)
    // an empty M_G; neither happens for a nontrivial finite group
    let case_ii = false;
    let case_iv = minimal_normals.is_empty();

    let mut holding = Vec::new();
    if case_i.is_some() {
        holding.push(IrreducibleCase::I);
    }
    if case_ii {
        holding.push(IrreducibleCase::II);
    }
    if case_iii.is_some() {
        holding.push(IrreducibleCase::III);
    }
    if case_iv {
        holding.push(IrreducibleCase::IV);
    }
    if holding.len() != 1 {
        return Err(CoreError::InvariantViolation(format!(
            "expected exactly one case, found {holding:?}"
        )));
    }
    let case = holding[0];
    let designated = match case {
        IrreducibleCase::I => case_i.expect("case (i) index"),
        IrreducibleCase::III => case_iii.expect("case (iii) index"),
        _ => unreachable!("cases (ii) and (iv) were excluded above"),
    };
    let dm = &minimal_normals[designated];
    let centralizer = w.centralizer(dm);
    let evidence = CaseEvidence {
        designated,
        split: split_ok(dm),
        centralizer_order: centralizer.order(),
        map_is_bijective_homomorphism: case == IrreducibleCase::I,
        cases_holding: holding,
    };

    let mut report = IrreducibleReport {
        core,
        faithful,
        faithful_form: form,
        h: wh,
        irreducible: true,
        minimal_normals,
        monolith,
        per_normal,
        case,
        evidence,
        onan_scott: None,
        typing_error: None,
    };
    match onan_scott_type(g, &report) {
        Ok(t) => report.onan_scott = Some(t),
        Err(e) => report.typing_error = Some(format!("{}: {e}", e.name())),
    }
    Ok(report)
}

fn require_faithful_irreducible(g: &FiniteGroup, h: &Subgroup) -> Result<()> {
    h.check(g)?;
    if h.order() == g.order() || !g.core_of(h).is_trivial() {
        return Err(CoreError::PreconditionFailed(
            "G/H must be faithful with H proper".into(),
        ));
    }
    if !is_maximal_subgroup(g, h)?.maximal {
        return Err(CoreError::PreconditionFailed("H must be maximal".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DichotomyBranch {
    /// `K ≤ H = N_G(K)`.
    #[serde(rename = "i")]
    InsideSelfNormalizing,
    /// `K` normal in `G` and not inside `H`.
    #[serde(rename = "ii")]
    NormalOutside,
}

/// For a nontrivial `H`-invariant `K` in a faithful irreducible `G/H`,
/// decides which of the two exclusive alternatives holds.
pub fn dichotomy_check(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<DichotomyBranch> {
    require_faithful_irreducible(g, h)?;
    k.check(g)?;
    if k.is_trivial() || !k.is_normalized_by(g, h.generators()) {
        return Err(CoreError::PreconditionFailed(
            "K must be a nontrivial H-invariant subgroup".into(),
        ));
    }
    let first = k.is_subgroup_of(h) && g.normalizer(k) == *h;
    let second = k.is_normal(g) && !k.is_subgroup_of(h);
    match (first, second) {
        (true, false) => Ok(DichotomyBranch::InsideSelfNormalizing),
        (false, true) => Ok(DichotomyBranch::NormalOutside),
        _ => Err(CoreError::InvariantViolation(format!(
            "dichotomy branches hold: (i) {first}, (ii) {second}"
        ))),
    }
}

/// Subgroups of `m` normalized by every element of `by`: joins of the
/// subgroups generated by single `by`-orbits.
pub fn invariant_subgroups(g: &FiniteGroup, m: &Subgroup, by: &[ElementId]) -> Vec<Subgroup> {
    let mut lookup = std::collections::HashSet::new();
    let mut atoms: Vec<Subgroup> = Vec::new();
    let mut covered = bitset(g, std::iter::empty());
    for &x in m.members() {
        if covered.contains(x as usize) {
            continue;
        }
        let mut orbit = vec![x];
        let mut seen = bitset(g, [x]);
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for &s in by {
                let z = g.conj(s, y);
                if !seen.put(z as usize) {
                    orbit.push(z);
                }
            }
        }
        let a = g.closure(&orbit).expect("ids in range");
        // every generator of a cyclic piece gives the same atom only when
        // the orbit is the same, so mark the orbit itself
        for &y in &orbit {
            covered.insert(y as usize);
        }
        if lookup.insert(a.members().to_vec()) {
            atoms.push(a);
        }
    }
    let trivial = Subgroup::trivial(g);
    if lookup.insert(trivial.members().to_vec()) {
        atoms.push(trivial);
    }
    let mut all = atoms.clone();
    let mut head = 0;
    while head < all.len() {
        let a = all[head].clone();
        head += 1;
        for b in &atoms {
            if b.is_subgroup_of(&a) {
                continue;
            }
            let j = a.join(g, b);
            if lookup.insert(j.members().to_vec()) {
                all.push(j);
            }
        }
    }
    all.sort();
    all
}

/// `M ∩ H` for `M` minimal normal in a faithful irreducible `G/H`, checked
/// exhaustively to contain every proper `H`-invariant subgroup of `M`.
pub fn largest_h_invariant(g: &FiniteGroup, h: &Subgroup, m: &Subgroup) -> Result<Subgroup> {
    require_faithful_irreducible(g, h)?;
    m.check(g)?;
    if !g.minimal_normal_subgroups()?.contains(m) {
        return Err(CoreError::PreconditionFailed(
            "M must be a minimal normal subgroup".into(),
        ));
    }
    let k = m.intersection(g, h);
    for r in invariant_subgroups(g, m, h.generators()) {
        if r.order() < m.order() && !r.is_subgroup_of(&k) {
            return Err(CoreError::InvariantViolation(
                "a proper H-invariant subgroup of M escapes M ∩ H".into(),
            ));
        }
    }
    Ok(k)
}
