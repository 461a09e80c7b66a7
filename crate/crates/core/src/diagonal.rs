//! Normal subgroups of `G` against overgroups of the diagonal in `G × G`,
//! and chief series.

use serde::{Deserialize, Serialize};

use crate::cosets::left_cosets;
use crate::error::{CoreError, Result};
use crate::families::direct_product;
use crate::group::{ElementId, FiniteGroup};
use crate::lattice::subgroup_lattice;
use crate::subgroup::{bitset, Subgroup};

/// `G`, its square `G × G` on two copies of the point set, the diagonal
/// `Δ = {(g,g)}` and the embedding `ι(g) = (g,1)`.
pub struct DiagonalContext<'a> {
    pub base: &'a FiniteGroup,
    pub square: FiniteGroup,
    pub delta: Subgroup,
    /// `iota[g]` is the id of `(g,1)` in the square.
    pub iota: Vec<ElementId>,
    /// `diag[g]` is the id of `(g,g)`.
    pub diag: Vec<ElementId>,
    /// Coordinates of every element of the square.
    pub pairs: Vec<(ElementId, ElementId)>,
}

impl<'a> DiagonalContext<'a> {
    pub fn new(base: &'a FiniteGroup) -> Result<Self> {
        let n = base.order();
        if (n as u128) * (n as u128) > base.caps().order as u128 {
            return Err(CoreError::OrderCapExceeded {
                cap: base.caps().order,
            });
        }
        let square = direct_product(base, base)?;
        let d = base.degree();
        let id_of_pair = |a: ElementId, b: ElementId| {
            let mut images = base.perm(a).to_vec();
            images.extend(base.perm(b).iter().map(|&x| x + d as u32));
            square.id_of(&images).expect("pair lies in the square")
        };
        let iota: Vec<ElementId> = base.elements().map(|g| id_of_pair(g, 0)).collect();
        let diag: Vec<ElementId> = base.elements().map(|g| id_of_pair(g, g)).collect();
        let pairs = square
            .elements()
            .map(|x| {
                let p = square.perm(x);
                let a = base.id_of(&p[..d]).expect("left coordinate");
                let right: Vec<u32> = p[d..].iter().map(|&y| y - d as u32).collect();
                let b = base.id_of(&right).expect("right coordinate");
                (a, b)
            })
            .collect();
        let delta_gens: Vec<ElementId> = base.generators().iter().map(|&s| diag[s as usize]).collect();
        let delta = square.closure(&delta_gens)?;
        Ok(DiagonalContext {
            base,
            square,
            delta,
            iota,
            diag,
            pairs,
        })
    }

    /// `θ(N) = ι(N)Δ` for a normal subgroup `N` of `G`.
    pub fn theta(&self, n: &Subgroup) -> Result<Subgroup> {
        n.check(self.base)?;
        if !n.is_normal(self.base) {
            return Err(CoreError::NotNormal);
        }
        let seed: Vec<ElementId> = n
            .generators()
            .iter()
            .map(|&x| self.iota[x as usize])
            .chain(self.delta.generators().iter().copied())
            .collect();
        let t = self.square.closure(&seed)?;
        if t.order() != n.order() * self.base.order() {
            return Err(CoreError::InvariantViolation("|ι(N)Δ| ≠ |N|·|G|".into()));
        }
        Ok(t)
    }

    /// `θ⁻¹(K) = ι⁻¹(K)` for a subgroup `K` of the square containing `Δ`.
    pub fn theta_inverse(&self, k: &Subgroup) -> Result<Subgroup> {
        k.check(&self.square)?;
        if !self.delta.is_subgroup_of(k) {
            return Err(CoreError::NotAboveDelta);
        }
        let bits = bitset(
            self.base,
            self.base.elements().filter(|&g| k.contains(self.iota[g as usize])),
        );
        let n = Subgroup::from_members_unchecked(self.base, bits);
        if !n.is_normal(self.base) {
            return Err(CoreError::InvariantViolation("ι⁻¹(K) is not normal".into()));
        }
        Ok(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaDirection {
    Forward,
    Backward,
}

pub fn theta(ctx: &DiagonalContext<'_>, x: &Subgroup, direction: ThetaDirection) -> Result<Subgroup> {
    match direction {
        ThetaDirection::Forward => ctx.theta(x),
        ThetaDirection::Backward => ctx.theta_inverse(x),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub normal_count: usize,
    pub upset_count: usize,
    pub bijective: bool,
    pub order_preserving: bool,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.order_preserving
    }
}

/// Checks that `θ` is a containment-preserving bijection between the normal
/// subgroups of `G` and the subgroups of `G × G` above `Δ`.
pub fn verify_theta_order_iso(ctx: &DiagonalContext<'_>) -> Result<ThetaReport> {
    let normals = ctx.base.normal_subgroups()?;
    let up = subgroup_lattice(&ctx.square, Some(&ctx.delta))?;
    let images = normals.iter().map(|n| ctx.theta(n)).collect::<Result<Vec<_>>>()?;
    let mut bijective = normals.len() == up.len();
    let mut hit = vec![false; up.len()];
    for (n, t) in normals.iter().zip(&images) {
        match up.index_of(t) {
            Some(i) if !hit[i] => hit[i] = true,
            _ => bijective = false,
        }
        if ctx.theta_inverse(t)? != *n {
            bijective = false;
        }
    }
    for k in up.nodes() {
        let n = ctx.theta_inverse(k)?;
        if ctx.theta(&n)? != *k {
            bijective = false;
        }
    }
    let mut order_preserving = true;
    for (a, ta) in normals.iter().zip(&images) {
        for (b, tb) in normals.iter().zip(&images) {
            if a.is_subgroup_of(b) != ta.is_subgroup_of(tb) {
                order_preserving = false;
            }
        }
    }
    Ok(ThetaReport {
        normal_count: normals.len(),
        upset_count: up.len(),
        bijective,
        order_preserving,
    })
}

/// Checks that `φ(mN) = ι(m)θ(N)` is a bijection `M/N → θ(M)/θ(N)` taking
/// conjugation by `g` to left translation by `(g,g)`.
pub fn factor_equivalence_check(ctx: &DiagonalContext<'_>, m: &Subgroup, n: &Subgroup) -> Result<bool> {
    let g = ctx.base;
    m.check(g)?;
    n.check(g)?;
    if !n.is_subgroup_of(m) {
        return Err(CoreError::NotAChain("N is not contained in M".into()));
    }
    let tm = ctx.theta(m)?;
    let tn = ctx.theta(n)?;
    let small = left_cosets(g, n);
    let big = left_cosets(&ctx.square, &tn);
    let phi = |x: ElementId| big.block_of(ctx.iota[x as usize]);

    let mut image_of = vec![usize::MAX; small.len()];
    for &x in m.members() {
        let c = small.block_of(x);
        let p = phi(x);
        if image_of[c] != usize::MAX && image_of[c] != p {
            return Ok(false);
        }
        image_of[c] = p;
        if !tm.contains(ctx.iota[x as usize]) {
            return Ok(false);
        }
    }
    let mut images: Vec<usize> = image_of.into_iter().filter(|&p| p != usize::MAX).collect();
    let domain = images.len();
    images.sort_unstable();
    images.dedup();
    let codomain = tm.order() / tn.order();
    if images.len() != domain || domain != codomain {
        return Ok(false);
    }
    for a in g.elements() {
        let da = ctx.diag[a as usize];
        for &x in m.members() {
            let lhs = phi(g.conj(a, x));
            let rhs = big.block_of(ctx.square.mul(da, ctx.iota[x as usize]));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A chief series `1 = N_0 < … < N_r = G`: each step moves to the least
/// (by member-id set) minimal normal subgroup properly above the current one.
///
/// When the square fits the lattice cap, the image chain under `θ` is also
/// checked to be a maximal chain above `Δ`.
pub fn chief_series(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let normals = g.normal_subgroups()?;
    let mut series = vec![Subgroup::trivial(g)];
    loop {
        let cur = series.last().expect("nonempty");
        if cur.order() == g.order() {
            break;
        }
        let above: Vec<&Subgroup> = normals.iter().filter(|n| cur.is_proper_subgroup_of(n)).collect();
        let next = above
            .iter()
            .filter(|n| !above.iter().any(|m| m.is_proper_subgroup_of(n)))
            .min_by(|a, b| a.members().cmp(b.members()))
            .expect("G lies above every proper normal subgroup");
        series.push((*next).clone());
    }
    if g.order() * g.order() <= g.caps().lattice {
        let ctx = DiagonalContext::new(g)?;
        let up = subgroup_lattice(&ctx.square, Some(&ctx.delta))?;
        for w in series.windows(2) {
            let (a, b) = (ctx.theta(&w[0])?, ctx.theta(&w[1])?);
            let (ia, ib) = (up.index_of(&a), up.index_of(&b));
            match (ia, ib) {
                (Some(i), Some(j)) if up.covers()[i].contains(&j) => {}
                _ => {
                    return Err(CoreError::InvariantViolation(
                        "θ image of a chief factor is not a cover above Δ".into(),
                    ))
                }
            }
        }
    }
    Ok(series)
}
