//! Test-instance generators: diagonal-type pairs, twisted wreath products,
//! and the plain wreath product used as an oracle for the latter.

use std::collections::BTreeMap;

use crate::cosets::left_cosets;
use crate::error::{CoreError, Result};
use crate::group::{ElementId, FiniteGroup};
use crate::perm::Permutation;
use crate::subgroup::{bitset, Subgroup};

fn check_order(caps_order: usize, order: u128) -> Result<()> {
    if order > caps_order as u128 {
        Err(CoreError::OrderCapExceeded { cap: caps_order })
    } else {
        Ok(())
    }
}

/// A diagonal-type pair `(G, H)` with socle `M = S^k` and diagonal `M ∩ H`.
pub struct SdPair {
    pub group: FiniteGroup,
    pub h: Subgroup,
    pub socle: Subgroup,
    pub diagonal: Subgroup,
}

/// `G = S^k ⋊ Top` acting on the cosets of the diagonal of `S^k`, which is
/// the quotient of `M ⋊ (S* ⋊ Top)` by the antidiagonal copy of `S*`.
/// Points are `(k−1)`-tuples: the coset of `(x_1, …, x_k)` is stored as
/// `(x_1 x_k⁻¹, …, x_{k−1} x_k⁻¹)`. `H` is the stabilizer of the identity
/// tuple.
///
/// For `k = 1` there is one point; the pair degenerates to `S` acting on
/// itself by conjugation with `H = G`.
pub fn sd_construct(s: &FiniteGroup, k: usize, top: &FiniteGroup) -> Result<SdPair> {
    if k == 0 {
        return Err(CoreError::PreconditionFailed("k must be positive".into()));
    }
    if top.degree() != k && !(k == 1 && top.order() == 1) {
        return Err(CoreError::PreconditionFailed(format!(
            "Top acts on {} points, expected {k}",
            top.degree()
        )));
    }
    let mut reached = vec![false; k];
    reached[0] = true;
    let mut stack = vec![0u32];
    while let Some(x) = stack.pop() {
        for &t in top.generators() {
            let y = top.perm(t)[x as usize] as usize;
            if !reached[y] {
                reached[y] = true;
                stack.push(y as u32);
            }
        }
    }
    if reached.iter().any(|r| !r) {
        return Err(CoreError::PreconditionFailed("Top is not transitive".into()));
    }
    let n = s.order();
    let caps = s.caps();
    check_order(caps.order, (n as u128).pow(k as u32) * top.order() as u128)?;

    if k == 1 {
        let gens = s
            .generators()
            .iter()
            .map(|&g| Permutation::new(s.elements().map(|x| s.conj(g, x)).collect()))
            .collect::<Result<Vec<_>>>()?;
        let g = FiniteGroup::generate(n.max(1), &gens, caps)?
            .with_name(format!("sd({},1)", s.label()));
        let whole = Subgroup::whole(&g);
        return Ok(SdPair {
            socle: whole.clone(),
            diagonal: whole.clone(),
            h: whole,
            group: g,
        });
    }

    let points = n.pow(k as u32 - 1);
    let decode = |mut p: usize| -> Vec<ElementId> {
        let mut t = vec![0; k];
        for slot in t.iter_mut().take(k - 1) {
            *slot = (p % n) as ElementId;
            p /= n;
        }
        t
    };
    let encode = |t: &[ElementId]| -> u32 {
        let last = s.inv(t[k - 1]);
        t[..k - 1]
            .iter()
            .rev()
            .fold(0usize, |acc, &x| acc * n + s.mul(x, last) as usize) as u32
    };
    let build = |f: &dyn Fn(&mut Vec<ElementId>)| -> Result<Permutation> {
        Permutation::new(
            (0..points)
                .map(|p| {
                    let mut t = decode(p);
                    f(&mut t);
                    encode(&t)
                })
                .collect(),
        )
    };
    let mut coord_gens = Vec::new();
    for i in 0..k {
        for &x in s.generators() {
            coord_gens.push(build(&|t: &mut Vec<ElementId>| t[i] = s.mul(x, t[i]))?);
        }
    }
    let mut gens = coord_gens.clone();
    for &pi in top.generators() {
        let img = top.perm(pi).to_vec();
        gens.push(build(&|t: &mut Vec<ElementId>| {
            let old = t.clone();
            for (j, &x) in old.iter().enumerate() {
                t[img[j] as usize] = x;
            }
        })?);
    }
    let g = FiniteGroup::generate(points, &gens, caps)?
        .with_name(format!("sd({},{k},{})", s.label(), top.label()));
    let coord_ids: Vec<ElementId> = coord_gens
        .iter()
        .map(|p| g.require(p))
        .collect::<Result<_>>()?;
    let socle = g.closure(&coord_ids)?;
    let h = Subgroup::from_members_unchecked(&g, bitset(&g, g.elements().filter(|&x| g.perm(x)[0] == 0)));
    let diagonal = socle.intersection(&g, &h);
    if !g.centralizer(&socle).is_trivial() {
        return Err(CoreError::InvariantViolation(
            "diagonal-type group has a nontrivial socle centralizer".into(),
        ));
    }
    Ok(SdPair {
        group: g,
        h,
        socle,
        diagonal,
    })
}

/// `B ⋊ H` with `B = {f : H → S | f(hk) = φ(k⁻¹)(f(h)) for k ∈ H₁}`.
pub struct TwistedWreath {
    pub group: FiniteGroup,
    /// The embedded copy of `H`.
    pub h: Subgroup,
    pub base: Subgroup,
    /// Left coset representatives of `H₁` in `H`, as ids of `H`.
    pub representatives: Vec<ElementId>,
    s_order: usize,
    /// For each id `x` of `H`: `(i, k)` with `x = r_i·k`.
    decomposition: Vec<(usize, ElementId)>,
    /// `φ(k)` as a permutation of `S`'s ids, for `k ∈ H₁`.
    phi: Vec<Option<Vec<u32>>>,
    /// `(h, hk, k⁻¹)` for all `h ∈ H`, `k ∈ H₁`.
    law: Vec<(ElementId, ElementId, ElementId)>,
}

impl TwistedWreath {
    pub fn coordinates(&self) -> usize {
        self.representatives.len()
    }

    /// The function `H → S` of a base element, indexed by ids of `H`.
    pub fn base_function(&self, b: ElementId) -> Result<Vec<ElementId>> {
        if !self.base.contains(b) {
            return Err(CoreError::NotAnElement("not in the base group".into()));
        }
        let p = self.group.perm(b);
        let at_rep: Vec<ElementId> = (0..self.coordinates())
            .map(|i| p[i * self.s_order] - (i * self.s_order) as u32)
            .collect();
        Ok(self
            .decomposition
            .iter()
            .map(|&(i, k)| {
                let kinv = self.law.iter().find(|t| t.0 == 0 && t.1 == k).map_or(0, |t| t.2);
                self.phi[kinv as usize].as_ref().expect("k in H1")[at_rep[i] as usize]
            })
            .collect())
    }

    /// Whether `f` obeys `f(hk) = φ(k⁻¹)(f(h))` for every `h ∈ H`, `k ∈ H₁`.
    pub fn satisfies_law(&self, f: &[ElementId]) -> bool {
        f.len() == self.decomposition.len()
            && self.law.iter().all(|&(h, hk, kinv)| {
                f[hk as usize] == self.phi[kinv as usize].as_ref().expect("k in H1")[f[h as usize] as usize]
            })
    }
}

/// Builds the twisted wreath product on `([m] × S) ⊔ points(H)`, with `S`
/// acting regularly on each coordinate. `phi` gives one automorphism of `S`
/// (as a permutation of element ids) per generator of `H₁`.
pub fn twisted_wreath_construct(
    s: &FiniteGroup,
    h: &FiniteGroup,
    h1: &Subgroup,
    phi: &[Vec<u32>],
) -> Result<TwistedWreath> {
    h1.check(h)?;
    if phi.len() != h1.generators().len() {
        return Err(CoreError::NotAHomomorphism(format!(
            "{} automorphisms for {} generators of H1",
            phi.len(),
            h1.generators().len()
        )));
    }
    let n = s.order();
    for (i, a) in phi.iter().enumerate() {
        let ok = a.len() == n
            && Permutation::new(a.clone()).is_ok()
            && s.elements()
                .all(|x| s.elements().all(|y| a[s.mul(x, y) as usize] == s.mul(a[x as usize], a[y as usize])));
        if !ok {
            return Err(CoreError::NotAHomomorphism(format!(
                "phi[{i}] is not an automorphism of S"
            )));
        }
    }
    // extend phi over H1 along the Cayley graph, checking every edge
    let mut table: Vec<Option<Vec<u32>>> = vec![None; h.order()];
    table[0] = Some((0..n as u32).collect());
    let mut queue = vec![0 as ElementId];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, a) in h1.generators().iter().zip(phi) {
            let y = h.mul(x, g);
            let fx = table[x as usize].as_ref().expect("visited");
            let fy: Vec<u32> = (0..n).map(|p| fx[a[p] as usize]).collect();
            match &table[y as usize] {
                Some(existing) if *existing != fy => {
                    return Err(CoreError::NotAHomomorphism(
                        "phi does not extend to a homomorphism on H1".into(),
                    ))
                }
                Some(_) => {}
                None => {
                    table[y as usize] = Some(fy);
                    queue.push(y);
                }
            }
        }
    }

    let cosets = left_cosets(h, h1);
    let reps = cosets.representatives();
    let m = reps.len();
    check_order(s.caps().order, (n as u128).pow(m as u32) * h.order() as u128)?;
    let decomposition: Vec<(usize, ElementId)> = h
        .elements()
        .map(|x| {
            let i = cosets.block_of(x);
            (i, h.mul(h.inv(reps[i]), x))
        })
        .collect();
    let law = h
        .elements()
        .flat_map(|x| h1.members().iter().map(move |&k| (x, k)))
        .map(|(x, k)| (x, h.mul(x, k), h.inv(k)))
        .collect();

    let base_len = m * n;
    let degree = base_len + h.degree();
    let mut base_gens = Vec::new();
    for i in 0..m {
        for &x in s.generators() {
            let mut im: Vec<u32> = (0..degree as u32).collect();
            for y in s.elements() {
                im[i * n + y as usize] = (i * n) as u32 + s.mul(x, y);
            }
            base_gens.push(Permutation::new(im)?);
        }
    }
    let mut top_gens = Vec::new();
    for &t in h.generators() {
        let mut im: Vec<u32> = (0..degree as u32).collect();
        for (i, &r) in reps.iter().enumerate() {
            let (j, k) = decomposition[h.mul(t, r) as usize];
            let a = table[k as usize].as_ref().expect("k in H1");
            for y in 0..n {
                im[i * n + y] = (j * n) as u32 + a[y];
            }
        }
        for (p, &q) in h.perm(t).iter().enumerate() {
            im[base_len + p] = base_len as u32 + q;
        }
        top_gens.push(Permutation::new(im)?);
    }
    let all: Vec<Permutation> = base_gens.iter().chain(&top_gens).cloned().collect();
    let g = FiniteGroup::generate(degree, &all, s.caps())?
        .with_name(format!("twisted_wreath({},{})", s.label(), h.label()));
    let expected = n.pow(m as u32) * h.order();
    if g.order() != expected {
        return Err(CoreError::InvariantViolation(format!(
            "twisted wreath has order {}, expected {expected}",
            g.order()
        )));
    }
    let ids = |ps: &[Permutation]| ps.iter().map(|p| g.require(p)).collect::<Result<Vec<_>>>();
    let base = g.closure(&ids(&base_gens)?)?;
    let hh = g.closure(&ids(&top_gens)?)?;
    if base.order() != n.pow(m as u32) || hh.order() != h.order() {
        return Err(CoreError::InvariantViolation(
            "base or top has the wrong order".into(),
        ));
    }
    Ok(TwistedWreath {
        group: g,
        h: hh,
        base,
        representatives: reps,
        s_order: n,
        decomposition,
        phi: table,
        law,
    })
}

/// `S wr C_m` in its imprimitive action on `m` copies of `S`'s points.
pub fn wreath_product(s: &FiniteGroup, m: usize) -> Result<FiniteGroup> {
    let d = s.degree();
    check_order(s.caps().order, (s.order() as u128).pow(m as u32) * m as u128)?;
    let total = d * m;
    let mut gens = Vec::new();
    for i in 0..m {
        for p in s.generator_permutations() {
            let mut im: Vec<u32> = (0..total as u32).collect();
            for (x, &y) in p.images().iter().enumerate() {
                im[i * d + x] = (i * d) as u32 + y;
            }
            gens.push(Permutation::new(im)?);
        }
    }
    if m > 1 {
        gens.push(Permutation::new(
            (0..total).map(|x| ((x + d) % total) as u32).collect(),
        )?);
    }
    Ok(FiniteGroup::generate(total.max(1), &gens, s.caps())?
        .with_name(format!("wreath({},{m})", s.label())))
}

/// Order, conjugacy class count, and element-order histogram.
pub fn isomorphism_invariants(g: &FiniteGroup) -> (usize, usize, BTreeMap<usize, usize>) {
    let mut hist = BTreeMap::new();
    for x in g.elements() {
        *hist.entry(g.element_order(x)).or_insert(0) += 1;
    }
    (g.order(), g.conjugacy_classes().len(), hist)
}
