use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::group::{Caps, FiniteGroup};
use crate::perm::Permutation;
use crate::subgroup::{bitset, is_mul_closed, Subgroup};
use crate::thickening::thickening;

pub const MAX_BALL_VERTICES: usize = 64;

/// Radius-`R` ball in the `d`-regular tree, vertices numbered breadth-first
/// from the center 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeBall {
    pub d: usize,
    pub radius: usize,
    pub parent: Vec<Option<u32>>,
    pub children: Vec<Vec<u32>>,
    pub depth: Vec<usize>,
}

impl TreeBall {
    pub fn new(d: usize, radius: usize) -> Result<TreeBall> {
        if d < 2 {
            return Err(CoreError::PreconditionFailed("tree degree must be at least 2".into()));
        }
        let mut ball = TreeBall {
            d,
            radius,
            parent: vec![None],
            children: vec![Vec::new()],
            depth: vec![0],
        };
        let mut frontier = vec![0u32];
        for level in 1..=radius {
            let mut next = Vec::new();
            for &v in &frontier {
                let n = if v == 0 { d } else { d - 1 };
                for _ in 0..n {
                    let c = ball.parent.len() as u32;
                    if c as usize >= MAX_BALL_VERTICES {
                        return Err(CoreError::PreconditionFailed(format!(
                            "ball has more than {MAX_BALL_VERTICES} vertices"
                        )));
                    }
                    ball.parent.push(Some(v));
                    ball.children.push(Vec::new());
                    ball.depth.push(level);
                    ball.children[v as usize].push(c);
                    next.push(c);
                }
            }
            frontier = next;
        }
        Ok(ball)
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn neighbours(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.parent[v as usize]
            .into_iter()
            .chain(self.children[v as usize].iter().copied())
    }

    /// Vertices at distance at most `k` from `v`, ascending.
    pub fn ball_around(&self, v: u32, k: usize) -> Vec<u32> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[v as usize] = 0;
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            if dist[x as usize] == k {
                continue;
            }
            for y in self.neighbours(x) {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    queue.push_back(y);
                }
            }
        }
        (0..self.vertex_count() as u32)
            .filter(|&x| dist[x as usize] <= k)
            .collect()
    }

    /// Writes the subtree isomorphism `a → b` (matching children in order)
    /// into `images`, in both directions.
    fn swap_subtrees(&self, a: u32, b: u32, images: &mut [u32]) {
        images[a as usize] = b;
        images[b as usize] = a;
        let (ca, cb) = (&self.children[a as usize], &self.children[b as usize]);
        for (&x, &y) in ca.iter().zip(cb) {
            self.swap_subtrees(x, y, images);
        }
    }
}

/// Automorphism group of the ball as a permutation group on its vertices,
/// generated by swapping adjacent sibling subtrees.
pub fn ball_aut_group(ball: &TreeBall) -> Result<FiniteGroup> {
    ball_aut_group_with(ball, Caps::default())
}

pub fn ball_aut_group_with(ball: &TreeBall, caps: Caps) -> Result<FiniteGroup> {
    let n = ball.vertex_count();
    let mut gens = Vec::new();
    for v in 0..n {
        for pair in ball.children[v].windows(2) {
            let mut images: Vec<u32> = (0..n as u32).collect();
            ball.swap_subtrees(pair[0], pair[1], &mut images);
            gens.push(Permutation::new(images)?);
        }
    }
    Ok(FiniteGroup::generate(n, &gens, caps)?
        .with_name(format!("aut(ball({},{}))", ball.d, ball.radius)))
}

/// Pointwise fixator of the radius-`k` ball around `v`.
pub fn ball_fixator(g: &FiniteGroup, ball: &TreeBall, v: u32, k: usize) -> Result<Subgroup> {
    if v as usize >= ball.vertex_count() || k > 2 * ball.radius {
        return Err(CoreError::PreconditionFailed(format!(
            "need v < {} and k <= {}",
            ball.vertex_count(),
            2 * ball.radius
        )));
    }
    let region = ball.ball_around(v, k);
    let members = g
        .elements()
        .filter(|&x| region.iter().all(|&w| g.perm(x)[w as usize] == w));
    Ok(Subgroup::from_members_unchecked(g, bitset(g, members)))
}

#[derive(Debug, Clone)]
pub struct PkClosure {
    /// Elements agreeing with some element of `H` on every `k`-ball.
    pub direct: Subgroup,
    /// Intersection of the fixator thickenings over orbit representatives.
    pub via_thickening: Subgroup,
    /// Least vertex of each `H`-orbit.
    pub representatives: Vec<u32>,
    pub agree: bool,
}

/// The `P_k`-closure of `H`, computed directly and as an intersection of
/// thickenings. Disagreement is reported through `agree`, not raised.
pub fn pk_closure(g: &FiniteGroup, ball: &TreeBall, h: &Subgroup, k: usize) -> Result<PkClosure> {
    h.check(g)?;
    let n = ball.vertex_count();
    let k = k.min(2 * ball.radius);

    let mut direct = bitset(g, g.elements());
    for v in 0..n as u32 {
        let region = ball.ball_around(v, k);
        let restrict = |x| -> Vec<u32> { region.iter().map(|&w| g.perm(x)[w as usize]).collect() };
        let seen: HashSet<Vec<u32>> = h.members().iter().map(|&x| restrict(x)).collect();
        for x in g.elements() {
            if direct.contains(x as usize) && !seen.contains(&restrict(x)) {
                direct.set(x as usize, false);
            }
        }
    }
    if !is_mul_closed(g, &direct) {
        return Err(CoreError::InvariantViolation(
            "direct P_k closure is not closed under multiplication".into(),
        ));
    }
    let direct = Subgroup::from_members_unchecked(g, direct);

    let mut representatives = Vec::new();
    let mut covered = vec![false; n];
    for v in 0..n {
        if covered[v] {
            continue;
        }
        representatives.push(v as u32);
        for &x in h.members() {
            covered[g.perm(x)[v] as usize] = true;
        }
    }
    let mut via = Subgroup::whole(g);
    for &v in &representatives {
        let fix = ball_fixator(g, ball, v, k)?;
        via = via.intersection(g, &thickening(g, h, &fix)?);
    }
    let agree = via == direct;
    Ok(PkClosure {
        direct,
        via_thickening: via,
        representatives,
        agree,
    })
}
