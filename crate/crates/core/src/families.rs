//! Named group families, products, and the group-definition file format.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::group::{Caps, ElementId, FiniteGroup};
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

fn cycle(degree: usize, points: &[u32]) -> Permutation {
    Permutation::from_cycles(degree, &[points.to_vec()]).expect("valid cycle")
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    symmetric_with(n, Caps::default())
}

pub fn symmetric_with(n: usize, caps: Caps) -> Result<FiniteGroup> {
    let d = n.max(1);
    let gens = if n >= 2 {
        let all: Vec<u32> = (0..n as u32).collect();
        vec![cycle(d, &[0, 1]), cycle(d, &all)]
    } else {
        vec![]
    };
    Ok(FiniteGroup::generate(d, &gens, caps)?.with_name(format!("symmetric({n})")))
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    alternating_with(n, Caps::default())
}

pub fn alternating_with(n: usize, caps: Caps) -> Result<FiniteGroup> {
    let d = n.max(1);
    let gens: Vec<Permutation> = (2..n as u32).map(|i| cycle(d, &[0, 1, i])).collect();
    Ok(FiniteGroup::generate(d, &gens, caps)?.with_name(format!("alternating({n})")))
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    cyclic_with(n, Caps::default())
}

pub fn cyclic_with(n: usize, caps: Caps) -> Result<FiniteGroup> {
    let d = n.max(1);
    let gens = if n >= 2 {
        vec![cycle(d, &(0..n as u32).collect::<Vec<_>>())]
    } else {
        vec![]
    };
    Ok(FiniteGroup::generate(d, &gens, caps)?.with_name(format!("cyclic({n})")))
}

/// Symmetries of the regular `n`-gon, order `2n`. `dihedral(1)` is cyclic of
/// order 2 on two points and `dihedral(2)` the Klein four-group on four.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    dihedral_with(n, Caps::default())
}

pub fn dihedral_with(n: usize, caps: Caps) -> Result<FiniteGroup> {
    let (d, gens) = match n {
        0 => return Err(CoreError::Parse("dihedral(0) is undefined".into())),
        1 => (2, vec![cycle(2, &[0, 1])]),
        2 => (4, vec![cycle(4, &[0, 1]), cycle(4, &[2, 3])]),
        _ => {
            let rot = cycle(n, &(0..n as u32).collect::<Vec<_>>());
            let refl =
                Permutation::new((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())?;
            (n, vec![rot, refl])
        }
    };
    Ok(FiniteGroup::generate(d, &gens, caps)?.with_name(format!("dihedral({n})")))
}

/// `A × B` acting on the disjoint union of the two point sets.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let caps = a.caps();
    let (da, db) = (a.degree(), b.degree());
    let mut gens = Vec::new();
    for p in a.generator_permutations() {
        gens.push(p.extended(da + db));
    }
    for p in b.generator_permutations() {
        let mut images: Vec<u32> = (0..da as u32).collect();
        images.extend(p.images().iter().map(|&x| x + da as u32));
        gens.push(Permutation::new(images)?);
    }
    let g = FiniteGroup::generate(da + db, &gens, caps)?;
    Ok(g.with_name(format!("direct_product({},{})", a.label(), b.label())))
}

/// `N ⋊ H` where each generator of `H` acts on `N` through the
/// automorphism given as a permutation of `N`'s element ids.
///
/// Realised on `N ⊔ points(H)`: `N` acts on itself by left translation and
/// through the automorphisms, `H` on its own points. The result has order
/// `|N|·|H|` exactly when the automorphisms define a homomorphism.
pub fn semidirect(n: &FiniteGroup, h: &FiniteGroup, action: &[Vec<u32>]) -> Result<FiniteGroup> {
    if action.len() != h.generators().len() {
        return Err(CoreError::NotAHomomorphism(format!(
            "{} action permutations for {} generators",
            action.len(),
            h.generators().len()
        )));
    }
    let order_n = n.order();
    for (i, a) in action.iter().enumerate() {
        Permutation::new(a.clone())
            .ok()
            .filter(|p| p.degree() == order_n)
            .ok_or_else(|| {
                CoreError::NotAHomomorphism(format!("action {i} is not a permutation of N"))
            })?;
        for x in n.elements() {
            for y in n.elements() {
                if a[n.mul(x, y) as usize] != n.mul(a[x as usize], a[y as usize]) {
                    return Err(CoreError::NotAHomomorphism(format!(
                        "action {i} is not an automorphism of N"
                    )));
                }
            }
        }
    }
    let total = order_n + h.degree();
    let mut gens = Vec::new();
    for &s in n.generators() {
        let mut images: Vec<u32> = n.elements().map(|x| n.mul(s, x)).collect();
        images.extend(order_n as u32..total as u32);
        gens.push(Permutation::new(images)?);
    }
    for (a, p) in action.iter().zip(h.generator_permutations()) {
        let mut images = a.clone();
        images.extend(p.images().iter().map(|&x| x + order_n as u32));
        gens.push(Permutation::new(images)?);
    }
    let g = FiniteGroup::generate(total, &gens, n.caps())?;
    if g.order() != order_n * h.order() {
        return Err(CoreError::NotAHomomorphism(format!(
            "generated order {} differs from |N|·|H| = {}",
            g.order(),
            order_n * h.order()
        )));
    }
    Ok(g.with_name(format!("semidirect({},{})", n.label(), h.label())))
}

/// The power map `x ↦ x^r` on an abelian group, as a permutation of ids.
pub fn power_map(n: &FiniteGroup, r: usize) -> Vec<u32> {
    n.elements()
        .map(|x| {
            let mut y = 0;
            for _ in 0..r {
                y = n.mul(y, x);
            }
            y
        })
        .collect()
}

/// A subgroup re-enumerated as a group in its own right, with the map from
/// the new ids back to the parent's ids.
pub fn subgroup_as_group(g: &FiniteGroup, k: &Subgroup) -> Result<(FiniteGroup, Vec<ElementId>)> {
    let gens: Vec<Permutation> = k.generators().iter().map(|&x| g.permutation(x)).collect();
    let sub = FiniteGroup::generate(g.degree(), &gens, g.caps())?;
    let map = sub
        .elements()
        .map(|x| g.id_of(sub.perm(x)).expect("subgroup element lies in parent"))
        .collect();
    Ok((sub, map))
}

/// Group-definition file: explicit permutations, a family expression, or a
/// semidirect product with an explicit action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Permutations {
        degree: usize,
        generators: Vec<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Semidirect {
        semidirect: SemidirectSpec,
    },
    Family(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemidirectSpec {
    pub normal: Box<GroupSpec>,
    pub acting: Box<GroupSpec>,
    /// One permutation of the normal factor's element ids per generator of
    /// the acting group.
    pub action: Vec<Vec<u32>>,
}

impl GroupSpec {
    pub fn build(&self, caps: Caps) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Permutations {
                degree,
                generators,
                name,
            } => {
                let gens = generators
                    .iter()
                    .map(|g| Permutation::new(g.clone()))
                    .collect::<Result<Vec<_>>>()?;
                let g = FiniteGroup::generate(*degree, &gens, caps)?;
                Ok(match name {
                    Some(n) => g.with_name(n.clone()),
                    None => g,
                })
            }
            GroupSpec::Semidirect { semidirect } => {
                let n = semidirect.normal.build(caps)?;
                let h = semidirect.acting.build(caps)?;
                semidirect_checked(&n, &h, &semidirect.action)
            }
            GroupSpec::Family(expr) => parse_family(expr, caps),
        }
    }

    /// Serialises a group as explicit permutations.
    pub fn from_group(g: &FiniteGroup) -> GroupSpec {
        GroupSpec::Permutations {
            degree: g.degree(),
            generators: g
                .generator_permutations()
                .into_iter()
                .map(Permutation::into_images)
                .collect(),
            name: g.name().map(str::to_owned),
        }
    }
}

fn semidirect_checked(n: &FiniteGroup, h: &FiniteGroup, action: &[Vec<u32>]) -> Result<FiniteGroup> {
    if (n.order() as u128) * (h.order() as u128) > n.caps().order as u128 {
        return Err(CoreError::OrderCapExceeded { cap: n.caps().order });
    }
    semidirect(n, h, action)
}

/// Parses `symmetric(n)`, `alternating(n)`, `cyclic(n)`, `dihedral(n)` and
/// `direct_product(A,B)` with arbitrary nesting.
pub fn parse_family(expr: &str, caps: Caps) -> Result<FiniteGroup> {
    let mut p = ExprParser {
        src: expr.as_bytes(),
        pos: 0,
        caps,
    };
    let g = p.group()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(CoreError::Parse(format!("trailing input in {expr:?}")));
    }
    Ok(g)
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    caps: Caps,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(CoreError::Parse(format!(
                "expected '{}' at byte {}",
                c as char, self.pos
            )))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn number(&mut self) -> Result<usize> {
        let s = self.ident();
        s.parse()
            .map_err(|_| CoreError::Parse(format!("expected a number, found {s:?}")))
    }

    fn group(&mut self) -> Result<FiniteGroup> {
        let name = self.ident();
        self.expect(b'(')?;
        let caps = self.caps;
        let g = match name.as_str() {
            "symmetric" | "alternating" | "cyclic" | "dihedral" => {
                let n = self.number()?;
                let size_ok = match name.as_str() {
                    "symmetric" | "alternating" => n <= 9,
                    _ => n <= caps.order,
                };
                if !size_ok {
                    return Err(CoreError::OrderCapExceeded { cap: caps.order });
                }
                match name.as_str() {
                    "symmetric" => symmetric_with(n, caps)?,
                    "alternating" => alternating_with(n, caps)?,
                    "cyclic" => cyclic_with(n, caps)?,
                    _ => dihedral_with(n, caps)?,
                }
            }
            "direct_product" => {
                let a = self.group()?;
                self.expect(b',')?;
                let b = self.group()?;
                if (a.order() as u128) * (b.order() as u128) > caps.order as u128 {
                    return Err(CoreError::OrderCapExceeded { cap: caps.order });
                }
                direct_product(&a, &b)?
            }
            other => return Err(CoreError::Parse(format!("unknown group family {other:?}"))),
        };
        self.expect(b')')?;
        Ok(g)
    }
}
