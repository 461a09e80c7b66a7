//! Factor-type classification, the `(CDI)_{U,S}` factorization of a coset
//! space, and an independent checker for the resulting series.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::group::{ElementId, FiniteGroup};
use crate::lattice::subgroup_lattice;
use crate::maximal::{is_maximal_in, MaximalityMethod};
use crate::subgroup::{product_set, Subgroup};
use crate::thickening::{degree, is_thin_fast, thickening};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FactorTag {
    #[serde(rename = "C_O")]
    CO,
    #[serde(rename = "D_O")]
    DO,
    #[serde(rename = "C_US")]
    CUS,
    #[serde(rename = "D_US")]
    DUS,
    #[serde(rename = "I_US")]
    IUS,
    #[serde(rename = "I")]
    I,
}

impl FactorTag {
    /// Edge label used in DOT output.
    pub fn label(self) -> &'static str {
        match self {
            FactorTag::CO => "C(O)",
            FactorTag::DO => "D(O)",
            FactorTag::CUS => "C(U,S)",
            FactorTag::DUS => "D(U,S)",
            FactorTag::IUS => "I(U,S)",
            FactorTag::I => "I",
        }
    }
}

impl fmt::Display for FactorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FactorTag::CO => "C_O",
            FactorTag::DO => "D_O",
            FactorTag::CUS => "C_US",
            FactorTag::DUS => "D_US",
            FactorTag::IUS => "I_US",
            FactorTag::I => "I",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `K ⊆ OH`; `product_size = |OH|`.
    Containment { product_size: usize },
    /// `K ∩ X = H ∩ X` for the relevant `X`, with the common trace.
    EqualTrace { trace: Vec<ElementId> },
    /// `K = T_U(H)` and `H = ⟨S, H∩U⟩`.
    Thickening { reduced_hull_order: usize },
    /// `H` maximal in `K`; `reduced` records `K = ⟨S, K∩U⟩`.
    Maximal {
        method: MaximalityMethod,
        index: usize,
        reduced: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorTypeTag {
    pub tag: FactorTag,
    pub certificate: Certificate,
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

fn is_reduced(g: &FiniteGroup, s: &[ElementId], h: &Subgroup, u: &Subgroup) -> bool {
    s.iter().all(|&x| h.contains(x)) && g.reduced_hull(s, h, u).order() == h.order()
}

/// Every factor type whose defining predicate holds for `K/H`.
pub fn classify_factor(
    g: &FiniteGroup,
    h: &Subgroup,
    k: &Subgroup,
    o: &Subgroup,
    u: &Subgroup,
    s: &[ElementId],
) -> Result<Vec<FactorTypeTag>> {
    chain(g, h, k)?;
    o.check(g)?;
    u.check(g)?;
    let mut tags = Vec::new();

    let oh = product_set(g, o.members(), h.members());
    if k.bits().is_subset(&oh) {
        tags.push(FactorTypeTag {
            tag: FactorTag::CO,
            certificate: Certificate::Containment {
                product_size: oh.count_ones(..),
            },
        });
    }
    let ko = k.intersection(g, o);
    let ho = h.intersection(g, o);
    if ko == ho {
        tags.push(FactorTypeTag {
            tag: FactorTag::DO,
            certificate: Certificate::EqualTrace {
                trace: ko.members().to_vec(),
            },
        });
    }

    let h_reduced = is_reduced(g, s, h, u);
    if h_reduced {
        if thickening(g, h, u)? == *k {
            tags.push(FactorTypeTag {
                tag: FactorTag::CUS,
                certificate: Certificate::Thickening {
                    reduced_hull_order: g.reduced_hull(s, h, u).order(),
                },
            });
        }
        let ku = k.intersection(g, u);
        if ku == h.intersection(g, u) {
            tags.push(FactorTypeTag {
                tag: FactorTag::DUS,
                certificate: Certificate::EqualTrace {
                    trace: ku.members().to_vec(),
                },
            });
        }
    }

    if h.order() < k.order() {
        let v = is_maximal_in(g, k, h)?;
        if v.maximal {
            let k_reduced = is_reduced(g, s, k, u);
            let cert = Certificate::Maximal {
                method: v.method,
                index: v.index,
                reduced: k_reduced,
            };
            if k_reduced {
                tags.push(FactorTypeTag {
                    tag: FactorTag::IUS,
                    certificate: cert.clone(),
                });
            }
            tags.push(FactorTypeTag {
                tag: FactorTag::I,
                certificate: cert,
            });
        }
    }
    Ok(tags)
}

/// A chain `H = H_0 < … < H_n = G` with one tag per step.
#[derive(Debug, Clone)]
pub struct FactorizationSeries {
    pub chain: Vec<Subgroup>,
    pub tags: Vec<FactorTypeTag>,
    pub u: Subgroup,
    pub s: Vec<ElementId>,
    /// `deg(G/H, U, S)` of the current `H` before each `I_US` step.
    pub degree_trace: Vec<usize>,
    /// `deg(G/H_0, U, S)`.
    pub initial_degree: usize,
}

impl FactorizationSeries {
    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn irreducible_steps(&self) -> usize {
        self.tags.iter().filter(|t| t.tag == FactorTag::IUS).count()
    }
}

fn pick_tag(tags: Vec<FactorTypeTag>, want: FactorTag, step: &str) -> Result<FactorTypeTag> {
    tags.into_iter()
        .find(|t| t.tag == want)
        .ok_or_else(|| CoreError::InvariantViolation(format!("{step} step does not have type {want}")))
}

/// Least member-id set among the given subgroups.
fn least<'a>(it: impl Iterator<Item = &'a Subgroup>) -> Option<&'a Subgroup> {
    it.min_by(|a, b| a.members().cmp(b.members()))
}

/// The minimal overgroups of `h` (within `up`) that are not `U`-thin over
/// `h`, and the one with the least member-id set.
fn minimal_non_thin<'a>(g: &FiniteGroup, h: &Subgroup, u: &Subgroup, up: &'a [Subgroup]) -> Option<&'a Subgroup> {
    let non_thin: Vec<&Subgroup> = up.iter().filter(|k| !is_thin_fast(g, h, u, k)).collect();
    least(
        non_thin
            .iter()
            .copied()
            .filter(|k| !non_thin.iter().any(|j| j.is_proper_subgroup_of(k))),
    )
}

/// The maximal subgroups of the interval `[h, k1)` that are `U`-thin over
/// `h`, and the one with the least member-id set.
fn maximal_thin<'a>(
    g: &FiniteGroup,
    h: &Subgroup,
    u: &Subgroup,
    k1: &Subgroup,
    up: &'a [Subgroup],
) -> Option<&'a Subgroup> {
    let thin: Vec<&Subgroup> = up
        .iter()
        .filter(|k| k.is_proper_subgroup_of(k1) && is_thin_fast(g, h, u, k))
        .collect();
    least(
        thin.iter()
            .copied()
            .filter(|k| !thin.iter().any(|j| k.is_proper_subgroup_of(j))),
    )
}

/// Factorizes `G/H` into steps of types `C_US`, `D_US` and `I_US`.
///
/// Each round thickens the current subgroup, stops with a single `D_US`
/// step once `U` lies inside it, and otherwise climbs to the least minimal
/// overgroup `K_1` that is not `U`-thin, through the least maximal thin
/// subgroup `K_2` below it. Zero-length steps are omitted.
pub fn cdi_factorize(
    g: &FiniteGroup,
    h: &Subgroup,
    u: &Subgroup,
    s: &[ElementId],
) -> Result<FactorizationSeries> {
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
    let hull = g.reduced_hull(s, h, u);
    if hull.order() != h.order() {
        return Err(CoreError::NotReduced {
            generated: hull.order(),
            order: h.order(),
        });
    }
    let whole = Subgroup::whole(g);
    let initial_degree = degree(g, h, u, s)?.value;
    let mut chain = vec![h.clone()];
    let mut tags = Vec::new();
    let mut degree_trace = Vec::new();
    let mut current = h.clone();
    loop {
        let t = thickening(g, &current, u)?;
        if t != current {
            let found = classify_factor(g, &current, &t, u, u, s)?;
            tags.push(pick_tag(found, FactorTag::CUS, "thickening")?);
            chain.push(t.clone());
            current = t;
        }
        if current == whole {
            break;
        }
        if u.is_subgroup_of(&current) {
            let found = classify_factor(g, &current, &whole, u, u, s)?;
            tags.push(pick_tag(found, FactorTag::DUS, "final")?);
            chain.push(whole.clone());
            break;
        }
        let up = subgroup_lattice(g, Some(&current))?;
        let k1 = minimal_non_thin(g, &current, u, up.nodes())
            .ok_or_else(|| CoreError::InvariantViolation("G is thin over a thick H with U ≰ H".into()))?
            .clone();
        let k2 = maximal_thin(g, &current, u, &k1, up.nodes())
            .ok_or_else(|| CoreError::InvariantViolation("no thin subgroup below K_1".into()))?
            .clone();
        degree_trace.push(degree(g, &current, u, s)?.value);
        if k2 != current {
            let found = classify_factor(g, &current, &k2, u, u, s)?;
            tags.push(pick_tag(found, FactorTag::DUS, "descending")?);
            chain.push(k2.clone());
        }
        let found = classify_factor(g, &k2, &k1, u, u, s)?;
        tags.push(pick_tag(found, FactorTag::IUS, "irreducible")?);
        chain.push(k1.clone());
        current = k1;
    }
    Ok(FactorizationSeries {
        chain,
        tags,
        u: u.clone(),
        s: s.to_vec(),
        degree_trace,
        initial_degree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCheck {
    pub step: usize,
    pub claimed: Option<FactorTag>,
    pub passed: bool,
    /// The factorization clause the step instantiates.
    pub clause: Option<String>,
    /// Error name and message when the step fails.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesVerification {
    pub steps: Vec<StepCheck>,
    pub degree_trace_decreasing: bool,
    pub irreducible_steps_within_bound: bool,
    pub passed: bool,
}

pub const CLAUSE_I: &str = "(i) H_{i-1} ∩ O = H_i ∩ O";
pub const CLAUSE_II: &str = "(ii) H_i ⊆ OH_{i-1}";
pub const CLAUSE_III: &str = "(iii) H_{i-1} is a maximal proper subgroup of H_i";

/// Re-derives every step's tag from scratch and checks the chain shape.
pub fn verify_series(
    g: &FiniteGroup,
    series: &FactorizationSeries,
    u: &Subgroup,
    s: &[ElementId],
) -> SeriesVerification {
    let mut steps = Vec::new();
    let n = series.chain.len().saturating_sub(1);
    let whole = Subgroup::whole(g);
    for i in 0..n.max(series.tags.len()) {
        let claimed = series.tags.get(i).map(|t| t.tag);
        let fail = |msg: String| StepCheck {
            step: i + 1,
            claimed,
            passed: false,
            clause: None,
            failure: Some(msg),
        };
        let (Some(prev), Some(next), Some(tag)) =
            (series.chain.get(i), series.chain.get(i + 1), claimed)
        else {
            steps.push(fail("NotAChain: chain and tag list lengths differ".into()));
            continue;
        };
        if !prev.is_proper_subgroup_of(next) {
            let e = CoreError::NotAChain(format!("entry {i} is not properly contained in entry {}", i + 1));
            steps.push(fail(format!("{}: {e}", e.name())));
            continue;
        }
        let found = match classify_factor(g, prev, next, u, u, s) {
            Ok(f) => f,
            Err(e) => {
                steps.push(fail(format!("{}: {e}", e.name())));
                continue;
            }
        };
        let Some(hit) = found.iter().find(|t| t.tag == tag) else {
            steps.push(fail(format!("tag {tag} does not hold")));
            continue;
        };
        let (clause, ok) = match tag {
            FactorTag::DUS | FactorTag::DO => (
                CLAUSE_I,
                prev.intersection(g, u) == next.intersection(g, u),
            ),
            FactorTag::CUS | FactorTag::CO => (
                CLAUSE_II,
                next.bits()
                    .is_subset(&product_set(g, u.members(), prev.members())),
            ),
            FactorTag::IUS | FactorTag::I => (
                CLAUSE_III,
                matches!(hit.certificate, Certificate::Maximal { .. }),
            ),
        };
        steps.push(StepCheck {
            step: i + 1,
            claimed,
            passed: ok,
            clause: Some(clause.to_string()),
            failure: (!ok).then(|| format!("clause {clause} fails")),
        });
    }
    let shape_ok = series.chain.len() == series.tags.len() + 1
        && series.chain.last().is_some_and(|k| *k == whole);
    if !shape_ok {
        steps.push(StepCheck {
            step: series.tags.len() + 1,
            claimed: None,
            passed: false,
            clause: None,
            failure: Some("NotAChain: series does not end at G".into()),
        });
    }
    let degree_trace_decreasing = series.degree_trace.windows(2).all(|w| w[0] > w[1]);
    let irreducible_steps_within_bound =
        series.irreducible_steps() < series.initial_degree.max(1);
    let passed = steps.iter().all(|c| c.passed) && degree_trace_decreasing && irreducible_steps_within_bound;
    SeriesVerification {
        steps,
        degree_trace_decreasing,
        irreducible_steps_within_bound,
        passed,
    }
}

/// An overgroup `K = ⟨H, V⟩` with `V = K ∩ U` in which `H` lies inside a
/// maximal proper subgroup.
#[derive(Debug, Clone)]
pub struct IrreducibleOvergroup {
    pub v: Subgroup,
    pub k: Subgroup,
    /// A maximal proper subgroup of `K` containing `H`.
    pub maximal: Subgroup,
}

/// Requires that `HU` is not a subgroup. Thickens `H`, finds the least
/// minimal non-thin overgroup `K_1`, and returns `V = K_1 ∩ U` and
/// `K = ⟨H, V⟩`.
pub fn find_irreducible_overgroup(g: &FiniteGroup, h: &Subgroup, u: &Subgroup) -> Result<IrreducibleOvergroup> {
    h.check(g)?;
    u.check(g)?;
    let hu = product_set(g, h.members(), u.members());
    if crate::subgroup::is_mul_closed(g, &hu) {
        return Err(CoreError::PreconditionFailed("HU is a subgroup".into()));
    }
    let t = thickening(g, h, u)?;
    let up = subgroup_lattice(g, Some(&t))?;
    let k1 = minimal_non_thin(g, &t, u, up.nodes())
        .ok_or_else(|| CoreError::InvariantViolation("G is thin over T_U(H)".into()))?
        .clone();
    let k2 = maximal_thin(g, &t, u, &k1, up.nodes())
        .ok_or_else(|| CoreError::InvariantViolation("no thin subgroup below K_1".into()))?
        .clone();
    let v = k1.intersection(g, u);
    let k = h.join(g, &v);
    if k.intersection(g, u) != v {
        return Err(CoreError::InvariantViolation("K ∩ U differs from V".into()));
    }
    if !h.is_subgroup_of(&k2) || !k2.is_proper_subgroup_of(&k) || !is_maximal_in(g, &k, &k2)?.maximal {
        return Err(CoreError::InvariantViolation(
            "H is not inside a maximal proper subgroup of K".into(),
        ));
    }
    Ok(IrreducibleOvergroup { v, k, maximal: k2 })
}
