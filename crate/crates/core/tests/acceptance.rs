//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use cosetfactor::corpus::{medium_corpus, mid_corpus, small_corpus};
use cosetfactor::diagonal::{chief_series, factor_equivalence_check, verify_theta_order_iso, DiagonalContext};
use cosetfactor::factorizer::{cdi_factorize, verify_series, FactorTag};
use cosetfactor::families::{alternating, cyclic, direct_product, symmetric};
use cosetfactor::irreducible::{
    analyze_irreducible, isomorphism_invariants, sd_construct, twisted_wreath_construct,
    wreath_product, IrreducibleCase, OnanScottType,
};
use cosetfactor::maximal::{maximal_subgroup_classes, maximal_via_blocks};
use cosetfactor::subgroup::{is_mul_closed, product_set};
use cosetfactor::thickening::{degree, expansivity_analysis, is_thick, is_thin, thickening, thin_criterion_check};
use cosetfactor::tree::{ball_aut_group, focal_orbit_census, pk_closure, TreeBall};
use cosetfactor::{Caps, ElementId, FiniteGroup, Permutation, Subgroup};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn small() -> Vec<FiniteGroup> {
    small_corpus(Caps::default()).expect("small corpus builds")
}

fn subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    g.lattice().expect("lattice within cap").nodes().to_vec()
}

fn sub(g: &FiniteGroup, cycles: &str) -> Subgroup {
    let gens: Vec<ElementId> = Permutation::parse_list(g.degree(), cycles)
        .unwrap()
        .iter()
        .map(|p| g.require(p).unwrap())
        .collect();
    g.closure(&gens).unwrap()
}

/// Largest subgroup `K` of the lattice with `H ≤ K ⊆ UH`, checked to contain
/// every other such subgroup.
fn thickening_oracle(lattice: &[Subgroup], h: &Subgroup, uh: &FixedBitSet) -> Option<Subgroup> {
    let fits: Vec<&Subgroup> = lattice
        .iter()
        .filter(|k| h.is_subgroup_of(k) && k.bits().is_subset(uh))
        .collect();
    let top = fits.iter().max_by_key(|k| k.order())?;
    fits.iter().all(|k| k.is_subgroup_of(top)).then(|| (*top).clone())
}

/// `(K∩U)H` closed under multiplication, computed from scratch.
fn thin_oracle(g: &FiniteGroup, h: &Subgroup, u: &Subgroup, k: &Subgroup) -> bool {
    let a: Vec<ElementId> = k.members().iter().copied().filter(|&x| u.contains(x)).collect();
    let mut set = HashSet::new();
    for &x in &a {
        for &y in h.members() {
            set.insert(g.mul(x, y));
        }
    }
    set.iter().all(|&x| set.iter().all(|&y| set.contains(&g.mul(x, y))))
}

fn c1_thickening_oracle() -> Outcome {
    let mut pairs = 0usize;
    for g in small() {
        let lat = subgroups(&g);
        for h in &lat {
            for u in &lat {
                let uh = product_set(&g, u.members(), h.members());
                let want = thickening_oracle(&lat, h, &uh)
                    .ok_or_else(|| format!("{}: no unique maximum", g.label()))?;
                let got = thickening(&g, h, u).map_err(e2s)?;
                ensure(got == want, || {
                    format!("{}: |H|={} |U|={}: got order {}, oracle {}", g.label(), h.order(), u.order(), got.order(), want.order())
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (H,U) pairs"))
}

fn c2_thickening_laws() -> Outcome {
    let mut checks = 0usize;
    for g in small() {
        let lat = subgroups(&g);
        for h in &lat {
            for u in &lat {
                let t = thickening(&g, h, u).map_err(e2s)?;
                // idempotence
                ensure(thickening(&g, &t, u).map_err(e2s)? == t, || format!("{}: T not U-thick", g.label()))?;
                // restriction to every K between H and G
                for k in lat.iter().filter(|k| h.is_subgroup_of(k)) {
                    let (kg, map) = cosetfactor::families::subgroup_as_group(&g, k).map_err(e2s)?;
                    let back: std::collections::HashMap<ElementId, ElementId> =
                        map.iter().enumerate().map(|(i, &x)| (x, i as ElementId)).collect();
                    let lift = |s: &Subgroup| {
                        let ids: Vec<ElementId> = s.members().iter().map(|x| back[x]).collect();
                        kg.closure(&ids).unwrap()
                    };
                    let v = u.intersection(&g, k);
                    let inside = thickening(&kg, &lift(h), &lift(&v)).map_err(e2s)?;
                    let expect = lift(&t.intersection(&g, k));
                    ensure(inside == expect, || {
                        format!("{}: restriction fails for |H|={} |U|={} |K|={}", g.label(), h.order(), u.order(), k.order())
                    })?;
                    checks += 1;
                }
                // reducedness is preserved, for S = generators of H and S = H
                for s in [h.generators(), h.members()] {
                    if g.reduced_hull(s, h, u) == *h {
                        ensure(g.reduced_hull(s, &t, u) == t, || {
                            format!("{}: reducedness lost for |H|={} |U|={}", g.label(), h.order(), u.order())
                        })?;
                    }
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} checks"))
}

fn c3_thin_criterion() -> Outcome {
    let mut triples = 0usize;
    for g in small() {
        let lat = subgroups(&g);
        for h in &lat {
            for u in &lat {
                for k in lat.iter().filter(|k| h.is_subgroup_of(k)) {
                    let direct = thin_oracle(&g, h, u, k);
                    let verdict = is_thin(&g, h, u, k).map_err(e2s)?;
                    ensure(verdict.is_thin == direct, || format!("{}: is_thin disagrees with oracle", g.label()))?;
                    for s in [h.generators(), h.members()] {
                        let c = thin_criterion_check(&g, h, u, s, k).map_err(e2s)?;
                        ensure(c == direct, || {
                            format!("{}: criterion {c} vs direct {direct} (|H|={} |U|={} |K|={} |S|={})", g.label(), h.order(), u.order(), k.order(), s.len())
                        })?;
                    }
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{triples} (H,U,K) triples, two choices of S each"))
}

fn c4_degree_laws() -> Outcome {
    let s3 = symmetric(3).map_err(e2s)?;
    let h = sub(&s3, "(0,1)");
    let u = sub(&s3, "(0,2)");
    let s = [s3.require(&Permutation::parse_cycles(3, "(0,1)").unwrap()).unwrap()];
    let d = degree(&s3, &h, &u, &s).map_err(e2s)?;
    ensure(d.value == 2, || format!("hand-checked instance gives {}", d.value))?;
    let mut checks = 0usize;
    for g in small() {
        let lat = subgroups(&g);
        for h in &lat {
            for u in &lat {
                let s = h.generators();
                let dh = degree(&g, h, u, s).map_err(e2s)?.value;
                let index = g.order() / h.order();
                ensure(dh >= 1 && dh <= index, || format!("{}: degree {dh} out of range", g.label()))?;
                for k in lat.iter().filter(|k| h.is_subgroup_of(k)) {
                    let dk = degree(&g, k, u, s).map_err(e2s)?.value;
                    ensure(dk <= dh, || {
                        format!("{}: degree grows from {dh} to {dk} (|H|={} |K|={} |U|={})", g.label(), h.order(), k.order(), u.order())
                    })?;
                    if dk == dh {
                        ensure(thin_oracle(&g, h, u, k), || {
                            format!("{}: equal degree {dh} but not thin (|H|={} |K|={} |U|={})", g.label(), h.order(), k.order(), u.order())
                        })?;
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} (H ≤ K, U) checks"))
}

type Fingerprint = (Vec<Vec<ElementId>>, Vec<FactorTag>, Vec<usize>);

fn factorize_checked(g: &FiniteGroup, h: &Subgroup, u: &Subgroup) -> Result<Fingerprint, String> {
    let s = h.generators();
    let series = cdi_factorize(g, h, u, s).map_err(|e| format!("{}: {e}", g.label()))?;
    let v = verify_series(g, &series, u, s);
    if !v.passed {
        return Err(format!("{}: verification failed: {:?}", g.label(), v.steps.iter().find(|c| !c.passed)));
    }
    if series.irreducible_steps() + 1 > series.initial_degree.max(1) {
        return Err(format!(
            "{}: {} irreducible steps with initial degree {}",
            g.label(),
            series.irreducible_steps(),
            series.initial_degree
        ));
    }
    Ok((
        series.chain.iter().map(|k| k.members().to_vec()).collect(),
        series.tags.iter().map(|t| t.tag).collect(),
        series.degree_trace,
    ))
}

fn c5_factorizer() -> Outcome {
    let mut groups = small();
    let mid_start = groups.len();
    groups.extend(mid_corpus(Caps::default()).map_err(e2s)?);
    let mut jobs: Vec<(usize, usize, usize)> = Vec::new();
    for (gi, g) in groups[..mid_start].iter().enumerate() {
        let n = subgroups(g).len();
        for hi in 0..n {
            for ui in 0..n {
                jobs.push((gi, hi, ui));
            }
        }
    }
    let exhaustive = jobs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let gi = rng.random_range(mid_start..groups.len());
        let n = subgroups(&groups[gi]).len();
        jobs.push((gi, rng.random_range(0..n), rng.random_range(0..n)));
    }
    let run = |threads: usize| -> Result<Vec<Fingerprint>, String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(e2s)?;
        pool.install(|| {
            jobs.par_iter()
                .map(|&(gi, hi, ui)| {
                    let g = &groups[gi];
                    let lat = subgroups(g);
                    factorize_checked(g, &lat[hi], &lat[ui])
                })
                .collect()
        })
    };
    let parallel = run(4)?;
    let serial = run(1)?;
    ensure(parallel == serial, || "parallel and serial sweeps differ".into())?;
    Ok(format!("{exhaustive} exhaustive + 200 seeded instances, 4-way and serial identical"))
}

fn c6_diagonal() -> Outcome {
    let mut checked = 0usize;
    for g in small() {
        let ctx = DiagonalContext::new(&g).map_err(e2s)?;
        if g.order() <= 16 {
            let r = verify_theta_order_iso(&ctx).map_err(e2s)?;
            ensure(r.passed(), || format!("{}: θ is not an order isomorphism", g.label()))?;
            // θ(N) = {(a,b) : ab⁻¹ ∈ N}
            for n in g.normal_subgroups().map_err(e2s)?.iter() {
                let t = ctx.theta(n).map_err(e2s)?;
                let direct: Vec<ElementId> = ctx
                    .square
                    .elements()
                    .filter(|&x| {
                        let (a, b) = ctx.pairs[x as usize];
                        n.contains(g.mul(a, g.inv(b)))
                    })
                    .collect();
                ensure(t.members() == direct.as_slice(), || format!("{}: θ(N) mismatch", g.label()))?;
            }
            checked += 1;
        }
        let series = chief_series(&g).map_err(e2s)?;
        for w in series.windows(2) {
            ensure(factor_equivalence_check(&ctx, &w[1], &w[0]).map_err(e2s)?, || {
                format!("{}: factor equivalence fails", g.label())
            })?;
        }
    }
    let s4 = symmetric(4).map_err(e2s)?;
    let orders: Vec<usize> = chief_series(&s4).map_err(e2s)?.iter().map(Subgroup::order).collect();
    ensure(orders == [1, 4, 12, 24], || format!("chief series of S4 has orders {orders:?}"))?;
    Ok(format!("θ verified on {checked} groups of order ≤ 16"))
}

fn c7_irreducible_cases() -> Outcome {
    let groups = medium_corpus(Caps::default()).map_err(e2s)?;
    let results: Vec<Result<usize, String>> = groups
        .par_iter()
        .filter(|g| g.order() > 1)
        .map(|g| {
            let mut pairs = 0;
            for h in maximal_subgroup_classes(g).map_err(e2s)? {
                let r = analyze_irreducible(g, &h).map_err(|e| format!("{}: {e}", g.label()))?;
                let w = r.group(g);
                let wh = &r.h;
                let label = || format!("{} with |H| = {}", g.label(), h.order());
                ensure(r.evidence.cases_holding.len() == 1, || format!("{}: cases {:?}", label(), r.evidence.cases_holding))?;
                ensure(!matches!(r.case, IrreducibleCase::II | IrreducibleCase::IV), || format!("{}: case {}", label(), r.case))?;
                for f in &r.per_normal {
                    ensure(f.centralizer_in_h.is_trivial(), || format!("{}: C_H(N) ≠ 1", label()))?;
                    let center = f.subgroup.intersection(w, &f.centralizer);
                    if !center.is_trivial() {
                        ensure(f.free, || format!("{}: normal subgroup with centre meets H", label()))?;
                    }
                }
                let mg = &r.minimal_normals;
                for mask in 0u32..(1 << mg.len()) - 1 {
                    let mut j = Subgroup::trivial(w);
                    for (i, m) in mg.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            j = j.join(w, m);
                        }
                    }
                    ensure(j.intersection(w, wh).is_trivial(), || format!("{}: proper join of minimal normals meets H", label()))?;
                }
                pairs += 1;
            }
            Ok(pairs)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{total} maximal-subgroup classes over {} groups", groups.len()))
}

fn c8_typing() -> Outcome {
    let s5 = symmetric(5).map_err(e2s)?;
    let r = analyze_irreducible(&s5, &sub(&s5, "(1,2);(1,2,3,4)")).map_err(e2s)?;
    let t = r.onan_scott.as_ref().map(|t| t.tag);
    ensure(t == Some(OnanScottType::AS), || format!("S5 point stabilizer typed {t:?}"))?;

    let a5 = alternating(5).map_err(e2s)?;
    let sq = direct_product(&a5, &a5).map_err(e2s)?;
    let diag: Vec<ElementId> = a5
        .generator_permutations()
        .iter()
        .map(|p| {
            let mut im = p.images().to_vec();
            im.extend(p.images().iter().map(|&x| x + 5));
            sq.id_of(&im).unwrap()
        })
        .collect();
    let dh = sq.closure(&diag).map_err(e2s)?;
    let v = maximal_via_blocks(&sq, &Subgroup::whole(&sq), &dh).map_err(e2s)?;
    ensure(v.maximal && v.index == 60, || "diagonal is not maximal of index 60".into())?;
    let r = analyze_irreducible(&sq, &dh).map_err(e2s)?;
    let t = r.onan_scott.as_ref().map(|t| t.tag);
    ensure(t == Some(OnanScottType::HS), || format!("A5² with diagonal typed {t:?}"))?;

    let sd = sd_construct(&a5, 2, &cyclic(2).map_err(e2s)?).map_err(e2s)?;
    ensure(sd.group.degree() == 60, || "SD pair not on 60 points".into())?;
    let v = maximal_via_blocks(&sd.group, &Subgroup::whole(&sd.group), &sd.h).map_err(e2s)?;
    ensure(v.maximal, || "SD pair is not primitive".into())?;
    let r = analyze_irreducible(&sd.group, &sd.h).map_err(e2s)?;
    let t = r.onan_scott.as_ref().map(|t| t.tag);
    ensure(t == Some(OnanScottType::SD), || format!("SD pair typed {t:?}"))?;

    let s3 = symmetric(3).map_err(e2s)?;
    let c2 = cyclic(2).map_err(e2s)?;
    let tw = twisted_wreath_construct(&s3, &c2, &Subgroup::trivial(&c2), &[]).map_err(e2s)?;
    let plain = wreath_product(&s3, 2).map_err(e2s)?;
    ensure(tw.group.order() == 72, || format!("twisted wreath has order {}", tw.group.order()))?;
    ensure(isomorphism_invariants(&tw.group) == isomorphism_invariants(&plain), || {
        "twisted wreath invariants differ from the plain wreath product".into()
    })?;
    for &b in tw.base.members() {
        let f = tw.base_function(b).map_err(e2s)?;
        ensure(tw.satisfies_law(&f), || "base element breaks the membership law".into())?;
    }
    let t = s3.generators()[0];
    let phi: Vec<u32> = s3.elements().map(|x| s3.conj(t, x)).collect();
    let tw1 = twisted_wreath_construct(&s3, &c2, &Subgroup::whole(&c2), &[phi]).map_err(e2s)?;
    ensure(tw1.base.order() == 6 && tw1.group.order() == 12, || "single-coordinate twisted wreath has wrong shape".into())?;
    let mut f = tw1.base_function(tw1.base.members()[1]).map_err(e2s)?;
    f[1] = s3.mul(f[1], s3.generators()[1]);
    ensure(!tw1.satisfies_law(&f), || "law violation not rejected".into())?;
    Ok("AS, HS, SD fixtures and twisted wreath mechanics".into())
}

fn c9_pk_identity() -> Outcome {
    let ball = TreeBall::new(3, 2).map_err(e2s)?;
    let g = ball_aut_group(&ball).map_err(e2s)?;
    let mut n = 0;
    for h in g.cyclic_subgroups().iter() {
        for k in 0..=2 {
            let c = pk_closure(&g, &ball, h, k).map_err(e2s)?;
            ensure(c.agree, || format!("|H| = {}, k = {k}: direct {} vs thickening {}", h.order(), c.direct.order(), c.via_thickening.order()))?;
            n += 1;
        }
    }
    Ok(format!("{n} (H, k) cases"))
}

fn c10_focal() -> Outcome {
    for (p, d, l, r, want) in [(2, 1, 1, 4, 1), (2, 1, 2, 4, 2), (3, 1, 1, 3, 1)] {
        for radius in [r, r + 1] {
            let c = focal_orbit_census(p, d, l, radius).map_err(e2s)?;
            ensure(c.interior_orbits == want, || {
                format!("({p},{d},{l},{radius}) gives {} orbits, expected {want}", c.interior_orbits)
            })?;
        }
    }
    Ok("three parameter sets, stable under R → R+1".into())
}

fn c11_expansivity() -> Outcome {
    let mut pairs = 0usize;
    for g in small() {
        let lat = subgroups(&g);
        for h in &lat {
            for u in &lat {
                let rep = expansivity_analysis(&g, h, u).map_err(e2s)?;
                if is_thick(&g, h, u).map_err(e2s)? {
                    ensure(rep.uniformly_expansive, || format!("{}: thick but not uniformly expansive", g.label()))?;
                }
                if rep.expansive_at_trivial {
                    let u2 = rep.thick_subgroup.as_ref().ok_or_else(|| format!("{}: no U' constructed", g.label()))?;
                    let uh = product_set(&g, u2.members(), h.members());
                    let t = thickening_oracle(&lat, h, &uh).ok_or_else(|| "oracle failed".to_string())?;
                    ensure(t == *h, || format!("{}: T_U'(H) ≠ H", g.label()))?;
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (H,U) pairs"))
}

fn c12_submonoids() -> Outcome {
    let mut subsets = 0usize;
    for g in small().into_iter().filter(|g| g.order() <= 12) {
        let n = g.order();
        for mask in 0u64..(1u64 << (n - 1)) {
            let mut bits = FixedBitSet::with_capacity(n);
            bits.insert(0);
            for i in 1..n {
                if mask & (1 << (i - 1)) != 0 {
                    bits.insert(i);
                }
            }
            if is_mul_closed(&g, &bits) {
                ensure(bits.ones().all(|x| bits.contains(g.inv(x as ElementId) as usize)), || {
                    format!("{}: monoid without inverses", g.label())
                })?;
                subsets += 1;
            }
        }
    }
    Ok(format!("{subsets} closed subsets, all subgroups"))
}

fn main() {
    let criteria: Vec<(u32, &str, Option<Duration>, fn() -> Outcome)> = vec![
        (1, "thickening matches lattice maximum", Some(Duration::from_secs(120)), c1_thickening_oracle),
        (2, "thickening idempotence, restriction, reducedness", None, c2_thickening_laws),
        (3, "thin criterion matches direct definition", None, c3_thin_criterion),
        (4, "degree laws", None, c4_degree_laws),
        (5, "factorizer soundness and determinism", Some(Duration::from_secs(600)), c5_factorizer),
        (6, "diagonal correspondence and chief series", None, c6_diagonal),
        (7, "irreducible case split", Some(Duration::from_secs(300)), c7_irreducible_cases),
        (8, "primitive-type fixtures", None, c8_typing),
        (9, "P_k closure two ways", Some(Duration::from_secs(30)), c9_pk_identity),
        (10, "focal orbit census", None, c10_focal),
        (11, "expansivity", None, c11_expansivity),
        (12, "closed submonoids are subgroups", None, c12_submonoids),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failures = 0;
    for (n, name, limit, run) in criteria {
        if filter.is_some_and(|f| f != n) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let over = limit.is_some_and(|l| elapsed > l);
        let limit_text = limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
        match (&result, over) {
            (Ok(detail), false) => {
                println!("PASS {n:>2} {name} ({:.1}s{limit_text}): {detail}", elapsed.as_secs_f64())
            }
            (Ok(_), true) => {
                failures += 1;
                println!("FAIL {n:>2} {name} ({:.1}s{limit_text}): over time limit", elapsed.as_secs_f64())
            }
            (Err(e), _) => {
                failures += 1;
                println!("FAIL {n:>2} {name} ({:.1}s{limit_text}): {e}", elapsed.as_secs_f64())
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
