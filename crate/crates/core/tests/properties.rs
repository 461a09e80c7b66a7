use std::sync::OnceLock;

use proptest::prelude::*;

use cosetfactor::corpus::small_corpus;
use cosetfactor::factorizer::{cdi_factorize, verify_series};
use cosetfactor::report::{from_json, to_json, SeriesReport, SubgroupDto};
use cosetfactor::subgroup::product_set;
use cosetfactor::thickening::{degree, is_thin, thickening};
use cosetfactor::tree::{ball_aut_group, pk_closure, TreeBall};
use cosetfactor::{Caps, FiniteGroup, Subgroup};

struct Fixture {
    group: FiniteGroup,
    lattice: Vec<Subgroup>,
}

fn corpus() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        small_corpus(Caps::default())
            .unwrap()
            .into_iter()
            .map(|group| Fixture {
                lattice: group.lattice().unwrap().nodes().to_vec(),
                group,
            })
            .collect()
    })
}

/// A group from the corpus with three subgroups picked by index.
fn pick(gi: usize, a: usize, b: usize, c: usize) -> (&'static FiniteGroup, &'static Subgroup, &'static Subgroup, &'static Subgroup) {
    let f = &corpus()[gi % corpus().len()];
    let n = f.lattice.len();
    (&f.group, &f.lattice[a % n], &f.lattice[b % n], &f.lattice[c % n])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn thickening_monotone_in_u(gi in any::<usize>(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let (g, h, u, v) = pick(gi, a, b, c);
        if u.is_subgroup_of(v) {
            let tu = thickening(g, h, u).unwrap();
            let tv = thickening(g, h, v).unwrap();
            prop_assert!(tu.is_subgroup_of(&tv));
        }
    }

    #[test]
    fn thickening_sandwiched(gi in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let (g, h, u, _) = pick(gi, a, b, 0);
        let t = thickening(g, h, u).unwrap();
        prop_assert!(h.is_subgroup_of(&t));
        prop_assert!(t.bits().is_subset(&product_set(g, u.members(), h.members())));
    }

    #[test]
    fn thin_over_self_and_thickening(gi in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let (g, h, u, _) = pick(gi, a, b, 0);
        prop_assert!(is_thin(g, h, u, h).unwrap().is_thin);
        let t = thickening(g, h, u).unwrap();
        prop_assert!(is_thin(g, h, u, &t).unwrap().is_thin);
    }

    #[test]
    fn degree_bounded_by_index(gi in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let (g, h, u, _) = pick(gi, a, b, 0);
        let d = degree(g, h, u, h.generators()).unwrap().value;
        prop_assert!(d >= 1);
        prop_assert!(d <= g.order() / h.order());
    }

    #[test]
    fn series_is_a_strict_chain(gi in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let (g, h, u, _) = pick(gi, a, b, 0);
        let series = cdi_factorize(g, h, u, h.generators()).unwrap();
        prop_assert_eq!(series.chain.first().unwrap(), h);
        prop_assert_eq!(series.chain.last().unwrap().order(), g.order());
        for w in series.chain.windows(2) {
            prop_assert!(w[0].is_subgroup_of(&w[1]) && w[0].order() < w[1].order());
        }
        prop_assert!(series.degree_trace.windows(2).all(|w| w[1] < w[0]));
        let v = verify_series(g, &series, u, h.generators());
        prop_assert!(v.passed);
        let report = SeriesReport::new(g, &series, v);
        let back: SeriesReport = from_json(&to_json(&report).unwrap()).unwrap();
        prop_assert_eq!(back, report);
    }

    #[test]
    fn subgroup_dto_round_trip(gi in any::<usize>(), a in any::<usize>()) {
        let (g, h, _, _) = pick(gi, a, 0, 0);
        let dto = SubgroupDto::new(g, h);
        let back: SubgroupDto = from_json(&to_json(&dto).unwrap()).unwrap();
        prop_assert_eq!(back, dto);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pk_closure_contains_h_and_grows_with_k(seed in any::<u64>()) {
        let ball = TreeBall::new(3, 1).unwrap();
        let g = ball_aut_group(&ball).unwrap();
        let x = (seed % g.order() as u64) as u32;
        let h = g.closure(&[x]).unwrap();
        let mut previous: Option<Subgroup> = None;
        for k in 0..=2 {
            let c = pk_closure(&g, &ball, &h, k).unwrap();
            prop_assert!(c.agree);
            prop_assert!(h.is_subgroup_of(&c.direct));
            if let Some(p) = &previous {
                prop_assert!(c.direct.is_subgroup_of(p));
            }
            previous = Some(c.direct);
        }
    }
}
