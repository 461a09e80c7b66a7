use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use cosetfactor::families::{dihedral, symmetric};
use cosetfactor::{cdi_factorize, focal_orbit_census, subgroup_lattice, thickening, FiniteGroup, Permutation, Subgroup};

fn sub(g: &FiniteGroup, cycles: &str) -> Subgroup {
    let gens: Vec<_> = Permutation::parse_list(g.degree(), cycles)
        .unwrap()
        .iter()
        .map(|p| g.require(p).unwrap())
        .collect();
    g.closure(&gens).unwrap()
}

fn kernels(c: &mut Criterion) {
    let s5 = symmetric(5).unwrap();
    let h = sub(&s5, "(0,1,2,3,4)");
    let u = sub(&s5, "(0,1)(2,3);(0,2)(1,3)");
    c.bench_function("thickening S5", |b| b.iter(|| thickening(&s5, &h, &u).unwrap()));

    // fresh group each time so the cached lattice is not reused
    c.bench_function("lattice D12", |b| {
        b.iter_batched(
            || dihedral(12).unwrap(),
            |g| subgroup_lattice(&g, None).unwrap(),
            BatchSize::SmallInput,
        )
    });

    let s4 = symmetric(4).unwrap();
    let h4 = sub(&s4, "(0,1,2,3)");
    let u4 = sub(&s4, "(0,1)(2,3);(0,2)(1,3)");
    c.bench_function("factorize S4", |b| {
        b.iter(|| cdi_factorize(&s4, &h4, &u4, h4.generators()).unwrap())
    });

    c.bench_function("focal census p=2 d=2 l=1 R=3", |b| {
        b.iter(|| focal_orbit_census(2, 2, 1, 3).unwrap())
    });
}

criterion_group!(benches, kernels);
criterion_main!(benches);
