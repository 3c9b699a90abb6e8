use criterion::{black_box, criterion_group, criterion_main, Criterion};
use gdl_bench::{isotropic_planes, space};
use gdl_core::certify::degree_test;
use gdl_core::orbits::{orbit_decomposition, orbit_union_search, symplectic_transvection_generators, DEFAULT_MAX_ORBITS};
use gdl_core::{ClassicalForm, FormSubtype, SubspaceIndex};

fn enumeration(c: &mut Criterion) {
    let v = space(2, 6);
    c.bench_function("index J_2(6,3)", |b| b.iter(|| SubspaceIndex::new(black_box(&v), 3).unwrap()));
    let idx = SubspaceIndex::new(&v, 3).unwrap();
    c.bench_function("rank/unrank J_2(6,3)", |b| {
        b.iter(|| (0..idx.len()).map(|i| idx.rank(&idx.unrank(i))).sum::<usize>())
    });
    let v3 = space(3, 6);
    c.bench_function("index J_3(6,3)", |b| b.iter(|| SubspaceIndex::new(black_box(&v3), 3).unwrap()));
}

fn degree(c: &mut Criterion) {
    let f2 = isotropic_planes(2);
    c.bench_function("degree test q=2", |b| b.iter(|| degree_test(black_box(&f2), 2).unwrap()));
    let f3 = isotropic_planes(3);
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("degree test q=3", |b| b.iter(|| degree_test(black_box(&f3), 2).unwrap()));
    g.finish();
}

fn forms(c: &mut Criterion) {
    let v = space(2, 6);
    let form = ClassicalForm::quadratic(&v, FormSubtype::Hyperbolic).unwrap();
    c.bench_function("classify planes, hyperbolic F_2^6", |b| b.iter(|| form.classify_all(3).unwrap()));
}

fn orbits(c: &mut Criterion) {
    let v = space(2, 6);
    let gens = symplectic_transvection_generators(&v).unwrap();
    c.bench_function("Sp(6,2) orbits on planes", |b| b.iter(|| orbit_decomposition(&v, &gens, 3).unwrap()));
    let orb = orbit_decomposition(&v, &gens, 3).unwrap();
    c.bench_function("Sp(6,2) union search", |b| {
        b.iter(|| orbit_union_search(&v, &orb, 2, DEFAULT_MAX_ORBITS).unwrap())
    });
}

criterion_group!(benches, enumeration, degree, forms, orbits);
criterion_main!(benches);
