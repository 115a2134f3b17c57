use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fmb_core::algebra::associated_graded;
use fmb_core::exactmath::Field;
use fmb_core::mbasis::{closure_search_fmb, verify_fmb, SearchConfig};
use fmb_core::pgroup::{catalog, jennings_lie, quillen_check};
use fmb_core::rlie::catalog::{h_s, heisenberg};
use fmb_core::uenv::{family_fmb, pbw_algebra};

fn envelopes(c: &mut Criterion) {
    let h3 = heisenberg(3).unwrap();
    c.bench_function("pbw u(H3)", |b| b.iter(|| pbw_algebra(black_box(&h3)).unwrap()));
    let u = pbw_algebra(&h3).unwrap();
    c.bench_function("gr u(H3)", |b| b.iter(|| associated_graded(black_box(u.algebra())).unwrap()));
}

fn bases(c: &mut Criterion) {
    c.bench_function("family fmb L(0,1;2)", |b| b.iter(|| family_fmb(0, 1, 2).unwrap()));
    let fam = family_fmb(0, 1, 1).unwrap();
    let u = pbw_algebra(&h_s(1)).unwrap();
    c.bench_function("verify fmb u(h1)", |b| {
        b.iter(|| verify_fmb(u.algebra(), black_box(&fam.certificate.candidate)).unwrap())
    });
    c.bench_function("exhaustive search u(h1)", |b| {
        b.iter(|| closure_search_fmb(u.algebra(), SearchConfig::default()).unwrap())
    });
    let h3 = pbw_algebra(&heisenberg(3).unwrap()).unwrap();
    c.bench_function("random search u(H3), 2000 samples", |b| {
        b.iter(|| closure_search_fmb(h3.algebra(), SearchConfig { budget: 2000, seed: 1 }).unwrap())
    });
}

fn groups(c: &mut Criterion) {
    let g = catalog::extraspecial_27_exp3();
    c.bench_function("jennings E27", |b| b.iter(|| jennings_lie(black_box(&g)).unwrap()));
    let d8 = catalog::d8();
    let f2 = Field::prime(2).unwrap();
    c.bench_function("quillen D8", |b| b.iter(|| quillen_check(black_box(&d8), f2).unwrap()));
}

criterion_group!(benches, envelopes, bases, groups);
criterion_main!(benches);
