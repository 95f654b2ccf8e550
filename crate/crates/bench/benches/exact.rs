use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qbundle::bundle::sections_direct;
use qbundle::coeff::{antipode, haar, product, star, CoeffElement};
use qbundle::engine::QuantumGroup;
use qbundle::parabolic::{levi_irrep, Flavor, ParabolicData};
use qbundle::{build_irrep, CartanData, Weight};

fn w(c: &[i32]) -> Weight {
    Weight(c.to_vec())
}

fn irreps(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_irrep");
    g.sample_size(10);
    for (alg, l) in [("A1", w(&[8])), ("A2", w(&[2, 2])), ("A3", w(&[1, 0, 1])), ("B2", w(&[2, 2]))] {
        let cd = std::sync::Arc::new(CartanData::from_name(alg).unwrap());
        g.bench_with_input(BenchmarkId::new(alg, &l), &l, |b, l| b.iter(|| build_irrep(&cd, black_box(l)).unwrap()));
    }
    g.finish();
}

fn clebsch_gordan(c: &mut Criterion) {
    let mut g = c.benchmark_group("clebsch_gordan");
    g.sample_size(10);
    for (alg, l, m) in [("A1", w(&[3]), w(&[3])), ("A2", w(&[1, 1]), w(&[1, 0])), ("B2", w(&[1, 0]), w(&[0, 1]))] {
        g.bench_function(format!("{alg} {l} x {m}"), |b| {
            b.iter(|| {
                let qg = QuantumGroup::from_name(alg).unwrap();
                qg.cg(black_box(&l), black_box(&m)).unwrap()
            })
        });
    }
    g.finish();
}

fn coefficients(c: &mut Criterion) {
    let qg = QuantumGroup::from_name("A2").unwrap();
    let l = w(&[1, 1]);
    let a = CoeffElement::basis(l.clone(), 2, 5);
    let b = CoeffElement::basis(w(&[1, 0]), 0, 1);
    // warm the memo tables so the timings exclude construction
    product(&qg, &a, &b).unwrap();
    star(&qg, &a).unwrap();
    c.bench_function("A2 product t(1,1) t(1,0)", |x| x.iter(|| product(&qg, black_box(&a), black_box(&b)).unwrap()));
    c.bench_function("A2 antipode t(1,1)", |x| x.iter(|| antipode(&qg, black_box(&a)).unwrap()));
    c.bench_function("A2 haar of a* a", |x| {
        x.iter(|| haar(&product(&qg, &star(&qg, black_box(&a)).unwrap(), &a).unwrap()))
    });
}

fn sections(c: &mut Criterion) {
    let mut g = c.benchmark_group("sections");
    g.sample_size(10);
    let qg = QuantumGroup::from_name("A2").unwrap();
    let p = ParabolicData::new(qg.cd(), &[0]).unwrap();
    let v = levi_irrep(&qg, &w(&[1, 0]), &p).unwrap();
    for l in [w(&[1, 0]), w(&[1, 1]), w(&[2, 1])] {
        g.bench_with_input(BenchmarkId::new("A2 levi {1} V(1,0)", &l), &l, |b, l| {
            b.iter(|| sections_direct(&qg, &v.rep, &p, Flavor::Levi, black_box(l)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, irreps, clebsch_gordan, coefficients, sections);
criterion_main!(benches);
