use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use twisted_core::basis::SignedBasis;
use twisted_core::certificates::certify_generator_commutator;
use twisted_core::commutator::{commutator_closed_form, commutator_oracle};
use twisted_core::congruence::{elementary_level_generators, enumerate_unipotent, kernel_factor_utv, u_factor};
use twisted_core::elements::sample_generators;
use twisted_core::rep::{Rep, RepKind};
use twisted_core::word::{evaluate, Param, Word};
use twisted_core::{Ring, ThetaIdeal};

fn rings(c: &mut Criterion) {
    c.bench_function("build gf(343;frob)", |b| b.iter(|| Ring::make(black_box("gf(343;frob)")).unwrap()));
    let r = Ring::make("dual(gf(9;frob);2)").unwrap();
    let all: Vec<_> = r.elements().collect();
    c.bench_function("dual ring products, all pairs", |b| {
        b.iter(|| {
            let mut acc = r.zero();
            for &x in &all {
                for &y in &all {
                    acc = r.add(acc, r.mul(x, y));
                }
            }
            acc
        })
    });
}

fn commutators(c: &mut Criterion) {
    let r = Ring::make("gf(9;frob)").unwrap();
    let rep = Rep::new(SignedBasis::parse("E6", "o2").unwrap(), RepKind::Adjoint).unwrap();
    let f = rep.folded();
    let (a, b) = (f.positive_classes()[0].base(), f.positive_classes()[1].base());
    let (t, u) = (Param::S(r.one()), Param::S(r.one()));
    c.bench_function("2E6 closed form", |bn| bn.iter(|| commutator_closed_form(rep.basis(), &r, a, &t, b, &u).unwrap()));
    c.bench_function("2E6 matrix oracle", |bn| bn.iter(|| commutator_oracle(&rep, &r, a, &t, b, &u).unwrap()));
}

fn factorizations(c: &mut Criterion) {
    let r = Ring::make("gf(9;frob)").unwrap();
    let rep = Rep::new(SignedBasis::parse("A4", "o2").unwrap(), RepKind::Natural).unwrap();
    let f = rep.folded();
    let elems = enumerate_unipotent(f, &ThetaIdeal::whole(&r), true);
    let m = evaluate(&rep, &r, &elems[elems.len() / 2].to_word(f)).unwrap();
    c.bench_function("2A4 u_factor", |b| b.iter(|| u_factor(&rep, &r, black_box(&m)).unwrap()));

    let d = Ring::make("dual(gf(9;frob);2)").unwrap();
    let j = ThetaIdeal::new(&d, &[d.epsilon().unwrap()]);
    let gens = elementary_level_generators(f, &j);
    let conj = sample_generators(f, &d);
    let w = Word::prod((0..6).map(|i| Word::conj(conj[i % conj.len()].clone(), gens[(3 * i) % gens.len()].clone())).collect());
    let m = evaluate(&rep, &d, &w).unwrap();
    c.bench_function("2A4 kernel_factor_utv", |b| b.iter(|| kernel_factor_utv(&rep, &d, black_box(&m), &j).unwrap()));
}

fn certificates(c: &mut Criterion) {
    let basis = SignedBasis::parse("A4", "o2").unwrap();
    let class = basis.folded().positive_classes()[0].id;
    let mut g = c.benchmark_group("certificates");
    g.sample_size(10);
    g.bench_function("2A4 generator certificate", |b| b.iter(|| certify_generator_commutator(&basis, class).unwrap()));
    g.finish();
}

criterion_group!(benches, rings, commutators, factorizations, certificates);
criterion_main!(benches);
