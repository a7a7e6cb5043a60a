use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use flopkit::blowup::{blow_up, rees_charts, section_ideal, villamayor_ideal};
use flopkit::catalogue::{build_spec, Catalogue};
use flopkit::flop::verify_flop;
use flopkit::{fundamental_cycle, AdeLabel, DualGraph, GroebnerBasis, MonomialOrder};
use flopkit_bench::{cyclic3, d4_central, katsura3, regular_module};

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("groebner");
    for (name, ideal) in [("cyclic3", cyclic3()), ("katsura3", katsura3())] {
        for (oname, order) in [("degrevlex", MonomialOrder::DegRevLex), ("lex", MonomialOrder::Lex)] {
            g.bench_with_input(BenchmarkId::new(name, oname), &order, |b, o| {
                b.iter(|| GroebnerBasis::compute(ideal.ring(), ideal.gens(), o))
            });
        }
    }
    g.finish();
}

fn blowups(c: &mut Criterion) {
    let mut g = c.benchmark_group("blowup");
    g.sample_size(20);
    for n in 1..=3 {
        let (x, m) = regular_module(n);
        g.bench_function(BenchmarkId::new("regular_charts", format!("A{n}")), |b| {
            b.iter(|| rees_charts(&villamayor_ideal(&m, &x).unwrap(), &x).unwrap())
        });
    }
    let (x, m) = d4_central();
    g.bench_function("d4_rank2_villamayor", |b| b.iter(|| villamayor_ideal(&m, &x).unwrap()));
    g.bench_function("d4_rank2_sections", |b| b.iter(|| section_ideal(&m, &x, 5, 1).unwrap()));
    g.bench_function("d4_rank2_full", |b| {
        b.iter(|| blow_up(villamayor_ideal(&m, &x).unwrap(), &x, 7).unwrap())
    });
    g.finish();
}

fn graphs(c: &mut Criterion) {
    let e8 = DualGraph::ade(AdeLabel::E(8));
    c.bench_function("fundamental_cycle_e8", |b| b.iter(|| fundamental_cycle(&e8).unwrap()));
}

fn flops(c: &mut Criterion) {
    let cat = Catalogue::builtin().unwrap();
    let mut g = c.benchmark_group("flop");
    g.sample_size(20);
    for name in ["atiyah", "a2_partial"] {
        let spec = cat.family(name).unwrap();
        g.bench_function(name, |b| b.iter(|| verify_flop(&build_spec(spec).unwrap(), 1, 4).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, groebner, blowups, graphs, flops);
criterion_main!(benches);
