use std::collections::BTreeSet;

use acg_bench::{boards, terms};
use acg_core::harness::{fuzz_axioms, FuzzConfig};
use acg_core::semantics::{enumerate_boards, eval_pair, Requirements};
use acg_core::{normalize, Atom};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn normalization(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for depth in [3, 4, 5] {
        let inputs = terms(100, 3, depth, true);
        group.bench_with_input(BenchmarkId::from_parameter(depth), &inputs, |b, inputs| {
            b.iter(|| inputs.iter().for_each(|t| drop(black_box(normalize(black_box(t))))))
        });
    }
    group.finish();
}

fn evaluation(c: &mut Criterion) {
    let inputs = terms(50, 3, 4, false);
    let mut group = c.benchmark_group("eval");
    for states in [2, 3] {
        let boards = boards(20, states);
        group.bench_with_input(BenchmarkId::from_parameter(states), &boards, |b, boards| {
            b.iter(|| {
                for board in boards {
                    for t in &inputs {
                        black_box(eval_pair(board, t).unwrap());
                    }
                }
            })
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let atoms: BTreeSet<Atom> = [Atom::new("a").unwrap()].into();
    c.bench_function("enumerate 2-state boards", |b| {
        b.iter(|| enumerate_boards(2, &atoms, Requirements::game_board()).unwrap().count())
    });
}

fn axiom_campaign(c: &mut Criterion) {
    let config = FuzzConfig { trials: 10, ..FuzzConfig::default() };
    c.bench_function("check 23 axioms x 10 trials", |b| b.iter(|| fuzz_axioms(black_box(&config)).checked));
}

criterion_group!(benches, normalization, evaluation, enumeration, axiom_campaign);
criterion_main!(benches);
