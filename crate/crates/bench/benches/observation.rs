use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use obsgame::strategy::builtin::{self, AddOrder};
use obsgame::strategy::traces;
use obsgame::{brute_force_leq_ib, compose, obs, obs_equiv};
use obsgame_bench::{bounds, term, ADD_LR, ADD_RL, ID_REC, PROJ_L};

fn observation(c: &mut Criterion) {
    let mut group = c.benchmark_group("obs");
    for len in [6, 8, 10] {
        let b = bounds(3, len);
        let add = term(ADD_LR, &b);
        group.bench_with_input(BenchmarkId::new("add", len), &b, |bench, b| bench.iter(|| obs(&add, b).unwrap()));
    }
    let b = bounds(3, 8);
    let rec = term(ID_REC, &b);
    group.bench_function("fix", |bench| bench.iter(|| obs(&rec, &b).unwrap()));
    group.finish();
}

fn equivalence(c: &mut Criterion) {
    let b = bounds(3, 8);
    let (lr, rl, proj) = (term(ADD_LR, &b), term(ADD_RL, &b), term(PROJ_L, &b));
    c.bench_function("obs_equiv/equal", |bench| bench.iter(|| obs_equiv(&lr, &rl, &b).unwrap()));
    c.bench_function("obs_equiv/witness", |bench| bench.iter(|| obs_equiv(&lr, &proj, &b).unwrap()));
    let small = bounds(1, 6);
    let (lr, rl) = (term(ADD_LR, &small), term(ADD_RL, &small));
    c.bench_function("leq_ib/brute_force", |bench| bench.iter(|| brute_force_leq_ib(&lr, &rl, &small).unwrap()));
}

fn composition(c: &mut Criterion) {
    let b = bounds(3, 8);
    let composite = compose(&builtin::add(3, AddOrder::LeftToRight), &builtin::succ(3), &b).unwrap();
    c.bench_function("compose/add_then_succ_traces", |bench| {
        bench.iter(|| traces(&composite, &b, false, true).unwrap())
    });
}

criterion_group!(benches, observation, equivalence, composition);
criterion_main!(benches);
