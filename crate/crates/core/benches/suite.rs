use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use frobcat::axioms::Suite;
use frobcat::par::Execution;
use frobcat::project::load_fixture;

fn battery(c: &mut Criterion) {
    let mut group = c.benchmark_group("axiom_battery");
    group.sample_size(10);
    for tag in ["pa2", "pa3"] {
        let p = load_fixture(tag).unwrap();
        let ctx = p.context().unwrap();
        for (label, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, tag), &exec, |b, &exec| {
                b.iter(|| {
                    let suite = Suite::new(&ctx, &p.modules).with_execution(exec);
                    assert!(suite.run_all(42, 50).pass);
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, battery);
criterion_main!(benches);
