use braces::brace::{check_brace, CheckOptions};
use braces::constructions::{diagonal_brace_m2, enumerate_braces, EnumOptions};
use braces::exec::Exec;
use braces::nilpotency::{identity_suite, Scope};
use braces::ybe::{check_solution, solution_from_brace, SolutionCheckOptions};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn axioms(c: &mut Criterion) {
    let b = diagonal_brace_m2(3).unwrap();
    let lambdas = b.lambdas().to_vec();
    let mut group = c.benchmark_group("check_brace m2 p=3");
    for (name, exec) in STRATEGIES {
        let opts = CheckOptions {
            exec,
            ..CheckOptions::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |bn| {
            bn.iter(|| assert!(check_brace(b.group(), &lambdas, opts).passed()))
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate [4,4]");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        let opts = EnumOptions {
            exec,
            ..EnumOptions::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |bn| {
            bn.iter(|| assert_eq!(enumerate_braces(&[4, 4], opts).unwrap().iso_count, 83))
        });
    }
    group.finish();
}

fn yang_baxter(c: &mut Criterion) {
    let r = solution_from_brace(&diagonal_brace_m2(3).unwrap()).unwrap();
    let mut group = c.benchmark_group("check_solution m2 p=3");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        let opts = SolutionCheckOptions {
            exec,
            sampled_triples: 100_000,
            ..Default::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |bn| {
            bn.iter(|| assert!(check_solution(&r, opts).passed()))
        });
    }
    group.finish();
}

fn identities(c: &mut Criterion) {
    let b = diagonal_brace_m2(3).unwrap();
    let mut group = c.benchmark_group("identity_suite m2 p=3");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        let scope = Scope {
            exec,
            ..Scope::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |bn| {
            bn.iter(|| identity_suite(&b, &scope))
        });
    }
    group.finish();
}

criterion_group!(benches, axioms, enumeration, yang_baxter, identities);
criterion_main!(benches);
