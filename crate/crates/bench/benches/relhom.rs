use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use relhom::{boundary_chain, div_chain, smith_normal_form, NuEvaluator, PairComplex, Word};
use relhom_bench::random_matrix;

fn subdivision(c: &mut Criterion) {
    let mut group = c.benchmark_group("subdivision");
    for (n, k) in [(2, 3), (3, 3), (3, 4)] {
        group.bench_with_input(
            BenchmarkId::new("div", format!("n{n}k{k}")),
            &(n, k),
            |b, &(n, k)| b.iter(|| div_chain(black_box(n), black_box(k)).unwrap()),
        );
    }
    let div = div_chain(3, 3).unwrap();
    let d = boundary_chain(3).unwrap();
    group.bench_function("div_on_faces_n3k3", |b| {
        b.iter(|| div.compose(black_box(&d)).unwrap())
    });
    group.finish();
}

fn smith(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for size in [10, 20, 30] {
        let a = random_matrix(size as u64, size, size, 50);
        group.bench_with_input(BenchmarkId::from_parameter(size), &a, |b, a| {
            b.iter(|| smith_normal_form(black_box(a)))
        });
    }
    group.finish();
}

fn homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology");
    group.sample_size(10);
    for (g, n) in [(1, 3), (2, 2), (2, 3)] {
        group.bench_function(format!("g{g}n{n}"), |b| {
            b.iter(|| {
                let complex = PairComplex::for_top_degree(n, g).unwrap();
                complex.homology(n).unwrap().free_rank()
            })
        });
    }
    group.finish();
}

fn nu(c: &mut Criterion) {
    let mut group = c.benchmark_group("nu");
    let eval = NuEvaluator::new(3, 2).unwrap();
    for word in ["ab", "abba", "aBab"] {
        let w: Word = word.parse().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(word), &w, |b, w| {
            b.iter(|| eval.eval_word(black_box(w)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, subdivision, smith, homology, nu);
criterion_main!(benches);
