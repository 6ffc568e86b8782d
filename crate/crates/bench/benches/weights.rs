//! Hot-path benchmarks: table-driven field arithmetic, full-space
//! polynomial evaluation, and the Gray-walk codeword enumeration that
//! dominates every verification run.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use prm_core::codes::{encode, exhaustive_low_weights, CodeSpec, OracleOptions};
use prm_core::gf::Field;
use prm_core::witnesses::quadric_witness;

fn field_mul(c: &mut Criterion) {
    let f = Field::of_order(27).unwrap();
    let elements: Vec<_> = f.elements().collect();
    c.bench_function("gf27_mul_full_table", |b| {
        b.iter(|| {
            let mut acc = 0u32;
            for &x in &elements {
                for &y in &elements {
                    acc += f.mul(black_box(x), black_box(y)).index() as u32;
                }
            }
            acc
        })
    });
}

fn encode_quadric(c: &mut Criterion) {
    let f = Field::of_order(5).unwrap();
    let witness = quadric_witness(&f, 5, 1).unwrap();
    let cs = CodeSpec::prm(f, 5, 6).unwrap();
    c.bench_function("encode_quadric_witness_p5_f5", |b| {
        b.iter(|| encode(&cs, black_box(&witness.poly)).unwrap().weight())
    });
}

fn oracle_small(c: &mut Criterion) {
    let cs = CodeSpec::prm(Field::of_order(3).unwrap(), 2, 2).unwrap();
    let opts = OracleOptions {
        threads: 1,
        ..OracleOptions::default()
    };
    c.bench_function("enumerate_prm_2_2_f3", |b| {
        b.iter(|| exhaustive_low_weights(black_box(&cs), &opts).unwrap().w1)
    });
}

fn oracle_mid(c: &mut Criterion) {
    let cs = CodeSpec::prm(Field::of_order(3).unwrap(), 3, 2).unwrap();
    let opts = OracleOptions {
        threads: 1,
        ..OracleOptions::default()
    };
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(20);
    group.bench_function("enumerate_prm_3_2_f3", |b| {
        b.iter(|| exhaustive_low_weights(black_box(&cs), &opts).unwrap().w2)
    });
    group.finish();
}

criterion_group!(benches, field_mul, encode_quadric, oracle_small, oracle_mid);
criterion_main!(benches);
