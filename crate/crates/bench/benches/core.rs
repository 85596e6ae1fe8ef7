use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use grasscode::autgroups::{code_group_order, grassmann_aut_generators};
use grasscode::codes::{affine_grassmann_code, grassmann_code, paut_brute_force};
use grasscode::exterior::compound_matrix;
use grasscode::incidence::chow_oracle;
use grasscode::{FieldSpec, Grassmannian, Matrix};

fn arithmetic(c: &mut Criterion) {
    let f = FieldSpec::from_order(256).unwrap();
    c.bench_function("gf256_mul_sweep", |b| {
        b.iter(|| {
            let mut acc = 1u32;
            for x in 1..256 {
                acc = f.mul(acc, black_box(x)) | 1;
            }
            acc
        })
    });
    let f = FieldSpec::from_order(9).unwrap();
    let a = Matrix::from_vec(&f, 6, 6, (0..36).map(|i| (i * 7 + 3) % 9).collect()).unwrap();
    c.bench_function("compound_6x6_grade3", |b| {
        b.iter(|| compound_matrix(black_box(&a), 3).unwrap())
    });
}

fn codes(c: &mut Criterion) {
    let f3 = FieldSpec::from_order(3).unwrap();
    c.bench_function("grassmann_2_4_3_build", |b| {
        b.iter(|| Grassmannian::new(2, 4, &f3).unwrap())
    });
    let code = grassmann_code(2, 5, &FieldSpec::from_order(2).unwrap()).unwrap();
    c.bench_function("weights_2_5_2", |b| {
        b.iter(|| code.weight_distribution().unwrap())
    });
    let aff = affine_grassmann_code(2, 4, &FieldSpec::from_order(2).unwrap()).unwrap();
    c.bench_function("paut_affine_2_4_2", |b| {
        b.iter(|| paut_brute_force(&aff).unwrap().order())
    });
}

fn groups(c: &mut Criterion) {
    let f2 = FieldSpec::from_order(2).unwrap();
    c.bench_function("chow_2_4_2", |b| {
        b.iter(|| chow_oracle(2, 4, &f2).unwrap().order)
    });
    let f3 = FieldSpec::from_order(3).unwrap();
    let code = grassmann_code(2, 4, &f3).unwrap();
    let gens = grassmann_aut_generators(2, 4, &f3).unwrap().linear().maps();
    c.bench_function("maut_grassmann_2_4_3", |b| {
        b.iter(|| code_group_order(&code, &gens).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = arithmetic, codes, groups
}
criterion_main!(benches);
