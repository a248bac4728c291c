//! Monomial equivalence of linear codes through matrix code equivalence, and back.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankeq::field::{FieldContext, FieldElement};
use rankeq::matrix::Mat;
use rankeq::reduction::{
    dedup_columns, extract_monomial, forward_witness, permutation_matrix, reduce_me_to_mce, Dedup,
};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = FieldContext::prime(7).unwrap();
    let (k, n) = (3, 5);
    let a = loop {
        let a = Mat::random(&f, k, n, &mut rng);
        if a.rank() == k && dedup_columns(&a).len() == n {
            break a;
        }
    };
    let s = Mat::random_invertible(&f, k, &mut rng);
    let dv: Vec<FieldElement> = (0..n).map(|_| f.random_nonzero(&mut rng)).collect();
    let dg = Mat::diagonal(&f, &dv);
    let p = permutation_matrix(&f, &[2, 0, 4, 1, 3]);
    let b = s
        .inverse()
        .unwrap()
        .mul(&a)
        .mul(&p.inverse().unwrap())
        .mul(&dg.inverse().unwrap());
    println!("A = S·B·D·P with sigma = [2, 0, 4, 1, 3]");

    let inst = reduce_me_to_mce(&a, &b, Dedup::Projective).unwrap();
    println!(
        "matrix codes: {}x{}, dim {}",
        inst.c.m(),
        inst.c.n(),
        inst.c.dim()
    );

    let (u, v) = forward_witness(&inst, &s, &dg, &p).unwrap();
    println!(
        "U·D·V = C: {}",
        inst.d.transform(Some(&u), Some(&v)).unwrap() == inst.c
    );

    let mono = extract_monomial(&u, &v, &inst).unwrap();
    println!(
        "extracted sigma {:?}, scales {:?}",
        mono.sigma,
        mono.scale.iter().map(|x| x.code()).collect::<Vec<_>>()
    );
    println!(
        "S·B·D·P = A: {}",
        mono.s.mul(&b).mul(&mono.dg).mul(&mono.p) == a
    );
}
