//! Structure of stabilizer algebras: radical, center, idempotents and simple components.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankeq::algebra::{decompose_identity, semisimple_profile};
use rankeq::code::{expand_code, random_basis, VectorCode};
use rankeq::equiv::{left_stabilizer, right_stabilizer};
use rankeq::field::FieldContext;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let ext = FieldContext::new(3, 2, None, &mut rng).unwrap();
    let v1 = VectorCode::random(&ext, 1, 2, &mut rng).unwrap();
    let v2 = VectorCode::random(&ext, 1, 2, &mut rng).unwrap();
    let v = v1.direct_sum(&v2);
    let c = expand_code(&v, &random_basis(&ext, &mut rng)).unwrap();
    println!("code: {}x{}, dim {}", c.m(), c.n(), c.dim());

    for (side, alg) in [
        ("left", left_stabilizer(&c)),
        ("right", right_stabilizer(&c)),
    ] {
        let profile = semisimple_profile(&alg, &mut rng).unwrap();
        println!(
            "{}: dim {}, center {}, radical {}, components (u, v) {:?}",
            side,
            alg.dim(),
            alg.center().dim(),
            alg.radical().dim(),
            profile
        );
    }

    let stab = right_stabilizer(&c);
    let dec = decompose_identity(&stab, &mut rng).unwrap();
    println!(
        "identity splits into {} idempotents of ranks {:?}",
        dec.len(),
        dec.ranks
    );
    for (a, b) in &dec.factors {
        println!("  B^T·A = I: {}", b.transpose().mul(a).is_identity());
    }
}
