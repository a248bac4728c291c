//! Hamming weight becomes rank under the diagonal embedding.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankeq::field::FieldContext;
use rankeq::matrix::Mat;
use rankeq::reduction::{diagonal_embed, hamming_weight, phi};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = FieldContext::prime(3).unwrap();
    let g = Mat::random(&f, 2, 5, &mut rng);
    let code = diagonal_embed(&g);
    println!(
        "[5, 2] code -> {}x{} matrix code of dim {}",
        code.m(),
        code.n(),
        code.dim()
    );

    for i in 0..9u64 {
        let coeffs = vec![f.from_int((i % 3) as i64), f.from_int((i / 3) as i64)];
        let x = g.transpose().mul_vec(&coeffs);
        let d = phi(&f, &x);
        println!(
            "x = {:?}: weight {}, rank {}, in code {}",
            x.iter().map(|e| e.code()).collect::<Vec<_>>(),
            hamming_weight(&x),
            d.rank(),
            code.contains(&d).unwrap()
        );
    }
}
