//! Expanding an F_{q^m}-linear code into a matrix code and reading off rank weights.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankeq::code::{expand_code, expand_vector, power_basis, rank_weight, VectorCode};
use rankeq::equiv::{left_stabilizer, right_stabilizer};
use rankeq::field::{FieldContext, FieldElement};
use rankeq::matrix::Mat;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ext = FieldContext::standard(2, 3).unwrap();
    let g = Mat::from_codes(&ext, 2, 4, &[1, 0, 2, 5, 0, 1, 3, 7]);
    let v = VectorCode::new(g).unwrap();
    let basis = power_basis(&ext);
    let c = expand_code(&v, &basis).unwrap();
    println!(
        "[{}, {}] code over F_8 -> {}x{} matrix code of dimension {}",
        v.n(),
        v.k(),
        c.m(),
        c.n(),
        c.dim()
    );

    let x: Vec<FieldElement> = [1u64, 2, 4, 0]
        .iter()
        .map(|&e| ext.element(e).unwrap())
        .collect();
    let xm = expand_vector(&ext, &x, &basis).unwrap();
    println!(
        "x = (1, a, a^2, 0) expands to\n{}rank weight {} = rank {}",
        xm,
        rank_weight(&ext, &x),
        xm.rank()
    );

    println!(
        "left stabilizer dim {} (contains F_8)",
        left_stabilizer(&c).dim()
    );
    println!("right stabilizer dim {}", right_stabilizer(&c).dim());

    let r = VectorCode::random(&ext, 2, 5, &mut rng).unwrap();
    let rc = expand_code(&r, &basis).unwrap();
    println!(
        "random [5, 2]: matrix code dim {}, left stabilizer dim {}",
        rc.dim(),
        left_stabilizer(&rc).dim()
    );
}
