//! Matrix code right equivalence: find Q with C·Q = D.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankeq::code::{expand_code, random_basis, MatrixCode, VectorCode};
use rankeq::equiv::{conductor, solve_mcre, verify_witness, SolveOutcome};
use rankeq::field::FieldContext;
use rankeq::matrix::Mat;

fn report(c: &MatrixCode, d: &MatrixCode, rng: &mut ChaCha8Rng) {
    let cond = conductor(c, d).unwrap().len();
    match solve_mcre(c, d, rng).unwrap() {
        SolveOutcome::Equivalent(w) => {
            println!(
                "conductor dim {}: equivalent, witness valid {}",
                cond,
                verify_witness(c, d, &w).unwrap()
            )
        }
        other => println!("conductor dim {}: {:?}", cond, other),
    }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = FieldContext::of_order(4).unwrap();

    let c = MatrixCode::random(&f, 4, 5, 6, &mut rng).unwrap();
    let d = c
        .mul_right(&Mat::random_invertible(&f, 5, &mut rng))
        .unwrap();
    report(&c, &d, &mut rng);

    let other = MatrixCode::random(&f, 4, 5, 6, &mut rng).unwrap();
    report(&c, &other, &mut rng);

    // A transposed expansion has a field in its right stabilizer; a direct sum adds idempotents.
    let ext = FieldContext::new(2, 3, None, &mut rng).unwrap();
    let v = VectorCode::random(&ext, 1, 2, &mut rng)
        .unwrap()
        .direct_sum(&VectorCode::random(&ext, 1, 2, &mut rng).unwrap());
    let e = expand_code(&v, &random_basis(&ext, &mut rng))
        .unwrap()
        .transpose();
    let e2 = e
        .mul_right(&Mat::random_invertible(e.field(), e.n(), &mut rng))
        .unwrap();
    report(&e, &e2, &mut rng);
}
