//! Exhaustive reference solvers on tiny instances.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankeq::algebra::MatAlgebra;
use rankeq::code::MatrixCode;
use rankeq::equiv::{right_stabilizer, solve_mcre};
use rankeq::field::FieldContext;
use rankeq::matrix::Mat;
use rankeq::oracle::{brute_mce, brute_mcre, brute_radical, gl_order, OracleCaps};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = FieldContext::prime(2).unwrap();
    let caps = OracleCaps::default();
    println!(
        "|GL_3(F_2)| = {}, |GL_4(F_3)| = {}",
        gl_order(3, 2),
        gl_order(4, 3)
    );

    let mut agree = 0;
    for _ in 0..20 {
        let c = MatrixCode::random(&f, 3, 3, 2, &mut rng).unwrap();
        let d = MatrixCode::random(&f, 3, 3, 2, &mut rng).unwrap();
        let fast = solve_mcre(&c, &d, &mut rng).unwrap().is_equivalent();
        agree += (fast == brute_mcre(&c, &d, &caps).unwrap().is_some()) as usize;
    }
    println!("right equivalence: {}/20 agree with enumeration", agree);

    let c = MatrixCode::random(&f, 2, 3, 2, &mut rng).unwrap();
    let p = Mat::random_invertible(&f, 2, &mut rng);
    let q = Mat::random_invertible(&f, 3, &mut rng);
    let d = c.transform(Some(&p), Some(&q)).unwrap();
    let (p2, q2) = brute_mce(&c, &d, &caps).unwrap().expect("equivalent");
    println!(
        "two-sided witness found: {}",
        c.transform(Some(&p2), Some(&q2)).unwrap() == d
    );

    let stab = right_stabilizer(&MatrixCode::random(&f, 2, 3, 1, &mut rng).unwrap());
    let rad = brute_radical(&stab, &caps).unwrap();
    let rad_alg = MatAlgebra::from_subspace(&f, 3, &rad).unwrap();
    println!(
        "stabilizer dim {}, radical {} by enumeration, {} by trace form",
        stab.dim(),
        rad_alg.dim(),
        stab.radical().dim()
    );
}
