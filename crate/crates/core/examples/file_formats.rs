//! Writing and reading the text formats used by the command line tool.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankeq::code::MatrixCode;
use rankeq::equiv::{solve_mcre, SolveOutcome};
use rankeq::field::FieldContext;
use rankeq::io;
use rankeq::matrix::Mat;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let f = FieldContext::of_order(4).unwrap();
    let c = MatrixCode::random(&f, 2, 3, 2, &mut rng).unwrap();
    let d = c
        .mul_right(&Mat::random_invertible(&f, 3, &mut rng))
        .unwrap();

    let text = io::write_mcode(&c);
    print!("{}", text);
    println!("round trip: {}", io::read_mcode(&text).unwrap() == c);

    if let SolveOutcome::Equivalent(w) = solve_mcre(&c, &d, &mut rng).unwrap() {
        let wt = io::write_witness(&f, &w);
        print!("\n{}", wt);
        let (_, back) = io::read_witness(&wt).unwrap();
        println!("round trip: {}", back == w);
    }
}
