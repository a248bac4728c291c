//! Recovering the hidden basis and scrambling of an expanded F_{q^m}-linear code.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankeq::code::{gen_fqm_instance, MatrixCode};
use rankeq::equiv::{left_profile, solve_hvmce, verify_witness, SolveOutcome};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let inst = gen_fqm_instance(2, 5, 4, 3, &mut rng).unwrap();
    let (c, d) = (&inst.expanded, &inst.scrambled);
    println!(
        "[5, 2] code over F_81 expanded to {}x{}, dim {}",
        c.m(),
        c.n(),
        c.dim()
    );

    let profile = left_profile(c, &mut rng).unwrap();
    println!(
        "left stabilizer dim {}, center degree {}",
        profile.stabilizer.dim(),
        profile.ell
    );

    match solve_hvmce(c, d, &mut rng).unwrap() {
        SolveOutcome::Equivalent(w) => {
            println!(
                "recovered P ({}x{}) and Q, valid {}",
                c.m(),
                c.m(),
                verify_witness(c, d, &w).unwrap()
            )
        }
        other => println!("{:?}", other),
    }

    let generic = MatrixCode::random(c.field(), c.m(), c.n(), c.dim(), &mut rng).unwrap();
    match solve_hvmce(c, &generic, &mut rng).unwrap() {
        SolveOutcome::InvalidPromise(why) => println!("generic target: invalid promise ({})", why),
        other => println!("generic target: {:?}", other),
    }
}
