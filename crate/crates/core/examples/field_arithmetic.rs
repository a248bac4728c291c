//! Arithmetic in F_16 and factoring over small fields.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankeq::field::{FieldContext, Poly};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = FieldContext::standard(2, 4).unwrap();
    println!("{:?}, modulus {:?}", f, f.modulus());

    let a = f.alpha();
    let b = f.from_digits(&[1, 1, 0, 1]);
    println!("alpha = {}, b = {}", a, b);
    println!("alpha * b = {}", f.mul(a, b));
    println!("b^-1 = {}", f.inv(b).unwrap());
    println!("frobenius(b) = {} = b^2 = {}", f.frobenius(b), f.pow(b, 2));
    println!("alpha^15 = {}", f.pow(a, 15));

    // x^15 - 1 splits into linear factors over F_16.
    let mut codes = vec![0u64; 16];
    codes[0] = f.neg(f.one()).code();
    codes[15] = 1;
    let g = Poly::from_codes(&f, &codes);
    println!("roots of x^15 - 1: {}", g.roots(&mut rng).len());

    let f3 = FieldContext::prime(3).unwrap();
    let h = Poly::from_codes(&f3, &[2, 0, 0, 0, 1]);
    println!("over F_3, {} =", h);
    for (p, e) in h.factor(&mut rng).unwrap() {
        println!("  ({})^{}", p, e);
    }
}
