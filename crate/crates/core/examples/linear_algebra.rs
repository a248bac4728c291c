//! Rank, kernels, characteristic polynomials and similarity transforms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankeq::algebra::frobenius_matrix;
use rankeq::field::FieldContext;
use rankeq::matrix::Mat;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = FieldContext::prime(5).unwrap();

    let a = Mat::random(&f, 3, 5, &mut rng);
    println!(
        "A =\n{}rank {}, kernel dim {}",
        a,
        a.rank(),
        a.right_kernel().len()
    );

    let m = Mat::random(&f, 4, 4, &mut rng);
    let chi = m.char_poly().unwrap();
    println!("char poly {}, min poly {}", chi, m.min_poly().unwrap());
    println!("chi(M) = 0: {}", m.eval_poly(&chi).is_zero());

    // A matrix with irreducible characteristic polynomial generates F_{5^4}.
    let g = loop {
        let g = Mat::random(&f, 4, 4, &mut rng);
        if g.char_poly().unwrap().is_irreducible().unwrap() {
            break g;
        }
    };
    let p = Mat::random_invertible(&f, 4, &mut rng);
    let h = p.inverse().unwrap().mul(&g).mul(&p);
    let t = g.similarity_transform(&h).unwrap().expect("similar");
    println!(
        "T^-1·G·T = H: {}",
        t.inverse().unwrap().mul(&g).mul(&t) == h
    );

    // The Frobenius matrix realizes x -> x^5 on that field by conjugation.
    let theta = frobenius_matrix(&g).unwrap();
    let lhs = theta.mul(&g).mul(&theta.inverse().unwrap());
    println!("Θ·G·Θ^-1 = G^5: {}", lhs == g.pow(5));
}
