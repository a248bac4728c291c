use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{upoly, FieldContext, FieldElement, FieldError, FiniteField, Poly};

/// Fields up to this order factor with Berlekamp; larger ones with Cantor-Zassenhaus.
pub const BERLEKAMP_MAX_Q: u64 = 256;

/// All distinct roots in `field` of a polynomial with coefficients in `field`.
pub fn roots_in<F: FiniteField>(field: &F, f: &[F::Elem], rng: &mut dyn RngCore) -> Vec<F::Elem> {
    upoly::roots(field, &upoly::trim(field, f.to_vec()), rng)
}

/// Maps the elements of `sub` into `k` along a fixed embedding.
fn embedding(sub: &FieldContext, k: &FieldContext) -> Result<Vec<FieldElement>, FieldError> {
    if sub.characteristic() != k.characteristic() || !k.degree().is_multiple_of(sub.degree()) {
        return Err(FieldError::IncompatibleFields);
    }
    if sub.is_prime_field() || sub == k {
        return Ok(sub.elements().collect());
    }
    let lifted: Vec<FieldElement> = sub.modulus().iter().map(|&c| FieldElement(c)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let beta = upoly::roots(k, &lifted, &mut rng)
        .into_iter()
        .min()
        .ok_or(FieldError::IncompatibleFields)?;
    Ok(sub
        .elements()
        .map(|a| {
            let d = sub.digits(a);
            let mut acc = FieldElement::ZERO;
            for &c in d.iter().rev() {
                acc = k.add(k.mul(acc, beta), FieldElement(c));
            }
            acc
        })
        .collect())
}

/// A root of `f` in the extension `k` of its coefficient field (the smallest code),
/// or `None` if `f` has no root there.
pub fn find_root_in_field(f: &Poly, k: &FieldContext) -> Result<Option<FieldElement>, FieldError> {
    if f.is_zero() {
        return Err(FieldError::ZeroPolynomial);
    }
    let emb = embedding(f.field(), k)?;
    let lifted: Vec<FieldElement> = f.coeffs().iter().map(|c| emb[c.0 as usize]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    Ok(upoly::roots(k, &lifted, &mut rng).into_iter().min())
}
