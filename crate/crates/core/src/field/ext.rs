use rand::RngCore;

use super::{upoly, FieldContext, FieldElement, FiniteField};

/// The field `F_q[x]/(μ)` for a monic irreducible `μ` over a [`FieldContext`].
/// Elements are coefficient vectors of length `deg μ`.
#[derive(Clone, Debug)]
pub struct ResidueField {
    base: FieldContext,
    modulus: Vec<FieldElement>,
}

impl ResidueField {
    /// `modulus` must be monic irreducible of positive degree; this is not rechecked.
    pub fn new(base: &FieldContext, modulus: &[FieldElement]) -> Self {
        let modulus = upoly::monic(base, modulus);
        assert!(modulus.len() >= 2, "modulus must have positive degree");
        ResidueField {
            base: base.clone(),
            modulus,
        }
    }

    pub fn base(&self) -> &FieldContext {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Embeds a base-field scalar.
    pub fn scalar(&self, c: FieldElement) -> Vec<FieldElement> {
        self.pad(vec![c])
    }

    /// Reduces an arbitrary polynomial to its residue.
    pub fn reduce(&self, a: &[FieldElement]) -> Vec<FieldElement> {
        self.pad(upoly::rem(
            &self.base,
            &upoly::trim(&self.base, a.to_vec()),
            &self.modulus,
        ))
    }

    fn pad(&self, mut v: Vec<FieldElement>) -> Vec<FieldElement> {
        v.resize(self.degree(), FieldElement::ZERO);
        v
    }

    fn strip(&self, a: &[FieldElement]) -> Vec<FieldElement> {
        upoly::trim(&self.base, a.to_vec())
    }
}

impl FiniteField for ResidueField {
    type Elem = Vec<FieldElement>;

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn prime_degree(&self) -> u32 {
        self.base.degree() * self.degree() as u32
    }
    fn zero(&self) -> Self::Elem {
        vec![FieldElement::ZERO; self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.scalar(FieldElement::ONE)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.base.add(*x, *y))
            .collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.base.sub(*x, *y))
            .collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(*x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let prod = upoly::mul(&self.base, &self.strip(a), &self.strip(b));
        self.pad(upoly::rem(&self.base, &prod, &self.modulus))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let s = self.strip(a);
        if s.is_empty() {
            return None;
        }
        let (g, inv) = upoly::gcd_inverse(&self.base, &s, &self.modulus);
        (g.len() == 1).then(|| self.pad(inv))
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem {
        (0..self.degree())
            .map(|_| self.base.random_elem(rng))
            .collect()
    }
    fn order_u64(&self) -> Option<u64> {
        let q = self.base.order();
        let mut r: u64 = 1;
        for _ in 0..self.degree() {
            r = r.checked_mul(q)?;
        }
        Some(r)
    }
    fn nth_element(&self, mut i: u64) -> Self::Elem {
        let q = self.base.order();
        (0..self.degree())
            .map(|_| {
                let c = FieldElement(i % q);
                i /= q;
                c
            })
            .collect()
    }
}
