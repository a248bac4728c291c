use std::fmt;

use rand::RngCore;

use super::{upoly, FieldContext, FieldElement, FieldError, BERLEKAMP_MAX_Q};

/// Dense univariate polynomial over a [`FieldContext`], low degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldContext,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &FieldContext, coeffs: Vec<FieldElement>) -> Self {
        Poly {
            coeffs: upoly::trim(field, coeffs),
            field: field.clone(),
        }
    }

    /// From element codes; panics when a code is out of range.
    pub fn from_codes(field: &FieldContext, codes: &[u64]) -> Self {
        let coeffs = codes
            .iter()
            .map(|&c| field.element(c).expect("coefficient code out of range"))
            .collect();
        Self::new(field, coeffs)
    }

    pub fn zero(field: &FieldContext) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldContext) -> Self {
        Poly {
            field: field.clone(),
            coeffs: vec![FieldElement::ONE],
        }
    }

    pub fn x(field: &FieldContext) -> Self {
        Poly {
            field: field.clone(),
            coeffs: vec![FieldElement::ZERO, FieldElement::ONE],
        }
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn codes(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FieldElement::ONE)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    fn wrap(&self, coeffs: Vec<FieldElement>) -> Poly {
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.wrap(upoly::add(&self.field, &self.coeffs, &o.coeffs))
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.wrap(upoly::sub(&self.field, &self.coeffs, &o.coeffs))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        self.wrap(upoly::mul(&self.field, &self.coeffs, &o.coeffs))
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        self.wrap(upoly::scale(&self.field, &self.coeffs, &c))
    }

    pub fn divrem(&self, o: &Poly) -> Result<(Poly, Poly), FieldError> {
        if o.is_zero() {
            return Err(FieldError::ZeroPolynomial);
        }
        let (q, r) = upoly::divrem(&self.field, &self.coeffs, &o.coeffs);
        Ok((self.wrap(q), self.wrap(r)))
    }

    pub fn monic(&self) -> Poly {
        self.wrap(upoly::monic(&self.field, &self.coeffs))
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        self.wrap(upoly::gcd(&self.field, &self.coeffs, &o.coeffs))
    }

    pub fn lcm(&self, o: &Poly) -> Poly {
        self.wrap(upoly::lcm(&self.field, &self.coeffs, &o.coeffs))
    }

    /// Inverse modulo `m`, when `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        if m.is_zero() {
            return None;
        }
        let (g, s) = upoly::gcd_inverse(&self.field, &self.coeffs, &m.coeffs);
        (g.len() == 1).then(|| self.wrap(s))
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        upoly::eval(&self.field, &self.coeffs, &x)
    }

    pub fn derivative(&self) -> Poly {
        self.wrap(upoly::derivative(&self.field, &self.coeffs))
    }

    pub fn is_irreducible(&self) -> Result<bool, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroPolynomial);
        }
        Ok(upoly::is_irreducible(&self.field, &self.coeffs))
    }

    /// Monic irreducible factors with multiplicities, sorted by degree then codes.
    /// Berlekamp when `q <= 256`, Cantor-Zassenhaus otherwise.
    pub fn factor(&self, rng: &mut dyn RngCore) -> Result<Vec<(Poly, u32)>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroPolynomial);
        }
        let mut out: Vec<(Poly, u32)> =
            upoly::factor(&self.field, &self.coeffs, BERLEKAMP_MAX_Q, rng)
                .into_iter()
                .map(|(g, m)| (self.wrap(g), m))
                .collect();
        out.sort_by(|a, b| {
            (
                a.0.coeffs.len(),
                a.0.codes().iter().rev().copied().collect::<Vec<_>>(),
            )
                .cmp(&(
                    b.0.coeffs.len(),
                    b.0.codes().iter().rev().copied().collect::<Vec<_>>(),
                ))
        });
        Ok(out)
    }

    /// Distinct roots in the coefficient field.
    pub fn roots(&self, rng: &mut dyn RngCore) -> Vec<FieldElement> {
        let mut r = upoly::roots(&self.field, &self.coeffs, rng);
        r.sort();
        r
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.0) {
                (0, _) => write!(f, "{}", c)?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{}*x", c)?,
                (_, 1) => write!(f, "x^{}", i)?,
                _ => write!(f, "{}*x^{}", c, i)?,
            }
        }
        Ok(())
    }
}
