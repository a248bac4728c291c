//! Subalgebras of `M_n(F_q)`: radical, center, semisimple splitting, minimal
//! idempotents and field representations.

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::field::{roots_in, FieldContext, FieldElement, Poly, ResidueField};
use crate::matrix::{coordinates, row_span, Mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("subspace is not closed under multiplication")]
    NotClosed,
    #[error("algebra does not contain the identity")]
    NotUnital,
    #[error("algebra has a nonzero radical")]
    NotSemisimple,
    #[error("algebra is not simple")]
    NotSimple,
    #[error("matrix is not a projector")]
    NotProjector,
    #[error("algebra is not a field representation of the expected degree")]
    NotFieldRep,
    #[error("characteristic polynomial is not irreducible")]
    NotIrreducible,
    #[error("no invertible solution found")]
    NoInvertibleSolution,
    #[error("random splitting did not converge")]
    SplitFailed,
}

/// An `F_q`-subspace of `M_n(F_q)` closed under multiplication, with canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatAlgebra {
    field: FieldContext,
    n: usize,
    basis: Vec<Mat>,
    unital: bool,
}

fn flat(m: &Mat) -> Vec<FieldElement> {
    m.entries().to_vec()
}

fn span_mats(field: &FieldContext, n: usize, mats: &[Mat]) -> Vec<Mat> {
    let v: Vec<Vec<FieldElement>> = mats.iter().map(flat).collect();
    row_span(field, &v, n * n)
        .into_iter()
        .map(|r| Mat::from_vec(field, n, n, r))
        .collect()
}

impl MatAlgebra {
    /// Wraps a subspace after checking closure under products.
    pub fn from_subspace(
        field: &FieldContext,
        n: usize,
        mats: &[Mat],
    ) -> Result<Self, AlgebraError> {
        for m in mats {
            if m.shape() != (n, n) {
                return Err(AlgebraError::ShapeMismatch(format!("expected {}x{}", n, n)));
            }
        }
        let basis = span_mats(field, n, mats);
        let flat_basis: Vec<Vec<FieldElement>> = basis.iter().map(flat).collect();
        for a in &basis {
            for b in &basis {
                if coordinates(field, &flat_basis, a.mul(b).entries()).is_none() {
                    return Err(AlgebraError::NotClosed);
                }
            }
        }
        let id = Mat::identity(field, n);
        let unital = coordinates(field, &flat_basis, id.entries()).is_some();
        Ok(MatAlgebra {
            field: field.clone(),
            n,
            basis,
            unital,
        })
    }

    /// Smallest subalgebra containing `generators` (and the identity when `unital`).
    pub fn closure(
        field: &FieldContext,
        n: usize,
        generators: &[Mat],
        unital: bool,
    ) -> Result<Self, AlgebraError> {
        for m in generators {
            if m.shape() != (n, n) {
                return Err(AlgebraError::ShapeMismatch(format!("expected {}x{}", n, n)));
            }
        }
        let mut mats: Vec<Mat> = generators.to_vec();
        if unital {
            mats.push(Mat::identity(field, n));
        }
        let mut basis = span_mats(field, n, &mats);
        loop {
            let mut all = basis.clone();
            for a in &basis {
                for b in &basis {
                    all.push(a.mul(b));
                }
            }
            let next = span_mats(field, n, &all);
            if next.len() == basis.len() {
                break;
            }
            basis = next;
        }
        let id = Mat::identity(field, n);
        let flat_basis: Vec<Vec<FieldElement>> = basis.iter().map(flat).collect();
        let has_id = coordinates(field, &flat_basis, id.entries()).is_some();
        Ok(MatAlgebra {
            field: field.clone(),
            n,
            basis,
            unital: has_id,
        })
    }

    pub fn full(field: &FieldContext, n: usize) -> Self {
        let basis = (0..n * n)
            .map(|k| Mat::unit(field, n, n, k / n, k % n))
            .collect();
        MatAlgebra {
            field: field.clone(),
            n,
            basis,
            unital: true,
        }
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    fn flat_basis(&self) -> Vec<Vec<FieldElement>> {
        self.basis.iter().map(flat).collect()
    }

    pub fn contains(&self, m: &Mat) -> bool {
        m.shape() == (self.n, self.n)
            && coordinates(&self.field, &self.flat_basis(), m.entries()).is_some()
    }

    /// Same subspace.
    pub fn same_span(&self, o: &MatAlgebra) -> bool {
        self.n == o.n && self.basis == o.basis
    }

    pub fn combination(&self, c: &[FieldElement]) -> Mat {
        let mut acc = Mat::zeros(&self.field, self.n, self.n);
        for (b, &x) in self.basis.iter().zip(c) {
            if !x.is_zero() {
                acc = acc.add_scaled(b, x);
            }
        }
        acc
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Mat {
        let c: Vec<FieldElement> = self.basis.iter().map(|_| self.field.random(rng)).collect();
        self.combination(&c)
    }

    /// `{ z : z·b = b·z for all b }`.
    pub fn center(&self) -> MatAlgebra {
        let f = &self.field;
        let d = self.dim();
        if d == 0 {
            return self.clone();
        }
        let n2 = self.n * self.n;
        let mut sys = Mat::zeros(f, d * n2, d);
        for (i, bi) in self.basis.iter().enumerate() {
            for (j, bj) in self.basis.iter().enumerate() {
                let comm = bi.mul(bj).sub(&bj.mul(bi));
                for (k, &x) in comm.entries().iter().enumerate() {
                    sys[(j * n2 + k, i)] = x;
                }
            }
        }
        let mats: Vec<Mat> = sys
            .right_kernel()
            .iter()
            .map(|c| self.combination(c))
            .collect();
        MatAlgebra::from_subspace(f, self.n, &mats).expect("center is a subalgebra")
    }

    pub fn is_commutative(&self) -> bool {
        self.basis
            .iter()
            .all(|a| self.basis.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Jacobson radical, as a (non-unital) ideal.
    pub fn radical(&self) -> MatAlgebra {
        let f = &self.field;
        if self.basis.is_empty() {
            return self.clone();
        }
        let fp = f.prime_subfield();
        let e = f.degree() as usize;
        let prime_basis: Vec<Mat> = if e == 1 {
            self.basis.clone()
        } else {
            let mut out = Vec::new();
            let mut beta = FieldElement::ONE;
            for _ in 0..e {
                for b in &self.basis {
                    out.push(embed_prime(f, &fp, &b.scale(beta)));
                }
                beta = f.mul(beta, f.alpha());
            }
            out
        };
        let rad_p = prime_radical(&fp, &prime_basis);
        let mats: Vec<Mat> = if e == 1 {
            rad_p
        } else {
            rad_p.iter().map(|m| unembed_prime(f, m, self.n)).collect()
        };
        let basis = span_mats(f, self.n, &mats);
        MatAlgebra {
            field: f.clone(),
            n: self.n,
            basis,
            unital: false,
        }
    }

    /// Local: the only idempotents are 0 and 1.
    pub fn is_local(&self, rng: &mut dyn RngCore) -> Result<bool, AlgebraError> {
        Ok(decompose_identity(self, rng)?.idempotents.len() == 1)
    }
}

/// Regular representation of `F_q` over `F_p`, entry by entry.
fn embed_prime(f: &FieldContext, fp: &FieldContext, m: &Mat) -> Mat {
    let e = f.degree() as usize;
    let (r, c) = m.shape();
    let mut out = Mat::zeros(fp, r * e, c * e);
    for i in 0..r {
        for j in 0..c {
            let blk = f.mul_matrix_prime(m[(i, j)]);
            for a in 0..e {
                for b in 0..e {
                    out[(i * e + a, j * e + b)] = FieldElement(blk[a][b]);
                }
            }
        }
    }
    out
}

fn unembed_prime(f: &FieldContext, m: &Mat, n: usize) -> Mat {
    let e = f.degree() as usize;
    let mut out = Mat::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            let digits: Vec<u64> = (0..e).map(|a| m[(i * e + a, j * e)].0).collect();
            out[(i, j)] = f.from_digits(&digits);
        }
    }
    out
}

/// Integer matrix arithmetic modulo `modulus` for the trace chain.
fn int_mat_mul(a: &[u64], b: &[u64], n: usize, modulus: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                let y = b[k * n + j];
                if y != 0 {
                    out[i * n + j] =
                        ((out[i * n + j] as u128 + x as u128 * y as u128) % modulus as u128) as u64;
                }
            }
        }
    }
    out
}

/// `Tr(ã^(p^i)) / p^i mod p` for the integer lift `ã` of `a`.
fn trace_chain_value(a: &Mat, p: u64, i: u32) -> FieldElement {
    let n = a.rows();
    let modulus = p.pow(i + 1);
    let mut x: Vec<u64> = a.codes();
    for _ in 0..i {
        // x <- x^p
        let base = x.clone();
        let mut acc = base.clone();
        for _ in 1..p {
            acc = int_mat_mul(&acc, &base, n, modulus);
        }
        x = acc;
    }
    let tr = (0..n).fold(0u128, |s, k| (s + x[k * n + k] as u128) % modulus as u128) as u64;
    let pi = p.pow(i);
    debug_assert_eq!(tr % pi, 0);
    FieldElement((tr / pi) % p)
}

/// Radical of the `F_p`-algebra spanned by `basis` inside `M_N(F_p)`, by the chain
/// `I_i = { a ∈ I_{i-1} : g_i(ab) = 0 for all b }`.
fn prime_radical(fp: &FieldContext, basis: &[Mat]) -> Vec<Mat> {
    let p = fp.characteristic();
    let big_n = basis[0].rows() as u64;
    let mut l = 0u32;
    while p.checked_pow(l + 1).is_some_and(|v| v <= big_n) {
        l += 1;
    }
    let mut ideal: Vec<Mat> = basis.to_vec();
    for i in 0..=l {
        if ideal.is_empty() {
            break;
        }
        let mut sys = Mat::zeros(fp, basis.len(), ideal.len());
        for (j, x) in ideal.iter().enumerate() {
            for (k, b) in basis.iter().enumerate() {
                sys[(k, j)] = trace_chain_value(&x.mul(b), p, i);
            }
        }
        let ker = sys.right_kernel();
        ideal = ker
            .iter()
            .map(|c| {
                let mut acc = Mat::zeros(fp, basis[0].rows(), basis[0].cols());
                for (x, &cj) in ideal.iter().zip(c) {
                    if !cj.is_zero() {
                        acc = acc.add_scaled(x, cj);
                    }
                }
                acc
            })
            .collect();
    }
    ideal
}

/// Reduction modulo a fixed subspace (canonical representatives have zeros at its pivots).
struct Reducer {
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl Reducer {
    fn new(field: &FieldContext, vecs: &[Vec<FieldElement>], len: usize) -> Self {
        let rows = row_span(field, vecs, len);
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        Reducer { rows, pivots }
    }

    fn reduce(&self, f: &FieldContext, v: &mut [FieldElement]) {
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in v.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x = f.add(*x, f.mul(nc, y));
                }
            }
        }
    }
}

/// The semisimple quotient `A / Rad(A)`, with elements as reduced representatives in `A`.
struct Quotient {
    field: FieldContext,
    n: usize,
    rad: Reducer,
    basis: Vec<Mat>,
    unit: Mat,
}

impl Quotient {
    fn new(alg: &MatAlgebra, rad: &MatAlgebra) -> Self {
        let f = alg.field();
        let n = alg.n();
        let reducer = Reducer::new(f, &rad.flat_basis(), n * n);
        let mut q = Quotient {
            field: f.clone(),
            n,
            rad: reducer,
            basis: Vec::new(),
            unit: Mat::identity(f, n),
        };
        let reps: Vec<Mat> = alg.basis().iter().map(|b| q.red(b)).collect();
        q.basis = q.span(&reps);
        q.unit = q.red(&Mat::identity(f, n));
        q
    }

    fn red(&self, m: &Mat) -> Mat {
        let mut v = flat(m);
        self.rad.reduce(&self.field, &mut v);
        Mat::from_vec(&self.field, self.n, self.n, v)
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        self.red(&a.mul(b))
    }

    fn span(&self, mats: &[Mat]) -> Vec<Mat> {
        span_mats(&self.field, self.n, mats)
    }

    fn combination(&self, basis: &[Mat], c: &[FieldElement]) -> Mat {
        let mut acc = Mat::zeros(&self.field, self.n, self.n);
        for (b, &x) in basis.iter().zip(c) {
            if !x.is_zero() {
                acc = acc.add_scaled(b, x);
            }
        }
        acc
    }

    fn pow(&self, x: &Mat, mut k: u64, unit: &Mat) -> Mat {
        let mut r = unit.clone();
        let mut b = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(&r, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    /// `x^q` in the quotient.
    fn frob_q(&self, x: &Mat, unit: &Mat) -> Mat {
        let p = self.field.characteristic();
        let mut r = x.clone();
        for _ in 0..self.field.degree() {
            r = self.pow(&r, p, unit);
        }
        r
    }

    /// Minimal polynomial of `x` in the corner algebra with unit `e`.
    fn min_poly(&self, x: &Mat, e: &Mat) -> Poly {
        let f = &self.field;
        let mut powers: Vec<Vec<FieldElement>> = Vec::new();
        let mut cur = e.clone();
        loop {
            let v = flat(&cur);
            if let Some(c) = coordinates(f, &powers, &v) {
                if !powers.is_empty() || v.iter().all(|x| x.is_zero()) {
                    let mut coeffs: Vec<FieldElement> = c.iter().map(|&a| f.neg(a)).collect();
                    coeffs.push(FieldElement::ONE);
                    return Poly::new(f, coeffs);
                }
            }
            powers.push(v);
            cur = self.mul(&cur, x);
        }
    }

    fn eval(&self, g: &Poly, x: &Mat, e: &Mat) -> Mat {
        let mut acc = Mat::zeros(&self.field, self.n, self.n);
        for &c in g.coeffs().iter().rev() {
            acc = self.mul(&acc, x).add_scaled(e, c);
        }
        acc
    }

    /// Center of the quotient.
    fn center(&self) -> Vec<Mat> {
        let f = &self.field;
        let d = self.basis.len();
        let n2 = self.n * self.n;
        let mut sys = Mat::zeros(f, d * n2, d);
        for (i, bi) in self.basis.iter().enumerate() {
            for (j, bj) in self.basis.iter().enumerate() {
                let comm = self.red(&bi.mul(bj).sub(&bj.mul(bi)));
                for (k, &x) in comm.entries().iter().enumerate() {
                    sys[(j * n2 + k, i)] = x;
                }
            }
        }
        let mats: Vec<Mat> = sys
            .right_kernel()
            .iter()
            .map(|c| self.combination(&self.basis, c))
            .collect();
        self.span(&mats)
    }

    /// Primitive central idempotents, split deterministically with the subalgebra
    /// `{ z ∈ Z : z^q = z }`.
    fn central_idempotents(&self, rng: &mut dyn RngCore) -> Vec<Mat> {
        let f = &self.field;
        let z = self.center();
        let n2 = self.n * self.n;
        let mut sys = Mat::zeros(f, n2, z.len());
        for (i, zi) in z.iter().enumerate() {
            let l = self.frob_q(zi, &self.unit).sub(zi);
            for (k, &x) in l.entries().iter().enumerate() {
                sys[(k, i)] = x;
            }
        }
        let split: Vec<Mat> = sys
            .right_kernel()
            .iter()
            .map(|c| self.combination(&z, c))
            .collect();
        let target = split.len();
        let mut idems = vec![self.unit.clone()];
        for b in &split {
            if idems.len() == target {
                break;
            }
            let mut next = Vec::new();
            for e in idems {
                let x = self.mul(b, &e);
                let mu = self.min_poly(&x, &e);
                let roots = mu.roots(rng);
                if roots.len() < 2 {
                    next.push(e);
                    continue;
                }
                for (ri, &r) in roots.iter().enumerate() {
                    // Lagrange idempotent Π_{s ≠ r} (x - s)/(r - s)
                    let mut g = Poly::one(f);
                    for (si, &s) in roots.iter().enumerate() {
                        if si == ri {
                            continue;
                        }
                        let inv = f.inv(f.sub(r, s)).unwrap();
                        g = g
                            .mul(&Poly::new(f, vec![f.neg(s), FieldElement::ONE]))
                            .scale(inv);
                    }
                    next.push(self.eval(&g, &x, &e));
                }
            }
            idems = next;
        }
        idems
    }

    /// Corner algebra `e·S·e`.
    fn corner(&self, e: &Mat) -> Vec<Mat> {
        let mats: Vec<Mat> = self
            .basis
            .iter()
            .map(|b| self.mul(&self.mul(e, b), e))
            .collect();
        self.span(&mats)
    }

    /// Splits an idempotent `e` into minimal ones, given the degree `v` of the center
    /// of the simple component containing it.
    fn primitive_split(
        &self,
        c: &Mat,
        v: usize,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<Mat>, AlgebraError> {
        let f = &self.field;
        let mut stack = vec![c.clone()];
        let mut out = Vec::new();
        while let Some(e) = stack.pop() {
            let corner = self.corner(&e);
            if corner.len() <= v {
                out.push(e);
                continue;
            }
            let cap = 64 * corner.len() + 64;
            let mut split = None;
            for attempt in 0..cap + corner.len() {
                let x = if attempt < cap {
                    let coeffs: Vec<FieldElement> = corner.iter().map(|_| f.random(rng)).collect();
                    self.combination(&corner, &coeffs)
                } else {
                    corner[attempt - cap].clone()
                };
                if let Some(parts) = self.crt_split(&x, &e, rng) {
                    split = Some(parts);
                    break;
                }
            }
            match split {
                Some(parts) => stack.extend(parts.into_iter().rev()),
                None => return Err(AlgebraError::SplitFailed),
            }
        }
        Ok(out)
    }

    /// Orthogonal idempotents from coprime factors of the minimal polynomial of `x`.
    fn crt_split(&self, x: &Mat, e: &Mat, rng: &mut dyn RngCore) -> Option<Vec<Mat>> {
        let mu = self.min_poly(x, e);
        let factors = mu.factor(rng).ok()?;
        if factors.len() < 2 {
            return None;
        }
        let mut parts = Vec::new();
        for (g, m) in &factors {
            let mut gm = Poly::one(&self.field);
            for _ in 0..*m {
                gm = gm.mul(g);
            }
            let cof = mu.divrem(&gm).ok()?.0;
            let inv = cof.inverse_mod(&gm)?;
            let h = cof.mul(&inv).divrem(&mu).ok()?.1;
            parts.push(self.eval(&h, x, e));
        }
        Some(parts)
    }
}

/// One simple component of a semisimple algebra.
#[derive(Clone, Debug)]
pub struct SimpleComponent {
    pub basis: Vec<Mat>,
    pub idempotent: Mat,
}

/// `S = S_1 ⊕ ... ⊕ S_r` for a semisimple unital `S`.
pub fn split_semisimple(
    s: &MatAlgebra,
    rng: &mut dyn RngCore,
) -> Result<Vec<SimpleComponent>, AlgebraError> {
    if !s.is_unital() {
        return Err(AlgebraError::NotUnital);
    }
    let rad = s.radical();
    if rad.dim() > 0 {
        return Err(AlgebraError::NotSemisimple);
    }
    let q = Quotient::new(s, &rad);
    Ok(q.central_idempotents(rng)
        .into_iter()
        .map(|c| {
            let mats: Vec<Mat> = q.basis.iter().map(|b| q.mul(&c, b)).collect();
            SimpleComponent {
                basis: q.span(&mats),
                idempotent: c,
            }
        })
        .collect())
}

/// `S ≅ M_u(F_{q^v})` realized by a minimal idempotent `e` and the left ideal `S·e`.
#[derive(Clone, Debug)]
pub struct SimpleIso {
    pub u: usize,
    pub v: usize,
    pub idempotent: Mat,
    pub module_basis: Vec<Mat>,
}

pub fn explicit_simple_iso(
    s: &MatAlgebra,
    rng: &mut dyn RngCore,
) -> Result<SimpleIso, AlgebraError> {
    let comps = split_semisimple(s, rng).map_err(|e| match e {
        AlgebraError::NotSemisimple => AlgebraError::NotSimple,
        other => other,
    })?;
    if comps.len() != 1 {
        return Err(AlgebraError::NotSimple);
    }
    let zero = MatAlgebra {
        field: s.field.clone(),
        n: s.n,
        basis: Vec::new(),
        unital: false,
    };
    let q = Quotient::new(s, &zero);
    let v = s.center().dim();
    let prims = q.primitive_split(&q.unit, v, rng)?;
    let u = prims.len();
    let e = prims[0].clone();
    let module: Vec<Mat> = s.basis().iter().map(|b| b.mul(&e)).collect();
    Ok(SimpleIso {
        u,
        v,
        idempotent: e,
        module_basis: span_mats(&s.field, s.n, &module),
    })
}

/// Minimal orthogonal idempotents summing to the identity, with projector factors.
#[derive(Clone, Debug)]
pub struct IdemDecomposition {
    pub idempotents: Vec<Mat>,
    /// `(A_i, B_i)` with `E_i = A_i·B_iᵀ` and `B_iᵀ·A_i = I`.
    pub factors: Vec<(Mat, Mat)>,
    pub ranks: Vec<usize>,
}

impl IdemDecomposition {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }
}

/// Decomposes the identity of a unital algebra into minimal orthogonal idempotents.
pub fn decompose_identity(
    a: &MatAlgebra,
    rng: &mut dyn RngCore,
) -> Result<IdemDecomposition, AlgebraError> {
    if !a.is_unital() {
        return Err(AlgebraError::NotUnital);
    }
    let f = a.field();
    let n = a.n();
    let rad = a.radical();
    let q = Quotient::new(a, &rad);
    let zq = q.center();
    let mut reps = Vec::new();
    for c in q.central_idempotents(rng) {
        let zc: Vec<Mat> = zq.iter().map(|z| q.mul(&c, z)).collect();
        let v = q.span(&zc).len();
        reps.extend(q.primitive_split(&c, v, rng)?);
    }
    let id = Mat::identity(f, n);
    let p = f.characteristic();
    let mut steps = 0u32;
    let mut pn = 1u64;
    while pn < n as u64 {
        pn = pn.saturating_mul(p);
        steps += 1;
    }
    let mut idempotents: Vec<Mat> = Vec::with_capacity(reps.len());
    let mut acc = Mat::zeros(f, n, n);
    for (i, r) in reps.iter().enumerate() {
        let e = if i + 1 == reps.len() {
            id.sub(&acc)
        } else {
            let comp = id.sub(&acc);
            comp.mul(r).mul(&comp).pow_char(steps)
        };
        debug_assert!(e.mul(&e) == e);
        acc = acc.add(&e);
        idempotents.push(e);
    }
    let mut factors = Vec::new();
    let mut ranks = Vec::new();
    for e in &idempotents {
        let (fa, fb) = factor_projector(e)?;
        ranks.push(fa.cols());
        factors.push((fa, fb));
    }
    Ok(IdemDecomposition {
        idempotents,
        factors,
        ranks,
    })
}

/// Simple components of `A / Rad(A)` as pairs `(u, v)` for `M_u(F_{q^v})`, sorted.
pub fn semisimple_profile(
    a: &MatAlgebra,
    rng: &mut dyn RngCore,
) -> Result<Vec<(usize, usize)>, AlgebraError> {
    let d = decompose_identity(a, rng)?;
    let rad = a.radical();
    let f = a.field();
    let n = a.n();
    let sandwich = |src: &[Mat], x: &Mat, y: &Mat| -> usize {
        let v: Vec<Mat> = src.iter().map(|b| x.mul(b).mul(y)).collect();
        span_mats(f, n, &v).len()
    };
    let es = &d.idempotents;
    let k = es.len();
    let mut block: Vec<usize> = (0..k).collect();
    fn root(b: &mut [usize], mut i: usize) -> usize {
        while b[i] != i {
            b[i] = b[b[i]];
            i = b[i];
        }
        i
    }
    for i in 0..k {
        for j in i + 1..k {
            if sandwich(a.basis(), &es[i], &es[j]) > sandwich(rad.basis(), &es[i], &es[j]) {
                let (ri, rj) = (root(&mut block, i), root(&mut block, j));
                block[ri] = rj;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, (usize, usize)> =
        std::collections::BTreeMap::new();
    for (i, e) in es.iter().enumerate() {
        let v = sandwich(a.basis(), e, e) - sandwich(rad.basis(), e, e);
        let r = root(&mut block, i);
        let g = groups.entry(r).or_insert((0, v));
        g.0 += 1;
    }
    let mut out: Vec<(usize, usize)> = groups.into_values().collect();
    out.sort();
    Ok(out)
}

/// `E = A·Bᵀ` with `Bᵀ·A = I_r`: `A` holds the pivot columns of `E`, `Bᵀ` the nonzero rows of `rref(E)`.
pub fn factor_projector(e: &Mat) -> Result<(Mat, Mat), AlgebraError> {
    if !e.is_square() || e.mul(e) != *e {
        return Err(AlgebraError::NotProjector);
    }
    let r = e.rref();
    let a = e.select_cols(&r.pivots);
    let bt = r.r.submatrix(0, 0, r.rank, e.cols());
    Ok((a, bt.transpose()))
}

/// A generator `A` of `S` with irreducible minimal polynomial of degree `d = dim S`, if any.
pub fn find_field_generator(s: &MatAlgebra, d: usize, rng: &mut dyn RngCore) -> Option<Mat> {
    if s.dim() != d || d == 0 || !s.is_unital() {
        return None;
    }
    let good = |x: &Mat| {
        x.min_poly()
            .ok()
            .is_some_and(|mu| mu.degree() == Some(d) && mu.is_irreducible().unwrap_or(false))
    };
    for b in s.basis() {
        if good(b) {
            return Some(b.clone());
        }
    }
    for _ in 0..64 * d + 64 {
        let x = s.random_element(rng);
        if good(&x) {
            return Some(x);
        }
    }
    None
}

/// `P` with `S1 = P⁻¹·S2·P` for two field representations of equal degree.
/// `Ok(None)` when the dimensions differ.
pub fn conjugate_field_reps(
    s1: &MatAlgebra,
    s2: &MatAlgebra,
    rng: &mut dyn RngCore,
) -> Result<Option<Mat>, AlgebraError> {
    if s1.n() != s2.n() {
        return Err(AlgebraError::ShapeMismatch(
            "algebras live in different matrix rings".into(),
        ));
    }
    if s1.dim() != s2.dim() {
        return Ok(None);
    }
    let ell = s1.dim();
    let a1 = find_field_generator(s1, ell, rng).ok_or(AlgebraError::NotFieldRep)?;
    let a2 = find_field_generator(s2, ell, rng).ok_or(AlgebraError::NotFieldRep)?;
    let f = s1.field();
    let mu1 = a1.min_poly().expect("square");
    let mu2 = a2.min_poly().expect("square");
    let k = ResidueField::new(f, mu2.coeffs());
    let lifted: Vec<Vec<FieldElement>> = mu1.coeffs().iter().map(|&c| k.scalar(c)).collect();
    let root = roots_in(&k, &lifted, rng)
        .into_iter()
        .min()
        .ok_or(AlgebraError::NotFieldRep)?;
    let x = a2.eval_poly(&Poly::new(f, root));
    let p = x
        .similarity_transform(&a1)
        .map_err(|_| AlgebraError::NotFieldRep)?
        .ok_or(AlgebraError::NotFieldRep)?;
    Ok(Some(p))
}

/// Some invertible `Θ` with `Θ·A = A^q·Θ`, for `A` with irreducible characteristic polynomial.
pub fn frobenius_matrix(a: &Mat) -> Result<Mat, AlgebraError> {
    let chi = a
        .char_poly()
        .map_err(|e| AlgebraError::ShapeMismatch(e.to_string()))?;
    if !chi.is_irreducible().unwrap_or(false) {
        return Err(AlgebraError::NotIrreducible);
    }
    let f = a.field();
    let m = a.rows();
    let aq = a.pow_q();
    // unknown Θ flattened row-major; (ΘA)_{ij} = Σ_k Θ_{ik} A_{kj}, (A^qΘ)_{ij} = Σ_k Aq_{ik} Θ_{kj}
    let mut sys = Mat::zeros(f, m * m, m * m);
    for i in 0..m {
        for j in 0..m {
            let row = i * m + j;
            for k in 0..m {
                let c = i * m + k;
                sys[(row, c)] = f.add(sys[(row, c)], a[(k, j)]);
                let c2 = k * m + j;
                sys[(row, c2)] = f.sub(sys[(row, c2)], aq[(i, k)]);
            }
        }
    }
    let ker = sys.right_kernel();
    let first = ker.first().ok_or(AlgebraError::NoInvertibleSolution)?;
    let theta = Mat::from_vec(f, m, m, first.clone());
    if !theta.is_invertible() {
        return Err(AlgebraError::NoInvertibleSolution);
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2() -> FieldContext {
        FieldContext::prime(2).unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(17)
    }

    fn companion_f4() -> Mat {
        Mat::companion(&Poly::from_codes(&f2(), &[1, 1, 1]))
    }

    fn upper_triangular() -> MatAlgebra {
        let f = f2();
        MatAlgebra::closure(
            &f,
            2,
            &[Mat::unit(&f, 2, 2, 0, 0), Mat::unit(&f, 2, 2, 0, 1)],
            true,
        )
        .unwrap()
    }

    fn check_decomposition(a: &MatAlgebra, d: &IdemDecomposition) {
        let f = a.field();
        let n = a.n();
        let mut sum = Mat::zeros(f, n, n);
        for (i, e) in d.idempotents.iter().enumerate() {
            assert!(a.contains(e));
            assert_eq!(&e.mul(e), e);
            for (j, g) in d.idempotents.iter().enumerate() {
                if i != j {
                    assert!(e.mul(g).is_zero());
                }
            }
            let (fa, fb) = &d.factors[i];
            assert_eq!(&fa.mul(&fb.transpose()), e);
            assert!(fb.transpose().mul(fa).is_identity());
            sum = sum.add(e);
        }
        assert!(sum.is_identity());
    }

    #[test]
    fn closure_examples() {
        let f = f2();
        assert_eq!(
            MatAlgebra::closure(&f, 2, &[companion_f4()], true)
                .unwrap()
                .dim(),
            2
        );
        assert_eq!(
            MatAlgebra::closure(&f, 3, &[Mat::zeros(&f, 3, 3)], true)
                .unwrap()
                .dim(),
            1
        );
        let units: Vec<Mat> = (0..4).map(|k| Mat::unit(&f, 2, 2, k / 2, k % 2)).collect();
        assert_eq!(MatAlgebra::closure(&f, 2, &units, false).unwrap().dim(), 4);
        assert_eq!(
            MatAlgebra::from_subspace(
                &f,
                2,
                &[Mat::unit(&f, 2, 2, 0, 1), Mat::unit(&f, 2, 2, 1, 0)]
            ),
            Err(AlgebraError::NotClosed)
        );
    }

    #[test]
    fn radical_examples() {
        let f = f2();
        assert_eq!(MatAlgebra::full(&f, 2).radical().dim(), 0);
        let r = upper_triangular().radical();
        assert_eq!(r.basis(), &[Mat::unit(&f, 2, 2, 0, 1)]);
        let a = MatAlgebra::closure(&f, 2, &[Mat::unit(&f, 2, 2, 0, 1)], true).unwrap();
        assert_eq!(a.radical().basis(), &[Mat::unit(&f, 2, 2, 0, 1)]);
    }

    #[test]
    fn radical_where_trace_form_degenerates() {
        for p in [2u64, 3] {
            let f = FieldContext::prime(p).unwrap();
            let n = p as usize;
            assert_eq!(MatAlgebra::full(&f, n).radical().dim(), 0);
            let f4 = FieldContext::of_order(p * p).unwrap();
            assert_eq!(MatAlgebra::full(&f4, n).radical().dim(), 0);
        }
    }

    #[test]
    fn radical_over_extension_field() {
        let f = FieldContext::of_order(4).unwrap();
        let mut g = Mat::zeros(&f, 3, 3);
        g[(0, 1)] = f.alpha();
        g[(1, 2)] = FieldElement::ONE;
        let a = MatAlgebra::closure(
            &f,
            3,
            &[
                g.clone(),
                Mat::diagonal(&f, &[f.alpha(), f.alpha(), f.alpha()]),
            ],
            true,
        )
        .unwrap();
        let r = a.radical();
        assert_eq!(r.dim(), 2);
        assert!(r.contains(&g));
    }

    #[test]
    fn center_examples() {
        let f = f2();
        assert_eq!(MatAlgebra::full(&f, 2).center().dim(), 1);
        let a = MatAlgebra::closure(&f, 2, &[companion_f4()], true).unwrap();
        assert!(a.center().same_span(&a));
        let c = upper_triangular().center();
        assert_eq!(c.basis(), &[Mat::identity(&f, 2)]);
    }

    #[test]
    fn split_examples() {
        let f = f2();
        let mut r = rng();
        let s = MatAlgebra::closure(&f, 2, &[companion_f4()], true).unwrap();
        let comps = split_semisimple(&s, &mut r).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].idempotent.is_identity());

        let d2 = MatAlgebra::closure(&f, 2, &[Mat::unit(&f, 2, 2, 0, 0)], true).unwrap();
        let comps = split_semisimple(&d2, &mut r).unwrap();
        let mut idems: Vec<Mat> = comps.iter().map(|c| c.idempotent.clone()).collect();
        idems.sort_by_key(|m| m.codes());
        assert_eq!(
            idems,
            vec![Mat::unit(&f, 2, 2, 1, 1), Mat::unit(&f, 2, 2, 0, 0)]
        );

        let mut gens: Vec<Mat> = Vec::new();
        for k in 0..4 {
            let mut m = Mat::zeros(&f, 3, 3);
            m[(k / 2, k % 2)] = FieldElement::ONE;
            gens.push(m);
        }
        gens.push(Mat::unit(&f, 3, 3, 2, 2));
        let s = MatAlgebra::closure(&f, 3, &gens, true).unwrap();
        let mut dims: Vec<usize> = split_semisimple(&s, &mut r)
            .unwrap()
            .iter()
            .map(|c| c.basis.len())
            .collect();
        dims.sort();
        assert_eq!(dims, vec![1, 4]);
        assert_eq!(
            split_semisimple(&upper_triangular(), &mut r).unwrap_err(),
            AlgebraError::NotSemisimple
        );
    }

    #[test]
    fn split_field_without_primitive_center_element() {
        // F_8 ⊕ F_8 ⊕ F_2: the center has no single element of full degree
        let f = f2();
        let c8 = Mat::companion(&Poly::from_codes(&f, &[1, 1, 0, 1]));
        let z3 = Mat::zeros(&f, 3, 3);
        let i3 = Mat::identity(&f, 3);
        let g1 = Mat::block_diag(&f, &[c8.clone(), z3.clone(), Mat::zeros(&f, 1, 1)]);
        let g2 = Mat::block_diag(&f, &[z3.clone(), c8, Mat::zeros(&f, 1, 1)]);
        let g3 = Mat::block_diag(&f, &[i3, z3, Mat::zeros(&f, 1, 1)]);
        let s = MatAlgebra::closure(&f, 7, &[g1, g2, g3], true).unwrap();
        assert_eq!(s.dim(), 7);
        assert_eq!(split_semisimple(&s, &mut rng()).unwrap().len(), 3);
    }

    #[test]
    fn simple_iso_examples() {
        let f = f2();
        let mut r = rng();
        let s = MatAlgebra::closure(&f, 2, &[companion_f4()], true).unwrap();
        let iso = explicit_simple_iso(&s, &mut r).unwrap();
        assert_eq!((iso.u, iso.v), (1, 2));
        assert!(iso.idempotent.is_identity());
        let iso = explicit_simple_iso(&MatAlgebra::full(&f, 2), &mut r).unwrap();
        assert_eq!((iso.u, iso.v), (2, 1));
        assert_eq!(iso.idempotent.rank(), 1);
        assert_eq!(iso.module_basis.len(), 2);
        let f3 = FieldContext::prime(3).unwrap();
        let c = Mat::companion(&Poly::from_codes(&f3, &[1, 0, 1]));
        let gens = [
            c.kron(&Mat::identity(&f3, 2)),
            Mat::identity(&f3, 2).kron(&Mat::unit(&f3, 2, 2, 0, 1)),
            Mat::identity(&f3, 2).kron(&Mat::unit(&f3, 2, 2, 1, 0)),
        ];
        let s = MatAlgebra::closure(&f3, 4, &gens, true).unwrap();
        let iso = explicit_simple_iso(&s, &mut r).unwrap();
        assert_eq!((iso.u, iso.v), (2, 2));
        assert_eq!(iso.u * iso.u * iso.v, s.dim());
        let d2 = MatAlgebra::closure(&f, 2, &[Mat::unit(&f, 2, 2, 0, 0)], true).unwrap();
        assert_eq!(
            explicit_simple_iso(&d2, &mut r).unwrap_err(),
            AlgebraError::NotSimple
        );
    }

    #[test]
    fn decompose_examples() {
        let f = f2();
        let mut r = rng();
        let local = MatAlgebra::closure(&f, 2, &[companion_f4()], true).unwrap();
        let d = decompose_identity(&local, &mut r).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d.idempotents[0].is_identity());

        let full = MatAlgebra::full(&f, 2);
        let d = decompose_identity(&full, &mut r).unwrap();
        assert_eq!(d.ranks, vec![1, 1]);
        check_decomposition(&full, &d);

        let ut = upper_triangular();
        let d = decompose_identity(&ut, &mut r).unwrap();
        assert_eq!(d.len(), 2);
        check_decomposition(&ut, &d);
        let mut diag: Vec<Vec<u64>> = d
            .idempotents
            .iter()
            .map(|e| vec![e[(0, 0)].0, e[(1, 1)].0])
            .collect();
        diag.sort();
        assert_eq!(diag, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn decompose_random_algebras() {
        let mut r = rng();
        for q in [2u64, 3, 4] {
            let f = FieldContext::of_order(q).unwrap();
            for _ in 0..20 {
                let n = r.gen_range(1..=5);
                let k = r.gen_range(1..=3);
                let gens: Vec<Mat> = (0..k)
                    .map(|_| {
                        let mut m = Mat::random(&f, n, n, &mut r);
                        // sparsify to obtain non-generic algebras
                        for i in 0..n {
                            for j in 0..n {
                                if r.gen_bool(0.6) {
                                    m[(i, j)] = FieldElement::ZERO;
                                }
                            }
                        }
                        m
                    })
                    .collect();
                let a = MatAlgebra::closure(&f, n, &gens, true).unwrap();
                let d = decompose_identity(&a, &mut r).unwrap();
                check_decomposition(&a, &d);
                let prof = semisimple_profile(&a, &mut r).unwrap();
                let ss: usize = prof.iter().map(|&(u, v)| u * u * v).sum();
                assert_eq!(ss, a.dim() - a.radical().dim());
                assert_eq!(prof.iter().map(|&(u, _)| u).sum::<usize>(), d.len());
                for x in a.radical().basis() {
                    assert!(x.pow(n as u64).is_zero());
                }
            }
        }
    }

    #[test]
    fn profile_examples() {
        let f = f2();
        let mut r = rng();
        assert_eq!(
            semisimple_profile(&MatAlgebra::full(&f, 3), &mut r).unwrap(),
            vec![(3, 1)]
        );
        assert_eq!(
            semisimple_profile(&upper_triangular(), &mut r).unwrap(),
            vec![(1, 1), (1, 1)]
        );
        let c4 = companion_f4();
        let alg = MatAlgebra::closure(&f, 2, &[c4], true).unwrap();
        assert_eq!(semisimple_profile(&alg, &mut r).unwrap(), vec![(1, 2)]);
    }

    #[test]
    fn factor_projector_examples() {
        let f = f2();
        let (a, b) = factor_projector(&Mat::unit(&f, 2, 2, 0, 0)).unwrap();
        assert_eq!((a.codes(), b.codes()), (vec![1, 0], vec![1, 0]));
        let (a, b) = factor_projector(&Mat::identity(&f, 3)).unwrap();
        assert!(a.is_identity() && b.is_identity());
        let e = Mat::from_codes(&f, 2, 2, &[1, 1, 0, 0]);
        let (a, b) = factor_projector(&e).unwrap();
        assert_eq!(a.codes(), vec![1, 0]);
        assert_eq!(b.transpose().codes(), vec![1, 1]);
        assert!(b.transpose().mul(&a).is_identity());
        assert_eq!(
            factor_projector(&Mat::unit(&f, 2, 2, 0, 1)).unwrap_err(),
            AlgebraError::NotProjector
        );
    }

    #[test]
    fn field_generator_examples() {
        let f = f2();
        let mut r = rng();
        let c = companion_f4();
        let s = MatAlgebra::closure(&f, 2, std::slice::from_ref(&c), true).unwrap();
        let g = find_field_generator(&s, 2, &mut r).unwrap();
        assert!(g == c || g == c.add(&Mat::identity(&f, 2)));
        let one = MatAlgebra::closure(&f, 2, &[], true).unwrap();
        assert!(find_field_generator(&one, 1, &mut r).unwrap().is_identity());
        let d2 = MatAlgebra::closure(&f, 2, &[Mat::unit(&f, 2, 2, 0, 0)], true).unwrap();
        assert!(find_field_generator(&d2, 2, &mut r).is_none());
    }

    #[test]
    fn conjugate_reps_examples() {
        let mut r = rng();
        let f = f2();
        let s = MatAlgebra::closure(&f, 2, &[companion_f4()], true).unwrap();
        let p = conjugate_field_reps(&s, &s, &mut r).unwrap().unwrap();
        assert!(p.is_invertible());
        for (q, m, ell) in [(2u64, 4usize, 2usize), (3, 3, 3), (2, 6, 3), (4, 2, 2)] {
            let f = FieldContext::of_order(q).unwrap();
            let mu = loop {
                let mut c: Vec<FieldElement> = (0..ell).map(|_| f.random(&mut r)).collect();
                c.push(FieldElement::ONE);
                let g = Poly::new(&f, c);
                if g.is_irreducible().unwrap() {
                    break g;
                }
            };
            let blk = Mat::companion(&mu);
            let a = Mat::identity(&f, m / ell).kron(&blk);
            let s1 = MatAlgebra::closure(&f, m, &[a], true).unwrap();
            let qm = Mat::random_invertible(&f, m, &mut r);
            let qi = qm.inverse().unwrap();
            let s2_gens: Vec<Mat> = s1.basis().iter().map(|b| qm.mul(b).mul(&qi)).collect();
            let s2 = MatAlgebra::closure(&f, m, &s2_gens, true).unwrap();
            let p = conjugate_field_reps(&s1, &s2, &mut r).unwrap().unwrap();
            let pi = p.inverse().unwrap();
            let mapped: Vec<Mat> = s2.basis().iter().map(|b| pi.mul(b).mul(&p)).collect();
            assert!(MatAlgebra::from_subspace(&f, m, &mapped)
                .unwrap()
                .same_span(&s1));
        }
        let f = f2();
        let c3 = Mat::companion(&Poly::from_codes(&f, &[1, 1, 0, 1]));
        let s3 = MatAlgebra::closure(&f, 3, &[c3], true).unwrap();
        let s2b = MatAlgebra::closure(
            &f,
            3,
            &[Mat::block_diag(&f, &[companion_f4(), Mat::identity(&f, 1)])],
            true,
        )
        .unwrap();
        assert_eq!(
            conjugate_field_reps(&s3, &s2b, &mut r).unwrap_err(),
            AlgebraError::NotFieldRep
        );
        let s2c = MatAlgebra::closure(&f, 3, &[Mat::unit(&f, 3, 3, 0, 0)], true).unwrap();
        assert_eq!(conjugate_field_reps(&s3, &s2c, &mut r).unwrap(), None);
    }

    #[test]
    fn frobenius_examples() {
        let f = f2();
        let c = companion_f4();
        let theta = frobenius_matrix(&c).unwrap();
        assert_eq!(theta.mul(&c).mul(&theta.inverse().unwrap()), c.mul(&c));
        let given = Mat::from_codes(&f, 2, 2, &[1, 1, 0, 1]);
        assert_eq!(given.mul(&c), c.mul(&c).mul(&given));
        let one = Mat::from_codes(&f, 1, 1, &[1]);
        assert!(frobenius_matrix(&one).unwrap().is_identity());
        assert_eq!(
            frobenius_matrix(&Mat::identity(&f, 2)).unwrap_err(),
            AlgebraError::NotIrreducible
        );
    }
}
