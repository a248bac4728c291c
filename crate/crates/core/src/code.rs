//! Matrix codes, `F_{q^m}`-linear vector codes and the expansion map between them.

use rand::Rng;
use thiserror::Error;

use crate::field::{FieldContext, FieldElement};
use crate::matrix::{coordinates, Mat, Rref};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("expansion basis is not linearly independent over the prime field")]
    DependentBasis,
    #[error("bad dimensions: {0}")]
    BadDimensions(String),
    #[error("generator matrix is not of full row rank")]
    RankDeficient,
    #[error("vector codes must be defined over an extension of a prime field")]
    NotPrimeBase,
}

/// An `F_q`-linear subspace of `m × n` matrices, stored by its canonical basis
/// (the reduced echelon form of the flattened spanning set).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixCode {
    field: FieldContext,
    m: usize,
    n: usize,
    basis: Vec<Mat>,
}

impl MatrixCode {
    /// The span of `mats`, each of shape `m × n`.
    pub fn span(field: &FieldContext, m: usize, n: usize, mats: &[Mat]) -> Result<Self, CodeError> {
        for a in mats {
            if a.shape() != (m, n) {
                return Err(CodeError::ShapeMismatch(format!(
                    "expected {}x{}, got {}x{}",
                    m,
                    n,
                    a.rows(),
                    a.cols()
                )));
            }
        }
        let flat: Vec<Vec<FieldElement>> = mats.iter().map(|a| a.entries().to_vec()).collect();
        Ok(Self::from_flat(field, m, n, &flat))
    }

    /// The span of flattened (row-major, length `m·n`) vectors.
    pub fn from_flat(field: &FieldContext, m: usize, n: usize, vecs: &[Vec<FieldElement>]) -> Self {
        let basis = if vecs.is_empty() {
            Vec::new()
        } else {
            let Rref { r, rank, .. } = Mat::from_rows(field, vecs).rref();
            (0..rank)
                .map(|i| Mat::from_vec(field, m, n, r.row(i).to_vec()))
                .collect()
        };
        MatrixCode {
            field: field.clone(),
            m,
            n,
            basis,
        }
    }

    pub fn zero(field: &FieldContext, m: usize, n: usize) -> Self {
        MatrixCode {
            field: field.clone(),
            m,
            n,
            basis: Vec::new(),
        }
    }

    pub fn full(field: &FieldContext, m: usize, n: usize) -> Self {
        let mats: Vec<Mat> = (0..m * n)
            .map(|k| Mat::unit(field, m, n, k / n, k % n))
            .collect();
        MatrixCode {
            field: field.clone(),
            m,
            n,
            basis: mats,
        }
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
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

    pub fn flat_basis(&self) -> Vec<Vec<FieldElement>> {
        self.basis.iter().map(|b| b.entries().to_vec()).collect()
    }

    /// The `K × mn` matrix of flattened basis vectors.
    pub fn generator(&self) -> Mat {
        if self.basis.is_empty() {
            return Mat::zeros(&self.field, 0, self.m * self.n);
        }
        Mat::from_rows(&self.field, &self.flat_basis())
    }

    fn check_shape(&self, a: &Mat) -> Result<(), CodeError> {
        if a.shape() != (self.m, self.n) {
            return Err(CodeError::ShapeMismatch(format!(
                "code is {}x{}, matrix is {}x{}",
                self.m,
                self.n,
                a.rows(),
                a.cols()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, a: &Mat) -> Result<bool, CodeError> {
        self.check_shape(a)?;
        Ok(self.coordinates(a).is_some())
    }

    /// Coordinates of `a` in the canonical basis, or `None` when `a` is not in the code.
    pub fn coordinates(&self, a: &Mat) -> Option<Vec<FieldElement>> {
        coordinates(&self.field, &self.flat_basis(), a.entries())
    }

    pub fn same_shape(&self, o: &MatrixCode) -> Result<(), CodeError> {
        if (self.m, self.n) != (o.m, o.n) {
            return Err(CodeError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.m, self.n, o.m, o.n
            )));
        }
        Ok(())
    }

    pub fn equals(&self, o: &MatrixCode) -> Result<bool, CodeError> {
        self.same_shape(o)?;
        Ok(self == o)
    }

    /// `self ⊆ o`.
    pub fn is_subcode_of(&self, o: &MatrixCode) -> Result<bool, CodeError> {
        self.same_shape(o)?;
        Ok(self.basis.iter().all(|b| o.coordinates(b).is_some()))
    }

    /// Orthogonal complement under `⟨M, N⟩ = Tr(M Nᵀ)`.
    pub fn trace_dual(&self) -> MatrixCode {
        let ker = self.generator().right_kernel();
        MatrixCode::from_flat(&self.field, self.m, self.n, &ker)
    }

    /// `{ C·A : C ∈ self }` for an `n × r` matrix `A`.
    pub fn mul_right(&self, a: &Mat) -> Result<MatrixCode, CodeError> {
        if a.rows() != self.n {
            return Err(CodeError::ShapeMismatch(format!(
                "code has {} columns, factor has {} rows",
                self.n,
                a.rows()
            )));
        }
        let imgs: Vec<Mat> = self.basis.iter().map(|b| b.mul(a)).collect();
        MatrixCode::span(&self.field, self.m, a.cols(), &imgs)
    }

    /// `{ P·C : C ∈ self }` for an `m' × m` matrix `P`.
    pub fn mul_left(&self, p: &Mat) -> Result<MatrixCode, CodeError> {
        if p.cols() != self.m {
            return Err(CodeError::ShapeMismatch(format!(
                "code has {} rows, factor has {} columns",
                self.m,
                p.cols()
            )));
        }
        let imgs: Vec<Mat> = self.basis.iter().map(|b| p.mul(b)).collect();
        MatrixCode::span(&self.field, p.rows(), self.n, &imgs)
    }

    /// `P·self·Q` with absent factors read as identities.
    pub fn transform(&self, p: Option<&Mat>, q: Option<&Mat>) -> Result<MatrixCode, CodeError> {
        let mut c = self.clone();
        if let Some(p) = p {
            c = c.mul_left(p)?;
        }
        if let Some(q) = q {
            c = c.mul_right(q)?;
        }
        Ok(c)
    }

    pub fn transpose(&self) -> MatrixCode {
        let t: Vec<Mat> = self.basis.iter().map(|b| b.transpose()).collect();
        MatrixCode::span(&self.field, self.n, self.m, &t).expect("shapes agree")
    }

    /// Block-diagonal direct sum `{ diag(A, B) }` in `M_{(m+m')×(n+n')}`.
    pub fn direct_sum(&self, o: &MatrixCode) -> MatrixCode {
        let (m, n) = (self.m + o.m, self.n + o.n);
        let mut mats = Vec::new();
        for b in &self.basis {
            let mut z = Mat::zeros(&self.field, m, n);
            z.set_block(0, 0, b);
            mats.push(z);
        }
        for b in &o.basis {
            let mut z = Mat::zeros(&self.field, m, n);
            z.set_block(self.m, self.n, b);
            mats.push(z);
        }
        MatrixCode::span(&self.field, m, n, &mats).expect("shapes agree")
    }

    /// Random code of dimension `k`.
    pub fn random<R: Rng + ?Sized>(
        field: &FieldContext,
        m: usize,
        n: usize,
        k: usize,
        rng: &mut R,
    ) -> Result<Self, CodeError> {
        if k > m * n {
            return Err(CodeError::BadDimensions(format!(
                "dimension {} exceeds {}x{}",
                k, m, n
            )));
        }
        loop {
            let mats: Vec<Mat> = (0..k).map(|_| Mat::random(field, m, n, rng)).collect();
            let c = MatrixCode::span(field, m, n, &mats)?;
            if c.dim() == k {
                return Ok(c);
            }
        }
    }

    /// The matrix `Σ c_i B_i` for coordinates `c` in the canonical basis.
    pub fn combination(&self, c: &[FieldElement]) -> Mat {
        let mut acc = Mat::zeros(&self.field, self.m, self.n);
        for (b, &x) in self.basis.iter().zip(c) {
            if !x.is_zero() {
                acc = acc.add_scaled(b, x);
            }
        }
        acc
    }
}

/// Same as [`MatrixCode::random`].
pub fn gen_random_code<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    k: usize,
    field: &FieldContext,
    rng: &mut R,
) -> Result<MatrixCode, CodeError> {
    MatrixCode::random(field, m, n, k, rng)
}

/// A `k × n` generator matrix over `F_{p^m}` of full row rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorCode {
    generator: Mat,
}

impl VectorCode {
    pub fn new(generator: Mat) -> Result<Self, CodeError> {
        if generator.rank() != generator.rows() {
            return Err(CodeError::RankDeficient);
        }
        Ok(VectorCode { generator })
    }

    pub fn random<R: Rng + ?Sized>(
        ext: &FieldContext,
        k: usize,
        n: usize,
        rng: &mut R,
    ) -> Result<Self, CodeError> {
        if k > n || k == 0 {
            return Err(CodeError::BadDimensions(format!(
                "need 1 <= k <= n, got k={} n={}",
                k, n
            )));
        }
        loop {
            let g = Mat::random(ext, k, n, rng);
            if g.rank() == k {
                return Ok(VectorCode { generator: g });
            }
        }
    }

    pub fn generator(&self) -> &Mat {
        &self.generator
    }

    /// The extension field `F_{p^m}`.
    pub fn field(&self) -> &FieldContext {
        self.generator.field()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    /// Extension degree `m` over the prime field.
    pub fn m(&self) -> usize {
        self.field().degree() as usize
    }

    /// Direct sum with block-diagonal generator.
    pub fn direct_sum(&self, o: &VectorCode) -> VectorCode {
        let f = self.field();
        VectorCode {
            generator: Mat::block_diag(f, &[self.generator.clone(), o.generator.clone()]),
        }
    }
}

/// The `m × m` matrix over `F_p` whose column `i` holds the power-basis digits of `basis[i]`.
fn basis_matrix(ext: &FieldContext, basis: &[FieldElement]) -> Mat {
    let fp = ext.prime_subfield();
    let cols: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|&b| ext.digits(b).into_iter().map(FieldElement).collect())
        .collect();
    Mat::from_cols(&fp, ext.degree() as usize, &cols)
}

/// Inverse of the basis matrix, or `DependentBasis`.
fn basis_inverse(ext: &FieldContext, basis: &[FieldElement]) -> Result<Mat, CodeError> {
    if basis.len() != ext.degree() as usize {
        return Err(CodeError::DependentBasis);
    }
    basis_matrix(ext, basis)
        .inverse()
        .ok_or(CodeError::DependentBasis)
}

/// The power basis `(1, α, ..., α^{m-1})`.
pub fn power_basis(ext: &FieldContext) -> Vec<FieldElement> {
    let mut out = Vec::new();
    let mut x = FieldElement::ONE;
    for _ in 0..ext.degree() {
        out.push(x);
        x = ext.mul(x, ext.alpha());
    }
    out
}

/// Random basis of `F_{p^m}` over `F_p`.
pub fn random_basis<R: Rng + ?Sized>(ext: &FieldContext, rng: &mut R) -> Vec<FieldElement> {
    loop {
        let b: Vec<FieldElement> = (0..ext.degree()).map(|_| ext.random(rng)).collect();
        if basis_matrix(ext, &b).is_invertible() {
            return b;
        }
    }
}

/// `M_B(v)`: column `j` holds the coordinates of `v_j` in the basis `B`.
pub fn expand_vector(
    ext: &FieldContext,
    v: &[FieldElement],
    basis: &[FieldElement],
) -> Result<Mat, CodeError> {
    let inv = basis_inverse(ext, basis)?;
    Ok(expand_with(ext, &inv, v))
}

fn expand_with(ext: &FieldContext, inv: &Mat, v: &[FieldElement]) -> Mat {
    let m = ext.degree() as usize;
    let cols: Vec<Vec<FieldElement>> = v
        .iter()
        .map(|&x| {
            let d: Vec<FieldElement> = ext.digits(x).into_iter().map(FieldElement).collect();
            inv.mul_vec(&d)
        })
        .collect();
    Mat::from_cols(inv.field(), m, &cols)
}

/// Rank weight: the `F_p`-dimension of the span of the entries.
pub fn rank_weight(ext: &FieldContext, v: &[FieldElement]) -> usize {
    let m = ext.degree() as usize;
    let cols: Vec<Vec<FieldElement>> = v
        .iter()
        .map(|&x| ext.digits(x).into_iter().map(FieldElement).collect())
        .collect();
    if cols.is_empty() {
        return 0;
    }
    Mat::from_cols(&ext.prime_subfield(), m, &cols).rank()
}

/// The `km`-dimensional matrix code `{ M_B(x·g) }` over `F_p`.
pub fn expand_code(v: &VectorCode, basis: &[FieldElement]) -> Result<MatrixCode, CodeError> {
    let ext = v.field();
    let inv = basis_inverse(ext, basis)?;
    let scalars = power_basis(ext);
    let mut mats = Vec::with_capacity(v.k() * scalars.len());
    for g in v.generator().to_rows() {
        for &x in &scalars {
            let xg: Vec<FieldElement> = g.iter().map(|&c| ext.mul(x, c)).collect();
            mats.push(expand_with(ext, &inv, &xg));
        }
    }
    MatrixCode::span(&ext.prime_subfield(), ext.degree() as usize, v.n(), &mats)
}

/// A hidden-basis instance `D = P·M_B(V)·Q` with its ground truth.
#[derive(Clone, Debug)]
pub struct FqmInstance {
    pub vector: VectorCode,
    pub basis: Vec<FieldElement>,
    pub expanded: MatrixCode,
    pub p: Mat,
    pub q: Mat,
    pub scrambled: MatrixCode,
}

/// Random `[n, k]` code over `F_{p^m}`, random basis, random `P ∈ GL_m`, `Q ∈ GL_n`.
pub fn gen_fqm_instance<R: Rng + ?Sized>(
    k: usize,
    n: usize,
    m: u32,
    p: u64,
    rng: &mut R,
) -> Result<FqmInstance, CodeError> {
    let ext = FieldContext::new(p, m, None, rng).map_err(|_| CodeError::NotPrimeBase)?;
    let vector = VectorCode::random(&ext, k, n, rng)?;
    fqm_instance_from(vector, rng)
}

/// Scrambles the expansion of a given vector code.
pub fn fqm_instance_from<R: Rng + ?Sized>(
    vector: VectorCode,
    rng: &mut R,
) -> Result<FqmInstance, CodeError> {
    let ext = vector.field().clone();
    let fp = ext.prime_subfield();
    let basis = random_basis(&ext, rng);
    let expanded = expand_code(&vector, &basis)?;
    let pm = Mat::random_invertible(&fp, ext.degree() as usize, rng);
    let qm = Mat::random_invertible(&fp, vector.n(), rng);
    let scrambled = expanded.transform(Some(&pm), Some(&qm))?;
    Ok(FqmInstance {
        vector,
        basis,
        expanded,
        p: pm,
        q: qm,
        scrambled,
    })
}
