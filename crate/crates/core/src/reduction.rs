//! From monomial equivalence of Hamming-metric codes to matrix-code equivalence,
//! with witness transport in both directions, and the diagonal embedding.

use thiserror::Error;

use crate::code::MatrixCode;
use crate::field::{FieldContext, FieldElement};
use crate::matrix::{coordinates, Mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("generator matrix does not have full row rank")]
    RankDeficientGenerator,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("monomial witness does not map the source generators")]
    WitnessDoesNotApply,
    #[error("matrices do not form an equivalence of the reduced codes")]
    NotAWitness,
}

/// Column preprocessing applied before building the codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Dedup {
    /// Drop zero columns and columns proportional to an earlier one.
    #[default]
    Projective,
    None,
}

/// Reduced pair `C, D ⊆ M_{(k+n)×k}` built from generators `A, B`.
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    /// Source generators after preprocessing.
    pub a: Mat,
    pub b: Mat,
    /// Original column index of each retained column.
    pub a_cols: Vec<usize>,
    pub b_cols: Vec<usize>,
    /// `G(a_i)` and `G(b_j)` in column order.
    pub gens_c: Vec<Mat>,
    pub gens_d: Vec<Mat>,
    pub c: MatrixCode,
    pub d: MatrixCode,
}

/// A monomial map `A = S·B·Dg·P`, with `P[σ(i)][i] = 1` and `Dg[σ(i)] = scale[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub sigma: Vec<usize>,
    pub scale: Vec<FieldElement>,
    /// Coordinate of `G(a_i)` on `U·G(b_σ(i))·V`.
    pub coords: Vec<FieldElement>,
    pub s: Mat,
    pub dg: Mat,
    pub p: Mat,
}

pub fn permutation_matrix(field: &FieldContext, sigma: &[usize]) -> Mat {
    let n = sigma.len();
    let mut p = Mat::zeros(field, n, n);
    for (i, &j) in sigma.iter().enumerate() {
        p[(j, i)] = FieldElement::ONE;
    }
    p
}

/// Projective column dedup; returns kept column indices.
pub fn dedup_columns(a: &Mat) -> Vec<usize> {
    let f = a.field();
    let mut kept: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    for j in 0..a.cols() {
        let col = a.col(j);
        let Some(lead) = col.iter().find(|x| !x.is_zero()) else {
            continue;
        };
        let inv = f.inv(*lead).expect("nonzero");
        let norm: Vec<FieldElement> = col.iter().map(|&x| f.mul(x, inv)).collect();
        if kept.iter().all(|(_, v)| *v != norm) {
            kept.push((j, norm));
        }
    }
    kept.into_iter().map(|(j, _)| j).collect()
}

/// `[aᵀa ; Row_i(a)]` of shape `(k+n) × k` for the row vector `a`.
pub fn column_generator(field: &FieldContext, a: &[FieldElement], i: usize, n: usize) -> Mat {
    let k = a.len();
    let mut g = Mat::zeros(field, k + n, k);
    for r in 0..k {
        for c in 0..k {
            g[(r, c)] = field.mul(a[r], a[c]);
        }
    }
    for (c, &x) in a.iter().enumerate() {
        g[(k + i, c)] = x;
    }
    g
}

fn build(m: &Mat) -> (Vec<Mat>, MatrixCode) {
    let f = m.field();
    let (k, n) = m.shape();
    let gens: Vec<Mat> = (0..n)
        .map(|i| column_generator(f, &m.col(i), i, n))
        .collect();
    let code = MatrixCode::span(f, k + n, k, &gens).expect("shapes agree");
    (gens, code)
}

/// Builds the reduced pair from two `k × n` generator matrices.
pub fn reduce_me_to_mce(
    a: &Mat,
    b: &Mat,
    dedup: Dedup,
) -> Result<ReductionInstance, ReductionError> {
    if a.field() != b.field() || a.rows() != b.rows() {
        return Err(ReductionError::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.rank() != a.rows() || b.rank() != b.rows() {
        return Err(ReductionError::RankDeficientGenerator);
    }
    let (a_cols, b_cols) = match dedup {
        Dedup::Projective => (dedup_columns(a), dedup_columns(b)),
        Dedup::None => ((0..a.cols()).collect(), (0..b.cols()).collect()),
    };
    let a2 = a.select_cols(&a_cols);
    let b2 = b.select_cols(&b_cols);
    if a2.cols() != b2.cols() {
        return Err(ReductionError::ShapeMismatch(format!(
            "{} vs {} columns after preprocessing",
            a2.cols(),
            b2.cols()
        )));
    }
    let (gens_c, c) = build(&a2);
    let (gens_d, d) = build(&b2);
    Ok(ReductionInstance {
        a: a2,
        b: b2,
        a_cols,
        b_cols,
        gens_c,
        gens_d,
        c,
        d,
    })
}

/// `(U, V)` with `C = U·D·V` from `A = S·B·Dg·P`:
/// `U = diag(S, Pᵀ·Dg⁻¹)`, `V = Sᵀ`.
pub fn forward_witness(
    inst: &ReductionInstance,
    s: &Mat,
    dg: &Mat,
    p: &Mat,
) -> Result<(Mat, Mat), ReductionError> {
    let (k, n) = inst.a.shape();
    if s.shape() != (k, k) || dg.shape() != (n, n) || p.shape() != (n, n) {
        return Err(ReductionError::ShapeMismatch(
            "witness factors have wrong sizes".into(),
        ));
    }
    if s.mul(&inst.b).mul(dg).mul(p) != inst.a {
        return Err(ReductionError::WitnessDoesNotApply);
    }
    let dinv = dg.inverse().ok_or(ReductionError::WitnessDoesNotApply)?;
    let f = s.field();
    let u = Mat::block_diag(f, &[s.clone(), p.transpose().mul(&dinv)]);
    Ok((u, s.transpose()))
}

/// Recovers a monomial map between the source generators from `C = U·D·V`.
pub fn extract_monomial(
    u: &Mat,
    v: &Mat,
    inst: &ReductionInstance,
) -> Result<Monomial, ReductionError> {
    let f = inst.a.field();
    let (k, n) = inst.a.shape();
    if u.shape() != (k + n, k + n) || v.shape() != (k, k) {
        return Err(ReductionError::ShapeMismatch(
            "witness factors have wrong sizes".into(),
        ));
    }
    if !u.is_invertible() || !v.is_invertible() {
        return Err(ReductionError::NotAWitness);
    }
    let moved: Vec<Vec<FieldElement>> = inst
        .gens_d
        .iter()
        .map(|g| u.mul(g).mul(v).entries().to_vec())
        .collect();
    let mut sigma = Vec::with_capacity(n);
    let mut coords = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    for g in &inst.gens_c {
        let x = coordinates(f, &moved, g.entries()).ok_or(ReductionError::NotAWitness)?;
        let nz: Vec<usize> = (0..n).filter(|&j| !x[j].is_zero()).collect();
        if nz.len() != 1 || hit[nz[0]] {
            return Err(ReductionError::NotAWitness);
        }
        hit[nz[0]] = true;
        sigma.push(nz[0]);
        coords.push(x[nz[0]]);
    }
    let mut scale = Vec::with_capacity(n);
    for (i, &j) in sigma.iter().enumerate() {
        let ai = inst.a.col(i);
        let bv = v.transpose().mul_vec(&inst.b.col(j));
        let t = (0..k)
            .find(|&r| !bv[r].is_zero())
            .ok_or(ReductionError::NotAWitness)?;
        let lam = f.div(ai[t], bv[t]).expect("nonzero");
        if (0..k).any(|r| ai[r] != f.mul(lam, bv[r])) || lam.is_zero() {
            return Err(ReductionError::NotAWitness);
        }
        scale.push(lam);
    }
    let s = v.transpose();
    let mut dvals = vec![FieldElement::ZERO; n];
    for (i, &j) in sigma.iter().enumerate() {
        dvals[j] = scale[i];
    }
    let dg = Mat::diagonal(f, &dvals);
    let p = permutation_matrix(f, &sigma);
    if s.mul(&inst.b).mul(&dg).mul(&p) != inst.a {
        return Err(ReductionError::NotAWitness);
    }
    Ok(Monomial {
        sigma,
        scale,
        coords,
        s,
        dg,
        p,
    })
}

/// `Φ(x) = diag(x)`.
pub fn phi(field: &FieldContext, x: &[FieldElement]) -> Mat {
    Mat::diagonal(field, x)
}

pub fn hamming_weight(x: &[FieldElement]) -> usize {
    x.iter().filter(|c| !c.is_zero()).count()
}

/// `Φ` applied to the row space of `G`: the span of `diag(g_j)` in `M_{n×n}`.
pub fn diagonal_embed(g: &Mat) -> MatrixCode {
    let f = g.field();
    let n = g.cols();
    let mats: Vec<Mat> = g.to_rows().iter().map(|r| phi(f, r)).collect();
    MatrixCode::span(f, n, n, &mats).expect("shapes agree")
}
