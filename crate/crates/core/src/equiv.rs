//! Conductors, stabilizer algebras and the equivalence solvers.
//!
//! Every witness follows one convention: `P·C·Q = D`, with an absent factor
//! read as the identity.

use std::collections::HashMap;

use rand::RngCore;
use thiserror::Error;

use crate::algebra::{
    conjugate_field_reps, decompose_identity, find_field_generator, frobenius_matrix, AlgebraError,
    IdemDecomposition, MatAlgebra,
};
use crate::code::{CodeError, MatrixCode};
use crate::field::FieldElement;
use crate::matrix::{row_span, Mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("codes have different dimensions")]
    DimensionMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<CodeError> for EquivError {
    fn from(e: CodeError) -> Self {
        EquivError::ShapeMismatch(e.to_string())
    }
}

/// Asserts `left·C·right = D`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Witness {
    pub left: Option<Mat>,
    pub right: Option<Mat>,
}

impl Witness {
    pub fn right(q: Mat) -> Self {
        Witness {
            left: None,
            right: Some(q),
        }
    }

    pub fn both(p: Mat, q: Mat) -> Self {
        Witness {
            left: Some(p),
            right: Some(q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Equivalent(Witness),
    NotEquivalent,
    InvalidPromise(String),
}

impl SolveOutcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, SolveOutcome::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SolveOutcome::Equivalent(w) => Some(w),
            _ => None,
        }
    }
}

fn kernel_mats(sys_rows: &[Vec<FieldElement>], code: &MatrixCode, size: usize) -> Vec<Mat> {
    let f = code.field();
    let ker = if sys_rows.is_empty() {
        (0..size * size)
            .map(|k| {
                let mut v = vec![FieldElement::ZERO; size * size];
                v[k] = FieldElement::ONE;
                v
            })
            .collect()
    } else {
        Mat::from_rows(f, sys_rows).right_kernel()
    };
    let ker = row_span(f, &ker, size * size);
    ker.into_iter()
        .map(|v| Mat::from_vec(f, size, size, v))
        .collect()
}

/// `{ M ∈ M_n : C·M ⊆ D }`, as a basis in reduced echelon form.
pub fn conductor(c: &MatrixCode, d: &MatrixCode) -> Result<Vec<Mat>, EquivError> {
    c.same_shape(d)?;
    if c.dim() != d.dim() {
        return Err(EquivError::DimensionMismatch);
    }
    let dual = d.trace_dual();
    let mut rows = Vec::with_capacity(c.dim() * dual.dim());
    for ci in c.basis() {
        let ct = ci.transpose();
        for nj in dual.basis() {
            rows.push(ct.mul(nj).entries().to_vec());
        }
    }
    Ok(kernel_mats(&rows, c, c.n()))
}

/// `{ M ∈ M_m : M·C ⊆ D }`.
pub fn left_conductor(c: &MatrixCode, d: &MatrixCode) -> Result<Vec<Mat>, EquivError> {
    c.same_shape(d)?;
    if c.dim() != d.dim() {
        return Err(EquivError::DimensionMismatch);
    }
    let dual = d.trace_dual();
    let mut rows = Vec::with_capacity(c.dim() * dual.dim());
    for ci in c.basis() {
        let ct = ci.transpose();
        for nj in dual.basis() {
            rows.push(nj.mul(&ct).entries().to_vec());
        }
    }
    Ok(kernel_mats(&rows, c, c.m()))
}

pub fn right_stabilizer(c: &MatrixCode) -> MatAlgebra {
    let basis = conductor(c, c).expect("a code matches itself");
    MatAlgebra::from_subspace(c.field(), c.n(), &basis).expect("stabilizers are closed")
}

pub fn left_stabilizer(c: &MatrixCode) -> MatAlgebra {
    let basis = left_conductor(c, c).expect("a code matches itself");
    MatAlgebra::from_subspace(c.field(), c.m(), &basis).expect("stabilizers are closed")
}

/// Checks that present factors are invertible and that `P·C·Q = D`.
pub fn verify_witness(c: &MatrixCode, d: &MatrixCode, w: &Witness) -> Result<bool, EquivError> {
    c.same_shape(d)?;
    if let Some(p) = &w.left {
        if p.shape() != (c.m(), c.m()) {
            return Err(EquivError::ShapeMismatch(format!(
                "left factor must be {0}x{0}",
                c.m()
            )));
        }
        if !p.is_invertible() {
            return Ok(false);
        }
    }
    if let Some(q) = &w.right {
        if q.shape() != (c.n(), c.n()) {
            return Err(EquivError::ShapeMismatch(format!(
                "right factor must be {0}x{0}",
                c.n()
            )));
        }
        if !q.is_invertible() {
            return Ok(false);
        }
    }
    Ok(c.transform(w.left.as_ref(), w.right.as_ref())? == *d)
}

fn span_contains(
    field: &crate::field::FieldContext,
    span: &[Vec<FieldElement>],
    v: &[FieldElement],
) -> bool {
    crate::matrix::coordinates(field, span, v).is_some()
}

/// Right equivalence when `Stab_r(C)` is local: an element of the conductor
/// outside `Rad·Cond`, if it is nonsingular.
pub fn solve_mcre_local(c: &MatrixCode, d: &MatrixCode) -> Result<Option<Mat>, EquivError> {
    c.same_shape(d)?;
    if c.dim() != d.dim() {
        return Ok(None);
    }
    let cond = conductor(c, d)?;
    if cond.is_empty() {
        return Ok(None);
    }
    let f = c.field();
    let n = c.n();
    let rad = right_stabilizer(c).radical();
    let prods: Vec<Vec<FieldElement>> = rad
        .basis()
        .iter()
        .flat_map(|r| cond.iter().map(move |a| r.mul(a).entries().to_vec()))
        .collect();
    let rc = row_span(f, &prods, n * n);
    let pick = cond.iter().find(|a| !span_contains(f, &rc, a.entries()));
    Ok(pick.filter(|a| a.is_invertible()).cloned())
}

struct Pieces {
    decomp: IdemDecomposition,
    codes: Vec<MatrixCode>,
}

fn pieces(c: &MatrixCode, rng: &mut dyn RngCore) -> Result<Pieces, EquivError> {
    let decomp = decompose_identity(&right_stabilizer(c), rng)?;
    let codes = decomp
        .factors
        .iter()
        .map(|(a, _)| c.mul_right(a))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Pieces { decomp, codes })
}

/// Right equivalence `C·Q = D`.
pub fn solve_mcre(
    c: &MatrixCode,
    d: &MatrixCode,
    rng: &mut dyn RngCore,
) -> Result<SolveOutcome, EquivError> {
    c.same_shape(d)?;
    let f = c.field();
    let n = c.n();
    if c.dim() != d.dim() {
        return Ok(SolveOutcome::NotEquivalent);
    }
    if c == d {
        return Ok(SolveOutcome::Equivalent(Witness::right(Mat::identity(
            f, n,
        ))));
    }
    let cond = conductor(c, d)?;
    match cond.len() {
        0 => return Ok(SolveOutcome::NotEquivalent),
        1 => {
            return Ok(if cond[0].is_invertible() {
                SolveOutcome::Equivalent(Witness::right(cond[0].clone()))
            } else {
                SolveOutcome::NotEquivalent
            })
        }
        _ => {}
    }
    let pc = pieces(c, rng)?;
    let pd = pieces(d, rng)?;
    let l = pc.codes.len();
    if l != pd.codes.len() {
        return Ok(SolveOutcome::NotEquivalent);
    }
    let mut memo: HashMap<(usize, usize), Option<Mat>> = HashMap::new();
    let mut used = vec![false; l];
    let mut chosen: Vec<(usize, Mat)> = Vec::with_capacity(l);
    let found = match_pieces(c, d, &pc, &pd, 0, &mut used, &mut chosen, &mut memo)?;
    Ok(match found {
        Some(q) => SolveOutcome::Equivalent(Witness::right(q)),
        None => SolveOutcome::NotEquivalent,
    })
}

#[allow(clippy::too_many_arguments)]
fn match_pieces(
    c: &MatrixCode,
    d: &MatrixCode,
    pc: &Pieces,
    pd: &Pieces,
    i: usize,
    used: &mut [bool],
    chosen: &mut Vec<(usize, Mat)>,
    memo: &mut HashMap<(usize, usize), Option<Mat>>,
) -> Result<Option<Mat>, EquivError> {
    let l = used.len();
    if i == l {
        let f = c.field();
        let mut q = Mat::zeros(f, c.n(), c.n());
        for (k, (j, qij)) in chosen.iter().enumerate() {
            let a = &pc.decomp.factors[k].0;
            let v = &pd.decomp.factors[*j].1;
            q = q.add(&a.mul(qij).mul(&v.transpose()));
        }
        let ok = q.is_invertible() && c.mul_right(&q)? == *d;
        return Ok(ok.then_some(q));
    }
    for j in 0..l {
        if used[j]
            || pc.decomp.ranks[i] != pd.decomp.ranks[j]
            || pc.codes[i].dim() != pd.codes[j].dim()
        {
            continue;
        }
        let local = match memo.get(&(i, j)) {
            Some(x) => x.clone(),
            None => {
                let x = solve_mcre_local(&pc.codes[i], &pd.codes[j])?;
                memo.insert((i, j), x.clone());
                x
            }
        };
        let Some(qij) = local else { continue };
        used[j] = true;
        chosen.push((j, qij));
        if let Some(q) = match_pieces(c, d, pc, pd, i + 1, used, chosen, memo)? {
            return Ok(Some(q));
        }
        chosen.pop();
        used[j] = false;
    }
    Ok(None)
}

/// Left stabilizer profile: `Stab_l ≅ M_{m/ℓ}(F_{q^ℓ})` containing a representation of `F_{q^m}`.
#[derive(Clone, Debug)]
pub struct LeftProfile {
    pub stabilizer: MatAlgebra,
    pub center: MatAlgebra,
    pub ell: usize,
    pub generator: Mat,
}

/// Computes the left profile, or a reason why `C` is not an expansion.
pub fn left_profile(c: &MatrixCode, rng: &mut dyn RngCore) -> Result<LeftProfile, String> {
    let m = c.m();
    let stab = left_stabilizer(c);
    if stab.dim() < m {
        return Err(format!(
            "left stabilizer has dimension {} < {}",
            stab.dim(),
            m
        ));
    }
    let center = stab.center();
    let ell = center.dim();
    if ell == 0 || !m.is_multiple_of(ell) {
        return Err(format!("center dimension {} does not divide {}", ell, m));
    }
    if stab.dim() != m * m / ell {
        return Err(format!(
            "left stabilizer has dimension {}, expected {}",
            stab.dim(),
            m * m / ell
        ));
    }
    let generator = find_field_generator(&center, ell, rng)
        .ok_or_else(|| "center of the left stabilizer is not a field".to_string())?;
    Ok(LeftProfile {
        stabilizer: stab,
        center,
        ell,
        generator,
    })
}

/// Two-sided equivalence of expansions of `F_{q^m}`-linear codes in hidden bases.
pub fn solve_hvmce(
    c: &MatrixCode,
    d: &MatrixCode,
    rng: &mut dyn RngCore,
) -> Result<SolveOutcome, EquivError> {
    c.same_shape(d)?;
    let f = c.field();
    let m = c.m();
    if c == d {
        return Ok(SolveOutcome::Equivalent(Witness::both(
            Mat::identity(f, m),
            Mat::identity(f, c.n()),
        )));
    }
    let pc = match left_profile(c, rng) {
        Ok(p) => p,
        Err(r) => return Ok(SolveOutcome::InvalidPromise(format!("first code: {}", r))),
    };
    let pdp = match left_profile(d, rng) {
        Ok(p) => p,
        Err(r) => return Ok(SolveOutcome::InvalidPromise(format!("second code: {}", r))),
    };
    if c.dim() != d.dim() || pc.ell != pdp.ell || pc.stabilizer.dim() != pdp.stabilizer.dim() {
        return Ok(SolveOutcome::NotEquivalent);
    }
    let p = match conjugate_field_reps(&pdp.center, &pc.center, rng)? {
        Some(p) => p,
        None => return Ok(SolveOutcome::NotEquivalent),
    };
    let a = &pc.generator;
    let gamma = if pc.ell == m {
        frobenius_matrix(a)?
    } else {
        a.pow_q()
            .similarity_transform(a)
            .map_err(|e| EquivError::ShapeMismatch(e.to_string()))?
            .ok_or(AlgebraError::NotFieldRep)?
    };
    let mut twist = Mat::identity(f, m);
    for _ in 0..pc.ell {
        let left = twist.mul(&p);
        let target = d.mul_left(&left)?;
        if let SolveOutcome::Equivalent(w) = solve_mcre(c, &target, rng)? {
            let inv = left.inverse().expect("product of invertible matrices");
            let wit = Witness {
                left: Some(inv),
                right: w.right,
            };
            debug_assert!(verify_witness(c, d, &wit)?);
            return Ok(SolveOutcome::Equivalent(wit));
        }
        twist = gamma.mul(&twist);
    }
    Ok(SolveOutcome::NotEquivalent)
}

/// Runs `solve_hvmce` on `(C, D)` and, when square and unsuccessful, on `(C, Dᵀ)`.
/// The flag reports whether the transposed target was used.
pub fn solve_hvmce_with_transpose(
    c: &MatrixCode,
    d: &MatrixCode,
    rng: &mut dyn RngCore,
) -> Result<(SolveOutcome, bool), EquivError> {
    let first = solve_hvmce(c, d, rng)?;
    if first.is_equivalent() || c.m() != c.n() {
        return Ok((first, false));
    }
    let second = solve_hvmce(c, &d.transpose(), rng)?;
    if second.is_equivalent() {
        return Ok((second, true));
    }
    Ok((first, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{expand_code, fqm_instance_from, gen_fqm_instance, power_basis, VectorCode};
    use crate::field::FieldContext;
    use crate::oracle::{brute_mcre, OracleCaps};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f2() -> FieldContext {
        FieldContext::prime(2).unwrap()
    }

    fn rng(s: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(s)
    }

    fn span_of(f: &FieldContext, n: usize, mats: &[Mat]) -> Vec<Vec<FieldElement>> {
        let v: Vec<Vec<FieldElement>> = mats.iter().map(|m| m.entries().to_vec()).collect();
        row_span(f, &v, n * n)
    }

    #[test]
    fn conductor_contains_identity() {
        let f = f2();
        let mut r = rng(1);
        for _ in 0..10 {
            let c = MatrixCode::random(&f, 3, 3, 4, &mut r).unwrap();
            let cond = conductor(&c, &c).unwrap();
            let s = span_of(&f, 3, &cond);
            assert!(span_contains(&f, &s, Mat::identity(&f, 3).entries()));
        }
    }

    #[test]
    fn conductor_of_e11_by_enumeration() {
        let f = f2();
        let c = MatrixCode::span(&f, 2, 2, &[Mat::unit(&f, 2, 2, 0, 0)]).unwrap();
        let cond = conductor(&c, &c).unwrap();
        assert_eq!(cond.len(), 3);
        let s = span_of(&f, 2, &cond);
        let mut count = 0;
        for t in 0..16u64 {
            let m = Mat::from_codes(&f, 2, 2, &[t & 1, (t >> 1) & 1, (t >> 2) & 1, (t >> 3) & 1]);
            let inside = c.mul_right(&m).unwrap().is_subcode_of(&c).unwrap();
            assert_eq!(inside, span_contains(&f, &s, m.entries()));
            assert_eq!(inside, m[(0, 1)].is_zero());
            count += inside as usize;
        }
        assert_eq!(count, 8);
    }

    #[test]
    fn generic_conductor_is_zero() {
        let f = f2();
        let mut r = rng(2);
        let mut zeros = 0;
        for _ in 0..20 {
            let c = MatrixCode::random(&f, 3, 3, 4, &mut r).unwrap();
            let d = MatrixCode::random(&f, 3, 3, 4, &mut r).unwrap();
            let cond = conductor(&c, &d).unwrap();
            let mut brute = 0;
            for t in 0..512u64 {
                let codes: Vec<u64> = (0..9).map(|k| (t >> k) & 1).collect();
                let m = Mat::from_codes(&f, 3, 3, &codes);
                if c.mul_right(&m)
                    .unwrap()
                    .basis()
                    .iter()
                    .all(|b| d.contains(b).unwrap())
                {
                    brute += 1;
                }
            }
            assert_eq!(brute, 1u64 << cond.len());
            zeros += cond.is_empty() as usize;
        }
        assert!(zeros >= 10);
    }

    #[test]
    fn generic_stabilizers_are_trivial() {
        let f = f2();
        let mut r = rng(3);
        for _ in 0..20 {
            let c = MatrixCode::random(&f, 4, 4, 6, &mut r).unwrap();
            assert_eq!(right_stabilizer(&c).dim(), 1);
        }
    }

    #[test]
    fn expansion_left_stabilizer_contains_companion() {
        let mut r = rng(4);
        let ext = FieldContext::standard(2, 3).unwrap();
        let v = VectorCode::random(&ext, 1, 4, &mut r).unwrap();
        let c = expand_code(&v, &power_basis(&ext)).unwrap();
        let stab = left_stabilizer(&c);
        assert!(stab.dim() >= 3);
        let cx = Mat::companion(&crate::field::Poly::from_codes(
            &ext.prime_subfield(),
            ext.modulus(),
        ));
        assert!(stab.contains(&cx));
    }

    #[test]
    fn full_space_stabilizer() {
        let f = f2();
        let c = MatrixCode::full(&f, 2, 3);
        assert_eq!(right_stabilizer(&c).dim(), 9);
        assert_eq!(left_stabilizer(&c).dim(), 4);
    }

    #[test]
    fn verify_examples() {
        let f = f2();
        let mut r = rng(5);
        let c = MatrixCode::random(&f, 3, 3, 3, &mut r).unwrap();
        assert!(verify_witness(&c, &c, &Witness::default()).unwrap());
        let q = Mat::random_invertible(&f, 3, &mut r);
        let d = c.mul_right(&q).unwrap();
        assert!(verify_witness(&c, &d, &Witness::right(q)).unwrap());
        let sing = Mat::diagonal(
            &f,
            &[FieldElement::ONE, FieldElement::ONE, FieldElement::ZERO],
        );
        assert!(!verify_witness(&c, &c, &Witness::right(sing)).unwrap());
    }

    #[test]
    fn mcre_self() {
        let f = f2();
        let mut r = rng(6);
        let c = MatrixCode::random(&f, 3, 3, 3, &mut r).unwrap();
        let out = solve_mcre(&c, &c, &mut r).unwrap();
        assert!(verify_witness(&c, &c, out.witness().unwrap()).unwrap());
    }

    #[test]
    fn local_examples() {
        let f = f2();
        let mut r = rng(7);
        let c = MatrixCode::random(&f, 3, 3, 3, &mut r).unwrap();
        let q = solve_mcre_local(&c, &c).unwrap().unwrap();
        assert!(c.mul_right(&q).unwrap() == c);

        let ext = FieldContext::standard(2, 2).unwrap();
        let v = VectorCode::random(&ext, 1, 3, &mut r).unwrap();
        let c = expand_code(&v, &power_basis(&ext)).unwrap().transpose();
        let q0 = Mat::random_invertible(&f, c.n(), &mut r);
        let d = c.mul_right(&q0).unwrap();
        assert!(right_stabilizer(&c).is_local(&mut r).unwrap());
        let q = solve_mcre_local(&c, &d).unwrap().unwrap();
        assert!(verify_witness(&c, &d, &Witness::right(q)).unwrap());

        loop {
            let a = MatrixCode::random(&f, 3, 3, 4, &mut r).unwrap();
            let b = MatrixCode::random(&f, 3, 3, 4, &mut r).unwrap();
            if conductor(&a, &b).unwrap().is_empty() {
                assert_eq!(solve_mcre_local(&a, &b).unwrap(), None);
                break;
            }
        }
    }

    #[test]
    fn mcre_agrees_with_brute_force() {
        let f = f2();
        let mut r = rng(8);
        let caps = OracleCaps::default();
        let mut pos = 0;
        let mut neg = 0;
        for t in 0..60 {
            let k = 2 + t % 3;
            let c = MatrixCode::random(&f, 3, 3, k, &mut r).unwrap();
            let d = if t % 2 == 0 {
                c.mul_right(&Mat::random_invertible(&f, 3, &mut r)).unwrap()
            } else {
                MatrixCode::random(&f, 3, 3, k, &mut r).unwrap()
            };
            let out = solve_mcre(&c, &d, &mut r).unwrap();
            let brute = brute_mcre(&c, &d, &caps).unwrap();
            assert_eq!(out.is_equivalent(), brute.is_some(), "case {}", t);
            if let Some(w) = out.witness() {
                assert!(verify_witness(&c, &d, w).unwrap());
                pos += 1;
            } else {
                neg += 1;
            }
        }
        assert!(pos >= 30 && neg >= 1);
    }

    #[test]
    fn mcre_on_expansions() {
        let mut r = rng(9);
        for t in 0..20 {
            let (p, m) = [(2, 2), (2, 3), (3, 2)][t % 3];
            let inst = gen_fqm_instance(1 + t % 2, 3, m, p, &mut r).unwrap();
            let c = inst.expanded.transpose();
            let q0 = Mat::random_invertible(c.field(), c.n(), &mut r);
            let d = c.mul_right(&q0).unwrap();
            let out = solve_mcre(&c, &d, &mut r).unwrap();
            assert!(
                verify_witness(&c, &d, out.witness().unwrap()).unwrap(),
                "case {}",
                t
            );
        }
    }

    #[test]
    fn hvmce_self() {
        let mut r = rng(10);
        let inst = gen_fqm_instance(1, 3, 2, 2, &mut r).unwrap();
        let c = &inst.expanded;
        let out = solve_hvmce(c, c, &mut r).unwrap();
        assert!(verify_witness(c, c, out.witness().unwrap()).unwrap());
    }

    #[test]
    fn hvmce_positive() {
        let mut r = rng(11);
        for t in 0..24 {
            let (p, m) = [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)][t % 5];
            let k = 1 + t % 3;
            let n = k + 1 + t % 3;
            let inst = gen_fqm_instance(k, n, m, p, &mut r).unwrap();
            let out = solve_hvmce(&inst.expanded, &inst.scrambled, &mut r).unwrap();
            let w = out
                .witness()
                .unwrap_or_else(|| panic!("case {}: {:?}", t, out));
            assert!(verify_witness(&inst.expanded, &inst.scrambled, w).unwrap());
        }
    }

    #[test]
    fn hvmce_with_large_stabilizer() {
        // a direct sum of two codes over F_4 expanded over F_2 has a left stabilizer bigger than F_4
        let mut r = rng(12);
        let ext = FieldContext::standard(2, 2).unwrap();
        let v = VectorCode::random(&ext, 1, 1, &mut r).unwrap();
        let v = v.direct_sum(&VectorCode::random(&ext, 1, 1, &mut r).unwrap());
        let inst = fqm_instance_from(v, &mut r).unwrap();
        let prof = left_profile(&inst.expanded, &mut r).unwrap();
        assert!(prof.stabilizer.dim() >= 2);
        let out = solve_hvmce(&inst.expanded, &inst.scrambled, &mut r).unwrap();
        assert!(verify_witness(&inst.expanded, &inst.scrambled, out.witness().unwrap()).unwrap());
    }

    #[test]
    fn hvmce_with_subfield_entries() {
        let mut r = rng(13);
        let ext = FieldContext::standard(2, 4).unwrap();
        let one = FieldElement::ONE;
        let w = ext.pow(ext.alpha(), 5);
        for (g, ell) in [(vec![one, one, one], 1), (vec![one, w, ext.mul(w, w)], 2)] {
            let v = VectorCode::new(Mat::from_rows(&ext, &[g])).unwrap();
            let inst = fqm_instance_from(v, &mut r).unwrap();
            let prof = left_profile(&inst.expanded, &mut r).unwrap();
            assert_eq!(prof.ell, ell);
            for _ in 0..4 {
                let q0 = Mat::random_invertible(inst.expanded.field(), 4, &mut r);
                let d = inst.scrambled.mul_left(&q0).unwrap();
                let out = solve_hvmce(&inst.expanded, &d, &mut r).unwrap();
                assert!(verify_witness(&inst.expanded, &d, out.witness().unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn hvmce_generic_target_rejected() {
        let mut r = rng(14);
        let inst = gen_fqm_instance(1, 3, 2, 2, &mut r).unwrap();
        let c = &inst.expanded;
        let d = MatrixCode::random(c.field(), c.m(), c.n(), c.dim(), &mut r).unwrap();
        let out = solve_hvmce(c, &d, &mut r).unwrap();
        assert!(!out.is_equivalent());
    }

    fn right_equiv_pair(seed: u64) -> (MatrixCode, MatrixCode, Mat) {
        let mut r = rng(seed);
        let f = [
            FieldContext::prime(2).unwrap(),
            FieldContext::prime(3).unwrap(),
        ][(seed % 2) as usize]
            .clone();
        let c = if seed.is_multiple_of(3) {
            let ext = FieldContext::standard(f.characteristic(), 2).unwrap();
            let v = VectorCode::random(&ext, 1, 2 + (seed % 2) as usize, &mut r).unwrap();
            expand_code(&v, &power_basis(&ext)).unwrap().transpose()
        } else {
            let m = r.gen_range(2..=4);
            let n = r.gen_range(2..=4);
            let k = r.gen_range(1..=m * n - 1);
            MatrixCode::random(&f, m, n, k, &mut r).unwrap()
        };
        let q = Mat::random_invertible(&f, c.n(), &mut r);
        let d = c.mul_right(&q).unwrap();
        (c, d, q)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn stabilizers_are_conjugated(seed in 0u64..10_000) {
            let (c, d, q) = right_equiv_pair(seed);
            let qi = q.inverse().unwrap();
            let sc = right_stabilizer(&c);
            let conj: Vec<Mat> = right_stabilizer(&d).basis().iter().map(|s| q.mul(s).mul(&qi)).collect();
            let f = c.field();
            prop_assert_eq!(span_of(f, c.n(), &conj), span_of(f, c.n(), sc.basis()));
        }

        #[test]
        fn conductor_is_translated_stabilizer(seed in 0u64..10_000) {
            let (c, d, q) = right_equiv_pair(seed);
            let f = c.field();
            let cond = conductor(&c, &d).unwrap();
            let trans: Vec<Mat> = right_stabilizer(&c).basis().iter().map(|s| s.mul(&q)).collect();
            prop_assert_eq!(span_of(f, c.n(), &cond), span_of(f, c.n(), &trans));
            if cond.len() >= 2 {
                prop_assert!(right_stabilizer(&c).dim() >= 2);
                prop_assert!(right_stabilizer(&d).dim() >= 2);
            }
        }

        #[test]
        fn mcre_witness_verifies(seed in 0u64..10_000) {
            let (c, d, _) = right_equiv_pair(seed);
            let out = solve_mcre(&c, &d, &mut rng(seed)).unwrap();
            prop_assert!(verify_witness(&c, &d, out.witness().unwrap()).unwrap());
        }
    }
}
