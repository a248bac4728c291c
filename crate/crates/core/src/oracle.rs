//! Exhaustive reference solvers for tiny instances.
//!
//! Every search tries the identity first, then enumerates in lexicographic order of the
//! row-major entry codes and returns the first hit.

use thiserror::Error;

use crate::algebra::MatAlgebra;
use crate::code::MatrixCode;
use crate::field::{FieldContext, FieldElement};
use crate::matrix::{row_span, Mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search space of size {needed} exceeds the budget {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
}

/// Enumeration budgets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    /// Bound on `|GL_n(F_q)|` for [`brute_mcre`].
    pub mcre: u128,
    /// Bound on `|GL_m|·|GL_n|` for [`brute_mce`].
    pub mce: u128,
    /// Bound on `n!·(q-1)^n` for [`brute_monomial`].
    pub monomial: u128,
    /// Bound on `q^dim` for [`brute_radical`].
    pub radical: u128,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            mcre: 10_000_000,
            mce: 100_000_000,
            monomial: 10_000_000,
            radical: 1 << 16,
        }
    }
}

fn check(needed: u128, cap: u128) -> Result<(), OracleError> {
    if needed > cap {
        Err(OracleError::BudgetExceeded { needed, cap })
    } else {
        Ok(())
    }
}

/// `|GL_n(F_q)|`, saturating.
pub fn gl_order(n: usize, q: u64) -> u128 {
    let q = q as u128;
    let qn = q.saturating_pow(n as u32);
    (0..n as u32).fold(1u128, |acc, i| {
        acc.saturating_mul(qn - q.saturating_pow(i).min(qn))
    })
}

/// Vector with index `t` in lexicographic order (first entry most significant).
fn lex_vector(q: u64, len: usize, mut t: u128) -> Vec<FieldElement> {
    let mut v = vec![FieldElement::ZERO; len];
    for slot in v.iter_mut().rev() {
        *slot = FieldElement((t % q as u128) as u64);
        t /= q as u128;
    }
    v
}

/// Calls `visit` on every element of `GL_n(F_q)` in lexicographic order until it returns `true`.
fn for_each_gl(field: &FieldContext, n: usize, visit: &mut dyn FnMut(&Mat) -> bool) -> bool {
    let q = field.order();
    let total = (q as u128).pow(n as u32);
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
    fn rec(
        field: &FieldContext,
        n: usize,
        q: u64,
        total: u128,
        rows: &mut Vec<Vec<FieldElement>>,
        visit: &mut dyn FnMut(&Mat) -> bool,
    ) -> bool {
        if rows.len() == n {
            return visit(&Mat::from_rows(field, rows));
        }
        for t in 0..total {
            let v = lex_vector(q, n, t);
            rows.push(v);
            let independent = row_span(field, rows, n).len() == rows.len();
            if independent && rec(field, n, q, total, rows, visit) {
                return true;
            }
            rows.pop();
        }
        false
    }
    if n == 0 {
        return visit(&Mat::zeros(field, 0, 0));
    }
    rec(field, n, q, total, &mut rows, visit)
}

fn maps_onto(c: &MatrixCode, d: &MatrixCode, p: Option<&Mat>, q: Option<&Mat>) -> bool {
    c.basis().iter().all(|b| {
        let mut x = b.clone();
        if let Some(p) = p {
            x = p.mul(&x);
        }
        if let Some(q) = q {
            x = x.mul(q);
        }
        d.coordinates(&x).is_some()
    })
}

/// First `Q ∈ GL_n` with `C·Q = D`.
pub fn brute_mcre(
    c: &MatrixCode,
    d: &MatrixCode,
    caps: &OracleCaps,
) -> Result<Option<Mat>, OracleError> {
    if (c.m(), c.n()) != (d.m(), d.n()) || c.dim() != d.dim() {
        return Ok(None);
    }
    check(gl_order(c.n(), c.field().order()), caps.mcre)?;
    if c == d {
        return Ok(Some(Mat::identity(c.field(), c.n())));
    }
    let mut found = None;
    for_each_gl(c.field(), c.n(), &mut |q| {
        if maps_onto(c, d, None, Some(q)) {
            found = Some(q.clone());
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// First `(P, Q) ∈ GL_m × GL_n` with `P·C·Q = D`.
pub fn brute_mce(
    c: &MatrixCode,
    d: &MatrixCode,
    caps: &OracleCaps,
) -> Result<Option<MceWitness>, OracleError> {
    if (c.m(), c.n()) != (d.m(), d.n()) || c.dim() != d.dim() {
        return Ok(None);
    }
    let q = c.field().order();
    check(
        gl_order(c.m(), q).saturating_mul(gl_order(c.n(), q)),
        caps.mce,
    )?;
    if c == d {
        return Ok(Some((
            Mat::identity(c.field(), c.m()),
            Mat::identity(c.field(), c.n()),
        )));
    }
    let mut found = None;
    for_each_gl(c.field(), c.m(), &mut |p| {
        let pc = c.mul_left(p).expect("shapes agree");
        for_each_gl(c.field(), c.n(), &mut |qm| {
            if maps_onto(&pc, d, None, Some(qm)) {
                found = Some((p.clone(), qm.clone()));
                true
            } else {
                false
            }
        })
    });
    Ok(found)
}

/// `(P, Q)` with `P·C·Q = D`.
pub type MceWitness = (Mat, Mat);

/// Equivalence up to transposition: tries `D` and then `Dᵀ` (square case only).
/// The flag reports whether the transposed code matched.
pub fn brute_mce_with_transpose(
    c: &MatrixCode,
    d: &MatrixCode,
    caps: &OracleCaps,
) -> Result<Option<(MceWitness, bool)>, OracleError> {
    if let Some(w) = brute_mce(c, d, caps)? {
        return Ok(Some((w, false)));
    }
    if d.m() == d.n() {
        if let Some(w) = brute_mce(c, &d.transpose(), caps)? {
            return Ok(Some((w, true)));
        }
    }
    Ok(None)
}

/// Monomial equivalence `A = S·B·Dg·P` with `P_{π(i), i} = 1`, searching permutations
/// in lexicographic order and then scalars.
pub fn brute_monomial(
    a: &Mat,
    b: &Mat,
    caps: &OracleCaps,
) -> Result<Option<(Mat, Mat, Mat)>, OracleError> {
    if a.shape() != b.shape() {
        return Ok(None);
    }
    let f = a.field();
    let (k, n) = a.shape();
    let q = f.order() as u128;
    let fact: u128 = (1..=n as u128).product();
    check(
        fact.saturating_mul((q - 1).saturating_pow(n as u32)),
        caps.monomial,
    )?;
    let target = row_span(f, &a.to_rows(), n);
    if target.len() != k || b.rank() != k {
        return Ok(None);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut pm = Mat::zeros(f, n, n);
        for (i, &pi) in perm.iter().enumerate() {
            pm[(pi, i)] = FieldElement::ONE;
        }
        let total = (q - 1).pow(n as u32);
        for t in 0..total {
            let mut t = t;
            let mut d = vec![FieldElement::ZERO; n];
            for slot in d.iter_mut().rev() {
                *slot = FieldElement((t % (q - 1)) as u64 + 1);
                t /= q - 1;
            }
            let dg = Mat::diagonal(f, &d);
            let bdp = b.mul(&dg).mul(&pm);
            if row_span(f, &bdp.to_rows(), n) == target {
                // A = S·(B·Dg·P): solve row by row with the columns of (B·Dg·P)ᵀ
                let bt = bdp.transpose();
                let rows: Vec<Vec<FieldElement>> = a
                    .to_rows()
                    .iter()
                    .map(|r| bt.solve(r).expect("row spaces agree"))
                    .collect();
                return Ok(Some((Mat::from_rows(f, &rows), dg, pm)));
            }
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn is_nilpotent(m: &Mat) -> bool {
    m.pow(m.rows() as u64).is_zero()
}

/// `{ x ∈ A : x·y is nilpotent for every y ∈ A }`, by enumerating all pairs.
pub fn brute_radical(alg: &MatAlgebra, caps: &OracleCaps) -> Result<Vec<Mat>, OracleError> {
    let f = alg.field();
    let d = alg.dim();
    let q = f.order();
    let size = (q as u128).saturating_pow(d as u32);
    check(size, caps.radical)?;
    let elems: Vec<Mat> = (0..size)
        .map(|t| alg.combination(&lex_vector(q, d, t)))
        .collect();
    let members: Vec<Vec<FieldElement>> = elems
        .iter()
        .filter(|x| elems.iter().all(|y| is_nilpotent(&x.mul(y))))
        .map(|x| x.entries().to_vec())
        .collect();
    let n = alg.n();
    Ok(row_span(f, &members, n * n)
        .into_iter()
        .map(|r| Mat::from_vec(f, n, n, r))
        .collect())
}
