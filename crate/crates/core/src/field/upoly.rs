//! Dense univariate polynomials over any [`FiniteField`], as coefficient vectors
//! (low degree first, no trailing zeros).

use rand::RngCore;

use super::{prime_divisors, FiniteField};

pub type UPoly<E> = Vec<E>;

pub fn trim<F: FiniteField>(f: &F, mut a: UPoly<F::Elem>) -> UPoly<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn x_poly<F: FiniteField>(f: &F) -> UPoly<F::Elem> {
    vec![f.zero(), f.one()]
}

pub fn add<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn sub<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn scale<F: FiniteField>(f: &F, a: &[F::Elem], c: &F::Elem) -> UPoly<F::Elem> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem<F: FiniteField>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (UPoly<F::Elem>, UPoly<F::Elem>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = f
        .inv(b.last().unwrap())
        .expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![f.zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = f.mul(&r[k + db], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = f.sub(&r[k + j], &f.mul(&c, bj));
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(f, q), trim(f, r))
}

pub fn rem<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    if a.len() < b.len() {
        return a.to_vec();
    }
    divrem(f, a, b).1
}

pub fn monic<F: FiniteField>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let li = f.inv(l).unwrap();
            scale(f, a, &li)
        }
    }
}

/// Monic gcd (zero when both inputs are zero).
pub fn gcd<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
pub fn gcd_inverse<F: FiniteField>(
    f: &F,
    a: &[F::Elem],
    m: &[F::Elem],
) -> (UPoly<F::Elem>, UPoly<F::Elem>) {
    let (mut r0, mut r1) = (m.to_vec(), rem(f, a, m));
    let (mut s0, mut s1): (UPoly<F::Elem>, UPoly<F::Elem>) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let li = f.inv(r0.last().unwrap()).unwrap();
    (scale(f, &r0, &li), rem(f, &scale(f, &s0, &li), m))
}

pub fn lcm<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let g = gcd(f, a, b);
    monic(f, &mul(f, &divrem(f, a, &g).0, b))
}

pub fn mulmod<F: FiniteField>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    m: &[F::Elem],
) -> UPoly<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: FiniteField>(f: &F, a: &[F::Elem], mut n: u64, m: &[F::Elem]) -> UPoly<F::Elem> {
    let mut r = rem(f, &[f.one()], m);
    let mut b = rem(f, a, m);
    while n > 0 {
        if n & 1 == 1 {
            r = mulmod(f, &r, &b, m);
        }
        n >>= 1;
        if n > 0 {
            b = mulmod(f, &b, &b, m);
        }
    }
    r
}

/// `a^(|F|^k) mod m`, by `k·log_p|F|` successive `p`-th powers.
pub fn frob_pow_mod<F: FiniteField>(f: &F, a: &[F::Elem], k: u64, m: &[F::Elem]) -> UPoly<F::Elem> {
    let p = f.characteristic();
    let mut r = rem(f, a, m);
    for _ in 0..k * f.prime_degree() as u64 {
        r = powmod(f, &r, p, m);
    }
    r
}

pub fn eval<F: FiniteField>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<F: FiniteField>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    let p = f.characteristic();
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| {
            let k = (i as u64 % p) as usize;
            let mut s = f.zero();
            for _ in 0..k {
                s = f.add(&s, c);
            }
            s
        })
        .collect();
    trim(f, out)
}

/// `p`-th root of a polynomial whose derivative vanishes.
fn pth_root<F: FiniteField>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    let p = f.characteristic() as usize;
    let e = f.prime_degree();
    let root = |c: &F::Elem| {
        // c^(p^(e-1)) is the inverse Frobenius on F
        let mut r = c.clone();
        for _ in 1..e {
            r = f.pow(&r, p as u64);
        }
        r
    };
    trim(f, a.iter().step_by(p).map(root).collect())
}

/// Irreducibility by Rabin's criterion.
pub fn is_irreducible<F: FiniteField>(f: &F, a: &[F::Elem]) -> bool {
    let n = match a.len() {
        0 | 1 => return false,
        l => l - 1,
    };
    if n == 1 {
        return true;
    }
    let m = monic(f, a);
    let x = x_poly(f);
    for r in prime_divisors(n as u64) {
        let h = frob_pow_mod(f, &x, n as u64 / r, &m);
        let g = gcd(f, &m, &sub(f, &h, &x));
        if g.len() != 1 {
            return false;
        }
    }
    frob_pow_mod(f, &x, n as u64, &m) == rem(f, &x, &m)
}

/// Squarefree decomposition of a monic polynomial: pairs `(s_i, i)` with `a = Π s_i^i`.
pub fn squarefree<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(UPoly<F::Elem>, u32)> {
    let a = monic(f, a);
    let mut out = Vec::new();
    if a.len() <= 1 {
        return out;
    }
    let p = f.characteristic() as u32;
    let da = derivative(f, &a);
    if da.is_empty() {
        for (s, i) in squarefree(f, &pth_root(f, &a)) {
            out.push((s, i * p));
        }
        return out;
    }
    let mut c = gcd(f, &a, &da);
    let mut w = divrem(f, &a, &c).0;
    let mut i = 1u32;
    while w.len() > 1 {
        let y = gcd(f, &w, &c);
        let z = divrem(f, &w, &y).0;
        if z.len() > 1 {
            out.push((monic(f, &z), i));
        }
        i += 1;
        w = y;
        c = divrem(f, &c, &w).0;
    }
    if c.len() > 1 {
        for (s, j) in squarefree(f, &pth_root(f, &c)) {
            out.push((s, j * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn ddf<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(UPoly<F::Elem>, usize)> {
    let mut out = Vec::new();
    let mut rest = monic(f, a);
    let x = x_poly(f);
    let mut h = rem(f, &x, &rest);
    let mut d = 1;
    while rest.len() > 1 {
        if 2 * d > rest.len() - 1 {
            let deg = rest.len() - 1;
            out.push((rest, deg));
            break;
        }
        h = frob_pow_mod(f, &h, 1, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x));
        if g.len() > 1 {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    out
}

/// Splits a monic product of distinct irreducibles of degree `d` (Cantor-Zassenhaus).
pub fn edf<F: FiniteField>(
    f: &F,
    a: &[F::Elem],
    d: usize,
    rng: &mut dyn RngCore,
) -> Vec<UPoly<F::Elem>> {
    let n = a.len() - 1;
    if n == d {
        return vec![monic(f, a)];
    }
    let p = f.characteristic();
    let steps = d as u64 * f.prime_degree() as u64;
    loop {
        let r: UPoly<F::Elem> = trim(f, (0..n).map(|_| f.random_elem(rng)).collect());
        if r.len() <= 1 {
            continue;
        }
        let s = if p == 2 {
            // absolute trace down to F_2
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..steps {
                t = mulmod(f, &t, &t, a);
                acc = add(f, &acc, &t);
            }
            acc
        } else {
            // r^((q^d - 1)/2) = Π_{i < steps} (r^((p-1)/2))^(p^i)
            let b = powmod(f, &r, (p - 1) / 2, a);
            let mut c = b.clone();
            let mut acc = b;
            for _ in 1..steps {
                c = powmod(f, &c, p, a);
                acc = mulmod(f, &acc, &c, a);
            }
            sub(f, &acc, &[f.one()])
        };
        let g = gcd(f, a, &s);
        if g.len() > 1 && g.len() < a.len() {
            let h = divrem(f, a, &g).0;
            let mut out = edf(f, &g, d, rng);
            out.extend(edf(f, &monic(f, &h), d, rng));
            return out;
        }
    }
}

/// Right kernel of a dense matrix (row-major `rows × cols`) over `F`.
pub(crate) fn kernel<F: FiniteField>(
    f: &F,
    mut m: Vec<Vec<F::Elem>>,
    cols: usize,
) -> Vec<Vec<F::Elem>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    let t = f.mul(&factor, y);
                    *x = f.sub(x, &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&m[i][free]);
        }
        basis.push(v);
    }
    basis
}

/// Berlekamp factorization of a monic squarefree polynomial over a small field.
pub fn berlekamp<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<UPoly<F::Elem>> {
    let n = a.len() - 1;
    if n <= 1 {
        return vec![monic(f, a)];
    }
    let q = f.order_u64().expect("small field");
    let xq = frob_pow_mod(f, &x_poly(f), 1, a);
    // column j of (Q - I) holds x^(qj) mod a - x^j
    let mut cols = Vec::with_capacity(n);
    let mut cur = vec![f.one()];
    for j in 0..n {
        let mut col = cur.clone();
        col.resize(n, f.zero());
        col[j] = f.sub(&col[j], &f.one());
        cols.push(col);
        cur = mulmod(f, &cur, &xq, a);
    }
    let mat: Vec<Vec<F::Elem>> = (0..n)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect();
    let ker = kernel(f, mat, n);
    let target = ker.len();
    let mut factors = vec![monic(f, a)];
    for v in ker.iter() {
        if factors.len() == target {
            break;
        }
        let v = trim(f, v.clone());
        if v.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors {
            if g.len() == 2 {
                next.push(g);
                continue;
            }
            let mut rest = g;
            for s in 0..q {
                if rest.len() <= 2 {
                    break;
                }
                let shifted = sub(f, &v, &[f.nth_element(s)]);
                let h = gcd(f, &rest, &shifted);
                if h.len() > 1 && h.len() < rest.len() {
                    rest = divrem(f, &rest, &h).0;
                    next.push(h);
                }
            }
            next.push(monic(f, &rest));
        }
        factors = next;
    }
    factors
}

/// Complete factorization into monic irreducibles with multiplicities.
pub fn factor<F: FiniteField>(
    f: &F,
    a: &[F::Elem],
    berlekamp_max_q: u64,
    rng: &mut dyn RngCore,
) -> Vec<(UPoly<F::Elem>, u32)> {
    let small = f.order_u64().is_some_and(|q| q <= berlekamp_max_q);
    let mut out = Vec::new();
    for (s, mult) in squarefree(f, a) {
        if small {
            for g in berlekamp(f, &s) {
                out.push((g, mult));
            }
        } else {
            for (g, d) in ddf(f, &s) {
                for h in edf(f, &g, d, rng) {
                    out.push((h, mult));
                }
            }
        }
    }
    out
}

/// All roots in `F` of a nonzero polynomial.
pub fn roots<F: FiniteField>(f: &F, a: &[F::Elem], rng: &mut dyn RngCore) -> Vec<F::Elem> {
    let a = monic(f, a);
    if a.len() <= 1 {
        return Vec::new();
    }
    let x = x_poly(f);
    let xq = frob_pow_mod(f, &x, 1, &a);
    let g = gcd(f, &a, &sub(f, &xq, &x));
    if g.len() <= 1 {
        return Vec::new();
    }
    edf(f, &g, 1, rng)
        .into_iter()
        .map(|lin| f.neg(&lin[0]))
        .collect()
}
