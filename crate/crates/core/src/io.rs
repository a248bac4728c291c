//! Text formats: `MCODE 1`, `VCODE 1`, `GMAT 1`, `MWIT 1` and the reduction
//! metadata `MMETA 1`. Lines starting with `#` are ignored on input.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::code::{MatrixCode, VectorCode};
use crate::equiv::Witness;
use crate::field::{FieldContext, FieldElement};
use crate::matrix::Mat;
use crate::reduction::ReductionInstance;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Malformed(String),
}

fn bad(msg: impl Into<String>) -> IoError {
    IoError::Malformed(msg.into())
}

pub fn read_file(path: &str) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_string(),
        source,
    })
}

pub fn write_file(path: &str, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Io {
        path: path.to_string(),
        source,
    })
}

struct Lines<'a> {
    it: std::iter::Peekable<Box<dyn Iterator<Item = &'a str> + 'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = &'a str> + 'a> = Box::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        );
        Lines { it: it.peekable() }
    }

    fn next(&mut self, what: &str) -> Result<&'a str, IoError> {
        self.it
            .next()
            .ok_or_else(|| bad(format!("unexpected end of input, expected {}", what)))
    }

    fn peek(&mut self) -> Option<&'a str> {
        self.it.peek().copied()
    }

    fn expect_magic(&mut self, magic: &str) -> Result<(), IoError> {
        let l = self.next(magic)?;
        if l.split_whitespace().collect::<Vec<_>>() != magic.split_whitespace().collect::<Vec<_>>()
        {
            return Err(bad(format!("expected '{}', found '{}'", magic, l)));
        }
        Ok(())
    }

    fn keyword(&mut self, key: &str, count: usize) -> Result<Vec<usize>, IoError> {
        let l = self.next(key)?;
        let mut toks = l.split_whitespace();
        if toks.next() != Some(key) {
            return Err(bad(format!("expected '{}' line, found '{}'", key, l)));
        }
        let vals = toks.map(parse_usize).collect::<Result<Vec<_>, _>>()?;
        if vals.len() != count {
            return Err(bad(format!("'{}' expects {} values", key, count)));
        }
        Ok(vals)
    }

    fn block(&mut self, field: &FieldContext, rows: usize, cols: usize) -> Result<Mat, IoError> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let l = self.next("matrix row")?;
            let row: Vec<u64> = l
                .split_whitespace()
                .map(parse_u64)
                .collect::<Result<_, _>>()?;
            if row.len() != cols {
                return Err(bad(format!(
                    "row {} has {} entries, expected {}",
                    r,
                    row.len(),
                    cols
                )));
            }
            for c in row {
                data.push(
                    field
                        .element(c)
                        .ok_or_else(|| bad(format!("entry {} outside the field", c)))?,
                );
            }
        }
        Ok(Mat::from_vec(field, rows, cols, data))
    }

    fn finish(&mut self) -> Result<(), IoError> {
        match self.peek() {
            None => Ok(()),
            Some(l) => Err(bad(format!("trailing content '{}'", l))),
        }
    }
}

fn parse_u64(s: &str) -> Result<u64, IoError> {
    s.parse()
        .map_err(|_| bad(format!("not an integer: '{}'", s)))
}

fn parse_usize(s: &str) -> Result<usize, IoError> {
    s.parse()
        .map_err(|_| bad(format!("not an integer: '{}'", s)))
}

/// Parses `field <p> <e> [<c_0> ... <c_e>]`.
pub fn parse_field_header(line: &str) -> Result<FieldContext, IoError> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.first() != Some(&"field") || toks.len() < 3 {
        return Err(bad(format!("bad field header '{}'", line)));
    }
    let p = parse_u64(toks[1])?;
    let e: u32 = toks[2].parse().map_err(|_| bad("bad extension degree"))?;
    let coeffs: Vec<u64> = toks[3..]
        .iter()
        .map(|t| parse_u64(t))
        .collect::<Result<_, _>>()?;
    let r = if e == 1 && coeffs.is_empty() {
        FieldContext::prime(p)
    } else {
        FieldContext::new(p, e, Some(&coeffs), &mut ChaCha8Rng::seed_from_u64(0))
    };
    r.map_err(|err| bad(format!("bad field header '{}': {}", line, err)))
}

fn push_block(out: &mut String, m: &Mat) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.0.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

pub fn write_mcode(c: &MatrixCode) -> String {
    let mut out = format!(
        "MCODE 1\n{}\ndims {} {} {}\n",
        c.field().header(),
        c.m(),
        c.n(),
        c.dim()
    );
    for (i, b) in c.basis().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        push_block(&mut out, b);
    }
    out
}

pub fn read_mcode(text: &str) -> Result<MatrixCode, IoError> {
    let mut l = Lines::new(text);
    l.expect_magic("MCODE 1")?;
    let field = parse_field_header(l.next("field header")?)?;
    let d = l.keyword("dims", 3)?;
    let (m, n, k) = (d[0], d[1], d[2]);
    let mats = (0..k)
        .map(|_| l.block(&field, m, n))
        .collect::<Result<Vec<_>, _>>()?;
    l.finish()?;
    let c = MatrixCode::span(&field, m, n, &mats).map_err(|e| bad(e.to_string()))?;
    if c.dim() != k {
        return Err(bad(format!(
            "basis matrices span dimension {}, header says {}",
            c.dim(),
            k
        )));
    }
    Ok(c)
}

pub fn write_vcode(v: &VectorCode) -> String {
    let mut out = format!(
        "VCODE 1\n{}\ndims {} {}\n",
        v.field().header(),
        v.k(),
        v.n()
    );
    push_block(&mut out, v.generator());
    out
}

pub fn read_vcode(text: &str) -> Result<VectorCode, IoError> {
    let mut l = Lines::new(text);
    l.expect_magic("VCODE 1")?;
    let field = parse_field_header(l.next("field header")?)?;
    let d = l.keyword("dims", 2)?;
    let g = l.block(&field, d[0], d[1])?;
    l.finish()?;
    VectorCode::new(g).map_err(|e| bad(e.to_string()))
}

pub fn write_gmat(g: &Mat) -> String {
    let mut out = format!(
        "GMAT 1\n{}\ndims {} {}\n",
        g.field().header(),
        g.rows(),
        g.cols()
    );
    push_block(&mut out, g);
    out
}

pub fn read_gmat(text: &str) -> Result<Mat, IoError> {
    let mut l = Lines::new(text);
    l.expect_magic("GMAT 1")?;
    let field = parse_field_header(l.next("field header")?)?;
    let d = l.keyword("dims", 2)?;
    let g = l.block(&field, d[0], d[1])?;
    l.finish()?;
    Ok(g)
}

pub fn write_witness(field: &FieldContext, w: &Witness) -> String {
    let mut out = format!("MWIT 1\n{}\n# P*C*Q = D\n", field.header());
    if let Some(p) = &w.left {
        let _ = writeln!(out, "left {}", p.rows());
        push_block(&mut out, p);
    }
    if let Some(q) = &w.right {
        let _ = writeln!(out, "right {}", q.rows());
        push_block(&mut out, q);
    }
    out
}

pub fn read_witness(text: &str) -> Result<(FieldContext, Witness), IoError> {
    let mut l = Lines::new(text);
    l.expect_magic("MWIT 1")?;
    let field = parse_field_header(l.next("field header")?)?;
    let mut w = Witness::default();
    if l.peek().is_some_and(|s| s.starts_with("left")) {
        let m = l.keyword("left", 1)?[0];
        w.left = Some(l.block(&field, m, m)?);
    }
    if l.peek().is_some_and(|s| s.starts_with("right")) {
        let n = l.keyword("right", 1)?[0];
        w.right = Some(l.block(&field, n, n)?);
    }
    l.finish()?;
    Ok((field, w))
}

/// Reduction metadata: retained column indices followed by the retained generators.
pub fn write_meta(inst: &ReductionInstance) -> String {
    let (k, n) = inst.a.shape();
    let mut out = format!("MMETA 1\n{}\ndims {} {}\n", inst.a.field().header(), k, n);
    let _ = writeln!(out, "A {}", inst.a_cols.len());
    for i in &inst.a_cols {
        let _ = writeln!(out, "{}", i);
    }
    let _ = writeln!(out, "B {}", inst.b_cols.len());
    for i in &inst.b_cols {
        let _ = writeln!(out, "{}", i);
    }
    push_block(&mut out, &inst.a);
    push_block(&mut out, &inst.b);
    out
}

/// Parsed metadata; the instance is rebuilt from the stored generators.
#[derive(Clone, Debug)]
pub struct Meta {
    pub a: Mat,
    pub b: Mat,
    pub a_cols: Vec<usize>,
    pub b_cols: Vec<usize>,
}

pub fn read_meta(text: &str) -> Result<Meta, IoError> {
    let mut l = Lines::new(text);
    l.expect_magic("MMETA 1")?;
    let field = parse_field_header(l.next("field header")?)?;
    let d = l.keyword("dims", 2)?;
    let (k, n) = (d[0], d[1]);
    let mut maps = Vec::new();
    for key in ["A", "B"] {
        let cnt = l.keyword(key, 1)?[0];
        if cnt != n {
            return Err(bad(format!(
                "{} map has {} entries, expected {}",
                key, cnt, n
            )));
        }
        let idx = (0..cnt)
            .map(|_| l.next("column index").and_then(parse_usize))
            .collect::<Result<Vec<_>, _>>()?;
        maps.push(idx);
    }
    let a = l.block(&field, k, n)?;
    let b = l.block(&field, k, n)?;
    l.finish()?;
    let b_cols = maps.pop().expect("two maps");
    let a_cols = maps.pop().expect("two maps");
    Ok(Meta {
        a,
        b,
        a_cols,
        b_cols,
    })
}

/// Flat element codes, for callers that build matrices by hand.
pub fn codes_to_elems(field: &FieldContext, codes: &[u64]) -> Option<Vec<FieldElement>> {
    codes.iter().map(|&c| field.element(c)).collect()
}
