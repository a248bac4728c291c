//! Command-line front end over the text formats.
//!
//! Exit codes: 0 success or equivalent, 10 not equivalent, 11 invalid promise,
//! 1 usage or I/O error, 2 malformed instance.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{semisimple_profile, MatAlgebra};
use crate::code::{gen_fqm_instance, MatrixCode};
use crate::equiv::{
    left_stabilizer, right_stabilizer, solve_hvmce_with_transpose, solve_mcre, verify_witness,
};
use crate::equiv::{SolveOutcome, Witness};
use crate::field::{FieldContext, FieldElement};
use crate::io::{self, IoError};
use crate::matrix::Mat;
use crate::oracle::{brute_mce_with_transpose, OracleCaps};
use crate::reduction::{
    extract_monomial, forward_witness, permutation_matrix, reduce_me_to_mce, Dedup,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_NOT_EQUIVALENT: i32 = 10;
pub const EXIT_INVALID_PROMISE: i32 = 11;

#[derive(Parser, Debug)]
#[command(
    name = "rankeq",
    version,
    about = "Equivalence of rank-metric matrix codes"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Budget for brute-force search (|GL_m|·|GL_n|).
    #[arg(long, global = true)]
    cap: Option<u128>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Decide equivalence and emit a witness.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Build matrix-code instances from other problems.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Recover a monomial map from a reduced-instance witness `C = U·D·V`.
    Extract { u: String, v: String, meta: String },
    /// Check a witness file against two codes.
    Verify { c: String, d: String, w: String },
    /// Print stabilizer algebra structure.
    Stab { c: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PairKind {
    RightEquiv,
    Fqm,
    Monomial,
    Negative,
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// Random matrix code.
    Mcode {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(short)]
        o: String,
    },
    /// Instance pair with ground truth.
    Pair {
        #[arg(long, value_enum)]
        kind: PairKind,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Dimension of the vector code (fqm) or generator rows (monomial).
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(short)]
        o: String,
    },
}

#[derive(Subcommand, Debug)]
enum SolveCmd {
    /// Right equivalence C·Q = D.
    Mcre {
        c: String,
        d: String,
        #[arg(short)]
        o: Option<String>,
    },
    /// Two-sided equivalence of expanded F_{q^m}-linear codes.
    Hvmce {
        c: String,
        d: String,
        #[arg(short)]
        o: Option<String>,
        #[arg(long)]
        try_transpose: bool,
    },
    /// Exhaustive two-sided equivalence for tiny codes.
    MceBrute {
        c: String,
        d: String,
        #[arg(short)]
        o: Option<String>,
        #[arg(long)]
        try_transpose: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ReduceCmd {
    /// Monomial equivalence of generator matrices to matrix-code equivalence.
    Me2mce {
        a: String,
        b: String,
        #[arg(short)]
        o: String,
        /// Keep every column instead of removing proportional ones.
        #[arg(long)]
        no_dedup: bool,
        /// A monomial witness `A = S·B·Dg·P` to transport (three GMAT files).
        #[arg(long, num_args = 3, value_names = ["S", "DG", "P"])]
        monomial: Option<Vec<String>>,
    },
}

enum Fail {
    Usage(String),
    Malformed(String),
}

impl From<IoError> for Fail {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Io { .. } => Fail::Usage(e.to_string()),
            IoError::Malformed(_) => Fail::Malformed(e.to_string()),
        }
    }
}

fn malformed(e: impl std::fmt::Display) -> Fail {
    Fail::Malformed(e.to_string())
}

struct Ctx<'a> {
    rng: ChaCha8Rng,
    caps: OracleCaps,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn say(&mut self, s: &str) {
        let _ = writeln!(self.out, "{}", s);
    }

    fn note(&mut self, s: &str) {
        let _ = writeln!(self.err, "{}", s);
    }
}

/// Runs the command line `args` (including the program name), writing to stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Same as [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{}", text);
            } else {
                let _ = write!(out, "{}", text);
            }
            return code;
        }
    };
    let mut caps = OracleCaps::default();
    if let Some(c) = cli.cap {
        caps.mce = c;
        caps.mcre = c;
    }
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(cli.seed),
        caps,
        out,
        err,
    };
    match dispatch(cli.cmd, &mut ctx) {
        Ok(code) => code,
        Err(Fail::Usage(m)) => {
            ctx.note(&format!("error: {}", m));
            EXIT_USAGE
        }
        Err(Fail::Malformed(m)) => {
            ctx.note(&format!("error: {}", m));
            EXIT_MALFORMED
        }
    }
}

fn dispatch(cmd: Cmd, ctx: &mut Ctx) -> Result<i32, Fail> {
    match cmd {
        Cmd::Gen(g) => gen(g, ctx),
        Cmd::Solve(s) => solve(s, ctx),
        Cmd::Reduce(ReduceCmd::Me2mce {
            a,
            b,
            o,
            no_dedup,
            monomial,
        }) => reduce(&a, &b, &o, no_dedup, monomial, ctx),
        Cmd::Extract { u, v, meta } => extract(&u, &v, &meta, ctx),
        Cmd::Verify { c, d, w } => verify(&c, &d, &w, ctx),
        Cmd::Stab { c } => stab(&c, ctx),
    }
}

fn field_of(q: u64) -> Result<FieldContext, Fail> {
    FieldContext::of_order(q).map_err(|e| Fail::Usage(format!("--q {}: {}", q, e)))
}

fn load_code(path: &str) -> Result<MatrixCode, Fail> {
    Ok(io::read_mcode(&io::read_file(path)?)?)
}

fn load_gmat(path: &str) -> Result<Mat, Fail> {
    Ok(io::read_gmat(&io::read_file(path)?)?)
}

fn save(path: &str, text: &str) -> Result<(), Fail> {
    Ok(io::write_file(path, text)?)
}

fn gen(g: GenCmd, ctx: &mut Ctx) -> Result<i32, Fail> {
    match g {
        GenCmd::Mcode { q, m, n, dim, o } => {
            let f = field_of(q)?;
            let c = MatrixCode::random(&f, m, n, dim, &mut ctx.rng)
                .map_err(|e| Fail::Usage(e.to_string()))?;
            save(&o, &io::write_mcode(&c))?;
        }
        GenCmd::Pair {
            kind,
            q,
            m,
            n,
            dim,
            k,
            o,
        } => match kind {
            PairKind::RightEquiv | PairKind::Negative => {
                let f = field_of(q)?;
                let usage = |e: crate::code::CodeError| Fail::Usage(e.to_string());
                let c = MatrixCode::random(&f, m, n, dim, &mut ctx.rng).map_err(usage)?;
                let d = if let PairKind::RightEquiv = kind {
                    let q0 = Mat::random_invertible(&f, n, &mut ctx.rng);
                    let d = c.mul_right(&q0).map_err(usage)?;
                    save(
                        &format!("{}.truth.wit", o),
                        &io::write_witness(&f, &Witness::right(q0)),
                    )?;
                    d
                } else {
                    MatrixCode::random(&f, m, n, dim, &mut ctx.rng).map_err(usage)?
                };
                save(&format!("{}.C.mc", o), &io::write_mcode(&c))?;
                save(&format!("{}.D.mc", o), &io::write_mcode(&d))?;
            }
            PairKind::Fqm => {
                let inst = gen_fqm_instance(k, n, m as u32, q, &mut ctx.rng)
                    .map_err(|e| Fail::Usage(format!("{} (--q must be prime)", e)))?;
                let f = inst.expanded.field().clone();
                save(&format!("{}.V.vc", o), &io::write_vcode(&inst.vector))?;
                save(&format!("{}.C.mc", o), &io::write_mcode(&inst.expanded))?;
                save(&format!("{}.D.mc", o), &io::write_mcode(&inst.scrambled))?;
                let w = Witness::both(inst.p.clone(), inst.q.clone());
                save(&format!("{}.truth.wit", o), &io::write_witness(&f, &w))?;
            }
            PairKind::Monomial => {
                let f = field_of(q)?;
                let points = (q.pow(k as u32) - 1) / (q - 1);
                if k == 0 || k > n || n as u64 > points {
                    return Err(Fail::Usage(format!(
                        "need 1 <= k <= n <= {} for pairwise independent columns",
                        points
                    )));
                }
                let a = loop {
                    let a = Mat::random(&f, k, n, &mut ctx.rng);
                    if a.rank() == k && crate::reduction::dedup_columns(&a).len() == n {
                        break a;
                    }
                };
                let s = Mat::random_invertible(&f, k, &mut ctx.rng);
                let dvals: Vec<FieldElement> =
                    (0..n).map(|_| f.random_nonzero(&mut ctx.rng)).collect();
                let dg = Mat::diagonal(&f, &dvals);
                let mut sigma: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    sigma.swap(i, rand::Rng::gen_range(&mut ctx.rng, 0..=i));
                }
                let p = permutation_matrix(&f, &sigma);
                let inv = |m: &Mat| m.inverse().expect("invertible by construction");
                let b = inv(&s).mul(&a).mul(&inv(&p)).mul(&inv(&dg));
                for (name, m) in [("A", &a), ("B", &b), ("S", &s), ("Dg", &dg), ("P", &p)] {
                    save(&format!("{}.{}.gm", o, name), &io::write_gmat(m))?;
                }
            }
        },
    }
    Ok(EXIT_OK)
}

fn emit_witness(
    ctx: &mut Ctx,
    field: &FieldContext,
    w: &Witness,
    o: &Option<String>,
) -> Result<(), Fail> {
    let text = io::write_witness(field, w);
    match o {
        Some(path) => save(path, &text),
        None => {
            let _ = write!(ctx.out, "{}", text);
            Ok(())
        }
    }
}

fn report(
    ctx: &mut Ctx,
    outcome: &SolveOutcome,
    field: &FieldContext,
    o: &Option<String>,
) -> Result<i32, Fail> {
    match outcome {
        SolveOutcome::Equivalent(w) => {
            ctx.note("equivalent");
            emit_witness(ctx, field, w, o)?;
            Ok(EXIT_OK)
        }
        SolveOutcome::NotEquivalent => {
            ctx.note("not equivalent");
            Ok(EXIT_NOT_EQUIVALENT)
        }
        SolveOutcome::InvalidPromise(r) => {
            ctx.note(&format!("invalid promise: {}", r));
            Ok(EXIT_INVALID_PROMISE)
        }
    }
}

fn load_pair(c: &str, d: &str) -> Result<(MatrixCode, MatrixCode), Fail> {
    let (c, d) = (load_code(c)?, load_code(d)?);
    if c.field() != d.field() {
        return Err(malformed("codes are defined over different fields"));
    }
    c.same_shape(&d).map_err(malformed)?;
    Ok((c, d))
}

fn solve(s: SolveCmd, ctx: &mut Ctx) -> Result<i32, Fail> {
    match s {
        SolveCmd::Mcre { c, d, o } => {
            let (c, d) = load_pair(&c, &d)?;
            let out = solve_mcre(&c, &d, &mut ctx.rng).map_err(malformed)?;
            report(ctx, &out, c.field(), &o)
        }
        SolveCmd::Hvmce {
            c,
            d,
            o,
            try_transpose,
        } => {
            let (c, d) = load_pair(&c, &d)?;
            let (out, transposed) = if try_transpose {
                solve_hvmce_with_transpose(&c, &d, &mut ctx.rng).map_err(malformed)?
            } else {
                (
                    crate::equiv::solve_hvmce(&c, &d, &mut ctx.rng).map_err(malformed)?,
                    false,
                )
            };
            if transposed {
                ctx.note("matched the transposed target");
            }
            report(ctx, &out, c.field(), &o)
        }
        SolveCmd::MceBrute {
            c,
            d,
            o,
            try_transpose,
        } => {
            let (c, d) = load_pair(&c, &d)?;
            let found = if try_transpose {
                brute_mce_with_transpose(&c, &d, &ctx.caps)
                    .map_err(|e| Fail::Usage(e.to_string()))?
            } else {
                crate::oracle::brute_mce(&c, &d, &ctx.caps)
                    .map_err(|e| Fail::Usage(e.to_string()))?
                    .map(|w| (w, false))
            };
            let out = match found {
                Some(((p, q), transposed)) => {
                    if transposed {
                        ctx.note("matched the transposed target");
                    }
                    SolveOutcome::Equivalent(Witness::both(p, q))
                }
                None => SolveOutcome::NotEquivalent,
            };
            report(ctx, &out, c.field(), &o)
        }
    }
}

fn reduce(
    a: &str,
    b: &str,
    o: &str,
    no_dedup: bool,
    monomial: Option<Vec<String>>,
    ctx: &mut Ctx,
) -> Result<i32, Fail> {
    let (a, b) = (load_gmat(a)?, load_gmat(b)?);
    let dedup = if no_dedup {
        Dedup::None
    } else {
        Dedup::Projective
    };
    let inst = reduce_me_to_mce(&a, &b, dedup).map_err(malformed)?;
    save(&format!("{}.C.mc", o), &io::write_mcode(&inst.c))?;
    save(&format!("{}.D.mc", o), &io::write_mcode(&inst.d))?;
    save(&format!("{}.meta", o), &io::write_meta(&inst))?;
    if let Some(files) = monomial {
        if inst.a.cols() != a.cols() || inst.b.cols() != b.cols() {
            return Err(malformed(
                "monomial witness given but preprocessing removed columns",
            ));
        }
        let s = load_gmat(&files[0])?;
        let dg = load_gmat(&files[1])?;
        let p = load_gmat(&files[2])?;
        let (u, v) = forward_witness(&inst, &s, &dg, &p).map_err(malformed)?;
        save(&format!("{}.U.gm", o), &io::write_gmat(&u))?;
        save(&format!("{}.V.gm", o), &io::write_gmat(&v))?;
    }
    ctx.say(&format!("columns {} {}", inst.a.cols(), inst.c.dim()));
    Ok(EXIT_OK)
}

fn extract(u: &str, v: &str, meta: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let (u, v) = (load_gmat(u)?, load_gmat(v)?);
    let meta = io::read_meta(&io::read_file(meta)?)?;
    let mut inst = reduce_me_to_mce(&meta.a, &meta.b, Dedup::None).map_err(malformed)?;
    inst.a_cols = meta.a_cols.clone();
    inst.b_cols = meta.b_cols.clone();
    match extract_monomial(&u, &v, &inst) {
        Ok(mono) => {
            for (i, &j) in mono.sigma.iter().enumerate() {
                ctx.say(&format!(
                    "{} {} {}",
                    inst.a_cols[i], inst.b_cols[j], mono.scale[i].0
                ));
            }
            Ok(EXIT_OK)
        }
        Err(crate::reduction::ReductionError::NotAWitness) => {
            ctx.note("not a witness for the reduced instance");
            Ok(EXIT_NOT_EQUIVALENT)
        }
        Err(e) => Err(malformed(e)),
    }
}

fn verify(c: &str, d: &str, w: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let (c, d) = load_pair(c, d)?;
    let (f, w) = io::read_witness(&io::read_file(w)?)?;
    if &f != c.field() {
        return Err(malformed("witness field differs from the codes"));
    }
    let ok = verify_witness(&c, &d, &w).map_err(malformed)?;
    ctx.say(if ok { "valid" } else { "invalid" });
    Ok(if ok { EXIT_OK } else { EXIT_NOT_EQUIVALENT })
}

fn describe(ctx: &mut Ctx, side: &str, a: &MatAlgebra) -> Result<(), Fail> {
    let prof = semisimple_profile(a, &mut ctx.rng).map_err(malformed)?;
    let prof: Vec<String> = prof.iter().map(|(u, v)| format!("({},{})", u, v)).collect();
    ctx.say(&format!("{} dim {}", side, a.dim()));
    ctx.say(&format!("{} center {}", side, a.center().dim()));
    ctx.say(&format!("{} radical {}", side, a.radical().dim()));
    ctx.say(&format!("{} components {}", side, prof.join(" ")));
    Ok(())
}

fn stab(c: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let c = load_code(c)?;
    describe(ctx, "left", &left_stabilizer(&c))?;
    describe(ctx, "right", &right_stabilizer(&c))?;
    Ok(EXIT_OK)
}
