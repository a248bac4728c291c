use std::fs;
use std::path::Path;

use rankeq::cli::{run_with, EXIT_INVALID_PROMISE, EXIT_MALFORMED, EXIT_NOT_EQUIVALENT, EXIT_OK};
use rankeq::io;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["rankeq"];
    full.extend_from_slice(args);
    let code = run_with(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn solve_self_emits_witness() {
    let dir = tempfile::tempdir().unwrap();
    let c = p(dir.path(), "c.mc");
    let w = p(dir.path(), "w.wit");
    let gen = [
        "gen", "mcode", "--q", "3", "--m", "3", "--n", "4", "--dim", "5", "--seed", "1", "-o", &c,
    ];
    assert_eq!(run(&gen).0, EXIT_OK);
    let (code, _, err) = run(&["solve", "mcre", &c, &c, "-o", &w]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("equivalent"));
    assert!(fs::read_to_string(&w).unwrap().starts_with("MWIT 1\n"));
    assert_eq!(run(&["verify", &c, &c, &w]).0, EXIT_OK);
}

#[test]
fn generation_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = p(dir.path(), "a");
    let b = p(dir.path(), "b");
    for prefix in [&a, &b] {
        let args = [
            "gen",
            "pair",
            "--kind",
            "right-equiv",
            "--q",
            "4",
            "--m",
            "3",
            "--n",
            "3",
            "--dim",
            "4",
            "--seed",
            "7",
            "-o",
            prefix,
        ];
        assert_eq!(run(&args).0, EXIT_OK);
    }
    for ext in ["C.mc", "D.mc", "truth.wit"] {
        let x = fs::read(format!("{}.{}", a, ext)).unwrap();
        assert_eq!(x, fs::read(format!("{}.{}", b, ext)).unwrap(), "{}", ext);
    }
    let text = fs::read_to_string(format!("{}.C.mc", a)).unwrap();
    assert_eq!(io::write_mcode(&io::read_mcode(&text).unwrap()), text);
    let (c, d, w) = (
        format!("{}.C.mc", a),
        format!("{}.D.mc", a),
        format!("{}.truth.wit", a),
    );
    assert_eq!(run(&["verify", &c, &d, &w]).0, EXIT_OK);
}

#[test]
fn right_equivalence_solve_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let pre = p(dir.path(), "x");
    let w = p(dir.path(), "x.wit");
    for seed in 0..5 {
        let s = seed.to_string();
        let args = [
            "gen",
            "pair",
            "--kind",
            "right-equiv",
            "--q",
            "2",
            "--m",
            "4",
            "--n",
            "4",
            "--dim",
            "6",
            "--seed",
            &s,
            "-o",
            &pre,
        ];
        assert_eq!(run(&args).0, EXIT_OK);
        let (c, d) = (format!("{}.C.mc", pre), format!("{}.D.mc", pre));
        assert_eq!(
            run(&["--seed", &s, "solve", "mcre", &c, &d, "-o", &w]).0,
            EXIT_OK
        );
        assert_eq!(run(&["verify", &c, &d, &w]).0, EXIT_OK);
    }
}

#[test]
fn corrupted_witness_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let pre = p(dir.path(), "x");
    let args = [
        "gen",
        "pair",
        "--kind",
        "right-equiv",
        "--q",
        "2",
        "--m",
        "3",
        "--n",
        "3",
        "--dim",
        "3",
        "--seed",
        "3",
        "-o",
        &pre,
    ];
    assert_eq!(run(&args).0, EXIT_OK);
    let (c, d, w) = (
        format!("{}.C.mc", pre),
        format!("{}.D.mc", pre),
        format!("{}.truth.wit", pre),
    );
    let text = fs::read_to_string(&w).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let last = lines.len() - 1;
    lines[last] = "0 0 0".into();
    let bad = p(dir.path(), "bad.wit");
    fs::write(&bad, lines.join("\n") + "\n").unwrap();
    let (code, out, _) = run(&["verify", &c, &d, &bad]);
    assert_eq!(code, EXIT_NOT_EQUIVALENT);
    assert_eq!(out.trim(), "invalid");
}

#[test]
fn malformed_input_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let c = p(dir.path(), "c.mc");
    fs::write(&c, "MCODE 1\nfield 2 1\ndims 2 2 1\n1 0\n").unwrap();
    assert_eq!(run(&["stab", &c]).0, EXIT_MALFORMED);
}

#[test]
fn hvmce_pipeline_and_promise() {
    let dir = tempfile::tempdir().unwrap();
    let pre = p(dir.path(), "f");
    let w = p(dir.path(), "f.wit");
    let args = [
        "gen", "pair", "--kind", "fqm", "--q", "3", "--m", "3", "--n", "4", "--k", "2", "--seed",
        "11", "-o", &pre,
    ];
    assert_eq!(run(&args).0, EXIT_OK);
    let (c, d) = (format!("{}.C.mc", pre), format!("{}.D.mc", pre));
    assert!(io::read_vcode(&fs::read_to_string(format!("{}.V.vc", pre)).unwrap()).is_ok());
    assert_eq!(run(&["solve", "hvmce", &c, &d, "-o", &w]).0, EXIT_OK);
    assert_eq!(run(&["verify", &c, &d, &w]).0, EXIT_OK);

    let g = p(dir.path(), "g.mc");
    let gen = [
        "gen", "mcode", "--q", "3", "--m", "3", "--n", "4", "--dim", "6", "--seed", "2", "-o", &g,
    ];
    assert_eq!(run(&gen).0, EXIT_OK);
    let (code, _, err) = run(&["solve", "hvmce", &g, &g]);
    assert_eq!(code, EXIT_OK, "{}", err);
    let (code, _, err) = run(&["solve", "hvmce", &c, &g]);
    assert_eq!(code, EXIT_INVALID_PROMISE, "{}", err);
}

#[test]
fn stab_reports_structure() {
    let dir = tempfile::tempdir().unwrap();
    let pre = p(dir.path(), "f");
    let args = [
        "gen", "pair", "--kind", "fqm", "--q", "2", "--m", "4", "--n", "3", "--k", "1", "--seed",
        "5", "-o", &pre,
    ];
    assert_eq!(run(&args).0, EXIT_OK);
    let (code, out, _) = run(&["stab", &format!("{}.C.mc", pre)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("left dim 4\n"), "{}", out);
    assert!(out.contains("left components (1,4)\n"), "{}", out);
    assert!(out.contains("right radical"));
}

#[test]
fn reduction_and_extraction() {
    let dir = tempfile::tempdir().unwrap();
    let pre = p(dir.path(), "m");
    let red = p(dir.path(), "r");
    let args = [
        "gen", "pair", "--kind", "monomial", "--q", "5", "--k", "2", "--n", "4", "--seed", "9",
        "-o", &pre,
    ];
    assert_eq!(run(&args).0, EXIT_OK);
    let f = |x: &str| format!("{}.{}.gm", pre, x);
    let (code, out, err) = run(&[
        "reduce",
        "me2mce",
        &f("A"),
        &f("B"),
        "-o",
        &red,
        "--monomial",
        &f("S"),
        &f("Dg"),
        &f("P"),
    ]);
    assert_eq!(code, EXIT_OK, "{}", err);
    assert_eq!(out.trim(), "columns 4 4");
    let (u, v, meta) = (
        format!("{}.U.gm", red),
        format!("{}.V.gm", red),
        format!("{}.meta", red),
    );
    let (code, out, _) = run(&["extract", &u, &v, &meta]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 4);

    let c = io::read_mcode(&fs::read_to_string(format!("{}.C.mc", red)).unwrap()).unwrap();
    let d = io::read_mcode(&fs::read_to_string(format!("{}.D.mc", red)).unwrap()).unwrap();
    let um = io::read_gmat(&fs::read_to_string(&u).unwrap()).unwrap();
    let vm = io::read_gmat(&fs::read_to_string(&v).unwrap()).unwrap();
    assert_eq!(c, d.transform(Some(&um), Some(&vm)).unwrap());

    let mut bad = um.clone();
    bad.swap_rows(0, 3);
    let badp = p(dir.path(), "bad.gm");
    fs::write(&badp, io::write_gmat(&bad)).unwrap();
    assert_eq!(run(&["extract", &badp, &v, &meta]).0, EXIT_NOT_EQUIVALENT);
}

#[test]
fn brute_mce_with_transpose() {
    let dir = tempfile::tempdir().unwrap();
    let c = p(dir.path(), "c.mc");
    let gen = [
        "gen", "mcode", "--q", "2", "--m", "2", "--n", "2", "--dim", "2", "--seed", "4", "-o", &c,
    ];
    assert_eq!(run(&gen).0, EXIT_OK);
    let code = io::read_mcode(&fs::read_to_string(&c).unwrap()).unwrap();
    let t = p(dir.path(), "t.mc");
    fs::write(&t, io::write_mcode(&code.transpose())).unwrap();
    let (plain, _, _) = run(&["solve", "mce-brute", &c, &t]);
    let (code2, _, err) = run(&["solve", "mce-brute", &c, &t, "--try-transpose"]);
    assert_eq!(code2, EXIT_OK);
    if plain != EXIT_OK {
        assert!(err.contains("transposed"));
    }
}
