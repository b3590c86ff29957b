use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_aim8");

fn aim8(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .env_remove("AIM8_MAX_DEPTH")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn file(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn translate_examples() {
    let dir = TempDir::new().unwrap();
    for (src, flags, expected) in [
        ("first[x]", &[][..], "(FIRST, X)\n"),
        ("(A, B)", &[][..], "(QUOTE, (A, B))\n"),
        (
            "lambda[[x]; x]",
            &["--dialect", "classic"][..],
            "(LAMBDA (X) X)\n",
        ),
    ] {
        let path = file(&dir, "t.mexp", src);
        let mut args = vec!["translate", path.as_str()];
        args.extend(flags);
        let o = aim8(&args, "");
        assert_eq!(o.status.code(), Some(0), "{src}: {}", stderr(&o));
        assert_eq!(stdout(&o), expected);
    }
}

#[test]
fn translate_writes_one_line_per_item() {
    let dir = TempDir::new().unwrap();
    let path = file(&dir, "p.mexp", "id[x] = x\nid[A]\n");
    let o = aim8(&["translate", &path], "");
    assert_eq!(
        stdout(&o),
        "(DEFINE, ID, (LAMBDA, (X), X))\n(ID, (QUOTE, A))\n"
    );
}

#[test]
fn translate_errors() {
    let dir = TempDir::new().unwrap();
    let o = aim8(&["translate", &file(&dir, "bad.mexp", "first[x")], "");
    assert_eq!(o.status.code(), Some(65));
    let o = aim8(&["translate", &file(&dir, "clash.mexp", "f[quote]")], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("QUOTE"), "{}", stderr(&o));
}

#[test]
fn shipped_universal_translates_to_golden() {
    let asset = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/assets");
    let o = aim8(
        &["translate", asset.join("universal.mexp").to_str().unwrap()],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(asset.join("universal.sexp")).unwrap()
    );
}

#[test]
fn run_examples() {
    let dir = TempDir::new().unwrap();
    let append = "append[x; y] = [null[x] -> y; T -> combine[first[x]; append[rest[x]; y]]]\n\
                  append[(A, B); (C)]\n";
    let o = aim8(&["run", &file(&dir, "append.mexp", append)], "");
    assert_eq!(
        (o.status.code(), stdout(&o).as_str()),
        (Some(0), "(A, B, C)\n")
    );

    let o = aim8(&["run", &file(&dir, "bad.mexp", "first[(A, B)")], "");
    assert_eq!(o.status.code(), Some(65));
    assert_eq!(stdout(&o), "");

    let o = aim8(&["run", &file(&dir, "empty.mexp", "")], "");
    assert_eq!(
        (o.status.code(), stdout(&o).as_str(), stderr(&o).as_str()),
        (Some(0), "", "")
    );
}

#[test]
fn run_runtime_error_exits_70() {
    let dir = TempDir::new().unwrap();
    let o = aim8(&["run", &file(&dir, "e.mexp", "first[()]")], "");
    assert_eq!(o.status.code(), Some(70));
    assert!(
        stderr(&o).contains("first: undefined on the null list"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn run_sexpr_file_by_extension() {
    let dir = TempDir::new().unwrap();
    let path = file(
        &dir,
        "p.sexp",
        "(DEFINE, TWO, (QUOTE, (A, B)))\n(REST, TWO)\n",
    );
    let o = aim8(&["run", &path], "");
    assert_eq!(stdout(&o), "(B)\n");
    let o = aim8(&["run", "--kernel", "pair", &path], "");
    assert_eq!(stdout(&o), "(B)\n");
}

#[test]
fn missing_file_is_an_io_error() {
    let o = aim8(&["run", "/nonexistent/x.mexp"], "");
    assert_eq!(o.status.code(), Some(74));
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(aim8(&["bogus"], "").status.code(), Some(1));
    assert_eq!(aim8(&["--kernel", "cons"], "").status.code(), Some(1));
    assert_eq!(aim8(&["run"], "").status.code(), Some(1));
    let help = aim8(&["--help"], "");
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("translate"));
}

#[test]
fn repl_examples() {
    let o = aim8(&["repl"], "first[(A, B)]\n");
    assert_eq!(stdout(&o), "A\n");
    let o = aim8(&["repl", "--lang", "sexpr"], "(FIRST, (QUOTE, (A, B)))\n");
    assert_eq!(stdout(&o), "A\n");
    let o = aim8(&["repl"], "combine[A; B]\nfirst[(C)]\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "C\n");
    assert!(stderr(&o).contains("combine: second argument is atomic"));
}

#[test]
fn repl_without_subcommand() {
    let o = aim8(&[], "rest[(A, B)]\n");
    assert_eq!(stdout(&o), "(B)\n");
}

#[test]
fn pair_kernel_prints_classic_by_default() {
    let o = aim8(&["--kernel", "pair"], "cons[A; B]\ncons[A; ()]\n");
    assert_eq!(stdout(&o), "(A . B)\n(A)\n");
    let o = aim8(&["--kernel", "pair", "--dialect", "aim8"], "cons[A; (B)]\n");
    assert_eq!(stdout(&o), "(A, B)\n");
}

#[test]
fn max_depth_flag_and_env() {
    let deep =
        "label[f; lambda[[x]; [null[x] -> (); T -> f[rest[x]]]]][(A, B, C, D, E, F, G, H)]\n";
    let o = aim8(&["--max-depth", "10"], deep);
    assert!(stderr(&o).contains("recursion limit"), "{}", stderr(&o));
    let o = aim8(&["--max-depth", "1000"], deep);
    assert_eq!(stdout(&o), "()\n");
    let o = Command::new(BIN)
        .env("AIM8_MAX_DEPTH", "10")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(deep.as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    assert!(stderr(&o).contains("recursion limit"));
}

#[test]
fn flag_matrix() {
    let dir = TempDir::new().unwrap();
    let mexp = file(&dir, "m.mexp", "rest[(A, B, C)]\n");
    for kernel in ["list", "pair"] {
        for dialect in ["aim8", "classic"] {
            let expected = if dialect == "aim8" {
                "(B, C)\n"
            } else {
                "(B C)\n"
            };
            // F-expression input is the same whatever the dialect.
            let o = aim8(
                &[
                    "run",
                    "--kernel",
                    kernel,
                    "--lang",
                    "mexpr",
                    "--dialect",
                    dialect,
                    &mexp,
                ],
                "",
            );
            assert_eq!(
                (o.status.code(), stdout(&o)),
                (Some(0), expected.to_string()),
                "{kernel} mexpr {dialect}"
            );

            let src = if dialect == "aim8" {
                "(REST, (QUOTE, (A, B, C)))"
            } else {
                "(REST (QUOTE (A B C)))"
            };
            let sexp = file(&dir, "s.txt", src);
            let o = aim8(
                &[
                    "run",
                    "--kernel",
                    kernel,
                    "--lang",
                    "sexpr",
                    "--dialect",
                    dialect,
                    &sexp,
                ],
                "",
            );
            assert_eq!(
                (o.status.code(), stdout(&o)),
                (Some(0), expected.to_string()),
                "{kernel} sexpr {dialect}"
            );
        }
    }
}

#[test]
fn list_kernel_rejects_dotted_classic_input() {
    let dir = TempDir::new().unwrap();
    let path = file(&dir, "d.sexp", "(QUOTE (A . B))");
    let o = aim8(
        &["run", "--kernel", "list", "--dialect", "classic", &path],
        "",
    );
    assert_eq!(o.status.code(), Some(65));
    assert!(stderr(&o).contains("--kernel pair"), "{}", stderr(&o));
    let o = aim8(
        &["run", "--kernel", "pair", "--dialect", "classic", &path],
        "",
    );
    assert_eq!(stdout(&o), "(A . B)\n");
}

#[test]
fn aim8_dot_is_a_parse_error() {
    let o = aim8(&["--lang", "sexpr"], "(QUOTE, (A . B))\n");
    assert!(stderr(&o).contains("1:"), "{}", stderr(&o));
}
