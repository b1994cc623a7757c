//! End-to-end runs of the binary: formats, exit codes, determinism.

use std::process::Command;

fn lgorb(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lgorb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lgorb(args);
    assert!(
        out.status.success(),
        "lgorb {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn sectors_plain_lists_the_cubic() {
    let text = stdout(&["--preset", "x3_z3", "sectors"]);
    assert!(text.contains("sector (0): d_g=0 age=0/1 dim=2 parity=even basis: 1, x1"));
    assert!(text.contains("graded dimension: even 2, odd 2"));
}

#[test]
fn sigma_json_is_deterministic_modulo_timing() {
    let strip = |s: String| -> String {
        s.lines()
            .filter(|l| !l.contains("elapsed_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = strip(stdout(&["--preset", "chain33", "table", "--format", "json"]));
    let b = strip(stdout(&["--preset", "chain33", "table", "--format", "json"]));
    assert_eq!(a, b);
    assert!(a.contains("\"t_exponent\""));
    assert!(a.contains("\"coeffs\""));
}

#[test]
fn config_file_round_trip() {
    let dir = std::env::temp_dir().join("lgorb-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fermat33.cfg");
    std::fs::write(
        &path,
        "[model]\nnvars = 2\nW = x1^3 + x2^3\n\n[group]\norder = 3\ngenerators = 1,0; 0,1\n",
    )
    .unwrap();
    let text = stdout(&["--config", path.to_str().unwrap(), "sectors"]);
    assert!(text.contains("group order 9"));
    assert!(text.contains("graded dimension: even 8, odd 8"));
}

#[test]
fn check_suites_pass_on_presets() {
    let text = stdout(&["--preset", "x3_z3", "check", "all"]);
    assert!(text.trim_end().ends_with("result: pass"));
    let text = stdout(&["--preset", "fermat33", "check", "braided"]);
    assert!(text.trim_end().ends_with("result: pass"));
}

#[test]
fn exit_codes_follow_the_contract() {
    // Validation failures exit 1.
    assert_eq!(lgorb(&["--preset", "nope", "sectors"]).status.code(), Some(1));
    assert_eq!(lgorb(&["sectors"]).status.code(), Some(1));
    assert_eq!(
        lgorb(&["--preset", "x3_z3", "check", "bogus"]).status.code(),
        Some(1)
    );
    assert_eq!(
        lgorb(&["--preset", "x3_z3", "sigma", "1,0", "1"]).status.code(),
        Some(1)
    );
    // Computation failures exit 2.
    let dir = std::env::temp_dir().join("lgorb-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nonisolated.cfg");
    std::fs::write(
        &path,
        "[model]\nnvars = 2\nW = x1^2*x2^2\n\n[group]\norder = 2\ngenerators = 1,1\n",
    )
    .unwrap();
    assert_eq!(
        lgorb(&["--config", path.to_str().unwrap(), "sectors"])
            .status
            .code(),
        Some(2)
    );
    // Help exits 0.
    assert_eq!(lgorb(&["--help"]).status.code(), Some(0));
}

#[test]
fn surface_command_reports_the_isomorphism() {
    let text = stdout(&["surface", "--genus", "2"]);
    assert!(text.contains("untwisted sector dimension 14 (expected 14)"));
    assert!(text.contains("cohomology of the genus-2 surface recovered: yes"));
}

#[test]
fn invariant_table_prints_products() {
    let text = stdout(&["--preset", "surface2", "table", "--invariants-only"]);
    assert!(text.contains("u0 = (1)*xi[0,0,0]"));
    assert!(text.contains("* u"));
}

#[test]
fn latex_output_is_wellformed() {
    let text = stdout(&["--preset", "x3_z3", "table", "--format", "latex"]);
    assert!(text.contains("\\begin{tabular}"));
    assert!(text.contains("\\end{tabular}"));
    assert!(text.contains("\\zeta"));
}
