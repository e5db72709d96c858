use std::collections::BTreeMap;
use std::process::Command;

use proptest::prelude::*;

use rcurves_cli::config::parse_kv;
use rcurves_cli::report::Report;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rcurves")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> Report {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    Report::from_csv(&out).unwrap()
}

#[test]
fn empty_product_tamagawa() {
    let rep = ok(&["tamagawa", "--r", "3", "--q", "2", "--D", "0"]);
    assert_eq!(rep.cell(0, "tau"), Some("128/1"));
    assert_eq!(rep.cell(0, "log_bound"), Some(""));
}

#[test]
fn count_row_for_the_anticanonical_class() {
    let rep = ok(&["count", "--q", "2", "--a", "2", "--a-prime", "2", "--k", "1,1,1"]);
    assert_eq!(rep.rows.len(), 1);
    assert_eq!(rep.cell(0, "class"), Some("3; 2 2 -1 -1 -1"));
    assert_eq!(rep.cell(0, "exact_morphisms"), Some("0"));
    assert_eq!(rep.cell(0, "exact_over_virtual"), Some("0/1"));
    assert_eq!(rep.cell(0, "c3_flag"), Some("false"));
    assert!(rep.cell(0, "virtual_morphisms").unwrap().contains('/'));
    assert_eq!(rep.config["class"], "3; 2 2 -1 -1 -1");
    assert!(!rep.config.contains_key("threads"));
}

#[test]
fn nonzero_count_and_naive_mode_agree() {
    let a = ok(&["count", "--q", "3", "--class", "3; 1 1 0 0 0", "--virtual", "false"]);
    let b = ok(&["count", "--q", "3", "--class", "3; 1 1 0 0 0", "--virtual", "false", "--mode", "naive"]);
    assert_eq!(a.cell(0, "exact_sections"), b.cell(0, "exact_sections"));
    // pairs (g, h) in PGL_2(F_3) = S_4 with h fixing none of the three centers:
    // 24 * (24 - 3 * 6 + 3 * 2 - 1)
    assert_eq!(a.cell(0, "exact_morphisms"), Some("264"));
}

#[test]
fn converge_has_one_row_per_multiple() {
    let rep = ok(&["converge", "--q", "2", "--class=-K", "--mmax", "2", "--D", "6"]);
    assert_eq!(rep.rows.len(), 2);
    assert_eq!(rep.cell(1, "class"), Some("3; 4 4 -2 -2 -2"));
    assert!(rep.flags.contains_key("moving_toward_tau"));
}

#[test]
fn json_matches_csv() {
    let csv = ok(&["limits", "--q", "3", "--nmax", "2", "--D", "6"]);
    let (code, out, _) = run(&["limits", "--q", "3", "--nmax", "2", "--D", "6", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(Report::from_json(&out).unwrap(), csv);
}

#[test]
fn config_file_is_merged_under_flags() {
    let dir = std::env::temp_dir().join(format!("rcurves-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "# scan settings\nq=3\nhmax=2\nD=4\n").unwrap();
    let rep = ok(&["scan", "--config", cfg.to_str().unwrap(), "--hmax", "1"]);
    assert_eq!(rep.config["q"], "3");
    assert_eq!(rep.config["hmax"], "1");
    let out = dir.join("out.csv");
    let (code, stdout, _) = run(&["tamagawa", "--D", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert!(Report::from_csv(&std::fs::read_to_string(&out).unwrap()).is_ok());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes_and_error_records() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["count", "--q", "6"], 2, "config"),
        (&["bogus"], 2, "config"),
        (&["scan", "--hmax", "6", "--D", "1"], 2, "config"),
        (&["count", "--q", "2", "--budget", "10"], 3, "budget"),
        (&["count", "--model-text", "2 2 1;3;0 1 0 1;0 1 1 1;1 0 1 0"], 4, "model"),
        (&["tamagawa", "--out", "/nonexistent-dir/x.csv"], 1, "io"),
    ];
    for (args, code, kind) in cases {
        let (got, out, err) = run(args);
        assert_eq!(got, *code, "{args:?}: {err}");
        assert!(out.is_empty());
        let rec: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(rec["kind"], *kind);
        assert_eq!(rec["exit_code"], *code);
        assert_eq!(rec["schema"], "rcurves-error/1");
    }
}

#[test]
fn cones_census() {
    let rep = ok(&["cones", "--r", "2"]);
    assert_eq!(rep.flags["minus_one_classes"], "6");
    assert_eq!(rep.flags["anticanonical_square"], "6");
    let rep = ok(&["cones", "--r", "7"]);
    assert_eq!(rep.flags["blow_downs"], "unavailable");
}

fn cell() -> impl Strategy<Value = String> {
    "\\PC{0,12}"
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn report_round_trip(
        command in "[a-z-]{1,10}",
        config in prop::collection::btree_map("[a-z_]{1,8}", "\\PC{0,20}", 0..4),
        flags in prop::collection::btree_map("[a-z_]{1,8}", "\\PC{0,20}", 0..4),
        width in 1usize..5,
        rows in prop::collection::vec(prop::collection::vec(cell(), 5), 0..5),
    ) {
        let columns: Vec<String> = (0..width).map(|i| format!("c{i}")).collect();
        let rows: Vec<Vec<String>> = rows.into_iter().map(|r| r[..width].to_vec()).collect();
        let rep = Report { schema: rcurves_cli::report::SCHEMA.into(), command, config, flags, columns, rows };
        let csv = rep.to_csv();
        prop_assert!(!csv.contains('\r') || rep.rows.iter().flatten().any(|c| c.contains('\r')));
        // a row of a single empty field is written as an empty line, which CSV cannot tell apart
        if !(width == 1 && rep.rows.iter().any(|r| r[0].is_empty())) {
            prop_assert_eq!(&Report::from_csv(&csv).unwrap(), &rep);
        }
        prop_assert_eq!(&Report::from_json(&rep.to_json()).unwrap(), &rep);
    }

    #[test]
    fn readers_never_panic(s in "\\PC{0,200}") {
        let _ = parse_kv(&s);
        let _ = Report::from_csv(&s);
        let _ = Report::from_json(&s);
        let mut m = BTreeMap::new();
        m.insert("class".to_string(), s.clone());
        let _ = rcurves_cli::config::RunConfig::from_map(rcurves_cli::config::Command::Count, &m);
    }
}
