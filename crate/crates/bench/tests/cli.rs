//! End-to-end runs of the `weno-bench` binary.

use std::path::Path;
use std::process::{Command, Output};

use weno_bench::output::read_csv;
use weno_bench::RunConfig;

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weno-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("ok");
    let ok = bench(&["run", "--case", "sod", "--nx", "40", "--t-final", "0.01", "--out", path(&out)]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));

    assert_eq!(code(&bench(&["run", "--case", "nope"])), 2);
    assert_eq!(code(&bench(&["run"])), 2);
    assert_eq!(code(&bench(&["run", "--case", "sod", "--gamma-hi", "1.5"])), 2);
    let missing = tmp.path().join("missing.toml");
    assert_eq!(code(&bench(&["run", "--config", path(&missing)])), 2);

    // a plain file where the output directory should be
    let blocker = tmp.path().join("blocker");
    std::fs::write(&blocker, "").unwrap();
    let io = bench(&["run", "--case", "sod", "--nx", "20", "--t-final", "0", "--out", path(&blocker.join("sub"))]);
    assert_eq!(code(&io), 1);

    let blow = tmp.path().join("blow");
    let diverged = bench(&["run", "--case", "sod", "--cfl", "8", "--out", path(&blow)]);
    assert_eq!(code(&diverged), 3);
    let diag = read_json(&blow.join("diagnostics.json"));
    assert_eq!(diag["case"], "sod");
    assert!(!blow.join("field.csv").exists());
}

#[test]
fn written_config_reproduces_the_run() {
    let tmp = tempfile::tempdir().unwrap();
    let first = tmp.path().join("first");
    let args = [
        "run", "--case", "jiang_shu_composite", "--scheme", "ao", "--nx", "64", "--t-final", "0.5",
        "--cfl", "0.4", "--snapshot-every", "0.25", "--gamma-lo", "0.8", "--out", path(&first),
    ];
    assert_eq!(code(&bench(&args)), 0);
    let written = RunConfig::load(&first.join("config.toml")).unwrap();
    assert_eq!(written.case.nx, Some(64));
    assert_eq!(written.case.cfl, Some(0.4));
    assert_eq!(written.scheme.gamma_lo, 0.8);
    assert_eq!(RunConfig::from_toml(&written.to_toml()).unwrap(), written);

    let second = tmp.path().join("second");
    let cfg = first.join("config.toml");
    assert_eq!(code(&bench(&["run", "--config", path(&cfg), "--out", path(&second)])), 0);
    for f in ["field.csv", "field.vtk", "summary.json", "snapshots/snapshot_0002.csv"] {
        assert_eq!(
            std::fs::read(first.join(f)).unwrap(),
            std::fs::read(second.join(f)).unwrap(),
            "{f}"
        );
    }
    let summary = read_json(&second.join("summary.json"));
    assert_eq!(summary["snapshots"].as_array().unwrap().len(), 3);
}

#[test]
fn flags_override_the_file() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("c.toml");
    std::fs::write(&cfg, "[case]\nname = \"sod\"\nnx = 40\nt_final = 0.01\n").unwrap();
    let out = tmp.path().join("o");
    assert_eq!(code(&bench(&["run", "--config", path(&cfg), "--nx", "24", "--out", path(&out)])), 0);
    let summary = read_json(&out.join("summary.json"));
    assert_eq!(summary["cells"][0], 24);
    assert_eq!(summary["t"], 0.01);
}

#[test]
fn zero_final_time_writes_the_initial_state() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("z");
    assert_eq!(code(&bench(&["run", "--case", "dmr", "--nx", "40", "--ny", "10", "--t-final", "0", "--out", path(&out)])), 0);
    let table = read_csv(&out.join("field.csv")).unwrap();
    let case = RunConfig::load(&out.join("config.toml")).unwrap().case_spec().unwrap();
    let initial = case.initial_field();
    for (k, name) in ["density", "momentum_x", "momentum_y", "energy"].iter().enumerate() {
        assert_eq!(table.column(name).unwrap(), initial.component(k), "{name}");
    }
    assert_eq!(read_json(&out.join("summary.json"))["steps"], 0);
}

#[test]
fn csv_and_vtk_read_back() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("d");
    assert_eq!(code(&bench(&["run", "--case", "dmr", "--nx", "24", "--ny", "6", "--t-final", "0.01", "--out", path(&out)])), 0);
    let table = read_csv(&out.join("field.csv")).unwrap();
    assert_eq!(table.rows.len(), 24 * 6);
    let summary = read_json(&out.join("summary.json"));
    let density = table.column("density").unwrap();
    let max = density.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let reported = summary["components"][0]["max"].as_f64().unwrap();
    assert!((max - reported).abs() <= 1e-15 * reported);

    let vtk = std::fs::read_to_string(out.join("field.vtk")).unwrap();
    assert!(vtk.starts_with("# vtk DataFile Version 3.0\n"));
    assert!(vtk.contains("DIMENSIONS 25 7 1\n"));
    assert!(vtk.contains("CELL_DATA 144\n"));
    for name in ["density", "momentum_x", "momentum_y", "energy", "pressure"] {
        assert!(vtk.contains(&format!("SCALARS {name} double 1\n")), "{name}");
    }
    let numbers = vtk.lines().filter(|l| l.parse::<f64>().is_ok()).count();
    assert_eq!(numbers, 5 * 144);
    let first_density: f64 = vtk
        .split("SCALARS density double 1\nLOOKUP_TABLE default\n")
        .nth(1)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((first_density - density[0]).abs() <= 1e-15 * density[0]);
}

#[test]
fn sine_error_at_two_hundred_cells() {
    // 200 cells on [-1, 1] is a mesh size of 1/100
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("s");
    let run = bench(&["run", "--case", "sine_advection", "--scheme", "aoa", "--nx", "200", "--out", path(&out)]);
    assert_eq!(code(&run), 0);
    let l1 = read_json(&out.join("summary.json"))["error"]["l1"].as_f64().unwrap();
    let reference = 2.54e-9;
    assert!(l1 < 1.5 * reference && l1 > reference / 1.5, "L1 = {l1:e}");
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("L1 = 2.5"), "{stdout}");
}

#[test]
fn comparing_a_configuration_with_itself_gives_zero() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("c.toml");
    std::fs::write(&cfg, "[case]\nname = \"jiang_shu_composite\"\nnx = 50\nt_final = 0.3\n").unwrap();
    let out = tmp.path().join("cmp");
    let same = bench(&["compare", "--config", path(&cfg), "--against", path(&cfg), "--out", path(&out)]);
    assert_eq!(code(&same), 0, "{}", String::from_utf8_lossy(&same.stderr));
    let report = read_json(&out.join("compare.json"));
    assert_eq!(report["difference"][0]["linf"], 0.0);
    let diff = read_csv(&out.join("difference.csv")).unwrap();
    assert!(diff.column("u").unwrap().iter().all(|d| *d == 0.0));

    let pair = tmp.path().join("pair");
    assert_eq!(code(&bench(&["compare", "--config", path(&cfg), "--out", path(&pair)])), 0);
    let report = read_json(&pair.join("compare.json"));
    assert_eq!((report["a"]["scheme"].as_str(), report["b"]["scheme"].as_str()), (Some("aoa"), Some("ao")));
    assert!(report["difference"][0]["linf"].as_f64().unwrap() > 0.0);

    let other = tmp.path().join("o.toml");
    std::fs::write(&other, "[case]\nname = \"jiang_shu_composite\"\nnx = 60\n").unwrap();
    let bad = bench(&["compare", "--config", path(&cfg), "--against", path(&other), "--out", path(&out)]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn converge_with_one_level_has_no_order_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("c1");
    let args = ["converge", "--case", "sine_advection", "--levels", "1", "--variants", "aoa", "--out", path(&out)];
    assert_eq!(code(&bench(&args)), 0);
    let table = read_csv(&out.join("convergence.csv"));
    // the scheme column is text, so read the raw lines
    assert!(table.is_err());
    let text = std::fs::read_to_string(out.join("convergence.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["scheme,n,dx,l1,linf", lines[1]]);
    assert!(lines[1].starts_with("aoa,50,"));

    let two = tmp.path().join("c2");
    let args = ["converge", "--case", "sine_advection", "--levels", "2", "--out", path(&two)];
    assert_eq!(code(&bench(&args)), 0);
    let text = std::fs::read_to_string(two.join("convergence.csv")).unwrap();
    assert!(text.starts_with("scheme,n,dx,l1,l1_order,linf,linf_order\n"));
    assert_eq!(text.lines().count(), 5);

    assert_eq!(code(&bench(&["converge", "--case", "sod", "--out", path(&two)])), 2);
}

#[test]
fn shipped_configs_are_valid() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let cfg = RunConfig::load(&path).unwrap_or_else(|e| panic!("{e}"));
            cfg.validate().unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            seen += 1;
        }
    }
    assert_eq!(seen, 5);
}
