use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_origami-lab"));
    c.env_remove("ORIGAMI_LAB_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

#[test]
fn staircase_genus() {
    assert_eq!(ok(&["origami", "genus", "--staircase", "4"]), "4\n");
    for g in 1..=6 {
        assert_eq!(ok(&["origami", "genus", "--staircase", &g.to_string()]).trim(), g.to_string());
    }
    assert_eq!(ok(&["origami", "genus", "--torus"]).trim(), "1");
}

#[test]
fn z2check_random_sets() {
    assert_eq!(ok(&["spectral", "z2check", "--random", "10000", "--k", "2", "--seed", "7"]), "10000/10000 pass\n");
    assert_eq!(ok(&["spectral", "z2check", "--set", "1,0", "--k", "1"]), "1/1 pass\n");
}

#[test]
fn level_dot_has_tagged_edges() {
    let dot = ok(&["level", "build", "--staircase", "2", "--k", "2", "--t", "8", "--format", "dot"]);
    assert!(dot.starts_with("graph level_8 {"));
    assert!(dot.contains("kind=\"metric\""));
    // An inverse jump retraces a forward one, so only a and b tags survive.
    for l in ["a", "b"] {
        assert!(dot.contains(&format!("kind=\"warp:{l}\"")), "missing warp:{l}");
    }
    let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
    let tagged = dot.matches("kind=\"").count();
    assert_eq!(edges, tagged);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["level", "build", "--staircase", "2"],
        vec!["origami", "genus", "--staircase", "2", "--torus"],
        vec!["origami", "genus", "--staircase", "2", "--format", "svg"],
        vec!["spectral", "z2check", "--k", "1"],
        vec!["spectral", "scan", "--torus", "--levels", "8,4"],
        vec!["export", "--torus", "--t", "4"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_one_with_name() {
    let cases: [(&[&str], &str); 5] = [
        (&["level", "build", "--staircase", "2", "--k", "1", "--t", "4"], "KNotAdmissible"),
        (&["spectral", "cheeger", "--family", "staircase:2:2:8"], "TooLarge"),
        (&["spectral", "z2check", "--set", "0,0;1,2", "--k", "1"], "ContainsOrigin"),
        (&["origami", "genus", "--staircase", "0"], "InvalidGenus"),
        (&["spectral", "lambda2", "--graph", "/nonexistent/graph.edges"], "Io"),
    ];
    for (args, name) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(stderr(&o).contains(&format!("error: {name}:")), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn non_transitive_datum_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("datum.json");
    std::fs::write(&p, r#"{"m": 2, "sigma": [0, 1], "tau": [0, 1]}"#).unwrap();
    let o = run(&["origami", "validate", "--datum", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotTransitive"));
}

#[test]
fn help_names_the_construct() {
    let cases: [(&[&str], &str); 23] = [
        (&["origami"], "origami"),
        (&["origami", "validate"], "corner classes"),
        (&["origami", "genus"], "Genus"),
        (&["origami", "grid"], "(1/n)Z"),
        (&["dynamics"], "shear"),
        (&["dynamics", "orbit"], "Orbit"),
        (&["dynamics", "fixed"], "fixed"),
        (&["level"], "warped cone"),
        (&["level", "build"], "warped-cone level graph"),
        (&["level", "dist"], "Warped distance"),
        (&["level", "fibers"], "fibre"),
        (&["classical", "margulis"], "Margulis graph M_n"),
        (&["classical", "mbar"], "M-bar_n"),
        (&["classical", "gg"], "Gabber-Galil"),
        (&["classical", "schreier"], "Schreier graph"),
        (&["classical", "selberg"], "SL2(Z_n)"),
        (&["spectral", "cheeger"], "Cheeger constant"),
        (&["spectral", "lambda2"], "normalized Laplacian"),
        (&["spectral", "scan"], "warped cone"),
        (&["spectral", "z2check"], "Z^2"),
        (&["pi1", "h1"], "homology"),
        (&["pi1", "trivialize"], "Tietze"),
        (&["pi1", "contract"], "r-homotopy"),
    ];
    for (path, word) in cases {
        let mut args = path.to_vec();
        args.push("--help");
        let text = ok(&args);
        assert!(text.contains(word), "{path:?} help lacks `{word}`");
    }
    assert!(ok(&["pi1", "complex", "--help"]).contains("Scale-r complex"));
    assert!(ok(&["export", "--help"]).contains("warped-cone level"));
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{}: {e}", dir.join(name).display()))
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let commands: [(&[&str], &[&str]); 6] = [
        (&["spectral", "scan", "--staircase", "2", "--k", "2", "--levels", "4,8,16"], &["scan.csv"]),
        (&["spectral", "scan", "--schreier", "--levels", "3,5,8"], &["scan.csv"]),
        (&["spectral", "z2check", "--random", "500", "--k", "3", "--seed", "11"], &["z2check.csv"]),
        (&["level", "fibers", "--staircase", "2", "--k", "2", "--levels", "4,8,16"], &["fibers.csv", "fiber_points.csv"]),
        (&["spectral", "lambda2", "--family", "selberg:7:1"], &["lambda2.csv"]),
        (&["pi1", "h1", "--staircase", "2", "--k", "2", "--t", "4", "--r", "1"], &["h1.csv"]),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (i, (args, files)) in commands.iter().enumerate() {
        let mut outs = Vec::new();
        for threads in ["1", "4", "8"] {
            let out = dir.path().join(format!("c{i}-t{threads}"));
            let mut a = vec!["--threads", threads, "--out", out.to_str().unwrap()];
            a.extend_from_slice(args);
            ok(&a);
            outs.push(out);
        }
        for f in *files {
            let first = read(&outs[0], f);
            assert!(!first.is_empty());
            for o in &outs[1..] {
                assert_eq!(read(o, f), first, "{args:?} {f}");
            }
        }
    }
}

#[test]
fn manifest_rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let datum = dir.path().join("z3.json");
    std::fs::write(&datum, r#"{"m": 3, "sigma": [1, 0, 2], "tau": [0, 2, 1]}"#).unwrap();
    ok(&[
        "--threads", "2", "--out", a.to_str().unwrap(),
        "spectral", "scan", "--datum", datum.to_str().unwrap(), "--k", "2", "--levels", "4,6", "--format", "svg",
    ]);
    let manifest: serde_json::Value = serde_json::from_slice(&read(&a, "manifest.json")).unwrap();
    assert_eq!(manifest["schema"], "origami-lab.manifest/1");
    assert_eq!(manifest["command"], "spectral scan");
    assert_eq!(manifest["threads"], 2);
    assert!(manifest["inputs"][datum.to_str().unwrap()].as_str().unwrap().len() == 64);
    assert!(manifest["outputs"]["scan.csv"].is_string());
    assert!(manifest["outputs"]["scan.svg"].is_string());
    assert!(manifest["wall_time_seconds"].as_f64().unwrap() >= 0.0);
    for threads in ["1", "4", "8"] {
        let b = dir.path().join(format!("rerun{threads}"));
        let text = ok(&[
            "--threads", threads, "--out", b.to_str().unwrap(),
            "rerun", "--manifest", a.join("manifest.json").to_str().unwrap(),
        ]);
        assert!(text.starts_with("identical: 2 outputs"), "{text}");
        assert_eq!(read(&a, "scan.csv"), read(&b, "scan.csv"));
    }
    std::fs::write(&datum, r#"{"m": 3, "sigma": [1, 0, 2], "tau": [2, 1, 0]}"#).unwrap();
    let o = run(&["rerun", "--manifest", a.join("manifest.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("ManifestMismatch"));
}

#[test]
fn cached_levels_match_fresh_builds() {
    let cache = tempfile::tempdir().unwrap();
    let args = ["level", "build", "--staircase", "2", "--k", "2", "--t", "16"];
    let fresh = ok(&args);
    let cached = |args: &[&str]| {
        let o = bin().env("ORIGAMI_LAB_CACHE", cache.path()).args(args).output().unwrap();
        assert!(o.status.success());
        stdout(&o)
    };
    assert_eq!(cached(&args), fresh);
    assert_eq!(std::fs::read_dir(cache.path()).unwrap().count(), 1);
    assert_eq!(cached(&args), fresh);
    let h1 = ["pi1", "h1", "--staircase", "2", "--k", "2", "--t", "16", "--r", "2"];
    assert_eq!(cached(&h1), ok(&h1));
    let control = ["level", "build", "--staircase", "2", "--t", "16", "--control"];
    assert_eq!(cached(&control), ok(&control));
    assert_eq!(std::fs::read_dir(cache.path()).unwrap().count(), 2);
}

#[test]
fn edge_lists_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["--out", dir.path().to_str().unwrap(), "classical", "schreier", "--n", "5"]);
    let from_file = ok(&["spectral", "lambda2", "--graph", dir.path().join("schreier.edges").to_str().unwrap()]);
    assert_eq!(from_file, ok(&["spectral", "lambda2", "--family", "schreier:5"]));
    let lvl = dir.path().join("lvl");
    ok(&["--out", lvl.to_str().unwrap(), "level", "build", "--staircase", "2", "--k", "2", "--t", "8"]);
    let from_level = ok(&["spectral", "lambda2", "--graph", lvl.join("level.edges").to_str().unwrap()]);
    assert_eq!(from_level, ok(&["spectral", "lambda2", "--family", "staircase:2:2:8"]));
}

#[test]
fn export_writes_every_format() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["--out", dir.path().to_str().unwrap(), "export", "--staircase", "2", "--k", "2", "--t", "4"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("manifest.json"));
    for f in ["datum.json", "grid.csv", "level.edges", "vertices.csv", "level.dot", "manifest.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let grid = String::from_utf8(read(dir.path(), "grid.csv")).unwrap();
    assert_eq!(grid.lines().count(), 1 + 3 * 16 - 2);
}

#[test]
fn homotopy_commands_report_results() {
    assert_eq!(ok(&["pi1", "h1", "--torus", "--t", "8", "--r", "1", "--control"]), "H1 = Z^2\n");
    let t = ok(&["pi1", "trivialize", "--staircase", "2", "--k", "2", "--t", "4", "--r", "2"]);
    assert!(t.starts_with("Trivial:") && t.contains("certificate verified"), "{t}");
    let c = ok(&["pi1", "contract", "--staircase", "2", "--k", "2", "--t", "8", "--r", "2", "--side", "1:left"]);
    assert!(c.starts_with("Contracted:"), "{c}");
    let u = ok(&["pi1", "contract", "--torus", "--control", "--t", "6", "--r", "1", "--side", "0:bottom", "--budget", "2000"]);
    assert!(u.starts_with("Unknown:"), "{u}");
    let o = run(&["pi1", "contract", "--torus", "--t", "6", "--r", "1", "--path", "0:0:0;0:1/2:1/2;0:0:0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotAnRLoop"));
}

#[test]
fn classical_edge_lists() {
    let m = ok(&["classical", "margulis", "--n", "2"]);
    assert!(m.starts_with("# n=2 transforms=5\n"));
    assert_eq!(m.lines().count(), 1 + 4 * 5);
    assert!(m.contains("L:0,1 R:1,0 T4") || m.contains("L:0,1 R:1,0"));
    let s = ok(&["classical", "selberg", "--n", "5", "--k", "1"]);
    assert!(s.starts_with("# vertices=120 edges=240\n"));
}
