use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_packing-cell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses an OFF file into (vertex count, face count, edge count, face sizes).
fn parse_off(text: &str) -> (usize, usize, usize, Vec<usize>) {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("OFF"));
    let counts: Vec<usize> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    let (v, f, e) = (counts[0], counts[1], counts[2]);
    for _ in 0..v {
        let coords: Vec<f64> = lines
            .next()
            .unwrap()
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(coords.len(), 3);
    }
    let mut sizes = Vec::new();
    let mut directed = 0;
    for _ in 0..f {
        let idx: Vec<usize> = lines
            .next()
            .unwrap()
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(idx[0], idx.len() - 1);
        assert!(idx[1..].iter().all(|&i| i < v));
        sizes.push(idx[0]);
        directed += idx[0];
    }
    assert_eq!(lines.next(), None);
    assert_eq!(directed, 2 * e);
    assert_eq!(v as i64 - e as i64 + f as i64, 2);
    (v, f, e, sizes)
}

#[test]
fn report_json_is_stable_and_passes() {
    let a = run(&["report"]);
    let b = run(&["report"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(
        v["quantities"]["icosahedral_tetrahedron_volume"]["value"],
        1.01446
    );
    assert_eq!(v["quantities"]["fcc_density"]["value"], 0.74048);
    assert_eq!(v["verdict"]["holds"], true);
    for (_, row) in v["quantities"].as_object().unwrap() {
        assert!(row["abs_error"].as_f64().unwrap() < 1e-4);
    }
}

#[test]
fn report_pretty_rows() {
    let o = run(&["report", "--pretty"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("icosahedral_tetrahedron_volume: 1.01446"));
    assert!(s.contains("fcc_density: 0.74048"));
    assert!(s.contains("dodecahedral_density: 0.754697"));
}

#[test]
fn report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&["report", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read(&path).unwrap(), run(&["report"]).stdout);
}

/// Source arguments, expected (V, F, E), facet class and its count.
type Case<'a> = (&'a [&'a str], (usize, usize, usize), &'a str, usize);

#[test]
fn voronoi_exports() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [Case; 4] = [
        (&["fcc"], (14, 12, 24), "rhombus", 12),
        (&["sc"], (8, 6, 12), "rhombus", 6),
        (
            &["--config", "icosahedral"],
            (20, 12, 30),
            "regular-pentagon",
            12,
        ),
        (
            &["--basis", "2", "0", "0", "0", "2", "0", "0", "0", "2"],
            (8, 6, 12),
            "rhombus",
            6,
        ),
    ];
    for (i, (src, counts, class, n)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("cell{i}.off"));
        let mut args = vec!["voronoi"];
        args.extend_from_slice(src);
        args.extend(["--out", path.to_str().unwrap(), "--format", "off"]);
        let o = run(&args);
        assert!(
            o.status.success(),
            "{:?}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(o.stdout.is_empty());
        let (v, f, e, _) = parse_off(&fs::read_to_string(&path).unwrap());
        assert_eq!((v, f, e), *counts);
        let side: serde_json::Value = serde_json::from_str(
            &fs::read_to_string(dir.path().join(format!("cell{i}.off.json"))).unwrap(),
        )
        .unwrap();
        assert_eq!(side["facet_classes"][class], *n as u64);
        assert!((side["inradius"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn voronoi_volume_in_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ico.off");
    assert!(run(&[
        "voronoi",
        "--config",
        "icosahedral",
        "--out",
        path.to_str().unwrap()
    ])
    .status
    .success());
    let side: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("ico.off.json")).unwrap())
            .unwrap();
    assert!((side["volume"].as_f64().unwrap() - 5.550292).abs() < 1e-6);
}

#[test]
fn voronoi_error_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.off");
    let out = out.to_str().unwrap();
    let singular = run(&[
        "voronoi", "--basis", "2", "0", "0", "4", "0", "0", "0", "0", "2", "--out", out,
    ]);
    assert_eq!(singular.status.code(), Some(2));
    assert!(singular.stdout.is_empty());
    assert!(!singular.stderr.is_empty());
    let overlap = run(&[
        "voronoi", "--basis", "1", "0", "0", "0", "2", "0", "0", "0", "2", "--out", out,
    ]);
    assert_eq!(overlap.status.code(), Some(2));
    assert_eq!(
        run(&["voronoi", "hcp", "--out", out]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["voronoi", "fcc"]).status.code(), Some(2));
    assert_eq!(
        run(&["voronoi", "fcc", "--config", "icosahedral", "--out", out])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn density_lines() {
    let line = |name: &str| stdout(&run(&["density", name]));
    assert!(line("fcc").starts_with("density 0.740480 det 5.656854 shortest_vector 2.000000"));
    assert!(line("bcc").starts_with("density 0.680175 "));
    assert!(line("sc").starts_with("density 0.523599 "));
    let o = run(&[
        "density", "--basis", "2", "0", "0", "0", "2", "0", "0", "0", "2", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["density"].as_f64().unwrap() - std::f64::consts::PI / 6.0).abs() < 1e-12);
    let bad = run(&[
        "density", "--basis", "1", "0", "0", "0", "1", "0", "0", "0", "1",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("overlap"));
}

#[test]
fn brillouin_exports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bz.off");
    let p = path.to_str().unwrap();
    assert!(run(&["brillouin", "bcc", "--out", p]).status.success());
    let (v, f, e, sizes) = parse_off(&fs::read_to_string(&path).unwrap());
    assert_eq!((v, f, e), (14, 12, 24));
    assert!(sizes.iter().all(|&s| s == 4));

    assert!(run(&["brillouin", "fcc", "--out", p]).status.success());
    let (_, f, _, sizes) = parse_off(&fs::read_to_string(&path).unwrap());
    assert_eq!(f, 14);
    assert_eq!(sizes.iter().filter(|&&s| s == 6).count(), 8);

    assert!(run(&["brillouin", "sc", "--two-pi", "--out", p])
        .status
        .success());
    let side: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("bz.off.json")).unwrap()).unwrap();
    assert!((side["volume"].as_f64().unwrap() - std::f64::consts::PI.powi(3)).abs() < 1e-9);
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "--samples", "20000", "--seed", "42"]);
    let b = run(&["verify", "--samples", "20000", "--seed", "42"]);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("0 failed"));
}

#[test]
fn verify_rejects_few_samples() {
    let o = run(&["verify", "--samples", "9999"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}
