use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

fn trimoduli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimoduli"))
        .args(args)
        .output()
        .expect("spawn trimoduli")
}

fn stdout_of(args: &[&str]) -> String {
    let out = trimoduli(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Brute-force census of `[-n, n]^2`: reduced sorted squared sides mapped
/// to the number of vertex triples realizing them.
fn brute_census(n: i64) -> BTreeMap<[u64; 3], u64> {
    let pts: Vec<(i64, i64)> = (-n..=n)
        .flat_map(|x| (-n..=n).map(move |y| (x, y)))
        .collect();
    let d2 = |p: (i64, i64), q: (i64, i64)| ((p.0 - q.0).pow(2) + (p.1 - q.1).pow(2)) as u64;
    let mut out = BTreeMap::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let (a, b, c) = (pts[i], pts[j], pts[k]);
                if (b.0 - a.0) * (c.1 - a.1) == (b.1 - a.1) * (c.0 - a.0) {
                    continue;
                }
                let mut s = [d2(a, b), d2(b, c), d2(a, c)];
                s.sort_unstable();
                let g = gcd(gcd(s[0], s[1]), s[2]);
                *out.entry([s[0] / g, s[1] / g, s[2] / g]).or_insert(0) += 1;
            }
        }
    }
    out
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# schema: trimoduli."));
    lines
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn enumerate_csv_matches_brute_force() {
    let text = stdout_of(&["enumerate", "--n", "3", "--format", "csv"]);
    let rows = csv_rows(&text);
    assert_eq!(rows[0].join(","), "p,q,r,weight,angle_class,a,b,c");
    let oracle = brute_census(3);
    assert_eq!(rows.len() - 1, oracle.len());
    let mut prev: Option<[u64; 3]> = None;
    for row in &rows[1..] {
        let key = [0, 1, 2].map(|i| row[i].parse::<u64>().unwrap());
        assert!(prev.map_or(true, |p| p < key), "rows not sorted");
        prev = Some(key);
        assert_eq!(row[3].parse::<u64>().unwrap(), oracle[&key]);
        let (p, q, r) = (key[0], key[1], key[2]);
        let class = match r.cmp(&(p + q)) {
            std::cmp::Ordering::Less => "acute",
            std::cmp::Ordering::Equal => "right",
            std::cmp::Ordering::Greater => "obtuse",
        };
        assert_eq!(row[4], class);
        let sides = key.map(|v| (v as f64).sqrt());
        let half = sides.iter().sum::<f64>() / 2.0;
        for i in 0..3 {
            let got: f64 = row[5 + i].parse().unwrap();
            assert!((got - sides[i] / half).abs() < 1e-12);
        }
    }
}

#[test]
fn curve_json_recounts() {
    let text = stdout_of(&["curve", "--n-max", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let points = v.as_array().unwrap();
    assert_eq!(points.len(), 9);
    for (i, p) in points.iter().enumerate() {
        let obj = p.as_object().unwrap();
        for field in [
            "n",
            "weighted_fraction",
            "distinct_fraction",
            "total_weight",
            "obtuse_weight",
            "distinct_count",
            "obtuse_distinct_count",
        ] {
            assert!(obj.contains_key(field), "missing {field}");
        }
        assert_eq!(obj["n"].as_u64().unwrap(), i as u64 + 2);
        let total = obj["total_weight"].as_u64().unwrap() as f64;
        let obtuse = obj["obtuse_weight"].as_u64().unwrap() as f64;
        let count = obj["distinct_count"].as_u64().unwrap() as f64;
        let obtuse_count = obj["obtuse_distinct_count"].as_u64().unwrap() as f64;
        assert_eq!(obj["weighted_fraction"].as_f64().unwrap(), obtuse / total);
        assert_eq!(obj["distinct_fraction"].as_f64().unwrap(), obtuse_count / count);
    }
    // Recount the small squares from scratch.
    for n in 2..=4 {
        let oracle = brute_census(n);
        let total: u64 = oracle.values().sum();
        let obtuse: u64 = oracle
            .iter()
            .filter(|(k, _)| k[2] > k[0] + k[1])
            .map(|(_, w)| w)
            .sum();
        let obj = &points[n as usize - 2];
        assert_eq!(obj["total_weight"].as_u64().unwrap(), total);
        assert_eq!(obj["obtuse_weight"].as_u64().unwrap(), obtuse);
        assert_eq!(obj["distinct_count"].as_u64().unwrap(), oracle.len() as u64);
    }
}

#[test]
fn approx_equilateral() {
    let text = stdout_of(&[
        "approx", "--a", "0.6667", "--b", "0.6667", "--c", "0.6667", "--eps", "0.001", "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let verts: Vec<(i64, i64)> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_i64().unwrap(), p[1].as_i64().unwrap()))
        .collect();
    assert_eq!(verts.len(), 3);
    // Recompute the shape from the printed vertices.
    let len = |p: (i64, i64), q: (i64, i64)| (((p.0 - q.0).pow(2) + (p.1 - q.1).pow(2)) as f64).sqrt();
    let mut sides = [
        len(verts[0], verts[1]),
        len(verts[1], verts[2]),
        len(verts[0], verts[2]),
    ];
    sides.sort_by(f64::total_cmp);
    let half = sides.iter().sum::<f64>() / 2.0;
    let third = 2.0 / 3.0;
    let d = sides
        .iter()
        .map(|s| (s / half - third).powi(2))
        .sum::<f64>()
        .sqrt();
    assert!(d < 0.001, "distance {d}");
    assert!(v["distance"].as_f64().unwrap() < 0.001);
}

#[test]
fn golden_outputs() {
    let cases: [(&str, &[&str]); 9] = [
        ("enumerate_n2.csv", &["enumerate", "--n", "2", "--format", "csv"]),
        ("enumerate_n1.json", &["enumerate", "--n", "1", "--format", "json"]),
        ("curve_4.csv", &["curve", "--n-max", "4", "--format", "csv"]),
        ("report_4.json", &["report", "--n", "4", "--format", "json"]),
        (
            "mc_obtuse_1e5.csv",
            &["mc-obtuse", "--samples", "100000", "--seed", "42", "--format", "csv"],
        ),
        (
            "mc_distance_1e5.json",
            &["mc-distance", "--samples", "100000", "--seed", "7", "--format", "json"],
        ),
        (
            "hist_8.csv",
            &["hist", "--samples", "2000", "--bins", "8", "--seed", "1", "--format", "csv"],
        ),
        (
            "approx.json",
            &["approx", "--a", "0.6", "--b", "0.65", "--c", "0.75", "--eps", "0.01", "--format", "json"],
        ),
        ("curve_4.svg", &["plot-curve", "--n-max", "4", "--format", "svg"]),
    ];
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (file, args) in cases {
        let want = std::fs::read_to_string(dir.join(file)).unwrap();
        assert_eq!(stdout_of(args), want, "{file}");
    }
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        &["enumerate", "--n", "6", "--format", "json"][..],
        &["plot-shapes", "--n", "5", "--format", "svg"],
        &["plot-shapes", "--n", "40", "--samples", "500", "--seed", "3", "--format", "svg"],
        &["hist", "--samples", "50000", "--bins", "16", "--format", "json"],
    ] {
        assert_eq!(stdout_of(args), stdout_of(args), "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.csv");
    let printed = stdout_of(&["enumerate", "--n", "2", "--format", "csv"]);
    let out = trimoduli(&[
        "enumerate",
        "--n",
        "2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32, &str); 7] = [
        (&["enumerate"], 2, "usage"),
        (&["frobnicate"], 2, ""),
        (&["enumerate", "--n", "0"], 3, "guard"),
        (&["curve", "--n-max", "65"], 3, "guard"),
        (&["mc-obtuse", "--samples", "10"], 3, "guard"),
        (&["approx", "--a", "0.5", "--b", "0.5", "--c", "1.0", "--eps", "0.01"], 2, ""),
        (&["approx", "--a", "0.6", "--b", "0.65", "--c", "0.75", "--eps", "1e-8"], 3, "guard"),
    ];
    for (args, code, kind) in cases {
        let out = trimoduli(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        if !kind.is_empty() {
            assert!(err.starts_with(&format!("error: {kind}: ")), "{err}");
            assert_eq!(err.trim_end().lines().count(), 1);
        }
    }
}

#[test]
fn thread_cap_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_trimoduli"))
            .args(["mc-distance", "--samples", "300000", "--format", "json"])
            .env("TRIMODULI_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let bad = run("0");
    assert_eq!(bad.status.code(), Some(2));
}
