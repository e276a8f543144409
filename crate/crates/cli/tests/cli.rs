use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_airy-shift"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Column `name` of the first data row of a CSV.
fn field(csv: &str, name: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    row[i].to_string()
}

#[test]
fn u_plus_at_origin_is_ai0_squared() {
    let o = run(&["eval", "u+", "--z", "0", "--z0", "0", "--route", "direct"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let re: f64 = field(&out, "value_re").parse().unwrap();
    let im: f64 = field(&out, "value_im").parse().unwrap();
    assert!((re - 0.126_044_919_047_370_86).abs() < 1e-16, "{re}");
    assert_eq!(im, 0.0);
    assert_eq!(field(&out, "route"), "direct");
    assert_eq!(field(&out, "sector"), "zero");
    // 17 significant digits
    assert_eq!(field(&out, "value_re").split('e').next().unwrap().len(), 18);
}

#[test]
fn contour_route_agrees_with_direct() {
    let args = ["eval", "w-", "--z=-1.2+0.8i", "--z0", "-0.5-1.5i"];
    let c = stdout(&run(&[&args[..], &["--route", "contour"]].concat()));
    let d = stdout(&run(&[&args[..], &["--route", "direct"]].concat()));
    assert_eq!(field(&c, "sector"), "outer");
    for col in ["value_re", "value_im"] {
        let a: f64 = field(&c, col).parse().unwrap();
        let b: f64 = field(&d, col).parse().unwrap();
        assert!((a - b).abs() < 1e-9, "{col}: {a} vs {b}");
    }
}

#[test]
fn difference_vanishes_at_zero_shift() {
    let o = run(&["eval", "diff+", "--z", "1", "--z0", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let re = v[0]["value_re"].as_f64().unwrap();
    let im = v[0]["value_im"].as_f64().unwrap();
    assert!(re.hypot(im) < 1e-12);
    assert_eq!(v[0]["route"], "contour");
}

#[test]
fn negative_shift_on_half_line_is_a_domain_error() {
    let o = run(&["eval", "w-real+", "--x", "0", "--x0", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("negative"));
}

#[test]
fn exit_codes_for_config_io_and_quadrature() {
    assert_eq!(
        run(&["--tol", "1", "eval", "u+", "--z", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["eval", "u+", "--z", "(1,2)"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "--config",
            "/nonexistent/airy.cfg",
            "eval",
            "u+",
            "--z",
            "0"
        ])
        .status
        .code(),
        Some(4)
    );
    let cfg = scratch("bad.cfg");
    std::fs::write(&cfg, "quad_tol = 1e-9\nnot_a_key = 3\n").unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "eval", "u+", "--z", "0"]);
    assert_eq!(o.status.code(), Some(2));

    let cfg = scratch("starved.cfg");
    std::fs::write(
        &cfg,
        "# too few nodes\nnode_ceiling = 1000\nquad_tol = 1e-14\n",
    )
    .unwrap();
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "eval",
        "w+",
        "--z=-3+3i",
        "--z0",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn verify_suites_pass_with_small_grids() {
    for suite in ["ode", "routes", "identities", "contour-relation", "greens"] {
        let o = run(&["verify", suite, "--count", "24"]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        let out = stdout(&o);
        assert!(out.starts_with("suite,index,check,"));
        assert!(out.lines().skip(1).all(|l| l.ends_with(",true")), "{suite}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
    }
}

#[test]
fn verify_fails_below_attainable_tolerance() {
    let cfg = scratch("strict.cfg");
    std::fs::write(&cfg, "identity_tol = 1e-15\n").unwrap();
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "verify",
        "ode",
        "--count",
        "16",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(",false"));
}

#[test]
fn verify_is_deterministic_per_seed() {
    let a = run(&["--seed", "11", "verify", "identities", "--count", "16"]);
    let b = run(&["--seed", "11", "verify", "identities", "--count", "16"]);
    let c = run(&["--seed", "12", "verify", "identities", "--count", "16"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn greens_table_has_fifty_rows_and_is_byte_stable() {
    let p1 = scratch("greens1.csv");
    let p2 = scratch("greens2.csv");
    for p in [&p1, &p2] {
        let o = run(&["table", "greens", "--xi", "-2", "-o", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let a = std::fs::read(&p1).unwrap();
    assert_eq!(a, std::fs::read(&p2).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 51);
    assert_eq!(
        lines[0],
        "index,xi,eta,energy,field,separation,value_re,value_im,abs_err_est"
    );
    let eta = |l: &str| l.split(',').nth(2).unwrap().parse::<f64>().unwrap();
    assert!((eta(lines[1]) - 0.1).abs() < 1e-14);
    assert!((eta(lines[50]) - 5.0).abs() < 1e-14);
}

#[test]
fn product_table_at_zero_shift_reproduces_the_rotated_square() {
    // Ai(z) Ai(w z) on the real line, w = e^{2i pi/3}, from the direct route.
    let contour = scratch("prod_contour.json");
    let direct = scratch("prod_direct.json");
    for (p, route) in [(&contour, "contour"), (&direct, "direct")] {
        let o = run(&[
            "--format",
            "json",
            "table",
            "product",
            "--r1",
            "0",
            "--r2",
            "+",
            "--z0",
            "0",
            "--x-range=-3:3",
            "--count",
            "13",
            "--route",
            route,
            "-o",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let read = |p: &PathBuf| -> serde_json::Value {
        serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
    };
    let (c, d) = (read(&contour), read(&direct));
    assert_eq!(c.as_array().unwrap().len(), 13);
    for (a, b) in c.as_array().unwrap().iter().zip(d.as_array().unwrap()) {
        assert_eq!(a["function"], "product(0,+)");
        assert_eq!(a["sector"], "zero");
        for col in ["value_re", "value_im"] {
            let (x, y) = (a[col].as_f64().unwrap(), b[col].as_f64().unwrap());
            assert!((x - y).abs() < 1e-9, "{a} vs {b}");
        }
    }
}

#[test]
fn product_table_random_grid_follows_the_seed() {
    let paths: Vec<PathBuf> = ["r1.csv", "r2.csv", "r3.csv"]
        .iter()
        .map(|n| scratch(n))
        .collect();
    for (p, seed) in paths.iter().zip(["5", "5", "6"]) {
        let o = run(&[
            "--seed",
            seed,
            "table",
            "product",
            "--z0",
            "1+0.5i",
            "--count",
            "12",
            "-o",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let r: Vec<Vec<u8>> = paths.iter().map(|p| std::fs::read(p).unwrap()).collect();
    assert_eq!(r[0], r[1]);
    assert_ne!(r[0], r[2]);
}

#[test]
fn unwritable_table_path_exits_four() {
    let o = run(&["table", "greens", "-o", "/nonexistent/dir/out.csv"]);
    assert_eq!(o.status.code(), Some(4));
}
