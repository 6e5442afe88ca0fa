use std::io::Write;
use std::path::PathBuf;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn geotopo(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("geotopo").chain(args.iter().copied());
    let code = geotopo_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = geotopo(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn csv_value(out: &str, row: &str, col: &str) -> f64 {
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let j = header.iter().position(|h| *h == col).unwrap();
    let line = lines.find(|l| l.split(',').next() == Some(row)).unwrap();
    line.split(',').nth(j).unwrap().parse().unwrap()
}

#[test]
fn quarter_meridian() {
    let out = ok(&["arc", "--unit", "deg", "--phi", "90d"]);
    assert_eq!(out, "phi,beta_m,order,unit\n90.000000000,10001965.7292,4,deg\n");
}

#[test]
fn arc_rejects_latitude_past_the_pole() {
    let (code, _, err) = geotopo(&["arc", "--phi", "91d"]);
    assert_eq!(code, 1);
    assert!(err.contains("latitude"));
}

#[test]
fn convert_round_trip() {
    let out = ok(&["convert", "--to", "geodetic", "--unit", "deg", "--method", "finite", "4300244.860", "1062094.681", "4574775.629"]);
    assert_eq!(csv_value(&out, "point", "phi"), 46.116847574);
    let line = out.lines().nth(1).unwrap();
    let f: Vec<&str> = line.split(',').collect();
    let back = ok(&["convert", "--to", "cartesian", "--unit", "deg", f[1], f[2], f[3]]);
    assert!((csv_value(&back, "point", "X") - 4300244.860).abs() < 1e-3, "{back}");
}

#[test]
fn json_output_is_an_object_of_tables() {
    let out = ok(&["--json", "arc", "--phi", "50"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["meridian_arc"][0]["beta_m"], 4984944.3779);
}

#[test]
fn output_is_byte_stable() {
    let args = ["adjust-triangle", "--input", &data("tri.csv")];
    let first = ok(&args);
    for _ in 0..3 {
        assert_eq!(ok(&args), first);
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(geotopo(&["bogus"]).0, 2);
    assert_eq!(geotopo(&["arc"]).0, 2);
    assert_eq!(geotopo(&["convert", "--to", "nowhere", "1", "2", "3"]).0, 2);
    assert_eq!(geotopo(&["fixtures", "show", "no.such.case"]).0, 2);
    assert_eq!(geotopo(&["--help"]).0, 0);
}

#[test]
fn unreadable_input_is_a_usage_error() {
    let (code, _, err) = geotopo(&["adjust-level", "--input", "/nonexistent/lev.csv", "--fixed", "A=0"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn singular_network_exits_1() {
    let (code, _, err) = geotopo(&["adjust-level", "--input", &data("lev.csv"), "--fixed", "Z=0"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn leveling_network() {
    let out = ok(&["adjust-level", "--input", &data("lev.csv"), "--fixed", "A=0", "--precision", "2"]);
    assert_eq!(csv_value(&out, "C", "h_m"), 1.8774);
    assert_eq!(csv_value(&out, "D", "h_m"), 3.8374);
    assert_eq!(csv_value(&out, "B", "h_m"), 0.3198);
}

#[test]
fn triangle_closes_to_a_half_turn() {
    let out = ok(&["adjust-triangle", "--input", &data("tri.csv")]);
    let sum: f64 = ["A", "B", "C"].iter().map(|k| csv_value(&out, k, "adjusted")).sum();
    assert!((sum - 200.0).abs() < 1e-8, "{sum}");
}

#[test]
fn direction_methods_agree() {
    let run = |m: &str| ok(&["adjust-directions", "--input", &data("dir.csv"), "--sigma", "1dmgr", "--method", m]);
    let (c, p) = (run("condition"), run("parametric"));
    let adjusted = |out: &str| -> Vec<f64> {
        out.lines().skip(1).take_while(|l| !l.is_empty()).map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect()
    };
    let (a, b) = (adjusted(&c), adjusted(&p));
    assert_eq!(a.len(), 10);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-8, "{x} {y}");
    }
}

#[test]
fn datum_fit_then_apply() {
    let fit = ok(&["fit-datum", "--input", &data("common.csv"), "--residuals"]);
    assert!(csv_value(&fit, "rms_m", "value") < 0.005);
    assert!(fit.contains("name,vx_m,vy_m,vz_m"));
}

#[test]
fn custom_ellipsoid_registry() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "name = \"ball\"\na = 1000.0\ne2 = 0.0").unwrap();
    let path = f.path().display().to_string();
    let out = ok(&["arc", "--ellipsoids", &path, "--ell", "ball", "--unit", "rad", "--phi", "1rad"]);
    assert_eq!(csv_value(&out, "1.00000000000", "beta_m"), 1000.0);
}

#[test]
fn fixture_run_single_case() {
    let (code, out, _) = geotopo(&["fixtures", "run", "utm.p1.pointA"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("2 checks, 2 passed, 0 failed\n"), "{out}");
}

#[test]
fn fixtures_list_covers_the_golden_file() {
    let out = ok(&["fixtures", "list"]);
    assert!(out.lines().count() > 40);
}
