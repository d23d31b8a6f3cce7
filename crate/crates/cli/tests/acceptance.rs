//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relsing::poly::parse_polynomial;
use relsing::PolyRing;
use relsing_testkit::suite;
use serde_json::Value;

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Runs the binary with JSON output and returns the result payload.
fn relsing(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_relsing"))
        .args(args)
        .args(["--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "`relsing {}` exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    let record: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok(record["result"].clone())
}

/// Collected checks of one criterion.
struct Criterion {
    checks: Vec<(bool, String)>,
}

impl Criterion {
    fn new() -> Self {
        Criterion { checks: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.checks.push((ok, what.into()));
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        let ok = got == want;
        let msg = if ok {
            format!("{what} = {got:?}")
        } else {
            format!("{what} = {got:?}, expected {want:?}")
        };
        self.check(ok, msg);
    }
}

type Body = fn(&mut Criterion) -> Result<(), String>;

/// Runs one criterion and prints its verdict line.
fn criterion(number: u32, title: &str, limit_secs: f64, body: Body) -> bool {
    let mut c = Criterion::new();
    let start = Instant::now();
    let res = body(&mut c);
    let secs = start.elapsed().as_secs_f64();
    if let Err(e) = res {
        c.check(false, format!("error: {e}"));
    }
    c.check(
        secs < limit_secs,
        format!("{secs:.2} s (limit {limit_secs} s)"),
    );
    let ok = c.checks.iter().all(|(ok, _)| *ok);
    let failed: Vec<&str> = c
        .checks
        .iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, m)| m.as_str())
        .collect();
    let passed: Vec<&str> = c
        .checks
        .iter()
        .filter(|(ok, _)| *ok)
        .map(|(_, m)| m.as_str())
        .collect();
    if ok {
        println!("PASS criterion {number}: {title}: {}", passed.join("; "));
    } else {
        println!("FAIL criterion {number}: {title}: {}", failed.join("; "));
        println!(
            "     criterion {number} also checked: {}",
            passed.join("; ")
        );
    }
    ok
}

fn note(number: u32, title: &str, body: Body) {
    let mut c = Criterion::new();
    if let Err(e) = body(&mut c) {
        c.check(false, format!("error: {e}"));
    }
    let all: Vec<String> = c
        .checks
        .iter()
        .map(|(ok, m)| format!("{}{m}", if *ok { "" } else { "MISMATCH " }))
        .collect();
    println!("NOTE criterion {number}, {title}: {}", all.join("; "));
}

fn as_u64(v: &Value) -> Option<u64> {
    v.as_u64()
}

fn values(samples: &Value) -> Vec<Option<u64>> {
    samples
        .as_array()
        .map(|a| a.iter().map(|r| as_u64(&r["value"])).collect())
        .unwrap_or_default()
}

fn status(report: &Value, condition: &str) -> String {
    report["conditions"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["condition"] == condition))
        .map(|c| c["status"].as_str().unwrap_or("").to_string())
        .unwrap_or_default()
}

fn smooth_surface(c: &mut Criterion) -> Result<(), String> {
    let file = corpus("smooth_surface.sing");
    let base = relsing(&["mu-br", &file, "--f", "f", "--variety", "V"])?;
    c.eq("mu_BR(V, f)", as_u64(&base["value"]), Some(3));
    let origin = relsing(&[
        "mu-br",
        &file,
        "--f",
        "F",
        "--at",
        "t=1/2",
        "--variety",
        "V",
    ])?;
    c.eq(
        "mu_BR at origin, t = 1/2",
        as_u64(&origin["value"]),
        Some(1),
    );
    let moved = relsing(&[
        "mu-br",
        &file,
        "--f",
        "F",
        "--at",
        "t=1/2",
        "--variety",
        "V",
        "--point",
        "P",
    ])?;
    c.eq(
        "mu_BR at (-1/4,0,0,0), t = 1/2",
        as_u64(&moved["value"]),
        Some(1),
    );
    let split = relsing(&[
        "split-check",
        &file,
        "--deform",
        "F",
        "--variety",
        "V",
        "--t0",
        "1/2",
        "--point",
        "P",
    ])?;
    c.eq("split", split["split"].as_bool(), Some(true));
    c.eq("conservation sum", as_u64(&split["accounted_sum"]), Some(2));
    c.eq("base value", as_u64(&split["base_value"]), Some(3));
    c.eq("conserved", split["conserved"].as_bool(), Some(false));
    Ok(())
}

const CUSP_ARCS: [&str; 6] = [
    "below",
    "axis",
    "above",
    "balanced",
    "moving",
    "balanced_moving",
];

fn cusp_family(c: &mut Criterion, expected: impl Fn(u64) -> u64) -> Result<(), String> {
    for n in [4u64, 5, 6] {
        let file = corpus(&format!("cusp_n{n}.sing"));
        let mu = relsing(&[
            "mu-br",
            &file,
            "--f",
            "F",
            "--variety",
            "V",
            "--samples",
            "0,1/7,1/3",
        ])?;
        let want = Some(expected(n));
        c.eq(
            &format!("n={n}: mu_BR over t in {{0,1/7,1/3}}"),
            values(&mu["samples"]),
            vec![want; 3],
        );
        let split = relsing(&[
            "split-check",
            &file,
            "--deform",
            "F",
            "--variety",
            "V",
            "--t0",
            "1/7",
        ])?;
        c.eq(
            &format!("n={n}: split"),
            split["split"].as_bool(),
            Some(false),
        );
        let mut args = vec![
            "family-check",
            &file,
            "--deform",
            "F",
            "--variety",
            "V",
            "--samples",
            "0,1/7,1/3",
        ];
        for a in CUSP_ARCS {
            args.extend(["--arc", a]);
        }
        let report = relsing(&args)?;
        let statuses: Vec<String> = (1..=6)
            .map(|i| status(&report, &format!("{i}_r")))
            .collect();
        let want: Vec<String> = [
            "holds",
            "consistent",
            "consistent",
            "consistent",
            "holds",
            "holds",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        c.eq(&format!("n={n}: conditions 1_r..6_r"), statuses, want);
    }
    Ok(())
}

fn cusp_stated(c: &mut Criterion) -> Result<(), String> {
    cusp_family(c, |n| n + 3)
}

fn cusp_computed(c: &mut Criterion) -> Result<(), String> {
    cusp_family(c, |n| n + 4)
}

fn swallowtail(c: &mut Criterion) -> Result<(), String> {
    let file = corpus("swallowtail.sing");
    let mu = relsing(&[
        "mu-br",
        &file,
        "--f",
        "F",
        "--variety",
        "V",
        "--samples",
        "S",
    ])?;
    c.eq(
        "mu_BR over samples",
        values(&mu["samples"]),
        vec![Some(5); 3],
    );
    c.eq("constant", mu["constant"].as_bool(), Some(true));
    let report = relsing(&[
        "family-check",
        &file,
        "--deform",
        "F",
        "--variety",
        "V",
        "--samples",
        "S",
        "--arc",
        "g",
    ])?;
    c.eq("2_r", status(&report, "2_r"), "refuted".into());
    c.eq(
        "2_r witness",
        report["conditions"][1]["witness"].as_str(),
        Some("g"),
    );
    c.eq("3_r", status(&report, "3_r"), "consistent".into());
    let arc = &report["arcs"][0];
    c.eq("arc g: strict", arc["strict"].as_str(), Some("fails"));
    c.eq("arc g: weak", arc["weak"].as_str(), Some("holds"));
    Ok(())
}

fn weighted_surface(c: &mut Criterion, a: &str, full_report: bool) -> Result<(), String> {
    let file = corpus("weighted_surface.sing");
    let param = format!("a={a}");
    let common = ["--param", param.as_str()];
    let mut args = vec![
        "mu-br",
        &file,
        "--f",
        "F",
        "--variety",
        "V",
        "--samples",
        "S",
    ];
    args.extend(common);
    let mu = relsing(&args)?;
    let shown: Vec<String> = mu["samples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].to_string())
        .collect();
    c.check(
        mu["constant"].as_bool() == Some(true),
        format!("mu_BR constant over samples (values {})", shown.join(", ")),
    );
    let mut args = vec![
        "arc-test",
        &file,
        "--deform",
        "F",
        "--variety",
        "V",
        "--arc",
        "gamma",
    ];
    args.extend(common);
    let arc = relsing(&args)?;
    let row = &arc["arcs"][0];
    c.eq(
        "gamma: weak inequality, hence 4_r",
        row["weak"].as_str(),
        Some("fails"),
    );
    if full_report {
        let mut args = vec![
            "family-check",
            &file,
            "--deform",
            "F",
            "--variety",
            "V",
            "--samples",
            "S",
            "--arc",
            "gamma",
        ];
        args.extend(common);
        let report = relsing(&args)?;
        c.eq("family-check 4_r", status(&report, "4_r"), "refuted".into());
    }
    let mut args = vec!["radical-test", &file, "--deform", "F", "--variety", "V"];
    args.extend(common);
    let rad = relsing(&args)?;
    c.eq(
        "x^2 in radical",
        rad["radical"]["member"].as_bool(),
        Some(true),
    );
    Ok(())
}

fn weighted_stated(c: &mut Criterion) -> Result<(), String> {
    weighted_surface(c, "1", false)
}

fn weighted_regular(c: &mut Criterion) -> Result<(), String> {
    weighted_surface(c, "2", true)
}

fn cusp_quintic(c: &mut Criterion) -> Result<(), String> {
    let file = corpus("cusp_quintic.sing");
    let res = relsing(&[
        "arc-test",
        &file,
        "--deform",
        "F",
        "--variety",
        "V",
        "--arc",
        "alpha",
    ])?;
    let ring: Arc<PolyRing> = PolyRing::new(&["x", "y"])
        .unwrap()
        .with_deformation_parameter()
        .unwrap();
    let parse =
        |s: &str| parse_polynomial::<relsing::Rational>(s, &ring).map_err(|e| e.to_string());
    let got = res["ideal"]
        .as_array()
        .ok_or("no ideal")?
        .iter()
        .map(|g| parse(g.as_str().unwrap_or("")))
        .collect::<Result<Vec<_>, _>>()?;
    let want = vec![
        parse("10*x^5 + 6*y^2 + 10*t*x^5")?,
        parse("10*x^4*y + 6*x^2*y + 10*t*x^4*y")?,
    ];
    c.check(got == want, format!("generators {}", res["ideal"]));
    let row = &res["arcs"][0];
    c.eq("nu(dF/dt o alpha)", as_u64(&row["h_valuation"]), Some(5));
    c.eq("inf", as_u64(&row["infimum"]), Some(5));
    c.eq("weak", row["weak"].as_str(), Some("holds"));
    c.eq("strict", row["strict"].as_str(), Some("fails"));
    Ok(())
}

fn brieskorn(c: &mut Criterion) -> Result<(), String> {
    let file = corpus("brieskorn.sing");
    let mu = relsing(&["milnor", &file, "--f", "Phi"])?;
    c.eq("mu(Phi)", as_u64(&mu["value"]), Some(14 * 9 * 5));
    for t in ["1/5", "1/3"] {
        let at = format!("t={t}");
        let le = relsing(&["le-number", &file, "--phi", "Phi", "--f", "ft", "--at", &at])?;
        c.eq(&format!("mu_L(f_{t})"), as_u64(&le["value"]), Some(126));
    }
    let m = relsing(&["multiplicity", &file, "--f", "ft", "--samples", "0,1/5"])?;
    c.eq(
        "m(f_0), m(f_1/5)",
        values(&m["samples"]),
        vec![Some(2), Some(1)],
    );
    c.eq(
        "multiplicity constant",
        m["constant"].as_bool(),
        Some(false),
    );
    let br = relsing(&["mu-br", &file, "--f", "ft", "--variety", "V"])?;
    c.eq("mu_BR(f_0)", br["value"].as_str(), Some("infinite"));
    Ok(())
}

fn additivity_identity(c: &mut Criterion, stated: bool) -> Result<(), String> {
    for n in [4u64, 5, 6] {
        if stated && n != 4 {
            continue;
        }
        let file = corpus(&format!("cusp_n{n}.sing"));
        let br = as_u64(&relsing(&["mu-br", &file, "--f", "F", "--variety", "V"])?["value"]);
        let mu = as_u64(&relsing(&["milnor", &file, "--f", "F"])?["value"]);
        let le = as_u64(&relsing(&["le-number", &file, "--phi", "Phi", "--f", "F"])?["value"]);
        let (Some(br), Some(mu), Some(le)) = (br, mu, le) else {
            return Err(format!("n={n}: infinite invariant"));
        };
        c.check(
            br == mu + le,
            format!("n={n}: mu_BR {br} = mu {mu} + mu_L {le}"),
        );
        if stated {
            c.eq("(mu_BR, mu, mu_L) for n=4", (br, mu, le), (7, 3, 4));
        }
    }
    Ok(())
}

fn additivity_stated(c: &mut Criterion) -> Result<(), String> {
    additivity_identity(c, true)
}

fn additivity_all(c: &mut Criterion) -> Result<(), String> {
    additivity_identity(c, false)
}

fn multiplicity_constancy(c: &mut Criterion) -> Result<(), String> {
    let files = [
        "cusp_n4.sing",
        "cusp_n5.sing",
        "cusp_n6.sing",
        "swallowtail.sing",
        "weighted_surface.sing",
    ];
    for name in files {
        let file = corpus(name);
        let qh_v = relsing(&["quasihomog", &file, "--f", "Phi", "--weights", "w"])?;
        let qh_f = relsing(&["quasihomog", &file, "--f", "F", "--weights", "wf"])?;
        let quasi = qh_v["quasihomogeneous"].as_bool() == Some(true)
            && qh_f["quasihomogeneous"].as_bool() == Some(true);
        c.check(quasi, format!("{name}: Phi and f_0 quasihomogeneous"));
        let mu = relsing(&[
            "mu-br",
            &file,
            "--f",
            "F",
            "--variety",
            "V",
            "--samples",
            "S",
        ])?;
        c.check(
            mu["constant"].as_bool() == Some(true),
            format!("{name}: mu_BR constant"),
        );
        let m = relsing(&["multiplicity", &file, "--f", "F", "--samples", "S"])?;
        let ms = values(&m["samples"]);
        c.check(
            m["constant"].as_bool() == Some(true),
            format!("{name}: m(f_t) = {ms:?}"),
        );
    }
    Ok(())
}

fn seeded(check: SeededCheck, count: u64, salt: u64) -> Result<u64, String> {
    for i in 0..count {
        let seed = salt * 1_000_003 + i;
        check(&mut ChaCha8Rng::seed_from_u64(seed)).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok(count)
}

type SeededCheck = fn(&mut ChaCha8Rng) -> Result<(), String>;

fn property_suite(c: &mut Criterion) -> Result<(), String> {
    let runs: [(&str, SeededCheck, u64); 4] = [
        (
            "quotient dimension vs Macaulay oracle",
            suite::quotient_dimension,
            100,
        ),
        (
            "Milnor number under linear coordinate changes",
            suite::milnor_invariance,
            20,
        ),
        ("normal-form laws", suite::normal_form_laws, 200),
        (
            "mu_BR with coordinate fields equals mu",
            suite::bruce_roberts_coordinate_fields,
            30,
        ),
    ];
    for (salt, (name, check, count)) in runs.into_iter().enumerate() {
        match seeded(check, count, salt as u64 + 1) {
            Ok(n) => c.check(true, format!("{name}: {n} instances")),
            Err(e) => c.check(false, format!("{name}: {e}")),
        }
    }
    Ok(())
}

fn main() {
    let results = [
        criterion(1, "smooth surface in four-space", 5.0, smooth_surface),
        criterion(2, "cusp family, mu_BR = n+3", 10.0, cusp_stated),
        criterion(3, "swallowtail family", 10.0, swallowtail),
        criterion(4, "weighted surface family at a=1", 10.0, weighted_stated),
        criterion(5, "cusp with quintic family", 2.0, cusp_quintic),
        criterion(6, "Brieskorn surface with x*y + t*z", 60.0, brieskorn),
        criterion(
            7,
            "mu_BR = mu + mu_L, 7 = 3 + 4 for n=4",
            5.0,
            additivity_stated,
        ),
        criterion(8, "multiplicity constancy", 5.0, multiplicity_constancy),
        criterion(9, "property suite", 60.0, property_suite),
    ];
    note(2, "computed values n+4", cusp_computed);
    note(4, "a=2", weighted_regular);
    note(7, "identity on n=4,5,6", additivity_all);
    let passed = results.iter().filter(|ok| **ok).count();
    println!("acceptance: {passed} of {} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
