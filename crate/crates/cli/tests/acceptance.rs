//! Acceptance suite. Every criterion prints one PASS/FAIL line with its
//! runtime against the allowed budget; the process fails if any line fails.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use arithdyn::degree_engine::{
    alpha_ratio, canonical_height, canonical_height_with, ks_verdict, Verdict, VerdictConfig,
};
use arithdyn::elliptic::{EllipticCurve, TorsionStatus};
use arithdyn::experiments::{build_disjoint_orbits, find_full_degree_points, orbit_segment, ParamCurve};
use arithdyn::heights::{torus_height, TorusEmbedding, TorusPoint};
use arithdyn::map_zoo::{iterate_orbit, Domain, OrbitOptions, Point, SelfMap};
use arithdyn::ns_calculus::{
    check_pullback, intersect, ruled_solve, spectral_radius, IntMatrix, NSModel, NsError, PullbackAction,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn map(json: &str) -> SelfMap {
    SelfMap::from_json_str(json).unwrap_or_else(|e| panic!("{json}: {e}"))
}

fn pt(f: &SelfMap, s: &str) -> Point {
    Point::parse_for(f.domain(), s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn intersection_table() -> Outcome {
    let fiber = [1, 0];
    let section = [0, 1];
    for e in [0i64, 1, 2, 5] {
        let m = NSModel::ruled(e).map_err(|x| x.to_string())?;
        let got = (
            intersect(&m, &fiber, &fiber).map_err(|x| x.to_string())?,
            intersect(&m, &fiber, &section).map_err(|x| x.to_string())?,
            intersect(&m, &section, &section).map_err(|x| x.to_string())?,
        );
        ensure(got == (0, 1, -(e as i128)), || format!("e={e}: got {got:?}"))?;
    }
    Ok("e in {0,1,2,5}".into())
}

fn degree_relations() -> Outcome {
    let mut checked = 0;
    for e in 0..=5i64 {
        for a in 1..=5i64 {
            for d in 1..=5i64 {
                match ruled_solve(a, d, e) {
                    Ok(inv) => {
                        ensure(inv.deg_f == a * d && inv.delta == a.max(d) as f64, || {
                            format!("({a},{d},{e}): {inv:?}")
                        })?;
                        let expect = e == 0 || a == d;
                        ensure(inv.realizable == expect, || format!("({a},{d},{e}): realizable={}", inv.realizable))?;
                    }
                    Err(NsError::NotRealizable(_)) => {
                        ensure(e > 0 && a != d, || format!("({a},{d},{e}) rejected"))?;
                    }
                    Err(x) => return Err(format!("({a},{d},{e}): {x}")),
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} triples"))
}

fn gram_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut valid, mut perturbed, mut singular) = (0, 0, 0);
    while valid < 1000 {
        let (a, d, e) = (rng.gen_range(1..=40), rng.gen_range(1..=40), rng.gen_range(0..=8));
        let Ok(inv) = ruled_solve(a, d, e) else { continue };
        let model = inv.model();
        let action = inv.action();
        ensure(check_pullback(&model, &action) == Ok(true), || format!("valid ({a},{d},{e}) rejected"))?;
        valid += 1;

        let mut rows = action.matrix.rows().to_vec();
        let (i, j) = (rng.gen_range(0..2), rng.gen_range(0..2));
        rows[i][j] += if rng.gen_bool(0.5) { 1 } else { -1 };
        // A singular bump is already refused when the action is built.
        let rejected = match PullbackAction::new(IntMatrix::new(rows).expect("square"), action.deg_f) {
            Ok(bumped) => check_pullback(&model, &bumped) == Ok(false),
            Err(_) => {
                singular += 1;
                true
            }
        };
        ensure(rejected, || format!("bumped ({a},{d},{e}) at ({i},{j}) accepted"))?;
        perturbed += 1;
    }
    Ok(format!("{valid} valid, {perturbed} perturbed ({singular} singular)"))
}

fn spectral_power() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for n in [2usize, 3] {
        for _ in 0..20 {
            let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            let m = IntMatrix::new(rows).expect("square");
            let rho = spectral_radius(&m).value;
            for t in 1..=5u32 {
                let mt = m.checked_pow(t).ok_or("overflow")?;
                let rho_t = spectral_radius(&mt).value;
                let gap = (rho_t - rho.powi(t as i32)).abs();
                ensure(gap <= 1e-6 * rho.powi(t as i32), || {
                    format!("{:?}^{t}: {rho_t} vs {}", m.rows(), rho.powi(t as i32))
                })?;
                if rho > 0.0 {
                    worst = worst.max(gap / rho.powi(t as i32));
                }
            }
        }
    }
    Ok(format!("worst relative gap {worst:.1e}"))
}

fn squaring_exact() -> Outcome {
    let f = SelfMap::diagonal_power(2, 2);
    let p = Point::projective_i64(&[2, 1]).expect("point");
    let orbit = iterate_orbit(&f, &p, &OrbitOptions::new(10)).map_err(|e| e.to_string())?;
    let a = alpha_ratio(&orbit).map_err(|e| e.to_string())?;
    ensure(a.value == 2.0 && a.error_bar == 0.0, || format!("{a:?}"))?;
    let delta = f.delta().map_err(|e| e.to_string())?.value;
    let h = canonical_height(&f, delta, &p, 40).map_err(|e| e.to_string())?;
    ensure(h.value == 2f64.ln() && h.tail_bound == 0.0, || format!("{h:?}"))?;
    Ok(format!("alpha {} hhat {}", a.value, h.value))
}

fn monomial_ks() -> Outcome {
    let f = SelfMap::monomial_i64(&[&[2, 1], &[1, 1]]).expect("map");
    let p = Point::torus_i64(&[2, 3]).expect("point");
    let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
    let orbit = iterate_orbit(&f, &p, &OrbitOptions::new(15)).map_err(|e| e.to_string())?;
    let a = alpha_ratio(&orbit).map_err(|e| e.to_string())?;
    ensure((a.value - golden_sq).abs() <= 0.02, || format!("alpha {}", a.value))?;
    let cfg = VerdictConfig { n_max: 15, ..VerdictConfig::default() };
    let r = ks_verdict(&f, &p, &cfg).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::ConsistentWithKS, || format!("verdict {}", r.verdict))?;
    Ok(format!("alpha {:.6}", a.value))
}

fn zoo_pairs() -> Vec<(SelfMap, Point)> {
    let table: [(&str, &[&str]); 9] = [
        (r#"{"kind": "projective", "polys": ["x^2", "y^2", "z^2"]}"#, &["2:1:1", "3:2:1", "1:1:1", "5:1:7"]),
        (r#"{"kind": "projective", "polys": ["x^2 - y^2", "y^2"]}"#, &["3:1", "1:2", "0:1", "7:5"]),
        (r#"{"kind": "projective", "polys": ["x^3 + y^3", "y^3"]}"#, &["1:2", "2:3", "1:1"]),
        (r#"{"kind": "monomial", "A": [[2, 1], [1, 1]]}"#, &["2,3", "3,5", "1/2,3", "-1,1"]),
        (r#"{"kind": "monomial", "A": [[1, 1], [0, 1]]}"#, &["2,3", "5,7"]),
        (r#"{"kind": "monomial", "A": [[0, 1], [1, 0]], "coeffs": ["2", "3"]}"#, &["2,3", "1,1"]),
        (
            r#"{"kind": "product", "factors": [{"kind": "projective", "polys": ["x^2", "y^2"]},
                {"kind": "projective", "polys": ["x^3", "y^3"]}]}"#,
            &["(2:1),(3:1)", "(1:1),(2:1)", "(5:3),(1:2)"],
        ),
        (r#"{"kind": "elliptic", "curve": {"a": "-2", "b": "0"}, "m": 2}"#, &["-1,1", "0,0", "2,2", "infinity"]),
        (
            r#"{"kind": "elliptic", "curve": {"a": "-2", "b": "0"}, "m": 3, "translate": "0,0"}"#,
            &["-1,1", "2,2", "0,0", "infinity"],
        ),
    ];
    let mut out = Vec::new();
    for (json, points) in table {
        let f = map(json);
        for s in points {
            let p = pt(&f, s);
            out.push((f.clone(), p));
        }
    }
    out
}

fn upper_bound() -> Outcome {
    let pairs = zoo_pairs();
    ensure(pairs.len() == 30, || format!("{} pairs", pairs.len()))?;
    let mut estimated = 0;
    for (f, p) in &pairs {
        let delta = f.delta().map_err(|e| e.to_string())?.value;
        let orbit = iterate_orbit(f, p, &OrbitOptions::new(20)).map_err(|e| e.to_string())?;
        if let Ok(a) = alpha_ratio(&orbit) {
            ensure(a.value <= delta + a.error_bar + 1e-6, || format!("{p}: alpha {} > delta {delta}", a.value))?;
            estimated += 1;
        }
    }
    Ok(format!("{estimated}/{} pairs estimated", pairs.len()))
}

fn canonical_laws() -> Outcome {
    let squaring = SelfMap::diagonal_power(3, 2);
    let opts = OrbitOptions::new(40).with_bit_budget(1 << 18);
    let fib = SelfMap::monomial_i64(&[&[2, 1], &[1, 1]]).expect("map");
    let mut samples: Vec<(&SelfMap, Point)> = Vec::new();
    samples.extend(squaring.sample_points(25, 8).into_iter().map(|p| (&squaring, p)));
    samples.extend(fib.sample_points(25, 9).into_iter().map(|p| (&fib, p)));

    let mut strong = 0;
    for (f, p) in &samples {
        let delta = f.delta().map_err(|e| e.to_string())?.value;
        let h = canonical_height_with(f, delta, p, &opts).map_err(|e| e.to_string())?;
        let image = f.evaluate(p).map_err(|e| e.to_string())?.value().ok_or("indeterminate")?;
        let hf = canonical_height_with(f, delta, &image, &opts).map_err(|e| e.to_string())?;
        let allowed = hf.tail_bound + delta * h.tail_bound + 1e-9 * (1.0 + hf.value.abs());
        ensure((hf.value - delta * h.value).abs() <= allowed, || format!("{p}: {} vs {}", hf.value, delta * h.value))?;
        if h.value - h.tail_bound > 0.1 {
            let orbit = iterate_orbit(f, p, &OrbitOptions::new(20)).map_err(|e| e.to_string())?;
            let a = alpha_ratio(&orbit).map_err(|e| e.to_string())?;
            ensure((a.value - delta).abs() <= 0.05, || format!("{p}: alpha {} delta {delta}", a.value))?;
            strong += 1;
        }
    }

    let preperiodic = [
        (&squaring, "1:1:1"),
        (&squaring, "0:1:1"),
        (&squaring, "1:0:0"),
        (&squaring, "-1:1:1"),
        (&squaring, "1:-1:0"),
        (&squaring, "0:0:1"),
        (&fib, "1,1"),
        (&fib, "-1,1"),
        (&fib, "1,-1"),
        (&fib, "-1,-1"),
    ];
    for (f, s) in preperiodic {
        let delta = f.delta().map_err(|e| e.to_string())?.value;
        let h = canonical_height_with(f, delta, &pt(f, s), &opts).map_err(|e| e.to_string())?;
        ensure(h.value == 0.0, || format!("{s}: hhat {}", h.value))?;
    }
    Ok(format!("{} samples, {strong} with alpha checked, 10 preperiodic", samples.len()))
}

fn elliptic_family() -> Outcome {
    let curve = EllipticCurve::from_i64s(-2, 0).map_err(|e| e.to_string())?;
    let p = curve.point_i64(-1, 1).map_err(|e| e.to_string())?;
    let doubled = curve.multiply_i64(2, &p).map_err(|e| e.to_string())?;
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let expected = curve.point(q(9, 4), q(-21, 8)).map_err(|e| e.to_string())?;
    ensure(doubled == expected, || format!("[2]P = {doubled}"))?;
    let two_torsion = curve.point_i64(0, 0).map_err(|e| e.to_string())?;
    ensure(curve.is_torsion(&two_torsion) == Ok(TorsionStatus::Torsion(2)), || "(0,0) not of order 2".into())?;
    ensure(curve.is_torsion(&p) == Ok(TorsionStatus::NonTorsion), || "(-1,1) torsion".into())?;

    let f = map(r#"{"kind": "elliptic", "curve": {"a": "-2", "b": "0"}, "m": 2}"#);
    let orbit = iterate_orbit(&f, &pt(&f, "-1,1"), &OrbitOptions::new(8)).map_err(|e| e.to_string())?;
    let a = alpha_ratio(&orbit).map_err(|e| e.to_string())?;
    ensure((3.5..=4.5).contains(&a.value), || format!("alpha {}", a.value))?;
    Ok(format!("alpha {:.4}", a.value))
}

fn compactification() -> Outcome {
    let suite = [
        SelfMap::monomial_i64(&[&[2, 1], &[1, 1]]).expect("map"),
        SelfMap::monomial_i64(&[&[3, 1], &[1, 1]]).expect("map"),
        SelfMap::monomial_i64(&[&[2, 0], &[0, 3]]).expect("map"),
        SelfMap::monomial_i64(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 2]]).expect("map"),
    ];
    let mut compared = 0;
    for f in &suite {
        for p in f.sample_points(3, 21) {
            let est = |e: TorusEmbedding| {
                iterate_orbit(f, &p, &OrbitOptions::new(20).with_embedding(e))
                    .map_err(|x| x.to_string())
                    .and_then(|o| alpha_ratio(&o).map_err(|x| x.to_string()))
            };
            let (a, b) = (est(TorusEmbedding::ProjectiveSpace)?, est(TorusEmbedding::ProductOfLines)?);
            let allowed = a.error_bar + b.error_bar + 1e-9;
            ensure((a.value - b.value).abs() <= allowed, || format!("{p}: {} vs {}", a.value, b.value))?;
            compared += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10_000 {
        let dim = rng.gen_range(1..=4usize);
        let coords: Vec<BigRational> = (0..dim)
            .map(|_| {
                let n: i64 = rng.gen_range(1..=100_000) * if rng.gen_bool(0.5) { 1 } else { -1 };
                BigRational::new(BigInt::from(n), BigInt::from(rng.gen_range(1..=100_000i64)))
            })
            .collect();
        let p = TorusPoint::from_rationals(&coords).map_err(|e| e.to_string())?;
        let hp = torus_height(&p, TorusEmbedding::ProjectiveSpace).value;
        let hq = torus_height(&p, TorusEmbedding::ProductOfLines).value;
        let d = dim as f64;
        let slack = 1e-9 * (1.0 + hq);
        ensure(hp <= hq + slack && hq <= d * hp + d * 2f64.ln() + slack, || format!("{p}: h_P={hp} h_prod={hq}"))?;
    }
    Ok(format!("{compared} estimate pairs, 10000 height pairs"))
}

fn existence() -> Outcome {
    let f = SelfMap::diagonal_power(3, 2);
    let curve = ParamCurve::parse(Domain::Projective(2), &["1", "t", "t+1"], 1).map_err(|e| e.to_string())?;
    let found = find_full_degree_points(&f, &curve, 20, 0.1, &OrbitOptions::new(40)).map_err(|e| e.to_string())?;
    ensure(found.len() >= 19, || format!("{} qualifying", found.len()))?;
    Ok(format!("{}/20 qualify", found.len()))
}

fn disjoint_orbits() -> Outcome {
    let f = SelfMap::monomial_i64(&[&[2, 1], &[1, 1]]).expect("map");
    let curve = ParamCurve::parse(Domain::Torus(2), &["t", "t+1"], 2).map_err(|e| e.to_string())?;
    let set = build_disjoint_orbits(&f, 5, 50, &curve, 200, 0.1, &OrbitOptions::new(40)).map_err(|e| e.to_string())?;
    ensure(set.points.len() == 5, || format!("{} points", set.points.len()))?;
    let inv = f.inverse().map_err(|e| e.to_string())?;
    let mut segments: Vec<HashSet<Point>> = Vec::new();
    for p in &set.points {
        let seg = orbit_segment(&f, &inv, p, 50).map_err(|e| e.to_string())?.ok_or("undefined iterate")?;
        let seg: HashSet<Point> = seg.into_iter().collect();
        ensure(seg.len() == 101, || format!("{p}: {} distinct", seg.len()))?;
        segments.push(seg);
    }
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            ensure(segments[i].is_disjoint(&segments[j]), || format!("segments {i} and {j} meet"))?;
        }
    }
    ensure(set.certificates.iter().all(|c| c.canonical_height.lower() > 0.0), || "nonpositive hhat".into())?;
    Ok(format!("{} candidates tried", set.candidates_tried))
}

const SWEEP_CONFIG: &str = r#"{
  "experiment": "verdict_sweep",
  "seed": 2024,
  "maps": [
    {"id": "square", "map": {"kind": "projective", "polys": ["x^2", "y^2"]}, "points": ["2:1", "1:1"], "random_points": 3},
    {"id": "fib", "map": {"kind": "monomial", "A": [[2, 1], [1, 1]]}, "points": ["2,3"], "random_points": 4},
    {"id": "flip", "map": {"kind": "projective", "polys": ["x^2 - y^2", "y^2"]}, "random_points": 3}
  ]
}"#;

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("sweep.json");
    std::fs::write(&config, SWEEP_CONFIG).map_err(|e| e.to_string())?;
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_arithdyn"))
            .args(["verify-ks", "--seed", "7", "--format", "csv"])
            .arg(&config)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
        Ok::<_, String>(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, || "outputs differ".into())?;
    ensure(a.starts_with(b"map_id,point,delta,alpha,alpha_err,hhat,status,verdict\n"), || "bad header".into())?;
    Ok(format!("{} bytes, {} rows", a.len(), a.iter().filter(|&&c| c == b'\n').count() - 1))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("intersection table", Duration::from_millis(1), intersection_table),
        ("ruled degree relations", Duration::from_secs(1), degree_relations),
        ("pullback gram identity", Duration::from_secs(5), gram_identity),
        ("spectral radius of powers", Duration::from_secs(5), spectral_power),
        ("squaring map exact", Duration::from_secs(1), squaring_exact),
        ("monomial estimate", Duration::from_secs(1), monomial_ks),
        ("arithmetic degree upper bound", Duration::from_secs(30), upper_bound),
        ("canonical height laws", Duration::from_secs(30), canonical_laws),
        ("elliptic family", Duration::from_secs(10), elliptic_family),
        ("compactification invariance", Duration::from_secs(10), compactification),
        ("full-degree points on a line", Duration::from_secs(5), existence),
        ("disjoint orbit segments", Duration::from_secs(30), disjoint_orbits),
        ("verify-ks determinism", Duration::from_secs(5), determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let (verdict, note) = match result {
            Ok(note) if took <= *budget => ("PASS", note),
            Ok(note) => ("FAIL", format!("{note}; over budget")),
            Err(why) => ("FAIL", why),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("{verdict} {:>2} {name:<30} {:>10.3?} / {budget:?}  {note}", i + 1, took);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
