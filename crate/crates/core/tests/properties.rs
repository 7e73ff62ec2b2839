use arithdyn::degree_engine::{alpha_ratio, canonical_height};
use arithdyn::elliptic::{EllipticCurve, EllipticPoint};
use arithdyn::experiments::{run_experiment, ExperimentConfig};
use arithdyn::heights::{torus_height, weil_height, ProjectivePoint, TorusEmbedding, TorusPoint};
use arithdyn::map_zoo::{iterate_orbit, OrbitOptions, Point, SelfMap};
use arithdyn::ns_calculus::{check_pullback, dynamical_degree, ruled_solve, spectral_radius, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..=10_000, 1i64..=10_000).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn projective_coords() -> impl Strategy<Value = Vec<BigRational>> {
    (2usize..=4)
        .prop_flat_map(|n| prop::collection::vec(rational(), n))
        .prop_filter("not all zero", |v| v.iter().any(|q| !q.is_zero()))
}

fn small_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), n).prop_map(|rows| IntMatrix::new(rows).expect("square"))
}

proptest! {
    #[test]
    fn normalize_is_idempotent(coords in projective_coords()) {
        let p = ProjectivePoint::normalize(&coords).unwrap();
        let again: Vec<BigRational> = p.coords().iter().cloned().map(BigRational::from_integer).collect();
        prop_assert_eq!(ProjectivePoint::normalize(&again).unwrap(), p);
    }

    #[test]
    fn normalize_ignores_scaling(coords in projective_coords(), scale in nonzero_rational()) {
        let scaled: Vec<BigRational> = coords.iter().map(|c| c * &scale).collect();
        let p = ProjectivePoint::normalize(&coords).unwrap();
        let q = ProjectivePoint::normalize(&scaled).unwrap();
        prop_assert_eq!(weil_height(&p).value, weil_height(&q).value);
        prop_assert_eq!(p, q);
    }

    #[test]
    fn torus_heights_are_comparable(coords in prop::collection::vec(nonzero_rational(), 1..=4)) {
        let p = TorusPoint::from_rationals(&coords).unwrap();
        let hp = torus_height(&p, TorusEmbedding::ProjectiveSpace).value;
        let hq = torus_height(&p, TorusEmbedding::ProductOfLines).value;
        let d = coords.len() as f64;
        let slack = 1e-9 * (1.0 + hq);
        prop_assert!(hp <= hq + slack, "h_P {} > h_prod {}", hp, hq);
        prop_assert!(hq <= d * hp + d * 2f64.ln() + slack, "h_prod {} vs h_P {}", hq, hp);
    }

    #[test]
    fn spectral_radius_of_powers(m in prop_oneof![small_matrix(2), small_matrix(3)], t in 1u32..=4) {
        let rho = spectral_radius(&m).value;
        let rho_t = spectral_radius(&m.checked_pow(t).unwrap()).value;
        prop_assert!((rho_t - rho.powi(t as i32)).abs() <= 1e-6 * rho.powi(t as i32).max(1e-300),
            "rho {} rho_t {}", rho, rho_t);
    }

    #[test]
    fn ruled_invariants_hold(a in 1i64..=30, d in 1i64..=30, e in 0i64..=6) {
        match ruled_solve(a, d, e) {
            Ok(inv) => {
                prop_assert_eq!(inv.deg_f, a * d);
                prop_assert_eq!(inv.delta, a.max(d) as f64);
                prop_assert_eq!(inv.realizable, e == 0 || a == d);
                prop_assert_eq!(check_pullback(&inv.model(), &inv.action()), Ok(true));
            }
            Err(_) => prop_assert!(e * (d - a) % 2 != 0),
        }
    }

    #[test]
    fn pullbacks_compose(a1 in 1i64..=6, d1 in 1i64..=6, a2 in 1i64..=6, d2 in 1i64..=6, e in 0i64..=4, t in 1u32..=3) {
        let (Ok(f), Ok(g)) = (ruled_solve(a1, d1, e), ruled_solve(a2, d2, e)) else { return Ok(()) };
        let model = f.model();
        let fg = f.action().compose(&g.action()).unwrap();
        prop_assert_eq!(fg.deg_f, f.deg_f * g.deg_f);
        prop_assert_eq!(check_pullback(&model, &fg), Ok(true));
        let ft = f.action().power(t).unwrap();
        prop_assert_eq!(check_pullback(&model, &ft), Ok(true));
        let (rho, rho_t) = (dynamical_degree(&f.action()).value, dynamical_degree(&ft).value);
        prop_assert!((rho_t - rho.powi(t as i32)).abs() <= 1e-9 * rho_t);
    }
}

fn rank_two_curve() -> (EllipticCurve, Vec<EllipticPoint>) {
    let curve = EllipticCurve::from_i64s(0, 17).unwrap();
    let pts = curve.small_points(10);
    (curve, pts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law(i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let (c, pts) = rank_two_curve();
        let (p, q, r) = (&pts[i % pts.len()], &pts[j % pts.len()], &pts[k % pts.len()]);
        prop_assert_eq!(c.add(p, q).unwrap(), c.add(q, p).unwrap());
        let left = c.add(&c.add(p, q).unwrap(), r).unwrap();
        let right = c.add(p, &c.add(q, r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(c.add(p, &c.negate(p)).unwrap(), EllipticPoint::Infinity);
        prop_assert_eq!(c.add(p, &EllipticPoint::Infinity).unwrap(), p.clone());
    }

    #[test]
    fn multiplication_is_repeated_addition(i in 0usize..64, m in -4i64..=4, n in -3i64..=3) {
        let (c, pts) = rank_two_curve();
        let p = &pts[i % pts.len()];
        let mn = c.multiply_i64(m * n, p).unwrap();
        prop_assert_eq!(c.multiply_i64(m, &c.multiply_i64(n, p).unwrap()).unwrap(), mn);
        let sum = c.add(&c.multiply_i64(m, p).unwrap(), &c.multiply_i64(n, p).unwrap()).unwrap();
        prop_assert_eq!(sum, c.multiply_i64(m + n, p).unwrap());
    }

    #[test]
    fn ratio_estimate_stays_below_delta(
        rows in prop::collection::vec(prop::collection::vec(-2i64..=3, 2), 2),
        x in nonzero_rational(),
        y in nonzero_rational(),
    ) {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let Ok(f) = SelfMap::monomial_i64(&refs) else { return Ok(()) };
        let delta = f.delta().unwrap().value;
        let p = Point::Torus(TorusPoint::from_rationals(&[x, y]).unwrap());
        let orbit = iterate_orbit(&f, &p, &OrbitOptions::new(20)).unwrap();
        if let Ok(a) = alpha_ratio(&orbit) {
            prop_assert!(a.value <= delta + a.error_bar + 1e-6, "{:?} at {}: {} > {}", rows, p, a.value, delta);
        }
    }

    #[test]
    fn canonical_height_scales_along_orbits(seed in any::<u64>()) {
        let maps = [SelfMap::diagonal_power(3, 2), SelfMap::monomial_i64(&[&[2, 1], &[1, 1]]).unwrap()];
        for f in &maps {
            let delta = f.delta().unwrap().value;
            let p = f.sample_points(1, seed).remove(0);
            let image = f.evaluate(&p).unwrap().value().unwrap();
            let h = canonical_height(f, delta, &p, 30).unwrap();
            let hf = canonical_height(f, delta, &image, 30).unwrap();
            let allowed = hf.tail_bound + delta * h.tail_bound + 1e-9 * (1.0 + hf.value);
            prop_assert!((hf.value - delta * h.value).abs() <= allowed, "{}: {} vs {}", p, hf.value, delta * h.value);
        }
    }

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>(), count in 1usize..8) {
        let f = SelfMap::monomial_i64(&[&[2, 1], &[1, 1]]).unwrap();
        prop_assert_eq!(f.sample_points(count, seed), f.sample_points(count, seed));
        let g = SelfMap::diagonal_power(3, 2);
        prop_assert_eq!(g.sample_points(count, seed), g.sample_points(count, seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn experiments_are_byte_identical(seed in any::<u64>()) {
        let text = format!(r#"{{"seed": {seed}, "n_max": 12, "maps": [
            {{"id": "sq", "map": {{"kind": "projective", "polys": ["x^2", "y^2"]}}, "random_points": 2}},
            {{"id": "fib", "map": {{"kind": "monomial", "A": [[2, 1], [1, 1]]}}, "random_points": 2}}]}}"#);
        let run = || run_experiment(&ExperimentConfig::from_json_str(&text).unwrap()).unwrap();
        let (a, b) = (run(), run());
        prop_assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        prop_assert_eq!(a.to_json(), b.to_json());
    }
}
