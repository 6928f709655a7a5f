use overinterp::algcurves::{forcing_count, monomial_count, BivarPoly, PointSet2};
use overinterp::numcore::{count_zeros_in_disk, max_modulus};
use overinterp::overconv::{a1_of_t, b_const, bernstein_walsh_check, gc_threshold};
use overinterp::polyinterp::{lagrange, verify_remainder, NodeSet};
use overinterp::ratinterp::Alpha;
use overinterp::taylorbounds::disk_constants;
use overinterp::{Analytic, CatalogFunction, ComplexPoly, Error, TaylorSeries, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_poly(deg: usize, rng: &mut impl Rng) -> ComplexPoly {
    ComplexPoly::new((0..=deg).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn disk_constants_are_ordered(r in 0.02f64..0.98, n in 0usize..20) {
        let dc = disk_constants(r).unwrap();
        prop_assert!(r < dc.s && dc.s < 1.0);
        prop_assert!(0.0 < dc.a1 && dc.a1 < 1.0);
        prop_assert!((dc.a.powi(4) - dc.a1).abs() < 1e-12);
        prop_assert!(dc.big_a >= 1.0 && dc.delta > 0.0 && dc.delta < 1.0);
        prop_assert!(dc.min_zero_count(n) as f64 >= dc.big_a * (n + 1) as f64);
        prop_assert!(dc.min_radius() > dc.s);
    }

    #[test]
    fn a1_below_one_and_increasing(t in 0.01f64..0.98, dt in 1e-3f64..0.01) {
        let lo = a1_of_t(t).unwrap();
        let hi = a1_of_t(t + dt).unwrap();
        prop_assert!(0.0 < lo && lo < hi && hi < 1.0);
    }

    #[test]
    fn gc_threshold_exceeds_one(r in 0.02f64..0.98) {
        let b = b_const(r).unwrap();
        prop_assert!(b < 1.0);
        prop_assert!(gc_threshold(r).unwrap() > 1.0);
    }

    #[test]
    fn bernstein_walsh_holds(seed in any::<u64>(), m in 1usize..=4, r in 0.1f64..0.9) {
        let q = random_poly(m, &mut rng(seed));
        let c = bernstein_walsh_check(&q, m, r).unwrap();
        prop_assert!(c.holds, "{} > {}", c.lhs, c.rhs);
    }

    #[test]
    fn forcing_is_one_below_monomials(k in 0usize..200) {
        prop_assert_eq!(forcing_count(k) + 1, monomial_count(k));
    }

    #[test]
    fn remainder_bound_holds_for_exp(seed in any::<u64>(), n in 0usize..14, r in 0.05f64..1.0, s_frac in 0.1f64..0.95, gap in 0.1f64..3.0) {
        let big_r = r + gap;
        let nodes = NodeSet::random_in_disk(n + 1, r, &mut rng(seed)).unwrap();
        match verify_remainder(&CatalogFunction::exp(), &nodes, s_frac * big_r, big_r) {
            Ok(c) => prop_assert!(c.holds, "{} > {} (floor {})", c.lhs, c.rhs, c.rounding_floor),
            // clustered nodes: the true error sits below double precision
            Err(Error::RoundingFloor { bound, floor, .. }) => prop_assert!(bound < floor),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn interpolant_matches_at_nodes(seed in any::<u64>(), n in 0usize..12) {
        let f = CatalogFunction::exp();
        let nodes = NodeSet::random_in_disk(n + 1, 0.8, &mut rng(seed)).unwrap();
        let p = lagrange(&f, &nodes).unwrap();
        for &z in nodes.nodes() {
            prop_assert!((p.eval(z) - f.eval(z)).norm() < 1e-9 * (1.0 + p.kappa().min(1e6)));
        }
    }

    #[test]
    fn cauchy_inequality_for_exp(big_r in 0.2f64..4.0) {
        let f = CatalogFunction::exp();
        let m = max_modulus(&f, big_r, 1e-10).unwrap();
        prop_assert!((m.value - big_r.exp()).abs() < 1e-9 * big_r.exp());
        let s = f.taylor(25);
        for k in 0..25 {
            prop_assert!(s.coeffs()[k].norm() <= m.bound / big_r.powi(k as i32) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn zero_count_matches_known_roots(seed in any::<u64>(), deg in 1usize..12, t in 0.1f64..1.4) {
        let mut g = rng(seed);
        let roots: Vec<C64> = (0..deg).map(|_| C64::new(g.random_range(-1.2..1.2), g.random_range(-1.2..1.2))).collect();
        prop_assume!(roots.iter().all(|z| (z.norm() - t).abs() > 1e-3));
        let truth = roots.iter().filter(|z| z.norm() < t).count();
        let got = count_zeros_in_disk(&ComplexPoly::from_roots(&roots), t, 1e-4).unwrap();
        prop_assert_eq!(got.count, truth);
    }

    #[test]
    fn series_division_inverts_multiplication(seed in any::<u64>()) {
        let mut g = rng(seed);
        let mut a: Vec<C64> = (0..16).map(|_| C64::new(g.random_range(-1.0..1.0), g.random_range(-1.0..1.0))).collect();
        a[0] += C64::new(3.0, 0.0);
        let b: Vec<C64> = (0..16).map(|_| C64::new(g.random_range(-1.0..1.0), 0.0)).collect();
        let (a, b) = (TaylorSeries::new(a), TaylorSeries::new(b));
        let back = b.mul(&a).div(&a).unwrap();
        for (x, y) in back.coeffs().iter().zip(b.coeffs()) {
            prop_assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn alpha_round_trips_through_q(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let a = Alpha::Finite(C64::new(re, im));
        let back = Alpha::from_q(&a.to_q()).unwrap();
        prop_assert!(back.distance(a) < 1e-12);
    }

    #[test]
    fn roots_reconstruct_polynomial(seed in any::<u64>(), deg in 1usize..10) {
        let mut g = rng(seed);
        let roots: Vec<C64> = (0..deg).map(|_| C64::new(g.random_range(-1.0..1.0), g.random_range(-1.0..1.0))).collect();
        let p = ComplexPoly::from_roots(&roots);
        let found = p.roots();
        prop_assert_eq!(found.len(), deg);
        for z in &roots {
            let nearest = found.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest < 1e-5, "root {} missed by {}", z, nearest);
        }
    }

    #[test]
    fn bivariate_product_degrees_add(seed in any::<u64>(), d1 in 1usize..5, d2 in 1usize..5) {
        let mut g = rng(seed);
        let (x, y) = (BivarPoly::random(d1, &mut g), BivarPoly::random(d2, &mut g));
        let p = x.mul(&y);
        prop_assert_eq!(p.degree(1e-12), d1 + d2);
        // the product is stored unit-normalized, so compare ratios at two points
        let ratio = |a: C64, b: C64| p.eval(a, b) / (x.eval(a, b) * y.eval(a, b));
        let (k1, k2) = (ratio(C64::new(0.3, -0.1), C64::new(-0.2, 0.4)), ratio(C64::new(-0.7, 0.2), C64::new(0.5, 0.5)));
        prop_assert!((k1 - k2).norm() < 1e-8 * k1.norm(), "{} vs {}", k1, k2);
    }

    #[test]
    fn point_csv_round_trips(seed in any::<u64>(), n in 1usize..30) {
        let s = PointSet2::random(n, &mut rng(seed)).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        prop_assert_eq!(PointSet2::read_csv(buf.as_slice(), s.tol()).unwrap(), s);
    }
}
