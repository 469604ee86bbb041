use proptest::prelude::*;

use quadlab::asymptotics::{asymptotic_verdict, shell_delta_profile, Verdict};
use quadlab::geometry::{detect_inner_product, gq_norm_defect, parallelogram_defect, Exponents};
use quadlab::perturb::{make_odd_witness, make_perturbed, random_matrix, random_quadratic, NoiseModel};
use quadlab::quadratic::{parity_decompose, polarize, residual_gq, residual_q};
use quadlab::space::{self, SpaceSpec, Spaces};
use quadlab::stability::StabilityConstants;
use quadlab::{EquationParams, MapHandle, Sampler};

fn vec_in(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, n)
}

fn pair(n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (vec_in(n), vec_in(n))
}

fn norm_space() -> impl Strategy<Value = SpaceSpec> {
    (1usize..5, prop_oneof![Just(1.0), Just(1.5), Just(2.0), Just(3.0), Just(f64::INFINITY)])
        .prop_map(|(n, p)| SpaceSpec::p_norm(n, p).unwrap())
}

fn params() -> impl Strategy<Value = EquationParams> {
    prop_oneof![
        (-5i64..=5, 1i64..=6).prop_filter_map("rs = 0", |(p, q)| EquationParams::from_fraction(p, q).ok()),
        (-3.0..3.0f64).prop_filter_map("rs = 0", |r| EquationParams::new(r).ok()),
    ]
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_homogeneous_and_subadditive(space in norm_space(), seed in any::<u64>(), t in -4.0..4.0f64) {
        let n = space.dim();
        let xs = quadlab::space::sample_vectors(&space, &Sampler::ball(seed, 2, 5.0)).unwrap();
        let (x, y) = (&xs[0], &xs[1]);
        let nx = space.norm(x).unwrap();
        let scaled = space.norm(&space::scale(t, x)).unwrap();
        prop_assert!((scaled - t.abs() * nx).abs() <= 1e-12 * (1.0 + scaled));
        let nxy = space.norm(&space::add(x, y)).unwrap();
        prop_assert!(nxy <= nx + space.norm(y).unwrap() + 1e-12);
        prop_assert_eq!(space.norm(&vec![0.0; n]).unwrap(), 0.0);
    }

    #[test]
    fn sampled_vectors_respect_radius(space in norm_space(), seed in any::<u64>(), r in 0.1..20.0f64) {
        for x in quadlab::space::sample_vectors(&space, &Sampler::ball(seed, 16, r)).unwrap() {
            prop_assert!(space.norm(&x).unwrap() <= r * (1.0 + 1e-12));
        }
    }

    #[test]
    fn exact_forms_solve_both_equations(seed in any::<u64>(), n in 1usize..6, m in 1usize..4, p in params(), (x, y) in pair(5)) {
        let q = random_quadratic(n, m, seed);
        let f = MapHandle::from_quadratic(&q);
        let (x, y) = (&x[..n], &y[..n]);
        let scale = 1.0 + space::dot(x, x) + space::dot(y, y);
        let rscale = scale * (1.0 + p.r().abs() + p.s().abs()).powi(2);
        prop_assert!(sup(&residual_q(&f, x, y).unwrap()) <= 1e-12 * scale * 10.0);
        prop_assert!(sup(&residual_gq(&f, &p, x, y).unwrap()) <= 1e-12 * rscale * 10.0);
    }

    #[test]
    fn constant_shift_closed_forms(c in -10.0..10.0f64, p in params(), (x, y) in pair(2)) {
        let f = make_perturbed(&quadlab::QuadraticForm::identity(2, 1), &NoiseModel::Constant { c }).unwrap();
        let scale = (1.0 + space::dot(&x, &x) + space::dot(&y, &y)) * (1.0 + p.r().abs() + p.s().abs()).powi(2);
        let rq = residual_q(&f, &x, &y).unwrap()[0];
        prop_assert!((rq + 2.0 * c).abs() <= 1e-12 * scale * 10.0);
        let rg = residual_gq(&f, &p, &x, &y).unwrap()[0];
        prop_assert!((rg - p.rs() * c).abs() <= 1e-12 * scale * 10.0);
    }

    #[test]
    fn polarization_is_symmetric_and_additive(seed in any::<u64>(), (x, y) in pair(3), z in vec_in(3)) {
        let f = MapHandle::from_quadratic(&random_quadratic(3, 2, seed));
        let tol = 1e-11 * (1.0 + space::dot(&x, &x) + space::dot(&y, &y) + space::dot(&z, &z));
        let bxy = polarize(&f, &x, &y).unwrap();
        let byx = polarize(&f, &y, &x).unwrap();
        prop_assert!(sup(&space::sub(&bxy, &byx)) <= tol);
        let lhs = polarize(&f, &space::add(&x, &z), &y).unwrap();
        let rhs = space::add(&bxy, &polarize(&f, &z, &y).unwrap());
        prop_assert!(sup(&space::sub(&lhs, &rhs)) <= tol);
        let bxx = polarize(&f, &x, &x).unwrap();
        prop_assert!(sup(&space::sub(&bxx, &f.eval(&x).unwrap())) <= tol);
    }

    #[test]
    fn parity_parts_recombine(seed in any::<u64>(), x in vec_in(2)) {
        let l = random_matrix(1, 2, seed);
        let q = random_quadratic(2, 1, seed ^ 1);
        let (lq, ql) = (l.clone(), q.clone());
        let f = MapHandle::from_fn("mixed", 2, 1, move |v: &[f64]| {
            let lin = space::dot(&lq[0], v);
            vec![ql.eval(v).unwrap()[0] + lin + 1.0]
        });
        let (fe, fo) = parity_decompose(&f);
        let neg = space::scale(-1.0, &x);
        let e = fe.eval(&x).unwrap()[0];
        let o = fo.eval(&x).unwrap()[0];
        prop_assert!((e + o - f.eval(&x).unwrap()[0]).abs() <= 1e-12 * (1.0 + e.abs() + o.abs()));
        prop_assert!((fe.eval(&neg).unwrap()[0] - e).abs() <= 1e-12 * (1.0 + e.abs()));
        prop_assert!((fo.eval(&neg).unwrap()[0] + o).abs() <= 1e-12 * (1.0 + o.abs()));
        prop_assert!((o - space::dot(&l[0], &x)).abs() <= 1e-12 * (1.0 + o.abs()));
    }

    #[test]
    fn uniform_noise_is_bounded_and_deterministic(delta in 0.0..5.0f64, seed in any::<u64>(), x in vec_in(3)) {
        let noise = NoiseModel::UniformBounded { delta, seed };
        let a = noise.sample_at(&x, 3);
        prop_assert_eq!(&a, &noise.sample_at(&x, 3));
        for v in a {
            prop_assert!(v.abs() <= delta);
        }
    }

    #[test]
    fn constants_monotone_in_d_linear_in_delta(p in params(), d in 0.0..10.0f64, dd in 0.0..5.0f64, delta in 0.0..10.0f64, k in 0.0..5.0f64) {
        let a = StabilityConstants::compute(&p, d, delta).unwrap();
        let b = StabilityConstants::compute(&p, d + dd, delta).unwrap();
        prop_assert!(b.M >= a.M && b.K >= a.K);
        prop_assert!((a.K - 4.0 * a.M).abs() <= 1e-12 * a.K.max(1.0));
        let c = StabilityConstants::compute(&p, d, k * delta).unwrap();
        let tol = 1e-12 * (1.0 + c.C_global);
        prop_assert!((c.C_global - k * a.C_global).abs() <= tol);
        prop_assert!((c.C_restricted - k * a.C_restricted).abs() <= tol);
        prop_assert!((2.0 * a.C_approx - a.C_global).abs() <= tol);
        prop_assert!(a.C_restricted <= a.C_approx + tol);
        prop_assert!(a.C_approx >= delta / 2.0 - tol);
    }

    #[test]
    fn odd_witness_law(seed in any::<u64>(), x in vec_in(3)) {
        let l = random_matrix(2, 3, seed);
        let f = make_odd_witness(&l).unwrap();
        let p = EquationParams::from_fraction(1, 2).unwrap();
        let res = residual_gq(&f, &p, &x, &[0.0; 3]).unwrap();
        let lx = f.eval(&x).unwrap();
        let want = space::scale(p.rs(), &lx);
        prop_assert!(sup(&space::sub(&res, &want)) <= 1e-12 * (1.0 + sup(&x)) * 4.0);
    }

    #[test]
    fn decay_noise_defect_on_antidiagonal(c in 0.1..5.0f64, x in vec_in(2)) {
        let f = make_perturbed(&quadlab::QuadraticForm::identity(2, 1), &NoiseModel::Decay { c, alpha: 1.0 }).unwrap();
        let p = EquationParams::from_fraction(1, 2).unwrap();
        let t = space::euclidean_norm(&x);
        let got = residual_gq(&f, &p, &x, &space::scale(-1.0, &x)).unwrap()[0];
        let want = c + c / (4.0 * (1.0 + 2.0 * t)) - c / (1.0 + t);
        prop_assert!((got - want).abs() <= 1e-12 * (1.0 + t * t) * 10.0);
    }

    #[test]
    fn weighted_norms_satisfy_parallelogram(a in 0.5..4.0f64, b in 0.5..4.0f64, off in -0.4..0.4f64, (x, y) in pair(2)) {
        let space = SpaceSpec::weighted(&[vec![a, off], vec![off, b]]).unwrap();
        let d = parallelogram_defect(&space, &x, &y).unwrap();
        let scale = 1.0 + space.norm(&x).unwrap().powi(2) + space.norm(&y).unwrap().powi(2);
        prop_assert!(d.abs() <= 1e-12 * scale * 10.0);
        let pr = EquationParams::new(0.3).unwrap();
        let g = gq_norm_defect(&space, &pr, &Exponents::QUADRATIC, &x, &y).unwrap();
        prop_assert!(g.abs() <= 1e-12 * scale * 10.0);
    }

    #[test]
    fn unequal_scale_exponents_leave_a_witness(u in 1u8..=3, v in 1u8..=3, r in 0.05..0.95f64) {
        prop_assume!(u != v);
        let space = SpaceSpec::euclidean(2).unwrap();
        let p = EquationParams::new(r).unwrap();
        let e = Exponents::new(2.0, 2.0, u as f64, v as f64).unwrap();
        let worst = [0.5, 2.0]
            .iter()
            .map(|t| {
                let x = vec![*t, 0.0];
                gq_norm_defect(&space, &p, &e, &x, &x).unwrap().abs()
            })
            .fold(0.0, f64::max);
        prop_assert!(worst > 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn exact_forms_are_asymptotically_quadratic(seed in any::<u64>(), n in 1usize..4) {
        let f = MapHandle::from_quadratic(&random_quadratic(n, 1, seed));
        let spaces = Spaces::euclidean(n, 1).unwrap();
        let p = EquationParams::from_fraction(1, 3).unwrap();
        let prof = shell_delta_profile(&f, &p, &spaces, 0, 8, 20, seed).unwrap();
        prop_assert_eq!(&prof, &shell_delta_profile(&f, &p, &spaces, 0, 8, 20, seed).unwrap());
        prop_assert_eq!(asymptotic_verdict(&prof, 1e-8).unwrap().verdict, Verdict::AsymptoticallyQuadratic);
    }

    #[test]
    fn detector_accepts_weighted_spaces(a in 0.5..4.0f64, b in 0.5..4.0f64, off in -0.4..0.4f64, seed in any::<u64>()) {
        let rows = vec![vec![a, off], vec![off, b]];
        let space = SpaceSpec::weighted(&rows).unwrap();
        let v = detect_inner_product(&space, &Sampler::ball(seed, 200, 3.0), 1e-9).unwrap();
        prop_assert!(v.accepted);
        let g = v.recovered_gram.unwrap();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((g[i][j] - rows[i][j]).abs() <= 1e-10);
            }
        }
    }
}
