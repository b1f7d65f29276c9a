//! Cross-checks between independent computation routes.

use pdc_zeno::closed_forms::*;
use pdc_zeno::dynamics::{occupations, signal_photons};
use pdc_zeno::regime::{classify_regime, Regime};
use pdc_zeno::sweep::*;
use pdc_zeno::{propagate_exact, propagate_ode, vacuum_occupations, CouplerParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(gamma: f64, kappa: f64, delta: f64, length: f64) -> CouplerParams {
    CouplerParams::new(gamma, kappa, delta, length).unwrap()
}

#[test]
fn ode_agrees_with_exact_on_random_sample() {
    let tol = 1e-10;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..40 {
        let params = p(
            rng.gen_range(0.0..10.0),
            rng.gen_range(0.0..10.0),
            rng.gen_range(0.0..10.0),
            rng.gen_range(0.0..3.0),
        );
        let exact = propagate_exact(&params).unwrap();
        let numeric = propagate_ode(&params, tol).unwrap();
        // entries reach e^30 at the top of the range, so compare on a relative scale
        let scale = exact.max_entry().max(1.0);
        let diff = exact.max_difference(&numeric) / scale;
        assert!(diff <= 10.0 * tol, "{params:?}: {diff}");
    }
}

#[test]
fn ode_reproduces_mismatched_closed_form() {
    for (g, d, l) in [
        (0.5, 5.0, 1.0),
        (0.5, 5.0, 1.5),
        (0.9, 1.2, 2.0),
        (0.5, 1.0, 2.0),
    ] {
        let ode = vacuum_occupations(&propagate_ode(&p(g, 0.0, d, l), 1e-11).unwrap()).n_s;
        let closed = n_s_mismatched_uncoupled(g, d, l).n_s;
        assert!(
            (ode - closed).abs() < 1e-8,
            "{g} {d} {l}: {ode} vs {closed}"
        );
    }
}

#[test]
fn large_mismatch_limit() {
    let (g, d) = (0.5, 50.0);
    for m in 0..5 {
        // maxima of sin^2(D L / 2)
        let l = (2 * m + 1) as f64 * std::f64::consts::PI / d;
        let exact = n_s_mismatched_uncoupled(g, d, l).n_s;
        let asym = n_s_large_mismatch_asymptote(g, d, l).unwrap();
        assert!((exact / asym - 1.0).abs() < 1e-3);
    }
}

#[test]
fn strong_coupling_convergence_rate() {
    let g = 0.5;
    let sup_error = |ratio: f64| {
        let k = g * ratio;
        (0..=30_000)
            .map(|i| 3.0 * i as f64 / 30_000.0)
            .map(|l| {
                (n_s_coupled_matched(g, k, l).n_s - n_s_strong_coupling_asymptote(g, k, l).unwrap())
                    .abs()
            })
            .fold(0.0, f64::max)
            / (g / k).powi(3)
    };
    let c20 = sup_error(20.0);
    assert!(c20 > 0.0 && c20 < 10.0);
    for ratio in [50.0, 100.0] {
        assert!(
            sup_error(ratio) <= c20,
            "constant grows at kappa/gamma = {ratio}"
        );
    }
}

#[test]
fn sweep_slices_match_closed_forms() {
    let matched = SweepSpec {
        fixed: p(0.5, 0.0, 0.0, 0.0),
        axis1: AxisSpec::new(Axis::Length, 0.0, 3.0, 13),
        axis2: AxisSpec::new(Axis::Kappa, 0.0, 10.0, 21),
        engine: Engine::Numeric,
    };
    let grid = sweep_2d(&matched).unwrap();
    for (r, l) in grid.axis1_values().iter().enumerate() {
        for (c, k) in grid.axis2_values().iter().enumerate() {
            assert!((grid.get(r, c) - n_s_coupled_matched(0.5, *k, *l).n_s).abs() < 1e-9);
        }
    }

    let uncoupled = SweepSpec {
        axis2: AxisSpec::new(Axis::Delta, 0.0, 10.0, 21),
        ..matched
    };
    let grid = sweep_2d(&uncoupled).unwrap();
    for (r, l) in grid.axis1_values().iter().enumerate() {
        for (c, d) in grid.axis2_values().iter().enumerate() {
            assert!((grid.get(r, c) - n_s_mismatched_uncoupled(0.5, *d, *l).n_s).abs() < 1e-9);
        }
    }
}

#[test]
fn sweep_is_deterministic_across_pools() {
    let spec = SweepSpec {
        fixed: p(0.5, 0.0, 0.0, 1.5),
        axis1: AxisSpec::new(Axis::Kappa, 0.0, 10.0, 31),
        axis2: AxisSpec::new(Axis::Delta, 0.0, 10.0, 31),
        engine: Engine::Numeric,
    };
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sweep_2d(&spec).unwrap())
    };
    let one = run(1);
    let many = run(8);
    assert_eq!(
        one.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
        many.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
    );
    assert_eq!(one.provenance, many.provenance);
}

#[test]
fn growth_band_of_the_length_coupling_map() {
    // fixed gamma = 0.5, delta = 5: hyperbolic growth only for kappa in (4.29, 5.71)
    let kappas = [0.0, 2.0, 3.5, 4.6, 5.0, 5.4, 6.5, 8.0];
    for k in kappas {
        let curve: Vec<f64> = (0..=120)
            .map(|i| signal_photons(&p(0.5, k, 5.0, 0.025 * i as f64)).unwrap())
            .collect();
        let tail_monotone = curve[60..].windows(2).all(|w| w[1] >= w[0]);
        let inside = (4.29..5.71).contains(&k);
        assert_eq!(tail_monotone, inside, "kappa = {k}");
    }
}

#[test]
fn regime_tag_matches_dynamics() {
    let hyperbolic = [
        (0.5, 5.0, 5.0),
        (0.5, 4.6, 5.0),
        (0.5, 5.5, 5.0),
        (0.5, 0.3, 0.0),
        (0.3, 3.0, 3.2),
    ];
    for (g, k, d) in hyperbolic {
        assert_eq!(
            classify_regime(&p(g, k, d, 1.0)).unwrap().regime,
            Regime::Hyperbolic
        );
        let end = 10.0 / g;
        let curve: Vec<f64> = (0..=400)
            .map(|i| signal_photons(&p(g, k, d, end * i as f64 / 400.0)).unwrap())
            .collect();
        assert!(
            curve[200..].windows(2).all(|w| w[1] >= w[0]),
            "({g}, {k}, {d}) not eventually increasing"
        );
    }

    let oscillatory = [
        (0.5, 2.0, 5.0),
        (0.5, 8.0, 5.0),
        (0.5, 1.0, 0.0),
        (0.2, 3.0, 1.0),
    ];
    for (g, k, d) in oscillatory {
        assert_eq!(
            classify_regime(&p(g, k, d, 1.0)).unwrap().regime,
            Regime::Oscillatory
        );
        let end = 10.0 / g;
        let curve: Vec<f64> = (0..=4000)
            .map(|i| signal_photons(&p(g, k, d, end * i as f64 / 4000.0)).unwrap())
            .collect();
        let (argmax, max) = curve
            .iter()
            .copied()
            .enumerate()
            .fold((0, 0.0), |a, (i, v)| if v > a.1 { (i, v) } else { a });
        assert!(max.is_finite() && max < 10.0);
        let later_min = curve[argmax..]
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let earlier_min = curve[1..=argmax]
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        assert!(
            later_min < 0.5 * max || earlier_min < 0.5 * max,
            "({g}, {k}, {d}) never drops below half max"
        );
        // bounded: the second half never exceeds the first-half maximum by much
        let first_half = curve[..2000].iter().copied().fold(0.0, f64::max);
        let second_half = curve[2000..].iter().copied().fold(0.0, f64::max);
        assert!(second_half <= 1.5 * first_half);
    }
}

#[test]
fn resonance_lies_in_growth_window() {
    let g = 0.5;
    let points = find_anti_zeno_ridge(g, 1.5, &[3.0, 5.0, 8.0]).unwrap();
    for pt in &points {
        let half = 2f64.sqrt() * g;
        assert!(
            (pt.delta - half..=pt.delta + half).contains(&pt.kappa_opt),
            "{pt:?}"
        );
    }
    // regression value of the refined optimum at delta = 5
    assert!((points[1].kappa_opt - 5.003132211821207).abs() < 1e-5);
    let uncoupled = n_s_mismatched_uncoupled(g, 5.0, 1.5).n_s;
    assert!(points[1].n_s_max >= 10.0 * uncoupled);
}

#[test]
fn ridge_roughly_doubles_with_mismatch() {
    let points = find_anti_zeno_ridge(0.5, 1.5, &[4.0, 8.0]).unwrap();
    let ratio = points[1].kappa_opt / points[0].kappa_opt;
    assert!((ratio - 2.0).abs() < 0.1, "{ratio}");
}

#[test]
fn zeno_envelope_shrinks_with_coupling() {
    let g = 0.5;
    let envelopes: Vec<f64> = [2.0, 4.0, 8.0, 16.0]
        .iter()
        .map(|&k| length_envelope(&p(g, k, 0.0, 1.0), 3.0, 3001).unwrap())
        .collect();
    assert!(envelopes.windows(2).all(|w| w[1] <= w[0]));
    assert!(envelopes[3] <= 4.0 * g * g / 256.0 * 1.1);
}

#[test]
fn resonant_coupling_versus_qpm_at_finite_length() {
    // Compares the kappa = delta output with sinh^2 at the rectangular-QPM
    // coupling 2 gamma / pi. The coupled device wins once the resonant channel
    // has had time to grow; at very short lengths the off-resonant channel and
    // the QPM formula are both ~ (gamma L)^2 and the ordering is not meaningful.
    let (g, d) = (0.5, 5.0);
    let qpm = |l: f64| (2.0 * g / std::f64::consts::PI * l).sinh().powi(2);
    let wins: Vec<bool> = (1..=30)
        .map(|i| {
            let l = 0.1 * i as f64;
            signal_photons(&p(g, d, d, l)).unwrap() > qpm(l)
        })
        .collect();
    assert!(wins[10..].iter().all(|&w| w));
}

#[test]
fn occupations_are_consistent_across_routes() {
    let params = p(0.7, 2.5, 1.5, 2.0);
    let exact = occupations(&params).unwrap();
    let ode = vacuum_occupations(&propagate_ode(&params, 1e-11).unwrap());
    assert!((exact.n_s - ode.n_s).abs() < 1e-9);
    assert!((exact.n_i - ode.n_i).abs() < 1e-9);
    assert!((exact.n_b - ode.n_b).abs() < 1e-9);
}
