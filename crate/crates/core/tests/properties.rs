use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use tpqhe_core::bath::EffectiveBath;
use tpqhe_core::engine::{engine_observables, maximize_power, Regime};
use tpqhe_core::lindblad::{
    eom_rhs, population_green_function, DensityMatrix, EomOptions, GreenPair, Level,
    TransportMatrix,
};
use tpqhe_core::params::{reduce, DimensionlessSet, PumpKind, PumpSpec, SystemParams};
use tpqhe_core::spdc::{theta_from_source, two_photon_correlation, Dipoles, JointAmplitude};
use tpqhe_core::special::{sinc, theta};
use tpqhe_core::{presets, units};

fn system() -> impl Strategy<Value = SystemParams> {
    (
        1e-6..1e-2f64,
        1e-6..1e-2f64,
        1e-6..1e-2f64,
        0.0..200.0f64,
        0.0..200.0f64,
        0.0..200.0f64,
    )
        .prop_map(|(g2, gc, ge, n2, nc, ne)| SystemParams {
            gamma_2: g2,
            gamma_c: gc,
            gamma_e: ge,
            n_2: n2,
            n_c: nc,
            n_e: ne,
            ..presets::fig3_system()
        })
}

/// Random Hermitian, unit-trace (not necessarily positive) matrix.
fn hermitian() -> impl Strategy<Value = DensityMatrix> {
    proptest::collection::vec(-1.0..1.0f64, 36).prop_map(|v| {
        let n = Level::COUNT;
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let (re, im) = (v[i * n + j], v[j * n + i]);
                m[(i, j)] = if i == j {
                    Complex64::new(re.abs(), 0.0)
                } else if i < j {
                    Complex64::new(re, im)
                } else {
                    Complex64::new(v[j * n + i], -v[i * n + j])
                };
            }
        }
        let tr = m.trace();
        DensityMatrix::from_matrix(m / tr)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generator_is_traceless_and_hermitian(
        p in system(),
        rho in hermitian(),
        rabi in 0.0..0.05f64,
        lambda in 0.0..0.2f64,
        e_prime in any::<bool>(),
    ) {
        let pump = PumpSpec::classical(1.3, rabi, 4e-3, lambda, 4e-3);
        let opts = EomOptions { e_prime_channel: e_prime, ..EomOptions::default() };
        let d = eom_rhs(&rho, 0.0, &p, &pump, &opts);
        let scale = d.matrix().iter().map(|z| z.norm()).fold(1e-300, f64::max);
        prop_assert!(d.trace().norm() <= 1e-12 * scale);
        prop_assert!(d.hermiticity_error() <= 1e-12 * scale);
    }

    #[test]
    fn transport_columns_sum_to_zero(p in system()) {
        let tm = TransportMatrix::from_params(&p);
        prop_assert!(tm.max_column_sum() <= 1e-15 * tm.kappa().amax());
        prop_assert!(TransportMatrix::new(tm.kappa().clone()).is_ok());
    }

    #[test]
    fn green_eigen_matches_closed_form(p in system(), x in 0.0..5.0f64) {
        let tm = TransportMatrix::from_params(&p);
        let t = x / (p.gamma_2 * (2.0 * p.n_2 + 1.0));
        let g = tm.green(t).unwrap();
        for pair in GreenPair::ALL {
            let (i, j) = pair.indices();
            prop_assert!((g[(i, j)] - population_green_function(pair, t, &p)).abs() <= 1e-10);
        }
    }

    #[test]
    fn theta_single_source(extra in 0.0..5e-3f64, t_ent in 0.0..5e3f64) {
        let mut p = presets::fig7_system();
        p.omega_2 += extra;
        let pump = presets::fig7_entangled_pump(t_ent);
        let ja = JointAmplitude::new(1.0, pump.omega_p, pump.sigma_p, t_ent, 1.0).unwrap();
        let a = theta_from_source(&p, &ja);
        prop_assert!((a - theta(t_ent, p.anharmonicity())).abs() <= 1e-12);
        prop_assert!((a - reduce(&p, &pump).unwrap().theta).abs() <= 1e-12);
    }

    #[test]
    fn carnot_ceiling(
        ln_nh in -6.0..6.0f64,
        ln_nc in -6.0..6.0f64,
        omega_c in 1e-3..0.1f64,
        ratio in 0.5..20.0f64,
        gamma_h in 1e-6..1e-2f64,
        gamma_c in 1e-6..1e-2f64,
        lambda in 1e-4..1e-1f64,
    ) {
        let mut p = presets::fig7_system();
        p.gamma_c = gamma_c;
        p.n_c = ln_nc.exp();
        p.omega_0 = omega_c;
        p.omega_1 = omega_c * ratio;
        let bath = EffectiveBath::from_occupation(ln_nh.exp(), gamma_h, p.omega_h());
        let pump = PumpSpec::classical(1.3, 0.0, 1e-3, lambda, 1e-3);
        let r = engine_observables(&bath, &p, &pump).unwrap();
        if r.regime == Regime::Engine {
            prop_assert!(r.efficiency <= r.eta_carnot + 1e-12);
            prop_assert!(r.heat_flux_h > 0.0);
        }
    }

    #[test]
    fn sinc_even_and_bounded(x in -1e4..1e4f64) {
        prop_assert_eq!(sinc(x), sinc(-x));
        prop_assert!(sinc(x).abs() <= 1.0);
    }

    #[test]
    fn correlation_exchange_symmetry(w1 in 0.3..1.0f64, w2 in 0.3..1.0f64, t in 0.0..1e3f64) {
        let ja = JointAmplitude::new(1.0, 1.3, 0.01, t, 1.0).unwrap();
        let d = Dipoles::default();
        let a = two_photon_correlation(w1, w2, &ja, &d).unwrap().norm();
        let b = two_photon_correlation(w2, w1, &ja, &d).unwrap().norm();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1e-300));
    }

    #[test]
    fn unit_conversion_is_linear(v in -1e3..1e3f64, k in 0.1..10.0f64) {
        for unit in [units::Unit::InverseCm, units::Unit::InversePs, units::Unit::Kelvin] {
            let a = units::to_internal_units(v * k, unit).unwrap();
            let b = k * units::to_internal_units(v, unit).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn maximum_dominates_grid(
        tau in 0.05..0.95f64,
        c_p in 2.0..50.0f64,
        l in 0.1..100.0f64,
        sigma in 0.2..5.0f64,
        u in 0.1..50.0f64,
        v in 0.01..1.0f64,
        alpha in 0.5..50.0f64,
        theta in 0.1..1.0f64,
    ) {
        let d = DimensionlessSet { tau, c_p, c_21: 0.0, lambda_prime: l, sigma_p_prime: sigma, u, v, alpha, theta };
        if let Ok(m) = maximize_power(PumpKind::EntangledTwoPhoton, &d, 1.0) {
            prop_assert!(m.is_stationary());
            for k in 1..200 {
                let c = (c_p - 1.0) * k as f64 / 200.0;
                let p = tpqhe_core::engine::power_entangled(&d.with_c21(c)).unwrap();
                prop_assert!(p <= m.p_max * (1.0 + 1e-12));
            }
        }
    }
}
