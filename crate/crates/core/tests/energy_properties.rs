use std::num::NonZeroU32;

use proptest::prelude::*;
use wsnsim_core::energy::{
    aggregation_cost, cpu_cost, path_loss_exponent, rx_cost, total_cost, tx_cost,
};
use wsnsim_core::EnergyParams;

fn params() -> impl Strategy<Value = EnergyParams> {
    (
        1e-9..1e-7f64,
        1e-13..1e-8f64,
        1e-9..1e-7f64,
        1e-9..1e-7f64,
        10.0..200.0f64,
    )
        .prop_map(|(e_elec, e_amp, e_cpu, e_da, d0)| EnergyParams {
            e_elec,
            e_amp,
            e_cpu,
            e_da,
            d0,
            ..EnergyParams::default()
        })
}

fn bits() -> impl Strategy<Value = NonZeroU32> {
    (1u32..100_000).prop_map(|k| NonZeroU32::new(k).unwrap())
}

proptest! {
    #[test]
    fn total_is_sum_of_parts(k in bits(), d in 0.0..300.0f64, p in params()) {
        let parts = tx_cost(k, d, &p) + rx_cost(k, &p) + cpu_cost(k, &p);
        prop_assert_eq!(total_cost(k, d, &p), parts);

        // Second route: k * (2 e_elec + e_cpu + e_amp d^y).
        let y = path_loss_exponent(d, p.d0) as i32;
        let closed = f64::from(k.get()) * (2.0 * p.e_elec + p.e_cpu + p.e_amp * d.powi(y));
        prop_assert!((total_cost(k, d, &p) - closed).abs() <= 1e-12 * closed);
    }

    #[test]
    fn costs_are_linear_in_k(k in 1u32..50_000, d in 0.0..300.0f64, n in 1u32..50, p in params()) {
        let one = NonZeroU32::new(1).unwrap();
        let k_nz = NonZeroU32::new(k).unwrap();
        let n_nz = NonZeroU32::new(n).unwrap();
        let kf = f64::from(k);
        let rel = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs();
        prop_assert!(rel(tx_cost(k_nz, d, &p), kf * tx_cost(one, d, &p)));
        prop_assert!(rel(rx_cost(k_nz, &p), kf * rx_cost(one, &p)));
        prop_assert!(rel(cpu_cost(k_nz, &p), kf * cpu_cost(one, &p)));
        prop_assert!(rel(aggregation_cost(k_nz, n_nz, &p), kf * aggregation_cost(one, n_nz, &p)));
    }

    #[test]
    fn costs_are_non_negative(k in bits(), d in 0.0..1000.0f64, n in 1u32..200, p in params()) {
        let n = NonZeroU32::new(n).unwrap();
        prop_assert!(tx_cost(k, d, &p) >= 0.0);
        prop_assert!(rx_cost(k, &p) >= 0.0);
        prop_assert!(cpu_cost(k, &p) >= 0.0);
        prop_assert!(aggregation_cost(k, n, &p) >= 0.0);
    }

    #[test]
    fn tx_increases_within_each_regime(k in bits(), a in 0.0..1.0f64, b in 0.0..1.0f64, p in params()) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-6);
        // Near regime [0, d0].
        prop_assert!(tx_cost(k, lo * p.d0, &p) < tx_cost(k, hi * p.d0, &p));
        // Far regime (d0, 3 d0].
        let far = |t: f64| p.d0 * (1.0 + 1e-9 + 2.0 * t);
        prop_assert!(tx_cost(k, far(lo), &p) < tx_cost(k, far(hi), &p));
    }
}
