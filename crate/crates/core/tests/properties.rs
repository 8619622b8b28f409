use proptest::prelude::*;

use renorm_entropy::entropy::{gamma_ratio, h_hat, h_tilde, H_tilde};
use renorm_entropy::laws::DiscreteLaw;
use renorm_entropy::quantiles::{iqnr, quantile, rho_tilde_discrete};
use renorm_entropy::{parse_law, Law};

fn continuous_law() -> impl Strategy<Value = Law> {
    let scale = 0.05f64..20.0;
    let shape = 0.2f64..60.0;
    prop_oneof![
        scale.clone().prop_map(|a| Law::gaussian(a).unwrap()),
        scale.clone().prop_map(|a| Law::uniform(a).unwrap()),
        (shape.clone(), scale.clone()).prop_map(|(k, a)| Law::gamma(k, a).unwrap()),
        scale.clone().prop_map(|a| Law::exponential(a).unwrap()),
        scale.clone().prop_map(|a| Law::laplace(a).unwrap()),
        (shape, scale.clone()).prop_map(|(k, a)| Law::student(k, a).unwrap()),
        scale.prop_map(|a| Law::cauchy(a).unwrap()),
    ]
}

fn discrete_law() -> impl Strategy<Value = Law> {
    prop_oneof![
        (1u64..300, 0.01f64..0.99).prop_map(|(n, p)| Law::binomial(n, p).unwrap()),
        (0.1f64..80.0).prop_map(|l| Law::poisson(l).unwrap()),
        (2u64..200, 0.1f64..10.0).prop_map(|(n, a)| Law::discrete_uniform(n, a).unwrap()),
    ]
}

/// Up to 12 atoms whose masses are multiples of 1/256.
fn dyadic_atoms() -> impl Strategy<Value = (Vec<f64>, Vec<u32>)> {
    (2usize..=12)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(1u32..40, n),
                prop::collection::vec(0.1f64..5.0, n),
            )
        })
        .prop_map(|(raw, gaps)| {
            let total: u32 = raw.iter().sum();
            let mut counts: Vec<u32> = raw.iter().map(|r| r * 256 / total).collect();
            let rest = 256 - counts.iter().sum::<u32>();
            counts[0] += rest;
            let support = gaps
                .iter()
                .scan(0.0, |x, g| {
                    *x += g;
                    Some(*x)
                })
                .collect();
            (support, counts)
        })
}

fn dense_grid_rho(support: &[f64], counts: &[u32]) -> Option<f64> {
    const N: u64 = 4_000_000;
    let cum: Vec<u64> = counts
        .iter()
        .scan(0u64, |acc, &c| {
            *acc += u64::from(c);
            Some(*acc)
        })
        .collect();
    let first = |num: u64| cum.partition_point(|&ck| ck * N < num * 256);
    (1..=N / 4)
        .map(|i| support[first(N - i)] - support[first(i)])
        .filter(|&r| r > 0.0)
        .min_by(f64::total_cmp)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn continuous_renormalized_entropies_are_affine_invariant(
        law in continuous_law(), a in 0.05f64..20.0, b in -10.0f64..10.0,
    ) {
        let mapped = law.clone().affine(a, b).unwrap();
        prop_assert!((h_tilde(&mapped).unwrap() - h_tilde(&law).unwrap()).abs() <= 1e-10);
        if let Ok(v) = h_hat(&law) {
            prop_assert!((h_hat(&mapped).unwrap() - v).abs() <= 1e-10);
            prop_assert!(v >= 0.0);
        }
        if let Ok(g) = gamma_ratio(&law) {
            prop_assert!((gamma_ratio(&mapped).unwrap() - g).abs() <= 1e-10 * g.max(1.0));
        }
    }

    #[test]
    fn discrete_h_tilde_is_affine_invariant(
        law in discrete_law(), a in 0.05f64..20.0, b in -10.0f64..10.0,
    ) {
        let mapped = law.clone().affine(a, b).unwrap();
        prop_assert!((H_tilde(&mapped).unwrap() - H_tilde(&law).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn quantiles_commute_with_affine_maps(
        law in prop_oneof![continuous_law(), discrete_law()],
        a in 0.05f64..20.0, b in -10.0f64..10.0, p in 0.001f64..0.999,
    ) {
        let mapped = law.clone().affine(a, b).unwrap();
        let q = quantile(&law, p).unwrap();
        let qm = quantile(&mapped, p).unwrap();
        prop_assert!((qm - (a * q + b)).abs() <= 1e-12 * (1.0 + qm.abs()), "{qm} vs {}", a * q + b);
    }

    #[test]
    fn quantile_inverts_the_cdf(law in continuous_law(), p in 1e-9f64..(1.0 - 1e-9)) {
        let x = quantile(&law, p).unwrap();
        prop_assert!((law.cdf(x) - p).abs() <= 1e-10);
    }

    #[test]
    fn iqnr_is_nonincreasing(law in prop_oneof![continuous_law(), discrete_law()]) {
        let values: Vec<f64> = (1..50).map(|i| iqnr(&law, i as f64 / 100.0).unwrap()).collect();
        prop_assert!(values.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)), "{values:?}");
        prop_assert!(values.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn law_text_round_trips(law in prop_oneof![continuous_law(), discrete_law()], a in 0.05f64..20.0, b in -10.0f64..10.0) {
        let mapped = law.clone().affine(a, b).unwrap();
        for l in [law, mapped] {
            prop_assert_eq!(parse_law(&l.to_string()).unwrap(), l);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn discrete_rho_tilde_matches_dense_grid((support, counts) in dyadic_atoms()) {
        let masses = counts.iter().map(|&k| f64::from(k) / 256.0).collect();
        let law = DiscreteLaw::explicit(support.clone(), masses).unwrap();
        prop_assert_eq!(rho_tilde_discrete(&law).ok(), dense_grid_rho(&support, &counts));
    }
}
