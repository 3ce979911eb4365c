//! Brute-force check of the amplifier statistics in the full two-photon
//! product space `C² ⊗ C²`, independent of the library's symmetric-subspace
//! algebra.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

use proptest::prelude::*;
use stimsig_core::{
    closed_form_probs, first_principles_probs, PolarizationAngle, ProbabilityTriple, Variant,
};

type Vec4 = [f64; 4];

fn photon(theta: f64) -> [f64; 2] {
    [theta.cos(), theta.sin()]
}

fn product(a: [f64; 2], b: [f64; 2]) -> Vec4 {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

fn add(a: Vec4, b: Vec4, ka: f64, kb: f64) -> Vec4 {
    [0, 1, 2, 3].map(|i| ka * a[i] + kb * b[i])
}

fn dot(a: Vec4, b: Vec4) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dipole-frame outcome vectors |00⟩, (|01⟩+|10⟩)/√2, |11⟩.
fn outcomes() -> [Vec4; 3] {
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
}

/// Unnormalized outcome weights for one input photon at `theta`.
fn input_weights(theta: f64, variant: Variant) -> [f64; 3] {
    let p = photon(theta);
    let q = photon(theta + FRAC_PI_2);
    let both_theta = product(p, p);
    let one_each = add(product(p, q), product(q, p), FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    let alpha = 2f64.sqrt() * theta.cos();
    let beta = theta.sin();
    let basis = outcomes();
    match variant {
        Variant::Distinguishable => basis.map(|o| {
            alpha * alpha * dot(o, both_theta).powi(2) + beta * beta * dot(o, one_each).powi(2)
        }),
        Variant::Identical => {
            let psi = add(both_theta, one_each, alpha, beta);
            basis.map(|o| dot(o, psi).powi(2))
        }
    }
}

fn brute_force(theta: f64, variant: Variant) -> ProbabilityTriple {
    let a = input_weights(theta, variant);
    let b = input_weights(theta + FRAC_PI_2, variant);
    let mixed = [0, 1, 2].map(|i| 0.5 * a[i] + 0.5 * b[i]);
    ProbabilityTriple::from_weights(mixed).unwrap()
}

#[test]
fn frozen_brute_force_values() {
    // values computed once with the oracle above and checked by hand
    let third = 1.0 / 3.0;
    let cases = [
        (0.0, Variant::Distinguishable, [2.0 * third, third, 0.0]),
        (FRAC_PI_8, Variant::Distinguishable, [0.5, third, 1.0 / 6.0]),
        (FRAC_PI_4, Variant::Distinguishable, [third, third, third]),
        (0.0, Variant::Identical, [2.0 * third, third, 0.0]),
        (FRAC_PI_8, Variant::Identical, [third, third, third]),
        (FRAC_PI_4, Variant::Identical, [0.0, third, 2.0 * third]),
    ];
    for (theta, variant, want) in cases {
        let got = brute_force(theta, variant);
        assert!(
            got.max_abs_diff(&ProbabilityTriple::from_array(want)) < 1e-12,
            "theta={theta} {variant}: {got:?}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn projection_route_matches_brute_force(theta in -10.0f64..10.0) {
        for variant in [Variant::Distinguishable, Variant::Identical] {
            let fp = first_principles_probs(PolarizationAngle::new(theta), variant);
            prop_assert!(fp.max_abs_diff(&brute_force(theta, variant)) < 1e-12);
        }
    }

    #[test]
    fn closed_forms_match_brute_force(theta in -10.0f64..10.0) {
        for variant in [Variant::Distinguishable, Variant::Identical] {
            let cf = closed_form_probs(PolarizationAngle::new(theta), variant);
            prop_assert!(cf.max_abs_diff(&brute_force(theta, variant)) < 1e-12);
        }
    }
}
