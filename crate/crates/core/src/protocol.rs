//! EPR-pair signaling through the amplifier.
//!
//! Alice measures her half of each pair in the `{θ, θ+π/2}` basis; Bob's
//! photon is then `|θ⟩` or `|θ+π/2⟩` with equal probability. Bob feeds it
//! through the amplifier and estimates `p̂₂₀`. The sender encodes bit 0 or 1
//! through the choice of `θ`, and Bob decodes with a midpoint threshold.
//!
//! Bob's reduced state is `I/2` for every `θ`, so any map acting linearly on
//! density matrices gives him `θ`-independent statistics. [`linearity_gap`]
//! reports how far the amplifier model departs from that.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amplifier::Variant;
use crate::ensemble::{closed_form_probs, monte_carlo_probs};
use crate::error::{Error, Result};
use crate::fock::{single_photon_state, PolarizationAngle, SinglePhotonState, EXACT_TOL};
use crate::rng;

/// Bob's conditional input after Alice measures in the `{θ, θ+π/2}` basis.
pub fn epr_conditional_input(theta: PolarizationAngle, seed: u64) -> PolarizationAngle {
    let mut r = rng::stream(seed, 0);
    if r.random::<f64>() < 0.5 {
        theta
    } else {
        theta.perpendicular()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub theta_bit0: PolarizationAngle,
    pub theta_bit1: PolarizationAngle,
    pub pairs_per_bit: u64,
    pub variant: Variant,
    pub seed: u64,
}

impl ProtocolConfig {
    /// Symbols at `0` and `π/4`, distinguishable atom states.
    pub fn new(pairs_per_bit: u64, seed: u64) -> Self {
        Self {
            theta_bit0: PolarizationAngle::ZERO,
            theta_bit1: PolarizationAngle::new(FRAC_PI_4),
            pairs_per_bit,
            variant: Variant::Distinguishable,
            seed,
        }
    }

    /// Expected `p₂₀` for each symbol.
    pub fn symbol_levels(&self) -> (f64, f64) {
        (
            closed_form_probs(self.theta_bit0, self.variant).p20,
            closed_form_probs(self.theta_bit1, self.variant).p20,
        )
    }

    pub fn threshold(&self) -> f64 {
        let (p0, p1) = self.symbol_levels();
        0.5 * (p0 + p1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.pairs_per_bit == 0 {
            return Err(Error::EmptySample);
        }
        let indistinguishable = Error::IndistinguishableSymbols {
            theta0: self.theta_bit0.radians(),
            theta1: self.theta_bit1.radians(),
        };
        // p₂₀ has period π/2 in θ
        let d = (self.theta_bit0.radians() - self.theta_bit1.radians()).rem_euclid(FRAC_PI_2);
        if d < 1e-9 || FRAC_PI_2 - d < 1e-9 {
            return Err(indistinguishable);
        }
        let (p0, p1) = self.symbol_levels();
        if (p0 - p1).abs() < EXACT_TOL {
            return Err(indistinguishable);
        }
        Ok(())
    }

    /// Nearest-level decision on `p̂₂₀`; an estimate exactly on the
    /// threshold decodes to 0.
    pub fn decode(&self, p20_hat: f64) -> bool {
        let (p0, p1) = self.symbol_levels();
        let mid = 0.5 * (p0 + p1);
        if p1 < p0 {
            p20_hat < mid
        } else {
            p20_hat > mid
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransmissionReport {
    pub sent_bits: Vec<bool>,
    pub decoded_bits: Vec<bool>,
    pub per_bit_estimates: Vec<f64>,
    pub threshold: f64,
    pub error_rate: f64,
}

impl TransmissionReport {
    pub fn errors(&self) -> usize {
        self.sent_bits
            .iter()
            .zip(&self.decoded_bits)
            .filter(|(a, b)| a != b)
            .count()
    }
}

/// Sends `bits` using `pairs_per_bit` two-photon outcomes per bit.
///
/// Bit `i` draws from seed `derive_seed(config.seed, i)`.
pub fn transmit(config: &ProtocolConfig, bits: &[bool]) -> Result<TransmissionReport> {
    if bits.is_empty() {
        return Err(Error::EmptyBits);
    }
    config.validate()?;
    let estimates = bits
        .par_iter()
        .enumerate()
        .map(|(i, &bit)| {
            let theta = if bit {
                config.theta_bit1
            } else {
                config.theta_bit0
            };
            let seed = rng::derive_seed(config.seed, i as u64);
            monte_carlo_probs(theta, config.variant, config.pairs_per_bit, seed).map(|(_, p)| p.p20)
        })
        .collect::<Result<Vec<f64>>>()?;
    let decoded_bits: Vec<bool> = estimates.iter().map(|&p| config.decode(p)).collect();
    let mut report = TransmissionReport {
        sent_bits: bits.to_vec(),
        decoded_bits,
        per_bit_estimates: estimates,
        threshold: config.threshold(),
        error_rate: 0.0,
    };
    report.error_rate = report.errors() as f64 / bits.len() as f64;
    Ok(report)
}

/// Hermitian 2×2 density matrix over `{|0⟩, |π/2⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    entries: [[Complex64; 2]; 2],
}

impl DensityMatrix2 {
    pub fn from_entries(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn pure(state: &SinglePhotonState) -> Self {
        let v = [state.parallel, state.perpendicular];
        let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = v[i] * v[j].conj();
            }
        }
        Self { entries }
    }

    pub fn maximally_mixed() -> Self {
        let h = Complex64::new(0.5, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Self {
            entries: [[h, z], [z, h]],
        }
    }

    /// `Σ pᵢ ρᵢ`.
    pub fn mix(parts: &[(f64, DensityMatrix2)]) -> Self {
        let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (p, rho) in parts {
            for (row, src) in entries.iter_mut().zip(rho.entries.iter()) {
                for (e, s) in row.iter_mut().zip(src) {
                    *e += s * *p;
                }
            }
        }
        Self { entries }
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let e = &self.entries;
        (e[0][0].im.abs())
            .max(e[1][1].im.abs())
            .max((e[0][1] - e[1][0].conj()).norm())
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.entries[0][0].re;
        let d = self.entries[1][1].re;
        let b = 0.5 * (self.entries[0][1] + self.entries[1][0].conj());
        let half_gap = (0.25 * (a - d).powi(2) + b.norm_sqr()).sqrt();
        let mean = 0.5 * (a + d);
        [mean - half_gap, mean + half_gap]
    }

    pub fn is_valid(&self) -> bool {
        self.hermiticity_defect() <= EXACT_TOL
            && (self.trace() - Complex64::new(1.0, 0.0)).norm() <= EXACT_TOL
            && self.eigenvalues()[0] >= -EXACT_TOL
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Bob's state averaged over Alice's outcomes: `½|θ⟩⟨θ| + ½|θ⊥⟩⟨θ⊥|`.
pub fn reduced_density(theta: PolarizationAngle) -> DensityMatrix2 {
    DensityMatrix2::mix(&[
        (0.5, DensityMatrix2::pure(&single_photon_state(theta))),
        (
            0.5,
            DensityMatrix2::pure(&single_photon_state(theta.perpendicular())),
        ),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearityReport {
    pub theta: PolarizationAngle,
    pub variant: Variant,
    /// Amplifier-model `p₂₀` for the `θ` mixture.
    pub p_model: f64,
    /// `p₂₀` any density-matrix-linear map would give on `I/2`.
    pub p_linear: f64,
    /// `p_model − p_linear`.
    pub gap: f64,
}

/// A linear map sees only `I/2`, whatever decomposition produced it, so its
/// prediction is evaluated once on the dipole-basis decomposition (`θ = 0`).
pub fn linearity_gap(theta: PolarizationAngle, variant: Variant) -> LinearityReport {
    let p_model = closed_form_probs(theta, variant).p20;
    let p_linear = closed_form_probs(PolarizationAngle::ZERO, variant).p20;
    LinearityReport {
        theta,
        variant,
        p_model,
        p_linear,
        gap: p_model - p_linear,
    }
}
