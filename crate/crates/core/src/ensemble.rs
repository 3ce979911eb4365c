//! Outcome statistics for a mixture of incoming polarizations.
//!
//! The reference ensemble is the equal mixture of `|θ⟩` and `|θ+π/2⟩`.
//! Probabilities are conditioned on a two-photon outcome and reported over
//! the dipole-frame basis `(|2,0⟩, |1,1⟩, |0,2⟩)`. Three routes compute them:
//!
//! - [`closed_form_probs`] evaluates the known trigonometric expressions;
//! - [`first_principles_probs`] scatters each input through the amplifier,
//!   projects every branch onto the dipole basis and normalizes by the total
//!   two-photon weight, using no closed forms at all;
//! - [`monte_carlo_probs`] samples individual shots.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amplifier::{scatter, ScatteredState, Variant};
use crate::error::{Error, Result};
use crate::fock::{FockBasis, PolarizationAngle, EXACT_TOL};
use crate::rng;

/// Largest two-photon weight `1 + cos²θ` any single input can produce, in
/// units of `λ² dΩ`. Shots are accepted with probability `weight / ENVELOPE`.
pub const ENVELOPE: f64 = 2.0;

/// Accepted outcomes per independent Monte Carlo chunk.
pub const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityTriple {
    pub p20: f64,
    pub p11: f64,
    pub p02: f64,
}

impl ProbabilityTriple {
    pub fn from_array([p20, p11, p02]: [f64; 3]) -> Self {
        Self { p20, p11, p02 }
    }

    /// Normalizes nonnegative weights. `None` if they sum to zero.
    pub fn from_weights(weights: [f64; 3]) -> Option<Self> {
        let total: f64 = weights.iter().sum();
        (total > 0.0).then(|| Self::from_array(weights.map(|w| w / total)))
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p20, self.p11, self.p02]
    }

    pub fn get(&self, which: FockBasis) -> f64 {
        self.as_array()[which.index()]
    }

    pub fn sum(&self) -> f64 {
        self.p20 + self.p11 + self.p02
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Weighted polarization inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureEnsemble {
    entries: Vec<(f64, PolarizationAngle)>,
}

impl MixtureEnsemble {
    pub fn new(entries: Vec<(f64, PolarizationAngle)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidMixture("no entries".into()));
        }
        if let Some((w, _)) = entries.iter().find(|(w, _)| !w.is_finite() || *w <= 0.0) {
            return Err(Error::InvalidMixture(format!("weight {w} is not positive")));
        }
        let total: f64 = entries.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > EXACT_TOL {
            return Err(Error::InvalidMixture(format!("weights sum to {total}")));
        }
        Ok(Self { entries })
    }

    /// `½|θ⟩⟨θ| + ½|θ+π/2⟩⟨θ+π/2|` as an ensemble.
    pub fn equal_orthogonal(theta: PolarizationAngle) -> Self {
        Self {
            entries: vec![(0.5, theta), (0.5, theta.perpendicular())],
        }
    }

    pub fn entries(&self) -> &[(f64, PolarizationAngle)] {
        &self.entries
    }

    /// Mixture-averaged outcome weights and total two-photon weight, both in
    /// units of `λ² dΩ`.
    pub fn outcome_weights(&self, variant: Variant) -> ([f64; 3], f64) {
        let mut weights = [0.0; 3];
        let mut total = 0.0;
        for &(p, theta) in &self.entries {
            let out = scatter(theta, variant);
            for (w, o) in weights.iter_mut().zip(out.outcome_weights()) {
                *w += p * o;
            }
            total += p * out.total_weight();
        }
        (weights, total)
    }

    pub fn probabilities(&self, variant: Variant) -> ProbabilityTriple {
        let (weights, total) = self.outcome_weights(variant);
        // every input has two-photon weight ≥ 1
        ProbabilityTriple::from_array(weights.map(|w| w / total))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CountTriple {
    pub n20: u64,
    pub n11: u64,
    pub n02: u64,
}

impl CountTriple {
    pub fn total(&self) -> u64 {
        self.n20 + self.n11 + self.n02
    }

    pub fn record(&mut self, which: FockBasis) {
        match which {
            FockBasis::TwoZero => self.n20 += 1,
            FockBasis::OneOne => self.n11 += 1,
            FockBasis::ZeroTwo => self.n02 += 1,
        }
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            n20: self.n20 + other.n20,
            n11: self.n11 + other.n11,
            n02: self.n02 + other.n02,
        }
    }

    pub fn estimate(&self) -> Result<ProbabilityTriple> {
        let n = self.total();
        if n == 0 {
            return Err(Error::EmptySample);
        }
        let n = n as f64;
        Ok(ProbabilityTriple {
            p20: self.n20 as f64 / n,
            p11: self.n11 as f64 / n,
            p02: self.n02 as f64 / n,
        })
    }
}

/// `½(1 + cos²2θ)`: differential `|2,0⟩` rate of the equal mixture in units
/// of `λ² dΩ`, distinguishable atom states.
pub fn differential_sigma_20(theta: PolarizationAngle) -> f64 {
    let c2 = (2.0 * theta.radians()).cos();
    0.5 * (1.0 + c2 * c2)
}

pub fn closed_form_probs(theta: PolarizationAngle, variant: Variant) -> ProbabilityTriple {
    let (s2, c2) = (2.0 * theta.radians()).sin_cos();
    let (cc, ss) = (c2 * c2, s2 * s2);
    match variant {
        Variant::Distinguishable => ProbabilityTriple {
            p20: (1.0 + cc) / 3.0,
            p11: 1.0 / 3.0,
            p02: ss / 3.0,
        },
        Variant::Identical => ProbabilityTriple {
            p20: 2.0 * cc / 3.0,
            p11: 1.0 / 3.0,
            p02: 2.0 * ss / 3.0,
        },
    }
}

/// Projection route for the equal `θ`/`θ+π/2` mixture.
pub fn first_principles_probs(theta: PolarizationAngle, variant: Variant) -> ProbabilityTriple {
    MixtureEnsemble::equal_orthogonal(theta).probabilities(variant)
}

/// One input's shot model: branch weights and the dipole-frame outcome
/// distribution of each branch.
struct InputModel {
    branch_weights: Vec<f64>,
    branch_outcomes: Vec<[f64; 3]>,
    total: f64,
}

impl InputModel {
    fn new(state: &ScatteredState) -> Self {
        let (branch_weights, branch_outcomes): (Vec<_>, Vec<_>) = match state {
            ScatteredState::Distinguishable { branches } => branches
                .iter()
                .map(|b| (b.weight(), b.photon_state.populations()))
                .unzip(),
            ScatteredState::Identical { coherent, weight } => {
                (vec![*weight], vec![coherent.populations()])
            }
        };
        let total = branch_weights.iter().sum();
        Self {
            branch_weights,
            branch_outcomes,
            total,
        }
    }
}

struct ShotSampler {
    input_weights: Vec<f64>,
    inputs: Vec<InputModel>,
}

impl ShotSampler {
    fn new(ensemble: &MixtureEnsemble, variant: Variant) -> Self {
        let (input_weights, inputs) = ensemble
            .entries()
            .iter()
            .map(|&(w, theta)| (w, InputModel::new(&scatter(theta, variant))))
            .unzip();
        Self {
            input_weights,
            inputs,
        }
    }

    /// Draws shots until one yields a two-photon event.
    ///
    /// Per shot: pick the input (inverse CDF over mixture weights), then
    /// draw `u ∈ [0, ENVELOPE)` against the input's branch weights; `u`
    /// beyond the total weight is a shot with no two-photon event and is
    /// discarded. The accepted branch's dipole-frame outcome is drawn last.
    fn draw<R: Rng>(&self, rng: &mut R) -> FockBasis {
        loop {
            let input = &self.inputs[rng::inverse_cdf(&self.input_weights, rng.random::<f64>())];
            let u = rng.random::<f64>() * ENVELOPE;
            if u > input.total {
                continue;
            }
            let branch = rng::inverse_cdf(&input.branch_weights, u);
            let outcome = rng::inverse_cdf(&input.branch_outcomes[branch], rng.random::<f64>());
            return FockBasis::ALL[outcome];
        }
    }

    fn run_chunk(&self, seed: u64, chunk: u64, n: u64) -> CountTriple {
        let mut rng = rng::stream(seed, chunk);
        let mut counts = CountTriple::default();
        for _ in 0..n {
            counts.record(self.draw(&mut rng));
        }
        counts
    }
}

/// Counts over `n` two-photon outcomes for an arbitrary ensemble.
///
/// Work is split into chunks of [`CHUNK`] outcomes; chunk `k` draws from
/// stream `k` of `seed`, so the counts do not depend on thread scheduling.
pub fn monte_carlo_counts(
    ensemble: &MixtureEnsemble,
    variant: Variant,
    n: u64,
    seed: u64,
) -> Result<CountTriple> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let sampler = ShotSampler::new(ensemble, variant);
    debug_assert!(sampler
        .inputs
        .iter()
        .all(|i| i.total <= ENVELOPE + EXACT_TOL));
    let chunks = n.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|k| {
            let len = CHUNK.min(n - k * CHUNK);
            sampler.run_chunk(seed, k, len)
        })
        .reduce(CountTriple::default, CountTriple::merge))
}

/// Seeded Monte Carlo estimate for the equal `θ`/`θ+π/2` mixture.
pub fn monte_carlo_probs(
    theta: PolarizationAngle,
    variant: Variant,
    n: u64,
    seed: u64,
) -> Result<(CountTriple, ProbabilityTriple)> {
    let counts = monte_carlo_counts(&MixtureEnsemble::equal_orthogonal(theta), variant, n, seed)?;
    let estimate = counts.estimate()?;
    Ok((counts, estimate))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Grid angle as requested, before canonicalization.
    pub theta: f64,
    pub probs: ProbabilityTriple,
    pub sigma20: f64,
}

/// Closed-form probabilities on a uniform grid including both endpoints.
pub fn sweep(
    theta_min: f64,
    theta_max: f64,
    steps: usize,
    variant: Variant,
) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(Error::TooFewSteps(steps));
    }
    for (name, value) in [("theta_min", theta_min), ("theta_max", theta_max)] {
        if !value.is_finite() {
            return Err(Error::NonFinite { name, value });
        }
    }
    if theta_min >= theta_max {
        return Err(Error::EmptyRange {
            min: theta_min,
            max: theta_max,
        });
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            let theta = if i == steps - 1 {
                theta_max
            } else {
                theta_min + (theta_max - theta_min) * i as f64 / last
            };
            let angle = PolarizationAngle::new(theta);
            SweepRow {
                theta,
                probs: closed_form_probs(angle, variant),
                sigma20: differential_sigma_20(angle),
            }
        })
        .collect())
}
