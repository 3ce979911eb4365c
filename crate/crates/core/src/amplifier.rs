//! Single-atom stimulated-emission amplifier.
//!
//! An incoming photon `|θ⟩` leaves the system in
//!
//! ```text
//! α_θ |2,0⟩^θ |g_θ⟩ + β_θ |1,1⟩^θ |g_{θ+π/2}⟩
//! ```
//!
//! with `|α_θ|² = 2cos²θ` and `|β_θ|² = sin²θ` in units of `λ² dΩ`. Amplitudes
//! are taken real and signed: `α_θ = √2 cosθ`, `β_θ = sinθ`. No `|0,2⟩^θ`
//! branch is produced for input `|θ⟩`.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{rotated_basis, FockBasis, PolarizationAngle, TwoPhotonState};

/// Whether the atom's two final states are orthogonal or the same state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `|g_θ⟩ ≠ |g_{θ+π/2}⟩`: the two branches add incoherently.
    #[default]
    Distinguishable,
    /// `|g_θ⟩ = |g_{θ+π/2}⟩`: the two branches add coherently.
    Identical,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Distinguishable => "distinguishable",
            Variant::Identical => "identical",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "distinguishable" | "d" => Ok(Variant::Distinguishable),
            "identical" | "i" => Ok(Variant::Identical),
            other => Err(format!(
                "unknown variant '{other}', expected 'distinguishable' or 'identical'"
            )),
        }
    }
}

/// Physical constants entering the emission rate `λ²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmissionConstants {
    pub omega: f64,
    pub mu: f64,
    pub hbar: f64,
    pub c: f64,
}

impl Default for EmissionConstants {
    /// Natural units with unit frequency and dipole moment.
    fn default() -> Self {
        Self {
            omega: 1.0,
            mu: 1.0,
            hbar: 1.0,
            c: 1.0,
        }
    }
}

impl EmissionConstants {
    /// `λ² = ω³μ² / (8π²ħc³)`.
    pub fn lambda_squared(&self) -> Result<f64> {
        for (name, value) in [
            ("omega", self.omega),
            ("mu", self.mu),
            ("hbar", self.hbar),
            ("c", self.c),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
            if value <= 0.0 {
                return Err(Error::NonPositive { name, value });
            }
        }
        Ok(self.omega.powi(3) * self.mu.powi(2) / (8.0 * PI * PI * self.hbar * self.c.powi(3)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AtomTag {
    /// `|g_θ⟩`, paired with the `|2,0⟩^θ` branch.
    GTheta,
    /// `|g_{θ+π/2}⟩`, paired with the `|1,1⟩^θ` branch.
    GThetaPerp,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplifierBranch {
    /// Branch photon state in the dipole frame.
    pub photon_state: TwoPhotonState,
    pub atom: AtomTag,
    pub amplitude: Complex64,
}

impl AmplifierBranch {
    /// `|amplitude|²` in units of `λ² dΩ`.
    pub fn weight(&self) -> f64 {
        self.amplitude.norm_sqr()
    }
}

/// Stimulated-emission weights for input `|θ⟩`, in units of `λ² dΩ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchWeights {
    pub w20: f64,
    pub w11: f64,
}

impl BranchWeights {
    pub fn total(&self) -> f64 {
        self.w20 + self.w11
    }
}

/// `(2cos²θ, sin²θ)`. The weights for input `|θ+π/2⟩` are
/// `branch_weights(theta.perpendicular())`.
pub fn branch_weights(theta: PolarizationAngle) -> BranchWeights {
    let [alpha, beta] = branch_amplitudes(theta);
    BranchWeights {
        w20: alpha * alpha,
        w11: beta * beta,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScatteredState {
    Distinguishable {
        branches: Vec<AmplifierBranch>,
    },
    Identical {
        /// Normalized coherent photon state.
        coherent: TwoPhotonState,
        /// Total two-photon weight `1 + cos²θ` in units of `λ² dΩ`.
        weight: f64,
    },
}

impl ScatteredState {
    pub fn variant(&self) -> Variant {
        match self {
            ScatteredState::Distinguishable { .. } => Variant::Distinguishable,
            ScatteredState::Identical { .. } => Variant::Identical,
        }
    }

    pub fn total_weight(&self) -> f64 {
        match self {
            ScatteredState::Distinguishable { branches } => {
                branches.iter().map(AmplifierBranch::weight).sum()
            }
            ScatteredState::Identical { weight, .. } => *weight,
        }
    }

    /// Unnormalized weight of each dipole-frame outcome, in units of `λ² dΩ`.
    ///
    /// Distinguishable branches are summed as probabilities; the identical
    /// case projects the coherent state.
    pub fn outcome_weights(&self) -> [f64; 3] {
        match self {
            ScatteredState::Distinguishable { branches } => {
                let mut out = [0.0; 3];
                for b in branches {
                    for (o, p) in out.iter_mut().zip(b.photon_state.populations()) {
                        *o += b.weight() * p;
                    }
                }
                out
            }
            ScatteredState::Identical { coherent, weight } => {
                coherent.populations().map(|p| p * weight)
            }
        }
    }
}

/// Real branch amplitudes `(√2 cosθ, sinθ)`.
pub fn branch_amplitudes(theta: PolarizationAngle) -> [f64; 2] {
    let (s, c) = theta.radians().sin_cos();
    [SQRT_2 * c, s]
}

fn branches(theta: PolarizationAngle) -> [AmplifierBranch; 2] {
    let [a, b] = branch_amplitudes(theta);
    [
        AmplifierBranch {
            photon_state: rotated_basis(theta, FockBasis::TwoZero),
            atom: AtomTag::GTheta,
            amplitude: Complex64::new(a, 0.0),
        },
        AmplifierBranch {
            photon_state: rotated_basis(theta, FockBasis::OneOne),
            atom: AtomTag::GThetaPerp,
            amplitude: Complex64::new(b, 0.0),
        },
    ]
}

/// Amplifier output for an incoming photon `|θ⟩`.
pub fn scatter(theta: PolarizationAngle, variant: Variant) -> ScatteredState {
    let [alpha, beta] = branches(theta);
    match variant {
        Variant::Distinguishable => ScatteredState::Distinguishable {
            branches: vec![alpha, beta],
        },
        Variant::Identical => {
            let sum = alpha
                .photon_state
                .scale(alpha.amplitude)
                .add(&beta.photon_state.scale(beta.amplitude));
            let weight = sum.norm_sqr();
            // weight = 1 + cos²θ ≥ 1, never zero
            let coherent = sum.normalize().expect("coherent weight is at least 1");
            ScatteredState::Identical { coherent, weight }
        }
    }
}
