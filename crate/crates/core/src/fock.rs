//! Polarization states of one and two photons.
//!
//! Single-photon states live on the basis `{|0⟩, |π/2⟩}`, where `|0⟩` is
//! polarized along the atom's transition dipole. Two-photon states live in
//! the symmetric subspace with ordered basis
//!
//! ```text
//! index 0: |2,0⟩   both photons along the dipole
//! index 1: |1,1⟩   one photon in each mode, (|0⟩|π/2⟩ + |π/2⟩|0⟩)/√2
//! index 2: |0,2⟩   both photons perpendicular to the dipole
//! ```
//!
//! `|1,1⟩` sits in the middle so the rows of `U(θ)` read
//!
//! ```text
//! |2,0⟩^θ = cos²θ |2,0⟩ + (1/√2) sin2θ |1,1⟩ + sin²θ |0,2⟩
//! |1,1⟩^θ = -(1/√2) sin2θ |2,0⟩ + cos2θ |1,1⟩ + (1/√2) sin2θ |0,2⟩
//! |0,2⟩^θ = sin²θ |2,0⟩ - (1/√2) sin2θ |1,1⟩ + cos²θ |0,2⟩
//! ```
//!
//! Operators use the row convention: row `i` holds the dipole-frame
//! components of the `i`-th rotated basis state. [`RotationOperator3::apply`]
//! is the plain matrix-vector product.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for exact linear-algebra identities.
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for validating caller-supplied matrices.
pub const INPUT_TOL: f64 = 1e-9;

/// Angle between a photon's polarization and the transition dipole, kept in
/// `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(into = "f64", from = "f64")]
pub struct PolarizationAngle(f64);

impl PolarizationAngle {
    pub const ZERO: Self = Self(0.0);

    /// Canonicalizes any real angle modulo π.
    pub fn new(theta: f64) -> Self {
        let r = theta.rem_euclid(PI);
        // rem_euclid can round up to exactly π for tiny negative inputs
        Self(if r >= PI { 0.0 } else { r })
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// The orthogonal polarization `θ + π/2`.
    pub fn perpendicular(self) -> Self {
        Self::new(self.0 + PI / 2.0)
    }

    pub fn offset(self, delta: f64) -> Self {
        Self::new(self.0 + delta)
    }
}

impl From<f64> for PolarizationAngle {
    fn from(theta: f64) -> Self {
        Self::new(theta)
    }
}

impl From<PolarizationAngle> for f64 {
    fn from(angle: PolarizationAngle) -> f64 {
        angle.0
    }
}

impl fmt::Display for PolarizationAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rad", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinglePhotonState {
    pub parallel: Complex64,
    pub perpendicular: Complex64,
}

impl SinglePhotonState {
    pub fn norm_sqr(&self) -> f64 {
        self.parallel.norm_sqr() + self.perpendicular.norm_sqr()
    }
}

/// `|θ⟩ = cosθ |0⟩ + sinθ |π/2⟩`.
pub fn single_photon_state(theta: PolarizationAngle) -> SinglePhotonState {
    let (s, c) = theta.radians().sin_cos();
    SinglePhotonState {
        parallel: Complex64::new(c, 0.0),
        perpendicular: Complex64::new(s, 0.0),
    }
}

/// Two-photon occupation basis states, in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FockBasis {
    TwoZero,
    OneOne,
    ZeroTwo,
}

impl FockBasis {
    pub const ALL: [FockBasis; 3] = [FockBasis::TwoZero, FockBasis::OneOne, FockBasis::ZeroTwo];

    pub fn index(self) -> usize {
        match self {
            FockBasis::TwoZero => 0,
            FockBasis::OneOne => 1,
            FockBasis::ZeroTwo => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FockBasis::TwoZero => "|2,0>",
            FockBasis::OneOne => "|1,1>",
            FockBasis::ZeroTwo => "|0,2>",
        }
    }
}

/// Amplitudes over `(|2,0⟩, |1,1⟩, |0,2⟩)`.
///
/// Instances built through [`TwoPhotonState::new`] or [`TwoPhotonState::basis`]
/// are normalized. [`TwoPhotonState::unnormalized`] exists for intermediate
/// sums and records that fact in [`TwoPhotonState::is_normalized`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhotonState {
    amps: [Complex64; 3],
    normalized: bool,
}

impl TwoPhotonState {
    pub fn new(amps: [Complex64; 3]) -> Result<Self> {
        let norm_sqr = amps.iter().map(Complex64::norm_sqr).sum::<f64>();
        if (norm_sqr - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self {
            amps,
            normalized: true,
        })
    }

    pub fn from_real(amps: [f64; 3]) -> Result<Self> {
        Self::new(amps.map(|a| Complex64::new(a, 0.0)))
    }

    pub fn unnormalized(amps: [Complex64; 3]) -> Self {
        Self {
            amps,
            normalized: false,
        }
    }

    pub fn basis(which: FockBasis) -> Self {
        let mut amps = [Complex64::new(0.0, 0.0); 3];
        amps[which.index()] = Complex64::new(1.0, 0.0);
        Self {
            amps,
            normalized: true,
        }
    }

    pub fn amplitudes(&self) -> &[Complex64; 3] {
        &self.amps
    }

    pub fn amplitude(&self, which: FockBasis) -> Complex64 {
        self.amps[which.index()]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// Rescales to unit norm. Returns `None` for the zero vector.
    pub fn normalize(&self) -> Option<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return None;
        }
        Some(Self {
            amps: self.amps.map(|a| a / n),
            normalized: true,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::unnormalized(self.amps.map(|a| a * factor))
    }

    /// Componentwise sum; the result is flagged unnormalized.
    pub fn add(&self, other: &Self) -> Self {
        Self::unnormalized([
            self.amps[0] + other.amps[0],
            self.amps[1] + other.amps[1],
            self.amps[2] + other.amps[2],
        ])
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Squared moduli of the amplitudes, in basis order.
    pub fn populations(&self) -> [f64; 3] {
        self.amps.map(|a| a.norm_sqr())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `|⟨a|b⟩|²`. Both states are expected to be normalized.
pub fn projection_probability(a: &TwoPhotonState, b: &TwoPhotonState) -> f64 {
    debug_assert!(a.is_normalized() && b.is_normalized());
    a.inner(b).norm_sqr()
}

/// A real 2×2 matrix on the single-photon basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationOperator2 {
    entries: [[f64; 2]; 2],
}

impl RotationOperator2 {
    pub fn from_entries(entries: [[f64; 2]; 2]) -> Self {
        Self { entries }
    }

    /// Rows are `|θ⟩` and `|θ+π/2⟩` in dipole-frame components.
    pub fn rotation(theta: PolarizationAngle) -> Self {
        let (s, c) = theta.radians().sin_cos();
        Self {
            entries: [[c, s], [-s, c]],
        }
    }

    pub fn identity() -> Self {
        Self {
            entries: [[1.0, 0.0], [0.0, 1.0]],
        }
    }

    pub fn entries(&self) -> &[[f64; 2]; 2] {
        &self.entries
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.entries;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Largest entry of `|MᵀM − I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let m = &self.entries;
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let dot = m[0][i] * m[0][j] + m[1][i] * m[1][j];
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// A real 3×3 matrix on the ordered basis `(|2,0⟩, |1,1⟩, |0,2⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationOperator3 {
    entries: [[f64; 3]; 3],
}

impl RotationOperator3 {
    pub fn from_entries(entries: [[f64; 3]; 3]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        let mut entries = [[0.0; 3]; 3];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { entries }
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = [[0.0; 3]; 3];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t[j][i] = *v;
            }
        }
        Self { entries: t }
    }

    /// Row `which` as a state: for `U(θ)` this is the rotated basis state
    /// (e.g. `|2,0⟩^θ`) written in the dipole frame.
    pub fn row_state(&self, which: FockBasis) -> TwoPhotonState {
        let row = self.entries[which.index()];
        TwoPhotonState::unnormalized(row.map(|v| Complex64::new(v, 0.0)))
    }

    /// Matrix-vector product. Keeps the normalization flag of the input.
    pub fn apply(&self, state: &TwoPhotonState) -> TwoPhotonState {
        let v = state.amplitudes();
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (o, row) in out.iter_mut().zip(self.entries.iter()) {
            *o = row.iter().zip(v.iter()).map(|(m, a)| a * *m).sum();
        }
        TwoPhotonState {
            amps: out,
            normalized: state.is_normalized(),
        }
    }

    pub fn orthogonality_defect(&self) -> f64 {
        (self.transpose() * *self).max_abs_diff(&Self::identity())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Mul for RotationOperator3 {
    type Output = RotationOperator3;

    fn mul(self, rhs: Self) -> Self {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.entries[i][k] * rhs.entries[k][j]).sum();
            }
        }
        Self { entries: out }
    }
}

/// `U(θ)` written out from its closed form.
pub fn two_photon_rotation(theta: PolarizationAngle) -> RotationOperator3 {
    let t = theta.radians();
    let (s, c) = t.sin_cos();
    let (s2, c2) = (2.0 * t).sin_cos();
    let h = FRAC_1_SQRT_2 * s2;
    RotationOperator3 {
        entries: [[c * c, h, s * s], [-h, c2, h], [s * s, -h, c * c]],
    }
}

/// Restricts `R ⊗ R` to the symmetric subspace.
///
/// Computes `Vᵀ (R ⊗ R) V` where `V` is the 4×3 isometry embedding
/// `|2,0⟩ → |00⟩`, `|1,1⟩ → (|01⟩ + |10⟩)/√2`, `|0,2⟩ → |11⟩`.
pub fn symmetric_lift(rot: &RotationOperator2) -> Result<RotationOperator3> {
    let deviation = rot.orthogonality_defect();
    if deviation > INPUT_TOL {
        return Err(Error::NotOrthogonal { deviation });
    }
    let r = rot.entries();

    // Kronecker product on the product basis |ab⟩, index 2a + b.
    let mut kron = [[0.0; 4]; 4];
    for (i, row) in kron.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = r[i / 2][j / 2] * r[i % 2][j % 2];
        }
    }

    let h = FRAC_1_SQRT_2;
    let embed: [[f64; 3]; 4] = [
        [1.0, 0.0, 0.0],
        [0.0, h, 0.0],
        [0.0, h, 0.0],
        [0.0, 0.0, 1.0],
    ];

    let mut out = [[0.0; 3]; 3];
    for (a, row) in out.iter_mut().enumerate() {
        for (b, v) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    acc += embed[i][a] * kron[i][j] * embed[j][b];
                }
            }
            *v = acc;
        }
    }
    Ok(RotationOperator3::from_entries(out))
}

/// Projection of `|a⟩ ⊗ |b⟩` onto the symmetric subspace.
///
/// For `a = b` the result is the normalized state with both photons in `a`;
/// for orthogonal `a`, `b` the normalized symmetric state is `√2` times it.
pub fn two_photon_product(a: &SinglePhotonState, b: &SinglePhotonState) -> TwoPhotonState {
    let (a0, a1) = (a.parallel, a.perpendicular);
    let (b0, b1) = (b.parallel, b.perpendicular);
    let cross = (a0 * b1 + a1 * b0) / SQRT_2;
    TwoPhotonState::unnormalized([a0 * b0, cross, a1 * b1])
}

/// A rotated basis state such as `|1,1⟩^θ`, in dipole-frame components.
pub fn rotated_basis(theta: PolarizationAngle, which: FockBasis) -> TwoPhotonState {
    // rows of an orthogonal matrix are unit vectors
    TwoPhotonState {
        normalized: true,
        ..two_photon_rotation(theta).row_state(which)
    }
}

pub fn apply(rot: &RotationOperator3, state: &TwoPhotonState) -> TwoPhotonState {
    rot.apply(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    fn angle(t: f64) -> PolarizationAngle {
        PolarizationAngle::new(t)
    }

    #[test]
    fn canonical_range() {
        assert_eq!(angle(PI).radians(), 0.0);
        assert!((angle(-FRAC_PI_4).radians() - 3.0 * FRAC_PI_4).abs() < 1e-15);
        assert_eq!(angle(-1e-18).radians(), 0.0);
        for k in -5..5 {
            let a = angle(0.3 + k as f64 * PI).radians();
            assert!((0.0..PI).contains(&a));
            assert!((a - 0.3).abs() < 1e-12);
        }
    }

    #[test]
    fn single_photon_examples() {
        let s = single_photon_state(angle(0.0));
        assert_eq!((s.parallel.re, s.perpendicular.re), (1.0, 0.0));
        let s = single_photon_state(angle(FRAC_PI_2));
        assert!(s.parallel.re.abs() < 1e-15 && (s.perpendicular.re - 1.0).abs() < 1e-15);
        let s = single_photon_state(angle(FRAC_PI_4));
        assert!((s.parallel.re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.perpendicular.re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_at_zero_is_identity() {
        assert!(
            two_photon_rotation(angle(0.0)).max_abs_diff(&RotationOperator3::identity()) < 1e-15
        );
    }

    #[test]
    fn rotation_at_quarter_pi() {
        let row = two_photon_rotation(angle(FRAC_PI_4)).row_state(FockBasis::TwoZero);
        let want = TwoPhotonState::from_real([0.5, FRAC_1_SQRT_2, 0.5]).unwrap();
        assert!(row.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn rotation_at_half_pi() {
        let u = two_photon_rotation(angle(FRAC_PI_2));
        let r20 = u.row_state(FockBasis::TwoZero);
        assert!(r20.max_abs_diff(&TwoPhotonState::basis(FockBasis::ZeroTwo)) < 1e-12);
        let r11 = u.row_state(FockBasis::OneOne);
        let minus_11 = TwoPhotonState::basis(FockBasis::OneOne).scale(Complex64::new(-1.0, 0.0));
        assert!(r11.max_abs_diff(&minus_11) < 1e-12);
    }

    #[test]
    fn apply_examples() {
        let s = TwoPhotonState::from_real([0.6, 0.0, 0.8]).unwrap();
        assert!(apply(&two_photon_rotation(angle(0.0)), &s).max_abs_diff(&s) < 1e-15);

        let out = apply(
            &two_photon_rotation(angle(FRAC_PI_2)),
            &TwoPhotonState::basis(FockBasis::TwoZero),
        );
        assert!(out.max_abs_diff(&TwoPhotonState::basis(FockBasis::ZeroTwo)) < 1e-12);
        assert!(out.is_normalized());
    }

    #[test]
    fn projection_examples() {
        let b20 = TwoPhotonState::basis(FockBasis::TwoZero);
        let b11 = TwoPhotonState::basis(FockBasis::OneOne);
        assert_eq!(projection_probability(&b20, &b20), 1.0);
        assert_eq!(projection_probability(&b20, &b11), 0.0);
        let rotated = two_photon_rotation(angle(FRAC_PI_4))
            .row_state(FockBasis::TwoZero)
            .normalize()
            .unwrap();
        assert!((projection_probability(&b20, &rotated) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn lift_identity_and_quarter_pi() {
        let id = symmetric_lift(&RotationOperator2::identity()).unwrap();
        assert!(id.max_abs_diff(&RotationOperator3::identity()) < 1e-15);
        let lifted = symmetric_lift(&RotationOperator2::rotation(angle(FRAC_PI_4))).unwrap();
        assert!(lifted.max_abs_diff(&two_photon_rotation(angle(FRAC_PI_4))) < 1e-12);
    }

    #[test]
    fn lift_rejects_non_orthogonal() {
        let skew = RotationOperator2::from_entries([[1.0, 0.1], [0.0, 1.0]]);
        assert!(matches!(
            symmetric_lift(&skew),
            Err(Error::NotOrthogonal { .. })
        ));
        // within input tolerance is accepted
        let nearly = RotationOperator2::from_entries([[1.0 + 1e-11, 0.0], [0.0, 1.0]]);
        assert!(symmetric_lift(&nearly).is_ok());
    }

    #[test]
    fn product_route_matches_rows() {
        let t = angle(FRAC_PI_8 * 3.0);
        let p = single_photon_state(t);
        let q = single_photon_state(t.perpendicular());
        let u = two_photon_rotation(t);
        assert!(two_photon_product(&p, &p).max_abs_diff(&u.row_state(FockBasis::TwoZero)) < 1e-12);
        let pq = two_photon_product(&p, &q).scale(Complex64::new(SQRT_2, 0.0));
        assert!(pq.max_abs_diff(&u.row_state(FockBasis::OneOne)) < 1e-12);
        assert!(two_photon_product(&q, &q).max_abs_diff(&u.row_state(FockBasis::ZeroTwo)) < 1e-12);
    }

    #[test]
    fn new_rejects_unnormalized() {
        assert!(matches!(
            TwoPhotonState::from_real([1.0, 1.0, 0.0]),
            Err(Error::NotNormalized { .. })
        ));
        let u = TwoPhotonState::unnormalized([Complex64::new(2.0, 0.0); 3]);
        assert!(!u.is_normalized());
        assert!(u.normalize().unwrap().is_normalized());
    }
}
