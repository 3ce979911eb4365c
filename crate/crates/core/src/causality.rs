//! 1+1-dimensional Lorentz kinematics and the two-frame superluminal relay.
//!
//! Layout, all events in the lab frame `S` with `c = 1`:
//!
//! ```text
//!  Alice(1) at x = 0, at rest in S          Bob(1) at x = L, at rest in S
//!  Alice(2), Bob(2) at rest in S', moving at +beta
//!
//!  1. Alice(1) emits at (0, 0); signal at speed u in S reaches Bob(1).
//!  2. Light leg of length ell in S from Bob(1) to Alice(2).
//!  3. Alice(2) sends back toward -x at speed u in S'; Bob(2) sits where
//!     the final light leg to Alice(1) has length ell in S.
//!  4. Light leg from Bob(2) to Alice(1) at x = 0.
//! ```
//!
//! The loop is violated when the message returns to Alice(1) before it was
//! sent. With `ell = 0` that happens for `beta > 2u / (1 + u²)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance below which `1 + v·beta` counts as zero.
pub const SINGULAR_TOL: f64 = 1e-12;
/// Absolute width at which [`violation_threshold`] stops bisecting.
pub const THRESHOLD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub x: f64,
}

impl Event {
    pub fn new(t: f64, x: f64) -> Self {
        Self { t, x }
    }

    /// `t² − x²`.
    pub fn interval(&self) -> f64 {
        self.t * self.t - self.x * self.x
    }
}

fn check_beta(beta: f64) -> Result<f64> {
    if !beta.is_finite() {
        return Err(Error::NonFinite {
            name: "beta",
            value: beta,
        });
    }
    if beta.abs() >= 1.0 {
        return Err(Error::Superluminal(beta));
    }
    Ok(1.0 / (1.0 - beta * beta).sqrt())
}

/// Coordinates of `e` in a frame moving at `beta` along `+x`.
pub fn boost(e: Event, beta: f64) -> Result<Event> {
    let gamma = check_beta(beta)?;
    Ok(Event {
        t: gamma * (e.t - beta * e.x),
        x: gamma * (e.x - beta * e.t),
    })
}

/// S-frame velocity of a signal moving at `v` in a frame that moves at `beta`.
///
/// Fails with [`Error::InfiniteVelocity`] when `1 + v·beta` vanishes: the
/// signal is instantaneous in `S`.
pub fn compose_velocity(v: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let denom = 1.0 + v * beta;
    if denom.abs() < SINGULAR_TOL {
        return Err(Error::InfiniteVelocity);
    }
    Ok((v + beta) / denom)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoopConfig {
    /// Superluminal channel speed, in each sender's rest frame.
    pub u: f64,
    /// Speed of frame S' relative to S.
    pub beta: f64,
    /// Superluminal channel length in the sender's frame.
    pub length: f64,
    /// Length of each light leg in S.
    pub light_length: f64,
}

impl LoopConfig {
    pub fn new(u: f64, beta: f64, length: f64) -> Self {
        Self {
            u,
            beta,
            length,
            light_length: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("u", self.u),
            ("beta", self.beta),
            ("length", self.length),
            ("light_length", self.light_length),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        if self.u <= 0.0 {
            return Err(Error::NonPositive {
                name: "u",
                value: self.u,
            });
        }
        if self.length <= 0.0 {
            return Err(Error::NonPositive {
                name: "length",
                value: self.length,
            });
        }
        if self.light_length < 0.0 {
            return Err(Error::NonPositive {
                name: "light_length",
                value: self.light_length,
            });
        }
        if !(0.0..1.0).contains(&self.beta) {
            return Err(Error::Superluminal(self.beta));
        }
        if self.u <= self.beta {
            return Err(Error::UnreachableReturn {
                u: self.u,
                beta: self.beta,
            });
        }
        Ok(())
    }
}

/// Events along the signal path, in path order, all in the lab frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoopReport {
    pub emission: Event,
    /// Bob(1) receives the first superluminal signal.
    pub bob1: Event,
    /// Alice(2) receives the light relay.
    pub alice2: Event,
    /// Bob(2) receives the second superluminal signal.
    pub bob2: Event,
    pub arrival: Event,
    pub delta_t: f64,
    pub violated: bool,
}

impl LoopReport {
    pub fn events(&self) -> [(&'static str, Event); 5] {
        [
            ("emission", self.emission),
            ("bob1", self.bob1),
            ("alice2", self.alice2),
            ("bob2", self.bob2),
            ("arrival", self.arrival),
        ]
    }
}

/// Traces the relay and reports whether it closes a causal loop.
///
/// The return leg is parametrized in S', where it is an ordinary signal of
/// speed `u`, and its displacement is boosted back to S. This stays finite when the leg is
/// instantaneous in S (`u·beta = 1`).
pub fn run_loop(cfg: &LoopConfig) -> Result<LoopReport> {
    cfg.validate()?;
    let LoopConfig {
        u,
        beta,
        length,
        light_length: ell,
    } = *cfg;

    let emission = Event::new(0.0, 0.0);
    let bob1 = Event::new(length / u, length);
    let alice2 = Event::new(bob1.t + ell, bob1.x + ell);

    // S'-distance d covered toward -x takes d/u of S' time. Its S-frame
    // displacement is γ·d·(β/u − 1); choose d so it lands at x = ell.
    // Boosting the displacement rather than the endpoints keeps γ from
    // amplifying rounding in the absolute coordinates.
    let gamma = check_beta(beta)?;
    let d = (alice2.x - ell) / (gamma * (1.0 - beta / u));
    let leg = boost(Event::new(d / u, -d), -beta)?;
    let bob2 = Event::new(alice2.t + leg.t, alice2.x + leg.x);

    let arrival = Event::new(bob2.t + bob2.x, 0.0);
    let delta_t = arrival.t - emission.t;
    Ok(LoopReport {
        emission,
        bob1,
        alice2,
        bob2,
        arrival,
        delta_t,
        violated: delta_t < 0.0,
    })
}

/// Smallest frame speed at which the zero-light-leg relay violates
/// causality, found by bisection on [`run_loop`].
///
/// Returns `Ok(None)` for `u ≤ 1`: such channels never close a loop.
pub fn violation_threshold(u: f64, length: f64) -> Result<Option<f64>> {
    LoopConfig::new(u, 0.0, length).validate()?;
    if u <= 1.0 {
        return Ok(None);
    }
    let violated = |beta: f64| run_loop(&LoopConfig::new(u, beta, length)).map(|r| r.violated);

    let mut lo = 0.0;
    let mut hi = 1.0 - f64::EPSILON;
    if !violated(hi)? {
        return Ok(Some(hi));
    }
    while hi - lo > THRESHOLD_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if violated(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}
