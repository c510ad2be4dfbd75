//! Shared domain types.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coupling constant λ of the model. The quadratic coefficient λ′ is tied
/// to λ; only the symmetric model is supported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct OscillatorConfig {
    lambda: f64,
}

impl OscillatorConfig {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda.is_finite() && lambda > 0.0 {
            Ok(Self { lambda })
        } else {
            Err(Error::InvalidCoupling(lambda))
        }
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Coefficient of the (x1² + x2²)/3 term; always equal to λ.
    #[inline]
    pub fn lambda_prime(&self) -> f64 {
        self.lambda
    }
}

impl TryFrom<f64> for OscillatorConfig {
    type Error = Error;
    fn try_from(lambda: f64) -> Result<Self> {
        Self::new(lambda)
    }
}

impl From<OscillatorConfig> for f64 {
    fn from(c: OscillatorConfig) -> f64 {
        c.lambda
    }
}

/// Occupation numbers (n1, n2) of the two quasiparticle modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuasiParticleState {
    pub n1: u32,
    pub n2: u32,
}

impl QuasiParticleState {
    pub const fn new(n1: u32, n2: u32) -> Self {
        Self { n1, n2 }
    }

    pub const fn swapped(self) -> Self {
        Self {
            n1: self.n2,
            n2: self.n1,
        }
    }

    /// Total quantum number n1 + n2.
    pub const fn shell(self) -> u32 {
        self.n1 + self.n2
    }

    /// The state shifted by `delta`, or `None` if an occupation would go negative.
    pub fn shifted(self, delta: (i32, i32)) -> Option<Self> {
        let n1 = i64::from(self.n1) + i64::from(delta.0);
        let n2 = i64::from(self.n2) + i64::from(delta.1);
        if n1 < 0 || n2 < 0 {
            None
        } else {
            Some(Self::new(n1 as u32, n2 as u32))
        }
    }
}

impl fmt::Display for QuasiParticleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n1, self.n2)
    }
}

/// Variational frequencies (γ1, γ2) defining the quasiparticle ladder operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaPair {
    gamma1: f64,
    gamma2: f64,
}

impl GammaPair {
    pub fn new(gamma1: f64, gamma2: f64) -> Result<Self> {
        let ok = |g: f64| g.is_finite() && g > 0.0;
        if ok(gamma1) && ok(gamma2) {
            Ok(Self { gamma1, gamma2 })
        } else {
            Err(Error::InvalidGamma(gamma1, gamma2))
        }
    }

    /// Both modes at the same frequency.
    pub fn symmetric(gamma: f64) -> Result<Self> {
        Self::new(gamma, gamma)
    }

    #[inline]
    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    #[inline]
    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    pub fn swapped(self) -> Self {
        Self {
            gamma1: self.gamma2,
            gamma2: self.gamma1,
        }
    }
}

impl fmt::Display for GammaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.gamma1, self.gamma2)
    }
}

/// One eigenvalue with its normalized eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// How computed levels are matched to occupation labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelRule {
    /// Position in the sorted spectrum with multiplicity, filling shells of
    /// constant `n1 + n2` in turn. The diagonal state `(N/2, N/2)` takes the
    /// first slot of an even shell; each pair `{(n1, n2), (n2, n1)}` with
    /// `n1 < n2` then takes two slots in order of increasing `n1`, and both
    /// members map to the first.
    #[default]
    ShellOrder,
    /// Injective greedy matching by squared overlap with the product trial
    /// function at the state's own γ*. Overlaps of at most ½ are rejected.
    Overlap,
}

/// A reference level matched to an occupation label.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LabeledLevel {
    pub state: QuasiParticleState,
    /// Position in the ascending spectrum.
    pub index: usize,
    pub energy: f64,
    /// Squared overlap with the trial state used for labeling.
    pub overlap: f64,
}

/// How an [`EnergyEstimate`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    LeadingOrder,
    SecondOrder,
    SecondOrderDegenerate,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order::LeadingOrder => "leading",
            Order::SecondOrder => "second",
            Order::SecondOrderDegenerate => "second-degenerate",
        })
    }
}

/// A perturbative energy together with the inputs that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyEstimate {
    pub value: f64,
    pub order: Order,
    pub state: QuasiParticleState,
    pub gamma: GammaPair,
    pub lambda: f64,
}
