//! Dictionary between the composite-photon parameters and an axion-like
//! particle (ALP) coupled to two photons, and the ALP conversion probability
//! for side-by-side comparison.
//!
//! ALP mixing in a transverse field `B` is the two-level problem
//! `[[0, gB/2], [gB/2, −m_a²/2ω]]` in wavenumber units (ħ = c = 1), so
//!
//! ```text
//! P = sin²2θ_a · sin²(Δ̄_a L / 2),  Δ̄_a = sqrt((m_a²/2ω)² + (gB)²),  sin2θ_a = gB/Δ̄_a
//! ```
//!
//! Matching it term by term with the composite-photon block
//! `[[E₁, βμ_B B], [βμ_B B, E₀]]` at `τ = L/c` gives `Δ = m_a²/2ω` and
//! `βμ_B B = gB/2`. Those two factors are the [`DictionaryConvention`].

use serde::{Deserialize, Serialize};

use crate::constants::{
    meter_to_inverse_ev, mu_bohr_ev, tesla_to_ev2, INVERSE_GEV_IN_INVERSE_EV,
};
use crate::dynamics::{conversion_probability, ModelParams};
use crate::error::{invalid, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxionParams<T> {
    /// ALP mass, eV.
    #[serde(rename = "m_a_ev")]
    pub m_a: T,
    /// Two-photon coupling, GeV⁻¹.
    #[serde(rename = "g_gev_inv")]
    pub g: T,
    /// Photon energy, eV.
    #[serde(rename = "omega_ev")]
    pub omega: T,
}

impl<T: Real> AxionParams<T> {
    pub fn new(m_a: T, g: T, omega: T) -> Result<Self> {
        let a = Self { m_a, g, omega };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: T| x.is_finite() && x > T::zero();
        if !positive(self.m_a) {
            return Err(invalid("m_a_ev", "must be finite and positive"));
        }
        if !(self.g.is_finite() && self.g >= T::zero()) {
            return Err(invalid("g_gev_inv", "must be finite and non-negative"));
        }
        if !positive(self.omega) {
            return Err(invalid("omega_ev", "must be finite and positive"));
        }
        Ok(())
    }

    /// Coupling in eV⁻¹.
    pub fn g_inverse_ev(&self) -> T {
        self.g * T::lit(INVERSE_GEV_IN_INVERSE_EV)
    }

    /// Diagonal splitting `m_a²/2ω`, eV.
    pub fn splitting(&self) -> T {
        self.m_a * self.m_a / (T::lit(2.0) * self.omega)
    }

    pub fn with_omega(&self, omega: T) -> Self {
        Self { omega, ..*self }
    }
}

/// Numeric factors of the parameter dictionary:
/// `Δ = delta_factor · m_a²/ω` and `βμ_B B = coupling_factor · g B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DictionaryConvention<T> {
    pub delta_factor: T,
    pub coupling_factor: T,
}

impl<T: Real> DictionaryConvention<T> {
    /// The factors that make both two-level problems identical (`½`, `½`).
    pub fn matched() -> Self {
        Self {
            delta_factor: T::lit(0.5),
            coupling_factor: T::lit(0.5),
        }
    }

    /// `Δ = m_a²/ω` read literally, off-diagonal still `gB/2`. Does not
    /// reproduce ALP probabilities; kept for comparison.
    pub fn literal() -> Self {
        Self {
            delta_factor: T::one(),
            coupling_factor: T::lit(0.5),
        }
    }
}

impl<T: Real> Default for DictionaryConvention<T> {
    fn default() -> Self {
        Self::matched()
    }
}

/// Model parameters equivalent to `a`. `β` does not depend on the field
/// because both off-diagonal elements are linear in `B`.
pub fn to_model_params<T: Real>(
    a: &AxionParams<T>,
    convention: &DictionaryConvention<T>,
) -> ModelParams<T> {
    let delta = convention.delta_factor * a.m_a * a.m_a / a.omega;
    let beta = convention.coupling_factor * a.g_inverse_ev() * tesla_to_ev2(T::one())
        / mu_bohr_ev::<T>();
    ModelParams { delta, beta }
}

/// Inverse of [`to_model_params`] at photon energy `omega`.
pub fn from_model_params<T: Real>(
    p: &ModelParams<T>,
    omega: T,
    convention: &DictionaryConvention<T>,
) -> AxionParams<T> {
    let m_a = (p.delta * omega / convention.delta_factor).sqrt();
    let g_ev = p.beta * mu_bohr_ev::<T>() / (convention.coupling_factor * tesla_to_ev2(T::one()));
    AxionParams {
        m_a,
        g: g_ev / T::lit(INVERSE_GEV_IN_INVERSE_EV),
        omega,
    }
}

/// Exact two-level ALP conversion probability after a field region of length `l` (m).
pub fn axion_conversion_probability<T: Real>(a: &AxionParams<T>, b: T, l: T) -> T {
    let mixing = a.g_inverse_ev() * tesla_to_ev2(b);
    let split = a.splitting().hypot(mixing);
    if split == T::zero() {
        return T::zero();
    }
    let s = mixing / split * (split * meter_to_inverse_ev(l) / T::lit(2.0)).sin();
    s * s
}

/// Lengths (m) of the first `count` zeros of the ALP probability.
pub fn alp_node_lengths<T: Real>(a: &AxionParams<T>, b: T, count: usize) -> Vec<T> {
    let split = a.splitting().hypot(a.g_inverse_ev() * tesla_to_ev2(b));
    let hbar_c = T::lit(crate::constants::CODATA_2018.hbar_c_ev_m());
    (1..=count)
        .map(|k| T::lit(2.0) * T::PI() * T::from_usize(k).unwrap() / split * hbar_c)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareRow<T> {
    pub length_m: T,
    pub p_fusion_omega1: T,
    pub p_fusion_omega2: T,
    pub p_alp_omega1: T,
    pub p_alp_omega2: T,
}

/// `P(L)` of both models at photon energies `a.omega` and `omega_ratio · a.omega`.
///
/// The composite-photon probability has no photon-energy input, so its two
/// columns coincide; the ALP columns do not.
pub fn oscillation_scaling_report<T: Real>(
    a: &AxionParams<T>,
    p: &ModelParams<T>,
    b: T,
    lengths: &[T],
    omega_ratio: T,
) -> Vec<CompareRow<T>> {
    let c = T::lit(crate::constants::SPEED_OF_LIGHT);
    let second = a.with_omega(a.omega * omega_ratio);
    // one fusion evaluation per energy, even though neither depends on it
    let fusion_at = |_omega: T, l: T| conversion_probability(p, b, l / c);
    lengths
        .iter()
        .map(|&l| CompareRow {
            length_m: l,
            p_fusion_omega1: fusion_at(a.omega, l),
            p_fusion_omega2: fusion_at(second.omega, l),
            p_alp_omega1: axion_conversion_probability(a, b, l),
            p_alp_omega2: axion_conversion_probability(&second, b, l),
        })
        .collect()
}
