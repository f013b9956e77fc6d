//! CODATA 2018 constants and the unit conversions between SI, electronvolts
//! and natural (Heaviside-Lorentz, ħ = c = 1) units.
//!
//! Field-strength conversion: the magnetic energy density is `B²/(2μ₀)` in SI and
//! `B_nat²/2` in Heaviside-Lorentz units, so with lengths measured in `(ħc)/eV`
//!
//! ```text
//! B_nat [eV²] = B [T] · sqrt( (ħc [eV·m])³ / (μ₀ · e) )  ≈ 195.35 eV² per tesla
//! ```
//!
//! where `e` converts joules to electronvolts.

use crate::scalar::Real;

/// Fixed CODATA 2018 values in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Bohr magneton, J/T.
    pub mu_bohr: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Electronvolt, J.
    pub electronvolt: f64,
    /// Vacuum magnetic permeability, N/A².
    pub mu_0: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    mu_bohr: 9.274_010_078_3e-24,
    c: 299_792_458.0,
    electronvolt: 1.602_176_634e-19,
    mu_0: 1.256_637_062_12e-6,
};

pub const HBAR: f64 = CODATA_2018.hbar;
pub const MU_BOHR: f64 = CODATA_2018.mu_bohr;
pub const SPEED_OF_LIGHT: f64 = CODATA_2018.c;
pub const ELECTRONVOLT: f64 = CODATA_2018.electronvolt;
pub const MU_0: f64 = CODATA_2018.mu_0;

/// Electronvolts per inverse GeV, i.e. `1 GeV⁻¹ = 1e-9 eV⁻¹`.
pub const INVERSE_GEV_IN_INVERSE_EV: f64 = 1e-9;

/// Vacuum birefringence coefficient quoted for standard QED, per T².
pub const QED_BIREFRINGENCE_PER_T2: f64 = 4e-24;

impl PhysicalConstants {
    /// ħ in eV·s.
    pub fn hbar_ev_s(&self) -> f64 {
        self.hbar / self.electronvolt
    }

    /// ħc in eV·m.
    pub fn hbar_c_ev_m(&self) -> f64 {
        self.hbar * self.c / self.electronvolt
    }

    /// μ_B in eV/T.
    pub fn mu_bohr_ev_per_tesla(&self) -> f64 {
        self.mu_bohr / self.electronvolt
    }

    /// eV² per tesla in Heaviside-Lorentz natural units.
    pub fn tesla_in_ev2(&self) -> f64 {
        (self.hbar_c_ev_m().powi(3) / (self.mu_0 * self.electronvolt)).sqrt()
    }
}

pub(crate) fn hbar_ev_s<T: Real>() -> T {
    T::lit(CODATA_2018.hbar_ev_s())
}

pub(crate) fn mu_bohr_ev<T: Real>() -> T {
    T::lit(CODATA_2018.mu_bohr_ev_per_tesla())
}

pub fn ev_to_joule<T: Real>(e: T) -> T {
    e * T::lit(ELECTRONVOLT)
}

pub fn joule_to_ev<T: Real>(e: T) -> T {
    e / T::lit(ELECTRONVOLT)
}

/// Magnetic field in tesla to eV² (Heaviside-Lorentz, ħ = c = 1).
pub fn tesla_to_ev2<T: Real>(b: T) -> T {
    b * T::lit(CODATA_2018.tesla_in_ev2())
}

pub fn ev2_to_tesla<T: Real>(b: T) -> T {
    b / T::lit(CODATA_2018.tesla_in_ev2())
}

/// Length in metres to eV⁻¹.
pub fn meter_to_inverse_ev<T: Real>(l: T) -> T {
    l / T::lit(CODATA_2018.hbar_c_ev_m())
}

pub fn inverse_ev_to_meter<T: Real>(l: T) -> T {
    l * T::lit(CODATA_2018.hbar_c_ev_m())
}

/// Standard-QED vacuum birefringence `n∥ − n⊥ ≈ 4e-24 B²`, B in tesla.
pub fn qed_reference_birefringence<T: Real>(b: T) -> T {
    T::lit(QED_BIREFRINGENCE_PER_T2) * b * b
}
