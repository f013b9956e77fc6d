//! Magnetic mixing of the spin-1 `|1,0⟩` photon with the spin-0 `|0,0⟩`
//! partner, its time evolution, and the optical observables that follow.
//!
//! Energies are in eV, times in s, fields in T. The Hamiltonian of the coupled
//! block is `[[E₁, V], [V, E₀]]` with `E₁ = −Δ/4`, `E₀ = 3Δ/4` and
//! `V = β μ_B B`. Every closed form is evaluated through the splitting
//! `Δ̄ = hypot(Δ, 2V)` so that `Δ = 0` and `B = 0` need no special formulas.
//!
//! Sign conventions: the phase difference is `arctan[cos2θ · tan x] − Δτ/2ħ`
//! with `x = Δ̄τ/2ħ`, taken on the branch that is continuous in `τ` from zero.
//! Its sign relative to a laboratory retardance convention is not fixed by the
//! model; the value is reported exactly as that expression.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::constants::{self, hbar_ev_s, mu_bohr_ev};
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;
use crate::spin::{polarization_state, PolarizationSpec, StateVector};

/// Free parameters of the composite-photon model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams<T> {
    /// Triplet-singlet splitting Δ, eV.
    #[serde(rename = "delta_ev")]
    pub delta: T,
    /// Constituent magnetic moment in Bohr magnetons.
    pub beta: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(delta: T, beta: T) -> Result<Self> {
        let p = Self { delta, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta.is_finite() && self.delta >= T::zero()) {
            return Err(invalid("delta_ev", "must be finite and non-negative"));
        }
        if !(self.beta.is_finite() && self.beta >= T::zero()) {
            return Err(invalid("beta", "must be finite and non-negative"));
        }
        Ok(())
    }

    /// Off-diagonal element `β μ_B B` in eV.
    pub fn coupling(&self, b: T) -> T {
        self.beta * mu_bohr_ev::<T>() * b
    }

    /// Dressed splitting `Δ̄ = sqrt(Δ² + (2βμ_B B)²)` in eV.
    pub fn dressed_splitting(&self, b: T) -> T {
        self.delta.hypot(T::lit(2.0) * self.coupling(b))
    }
}

/// How the beam's linear polarization sits relative to the field (along `z`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry<T> {
    /// Polarization and propagation along lab axes.
    Axes(PolarizationSpec),
    /// Propagation across the field with polarization at this angle (rad) to it.
    AngleToField(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldRegion<T> {
    /// Field strength, T.
    pub b: T,
    /// Field length, m.
    pub l: T,
    pub passes: u32,
    pub geometry: Geometry<T>,
}

impl<T: Real> FieldRegion<T> {
    pub fn new(b: T, l: T, passes: u32, geometry: Geometry<T>) -> Result<Self> {
        let r = Self {
            b,
            l,
            passes,
            geometry,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b.is_finite() && self.b >= T::zero()) {
            return Err(invalid("b_tesla", "must be finite and non-negative"));
        }
        if !(self.l.is_finite() && self.l > T::zero()) {
            return Err(invalid("l_meter", "must be finite and positive"));
        }
        if self.passes < 1 {
            return Err(invalid("passes", "must be at least 1"));
        }
        match self.geometry {
            Geometry::Axes(spec) => spec.validate(),
            Geometry::AngleToField(a) if !a.is_finite() => {
                Err(invalid("polarization_angle_to_b_rad", "must be finite"))
            }
            Geometry::AngleToField(_) => Ok(()),
        }
    }

    /// Single-pass transit time `L/c`.
    pub fn transit_time(&self) -> T {
        self.l / T::lit(constants::SPEED_OF_LIGHT)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedEigensystem<T> {
    pub theta: T,
    pub e_bar_1: T,
    pub e_bar_0: T,
    pub delta_bar: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observables<T> {
    /// Single-pass `γ₁ → γ₀` probability of the field-parallel component.
    pub p_conversion: T,
    /// Apparent rotation of the polarization plane over all passes, rad.
    #[serde(rename = "rotation_rad")]
    pub rotation: T,
    /// Single-pass phase difference of the field-parallel component, rad.
    #[serde(rename = "phase_diff_rad")]
    pub phase_diff: T,
    /// Ellipticity over all passes, rad.
    #[serde(rename = "ellipticity_rad")]
    pub ellipticity: T,
    /// Apparent birefringence `n∥ − n⊥` from the single-pass `δφ/2`.
    pub birefringence: T,
}

/// Mixing angle `θ = ½ atan2(2βμ_B B, Δ)`, in `[0, π/4]`.
pub fn mixing_angle<T: Real>(params: &ModelParams<T>, b: T) -> T {
    T::lit(0.5) * (T::lit(2.0) * params.coupling(b)).atan2(params.delta)
}

pub fn eigensystem<T: Real>(params: &ModelParams<T>, b: T) -> MixedEigensystem<T> {
    let delta = params.delta;
    let delta_bar = params.dressed_splitting(b);
    // (E₁ + E₀)/2 = Δ/4
    let centre = delta * T::lit(0.25);
    let half = T::lit(0.5) * delta_bar;
    MixedEigensystem {
        theta: mixing_angle(params, b),
        e_bar_1: centre - half,
        e_bar_0: centre + half,
        delta_bar,
    }
}

/// `(cos2θ, sin2θ)`, with `(1, 0)` when nothing couples.
fn double_angle<T: Real>(params: &ModelParams<T>, b: T) -> (T, T) {
    let delta_bar = params.dressed_splitting(b);
    if delta_bar == T::zero() {
        return (T::one(), T::zero());
    }
    (
        params.delta / delta_bar,
        T::lit(2.0) * params.coupling(b) / delta_bar,
    )
}

fn cis<T: Real>(phase: T) -> Complex<T> {
    let (s, c) = phase.sin_cos();
    Complex::new(c, s)
}

/// Exact evolution under a field switched on for `tau` seconds.
///
/// `|1,±1⟩` only pick up `exp(−iE₁τ/ħ)`; the `(|1,0⟩, |0,0⟩)` block is
/// multiplied by `exp(−iΔτ/4ħ)·[cos x − i sin x (−cos2θ σ_z + sin2θ σ_x)]`.
pub fn evolve<T: Real>(
    state: &StateVector<T>,
    params: &ModelParams<T>,
    b: T,
    tau: T,
) -> StateVector<T> {
    type S = StateVector<f64>;
    let hbar = hbar_ev_s::<T>();
    let e1 = -params.delta * T::lit(0.25);
    let x = params.dressed_splitting(b) * tau / (T::lit(2.0) * hbar);
    let (cos2, sin2) = double_angle(params, b);
    let (sx, cx) = x.sin_cos();
    let global = cis(-params.delta * T::lit(0.25) * tau / hbar);

    let u00 = global * Complex::new(cx, cos2 * sx);
    let u11 = global * Complex::new(cx, -cos2 * sx);
    let u01 = global * Complex::new(T::zero(), -sin2 * sx);

    let a = &state.amplitudes;
    let spectator = cis(-e1 * tau / hbar);
    let mut out = [Complex::new(T::zero(), T::zero()); 4];
    out[S::PLUS] = a[S::PLUS] * spectator;
    out[S::MINUS] = a[S::MINUS] * spectator;
    out[S::ZERO] = u00 * a[S::ZERO] + u01 * a[S::SINGLET];
    out[S::SINGLET] = u01 * a[S::ZERO] + u11 * a[S::SINGLET];
    StateVector::new(out)
}

/// `P(γ₁→γ₀) = sin²2θ · sin²(Δ̄τ/2ħ)` with `sin2θ = 2βμ_B B/Δ̄`.
pub fn conversion_probability<T: Real>(params: &ModelParams<T>, b: T, tau: T) -> T {
    let (_, sin2) = double_angle(params, b);
    let x = params.dressed_splitting(b) * tau / (T::lit(2.0) * hbar_ev_s::<T>());
    let s = sin2 * x.sin();
    s * s
}

fn sinc<T: Real>(x: T) -> T {
    if x.abs() < T::lit(1e-4) {
        let x2 = x * x;
        T::one() - x2 / T::lit(6.0) + x2 * x2 / T::lit(120.0)
    } else {
        x.sin() / x
    }
}

/// Weak-field form `(βμ_B Bτ/ħ)² · sinc²(Δτ/2ħ)`.
pub fn conversion_probability_small_field<T: Real>(params: &ModelParams<T>, b: T, tau: T) -> T {
    let hbar = hbar_ev_s::<T>();
    let w = params.coupling(b) * tau / hbar;
    let s = w * sinc(params.delta * tau / (T::lit(2.0) * hbar));
    s * s
}

/// `x − sin x` without cancellation for small `x`.
pub(crate) fn x_minus_sin<T: Real>(x: T) -> T {
    if x.abs() < T::lit(1e-2) {
        let x2 = x * x;
        x * x2 / T::lit(6.0)
            * (T::one() - x2 / T::lit(20.0) * (T::one() - x2 / T::lit(42.0) * (T::one() - x2 / T::lit(72.0))))
    } else {
        x - x.sin()
    }
}

/// Phase difference `δφ = arctan[cos2θ tan x] − Δτ/2ħ`, `x = Δ̄τ/2ħ`,
/// continued through the poles of the tangent so that `δφ(τ = 0) = 0` and
/// `δφ` is continuous in `τ`.
///
/// At `Δ = 0` the bracket is identically zero and the result is `0`.
pub fn phase_difference<T: Real>(params: &ModelParams<T>, b: T, tau: T) -> T {
    let delta = params.delta;
    let delta_bar = params.dressed_splitting(b);
    if delta_bar == T::zero() || delta == T::zero() {
        return T::zero();
    }
    let two = T::lit(2.0);
    let hbar = hbar_ev_s::<T>();
    let v2 = {
        let v = two * params.coupling(b);
        v * v
    };
    // Δ̄ − Δ and 1 − cos2θ written without subtracting nearly equal numbers
    let excess = v2 / (delta_bar + delta);
    let one_minus_cos2 = excess / delta_bar;
    let x = delta_bar * tau / (two * hbar);
    let (s, c) = x.sin_cos();
    // arg(cos x + i cos2θ sin x) − x, which stays in (−π/2, π/2] because the
    // real part cos²x + cos2θ sin²x never goes negative
    let lag = (-one_minus_cos2 * s * c).atan2(T::one() - one_minus_cos2 * s * s);
    excess * tau / (two * hbar) + lag
}

/// Leading small-mixing form `(βμ_B B/Δ)² (Δτ/ħ − sin(Δτ/ħ))`.
pub fn phase_difference_small_mixing<T: Real>(params: &ModelParams<T>, b: T, tau: T) -> Result<T> {
    if params.delta == T::zero() {
        return Err(Error::Domain(
            "small-mixing phase expansion needs a non-zero splitting",
        ));
    }
    let r = params.coupling(b) / params.delta;
    Ok(r * r * x_minus_sin(params.delta * tau / hbar_ev_s::<T>()))
}

type Mat2<T> = [[Complex<T>; 2]; 2];

fn matmul<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `exp(m)` by scaling, a truncated Taylor series, and repeated squaring.
fn expm2<T: Real>(m: &Mat2<T>) -> Mat2<T> {
    let norm = m
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(T::zero(), T::max);
    let mut squarings = 0;
    let mut scale = T::one();
    while norm * scale > T::lit(0.25) {
        scale = scale * T::lit(0.5);
        squarings += 1;
    }
    let a: Mat2<T> = [
        [m[0][0].scale(scale), m[0][1].scale(scale)],
        [m[1][0].scale(scale), m[1][1].scale(scale)],
    ];
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    let mut sum: Mat2<T> = [[one, zero], [zero, one]];
    let mut term = sum;
    for k in 1..=30 {
        term = matmul(&term, &a);
        let inv_k = T::one() / T::from_usize(k).unwrap();
        for row in term.iter_mut() {
            for z in row.iter_mut() {
                *z = z.scale(inv_k);
            }
        }
        let mut small = true;
        for i in 0..2 {
            for j in 0..2 {
                sum[i][j] = sum[i][j] + term[i][j];
                small &= term[i][j].norm() <= T::epsilon() * T::lit(1e-3);
            }
        }
        if small {
            break;
        }
    }
    for _ in 0..squarings {
        sum = matmul(&sum, &sum);
    }
    sum
}

/// Brute-force reference evolution: `n_steps` applications of a one-step
/// propagator obtained by exponentiating the Hamiltonian matrix numerically.
///
/// Shares no formula with [`evolve`]; used to check it.
pub fn numeric_oracle<T: Real>(
    state: &StateVector<T>,
    params: &ModelParams<T>,
    b: T,
    tau: T,
    n_steps: usize,
) -> StateVector<T> {
    type S = StateVector<f64>;
    let n_steps = n_steps.max(1);
    let dt = tau / T::from_usize(n_steps).unwrap();
    let k = dt / hbar_ev_s::<T>();
    let e1 = -params.delta * T::lit(0.25);
    let e0 = params.delta * T::lit(0.75);
    let v = params.coupling(b);
    let minus_i = Complex::new(T::zero(), -T::one());
    let block = expm2(&[
        [minus_i.scale(e1 * k), minus_i.scale(v * k)],
        [minus_i.scale(v * k), minus_i.scale(e0 * k)],
    ]);
    let zero = Complex::new(T::zero(), T::zero());
    let spectator = expm2(&[[minus_i.scale(e1 * k), zero], [zero, zero]])[0][0];

    let mut a = state.amplitudes;
    for _ in 0..n_steps {
        let (p, q) = (a[S::ZERO], a[S::SINGLET]);
        a[S::ZERO] = block[0][0] * p + block[0][1] * q;
        a[S::SINGLET] = block[1][0] * p + block[1][1] * q;
        a[S::PLUS] = a[S::PLUS] * spectator;
        a[S::MINUS] = a[S::MINUS] * spectator;
    }
    StateVector::new(a)
}

/// Per-pass probability and phase of the field-parallel component, then the
/// rotation and ellipticity seen by an analyser.
///
/// For polarization at angle `α` to the field the rotation is
/// `passes · sin2α · P/2` and the ellipticity `passes · sin2α · δφ/2`, which
/// reduce to `P/2` and `δφ/2` per pass at 45°. Polarizations along or across
/// the field are eigenpolarizations and show neither. The birefringence is
/// `(δφ/2) λ/(πL)`.
pub fn observables<T: Real>(
    params: &ModelParams<T>,
    region: &FieldRegion<T>,
    lambda: T,
) -> Result<Observables<T>> {
    params.validate()?;
    region.validate()?;
    if !(lambda.is_finite() && lambda > T::zero()) {
        return Err(invalid("lambda_meter", "must be finite and positive"));
    }
    let (parallel_weight, sin_2alpha) = match region.geometry {
        Geometry::Axes(spec) => {
            let psi = polarization_state::<T>(spec)?;
            (psi[StateVector::<T>::ZERO].norm_sqr(), T::zero())
        }
        Geometry::AngleToField(alpha) => {
            let c = alpha.cos();
            (c * c, (T::lit(2.0) * alpha).sin())
        }
    };
    let tau = region.transit_time();
    let (p, dphi) = if parallel_weight == T::zero() {
        (T::zero(), T::zero())
    } else {
        (
            conversion_probability(params, region.b, tau),
            phase_difference(params, region.b, tau),
        )
    };
    let half = T::lit(0.5);
    let passes = T::from_u32(region.passes).unwrap();
    Ok(Observables {
        p_conversion: p,
        rotation: passes * sin_2alpha * half * p,
        phase_diff: dphi,
        ellipticity: passes * sin_2alpha * half * dphi,
        birefringence: half * dphi * lambda / (T::PI() * region.l),
    })
}
