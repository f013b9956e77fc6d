//! Two-fermion spin states, spin-1 Wigner rotations and photon polarization
//! states written in the spin basis quantized along the field axis `z`.
//!
//! Phase conventions follow the printed kets: the field-parallel polarization
//! for propagation along `y` is `−|1,0⟩`. Observables never depend on the
//! global phase.
//!
//! Note on labels: the x-polarized state for propagation along `y` is named by
//! its polarization axis here (`Axis::X`). Its z-basis form
//! `(|1,1⟩ + i|1,−1⟩)/√2` is used as printed. The matching y-basis form
//! `(|1,1⟩_y + i|1,−1⟩_y)/√2` is *not* the preimage of that state under the
//! `d¹(π/2)` change of basis: it is not orthogonal to the z-polarized state's
//! y-basis form, so no unitary map can send both to their z-basis forms. The
//! consistent y-basis form is `(|1,1⟩_y + |1,−1⟩_y)/√2`
//! (see [`x_polarization_y_basis`]).

use std::ops::Index;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Cartesian axis of the laboratory frame. The magnetic field is along `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

/// A ket `|S, M⟩` quantized along `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisState {
    s: u8,
    m: i8,
    axis: Axis,
}

impl BasisState {
    pub fn new(s: u8, m: i8, axis: Axis) -> Result<Self> {
        if axis == Axis::X {
            return Err(Error::Geometry("quantization axis must be y or z".into()));
        }
        let ok = match s {
            0 => m == 0,
            1 => (-1..=1).contains(&m),
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidProjection { s, m });
        }
        Ok(Self { s, m, axis })
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn m(&self) -> i8 {
        self.m
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    /// Position in the amplitude ordering `(|1,1⟩, |1,0⟩, |1,−1⟩, |0,0⟩)`.
    pub fn index(&self) -> usize {
        if self.s == 0 {
            StateVector::<f64>::SINGLET
        } else {
            (1 - self.m) as usize
        }
    }
}

/// Four complex amplitudes over `(|1,1⟩, |1,0⟩, |1,−1⟩, |0,0⟩)`.
///
/// Unless stated otherwise the basis is quantized along `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector<T> {
    pub amplitudes: [Complex<T>; 4],
}

impl<T: Real> StateVector<T> {
    pub const PLUS: usize = 0;
    pub const ZERO: usize = 1;
    pub const MINUS: usize = 2;
    pub const SINGLET: usize = 3;

    pub fn new(amplitudes: [Complex<T>; 4]) -> Self {
        Self { amplitudes }
    }

    pub fn zero() -> Self {
        Self::new([Complex::new(T::zero(), T::zero()); 4])
    }

    /// A single basis ket; y-quantized kets are rotated into the z basis.
    pub fn basis(state: BasisState) -> Self {
        let mut v = Self::zero();
        v.amplitudes[state.index()] = Complex::new(T::one(), T::zero());
        match state.axis {
            Axis::Z => v,
            _ => rotate_y_to_z(&v),
        }
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            })
    }

    /// Largest per-amplitude modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

impl<T> Index<usize> for StateVector<T> {
    type Output = Complex<T>;

    fn index(&self, i: usize) -> &Complex<T> {
        &self.amplitudes[i]
    }
}

/// Spin-1 Wigner small-d element `d¹_{m_row, m_col}(theta)`.
pub fn wigner_small_d<T: Real>(m_row: i8, m_col: i8, theta: T) -> Result<T> {
    for m in [m_row, m_col] {
        if !(-1..=1).contains(&m) {
            return Err(Error::InvalidProjection { s: 1, m });
        }
    }
    let (s, c) = theta.sin_cos();
    let half = T::lit(0.5);
    let r = s * T::FRAC_1_SQRT_2();
    Ok(match (m_row, m_col) {
        (1, 1) | (-1, -1) => half * (T::one() + c),
        (1, -1) | (-1, 1) => half * (T::one() - c),
        (0, 1) | (-1, 0) => r,
        (0, -1) | (1, 0) => -r,
        (0, 0) => c,
        _ => unreachable!(),
    })
}

fn d_matrix<T: Real>(theta: T) -> [[T; 3]; 3] {
    let mut d = [[T::zero(); 3]; 3];
    for (i, m_row) in [1i8, 0, -1].into_iter().enumerate() {
        for (j, m_col) in [1i8, 0, -1].into_iter().enumerate() {
            d[i][j] = wigner_small_d(m_row, m_col, theta).expect("in range");
        }
    }
    d
}

/// Applies `d¹(theta)` to the triplet amplitudes; the singlet is untouched.
pub fn rotate<T: Real>(state: &StateVector<T>, theta: T) -> StateVector<T> {
    let d = d_matrix(theta);
    let mut out = *state;
    for (i, row) in d.iter().enumerate() {
        out.amplitudes[i] = row
            .iter()
            .zip(state.amplitudes.iter())
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&dij, a)| {
                acc + a.scale(dij)
            });
    }
    out
}

/// Re-expresses amplitudes over `|S, M_y⟩` in the `|S, M_z⟩` basis using
/// `|S,M_y⟩ = Σ_{M_z} |S,M_z⟩ d^S_{M_z,M_y}(π/2)`.
pub fn rotate_y_to_z<T: Real>(y_amplitudes: &StateVector<T>) -> StateVector<T> {
    rotate(y_amplitudes, T::FRAC_PI_2())
}

/// Propagation and polarization directions of a linearly polarized photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationSpec {
    pub propagation_axis: Axis,
    pub polarization_axis: Axis,
}

impl PolarizationSpec {
    pub fn new(propagation_axis: Axis, polarization_axis: Axis) -> Result<Self> {
        let spec = Self {
            propagation_axis,
            polarization_axis,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.propagation_axis == Axis::X {
            return Err(Error::Geometry(
                "propagation axis must be y (across the field) or z (along the field)".into(),
            ));
        }
        if self.polarization_axis == self.propagation_axis {
            return Err(Error::Geometry(format!(
                "polarization {:?} is not orthogonal to propagation {:?}",
                self.polarization_axis, self.propagation_axis
            )));
        }
        Ok(())
    }
}

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// y-basis amplitudes of the z-polarized photon moving along `y`:
/// `−(|1,1⟩_y − |1,−1⟩_y)/√2`.
pub fn z_polarization_y_basis<T: Real>() -> StateVector<T> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::new([c(-h, 0.0), c(0.0, 0.0), c(h, 0.0), c(0.0, 0.0)])
}

/// y-basis amplitudes of the x-polarized photon moving along `y`, in the
/// phase convention where `d¹(π/2)` maps it into `span{|1,±1⟩_z}`.
pub fn x_polarization_y_basis<T: Real>() -> StateVector<T> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::new([c(h, 0.0), c(0.0, 0.0), c(h, 0.0), c(0.0, 0.0)])
}

/// Photon polarization state in the z-quantized spin basis.
pub fn polarization_state<T: Real>(spec: PolarizationSpec) -> Result<StateVector<T>> {
    spec.validate()?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Ok(match (spec.propagation_axis, spec.polarization_axis) {
        (Axis::Y, Axis::Z) => rotate_y_to_z(&z_polarization_y_basis()),
        (Axis::Y, Axis::X) => StateVector::new([c(h, 0.0), c(0.0, 0.0), c(0.0, h), c(0.0, 0.0)]),
        // e_x = (e₋₁ − e₊₁)/√2 and e_y = i(e₊₁ + e₋₁)/√2 in the z helicity basis
        (Axis::Z, Axis::X) => StateVector::new([c(-h, 0.0), c(0.0, 0.0), c(h, 0.0), c(0.0, 0.0)]),
        (Axis::Z, Axis::Y) => StateVector::new([c(0.0, h), c(0.0, 0.0), c(0.0, h), c(0.0, 0.0)]),
        _ => unreachable!("validated"),
    })
}
