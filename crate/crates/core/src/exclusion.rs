//! Parameter-plane engine: predicted rotation for an experiment, the curve of
//! `(Δ, β)` pairs that reproduce a measured rotation, the boundary excluded by
//! a null result, and bulk grid scans.
//!
//! Where several couplings reproduce the same rotation (the probability
//! oscillates once mixing is large), a curve point carries the *smallest* one.
//! Near zeros of `sin(Δτ/2ħ)` the weak-field rotation vanishes and the required
//! coupling diverges; such points are flagged as nodes and carry no `β`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::hbar_ev_s;
use crate::dynamics::{observables, FieldRegion, Geometry, ModelParams, Observables};
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;
use crate::spin::{Axis, PolarizationSpec};

/// Lower end of the coarse coupling scan.
pub const BETA_SCAN_MIN: f64 = 1e-30;
/// Upper end of the coarse coupling scan.
pub const BETA_SCAN_MAX: f64 = 1e10;
const SCAN_POINTS_PER_DECADE: usize = 20;
/// Relative bracket width at which bisection stops.
pub const BETA_RELATIVE_TOLERANCE: f64 = 1e-13;
/// Distance of `Δτ/2ħ` from a non-zero multiple of `π` that marks a node.
pub const NODE_PHASE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Measurement<T> {
    Observed {
        observed_rotation_rad: T,
        sigma_rad: T,
    },
    Limit {
        limit_rotation_2sigma_rad: T,
    },
}

fn default_propagation() -> Axis {
    Axis::Y
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig<T> {
    pub name: String,
    pub b_tesla: T,
    pub l_meter: T,
    pub lambda_meter: T,
    pub passes: u32,
    pub polarization_angle_to_b_rad: T,
    /// `y` (across the field, default) or `z` (along it).
    #[serde(default = "default_propagation")]
    pub propagation_axis: Axis,
    pub measurement: Measurement<T>,
}

impl<T: Real> ExperimentConfig<T> {
    pub fn validate(&self) -> Result<()> {
        match self.propagation_axis {
            Axis::Y | Axis::Z => {}
            Axis::X => return Err(invalid("propagation_axis", "must be \"y\" or \"z\"")),
        }
        if !(self.lambda_meter.is_finite() && self.lambda_meter > T::zero()) {
            return Err(invalid("lambda_meter", "must be finite and positive"));
        }
        self.region()?;
        let non_negative = |x: T| x.is_finite() && x >= T::zero();
        match self.measurement {
            Measurement::Observed {
                observed_rotation_rad,
                sigma_rad,
            } => {
                if !non_negative(observed_rotation_rad) {
                    return Err(invalid("observed_rotation_rad", "must be finite and non-negative"));
                }
                if !(sigma_rad.is_finite() && sigma_rad > T::zero()) {
                    return Err(invalid("sigma_rad", "must be finite and positive"));
                }
            }
            Measurement::Limit {
                limit_rotation_2sigma_rad,
            } => {
                if !non_negative(limit_rotation_2sigma_rad) {
                    return Err(invalid(
                        "limit_rotation_2sigma_rad",
                        "must be finite and non-negative",
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn region(&self) -> Result<FieldRegion<T>> {
        let geometry = match self.propagation_axis {
            Axis::Z => Geometry::Axes(PolarizationSpec::new(Axis::Z, Axis::X)?),
            _ => Geometry::AngleToField(self.polarization_angle_to_b_rad),
        };
        FieldRegion::new(self.b_tesla, self.l_meter, self.passes, geometry)
    }

    pub fn observables(&self, p: &ModelParams<T>) -> Result<Observables<T>> {
        observables(p, &self.region()?, self.lambda_meter)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint<T> {
    pub delta: T,
    pub beta: Option<T>,
    pub predicted_rotation: T,
    pub node_flag: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow<T> {
    pub delta_ev: T,
    pub beta: T,
    pub rotation_rad: T,
    pub ellipticity_rad: T,
    pub birefringence: T,
}

/// Rotation accumulated over all passes, rad.
pub fn predicted_rotation<T: Real>(p: &ModelParams<T>, e: &ExperimentConfig<T>) -> Result<T> {
    Ok(e.observables(p)?.rotation)
}

fn beta_scan<T: Real>() -> impl Iterator<Item = T> {
    let decades = (BETA_SCAN_MAX / BETA_SCAN_MIN).log10().round() as usize;
    let n = decades * SCAN_POINTS_PER_DECADE;
    let lo = T::lit(BETA_SCAN_MIN.log10());
    let step = T::one() / T::from_usize(SCAN_POINTS_PER_DECADE).unwrap();
    (0..=n).map(move |i| T::lit(10.0).powf(lo + step * T::from_usize(i).unwrap()))
}

fn is_node<T: Real>(e: &ExperimentConfig<T>, delta: T) -> bool {
    let tau = e.l_meter / T::lit(crate::constants::SPEED_OF_LIGHT);
    let phase = delta * tau / (T::lit(2.0) * hbar_ev_s::<T>());
    let k = (phase / T::PI()).round();
    k >= T::one() && (phase - k * T::PI()).abs() <= T::lit(NODE_PHASE_TOLERANCE)
}

/// Smallest `β` whose predicted rotation magnitude reaches `target` at this `Δ`.
fn solve_point<T: Real>(e: &ExperimentConfig<T>, delta: T, target: T) -> Result<CurvePoint<T>> {
    let node = CurvePoint {
        delta,
        beta: None,
        predicted_rotation: T::zero(),
        node_flag: true,
    };
    if target == T::zero() {
        return Ok(CurvePoint {
            beta: Some(T::zero()),
            node_flag: false,
            ..node
        });
    }
    if is_node(e, delta) {
        return Ok(node);
    }
    let region = e.region()?;
    let rotation = |beta: T| -> Result<T> {
        let p = ModelParams::new(delta, beta)?;
        Ok(observables(&p, &region, e.lambda_meter)?.rotation.abs())
    };

    let mut lo = T::zero();
    let mut hi = None;
    for beta in beta_scan::<T>() {
        if rotation(beta)? >= target {
            hi = Some(beta);
            break;
        }
        lo = beta;
    }
    let Some(mut hi) = hi else {
        return Ok(node);
    };

    let tol = T::lit(BETA_RELATIVE_TOLERANCE).max(T::lit(4.0) * T::epsilon());
    for _ in 0..400 {
        if hi - lo <= tol * hi {
            break;
        }
        let mid = lo + (hi - lo) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if rotation(mid)? >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (r_lo, r_hi) = (rotation(lo)?, rotation(hi)?);
    let (beta, r) = if (r_lo - target).abs() < (r_hi - target).abs() {
        (lo, r_lo)
    } else {
        (hi, r_hi)
    };
    Ok(CurvePoint {
        delta,
        beta: Some(beta),
        predicted_rotation: r,
        node_flag: false,
    })
}

fn solve_curve<T: Real>(
    e: &ExperimentConfig<T>,
    delta_grid: &[T],
    target: T,
) -> Result<Vec<CurvePoint<T>>> {
    if delta_grid.is_empty() {
        return Err(Error::Usage("delta grid is empty".into()));
    }
    if delta_grid.iter().any(|&d| !(d.is_finite() && d > T::zero())) {
        return Err(invalid("delta_ev", "grid values must be finite and positive"));
    }
    if delta_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid("delta_ev", "grid must be sorted ascending"));
    }
    e.validate()?;
    delta_grid
        .par_iter()
        .map(|&d| solve_point(e, d, target))
        .collect()
}

/// Couplings reproducing the observed rotation of `e` along `delta_grid`.
pub fn signal_curve<T: Real>(
    e: &ExperimentConfig<T>,
    delta_grid: &[T],
) -> Result<Vec<CurvePoint<T>>> {
    match e.measurement {
        Measurement::Observed {
            observed_rotation_rad,
            ..
        } => solve_curve(e, delta_grid, observed_rotation_rad),
        Measurement::Limit { .. } => Err(Error::Usage(format!(
            "experiment `{}` carries a limit, not an observed rotation",
            e.name
        ))),
    }
}

/// Lower border of the excluded region: couplings above each point predict
/// more rotation than the 2σ limit of `e`.
pub fn limit_curve<T: Real>(
    e: &ExperimentConfig<T>,
    delta_grid: &[T],
) -> Result<Vec<CurvePoint<T>>> {
    match e.measurement {
        Measurement::Limit {
            limit_rotation_2sigma_rad,
        } => solve_curve(e, delta_grid, limit_rotation_2sigma_rad),
        Measurement::Observed { .. } => Err(Error::Usage(format!(
            "experiment `{}` carries an observed rotation, not a limit",
            e.name
        ))),
    }
}

/// Observables over the outer product of the grids, `Δ`-major.
pub fn grid_scan<T: Real>(
    e: &ExperimentConfig<T>,
    delta_grid: &[T],
    beta_grid: &[T],
) -> Result<Vec<ScanRow<T>>> {
    if delta_grid.is_empty() || beta_grid.is_empty() {
        return Err(Error::Usage("scan grids must be non-empty".into()));
    }
    e.validate()?;
    let region = e.region()?;
    let nb = beta_grid.len();
    (0..delta_grid.len() * nb)
        .into_par_iter()
        .map(|i| {
            let (delta, beta) = (delta_grid[i / nb], beta_grid[i % nb]);
            let o = observables(&ModelParams::new(delta, beta)?, &region, e.lambda_meter)?;
            Ok(ScanRow {
                delta_ev: delta,
                beta,
                rotation_rad: o.rotation,
                ellipticity_rad: o.ellipticity,
                birefringence: o.birefringence,
            })
        })
        .collect()
}
