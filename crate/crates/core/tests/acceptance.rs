//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use common::{draws, hbar, log_uniform, mu_b, rng};
use num_complex::Complex64;
use photon_fusion::axion::{alp_node_lengths, axion_conversion_probability, to_model_params};
use photon_fusion::constants::{qed_reference_birefringence, SPEED_OF_LIGHT};
use photon_fusion::dynamics::{
    conversion_probability, conversion_probability_small_field, evolve, mixing_angle,
    numeric_oracle, observables, phase_difference, phase_difference_small_mixing,
};
use photon_fusion::exclusion::{predicted_rotation, signal_curve, Measurement};
use photon_fusion::spin::{polarization_state, rotate_y_to_z, wigner_small_d, z_polarization_y_basis};
use photon_fusion::{
    Axis, AxionParams, DictionaryConvention, ExperimentConfig, FieldRegion, Geometry, ModelParams,
    PolarizationSpec, StateVector,
};
use rand::Rng;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn z_pol() -> StateVector {
    polarization_state(PolarizationSpec::new(Axis::Y, Axis::Z).unwrap()).unwrap()
}

fn random_state(r: &mut impl Rng) -> StateVector {
    let mut a = [Complex64::new(0.0, 0.0); 4];
    for z in a.iter_mut() {
        *z = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
    }
    let n = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    StateVector::new(a.map(|z| z / n))
}

fn c1_unitarity() -> Outcome {
    let start = Instant::now();
    let worst = draws(1, 1000)
        .iter()
        .map(|d| (evolve(&z_pol(), &d.params, d.b, d.tau).norm_sqr() - 1.0).abs())
        .fold(0.0, f64::max);
    let secs = start.elapsed().as_secs_f64();
    (worst <= 1e-12 && secs < 1.0, format!("max |norm²−1| = {worst:.2e} over 1000 draws in {secs:.3} s"))
}

fn c2_oracle() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    for d in draws(3, 100) {
        let psi = random_state(&mut r);
        let exact = evolve(&psi, &d.params, d.b, d.tau);
        let brute = numeric_oracle(&psi, &d.params, d.b, d.tau, 1_000_000);
        worst = worst.max(exact.max_abs_diff(&brute));
    }
    let secs = start.elapsed().as_secs_f64();
    (worst <= 1e-9 && secs < 30.0, format!("max amplitude error {worst:.2e} over 100 draws, 1e6 steps, {secs:.2} s"))
}

fn c3_small_field() -> Outcome {
    // fixed coupling V = βμ_B B, Δ spanning u ∈ [1e-5, 1e-3], φ_Δ within the first lobe (≤ 2 rad)
    let v = 5e-11;
    let (b, beta) = (1.0, v / mu_b());
    let (d_lo, d_hi) = (2.0 * v / 1e-3, 2.0 * v / 1e-5);
    let (t_lo, t_hi) = (2.0 * hbar() * 1e-4 / d_lo, 2.0 * hbar() * 2.0 / d_hi);
    let mut worst_ratio: f64 = 0.0;
    let mut max_phi: f64 = 0.0;
    for i in 0..50 {
        let delta = d_lo * (d_hi / d_lo).powf(i as f64 / 49.0);
        let p = ModelParams::new(delta, beta).unwrap();
        let u = 2.0 * v / delta;
        for j in 0..50 {
            let tau = t_lo * (t_hi / t_lo).powf(j as f64 / 49.0);
            max_phi = max_phi.max(delta * tau / (2.0 * hbar()));
            let exact = conversion_probability(&p, b, tau);
            let approx = conversion_probability_small_field(&p, b, tau);
            worst_ratio = worst_ratio.max(((exact - approx) / exact).abs() / (2.0 * u * u));
        }
    }
    (
        worst_ratio <= 1.0,
        format!("max rel. error / 2u² = {worst_ratio:.3} on 50×50 grid, u ∈ [1e-5, 1e-3], φ_Δ ≤ {max_phi:.2}"),
    )
}

fn c4_plateau() -> Outcome {
    let (beta, b, tau) = (1e-10, 5.0, 1.0 / SPEED_OF_LIGHT);
    let d_top = 2.0 * hbar() * 1e-3 / tau;
    let ps: Vec<f64> = (0..=100)
        .map(|i| {
            let delta = d_top * 10f64.powf(-2.0 * i as f64 / 100.0);
            conversion_probability(&ModelParams::new(delta, beta).unwrap(), b, tau)
        })
        .collect();
    let (lo, hi) = ps.iter().fold((f64::MAX, 0.0f64), |(l, h), &p| (l.min(p), h.max(p)));
    let spread = (hi - lo) / hi;
    (spread < 1e-5, format!("relative spread {spread:.2e} over two decades of Δ with φ_Δ ≤ 1e-3"))
}

fn c5_phase_expansion() -> Outcome {
    let delta = 1e-6;
    let mut lines = Vec::new();
    let mut ok = true;
    for theta in [1e-3_f64, 3e-4, 1e-4] {
        let beta = 1.0;
        let b = (2.0 * theta).tan() * delta / (2.0 * beta * mu_b());
        let p = ModelParams::new(delta, beta).unwrap();
        let th = mixing_angle(&p, b);
        let delta_bar = p.dressed_splitting(b);
        let mut worst: f64 = 0.0;
        for k in 1..=100 {
            // x = Δ̄τ/2ħ over ten tangent periods
            let x = 10.0 * PI * k as f64 / 100.0;
            let tau = 2.0 * hbar() * x / delta_bar;
            let exact = phase_difference(&p, b, tau);
            let approx = phase_difference_small_mixing(&p, b, tau).unwrap();
            worst = worst.max(((exact - approx) / approx).abs() / (10.0 * th * th));
        }
        ok &= worst <= 1.0;
        lines.push(format!("θ={theta:.0e}: {worst:.3}"));
    }
    (ok, format!("max rel. error / 10θ²: {}", lines.join(", ")))
}

fn c6_geometry_nulls() -> Outcome {
    let mut ok = true;
    let mut checked = 0;
    for d in draws(6, 50) {
        for (prop, pol) in [(Axis::Z, Axis::X), (Axis::Z, Axis::Y), (Axis::Y, Axis::X)] {
            let spec = PolarizationSpec::new(prop, pol).unwrap();
            let region = FieldRegion::new(d.b, d.tau * SPEED_OF_LIGHT, 1, Geometry::Axes(spec)).unwrap();
            let o = observables(&d.params, &region, 1.064e-6).unwrap();
            let psi = evolve(&polarization_state(spec).unwrap(), &d.params, d.b, d.tau);
            ok &= o.p_conversion == 0.0 && o.phase_diff == 0.0;
            ok &= psi[StateVector::SINGLET].norm_sqr() == 0.0;
            checked += 1;
        }
    }
    (ok, format!("{checked} (geometry, parameter) pairs give P = 0 and δφ = 0 exactly"))
}

fn c7_wigner() -> Outcome {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let zero = c(0.0, 0.0);

    let z_image = rotate_y_to_z(&z_polarization_y_basis::<f64>());
    let z_err = z_image.max_abs_diff(&StateVector::new([zero, c(-1.0, 0.0), zero, zero]));

    let h = FRAC_1_SQRT_2;
    let printed_y = StateVector::new([c(h, 0.0), zero, c(0.0, h), zero]);
    let printed_z = StateVector::new([c(h, 0.0), zero, c(0.0, h), zero]);
    let x_err = rotate_y_to_z(&printed_y).max_abs_diff(&printed_z);
    let overlap = z_polarization_y_basis::<f64>().inner(&printed_y).norm();

    let mut unit_err: f64 = 0.0;
    for k in 0..100 {
        let theta = 2.0 * PI * k as f64 / 100.0;
        for col in [1i8, 0, -1] {
            let s: f64 = [1i8, 0, -1].iter().map(|&r| wigner_small_d(r, col, theta).unwrap().powi(2)).sum();
            unit_err = unit_err.max((s - 1.0).abs());
        }
    }
    (
        z_err <= 1e-12 && x_err <= 1e-12 && unit_err <= 1e-12,
        format!(
            "ε_z → −|1,0⟩ error {z_err:.1e}; ε_x → (|1,1⟩ + i|1,−1⟩)/√2 error {x_err:.3} \
             (the y-basis ε_x overlaps ε_z by {overlap:.3}, so no rotation maps both); \
             d unitarity error {unit_err:.1e}"
        ),
    )
}

fn c8_dictionary() -> Outcome {
    let mut r = rng(8);
    let conv = DictionaryConvention::matched();
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 100 {
        let a = AxionParams::new(
            log_uniform(&mut r, 1e-5, 1e-2),
            log_uniform(&mut r, 1e-9, 1e-3),
            r.gen_range(0.5..5.0),
        )
        .unwrap();
        let (b, l) = (r.gen_range(0.5..10.0), r.gen_range(0.1..20.0));
        let alp = axion_conversion_probability(&a, b, l);
        if !(1e-30..=1.0).contains(&alp) {
            continue;
        }
        let fusion = conversion_probability(&to_model_params(&a, &conv), b, l / SPEED_OF_LIGHT);
        worst = worst.max(((alp - fusion) / alp).abs());
        n += 1;
    }
    (worst <= 1e-10, format!("max relative difference {worst:.2e} over 100 draws (Δ = m_a²/2ω, βμ_B B = gB/2)"))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_photon-fusion"))
}

fn sample(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

/// Position of the zero of √P between `lo` and `hi` by golden-section search.
fn refine_node(a: &AxionParams, b: f64, mut lo: f64, mut hi: f64) -> f64 {
    let f = |l: f64| axion_conversion_probability(a, b, l).sqrt();
    let g = (5f64.sqrt() - 1.0) / 2.0;
    while hi - lo > 1e-14 * hi {
        let (m1, m2) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(m1) < f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    0.5 * (lo + hi)
}

fn c9_energy_independence() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("compare.csv");
    let o = bin()
        .args(["compare", "--fusion", sample("pvlas_like.json").to_str().unwrap()])
        .args(["--axion", sample("alp_reference.json").to_str().unwrap()])
        .args(["--length", "0,30,3001", "--output", out.to_str().unwrap()])
        .output()
        .unwrap();
    if !o.status.success() {
        return (false, String::from_utf8_lossy(&o.stderr).into_owned());
    }
    let text = fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    let fusion_identical = rows.iter().all(|r| r[1] == r[2]);

    let cfg: serde_json::Value = serde_json::from_str(&fs::read_to_string(sample("alp_reference.json")).unwrap()).unwrap();
    let a: AxionParams = serde_json::from_value(cfg["model"]["axion"].clone()).unwrap();
    let b = cfg["experiment"]["b_tesla"].as_f64().unwrap();
    let a2 = a.with_omega(2.0 * a.omega);
    let lengths: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();

    // local minima of each ALP column, refined to the zero of the probability
    let nodes = |col: usize, params: &AxionParams| -> Vec<f64> {
        let p: Vec<f64> = rows.iter().map(|r| r[col].parse().unwrap()).collect();
        (1..p.len() - 1)
            .filter(|&i| p[i] <= p[i - 1] && p[i] < p[i + 1])
            .map(|i| refine_node(params, b, lengths[i - 1], lengths[i + 1]))
            .collect()
    };
    let (n1, n2) = (nodes(3, &a), nodes(4, &a2));
    let analytic = alp_node_lengths(&a, b, 2);
    let count = n2.len().min(2);
    let mut worst: f64 = 0.0;
    for k in 0..count {
        worst = worst.max((n2[k] / n1[k] / 2.0 - 1.0).abs());
        worst = worst.max((n1[k] / analytic[k] - 1.0).abs());
    }
    (
        fusion_identical && count == 2 && worst <= 1e-9,
        format!(
            "fusion columns identical: {fusion_identical}; ALP nodes at ω {:?} m, at 2ω {:?} m; \
             max |ratio/2 − 1| = {worst:.1e}",
            n1.iter().take(2).map(|x| (x * 1e3).round() / 1e3).collect::<Vec<_>>(),
            n2.iter().take(2).map(|x| (x * 1e3).round() / 1e3).collect::<Vec<_>>()
        ),
    )
}

fn c10_exclusion_solver() -> Outcome {
    let target = 3.9e-12;
    let e = ExperimentConfig {
        name: "acceptance".into(),
        b_tesla: 5.0,
        l_meter: 1.0,
        lambda_meter: 1.064e-6,
        passes: 44_000,
        polarization_angle_to_b_rad: FRAC_PI_4,
        propagation_axis: Axis::Y,
        measurement: Measurement::Observed { observed_rotation_rad: target, sigma_rad: 5e-13 },
    };
    let tau = e.l_meter / SPEED_OF_LIGHT;
    let grid: Vec<f64> = (0..=120).map(|i| 1e-12 * 10f64.powf(i as f64 / 20.0)).collect();
    let pts = signal_curve(&e, &grid).unwrap();
    let (mut worst, mut minimal, mut nodes) = (0.0f64, true, 0);
    let mut plateau = Vec::new();
    for pt in &pts {
        let Some(beta) = pt.beta else {
            nodes += 1;
            continue;
        };
        let r = predicted_rotation(&ModelParams::new(pt.delta, beta).unwrap(), &e).unwrap();
        worst = worst.max(((r - target) / target).abs());
        let half = predicted_rotation(&ModelParams::new(pt.delta, beta / 2.0).unwrap(), &e).unwrap();
        minimal &= half < target;
        if pt.delta * tau / (2.0 * hbar()) <= 1e-3 {
            plateau.push(beta);
        }
    }
    let spread = plateau.iter().fold(0.0f64, |m, b| m.max((b / plateau[0] - 1.0).abs()));
    (
        worst <= 1e-9 && minimal && spread <= 1e-4 && plateau.len() > 10,
        format!(
            "{} points ({nodes} nodes): max rel. rotation error {worst:.1e}, minimal: {minimal}, \
             plateau β spread {spread:.1e} over {} points",
            pts.len(),
            plateau.len()
        ),
    )
}

fn c11_qed_reference() -> Outcome {
    let exact = qed_reference_birefringence(1.0_f64) == 4e-24;
    let o = bin()
        .args(["predict", "--config", sample("pvlas_like.json").to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap_or_default();
    let reported = v["qed_birefringence"].as_f64();
    let expected = qed_reference_birefringence(5.0_f64);
    (
        exact && o.status.success() && reported == Some(expected),
        format!("Δn_QED(1 T) = {:e}; predict reports {reported:?} at 5 T", qed_reference_birefringence(1.0_f64)),
    )
}

fn c12_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for k in 0..3 {
        let out = dir.path().join(format!("scan{k}.csv"));
        let o = bin()
            .args(["scan", "--config", sample("pvlas_like.json").to_str().unwrap()])
            .args(["--delta", "1e-10,1e-4,60", "--beta", "1e-14,1e-6,60"])
            .args(["--output", out.to_str().unwrap()])
            .output()
            .unwrap();
        if !o.status.success() {
            return (false, String::from_utf8_lossy(&o.stderr).into_owned());
        }
        outputs.push(fs::read(&out).unwrap());
    }
    let same = outputs.windows(2).all(|w| w[0] == w[1]);
    (same, format!("3 scan runs of 3600 rows, byte-identical: {same}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("unitarity", c1_unitarity),
        ("oracle equivalence", c2_oracle),
        ("small-field limit", c3_small_field),
        ("Δ-independence plateau", c4_plateau),
        ("phase expansion", c5_phase_expansion),
        ("geometry nulls", c6_geometry_nulls),
        ("Wigner checks", c7_wigner),
        ("axion dictionary", c8_dictionary),
        ("energy independence contrast", c9_energy_independence),
        ("exclusion solver", c10_exclusion_solver),
        ("QED reference", c11_qed_reference),
        ("determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = check();
        println!("criterion {:>2} [{}] {name}: {detail}", i + 1, if ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
