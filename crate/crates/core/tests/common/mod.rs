#![allow(dead_code)]

use photon_fusion::constants::CODATA_2018;
use photon_fusion::ModelParams;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn hbar() -> f64 {
    CODATA_2018.hbar_ev_s()
}

pub fn mu_b() -> f64 {
    CODATA_2018.mu_bohr_ev_per_tesla()
}

/// One random evolution problem described by its dimensionless groups
/// `u = 2βμ_B B/Δ` and `φ_Δ = Δτ/2ħ`.
#[derive(Debug, Clone, Copy)]
pub struct Draw {
    pub params: ModelParams,
    pub b: f64,
    pub tau: f64,
    pub u: f64,
    pub phi: f64,
}

impl Draw {
    pub fn from_groups(u: f64, phi: f64, delta: f64, b: f64) -> Self {
        let beta = u * delta / (2.0 * mu_b() * b);
        let tau = 2.0 * hbar() * phi / delta;
        Self {
            params: ModelParams::new(delta, beta).unwrap(),
            b,
            tau,
            u,
            phi,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    10f64.powf(rng.gen_range(lo.log10()..=hi.log10()))
}

/// `u ∈ [1e-6, 1e3]` log-uniform, `φ_Δ ∈ [0, 50]` uniform.
pub fn draws(seed: u64, n: usize) -> Vec<Draw> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let u = log_uniform(&mut r, 1e-6, 1e3);
            let phi = r.gen_range(0.0..=50.0);
            let delta = log_uniform(&mut r, 1e-9, 1e-3);
            let b = r.gen_range(0.1..=10.0);
            Draw::from_groups(u, phi, delta, b)
        })
        .collect()
}
