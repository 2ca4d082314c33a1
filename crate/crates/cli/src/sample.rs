//! Deterministic sampling keyed by (seed, cell, sample index).

use drinfeld_core::{make_extension, DrinfeldModule, FieldElement, Fq, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ConfigError;

/// Largest sample index that fits in the stream key.
pub const MAX_SAMPLES: usize = 1 << 24;

/// Independent random streams attached to one sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Module = 0,
    Degdet = 1,
    Height = 2,
}

/// The generator for one (cell, sample, purpose) triple. The stream number
/// packs the key so every triple gets its own ChaCha stream.
pub fn sample_rng(seed: u64, q: u64, n: usize, r: usize, index: usize, purpose: Purpose) -> ChaCha8Rng {
    let stream = (purpose as u64) << 56
        | (q & 0xffff) << 40
        | (n as u64 & 0xff) << 32
        | (r as u64 & 0xff) << 24
        | (index as u64 & 0xff_ffff);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn check_params(q: u64, n: usize, r: usize, count: usize) -> Result<(), ConfigError> {
    Fq::get(q).map_err(|e| ConfigError(format!("q={q}: {e}")))?;
    if !(1..=255).contains(&n) {
        return Err(ConfigError(format!("n={n} must lie in 1..=255")));
    }
    if !(1..=255).contains(&r) {
        return Err(ConfigError(format!("r={r} must lie in 1..=255")));
    }
    if count == 0 || count > MAX_SAMPLES {
        return Err(ConfigError(format!("samples={count} must lie in 1..={MAX_SAMPLES}")));
    }
    Ok(())
}

/// The module for one sample: g₀…g_{r−1} uniform over k, g_r uniform over k∖{0}.
pub fn sample_module(q: u64, n: usize, r: usize, seed: u64, index: usize) -> Result<DrinfeldModule, ConfigError> {
    check_params(q, n, r, index + 1)?;
    let bad = |e: drinfeld_core::Error| ConfigError(e.to_string());
    let fq = Fq::get(q).map_err(bad)?;
    let k = make_extension(fq.characteristic(), fq.degree() as usize * n).map_err(bad)?;
    let size = k
        .size()
        .ok_or_else(|| ConfigError(format!("F_{{{q}^{n}}} is too large to sample")))?;
    let mut rng = sample_rng(seed, q, n, r, index, Purpose::Module);
    let mut g: Vec<FieldElement> = (0..r)
        .map(|_| k.element_from_index(rng.gen_range(0..size)))
        .collect();
    g.push(k.element_from_index(rng.gen_range(1..size)));
    DrinfeldModule::new(q, n, g).map_err(bad)
}

pub fn sample_modules(q: u64, n: usize, r: usize, count: usize, seed: u64) -> Result<Vec<DrinfeldModule>, ConfigError> {
    check_params(q, n, r, count)?;
    (0..count).map(|i| sample_module(q, n, r, seed, i)).collect()
}

/// A nonzero a ∈ F_q[T] with deg a uniform in 0..=max_degree.
pub fn random_poly(rng: &mut ChaCha8Rng, fq: &std::sync::Arc<Fq>, max_degree: usize) -> Poly {
    let deg = rng.gen_range(0..=max_degree);
    let mut coeffs: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..fq.size())).collect();
    coeffs.push(rng.gen_range(1..fq.size()));
    Poly::from_coeffs(fq, coeffs)
}
