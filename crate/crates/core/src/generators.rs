//! Seeded instance generators and the classical bounds for real surfaces
//! in projective 3-space.
//!
//! All randomness is drawn from ChaCha streams keyed by [`derive_seed`], so
//! an instance depends only on its configuration and indices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{lattice_point_count, lattice_points, InstanceError, TropicalPolynomial};
use crate::subdivision::RegularSubdivision;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("no {wanted} found for n = {n}, d = {d} after {attempts} attempts")]
    RetriesExhausted {
        wanted: &'static str,
        n: usize,
        d: u32,
        attempts: u32,
    },
    #[error("lambda must lie in [0, 1]")]
    Lambda,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub d: u32,
    pub seed: u64,
    /// Weight of the convex part `sum v_i^2` against uniform noise.
    pub lambda: BigRational,
    pub max_retries: u32,
}

impl GeneratorConfig {
    pub fn new(n: usize, d: u32, seed: u64) -> Self {
        Self {
            n,
            d,
            seed,
            lambda: BigRational::new(BigInt::from(3), BigInt::from(10)),
            max_retries: 1000,
        }
    }

    pub fn with_lambda(mut self, lambda: BigRational) -> Self {
        self.lambda = lambda;
        self
    }
}

/// An accepted polynomial with its subdivision and the attempt count.
#[derive(Clone, Debug)]
pub struct Generated {
    pub polynomial: TropicalPolynomial,
    pub subdivision: RegularSubdivision,
    pub attempts: u32,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the stream addressed by `path` under `seed`.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(seed), |acc, &p| {
        splitmix64(acc ^ splitmix64(p.wrapping_add(0xA5A5_A5A5)))
    })
}

const FRACTION_BITS: u32 = 32;

/// Uniform rational in `[0, 1)` with denominator `2^32`.
fn unit_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let numer: u32 = rng.gen();
    BigRational::new(BigInt::from(numer), BigInt::one() << FRACTION_BITS)
}

fn squares(n: usize, d: u32) -> Vec<BigRational> {
    lattice_points(n, d)
        .iter()
        .map(|v| {
            let s: u64 = v.entries().iter().map(|&e| (e as u64) * (e as u64)).sum();
            BigRational::from_integer(BigInt::from(s))
        })
        .collect()
}

/// Tie-breaking perturbation in `[0, 1/(4k))` per point.
fn perturbation(rng: &mut ChaCha8Rng, k: u64) -> BigRational {
    unit_rational(rng) / BigRational::from_integer(BigInt::from(4 * k))
}

/// Heights `sum v_i^2` plus a small seeded perturbation; the result is
/// verified to be a unimodular triangulation.
pub fn canonical_unimodular(cfg: &GeneratorConfig) -> Result<Generated, GeneratorError> {
    let (n, d) = (cfg.n, cfg.d);
    let k = lattice_point_count(n, d);
    let base = squares(n, d);
    for attempt in 0..cfg.max_retries {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[0, attempt as u64]));
        let heights: Vec<BigRational> =
            base.iter().map(|c| c + perturbation(&mut rng, k)).collect();
        let polynomial = TropicalPolynomial::from_coefficients(n, d, heights)?;
        let subdivision = RegularSubdivision::from_polynomial(&polynomial).expect("full support");
        if subdivision.is_unimodular() && subdivision.is_full() {
            return Ok(Generated {
                polynomial,
                subdivision,
                attempts: attempt + 1,
            });
        }
    }
    Err(GeneratorError::RetriesExhausted {
        wanted: "unimodular triangulation",
        n,
        d,
        attempts: cfg.max_retries,
    })
}

/// Heights `lambda * sum v_i^2 + (1 - lambda) * U_v` with `U_v` uniform in
/// `[0, 1)`, plus the tie-breaking perturbation; rejected until the
/// subdivision is a full triangulation.
pub fn random_full_triangulation(cfg: &GeneratorConfig) -> Result<Generated, GeneratorError> {
    let (n, d) = (cfg.n, cfg.d);
    if cfg.lambda < BigRational::zero() || cfg.lambda > BigRational::one() {
        return Err(GeneratorError::Lambda);
    }
    let k = lattice_point_count(n, d);
    let base = squares(n, d);
    let noise_weight = BigRational::one() - &cfg.lambda;
    for attempt in 0..cfg.max_retries {
        let heights = random_heights(cfg, &base, &noise_weight, k, attempt);
        let polynomial = TropicalPolynomial::from_coefficients(n, d, heights)?;
        let subdivision = RegularSubdivision::from_polynomial(&polynomial).expect("full support");
        if subdivision.is_triangulation() && subdivision.is_full() {
            return Ok(Generated {
                polynomial,
                subdivision,
                attempts: attempt + 1,
            });
        }
    }
    Err(GeneratorError::RetriesExhausted {
        wanted: "full triangulation",
        n,
        d,
        attempts: cfg.max_retries,
    })
}

fn random_heights(
    cfg: &GeneratorConfig,
    base: &[BigRational],
    noise_weight: &BigRational,
    k: u64,
    attempt: u32,
) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[1, attempt as u64]));
    base.iter()
        .map(|c| {
            let noise = unit_rational(&mut rng);
            &cfg.lambda * c + noise_weight * noise + perturbation(&mut rng, k)
        })
        .collect()
}

/// Independent fair bits, one per lattice point in canonical order.
pub fn random_signs(n: usize, d: u32, seed: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[2]));
    (0..lattice_point_count(n, d)).map(|_| rng.gen()).collect()
}

fn exact_third(numer: i64) -> i64 {
    assert_eq!(numer % 3, 0, "bound is not an integer");
    numer / 3
}

/// Lower bound `(4d - d^3) / 3` on the Euler characteristic of a surface
/// patchworked from a full triangulation; attained when it is unimodular.
pub fn bound_chi(d: u32) -> i64 {
    let d = d as i64;
    exact_third(4 * d - d * d * d)
}

/// Upper bound `(2d^3 - 6d^2 + 7d) / 3` on `b_1` for full triangulations.
pub fn bound_b1(d: u32) -> i64 {
    let d = d as i64;
    exact_third(2 * d * d * d - 6 * d * d + 7 * d)
}

/// Upper bound `C(d-1, 3) + 1` on `b_0` for unimodular triangulations.
pub fn bound_b0(d: u32) -> i64 {
    let m = d as i64 - 1;
    if m < 3 {
        return 1;
    }
    m * (m - 1) * (m - 2) / 6 + 1
}
