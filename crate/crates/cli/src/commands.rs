//! Single-instance commands. Each returns the text to print on stdout.

use std::fmt::Write;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use patchwork::generators::{self, GeneratorConfig};
use patchwork::{
    lattice_points, parse_instance, write_instance, Instance, Patchwork, RegularSubdivision,
    SignDistribution,
};

use crate::{read_file, CliError};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    Ok(parse_instance(&read_file(path)?)?)
}

/// `betti: b0 b1 ...` and `chi: x` for a parsed instance.
pub fn betti_report(instance: &Instance) -> Result<String, CliError> {
    let betti = Patchwork::new(&instance.polynomial)?.betti(&instance.sign_bits())?;
    Ok(format!("betti: {}\nchi: {}\n", join(&betti.b), betti.chi))
}

pub fn subdivision_report(instance: &Instance, f_vector_only: bool) -> Result<String, CliError> {
    let s = RegularSubdivision::from_polynomial(&instance.polynomial)
        .map_err(patchwork::PipelineError::from)?;
    let mut out = format!("f-vector: {}\n", join(&s.f_vector()));
    if !f_vector_only {
        writeln!(out, "full: {}", yes_no(s.is_full())).unwrap();
        writeln!(out, "triangulation: {}", yes_no(s.is_triangulation())).unwrap();
        writeln!(out, "unimodular: {}", yes_no(s.is_unimodular())).unwrap();
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Canonical,
    Random,
}

/// An instance file: generated heights paired with seeded random signs.
pub fn generate(kind: GenKind, cfg: &GeneratorConfig) -> Result<String, CliError> {
    let generated = match kind {
        GenKind::Canonical => generators::canonical_unimodular(cfg)?,
        GenKind::Random => generators::random_full_triangulation(cfg)?,
    };
    let bits = generators::random_signs(cfg.n, cfg.d, cfg.seed);
    let signs = SignDistribution::from_aligned(&lattice_points(cfg.n, cfg.d), &bits);
    let instance = Instance::new(generated.polynomial, signs)?;
    Ok(write_instance(&instance))
}

/// Accepts `p/q`, integers and decimals such as `0.3`; the value must lie
/// in `[0, 1]`.
pub fn parse_lambda(text: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("lambda `{text}` is not a rational in [0, 1]"));
    let value = if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole = if whole.is_empty() { "0" } else { whole };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let numer = BigInt::from_str(whole).map_err(|_| bad())? * &scale
            + BigInt::from_str(frac).map_err(|_| bad())?;
        BigRational::new(numer, scale)
    } else {
        BigRational::from_str(text).map_err(|_| bad())?
    };
    if value < BigRational::zero() || value > BigRational::one() {
        return Err(bad());
    }
    Ok(value)
}
