//! Censuses of Betti vectors over random full triangulations and random
//! sign distributions.
//!
//! Triangulation `t` is generated from `derive_seed(seed, [0, t])` and its
//! sign distribution `s` from `derive_seed(seed, [1, t, s])`, so rows do not
//! depend on the number of worker threads.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;

use patchwork::generators::{self, derive_seed, GeneratorConfig, GeneratorError};
use patchwork::{BettiVector, Patchwork};

use crate::CliError;

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub n: usize,
    pub d: u32,
    pub triangulations: u64,
    pub signs: u64,
    pub seed: u64,
    pub lambda: BigRational,
    pub max_retries: u32,
    /// Write `wall_ms = 0` so that output is byte-reproducible.
    pub omit_timing: bool,
}

impl CensusConfig {
    pub fn new(n: usize, d: u32, triangulations: u64, signs: u64, seed: u64) -> Self {
        let defaults = GeneratorConfig::new(n, d, seed);
        Self {
            n,
            d,
            triangulations,
            signs,
            seed,
            lambda: defaults.lambda,
            max_retries: defaults.max_retries,
            omit_timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub tri_index: u64,
    pub sign_index: u64,
    pub tri_seed: u64,
    pub sign_seed: u64,
    pub full: bool,
    pub unimodular: bool,
    pub f: Vec<usize>,
    pub betti: BettiVector,
    pub wall_ms: u64,
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub n: usize,
    pub rows: Vec<CensusRow>,
    /// Triangulations the generator gave up on.
    pub skipped: Vec<(u64, GeneratorError)>,
}

/// Worker count from `PATCHWORK_THREADS`, if set.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("PATCHWORK_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(CliError::Usage(format!(
                "PATCHWORK_THREADS=`{v}` is not a positive integer"
            ))),
        },
        Err(_) => Ok(None),
    }
}

pub fn run(cfg: &CensusConfig, threads: Option<usize>) -> Result<CensusReport, CliError> {
    if cfg.triangulations == 0 || cfg.signs == 0 {
        return Err(CliError::Usage(
            "triangulation and sign counts must be positive".into(),
        ));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = threads {
        builder = builder.num_threads(k);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let per_triangulation: Vec<Result<Vec<CensusRow>, TriangulationFailure>> = pool.install(|| {
        (0..cfg.triangulations)
            .into_par_iter()
            .map(|t| census_triangulation(cfg, t))
            .collect()
    });
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (t, outcome) in per_triangulation.into_iter().enumerate() {
        match outcome {
            Ok(r) => rows.extend(r),
            Err(TriangulationFailure::Generator(e)) => skipped.push((t as u64, e)),
            Err(TriangulationFailure::Fatal(e)) => return Err(e),
        }
    }
    Ok(CensusReport {
        n: cfg.n,
        rows,
        skipped,
    })
}

enum TriangulationFailure {
    Generator(GeneratorError),
    Fatal(CliError),
}

fn census_triangulation(
    cfg: &CensusConfig,
    t: u64,
) -> Result<Vec<CensusRow>, TriangulationFailure> {
    let tri_seed = derive_seed(cfg.seed, &[0, t]);
    let gen_cfg = GeneratorConfig {
        n: cfg.n,
        d: cfg.d,
        seed: tri_seed,
        lambda: cfg.lambda.clone(),
        max_retries: cfg.max_retries,
    };
    let generated =
        generators::random_full_triangulation(&gen_cfg).map_err(TriangulationFailure::Generator)?;
    let sub = &generated.subdivision;
    let (full, unimodular, f) = (sub.is_full(), sub.is_unimodular(), sub.f_vector());
    let patchwork = Patchwork::from_subdivision(generated.subdivision)
        .map_err(|e| TriangulationFailure::Fatal(e.into()))?;
    let mut rows = Vec::with_capacity(cfg.signs as usize);
    for s in 0..cfg.signs {
        let sign_seed = derive_seed(cfg.seed, &[1, t, s]);
        let start = Instant::now();
        let signs = generators::random_signs(cfg.n, cfg.d, sign_seed);
        let betti = patchwork
            .betti(&signs)
            .map_err(|e| TriangulationFailure::Fatal(e.into()))?;
        let wall_ms = if cfg.omit_timing {
            0
        } else {
            start.elapsed().as_millis() as u64
        };
        let row = CensusRow {
            tri_index: t,
            sign_index: s,
            tri_seed,
            sign_seed,
            full,
            unimodular,
            f: f.clone(),
            betti,
            wall_ms,
        };
        check_bounds(cfg, &row).map_err(TriangulationFailure::Fatal)?;
        rows.push(row);
    }
    Ok(rows)
}

/// Surface bounds; only meaningful for `n = 4`.
pub fn check_bounds(cfg: &CensusConfig, row: &CensusRow) -> Result<(), CliError> {
    if cfg.n != 4 {
        return Ok(());
    }
    let b = &row.betti.b;
    let mut problems = Vec::new();
    if b[1] as i64 > generators::bound_b1(cfg.d) {
        problems.push(format!(
            "b1 = {} exceeds {}",
            b[1],
            generators::bound_b1(cfg.d)
        ));
    }
    if row.unimodular {
        if b[0] as i64 > generators::bound_b0(cfg.d) {
            problems.push(format!(
                "b0 = {} exceeds {}",
                b[0],
                generators::bound_b0(cfg.d)
            ));
        }
        if row.betti.chi != generators::bound_chi(cfg.d) {
            problems.push(format!(
                "chi = {} differs from {}",
                row.betti.chi,
                generators::bound_chi(cfg.d)
            ));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(CliError::BoundViolation {
            tri_index: row.tri_index,
            sign_index: row.sign_index,
            detail: problems.join("; "),
        })
    }
}

pub fn csv_header(n: usize) -> String {
    let mut cols: Vec<String> = [
        "tri_index",
        "sign_index",
        "tri_seed",
        "sign_seed",
        "full",
        "unimodular",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    cols.extend((0..n).map(|i| format!("f{i}")));
    cols.extend((0..n - 1).map(|i| format!("b{i}")));
    cols.push("chi".into());
    cols.push("wall_ms".into());
    cols.join(",")
}

pub fn write_csv<W: Write>(report: &CensusReport, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{}", csv_header(report.n))?;
    for r in &report.rows {
        write!(
            out,
            "{},{},{},{},{},{}",
            r.tri_index, r.sign_index, r.tri_seed, r.sign_seed, r.full, r.unimodular
        )?;
        for x in r.f.iter().chain(&r.betti.b) {
            write!(out, ",{x}")?;
        }
        writeln!(out, ",{},{}", r.betti.chi, r.wall_ms)?;
    }
    Ok(())
}

/// Betti vectors with their counts, most frequent first.
pub fn histogram(rows: &[CensusRow]) -> Vec<(BettiVector, usize)> {
    let mut counts: HashMap<&BettiVector, usize> = HashMap::new();
    for r in rows {
        *counts.entry(&r.betti).or_default() += 1;
    }
    let mut hist: Vec<(BettiVector, usize)> =
        counts.into_iter().map(|(b, c)| (b.clone(), c)).collect();
    hist.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    hist
}

pub fn summary(report: &CensusReport) -> String {
    let total = report.rows.len();
    let unimodular = report.rows.iter().filter(|r| r.unimodular).count();
    let mut out = String::new();
    writeln!(
        out,
        "rows: {total} ({unimodular} from unimodular triangulations, {} triangulations skipped)",
        report.skipped.len()
    )
    .unwrap();
    writeln!(out, "distribution of Betti vectors:").unwrap();
    for (b, count) in histogram(&report.rows) {
        let pct = 100.0 * count as f64 / total as f64;
        writeln!(out, "  {b:<16} {count:>8} {pct:>7.2}%").unwrap();
    }
    out
}
