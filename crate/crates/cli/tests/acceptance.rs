//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::time::{Duration, Instant};

use patchwork::generators::{
    bound_b0, bound_b1, bound_chi, canonical_unimodular, random_full_triangulation, random_signs,
    GeneratorConfig,
};
use patchwork::{lattice_point_count, parse_instance, Patchwork, TropicalPolynomial};
use patchwork_cli::census::{self, CensusConfig, CensusReport};
use patchwork_cli::commands::{betti_report, subdivision_report};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || {
        format!("took {elapsed:.2?}, budget {budget:?}")
    })
}

fn harnack_cubic() -> Outcome {
    let start = Instant::now();
    let inst = parse_instance(patchwork::data::HARNACK_CUBIC).map_err(|e| e.to_string())?;
    let report = betti_report(&inst).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.starts_with("betti: 2 2\n"), || {
        format!("got {report:?}")
    })?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("betti: 2 2 in {elapsed:.2?}"))
}

fn cubic_surface() -> Outcome {
    let start = Instant::now();
    let inst = parse_instance(patchwork::data::CUBIC_SURFACE_212).map_err(|e| e.to_string())?;
    let sub = subdivision_report(&inst, false).map_err(|e| e.to_string())?;
    let betti = betti_report(&inst).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let expected = "f-vector: 20 60 64 23\nfull: yes\ntriangulation: yes\nunimodular: no\n";
    ensure(sub == expected, || format!("subdivision report {sub:?}"))?;
    ensure(betti.starts_with("betti: 2 1 2\n"), || {
        format!("got {betti:?}")
    })?;
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "f-vector (20,60,64,23), full, not unimodular, betti: 2 1 2 in {elapsed:.2?}"
    ))
}

fn degree_one() -> Outcome {
    let mut r = oracles::rng(1);
    let mut runs = 0;
    for n in [3usize, 4] {
        for _ in 0..5 {
            let heights = oracles::random_heights(n, 1, 1_000_000, &mut r);
            let f =
                TropicalPolynomial::from_coefficients(n, 1, heights).map_err(|e| e.to_string())?;
            let p = Patchwork::new(&f).map_err(|e| e.to_string())?;
            for bits in 0..1u32 << n {
                let signs: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                let b = p.betti(&signs).map_err(|e| e.to_string())?;
                ensure(b.b == vec![1; n - 1], || {
                    format!("n = {n}, signs {bits:b}: {b}")
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!("(1,1) and (1,1,1) in all {runs} runs"))
}

fn table() -> Outcome {
    let rows = [
        (3, 20, -5, 1, 7),
        (4, 35, -16, 2, 20),
        (5, 56, -35, 5, 45),
        (6, 84, -64, 11, 86),
    ];
    for (d, k, chi, b0, b1) in rows {
        let got = (
            lattice_point_count(4, d),
            bound_chi(d),
            bound_b0(d),
            bound_b1(d),
        );
        ensure(got == (k, chi, b0, b1), || format!("d = {d}: got {got:?}"))?;
    }
    Ok("k, chi', b0', b1' for d = 3..6".into())
}

fn unimodular_euler() -> Outcome {
    for d in 3..=6 {
        let g =
            canonical_unimodular(&GeneratorConfig::new(4, d, 2024)).map_err(|e| e.to_string())?;
        ensure(g.subdivision.is_unimodular(), || {
            format!("d = {d}: not unimodular")
        })?;
        let p = Patchwork::from_subdivision(g.subdivision).map_err(|e| e.to_string())?;
        for s in 0..50 {
            let b = p
                .betti(&random_signs(4, d, 1000 * d as u64 + s))
                .map_err(|e| e.to_string())?;
            ensure(b.chi == bound_chi(d), || {
                format!("d = {d}, signs {s}: {b} has chi {}", b.chi)
            })?;
        }
    }
    Ok("chi = -5, -16, -35, -64 over 50 sign distributions each".into())
}

struct Censuses {
    main: Result<(CensusReport, Duration), String>,
    others: Vec<Result<CensusReport, String>>,
}

fn run_censuses() -> Censuses {
    let timed = |cfg: CensusConfig| {
        let start = Instant::now();
        census::run(&cfg, None)
            .map(|r| (r, start.elapsed()))
            .map_err(|e| e.to_string())
    };
    let main = timed(CensusConfig::new(4, 3, 500, 20, 20240601));
    let others = [(4u32, 40u64, 10u64), (5, 10, 10), (6, 3, 10)]
        .into_iter()
        .map(|(d, t, s)| timed(CensusConfig::new(4, d, t, s, 77)).map(|(r, _)| r))
        .collect();
    Censuses { main, others }
}

fn bound_conformance(c: &Censuses) -> Outcome {
    let reports: Vec<&CensusReport> = std::iter::once(c.main.as_ref().map(|(r, _)| r))
        .chain(c.others.iter().map(|r| r.as_ref()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.clone())?;
    let mut rows = 0;
    let mut unimodular = 0;
    for (report, d) in reports.iter().zip([3u32, 4, 5, 6]) {
        for row in &report.rows {
            let b = &row.betti.b;
            ensure(b[1] as i64 <= bound_b1(d), || {
                format!("d = {d}: b1 = {} in row {row:?}", b[1])
            })?;
            if row.unimodular {
                ensure(b[0] as i64 <= bound_b0(d), || {
                    format!("d = {d}: b0 = {} in row {row:?}", b[0])
                })?;
                unimodular += 1;
            }
            rows += 1;
        }
    }
    Ok(format!(
        "no violations in {rows} rows ({unimodular} unimodular) for d = 3..6"
    ))
}

fn census_plausibility(c: &Censuses) -> Outcome {
    let (report, elapsed) = c.main.as_ref().map_err(|e| e.clone())?;
    ensure(report.rows.len() == 10_000, || {
        format!(
            "{} rows, {} skipped",
            report.rows.len(),
            report.skipped.len()
        )
    })?;
    let hist = census::histogram(&report.rows);
    let (top, count) = &hist[0];
    let share = 100.0 * *count as f64 / report.rows.len() as f64;
    ensure(top.b == vec![1, 7, 1], || format!("most frequent is {top}"))?;
    ensure(share >= 40.0, || format!("(1,7,1) only {share:.2}%"))?;
    within(*elapsed, Duration::from_secs(30 * 60))?;
    Ok(format!(
        "(1,7,1) most frequent at {share:.2}% of 10000 rows in {elapsed:.2?}"
    ))
}

fn curve_oracle() -> Outcome {
    let mut checked = 0;
    for (d, count) in [(2u32, 30u64), (3, 40), (4, 30)] {
        for seed in 500..500 + count {
            let g = random_full_triangulation(&GeneratorConfig::new(3, d, seed))
                .map_err(|e| e.to_string())?;
            let signs = random_signs(3, d, seed);
            let (components, cycles, two_regular) = oracles::curve_oracle(&g.subdivision, &signs);
            ensure(two_regular, || {
                format!("d = {d}, seed {seed}: oracle graph not 2-regular")
            })?;
            let p = Patchwork::from_subdivision(g.subdivision).map_err(|e| e.to_string())?;
            let b = p.betti(&signs).map_err(|e| e.to_string())?;
            ensure(b.b == vec![components, cycles], || {
                format!("d = {d}, seed {seed}: {b} but oracle ({components},{cycles})")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} instances agree"))
}

fn structural_invariants() -> Outcome {
    let mut r = oracles::rng(9);
    let mut count = 0;
    for text in [
        patchwork::data::HARNACK_CUBIC,
        patchwork::data::CUBIC_SURFACE_212,
    ] {
        let inst = parse_instance(text).map_err(|e| e.to_string())?;
        oracles::check_symmetries(&inst.polynomial, &inst.sign_bits(), &mut r)?;
        count += 1;
    }
    for (n, d) in [(3usize, 2u32), (3, 3), (3, 4), (4, 1), (4, 2), (4, 3)] {
        for seed in 0..8 {
            let g = random_full_triangulation(&GeneratorConfig::new(n, d, seed))
                .map_err(|e| e.to_string())?;
            let signs = random_signs(n, d, seed + 1);
            oracles::check_symmetries(&g.polynomial, &signs, &mut r)
                .map_err(|e| format!("n = {n}, d = {d}, seed {seed}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} instances, all permutations, 5 gauges and the global flip"
    ))
}

fn sedentarity() -> Outcome {
    let inst = parse_instance(patchwork::data::HARNACK_CUBIC).map_err(|e| e.to_string())?;
    oracles::check_sedentarity(&inst.polynomial)?;
    let mut count = 1;
    for d in 1..=3 {
        for seed in 100..120 {
            let g = random_full_triangulation(&GeneratorConfig::new(3, d, seed))
                .map_err(|e| e.to_string())?;
            oracles::check_sedentarity(&g.polynomial)
                .map_err(|e| format!("d = {d}, seed {seed}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} curves, every boundary facet is a limit"))
}

fn performance() -> Outcome {
    let start = Instant::now();
    let g =
        random_full_triangulation(&GeneratorConfig::new(4, 6, 31337)).map_err(|e| e.to_string())?;
    let p = Patchwork::from_subdivision(g.subdivision).map_err(|e| e.to_string())?;
    let b = p
        .betti(&random_signs(4, 6, 31337))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("n = 4, d = 6 gives {b} in {elapsed:.2?}"))
}

fn main() {
    let censuses = run_censuses();
    let criteria: Vec<Criterion> = vec![
        ("Harnack cubic regression", Box::new(harnack_cubic)),
        ("cubic surface regression", Box::new(cubic_surface)),
        ("degree-1 sanity", Box::new(degree_one)),
        ("bound table", Box::new(table)),
        ("unimodular Euler identity", Box::new(unimodular_euler)),
        (
            "bound conformance",
            Box::new(|| bound_conformance(&censuses)),
        ),
        (
            "census plausibility",
            Box::new(|| census_plausibility(&censuses)),
        ),
        ("curve oracle equivalence", Box::new(curve_oracle)),
        ("structural invariants", Box::new(structural_invariants)),
        ("sedentarity oracle", Box::new(sedentarity)),
        ("performance budget", Box::new(performance)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
