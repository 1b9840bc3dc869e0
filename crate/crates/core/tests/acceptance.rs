//! One pass/fail line per acceptance criterion. Every comparison is exact.

use std::process::ExitCode;
use std::time::Instant;

use resring::suites;
use resring::{Report, Result};

const SEED: u64 = 20_260_101;

fn criteria() -> Vec<(
    u32,
    &'static str,
    Box<dyn Fn() -> Result<Report> + Send + Sync>,
)> {
    vec![
        (
            1,
            "Betti shapes, n = 4..7, 20 random configurations each",
            Box::new(|| suites::betti_shapes(&[4, 5, 6, 7], SEED, 20)),
        ),
        (
            2,
            "standard Ω proportional to the closed form, n = 3..8",
            Box::new(|| suites::standard_omega(&[3, 4, 5, 6, 7, 8])),
        ),
        (
            3,
            "bracket constant, all words n = 4..7, sampled n = 8",
            Box::new(|| suites::key_lemma(&[4, 5, 6, 7, 8], SEED, 7, 200)),
        ),
        (
            4,
            "symmetry suite, 100 cases per identity, n = 5..7",
            Box::new(|| suites::symmetries(&[5, 6, 7], SEED, 100)),
        ),
        (
            5,
            "signed brace identities, all triples, n = 5..7",
            Box::new(|| suites::table1(&[5, 6, 7], SEED, 2)),
        ),
        (
            6,
            "n = 4 bracket/brace identities, four points and 20 random",
            Box::new(|| suites::quartic(SEED, 20)),
        ),
        (
            7,
            "end to end, n = 4..7 random and t^n - t - 1",
            Box::new(|| suites::end_to_end(&[4, 5, 6, 7], SEED, 3)),
        ),
        (
            8,
            "change of coordinates, 50 per kind, n = 4..6",
            Box::new(|| suites::change_of_coordinates(&[4, 5, 6], SEED, 50)),
        ),
        (
            9,
            "Koszul lifts, symbols and final syzygy, n = 5, 6",
            Box::new(|| suites::koszul(&[5, 6])),
        ),
        (
            10,
            "binary cubics, 50 random plus anchor -23",
            Box::new(|| suites::cubics(SEED, 50)),
        ),
        (
            11,
            "orders B and B', n = 4, 5",
            Box::new(|| suites::orders(&[4, 5])),
        ),
    ]
}

fn main() -> ExitCode {
    let filter: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let selected: Vec<_> = criteria()
        .into_iter()
        .filter(|(id, _, _)| filter.is_empty() || filter.contains(id))
        .collect();
    let results: Vec<(Result<Report>, f64)> = selected
        .iter()
        .map(|(_, _, run)| {
            let start = Instant::now();
            let outcome = run();
            (outcome, start.elapsed().as_secs_f64())
        })
        .collect();
    let mut all = true;
    for ((id, name, _), (outcome, secs)) in selected.iter().zip(results) {
        match outcome {
            Ok(report) if report.passed() => {
                println!(
                    "criterion {id:>2}: pass  {name} ({} checks, {secs:.1}s)",
                    report.checks.len()
                );
            }
            Ok(report) => {
                all = false;
                let first = report.first_failure().expect("a failing check");
                println!(
                    "criterion {id:>2}: FAIL  {name}: {}: {} ({secs:.1}s)",
                    first.name, first.detail
                );
            }
            Err(e) => {
                all = false;
                println!("criterion {id:>2}: FAIL  {name}: error {e} ({secs:.1}s)");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
