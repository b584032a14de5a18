//! Acceptance suite: one PASS/FAIL line per criterion, failing rows listed
//! beneath. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use gq42::verify::{self, Status};
use gq42::{GramForm, Model};

fn main() -> ExitCode {
    let started = Instant::now();
    let model = match Model::build(GramForm::SymplecticJ) {
        Ok(m) => m,
        Err(e) => {
            println!("model build FAIL: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut failed = Vec::new();
    for check in &verify::CHECKS {
        let t = Instant::now();
        let rows = verify::run_check(check, &model, 0);
        let pass = verify::all_pass(&rows);
        println!(
            "{:<4} {} {} ({} rows, {:.1}s)",
            check.id,
            if pass { "PASS" } else { "FAIL" },
            check.summary,
            rows.len(),
            t.elapsed().as_secs_f64()
        );
        for r in rows.iter().filter(|r| r.status == Status::Fail) {
            println!("       {r}");
        }
        if !pass {
            failed.push(check.id);
        }
    }
    println!(
        "acceptance: {} of {} criteria pass in {:.1}s",
        verify::CHECKS.len() - failed.len(),
        verify::CHECKS.len(),
        started.elapsed().as_secs_f64()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
