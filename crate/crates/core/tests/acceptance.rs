//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;

use sphq_core::corpus::run_all;
use sphq_core::Field;

fn main() -> ExitCode {
    let results = run_all(Field::Rational);
    for r in &results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2} {}: {}", r.id, r.name, r.detail);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
