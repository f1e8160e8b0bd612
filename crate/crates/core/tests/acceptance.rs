//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;

use realexp::selftest::{run_selftest, SelfTestOptions};

fn main() -> ExitCode {
    let results = run_selftest(&SelfTestOptions::default());
    for r in &results {
        println!(
            "criterion {:>2} ({}): {} [{:.2}s] {}",
            r.id,
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.seconds,
            r.detail
        );
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
