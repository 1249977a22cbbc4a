//! Runs acceptance criteria 1-13 and prints one PASS/FAIL line per criterion.
//! Exits nonzero when any criterion fails.

use std::process::ExitCode;

use superconf::acceptance;

fn main() -> ExitCode {
    let threads = superconf::parallel::thread_limit();
    let results = acceptance::run_all(threads);
    println!();
    println!("running {} acceptance criteria", results.len());
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria PASS", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED criteria {failed:?}");
        ExitCode::FAILURE
    }
}
