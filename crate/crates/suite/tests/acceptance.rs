use std::process::ExitCode;

const SEED: u64 = 0x5eed;

fn main() -> ExitCode {
    let mut failed = 0;
    for (id, _, _) in slender_suite::CRITERIA {
        let outcome = slender_suite::run(id, SEED).expect("listed criterion");
        println!("{}", outcome.line());
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", slender_suite::CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
