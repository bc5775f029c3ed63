//! Run the acceptance criteria and print one line per criterion.

use supnorm::acceptance::run_acceptance;

fn main() -> Result<(), supnorm::error::Error> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    for outcome in run_acceptance(None, seed)? {
        println!("{} ({:.2?})", outcome.line(), outcome.elapsed);
    }
    Ok(())
}
