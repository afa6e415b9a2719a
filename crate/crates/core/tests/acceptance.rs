//! Runs the ten acceptance criteria and prints one line per criterion.

use almost_abelian::suite::{run_suite, Suite, SuiteOptions};

fn main() {
    let start = std::time::Instant::now();
    let outcomes = run_suite(Suite::All, &SuiteOptions::default());
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} passed, {failed} failed in {:.1} s", outcomes.len() - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
