//! Load a JSON problem file, solve it and run the validation checks, as the
//! `volterra` binary does.
//!
//! `cargo run --example problem_file -- fixtures/mittag_leffler.json`

use std::path::PathBuf;

use volterra_series::problem::ProblemFile;
use volterra_series::report::{radius, validate, ValidateOptions};

fn main() -> volterra_series::Result<()> {
    let path = std::env::args_os().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/mittag_leffler.json")
    });
    let p = ProblemFile::load(&path)?;
    let solved = p.problem.solve(&p.truncation)?;
    for (r, i, label, c) in solved.series.entries().into_iter().take(6) {
        println!("({r},{i}) t^({label}) = {c:?}");
    }
    let report = validate(&p, &ValidateOptions::default())?;
    for c in &report.checks {
        println!("{c}");
    }
    let rad = radius(&p, 0.1, None)?;
    println!("{:?}", rad.certified);
    println!("estimate {:?}", rad.estimate);
    Ok(())
}
