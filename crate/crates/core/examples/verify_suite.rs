//! Runs the full default suite and prints one JSON report per line, the
//! same stream as `nekrasov-verify all --output json`.
//!
//! ```text
//! cargo run --release --example verify_suite -- /tmp/nekrasov-cache
//! ```

use nekrasov_blowup::report::{run_suite, OutputFormat, RunConfig};

fn main() -> nekrasov_blowup::Result<()> {
    let config = RunConfig { cache_dir: std::env::args().nth(1).map(Into::into), output: OutputFormat::Json, ..RunConfig::default() };
    let reports = run_suite(&config)?;
    for r in &reports {
        println!("{}", serde_json::to_string(r)?);
    }
    let failed = reports.iter().filter(|r| !r.status.is_ok()).count();
    eprintln!("{} reports, {failed} not passing", reports.len());
    Ok(())
}
