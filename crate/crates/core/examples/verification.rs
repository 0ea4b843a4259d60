//! Run verification suites from code and print their reports.
//!
//! ```text
//! cargo run --release --example verification -- gates 3
//! ```

use cubemodel::verify::verify_suite;

fn main() -> cubemodel::Result<()> {
    let mut args = std::env::args().skip(1);
    let suite = args.next().unwrap_or_else(|| "multiplicity".to_string());
    let radius: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(2);
    let report = verify_suite(&suite, radius, 0)?;
    print!("{}", report.to_text());
    std::process::exit(report.exit_code);
}
