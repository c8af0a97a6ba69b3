//! Every pipeline at one `b`, diffed term by term after regrading to `μ`.
//!
//! `cargo run --example compare -- 3/2`

use trajquad::cli::{cmd_compare, Method, RunConfig};

fn main() -> trajquad::Result<()> {
    let b = std::env::args().nth(1).unwrap_or_else(|| "3/2".into());
    let configs: Vec<RunConfig> = Method::ALL
        .iter()
        .map(|&method| RunConfig {
            method,
            b: b.clone(),
            ..Default::default()
        })
        .collect();
    let report = cmd_compare(&configs, None, None)?;
    print!("{report}");
    std::process::exit(if report.agree() { 0 } else { 1 });
}
