//! All seven metrics co-evaluated on one shared point set.
//!
//! `cargo run --release --example metric_table -- [points] [uniform|dirichlet-half]`

use sepvol::cli::render_table;
use sepvol::integrate::{run_many, RunConfig, SimplexSampling};
use sepvol::{MetricKind, SequenceKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let points: u64 = args.next().map_or(Ok(1_000_000), |s| s.parse())?;
    let sampling = match args.next().as_deref() {
        Some("dirichlet-half") => SimplexSampling::DirichletHalf,
        _ => SimplexSampling::Uniform,
    };
    let cfg = RunConfig {
        sampling,
        ..RunConfig::full(MetricKind::Bures, SequenceKind::ScrambledFaure, points, 8, 2024)
    };
    let est = run_many(&cfg, &MetricKind::ALL, |_| {})?;
    print!("{}", render_table(&est));
    println!("{} points, {:.1}s", est[0].points_used, est[0].wall_time);
    Ok(())
}
