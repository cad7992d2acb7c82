//! Splits one run into blocks and shows the between-block standard errors.
//!
//! `cargo run --release --example parallel_blocks -- [points] [blocks]`

use sepvol::integrate::{run_many, RunConfig};
use sepvol::{MetricKind, SequenceKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let points: u64 = args.next().map_or(Ok(200_000), |s| s.parse())?;
    let blocks: u64 = args.next().map_or(Ok(8), |s| s.parse())?;
    let cfg = RunConfig::full(MetricKind::Bures, SequenceKind::ScrambledFaure, points, blocks, 2024);
    let metrics = [MetricKind::Bures, MetricKind::Km, MetricKind::Wy];
    let est = run_many(&cfg, &metrics, |p| {
        eprintln!("block {}/{} done after {:.2}s", p.block + 1, p.blocks, p.elapsed)
    })?;
    for e in &est {
        println!(
            "{:<8} p_sep = {:.5} ± {:.5}   v_total = {:.4} ± {:.4}",
            e.metric.name(),
            e.p_sep,
            e.se_p.unwrap_or(f64::NAN),
            e.v_total_tilde,
            e.se_v_total.unwrap_or(f64::NAN),
        );
    }
    println!("{} points in {:.2}s", est[0].points_used, est[0].wall_time);
    Ok(())
}
