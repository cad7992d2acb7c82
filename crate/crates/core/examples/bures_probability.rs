//! Bures separability probability with every sequence kind.
//!
//! `cargo run --release --example bures_probability -- [points]`

use sepvol::integrate::{run, RunConfig};
use sepvol::{MetricKind, SequenceKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let points: u64 = std::env::args().nth(1).map_or(Ok(1_000_000), |s| s.parse())?;
    for kind in SequenceKind::ALL {
        let est = run(&RunConfig::full(MetricKind::Bures, kind, points, 10, 7))?;
        println!(
            "{:<18} p_sep = {:.5} ± {:.5}  ({:.1}s)",
            kind.name(),
            est.p_sep,
            est.se_p.unwrap_or(f64::NAN),
            est.wall_time
        );
    }
    Ok(())
}
