//! Simplex integrals: the Hall normalization and the Kubo–Mori/Bures ratio
//! for N = 2, 3, 4, under both spectrum sampling laws.
//!
//! `cargo run --release --example hall_constants -- [points]`

use sepvol::integrate::{run_simplex, RunConfig, SimplexSampling};
use sepvol::metrics::hall_constant;
use sepvol::{MetricKind, SequenceKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let points: u64 = std::env::args().nth(1).map_or(Ok(1_000_000), |s| s.parse())?;
    println!("{:>2} {:>14} {:<15} {:>12} {:>12}", "N", "C_N", "sampling", "C_N·∫w_B", "KM/Bures");
    for n in 2..=4 {
        for sampling in [SimplexSampling::Uniform, SimplexSampling::DirichletHalf] {
            let cfg = RunConfig::simplex(MetricKind::Km, n, SequenceKind::ScrambledFaure, points, 1);
            let s = run_simplex(&cfg, sampling)?;
            println!(
                "{n:>2} {:>14.6} {:<15} {:>12.6} {:>12.6}",
                hall_constant(n),
                format!("{sampling:?}"),
                s.hall_normalized(),
                s.ratio()
            );
        }
    }
    println!("KM/Bures tends to 2^(N(N-1)/2): 2, 8, 64");
    Ok(())
}
