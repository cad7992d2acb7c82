//! First points of each sequence kind, and how evenly they fill a 2-d grid.
//!
//! `cargo run --example sequences -- [points]`

use sepvol::qmc::{stream, StreamConfig};
use sepvol::SequenceKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let points: u64 = std::env::args().nth(1).map_or(Ok(4096), |s| s.parse())?;
    for kind in SequenceKind::ALL {
        println!("{}", kind.name());
        let cfg = StreamConfig { kind, dim: 2, seed: 7, start_index: 1, count: points };
        for p in stream(cfg)?.take(4) {
            println!("  ({:.6}, {:.6})", p[0], p[1]);
        }
        // Occupancy of a 16×16 grid: perfectly even would be points/256 per cell.
        let mut cells = [0u32; 256];
        for p in stream(cfg)? {
            cells[(p[0] * 16.0) as usize * 16 + (p[1] * 16.0) as usize] += 1;
        }
        let (lo, hi) = (cells.iter().min().unwrap(), cells.iter().max().unwrap());
        println!("  16x16 cell counts over {points} points: min {lo}, max {hi}");
    }
    Ok(())
}
