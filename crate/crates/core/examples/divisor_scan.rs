//! Integers k with σ₄(k) > φ(k)⁵ up to a bound.
//!
//! `cargo run --release --example divisor_scan -- [bound]`

use sepvol::numbertheory::{check, scan_largest, DEFAULT_BOUND};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bound: u64 = std::env::args().nth(1).map_or(Ok(DEFAULT_BOUND), |s| s.parse())?;
    let list = scan_largest(bound)?;
    println!("{} integers up to {bound}", list.len());
    for &k in list.iter().rev().take(5) {
        let c = check(k)?;
        println!("  k = {k:>5}: σ₄ = {:>22}, φ⁵ = {:>22}", c.sigma4, c.phi5);
    }
    Ok(())
}
