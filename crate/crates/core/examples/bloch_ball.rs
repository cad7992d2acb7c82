//! Single-qubit check: the radial volume profile of the Bures and maximal
//! metrics against their closed forms, and the truncated volume of the
//! maximal metric growing like ε^(-1/2).
//!
//! `cargo run --example bloch_ball`

use sepvol::metrics::bloch_radial_profile;
use sepvol::MetricKind;

fn main() {
    println!("{:>4} {:>14} {:>14} {:>14}", "r", "bures", "max", "km");
    for i in 1..=9 {
        let r = i as f64 / 10.0;
        let b = bloch_radial_profile(MetricKind::Bures, r) / (2.0 * r * r / (1.0 - r * r).sqrt());
        let m = bloch_radial_profile(MetricKind::Max, r) / (2.0 * r * r / (1.0 - r * r).powf(1.5));
        println!("{r:>4.1} {b:>14.12} {m:>14.12} {:>14.6}", bloch_radial_profile(MetricKind::Km, r));
    }

    // ∫₀^{1-ε} 2r²(1-r²)^(-3/2) dr = 2[r/√(1-r²) - arcsin r]
    println!("\nmax metric, volume of r ≤ 1 - ε");
    for k in 1..=8 {
        let eps = 10f64.powi(-k);
        let r = 1.0 - eps;
        let v = 2.0 * (r / (eps * (2.0 - eps)).sqrt() - r.asin());
        println!("  ε = 1e-{k}: {v:>14.4}   · √ε = {:.6}", v * eps.sqrt());
    }
}
