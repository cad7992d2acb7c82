//! The seven operator monotone functions and their Morozova–Chentsov
//! functions at a few arguments.
//!
//! `cargo run --example metric_functions`

use sepvol::metrics::{f, mc};
use sepvol::MetricKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ts = [0.01, 0.25, 1.0, 4.0, 100.0];
    print!("{:<8}", "f(t)");
    for t in ts {
        print!("{t:>12}");
    }
    println!();
    for m in MetricKind::ALL {
        print!("{:<8}", m.name());
        for t in ts {
            print!("{:>12.6}", f(m, t)?);
        }
        println!();
    }

    println!("\nc(x, y) · (x + y)/2 at y = 1 - x; 1 on the diagonal");
    for m in MetricKind::ALL {
        print!("{:<8}", m.name());
        for x in [0.5, 0.6, 0.9, 0.99, 0.999_999] {
            print!("{:>14.6}", mc(m, x, 1.0 - x)? * 0.5);
        }
        println!();
    }
    Ok(())
}
