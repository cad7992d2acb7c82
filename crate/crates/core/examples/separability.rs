//! Builds random two-qubit states from cube points and classifies them with
//! the partial transpose; also walks the Werner family through p = 1/3.
//!
//! `cargo run --example separability -- [samples]`

use sepvol::qmc::PointGenerator;
use sepvol::states::{assemble, flag_from_cube, is_separable, min_pt_eigenvalue, simplex_from_cube, DensityMatrix};
use sepvol::SequenceKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples: u64 = std::env::args().nth(1).map_or(Ok(100_000), |s| s.parse())?;
    for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 1.0] {
        let rho = DensityMatrix::werner(p);
        println!("werner p = {p:.4}: min PT eigenvalue {:+.6}, separable {}", min_pt_eigenvalue(&rho), is_separable(&rho));
    }

    // Flat measure on the simplex × Haar on the flag: the Hilbert–Schmidt-like
    // fraction, not a metric-weighted probability.
    let generator = PointGenerator::new(SequenceKind::ScrambledHalton, 15, 3)?;
    let mut u = [0.0; 15];
    let mut separable = 0u64;
    for i in 1..=samples {
        generator.fill(i, &mut u);
        let rho = assemble(&simplex_from_cube(&u[..3])?, &flag_from_cube(&u[3..])?);
        separable += is_separable(&rho) as u64;
    }
    println!("unweighted separable fraction over {samples} states: {:.4}", separable as f64 / samples as f64);
    Ok(())
}
