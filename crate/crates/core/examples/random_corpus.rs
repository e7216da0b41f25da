//! Seeded random complexes; the seed comes from DRTOOLKIT_SEED when set.

use drtoolkit::builders::{random_complex, Requirement};
use drtoolkit::dr::{decide_dr, DrBounds};
use drtoolkit::homotopy::homology;

fn main() {
    let base: u64 = std::env::var("DRTOOLKIT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    let bounds = DrBounds::default();
    for seed in base..base + 10 {
        for require in [Requirement::Any, Requirement::SimplyConnectedDr] {
            let x = random_complex(seed, 5, 4, require);
            let v = decide_dr(&x, &bounds);
            println!(
                "seed {seed:<3} {:<18} V{} E{} F{}  {:<22} {}",
                format!("{require:?}"),
                x.num_vertices(),
                x.num_edges(),
                x.num_faces(),
                homology(&x).to_string(),
                v.status,
            );
        }
    }
}
