//! Searching a small grid for pairs with equal spectra in different orbits.

use point_spectra::miner::{mine, MineKind, MineOptions};
use point_spectra::Result;

fn main() -> Result<()> {
    for (kind, width, height, n) in [(MineKind::Distance, 5, 3, 4), (MineKind::Volume, 4, 2, 6)] {
        let r = mine(&MineOptions { width, height, n, kind, budget: 10_000_000, jobs: 0 })?;
        println!(
            "{kind:?} on {width}x{height}, n = {n}: {} subsets, {} shapes, {} pairs",
            r.enumerated,
            r.shapes,
            r.pairs.len()
        );
        for p in r.pairs.iter().take(3) {
            println!("  {:?}  vs  {:?}", p.left, p.right);
        }
    }
    Ok(())
}
