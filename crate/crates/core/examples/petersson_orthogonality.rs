//! Petersson pairing of the shipped level-11 weight-4 cusp form with itself
//! and with the untwisted Eisenstein series `E_{4,1;0}`.

use std::path::Path;

use twisted_eisenstein::cuspform::format::read_cusp_form;
use twisted_eisenstein::petersson::{inner, CuspFormEvaluator, QuadratureGrid, UntwistedEisenstein};

fn main() -> twisted_eisenstein::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/level11_weight4_cusp.json");
    let g = CuspFormEvaluator::new(read_cusp_form(&path)?)?;
    println!("Fricke eigenvalue of g: {:+.9}", g.fricke_eigenvalue());
    let e = UntwistedEisenstein::standard(11, 4, 1)?;
    let grid = QuadratureGrid::for_level(11);
    for grid in [grid.clone(), grid.refined()] {
        let gg = inner(&g, &g, &grid)?;
        let eg = inner(&e, &g, &grid)?;
        println!("nodes {:>6}  <g,g> = {:.12e} +- {:.2e}", gg.nodes, gg.value.re, gg.error_estimate);
        println!("              <E,g> = {:.3e} +- {:.2e}  ratio {:.3e}", eg.value, eg.error_estimate, eg.value.norm() / gg.value.re);
    }
    Ok(())
}
