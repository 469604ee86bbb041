//! Scan of exponent tuples (p, q, u, v) in the generalized norm identity.
//!
//! run with `cargo run --example exponent_scan`

use quadlab::geometry::{exponent_scan, Exponents};
use quadlab::{EquationParams, Sampler, SpaceSpec};

fn main() -> quadlab::Result<()> {
    let plane = SpaceSpec::euclidean(2)?;
    let sampler = Sampler::ball(4, 500, 3.0);
    let r = EquationParams::parse("1/3")?;

    let scan = exponent_scan(&plane, &r, &Exponents::default_grid(), &sampler, 1e-9)?;
    println!("euclidean plane, r=1/3: {} of {} flagged: {:?}", scan.flagged.len(), scan.rows.len(), scan.flagged);
    let mut rows: Vec<_> = scan.rows.iter().filter_map(|row| row.sup_defect.map(|d| (d, row.exps))).collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (d, e) in rows.iter().take(5) {
        println!("  ({}, {}, {}, {}) sup defect {d:.3e}", e.p, e.q, e.u, e.v);
    }

    // negative exponents skip the zero witnesses
    let grid = vec![Exponents::new(2.0, 2.0, -1.0, 2.0)?];
    let scan = exponent_scan(&plane, &r, &grid, &sampler, 1e-9)?;
    let row = &scan.rows[0];
    println!("(2,2,-1,2): sup defect {:?}, zero witnesses excluded {}", row.sup_defect, row.excluded_zero_witnesses);

    let l1 = SpaceSpec::p_norm(2, 1.0)?;
    let scan = exponent_scan(&l1, &r, &Exponents::default_grid(), &sampler, 1e-9)?;
    println!("l1 plane: {} flagged", scan.flagged.len());
    Ok(())
}
