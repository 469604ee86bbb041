//! Direct-method extraction Q(x) = lim 4^-n f(2^n x) and its diagnostics.
//!
//! run with `cargo run --example extraction`

use quadlab::perturb::{make_perturbed, NoiseModel};
use quadlab::stability::{extract_quadratic, ExtractOptions};
use quadlab::{MapHandle, QuadraticForm};

fn main() -> quadlab::Result<()> {
    let q = QuadraticForm::new(2, vec![vec![2.0, 0.5, 0.5, 1.0]])?;
    let f = make_perturbed(&q, &NoiseModel::Sine { c: 0.3, w: vec![1.0, 2.0] })?;
    let x = [0.7, -0.2];

    let (qx, diag) = extract_quadratic(&f, &x, &ExtractOptions::default())?;
    println!("f(x) = {:.6}, extracted Q(x) = {:.12}, exact Q(x) = {:.12}", f.eval(&x)?[0], qx[0], q.eval(&x)?[0]);
    println!("iterations {} converged {} tail estimate {:.2e}", diag.iterations, diag.converged, diag.tail_estimate);
    for (n, d) in diag.deviations.iter().enumerate().take(6) {
        println!("  step {:>2}: |delta| = {d:.3e}", n + 1);
    }

    // exponential growth overflows before the iteration settles
    let exp = MapHandle::scalar("exp", f64::exp);
    match extract_quadratic(&exp, &[1.0], &ExtractOptions::default()) {
        Ok(_) => println!("exp: converged (unexpected)"),
        Err(e) => println!("exp: {e}"),
    }
    Ok(())
}
