//! Residuals of the classical and generalized equations for a few maps.
//!
//! run with `cargo run --example residuals`

use quadlab::perturb::{make_perturbed, NoiseModel};
use quadlab::quadratic::{residual_gq, residual_q};
use quadlab::{EquationParams, MapHandle, QuadraticForm};

fn main() -> quadlab::Result<()> {
    let r = EquationParams::parse("1/3")?;
    let square = MapHandle::from_quadratic(&QuadraticForm::identity(1, 1));
    let shifted = make_perturbed(&QuadraticForm::identity(1, 1), &NoiseModel::Constant { c: 5.0 })?;
    let cube = MapHandle::scalar("x^3", |x| x.powi(3));

    let (x, y) = ([3.0], [0.0]);
    println!("r = {r}, rs = {:.4}", r.rs());
    for f in [&square, &shifted, &cube] {
        let q = residual_q(f, &x, &y)?[0];
        let gq = residual_gq(f, &r, &x, &y)?[0];
        println!("{:<12} q-residual {q:>8.4}  gq-residual {gq:>8.4}", f.label());
    }

    // the cube fails the classical equation even at (1, 1)
    println!("x^3 at (1,1): {}", residual_q(&cube, &[1.0], &[1.0])?[0]);
    Ok(())
}
