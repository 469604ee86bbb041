//! Shell-wise defect profiles and the asymptotic verdict.
//!
//! run with `cargo run --example shell_profile`

use quadlab::asymptotics::{asymptotic_verdict, shell_delta_profile};
use quadlab::perturb::{make_perturbed, NoiseModel};
use quadlab::{EquationParams, QuadraticForm, Spaces};

fn main() -> quadlab::Result<()> {
    let spaces = Spaces::euclidean(2, 1)?;
    let p = EquationParams::parse("1/2")?;
    let q = QuadraticForm::identity(2, 1);
    let cases = [
        ("exact", NoiseModel::None),
        ("constant 1", NoiseModel::Constant { c: 1.0 }),
        ("decay 1/(1+|x|)", NoiseModel::Decay { c: 1.0, alpha: 1.0 }),
    ];
    for (name, noise) in cases {
        let f = make_perturbed(&q, &noise)?;
        let prof = shell_delta_profile(&f, &p, &spaces, 1, 16, 500, 0)?;
        let v = asymptotic_verdict(&prof, 1e-2)?;
        let d = prof.deltas();
        println!("{name:<16} {:?} tail max {:.3e}", v.verdict, v.tail_max);
        println!("  delta_n: {}", d.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(" "));
    }
    Ok(())
}
