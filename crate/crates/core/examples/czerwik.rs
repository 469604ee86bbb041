//! The classical bound |f - Q| <= delta/2 is attained by a constant shift.
//!
//! run with `cargo run --example czerwik`

use quadlab::perturb::{make_perturbed, random_quadratic, NoiseModel};
use quadlab::stability::{verify_czerwik, ExtractOptions};
use quadlab::{Sampler, Spaces};

fn main() -> quadlab::Result<()> {
    let q = random_quadratic(2, 1, 9);
    let spaces = Spaces::euclidean(2, 1)?;
    let sampler = Sampler::ball(0, 2000, 3.0);
    for c in [0.05, 1.0, -3.0] {
        let f = make_perturbed(&q, &NoiseModel::Constant { c })?;
        let rep = verify_czerwik(&f, &spaces, &sampler, &ExtractOptions::default())?;
        println!(
            "c={c:>5}: delta {:.6} bound {:.6} max |f-Q| {:.6} within {} homogeneous {}",
            rep.delta, rep.bound, rep.max_deviation, rep.within_bound, rep.homogeneous
        );
    }
    let f = make_perturbed(&q, &NoiseModel::Decay { c: 0.5, alpha: 2.0 })?;
    let rep = verify_czerwik(&f, &spaces, &sampler, &ExtractOptions::default())?;
    println!("decay: delta {:.4} max |f-Q| {:.4} within {}", rep.delta, rep.max_deviation, rep.within_bound);
    Ok(())
}
