//! Restricted-domain certificate for a perturbed quadratic form.
//!
//! run with `cargo run --example certify`

use quadlab::perturb::{make_perturbed, random_quadratic, NoiseModel};
use quadlab::stability::{certify, stability_constants, CertifyOptions};
use quadlab::{EquationParams, Sampler, SpaceSpec, Spaces};

fn main() -> quadlab::Result<()> {
    let p = EquationParams::parse("1/3")?;
    let c = stability_constants(&p, 1.0, 1.0)?;
    println!("r=1/3 d=1 delta=1: M={} K={} C_restricted={} C_global={} C_approx={}", c.M, c.K, c.C_restricted, c.C_global, c.C_approx);

    let q = random_quadratic(3, 2, 5);
    let spaces = Spaces::new(SpaceSpec::euclidean(3)?, SpaceSpec::sup(2)?);
    for delta in [0.01, 0.1] {
        let f = make_perturbed(&q, &NoiseModel::UniformBounded { delta, seed: 1 })?;
        let cert = certify(&f, &p, 1.0, &spaces, &Sampler::ball(2, 3000, 4.0), &CertifyOptions::default())?;
        println!(
            "noise {delta}: delta_hat {:.4} bound {:.4} max |f-Q| {:.4} -> {:?}",
            cert.delta_hat, cert.bound_used, cert.max_deviation, cert.status
        );
        for w in &cert.warnings {
            println!("  warning: {w}");
        }
    }

    // an analytic delta replaces the sampled estimate
    let f = make_perturbed(&q, &NoiseModel::UniformBounded { delta: 0.1, seed: 1 })?;
    let opts = CertifyOptions { delta_override: Some(0.1 * (1.0 + 1.0 + p.rs())), ..CertifyOptions::default() };
    let cert = certify(&f, &p, 1.0, &spaces, &Sampler::ball(2, 3000, 4.0), &opts)?;
    println!("override: delta {} bound {:.4} -> {:?}", cert.constants.delta, cert.bound_used, cert.status);
    Ok(())
}
