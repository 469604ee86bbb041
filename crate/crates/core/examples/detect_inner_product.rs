//! Parallelogram-law detection of inner-product norms and Gram recovery.
//!
//! run with `cargo run --example detect_inner_product`

use quadlab::geometry::detect_inner_product;
use quadlab::{Sampler, SpaceSpec};

fn main() -> quadlab::Result<()> {
    let sampler = Sampler::ball(1, 2000, 2.0);
    let spaces = [
        ("euclidean R^3", SpaceSpec::euclidean(3)?),
        ("weighted [[2,0.5],[0.5,3]]", SpaceSpec::weighted(&[vec![2.0, 0.5], vec![0.5, 3.0]])?),
        ("l1 R^2", SpaceSpec::p_norm(2, 1.0)?),
        ("l3 R^2", SpaceSpec::p_norm(2, 3.0)?),
        ("sup R^2", SpaceSpec::sup(2)?),
    ];
    for (name, space) in spaces {
        let v = detect_inner_product(&space, &sampler, 1e-9)?;
        print!("{name:<28} accepted={:<5} max defect {:.3e}", v.accepted, v.max_parallelogram_defect);
        if let Some(b) = v.basis_defect {
            print!(" basis {b:.3}");
        }
        println!();
        if let Some(g) = v.recovered_gram {
            println!("  gram {g:?}");
        }
    }
    Ok(())
}
