//! Parity split and the intermediate identities behind the equivalence of
//! the generalized and classical equations.
//!
//! run with `cargo run --example derivation_chain`

use quadlab::perturb::{make_odd_witness, random_quadratic};
use quadlab::quadratic::{derivation_chain_check, parity_decompose, polarize};
use quadlab::{EquationParams, MapHandle, Sampler, Spaces};

fn main() -> quadlab::Result<()> {
    let spaces = Spaces::euclidean(2, 1)?;
    let sampler = Sampler::ball(11, 2000, 3.0);
    let q = random_quadratic(2, 1, 3);
    let exact = MapHandle::from_quadratic(&q);
    let linear = make_odd_witness(&[vec![1.0, -2.0]])?;

    for r in ["1/2", "1/3", "2/3"] {
        let p = EquationParams::parse(r)?;
        let t = derivation_chain_check(&exact, &p, &spaces, &sampler)?;
        println!(
            "exact form, r={r}: odd_r {:.1e} odd_s {:.1e} doubling {:.1e} expansion {:.1e}",
            t.odd_scaling_r, t.odd_scaling_s, t.even_doubling, t.even_expansion
        );
    }

    // a linear map is odd, so the odd-part identities carry the whole defect
    let p = EquationParams::parse("1/2")?;
    let t = derivation_chain_check(&linear, &p, &spaces, &sampler)?;
    println!("linear map: odd_r {:.3} odd_s {:.3} doubling {:.1e}", t.odd_scaling_r, t.odd_scaling_s, t.even_doubling);

    let (even, odd) = parity_decompose(&linear);
    let x = [0.5, 1.5];
    println!("f_e(x) = {:?}, f_o(x) = {:?}", even.eval(&x)?, odd.eval(&x)?);

    let b = polarize(&exact, &[1.0, 0.0], &[0.0, 1.0])?;
    println!("B(e1, e2) = {:.6}, coefficient = {:.6}", b[0], q.coeffs()[0][1]);
    Ok(())
}
