//! The weighted prime sum P(gamma) that tracks log|L| at zeta zeros, and the
//! per-ordinate remainder split into its four structural parts.

use zetalab::characters::from_selector;
use zetalab::dirpoly::{
    poly_p_chi, poly_p_l, remainder_breakdown, weight_w, CombinationSpec,
};
use zetalab::leval::log_abs_l;
use zetalab::zeros::{find_zeros_l, find_zeros_zeta};
use zetalab::Result;

fn main() -> Result<()> {
    let chi4 = from_selector("4.1")?;
    let chi3 = from_selector("3.1")?;
    let x = 4.0;

    println!("smoothing weight w(n) at X = {x}:");
    for n in [2u64, 4, 5, 9, 13, 16] {
        println!("  w({n:>2}) = {:.12}", weight_w(x, n)?);
    }

    let zeros = find_zeros_zeta(40.0)?;
    println!("\nRe P_chi at the first zeta ordinates (X = {x}):");
    println!("{:>16} {:>14} {:>14}", "gamma", "chi_4", "chi_3");
    for &g in &zeros.ordinates()[..5] {
        println!(
            "{:>16.6} {:>14.8} {:>14.8}",
            g,
            poly_p_chi(&chi4, x, g).re,
            poly_p_chi(&chi3, x, g).re
        );
    }

    let spec = CombinationSpec::new(vec![1.0, 1.0], vec![chi4.clone(), chi3], x)?;
    let g1 = zeros.ordinates()[0];
    println!(
        "\ncombination a = (1,1): Re P(gamma_1) = {:.10}",
        poly_p_l(&spec, g1).re
    );

    // the remainder log|L| - Re P at gamma_1, with its structural parts
    let l4_zeros = find_zeros_l(&chi4, g1 + 10.0)?;
    let b = remainder_breakdown(&chi4, x, g1, &l4_zeros)?;
    let direct = log_abs_l(&chi4, g1)?.log_abs - poly_p_chi(&chi4, x, g1).re;
    println!("\nremainder at gamma_1 for chi_4:");
    println!("  log|L| - Re P       = {direct:>14.9}");
    println!("  r1 (prime powers)   = {:>14.9}", b.r1);
    println!("  r2 (weight tail)    = {:>14.9}", b.r2);
    println!("  r3 (off-line shift) = {:>14.9}", b.r3);
    println!("  r4 (zero proximity) = {:>14.9}", b.r4);
    println!("  eta(gamma_1)        = {:>14.9}", b.eta);
    println!("  |r| <= r1+r2+r3+r4  : {}", direct.abs() <= b.r1 + b.r2 + b.r3 + b.r4);
    Ok(())
}
