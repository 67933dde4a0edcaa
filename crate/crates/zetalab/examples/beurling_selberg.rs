//! Band-limited sign and indicator approximations: the smoothing kernel G,
//! the odd function F that tends to sgn, and how the error shrinks as the
//! frequency cutoff grows.

use zetalab::distlab::{f_omega, g_func, indicator_approx};
use zetalab::Result;

fn main() -> Result<()> {
    println!("kernel G(u) on [0,1]:");
    for u in [0.0, 0.25, 0.5, 0.75, 1.0] {
        println!("  G({u:.2}) = {:.12}", g_func(u)?);
    }

    println!("\nF(x) vs sgn(x) for cutoffs 2, 4, 8:");
    println!("{:>6} {:>12} {:>12} {:>12}", "x", "F_2", "F_4", "F_8");
    for x in [-2.0, -0.5, -0.1, 0.1, 0.5, 2.0] {
        println!(
            "{x:>6} {:>12.8} {:>12.8} {:>12.8}",
            f_omega(2.0, x)?,
            f_omega(4.0, x)?,
            f_omega(8.0, x)?
        );
    }

    // exact sign reproduction on the lattice x = k / (2 Omega)
    println!("\nlattice exactness: |F_4(0.75) - 1| = {:.2e}", (f_omega(4.0, 0.75)? - 1.0).abs());

    let (a, b) = (-1.0, 1.0);
    println!("\nindicator of [{a}, {b}) via (F(x-A) - F(x-B))/2:");
    println!("{:>8} {:>14} {:>14}", "x", "Omega=5", "Omega=10");
    for x in [-2.7183, -0.9, 0.0, 0.9, 2.7183] {
        println!(
            "{x:>8} {:>14.8} {:>14.8}",
            indicator_approx(a, b, 5.0, x)?,
            indicator_approx(a, b, 10.0, x)?
        );
    }

    println!("\nerror at x = 2.7183 halves (at least) when the cutoff doubles:");
    for omega in [5.0, 10.0, 20.0, 40.0] {
        let err = indicator_approx(a, b, omega, 2.7183)?.abs();
        println!("  Omega = {omega:>4}: error = {err:.3e}");
    }
    Ok(())
}
