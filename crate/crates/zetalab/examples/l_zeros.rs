//! Zeros of L(s, chi_4) and L(s, chi_3) on the critical line, the gap
//! eta(gamma) from each zeta ordinate to the nearest L-zero, and the
//! coincidence / near-miss audits over a common height.

use zetalab::characters::from_selector;
use zetalab::zeros::{
    eta_chi, find_zeros_l, find_zeros_zeta, hypothesis_d_audit, hypothesis_h_profile,
};
use zetalab::Result;

fn main() -> Result<()> {
    let t = 100.0;
    let chi4 = from_selector("4.1")?;
    let chi3 = from_selector("3.1")?;

    let zeta = find_zeros_zeta(t)?;
    let l4 = find_zeros_l(&chi4, t)?;
    let l3 = find_zeros_l(&chi3, t)?;
    println!("up to T = {t}: {} zeta, {} chi_4, {} chi_3 ordinates", zeta.len(), l4.len(), l3.len());

    println!("\nfirst five chi_4 ordinates:");
    for &g in &l4.ordinates()[..5] {
        println!("  {g:.9}");
    }

    println!("\neta(gamma) = distance from zeta ordinate to nearest chi_4 zero:");
    for &g in &zeta.ordinates()[..5] {
        let eta = eta_chi(g, &l4)?;
        println!("  gamma = {g:>14.6}   eta = {:.6}", eta.value);
    }

    // the zero sets never touch: no pair within 1e-6 at this height
    for (label, lz) in [("chi_4", &l4), ("chi_3", &l3)] {
        let pairs = hypothesis_d_audit(&zeta, lz, 1e-6)?;
        println!("\ncoincidences with {label} within 1e-6: {}", pairs.len());
        let c_grid = [0.1, 0.3, 0.5, 0.7, 0.9];
        let profile = hypothesis_h_profile(&zeta, lz, &c_grid, t)?;
        for (c, p) in c_grid.iter().zip(&profile) {
            println!("  fraction with an {label} zero within {c}/ln T: {p:.4}");
        }
    }
    Ok(())
}
