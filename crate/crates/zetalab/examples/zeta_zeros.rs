//! Critical-line zeros of the zeta function up to height 100: the census
//! against the counting formula, and the Z-function values that locate them.

use zetalab::zeros::{find_zeros_zeta, riemann_von_mangoldt, zeta_z};
use zetalab::Result;

fn main() -> Result<()> {
    let t = 100.0;
    let zeros = find_zeros_zeta(t)?;
    let expected = riemann_von_mangoldt(t)?;
    println!(
        "N({t}) = {} ordinates found, counting formula gives {:.4}",
        zeros.len(),
        expected
    );

    println!("\nfirst ten ordinates and |Z| there:");
    for &g in &zeros.ordinates()[..10] {
        println!("  gamma = {g:>18.12}   |Z(gamma)| = {:.2e}", zeta_z(g).abs());
    }

    // Z changes sign across each zero; sample the sign pattern between them
    println!("\nsign of Z between consecutive ordinates:");
    let ords = zeros.ordinates();
    let mut signs = String::new();
    for w in ords[..11].windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        signs.push(if zeta_z(mid) > 0.0 { '+' } else { '-' });
    }
    println!("  {signs}");

    let gaps: Vec<f64> = ords.windows(2).map(|w| w[1] - w[0]).collect();
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let min = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
    println!("\ngap statistics up to {t}: mean {mean:.4}, min {min:.4}");
    Ok(())
}
