//! Character arithmetic for a composite modulus: enumeration, conductors,
//! orthogonality, and Gauss-sum magnitudes.

use num_complex::Complex64;
use zetalab::characters::{enumerate_characters, from_selector, gauss_sum};
use zetalab::Result;

fn main() -> Result<()> {
    let m = 12u32;
    let chars = enumerate_characters(m)?;
    println!("characters mod {m}:");
    println!(
        "{:>10} {:>7} {:>10} {:>10} {:>6}",
        "selector", "parity", "conductor", "primitive", "real"
    );
    for chi in &chars {
        println!(
            "{:>10} {:>7} {:>10} {:>10} {:>6}",
            chi.selector(),
            if chi.parity() == 0 { "even" } else { "odd" },
            chi.conductor(),
            chi.is_primitive(),
            chi.is_real()
        );
    }

    // row orthogonality: <chi, psi> over residues is phi(M) on the diagonal
    println!("\northogonality <chi_i, chi_j> (real parts):");
    for a in &chars {
        let row: Vec<String> = chars
            .iter()
            .map(|b| {
                let dot: Complex64 = (1..=i64::from(m))
                    .map(|n| a.value(n) * b.value(n).conj())
                    .sum();
                format!("{:5.1}", dot.re)
            })
            .collect();
        println!("  {}", row.join(" "));
    }

    println!("\nGauss sums of primitive characters, |tau(chi)|^2 vs modulus:");
    for sel in ["3.1", "4.1", "5.1", "5.2", "12.1"] {
        let chi = from_selector(sel)?;
        let tau = gauss_sum(&chi)?;
        println!(
            "  chi = {sel:>5}: |tau|^2 = {:>18.12}  (M = {})",
            tau.norm_sqr(),
            chi.modulus()
        );
    }
    Ok(())
}
