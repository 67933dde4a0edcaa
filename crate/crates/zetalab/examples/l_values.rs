//! Dirichlet L-values off and on the critical line: closed-form checks,
//! functional-equation residuals, and the sampled statistic log|L(1/2+i*gamma)|.

use num_complex::Complex64;
use zetalab::characters::from_selector;
use zetalab::leval::{fe_residual, l_value, sample, zeta};
use zetalab::Result;

const CATALAN: f64 = 0.915_965_594_177_219_0;

fn main() -> Result<()> {
    let chi4 = from_selector("4.1")?;
    let chi3 = from_selector("3.1")?;

    let l1 = l_value(&chi4, Complex64::new(1.0, 0.0))?;
    println!(
        "L(1, chi_4)  = {:.15}   pi/4 = {:.15}",
        l1.re,
        std::f64::consts::FRAC_PI_4
    );
    let l2 = l_value(&chi4, Complex64::new(2.0, 0.0))?;
    println!("L(2, chi_4)  = {:.15}   Catalan = {CATALAN:.15}", l2.re);
    let l13 = l_value(&chi3, Complex64::new(1.0, 0.0))?;
    println!(
        "L(1, chi_3)  = {:.15}   pi/(3 sqrt 3) = {:.15}",
        l13.re,
        std::f64::consts::PI / (3.0 * 3.0f64.sqrt())
    );
    let z2 = zeta(Complex64::new(2.0, 0.0))?;
    println!(
        "zeta(2)      = {:.15}   pi^2/6 = {:.15}",
        z2.re,
        std::f64::consts::PI * std::f64::consts::PI / 6.0
    );

    println!("\nfunctional-equation residual |Lambda(s) - eps * conj(Lambda(1-conj s))|:");
    for (sigma, t) in [(0.3, 5.0), (0.5, 40.0), (1.2, 150.0), (-0.5, 12.0)] {
        let r = fe_residual(&chi4, Complex64::new(sigma, t))?;
        println!("  s = {sigma:>5} + {t:>6}i   residual = {r:.3e}");
    }

    println!("\ncritical-line samples for chi_4:");
    println!(
        "{:>16} {:>16} {:>16} {:>8}",
        "gamma", "log|L|", "arg L", "flagged"
    );
    for gamma in [14.134725141798, 21.022039638772, 25.010857580146] {
        let s = sample(&chi4, gamma)?;
        println!(
            "{:>16.6} {:>16.10} {:>16.10} {:>8}",
            s.gamma, s.log_abs, s.arg, s.near_l_zero
        );
    }
    Ok(())
}
