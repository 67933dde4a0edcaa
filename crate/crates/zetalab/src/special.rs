//! Scalar special functions: complex log-gamma, real digamma, and the error
//! function family backing the Gaussian reference CDF.

use num_complex::Complex64;

use crate::error::{Error, Result};

const LN_TAU_HALF: f64 = 0.918_938_533_204_672_7; // ln(2π)/2

/// Stirling coefficients B_{2k} / (2k(2k−1)) for k = 1..=6.
const STIRLING: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
];

/// Principal-branch ln Γ(z) for Re z > −1/2 (the strip used on the critical
/// line and by the completed L-function), |Im z| up to desk heights.
///
/// Stirling's series once |z| ≥ 10, reached by the recurrence
/// ln Γ(z) = ln Γ(z+n) − Σ ln(z+k).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if z.re <= 0.0 && z.im == 0.0 && z.re.fract() == 0.0 {
        return Err(Error::Domain(format!("ln_gamma pole at z = {}", z.re)));
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm_sqr() < 100.0 {
        shift += w.ln();
        w += 1.0;
    }
    let mut series = Complex64::new(0.0, 0.0);
    let w2 = w * w;
    let mut pow = w;
    for c in STIRLING {
        series += c / pow;
        pow *= w2;
    }
    Ok((w - 0.5) * w.ln() - w + LN_TAU_HALF + series - shift)
}

/// Digamma ψ(a) for real a > 0: recurrence lift then the asymptotic series.
#[must_use]
pub fn digamma(a: f64) -> f64 {
    debug_assert!(a > 0.0);
    let mut shift = 0.0;
    let mut x = a;
    while x < 12.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    // ψ(x) ~ ln x − 1/(2x) − Σ B_{2k}/(2k x^{2k})
    let inv2 = 1.0 / (x * x);
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    x.ln() - 0.5 / x - tail + shift
}

/// erf(x) to ~1e−14 relative: Maclaurin series for |x| ≤ 2.5, complementary
/// continued fraction (modified Lentz) beyond.
#[must_use]
pub fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x <= 2.5 {
        erf_series(x)
    } else {
        1.0 - erfc_cf(x)
    }
}

/// erfc(x) for x ≥ 0 without cancellation in the tail.
#[must_use]
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x <= 2.5 {
        1.0 - erf_series(x)
    } else {
        erfc_cf(x)
    }
}

fn erf_series(x: f64) -> f64 {
    // 2/√π Σ (−1)^n x^{2n+1} / (n!(2n+1))
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= -x2 / n;
        let add = term / (2.0 * n + 1.0);
        sum += add;
        if add.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum * 2.0 / std::f64::consts::PI.sqrt()
}

fn erfc_cf(x: f64) -> f64 {
    // erfc(x) = e^{−x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    let mut k = 0.5;
    for _ in 0..200 {
        d = x + k * d;
        if d == 0.0 {
            d = tiny;
        }
        c = x + k / c;
        if c == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
        k += 0.5;
    }
    (-x * x).exp() / std::f64::consts::PI.sqrt() / f
}

/// Standard normal CDF Φ(x).
#[must_use]
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}
