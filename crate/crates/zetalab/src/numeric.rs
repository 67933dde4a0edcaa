//! Low-level floating-point machinery shared across the numerical modules:
//! error-free transforms, an exactly reduced phase t·ln x mod 2π, compensated
//! summation, and adaptive Simpson quadrature.
//!
//! The phase reduction is what keeps critical-line sums accurate at large t.
//! A plain `(t * x.ln()) % TAU` loses ~1e−10 rad at t ≈ 1e5 (the product and
//! the lnΓ-scale logarithm both round at ulp of ~1e6), which caps sum accuracy
//! near 1e−9. Splitting x = m·2^k with m ∈ [0.75, 1.5) keeps |ln m| ≤ 0.406 so
//! its rounding contributes ≤ t·ulp(0.4) ≈ 1e−11, and every product along the
//! way is done error-free, with the 2π reduction in double-double arithmetic.

pub const TAU_HI: f64 = 6.283_185_307_179_586;
pub const TAU_LO: f64 = 2.449_293_598_294_706_4e-16;
const LN2_HI: f64 = 0.693_147_180_559_945_3;
const LN2_LO: f64 = 2.319_046_813_846_299_6e-17;

/// Error-free sum: returns (fl(a+b), roundoff).
#[inline]
#[must_use]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free product via fused multiply-add: returns (fl(a·b), roundoff).
#[inline]
#[must_use]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// t·ln(x) reduced mod 2π to (−π, π], accurate to ~1e−11 rad for
/// 0 < t ≤ 1e5 and 0 < x ≤ 1e6.
#[must_use]
pub fn phase_mod_tau(t: f64, x: f64) -> f64 {
    let (mut m, mut k) = frexp(x);
    if m < 0.75 {
        m *= 2.0;
        k -= 1;
    }
    let lm = m.ln();
    // t·k·ln2, all products exact
    let (tk_hi, tk_lo) = two_prod(t, k as f64);
    let (p1_hi, mut p1_lo) = two_prod(tk_hi, LN2_HI);
    p1_lo += tk_hi * LN2_LO + tk_lo * LN2_HI;
    // t·ln m, |ln m| ≤ 0.406
    let (p2_hi, p2_lo) = two_prod(t, lm);
    let (s_hi, mut s_lo) = two_sum(p1_hi, p2_hi);
    s_lo += p1_lo + p2_lo;
    // double-double reduction mod 2π
    let n = (s_hi / TAU_HI).round();
    let (q_hi, q_lo) = two_prod(n, TAU_HI);
    let (r_hi, mut r_lo) = two_sum(s_hi, -q_hi);
    r_lo += s_lo - q_lo - n * TAU_LO;
    r_hi + r_lo
}

/// x = m·2^k with m ∈ [0.5, 1).
#[inline]
fn frexp(x: f64) -> (f64, i32) {
    debug_assert!(x > 0.0 && x.is_finite());
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp == 0 {
        // subnormal: renormalize
        let scaled = x * f64::from_bits(0x4330_0000_0000_0000); // 2^52
        let (m, k) = frexp(scaled);
        return (m, k - 52);
    }
    let m = f64::from_bits((bits & 0x800f_ffff_ffff_ffff) | 0x3fe0_0000_0000_0000);
    (m, exp - 1022)
}

/// x^(−σ−it) as (re, im), with the phase reduced exactly.
#[inline]
#[must_use]
pub fn cpow_neg(x: f64, sigma: f64, t: f64) -> (f64, f64) {
    let mag = x.powf(-sigma);
    let phase = phase_mod_tau(t, x);
    let (sin, cos) = phase.sin_cos();
    (mag * cos, -mag * sin)
}

/// Kahan–Neumaier compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        self.c += if self.sum.abs() >= x.abs() {
            (self.sum - t) + x
        } else {
            (x - t) + self.sum
        };
        self.sum = t;
    }

    #[inline]
    #[must_use]
    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Adaptive Simpson on [a, b] to absolute tolerance `tol`.
///
/// Returns an error message when the recursion bottoms out before the
/// tolerance is met.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, String> {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fb, fm, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, String> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol || (b - a).abs() < 1e-14 * (a.abs() + b.abs() + 1.0) {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(format!(
            "adaptive Simpson hit max depth on [{a}, {b}] (residual {:.3e})",
            delta.abs()
        ));
    }
    let l = simpson_rec(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1)?;
    let r = simpson_rec(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}
