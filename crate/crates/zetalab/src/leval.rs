//! Evaluation of Dirichlet L-functions on and near the critical line through
//! the Hurwitz-zeta decomposition L(s,χ) = M^{−s} Σ_a χ(a) ζ(s, a/M), with
//! functional-equation cross-checks, log|L| sampling, and a continuous
//! argument along horizontal segments.

use num_complex::Complex64;

use crate::characters::{gauss_sum, DirichletCharacter};
use crate::error::{Error, Result};
use crate::numeric::{cpow_neg, Compensated};
use crate::special::{digamma, ln_gamma};

/// B_{2k}/(2k)! for k = 1..6, the Euler–Maclaurin tail coefficients.
const EM_TAIL: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
];

/// Hurwitz zeta ζ(s, a) for 0 < a ≤ 1, Re s ≥ −1, s ≠ 1.
///
/// Euler–Maclaurin with N = max(96, ⌈|Im s|⌉) direct terms and a Bernoulli
/// tail to order 12. The direct terms use the exactly reduced phase, so the
/// result keeps ~1e−11 mixed relative/absolute accuracy up to |Im s| = 1e5.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!("hurwitz_zeta needs 0 < a <= 1, got a={a}")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::HurwitzPole);
    }
    if s.re < -1.0 {
        return Err(Error::Domain(format!("hurwitz_zeta limited to Re s >= -1, got {}", s.re)));
    }
    let (sigma, t) = (s.re, s.im);
    let n_terms = (t.abs().ceil() as usize).max(96);
    let mut re = Compensated::default();
    let mut im = Compensated::default();
    for n in 0..n_terms {
        let (x, y) = cpow_neg(n as f64 + a, sigma, t);
        re.add(x);
        im.add(y);
    }
    let mut total = Complex64::new(re.value(), im.value());

    let w = n_terms as f64 + a;
    let winv = {
        let (x, y) = cpow_neg(w, sigma, t);
        Complex64::new(x, y)
    };
    total += winv * w / (s - 1.0) + winv * 0.5;

    // Σ_k B_{2k}/(2k)! · (s)_{2k−1} · w^{−s−2k+1}
    let w2 = 1.0 / (w * w);
    let mut u = winv / w;
    let mut poch = s;
    for (k, &b) in EM_TAIL.iter().enumerate() {
        total += u * poch * b;
        let m = 2.0 * (k + 1) as f64;
        poch *= (s + (m - 1.0)) * (s + m);
        u *= w2;
    }
    Ok(total)
}

/// The regularized value at the pole: lim_{s→1} (ζ(s,a) − 1/(s−1)) = −ψ(a).
#[must_use]
pub fn hurwitz_zeta_reg1(a: f64) -> f64 {
    -digamma(a)
}

/// L(s, χ) together with a bound on the absolute evaluation error.
fn l_value_with_err(chi: &DirichletCharacter, s: Complex64) -> Result<(Complex64, f64)> {
    let m = chi.modulus();
    if s == Complex64::new(1.0, 0.0) {
        if chi.is_principal() {
            return Err(Error::HurwitzPole);
        }
        // pole terms cancel over a nonprincipal character: Σχ(a)·(1/(s−1)) = 0
        let mut sum = Complex64::new(0.0, 0.0);
        for a in 1..=m {
            let v = chi.value(i64::from(a));
            if v.norm_sqr() > 0.0 {
                sum += v * hurwitz_zeta_reg1(f64::from(a) / f64::from(m));
            }
        }
        let l = sum / f64::from(m);
        return Ok((l, 1e-12 * sum.norm().max(1.0)));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0f64;
    for a in 1..=m {
        let v = chi.value(i64::from(a));
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let z = hurwitz_zeta(s, f64::from(a) / f64::from(m))?;
        sum += v * z;
        abs_sum += z.norm();
    }
    let scale = {
        let (x, y) = cpow_neg(f64::from(m), s.re, s.im);
        Complex64::new(x, y)
    };
    // each ζ(s, a/M) carries ~1e−10 mixed relative error
    let err = 1.2e-10 * scale.norm() * abs_sum.max(1.0);
    Ok((scale * sum, err))
}

/// L(s, χ) by Hurwitz decomposition; valid on Re s ∈ [−1, ∞), s ≠ 1 for the
/// principal character. At s = 1 a nonprincipal L is evaluated through the
/// regularized Hurwitz values (the simple poles cancel).
pub fn l_value(chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
    l_value_with_err(chi, s).map(|(l, _)| l)
}

/// Riemann zeta via the a = 1 Hurwitz backbone.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

/// Root number ε(χ) = τ(χ) / (i^𝔞 √M); unimodular for primitive χ.
pub fn root_number(chi: &DirichletCharacter) -> Result<Complex64> {
    let tau = gauss_sum(chi)?;
    let denom = if chi.parity() == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    } * f64::from(chi.modulus()).sqrt();
    Ok(tau / denom)
}

/// log Λ(s,χ) with Λ = (M/π)^{(s+𝔞)/2} Γ((s+𝔞)/2) L(s,χ), up to 2πiℤ,
/// together with the relative evaluation noise of the L factor.
fn ln_completed(chi: &DirichletCharacter, s: Complex64) -> Result<(Complex64, f64)> {
    let a = f64::from(chi.parity());
    let half = (s + a) * 0.5;
    let (l, err) = l_value_with_err(chi, s)?;
    if l.norm_sqr() == 0.0 {
        return Err(Error::Domain(format!(
            "L({}, chi mod {}) vanished exactly; log-completed value undefined",
            s,
            chi.modulus()
        )));
    }
    let ln_cond = (f64::from(chi.modulus()) / std::f64::consts::PI).ln();
    Ok((half * ln_cond + ln_gamma(half)? + l.ln(), err / l.norm()))
}

/// |Λ(s,χ)/(ε(χ)Λ(1−s,χ̄)) − ε|-style residual, computed in log scale so
/// that Γ-factor underflow at large |Im s| cannot mask a genuine failure.
pub fn fe_residual(chi: &DirichletCharacter, s: Complex64) -> Result<f64> {
    fe_residual_with_noise(chi, s).map(|(r, _)| r)
}

fn fe_residual_with_noise(chi: &DirichletCharacter, s: Complex64) -> Result<(f64, f64)> {
    let eps = root_number(chi)?;
    let (lhs, noise_l) = ln_completed(chi, s)?;
    let (rhs, noise_r) = ln_completed(&chi.conjugate(), Complex64::new(1.0, 0.0) - s)?;
    Ok((((lhs - rhs).exp() - eps).norm(), noise_l + noise_r))
}

/// Completed Λ(s,χ), cross-checked against ε(χ)Λ(1−s,χ̄) before returning.
///
/// The acceptance threshold carries the propagated evaluation noise of the
/// two L factors: at a zero of Λ both sides are noise-dominated and the pure
/// relative residual is vacuously O(1), so a fixed 1e−6 cut would reject
/// exactly the points the cross-check is least informative about.
pub fn completed_l(chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive {
            modulus: chi.modulus(),
            conductor: chi.conductor(),
        });
    }
    let (residual, noise) = fe_residual_with_noise(chi, s)?;
    if residual > 1e-6 + 5.0 * noise {
        return Err(Error::FunctionalEquation {
            residual,
            s_re: s.re,
            s_im: s.im,
        });
    }
    Ok(ln_completed(chi, s)?.0.exp())
}

/// One sampled critical-line value: the data row behind the statistics.
#[derive(Clone, Debug)]
pub struct LValueSample {
    pub gamma: f64,
    pub character: String,
    pub log_abs: f64,
    /// Continuously continued argument; NaN when not computed or flagged.
    pub arg: f64,
    /// Estimated absolute error of `log_abs`.
    pub quality: f64,
    pub near_l_zero: bool,
}

impl LValueSample {
    /// Usable for distribution statistics: unflagged and within error budget.
    #[must_use]
    pub fn is_accepted(&self) -> bool {
        !self.near_l_zero && self.quality <= 1e-6
    }
}

/// log|L(1/2 + iγ, χ)| with quality estimate; flags |L| < 1e−10.
///
/// The argument field is left NaN on this path; `sample` fills it.
pub fn log_abs_l(chi: &DirichletCharacter, gamma: f64) -> Result<LValueSample> {
    let s = Complex64::new(0.5, gamma);
    let (l, err) = l_value_with_err(chi, s)?;
    let norm = l.norm();
    let near = norm < 1e-10;
    Ok(LValueSample {
        gamma,
        character: chi.selector(),
        log_abs: norm.ln(),
        arg: f64::NAN,
        quality: if norm > 0.0 { err / norm } else { f64::INFINITY },
        near_l_zero: near,
    })
}

/// arg L(1/2 + iγ, χ), continued from the principal branch at σ = 2 leftward
/// along the horizontal segment. Steps halve (at most 3 times per segment)
/// until each phase increment is below π/2.
pub fn arg_l(chi: &DirichletCharacter, gamma: f64) -> Result<f64> {
    let start = Complex64::new(2.0, gamma);
    let l_start = l_value(chi, start)?;
    let mut total = l_start.arg();
    let mut sigma = 2.0f64;
    let mut l_here = l_start;
    while sigma > 0.5 + 1e-12 {
        let next = (sigma - 0.25).max(0.5);
        let (delta, l_next) = arg_step(chi, gamma, sigma, next, l_here, 0)?;
        total += delta;
        l_here = l_next;
        sigma = next;
    }
    Ok(total)
}

fn arg_step(
    chi: &DirichletCharacter,
    gamma: f64,
    from: f64,
    to: f64,
    l_from: Complex64,
    halvings: u32,
) -> Result<(f64, Complex64)> {
    let l_to = l_value(chi, Complex64::new(to, gamma))?;
    if l_to.norm_sqr() == 0.0 || l_from.norm_sqr() == 0.0 {
        return Err(Error::BranchAmbiguity { sigma: to, t: gamma });
    }
    let delta = (l_to / l_from).arg();
    if delta.abs() < std::f64::consts::FRAC_PI_2 {
        return Ok((delta, l_to));
    }
    if halvings >= 3 {
        return Err(Error::BranchAmbiguity { sigma: to, t: gamma });
    }
    let mid = 0.5 * (from + to);
    let (d1, l_mid) = arg_step(chi, gamma, from, mid, l_from, halvings + 1)?;
    let (d2, l_to) = arg_step(chi, gamma, mid, to, l_mid, halvings + 1)?;
    Ok((d1 + d2, l_to))
}

/// Full sample: log|L| plus the continued argument (NaN when flagged).
pub fn sample(chi: &DirichletCharacter, gamma: f64) -> Result<LValueSample> {
    let mut s = log_abs_l(chi, gamma)?;
    if !s.near_l_zero {
        s.arg = arg_l(chi, gamma)?;
    }
    Ok(s)
}

/// Format with 12 significant digits, the precision used in all CSV output.
#[must_use]
pub fn fmt_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Bulk CSV: header `gamma,log_abs,arg,flag`, 12 significant digits.
pub fn write_samples_csv<W: std::io::Write>(out: &mut W, samples: &[LValueSample]) -> Result<()> {
    writeln!(out, "gamma,log_abs,arg,flag")?;
    for s in samples {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_sig12(s.gamma),
            fmt_sig12(s.log_abs),
            fmt_sig12(s.arg),
            u8::from(s.near_l_zero)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::from_selector;

    const PI: f64 = std::f64::consts::PI;

    fn chi4() -> DirichletCharacter {
        from_selector("4.1").unwrap()
    }

    fn chi3() -> DirichletCharacter {
        from_selector("3.1").unwrap()
    }

    #[test]
    fn hurwitz_basic_values() {
        let z = hurwitz_zeta(Complex64::new(2.0, 0.0), 1.0).unwrap();
        assert!((z.re - PI * PI / 6.0).abs() < 1e-12);
        let z = hurwitz_zeta(Complex64::new(2.0, 0.0), 0.5).unwrap();
        assert!((z.re - PI * PI / 2.0).abs() < 1e-12);
        // ζ(0, a) = 1/2 − a
        let z = hurwitz_zeta(Complex64::new(0.0, 0.0), 0.5).unwrap();
        assert!(z.norm() < 1e-12);
        let z = hurwitz_zeta(Complex64::new(0.0, 0.0), 0.25).unwrap();
        assert!((z.re - 0.25).abs() < 1e-12);
    }

    #[test]
    fn hurwitz_complex_spots() {
        // references computed with 40-digit Euler–Maclaurin
        let cases = [
            (0.5, 100.0, 0.25, 1.1303181386078655, 0.32030351375394927),
            (-1.0, 50.0, 0.75, 6.5366720251902956, -22.251802756200141),
            (2.0, 1000.0, 1.0 / 3.0, 5.3537869551598688, -6.5844447580889645),
            (0.5, 100_000.0, 0.5, 7.2418628815218662, -5.739158524948488),
            (3.0, 0.0, 0.2, 125.73901805721795, 0.0),
        ];
        for &(sig, t, a, re, im) in &cases {
            let z = hurwitz_zeta(Complex64::new(sig, t), a).unwrap();
            let want = Complex64::new(re, im);
            let tol = 1e-10 * want.norm().max(1.0);
            assert!((z - want).norm() < tol, "s={sig}+{t}i a={a}: got {z}, want {want}");
        }
        // a = 1 recovers ζ(s): vanishes at the first ordinate
        let z = hurwitz_zeta(Complex64::new(0.5, 14.134725141734694), 1.0).unwrap();
        assert!(z.norm() < 1e-9);
    }

    #[test]
    fn hurwitz_rejects_bad_domain() {
        assert!(matches!(
            hurwitz_zeta(Complex64::new(1.0, 0.0), 0.5),
            Err(Error::HurwitzPole)
        ));
        assert!(hurwitz_zeta(Complex64::new(-2.0, 0.0), 0.5).is_err());
        assert!(hurwitz_zeta(Complex64::new(2.0, 0.0), 0.0).is_err());
        assert!(hurwitz_zeta(Complex64::new(2.0, 0.0), 1.5).is_err());
    }

    #[test]
    fn l_values_at_special_points() {
        let chi = chi4();
        let l1 = l_value(&chi, Complex64::new(1.0, 0.0)).unwrap();
        assert!((l1.re - PI / 4.0).abs() < 1e-10, "L(1,chi4)={l1}");
        assert!(l1.im.abs() < 1e-12);
        let l2 = l_value(&chi, Complex64::new(2.0, 0.0)).unwrap();
        assert!((l2.re - 0.915_965_594_177_219_02).abs() < 1e-12);
        let lh = l_value(&chi, Complex64::new(0.5, 0.0)).unwrap();
        assert!((lh.re - 0.667_691_457_189_609_18).abs() < 1e-11);
        let l3 = l_value(&chi3(), Complex64::new(1.0, 0.0)).unwrap();
        assert!((l3.re - 0.604_599_788_078_072_62).abs() < 1e-11);
        assert!((l_value(&chi3(), Complex64::new(0.5, 0.0)).unwrap().re
            - 0.480_867_557_696_828_63)
            .abs()
            < 1e-11);
    }

    #[test]
    fn dirichlet_series_agreement() {
        // Re s = 3: direct series over n ≤ 1e6
        let chi = chi4();
        for &t in &[0.0, 5.0, 33.3] {
            let s = Complex64::new(3.0, t);
            let direct: Complex64 = (1..=1_000_000_i64)
                .map(|n| {
                    let (x, y) = cpow_neg(n as f64, s.re, s.im);
                    chi.value(n) * Complex64::new(x, y)
                })
                .sum();
            let l = l_value(&chi, s).unwrap();
            assert!((l - direct).norm() < 1e-8, "t={t}");
        }
        // Re s = 2: tail of alternating series is below 1e-12 only with
        // acceleration; pair consecutive terms instead (χ₄ has period 4)
        let s = Complex64::new(2.0, 0.0);
        let l = l_value(&chi, s).unwrap();
        let mut direct = Compensated::default();
        for n in (1..=4_000_001i64).step_by(4) {
            direct.add((n as f64).powi(-2) - ((n + 2) as f64).powi(-2));
        }
        assert!((l.re - direct.value()).abs() < 1e-12);
    }

    #[test]
    fn l_at_one_via_regularized_hurwitz() {
        // nonprincipal characters only; pole terms cancel
        let l = l_value(&chi3(), Complex64::new(1.0, 0.0)).unwrap();
        assert!((l.re - PI / (3.0 * 3f64.sqrt())).abs() < 1e-12);
        let principal = from_selector("4.0").unwrap();
        assert!(l_value(&principal, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn root_numbers_unimodular_and_known() {
        for sel in ["4.1", "3.1", "5.1", "8.1", "8.3"] {
            let chi = from_selector(sel).unwrap();
            if !chi.is_primitive() {
                continue;
            }
            let eps = root_number(&chi).unwrap();
            assert!((eps.norm() - 1.0).abs() < 1e-10, "{sel}");
        }
        // ε(χ₄) = ε(χ₃) = 1 since τ(χ₄)=2i, τ(χ₃)=i√3
        assert!((root_number(&chi4()).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((root_number(&chi3()).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn functional_equation_residual_small() {
        for &(sig, t) in &[(0.5f64, 6.0), (1.2, 30.0), (-0.5, 14.0), (2.0, 999.0), (0.3, 1000.0)]
        {
            let r = fe_residual(&chi4(), Complex64::new(sig, t)).unwrap();
            assert!(r < 1e-7, "s={sig}+{t}i residual={r}");
            let r = fe_residual(&chi3(), Complex64::new(sig, t)).unwrap();
            assert!(r < 1e-7, "chi3 s={sig}+{t}i residual={r}");
        }
    }

    #[test]
    fn completed_l_vanishes_at_first_zero() {
        let z = completed_l(&chi4(), Complex64::new(0.5, 6.020_948_904_6)).unwrap();
        assert!(z.norm() < 1e-6, "|Lambda| = {}", z.norm());
        // center symmetry |Λ(1/2,χ)| = |Λ(1/2,χ̄)|
        let a = completed_l(&chi3(), Complex64::new(0.5, 0.0)).unwrap();
        let b = completed_l(&chi3().conjugate(), Complex64::new(0.5, 0.0)).unwrap();
        assert!((a.norm() - b.norm()).abs() < 1e-10);
    }

    #[test]
    fn log_abs_samples() {
        let s = log_abs_l(&chi4(), 0.0).unwrap();
        assert!((s.log_abs - (-0.403_929_102_584_453_35)).abs() < 1e-10);
        assert!(!s.near_l_zero);
        assert!(s.quality <= 1e-6);
        assert!(s.is_accepted());
        // high ordinate spot: log|L(1/2+1000i, χ₄)|
        let s = log_abs_l(&chi4(), 1000.0).unwrap();
        assert!((s.log_abs - 1.050_479_771_206_47).abs() < 1e-9);
    }

    #[test]
    fn conjugate_symmetry_of_log_abs() {
        for &g in &[1.0, 14.134725141734694, 333.3] {
            let plus = log_abs_l(&chi4(), g).unwrap().log_abs;
            let minus = log_abs_l(&chi4().conjugate(), -g).unwrap().log_abs;
            assert!((plus - minus).abs() < 1e-8, "gamma={g}");
        }
    }

    #[test]
    fn arg_continuation() {
        // L(σ, χ₄) > 0 on [1/2, 2]: no winding
        let a = arg_l(&chi4(), 0.0).unwrap();
        assert!(a.abs() < 1e-12);
        // arg at σ→∞ tends to 0; consistency exp(log_abs + i·arg) = L
        for &g in &[6.5f64, 14.134725141734694] {
            let s = sample(&chi4(), g).unwrap();
            let rebuilt = Complex64::new(0.0, s.arg).exp() * s.log_abs.exp();
            let direct = l_value(&chi4(), Complex64::new(0.5, g)).unwrap();
            assert!((rebuilt - direct).norm() < 1e-8, "gamma={g}");
        }
    }

    #[test]
    fn near_zero_flagging() {
        // exact-enough ordinate of the first χ₄ zero: |L| far below cutoff
        let s = log_abs_l(&chi4(), 6.020_948_904_697_6).unwrap();
        assert!(s.near_l_zero || s.log_abs < -18.0);
    }

    #[test]
    fn csv_shape() {
        let rows = vec![log_abs_l(&chi4(), 0.0).unwrap()];
        let mut buf = Vec::new();
        write_samples_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("gamma,log_abs,arg,flag"));
        let row = lines.next().unwrap();
        assert_eq!(row.split(',').count(), 4);
        assert!(row.ends_with(",0"));
    }
}
