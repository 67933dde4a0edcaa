//! Distribution laboratory: the Beurling–Selberg smoothing kernel (G, F_Ω,
//! indicator approximation), empirical CDF statistics, the central-limit and
//! joint-independence reports, and the side-by-side check of the zero-sum
//! Fourier expansion against its characteristic-function prediction.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::dirpoly::{poly_p_l, support_limit, CombinationSpec};
use crate::error::{Error, Result};
use crate::leval::LValueSample;
use crate::numeric::{adaptive_simpson, TAU_HI};
use crate::primes::primes_upto;
use crate::randmodel::{charfn_j, charfn_symmetrized, CharFnConfig};
use crate::special::normal_cdf;
use crate::zeros::ZeroSet;

/// G(u) = 2u/π + 2u(1−u)cot(πu) on [0,1], with the removable singularities
/// G(0) = 2/π and G(1) = 0 evaluated exactly.
pub fn g_func(u: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("G is defined on [0,1], got {u}")));
    }
    Ok(g_raw(u))
}

fn g_raw(u: f64) -> f64 {
    use std::f64::consts::{FRAC_2_PI, PI};
    if u == 0.0 {
        return FRAC_2_PI;
    }
    if u == 1.0 {
        return 0.0;
    }
    2.0 * u / PI + 2.0 * u * (1.0 - u) / (PI * u).tan()
}

/// F_Ω(x) = ∫₀^Ω G(ω/Ω) sin(2πxω) dω/ω, the odd smoothed approximation to
/// sgn(x). Below ω = 1e−8·Ω the integrand is replaced by its finite ω→0
/// limit 2πx·G(0) = 4x; the rest is adaptive quadrature to 1e−8.
pub fn f_omega(omega_max: f64, x: f64) -> Result<f64> {
    if !(omega_max > 0.0) || !omega_max.is_finite() {
        return Err(Error::Domain(format!(
            "F needs a positive finite cutoff, got {omega_max}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let eps = 1e-8 * omega_max;
    let integrand = |w: f64| g_raw(w / omega_max) * (TAU_HI * x * w).sin() / w;
    let tail = adaptive_simpson(&integrand, eps, omega_max, 1e-8).map_err(Error::Quadrature)?;
    Ok(4.0 * x * eps + tail)
}

/// Two-term Beurling–Selberg surrogate for the indicator of [A, B):
/// ½F_Ω(x−A) − ½F_Ω(x−B). Infinite endpoints use the sgn limit exactly.
pub fn indicator_approx(a: f64, b: f64, omega_max: f64, x: f64) -> Result<f64> {
    if !(a < b) {
        return Err(Error::Domain(format!("need A < B, got [{a}, {b}]")));
    }
    let half_f = |d: f64| -> Result<f64> {
        if d.is_infinite() {
            Ok(0.5 * d.signum())
        } else {
            Ok(0.5 * f_omega(omega_max, d)?)
        }
    };
    Ok(half_f(x - a)? - half_f(x - b)?)
}

/// Right-continuous empirical CDF of a nonempty sample set.
#[derive(Clone, Debug)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Domain("empirical CDF needs samples".into()));
        }
        if samples.iter().any(|v| v.is_nan()) {
            return Err(Error::Domain("empirical CDF got a NaN sample".into()));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(EmpiricalCdf { sorted })
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// F̂(x) = (# samples ≤ x)/n.
    #[must_use]
    pub fn eval(&self, x: f64) -> f64 {
        let k = self.sorted.partition_point(|&s| s <= x);
        k as f64 / self.sorted.len() as f64
    }

    /// Left limit F̂(x⁻) = (# samples < x)/n.
    #[must_use]
    pub fn eval_left(&self, x: f64) -> f64 {
        let k = self.sorted.partition_point(|&s| s < x);
        k as f64 / self.sorted.len() as f64
    }

    #[must_use]
    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }
}

/// Kolmogorov–Smirnov distance of F̂ to a reference CDF, maximized over both
/// sides of every sample step and a 512-point grid spanning [−5, 5].
pub fn ks_distance<F: Fn(f64) -> f64>(cdf: &EmpiricalCdf, reference: F) -> f64 {
    let mut sup: f64 = 0.0;
    for &s in cdf.samples() {
        let r = reference(s);
        sup = sup.max((cdf.eval(s) - r).abs());
        sup = sup.max((cdf.eval_left(s) - r).abs());
    }
    for i in 0..512 {
        let x = -5.0 + 10.0 * i as f64 / 511.0;
        sup = sup.max((cdf.eval(x) - reference(x)).abs());
    }
    sup
}

fn endpoint_label(x: f64) -> Option<&'static str> {
    if x == f64::INFINITY {
        Some("inf")
    } else if x == f64::NEG_INFINITY {
        Some("-inf")
    } else {
        None
    }
}

fn ser_endpoints<S: Serializer>(v: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for &x in v {
        match endpoint_label(x) {
            Some(label) => seq.serialize_element(label)?,
            None => seq.serialize_element(&x)?,
        }
    }
    seq.end()
}

/// Half-open interval [lo, hi); infinite endpoints serialize as "±inf".
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || !(lo < hi) {
            return Err(Error::Config(format!("bad interval [{lo}, {hi})")));
        }
        Ok(Interval { lo, hi })
    }

    #[must_use]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[must_use]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[must_use]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x < self.hi
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_endpoints(&[self.lo, self.hi], s)
    }
}

/// Marginal distribution report for the normalized combination statistic.
#[derive(Clone, Debug, Serialize)]
pub struct DistributionReport {
    pub sample_count: usize,
    pub normalization: f64,
    #[serde(serialize_with = "ser_endpoints")]
    pub grid: Vec<f64>,
    pub empirical: Vec<f64>,
    pub gaussian: Vec<f64>,
    pub ks: f64,
    pub excluded: usize,
}

/// Joint-vs-product report over a rectangle family. The excluded count
/// travels with the report but stays out of the serialized object.
#[derive(Clone, Debug, Serialize)]
pub struct JointReport {
    pub rectangles: Vec<(Interval, Interval)>,
    pub joint: Vec<f64>,
    pub product: Vec<f64>,
    pub max_gap: f64,
    #[serde(skip)]
    pub excluded: usize,
}

/// Default marginal grid: eight cells between ±∞ with half-unit interior
/// steps.
#[must_use]
pub fn default_clt_grid() -> Vec<f64> {
    vec![
        f64::NEG_INFINITY,
        -1.5,
        -1.0,
        -0.5,
        0.0,
        0.5,
        1.0,
        1.5,
        f64::INFINITY,
    ]
}

/// Default 3×3 rectangle family built from endpoints {−∞, −0.5, 0.5, ∞}.
#[must_use]
pub fn default_rectangles() -> Vec<(Interval, Interval)> {
    let cuts = [f64::NEG_INFINITY, -0.5, 0.5, f64::INFINITY];
    let cells: Vec<Interval> = cuts
        .windows(2)
        .map(|w| Interval::new(w[0], w[1]).expect("static endpoints"))
        .collect();
    let mut out = Vec::with_capacity(9);
    for a in &cells {
        for b in &cells {
            out.push((*a, *b));
        }
    }
    out
}

fn gauss_prob(x: f64) -> f64 {
    if x == f64::INFINITY {
        1.0
    } else if x == f64::NEG_INFINITY {
        0.0
    } else {
        normal_cdf(x)
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::Config("grid needs at least two endpoints".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Config(
            "grid endpoints must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Builds a `DistributionReport` from already-normalized samples.
pub fn report_from_normalized(
    samples: &[f64],
    normalization: f64,
    grid: &[f64],
    excluded: usize,
) -> Result<DistributionReport> {
    check_grid(grid)?;
    let cdf = EmpiricalCdf::new(samples)?;
    let n = samples.len() as f64;
    let mut empirical = Vec::with_capacity(grid.len() - 1);
    let mut gaussian = Vec::with_capacity(grid.len() - 1);
    for w in grid.windows(2) {
        let count = cdf.samples().partition_point(|&s| s < w[1])
            - cdf.samples().partition_point(|&s| s < w[0]);
        empirical.push(count as f64 / n);
        gaussian.push(gauss_prob(w[1]) - gauss_prob(w[0]));
    }
    let ks = ks_distance(&cdf, normal_cdf);
    Ok(DistributionReport {
        sample_count: samples.len(),
        normalization,
        grid: grid.to_vec(),
        empirical,
        gaussian,
        ks,
        excluded,
    })
}

fn check_alignment(
    lvals: &[LValueSample],
    selector: &str,
    gammas: Option<&[f64]>,
) -> Result<()> {
    for s in lvals {
        if s.character != selector {
            return Err(Error::Misaligned(format!(
                "sample for {} where {selector} expected",
                s.character
            )));
        }
    }
    if let Some(g) = gammas {
        if g.len() != lvals.len() {
            return Err(Error::Misaligned(format!(
                "ordinate lists of lengths {} and {}",
                g.len(),
                lvals.len()
            )));
        }
        for (s, &gamma) in lvals.iter().zip(g) {
            if (s.gamma - gamma).abs() > 1e-9 {
                return Err(Error::Misaligned(format!(
                    "ordinates {} and {gamma} do not match",
                    s.gamma
                )));
            }
        }
    }
    Ok(())
}

/// The marginal central-limit report: ℒ(ρ) = Σ a_j log|L(½+iγ, χ_j)| over
/// the shared ordinate list, divided by √((1/2)(Σ a_j²) lnln T), compared
/// cell-by-cell and in KS distance against the standard Gaussian. Ordinates
/// flagged near an L-zero for any character are excluded and counted.
pub fn clt_report(
    lvals: &[Vec<LValueSample>],
    spec: &CombinationSpec,
    t: f64,
) -> Result<DistributionReport> {
    if t <= std::f64::consts::E {
        return Err(Error::Domain(format!("need T > e for lnln, got {t}")));
    }
    if lvals.len() != spec.n() {
        return Err(Error::Misaligned(format!(
            "{} sample lists for {} characters",
            lvals.len(),
            spec.n()
        )));
    }
    let gammas: Vec<f64> = lvals
        .first()
        .map(|l| l.iter().map(|s| s.gamma).collect())
        .unwrap_or_default();
    for (list, chi) in lvals.iter().zip(spec.characters()) {
        check_alignment(list, &chi.selector(), Some(&gammas))?;
    }
    let normalization = (0.5 * spec.coefficient_norm_sq() * t.ln().ln()).sqrt();
    let mut samples = Vec::with_capacity(gammas.len());
    let mut excluded = 0usize;
    for i in 0..gammas.len() {
        if lvals.iter().any(|l| l[i].near_l_zero) {
            excluded += 1;
            continue;
        }
        let combo: f64 = spec
            .coefficients()
            .iter()
            .zip(lvals)
            .map(|(a, l)| a * l[i].log_abs)
            .sum();
        samples.push(combo / normalization);
    }
    report_from_normalized(&samples, normalization, &default_clt_grid(), excluded)
}

/// The joint-independence report: each log|L| normalized by √((1/2) lnln T),
/// joint rectangle frequencies against the product of the marginals.
pub fn independence_report(
    lvals1: &[LValueSample],
    lvals2: &[LValueSample],
    rectangles: &[(Interval, Interval)],
    t: f64,
) -> Result<JointReport> {
    if t <= std::f64::consts::E {
        return Err(Error::Domain(format!("need T > e for lnln, got {t}")));
    }
    if rectangles.is_empty() {
        return Err(Error::Config("need at least one rectangle".into()));
    }
    if lvals1.len() != lvals2.len() {
        return Err(Error::Misaligned(format!(
            "ordinate lists of lengths {} and {}",
            lvals1.len(),
            lvals2.len()
        )));
    }
    for (a, b) in lvals1.iter().zip(lvals2) {
        if (a.gamma - b.gamma).abs() > 1e-9 {
            return Err(Error::Misaligned(format!(
                "ordinates {} and {} do not match",
                a.gamma, b.gamma
            )));
        }
    }
    let normalization = (0.5 * t.ln().ln()).sqrt();
    let mut xs = Vec::with_capacity(lvals1.len());
    let mut ys = Vec::with_capacity(lvals2.len());
    let mut excluded = 0usize;
    for (a, b) in lvals1.iter().zip(lvals2) {
        if a.near_l_zero || b.near_l_zero {
            excluded += 1;
            continue;
        }
        xs.push(a.log_abs / normalization);
        ys.push(b.log_abs / normalization);
    }
    if xs.is_empty() {
        return Err(Error::Domain("all ordinates were excluded".into()));
    }
    let n = xs.len() as f64;
    let mut joint = Vec::with_capacity(rectangles.len());
    let mut product = Vec::with_capacity(rectangles.len());
    let mut max_gap = 0.0f64;
    for (ia, ib) in rectangles {
        let mut both = 0usize;
        let mut only_a = 0usize;
        let mut only_b = 0usize;
        for (&x, &y) in xs.iter().zip(&ys) {
            let ina = ia.contains(x);
            let inb = ib.contains(y);
            both += usize::from(ina && inb);
            only_a += usize::from(ina);
            only_b += usize::from(inb);
        }
        let j = both as f64 / n;
        let p = (only_a as f64 / n) * (only_b as f64 / n);
        max_gap = max_gap.max((j - p).abs());
        joint.push(j);
        product.push(p);
    }
    Ok(JointReport {
        rectangles: rectangles.to_vec(),
        joint,
        product,
        max_gap,
        excluded,
    })
}

/// One grid point of the Fourier-expansion comparison.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FourierRow {
    pub omega: f64,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub abs_gap: f64,
    pub rel_gap: f64,
}

/// Side-by-side check of the zero-sum expansion: for each ω on the grid,
/// the direct sum Σ_{0<γ≤T} exp(2πiω Re P_ℒ(γ)) against the prediction
/// N·𝒥₀(ω) − (T/π) Σ_{q≤X²} Σ_{1≤ℓ≤K} (log q / q^{ℓ/2}) (𝒥_ℓ+𝒥_{−ℓ})/2.
/// N is the actual zero count, so the ω = 0 row has gap exactly 0.
pub fn fourier_side_by_side(
    spec: &CombinationSpec,
    zeros: &ZeroSet,
    cfg: &CharFnConfig,
) -> Result<Vec<FourierRow>> {
    if zeros.is_empty() {
        return Err(Error::Domain("need a nonempty zero set".into()));
    }
    let n = zeros.len() as f64;
    let t = zeros.height_t();
    let re_p: Vec<f64> = zeros
        .ordinates()
        .par_iter()
        .map(|&g| poly_p_l(spec, g).re)
        .collect();
    let primes = primes_upto(support_limit(spec.x()));
    let mut rows = Vec::with_capacity(cfg.omega_grid.len());
    for &omega in &cfg.omega_grid {
        let mut lhs = Complex64::new(0.0, 0.0);
        for &rp in &re_p {
            lhs += Complex64::from_polar(1.0, TAU_HI * omega * rp);
        }
        let mut rhs = charfn_j(spec, omega, None, 0)? * n;
        for &q in &primes {
            let lq = (q as f64).ln();
            for ell in 1..=cfg.ell_max {
                let weight = lq / (q as f64).powf(f64::from(ell) / 2.0);
                rhs -= charfn_symmetrized(spec, omega, q, ell)? * (t / std::f64::consts::PI)
                    * weight;
            }
        }
        let abs_gap = (lhs - rhs).norm();
        rows.push(FourierRow {
            omega,
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            abs_gap,
            rel_gap: abs_gap / n,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::from_selector;
    use crate::randmodel::{mix64, phase_theta};
    use crate::zeros::find_zeros_zeta;
    use std::f64::consts::{FRAC_2_PI, PI};

    fn gaussians(seed: u64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| {
                let u1 = 1.0 - phase_theta(seed, i as u64, 2);
                let u2 = phase_theta(seed, i as u64, 3);
                (-2.0 * u1.ln()).sqrt() * (TAU_HI * u2).cos()
            })
            .collect()
    }

    fn fake_samples(selector: &str, values: &[f64]) -> Vec<LValueSample> {
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| LValueSample {
                gamma: 14.0 + i as f64,
                character: selector.to_string(),
                log_abs: v,
                arg: f64::NAN,
                quality: 1e-12,
                near_l_zero: false,
            })
            .collect()
    }

    #[test]
    fn g_endpoints_and_midpoint() {
        assert_eq!(g_func(0.0).unwrap(), FRAC_2_PI);
        assert_eq!(g_func(1.0).unwrap(), 0.0);
        assert!((g_func(0.5).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!((g_func(0.25).unwrap() - (0.5 / PI + 0.375)).abs() < 1e-15);
        // approach to the removable endpoints
        assert!((g_func(1e-9).unwrap() - FRAC_2_PI).abs() < 1e-8);
        assert!(g_func(1.0 - 1e-7).unwrap().abs() < 1e-8);
        assert!(g_func(-0.1).is_err());
        assert!(g_func(1.1).is_err());
    }

    #[test]
    fn f_omega_basics() {
        assert_eq!(f_omega(10.0, 0.0).unwrap(), 0.0);
        // Ω·x = 50: the kernel reproduces sgn on the lattice
        assert!((f_omega(10.0, 5.0).unwrap() - 1.0).abs() < 0.02);
        assert!((f_omega(4.0, 0.75).unwrap() - 1.0).abs() < 2e-8);
        assert!((f_omega(4.0, -0.75).unwrap() + 1.0).abs() < 2e-8);
        assert!(f_omega(0.0, 1.0).is_err());
        assert!(f_omega(-2.0, 1.0).is_err());
    }

    #[test]
    fn f_omega_oddness_random() {
        for j in 0..100u64 {
            let omega = 0.5 + 19.5 * (mix64(j) >> 11) as f64 / 9.007_199_254_740_992e15;
            let x = 10.0 * ((mix64(j ^ 0xABCD) >> 11) as f64 / 9.007_199_254_740_992e15 - 0.5);
            let plus = f_omega(omega, x).unwrap();
            let minus = f_omega(omega, -x).unwrap();
            assert!(
                (plus + minus).abs() < 2e-8,
                "omega={omega} x={x}: {plus} vs {minus}"
            );
        }
    }

    #[test]
    fn indicator_shapes() {
        // Ω(B−A) = 20: near 1 at the center
        let center = indicator_approx(-1.0, 1.0, 10.0, 0.0).unwrap();
        assert!((center - 1.0).abs() < 0.05, "{center}");
        // far outside: near 0 (non-resonant abscissa)
        let far = indicator_approx(-1.0, 1.0, 10.0, 2.3).unwrap();
        assert!(far.abs() < 0.05, "{far}");
        // symmetry under x ↦ A+B−x
        let left = indicator_approx(-1.0, 1.0, 7.3, -0.4).unwrap();
        let right = indicator_approx(-1.0, 1.0, 7.3, 0.4).unwrap();
        assert!((left - right).abs() < 2e-8);
        // infinite endpoints fall back to the sign limit
        let half = indicator_approx(f64::NEG_INFINITY, 0.0, 5.0, -3.21).unwrap();
        let expect = 0.5 - 0.5 * f_omega(5.0, -3.21).unwrap();
        assert!((half - expect).abs() < 1e-15);
        assert!(indicator_approx(1.0, -1.0, 5.0, 0.0).is_err());
    }

    #[test]
    fn indicator_error_halves_when_omega_doubles() {
        let x = 2.7183;
        for omega in [5.0, 10.0, 20.0] {
            let coarse = indicator_approx(-1.0, 1.0, omega, x).unwrap().abs();
            let fine = indicator_approx(-1.0, 1.0, 2.0 * omega, x).unwrap().abs();
            assert!(
                coarse >= 2.0 * fine,
                "omega={omega}: {coarse} vs {fine}"
            );
        }
    }

    #[test]
    fn ecdf_point_mass_and_duplication() {
        let cdf = EmpiricalCdf::new(&[0.0]).unwrap();
        assert_eq!(cdf.eval(0.0), 1.0);
        assert_eq!(cdf.eval_left(0.0), 0.0);
        assert_eq!(cdf.eval(-0.5), 0.0);
        assert!((ks_distance(&cdf, normal_cdf) - 0.5).abs() < 1e-12);

        let once = EmpiricalCdf::new(&[1.0, 2.0, 3.0]).unwrap();
        let twice = EmpiricalCdf::new(&[1.0, 2.0, 3.0, 1.0, 2.0, 3.0]).unwrap();
        for x in [-1.0, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0] {
            assert_eq!(once.eval(x), twice.eval(x));
        }
        assert!(EmpiricalCdf::new(&[]).is_err());
        assert!(EmpiricalCdf::new(&[f64::NAN]).is_err());
    }

    #[test]
    fn ks_on_synthetic_gaussians_is_small() {
        let cdf = EmpiricalCdf::new(&gaussians(41, 100_000)).unwrap();
        let ks = ks_distance(&cdf, normal_cdf);
        assert!(ks <= 2.0 * 1.36 / (100_000.0f64).sqrt(), "ks = {ks}");
    }

    #[test]
    fn clt_report_point_mass() {
        let chi4 = from_selector("4.1").unwrap();
        let spec = CombinationSpec::new(vec![1.0], vec![chi4], 4.0).unwrap();
        let lvals = vec![fake_samples("4.1", &[0.0; 50])];
        let rep = clt_report(&lvals, &spec, 1e4).unwrap();
        assert_eq!(rep.sample_count, 50);
        assert_eq!(rep.excluded, 0);
        assert!((rep.ks - 0.5).abs() < 1e-12);
        // all mass in the cell containing 0: grid [0.0, 0.5)
        let cell = rep.grid.windows(2).position(|w| w[0] <= 0.0 && 0.0 < w[1]);
        assert_eq!(rep.empirical[cell.unwrap()], 1.0);
        let total: f64 = rep.empirical.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn clt_report_synthetic_gaussian_pipeline() {
        let chi4 = from_selector("4.1").unwrap();
        let spec = CombinationSpec::new(vec![1.0], vec![chi4], 4.0).unwrap();
        let t: f64 = 1e4;
        let norm = (0.5 * t.ln().ln()).sqrt();
        let z = gaussians(77, 10_000);
        let scaled: Vec<f64> = z.iter().map(|v| v * norm).collect();
        let lvals = vec![fake_samples("4.1", &scaled)];
        let rep = clt_report(&lvals, &spec, t).unwrap();
        assert!((rep.normalization - norm).abs() < 1e-15);
        assert!(rep.ks <= 1.63 / (10_000.0f64).sqrt(), "ks = {}", rep.ks);
        let emp_total: f64 = rep.empirical.iter().sum();
        let gauss_total: f64 = rep.gaussian.iter().sum();
        assert!((emp_total - 1.0).abs() < 1e-12);
        assert!((gauss_total - 1.0).abs() < 1e-12);
        assert!(rep
            .empirical
            .iter()
            .chain(&rep.gaussian)
            .all(|p| (0.0..=1.0).contains(p)));
        // cellwise agreement at binomial-fluctuation scale
        for (e, g) in rep.empirical.iter().zip(&rep.gaussian) {
            assert!((e - g).abs() < 0.02, "{e} vs {g}");
        }
    }

    #[test]
    fn clt_report_exclusion_and_alignment() {
        let chi4 = from_selector("4.1").unwrap();
        let spec = CombinationSpec::new(vec![1.0], vec![chi4], 4.0).unwrap();
        let mut samples = fake_samples("4.1", &[0.1, 0.2, 0.3, 0.4]);
        samples[1].near_l_zero = true;
        let rep = clt_report(&[samples.clone()], &spec, 1e4).unwrap();
        assert_eq!(rep.sample_count, 3);
        assert_eq!(rep.excluded, 1);

        let wrong = fake_samples("3.1", &[0.1, 0.2]);
        assert!(matches!(
            clt_report(&[wrong], &spec, 1e4),
            Err(Error::Misaligned(_))
        ));
        assert!(clt_report(&[samples], &spec, 2.0).is_err());
    }

    #[test]
    fn independence_detects_perfect_dependence() {
        let vals = gaussians(5, 4000);
        let norm = (0.5 * 1e4f64.ln().ln()).sqrt();
        let scaled: Vec<f64> = vals.iter().map(|v| v * norm).collect();
        let l1 = fake_samples("4.1", &scaled);
        let l2 = fake_samples("3.1", &scaled);
        let rect = vec![(
            Interval::new(0.0, f64::INFINITY).unwrap(),
            Interval::new(f64::NEG_INFINITY, 0.0).unwrap(),
        )];
        let rep = independence_report(&l1, &l2, &rect, 1e4).unwrap();
        assert_eq!(rep.joint[0], 0.0);
        assert!((rep.product[0] - 0.25).abs() < 0.03);
        assert!((rep.max_gap - 0.25).abs() < 0.03);
    }

    #[test]
    fn independence_on_independent_streams() {
        let norm = (0.5 * 1e4f64.ln().ln()).sqrt();
        let a: Vec<f64> = gaussians(100, 10_000).iter().map(|v| v * norm).collect();
        let b: Vec<f64> = gaussians(200, 10_000).iter().map(|v| v * norm).collect();
        let l1 = fake_samples("4.1", &a);
        let l2 = fake_samples("3.1", &b);
        let rects = default_rectangles();
        assert_eq!(rects.len(), 9);
        let rep = independence_report(&l1, &l2, &rects, 1e4).unwrap();
        assert!(rep.max_gap <= 0.03, "max_gap = {}", rep.max_gap);
        let joint_total: f64 = rep.joint.iter().sum();
        assert!((joint_total - 1.0).abs() < 1e-12);
        for (j, p) in rep.joint.iter().zip(&rep.product) {
            assert!((j - p).abs() <= rep.max_gap + 1e-15);
        }
    }

    #[test]
    fn independence_alignment_and_exclusion() {
        let mut l1 = fake_samples("4.1", &[0.1, 0.2, 0.3]);
        let l2 = fake_samples("3.1", &[0.4, 0.5, 0.6]);
        l1[0].near_l_zero = true;
        let rep = independence_report(&l1, &l2, &default_rectangles(), 1e4).unwrap();
        assert_eq!(rep.excluded, 1);
        let short = fake_samples("3.1", &[0.4]);
        assert!(independence_report(&l1, &short, &default_rectangles(), 1e4).is_err());
        let mut shifted = fake_samples("3.1", &[0.4, 0.5, 0.6]);
        shifted[2].gamma += 0.5;
        assert!(independence_report(&l1, &shifted, &default_rectangles(), 1e4).is_err());
    }

    #[test]
    fn fourier_zero_gap_is_exact() {
        let chi4 = from_selector("4.1").unwrap();
        let chi3 = from_selector("3.1").unwrap();
        let zeros = find_zeros_zeta(100.0).unwrap();
        let spec =
            CombinationSpec::new(vec![1.0, 1.0], vec![chi4.clone(), chi3.clone()], 4.0).unwrap();
        let cfg = CharFnConfig::new(6.0, 12, vec![0.0, 0.05, 0.1]).unwrap();
        let rows = fourier_side_by_side(&spec, &zeros, &cfg).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].abs_gap, 0.0);
        assert_eq!(rows[0].lhs_re, zeros.len() as f64);
        assert_eq!(rows[0].lhs_im, 0.0);
        // a zeroed combination keeps every row exact
        let null = CombinationSpec::new(vec![0.0, 0.0], vec![chi4, chi3], 4.0).unwrap();
        for row in fourier_side_by_side(&null, &zeros, &cfg).unwrap() {
            assert_eq!(row.abs_gap, 0.0, "omega = {}", row.omega);
            assert_eq!(row.lhs_re, zeros.len() as f64);
        }
    }

    #[test]
    fn fourier_small_omega_tracks_prediction() {
        let chi4 = from_selector("4.1").unwrap();
        let chi3 = from_selector("3.1").unwrap();
        let zeros = find_zeros_zeta(1000.0).unwrap();
        let spec = CombinationSpec::new(vec![1.0, 1.0], vec![chi4, chi3], 4.0).unwrap();
        let cfg = CharFnConfig::new(6.0, 12, vec![0.05]).unwrap();
        let rows = fourier_side_by_side(&spec, &zeros, &cfg).unwrap();
        assert!(rows[0].rel_gap < 0.1, "rel_gap = {}", rows[0].rel_gap);
    }

    #[test]
    fn json_wire_format() {
        let rep = DistributionReport {
            sample_count: 2,
            normalization: 1.5,
            grid: vec![f64::NEG_INFINITY, 0.0, f64::INFINITY],
            empirical: vec![0.5, 0.5],
            gaussian: vec![0.5, 0.5],
            ks: 0.1,
            excluded: 0,
        };
        let v = serde_json::to_value(&rep).unwrap();
        let obj = v.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            vec![
                "sample_count",
                "normalization",
                "grid",
                "empirical",
                "gaussian",
                "ks",
                "excluded"
            ]
        );
        assert_eq!(v["grid"][0], "-inf");
        assert_eq!(v["grid"][1], 0.0);
        assert_eq!(v["grid"][2], "inf");

        let joint = JointReport {
            rectangles: vec![(
                Interval::new(f64::NEG_INFINITY, -0.5).unwrap(),
                Interval::new(0.5, f64::INFINITY).unwrap(),
            )],
            joint: vec![0.1],
            product: vec![0.12],
            max_gap: 0.02,
            excluded: 3,
        };
        let v = serde_json::to_value(&joint).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, vec!["rectangles", "joint", "product", "max_gap"]);
        assert_eq!(v["rectangles"][0][0][0], "-inf");
        assert_eq!(v["rectangles"][0][0][1], -0.5);
        assert_eq!(v["rectangles"][0][1][1], "inf");
    }
}
