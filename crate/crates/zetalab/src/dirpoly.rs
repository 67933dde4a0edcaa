//! Short Dirichlet polynomials over primes and their certified remainders:
//! smoothing weights w_X and Λ_X, prime reciprocal sums, P_χ(γ) and the
//! combined P_ℒ(γ), the remainder r(X,γ) with its four diagnostic components,
//! and moment diagnostics across zero sets.

use num_complex::Complex64;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::leval::LValueSample;
use crate::numeric::{adaptive_simpson, cpow_neg};
use crate::primes::{prime_reciprocal_sum, primes_upto, von_mangoldt};
use crate::zeros::{eta_chi, ZeroSet};

/// A linear combination ℒ = Σ a_j log|L(·,χ_j)| with its prime cutoff X.
/// Prime support of all derived polynomials is p ≤ X².
#[derive(Clone, Debug)]
pub struct CombinationSpec {
    coefficients: Vec<f64>,
    characters: Vec<DirichletCharacter>,
    x: f64,
}

impl CombinationSpec {
    /// Characters must be distinct and primitive; the cutoff obeys X ≥ 2
    /// (the remainder bounds and moment windows tighten this to X ≥ 4 where
    /// they need it).
    pub fn new(
        coefficients: Vec<f64>,
        characters: Vec<DirichletCharacter>,
        x: f64,
    ) -> Result<Self> {
        if coefficients.is_empty() || coefficients.len() != characters.len() {
            return Err(Error::Config(format!(
                "need matching nonempty coefficient/character lists, got {} and {}",
                coefficients.len(),
                characters.len()
            )));
        }
        for (i, c1) in characters.iter().enumerate() {
            if !c1.is_primitive() {
                return Err(Error::NotPrimitive {
                    modulus: c1.modulus(),
                    conductor: c1.conductor(),
                });
            }
            for c2 in &characters[i + 1..] {
                if c1.selector() == c2.selector() {
                    return Err(Error::Config(format!(
                        "characters must be pairwise distinct, {} repeats",
                        c1.selector()
                    )));
                }
            }
        }
        if !(x >= 2.0) {
            return Err(Error::Config(format!("cutoff X must be >= 2, got {x}")));
        }
        if x * x > 1e8 {
            return Err(Error::Config(format!(
                "prime support X^2 = {} exceeds the sieve cap 1e8",
                x * x
            )));
        }
        Ok(CombinationSpec {
            coefficients,
            characters,
            x,
        })
    }

    #[must_use]
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    #[must_use]
    pub fn characters(&self) -> &[DirichletCharacter] {
        &self.characters
    }

    #[must_use]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    /// Σ a_j², the variance scale of the combination.
    #[must_use]
    pub fn coefficient_norm_sq(&self) -> f64 {
        self.coefficients.iter().map(|a| a * a).sum()
    }
}

/// Integer cutoff for "≤ X²" sums, robust to X² landing a hair under an
/// integer (e.g. X = √2).
pub(crate) fn support_limit(x: f64) -> u64 {
    (x * x * (1.0 + 1e-12)).floor() as u64
}

/// Smoothing weight w_X(n): 1 on [1, X], log(X²/n)/log X on (X, X²].
pub fn weight_w(x: f64, n: u64) -> Result<f64> {
    if n < 1 || n > support_limit(x) {
        return Err(Error::Domain(format!(
            "weight support is 1 <= n <= X^2 = {}, got n={n}",
            x * x
        )));
    }
    if n as f64 <= x {
        Ok(1.0)
    } else {
        Ok((x * x / n as f64).ln() / x.ln())
    }
}

/// Weighted von Mangoldt Λ_X(n) = Λ(n)·w_X(n).
pub fn lambda_x(x: f64, n: u64) -> Result<f64> {
    Ok(von_mangoldt(n) * weight_w(x, n)?)
}

/// Ψ = Σ_{p ≤ X²} 1/p.
#[must_use]
pub fn prime_sum_psi(x: f64) -> f64 {
    psi_of_t(x * x)
}

/// Ψ(T) = Σ_{p ≤ T} 1/p.
#[must_use]
pub fn psi_of_t(t: f64) -> f64 {
    prime_reciprocal_sum((t * (1.0 + 1e-12)).floor() as u64)
}

/// P_χ(γ) = Σ_{p ≤ X²} χ(p) p^{−1/2−iγ}.
#[must_use]
pub fn poly_p_chi(chi: &DirichletCharacter, x: f64, gamma: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for &p in &primes_upto(support_limit(x)) {
        let v = chi.value(p as i64);
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let (re, im) = cpow_neg(p as f64, 0.5, gamma);
        sum += v * Complex64::new(re, im);
    }
    sum
}

/// P_ℒ(γ) = Σ_{p ≤ X²} (Σ_j a_j χ_j(p)) p^{−1/2−iγ}.
#[must_use]
pub fn poly_p_l(spec: &CombinationSpec, gamma: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for &p in &primes_upto(support_limit(spec.x)) {
        let mut coeff = Complex64::new(0.0, 0.0);
        for (a, chi) in spec.coefficients.iter().zip(&spec.characters) {
            coeff += chi.value(p as i64) * *a;
        }
        if coeff.norm_sqr() == 0.0 {
            continue;
        }
        let (re, im) = cpow_neg(p as f64, 0.5, gamma);
        sum += coeff * Complex64::new(re, im);
    }
    sum
}

/// r(X,γ) = ℒ(ρ) − Re P_ℒ(γ), from already-evaluated per-character samples
/// aligned with the combination's character list.
pub fn remainder(spec: &CombinationSpec, gamma: f64, lvals: &[LValueSample]) -> Result<f64> {
    if lvals.len() != spec.n() {
        return Err(Error::Misaligned(format!(
            "expected {} samples, got {}",
            spec.n(),
            lvals.len()
        )));
    }
    let mut curly_l = 0.0;
    for (sample, (a, chi)) in lvals
        .iter()
        .zip(spec.coefficients.iter().zip(&spec.characters))
    {
        if sample.character != chi.selector() {
            return Err(Error::Misaligned(format!(
                "sample for {} where {} expected",
                sample.character,
                chi.selector()
            )));
        }
        if (sample.gamma - gamma).abs() > 1e-9 {
            return Err(Error::Misaligned(format!(
                "sample ordinate {} does not match {gamma}",
                sample.gamma
            )));
        }
        if sample.near_l_zero {
            return Err(Error::ExcludedSample { gamma });
        }
        curly_l += a * sample.log_abs;
    }
    Ok(curly_l - poly_p_l(spec, gamma).re)
}

/// The four diagnostic components of the remainder bound, with the auxiliary
/// quantities they are built from.
#[derive(Clone, Copy, Debug)]
pub struct RemainderBreakdown {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
    pub e_chi: f64,
    pub sigma1: f64,
    pub eta: f64,
}

/// Evaluates r¹–r⁴ for one character at one ordinate.
///
/// r¹ and r² are finite prime sums; r³ integrates the weighted polynomial
/// over σ ∈ [1/2, 1/2 + 40/ln X] (the integrand decays like X^{1/2−σ});
/// r⁴ combines the nearest-L-zero gap η with E_χ at σ₁ = 1/2 + 4/ln X.
pub fn remainder_breakdown(
    chi: &DirichletCharacter,
    x: f64,
    gamma: f64,
    l_zeros: &ZeroSet,
) -> Result<RemainderBreakdown> {
    if gamma <= 0.0 {
        return Err(Error::Domain(format!("need gamma > 0, got {gamma}")));
    }
    let eta = eta_chi(gamma, l_zeros)?;
    if eta.boundary_warning {
        return Err(Error::Domain(format!(
            "l_zeros height {} does not cover gamma {gamma} with margin 5.0",
            l_zeros.height_t()
        )));
    }
    let ln_x = x.ln();
    let limit = support_limit(x);
    let primes = primes_upto(limit);

    let mut s1 = Complex64::new(0.0, 0.0);
    for &p in &primes {
        let v = chi.value(p as i64);
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let w = weight_w(x, p)?;
        if w == 1.0 {
            continue;
        }
        let (re, im) = cpow_neg(p as f64, 0.5, gamma);
        s1 += v * (1.0 - w) * Complex64::new(re, im);
    }
    let r1 = s1.norm();

    let mut s2 = Complex64::new(0.0, 0.0);
    for &p in &primes {
        if p as f64 > x {
            break;
        }
        let v = chi.value((p * p) as i64);
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let (re, im) = cpow_neg(p as f64, 1.0, 2.0 * gamma);
        s2 += v * weight_w(x, p * p)? * Complex64::new(re, im);
    }
    let r2 = s2.norm();

    // |Σ_p Λ_X(p) χ(p) ln(Xp) p^{−σ−iγ}|, weighted by X^{1/2−σ}
    let weighted: Vec<(f64, f64, Complex64)> = primes
        .iter()
        .filter_map(|&p| {
            let v = chi.value(p as i64);
            if v.norm_sqr() == 0.0 {
                return None;
            }
            let lam = (p as f64).ln() * weight_w(x, p).ok()?;
            Some((p as f64, lam * (x * p as f64).ln(), v))
        })
        .collect();
    let integrand = |sigma: f64| {
        let mut s = Complex64::new(0.0, 0.0);
        for &(p, c, v) in &weighted {
            let (re, im) = cpow_neg(p, sigma, gamma);
            s += v * c * Complex64::new(re, im);
        }
        x.powf(0.5 - sigma) * s.norm()
    };
    let cut = 0.5 + 40.0 / ln_x;
    let r3 = adaptive_simpson(&integrand, 0.5, cut, 1e-8).map_err(Error::Quadrature)? / ln_x;

    let sigma1 = 0.5 + 4.0 / ln_x;
    let mut s4 = Complex64::new(0.0, 0.0);
    for n in 2..=limit {
        let lam = von_mangoldt(n);
        if lam == 0.0 {
            continue;
        }
        let v = chi.value(n as i64);
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let (re, im) = cpow_neg(n as f64, sigma1, gamma);
        s4 += v * lam * weight_w(x, n)? * Complex64::new(re, im);
    }
    let e_chi = s4.norm() + (f64::from(chi.modulus()) * gamma.abs()).ln();
    let log_plus = (1.0 / (eta.value * ln_x)).ln().max(0.0);
    let r4 = (1.0 + log_plus) * e_chi / ln_x;

    Ok(RemainderBreakdown {
        r1,
        r2,
        r3,
        r4,
        e_chi,
        sigma1,
        eta: eta.value,
    })
}

/// Which normalized moment to form across a zero set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentMode {
    /// (1/N) Σ (ℒ(ρ) − Re P_ℒ(γ))^{2k}, with log|L| evaluated per zero.
    Remainder,
    /// (1/N) Σ |Re P_ℒ(γ)|^k.
    PolyAbs,
}

/// Normalized moment over the ordinates of `zeros`; flagged near-L-zero
/// samples are skipped (their count reduces N).
///
/// For k ≥ 1 the cutoff must sit in the admissible window
/// [max(4, T^{1/(32k)}), max(4, T^{1/(16k)})] — the theoretical window with
/// the X ≥ 4 floor applied to both ends, which at desk heights collapses the
/// window to exactly {4}.
pub fn moment_diagnostic(
    spec: &CombinationSpec,
    zeros: &ZeroSet,
    k: u32,
    mode: MomentMode,
) -> Result<f64> {
    let t = zeros.height_t();
    if k >= 1 {
        let lo = t.powf(0.5 / (16.0 * f64::from(k))).max(4.0);
        let hi = t.powf(1.0 / (16.0 * f64::from(k))).max(4.0);
        if !(spec.x >= lo && spec.x <= hi) {
            return Err(Error::Config(format!(
                "X = {} outside the admissible moment window [{lo}, {hi}] \
                 (= [max(4, T^(1/32k)), max(4, T^(1/16k))] at T = {t}, k = {k})",
                spec.x
            )));
        }
    }
    let mut sum = 0.0;
    let mut used = 0usize;
    for &g in zeros.ordinates() {
        match mode {
            MomentMode::PolyAbs => {
                let re_p = poly_p_l(spec, g).re;
                sum += re_p.abs().powi(k as i32);
                used += 1;
            }
            MomentMode::Remainder => {
                let mut samples = Vec::with_capacity(spec.n());
                let mut flagged = false;
                for chi in &spec.characters {
                    let s = crate::leval::log_abs_l(chi, g)?;
                    if s.near_l_zero {
                        flagged = true;
                        break;
                    }
                    samples.push(s);
                }
                if flagged {
                    continue;
                }
                let r = remainder(spec, g, &samples)?;
                sum += r.powi(2 * k as i32);
                used += 1;
            }
        }
    }
    if used == 0 {
        return Err(Error::Domain("no usable ordinates for the moment".into()));
    }
    Ok(sum / used as f64)
}

/// One row of the per-zero diagnostic dump.
#[derive(Clone, Copy, Debug)]
pub struct DiagnosticRow {
    pub gamma: f64,
    pub re_p: f64,
    pub remainder: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
    pub eta: f64,
}

/// CSV dump, header `gamma,reP,remainder,r1,r2,r3,r4,eta`.
pub fn write_diagnostics_csv<W: std::io::Write>(
    out: &mut W,
    rows: &[DiagnosticRow],
) -> Result<()> {
    writeln!(out, "gamma,reP,remainder,r1,r2,r3,r4,eta")?;
    for r in rows {
        writeln!(
            out,
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}",
            r.gamma, r.re_p, r.remainder, r.r1, r.r2, r.r3, r.r4, r.eta
        )?;
    }
    Ok(())
}

/// Desk-scale default cutoff X(T) = T^{1/(16·(lnln T)⁶)}, floored at 4.
/// Returns the cutoff and whether the floor was the binding constraint.
#[must_use]
pub fn default_x(t: f64) -> (f64, bool) {
    let ll = t.ln().ln();
    let raw = t.powf(1.0 / (16.0 * ll.powi(6)));
    if raw < 4.0 {
        (4.0, true)
    } else {
        (raw, false)
    }
}
