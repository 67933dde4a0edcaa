//! The random model behind the distribution theory: i.i.d. uniform phases
//! θ_p, samples of Re P_ℒ(θ), closed-form moments via orthogonality, Bessel
//! functions J_ℓ, and the exact characteristic-function products 𝒥_ℓ that a
//! Monte Carlo oracle cross-validates.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::characters::DirichletCharacter;
use crate::dirpoly::{prime_sum_psi, psi_of_t, support_limit, CombinationSpec};
use crate::error::{Error, Result};
use crate::numeric::{Compensated, TAU_HI};
use crate::primes::primes_upto;

/// SplitMix64 finalizer; the sole mixing primitive behind every phase.
#[must_use]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// θ_p for one (master seed, sample index, prime) triple, uniform on [0,1).
/// Independent of worker count and replayable by construction.
#[must_use]
pub fn phase_theta(seed: u64, index: u64, p: u64) -> f64 {
    let bits = mix64(seed ^ mix64(index ^ mix64(p)));
    (bits >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

/// One complete draw θ = (θ_p)_{p ≤ X²}, with the multiplicative extension
/// θ_{mn} = θ_m + θ_n to all integers supported on those primes.
#[derive(Clone, Debug)]
pub struct PhaseAssignment {
    seed: u64,
    index: u64,
    primes: Vec<u64>,
    thetas: Vec<f64>,
}

impl PhaseAssignment {
    #[must_use]
    pub fn new(seed: u64, index: u64, x: f64) -> Self {
        let primes = primes_upto(support_limit(x));
        let thetas = primes
            .iter()
            .map(|&p| phase_theta(seed, index, p))
            .collect();
        PhaseAssignment {
            seed,
            index,
            primes,
            thetas,
        }
    }

    #[must_use]
    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[must_use]
    pub fn index(&self) -> u64 {
        self.index
    }

    #[must_use]
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn theta_p(&self, p: u64) -> Result<f64> {
        match self.primes.binary_search(&p) {
            Ok(i) => Ok(self.thetas[i]),
            Err(_) => Err(Error::Domain(format!(
                "{p} is not a prime in the phase support"
            ))),
        }
    }

    /// θ_n = Σ k_i θ_{p_i} mod 1 over the factorization n = ∏ p_i^{k_i}.
    pub fn theta_n(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::Domain("theta_n needs n >= 1".into()));
        }
        let mut rem = n;
        let mut th = 0.0;
        for (&p, &t) in self.primes.iter().zip(&self.thetas) {
            if rem == 1 || p * p > rem {
                break;
            }
            while rem % p == 0 {
                rem /= p;
                th += t;
            }
        }
        if rem > 1 {
            match self.primes.binary_search(&rem) {
                Ok(i) => th += self.thetas[i],
                Err(_) => {
                    return Err(Error::Domain(format!(
                        "prime factor {rem} outside the phase support"
                    )))
                }
            }
        }
        Ok(th.fract())
    }
}

/// ν_p e^{2πiβ_p} = Σ_j a_j χ_j(p), with β_p = 0 whenever ν_p = 0.
#[derive(Clone, Copy, Debug)]
pub struct PolarCoefficient {
    pub p: u64,
    pub nu: f64,
    pub beta: f64,
}

/// One entry per prime p ≤ X².
#[must_use]
pub fn polar_coefficients(spec: &CombinationSpec) -> Vec<PolarCoefficient> {
    primes_upto(support_limit(spec.x()))
        .iter()
        .map(|&p| {
            let mut s = Complex64::new(0.0, 0.0);
            for (a, chi) in spec.coefficients().iter().zip(spec.characters()) {
                s += chi.value(p as i64) * *a;
            }
            let nu = s.norm();
            if nu < 1e-12 {
                PolarCoefficient {
                    p,
                    nu: 0.0,
                    beta: 0.0,
                }
            } else {
                PolarCoefficient {
                    p,
                    nu,
                    beta: (s.arg() / TAU_HI).rem_euclid(1.0),
                }
            }
        })
        .collect()
}

/// `count` i.i.d. draws of Re P_ℒ(θ) = Σ_p ν_p cos(2π(θ_p+β_p))/√p,
/// deterministic per (seed, index) and independent of parallelism.
#[must_use]
pub fn sample_re_p(spec: &CombinationSpec, seed: u64, count: usize) -> Vec<f64> {
    let terms: Vec<(u64, f64, f64)> = polar_coefficients(spec)
        .iter()
        .filter(|pc| pc.nu != 0.0)
        .map(|pc| (pc.p, pc.nu / (pc.p as f64).sqrt(), pc.beta))
        .collect();
    (0..count)
        .into_par_iter()
        .map(|i| {
            terms
                .iter()
                .map(|&(p, amp, beta)| {
                    amp * (TAU_HI * (phase_theta(seed, i as u64, p) + beta)).cos()
                })
                .sum()
        })
        .collect()
}

/// E[(Re P_ℒ)²] = (1/2) Σ_{p ≤ X²} ν_p²/p, exactly (phase orthogonality).
#[must_use]
pub fn exact_moment2(spec: &CombinationSpec) -> f64 {
    let mut acc = Compensated::default();
    for pc in polar_coefficients(spec) {
        acc.add(pc.nu * pc.nu / (2.0 * pc.p as f64));
    }
    acc.value()
}

/// Re Σ_{p ≤ X²} χ₁(p) conj(χ₂(p)) / p for distinct primitive characters.
pub fn cross_term(chi1: &DirichletCharacter, chi2: &DirichletCharacter, x: f64) -> Result<f64> {
    for chi in [chi1, chi2] {
        if !chi.is_primitive() {
            return Err(Error::NotPrimitive {
                modulus: chi.modulus(),
                conductor: chi.conductor(),
            });
        }
    }
    if chi1.selector() == chi2.selector() {
        return Err(Error::Config(format!(
            "cross term needs distinct characters, got {} twice",
            chi1.selector()
        )));
    }
    let mut acc = Compensated::default();
    for &p in &primes_upto(support_limit(x)) {
        let v = chi1.value(p as i64) * chi2.value(p as i64).conj();
        if v.re != 0.0 {
            acc.add(v.re / p as f64);
        }
    }
    Ok(acc.value())
}

/// The second moment split into its structural parts:
/// total = diagonal + cross_weighted − ramified_overcount.
#[derive(Clone, Copy, Debug)]
pub struct Moment2Decomposition {
    /// Ψ = Σ_{p ≤ X²} 1/p.
    pub psi: f64,
    /// (Σ_j a_j²)·Ψ/2, counting every prime as if unramified.
    pub diagonal: f64,
    /// Σ_{i<j} a_i a_j · cross_term(χ_i, χ_j).
    pub cross_weighted: f64,
    /// Σ_j a_j² Σ_{p ≤ X², p | M_j} 1/(2p), the diagonal's overcount at
    /// ramified primes where |χ_j(p)| = 0 rather than 1.
    pub ramified_overcount: f64,
}

impl Moment2Decomposition {
    #[must_use]
    pub fn total(&self) -> f64 {
        self.diagonal + self.cross_weighted - self.ramified_overcount
    }
}

/// Splits `exact_moment2` into Ψ-diagonal, cross, and ramified parts; the
/// identity `total() == exact_moment2` holds within 1e−12.
pub fn moment2_decomposition(spec: &CombinationSpec) -> Result<Moment2Decomposition> {
    let x = spec.x();
    let psi = prime_sum_psi(x);
    let diagonal = spec.coefficient_norm_sq() * psi / 2.0;
    let coeffs = spec.coefficients();
    let chars = spec.characters();
    let mut cross_weighted = 0.0;
    for i in 0..chars.len() {
        for j in i + 1..chars.len() {
            cross_weighted += coeffs[i] * coeffs[j] * cross_term(&chars[i], &chars[j], x)?;
        }
    }
    let primes = primes_upto(support_limit(x));
    let mut ramified_overcount = 0.0;
    for (a, chi) in coeffs.iter().zip(chars) {
        let m = u64::from(chi.modulus());
        for &p in &primes {
            if p > m {
                break;
            }
            if m % p == 0 {
                ramified_overcount += a * a / (2.0 * p as f64);
            }
        }
    }
    Ok(Moment2Decomposition {
        psi,
        diagonal,
        cross_weighted,
        ramified_overcount,
    })
}

/// J_ℓ(z) for integer order 0 ≤ ℓ ≤ 200 and |z| ≤ 10³, to within 1e−12:
/// ascending power series for |z| ≤ 12, else backward (Miller) recurrence
/// normalized by the Neumann identity J₀ + 2Σ J_{2k} = 1.
pub fn bessel_j(ell: u32, z: f64) -> Result<f64> {
    if ell > 200 {
        return Err(Error::Domain(format!("Bessel order {ell} exceeds 200")));
    }
    if !z.is_finite() || z.abs() > 1e3 {
        return Err(Error::Domain(format!(
            "Bessel argument {z} outside |z| <= 1e3"
        )));
    }
    let sign = if z < 0.0 && ell % 2 == 1 { -1.0 } else { 1.0 };
    let z = z.abs();
    if z <= 12.0 {
        Ok(sign * bessel_series(ell, z))
    } else {
        Ok(sign * bessel_miller(ell, z))
    }
}

fn bessel_series(ell: u32, z: f64) -> f64 {
    let half = 0.5 * z;
    let mut term = 1.0;
    for k in 1..=ell {
        term *= half / f64::from(k);
    }
    let mut sum = Compensated::default();
    sum.add(term);
    let h2 = half * half;
    for m in 1..500u32 {
        term *= -h2 / (f64::from(m) * f64::from(m + ell));
        if term == 0.0 {
            break;
        }
        sum.add(term);
        if term.abs() <= 1e-18 * sum.value().abs().max(1e-280) {
            break;
        }
    }
    sum.value()
}

fn bessel_miller(ell: u32, z: f64) -> f64 {
    // start high enough that the seeded error has decayed below 1e−13 by
    // the time the recursion reaches the turning point k ≈ z
    let start = ell.max(z.ceil() as u32) + 20 + 8 * (z.cbrt().ceil() as u32);
    let mut jp = 0.0_f64;
    let mut jk = 1e-30_f64;
    let mut norm = 0.0_f64;
    let mut val = 0.0_f64;
    let mut k = start;
    loop {
        if k % 2 == 0 {
            norm += if k == 0 { jk } else { 2.0 * jk };
        }
        if k == ell {
            val = jk;
        }
        if k == 0 {
            break;
        }
        let jm = (2.0 * f64::from(k) / z) * jk - jp;
        jp = jk;
        jk = jm;
        k -= 1;
        if jk.abs() > 1e250 {
            jk *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            val *= 1e-250;
        }
    }
    val / norm
}

/// The exact characteristic-function product:
///   q absent (ℓ must be 0):  𝒥₀(ω) = ∏_{p ≤ X²} J₀(2πν_pω/√p);
///   q present, ℓ ≥ 0:  𝒥_ℓ = (i e^{−2πiβ_q})^ℓ J_ℓ(2πν_qω/√q) ∏_{p≠q} J₀;
///   q present, ℓ < 0:  𝒥_ℓ = (i e^{+2πiβ_q})^{|ℓ|} J_{|ℓ|}(·) ∏_{p≠q} J₀.
pub fn charfn_j(
    spec: &CombinationSpec,
    omega: f64,
    q: Option<u64>,
    ell: i32,
) -> Result<Complex64> {
    let polar = polar_coefficients(spec);
    let q = match q {
        None => {
            if ell != 0 {
                return Err(Error::Config(
                    "ell must be 0 when no prime is distinguished".into(),
                ));
            }
            let mut prod = 1.0;
            for pc in &polar {
                if pc.nu != 0.0 {
                    prod *= bessel_j(0, TAU_HI * pc.nu * omega / (pc.p as f64).sqrt())?;
                }
            }
            return Ok(Complex64::new(prod, 0.0));
        }
        Some(q) => q,
    };
    let Some(qc) = polar.iter().find(|pc| pc.p == q) else {
        return Err(Error::Domain(format!("q = {q} is not a prime <= X^2")));
    };
    let m = ell.unsigned_abs();
    let phase_sign = if ell < 0 { 1.0 } else { -1.0 };
    let ang = f64::from(m) * (std::f64::consts::FRAC_PI_2 + phase_sign * TAU_HI * qc.beta);
    let jq = bessel_j(m, TAU_HI * qc.nu * omega / (q as f64).sqrt())?;
    let mut out = Complex64::from_polar(1.0, ang) * jq;
    for pc in &polar {
        if pc.p != q && pc.nu != 0.0 {
            out *= bessel_j(0, TAU_HI * pc.nu * omega / (pc.p as f64).sqrt())?;
        }
    }
    Ok(out)
}

/// (𝒥_ℓ + 𝒥_{−ℓ})/2 = i^ℓ cos(2πℓβ_q) J_ℓ(2πν_qω/√q) ∏_{p≠q} J₀ — the
/// combination the zero-count expansion consumes.
pub fn charfn_symmetrized(
    spec: &CombinationSpec,
    omega: f64,
    q: u64,
    ell: u32,
) -> Result<Complex64> {
    let plus = charfn_j(spec, omega, Some(q), ell as i32)?;
    let minus = charfn_j(spec, omega, Some(q), -(ell as i32))?;
    Ok((plus + minus) / 2.0)
}

/// Monte Carlo mean with per-component standard errors.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate {
    pub mean: Complex64,
    pub stderr_re: f64,
    pub stderr_im: f64,
    pub count: usize,
}

/// Monte Carlo oracle for the characteristic-function products: the mean of
/// exp(2πiω Re P_ℒ(θ)) · cos(2πℓθ_q) over `count` deterministic draws (the
/// cosine weight is 1 when no prime is distinguished). Its expectation is
/// `charfn_symmetrized` when q is present, `charfn_j(…, None, 0)` otherwise.
pub fn mc_charfn(
    spec: &CombinationSpec,
    omega: f64,
    q: Option<u64>,
    ell: i32,
    seed: u64,
    count: usize,
) -> Result<McEstimate> {
    if count < 1000 {
        return Err(Error::Config(format!(
            "Monte Carlo needs count >= 1000, got {count}"
        )));
    }
    if q.is_none() && ell != 0 {
        return Err(Error::Config(
            "ell must be 0 when no prime is distinguished".into(),
        ));
    }
    let polar = polar_coefficients(spec);
    if let Some(qv) = q {
        if !polar.iter().any(|pc| pc.p == qv) {
            return Err(Error::Domain(format!("q = {qv} is not a prime <= X^2")));
        }
    }
    let draws: Vec<Complex64> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut re_p = 0.0;
            let mut theta_q = 0.0;
            for pc in &polar {
                let th = phase_theta(seed, i as u64, pc.p);
                if Some(pc.p) == q {
                    theta_q = th;
                }
                if pc.nu != 0.0 {
                    re_p += pc.nu * (TAU_HI * (th + pc.beta)).cos() / (pc.p as f64).sqrt();
                }
            }
            let weight = match q {
                None => 1.0,
                Some(_) => (TAU_HI * f64::from(ell) * theta_q).cos(),
            };
            Complex64::from_polar(weight, TAU_HI * omega * re_p)
        })
        .collect();
    let (mut sre, mut sim) = (Compensated::default(), Compensated::default());
    for d in &draws {
        sre.add(d.re);
        sim.add(d.im);
    }
    let n = count as f64;
    let mean = Complex64::new(sre.value() / n, sim.value() / n);
    let (mut vre, mut vim) = (Compensated::default(), Compensated::default());
    for d in &draws {
        vre.add((d.re - mean.re).powi(2));
        vim.add((d.im - mean.im).powi(2));
    }
    let denom = n * (n - 1.0);
    Ok(McEstimate {
        mean,
        stderr_re: (vre.value() / denom).sqrt(),
        stderr_im: (vim.value() / denom).sqrt(),
        count,
    })
}

/// Grid and truncation parameters for characteristic-function work. The
/// desk-scale defaults put Ω = Ψ(T)² while capping the harmonic depth at
/// K = 12; the conservative theoretical K = 2⌊Ψ(T)⁶⌋ is replaced and the
/// substitution is recorded in every report's metadata.
#[derive(Clone, Debug)]
pub struct CharFnConfig {
    pub omega_max: f64,
    pub ell_max: u32,
    pub omega_grid: Vec<f64>,
}

/// Desk-scale harmonic depth K.
pub const DEFAULT_ELL_MAX: u32 = 12;

impl CharFnConfig {
    pub fn new(omega_max: f64, ell_max: u32, omega_grid: Vec<f64>) -> Result<Self> {
        if !(omega_max > 0.0) {
            return Err(Error::Config(format!(
                "omega_max must be positive, got {omega_max}"
            )));
        }
        if ell_max < 1 {
            return Err(Error::Config("ell_max must be >= 1".into()));
        }
        if omega_grid.iter().any(|w| !w.is_finite()) {
            return Err(Error::Config("omega grid entries must be finite".into()));
        }
        Ok(CharFnConfig {
            omega_max,
            ell_max,
            omega_grid,
        })
    }

    #[must_use]
    pub fn desk_default(t: f64) -> Self {
        CharFnConfig {
            omega_max: psi_of_t(t).powi(2),
            ell_max: DEFAULT_ELL_MAX,
            omega_grid: vec![0.0, 0.05, 0.1, 0.2],
        }
    }
}

/// Sample dump, header `index,value`.
pub fn write_samples_csv<W: std::io::Write>(out: &mut W, samples: &[f64]) -> Result<()> {
    writeln!(out, "index,value")?;
    for (i, v) in samples.iter().enumerate() {
        writeln!(out, "{i},{v:.11e}")?;
    }
    Ok(())
}

/// One characteristic-function grid point with Monte Carlo error bars.
#[derive(Clone, Copy, Debug)]
pub struct CharFnRow {
    pub omega: f64,
    pub re: f64,
    pub im: f64,
    pub stderr_re: f64,
    pub stderr_im: f64,
}

/// Grid dump, header `omega,re,im,stderr_re,stderr_im`.
pub fn write_charfn_csv<W: std::io::Write>(out: &mut W, rows: &[CharFnRow]) -> Result<()> {
    writeln!(out, "omega,re,im,stderr_re,stderr_im")?;
    for r in rows {
        writeln!(
            out,
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}",
            r.omega, r.re, r.im, r.stderr_re, r.stderr_im
        )?;
    }
    Ok(())
}
