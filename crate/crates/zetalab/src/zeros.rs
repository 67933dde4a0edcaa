//! Critical-line zero location for ζ(s) and Dirichlet L(s,χ): Riemann–Siegel
//! evaluation with an Euler–Maclaurin fallback, sign-change scans with a
//! census-driven rescue pass, Hardy-type rotated L-functions, nearest-zero
//! gaps η_χ(γ), and empirical audits of the no-coincidence and near-miss
//! hypotheses.

use std::io::{BufRead, Write};

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rayon::prelude::*;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::leval::{hurwitz_zeta, l_value, root_number};
use crate::numeric::{phase_mod_tau, two_prod, TAU_HI, TAU_LO};
use crate::special::ln_gamma;

/// Below this height Z(t) is evaluated from the Euler–Maclaurin ζ backbone;
/// above it the Riemann–Siegel expansion with five correction terms reaches
/// 2e−9 absolute accuracy.
const RS_CROSSOVER: f64 = 300.0;

/// Taylor coefficients of Ψ(p) = cos(2π(p²−p−1/16))/cos(2πp) about p = 1/2.
/// Odd entries vanish by the symmetry Ψ(p) = Ψ(1−p).
const PSI_TAYLOR: [f64; 61] = [
    0.3826834323650898, 0.0, 1.7489618723100817, 0.0,
    2.118025207685496, 0.0, -0.8707216670511481, 0.0,
    -3.4733112243465167, 0.0, -1.6626947308999325, 0.0,
    1.216731288919232, 0.0, 1.3014304161007977, 0.0,
    0.03051102182736167, 0.0, -0.3755803051545095, 0.0,
    -0.1085784416564066, 0.0, 0.051832902999549624, 0.0,
    0.029999480619902277, 0.0, -0.0022759396706125644, 0.0,
    -0.004382647416580339, 0.0, -0.0004064230183729847, 0.0,
    0.0004006097785422114, 0.0, 8.971057991388841e-05, 0.0,
    -2.3025650027239108e-05, 0.0, -9.380006601906792e-06, 0.0,
    6.323514947609108e-07, 0.0, 6.551022819231502e-07, 0.0,
    2.210523745552697e-08, 0.0, -3.322316176445629e-08, 0.0,
    -3.734910989933656e-09, 0.0, 1.2445067060797738e-09, 0.0,
    2.476820537650219e-10, 0.0, -3.284272816891627e-11, 0.0,
    -1.1305406852298404e-11, 0.0, 4.565463979588694e-13, 0.0,
    3.9598480945249214e-13,
];

/// Coefficient tables for Ψ^{(m)}, m = 0..12: entry j of table m is
/// a_{j+m}·(j+m)!/j!, so Ψ^{(m)}(1/2+u) is a plain Horner evaluation in u.
static PSI_DERIV: Lazy<Vec<Vec<f64>>> = Lazy::new(|| {
    (0..=12)
        .map(|m| {
            (m..PSI_TAYLOR.len())
                .map(|k| {
                    let mut c = PSI_TAYLOR[k];
                    for i in 0..m {
                        c *= (k - i) as f64;
                    }
                    c
                })
                .collect()
        })
        .collect()
});

fn psi_deriv(m: usize, u: f64) -> f64 {
    PSI_DERIV[m].iter().rev().fold(0.0, |acc, &c| acc * u + c)
}

/// One double-double reduction of x modulo 2π, for |x| ≲ 1e6.
fn reduce_tau(x: f64) -> f64 {
    let n = (x / TAU_HI).round();
    let (q_hi, q_lo) = two_prod(n, TAU_HI);
    (x - q_hi) - (q_lo + n * TAU_LO)
}

/// θ(t) = arg Γ(1/4 + it/2) − (t/2)·ln π, reduced mod 2π.
///
/// The asymptotic series takes over at t = 30; below, the Γ term is computed
/// directly. Only e^{iθ} is consumed downstream, so reduction is harmless.
#[must_use]
pub fn theta_mod_tau(t: f64) -> f64 {
    if t < 30.0 {
        let g = ln_gamma(Complex64::new(0.25, 0.5 * t))
            .expect("gamma poles lie on the real axis");
        return reduce_tau(g.im - 0.5 * t * std::f64::consts::PI.ln());
    }
    let main = phase_mod_tau(0.5 * t, t / TAU_HI);
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let tail = inv / 48.0 * (1.0 + inv2 * (7.0 / 120.0 + inv2 * (31.0 / 1680.0)));
    reduce_tau(main - (0.5 * t).rem_euclid(TAU_HI) - std::f64::consts::FRAC_PI_8 + tail)
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real-valued; |error| ≤ 1e−8 for
/// t ≤ 1e5. Zeros of Z are the ordinates of the nontrivial zeros of ζ.
#[must_use]
pub fn zeta_z(t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    if t < RS_CROSSOVER {
        let z = hurwitz_zeta(Complex64::new(0.5, t), 1.0)
            .expect("critical line is inside the Hurwitz domain");
        let theta = theta_mod_tau(t);
        let (sin, cos) = theta.sin_cos();
        return z.re * cos - z.im * sin;
    }
    // Riemann–Siegel: 2 Σ_{n≤ν} cos(θ − t·ln n)/√n + (−1)^{ν−1} a^{−1/2} Σ C_j a^{−j}
    // with a = √(t/2π), ν = ⌊a⌋, p = a − ν.
    let a = (t / TAU_HI).sqrt();
    let nu = a.floor();
    let p = a - nu;
    let theta = theta_mod_tau(t);
    let mut main = 0.0;
    for n in 1..=(nu as u64) {
        let arg = theta - phase_mod_tau(t, n as f64);
        main += arg.cos() / (n as f64).sqrt();
    }
    let u = p - 0.5;
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let c0 = psi_deriv(0, u);
    let c1 = -psi_deriv(3, u) / (96.0 * pi2);
    let c2 = psi_deriv(2, u) / (64.0 * pi2) + psi_deriv(6, u) / (18_432.0 * pi2 * pi2);
    let c3 = -psi_deriv(1, u) / (64.0 * pi2)
        - psi_deriv(5, u) / (3840.0 * pi2 * pi2)
        - psi_deriv(9, u) / (5_308_416.0 * pi2 * pi2 * pi2);
    let c4 = psi_deriv(0, u) / (128.0 * pi2)
        + 19.0 * psi_deriv(4, u) / (24_576.0 * pi2 * pi2)
        + 11.0 * psi_deriv(8, u) / (5_898_240.0 * pi2 * pi2 * pi2)
        + psi_deriv(12, u) / (2_038_431_744.0 * pi2 * pi2 * pi2 * pi2);
    let ai = 1.0 / a;
    let corr = (((c4 * ai + c3) * ai + c2) * ai + c1) * ai + c0;
    let sign = if (nu as u64) % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * main + sign * corr / a.sqrt()
}

/// Smooth zero-counting main term (T/2π)·ln(T/2π) − T/2π + 7/8.
pub fn riemann_von_mangoldt(t: f64) -> Result<f64> {
    if t <= TAU_HI {
        return Err(Error::Domain(format!(
            "counting main term needs T > 2n, got {t}"
        )));
    }
    let x = t / TAU_HI;
    Ok(x * x.ln() - x + 0.875)
}

/// Where a zero set came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Loaded,
}

impl Provenance {
    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::Loaded => "loaded",
        }
    }
}

/// Sorted positive ordinates of critical-line zeros up to a height, tagged
/// with the function they belong to and how they were obtained.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    ordinates: Vec<f64>,
    height_t: f64,
    owner: String,
    provenance: Provenance,
    precision: f64,
}

impl ZeroSet {
    /// Validates ordering, range, and (for ζ) the counting-formula band ±2.
    pub fn new(
        ordinates: Vec<f64>,
        height_t: f64,
        owner: impl Into<String>,
        provenance: Provenance,
        precision: f64,
    ) -> Result<Self> {
        let owner = owner.into();
        for w in ordinates.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::Misaligned(format!(
                    "ordinates not strictly increasing at {} >= {}",
                    w[0], w[1]
                )));
            }
        }
        if let (Some(first), Some(last)) = (ordinates.first(), ordinates.last()) {
            if *first <= 0.0 || *last > height_t + precision {
                return Err(Error::Misaligned(format!(
                    "ordinates outside (0, {height_t}]: first {first}, last {last}"
                )));
            }
        }
        if owner == "zeta" && height_t > 14.0 {
            let expected = riemann_von_mangoldt(height_t)?;
            let diff = (ordinates.len() as f64 - expected).abs();
            if diff > 2.0 {
                return Err(Error::MissedZeros {
                    expected: expected.round() as i64,
                    found: ordinates.len() as i64,
                    lo: 0.0,
                    hi: height_t,
                });
            }
        }
        Ok(ZeroSet {
            ordinates,
            height_t,
            owner,
            provenance,
            precision,
        })
    }

    #[must_use]
    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    #[must_use]
    pub fn height_t(&self) -> f64 {
        self.height_t
    }

    #[must_use]
    pub fn owner(&self) -> &str {
        &self.owner
    }

    #[must_use]
    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    #[must_use]
    pub fn precision(&self) -> f64 {
        self.precision
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Ordinates not exceeding `t`.
    #[must_use]
    pub fn below(&self, t: f64) -> &[f64] {
        let k = self.ordinates.partition_point(|&g| g <= t);
        &self.ordinates[..k]
    }

    /// CSV with header `gamma`, one ordinate per line, 12 significant digits.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "gamma")?;
        for g in &self.ordinates {
            writeln!(out, "{g:.11e}")?;
        }
        Ok(())
    }

    /// Reads a `gamma` CSV written by `write_csv` (or an external table).
    pub fn read_csv<R: BufRead>(
        reader: R,
        owner: impl Into<String>,
        height_t: f64,
        precision: f64,
    ) -> Result<ZeroSet> {
        let mut lines = reader.lines().enumerate();
        match lines.next() {
            Some((_, Ok(h))) if h.trim() == "gamma" => {}
            Some((_, Ok(h))) => {
                return Err(Error::Cache(format!(
                    "line 1: expected header 'gamma', got {h:?}"
                )))
            }
            Some((_, Err(e))) => return Err(Error::Io(e)),
            None => return Err(Error::Cache("empty zero table".into())),
        }
        let mut ordinates = Vec::new();
        for (idx, line) in lines {
            let line = line?;
            let text = line.trim();
            if text.is_empty() {
                continue;
            }
            let g: f64 = text.parse().map_err(|_| {
                Error::Cache(format!("line {}: not a number: {text:?}", idx + 1))
            })?;
            ordinates.push(g);
        }
        ZeroSet::new(ordinates, height_t, owner, Provenance::Loaded, precision)
    }
}

/// Canonical cache file name, `zeros_<owner>_<T>.csv`.
#[must_use]
pub fn cache_file_name(owner: &str, t: f64) -> String {
    if t == t.trunc() && t.abs() < 1e15 {
        format!("zeros_{owner}_{}.csv", t as i64)
    } else {
        format!("zeros_{owner}_{t}.csv")
    }
}

/// Scans [lo, hi] at `step` for sign changes of `f`, bisecting each bracket
/// down to width `prec`. Windows run in parallel; the result is sorted.
fn scan_sign_changes<F: Fn(f64) -> f64 + Sync>(
    f: &F,
    lo: f64,
    hi: f64,
    step: f64,
    prec: f64,
) -> Vec<f64> {
    if hi <= lo {
        return Vec::new();
    }
    let n = ((hi - lo) / step).ceil() as usize;
    const WINDOW: usize = 4096;
    let windows: Vec<usize> = (0..n.div_ceil(WINDOW)).collect();
    let mut zeros: Vec<f64> = windows
        .par_iter()
        .flat_map_iter(|&w| {
            let start = w * WINDOW;
            let end = ((w + 1) * WINDOW).min(n);
            let mut found = Vec::new();
            let mut t_prev = lo + start as f64 * step;
            let mut f_prev = f(t_prev);
            for i in start + 1..=end {
                let t_next = (lo + i as f64 * step).min(hi);
                let f_next = f(t_next);
                if f_prev == 0.0 {
                    found.push(t_prev);
                } else if f_prev.signum() != f_next.signum() && f_next != 0.0 {
                    found.push(bisect(f, t_prev, t_next, f_prev, prec));
                }
                t_prev = t_next;
                f_prev = f_next;
            }
            found.into_iter()
        })
        .collect();
    zeros.sort_by(f64::total_cmp);
    zeros
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, mut f_lo: f64, prec: f64) -> f64 {
    while hi - lo > prec {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Bisection refinement width for every computed ordinate.
pub const ZERO_PRECISION: f64 = 1e-9;

/// All ζ ordinates in (0, T], located by a 0.05-step scan of Z with census
/// rescue: when the count misses the smooth main term by more than 2, the
/// widest gaps (relative to the local mean spacing) are rescanned at 4× and
/// then 16× resolution before reporting missed zeros.
pub fn find_zeros_zeta(t: f64) -> Result<ZeroSet> {
    let f = |x: f64| zeta_z(x);
    let mut ords = scan_sign_changes(&f, 12.0, t, 0.05, ZERO_PRECISION);
    if t > 14.0 {
        let expected = riemann_von_mangoldt(t)?;
        for fine in [0.05 / 4.0, 0.05 / 16.0] {
            if (ords.len() as f64 - expected).abs() <= 2.0 {
                break;
            }
            rescan_gaps(&f, &mut ords, t, fine);
        }
        if (ords.len() as f64 - expected).abs() > 2.0 {
            let (lo, hi) = worst_gap(&ords, t);
            return Err(Error::MissedZeros {
                expected: expected.round() as i64,
                found: ords.len() as i64,
                lo,
                hi,
            });
        }
    }
    ZeroSet::new(ords, t, "zeta", Provenance::Computed, ZERO_PRECISION)
}

/// Mean zero spacing near height γ, 2π/ln(γ/2π).
fn local_spacing(gamma: f64) -> f64 {
    TAU_HI / (gamma.max(15.0) / TAU_HI).ln()
}

fn gap_windows(ords: &[f64], t: f64) -> Vec<(f64, f64, f64)> {
    let mut edges = Vec::with_capacity(ords.len() + 2);
    edges.push(13.8);
    edges.extend_from_slice(ords);
    edges.push(t);
    edges
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| (w[0], w[1], (w[1] - w[0]) / local_spacing(w[1])))
        .collect()
}

fn rescan_gaps<F: Fn(f64) -> f64 + Sync>(f: &F, ords: &mut Vec<f64>, t: f64, step: f64) {
    let suspects: Vec<(f64, f64)> = gap_windows(ords, t)
        .into_iter()
        .filter(|&(_, _, score)| score > 1.5)
        .map(|(lo, hi, _)| (lo, hi))
        .collect();
    for (lo, hi) in suspects {
        for z in scan_sign_changes(f, lo, hi, step, ZERO_PRECISION) {
            if ords.iter().all(|&g| (g - z).abs() > 1e-6) {
                ords.push(z);
            }
        }
    }
    ords.sort_by(f64::total_cmp);
}

fn worst_gap(ords: &[f64], t: f64) -> (f64, f64) {
    gap_windows(ords, t)
        .into_iter()
        .max_by(|a, b| a.2.total_cmp(&b.2))
        .map_or((0.0, t), |(lo, hi, _)| (lo, hi))
}

/// Hardy-type rotated L-function Z_χ(t) = Re(e^{iϑ_χ(t)} L(1/2+it, χ)),
/// real-valued for primitive χ by the functional equation.
pub fn hardy_z_chi(chi: &DirichletCharacter, t: f64) -> Result<f64> {
    Ok(rotated_l(chi, t)?.re)
}

fn rotated_l(chi: &DirichletCharacter, t: f64) -> Result<Complex64> {
    let a = f64::from(chi.parity());
    let delta = root_number(chi)?.arg();
    let g = ln_gamma(Complex64::new(0.25 + 0.5 * a, 0.5 * t))?;
    let vartheta =
        g.im + 0.5 * t * (f64::from(chi.modulus()) / std::f64::consts::PI).ln() - 0.5 * delta;
    let l = l_value(chi, Complex64::new(0.5, t))?;
    Ok(Complex64::new(0.0, reduce_tau(vartheta)).exp() * l)
}

/// All ordinates of L(s,χ) zeros in (0, T], from a 0.04-step scan of Z_χ.
/// Realness of the rotation is probed first; a failed probe means the root
/// number (hence the χ data) is inconsistent.
pub fn find_zeros_l(chi: &DirichletCharacter, t: f64) -> Result<ZeroSet> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive {
            modulus: chi.modulus(),
            conductor: chi.conductor(),
        });
    }
    for frac in [0.13, 0.37, 0.61, 0.83, 0.97] {
        let probe = frac * t;
        let z = rotated_l(chi, probe)?;
        let norm = z.norm();
        if norm > 1e-12 {
            let ratio = z.im.abs() / norm;
            if ratio > 1e-6 {
                return Err(Error::RootNumber { t: probe, ratio });
            }
        }
    }
    let f = |x: f64| hardy_z_chi(chi, x).unwrap_or(f64::NAN);
    let ords = scan_sign_changes(&f, 0.04, t, 0.04, ZERO_PRECISION);
    ZeroSet::new(ords, t, chi.selector(), Provenance::Computed, ZERO_PRECISION)
}

/// Nearest-zero distance with a boundary-effect warning when the set does
/// not extend at least 5.0 above γ.
#[derive(Clone, Copy, Debug)]
pub struct Eta {
    pub value: f64,
    pub boundary_warning: bool,
}

/// η_χ(γ) = min over the set of |γ − γ_χ|.
pub fn eta_chi(gamma: f64, zl: &ZeroSet) -> Result<Eta> {
    if zl.is_empty() {
        return Err(Error::Domain(
            "eta_chi needs a nonempty zero set".into(),
        ));
    }
    Ok(Eta {
        value: min_distance(zl.ordinates(), gamma),
        boundary_warning: zl.height_t() < gamma + 5.0,
    })
}

fn min_distance(sorted: &[f64], x: f64) -> f64 {
    let k = sorted.partition_point(|&g| g < x);
    let mut best = f64::INFINITY;
    if k < sorted.len() {
        best = best.min((sorted[k] - x).abs());
    }
    if k > 0 {
        best = best.min((x - sorted[k - 1]).abs());
    }
    best
}

/// A ζ ordinate and an L ordinate closer than the audit tolerance.
#[derive(Clone, Copy, Debug)]
pub struct CoincidencePair {
    pub gamma: f64,
    pub gamma_chi: f64,
    pub distance: f64,
}

/// All pairs (γ, γ_χ) with |γ − γ_χ| < tol; the no-coincidence hypothesis
/// predicts an empty list for any honest tolerance.
pub fn hypothesis_d_audit(
    zeta_zeros: &ZeroSet,
    l_zeros: &ZeroSet,
    tol: f64,
) -> Result<Vec<CoincidencePair>> {
    if (zeta_zeros.height_t() - l_zeros.height_t()).abs() > 1e-9 {
        return Err(Error::Misaligned(format!(
            "zero sets cover different heights: {} vs {}",
            zeta_zeros.height_t(),
            l_zeros.height_t()
        )));
    }
    let ls = l_zeros.ordinates();
    let mut pairs = Vec::new();
    for &g in zeta_zeros.ordinates() {
        let lo = ls.partition_point(|&x| x <= g - tol);
        for &gx in &ls[lo..] {
            if gx >= g + tol {
                break;
            }
            if (g - gx).abs() < tol {
                pairs.push(CoincidencePair {
                    gamma: g,
                    gamma_chi: gx,
                    distance: (g - gx).abs(),
                });
            }
        }
    }
    Ok(pairs)
}

/// For each C in the grid, the fraction of ζ ordinates ≤ T with some L
/// ordinate within C/ln T. Nondecreasing in C by construction.
pub fn hypothesis_h_profile(
    zeta_zeros: &ZeroSet,
    l_zeros: &ZeroSet,
    c_grid: &[f64],
    t: f64,
) -> Result<Vec<f64>> {
    for &c in c_grid {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::Domain(format!(
                "near-miss profile needs 0 < C < 1, got {c}"
            )));
        }
    }
    let sample = zeta_zeros.below(t);
    if sample.is_empty() {
        return Err(Error::Domain("no zeta ordinates below T".into()));
    }
    let dists: Vec<f64> = sample
        .iter()
        .map(|&g| min_distance(l_zeros.ordinates(), g))
        .collect();
    let log_t = t.ln();
    Ok(c_grid
        .iter()
        .map(|&c| {
            let cut = c / log_t;
            dists.iter().filter(|&&d| d <= cut).count() as f64 / dists.len() as f64
        })
        .collect())
}
