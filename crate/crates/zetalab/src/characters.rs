//! Exact arithmetic of Dirichlet characters mod M: enumeration via the CRT
//! structure of (ℤ/M)*, canonical labels, values, parity 𝔞, conductor,
//! primitivity, and Gauss sums τ(χ).
//!
//! A character is labeled by its exponent vector against fixed generators of
//! the cyclic CRT components, read as a mixed-radix integer (lexicographic),
//! so labels are stable across runs. Values live in a dense table of size M.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A Dirichlet character mod M with its dense value table.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    modulus: u32,
    index: u32,
    values: Vec<Complex64>,
    parity: u8,
    conductor: u32,
    primitive: bool,
}

impl DirichletCharacter {
    #[must_use]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Canonical label within the character group mod M.
    #[must_use]
    pub fn index(&self) -> u32 {
        self.index
    }

    /// χ(n), extended to all integers by periodicity; 0 when gcd(n, M) > 1.
    #[must_use]
    pub fn value(&self, n: i64) -> Complex64 {
        let m = i64::from(self.modulus);
        self.values[n.rem_euclid(m) as usize]
    }

    /// 𝔞 ∈ {0, 1}: 0 iff χ(−1) = 1.
    #[must_use]
    pub fn parity(&self) -> u8 {
        self.parity
    }

    #[must_use]
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    #[must_use]
    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    #[must_use]
    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// True when every value is real (quadratic or principal).
    #[must_use]
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im.abs() < 1e-12)
    }

    /// Selector string "M.k" used by configuration and file naming.
    #[must_use]
    pub fn selector(&self) -> String {
        format!("{}.{}", self.modulus, self.index)
    }

    /// The conjugate character χ̄.
    #[must_use]
    pub fn conjugate(&self) -> DirichletCharacter {
        let group = enumerate_characters(self.modulus).expect("modulus already validated");
        let target: Vec<Complex64> = self.values.iter().map(Complex64::conj).collect();
        group
            .into_iter()
            .find(|c| table_close(&c.values, &target))
            .expect("conjugate exists in the character group")
    }

    fn raw_values(&self) -> &[Complex64] {
        &self.values
    }
}

/// One cyclic CRT component of (ℤ/M)*: residues mod `q` with a discrete-log
/// table against a fixed generator of order `order`.
struct Component {
    q: u32,
    order: u32,
    dlog: Vec<u32>, // indexed by residue mod q; only coprime entries meaningful
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while u64::from(d) * u64::from(d) <= u64::from(n) {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn primitive_root_mod_p(p: u32) -> u32 {
    let phi = p - 1;
    let prime_factors: Vec<u32> = factorize(phi).into_iter().map(|(q, _)| q).collect();
    'g: for g in 2..p {
        for &q in &prime_factors {
            if pow_mod(u64::from(g), u64::from(phi / q), u64::from(p)) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("every odd prime has a primitive root")
}

/// Generator of (ℤ/p^e)* for odd p: a primitive root mod p, lifted so that
/// g^{p−1} ≢ 1 (mod p²).
fn primitive_root_mod_pe(p: u32, q: u32) -> u32 {
    let g = primitive_root_mod_p(p);
    if q == p {
        return g;
    }
    let p2 = u64::from(p) * u64::from(p);
    if pow_mod(u64::from(g), u64::from(p - 1), p2) != 1 {
        g
    } else {
        g + p
    }
}

fn dlog_table(q: u32, g: u32, order: u32) -> Vec<u32> {
    let mut table = vec![u32::MAX; q as usize];
    let mut x = 1u64;
    for j in 0..order {
        table[x as usize] = j;
        x = x * u64::from(g) % u64::from(q);
    }
    table
}

/// CRT components of (ℤ/M)*, in a fixed order: the 2-part first (sign
/// component then the ⟨5⟩ component), then odd prime powers ascending.
fn unit_group_components(m: u32) -> Vec<Component> {
    let mut comps = Vec::new();
    for (p, e) in factorize(m) {
        let q = p.pow(e);
        if p == 2 {
            match e {
                1 => {}
                2 => comps.push(Component {
                    q,
                    order: 2,
                    dlog: dlog_table(q, 3, 2),
                }),
                _ => {
                    // (ℤ/2^e)* = ⟨−1⟩ × ⟨5⟩
                    let half = 2u32.pow(e - 2);
                    let mut sign = vec![u32::MAX; q as usize];
                    let mut five = vec![u32::MAX; q as usize];
                    let mut x = 1u64;
                    for j in 0..half {
                        sign[x as usize] = 0;
                        five[x as usize] = j;
                        let neg = (u64::from(q) - x) as usize;
                        sign[neg] = 1;
                        five[neg] = j;
                        x = x * 5 % u64::from(q);
                    }
                    comps.push(Component {
                        q,
                        order: 2,
                        dlog: sign,
                    });
                    comps.push(Component {
                        q,
                        order: half,
                        dlog: five,
                    });
                }
            }
        } else {
            let order = q / p * (p - 1);
            let g = primitive_root_mod_pe(p, q);
            comps.push(Component {
                q,
                order,
                dlog: dlog_table(q, g, order),
            });
        }
    }
    comps
}

/// All φ(M) characters mod M in canonical order (exponent vectors against the
/// CRT generators, lexicographic).
pub fn enumerate_characters(m: u32) -> Result<Vec<DirichletCharacter>> {
    if m == 0 {
        return Err(Error::Config("modulus must be positive".into()));
    }
    let comps = unit_group_components(m);
    let phi: u64 = comps.iter().map(|c| u64::from(c.order)).product();
    let mut out = Vec::with_capacity(phi as usize);
    for index in 0..phi {
        // mixed-radix digits, most significant first
        let mut exps = Vec::with_capacity(comps.len());
        let mut rem = index;
        let mut stride = phi;
        for c in &comps {
            stride /= u64::from(c.order);
            exps.push((rem / stride) as u32);
            rem %= stride;
        }
        let values = value_table(m, &comps, &exps);
        let parity = parity_from_table(m, &values);
        let conductor = conductor_from_table(m, &values);
        out.push(DirichletCharacter {
            modulus: m,
            index: index as u32,
            values,
            parity,
            conductor,
            primitive: conductor == m,
        });
    }
    Ok(out)
}

fn value_table(m: u32, comps: &[Component], exps: &[u32]) -> Vec<Complex64> {
    let mut values = vec![Complex64::new(0.0, 0.0); m as usize];
    for n in 0..m {
        if m > 1 && gcd(n, m) != 1 {
            continue;
        }
        // angle = Σ k_i · dlog_i(n) / d_i  (mod 1)
        let mut angle = 0.0f64;
        for (c, &k) in comps.iter().zip(exps) {
            let d = c.dlog[(n % c.q) as usize];
            debug_assert!(d != u32::MAX);
            angle += f64::from((u64::from(k) * u64::from(d) % u64::from(c.order)) as u32)
                / f64::from(c.order);
        }
        let theta = std::f64::consts::TAU * angle.fract();
        values[n as usize] = Complex64::new(theta.cos(), theta.sin());
    }
    if m == 1 {
        values[0] = Complex64::new(1.0, 0.0);
    }
    values
}

fn parity_from_table(m: u32, values: &[Complex64]) -> u8 {
    if m <= 2 {
        return 0;
    }
    let v = values[(m - 1) as usize];
    u8::from(v.re < 0.0)
}

fn conductor_from_table(m: u32, values: &[Complex64]) -> u32 {
    if m == 1 {
        return 1;
    }
    for f in 1..=m {
        if m % f != 0 {
            continue;
        }
        // induced from mod f iff χ(n) = 1 whenever n ≡ 1 (mod f), gcd(n,M)=1
        let mut ok = true;
        let mut n = 1u32;
        while n < m {
            if gcd(n, m) == 1 && (values[n as usize] - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
                ok = false;
                break;
            }
            n += f;
        }
        if ok {
            return f;
        }
    }
    m
}

/// Gauss sum τ(χ) = Σ_{a mod M} χ(a) e^{2πia/M}; requires χ primitive.
pub fn gauss_sum(chi: &DirichletCharacter) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive {
            modulus: chi.modulus(),
            conductor: chi.conductor(),
        });
    }
    let m = chi.modulus();
    let mut sum = Complex64::new(0.0, 0.0);
    for a in 0..m {
        let v = chi.values[a as usize];
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let theta = std::f64::consts::TAU * f64::from(a) / f64::from(m);
        sum += v * Complex64::new(theta.cos(), theta.sin());
    }
    Ok(sum)
}

/// Look up a character by selector string "M.k".
pub fn from_selector(sel: &str) -> Result<DirichletCharacter> {
    let (m_str, k_str) = sel
        .split_once('.')
        .ok_or_else(|| Error::Config(format!("bad character selector {sel:?}, expected M.k")))?;
    let m: u32 = m_str
        .parse()
        .map_err(|_| Error::Config(format!("bad modulus in selector {sel:?}")))?;
    let k: u32 = k_str
        .parse()
        .map_err(|_| Error::Config(format!("bad index in selector {sel:?}")))?;
    let group = enumerate_characters(m)?;
    group
        .into_iter()
        .find(|c| c.index() == k)
        .ok_or_else(|| Error::Config(format!("no character {sel}: group mod {m} has fewer labels")))
}

/// The pointwise product χ₁·χ̄₂ as a character mod lcm(M₁, M₂).
pub fn product_with_conj(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
) -> Result<DirichletCharacter> {
    let m1 = u64::from(chi1.modulus());
    let m2 = u64::from(chi2.modulus());
    let l = (m1 / u64::from(gcd(chi1.modulus(), chi2.modulus())) * m2) as u32;
    let target: Vec<Complex64> = (0..l)
        .map(|n| chi1.value(i64::from(n)) * chi2.value(i64::from(n)).conj())
        .collect();
    let group = enumerate_characters(l)?;
    group
        .into_iter()
        .find(|c| table_close(c.raw_values(), &target))
        .ok_or_else(|| {
            Error::Config(format!(
                "product of {} and conj {} is not a character mod {l}",
                chi1.selector(),
                chi2.selector()
            ))
        })
}

fn table_close(a: &[Complex64], b: &[Complex64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-9)
}
