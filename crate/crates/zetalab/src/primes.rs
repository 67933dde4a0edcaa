//! Prime tables: a plain sieve of Eratosthenes, shared read-only after
//! construction. Desk scale keeps every sieve below 1e8.

const SIEVE_CAP: u64 = 100_000_000;

/// All primes ≤ `limit`, ascending.
///
/// # Panics
/// Panics if `limit` exceeds the desk-scale cap of 1e8.
#[must_use]
pub fn primes_upto(limit: u64) -> Vec<u64> {
    assert!(limit <= SIEVE_CAP, "sieve limit {limit} exceeds desk cap {SIEVE_CAP}");
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Σ_{p ≤ limit} 1/p, accumulated in ascending order.
#[must_use]
pub fn prime_reciprocal_sum(limit: u64) -> f64 {
    primes_upto(limit).iter().map(|&p| 1.0 / p as f64).sum()
}

/// Von Mangoldt Λ(n): ln p when n = p^k, else 0.
#[must_use]
pub fn von_mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += 1;
    }
    (n as f64).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(primes_upto(1), Vec::<u64>::new());
        assert_eq!(primes_upto(2), vec![2]);
        assert_eq!(primes_upto(16), vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(primes_upto(100).len(), 25);
        assert_eq!(primes_upto(10_000).len(), 1229);
    }

    #[test]
    fn reciprocal_sum_reference() {
        // Σ_{p≤400} 1/p, frozen from an independent sieve
        assert!((prime_reciprocal_sum(400) - 2.058776526422463).abs() < 1e-14);
        assert!((prime_reciprocal_sum(10_000) - 2.483059947233564).abs() < 1e-13);
    }

    #[test]
    fn von_mangoldt_values() {
        assert_eq!(von_mangoldt(1), 0.0);
        assert_eq!(von_mangoldt(6), 0.0);
        assert_eq!(von_mangoldt(12), 0.0);
        assert!((von_mangoldt(3) - 3f64.ln()).abs() < 1e-16);
        assert!((von_mangoldt(8) - 2f64.ln()).abs() < 1e-16);
        assert!((von_mangoldt(81) - 3f64.ln()).abs() < 1e-16);
        assert!((von_mangoldt(97) - 97f64.ln()).abs() < 1e-16);
    }
}
