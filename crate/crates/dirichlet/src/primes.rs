//! Prime enumeration by residue class.
//!
//! A plain sieve of Eratosthenes is all the tables need: the default
//! truncation point is `10^5` (9592 primes) and the brute-force
//! cross-checks sieve to `10^7`, which still takes well under a second.

use crate::error::{Error, Result};

/// All primes `p <= limit`, ascending.
pub fn sieve_primes(limit: u32) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(if n > 16 { n / (n.ilog2() as usize) } else { 8 });
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        primes.push(p as u32);
        let mut q = p * p;
        while q <= n {
            composite[q] = true;
            q += p;
        }
    }
    primes
}

/// All primes `p <= limit`, ascending (public naming used by the CLI).
pub fn primes_up_to(limit: u32) -> Vec<u32> {
    sieve_primes(limit)
}

/// Primes `p <= limit` in the residue class `p = n (mod m)`, ascending.
///
/// The class is taken modulo `m`, so `n = m` selects `p = 0 (mod m)`
/// (at most the single prime dividing a prime modulus).  Requires
/// `m >= 1` and `1 <= n <= m`.
pub fn primes_in_class(class: (u32, u32), limit: u32) -> Result<Vec<u32>> {
    let (m, n) = class;
    if m < 1 || n < 1 || n > m {
        return Err(Error::InvalidArgument(format!(
            "residue class {n} mod {m} must satisfy 1 <= n <= m"
        )));
    }
    let target = n % m;
    Ok(sieve_primes(limit)
        .into_iter()
        .filter(|p| p % m == target)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(sieve_primes(1), Vec::<u32>::new());
        assert_eq!(sieve_primes(2), vec![2]);
        assert_eq!(sieve_primes(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn prime_counting_checkpoints() {
        assert_eq!(sieve_primes(100).len(), 25);
        assert_eq!(sieve_primes(100_000).len(), 9592);
        assert_eq!(sieve_primes(1_000_000).len(), 78498);
    }

    #[test]
    fn classes_partition_the_primes() {
        let limit = 10_000;
        let all = sieve_primes(limit);
        for m in 1..=22u32 {
            let mut merged: Vec<u32> = (1..=m)
                .flat_map(|n| primes_in_class((m, n), limit).unwrap())
                .collect();
            merged.sort_unstable();
            assert_eq!(merged, all, "classes mod {m} must partition");
        }
    }

    #[test]
    fn class_membership() {
        assert_eq!(primes_in_class((4, 1), 50).unwrap(), vec![5, 13, 17, 29, 37, 41]);
        assert_eq!(primes_in_class((4, 3), 50).unwrap(), vec![3, 7, 11, 19, 23, 31, 43, 47]);
        // the residue class containing the modulus itself
        assert_eq!(primes_in_class((3, 3), 50).unwrap(), vec![3]);
        assert!(primes_in_class((4, 5), 50).is_err());
    }
}
