//! Working-precision policy and memoization shared by all evaluators.
//!
//! Every public evaluation routine takes a [`PrecisionContext`].  The
//! context fixes
//!
//! * the decimal target (printed digits) and guard digits, which together
//!   determine the MPFR working precision in bits,
//! * the uniform truncation point `M` ("cutoff") separating the finite
//!   Euler-product part of each series from its analytically transformed
//!   tail, and
//! * the tail tolerance `10^-(target + guard/2)` at which adaptive series
//!   stop.
//!
//! It also owns the memoization tables.  Hurwitz zeta values, L-values,
//! logarithms of truncated Euler products, and per-residue-class prime
//! power sums are shared across every table that needs them, which is what
//! keeps the full table suite fast: the expensive transcendental work is
//! proportional to the number of *distinct* (s, chi) pairs, not to the
//! number of printed rows.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::primes::sieve_primes;

/// Largest modulus the residue-class tables support.  One sieve pass bins
/// the prime power sums for every modulus up to this bound simultaneously.
pub const MAX_MODULUS: u32 = 22;

/// Decimal digits printed in the reference tables.
pub const DEFAULT_TARGET_DIGITS: u32 = 50;

/// Extra decimal digits carried internally beyond the printed target.
pub const DEFAULT_GUARD_DIGITS: u32 = 15;

/// Default Euler-product truncation point `M`.
pub const DEFAULT_CUTOFF: u32 = 100_000;

/// Per-residue-class prime power sums at one exponent `u`:
/// `sums_for(m)[j] = sum of p^-u over primes p <= M with p mod m = j`.
///
/// Index `j` ranges over `0..m`; a residue class `n` maps to `n % m`.
/// The modulus-1 row holds the single total over all primes `<= M`.
pub struct ClassSums {
    per_m: Vec<Vec<Float>>,
}

impl ClassSums {
    /// Power sums binned by `p mod m`.
    pub fn sums_for(&self, m: u32) -> &[Float] {
        &self.per_m[m as usize - 1]
    }

    /// `sum p^-u` over all primes up to the cutoff.
    pub fn total(&self) -> &Float {
        &self.per_m[0][0]
    }

    /// Sum for the residue class of `n` modulo `m`.
    pub fn class(&self, m: u32, n: u32) -> &Float {
        &self.sums_for(m)[(n % m) as usize]
    }
}

type CKey = (u32, u32, u32);

#[derive(Default)]
struct Caches {
    primes: OnceLock<Arc<Vec<u32>>>,
    /// exponent u -> class power sums for every modulus <= MAX_MODULUS
    class_sums: Mutex<HashMap<u32, Arc<ClassSums>>>,
    /// (s, num, den) -> zeta(s, num/den)
    hurwitz: Mutex<HashMap<CKey, Float>>,
    /// (s, num, den) -> d/ds zeta(s, num/den)
    hurwitz_ds: Mutex<HashMap<CKey, Float>>,
    /// (num, den) -> digamma(num/den)
    digamma: Mutex<HashMap<(u32, u32), Float>>,
    /// (m, r, s) -> L(s, chi_r)
    l_values: Mutex<HashMap<CKey, BigComplex>>,
    /// (m, r, v) -> log L(M, v, chi_r) on the principal branch
    log_l_inc: Mutex<HashMap<CKey, BigComplex>>,
    /// (m, r, s) -> S(s, chi_r), the prime L-series at the full cutoff
    prime_l: Mutex<HashMap<CKey, BigComplex>>,
    /// (m, n, v) -> P_{m,n}(M, v), the tail prime zeta modulo value
    p_inc: Mutex<HashMap<CKey, Float>>,
    /// (family, m, n, s) -> constant-family cell value
    constants: Mutex<HashMap<(u8, u32, u32, u32), Float>>,
}

/// Evaluation policy: precision, truncation, tolerances, and memoization.
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
    cutoff: u32,
    prec: u32,
    tail_tol: Float,
    caches: Caches,
}

impl PrecisionContext {
    /// Context for `target_digits` printed digits with the default guard.
    pub fn new(target_digits: u32, cutoff: u32) -> Result<Self> {
        Self::with_guard(target_digits, DEFAULT_GUARD_DIGITS, cutoff)
    }

    /// Context with the default 50-digit target and cutoff `M = 10^5`.
    pub fn standard() -> Self {
        Self::new(DEFAULT_TARGET_DIGITS, DEFAULT_CUTOFF).expect("default parameters are valid")
    }

    /// Fully explicit constructor.
    ///
    /// Requires at least 10 guard digits (the printed-digit rounding must
    /// sit well inside the working precision) and a cutoff of at least
    /// `2 * MAX_MODULUS`, so that for every supported modulus the primes
    /// dividing it, and at least one prime in every coprime class, fall in
    /// the directly summed range.
    pub fn with_guard(target_digits: u32, guard_digits: u32, cutoff: u32) -> Result<Self> {
        if !(1..=1000).contains(&target_digits) {
            return Err(Error::InvalidArgument(format!(
                "target digits {target_digits} outside 1..=1000"
            )));
        }
        if guard_digits < 10 {
            return Err(Error::InvalidArgument(format!(
                "guard digits {guard_digits} below the minimum of 10"
            )));
        }
        if cutoff < 2 * MAX_MODULUS {
            return Err(Error::InvalidArgument(format!(
                "cutoff {cutoff} below 2 * max modulus = {}",
                2 * MAX_MODULUS
            )));
        }
        let digits = target_digits + guard_digits;
        // bits per decimal digit = log2(10); round up to a limb-friendly
        // multiple of 32 with a small safety pad.
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8;
        let prec = bits.div_ceil(32) * 32;
        let tol_exp = -(target_digits as f64 + guard_digits as f64 / 2.0);
        let tail_tol = Float::with_val(prec, tol_exp).exp10();
        Ok(Self {
            target_digits,
            guard_digits,
            cutoff,
            prec,
            tail_tol,
            caches: Caches::default(),
        })
    }

    /// Printed decimal digits.
    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    /// Guard digits beyond the printed target.
    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Euler-product truncation point `M`.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Tolerance at which adaptive tails stop: `10^-(target + guard/2)`.
    pub fn tail_tol(&self) -> &Float {
        &self.tail_tol
    }

    /// A fresh Float at working precision.
    pub fn float<T>(&self, x: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.prec, x)
    }

    /// `n^e` at working precision (integer exponent of an integer base).
    pub fn pow_i(&self, n: u64, e: i64) -> Float {
        crate::complex::float_pow_u(n, e, self.prec)
    }

    /// All primes up to the cutoff, computed once.
    pub fn primes(&self) -> Arc<Vec<u32>> {
        self.caches
            .primes
            .get_or_init(|| Arc::new(sieve_primes(self.cutoff)))
            .clone()
    }

    /// Class power sums at exponent `u >= 1` for all moduli up to
    /// [`MAX_MODULUS`], computed in one pass over the cached primes.
    /// (`u = 1` is a finite truncated sum, needed by the prime L-series
    /// of non-principal characters at `s = 1`.)
    ///
    /// The pass stops once `p^-u` drops below `tail_tol * 10^-6`; the
    /// discarded remainder is bounded by the prime count times that
    /// threshold, far below the guard margin.
    pub fn class_sums(&self, u: u32) -> Result<Arc<ClassSums>> {
        assert!(u >= 1, "class power sums need exponent >= 1, got {u}");
        cached(&self.caches.class_sums, u, || {
            let primes = self.primes();
            let mut per_m: Vec<Vec<Float>> = (1..=MAX_MODULUS)
                .map(|m| vec![Float::new(self.prec); m as usize])
                .collect();
            let break_below = self.tail_tol.clone() / 1_000_000u32;
            for &p in primes.iter() {
                let q = self.pow_i(p as u64, -(u as i64));
                if q < break_below {
                    break;
                }
                for m in 1..=MAX_MODULUS {
                    per_m[m as usize - 1][(p % m) as usize] += &q;
                }
            }
            Ok(Arc::new(ClassSums { per_m }))
        })
    }

    pub(crate) fn cached_hurwitz(
        &self,
        key: CKey,
        f: impl FnOnce() -> Result<Float>,
    ) -> Result<Float> {
        cached(&self.caches.hurwitz, key, f)
    }

    pub(crate) fn cached_hurwitz_ds(
        &self,
        key: CKey,
        f: impl FnOnce() -> Result<Float>,
    ) -> Result<Float> {
        cached(&self.caches.hurwitz_ds, key, f)
    }

    pub(crate) fn cached_digamma(
        &self,
        key: (u32, u32),
        f: impl FnOnce() -> Result<Float>,
    ) -> Result<Float> {
        cached(&self.caches.digamma, key, f)
    }

    pub(crate) fn cached_l_value(
        &self,
        key: CKey,
        f: impl FnOnce() -> Result<BigComplex>,
    ) -> Result<BigComplex> {
        cached(&self.caches.l_values, key, f)
    }

    pub(crate) fn cached_log_l_inc(
        &self,
        key: CKey,
        f: impl FnOnce() -> Result<BigComplex>,
    ) -> Result<BigComplex> {
        cached(&self.caches.log_l_inc, key, f)
    }

    pub(crate) fn cached_prime_l(
        &self,
        key: CKey,
        f: impl FnOnce() -> Result<BigComplex>,
    ) -> Result<BigComplex> {
        cached(&self.caches.prime_l, key, f)
    }

    pub(crate) fn cached_p_inc(
        &self,
        key: CKey,
        f: impl FnOnce() -> Result<Float>,
    ) -> Result<Float> {
        cached(&self.caches.p_inc, key, f)
    }

    pub(crate) fn cached_constant(
        &self,
        key: (u8, u32, u32, u32),
        f: impl FnOnce() -> Result<Float>,
    ) -> Result<Float> {
        cached(&self.caches.constants, key, f)
    }
}

/// Get-or-compute with the lock released during computation.  A racing
/// thread may recompute the same entry; both results are bit-identical, so
/// whichever insert wins is immaterial.
fn cached<K, V>(map: &Mutex<HashMap<K, V>>, key: K, f: impl FnOnce() -> Result<V>) -> Result<V>
where
    K: Eq + Hash + Clone,
    V: Clone,
{
    if let Some(v) = map.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = f()?;
    map.lock().unwrap().insert(key, v.clone());
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_scales_with_digits() {
        let ctx = PrecisionContext::standard();
        assert_eq!(ctx.target_digits(), 50);
        assert!(ctx.prec() >= 216, "50+15 digits needs >= 216 bits");
        let hi = PrecisionContext::new(100, DEFAULT_CUTOFF).unwrap();
        assert!(hi.prec() > ctx.prec());
    }

    #[test]
    fn constructor_rejects_bad_parameters() {
        assert!(matches!(
            PrecisionContext::new(50, 10),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            PrecisionContext::with_guard(50, 3, DEFAULT_CUTOFF),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn tail_tolerance_splits_the_guard() {
        let ctx = PrecisionContext::standard();
        let t = ctx.tail_tol().to_f64().log10();
        assert!((t - (-57.5)).abs() < 1e-9);
    }

    #[test]
    fn class_sums_cover_all_primes() {
        let ctx = PrecisionContext::new(30, 1000).unwrap();
        let sums = ctx.class_sums(2).unwrap();
        // sum over the residue classes mod m of p^-2 equals the total
        for m in 1..=MAX_MODULUS {
            let mut acc = Float::new(ctx.prec());
            for v in sums.sums_for(m) {
                acc += v;
            }
            let diff = (acc - sums.total()).abs();
            assert!(diff < ctx.float(1e-35), "m={m}");
        }
        // prime zeta(2) over p <= 1000 by hand
        let mut direct = Float::new(ctx.prec());
        for &p in ctx.primes().iter() {
            direct += ctx.pow_i(p as u64, -2);
        }
        assert!((direct - sums.total()).clone().abs() < ctx.float(1e-40));
    }
}
