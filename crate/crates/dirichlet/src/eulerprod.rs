//! Euler products restricted to a residue class:
//! `zeta_{m,n}(s) = prod over p = n (mod m) of (1 - p^-s)^-1`.
//!
//! The log of the product splits at the cutoff `M`:
//!
//! ```text
//! log zeta_{m,n}(s) = sum_{k >= 1} T_{m,n}(k s) / k          (p <= M)
//!                   + sum_{t >= 1} P_{m,n}(M, t s) / t       (p > M)
//! ```
//!
//! where `T_{m,n}(u)` is the cached power sum over class primes up to `M`
//! and `P_{m,n}(M, u)` the incomplete prime zeta modulo value.  Both
//! expansions are `sum -log(1 - p^-s)` rearranged by prime powers; all
//! terms are real and positive-definite convergent for `s >= 2`, so there
//! is no branch bookkeeping here.
//!
//! Multiplying the products of every class of a modulus together restores
//! the ordinary Euler product: `prod_{n=1..m} zeta_{m,n}(s) = zeta(s)`,
//! which is the cross-check the test suite and the acceptance criteria
//! lean on.

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, MAX_MODULUS};
use crate::primezeta::{p_mod_incomplete, tail_negligible};

fn validate_class(m: u32, n: u32) -> Result<()> {
    if !(2..=MAX_MODULUS).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "modulus {m} outside 2..={MAX_MODULUS}"
        )));
    }
    if n < 1 || n > m {
        return Err(Error::InvalidArgument(format!(
            "residue class {n} outside 1..={m}"
        )));
    }
    Ok(())
}

/// The Euler product over primes in one residue class, `s >= 2`.
///
/// An empty class (like 4 mod 8) gives the empty product, 1; a class
/// containing a single prime dividing the modulus gives its lone Euler
/// factor, e.g. `zeta_{2,2}(s) = (1 - 2^-s)^-1`.
pub fn zeta_mod(m: u32, n: u32, s: u32, ctx: &PrecisionContext) -> Result<Float> {
    validate_class(m, n)?;
    if s < 2 {
        return Err(Error::Pole(format!(
            "zeta_{{{m},{n}}}({s}) diverges for s <= 1"
        )));
    }
    let mut log_acc = Float::new(ctx.prec());
    // primes <= M, expanded by prime powers
    let mut k = 1u32;
    loop {
        let sums = ctx.class_sums(k * s)?;
        log_acc += sums.class(m, n).clone() / k;
        if *sums.total() < *ctx.tail_tol() {
            break;
        }
        k += 1;
        if k * s > 1000 {
            return Err(Error::PrecisionUnreachable(
                "Euler product log series failed to converge".into(),
            ));
        }
    }
    // primes > M, via the incomplete prime zeta modulo values
    let mut t = 1u32;
    loop {
        if t > 1 && tail_negligible(ctx.cutoff(), t * s, ctx) {
            break;
        }
        log_acc += p_mod_incomplete(m, n, ctx.cutoff(), t * s, ctx)? / t;
        t += 1;
        if t > 500 {
            return Err(Error::PrecisionUnreachable(
                "Euler product tail failed to truncate".into(),
            ));
        }
    }
    Ok(log_acc.exp())
}

/// The incomplete variant: the same product restricted to `p > m_cut`,
/// i.e. `zeta_{m,n}(s)` with every Euler factor at `p <= m_cut` removed.
pub fn zeta_mod_incomplete(
    m: u32,
    n: u32,
    m_cut: u32,
    s: u32,
    ctx: &PrecisionContext,
) -> Result<Float> {
    validate_class(m, n)?;
    if s < 2 {
        return Err(Error::Pole(format!(
            "zeta_{{{m},{n}}}({m_cut}, {s}) diverges for s <= 1"
        )));
    }
    let mut log_acc = Float::new(ctx.prec());
    let mut t = 1u32;
    loop {
        if t > 1 && tail_negligible(m_cut, t * s, ctx) {
            break;
        }
        log_acc += p_mod_incomplete(m, n, m_cut, t * s, ctx)? / t;
        t += 1;
        if t > 2000 {
            return Err(Error::PrecisionUnreachable(
                "Euler product tail failed to truncate".into(),
            ));
        }
    }
    Ok(log_acc.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::riemann_zeta;

    fn ctx() -> PrecisionContext {
        PrecisionContext::standard()
    }

    #[test]
    fn single_prime_class_is_one_euler_factor() {
        let c = ctx();
        for s in [2u32, 3, 7] {
            let z = zeta_mod(2, 2, s, &c).unwrap();
            let factor = (c.float(1u32) - c.pow_i(2, -(s as i64))).recip();
            assert!((z - factor).abs() < c.float(1e-55), "s={s}");
        }
        // 4 mod 8 holds no primes: empty product
        let z = zeta_mod(8, 4, 3, &c).unwrap();
        assert!((z - 1u32).abs() < c.float(1e-55));
    }

    #[test]
    fn classes_multiply_to_riemann_zeta() {
        let c = ctx();
        for (m, s) in [(3u32, 2u32), (4, 2), (6, 3), (10, 2)] {
            let mut prod = c.float(1u32);
            for n in 1..=m {
                prod *= zeta_mod(m, n, s, &c).unwrap();
            }
            let z = riemann_zeta(s, &c).unwrap();
            let diff = (prod - z).abs();
            assert!(diff < c.float(1e-52), "m={m} s={s}: {:e}", diff.to_f64());
        }
    }

    #[test]
    fn refinement_identities() {
        let c = ctx();
        for s in [2u32, 4] {
            // 1 mod 6 and 1 mod 3 are the same primes
            let lhs = zeta_mod(6, 1, s, &c).unwrap();
            let rhs = zeta_mod(3, 1, s, &c).unwrap();
            assert!((lhs - rhs).abs() < c.float(1e-52), "6,1 s={s}");
            // 9 mod 14 = {2 mod 7} minus the prime 2
            let lhs = zeta_mod(14, 9, s, &c).unwrap();
            let rhs = zeta_mod(7, 2, s, &c).unwrap()
                * (c.float(1u32) - c.pow_i(2, -(s as i64)));
            assert!((lhs - rhs).abs() < c.float(1e-52), "14,9 s={s}");
            // the pair 1, 5 mod 8 refines 1 mod 4
            let lhs = zeta_mod(8, 1, s, &c).unwrap() * zeta_mod(8, 5, s, &c).unwrap();
            let rhs = zeta_mod(4, 1, s, &c).unwrap();
            assert!((lhs - rhs).abs() < c.float(1e-52), "8 vs 4 s={s}");
        }
    }

    #[test]
    fn incomplete_product_recombines() {
        let c = ctx();
        let (m, n, s, m_cut) = (5u32, 2u32, 2u32, 97u32);
        let tail = zeta_mod_incomplete(m, n, m_cut, s, &c).unwrap();
        let mut head = c.float(1u32);
        for p in crate::primes::primes_in_class((m, n), m_cut).unwrap() {
            head *= (c.float(1u32) - c.pow_i(p as u64, -(s as i64))).recip();
        }
        let full = zeta_mod(m, n, s, &c).unwrap();
        let diff = (head * tail - full).abs();
        assert!(diff < c.float(1e-52), "{:e}", diff.to_f64());
    }

    #[test]
    fn domain_errors() {
        let c = ctx();
        assert!(matches!(zeta_mod(4, 1, 1, &c), Err(Error::Pole(_))));
        assert!(matches!(zeta_mod(23, 1, 2, &c), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            zeta_mod_incomplete(4, 1, 50, 1, &c),
            Err(Error::Pole(_))
        ));
    }
}
