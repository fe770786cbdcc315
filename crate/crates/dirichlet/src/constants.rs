//! Constant families over residue classes: slowly convergent prime
//! products accelerated through the incomplete prime zeta modulo values.
//!
//! Each family is a product `prod_{p = n (mod m)} f_s(p)` of local factors
//! drawn from a classical density constant, generalized to exponent `s`
//! and restricted to one residue class:
//!
//! | family          | local factor `f_s(p)`        | tail expansion                        |
//! |-----------------|------------------------------|---------------------------------------|
//! | Artin           | `1 - 1/(p^s (p-1))`          | `-sum_{t>s} w_t P_{m,n}(M, t)`        |
//! | quadratic       | `1 - 1/(p^s (p+1))`          | same, alternating-sign weights        |
//! | Feller-Tornier  | `1 - 2 p^-s`                 | `-sum_t (2^t/t) P_{m,n}(M, s t)`      |
//! | Hardy-Littlewood| `p^(s-1)(p-s) / (p-1)^s`     | `-sum_{t>=2} ((s^t-s)/t) P_{m,n}(M, t)` |
//!
//! with the Hardy-Littlewood product restricted to `p > s` (the factor
//! would vanish or go negative otherwise).  In every case the product over
//! the primes up to the cutoff `M` is taken literally, factor by exact
//! rational factor, and the remaining tail `p > M` is the exponential of a
//! binomial-weighted combination of incomplete prime zeta modulo values:
//! expanding `log f_s(p)` in powers of `1/p` and summing over `p > M`
//! turns each power `p^-t` into `P_{m,n}(M, t)`.  The weights are exact
//! rationals; the `t`-series gains a factor `~1/M` per term, so a dozen
//! terms reach 50 digits where the raw product would need astronomically
//! many primes.
//!
//! The `*` row of a printed table is the product of the family over *all*
//! classes of the modulus, which telescopes to the unrestricted constant
//! over every prime; trench classes (those sharing a factor with `m`)
//! contribute the lone factor of their single prime, if they contain one.
//! That product is independent of `m`, a stated acceptance check.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, MAX_MODULUS};
use crate::primezeta::p_mod_incomplete;
use crate::specfun::binomial;

/// The four supported constant families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantFamily {
    /// `1 - 1/(p^s (p-1))`: the Artin density family (`s >= 1`).
    Artin,
    /// `1 - 1/(p^s (p+1))`: the quadratic-class density family (`s >= 1`).
    Quadratic,
    /// `1 - 2 p^-s`: the Feller-Tornier family (`s >= 2`).
    FellerTornier,
    /// `p^(s-1)(p-s)/(p-1)^s` over `p > s`: the Hardy-Littlewood family
    /// (`s >= 2`; `s = 2` gives the twin prime constant).
    HardyLittlewood,
}

impl ConstantFamily {
    fn id(self) -> u8 {
        match self {
            ConstantFamily::Artin => 0,
            ConstantFamily::Quadratic => 1,
            ConstantFamily::FellerTornier => 2,
            ConstantFamily::HardyLittlewood => 3,
        }
    }

    /// Smallest exponent for which the product converges and no local
    /// factor degenerates.
    pub fn min_s(self) -> u32 {
        match self {
            ConstantFamily::Artin | ConstantFamily::Quadratic => 1,
            ConstantFamily::FellerTornier | ConstantFamily::HardyLittlewood => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ConstantFamily::Artin => "Artin",
            ConstantFamily::Quadratic => "quadratic class",
            ConstantFamily::FellerTornier => "Feller-Tornier",
            ConstantFamily::HardyLittlewood => "Hardy-Littlewood",
        }
    }

    /// The exact local factor at `p`, or `None` when `p` is excluded from
    /// the product (Hardy-Littlewood at `p <= s`).
    fn local_factor(self, p: u64, s: u32) -> Option<Rational> {
        match self {
            ConstantFamily::Artin => {
                let den = Integer::from(p).pow(s) * Integer::from(p - 1);
                Some(Rational::from((den.clone() - 1u32, den)))
            }
            ConstantFamily::Quadratic => {
                let den = Integer::from(p).pow(s) * Integer::from(p + 1);
                Some(Rational::from((den.clone() - 1u32, den)))
            }
            ConstantFamily::FellerTornier => {
                let den = Integer::from(p).pow(s);
                Some(Rational::from((den.clone() - 2u32, den)))
            }
            ConstantFamily::HardyLittlewood => {
                if p <= s as u64 {
                    return None;
                }
                let num = Integer::from(p).pow(s - 1) * Integer::from(p - s as u64);
                let den = Integer::from(p - 1).pow(s);
                Some(Rational::from((num, den)))
            }
        }
    }
}

/// Binomial tail weight of the Artin family:
/// `w(t) = sum_{j=1}^{floor(t/(s+1))} (1/j) C(t - s j - 1, j - 1)`.
fn weight_artin(t: u32, s: u32) -> Rational {
    let mut acc = Rational::new();
    let mut j = 1u32;
    while j * (s + 1) <= t {
        let c = binomial((t - s * j - 1) as u64, (j - 1) as u64);
        acc += Rational::from((c, Integer::from(j)));
        j += 1;
    }
    acc
}

/// Same with the alternating sign `(-1)^(t - (s+1) j)` (the `p + 1` in
/// the quadratic factor flips the geometric expansion's sign).
fn weight_quadratic(t: u32, s: u32) -> Rational {
    let mut acc = Rational::new();
    let mut j = 1u32;
    while j * (s + 1) <= t {
        let c = binomial((t - s * j - 1) as u64, (j - 1) as u64);
        let term = Rational::from((c, Integer::from(j)));
        if (t - (s + 1) * j).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        j += 1;
    }
    acc
}

/// True once `exp(ln_weight) * 2 M^(1-u) / (u-1)`, a bound on the sum of
/// all remaining tail terms (they decay by `~1/M` each), is below the
/// tail tolerance.
fn weighted_tail_negligible(ln_weight: f64, u: u32, m_cut: u32, ctx: &PrecisionContext) -> bool {
    if u < 2 {
        return false;
    }
    let ln_tol = -(ctx.target_digits() as f64 + ctx.guard_digits() as f64 / 2.0)
        * std::f64::consts::LN_10;
    ln_weight + (1.0 - u as f64) * (m_cut as f64).ln() + std::f64::consts::LN_2
        - ((u - 1) as f64).ln()
        < ln_tol
}

/// `log prod_{p > M, p = n (mod m)} f_s(p)` through the incomplete prime
/// zeta modulo values.  Only called for coprime classes; trench classes
/// have no primes beyond the cutoff.
fn family_log_tail(
    family: ConstantFamily,
    m: u32,
    n: u32,
    s: u32,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let m_cut = ctx.cutoff();
    let mut acc = Float::new(ctx.prec());
    match family {
        ConstantFamily::Artin | ConstantFamily::Quadratic => {
            let mut t = s + 1;
            loop {
                // w(t) <= 2^t, crudely
                if weighted_tail_negligible(t as f64 * std::f64::consts::LN_2, t, m_cut, ctx) {
                    break;
                }
                let w = if family == ConstantFamily::Artin {
                    weight_artin(t, s)
                } else {
                    weight_quadratic(t, s)
                };
                if w.cmp0() != std::cmp::Ordering::Equal {
                    acc -= ctx.float(&w) * p_mod_incomplete(m, n, m_cut, t, ctx)?;
                }
                t += 1;
                if t > s + 500 {
                    return Err(Error::PrecisionUnreachable(
                        "constant tail failed to truncate".into(),
                    ));
                }
            }
        }
        ConstantFamily::FellerTornier => {
            let mut t = 1u32;
            loop {
                if weighted_tail_negligible(t as f64 * std::f64::consts::LN_2, s * t, m_cut, ctx) {
                    break;
                }
                let w = Rational::from((Integer::from(1) << t, Integer::from(t)));
                acc -= ctx.float(&w) * p_mod_incomplete(m, n, m_cut, s * t, ctx)?;
                t += 1;
                if t > 500 {
                    return Err(Error::PrecisionUnreachable(
                        "constant tail failed to truncate".into(),
                    ));
                }
            }
        }
        ConstantFamily::HardyLittlewood => {
            let mut t = 2u32;
            loop {
                // (s^t - s)/t < s^t
                if weighted_tail_negligible(t as f64 * (s as f64).ln(), t, m_cut, ctx) {
                    break;
                }
                let w = Rational::from((Integer::from(s).pow(t) - s, Integer::from(t)));
                acc -= ctx.float(&w) * p_mod_incomplete(m, n, m_cut, t, ctx)?;
                t += 1;
                if t > 500 {
                    return Err(Error::PrecisionUnreachable(
                        "constant tail failed to truncate".into(),
                    ));
                }
            }
        }
    }
    Ok(acc)
}

fn validate(family: ConstantFamily, m: u32, n: u32, s: u32, ctx: &PrecisionContext) -> Result<()> {
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
    if s < family.min_s() {
        return Err(Error::InvalidArgument(format!(
            "{} family needs s >= {}, got {s}",
            family.label(),
            family.min_s()
        )));
    }
    if s as u64 * 2 >= ctx.cutoff() as u64 {
        return Err(Error::InvalidArgument(format!(
            "exponent {s} too large for cutoff {}",
            ctx.cutoff()
        )));
    }
    Ok(())
}

/// One cell of a constant-family table: the class-restricted product.
pub fn constant_value(
    family: ConstantFamily,
    m: u32,
    n: u32,
    s: u32,
    ctx: &PrecisionContext,
) -> Result<Float> {
    validate(family, m, n, s, ctx)?;
    ctx.cached_constant((family.id(), m, n, s), || {
        let primes = ctx.primes();
        let mut value = ctx.float(1u32);
        for &p in primes.iter().filter(|&&p| p % m == n % m) {
            if let Some(f) = family.local_factor(p as u64, s) {
                value *= ctx.float(&f);
            }
        }
        if crate::specfun::gcd(n as u64, m as u64) == 1 {
            value *= family_log_tail(family, m, n, s, ctx)?.exp();
        }
        Ok(value)
    })
}

/// Artin family cell `A_{m,n}(s)`, `s >= 1`.
pub fn artin(m: u32, n: u32, s: u32, ctx: &PrecisionContext) -> Result<Float> {
    constant_value(ConstantFamily::Artin, m, n, s, ctx)
}

/// Quadratic-class family cell `Q_{m,n}(s)`, `s >= 1`.
pub fn quadratic_class(m: u32, n: u32, s: u32, ctx: &PrecisionContext) -> Result<Float> {
    constant_value(ConstantFamily::Quadratic, m, n, s, ctx)
}

/// Feller-Tornier family cell `F_{m,n}(s)`, `s >= 2`.
pub fn feller_tornier(m: u32, n: u32, s: u32, ctx: &PrecisionContext) -> Result<Float> {
    constant_value(ConstantFamily::FellerTornier, m, n, s, ctx)
}

/// Hardy-Littlewood family cell `C_{m,n}(s)`, `s >= 2`.
pub fn hardy_littlewood(m: u32, n: u32, s: u32, ctx: &PrecisionContext) -> Result<Float> {
    constant_value(ConstantFamily::HardyLittlewood, m, n, s, ctx)
}

/// The `*` row: the product of the family over every residue class of
/// `m`, i.e. over all primes.  Independent of the modulus.
pub fn star_row(family: ConstantFamily, m: u32, s: u32, ctx: &PrecisionContext) -> Result<Float> {
    let mut prod = ctx.float(1u32);
    for n in 1..=m {
        prod *= constant_value(family, m, n, s, ctx)?;
    }
    Ok(prod)
}
