//! Prime sums: the Dirichlet prime L-series `S(s, chi)`, the prime zeta
//! modulo function `P_{m,n}(s)`, and the classic prime zeta `P(s)`.
//!
//! # Moebius inversion over a truncated Euler product
//!
//! Taking logs of `L(M, s, chi) = prod_{p > M} (1 - chi(p) p^-s)^-1` and
//! inverting the resulting sum over prime powers gives
//!
//! ```text
//! sum_{p > M} chi(p) p^-s = sum_{t >= 1} mu(t)/t * log L(M, s t, chi^t),
//! ```
//!
//! where `chi^t` is again a character of the same modulus.  The `t`-sum
//! truncates as soon as the crude tail bound `2 M^(1-st) / (st-1)` drops
//! below the tail tolerance; with the default cutoff `M = 10^5` that
//! happens near `st ~ 13`.  The primes `p <= M` are summed directly from
//! cached per-residue-class power sums, so
//!
//! ```text
//! S(s, chi) = sum_{classes n} chi(n) T_{m,n}(s) + (tail above).
//! ```
//!
//! # Branch safety
//!
//! The inversion needs the *analytic* logarithm of each truncated
//! product, i.e. the branch that vanishes as `M -> infinity`.  Each log
//! here is assembled from a series that converges to that branch, the
//! imaginary part is reduced to `(-pi, pi]`, and the final value is
//! certified by checking `|L(M, st, chi^t) - 1| < 1/2`; failure reports
//! [`Error::BranchRisk`] instead of risking an off-by-`2 pi i` result.

use rug::Float;

use crate::characters::{character_table, CharValue, Character, CharacterTable};
use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::lseries::{l_incomplete, l_value};
use crate::precision::{PrecisionContext, MAX_MODULUS};
use crate::specfun::mobius;

/// True once the crude bound `2 M^(1-u) / (u-1)` on `sum_{p>M} p^-u`
/// falls below the tail tolerance (safe in f64 logs: all magnitudes are
/// far from overflow).
pub(crate) fn tail_negligible(m_cut: u32, u: u32, ctx: &PrecisionContext) -> bool {
    if u < 2 {
        return false;
    }
    let ln_tol = -(ctx.target_digits() as f64 + ctx.guard_digits() as f64 / 2.0)
        * std::f64::consts::LN_10;
    let bound = (1.0 - u as f64) * (m_cut as f64).ln() + std::f64::consts::LN_2
        - ((u - 1) as f64).ln();
    bound < ln_tol
}

/// Principal-branch log of the truncated product at the context cutoff,
/// via the cached class power sums:
///
/// ```text
/// log L(M, v, chi) = log L(v, chi)
///                  - sum_{k >= 1} (1/k) sum_n chi^k(n) T_{m,n}(k v)
/// ```
///
/// (the double sum is `log prod_{p <= M} (1 - chi(p) p^-v)`), with the
/// imaginary part reduced to the principal range afterwards.  Memoized
/// per `(m, r, v)`.
fn log_l_incomplete_cutoff(
    table: &CharacterTable,
    r: u32,
    v: u32,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    let m = table.modulus();
    ctx.cached_log_l_inc((m, r, v), || {
        let chi = table.get(r)?;
        let mut w = l_value(chi, v, ctx)?.ln();

        let d = chi.denom();
        let mut k = 1u32;
        loop {
            let u = k * v;
            let sums = ctx.class_sums(u)?;
            let mut inner = BigComplex::zero(ctx.prec());
            for n in 1..=m {
                match chi.value(n as u64).pow(k, d) {
                    CharValue::Zero => {}
                    CharValue::Root(e) => {
                        let root = BigComplex::root_of_unity(e, d, ctx.prec());
                        inner.add_assign(&root.mul_real(sums.class(m, n)));
                    }
                }
            }
            let scale = -ctx.float(k).recip();
            w.add_assign(&inner.mul_real(&scale));
            if *sums.total() < *ctx.tail_tol() {
                break;
            }
            k += 1;
            if k * v > 1000 {
                return Err(Error::PrecisionUnreachable(
                    "Euler factor log series failed to converge".into(),
                ));
            }
        }

        // wind the imaginary part into (-pi, pi]
        let pi = Float::with_val(ctx.prec(), rug::float::Constant::Pi);
        let two_pi = pi.clone() * 2u32;
        let turns = (w.im.clone() / &two_pi).round();
        if !turns.is_zero() {
            w.im -= turns * &two_pi;
        }
        certify_near_one(&w, m_label(m, r, v), ctx)?;
        Ok(w)
    })
}

fn m_label(m: u32, r: u32, v: u32) -> String {
    format!("L(M, {v}, chi_{r} mod {m})")
}

/// Certifies `|exp(w) - 1| < 1/2`, the region where the principal log is
/// safely the analytic one.
fn certify_near_one(w: &BigComplex, what: String, ctx: &PrecisionContext) -> Result<()> {
    let value = w.exp();
    let dist = value.sub(&BigComplex::from_real(ctx.float(1u32))).abs();
    if dist >= 0.5 {
        return Err(Error::BranchRisk(format!(
            "{what} is {:.3e} away from 1; raise the cutoff",
            dist.to_f64()
        )));
    }
    Ok(())
}

/// Principal-branch log of `L(m_cut, v, chi)` for an arbitrary cutoff,
/// by direct evaluation of the truncated product (uncached).
fn log_l_incomplete_generic(
    m_cut: u32,
    chi: &Character,
    v: u32,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    let value = l_incomplete(m_cut, chi, v, ctx)?;
    let dist = value.sub(&BigComplex::from_real(ctx.float(1u32))).abs();
    if dist >= 0.5 {
        return Err(Error::BranchRisk(format!(
            "{} is {:.3e} away from 1; raise the cutoff",
            m_label(chi.modulus(), chi.index(), v),
            dist.to_f64()
        )));
    }
    Ok(value.ln())
}

/// The Dirichlet prime L-series `S(s, chi) = sum_p chi(p) p^-s`.
///
/// Needs `s >= 2` for the principal character (the prime harmonic series
/// diverges) and `s >= 1` otherwise.  Memoized per `(m, r, s)`.
pub fn prime_l_series(chi: &Character, s: u32, ctx: &PrecisionContext) -> Result<BigComplex> {
    let m = chi.modulus();
    if m > MAX_MODULUS {
        return Err(Error::InvalidArgument(format!(
            "prime sums support moduli up to {MAX_MODULUS}, got {m}"
        )));
    }
    if s == 0 || (s == 1 && chi.is_principal()) {
        return Err(Error::Pole(format!(
            "S({s}, chi_{} mod {m}) diverges",
            chi.index()
        )));
    }
    ctx.cached_prime_l((m, chi.index(), s), || {
        let table = character_table(m)?;
        // direct part over p <= M from the class power sums
        let sums = ctx.class_sums(s)?;
        let mut acc = BigComplex::zero(ctx.prec());
        for n in 1..=m {
            if chi.value(n as u64) != CharValue::Zero {
                acc.add_assign(&chi.to_complex(n as u64, ctx).mul_real(sums.class(m, n)));
            }
        }
        // Moebius-inverted tail over p > M
        acc.add_assign(&prime_l_tail_cutoff(&table, chi.index(), s, ctx)?);
        Ok(acc)
    })
}

/// `sum_{p > M} chi(p) p^-s` at the context cutoff.
fn prime_l_tail_cutoff(
    table: &CharacterTable,
    r: u32,
    s: u32,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    let mut acc = BigComplex::zero(ctx.prec());
    let mut t = 1u32;
    loop {
        if t > 1 && tail_negligible(ctx.cutoff(), s * t, ctx) {
            break;
        }
        let mu = mobius(t as u64);
        if mu != 0 {
            let rt = table.power_index(r, t)?;
            let w = log_l_incomplete_cutoff(table, rt, s * t, ctx)?;
            let scale = ctx.float(mu) / t;
            acc.add_assign(&w.mul_real(&scale));
        }
        t += 1;
        if t > 500 {
            return Err(Error::PrecisionUnreachable(
                "Moebius inversion failed to truncate".into(),
            ));
        }
    }
    Ok(acc)
}

/// The incomplete prime L-series `S(M, s, chi) = sum_{p > M} chi(p) p^-s`
/// for an arbitrary truncation point `M >= 2`.
pub fn prime_l_incomplete(
    m_cut: u32,
    chi: &Character,
    s: u32,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    let m = chi.modulus();
    if m > MAX_MODULUS {
        return Err(Error::InvalidArgument(format!(
            "prime sums support moduli up to {MAX_MODULUS}, got {m}"
        )));
    }
    if s == 0 || (s == 1 && chi.is_principal()) {
        return Err(Error::Pole(format!(
            "S(M, {s}, chi_{} mod {m}) diverges",
            chi.index()
        )));
    }
    let table = character_table(m)?;
    if m_cut == ctx.cutoff() {
        return prime_l_tail_cutoff(&table, chi.index(), s, ctx);
    }
    if m_cut < 2 {
        return Err(Error::InvalidArgument("cutoff must be at least 2".into()));
    }
    let mut acc = BigComplex::zero(ctx.prec());
    let mut t = 1u32;
    loop {
        if t > 1 && tail_negligible(m_cut, s * t, ctx) {
            break;
        }
        let mu = mobius(t as u64);
        if mu != 0 {
            let rt = table.power_index(chi.index(), t)?;
            let w = log_l_incomplete_generic(m_cut, table.get(rt)?, s * t, ctx)?;
            let scale = ctx.float(mu) / t;
            acc.add_assign(&w.mul_real(&scale));
        }
        t += 1;
        if t > 2000 {
            return Err(Error::PrecisionUnreachable(
                "Moebius inversion failed to truncate".into(),
            ));
        }
    }
    Ok(acc)
}

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

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Shared final step of the `P` evaluators: average the rotated prime
/// L-series over all characters and certify the imaginary residue.
fn char_average(
    series: &[BigComplex],
    table: &CharacterTable,
    n: u32,
    what: &str,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let mut acc = BigComplex::zero(ctx.prec());
    for (chi, s_val) in table.chars().iter().zip(series) {
        match chi.value(n as u64) {
            CharValue::Zero => unreachable!("caller filters non-coprime classes"),
            CharValue::Root(k) => {
                // conj(chi(n)) rotates the series
                let rot = BigComplex::root_of_unity((chi.denom() - k) % chi.denom(), chi.denom(), ctx.prec());
                acc.add_assign(&s_val.mul(&rot));
            }
        }
    }
    let phi = table.phi();
    let re = acc.re.clone() / phi;
    let im = (acc.im.clone() / phi).abs();
    // conjugate pairs cancel the imaginary parts; what survives is
    // rounding noise, certified three digits under the printed target
    let threshold = ctx.float(-(ctx.target_digits() as f64 - 3.0)).exp10();
    if im >= threshold {
        return Err(Error::ImaginaryResidue(
            format!("{:.3e}", im.to_f64()),
            format!("{:.3e} in {what}", threshold.to_f64()),
        ));
    }
    Ok(re)
}

/// The prime zeta modulo function
/// `P_{m,n}(s) = sum over p = n (mod m) of p^-s`, for `s >= 2`.
///
/// Coprime classes are recovered from the prime L-series by the
/// orthogonality relations; a class sharing a factor with the modulus
/// contains at most the single prime `n` itself.
pub fn p_mod(m: u32, n: u32, s: u32, ctx: &PrecisionContext) -> Result<Float> {
    validate_class(m, n)?;
    if s < 2 {
        return Err(Error::Pole(format!(
            "P_{{{m},{n}}}({s}) diverges (Dirichlet)")));
    }
    if gcd(n, m) != 1 {
        // trench class: only the prime n itself (if prime) survives
        return Ok(if crate::primes::sieve_primes(n).last() == Some(&n) {
            ctx.pow_i(n as u64, -(s as i64))
        } else {
            Float::new(ctx.prec())
        });
    }
    let table = character_table(m)?;
    let mut series = Vec::with_capacity(table.phi() as usize);
    for chi in table.chars() {
        series.push(prime_l_series(chi, s, ctx)?);
    }
    char_average(&series, &table, n, &format!("P_{{{m},{n}}}({s})"), ctx)
}

/// The incomplete prime zeta modulo function
/// `P_{m,n}(M, s) = sum over p = n (mod m), p > M of p^-s`.
pub fn p_mod_incomplete(
    m: u32,
    n: u32,
    m_cut: u32,
    s: u32,
    ctx: &PrecisionContext,
) -> Result<Float> {
    validate_class(m, n)?;
    if s < 1 {
        return Err(Error::InvalidArgument("exponent must be at least 1".into()));
    }
    if gcd(n, m) != 1 {
        return Ok(
            if n > m_cut && crate::primes::sieve_primes(n).last() == Some(&n) {
                ctx.pow_i(n as u64, -(s as i64))
            } else {
                Float::new(ctx.prec())
            },
        );
    }
    if m_cut == ctx.cutoff() {
        return p_mod_incomplete_cutoff(m, n, s, ctx);
    }
    let table = character_table(m)?;
    let mut series = Vec::with_capacity(table.phi() as usize);
    for chi in table.chars() {
        series.push(prime_l_incomplete(m_cut, chi, s, ctx)?);
    }
    char_average(
        &series,
        &table,
        n,
        &format!("P_{{{m},{n}}}({m_cut}, {s})"),
        ctx,
    )
}

/// Memoized fast path for `P_{m,n}(M, v)` at the context cutoff; this is
/// the quantity every constant's tail series consumes.
pub(crate) fn p_mod_incomplete_cutoff(
    m: u32,
    n: u32,
    v: u32,
    ctx: &PrecisionContext,
) -> Result<Float> {
    validate_class(m, n)?;
    debug_assert_eq!(gcd(n, m), 1);
    ctx.cached_p_inc((m, n, v), || {
        let table = character_table(m)?;
        let mut series = Vec::with_capacity(table.phi() as usize);
        for chi in table.chars() {
            series.push(prime_l_tail_cutoff(&table, chi.index(), v, ctx)?);
        }
        char_average(&series, &table, n, &format!("P_{{{m},{n}}}(M, {v})"), ctx)
    })
}

/// The prime zeta function `P(s) = sum_p p^-s` for integer `s >= 2`,
/// assembled from the odd primes (the prime L-series modulo 2) plus the
/// lone even prime.
pub fn prime_zeta(s: u32, ctx: &PrecisionContext) -> Result<Float> {
    if s < 2 {
        return Err(Error::Pole(format!("P({s}) diverges")));
    }
    let table = character_table(2)?;
    let odd = prime_l_series(table.get(1)?, s, ctx)?;
    debug_assert!(odd.im.is_zero());
    Ok(odd.re + ctx.pow_i(2, -(s as i64)))
}
