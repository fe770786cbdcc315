//! High-precision Dirichlet characters, L-series, prime zeta modulo
//! functions, residue-class Euler products, and the constant families
//! built on them.
//!
//! Everything here evaluates number-theoretic series attached to residue
//! classes modulo small `m` (up to [`MAX_MODULUS`]) to a configurable
//! decimal precision, 50 digits by default.  The same backbone serves all
//! of it:
//!
//! * [`characters`]: exact character tables — every value a root of unity
//!   stored as an integer exponent, so character algebra never rounds;
//! * [`lseries`]: `L(s, chi)` and its `s`-derivative, through the Hurwitz
//!   zeta function ([`specfun`]) at integer `s >= 2` and through digamma
//!   or a tail-accelerated direct sum at `s = 1`;
//! * [`primezeta`]: sums over primes — `S(s, chi) = sum_p chi(p) p^-s`
//!   and the prime zeta modulo function `P_{m,n}(s)` — by Moebius
//!   inversion of logarithms of Euler products truncated at a cutoff `M`;
//! * [`eulerprod`]: the class-restricted Euler products `zeta_{m,n}(s)`;
//! * [`constants`]: Artin, quadratic-class, Feller-Tornier, and
//!   Hardy-Littlewood constant families over residue classes.
//!
//! A [`PrecisionContext`] carries the working precision, the cutoff, the
//! stopping tolerance, and every memoization table; evaluations with the
//! same context share Hurwitz values, class power sums, and Euler-factor
//! logarithms, which is what keeps whole-table generation cheap.
//!
//! ```
//! use dirichlet::{character_table, l_value, PrecisionContext};
//!
//! let ctx = PrecisionContext::standard();
//! let table = character_table(4).unwrap();
//! let chi = table.get(2).unwrap(); // the non-principal character mod 4
//! let l1 = l_value(chi, 1, &ctx).unwrap(); // = pi/4
//! assert!((l1.re.to_f64() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
//! ```

pub mod characters;
pub mod complex;
pub mod constants;
pub mod error;
pub mod eulerprod;
pub mod lseries;
pub mod precision;
pub mod primes;
pub mod primezeta;
pub mod specfun;

pub use characters::{character_table, CharValue, Character, CharacterTable};
pub use complex::{to_fixed_decimal, BigComplex};
pub use constants::{
    artin, constant_value, feller_tornier, hardy_littlewood, quadratic_class, star_row,
    ConstantFamily,
};
pub use error::{Error, Result};
pub use eulerprod::{zeta_mod, zeta_mod_incomplete};
pub use lseries::{
    l_deriv, l_deriv_at_1, l_deriv_real, l_incomplete, l_value, l_value_real, tail_coefficients,
    TailCoefficients,
};
pub use precision::{
    PrecisionContext, DEFAULT_CUTOFF, DEFAULT_GUARD_DIGITS, DEFAULT_TARGET_DIGITS, MAX_MODULUS,
};
pub use primes::{primes_in_class, primes_up_to};
pub use primezeta::{p_mod, p_mod_incomplete, prime_l_incomplete, prime_l_series, prime_zeta};
pub use specfun::{digamma, hurwitz_zeta, hurwitz_zeta_ds, riemann_zeta, riemann_zeta_ds};
