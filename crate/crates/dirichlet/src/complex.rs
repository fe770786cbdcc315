//! A small arbitrary-precision complex type built on two [`rug::Float`]
//! components.
//!
//! Every value the crate tabulates is either real or a finite combination
//! of real zeta-type series with root-of-unity coefficients, so the only
//! complex operations needed are field arithmetic, conjugation, `exp`,
//! and the principal branch of `log`.  Keeping the type local (rather than
//! pulling in a full MPC binding) keeps the dependency surface to GMP and
//! MPFR, which the build already requires for the real series.

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

/// Complex number with [`Float`] real and imaginary parts.
///
/// Both parts always carry the same working precision; binary operations
/// assume the operands agree (they are all built from one
/// [`PrecisionContext`](crate::PrecisionContext)).
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    /// Zero at `prec` bits.
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    /// Builds from real and imaginary parts (must share a precision).
    pub fn new(re: Float, im: Float) -> Self {
        debug_assert_eq!(re.prec(), im.prec());
        Self { re, im }
    }

    /// Embeds a real value.
    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Self {
            re,
            im: Float::new(prec),
        }
    }

    /// The root of unity `exp(2*pi*i*k/d)` at `prec` bits.
    ///
    /// The angle is reduced exactly in the rationals before the
    /// trigonometric evaluation, so conjugate pairs come out exactly
    /// conjugate in floating point.
    pub fn root_of_unity(k: u32, d: u32, prec: u32) -> Self {
        let k = k % d;
        // Exact special cases keep character sums free of spurious
        // rounding in the common quadratic-character tables.
        if (4 * k).is_multiple_of(d) {
            let quarter = 4 * k / d;
            let (re, im) = match quarter {
                0 => (1, 0),
                1 => (0, 1),
                2 => (-1, 0),
                _ => (0, -1),
            };
            return Self {
                re: Float::with_val(prec, re),
                im: Float::with_val(prec, im),
            };
        }
        // evaluate only angles in the open upper half plane and mirror,
        // so a conjugate pair is exactly conjugate in floating point
        let (k_low, flip) = if 2 * k > d { (d - k, true) } else { (k, false) };
        let angle = Float::with_val(prec, rug::float::Constant::Pi) * 2u32 * k_low / d;
        let (sin, cos) = angle.sin_cos(Float::new(prec));
        Self {
            re: cos,
            im: if flip { -sin } else { sin },
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn norm2(&self) -> Float {
        let mut n = self.re.clone().square();
        n += self.im.clone().square();
        n
    }

    /// Modulus `|z|`.
    pub fn abs(&self) -> Float {
        self.norm2().sqrt()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            re: self.re.clone() + &rhs.re,
            im: self.im.clone() + &rhs.im,
        }
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            re: self.re.clone() - &rhs.re,
            im: self.im.clone() - &rhs.im,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re.clone() * &rhs.im + self.im.clone() * &rhs.re;
        Self { re, im }
    }

    pub fn mul_real(&self, rhs: &Float) -> Self {
        Self {
            re: self.re.clone() * rhs,
            im: self.im.clone() * rhs,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Quotient `self / rhs` via multiplication by the conjugate.
    pub fn div(&self, rhs: &Self) -> Self {
        let d = rhs.norm2();
        let num = self.mul(&rhs.conj());
        Self {
            re: num.re / &d,
            im: num.im / &d,
        }
    }

    /// Principal-branch logarithm: `log|z| + i*atan2(im, re)` with the
    /// imaginary part in `(-pi, pi]`.
    pub fn ln(&self) -> Self {
        let re = self.norm2().ln() / 2u32;
        let im = self.im.clone().atan2(&self.re);
        Self { re, im }
    }

    /// Complex exponential `e^re * (cos im + i sin im)`.
    pub fn exp(&self) -> Self {
        let r = self.re.clone().exp();
        let (sin, cos) = self.im.clone().sin_cos(Float::new(self.prec()));
        Self {
            re: cos * &r,
            im: sin * r,
        }
    }

    /// Integer power by binary exponentiation (used for small `t` in
    /// character powers of Euler factors).
    pub fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self {
            re: Float::with_val(self.prec(), 1),
            im: Float::new(self.prec()),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `|self - rhs|` as a Float, for tolerance checks.
    pub fn dist(&self, rhs: &Self) -> Float {
        self.sub(rhs).abs()
    }
}

/// Real scalar `n^e` at `prec` bits, with `n^-e` computed as an exact
/// integer power followed by one division.
pub fn float_pow_u(n: u64, e: i64, prec: u32) -> Float {
    let base = Float::with_val(prec, n);
    if e >= 0 {
        base.pow(e as u32)
    } else {
        base.pow((-e) as u32).recip()
    }
}

/// Rounds a float to `digits` decimal places, returning the digit string
/// used by the table emitters: round-half-even on the scaled integer.
pub fn to_fixed_decimal(x: &Float, digits: u32) -> String {
    let prec = x.prec();
    let scale = Float::with_val(prec, 10u32).pow(digits);
    let scaled = x.clone() * scale;
    // MPFR's get_z with round-to-nearest resolves ties to even, which is
    // the documented rounding for the printed tables.
    let int = scaled
        .to_integer_round(Round::Nearest)
        .expect("finite value")
        .0;
    let neg = int < 0;
    let mut mag = int.abs().to_string();
    if mag.len() <= digits as usize {
        mag = format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag);
    }
    let point = mag.len() - digits as usize;
    format!(
        "{}{}.{}",
        if neg { "-" } else { "" },
        &mag[..point],
        &mag[point..]
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 224;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::new(Float::with_val(P, re), Float::with_val(P, im))
    }

    #[test]
    fn field_ops_round_trip() {
        let a = c(1.5, -2.25);
        let b = c(-0.75, 3.0);
        let q = a.mul(&b).div(&b);
        assert!(q.dist(&a) < Float::with_val(P, 1e-60));
    }

    #[test]
    fn ln_exp_inverse_on_principal_branch() {
        let z = c(0.8, 0.6);
        let back = z.ln().exp();
        assert!(back.dist(&z) < Float::with_val(P, 1e-60));
        // atan2 keeps Im(log) in (-pi, pi]
        let w = c(-1.0, -1e-30).ln();
        assert!(w.im < 0);
    }

    #[test]
    fn roots_of_unity_conjugate_exactly() {
        for d in [1u32, 2, 4, 6, 10, 12, 16] {
            for k in 0..d {
                let z = BigComplex::root_of_unity(k, d, P);
                let zc = BigComplex::root_of_unity((d - k) % d, d, P);
                assert_eq!(z.re, zc.re, "k={k} d={d}");
                assert_eq!(z.im, -zc.im.clone(), "k={k} d={d}");
                let n = z.norm2();
                assert!((n - 1u32).abs() < Float::with_val(P, 1e-60));
            }
        }
        // quarter turns are exact
        let i = BigComplex::root_of_unity(3, 12, P);
        assert_eq!(i.re, 0);
        assert_eq!(i.im, 1);
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let z = BigComplex::root_of_unity(1, 10, P);
        let mut acc = BigComplex::root_of_unity(0, 1, P);
        for e in 0..25u32 {
            assert!(z.powi(e).dist(&acc) < Float::with_val(P, 1e-60), "e={e}");
            acc = acc.mul(&z);
        }
    }

    #[test]
    fn fixed_decimal_rounding() {
        let x = Float::with_val(P, 1) / 3u32;
        assert_eq!(
            to_fixed_decimal(&x, 10),
            "0.3333333333",
            "truncation toward nearest"
        );
        let y = Float::with_val(P, -1) / 64u32;
        assert_eq!(to_fixed_decimal(&y, 4), "-0.0156");
        // exact tie 0.25 at one digit rounds half-even to 0.2
        let t = Float::with_val(P, 1) / 4u32;
        assert_eq!(to_fixed_decimal(&t, 1), "0.2");
        let t = Float::with_val(P, 3) / 4u32;
        assert_eq!(to_fixed_decimal(&t, 1), "0.8");
    }
}
