//! Dirichlet characters as exact roots of unity.
//!
//! Every character value is either zero or a root of unity
//! `exp(2 pi i k / d)` with `d = phi(m)`, so a character is stored as a
//! vector of exponents `k` — exact integers — and all character algebra
//! (conjugation, powers, multiplicativity, orthogonality) happens in
//! modular integer arithmetic.  Floating point enters only when a value
//! is embedded into the complex field for series evaluation.
//!
//! # Construction and row order
//!
//! The group of units modulo `m = prod q_f` (prime-power factors `q_f`,
//! ascending primes) is the product of the unit groups of the factors.
//! Local characters are enumerated per factor and combined with the last
//! factor's index varying fastest:
//!
//! * odd prime power `q = p^e`: the units are cyclic, generated by the
//!   smallest primitive root `g`; local character `j` sends
//!   `g^a -> exp(+2 pi i j a / phi(q))`, `j = 0 .. phi(q)-1`;
//! * `q = 2`: only the principal character;
//! * `q = 4`: the units are `{1, 3} = <-1>`; character `i` sends
//!   `-1 -> (-1)^i`;
//! * `q = 2^e, e >= 3`: the units are `<-1> x <5>`; the local index is
//!   `i * 2^(e-2) + j` (the sign component outermost) and the character
//!   sends `(-1)^x 5^y -> (-1)^(i x) exp(-2 pi i j y / 2^(e-2))`.
//!
//! The principal character is always row `r = 1`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::specfun::{factorize, mobius, totient};

/// A single character value: zero on non-units, else the root of unity
/// `exp(2 pi i k / d)` where `d = phi(m)` is fixed by the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharValue {
    Zero,
    Root(u32),
}

impl CharValue {
    /// Exact product of two values sharing the same denominator `d`.
    pub fn mul(self, rhs: CharValue, d: u32) -> CharValue {
        match (self, rhs) {
            (CharValue::Root(a), CharValue::Root(b)) => CharValue::Root((a + b) % d),
            _ => CharValue::Zero,
        }
    }

    /// Exact `t`-th power.
    pub fn pow(self, t: u32, d: u32) -> CharValue {
        match self {
            CharValue::Zero => CharValue::Zero,
            CharValue::Root(k) => CharValue::Root(((k as u64 * t as u64) % d as u64) as u32),
        }
    }

    /// Complex conjugate (negated exponent).
    pub fn conj(self, d: u32) -> CharValue {
        match self {
            CharValue::Zero => CharValue::Zero,
            CharValue::Root(k) => CharValue::Root((d - k % d) % d),
        }
    }
}

/// One Dirichlet character: row `index` of the table for `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    modulus: u32,
    index: u32,
    denom: u32,
    conductor: u32,
    values: Vec<CharValue>, // values[n-1] = chi(n), n = 1..=m
}

impl Character {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Row index `r`, 1-based; the principal character has `r = 1`.
    pub fn index(&self) -> u32 {
        self.index
    }

    /// The common root-of-unity denominator `d = phi(m)`.
    pub fn denom(&self) -> u32 {
        self.denom
    }

    /// Conductor: the smallest `f | m` such that the character is induced
    /// by a character modulo `f`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `chi(n)` for any `n >= 0` (reduced modulo `m`).
    pub fn value(&self, n: u64) -> CharValue {
        let res = (n % self.modulus as u64) as usize;
        if res == 0 {
            self.values[self.modulus as usize - 1]
        } else {
            self.values[res - 1]
        }
    }

    /// All values on `1..=m`.
    pub fn values(&self) -> &[CharValue] {
        &self.values
    }

    pub fn is_principal(&self) -> bool {
        self.index == 1
    }

    /// `chi(-1)`: +1 for even characters, -1 for odd ones.
    pub fn parity(&self) -> i32 {
        match self.value(self.modulus as u64 - 1) {
            CharValue::Root(0) => 1,
            CharValue::Root(k) if 2 * k == self.denom => -1,
            CharValue::Zero if self.modulus <= 2 => 1, // m=1,2: chi(-1)=chi(1)=1
            v => unreachable!("chi(-1) must be a sign, got {v:?}"),
        }
    }

    /// True when every value is real (0, 1, or -1).
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| match *v {
            CharValue::Zero | CharValue::Root(0) => true,
            CharValue::Root(k) => 2 * k == self.denom,
        })
    }

    /// Embeds `chi(n)` at the context's working precision.
    pub fn to_complex(&self, n: u64, ctx: &PrecisionContext) -> BigComplex {
        match self.value(n) {
            CharValue::Zero => BigComplex::zero(ctx.prec()),
            CharValue::Root(k) => BigComplex::root_of_unity(k, self.denom, ctx.prec()),
        }
    }

    /// Coefficient of the Dirichlet inverse of `chi` at `n`:
    /// `mu(n) chi(n)`, returned as the exact pair (sign, root of unity).
    pub fn dirichlet_inverse_coeff(&self, n: u64) -> (i32, CharValue) {
        (mobius(n), self.value(n))
    }

    /// Display token for a value: `1`, `-1`, `i`, `-i`, `0`, `u<k>` for
    /// `exp(2 pi i k/d)` in the upper half plane, and `~u<k>` for its
    /// conjugate.
    pub fn symbol(&self, n: u64) -> String {
        let d = self.denom;
        match self.value(n) {
            CharValue::Zero => "0".into(),
            CharValue::Root(k) => {
                let k = k % d;
                if k == 0 {
                    "1".into()
                } else if 2 * k == d {
                    "-1".into()
                } else if 4 * k == d {
                    "i".into()
                } else if 4 * k == 3 * d {
                    "-i".into()
                } else if 2 * k < d {
                    format!("u{k}")
                } else {
                    format!("~u{}", d - k)
                }
            }
        }
    }
}

/// The full character table for one modulus: `phi(m)` rows, principal
/// character first.
#[derive(Debug)]
pub struct CharacterTable {
    modulus: u32,
    chars: Vec<Character>,
}

impl CharacterTable {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn phi(&self) -> u32 {
        self.chars.len() as u32
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    /// Row `r` (1-based).
    pub fn get(&self, r: u32) -> Result<&Character> {
        self.chars
            .get(r as usize - 1)
            .ok_or_else(|| Error::InvalidArgument(format!("row {r} of modulus {}", self.modulus)))
    }

    /// Row index of `chi_r^t`; group closure guarantees it exists.
    pub fn power_index(&self, r: u32, t: u32) -> Result<u32> {
        let d = totient(self.modulus as u64) as u32;
        let base = self.get(r)?;
        let target: Vec<CharValue> = base.values.iter().map(|v| v.pow(t, d)).collect();
        self.chars
            .iter()
            .find(|c| c.values == target)
            .map(|c| c.index)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "power {t} of row {r} missing from table {}",
                    self.modulus
                ))
            })
    }

    /// Row index of the complex conjugate of `chi_r`.
    pub fn conjugate_index(&self, r: u32) -> Result<u32> {
        let d = totient(self.modulus as u64) as u32;
        let base = self.get(r)?;
        let target: Vec<CharValue> = base.values.iter().map(|v| v.conj(d)).collect();
        self.chars
            .iter()
            .find(|c| c.values == target)
            .map(|c| c.index)
            .ok_or_else(|| unreachable!("conjugate closure"))
    }
}

/// Local character data for one prime-power factor.
struct LocalFactor {
    q: u32,
    order: u32,            // phi(q)
    exponents: Vec<u32>,   // for unit u: table of discrete data, see build
}

/// For each local character index `l` and unit `u`, the exponent of
/// `chi_l(u)` in units of `1/phi(q)` turns, i.e. `chi_l(u) =
/// exp(2 pi i * exp(l, u) / phi(q))`.
fn local_exponent(f: &LocalFactor, l: u32, u: u32) -> u32 {
    let d = f.order;
    if f.q == 2 {
        return 0;
    }
    if f.q.is_multiple_of(2) && f.q >= 8 {
        // packed (x, y): exponents[u] = x * 2^(e-2) + y; index l = (i, j)
        let half = d / 2; // 2^(e-2)
        let code = f.exponents[u as usize];
        let (x, y) = (code / half, code % half);
        let (i, j) = (l / half, l % half);
        // (-1)^(i x) * exp(-2 pi i j y / 2^(e-2))
        let sign = (i * x % 2) * half;
        let spin = (half - (j as u64 * y as u64 % half as u64) as u32) % half;
        (sign + 2 * spin) % d
    } else {
        // cyclic: exponents[u] = ind_g(u); chi_l(g^a) = e^(2 pi i l a / d)
        ((l as u64 * f.exponents[u as usize] as u64) % d as u64) as u32
    }
}

fn build_local_factor(p: u64, e: u32) -> LocalFactor {
    let q = p.pow(e) as u32;
    let order = totient(q as u64) as u32;
    let mut exponents = vec![0u32; q as usize];
    if q == 2 {
        return LocalFactor { q, order, exponents };
    }
    if p == 2 && e == 2 {
        // units {1, 3}; 3 = -1
        exponents[3] = 1;
        return LocalFactor { q, order, exponents };
    }
    if p == 2 {
        // decompose each unit as (-1)^x 5^y
        let half = order / 2; // 2^(e-2)
        let mut val = 1u64;
        for y in 0..half {
            exponents[val as usize] = y; // x = 0
            exponents[(q as u64 - val) as usize] = half + y; // x = 1
            val = val * 5 % q as u64;
        }
        return LocalFactor { q, order, exponents };
    }
    // odd prime power: smallest primitive root
    let g = smallest_primitive_root(q, order);
    let mut val = 1u64;
    for a in 0..order {
        exponents[val as usize] = a;
        val = val * g as u64 % q as u64;
    }
    LocalFactor { q, order, exponents }
}

/// Smallest generator of the (cyclic) unit group of an odd prime power.
fn smallest_primitive_root(q: u32, order: u32) -> u32 {
    let prime_divs: Vec<u64> = factorize(order as u64).into_iter().map(|(p, _)| p).collect();
    'g: for g in 2..q {
        if gcd(g, q) != 1 {
            continue;
        }
        for &pd in &prime_divs {
            if pow_mod(g as u64, order as u64 / pd, q as u64) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("odd prime powers have primitive roots")
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn build_table(m: u32) -> Result<CharacterTable> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let d = totient(m as u64) as u32;
    let factors: Vec<LocalFactor> = factorize(m as u64)
        .into_iter()
        .map(|(p, e)| build_local_factor(p, e))
        .collect();

    // mixed-radix enumeration of local indices, last factor fastest
    let mut chars = Vec::with_capacity(d as usize);
    for row in 0..d {
        let mut locals = vec![0u32; factors.len()];
        let mut rem = row;
        for (slot, f) in factors.iter().enumerate().rev() {
            locals[slot] = rem % f.order;
            rem /= f.order;
        }
        let mut values = vec![CharValue::Zero; m as usize];
        for n in 1..=m {
            if gcd(n, m) != 1 {
                continue;
            }
            let mut k = 0u64;
            for (f, &l) in factors.iter().zip(&locals) {
                let le = local_exponent(f, l, n % f.q);
                k += le as u64 * (d / f.order) as u64;
            }
            values[n as usize - 1] = CharValue::Root((k % d as u64) as u32);
        }
        chars.push(Character {
            modulus: m,
            index: row + 1,
            denom: d,
            conductor: 0, // fixed up below
            values,
        });
    }

    // conductor: smallest f | m with chi(a) = 1 whenever a = 1 (mod f)
    // and gcd(a, m) = 1
    let divisors: Vec<u32> = (1..=m).filter(|f| m.is_multiple_of(*f)).collect();
    for chi in &mut chars {
        'f: for &f in &divisors {
            for a in 1..=m {
                if gcd(a, m) == 1 && a % f == 1 % f && chi.values[a as usize - 1] != CharValue::Root(0)
                {
                    continue 'f;
                }
            }
            chi.conductor = f;
            break;
        }
        debug_assert!(chi.conductor >= 1);
    }

    Ok(CharacterTable { modulus: m, chars })
}

static TABLES: Mutex<Option<HashMap<u32, Arc<CharacterTable>>>> = Mutex::new(None);

/// The character table for modulus `m`, built once per process.
pub fn character_table(m: u32) -> Result<Arc<CharacterTable>> {
    let mut guard = TABLES.lock().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    if let Some(t) = map.get(&m) {
        return Ok(t.clone());
    }
    let t = Arc::new(build_table(m)?);
    map.insert(m, t.clone());
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn principal_character_is_row_one() {
        for m in 1..=22 {
            let t = character_table(m).unwrap();
            assert_eq!(t.phi(), totient(m as u64) as u32);
            let chi1 = t.get(1).unwrap();
            assert!(chi1.is_principal());
            assert_eq!(chi1.conductor(), 1, "m={m}");
            for n in 1..=m {
                let expect = if gcd(n, m) == 1 {
                    CharValue::Root(0)
                } else {
                    CharValue::Zero
                };
                assert_eq!(chi1.value(n as u64), expect, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn known_rows() {
        // m=5: chi_2(2) = primitive 4th root with exponent +1, i.e. i
        let t5 = character_table(5).unwrap();
        assert_eq!(t5.get(2).unwrap().value(2), CharValue::Root(1));
        assert_eq!(t5.get(2).unwrap().symbol(2), "i");
        assert_eq!(t5.get(3).unwrap().value(4), CharValue::Root(0));
        // m=16 row 2: chi(5) = -i (exponent 6 of d=8)
        let t16 = character_table(16).unwrap();
        assert_eq!(t16.get(2).unwrap().value(5), CharValue::Root(6));
        assert_eq!(t16.get(2).unwrap().symbol(5), "-i");
        // m=16 row 5: the sign character (-1)^x with conductor 4... its
        // value at 3 is -1 and at 5 is +1
        assert_eq!(t16.get(5).unwrap().value(3), CharValue::Root(4));
        assert_eq!(t16.get(5).unwrap().value(5), CharValue::Root(0));
        // m=3: the quadratic character
        let t3 = character_table(3).unwrap();
        assert_eq!(t3.get(2).unwrap().value(2), CharValue::Root(1)); // d=2: -1
        assert_eq!(t3.get(2).unwrap().symbol(2), "-1");
        assert_eq!(t3.get(2).unwrap().conductor(), 3);
        assert_eq!(t3.get(2).unwrap().parity(), -1);
    }

    #[test]
    fn multiplicativity_is_exact() {
        for m in 2..=22u32 {
            let t = character_table(m).unwrap();
            let d = t.get(1).unwrap().denom();
            for chi in t.chars() {
                for a in 1..=m as u64 {
                    for b in 1..=m as u64 {
                        let lhs = chi.value(a * b);
                        let rhs = chi.value(a).mul(chi.value(b), d);
                        assert_eq!(lhs, rhs, "m={m} r={} a={a} b={b}", chi.index());
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_over_rows_and_columns() {
        for m in [2u32, 8, 12, 15, 16, 21, 22] {
            let t = character_table(m).unwrap();
            let d = t.get(1).unwrap().denom();
            // column relation: sum over n of chi_r(n) conj(chi_r'(n))
            for r1 in t.chars() {
                for r2 in t.chars() {
                    let mut acc: HashMap<u32, i64> = HashMap::new(); // exponent -> count
                    for n in 1..=m as u64 {
                        match r1.value(n).mul(r2.value(n).conj(d), d) {
                            CharValue::Zero => {}
                            CharValue::Root(k) => *acc.entry(k).or_default() += 1,
                        }
                    }
                    // sum of counted roots of unity must be phi(m) or 0
                    let prec = 96;
                    let mut re = Float::new(prec);
                    for (&k, &c) in &acc {
                        let z = BigComplex::root_of_unity(k, d, prec);
                        re += z.re * c;
                    }
                    let expect = if r1.index() == r2.index() { t.phi() as i64 } else { 0 };
                    let diff = (re - expect).abs();
                    assert!(diff < 1e-20, "m={m} r={},{}", r1.index(), r2.index());
                }
            }
        }
    }

    #[test]
    fn conductors_divide_and_induce() {
        for m in 2..=22u32 {
            let t = character_table(m).unwrap();
            for chi in t.chars() {
                let f = chi.conductor();
                assert_eq!(m % f, 0, "conductor divides modulus");
                // chi is trivial on units congruent to 1 mod f
                for a in 1..=m {
                    if gcd(a, m) == 1 && a % f == 1 % f {
                        assert_eq!(chi.value(a as u64), CharValue::Root(0), "m={m} r={} a={a}", chi.index());
                    }
                }
            }
        }
    }

    #[test]
    fn powers_and_conjugates_close() {
        for m in [5u32, 7, 9, 16, 21] {
            let t = character_table(m).unwrap();
            for chi in t.chars() {
                let rc = t.conjugate_index(chi.index()).unwrap();
                let d = chi.denom();
                for n in 1..=m as u64 {
                    assert_eq!(t.get(rc).unwrap().value(n), chi.value(n).conj(d));
                }
                for tpow in 0..=6 {
                    let rp = t.power_index(chi.index(), tpow).unwrap();
                    for n in 1..=m as u64 {
                        assert_eq!(
                            t.get(rp).unwrap().value(n),
                            chi.value(n).pow(tpow, d),
                            "m={m} r={} t={tpow}",
                            chi.index()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn parity_counts() {
        // half the characters are odd for m > 2
        for m in 3..=22u32 {
            let t = character_table(m).unwrap();
            let odd = t.chars().iter().filter(|c| c.parity() == -1).count();
            assert_eq!(odd as u32, t.phi() / 2, "m={m}");
        }
    }
}
