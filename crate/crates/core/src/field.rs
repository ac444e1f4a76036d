//! Exact scalars over the rationals and prime fields.
//!
//! Every [`FieldElement`] carries its field tag. Arithmetic between elements
//! of different fields is a programming error and panics; matrices validate
//! their entries at construction so that the linear-algebra layer never
//! reaches that path with user data.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::LinalgError;

/// Ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime used when a finite field is requested without an explicit modulus.
    pub const DEFAULT_PRIME: u64 = 101;

    /// Prime field of order `p`, rejecting composites and moduli that do not
    /// fit the `u128` product path.
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if !(2..(1 << 62)).contains(&p) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldElement::Prime {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// Maps an exact rational into this field. Fails over F_p when the
    /// denominator is divisible by p.
    pub fn from_rational(self, q: &BigRational) -> Result<FieldElement, LinalgError> {
        match self {
            Field::Rationals => Ok(FieldElement::Rational(q.clone())),
            Field::Prime(p) => {
                let modulus = BigInt::from(p);
                let num = q.numer().mod_floor(&modulus).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&modulus).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(LinalgError::ParseScalar(format!(
                        "{q} has a denominator divisible by {p}"
                    )));
                }
                let n = FieldElement::Prime { value: num, modulus: p };
                let d = FieldElement::Prime { value: den, modulus: p };
                Ok(n * d.inv().expect("nonzero denominator"))
            }
        }
    }

    /// Parses an integer or fraction literal such as `-3`, `3/2` or `0`.
    pub fn parse_element(self, s: &str) -> Result<FieldElement, LinalgError> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = LinalgError;

    /// Accepts `Q`, `Fp:101` and `fp:101`, and `Fp` alone for the default prime.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(Field::Rationals);
        }
        let lower = t.to_ascii_lowercase();
        if lower == "fp" {
            return Ok(Field::Prime(Field::DEFAULT_PRIME));
        }
        if let Some(rest) = lower.strip_prefix("fp:") {
            let p: u64 = rest.parse().map_err(|_| LinalgError::ParseField(s.to_string()))?;
            return Field::prime(p);
        }
        Err(LinalgError::ParseField(s.to_string()))
    }
}

/// Parses `a`, `-a` or `a/b` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational, LinalgError> {
    let t = s.trim();
    let bad = || LinalgError::ParseScalar(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact scalar. Rationals are kept in lowest terms with a positive
/// denominator; prime-field values are canonical representatives in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rationals,
            FieldElement::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        match self {
            FieldElement::Rational(q) => Some(FieldElement::Rational(q.recip())),
            FieldElement::Prime { value, modulus } => {
                // Fermat: a^(p-2)
                Some(FieldElement::Prime {
                    value: pow_mod(*value, *modulus - 2, *modulus),
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn div(&self, other: &FieldElement) -> Option<FieldElement> {
        other.inv().map(|i| self * &i)
    }

    /// Small-height heuristic used for pivot selection: bit length of the
    /// numerator plus denominator for rationals, constant for F_p.
    pub(crate) fn height(&self) -> u64 {
        match self {
            FieldElement::Rational(q) => q.numer().bits() + q.denom().bits(),
            FieldElement::Prime { .. } => 1,
        }
    }

    /// The underlying rational, when over Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Prime { .. } => None,
        }
    }

    /// Lossy conversion, used only for display of bounds.
    pub fn to_f64(&self) -> f64 {
        match self {
            FieldElement::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            FieldElement::Prime { value, .. } => *value as f64,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Prime { .. } => false,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

fn mismatch(a: &FieldElement, b: &FieldElement) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Prime { value: a, modulus: p }, FieldElement::Prime { value: b, modulus: q }) if p == q => {
                FieldElement::Prime {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (FieldElement::Prime { value: a, modulus: p }, FieldElement::Prime { value: b, modulus: q }) if p == q => {
                FieldElement::Prime {
                    value: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Prime { value: a, modulus: p }, FieldElement::Prime { value: b, modulus: q }) if p == q => {
                FieldElement::Prime {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fields() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("Fp:101".parse::<Field>().unwrap(), Field::Prime(101));
        assert_eq!("fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("Fp:100".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Field::Rationals.parse_element("4/-6").unwrap();
        let r = q.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(q.to_string(), "-2/3");
    }

    #[test]
    fn prime_field_fractions() {
        let f = Field::Prime(101);
        let half = f.parse_element("1/2").unwrap();
        assert_eq!(&half * &f.from_i64(2), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(100));
        assert!(f.parse_element("1/101").is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = Field::Rationals.one() + Field::Prime(5).one();
    }

    proptest! {
        #[test]
        fn rational_add_sub_roundtrip(a in -1000i64..1000, b in 1i64..50, c in -1000i64..1000, d in 1i64..50) {
            let f = Field::Rationals;
            let x = f.from_rational(&BigRational::new(a.into(), b.into())).unwrap();
            let y = f.from_rational(&BigRational::new(c.into(), d.into())).unwrap();
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if let FieldElement::Rational(q) = &x {
                prop_assert!(q.denom().is_positive());
            }
        }

        #[test]
        fn prime_inverse(v in 1u64..101) {
            let x = Field::Prime(101).from_i64(v as i64);
            prop_assert!((&x * &x.inv().unwrap()).is_one());
            if let FieldElement::Prime { value, .. } = &x {
                prop_assert!(*value < 101);
            }
        }
    }
}
