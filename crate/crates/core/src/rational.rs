//! Exact rational and complex-rational scalars.
//!
//! Every coordinate in this crate is an exact rational number; there are no
//! floating-point values and no tolerances anywhere. `Rational` wraps
//! [`num_rational::BigRational`], which keeps values reduced with a positive
//! denominator. `ComplexRational` is a pair of rationals used for the
//! cotangent coordinate.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational, always reduced, denominator >= 1.
///
/// Serializes as the string `"p/q"`, with `/q` omitted when the denominator
/// is 1 and the sign carried by the numerator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract_mod_one(&self) -> Rational {
        Rational(&self.0 - BigRational::from_integer(self.0.floor().to_integer()))
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn scale(&self, k: i64) -> Rational {
        Rational(&self.0 * BigRational::from_integer(BigInt::from(k)))
    }

    pub(crate) fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad rational: {s:?}")))
        };
        match s.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_int(s)?))),
            Some((n, d)) => {
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator: {s:?}")));
                }
                Ok(Rational(BigRational::new(parse_int(n)?, den)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
    };
}

rational_binop!(Add, add, +);
rational_binop!(Sub, sub, -);
rational_binop!(Mul, mul, *);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// Exact complex number with rational real and imaginary parts.
///
/// Ordered lexicographically on `(re, im)` by value; this is the order used
/// for all canonical forms, not a norm. Serializes as `["re", "im"]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl Serialize for ComplexRational {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        (&self.re, &self.im).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ComplexRational {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let (re, im) = <(Rational, Rational)>::deserialize(de)?;
        Ok(ComplexRational { re, im })
    }
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexRational { re, im }
    }

    /// Real integer `n`.
    pub fn from_integer(n: i64) -> Self {
        ComplexRational {
            re: Rational::from_integer(n),
            im: Rational::zero(),
        }
    }

    /// Real rational `num/den`.
    pub fn real(num: i64, den: i64) -> Self {
        ComplexRational {
            re: Rational::new(num, den),
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        ComplexRational::default()
    }

    pub fn one() -> Self {
        ComplexRational {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, k: i64) -> ComplexRational {
        ComplexRational {
            re: self.re.scale(k),
            im: self.im.scale(k),
        }
    }

    /// Exact product.
    pub fn mul(&self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(f, "{}{:+}i", self.re, RationalSigned(&self.im))
        }
    }
}

/// Helper so `{:+}` works for the imaginary part.
struct RationalSigned<'a>(&'a Rational);

impl fmt::Display for RationalSigned<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.inner().is_negative() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "+{}", self.0)
        }
    }
}

impl fmt::Debug for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}
