//! The elliptic curve as its group of torsion points, and its cotangent bundle.
//!
//! The curve is modeled purely by the group (Q/Z)^2: every point has two
//! coordinates in `[0, 1)` and the marked point is the identity `(0, 0)`.
//! This captures the full torsion subgroup exactly, which is all that any
//! in-scope statement sees. The cotangent bundle is trivial, so a cotangent
//! point is a curve point together with an exact complex coordinate `t`.
//!
//! All values are immutable and all operations are pure.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{ComplexRational, Rational};

/// One coordinate of a curve point: a rational reduced mod 1, kept in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TorusCoord(Rational);

impl TorusCoord {
    /// Canonical representative of `r + Z`.
    pub fn new(r: Rational) -> Self {
        TorusCoord(r.fract_mod_one())
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        TorusCoord::new(Rational::new(num, den))
    }

    pub fn zero() -> Self {
        TorusCoord::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// Least `k >= 1` with `k * self == 0`; this is the reduced denominator.
    pub fn order(&self) -> BigInt {
        self.0.denom().clone()
    }

    pub fn scalar_mul(&self, k: i64) -> TorusCoord {
        TorusCoord::new(self.0.scale(k))
    }
}

impl Add for &TorusCoord {
    type Output = TorusCoord;
    fn add(self, rhs: &TorusCoord) -> TorusCoord {
        TorusCoord::new(&self.0 + &rhs.0)
    }
}

impl Neg for &TorusCoord {
    type Output = TorusCoord;
    fn neg(self) -> TorusCoord {
        TorusCoord::new(-&self.0)
    }
}

impl fmt::Display for TorusCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for TorusCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for TorusCoord {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TorusCoord {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        Ok(TorusCoord::new(Rational::deserialize(de)?))
    }
}

/// A point of the curve's group of points (Q/Z)^2.
///
/// The identity `(0, 0)` is the marked point; all coordinate identifications
/// downstream are normalized to that choice. Serializes as `["a/b", "c/d"]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CurvePoint {
    pub a: TorusCoord,
    pub b: TorusCoord,
}

impl CurvePoint {
    pub fn new(a: TorusCoord, b: TorusCoord) -> Self {
        CurvePoint { a, b }
    }

    /// Point `(na/da, nb/db)` reduced mod 1.
    pub fn from_fractions(na: i64, da: i64, nb: i64, db: i64) -> Self {
        CurvePoint {
            a: TorusCoord::from_fraction(na, da),
            b: TorusCoord::from_fraction(nb, db),
        }
    }

    /// The identity of the group, i.e. the marked point.
    pub fn origin() -> Self {
        CurvePoint::default()
    }

    pub fn is_origin(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scalar_mul(&self, k: i64) -> CurvePoint {
        CurvePoint {
            a: self.a.scalar_mul(k),
            b: self.b.scalar_mul(k),
        }
    }

    /// Least `k >= 1` with `k * p = 0`: the lcm of the coordinate denominators.
    pub fn order(&self) -> BigInt {
        self.a.order().lcm(&self.b.order())
    }

    /// True when `2p = 0`.
    pub fn is_two_torsion(&self) -> bool {
        self.scalar_mul(2).is_origin()
    }
}

impl Add for &CurvePoint {
    type Output = CurvePoint;
    fn add(self, rhs: &CurvePoint) -> CurvePoint {
        CurvePoint {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &CurvePoint {
    type Output = CurvePoint;
    fn sub(self, rhs: &CurvePoint) -> CurvePoint {
        self + &-rhs
    }
}

impl Neg for &CurvePoint {
    type Output = CurvePoint;
    fn neg(self) -> CurvePoint {
        CurvePoint {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        (&self.a, &self.b).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CurvePoint {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let (a, b) = <(TorusCoord, TorusCoord)>::deserialize(de)?;
        Ok(CurvePoint { a, b })
    }
}

/// A point of the cotangent bundle `T*X = X x C`: a curve point plus the
/// exact cotangent coordinate `t`.
///
/// Negation is `(-x, -t)`; a point is its own negative exactly when `x` is
/// 2-torsion and `t = 0`. The total order is lexicographic on
/// `(x.a, x.b, t.re, t.im)` and underlies every canonical form in the crate.
/// Serializes as `{"x": ["a/b","c/d"], "t": ["re","im"]}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct CotangentPoint {
    pub x: CurvePoint,
    pub t: ComplexRational,
}

impl CotangentPoint {
    pub fn new(x: CurvePoint, t: ComplexRational) -> Self {
        CotangentPoint { x, t }
    }

    /// The identity `((0,0), 0)`.
    pub fn origin() -> Self {
        CotangentPoint::default()
    }

    /// Lift of a curve point with `t = 0`.
    pub fn from_curve(x: CurvePoint) -> Self {
        CotangentPoint {
            x,
            t: ComplexRational::zero(),
        }
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_origin() && self.t.is_zero()
    }

    pub fn scalar_mul(&self, k: i64) -> CotangentPoint {
        CotangentPoint {
            x: self.x.scalar_mul(k),
            t: self.t.scale(k),
        }
    }

    /// True when `p = -p`, i.e. `x` is 2-torsion and `t = 0`.
    pub fn is_self_negative(&self) -> bool {
        self.x.is_two_torsion() && self.t.is_zero()
    }
}

impl Add for &CotangentPoint {
    type Output = CotangentPoint;
    fn add(self, rhs: &CotangentPoint) -> CotangentPoint {
        CotangentPoint {
            x: &self.x + &rhs.x,
            t: &self.t + &rhs.t,
        }
    }
}

impl Neg for &CotangentPoint {
    type Output = CotangentPoint;
    fn neg(self) -> CotangentPoint {
        CotangentPoint {
            x: -&self.x,
            t: -&self.t,
        }
    }
}

impl fmt::Display for CotangentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.t)
    }
}

impl fmt::Debug for CotangentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The torsion subgroup X[N]: exactly the N^2 points `(i/N, j/N)`, sorted by
/// the coordinatewise order. Closed under addition and negation.
pub fn torsion_subgroup(n: u32) -> Result<Vec<CurvePoint>> {
    if n == 0 {
        return Err(Error::Domain("torsion level must be >= 1".into()));
    }
    let n = i64::from(n);
    let mut points = Vec::with_capacity((n * n) as usize);
    for i in 0..n {
        for j in 0..n {
            points.push(CurvePoint::from_fractions(i, n, j, n));
        }
    }
    Ok(points)
}

/// Least `k >= 1` with `k * p = 0`.
pub fn point_order(p: &CurvePoint) -> BigInt {
    p.order()
}

/// X[N] as an indexed model over Z/N x Z/N, for enumeration kernels.
///
/// Index `i*N + j` stands for the point `(i/N, j/N)`; all arithmetic is plain
/// modular arithmetic on indices. This is an exact isomorphic image of
/// [`torsion_subgroup`], used where enumerations would be too slow on
/// big-integer rationals. Index order agrees with the point order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorsionModel {
    n: u32,
}

impl TorsionModel {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("torsion level must be >= 1".into()));
        }
        Ok(TorsionModel { n })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    /// Number of points, `N^2`.
    pub fn len(&self) -> u32 {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn add(&self, p: u32, q: u32) -> u32 {
        let n = self.n;
        let (pi, pj) = (p / n, p % n);
        let (qi, qj) = (q / n, q % n);
        ((pi + qi) % n) * n + (pj + qj) % n
    }

    pub fn neg(&self, p: u32) -> u32 {
        let n = self.n;
        let (pi, pj) = (p / n, p % n);
        ((n - pi) % n) * n + (n - pj) % n
    }

    pub fn sub(&self, p: u32, q: u32) -> u32 {
        self.add(p, self.neg(q))
    }

    pub fn scalar_mul(&self, k: i64, p: u32) -> u32 {
        let n = i64::from(self.n);
        let (pi, pj) = (i64::from(p / self.n), i64::from(p % self.n));
        let i = (pi * k).rem_euclid(n);
        let j = (pj * k).rem_euclid(n);
        (i * n + j) as u32
    }

    pub fn to_point(&self, p: u32) -> CurvePoint {
        let n = i64::from(self.n);
        CurvePoint::from_fractions(i64::from(p / self.n), n, i64::from(p % self.n), n)
    }

    /// Index of a point whose coordinate denominators divide N.
    pub fn from_point(&self, p: &CurvePoint) -> Result<u32> {
        let n = BigInt::from(self.n);
        let coord = |c: &TorusCoord| -> Result<u32> {
            let v = c.value();
            if !(&n % v.denom()).is_zero() {
                return Err(Error::ModelIncompatible(format!(
                    "point {p} does not lie in X[{}]",
                    self.n
                )));
            }
            let idx = v.numer() * &n / v.denom();
            Ok(idx.to_u32().expect("index in range"))
        };
        Ok(coord(&p.a)? * self.n + coord(&p.b)?)
    }

    /// Indices of the subgroup X[h] inside this model; requires `h | N`.
    pub fn subgroup(&self, h: u32) -> Result<Vec<u32>> {
        if h == 0 || !self.n.is_multiple_of(h) {
            return Err(Error::ModelIncompatible(format!(
                "X[{h}] is not a subgroup of the X[{}] model",
                self.n
            )));
        }
        let step = self.n / h;
        let mut out = Vec::with_capacity((h * h) as usize);
        for i in 0..h {
            for j in 0..h {
                out.push(i * step * self.n + j * step);
            }
        }
        Ok(out)
    }
}
