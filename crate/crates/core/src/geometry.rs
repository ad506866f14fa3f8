//! Points, directions, oriented planes and the exact orientation predicates
//! built on them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::scalar::{format_rational, primitive_integer_vector, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("direction vector is zero")]
    ZeroDirection,
}

/// Point (or free vector) in 3-space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn coords(&self) -> [&T; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn from_array([x, y, z]: [T; 3]) -> Self {
        Self { x, y, z }
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x.clone() * other.x.clone()
            + self.y.clone() * other.y.clone()
            + self.z.clone() * other.z.clone()
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y.clone() * other.z.clone() - self.z.clone() * other.y.clone(),
            self.z.clone() * other.x.clone() - self.x.clone() * other.z.clone(),
            self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone(),
        )
    }

    pub fn norm2(&self) -> T {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(
            self.x.clone() * k.clone(),
            self.y.clone() * k.clone(),
            self.z.clone() * k.clone(),
        )
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Self, t: &T) -> Self {
        self + &(other - self).scale(t)
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        let two = T::one() + T::one();
        (self + other).scale(&(T::one() / two))
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Point3<U> {
        Point3 {
            x: f(&self.x),
            y: f(&self.y),
            z: f(&self.z),
        }
    }
}

impl<T: Scalar> Add for &Point3<T> {
    type Output = Point3<T>;
    fn add(self, rhs: Self) -> Point3<T> {
        Point3::new(
            self.x.clone() + rhs.x.clone(),
            self.y.clone() + rhs.y.clone(),
            self.z.clone() + rhs.z.clone(),
        )
    }
}

impl<T: Scalar> Sub for &Point3<T> {
    type Output = Point3<T>;
    fn sub(self, rhs: Self) -> Point3<T> {
        Point3::new(
            self.x.clone() - rhs.x.clone(),
            self.y.clone() - rhs.y.clone(),
            self.z.clone() - rhs.z.clone(),
        )
    }
}

impl<T: Scalar> Add for Point3<T> {
    type Output = Point3<T>;
    fn add(self, rhs: Self) -> Point3<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Point3<T> {
    type Output = Point3<T>;
    fn sub(self, rhs: Self) -> Point3<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for &Point3<T> {
    type Output = Point3<T>;
    fn neg(self) -> Point3<T> {
        Point3::new(-self.x.clone(), -self.y.clone(), -self.z.clone())
    }
}

impl<T: Scalar> Mul<&T> for &Point3<T> {
    type Output = Point3<T>;
    fn mul(self, k: &T) -> Point3<T> {
        self.scale(k)
    }
}

impl fmt::Display for Point3<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})",
            format_rational(&self.x),
            format_rational(&self.y),
            format_rational(&self.z)
        )
    }
}

/// Which side of an oriented plane a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(i8)]
pub enum Side {
    Negative = -1,
    On = 0,
    Positive = 1,
}

impl Side {
    pub fn of<T: Scalar>(value: &T) -> Side {
        if value.is_positive() {
            Side::Positive
        } else if value.is_negative() {
            Side::Negative
        } else {
            Side::On
        }
    }

    pub fn as_i8(self) -> i8 {
        self as i8
    }
}

/// Nonzero vector; only the ray (or, for planes, the oriented normal) matters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Direction<T>(Point3<T>);

impl<T: Scalar> Direction<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self, GeometryError> {
        Self::from_vector(Point3::new(x, y, z))
    }

    pub fn from_vector(v: Point3<T>) -> Result<Self, GeometryError> {
        if v.is_zero() {
            Err(GeometryError::ZeroDirection)
        } else {
            Ok(Self(v))
        }
    }

    pub fn vector(&self) -> &Point3<T> {
        &self.0
    }

    pub fn into_vector(self) -> Point3<T> {
        self.0
    }

    pub fn reversed(&self) -> Self {
        Self(-&self.0)
    }

    pub fn dot(&self, p: &Point3<T>) -> T {
        self.0.dot(p)
    }
}

impl Direction<Rational> {
    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self, GeometryError> {
        Self::new(
            Rational::from_integer(x.into()),
            Rational::from_integer(y.into()),
            Rational::from_integer(z.into()),
        )
    }

    /// Cleared of denominators and divided by the gcd; orientation kept.
    pub fn primitive(&self) -> [BigInt; 3] {
        primitive_integer_vector(&self.0.to_array())
    }

    /// Orientation-free canonical form: primitive with leading nonzero entry positive.
    pub fn canonical_ray(&self) -> [BigInt; 3] {
        let mut v = self.primitive();
        if let Some(first) = v.iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                for c in v.iter_mut() {
                    *c = -c.clone();
                }
            }
        }
        v
    }

    /// Same direction rescaled to the primitive integer vector.
    pub fn normalized(&self) -> Self {
        let [a, b, c] = self.primitive();
        Self(Point3::new(a.into(), b.into(), c.into()))
    }
}

impl fmt::Display for Direction<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The plane `{ x : normal · x = offset }`; positive side is `normal · x > offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Plane<T> {
    pub normal: Direction<T>,
    pub offset: T,
}

impl<T: Scalar> Plane<T> {
    pub fn new(normal: Direction<T>, offset: T) -> Self {
        Self { normal, offset }
    }

    pub fn through(point: &Point3<T>, normal: Direction<T>) -> Self {
        let offset = normal.dot(point);
        Self { normal, offset }
    }

    /// `normal · p - offset`.
    pub fn evaluate(&self, p: &Point3<T>) -> T {
        self.normal.dot(p) - self.offset.clone()
    }

    pub fn side(&self, p: &Point3<T>) -> Side {
        Side::of(&self.evaluate(p))
    }

    pub fn flipped(&self) -> Self {
        Self {
            normal: self.normal.reversed(),
            offset: -self.offset.clone(),
        }
    }
}

impl fmt::Display for Plane<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normal.vector();
        write!(
            f,
            "normal = ({},{},{}), offset = {}",
            format_rational(&n.x),
            format_rational(&n.y),
            format_rational(&n.z),
            format_rational(&self.offset)
        )
    }
}

/// Sign of `s.normal · p - s.offset`.
pub fn side_of_plane<T: Scalar>(p: &Point3<T>, s: &Plane<T>) -> Side {
    s.side(p)
}

/// Sign of the determinant `[b - a, c - a, d - a]`.
pub fn orient3d<T: Scalar>(a: &Point3<T>, b: &Point3<T>, c: &Point3<T>, d: &Point3<T>) -> Side {
    let ab = b - a;
    let ac = c - a;
    let ad = d - a;
    Side::of(&ab.cross(&ac).dot(&ad))
}

/// Drops the coordinate axis `drop` (0, 1 or 2) and returns the remaining pair.
pub(crate) fn project_drop<T: Scalar>(p: &Point3<T>, drop: usize) -> (T, T) {
    match drop {
        0 => (p.y.clone(), p.z.clone()),
        1 => (p.z.clone(), p.x.clone()),
        _ => (p.x.clone(), p.y.clone()),
    }
}

/// Sign of the 2-D cross product `(b - a) x (c - a)`.
pub(crate) fn orient2d<T: Scalar>(a: &(T, T), b: &(T, T), c: &(T, T)) -> Side {
    let v = (b.0.clone() - a.0.clone()) * (c.1.clone() - a.1.clone())
        - (b.1.clone() - a.1.clone()) * (c.0.clone() - a.0.clone());
    Side::of(&v)
}
