//! Quaternions, the sphere of imaginary units and complexified quaternions.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A quaternion `w + x1 i + x2 j + x3 k` with the Hamilton relations
/// `i² = j² = k² = -1`, `ij = -ji = k`, `jk = -kj = i`, `ki = -ik = j`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 4]", from = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);

impl Quaternion {
    pub const fn new(w: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { w, x1, x2, x3 }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub const fn i() -> Self {
        Self::new(0.0, 1.0, 0.0, 0.0)
    }

    pub const fn j() -> Self {
        Self::new(0.0, 0.0, 1.0, 0.0)
    }

    pub const fn k() -> Self {
        Self::new(0.0, 0.0, 0.0, 1.0)
    }

    /// Quaternionic conjugate: negates the imaginary part.
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x1, -self.x2, -self.x3)
    }

    /// Squared norm `n(q) = q q^c = w² + x1² + x2² + x3²`.
    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn abs(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Multiplicative inverse `q^c / n(q)`.
    pub fn inverse(self) -> Result<Self> {
        let n = self.norm_sq();
        if n == 0.0 {
            return Err(Error::Singular("inverse of zero quaternion".into()));
        }
        Ok(self.conj() / n)
    }

    /// Real (scalar) part.
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part as a quaternion with zero scalar component.
    pub fn im(self) -> Self {
        Self::new(0.0, self.x1, self.x2, self.x3)
    }

    pub fn im_abs(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn is_zero(self, tol: f64) -> bool {
        self.abs() <= tol
    }

    /// Canonical decomposition `x = α + βI` with `β = |Im x| ≥ 0`.
    ///
    /// Real points return `I = None`; callers must handle the real-axis case
    /// explicitly.
    pub fn split(self) -> (f64, f64, Option<ImaginaryUnit>) {
        let beta = self.im_abs();
        if beta == 0.0 {
            (self.w, 0.0, None)
        } else {
            let u = ImaginaryUnit(Quaternion::new(
                0.0,
                self.x1 / beta,
                self.x2 / beta,
                self.x3 / beta,
            ));
            (self.w, beta, Some(u))
        }
    }

    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    /// Componentwise array view `[w, x1, x2, x3]`.
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x1, self.x2, self.x3]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Self::from_array(a)
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.w + rhs.w,
            self.x1 + rhs.x1,
            self.x2 + rhs.x2,
            self.x3 + rhs.x3,
        )
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.w - rhs.w,
            self.x1 - rhs.x1,
            self.x2 - rhs.x2,
            self.x3 - rhs.x3,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product.
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.w * r.w - self.x1 * r.x1 - self.x2 * r.x2 - self.x3 * r.x3,
            self.w * r.x1 + self.x1 * r.w + self.x2 * r.x3 - self.x3 * r.x2,
            self.w * r.x2 - self.x1 * r.x3 + self.x2 * r.w + self.x3 * r.x1,
            self.w * r.x3 + self.x1 * r.x2 - self.x2 * r.x1 + self.x3 * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x1 / s, self.x2 / s, self.x3 / s)
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}i + {}j + {}k)",
            self.w, self.x1, self.x2, self.x3
        )
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A unit pure quaternion `I` with `I² = -1`, i.e. a point of the imaginary
/// sphere.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct ImaginaryUnit(Quaternion);

impl ImaginaryUnit {
    /// Tolerance on the real part and norm deviation accepted by the
    /// constructor before renormalizing.
    pub const CONSTRUCT_TOL: f64 = 1e-9;

    /// Builds a unit from the pure part of `q`, renormalizing. Fails when the
    /// real part is significant or the pure part is too short to normalize.
    pub fn new(q: Quaternion) -> Result<Self> {
        let scale = q.abs().max(1.0);
        if q.w.abs() > Self::CONSTRUCT_TOL * scale {
            return Err(Error::Argument(format!(
                "imaginary unit has nonzero real part {}",
                q.w
            )));
        }
        let beta = q.im_abs();
        if beta <= Self::CONSTRUCT_TOL {
            return Err(Error::Argument("imaginary unit must be nonzero".into()));
        }
        Ok(Self(Quaternion::new(
            0.0,
            q.x1 / beta,
            q.x2 / beta,
            q.x3 / beta,
        )))
    }

    pub fn from_components(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        Self::new(Quaternion::new(0.0, x1, x2, x3))
    }

    pub fn i() -> Self {
        Self(Quaternion::i())
    }

    pub fn j() -> Self {
        Self(Quaternion::j())
    }

    pub fn k() -> Self {
        Self(Quaternion::k())
    }

    pub fn as_quaternion(self) -> Quaternion {
        self.0
    }

    /// Scalar (dot) product of the underlying R³ vectors.
    pub fn dot(self, other: Self) -> f64 {
        self.0.x1 * other.0.x1 + self.0.x2 * other.0.x2 + self.0.x3 * other.0.x3
    }

    /// Vector (cross) product of the underlying R³ vectors, as a pure
    /// quaternion.
    pub fn cross(self, other: Self) -> Quaternion {
        Quaternion::new(
            0.0,
            self.0.x2 * other.0.x3 - self.0.x3 * other.0.x2,
            self.0.x3 * other.0.x1 - self.0.x1 * other.0.x3,
            self.0.x1 * other.0.x2 - self.0.x2 * other.0.x1,
        )
    }

    /// Angular distance on the sphere, in `[0, π]`.
    pub fn angle_to(self, other: Self) -> f64 {
        self.dot(other).clamp(-1.0, 1.0).acos()
    }
}

impl Neg for ImaginaryUnit {
    type Output = ImaginaryUnit;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl TryFrom<[f64; 3]> for ImaginaryUnit {
    type Error = Error;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        Self::from_components(v[0], v[1], v[2])
    }
}

impl From<ImaginaryUnit> for [f64; 3] {
    fn from(u: ImaginaryUnit) -> Self {
        [u.0.x1, u.0.x2, u.0.x3]
    }
}

/// An element `w = x + √-1 y` of the complexified quaternions `H ⊗ C`.
///
/// The product is H-bilinear with `√-1` central. Two conjugations are
/// available: [`Self::conj_c`] applies quaternionic conjugation to both parts
/// and [`Self::bar`] negates the `√-1` part.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct ComplexifiedQuaternion {
    pub re: Quaternion,
    pub im: Quaternion,
}

impl ComplexifiedQuaternion {
    pub const fn new(re: Quaternion, im: Quaternion) -> Self {
        Self { re, im }
    }

    pub fn from_real(q: Quaternion) -> Self {
        Self::new(q, ZERO)
    }

    pub fn zero() -> Self {
        Self::new(ZERO, ZERO)
    }

    pub fn one() -> Self {
        Self::new(ONE, ZERO)
    }

    /// `w^c = x^c + √-1 y^c`.
    pub fn conj_c(self) -> Self {
        Self::new(self.re.conj(), self.im.conj())
    }

    /// `w̄ = x - √-1 y`.
    pub fn bar(self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// Frobenius-style magnitude `√(n(x) + n(y))`, used for tolerance tests.
    pub fn abs(self) -> f64 {
        (self.re.norm_sq() + self.im.norm_sq()).sqrt()
    }

    pub fn is_zero(self, tol: f64) -> bool {
        self.abs() <= tol
    }

    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    /// `w w^c`, always a complex scalar `c₀ + √-1 c₁` with real `c₀`, `c₁`.
    pub fn norm_c(self) -> num_complex::Complex64 {
        let p = self * self.conj_c();
        num_complex::Complex64::new(p.re.w, p.im.w)
    }

    /// Multiplicative inverse `w^c / (w w^c)`; fails on the zero divisors
    /// where `w w^c = 0`.
    pub fn inverse(self) -> Result<Self> {
        let n = self.norm_c();
        if n.norm() == 0.0 {
            return Err(Error::Singular(
                "complexified quaternion with vanishing norm".into(),
            ));
        }
        let c = self.conj_c();
        let inv = 1.0 / n;
        Ok(Self::new(
            c.re * inv.re - c.im * inv.im,
            c.re * inv.im + c.im * inv.re,
        ))
    }

    /// Multiplies by the central `√-1`.
    pub fn times_sqrt_minus_one(self) -> Self {
        Self::new(-self.im, self.re)
    }
}

impl Add for ComplexifiedQuaternion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ComplexifiedQuaternion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for ComplexifiedQuaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for ComplexifiedQuaternion {
    type Output = Self;
    /// `(a + √-1 b)(c + √-1 d) = (ac - bd) + √-1(ad + bc)`.
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.re * r.re - self.im * r.im,
            self.re * r.im + self.im * r.re,
        )
    }
}

impl Mul<f64> for ComplexifiedQuaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.re * s, self.im * s)
    }
}
