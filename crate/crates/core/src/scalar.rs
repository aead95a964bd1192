//! Scalar backends.
//!
//! Two interchangeable fields realize the complex numbers: [`GaussianRational`]
//! (exact, arbitrary precision) and [`Complex64`] (IEEE double). Every matrix
//! algorithm in this crate is generic over [`Scalar`]; tolerance decisions are
//! routed through [`Scalar::negligible`] so that the exact backend never
//! consults a tolerance.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which arithmetic a scalar uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Gaussian rationals, no round-off.
    Exact,
    /// Complex double precision.
    F64,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::F64 => "f64",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tolerances for the float backend. Ignored by the exact backend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Absolute bound on the max-entry difference for matrix equality.
    pub eq_tol: f64,
    /// Pivot threshold relative to the largest pivot during elimination.
    pub rank_tol: f64,
}

impl Tolerance {
    pub const fn new(eq_tol: f64, rank_tol: f64) -> Self {
        Tolerance { eq_tol, rank_tol }
    }

    /// Both tolerances must be strictly positive (and finite) to be usable
    /// in float mode.
    pub fn is_valid(&self) -> bool {
        self.eq_tol > 0.0 && self.rank_tol > 0.0 && self.eq_tol.is_finite() && self.rank_tol.is_finite()
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eq_tol: 1e-10, rank_tol: 1e-9 }
    }
}

/// A field element usable as a matrix entry.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Converts a complex double. The exact backend converts the binary
    /// value exactly, so `from_c64(x).to_c64() == x` for finite input.
    fn from_c64(z: Complex64) -> Option<Self>;
    fn to_c64(&self) -> Complex64;
    /// `|z|` as a double.
    fn modulus(&self) -> f64;
    /// Exact zero test (bitwise zero for floats).
    fn is_zero(&self) -> bool;

    /// Whether a pivot or residual counts as zero. Exact: only true zero.
    /// Float: `|self| <= tol * reference`.
    fn negligible(&self, reference: f64, tol: f64) -> bool {
        match Self::BACKEND {
            Backend::Exact => self.is_zero(),
            Backend::F64 => self.modulus() <= tol * reference,
        }
    }
}

/// `re + i·im` with arbitrary-precision rational parts.
///
/// `BigRational` keeps both parts in lowest terms with a positive
/// denominator, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

impl Scalar for GaussianRational {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn one() -> Self {
        GaussianRational::real(BigRational::one())
    }

    fn from_i64(v: i64) -> Self {
        GaussianRational::real(BigRational::from_integer(BigInt::from(v)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn from_c64(z: Complex64) -> Option<Self> {
        Some(GaussianRational { re: rational_from_f64(z.re)?, im: rational_from_f64(z.im)? })
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    fn modulus(&self) -> f64 {
        if self.im.is_zero() {
            return self.re.abs().to_f64().unwrap_or(f64::INFINITY);
        }
        let z = self.to_c64();
        z.norm()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(self.re * rhs.re);
        }
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational { re, im }
    }
}

impl Div for GaussianRational {
    type Output = Self;
    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero Gaussian rational");
        if rhs.im.is_zero() {
            return GaussianRational { re: self.re / &rhs.re, im: self.im / rhs.re };
        }
        let den = rhs.norm_sqr();
        let num = self * rhs.conj();
        GaussianRational { re: num.re / &den, im: num.im / den }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::F64;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn from_c64(z: Complex64) -> Option<Self> {
        Some(z)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}
