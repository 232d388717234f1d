//! Extended reals and complex scalars carrying lengths and angles.
//!
//! Infinity is a tag rather than an IEEE value so that `∞ + (−∞) = 0`
//! can be honoured. A scalar with an infinite real part always has a
//! zero imaginary part.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtError {
    #[error("sum has {0} infinite terms; at most two are allowed")]
    AssociativityViolation(usize),
    #[error("product of zero and an infinite value is undefined")]
    UndefinedProduct,
    #[error("NaN is not an extended real")]
    NotANumber,
    #[error("operation requires a finite argument")]
    InfiniteArgument,
}

/// A real number or one of the two signed infinities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtReal {
    Finite(f64),
    PlusInf,
    MinusInf,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    /// Wraps a float. IEEE infinities map to the tags; NaN is rejected.
    pub fn new(v: f64) -> Result<Self, ExtError> {
        if v.is_nan() {
            Err(ExtError::NotANumber)
        } else if v == f64::INFINITY {
            Ok(ExtReal::PlusInf)
        } else if v == f64::NEG_INFINITY {
            Ok(ExtReal::MinusInf)
        } else {
            Ok(ExtReal::Finite(v))
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Lossy view as an IEEE float.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::Finite(v) => v,
            ExtReal::PlusInf => f64::INFINITY,
            ExtReal::MinusInf => f64::NEG_INFINITY,
        }
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(self) -> i8 {
        match self {
            ExtReal::PlusInf => 1,
            ExtReal::MinusInf => -1,
            ExtReal::Finite(v) if v > 0.0 => 1,
            ExtReal::Finite(v) if v < 0.0 => -1,
            ExtReal::Finite(_) => 0,
        }
    }

    fn rank(self) -> i8 {
        match self {
            ExtReal::MinusInf => -1,
            ExtReal::Finite(_) => 0,
            ExtReal::PlusInf => 1,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.partial_cmp(b),
            _ => Some(self.rank().cmp(&other.rank())),
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(-v),
            ExtReal::PlusInf => ExtReal::MinusInf,
            ExtReal::MinusInf => ExtReal::PlusInf,
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        ext_add(self, rhs)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::PlusInf => write!(f, "+inf"),
            ExtReal::MinusInf => write!(f, "-inf"),
        }
    }
}

/// Total addition: `∞ + (−∞) = 0`, `±∞ + a = ±∞`.
pub fn ext_add(x: ExtReal, y: ExtReal) -> ExtReal {
    use ExtReal::*;
    match (x, y) {
        (Finite(a), Finite(b)) => Finite(a + b),
        (PlusInf, MinusInf) | (MinusInf, PlusInf) => Finite(0.0),
        (PlusInf, _) | (_, PlusInf) => PlusInf,
        (MinusInf, _) | (_, MinusInf) => MinusInf,
    }
}

/// Multiplication with sign rules; `0 · (±∞)` is undefined.
pub fn ext_mul(x: ExtReal, y: ExtReal) -> Result<ExtReal, ExtError> {
    use ExtReal::*;
    match (x, y) {
        (Finite(a), Finite(b)) => Ok(Finite(a * b)),
        _ => {
            let s = x.signum() * y.signum();
            match s {
                0 => Err(ExtError::UndefinedProduct),
                1 => Ok(PlusInf),
                _ => Ok(MinusInf),
            }
        }
    }
}

/// Complex scalar whose real part lives in the extended reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "ScalarRepr", try_from = "ScalarRepr")]
pub struct ExtScalar {
    re: ExtReal,
    im: f64,
}

impl ExtScalar {
    pub const ZERO: ExtScalar = ExtScalar { re: ExtReal::Finite(0.0), im: 0.0 };
    pub const PLUS_INF: ExtScalar = ExtScalar { re: ExtReal::PlusInf, im: 0.0 };
    pub const MINUS_INF: ExtScalar = ExtScalar { re: ExtReal::MinusInf, im: 0.0 };
    /// `πi`, the length of a whole projective line.
    pub const PI_I: ExtScalar = ExtScalar { re: ExtReal::Finite(0.0), im: PI };
    /// `(π/2)i`.
    pub const HALF_PI_I: ExtScalar = ExtScalar { re: ExtReal::Finite(0.0), im: PI / 2.0 };

    /// Builds a scalar, dropping the imaginary part when `re` is infinite.
    pub fn new(re: ExtReal, im: f64) -> Self {
        if re.is_infinite() {
            ExtScalar { re, im: 0.0 }
        } else {
            ExtScalar { re, im }
        }
    }

    pub fn real(v: f64) -> Self {
        ExtScalar { re: ExtReal::Finite(v), im: 0.0 }
    }

    pub fn from_parts(re: f64, im: f64) -> Self {
        ExtScalar { re: ExtReal::Finite(re), im }
    }

    pub fn finite(z: Complex64) -> Self {
        Self::from_parts(z.re, z.im)
    }

    pub fn re(self) -> ExtReal {
        self.re
    }

    pub fn im(self) -> f64 {
        self.im
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite()
    }

    /// Complex value of a finite scalar.
    pub fn to_complex(self) -> Option<Complex64> {
        self.re.finite().map(|r| Complex64::new(r, self.im))
    }

    /// Complex value with IEEE infinities for the infinite tags.
    pub fn to_complex_lossy(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im)
    }

    /// Multiplies by a real factor; `0 · ∞` is undefined.
    pub fn scale(self, k: f64) -> Result<Self, ExtError> {
        Ok(ExtScalar::new(ext_mul(self.re, ExtReal::Finite(k))?, self.im * k))
    }

    /// Distance to another scalar: complex modulus for finite pairs,
    /// zero for equal infinities, infinity otherwise.
    pub fn distance(self, other: ExtScalar) -> f64 {
        match (self.to_complex(), other.to_complex()) {
            (Some(a), Some(b)) => (a - b).norm(),
            (None, None) if self.re == other.re => 0.0,
            _ => f64::INFINITY,
        }
    }

    pub fn approx_eq(self, other: ExtScalar, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

impl From<f64> for ExtScalar {
    fn from(v: f64) -> Self {
        ExtScalar::new(ExtReal::new(v).unwrap_or(ExtReal::ZERO), 0.0)
    }
}

impl From<Complex64> for ExtScalar {
    fn from(z: Complex64) -> Self {
        ExtScalar::finite(z)
    }
}

impl Add for ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: ExtScalar) -> ExtScalar {
        ExtScalar::new(ext_add(self.re, rhs.re), self.im + rhs.im)
    }
}

impl Neg for ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        ExtScalar::new(-self.re, -self.im)
    }
}

impl Sub for ExtScalar {
    type Output = ExtScalar;
    fn sub(self, rhs: ExtScalar) -> ExtScalar {
        self + (-rhs)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    re: ReRepr,
    im: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ReRepr {
    Num(f64),
    Tag(String),
}

impl From<ExtScalar> for ScalarRepr {
    fn from(s: ExtScalar) -> Self {
        let re = match s.re {
            ExtReal::Finite(v) => ReRepr::Num(v),
            ExtReal::PlusInf => ReRepr::Tag("+inf".into()),
            ExtReal::MinusInf => ReRepr::Tag("-inf".into()),
        };
        ScalarRepr { re, im: s.im }
    }
}

impl TryFrom<ScalarRepr> for ExtScalar {
    type Error = String;
    fn try_from(r: ScalarRepr) -> Result<Self, String> {
        let re = match r.re {
            ReRepr::Num(v) => ExtReal::Finite(v),
            ReRepr::Tag(t) if t == "+inf" => ExtReal::PlusInf,
            ReRepr::Tag(t) if t == "-inf" => ExtReal::MinusInf,
            ReRepr::Tag(t) => return Err(format!("unknown extended real tag {t:?}")),
        };
        Ok(ExtScalar::new(re, r.im))
    }
}

/// Sums a list of scalars left to right. At most two terms may be infinite.
pub fn scalar_sum(terms: &[ExtScalar]) -> Result<ExtScalar, ExtError> {
    let infinite = terms.iter().filter(|t| !t.is_finite()).count();
    if infinite >= 3 {
        return Err(ExtError::AssociativityViolation(infinite));
    }
    Ok(terms.iter().fold(ExtScalar::ZERO, |acc, &t| acc + t))
}

pub fn ext_cosh(x: ExtScalar) -> ExtScalar {
    match x.to_complex() {
        Some(z) => z.cosh().into(),
        None => ExtScalar::PLUS_INF,
    }
}

pub fn ext_sinh(x: ExtScalar) -> ExtScalar {
    match x.to_complex() {
        Some(z) => z.sinh().into(),
        None => ExtScalar::new(x.re, 0.0),
    }
}

pub fn ext_tanh(x: ExtScalar) -> ExtScalar {
    match x.to_complex() {
        Some(z) => z.tanh().into(),
        None => ExtScalar::real(f64::from(x.re.signum())),
    }
}

/// Extended arccosine on the real axis.
///
/// `|x| ≤ 1` gives the real angle; `x > 1` gives `p/i` with `cosh p = x`;
/// `x < −1` gives `π − p/i`. Inputs within `1e-12` of `±1` are clamped.
pub fn ext_arccos(x: f64) -> ExtScalar {
    const CLAMP: f64 = 1e-12;
    if x.abs() <= 1.0 + CLAMP {
        ExtScalar::real(x.clamp(-1.0, 1.0).acos())
    } else if x > 0.0 {
        ExtScalar::from_parts(0.0, -x.acosh())
    } else {
        ExtScalar::from_parts(PI, (-x).acosh())
    }
}

/// Complex arccosine with the principal branch.
pub fn complex_arccos(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return ext_arccos(z.re).to_complex().unwrap_or_default();
    }
    z.acos()
}

/// Residuals of the links between circular and hyperbolic functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigLinkResiduals {
    pub sinh: f64,
    pub cosh: f64,
    pub tanh: f64,
}

impl TrigLinkResiduals {
    pub fn max(&self) -> f64 {
        self.sinh.max(self.cosh).max(self.tanh)
    }
}

/// Checks `sinh a = sin(ia)/i`, `cosh a = cos(ia)`, `tanh a = tan(ia)/i`.
pub fn connect_trig(x: ExtScalar) -> Result<TrigLinkResiduals, ExtError> {
    let a = x.to_complex().ok_or(ExtError::InfiniteArgument)?;
    let i = Complex64::i();
    let ia = i * a;
    Ok(TrigLinkResiduals {
        sinh: (a.sinh() - ia.sin() / i).norm(),
        cosh: (a.cosh() - ia.cos()).norm(),
        tanh: (a.tanh() - ia.tan() / i).norm(),
    })
}
