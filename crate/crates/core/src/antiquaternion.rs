//! Antiquaternions (split-quaternions) `w = a1 e1 + a2 e2 + a3 e3 + a4 e4`.
//!
//! Basis products: `e2^2 = -e1`, `e3^2 = e4^2 = e1`, `e2 e3 = e4`,
//! `e3 e4 = -e2`, `e4 e2 = e3`, and each reversed pair flips sign.
//!
//! The pseudonorm `a1^2 + a2^2 - a3^2 - a4^2` is signed and multiplicative.
//! Elements with zero pseudonorm are zero divisors and cannot be divided by.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::{Algebra, Element};
use crate::builtin;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Default relative tolerance for zero-divisor classification.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct AntiQuaternion {
    a: [f64; 4],
}

impl AntiQuaternion {
    pub const ZERO: Self = Self { a: [0.0; 4] };
    pub const E1: Self = Self {
        a: [1.0, 0.0, 0.0, 0.0],
    };
    pub const E2: Self = Self {
        a: [0.0, 1.0, 0.0, 0.0],
    };
    pub const E3: Self = Self {
        a: [0.0, 0.0, 1.0, 0.0],
    };
    pub const E4: Self = Self {
        a: [0.0, 0.0, 0.0, 1.0],
    };

    /// Rejects NaN and infinite components.
    pub fn new(a1: f64, a2: f64, a3: f64, a4: f64) -> Result<Self> {
        Self::from_array([a1, a2, a3, a4])
    }

    pub fn from_array(a: [f64; 4]) -> Result<Self> {
        match a.iter().find(|v| !v.is_finite()) {
            Some(&bad) => Err(Error::NonFinite(bad)),
            None => Ok(Self { a }),
        }
    }

    pub fn scalar(k: f64) -> Result<Self> {
        Self::new(k, 0.0, 0.0, 0.0)
    }

    /// Basis element `e_index`, 1-based.
    pub fn basis(index: usize) -> Option<Self> {
        match index {
            1 => Some(Self::E1),
            2 => Some(Self::E2),
            3 => Some(Self::E3),
            4 => Some(Self::E4),
            _ => None,
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        self.a
    }

    pub fn a1(self) -> f64 {
        self.a[0]
    }
    pub fn a2(self) -> f64 {
        self.a[1]
    }
    pub fn a3(self) -> f64 {
        self.a[2]
    }
    pub fn a4(self) -> f64 {
        self.a[3]
    }

    pub fn is_zero(self) -> bool {
        self.a.iter().all(|&v| v == 0.0)
    }

    /// True when the vector part (e2, e3, e4) vanishes.
    pub fn is_scalar(self) -> bool {
        self.a[1..].iter().all(|&v| v == 0.0)
    }

    pub fn is_finite(self) -> bool {
        self.a.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(self) -> f64 {
        self.a.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(self, k: f64) -> Self {
        Self {
            a: self.a.map(|v| k * v),
        }
    }

    pub fn conjugate(self) -> Self {
        let [a1, a2, a3, a4] = self.a;
        Self {
            a: [a1, -a2, -a3, -a4],
        }
    }

    /// `a1^2 + a2^2 - a3^2 - a4^2`; negative values are allowed.
    pub fn pseudonorm(self) -> f64 {
        let [a1, a2, a3, a4] = self.a;
        a1 * a1 + a2 * a2 - a3 * a3 - a4 * a4
    }

    /// Determinant norm, equal to the squared pseudonorm.
    pub fn norm(self) -> f64 {
        let p = self.pseudonorm();
        p * p
    }

    /// Matrix of `x -> self * x` in the basis `e1..e4`.
    pub fn left_mul_matrix(self) -> Matrix {
        let [a1, a2, a3, a4] = self.a;
        Matrix::from_rows(&[
            vec![a1, -a2, a3, a4],
            vec![a2, a1, a4, -a3],
            vec![a3, a4, a1, -a2],
            vec![a4, -a3, a2, a1],
        ])
    }

    /// Recovers the conjugate by solving `w * b = pseudonorm(w) e1` for `b`.
    pub fn conjugate_via_solve(self) -> Result<Self> {
        let lu = self.left_mul_matrix().lu();
        let rhs = [self.pseudonorm(), 0.0, 0.0, 0.0];
        let b = lu.solve(&rhs).ok_or(Error::SingularSystem)?;
        Self::from_array([b[0], b[1], b[2], b[3]])
    }

    /// Zero-divisor test `a1^2 + a2^2 = a3^2 + a4^2`, relative to `|w|^2`.
    pub fn is_zero_divisor(self, eps: f64) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let [a1, a2, a3, a4] = self.a;
        let euclid = a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4;
        Ok(self.pseudonorm().abs() <= eps * euclid)
    }

    /// False for zero and for zero divisors: `|p| <= 1e-9 (1 + max|a_i|^2)`.
    pub fn is_invertible(self) -> bool {
        let m = self.max_abs();
        self.pseudonorm().abs() > 1e-9 * (1.0 + m * m)
    }

    /// `conjugate(w) / pseudonorm(w)`, dividing by the signed pseudonorm.
    pub fn inverse(self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Self::from_array(self.conjugate().scale(1.0 / self.pseudonorm()).a)
    }

    /// Left quotient: the `x` with `divisor * x = self`.
    pub fn div_left(self, divisor: Self) -> Result<Self> {
        if !divisor.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let x = (divisor.conjugate() * self).scale(1.0 / divisor.pseudonorm());
        Self::from_array(x.a)
    }

    /// Right quotient: the `x` with `x * divisor = self`.
    pub fn div_right(self, divisor: Self) -> Result<Self> {
        if !divisor.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let x = (self * divisor.conjugate()).scale(1.0 / divisor.pseudonorm());
        Self::from_array(x.a)
    }

    /// The AH algebra handle used by [`to_generic`](Self::to_generic).
    pub fn algebra() -> Arc<Algebra> {
        Arc::new(builtin::antiquaternions())
    }

    pub fn to_generic(self) -> Element {
        self.to_generic_in(Self::algebra())
    }

    /// Like [`to_generic`](Self::to_generic) but reuses an existing handle.
    /// `alg` must be the AH algebra.
    pub fn to_generic_in(self, alg: Arc<Algebra>) -> Element {
        debug_assert_eq!(*alg, builtin::antiquaternions());
        Element::new(alg, self.a.to_vec()).expect("AH has dimension 4")
    }

    pub fn from_generic(x: &Element) -> Result<Self> {
        let ah = builtin::antiquaternions();
        if **x.algebra() != ah {
            return Err(Error::AlgebraMismatch {
                left: x.algebra().name().to_string(),
                right: ah.name().to_string(),
            });
        }
        let c = x.coeffs();
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl Add for AntiQuaternion {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut a = self.a;
        for (x, y) in a.iter_mut().zip(rhs.a) {
            *x += y;
        }
        Self { a }
    }
}

impl Sub for AntiQuaternion {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for AntiQuaternion {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            a: self.a.map(|v| -v),
        }
    }
}

impl Mul for AntiQuaternion {
    type Output = Self;

    /// Closed-form product.
    fn mul(self, rhs: Self) -> Self {
        let [a1, a2, a3, a4] = self.a;
        let [b1, b2, b3, b4] = rhs.a;
        Self {
            a: [
                a1 * b1 - a2 * b2 + a3 * b3 + a4 * b4,
                a1 * b2 + a2 * b1 - a3 * b4 + a4 * b3,
                a1 * b3 + a3 * b1 - a2 * b4 + a4 * b2,
                a1 * b4 + a4 * b1 + a2 * b3 - a3 * b2,
            ],
        }
    }
}

impl Mul<AntiQuaternion> for f64 {
    type Output = AntiQuaternion;

    fn mul(self, rhs: AntiQuaternion) -> AntiQuaternion {
        rhs.scale(self)
    }
}

impl TryFrom<[f64; 4]> for AntiQuaternion {
    type Error = Error;

    fn try_from(a: [f64; 4]) -> Result<Self> {
        Self::from_array(a)
    }
}

/// Prints `(a1, a2, a3, a4)` with shortest round-trip digits.
impl fmt::Display for AntiQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4] = self.a.map(format_real);
        write!(f, "({a1}, {a2}, {a3}, {a4})")
    }
}

/// Shortest representation that parses back to the same `f64`. Very large
/// and very small magnitudes switch to exponent form.
pub fn format_real(v: f64) -> String {
    let m = v.abs();
    if m != 0.0 && !(1e-5..1e16).contains(&m) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}
