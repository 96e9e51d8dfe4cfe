//! Anticommutative doubling `D(A, B)` of two 2-dimensional systems.
//!
//! With `A = {e1, e2}` and `B = {f1, f2}`, the doubled basis is
//! `(e1 f1, e2 f1, e1 f2, e2 f2)`, renamed `(e1, e2, e3, e4)`. Same-system
//! factors multiply by their seed tables, identities commute with everything,
//! and moving `e2` past `f2` costs a sign: `f2 e2 = -e2 f2`.

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::algebra::{Algebra, BasisProduct, MultiplicationTable};
use crate::error::{Error, Result};

/// A 2-dimensional system `{1, u}` with `u * u = square_sign * 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed2 {
    name: String,
    square_sign: Rational64,
}

impl Seed2 {
    pub fn new(name: impl Into<String>, square_sign: Rational64) -> Self {
        Self {
            name: name.into(),
            square_sign,
        }
    }

    /// Extracts a seed from a 2-dimensional algebra whose second basis element
    /// squares to a multiple of the identity.
    pub fn from_algebra(alg: &Algebra) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidSeed {
            name: alg.name().to_string(),
            reason,
        };
        if alg.dim() != 2 {
            return Err(invalid(format!("dimension is {}, expected 2", alg.dim())));
        }
        let sq = alg.table().product(2, 2);
        if sq.terms().iter().any(|&(_, k)| k != 1) {
            return Err(invalid(format!("e2 * e2 = {sq} is not a multiple of e1")));
        }
        Ok(Self::new(alg.name(), sq.coefficient(1)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn square_sign(&self) -> Rational64 {
        self.square_sign
    }

    /// Product of 0-based seed basis indices as `(coefficient, index)`.
    fn product(&self, i: usize, j: usize) -> (Rational64, usize) {
        match (i, j) {
            (0, k) | (k, 0) => (Rational64::one(), k),
            _ => (self.square_sign, 0),
        }
    }

    pub fn to_algebra(&self) -> Algebra {
        let rows = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| {
                        let (c, k) = self.product(i, j);
                        BasisProduct::term(c, k + 1)
                    })
                    .collect()
            })
            .collect();
        let table = MultiplicationTable::new(rows).expect("seed table has identity e1");
        Algebra::new(self.name.clone(), table)
    }
}

/// Complex numbers: `e2 * e2 = -e1`.
pub fn builtin_complex() -> Seed2 {
    Seed2::new("C", -Rational64::one())
}

/// Double numbers: `e2 * e2 = e1`.
pub fn builtin_double_numbers() -> Seed2 {
    Seed2::new("W", Rational64::one())
}

/// Builds the 4-dimensional table of `D(a, b)`.
pub fn double_anticommutative(a: &Seed2, b: &Seed2, name: impl Into<String>) -> Algebra {
    // doubled index = e-part + 2 * f-part, both 0-based
    let split = |n: usize| (n % 2, n / 2);
    let rows = (0..4)
        .map(|x| {
            (0..4)
                .map(|y| {
                    let (i, p) = split(x);
                    let (j, q) = split(y);
                    // (e_i f_p)(e_j f_q) = sign * (e_i e_j)(f_p f_q)
                    let sign = if p == 1 && j == 1 {
                        -Rational64::one()
                    } else {
                        Rational64::one()
                    };
                    let (ce, ke) = a.product(i, j);
                    let (cf, kf) = b.product(p, q);
                    let c = sign * ce * cf;
                    if c.is_zero() {
                        BasisProduct::zero()
                    } else {
                        BasisProduct::term(c, ke + 2 * kf + 1)
                    }
                })
                .collect()
        })
        .collect();
    let table = MultiplicationTable::new(rows).expect("doubled table keeps e1 as identity");
    Algebra::new(name, table)
}

/// [`double_anticommutative`] on 2-dimensional algebras, validating them as seeds.
pub fn double_algebras(a: &Algebra, b: &Algebra, name: impl Into<String>) -> Result<Algebra> {
    Ok(double_anticommutative(
        &Seed2::from_algebra(a)?,
        &Seed2::from_algebra(b)?,
        name,
    ))
}
