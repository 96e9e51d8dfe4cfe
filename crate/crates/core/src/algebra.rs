//! Finite-dimensional hypercomplex algebras given by structural constants.
//!
//! Entry `(i, j)` of a [`MultiplicationTable`] is the product `e_i * e_j`,
//! stored as an exact sparse combination of basis elements. Basis indices
//! are 1-based in every public signature and in the text format.
//!
//! This is the generic (slow) path. The closed-form antiquaternion product
//! is checked against it.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Sparse combination `sum c_k e_k` with exact coefficients.
///
/// Terms are kept sorted by basis index with no zeros and no duplicates, so
/// structural equality is equality of combinations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BasisProduct {
    terms: Vec<(Rational64, usize)>,
}

impl BasisProduct {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `coeff * e_index`.
    pub fn term(coeff: Rational64, index: usize) -> Self {
        Self::from_terms([(coeff, index)])
    }

    pub fn basis(index: usize) -> Self {
        Self::term(Rational64::one(), index)
    }

    /// Collects terms in any order, merging duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational64, usize)>) -> Self {
        let mut out: Vec<(Rational64, usize)> = Vec::new();
        for (c, k) in terms {
            match out.iter_mut().find(|(_, idx)| *idx == k) {
                Some((acc, _)) => *acc += c,
                None => out.push((c, k)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        out.sort_by_key(|&(_, k)| k);
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(Rational64, usize)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, k: Rational64) -> Self {
        Self::from_terms(self.terms.iter().map(|&(c, i)| (c * k, i)))
    }

    pub fn coefficient(&self, index: usize) -> Rational64 {
        self.terms
            .iter()
            .find(|&&(_, k)| k == index)
            .map(|&(c, _)| c)
            .unwrap_or_else(Rational64::zero)
    }

    fn max_index(&self) -> usize {
        self.terms.iter().map(|&(_, k)| k).max().unwrap_or(0)
    }
}

impl fmt::Display for BasisProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, &(c, k)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "e{k}")?;
            } else if c == -Rational64::one() {
                write!(f, "-e{k}")?;
            } else {
                write!(f, "{c}*e{k}")?;
            }
        }
        Ok(())
    }
}

/// Full `dim x dim` grid of basis products with `e_1` as two-sided identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicationTable {
    dim: usize,
    entries: Vec<BasisProduct>,
}

impl MultiplicationTable {
    /// Builds a table from its rows, validating indices and the identity law.
    pub fn new(rows: Vec<Vec<BasisProduct>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidTable("dimension must be positive".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidTable(format!(
                    "row e{} has {} entries, expected {dim}",
                    i + 1,
                    row.len()
                )));
            }
            entries.extend(row);
        }
        let table = Self { dim, entries };
        table.validate()?;
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                let p = self.product(i, j);
                if p.max_index() > self.dim {
                    return Err(Error::InvalidTable(format!(
                        "e{i} * e{j} = {p} refers to a basis element beyond e{}",
                        self.dim
                    )));
                }
            }
        }
        for j in 1..=self.dim {
            if *self.product(1, j) != BasisProduct::basis(j) {
                return Err(Error::InvalidTable(format!(
                    "e1 is not a left identity: e1 * e{j} = {}",
                    self.product(1, j)
                )));
            }
            if *self.product(j, 1) != BasisProduct::basis(j) {
                return Err(Error::InvalidTable(format!(
                    "e1 is not a right identity: e{j} * e1 = {}",
                    self.product(j, 1)
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `e_i * e_j` (1-based). Panics on out-of-range indices.
    pub fn product(&self, i: usize, j: usize) -> &BasisProduct {
        assert!(
            (1..=self.dim).contains(&i) && (1..=self.dim).contains(&j),
            "basis index out of range"
        );
        &self.entries[(i - 1) * self.dim + (j - 1)]
    }

    /// Returns a copy with entry `(i, j)` replaced. The result is revalidated,
    /// so edits to the identity row or column are rejected.
    pub fn with_entry(&self, i: usize, j: usize, value: BasisProduct) -> Result<Self> {
        let mut t = self.clone();
        t.entries[(i - 1) * self.dim + (j - 1)] = value;
        t.validate()?;
        Ok(t)
    }

    /// Bilinear product of exact coefficient vectors.
    pub fn mul_exact(&self, x: &[Rational64], y: &[Rational64]) -> Vec<Rational64> {
        assert!(x.len() == self.dim && y.len() == self.dim);
        let mut out = vec![Rational64::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for &(c, k) in self.product(i + 1, j + 1).terms() {
                    out[k - 1] += xi * yj * c;
                }
            }
        }
        out
    }

    /// Bilinear product of floating-point coefficient vectors.
    pub fn mul_f64(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        assert!(x.len() == self.dim && y.len() == self.dim);
        let mut out = vec![0.0; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                for &(c, k) in self.product(i + 1, j + 1).terms() {
                    out[k - 1] += xi * yj * rational_to_f64(c);
                }
            }
        }
        out
    }

    /// Exact left-regular matrix: entry `(k, j)` is the `e_k` coefficient of `w * e_j`.
    #[allow(clippy::needless_range_loop)]
    pub fn left_mul_matrix_exact(&self, w: &[Rational64]) -> Vec<Vec<Rational64>> {
        assert_eq!(w.len(), self.dim);
        let mut m = vec![vec![Rational64::zero(); self.dim]; self.dim];
        for (i, wi) in w.iter().enumerate() {
            for j in 0..self.dim {
                for &(c, k) in self.product(i + 1, j + 1).terms() {
                    m[k - 1][j] += wi * c;
                }
            }
        }
        m
    }

    /// Parses the line-oriented table text format.
    ///
    /// ```text
    /// dim 2
    /// e2 * e2 = -e1
    /// ```
    ///
    /// Products involving `e1` may be omitted. Blank lines and lines starting
    /// with `#` are ignored.
    pub fn parse(src: &str) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut grid: Vec<Option<BasisProduct>> = Vec::new();

        for (n, raw) in src.lines().enumerate() {
            let line_no = n + 1;
            let err = |message: String| Error::TableParse {
                line: line_no,
                message,
            };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some(d) = dim else {
                let rest = line
                    .strip_prefix("dim")
                    .ok_or_else(|| err(format!("expected `dim <n>`, found `{line}`")))?;
                let d: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("invalid dimension `{}`", rest.trim())))?;
                if d == 0 {
                    return Err(err("dimension must be positive".into()));
                }
                dim = Some(d);
                grid = vec![None; d * d];
                continue;
            };

            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `e<i> * e<j> = ...`, found `{line}`")))?;
            let (a, b) = lhs.split_once('*').ok_or_else(|| {
                err(format!(
                    "expected `e<i> * e<j>` before `=`, found `{}`",
                    lhs.trim()
                ))
            })?;
            let i = parse_basis(a.trim(), d).map_err(&err)?;
            let j = parse_basis(b.trim(), d).map_err(&err)?;
            let value = parse_combination(rhs, d).map_err(&err)?;
            let slot = &mut grid[(i - 1) * d + (j - 1)];
            if slot.is_some() {
                return Err(err(format!("duplicate product e{i} * e{j}")));
            }
            *slot = Some(value);
        }

        let d = dim.ok_or(Error::TableParse {
            line: src.lines().count().max(1),
            message: "missing `dim <n>` header".into(),
        })?;
        let mut rows = Vec::with_capacity(d);
        for i in 1..=d {
            let mut row = Vec::with_capacity(d);
            for j in 1..=d {
                let entry = match grid[(i - 1) * d + (j - 1)].take() {
                    Some(p) => p,
                    None if i == 1 => BasisProduct::basis(j),
                    None if j == 1 => BasisProduct::basis(i),
                    None => {
                        return Err(Error::InvalidTable(format!("missing product e{i} * e{j}")))
                    }
                };
                row.push(entry);
            }
            rows.push(row);
        }
        Self::new(rows)
    }

    /// Renders every product (identity products included) in the text format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MultiplicationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                writeln!(f, "e{i} * e{j} = {}", self.product(i, j))?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiplicationTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

fn parse_basis(s: &str, dim: usize) -> std::result::Result<usize, String> {
    let idx = s
        .strip_prefix('e')
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or_else(|| format!("expected basis element `e<k>`, found `{s}`"))?;
    if idx == 0 || idx > dim {
        return Err(format!("basis element e{idx} out of range 1..={dim}"));
    }
    Ok(idx)
}

/// `e3`, `-e3`, `3/2*e3`, `-1/2*e3`, joined by `+` (a bare `-` separator is
/// also read as adding a negated term). `0` is the empty combination.
fn parse_combination(s: &str, dim: usize) -> std::result::Result<BasisProduct, String> {
    let s = s.trim();
    if s == "0" {
        return Ok(BasisProduct::zero());
    }
    if s.is_empty() {
        return Err("empty right-hand side".into());
    }
    let mut terms = Vec::new();
    let mut rest = s;
    let mut first = true;
    while !rest.is_empty() {
        let mut negate = false;
        if !first {
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                negate = true;
            } else {
                return Err(format!("expected `+` between terms, found `{rest}`"));
            }
        }
        first = false;
        rest = rest.trim_start();
        if rest.is_empty() {
            return Err("dangling operator at end of line".into());
        }
        let end = rest
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map_or(rest.len(), |(p, _)| p);
        let (tok, tail) = rest.split_at(end);
        let (mut coeff, idx) = parse_term(tok.trim(), dim)?;
        if negate {
            coeff = -coeff;
        }
        terms.push((coeff, idx));
        rest = tail;
    }
    Ok(BasisProduct::from_terms(terms))
}

fn parse_term(tok: &str, dim: usize) -> std::result::Result<(Rational64, usize), String> {
    if let Some((c, b)) = tok.split_once('*') {
        let coeff = c
            .trim()
            .parse::<Rational64>()
            .map_err(|_| format!("invalid rational coefficient `{}`", c.trim()))?;
        return Ok((coeff, parse_basis(b.trim(), dim)?));
    }
    match tok.strip_prefix('-') {
        Some(b) => Ok((-Rational64::one(), parse_basis(b.trim(), dim)?)),
        None => Ok((Rational64::one(), parse_basis(tok, dim)?)),
    }
}

pub(crate) fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A named algebra over a validated table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    name: String,
    table: MultiplicationTable,
}

impl Algebra {
    pub fn new(name: impl Into<String>, table: MultiplicationTable) -> Self {
        Self {
            name: name.into(),
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &MultiplicationTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    /// Exhaustive exact check of `(e_i e_j) e_k = e_i (e_j e_k)`.
    /// Returns the first failing 1-based triple, or `None` if associative.
    pub fn check_associativity(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![Rational64::zero(); n];
            v[i - 1] = Rational64::one();
            v
        };
        for i in 1..=n {
            for j in 1..=n {
                let ij = self.table.mul_exact(&unit(i), &unit(j));
                for k in 1..=n {
                    let left = self.table.mul_exact(&ij, &unit(k));
                    let jk = self.table.mul_exact(&unit(j), &unit(k));
                    let right = self.table.mul_exact(&unit(i), &jk);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Checks `e_i e_j = e_j e_i`; returns the first failing pair with `i < j`.
    pub fn check_commutativity(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .find(|&(i, j)| self.table.product(i, j) != self.table.product(j, i))
    }
}

/// Structural equality of tables; term order inside entries is irrelevant.
pub fn table_equal(a: &MultiplicationTable, b: &MultiplicationTable) -> bool {
    a == b
}

/// An element of an algebra: real coefficients of `e_1 .. e_n`.
#[derive(Clone, Debug)]
pub struct Element {
    algebra: Arc<Algebra>,
    coeffs: Vec<f64>,
}

impl Element {
    pub fn new(algebra: Arc<Algebra>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: coeffs.len(),
            });
        }
        Ok(Self { algebra, coeffs })
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let n = algebra.dim();
        Self {
            algebra,
            coeffs: vec![0.0; n],
        }
    }

    /// The basis element `e_index` (1-based). Panics if out of range.
    pub fn basis(algebra: Arc<Algebra>, index: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[index - 1] = 1.0;
        e
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    fn same_algebra(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra.name().to_string(),
                right: other.algebra.name().to_string(),
            })
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            algebra: self.algebra.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, k: f64) -> Element {
        Self {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|a| k * a).collect(),
        }
    }

    /// Table product `sum_{i,j} x_i y_j gamma_ij^k`.
    pub fn mul_table(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        Ok(Self {
            algebra: self.algebra.clone(),
            coeffs: self.algebra.table().mul_f64(&self.coeffs, &other.coeffs),
        })
    }

    /// Matrix of `x -> self * x`; column `j` holds the coefficients of `self * e_j`.
    pub fn left_mul_matrix(&self) -> Matrix {
        let table = self.algebra.table();
        let n = table.dim();
        let mut m = Matrix::zeros(n);
        for (i, &wi) in self.coeffs.iter().enumerate() {
            for j in 0..n {
                for &(c, k) in table.product(i + 1, j + 1).terms() {
                    m[(k - 1, j)] += wi * rational_to_f64(c);
                }
            }
        }
        m
    }

    /// Norm as the determinant of the left-regular matrix.
    pub fn norm_det(&self) -> f64 {
        self.left_mul_matrix().determinant()
    }

    pub fn is_norm_zero(&self) -> bool {
        let m = self.left_mul_matrix();
        linalg::is_determinant_zero(m.determinant(), &m)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other).is_ok() && self.coeffs == other.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use proptest::prelude::*;

    fn ah() -> Arc<Algebra> {
        Arc::new(builtin::antiquaternions())
    }

    fn el(alg: &Arc<Algebra>, c: &[f64]) -> Element {
        Element::new(alg.clone(), c.to_vec()).unwrap()
    }

    #[test]
    fn add_and_scale() {
        let a = ah();
        let s = el(&a, &[1., 2., 3., 4.])
            .add(&el(&a, &[4., 3., 2., 1.]))
            .unwrap();
        assert_eq!(s.coeffs(), &[5., 5., 5., 5.]);
        let x = el(&a, &[1., -2., 0.5, 7.]);
        assert_eq!(x.add(&Element::zero(a.clone())).unwrap(), x);

        let c = Arc::new(builtin::complex());
        let z = el(&c, &[1., 0.]).add(&el(&c, &[0., 1.])).unwrap();
        assert_eq!(z.coeffs(), &[1., 1.]);

        assert_eq!(
            el(&a, &[1., 1., 1., 1.]).scale(2.0).coeffs(),
            &[2., 2., 2., 2.]
        );
        assert_eq!(x.scale(0.0), Element::zero(a.clone()));
        assert_eq!(
            el(&a, &[1., 2., 3., 4.]).scale(-1.0).coeffs(),
            &[-1., -2., -3., -4.]
        );
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = ah();
        let h = Arc::new(builtin::quaternions());
        let x = Element::basis(a, 2);
        let y = Element::basis(h, 2);
        assert!(matches!(x.add(&y), Err(Error::AlgebraMismatch { .. })));
        assert!(matches!(
            x.mul_table(&y),
            Err(Error::AlgebraMismatch { .. })
        ));
    }

    #[test]
    fn equal_algebras_from_distinct_handles_are_compatible() {
        let x = Element::basis(ah(), 2);
        let y = Element::basis(ah(), 3);
        assert_eq!(x.mul_table(&y).unwrap().coeffs(), &[0., 0., 0., 1.]);
    }

    #[test]
    fn wrong_length_is_rejected() {
        assert_eq!(
            Element::new(ah(), vec![1.0, 2.0]).unwrap_err(),
            Error::DimensionMismatch {
                expected: 4,
                got: 2
            }
        );
    }

    #[test]
    fn table_products() {
        let a = ah();
        let e2 = Element::basis(a.clone(), 2);
        let e3 = Element::basis(a.clone(), 3);
        assert_eq!(e2.mul_table(&e3).unwrap().coeffs(), &[0., 0., 0., 1.]);
        let x = el(&a, &[0.3, -1.25, 4.0, 2.5]);
        assert_eq!(Element::basis(a.clone(), 1).mul_table(&x).unwrap(), x);
        // (e1 + e2)(e1 + e3) = e1 + e3 + e2 + e2 e3 = e1 + e2 + e3 + e4
        let p = el(&a, &[1., 1., 0., 0.])
            .mul_table(&el(&a, &[1., 0., 1., 0.]))
            .unwrap();
        assert_eq!(p.coeffs(), &[1., 1., 1., 1.]);
    }

    #[test]
    fn left_regular_matrix() {
        let a = ah();
        let (a1, a2, a3, a4) = (1.5, -2.0, 0.25, 3.0);
        let m = el(&a, &[a1, a2, a3, a4]).left_mul_matrix();
        let expected = Matrix::from_rows(&[
            vec![a1, -a2, a3, a4],
            vec![a2, a1, a4, -a3],
            vec![a3, a4, a1, -a2],
            vec![a4, -a3, a2, a1],
        ]);
        assert_eq!(m, expected);
        assert_eq!(m.column(1), vec![-a2, a1, a4, -a3]);

        assert_eq!(
            Element::basis(a.clone(), 1).left_mul_matrix(),
            Matrix::identity(4)
        );

        let m3 = Element::basis(a, 3).left_mul_matrix();
        assert_eq!(m3.column(0), vec![0., 0., 1., 0.]);
        assert_eq!(m3.column(2), vec![1., 0., 0., 0.]);
    }

    #[test]
    fn determinant_norm() {
        let a = ah();
        assert_eq!(Element::basis(a.clone(), 1).norm_det(), 1.0);
        let x = el(&a, &[1., 1., 1., 1.]);
        assert!(x.norm_det().abs() < 1e-12);
        assert!(x.is_norm_zero());
        let y = el(&a, &[1., 2., 0.5, -1.]);
        let closed = (1.0f64 + 4.0 - 0.25 - 1.0).powi(2);
        assert!((y.norm_det() - closed).abs() < 1e-12 * closed);
        assert!(!y.is_norm_zero());
    }

    #[test]
    fn structural_checks() {
        let a = builtin::antiquaternions();
        assert_eq!(a.check_associativity(), None);
        assert_eq!(builtin::quaternions().check_associativity(), None);
        assert_eq!(a.check_commutativity(), Some((2, 3)));
        assert_eq!(builtin::double_numbers().check_commutativity(), None);
        assert_eq!(builtin::complex().check_commutativity(), None);

        let negated = a.table().product(2, 3).scaled(-Rational64::one());
        let mutated = Algebra::new("AH*", a.table().with_entry(2, 3, negated).unwrap());
        assert!(mutated.check_associativity().is_some());
    }

    #[test]
    fn table_equality() {
        let a = builtin::antiquaternions();
        let h = builtin::quaternions();
        assert!(table_equal(a.table(), a.table()));
        assert!(!table_equal(a.table(), h.table()));
        assert_ne!(a.table().product(3, 3), h.table().product(3, 3));

        let r = |n| Rational64::from_integer(n);
        let ab = BasisProduct::from_terms([(r(2), 3), (r(-1), 1)]);
        let ba = BasisProduct::from_terms([(r(-1), 1), (r(2), 3)]);
        let t1 = a.table().with_entry(4, 4, ab).unwrap();
        let t2 = a.table().with_entry(4, 4, ba).unwrap();
        assert!(table_equal(&t1, &t2));
    }

    #[test]
    fn identity_is_validated() {
        let r = BasisProduct::basis;
        let bad = MultiplicationTable::new(vec![vec![r(1), r(1)], vec![r(2), r(1)]]);
        assert!(matches!(bad, Err(Error::InvalidTable(_))));
        let out_of_range = MultiplicationTable::new(vec![vec![r(1), r(2)], vec![r(2), r(3)]]);
        assert!(matches!(out_of_range, Err(Error::InvalidTable(_))));
        let ragged = MultiplicationTable::new(vec![vec![r(1), r(2)], vec![r(2)]]);
        assert!(ragged.is_err());
        assert!(MultiplicationTable::new(vec![]).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        for alg in [
            builtin::antiquaternions(),
            builtin::quaternions(),
            builtin::complex(),
            builtin::double_numbers(),
        ] {
            let text = alg.table().to_text();
            assert_eq!(MultiplicationTable::parse(&text).unwrap(), *alg.table());
        }
    }

    #[test]
    fn text_format_fills_identity_and_reads_rationals() {
        let t: MultiplicationTable = "# comment\ndim 3\n\ne2 * e2 = -e1\ne2*e3 = 1/2*e3 - e1\ne3 * e2 = 0\ne3 * e3 = -3/4*e2 + e3 + e1\n"
            .parse()
            .unwrap();
        let r = |n, d| Rational64::new(n, d);
        assert_eq!(*t.product(1, 3), BasisProduct::basis(3));
        assert_eq!(*t.product(2, 1), BasisProduct::basis(2));
        assert_eq!(
            *t.product(2, 3),
            BasisProduct::from_terms([(r(-1, 1), 1), (r(1, 2), 3)])
        );
        assert!(t.product(3, 2).is_zero());
        assert_eq!(
            *t.product(3, 3),
            BasisProduct::from_terms([(r(1, 1), 1), (r(-3, 4), 2), (r(1, 1), 3)])
        );
        assert_eq!(t.product(2, 3).to_string(), "-e1 + 1/2*e3");
        assert_eq!(MultiplicationTable::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn text_format_errors_carry_line_numbers() {
        let line_of = |src: &str| match MultiplicationTable::parse(src) {
            Err(Error::TableParse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of("dim 2\ne2 * e2 = -e1\nbogus line\n"), 3);
        assert_eq!(line_of("dime 2\n"), 1);
        assert_eq!(line_of("dim 2\ne2 * e3 = e1\n"), 2);
        assert_eq!(line_of("dim 2\ne2 * e2 = -e1\ne2 * e2 = e1\n"), 3);
        assert_eq!(line_of("dim 2\ne2 * e2 = x/y*e1\n"), 2);
        assert_eq!(line_of("dim 2\ne2 * e2 = \n"), 2);
        assert_eq!(line_of("dim 2\ne2 * e2 = e1 +\n"), 2);
        assert!(matches!(
            MultiplicationTable::parse("dim 2\n"),
            Err(Error::InvalidTable(_))
        ));
        assert!(matches!(
            MultiplicationTable::parse(""),
            Err(Error::TableParse { .. })
        ));
    }

    fn coeffs4() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-10.0f64..10.0, 4)
    }

    fn unit_coeffs4() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-1.0f64..1.0, 4)
    }

    proptest! {
        #[test]
        fn identity_law_holds_exactly(c in coeffs4(), c2 in proptest::collection::vec(-10.0f64..10.0, 2)) {
            for alg in [builtin::antiquaternions(), builtin::quaternions()] {
                let a = Arc::new(alg);
                let x = el(&a, &c);
                let e1 = Element::basis(a.clone(), 1);
                prop_assert_eq!(e1.mul_table(&x).unwrap(), x.clone());
                prop_assert_eq!(x.mul_table(&e1).unwrap(), x);
            }
            for alg in [builtin::complex(), builtin::double_numbers()] {
                let a = Arc::new(alg);
                let x = el(&a, &c2);
                let e1 = Element::basis(a.clone(), 1);
                prop_assert_eq!(e1.mul_table(&x).unwrap(), x.clone());
                prop_assert_eq!(x.mul_table(&e1).unwrap(), x);
            }
        }

        #[test]
        fn bilinearity(
            x in unit_coeffs4(), y in unit_coeffs4(), z in unit_coeffs4(),
            k1 in -1.0f64..1.0, k2 in -1.0f64..1.0,
        ) {
            let a = ah();
            let (x, y, z) = (el(&a, &x), el(&a, &y), el(&a, &z));
            let lhs = x.mul_table(&y.add(&z).unwrap()).unwrap();
            let rhs = x.mul_table(&y).unwrap().add(&x.mul_table(&z).unwrap()).unwrap();
            for (l, r) in lhs.coeffs().iter().zip(rhs.coeffs()) {
                prop_assert!((l - r).abs() <= 1e-12);
            }
            let lhs = x.scale(k1).mul_table(&y.scale(k2)).unwrap();
            let rhs = x.mul_table(&y).unwrap().scale(k1 * k2);
            for (l, r) in lhs.coeffs().iter().zip(rhs.coeffs()) {
                prop_assert!((l - r).abs() <= 1e-12);
            }
        }
    }
}
