//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Poly`] lives in a fixed ambient dimension `n` and stores its terms in a
//! `BTreeMap` keyed by [`Exponent`], ordered graded-lexicographically. Zero
//! coefficients are never stored, so structurally equal values are equal
//! polynomials and vice versa.
//!
//! Variables are indexed from zero in this API (`x1` is index 0). The printed
//! form uses the one-based names `x1..xn`.
//!
//! [`LaurentScalar`] and [`TorusPoly`] extend the coefficient ring by Laurent
//! monomials in formal torus parameters `s_1..s_{n-1}`, which is what formal
//! conjugation by a generic diagonal torus element needs.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. Always in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Shorthand for building an integer-valued [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for building `num/den` as a [`Rat`]. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected {expected} substitution images, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
}

/// Exponent vector `(α_1, …, α_n)` of the monomial `x^α`.
///
/// Ordered graded-lexicographically: first by total degree, then
/// lexicographically with `x1 > x2 > … > xn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    /// The exponent of the single variable `x_{index+1}`.
    pub fn unit(n: usize, index: usize) -> Self {
        let mut e = vec![0; n];
        e[index] = 1;
        Exponent(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.dim(), other.dim());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl std::ops::Index<usize> for Exponent {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of length `n` with total degree at most `dmax`, in
/// ascending graded-lex order.
pub fn exponents_up_to(n: usize, dmax: u32) -> Vec<Exponent> {
    fn fill(prefix: &mut Vec<u32>, n: usize, remaining: u32, out: &mut Vec<Exponent>) {
        if prefix.len() == n {
            out.push(Exponent(prefix.clone()));
            return;
        }
        for a in 0..=remaining {
            prefix.push(a);
            fill(prefix, n, remaining - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(n), n, dmax, &mut out);
    out.sort();
    out
}

/// A polynomial in `n` variables over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rat::one())
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        Self::monomial(Exponent::zeros(dim), c)
    }

    /// The variable `x_{index+1}`.
    pub fn var(dim: usize, index: usize) -> Self {
        Self::monomial(Exponent::unit(dim, index), Rat::one())
    }

    pub fn monomial(exp: Exponent, c: Rat) -> Self {
        let dim = exp.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { dim, terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (Exponent, Rat)>,
    ) -> Result<Self, PolyError> {
        let mut p = Poly::zero(dim);
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(PolyError::DimensionMismatch { left: dim, right: e.dim() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rat)> + ExactSizeIterator {
        self.terms.iter()
    }

    /// The unique term, if the polynomial is a nonzero monomial.
    pub fn single_term(&self) -> Option<(&Exponent, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn coefficient(&self, exp: &Exponent) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Exponent::total_degree)
    }

    fn check_dim(&self, other: &Poly) -> Result<(), PolyError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(PolyError::DimensionMismatch { left: self.dim, right: other.dim })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c·x^exp`.
    pub fn mul_monomial(&self, exp: &Exponent, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, a)| (e.mul(exp), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `x_{index+1}`.
    pub fn partial(&self, index: usize) -> Result<Poly, PolyError> {
        if index >= self.dim {
            return Err(PolyError::IndexOutOfRange { index, dim: self.dim });
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let a = e.0[index];
            if a == 0 {
                continue;
            }
            let mut lowered = e.0.clone();
            lowered[index] -= 1;
            // distinct exponents stay distinct after lowering one coordinate
            terms.insert(Exponent(lowered), c * rat(i64::from(a)));
        }
        Ok(Poly { dim: self.dim, terms })
    }

    /// Evaluates `self` at `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        if images.len() != self.dim {
            return Err(PolyError::WrongArity { expected: self.dim, got: images.len() });
        }
        let target = images.first().map_or(self.dim, Poly::dim);
        for img in images {
            if img.dim != target {
                return Err(PolyError::DimensionMismatch { left: target, right: img.dim });
            }
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|g| vec![Poly::one(g.dim)]).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &a) in e.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= a as usize {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                term = &term * &cache[a as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

/// Determinant by cofactor expansion along rows, memoized on the set of
/// remaining columns.
pub fn det(matrix: &[Vec<Poly>]) -> Result<Poly, PolyError> {
    let size = matrix.len();
    if matrix.iter().any(|row| row.len() != size) {
        return Err(PolyError::NotSquare);
    }
    if size == 0 {
        return Err(PolyError::NotSquare);
    }
    if size > 16 {
        return Err(PolyError::IndexOutOfRange { index: size, dim: 16 });
    }
    let dim = matrix[0][0].dim();
    for entry in matrix.iter().flatten() {
        if entry.dim() != dim {
            return Err(PolyError::DimensionMismatch { left: dim, right: entry.dim() });
        }
    }

    fn minor(matrix: &[Vec<Poly>], cols: u32, memo: &mut HashMap<u32, Poly>, dim: usize) -> Poly {
        if cols == 0 {
            return Poly::one(dim);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let row = matrix.len() - cols.count_ones() as usize;
        let mut acc = Poly::zero(dim);
        let mut sign_positive = true;
        for col in 0..matrix.len() {
            if cols & (1 << col) == 0 {
                continue;
            }
            let entry = &matrix[row][col];
            if !entry.is_zero() {
                let sub = minor(matrix, cols & !(1 << col), memo, dim);
                let prod = entry * &sub;
                acc = if sign_positive { &acc + &prod } else { &acc - &prod };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    let mut memo = HashMap::new();
    Ok(minor(matrix, (1u32 << size) - 1, &mut memo, dim))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics on dimension mismatch; use the `checked_*` method to get a `Result`.
        impl $trait<&Poly> for &Poly {
            type Output = Poly;

            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial dimension mismatch")
            }
        }

        impl $trait<Poly> for Poly {
            type Output = Poly;

            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

/// Writes `x1^2*x3`-style factors for a nonconstant exponent.
pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, exp: &Exponent) -> fmt::Result {
    let mut first = true;
    for (i, &a) in exp.entries().iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if a == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, a)?;
        }
    }
    Ok(())
}

/// Prints terms from highest to lowest in graded-lex order, e.g.
/// `3*x1^2*x3 - 1/2*x2 + 1`. The output is accepted by the CLI parser.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if e.is_zero() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[n={}]({})", self.dim, self)
    }
}

/// A Laurent polynomial in the torus parameters `s_1..s_k` with rational
/// coefficients. Exponent keys are signed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentScalar {
    params: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentScalar {
    pub fn zero(params: usize) -> Self {
        LaurentScalar { params, terms: BTreeMap::new() }
    }

    pub fn constant(params: usize, c: Rat) -> Self {
        Self::monomial(vec![0; params], c)
    }

    /// `c · s^exps`.
    pub fn monomial(exps: Vec<i64>, c: Rat) -> Self {
        let params = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentScalar { params, terms }
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value if no parameter appears.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&a| a == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exps: Vec<i64>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero(self.params);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (i, &a) in e.iter().enumerate() {
                if a != 0 {
                    write!(f, "*s{}^{}", i + 1, a)?;
                }
            }
        }
        Ok(())
    }
}

/// A polynomial in `x_1..x_n` whose coefficients are [`LaurentScalar`]s.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusPoly {
    dim: usize,
    params: usize,
    terms: BTreeMap<Exponent, LaurentScalar>,
}

impl TorusPoly {
    pub fn zero(dim: usize, params: usize) -> Self {
        TorusPoly { dim, params, terms: BTreeMap::new() }
    }

    /// Embeds a rational polynomial as parameter-free coefficients.
    pub fn from_poly(p: &Poly, params: usize) -> Self {
        TorusPoly {
            dim: p.dim(),
            params,
            terms: p
                .terms()
                .map(|(e, c)| (e.clone(), LaurentScalar::constant(params, c.clone())))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exp: Exponent, c: LaurentScalar) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&exp) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(exp, merged);
        }
    }

    pub fn scale(&self, c: &LaurentScalar) -> TorusPoly {
        let mut out = TorusPoly::zero(self.dim, self.params);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.mul(c));
        }
        out
    }

    /// Collapses to a [`Poly`] when every coefficient is parameter-free.
    pub fn to_poly(&self) -> Option<Poly> {
        let mut out = Poly::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.as_constant()?);
        }
        Some(out)
    }
}

impl fmt::Display for TorusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if !e.is_zero() {
                f.write_str("*")?;
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}
