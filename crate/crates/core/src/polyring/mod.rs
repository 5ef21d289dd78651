//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded-lexicographic order with `x1 > x2 > ... > xn`. Iteration is
//! therefore ascending; the canonical text form lists terms descending.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::{infer_ring, parse_poly};

pub type Rational = num_rational::BigRational;

/// Aliases accepted for the first four variables of any ring with n <= 4.
const ALIASES: [&str; 4] = ["x", "y", "z", "t"];

/// The polynomial ring Q[x1..xn], identified by its ordered variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Arc<[String]>,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        for (i, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            match chars.next() {
                Some(c) if c.is_ascii_alphabetic() => {}
                _ => {
                    return Err(Error::InvalidRing(format!(
                        "variable name `{name}` must start with a letter"
                    )))
                }
            }
            if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidRing(format!("invalid variable name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Ring { names: names.into() })
    }

    /// The ring with variables `x1, ..., xn`.
    pub fn standard(n: usize) -> Result<Self> {
        Ring::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, j: usize) -> &str {
        &self.names[j]
    }

    /// Resolves a variable name, falling back to the `x, y, z, t` aliases
    /// when the ring has at most four variables.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Some(i);
        }
        if self.nvars() <= ALIASES.len() {
            let i = ALIASES.iter().position(|a| *a == name)?;
            return (i < self.nvars()).then_some(i);
        }
        None
    }

    /// Every spelling accepted by [`Ring::index_of`].
    pub(crate) fn spellings(&self) -> Vec<(&str, usize)> {
        let mut out: Vec<(&str, usize)> =
            self.names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        if self.nvars() <= ALIASES.len() {
            for (i, a) in ALIASES.iter().enumerate().take(self.nvars()) {
                if !self.names.iter().any(|n| n == a) {
                    out.push((a, i));
                }
            }
        }
        out
    }
}

/// An exponent vector. Ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Lowers the exponent of variable `j` by one; `None` when it is zero.
    pub fn div_var(&self, j: usize) -> Option<Monomial> {
        let e = *self.0.get(j)?;
        (e > 0).then(|| {
            let mut out = self.0.clone();
            out[j] -= 1;
            Monomial(out)
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn fmt_with(&self, ring: &Ring, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(ring.name(j))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `e` in `n` variables, graded-lex descending
/// (`x1^e` first). There are `C(e+n-1, n-1)` of them.
pub fn monomial_basis(ring: &Ring, e: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, remaining: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=remaining).rev() {
            prefix.push(a);
            fill(prefix, remaining - a, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(ring.nvars()), e, ring.nvars(), &mut out);
    out
}

/// The monomial basis of one graded piece together with a reverse index,
/// used to move between polynomials and coordinate vectors.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    degree: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedPiece {
    pub fn new(ring: &Ring, degree: u32) -> Self {
        let basis = monomial_basis(ring, degree);
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        GradedPiece { degree, basis, index }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a polynomial all of whose terms lie in this piece.
    pub fn coords(&self, p: &Polynomial) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in p.terms() {
            let i = self.position(m).ok_or(Error::NotHomogeneous)?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(&self, ring: &Ring, v: &[Rational]) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.basis.iter().cloned().zip(v.iter().cloned()),
        )
    }
}

/// A polynomial in a fixed [`Ring`]; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn term(ring: &Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "monomial arity differs from ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Ring, j: usize) -> Result<Self> {
        if j >= ring.nvars() {
            return Err(Error::IndexOutOfRange { index: j, n: ring.nvars() });
        }
        Ok(Polynomial::term(ring, Monomial::var(ring.nvars(), j), Rational::one()))
    }

    /// Sums the given terms; repeated monomials are merged.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial arity differs from ring");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The common degree of all terms, or `None` if the polynomial is zero
    /// or not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Whether variable `j` occurs in some term.
    pub fn involves(&self, j: usize) -> bool {
        self.terms.keys().any(|m| m.0[j] > 0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    /// Repeated squaring; `p^0 = 1`.
    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `j` (0-based).
    pub fn partial(&self, j: usize) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if let Some(lower) = m.div_var(j) {
                out.add_term(lower, c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// All partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.ring.nvars())
            .map(|j| self.partial(j).expect("index in range"))
            .collect()
    }

    /// Moves the polynomial into another ring with the same number of variables.
    pub fn with_ring(&self, ring: &Ring) -> Result<Polynomial> {
        if ring.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial { ring: ring.clone(), terms: self.terms.clone() })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            let is_const = m.degree() == 0;
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
                if !is_const {
                    f.write_str("*")?;
                }
            }
            if !is_const {
                m.fmt_with(&self.ring, f)?;
            }
        }
        Ok(())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

// Operator forms panic on ring mismatch; the `checked_*` methods report it.

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}
