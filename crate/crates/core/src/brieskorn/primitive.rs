//! Primitivity of binary forms: `f` is not `g^r` for any `r > 1`.
//!
//! Write `f = x^a y^b h` with `h` coprime to `x` and `y`. The roots of `h`
//! in P^1 correspond to the roots of `u(x) = h(x, 1)`, and Yun's squarefree
//! decomposition of `u` over Q gives their multiplicities (each squarefree
//! factor has distinct complex roots). `f` is primitive iff the gcd of
//! `a`, `b` and those multiplicities is 1.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational};

/// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Uni(Vec<Rational>);

impl Uni {
    fn trimmed(mut v: Vec<Rational>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Uni(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    fn monic(&self) -> Uni {
        let lc = self.lead().clone();
        Uni(self.0.iter().map(|c| c / &lc).collect())
    }

    fn derivative(&self) -> Uni {
        Uni::trimmed(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    fn sub(&self, other: &Uni) -> Uni {
        let len = self.0.len().max(other.0.len());
        let zero = Rational::zero();
        Uni::trimmed(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn div_rem(&self, divisor: &Uni) -> (Uni, Uni) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (Uni(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); self.degree() - dd + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / divisor.lead();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.0.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        (Uni::trimmed(quot), Uni::trimmed(rem))
    }

    fn exact_div(&self, divisor: &Uni) -> Uni {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd.
    fn gcd(&self, other: &Uni) -> Uni {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }
}

/// Yun's algorithm; returns the multiplicities `i` whose squarefree factor
/// `a_i` is nonconstant.
fn squarefree_multiplicities(u: &Uni) -> Vec<u32> {
    let mut out = Vec::new();
    if u.degree() == 0 {
        return out;
    }
    let du = u.derivative();
    let g = u.gcd(&du);
    let mut c = u.exact_div(&g);
    let mut d = du.exact_div(&g).sub(&c.derivative());
    let mut i = 1;
    while c.degree() > 0 {
        let a = c.gcd(&d);
        c = c.exact_div(&a);
        d = d.exact_div(&a).sub(&c.derivative());
        if a.degree() > 0 {
            out.push(i);
        }
        i += 1;
    }
    out
}

/// Multiplicities of the distinct root groups of a binary form: the powers
/// of `x` and `y` it contains (when positive) followed by the squarefree
/// multiplicities of the remaining factor.
pub fn binary_multiplicities(f: &Polynomial) -> Result<Vec<u32>> {
    if f.ring().nvars() != 2 {
        return Err(Error::InvalidParameter(format!(
            "binary forms need n = 2, got n = {}",
            f.ring().nvars()
        )));
    }
    if f.is_zero() {
        return Err(Error::InvalidParameter("zero polynomial".into()));
    }
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d == 0 {
        return Err(Error::DegreeTooLow { found: 0, min: 1 });
    }
    let x_pow = f.terms().map(|(m, _)| m.exponents()[0]).min().expect("nonzero");
    let y_pow = f.terms().map(|(m, _)| m.exponents()[1]).min().expect("nonzero");
    let rest = (d - x_pow - y_pow) as usize;
    let mut coeffs = vec![Rational::zero(); rest + 1];
    for (m, c) in f.terms() {
        coeffs[(m.exponents()[0] - x_pow) as usize] = c.clone();
    }
    let u = Uni::trimmed(coeffs);
    let mut out: Vec<u32> = [x_pow, y_pow].into_iter().filter(|&e| e > 0).collect();
    out.extend(squarefree_multiplicities(&u));
    Ok(out)
}

pub fn is_primitive_binary(f: &Polynomial) -> Result<bool> {
    let mults = binary_multiplicities(f)?;
    Ok(mults.iter().fold(0u32, |acc, &m| acc.gcd(&m)) == 1)
}
