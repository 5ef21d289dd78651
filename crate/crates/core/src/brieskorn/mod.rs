//! Graded pieces of the Milnor algebra `M(f) = R/J_f`, the Brieskorn module
//! `B(f) = W^n / df^d(W^{n-2})` and its submodule
//! `C(f) = df^W^{n-1} / df^d(W^{n-2})`, computed by exact ranks of the
//! operator matrices in each degree.
//!
//! Degrees: an n-form `g w_n` with `g` of degree `c` has coefficient degree
//! `c` and total degree `s = c + n`. The action of `t` is multiplication by
//! `f` and raises both by `d = deg f`.

mod primitive;
mod report;
mod torsion;
mod xpyq;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{self, RationalMatrix};
use crate::exterior::{form_basis, sort_sign, DfWedgeD};
use crate::polyring::{monomial_basis, GradedPiece, Polynomial, Rational};

pub use primitive::{binary_multiplicities, is_primitive_binary};
pub use report::{graded_report, GradedReport, GradedRow, SCHEMA};
pub use torsion::{
    torsion_filtration_dims, torsion_membership, torsion_order_of_class, verify_certificate,
    CertificateJson, Membership, TorsionCertificate, TorsionOrderVerdict,
};
pub use xpyq::{xpyq_cross_check, xpyq_oracle, XpyqCrossCheck, XpyqReport, XpyqRow};

/// Default search depth for torsion orders.
pub const DEFAULT_KMAX: u32 = 5;

/// Checks that `f` is homogeneous of degree at least 2 and returns the degree.
pub fn homogeneous_degree(f: &Polynomial) -> Result<u32> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d < 2 {
        return Err(Error::DegreeTooLow { found: d, min: 2 });
    }
    Ok(d)
}

fn monomial_poly(f: &Polynomial, m: crate::polyring::Monomial) -> Polynomial {
    Polynomial::term(f.ring(), m, Rational::one())
}

/// Matrix of `eta -> df ^ d(eta)` from (n-2)-forms of coefficient degree
/// `target - d + 2` into the degree-`target` piece of `R w_n`.
/// Columns follow `form_basis`, rows follow `monomial_basis`.
pub fn assemble_dfd_matrix(f: &Polynomial, target: u32) -> Result<RationalMatrix> {
    let d = homogeneous_degree(f)?;
    let ring = f.ring();
    let n = ring.nvars();
    let rows = GradedPiece::new(ring, target);
    let m = i64::from(target) - i64::from(d) + 2;
    if n < 2 || m < 0 {
        return Ok(RationalMatrix::zeros(rows.dim(), 0));
    }
    let op = DfWedgeD::new(f)?;
    let columns = form_basis(ring, n - 2, m as u32)
        .into_iter()
        .map(|(idx, mu)| rows.coords(&op.apply_term(&idx, &monomial_poly(f, mu))))
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_columns(rows.dim(), &columns)
}

/// Matrix of `phi -> df ^ phi` from (n-1)-forms of coefficient degree
/// `target - d + 1` into `R_target w_n`. Its column space is `(J_f)_target`.
pub fn assemble_koszul_top_matrix(f: &Polynomial, target: u32) -> Result<RationalMatrix> {
    let d = homogeneous_degree(f)?;
    let ring = f.ring();
    let n = ring.nvars();
    let rows = GradedPiece::new(ring, target);
    let m = i64::from(target) - i64::from(d) + 1;
    if m < 0 {
        return Ok(RationalMatrix::zeros(rows.dim(), 0));
    }
    let grad = f.gradient();
    let columns = form_basis(ring, n - 1, m as u32)
        .into_iter()
        .map(|(idx, mu)| {
            // df ^ mu dx_I = sign(a, I) f_a mu w_n, where {a} is the complement of I
            let a = idx.complement(n).indices()[0];
            let mut seq = vec![a];
            seq.extend_from_slice(idx.indices());
            let sign = sort_sign(&seq).expect("disjoint");
            let col = grad[a].mul_monomial(&mu).scale(&Rational::from_integer(sign.into()));
            rows.coords(&col)
        })
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_columns(rows.dim(), &columns)
}

/// Columns `f_j * mu` for `j = 1..n` and `mu` of degree `e - d + 1`.
pub fn jacobian_matrix(f: &Polynomial, e: u32) -> Result<RationalMatrix> {
    let d = homogeneous_degree(f)?;
    let ring = f.ring();
    let rows = GradedPiece::new(ring, e);
    let m = i64::from(e) - i64::from(d) + 1;
    if m < 0 {
        return Ok(RationalMatrix::zeros(rows.dim(), 0));
    }
    let monos = monomial_basis(ring, m as u32);
    let mut columns = Vec::with_capacity(ring.nvars() * monos.len());
    for fj in f.gradient() {
        for mu in &monos {
            columns.push(rows.coords(&fj.mul_monomial(mu))?);
        }
    }
    RationalMatrix::from_columns(rows.dim(), &columns)
}

/// Matrix of multiplication by a homogeneous `g` from `R_from` to
/// `R_{from + deg g}`.
pub fn multiplication_matrix(g: &Polynomial, from: u32) -> Result<RationalMatrix> {
    let dg = g.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let source = monomial_basis(g.ring(), from);
    let rows = GradedPiece::new(g.ring(), from + dg);
    let columns = source
        .iter()
        .map(|mu| rows.coords(&g.mul_monomial(mu)))
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_columns(rows.dim(), &columns)
}

/// `dim M(f)_e`.
pub fn milnor_dim(f: &Polynomial, e: u32) -> Result<usize> {
    let jac = jacobian_matrix(f, e)?;
    Ok(jac.rows() - exactla::rank(&jac))
}

/// Isolated iff `M(f)` vanishes in degree `n(d-2)+1`: `M(f)` is generated in
/// degree 1, so vanishing propagates upward, and an isolated homogeneous
/// singularity has socle degree `n(d-2)`.
pub fn is_isolated(f: &Polynomial) -> Result<bool> {
    let d = homogeneous_degree(f)?;
    let n = f.ring().nvars() as u32;
    Ok(milnor_dim(f, n * (d - 2) + 1)? == 0)
}

/// `dim M(f)`, summed over degrees `0..=n(d-2)`.
pub fn milnor_number(f: &Polynomial) -> Result<usize> {
    if !is_isolated(f)? {
        return Err(Error::NotIsolated);
    }
    let d = homogeneous_degree(f)?;
    let n = f.ring().nvars() as u32;
    (0..=n * (d - 2)).map(|e| milnor_dim(f, e)).sum()
}

/// First `num_terms` coefficients of `t^n (1 - t^{d-1})^n / (1 - t)^{n+1}`.
pub fn formal_poincare_series(n: u32, d: u32, num_terms: usize) -> Result<Vec<BigInt>> {
    if n < 1 || d < 2 {
        return Err(Error::InvalidParameter(format!(
            "series needs n >= 1 and d >= 2, got n={n}, d={d}"
        )));
    }
    let binom = |top: u64, k: u64| -> BigInt {
        (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(top + 1 - i) / BigInt::from(i))
    };
    // (1 - t^{d-1})^n
    let numerator: Vec<(usize, BigInt)> = (0..=u64::from(n))
        .map(|i| {
            let c = binom(u64::from(n), i);
            let c = if i % 2 == 1 { -c } else { c };
            ((i * u64::from(d - 1)) as usize, c)
        })
        .collect();
    let shift = n as usize;
    Ok((0..num_terms)
        .map(|k| {
            if k < shift {
                return BigInt::zero();
            }
            let k = k - shift;
            numerator
                .iter()
                .filter(|(e, _)| *e <= k)
                // coefficient of t^j in (1-t)^{-(n+1)} is C(j+n, n)
                .map(|(e, c)| c * binom((k - e) as u64 + u64::from(n), u64::from(n)))
                .sum()
        })
        .collect())
}

fn coefficient_degree(f: &Polynomial, s: u32) -> Option<u32> {
    s.checked_sub(f.ring().nvars() as u32)
}

/// `dim B(f)_s` for total degree `s`.
pub fn dim_b(f: &Polynomial, s: u32) -> Result<usize> {
    homogeneous_degree(f)?;
    let Some(c) = coefficient_degree(f, s) else { return Ok(0) };
    let dfd = assemble_dfd_matrix(f, c)?;
    Ok(dfd.rows() - exactla::rank(&dfd))
}

/// `dim C(f)_s` for total degree `s`.
pub fn dim_c(f: &Polynomial, s: u32) -> Result<usize> {
    homogeneous_degree(f)?;
    let Some(c) = coefficient_degree(f, s) else { return Ok(0) };
    let kos = exactla::rank(&assemble_koszul_top_matrix(f, c)?);
    let dfd = exactla::rank(&assemble_dfd_matrix(f, c)?);
    Ok(kos - dfd)
}

/// Checks `df ^ W^{n-1} = df ^ d(W^{n-2}) + f W^n` in total degree `s`.
pub fn prop1_check(f: &Polynomial, s: u32) -> Result<bool> {
    let d = homogeneous_degree(f)?;
    let Some(c) = coefficient_degree(f, s) else { return Ok(true) };
    let kos = assemble_koszul_top_matrix(f, c)?;
    let dfd = assemble_dfd_matrix(f, c)?;
    prop1_from_matrices(f, d, c, &kos, &dfd)
}

fn prop1_from_matrices(
    f: &Polynomial,
    d: u32,
    c: u32,
    kos: &RationalMatrix,
    dfd: &RationalMatrix,
) -> Result<bool> {
    let rhs = match c.checked_sub(d) {
        Some(from) => dfd.hstack(&multiplication_matrix(f, from)?)?,
        None => dfd.clone(),
    };
    exactla::column_spaces_equal(kos, &rhs)
}
