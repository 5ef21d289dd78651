//! `t`-torsion of classes `[g w_n]`: `t^k [g w_n] = 0` iff
//! `f^k g w_n = df ^ d(eta)` for some (n-2)-form `eta`, decided as an exact
//! linear system in the matching graded piece.

use serde::{Deserialize, Serialize};

use super::{assemble_dfd_matrix, homogeneous_degree, multiplication_matrix, SCHEMA};
use crate::error::{Error, Result};
use crate::exactla;
use crate::exterior::{df_wedge_d, form_basis, DifferentialForm, FormEntry};
use crate::polyring::{parse_poly, GradedPiece, Polynomial, Ring};

/// A witness `eta` with `df ^ d(eta) = f^k g w_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCertificate {
    pub f: Polynomial,
    pub g: Polynomial,
    pub k: u32,
    pub eta: DifferentialForm,
}

/// Serialized certificate. Polynomials use the canonical text form; `vars`
/// fixes the ring so the file can be replayed on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub schema: String,
    pub vars: Vec<String>,
    pub f: String,
    pub g: String,
    pub k: u32,
    pub eta: Vec<FormEntry>,
    pub verified: bool,
}

impl TorsionCertificate {
    /// Coefficient degree every component of `eta` must have.
    pub fn eta_degree(&self) -> Option<i64> {
        let d = self.f.homogeneous_degree()?;
        let dg = self.g.homogeneous_degree()?;
        Some((i64::from(self.k) - 1) * i64::from(d) + i64::from(dg) + 2)
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            schema: SCHEMA.to_string(),
            vars: self.f.ring().names().to_vec(),
            f: self.f.to_string(),
            g: self.g.to_string(),
            k: self.k,
            eta: self.eta.to_entries(),
            verified: verify_certificate(self),
        }
    }

    /// Rebuilds a certificate. The stored `verified` flag is ignored; call
    /// [`verify_certificate`] on the result.
    pub fn from_json(json: &CertificateJson) -> Result<Self> {
        if json.schema != SCHEMA {
            return Err(Error::InvalidParameter(format!(
                "unsupported schema `{}`",
                json.schema
            )));
        }
        let ring = Ring::new(json.vars.iter().cloned())?;
        let n = ring.nvars();
        if n < 2 {
            return Err(Error::InvalidParameter("certificates need n >= 2".into()));
        }
        Ok(TorsionCertificate {
            f: parse_poly(&json.f, &ring)?,
            g: parse_poly(&json.g, &ring)?,
            k: json.k,
            eta: DifferentialForm::from_entries(&ring, n - 2, &json.eta)?,
        })
    }
}

/// Replays `df ^ d(eta) = f^k g w_n` exactly. Any inconsistency (rings,
/// form degree, coefficient degrees, the identity itself) yields `false`.
pub fn verify_certificate(c: &TorsionCertificate) -> bool {
    let ring = c.f.ring();
    if c.g.ring() != ring || c.eta.ring() != ring || ring.nvars() < 2 {
        return false;
    }
    if homogeneous_degree(&c.f).is_err() || c.g.homogeneous_degree().is_none() {
        return false;
    }
    if c.eta.degree() != ring.nvars() - 2 {
        return false;
    }
    let Some(m) = c.eta_degree() else { return false };
    if !c.eta.is_zero() && c.eta.coefficient_degree().map(i64::from) != Some(m) {
        return false;
    }
    let Ok(lhs) = df_wedge_d(&c.f, &c.eta) else { return false };
    let rhs = &c.f.pow(c.k) * &c.g;
    lhs.top_coefficient().is_some_and(|p| p == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub holds: bool,
    pub certificate: Option<TorsionCertificate>,
    /// Rank of the operator matrix and of the augmented system.
    pub rank: usize,
    pub augmented_rank: usize,
}

fn check_class(f: &Polynomial, g: &Polynomial) -> Result<(u32, u32)> {
    let d = homogeneous_degree(f)?;
    if g.ring() != f.ring() {
        return Err(Error::RingMismatch);
    }
    if g.is_zero() {
        return Err(Error::InvalidParameter("g must be nonzero".into()));
    }
    let dg = g.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if f.ring().nvars() < 2 {
        return Err(Error::InvalidParameter("torsion needs n >= 2".into()));
    }
    Ok((d, dg))
}

/// Decides whether `f^k g w_n` lies in `df ^ d(W^{n-2})`; `k = 0` asks
/// whether `[g w_n]` itself vanishes in `B(f)`.
pub fn torsion_membership(f: &Polynomial, g: &Polynomial, k: u32) -> Result<Membership> {
    let (d, dg) = check_class(f, g)?;
    let ring = f.ring();
    let n = ring.nvars();
    let target = k * d + dg;
    let a = assemble_dfd_matrix(f, target)?;
    let rhs = &f.pow(k) * g;
    let b = GradedPiece::new(ring, target).coords(&rhs)?;
    let outcome = exactla::solve(&a, &b)?;
    let Some(x) = outcome.particular else {
        return Ok(Membership {
            holds: false,
            certificate: None,
            rank: outcome.rank,
            augmented_rank: outcome.rank + 1,
        });
    };
    let m = (i64::from(target) - i64::from(d) + 2) as u32;
    let terms: Vec<_> = form_basis(ring, n - 2, m)
        .into_iter()
        .zip(x)
        .map(|((idx, mu), c)| (idx, Polynomial::term(ring, mu, c)))
        .collect();
    let eta = DifferentialForm::from_terms(ring, n - 2, terms)?;
    let cert = TorsionCertificate { f: f.clone(), g: g.clone(), k, eta };
    debug_assert!(verify_certificate(&cert));
    Ok(Membership {
        holds: true,
        certificate: Some(cert),
        rank: outcome.rank,
        augmented_rank: outcome.rank,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionOrderVerdict {
    /// `[g w_n] = 0` already; the certificate has `k = 0`.
    ZeroClass(TorsionCertificate),
    /// Least `k` with `t^k [g w_n] = 0`.
    Torsion { order: u32, certificate: TorsionCertificate },
    /// No annihilating power up to and including `kmax`.
    UnresolvedAbove(u32),
}

impl TorsionOrderVerdict {
    pub fn certificate(&self) -> Option<&TorsionCertificate> {
        match self {
            TorsionOrderVerdict::ZeroClass(c) => Some(c),
            TorsionOrderVerdict::Torsion { certificate, .. } => Some(certificate),
            TorsionOrderVerdict::UnresolvedAbove(_) => None,
        }
    }
}

pub fn torsion_order_of_class(
    f: &Polynomial,
    g: &Polynomial,
    kmax: u32,
) -> Result<TorsionOrderVerdict> {
    if kmax < 1 {
        return Err(Error::InvalidParameter("kmax must be at least 1".into()));
    }
    if let Some(c) = torsion_membership(f, g, 0)?.certificate {
        return Ok(TorsionOrderVerdict::ZeroClass(c));
    }
    for k in 1..=kmax {
        if let Some(certificate) = torsion_membership(f, g, k)?.certificate {
            return Ok(TorsionOrderVerdict::Torsion { order: k, certificate });
        }
    }
    Ok(TorsionOrderVerdict::UnresolvedAbove(kmax))
}

/// `dim { b in B(f)_s : t^k b = 0 }` for `k = 1..=kmax`.
pub fn torsion_filtration_dims(f: &Polynomial, s: u32, kmax: u32) -> Result<Vec<usize>> {
    let d = homogeneous_degree(f)?;
    let n = f.ring().nvars() as u32;
    if kmax < 1 {
        return Err(Error::InvalidParameter("kmax must be at least 1".into()));
    }
    let c = s.checked_sub(n).ok_or_else(|| {
        Error::InvalidParameter(format!("total degree {s} is below n = {n}"))
    })?;
    let image_here = exactla::rank(&assemble_dfd_matrix(f, c)?);
    filtration_from_rank(f, d, c, image_here, kmax)
}

/// Filtration dims given `rank` of the operator matrix in coefficient degree `c`.
pub(super) fn filtration_from_rank(
    f: &Polynomial,
    d: u32,
    c: u32,
    image_here: usize,
    kmax: u32,
) -> Result<Vec<usize>> {
    let mut f_pow = f.clone();
    let mut out = Vec::with_capacity(kmax as usize);
    for k in 1..=kmax {
        let mult = multiplication_matrix(&f_pow, c)?;
        let image_there = assemble_dfd_matrix(f, c + k * d)?;
        out.push(exactla::preimage_dim(&mult, &image_there)? - image_here);
        if k < kmax {
            f_pow = &f_pow * f;
        }
    }
    Ok(out)
}
