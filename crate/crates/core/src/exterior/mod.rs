//! Differential forms with polynomial coefficients.
//!
//! A j-form is stored as a map from increasing index sets `I` (0-based
//! internally, 1-based in text and JSON) to nonzero coefficients `P_I`,
//! meaning `sum_I P_I dx_I`. Signs come from sorting concatenated index
//! sequences.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{monomial_basis, parse_poly, Monomial, Polynomial, Rational, Ring};

/// A strictly increasing list of variable indices (0-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "index set {indices:?} is not strictly increasing"
            )));
        }
        Ok(IndexSet(indices))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The indices of `0..n` not in the set, increasing.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((0..n).filter(|i| !self.0.contains(i)).collect())
    }

    /// All j-subsets of `0..n` in lexicographic order.
    pub fn all(n: usize, j: usize) -> Vec<IndexSet> {
        (0..n).combinations(j).map(IndexSet).collect()
    }
}

/// Sign of the permutation sorting `seq`; `None` if an index repeats.
pub fn sort_sign(seq: &[usize]) -> Option<i32> {
    let mut inversions = 0usize;
    for (i, a) in seq.iter().enumerate() {
        for b in &seq[i + 1..] {
            match a.cmp(b) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// `dx_I ^ dx_J = sign * dx_K`, or `None` when `I` and `J` meet.
fn wedge_index(a: &IndexSet, b: &IndexSet) -> Option<(i32, IndexSet)> {
    let seq: Vec<usize> = a.0.iter().chain(&b.0).copied().collect();
    let sign = sort_sign(&seq)?;
    let mut sorted = seq;
    sorted.sort_unstable();
    Some((sign, IndexSet(sorted)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialForm {
    ring: Ring,
    degree: usize,
    coeffs: BTreeMap<IndexSet, Polynomial>,
}

impl DifferentialForm {
    pub fn zero(ring: &Ring, degree: usize) -> Self {
        DifferentialForm { ring: ring.clone(), degree, coeffs: BTreeMap::new() }
    }

    /// A 0-form.
    pub fn function(p: &Polynomial) -> Self {
        let mut out = DifferentialForm::zero(p.ring(), 0);
        out.add_term(IndexSet::empty(), p.clone());
        out
    }

    /// `p * dx_1 ^ ... ^ dx_n`.
    pub fn top(p: &Polynomial) -> Self {
        let n = p.ring().nvars();
        let mut out = DifferentialForm::zero(p.ring(), n);
        out.add_term(IndexSet((0..n).collect()), p.clone());
        out
    }

    pub fn from_terms(
        ring: &Ring,
        degree: usize,
        terms: impl IntoIterator<Item = (IndexSet, Polynomial)>,
    ) -> Result<Self> {
        if degree > ring.nvars() {
            return Err(Error::DegreeOverflow { degree, n: ring.nvars() });
        }
        let mut out = DifferentialForm::zero(ring, degree);
        for (idx, p) in terms {
            if idx.len() != degree {
                return Err(Error::WrongFormDegree { expected: degree, found: idx.len() });
            }
            if idx.0.last().is_some_and(|&i| i >= ring.nvars()) {
                return Err(Error::IndexOutOfRange { index: *idx.0.last().unwrap(), n: ring.nvars() });
            }
            if p.ring() != ring {
                return Err(Error::RingMismatch);
            }
            out.add_term(idx, p);
        }
        Ok(out)
    }

    fn add_term(&mut self, idx: IndexSet, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let merged = match self.coeffs.remove(&idx) {
            Some(old) => &old + &p,
            None => p,
        };
        if !merged.is_zero() {
            self.coeffs.insert(idx, merged);
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Polynomial)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, idx: &IndexSet) -> Polynomial {
        self.coeffs.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    /// The coefficient of `dx_1 ^ ... ^ dx_n`; `None` unless this is an n-form.
    pub fn top_coefficient(&self) -> Option<Polynomial> {
        let n = self.ring.nvars();
        (self.degree == n).then(|| self.coefficient(&IndexSet((0..n).collect())))
    }

    /// The common degree of all coefficients; `None` if zero or mixed.
    pub fn coefficient_degree(&self) -> Option<u32> {
        let mut degrees = self.coeffs.values().map(Polynomial::homogeneous_degree);
        let first = degrees.next()??;
        degrees.all(|d| d == Some(first)).then_some(first)
    }

    fn check_ring(&self, other: &DifferentialForm) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &DifferentialForm) -> Result<Self> {
        self.check_ring(other)?;
        if self.degree != other.degree {
            return Err(Error::WrongFormDegree { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        for (idx, p) in &other.coeffs {
            out.add_term(idx.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DifferentialForm) -> Result<Self> {
        self.checked_add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_poly(&Polynomial::constant(&self.ring, c.clone()))
    }

    /// Multiplies every coefficient by `p`.
    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        let mut out = DifferentialForm::zero(&self.ring, self.degree);
        for (idx, q) in &self.coeffs {
            out.add_term(idx.clone(), q * p);
        }
        out
    }

    /// Exterior derivative. On an n-form this returns the zero (n+1)-form.
    pub fn ext_d(&self) -> DifferentialForm {
        let n = self.ring.nvars();
        let mut out = DifferentialForm::zero(&self.ring, self.degree + 1);
        for (idx, p) in &self.coeffs {
            for j in 0..n {
                let dj = p.partial(j).expect("index in range");
                if dj.is_zero() {
                    continue;
                }
                if let Some((sign, merged)) = wedge_index(&IndexSet(vec![j]), idx) {
                    out.add_term(merged, dj.scale(&Rational::from_integer(sign.into())));
                }
            }
        }
        out
    }

    pub fn wedge(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_ring(other)?;
        let n = self.ring.nvars();
        let degree = self.degree + other.degree;
        if degree > n {
            return Err(Error::DegreeOverflow { degree, n });
        }
        let mut out = DifferentialForm::zero(&self.ring, degree);
        for (i, p) in &self.coeffs {
            for (j, q) in &other.coeffs {
                if let Some((sign, merged)) = wedge_index(i, j) {
                    out.add_term(merged, (p * q).scale(&Rational::from_integer(sign.into())));
                }
            }
        }
        Ok(out)
    }

    /// JSON payload: one entry per nonzero coefficient, indices 1-based.
    pub fn to_entries(&self) -> Vec<FormEntry> {
        self.coeffs
            .iter()
            .map(|(idx, p)| FormEntry {
                indices: idx.0.iter().map(|i| i + 1).collect(),
                poly: p.to_string(),
            })
            .collect()
    }

    pub fn from_entries(ring: &Ring, degree: usize, entries: &[FormEntry]) -> Result<Self> {
        let mut terms = Vec::with_capacity(entries.len());
        for e in entries {
            if e.indices.contains(&0) {
                return Err(Error::InvalidParameter("form indices are 1-based".into()));
            }
            let idx = IndexSet::new(e.indices.iter().map(|i| i - 1).collect())?;
            terms.push((idx, parse_poly(&e.poly, ring)?));
        }
        DifferentialForm::from_terms(ring, degree, terms)
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (idx, p)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({p})")?;
            if !idx.is_empty() {
                let dx = idx.0.iter().map(|&i| format!("d{}", self.ring.name(i))).join("^");
                write!(f, " {dx}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormEntry {
    pub indices: Vec<usize>,
    pub poly: String,
}

/// `df` as a 1-form.
pub fn differential(f: &Polynomial) -> DifferentialForm {
    DifferentialForm::function(f).ext_d()
}

/// The operator `eta -> df ^ d(eta)` on (n-2)-forms, with the gradient of
/// `f` precomputed.
///
/// For `eta = mu dx_I` with complement `{a < b}`:
/// `df ^ d(mu dx_I) = eps_I (f_a d_b mu - f_b d_a mu) w_n`, where `eps_I`
/// is the sign of the permutation `(a, b, I)`.
#[derive(Clone, Debug)]
pub struct DfWedgeD {
    f: Polynomial,
    degree: u32,
    grad: Vec<Polynomial>,
}

impl DfWedgeD {
    pub fn new(f: &Polynomial) -> Result<Self> {
        let degree = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if degree < 2 {
            return Err(Error::DegreeTooLow { found: degree, min: 2 });
        }
        if f.ring().nvars() < 2 {
            return Err(Error::InvalidParameter("df^d needs at least two variables".into()));
        }
        Ok(DfWedgeD { f: f.clone(), degree, grad: f.gradient() })
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn gradient(&self) -> &[Polynomial] {
        &self.grad
    }

    /// Coefficient of `w_n` in `df ^ d(mu dx_I)`.
    pub fn apply_term(&self, idx: &IndexSet, mu: &Polynomial) -> Polynomial {
        let n = self.f.ring().nvars();
        let comp = idx.complement(n);
        let (a, b) = (comp.0[0], comp.0[1]);
        let mut seq = vec![a, b];
        seq.extend_from_slice(&idx.0);
        let eps = sort_sign(&seq).expect("complement is disjoint");
        let da = mu.partial(a).expect("index in range");
        let db = mu.partial(b).expect("index in range");
        let v = &(&self.grad[a] * &db) - &(&self.grad[b] * &da);
        v.scale(&Rational::from_integer(eps.into()))
    }

    /// `df ^ d(eta)` as an n-form.
    pub fn apply(&self, eta: &DifferentialForm) -> Result<DifferentialForm> {
        let n = self.f.ring().nvars();
        if eta.ring() != self.f.ring() {
            return Err(Error::RingMismatch);
        }
        if eta.degree() != n - 2 {
            return Err(Error::WrongFormDegree { expected: n - 2, found: eta.degree() });
        }
        let mut acc = Polynomial::zero(self.f.ring());
        for (idx, mu) in eta.terms() {
            acc = &acc + &self.apply_term(idx, mu);
        }
        Ok(DifferentialForm::top(&acc))
    }
}

/// `df ^ d(eta)` for a homogeneous `f` of degree at least 2 and an (n-2)-form `eta`.
pub fn df_wedge_d(f: &Polynomial, eta: &DifferentialForm) -> Result<DifferentialForm> {
    DfWedgeD::new(f)?.apply(eta)
}

/// The basis `{mu dx_I}` of j-forms with coefficients of degree `m`,
/// ordered by index set, then graded-lex descending monomial.
pub fn form_basis(ring: &Ring, j: usize, m: u32) -> Vec<(IndexSet, Monomial)> {
    if j > ring.nvars() {
        return Vec::new();
    }
    let monos = monomial_basis(ring, m);
    IndexSet::all(ring.nvars(), j)
        .into_iter()
        .flat_map(|idx| monos.iter().map(move |mu| (idx.clone(), mu.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Ring {
        Ring::new(["x", "y", "z"]).unwrap()
    }

    fn p(text: &str, ring: &Ring) -> Polynomial {
        parse_poly(text, ring).unwrap()
    }

    fn one_form(ring: &Ring, coeffs: [&str; 3]) -> DifferentialForm {
        DifferentialForm::from_terms(
            ring,
            1,
            coeffs.iter().enumerate().map(|(i, c)| (IndexSet(vec![i]), p(c, ring))),
        )
        .unwrap()
    }

    fn rat(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn d_of_constant_vanishes() {
        let r = xyz();
        let c = DifferentialForm::from_terms(&r, 1, [(IndexSet(vec![1]), p("7", &r))]).unwrap();
        assert!(c.ext_d().is_zero());
    }

    #[test]
    fn d_of_one_form_matches_curl_layout() {
        let r = xyz();
        let eta = one_form(&r, ["x*y^2+z^3", "x^2*z", "y*z^2+x^3"]);
        let (pp, q, rr) = (p("x*y^2+z^3", &r), p("x^2*z", &r), p("y*z^2+x^3", &r));
        let d = eta.ext_d();
        assert_eq!(d.degree(), 2);
        let px = |poly: &Polynomial, j| poly.partial(j).unwrap();
        assert_eq!(d.coefficient(&IndexSet(vec![0, 1])), &px(&q, 0) - &px(&pp, 1));
        assert_eq!(d.coefficient(&IndexSet(vec![0, 2])), &px(&rr, 0) - &px(&pp, 2));
        assert_eq!(d.coefficient(&IndexSet(vec![1, 2])), &px(&rr, 1) - &px(&q, 2));
    }

    #[test]
    fn d_of_monomial_function() {
        let r = Ring::new(["x", "y"]).unwrap();
        let d = DifferentialForm::function(&p("x^3*y^2", &r)).ext_d();
        assert_eq!(d.coefficient(&IndexSet(vec![0])), p("3x^2y^2", &r));
        assert_eq!(d.coefficient(&IndexSet(vec![1])), p("2x^3y", &r));
    }

    #[test]
    fn alternation() {
        let r = xyz();
        let dx = one_form(&r, ["1", "0", "0"]);
        assert!(dx.wedge(&dx).unwrap().is_zero());
        let df = differential(&p("x^3+y^2z", &r));
        assert!(df.wedge(&df).unwrap().is_zero());
        let top = DifferentialForm::top(&p("x", &r));
        assert_eq!(top.wedge(&dx), Err(Error::DegreeOverflow { degree: 4, n: 3 }));
        let other = DifferentialForm::function(&p("a", &Ring::new(["a", "b", "c"]).unwrap()));
        assert_eq!(dx.wedge(&other), Err(Error::RingMismatch));
    }

    #[test]
    fn wedge_with_df_reproduces_bracket_expansion() {
        let r = xyz();
        let f = p("x^3+y^2z", &r);
        let (pp, q, rr) = (p("x^2*y", &r), p("y*z^2", &r), p("x*z", &r));
        let eta = DifferentialForm::from_terms(
            &r,
            1,
            [(IndexSet(vec![0]), pp.clone()), (IndexSet(vec![1]), q.clone()), (IndexSet(vec![2]), rr.clone())],
        )
        .unwrap();
        let lhs = differential(&f).wedge(&eta.ext_d()).unwrap().top_coefficient().unwrap();
        let d = |poly: &Polynomial, j| poly.partial(j).unwrap();
        let fx = p("3x^2", &r);
        let fy = p("2yz", &r);
        let fz = p("y^2", &r);
        let rhs = &(&(&fx * &(&d(&rr, 1) - &d(&q, 2))) + &(&fy * &(&d(&pp, 2) - &d(&rr, 0))))
            + &(&fz * &(&d(&q, 0) - &d(&pp, 1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn binary_monomial_closed_form() {
        let r = Ring::new(["x", "y"]).unwrap();
        for (pe, qe) in [(2u32, 3u32), (1, 2), (3, 4)] {
            let f = p(&format!("x^{pe}*y^{qe}"), &r);
            for a in 0..4u32 {
                for b in 0..4u32 {
                    let eta = DifferentialForm::function(&p(&format!("x^{a}*y^{b}"), &r));
                    let got = df_wedge_d(&f, &eta).unwrap().top_coefficient().unwrap();
                    let c = pe as i64 * b as i64 - qe as i64 * a as i64;
                    let want = Polynomial::term(
                        &r,
                        Monomial::new(vec![a + pe - 1, b + qe - 1]),
                        rat(c, 1),
                    );
                    assert_eq!(got, want, "p={pe} q={qe} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn df_wedge_d_of_f_itself_vanishes() {
        let r = Ring::new(["x", "y"]).unwrap();
        let f = p("x^2*y+3y^3", &r);
        assert!(df_wedge_d(&f, &DifferentialForm::function(&f)).unwrap().is_zero());
    }

    #[test]
    fn cusp_witness_for_square() {
        let r = xyz();
        let f = p("x^3+y^2*z", &r);
        let eta = one_form(&r, ["32/3*x^3*y*z", "x*y^2*z^2", "1/3*x^4*y"]);
        let got = df_wedge_d(&f, &eta).unwrap();
        assert_eq!(got, DifferentialForm::top(&p("x^6+2x^3y^2z+y^4z^2", &r)));
        assert_eq!(got.top_coefficient().unwrap(), f.pow(2));
    }

    #[test]
    fn df_wedge_d_preconditions() {
        let r = xyz();
        let eta = one_form(&r, ["x", "y", "z"]);
        assert_eq!(df_wedge_d(&p("x^2+y", &r), &eta), Err(Error::NotHomogeneous));
        assert_eq!(
            df_wedge_d(&p("x+y", &r), &eta),
            Err(Error::DegreeTooLow { found: 1, min: 2 })
        );
        let wrong = DifferentialForm::function(&p("x", &r));
        assert_eq!(
            df_wedge_d(&p("x^2", &r), &wrong),
            Err(Error::WrongFormDegree { expected: 1, found: 0 })
        );
    }

    #[test]
    fn basis_sizes() {
        let r3 = xyz();
        let r4 = Ring::standard(4).unwrap();
        assert_eq!(form_basis(&r3, 1, 2).len(), 18);
        assert_eq!(form_basis(&r4, 2, 2).len(), 60);
        assert_eq!(form_basis(&r3, 1, 5).len(), 63);
        assert!(form_basis(&r3, 4, 1).is_empty());
        let b = form_basis(&r3, 2, 1);
        assert_eq!(b[0], (IndexSet(vec![0, 1]), Monomial::new(vec![1, 0, 0])));
        assert_eq!(b[3], (IndexSet(vec![0, 2]), Monomial::new(vec![1, 0, 0])));
    }

    #[test]
    fn entries_round_trip() {
        let r = xyz();
        let eta = one_form(&r, ["32/3*x^3*y*z", "0", "1/3*x^4*y"]);
        let entries = eta.to_entries();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].indices, vec![1]);
        assert_eq!(entries[1].poly, "1/3*x^4*y");
        assert_eq!(DifferentialForm::from_entries(&r, 1, &entries).unwrap(), eta);
        assert_eq!(eta.to_string(), "(32/3*x^3*y*z) dx + (1/3*x^4*y) dz");
        assert!(DifferentialForm::from_entries(
            &r,
            1,
            &[FormEntry { indices: vec![0], poly: "x".into() }]
        )
        .is_err());
    }
}
