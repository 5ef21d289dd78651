//! Closed-form graded bases for `f = x^p y^q` with `gcd(p, q) = 1`.
//!
//! In coefficient degree `c` (total degree `c + 2`):
//! - torsion classes: `x^a y^b dx^dy` with `a + b = c` and `a <= p-2` or `b <= q-2`;
//! - free part: `x^{(k+1)p-1} y^{(k+1)q-1} dx^dy`, present when `c + 2 = (k+1)(p+q)`;
//! - `C(f)` is spanned by the free elements with `k >= 1`, i.e. generated by
//!   `x^{2p-1} y^{2q-1} dx^dy`. The `k = 0` element has coefficient degree
//!   `p+q-2`, below where `J_f w_2` starts.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::report::graded_report;
use crate::error::{Error, Result};
use crate::polyring::{parse_poly, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XpyqRow {
    pub s: u32,
    pub coeff_deg: Option<u32>,
    pub torsion_count: usize,
    pub milnor_count: usize,
    pub b_count: usize,
    pub c_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XpyqReport {
    pub p: u32,
    pub q: u32,
    /// Exponents of the `C(f)` generator `x^{2p-1} y^{2q-1}`.
    pub c_generator: (u32, u32),
    pub c_generator_total_degree: u32,
    pub rows: Vec<XpyqRow>,
}

impl XpyqReport {
    pub fn is_torsion_monomial(&self, a: u32, b: u32) -> bool {
        is_torsion_monomial(self.p, self.q, a, b)
    }
}

fn is_torsion_monomial(p: u32, q: u32, a: u32, b: u32) -> bool {
    i64::from(a) <= i64::from(p) - 2 || i64::from(b) <= i64::from(q) - 2
}

fn check_pq(p: u32, q: u32) -> Result<()> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter("p and q must be positive".into()));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidParameter(format!("gcd({p}, {q}) != 1")));
    }
    Ok(())
}

pub fn xpyq_oracle(p: u32, q: u32, smax: u32) -> Result<XpyqReport> {
    check_pq(p, q)?;
    let rows = (0..=smax)
        .map(|s| {
            let Some(c) = s.checked_sub(2) else {
                return XpyqRow { s, coeff_deg: None, torsion_count: 0, milnor_count: 0, b_count: 0, c_dim: 0 };
            };
            let torsion_count = (0..=c).filter(|&a| is_torsion_monomial(p, q, a, c - a)).count();
            let free = (c + 2) % (p + q) == 0 && c + 2 >= p + q;
            let k_plus_one = (c + 2) / (p + q);
            XpyqRow {
                s,
                coeff_deg: Some(c),
                torsion_count,
                milnor_count: torsion_count + usize::from(c == p + q - 2),
                b_count: torsion_count + usize::from(free),
                c_dim: usize::from(free && k_plus_one >= 2),
            }
        })
        .collect();
    Ok(XpyqReport {
        p,
        q,
        c_generator: (2 * p - 1, 2 * q - 1),
        c_generator_total_degree: 2 * p + 2 * q,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XpyqCrossCheck {
    pub oracle: XpyqReport,
    pub kmax: u32,
    /// One line per disagreement between the closed forms and linear algebra.
    pub mismatches: Vec<String>,
    pub pass: bool,
}

/// Compares the closed forms with `dim M`, `dim B`, `dim C` and the torsion
/// filtration computed by the generic machinery for `f = x^p y^q`.
pub fn xpyq_cross_check(p: u32, q: u32, smax: u32, kmax: u32) -> Result<XpyqCrossCheck> {
    let oracle = xpyq_oracle(p, q, smax)?;
    let ring = Ring::new(["x", "y"])?;
    let f = parse_poly(&format!("x^{p}*y^{q}"), &ring)?;
    let mut mismatches = Vec::new();
    // x*y has degree 2; anything lower is rejected by the generic path
    if p + q >= 2 && smax >= 2 {
        let report = graded_report(&f, 2, smax, kmax)?;
        for (row, want) in report.rows.iter().zip(&oracle.rows[2..]) {
            let mut check = |what: &str, got: usize, expected: usize| {
                if got != expected {
                    mismatches.push(format!("s={}: {what} = {got}, closed form {expected}", row.s));
                }
            };
            check("dim_M", row.dim_m, want.milnor_count);
            check("dim_B", row.dim_b, want.b_count);
            check("dim_C", row.dim_c, want.c_dim);
            for (k, &t) in row.torsion.iter().enumerate() {
                check(&format!("torsion[k={}]", k + 1), t, want.torsion_count);
            }
        }
    }
    let pass = mismatches.is_empty();
    Ok(XpyqCrossCheck { oracle, kmax, mismatches, pass })
}
