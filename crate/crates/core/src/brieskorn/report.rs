use serde::{Deserialize, Serialize};

use super::torsion::filtration_from_rank;
use super::{
    assemble_dfd_matrix, assemble_koszul_top_matrix, homogeneous_degree, milnor_dim,
    prop1_from_matrices, is_isolated,
};
use crate::error::{Error, Result};
use crate::exactla;
use crate::polyring::Polynomial;

pub const SCHEMA: &str = "brieskorn/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRow {
    /// Total degree.
    pub s: u32,
    pub coeff_deg: u32,
    #[serde(rename = "dim_M")]
    pub dim_m: usize,
    #[serde(rename = "dim_B")]
    pub dim_b: usize,
    #[serde(rename = "dim_C")]
    pub dim_c: usize,
    /// `dim ker(t^k)` on `B(f)_s` for `k = 1..=kmax`.
    pub torsion: Vec<usize>,
    /// Whether `df^W^{n-1} = df^d(W^{n-2}) + f W^n` held in this degree.
    pub prop1: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedReport {
    pub schema: String,
    pub f: String,
    pub vars: Vec<String>,
    pub n: usize,
    pub d: u32,
    pub isolated: bool,
    pub kmax: u32,
    pub rows: Vec<GradedRow>,
    /// Largest torsion order (at most `kmax`) among classes in the scanned
    /// degrees; says nothing about degrees outside the range.
    pub max_torsion_order_seen: Option<u32>,
}

impl GradedReport {
    /// `dim B - dim C = dim M(-n)` and the column-space identity, in every row.
    pub fn identities_hold(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.prop1 && r.dim_b >= r.dim_c && r.dim_b - r.dim_c == r.dim_m)
    }
}

fn least_stable_order(torsion: &[usize]) -> Option<u32> {
    let last = *torsion.last()?;
    if last == 0 {
        return None;
    }
    torsion.iter().position(|&v| v == last).map(|i| i as u32 + 1)
}

/// Per-degree dimensions of `M(f)`, `B(f)`, `C(f)` and the torsion
/// filtration for total degrees `max(s_min, n)..=s_max`.
pub fn graded_report(f: &Polynomial, s_min: u32, s_max: u32, kmax: u32) -> Result<GradedReport> {
    let d = homogeneous_degree(f)?;
    let n = f.ring().nvars();
    if s_min > s_max {
        return Err(Error::InvalidParameter(format!(
            "empty degree range {s_min}..={s_max}"
        )));
    }
    let mut rows = Vec::new();
    for s in s_min.max(n as u32)..=s_max {
        let c = s - n as u32;
        let dfd = assemble_dfd_matrix(f, c)?;
        let kos = assemble_koszul_top_matrix(f, c)?;
        let dfd_rank = exactla::rank(&dfd);
        let kos_rank = exactla::rank(&kos);
        let torsion = if kmax == 0 {
            Vec::new()
        } else {
            filtration_from_rank(f, d, c, dfd_rank, kmax)?
        };
        rows.push(GradedRow {
            s,
            coeff_deg: c,
            dim_m: milnor_dim(f, c)?,
            dim_b: dfd.rows() - dfd_rank,
            dim_c: kos_rank - dfd_rank,
            torsion,
            prop1: prop1_from_matrices(f, d, c, &kos, &dfd)?,
        });
    }
    let max_torsion_order_seen = rows.iter().filter_map(|r| least_stable_order(&r.torsion)).max();
    Ok(GradedReport {
        schema: SCHEMA.to_string(),
        f: f.to_string(),
        vars: f.ring().names().to_vec(),
        n,
        d,
        isolated: is_isolated(f)?,
        kmax,
        rows,
        max_torsion_order_seen,
    })
}
