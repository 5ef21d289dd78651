//! Exact dense linear algebra over the rationals.
//!
//! Every routine clears denominators row by row and runs fraction-free
//! (Bareiss) elimination over the integers. Once a row is brought up to
//! date with step `k`, its entries are minors of the original integer
//! matrix, so the division by the previous pivot is exact. Pivots are chosen
//! as the entry of least bit length in the current column.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::Rational;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = RationalMatrix::zeros(k, k);
        for i in 0..k {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        let nrows = rows.len();
        Ok(RationalMatrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix with `rows` rows from its columns.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column of wrong length".into()));
        }
        let mut m = RationalMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RationalMatrix {
            rows,
            cols,
            data: entries.iter().map(|&v| Rational::from_integer(v.into())).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &RationalMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot place {} rows beside {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(RationalMatrix { rows: self.rows, cols, data })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

/// Plain-text grid, one row per line.
impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub solvable: bool,
    /// Free variables set to zero; present iff `solvable`.
    pub particular: Option<Vec<Rational>>,
    pub rank: usize,
    pub kernel_dim: usize,
}

/// Row echelon form of an integer matrix together with its pivot positions.
struct Echelon {
    m: Vec<Vec<BigInt>>,
    pivots: Vec<(usize, usize)>,
}

/// Scales each row by the lcm of its denominators. `extra` is appended as a
/// final column and scaled with its row.
fn integer_rows(a: &RationalMatrix, extra: Option<&[Rational]>) -> Vec<Vec<BigInt>> {
    (0..a.rows)
        .map(|i| {
            let row = a.row(i);
            let tail = extra.map(|b| &b[i]);
            let lcm = row
                .iter()
                .chain(tail)
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .chain(tail)
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect()
        })
        .collect()
}

/// One-step Bareiss elimination with lazy row scaling. A row whose entry
/// under step `k`'s pivot is zero would only be multiplied by
/// `p_k / p_{k-1}`; those factors telescope, so each row records the last
/// step it saw and is brought up to date only when it is actually used.
fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut pivots = Vec::new();
    // divisors[k] is the pivot of step k; divisors[0] = 1
    let mut divisors = vec![BigInt::one()];
    let mut level = vec![0usize; nrows];
    let lift = |row: &mut [BigInt], from: usize, to: usize, divisors: &[BigInt]| {
        if from == to || divisors[to] == divisors[from] {
            return;
        }
        for v in row.iter_mut().filter(|v| !v.is_zero()) {
            *v = &*v * &divisors[to] / &divisors[from];
        }
    };
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let pick = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].bits());
        let Some(p) = pick else { continue };
        m.swap(r, p);
        level.swap(r, p);
        let k = pivots.len();
        lift(&mut m[r][c..], level[r], k, &divisors);
        level[r] = k;
        let (head, tail) = m.split_at_mut(r + 1);
        let prow = &head[r];
        let support: Vec<usize> = (c + 1..ncols).filter(|&j| !prow[j].is_zero()).collect();
        for (row, lvl) in tail.iter_mut().zip(level[r + 1..].iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            lift(&mut row[c..], *lvl, k, &divisors);
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                if row[j].is_zero() && prow[j].is_zero() {
                    continue;
                }
                row[j] = &prow[c] * &row[j];
            }
            for &j in &support {
                row[j] -= &lead * &prow[j];
            }
            if !divisors[k].is_one() {
                for v in row[c + 1..].iter_mut().filter(|v| !v.is_zero()) {
                    *v /= &divisors[k];
                }
            }
            *lvl = k + 1;
        }
        divisors.push(prow[c].clone());
        pivots.push((r, c));
        r += 1;
    }
    Echelon { m, pivots }
}

/// Exact rank over the rationals.
pub fn rank(a: &RationalMatrix) -> usize {
    if a.rows == 0 || a.cols == 0 {
        return 0;
    }
    bareiss(integer_rows(a, None), a.cols).pivots.len()
}

/// Decides `A x = b`; when solvable returns the solution with every
/// non-pivot variable zero.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Result<SolveOutcome> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows
        )));
    }
    let ech = bareiss(integer_rows(a, Some(b)), a.cols + 1);
    let rank = ech.pivots.iter().filter(|&&(_, c)| c < a.cols).count();
    let kernel_dim = a.cols - rank;
    if ech.pivots.len() > rank {
        return Ok(SolveOutcome { solvable: false, particular: None, rank, kernel_dim });
    }
    let mut x = vec![Rational::zero(); a.cols];
    for &(r, c) in ech.pivots.iter().rev() {
        let row = &ech.m[r];
        let mut s = Rational::from_integer(row[a.cols].clone());
        for j in c + 1..a.cols {
            if !row[j].is_zero() && !x[j].is_zero() {
                s -= &x[j] * Rational::from_integer(row[j].clone());
            }
        }
        x[c] = s / Rational::from_integer(row[c].clone());
    }
    Ok(SolveOutcome { solvable: true, particular: Some(x), rank, kernel_dim })
}

pub fn in_column_space(a: &RationalMatrix, b: &[Rational]) -> Result<bool> {
    Ok(solve(a, b)?.solvable)
}

/// Whether `A` and `B` span the same column space: `rank A = rank B = rank [A|B]`.
pub fn column_spaces_equal(a: &RationalMatrix, b: &RationalMatrix) -> Result<bool> {
    let joint = rank(&a.hstack(b)?);
    Ok(rank(a) == joint && rank(b) == joint)
}

/// `dim { v : M v in colspace(W) }`, computed as
/// `cols(M) - rank [M | W] + rank W`.
pub fn preimage_dim(m: &RationalMatrix, w: &RationalMatrix) -> Result<usize> {
    let joint = rank(&m.hstack(w)?);
    Ok(m.cols + rank(w) - joint)
}
