#![allow(dead_code)]

use brieskorn::exactla::RationalMatrix;
use brieskorn::exterior::{DifferentialForm, IndexSet};
use brieskorn::polyring::{monomial_basis, parse_poly, Monomial, Polynomial, Rational, Ring};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Textbook Gauss-Jordan over Q. Returns the reduced row echelon form and
/// its pivot columns.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..ncols {
                    let sub = &factor * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rows_of(a: &RationalMatrix) -> Vec<Vec<Rational>> {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

pub fn naive_rank(a: &RationalMatrix) -> usize {
    rref(&rows_of(a), a.cols()).1.len()
}

/// Naive solvability of `a x = b`.
pub fn naive_solvable(a: &RationalMatrix, b: &[Rational]) -> bool {
    let rows: Vec<Vec<Rational>> = rows_of(a)
        .into_iter()
        .zip(b)
        .map(|(mut r, bi)| {
            r.push(bi.clone());
            r
        })
        .collect();
    !rref(&rows, a.cols() + 1).1.contains(&a.cols())
}

/// Kernel basis of `a` read off the reduced echelon form.
pub fn kernel_basis(a: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (m, pivots) = rref(&rows_of(a), a.cols());
    (0..a.cols())
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); a.cols()];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> RationalMatrix {
    let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    RationalMatrix::from_i64(rows, cols, &entries).unwrap()
}

/// A random matrix of prescribed rank at most `r`, so that degenerate cases
/// are common.
pub fn random_low_rank(rng: &mut impl Rng, rows: usize, cols: usize, r: usize) -> RationalMatrix {
    let left = random_matrix(rng, rows, r, 3);
    let right = random_matrix(rng, r, cols, 3);
    let mut out = RationalMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let v: Rational = (0..r).map(|k| left.get(i, k) * right.get(k, j)).sum();
            out.set(i, j, v);
        }
    }
    out
}

/// Random homogeneous polynomial of degree `d` with roughly `density` of
/// the monomials present and small integer coefficients; never zero.
pub fn random_homogeneous(rng: &mut impl Rng, ring: &Ring, d: u32, density: f64) -> Polynomial {
    loop {
        let mut terms = Vec::new();
        for m in monomial_basis(ring, d) {
            if !rng.gen_bool(density) {
                continue;
            }
            let c = loop {
                let c = rng.gen_range(-4i64..=4);
                if c != 0 {
                    break c;
                }
            };
            terms.push((m, q(c)));
        }
        let p = Polynomial::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random j-form whose coefficients are homogeneous of degree `m`.
pub fn random_form(rng: &mut impl Rng, ring: &Ring, j: usize, m: u32) -> DifferentialForm {
    let terms: Vec<(IndexSet, Polynomial)> = IndexSet::all(ring.nvars(), j)
        .into_iter()
        .map(|idx| (idx, random_homogeneous(rng, ring, m, 0.5)))
        .collect();
    DifferentialForm::from_terms(ring, j, terms).unwrap()
}

pub fn xyz(n: usize) -> Ring {
    Ring::new(["x", "y", "z", "t"].into_iter().take(n)).unwrap()
}

/// Random linear form with nonzero coefficients drawn from -3..=3.
pub fn random_linear(rng: &mut impl Rng, ring: &Ring) -> Polynomial {
    random_homogeneous(rng, ring, 1, 0.8)
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub label: String,
    pub f: Polynomial,
    /// Set for binary forms built to be primitive and non-isolated.
    pub primitive_nonisolated: bool,
}

/// Seeded homogeneous samples for the universal identities: generic random
/// forms plus structured non-isolated families.
pub fn property_samples(seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut push = |label: String, f: Polynomial, prim: bool| {
        out.push(Sample { label, f, primitive_nonisolated: prim })
    };
    for n in [2usize, 3] {
        let ring = xyz(n);
        for d in [2u32, 3, 4] {
            for i in 0..2 {
                let f = random_homogeneous(&mut rng, &ring, d, 0.6);
                push(format!("generic n={n} d={d} #{i}"), f, false);
            }
        }
        // squared linear factor: singular along {l = g = 0}
        for d in [3u32, 4] {
            let l = random_linear(&mut rng, &ring);
            let g = random_homogeneous(&mut rng, &ring, d - 2, 0.7);
            push(format!("l^2*g n={n} d={d}"), &(&l * &l) * &g, false);
        }
    }
    // ternary forms in two variables: singular along the z-axis
    let r3 = xyz(3);
    let r2 = xyz(2);
    for d in [2u32, 3, 4] {
        let g = parse_poly(&random_homogeneous(&mut rng, &r2, d, 0.8).to_string(), &r3).unwrap();
        if !g.involves(0) && !g.involves(1) {
            continue;
        }
        push(format!("binary in n=3 d={d}"), g, false);
    }
    // squares of linear forms and products of two linear forms
    for ring in [&r2, &r3] {
        let l = random_linear(&mut rng, ring);
        let m = random_linear(&mut rng, ring);
        push(format!("l^2 n={}", ring.nvars()), &l * &l, false);
        if ring.nvars() == 3 {
            push("l1*l2 n=3".into(), &l * &m, false);
        }
    }
    // primitive, non-isolated binary forms
    let (x, y) = (Monomial::var(2, 0), Monomial::var(2, 1));
    let lin = |rng: &mut ChaCha8Rng| loop {
        let l = random_linear(rng, &r2);
        if l.involves(0) && l.involves(1) {
            return l;
        }
    };
    for (label, exps, prim) in [
        ("l1^2*l2", vec![2u32, 1], true),
        ("l1^3*l2", vec![3, 1], true),
        ("l1^2*l2*l3", vec![2, 1, 1], true),
        ("l1^2*l2^2", vec![2, 2], false),
    ] {
        // redraw until the linear factors are pairwise independent
        let forms = loop {
            let forms: Vec<Polynomial> = exps.iter().map(|_| lin(&mut rng)).collect();
            let independent = forms.iter().enumerate().all(|(i, a)| {
                forms[i + 1..]
                    .iter()
                    .all(|b| &a.coeff(&x) * &b.coeff(&y) != &a.coeff(&y) * &b.coeff(&x))
            });
            if independent {
                break forms;
            }
        };
        let f = forms
            .iter()
            .zip(&exps)
            .fold(Polynomial::one(&r2), |acc, (l, &e)| &acc * &l.pow(e));
        push(format!("{label} n=2"), f, prim);
    }
    out
}
