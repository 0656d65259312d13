//! Integer lattices: row Hermite normal form with transform, membership in a
//! `Z`-span with witness, and Smith invariant factors.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{Int, Matrix};

/// Row-style Hermite normal form `H = U A` with `U` unimodular.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: Matrix<Int>,
    pub u: Matrix<Int>,
    /// Pivot column of each of the first `pivots.len()` rows of `h`.
    pub pivots: Vec<usize>,
}

fn row_axpy(m: &mut Matrix<Int>, dst: usize, src: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = &m[(dst, j)] - q * &m[(src, j)];
        m[(dst, j)] = v;
    }
}

fn row_negate(m: &mut Matrix<Int>, r: usize) {
    for j in 0..m.cols() {
        let v = -&m[(r, j)];
        m[(r, j)] = v;
    }
}

pub fn hermite(a: &Matrix<Int>) -> Hermite {
    let (rows, cols) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = Matrix::<Int>::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero magnitude at or below r goes to r
            let best = (r..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            row_negate(&mut h, r);
            row_negate(&mut u, r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hermite { h, u, pivots }
}

/// Integer coefficients `c` with `sum_i c_i * gens_i = x`, or `None` when `x`
/// is outside the `Z`-span of the rows of `gens`.
pub fn solve_in_span(gens: &Matrix<Int>, x: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(
        gens.cols(),
        x.len(),
        "vector length must match generator length"
    );
    let herm = hermite(gens);
    let mut residual = x.to_vec();
    let mut in_h = vec![Int::zero(); herm.pivots.len()];
    for (r, &p) in herm.pivots.iter().enumerate() {
        if residual[p].is_zero() {
            continue;
        }
        let (q, rem) = residual[p].div_rem(&herm.h[(r, p)]);
        if !rem.is_zero() {
            return None;
        }
        for (j, v) in residual.iter_mut().enumerate() {
            *v -= &q * &herm.h[(r, j)];
        }
        in_h[r] = q;
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return None;
    }
    let coeffs = (0..gens.rows())
        .map(|j| {
            in_h.iter()
                .enumerate()
                .fold(Int::zero(), |acc, (r, c)| acc + c * &herm.u[(r, j)])
        })
        .collect();
    Some(coeffs)
}

/// Nonzero Smith invariant factors `d_1 | d_2 | ..` of `a`.
pub fn smith_invariants(a: &Matrix<Int>) -> Vec<Int> {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[(i, j)].is_zero())
            .min_by(|&a, &b| m[a].abs().cmp(&m[b].abs()));
        let Some((pi, pj)) = pivot else { break };
        m.swap_rows(t, pi);
        swap_cols(&mut m, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[(i, t)].div_floor(&m[(t, t)]);
                row_axpy(&mut m, i, t, &q);
                if !m[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[(t, j)].div_floor(&m[(t, t)]);
                col_axpy(&mut m, j, t, &q);
                if !m[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // enforce divisibility by the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[(i, j)].is_multiple_of(&m[(t, t)]));
                match bad {
                    Some((i, _)) => {
                        row_axpy(&mut m, t, i, &-Int::one());
                    }
                    None => break,
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let best = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&p| !m[p].is_zero())
                .min_by(|&a, &b| m[a].abs().cmp(&m[b].abs()))
                .expect("pivot row/column is nonzero");
            m.swap_rows(t, best.0);
            swap_cols(&mut m, t, best.1);
        }
        out.push(m[(t, t)].abs());
        t += 1;
    }
    out
}

fn swap_cols(m: &mut Matrix<Int>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let tmp = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = tmp;
    }
}

fn col_axpy(m: &mut Matrix<Int>, dst: usize, src: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let v = &m[(i, dst)] - q * &m[(i, src)];
        m[(i, dst)] = v;
    }
}

/// Structure of `Z^n / span(rows)`: free rank and the nontrivial torsion
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

pub fn quotient_structure(gens: &Matrix<Int>) -> QuotientStructure {
    let inv = smith_invariants(gens);
    QuotientStructure {
        free_rank: gens.cols() - inv.len(),
        torsion: inv.into_iter().filter(|d| !d.is_one()).collect(),
    }
}
