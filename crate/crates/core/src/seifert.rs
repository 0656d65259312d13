//! Seifert matrices, the Alexander polynomial, algebraic S-equivalence moves,
//! basis-form classification and the triangular base change for the
//! equivariant intersection matrix.
//!
//! Basis convention: for genus `g` the basis is ordered
//! `(s_1, .., s_g, l_1, .., l_g)` and the entry `(a, b)` of a Seifert matrix is
//! `lk(a, b pushed off)`. A geometric basis has `SM - SM^T = J` with
//! `J = [[0, I], [-I, 0]]`.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::laurent::{self, LaurentPoly};
use crate::matrix::{int_det, int_rank, is_unimodular, Int, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    entries: Matrix<Int>,
}

/// Linking numbers of a new tube's long curve with the current basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TubeVector(pub Vec<Int>);

impl TubeVector {
    pub fn from_i64(v: &[i64]) -> Self {
        TubeVector(v.iter().map(|&x| Int::from(x)).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisForm {
    Other,
    Geometric,
    TrivialAlexander,
    MinimalSeifert,
}

impl fmt::Display for BasisForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisForm::Other => "other",
            BasisForm::Geometric => "geometric",
            BasisForm::TrivialAlexander => "trivial_alexander",
            BasisForm::MinimalSeifert => "minimal_seifert",
        })
    }
}

impl SeifertMatrix {
    pub fn new(entries: Matrix<Int>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::Dimension(format!(
                "Seifert matrix must be square, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        if !entries.rows().is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "Seifert matrix must have even size 2g, got {}",
                entries.rows()
            )));
        }
        Ok(SeifertMatrix { entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn empty() -> Self {
        SeifertMatrix {
            entries: Matrix::zeros(0, 0),
        }
    }

    pub fn entries(&self) -> &Matrix<Int> {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    fn block(&self, bi: usize, bj: usize, i: usize, j: usize) -> &Int {
        let g = self.genus();
        &self.entries[(bi * g + i, bj * g + j)]
    }

    pub fn is_geometric(&self) -> bool {
        let m = &self.entries;
        let j = standard_form(self.genus());
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| &m[(a, b)] - &m[(b, a)] == j[(a, b)]))
    }

    /// `[[0, I + U], [U^T, V]]` with `U` strictly upper triangular and `V`
    /// symmetric with zero diagonal.
    pub fn is_trivial_alexander(&self) -> bool {
        let g = self.genus();
        for i in 0..g {
            for j in 0..g {
                if !self.block(0, 0, i, j).is_zero() {
                    return false;
                }
                let top_right = self.block(0, 1, i, j);
                let ok = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => top_right.is_one(),
                    std::cmp::Ordering::Greater => top_right.is_zero(),
                    std::cmp::Ordering::Less => true,
                };
                if !ok {
                    return false;
                }
                let bottom_left = self.block(1, 0, i, j);
                let expected = if i == j {
                    Int::zero()
                } else {
                    self.block(0, 1, j, i).clone()
                };
                if *bottom_left != expected {
                    return false;
                }
                let v = self.block(1, 1, i, j);
                if (i == j && !v.is_zero()) || v != self.block(1, 1, j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// `[[0, I], [0, 0]]`.
    pub fn is_minimal_seifert(&self) -> bool {
        let g = self.genus();
        let n = self.size();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let want = a < g && b == a + g;
                if want {
                    self.entries[(a, b)].is_one()
                } else {
                    self.entries[(a, b)].is_zero()
                }
            })
        })
    }

    pub fn classify(&self) -> BasisForm {
        if self.is_minimal_seifert() {
            BasisForm::MinimalSeifert
        } else if self.is_trivial_alexander() {
            BasisForm::TrivialAlexander
        } else if self.is_geometric() {
            BasisForm::Geometric
        } else {
            BasisForm::Other
        }
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.entries.fmt(f)
    }
}

/// `J = [[0, I], [-I, 0]]` in `g x g` blocks.
pub fn standard_form(g: usize) -> Matrix<Int> {
    Matrix::from_fn(2 * g, 2 * g, |a, b| {
        if a < g && b == a + g {
            Int::one()
        } else if a >= g && b + g == a {
            -Int::one()
        } else {
            Int::zero()
        }
    })
}

pub fn is_symplectic(p: &Matrix<Int>) -> bool {
    if !p.is_square() || !p.rows().is_multiple_of(2) {
        return false;
    }
    let j = standard_form(p.rows() / 2);
    let pt = p.transpose();
    pt.mul(&j)
        .and_then(|x| x.mul(p))
        .map(|x| x == j)
        .unwrap_or(false)
}

/// `Delta(t) = t^-g det(t SM - SM^T)`.
pub fn alexander(sm: &SeifertMatrix) -> LaurentPoly {
    let m = sm.entries();
    let n = sm.size();
    let t = LaurentPoly::t();
    let pencil = Matrix::from_fn(n, n, |i, j| {
        &(&t * &LaurentPoly::constant(m[(i, j)].clone()))
            - &LaurentPoly::constant(m[(j, i)].clone())
    });
    let d = laurent::det(&pencil).expect("pencil is square");
    d.shift(-(sm.genus() as i64))
}

/// Appends the short and long curve of a new tube as the last two basis
/// vectors: `[[SM, 0, rho], [0, 0, 1], [rho^T, 0, 0]]`.
pub fn add_tube(sm: &SeifertMatrix, rho: &TubeVector) -> Result<SeifertMatrix> {
    let n = sm.size();
    if rho.0.len() != n {
        return Err(Error::Dimension(format!(
            "tube vector has length {} but the Seifert matrix has size {n}",
            rho.0.len()
        )));
    }
    let (s, l) = (n, n + 1);
    let old = sm.entries();
    let entries = Matrix::from_fn(n + 2, n + 2, |i, j| {
        if i < n && j < n {
            old[(i, j)].clone()
        } else if i < n && j == l {
            rho.0[i].clone()
        } else if i == l && j < n {
            rho.0[j].clone()
        } else if i == s && j == l {
            Int::one()
        } else {
            Int::zero()
        }
    });
    SeifertMatrix::new(entries)
}

/// [`add_tube`] followed by moving the new short curve in front of the long
/// curves, so the result is again ordered `(s_1, .., s_g, l_1, .., l_g)`.
pub fn add_tube_reordered(sm: &SeifertMatrix, rho: &TubeVector) -> Result<SeifertMatrix> {
    let g = sm.genus();
    let n = sm.size();
    let tubed = add_tube(sm, rho)?;
    let order: Vec<usize> = (0..g).chain([n]).chain(g..n).chain([n + 1]).collect();
    SeifertMatrix::new(tubed.entries().select(&order, &order))
}

/// Base change `P^T SM P`; `P` must be unimodular.
pub fn congruence(sm: &SeifertMatrix, p: &Matrix<Int>) -> Result<SeifertMatrix> {
    if !p.is_square() || p.rows() != sm.size() {
        return Err(Error::Dimension(format!(
            "basis change is {}x{} but the Seifert matrix has size {}",
            p.rows(),
            p.cols(),
            sm.size()
        )));
    }
    if !is_unimodular(p) {
        return Err(Error::InvalidBasisChange(format!(
            "determinant {} is not +-1",
            int_det(p)?
        )));
    }
    SeifertMatrix::new(p.transpose().mul(sm.entries())?.mul(p)?)
}

/// Rank of the Seifert form over the rationals.
pub fn seifert_rank(sm: &SeifertMatrix) -> usize {
    int_rank(sm.entries())
}

/// Adds tubes to the empty form in order, then reorders the basis from
/// `(s_1, l_1, s_2, l_2, ..)` to `(s_1, .., s_g, l_1, .., l_g)`.
///
/// The `k`-th vector (0-based) is expressed in the interleaved basis built so
/// far and must have length `2k`.
pub fn tube_history_to_matrix(history: &[TubeVector]) -> Result<SeifertMatrix> {
    let mut sm = SeifertMatrix::empty();
    for (k, rho) in history.iter().enumerate() {
        if rho.0.len() != 2 * k {
            return Err(Error::Dimension(format!(
                "tube {k}: expected length {}, got {}",
                2 * k,
                rho.0.len()
            )));
        }
        sm = add_tube(&sm, rho)?;
    }
    let g = history.len();
    let order: Vec<usize> = (0..g)
        .map(|i| 2 * i)
        .chain((0..g).map(|i| 2 * i + 1))
        .collect();
    SeifertMatrix::new(sm.entries().select(&order, &order))
}

/// Generators of `Sp(2g, Z)` used by the bounded basis search. The set is
/// closed under inverses.
pub fn symplectic_generators(g: usize) -> Vec<Matrix<Int>> {
    let n = 2 * g;
    let mut gens = Vec::new();
    let elementary = |entries: &[(usize, usize, i64)]| {
        let mut m = Matrix::<Int>::identity(n);
        for &(i, j, v) in entries {
            m[(i, j)] += Int::from(v);
        }
        m
    };
    for sign in [1i64, -1] {
        for i in 0..g {
            // s_i/l_i transvections
            gens.push(elementary(&[(i, g + i, sign)]));
            gens.push(elementary(&[(g + i, i, sign)]));
        }
        for i in 0..g {
            for j in i + 1..g {
                gens.push(elementary(&[(i, g + j, sign), (j, g + i, sign)]));
                gens.push(elementary(&[(g + i, j, sign), (g + j, i, sign)]));
            }
        }
        // mixing between pairs: diag(A, A^-T) with A = I + sign E_ij
        for i in 0..g {
            for j in 0..g {
                if i != j {
                    gens.push(elementary(&[(i, j, sign), (g + j, g + i, -sign)]));
                }
            }
        }
        // hyperbolic swap s_i -> sign l_i, l_i -> -sign s_i
        for i in 0..g {
            let mut m = Matrix::<Int>::identity(n);
            m[(i, i)] = Int::zero();
            m[(g + i, g + i)] = Int::zero();
            m[(g + i, i)] = Int::from(sign);
            m[(i, g + i)] = Int::from(-sign);
            gens.push(m);
        }
    }
    gens
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// `congruence(sm, certificate)` is in minimal Seifert form.
    Found {
        certificate: Matrix<Int>,
        depth: usize,
        result: SeifertMatrix,
    },
    /// Nothing within the bound. This is not a proof that no minimal Seifert
    /// basis exists.
    NotFound { depth: usize, explored: usize },
}

pub fn search_minimal_basis(sm: &SeifertMatrix, depth: usize) -> Result<SearchOutcome> {
    search_minimal_basis_with(sm, depth, Execution::default())
}

/// Breadth-first search over words of at most `depth` symplectic generators.
///
/// Among the hits at the smallest depth, the lexicographically least
/// certificate (row-major entries) is returned, independent of `exec`.
pub fn search_minimal_basis_with(
    sm: &SeifertMatrix,
    depth: usize,
    exec: Execution,
) -> Result<SearchOutcome> {
    if !sm.is_geometric() {
        return Err(Error::Precondition(
            "basis search needs a geometric Seifert matrix (SM - SM^T = J)".into(),
        ));
    }
    let n = sm.size();
    if sm.is_minimal_seifert() {
        return Ok(SearchOutcome::Found {
            certificate: Matrix::identity(n),
            depth: 0,
            result: sm.clone(),
        });
    }
    let gens = symplectic_generators(sm.genus());
    let gens_t: Vec<Matrix<Int>> = gens.iter().map(Matrix::transpose).collect();
    let mut visited: HashSet<Matrix<Int>> = HashSet::new();
    visited.insert(sm.entries().clone());
    let mut frontier = vec![(sm.entries().clone(), Matrix::<Int>::identity(n))];

    for d in 1..=depth {
        let expanded = exec::map(exec, &frontier, |(state, cert)| {
            gens.iter()
                .zip(&gens_t)
                .map(|(g, gt)| {
                    let next = gt.mul(state).and_then(|x| x.mul(g)).expect("square");
                    (next, cert.mul(g).expect("square"))
                })
                .collect::<Vec<_>>()
        });
        let mut children: Vec<_> = expanded.into_iter().flatten().collect();
        children.sort_by(|a, b| a.1.cmp(&b.1));
        let mut next = Vec::new();
        for (state, cert) in children {
            if visited.insert(state.clone()) {
                next.push((state, cert));
            }
        }
        let hit = next.iter().find(|(state, _)| {
            SeifertMatrix {
                entries: state.clone(),
            }
            .is_minimal_seifert()
        });
        if let Some((state, cert)) = hit {
            return Ok(SearchOutcome::Found {
                certificate: cert.clone(),
                depth: d,
                result: SeifertMatrix {
                    entries: state.clone(),
                },
            });
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(SearchOutcome::NotFound {
        depth,
        explored: visited.len(),
    })
}

/// Equivariant intersection matrix `D_ij = delta_ij + u_ij (1 - t)` of the
/// dual spheres with the disks bounding the pushed-off short curves.
///
/// Pushoff convention: `u_ij = lk(l_j, s_i pushed off) = SM[l_j][s_i]`, the
/// bottom-left block read transposed. For a trivial Alexander basis this is
/// the strictly upper triangular `U`, so `D` is upper unitriangular.
pub fn intersection_matrix(sm: &SeifertMatrix) -> Result<Matrix<LaurentPoly>> {
    if !sm.is_trivial_alexander() {
        return Err(Error::Precondition(
            "intersection matrix needs a trivial Alexander basis".into(),
        ));
    }
    let g = sm.genus();
    let one_minus_t = LaurentPoly::from_terms([(0, 1), (1, -1)]);
    Ok(Matrix::from_fn(g, g, |i, j| {
        let u = LaurentPoly::constant(sm.block(1, 0, j, i).clone());
        let delta = LaurentPoly::constant(i64::from(i == j));
        &delta + &(&u * &one_minus_t)
    }))
}

pub fn is_unitriangular(d: &Matrix<LaurentPoly>) -> bool {
    d.is_square()
        && (0..d.rows()).all(|i| {
            (0..=i).all(|j| {
                if i == j {
                    d[(i, j)].is_one()
                } else {
                    d[(i, j)].is_zero()
                }
            })
        })
}

/// Triangular base change: rows of `B` express the dual family `f_i` in
/// terms of the `g_i`, with `f_i = g_i - sum_{k > i} D_ik f_k` (the recursion
/// runs from the last index since `D` is upper unitriangular). `B D = I`.
pub fn triangular_dualize(d: &Matrix<LaurentPoly>) -> Result<Matrix<LaurentPoly>> {
    if !is_unitriangular(d) {
        return Err(Error::Precondition(
            "triangular base change needs an upper unitriangular matrix".into(),
        ));
    }
    let n = d.rows();
    let mut b = Matrix::<LaurentPoly>::identity(n);
    for i in (0..n).rev() {
        for k in i + 1..n {
            if d[(i, k)].is_zero() {
                continue;
            }
            for j in k..n {
                let v = &b[(i, j)] - &(&d[(i, k)] * &b[(k, j)]);
                b[(i, j)] = v;
            }
        }
    }
    Ok(b)
}

/// On-disk form of a Seifert matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeifertFile {
    pub genus: usize,
    pub matrix: Vec<Vec<i64>>,
}

impl SeifertFile {
    pub fn into_matrix(self) -> Result<SeifertMatrix> {
        let rows = self
            .matrix
            .into_iter()
            .map(|r| r.into_iter().map(Int::from).collect())
            .collect();
        let sm = SeifertMatrix::new(Matrix::from_rows(rows)?)?;
        if sm.genus() != self.genus {
            return Err(Error::Dimension(format!(
                "declared genus {} but the matrix has size {}",
                self.genus,
                sm.size()
            )));
        }
        Ok(sm)
    }
}

/// On-disk form of a tube history.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TubeFile {
    pub tubes: Vec<Vec<i64>>,
}

impl TubeFile {
    pub fn vectors(&self) -> Vec<TubeVector> {
        self.tubes.iter().map(|t| TubeVector::from_i64(t)).collect()
    }
}
