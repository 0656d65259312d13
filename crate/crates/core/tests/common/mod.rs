//! Random generators and independent oracles shared by the integration
//! targets.
#![allow(dead_code)]

use std::collections::BTreeSet;

use knotq::claspers::YSpec;
use knotq::laurent::LaurentPoly;
use knotq::ltheta::{ThetaElement, Triple};
use knotq::matrix::{Int, Matrix};
use knotq::seifert::{standard_form, SeifertMatrix, TubeVector};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Leibniz expansion over all permutations.
pub fn leibniz_det(m: &Matrix<LaurentPoly>) -> LaurentPoly {
    fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(vec![], false)];
        }
        let mut out = Vec::new();
        for (p, odd) in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                // inserting at pos shifts the new largest element past len - pos others
                let swaps = p.len() - pos;
                out.push((q, odd ^ (swaps % 2 == 1)));
            }
        }
        out
    }
    let n = m.rows();
    let mut total = LaurentPoly::zero();
    for (p, odd) in perms(n) {
        let mut term = LaurentPoly::one();
        for (i, &j) in p.iter().enumerate() {
            term = &term * &m[(i, j)];
        }
        total = if odd { &total - &term } else { &total + &term };
    }
    total
}

/// `t^-g det(t SM - SM^T)` through the Leibniz oracle.
pub fn alexander_oracle(sm: &SeifertMatrix) -> LaurentPoly {
    let e = sm.entries();
    let n = e.rows();
    let m = Matrix::from_fn(n, n, |i, j| {
        LaurentPoly::from_terms([(1, e[(i, j)].clone()), (0, -e[(j, i)].clone())])
    });
    leibniz_det(&m).shift(-(sm.genus() as i64))
}

/// Random Seifert matrix with `SM - SM^T = J`.
pub fn random_geometric(rng: &mut impl Rng, g: usize, bound: i64) -> SeifertMatrix {
    let n = 2 * g;
    let j = standard_form(g);
    let mut m = Matrix::<Int>::zeros(n, n);
    for a in 0..n {
        for b in 0..=a {
            let v = Int::from(rng.random_range(-bound..=bound));
            m[(a, b)] = v.clone();
            if a != b {
                m[(b, a)] = v + &j[(b, a)];
            }
        }
    }
    SeifertMatrix::new(m).unwrap()
}

/// Random `[[0, I + U], [U^T, V]]`.
pub fn random_trivial_alexander(rng: &mut impl Rng, g: usize, bound: i64) -> SeifertMatrix {
    let n = 2 * g;
    let mut m = Matrix::<Int>::zeros(n, n);
    for i in 0..g {
        m[(i, g + i)] = Int::one();
        for j in i + 1..g {
            let u = Int::from(rng.random_range(-bound..=bound));
            m[(i, g + j)] = u.clone();
            m[(g + j, i)] = u;
            let v = Int::from(rng.random_range(-bound..=bound));
            m[(g + i, g + j)] = v.clone();
            m[(g + j, g + i)] = v;
        }
    }
    SeifertMatrix::new(m).unwrap()
}

pub fn random_tube(rng: &mut impl Rng, size: usize, bound: i64) -> TubeVector {
    TubeVector(
        (0..size)
            .map(|_| Int::from(rng.random_range(-bound..=bound)))
            .collect(),
    )
}

/// Product of random elementary integer matrices and signed swaps.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> Matrix<Int> {
    let mut p = Matrix::<Int>::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..steps {
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        if rng.random_bool(0.2) {
            p.swap_rows(a, b);
        } else {
            let k = Int::from(rng.random_range(-2i64..=2));
            for j in 0..n {
                let v = &p[(a, j)] + &k * &p[(b, j)];
                p[(a, j)] = v;
            }
        }
    }
    p
}

/// Random Laurent polynomial with at most `terms` terms.
pub fn random_laurent(rng: &mut impl Rng, terms: usize) -> LaurentPoly {
    let k = rng.random_range(0..=terms);
    LaurentPoly::from_terms(
        (0..k).map(|_| (rng.random_range(-3i64..=3), rng.random_range(-4i64..=4))),
    )
}

/// Random upper unitriangular matrix over `Z[t, t^-1]`.
pub fn random_unitriangular(rng: &mut impl Rng, n: usize, terms: usize) -> Matrix<LaurentPoly> {
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            cells.push(match i.cmp(&j) {
                std::cmp::Ordering::Equal => LaurentPoly::one(),
                std::cmp::Ordering::Less => random_laurent(rng, terms),
                std::cmp::Ordering::Greater => LaurentPoly::zero(),
            });
        }
    }
    let mut it = cells.into_iter();
    Matrix::from_fn(n, n, |_, _| it.next().unwrap())
}

/// Orbit of a triple under the group generated by a transposition, a
/// 3-cycle and simultaneous inversion, closed by search and shifted to
/// minimum 0.
pub fn orbit_by_closure(t: Triple) -> BTreeSet<Triple> {
    let shift = |x: Triple| {
        let m = *x.iter().min().unwrap();
        [x[0] - m, x[1] - m, x[2] - m]
    };
    let moves: [fn(Triple) -> Triple; 3] = [
        |x| [x[1], x[0], x[2]],
        |x| [x[1], x[2], x[0]],
        |x| [-x[0], -x[1], -x[2]],
    ];
    let mut seen = BTreeSet::from([shift(t)]);
    let mut stack = vec![shift(t)];
    while let Some(x) = stack.pop() {
        for mv in moves {
            let y = shift(mv(x));
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

/// One of the twelve group elements, indexed `0..12`, applied to a triple.
pub fn act(k: usize, t: Triple) -> Triple {
    const P: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
    ];
    let p = P[k % 6];
    let s = if k >= 6 { -1 } else { 1 };
    [s * t[p[0]], s * t[p[1]], s * t[p[2]]]
}

/// Random element of the augmentation kernel: terms on triples with entries
/// at most `w`, coefficients at most `c` in size, corrected at `[0,0,0]`.
pub fn random_kernel_element(rng: &mut impl Rng, w: i64, c: i64, terms: usize) -> ThetaElement {
    let mut x = ThetaElement::zero();
    for _ in 0..terms {
        let t = [
            rng.random_range(0..=w),
            rng.random_range(0..=w),
            rng.random_range(0..=w),
        ];
        x.add_scaled(&ThetaElement::class_of(t, rng.random_range(-c..=c)), 1);
    }
    let aug = knotq::ltheta::augment(&x);
    x.add_scaled(&ThetaElement::class_of([0, 0, 0], -aug), 1);
    x
}

pub fn random_y(rng: &mut impl Rng, bands: usize) -> YSpec {
    YSpec {
        bands: [0; 3].map(|_| rng.random_range(0..bands)),
        windings: [0; 3].map(|_| rng.random_range(-2..=2)),
        half_twists: [0; 3].map(|_| rng.random_bool(0.3)),
        framings: [0; 3].map(|_| rng.random_range(-1..=1)),
    }
}
