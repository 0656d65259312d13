//! The ring `Z[t1^±1, t2^±1, t3^±1] / (t1 t2 t3 - 1)` and its orbit quotient
//! under `Sym3 x Sym2`, the abelian group in which the 2-loop invariant
//! takes values.
//!
//! Monomials of the ambient ring are stored as exponent triples shifted so
//! that the smallest component is 0 (multiplying by `t1 t2 t3` shifts all
//! three exponents equally). Orbit classes are stored by the
//! lexicographically least of the twelve images of a triple: the six
//! permutations, each optionally composed with simultaneous inversion, all
//! re-shifted to minimum 0.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cursor::Cursor;
use crate::error::{Error, Result};
use crate::lattice::{self, QuotientStructure};
use crate::matrix::{Int, Matrix};

pub type Triple = [i64; 3];

pub fn normalize(t: Triple) -> Triple {
    let m = t[0].min(t[1]).min(t[2]);
    [t[0] - m, t[1] - m, t[2] - m]
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// The twelve images of `t` under `Sym3 x Sym2`, each shifted to minimum 0.
pub fn orbit_images(t: Triple) -> [Triple; 12] {
    let mut out = [[0; 3]; 12];
    for (k, p) in PERMUTATIONS.iter().enumerate() {
        let permuted = [t[p[0]], t[p[1]], t[p[2]]];
        out[2 * k] = normalize(permuted);
        out[2 * k + 1] = normalize([-permuted[0], -permuted[1], -permuted[2]]);
    }
    out
}

pub fn canonical(t: Triple) -> Triple {
    *orbit_images(t).iter().min().expect("twelve images")
}

fn add_into(map: &mut BTreeMap<Triple, i64>, key: Triple, c: i64) {
    if c == 0 {
        return;
    }
    let slot = map.entry(key).or_insert(0);
    *slot = slot.checked_add(c).expect("coefficient overflow");
    if *slot == 0 {
        map.remove(&key);
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Triple, &'a i64)>,
    mut term: impl FnMut(&mut fmt::Formatter<'_>, &Triple, i64) -> fmt::Result,
) -> fmt::Result {
    let mut any = false;
    for (k, &c) in terms {
        if any {
            write!(f, " + ")?;
        }
        term(f, k, c)?;
        any = true;
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

/// Element of the ambient three-variable ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AmbientPoly {
    terms: BTreeMap<Triple, i64>,
}

impl AmbientPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial([0, 0, 0], 1)
    }

    pub fn monomial(exp: Triple, coef: i64) -> Self {
        let mut p = Self::zero();
        add_into(&mut p.terms, normalize(exp), coef);
        p
    }

    /// `t_i^e` for `i` in `1..=3`.
    pub fn var_pow(i: usize, e: i64) -> Self {
        assert!((1..=3).contains(&i), "variables are t1, t2, t3");
        let mut exp = [0; 3];
        exp[i - 1] = e;
        Self::monomial(exp, 1)
    }

    /// `t_i^e - 1`.
    pub fn var_pow_minus_one(i: usize, e: i64) -> Self {
        &Self::var_pow(i, e) - &Self::one()
    }

    pub fn from_terms(src: &str) -> Result<Self> {
        src.parse()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Triple, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            add_into(&mut out.terms, e, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let e = normalize([a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
                add_into(&mut out.terms, e, ca * cb);
            }
        }
        out
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a AmbientPoly>) -> Self {
        factors.into_iter().fold(Self::one(), |acc, f| acc.mul(f))
    }
}

impl<'a> Add<&'a AmbientPoly> for &'a AmbientPoly {
    type Output = AmbientPoly;
    fn add(self, rhs: &AmbientPoly) -> AmbientPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            add_into(&mut out.terms, e, c);
        }
        out
    }
}

impl<'a> Sub<&'a AmbientPoly> for &'a AmbientPoly {
    type Output = AmbientPoly;
    fn sub(self, rhs: &AmbientPoly) -> AmbientPoly {
        self + &rhs.scale(-1)
    }
}

impl fmt::Display for AmbientPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), |f, e, c| {
            write!(f, "{c}")?;
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    write!(f, "*t{}^{x}", i + 1)?;
                }
            }
            Ok(())
        })
    }
}

impl FromStr for AmbientPoly {
    type Err = Error;

    /// Sums of terms `c*t1^a*t2^b*t3^c`; factors may repeat or be omitted, a
    /// missing exponent means 1 and a missing coefficient means 1.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        if cur.at_end() {
            return Err(cur.error("empty expression"));
        }
        let mut out = AmbientPoly::zero();
        let mut first = true;
        loop {
            let mut sign = 1i64;
            if !first {
                if cur.eat(b'-') {
                    sign = -1;
                } else if !cur.eat(b'+') {
                    return Err(cur.error("expected '+' or '-' between terms"));
                }
            }
            first = false;
            if cur.eat(b'-') {
                sign = -sign;
            } else {
                cur.eat(b'+');
            }
            let (e, c) = parse_ambient_term(&mut cur)?;
            add_into(&mut out.terms, normalize(e), sign * c);
            if cur.at_end() {
                return Ok(out);
            }
        }
    }
}

fn parse_ambient_term(cur: &mut Cursor<'_>) -> Result<(Triple, i64)> {
    let mut exp = [0i64; 3];
    let mut coef = 1i64;
    if cur.peek_digit() {
        let at = cur.pos();
        let c = cur.digits()?;
        coef = i64::try_from(&c).map_err(|_| Error::parse(at, "coefficient out of range"))?;
        if !cur.eat(b'*') {
            return Ok((exp, coef));
        }
    }
    loop {
        cur.expect(b't')?;
        let var = match cur.peek() {
            Some(d @ b'1'..=b'3') => (d - b'1') as usize,
            _ => return Err(cur.error("expected variable index 1, 2 or 3 after 't'")),
        };
        cur.eat(var as u8 + b'1');
        let e = if cur.eat(b'^') { cur.signed_i64()? } else { 1 };
        exp[var] += e;
        if !cur.eat(b'*') {
            return Ok((exp, coef));
        }
    }
}

/// Element of the orbit quotient group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaElement {
    terms: BTreeMap<Triple, i64>,
}

impl ThetaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `coef` times the class of `t1^a t2^b t3^c`.
    pub fn class_of(exp: Triple, coef: i64) -> Self {
        let mut out = Self::zero();
        add_into(&mut out.terms, canonical(exp), coef);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (Triple, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coefficient(&self, key: Triple) -> i64 {
        self.terms.get(&canonical(key)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = Triple> + '_ {
        self.terms.keys().copied()
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            add_into(&mut out.terms, e, c * k);
        }
        out
    }

    pub fn add_scaled(&mut self, other: &ThetaElement, k: i64) {
        for (e, c) in other.terms() {
            add_into(&mut self.terms, e, c * k);
        }
    }

    /// Some ambient representative.
    pub fn section(&self) -> AmbientPoly {
        let mut out = AmbientPoly::zero();
        for (e, c) in self.terms() {
            add_into(&mut out.terms, e, c);
        }
        out
    }

    pub fn to_file(&self) -> ThetaFile {
        ThetaFile {
            terms: self
                .terms()
                .map(|(exp, coef)| ThetaTerm { exp, coef })
                .collect(),
        }
    }

    pub fn from_file(file: &ThetaFile) -> Self {
        let mut out = Self::zero();
        for t in &file.terms {
            add_into(&mut out.terms, canonical(t.exp), t.coef);
        }
        out
    }
}

impl<'a> Add<&'a ThetaElement> for &'a ThetaElement {
    type Output = ThetaElement;
    fn add(self, rhs: &ThetaElement) -> ThetaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl<'a> Sub<&'a ThetaElement> for &'a ThetaElement {
    type Output = ThetaElement;
    fn sub(self, rhs: &ThetaElement) -> ThetaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, -1);
        out
    }
}

impl Neg for &ThetaElement {
    type Output = ThetaElement;
    fn neg(self) -> ThetaElement {
        self.scale(-1)
    }
}

impl std::iter::Sum for ThetaElement {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ThetaElement::zero(), |mut acc, x| {
            acc.add_scaled(&x, 1);
            acc
        })
    }
}

/// `c*[a,b,c]` terms joined by ` + ` in lexicographic order of the triples.
impl fmt::Display for ThetaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), |f, e, c| {
            write!(f, "{c}*[{},{},{}]", e[0], e[1], e[2])
        })
    }
}

impl FromStr for ThetaElement {
    type Err = Error;

    /// Parses the bracket form printed by `Display` (any representative
    /// triples, whitespace allowed).
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let mut out = ThetaElement::zero();
        if cur.at_end() {
            return Err(cur.error("empty expression"));
        }
        if cur.peek() == Some(b'0') {
            cur.digits()?;
            return if cur.at_end() {
                Ok(out)
            } else {
                Err(cur.error("trailing input"))
            };
        }
        loop {
            let at = cur.pos();
            let c = cur.signed()?;
            let c = i64::try_from(&c).map_err(|_| Error::parse(at, "coefficient out of range"))?;
            cur.expect(b'*')?;
            cur.expect(b'[')?;
            let a = cur.signed_i64()?;
            cur.expect(b',')?;
            let b = cur.signed_i64()?;
            cur.expect(b',')?;
            let d = cur.signed_i64()?;
            cur.expect(b']')?;
            add_into(&mut out.terms, canonical([a, b, d]), c);
            if cur.at_end() {
                return Ok(out);
            }
            cur.expect(b'+')?;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaTerm {
    pub exp: Triple,
    pub coef: i64,
}

/// JSON form `{"terms": [{"exp": [a,b,c], "coef": c}, ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaFile {
    pub terms: Vec<ThetaTerm>,
}

/// Parses either the ambient grammar (`1*t1^1 + -1`) or the bracket grammar
/// (`1*[0,0,1] + -1*[0,0,0]`) and projects.
pub fn parse_expr(src: &str) -> Result<ThetaElement> {
    if src.contains('[') {
        src.parse()
    } else {
        Ok(project(&src.parse()?))
    }
}

pub fn project(p: &AmbientPoly) -> ThetaElement {
    let mut out = ThetaElement::zero();
    for (e, c) in p.terms() {
        add_into(&mut out.terms, canonical(e), c);
    }
    out
}

/// Augmentation `t_i -> 1`.
pub fn augment(x: &ThetaElement) -> i64 {
    x.terms.values().sum()
}

/// Classes of `(t1 - 1)`, `(t1 - 1)(t2^-1 - 1)`, `(t1 - 1)(t2 - 1)(t3^-1 - 1)`.
pub fn minimal_rank_generators() -> [ThetaElement; 3] {
    let a = AmbientPoly::var_pow_minus_one(1, 1);
    let b = AmbientPoly::var_pow_minus_one(2, -1);
    let c = AmbientPoly::var_pow_minus_one(2, 1);
    let d = AmbientPoly::var_pow_minus_one(3, -1);
    [
        project(&a),
        project(&a.mul(&b)),
        project(&AmbientPoly::product([&a, &c, &d])),
    ]
}

/// The realization value `(t1 - 1) t2^n t3^m`.
pub fn realization_value(n: i64, m: i64) -> ThetaElement {
    project(&AmbientPoly::var_pow_minus_one(1, 1).mul(&AmbientPoly::monomial([0, n, m], 1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Integer coefficients on the generators.
    Member(Vec<Int>),
    Outside,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

fn coordinates(elements: &[&ThetaElement], support: &[Triple]) -> Matrix<Int> {
    Matrix::from_fn(elements.len(), support.len(), |i, j| {
        Int::from(elements[i].terms.get(&support[j]).copied().unwrap_or(0))
    })
}

/// Decides whether `x` lies in the `Z`-span of `gens`, with a witness.
pub fn membership(x: &ThetaElement, gens: &[ThetaElement]) -> Membership {
    let support: Vec<Triple> = gens
        .iter()
        .flat_map(ThetaElement::support)
        .chain(x.support())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows: Vec<&ThetaElement> = gens.iter().collect();
    let m = coordinates(&rows, &support);
    let target = coordinates(&[x], &support);
    match lattice::solve_in_span(&m, target.row(0)) {
        Some(c) => Membership::Member(c),
        None => Membership::Outside,
    }
}

/// `sum_i c_i * gens_i`.
pub fn combine(coeffs: &[Int], gens: &[ThetaElement]) -> Result<ThetaElement> {
    let mut out = ThetaElement::zero();
    for (c, g) in coeffs.iter().zip(gens) {
        let c = i64::try_from(c).map_err(|_| Error::Overflow(format!("coefficient {c}")))?;
        out.add_scaled(g, c);
    }
    Ok(out)
}

/// One summand `coef * [(t1 - 1) t2^n t3^m]` of a realization decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RealizationTerm {
    pub coef: i64,
    pub n: i64,
    pub m: i64,
}

/// Writes an augmentation-zero element as a sum of realization values.
///
/// Each class `[t1^a t2^b t3^c] - [1]` (canonical, so `a, b, c >= 0`) is
/// telescoped one exponent at a time, strictly decreasing `a`, then `b`, then
/// `c` to 0; permuting variables is free after projection, and
/// `(t1 - 1) t1^k = (t1 - 1) t2^-k t3^-k`.
pub fn realize_decompose(x: &ThetaElement) -> Result<Vec<RealizationTerm>> {
    let aug = augment(x);
    if aug != 0 {
        return Err(Error::NotInKernel(aug));
    }
    let mut acc: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    let mut emit = |n: i64, m: i64, c: i64| {
        let slot = acc.entry((n, m)).or_insert(0);
        *slot += c;
    };
    for ([a, b, c], coef) in x.terms().collect::<Vec<_>>().into_iter().rev() {
        // (t1^a - 1) t2^b t3^c
        for k in 0..a {
            emit(b - k, c - k, coef);
        }
        // (t2^b - 1) t3^c, with t1 <-> t2
        for k in 0..b {
            emit(-k, c - k, coef);
        }
        // t3^c - 1, with t1 <-> t3
        for k in 0..c {
            emit(-k, -k, coef);
        }
    }
    Ok(acc
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|((n, m), coef)| RealizationTerm { coef, n, m })
        .collect())
}

pub fn recombine(terms: &[RealizationTerm]) -> ThetaElement {
    terms
        .iter()
        .map(|t| realization_value(t.n, t.m).scale(t.coef))
        .sum()
}

/// Canonical orbit triples with every entry at most `w`.
pub fn window_orbits(w: i64) -> Vec<Triple> {
    let mut set = BTreeSet::new();
    for a in 0..=w {
        for b in 0..=w {
            for c in 0..=w {
                let t = [a, b, c];
                if t.contains(&0) {
                    set.insert(canonical(t));
                }
            }
        }
    }
    set.into_iter()
        .filter(|t| t.iter().all(|&x| x <= w))
        .collect()
}

/// Structure of `(ker augmentation on the window-w orbits) / span(g1, g2, g3)`.
pub fn window_quotient(w: i64) -> Result<QuotientStructure> {
    let orbits = window_orbits(w);
    let gens = minimal_rank_generators();
    for g in &gens {
        if let Some(t) = g.support().find(|t| !orbits.contains(t)) {
            return Err(Error::Precondition(format!(
                "window {w} does not contain generator support {t:?}"
            )));
        }
    }
    // basis e_mu - e_[0,0,0] of the kernel; coordinates drop [0,0,0]
    let basis: Vec<Triple> = orbits.into_iter().filter(|t| *t != [0, 0, 0]).collect();
    let rows: Vec<&ThetaElement> = gens.iter().collect();
    Ok(lattice::quotient_structure(&coordinates(&rows, &basis)))
}
