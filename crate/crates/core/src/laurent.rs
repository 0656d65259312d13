//! Exact arithmetic in the Laurent polynomial ring `Z[t, t^-1]`.
//!
//! Text form: terms in ascending exponent order joined by ` + `, e.g.
//! `-1*t^-1 + 2 + 3*t^2`. The constant term is a bare integer, every other
//! term carries its coefficient explicitly (`1*t`, `-1*t^-2`), and the zero
//! polynomial prints as `0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cursor::Cursor;
use crate::error::{Error, Result};
use crate::matrix::{Int, Matrix};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Int>,
}

impl LaurentPoly {
    pub fn monomial(exp: i64, coef: impl Into<Int>) -> Self {
        let coef = coef.into();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        Self::monomial(0, c)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<Int>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, coef: Int) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Int::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Int)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, exp: i64) -> Int {
        self.terms.get(&exp).cloned().unwrap_or_else(Int::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((exp, coef))` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(i64, &Int)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// The involution `t -> t^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Augmentation `t -> 1`: the sum of the coefficients.
    pub fn eval_at_one(&self) -> Int {
        self.terms.values().sum()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d` in the ring, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (d_top, d_lead) = d.terms.iter().next_back().map(|(&e, c)| (e, c.clone()))?;
        let d_bottom = d.min_exp()?;
        let Some(a_bottom) = self.min_exp() else {
            return Some(LaurentPoly::zero());
        };
        // every quotient exponent is at least this when the division is exact
        let floor = a_bottom - d_bottom;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((top, c)) = rem.terms.iter().next_back().map(|(&e, c)| (e, c.clone())) {
            let qe = top - d_top;
            if qe < floor {
                return None;
            }
            let (qc, r) = c.div_rem(&d_lead);
            if !r.is_zero() {
                return None;
            }
            for (e, dc) in d.terms() {
                rem.add_term(e + qe, -(&qc * dc));
            }
            quot.add_term(qe, qc);
        }
        Some(quot)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::constant(1)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'a LaurentPoly) -> LaurentPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts the printed grammar plus some slack: whitespace anywhere,
    /// `-` as a separator, and implicit unit coefficients (`t`, `-t^2`).
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let mut p = LaurentPoly::zero();
        if cur.at_end() {
            return Err(cur.error("empty polynomial"));
        }
        let mut first = true;
        loop {
            let mut sign = Int::one();
            if !first {
                if cur.eat(b'-') {
                    sign = -sign;
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
            let (e, c) = parse_term(&mut cur)?;
            p.add_term(e, sign * c);
            if cur.at_end() {
                return Ok(p);
            }
        }
    }
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(i64, Int)> {
    let coef = if cur.peek_digit() {
        let c = cur.digits()?;
        if !cur.eat(b'*') {
            return Ok((0, c));
        }
        c
    } else {
        Int::one()
    };
    if !cur.eat(b't') {
        return Err(cur.error("expected 't'"));
    }
    let exp = if cur.eat(b'^') { cur.signed_i64()? } else { 1 };
    Ok((exp, coef))
}

/// Determinant of a square matrix over the Laurent ring.
///
/// Sizes up to 4 use cofactor expansion; larger matrices use fraction-free
/// Bareiss elimination, whose divisions are exact in this integral domain.
pub fn det(m: &Matrix<LaurentPoly>) -> Result<LaurentPoly> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() <= 4 {
        Ok(cofactor_det(m))
    } else {
        Ok(bareiss_det(m))
    }
}

fn cofactor_det(m: &Matrix<LaurentPoly>) -> LaurentPoly {
    let n = m.rows();
    match n {
        0 => LaurentPoly::one(),
        1 => m[(0, 0)].clone(),
        2 => &(&m[(0, 0)] * &m[(1, 1)]) - &(&m[(0, 1)] * &m[(1, 0)]),
        _ => {
            let mut acc = LaurentPoly::zero();
            for j in 0..n {
                if m[(0, j)].is_zero() {
                    continue;
                }
                let rows: Vec<usize> = (1..n).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let term = &m[(0, j)] * &cofactor_det(&m.select(&rows, &cols));
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

pub(crate) fn bareiss_det(m: &Matrix<LaurentPoly>) -> LaurentPoly {
    let n = m.rows();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut a = m.clone();
    let mut prev = LaurentPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(p) => {
                    a.swap_rows(k, p);
                    negate = !negate;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[(i, j)] * &a[(k, k)]) - &(&a[(i, k)] * &a[(k, j)]);
                a[(i, j)] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly over an integral domain");
            }
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p("t - 1") * &p("t + 1"), p("t^2 - 1"));
        assert_eq!(p("t^2 - t + 1").bar(), p("t^-2 - t^-1 + 1"));
        assert_eq!(p("t^2 - t + 1").eval_at_one(), Int::from(1));
    }

    #[test]
    fn print_format() {
        assert_eq!(p("3*t^2 + 2 - t^-1").to_string(), "-1*t^-1 + 2 + 3*t^2");
        assert_eq!(p("t^-1 - 1 + t").to_string(), "1*t^-1 + -1 + 1*t");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("0"), LaurentPoly::zero());
        assert_eq!(p("  -1 * t ^ -1+2+ 3*t^2 "), p("-1*t^-1 + 2 + 3*t^2"));
    }

    #[test]
    fn parse_errors_carry_position() {
        match "1 + 2*x".parse::<LaurentPoly>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("1 2".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = p("t^2 - t + 1");
        let b = p("2*t^-3 - 5 + t");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(p("t^2 + 1").div_exact(&p("t - 1")), None);
        assert_eq!(p("3*t").div_exact(&p("2")), None);
        assert_eq!(LaurentPoly::zero().div_exact(&a), Some(LaurentPoly::zero()));
        assert_eq!(a.div_exact(&LaurentPoly::zero()), None);
    }

    #[test]
    fn det_examples() {
        let empty: Matrix<LaurentPoly> = Matrix::zeros(0, 0);
        assert_eq!(det(&empty).unwrap(), LaurentPoly::one());

        let diag = Matrix::from_rows(vec![vec![p("t"), p("0")], vec![p("0"), p("t^-1")]]).unwrap();
        assert_eq!(det(&diag).unwrap(), LaurentPoly::one());

        let m =
            Matrix::from_rows(vec![vec![p("1 - t"), p("t")], vec![p("-1"), p("1 - t")]]).unwrap();
        assert_eq!(det(&m).unwrap(), p("t^2 - t + 1"));

        let ragged = Matrix::from_rows(vec![vec![p("1"), p("t")]]).unwrap();
        assert!(matches!(det(&ragged), Err(Error::Dimension(_))));
    }

    #[test]
    fn bareiss_matches_cofactor_with_zero_pivots() {
        let m = Matrix::from_rows(vec![
            vec![p("0"), p("t"), p("1"), p("2")],
            vec![p("t^-1"), p("0"), p("1 - t"), p("0")],
            vec![p("1"), p("1"), p("0"), p("t")],
            vec![p("0"), p("3"), p("t^2"), p("0")],
        ])
        .unwrap();
        assert_eq!(bareiss_det(&m), cofactor_det(&m));
    }
}
