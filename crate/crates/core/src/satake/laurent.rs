use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{big_from_int, fmt_big};

/// Finite sum `sum_k c_k q^{k/2}` with rational coefficients, keyed by the
/// doubled exponent `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentHalfQ {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentHalfQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(big_from_int(c))
    }

    /// `c q^{half_exp / 2}`.
    pub fn monomial(c: BigRational, half_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half_exp, c);
        }
        LaurentHalfQ { terms }
    }

    /// `sum_k coeffs[k] q^{-k}`, a polynomial in `t = q^{-1}`.
    pub fn from_t_poly(coeffs: &[i64]) -> Self {
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| Self::monomial(big_from_int(c), -2 * k as i64))
            .fold(Self::zero(), |a, b| a + b)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Doubled exponents and coefficients, increasing.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coefficient(&self, half_exp: i64) -> BigRational {
        self.terms.get(&half_exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest doubled exponent with a nonzero coefficient.
    pub fn max_half_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_half_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Multiply by `q^{half_exp / 2}`.
    pub fn shift(&self, half_exp: i64) -> Self {
        LaurentHalfQ {
            terms: self.terms.iter().map(|(&k, c)| (k + half_exp, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentHalfQ {
            terms: self.terms.iter().map(|(&k, x)| (k, x * c)).collect(),
        }
    }

    /// Exact value at a rational `q > 0`. Odd half-exponents need `q` to be
    /// a rational square.
    pub fn eval(&self, q: &BigRational) -> Result<BigRational> {
        if !q.is_positive() {
            return Err(Error::contract("q must be positive"));
        }
        let root = if self.terms.keys().any(|k| k % 2 != 0) {
            Some(rational_sqrt(q).ok_or_else(|| {
                Error::contract(format!("q = {} is not a square; q^(1/2) is irrational", fmt_big(q)))
            })?)
        } else {
            None
        };
        let mut acc = BigRational::zero();
        for (&k, c) in &self.terms {
            let base = if k % 2 == 0 { q.clone() } else { root.clone().expect("checked") };
            let e = if k % 2 == 0 { k / 2 } else { k };
            acc += c * pow_signed(&base, e);
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&k, c)| c.to_f64().unwrap_or(f64::NAN) * q.powf(k as f64 / 2.0))
            .sum()
    }

    fn cleaned(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }
}

fn pow_signed(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

impl Add for LaurentHalfQ {
    type Output = LaurentHalfQ;

    fn add(mut self, rhs: LaurentHalfQ) -> LaurentHalfQ {
        for (k, c) in rhs.terms {
            *self.terms.entry(k).or_insert_with(BigRational::zero) += c;
        }
        self.cleaned()
    }
}

impl Neg for LaurentHalfQ {
    type Output = LaurentHalfQ;

    fn neg(self) -> LaurentHalfQ {
        LaurentHalfQ {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for LaurentHalfQ {
    type Output = LaurentHalfQ;

    fn sub(self, rhs: LaurentHalfQ) -> LaurentHalfQ {
        self + (-rhs)
    }
}

impl Mul for &LaurentHalfQ {
    type Output = LaurentHalfQ;

    fn mul(self, rhs: &LaurentHalfQ) -> LaurentHalfQ {
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                *terms.entry(a + b).or_insert_with(BigRational::zero) += x * y;
            }
        }
        LaurentHalfQ { terms }.cleaned()
    }
}

impl fmt::Display for LaurentHalfQ {
    /// Decreasing exponents, e.g. `q - 1 + 1/2*q^{-1/2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let power = match (k, k % 2 == 0) {
                (0, _) => String::new(),
                (2, _) => "q".to_string(),
                (_, true) => format!("q^{{{}}}", k / 2),
                (_, false) => format!("q^{{{k}/2}}"),
            };
            if power.is_empty() {
                write!(f, "{}", fmt_big(&mag))?;
            } else if mag.is_one() {
                f.write_str(&power)?;
            } else {
                write!(f, "{}*{power}", fmt_big(&mag))?;
            }
        }
        Ok(())
    }
}
