use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::laurent::LaurentHalfQ;
use crate::charring::{weight_multiplicities, GaussianRational, Scalar, TorusPoint};
use crate::error::{Error, Result};
use crate::rational::big_from_int;
use crate::rootdata::{build_root_datum, Family, LatticeVector, RootDatum};

pub(crate) fn gl_datum(n: usize) -> Result<RootDatum> {
    if n < 2 {
        return Err(Error::Capability(format!("GL_{n}")));
    }
    build_root_datum(Family::A, n - 1)
}

pub(crate) fn is_dominant(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// Finite sum `sum_lam c_lam chi_lam` over dominant weights of `GL_n`, with
/// coefficients in `Q[q^{1/2}, q^{-1/2}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualCharacter {
    n: usize,
    terms: BTreeMap<Vec<i64>, LaurentHalfQ>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub lambda: Vec<i64>,
    pub coeff: String,
}

impl VirtualCharacter {
    pub fn zero(n: usize) -> Self {
        VirtualCharacter { n, terms: BTreeMap::new() }
    }

    /// `chi_mu` itself.
    pub fn character(mu: &[i64]) -> Result<Self> {
        let mut v = Self::zero(mu.len());
        v.add_term(mu, LaurentHalfQ::from_int(1))?;
        Ok(v)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Terms with nonzero coefficient, in decreasing lexicographic order of
    /// the weight.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentHalfQ)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, lam: &[i64]) -> LaurentHalfQ {
        self.terms.get(lam).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, lam: &[i64], c: LaurentHalfQ) -> Result<()> {
        if lam.len() != self.n || !is_dominant(lam) {
            return Err(Error::contract(format!("{lam:?} is not a dominant weight of GL_{}", self.n)));
        }
        let entry = self.terms.entry(lam.to_vec()).or_default();
        *entry = std::mem::take(entry) + c;
        if entry.is_zero() {
            self.terms.remove(lam);
        }
        Ok(())
    }

    /// Every coefficient evaluated at a rational `q`.
    pub fn specialize(&self, q: &BigRational) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (lam, c) in &self.terms {
            out.add_term(lam, LaurentHalfQ::constant(c.eval(q)?))?;
        }
        Ok(out)
    }

    /// Expansion in monomials `x^nu`.
    pub fn to_monomials(&self) -> Result<BTreeMap<Vec<i64>, LaurentHalfQ>> {
        let datum = gl_datum(self.n)?;
        let mut out: BTreeMap<Vec<i64>, LaurentHalfQ> = BTreeMap::new();
        for (lam, c) in &self.terms {
            let table = weight_multiplicities(&datum, &LatticeVector::weight(lam))?;
            for (nu, &m) in &table.multiplicities {
                let e = out.entry(nu.clone()).or_default();
                *e = std::mem::take(e) + c.scale(&big_from_int(m as i64));
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Rewrite a Weyl-invariant Laurent polynomial in the character basis by
    /// peeling off the lexicographically largest weight. Fails when the
    /// input is not Weyl-invariant.
    pub fn from_monomials(n: usize, monomials: &BTreeMap<Vec<i64>, LaurentHalfQ>) -> Result<Self> {
        let datum = gl_datum(n)?;
        let mut rest: BTreeMap<Vec<i64>, LaurentHalfQ> =
            monomials.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.clone(), c.clone())).collect();
        let mut out = Self::zero(n);
        while let Some((top, c)) = rest.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            if top.len() != n || !is_dominant(&top) {
                return Err(Error::Internal(format!("monomial expansion is not Weyl-invariant at {top:?}")));
            }
            let table = weight_multiplicities(&datum, &LatticeVector::weight(&top))?;
            for (nu, &m) in &table.multiplicities {
                let e = rest.entry(nu.clone()).or_default();
                *e = std::mem::take(e) - c.scale(&big_from_int(m as i64));
                if e.is_zero() {
                    rest.remove(nu);
                }
            }
            out.add_term(&top, c)?;
        }
        Ok(out)
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::contract("characters of different groups"));
        }
        let (a, b) = (self.to_monomials()?, other.to_monomials()?);
        let mut prod: BTreeMap<Vec<i64>, LaurentHalfQ> = BTreeMap::new();
        for (x, c) in &a {
            for (y, d) in &b {
                let k: Vec<i64> = x.iter().zip(y).map(|(s, t)| s + t).collect();
                let e = prod.entry(k).or_default();
                *e = std::mem::take(e) + c * d;
            }
        }
        Self::from_monomials(self.n, &prod)
    }

    /// Value at a dual torus point for a rational `q`; exact when `x` is
    /// exact and the coefficients are rational at `q`.
    pub fn evaluate(&self, x: &TorusPoint, q: &BigRational) -> Result<Scalar> {
        if x.dim() != self.n {
            return Err(Error::contract("torus point has the wrong dimension"));
        }
        let datum = gl_datum(self.n)?;
        let mut acc = ScalarSum::new(x.is_exact());
        for (lam, c) in &self.terms {
            let chi = weight_multiplicities(&datum, &LatticeVector::weight(lam))?.evaluate(x);
            match c.eval(q) {
                Ok(r) => acc.add(&chi, Coefficient::Exact(r)),
                Err(_) => acc.add(&chi, Coefficient::Float(c.eval_f64(q.to_f64().unwrap_or(f64::NAN)))),
            }
        }
        Ok(acc.finish())
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms()
            .map(|(lam, c)| TermJson {
                lambda: lam.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

pub(crate) enum Coefficient {
    Exact(BigRational),
    Float(f64),
}

/// Accumulates `sum c_i v_i`, staying exact while every input is exact.
pub(crate) struct ScalarSum {
    exact: Option<GaussianRational>,
    float: Complex64,
}

impl ScalarSum {
    pub(crate) fn new(exact: bool) -> Self {
        ScalarSum {
            exact: exact.then(GaussianRational::zero),
            float: Complex64::new(0.0, 0.0),
        }
    }

    pub(crate) fn add(&mut self, v: &Scalar, c: Coefficient) {
        match (&mut self.exact, v, &c) {
            (Some(acc), Scalar::Exact(z), Coefficient::Exact(r)) => {
                *acc = acc.clone() + z.clone() * GaussianRational::from(r.clone());
            }
            _ => {
                if let Some(acc) = self.exact.take() {
                    self.float += Scalar::Exact(acc).to_complex64();
                }
                let cf = match c {
                    Coefficient::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
                    Coefficient::Float(f) => f,
                };
                self.float += v.to_complex64() * cf;
            }
        }
    }

    pub(crate) fn finish(self) -> Scalar {
        match self.exact {
            Some(z) => Scalar::Exact(z),
            None => Scalar::Float(self.float),
        }
    }
}

/// Finite combination `sum_mu c_mu omega_mu` of normalized double-coset
/// indicators `omega_mu = q^{-<rho, mu>} 1_{K p^mu K}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Vec<i64>, LaurentHalfQ>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    pub fn omega(mu: &[i64]) -> Result<Self> {
        let mut h = Self::zero(mu.len());
        h.add_term(mu, LaurentHalfQ::from_int(1))?;
        Ok(h)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentHalfQ)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, mu: &[i64]) -> LaurentHalfQ {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mu: &[i64], c: LaurentHalfQ) -> Result<()> {
        if mu.len() != self.n || !is_dominant(mu) {
            return Err(Error::contract(format!("{mu:?} is not a dominant cocharacter of GL_{}", self.n)));
        }
        let entry = self.terms.entry(mu.to_vec()).or_default();
        *entry = std::mem::take(entry) + c;
        if entry.is_zero() {
            self.terms.remove(mu);
        }
        Ok(())
    }

    /// The Satake transform, term by term.
    pub fn satake(&self) -> Result<VirtualCharacter> {
        let mut out = VirtualCharacter::zero(self.n);
        for (mu, c) in &self.terms {
            for (lam, d) in super::satake_omega(self.n, mu)?.terms() {
                out.add_term(lam, c * d)?;
            }
        }
        Ok(out)
    }
}
