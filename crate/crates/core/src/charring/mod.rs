//! Irreducible characters of split reductive groups, evaluated on complex
//! torus points, plus the Levi-shift constructions used to find a
//! character that does not vanish at a given point.

mod levi;
mod scalar;
mod search;

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{dot, qvec, to_big, Q};
use crate::rootdata::{LatticeVector, RootDatum, Side, WeylGroup, DEFAULT_WEYL_CAP};

pub use levi::{lambdashift_decomposition, levi_datum, levi_lambda, shift_to_nonvanishing};
pub use scalar::{GaussianRational, Scalar, TorusPoint, FLOAT_TOL};
pub(crate) use search::compare_modulus;
pub use search::{candidate_weights, nonvanishing_search, nonvanishing_search_with, CharacterBank, SearchHit};

/// Largest representation [`weight_multiplicities`] will expand by default.
pub const DEFAULT_DIMENSION_CAP: u64 = 100_000;

/// Weights of an irreducible representation with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub highest_weight: LatticeVector,
    pub multiplicities: BTreeMap<Vec<i64>, u64>,
}

impl CharacterTable {
    pub fn dimension(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    pub fn multiplicity(&self, nu: &[i64]) -> u64 {
        self.multiplicities.get(nu).copied().unwrap_or(0)
    }

    pub fn evaluate(&self, x: &TorusPoint) -> Scalar {
        x.evaluate(self.multiplicities.iter().map(|(k, &m)| (k, m)))
    }

    /// `sum m(nu) |x^nu|`, the scale for floating zero tests.
    pub fn abs_bound(&self, x: &TorusPoint) -> f64 {
        self.multiplicities
            .iter()
            .map(|(nu, &m)| m as f64 * x.monomial(nu).abs())
            .sum()
    }
}

fn check_highest_weight(datum: &RootDatum, lam: &LatticeVector) -> Result<Vec<i64>> {
    if lam.side != Side::Weight {
        return Err(Error::contract("highest weights live on the weight side"));
    }
    let ints = lam
        .to_ints()
        .ok_or_else(|| Error::contract(format!("{lam} is not a lattice weight")))?;
    for &i in datum.simple_indices() {
        let c = datum.pairing(i, lam);
        if !c.is_integer() || c.is_negative() {
            return Err(Error::contract(format!("{lam} is not dominant integral for {}", datum.label())));
        }
    }
    Ok(ints)
}

/// `prod_{alpha > 0} <lam + rho, alpha^vee> / <rho, alpha^vee>`.
pub fn weyl_dimension(datum: &RootDatum, lam: &LatticeVector) -> Result<BigInt> {
    let ints = check_highest_weight(datum, lam)?;
    let shifted: Vec<Q> = ints
        .iter()
        .zip(datum.two_rho())
        .map(|(l, r)| Q::from(2 * l + r))
        .collect();
    let two_rho = qvec(datum.two_rho());
    let mut num = BigRational::one();
    for &i in datum.positive_indices() {
        let c = &datum.coroots()[i];
        num *= to_big(&dot(&shifted, c)) / to_big(&dot(&two_rho, c));
    }
    if !num.is_integer() {
        return Err(Error::Internal(format!("non-integral dimension for {lam}")));
    }
    Ok(num.to_integer())
}

/// Gram matrix of `(a, b) = sum_{alpha} <a, alpha^vee><b, alpha^vee>`.
fn invariant_form(datum: &RootDatum) -> Vec<Vec<Q>> {
    let n = datum.ambient_dim();
    let mut m = vec![vec![Q::zero(); n]; n];
    for c in datum.coroots() {
        for i in 0..n {
            for j in 0..n {
                m[i][j] += c[i] * c[j];
            }
        }
    }
    m
}

fn form(m: &[Vec<Q>], a: &[Q], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            s += ai * m[i][j] * bj;
        }
    }
    s
}

/// Weight multiplicities by Freudenthal's recursion.
pub fn weight_multiplicities(datum: &RootDatum, lam: &LatticeVector) -> Result<CharacterTable> {
    weight_multiplicities_capped(datum, lam, DEFAULT_DIMENSION_CAP)
}

pub fn weight_multiplicities_capped(datum: &RootDatum, lam: &LatticeVector, cap: u64) -> Result<CharacterTable> {
    let top = check_highest_weight(datum, lam)?;
    let dim = weyl_dimension(datum, lam)?;
    if dim > BigInt::from(cap) {
        return Err(Error::resource(format!("representation of highest weight {lam}"), cap as usize));
    }
    let dim = dim.to_u64().expect("capped");

    let dominant = |v: &[i64]| -> Vec<i64> {
        let (d, _) = datum.dominant_rep(&LatticeVector::weight(v));
        d.to_ints().expect("integral weights stay integral")
    };
    let simple: Vec<&[i64]> = (0..datum.simple_indices().len()).map(|p| datum.simple_root(p)).collect();

    // all weights: saturated, reachable from the top by subtracting simple roots
    let mut depth: HashMap<Vec<i64>, usize> = HashMap::from([(top.clone(), 0)]);
    let mut dom_cache: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::from([top.clone()]);
    while let Some(nu) = queue.pop_front() {
        let d = depth[&nu];
        for a in &simple {
            let next: Vec<i64> = nu.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
            if depth.contains_key(&next) {
                continue;
            }
            let dom = dominant(&next);
            let ok = datum.is_below(&LatticeVector::weight(&dom), lam);
            if ok {
                if depth.len() as u64 >= dim {
                    return Err(Error::Internal(format!("more weights than the dimension of {lam}")));
                }
                depth.insert(next.clone(), d + 1);
                dom_cache.insert(next.clone(), dom);
                queue.push_back(next);
            }
        }
    }
    dom_cache.insert(top.clone(), top.clone());

    let mut dominant_weights: Vec<(&Vec<i64>, usize)> = depth
        .iter()
        .filter(|(nu, _)| dom_cache[*nu] == **nu)
        .map(|(nu, &d)| (nu, d))
        .collect();
    dominant_weights.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(a.0)));

    let m = invariant_form(datum);
    let two_rho: Vec<i64> = datum.two_rho().to_vec();
    let shifted_norm = |v: &[i64]| {
        let s: Vec<Q> = v.iter().zip(&two_rho).map(|(x, r)| Q::from(2 * x + r)).collect();
        form(&m, &s, &s)
    };
    let top_norm = shifted_norm(&top);
    let positive: Vec<Vec<Q>> = datum.positive_roots().map(qvec).collect();

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::from([(top.clone(), 1)]);
    for (mu, _) in dominant_weights.iter().skip(1) {
        let mut sum = Q::zero();
        for (alpha, alpha_q) in datum.positive_roots().zip(&positive) {
            let mut k = 1;
            loop {
                let shifted: Vec<i64> = mu.iter().zip(alpha).map(|(x, a)| x + k * a).collect();
                let Some(dom) = dom_cache.get(&shifted) else { break };
                let mm = mult[dom];
                sum += Q::from(mm as i64) * form(&m, &qvec(&shifted), alpha_q);
                k += 1;
            }
        }
        let denom = top_norm - shifted_norm(mu);
        let value = sum * 8 / denom;
        if !value.is_integer() || value.is_negative() || value.is_zero() {
            return Err(Error::Internal(format!("Freudenthal gave {value} at {mu:?}")));
        }
        mult.insert((*mu).clone(), value.to_integer() as u64);
    }

    let multiplicities: BTreeMap<Vec<i64>, u64> = depth.keys().map(|nu| (nu.clone(), mult[&dom_cache[nu]])).collect();
    let table = CharacterTable {
        highest_weight: lam.clone(),
        multiplicities,
    };
    if table.dimension() != dim {
        return Err(Error::Internal(format!(
            "multiplicities of {lam} sum to {} instead of {dim}",
            table.dimension()
        )));
    }
    Ok(table)
}

/// `chi_lam(x)` as a sum over weights; total, including singular `x`.
pub fn char_value(datum: &RootDatum, lam: &LatticeVector, x: &TorusPoint) -> Result<Scalar> {
    if x.dim() != datum.ambient_dim() {
        return Err(Error::contract("torus point has the wrong dimension"));
    }
    Ok(weight_multiplicities(datum, lam)?.evaluate(x))
}

/// Weyl's quotient `sum_w sgn(w) x^{w(lam+rho)-rho} / prod_{alpha>0}(1 - x^{-alpha})`
/// in floating point; `None` when the denominator vanishes at `x`.
pub fn weyl_quotient_value(datum: &RootDatum, lam: &LatticeVector, x: &[Complex64]) -> Result<Option<Complex64>> {
    let top = check_highest_weight(datum, lam)?;
    let group = WeylGroup::full(datum, DEFAULT_WEYL_CAP)?;
    let pt = TorusPoint::float(x.to_vec())?;
    let two_rho = datum.two_rho();
    let shifted: Vec<i64> = top.iter().zip(two_rho).map(|(l, r)| 2 * l + r).collect();
    let mut num = Complex64::new(0.0, 0.0);
    for w in group.iter() {
        let img = datum.apply_word(&w.word, &LatticeVector::weight(&shifted));
        let img = img.to_ints().expect("integral");
        let exp: Vec<i64> = img.iter().zip(two_rho).map(|(a, r)| (a - r) / 2).collect();
        num += pt.monomial(&exp).to_complex64() * w.sign() as f64;
    }
    let mut den = Complex64::new(1.0, 0.0);
    for alpha in datum.positive_roots() {
        let neg: Vec<i64> = alpha.iter().map(|a| -a).collect();
        den *= Complex64::new(1.0, 0.0) - pt.monomial(&neg).to_complex64();
    }
    if den.norm() < 1e-12 {
        return Ok(None);
    }
    Ok(Some(num / den))
}
