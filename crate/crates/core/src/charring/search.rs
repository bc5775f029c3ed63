use std::cmp::Ordering;

use num_traits::Zero;
use rayon::prelude::*;

use super::{weight_multiplicities, CharacterTable, Scalar, TorusPoint, FLOAT_TOL};
use crate::error::{Error, Result};
use crate::rootdata::{LatticeVector, RootDatum};

/// Largest box [`candidate_weights`] will scan.
const BOX_CAP: u64 = 10_000_000;

/// Nonzero dominant integral weights with sup-norm at most `radius`, in
/// graded-lexicographic order (total absolute value, then lexicographically
/// decreasing).
///
/// One-dimensional characters (those orthogonal to every coroot) are left
/// out when the datum has roots: on a compact torus they have modulus one
/// everywhere, so they would make every search succeed trivially.
pub fn candidate_weights(datum: &RootDatum, radius: i64) -> Result<Vec<LatticeVector>> {
    if radius < 1 {
        return Err(Error::contract("search radius must be at least 1"));
    }
    let dim = datum.ambient_dim();
    let side = (2 * radius + 1) as u64;
    let total = side
        .checked_pow(dim as u32)
        .filter(|&t| t <= BOX_CAP)
        .ok_or_else(|| Error::resource(format!("weight box of radius {radius} in dimension {dim}"), BOX_CAP as usize))?;
    let has_roots = !datum.roots().is_empty();
    let mut out: Vec<Vec<i64>> = (0..total)
        .map(|mut n| {
            let mut v = vec![0i64; dim];
            for x in v.iter_mut().rev() {
                *x = (n % side) as i64 - radius;
                n /= side;
            }
            v
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .filter(|v| {
            let lv = LatticeVector::weight(v);
            let pairings: Vec<_> = (0..datum.roots().len()).map(|i| datum.pairing(i, &lv)).collect();
            let integral = pairings.iter().all(|c| c.is_integer());
            let central = pairings.iter().all(|c| c.is_zero());
            integral && datum.is_dominant(&lv) && !(has_roots && central)
        })
        .collect();
    out.sort_by(|a, b| {
        let ga: i64 = a.iter().map(|x| x.abs()).sum();
        let gb: i64 = b.iter().map(|x| x.abs()).sum();
        ga.cmp(&gb).then_with(|| b.cmp(a))
    });
    Ok(out.iter().map(|v| LatticeVector::weight(v)).collect())
}

/// Precomputed character tables for a fixed candidate set.
#[derive(Clone, Debug)]
pub struct CharacterBank {
    datum: RootDatum,
    tables: Vec<CharacterTable>,
}

/// Best candidate at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchHit {
    pub mu: LatticeVector,
    pub value: Scalar,
    pub abs: f64,
}

impl CharacterBank {
    pub fn new(datum: &RootDatum, radius: i64) -> Result<Self> {
        let tables = candidate_weights(datum, radius)?
            .par_iter()
            .map(|mu| weight_multiplicities(datum, mu))
            .collect::<Result<_>>()?;
        Ok(CharacterBank {
            datum: datum.clone(),
            tables,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn tables(&self) -> &[CharacterTable] {
        &self.tables
    }

    /// Candidate with the largest `|chi_mu(x)|`; ties go to the earlier one.
    /// Fails with an exhaustion error when the best value does not exceed
    /// `floor` (or is numerically zero).
    pub fn search(&self, x: &TorusPoint, floor: f64) -> Result<SearchHit> {
        if x.dim() != self.datum.ambient_dim() {
            return Err(Error::contract("torus point has the wrong dimension"));
        }
        if self.tables.is_empty() {
            return Err(Error::Exhaustion("no candidate characters in the search radius".into()));
        }
        let values: Vec<(Scalar, f64)> = self
            .tables
            .iter()
            .map(|t| (t.evaluate(x), t.abs_bound(x)))
            .collect();
        let mut best = 0usize;
        for i in 1..values.len() {
            if compare_modulus(&values[i].0, &values[best].0) == Ordering::Greater {
                best = i;
            }
        }
        let (value, bound) = values[best].clone();
        let abs = value.abs();
        let zero = match &value {
            Scalar::Exact(_) => value.norm_sqr_exact().is_some_and(|n| n.is_zero()),
            Scalar::Float(_) => abs <= FLOAT_TOL * bound.max(1.0),
        };
        if zero || abs <= floor {
            return Err(Error::Exhaustion(format!(
                "every candidate character is below {floor} at {x}"
            )));
        }
        Ok(SearchHit {
            mu: self.tables[best].highest_weight.clone(),
            value,
            abs,
        })
    }
}

/// Order by modulus, exactly when both sides are exact.
pub(crate) fn compare_modulus(a: &Scalar, b: &Scalar) -> Ordering {
    match (a.norm_sqr_exact(), b.norm_sqr_exact()) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => a.abs().partial_cmp(&b.abs()).unwrap_or(Ordering::Equal),
    }
}

/// The candidate of sup-norm at most `radius` maximizing `|chi_mu(x)|`.
pub fn nonvanishing_search(datum: &RootDatum, x: &TorusPoint, radius: i64) -> Result<SearchHit> {
    nonvanishing_search_with(&CharacterBank::new(datum, radius)?, x, 0.0)
}

pub fn nonvanishing_search_with(bank: &CharacterBank, x: &TorusPoint, floor: f64) -> Result<SearchHit> {
    bank.search(x, floor)
}
