//! Counting in the building: the profile `delta(mu, k)` of root pairings,
//! the sphere-size polynomial `|K mu(p) K / K|`, and intersection counts
//! of Hecke spheres with `L(Q_p) K` for small subgroups `L`.

mod intersect;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{dot_int, integral, Q};
use crate::rootdata::{LatticeVector, RootDatum, WeylGroup, DEFAULT_WEYL_CAP};

pub use intersect::{buildingcount_check, buildingcount_check_capped, intersection_count, intersection_count_capped, BuildingCountReport, ConfigKind, IntersectionConfig};

/// `delta(mu, k) = #{alpha : <alpha, mu> > k}` for `k = 0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaProfile {
    pub mu: Vec<Q>,
    /// Trimmed after the last nonzero entry.
    pub values: Vec<u64>,
    pub total: u64,
}

fn root_pairings(datum: &RootDatum, mu: &LatticeVector) -> Result<Vec<i64>> {
    if mu.dim() != datum.ambient_dim() {
        return Err(Error::contract("cocharacter has the wrong dimension"));
    }
    datum
        .roots()
        .iter()
        .map(|a| integral(&dot_int(&mu.coords, a)).ok_or_else(|| Error::contract(format!("{mu} is not a cocharacter"))))
        .collect()
}

pub fn delta_profile(datum: &RootDatum, mu: &LatticeVector) -> Result<DeltaProfile> {
    let pairings = root_pairings(datum, mu)?;
    let top = pairings.iter().copied().max().unwrap_or(0).max(0);
    let values: Vec<u64> = (0..top).map(|k| pairings.iter().filter(|&&c| c > k).count() as u64).collect();
    let total: u64 = values.iter().sum();
    if Q::from(total as i64) != datum.star_norm2(mu) {
        return Err(Error::Internal(format!("delta profile of {mu} sums to {total}")));
    }
    Ok(DeltaProfile {
        mu: mu.coords.clone(),
        values,
        total,
    })
}

/// Polynomial in `q` with integer coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QPoly(pub Vec<i64>);

impl QPoly {
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c != 0)
    }

    pub fn leading(&self) -> i64 {
        self.degree().map_or(0, |d| self.0[d])
    }

    pub fn eval(&self, q: u64) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * BigInt::from(q) + BigInt::from(c))
    }

    fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly(out)
    }

    /// Exact quotient, failing if `divisor` does not divide.
    fn div_exact(&self, divisor: &QPoly) -> Result<QPoly> {
        let d = divisor.degree().ok_or_else(|| Error::Internal("division by zero polynomial".into()))?;
        if divisor.0[d] != 1 {
            return Err(Error::Internal("divisor must be monic".into()));
        }
        let mut rest = self.0.clone();
        let n = self.degree().unwrap_or(0);
        if n < d {
            return Err(Error::Internal("quotient of lower degree".into()));
        }
        let mut quot = vec![0i64; n - d + 1];
        for k in (0..=n - d).rev() {
            let c = rest[k + d];
            quot[k] = c;
            for (i, &b) in divisor.0[..=d].iter().enumerate() {
                rest[k + i] -= c * b;
            }
        }
        if rest.iter().any(|&c| c != 0) {
            return Err(Error::Internal("Poincare polynomials do not divide".into()));
        }
        Ok(QPoly(quot))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev().filter(|(_, &c)| c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let m = c.abs();
            match (k, m) {
                (0, _) => write!(f, "{m}")?,
                (1, 1) => f.write_str("q")?,
                (1, _) => write!(f, "{m}q")?,
                (_, 1) => write!(f, "q^{k}")?,
                _ => write!(f, "{m}q^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn poincare(group: &WeylGroup) -> QPoly {
    let top = group.iter().map(|w| w.length()).max().unwrap_or(0);
    let mut c = vec![0i64; top + 1];
    for w in group.iter() {
        c[w.length()] += 1;
    }
    QPoly(c)
}

/// `|F_mu|(q) = (sum over minimal coset representatives of W / W_theta of
/// q^{l(w)}) * q^{sum_{k >= 1} delta(mu, k)}`, `theta` the simple roots
/// orthogonal to `mu`.
pub fn sphere_size_polynomial(datum: &RootDatum, mu: &LatticeVector) -> Result<QPoly> {
    if !datum.is_dominant(mu) {
        return Err(Error::contract(format!("{mu} is not dominant")));
    }
    let profile = delta_profile(datum, mu)?;
    let theta: Vec<usize> = (0..datum.simple_indices().len())
        .filter(|&p| datum.pairing(datum.simple_indices()[p], mu).is_zero())
        .collect();
    let full = poincare(&WeylGroup::full(datum, DEFAULT_WEYL_CAP)?);
    let levi = poincare(&WeylGroup::generate(datum, &theta, DEFAULT_WEYL_CAP)?);
    let flag = full.div_exact(&levi)?;
    let fiber: u64 = profile.values.iter().skip(1).sum();
    let mut shift = vec![0i64; fiber as usize + 1];
    shift[fiber as usize] = 1;
    Ok(flag.mul(&QPoly(shift)))
}
