use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{self, Matrix};
use crate::rational::{fmt_big, val};

const MAX_PRIME: u64 = 5;
const MAX_ENTRY: i64 = 3;

/// Subgroup `H` of `G` and the ambient `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfigKind {
    /// `GL_2` diagonal in `GL_2 x GL_2`.
    DiagGl2,
    /// `PGL_2` diagonal in `PGL_2 x PGL_2`.
    DiagPgl2,
    /// Split diagonal torus in `GL_2`.
    TorusGl2,
    /// `H = G = GL_2`.
    FullGl2,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 4] = [ConfigKind::DiagGl2, ConfigKind::DiagPgl2, ConfigKind::TorusGl2, ConfigKind::FullGl2];

    /// Number of `GL_2` factors of `G`.
    pub fn factors(self) -> usize {
        match self {
            ConfigKind::DiagGl2 | ConfigKind::DiagPgl2 => 2,
            ConfigKind::TorusGl2 | ConfigKind::FullGl2 => 1,
        }
    }

    fn projective(self) -> bool {
        self == ConfigKind::DiagPgl2
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConfigKind::DiagGl2 => "diag-gl2",
            ConfigKind::DiagPgl2 => "diag-pgl2",
            ConfigKind::TorusGl2 => "torus-gl2",
            ConfigKind::FullGl2 => "full-gl2",
        })
    }
}

impl FromStr for ConfigKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConfigKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown configuration {s:?}")))
    }
}

/// `L = y H y^{-1}` inside `G`, with `y` integral and invertible over `Z_p`,
/// one `2 x 2` matrix per factor of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionConfig {
    pub kind: ConfigKind,
    pub p: u64,
    pub twist: Vec<Vec<Vec<i64>>>,
}

fn identity2() -> Vec<Vec<i64>> {
    vec![vec![1, 0], vec![0, 1]]
}

impl IntersectionConfig {
    pub fn new(kind: ConfigKind, p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || (2..p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Capability(format!("intersection counts need a prime p <= {MAX_PRIME}, got {p}")));
        }
        Ok(IntersectionConfig {
            kind,
            p,
            twist: vec![identity2(); kind.factors()],
        })
    }

    pub fn with_twist(mut self, twist: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if twist.len() != self.kind.factors() || twist.iter().any(|y| y.len() != 2 || y.iter().any(|r| r.len() != 2)) {
            return Err(Error::contract(format!("{} takes {} 2x2 twist matrices", self.kind, self.kind.factors())));
        }
        if let Some(y) = twist.iter().find(|y| !padic::is_unimodular_mod(y, self.p)) {
            return Err(Error::contract(format!("twist {y:?} is not invertible over Z_{}", self.p)));
        }
        self.twist = twist;
        Ok(self)
    }

    pub fn with_random_twist<R: Rng>(self, rng: &mut R) -> Result<Self> {
        let twist = (0..self.kind.factors()).map(|_| padic::random_unimodular(2, rng)).collect();
        self.with_twist(twist)
    }

    fn check_mu(&self, mu: &[i64]) -> Result<()> {
        if mu.len() != 2 * self.kind.factors() {
            return Err(Error::contract(format!("{} needs a cocharacter with {} entries", self.kind, 2 * self.kind.factors())));
        }
        if mu.iter().any(|x| x.abs() > MAX_ENTRY) {
            return Err(Error::Capability(format!("intersection counts need entries of size <= {MAX_ENTRY}")));
        }
        Ok(())
    }
}

/// Hermite normal form of `y^{-1} g`, scaled to minimal diagonal valuation
/// zero in the projective case.
fn canonical(y: &Matrix, g: &Matrix, p: u64, projective: bool) -> Result<Matrix> {
    let h = padic::column_hnf(&padic::mat_mul(&padic::inverse(y)?, g), p)?;
    if !projective {
        return Ok(h);
    }
    let shift = (0..h.len()).map(|i| val(&h[i][i], p)).min().unwrap_or(0);
    let s = padic::pow(p, -shift);
    Ok(h.iter().map(|r| r.iter().map(|x| x * &s).collect()).collect())
}

fn canonical_set(y: &Matrix, nu: &[i64], p: u64, cap: usize, projective: bool) -> Result<HashSet<Matrix>> {
    padic::sphere(nu, p, cap)?
        .iter()
        .map(|g| canonical(y, g, p, projective))
        .collect()
}

/// `#(L(Q_p) K ∩ K mu(p) K) / K` by enumerating the sphere.
pub fn intersection_count(config: &IntersectionConfig, mu: &[i64]) -> Result<u64> {
    intersection_count_capped(config, mu, padic::DEFAULT_ENUMERATION_CAP)
}

pub fn intersection_count_capped(config: &IntersectionConfig, mu: &[i64], cap: usize) -> Result<u64> {
    config.check_mu(mu)?;
    let p = config.p;
    let ys: Vec<Matrix> = config.twist.iter().map(|y| padic::from_ints(y)).collect();
    match config.kind {
        // (g1, g2) K lies in L K iff y1^{-1} g1 and y2^{-1} g2 define the
        // same coset of H
        ConfigKind::DiagGl2 | ConfigKind::DiagPgl2 => {
            let proj = config.kind.projective();
            let a = canonical_set(&ys[0], &mu[..2], p, cap, proj)?;
            let b = canonical_set(&ys[1], &mu[2..], p, cap, proj)?;
            Ok(a.intersection(&b).count() as u64)
        }
        ConfigKind::TorusGl2 => {
            let diagonal = |h: &Matrix| h[0][1].is_zero() && h[1][0].is_zero();
            let mut count = 0u64;
            for g in padic::sphere(mu, p, cap)? {
                if diagonal(&canonical(&ys[0], &g, p, false)?) {
                    count += 1;
                }
            }
            Ok(count)
        }
        ConfigKind::FullGl2 => Ok(padic::sphere(mu, p, cap)?.len() as u64),
    }
}

/// Count against `p^{star_norm2_H(mu_H)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuildingCountReport {
    pub config: ConfigKind,
    pub p: u64,
    pub mu: Vec<i64>,
    pub count: u64,
    /// `star_norm2_H` of a Weyl image of `mu` in the cocharacters of `T_H`,
    /// if there is one.
    pub h_norm2: Option<i64>,
    /// Zero when no Weyl image of `mu` lies in the cocharacters of `T_H`.
    #[serde(serialize_with = "ser_display")]
    pub bound: BigInt,
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: Option<BigRational>,
}

fn ser_display<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_ratio<S: serde::Serializer>(x: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.serialize_str(&fmt_big(r)),
        None => s.serialize_none(),
    }
}

fn sorted_shifted(v: &[i64], projective: bool) -> Vec<i64> {
    let m = if projective { *v.iter().min().expect("nonempty") } else { 0 };
    let mut out: Vec<i64> = v.iter().map(|x| x - m).collect();
    out.sort_unstable();
    out
}

/// `star_norm2_H` of the `H`-part of `mu`, or `None` if `W mu` misses the
/// cocharacters of `T_H`.
fn h_norm2(kind: ConfigKind, mu: &[i64]) -> Option<i64> {
    let spread = |v: &[i64]| (v[0] - v[1]).abs();
    match kind {
        ConfigKind::DiagGl2 | ConfigKind::DiagPgl2 => {
            let proj = kind.projective();
            (sorted_shifted(&mu[..2], proj) == sorted_shifted(&mu[2..], proj)).then(|| spread(&mu[..2]))
        }
        ConfigKind::TorusGl2 => Some(0),
        ConfigKind::FullGl2 => Some(spread(mu)),
    }
}

pub fn buildingcount_check(config: &IntersectionConfig, mu: &[i64]) -> Result<BuildingCountReport> {
    buildingcount_check_capped(config, mu, padic::DEFAULT_ENUMERATION_CAP)
}

pub fn buildingcount_check_capped(config: &IntersectionConfig, mu: &[i64], cap: usize) -> Result<BuildingCountReport> {
    let count = intersection_count_capped(config, mu, cap)?;
    let norm = h_norm2(config.kind, mu);
    if norm.is_none() && count != 0 {
        return Err(Error::Internal(format!(
            "{} at {mu:?}: count {count} although no Weyl image lies in the H lattice",
            config.kind
        )));
    }
    let bound = norm.map_or(BigInt::zero(), |e| BigInt::from(config.p).pow(e as u32));
    let ratio = norm.map(|_| BigRational::new(BigInt::from(count), bound.clone()));
    Ok(BuildingCountReport {
        config: config.kind,
        p: config.p,
        mu: mu.to_vec(),
        count,
        h_norm2: norm,
        bound,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_and_full_examples() {
        let torus = IntersectionConfig::new(ConfigKind::TorusGl2, 3).unwrap();
        assert_eq!(intersection_count(&torus, &[1, 0]).unwrap(), 2);
        assert_eq!(intersection_count(&torus, &[0, 0]).unwrap(), 1);
        let full = IntersectionConfig::new(ConfigKind::FullGl2, 2).unwrap();
        let r = buildingcount_check(&full, &[1, 0]).unwrap();
        assert_eq!((r.count, r.bound.clone()), (3, BigInt::from(2)));
        assert_eq!(fmt_big(r.ratio.as_ref().unwrap()), "3/2");
    }

    #[test]
    fn diagonal_examples() {
        let diag = IntersectionConfig::new(ConfigKind::DiagGl2, 2).unwrap();
        assert_eq!(intersection_count(&diag, &[1, 0, 0, 0]).unwrap(), 0);
        assert_eq!(intersection_count(&diag, &[0, 0, 0, 0]).unwrap(), 1);
        assert_eq!(intersection_count(&diag, &[1, 0, 1, 0]).unwrap(), 3);
        let pgl = IntersectionConfig::new(ConfigKind::DiagPgl2, 2).unwrap();
        assert_eq!(intersection_count(&pgl, &[1, 1, 0, 0]).unwrap(), 1);
        assert_eq!(intersection_count(&pgl, &[2, 1, 1, 0]).unwrap(), 3);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(IntersectionConfig::new(ConfigKind::TorusGl2, 4).is_err());
        assert!(IntersectionConfig::new(ConfigKind::TorusGl2, 7).is_err());
        let c = IntersectionConfig::new(ConfigKind::TorusGl2, 2).unwrap();
        assert!(c.clone().with_twist(vec![vec![vec![2, 0], vec![0, 1]]]).is_err());
        assert!(intersection_count(&c, &[4, 0]).is_err());
        assert!(intersection_count(&c, &[1, 0, 0, 0]).is_err());
    }
}
