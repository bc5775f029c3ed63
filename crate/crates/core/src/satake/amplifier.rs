use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;

use super::character::{gl_datum, Coefficient, ScalarSum};
use super::satake_omega;
use crate::charring::{compare_modulus as compare, weight_multiplicities, CharacterTable, Scalar, TorusPoint, FLOAT_TOL};
use crate::error::{Error, Result};
use crate::rootdata::LatticeVector;

/// Selected amplifier term.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplifierChoice {
    pub mu: Vec<i64>,
    pub value: Scalar,
    pub abs: f64,
}

/// Dominant `mu != 0` of `GL_n` with entries in `[-radius, radius]`, by
/// total absolute value and then decreasing lexicographically.
fn candidates(n: usize, radius: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, cap: i64, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in (lo..=cap).rev() {
            cur.push(x);
            go(n, x, lo, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, radius, -radius, &mut Vec::new(), &mut out);
    out.retain(|v| v.iter().any(|&x| x != 0));
    out.sort_by(|a, b| {
        let ga: i64 = a.iter().map(|x| x.abs()).sum();
        let gb: i64 = b.iter().map(|x| x.abs()).sum();
        ga.cmp(&gb).then_with(|| b.cmp(a))
    });
    out
}

/// `(mu, [(table index, coefficient at q)])`.
type Expansion = (Vec<i64>, Vec<(usize, BigRational)>);

/// Precomputed expansions `S omega_mu` at a fixed `q` for every candidate.
#[derive(Clone, Debug)]
pub struct AmplifierBank {
    n: usize,
    q: BigRational,
    tables: Vec<CharacterTable>,
    expansions: Vec<Expansion>,
}

impl AmplifierBank {
    pub fn new(n: usize, q: &BigRational, radius: i64) -> Result<Self> {
        if radius < 1 {
            return Err(Error::contract("amplifier radius must be at least 1"));
        }
        let datum = gl_datum(n)?;
        let mut tables: Vec<CharacterTable> = Vec::new();
        let mut index: std::collections::HashMap<Vec<i64>, usize> = Default::default();
        let mut expansions = Vec::new();
        for mu in candidates(n, radius) {
            let mut terms = Vec::new();
            for (lam, c) in satake_omega(n, &mu)?.terms() {
                let i = match index.get(lam) {
                    Some(&i) => i,
                    None => {
                        tables.push(weight_multiplicities(&datum, &LatticeVector::weight(lam))?);
                        index.insert(lam.clone(), tables.len() - 1);
                        tables.len() - 1
                    }
                };
                terms.push((i, c.eval(q)?));
            }
            expansions.push((mu, terms));
        }
        Ok(AmplifierBank {
            n,
            q: q.clone(),
            tables,
            expansions,
        })
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn candidates(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.expansions.iter().map(|(mu, _)| mu)
    }

    /// `S omega_mu(x)` for every candidate, in candidate order.
    pub fn values(&self, x: &TorusPoint) -> Result<Vec<Scalar>> {
        if x.dim() != self.n {
            return Err(Error::contract("dual torus point has the wrong dimension"));
        }
        let chis: Vec<Scalar> = self.tables.iter().map(|t| t.evaluate(x)).collect();
        Ok(self
            .expansions
            .iter()
            .map(|(_, terms)| {
                let mut acc = ScalarSum::new(x.is_exact());
                for (i, c) in terms {
                    acc.add(&chis[*i], Coefficient::Exact(c.clone()));
                }
                acc.finish()
            })
            .collect())
    }

    /// The candidate maximizing `|S omega_mu(x)|`; ties go to the earlier
    /// candidate.
    pub fn select(&self, x: &TorusPoint) -> Result<AmplifierChoice> {
        let values = self.values(x)?;
        let mut best = 0usize;
        for i in 1..values.len() {
            if compare(&values[i], &values[best]) == Ordering::Greater {
                best = i;
            }
        }
        let value = values
            .get(best)
            .cloned()
            .ok_or_else(|| Error::Exhaustion("no amplifier candidates".into()))?;
        let zero = match &value {
            Scalar::Exact(_) => value.norm_sqr_exact().is_some_and(|z| z.is_zero()),
            Scalar::Float(z) => z.norm() <= FLOAT_TOL,
        };
        if zero {
            return Err(Error::Exhaustion(format!("every amplifier candidate vanishes at {x}")));
        }
        Ok(AmplifierChoice {
            mu: self.expansions[best].0.clone(),
            abs: value.abs(),
            value,
        })
    }
}

/// Nonzero dominant `mu` with sup-norm at most `radius` maximizing
/// `|S omega_mu(x)|` at the given `q`.
pub fn amplifier_select(n: usize, x: &TorusPoint, q: &BigRational, radius: i64) -> Result<AmplifierChoice> {
    AmplifierBank::new(n, q, radius)?.select(x)
}

/// Constants `C_1(theta)`, `C_2(theta)` indexed by bitmasks of simple roots.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdTable {
    rank: usize,
    c1: Vec<f64>,
    c2: Vec<f64>,
}

impl ThresholdTable {
    /// Explicit table; `C_1(theta)` must dominate `C_1` and `C_2` of every
    /// proper subset.
    pub fn new(rank: usize, c1: Vec<f64>, c2: Vec<f64>) -> Result<Self> {
        let size = 1usize << rank;
        if c1.len() != size || c2.len() != size {
            return Err(Error::contract(format!("threshold tables need {size} entries")));
        }
        for mask in 1..size {
            for sub in proper_subsets(mask) {
                if c1[mask] < c1[sub].max(c2[sub]) {
                    return Err(Error::contract(format!("C1 is not monotone at subset mask {mask:#b}")));
                }
            }
        }
        Ok(ThresholdTable { rank, c1, c2 })
    }

    /// `C_1` generated from `C_2` by `C_1(empty) = 1` and
    /// `C_1(theta) = max over proper subsets of C_1, C_2`.
    pub fn from_c2(rank: usize, c2: Vec<f64>) -> Result<Self> {
        let size = 1usize << rank;
        if c2.len() != size {
            return Err(Error::contract(format!("threshold tables need {size} entries")));
        }
        let mut c1 = vec![1.0f64; size];
        for mask in 1..size {
            c1[mask] = proper_subsets(mask).map(|s| c1[s].max(c2[s])).fold(1.0, f64::max);
        }
        Self::new(rank, c1, c2)
    }

    /// `C_2` constant.
    pub fn uniform(rank: usize, c2: f64) -> Self {
        Self::from_c2(rank, vec![c2; 1 << rank]).expect("generated tables are monotone")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn c1(&self, mask: usize) -> f64 {
        self.c1[mask]
    }

    pub fn c2(&self, mask: usize) -> f64 {
        self.c2[mask]
    }
}

fn proper_subsets(mask: usize) -> impl Iterator<Item = usize> {
    // all submasks except mask itself
    let mut sub = mask;
    std::iter::from_fn(move || {
        if sub == 0 {
            return None;
        }
        sub = (sub - 1) & mask;
        Some(sub)
    })
}

/// A largest `theta` with `|alpha(x)| <= C_1(theta)` for the simple roots
/// `alpha = e_i - e_{i+1}` in `theta`; then `|alpha(x)| > C_2(theta)` off
/// `theta`, which is checked. Returns simple-root positions.
pub fn levi_threshold_partition(n: usize, x: &TorusPoint, table: &ThresholdTable) -> Result<Vec<usize>> {
    if n < 2 || x.dim() != n || table.rank() != n - 1 {
        return Err(Error::contract("dual torus point, n and threshold table disagree"));
    }
    let coords = x.to_float();
    let moduli: Vec<f64> = (0..n - 1).map(|i| (coords[i] / coords[i + 1]).norm()).collect();
    let size = 1usize << (n - 1);
    let fits = |mask: usize| (0..n - 1).filter(|i| mask >> i & 1 == 1).all(|i| moduli[i] <= table.c1(mask));
    let theta = (0..size)
        .filter(|&m| fits(m))
        .max_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m)))
        .expect("the empty set always fits");
    if let Some(i) = (0..n - 1).find(|&i| theta >> i & 1 == 0 && moduli[i] <= table.c2(theta)) {
        return Err(Error::Internal(format!(
            "simple root {i} has modulus {} <= C2 = {} off theta",
            moduli[i],
            table.c2(theta)
        )));
    }
    Ok((0..n - 1).filter(|i| theta >> i & 1 == 1).collect())
}
