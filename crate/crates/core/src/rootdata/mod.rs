//! Root data in explicit torus coordinates, Weyl orbits, dominance and the
//! doubled `*`-norm.
//!
//! Every datum stores its roots in character coordinates (integers) and its
//! coroots in cocharacter coordinates. The pairing between the two sides is
//! the plain dot product. Coroots are rational because the `G2` realization
//! inside `SU(2) x SU(2)` coordinates has half-integral coroots; for the
//! classical families they are integral.
//!
//! Norms use the doubled convention `star_norm2(mu) = <mu^+, 2 rho>`, which
//! is integer valued on the lattice and agrees with the weights `2k-1,
//! 2k-3, ...` that appear in explicit case computations.

mod families;
mod weyl;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::solve_in_span;
use crate::rational::{dot, dot_int, q, qvec, Q};

pub use families::{build_root_datum, Family};
pub use weyl::{WeylElement, WeylGroup};

/// Default cap on materialized Weyl groups and orbits.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// Which lattice a vector lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// Characters `X^*(T)`.
    Weight,
    /// Cocharacters `X_*(T)`.
    Coweight,
}

/// A vector of exact coordinates tagged with its side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub coords: Vec<Q>,
    pub side: Side,
}

impl LatticeVector {
    pub fn new(coords: Vec<Q>, side: Side) -> Self {
        LatticeVector { coords, side }
    }

    pub fn weight(v: &[i64]) -> Self {
        Self::new(qvec(v), Side::Weight)
    }

    pub fn coweight(v: &[i64]) -> Self {
        Self::new(qvec(v), Side::Coweight)
    }

    pub fn zero(dim: usize, side: Side) -> Self {
        Self::new(vec![Q::zero(); dim], side)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        crate::rational::integral_vec(&self.coords)
    }

    pub fn sup_norm(&self) -> Q {
        crate::rational::sup_norm(&self.coords)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::new(self.coords.iter().map(|x| x * k).collect(), self.side)
    }

    pub fn add(&self, other: &Self) -> Self {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Self::new(coords, self.side)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Self::new(coords, self.side)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::rational::fmt_q).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Roots, coroots, a positive system and its simple roots.
#[derive(Clone, Debug)]
pub struct RootDatum {
    label: String,
    rank: usize,
    ambient_dim: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<Q>>,
    positive: Vec<usize>,
    simple: Vec<usize>,
    two_rho: Vec<i64>,
    weyl_order: u64,
}

/// Serialized form of a root datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumJson {
    pub family: String,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    /// Coroot numerators; divide by `coroot_denominator` when present.
    pub coroots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coroot_denominator: Option<i64>,
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
}

impl RootDatum {
    /// Assemble a datum from matched root/coroot lists and a positivity
    /// mask. Roots are sorted lexicographically, simple roots are the
    /// positive roots that are not a sum of two positive roots, listed in
    /// decreasing lexicographic order.
    pub(crate) fn assemble(
        label: String,
        rank: usize,
        ambient_dim: usize,
        entries: Vec<(Vec<i64>, Vec<Q>, bool)>,
        weyl_order: u64,
    ) -> Self {
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let roots: Vec<Vec<i64>> = entries.iter().map(|e| e.0.clone()).collect();
        let coroots: Vec<Vec<Q>> = entries.iter().map(|e| e.1.clone()).collect();
        let positive: Vec<usize> = (0..entries.len()).filter(|&i| entries[i].2).collect();
        let pos_set: HashSet<&Vec<i64>> = positive.iter().map(|&i| &roots[i]).collect();
        let mut simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&i| {
                !positive.iter().any(|&j| {
                    let rest: Vec<i64> = roots[i].iter().zip(&roots[j]).map(|(a, b)| a - b).collect();
                    j != i && pos_set.contains(&rest)
                })
            })
            .collect();
        // e_1 - e_2 first, matching the usual numbering of simple roots
        simple.sort_by(|&a, &b| roots[b].cmp(&roots[a]));
        let mut two_rho = vec![0i64; ambient_dim];
        for &i in &positive {
            for (t, r) in two_rho.iter_mut().zip(&roots[i]) {
                *t += r;
            }
        }
        RootDatum {
            label,
            rank,
            ambient_dim,
            roots,
            coroots,
            positive,
            simple,
            two_rho,
            weyl_order,
        }
    }

    /// Direct product, coordinates concatenated.
    pub fn product(a: &RootDatum, b: &RootDatum) -> RootDatum {
        let dim = a.ambient_dim + b.ambient_dim;
        let mut entries = Vec::new();
        for (src, offset) in [(a, 0usize), (b, a.ambient_dim)] {
            for i in 0..src.roots.len() {
                let mut r = vec![0i64; dim];
                let mut c = vec![Q::zero(); dim];
                r[offset..offset + src.ambient_dim].copy_from_slice(&src.roots[i]);
                c[offset..offset + src.ambient_dim].copy_from_slice(&src.coroots[i]);
                entries.push((r, c, src.positive.contains(&i)));
            }
        }
        RootDatum::assemble(
            format!("{}x{}", a.label, b.label),
            a.rank + b.rank,
            dim,
            entries,
            a.weyl_order * b.weyl_order,
        )
    }

    /// The sub-datum on the given roots (closed under negation), keeping
    /// the ambient coordinates and the positivity of `self`.
    pub fn subsystem(&self, root_indices: &[usize], label: impl Into<String>) -> Result<RootDatum> {
        let entries: Vec<(Vec<i64>, Vec<Q>, bool)> = root_indices
            .iter()
            .map(|&i| (self.roots[i].clone(), self.coroots[i].clone(), self.positive.contains(&i)))
            .collect();
        let mut sub = RootDatum::assemble(label.into(), 0, self.ambient_dim, entries, 0);
        sub.rank = sub.simple.len();
        sub.weyl_order = WeylGroup::full(&sub, DEFAULT_WEYL_CAP)?.order() as u64;
        sub.validate()?;
        Ok(sub)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<Q>] {
        &self.coroots
    }

    pub fn positive_indices(&self) -> &[usize] {
        &self.positive
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    pub fn two_rho_vector(&self) -> LatticeVector {
        LatticeVector::weight(&self.two_rho)
    }

    /// Order of the Weyl group predicted by the classification.
    pub fn classical_weyl_order(&self) -> u64 {
        self.weyl_order
    }

    pub fn simple_root(&self, pos: usize) -> &[i64] {
        &self.roots[self.simple[pos]]
    }

    pub fn simple_coroot(&self, pos: usize) -> &[Q] {
        &self.coroots[self.simple[pos]]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &[i64]> {
        self.positive.iter().map(|&i| self.roots[i].as_slice())
    }

    fn check_dim(&self, v: &LatticeVector) {
        assert_eq!(
            v.dim(),
            self.ambient_dim,
            "vector of dimension {} used with {} (dimension {})",
            v.dim(),
            self.label,
            self.ambient_dim
        );
    }

    /// `<v, alpha^vee>` for weights, `<alpha, v>` for coweights.
    pub fn pairing(&self, root: usize, v: &LatticeVector) -> Q {
        match v.side {
            Side::Weight => dot(&v.coords, &self.coroots[root]),
            Side::Coweight => dot_int(&v.coords, &self.roots[root]),
        }
    }

    /// Reflection in the root with the given index.
    pub fn reflect(&self, root: usize, v: &LatticeVector) -> LatticeVector {
        let c = self.pairing(root, v);
        let coords = match v.side {
            Side::Weight => v
                .coords
                .iter()
                .zip(&self.roots[root])
                .map(|(x, &a)| x - c * a)
                .collect(),
            Side::Coweight => v
                .coords
                .iter()
                .zip(&self.coroots[root])
                .map(|(x, a)| x - c * a)
                .collect(),
        };
        LatticeVector::new(coords, v.side)
    }

    pub fn simple_reflection(&self, pos: usize, v: &LatticeVector) -> LatticeVector {
        self.reflect(self.simple[pos], v)
    }

    /// Apply simple reflections in word order, first letter first.
    pub fn apply_word(&self, word: &[usize], v: &LatticeVector) -> LatticeVector {
        word.iter().fold(v.clone(), |acc, &i| self.simple_reflection(i, &acc))
    }

    pub fn is_dominant(&self, v: &LatticeVector) -> bool {
        self.check_dim(v);
        self.simple.iter().all(|&i| !self.pairing(i, v).is_negative())
    }

    /// Dominant representative of the Weyl orbit together with a word of
    /// simple reflections carrying `v` to it.
    pub fn dominant_rep(&self, v: &LatticeVector) -> (LatticeVector, Vec<usize>) {
        self.check_dim(v);
        let mut cur = v.clone();
        let mut word = Vec::new();
        loop {
            let next = (0..self.simple.len()).find(|&p| self.pairing(self.simple[p], &cur).is_negative());
            match next {
                Some(p) => {
                    cur = self.simple_reflection(p, &cur);
                    word.push(p);
                }
                None => return (cur, word),
            }
        }
    }

    /// Breadth-first closure of `v` under the simple reflections, sorted.
    pub fn weyl_orbit(&self, v: &LatticeVector, cap: usize) -> Result<Vec<LatticeVector>> {
        self.check_dim(v);
        let mut seen: HashSet<LatticeVector> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v.clone());
        queue.push_back(v.clone());
        while let Some(cur) = queue.pop_front() {
            for p in 0..self.simple.len() {
                let next = self.simple_reflection(p, &cur);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::resource(format!("Weyl orbit of {v} in {}", self.label), cap));
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<LatticeVector> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Doubled `*`-norm `max_w <w mu, 2 rho>`, computed at the dominant
    /// representative.
    pub fn star_norm2(&self, mu: &LatticeVector) -> Q {
        debug_assert_eq!(mu.side, Side::Coweight);
        let (dom, _) = self.dominant_rep(mu);
        dot_int(&dom.coords, &self.two_rho)
    }

    /// Coefficients of `v` in the simple roots (weights) or simple coroots
    /// (coweights); `None` outside their span.
    pub fn simple_coefficients(&self, v: &LatticeVector) -> Option<Vec<Q>> {
        let cols: Vec<Vec<Q>> = match v.side {
            Side::Weight => self.simple.iter().map(|&i| qvec(&self.roots[i])).collect(),
            Side::Coweight => self.simple.iter().map(|&i| self.coroots[i].clone()).collect(),
        };
        solve_in_span(&cols, &v.coords)
    }

    /// Dominance order on dominant vectors: `mu - lam` is a nonnegative
    /// integer combination of simple (co)roots.
    pub fn dominance_leq(&self, lam: &LatticeVector, mu: &LatticeVector) -> Result<bool> {
        if lam.side != mu.side {
            return Err(Error::contract("dominance_leq on vectors from different sides"));
        }
        for v in [lam, mu] {
            if !self.is_dominant(v) {
                return Err(Error::contract(format!("{v} is not dominant for {}", self.label)));
            }
        }
        Ok(self.is_below(lam, mu))
    }

    /// `mu - lam` in the nonnegative integer cone of simple (co)roots, with
    /// no dominance precondition.
    pub(crate) fn is_below(&self, lam: &LatticeVector, mu: &LatticeVector) -> bool {
        match self.simple_coefficients(&mu.sub(lam)) {
            Some(c) => c.iter().all(|x| x.is_integer() && !x.is_negative()),
            None => false,
        }
    }

    /// Check the structural invariants: `<alpha, alpha^vee> = 2`, simple
    /// reflections permute the roots, positive roots are half of all roots
    /// and `two_rho` is their sum.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Internal(format!("{}: {m}", self.label)));
        let root_set: HashSet<&Vec<i64>> = self.roots.iter().collect();
        for (r, c) in self.roots.iter().zip(&self.coroots) {
            if dot_int(c, r) != q(2) {
                return bad(format!("<{r:?}, coroot> != 2"));
            }
        }
        for &s in &self.simple {
            for r in &self.roots {
                let img = self.reflect(s, &LatticeVector::weight(r));
                match img.to_ints() {
                    Some(v) if root_set.contains(&v) => {}
                    _ => return bad(format!("reflection in root {s} does not permute roots")),
                }
            }
        }
        if 2 * self.positive.len() != self.roots.len() {
            return bad("positive roots are not half of all roots".into());
        }
        let mut sum = vec![0i64; self.ambient_dim];
        for r in self.positive_roots() {
            for (t, x) in sum.iter_mut().zip(r) {
                *t += x;
            }
        }
        if sum != self.two_rho {
            return bad("two_rho is not the sum of positive roots".into());
        }
        Ok(())
    }

    /// JSON form with lexicographic root order (the stored order).
    pub fn to_json(&self) -> RootDatumJson {
        let den = self
            .coroots
            .iter()
            .flatten()
            .fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
        let coroots = self
            .coroots
            .iter()
            .map(|c| c.iter().map(|x| (x * den).to_integer()).collect())
            .collect();
        RootDatumJson {
            family: self.label.clone(),
            rank: self.rank,
            roots: self.roots.clone(),
            coroots,
            coroot_denominator: (den != 1).then_some(den),
            positive: self.positive.clone(),
            simple: self.simple.clone(),
        }
    }
}
