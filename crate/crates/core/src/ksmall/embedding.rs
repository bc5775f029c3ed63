use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::rational::{dot_int, Q};
use crate::rootdata::{build_root_datum, Family, LatticeVector, RootDatum, WeylGroup, DEFAULT_WEYL_CAP};

/// The seven maximal-compact embeddings, in split coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EmbeddingFamily {
    /// `SO(k,k) ⊂ SL_2k`
    SoSl,
    /// `SO(k,k+1) ⊂ SL_2k+1`
    SoSlOdd,
    /// `GL_n ⊂ Sp_2n`
    GlSp,
    /// `SO(k,k)² ⊂ SO(2k,2k)`
    SoSoEven,
    /// `SO(k,k) × SO(k,k+1) ⊂ SO(2k,2k+1)`
    SoSoMixed,
    /// `SO(k,k+1) × SO(k+1,k) ⊂ SO(2k+1,2k+1)`
    SoSoOdd,
    /// `SU(2) × SU(2) ⊂ G2`
    Su2G2,
}

impl EmbeddingFamily {
    pub const ALL: [EmbeddingFamily; 7] = [
        EmbeddingFamily::SoSl,
        EmbeddingFamily::SoSlOdd,
        EmbeddingFamily::GlSp,
        EmbeddingFamily::SoSoEven,
        EmbeddingFamily::SoSoMixed,
        EmbeddingFamily::SoSoOdd,
        EmbeddingFamily::Su2G2,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            EmbeddingFamily::SoSl => "so-sl",
            EmbeddingFamily::SoSlOdd => "so-sl-odd",
            EmbeddingFamily::GlSp => "gl-sp",
            EmbeddingFamily::SoSoEven => "so-so-even",
            EmbeddingFamily::SoSoMixed => "so-so-mixed",
            EmbeddingFamily::SoSoOdd => "so-so-odd",
            EmbeddingFamily::Su2G2 => "su2-g2",
        }
    }

    /// Supported size parameters.
    pub fn size_range(self) -> std::ops::RangeInclusive<usize> {
        match self {
            EmbeddingFamily::SoSl => 1..=4,
            EmbeddingFamily::SoSlOdd => 1..=3,
            EmbeddingFamily::GlSp => 1..=4,
            EmbeddingFamily::SoSoEven | EmbeddingFamily::SoSoMixed | EmbeddingFamily::SoSoOdd => 1..=2,
            EmbeddingFamily::Su2G2 => 1..=1,
        }
    }
}

impl fmt::Display for EmbeddingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for EmbeddingFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EmbeddingFamily::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown embedding family {s:?}")))
    }
}

/// A compact-subgroup torus `T_K` mapped into the split torus `T`.
#[derive(Clone, Debug)]
pub struct CocharEmbedding {
    family: EmbeddingFamily,
    size: usize,
    k_datum: RootDatum,
    g_datum: RootDatum,
    /// `g_dim x k_dim`, acting on cocharacters.
    iota: Vec<Vec<i64>>,
}

fn classical(f: Family, r: usize) -> Result<RootDatum> {
    // SO(1,1) and GL_1 are one-dimensional tori
    match (f, r) {
        (Family::A, 0) => build_root_datum(Family::Torus, 1),
        _ => build_root_datum(f, r),
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Build the embedding for a family and size parameter (`k` or `n`).
pub fn build_embedding(family: EmbeddingFamily, size: usize) -> Result<CocharEmbedding> {
    if !family.size_range().contains(&size) {
        return Err(Error::Capability(format!("{family} with size {size}")));
    }
    let k = size;
    let (k_datum, g_datum, iota) = match family {
        EmbeddingFamily::SoSl | EmbeddingFamily::SoSlOdd => {
            let odd = family == EmbeddingFamily::SoSlOdd;
            let kd = if odd {
                build_root_datum(Family::B, k)?
            } else {
                build_root_datum(Family::D, k)?
            };
            let g_dim = 2 * k + usize::from(odd);
            let gd = build_root_datum(Family::A, g_dim - 1)?;
            let mut iota = vec![vec![0; k]; g_dim];
            for i in 0..k {
                iota[i][i] = 1;
                iota[g_dim - 1 - i][i] = -1;
            }
            (kd, gd, iota)
        }
        EmbeddingFamily::GlSp => (classical(Family::A, k - 1)?, build_root_datum(Family::C, k)?, identity(k)),
        EmbeddingFamily::SoSoEven => {
            let d = build_root_datum(Family::D, k)?;
            (RootDatum::product(&d, &d), build_root_datum(Family::D, 2 * k)?, identity(2 * k))
        }
        EmbeddingFamily::SoSoMixed => {
            let kd = RootDatum::product(&build_root_datum(Family::D, k)?, &build_root_datum(Family::B, k)?);
            (kd, build_root_datum(Family::B, 2 * k)?, identity(2 * k))
        }
        EmbeddingFamily::SoSoOdd => {
            let b = build_root_datum(Family::B, k)?;
            let mut iota = identity(2 * k);
            iota.push(vec![0; 2 * k]);
            (RootDatum::product(&b, &b), build_root_datum(Family::D, 2 * k + 1)?, iota)
        }
        EmbeddingFamily::Su2G2 => {
            let s = build_root_datum(Family::Sl2, 1)?;
            (RootDatum::product(&s, &s), build_root_datum(Family::G2, 2)?, identity(2))
        }
    };
    let e = CocharEmbedding {
        family,
        size,
        k_datum,
        g_datum,
        iota,
    };
    e.check()?;
    Ok(e)
}

impl CocharEmbedding {
    pub fn family(&self) -> EmbeddingFamily {
        self.family
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn k_datum(&self) -> &RootDatum {
        &self.k_datum
    }

    pub fn g_datum(&self) -> &RootDatum {
        &self.g_datum
    }

    pub fn iota(&self) -> &[Vec<i64>] {
        &self.iota
    }

    pub fn k_dim(&self) -> usize {
        self.k_datum.ambient_dim()
    }

    /// Human-readable name such as `SO(2,2)⊂SL4`.
    pub fn label(&self) -> String {
        let k = self.size;
        match self.family {
            EmbeddingFamily::SoSl => format!("SO({k},{k})⊂SL{}", 2 * k),
            EmbeddingFamily::SoSlOdd => format!("SO({k},{})⊂SL{}", k + 1, 2 * k + 1),
            EmbeddingFamily::GlSp => format!("GL{k}⊂Sp{}", 2 * k),
            EmbeddingFamily::SoSoEven => format!("SO({k},{k})²⊂SO({},{})", 2 * k, 2 * k),
            EmbeddingFamily::SoSoMixed => format!("SO({k},{k})×SO({k},{})⊂SO({},{})", k + 1, 2 * k, 2 * k + 1),
            EmbeddingFamily::SoSoOdd => {
                format!("SO({k},{})×SO({},{k})⊂SO({},{})", k + 1, k + 1, 2 * k + 1, 2 * k + 1)
            }
            EmbeddingFamily::Su2G2 => "SU(2)×SU(2)⊂G2".to_string(),
        }
    }

    /// `iota(mu)` as a G-side coweight.
    pub fn apply(&self, mu: &[Q]) -> LatticeVector {
        assert_eq!(mu.len(), self.k_dim());
        let coords = self.iota.iter().map(|row| dot_int(mu, row)).collect();
        LatticeVector::new(coords, crate::rootdata::Side::Coweight)
    }

    /// Pull a G-side weight back to the K side: `iota^T(w)`.
    pub fn pull_back(&self, weight: &[Q]) -> Vec<Q> {
        (0..self.k_dim())
            .map(|j| {
                self.iota
                    .iter()
                    .zip(weight)
                    .fold(Q::zero(), |acc, (row, w)| acc + *w * row[j])
            })
            .collect()
    }

    fn check(&self) -> Result<()> {
        let cols: Vec<Vec<Q>> = (0..self.k_dim())
            .map(|j| self.iota.iter().map(|row| Q::from(row[j])).collect())
            .collect();
        if rank(&cols) != self.k_dim() {
            return Err(Error::Internal(format!("{}: iota is not injective", self.label())));
        }
        // enumerating W is cheap at desk ranks
        let w = WeylGroup::full(&self.g_datum, DEFAULT_WEYL_CAP)?;
        for p in 0..self.k_datum.simple_indices().len() {
            if self.matching_g_element(p, &w).is_none() {
                return Err(Error::Internal(format!(
                    "{}: K-simple reflection {p} has no counterpart in W",
                    self.label()
                )));
            }
        }
        Ok(())
    }

    /// A G-Weyl word `w` with `w(iota v) = iota(s_p v)` on a basis of the
    /// K-side lattice.
    pub fn matching_g_element(&self, p: usize, w: &WeylGroup) -> Option<Vec<usize>> {
        let basis: Vec<LatticeVector> = (0..self.k_dim())
            .map(|i| {
                let mut e = vec![0; self.k_dim()];
                e[i] = 1;
                LatticeVector::coweight(&e)
            })
            .collect();
        let images: Vec<(LatticeVector, LatticeVector)> = basis
            .iter()
            .map(|e| {
                let se = self.k_datum.simple_reflection(p, e);
                (self.apply(&e.coords), self.apply(&se.coords))
            })
            .collect();
        w.iter()
            .find(|el| {
                images
                    .iter()
                    .all(|(src, dst)| self.g_datum.apply_word(&el.word, src) == *dst)
            })
            .map(|el| el.word.clone())
    }
}

/// Integer vectors with sup-norm at most `radius`, excluding zero, in
/// lexicographic order.
pub(crate) fn box_points(dim: usize, radius: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * radius + 1) as u64;
    let total = side.pow(dim as u32);
    (0..total).filter_map(move |mut n| {
        let mut v = vec![0i64; dim];
        for x in v.iter_mut().rev() {
            *x = (n % side) as i64 - radius;
            n /= side;
        }
        v.iter().any(|&x| x != 0).then_some(v)
    })
}
