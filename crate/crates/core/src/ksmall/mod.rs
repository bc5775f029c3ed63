//! K-smallness: the defect `star_norm2_G(iota mu) - 2 star_norm2_K(mu)`
//! and an exact certificate that it is positive away from zero.
//!
//! The defect is positively homogeneous and piecewise linear. On a chamber
//! of `W_K` the K-term is linear and the G-term is a maximum of linear
//! forms, so its minimum over each facet of the unit sup-norm box is a
//! linear program. The G-side forms are added lazily: after each solve the
//! dominant representative of `iota mu*` names the most violated one.

mod embedding;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::{big_from_int, dot, fmt_q, from_big, qvec, to_big, Q};
use crate::rootdata::{LatticeVector, WeylGroup, DEFAULT_WEYL_CAP};

pub use embedding::{build_embedding, CocharEmbedding, EmbeddingFamily};

/// Lattice box radius used by [`verify_ksmall`] for the cross-check.
pub const DEFAULT_BOX_RADIUS: i64 = 3;

/// Result of [`verify_ksmall`].
#[derive(Clone, Debug, PartialEq)]
pub struct KSmallCertificate {
    /// Exact minimum of the doubled defect over the unit sup-norm sphere.
    pub kappa2_lower: Q,
    /// Minimum over nonzero lattice points in the scanned box.
    pub kappa2_lattice: i64,
    pub witness_mu: Vec<i64>,
    /// Face LPs solved (infeasible faces included).
    pub lp_count: usize,
    /// Where the continuous minimum is attained.
    pub argmin: Vec<Q>,
}

impl KSmallCertificate {
    pub fn positive(&self) -> bool {
        self.kappa2_lower.is_positive()
    }
}

/// JSON form of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSmallReport {
    pub family: String,
    pub size: usize,
    pub label: String,
    pub kappa2_lower: String,
    pub kappa_lower: String,
    pub kappa2_lattice: i64,
    pub witness: Vec<i64>,
    pub lp_count: usize,
    pub verdict: String,
}

impl KSmallReport {
    pub fn new(e: &CocharEmbedding, c: &KSmallCertificate) -> Self {
        KSmallReport {
            family: e.family().tag().to_string(),
            size: e.size(),
            label: e.label(),
            kappa2_lower: fmt_q(&c.kappa2_lower),
            kappa_lower: fmt_q(&(c.kappa2_lower / 2)),
            kappa2_lattice: c.kappa2_lattice,
            witness: c.witness_mu.clone(),
            lp_count: c.lp_count,
            verdict: if c.positive() { "positive" } else { "non-positive" }.to_string(),
        }
    }
}

impl CocharEmbedding {
    /// Doubled defect at a rational K-side point.
    pub fn defect2_rational(&self, mu: &[Q]) -> Q {
        let g = self.g_datum().star_norm2(&self.apply(mu));
        let k = self.k_datum().star_norm2(&LatticeVector::new(mu.to_vec(), crate::rootdata::Side::Coweight));
        g - k * 2
    }

    /// Doubled defect at a lattice point.
    pub fn defect2(&self, mu: &[i64]) -> i64 {
        let d = self.defect2_rational(&qvec(mu));
        debug_assert!(d.is_integer());
        d.to_integer()
    }
}

/// Minimum of the defect over nonzero `mu` with `|mu|_inf <= radius`.
///
/// Ties go to the smaller sup-norm, then to the lexicographically larger
/// vector, so the witness is stable under refinement of the box.
pub fn min_lattice_defect(e: &CocharEmbedding, radius: i64) -> Result<(i64, Vec<i64>)> {
    if radius < 1 {
        return Err(Error::contract("box radius must be at least 1"));
    }
    let points: Vec<Vec<i64>> = embedding::box_points(e.k_dim(), radius).collect();
    let best = points
        .par_iter()
        .map(|mu| {
            let sup = mu.iter().map(|x| x.abs()).max().unwrap_or(0);
            (e.defect2(mu), sup, mu.clone())
        })
        .reduce_with(|a, b| {
            let key = |x: &(i64, i64, Vec<i64>)| (x.0, x.1);
            match key(&a).cmp(&key(&b)) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal => {
                    if a.2 >= b.2 {
                        a
                    } else {
                        b
                    }
                }
            }
        })
        .expect("box contains nonzero points");
    Ok((best.0, best.2))
}

/// One polyhedral cone of K-side space on which the K-term is linear.
struct Chamber {
    /// Rows `r` with `r . mu >= 0`.
    walls: Vec<Vec<Q>>,
    /// `2 (u . 2 rho_K)`.
    k_term: Vec<Q>,
}

fn chambers(e: &CocharEmbedding) -> Result<Vec<Chamber>> {
    let k = e.k_datum();
    let simple: Vec<Vec<Q>> = (0..k.simple_indices().len()).map(|p| qvec(k.simple_root(p))).collect();
    let two = |v: &[Q]| v.iter().map(|x| x * 2).collect::<Vec<Q>>();
    if signed_permutation_action(e) {
        // W_K preserves the sup-norm, so the dominant chamber suffices
        return Ok(vec![Chamber {
            walls: simple,
            k_term: two(&qvec(k.two_rho())),
        }]);
    }
    let w = WeylGroup::full(k, DEFAULT_WEYL_CAP)?;
    Ok(w
        .iter()
        .map(|u| Chamber {
            walls: simple
                .iter()
                .map(|a| k.apply_word(&u.word, &LatticeVector::new(a.clone(), crate::rootdata::Side::Weight)).coords)
                .collect(),
            k_term: two(&qvec(&u.image)),
        })
        .collect())
}

/// Every K-simple reflection maps each basis coweight to a signed basis
/// coweight.
fn signed_permutation_action(e: &CocharEmbedding) -> bool {
    let k = e.k_datum();
    let dim = e.k_dim();
    (0..k.simple_indices().len()).all(|p| {
        (0..dim).all(|i| {
            let mut v = vec![0; dim];
            v[i] = 1;
            let img = k.simple_reflection(p, &LatticeVector::coweight(&v));
            let nonzero: Vec<&Q> = img.coords.iter().filter(|x| !x.is_zero()).collect();
            nonzero.len() == 1 && nonzero[0].abs() == Q::from(1)
        })
    })
}

struct FaceResult {
    value: Option<(Q, Vec<Q>)>,
}

/// Minimize the defect on `chamber ∩ {mu_c = sign, |mu|_inf <= 1}`.
fn solve_face(e: &CocharEmbedding, chamber: &Chamber, c: usize, sign: i64) -> Result<FaceResult> {
    let dim = e.k_dim();
    let g = e.g_datum();
    let big = |x: &Q| to_big(x);
    let t = dim;
    let mut lp = LinearProgram::new(dim + 1);
    let mut objective: Vec<BigRational> = chamber.k_term.iter().map(|x| -big(x)).collect();
    objective.push(big_from_int(1));
    lp.set_objective(objective);
    let unit = |i: usize| {
        let mut r = vec![BigRational::zero(); dim + 1];
        r[i] = big_from_int(1);
        r
    };
    lp.add(unit(c), Relation::Eq, big_from_int(sign));
    for i in (0..dim).filter(|&i| i != c) {
        lp.add(unit(i), Relation::Le, big_from_int(1));
        lp.add(unit(i), Relation::Ge, big_from_int(-1));
    }
    for wall in &chamber.walls {
        let mut r: Vec<BigRational> = wall.iter().map(big).collect();
        r.push(BigRational::zero());
        lp.add(r, Relation::Ge, BigRational::zero());
    }
    let mut cuts: Vec<Vec<Q>> = Vec::new();
    let mut add_cut = |lp: &mut LinearProgram, form: Vec<Q>| {
        if cuts.contains(&form) {
            return false;
        }
        // t - form . mu >= 0
        let mut r: Vec<BigRational> = form.iter().map(|x| -big(x)).collect();
        r.push(big_from_int(1));
        lp.add(r, Relation::Ge, BigRational::zero());
        cuts.push(form);
        true
    };
    add_cut(&mut lp, e.pull_back(&qvec(g.two_rho())));
    loop {
        let sol = match lp.solve()? {
            LpOutcome::Infeasible => return Ok(FaceResult { value: None }),
            LpOutcome::Unbounded => {
                return Err(Error::Internal("face LP unbounded on a bounded face".into()));
            }
            LpOutcome::Optimal(s) => s,
        };
        let mu: Vec<Q> = sol.x[..dim].iter().map(from_big).collect::<Result<_>>()?;
        let t_val = from_big(&sol.x[t])?;
        let image = e.apply(&mu);
        let (dom, word) = g.dominant_rep(&image);
        let true_max = dot(&dom.coords, &qvec(g.two_rho()));
        if true_max <= t_val {
            let value = t_val - dot(&chamber.k_term, &mu);
            return Ok(FaceResult {
                value: Some((value, mu)),
            });
        }
        // the form attaining the max at mu is iota^T(w^{-1} 2 rho)
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        let form = g.apply_word(&rev, &g.two_rho_vector());
        if !add_cut(&mut lp, e.pull_back(&form.coords)) {
            return Err(Error::Internal("separation returned an existing cut".into()));
        }
    }
}

/// Certify K-smallness with the face-LP procedure and cross-check against
/// the lattice minimum in a box of the given radius.
pub fn verify_ksmall_with_box(e: &CocharEmbedding, radius: i64) -> Result<KSmallCertificate> {
    let chambers = chambers(e)?;
    let dim = e.k_dim();
    let faces: Vec<(usize, usize, i64)> = (0..chambers.len())
        .flat_map(|ch| (0..dim).flat_map(move |c| [(ch, c, 1), (ch, c, -1)]))
        .collect();
    let results: Vec<FaceResult> = faces
        .par_iter()
        .map(|&(ch, c, s)| solve_face(e, &chambers[ch], c, s))
        .collect::<Result<_>>()?;
    for (ch, _) in chambers.iter().enumerate() {
        let any = faces
            .iter()
            .zip(&results)
            .any(|(f, r)| f.0 == ch && r.value.is_some());
        if !any {
            return Err(Error::Internal(format!("chamber {ch} meets no face of the unit box")));
        }
    }
    let (kappa2_lower, argmin) = results
        .into_iter()
        .filter_map(|r| r.value)
        .min_by(|a, b| a.0.cmp(&b.0))
        .expect("at least one feasible face");
    let (kappa2_lattice, witness_mu) = min_lattice_defect(e, radius)?;
    Ok(KSmallCertificate {
        kappa2_lower,
        kappa2_lattice,
        witness_mu,
        lp_count: faces.len(),
        argmin,
    })
}

pub fn verify_ksmall(e: &CocharEmbedding) -> Result<KSmallCertificate> {
    verify_ksmall_with_box(e, DEFAULT_BOX_RADIUS)
}

/// The instances making up the verification table: `SL3`..`SL8`, `Sp4`,
/// `Sp6`, `SO(4,4)`, `SO(4,5)`, `SO(5,5)` and `G2`.
pub fn table_instances() -> Vec<(EmbeddingFamily, usize)> {
    use EmbeddingFamily::*;
    vec![
        (SoSlOdd, 1),
        (SoSl, 2),
        (SoSlOdd, 2),
        (SoSl, 3),
        (SoSlOdd, 3),
        (SoSl, 4),
        (GlSp, 2),
        (GlSp, 3),
        (SoSoEven, 2),
        (SoSoMixed, 2),
        (SoSoOdd, 2),
        (Su2G2, 1),
    ]
}
