//! The acceptance suite: nine numbered checks with measured values.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::buildings::{delta_profile, intersection_count, sphere_size_polynomial, ConfigKind, IntersectionConfig};
use crate::charring::{CharacterBank, GaussianRational, TorusPoint};
use crate::error::{Error, Result};
use crate::ksmall::{build_embedding, min_lattice_defect, EmbeddingFamily};
use crate::padic::{sphere_size, DEFAULT_ENUMERATION_CAP};
use crate::rational::{big_from_int, fmt_q};
use crate::report::{reproduce_section7, TableFilter};
use crate::rootdata::{build_root_datum, Family, LatticeVector, RootDatum};
use crate::satake::{dominates, satake_bruteforce, satake_omega, AmplifierBank, LaurentHalfQ};

/// Criterion metadata.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub group: &'static str,
    pub title: &'static str,
}

pub const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, group: "ksmall", title: "verification table: every instance certified positive" },
    Criterion { id: 2, group: "ksmall", title: "lattice defect minimum 2 for SO(k,k) in SL_2k and the Sp cases" },
    Criterion { id: 3, group: "satake", title: "Satake transform equals the brute-force oracle" },
    Criterion { id: 4, group: "satake", title: "Satake expansions: unit leading term, lower support, |qC| <= 2" },
    Criterion { id: 5, group: "buildings", title: "delta profile sums to star_norm2" },
    Criterion { id: 6, group: "buildings", title: "sphere polynomial equals the Hermite normal form count" },
    Criterion { id: 7, group: "buildings", title: "diagonal intersection counts vanish" },
    Criterion { id: 8, group: "charring", title: "nonvanishing search on unit torus points" },
    Criterion { id: 9, group: "amplifier", title: "amplifier maximum stable between q = 101 and q = 1009" },
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub measured: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {} {}: {} [{}]",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.measured
        )
    }
}

/// Criteria selected by a filter: a group name (`ksmall`, `satake`,
/// `buildings`, `charring`, `amplifier`) or comma-separated ids.
pub fn select(only: Option<&str>) -> Result<Vec<Criterion>> {
    let Some(filter) = only else {
        return Ok(CRITERIA.to_vec());
    };
    let mut out: Vec<Criterion> = Vec::new();
    for part in filter.split(',').map(str::trim) {
        let hits: Vec<Criterion> = match part.parse::<u8>() {
            Ok(id) => CRITERIA.iter().copied().filter(|c| c.id == id).collect(),
            Err(_) => CRITERIA.iter().copied().filter(|c| c.group == part).collect(),
        };
        if hits.is_empty() {
            return Err(Error::Parse(format!("no acceptance criterion matches {part:?}")));
        }
        out.extend(hits.into_iter().filter(|c| !out.contains(c)).collect::<Vec<_>>());
    }
    out.sort_by_key(|c| c.id);
    Ok(out)
}

/// Run one criterion. Errors inside a check count as failures.
pub fn run_criterion(id: u8, seed: u64) -> CriterionOutcome {
    let meta = CRITERIA.iter().find(|c| c.id == id).copied();
    let start = Instant::now();
    let result = match id {
        1 => criterion_table(),
        2 => criterion_lattice_defect(),
        3 => criterion_satake_oracle(),
        4 => criterion_satake_structure(),
        5 => criterion_delta_sum(seed),
        6 => criterion_sphere_polynomial(),
        7 => criterion_avoidance(seed),
        8 => criterion_nonvanishing(seed),
        9 => criterion_amplifier(seed),
        _ => Err(Error::contract(format!("no criterion {id}"))),
    };
    let (passed, measured) = match result {
        Ok(pair) => pair,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionOutcome {
        id,
        title: meta.map_or("unknown", |c| c.title).to_string(),
        passed,
        measured,
        elapsed: start.elapsed(),
    }
}

pub fn run_acceptance(only: Option<&str>, seed: u64) -> Result<Vec<CriterionOutcome>> {
    Ok(select(only)?.iter().map(|c| run_criterion(c.id, seed)).collect())
}

type Check = Result<(bool, String)>;

fn criterion_table() -> Check {
    let table = reproduce_section7(TableFilter::default())?;
    let positive = table.rows.iter().filter(|r| r.verdict == "positive").count();
    let min = table
        .rows
        .iter()
        .map(|r| crate::rational::parse_q(&r.kappa2_lower))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .ok_or_else(|| Error::Internal("empty verification table".into()))?;
    Ok((
        table.all_positive && min.is_positive(),
        format!("{positive}/{} positive, min kappa2_lower = {}", table.rows.len(), fmt_q(&min)),
    ))
}

fn criterion_lattice_defect() -> Check {
    let mut cases: Vec<(EmbeddingFamily, usize)> = (1..=4).map(|k| (EmbeddingFamily::SoSl, k)).collect();
    cases.extend([(EmbeddingFamily::GlSp, 2), (EmbeddingFamily::GlSp, 3)]);
    let mut found = Vec::new();
    for (f, k) in cases {
        let e = build_embedding(f, k)?;
        let (m, witness) = min_lattice_defect(&e, 3)?;
        // the defect at the witness, recomputed from both norms
        let direct = e.defect2(&witness);
        found.push((e.label(), m, direct));
    }
    let ok = found.iter().all(|(_, m, d)| *m == 2 && *d == 2);
    let summary: Vec<String> = found.iter().map(|(l, m, _)| format!("{l}: {m}")).collect();
    Ok((ok, summary.join(", ")))
}

pub const SATAKE_GL2_SET: [[i64; 2]; 5] = [[1, 0], [1, 1], [2, 0], [2, 1], [3, 0]];
pub const SATAKE_GL3_SET: [[i64; 3]; 3] = [[1, 0, 0], [1, 1, 0], [2, 0, 0]];

fn satake_cases() -> Vec<(Vec<i64>, u64)> {
    let mut cases = Vec::new();
    for mu in SATAKE_GL2_SET {
        cases.extend([2, 3, 5].map(|p| (mu.to_vec(), p)));
    }
    for mu in SATAKE_GL3_SET {
        cases.extend([2, 3].map(|p| (mu.to_vec(), p)));
    }
    cases
}

fn criterion_satake_oracle() -> Check {
    let mut mismatches = Vec::new();
    let cases = satake_cases();
    for (mu, p) in &cases {
        let table = satake_omega(mu.len(), mu)?.specialize(&big_from_int(*p as i64))?;
        let brute = satake_bruteforce(mu.len(), mu, *p)?;
        if table != brute.transform {
            mismatches.push(format!("{mu:?}@{p}"));
        }
    }
    Ok((
        mismatches.is_empty(),
        format!("{}/{} cases equal{}", cases.len() - mismatches.len(), cases.len(), fmt_list(&mismatches)),
    ))
}

fn fmt_list(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!("; mismatched: {}", items.join(" "))
    }
}

/// Dominant `mu` of `GL_n` with entries in `[lo, hi]`.
pub fn dominant_box(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, cap: i64, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in lo..=cap {
            cur.push(x);
            go(n, x, lo, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, hi, lo, &mut Vec::new(), &mut out);
    out
}

fn criterion_satake_structure() -> Check {
    let qs = [2, 3, 5, 101].map(big_from_int);
    let two = big_from_int(2);
    let mut instances: Vec<Vec<i64>> = satake_cases().into_iter().map(|(mu, _)| mu).collect();
    instances.extend(dominant_box(2, -2, 2));
    instances.extend(dominant_box(3, 0, 2));
    instances.extend(dominant_box(4, 0, 1));
    instances.sort();
    instances.dedup();
    let mut worst = BigRational::zero();
    let mut failures = Vec::new();
    for mu in &instances {
        let t = satake_omega(mu.len(), mu)?;
        if t.coefficient(mu) != LaurentHalfQ::from_int(1) {
            failures.push(format!("{mu:?}: leading"));
        }
        for (lam, c) in t.terms().filter(|(l, _)| *l != mu) {
            if !dominates(mu, lam) {
                failures.push(format!("{mu:?}: {lam:?} not below"));
            }
            let qc = c.shift(2);
            for q in &qs {
                let v = qc.eval(q)?.abs();
                if v > two {
                    failures.push(format!("{mu:?}: |qC({lam:?})| at {q}"));
                }
                worst = worst.max(v);
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!(
            "{} expansions, max |qC| = {:.4}{}",
            instances.len(),
            f64_of(&worst),
            fmt_list(&failures)
        ),
    ))
}

fn f64_of(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// The data of the delta-sum check.
pub fn delta_data() -> Result<Vec<RootDatum>> {
    let mut out = (1..=4).map(|r| build_root_datum(Family::A, r)).collect::<Result<Vec<_>>>()?;
    out.push(build_root_datum(Family::B, 2)?);
    out.push(build_root_datum(Family::C, 2)?);
    for r in 2..=4 {
        out.push(build_root_datum(Family::D, r)?);
    }
    out.push(build_root_datum(Family::G2, 2)?);
    Ok(out)
}

fn criterion_delta_sum(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = delta_data()?;
    let mut bad = Vec::new();
    let mut checked = 0;
    for datum in &data {
        for _ in 0..200 {
            let mu: Vec<i64> = (0..datum.ambient_dim()).map(|_| rng.gen_range(-5..=5)).collect();
            let lv = LatticeVector::coweight(&mu);
            // |<alpha, mu>| summed over positive roots is <mu^+, 2 rho>
            let direct: i64 = datum
                .positive_roots()
                .map(|a| a.iter().zip(&mu).map(|(x, y)| x * y).sum::<i64>().abs())
                .sum();
            let total = delta_profile(datum, &lv)?.total as i64;
            if total != direct {
                bad.push(format!("{} {mu:?}", datum.label()));
            }
            checked += 1;
        }
    }
    Ok((bad.is_empty(), format!("{checked} cocharacters over {} data{}", data.len(), fmt_list(&bad))))
}

fn criterion_sphere_polynomial() -> Check {
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 2..=3 {
        let datum = build_root_datum(Family::A, n - 1)?;
        for mu in dominant_box(n, 0, 3) {
            let lv = LatticeVector::coweight(&mu);
            let poly = sphere_size_polynomial(&datum, &lv)?;
            let norm = datum.star_norm2(&lv);
            if crate::rational::q(poly.degree().unwrap_or(0) as i64) != norm {
                bad.push(format!("{mu:?}: degree"));
            }
            if poly.leading() != 1 {
                bad.push(format!("{mu:?}: leading"));
            }
            for p in [2u64, 3] {
                let count = sphere_size(&mu, p, DEFAULT_ENUMERATION_CAP)?;
                if poly.eval(p) != BigInt::from(count) {
                    bad.push(format!("{mu:?}@{p}"));
                }
                checked += 1;
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} counts compared{}", fmt_list(&bad))))
}

pub const AVOID_NUS: [[i64; 2]; 4] = [[1, 0], [2, 0], [2, 1], [3, 0]];

fn criterion_avoidance(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nonzero = Vec::new();
    let mut checked = 0;
    for kind in [ConfigKind::DiagGl2, ConfigKind::DiagPgl2] {
        for p in [2u64, 3] {
            for nu in AVOID_NUS {
                let mu = [nu[0], nu[1], 0, 0];
                let mut configs = vec![IntersectionConfig::new(kind, p)?];
                for _ in 0..10 {
                    configs.push(IntersectionConfig::new(kind, p)?.with_random_twist(&mut rng)?);
                }
                for c in &configs {
                    let count = intersection_count(c, &mu)?;
                    if count != 0 {
                        nonzero.push(format!("{kind} {mu:?}@{p}: {count}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok((nonzero.is_empty(), format!("{checked} counts, all zero: {}{}", nonzero.is_empty(), fmt_list(&nonzero))))
}

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn gaussian(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(big_from_int(re), big_from_int(im))
}

/// Seeded unit-modulus points of the `GL_n` torus, led by singular ones:
/// `diag(i, -i)`, the identity, points with repeated coordinates and roots
/// of unity permuted by a Coxeter element.
pub fn unit_sample(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<TorusPoint>> {
    let mut pts = vec![TorusPoint::identity(n)];
    let mut forced = vec![gaussian(0, 1), gaussian(0, -1)];
    forced.resize(n, gaussian(1, 0));
    pts.push(TorusPoint::exact(forced)?);
    let mut alternating: Vec<GaussianRational> = (0..n).map(|i| gaussian(if i % 2 == 0 { 1 } else { -1 }, 0)).collect();
    pts.push(TorusPoint::exact(alternating.clone())?);
    alternating.reverse();
    pts.push(TorusPoint::exact(alternating)?);
    pts.push(TorusPoint::float((0..n).map(|k| unit(2.0 * PI * k as f64 / n as f64)).collect())?);
    while pts.len() < count {
        let z = unit(rng.gen_range(0.0..2.0 * PI));
        // every other sample repeats a coordinate, fixed by a transposition
        let mut coords: Vec<Complex64> = (0..n).map(|_| unit(rng.gen_range(0.0..2.0 * PI))).collect();
        if pts.len() % 2 == 0 {
            coords[0] = z;
            coords[1] = z;
        }
        pts.push(TorusPoint::float(coords)?);
    }
    pts.truncate(count);
    Ok(pts)
}

fn criterion_nonvanishing(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    let mut ok = true;
    for rank in 1..=2 {
        let datum = build_root_datum(Family::A, rank)?;
        let bank = CharacterBank::new(&datum, 4)?;
        let mut min = f64::INFINITY;
        for x in unit_sample(rank + 1, 1000, &mut rng)? {
            match bank.search(&x, 0.0) {
                Ok(hit) => min = min.min(hit.abs),
                Err(e) => {
                    ok = false;
                    parts.push(format!("{x}: {e}"));
                }
            }
        }
        ok &= min > 1e-3;
        parts.push(format!("A{rank}: min max|chi| = {min:.4}"));
    }
    Ok((ok, parts.join(", ")))
}

fn criterion_amplifier(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 2..=3 {
        let low = AmplifierBank::new(n, &big_from_int(101), 3)?;
        let high = AmplifierBank::new(n, &big_from_int(1009), 3)?;
        let central: Vec<bool> = low.candidates().map(|mu| mu.iter().all(|&x| x == mu[0])).collect();
        let sample = unit_sample(n, 500, &mut rng)?;
        let (mut m_low, mut m_high) = (f64::INFINITY, f64::INFINITY);
        let (mut nc_low, mut nc_high) = (f64::INFINITY, f64::INFINITY);
        for x in &sample {
            m_low = m_low.min(low.select(x)?.abs);
            m_high = m_high.min(high.select(x)?.abs);
            // the same maximum with the central characters left out
            let noncentral = |bank: &AmplifierBank| -> Result<f64> {
                Ok(bank
                    .values(x)?
                    .iter()
                    .zip(&central)
                    .filter(|(_, &c)| !c)
                    .map(|(v, _)| v.abs())
                    .fold(0.0, f64::max))
            };
            nc_low = nc_low.min(noncentral(&low)?);
            nc_high = nc_high.min(noncentral(&high)?);
        }
        let change = (m_high - m_low).abs() / m_low;
        ok &= m_low > 0.0 && change < 0.1;
        parts.push(format!(
            "GL{n}: min max = {m_low:.4} at 101, {m_high:.4} at 1009, change {:.2}% (noncentral {nc_low:.4}, {nc_high:.4})",
            100.0 * change
        ));
    }
    Ok((ok, parts.join(", ")))
}
