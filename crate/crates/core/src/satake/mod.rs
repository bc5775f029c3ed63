//! Satake transforms of spherical Hecke operators for `GL_n`.
//!
//! `satake_omega` is computed from Kostka-Foulkes polynomials: the
//! transform of `omega_mu` is the Hall-Littlewood polynomial
//! `P_mu(x; q^{-1})`, and inverting the unitriangular relation
//! `s_lam = sum_mu K_{lam mu}(t) P_mu` expresses it in Schur characters.
//! `satake_bruteforce` recomputes the same expansion at `q = p` straight
//! from the integral over `N(Q_p)`, counting unipotent cosets.
//!
//! Normalization: `S f(lam) = q^{<lam, rho>} int_N f(n lam(p)) dn` with
//! `vol N(Z_p) = 1`. The exponent pairs `rho` with the torus variable
//! `lam`, not with the index `mu` of the double coset.

mod amplifier;
mod character;
mod kostka;
mod laurent;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::padic::{self, elementary_divisors, mat_mul, inverse, diagonal_power, DEFAULT_ENUMERATION_CAP};
use crate::rational::big_from_int;

pub use amplifier::{amplifier_select, levi_threshold_partition, AmplifierBank, AmplifierChoice, ThresholdTable};
pub use character::{HeckeElement, TermJson, VirtualCharacter};
pub use kostka::{charge, dominates, is_partition, kostka_foulkes, partitions, reading_word, ssyt};
pub use laurent::LaurentHalfQ;

/// Largest `GL_n` handled by [`satake_omega`].
pub const MAX_TABLE_RANK: usize = 4;
/// Largest absolute entry of `mu` accepted by [`satake_omega`].
pub const MAX_TABLE_ENTRY: i64 = 4;

fn check_gl_cocharacter(n: usize, mu: &[i64]) -> Result<()> {
    if mu.len() != n {
        return Err(Error::contract(format!("{mu:?} has length {} but n = {n}", mu.len())));
    }
    if !character::is_dominant(mu) {
        return Err(Error::contract(format!("{mu:?} is not dominant")));
    }
    Ok(())
}

/// `<v, rho>` doubled: `sum_i (n - 1 - 2i) v_i`.
fn rho_pairing2(v: &[i64]) -> i64 {
    let n = v.len() as i64;
    v.iter().enumerate().map(|(i, &x)| (n - 1 - 2 * i as i64) * x).sum()
}

/// `S omega_mu = chi_mu + sum_{lam < mu} C(lam, mu, q) chi_lam` with
/// symbolic `q`.
pub fn satake_omega(n: usize, mu: &[i64]) -> Result<VirtualCharacter> {
    if !(2..=MAX_TABLE_RANK).contains(&n) {
        return Err(Error::Capability(format!("Satake tables for GL_{n}")));
    }
    check_gl_cocharacter(n, mu)?;
    if mu.iter().any(|x| x.abs() > MAX_TABLE_ENTRY) {
        return Err(Error::resource(format!("Satake table for {mu:?}"), MAX_TABLE_ENTRY as usize));
    }
    let shift = mu[n - 1];
    let top: Vec<i64> = mu.iter().map(|x| x - shift).collect();
    let size: i64 = top.iter().sum();
    // increasing lexicographic order refines dominance
    let mut lower: Vec<Vec<i64>> = partitions(size, n).into_iter().filter(|l| dominates(&top, l)).collect();
    lower.reverse();
    let mut hall: HashMap<Vec<i64>, BTreeMap<Vec<i64>, LaurentHalfQ>> = HashMap::new();
    for (i, nu) in lower.iter().enumerate() {
        let mut expansion = BTreeMap::from([(nu.clone(), LaurentHalfQ::from_int(1))]);
        for kappa in &lower[..i] {
            let k = kostka_foulkes(nu, kappa)?;
            if k.is_empty() {
                continue;
            }
            let kt = LaurentHalfQ::from_t_poly(&k);
            for (lam, c) in &hall[kappa] {
                let e = expansion.entry(lam.clone()).or_default();
                *e = std::mem::take(e) - &kt * c;
            }
        }
        expansion.retain(|_, c| !c.is_zero());
        hall.insert(nu.clone(), expansion);
    }
    let mut out = VirtualCharacter::zero(n);
    for (lam, c) in &hall[&top] {
        let shifted: Vec<i64> = lam.iter().map(|x| x + shift).collect();
        out.add_term(&shifted, c.clone())?;
    }
    Ok(out)
}

/// Result of the definitional computation at a fixed prime.
#[derive(Clone, Debug)]
pub struct BruteforceSatake {
    pub n: usize,
    pub mu: Vec<i64>,
    pub p: u64,
    /// `S omega_mu` at `q = p`, in the character basis.
    pub transform: VirtualCharacter,
    /// `|K p^mu K / K|` from Hermite normal forms.
    pub sphere_size: u64,
    /// Number of `N(Z_p)`-cosets `n` with `n lam(p)` in `K p^mu K`, per weight.
    pub coset_counts: BTreeMap<Vec<i64>, u64>,
    /// Unipotent matrices examined.
    pub scanned: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Weights with entries in `[lo, hi]` and the given sum.
fn box_weights(n: usize, lo: i64, hi: i64, sum: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return if sum == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (lo..=hi)
        .flat_map(|first| {
            box_weights(n - 1, lo, hi, sum - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

pub fn satake_bruteforce(n: usize, mu: &[i64], p: u64) -> Result<BruteforceSatake> {
    satake_bruteforce_capped(n, mu, p, DEFAULT_ENUMERATION_CAP)
}

/// `S omega_mu` at `q = p` from the defining integral: for every weight
/// `lam` count the `n in N(Z_p) \ N(Q_p)` with entries in `p^{-B} Z / Z`
/// (`B` the spread of `mu`) such that `n lam(p)` has elementary divisors
/// `p^mu`, weight by `p^{<lam - mu, rho>}` and decompose.
pub fn satake_bruteforce_capped(n: usize, mu: &[i64], p: u64, cap: usize) -> Result<BruteforceSatake> {
    if !(2..=3).contains(&n) {
        return Err(Error::Capability(format!("brute-force Satake transform for GL_{n}")));
    }
    if !is_prime(p) || p > 7 {
        return Err(Error::Capability(format!("brute-force Satake transform at p = {p}")));
    }
    check_gl_cocharacter(n, mu)?;
    let shift = mu[n - 1];
    let top: Vec<i64> = mu.iter().map(|x| x - shift).collect();
    let spread = top[0];
    if spread > 3 {
        return Err(Error::Capability(format!("brute-force Satake transform for spread {spread}")));
    }
    let size: i64 = top.iter().sum();
    let weights = box_weights(n, 0, spread, size);
    let entries = n * (n - 1) / 2;
    let per_weight = p.pow((spread as u32) * entries as u32);
    let scanned = per_weight * weights.len() as u64;
    if scanned > cap as u64 {
        return Err(Error::resource(format!("unipotent cosets for {mu:?} at p = {p}"), cap));
    }
    let mut target: Vec<i64> = top.iter().map(|x| x + spread).collect();
    target.sort_unstable();
    let pb = (p as i128).pow(spread as u32);
    let counts: Vec<u64> = weights
        .par_iter()
        .map(|lam| {
            (0..per_weight)
                .into_par_iter()
                .filter(|&k| {
                    // p^B n lam(p) has integer entries
                    let mut m = vec![vec![0i128; n]; n];
                    let mut k = k;
                    for i in 0..n {
                        m[i][i] = pb * (p as i128).pow(lam[i] as u32);
                        for j in i + 1..n {
                            m[i][j] = (k % pb as u64) as i128 * (p as i128).pow(lam[j] as u32);
                            k /= pb as u64;
                        }
                    }
                    let mut e = padic::elementary_divisors_int(&m, p);
                    e.sort_unstable();
                    e == target
                })
                .count() as u64
        })
        .collect();

    let sphere_size = padic::sphere_size(mu, p, cap)?;
    let mut from_cosets = BigRational::from_integer(0.into());
    let mut monomials: BTreeMap<Vec<i64>, LaurentHalfQ> = BTreeMap::new();
    let mut coset_counts = BTreeMap::new();
    for (lam, &c) in weights.iter().zip(&counts) {
        if c == 0 {
            continue;
        }
        let diff: Vec<i64> = lam.iter().zip(&top).map(|(a, b)| a - b).collect();
        let e2 = rho_pairing2(&diff);
        if e2 % 2 != 0 {
            return Err(Error::Internal("half-integral rho pairing in GL_n".into()));
        }
        let weight = padic::pow(p, e2 / 2) * big_from_int(c as i64);
        from_cosets += padic::pow(p, rho_pairing2(lam)) * big_from_int(c as i64);
        let shifted: Vec<i64> = lam.iter().map(|x| x + shift).collect();
        monomials.insert(shifted.clone(), LaurentHalfQ::constant(weight));
        coset_counts.insert(shifted, c);
    }
    if from_cosets != BigRational::from_integer(BigInt::from(sphere_size)) {
        return Err(Error::Internal(format!(
            "Iwasawa decomposition of the sphere gives {from_cosets} cosets, enumeration gives {sphere_size}"
        )));
    }
    let transform = VirtualCharacter::from_monomials(n, &monomials)?;
    Ok(BruteforceSatake {
        n,
        mu: mu.to_vec(),
        p,
        transform,
        sphere_size,
        coset_counts,
        scanned,
    })
}

/// `omega_a * omega_b` by counting: the coefficient of `1_{K p^lam K}` in
/// `1_{K p^a K} * 1_{K p^b K}` is the number of `x K` in `K p^a K / K`
/// with `x^{-1} p^lam` in `K p^b K`. Coefficients are evaluated at `q = p`.
pub fn convolve_bruteforce(a: &[i64], b: &[i64], p: u64) -> Result<HeckeElement> {
    let n = a.len();
    check_gl_cocharacter(n, a)?;
    check_gl_cocharacter(n, b)?;
    if !is_prime(p) {
        return Err(Error::contract(format!("{p} is not prime")));
    }
    let sphere = padic::sphere(a, p, DEFAULT_ENUMERATION_CAP)?;
    let inverses: Vec<_> = sphere.iter().map(inverse).collect::<Result<_>>()?;
    let mut target = b.to_vec();
    target.sort_unstable();
    let lo = a[n - 1] + b[n - 1];
    let hi = a[0] + b[0];
    let total: i64 = a.iter().sum::<i64>() + b.iter().sum::<i64>();
    let mut out = HeckeElement::zero(n);
    for lam in box_weights(n, lo, hi, total).into_iter().filter(|l| character::is_dominant(l)) {
        let pl = diagonal_power(p, &lam);
        let count = inverses
            .par_iter()
            .map(|xi| -> Result<bool> {
                let mut e = elementary_divisors(&mat_mul(xi, &pl), p)?;
                e.sort_unstable();
                Ok(e == target)
            })
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .filter(|&x| x)
            .count() as i64;
        if count == 0 {
            continue;
        }
        let diff: Vec<i64> = (0..n).map(|i| lam[i] - a[i] - b[i]).collect();
        let e2 = rho_pairing2(&diff);
        out.add_term(&lam, LaurentHalfQ::constant(padic::pow(p, e2 / 2) * big_from_int(count)))?;
    }
    Ok(out)
}
