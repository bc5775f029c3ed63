//! p-adic lattice helpers for `GL_n`: elementary divisors, column Hermite
//! normal forms and enumeration of Hecke spheres `K p^mu K / K`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{big_from_int, val};

/// Square matrix over the rationals, row major.
pub type Matrix = Vec<Vec<BigRational>>;

/// Default cap on the number of Hermite normal forms scanned.
pub const DEFAULT_ENUMERATION_CAP: usize = 50_000_000;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

pub fn from_ints(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| big_from_int(x)).collect()).collect()
}

/// `diag(p^e_1, ..., p^e_n)`.
pub fn diagonal_power(p: u64, exps: &[i64]) -> Matrix {
    let mut m = identity(exps.len());
    for (i, &e) in exps.iter().enumerate() {
        m[i][i] = pow(p, e);
    }
    m
}

/// `p^e` as a rational, `e` of either sign.
pub fn pow(p: u64, e: i64) -> BigRational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(BigRational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn det(a: &Matrix) -> BigRational {
    let mut m = a.clone();
    let n = m.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if r != c {
            m.swap(r, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    d
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for c in 0..n {
        let r = (c..n)
            .find(|&r| !m[r][c].is_zero())
            .ok_or_else(|| Error::contract("matrix is singular"))?;
        m.swap(r, c);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &piv;
        }
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for k in 0..2 * n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Elementary divisor exponents of an invertible matrix over `Q_p`, in
/// increasing order, from the minimal valuations of its `k x k` minors.
pub fn elementary_divisors(a: &Matrix, p: u64) -> Result<Vec<i64>> {
    let n = a.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0i64);
    for k in 1..=n {
        let sets = subsets(n, k);
        let m = sets
            .iter()
            .flat_map(|rows| sets.iter().map(move |cols| (rows, cols)))
            .map(|(rows, cols)| {
                let minor: Matrix = rows.iter().map(|&r| cols.iter().map(|&c| a[r][c].clone()).collect()).collect();
                val(&det(&minor), p)
            })
            .min()
            .unwrap_or(i64::MAX);
        if m == i64::MAX {
            return Err(Error::contract("matrix is singular"));
        }
        prefix.push(m);
    }
    Ok(prefix.windows(2).map(|w| w[1] - w[0]).collect())
}

fn val_i128(x: i128, p: i128) -> i64 {
    if x == 0 {
        return i64::MAX;
    }
    let mut x = x;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn det_i128(m: &[Vec<i128>], rows: &[usize], cols: &[usize]) -> i128 {
    match rows.len() {
        1 => m[rows[0]][cols[0]],
        k => {
            let mut acc = 0i128;
            for (t, &c) in cols.iter().enumerate() {
                let x = m[rows[0]][c];
                if x == 0 {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
                let sub = det_i128(m, &rows[1..k], &rest);
                acc += if t % 2 == 0 { x * sub } else { -x * sub };
            }
            acc
        }
    }
}

/// Integer fast path of [`elementary_divisors`] for small matrices.
pub(crate) fn elementary_divisors_int(m: &[Vec<i128>], p: u64) -> Vec<i64> {
    let n = m.len();
    let p = p as i128;
    let mut prev = 0i64;
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let sets = subsets(n, k);
        let mut best = i64::MAX;
        'scan: for rows in &sets {
            for cols in &sets {
                best = best.min(val_i128(det_i128(m, rows, cols), p));
                if best == prev {
                    break 'scan;
                }
            }
        }
        out.push(best - prev);
        prev = best;
    }
    out
}

/// Whether `a` lies in `GL_n(Z_p)`.
pub fn in_gl_zp(a: &Matrix, p: u64) -> bool {
    a.iter().flatten().all(|x| x.is_zero() || val(x, p) >= 0) && val(&det(a), p) == 0
}

/// Whether `aK = bK` for `K = GL_n(Z_p)`.
pub fn same_coset(a: &Matrix, b: &Matrix, p: u64) -> Result<bool> {
    Ok(in_gl_zp(&mat_mul(&inverse(a)?, b), p))
}

/// Whether `a` and `b` define the same coset of `PGL_n(Z_p)` in `PGL_n(Q_p)`.
pub fn same_projective_coset(a: &Matrix, b: &Matrix, p: u64) -> Result<bool> {
    let m = mat_mul(&inverse(a)?, b);
    let n = m.len() as i64;
    let v = val(&det(&m), p);
    if v % n != 0 {
        return Ok(false);
    }
    let s = pow(p, -(v / n));
    let scaled: Matrix = m.iter().map(|r| r.iter().map(|x| x * &s).collect()).collect();
    Ok(in_gl_zp(&scaled, p))
}

/// Representative of `x` modulo `p^d Z_p` in `[0, p^d)`, with denominators
/// only powers of `p`.
fn reduce_mod(x: &BigRational, d: i64, p: u64) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let v = val(x, p);
    if v >= d {
        return BigRational::zero();
    }
    let unit = x / pow(p, v);
    let modulus = BigInt::from(p).pow((d - v) as u32);
    let den_inv = unit.denom().extended_gcd(&modulus).x;
    let r = (unit.numer() * den_inv).mod_floor(&modulus);
    BigRational::from_integer(r) * pow(p, v)
}

/// Canonical representative of `aK`, `K = GL_n(Z_p)`: upper triangular,
/// diagonal `p^{d_i}`, entries right of the diagonal in row `i` taken in
/// `[0, p^{d_i})`.
pub fn column_hnf(a: &Matrix, p: u64) -> Result<Matrix> {
    let n = a.len();
    let mut m = a.clone();
    let mut diag = vec![0i64; n];
    let col_op = |m: &mut Matrix, dst: usize, src: usize, c: &BigRational| {
        for row in m.iter_mut() {
            let t = c * &row[src];
            row[dst] -= t;
        }
    };
    for i in (0..n).rev() {
        let pivot = (0..=i)
            .filter(|&j| !m[i][j].is_zero())
            .min_by_key(|&j| val(&m[i][j], p))
            .ok_or_else(|| Error::contract("matrix is singular"))?;
        for row in m.iter_mut() {
            row.swap(pivot, i);
        }
        let v = val(&m[i][i], p);
        let unit = &m[i][i] / pow(p, v);
        for row in m.iter_mut() {
            row[i] /= &unit;
        }
        diag[i] = v;
        for k in 0..i {
            if !m[i][k].is_zero() {
                let c = &m[i][k] / &m[i][i];
                col_op(&mut m, k, i, &c);
            }
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let r = reduce_mod(&m[i][j], diag[i], p);
            let c = (&m[i][j] - &r) / pow(p, diag[i]);
            if !c.is_zero() {
                col_op(&mut m, j, i, &c);
            }
        }
    }
    Ok(m)
}

fn compositions(total: i64, parts: usize, top: i64) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=top.min(total) {
        for mut rest in compositions(total - first, parts - 1, top) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn sorted(v: &[i64]) -> Vec<i64> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// Upper triangular integer matrices with diagonal `p^d`, entries of row
/// `i` in `[0, p^{d_i})`, indexed by `k`.
fn hnf_from_index(d: &[i64], p: u64, mut k: u64) -> Vec<Vec<i128>> {
    let n = d.len();
    let mut m = vec![vec![0i128; n]; n];
    for i in 0..n {
        let pi = (p as i128).pow(d[i] as u32);
        m[i][i] = pi;
        for j in i + 1..n {
            m[i][j] = (k % pi as u64) as i128;
            k /= pi as u64;
        }
    }
    m
}

fn hnf_count(d: &[i64], p: u64) -> Option<u64> {
    let n = d.len();
    d.iter()
        .enumerate()
        .try_fold(1u64, |acc, (i, &di)| acc.checked_mul(p.checked_pow((di as u32) * (n - 1 - i) as u32)?))
}

/// The Hermite normal forms of the cosets in `K p^mu K / K`, in a fixed
/// order. `mu` need not be sorted.
pub fn sphere(mu: &[i64], p: u64, cap: usize) -> Result<Vec<Matrix>> {
    let n = mu.len();
    let shift = *mu.iter().min().ok_or_else(|| Error::contract("empty cocharacter"))?;
    let target = sorted(&mu.iter().map(|x| x - shift).collect::<Vec<_>>());
    let blocks = sphere_blocks(&target, p, cap)?;
    let scale = pow(p, shift);
    let out: Vec<Vec<Matrix>> = blocks
        .par_iter()
        .map(|(d, count)| {
            (0..*count)
                .filter_map(|k| {
                    let m = hnf_from_index(d, p, k);
                    (sorted(&elementary_divisors_int(&m, p)) == target).then(|| {
                        m.iter()
                            .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x)) * &scale).collect())
                            .collect()
                    })
                })
                .collect()
        })
        .collect();
    let flat: Vec<Matrix> = out.into_iter().flatten().collect();
    debug_assert!(flat.iter().all(|m| m.len() == n));
    Ok(flat)
}

/// `|K p^mu K / K|` by enumeration.
pub fn sphere_size(mu: &[i64], p: u64, cap: usize) -> Result<u64> {
    let shift = *mu.iter().min().ok_or_else(|| Error::contract("empty cocharacter"))?;
    let target = sorted(&mu.iter().map(|x| x - shift).collect::<Vec<_>>());
    let blocks = sphere_blocks(&target, p, cap)?;
    Ok(blocks
        .par_iter()
        .map(|(d, count)| {
            (0..*count)
                .filter(|&k| sorted(&elementary_divisors_int(&hnf_from_index(d, p, k), p)) == target)
                .count() as u64
        })
        .sum())
}

fn sphere_blocks(target: &[i64], p: u64, cap: usize) -> Result<Vec<(Vec<i64>, u64)>> {
    let n = target.len();
    if n == 0 || n > 4 {
        return Err(Error::Capability(format!("sphere enumeration in GL_{n}")));
    }
    let total: i64 = target.iter().sum();
    let top = *target.last().expect("nonempty");
    let too_big = || Error::resource(format!("sphere of {target:?} at p = {p}"), cap);
    let mut blocks = Vec::new();
    let mut sum = 0u64;
    for d in compositions(total, n, top) {
        let c = hnf_count(&d, p).ok_or_else(too_big)?;
        sum = sum.checked_add(c).filter(|&s| s <= cap as u64).ok_or_else(too_big)?;
        blocks.push((d, c));
    }
    Ok(blocks)
}

/// A random element of `GL_n(Z)`: a signed permutation times a few
/// elementary matrices with small entries.
pub fn random_unimodular<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        m.swap(i, j);
    }
    for row in m.iter_mut() {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    if n > 1 {
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = rng.gen_range(-3..=3);
            for k in 0..n {
                m[i][k] += c * m[j][k];
            }
        }
    }
    m
}

/// Whether an integer matrix is invertible over `Z_p`.
pub fn is_unimodular_mod(m: &[Vec<i64>], p: u64) -> bool {
    let d = det(&from_ints(m));
    !d.is_zero() && val(&d, p) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b(x: i64) -> BigRational {
        big_from_int(x)
    }

    #[test]
    fn divisors_of_small_matrices() {
        let m = from_ints(&[vec![3, 1], vec![0, 3]]);
        assert_eq!(elementary_divisors(&m, 3).unwrap(), vec![0, 2]);
        let m = from_ints(&[vec![9, 0], vec![0, 1]]);
        assert_eq!(elementary_divisors(&m, 3).unwrap(), vec![0, 2]);
        let half = vec![vec![BigRational::new(1.into(), 2.into()), b(0)], vec![b(0), b(4)]];
        assert_eq!(elementary_divisors(&half, 2).unwrap(), vec![-1, 2]);
        assert!(elementary_divisors(&from_ints(&[vec![1, 2], vec![2, 4]]), 3).is_err());
    }

    #[test]
    fn sphere_sizes_match_subspace_counts() {
        for p in [2u64, 3, 5] {
            assert_eq!(sphere_size(&[1, 0], p, DEFAULT_ENUMERATION_CAP).unwrap(), p + 1);
            assert_eq!(sphere_size(&[1, 0, 0], p, DEFAULT_ENUMERATION_CAP).unwrap(), p * p + p + 1);
            assert_eq!(sphere_size(&[1, 1, 0], p, DEFAULT_ENUMERATION_CAP).unwrap(), p * p + p + 1);
            assert_eq!(sphere_size(&[2, 2], p, DEFAULT_ENUMERATION_CAP).unwrap(), 1);
        }
        assert_eq!(sphere(&[0, 1], 3, DEFAULT_ENUMERATION_CAP).unwrap().len(), 4);
    }

    #[test]
    fn hnf_is_a_coset_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for p in [2u64, 3] {
            for g in sphere(&[2, 0, 1], p, DEFAULT_ENUMERATION_CAP).unwrap().iter().take(40) {
                assert_eq!(&column_hnf(g, p).unwrap(), g);
                let k = from_ints(&random_unimodular(3, &mut rng));
                let gk = mat_mul(g, &k);
                assert_eq!(&column_hnf(&gk, p).unwrap(), g);
                assert!(same_coset(g, &gk, p).unwrap());
            }
        }
        let a = from_ints(&[vec![2, 0], vec![0, 1]]);
        let b2 = from_ints(&[vec![1, 0], vec![0, 2]]);
        assert!(!same_coset(&a, &b2, 2).unwrap());
        let scaled = from_ints(&[vec![4, 0], vec![0, 2]]);
        assert!(same_projective_coset(&a, &scaled, 2).unwrap());
        assert!(!same_coset(&a, &scaled, 2).unwrap());
    }

    #[test]
    fn hnf_reduces_fractional_entries() {
        let third = BigRational::new(1.into(), 3.into());
        let m = vec![vec![b(1), third], vec![b(0), b(1)]];
        let h = column_hnf(&m, 2).unwrap();
        assert_eq!(h, identity(2));
        let m = vec![vec![b(1), BigRational::new(1.into(), 2.into())], vec![b(0), b(1)]];
        assert!(!in_gl_zp(&column_hnf(&m, 2).unwrap(), 2));
    }

    #[test]
    fn random_unimodular_has_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            let m = random_unimodular(n, &mut rng);
            assert_eq!(det(&from_ints(&m)).abs(), b(1));
            assert!(is_unimodular_mod(&m, 2));
        }
    }
}
