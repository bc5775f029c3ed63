use num_traits::{Signed, Zero};

use super::{weight_multiplicities, Scalar, TorusPoint, FLOAT_TOL};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::rootdata::{LatticeVector, RootDatum, DEFAULT_WEYL_CAP};

fn check_theta(datum: &RootDatum, theta: &[usize]) -> Result<()> {
    let n = datum.simple_indices().len();
    if let Some(bad) = theta.iter().find(|&&p| p >= n) {
        return Err(Error::contract(format!("simple index {bad} out of range for {}", datum.label())));
    }
    Ok(())
}

/// Roots in the span of the simple roots listed in `theta`.
fn levi_root_indices(datum: &RootDatum, theta: &[usize]) -> Vec<usize> {
    (0..datum.roots().len())
        .filter(|&i| {
            let c = datum
                .simple_coefficients(&LatticeVector::weight(&datum.roots()[i]))
                .expect("roots lie in the root span");
            c.iter().enumerate().all(|(p, x)| x.is_zero() || theta.contains(&p))
        })
        .collect()
}

/// The standard Levi subgroup on `theta`, in the same torus coordinates.
pub fn levi_datum(datum: &RootDatum, theta: &[usize]) -> Result<RootDatum> {
    check_theta(datum, theta)?;
    let idx = levi_root_indices(datum, theta);
    datum.subsystem(&idx, format!("{}-levi{theta:?}", datum.label()))
}

/// `lambda_L = 2 rho - 2 rho_L`, checked to vanish on `theta`, to be
/// strictly positive on the other simple coroots and to have stabilizer
/// exactly `W_L`.
pub fn levi_lambda(datum: &RootDatum, theta: &[usize]) -> Result<LatticeVector> {
    let levi = levi_datum(datum, theta)?;
    let lam: Vec<i64> = datum
        .two_rho()
        .iter()
        .zip(levi.two_rho())
        .map(|(a, b)| a - b)
        .collect();
    let v = LatticeVector::weight(&lam);
    for p in 0..datum.simple_indices().len() {
        let c = datum.pairing(datum.simple_indices()[p], &v);
        let ok = if theta.contains(&p) { c.is_zero() } else { c.is_positive() };
        if !ok {
            return Err(Error::Internal(format!("lambda_L pairs to {c} with simple coroot {p}")));
        }
    }
    let order = datum.classical_weyl_order();
    let orbit = datum.weyl_orbit(&v, DEFAULT_WEYL_CAP)?.len() as u64;
    if order / orbit != levi.classical_weyl_order() || !order.is_multiple_of(orbit) {
        return Err(Error::Internal(format!(
            "stabilizer of lambda_L has order {} but W_L has order {}",
            order / orbit,
            levi.classical_weyl_order()
        )));
    }
    Ok(v)
}

/// Coefficients `n_alpha` of `lambda_L - w lambda_L` in the simple roots.
/// When `w` moves `lambda_L` they are nonnegative with some `n_alpha > 0`
/// off `theta`; this is checked.
pub fn lambdashift_decomposition(datum: &RootDatum, theta: &[usize], word: &[usize]) -> Result<Vec<Q>> {
    let lam = levi_lambda(datum, theta)?;
    let n = datum.simple_indices().len();
    if let Some(bad) = word.iter().find(|&&p| p >= n) {
        return Err(Error::contract(format!("word letter {bad} out of range")));
    }
    let moved = datum.apply_word(word, &lam);
    let diff = lam.sub(&moved);
    let coeffs = datum
        .simple_coefficients(&diff)
        .ok_or_else(|| Error::Internal("lambda_L - w lambda_L is not in the root span".into()))?;
    if !diff.is_zero() {
        let nonneg = coeffs.iter().all(|c| !c.is_negative());
        let off_theta = coeffs.iter().enumerate().any(|(p, c)| c.is_positive() && !theta.contains(&p));
        if !(nonneg && off_theta) {
            return Err(Error::Internal(format!("sign conditions fail for word {word:?}")));
        }
    }
    Ok(coeffs)
}

fn nonzero(v: &Scalar, bound: f64) -> bool {
    match v {
        Scalar::Exact(z) => !z.is_zero(),
        Scalar::Float(z) => z.norm() > FLOAT_TOL * bound.max(1.0),
    }
}

/// Smallest `0 <= k <= k_max` with `mu + k lambda_L` dominant and
/// `chi_{mu + k lambda_L}(x) != 0`.
pub fn shift_to_nonvanishing(
    datum: &RootDatum,
    theta: &[usize],
    mu: &LatticeVector,
    x: &TorusPoint,
    k_max: usize,
) -> Result<usize> {
    let lam = levi_lambda(datum, theta)?;
    for &p in theta {
        let c = datum.pairing(datum.simple_indices()[p], mu);
        if c.is_negative() || !c.is_integer() {
            return Err(Error::contract(format!("{mu} is not dominant for the Levi")));
        }
    }
    for k in 0..=k_max {
        let shifted = mu.add(&lam.scaled(k as i64));
        if !datum.is_dominant(&shifted) {
            continue;
        }
        let table = weight_multiplicities(datum, &shifted)?;
        let v = table.evaluate(x);
        if nonzero(&v, table.abs_bound(x)) {
            return Ok(k);
        }
    }
    Err(Error::Exhaustion(format!(
        "no shift of {mu} by at most {k_max} lambda_L is nonvanishing at {x}"
    )))
}
