use std::fmt;

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{big_from_int, fmt_big, parse_q, to_big};

pub type GaussianRational = Complex<BigRational>;

/// Relative tolerance for floating comparisons.
pub const FLOAT_TOL: f64 = 1e-9;

/// A complex number, exact when it came from exact inputs.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(GaussianRational),
    Float(Complex64),
}

fn big_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl Scalar {
    pub fn to_complex64(&self) -> Complex64 {
        match self {
            Scalar::Exact(z) => Complex64::new(big_to_f64(&z.re), big_to_f64(&z.im)),
            Scalar::Float(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn abs(&self) -> f64 {
        self.to_complex64().norm()
    }

    /// `|z|^2`, exactly when possible.
    pub fn norm_sqr_exact(&self) -> Option<BigRational> {
        match self {
            Scalar::Exact(z) => Some(&z.re * &z.re + &z.im * &z.im),
            Scalar::Float(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(z) => {
                if z.im.is_zero() {
                    write!(f, "{}", fmt_big(&z.re))
                } else if z.re.is_zero() {
                    write!(f, "{}i", fmt_big(&z.im))
                } else {
                    let sign = if z.im.is_negative() { '-' } else { '+' };
                    write!(f, "{}{sign}{}i", fmt_big(&z.re), fmt_big(&z.im.abs()))
                }
            }
            Scalar::Float(z) => {
                let sign = if z.im < 0.0 { '-' } else { '+' };
                write!(f, "{}{sign}{}i", z.re, z.im.abs())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Coords {
    Exact(Vec<GaussianRational>),
    Float(Vec<Complex64>),
}

/// A point of the complex torus `T(C)`, one nonzero scalar per coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    coords: Coords,
}

fn cpow<T: Clone + num_traits::Num + std::ops::Neg<Output = T>>(z: &Complex<T>, e: i64) -> Complex<T> {
    let mut base = if e < 0 { z.inv() } else { z.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = Complex::new(T::one(), T::zero());
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        n >>= 1;
    }
    acc
}

impl TorusPoint {
    pub fn exact(coords: Vec<GaussianRational>) -> Result<Self> {
        if coords.iter().any(|z| z.is_zero()) {
            return Err(Error::contract("torus coordinates must be nonzero"));
        }
        Ok(TorusPoint {
            coords: Coords::Exact(coords),
        })
    }

    pub fn float(coords: Vec<Complex64>) -> Result<Self> {
        if coords.iter().any(|z| z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::contract("torus coordinates must be finite and nonzero"));
        }
        Ok(TorusPoint {
            coords: Coords::Float(coords),
        })
    }

    pub fn identity(dim: usize) -> Self {
        TorusPoint {
            coords: Coords::Exact(vec![GaussianRational::one(); dim]),
        }
    }

    /// Parse comma-separated literals such as `2`, `i`, `1/2-3i`, `0.5+0.1i`.
    /// The point is exact when every literal is rational.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<(Part, Part)> = s.split(',').map(parse_complex).collect::<Result<_>>()?;
        if parts.iter().all(|(a, b)| a.is_exact() && b.is_exact()) {
            let coords = parts.into_iter().map(|(a, b)| Complex::new(a.exact(), b.exact())).collect();
            TorusPoint::exact(coords)
        } else {
            let coords = parts.into_iter().map(|(a, b)| Complex64::new(a.float(), b.float())).collect();
            TorusPoint::float(coords)
        }
    }

    pub fn dim(&self) -> usize {
        match &self.coords {
            Coords::Exact(v) => v.len(),
            Coords::Float(v) => v.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coords, Coords::Exact(_))
    }

    pub fn to_float(&self) -> Vec<Complex64> {
        match &self.coords {
            Coords::Exact(v) => v.iter().map(|z| Scalar::Exact(z.clone()).to_complex64()).collect(),
            Coords::Float(v) => v.clone(),
        }
    }

    pub fn coord(&self, i: usize) -> Scalar {
        match &self.coords {
            Coords::Exact(v) => Scalar::Exact(v[i].clone()),
            Coords::Float(v) => Scalar::Float(v[i]),
        }
    }

    /// Coordinates reordered by `perm`: new coordinate `i` is old `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let coords = match &self.coords {
            Coords::Exact(v) => Coords::Exact(perm.iter().map(|&i| v[i].clone()).collect()),
            Coords::Float(v) => Coords::Float(perm.iter().map(|&i| v[i]).collect()),
        };
        TorusPoint { coords }
    }

    /// The character `x^nu`.
    pub fn monomial(&self, nu: &[i64]) -> Scalar {
        assert_eq!(nu.len(), self.dim());
        match &self.coords {
            Coords::Exact(v) => {
                let z = v
                    .iter()
                    .zip(nu)
                    .filter(|(_, &e)| e != 0)
                    .fold(GaussianRational::one(), |acc, (x, &e)| acc * cpow(x, e));
                Scalar::Exact(z)
            }
            Coords::Float(v) => {
                let z = v
                    .iter()
                    .zip(nu)
                    .filter(|(_, &e)| e != 0)
                    .fold(Complex64::new(1.0, 0.0), |acc, (x, &e)| acc * cpow(x, e));
                Scalar::Float(z)
            }
        }
    }

    /// `sum_i c_i x^{nu_i}` with integer coefficients.
    pub fn evaluate<'a>(&self, terms: impl Iterator<Item = (&'a Vec<i64>, u64)>) -> Scalar {
        match &self.coords {
            Coords::Exact(_) => {
                let mut acc = GaussianRational::zero();
                for (nu, m) in terms {
                    if let Scalar::Exact(z) = self.monomial(nu) {
                        acc += z * GaussianRational::from(big_from_int(m as i64));
                    }
                }
                Scalar::Exact(acc)
            }
            Coords::Float(_) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (nu, m) in terms {
                    acc += self.monomial(nu).to_complex64() * m as f64;
                }
                Scalar::Float(acc)
            }
        }
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.dim()).map(|i| self.coord(i).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

enum Part {
    Exact(BigRational),
    Float(f64),
}

impl Part {
    fn is_exact(&self) -> bool {
        matches!(self, Part::Exact(_))
    }

    fn exact(self) -> BigRational {
        match self {
            Part::Exact(x) => x,
            Part::Float(_) => unreachable!("checked by caller"),
        }
    }

    fn float(&self) -> f64 {
        match self {
            Part::Exact(x) => big_to_f64(x),
            Part::Float(x) => *x,
        }
    }
}

fn parse_real(s: &str) -> Result<Part> {
    if let Ok(q) = parse_q(s) {
        return Ok(Part::Exact(to_big(&q)));
    }
    s.parse::<f64>()
        .map(Part::Float)
        .map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

fn parse_complex(raw: &str) -> Result<(Part, Part)> {
    let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty torus coordinate".into()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok((parse_real(&s)?, Part::Exact(BigRational::zero())));
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im {
        "" | "+" => Part::Exact(BigRational::one()),
        "-" => Part::Exact(-BigRational::one()),
        other => parse_real(other.strip_prefix('+').unwrap_or(other))?,
    };
    let re = if re.is_empty() {
        Part::Exact(BigRational::zero())
    } else {
        parse_real(re)?
    };
    Ok((re, im))
}
