use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::RootDatum;
use crate::error::{Error, Result};
use crate::rational::Q;

/// Family tags for [`build_root_datum`].
///
/// Classical families use the diagonal-torus coordinates of the split
/// groups: `A` is `GL_{n+1}`, `B` is `SO(n, n+1)`, `C` is `Sp_{2n}` and `D`
/// is `SO(n, n)`. `G2` is the realization in the torus of
/// `SU(2) x SU(2)`, `Sl2` is `A1` in one simply connected coordinate and
/// `Torus` has no roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    Sl2,
    Torus,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G2",
            Family::Sl2 => "SL2",
            Family::Torus => "T",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G2" | "G2-IN-SU2XSU2" => Ok(Family::G2),
            "SL2" | "A1-SC" => Ok(Family::Sl2),
            "T" | "TORUS" => Ok(Family::Torus),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn unit(dim: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Build one of the supported root data.
///
/// Desk ranges: `A` up to rank 8, `B`/`C`/`D` up to rank 5, `G2` only at
/// rank 2, `Sl2` only at rank 1, tori up to dimension 8.
pub fn build_root_datum(family: Family, rank: usize) -> Result<RootDatum> {
    let unsupported = || Error::Capability(format!("family {family} at rank {rank}"));
    let ok = match family {
        Family::A => (1..=8).contains(&rank),
        Family::B | Family::C | Family::D => (1..=5).contains(&rank),
        Family::G2 => rank == 2,
        Family::Sl2 => rank == 1,
        Family::Torus => (1..=8).contains(&rank),
    };
    if !ok {
        return Err(unsupported());
    }

    let (dim, roots, form, regular, order): (usize, Vec<Vec<i64>>, Vec<i64>, Vec<i64>, u64) =
        match family {
            Family::A => {
                let d = rank + 1;
                let mut roots = Vec::new();
                for i in 0..d {
                    for j in 0..d {
                        if i != j {
                            roots.push(add(&unit(d, i, 1), &unit(d, j, -1)));
                        }
                    }
                }
                let h = (0..d).map(|i| (d - i) as i64).collect();
                (d, roots, vec![1; d], h, factorial(d as u64))
            }
            Family::B | Family::C | Family::D => {
                let n = rank;
                let mut roots = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            roots.push(add(&unit(n, i, a), &unit(n, j, b)));
                        }
                    }
                    match family {
                        Family::B => {
                            roots.push(unit(n, i, 1));
                            roots.push(unit(n, i, -1));
                        }
                        Family::C => {
                            roots.push(unit(n, i, 2));
                            roots.push(unit(n, i, -2));
                        }
                        _ => {}
                    }
                }
                let h = (0..n).map(|i| (n - i) as i64).collect();
                let order = match family {
                    Family::D if n == 1 => 1,
                    Family::D => (1u64 << (n - 1)) * factorial(n as u64),
                    _ => (1u64 << n) * factorial(n as u64),
                };
                (n, roots, vec![1; n], h, order)
            }
            Family::G2 => {
                let mut roots = vec![vec![2, 0], vec![-2, 0], vec![0, 2], vec![0, -2]];
                for a in [1, -1] {
                    for b in [1, -1, 3, -3] {
                        roots.push(vec![a, b]);
                    }
                }
                // W-invariant form for this realization
                (2, roots, vec![3, 1], vec![10, 1], 12)
            }
            Family::Sl2 => (1, vec![vec![2], vec![-2]], vec![1], vec![1], 2),
            Family::Torus => (rank, Vec::new(), vec![1; rank], vec![0; rank], 1),
        };

    let entries = roots
        .into_iter()
        .map(|r| {
            let norm: i64 = r.iter().zip(&form).map(|(x, b)| x * x * b).sum();
            let coroot: Vec<Q> = r.iter().zip(&form).map(|(x, b)| Q::new(2 * x * b, norm)).collect();
            let h: i64 = r.iter().zip(&regular).map(|(x, y)| x * y).sum();
            debug_assert!(!Q::from(h).is_zero());
            (r, coroot, h > 0)
        })
        .collect();
    let label = match family {
        Family::G2 => "G2-in-SU2xSU2".to_string(),
        Family::Sl2 => "A1-sc".to_string(),
        _ => format!("{family}{rank}"),
    };
    let datum = RootDatum::assemble(label, rank, dim, entries, order);
    debug_assert!(datum.validate().is_ok());
    Ok(datum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_range_is_enforced() {
        assert!(matches!(build_root_datum(Family::A, 9), Err(Error::Capability(_))));
        assert!(matches!(build_root_datum(Family::B, 6), Err(Error::Capability(_))));
        assert!(matches!(build_root_datum(Family::G2, 3), Err(Error::Capability(_))));
        assert!(matches!(build_root_datum(Family::A, 0), Err(Error::Capability(_))));
    }

    #[test]
    fn every_family_validates() {
        for (f, max) in [
            (Family::A, 8),
            (Family::B, 5),
            (Family::C, 5),
            (Family::D, 5),
            (Family::G2, 2),
            (Family::Sl2, 1),
            (Family::Torus, 3),
        ] {
            let lo = match f {
                Family::G2 => 2,
                _ => 1,
            };
            for r in lo..=max {
                let d = build_root_datum(f, r).unwrap();
                d.validate().unwrap();
            }
        }
    }

    #[test]
    fn family_tags_parse() {
        assert_eq!("g2".parse::<Family>().unwrap(), Family::G2);
        assert_eq!("A".parse::<Family>().unwrap(), Family::A);
        assert!("E8".parse::<Family>().is_err());
    }
}
