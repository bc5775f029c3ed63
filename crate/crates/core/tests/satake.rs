use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supnorm::charring::{weight_multiplicities, TorusPoint};
use supnorm::error::Error;
use supnorm::rational::big_from_int;
use supnorm::rootdata::{build_root_datum, Family, LatticeVector};
use supnorm::satake::{
    amplifier_select, convolve_bruteforce, dominates, kostka_foulkes, levi_threshold_partition, partitions,
    satake_bruteforce, satake_omega, AmplifierBank, HeckeElement, LaurentHalfQ, ThresholdTable, VirtualCharacter,
};

fn b(x: i64) -> BigRational {
    big_from_int(x)
}

const GL2_SET: [[i64; 2]; 5] = [[1, 0], [1, 1], [2, 0], [2, 1], [3, 0]];
const GL3_SET: [[i64; 3]; 3] = [[1, 0, 0], [1, 1, 0], [2, 0, 0]];

#[test]
fn kostka_foulkes_table_values() {
    let t = |v: &[i64]| v.to_vec();
    assert_eq!(kostka_foulkes(&[2, 0], &[1, 1]).unwrap(), t(&[0, 1]));
    assert_eq!(kostka_foulkes(&[1, 1], &[2, 0]).unwrap(), t(&[]));
    assert_eq!(kostka_foulkes(&[3, 1, 0], &[3, 1, 0]).unwrap(), t(&[1]));
    // n = 4 column of the classical table
    assert_eq!(kostka_foulkes(&[2, 2, 0, 0], &[2, 1, 1, 0]).unwrap(), t(&[0, 1]));
    assert_eq!(kostka_foulkes(&[3, 1, 0, 0], &[2, 1, 1, 0]).unwrap(), t(&[0, 1, 1]));
    assert_eq!(kostka_foulkes(&[4, 0, 0, 0], &[2, 1, 1, 0]).unwrap(), t(&[0, 0, 0, 1]));
    assert_eq!(kostka_foulkes(&[2, 2, 0, 0], &[1, 1, 1, 1]).unwrap(), t(&[0, 0, 1, 0, 1]));
    assert_eq!(kostka_foulkes(&[3, 1, 0, 0], &[1, 1, 1, 1]).unwrap(), t(&[0, 0, 0, 1, 1, 1]));
    assert_eq!(kostka_foulkes(&[2, 1, 1, 0], &[1, 1, 1, 1]).unwrap(), t(&[0, 1, 1, 1]));
    assert_eq!(kostka_foulkes(&[4, 0, 0, 0], &[1, 1, 1, 1]).unwrap(), t(&[0, 0, 0, 0, 0, 0, 1]));
    assert_eq!(kostka_foulkes(&[3, 1, 0, 0], &[2, 2, 0, 0]).unwrap(), t(&[0, 1]));
    assert_eq!(kostka_foulkes(&[4, 0, 0, 0], &[2, 2, 0, 0]).unwrap(), t(&[0, 0, 1]));
}

/// At `t = 1` Kostka-Foulkes polynomials are weight multiplicities, which
/// come from Freudenthal's recursion in an unrelated code path.
#[test]
fn kostka_foulkes_at_one_are_weight_multiplicities() {
    for n in 2..=4usize {
        let datum = build_root_datum(Family::A, n - 1).unwrap();
        for size in 0..=6 {
            let parts = partitions(size, n);
            for lam in &parts {
                let table = weight_multiplicities(&datum, &LatticeVector::weight(lam)).unwrap();
                for mu in &parts {
                    let k: i64 = kostka_foulkes(lam, mu).unwrap().iter().sum();
                    assert_eq!(k as u64, table.multiplicity(mu), "K_{lam:?},{mu:?}(1)");
                    if lam == mu {
                        assert_eq!(kostka_foulkes(lam, mu).unwrap(), vec![1]);
                    }
                }
            }
        }
    }
}

#[test]
fn satake_table_examples() {
    assert_eq!(satake_omega(2, &[1, 0]).unwrap(), VirtualCharacter::character(&[1, 0]).unwrap());
    assert_eq!(satake_omega(2, &[1, 1]).unwrap(), VirtualCharacter::character(&[1, 1]).unwrap());
    let t = satake_omega(2, &[2, 0]).unwrap();
    assert_eq!(t.coefficient(&[2, 0]), LaurentHalfQ::from_int(1));
    let c = t.coefficient(&[1, 1]);
    assert_eq!(c, LaurentHalfQ::from_t_poly(&[0, -1]));
    assert_eq!(t.terms().count(), 2);
    // c q is a constant of absolute value at most 1
    assert!(c.shift(2).eval(&b(7)).unwrap().abs() <= b(1));
    let t = satake_omega(3, &[2, 1, 0]).unwrap();
    assert_eq!(t.coefficient(&[1, 1, 1]), LaurentHalfQ::from_t_poly(&[0, -1, -1]));
}

fn check_oracle(mu: &[i64], p: u64) {
    let table = satake_omega(mu.len(), mu).unwrap().specialize(&b(p as i64)).unwrap();
    let brute = satake_bruteforce(mu.len(), mu, p).unwrap();
    assert_eq!(table, brute.transform, "mu = {mu:?}, p = {p}");
}

#[test]
fn oracle_equivalence_gl2() {
    for mu in GL2_SET {
        for p in [2, 3, 5] {
            check_oracle(&mu, p);
        }
    }
}

#[test]
fn oracle_equivalence_gl3() {
    for mu in GL3_SET {
        for p in [2, 3] {
            check_oracle(&mu, p);
        }
    }
    check_oracle(&[1, 0, 0], 5);
}

#[test]
fn bruteforce_examples() {
    let r = satake_bruteforce(2, &[1, 0], 3).unwrap();
    assert_eq!(r.sphere_size, 4);
    assert_eq!(r.transform, VirtualCharacter::character(&[1, 0]).unwrap());
    let r = satake_bruteforce(2, &[0, 0], 3).unwrap();
    assert_eq!(r.sphere_size, 1);
    assert_eq!(r.transform, VirtualCharacter::character(&[0, 0]).unwrap());
    assert_eq!(satake_bruteforce(3, &[1, 0, 0], 2).unwrap().sphere_size, 7);
    for p in [2, 3, 5] {
        let r = satake_bruteforce(2, &[1, 0], p).unwrap();
        assert_eq!(r.transform, VirtualCharacter::character(&[1, 0]).unwrap());
    }
    assert!(matches!(satake_bruteforce(4, &[1, 0, 0, 0], 2), Err(Error::Capability(_))));
    assert!(matches!(satake_bruteforce(2, &[4, 0], 2), Err(Error::Capability(_))));
    assert!(matches!(satake_bruteforce(2, &[1, 0], 4), Err(Error::Capability(_))));
}

fn dominant_box(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
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

/// Leading coefficient 1, support below `mu` and `|q C| <= 2` at the
/// criterion's `q` values.
#[test]
fn expansion_structure() {
    let qs = [2, 3, 5, 101].map(b);
    let mut instances: Vec<Vec<i64>> = GL2_SET.iter().map(|m| m.to_vec()).collect();
    instances.extend(GL3_SET.iter().map(|m| m.to_vec()));
    instances.extend(dominant_box(2, -2, 2));
    instances.extend(dominant_box(3, 0, 2));
    for mu in instances {
        let t = satake_omega(mu.len(), &mu).unwrap();
        assert_eq!(t.coefficient(&mu), LaurentHalfQ::from_int(1));
        for (lam, c) in t.terms().filter(|(l, _)| **l != mu) {
            assert!(dominates(&mu, lam) && lam != &mu, "{lam:?} is not below {mu:?}");
            let qc = c.shift(2);
            assert!(qc.max_half_exp().unwrap() <= 0, "q C is not a polynomial in 1/q for {mu:?}");
            for q in &qs {
                assert!(qc.eval(q).unwrap().abs() <= b(2), "|q C({lam:?}, {mu:?}, {q})| > 2");
            }
        }
    }
}

#[test]
fn hecke_convolution_is_multiplicative() {
    for p in [2u64, 3] {
        let prod = convolve_bruteforce(&[1, 0], &[1, 0], p).unwrap();
        let mut expected = HeckeElement::omega(&[2, 0]).unwrap();
        expected
            .add_term(&[1, 1], LaurentHalfQ::constant(b(1) + BigRational::new(1.into(), (p as i64).into())))
            .unwrap();
        assert_eq!(prod, expected);
        let omega = satake_omega(2, &[1, 0]).unwrap();
        let lhs = prod.satake().unwrap().specialize(&b(p as i64)).unwrap();
        let rhs = omega.product(&omega).unwrap().specialize(&b(p as i64)).unwrap();
        assert_eq!(lhs, rhs);
    }
    let prod = convolve_bruteforce(&[1, 0, 0], &[1, 1, 0], 2).unwrap();
    let lhs = prod.satake().unwrap().specialize(&b(2)).unwrap();
    let rhs = satake_omega(3, &[1, 0, 0])
        .unwrap()
        .product(&satake_omega(3, &[1, 1, 0]).unwrap())
        .unwrap()
        .specialize(&b(2))
        .unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn amplifier_examples() {
    let q = b(101);
    let one = TorusPoint::parse("1,1").unwrap();
    let hit = amplifier_select(2, &one, &q, 2).unwrap();
    // the largest transform at the identity, not the first fundamental weight
    assert_eq!(hit.mu, vec![2, -2]);
    assert_eq!(satake_omega(2, &[1, 0]).unwrap().evaluate(&one, &q).unwrap().to_string(), "2");

    let x = TorusPoint::parse("1,-1").unwrap();
    let hit = amplifier_select(2, &x, &q, 2).unwrap();
    assert_eq!(hit.mu, vec![2, 0]);
    assert_eq!(hit.value.to_string(), "102/101");
    assert_eq!(satake_omega(2, &[1, 0]).unwrap().evaluate(&x, &q).unwrap().to_string(), "0");
}

#[test]
fn amplifier_converges_as_q_grows() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let banks: Vec<AmplifierBank> = [1_000i64, 1_000_000]
        .iter()
        .map(|&q| AmplifierBank::new(2, &b(q), 2).unwrap())
        .collect();
    for _ in 0..50 {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let x = TorusPoint::float(vec![
            num_complex::Complex64::from_polar(1.0, theta),
            num_complex::Complex64::from_polar(1.0, -theta),
        ])
        .unwrap();
        let limit = banks[1].select(&x).unwrap().abs;
        let coarse = banks[0].select(&x).unwrap().abs;
        assert!((coarse - limit).abs() < 10.0 / 1_000.0, "{coarse} vs {limit}");
    }
}

#[test]
fn threshold_partition_examples() {
    let table = ThresholdTable::uniform(2, 10.0);
    let big = TorusPoint::parse("10000,100,1").unwrap();
    assert_eq!(levi_threshold_partition(3, &big, &table).unwrap(), Vec::<usize>::new());
    let flat = TorusPoint::parse("1,1,1").unwrap();
    assert_eq!(levi_threshold_partition(3, &flat, &table).unwrap(), vec![0, 1]);
    let mixed = TorusPoint::parse("1000,1000,1").unwrap();
    assert_eq!(levi_threshold_partition(3, &mixed, &table).unwrap(), vec![0]);
    assert!(ThresholdTable::new(1, vec![1.0, 0.5], vec![2.0, 2.0]).is_err());
}

fn laurent_strategy() -> impl Strategy<Value = LaurentHalfQ> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(e, c)| LaurentHalfQ::monomial(big_from_int(c), 2 * e))
            .fold(LaurentHalfQ::zero(), |a, t| a + t)
    })
}

proptest! {
    #[test]
    fn laurent_evaluation_is_a_ring_map(a in laurent_strategy(), c in laurent_strategy(), q in 1i64..20) {
        let q = b(q);
        prop_assert_eq!((&a * &c).eval(&q).unwrap(), a.eval(&q).unwrap() * c.eval(&q).unwrap());
        prop_assert_eq!((a.clone() + c.clone()).eval(&q).unwrap(), a.eval(&q).unwrap() + c.eval(&q).unwrap());
    }

    #[test]
    fn character_products_commute(i in 0usize..6, j in 0usize..6) {
        let ws = dominant_box(2, -1, 1);
        let a = VirtualCharacter::character(&ws[i]).unwrap();
        let c = VirtualCharacter::character(&ws[j]).unwrap();
        let ab = a.product(&c).unwrap();
        prop_assert_eq!(&ab, &c.product(&a).unwrap());
        let one = TorusPoint::parse("1,1").unwrap();
        let dim = |v: &VirtualCharacter| v.evaluate(&one, &b(1)).unwrap().to_complex64().re.to_i64().unwrap();
        prop_assert_eq!(dim(&ab), dim(&a) * dim(&c));
    }
}
