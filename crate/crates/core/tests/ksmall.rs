use std::sync::OnceLock;

use proptest::prelude::*;
use supnorm::ksmall::{
    build_embedding, min_lattice_defect, table_instances, verify_ksmall, CocharEmbedding, EmbeddingFamily,
};
use supnorm::rational::{qvec, Q};
use supnorm::rootdata::LatticeVector;

/// Doubled norm as a max over the whole orbit, with no dominance logic.
fn orbit_norm(d: &supnorm::rootdata::RootDatum, mu: &LatticeVector) -> Q {
    let two_rho = qvec(d.two_rho());
    d.weyl_orbit(mu, 1_000_000)
        .unwrap()
        .iter()
        .map(|v| v.coords.iter().zip(&two_rho).map(|(a, b)| a * b).sum::<Q>())
        .max()
        .unwrap()
}

fn oracle_defect(e: &CocharEmbedding, mu: &[i64]) -> i64 {
    let g = orbit_norm(e.g_datum(), &e.apply(&qvec(mu)));
    let k = orbit_norm(e.k_datum(), &LatticeVector::coweight(mu));
    (g - k * 2).to_integer()
}

fn all_instances() -> &'static [CocharEmbedding] {
    static ALL: OnceLock<Vec<CocharEmbedding>> = OnceLock::new();
    ALL.get_or_init(|| {
        EmbeddingFamily::ALL
            .into_iter()
            .flat_map(|f| f.size_range().map(move |k| (f, k)))
            .map(|(f, k)| build_embedding(f, k).unwrap())
            .collect()
    })
}

fn decreasing_abs(v: &[i64]) -> Vec<i64> {
    let mut a: Vec<i64> = v.iter().map(|x| x.abs()).collect();
    a.sort_unstable_by(|x, y| y.cmp(x));
    a
}

#[test]
fn defect_matches_orbit_enumeration() {
    for e in all_instances() {
        if e.g_datum().classical_weyl_order() > 5040 {
            continue;
        }
        let dim = e.k_dim();
        for n in 0..(3i64.pow(dim as u32)) {
            let mu: Vec<i64> = (0..dim).map(|i| (n / 3i64.pow(i as u32)) % 3 - 1).collect();
            assert_eq!(e.defect2(&mu), oracle_defect(e, &mu), "{} at {mu:?}", e.label());
        }
    }
}

#[test]
fn so_sl_closed_form() {
    for k in 1..=4 {
        let e = build_embedding(EmbeddingFamily::SoSl, k).unwrap();
        for mu in [vec![3, 2, 2, 0], vec![1, 1, 1, 1], vec![5, 3, 1, 0], vec![2, 0, 0, 0]] {
            let mu = &mu[..k];
            assert_eq!(e.defect2(mu), 2 * mu.iter().sum::<i64>(), "k={k} {mu:?}");
        }
    }
    for k in 1..=3 {
        let e = build_embedding(EmbeddingFamily::SoSlOdd, k).unwrap();
        for mu in [vec![3, 2, 2], vec![1, 1, 0], vec![4, 1, 1]] {
            let mu = &mu[..k];
            assert_eq!(e.defect2(mu), 2 * mu.iter().sum::<i64>(), "k={k} {mu:?}");
        }
    }
}

#[test]
fn so_odd_odd_bound() {
    for k in 1..=2 {
        let e = build_embedding(EmbeddingFamily::SoSoOdd, k).unwrap();
        let dim = 2 * k;
        for n in 0..(7i64.pow(dim as u32)) {
            let mu: Vec<i64> = (0..dim).map(|i| (n / 7i64.pow(i as u32)) % 7 - 3).collect();
            let z = decreasing_abs(&mu);
            let bound: i64 = z.iter().step_by(2).map(|x| 2 * x).sum();
            assert!(e.defect2(&mu) >= bound, "{mu:?}");
        }
    }
}

#[test]
fn sp_bound() {
    for n in 2..=3 {
        let e = build_embedding(EmbeddingFamily::GlSp, n).unwrap();
        for m in 0..(7i64.pow(n as u32)) {
            let mu: Vec<i64> = (0..n).map(|i| (m / 7i64.pow(i as u32)) % 7 - 3).collect();
            let y = decreasing_abs(&mu);
            let bound: i64 = y.iter().step_by(2).map(|x| 2 * x).sum();
            assert!(e.defect2(&mu) >= bound, "{mu:?}");
        }
    }
}

#[test]
fn g2_chamber_bounds() {
    let e = build_embedding(EmbeddingFamily::Su2G2, 1).unwrap();
    for x1 in 0..=6i64 {
        for x2 in 0..=6i64 {
            let n = e.g_datum().star_norm2(&LatticeVector::coweight(&[x1, x2]));
            let b1 = Q::from(6 * x1 + 2 * x2);
            let b2 = Q::from(4 * x1 + 8 * x2);
            assert!(n >= b1.max(b2));
            assert!(n >= Q::from(5 * x1 + 5 * x2));
        }
    }
}

#[test]
fn g2_half_integral_cocharacters_do_not_lower_the_minimum() {
    // the full cocharacter lattice also contains (x, y) with x, y in 1/2 + Z
    let e = build_embedding(EmbeddingFamily::Su2G2, 1).unwrap();
    for a in -7..=7i64 {
        for b in -7..=7i64 {
            if (a + b) % 2 != 0 || (a % 2 == 0) {
                continue;
            }
            let mu = [Q::new(a, 2), Q::new(b, 2)];
            assert!(e.defect2_rational(&mu) >= Q::from(2));
        }
    }
}

#[test]
fn certificate_examples() {
    let e = build_embedding(EmbeddingFamily::SoSl, 2).unwrap();
    assert_eq!(min_lattice_defect(&e, 2).unwrap(), (2, vec![1, 0]));
    let sp = build_embedding(EmbeddingFamily::GlSp, 2).unwrap();
    assert_eq!(min_lattice_defect(&sp, 2).unwrap(), (2, vec![1, 0]));
    for e in all_instances() {
        // radius one contains every sign vector; the scan agrees pointwise
        let (m, w) = min_lattice_defect(e, 1).unwrap();
        assert_eq!(m, e.defect2(&w));
        let ones = vec![1; e.k_dim()];
        assert!(m <= e.defect2(&ones));
    }
}

#[test]
fn certificates_are_sound_on_the_radius_three_box() {
    for (f, k) in table_instances() {
        let e = build_embedding(f, k).unwrap();
        let c = verify_ksmall(&e).unwrap();
        assert!(c.positive(), "{}", e.label());
        assert!(Q::from(c.kappa2_lattice) >= c.kappa2_lower);
        assert_eq!(e.defect2_rational(&c.argmin), c.kappa2_lower);
        let dim = e.k_dim();
        for n in 0..(7i64.pow(dim as u32)) {
            let mu: Vec<i64> = (0..dim).map(|i| (n / 7i64.pow(i as u32)) % 7 - 3).collect();
            if mu.iter().all(|&x| x == 0) {
                continue;
            }
            assert!(Q::from(e.defect2(&mu)) >= c.kappa2_lower, "{} at {mu:?}", e.label());
        }
    }
}

fn instance_and_point() -> impl Strategy<Value = (usize, Vec<i64>)> {
    let n = all_instances().len();
    (0..n).prop_flat_map(|i| {
        let dim = all_instances()[i].k_dim();
        (Just(i), proptest::collection::vec(-6i64..=6, dim))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn defect_is_weyl_k_invariant((i, mu) in instance_and_point()) {
        let e = &all_instances()[i];
        let d = e.defect2(&mu);
        let kd = e.k_datum();
        for p in 0..kd.simple_indices().len() {
            let img = kd.simple_reflection(p, &LatticeVector::coweight(&mu));
            prop_assert_eq!(e.defect2_rational(&img.coords), Q::from(d));
        }
    }

    #[test]
    fn defect_is_homogeneous((i, mu) in instance_and_point(), s in 1i64..4) {
        let e = &all_instances()[i];
        let scaled: Vec<i64> = mu.iter().map(|x| x * s).collect();
        prop_assert_eq!(e.defect2(&scaled), s * e.defect2(&mu));
    }
}
