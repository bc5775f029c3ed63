//! Intersection counts of Hecke spheres with `L(Q_p) K` for the diagonal,
//! torus and full configurations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supnorm::buildings::{buildingcount_check, ConfigKind, IntersectionConfig};

fn main() -> Result<(), supnorm::error::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for kind in ConfigKind::ALL {
        for mu in [[1, 0], [2, 0], [2, 1], [3, 0]] {
            let config = IntersectionConfig::new(kind, 3)?.with_random_twist(&mut rng)?;
            let full: Vec<i64> = match kind.factors() {
                2 => vec![mu[0], mu[1], 0, 0],
                _ => mu.to_vec(),
            };
            let r = buildingcount_check(&config, &full)?;
            let ratio = r.ratio.map_or("-".to_string(), |x| x.to_string());
            println!("{kind:<10} mu = {full:?}: count {:<3} bound {:<3} ratio {ratio}", r.count, r.bound);
        }
    }
    Ok(())
}
