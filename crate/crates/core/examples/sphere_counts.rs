//! Delta profiles and sphere-size polynomials, checked against Hermite
//! normal form enumeration.

use supnorm::buildings::{delta_profile, sphere_size_polynomial};
use supnorm::padic::{sphere_size, DEFAULT_ENUMERATION_CAP};
use supnorm::rootdata::{build_root_datum, Family, LatticeVector};

fn main() -> Result<(), supnorm::error::Error> {
    let gl3 = build_root_datum(Family::A, 2)?;
    for mu in [[1, 0, 0], [1, 1, 0], [2, 1, 0], [3, 0, 0], [3, 1, 0]] {
        let lv = LatticeVector::coweight(&mu);
        let profile = delta_profile(&gl3, &lv)?;
        let poly = sphere_size_polynomial(&gl3, &lv)?;
        let counts: Vec<String> = [2u64, 3]
            .iter()
            .map(|&p| Ok(format!("{}={}", poly.eval(p), sphere_size(&mu, p, DEFAULT_ENUMERATION_CAP)?)))
            .collect::<Result<_, supnorm::error::Error>>()?;
        println!("{mu:?}: delta {:?}  |F| = {poly}  (p=2,3: {})", profile.values, counts.join(", "));
    }
    let g2 = build_root_datum(Family::G2, 2)?;
    let (mu, _) = g2.dominant_rep(&LatticeVector::coweight(&[1, 1]));
    println!("G2 {mu}: |F| = {}", sphere_size_polynomial(&g2, &mu)?);
    Ok(())
}
