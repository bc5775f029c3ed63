//! Weight multiplicities, character values and the nonvanishing search.

use supnorm::charring::{char_value, nonvanishing_search, weight_multiplicities, TorusPoint};
use supnorm::rootdata::{build_root_datum, Family, LatticeVector};

fn main() -> Result<(), supnorm::error::Error> {
    let gl3 = build_root_datum(Family::A, 2)?;
    let adjoint = LatticeVector::weight(&[1, 0, -1]);
    let table = weight_multiplicities(&gl3, &adjoint)?;
    println!("dim V(1,0,-1) = {}", table.dimension());
    for (nu, m) in &table.multiplicities {
        println!("  {nu:?}: {m}");
    }

    let x = TorusPoint::parse("i,-i,1")?;
    println!("chi(1,0,-1) at {x} = {}", char_value(&gl3, &adjoint, &x)?);

    // the standard character vanishes here, a larger one does not
    let hit = nonvanishing_search(&gl3, &x, 4)?;
    println!("best weight at {x}: {} with |chi| = {:.4}", hit.mu, hit.abs);
    Ok(())
}
