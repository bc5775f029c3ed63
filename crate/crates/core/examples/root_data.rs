//! Build the supported root data and print their basic invariants.

use supnorm::rootdata::{build_root_datum, Family, WeylGroup, DEFAULT_WEYL_CAP};

fn main() -> Result<(), supnorm::error::Error> {
    let cases = [
        (Family::A, 2),
        (Family::A, 4),
        (Family::B, 3),
        (Family::C, 3),
        (Family::D, 4),
        (Family::G2, 2),
    ];
    for (family, rank) in cases {
        let d = build_root_datum(family, rank)?;
        let w = WeylGroup::full(&d, DEFAULT_WEYL_CAP)?;
        println!(
            "{:<4} roots={:<3} |W|={:<5} 2rho={:?}",
            d.label(),
            d.roots().len(),
            w.order(),
            d.two_rho()
        );
    }
    let g2 = build_root_datum(Family::G2, 2)?;
    println!("{}", serde_json::to_string_pretty(&g2.to_json()).expect("serializable"));
    Ok(())
}
