//! Certify K-smallness for every instance of the verification table.

use std::time::Instant;

use supnorm::ksmall::{build_embedding, table_instances, verify_ksmall, KSmallReport};

fn main() -> Result<(), supnorm::error::Error> {
    for (family, size) in table_instances() {
        let start = Instant::now();
        let e = build_embedding(family, size)?;
        let c = verify_ksmall(&e)?;
        let r = KSmallReport::new(&e, &c);
        println!(
            "{:<28} kappa2_lower={:<5} kappa2_lattice={} witness={:?} lps={} {} ({:.2?})",
            r.label,
            r.kappa2_lower,
            r.kappa2_lattice,
            r.witness,
            r.lp_count,
            r.verdict,
            start.elapsed()
        );
    }
    Ok(())
}
