//! The doubled defect on a box of cocharacters for `SO(k,k)` in `SL_2k`.

use supnorm::ksmall::{build_embedding, min_lattice_defect, EmbeddingFamily};

fn main() -> Result<(), supnorm::error::Error> {
    for k in 1..=4 {
        let e = build_embedding(EmbeddingFamily::SoSl, k)?;
        let (min, witness) = min_lattice_defect(&e, 3)?;
        let sample: Vec<i64> = (0..k as i64).map(|i| k as i64 - i).collect();
        println!(
            "{:<14} min defect2 = {min} at {witness:?}; defect2{sample:?} = {}",
            e.label(),
            e.defect2(&sample)
        );
    }
    Ok(())
}
