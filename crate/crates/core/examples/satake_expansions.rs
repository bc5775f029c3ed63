//! Satake transforms of `omega_mu` for `GL_2` and `GL_3`, with the
//! brute-force coset count at a small prime beside each.

use supnorm::rational::big_from_int;
use supnorm::satake::{satake_bruteforce, satake_omega};

fn main() -> Result<(), supnorm::error::Error> {
    let p = 3u64;
    for mu in [vec![1, 0], vec![2, 0], vec![3, 0], vec![2, 1, 0], vec![2, 0, 0]] {
        let t = satake_omega(mu.len(), &mu)?;
        println!("S omega_{mu:?}:");
        for (lam, c) in t.terms() {
            println!("  {c}  chi_{lam:?}");
        }
        let brute = satake_bruteforce(mu.len(), &mu, p)?;
        let agree = t.specialize(&big_from_int(p as i64))? == brute.transform;
        println!("  at p = {p}: sphere size {}, oracle agrees: {agree}", brute.sphere_size);
    }
    Ok(())
}
