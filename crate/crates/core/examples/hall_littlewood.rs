//! Kostka-Foulkes polynomials from the charge statistic.

use supnorm::satake::{kostka_foulkes, partitions};

fn show(poly: &[i64]) -> String {
    let terms: Vec<String> = poly
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".into(),
            (1, c) => format!("{c}t"),
            (k, 1) => format!("t^{k}"),
            (k, c) => format!("{c}t^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn main() -> Result<(), supnorm::error::Error> {
    let parts = partitions(4, 4);
    print!("{:<14}", "");
    for mu in &parts {
        print!("{:<16}", format!("{mu:?}"));
    }
    println!();
    for lam in &parts {
        print!("{:<14}", format!("{lam:?}"));
        for mu in &parts {
            print!("{:<16}", show(&kostka_foulkes(lam, mu)?));
        }
        println!();
    }
    Ok(())
}
