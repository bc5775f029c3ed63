//! Pick the amplifier term at a few Satake parameters and split the simple
//! roots by the threshold table.

use supnorm::charring::TorusPoint;
use supnorm::rational::big_from_int;
use supnorm::satake::{levi_threshold_partition, AmplifierBank, ThresholdTable};

fn main() -> Result<(), supnorm::error::Error> {
    let bank = AmplifierBank::new(3, &big_from_int(101), 3)?;
    let table = ThresholdTable::uniform(2, 10.0);
    for x in ["1,1,1", "1,-1,1", "i,1,-i", "100,1,1/100", "0.6+0.8i,1,-1"] {
        let point = TorusPoint::parse(x)?;
        let choice = bank.select(&point)?;
        let theta = levi_threshold_partition(3, &point, &table)?;
        println!(
            "x = {:<28} mu = {:<12} |S omega_mu(x)| = {:<10.4} theta = {theta:?}",
            point.to_string(),
            format!("{:?}", choice.mu),
            choice.abs
        );
    }
    Ok(())
}
