//! Evaluates ordinal sums exactly and checks the t-norm axioms on a grid.

use tnorm_iso::corpus::{corpus_entry, grid};
use tnorm_iso::tnorm::check_axioms;
use tnorm_iso::UnitRational;

fn main() {
    let half = UnitRational::ratio(1, 2);
    for name in [
        "minimum",
        "product",
        "lukasiewicz",
        "middle-product",
        "mplm-a",
    ] {
        let t = corpus_entry(name).expect("corpus name");
        let report = check_axioms(&t, &grid(20));
        println!(
            "{name:>15}: 1/2 * 1/2 = {:<6} {}",
            t.eval(&half, &half),
            report.to_string().lines().next().unwrap()
        );
    }

    let t = corpus_entry("mplm-a").unwrap();
    let q = UnitRational::ratio(5, 8);
    let powers: Vec<String> = (1..=4).map(|l| t.power(&q, l).to_string()).collect();
    println!("powers of 5/8 in mplm-a: {}", powers.join(", "));
}
