//! Cantor systems, the order of their removed intervals, and the t-norms
//! built on them.

use tnorm_iso::cantor::{
    analyze_gap_order, build_tnorm_a, expand, has_property_e, CantorRule, CantorSystem,
};
use tnorm_iso::iso::decide_iso_lazy;

fn main() {
    for rule in CantorRule::ALL {
        let system = CantorSystem::new(rule);
        print!("{}\n{}", rule.spec(), expand(&system, 2).unwrap().gaps);
        println!("property_e={}", has_property_e(&system, 8).unwrap());
        print!("{}", analyze_gap_order(&system, 8).unwrap());
    }

    let depth = 8;
    let t = |rule| build_tnorm_a(CantorSystem::new(rule), depth);
    let mid = t(CantorRule::MiddleThird);
    println!(
        "middle-third vs svc: {}",
        decide_iso_lazy(&mid, &t(CantorRule::Svc), depth).headline()
    );
    println!(
        "middle-third vs non-e: {}",
        decide_iso_lazy(&mid, &t(CantorRule::NonE), depth).headline()
    );
}
