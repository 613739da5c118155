//! Two lazily generated t-norms whose pieces accumulate at opposite ends.

use std::sync::Arc;

use tnorm_iso::iso::decide_iso_lazy;
use tnorm_iso::signature::compute_signature;
use tnorm_iso::tnorm::{LimitLeft, LimitRight};
use tnorm_iso::{TNorm, UnitRational};

fn main() {
    let left = TNorm::lazy(Arc::new(LimitLeft), 8);
    let right = TNorm::lazy(Arc::new(LimitRight), 8);
    print!("limit-left\n{}", compute_signature(&left, 4));
    print!("limit-right\n{}", compute_signature(&right, 4));

    let x = UnitRational::ratio(3, 5);
    let y = UnitRational::ratio(5, 8);
    println!("limit-left 3/5 * 5/8 = {}", left.eval(&x, &y).unwrap());

    for depth in [4, 8, 16] {
        let l = TNorm::lazy(Arc::new(LimitLeft), depth);
        let r = TNorm::lazy(Arc::new(LimitRight), depth);
        println!(
            "depth {depth:>2}: {}",
            decide_iso_lazy(&l, &r, depth).headline()
        );
    }
}
