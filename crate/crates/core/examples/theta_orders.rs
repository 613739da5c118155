//! Builds t-norms from linear orders and checks that orders agreeing on an
//! initial segment give uniformly close t-norms.

use tnorm_iso::reduce_from_lo::{agreement_ball_check, build_intervals, LinearOrder, NamedOrder};

fn main() {
    for order in NamedOrder::ALL {
        let order = LinearOrder::Named(order);
        print!("{order}\n{}", build_intervals(&order, 4).unwrap());
    }

    let omega = LinearOrder::Named(NamedOrder::Omega);
    let finite: LinearOrder = "finite:0,1,3,2".parse().unwrap();
    for n in 1..=3 {
        let ball = agreement_ball_check(&omega, &finite, n, 33).unwrap();
        println!(
            "N={n}: sup distance {} <= {}: {}",
            ball.distance,
            ball.bound,
            ball.within()
        );
    }
}
