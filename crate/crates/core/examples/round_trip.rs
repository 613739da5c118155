//! Recovers each named order from the structure of its t-norm.

use tnorm_iso::reduce_from_lo::{round_trip, LinearOrder, NamedOrder};

fn main() {
    for order in NamedOrder::ALL {
        let r = round_trip(&LinearOrder::Named(order), 8).unwrap();
        print!("{}\n{r}", order.tag());
    }
}
