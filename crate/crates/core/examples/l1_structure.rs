//! The countable relational structure of a t-norm, computed directly and
//! through the idempotent and nilpotent element tests.

use tnorm_iso::corpus::corpus_entry;
use tnorm_iso::reduce_to_l1::{l1_iso_finite, theta, theta_via_lemma};
use tnorm_iso::TNorm;

fn main() {
    let a = corpus_entry("mplm-a").unwrap();
    let direct = theta(&TNorm::from(a.clone()), 16);
    let via_lemma = theta_via_lemma(&a, 16, 64, 32).unwrap();
    print!("{direct}");
    println!(
        "direct and element-test structures agree: {}",
        direct == via_lemma
    );

    let b = corpus_entry("mplm-b").unwrap();
    let c = corpus_entry("mlpm").unwrap();
    for n in [8, 16, 32] {
        let sa = theta(&TNorm::from(a.clone()), n);
        let sb = theta(&TNorm::from(b.clone()), n);
        let sc = theta(&TNorm::from(c.clone()), n);
        println!(
            "N={n:>2}: mplm-a ~ mplm-b {}, mplm-a ~ mlpm {}",
            l1_iso_finite(&sa, &sb).unwrap(),
            l1_iso_finite(&sa, &sc).unwrap()
        );
    }
}
