//! Computes signatures and decides isomorphism, printing the interval map
//! that witnesses it.

use tnorm_iso::corpus::{corpus_entry, grid};
use tnorm_iso::iso::{build_iso_map, decide_iso_finite};
use tnorm_iso::signature::finite_signature;

fn main() {
    let a = corpus_entry("mplm-a").unwrap();
    let b = corpus_entry("mplm-b").unwrap();
    let c = corpus_entry("mlpm").unwrap();
    for (name, t) in [("mplm-a", &a), ("mplm-b", &b), ("mlpm", &c)] {
        print!("{name}\n{}", finite_signature(t));
    }

    let verdict = decide_iso_finite(&finite_signature(&a), &finite_signature(&b)).unwrap();
    print!("mplm-a vs mplm-b: {verdict}");
    let verdict = decide_iso_finite(&finite_signature(&a), &finite_signature(&c)).unwrap();
    print!("mplm-a vs mlpm: {verdict}");

    // The witness is a homomorphism: h(x * y) = h(x) * h(y).
    let h = build_iso_map(&a, &b).unwrap();
    let points = grid(8);
    let ok = points.iter().all(|x| {
        points.iter().all(|y| {
            h.apply(&a.eval(x, y)) == Some(b.eval(&h.apply(x).unwrap(), &h.apply(y).unwrap()))
        })
    });
    println!("witness is a homomorphism on the 9x9 grid: {ok}");
}
