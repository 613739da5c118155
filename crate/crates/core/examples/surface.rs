//! Exports x * y over a lattice as comma-separated values, through the same
//! entry point as the `tnorm` binary.

fn main() {
    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/data/mplm-a.tnorm");
    let outcome = tnorm_iso::cli::run(["tnorm", "surface", file, "5"]);
    print!("{}", outcome.stdout);
}
