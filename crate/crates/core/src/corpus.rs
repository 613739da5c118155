//! A fixed collection of finite ordinal sums used by tests and examples.

use crate::numerics::UnitRational;
use crate::tnorm::{FinitePresentation, Piece, PieceKind};

/// A piece as `((lo numerator, lo denominator), (hi numerator, hi denominator), kind)`.
pub type PieceSpec = ((u64, u64), (u64, u64), PieceKind);

type Spec = &'static [PieceSpec];

use PieceKind::{Lukasiewicz as L, Product as P};

const CORPUS: &[(&str, Spec)] = &[
    ("minimum", &[]),
    ("product", &[((0, 1), (1, 1), P)]),
    ("lukasiewicz", &[((0, 1), (1, 1), L)]),
    ("upper-half-product", &[((1, 2), (1, 1), P)]),
    ("mplm-a", &[((1, 4), (1, 2), P), ((1, 2), (3, 4), L)]),
    ("mplm-b", &[((1, 10), (1, 5), P), ((1, 5), (9, 10), L)]),
    ("mlpm", &[((1, 4), (1, 2), L), ((1, 2), (3, 4), P)]),
    ("middle-product", &[((1, 3), (2, 3), P)]),
    ("middle-lukasiewicz", &[((1, 3), (2, 3), L)]),
    ("lower-half-lukasiewicz", &[((0, 1), (1, 2), L)]),
    ("ends", &[((0, 1), (1, 3), P), ((2, 3), (1, 1), L)]),
    ("two-products", &[((1, 5), (2, 5), P), ((3, 5), (4, 5), P)]),
    (
        "two-lukasiewicz",
        &[((1, 5), (2, 5), L), ((3, 5), (4, 5), L)],
    ),
    (
        "quarters",
        &[
            ((0, 1), (1, 4), P),
            ((1, 4), (1, 2), P),
            ((1, 2), (3, 4), P),
            ((3, 4), (1, 1), P),
        ],
    ),
    ("halves", &[((0, 1), (1, 2), P), ((1, 2), (1, 1), L)]),
    ("sixths", &[((1, 6), (1, 3), L), ((1, 2), (5, 6), P)]),
    (
        "eighths",
        &[
            ((1, 8), (3, 8), P),
            ((3, 8), (5, 8), L),
            ((5, 8), (7, 8), P),
        ],
    ),
    ("sevenths", &[((2, 7), (3, 7), L)]),
    ("ninths", &[((1, 9), (4, 9), P), ((5, 9), (8, 9), L)]),
    (
        "fifths",
        &[
            ((0, 1), (1, 5), L),
            ((2, 5), (3, 5), P),
            ((4, 5), (1, 1), L),
        ],
    ),
    ("upper-half-lukasiewicz", &[((1, 2), (1, 1), L)]),
    ("lower-half-product", &[((0, 1), (1, 2), P)]),
];

/// Builds a presentation from piece specs.
///
/// Panics if a piece is empty or pieces overlap.
pub fn from_specs(specs: &[PieceSpec]) -> FinitePresentation {
    let pieces = specs
        .iter()
        .map(|&((a, b), (c, d), kind)| {
            Piece::new(UnitRational::ratio(a, b), UnitRational::ratio(c, d), kind)
                .expect("valid piece")
        })
        .collect();
    FinitePresentation::new(pieces).expect("disjoint pieces")
}

/// Named finite presentations, including the minimum, product and
/// Łukasiewicz t-norms.
pub fn finite_corpus() -> Vec<(&'static str, FinitePresentation)> {
    CORPUS
        .iter()
        .map(|&(name, spec)| (name, from_specs(spec)))
        .collect()
}

/// One corpus entry by name.
pub fn corpus_entry(name: &str) -> Option<FinitePresentation> {
    CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|&(_, spec)| from_specs(spec))
}

/// `{0, 1/k, 2/k, …, 1}`.
pub fn grid(k: u64) -> Vec<UnitRational> {
    (0..=k).map(|i| UnitRational::ratio(i, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_named_uniquely() {
        let c = finite_corpus();
        assert!(c.len() >= 20);
        let mut names: Vec<_> = c.iter().map(|(n, _)| *n).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), c.len());
        assert!(corpus_entry("mplm-a").is_some());
        assert_eq!(grid(20).len(), 21);
    }
}
