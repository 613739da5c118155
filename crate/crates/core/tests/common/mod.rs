//! Brute-force oracles shared by the integration tests. They are written
//! from the definitions and avoid the library's fast paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use tnorm_iso::reduce_to_l1::L1Structure;
use tnorm_iso::signature::Label;
use tnorm_iso::tnorm::{FinitePresentation, Piece, PieceKind};
use tnorm_iso::UnitRational;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The first `count` rationals of `[0, 1]`: 0, 1, then reduced fractions by
/// denominator and numerator.
pub fn enumeration_prefix(count: usize) -> Vec<(u64, u64)> {
    let mut out = vec![(0, 1), (1, 1)];
    let mut d = 2;
    while out.len() < count {
        for p in 1..d {
            if gcd(p, d) == 1 {
                out.push((p, d));
            }
        }
        d += 1;
    }
    out.truncate(count);
    out
}

pub fn unit_prefix(count: usize) -> Vec<UnitRational> {
    enumeration_prefix(count)
        .into_iter()
        .map(|(p, q)| UnitRational::ratio(p, q))
        .collect()
}

/// Signature entries read off the sorted pieces: each piece, and each
/// nonempty stretch of `[0, 1]` no piece covers.
pub fn oracle_entries(t: &FinitePresentation) -> Vec<(UnitRational, UnitRational, Label)> {
    let mut out = Vec::new();
    let mut cursor = UnitRational::zero();
    for p in t.pieces() {
        if p.lo() > &cursor {
            out.push((cursor.clone(), p.lo().clone(), Label::M));
        }
        let label = match p.kind() {
            PieceKind::Product => Label::P,
            PieceKind::Lukasiewicz => Label::L,
        };
        out.push((p.lo().clone(), p.hi().clone(), label));
        cursor = p.hi().clone();
    }
    if cursor < UnitRational::one() {
        out.push((cursor, UnitRational::one(), Label::M));
    }
    out
}

/// The structure on `{0, …, n−1}` by scanning the enumeration for each entry.
pub fn oracle_theta(t: &FinitePresentation, n: usize) -> L1Structure {
    let qs = unit_prefix(n);
    let mut s = L1Structure {
        size: n as u64,
        ..Default::default()
    };
    let mut active = Vec::new();
    for (lo, hi, label) in oracle_entries(t) {
        let inside = |q: &UnitRational| match label {
            Label::M => &lo <= q && q <= &hi,
            _ => &lo < q && q < &hi,
        };
        if let Some(k) = qs.iter().position(inside) {
            let k = k as u64;
            match label {
                Label::P => s.rp.insert(k),
                Label::L => s.rl.insert(k),
                Label::M => s.rm.insert(k),
            };
            active.push((k, lo, hi));
        }
    }
    for (m, _, hi_m) in &active {
        for (k, lo_k, _) in &active {
            if m != k && hi_m <= lo_k {
                s.less.insert((*m, *k));
            }
        }
    }
    s
}

/// Least `l` with `q^(l) = lo`, by multiplying one factor at a time.
pub fn iterated_nilpotency(piece: &Piece, q: &UnitRational, cap: u64) -> Option<u64> {
    let mut x = q.value().clone();
    for l in 1..=cap {
        if &x == piece.lo().value() {
            return Some(l);
        }
        x = piece.apply(&x, q.value());
    }
    None
}

/// Random finite presentations with breakpoints in `{k/48}`.
pub fn arb_presentation() -> impl Strategy<Value = FinitePresentation> {
    (
        prop::collection::btree_set(0u64..=48, 2..8),
        prop::collection::vec(0u8..3, 8),
    )
        .prop_map(|(cuts, kinds): (BTreeSet<u64>, Vec<u8>)| {
            let cuts: Vec<u64> = cuts.into_iter().collect();
            let pieces = cuts
                .windows(2)
                .zip(kinds)
                .filter_map(|(w, k)| {
                    let kind = match k {
                        0 => return None,
                        1 => PieceKind::Product,
                        _ => PieceKind::Lukasiewicz,
                    };
                    Some(
                        Piece::new(
                            UnitRational::ratio(w[0], 48),
                            UnitRational::ratio(w[1], 48),
                            kind,
                        )
                        .unwrap(),
                    )
                })
                .collect();
            FinitePresentation::new(pieces).unwrap()
        })
}

/// Random permutation ranks for a finite order of size `k`.
pub fn arb_ranks(k: usize) -> impl Strategy<Value = Vec<u64>> {
    Just((0..k as u64).collect::<Vec<_>>()).prop_shuffle()
}
