//! Labeled interval signatures.
//!
//! The signature of a continuous t-norm lists its Product pieces (label `P`),
//! its Łukasiewicz pieces (label `L`) and its maximal open intervals of
//! idempotents (label `M`), ordered by `(a, b) ≺ (c, d) ⟺ b ≤ c`. Two
//! continuous t-norms are isomorphic exactly when their signatures are
//! label-preserving order isomorphic.

use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::UnitRational;
use crate::tnorm::{FinitePresentation, Piece, PieceKind, TNorm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    P,
    L,
    M,
}

impl From<PieceKind> for Label {
    fn from(kind: PieceKind) -> Self {
        match kind {
            PieceKind::Product => Label::P,
            PieceKind::Lukasiewicz => Label::L,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::P => "P",
            Label::L => "L",
            Label::M => "M",
        })
    }
}

/// One labeled open interval. `piece_index` is the generator index of a
/// P/L entry when known.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignatureEntry {
    pub lo: UnitRational,
    pub hi: UnitRational,
    pub label: Label,
    pub piece_index: Option<usize>,
}

impl SignatureEntry {
    pub fn new(lo: UnitRational, hi: UnitRational, label: Label) -> Result<Self> {
        if lo >= hi {
            return Err(Error::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(SignatureEntry {
            lo,
            hi,
            label,
            piece_index: None,
        })
    }

    pub fn from_piece(piece: &Piece, index: usize) -> Self {
        SignatureEntry {
            lo: piece.lo().clone(),
            hi: piece.hi().clone(),
            label: piece.kind().into(),
            piece_index: Some(index),
        }
    }

    pub(crate) fn idempotent(lo: UnitRational, hi: UnitRational) -> Self {
        debug_assert!(lo < hi);
        SignatureEntry {
            lo,
            hi,
            label: Label::M,
            piece_index: None,
        }
    }

    pub fn same_interval(&self, other: &SignatureEntry) -> bool {
        self.lo == other.lo && self.hi == other.hi
    }

    fn overlaps(&self, other: &SignatureEntry) -> bool {
        self.lo.clone().max(other.lo.clone()) < self.hi.clone().min(other.hi.clone())
    }
}

impl fmt::Display for SignatureEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.label, self.lo, self.hi)
    }
}

/// `(a, b) ≺ (c, d) ⟺ b ≤ c`, defined on disjoint intervals.
pub fn prec(e1: &SignatureEntry, e2: &SignatureEntry) -> Result<bool> {
    if e1.overlaps(e2) {
        return Err(Error::Overlap(
            format!("({}, {})", e1.lo, e1.hi),
            format!("({}, {})", e2.lo, e2.hi),
        ));
    }
    Ok(e1.hi <= e2.lo)
}

/// True iff the entries are nonempty, pairwise disjoint, and their closures
/// cover `[0, 1]`.
pub fn validate_in_s(entries: &[SignatureEntry]) -> bool {
    if entries.is_empty() || entries.iter().any(|e| e.lo >= e.hi) {
        return false;
    }
    let mut sorted: Vec<&SignatureEntry> = entries.iter().collect();
    sorted.sort_by(|a, b| a.lo.cmp(&b.lo));
    if sorted[0].lo != UnitRational::zero() || sorted[sorted.len() - 1].hi != UnitRational::one() {
        return false;
    }
    sorted.windows(2).all(|w| w[0].hi == w[1].lo)
}

/// A ≺-sorted list of entries. `complete` is false when the list is only a
/// prefix of an infinite signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    entries: Vec<SignatureEntry>,
    complete: bool,
    truncation_depth: Option<usize>,
}

impl Signature {
    pub fn entries(&self) -> &[SignatureEntry] {
        &self.entries
    }

    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn truncation_depth(&self) -> Option<usize> {
        self.truncation_depth
    }

    pub fn labels(&self) -> Vec<Label> {
        self.entries.iter().map(|e| e.label).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let depth = self
            .truncation_depth
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        writeln!(f, "signature v1 complete={} depth={}", self.complete, depth)?;
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Exact signature of a finite ordinal sum. Gaps between pieces, including
/// those touching 0 or 1, become `M` entries.
pub fn finite_signature(p: &FinitePresentation) -> Signature {
    let mut entries = Vec::with_capacity(2 * p.pieces().len() + 1);
    let mut cursor = UnitRational::zero();
    for (i, piece) in p.pieces().iter().enumerate() {
        if piece.lo() > &cursor {
            entries.push(SignatureEntry::idempotent(cursor, piece.lo().clone()));
        }
        entries.push(SignatureEntry::from_piece(piece, i));
        cursor = piece.hi().clone();
    }
    if cursor < UnitRational::one() {
        entries.push(SignatureEntry::idempotent(cursor, UnitRational::one()));
    }
    Signature {
        entries,
        complete: true,
        truncation_depth: None,
    }
}

/// Signature of `t`. Lazy t-norms give the pieces enumerated up to `depth`
/// plus the `M` entries their generator certifies; the result is marked
/// incomplete.
pub fn compute_signature(t: &TNorm, depth: usize) -> Signature {
    match t {
        TNorm::Finite(p) => finite_signature(p),
        TNorm::Lazy(lazy) => {
            let g = lazy.generator();
            let count = g.pieces_at_depth(depth);
            let mut entries: Vec<SignatureEntry> = (0..count)
                .map(|i| SignatureEntry::from_piece(&g.piece_at(i), i))
                .collect();
            entries.extend(
                g.certified_idempotent_intervals(depth)
                    .into_iter()
                    .map(|(lo, hi)| SignatureEntry::idempotent(lo, hi)),
            );
            entries.sort_by(|a, b| a.lo.cmp(&b.lo));
            Signature {
                entries,
                complete: false,
                truncation_depth: Some(depth),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::{LimitLeft, LimitRight};
    use std::sync::Arc;

    fn u(p: u64, q: u64) -> UnitRational {
        UnitRational::ratio(p, q)
    }

    fn e(label: Label, lo: (u64, u64), hi: (u64, u64)) -> SignatureEntry {
        SignatureEntry::new(u(lo.0, lo.1), u(hi.0, hi.1), label).unwrap()
    }

    fn shape(s: &Signature) -> Vec<(Label, UnitRational, UnitRational)> {
        s.entries()
            .iter()
            .map(|x| (x.label, x.lo.clone(), x.hi.clone()))
            .collect()
    }

    fn finite(pieces: &[crate::corpus::PieceSpec]) -> FinitePresentation {
        crate::corpus::from_specs(pieces)
    }

    #[test]
    fn single_piece_gets_left_gap() {
        let s = finite_signature(&finite(&[((1, 2), (1, 1), PieceKind::Product)]));
        assert_eq!(
            shape(&s),
            vec![(Label::M, u(0, 1), u(1, 2)), (Label::P, u(1, 2), u(1, 1))]
        );
        assert!(s.complete());
    }

    #[test]
    fn touching_pieces_have_no_gap_between() {
        let s = finite_signature(&finite(&[
            ((1, 4), (1, 2), PieceKind::Product),
            ((1, 2), (3, 4), PieceKind::Lukasiewicz),
        ]));
        assert_eq!(s.labels(), vec![Label::M, Label::P, Label::L, Label::M]);
        assert_eq!(s.entries()[3].lo, u(3, 4));
        assert!(validate_in_s(s.entries()));
    }

    #[test]
    fn minimum_is_one_gap() {
        let s = finite_signature(&FinitePresentation::minimum());
        assert_eq!(shape(&s), vec![(Label::M, u(0, 1), u(1, 1))]);
        assert_eq!(s.to_string(), "signature v1 complete=true depth=-\nM 0 1\n");
    }

    #[test]
    fn limit_left_prefix() {
        let t = TNorm::lazy(Arc::new(LimitLeft), 3);
        let s = compute_signature(&t, 3);
        assert!(!s.complete());
        assert_eq!(
            shape(&s),
            vec![
                (Label::P, u(0, 1), u(1, 2)),
                (Label::P, u(1, 2), u(2, 3)),
                (Label::P, u(2, 3), u(3, 4)),
            ]
        );
    }

    #[test]
    fn limit_right_minimum_keeps_moving() {
        let t = TNorm::lazy(Arc::new(LimitRight), 0);
        for d in 2..20 {
            let s = compute_signature(&t, d);
            assert_eq!(s.entries()[0].lo, u(1, d as u64 + 1));
            assert_eq!(s.entries()[0].hi, u(1, d as u64));
        }
    }

    #[test]
    fn prec_examples() {
        assert!(prec(&e(Label::P, (0, 1), (1, 2)), &e(Label::P, (1, 2), (2, 3))).unwrap());
        assert!(!prec(&e(Label::P, (1, 2), (2, 3)), &e(Label::P, (0, 1), (1, 2))).unwrap());
        assert!(prec(&e(Label::P, (0, 1), (1, 3)), &e(Label::P, (2, 3), (1, 1))).unwrap());
        assert!(prec(&e(Label::P, (0, 1), (1, 2)), &e(Label::P, (1, 3), (2, 3))).is_err());
    }

    #[test]
    fn validate_examples() {
        assert!(!validate_in_s(&[e(Label::P, (1, 4), (1, 2))]));
        assert!(validate_in_s(&[e(Label::M, (0, 1), (1, 1))]));
        assert!(!validate_in_s(&[]));
    }
}
