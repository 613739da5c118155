//! Isomorphism of continuous t-norms through their signatures.
//!
//! Finite signatures are decided exactly and come with an explicit
//! piecewise-affine isomorphism. Lazy t-norms are compared through the
//! structural certificates of their generators; the answer is three-valued
//! and never extrapolated from a prefix.

use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{Rational, UnitRational};
use crate::signature::{
    compute_signature, finite_signature, prec, Label, Signature, SignatureEntry,
};
use crate::tnorm::{FinitePresentation, OrderCertificate, TNorm, Tri};

/// Number of pairs the back-and-forth witness aims for.
pub const BACK_AND_FORTH_PAIRS: usize = 8;

/// An affine bijection `[from_lo, from_hi] → [to_lo, to_hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSegment {
    pub from_lo: UnitRational,
    pub from_hi: UnitRational,
    pub to_lo: UnitRational,
    pub to_hi: UnitRational,
}

impl AffineSegment {
    pub fn apply(&self, x: &Rational) -> Rational {
        let t = (x - self.from_lo.value()) / (self.from_hi.value() - self.from_lo.value());
        self.to_lo.value() + t * (self.to_hi.value() - self.to_lo.value())
    }
}

/// A label-preserving order bijection between signature entries, and for
/// finite signatures the induced isomorphism of `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IsoWitness {
    pub entry_map: Vec<(SignatureEntry, SignatureEntry)>,
    pub map_pieces: Vec<AffineSegment>,
}

impl IsoWitness {
    /// Evaluates the interval map at `x`. Only meaningful for finite witnesses.
    pub fn apply(&self, x: &UnitRational) -> Option<UnitRational> {
        self.map_pieces
            .iter()
            .find(|s| &s.from_lo <= x && x <= &s.from_hi)
            .map(|s| UnitRational::new_unchecked(s.apply(x.value())))
    }
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.entry_map {
            writeln!(f, "  {} {} {} -> {} {}", a.label, a.lo, a.hi, b.lo, b.hi)?;
        }
        for s in &self.map_pieces {
            writeln!(
                f,
                "  map [{}, {}] -> [{}, {}]",
                s.from_lo, s.from_hi, s.to_lo, s.to_hi
            )?;
        }
        Ok(())
    }
}

/// A certified reason two signatures cannot be isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum DistinguishingInvariant {
    /// One side has a ≺-least entry with this label, the other does not.
    MinimumExistsMismatch(Label),
    /// One side has a ≺-greatest entry with this label, the other does not.
    MaximumExistsMismatch(Label),
    /// One side has two entries with nothing between them; the other is dense.
    SuccessorPairPresent(SignatureEntry, SignatureEntry),
    DensityMismatch,
    /// Finite label sequences first differ at this position.
    FiniteLabelSequenceMismatch(usize),
}

impl DistinguishingInvariant {
    pub fn tag(&self) -> String {
        match self {
            DistinguishingInvariant::MinimumExistsMismatch(l) => {
                format!("MinimumExistsMismatch({l})")
            }
            DistinguishingInvariant::MaximumExistsMismatch(l) => {
                format!("MaximumExistsMismatch({l})")
            }
            DistinguishingInvariant::SuccessorPairPresent(..) => "SuccessorPairPresent".into(),
            DistinguishingInvariant::DensityMismatch => "DensityMismatch".into(),
            DistinguishingInvariant::FiniteLabelSequenceMismatch(i) => {
                format!("FiniteLabelSequenceMismatch({i})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum IsoVerdict {
    Iso(IsoWitness),
    NotIso(DistinguishingInvariant),
    Unknown(usize),
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }

    pub fn is_not_iso(&self) -> bool {
        matches!(self, IsoVerdict::NotIso(_))
    }

    pub fn headline(&self) -> String {
        match self {
            IsoVerdict::Iso(_) => "ISO".into(),
            IsoVerdict::NotIso(inv) => format!("NOT_ISO {}", inv.tag()),
            IsoVerdict::Unknown(d) => format!("UNKNOWN depth={d}"),
        }
    }
}

impl fmt::Display for IsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.headline())?;
        match self {
            IsoVerdict::Iso(w) => write!(f, "{w}"),
            IsoVerdict::NotIso(DistinguishingInvariant::SuccessorPairPresent(a, b)) => {
                writeln!(f, "  {a}")?;
                writeln!(f, "  {b}")
            }
            _ => Ok(()),
        }
    }
}

/// Compares two complete signatures by their ≺-sorted label sequences.
pub fn decide_iso_finite(s1: &Signature, s2: &Signature) -> Result<IsoVerdict> {
    for s in [s1, s2] {
        if !s.complete() {
            return Err(Error::IncompleteSignature(
                s.truncation_depth().unwrap_or(0),
            ));
        }
    }
    let (l1, l2) = (s1.labels(), s2.labels());
    if let Some(pos) = (0..l1.len().max(l2.len())).find(|&i| l1.get(i) != l2.get(i)) {
        return Ok(IsoVerdict::NotIso(
            DistinguishingInvariant::FiniteLabelSequenceMismatch(pos),
        ));
    }
    let entry_map: Vec<_> = s1
        .entries()
        .iter()
        .cloned()
        .zip(s2.entries().iter().cloned())
        .collect();
    let map_pieces = entry_map
        .iter()
        .map(|(a, b)| AffineSegment {
            from_lo: a.lo.clone(),
            from_hi: a.hi.clone(),
            to_lo: b.lo.clone(),
            to_hi: b.hi.clone(),
        })
        .collect();
    Ok(IsoVerdict::Iso(IsoWitness {
        entry_map,
        map_pieces,
    }))
}

/// The piecewise-affine isomorphism carrying `t1` onto `t2`.
pub fn build_iso_map(t1: &FinitePresentation, t2: &FinitePresentation) -> Result<IsoWitness> {
    match decide_iso_finite(&finite_signature(t1), &finite_signature(t2))? {
        IsoVerdict::Iso(w) => Ok(w),
        other => Err(Error::NotIsomorphic(other.headline())),
    }
}

/// Order facts of a complete finite signature.
fn finite_certificate(s: &Signature) -> OrderCertificate {
    let entries = s.entries();
    let first = entries.first().cloned();
    let uniform_label = first
        .as_ref()
        .map(|f| f.label)
        .filter(|&l| entries.iter().all(|e| e.label == l));
    OrderCertificate {
        uniform_label,
        has_min: Tri::Yes,
        min_witness: first,
        has_max: Tri::Yes,
        max_witness: entries.last().cloned(),
        dense: Tri::from_bool(entries.len() < 2),
        successor_witness: (entries.len() >= 2).then(|| (entries[0].clone(), entries[1].clone())),
    }
}

fn certificate(t: &TNorm, depth: usize) -> OrderCertificate {
    match t {
        TNorm::Finite(p) => finite_certificate(&finite_signature(p)),
        TNorm::Lazy(l) => l.generator().order_certificate(depth),
    }
}

fn endpoint_mismatch(
    a: Tri,
    wa: &Option<SignatureEntry>,
    b: Tri,
    wb: &Option<SignatureEntry>,
) -> Option<Label> {
    let label = |w: &Option<SignatureEntry>| w.as_ref().map(|e| e.label);
    match (a, b) {
        (Tri::Yes, Tri::No) => label(wa),
        (Tri::No, Tri::Yes) => label(wb),
        (Tri::Yes, Tri::Yes) => match (label(wa), label(wb)) {
            (Some(x), Some(y)) if x != y => Some(x),
            _ => None,
        },
        _ => None,
    }
}

/// Compares two t-norms that may be lazy.
///
/// Checks, in order: identical generator families; existence of a ≺-least
/// and a ≺-greatest entry; a successor pair against certified density; and
/// finally two dense orders without endpoints carrying the same single label,
/// which are isomorphic by the back-and-forth argument.
pub fn decide_iso_lazy(t1: &TNorm, t2: &TNorm, depth: usize) -> IsoVerdict {
    if let (TNorm::Finite(a), TNorm::Finite(b)) = (t1, t2) {
        return decide_iso_finite(&finite_signature(a), &finite_signature(b))
            .expect("finite signatures are complete");
    }
    if let (TNorm::Lazy(a), TNorm::Lazy(b)) = (t1, t2) {
        if a.generator().family_key() == b.generator().family_key() {
            let s = compute_signature(t1, depth);
            let entry_map = s.entries().iter().map(|e| (e.clone(), e.clone())).collect();
            return IsoVerdict::Iso(IsoWitness {
                entry_map,
                map_pieces: Vec::new(),
            });
        }
    }

    let c1 = certificate(t1, depth);
    let c2 = certificate(t2, depth);

    if let Some(l) = endpoint_mismatch(c1.has_min, &c1.min_witness, c2.has_min, &c2.min_witness) {
        return IsoVerdict::NotIso(DistinguishingInvariant::MinimumExistsMismatch(l));
    }
    if let Some(l) = endpoint_mismatch(c1.has_max, &c1.max_witness, c2.has_max, &c2.max_witness) {
        return IsoVerdict::NotIso(DistinguishingInvariant::MaximumExistsMismatch(l));
    }
    for (a, b) in [(&c1, &c2), (&c2, &c1)] {
        if b.dense == Tri::Yes && a.dense == Tri::No {
            return IsoVerdict::NotIso(match &a.successor_witness {
                Some((x, y)) => DistinguishingInvariant::SuccessorPairPresent(x.clone(), y.clone()),
                None => DistinguishingInvariant::DensityMismatch,
            });
        }
    }
    let both_dense = c1.dense_no_endpoints() == Tri::Yes && c2.dense_no_endpoints() == Tri::Yes;
    if both_dense && c1.uniform_label.is_some() && c1.uniform_label == c2.uniform_label {
        let s1 = compute_signature(t1, depth);
        let s2 = compute_signature(t2, depth);
        let entry_map = extend_back_and_forth(&s1, &s2, BACK_AND_FORTH_PAIRS).0;
        return IsoVerdict::Iso(IsoWitness {
            entry_map,
            map_pieces: Vec::new(),
        });
    }
    IsoVerdict::Unknown(depth)
}

/// Entries in enumeration order: generator index first, then position.
fn enumeration_order(s: &Signature) -> Vec<SignatureEntry> {
    let mut v: Vec<SignatureEntry> = s.entries().to_vec();
    v.sort_by_key(|e| e.piece_index.unwrap_or(usize::MAX));
    v
}

/// `y` occupies the same cut relative to the matched range as `x` does
/// relative to the matched domain.
fn same_cut(
    pairs: &[(SignatureEntry, SignatureEntry)],
    x: &SignatureEntry,
    y: &SignatureEntry,
    forth: bool,
) -> bool {
    pairs.iter().all(|(a, b)| {
        let (a, b) = if forth { (a, b) } else { (b, a) };
        let xa = prec(x, a).unwrap_or(false);
        let yb = prec(y, b).unwrap_or(false);
        xa == yb
    })
}

fn extend_back_and_forth(
    s1: &Signature,
    s2: &Signature,
    k: usize,
) -> (Vec<(SignatureEntry, SignatureEntry)>, Option<String>) {
    let left = enumeration_order(s1);
    let right = enumeration_order(s2);
    let mut pairs: Vec<(SignatureEntry, SignatureEntry)> = Vec::new();
    let used = |pairs: &[(SignatureEntry, SignatureEntry)], e: &SignatureEntry, side: bool| {
        pairs.iter().any(|(a, b)| {
            if side {
                a.same_interval(e)
            } else {
                b.same_interval(e)
            }
        })
    };
    while pairs.len() < k {
        let forth = pairs.len().is_multiple_of(2);
        let (from, to) = if forth {
            (&left, &right)
        } else {
            (&right, &left)
        };
        let Some(x) = from.iter().find(|e| !used(&pairs, e, forth)) else {
            return (pairs, Some("no unmatched entry left".into()));
        };
        let partner = to.iter().find(|y| {
            !used(&pairs, y, !forth) && y.label == x.label && same_cut(&pairs, x, y, forth)
        });
        match partner {
            Some(y) => {
                if forth {
                    pairs.push((x.clone(), y.clone()));
                } else {
                    pairs.push((y.clone(), x.clone()));
                }
            }
            None => {
                return (
                    pairs,
                    Some(format!("no partner for {x} in the enumerated prefix")),
                )
            }
        }
    }
    (pairs, None)
}

/// Builds a `k`-pair partial ≺-isomorphism by alternating forth and back
/// steps, each time matching the least-indexed unmatched entry with the
/// least-indexed partner in the same cut.
pub fn back_and_forth(
    s1: &Signature,
    s2: &Signature,
    k: usize,
) -> Result<Vec<(SignatureEntry, SignatureEntry)>> {
    let labels1 = s1.labels();
    let labels2 = s2.labels();
    let uniform = labels1
        .first()
        .filter(|l| labels1.iter().chain(labels2.iter()).all(|m| m == *l));
    if k > 0 && uniform.is_none() {
        return Err(Error::Precondition(
            "back-and-forth needs one common label".into(),
        ));
    }
    match extend_back_and_forth(s1, s2, k) {
        (pairs, None) => Ok(pairs),
        (pairs, Some(reason)) => Err(Error::BackAndForthStalled {
            matched: pairs.len(),
            reason,
        }),
    }
}

/// True iff `pairs` is injective on both sides and preserves ≺ both ways.
pub fn is_order_consistent(pairs: &[(SignatureEntry, SignatureEntry)]) -> bool {
    for (i, (a1, b1)) in pairs.iter().enumerate() {
        for (a2, b2) in &pairs[i + 1..] {
            if a1.same_interval(a2) || b1.same_interval(b2) {
                return false;
            }
            match (prec(a1, a2), prec(b1, b2)) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::{LimitLeft, LimitRight, PieceKind};
    use std::sync::Arc;

    fn u(p: u64, q: u64) -> UnitRational {
        UnitRational::ratio(p, q)
    }

    fn fp(pieces: &[crate::corpus::PieceSpec]) -> FinitePresentation {
        crate::corpus::from_specs(pieces)
    }

    use PieceKind::{Lukasiewicz as L, Product as P};

    fn mplm_a() -> FinitePresentation {
        fp(&[((1, 4), (1, 2), P), ((1, 2), (3, 4), L)])
    }

    fn mplm_b() -> FinitePresentation {
        fp(&[((1, 10), (1, 5), P), ((1, 5), (9, 10), L)])
    }

    #[test]
    fn finite_examples() {
        let a = finite_signature(&mplm_a());
        let b = finite_signature(&mplm_b());
        assert!(decide_iso_finite(&a, &b).unwrap().is_iso());
        let swapped = finite_signature(&fp(&[((1, 4), (1, 2), L), ((1, 2), (3, 4), P)]));
        assert_eq!(
            decide_iso_finite(&a, &swapped).unwrap(),
            IsoVerdict::NotIso(DistinguishingInvariant::FiniteLabelSequenceMismatch(1))
        );
        let m = finite_signature(&FinitePresentation::minimum());
        assert!(decide_iso_finite(&m, &m).unwrap().is_iso());
    }

    #[test]
    fn witness_segments_and_homomorphism() {
        let (t1, t2) = (mplm_a(), mplm_b());
        let w = build_iso_map(&t1, &t2).unwrap();
        let ends: Vec<_> = w
            .map_pieces
            .iter()
            .map(|s| {
                (
                    s.from_lo.clone(),
                    s.from_hi.clone(),
                    s.to_lo.clone(),
                    s.to_hi.clone(),
                )
            })
            .collect();
        assert_eq!(
            ends,
            vec![
                (u(0, 1), u(1, 4), u(0, 1), u(1, 10)),
                (u(1, 4), u(1, 2), u(1, 10), u(1, 5)),
                (u(1, 2), u(3, 4), u(1, 5), u(9, 10)),
                (u(3, 4), u(1, 1), u(9, 10), u(1, 1)),
            ]
        );
        let x = u(3, 8);
        let phi = |v: &UnitRational| w.apply(v).unwrap();
        assert_eq!(phi(&t1.eval(&x, &x)), t2.eval(&phi(&x), &phi(&x)));
    }

    #[test]
    fn identity_witness() {
        let w = build_iso_map(&mplm_a(), &mplm_a()).unwrap();
        for k in 0..=16 {
            let x = u(k, 16);
            assert_eq!(w.apply(&x).unwrap(), x);
        }
    }

    #[test]
    fn non_isomorphic_map_is_rejected() {
        let swapped = fp(&[((1, 4), (1, 2), L), ((1, 2), (3, 4), P)]);
        assert!(matches!(
            build_iso_map(&mplm_a(), &swapped),
            Err(Error::NotIsomorphic(_))
        ));
    }

    #[test]
    fn incomplete_signature_is_rejected() {
        let t = TNorm::lazy(Arc::new(LimitLeft), 4);
        let s = compute_signature(&t, 4);
        assert!(decide_iso_finite(&s, &s).is_err());
    }

    #[test]
    fn limit_families_differ_at_minimum() {
        let left = TNorm::lazy(Arc::new(LimitLeft), 4);
        let right = TNorm::lazy(Arc::new(LimitRight), 4);
        for depth in 4..=16 {
            assert_eq!(
                decide_iso_lazy(&left, &right, depth).headline(),
                "NOT_ISO MinimumExistsMismatch(P)"
            );
        }
        assert!(decide_iso_lazy(&left, &left, 4).is_iso());
    }

    #[test]
    fn lazy_against_finite() {
        let right = TNorm::lazy(Arc::new(LimitRight), 4);
        let finite: TNorm = mplm_a().into();
        assert_eq!(
            decide_iso_lazy(&finite, &right, 4).headline(),
            "NOT_ISO MinimumExistsMismatch(M)"
        );
    }

    #[test]
    fn back_and_forth_trivial_cases() {
        let t = TNorm::lazy(Arc::new(LimitLeft), 4);
        let s = compute_signature(&t, 6);
        assert!(back_and_forth(&s, &s, 0).unwrap().is_empty());
        let pairs = back_and_forth(&s, &s, 4).unwrap();
        assert_eq!(pairs.len(), 4);
        assert!(is_order_consistent(&pairs));
    }
}
