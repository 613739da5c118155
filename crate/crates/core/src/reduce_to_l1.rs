//! From t-norms to countable relational structures.
//!
//! Every signature entry is replaced by the least index `n` whose rational
//! `q_n` lies in it (open interval for P/L entries, closed for M entries).
//! The resulting structure on ω has three unary relations, one per label,
//! and a binary relation copying ≺. This module computes its restriction to
//! `{0, …, N−1}` two ways: from the signature, and from pointwise conditions
//! on the operation alone.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{
    enumerate_rationals, min_index_in, rationals_up_to_denominator, Index, UnitRational,
};
use crate::signature::{compute_signature, finite_signature, prec, Label, SignatureEntry};
use crate::tnorm::{EventualIdempotence, FinitePresentation, Locate, TNorm, Tri};

/// Largest prefix of the enumeration a lazy t-norm is scanned over.
pub const LAZY_SCAN_LIMIT: Index = 1 << 16;

/// The restriction of the structure to `{0, …, size−1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct L1Structure {
    pub size: Index,
    pub less: BTreeSet<(Index, Index)>,
    pub rp: BTreeSet<Index>,
    pub rl: BTreeSet<Index>,
    pub rm: BTreeSet<Index>,
    /// Some index could not be resolved; relations may be missing.
    pub qualified: bool,
}

impl L1Structure {
    pub fn label_of(&self, n: Index) -> Option<Label> {
        if self.rp.contains(&n) {
            Some(Label::P)
        } else if self.rl.contains(&n) {
            Some(Label::L)
        } else if self.rm.contains(&n) {
            Some(Label::M)
        } else {
            None
        }
    }

    /// Active indices sorted by `less`.
    pub fn active_in_order(&self) -> Vec<Index> {
        let mut active: Vec<Index> = self
            .rp
            .iter()
            .chain(&self.rl)
            .chain(&self.rm)
            .copied()
            .collect();
        active.sort_by_key(|n| self.less.iter().filter(|(_, b)| b == n).count());
        active
    }

    /// Label sequence of the active elements in `less` order, plus the
    /// number of inactive indices.
    pub fn canonical_form(&self) -> (Vec<Label>, Index) {
        let order = self.active_in_order();
        let labels = order
            .iter()
            .map(|&n| self.label_of(n).expect("active"))
            .collect();
        (labels, self.size - order.len() as Index)
    }

    fn from_entries(entries: &[(Index, SignatureEntry)], size: Index, qualified: bool) -> Self {
        let mut s = L1Structure {
            size,
            qualified,
            ..Default::default()
        };
        for (n, e) in entries {
            match e.label {
                Label::P => s.rp.insert(*n),
                Label::L => s.rl.insert(*n),
                Label::M => s.rm.insert(*n),
            };
        }
        for (m, a) in entries {
            for (n, b) in entries {
                if m != n && prec(a, b).unwrap_or(false) {
                    s.less.insert((*m, *n));
                }
            }
        }
        s
    }
}

impl fmt::Display for L1Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |set: &BTreeSet<Index>| {
            set.iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "l1 v1 n={} qualified={}", self.size, self.qualified)?;
        writeln!(f, "rp: {}", list(&self.rp))?;
        writeln!(f, "rl: {}", list(&self.rl))?;
        writeln!(f, "rm: {}", list(&self.rm))?;
        for (m, n) in &self.less {
            writeln!(f, "less: {m} {n}")?;
        }
        Ok(())
    }
}

/// Least index of a rational in the entry: open for P/L, closed for M.
pub fn entry_index(e: &SignatureEntry) -> Index {
    min_index_in(&e.lo, &e.hi, e.label == Label::M).expect("signature entries are nonempty")
}

/// The structure restricted to `{0, …, n−1}`, computed from the signature.
///
/// For lazy t-norms the entries are those enumerated at the configured depth
/// plus any piece met while locating `q_0, q_1, …`; the result is qualified
/// whenever some index could not be resolved.
pub fn theta(t: &TNorm, n: Index) -> L1Structure {
    match t {
        TNorm::Finite(p) => theta_finite(p, n),
        TNorm::Lazy(lazy) => {
            let sig = compute_signature(t, lazy.depth());
            let mut entries: Vec<SignatureEntry> = sig.entries().to_vec();
            let known_m: Vec<SignatureEntry> = entries
                .iter()
                .filter(|e| e.label == Label::M)
                .cloned()
                .collect();
            let no_gaps = lazy.generator().has_idempotent_intervals() == Tri::No;
            let mut qualified = n > LAZY_SCAN_LIMIT;
            for i in 0..n.min(LAZY_SCAN_LIMIT) {
                let q = enumerate_rationals(i);
                match lazy.locate(&q) {
                    Locate::InPiece { index, piece } => {
                        if !entries.iter().any(|e| e.piece_index == Some(index)) {
                            entries.push(SignatureEntry::from_piece(&piece, index));
                        }
                    }
                    Locate::Idempotent => {
                        let in_known = known_m.iter().any(|e| e.lo <= q && q <= e.hi);
                        if !in_known && !no_gaps {
                            qualified = true;
                        }
                    }
                    Locate::UnknownAtDepth => qualified = true,
                }
            }
            let active: Vec<(Index, SignatureEntry)> = entries
                .into_iter()
                .map(|e| (entry_index(&e), e))
                .filter(|(i, _)| *i < n)
                .collect();
            L1Structure::from_entries(&active, n, qualified)
        }
    }
}

fn theta_finite(p: &FinitePresentation, n: Index) -> L1Structure {
    let active: Vec<(Index, SignatureEntry)> = finite_signature(p)
        .entries()
        .iter()
        .map(|e| (entry_index(e), e.clone()))
        .filter(|(i, _)| *i < n)
        .collect();
    L1Structure::from_entries(&active, n, false)
}

/// Rationals of bounded denominator, sorted by value, with their idempotency.
struct Scan {
    points: Vec<UnitRational>,
    /// `non_idem_prefix[i]` = number of non-idempotent points among `points[..i]`.
    non_idem_prefix: Vec<usize>,
    idempotent: Vec<bool>,
}

impl Scan {
    fn new(t: &FinitePresentation, max_denominator: u64) -> Self {
        let mut points = rationals_up_to_denominator(max_denominator);
        points.sort();
        let idempotent: Vec<bool> = points.iter().map(|q| t.is_idempotent(q)).collect();
        let mut non_idem_prefix = Vec::with_capacity(points.len() + 1);
        non_idem_prefix.push(0);
        for &i in &idempotent {
            non_idem_prefix.push(non_idem_prefix.last().unwrap() + usize::from(!i));
        }
        Scan {
            points,
            non_idem_prefix,
            idempotent,
        }
    }

    /// Scanned points strictly between `a` and `b`, as an index range.
    fn strictly_between(&self, a: &UnitRational, b: &UnitRational) -> std::ops::Range<usize> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let start = self.points.partition_point(|p| p <= lo);
        let end = self.points.partition_point(|p| p < hi);
        start..end.max(start)
    }

    fn count_between(&self, a: &UnitRational, b: &UnitRational) -> usize {
        self.strictly_between(a, b).len()
    }

    fn non_idempotent_between(&self, a: &UnitRational, b: &UnitRational) -> bool {
        let r = self.strictly_between(a, b);
        self.non_idem_prefix[r.end] > self.non_idem_prefix[r.start]
    }

    /// An idempotent scanned point `q_l ≠ q` with no scanned non-idempotent
    /// strictly between it and `q`. Only the nearest scanned neighbours need
    /// checking: any farther witness would enclose them.
    fn has_idempotent_neighbour(&self, q: &UnitRational) -> bool {
        let below = self.points.partition_point(|p| p < q);
        let above = self.points.partition_point(|p| p <= q);
        let left = below
            .checked_sub(1)
            .map(|i| self.idempotent[i])
            .unwrap_or(false);
        let right = self.idempotent.get(above).copied().unwrap_or(false);
        left || right
    }
}

/// The same structure computed from pointwise conditions on the operation:
///
/// * `n` is in `rp` (`rl`) iff `q_n` is not idempotent, no (some) power of
///   `q_n` is idempotent, and `q_i * q_n = min(q_i, q_n)` for all `i < n`;
/// * `n` is in `rm` iff `q_n` is idempotent, some `q_l ≠ q_n` bounds an
///   interval of idempotents with it, and every earlier `q_i` is separated
///   from `q_n` by a non-idempotent;
/// * `less` is `<` on active indices.
///
/// Quantifiers over ω range over rationals of denominator at most
/// `max_denominator`; powers are searched up to `max_power` and the piece
/// structure answers beyond. The scan is checked to be fine enough for every
/// condition to be decided correctly; otherwise the failing bound is reported.
pub fn theta_via_lemma(
    t: &FinitePresentation,
    n: Index,
    max_power: u64,
    max_denominator: u64,
) -> Result<L1Structure> {
    let scan = Scan::new(t, max_denominator);
    check_scan_adequate(t, n, &scan)?;
    let tn = TNorm::Finite(t.clone());
    let qs: Vec<UnitRational> = (0..n).map(enumerate_rationals).collect();

    let mut s = L1Structure {
        size: n,
        ..Default::default()
    };
    for (idx, q) in qs.iter().enumerate() {
        let idx = idx as Index;
        if !t.is_idempotent(q) {
            let separated = qs[..idx as usize]
                .iter()
                .all(|p| t.eval(p, q) == p.clone().min(q.clone()));
            if !separated {
                continue;
            }
            match tn.is_eventually_idempotent_power(q, max_power) {
                EventualIdempotence::No => s.rp.insert(idx),
                EventualIdempotence::Yes(_) => s.rl.insert(idx),
                EventualIdempotence::Unknown => {
                    return Err(Error::InsufficientBound {
                        bound: "max_power",
                        detail: format!("power sequence of {q} undecided"),
                    })
                }
            };
        } else {
            let interval = scan.has_idempotent_neighbour(q);
            let separated = qs[..idx as usize]
                .iter()
                .all(|p| scan.non_idempotent_between(p, q));
            if interval && separated {
                s.rm.insert(idx);
            }
        }
    }
    let active: Vec<Index> = s.rp.iter().chain(&s.rl).chain(&s.rm).copied().collect();
    for &a in &active {
        for &b in &active {
            if qs[a as usize] < qs[b as usize] {
                s.less.insert((a, b));
            }
        }
    }
    Ok(s)
}

/// The scan decides every condition correctly when each piece holds a
/// scanned point, each idempotent gap holds at least two, and each `q_i`
/// inside a piece is separated from that piece's endpoints by a scanned point.
fn check_scan_adequate(t: &FinitePresentation, n: Index, scan: &Scan) -> Result<()> {
    for p in t.pieces() {
        if scan.count_between(p.lo(), p.hi()) == 0 {
            return Err(Error::InsufficientBound {
                bound: "max_denominator",
                detail: format!("no scanned rational in piece {p}"),
            });
        }
    }
    for e in finite_signature(t)
        .entries()
        .iter()
        .filter(|e| e.label == Label::M)
    {
        if scan.count_between(&e.lo, &e.hi) < 2 {
            return Err(Error::InsufficientBound {
                bound: "max_denominator",
                detail: format!(
                    "fewer than two scanned rationals in gap ({}, {})",
                    e.lo, e.hi
                ),
            });
        }
    }
    for i in 0..n {
        let q = enumerate_rationals(i);
        if let Locate::InPiece { piece, .. } = t.locate(&q) {
            for end in [piece.lo(), piece.hi()] {
                if scan.count_between(&q, end) == 0 {
                    return Err(Error::InsufficientBound {
                        bound: "max_denominator",
                        detail: format!("no scanned rational between q_{i} = {q} and {end}"),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Decides isomorphism of two restrictions of equal size. Active elements
/// form a labeled chain under `less` and inactive ones carry no relations,
/// so two restrictions are isomorphic iff their label chains agree and they
/// have equally many inactive indices.
pub fn l1_iso_finite(a: &L1Structure, b: &L1Structure) -> Result<bool> {
    if a.size != b.size {
        return Err(Error::SizeMismatch(a.size, b.size));
    }
    if a.qualified || b.qualified {
        return Err(Error::Qualified);
    }
    Ok(a.canonical_form() == b.canonical_form())
}

/// The three basic predicates of the structure's topology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubbasisPredicates {
    /// `q_n` is idempotent.
    pub v_qn: bool,
    /// `q_m * q_n = min(q_m, q_n)`.
    pub u_mn: bool,
    /// `q_m < q_n`.
    pub w_mn: bool,
}

pub fn subbasis_predicates(t: &FinitePresentation, m: Index, n: Index) -> SubbasisPredicates {
    let qm = enumerate_rationals(m);
    let qn = enumerate_rationals(n);
    SubbasisPredicates {
        v_qn: t.is_idempotent(&qn),
        u_mn: t.eval(&qm, &qn) == qm.clone().min(qn.clone()),
        w_mn: qm < qn,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::PieceKind;

    fn fp(pieces: &[crate::corpus::PieceSpec]) -> FinitePresentation {
        crate::corpus::from_specs(pieces)
    }

    fn set(v: &[Index]) -> BTreeSet<Index> {
        v.iter().copied().collect()
    }

    use PieceKind::{Lukasiewicz as L, Product as P};

    #[test]
    fn single_product_piece() {
        let t = fp(&[((1, 2), (1, 1), P)]);
        let s = theta(&t.clone().into(), 6);
        assert_eq!(s.rm, set(&[0]));
        assert_eq!(s.rp, set(&[4]));
        assert!(s.rl.is_empty());
        assert_eq!(s.less, [(0, 4)].into_iter().collect());
        assert_eq!(theta_via_lemma(&t, 6, 64, 32).unwrap(), s);
    }

    #[test]
    fn minimum_tnorm() {
        let s = theta(&FinitePresentation::minimum().into(), 4);
        assert_eq!(s.rm, set(&[0]));
        assert!(s.rp.is_empty() && s.rl.is_empty() && s.less.is_empty());
    }

    #[test]
    fn two_touching_pieces() {
        let s = theta(&fp(&[((1, 4), (1, 2), P), ((1, 2), (3, 4), L)]).into(), 8);
        assert_eq!(s.rm, set(&[0, 1]));
        assert_eq!(s.rp, set(&[3]));
        assert_eq!(s.rl, set(&[4]));
        assert_eq!(s.active_in_order(), vec![0, 3, 4, 1]);
    }

    #[test]
    fn full_lukasiewicz_via_lemma() {
        let t = fp(&[((0, 1), (1, 1), L)]);
        let s = theta_via_lemma(&t, 4, 64, 32).unwrap();
        assert_eq!(s.rl, set(&[2]));
        assert!(s.rp.is_empty() && s.rm.is_empty());
        assert_eq!(s, theta(&t.into(), 4));
    }

    #[test]
    fn coarse_scan_is_reported() {
        let t = fp(&[((1, 10), (1, 9), P)]);
        assert!(matches!(
            theta_via_lemma(&t, 8, 64, 8),
            Err(Error::InsufficientBound { .. })
        ));
    }

    #[test]
    fn iso_of_restrictions() {
        let a = theta(&fp(&[((1, 4), (1, 2), P), ((1, 2), (3, 4), L)]).into(), 8);
        let b = theta(&fp(&[((1, 4), (1, 2), L), ((1, 2), (3, 4), P)]).into(), 8);
        assert!(l1_iso_finite(&a, &a).unwrap());
        assert!(!l1_iso_finite(&a, &b).unwrap());
        let c = theta(&FinitePresentation::minimum().into(), 9);
        assert_eq!(l1_iso_finite(&a, &c), Err(Error::SizeMismatch(8, 9)));
    }

    #[test]
    fn subbasis_examples() {
        let min = FinitePresentation::minimum();
        for (m, n) in [(0, 1), (2, 3), (5, 5)] {
            let p = subbasis_predicates(&min, m, n);
            assert!(p.u_mn && p.v_qn);
        }
        let luk = fp(&[((0, 1), (1, 1), L)]);
        assert!(!subbasis_predicates(&luk, 2, 2).v_qn);
        assert!(subbasis_predicates(&luk, 2, 4).w_mn);
    }

    #[test]
    fn dump_format() {
        let s = theta(&fp(&[((1, 2), (1, 1), P)]).into(), 6);
        assert_eq!(
            s.to_string(),
            "l1 v1 n=6 qualified=false\nrp: 4\nrl: \nrm: 0\nless: 0 4\n"
        );
    }
}
