//! Continuous t-norms as ordinal sums of Product and Łukasiewicz pieces.
//!
//! A t-norm is given by a family of pairwise disjoint open intervals, each
//! carrying a rescaled copy of the product or the Łukasiewicz t-norm.
//! Everywhere else the operation is the minimum. Finite families are stored
//! explicitly ([`FinitePresentation`]); countable ones are produced lazily
//! by a [`PieceGenerator`] and evaluated on finite truncations with a
//! certified error bound.

mod axioms;
mod limit;

use std::fmt;
use std::sync::Arc;

use num::{One, Signed};

use crate::error::{Error, Result};
use crate::numerics::{Rational, UnitRational};
use crate::signature::{Label, SignatureEntry};

pub use axioms::{check_axioms, check_axioms_with, AxiomReport, Violation};
pub use limit::{LimitLeft, LimitRight};

/// The two non-idempotent building blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceKind {
    Product,
    Lukasiewicz,
}

impl PieceKind {
    pub fn symbol(self) -> &'static str {
        match self {
            PieceKind::Product => "P",
            PieceKind::Lukasiewicz => "L",
        }
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One summand `[lo, hi]` of an ordinal sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    lo: UnitRational,
    hi: UnitRational,
    kind: PieceKind,
}

impl Piece {
    pub fn new(lo: UnitRational, hi: UnitRational, kind: PieceKind) -> Result<Self> {
        if lo >= hi {
            return Err(Error::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Piece { lo, hi, kind })
    }

    pub fn lo(&self) -> &UnitRational {
        &self.lo
    }

    pub fn hi(&self) -> &UnitRational {
        &self.hi
    }

    pub fn kind(&self) -> PieceKind {
        self.kind
    }

    pub fn length(&self) -> Rational {
        self.hi.value() - self.lo.value()
    }

    pub fn contains_open(&self, q: &Rational) -> bool {
        self.lo.value() < q && q < self.hi.value()
    }

    pub fn contains_closed(&self, q: &Rational) -> bool {
        self.lo.value() <= q && q <= self.hi.value()
    }

    /// The piece's operation on two points of `[lo, hi]`.
    pub fn apply(&self, x: &Rational, y: &Rational) -> Rational {
        let lo = self.lo.value();
        let hi = self.hi.value();
        match self.kind {
            PieceKind::Product => lo + (x - lo) * (y - lo) / (hi - lo),
            PieceKind::Lukasiewicz => {
                let v = x + y - hi;
                if &v > lo {
                    v
                } else {
                    lo.clone()
                }
            }
        }
    }

    /// `q * q * … * q` (`l` factors) for `q` in `[lo, hi]`, in closed form.
    pub fn power(&self, q: &Rational, l: u64) -> Rational {
        assert!(l >= 1);
        let lo = self.lo.value();
        let hi = self.hi.value();
        match self.kind {
            PieceKind::Product => {
                let width = hi - lo;
                let excess = q - lo;
                lo + num::pow(excess, l as usize) / num::pow(width, (l - 1) as usize)
            }
            PieceKind::Lukasiewicz => {
                let v = hi - Rational::from_integer(l.into()) * (hi - q);
                if &v > lo {
                    v
                } else {
                    lo.clone()
                }
            }
        }
    }

    /// Least `l` with `q^(l) = lo`: `⌈(hi − lo)/(hi − q)⌉` on a Łukasiewicz
    /// piece, `None` on a Product piece, for interior `q`.
    pub fn nilpotency_index(&self, q: &Rational) -> Option<u64> {
        if !self.contains_open(q) {
            return None;
        }
        match self.kind {
            PieceKind::Product => None,
            PieceKind::Lukasiewicz => {
                let ratio = self.length() / (self.hi.value() - q);
                let l = ratio.ceil().to_integer();
                Some(u64::try_from(l).expect("nilpotency index exceeds u64"))
            }
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) {}", self.lo, self.hi, self.kind)
    }
}

/// Where a point sits relative to the pieces of a t-norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locate {
    /// Strictly inside piece number `index`.
    InPiece { index: usize, piece: Piece },
    /// Outside every open piece.
    Idempotent,
    /// Not resolvable at the configured depth.
    UnknownAtDepth,
}

/// Three-valued answer used by structural certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

/// Certified facts about the ≺-order of a t-norm's signature.
///
/// Every `Yes`/`No` holds for the full (infinite) signature, never just for
/// a prefix. Witnesses name the entries that establish a `Yes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCertificate {
    /// Every signature entry carries this label.
    pub uniform_label: Option<Label>,
    pub has_min: Tri,
    pub min_witness: Option<SignatureEntry>,
    pub has_max: Tri,
    pub max_witness: Option<SignatureEntry>,
    pub dense: Tri,
    /// Two entries with nothing between them.
    pub successor_witness: Option<(SignatureEntry, SignatureEntry)>,
}

impl OrderCertificate {
    pub fn unknown() -> Self {
        OrderCertificate {
            uniform_label: None,
            has_min: Tri::Unknown,
            min_witness: None,
            has_max: Tri::Unknown,
            max_witness: None,
            dense: Tri::Unknown,
            successor_witness: None,
        }
    }

    /// Dense and without endpoints.
    pub fn dense_no_endpoints(&self) -> Tri {
        match (self.dense, self.has_min, self.has_max) {
            (Tri::Yes, Tri::No, Tri::No) => Tri::Yes,
            (Tri::No, _, _) | (_, Tri::Yes, _) | (_, _, Tri::Yes) => Tri::No,
            _ => Tri::Unknown,
        }
    }
}

/// A countable ordinal sum produced piece by piece.
///
/// Implementations must be deterministic: `piece_at(n)` always returns the
/// same piece, and distinct indices give disjoint pieces.
pub trait PieceGenerator: fmt::Debug + Send + Sync {
    /// Identifies the family and its parameters; equal keys mean equal t-norms.
    fn family_key(&self) -> String;

    fn piece_at(&self, n: usize) -> Piece;

    /// Number of pieces enumerated up to the generator's own notion of depth.
    fn pieces_at_depth(&self, depth: usize) -> usize {
        depth
    }

    /// An upper bound on the total length of pieces `n, n+1, …`; tends to 0.
    fn tail_length_bound(&self, n: usize) -> Rational;

    fn locate(&self, q: &UnitRational, depth: usize) -> Locate;

    fn order_certificate(&self, depth: usize) -> OrderCertificate;

    /// Maximal open intervals of idempotents known at this depth.
    fn certified_idempotent_intervals(&self, _depth: usize) -> Vec<(UnitRational, UnitRational)> {
        Vec::new()
    }

    /// `false` when the t-norm provably has no open interval of idempotents.
    fn has_idempotent_intervals(&self) -> Tri;
}

/// A finite ordinal sum; pieces are sorted and pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinitePresentation {
    pieces: Vec<Piece>,
}

impl FinitePresentation {
    pub fn new(mut pieces: Vec<Piece>) -> Result<Self> {
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
        for pair in pieces.windows(2) {
            if pair[0].hi > pair[1].lo {
                return Err(Error::Overlap(pair[0].to_string(), pair[1].to_string()));
            }
        }
        Ok(FinitePresentation { pieces })
    }

    /// The minimum t-norm: no pieces at all.
    pub fn minimum() -> Self {
        FinitePresentation { pieces: Vec::new() }
    }

    pub fn single(lo: UnitRational, hi: UnitRational, kind: PieceKind) -> Result<Self> {
        Ok(FinitePresentation {
            pieces: vec![Piece::new(lo, hi, kind)?],
        })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Last piece whose closure contains `q`.
    fn closed_piece(&self, q: &Rational) -> Option<&Piece> {
        let i = self.pieces.partition_point(|p| p.lo.value() <= q);
        if i == 0 {
            return None;
        }
        let p = &self.pieces[i - 1];
        p.contains_closed(q).then_some(p)
    }

    pub fn locate(&self, q: &UnitRational) -> Locate {
        let i = self.pieces.partition_point(|p| p.lo.value() < q.value());
        if i > 0 && self.pieces[i - 1].contains_open(q) {
            return Locate::InPiece {
                index: i - 1,
                piece: self.pieces[i - 1].clone(),
            };
        }
        Locate::Idempotent
    }

    /// Exact value of `x * y`.
    pub fn eval(&self, x: &UnitRational, y: &UnitRational) -> UnitRational {
        UnitRational::new_unchecked(self.eval_raw(x, y))
    }

    fn eval_raw(&self, x: &Rational, y: &Rational) -> Rational {
        if let Some(p) = self.closed_piece(x) {
            if p.contains_closed(y) {
                return p.apply(x, y);
            }
        }
        x.min(y).clone()
    }

    pub fn is_idempotent(&self, q: &UnitRational) -> bool {
        matches!(self.locate(q), Locate::Idempotent)
    }

    pub fn power(&self, q: &UnitRational, l: u64) -> UnitRational {
        assert!(l >= 1, "power needs at least one factor");
        match self.locate(q) {
            Locate::InPiece { piece, .. } => UnitRational::new_unchecked(piece.power(q, l)),
            _ => q.clone(),
        }
    }
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tnorm v1")?;
        for p in &self.pieces {
            writeln!(f, "piece {} {} {}", p.lo, p.hi, p.kind)?;
        }
        Ok(())
    }
}

/// A value together with a bound on its distance to the true value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub value: UnitRational,
    pub error_bound: Rational,
}

/// A generator plus the depth used whenever a point must be located.
#[derive(Clone, Debug)]
pub struct LazyTNorm {
    generator: Arc<dyn PieceGenerator>,
    depth: usize,
}

impl LazyTNorm {
    pub fn new(generator: Arc<dyn PieceGenerator>, depth: usize) -> Self {
        LazyTNorm { generator, depth }
    }

    pub fn generator(&self) -> &dyn PieceGenerator {
        self.generator.as_ref()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn with_depth(&self, depth: usize) -> Self {
        LazyTNorm {
            generator: Arc::clone(&self.generator),
            depth,
        }
    }

    pub fn locate(&self, q: &UnitRational) -> Locate {
        self.generator.locate(q, self.depth)
    }

    /// The finite ordinal sum of pieces `0..n`.
    pub fn truncation(&self, n: usize) -> FinitePresentation {
        let pieces = (0..n).map(|i| self.generator.piece_at(i)).collect();
        FinitePresentation::new(pieces).expect("generator produced overlapping pieces")
    }

    /// Evaluates on the first `n` pieces. The reported bound is twice the
    /// tail length: outside the dropped pieces the values agree exactly, and
    /// inside a dropped piece both values lie in that piece.
    pub fn eval_approx(
        &self,
        x: &UnitRational,
        y: &UnitRational,
        n: usize,
    ) -> Result<Approximation> {
        if n == 0 {
            return Err(Error::EmptyTruncation);
        }
        let value = self.truncation(n).eval(x, y);
        let error_bound = Rational::from_integer(2.into()) * self.generator.tail_length_bound(n);
        Ok(Approximation { value, error_bound })
    }
}

/// A continuous t-norm, finite or lazily generated.
#[derive(Clone, Debug)]
pub enum TNorm {
    Finite(FinitePresentation),
    Lazy(LazyTNorm),
}

/// Outcome of searching for an idempotent power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventualIdempotence {
    Yes(u64),
    No,
    Unknown,
}

impl TNorm {
    pub fn lazy(generator: Arc<dyn PieceGenerator>, depth: usize) -> Self {
        TNorm::Lazy(LazyTNorm::new(generator, depth))
    }

    pub fn as_finite(&self) -> Option<&FinitePresentation> {
        match self {
            TNorm::Finite(p) => Some(p),
            TNorm::Lazy(_) => None,
        }
    }

    pub fn locate(&self, q: &UnitRational) -> Locate {
        match self {
            TNorm::Finite(p) => p.locate(q),
            TNorm::Lazy(l) => l.locate(q),
        }
    }

    /// Exact `x * y`. On a lazy t-norm this succeeds whenever one of the two
    /// arguments can be located.
    pub fn eval(&self, x: &UnitRational, y: &UnitRational) -> Result<UnitRational> {
        match self {
            TNorm::Finite(p) => Ok(p.eval(x, y)),
            TNorm::Lazy(lazy) => {
                for (a, b) in [(x, y), (y, x)] {
                    match lazy.locate(a) {
                        Locate::InPiece { piece, .. } => {
                            let v = if piece.contains_closed(b) {
                                piece.apply(a, b)
                            } else {
                                a.value().min(b.value()).clone()
                            };
                            return Ok(UnitRational::new_unchecked(v));
                        }
                        Locate::Idempotent => return Ok(a.clone().min(b.clone())),
                        Locate::UnknownAtDepth => continue,
                    }
                }
                Err(Error::UnknownAtDepth {
                    point: x.to_string(),
                    depth: lazy.depth,
                })
            }
        }
    }

    pub fn is_idempotent(&self, q: &UnitRational) -> Result<bool> {
        match self.locate(q) {
            Locate::InPiece { .. } => Ok(false),
            Locate::Idempotent => Ok(true),
            Locate::UnknownAtDepth => Err(self.unknown(q)),
        }
    }

    pub fn power(&self, q: &UnitRational, l: u64) -> Result<UnitRational> {
        if l == 0 {
            return Err(Error::Precondition(
                "power needs at least one factor".into(),
            ));
        }
        match self.locate(q) {
            Locate::InPiece { piece, .. } => Ok(UnitRational::new_unchecked(piece.power(q, l))),
            Locate::Idempotent => Ok(q.clone()),
            Locate::UnknownAtDepth => Err(self.unknown(q)),
        }
    }

    /// Least `l <= max_power` with an idempotent `l`-th power; past the bound
    /// the piece kind decides (Product powers never reach the bottom,
    /// Łukasiewicz powers do at the closed-form index).
    pub fn is_eventually_idempotent_power(
        &self,
        q: &UnitRational,
        max_power: u64,
    ) -> EventualIdempotence {
        let piece = match self.locate(q) {
            Locate::Idempotent => return EventualIdempotence::Yes(1),
            Locate::UnknownAtDepth => return EventualIdempotence::Unknown,
            Locate::InPiece { piece, .. } => piece,
        };
        let mut current = q.clone();
        for l in 1..=max_power {
            if l > 1 {
                current = UnitRational::new_unchecked(piece.apply(&current, q));
            }
            match self.is_idempotent(&current) {
                Ok(true) => return EventualIdempotence::Yes(l),
                Ok(false) => {}
                Err(_) => return EventualIdempotence::Unknown,
            }
        }
        match piece.kind() {
            PieceKind::Product => EventualIdempotence::No,
            PieceKind::Lukasiewicz => {
                EventualIdempotence::Yes(piece.nilpotency_index(q).expect("q is interior"))
            }
        }
    }

    /// Decides the kind of the piece `(lo, hi)` from the operation alone: a
    /// Łukasiewicz piece drives every interior point to `lo` within
    /// `⌈(hi−lo)/(hi−q)⌉` steps, a Product piece never reaches `lo`.
    pub fn classify_piece_empirically(
        &self,
        lo: &UnitRational,
        hi: &UnitRational,
        samples: u64,
    ) -> Result<PieceKind> {
        if lo >= hi || samples == 0 {
            return Err(Error::Precondition(
                "need lo < hi and at least one sample".into(),
            ));
        }
        let width = hi.value() - lo.value();
        let steps = Rational::from_integer((samples + 1).into());
        for k in 1..=samples {
            let q = UnitRational::new_unchecked(
                lo.value() + &width * Rational::from_integer(k.into()) / &steps,
            );
            let bound = (&width / (hi.value() - q.value())).ceil().to_integer();
            let bound = u64::try_from(bound).expect("bound exceeds u64");
            let mut current = q.clone();
            let mut reached = false;
            for _ in 1..bound {
                current = self.eval(&current, &q)?;
                if &current == lo {
                    reached = true;
                    break;
                }
            }
            // bound == 1 cannot happen for interior q, but keep the check total
            if !reached && bound <= 1 && &current == lo {
                reached = true;
            }
            if !reached {
                return Ok(PieceKind::Product);
            }
        }
        Ok(PieceKind::Lukasiewicz)
    }

    fn unknown(&self, q: &UnitRational) -> Error {
        Error::UnknownAtDepth {
            point: q.to_string(),
            depth: match self {
                TNorm::Finite(_) => 0,
                TNorm::Lazy(l) => l.depth,
            },
        }
    }
}

impl From<FinitePresentation> for TNorm {
    fn from(p: FinitePresentation) -> Self {
        TNorm::Finite(p)
    }
}

pub(crate) fn is_unit(r: &Rational) -> bool {
    !r.is_negative() && r <= &Rational::one()
}
