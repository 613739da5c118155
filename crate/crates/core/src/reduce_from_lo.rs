//! From linear orders on ω to t-norms.
//!
//! Each index `n` receives a Product piece `I_n` of length `3^−(n+1)`,
//! centred in the gap left by the earlier pieces on either side of `n` in
//! the order. The map `n ↦ I_n` turns the order into the ≺-order of the
//! pieces, and orders that agree on `{0, …, N−1}` give t-norms within
//! `3^−N` of each other in the sup metric.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num::Signed;

use crate::error::{Error, Result};
use crate::numerics::{
    enumerate_rationals, inverse_power, min_index_in, Index, Rational, UnitRational,
};
use crate::reduce_to_l1::theta;
use crate::signature::{Label, SignatureEntry};
use crate::tnorm::{
    FinitePresentation, Locate, OrderCertificate, Piece, PieceGenerator, PieceKind, TNorm, Tri,
};

/// Computable orders on ω with a fixed description.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedOrder {
    /// `0 < 1 < 2 < …`
    Omega,
    /// `… < 2 < 1 < 0`
    OmegaStar,
    /// `n ↦ n/2` for even `n`, `n ↦ −(n+1)/2` for odd `n`, compared as integers.
    Zeta,
    /// `m < n` iff `q_{m+2} < q_{n+2}`: the interior rationals.
    Eta,
    /// Evens ascending, then odds descending.
    OmegaPlusOmegaStar,
}

impl NamedOrder {
    pub const ALL: [NamedOrder; 5] = [
        NamedOrder::Omega,
        NamedOrder::OmegaStar,
        NamedOrder::Zeta,
        NamedOrder::Eta,
        NamedOrder::OmegaPlusOmegaStar,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            NamedOrder::Omega => "omega",
            NamedOrder::OmegaStar => "omega_star",
            NamedOrder::Zeta => "zeta",
            NamedOrder::Eta => "eta",
            NamedOrder::OmegaPlusOmegaStar => "omega_plus_omega_star",
        }
    }

    fn zeta_image(n: usize) -> i64 {
        let n = n as i64;
        if n % 2 == 0 {
            n / 2
        } else {
            -(n + 1) / 2
        }
    }

    fn zeta_preimage(z: i64) -> usize {
        if z >= 0 {
            (2 * z) as usize
        } else {
            (-2 * z - 1) as usize
        }
    }

    pub fn cmp(self, m: usize, n: usize) -> Result<Ordering> {
        if m == n {
            return Err(Error::Precondition(format!(
                "cannot compare {m} with itself"
            )));
        }
        Ok(match self {
            NamedOrder::Omega => m.cmp(&n),
            NamedOrder::OmegaStar => n.cmp(&m),
            NamedOrder::Zeta => Self::zeta_image(m).cmp(&Self::zeta_image(n)),
            NamedOrder::Eta => {
                enumerate_rationals(m as Index + 2).cmp(&enumerate_rationals(n as Index + 2))
            }
            NamedOrder::OmegaPlusOmegaStar => match (m % 2, n % 2) {
                (0, 0) => m.cmp(&n),
                (1, 1) => n.cmp(&m),
                (0, _) => Ordering::Less,
                _ => Ordering::Greater,
            },
        })
    }

    pub fn minimum(self) -> Option<usize> {
        match self {
            NamedOrder::Omega | NamedOrder::OmegaPlusOmegaStar => Some(0),
            _ => None,
        }
    }

    pub fn maximum(self) -> Option<usize> {
        match self {
            NamedOrder::OmegaStar => Some(0),
            NamedOrder::OmegaPlusOmegaStar => Some(1),
            _ => None,
        }
    }

    /// The immediate successor of `m`, if any.
    pub fn successor(self, m: usize) -> Option<usize> {
        match self {
            NamedOrder::Omega => Some(m + 1),
            NamedOrder::OmegaStar => m.checked_sub(1),
            NamedOrder::Zeta => Some(Self::zeta_preimage(Self::zeta_image(m) + 1)),
            NamedOrder::Eta => None,
            NamedOrder::OmegaPlusOmegaStar => {
                if m.is_multiple_of(2) {
                    Some(m + 2)
                } else {
                    m.checked_sub(2)
                }
            }
        }
    }

    /// Some element has an immediate successor.
    pub fn has_successor_pair(self) -> bool {
        self != NamedOrder::Eta
    }
}

/// A strict linear order on ω, or on `{0, …, k−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LinearOrder {
    /// `ranks[i]` is the position of `i`; ranks are distinct.
    Finite(Vec<u64>),
    Named(NamedOrder),
}

impl LinearOrder {
    pub fn finite(ranks: Vec<u64>) -> Result<Self> {
        let mut sorted = ranks.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ranks.len() {
            return Err(Error::Precondition(
                "finite order ranks must be distinct".into(),
            ));
        }
        Ok(LinearOrder::Finite(ranks))
    }

    pub fn size(&self) -> Option<usize> {
        match self {
            LinearOrder::Finite(r) => Some(r.len()),
            LinearOrder::Named(_) => None,
        }
    }

    pub fn cmp(&self, m: usize, n: usize) -> Result<Ordering> {
        match self {
            LinearOrder::Named(o) => o.cmp(m, n),
            LinearOrder::Finite(ranks) => {
                if m == n {
                    return Err(Error::Precondition(format!(
                        "cannot compare {m} with itself"
                    )));
                }
                match (ranks.get(m), ranks.get(n)) {
                    (Some(a), Some(b)) => Ok(a.cmp(b)),
                    _ => Err(Error::Precondition(format!(
                        "indices {m}, {n} outside a finite order of size {}",
                        ranks.len()
                    ))),
                }
            }
        }
    }

    pub fn less(&self, m: usize, n: usize) -> Result<bool> {
        Ok(self.cmp(m, n)? == Ordering::Less)
    }

    /// Whether the two orders agree on every pair from `{0, …, n−1}`.
    pub fn agrees_with(&self, other: &LinearOrder, n: usize) -> Result<bool> {
        for a in 0..n {
            for b in a + 1..n {
                if self.cmp(a, b)? != other.cmp(a, b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl FromStr for LinearOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(list) = s.strip_prefix("finite:") {
            let ranks = list
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| {
                    x.trim().parse::<u64>().map_err(|_| Error::Parse {
                        line: 1,
                        message: format!("bad rank {x:?}"),
                    })
                })
                .collect::<Result<Vec<u64>>>()?;
            return LinearOrder::finite(ranks);
        }
        NamedOrder::ALL
            .into_iter()
            .find(|o| o.tag() == s)
            .map(LinearOrder::Named)
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("unknown order {s:?}"),
            })
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearOrder::Named(o) => f.write_str(o.tag()),
            LinearOrder::Finite(r) => {
                let list: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                write!(f, "finite:{}", list.join(","))
            }
        }
    }
}

/// The pieces `I_0, …, I_{N−1}` of an order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaIntervals {
    pub pieces: Vec<Piece>,
    pub order: LinearOrder,
    pub depth: usize,
}

impl fmt::Display for ThetaIntervals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pieces {
            writeln!(f, "({}, {})", p.lo(), p.hi())?;
        }
        Ok(())
    }
}

/// Next piece of the recurrence given the earlier ones.
fn next_piece(order: &LinearOrder, earlier: &[Piece]) -> Result<Piece> {
    let n = earlier.len();
    let mut x = Rational::from_integer(0.into());
    let mut y = Rational::from_integer(1.into());
    for (k, p) in earlier.iter().enumerate() {
        if order.less(k, n)? {
            if p.hi().value() > &x {
                x = p.hi().value().clone();
            }
        } else if p.lo().value() < &y {
            y = p.lo().value().clone();
        }
    }
    let half_width = inverse_power(3, n as u32 + 1) / Rational::from_integer(2.into());
    let mid = (x + y) / Rational::from_integer(2.into());
    let lo = UnitRational::new(&mid - &half_width)?;
    let hi = UnitRational::new(mid + half_width)?;
    Piece::new(lo, hi, PieceKind::Product)
}

/// `I_0 = (1/3, 2/3)`; for `n ≥ 1`, `I_n` has length `3^−(n+1)` and is
/// centred between `x_n`, the highest right end of an earlier piece below
/// `n`, and `y_n`, the lowest left end of an earlier piece above `n`.
pub fn build_intervals(order: &LinearOrder, n: usize) -> Result<ThetaIntervals> {
    if n == 0 {
        return Err(Error::Precondition("need at least one interval".into()));
    }
    if let Some(k) = order.size() {
        if n > k {
            return Err(Error::Precondition(format!(
                "finite order has only {k} elements"
            )));
        }
    }
    let mut pieces: Vec<Piece> = Vec::with_capacity(n);
    for _ in 0..n {
        let p = next_piece(order, &pieces)?;
        pieces.push(p);
    }
    Ok(ThetaIntervals {
        pieces,
        order: order.clone(),
        depth: n,
    })
}

/// `Σ_{n≥N} 3^−(n+1) = 3^−N / 2`.
pub fn theta_tail(n: usize) -> Rational {
    inverse_power(3, n as u32) / Rational::from_integer(2.into())
}

/// Lazy generator of the pieces of a named order.
#[derive(Debug)]
pub struct ThetaGenerator {
    order: NamedOrder,
    cache: Mutex<Vec<Piece>>,
}

impl ThetaGenerator {
    pub fn new(order: NamedOrder) -> Self {
        ThetaGenerator {
            order,
            cache: Mutex::new(Vec::new()),
        }
    }

    fn pieces(&self, count: usize) -> Vec<Piece> {
        let mut cache = self.cache.lock().expect("piece cache poisoned");
        let order = LinearOrder::Named(self.order);
        while cache.len() < count {
            let p = next_piece(&order, &cache).expect("named orders compare distinct indices");
            cache.push(p);
        }
        cache[..count].to_vec()
    }

    fn gaps(&self, depth: usize) -> Vec<(UnitRational, UnitRational)> {
        let pieces = self.pieces(depth);
        let mut gaps = Vec::new();
        if let Some(m) = self.order.minimum().filter(|&m| m < depth) {
            gaps.push((UnitRational::zero(), pieces[m].lo().clone()));
        }
        if let Some(m) = self.order.maximum().filter(|&m| m < depth) {
            gaps.push((pieces[m].hi().clone(), UnitRational::one()));
        }
        for (m, p) in pieces.iter().enumerate() {
            if let Some(s) = self.order.successor(m).filter(|&s| s < depth) {
                gaps.push((p.hi().clone(), pieces[s].lo().clone()));
            }
        }
        gaps.sort();
        gaps
    }

    /// A successor pair of the signature: a piece and the gap right above
    /// it, or the gap at 0 and the least piece.
    fn successor_witness(&self) -> Option<(SignatureEntry, SignatureEntry)> {
        let (m, s) = (0..64).find_map(|m| self.order.successor(m).map(|s| (m, s)))?;
        let depth = m.max(s) + 1;
        let pieces = self.pieces(depth);
        let gap = SignatureEntry::idempotent(pieces[m].hi().clone(), pieces[s].lo().clone());
        Some((SignatureEntry::from_piece(&pieces[m], m), gap))
    }
}

impl PieceGenerator for ThetaGenerator {
    fn family_key(&self) -> String {
        format!("theta {}", self.order.tag())
    }

    fn piece_at(&self, n: usize) -> Piece {
        self.pieces(n + 1).pop().expect("nonempty")
    }

    fn tail_length_bound(&self, n: usize) -> Rational {
        theta_tail(n)
    }

    fn locate(&self, q: &UnitRational, depth: usize) -> Locate {
        if q == &UnitRational::zero() || q == &UnitRational::one() {
            return Locate::Idempotent;
        }
        for (index, piece) in self.pieces(depth).into_iter().enumerate() {
            if piece.contains_open(q) {
                return Locate::InPiece { index, piece };
            }
            if piece.contains_closed(q) {
                return Locate::Idempotent;
            }
        }
        if self.gaps(depth).iter().any(|(lo, hi)| lo <= q && q <= hi) {
            return Locate::Idempotent;
        }
        Locate::UnknownAtDepth
    }

    fn order_certificate(&self, _depth: usize) -> OrderCertificate {
        let min_witness = self.order.minimum().map(|m| {
            let p = self.piece_at(m);
            SignatureEntry::idempotent(UnitRational::zero(), p.lo().clone())
        });
        let max_witness = self.order.maximum().map(|m| {
            let p = self.piece_at(m);
            SignatureEntry::idempotent(p.hi().clone(), UnitRational::one())
        });
        let successor_witness = self.successor_witness();
        OrderCertificate {
            uniform_label: None,
            has_min: Tri::from_bool(min_witness.is_some()),
            min_witness,
            has_max: Tri::from_bool(max_witness.is_some()),
            max_witness,
            dense: if successor_witness.is_some() {
                Tri::No
            } else {
                Tri::Unknown
            },
            successor_witness,
        }
    }

    fn certified_idempotent_intervals(&self, depth: usize) -> Vec<(UnitRational, UnitRational)> {
        self.gaps(depth)
    }

    fn has_idempotent_intervals(&self) -> Tri {
        let o = self.order;
        if o.minimum().is_some() || o.maximum().is_some() || o.has_successor_pair() {
            Tri::Yes
        } else {
            Tri::Unknown
        }
    }
}

/// The t-norm of an order: a finite ordinal sum for a finite order, a lazy
/// one (locating points among the first `depth` pieces) for a named order.
pub fn build_tnorm(order: &LinearOrder, depth: usize) -> Result<TNorm> {
    match order {
        LinearOrder::Finite(ranks) => {
            if ranks.is_empty() {
                return Ok(FinitePresentation::minimum().into());
            }
            let intervals = build_intervals(order, ranks.len())?;
            Ok(FinitePresentation::new(intervals.pieces)?.into())
        }
        LinearOrder::Named(o) => Ok(TNorm::lazy(Arc::new(ThetaGenerator::new(*o)), depth)),
    }
}

/// The sampled sup distance between two θ-images and the analytic bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallCheck {
    pub distance: Rational,
    pub bound: Rational,
}

impl BallCheck {
    pub fn within(&self) -> bool {
        self.distance <= self.bound
    }
}

fn deep_presentation(order: &LinearOrder, pieces: usize) -> Result<FinitePresentation> {
    let count = order.size().map_or(pieces, |k| k.min(pieces));
    if count == 0 {
        return Ok(FinitePresentation::minimum());
    }
    FinitePresentation::new(build_intervals(order, count)?.pieces)
}

/// Samples `|x *₁ y − x *₂ y|` on the lattice `{k/(grid−1)}²`, using the
/// first `n + 10` pieces of each t-norm, and compares the maximum with
/// `3^−n`. The orders must agree on `{0, …, n−1}`.
pub fn agreement_ball_check(
    o1: &LinearOrder,
    o2: &LinearOrder,
    n: usize,
    grid: u64,
) -> Result<BallCheck> {
    if grid < 2 {
        return Err(Error::Precondition("grid needs at least two points".into()));
    }
    for o in [o1, o2] {
        if o.size().is_some_and(|k| k < n) {
            return Err(Error::Precondition(format!(
                "order {o} has fewer than {n} elements"
            )));
        }
    }
    if !o1.agrees_with(o2, n)? {
        return Err(Error::Precondition(format!(
            "orders {o1} and {o2} disagree on the first {n} indices"
        )));
    }
    let t1 = deep_presentation(o1, n + 10)?;
    let t2 = deep_presentation(o2, n + 10)?;
    let points: Vec<UnitRational> = (0..grid)
        .map(|k| UnitRational::ratio(k, grid - 1))
        .collect();
    let mut distance = Rational::from_integer(0.into());
    for x in &points {
        for y in &points {
            let d = (t1.eval(x, y).value() - t2.eval(x, y).value()).abs();
            if d > distance {
                distance = d;
            }
        }
    }
    Ok(BallCheck {
        distance,
        bound: inverse_power(3, n as u32),
    })
}

/// Result of recovering an order from the structure of its t-norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    /// Piece indices in the order read off the structure.
    pub recovered: Vec<usize>,
    /// Piece indices sorted by the original order.
    pub expected: Vec<usize>,
    /// Size of the structure used.
    pub structure_size: Index,
    pub rl_empty: bool,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.rl_empty && self.recovered == self.expected
    }
}

impl fmt::Display for RoundTrip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "structure size {}", self.structure_size)?;
        writeln!(f, "expected: {}", list(&self.expected))?;
        writeln!(f, "recovered: {}", list(&self.recovered))?;
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Builds the t-norm of `order`, takes its structure on enough indices that
/// each of the first `n` pieces owns an element, and reads the order of
/// those pieces back from the `rp` elements and `less`.
pub fn round_trip(order: &LinearOrder, n: usize) -> Result<RoundTrip> {
    let intervals = build_intervals(order, n)?;
    let size = intervals
        .pieces
        .iter()
        .map(|p| min_index_in(p.lo(), p.hi(), false))
        .collect::<Result<Vec<Index>>>()?
        .into_iter()
        .max()
        .expect("at least one piece")
        + 1;
    let t = build_tnorm(order, n)?;
    let s = theta(&t, size);
    let recovered: Vec<usize> = s
        .active_in_order()
        .into_iter()
        .filter(|i| s.label_of(*i) == Some(Label::P))
        .filter_map(|i| {
            let q = enumerate_rationals(i);
            intervals.pieces.iter().position(|p| p.contains_open(&q))
        })
        .collect();
    let mut expected: Vec<usize> = (0..n).collect();
    let mut err = None;
    expected.sort_by(|&a, &b| {
        if a == b {
            return Ordering::Equal;
        }
        order.cmp(a, b).unwrap_or_else(|e| {
            err = Some(e);
            Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(RoundTrip {
        recovered,
        expected,
        structure_size: size,
        rl_empty: s.rl.is_empty(),
    })
}
