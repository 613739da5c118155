//! Cantor systems and the t-norms built on their removed intervals.
//!
//! A Cantor system assigns to every finite binary word `u` a closed interval
//! `J_u`, with `J_∅ = [0, 1]` and two disjoint children `J_u0`, `J_u1` inside
//! `J_u`. The open intervals removed at each node become Product pieces; the
//! limit set is the set of non-trivial idempotents.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{inverse_power, Rational, UnitRational};
use crate::signature::{Label, SignatureEntry};
use crate::tnorm::{Locate, OrderCertificate, Piece, PieceGenerator, PieceKind, Tri};

/// Expansions deeper than this are refused.
pub const MAX_DEPTH: usize = 16;

/// The shipped construction rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CantorRule {
    /// Remove the open middle third.
    MiddleThird,
    /// At level `n`, remove a centred open interval of length `4^−(n+1)`.
    Svc,
    /// Children `[l + w/4, l + w/2]` and `[l + 3w/4, l + w]` of `[l, l + w]`.
    NonE,
}

impl CantorRule {
    pub const ALL: [CantorRule; 3] = [CantorRule::MiddleThird, CantorRule::Svc, CantorRule::NonE];

    pub fn spec(self) -> &'static str {
        match self {
            CantorRule::MiddleThird => "cantor:middle-third",
            CantorRule::Svc => "cantor:svc",
            CantorRule::NonE => "cantor:non-e",
        }
    }

    /// Removed intervals per node.
    pub fn gaps_per_node(self) -> usize {
        match self {
            CantorRule::NonE => 2,
            _ => 1,
        }
    }

    /// `l(J_u0) = l(J_u)` for every `u`.
    pub fn keeps_left_endpoint(self) -> bool {
        self != CantorRule::NonE
    }

    /// `r(J_u1) = r(J_u)` for every `u`.
    pub fn keeps_right_endpoint(self) -> bool {
        true
    }

    /// The two children of `[l, r]` at the given level.
    fn children(self, l: &Rational, r: &Rational, level: usize) -> [(Rational, Rational); 2] {
        let w = r - l;
        let frac = |p: i64, q: i64| l + &w * crate::numerics::ratio(p, q);
        match self {
            CantorRule::MiddleThird => [(l.clone(), frac(1, 3)), (frac(2, 3), r.clone())],
            CantorRule::Svc => {
                let half_gap =
                    inverse_power(4, level as u32 + 1) / Rational::from_integer(2.into());
                let mid = frac(1, 2);
                [(l.clone(), &mid - &half_gap), (mid + half_gap, r.clone())]
            }
            CantorRule::NonE => [(frac(1, 4), frac(1, 2)), (frac(3, 4), r.clone())],
        }
    }

    /// Open intervals removed from `[l, r]`, left to right.
    fn node_gaps(self, l: &Rational, r: &Rational, level: usize) -> Vec<(Rational, Rational)> {
        let [(a0, b0), (a1, b1)] = self.children(l, r, level);
        let mut gaps = Vec::with_capacity(2);
        if l < &a0 {
            gaps.push((l.clone(), a0));
        }
        gaps.push((b0, a1.clone()));
        if &b1 < r {
            gaps.push((b1, r.clone()));
        }
        gaps
    }

    /// Length of one removed interval at `level`.
    fn gap_length(self, level: usize) -> Rational {
        match self {
            CantorRule::MiddleThird => inverse_power(3, level as u32 + 1),
            CantorRule::Svc | CantorRule::NonE => inverse_power(4, level as u32 + 1),
        }
    }

    /// Total length removed at levels `≥ level`.
    fn tail_from_level(self, level: usize) -> Rational {
        match self {
            CantorRule::MiddleThird => num::pow(crate::numerics::ratio(2, 3), level),
            CantorRule::Svc => inverse_power(2, level as u32 + 1),
            CantorRule::NonE => inverse_power(2, level as u32),
        }
    }
}

impl FromStr for CantorRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bare = s.strip_prefix("cantor:").unwrap_or(s);
        CantorRule::ALL
            .into_iter()
            .find(|r| r.spec().strip_prefix("cantor:") == Some(bare))
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("unknown Cantor system {s:?}"),
            })
    }
}

impl fmt::Display for CantorRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.spec())
    }
}

/// A Cantor system given by one of the shipped rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CantorSystem {
    pub rule: CantorRule,
}

impl CantorSystem {
    pub fn new(rule: CantorRule) -> Self {
        CantorSystem { rule }
    }

    /// The interval `J_u` of the node at `level` with left-to-right index `node`.
    pub fn interval(&self, level: usize, node: usize) -> (Rational, Rational) {
        let mut l = Rational::from_integer(0.into());
        let mut r = Rational::from_integer(1.into());
        for k in 0..level {
            let bit = (node >> (level - 1 - k)) & 1;
            let child = self.rule.children(&l, &r, k)[bit].clone();
            l = child.0;
            r = child.1;
        }
        (l, r)
    }

    /// Number of removed intervals from nodes of level `< depth`.
    pub fn gaps_before_level(&self, depth: usize) -> usize {
        self.rule.gaps_per_node() * ((1usize << depth) - 1)
    }

    /// Level, node and position within the node of removed interval `n`.
    fn decode(&self, n: usize) -> (usize, usize, usize) {
        let g = self.rule.gaps_per_node();
        let mut level = 0;
        while self.gaps_before_level(level + 1) <= n {
            level += 1;
        }
        let offset = n - self.gaps_before_level(level);
        (level, offset / g, offset % g)
    }

    fn encode(&self, level: usize, node: usize, j: usize) -> usize {
        self.gaps_before_level(level) + self.rule.gaps_per_node() * node + j
    }

    pub fn gap(&self, n: usize) -> (Rational, Rational) {
        let (level, node, j) = self.decode(n);
        let (l, r) = self.interval(level, node);
        self.rule.node_gaps(&l, &r, level)[j].clone()
    }
}

/// Removed open intervals up to a depth, ≺-sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCollection {
    pub gaps: Vec<(UnitRational, UnitRational)>,
    pub depth: usize,
}

impl fmt::Display for GapCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gaps depth={}", self.depth)?;
        for (lo, hi) in &self.gaps {
            writeln!(f, "( {lo} , {hi} )")?;
        }
        Ok(())
    }
}

/// All intervals `J_u` with `|u| ≤ depth` and the gaps removed before `depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    /// `levels[k]` lists the `J_u` with `|u| = k`, left to right.
    pub levels: Vec<Vec<(UnitRational, UnitRational)>>,
    pub gaps: GapCollection,
}

fn unit(r: Rational) -> UnitRational {
    UnitRational::new(r).expect("Cantor intervals stay inside [0, 1]")
}

pub fn expand(system: &CantorSystem, depth: usize) -> Result<Expansion> {
    if depth > MAX_DEPTH {
        return Err(Error::Precondition(format!(
            "expansion depth {depth} exceeds {MAX_DEPTH}"
        )));
    }
    let mut levels: Vec<Vec<(Rational, Rational)>> = vec![vec![(
        Rational::from_integer(0.into()),
        Rational::from_integer(1.into()),
    )]];
    let mut gaps = Vec::new();
    for level in 0..depth {
        let mut next = Vec::with_capacity(2 * levels[level].len());
        for (l, r) in &levels[level] {
            gaps.extend(system.rule.node_gaps(l, r, level));
            next.extend(system.rule.children(l, r, level));
        }
        levels.push(next);
    }
    gaps.sort();
    Ok(Expansion {
        levels: levels
            .into_iter()
            .map(|lv| lv.into_iter().map(|(l, r)| (unit(l), unit(r))).collect())
            .collect(),
        gaps: GapCollection {
            gaps: gaps.into_iter().map(|(l, r)| (unit(l), unit(r))).collect(),
            depth,
        },
    })
}

/// Every parent shares its left endpoint with its left child and its right
/// endpoint with its right child, for all nodes above `depth`.
pub fn has_property_e(system: &CantorSystem, depth: usize) -> Result<bool> {
    let e = expand(system, depth)?;
    for level in 0..depth {
        for (i, (l, r)) in e.levels[level].iter().enumerate() {
            let left = &e.levels[level + 1][2 * i];
            let right = &e.levels[level + 1][2 * i + 1];
            if &left.0 != l || &right.1 != r {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Certified facts about the ≺-order of the removed intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapOrderAnalysis {
    pub dense: Tri,
    pub has_min: Tri,
    pub min_witness: Option<(UnitRational, UnitRational)>,
    pub has_max: Tri,
    pub max_witness: Option<(UnitRational, UnitRational)>,
    pub successor_witness: Option<((UnitRational, UnitRational), (UnitRational, UnitRational))>,
}

impl fmt::Display for GapOrderAnalysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "dense={} min={} max={}",
            self.dense, self.has_min, self.has_max
        )?;
        if let Some((lo, hi)) = &self.min_witness {
            writeln!(f, "min ( {lo} , {hi} )")?;
        }
        if let Some((lo, hi)) = &self.max_witness {
            writeln!(f, "max ( {lo} , {hi} )")?;
        }
        if let Some(((a, b), (c, d))) = &self.successor_witness {
            writeln!(f, "successor ( {a} , {b} ) ( {c} , {d} )")?;
        }
        Ok(())
    }
}

/// Reads off the order facts that no deeper expansion can change.
///
/// A removed interval touching 0 (or 1) is ≺-least (greatest) for good.
/// When every node keeps its left endpoint, each removed interval has the
/// left child of its node, and hence further removed intervals, below it, so
/// there is no least one; likewise on the right. Two removed intervals
/// sharing an endpoint have nothing between them. When both endpoints are
/// kept at every node, between any two removed intervals lies a child
/// interval that is itself cut, so the order is dense.
pub fn analyze_gap_order(system: &CantorSystem, depth: usize) -> Result<GapOrderAnalysis> {
    let e = expand(system, depth.max(2))?;
    let gaps = &e.gaps.gaps;
    let zero = UnitRational::zero();
    let one = UnitRational::one();
    let min_witness = gaps.iter().find(|(lo, _)| lo == &zero).cloned();
    let max_witness = gaps.iter().find(|(_, hi)| hi == &one).cloned();
    let has_min = if min_witness.is_some() {
        Tri::Yes
    } else if system.rule.keeps_left_endpoint() {
        Tri::No
    } else {
        Tri::Unknown
    };
    let has_max = if max_witness.is_some() {
        Tri::Yes
    } else if system.rule.keeps_right_endpoint() {
        Tri::No
    } else {
        Tri::Unknown
    };
    let successor_witness = gaps
        .windows(2)
        .find(|w| w[0].1 == w[1].0)
        .map(|w| (w[0].clone(), w[1].clone()));
    let dense = if successor_witness.is_some() {
        Tri::No
    } else if system.rule.keeps_left_endpoint() && system.rule.keeps_right_endpoint() {
        Tri::Yes
    } else {
        Tri::Unknown
    };
    Ok(GapOrderAnalysis {
        dense,
        has_min,
        min_witness,
        has_max,
        max_witness,
        successor_witness,
    })
}

/// The ordinal sum with a Product piece on every removed interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CantorGenerator {
    system: CantorSystem,
}

impl CantorGenerator {
    pub fn new(system: CantorSystem) -> Self {
        CantorGenerator { system }
    }

    pub fn system(&self) -> &CantorSystem {
        &self.system
    }

    fn entry(&self, lo: &UnitRational, hi: &UnitRational) -> SignatureEntry {
        let index = self.index_of_gap(lo.value(), hi.value());
        SignatureEntry {
            lo: lo.clone(),
            hi: hi.clone(),
            label: Label::P,
            piece_index: index,
        }
    }

    fn index_of_gap(&self, lo: &Rational, hi: &Rational) -> Option<usize> {
        let mid = UnitRational::new((lo + hi) / Rational::from_integer(2.into())).ok()?;
        match self.locate(&mid, MAX_DEPTH) {
            Locate::InPiece { index, .. } => Some(index),
            _ => None,
        }
    }
}

/// `t-norm *_A` of a Cantor system.
pub fn build_tnorm_a(system: CantorSystem, depth: usize) -> crate::tnorm::TNorm {
    crate::tnorm::TNorm::lazy(std::sync::Arc::new(CantorGenerator::new(system)), depth)
}

impl PieceGenerator for CantorGenerator {
    fn family_key(&self) -> String {
        self.system.rule.spec().into()
    }

    fn piece_at(&self, n: usize) -> Piece {
        let (lo, hi) = self.system.gap(n);
        Piece::new(unit(lo), unit(hi), PieceKind::Product).expect("removed intervals are nonempty")
    }

    fn pieces_at_depth(&self, depth: usize) -> usize {
        self.system.gaps_before_level(depth.min(MAX_DEPTH))
    }

    fn tail_length_bound(&self, n: usize) -> Rational {
        let (level, node, j) = self.system.decode(n);
        let rule = self.system.rule;
        let remaining_in_level =
            self.system.gaps_before_level(level + 1) - self.system.encode(level, node, j);
        rule.tail_from_level(level + 1)
            + rule.gap_length(level) * Rational::from_integer(remaining_in_level.into())
    }

    /// Descends through the nodes containing `q`: an endpoint of some `J_u`
    /// is idempotent, a point of a removed interval is in that piece, and a
    /// point still inside a child at `depth` is unresolved.
    fn locate(&self, q: &UnitRational, depth: usize) -> Locate {
        let q = q.value();
        let rule = self.system.rule;
        let mut l = Rational::from_integer(0.into());
        let mut r = Rational::from_integer(1.into());
        let mut node = 0usize;
        if q == &l || q == &r {
            return Locate::Idempotent;
        }
        for level in 0..depth {
            let children = rule.children(&l, &r, level);
            if children.iter().any(|(a, b)| a == q || b == q) {
                return Locate::Idempotent;
            }
            for (j, (lo, hi)) in rule.node_gaps(&l, &r, level).into_iter().enumerate() {
                if &lo < q && q < &hi {
                    let index = self.system.encode(level, node, j);
                    let piece =
                        Piece::new(unit(lo), unit(hi), PieceKind::Product).expect("nonempty");
                    return Locate::InPiece { index, piece };
                }
            }
            let bit = usize::from(&children[1].0 <= q);
            let (a, b) = children[bit].clone();
            l = a;
            r = b;
            node = 2 * node + bit;
        }
        Locate::UnknownAtDepth
    }

    fn order_certificate(&self, depth: usize) -> OrderCertificate {
        let a = analyze_gap_order(&self.system, depth.min(MAX_DEPTH)).expect("depth clamped");
        OrderCertificate {
            uniform_label: Some(Label::P),
            has_min: a.has_min,
            min_witness: a.min_witness.as_ref().map(|(lo, hi)| self.entry(lo, hi)),
            has_max: a.has_max,
            max_witness: a.max_witness.as_ref().map(|(lo, hi)| self.entry(lo, hi)),
            dense: a.dense,
            successor_witness: a
                .successor_witness
                .as_ref()
                .map(|(x, y)| (self.entry(&x.0, &x.1), self.entry(&y.0, &y.1))),
        }
    }

    fn has_idempotent_intervals(&self) -> Tri {
        Tri::No
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    fn u(p: u64, q: u64) -> UnitRational {
        UnitRational::ratio(p, q)
    }

    fn sys(rule: CantorRule) -> CantorSystem {
        CantorSystem::new(rule)
    }

    #[test]
    fn expansion_examples() {
        let e = expand(&sys(CantorRule::MiddleThird), 1).unwrap();
        assert_eq!(e.levels[1], vec![(u(0, 1), u(1, 3)), (u(2, 3), u(1, 1))]);
        assert_eq!(e.gaps.gaps, vec![(u(1, 3), u(2, 3))]);
        let e = expand(&sys(CantorRule::MiddleThird), 2).unwrap();
        assert_eq!(
            e.gaps.gaps,
            vec![(u(1, 9), u(2, 9)), (u(1, 3), u(2, 3)), (u(7, 9), u(8, 9))]
        );
        let e = expand(&sys(CantorRule::NonE), 1).unwrap();
        assert_eq!(e.levels[1], vec![(u(1, 4), u(1, 2)), (u(3, 4), u(1, 1))]);
        assert_eq!(e.gaps.gaps, vec![(u(0, 1), u(1, 4)), (u(1, 2), u(3, 4))]);
        assert!(expand(&sys(CantorRule::Svc), MAX_DEPTH + 1).is_err());
    }

    #[test]
    fn property_e_examples() {
        assert!(has_property_e(&sys(CantorRule::MiddleThird), 6).unwrap());
        assert!(has_property_e(&sys(CantorRule::Svc), 6).unwrap());
        assert!(!has_property_e(&sys(CantorRule::NonE), 1).unwrap());
    }

    #[test]
    fn locate_examples() {
        let g = CantorGenerator::new(sys(CantorRule::MiddleThird));
        assert_eq!(
            g.locate(&u(1, 2), 8),
            Locate::InPiece {
                index: 0,
                piece: Piece::new(u(1, 3), u(2, 3), PieceKind::Product).unwrap()
            }
        );
        assert_eq!(g.locate(&u(0, 1), 8), Locate::Idempotent);
        assert_eq!(g.locate(&u(1, 4), 8), Locate::UnknownAtDepth);
        assert_eq!(g.locate(&u(2, 9), 1), Locate::UnknownAtDepth);
        assert_eq!(g.locate(&u(2, 9), 2), Locate::Idempotent);
    }

    #[test]
    fn piece_index_round_trips_through_locate() {
        for rule in CantorRule::ALL {
            let g = CantorGenerator::new(sys(rule));
            for n in 0..g.pieces_at_depth(5) {
                let p = g.piece_at(n);
                let mid =
                    UnitRational::new((p.lo().value() + p.hi().value()) / ratio(2, 1)).unwrap();
                assert_eq!(g.locate(&mid, 6), Locate::InPiece { index: n, piece: p });
            }
        }
    }

    #[test]
    fn enumeration_matches_expansion() {
        for rule in CantorRule::ALL {
            let g = CantorGenerator::new(sys(rule));
            let mut from_generator: Vec<_> = (0..g.pieces_at_depth(4))
                .map(|n| {
                    let p = g.piece_at(n);
                    (p.lo().clone(), p.hi().clone())
                })
                .collect();
            from_generator.sort();
            assert_eq!(from_generator, expand(&sys(rule), 4).unwrap().gaps.gaps);
        }
    }

    #[test]
    fn tail_bound_is_exact() {
        for rule in CantorRule::ALL {
            let g = CantorGenerator::new(sys(rule));
            let total = g.pieces_at_depth(7);
            for n in [0, 1, 2, 3, 5, 8, 13, 20] {
                let listed: Rational = (n..total).map(|i| g.piece_at(i).length()).sum();
                let rest = rule.tail_from_level(7);
                assert_eq!(listed + rest, g.tail_length_bound(n), "{rule} n={n}");
            }
        }
    }

    #[test]
    fn gap_analysis() {
        let ne = analyze_gap_order(&sys(CantorRule::NonE), 1).unwrap();
        assert_eq!(ne.has_min, Tri::Yes);
        assert_eq!(ne.min_witness, Some((u(0, 1), u(1, 4))));
        assert_eq!(
            ne.successor_witness,
            Some(((u(0, 1), u(1, 4)), (u(1, 4), u(5, 16))))
        );
        assert_eq!(ne.dense, Tri::No);
        let mt = analyze_gap_order(&sys(CantorRule::MiddleThird), 4).unwrap();
        assert_eq!(
            (mt.dense, mt.has_min, mt.has_max),
            (Tri::Yes, Tri::No, Tri::No)
        );
        assert!(mt.successor_witness.is_none());
    }

    #[test]
    fn parse_specs() {
        for rule in CantorRule::ALL {
            assert_eq!(rule.spec().parse::<CantorRule>().unwrap(), rule);
        }
        assert_eq!("svc".parse::<CantorRule>().unwrap(), CantorRule::Svc);
        assert!("cantor:fat".parse::<CantorRule>().is_err());
    }
}
