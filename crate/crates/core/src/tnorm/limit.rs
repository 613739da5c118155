//! Two Product ordinal sums whose pieces accumulate at 1 and at 0.
//!
//! Both have signature order type ω or ω*, so one has a ≺-least piece and the
//! other does not; they are not isomorphic.

use num::Zero;

use crate::numerics::{Rational, UnitRational};
use crate::signature::{Label, SignatureEntry};

use super::{Locate, OrderCertificate, Piece, PieceGenerator, PieceKind, Tri};

fn unit(p: u64, q: u64) -> UnitRational {
    UnitRational::ratio(p, q)
}

fn entry(piece: &Piece, index: usize) -> SignatureEntry {
    SignatureEntry::from_piece(piece, index)
}

/// `1/q` as an integer when `q` is the reciprocal of one, otherwise the floor.
fn reciprocal(q: &Rational) -> (u64, bool) {
    let t = q.recip();
    let exact = t.is_integer();
    let floor: u64 = t
        .floor()
        .to_integer()
        .try_into()
        .expect("reciprocal exceeds u64");
    (floor, exact)
}

/// Pieces `(1 − 1/(n+1), 1 − 1/(n+2))`, accumulating at 1.
#[derive(Clone, Copy, Debug, Default)]
pub struct LimitLeft;

impl PieceGenerator for LimitLeft {
    fn family_key(&self) -> String {
        "limit-left".into()
    }

    fn piece_at(&self, n: usize) -> Piece {
        let n = n as u64;
        Piece::new(unit(n, n + 1), unit(n + 1, n + 2), PieceKind::Product).expect("nonempty piece")
    }

    fn tail_length_bound(&self, n: usize) -> Rational {
        Rational::new(1.into(), (n as u64 + 1).into())
    }

    fn locate(&self, q: &UnitRational, _depth: usize) -> Locate {
        let one = Rational::from_integer(1.into());
        if q.value() == &one {
            return Locate::Idempotent;
        }
        let (t, exact) = reciprocal(&(&one - q.value()));
        if exact {
            return Locate::Idempotent;
        }
        let index = (t - 1) as usize;
        Locate::InPiece {
            index,
            piece: self.piece_at(index),
        }
    }

    fn order_certificate(&self, _depth: usize) -> OrderCertificate {
        OrderCertificate {
            uniform_label: Some(Label::P),
            has_min: Tri::Yes,
            min_witness: Some(entry(&self.piece_at(0), 0)),
            has_max: Tri::No,
            max_witness: None,
            dense: Tri::No,
            successor_witness: Some((entry(&self.piece_at(0), 0), entry(&self.piece_at(1), 1))),
        }
    }

    fn has_idempotent_intervals(&self) -> Tri {
        Tri::No
    }
}

/// Pieces `(1/(n+2), 1/(n+1))`, accumulating at 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct LimitRight;

impl PieceGenerator for LimitRight {
    fn family_key(&self) -> String {
        "limit-right".into()
    }

    fn piece_at(&self, n: usize) -> Piece {
        let n = n as u64;
        Piece::new(unit(1, n + 2), unit(1, n + 1), PieceKind::Product).expect("nonempty piece")
    }

    fn tail_length_bound(&self, n: usize) -> Rational {
        Rational::new(1.into(), (n as u64 + 1).into())
    }

    fn locate(&self, q: &UnitRational, _depth: usize) -> Locate {
        if q.value().is_zero() {
            return Locate::Idempotent;
        }
        let (t, exact) = reciprocal(q.value());
        if exact {
            return Locate::Idempotent;
        }
        let index = (t - 1) as usize;
        Locate::InPiece {
            index,
            piece: self.piece_at(index),
        }
    }

    fn order_certificate(&self, _depth: usize) -> OrderCertificate {
        OrderCertificate {
            uniform_label: Some(Label::P),
            has_min: Tri::No,
            min_witness: None,
            has_max: Tri::Yes,
            max_witness: Some(entry(&self.piece_at(0), 0)),
            dense: Tri::No,
            successor_witness: Some((entry(&self.piece_at(1), 1), entry(&self.piece_at(0), 0))),
        }
    }

    fn has_idempotent_intervals(&self) -> Tri {
        Tri::No
    }
}
