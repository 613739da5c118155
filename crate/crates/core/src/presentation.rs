//! The `tnorm v1` text format.
//!
//! ```text
//! tnorm v1
//! # a finite ordinal sum
//! piece 1/4 1/2 P
//! piece 1/2 3/4 L
//! ```
//!
//! or a single family line: `family limit-left`, `family limit-right`,
//! `family theta <order-spec>`, `family cantor <system-spec>`. Blank lines
//! and lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::cantor::{CantorGenerator, CantorRule, CantorSystem};
use crate::error::{Error, Result};
use crate::numerics::UnitRational;
use crate::reduce_from_lo::{build_tnorm, LinearOrder};
use crate::tnorm::{FinitePresentation, LimitLeft, LimitRight, Piece, PieceKind, TNorm};

/// A named infinite family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    LimitLeft,
    LimitRight,
    Theta(LinearOrder),
    Cantor(CantorRule),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::LimitLeft => f.write_str("limit-left"),
            Family::LimitRight => f.write_str("limit-right"),
            Family::Theta(o) => write!(f, "theta {o}"),
            Family::Cantor(r) => write!(f, "cantor {r}"),
        }
    }
}

/// A parsed presentation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Finite(FinitePresentation),
    Family(Family),
}

impl Presentation {
    /// The t-norm, locating points among pieces up to `depth` when lazy.
    pub fn to_tnorm(&self, depth: usize) -> Result<TNorm> {
        Ok(match self {
            Presentation::Finite(p) => TNorm::Finite(p.clone()),
            Presentation::Family(Family::LimitLeft) => TNorm::lazy(Arc::new(LimitLeft), depth),
            Presentation::Family(Family::LimitRight) => TNorm::lazy(Arc::new(LimitRight), depth),
            Presentation::Family(Family::Theta(o)) => build_tnorm(o, depth)?,
            Presentation::Family(Family::Cantor(r)) => {
                TNorm::lazy(Arc::new(CantorGenerator::new(CantorSystem::new(*r))), depth)
            }
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Presentation::Finite(p) => write!(f, "{p}"),
            Presentation::Family(fam) => writeln!(f, "tnorm v1\nfamily {fam}"),
        }
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Attaches a line number to an error raised while parsing one token.
fn at_line(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { message, .. } => parse_error(line, message),
        other => parse_error(line, other.to_string()),
    }
}

fn parse_kind(s: &str, line: usize) -> Result<PieceKind> {
    match s {
        "P" => Ok(PieceKind::Product),
        "L" | "Ł" => Ok(PieceKind::Lukasiewicz),
        other => Err(parse_error(line, format!("unknown piece kind {other:?}"))),
    }
}

fn parse_family(words: &[&str], line: usize) -> Result<Family> {
    match words {
        ["limit-left"] => Ok(Family::LimitLeft),
        ["limit-right"] => Ok(Family::LimitRight),
        ["theta", spec] => spec
            .parse::<LinearOrder>()
            .map(Family::Theta)
            .map_err(|e| at_line(e, line)),
        ["cantor", spec] => spec
            .parse::<CantorRule>()
            .map(Family::Cantor)
            .map_err(|e| at_line(e, line)),
        _ => Err(parse_error(
            line,
            format!("unknown family {:?}", words.join(" ")),
        )),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut header_seen = false;
    let mut pieces = Vec::new();
    let mut family: Option<Family> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        if !header_seen {
            if words != ["tnorm", "v1"] {
                return Err(parse_error(line, "expected header \"tnorm v1\""));
            }
            header_seen = true;
            continue;
        }
        match words[0] {
            "piece" => {
                if family.is_some() {
                    return Err(parse_error(line, "piece lines cannot follow a family line"));
                }
                let [_, lo, hi, kind] = words[..] else {
                    return Err(parse_error(line, "expected \"piece <lo> <hi> <P|L>\""));
                };
                let lo: UnitRational = lo.parse().map_err(|e| at_line(e, line))?;
                let hi: UnitRational = hi.parse().map_err(|e| at_line(e, line))?;
                let piece =
                    Piece::new(lo, hi, parse_kind(kind, line)?).map_err(|e| at_line(e, line))?;
                pieces.push(piece);
            }
            "family" => {
                if family.is_some() || !pieces.is_empty() {
                    return Err(parse_error(
                        line,
                        "a family line must be the only directive",
                    ));
                }
                family = Some(parse_family(&words[1..], line)?);
            }
            other => return Err(parse_error(line, format!("unknown directive {other:?}"))),
        }
    }
    if !header_seen {
        return Err(parse_error(1, "empty input"));
    }
    match family {
        Some(f) => Ok(Presentation::Family(f)),
        None => Ok(Presentation::Finite(FinitePresentation::new(pieces)?)),
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_presentation(s)
    }
}
