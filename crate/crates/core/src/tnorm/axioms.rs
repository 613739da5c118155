//! Exact checks of the t-norm axioms on a finite sample set.

use std::fmt;

use crate::numerics::{Rational, UnitRational};

use super::{is_unit, FinitePresentation};

/// A single failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Range {
        x: Rational,
        y: Rational,
        value: Rational,
    },
    Commutativity {
        x: Rational,
        y: Rational,
    },
    Associativity {
        x: Rational,
        y: Rational,
        z: Rational,
    },
    Monotonicity {
        x: Rational,
        x2: Rational,
        y: Rational,
    },
    Neutrality {
        x: Rational,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Range { x, y, value } => write!(f, "range {x} {y} -> {value}"),
            Violation::Commutativity { x, y } => write!(f, "commutativity {x} {y}"),
            Violation::Associativity { x, y, z } => write!(f, "associativity {x} {y} {z}"),
            Violation::Monotonicity { x, x2, y } => write!(f, "monotonicity {x} <= {x2} at {y}"),
            Violation::Neutrality { x } => write!(f, "neutrality {x}"),
        }
    }
}

/// Violations found plus the number of instances inspected per axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub samples: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "axioms samples={} violations={}",
            self.samples,
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

pub fn check_axioms(t: &FinitePresentation, samples: &[UnitRational]) -> AxiomReport {
    check_axioms_with(|x, y| t.eval_raw(x, y), samples)
}

/// Checks commutativity and associativity on all pairs and triples,
/// monotonicity on all pairs, and neutrality of 1, for an arbitrary
/// operation. Useful for negative controls.
pub fn check_axioms_with<F>(op: F, samples: &[UnitRational]) -> AxiomReport
where
    F: Fn(&Rational, &Rational) -> Rational,
{
    let mut points: Vec<Rational> = samples.iter().map(|s| s.value().clone()).collect();
    points.sort();
    points.dedup();
    let n = points.len();
    let mut violations = Vec::new();

    let table: Vec<Vec<Rational>> = points
        .iter()
        .map(|x| points.iter().map(|y| op(x, y)).collect())
        .collect();

    for i in 0..n {
        for j in 0..n {
            let v = &table[i][j];
            if !is_unit(v) {
                violations.push(Violation::Range {
                    x: points[i].clone(),
                    y: points[j].clone(),
                    value: v.clone(),
                });
            }
            if j > i && table[i][j] != table[j][i] {
                violations.push(Violation::Commutativity {
                    x: points[i].clone(),
                    y: points[j].clone(),
                });
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            let xy = &table[i][j];
            for k in 0..n {
                let left = op(xy, &points[k]);
                let right = op(&points[i], &table[j][k]);
                if left != right {
                    violations.push(Violation::Associativity {
                        x: points[i].clone(),
                        y: points[j].clone(),
                        z: points[k].clone(),
                    });
                }
            }
        }
    }

    for j in 0..n {
        for i in 0..n {
            for i2 in i + 1..n {
                if table[i][j] > table[i2][j] {
                    violations.push(Violation::Monotonicity {
                        x: points[i].clone(),
                        x2: points[i2].clone(),
                        y: points[j].clone(),
                    });
                }
            }
        }
    }

    let one = Rational::from_integer(1.into());
    for x in &points {
        if op(&one, x) != *x || op(x, &one) != *x {
            violations.push(Violation::Neutrality { x: x.clone() });
        }
    }

    AxiomReport {
        samples: n,
        violations,
    }
}
