//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tnorm_iso::cantor::{build_tnorm_a, CantorRule, CantorSystem};
use tnorm_iso::corpus::{corpus_entry, finite_corpus, grid};
use tnorm_iso::iso::{
    back_and_forth, build_iso_map, decide_iso_finite, decide_iso_lazy, is_order_consistent,
    DistinguishingInvariant, IsoVerdict,
};
use tnorm_iso::numerics::{inverse_power, ratio};
use tnorm_iso::reduce_from_lo::{
    agreement_ball_check, build_intervals, round_trip, LinearOrder, NamedOrder,
};
use tnorm_iso::reduce_to_l1::{l1_iso_finite, theta, theta_via_lemma};
use tnorm_iso::signature::{compute_signature, finite_signature};
use tnorm_iso::tnorm::{check_axioms, LimitLeft, LimitRight, Piece, PieceKind};
use tnorm_iso::{FinitePresentation, TNorm, UnitRational};

type Check = Result<(), String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a1_axioms() -> Check {
    let corpus = finite_corpus();
    ensure(corpus.len() >= 12, || "corpus too small".into())?;
    for name in ["minimum", "product", "lukasiewicz"] {
        ensure(corpus.iter().any(|(n, _)| *n == name), || {
            format!("{name} missing")
        })?;
    }
    for (name, t) in &corpus {
        let report = check_axioms(t, &grid(20));
        ensure(report.is_clean(), || format!("{name}: {report}"))?;
    }
    Ok(())
}

fn a2_idempotents() -> Check {
    let g = grid(20);
    for (name, t) in finite_corpus() {
        for q in g.iter().filter(|q| t.is_idempotent(q)) {
            for p in &g {
                let min = p.clone().min(q.clone());
                ensure(t.eval(p, q) == min, || format!("{name}: {p} * {q}"))?;
            }
        }
    }
    Ok(())
}

fn a3_interiors() -> Check {
    let g = grid(20);
    for (name, t) in finite_corpus() {
        for piece in t.pieces() {
            for p in g.iter().filter(|p| piece.contains_open(p.value())) {
                for q in g.iter().filter(|q| piece.contains_open(q.value())) {
                    let min = p.clone().min(q.clone());
                    ensure(t.eval(p, q) < min, || format!("{name}: {p} * {q}"))?;
                }
            }
        }
    }
    Ok(())
}

/// Checks (a)–(c), the order embedding, and (d) both as stated (bound
/// `3^−(n+1)` for every `m ⋖ n`) and with the bound of the later-built piece,
/// `3^−(max(m, n)+1)`. Returns the pairs violating (d) as stated.
fn step_one(order: &LinearOrder, n: usize) -> Result<Vec<String>, String> {
    let pieces = build_intervals(order, n).map_err(|e| e.to_string())?.pieces;
    let (zero, one) = (ratio(0, 1), ratio(1, 1));
    let len = |k: usize| inverse_power(3, k as u32 + 1);
    let mut literal_d = Vec::new();
    for (k, p) in pieces.iter().enumerate() {
        let (a, b) = (p.lo().value(), p.hi().value());
        ensure(&zero < a && a < b && b < &one, || {
            format!("{order}: (a) fails at {k}")
        })?;
        ensure(b - a == len(k), || format!("{order}: (c) fails at {k}"))?;
        ensure(a >= &len(k) && &one - b >= len(k), || {
            format!("{order}: (d) endpoint bound fails at {k}")
        })?;
        for (m, q) in pieces.iter().enumerate() {
            if m == k {
                continue;
            }
            let less = order.less(m, k).map_err(|e| e.to_string())?;
            ensure(less == (q.hi() < p.lo()), || {
                format!("{order}: {m} ⋖ {k} vs b_m < a_n")
            })?;
            if less {
                let gap = a - q.hi().value();
                ensure(gap >= len(m.max(k)), || {
                    format!("{order}: gap {m}, {k} below 3^-(max+1)")
                })?;
                if gap < len(k) {
                    literal_d.push(format!(
                        "{order} {m}⋖{k}: a_{k} − b_{m} = {gap} < {}",
                        len(k)
                    ));
                }
            }
        }
    }
    Ok(literal_d)
}

fn a4_theta_construction() -> Check {
    let mut orders: Vec<LinearOrder> = NamedOrder::ALL
        .iter()
        .map(|&o| LinearOrder::Named(o))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let mut ranks: Vec<u64> = (0..12).collect();
        ranks.shuffle(&mut rng);
        orders.push(LinearOrder::finite(ranks).unwrap());
    }
    let mut literal_d = Vec::new();
    for o in &orders {
        literal_d.extend(step_one(o, 12)?);
    }
    ensure(literal_d.is_empty(), || {
        format!(
            "(d) with bound 3^-(n+1) fails for {} pairs, first {}; (a)-(c), the embedding and (d) with bound 3^-(max(m,n)+1) hold",
            literal_d.len(),
            literal_d[0]
        )
    })
}

fn a5_continuity_ball() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for n in 1..=3 {
        let mut pairs: Vec<(LinearOrder, LinearOrder)> = Vec::new();
        for a in NamedOrder::ALL {
            for b in NamedOrder::ALL {
                let (a, b) = (LinearOrder::Named(a), LinearOrder::Named(b));
                if a != b && a.agrees_with(&b, n).unwrap() {
                    pairs.push((a, b));
                }
            }
            // A finite order with the same first n elements and a random tail.
            let named = LinearOrder::Named(a);
            let mut ranks: Vec<u64> = (0..n as u64 + 4).collect();
            ranks.shuffle(&mut rng);
            let mut prefix: Vec<usize> = (0..n).collect();
            prefix.sort_by(|&x, &y| named.cmp(x, y).unwrap());
            let mut values: Vec<u64> = ranks[..n].to_vec();
            values.sort_unstable();
            for (&i, v) in prefix.iter().zip(values) {
                ranks[i] = v;
            }
            pairs.push((named, LinearOrder::finite(ranks).unwrap()));
        }
        for (a, b) in pairs {
            let ball = agreement_ball_check(&a, &b, n, 33).map_err(|e| e.to_string())?;
            ensure(ball.within(), || {
                format!("{a} vs {b} at N={n}: {} > {}", ball.distance, ball.bound)
            })?;
            checked += 1;
        }
    }
    ensure(checked >= 15, || "too few pairs".into())
}

fn a6_theta_oracle() -> Check {
    for (name, t) in finite_corpus() {
        let direct = theta(&TNorm::from(t.clone()), 64);
        let lemma = theta_via_lemma(&t, 64, 64, 32).map_err(|e| format!("{name}: {e}"))?;
        ensure(direct == lemma, || format!("{name}: structures differ"))?;
    }
    Ok(())
}

fn a7_round_trip() -> Check {
    for o in NamedOrder::ALL {
        let r = round_trip(&LinearOrder::Named(o), 12).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: {r}", o.tag()))?;
    }
    Ok(())
}

fn a8_reduction() -> Check {
    let a = corpus_entry("mplm-a").unwrap();
    let b = corpus_entry("mplm-b").unwrap();
    let swapped = corpus_entry("mlpm").unwrap();
    let verdict = |x: &FinitePresentation, y: &FinitePresentation| {
        decide_iso_finite(&finite_signature(x), &finite_signature(y)).unwrap()
    };
    ensure(verdict(&a, &b).is_iso(), || {
        "mplm-a and mplm-b not ISO".into()
    })?;
    ensure(verdict(&a, &swapped).is_not_iso(), || {
        "swapped kinds still ISO".into()
    })?;
    let h = build_iso_map(&a, &b).map_err(|e| e.to_string())?;
    let g = grid(8);
    for x in &g {
        for y in &g {
            let (hx, hy) = (h.apply(x).unwrap(), h.apply(y).unwrap());
            ensure(h.apply(&a.eval(x, y)) == Some(b.eval(&hx, &hy)), || {
                format!("witness fails at {x}, {y}")
            })?;
        }
    }
    let th = |t: &FinitePresentation, n| theta(&TNorm::from(t.clone()), n);
    let mut failures = Vec::new();
    for n in [8, 16, 32] {
        if !l1_iso_finite(&th(&a, n), &th(&b, n)).unwrap() {
            failures.push(format!("Θ-images of the ISO pair disagree at N={n}"));
        }
        if l1_iso_finite(&th(&a, n), &th(&swapped, n)).unwrap() {
            failures.push(format!("Θ-images of the swapped pair agree at N={n}"));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn a9_limit() -> Check {
    for d in 4..=16 {
        let v = decide_iso_lazy(
            &TNorm::lazy(Arc::new(LimitLeft), d),
            &TNorm::lazy(Arc::new(LimitRight), d),
            d,
        );
        ensure(
            matches!(
                v,
                IsoVerdict::NotIso(DistinguishingInvariant::MinimumExistsMismatch(_))
            ),
            || format!("depth {d}: {}", v.headline()),
        )?;
    }
    Ok(())
}

fn cantor(rule: CantorRule, depth: usize) -> TNorm {
    build_tnorm_a(CantorSystem::new(rule), depth)
}

fn a10_middle_third_vs_svc() -> Check {
    let d = 8;
    let v = decide_iso_lazy(
        &cantor(CantorRule::MiddleThird, d),
        &cantor(CantorRule::Svc, d),
        d,
    );
    ensure(v.is_iso(), || v.headline())?;
    let s1 = compute_signature(&cantor(CantorRule::MiddleThird, d), d);
    let s2 = compute_signature(&cantor(CantorRule::Svc, d), d);
    let pairs = back_and_forth(&s1, &s2, 8).map_err(|e| e.to_string())?;
    ensure(pairs.len() == 8 && is_order_consistent(&pairs), || {
        "partial map not order-consistent".into()
    })
}

fn a11_middle_third_vs_non_e() -> Check {
    let mut first: Option<IsoVerdict> = None;
    for d in 2..=8 {
        let v = decide_iso_lazy(
            &cantor(CantorRule::MiddleThird, d),
            &cantor(CantorRule::NonE, d),
            d,
        );
        let certified = matches!(
            &v,
            IsoVerdict::NotIso(
                DistinguishingInvariant::MinimumExistsMismatch(_)
                    | DistinguishingInvariant::MaximumExistsMismatch(_)
                    | DistinguishingInvariant::SuccessorPairPresent(..)
            )
        );
        ensure(certified, || format!("depth {d}: {}", v.headline()))?;
        match &first {
            None => first = Some(v),
            Some(f) => ensure(f == &v, || format!("witness changed at depth {d}"))?,
        }
    }
    Ok(())
}

fn a12_spot_values() -> Check {
    let u = UnitRational::ratio;
    let second = |o| build_intervals(&LinearOrder::Named(o), 2).unwrap().pieces[1].clone();
    let p = second(NamedOrder::Omega);
    ensure((p.lo(), p.hi()) == (&u(7, 9), &u(8, 9)), || {
        format!("omega I_1 = {p}")
    })?;
    let p = second(NamedOrder::OmegaStar);
    ensure((p.lo(), p.hi()) == (&u(1, 9), &u(2, 9)), || {
        format!("omega_star I_1 = {p}")
    })?;
    let half = u(1, 2);
    let prod = FinitePresentation::single(u(1, 3), u(2, 3), PieceKind::Product).unwrap();
    ensure(prod.eval(&half, &half) == u(5, 12), || {
        "product middle third".into()
    })?;
    let luk = FinitePresentation::single(u(0, 1), u(1, 1), PieceKind::Lukasiewicz).unwrap();
    ensure(luk.eval(&half, &half) == u(0, 1), || "lukasiewicz".into())?;
    let upper = FinitePresentation::single(u(1, 2), u(1, 1), PieceKind::Product).unwrap();
    let s = theta(&TNorm::from(upper.clone()), 6);
    ensure(s == common::oracle_theta(&upper, 6), || {
        "Θ disagrees with the scan oracle".into()
    })?;
    ensure(
        s.rm == [0].into() && s.rp == [4].into() && s.rl.is_empty() && s.less == [(0, 4)].into(),
        || format!("Θ at N=6:\n{s}"),
    )
}

fn a13_nilpotency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut done = 0;
    while done < 20 {
        let d = rng.gen_range(2..=64u64);
        let (x, y) = (rng.gen_range(0..=d), rng.gen_range(0..=d));
        if x == y {
            continue;
        }
        let piece = Piece::new(
            UnitRational::ratio(x.min(y), d),
            UnitRational::ratio(x.max(y), d),
            PieceKind::Lukasiewicz,
        )
        .unwrap();
        let qd = rng.gen_range(2..=256u64);
        let q = UnitRational::ratio(rng.gen_range(1..qd), qd);
        if !piece.contains_open(q.value()) {
            continue;
        }
        let closed = piece.nilpotency_index(q.value());
        let iterated = common::iterated_nilpotency(&piece, &q, 1 << 20);
        ensure(closed.is_some() && closed == iterated, || {
            format!("{piece} at {q}: {closed:?} vs {iterated:?}")
        })?;
        done += 1;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("A1", "axioms on the corpus", a1_axioms),
        ("A2", "idempotents act as minimum", a2_idempotents),
        ("A3", "piece interiors below minimum", a3_interiors),
        (
            "A4",
            "interval construction for orders",
            a4_theta_construction,
        ),
        ("A5", "continuity ball", a5_continuity_ball),
        (
            "A6",
            "structure equals element-test oracle",
            a6_theta_oracle,
        ),
        ("A7", "order round trip", a7_round_trip),
        ("A8", "reduction at truncation", a8_reduction),
        ("A9", "limit families", a9_limit),
        ("A10", "middle-third vs svc", a10_middle_third_vs_svc),
        ("A11", "middle-third vs non-e", a11_middle_third_vs_non_e),
        ("A12", "exact spot values", a12_spot_values),
        ("A13", "nilpotency closed form", a13_nilpotency),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("{id:<4} PASS {title} ({secs:.1}s)"),
            Err(reason) => {
                failed += 1;
                println!("{id:<4} FAIL {title} ({secs:.1}s): {reason}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
