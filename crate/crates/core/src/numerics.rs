//! Exact rationals and the fixed enumeration of ℚ ∩ [0, 1].
//!
//! The enumeration lists reduced fractions by increasing denominator and,
//! within one denominator, by increasing numerator:
//!
//! ```text
//! 0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, 2/5, ...
//! ```
//!
//! Indices are computed in closed form (through the summatory totient
//! function), and the least index inside an interval is found with a
//! Stern–Brocot descent, so both stay cheap even for denominators in the
//! millions.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms.
pub type Rational = num::BigRational;

/// Position in the fixed enumeration of ℚ ∩ [0, 1].
pub type Index = u64;

/// Builds `p/q` as a [`Rational`]. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `1 / base^exp`.
pub fn inverse_power(base: u32, exp: u32) -> Rational {
    Rational::new(BigInt::one(), num::pow(BigInt::from(base), exp as usize))
}

/// A rational known to lie in the closed unit interval.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitRational(Rational);

impl UnitRational {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() || value > Rational::one() {
            return Err(Error::OutOfUnitInterval(format_rational(&value)));
        }
        Ok(UnitRational(value))
    }

    /// `p/q`, panicking when the value is not in [0, 1].
    pub fn ratio(p: u64, q: u64) -> Self {
        let value = Rational::new(BigInt::from(p), BigInt::from(q));
        Self::new(value).expect("ratio outside [0, 1]")
    }

    pub fn zero() -> Self {
        UnitRational(Rational::zero())
    }

    pub fn one() -> Self {
        UnitRational(Rational::one())
    }

    pub(crate) fn new_unchecked(value: Rational) -> Self {
        debug_assert!(!value.is_negative() && value <= Rational::one());
        UnitRational(value)
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    /// Denominator as a machine integer, if it fits.
    pub fn denominator_u64(&self) -> Option<u64> {
        self.0.denom().to_u64()
    }
}

impl Deref for UnitRational {
    type Target = Rational;

    fn deref(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for UnitRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value = parse_rational(s)?;
        UnitRational::new(value)
    }
}

impl From<UnitRational> for Rational {
    fn from(q: UnitRational) -> Rational {
        q.0
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: 0,
        message: format!("malformed rational {s:?}"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `p/q` in lowest terms, integers without the `/1`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

// ---------------------------------------------------------------------------
// Summatory totient and index arithmetic

const SIEVE_LIMIT: u64 = 1 << 20;

/// Prefix sums of Euler's totient up to `SIEVE_LIMIT`.
fn totient_prefix() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut phi: Vec<u64> = (0..=n as u64).collect();
        for i in 2..=n {
            if phi[i] == i as u64 {
                let mut j = i;
                while j <= n {
                    phi[j] -= phi[j] / i as u64;
                    j += i;
                }
            }
        }
        let mut acc = 0u64;
        let mut prefix = vec![0u64; n + 1];
        for i in 1..=n {
            acc += phi[i];
            prefix[i] = acc;
        }
        prefix
    })
}

/// Φ(n) = φ(1) + … + φ(n).
fn totient_sum(n: u64) -> u128 {
    let mut memo = HashMap::new();
    totient_sum_memo(n, &mut memo)
}

fn totient_sum_memo(n: u64, memo: &mut HashMap<u64, u128>) -> u128 {
    if n <= SIEVE_LIMIT {
        return totient_prefix()[n as usize] as u128;
    }
    if let Some(&v) = memo.get(&n) {
        return v;
    }
    let n128 = n as u128;
    let mut result = n128 * (n128 + 1) / 2;
    let mut d = 2u64;
    while d <= n {
        let q = n / d;
        let last = n / q;
        result -= (last - d + 1) as u128 * totient_sum_memo(q, memo);
        d = last + 1;
    }
    memo.insert(n, result);
    result
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// Number of k in 1..=m with gcd(k, d) = 1, by inclusion–exclusion.
fn coprime_count(m: u64, primes: &[u64]) -> u64 {
    let mut total: i128 = 0;
    for mask in 0u32..(1u32 << primes.len()) {
        let mut prod = 1u64;
        let mut overflow = false;
        for (i, p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                match prod.checked_mul(*p) {
                    Some(v) if v <= m => prod = v,
                    _ => {
                        overflow = true;
                        break;
                    }
                }
            }
        }
        if overflow {
            continue;
        }
        let term = (m / prod) as i128;
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u64
}

/// Count of enumerated rationals with denominator at most `d`.
fn count_up_to_denominator(d: u64) -> u128 {
    if d == 0 {
        0
    } else {
        1 + totient_sum(d)
    }
}

/// The `n`-th rational of the enumeration.
pub fn enumerate_rationals(n: Index) -> UnitRational {
    if n < 2 {
        return UnitRational::new_unchecked(ratio(n as i64, 1));
    }
    let target = n as u128;
    // smallest d with count_up_to_denominator(d) > n
    let mut hi = 2u64;
    while count_up_to_denominator(hi) <= target {
        hi *= 2;
    }
    let mut lo = 2u64;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if count_up_to_denominator(mid) > target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let d = lo;
    let rank = (target - count_up_to_denominator(d - 1)) as u64;
    let primes = distinct_prime_factors(d);
    // smallest p with coprime_count(p) > rank
    let (mut a, mut b) = (1u64, d - 1);
    while a < b {
        let mid = a + (b - a) / 2;
        if coprime_count(mid, &primes) > rank {
            b = mid;
        } else {
            a = mid + 1;
        }
    }
    UnitRational::new_unchecked(Rational::new(BigInt::from(a), BigInt::from(d)))
}

/// Inverse of [`enumerate_rationals`].
///
/// Panics if the denominator exceeds `u64` or the index would overflow it.
pub fn rational_index(q: &UnitRational) -> Index {
    let d = q.denom().to_u64().expect("denominator exceeds u64");
    let p = q.numer().to_u64().expect("numerator exceeds u64");
    if d == 1 {
        return p;
    }
    let primes = distinct_prime_factors(d);
    let below = count_up_to_denominator(d - 1) + coprime_count(p - 1, &primes) as u128;
    u64::try_from(below).expect("rational index exceeds u64")
}

/// The fraction of least denominator strictly inside `(lo, hi)`.
///
/// Requires `0 <= lo < hi`. The answer is unique: two fractions with the
/// same denominator always have one of smaller denominator between them.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(
        !lo.is_negative() && lo < hi,
        "simplest_between needs 0 <= lo < hi"
    );
    let (ln, ld) = (lo.numer().clone(), lo.denom().clone());
    let (hn, hd) = (hi.numer().clone(), hi.denom().clone());
    // left bound a/b, right bound c/d of the current Stern–Brocot node
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    let (mut c, mut d) = (BigInt::one(), BigInt::zero());
    loop {
        let mn = &a + &c;
        let md = &b + &d;
        if &mn * &ld <= &ln * &md {
            // mediant <= lo: walk right as far as possible
            let k = (&ln * &b - &a * &ld).div_floor(&(&c * &ld - &ln * &d));
            a += &k * &c;
            b += &k * &d;
        } else if &mn * &hd >= &hn * &md {
            // mediant >= hi: walk left as far as possible
            let k = (&c * &hd - &hn * &d).div_floor(&(&hn * &b - &a * &hd));
            c += &k * &a;
            d += &k * &b;
        } else {
            return Rational::new(mn, md);
        }
    }
}

/// Least index `n` with `q_n` in `(lo, hi)`, or in `[lo, hi]` when `closed`.
pub fn min_index_in(lo: &UnitRational, hi: &UnitRational, closed: bool) -> Result<Index> {
    if lo >= hi {
        return Err(Error::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let inner = UnitRational::new_unchecked(simplest_between(lo, hi));
    let mut best = rational_index(&inner);
    if closed {
        best = best.min(rational_index(lo)).min(rational_index(hi));
    }
    Ok(best)
}

/// Sequential walk through the enumeration: `0, 1, 1/2, 1/3, 2/3, …`.
///
/// Independent of the closed-form index arithmetic; useful for scans.
#[derive(Debug, Clone, Default)]
pub struct RationalEnumeration {
    denominator: u64,
    numerator: u64,
}

impl RationalEnumeration {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for RationalEnumeration {
    type Item = UnitRational;

    fn next(&mut self) -> Option<UnitRational> {
        if self.denominator == 0 {
            // 0/1 then 1/1
            let value = self.numerator;
            self.numerator += 1;
            if self.numerator == 2 {
                self.denominator = 2;
                self.numerator = 0;
            }
            return Some(UnitRational::new_unchecked(ratio(value as i64, 1)));
        }
        loop {
            self.numerator += 1;
            if self.numerator >= self.denominator {
                self.denominator += 1;
                self.numerator = 0;
                continue;
            }
            if self.numerator.gcd(&self.denominator) == 1 {
                return Some(UnitRational::new_unchecked(ratio(
                    self.numerator as i64,
                    self.denominator as i64,
                )));
            }
        }
    }
}

/// All enumerated rationals with denominator at most `max_denominator`, in
/// enumeration order.
pub fn rationals_up_to_denominator(max_denominator: u64) -> Vec<UnitRational> {
    RationalEnumeration::new()
        .take_while(|q| q.denominator_u64().is_some_and(|d| d <= max_denominator))
        .collect()
}
