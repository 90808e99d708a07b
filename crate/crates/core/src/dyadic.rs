//! Exact dyadic rationals `k / 2^e`.
//!
//! Values are stored normalized: either the exponent is zero or the numerator
//! is odd, so structural equality coincides with numeric equality. Arithmetic
//! is carried out on `i128` numerators with explicit overflow detection; the
//! operator impls panic on overflow, the `checked_*` methods report it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Bound, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyadicError {
    #[error("dyadic arithmetic overflowed the 128-bit numerator")]
    Overflow,
    #[error("no dyadic lies strictly between {0} and {1}")]
    EmptyInterval(Dyadic, Dyadic),
    #[error("{0} / {1} is not a dyadic rational")]
    NotDyadic(Dyadic, Dyadic),
    #[error("invalid dyadic literal {0:?}")]
    Parse(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

/// `num * 2^shift`, or `None` when it does not fit.
fn scale(num: i128, shift: u32) -> Option<i128> {
    if num == 0 {
        return Some(0);
    }
    if shift >= 127 {
        return None;
    }
    num.checked_mul(1i128 << shift)
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    /// The normalized value of `k / 2^e`.
    pub fn new(k: i128, e: u32) -> Dyadic {
        if k == 0 {
            return Dyadic::ZERO;
        }
        let shift = k.trailing_zeros().min(e);
        Dyadic {
            num: k >> shift,
            exp: e - shift,
        }
    }

    pub const fn from_int(k: i128) -> Dyadic {
        Dyadic { num: k, exp: 0 }
    }

    pub fn num(self) -> i128 {
        self.num
    }

    pub fn exp(self) -> u32 {
        self.exp
    }

    pub fn is_integer(self) -> bool {
        self.exp == 0
    }

    pub fn is_negative(self) -> bool {
        self.num < 0
    }

    pub fn is_positive(self) -> bool {
        self.num > 0
    }

    pub fn signum(self) -> i32 {
        self.num.signum() as i32
    }

    /// `2^-exp`, the spacing of the grid this value lives on.
    pub fn ulp(self) -> Dyadic {
        Dyadic { num: 1, exp: self.exp }
    }

    fn aligned(self, other: Dyadic) -> Result<(i128, i128, u32), DyadicError> {
        let exp = self.exp.max(other.exp);
        let a = scale(self.num, exp - self.exp).ok_or(DyadicError::Overflow)?;
        let b = scale(other.num, exp - other.exp).ok_or(DyadicError::Overflow)?;
        Ok((a, b, exp))
    }

    pub fn checked_add(self, other: Dyadic) -> Result<Dyadic, DyadicError> {
        let (a, b, exp) = self.aligned(other)?;
        let sum = a.checked_add(b).ok_or(DyadicError::Overflow)?;
        Ok(Dyadic::new(sum, exp))
    }

    pub fn checked_sub(self, other: Dyadic) -> Result<Dyadic, DyadicError> {
        self.checked_add(other.checked_neg()?)
    }

    pub fn checked_neg(self) -> Result<Dyadic, DyadicError> {
        let num = self.num.checked_neg().ok_or(DyadicError::Overflow)?;
        Ok(Dyadic { num, exp: self.exp })
    }

    pub fn checked_mul(self, other: Dyadic) -> Result<Dyadic, DyadicError> {
        let num = self.num.checked_mul(other.num).ok_or(DyadicError::Overflow)?;
        let exp = self.exp.checked_add(other.exp).ok_or(DyadicError::Overflow)?;
        Ok(Dyadic::new(num, exp))
    }

    /// Exact quotient, which exists only when the odd part of the divisor
    /// divides the dividend's numerator.
    pub fn checked_div(self, other: Dyadic) -> Result<Dyadic, DyadicError> {
        if other.num == 0 {
            return Err(DyadicError::NotDyadic(self, other));
        }
        let twos = other.num.trailing_zeros();
        let odd = other.num >> twos;
        if self.num % odd != 0 {
            return Err(DyadicError::NotDyadic(self, other));
        }
        // self / other = (self.num / odd) * 2^(other.exp) / 2^(self.exp + twos)
        let q = self.num / odd;
        let up = other.exp;
        let down = self.exp + twos;
        if up >= down {
            let num = scale(q, up - down).ok_or(DyadicError::Overflow)?;
            Ok(Dyadic::new(num, 0))
        } else {
            Ok(Dyadic::new(q, down - up))
        }
    }

    pub fn half(self) -> Dyadic {
        if self.num == 0 {
            return self;
        }
        if self.exp == 0 && self.num % 2 == 0 {
            return Dyadic::from_int(self.num / 2);
        }
        Dyadic {
            num: self.num,
            exp: self.exp.checked_add(1).expect("dyadic exponent overflow"),
        }
    }

    pub fn abs(self) -> Dyadic {
        if self.num < 0 {
            -self
        } else {
            self
        }
    }

    pub fn floor(self) -> i128 {
        if self.exp >= 127 {
            return if self.num < 0 { -1 } else { 0 };
        }
        self.num >> self.exp
    }

    pub fn ceil(self) -> i128 {
        let f = self.floor();
        if Dyadic::from_int(f) == self {
            f
        } else {
            f + 1
        }
    }

    /// Day on which the number is born: `|k|` for integers, otherwise
    /// `floor(|x|) + 1 + e`.
    pub fn birthday(self) -> u128 {
        let m = self.num.unsigned_abs();
        if self.exp == 0 {
            m
        } else {
            self.abs().floor() as u128 + 1 + self.exp as u128
        }
    }

    /// Left and right options of the canonical form of this number.
    pub fn number_options(self) -> (Option<Dyadic>, Option<Dyadic>) {
        if self.exp > 0 {
            (Some(self - self.ulp()), Some(self + self.ulp()))
        } else if self.num > 0 {
            (Some(Dyadic::from_int(self.num - 1)), None)
        } else if self.num < 0 {
            (None, Some(Dyadic::from_int(self.num + 1)))
        } else {
            (None, None)
        }
    }

    /// The simplest dyadic strictly between `l` and `r`.
    pub fn simplest_between(l: Dyadic, r: Dyadic) -> Result<Dyadic, DyadicError> {
        if l >= r {
            return Err(DyadicError::EmptyInterval(l, r));
        }
        Ok(Dyadic::simplest_in(Bound::Excluded(l), Bound::Excluded(r))
            .expect("a nonempty open interval contains a dyadic"))
    }

    /// The simplest dyadic in a (possibly half-open or unbounded) interval,
    /// or `None` if the interval is empty.
    pub fn simplest_in(lo: Bound<Dyadic>, hi: Bound<Dyadic>) -> Option<Dyadic> {
        if contains(lo, hi, Dyadic::ZERO) {
            return Some(Dyadic::ZERO);
        }
        let positive = match lo {
            Bound::Included(l) => l.is_positive(),
            Bound::Excluded(l) => !l.is_negative(),
            Bound::Unbounded => false,
        };
        if positive {
            return simplest_positive(lo, hi);
        }
        let mirror = |b: Bound<Dyadic>| match b {
            Bound::Included(x) => Bound::Included(-x),
            Bound::Excluded(x) => Bound::Excluded(-x),
            Bound::Unbounded => Bound::Unbounded,
        };
        let negative = match hi {
            Bound::Included(h) => h.is_negative(),
            Bound::Excluded(h) => !h.is_positive(),
            Bound::Unbounded => false,
        };
        if negative {
            return simplest_positive(mirror(hi), mirror(lo)).map(|x| -x);
        }
        None
    }

    /// Smallest multiple of `2^-e` that is at least this value.
    fn ceil_on_grid(self, e: u32) -> Option<i128> {
        if e >= self.exp {
            scale(self.num, e - self.exp)
        } else {
            Some(Dyadic::new(self.num, self.exp - e).ceil())
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / 2f64.powi(self.exp as i32)
    }
}

fn contains(lo: Bound<Dyadic>, hi: Bound<Dyadic>, x: Dyadic) -> bool {
    let above = match lo {
        Bound::Included(l) => x >= l,
        Bound::Excluded(l) => x > l,
        Bound::Unbounded => true,
    };
    let below = match hi {
        Bound::Included(h) => x <= h,
        Bound::Excluded(h) => x < h,
        Bound::Unbounded => true,
    };
    above && below
}

/// Simplest element of an interval lying entirely in the positive numbers.
fn simplest_positive(lo: Bound<Dyadic>, hi: Bound<Dyadic>) -> Option<Dyadic> {
    let (l, open) = match lo {
        Bound::Included(l) => (l, false),
        Bound::Excluded(l) => (l, true),
        Bound::Unbounded => unreachable!("positive interval has a lower bound"),
    };
    let max_exp = match hi {
        Bound::Included(h) | Bound::Excluded(h) => l.exp.max(h.exp) + 1,
        Bound::Unbounded => 0,
    };
    for e in 0..=max_exp {
        let mut k = l.ceil_on_grid(e)?;
        let candidate = Dyadic::new(k, e);
        if open && candidate == l {
            k += 1;
        }
        let candidate = Dyadic::new(k, e);
        if contains(lo, hi, candidate) {
            return Some(candidate);
        }
    }
    None
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        if self.exp == other.exp {
            return self.num.cmp(&other.num);
        }
        let exp = self.exp.max(other.exp);
        match (
            scale(self.num, exp - self.exp),
            scale(other.num, exp - other.exp),
        ) {
            (Some(a), Some(b)) => a.cmp(&b),
            // A numerator that cannot be scaled dominates any i128 in magnitude.
            (None, _) => self.num.cmp(&0),
            (_, None) => 0.cmp(&other.num),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        self.checked_add(rhs).expect("dyadic addition overflow")
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self.checked_sub(rhs).expect("dyadic subtraction overflow")
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        self.checked_mul(rhs).expect("dyadic multiplication overflow")
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        self.checked_neg().expect("dyadic negation overflow")
    }
}

impl From<i64> for Dyadic {
    fn from(k: i64) -> Dyadic {
        Dyadic::from_int(k as i128)
    }
}

impl From<u32> for Dyadic {
    fn from(k: u32) -> Dyadic {
        Dyadic::from_int(k as i128)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else if self.exp < 128 {
            write!(f, "{}/{}", self.num, 1u128 << self.exp)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = DyadicError;

    /// Accepts `k`, `k/d` with `d` a power of two, and `k/2^e`.
    fn from_str(s: &str) -> Result<Dyadic, DyadicError> {
        let bad = || DyadicError::Parse(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let digits = num.strip_prefix('-').unwrap_or(num);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let k: i128 = num.parse().map_err(|_| bad())?;
        let e = match den {
            None => 0,
            Some(d) => {
                if let Some(power) = d.strip_prefix("2^") {
                    if power.is_empty() || !power.bytes().all(|c| c.is_ascii_digit()) {
                        return Err(bad());
                    }
                    power.parse::<u32>().map_err(|_| bad())?
                } else {
                    if d.is_empty() || !d.bytes().all(|c| c.is_ascii_digit()) {
                        return Err(bad());
                    }
                    let d: u128 = d.parse().map_err(|_| bad())?;
                    if !d.is_power_of_two() {
                        return Err(bad());
                    }
                    d.trailing_zeros()
                }
            }
        };
        Ok(Dyadic::new(k, e))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Dyadic, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn normalizes() {
        assert_eq!(Dyadic::new(2, 1), Dyadic::ONE);
        assert_eq!(Dyadic::new(1, 3), d("1/8"));
        let z = Dyadic::new(0, 5);
        assert_eq!((z.num(), z.exp()), (0, 0));
        assert_eq!(Dyadic::new(-12, 3), d("-3/2"));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(Dyadic::ONE + d("1/2"), d("3/2"));
        assert_eq!(d("1/8") + d("-1/8"), Dyadic::ZERO);
        assert_eq!(-d("3/2"), d("-3/2"));
        assert_eq!(-Dyadic::ZERO, Dyadic::ZERO);
        assert_eq!(-d("-7"), d("7"));
        assert_eq!(d("3/4").checked_div(d("1/2")).unwrap(), d("3/2"));
        assert_eq!(d("3").checked_div(d("-2")).unwrap(), d("-3/2"));
        assert!(d("1").checked_div(d("3")).is_err());
        assert_eq!(d("6").checked_div(d("3")).unwrap(), d("2"));
    }

    #[test]
    fn overflow_is_reported() {
        let big = Dyadic::from_int(i128::MAX);
        assert_eq!(big.checked_add(Dyadic::ONE), Err(DyadicError::Overflow));
        assert_eq!(
            Dyadic::from_int(i128::MIN).checked_neg(),
            Err(DyadicError::Overflow)
        );
        assert_eq!(big.checked_add(d("1/2")), Err(DyadicError::Overflow));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn operator_overflow_panics() {
        let _ = Dyadic::from_int(i128::MAX) + Dyadic::ONE;
    }

    #[test]
    fn ordering() {
        assert!(d("1/2") < d("1"));
        assert_eq!(d("3/4").cmp(&d("3/4")), Ordering::Equal);
        assert!(Dyadic::ZERO > d("-1/8"));
        let huge = Dyadic::from_int(i128::MAX);
        let tiny = Dyadic::new(1, 120);
        assert!(tiny < huge);
        assert!(-huge < tiny);
    }

    #[test]
    fn text_form() {
        assert_eq!(d("49/16").to_string(), "49/16");
        assert_eq!(Dyadic::from_int(-7).to_string(), "-7");
        assert_eq!(Dyadic::new(3, 1).to_string(), "3/2");
        assert_eq!(d("6/4"), d("3/2"));
        assert_eq!(d("5/2^3"), d("5/8"));
        for bad in ["", "-", "1/3", "1/0", "a", "1/", "--1", "1.5", "+1"] {
            assert!(bad.parse::<Dyadic>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn simplest() {
        let s = Dyadic::simplest_between;
        assert_eq!(s(d("0"), d("1/4")).unwrap(), d("1/8"));
        assert_eq!(s(d("-1"), d("1")).unwrap(), d("0"));
        assert_eq!(s(d("1/2"), d("3")).unwrap(), d("1"));
        assert_eq!(s(d("-3"), d("-1/2")).unwrap(), d("-1"));
        assert_eq!(s(d("5/8"), d("3/4")).unwrap(), d("11/16"));
        assert_eq!(s(d("1"), d("2")).unwrap(), d("3/2"));
        assert!(s(d("1"), d("1")).is_err());
        assert!(s(d("2"), d("1")).is_err());
    }

    #[test]
    fn simplest_with_closed_ends() {
        use Bound::*;
        let si = Dyadic::simplest_in;
        assert_eq!(si(Included(d("1")), Excluded(d("2"))), Some(d("1")));
        assert_eq!(si(Excluded(d("1")), Included(d("2"))), Some(d("2")));
        assert_eq!(si(Excluded(d("1")), Excluded(d("2"))), Some(d("3/2")));
        assert_eq!(si(Included(d("3/4")), Included(d("3/4"))), Some(d("3/4")));
        assert_eq!(si(Excluded(d("3/4")), Included(d("3/4"))), None);
        assert_eq!(si(Unbounded, Excluded(d("-5/2"))), Some(d("-3")));
        assert_eq!(si(Excluded(d("7")), Unbounded), Some(d("8")));
        assert_eq!(si(Unbounded, Unbounded), Some(d("0")));
    }

    #[test]
    fn birthdays() {
        assert_eq!(d("0").birthday(), 0);
        assert_eq!(d("-3").birthday(), 3);
        assert_eq!(d("1/2").birthday(), 2);
        assert_eq!(d("3/2").birthday(), 3);
        assert_eq!(d("-11/16").birthday(), 5);
    }

    fn dyadic() -> impl Strategy<Value = Dyadic> {
        (-4096i128..4096, 0u32..10).prop_map(|(k, e)| Dyadic::new(k, e))
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(x in dyadic(), t in 0u32..20) {
            prop_assert_eq!(Dyadic::new(x.num() << t, x.exp() + t), x);
            prop_assert!(x.exp() == 0 || x.num() % 2 != 0);
        }

        #[test]
        fn half_is_normalized(x in dyadic()) {
            prop_assert_eq!(x.half(), Dyadic::new(x.num(), x.exp() + 1));
            prop_assert_eq!(x.half() + x.half(), x);
        }

        #[test]
        fn ring_laws(x in dyadic(), y in dyadic(), z in dyadic()) {
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(-(-x), x);
            prop_assert_eq!(x + Dyadic::ZERO, x);
            prop_assert_eq!(x - x, Dyadic::ZERO);
            prop_assert_eq!(x < y, x.to_f64() < y.to_f64());
            prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
        }

        #[test]
        fn parse_round_trip(x in dyadic()) {
            prop_assert_eq!(x.to_string().parse::<Dyadic>().unwrap(), x);
        }

        #[test]
        fn simplest_is_simplest(x in dyadic(), y in dyadic()) {
            prop_assume!(x != y);
            let (l, r) = if x < y { (x, y) } else { (y, x) };
            let s = Dyadic::simplest_between(l, r).unwrap();
            prop_assert!(l < s && s < r);
            // every dyadic on the grid of l and r that is strictly inside is no simpler
            let e = l.exp().max(r.exp()) + 1;
            let mut k = l.ceil_on_grid(e).unwrap();
            while Dyadic::new(k, e) < r {
                let c = Dyadic::new(k, e);
                if c > l {
                    prop_assert!(c.birthday() >= s.birthday());
                    if c != s {
                        prop_assert!(c.birthday() > s.birthday());
                    }
                }
                k += 1;
            }
        }
    }
}
