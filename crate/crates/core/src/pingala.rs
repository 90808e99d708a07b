//! Pingala (Fibonacci) numbers, ratio sequences, modified Pingala sequences
//! and golden-ratio classification.
//!
//! The golden ratio never appears numerically: for positive integers,
//! `a/b > φ` iff `a² - ab - b² > 0`, and the quadratic never vanishes.

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Reduced fraction with a positive denominator.
pub type Rational = Ratio<i128>;

/// `P_0 = 0`, `P_1 = 1`, `P_{k+2} = P_{k+1} + P_k`.
pub fn pingala(k: u32) -> Result<u128> {
    if k == 0 {
        return Ok(0);
    }
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 1..k {
        (a, b) = (b, a.checked_add(b).ok_or(Error::PingalaOverflow(k))?);
    }
    Ok(b)
}

/// `(-1)^(k+1) P_k`.
pub fn alt_pingala(k: u32) -> Result<i128> {
    let p = i128::try_from(pingala(k)?).map_err(|_| Error::PingalaOverflow(k))?;
    Ok(if k % 2 == 1 { p } else { -p })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// `O_k = P_{2k+2} / P_{2k+1}`
    Odd,
    /// `E_k = P_{2k+3} / P_{2k+2}`
    Even,
}

pub fn ratio(k: u32, parity: Parity) -> Result<Rational> {
    let base = match parity {
        Parity::Odd => 2 * k + 1,
        Parity::Even => 2 * k + 2,
    };
    let num = i128::try_from(pingala(base + 1)?).map_err(|_| Error::PingalaOverflow(base + 1))?;
    let den = i128::try_from(pingala(base)?).map_err(|_| Error::PingalaOverflow(base))?;
    Ok(Rational::new(num, den))
}

/// Seeds of a modified Pingala sequence: `U_0 >= U_1 >= 1`, then the
/// Fibonacci recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MPSequence {
    pub u0: u64,
    pub u1: u64,
}

impl MPSequence {
    pub fn new(u0: u64, u1: u64) -> Option<MPSequence> {
        (u1 >= 1 && u0 >= u1).then_some(MPSequence { u0, u1 })
    }

    /// `U_k`, or `None` on overflow.
    pub fn term(&self, k: u32) -> Option<u128> {
        if k == 0 {
            return Some(self.u0 as u128);
        }
        let (mut a, mut b) = (self.u0 as u128, self.u1 as u128);
        for _ in 1..k {
            (a, b) = (b, a.checked_add(b)?);
        }
        Some(b)
    }
}

/// The sequence and index `μ` with `U_μ = min(a, b)` and
/// `U_{μ+1} = max(a, b)`, found by stepping the recurrence backwards.
pub fn mp_from_pair(a: u64, b: u64) -> Result<(MPSequence, u32)> {
    if a == 0 || b == 0 {
        return Err(Error::NonPositiveWealth(a, b));
    }
    let (mut x, mut y) = (a.min(b), a.max(b));
    let mut mu = 0;
    while x < y {
        (x, y) = (y - x, x);
        mu += 1;
    }
    Ok((MPSequence { u0: x, u1: y }, mu))
}

/// `μ` from the ratio sequences: `2 min{k : hi/lo <= O_k}` below φ,
/// `2 min{k : hi/lo >= E_k} + 1` above.
pub fn mu_via_ratios(a: u64, b: u64) -> Result<u32> {
    if a == 0 || b == 0 {
        return Err(Error::NonPositiveWealth(a, b));
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let q = Rational::new(hi as i128, lo as i128);
    if golden_sign(hi, lo) < 0 {
        let mut k = 0;
        while q > ratio(k, Parity::Odd)? {
            k += 1;
        }
        Ok(2 * k)
    } else {
        let mut k = 0;
        while q < ratio(k, Parity::Even)? {
            k += 1;
        }
        Ok(2 * k + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GoldenClass {
    BelowPhiInverse,
    BetweenPhiInvAndOne,
    One,
    BetweenOneAndPhi,
    AbovePhi,
}

/// Sign of `a² - ab - b²`, which is positive iff `a/b > φ`.
fn golden_sign(a: u64, b: u64) -> i32 {
    let (a, b) = (a as i128, b as i128);
    let s = a * a - a * b - b * b;
    assert_ne!(s, 0, "a² - ab - b² has no positive integer roots");
    s.signum() as i32
}

pub fn golden_class(a: u64, b: u64) -> Result<GoldenClass> {
    if a == 0 || b == 0 {
        return Err(Error::NonPositiveWealth(a, b));
    }
    Ok(match a.cmp(&b) {
        std::cmp::Ordering::Equal => GoldenClass::One,
        std::cmp::Ordering::Greater if golden_sign(a, b) > 0 => GoldenClass::AbovePhi,
        std::cmp::Ordering::Greater => GoldenClass::BetweenOneAndPhi,
        std::cmp::Ordering::Less if golden_sign(b, a) > 0 => GoldenClass::BelowPhiInverse,
        std::cmp::Ordering::Less => GoldenClass::BetweenPhiInvAndOne,
    })
}

/// `y/x < φ` for `1 <= x <= y`.
pub fn below_phi(x: u64, y: u64) -> bool {
    x == y || golden_sign(y, x) < 0
}
