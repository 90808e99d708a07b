//! Closed forms for Little John stops and for the temperature and mean of
//! large Robin Hood heaps, plus an empirical threshold search.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::pingala::{golden_class, mp_from_pair, GoldenClass};
use crate::robinhood::{Engine, RHPosition};
use crate::thermo::TentClass;

fn int(k: i64) -> Dyadic {
    Dyadic::from(k)
}

fn check_domain(pos: RHPosition) -> Result<()> {
    if (pos.n as u64) < pos.a as u64 + pos.b as u64 {
        return Err(Error::OutsideFormulaDomain(pos));
    }
    Ok(())
}

fn u0(a: u32, b: u32) -> Result<i64> {
    Ok(mp_from_pair(a as u64, b as u64)?.0.u0 as i64)
}

fn right_stop(n: u32, a: u32, b: u32) -> Result<Dyadic> {
    let (n, ai, bi) = (n as i64, a as i64, b as i64);
    Ok(match (a, b) {
        (0, 0) => Dyadic::ZERO,
        (0, _) => int(-n),
        (_, 0) => int(n),
        _ if a <= b => int(-(n - ai)),
        _ => match golden_class(a as u64, b as u64)? {
            GoldenClass::AbovePhi => int(n - (ai + bi) + u0(a, b)?),
            _ => int(ai + bi - n - u0(a, b)?),
        },
    })
}

/// `(ls, rs)` of the Little John game of `pos`, valid for `n >= a + b`.
pub fn lj_stops_formula(pos: RHPosition) -> Result<(Dyadic, Dyadic)> {
    check_domain(pos)?;
    let rs = right_stop(pos.n, pos.a, pos.b)?;
    let ls = -right_stop(pos.n, pos.b, pos.a)?;
    Ok((ls, rs))
}

fn main_values(n: u32, a: u32, b: u32) -> Result<(Dyadic, Dyadic)> {
    if a == 0 || b == 0 {
        return Err(Error::NonPositiveWealth(a as u64, b as u64));
    }
    check_domain(RHPosition::new(n, a, b))?;
    let u = u0(a, b)?;
    let (n, a64, b64) = (n as i64, a as i64, b as i64);
    Ok(match golden_class(a as u64, b as u64)? {
        GoldenClass::BelowPhiInverse => (int(b64 - u), int(-(n - (a64 + b64) + u))),
        GoldenClass::BetweenPhiInvAndOne => (
            int(n - a64) + int(u - b64).half(),
            int(u - b64).half(),
        ),
        GoldenClass::One => (int(n - a64), Dyadic::ZERO),
        GoldenClass::BetweenOneAndPhi => (
            int(n - b64) + int(u - a64).half(),
            int(a64 - u).half(),
        ),
        GoldenClass::AbovePhi => (int(a64 - u), int(n - (a64 + b64) + u)),
    })
}

/// Temperature of a large Robin Hood heap by golden class.
pub fn main_temperature(n: u32, a: u32, b: u32) -> Result<Dyadic> {
    Ok(main_values(n, a, b)?.0)
}

/// Mean value of a large Robin Hood heap by golden class.
pub fn main_mean(n: u32, a: u32, b: u32) -> Result<Dyadic> {
    Ok(main_values(n, a, b)?.1)
}

/// Predicted thermograph shape of the Little John game.
pub fn tent_prediction(a: u32, b: u32) -> Result<TentClass> {
    Ok(match golden_class(a as u64, b as u64)? {
        GoldenClass::AbovePhi => TentClass::LST,
        GoldenClass::BelowPhiInverse => TentClass::RST,
        _ => TentClass::DT,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdReport {
    pub a: u32,
    pub b: u32,
    /// Least `n` from which brute force matches the formulas over the window.
    pub n0: Option<u32>,
    pub window: u32,
    /// Largest heap size examined.
    pub scanned_to: u32,
}

pub const DEFAULT_WINDOW: u32 = 5;

/// Scans `n` upward from `a + b` for the first `n0` such that temperature
/// and mean of the Robin Hood game match the closed forms for every heap in
/// `[n0, n0 + window]`, never looking past `n_max`.
///
/// A finite window stands in for "all larger n"; the result is empirical.
pub fn threshold_search(
    engine: &mut Engine,
    a: u32,
    b: u32,
    window: u32,
    n_max: u32,
) -> Result<ThresholdReport> {
    assert!(window >= 1, "window must be positive");
    let start = a + b;
    let mut run = 0u32;
    let mut scanned_to = start;
    let mut n0 = None;
    for n in start..=n_max {
        scanned_to = n;
        if formula_matches(engine, RHPosition::new(n, a, b))? {
            run += 1;
            if run == window + 1 {
                n0 = Some(n - window);
                break;
            }
        } else {
            run = 0;
        }
    }
    Ok(ThresholdReport {
        a,
        b,
        n0,
        window,
        scanned_to,
    })
}

/// Whether brute-force temperature and mean of the Robin Hood game of `pos`
/// equal the closed forms.
pub fn formula_matches(engine: &mut Engine, pos: RHPosition) -> Result<bool> {
    let g = engine.rh_to_game(pos)?;
    let t = engine.store().thermograph(g);
    Ok(t.temperature == main_temperature(pos.n, pos.a, pos.b)?
        && t.mean == main_mean(pos.n, pos.a, pos.b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn pos(n: u32, a: u32, b: u32) -> RHPosition {
        RHPosition::new(n, a, b)
    }

    #[test]
    fn stop_formula() {
        assert_eq!(lj_stops_formula(pos(10, 5, 3)).unwrap(), (d("7"), d("3")));
        assert_eq!(lj_stops_formula(pos(10, 5, 4)).unwrap(), (d("6"), d("-4")));
        assert_eq!(lj_stops_formula(pos(9, 4, 0)).unwrap(), (d("9"), d("9")));
        assert_eq!(lj_stops_formula(pos(9, 0, 0)).unwrap(), (d("0"), d("0")));
        assert_eq!(
            lj_stops_formula(pos(7, 4, 4)),
            Err(Error::OutsideFormulaDomain(pos(7, 4, 4)))
        );
    }

    #[test]
    fn main_formulas() {
        assert_eq!(main_temperature(10, 5, 3).unwrap(), d("4"));
        assert_eq!(main_temperature(10, 5, 4).unwrap(), d("5"));
        for n in 8..30 {
            assert_eq!(main_temperature(n, 2, 3).unwrap(), Dyadic::from(n as i64 - 3));
            assert_eq!(main_mean(n, 4, 4).unwrap(), Dyadic::ZERO);
        }
        assert_eq!(main_mean(10, 5, 3).unwrap(), d("3"));
        assert_eq!(main_mean(12, 5, 4).unwrap(), d("1"));
        assert_eq!(main_temperature(20, 5, 8).unwrap(), d("23/2"));
        assert!(main_temperature(8, 5, 4).is_err());
        assert!(main_mean(8, 0, 4).is_err());
    }

    #[test]
    fn tents() {
        assert_eq!(tent_prediction(5, 3).unwrap(), TentClass::LST);
        assert_eq!(tent_prediction(3, 5).unwrap(), TentClass::RST);
        assert_eq!(tent_prediction(5, 4).unwrap(), TentClass::DT);
    }

    #[test]
    fn thresholds() {
        let mut e = Engine::new();
        let r = threshold_search(&mut e, 5, 4, 4, 30).unwrap();
        assert_eq!(r.n0, Some(9));
        let r = threshold_search(&mut e, 5, 3, 3, 30).unwrap();
        assert_eq!(r.n0, Some(10));
        let r = threshold_search(&mut e, 2, 3, DEFAULT_WINDOW, 30).unwrap();
        assert!(r.n0.is_some_and(|n0| n0 <= 8));
    }
}
