//! Verification suites: brute force against frozen table data and against
//! the closed forms. Each suite yields a [`Report`] of named checks.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::{lj_stops_formula, main_mean, main_temperature, threshold_search};
use crate::dyadic::Dyadic;
use crate::error::Result;
use crate::game::{GameStore, Player};
use crate::robinhood::{rh_options, Engine, RHPosition, Ruleset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Table1,
    Table2,
    MainTheorem,
    Stops,
    Monotonicity,
    Hotstrat,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Table1,
        Suite::Table2,
        Suite::MainTheorem,
        Suite::Stops,
        Suite::Monotonicity,
        Suite::Hotstrat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Table2 => "table2",
            Suite::MainTheorem => "main-theorem",
            Suite::Stops => "stops",
            Suite::Monotonicity => "monotonicity",
            Suite::Hotstrat => "hotstrat",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Wealth grid is `1..=max_wealth` (or `0..=max_wealth` for stops).
    pub max_wealth: u32,
    /// Heaps run up to `a + b + margin`.
    pub margin: u32,
    pub window: u32,
    pub store_cap: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            max_wealth: 8,
            margin: 12,
            window: crate::closed_form::DEFAULT_WINDOW,
            store_cap: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn pass_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        write!(
            f,
            "{}: {}/{} checks passed",
            self.suite,
            self.pass_count(),
            self.checks.len()
        )
    }
}

/// One row of frozen heap-size data: temperature and mean of `(n;a,b)`.
#[derive(Debug, Clone, Copy)]
pub struct Table1Entry {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub temperature: &'static str,
    pub mean: &'static str,
}

const fn t1(n: u32, a: u32, b: u32, temperature: &'static str, mean: &'static str) -> Table1Entry {
    Table1Entry {
        n,
        a,
        b,
        temperature,
        mean,
    }
}

pub const TABLE1: [Table1Entry; 22] = [
    t1(3, 5, 4, "0", "0"),
    t1(4, 5, 4, "0", "0"),
    t1(5, 5, 4, "1/2", "1/2"),
    t1(6, 5, 4, "5/4", "3/4"),
    t1(7, 5, 4, "17/8", "7/8"),
    t1(8, 5, 4, "49/16", "15/16"),
    t1(9, 5, 4, "4", "1"),
    t1(10, 5, 4, "5", "1"),
    t1(11, 5, 4, "6", "1"),
    t1(12, 5, 4, "7", "1"),
    t1(13, 5, 4, "8", "1"),
    t1(3, 5, 3, "0", "0"),
    t1(4, 5, 3, "1/2", "1/2"),
    t1(5, 5, 3, "1", "1"),
    t1(6, 5, 3, "7/4", "5/4"),
    t1(7, 5, 3, "19/8", "13/8"),
    t1(8, 5, 3, "3", "2"),
    t1(9, 5, 3, "7/2", "5/2"),
    t1(10, 5, 3, "4", "3"),
    t1(11, 5, 3, "4", "4"),
    t1(12, 5, 3, "4", "5"),
    t1(13, 5, 3, "4", "6"),
];

/// Temperature of `(n;a,b)` from `bound` on: `n - value` when increasing,
/// else the constant `value`.
#[derive(Debug, Clone, Copy)]
pub struct Table2Row {
    pub a: u32,
    pub b: u32,
    pub increasing: bool,
    pub value: &'static str,
    pub bound: u32,
}

const fn t2(a: u32, b: u32, increasing: bool, value: &'static str, bound: u32) -> Table2Row {
    Table2Row {
        a,
        b,
        increasing,
        value,
        bound,
    }
}

pub const TABLE2: [Table2Row; 13] = [
    t2(1, 1, true, "1", 1),
    t2(1, 2, false, "1", 3),
    t2(1, 3, false, "1", 4),
    t2(2, 3, true, "3", 8),
    t2(2, 4, false, "2", 6),
    t2(2, 9, false, "2", 11),
    t2(3, 4, true, "4", 7),
    t2(3, 5, false, "4", 10),
    t2(3, 6, false, "3", 9),
    t2(5, 8, true, "17/2", 15),
    t2(5, 9, false, "6", 16),
    t2(7, 11, true, "23/2", 20),
    t2(7, 12, false, "9", 15),
];

/// Heap sizes past the bound that each row is checked over.
pub const TABLE2_SPAN: u32 = 10;

impl Table2Row {
    pub fn expected(&self, n: u32) -> Dyadic {
        let v: Dyadic = self.value.parse().expect("frozen table value");
        if self.increasing {
            Dyadic::from(n) - v
        } else {
            v
        }
    }

    pub fn describe(&self) -> String {
        if self.increasing {
            format!("n-{}", self.value)
        } else {
            self.value.to_string()
        }
    }
}

fn engine(opts: &VerifyOptions) -> Engine {
    Engine::with_store(GameStore::with_cap(opts.store_cap))
}

fn collect<T: Send>(items: Vec<Result<T>>) -> Result<Vec<T>> {
    items.into_iter().collect()
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let checks = match suite {
        Suite::Table1 => table1(opts)?,
        Suite::Table2 => table2(opts)?,
        Suite::MainTheorem => main_theorem(opts)?,
        Suite::Stops => stops(opts)?,
        Suite::Monotonicity => monotonicity(opts)?,
        Suite::Hotstrat => hotstrat(opts)?,
    };
    Ok(Report {
        suite: suite.name().to_string(),
        checks,
    })
}

fn table1(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut e = engine(opts);
    let mut out = Vec::new();
    for row in TABLE1 {
        let pos = RHPosition::new(row.n, row.a, row.b);
        let g = e.rh_to_game(pos)?;
        let th = e.store().thermograph(g);
        let (t, m): (Dyadic, Dyadic) = (
            row.temperature.parse().expect("frozen"),
            row.mean.parse().expect("frozen"),
        );
        out.push(Check::new(
            format!("t,m {pos}"),
            th.temperature == t && th.mean == m,
            format!(
                "expected t={t} m={m}, got t={} m={}",
                th.temperature, th.mean
            ),
        ));
    }
    Ok(out)
}

fn table2(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let rows: Vec<Result<Check>> = TABLE2
        .par_iter()
        .map_init(
            || engine(opts),
            |e, row| {
                let mut bad = Vec::new();
                for n in row.bound..=row.bound + TABLE2_SPAN {
                    let g = e.rh_to_game(RHPosition::new(n, row.a, row.b))?;
                    let t = e.store().temperature(g);
                    if t != row.expected(n) {
                        bad.push(format!("n={n}: t={t} want {}", row.expected(n)));
                    }
                }
                let detail = if bad.is_empty() {
                    format!(
                        "t={} for n in {}..={}",
                        row.describe(),
                        row.bound,
                        row.bound + TABLE2_SPAN
                    )
                } else {
                    bad.join("; ")
                };
                Ok(Check::new(
                    format!("(n;{},{})", row.a, row.b),
                    bad.is_empty(),
                    detail,
                ))
            },
        )
        .collect();
    collect(rows)
}

fn wealth_pairs(lo: u32, hi: u32) -> Vec<(u32, u32)> {
    (lo..=hi)
        .flat_map(|a| (lo..=hi).map(move |b| (a, b)))
        .collect()
}

fn main_theorem(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let rows: Vec<Result<Check>> = wealth_pairs(1, opts.max_wealth)
        .par_iter()
        .map_init(
            || engine(opts),
            |e, &(a, b)| {
                let n_max = a + b + opts.margin;
                let report = threshold_search(e, a, b, opts.window, n_max)?;
                let name = format!("(n;{a},{b})");
                let Some(n0) = report.n0 else {
                    return Ok(Check::new(
                        name,
                        false,
                        format!("no threshold up to n={}", report.scanned_to),
                    ));
                };
                let mut bad = Vec::new();
                for n in n0..=n_max {
                    let g = e.rh_to_game(RHPosition::new(n, a, b))?;
                    let th = e.store().thermograph(g);
                    let (t, m) = (main_temperature(n, a, b)?, main_mean(n, a, b)?);
                    if th.temperature != t || th.mean != m {
                        bad.push(format!(
                            "n={n}: t={} m={} want t={t} m={m}",
                            th.temperature, th.mean
                        ));
                    }
                }
                let detail = if bad.is_empty() {
                    format!("n0={n0}, formulas hold up to n={n_max}")
                } else {
                    bad.join("; ")
                };
                Ok(Check::new(name, bad.is_empty(), detail))
            },
        )
        .collect();
    collect(rows)
}

fn stops(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let rows: Vec<Result<Check>> = wealth_pairs(0, opts.max_wealth)
        .par_iter()
        .map_init(
            || engine(opts),
            |e, &(a, b)| {
                let mut bad = Vec::new();
                for n in a + b..=a + b + opts.margin {
                    let pos = RHPosition::new(n, a, b);
                    let rh = e.rh_to_game(pos)?;
                    let lj = e.lj_to_game(pos)?;
                    let (s_rh, s_lj) = (e.store().stops(rh), e.store().stops(lj));
                    let f = lj_stops_formula(pos)?;
                    if s_rh != s_lj || s_lj != f {
                        bad.push(format!(
                            "{pos}: rh={s_rh:?} lj={s_lj:?} formula={f:?}"
                        ));
                    }
                }
                let detail = if bad.is_empty() {
                    format!("stops agree for n in {}..={}", a + b, a + b + opts.margin)
                } else {
                    bad.join("; ")
                };
                Ok(Check::new(format!("(n;{a},{b})"), bad.is_empty(), detail))
            },
        )
        .collect();
    collect(rows)
}

fn lj_stops(e: &mut Engine, n: u32, a: u32, b: u32) -> Result<(Dyadic, Dyadic)> {
    let g = e.lj_to_game(RHPosition::new(n, a, b))?;
    Ok(e.store().stops(g))
}

fn rh_stops(e: &mut Engine, pos: RHPosition) -> Result<(Dyadic, Dyadic)> {
    let g = e.rh_to_game(pos)?;
    Ok(e.store().stops(g))
}

/// Heap size from which the option chains are checked.
pub fn option_chain_start(a: u32, b: u32) -> u32 {
    2 * (a + b)
}

/// Stop chains over the options `L_i = (n-i;a,b-i)`, `R_i = (n-i;a-i,b)`
/// for `i` in `1..=b`, with `a >= b >= 1`. Returns a description of the first
/// broken link.
pub fn option_chain_violation(e: &mut Engine, pos: RHPosition) -> Result<Option<String>> {
    let RHPosition { n, a, b } = pos;
    assert!(a >= b && b >= 1 && n >= b);
    let lefts: Vec<RHPosition> = rh_options(pos, Player::Left).into_iter().take(b as usize).collect();
    let rights: Vec<RHPosition> = rh_options(pos, Player::Right).into_iter().take(b as usize).collect();
    let ls: Vec<(Dyadic, Dyadic)> = lefts.iter().map(|&p| rh_stops(e, p)).collect::<Result<_>>()?;
    let rs: Vec<(Dyadic, Dyadic)> = rights.iter().map(|&p| rh_stops(e, p)).collect::<Result<_>>()?;
    let top = Dyadic::from(n as i64 - b as i64);
    if let Some(i) = ls.iter().position(|s| s.0 != top) {
        return Ok(Some(format!("{pos}: Ls(L_{}) = {} != {top}", i + 1, ls[i].0)));
    }
    if ls.last().map(|s| s.1) != Some(top) {
        return Ok(Some(format!("{pos}: Rs(L_b) != {top}")));
    }
    for i in 1..ls.len() {
        if ls[i - 1].1 > ls[i].1 {
            return Ok(Some(format!("{pos}: Rs(L_{i}) > Rs(L_{})", i + 1)));
        }
        if rs[i - 1].0 < rs[i].0 {
            return Ok(Some(format!("{pos}: Ls(R_{i}) < Ls(R_{})", i + 1)));
        }
        if rs[i - 1].1 < rs[i].1 {
            return Ok(Some(format!("{pos}: Rs(R_{i}) < Rs(R_{})", i + 1)));
        }
    }
    Ok(None)
}

fn monotonicity(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let rows: Vec<Result<Check>> = wealth_pairs(0, opts.max_wealth)
        .par_iter()
        .map_init(
            || engine(opts),
            |e, &(a, b)| {
                let mut bad = Vec::new();
                for n in a + b..=a + b + opts.margin {
                    let here = lj_stops(e, n, a, b)?;
                    if n > a + b {
                        let richer_left = lj_stops(e, n, a + 1, b)?;
                        let richer_right = lj_stops(e, n, a, b + 1)?;
                        if here.1 > richer_left.1 || here.0 > richer_left.0 {
                            bad.push(format!("({n};{a},{b}) vs ({n};{},{b})", a + 1));
                        }
                        if richer_right.1 > here.1 || richer_right.0 > here.0 {
                            bad.push(format!("({n};{a},{}) vs ({n};{a},{b})", b + 1));
                        }
                    }
                    if b >= 1 {
                        let shifted = lj_stops(e, n, a + 1, b - 1)?;
                        if here.1 > shifted.1 {
                            bad.push(format!("Rs({n};{a},{b}) > Rs({n};{},{})", a + 1, b - 1));
                        }
                    }
                    if a >= b && b >= 1 && n >= option_chain_start(a, b) {
                        if let Some(v) = option_chain_violation(e, RHPosition::new(n, a, b))? {
                            bad.push(v);
                        }
                    }
                }
                let detail = if bad.is_empty() {
                    format!("monotone for n in {}..={}", a + b, a + b + opts.margin)
                } else {
                    bad.join("; ")
                };
                Ok(Check::new(format!("(n;{a},{b})"), bad.is_empty(), detail))
            },
        )
        .collect();
    collect(rows)
}

/// The two-heap sum `(11;1,1) + (12;2,1)` with Right to move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HotstratDemo {
    pub hot: RHPosition,
    pub cool: RHPosition,
    pub hot_temperature: Dyadic,
    pub cool_temperature: Dyadic,
    /// Right moves in the hot heap, Left answers in the cool heap.
    pub hot_line: (RHPosition, RHPosition),
    pub hot_line_left_wins: bool,
    /// Right moves in the cool heap; Left to move afterwards.
    pub cool_reply: RHPosition,
    pub cool_move_right_wins: bool,
    /// Whether each Right option of the sum wins for Right, tagged by heap.
    pub right_options: Vec<(RHPosition, RHPosition, bool)>,
}

pub fn hotstrat_demo(e: &mut Engine) -> Result<HotstratDemo> {
    let hot = RHPosition::new(11, 1, 1);
    let cool = RHPosition::new(12, 2, 1);
    let g_hot = e.rh_to_game(hot)?;
    let g_cool = e.rh_to_game(cool)?;
    let hot_temperature = e.store().temperature(g_hot);
    let cool_temperature = e.store().temperature(g_cool);

    let sum_of = |e: &mut Engine, x: RHPosition, y: RHPosition| {
        e.sum_positions(&[(Ruleset::RobinHood, x), (Ruleset::RobinHood, y)])
    };

    let hot_move = RHPosition::new(10, 0, 1);
    let answer = RHPosition::new(11, 2, 0);
    let after = sum_of(e, hot_move, answer)?;
    // Right moves next in the answered position.
    let hot_line_left_wins = e.store().outcome(after).right_start_winner == Player::Left;

    let cool_reply = RHPosition::new(11, 1, 1);
    let after = sum_of(e, hot, cool_reply)?;
    let cool_move_right_wins = e.store().outcome(after).left_start_winner == Player::Right;

    let mut right_options = Vec::new();
    for r in rh_options(hot, Player::Right) {
        let g = sum_of(e, r, cool)?;
        let wins = e.store().outcome(g).left_start_winner == Player::Right;
        right_options.push((r, cool, wins));
    }
    for r in rh_options(cool, Player::Right) {
        let g = sum_of(e, hot, r)?;
        let wins = e.store().outcome(g).left_start_winner == Player::Right;
        right_options.push((hot, r, wins));
    }

    Ok(HotstratDemo {
        hot,
        cool,
        hot_temperature,
        cool_temperature,
        hot_line: (hot_move, answer),
        hot_line_left_wins,
        cool_reply,
        cool_move_right_wins,
        right_options,
    })
}

fn hotstrat(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut e = engine(opts);
    let d = hotstrat_demo(&mut e)?;
    let winning: Vec<_> = d.right_options.iter().filter(|o| o.2).collect();
    let unique_cool = winning.len() == 1 && winning[0].0 == d.hot;
    Ok(vec![
        Check::new(
            "t(11;1,1)",
            d.hot_temperature == Dyadic::from(10i64),
            format!("t={}", d.hot_temperature),
        ),
        Check::new(
            "t(12;2,1)",
            d.cool_temperature == Dyadic::ONE,
            format!("t={}", d.cool_temperature),
        ),
        Check::new(
            "hot move loses",
            d.hot_line_left_wins,
            format!("{} + {} wins for Left", d.hot_line.0, d.hot_line.1),
        ),
        Check::new(
            "cool move wins",
            d.cool_move_right_wins,
            format!("{} + {} wins for Right", d.hot, d.cool_reply),
        ),
        Check::new(
            "unique winning move",
            unique_cool,
            format!("{} of {} Right options win", winning.len(), d.right_options.len()),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("table3".parse::<Suite>().is_err());
    }

    #[test]
    fn table2_expectations() {
        let row = TABLE2[9];
        assert_eq!((row.a, row.b), (5, 8));
        assert_eq!(row.expected(20), "23/2".parse().unwrap());
        assert_eq!(row.describe(), "n-17/2");
    }

    #[test]
    fn table2_agrees_with_closed_forms_past_a_plus_b() {
        for row in TABLE2 {
            let n = (row.a + row.b).max(row.bound);
            assert_eq!(row.expected(n), main_temperature(n, row.a, row.b).unwrap());
        }
    }

    #[test]
    fn hotstrat_suite_passes() {
        let r = run(Suite::Hotstrat, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn small_stops_grid() {
        let opts = VerifyOptions {
            max_wealth: 3,
            margin: 4,
            ..VerifyOptions::default()
        };
        let r = run(Suite::Stops, &opts).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 16);
    }
}
