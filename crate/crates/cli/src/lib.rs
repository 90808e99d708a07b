//! Expression parsing and report rendering behind the `robinhood` binary.

use std::fmt;

use robinhood_core::robinhood::lj_path;
use robinhood_core::verify::HotstratDemo;
use robinhood_core::{
    Dyadic, Engine, GameId, GameStore, PathTrace, Player, RHPosition, Ruleset,
    Thermograph,
};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Term {
    Heap(Ruleset, RHPosition),
    Number(Dyadic),
}

/// A disjunctive sum of heaps and numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Heap(Ruleset::RobinHood, p) => write!(f, "{};{},{}", p.n, p.a, p.b),
            Term::Heap(Ruleset::LittleJohn, p) => write!(f, "lj:{};{},{}", p.n, p.a, p.b),
            Term::Number(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    at: usize,
}

impl Parser<'_> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.at,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.at..];
        self.at += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.src[self.at..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.at += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    /// A run of digits, optionally signed; returns the text.
    fn integer(&mut self) -> Result<(usize, &str), ParseError> {
        self.skip_ws();
        let start = self.at;
        if self.peek() == Some('-') {
            self.at += 1;
        }
        let digits = self.src[self.at..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            self.at = start;
            return self.fail("expected an integer");
        }
        self.at += digits;
        Ok((start, &self.src[start..self.at]))
    }

    fn unsigned(&mut self) -> Result<u32, ParseError> {
        let (start, text) = self.integer()?;
        if text.starts_with('-') {
            return Err(ParseError {
                offset: start,
                message: "negative values are not allowed in positions".into(),
            });
        }
        text.parse().map_err(|_| ParseError {
            offset: start,
            message: format!("{text} is out of range"),
        })
    }

    fn position(&mut self, ruleset: Ruleset, n: u32) -> Result<Term, ParseError> {
        self.expect(';')?;
        let a = self.unsigned()?;
        self.expect(',')?;
        let b = self.unsigned()?;
        Ok(Term::Heap(ruleset, RHPosition::new(n, a, b)))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        if self.src[self.at..].starts_with("lj:") {
            self.at += 3;
            let n = self.unsigned()?;
            return self.position(Ruleset::LittleJohn, n);
        }
        let (start, head) = self.integer()?;
        let head = head.to_string();
        self.skip_ws();
        match self.peek() {
            Some(';') => {
                self.at = start;
                let n = self.unsigned()?;
                self.position(Ruleset::RobinHood, n)
            }
            Some('/') => {
                self.at += 1;
                let (_, den) = self.integer()?;
                let mut text = format!("{head}/{den}");
                if self.eat('^') {
                    let (_, e) = self.integer()?;
                    text = format!("{text}^{e}");
                }
                text.parse().map(Term::Number).map_err(|e| ParseError {
                    offset: start,
                    message: format!("{e}"),
                })
            }
            _ => head.parse().map(Term::Number).map_err(|e| ParseError {
                offset: start,
                message: format!("{e}"),
            }),
        }
    }
}

/// Parses `term ("+" term)*` where a term is `[lj:]n;a,b` or a dyadic
/// literal such as `-3`, `3/2` or `5/2^3`.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src, at: 0 };
    let mut terms = vec![p.term()?];
    while p.eat('+') {
        terms.push(p.term()?);
    }
    p.skip_ws();
    if p.at != src.len() {
        return p.fail("expected '+' or end of input");
    }
    Ok(Expr { terms })
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Engine(#[from] robinhood_core::Error),
    #[error("thermographs take a single term, got {0}")]
    NotSingleTerm(usize),
    #[error("RH_STORE_CAP must be a positive integer, got {0:?}")]
    BadStoreCap(String),
}

/// Engine honouring the `RH_STORE_CAP` setting, if any.
pub fn engine_with_cap(cap: Option<&str>) -> Result<Engine, CliError> {
    let cap = match cap {
        None => None,
        Some(text) => match text.trim().parse::<usize>() {
            Ok(c) if c > 0 => Some(c),
            _ => return Err(CliError::BadStoreCap(text.to_string())),
        },
    };
    Ok(Engine::with_store(GameStore::with_cap(cap)))
}

pub fn build(engine: &mut Engine, expr: &Expr) -> Result<GameId, CliError> {
    let mut acc = engine.store().zero();
    for term in &expr.terms {
        let g = match *term {
            Term::Heap(ruleset, pos) => engine.to_game(ruleset, pos)?,
            Term::Number(x) => engine.store().from_dyadic(x)?,
        };
        acc = engine.store().sum(acc, g)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalFlags {
    pub stops: bool,
    pub outcome: bool,
    pub canonical: bool,
    pub temp: bool,
    pub mean: bool,
}

impl EvalFlags {
    /// No flag selects everything except the canonical form.
    pub fn or_default(self) -> EvalFlags {
        if self == EvalFlags::default() {
            EvalFlags {
                stops: true,
                outcome: true,
                canonical: false,
                temp: true,
                mean: true,
            }
        } else {
            self
        }
    }
}

fn player(p: Player) -> &'static str {
    match p {
        Player::Left => "Left",
        Player::Right => "Right",
    }
}

/// `key: value` lines for the requested quantities.
pub fn eval_report(engine: &mut Engine, expr: &Expr, flags: EvalFlags) -> Result<Vec<(String, String)>, CliError> {
    let flags = flags.or_default();
    let g = build(engine, expr)?;
    let s = engine.store();
    let mut out = Vec::new();
    if flags.stops {
        let (ls, rs) = s.stops(g);
        out.push(("ls".into(), ls.to_string()));
        out.push(("rs".into(), rs.to_string()));
    }
    if flags.outcome {
        let o = s.outcome(g);
        out.push(("outcome".into(), o.class().to_string()));
        out.push(("left_start_winner".into(), player(o.left_start_winner).into()));
        out.push(("right_start_winner".into(), player(o.right_start_winner).into()));
    }
    if flags.canonical {
        let c = s.canonical_form(g)?;
        out.push(("canonical".into(), s.render(c)));
    }
    if flags.temp {
        out.push(("temperature".into(), s.temperature(g).to_string()));
    }
    if flags.mean {
        out.push(("mean".into(), s.mean(g).to_string()));
    }
    Ok(out)
}

pub fn thermograph_of(engine: &mut Engine, expr: &Expr) -> Result<Thermograph, CliError> {
    if expr.terms.len() != 1 {
        return Err(CliError::NotSingleTerm(expr.terms.len()));
    }
    let g = build(engine, expr)?;
    Ok((*engine.store().thermograph(g)).clone())
}

pub fn thermograph_json(t: &Thermograph) -> String {
    serde_json::to_string_pretty(t).expect("thermographs serialize")
}

fn side(p: Player) -> char {
    match p {
        Player::Left => 'L',
        Player::Right => 'R',
    }
}

pub fn path_listing(pos: RHPosition, starter: Player) -> (PathTrace, String) {
    let trace = lj_path(pos, starter);
    let mut out = format!("start {pos}\n");
    for step in &trace.steps {
        out.push_str(&format!(
            "{} removes {} -> {}\n",
            side(step.mover),
            step.removed,
            step.position
        ));
    }
    let pairs: Vec<String> = trace
        .wealth_pairs()
        .iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect();
    out.push_str(&format!("wealth {}\n", pairs.join(" ")));
    (trace, out)
}

pub fn hotstrat_listing(d: &HotstratDemo) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "G1 = {}  t = {}\nG2 = {}  t = {}\n",
        d.hot, d.hot_temperature, d.cool, d.cool_temperature
    ));
    out.push_str(&format!(
        "Right plays G1 -> {}; Left answers in G2 -> {}; Left wins: {}\n",
        d.hot_line.0, d.hot_line.1, d.hot_line_left_wins
    ));
    out.push_str(&format!(
        "Right plays G2 -> {}; Right wins: {}\n",
        d.cool_reply, d.cool_move_right_wins
    ));
    for (x, y, wins) in &d.right_options {
        out.push_str(&format!("  Right option {x} + {y}: {}\n", if *wins { "wins" } else { "loses" }));
    }
    out
}
