//! The Robin Hood and Little John rulesets.
//!
//! A position `(n; a, b)` is a heap of `n` tokens with Left wealth `a` and
//! Right wealth `b`. Left removes `1 <= i <= min(n, a)` tokens and Right's
//! wealth drops by `i`, never below zero; Right moves symmetrically.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;

use crate::error::Result;
use crate::game::{GameId, GameStore, Player};
use crate::pingala::below_phi;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RHPosition {
    pub n: u32,
    pub a: u32,
    pub b: u32,
}

impl RHPosition {
    pub const fn new(n: u32, a: u32, b: u32) -> RHPosition {
        RHPosition { n, a, b }
    }

    /// Negative wealths are clamped to zero.
    pub fn clamped(n: u32, a: i64, b: i64) -> RHPosition {
        let clamp = |w: i64| u32::try_from(w.max(0)).unwrap_or(u32::MAX);
        RHPosition::new(n, clamp(a), clamp(b))
    }

    pub fn wealth(&self, player: Player) -> u32 {
        match player {
            Player::Left => self.a,
            Player::Right => self.b,
        }
    }

    /// The position after `player` removes `i` tokens.
    pub fn after(&self, player: Player, i: u32) -> RHPosition {
        debug_assert!(i >= 1 && i <= self.n.min(self.wealth(player)));
        match player {
            Player::Left => RHPosition::new(self.n - i, self.a, self.b.saturating_sub(i)),
            Player::Right => RHPosition::new(self.n - i, self.a.saturating_sub(i), self.b),
        }
    }

    /// The same position with the players' roles exchanged.
    pub fn swapped(&self) -> RHPosition {
        RHPosition::new(self.n, self.b, self.a)
    }

    /// Wealth above the heap size never matters; clamping it gives a
    /// structurally identical game, so it makes a better memo key.
    fn memo_key(&self) -> RHPosition {
        RHPosition::new(self.n, self.a.min(self.n), self.b.min(self.n))
    }
}

impl fmt::Display for RHPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{},{})", self.n, self.a, self.b)
    }
}

impl FromStr for RHPosition {
    type Err = String;

    /// `n;a,b`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> std::result::Result<RHPosition, String> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(t);
        let (n, rest) = t.split_once(';').ok_or_else(|| format!("expected n;a,b, got {s:?}"))?;
        let (a, b) = rest.split_once(',').ok_or_else(|| format!("expected n;a,b, got {s:?}"))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad number {x:?} in {s:?}: {e}"))
        };
        Ok(RHPosition::new(parse(n)?, parse(a)?, parse(b)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ruleset {
    RobinHood,
    LittleJohn,
}

/// All Robin Hood moves of `player`.
pub fn rh_options(pos: RHPosition, player: Player) -> Vec<RHPosition> {
    let max = pos.n.min(pos.wealth(player));
    (1..=max).map(|i| pos.after(player, i)).collect()
}

/// Robin Hood moves with the dominated tail dropped: when the mover is
/// richer than the opponent and the heap exceeds the opponent's wealth `w`,
/// removing more than `w` tokens is dominated by removing `max(w, 1)`.
pub fn rh_pruned_options(pos: RHPosition, player: Player) -> Vec<RHPosition> {
    let own = pos.wealth(player);
    let other = pos.wealth(player.opponent());
    let mut max = pos.n.min(own);
    if own > other && pos.n > other {
        max = max.min(other.max(1));
    }
    (1..=max).map(|i| pos.after(player, i)).collect()
}

/// The Little John move: remove `min(n, a, b)` tokens, or a single token
/// when the opponent is already broke.
pub fn lj_option(pos: RHPosition, player: Player) -> Option<RHPosition> {
    let own = pos.wealth(player);
    let other = pos.wealth(player.opponent());
    if pos.n == 0 || own == 0 {
        return None;
    }
    let gamma = if other == 0 { 1 } else { pos.n.min(own).min(other) };
    Some(pos.after(player, gamma))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathStep {
    /// Position after the move.
    pub position: RHPosition,
    pub mover: Player,
    pub removed: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTrace {
    pub start: RHPosition,
    pub steps: Vec<PathStep>,
}

impl PathTrace {
    /// `(a, b)` before the first move and after every move.
    pub fn wealth_pairs(&self) -> Vec<(u32, u32)> {
        std::iter::once(self.start)
            .chain(self.steps.iter().map(|s| s.position))
            .map(|p| (p.a, p.b))
            .collect()
    }

    pub fn end(&self) -> RHPosition {
        self.steps.last().map_or(self.start, |s| s.position)
    }
}

/// Alternating Little John moves from `starter` until the player to move
/// has none.
pub fn lj_path(pos: RHPosition, starter: Player) -> PathTrace {
    let mut steps = Vec::new();
    let mut cur = pos;
    let mut mover = starter;
    while let Some(next) = lj_option(cur, mover) {
        steps.push(PathStep {
            position: next,
            mover,
            removed: cur.n - next.n,
        });
        cur = next;
        mover = mover.opponent();
    }
    PathTrace { start: pos, steps }
}

/// Result of a position of the subtraction game on two heaps `x <= y` where
/// a move takes a positive multiple of `x` from `y` and leaves `y` nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidResult {
    pub mover_wins: bool,
    /// Every option `(x', y')`, sorted, whose ratio `y'/x'` is below φ.
    pub winning_moves: Vec<(u64, u64)>,
}

/// Options of the Euclid position `(x, y)`, each sorted ascending.
pub fn euclid_options(x: u64, y: u64) -> Vec<(u64, u64)> {
    let (x, y) = (x.min(y), x.max(y));
    (1..)
        .map_while(|k| y.checked_sub(k * x).filter(|&r| r >= 1))
        .map(|r| (r.min(x), r.max(x)))
        .collect()
}

/// The mover wins iff the heap ratio exceeds φ.
pub fn euclid_winner(x: u64, y: u64) -> EuclidResult {
    assert!(x >= 1 && y >= 1, "heaps must be nonempty");
    let (lo, hi) = (x.min(y), x.max(y));
    let winning_moves: Vec<(u64, u64)> = euclid_options(lo, hi)
        .into_iter()
        .filter(|&(u, v)| below_phi(u, v))
        .collect();
    EuclidResult {
        mover_wins: !below_phi(lo, hi),
        winning_moves,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Expansion {
    Pruned,
    Full,
    LittleJohn,
}

/// A [`GameStore`] plus memoized ruleset expansions.
#[derive(Default)]
pub struct Engine {
    store: GameStore,
    expansions: FxHashMap<(Expansion, RHPosition), GameId>,
}

impl Engine {
    pub fn new() -> Engine {
        Engine::default()
    }

    pub fn with_store(store: GameStore) -> Engine {
        Engine {
            store,
            expansions: FxHashMap::default(),
        }
    }

    pub fn store(&mut self) -> &mut GameStore {
        &mut self.store
    }

    pub fn store_ref(&self) -> &GameStore {
        &self.store
    }

    /// Robin Hood game of `pos`, expanded with pruned options.
    pub fn rh_to_game(&mut self, pos: RHPosition) -> Result<GameId> {
        self.expand(Expansion::Pruned, pos)
    }

    /// Robin Hood game of `pos` with every option kept.
    pub fn rh_to_game_unpruned(&mut self, pos: RHPosition) -> Result<GameId> {
        self.expand(Expansion::Full, pos)
    }

    pub fn lj_to_game(&mut self, pos: RHPosition) -> Result<GameId> {
        self.expand(Expansion::LittleJohn, pos)
    }

    pub fn to_game(&mut self, ruleset: Ruleset, pos: RHPosition) -> Result<GameId> {
        match ruleset {
            Ruleset::RobinHood => self.rh_to_game(pos),
            Ruleset::LittleJohn => self.lj_to_game(pos),
        }
    }

    /// Disjunctive sum of one heap per term.
    pub fn sum_positions(&mut self, terms: &[(Ruleset, RHPosition)]) -> Result<GameId> {
        let mut acc = self.store.zero();
        for &(ruleset, pos) in terms {
            let g = self.to_game(ruleset, pos)?;
            acc = self.store.sum(acc, g)?;
        }
        Ok(acc)
    }

    fn expand(&mut self, kind: Expansion, pos: RHPosition) -> Result<GameId> {
        let key = (kind, pos.memo_key());
        if let Some(&g) = self.expansions.get(&key) {
            return Ok(g);
        }
        let pos = key.1;
        let moves = |player| match kind {
            Expansion::Pruned => rh_pruned_options(pos, player),
            Expansion::Full => rh_options(pos, player),
            Expansion::LittleJohn => lj_option(pos, player).into_iter().collect(),
        };
        let mut lefts = Vec::new();
        for p in moves(Player::Left) {
            lefts.push(self.expand(kind, p)?);
        }
        let mut rights = Vec::new();
        for p in moves(Player::Right) {
            rights.push(self.expand(kind, p)?);
        }
        let g = self.store.make_game(&lefts, &rights)?;
        self.expansions.insert(key, g);
        Ok(g)
    }
}
