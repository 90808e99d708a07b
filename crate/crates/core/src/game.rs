//! Interned short partizan games.
//!
//! Every game is a node of a DAG owned by a [`GameStore`]. Nodes with the same
//! (sorted, deduplicated) option sets share one [`GameId`], so structural
//! equality is id equality. All derived quantities are memoized in the store
//! and never invalidated.

use std::ops::Bound;

use rustc_hash::FxHashMap;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::thermo::ThermoMemo;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameId(u32);

impl GameId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameNode {
    lefts: Box<[GameId]>,
    rights: Box<[GameId]>,
}

impl GameNode {
    pub fn lefts(&self) -> &[GameId] {
        &self.lefts
    }

    pub fn rights(&self) -> &[GameId] {
        &self.rights
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Left,
    Right,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Outcome {
    pub left_start_winner: Player,
    pub right_start_winner: Player,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutcomeClass {
    /// Left wins whoever starts.
    L,
    /// Right wins whoever starts.
    R,
    /// The player to move wins.
    N,
    /// The player to move loses.
    P,
}

impl Outcome {
    pub fn class(self) -> OutcomeClass {
        match (self.left_start_winner, self.right_start_winner) {
            (Player::Left, Player::Left) => OutcomeClass::L,
            (Player::Right, Player::Right) => OutcomeClass::R,
            (Player::Left, Player::Right) => OutcomeClass::N,
            (Player::Right, Player::Left) => OutcomeClass::P,
        }
    }

    pub fn swapped(self) -> Outcome {
        Outcome {
            left_start_winner: self.right_start_winner.opponent(),
            right_start_winner: self.left_start_winner.opponent(),
        }
    }
}

impl std::fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OutcomeClass::L => "L",
            OutcomeClass::R => "R",
            OutcomeClass::N => "N",
            OutcomeClass::P => "P",
        };
        f.write_str(s)
    }
}

/// Interning store plus memo tables.
///
/// A store is single-threaded; parallel sweeps create one store per worker.
pub struct GameStore {
    nodes: Vec<GameNode>,
    index: FxHashMap<GameNode, GameId>,
    cap: Option<usize>,
    dyadics: FxHashMap<Dyadic, GameId>,
    nimbers: Vec<GameId>,
    negations: FxHashMap<GameId, GameId>,
    sums: FxHashMap<(GameId, GameId), GameId>,
    outcomes: FxHashMap<GameId, Outcome>,
    order: FxHashMap<(GameId, GameId), bool>,
    canonical: FxHashMap<GameId, GameId>,
    canonical_values: FxHashMap<GameId, Option<Dyadic>>,
    pub(crate) thermo: ThermoMemo,
}

impl Default for GameStore {
    fn default() -> Self {
        GameStore::new()
    }
}

impl GameStore {
    pub fn new() -> GameStore {
        GameStore::with_cap(None)
    }

    /// A store that refuses to hold more than `cap` nodes. The zero game is
    /// always present.
    pub fn with_cap(cap: Option<usize>) -> GameStore {
        let zero = GameNode {
            lefts: Box::new([]),
            rights: Box::new([]),
        };
        let mut index = FxHashMap::default();
        index.insert(zero.clone(), GameId(0));
        let mut dyadics = FxHashMap::default();
        dyadics.insert(Dyadic::ZERO, GameId(0));
        GameStore {
            nodes: vec![zero],
            index,
            cap,
            dyadics,
            nimbers: vec![GameId(0)],
            negations: FxHashMap::default(),
            sums: FxHashMap::default(),
            outcomes: FxHashMap::default(),
            order: FxHashMap::default(),
            canonical: FxHashMap::default(),
            canonical_values: FxHashMap::default(),
            thermo: ThermoMemo::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    pub fn zero(&self) -> GameId {
        GameId(0)
    }

    pub fn node(&self, g: GameId) -> &GameNode {
        &self.nodes[g.index()]
    }

    pub fn lefts(&self, g: GameId) -> &[GameId] {
        &self.nodes[g.index()].lefts
    }

    pub fn rights(&self, g: GameId) -> &[GameId] {
        &self.nodes[g.index()].rights
    }

    fn left(&self, g: GameId, i: usize) -> GameId {
        self.nodes[g.index()].lefts[i]
    }

    fn right(&self, g: GameId, i: usize) -> GameId {
        self.nodes[g.index()].rights[i]
    }

    pub(crate) fn left_count(&self, g: GameId) -> usize {
        self.nodes[g.index()].lefts.len()
    }

    pub(crate) fn right_count(&self, g: GameId) -> usize {
        self.nodes[g.index()].rights.len()
    }

    pub(crate) fn left_at(&self, g: GameId, i: usize) -> GameId {
        self.left(g, i)
    }

    pub(crate) fn right_at(&self, g: GameId, i: usize) -> GameId {
        self.right(g, i)
    }

    /// Interns `{lefts | rights}`; order and duplicates are irrelevant.
    pub fn make_game(&mut self, lefts: &[GameId], rights: &[GameId]) -> Result<GameId> {
        let mut l = lefts.to_vec();
        let mut r = rights.to_vec();
        l.sort_unstable();
        l.dedup();
        r.sort_unstable();
        r.dedup();
        self.intern(GameNode {
            lefts: l.into_boxed_slice(),
            rights: r.into_boxed_slice(),
        })
    }

    fn intern(&mut self, node: GameNode) -> Result<GameId> {
        if let Some(&id) = self.index.get(&node) {
            return Ok(id);
        }
        if let Some(cap) = self.cap {
            if self.nodes.len() >= cap {
                return Err(Error::StoreCapExceeded { cap });
            }
        }
        debug_assert!(node
            .lefts
            .iter()
            .chain(node.rights.iter())
            .all(|o| o.index() < self.nodes.len()));
        let id = GameId(u32::try_from(self.nodes.len()).expect("store exceeds u32 ids"));
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        Ok(id)
    }

    /// Canonical form of the number `x`.
    pub fn from_dyadic(&mut self, x: Dyadic) -> Result<GameId> {
        if let Some(&g) = self.dyadics.get(&x) {
            return Ok(g);
        }
        let g = if x.is_integer() {
            // Integers are built bottom up to keep recursion shallow.
            let k = x.num();
            let step = k.signum();
            let mut prev = self.zero();
            let mut i = 0;
            while i != k {
                i += step;
                let v = Dyadic::from_int(i);
                prev = match self.dyadics.get(&v) {
                    Some(&g) => g,
                    None => {
                        let g = if step > 0 {
                            self.make_game(&[prev], &[])?
                        } else {
                            self.make_game(&[], &[prev])?
                        };
                        self.dyadics.insert(v, g);
                        g
                    }
                };
            }
            prev
        } else {
            let (l, r) = x.number_options();
            let l = self.from_dyadic(l.expect("fractions have both options"))?;
            let r = self.from_dyadic(r.expect("fractions have both options"))?;
            self.make_game(&[l], &[r])?
        };
        self.dyadics.insert(x, g);
        Ok(g)
    }

    /// The nimber `*n`.
    pub fn nimber(&mut self, n: usize) -> Result<GameId> {
        while self.nimbers.len() <= n {
            let opts = self.nimbers.clone();
            let g = self.make_game(&opts, &opts)?;
            self.nimbers.push(g);
        }
        Ok(self.nimbers[n])
    }

    pub fn negate(&mut self, g: GameId) -> Result<GameId> {
        if let Some(&h) = self.negations.get(&g) {
            return Ok(h);
        }
        let mut lefts = Vec::with_capacity(self.right_count(g));
        for i in 0..self.right_count(g) {
            let r = self.right(g, i);
            lefts.push(self.negate(r)?);
        }
        let mut rights = Vec::with_capacity(self.left_count(g));
        for i in 0..self.left_count(g) {
            let l = self.left(g, i);
            rights.push(self.negate(l)?);
        }
        let h = self.make_game(&lefts, &rights)?;
        self.negations.insert(g, h);
        self.negations.insert(h, g);
        Ok(h)
    }

    /// Disjunctive sum `g + h`.
    pub fn sum(&mut self, g: GameId, h: GameId) -> Result<GameId> {
        let zero = self.zero();
        if g == zero {
            return Ok(h);
        }
        if h == zero {
            return Ok(g);
        }
        let key = if g <= h { (g, h) } else { (h, g) };
        if let Some(&s) = self.sums.get(&key) {
            return Ok(s);
        }
        let mut lefts = Vec::with_capacity(self.left_count(g) + self.left_count(h));
        for i in 0..self.left_count(g) {
            let gl = self.left(g, i);
            lefts.push(self.sum(gl, h)?);
        }
        for i in 0..self.left_count(h) {
            let hl = self.left(h, i);
            lefts.push(self.sum(g, hl)?);
        }
        let mut rights = Vec::with_capacity(self.right_count(g) + self.right_count(h));
        for i in 0..self.right_count(g) {
            let gr = self.right(g, i);
            rights.push(self.sum(gr, h)?);
        }
        for i in 0..self.right_count(h) {
            let hr = self.right(h, i);
            rights.push(self.sum(g, hr)?);
        }
        let s = self.make_game(&lefts, &rights)?;
        self.sums.insert(key, s);
        Ok(s)
    }

    pub fn outcome(&mut self, g: GameId) -> Outcome {
        if let Some(&o) = self.outcomes.get(&g) {
            return o;
        }
        let mut left_start_winner = Player::Right;
        for i in 0..self.left_count(g) {
            let gl = self.left(g, i);
            if self.outcome(gl).right_start_winner == Player::Left {
                left_start_winner = Player::Left;
                break;
            }
        }
        let mut right_start_winner = Player::Left;
        for i in 0..self.right_count(g) {
            let gr = self.right(g, i);
            if self.outcome(gr).left_start_winner == Player::Right {
                right_start_winner = Player::Right;
                break;
            }
        }
        let o = Outcome {
            left_start_winner,
            right_start_winner,
        };
        self.outcomes.insert(g, o);
        o
    }

    /// `g <= h`: no Left option of `g` is at least `h` and no Right option of
    /// `h` is at most `g`.
    pub fn leq(&mut self, g: GameId, h: GameId) -> bool {
        if g == h {
            return true;
        }
        if let Some(&v) = self.order.get(&(g, h)) {
            return v;
        }
        let mut result = true;
        for i in 0..self.left_count(g) {
            let gl = self.left(g, i);
            if self.leq(h, gl) {
                result = false;
                break;
            }
        }
        if result {
            for i in 0..self.right_count(h) {
                let hr = self.right(h, i);
                if self.leq(hr, g) {
                    result = false;
                    break;
                }
            }
        }
        self.order.insert((g, h), result);
        result
    }

    pub fn eq(&mut self, g: GameId, h: GameId) -> bool {
        self.leq(g, h) && self.leq(h, g)
    }

    pub fn lt(&mut self, g: GameId, h: GameId) -> bool {
        self.leq(g, h) && !self.leq(h, g)
    }

    /// Reference comparison through the materialized difference: `g <= h`
    /// iff Left wins `h - g` when Right starts. Kept as an oracle for
    /// [`GameStore::leq`].
    pub fn leq_by_difference(&mut self, g: GameId, h: GameId) -> Result<bool> {
        let ng = self.negate(g)?;
        let diff = self.sum(h, ng)?;
        Ok(self.outcome(diff).right_start_winner == Player::Left)
    }

    pub fn canonical_form(&mut self, g: GameId) -> Result<GameId> {
        if let Some(&c) = self.canonical.get(&g) {
            return Ok(c);
        }
        let mut lefts = Vec::with_capacity(self.left_count(g));
        for i in 0..self.left_count(g) {
            let gl = self.left(g, i);
            lefts.push(self.canonical_form(gl)?);
        }
        let mut rights = Vec::with_capacity(self.right_count(g));
        for i in 0..self.right_count(g) {
            let gr = self.right(g, i);
            rights.push(self.canonical_form(gr)?);
        }
        normalize(&mut lefts);
        normalize(&mut rights);
        loop {
            self.remove_dominated(&mut lefts, Player::Left);
            self.remove_dominated(&mut rights, Player::Right);
            let current = self.make_game(&lefts, &rights)?;
            let mut changed = false;

            let mut next_lefts = Vec::with_capacity(lefts.len());
            for &x in &lefts {
                // x is reversible through some x^R <= G: replace x by x^RL.
                let mut reversed = None;
                for j in 0..self.right_count(x) {
                    let xr = self.right(x, j);
                    if self.leq(xr, current) {
                        reversed = Some(xr);
                        break;
                    }
                }
                match reversed {
                    Some(xr) => {
                        next_lefts.extend_from_slice(self.lefts(xr));
                        changed = true;
                    }
                    None => next_lefts.push(x),
                }
            }
            let mut next_rights = Vec::with_capacity(rights.len());
            for &x in &rights {
                let mut reversed = None;
                for j in 0..self.left_count(x) {
                    let xl = self.left(x, j);
                    if self.leq(current, xl) {
                        reversed = Some(xl);
                        break;
                    }
                }
                match reversed {
                    Some(xl) => {
                        next_rights.extend_from_slice(self.rights(xl));
                        changed = true;
                    }
                    None => next_rights.push(x),
                }
            }
            lefts = next_lefts;
            rights = next_rights;
            normalize(&mut lefts);
            normalize(&mut rights);
            if !changed {
                break;
            }
        }
        let c = self.make_game(&lefts, &rights)?;
        self.canonical.insert(g, c);
        self.canonical.insert(c, c);
        Ok(c)
    }

    /// Drops options dominated by another option of the same set. The options
    /// are canonical, so distinct ids are never equal in value.
    fn remove_dominated(&mut self, opts: &mut Vec<GameId>, player: Player) {
        let mut keep = Vec::with_capacity(opts.len());
        for (i, &x) in opts.iter().enumerate() {
            let mut dominated = false;
            for (j, &y) in opts.iter().enumerate() {
                if i == j {
                    continue;
                }
                let worse = match player {
                    Player::Left => self.leq(x, y),
                    Player::Right => self.leq(y, x),
                };
                if worse {
                    dominated = true;
                    break;
                }
            }
            if !dominated {
                keep.push(x);
            }
        }
        *opts = keep;
    }

    /// Whether every subposition of the canonical form has all Left options
    /// strictly below all Right options.
    pub fn is_number(&mut self, g: GameId) -> Result<bool> {
        Ok(self.to_dyadic(g)?.is_some())
    }

    /// The dyadic equal to `g`, read off its canonical form.
    pub fn to_dyadic(&mut self, g: GameId) -> Result<Option<Dyadic>> {
        let c = self.canonical_form(g)?;
        Ok(self.canonical_value(c))
    }

    fn canonical_value(&mut self, c: GameId) -> Option<Dyadic> {
        if let Some(&v) = self.canonical_values.get(&c) {
            return v;
        }
        let v = self.compute_canonical_value(c);
        self.canonical_values.insert(c, v);
        v
    }

    fn compute_canonical_value(&mut self, c: GameId) -> Option<Dyadic> {
        let mut lo: Option<Dyadic> = None;
        for i in 0..self.left_count(c) {
            let v = self.canonical_value(self.left(c, i))?;
            lo = Some(lo.map_or(v, |m| m.max(v)));
        }
        let mut hi: Option<Dyadic> = None;
        for i in 0..self.right_count(c) {
            let v = self.canonical_value(self.right(c, i))?;
            hi = Some(hi.map_or(v, |m| m.min(v)));
        }
        // Options are numbers, so x^L < x^R reduces to comparing values.
        let lo = lo.map_or(Bound::Unbounded, Bound::Excluded);
        let hi = hi.map_or(Bound::Unbounded, Bound::Excluded);
        Dyadic::simplest_in(lo, hi)
    }

    /// Braces notation: numbers as dyadics, `*n` for nimbers, `±X` for games
    /// of the form `{X | -X}`.
    pub fn render(&mut self, g: GameId) -> String {
        let mut mirrors = FxHashMap::default();
        self.render_with(g, &mut mirrors)
    }

    fn render_with(&mut self, g: GameId, mirrors: &mut FxHashMap<(GameId, GameId), bool>) -> String {
        if let Some(x) = self.number_form(g) {
            return x.to_string();
        }
        if let Some(n) = self.nimber_form(g) {
            return if n == 1 { "*".to_string() } else { format!("*{n}") };
        }
        let lefts = self.lefts(g).to_vec();
        let rights = self.rights(g).to_vec();
        if !lefts.is_empty() && self.mirrors(g, g, mirrors) {
            let parts: Vec<String> = lefts.iter().map(|&x| self.render_with(x, mirrors)).collect();
            return if parts.len() == 1 {
                format!("±{}", parts[0])
            } else {
                format!("±({})", parts.join(","))
            };
        }
        let l: Vec<String> = lefts.iter().map(|&x| self.render_with(x, mirrors)).collect();
        let r: Vec<String> = rights.iter().map(|&x| self.render_with(x, mirrors)).collect();
        format!("{{{}|{}}}", l.join(","), r.join(","))
    }

    /// `Some(x)` if `g` is literally the canonical form of the number `x`.
    fn number_form(&mut self, g: GameId) -> Option<Dyadic> {
        let x = self.number_value(g)?;
        let (lo, ro) = x.number_options();
        let side = |s: &mut GameStore, opts: Vec<GameId>, want: Option<Dyadic>| match want {
            None => opts.is_empty(),
            Some(v) => opts.len() == 1 && s.number_form(opts[0]) == Some(v),
        };
        let lefts = self.lefts(g).to_vec();
        let rights = self.rights(g).to_vec();
        (side(self, lefts, lo) && side(self, rights, ro)).then_some(x)
    }

    /// `Some(n)` if `g` is literally `{0,*,..,*(n-1) | 0,*,..,*(n-1)}`.
    fn nimber_form(&mut self, g: GameId) -> Option<usize> {
        if self.lefts(g) != self.rights(g) {
            return None;
        }
        let opts = self.lefts(g).to_vec();
        let mut seen = Vec::with_capacity(opts.len());
        for o in opts {
            seen.push(self.nimber_form(o)?);
        }
        seen.sort_unstable();
        seen.iter().enumerate().all(|(i, &k)| i == k).then_some(seen.len())
    }

    /// Whether `x` is structurally the negative of `y`.
    fn mirrors(&self, x: GameId, y: GameId, memo: &mut FxHashMap<(GameId, GameId), bool>) -> bool {
        if let Some(&v) = memo.get(&(x, y)) {
            return v;
        }
        let matches = |a: &[GameId], b: &[GameId], memo: &mut FxHashMap<(GameId, GameId), bool>| {
            a.len() == b.len() && a.iter().all(|&p| b.iter().any(|&q| self.mirrors(p, q, memo)))
        };
        let v = matches(self.lefts(x), self.rights(y), memo)
            && matches(self.rights(x), self.lefts(y), memo);
        memo.insert((x, y), v);
        v
    }
}

fn normalize(v: &mut Vec<GameId>) {
    v.sort_unstable();
    v.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn interning() {
        let mut s = GameStore::new();
        let zero = s.make_game(&[], &[]).unwrap();
        assert_eq!(zero, s.zero());
        let one = s.make_game(&[zero], &[]).unwrap();
        assert_eq!(one, s.from_dyadic(Dyadic::ONE).unwrap());
        let a = s.make_game(&[zero, one], &[one]).unwrap();
        let b = s.make_game(&[one, zero, one], &[one]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn numbers_and_nimbers() {
        let mut s = GameStore::new();
        let zero = s.zero();
        let one = s.from_dyadic(d("1")).unwrap();
        let half = s.from_dyadic(d("1/2")).unwrap();
        assert_eq!(s.lefts(half), &[zero]);
        assert_eq!(s.rights(half), &[one]);
        let eighth = s.from_dyadic(d("1/8")).unwrap();
        let quarter = s.from_dyadic(d("1/4")).unwrap();
        assert_eq!(s.lefts(eighth), &[zero]);
        assert_eq!(s.rights(eighth), &[quarter]);
        assert_eq!(s.nimber(0).unwrap(), zero);
        let star = s.nimber(1).unwrap();
        assert_eq!((s.lefts(star), s.rights(star)), (&[zero][..], &[zero][..]));
        let star2 = s.nimber(2).unwrap();
        let star3 = s.nimber(3).unwrap();
        let mut want = [zero, star, star2];
        want.sort();
        assert_eq!(s.lefts(star3), &want[..]);
        assert_eq!(s.rights(star3), &want[..]);
        let m = s.from_dyadic(d("-5/4")).unwrap();
        assert_eq!(s.render(m), "-5/4");
    }

    #[test]
    fn negation_and_sums() {
        let mut s = GameStore::new();
        let zero = s.zero();
        assert_eq!(s.negate(zero).unwrap(), zero);
        let x = s.from_dyadic(d("3/2")).unwrap();
        let nx = s.from_dyadic(d("-3/2")).unwrap();
        assert_eq!(s.negate(x).unwrap(), nx);
        let ten = s.from_dyadic(d("10")).unwrap();
        let mten = s.from_dyadic(d("-10")).unwrap();
        let sw = s.make_game(&[ten], &[mten]).unwrap();
        let nsw = s.negate(sw).unwrap();
        assert!(s.eq(sw, nsw));

        let one = s.from_dyadic(d("1")).unwrap();
        let half = s.from_dyadic(d("1/2")).unwrap();
        let sum = s.sum(one, half).unwrap();
        assert!(s.eq(sum, x));
        assert_eq!(s.sum(sw, zero).unwrap(), sw);
        let star2 = s.nimber(2).unwrap();
        let z = s.sum(star2, star2).unwrap();
        assert!(s.eq(z, zero));
        assert_eq!(s.outcome(z).class(), OutcomeClass::P);
    }

    #[test]
    fn outcomes() {
        let mut s = GameStore::new();
        let zero = s.zero();
        let o = s.outcome(zero);
        assert_eq!((o.left_start_winner, o.right_start_winner), (Player::Right, Player::Left));
        assert_eq!(o.class(), OutcomeClass::P);
        let star = s.nimber(1).unwrap();
        let o = s.outcome(star);
        assert_eq!((o.left_start_winner, o.right_start_winner), (Player::Left, Player::Right));
        assert_eq!(o.class(), OutcomeClass::N);
        let one = s.from_dyadic(d("1")).unwrap();
        assert_eq!(s.outcome(one).class(), OutcomeClass::L);
    }

    #[test]
    fn order() {
        let mut s = GameStore::new();
        let zero = s.zero();
        let half = s.from_dyadic(d("1/2")).unwrap();
        let one = s.from_dyadic(d("1")).unwrap();
        assert!(s.leq(half, one));
        assert!(!s.leq(one, half));
        let star = s.nimber(1).unwrap();
        assert!(!s.leq(star, zero));
        assert!(!s.leq(zero, star));
        // 2 is incomparable with {2 | ±1}
        let two = s.from_dyadic(d("2")).unwrap();
        let m1 = s.from_dyadic(d("-1")).unwrap();
        let pm1 = s.make_game(&[one], &[m1]).unwrap();
        let g = s.make_game(&[two], &[pm1]).unwrap();
        assert!(!s.leq(two, g));
        assert!(!s.leq(g, two));
        assert_eq!(s.render(g), "{2|±1}");
    }

    #[test]
    fn canonical_forms() {
        let mut s = GameStore::new();
        let zero = s.zero();
        let star = s.nimber(1).unwrap();
        let g = s.make_game(&[star], &[star]).unwrap();
        assert_eq!(s.canonical_form(g).unwrap(), zero);
        assert!(s.is_number(g).unwrap());
        assert_eq!(s.to_dyadic(g).unwrap(), Some(Dyadic::ZERO));

        let quarter = s.from_dyadic(d("1/4")).unwrap();
        let g = s.make_game(&[zero], &[quarter]).unwrap();
        assert_eq!(s.to_dyadic(g).unwrap(), Some(d("1/8")));

        let ten = s.from_dyadic(d("10")).unwrap();
        let mten = s.from_dyadic(d("-10")).unwrap();
        let hot = s.make_game(&[ten], &[mten]).unwrap();
        assert_eq!(s.to_dyadic(hot).unwrap(), None);
        let one = s.from_dyadic(d("1")).unwrap();
        let sw = s.make_game(&[one], &[zero]).unwrap();
        assert!(!s.is_number(sw).unwrap());
        let half = s.from_dyadic(d("1/2")).unwrap();
        assert!(s.is_number(half).unwrap());

        // {0, 1/2 | 3} reduces to 1 by domination and simplicity
        let three = s.from_dyadic(d("3")).unwrap();
        let g = s.make_game(&[zero, half], &[three]).unwrap();
        assert_eq!(s.canonical_form(g).unwrap(), one);
    }

    #[test]
    fn reversible_bypass() {
        let mut s = GameStore::new();
        // {↑ | } where ↑ = {0 | *}: ↑'s Right option * is <= G, so the Left
        // option bypasses to *'s Left options {0}; G = {0 | } = 1.
        let zero = s.zero();
        let star = s.nimber(1).unwrap();
        let up = s.make_game(&[zero], &[star]).unwrap();
        let g = s.make_game(&[up], &[]).unwrap();
        let one = s.from_dyadic(Dyadic::ONE).unwrap();
        assert_eq!(s.canonical_form(g).unwrap(), one);
        // ↑ itself is canonical
        assert_eq!(s.canonical_form(up).unwrap(), up);
    }

    #[test]
    fn store_cap_is_enforced() {
        let mut s = GameStore::with_cap(Some(4));
        assert!(s.from_dyadic(d("3")).is_ok());
        assert_eq!(
            s.from_dyadic(d("4")),
            Err(Error::StoreCapExceeded { cap: 4 })
        );
    }

    #[test]
    fn leq_matches_difference_oracle() {
        let mut s = GameStore::new();
        let mut pool = vec![s.zero()];
        for x in ["1", "-1", "1/2", "-3/2", "2"] {
            pool.push(s.from_dyadic(d(x)).unwrap());
        }
        pool.push(s.nimber(1).unwrap());
        pool.push(s.nimber(2).unwrap());
        let base = pool.clone();
        for (i, &a) in base.iter().enumerate() {
            for &b in &base[i..] {
                pool.push(s.make_game(&[a], &[b]).unwrap());
                pool.push(s.make_game(&[b], &[a]).unwrap());
            }
        }
        for &g in &pool {
            for &h in &pool {
                assert_eq!(s.leq(g, h), s.leq_by_difference(g, h).unwrap());
            }
        }
    }
}
