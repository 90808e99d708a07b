//! Stops, thermographs and penalized positions.
//!
//! Stops and thermographs are computed over the supplied form of a game. A
//! node is first tested for being a number with the simplicity rule, using
//! only its options' stops and exact number-versus-game comparisons; no
//! canonical form is needed. Walls are exact piecewise-linear functions of
//! the penalty `p`.

use std::ops::Bound;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::game::{GameId, GameStore};

#[derive(Default)]
pub(crate) struct ThermoMemo {
    analysis: FxHashMap<GameId, Analysis>,
    /// `x <= G`
    num_leq: FxHashMap<(GameId, Dyadic), bool>,
    /// `G <= x`
    leq_num: FxHashMap<(GameId, Dyadic), bool>,
    graphs: FxHashMap<GameId, Arc<Thermograph>>,
    freeze: FxHashMap<GameId, (Dyadic, Dyadic)>,
    cooled: FxHashMap<(GameId, Dyadic), (Dyadic, Dyadic)>,
}

#[derive(Debug, Clone, Copy)]
struct Analysis {
    left: Dyadic,
    right: Dyadic,
    number: Option<Dyadic>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub p: Dyadic,
    pub x: Dyadic,
}

/// Vertices ascending in `p`, starting at `p = 0`; above the last vertex the
/// wall is vertical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Wall {
    vertices: Vec<Vertex>,
}

impl Wall {
    /// Panics unless the vertices start at `p = 0` and strictly increase in
    /// `p`. Interior vertices on a straight run are dropped.
    pub fn from_vertices(vertices: Vec<Vertex>) -> Wall {
        assert!(
            vertices.first().is_some_and(|v| v.p == Dyadic::ZERO),
            "a wall starts at p = 0"
        );
        assert!(
            vertices.windows(2).all(|w| w[0].p < w[1].p),
            "wall vertices must strictly increase in p"
        );
        Wall {
            vertices: simplify(vertices),
        }
    }

    pub fn mast(x: Dyadic) -> Wall {
        Wall {
            vertices: vec![Vertex { p: Dyadic::ZERO, x }],
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn points(&self) -> Vec<(Dyadic, Dyadic)> {
        self.vertices.iter().map(|v| (v.p, v.x)).collect()
    }

    pub fn top(&self) -> Vertex {
        *self.vertices.last().expect("walls are nonempty")
    }

    /// `dx/dp` of each segment between consecutive vertices.
    pub fn slopes(&self) -> Vec<Dyadic> {
        self.vertices
            .windows(2)
            .map(|w| {
                (w[1].x - w[0].x)
                    .checked_div(w[1].p - w[0].p)
                    .expect("wall slopes are dyadic")
            })
            .collect()
    }

    /// Value of the wall at penalty `p >= 0`.
    pub fn at(&self, p: Dyadic) -> Dyadic {
        let i = match self.vertices.binary_search_by(|v| v.p.cmp(&p)) {
            Ok(i) => return self.vertices[i].x,
            Err(0) => panic!("walls are defined for p >= 0"),
            Err(i) => i - 1,
        };
        if i + 1 == self.vertices.len() {
            return self.vertices[i].x;
        }
        let (a, b) = (self.vertices[i], self.vertices[i + 1]);
        let slope = (b.x - a.x).checked_div(b.p - a.p).expect("wall slopes are dyadic");
        a.x + slope * (p - a.p)
    }

    /// The wall of the negated game's opposite side.
    pub fn mirror(&self) -> Wall {
        Wall {
            vertices: self.vertices.iter().map(|v| Vertex { p: v.p, x: -v.x }).collect(),
        }
    }
}

/// Drops interior vertices whose neighbouring segments share a slope. The
/// last vertex stays: it marks where the wall turns into the mast.
fn simplify(vertices: Vec<Vertex>) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::with_capacity(vertices.len());
    for v in vertices {
        if let [.., u, w] = out[..] {
            let collinear = (w.x - u.x) * (v.p - w.p) == (v.x - w.x) * (w.p - u.p);
            if collinear {
                out.pop();
            }
        }
        out.push(v);
    }
    out
}

/// `w1(p) <= w2(p)` for every `p >= 0`.
pub fn wall_leq(w1: &Wall, w2: &Wall) -> bool {
    let mut ps: Vec<Dyadic> = w1
        .vertices
        .iter()
        .chain(w2.vertices.iter())
        .map(|v| v.p)
        .collect();
    ps.sort_unstable();
    ps.dedup();
    // Both walls are linear between merged breakpoints and constant after.
    ps.into_iter().all(|p| w1.at(p) <= w2.at(p))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Thermograph {
    pub temperature: Dyadic,
    pub mean: Dyadic,
    #[serde(rename = "left_wall")]
    pub left: Wall,
    #[serde(rename = "right_wall")]
    pub right: Wall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TentClass {
    Mast,
    DT,
    LST,
    RST,
    Other,
}

impl std::fmt::Display for TentClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TentClass::Mast => "Mast",
            TentClass::DT => "DT",
            TentClass::LST => "LST",
            TentClass::RST => "RST",
            TentClass::Other => "Other",
        };
        f.write_str(s)
    }
}

impl Thermograph {
    /// A number `k/2^e`: vertical mast at the value, temperature `-1/2^e`.
    pub fn of_number(x: Dyadic) -> Thermograph {
        Thermograph {
            temperature: -x.ulp(),
            mean: x,
            left: Wall::mast(x),
            right: Wall::mast(x),
        }
    }

    pub fn classify(&self) -> TentClass {
        classify(self)
    }

    /// Thermograph of the negative.
    pub fn mirror(&self) -> Thermograph {
        Thermograph {
            temperature: self.temperature,
            mean: -self.mean,
            left: self.right.mirror(),
            right: self.left.mirror(),
        }
    }
}

pub fn classify(t: &Thermograph) -> TentClass {
    if t.left == t.right {
        return TentClass::Mast;
    }
    let uniform = |w: &Wall, s: i128| w.slopes().iter().all(|&x| x == Dyadic::from_int(s));
    match (
        uniform(&t.left, -1),
        uniform(&t.left, 0),
        uniform(&t.right, 1),
        uniform(&t.right, 0),
    ) {
        (true, _, true, _) => TentClass::DT,
        (true, _, _, true) => TentClass::LST,
        (_, true, true, _) => TentClass::RST,
        _ => TentClass::Other,
    }
}

/// Continuous piecewise-linear function of `p >= 0`: `slopes[i]` holds from
/// `pts[i]` to the next point, the last one forever.
#[derive(Debug, Clone)]
struct Pwl {
    pts: Vec<(Dyadic, Dyadic)>,
    slopes: Vec<Dyadic>,
}

impl Pwl {
    fn from_wall(w: &Wall) -> Pwl {
        let mut slopes = w.slopes();
        slopes.push(Dyadic::ZERO);
        Pwl {
            pts: w.points(),
            slopes,
        }
    }

    fn segment(&self, p: Dyadic) -> usize {
        match self.pts.binary_search_by(|v| v.0.cmp(&p)) {
            Ok(i) => i,
            Err(i) => i.checked_sub(1).expect("p >= 0"),
        }
    }

    fn eval(&self, p: Dyadic) -> Dyadic {
        let i = self.segment(p);
        self.pts[i].1 + self.slopes[i] * (p - self.pts[i].0)
    }

    fn slope_at(&self, p: Dyadic) -> Dyadic {
        self.slopes[self.segment(p)]
    }

    /// Adds `k * p`.
    fn shear(mut self, k: i128) -> Pwl {
        let k = Dyadic::from_int(k);
        for (p, x) in &mut self.pts {
            *x = *x + k * *p;
        }
        for s in &mut self.slopes {
            *s = *s + k;
        }
        self
    }

    fn push(&mut self, p: Dyadic, x: Dyadic, slope: Dyadic) {
        if self.slopes.last() == Some(&slope) {
            return;
        }
        self.pts.push((p, x));
        self.slopes.push(slope);
    }

    /// Pointwise maximum (or minimum) of two functions.
    fn combine(&self, other: &Pwl, take_max: bool) -> Pwl {
        let pick = |a: (Dyadic, Dyadic), b: (Dyadic, Dyadic)| {
            let a_wins = if take_max {
                a.0 > b.0 || (a.0 == b.0 && a.1 >= b.1)
            } else {
                a.0 < b.0 || (a.0 == b.0 && a.1 <= b.1)
            };
            if a_wins {
                a
            } else {
                b
            }
        };
        let bps = merged_breakpoints(self, other);
        let mut out = Pwl {
            pts: Vec::new(),
            slopes: Vec::new(),
        };
        for (i, &b0) in bps.iter().enumerate() {
            let fa = (self.eval(b0), self.slope_at(b0));
            let gb = (other.eval(b0), other.slope_at(b0));
            let (v, s) = pick(fa, gb);
            out.push(b0, v, s);
            let d0 = fa.0 - gb.0;
            let ds = fa.1 - gb.1;
            if d0.signum() != 0 && ds.signum() == -d0.signum() {
                let c = b0 + (-d0).checked_div(ds).expect("wall crossings are dyadic");
                if bps.get(i + 1).is_none_or(|&b1| c < b1) {
                    let (v, s) = pick((self.eval(c), fa.1), (other.eval(c), gb.1));
                    out.push(c, v, s);
                }
            }
        }
        out
    }

    /// Restriction to `[0, t]` followed by a vertical mast.
    fn truncate(&self, t: Dyadic) -> Wall {
        let mut vertices: Vec<Vertex> = self
            .pts
            .iter()
            .take_while(|v| v.0 < t)
            .map(|&(p, x)| Vertex { p, x })
            .collect();
        vertices.push(Vertex { p: t, x: self.eval(t) });
        Wall {
            vertices: simplify(vertices),
        }
    }
}

fn merged_breakpoints(f: &Pwl, g: &Pwl) -> Vec<Dyadic> {
    let mut bps: Vec<Dyadic> = f.pts.iter().chain(g.pts.iter()).map(|v| v.0).collect();
    bps.sort_unstable();
    bps.dedup();
    bps
}

/// Least `p >= 0` with `ls(p) <= rs(p)`; `ls - rs` is nonincreasing.
fn first_meet(ls: &Pwl, rs: &Pwl) -> Dyadic {
    let bps = merged_breakpoints(ls, rs);
    for (i, &b0) in bps.iter().enumerate() {
        let d0 = ls.eval(b0) - rs.eval(b0);
        if !d0.is_positive() {
            return b0;
        }
        let ds = ls.slope_at(b0) - rs.slope_at(b0);
        if ds.is_negative() {
            let c = b0 + d0.checked_div(-ds).expect("wall crossings are dyadic");
            if bps.get(i + 1).is_none_or(|&b1| c < b1) {
                return c;
            }
        }
    }
    unreachable!("scaffolds of a short game always meet")
}

impl GameStore {
    /// Left and Right stops.
    pub fn stops(&mut self, g: GameId) -> (Dyadic, Dyadic) {
        let a = self.analysis(g);
        (a.left, a.right)
    }

    /// The dyadic equal to `g`, if `g` is a number. Decided by the simplicity
    /// rule on the literal form, without canonicalizing.
    pub fn number_value(&mut self, g: GameId) -> Option<Dyadic> {
        self.analysis(g).number
    }

    fn analysis(&mut self, g: GameId) -> Analysis {
        if let Some(&a) = self.thermo.analysis.get(&g) {
            return a;
        }
        let mut l: Option<Dyadic> = None;
        for i in 0..self.left_count(g) {
            let r = self.analysis(self.left_at(g, i)).right;
            l = Some(l.map_or(r, |m| m.max(r)));
        }
        let mut r: Option<Dyadic> = None;
        for i in 0..self.right_count(g) {
            let v = self.analysis(self.right_at(g, i)).left;
            r = Some(r.map_or(v, |m| m.min(v)));
        }
        let number = self.number_between(g, l, r);
        let a = match number {
            Some(x) => Analysis {
                left: x,
                right: x,
                number,
            },
            None => Analysis {
                left: l.expect("a game without Left options is a number"),
                right: r.expect("a game without Right options is a number"),
                number,
            },
        };
        self.thermo.analysis.insert(g, a);
        a
    }

    /// The simplest `x` with no `G^L >= x` and no `G^R <= x`. Every such `x`
    /// lies in `[l, r]`, every `x` in `(l, r)` qualifies, and an endpoint is
    /// tested exactly.
    fn number_between(&mut self, g: GameId, l: Option<Dyadic>, r: Option<Dyadic>) -> Option<Dyadic> {
        if let (Some(l), Some(r)) = (l, r) {
            if l > r {
                return None;
            }
        }
        let lo = match l {
            None => Bound::Unbounded,
            Some(l) => {
                let ok = (0..self.left_count(g)).all(|i| {
                    let gl = self.left_at(g, i);
                    !self.num_leq(l, gl)
                });
                if ok {
                    Bound::Included(l)
                } else {
                    Bound::Excluded(l)
                }
            }
        };
        let hi = match r {
            None => Bound::Unbounded,
            Some(r) => {
                let ok = (0..self.right_count(g)).all(|i| {
                    let gr = self.right_at(g, i);
                    !self.leq_num(gr, r)
                });
                if ok {
                    Bound::Included(r)
                } else {
                    Bound::Excluded(r)
                }
            }
        };
        Dyadic::simplest_in(lo, hi)
    }

    /// `x <= h` for a number `x`.
    fn num_leq(&mut self, x: Dyadic, h: GameId) -> bool {
        let a = self.analysis(h);
        if let Some(v) = a.number {
            return x <= v;
        }
        if x < a.right {
            return true;
        }
        if x != a.right && x != a.left {
            return false;
        }
        if let Some(&v) = self.thermo.num_leq.get(&(h, x)) {
            return v;
        }
        let mut result = (0..self.right_count(h)).all(|i| {
            let hr = self.right_at(h, i);
            !self.leq_num(hr, x)
        });
        if result {
            if let (Some(xl), _) = x.number_options() {
                result = !self.leq_num(h, xl);
            }
        }
        self.thermo.num_leq.insert((h, x), result);
        result
    }

    /// `h <= x` for a number `x`.
    fn leq_num(&mut self, h: GameId, x: Dyadic) -> bool {
        let a = self.analysis(h);
        if let Some(v) = a.number {
            return v <= x;
        }
        if x > a.left {
            return true;
        }
        if x != a.right && x != a.left {
            return false;
        }
        if let Some(&v) = self.thermo.leq_num.get(&(h, x)) {
            return v;
        }
        let mut result = (0..self.left_count(h)).all(|i| {
            let hl = self.left_at(h, i);
            !self.num_leq(x, hl)
        });
        if result {
            if let (_, Some(xr)) = x.number_options() {
                result = !self.num_leq(xr, h);
            }
        }
        self.thermo.leq_num.insert((h, x), result);
        result
    }

    pub fn thermograph(&mut self, g: GameId) -> Arc<Thermograph> {
        if let Some(t) = self.thermo.graphs.get(&g) {
            return Arc::clone(t);
        }
        let a = self.analysis(g);
        let t = match a.number {
            Some(x) => Thermograph::of_number(x),
            None => self.scaffold(g),
        };
        let t = Arc::new(t);
        self.thermo.graphs.insert(g, Arc::clone(&t));
        t
    }

    fn scaffold(&mut self, g: GameId) -> Thermograph {
        let mut ls: Option<Pwl> = None;
        for i in 0..self.left_count(g) {
            let gl = self.left_at(g, i);
            let f = Pwl::from_wall(&self.thermograph(gl).right).shear(-1);
            ls = Some(match ls {
                None => f,
                Some(h) => h.combine(&f, true),
            });
        }
        let mut rs: Option<Pwl> = None;
        for i in 0..self.right_count(g) {
            let gr = self.right_at(g, i);
            let f = Pwl::from_wall(&self.thermograph(gr).left).shear(1);
            rs = Some(match rs {
                None => f,
                Some(h) => h.combine(&f, false),
            });
        }
        let ls = ls.expect("non-numbers have Left options");
        let rs = rs.expect("non-numbers have Right options");
        let t = first_meet(&ls, &rs);
        let mean = ls.eval(t);
        debug_assert_eq!(mean, rs.eval(t));
        Thermograph {
            temperature: t,
            mean,
            left: ls.truncate(t),
            right: rs.truncate(t),
        }
    }

    pub fn temperature(&mut self, g: GameId) -> Dyadic {
        self.thermograph(g).temperature
    }

    pub fn mean(&mut self, g: GameId) -> Dyadic {
        self.thermograph(g).mean
    }

    /// `g` penalized by `p`, built literally from the definition: options are
    /// penalized recursively and shifted by `-p` (Left) or `+p` (Right) up to
    /// the freeze point, beyond which the game is the frozen dyadic.
    ///
    /// Requires `g` in canonical form. Meant as an independent check on
    /// [`GameStore::thermograph`].
    pub fn penalize(&mut self, g: GameId, p: Dyadic) -> Result<GameId> {
        if p.is_negative() {
            return Err(Error::NegativePenalty(p));
        }
        if self.canonical_form(g)? != g {
            return Err(Error::NotCanonical);
        }
        self.penalize_canonical(g, p)
    }

    fn penalize_canonical(&mut self, g: GameId, p: Dyadic) -> Result<GameId> {
        if let Some(x) = self.to_dyadic(g)? {
            return self.from_dyadic(x);
        }
        let (t, x) = self.freeze_point(g)?;
        if p > t {
            return self.from_dyadic(x);
        }
        let minus = self.from_dyadic(-p)?;
        let plus = self.from_dyadic(p)?;
        let mut lefts = Vec::with_capacity(self.left_count(g));
        for i in 0..self.left_count(g) {
            let gl = self.left_at(g, i);
            let h = self.penalize_canonical(gl, p)?;
            lefts.push(self.sum(h, minus)?);
        }
        let mut rights = Vec::with_capacity(self.right_count(g));
        for i in 0..self.right_count(g) {
            let gr = self.right_at(g, i);
            let h = self.penalize_canonical(gr, p)?;
            rights.push(self.sum(h, plus)?);
        }
        self.make_game(&lefts, &rights)
    }

    /// Stops of `g` penalized by `p`, evaluated from the definition (options
    /// first, then the freeze rule). Requires `g` in canonical form.
    pub fn penalized_stops(&mut self, g: GameId, p: Dyadic) -> Result<(Dyadic, Dyadic)> {
        if p.is_negative() {
            return Err(Error::NegativePenalty(p));
        }
        if self.canonical_form(g)? != g {
            return Err(Error::NotCanonical);
        }
        self.cooled_stops(g, p)
    }

    fn cooled_stops(&mut self, g: GameId, p: Dyadic) -> Result<(Dyadic, Dyadic)> {
        if let Some(&v) = self.thermo.cooled.get(&(g, p)) {
            return Ok(v);
        }
        let v = if let Some(x) = self.to_dyadic(g)? {
            (x, x)
        } else {
            let (t, x) = self.freeze_point(g)?;
            if p > t {
                (x, x)
            } else {
                self.unfrozen_stops(g, p)?
            }
        };
        self.thermo.cooled.insert((g, p), v);
        Ok(v)
    }

    /// Stops of `{G^L_p - p | G^R_p + p}` read from the options.
    fn unfrozen_stops(&mut self, g: GameId, p: Dyadic) -> Result<(Dyadic, Dyadic)> {
        let mut l: Option<Dyadic> = None;
        for i in 0..self.left_count(g) {
            let gl = self.left_at(g, i);
            let v = self.cooled_stops(gl, p)?.1 - p;
            l = Some(l.map_or(v, |m| m.max(v)));
        }
        let mut r: Option<Dyadic> = None;
        for i in 0..self.right_count(g) {
            let gr = self.right_at(g, i);
            let v = self.cooled_stops(gr, p)?.0 + p;
            r = Some(r.map_or(v, |m| m.min(v)));
        }
        match (l, r) {
            (Some(l), Some(r)) => Ok((l, r)),
            _ => Err(Error::FreezePoint(
                "canonical non-number with an empty option set".to_string(),
            )),
        }
    }

    /// `(t, x)`: the least penalty at which the stops of the penalized
    /// canonical non-number `g` coincide, and their common value.
    ///
    /// Located by bisection on the stop gap, which is nonincreasing and
    /// piecewise linear, then snapped to the exact root and checked.
    fn freeze_point(&mut self, g: GameId) -> Result<(Dyadic, Dyadic)> {
        if let Some(&v) = self.thermo.freeze.get(&g) {
            return Ok(v);
        }
        let v = self.find_freeze_point(g)?;
        self.thermo.freeze.insert(g, v);
        Ok(v)
    }

    fn find_freeze_point(&mut self, g: GameId) -> Result<(Dyadic, Dyadic)> {
        const MAX_DOUBLINGS: u32 = 64;
        const MAX_HALVINGS: u32 = 96;
        let gap = |s: &mut GameStore, q: Dyadic| -> Result<(Dyadic, Dyadic)> {
            let (l, r) = s.unfrozen_stops(g, q)?;
            Ok((l - r, l))
        };
        let (d0, l0) = gap(self, Dyadic::ZERO)?;
        if d0.is_negative() {
            return Err(Error::FreezePoint(format!(
                "stops already crossed at p = 0 (gap {d0})"
            )));
        }
        if d0 == Dyadic::ZERO {
            return Ok((Dyadic::ZERO, l0));
        }
        let (mut lo, mut dl) = (Dyadic::ZERO, d0);
        let mut hi = Dyadic::ONE;
        let mut dh = gap(self, hi)?.0;
        let mut doublings = 0;
        while dh.is_positive() {
            doublings += 1;
            if doublings > MAX_DOUBLINGS {
                return Err(Error::FreezePoint("stops never meet".to_string()));
            }
            lo = hi;
            dl = dh;
            hi = hi + hi;
            dh = gap(self, hi)?.0;
        }
        for _ in 0..MAX_HALVINGS {
            if let Some(root) = self.snap_root(&gap, lo, dl, hi, dh)? {
                return Ok(root);
            }
            let mid = (lo + hi).half();
            let dm = gap(self, mid)?.0;
            if dm.is_positive() {
                lo = mid;
                dl = dm;
            } else {
                hi = mid;
                dh = dm;
            }
        }
        Err(Error::FreezePoint(format!(
            "stops do not meet at a dyadic point between {lo} and {hi}"
        )))
    }

    /// If the gap is linear on `[lo, hi]`, its root there, verified exactly.
    fn snap_root(
        &mut self,
        gap: &impl Fn(&mut GameStore, Dyadic) -> Result<(Dyadic, Dyadic)>,
        lo: Dyadic,
        dl: Dyadic,
        hi: Dyadic,
        dh: Dyadic,
    ) -> Result<Option<(Dyadic, Dyadic)>> {
        let Ok(slope) = (dh - dl).checked_div(hi - lo) else {
            return Ok(None);
        };
        if !slope.is_negative() {
            return Ok(None);
        }
        let Ok(step) = dl.checked_div(-slope) else {
            return Ok(None);
        };
        let c = lo + step;
        if c <= lo || c > hi {
            return Ok(None);
        }
        let (dc, x) = gap(self, c)?;
        if dc != Dyadic::ZERO {
            return Ok(None);
        }
        let eps = Dyadic::new(1, 60).min(step.half());
        if !gap(self, c - eps)?.0.is_positive() {
            return Ok(None);
        }
        Ok(Some((c, x)))
    }
}
