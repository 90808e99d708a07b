use proptest::prelude::*;
use robinhood_core::closed_form::{tent_prediction, threshold_search, DEFAULT_WINDOW};
use robinhood_core::pingala::golden_class;
use robinhood_core::robinhood::rh_options;
use robinhood_core::thermo::wall_leq;
use robinhood_core::{
    Dyadic, Engine, GameId, GameStore, GoldenClass, Player, RHPosition,
    TentClass,
};

fn pos(n: u32, a: u32, b: u32) -> RHPosition {
    RHPosition::new(n, a, b)
}

fn d(s: &str) -> Dyadic {
    s.parse().unwrap()
}

fn num(s: &mut GameStore, x: &str) -> GameId {
    s.from_dyadic(d(x)).unwrap()
}

#[test]
fn canonical_form_of_four_two_two() {
    let mut e = Engine::new();
    let g = e.rh_to_game(pos(4, 2, 2)).unwrap();
    let s = e.store();
    let c = s.canonical_form(g).unwrap();
    let (one, m1, two, m2) = (num(s, "1"), num(s, "-1"), num(s, "2"), num(s, "-2"));
    let pm1 = s.make_game(&[one], &[m1]).unwrap();
    let up = s.make_game(&[two], &[pm1]).unwrap();
    let down = s.negate(up).unwrap();
    let want = s.make_game(&[two, up], &[m2, down]).unwrap();
    assert_eq!(c, want);
    assert_eq!(s.render(c), "±(2,{2|±1})");
}

#[test]
fn heaps_within_both_wealths_are_nimbers() {
    let mut e = Engine::new();
    let g = e.rh_to_game(pos(2, 3, 3)).unwrap();
    let c = e.store().canonical_form(g).unwrap();
    assert_eq!(c, e.store().nimber(2).unwrap());
}

#[test]
fn small_game_examples() {
    let mut e = Engine::new();
    let g = e.rh_to_game(pos(12, 2, 1)).unwrap();
    let s = e.store();
    assert_eq!(s.mean(g), d("10"));
    assert_eq!(s.thermograph(g).classify(), TentClass::LST);
    let g = e.rh_to_game(pos(11, 1, 1)).unwrap();
    let s = e.store();
    assert_eq!(s.mean(g), Dyadic::ZERO);
    assert_eq!(s.stops(g), (d("10"), d("-10")));
    assert_eq!(s.thermograph(g).classify(), TentClass::DT);
    let z = s.zero();
    assert_eq!(s.thermograph(z).classify(), TentClass::Mast);
    let g = e.rh_to_game(pos(9, 5, 4)).unwrap();
    assert_eq!(e.store().mean(g), Dyadic::ONE);
    let five = num(e.store(), "5");
    assert_eq!(e.store().temperature(five), d("-1"));
}

#[test]
fn option_walls_are_ordered() {
    let mut e = Engine::new();
    let p = pos(20, 6, 4);
    let rights = rh_options(p, Player::Right);
    let r1 = e.rh_to_game(rights[0]).unwrap();
    let rb = e.rh_to_game(rights[3]).unwrap();
    let (w1, wb) = (e.store().thermograph(r1), e.store().thermograph(rb));
    assert!(wall_leq(&wb.left, &w1.left));
    let g = e.rh_to_game(pos(11, 1, 1)).unwrap();
    let t = e.store().thermograph(g);
    assert!(wall_leq(&t.right, &t.left));
    assert!(wall_leq(&t.left, &t.left));
}

/// Thermographs scaffolded over the ruleset DAG match those of canonical forms.
#[test]
fn literal_and_canonical_thermographs_agree() {
    let mut e = Engine::new();
    for n in 0..=8 {
        for a in 0..=4 {
            for b in 0..=4 {
                for g in [
                    e.rh_to_game(pos(n, a, b)).unwrap(),
                    e.lj_to_game(pos(n, a, b)).unwrap(),
                ] {
                    let s = e.store();
                    let c = s.canonical_form(g).unwrap();
                    assert_eq!(s.thermograph(g), s.thermograph(c), "({n};{a},{b})");
                    assert_eq!(s.number_value(g), s.to_dyadic(g).unwrap());
                }
            }
        }
    }
}

#[test]
fn negation_swaps_wealths() {
    let mut e = Engine::new();
    for n in 0..=10 {
        for a in 0..=6 {
            for b in 0..=6 {
                let g = e.rh_to_game(pos(n, a, b)).unwrap();
                let h = e.rh_to_game(pos(n, b, a)).unwrap();
                assert_eq!(e.store().negate(g).unwrap(), h);
                let g = e.lj_to_game(pos(n, a, b)).unwrap();
                let h = e.lj_to_game(pos(n, b, a)).unwrap();
                assert_eq!(e.store().negate(g).unwrap(), h);
            }
        }
    }
}

#[test]
fn games_lie_between_minus_n_and_n() {
    let mut e = Engine::new();
    for n in 0..=9i64 {
        for a in 0..=5 {
            for b in 0..=5 {
                let g = e.rh_to_game(pos(n as u32, a, b)).unwrap();
                let s = e.store();
                let (hi, lo) = (s.from_dyadic(Dyadic::from(n)).unwrap(), s.from_dyadic(Dyadic::from(-n)).unwrap());
                assert!(s.leq(lo, g) && s.leq(g, hi));
                let (ls, rs) = s.stops(g);
                assert!(Dyadic::from(-n) <= rs && ls <= Dyadic::from(n));
            }
        }
    }
}

#[test]
fn little_john_stop_recursion() {
    let mut e = Engine::new();
    let mut stops = |p: RHPosition| {
        let g = e.lj_to_game(p).unwrap();
        e.store().stops(g)
    };
    for b in 1..=8 {
        for a in b..=8 {
            for n in b..=a + b + 12 {
                let (ls, rs) = stops(pos(n, a, b));
                assert_eq!(ls > rs, n > b, "({n};{a},{b})");
                assert_eq!(ls, stops(pos(n - b, a, 0)).1);
                assert_eq!(rs, stops(pos(n - b, a - b, b)).0);
            }
        }
    }
}

#[test]
fn wall_slopes_are_orthodox() {
    let mut e = Engine::new();
    for n in 0..=16 {
        for a in 0..=6 {
            for b in 0..=6 {
                let g = e.rh_to_game(pos(n, a, b)).unwrap();
                let t = e.store().thermograph(g);
                assert!(t.left.slopes().iter().all(|&s| s == Dyadic::ZERO || s == d("-1")));
                assert!(t.right.slopes().iter().all(|&s| s == Dyadic::ZERO || s == Dyadic::ONE));
                if t.temperature >= Dyadic::ZERO {
                    assert_eq!(t.left.at(t.temperature), t.mean);
                    assert_eq!(t.right.at(t.temperature), t.mean);
                }
                assert!(wall_leq(&t.right, &t.left));
            }
        }
    }
}

/// Beyond the threshold the two rulesets share thermographs, the Little
/// John shape matches the golden class, and the class decides which of
/// temperature and mean grows with the heap.
#[test]
fn large_heap_behaviour() {
    let mut e = Engine::new();
    for a in 1..=7 {
        for b in 1..=7 {
            let n_max = a + b + 12;
            let n0 = threshold_search(&mut e, a, b, DEFAULT_WINDOW, n_max)
                .unwrap()
                .n0
                .unwrap();
            let class = golden_class(a as u64, b as u64).unwrap();
            let mut prev: Option<(Dyadic, Dyadic)> = None;
            for n in n0.max(a + b)..=n_max {
                let rh = e.rh_to_game(pos(n, a, b)).unwrap();
                let lj = e.lj_to_game(pos(n, a, b)).unwrap();
                let s = e.store();
                let (t_rh, t_lj) = (s.thermograph(rh), s.thermograph(lj));
                assert_eq!(t_rh, t_lj, "({n};{a},{b})");
                assert_eq!(t_lj.classify(), tent_prediction(a, b).unwrap(), "({n};{a},{b})");
                if let Some((pt, pm)) = prev {
                    let (dt, dm) = (t_rh.temperature - pt, t_rh.mean - pm);
                    match class {
                        GoldenClass::AbovePhi => assert_eq!((dt, dm), (Dyadic::ZERO, Dyadic::ONE)),
                        GoldenClass::BelowPhiInverse => {
                            assert_eq!((dt, dm), (Dyadic::ZERO, d("-1")))
                        }
                        _ => assert_eq!((dt, dm), (Dyadic::ONE, Dyadic::ZERO)),
                    }
                }
                prev = Some((t_rh.temperature, t_rh.mean));
            }
        }
    }
}

/// When the Left option with the largest left stop is a mast, the parent's
/// left wall only depends on that option.
#[test]
fn mast_option_decides_left_wall() {
    let mut s = GameStore::new();
    let masts = ["3", "5/2", "0", "-1", "4"];
    let others: Vec<GameId> = [("2", "-3"), ("1", "0"), ("3", "-4"), ("-1", "-2")]
        .iter()
        .map(|&(l, r)| {
            let (l, r) = (num(&mut s, l), num(&mut s, r));
            s.make_game(&[l], &[r]).unwrap()
        })
        .collect();
    let rights: Vec<GameId> = ["-5", "-2", "1/2"].iter().map(|x| num(&mut s, x)).collect();
    for m in masts {
        let h = num(&mut s, m);
        for &o in &others {
            for &r in &rights {
                if s.stops(o).0 > s.stops(h).0 {
                    continue;
                }
                let g = s.make_game(&[h, o], &[r]).unwrap();
                let alone = s.make_game(&[h], &[r]).unwrap();
                assert_eq!(s.thermograph(g).left, s.thermograph(alone).left);
            }
        }
    }
}

fn small_game(s: &mut GameStore, seeds: &[u8]) -> GameId {
    let mut pool: Vec<GameId> = ["-1", "0", "1/2", "1", "2"].iter().map(|x| num(s, x)).collect();
    for chunk in seeds.chunks(4) {
        let pick = |k: u8, pool: &[GameId]| pool[k as usize % pool.len()];
        let l: Vec<GameId> = chunk.iter().take(2).filter(|&&k| k % 5 != 0).map(|&k| pick(k, &pool)).collect();
        let r: Vec<GameId> = chunk.iter().skip(2).filter(|&&k| k % 5 != 0).map(|&k| pick(k / 3, &pool)).collect();
        let g = s.make_game(&l, &r).unwrap();
        pool.push(g);
    }
    *pool.last().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_laws(x in prop::collection::vec(any::<u8>(), 4..16),
                  y in prop::collection::vec(any::<u8>(), 4..16),
                  z in prop::collection::vec(any::<u8>(), 4..16)) {
        let mut s = GameStore::new();
        let (g, h, k) = (small_game(&mut s, &x), small_game(&mut s, &y), small_game(&mut s, &z));
        prop_assert!(s.leq(g, g));
        if s.leq(g, h) && s.leq(h, k) {
            prop_assert!(s.leq(g, k));
        }
        let (ng, nh) = (s.negate(g).unwrap(), s.negate(h).unwrap());
        prop_assert_eq!(s.leq(g, h), s.leq(nh, ng));
        prop_assert_eq!(s.outcome(ng), s.outcome(g).swapped());
        prop_assert_eq!(s.leq(g, h), s.leq_by_difference(g, h).unwrap());
    }

    #[test]
    fn canonical_forms_are_stable(x in prop::collection::vec(any::<u8>(), 4..20),
                                  y in prop::collection::vec(any::<u8>(), 4..12)) {
        let mut s = GameStore::new();
        let (g, h) = (small_game(&mut s, &x), small_game(&mut s, &y));
        let c = s.canonical_form(g).unwrap();
        prop_assert!(s.eq(g, c));
        prop_assert_eq!(s.canonical_form(c).unwrap(), c);
        let ch = s.canonical_form(h).unwrap();
        prop_assert_eq!(c == ch, s.eq(g, h));
        let (gh, ch_sum) = (s.sum(g, h).unwrap(), s.sum(c, h).unwrap());
        prop_assert!(s.eq(gh, ch_sum));
        prop_assert_eq!(s.thermograph(g), s.thermograph(c));
        prop_assert_eq!(s.number_value(g), s.to_dyadic(g).unwrap());
    }
}
