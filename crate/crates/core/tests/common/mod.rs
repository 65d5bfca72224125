//! Corpus strategies and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use obsgame::arena::Arena;
use obsgame::pcf::denote_source;
use obsgame::play::{is_legal, Occurrence, Play};
use obsgame::strategy::builtin::{self, AddOrder};
use obsgame::{Bounds, Strategy};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn pcf(src: &str, bounds: &Bounds) -> Strategy {
    let (_, _, s) = denote_source(src, bounds).unwrap_or_else(|e| panic!("{src}: {e}"));
    s.renamed(src.lines().last().unwrap_or(src).trim().to_string())
}

pub const ADD_LR: &str = "fun x: nat -> fun y: nat -> x + y";
pub const ADD_RL: &str = "#pragma plus_rl\nfun x: nat -> fun y: nat -> x + y";
pub const ADD_TWICE: &str = "fun x: nat -> fun y: nat -> ifz x then x + y else x + y";
pub const PROJ_L: &str = "fun x: nat -> fun y: nat -> x";
pub const PROJ_R: &str = "fun x: nat -> fun y: nat -> y";
pub const PROJ_L_STRICT: &str = "fun x: nat -> fun y: nat -> ifz y then x else x";
pub const ID_REC: &str =
    "fix (fun f: nat -> nat -> fun n: nat -> ifz n then 0 else succ (f (pred n)))";
pub const ID: &str = "fun x: nat -> x";
pub const SUCC: &str = "fun x: nat -> succ x";
pub const SUCC_ROUND: &str = "fun x: nat -> succ (pred (succ x))";
pub const PRED: &str = "fun x: nat -> pred x";
pub const PRED_GUARDED: &str = "fun x: nat -> ifz x then 0 else pred x";
pub const OMEGA_FIX: &str = "fix (fun x: nat -> x)";
pub const BETA: &str = "(fun x: nat -> succ x) 0";

/// Every strategy the corpus-wide properties run over.
pub fn corpus(bounds: &Bounds) -> Vec<Strategy> {
    let m = bounds.max_nat;
    let mut out = vec![
        builtin::top(),
        builtin::bottom(),
        builtin::numeral(m, 1),
        builtin::succ(m),
        builtin::pred(m),
        builtin::add(m, AddOrder::LeftToRight),
        builtin::add(m, AddOrder::RightToLeft),
        builtin::add(m, AddOrder::LeftTwice),
        builtin::projection(m, false),
        builtin::projection(m, true),
        builtin::copycat(Arena::nat(m)),
        builtin::apply_to_pair(m, 1, 0),
    ];
    for src in [
        ADD_LR, ADD_RL, ADD_TWICE, PROJ_L, PROJ_L_STRICT, ID_REC, SUCC, PRED_GUARDED, OMEGA_FIX, BETA,
        "fun f: nat -> nat -> f (f 0)",
    ] {
        out.push(pcf(src, bounds));
    }
    out
}

/// `⌈s⌉` by direct transcription of the four defining clauses, as positions.
pub fn pview_positions(arena: &Arena, s: &[Occurrence]) -> Vec<usize> {
    match s.split_last() {
        None => vec![],
        Some((last, rest)) => {
            let j = rest.len();
            if arena.label(last.mv).is_player() {
                let mut v = pview_positions(arena, rest);
                v.push(j);
                v
            } else if let Some(p) = last.ptr {
                let mut v = pview_positions(arena, &s[..p]);
                v.push(p);
                v.push(j);
                v
            } else {
                vec![j]
            }
        }
    }
}

/// `⌊s⌋` by direct transcription of the three defining clauses.
pub fn oview_positions(arena: &Arena, s: &[Occurrence]) -> Vec<usize> {
    match s.split_last() {
        None => vec![],
        Some((last, rest)) => {
            let j = rest.len();
            if arena.label(last.mv).is_opponent() {
                let mut v = oview_positions(arena, rest);
                v.push(j);
                v
            } else {
                let p = last.ptr.expect("P-moves are justified");
                let mut v = oview_positions(arena, &s[..p]);
                v.push(p);
                v.push(j);
                v
            }
        }
    }
}

/// Restricts `s` to `positions`, renumbering pointers; pointers leaving the
/// subsequence become roots.
pub fn restrict(s: &[Occurrence], positions: &[usize]) -> Vec<Occurrence> {
    positions
        .iter()
        .map(|&i| Occurrence {
            mv: s[i].mv,
            ptr: s[i].ptr.and_then(|p| positions.iter().position(|&k| k == p)),
        })
        .collect()
}

/// `q_Σ · s` in `A => Σ` built by hand: `q_Σ` sits after the moves of `A`.
pub fn lift(arena: &Arena, s: &[Occurrence]) -> Vec<Occurrence> {
    let mut out = vec![Occurrence {
        mv: arena.len() as u32,
        ptr: None,
    }];
    out.extend(s.iter().map(|o| Occurrence {
        mv: o.mv,
        ptr: Some(o.ptr.map_or(0, |p| p + 1)),
    }));
    out
}

/// Every occurrence that extends `s` to a legal play.
pub fn legal_extensions(arena: &Arena, s: &Play) -> Vec<Occurrence> {
    let mut out = Vec::new();
    for m in arena.moves() {
        for ptr in std::iter::once(None).chain((0..s.len()).map(Some)) {
            let o = Occurrence { mv: m, ptr };
            if is_legal(arena, &s.extended(o)) {
                out.push(o);
            }
        }
    }
    out
}

/// A random legal play of length at most `max_len` with at most one initial
/// occurrence when `single` is set.
pub fn random_play(arena: &Arena, max_len: usize, single: bool, rng: &mut impl Rng) -> Play {
    let target = rng.gen_range(0..=max_len);
    let mut s = Play::empty();
    while s.len() < target {
        let opts: Vec<Occurrence> = legal_extensions(arena, &s)
            .into_iter()
            .filter(|o| !single || o.ptr.is_some() || s.is_empty())
            .collect();
        match opts.choose(rng) {
            Some(&o) => s.push(o),
            None => break,
        }
    }
    s
}

pub fn arenas_for_duality() -> Vec<Arc<Arena>> {
    vec![
        Arena::sigma(),
        Arena::nat(2),
        Arena::arrow(Arena::nat(2), Arena::nat(2)),
    ]
}

/// Deterministic O-moves after equal prefixes, checked by brute force over
/// pairs.
pub fn o_deterministic_by_pairs(arena: &Arena, views: &BTreeSet<Play>) -> bool {
    let initials: BTreeSet<u32> = views.iter().filter(|v| !v.is_empty()).map(|v| v[0].mv).collect();
    if initials.len() > 1 {
        return false;
    }
    for a in views {
        for b in views {
            if a.len() != b.len() || a.is_empty() {
                continue;
            }
            let n = a.len() - 1;
            if a.moves()[..n] == b.moves()[..n]
                && arena.label(a[n].mv).is_opponent()
                && arena.label(b[n].mv).is_opponent()
                && a[n] != b[n]
            {
                return false;
            }
        }
    }
    views
        .iter()
        .all(|v| v.moves().iter().filter(|o| o.ptr.is_none()).count() <= 1)
}
