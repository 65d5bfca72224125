//! Observations of innocent strategies.
//!
//! `obs(σ)` collects, for every complete single-threaded O-innocent play `s`
//! of `σ`, the set `ovw(s)` of O-views of its prefixes. Two strategies are
//! observationally equivalent exactly when these collections coincide; the
//! test side of that statement is [`run_test`], which plays `σ` against the
//! test `α_S` induced by an O-deterministic set `S`.
//!
//! All O-view sets handled here are prefix-closed (O-views are closed under
//! prefixes, and `ovw(s)` always is), which keeps `α_S` total on stored sets.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::arena::{Arena, MoveIdx};
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::play::{
    check_legal, is_complete, is_single_threaded, is_well_bracketed, lift_to_test, oview,
    oview_indices, pending_questions, subsequence, Occurrence, Play,
};
use crate::strategy::{compose_with_cap, walk, Response, Strategy, TraceOptions, WalkEvent};

/// `ovw(s) = { ⌊t⌋ : t ⊑ s }`.
pub fn ovw(arena: &Arena, s: &Play) -> Result<BTreeSet<Play>> {
    (0..=s.len())
        .map(|k| subsequence(s, &oview_indices(arena, s, k)?))
        .collect()
}

/// Determinacy on O-moves, single-threadedness and a common initial move.
pub fn is_o_deterministic(arena: &Arena, views: &BTreeSet<Play>) -> bool {
    let mut initial = None;
    let mut next_o: HashMap<&[Occurrence], Occurrence> = HashMap::new();
    for v in views {
        if v.is_empty() {
            continue;
        }
        if !is_single_threaded(v) {
            return false;
        }
        match initial {
            None => initial = Some(v[0]),
            Some(i) if i != v[0] => return false,
            Some(_) => {}
        }
        let last = *v.last().expect("non-empty");
        if arena.label(last.mv).is_opponent() {
            let prefix = &v.moves()[..v.len() - 1];
            if let Some(prev) = next_o.insert(prefix, last) {
                if prev != last {
                    return false;
                }
            }
        }
    }
    true
}

/// A prefix-closed O-deterministic set of well-bracketed O-views.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ODetSet {
    views: BTreeSet<Play>,
}

impl ODetSet {
    /// `ovw(s)` for a single-threaded play `s`.
    pub fn of_play(arena: &Arena, s: &Play) -> Result<ODetSet> {
        Ok(ODetSet {
            views: ovw(arena, s)?,
        })
    }

    /// Validates `views` and closes them under prefixes. The flag reports
    /// whether closing added anything.
    pub fn close(arena: &Arena, views: impl IntoIterator<Item = Play>) -> Result<(ODetSet, bool)> {
        let given: BTreeSet<Play> = views.into_iter().collect();
        for v in &given {
            check_legal(arena, v)?;
            if oview(arena, v)? != *v {
                return Err(Error::IllFormedSet(format!("{} is not an O-view", v.render(arena))));
            }
            if !is_well_bracketed(arena, v) {
                return Err(Error::IllFormedSet(format!(
                    "{} is not well-bracketed",
                    v.render(arena)
                )));
            }
        }
        let mut views = given.clone();
        views.insert(Play::empty());
        for v in &given {
            for k in 1..v.len() {
                views.insert(v.prefix(k));
            }
        }
        if !is_o_deterministic(arena, &views) {
            return Err(Error::IllFormedSet(
                "views are not O-deterministic, single-threaded with one initial move".into(),
            ));
        }
        let added = views.len() != given.len();
        Ok((ODetSet { views }, added))
    }

    pub fn views(&self) -> &BTreeSet<Play> {
        &self.views
    }

    pub fn len(&self) -> usize {
        self.views.len()
    }

    pub fn is_empty(&self) -> bool {
        self.views.is_empty()
    }

    pub fn contains(&self, v: &Play) -> bool {
        self.views.contains(v)
    }

    pub fn is_subset(&self, other: &ODetSet) -> bool {
        self.views.is_subset(&other.views)
    }

    /// The common initial move, if any view is non-empty.
    pub fn initial(&self) -> Option<MoveIdx> {
        self.views.iter().find(|v| !v.is_empty()).map(|v| v[0].mv)
    }

    /// Sum of the view lengths; the primary key of the canonical order.
    pub fn total_moves(&self) -> usize {
        self.views.iter().map(Play::len).sum()
    }

    pub fn render(&self, arena: &Arena) -> String {
        let items: Vec<String> = self.views.iter().map(|v| v.render(arena)).collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// A set of O-deterministic sets over one arena.
#[derive(Debug, Clone)]
pub struct ObservationalStrategy {
    arena: Arc<Arena>,
    sets: BTreeSet<ODetSet>,
}

impl PartialEq for ObservationalStrategy {
    fn eq(&self, other: &Self) -> bool {
        *self.arena == *other.arena && self.sets == other.sets
    }
}

impl Eq for ObservationalStrategy {}

impl ObservationalStrategy {
    pub fn new(arena: Arc<Arena>, sets: impl IntoIterator<Item = ODetSet>) -> Self {
        ObservationalStrategy {
            arena,
            sets: sets.into_iter().collect(),
        }
    }

    pub fn arena(&self) -> &Arc<Arena> {
        &self.arena
    }

    pub fn sets(&self) -> &BTreeSet<ODetSet> {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// The test `α_S : A => Σ`. In the test arena the moves of `A` keep their
/// indices, `q_Σ` is `A.len()` and `a_Σ` is `A.len() + 1`.
pub fn alpha(arena: &Arc<Arena>, set: &ODetSet) -> Result<Strategy> {
    let test = Arena::arrow(arena.clone(), Arena::sigma());
    let a_sigma = arena.len() as MoveIdx + 1;
    let mut table: HashMap<Play, Occurrence> = HashMap::new();
    let mut add = |key: Play, resp: Occurrence| -> Result<()> {
        if let Some(prev) = table.insert(key.clone(), resp) {
            if prev != resp {
                return Err(Error::IllFormedSet(format!(
                    "test would answer {} in two ways",
                    key.render(&test)
                )));
            }
        }
        Ok(())
    };
    for v in set.views() {
        let Some(last) = v.last() else { continue };
        if arena.label(last.mv).is_opponent() {
            let s = v.prefix(v.len() - 1);
            let resp = Occurrence::at(last.mv, last.ptr.map_or(0, |p| p + 1));
            add(lift_to_test(arena, &s)?, resp)?;
        }
        if is_complete(arena, v) {
            add(lift_to_test(arena, v)?, Occurrence::at(a_sigma, 0))?;
        }
    }
    Strategy::from_table("alpha", test, table)
}

/// Outcome of playing a strategy against a test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Top,
    Bot,
    BoundExceeded,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Top => "TOP",
            Verdict::Bot => "BOT",
            Verdict::BoundExceeded => "BOUND_EXCEEDED",
        }
    }
}

/// `σ ; α_S` observed at Σ. The interaction inside `A` may use at most
/// `max_play_len` moves, matching the plays [`obs`] looks at.
pub fn run_test(sigma: &Strategy, set: &ODetSet, bounds: &Bounds) -> Result<Verdict> {
    run_alpha(sigma, &alpha(sigma.arena(), set)?, bounds)
}

/// [`run_test`] with a prebuilt test.
pub fn run_alpha(sigma: &Strategy, test: &Strategy, bounds: &Bounds) -> Result<Verdict> {
    let composite = compose_with_cap(sigma, test, bounds.max_play_len)?;
    let q = Play::from_moves(vec![Occurrence::root(0)]);
    Ok(match composite.respond_view(&q)? {
        Response::Move(_) => Verdict::Top,
        Response::Stuck => Verdict::Bot,
        Response::BoundExceeded => Verdict::BoundExceeded,
    })
}

/// `obs(σ)` truncated at `bounds`, stamped with the bounds used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    pub value: ObservationalStrategy,
    pub bounds: Bounds,
    /// Responses that hit the hidden-move cap while exploring.
    pub bound_exceeded: usize,
}

pub fn obs(sigma: &Strategy, bounds: &Bounds) -> Result<Observation> {
    let arena = sigma.arena().clone();
    let mut sets = BTreeSet::new();
    let mut failure = None;
    let stats = walk(
        sigma,
        bounds.max_play_len,
        TraceOptions {
            o_innocent_only: true,
            single_threaded_only: true,
            well_bracketed_only: true,
        },
        |ev| {
            if let WalkEvent::Play(s) = ev {
                if is_complete(&arena, s) {
                    match ODetSet::of_play(&arena, s) {
                        Ok(set) => {
                            sets.insert(set);
                        }
                        Err(e) => failure = Some(e),
                    }
                }
            }
        },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Observation {
        value: ObservationalStrategy { arena, sets },
        bounds: *bounds,
        bound_exceeded: stats.bound_exceeded,
    })
}

/// `x ≤os y`: every set of `x` contains some set of `y`.
pub fn leq_os(x: &ObservationalStrategy, y: &ObservationalStrategy) -> bool {
    x.sets
        .iter()
        .all(|s| y.sets.iter().any(|t| t.is_subset(s)))
}

/// Whether `s` and `t` first differ at an O-move: some common view is
/// continued by distinct O-moves in `s` and `t`.
pub fn differ_at_o_move(arena: &Arena, s: &ODetSet, t: &ODetSet) -> bool {
    let mut in_t: HashMap<&[Occurrence], Vec<Occurrence>> = HashMap::new();
    for w in t.views() {
        if let Some(last) = w.last() {
            if arena.label(last.mv).is_opponent() {
                in_t.entry(&w.moves()[..w.len() - 1]).or_default().push(*last);
            }
        }
    }
    s.views().iter().any(|v| match v.last() {
        Some(last) if arena.label(last.mv).is_opponent() => in_t
            .get(&v.moves()[..v.len() - 1])
            .is_some_and(|os| os.iter().any(|o| o != last)),
        _ => false,
    })
}

/// Any two distinct sets first differ at an O-move.
pub fn is_observational(arena: &Arena, sets: &BTreeSet<ODetSet>) -> bool {
    let sets: Vec<&ODetSet> = sets.iter().collect();
    sets.iter().enumerate().all(|(i, s)| {
        sets[i + 1..]
            .iter()
            .all(|t| differ_at_o_move(arena, s, t))
    })
}

/// Pairs `S ⊊ T` inside one collection.
pub fn strict_inclusions(sets: &BTreeSet<ODetSet>) -> Vec<(&ODetSet, &ODetSet)> {
    let mut out = Vec::new();
    for s in sets {
        for t in sets {
            if s != t && s.is_subset(t) {
                out.push((s, t));
            }
        }
    }
    out
}

/// Every prefix-closed O-deterministic set of well-bracketed O-views of
/// length at most `max_view_len`, ordered by total move count and then
/// lexicographically.
pub fn enumerate_odet_sets(arena: &Arena, max_view_len: usize) -> Result<Vec<ODetSet>> {
    let enumerator = Enumerator { arena, max_view_len };
    let mut out: Vec<ODetSet> = enumerator
        .below_even(&Play::empty())?
        .into_iter()
        .map(|mut views| {
            views.push(Play::empty());
            ODetSet {
                views: views.into_iter().collect(),
            }
        })
        .collect();
    out.sort_by_cached_key(|s| (s.total_moves(), s.clone()));
    Ok(out)
}

struct Enumerator<'a> {
    arena: &'a Arena,
    max_view_len: usize,
}

impl Enumerator<'_> {
    /// Choices below an even-length view: stop, or exactly one O-move.
    fn below_even(&self, w: &Play) -> Result<Vec<Vec<Play>>> {
        let mut out = vec![Vec::new()];
        if w.len() >= self.max_view_len {
            return Ok(out);
        }
        for o in self.o_moves(w) {
            let v = w.extended(o);
            for mut sub in self.below_odd(&v)? {
                sub.push(v.clone());
                out.push(sub);
            }
        }
        Ok(out)
    }

    /// Choices below a view ending in an O-move: any set of P-responses, each
    /// with its own continuation.
    fn below_odd(&self, v: &Play) -> Result<Vec<Vec<Play>>> {
        let mut out = vec![Vec::new()];
        if v.len() >= self.max_view_len {
            return Ok(out);
        }
        for p in self.p_moves(v) {
            let w = v.extended(p);
            let subs = self.below_even(&w)?;
            let mut next = Vec::with_capacity(out.len() * (subs.len() + 1));
            for base in &out {
                next.push(base.clone());
                for sub in &subs {
                    let mut combined = base.clone();
                    combined.push(w.clone());
                    combined.extend(sub.iter().cloned());
                    next.push(combined);
                }
            }
            out = next;
        }
        Ok(out)
    }

    fn o_moves(&self, w: &Play) -> Vec<Occurrence> {
        let arena = self.arena;
        if w.is_empty() {
            return arena.initials().map(Occurrence::root).collect();
        }
        let top = pending_questions(arena, w).and_then(|p| p.last().copied());
        let mut out = Vec::new();
        for (j, occ) in w.moves().iter().enumerate() {
            if !arena.label(occ.mv).is_player() {
                continue;
            }
            for &n in arena.enabled_by(occ.mv) {
                let l = arena.label(n);
                if l.is_opponent() && !arena.is_initial(n) && (l.is_question() || top == Some(j)) {
                    out.push(Occurrence::at(n, j));
                }
            }
        }
        out
    }

    fn p_moves(&self, v: &Play) -> Vec<Occurrence> {
        let arena = self.arena;
        let k = v.len() - 1;
        let top = pending_questions(arena, v).and_then(|p| p.last().copied());
        arena
            .enabled_by(v[k].mv)
            .iter()
            .filter(|&&n| {
                let l = arena.label(n);
                l.is_player() && (l.is_question() || top == Some(k))
            })
            .map(|&n| Occurrence::at(n, k))
            .collect()
    }
}
