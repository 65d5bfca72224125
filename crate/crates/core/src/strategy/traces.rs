//! Bounded exploration of the plays of a strategy against every opponent.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Response, Strategy};
use crate::arena::Arena;
use crate::bounds::Bounds;
use crate::error::Result;
use crate::play::{oview_indices, pending_questions, pview, subsequence, Occurrence, Play};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TraceOptions {
    /// Prune O-moves that contradict an earlier O-move made from the same O-view.
    pub o_innocent_only: bool,
    /// Forbid a second initial move.
    pub single_threaded_only: bool,
    /// Forbid O-answers that do not address the pending question.
    pub well_bracketed_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WalkStats {
    pub stuck: usize,
    pub bound_exceeded: usize,
    /// O-moves that were legal but left no room for a response.
    pub truncated: usize,
}

pub enum WalkEvent<'a> {
    /// An even-length play of the strategy (including `ε`).
    Play(&'a Play),
    /// An O-move was just played; the strategy's response to it.
    Response(&'a Play, Response),
}

/// Every legal O-move after the even-length play `s`.
pub fn opponent_moves(
    arena: &Arena,
    s: &Play,
    single_threaded_only: bool,
    well_bracketed_only: bool,
) -> Result<Vec<Occurrence>> {
    let mut out = Vec::new();
    if s.is_empty() || !single_threaded_only {
        out.extend(arena.initials().map(Occurrence::root));
    }
    if !s.is_empty() {
        for j in oview_indices(arena, s, s.len())? {
            for &n in arena.enabled_by(s[j].mv) {
                if arena.label(n).is_opponent() && !arena.is_initial(n) {
                    out.push(Occurrence::at(n, j));
                }
            }
        }
    }
    if well_bracketed_only {
        let Some(pending) = pending_questions(arena, s) else {
            return Ok(Vec::new());
        };
        let top = pending.last().copied();
        out.retain(|o| arena.label(o.mv).is_question() || o.ptr == top);
    }
    Ok(out)
}

struct Walker<'a, F> {
    sigma: &'a Strategy,
    max_len: usize,
    opts: TraceOptions,
    visit: F,
    /// O-view -> O-move (pointer relative to the O-view) on the current branch.
    chosen: HashMap<Play, Occurrence>,
    stats: WalkStats,
}

impl<F: FnMut(WalkEvent<'_>)> Walker<'_, F> {
    fn go(&mut self, s: &mut Play) -> Result<()> {
        (self.visit)(WalkEvent::Play(s));
        if s.len() >= self.max_len {
            return Ok(());
        }
        let arena = self.sigma.arena().clone();
        let candidates = opponent_moves(
            &arena,
            s,
            self.opts.single_threaded_only,
            self.opts.well_bracketed_only,
        )?;
        let oview = if self.opts.o_innocent_only {
            let idx = oview_indices(&arena, s, s.len())?;
            Some((subsequence(s, &idx)?, idx))
        } else {
            None
        };
        for o in candidates {
            let mut inserted = None;
            if let Some((view, idx)) = &oview {
                let rel = Occurrence {
                    mv: o.mv,
                    ptr: o.ptr.map(|p| idx.binary_search(&p).expect("visible justifier")),
                };
                match self.chosen.get(view) {
                    Some(prev) if *prev != rel => continue,
                    Some(_) => {}
                    None => {
                        self.chosen.insert(view.clone(), rel);
                        inserted = Some(view);
                    }
                }
            }
            s.push(o);
            if s.len() < self.max_len {
                let r = self.sigma.respond(s)?;
                (self.visit)(WalkEvent::Response(s, r));
                match r {
                    Response::Move(p) => {
                        s.push(p);
                        self.go(s)?;
                        s.pop();
                    }
                    Response::Stuck => self.stats.stuck += 1,
                    Response::BoundExceeded => self.stats.bound_exceeded += 1,
                }
            } else {
                self.stats.truncated += 1;
            }
            s.pop();
            if let Some(view) = inserted {
                self.chosen.remove(view);
            }
        }
        Ok(())
    }
}

/// Depth-first exploration of every play of `sigma` of length at most
/// `max_len`, in a deterministic order.
pub fn walk(
    sigma: &Strategy,
    max_len: usize,
    opts: TraceOptions,
    visit: impl FnMut(WalkEvent<'_>),
) -> Result<WalkStats> {
    let mut walker = Walker {
        sigma,
        max_len,
        opts,
        visit,
        chosen: HashMap::new(),
        stats: WalkStats::default(),
    };
    walker.go(&mut Play::empty())?;
    Ok(walker.stats)
}

/// The even-length plays of a strategy up to `max_play_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSet {
    pub plays: BTreeSet<Play>,
    pub bound_exceeded: usize,
}

pub fn traces(
    sigma: &Strategy,
    bounds: &Bounds,
    o_innocent_only: bool,
    single_threaded_only: bool,
) -> Result<TraceSet> {
    let mut plays = BTreeSet::new();
    let stats = walk(
        sigma,
        bounds.max_play_len,
        TraceOptions {
            o_innocent_only,
            single_threaded_only,
            well_bracketed_only: false,
        },
        |ev| {
            if let WalkEvent::Play(s) = ev {
                plays.insert(s.clone());
            }
        },
    )?;
    Ok(TraceSet {
        plays,
        bound_exceeded: stats.bound_exceeded,
    })
}

/// The view function restricted to the P-views reached by single-threaded
/// plays within bounds. Responses carry pointers relative to their view.
pub fn tabulate(sigma: &Strategy, bounds: &Bounds) -> Result<BTreeMap<Play, Occurrence>> {
    let arena = sigma.arena().clone();
    let mut views = BTreeSet::new();
    let mut failure = None;
    walk(
        sigma,
        bounds.max_play_len,
        TraceOptions {
            single_threaded_only: true,
            ..TraceOptions::default()
        },
        |ev| {
            if let WalkEvent::Response(s, Response::Move(_)) = ev {
                match pview(&arena, s) {
                    Ok(v) => {
                        views.insert(v);
                    }
                    Err(e) => failure = Some(e),
                }
            }
        },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut table = BTreeMap::new();
    for v in views {
        if let Response::Move(o) = sigma.respond_view(&v)? {
            table.insert(v, o);
        }
    }
    Ok(table)
}
