//! Innocent strategies presented as P-view functions.
//!
//! A [`Strategy`] wraps a [`ViewFunction`]: given a P-view ending in an
//! O-move it returns the next P-move, with the justifier given as a position
//! in the view. Everything else (responding on whole plays, enumerating
//! traces, composing) is derived from that single entry point.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::arena::{Arena, MoveIdx};
use crate::error::{Error, Result};
use crate::play::{pview_indices, subsequence, Occurrence, Play};

pub mod builtin;
mod compose;
mod traces;

pub use compose::{compose, compose_with_cap};
pub use traces::{opponent_moves, tabulate, traces, walk, TraceOptions, TraceSet, WalkEvent, WalkStats};

/// What a strategy does when it is its turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Response {
    /// The next P-move; the pointer is relative to whatever was queried
    /// (a view for [`ViewFunction::respond_view`], the whole play for
    /// [`Strategy::respond`]).
    Move(Occurrence),
    /// No response: the view is outside the strategy's domain.
    Stuck,
    /// Computing the response needed more hidden moves than allowed.
    BoundExceeded,
}

pub trait ViewFunction: Send + Sync {
    fn arena(&self) -> &Arc<Arena>;

    /// `view` is a P-view (equal to its own P-view) ending in an O-move.
    fn respond_view(&self, view: &Play) -> Result<Response>;
}

#[derive(Clone)]
pub struct Strategy {
    inner: Arc<dyn ViewFunction>,
    name: Arc<str>,
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Strategy({})", self.name)
    }
}

impl Strategy {
    pub fn new(name: impl Into<Arc<str>>, inner: impl ViewFunction + 'static) -> Strategy {
        Strategy {
            inner: Arc::new(inner),
            name: name.into(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<Arc<str>>) -> Strategy {
        Strategy {
            inner: self.inner.clone(),
            name: name.into(),
        }
    }

    pub fn arena(&self) -> &Arc<Arena> {
        self.inner.arena()
    }

    pub fn respond_view(&self, view: &Play) -> Result<Response> {
        self.inner.respond_view(view)
    }

    /// Responds on a whole play ending in an O-move by consulting the P-view.
    /// The returned pointer indexes into `s`.
    pub fn respond(&self, s: &Play) -> Result<Response> {
        if s.len().is_multiple_of(2) {
            return Err(Error::IllegalPlay("it is not P's turn".into()));
        }
        let arena = self.arena();
        let idx = pview_indices(arena, s, s.len())?;
        let view = subsequence(s, &idx)?;
        match self.inner.respond_view(&view)? {
            Response::Move(occ) => {
                self.check_response(&view, occ)?;
                let p = occ.ptr.expect("checked above");
                Ok(Response::Move(Occurrence::at(occ.mv, idx[p])))
            }
            other => Ok(other),
        }
    }

    fn check_response(&self, view: &Play, occ: Occurrence) -> Result<()> {
        let arena = self.arena();
        let bad = |why: &str| {
            Err(Error::IllegalResponse(format!(
                "{} after {}: {why}",
                self.name,
                view.render(arena)
            )))
        };
        if occ.mv as usize >= arena.len() {
            return bad("move out of range");
        }
        if !arena.label(occ.mv).is_player() {
            return bad("not a P-move");
        }
        match occ.ptr {
            Some(p) if p < view.len() => {
                if !arena.enables(view[p].mv, occ.mv) {
                    return bad("justifier does not enable the move");
                }
            }
            _ => return bad("missing or out-of-range justifier"),
        }
        Ok(())
    }

    /// The same view function on an arena with an identical index layout,
    /// e.g. currying `(G * S) => T` into `G => (S => T)`.
    pub fn retag(&self, arena: Arc<Arena>) -> Result<Strategy> {
        if !self.arena().same_layout(&arena) {
            return Err(Error::ArenaMismatch(format!(
                "cannot retag {} onto an arena with a different layout",
                self.name
            )));
        }
        Ok(Strategy::new(
            self.name.clone(),
            Retag {
                arena,
                inner: self.clone(),
            },
        ))
    }

    /// A finite view function given by its graph.
    pub fn from_table(
        name: impl Into<Arc<str>>,
        arena: Arc<Arena>,
        entries: impl IntoIterator<Item = (Play, Occurrence)>,
    ) -> Result<Strategy> {
        let mut table = HashMap::new();
        for (view, resp) in entries {
            if let Some(prev) = table.insert(view.clone(), resp) {
                if prev != resp {
                    return Err(Error::IllegalResponse(format!(
                        "two responses for view {}",
                        view.render(&arena)
                    )));
                }
            }
        }
        Ok(Strategy::new(name, Table { arena, table }))
    }

    /// The strategy that never responds.
    pub fn bottom(arena: Arc<Arena>) -> Strategy {
        Strategy::new(
            "bottom",
            Table {
                arena,
                table: HashMap::new(),
            },
        )
    }
}

struct Retag {
    arena: Arc<Arena>,
    inner: Strategy,
}

impl ViewFunction for Retag {
    fn arena(&self) -> &Arc<Arena> {
        &self.arena
    }

    fn respond_view(&self, view: &Play) -> Result<Response> {
        self.inner.respond_view(view)
    }
}

struct Table {
    arena: Arc<Arena>,
    table: HashMap<Play, Occurrence>,
}

impl ViewFunction for Table {
    fn arena(&self) -> &Arc<Arena> {
        &self.arena
    }

    fn respond_view(&self, view: &Play) -> Result<Response> {
        Ok(self
            .table
            .get(view)
            .map_or(Response::Stuck, |&o| Response::Move(o)))
    }
}

/// A view function given by a closure; `None` means no response.
pub struct FnView<F> {
    arena: Arc<Arena>,
    f: F,
}

impl<F> FnView<F>
where
    F: Fn(&Play) -> Option<Occurrence> + Send + Sync,
{
    pub fn new(arena: Arc<Arena>, f: F) -> Self {
        FnView { arena, f }
    }
}

impl<F> ViewFunction for FnView<F>
where
    F: Fn(&Play) -> Option<Occurrence> + Send + Sync,
{
    fn arena(&self) -> &Arc<Arena> {
        &self.arena
    }

    fn respond_view(&self, view: &Play) -> Result<Response> {
        Ok((self.f)(view).map_or(Response::Stuck, Response::Move))
    }
}

/// A block of `len` moves at `left` mirrored by the block at `right`.
#[derive(Debug, Clone, Copy)]
pub struct Link {
    pub left: MoveIdx,
    pub right: MoveIdx,
    pub len: MoveIdx,
}

/// Generalised copycat: every O-move in a linked block is answered by the
/// same move in the partner block. Views of such strategies are sequences of
/// O-move/copy pairs, so the copy of position `j` is `j ^ 1`.
pub struct CopyCat {
    arena: Arc<Arena>,
    links: Vec<Link>,
}

impl CopyCat {
    pub fn new(arena: Arc<Arena>, links: Vec<Link>) -> Self {
        CopyCat { arena, links }
    }

    fn partner(&self, m: MoveIdx) -> Option<MoveIdx> {
        self.links.iter().find_map(|l| {
            if (l.left..l.left + l.len).contains(&m) {
                Some(m - l.left + l.right)
            } else if (l.right..l.right + l.len).contains(&m) {
                Some(m - l.right + l.left)
            } else {
                None
            }
        })
    }
}

impl ViewFunction for CopyCat {
    fn arena(&self) -> &Arc<Arena> {
        &self.arena
    }

    fn respond_view(&self, view: &Play) -> Result<Response> {
        let k = view.len() - 1;
        let o = view[k];
        let Some(copy) = self.partner(o.mv) else {
            return Ok(Response::Stuck);
        };
        let ptr = match o.ptr {
            None => k,
            Some(j) => {
                let pj = j ^ 1;
                if pj >= k || self.partner(view[j].mv) != Some(view[pj].mv) {
                    return Ok(Response::Stuck);
                }
                pj
            }
        };
        Ok(Response::Move(Occurrence::at(copy, ptr)))
    }
}

/// `<left, right> : G => B1 * B2`; the initial move of a view picks the
/// component.
pub struct Pairing {
    arena: Arc<Arena>,
    left: Strategy,
    right: Strategy,
    ctx_len: MoveIdx,
    left_len: MoveIdx,
}

impl Pairing {
    fn translate(&self, view: &Play, into_right: bool) -> Option<Play> {
        let lo = self.ctx_len;
        let hi = self.ctx_len + self.left_len;
        let moves = view
            .moves()
            .iter()
            .map(|o| {
                let in_left = (lo..hi).contains(&o.mv);
                let in_right = o.mv >= hi;
                match (into_right, in_left, in_right) {
                    (false, _, true) | (true, true, _) => None,
                    (true, _, true) => Some(Occurrence {
                        mv: o.mv - self.left_len,
                        ptr: o.ptr,
                    }),
                    _ => Some(*o),
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Play::from_moves(moves))
    }
}

impl ViewFunction for Pairing {
    fn arena(&self) -> &Arc<Arena> {
        &self.arena
    }

    fn respond_view(&self, view: &Play) -> Result<Response> {
        let into_right = view[0].mv >= self.ctx_len + self.left_len;
        let Some(local) = self.translate(view, into_right) else {
            return Ok(Response::Stuck);
        };
        let (strategy, shift) = if into_right {
            (&self.right, self.left_len)
        } else {
            (&self.left, 0)
        };
        Ok(match strategy.respond_view(&local)? {
            Response::Move(o) if o.mv >= self.ctx_len => Response::Move(Occurrence {
                mv: o.mv + shift,
                ptr: o.ptr,
            }),
            other => other,
        })
    }
}

/// Pairs `left : G => B1` and `right : G => B2` into `G => B1 * B2`.
pub fn pair(left: &Strategy, right: &Strategy) -> Result<Strategy> {
    let (Some((g1, b1)), Some((g2, b2))) = (left.arena().as_arrow(), right.arena().as_arrow())
    else {
        return Err(Error::ArenaMismatch("pairing needs two arrow strategies".into()));
    };
    if g1 != g2 {
        return Err(Error::ArenaMismatch("paired strategies have different contexts".into()));
    }
    let arena = Arena::arrow(g1.clone(), Arena::product(b1.clone(), b2.clone()));
    Ok(Strategy::new(
        format!("<{},{}>", left.name(), right.name()),
        Pairing {
            arena,
            left: left.clone(),
            right: right.clone(),
            ctx_len: g1.len() as MoveIdx,
            left_len: b1.len() as MoveIdx,
        },
    ))
}
