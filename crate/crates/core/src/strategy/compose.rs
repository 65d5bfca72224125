//! Composition of innocent strategies by parallel interaction and hiding.
//!
//! The composite answers a P-view `u` of `A => C` by replaying `u` against
//! both components: O-moves of `u` are fed to the component owning them,
//! moves in the middle game `B` bounce between the components, and the first
//! move that surfaces in `A` or `C` is the composite's next move. While
//! replaying, every visible P-move produced must coincide with the one
//! recorded in `u`; otherwise `u` is not reachable and the composite is stuck.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{Response, Strategy, ViewFunction};
use crate::arena::{Arena, MoveIdx};
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::play::{Occurrence, Play};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Zone {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy)]
struct Step {
    zone: Zone,
    ptr: Option<usize>,
}

/// The interaction sequence together with its two projections.
#[derive(Default)]
struct Interaction {
    steps: Vec<Step>,
    left: Play,
    left_of: Vec<usize>,
    right: Play,
    right_of: Vec<usize>,
    to_left: Vec<Option<usize>>,
    to_right: Vec<Option<usize>>,
    visible_pos: Vec<Option<usize>>,
    hidden: usize,
}

impl Interaction {
    fn push(&mut self, zone: Zone, left_mv: MoveIdx, right_mv: MoveIdx, ptr: Option<usize>) -> usize {
        let i = self.steps.len();
        self.steps.push(Step { zone, ptr });
        if zone != Zone::C {
            // A B-initial is justified by a C-move: the root, seen from the left.
            let lp = ptr.and_then(|p| self.to_left[p]);
            self.left.push(Occurrence { mv: left_mv, ptr: lp });
            self.left_of.push(i);
            self.to_left.push(Some(self.left.len() - 1));
        } else {
            self.to_left.push(None);
        }
        if zone != Zone::A {
            let rp = ptr.and_then(|p| self.to_right[p]);
            self.right.push(Occurrence { mv: right_mv, ptr: rp });
            self.right_of.push(i);
            self.to_right.push(Some(self.right.len() - 1));
        } else {
            self.to_right.push(None);
        }
        self.visible_pos.push(None);
        i
    }

    /// The visible occurrence justifying step `i`, following hidden pointers.
    fn visible_justifier(&self, mut i: usize) -> Option<usize> {
        loop {
            let step = self.steps[i];
            if step.zone != Zone::B {
                return self.visible_pos[i];
            }
            i = step.ptr?;
        }
    }
}

struct Composite {
    arena: Arc<Arena>,
    left: Strategy,
    right: Strategy,
    a_len: MoveIdx,
    b_len: MoveIdx,
    hidden_cap: usize,
    memo: Mutex<HashMap<Play, Response>>,
}

impl Composite {
    fn split_out(&self, mv: MoveIdx) -> (Zone, MoveIdx) {
        if mv < self.a_len {
            (Zone::A, mv)
        } else {
            (Zone::C, mv - self.a_len)
        }
    }

    fn split(&self, side: Side, mv: MoveIdx) -> (Zone, MoveIdx) {
        match side {
            Side::Left if mv < self.a_len => (Zone::A, mv),
            Side::Left => (Zone::B, mv - self.a_len),
            Side::Right if mv < self.b_len => (Zone::B, mv),
            Side::Right => (Zone::C, mv - self.b_len),
        }
    }

    /// Indices of a zone-local move in the left arena, right arena and the
    /// composite arena (unused slots are never read).
    fn embed(&self, zone: Zone, local: MoveIdx) -> (MoveIdx, MoveIdx, MoveIdx) {
        match zone {
            Zone::A => (local, MoveIdx::MAX, local),
            Zone::B => (self.a_len + local, local, MoveIdx::MAX),
            Zone::C => (MoveIdx::MAX, self.b_len + local, self.a_len + local),
        }
    }

    fn replay(&self, view: &Play) -> Result<Response> {
        let n = view.len();
        if n.is_multiple_of(2) {
            return Err(Error::IllegalPlay("composite queried on an even-length view".into()));
        }
        let mut it = Interaction::default();
        let mut step_of_view: Vec<usize> = Vec::with_capacity(n);
        let mut k = 0;
        while k < n {
            let o = view[k];
            let (zone, local) = self.split_out(o.mv);
            let (lm, rm, _) = self.embed(zone, local);
            let i = it.push(zone, lm, rm, o.ptr.map(|p| step_of_view[p]));
            it.visible_pos[i] = Some(k);
            step_of_view.push(i);
            let mut side = if zone == Zone::A { Side::Left } else { Side::Right };
            loop {
                let (strategy, play, back) = match side {
                    Side::Left => (&self.left, &it.left, &it.left_of),
                    Side::Right => (&self.right, &it.right, &it.right_of),
                };
                let occ = match strategy.respond(play)? {
                    Response::Move(occ) => occ,
                    other => return Ok(other),
                };
                let ptr = occ.ptr.map(|p| back[p]);
                let (zone, local) = self.split(side, occ.mv);
                let (lm, rm, out) = self.embed(zone, local);
                if zone == Zone::B {
                    if it.hidden >= self.hidden_cap {
                        return Ok(Response::BoundExceeded);
                    }
                    it.hidden += 1;
                    it.push(zone, lm, rm, ptr);
                    side = match side {
                        Side::Left => Side::Right,
                        Side::Right => Side::Left,
                    };
                    continue;
                }
                let i = it.push(zone, lm, rm, ptr);
                let Some(vis_ptr) = ptr.and_then(|p| it.visible_justifier(p)) else {
                    return Err(Error::IllegalResponse(format!(
                        "{};{} produced an unjustified visible move",
                        self.left.name(),
                        self.right.name()
                    )));
                };
                let produced = Occurrence::at(out, vis_ptr);
                if k + 1 == n {
                    return Ok(Response::Move(produced));
                }
                if view[k + 1] != produced {
                    return Ok(Response::Stuck);
                }
                it.visible_pos[i] = Some(k + 1);
                step_of_view.push(i);
                break;
            }
            k += 2;
        }
        unreachable!("odd-length view always ends on an O-move")
    }
}

impl ViewFunction for Composite {
    fn arena(&self) -> &Arc<Arena> {
        &self.arena
    }

    fn respond_view(&self, view: &Play) -> Result<Response> {
        if let Some(r) = self.memo.lock().expect("memo poisoned").get(view) {
            return Ok(*r);
        }
        let r = self.replay(view)?;
        self.memo
            .lock()
            .expect("memo poisoned")
            .insert(view.clone(), r);
        Ok(r)
    }
}

/// `sigma ; tau` where `tau : B => C` and `sigma` is either `A => B` (result
/// on `A => C`) or a closed strategy on `B` (result on `C`).
pub fn compose(sigma: &Strategy, tau: &Strategy, bounds: &Bounds) -> Result<Strategy> {
    compose_with_cap(sigma, tau, bounds.hidden_cap())
}

/// [`compose`] with an explicit cap on hidden moves per response.
pub fn compose_with_cap(sigma: &Strategy, tau: &Strategy, hidden_cap: usize) -> Result<Strategy> {
    let Some((b, c)) = tau.arena().as_arrow() else {
        return Err(Error::ArenaMismatch(format!(
            "{} is not a strategy on an arrow arena",
            tau.name()
        )));
    };
    let (a_len, arena) = if **sigma.arena() == **b {
        (0, c.clone())
    } else {
        match sigma.arena().as_arrow() {
            Some((a, b2)) if **b2 == **b => (a.len(), Arena::arrow(a.clone(), c.clone())),
            _ => {
                return Err(Error::ArenaMismatch(format!(
                    "cannot compose {} with {}: middle arenas differ",
                    sigma.name(),
                    tau.name()
                )))
            }
        }
    };
    Ok(Strategy::new(
        format!("{};{}", sigma.name(), tau.name()),
        Composite {
            arena,
            left: sigma.clone(),
            right: tau.clone(),
            a_len: a_len as MoveIdx,
            b_len: b.len() as MoveIdx,
            hidden_cap,
            memo: Mutex::new(HashMap::new()),
        },
    ))
}
