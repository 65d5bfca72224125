//! Justified sequences, legality, P-views and O-views.
//!
//! A [`Play`] does not carry its arena; every operation that needs labels or
//! the enabling relation takes the arena explicitly. Pointers are indices of
//! earlier occurrences, `None` meaning the move is justified by the root.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::arena::{Arena, MoveIdx};
use crate::error::{Error, Result};

/// One move occurrence together with its justification pointer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub mv: MoveIdx,
    pub ptr: Option<usize>,
}

impl Occurrence {
    pub fn root(mv: MoveIdx) -> Occurrence {
        Occurrence { mv, ptr: None }
    }

    pub fn at(mv: MoveIdx, ptr: usize) -> Occurrence {
        Occurrence { mv, ptr: Some(ptr) }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Play {
    moves: Vec<Occurrence>,
}

impl Play {
    pub fn empty() -> Play {
        Play::default()
    }

    pub fn from_moves(moves: Vec<Occurrence>) -> Play {
        Play { moves }
    }

    /// Builds a play from `(move id, pointer)` pairs, resolving ids in `arena`.
    pub fn from_ids(arena: &Arena, moves: &[(&str, Option<usize>)]) -> Result<Play> {
        let moves = moves
            .iter()
            .map(|&(id, ptr)| {
                arena
                    .lookup(id)
                    .map(|mv| Occurrence { mv, ptr })
                    .ok_or_else(|| Error::UnknownMove(id.to_string()))
            })
            .collect::<Result<_>>()?;
        Ok(Play { moves })
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn moves(&self) -> &[Occurrence] {
        &self.moves
    }

    pub fn last(&self) -> Option<&Occurrence> {
        self.moves.last()
    }

    pub fn push(&mut self, occ: Occurrence) {
        self.moves.push(occ);
    }

    pub fn pop(&mut self) -> Option<Occurrence> {
        self.moves.pop()
    }

    /// The prefix of length `len`.
    pub fn prefix(&self, len: usize) -> Play {
        Play {
            moves: self.moves[..len].to_vec(),
        }
    }

    pub fn extended(&self, occ: Occurrence) -> Play {
        let mut p = self.clone();
        p.push(occ);
        p
    }

    pub fn is_prefix_of(&self, other: &Play) -> bool {
        other.moves.starts_with(&self.moves)
    }

    /// Renders the play as `id^ptr` tokens, e.g. `R.q L.L.q^0 L.L.1^1`.
    pub fn render(&self, arena: &Arena) -> String {
        if self.is_empty() {
            return "ε".to_string();
        }
        let mut out = String::new();
        for (i, occ) in self.moves.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(arena.id(occ.mv));
            if let Some(p) = occ.ptr {
                let _ = write!(out, "^{p}");
            }
        }
        out
    }
}

impl std::ops::Index<usize> for Play {
    type Output = Occurrence;

    fn index(&self, i: usize) -> &Occurrence {
        &self.moves[i]
    }
}

/// All prefixes of `s`, from `ε` up to `s` itself.
pub fn prefixes(s: &Play) -> Vec<Play> {
    (0..=s.len()).map(|k| s.prefix(k)).collect()
}

/// Positions of `s[..len]` that make up its P-view, in increasing order.
pub fn pview_indices(arena: &Arena, s: &Play, len: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut i = len;
    while i > 0 {
        let j = i - 1;
        let occ = s[j];
        if arena.label(occ.mv).is_player() {
            out.push(j);
            i = j;
        } else {
            match occ.ptr {
                None => {
                    out.push(j);
                    break;
                }
                Some(p) if p < j => {
                    out.push(j);
                    out.push(p);
                    i = p;
                }
                Some(p) => {
                    return Err(Error::IllegalPlay(format!(
                        "pointer {p} at position {j} does not point backwards"
                    )))
                }
            }
        }
    }
    out.reverse();
    Ok(out)
}

/// Positions of `s[..len]` that make up its O-view, in increasing order.
pub fn oview_indices(arena: &Arena, s: &Play, len: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut i = len;
    while i > 0 {
        let j = i - 1;
        let occ = s[j];
        if arena.label(occ.mv).is_opponent() {
            out.push(j);
            i = j;
        } else {
            match occ.ptr {
                Some(p) if p < j => {
                    out.push(j);
                    out.push(p);
                    i = p;
                }
                _ => {
                    return Err(Error::IllegalPlay(format!(
                        "P-move at position {j} has no earlier justifier"
                    )))
                }
            }
        }
    }
    out.reverse();
    Ok(out)
}

/// The subsequence of `s` at `indices` with pointers renumbered into it.
pub fn subsequence(s: &Play, indices: &[usize]) -> Result<Play> {
    let moves = indices
        .iter()
        .map(|&i| {
            let occ = s[i];
            let ptr = match occ.ptr {
                None => None,
                Some(p) => Some(indices.binary_search(&p).map_err(|_| {
                    Error::IllegalPlay(format!(
                        "justifier {p} of position {i} falls outside the view"
                    ))
                })?),
            };
            Ok(Occurrence { mv: occ.mv, ptr })
        })
        .collect::<Result<_>>()?;
    Ok(Play { moves })
}

pub fn pview(arena: &Arena, s: &Play) -> Result<Play> {
    subsequence(s, &pview_indices(arena, s, s.len())?)
}

pub fn oview(arena: &Arena, s: &Play) -> Result<Play> {
    subsequence(s, &oview_indices(arena, s, s.len())?)
}

/// Checks alternation, justification and visibility, reporting the first
/// violation.
pub fn check_legal(arena: &Arena, s: &Play) -> Result<()> {
    for (i, occ) in s.moves.iter().enumerate() {
        if occ.mv as usize >= arena.len() {
            return Err(Error::IllegalPlay(format!("move index {} out of range", occ.mv)));
        }
        let label = arena.label(occ.mv);
        if label.is_opponent() != (i % 2 == 0) {
            return Err(Error::IllegalPlay(format!(
                "position {i}: `{}` breaks O/P alternation",
                arena.id(occ.mv)
            )));
        }
        match occ.ptr {
            None => {
                if !arena.is_initial(occ.mv) {
                    return Err(Error::IllegalPlay(format!(
                        "position {i}: `{}` is not initial but has no justifier",
                        arena.id(occ.mv)
                    )));
                }
            }
            Some(j) => {
                if j >= i {
                    return Err(Error::IllegalPlay(format!(
                        "position {i}: pointer {j} does not point backwards"
                    )));
                }
                if arena.is_initial(occ.mv) {
                    return Err(Error::IllegalPlay(format!(
                        "position {i}: initial move `{}` has a justifier",
                        arena.id(occ.mv)
                    )));
                }
                if !arena.enables(s[j].mv, occ.mv) {
                    return Err(Error::IllegalPlay(format!(
                        "position {i}: `{}` does not enable `{}`",
                        arena.id(s[j].mv),
                        arena.id(occ.mv)
                    )));
                }
                let view = if label.is_player() {
                    pview_indices(arena, s, i)?
                } else {
                    oview_indices(arena, s, i)?
                };
                if view.binary_search(&j).is_err() {
                    return Err(Error::IllegalPlay(format!(
                        "position {i}: justifier {j} is not visible"
                    )));
                }
            }
        }
    }
    Ok(())
}

pub fn is_legal(arena: &Arena, s: &Play) -> bool {
    check_legal(arena, s).is_ok()
}

/// Pending questions after `s`, oldest first, or `None` if some answer does
/// not address the most recent unanswered question.
pub fn pending_questions(arena: &Arena, s: &Play) -> Option<Vec<usize>> {
    let mut stack = Vec::new();
    for (i, occ) in s.moves.iter().enumerate() {
        if arena.label(occ.mv).is_question() {
            stack.push(i);
        } else if occ.ptr.is_some() && stack.last().copied() == occ.ptr {
            stack.pop();
        } else {
            return None;
        }
    }
    Some(stack)
}

pub fn is_well_bracketed(arena: &Arena, s: &Play) -> bool {
    pending_questions(arena, s).is_some()
}

/// Non-empty, well-bracketed and with every question answered.
pub fn is_complete(arena: &Arena, s: &Play) -> bool {
    !s.is_empty() && pending_questions(arena, s).is_some_and(|p| p.is_empty())
}

pub fn is_single_threaded(s: &Play) -> bool {
    s.is_empty() || s.moves.iter().filter(|o| o.ptr.is_none()).count() == 1
}

/// The occurrence `s[i]` with its pointer renumbered relative to `view`.
fn relative(s: &Play, i: usize, view: &[usize]) -> (MoveIdx, Option<usize>) {
    let occ = s[i];
    let ptr = occ
        .ptr
        .map(|p| view.binary_search(&p).unwrap_or(usize::MAX));
    (occ.mv, ptr)
}

fn innocent_by(
    arena: &Arena,
    s: &Play,
    opponent: bool,
    indices: fn(&Arena, &Play, usize) -> Result<Vec<usize>>,
) -> bool {
    let mut seen: HashMap<Play, (MoveIdx, Option<usize>)> = HashMap::new();
    for i in 0..s.len() {
        if arena.label(s[i].mv).is_opponent() != opponent {
            continue;
        }
        let Ok(idx) = indices(arena, s, i) else {
            return false;
        };
        let Ok(view) = subsequence(s, &idx) else {
            return false;
        };
        let here = relative(s, i, &idx);
        if let Some(prev) = seen.insert(view, here) {
            if prev != here {
                return false;
            }
        }
    }
    true
}

/// O-moves are determined by the O-view they follow, pointers included.
pub fn is_o_innocent(arena: &Arena, s: &Play) -> bool {
    innocent_by(arena, s, true, oview_indices)
}

/// P-moves are determined by the P-view they follow, pointers included.
pub fn is_p_innocent(arena: &Arena, s: &Play) -> bool {
    innocent_by(arena, s, false, pview_indices)
}

/// `q_Σ · s` in `arena => Σ`: the formerly initial moves of `s` are
/// re-justified by `q_Σ`. Move indices of `arena` are unchanged in the test
/// arena and `q_Σ` sits at index `arena.len()`.
pub fn lift_to_test(arena: &Arena, s: &Play) -> Result<Play> {
    if !is_single_threaded(s) {
        return Err(Error::IllegalPlay(
            "only single-threaded plays can be lifted to a test".into(),
        ));
    }
    let q_sigma = arena.len() as MoveIdx;
    let mut moves = Vec::with_capacity(s.len() + 1);
    moves.push(Occurrence::root(q_sigma));
    moves.extend(s.moves.iter().map(|o| Occurrence {
        mv: o.mv,
        ptr: Some(o.ptr.map_or(0, |p| p + 1)),
    }));
    Ok(Play { moves })
}

/// Inverse of [`lift_to_test`] on plays that stay inside `arena` after `q_Σ`.
pub fn lower_from_test(arena: &Arena, t: &Play) -> Result<Play> {
    let q_sigma = arena.len() as MoveIdx;
    match t.moves.first() {
        Some(o) if o.mv == q_sigma && o.ptr.is_none() => {}
        _ => return Err(Error::IllegalPlay("test play must start with q_Σ".into())),
    }
    let moves = t.moves[1..]
        .iter()
        .map(|o| {
            if o.mv >= q_sigma {
                return Err(Error::IllegalPlay("test play leaves the tested arena".into()));
            }
            let ptr = match o.ptr {
                Some(0) => None,
                Some(p) => Some(p - 1),
                None => return Err(Error::IllegalPlay("unjustified move after q_Σ".into())),
            };
            Ok(Occurrence { mv: o.mv, ptr })
        })
        .collect::<Result<_>>()?;
    Ok(Play { moves })
}
