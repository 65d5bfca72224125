//! Concrete strategies: the observation-game strategies, numerals and the
//! first-order primitives of PCF, the addition strategies with their various
//! interrogation orders, and the copycat family.
//!
//! Flat naturals are laid out as `q` at index 0 and numeral `k` at `k + 1`.

use std::sync::Arc;

use super::{CopyCat, FnView, Link, Strategy};
use crate::arena::{Arena, MoveIdx};
use crate::play::{Occurrence, Play};

/// Index block of a flat natural-number arena inside a larger arena.
#[derive(Debug, Clone, Copy)]
struct NatBlock {
    base: MoveIdx,
    max_nat: u32,
}

impl NatBlock {
    fn q(self) -> MoveIdx {
        self.base
    }

    fn num(self, k: u32) -> MoveIdx {
        self.base + 1 + k.min(self.max_nat)
    }

    /// The numeral carried by `mv`, if `mv` is an answer of this block.
    fn value(self, mv: MoveIdx) -> Option<u32> {
        (mv > self.base && mv <= self.base + 1 + self.max_nat).then(|| mv - self.base - 1)
    }
}

fn nat_len(max_nat: u32) -> MoveIdx {
    max_nat + 2
}

/// `⊤ = {ε, qa}` on Σ.
pub fn top() -> Strategy {
    let sigma = Arena::sigma();
    let q = Play::from_moves(vec![Occurrence::root(0)]);
    Strategy::from_table("top", sigma, [(q, Occurrence::at(1, 0))]).expect("single entry")
}

/// `⊥ = {ε}` on Σ.
pub fn bottom() -> Strategy {
    Strategy::bottom(Arena::sigma())
}

/// The never-responding strategy on any arena; the denotation of a diverging
/// term.
pub fn omega(arena: Arc<Arena>) -> Strategy {
    Strategy::bottom(arena).renamed("omega")
}

/// Answers the initial question with `n` (saturated at `max_nat`).
pub fn numeral(max_nat: u32, n: u32) -> Strategy {
    constant(Arena::empty(), max_nat, n).retag(Arena::nat(max_nat)).expect("same layout")
        .renamed(n.min(max_nat).to_string())
}

/// The constant `n` in context `ctx`, on `ctx => N`.
pub fn constant(ctx: Arc<Arena>, max_nat: u32, n: u32) -> Strategy {
    let out = NatBlock {
        base: ctx.len() as MoveIdx,
        max_nat,
    };
    let arena = Arena::arrow(ctx, Arena::nat(max_nat));
    Strategy::new(
        format!("const{}", n.min(max_nat)),
        FnView::new(arena, move |v: &Play| {
            (v.len() == 1).then(|| Occurrence::at(out.num(n), 0))
        }),
    )
}

fn unary(name: &str, max_nat: u32, f: impl Fn(u32) -> u32 + Send + Sync + 'static) -> Strategy {
    let arg = NatBlock { base: 0, max_nat };
    let out = NatBlock {
        base: nat_len(max_nat),
        max_nat,
    };
    let arena = Arena::arrow(Arena::nat(max_nat), Arena::nat(max_nat));
    Strategy::new(
        name,
        FnView::new(arena, move |v: &Play| match v.len() {
            1 => Some(Occurrence::at(arg.q(), 0)),
            3 => arg.value(v[2].mv).map(|m| Occurrence::at(out.num(f(m)), 0)),
            _ => None,
        }),
    )
}

/// Successor on `N => N`, saturating at `max_nat`.
pub fn succ(max_nat: u32) -> Strategy {
    unary("succ", max_nat, move |m| (m + 1).min(max_nat))
}

/// Predecessor on `N => N` with `pred 0 = 0`.
pub fn pred(max_nat: u32) -> Strategy {
    unary("pred", max_nat, |m| m.saturating_sub(1))
}

/// How an addition strategy interrogates its two arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AddOrder {
    LeftToRight,
    RightToLeft,
    /// Asks the left argument twice, then the right one.
    LeftTwice,
}

/// The game `(N * N) => N` used by the addition strategies.
pub fn binary_arena(max_nat: u32) -> Arc<Arena> {
    let n = Arena::nat(max_nat);
    Arena::arrow(Arena::product(n.clone(), n.clone()), n)
}

fn binary_blocks(max_nat: u32) -> (NatBlock, NatBlock, NatBlock) {
    let len = nat_len(max_nat);
    (
        NatBlock { base: 0, max_nat },
        NatBlock { base: len, max_nat },
        NatBlock {
            base: 2 * len,
            max_nat,
        },
    )
}

/// Addition on `(N * N) => N`, saturating at `max_nat`. Every question is
/// justified by the initial one and the final answer points at it too.
pub fn add(max_nat: u32, order: AddOrder) -> Strategy {
    let (l, r, out) = binary_blocks(max_nat);
    let name = match order {
        AddOrder::LeftToRight => "add_LR",
        AddOrder::RightToLeft => "add_RL",
        AddOrder::LeftTwice => "add_LLR",
    };
    let respond = move |v: &Play| -> Option<Occurrence> {
        let ask = |b: NatBlock| Some(Occurrence::at(b.q(), 0));
        let answer = |m: u32, n: u32| Some(Occurrence::at(out.num(m + n), 0));
        // (block asked, answer) pairs read off the view so far
        let read = |i: usize, b: NatBlock| {
            (v.len() > i + 1 && v[i].mv == b.q())
                .then(|| b.value(v[i + 1].mv))
                .flatten()
        };
        match (order, v.len()) {
            (_, 1) => match order {
                AddOrder::RightToLeft => ask(r),
                _ => ask(l),
            },
            (AddOrder::LeftToRight, 3) => read(1, l).and(ask(r)),
            (AddOrder::LeftToRight, 5) => answer(read(1, l)?, read(3, r)?),
            (AddOrder::RightToLeft, 3) => read(1, r).and(ask(l)),
            (AddOrder::RightToLeft, 5) => answer(read(3, l)?, read(1, r)?),
            (AddOrder::LeftTwice, 3) => read(1, l).and(ask(l)),
            (AddOrder::LeftTwice, 5) => read(3, l).and(ask(r)),
            (AddOrder::LeftTwice, 7) => answer(read(1, l)?, read(5, r)?),
            _ => None,
        }
    };
    Strategy::new(name, FnView::new(binary_arena(max_nat), respond))
}

/// `(N * N) => N` returning one argument after asking only that argument.
pub fn projection(max_nat: u32, right: bool) -> Strategy {
    let (l, r, out) = binary_blocks(max_nat);
    let b = if right { r } else { l };
    Strategy::new(
        if right { "proj_R" } else { "proj_L" },
        FnView::new(binary_arena(max_nat), move |v: &Play| match v.len() {
            1 => Some(Occurrence::at(b.q(), 0)),
            3 => b.value(v[2].mv).map(|m| Occurrence::at(out.num(m), 0)),
            _ => None,
        }),
    )
}

/// Copycat on `a => a`.
pub fn copycat(a: Arc<Arena>) -> Strategy {
    let len = a.len() as MoveIdx;
    let arena = Arena::arrow(a.clone(), a);
    Strategy::new(
        "id",
        CopyCat::new(
            arena,
            vec![Link {
                left: 0,
                right: len,
                len,
            }],
        ),
    )
}

/// The projection `ctx => ty` onto the component of `ctx` at `offset`.
pub fn variable(ctx: Arc<Arena>, offset: MoveIdx, ty: Arc<Arena>, name: &str) -> Strategy {
    let link = Link {
        left: offset,
        right: ctx.len() as MoveIdx,
        len: ty.len() as MoveIdx,
    };
    Strategy::new(name, CopyCat::new(Arena::arrow(ctx, ty), vec![link]))
}

/// Evaluation `(s => t) * s => t`.
pub fn eval(s: Arc<Arena>, t: Arc<Arena>) -> Strategy {
    let (sl, tl) = (s.len() as MoveIdx, t.len() as MoveIdx);
    let arena = Arena::arrow(
        Arena::product(Arena::arrow(s.clone(), t.clone()), s),
        t,
    );
    Strategy::new(
        "ev",
        CopyCat::new(
            arena,
            vec![
                Link {
                    left: 0,
                    right: sl + tl,
                    len: sl,
                },
                Link {
                    left: sl,
                    right: 2 * sl + tl,
                    len: tl,
                },
            ],
        ),
    )
}

/// Conditional on `((N * T) * T) => T`: asks the test, then behaves as copycat
/// between the result and the chosen branch.
pub fn cond(max_nat: u32, branch: Arc<Arena>) -> Strategy {
    let n = Arena::nat(max_nat);
    let test = NatBlock { base: 0, max_nat };
    let tl = branch.len() as MoveIdx;
    let then_base = nat_len(max_nat);
    let else_base = then_base + tl;
    let out_base = else_base + tl;
    let arena = Arena::arrow(
        Arena::product(Arena::product(n, branch.clone()), branch.clone()),
        branch,
    );
    let respond = move |v: &Play| -> Option<Occurrence> {
        if v.len() == 1 {
            return Some(Occurrence::at(test.q(), 0));
        }
        if v.len() < 3 || v[1].mv != test.q() {
            return None;
        }
        let chosen = if test.value(v[2].mv)? == 0 { then_base } else { else_base };
        let to_branch = |m: MoveIdx| (out_base..out_base + tl).contains(&m).then(|| m - out_base + chosen);
        let to_out = |m: MoveIdx| (chosen..chosen + tl).contains(&m).then(|| m - chosen + out_base);
        if v.len() == 3 {
            return Some(Occurrence::at(to_branch(v[0].mv)?, 0));
        }
        let k = v.len() - 1;
        let o = v[k];
        let copy = to_branch(o.mv).or_else(|| to_out(o.mv))?;
        let partner = match o.ptr? {
            0 => 3,
            3 => 0,
            j if j >= 4 => j ^ 1,
            _ => return None,
        };
        (partner < k).then(|| Occurrence::at(copy, partner))
    };
    Strategy::new("cond", FnView::new(arena, respond))
}

/// The context `((N * N) => N) => N` that feeds `x` and `y` to its argument
/// and returns the result.
pub fn apply_to_pair(max_nat: u32, x: u32, y: u32) -> Strategy {
    let (l, r, res) = binary_blocks(max_nat);
    let out = NatBlock {
        base: 3 * nat_len(max_nat),
        max_nat,
    };
    let arena = Arena::arrow(binary_arena(max_nat), Arena::nat(max_nat));
    Strategy::new(
        format!("apply({x},{y})"),
        FnView::new(arena, move |v: &Play| match v.len() {
            1 => Some(Occurrence::at(res.q(), 0)),
            3 if v[1].mv == res.q() => {
                let o = v[2].mv;
                if o == l.q() {
                    Some(Occurrence::at(l.num(x), 2))
                } else if o == r.q() {
                    Some(Occurrence::at(r.num(y), 2))
                } else {
                    res.value(o).map(|k| Occurrence::at(out.num(k), 0))
                }
            }
            _ => None,
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Bounds;
    use crate::play::{is_legal, is_p_innocent, is_well_bracketed};
    use crate::strategy::{compose, traces, Response};

    fn occ(arena: &Arena, id: &str, ptr: Option<usize>) -> Occurrence {
        Occurrence {
            mv: arena.lookup(id).unwrap(),
            ptr,
        }
    }

    #[test]
    fn top_and_bottom_on_sigma() {
        let q = Play::from_moves(vec![Occurrence::root(0)]);
        assert_eq!(bottom().respond(&q).unwrap(), Response::Stuck);
        assert_eq!(
            top().respond(&q).unwrap(),
            Response::Move(Occurrence::at(1, 0))
        );
    }

    #[test]
    fn sigma_has_exactly_two_strategies_up_to_traces() {
        let b = Bounds::new(1, 4, 4, 1).unwrap();
        let t = traces(&top(), &b, false, true).unwrap();
        let q = Play::from_moves(vec![Occurrence::root(0)]);
        assert_eq!(
            t.plays.into_iter().collect::<Vec<_>>(),
            vec![Play::empty(), q.extended(Occurrence::at(1, 0))]
        );
        let t = traces(&bottom(), &b, false, false).unwrap();
        assert_eq!(t.plays.into_iter().collect::<Vec<_>>(), vec![Play::empty()]);
    }

    #[test]
    fn add_lr_responses() {
        let add = add(3, AddOrder::LeftToRight);
        let a = add.arena().clone();
        let mut s = Play::from_ids(&a, &[("R.q", None)]).unwrap();
        assert_eq!(add.respond(&s).unwrap(), Response::Move(occ(&a, "L.L.q", Some(0))));
        s.push(occ(&a, "L.L.q", Some(0)));
        s.push(occ(&a, "L.L.1", Some(1)));
        assert_eq!(add.respond(&s).unwrap(), Response::Move(occ(&a, "L.R.q", Some(0))));
        s.push(occ(&a, "L.R.q", Some(0)));
        s.push(occ(&a, "L.R.2", Some(3)));
        assert_eq!(add.respond(&s).unwrap(), Response::Move(occ(&a, "R.3", Some(0))));
    }

    #[test]
    fn add_rl_order() {
        let add = add(3, AddOrder::RightToLeft);
        let a = add.arena().clone();
        let mut s = Play::from_ids(&a, &[("R.q", None)]).unwrap();
        let script = [("L.R.q", Some(0)), ("L.R.2", Some(1)), ("L.L.q", Some(0)), ("L.L.1", Some(3))];
        for (i, &(id, ptr)) in script.iter().enumerate() {
            if i % 2 == 0 {
                assert_eq!(add.respond(&s).unwrap(), Response::Move(occ(&a, id, ptr)));
            }
            s.push(occ(&a, id, ptr));
        }
        assert_eq!(add.respond(&s).unwrap(), Response::Move(occ(&a, "R.3", Some(0))));
    }

    #[test]
    fn add_saturates() {
        let add = add(2, AddOrder::LeftToRight);
        let a = add.arena().clone();
        let s = Play::from_ids(
            &a,
            &[("R.q", None), ("L.L.q", Some(0)), ("L.L.2", Some(1)), ("L.R.q", Some(0)), ("L.R.2", Some(3))],
        )
        .unwrap();
        assert_eq!(add.respond(&s).unwrap(), Response::Move(occ(&a, "R.2", Some(0))));
    }

    #[test]
    fn builtins_are_p_innocent_and_well_bracketed() {
        let b = Bounds::new(2, 8, 6, 2).unwrap();
        let n2 = Arena::nat(2);
        let corpus = [
            add(2, AddOrder::LeftToRight),
            add(2, AddOrder::RightToLeft),
            add(2, AddOrder::LeftTwice),
            projection(2, false),
            succ(2),
            pred(2),
            numeral(2, 1),
            copycat(n2.clone()),
            cond(2, n2.clone()),
            apply_to_pair(2, 1, 2),
        ];
        for s in &corpus {
            let t = traces(s, &b, false, true).unwrap();
            assert!(t.plays.len() > 1, "{} has no plays", s.name());
            for p in &t.plays {
                assert!(is_legal(s.arena(), p), "{}: {}", s.name(), p.render(s.arena()));
                assert!(is_p_innocent(s.arena(), p));
                assert!(is_well_bracketed(s.arena(), p), "{}: {}", s.name(), p.render(s.arena()));
            }
        }
    }

    #[test]
    fn add_lr_has_four_maximal_plays_at_nat_one() {
        let b = Bounds::new(1, 6, 4, 1).unwrap();
        let add = add(1, AddOrder::LeftToRight);
        let t = traces(&add, &b, false, true).unwrap();
        let complete: Vec<_> = t.plays.iter().filter(|p| p.len() == 6).collect();
        assert_eq!(complete.len(), 4);
        let a = add.arena();
        for p in complete {
            assert_eq!(a.id(p[1].mv), "L.L.q");
            assert_eq!(a.id(p[3].mv), "L.R.q");
        }
    }

    #[test]
    fn copycat_on_sigma() {
        let cc = copycat(Arena::sigma());
        let a = cc.arena().clone();
        let b = Bounds::new(1, 4, 4, 1).unwrap();
        let t = traces(&cc, &b, false, true).unwrap();
        let maximal = Play::from_ids(&a, &[("R.q", None), ("L.q", Some(0)), ("L.a", Some(1)), ("R.a", Some(0))]).unwrap();
        assert!(t.plays.contains(&maximal));
        assert_eq!(t.plays.iter().filter(|p| p.len() == 4).count(), 1);
    }

    #[test]
    fn copycat_on_nat_copies_answers() {
        let cc = copycat(Arena::nat(2));
        let a = cc.arena().clone();
        let s = Play::from_ids(&a, &[("R.q", None)]).unwrap();
        assert_eq!(cc.respond(&s).unwrap(), Response::Move(occ(&a, "L.q", Some(0))));
        let s = Play::from_ids(&a, &[("R.q", None), ("L.q", Some(0)), ("L.2", Some(1))]).unwrap();
        assert_eq!(cc.respond(&s).unwrap(), Response::Move(occ(&a, "R.2", Some(0))));
    }

    #[test]
    fn numeral_then_succ() {
        let b = Bounds::default();
        let four = compose(&numeral(5, 3), &succ(5), &b).unwrap();
        let q = Play::from_moves(vec![Occurrence::root(0)]);
        assert_eq!(four.respond(&q).unwrap(), Response::Move(Occurrence::at(5, 0)));
        assert_eq!(four.arena().id(5), "4");
    }
}
