//! Compositional denotation into innocent strategies.
//!
//! A term `x1:S1, ..., xn:Sn ⊢ M : T` denotes a strategy on `Γ => T` with
//! `Γ = ((I * S1) * ...) * Sn`. Because product and arrow lay out their
//! components side by side, abstraction is a retagging and closed terms can
//! be read directly on the arena of their type.

use std::sync::Arc;

use super::syntax::{parse, Program, Term, TermKind, Type};
use super::types::typecheck;
use crate::arena::{Arena, MoveIdx};
use crate::bounds::Bounds;
use crate::error::Result;
use crate::strategy::builtin;
use crate::strategy::{compose, pair, Strategy};

/// The arena of a type with numerals capped at `max_nat`.
pub fn arena_of(ty: &Type, max_nat: u32) -> Arc<Arena> {
    match ty {
        Type::Nat => Arena::nat(max_nat),
        Type::Arrow(a, b) => Arena::arrow(arena_of(a, max_nat), arena_of(b, max_nat)),
    }
}

struct Env {
    vars: Vec<(String, Type, MoveIdx)>,
    ctx: Arc<Arena>,
}

struct Denoter<'a> {
    bounds: &'a Bounds,
}

impl Denoter<'_> {
    fn ty(&self, t: &Term, env: &Env) -> Result<Type> {
        let mut ctx: Vec<(String, Type)> = env.vars.iter().map(|(x, t, _)| (x.clone(), t.clone())).collect();
        Ok(typecheck(t, &mut ctx)?)
    }

    fn nat(&self) -> Arc<Arena> {
        Arena::nat(self.bounds.max_nat)
    }

    fn then(&self, m: &Strategy, f: &Strategy) -> Result<Strategy> {
        compose(m, f, self.bounds)
    }

    fn apply(&self, m: &Strategy, n: &Strategy, s: &Type, t: &Type) -> Result<Strategy> {
        let max = self.bounds.max_nat;
        self.then(&pair(m, n)?, &builtin::eval(arena_of(s, max), arena_of(t, max)))
    }

    fn go(&self, t: &Term, env: &mut Env) -> Result<Strategy> {
        let max = self.bounds.max_nat;
        Ok(match &t.kind {
            TermKind::Num(n) => builtin::constant(env.ctx.clone(), max, *n),
            TermKind::Omega => builtin::omega(Arena::arrow(env.ctx.clone(), self.nat())),
            TermKind::Var(x) => {
                let (_, ty, offset) = env
                    .vars
                    .iter()
                    .rev()
                    .find(|(y, _, _)| y == x)
                    .expect("typechecked terms are well scoped");
                builtin::variable(env.ctx.clone(), *offset, arena_of(ty, max), x)
            }
            TermKind::Succ(m) => self.then(&self.go(m, env)?, &builtin::succ(max))?,
            TermKind::Pred(m) => self.then(&self.go(m, env)?, &builtin::pred(max))?,
            TermKind::Add(m, n, order) => {
                let args = pair(&self.go(m, env)?, &self.go(n, env)?)?;
                self.then(&args, &builtin::add(max, *order))?
            }
            TermKind::Ifz(c, a, b) => {
                let ty = self.ty(a, env)?;
                let test_then = pair(&self.go(c, env)?, &self.go(a, env)?)?;
                let args = pair(&test_then, &self.go(b, env)?)?;
                self.then(&args, &builtin::cond(max, arena_of(&ty, max)))?
            }
            TermKind::Lam(x, ty, body) => {
                let outer = env.ctx.clone();
                let offset = outer.len() as MoveIdx;
                env.ctx = Arena::product(outer.clone(), arena_of(ty, max));
                env.vars.push((x.clone(), ty.clone(), offset));
                let inner = self.go(body, env);
                env.vars.pop();
                env.ctx = outer.clone();
                let inner = inner?;
                let (_, cod) = inner.arena().as_arrow().expect("denotations live on arrows");
                let arrow = Arena::arrow(arena_of(ty, max), cod.clone());
                inner
                    .retag(Arena::arrow(outer, arrow))?
                    .renamed(format!("fun {x}"))
            }
            TermKind::App(m, n) => {
                let Type::Arrow(s, r) = self.ty(m, env)? else {
                    unreachable!("typechecked application")
                };
                self.apply(&self.go(m, env)?, &self.go(n, env)?, &s, &r)?
            }
            TermKind::Fix(m) => {
                let ty = self.ty(t, env)?;
                let f = self.go(m, env)?;
                let mut approx = builtin::omega(Arena::arrow(env.ctx.clone(), arena_of(&ty, max)));
                for _ in 0..self.bounds.fix_depth {
                    approx = self.apply(&f, &approx, &ty, &ty)?;
                }
                approx.renamed(format!("fix^{}", self.bounds.fix_depth))
            }
        })
    }
}

/// The strategy of a closed term on the arena of its type.
pub fn denote(term: &Term, bounds: &Bounds) -> Result<Strategy> {
    let ty = typecheck(term, &mut Vec::new())?;
    let mut env = Env {
        vars: Vec::new(),
        ctx: Arena::empty(),
    };
    let s = Denoter { bounds }.go(term, &mut env)?;
    s.retag(arena_of(&ty, bounds.max_nat))
}

/// Parses, typechecks and denotes a source file.
pub fn denote_source(src: &str, bounds: &Bounds) -> Result<(Program, Type, Strategy)> {
    let program = parse(src)?;
    let ty = typecheck(&program.term, &mut Vec::new())?;
    let s = denote(&program.term, bounds)?;
    Ok((program, ty, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observation::obs;
    use crate::play::{Occurrence, Play};
    use crate::strategy::builtin::AddOrder;
    use crate::strategy::{traces, Response};

    fn b() -> Bounds {
        Bounds::new(3, 8, 6, 3).unwrap()
    }

    fn den(src: &str) -> Strategy {
        denote_source(src, &b()).unwrap().2
    }

    fn first_answer(s: &Strategy) -> Response {
        s.respond(&Play::from_moves(vec![Occurrence::root(0)])).unwrap()
    }

    #[test]
    fn numerals() {
        assert_eq!(first_answer(&den("3")), Response::Move(Occurrence::at(4, 0)));
        assert_eq!(first_answer(&den("succ 1")), Response::Move(Occurrence::at(3, 0)));
        assert_eq!(first_answer(&den("pred 0")), Response::Move(Occurrence::at(1, 0)));
        assert_eq!(first_answer(&den("2 + 1")), Response::Move(Occurrence::at(4, 0)));
        assert_eq!(first_answer(&den("ifz pred 1 then 2 else 3")), Response::Move(Occurrence::at(3, 0)));
        assert_eq!(first_answer(&den("(fun x: nat -> succ x) 2")), Response::Move(Occurrence::at(4, 0)));
        assert_eq!(first_answer(&den("omega")), Response::Stuck);
        assert_eq!(first_answer(&den("fix (fun x: nat -> x)")), Response::Stuck);
    }

    #[test]
    fn higher_order_application() {
        let s = den("(fun f: nat -> nat -> f (f 1)) (fun x: nat -> succ x)");
        assert_eq!(first_answer(&s), Response::Move(Occurrence::at(4, 0)));
        let s = den("(fix (fun f: nat -> nat -> fun n: nat -> ifz n then 0 else succ (succ (f (pred n))))) 1");
        assert_eq!(first_answer(&s), Response::Move(Occurrence::at(3, 0)));
    }

    #[test]
    fn plus_matches_builtin_add() {
        let bounds = b();
        for (src, order) in [
            ("fun x: nat -> fun y: nat -> x + y", AddOrder::LeftToRight),
            ("#pragma plus_rl\nfun x: nat -> fun y: nat -> x + y", AddOrder::RightToLeft),
        ] {
            let s = den(src);
            let add = builtin::add(bounds.max_nat, order);
            assert!(s.arena().same_layout(add.arena()));
            let curried = add.retag(s.arena().clone()).unwrap();
            assert_eq!(
                traces(&s, &bounds, false, false).unwrap(),
                traces(&curried, &bounds, false, false).unwrap()
            );
        }
    }

    #[test]
    fn beta_probe() {
        let bounds = b();
        assert_eq!(
            obs(&den("(fun x: nat -> succ x) 2"), &bounds).unwrap(),
            obs(&den("succ 2"), &bounds).unwrap()
        );
    }

    #[test]
    fn diverging_fix_has_empty_obs() {
        assert!(obs(&den("fix (fun x: nat -> x)"), &b()).unwrap().value.is_empty());
    }
}
