//! Simple types, with `fix : (T -> T) -> T`.

use super::syntax::{Term, TermKind, Type};
use super::PcfError;

fn mismatch(t: &Term, msg: String) -> PcfError {
    PcfError::Type {
        line: t.span.line,
        col: t.span.col,
        msg,
    }
}

fn expect_nat(t: &Term, ctx: &mut Vec<(String, Type)>, what: &str) -> Result<(), PcfError> {
    match typecheck(t, ctx)? {
        Type::Nat => Ok(()),
        other => Err(mismatch(t, format!("{what} must be nat, found {other} in `{t}`"))),
    }
}

/// The type of `t` in `ctx`; later entries shadow earlier ones.
pub fn typecheck(t: &Term, ctx: &mut Vec<(String, Type)>) -> Result<Type, PcfError> {
    match &t.kind {
        TermKind::Num(_) | TermKind::Omega => Ok(Type::Nat),
        TermKind::Var(x) => ctx
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, ty)| ty.clone())
            .ok_or_else(|| mismatch(t, format!("unbound variable `{x}`"))),
        TermKind::Lam(x, ty, body) => {
            ctx.push((x.clone(), ty.clone()));
            let res = typecheck(body, ctx);
            ctx.pop();
            Ok(Type::arrow(ty.clone(), res?))
        }
        TermKind::App(m, n) => {
            let fty = typecheck(m, ctx)?;
            let aty = typecheck(n, ctx)?;
            match fty {
                Type::Arrow(s, r) if *s == aty => Ok(*r),
                Type::Arrow(s, _) => Err(mismatch(n, format!("argument `{n}` has type {aty}, expected {s}"))),
                Type::Nat => Err(mismatch(m, format!("`{m}` has type nat and cannot be applied"))),
            }
        }
        TermKind::Succ(m) => expect_nat(m, ctx, "the argument of succ").map(|_| Type::Nat),
        TermKind::Pred(m) => expect_nat(m, ctx, "the argument of pred").map(|_| Type::Nat),
        TermKind::Add(m, n, _) => {
            expect_nat(m, ctx, "an operand of +")?;
            expect_nat(n, ctx, "an operand of +")?;
            Ok(Type::Nat)
        }
        TermKind::Ifz(c, a, b) => {
            expect_nat(c, ctx, "the condition of ifz")?;
            let ta = typecheck(a, ctx)?;
            let tb = typecheck(b, ctx)?;
            if ta != tb {
                return Err(mismatch(t, format!("branches of ifz differ: {ta} and {tb}")));
            }
            Ok(ta)
        }
        TermKind::Fix(m) => match typecheck(m, ctx)? {
            Type::Arrow(a, b) if a == b => Ok(*a),
            other => Err(mismatch(m, format!("fix needs a function of type T -> T, found {other}"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcf::parse;

    fn ty(src: &str) -> Result<Type, PcfError> {
        typecheck(&parse(src).unwrap().term, &mut Vec::new())
    }

    #[test]
    fn examples() {
        assert_eq!(ty("succ 3").unwrap(), Type::Nat);
        assert_eq!(ty("fun x: nat -> x").unwrap(), Type::arrow(Type::Nat, Type::Nat));
        assert!(matches!(
            ty("ifz 0 then 1 else (fun x: nat -> x)"),
            Err(PcfError::Type { .. })
        ));
        assert_eq!(ty("fix (fun x: nat -> x)").unwrap(), Type::Nat);
        assert_eq!(
            ty("fix (fun f: nat -> nat -> fun n: nat -> ifz n then 0 else succ (f (pred n)))").unwrap(),
            Type::arrow(Type::Nat, Type::Nat)
        );
    }

    #[test]
    fn errors() {
        assert!(ty("y").is_err());
        assert!(ty("3 4").is_err());
        assert!(ty("succ (fun x: nat -> x)").is_err());
        assert!(ty("fix 3").is_err());
        assert!(ty("(fun f: nat -> nat -> f 1) 2").is_err());
    }
}
