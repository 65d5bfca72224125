//! Bound-relative equivalence verdicts.
//!
//! [`obs_equiv`] compares observations directly. [`brute_force_leq_ib`] is the
//! independent route: it runs every test `α_S` for every enumerable
//! O-deterministic set `S`. [`check_category_laws`] checks identity,
//! associativity and congruence of composition at the level of observations.

use std::sync::Arc;

use rayon::prelude::*;

use crate::arena::Arena;
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::observation::{alpha, enumerate_odet_sets, obs, run_alpha, ODetSet, Verdict};
use crate::strategy::builtin::{self, AddOrder};
use crate::strategy::{compose, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivVerdict {
    EquivAtBounds,
    Inequiv,
}

impl EquivVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            EquivVerdict::EquivAtBounds => "EQUIV_AT_BOUNDS",
            EquivVerdict::Inequiv => "INEQUIV",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EquivReport {
    pub verdict: EquivVerdict,
    pub bounds: Bounds,
    pub arena: Arc<Arena>,
    /// The smallest set in the symmetric difference of the observations.
    pub witness: Option<ODetSet>,
    /// Whether the witness comes from the first strategy's observation.
    pub witness_in_first: bool,
    pub bound_exceeded_count: usize,
}

fn same_arena(s1: &Strategy, s2: &Strategy) -> Result<Arc<Arena>> {
    if **s1.arena() != **s2.arena() {
        return Err(Error::ArenaMismatch(format!(
            "{} and {} live on different arenas",
            s1.name(),
            s2.name()
        )));
    }
    Ok(s1.arena().clone())
}

fn minimal<'a>(sets: impl Iterator<Item = &'a ODetSet>) -> Option<&'a ODetSet> {
    sets.min_by(|a, b| (a.total_moves(), *a).cmp(&(b.total_moves(), *b)))
}

/// Compares `obs(s1)` and `obs(s2)` at `bounds`.
pub fn obs_equiv(s1: &Strategy, s2: &Strategy, bounds: &Bounds) -> Result<EquivReport> {
    let arena = same_arena(s1, s2)?;
    let (o1, o2) = rayon::join(|| obs(s1, bounds), || obs(s2, bounds));
    let (o1, o2) = (o1?, o2?);
    let only1 = minimal(o1.value.sets().difference(o2.value.sets()));
    let only2 = minimal(o2.value.sets().difference(o1.value.sets()));
    let (witness, in_first) = match (only1, only2) {
        (Some(a), Some(b)) if (b.total_moves(), b) < (a.total_moves(), a) => (Some(b), false),
        (Some(a), _) => (Some(a), true),
        (None, b) => (b, false),
    };
    Ok(EquivReport {
        verdict: if witness.is_some() {
            EquivVerdict::Inequiv
        } else {
            EquivVerdict::EquivAtBounds
        },
        bounds: *bounds,
        arena,
        witness: witness.cloned(),
        witness_in_first: in_first,
        bound_exceeded_count: o1.bound_exceeded + o2.bound_exceeded,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    HoldsAtBounds,
    Fails,
}

impl OracleVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleVerdict::HoldsAtBounds => "HOLDS_AT_BOUNDS",
            OracleVerdict::Fails => "FAILS",
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub verdict: OracleVerdict,
    pub bounds: Bounds,
    pub arena: Arc<Arena>,
    /// The first set, in enumeration order, passed by `s1` and failed by `s2`.
    pub witness: Option<ODetSet>,
    /// Number of sets enumerated.
    pub tests: usize,
    /// Tests where either side hit the bound; they neither confirm nor refute.
    pub bound_exceeded_count: usize,
}

/// `s1 ≤ s2` against every test `α_S` with views of length at most
/// `max_view_len`.
pub fn brute_force_leq_ib(s1: &Strategy, s2: &Strategy, bounds: &Bounds) -> Result<OracleReport> {
    let arena = same_arena(s1, s2)?;
    let sets = enumerate_odet_sets(&arena, bounds.max_view_len)?;
    leq_ib_over(s1, s2, &sets, bounds)
}

/// [`brute_force_leq_ib`] over a caller-supplied, already ordered family of
/// sets.
pub fn leq_ib_over(s1: &Strategy, s2: &Strategy, sets: &[ODetSet], bounds: &Bounds) -> Result<OracleReport> {
    let arena = same_arena(s1, s2)?;
    let outcomes: Vec<(bool, bool)> = sets
        .par_iter()
        .map(|set| -> Result<(bool, bool)> {
            let test = alpha(&arena, set)?;
            let v1 = run_alpha(s1, &test, bounds)?;
            if v1 != Verdict::Top {
                return Ok((false, v1 == Verdict::BoundExceeded));
            }
            let v2 = run_alpha(s2, &test, bounds)?;
            Ok((v2 == Verdict::Bot, v2 == Verdict::BoundExceeded))
        })
        .collect::<Result<_>>()?;
    let failing = outcomes.iter().position(|&(fails, _)| fails);
    Ok(OracleReport {
        verdict: if failing.is_some() {
            OracleVerdict::Fails
        } else {
            OracleVerdict::HoldsAtBounds
        },
        bounds: *bounds,
        arena,
        witness: failing.map(|i| sets[i].clone()),
        tests: sets.len(),
        bound_exceeded_count: outcomes.iter().filter(|o| o.1).count(),
    })
}

/// One law instance.
#[derive(Debug, Clone)]
pub struct LawCheck {
    pub law: &'static str,
    pub subject: String,
    pub passed: bool,
    pub witness: Option<ODetSet>,
    pub arena: Arc<Arena>,
}

#[derive(Debug, Clone)]
pub struct LawReport {
    pub bounds: Bounds,
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Strategies to run the law checks on.
pub struct LawCorpus {
    /// Checked against copycat on both sides.
    pub identities: Vec<Strategy>,
    /// Composable triples `(σ, τ, υ)` for associativity, each with an
    /// optional strategy the composite must also match.
    pub triples: Vec<(Strategy, Strategy, Strategy, Option<Strategy>)>,
    /// `(σ1, σ2, τ)` with `obs(σ1) = obs(σ2)`.
    pub congruences: Vec<(Strategy, Strategy, Strategy)>,
}

impl LawCorpus {
    pub fn builtin(max_nat: u32) -> LawCorpus {
        let add_lr = builtin::add(max_nat, AddOrder::LeftToRight);
        let add_rl = builtin::add(max_nat, AddOrder::RightToLeft);
        let add_llr = builtin::add(max_nat, AddOrder::LeftTwice);
        let apply = builtin::apply_to_pair(max_nat, 1, 2);
        LawCorpus {
            identities: vec![
                add_lr.clone(),
                add_rl.clone(),
                builtin::succ(max_nat),
                builtin::numeral(max_nat, 2),
                builtin::top(),
            ],
            triples: vec![
                (
                    builtin::numeral(max_nat, 2),
                    builtin::succ(max_nat),
                    builtin::succ(max_nat),
                    Some(builtin::numeral(max_nat, 4)),
                ),
                (
                    builtin::succ(max_nat),
                    builtin::pred(max_nat),
                    builtin::succ(max_nat),
                    None,
                ),
            ],
            congruences: vec![
                (add_lr.clone(), add_rl, apply.clone()),
                (add_lr, add_llr, apply),
            ],
        }
    }
}

fn obs_check(law: &'static str, subject: String, a: &Strategy, b: &Strategy, bounds: &Bounds) -> Result<LawCheck> {
    let r = obs_equiv(a, b, bounds)?;
    Ok(LawCheck {
        law,
        subject,
        passed: r.verdict == EquivVerdict::EquivAtBounds,
        witness: r.witness,
        arena: r.arena,
    })
}

/// Checks the identity, associativity and congruence laws on `corpus`.
pub fn check_category_laws(corpus: &LawCorpus, bounds: &Bounds) -> Result<LawReport> {
    let mut checks = Vec::new();
    for s in &corpus.identities {
        let (dom, cod) = match s.arena().as_arrow() {
            Some((a, b)) => (Some(a.clone()), b.clone()),
            None => (None, s.arena().clone()),
        };
        if let Some(a) = dom {
            let left = compose(&builtin::copycat(a), s, bounds)?;
            checks.push(obs_check("left identity", s.name().to_string(), &left, s, bounds)?);
        }
        let right = compose(s, &builtin::copycat(cod), bounds)?;
        checks.push(obs_check("right identity", s.name().to_string(), &right, s, bounds)?);
    }
    for (s, t, u, expected) in &corpus.triples {
        let subject = format!("{}, {}, {}", s.name(), t.name(), u.name());
        let lhs = compose(&compose(s, t, bounds)?, u, bounds)?;
        let rhs = compose(s, &compose(t, u, bounds)?, bounds)?;
        checks.push(obs_check("associativity", subject.clone(), &lhs, &rhs, bounds)?);
        if let Some(e) = expected {
            checks.push(obs_check("composite value", subject, &lhs, e, bounds)?);
        }
    }
    for (s1, s2, t) in &corpus.congruences {
        let subject = format!("{}, {} in {}", s1.name(), s2.name(), t.name());
        let premise = obs_equiv(s1, s2, bounds)?;
        if premise.verdict != EquivVerdict::EquivAtBounds {
            checks.push(LawCheck {
                law: "congruence premise",
                subject,
                passed: false,
                witness: premise.witness,
                arena: premise.arena,
            });
            continue;
        }
        let c1 = compose(s1, t, bounds)?;
        let c2 = compose(s2, t, bounds)?;
        checks.push(obs_check("congruence", subject, &c1, &c2, bounds)?);
    }
    Ok(LawReport {
        bounds: *bounds,
        checks,
    })
}
