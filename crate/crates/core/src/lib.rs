//! A bounded game-semantics engine for PCF.
//!
//! Terms denote innocent strategies over HO arenas. A strategy is summarised
//! by its observation `obs(σ)`, a set of O-deterministic sets of O-views, and
//! two strategies are observationally equivalent exactly when their
//! observations coincide. Every enumeration is made finite by [`Bounds`], so
//! all verdicts are relative to the bounds they were computed at.

pub mod arena;
pub mod bounds;
pub mod equiv;
pub mod error;
pub mod json;
pub mod observation;
pub mod pcf;
pub mod play;
pub mod strategy;

pub use arena::{Arena, MoveIdx, MoveLabel};
pub use bounds::Bounds;
pub use equiv::{
    brute_force_leq_ib, check_category_laws, obs_equiv, EquivReport, EquivVerdict, LawCorpus, LawReport,
    OracleReport, OracleVerdict,
};
pub use error::{Error, Result};
pub use observation::{
    alpha, enumerate_odet_sets, is_o_deterministic, is_observational, leq_os, obs, ovw, run_test,
    ODetSet, Observation, ObservationalStrategy, Verdict,
};
pub use pcf::{PcfError, Term, Type};
pub use play::{Occurrence, Play};
pub use strategy::{compose, Response, Strategy, ViewFunction};
