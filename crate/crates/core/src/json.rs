//! Canonical JSON documents for arenas, plays, tabulations, O-view sets,
//! observations and equivalence reports.
//!
//! Moves are written by their path-tagged ids and root pointers as `-1`.
//! Top-level documents may name their arena either inline or by a
//! descriptor string such as `"N5 -> N5"`; nested plays inherit it.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arena::{Arena, MoveIdx, MoveLabel};
use crate::bounds::Bounds;
use crate::equiv::{EquivReport, OracleReport};
use crate::error::{Error, Result};
use crate::observation::{ODetSet, Observation, ObservationalStrategy};
use crate::play::{Occurrence, Play};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveJson {
    pub id: String,
    pub label: MoveLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArenaJson {
    pub moves: Vec<MoveJson>,
    pub enabling: Vec<(String, String)>,
    pub initials: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArenaRef {
    Descriptor(String),
    Inline(ArenaJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccJson {
    pub m: String,
    pub ptr: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arena: Option<ArenaRef>,
    pub moves: Vec<OccJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TabEntry {
    pub view: PlayJson,
    pub response: OccJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ODetSetJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arena: Option<ArenaRef>,
    pub initial: Option<String>,
    pub views: Vec<PlayJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arena: Option<ArenaRef>,
    pub bounds: Option<Bounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_exceeded_count: Option<usize>,
    pub sets: Vec<ODetSetJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub verdict: String,
    pub bounds: Bounds,
    pub witness: Option<ODetSetJson>,
    pub bound_exceeded_count: usize,
}

/// Result of running the test oracle in both directions next to `obs_equiv`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub verdict: String,
    pub witness: Option<ODetSetJson>,
    pub tests: usize,
    pub bound_exceeded_count: usize,
}

pub fn arena_to_json(arena: &Arena) -> ArenaJson {
    let mut enabling = Vec::new();
    for m in arena.moves() {
        for &n in arena.enabled_by(m) {
            enabling.push((arena.id(m).to_string(), arena.id(n).to_string()));
        }
    }
    ArenaJson {
        moves: arena
            .moves()
            .map(|m| MoveJson {
                id: arena.id(m).to_string(),
                label: arena.label(m),
            })
            .collect(),
        enabling,
        initials: arena.initials().map(|m| arena.id(m).to_string()).collect(),
    }
}

pub fn arena_from_json(doc: &ArenaJson) -> Result<Arc<Arena>> {
    let moves: Vec<(String, MoveLabel)> = doc.moves.iter().map(|m| (m.id.clone(), m.label)).collect();
    Arena::from_parts(moves, &doc.enabling, &doc.initials)
}

/// A descriptor when the arena has one, the full move list otherwise.
pub fn arena_ref(arena: &Arena) -> ArenaRef {
    arena
        .descriptor()
        .map_or_else(|| ArenaRef::Inline(arena_to_json(arena)), ArenaRef::Descriptor)
}

pub fn resolve_arena(r: &ArenaRef) -> Result<Arc<Arena>> {
    match r {
        ArenaRef::Descriptor(d) => Arena::from_descriptor(d),
        ArenaRef::Inline(doc) => arena_from_json(doc),
    }
}

/// Picks the arena of a document: the one it names, checked against the one
/// the caller expects when both are present.
fn pick_arena(named: Option<&ArenaRef>, expected: Option<&Arc<Arena>>) -> Result<Arc<Arena>> {
    match (named.map(resolve_arena).transpose()?, expected) {
        (Some(a), Some(e)) if *a != **e => Err(Error::ArenaMismatch(
            "document arena differs from the expected arena".into(),
        )),
        (Some(a), _) => Ok(a),
        (None, Some(e)) => Ok(e.clone()),
        (None, None) => Err(Error::Format("document does not name its arena".into())),
    }
}

pub fn occ_to_json(arena: &Arena, o: Occurrence) -> OccJson {
    OccJson {
        m: arena.id(o.mv).to_string(),
        ptr: o.ptr.map_or(-1, |p| p as i64),
    }
}

pub fn occ_from_json(arena: &Arena, o: &OccJson) -> Result<Occurrence> {
    let mv: MoveIdx = arena
        .lookup(&o.m)
        .ok_or_else(|| Error::UnknownMove(o.m.clone()))?;
    let ptr = match o.ptr {
        -1 => None,
        p if p >= 0 => Some(p as usize),
        p => return Err(Error::Format(format!("bad pointer {p}"))),
    };
    Ok(Occurrence { mv, ptr })
}

pub fn play_to_json(arena: &Arena, s: &Play, with_arena: bool) -> PlayJson {
    PlayJson {
        arena: with_arena.then(|| arena_ref(arena)),
        moves: s.moves().iter().map(|&o| occ_to_json(arena, o)).collect(),
    }
}

/// Reads a play; the result is a justified sequence, not yet checked for
/// legality.
pub fn play_from_json(doc: &PlayJson, expected: Option<&Arc<Arena>>) -> Result<(Arc<Arena>, Play)> {
    let arena = pick_arena(doc.arena.as_ref(), expected)?;
    let moves = doc
        .moves
        .iter()
        .map(|o| occ_from_json(&arena, o))
        .collect::<Result<Vec<_>>>()?;
    Ok((arena, Play::from_moves(moves)))
}

/// The tabulation of a view function, ordered by serialized view.
pub fn tabulation_to_json(arena: &Arena, table: &BTreeMap<Play, Occurrence>) -> Vec<TabEntry> {
    let mut entries: Vec<(String, TabEntry)> = table
        .iter()
        .map(|(v, &r)| {
            let view = play_to_json(arena, v, false);
            let key = serde_json::to_string(&view).expect("plain data");
            (
                key,
                TabEntry {
                    view,
                    response: occ_to_json(arena, r),
                },
            )
        })
        .collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    entries.into_iter().map(|(_, e)| e).collect()
}

pub fn odet_to_json(arena: &Arena, s: &ODetSet, with_arena: bool) -> ODetSetJson {
    ODetSetJson {
        arena: with_arena.then(|| arena_ref(arena)),
        initial: s.initial().map(|m| arena.id(m).to_string()),
        views: s.views().iter().map(|v| play_to_json(arena, v, false)).collect(),
    }
}

/// Reads, validates and closes an O-view set. The flag reports whether
/// closing under prefixes added views.
pub fn odet_from_json(doc: &ODetSetJson, expected: Option<&Arc<Arena>>) -> Result<(Arc<Arena>, ODetSet, bool)> {
    let arena = pick_arena(doc.arena.as_ref(), expected)?;
    let views = doc
        .views
        .iter()
        .map(|v| play_from_json(v, Some(&arena)).map(|(_, p)| p))
        .collect::<Result<Vec<_>>>()?;
    let (set, added) = ODetSet::close(&arena, views)?;
    if let Some(id) = &doc.initial {
        let m = arena.lookup(id).ok_or_else(|| Error::UnknownMove(id.clone()))?;
        if set.initial().is_some_and(|i| i != m) {
            return Err(Error::IllFormedSet(format!("views do not start with `{id}`")));
        }
    }
    Ok((arena, set, added))
}

pub fn observational_to_json(x: &ObservationalStrategy, bounds: Option<&Bounds>) -> ObservationJson {
    let arena = x.arena();
    ObservationJson {
        arena: Some(arena_ref(arena)),
        bounds: bounds.copied(),
        bound_exceeded_count: None,
        sets: x.sets().iter().map(|s| odet_to_json(arena, s, false)).collect(),
    }
}

pub fn observation_to_json(o: &Observation) -> ObservationJson {
    ObservationJson {
        bound_exceeded_count: Some(o.bound_exceeded),
        ..observational_to_json(&o.value, Some(&o.bounds))
    }
}

pub fn observational_from_json(
    doc: &ObservationJson,
    expected: Option<&Arc<Arena>>,
) -> Result<ObservationalStrategy> {
    let arena = pick_arena(doc.arena.as_ref(), expected)?;
    let sets = doc
        .sets
        .iter()
        .map(|s| odet_from_json(s, Some(&arena)).map(|(_, set, _)| set))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(ObservationalStrategy::new(arena, sets))
}

pub fn report_to_json(r: &EquivReport) -> ReportJson {
    ReportJson {
        verdict: r.verdict.as_str().to_string(),
        bounds: r.bounds,
        witness: r.witness.as_ref().map(|w| odet_to_json(&r.arena, w, true)),
        bound_exceeded_count: r.bound_exceeded_count,
    }
}

pub fn oracle_to_json(r: &OracleReport) -> OracleJson {
    OracleJson {
        verdict: r.verdict.as_str().to_string(),
        witness: r.witness.as_ref().map(|w| odet_to_json(&r.arena, w, true)),
        tests: r.tests,
        bound_exceeded_count: r.bound_exceeded_count,
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data");
    s.push('\n');
    s
}
