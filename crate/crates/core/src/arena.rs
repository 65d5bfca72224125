//! Arenas: finite forests of moves labelled with a polarity and a kind.
//!
//! Every arena built here stores its moves in a fixed index order, and the
//! constructors are layout-preserving: `product(a, b)` and `arrow(a, b)` both
//! place the moves of `a` at indices `0..a.len()` followed by the moves of `b`.
//! Two consequences are used throughout the crate:
//!
//! * `arrow(product(g, s), t)` and `arrow(g, arrow(s, t))` have identical
//!   index layouts, so currying is a relabelling of the arena only;
//! * `arrow(empty(), t)` has the layout of `t`, so a closed strategy on `t` can
//!   be plugged in wherever a strategy on `arrow(I, t)` is expected.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Index of a move inside its arena.
pub type MoveIdx = u32;

/// Opponent/Player crossed with Question/Answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveLabel {
    OQ,
    OA,
    PQ,
    PA,
}

impl MoveLabel {
    pub fn is_opponent(self) -> bool {
        matches!(self, MoveLabel::OQ | MoveLabel::OA)
    }

    pub fn is_player(self) -> bool {
        !self.is_opponent()
    }

    pub fn is_question(self) -> bool {
        matches!(self, MoveLabel::OQ | MoveLabel::PQ)
    }

    pub fn is_answer(self) -> bool {
        !self.is_question()
    }

    /// Swaps O and P, keeping the question/answer kind.
    pub fn flipped(self) -> MoveLabel {
        match self {
            MoveLabel::OQ => MoveLabel::PQ,
            MoveLabel::OA => MoveLabel::PA,
            MoveLabel::PQ => MoveLabel::OQ,
            MoveLabel::PA => MoveLabel::OA,
        }
    }
}

impl fmt::Display for MoveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveLabel::OQ => "OQ",
            MoveLabel::OA => "OA",
            MoveLabel::PQ => "PQ",
            MoveLabel::PA => "PA",
        };
        f.write_str(s)
    }
}

/// How an arena was built. Only used to recover the components of products
/// and arrows; equality of arenas ignores it.
#[derive(Debug, Clone)]
pub enum Shape {
    Empty,
    Nat(u32),
    Sigma,
    Product(Arc<Arena>, Arc<Arena>),
    Arrow(Arc<Arena>, Arc<Arena>),
    /// Loaded from JSON; no known decomposition.
    Opaque,
}

#[derive(Debug, Clone)]
pub struct Arena {
    ids: Vec<String>,
    labels: Vec<MoveLabel>,
    /// `enables[m]` lists the moves that `m` enables, sorted.
    enables: Vec<Vec<MoveIdx>>,
    initial: Vec<bool>,
    by_id: HashMap<String, MoveIdx>,
    shape: Shape,
}

impl PartialEq for Arena {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids
            && self.labels == other.labels
            && self.enables == other.enables
            && self.initial == other.initial
    }
}

impl Eq for Arena {}

impl Arena {
    fn build(
        ids: Vec<String>,
        labels: Vec<MoveLabel>,
        mut enables: Vec<Vec<MoveIdx>>,
        initial: Vec<bool>,
        shape: Shape,
    ) -> Arena {
        for e in &mut enables {
            e.sort_unstable();
            e.dedup();
        }
        let by_id = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i as MoveIdx))
            .collect();
        Arena {
            ids,
            labels,
            enables,
            initial,
            by_id,
            shape,
        }
    }

    /// The arena with no moves; unit for `product` and left unit for `arrow`.
    pub fn empty() -> Arc<Arena> {
        Arc::new(Arena::build(vec![], vec![], vec![], vec![], Shape::Empty))
    }

    /// Flat naturals truncated at `max_nat`: one initial O-question `q`
    /// enabling the P-answers `0..=max_nat`.
    pub fn nat(max_nat: u32) -> Arc<Arena> {
        let n = max_nat as usize + 2;
        let mut ids = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        ids.push("q".to_string());
        labels.push(MoveLabel::OQ);
        for k in 0..=max_nat {
            ids.push(k.to_string());
            labels.push(MoveLabel::PA);
        }
        let mut enables = vec![Vec::new(); n];
        enables[0] = (1..n as MoveIdx).collect();
        let mut initial = vec![false; n];
        initial[0] = true;
        Arc::new(Arena::build(ids, labels, enables, initial, Shape::Nat(max_nat)))
    }

    /// The observation game: `q` (OQ, initial) enabling `a` (PA).
    pub fn sigma() -> Arc<Arena> {
        Arc::new(Arena::build(
            vec!["q".into(), "a".into()],
            vec![MoveLabel::OQ, MoveLabel::PA],
            vec![vec![1], vec![]],
            vec![true, false],
            Shape::Sigma,
        ))
    }

    fn tagged(tag: &str, arena: &Arena) -> Vec<String> {
        arena.ids.iter().map(|id| format!("{tag}.{id}")).collect()
    }

    pub fn product(a: Arc<Arena>, b: Arc<Arena>) -> Arc<Arena> {
        let off = a.len() as MoveIdx;
        let mut ids = Arena::tagged("L", &a);
        ids.extend(Arena::tagged("R", &b));
        let mut labels = a.labels.clone();
        labels.extend(b.labels.iter().copied());
        let mut enables = a.enables.clone();
        enables.extend(
            b.enables
                .iter()
                .map(|e| e.iter().map(|&m| m + off).collect::<Vec<_>>()),
        );
        let mut initial = a.initial.clone();
        initial.extend(b.initial.iter().copied());
        Arc::new(Arena::build(
            ids,
            labels,
            enables,
            initial,
            Shape::Product(a, b),
        ))
    }

    /// Function space `a => b`: polarity of `a` flipped, initials of `b` enable
    /// the former initials of `a`.
    pub fn arrow(a: Arc<Arena>, b: Arc<Arena>) -> Arc<Arena> {
        let off = a.len() as MoveIdx;
        let mut ids = Arena::tagged("L", &a);
        ids.extend(Arena::tagged("R", &b));
        let mut labels: Vec<MoveLabel> = a.labels.iter().map(|l| l.flipped()).collect();
        labels.extend(b.labels.iter().copied());
        let mut enables = a.enables.clone();
        enables.extend(
            b.enables
                .iter()
                .map(|e| e.iter().map(|&m| m + off).collect::<Vec<_>>()),
        );
        let a_initials: Vec<MoveIdx> = a.initials().collect();
        for bi in b.initials() {
            enables[(bi + off) as usize].extend(a_initials.iter().copied());
        }
        let mut initial = vec![false; a.len()];
        initial.extend(b.initial.iter().copied());
        Arc::new(Arena::build(
            ids,
            labels,
            enables,
            initial,
            Shape::Arrow(a, b),
        ))
    }

    /// Builds an arena from raw parts, checking the structural invariants.
    pub fn from_parts(
        moves: Vec<(String, MoveLabel)>,
        enabling: &[(String, String)],
        initials: &[String],
    ) -> Result<Arc<Arena>, Error> {
        let n = moves.len();
        let mut index = HashMap::new();
        for (i, (id, _)) in moves.iter().enumerate() {
            if index.insert(id.clone(), i as MoveIdx).is_some() {
                return Err(Error::InvalidArena(format!("duplicate move id `{id}`")));
            }
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::UnknownMove(id.to_string()))
        };
        let mut enables = vec![Vec::new(); n];
        for (m, k) in enabling {
            let (m, k) = (lookup(m)?, lookup(k)?);
            enables[m as usize].push(k);
        }
        let mut initial = vec![false; n];
        for i in initials {
            initial[lookup(i)? as usize] = true;
        }
        let (ids, labels) = moves.into_iter().unzip();
        let arena = Arena::build(ids, labels, enables, initial, Shape::Opaque);
        arena.validate()?;
        Ok(Arc::new(arena))
    }

    /// Checks the invariants every arena must satisfy: initial moves are
    /// O-questions, enabling alternates polarity, answers are never initial
    /// and every non-initial move has an enabler.
    pub fn validate(&self) -> Result<(), Error> {
        let mut has_enabler = vec![false; self.len()];
        for m in self.moves() {
            if self.is_initial(m) && self.label(m) != MoveLabel::OQ {
                return Err(Error::InvalidArena(format!(
                    "initial move `{}` is not an O-question",
                    self.id(m)
                )));
            }
            for &n in self.enabled_by(m) {
                if self.label(m).is_opponent() == self.label(n).is_opponent() {
                    return Err(Error::InvalidArena(format!(
                        "`{}` enables `{}` with the same polarity",
                        self.id(m),
                        self.id(n)
                    )));
                }
                has_enabler[n as usize] = true;
            }
        }
        for m in self.moves() {
            if !self.is_initial(m) && !has_enabler[m as usize] {
                return Err(Error::InvalidArena(format!(
                    "move `{}` is neither initial nor enabled",
                    self.id(m)
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn moves(&self) -> impl Iterator<Item = MoveIdx> {
        0..self.len() as MoveIdx
    }

    pub fn initials(&self) -> impl Iterator<Item = MoveIdx> + '_ {
        self.moves().filter(|&m| self.initial[m as usize])
    }

    pub fn is_initial(&self, m: MoveIdx) -> bool {
        self.initial[m as usize]
    }

    pub fn label(&self, m: MoveIdx) -> MoveLabel {
        self.labels[m as usize]
    }

    pub fn id(&self, m: MoveIdx) -> &str {
        &self.ids[m as usize]
    }

    pub fn lookup(&self, id: &str) -> Option<MoveIdx> {
        self.by_id.get(id).copied()
    }

    /// Moves enabled by `m`.
    pub fn enabled_by(&self, m: MoveIdx) -> &[MoveIdx] {
        &self.enables[m as usize]
    }

    pub fn enables(&self, m: MoveIdx, n: MoveIdx) -> bool {
        self.enables[m as usize].binary_search(&n).is_ok()
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Components of an arena built by [`Arena::arrow`].
    pub fn as_arrow(&self) -> Option<(&Arc<Arena>, &Arc<Arena>)> {
        match &self.shape {
            Shape::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Components of an arena built by [`Arena::product`].
    pub fn as_product(&self) -> Option<(&Arc<Arena>, &Arc<Arena>)> {
        match &self.shape {
            Shape::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// True when `other` has the same labels, enabling and initials index for
    /// index; move ids may differ. Such arenas can share strategies verbatim.
    pub fn same_layout(&self, other: &Arena) -> bool {
        self.labels == other.labels
            && self.enables == other.enables
            && self.initial == other.initial
    }

    /// Parses a compact arena descriptor such as `N5 -> N5`,
    /// `(N2 * N2) -> N2`, `Sigma` or `I`. `->` is right-associative and `*`
    /// binds tighter than `->`.
    pub fn from_descriptor(text: &str) -> Result<Arc<Arena>, Error> {
        let tokens = descriptor_tokens(text)?;
        let mut pos = 0;
        let arena = parse_arrow(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::InvalidArena(format!(
                "trailing input in arena descriptor `{text}`"
            )));
        }
        Ok(arena)
    }

    /// The descriptor this arena was built from, when it was built by the
    /// constructors; `None` for arenas loaded from an explicit move list.
    pub fn descriptor(&self) -> Option<String> {
        Some(match &self.shape {
            Shape::Empty => "I".to_string(),
            Shape::Nat(n) => format!("N{n}"),
            Shape::Sigma => "Sigma".to_string(),
            Shape::Product(a, b) => {
                let wrap = |x: &Arena| -> Option<String> {
                    let d = x.descriptor()?;
                    Some(if matches!(x.shape, Shape::Arrow(..)) { format!("({d})") } else { d })
                };
                // `*` is left-associative, so only a right operand product needs brackets
                let rhs = if matches!(b.shape, Shape::Product(..)) {
                    format!("({})", b.descriptor()?)
                } else {
                    wrap(b)?
                };
                format!("{} * {rhs}", wrap(a)?)
            }
            Shape::Arrow(a, b) => {
                let lhs = if matches!(a.shape, Shape::Arrow(..) | Shape::Product(..)) {
                    format!("({})", a.descriptor()?)
                } else {
                    a.descriptor()?
                };
                format!("{lhs} -> {}", b.descriptor()?)
            }
            Shape::Opaque => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum DescTok {
    Nat(u32),
    Sigma,
    Unit,
    Arrow,
    Star,
    Open,
    Close,
}

fn descriptor_tokens(text: &str) -> Result<Vec<DescTok>, Error> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(DescTok::Open);
            }
            ')' => {
                chars.next();
                out.push(DescTok::Close);
            }
            '*' => {
                chars.next();
                out.push(DescTok::Star);
            }
            '-' => {
                chars.next();
                if chars.next() != Some('>') {
                    return Err(Error::InvalidArena("expected `->`".into()));
                }
                out.push(DescTok::Arrow);
            }
            'N' => {
                chars.next();
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n = digits
                    .parse()
                    .map_err(|_| Error::InvalidArena("`N` needs a numeral cap, e.g. N3".into()))?;
                out.push(DescTok::Nat(n));
            }
            'S' => {
                let word: String = chars.by_ref().take(5).collect();
                if word != "Sigma" {
                    return Err(Error::InvalidArena(format!("unknown arena `{word}`")));
                }
                out.push(DescTok::Sigma);
            }
            'I' => {
                chars.next();
                out.push(DescTok::Unit);
            }
            other => {
                return Err(Error::InvalidArena(format!(
                    "unexpected `{other}` in arena descriptor"
                )))
            }
        }
    }
    Ok(out)
}

fn parse_arrow(tokens: &[DescTok], pos: &mut usize) -> Result<Arc<Arena>, Error> {
    let lhs = parse_product(tokens, pos)?;
    if tokens.get(*pos) == Some(&DescTok::Arrow) {
        *pos += 1;
        let rhs = parse_arrow(tokens, pos)?;
        return Ok(Arena::arrow(lhs, rhs));
    }
    Ok(lhs)
}

fn parse_product(tokens: &[DescTok], pos: &mut usize) -> Result<Arc<Arena>, Error> {
    let mut acc = parse_atom(tokens, pos)?;
    while tokens.get(*pos) == Some(&DescTok::Star) {
        *pos += 1;
        let rhs = parse_atom(tokens, pos)?;
        acc = Arena::product(acc, rhs);
    }
    Ok(acc)
}

fn parse_atom(tokens: &[DescTok], pos: &mut usize) -> Result<Arc<Arena>, Error> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::InvalidArena("unexpected end of arena descriptor".into()))?;
    *pos += 1;
    match tok {
        DescTok::Nat(n) => Ok(Arena::nat(*n)),
        DescTok::Sigma => Ok(Arena::sigma()),
        DescTok::Unit => Ok(Arena::empty()),
        DescTok::Open => {
            let inner = parse_arrow(tokens, pos)?;
            if tokens.get(*pos) != Some(&DescTok::Close) {
                return Err(Error::InvalidArena("missing `)`".into()));
            }
            *pos += 1;
            Ok(inner)
        }
        other => Err(Error::InvalidArena(format!(
            "unexpected {other:?} in arena descriptor"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enabling_pairs(a: &Arena) -> Vec<(MoveIdx, MoveIdx)> {
        let mut out = Vec::new();
        for m in a.moves() {
            for n in a.moves() {
                if a.enables(m, n) {
                    out.push((m, n));
                }
            }
        }
        out
    }

    #[test]
    fn smallest_flat_arena() {
        let n0 = Arena::nat(0);
        assert_eq!(n0.len(), 2);
        assert_eq!(n0.label(0), MoveLabel::OQ);
        assert_eq!(n0.label(1), MoveLabel::PA);
        assert_eq!(n0.initials().collect::<Vec<_>>(), vec![0]);
        assert!(n0.enables(0, 1));
    }

    #[test]
    fn nat_two_enabling_by_enumeration() {
        let n2 = Arena::nat(2);
        assert_eq!(n2.len(), 4);
        assert_eq!(enabling_pairs(&n2), vec![(0, 1), (0, 2), (0, 3)]);
        n2.validate().unwrap();
    }

    #[test]
    fn nat_five_has_answer_five() {
        let n5 = Arena::nat(5);
        let five = n5.lookup("5").unwrap();
        let enablers: Vec<_> = n5.moves().filter(|&m| n5.enables(m, five)).collect();
        assert_eq!(enablers, vec![0]);
    }

    #[test]
    fn sigma_structure() {
        let s = Arena::sigma();
        assert_eq!(s.label(0), MoveLabel::OQ);
        assert_eq!(s.label(1), MoveLabel::PA);
        assert!(s.enables(0, 1));
        assert!(!s.enables(0, 0));
        assert!(s.is_initial(0) && !s.is_initial(1));
    }

    #[test]
    fn product_counts_and_initials() {
        let p = Arena::product(Arena::nat(2), Arena::nat(2));
        assert_eq!(p.len(), 8);
        assert_eq!(p.initials().count(), 2);
        let ss = Arena::product(Arena::sigma(), Arena::sigma());
        let ids: Vec<_> = ss.initials().map(|m| ss.id(m).to_string()).collect();
        assert_eq!(ids, vec!["L.q", "R.q"]);
    }

    #[test]
    fn unit_laws_up_to_retagging() {
        let n = Arena::nat(2);
        let p = Arena::product(n.clone(), Arena::empty());
        assert!(p.same_layout(&n));
        let f = Arena::arrow(Arena::empty(), n.clone());
        assert!(f.same_layout(&n));
    }

    #[test]
    fn arrow_into_sigma_flips_polarity() {
        let a = Arena::arrow(Arena::nat(2), Arena::sigma());
        let qs = a.lookup("R.q").unwrap();
        let qn = a.lookup("L.q").unwrap();
        assert_eq!(a.initials().collect::<Vec<_>>(), vec![qs]);
        assert_eq!(a.label(qn), MoveLabel::PQ);
        assert!(a.enables(qs, qn));
        for k in 0..=2 {
            let m = a.lookup(&format!("L.{k}")).unwrap();
            assert_eq!(a.label(m), MoveLabel::OA);
        }
    }

    #[test]
    fn example_one_arena() {
        let a = Arena::arrow(
            Arena::product(Arena::nat(2), Arena::nat(2)),
            Arena::nat(2),
        );
        assert_eq!(
            a.initials().map(|m| a.id(m)).collect::<Vec<_>>(),
            vec!["R.q"]
        );
        let q = a.lookup("R.q").unwrap();
        assert!(a.enables(q, a.lookup("L.L.q").unwrap()));
        assert!(a.enables(q, a.lookup("L.R.q").unwrap()));
        a.validate().unwrap();
    }

    #[test]
    fn constructed_arenas_are_valid_and_disjoint() {
        let n = Arena::nat(1);
        let nested = Arena::arrow(n.clone(), Arena::arrow(n.clone(), n.clone()));
        nested.validate().unwrap();
        let mut ids: Vec<_> = nested.moves().map(|m| nested.id(m).to_string()).collect();
        let before = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), before);
        assert_eq!(nested.len(), 3 * n.len());
    }

    #[test]
    fn arrow_flip_is_exhaustive() {
        let base = Arena::arrow(Arena::nat(2), Arena::nat(2));
        let tested = Arena::arrow(base.clone(), Arena::sigma());
        for m in base.moves() {
            let l = base.label(m);
            let l2 = tested.label(m);
            assert_ne!(l.is_opponent(), l2.is_opponent());
            assert_eq!(l.is_question(), l2.is_question());
        }
    }

    #[test]
    fn curried_and_uncurried_layouts_agree() {
        let n = Arena::nat(2);
        let curried = Arena::arrow(n.clone(), Arena::arrow(n.clone(), n.clone()));
        let uncurried = Arena::arrow(Arena::product(n.clone(), n.clone()), n.clone());
        assert!(curried.same_layout(&uncurried));
    }

    #[test]
    fn descriptor_parsing() {
        let a = Arena::from_descriptor("(N2 * N2) -> N2").unwrap();
        let b = Arena::arrow(
            Arena::product(Arena::nat(2), Arena::nat(2)),
            Arena::nat(2),
        );
        assert_eq!(*a, *b);
        let c = Arena::from_descriptor("N1 -> N1 -> N1").unwrap();
        assert_eq!(*c, *Arena::arrow(Arena::nat(1), Arena::arrow(Arena::nat(1), Arena::nat(1))));
        assert_eq!(*Arena::from_descriptor("Sigma").unwrap(), *Arena::sigma());
        assert!(Arena::from_descriptor("N2 ->").is_err());
    }

    #[test]
    fn from_parts_rejects_bad_polarity() {
        let moves = vec![("q".to_string(), MoveLabel::OQ), ("x".to_string(), MoveLabel::OA)];
        let err = Arena::from_parts(moves, &[("q".into(), "x".into())], &["q".into()]);
        assert!(err.is_err());
    }
}
