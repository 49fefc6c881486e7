//! Finite Coxeter group engine.
//!
//! A group is built from its labelled graph by breadth-first closure from
//! the identity, scanning one relation table per braid relation so that a
//! product `w*s` is only declared new once the relations can no longer
//! identify it with a known element. Elements are numbered in shortlex
//! order of their canonical reduced word, and full left/right Cayley
//! tables are cached.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// A generator index into the declared ordering of a [`CoxeterGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u16);

/// An element index into the table of a [`CoxeterGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemId(pub u32);

impl ElemId {
    /// The identity element of every group.
    pub const IDENTITY: ElemId = ElemId(0);
}

/// A subset of the generator set, with bit-set semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GenSet(pub u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn singleton(s: GenId) -> GenSet {
        GenSet(1 << s.0)
    }

    pub fn contains(&self, s: GenId) -> bool {
        self.0 >> s.0 & 1 == 1
    }

    pub fn insert(&mut self, s: GenId) {
        self.0 |= 1 << s.0;
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    pub fn is_subset_of(&self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..64).filter(|i| self.0 >> i & 1 == 1).map(GenId)
    }

    pub fn from_iter<I: IntoIterator<Item = GenId>>(iter: I) -> GenSet {
        let mut set = GenSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

/// Which side of an element a parabolic factor is stripped from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("malformed Coxeter graph: {0}")]
    MalformedGraph(String),
    #[error("enumeration exceeded the element cap of {cap}")]
    CapExceeded { cap: usize },
}

/// A finite simple labelled graph describing a Coxeter presentation.
///
/// Vertices are the generators, in a declared order that fixes the
/// shortlex canonical form downstream. An edge `{s,t}` labelled `m >= 3`
/// imposes the braid relation of length `m`; an absent edge means `m = 2`
/// (the generators commute).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterGraph {
    labels: Vec<String>,
    edges: BTreeMap<(GenId, GenId), u32>,
}

impl CoxeterGraph {
    /// Builds a graph from generator labels and edges `(s, t, m)`.
    pub fn new<L, E>(labels: L, edges: E) -> Result<CoxeterGraph, CoxeterError>
    where
        L: IntoIterator<Item = String>,
        E: IntoIterator<Item = (usize, usize, u32)>,
    {
        let labels: Vec<String> = labels.into_iter().collect();
        if labels.len() > 64 {
            return Err(CoxeterError::MalformedGraph(format!(
                "{} generators exceed the supported maximum of 64",
                labels.len()
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(CoxeterError::MalformedGraph(format!(
                    "duplicate generator label `{a}`"
                )));
            }
        }
        let mut map = BTreeMap::new();
        for (s, t, m) in edges {
            if s >= labels.len() || t >= labels.len() {
                return Err(CoxeterError::MalformedGraph(format!(
                    "edge endpoint {} out of range",
                    s.max(t)
                )));
            }
            if s == t {
                return Err(CoxeterError::MalformedGraph(format!(
                    "self-edge on generator `{}`",
                    labels[s]
                )));
            }
            if m < 3 {
                return Err(CoxeterError::MalformedGraph(format!(
                    "edge label {m} below 3 on `{}`-`{}`",
                    labels[s], labels[t]
                )));
            }
            let key = (GenId(s.min(t) as u16), GenId(s.max(t) as u16));
            if map.insert(key, m).is_some() {
                return Err(CoxeterError::MalformedGraph(format!(
                    "duplicate edge `{}`-`{}`",
                    labels[s], labels[t]
                )));
            }
        }
        Ok(CoxeterGraph { labels, edges: map })
    }

    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = GenId> {
        (0..self.labels.len() as u16).map(GenId)
    }

    pub fn label(&self, s: GenId) -> &str {
        &self.labels[s.0 as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator_by_label(&self, label: &str) -> Option<GenId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| GenId(i as u16))
    }

    /// The braid label `m(s, t)`; 2 when no edge is declared.
    pub fn order(&self, s: GenId, t: GenId) -> u32 {
        if s == t {
            return 1;
        }
        let key = (s.min(t), s.max(t));
        self.edges.get(&key).copied().unwrap_or(2)
    }

    pub fn edges(&self) -> impl Iterator<Item = (GenId, GenId, u32)> + '_ {
        self.edges.iter().map(|(&(s, t), &m)| (s, t, m))
    }

    /// True when `a` and `b` span disjoint subgraphs with no edge between
    /// them, i.e. every generator of `a` commutes with every one of `b`.
    pub fn disconnected(&self, a: GenSet, b: GenSet) -> bool {
        if !a.intersection(b).is_empty() {
            return false;
        }
        a.iter()
            .all(|s| b.iter().all(|t| self.order(s, t) == 2))
    }
}

/// One scan row per element and braid relation: both cursors advance
/// through the relation word as Cayley entries become known, and a fully
/// scanned row yields the one entry the relation forces.
struct RelationRow {
    left_index: u32,
    right_index: u32,
    left_elem: ElemId,
    right_elem: ElemId,
}

struct RelationTable {
    word: Vec<GenId>,
    rows: Vec<RelationRow>,
}

impl RelationTable {
    fn new(word: Vec<GenId>) -> RelationTable {
        RelationTable { word, rows: Vec::new() }
    }

    fn add_row(&mut self, elem: ElemId) {
        self.rows.push(RelationRow {
            left_index: 0,
            right_index: self.word.len() as u32 - 1,
            left_elem: elem,
            right_elem: elem,
        });
    }

    fn scan(&mut self, table: &[Vec<Option<ElemId>>]) -> Vec<(ElemId, GenId, ElemId)> {
        let word = &self.word;
        let mut facts = Vec::new();
        self.rows.retain_mut(|row| {
            loop {
                if row.left_index < row.right_index {
                    let s = word[row.left_index as usize];
                    if let Some(next) = table[s.0 as usize][row.left_elem.0 as usize] {
                        row.left_elem = next;
                        row.left_index += 1;
                        continue;
                    }
                }
                if row.left_index < row.right_index {
                    let s = word[row.right_index as usize];
                    // Generators are involutions, so predecessor = successor.
                    if let Some(prev) = table[s.0 as usize][row.right_elem.0 as usize] {
                        row.right_elem = prev;
                        row.right_index -= 1;
                        continue;
                    }
                }
                break;
            }
            if row.left_index == row.right_index {
                let s = word[row.left_index as usize];
                facts.push((row.left_elem, s, row.right_elem));
                false
            } else {
                true
            }
        });
        facts
    }
}

/// A fully enumerated finite Coxeter group.
///
/// Element 0 is the identity; element `i` carries the shortlex-minimal
/// reduced word of the `i`-th element in shortlex order.
pub struct CoxeterGroup {
    graph: CoxeterGraph,
    words: Vec<Vec<GenId>>,
    /// `right[s][w] = w * s`
    right: Vec<Vec<ElemId>>,
    /// `left[s][w] = s * w`
    left: Vec<Vec<ElemId>>,
    inverse: Vec<ElemId>,
    element_cap: usize,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup")
            .field("generators", &self.graph.labels)
            .field("order", &self.words.len())
            .finish()
    }
}

impl CoxeterGroup {
    /// Enumerates the group presented by `graph`, failing with
    /// [`CoxeterError::CapExceeded`] once more than `cap` elements appear.
    pub fn build(graph: CoxeterGraph, cap: usize) -> Result<CoxeterGroup, CoxeterError> {
        let ngen = graph.generator_count();
        let mut right: Vec<Vec<Option<ElemId>>> = vec![vec![None]; ngen];
        let mut words: Vec<Vec<GenId>> = vec![Vec::new()];

        let mut relations: Vec<RelationTable> = Vec::new();
        for t in 0..ngen as u16 {
            for s in 0..t {
                let m = graph.order(GenId(s), GenId(t));
                let mut word = Vec::with_capacity(2 * m as usize);
                for _ in 0..m {
                    word.push(GenId(s));
                    word.push(GenId(t));
                }
                let mut rel = RelationTable::new(word);
                rel.add_row(ElemId::IDENTITY);
                relations.push(rel);
            }
        }

        let mut cursor = 0usize;
        while cursor < words.len() {
            let elem = ElemId(cursor as u32);
            for s in 0..ngen {
                if right[s][cursor].is_some() {
                    continue;
                }
                if words.len() >= cap {
                    return Err(CoxeterError::CapExceeded { cap });
                }
                let fresh = ElemId(words.len() as u32);
                let mut word = words[cursor].clone();
                word.push(GenId(s as u16));
                words.push(word);
                for col in right.iter_mut() {
                    col.push(None);
                }
                right[s][cursor] = Some(fresh);
                right[s][fresh.0 as usize] = Some(elem);
                for rel in relations.iter_mut() {
                    rel.add_row(fresh);
                }
                // Drain every consequence of the relations before looking
                // at the next product, so no later coincidence can arise.
                loop {
                    let mut progressed = false;
                    for rel in relations.iter_mut() {
                        for (a, g, b) in rel.scan(&right) {
                            let entry = &mut right[g.0 as usize][a.0 as usize];
                            match entry {
                                None => *entry = Some(b),
                                Some(prev) => assert_eq!(
                                    *prev, b,
                                    "relation scan produced a coincidence"
                                ),
                            }
                            let entry = &mut right[g.0 as usize][b.0 as usize];
                            match entry {
                                None => *entry = Some(a),
                                Some(prev) => assert_eq!(
                                    *prev, a,
                                    "relation scan produced a coincidence"
                                ),
                            }
                            progressed = true;
                        }
                    }
                    if !progressed {
                        break;
                    }
                }
            }
            cursor += 1;
        }

        let order = words.len();
        let right: Vec<Vec<ElemId>> = right
            .into_iter()
            .map(|col| col.into_iter().map(Option::unwrap).collect())
            .collect();

        // left[s][w]: walk w's canonical word from the element s.
        let mut left: Vec<Vec<ElemId>> = vec![Vec::with_capacity(order); ngen];
        for s in 0..ngen {
            for w in 0..order {
                let mut cur = right[s][0];
                for &g in &words[w] {
                    cur = right[g.0 as usize][cur.0 as usize];
                }
                left[s].push(cur);
            }
        }

        let inverse = (0..order)
            .map(|w| {
                let mut cur = ElemId::IDENTITY;
                for &g in words[w].iter().rev() {
                    cur = right[g.0 as usize][cur.0 as usize];
                }
                cur
            })
            .collect();

        Ok(CoxeterGroup { graph, words, right, left, inverse, element_cap: cap })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn element_cap(&self) -> usize {
        self.element_cap
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        (0..self.words.len() as u32).map(ElemId)
    }

    pub fn generator_count(&self) -> usize {
        self.graph.generator_count()
    }

    pub fn full_set(&self) -> GenSet {
        GenSet::from_iter(self.graph.generators())
    }

    /// The canonical (shortlex-minimal) reduced word of `w`.
    pub fn word(&self, w: ElemId) -> &[GenId] {
        &self.words[w.0 as usize]
    }

    pub fn length(&self, w: ElemId) -> u32 {
        self.words[w.0 as usize].len() as u32
    }

    pub fn generator(&self, s: GenId) -> ElemId {
        self.right[s.0 as usize][0]
    }

    pub fn right_mul(&self, w: ElemId, s: GenId) -> ElemId {
        self.right[s.0 as usize][w.0 as usize]
    }

    pub fn left_mul(&self, s: GenId, w: ElemId) -> ElemId {
        self.left[s.0 as usize][w.0 as usize]
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let mut cur = a;
        for &s in self.word(b) {
            cur = self.right_mul(cur, s);
        }
        cur
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        self.inverse[w.0 as usize]
    }

    /// Folds a word of generator indices into a group element.
    pub fn element_of_word(&self, word: &[GenId]) -> ElemId {
        let mut cur = ElemId::IDENTITY;
        for &s in word {
            cur = self.right_mul(cur, s);
        }
        cur
    }

    pub fn left_descents(&self, w: ElemId) -> GenSet {
        GenSet::from_iter(
            self.graph
                .generators()
                .filter(|&s| self.length(self.left_mul(s, w)) < self.length(w)),
        )
    }

    pub fn right_descents(&self, w: ElemId) -> GenSet {
        GenSet::from_iter(
            self.graph
                .generators()
                .filter(|&s| self.length(self.right_mul(w, s)) < self.length(w)),
        )
    }

    /// The letters of the canonical reduced word. Identical across all
    /// reduced words of `w`, so `w` lies in `W_I` iff `support(w) ⊆ I`.
    pub fn support(&self, w: ElemId) -> GenSet {
        GenSet::from_iter(self.word(w).iter().copied())
    }

    pub fn descent_and_support(&self, w: ElemId) -> (GenSet, GenSet, GenSet) {
        (self.left_descents(w), self.right_descents(w), self.support(w))
    }

    pub fn in_parabolic(&self, w: ElemId, set: GenSet) -> bool {
        self.support(w).is_subset_of(set)
    }

    /// Splits `w` as the minimal coset representative times a parabolic
    /// part in `W_I`, by greedy descent stripping.
    ///
    /// `Side::Right` returns `(reduced, p)` with `w = reduced * p`;
    /// `Side::Left` returns `(reduced, p)` with `w = p * reduced`. Both
    /// satisfy `length(w) = length(reduced) + length(p)`.
    pub fn coset_reduce(&self, w: ElemId, set: GenSet, side: Side) -> (ElemId, ElemId) {
        let mut cur = w;
        let mut part = ElemId::IDENTITY;
        'strip: loop {
            for s in set.iter() {
                match side {
                    Side::Right => {
                        if self.length(self.right_mul(cur, s)) < self.length(cur) {
                            cur = self.right_mul(cur, s);
                            part = self.left_mul(s, part);
                            continue 'strip;
                        }
                    }
                    Side::Left => {
                        if self.length(self.left_mul(s, cur)) < self.length(cur) {
                            cur = self.left_mul(s, cur);
                            part = self.right_mul(part, s);
                            continue 'strip;
                        }
                    }
                }
            }
            return (cur, part);
        }
    }

    /// Decomposes `w = w2 * reduced * w1` with `w2` in `W_J`, `w1` in
    /// `W_I`, `reduced` the unique minimal-length element of the double
    /// coset `W_J w W_I`, and lengths adding up.
    ///
    /// The pair is the canonical one with all transferable material
    /// pushed into `w1`: `w2 * reduced` carries no right descent in `I`.
    pub fn double_coset_reduce(
        &self,
        w: ElemId,
        left_set: GenSet,
        right_set: GenSet,
    ) -> (ElemId, ElemId, ElemId) {
        let (c, w1) = self.coset_reduce(w, right_set, Side::Right);
        let (reduced, w2) = self.coset_reduce(c, left_set, Side::Left);
        (w2, reduced, w1)
    }

    /// True iff `w` is the minimal-length element of the double coset
    /// `W_{left_set} w W_{right_set}`; equivalently `w` has no left
    /// descent in `left_set` and no right descent in `right_set`.
    pub fn is_reduced_pair(&self, w: ElemId, left_set: GenSet, right_set: GenSet) -> bool {
        self.left_descents(w).intersection(left_set).is_empty()
            && self.right_descents(w).intersection(right_set).is_empty()
    }

    /// Enumerates the standard parabolic subgroup `W_I`.
    pub fn parabolic(&self, set: GenSet) -> Vec<ElemId> {
        self.elements().filter(|&w| self.in_parabolic(w, set)).collect()
    }

    pub fn display_word(&self, w: ElemId) -> String {
        if w == ElemId::IDENTITY {
            "1".to_string()
        } else {
            self.word(w)
                .iter()
                .map(|&s| self.graph.label(s))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}
