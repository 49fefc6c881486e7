//! A slow word-level reference engine for the monoid presentation.
//!
//! Words over the generator letters are rewritten by literal relation
//! applications: generator squares cancel, braid segments swap, letters
//! commute across or are absorbed by idempotents, and a type-reduced
//! segment between two idempotents collapses to the witnessed meet. The
//! engine never consults the closed-form multiplication, so bounded
//! breadth-first search over relation applications serves as an
//! independent equality oracle for small instances.

use std::collections::{HashSet, VecDeque};

use crate::coxeter::CoxeterGroup;
use crate::lattice::LatId;
use crate::renner::{Letter, RennerData};

pub type Word = Vec<Letter>;

pub struct Rewriter<'a> {
    data: &'a RennerData,
    group: &'a CoxeterGroup,
}

impl<'a> Rewriter<'a> {
    pub fn new(data: &'a RennerData, group: &'a CoxeterGroup) -> Rewriter<'a> {
        Rewriter { data, group }
    }

    /// Generator-weighted length of a word (idempotent letters weigh 0).
    pub fn weight(&self, word: &[Letter]) -> u32 {
        word.iter()
            .filter(|x| matches!(x, Letter::Gen(_)))
            .count() as u32
    }

    fn meet_scan(&self, e: LatId, f: LatId, w: crate::coxeter::ElemId) -> Option<LatId> {
        let lat = self.data.lattice();
        let supp = self.group.support(w);
        let candidates: Vec<LatId> = lat
            .elements()
            .filter(|&h| {
                lat.leq(h, e) && lat.leq(h, f) && supp.is_subset_of(self.data.type_of(h))
            })
            .collect();
        candidates
            .iter()
            .copied()
            .find(|&top| candidates.iter().all(|&h| lat.leq(h, top)))
    }

    /// All words reachable by one relation application in either
    /// direction, truncated to `max_letters`.
    pub fn neighbors(&self, word: &[Letter], max_letters: usize) -> Vec<Word> {
        let mut out: Vec<Word> = Vec::new();
        let mut push = |w: Word| {
            if w.len() <= max_letters {
                out.push(w);
            }
        };
        let graph = self.data.graph();
        let lat = self.data.lattice();

        for i in 0..word.len() {
            // Square cancellation.
            if i + 1 < word.len() {
                if let (Letter::Gen(s), Letter::Gen(t)) = (word[i], word[i + 1]) {
                    if s == t {
                        let mut w = word.to_vec();
                        w.drain(i..i + 2);
                        push(w);
                    }
                }
            }
            // Braid segment swap.
            if let Letter::Gen(s) = word[i] {
                if let Some(Letter::Gen(t)) = word.get(i + 1).copied() {
                    if s != t {
                        let m = graph.order(s, t) as usize;
                        if i + m <= word.len() {
                            let alternates = (i..i + m).all(|k| {
                                word[k]
                                    == Letter::Gen(if (k - i) % 2 == 0 { s } else { t })
                            });
                            if alternates {
                                let mut w = word.to_vec();
                                for k in i..i + m {
                                    w[k] =
                                        Letter::Gen(if (k - i) % 2 == 0 { t } else { s });
                                }
                                push(w);
                            }
                        }
                    }
                }
            }
            // Exchanges and absorptions across one idempotent.
            if i + 1 < word.len() {
                match (word[i], word[i + 1]) {
                    (Letter::Gen(s), Letter::Idem(e)) => {
                        if self.data.commuting(e).contains(s) {
                            let mut w = word.to_vec();
                            w.swap(i, i + 1);
                            push(w);
                        }
                        if self.data.fixing(e).contains(s) {
                            let mut w = word.to_vec();
                            w.remove(i);
                            push(w);
                        }
                    }
                    (Letter::Idem(e), Letter::Gen(s)) => {
                        if self.data.commuting(e).contains(s) {
                            let mut w = word.to_vec();
                            w.swap(i, i + 1);
                            push(w);
                        }
                        if self.data.fixing(e).contains(s) {
                            let mut w = word.to_vec();
                            w.remove(i + 1);
                            push(w);
                        }
                    }
                    _ => {}
                }
            }
            // Absorption insertions: e -> s e and e -> e s.
            if let Letter::Idem(e) = word[i] {
                for s in self.data.fixing(e).iter() {
                    let mut w = word.to_vec();
                    w.insert(i, Letter::Gen(s));
                    push(w);
                    let mut w = word.to_vec();
                    w.insert(i + 1, Letter::Gen(s));
                    push(w);
                }
            }
            // Witnessed-meet collapse: e <segment> f -> meet, where the
            // reduced segment holds only generator letters.
            if let Letter::Idem(e) = word[i] {
                for j in i + 1..word.len() {
                    // The nearest idempotent closes the segment.
                    let Letter::Idem(f) = word[j] else { continue };
                    let segment: Vec<crate::coxeter::GenId> = word[i + 1..j]
                        .iter()
                        .map(|x| match x {
                            Letter::Gen(s) => *s,
                            Letter::Idem(_) => unreachable!(),
                        })
                        .collect();
                    let w_elem = self.group.element_of_word(&segment);
                    let reduced_spelling =
                        self.group.length(w_elem) as usize == segment.len();
                    if reduced_spelling
                        && self.group.is_reduced_pair(
                            w_elem,
                            self.data.type_of(e),
                            self.data.type_of(f),
                        )
                    {
                        if let Some(h) = self.meet_scan(e, f, w_elem) {
                            let mut w = word.to_vec();
                            w.splice(i..=j, [Letter::Idem(h)]);
                            push(w);
                        }
                    }
                    break;
                }
            }
            // Witnessed-meet expansion: h -> e <word> f.
            if let Letter::Idem(h) = word[i] {
                for e in lat.elements() {
                    for f in lat.elements() {
                        for w_elem in self.group.elements() {
                            if !self.group.is_reduced_pair(
                                w_elem,
                                self.data.type_of(e),
                                self.data.type_of(f),
                            ) {
                                continue;
                            }
                            if self.meet_scan(e, f, w_elem) != Some(h) {
                                continue;
                            }
                            let mut w = word.to_vec();
                            let mut segment = vec![Letter::Idem(e)];
                            segment
                                .extend(self.group.word(w_elem).iter().map(|&s| Letter::Gen(s)));
                            segment.push(Letter::Idem(f));
                            w.splice(i..=i, segment);
                            push(w);
                        }
                    }
                }
            }
        }
        // Square insertions anywhere.
        for i in 0..=word.len() {
            for s in graph.generators() {
                let mut w = word.to_vec();
                w.splice(i..i, [Letter::Gen(s), Letter::Gen(s)]);
                push(w);
            }
        }
        out
    }

    /// The set of words reachable from `start` without exceeding
    /// `max_letters` letters or `max_weight` generator weight.
    pub fn bounded_class(
        &self,
        start: &[Letter],
        max_letters: usize,
        max_weight: u32,
    ) -> HashSet<Word> {
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        seen.insert(start.to_vec());
        queue.push_back(start.to_vec());
        while let Some(word) = queue.pop_front() {
            for next in self.neighbors(&word, max_letters) {
                if self.weight(&next) > max_weight {
                    continue;
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Equality of the elements represented by two words, decided by
    /// bounded search. A positive answer is definitive; a negative one
    /// only means the bound did not suffice.
    pub fn equal_within(&self, u: &[Letter], v: &[Letter], max_letters: usize) -> bool {
        let cap = self.weight(u).max(self.weight(v)) + 1;
        let class = self.bounded_class(u, max_letters, cap);
        class.contains(v)
    }
}
