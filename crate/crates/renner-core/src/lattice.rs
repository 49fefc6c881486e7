//! Cross-section lattices: the finite lower semilattice of non-unit
//! idempotent representatives, built from declared order pairs.

use std::fmt;

use thiserror::Error;

/// An index into the element list of a [`CrossSectionLattice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatId(pub u16);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("duplicate idempotent label `{0}`")]
    DuplicateLabel(String),
    #[error("order cycle through `{0}`")]
    OrderCycle(String),
}

/// The non-unit part of a cross-section lattice, as a finite poset.
///
/// The monoid unit is not an element here: the unit is represented by the
/// `Unit` variant of a Renner element and is greater than every entry.
/// Binary meets are computed from the declared order; a missing meet is
/// recorded and reported by validation rather than rejected at parse time.
#[derive(Clone, PartialEq, Eq)]
pub struct CrossSectionLattice {
    labels: Vec<String>,
    /// Reflexive-transitive order: `leq[a][b]` iff `a <= b`.
    leq: Vec<Vec<bool>>,
    /// `meet[a][b]` is the greatest common lower bound when one exists.
    meet: Vec<Vec<Option<LatId>>>,
}

impl fmt::Debug for CrossSectionLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CrossSectionLattice")
            .field("elements", &self.labels)
            .finish()
    }
}

impl CrossSectionLattice {
    /// Builds the poset from labels and order pairs `(a, b)` meaning
    /// `a < b`. Redundant (non-Hasse) pairs are accepted; the transitive
    /// closure is computed.
    pub fn new<L, P>(labels: L, pairs: P) -> Result<CrossSectionLattice, LatticeError>
    where
        L: IntoIterator<Item = String>,
        P: IntoIterator<Item = (usize, usize)>,
    {
        let labels: Vec<String> = labels.into_iter().collect();
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(LatticeError::DuplicateLabel(a.clone()));
            }
        }
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in pairs {
            leq[a][b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for a in 0..n {
                if leq[a][k] {
                    for b in 0..n {
                        if leq[k][b] {
                            leq[a][b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(LatticeError::OrderCycle(labels[a].clone()));
                }
            }
        }
        let mut lattice = CrossSectionLattice { labels, leq, meet: Vec::new() };
        lattice.meet = (0..n)
            .map(|a| (0..n).map(|b| lattice.compute_meet(a, b)).collect())
            .collect();
        Ok(lattice)
    }

    fn compute_meet(&self, a: usize, b: usize) -> Option<LatId> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&h| self.leq[h][a] && self.leq[h][b])
            .collect();
        lower
            .iter()
            .copied()
            .find(|&g| lower.iter().all(|&h| self.leq[h][g]))
            .map(|g| LatId(g as u16))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = LatId> {
        (0..self.labels.len() as u16).map(LatId)
    }

    pub fn label(&self, e: LatId) -> &str {
        &self.labels[e.0 as usize]
    }

    pub fn by_label(&self, label: &str) -> Option<LatId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| LatId(i as u16))
    }

    pub fn leq(&self, a: LatId, b: LatId) -> bool {
        self.leq[a.0 as usize][b.0 as usize]
    }

    /// The binary meet, when the declared order admits one.
    pub fn meet(&self, a: LatId, b: LatId) -> Option<LatId> {
        self.meet[a.0 as usize][b.0 as usize]
    }

    /// Pairs without a greatest common lower bound, i.e. witnesses that
    /// the poset is not a lower semilattice.
    pub fn missing_meets(&self) -> Vec<(LatId, LatId)> {
        let mut missing = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a <= b && self.meet(a, b).is_none() {
                    missing.push((a, b));
                }
            }
        }
        missing
    }

    /// Covering pairs of the declared order (the Hasse diagram).
    pub fn hasse_pairs(&self) -> Vec<(LatId, LatId)> {
        let mut pairs = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let covered = self
                    .elements()
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !covered {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }
}
