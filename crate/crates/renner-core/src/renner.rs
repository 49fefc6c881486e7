//! Generalised Renner monoids built from presentation data.
//!
//! The data is a Coxeter graph, a cross-section lattice of non-unit
//! idempotents, and two type maps assigning to each idempotent the
//! generators fixing it (`s e = e s = e`) and the generators commuting
//! with it without fixing it. Every monoid element has a unique normal
//! decomposition, either a unit `w` of the Coxeter group or a triple
//! `w1 * e * w2` where `w1` carries no right descent in the fixing set of
//! `e` and `w2` carries no left descent in the full type of `e`.
//!
//! Multiplication works on normal forms directly: the middle group factor
//! is split by a double-coset reduction, its parabolic parts are absorbed
//! into or commuted across the idempotents, and the reduced witness `d`
//! collapses `e * d * f` to the witnessed meet.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterGraph, CoxeterGroup, ElemId, GenId, GenSet, Side};
use crate::lattice::{CrossSectionLattice, LatId};

/// The 4-tuple defining a generalised Renner monoid by presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RennerData {
    graph: CoxeterGraph,
    lattice: CrossSectionLattice,
    /// Per idempotent, the generators acting trivially: `s e = e s = e`.
    fixing: Vec<GenSet>,
    /// Per idempotent, the generators commuting without fixing.
    commuting: Vec<GenSet>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DataError {
    #[error("type map rows ({rows}) do not match the lattice size ({lattice})")]
    RowCount { rows: usize, lattice: usize },
    #[error("type map for `{label}` names generator index {index} outside the graph")]
    GeneratorRange { label: String, index: usize },
    #[error("label `{0}` is used both as a generator and as an idempotent")]
    LabelClash(String),
    #[error("label `{0}` is not usable in element notation")]
    BadLabel(String),
}

fn check_label(label: &str) -> bool {
    !label.is_empty()
        && label != "1"
        && !label.contains(['.', '[', ']'])
        && !label.contains(char::is_whitespace)
}

impl RennerData {
    pub fn new(
        graph: CoxeterGraph,
        lattice: CrossSectionLattice,
        fixing: Vec<GenSet>,
        commuting: Vec<GenSet>,
    ) -> Result<RennerData, DataError> {
        if fixing.len() != lattice.len() || commuting.len() != lattice.len() {
            return Err(DataError::RowCount {
                rows: fixing.len().min(commuting.len()),
                lattice: lattice.len(),
            });
        }
        let ngen = graph.generator_count();
        for e in lattice.elements() {
            for set in [fixing[e.0 as usize], commuting[e.0 as usize]] {
                if let Some(s) = set.iter().find(|s| (s.0 as usize) >= ngen) {
                    return Err(DataError::GeneratorRange {
                        label: lattice.label(e).to_string(),
                        index: s.0 as usize,
                    });
                }
            }
        }
        for label in graph.labels() {
            if !check_label(label) {
                return Err(DataError::BadLabel(label.clone()));
            }
        }
        for e in lattice.elements() {
            let label = lattice.label(e);
            if !check_label(label) {
                return Err(DataError::BadLabel(label.to_string()));
            }
            if graph.generator_by_label(label).is_some() {
                return Err(DataError::LabelClash(label.to_string()));
            }
        }
        Ok(RennerData { graph, lattice, fixing, commuting })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn lattice(&self) -> &CrossSectionLattice {
        &self.lattice
    }

    /// Generators with `s e = e s = e`.
    pub fn fixing(&self, e: LatId) -> GenSet {
        self.fixing[e.0 as usize]
    }

    /// Generators with `s e = e s != e`.
    pub fn commuting(&self, e: LatId) -> GenSet {
        self.commuting[e.0 as usize]
    }

    /// The full type of `e`: all generators commuting with it.
    pub fn type_of(&self, e: LatId) -> GenSet {
        self.fixing(e).union(self.commuting(e))
    }
}

/// One violated axiom of the presentation data, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The fixing and commuting sets of `e` share a vertex or an edge.
    TypeSetsConnected { e: String, s: String, t: String },
    /// `low <= high` but `witness` fixes `high` without fixing `low`.
    FixingNotAntitone { low: String, high: String, witness: String },
    /// `low <= high` but `witness` commutes with `low` and not `high`.
    CommutingNotMonotone { low: String, high: String, witness: String },
    /// The lattice has no greatest common lower bound for `a`, `b`.
    NoMeet { a: String, b: String },
    /// No greatest element below `e`, `f` whose type contains the
    /// support of the reduced witness `word`.
    NoGreatestBound { e: String, f: String, word: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TypeSetsConnected { e, s, t } => {
                if s == t {
                    write!(f, "fixing and commuting sets of {e} share generator {s}")
                } else {
                    write!(
                        f,
                        "fixing and commuting sets of {e} are joined by the edge {s}-{t}"
                    )
                }
            }
            Violation::FixingNotAntitone { low, high, witness } => write!(
                f,
                "{witness} fixes {high} but not the smaller {low} (fixing sets must shrink upward)"
            ),
            Violation::CommutingNotMonotone { low, high, witness } => write!(
                f,
                "{witness} commutes with {low} but not the larger {high} (commuting sets must grow upward)"
            ),
            Violation::NoMeet { a, b } => {
                write!(f, "idempotents {a} and {b} have no meet")
            }
            Violation::NoGreatestBound { e, f: ff, word } => write!(
                f,
                "no greatest element below {e} and {ff} supports the reduced word `{word}`"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// Checks the two data axioms against a built Coxeter group, reporting
/// every violation with a witness.
pub fn validate_data(data: &RennerData, cap: usize) -> Result<ValidationReport, CoxeterError> {
    let group = CoxeterGroup::build(data.graph().clone(), cap)?;
    Ok(validate_with_group(data, &group))
}

fn validate_with_group(data: &RennerData, group: &CoxeterGroup) -> ValidationReport {
    let mut violations = Vec::new();
    let graph = data.graph();
    let lat = data.lattice();
    let label = |s: GenId| graph.label(s).to_string();

    for e in lat.elements() {
        let fix = data.fixing(e);
        let com = data.commuting(e);
        for s in fix.iter() {
            for t in com.iter() {
                if s == t || graph.order(s, t) >= 3 {
                    violations.push(Violation::TypeSetsConnected {
                        e: lat.label(e).to_string(),
                        s: label(s),
                        t: label(t),
                    });
                }
            }
        }
    }

    for low in lat.elements() {
        for high in lat.elements() {
            if low == high || !lat.leq(low, high) {
                continue;
            }
            for s in data.fixing(high).iter() {
                if !data.fixing(low).contains(s) {
                    violations.push(Violation::FixingNotAntitone {
                        low: lat.label(low).to_string(),
                        high: lat.label(high).to_string(),
                        witness: label(s),
                    });
                }
            }
            for s in data.commuting(low).iter() {
                if !data.commuting(high).contains(s) {
                    violations.push(Violation::CommutingNotMonotone {
                        low: lat.label(low).to_string(),
                        high: lat.label(high).to_string(),
                        witness: label(s),
                    });
                }
            }
        }
    }

    for (a, b) in lat.missing_meets() {
        violations.push(Violation::NoMeet {
            a: lat.label(a).to_string(),
            b: lat.label(b).to_string(),
        });
    }

    // Every reduced witness between two idempotents must admit a greatest
    // supported lower bound.
    for e in lat.elements() {
        for f in lat.elements() {
            let te = data.type_of(e);
            let tf = data.type_of(f);
            for w in group.elements() {
                if !group.is_reduced_pair(w, te, tf) {
                    continue;
                }
                let supp = group.support(w);
                let candidates: Vec<LatId> = lat
                    .elements()
                    .filter(|&h| {
                        lat.leq(h, e) && lat.leq(h, f) && supp.is_subset_of(data.type_of(h))
                    })
                    .collect();
                let greatest = candidates
                    .iter()
                    .any(|&g0| candidates.iter().all(|&h| lat.leq(h, g0)));
                if !greatest {
                    violations.push(Violation::NoGreatestBound {
                        e: lat.label(e).to_string(),
                        f: lat.label(f).to_string(),
                        word: group.display_word(w),
                    });
                }
            }
        }
    }

    ValidationReport { violations }
}

/// An element of a generalised Renner monoid, stored as its unique
/// normal decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RennerElement {
    Unit(ElemId),
    Singular { left: ElemId, idem: LatId, right: ElemId },
}

impl RennerElement {
    pub const IDENTITY: RennerElement = RennerElement::Unit(ElemId::IDENTITY);

    pub fn is_unit(&self) -> bool {
        matches!(self, RennerElement::Unit(_))
    }
}

/// A generator letter of the monoid: a Coxeter generator or a non-unit
/// idempotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Gen(GenId),
    Idem(LatId),
}

/// Which case of the normal-form interaction lemmas applies when a
/// generator letter multiplies an element on one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatsumotoCase {
    /// The length goes up by one. `crossed` is the commuting witness
    /// that moved across the idempotent, when the letter entered on the
    /// right and was traded against the left factor.
    Up { crossed: Option<GenId> },
    /// The product equals the element; `witness` is the fixing generator
    /// that absorbed the letter.
    Fixed { witness: GenId },
    /// The length drops by one.
    Down { crossed: Option<GenId> },
    /// An idempotent letter; the length never increases.
    Idempotent { drop: u32 },
}

#[derive(Debug, Error)]
pub enum RennerError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("invalid Renner data:\n{0}")]
    InvalidData(ValidationReport),
    #[error("element enumeration exceeded the cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("witness `{word}` is not reduced between the types of {e} and {f}")]
    NotReduced { e: String, f: String, word: String },
    #[error("no greatest element below {e} and {f} supports `{word}`")]
    NoGreatestElement { e: String, f: String, word: String },
    #[error("cannot parse element `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// A generalised Renner monoid with its enumerated unit group.
pub struct RennerMonoid {
    data: RennerData,
    group: CoxeterGroup,
}

impl fmt::Debug for RennerMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RennerMonoid")
            .field("group_order", &self.group.order())
            .field("lattice", &self.data.lattice())
            .finish()
    }
}

impl RennerMonoid {
    /// Builds the monoid, enumerating the unit group under `cap` and
    /// rejecting data that violates the axioms.
    pub fn build(data: RennerData, cap: usize) -> Result<RennerMonoid, RennerError> {
        let group = CoxeterGroup::build(data.graph().clone(), cap)?;
        let report = validate_with_group(&data, &group);
        if !report.is_valid() {
            return Err(RennerError::InvalidData(report));
        }
        Ok(RennerMonoid { data, group })
    }

    pub fn data(&self) -> &RennerData {
        &self.data
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn lattice(&self) -> &CrossSectionLattice {
        self.data.lattice()
    }

    pub fn identity(&self) -> RennerElement {
        RennerElement::IDENTITY
    }

    pub fn unit(&self, w: ElemId) -> RennerElement {
        RennerElement::Unit(w)
    }

    pub fn generator(&self, s: GenId) -> RennerElement {
        RennerElement::Unit(self.group.generator(s))
    }

    pub fn idempotent(&self, e: LatId) -> RennerElement {
        RennerElement::Singular { left: ElemId::IDENTITY, idem: e, right: ElemId::IDENTITY }
    }

    /// The generator letters, Coxeter generators first.
    pub fn letters(&self) -> Vec<Letter> {
        self.group
            .graph()
            .generators()
            .map(Letter::Gen)
            .chain(self.lattice().elements().map(Letter::Idem))
            .collect()
    }

    pub fn letter_element(&self, x: Letter) -> RennerElement {
        match x {
            Letter::Gen(s) => self.generator(s),
            Letter::Idem(e) => self.idempotent(e),
        }
    }

    /// True when the stored triple satisfies both reducedness conditions.
    pub fn is_normal(&self, r: &RennerElement) -> bool {
        match *r {
            RennerElement::Unit(_) => true,
            RennerElement::Singular { left, idem, right } => {
                self.group
                    .is_reduced_pair(left, GenSet::EMPTY, self.data.fixing(idem))
                    && self
                        .group
                        .is_reduced_pair(right, self.data.type_of(idem), GenSet::EMPTY)
            }
        }
    }

    /// Splits an element of `W_{type(e)}` into its fixing and commuting
    /// factors, which commute with each other.
    fn split_type_factor(&self, p: ElemId, e: LatId) -> (ElemId, ElemId) {
        let fixing = self.data.fixing(e);
        let g = &self.group;
        let mut fix = ElemId::IDENTITY;
        let mut com = ElemId::IDENTITY;
        for &s in g.word(p) {
            if fixing.contains(s) {
                fix = g.right_mul(fix, s);
            } else {
                debug_assert!(self.data.commuting(e).contains(s));
                com = g.right_mul(com, s);
            }
        }
        (fix, com)
    }

    /// The unique normal decomposition of the product `w1 * e * w2`.
    pub fn normalize(&self, w1: ElemId, e: LatId, w2: ElemId) -> RennerElement {
        let g = &self.group;
        // Strip the type part of w2 to the left of e.
        let (right, p) = g.coset_reduce(w2, self.data.type_of(e), Side::Left);
        // e * p: the fixing factor is absorbed, the commuting factor
        // crosses e into the left slot.
        let (_, com) = self.split_type_factor(p, e);
        let w1 = g.mul(w1, com);
        // The fixing part of w1 on its right is absorbed by e.
        let (left, _) = g.coset_reduce(w1, self.data.fixing(e), Side::Right);
        RennerElement::Singular { left, idem: e, right }
    }

    fn meet_scan(&self, e: LatId, f: LatId, w: ElemId) -> Option<LatId> {
        let supp = self.group.support(w);
        let lat = self.lattice();
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

    /// The witnessed meet: the greatest `h <= e, f` whose type contains
    /// the support of `w`, realising the rewrite `e * w * f = h`.
    ///
    /// `w` must be reduced between the types of `e` and `f`.
    pub fn meet_with_witness(
        &self,
        e: LatId,
        f: LatId,
        w: ElemId,
    ) -> Result<LatId, RennerError> {
        let context = || {
            (
                self.lattice().label(e).to_string(),
                self.lattice().label(f).to_string(),
                self.group.display_word(w),
            )
        };
        if !self
            .group
            .is_reduced_pair(w, self.data.type_of(e), self.data.type_of(f))
        {
            let (e, f, word) = context();
            return Err(RennerError::NotReduced { e, f, word });
        }
        self.meet_scan(e, f, w).ok_or_else(|| {
            let (e, f, word) = context();
            RennerError::NoGreatestElement { e, f, word }
        })
    }

    /// The product of two normal forms, as a normal form.
    pub fn mul(&self, a: &RennerElement, b: &RennerElement) -> RennerElement {
        use RennerElement::*;
        let g = &self.group;
        match (*a, *b) {
            (Unit(x), Unit(y)) => Unit(g.mul(x, y)),
            (Unit(x), Singular { left, idem, right }) => {
                self.normalize(g.mul(x, left), idem, right)
            }
            (Singular { left, idem, right }, Unit(y)) => {
                self.normalize(left, idem, g.mul(right, y))
            }
            (
                Singular { left: w1, idem: e, right: w2 },
                Singular { left: v1, idem: f, right: v2 },
            ) => {
                let u = g.mul(w2, v1);
                let (a2, d, b1) =
                    g.double_coset_reduce(u, self.data.type_of(e), self.data.type_of(f));
                let (_, a_com) = self.split_type_factor(a2, e);
                let (_, b_com) = self.split_type_factor(b1, f);
                let h = self
                    .meet_scan(e, f, d)
                    .expect("validated data admits every witnessed meet");
                self.normalize(g.mul(w1, a_com), h, g.mul(b_com, v2))
            }
        }
    }

    /// Minimal generator-weighted word length: the group length of the
    /// unit, or the sum of the two group factors of a singular form.
    pub fn length(&self, r: &RennerElement) -> u32 {
        match *r {
            RennerElement::Unit(w) => self.group.length(w),
            RennerElement::Singular { left, right, .. } => {
                self.group.length(left) + self.group.length(right)
            }
        }
    }

    /// A minimal word for `r` over the generator letters.
    pub fn minimal_word(&self, r: &RennerElement) -> Vec<Letter> {
        match *r {
            RennerElement::Unit(w) => {
                self.group.word(w).iter().map(|&s| Letter::Gen(s)).collect()
            }
            RennerElement::Singular { left, idem, right } => {
                let mut word: Vec<Letter> =
                    self.group.word(left).iter().map(|&s| Letter::Gen(s)).collect();
                word.push(Letter::Idem(idem));
                word.extend(self.group.word(right).iter().map(|&s| Letter::Gen(s)));
                word
            }
        }
    }

    /// Sort key realising shortlex order on normal-form words, with
    /// Coxeter letters ordered before idempotent letters.
    pub fn shortlex_key(&self, r: &RennerElement) -> (usize, Vec<u32>) {
        let ngen = self.group.generator_count() as u32;
        let key: Vec<u32> = self
            .minimal_word(r)
            .iter()
            .map(|letter| match letter {
                Letter::Gen(s) => s.0 as u32,
                Letter::Idem(e) => ngen + e.0 as u32,
            })
            .collect();
        (key.len(), key)
    }

    /// Classifies the product of a generator letter with `r` on the given
    /// side, exposing the absorption or crossing witness when one exists.
    pub fn matsumoto_case(&self, r: &RennerElement, x: Letter, side: Side) -> MatsumotoCase {
        let g = &self.group;
        let s = match x {
            Letter::Idem(e) => {
                let product = match side {
                    Side::Left => self.mul(&self.idempotent(e), r),
                    Side::Right => self.mul(r, &self.idempotent(e)),
                };
                let drop = self.length(r) - self.length(&product);
                return MatsumotoCase::Idempotent { drop };
            }
            Letter::Gen(s) => s,
        };
        match (*r, side) {
            (RennerElement::Unit(w), Side::Left) => {
                if g.length(g.left_mul(s, w)) > g.length(w) {
                    MatsumotoCase::Up { crossed: None }
                } else {
                    MatsumotoCase::Down { crossed: None }
                }
            }
            (RennerElement::Unit(w), Side::Right) => {
                if g.length(g.right_mul(w, s)) > g.length(w) {
                    MatsumotoCase::Up { crossed: None }
                } else {
                    MatsumotoCase::Down { crossed: None }
                }
            }
            (RennerElement::Singular { left, idem, .. }, Side::Left) => {
                let sw1 = g.left_mul(s, left);
                if g.length(sw1) < g.length(left) {
                    return MatsumotoCase::Down { crossed: None };
                }
                if g.is_reduced_pair(sw1, GenSet::EMPTY, self.data.fixing(idem)) {
                    return MatsumotoCase::Up { crossed: None };
                }
                let witness = self
                    .data
                    .fixing(idem)
                    .iter()
                    .find(|&u| g.right_mul(left, u) == sw1)
                    .expect("a length-neutral letter is absorbed by a fixing generator");
                MatsumotoCase::Fixed { witness }
            }
            (RennerElement::Singular { left, idem, right }, Side::Right) => {
                let w2t = g.right_mul(right, s);
                if g.length(w2t) < g.length(right) {
                    return MatsumotoCase::Down { crossed: None };
                }
                if g.is_reduced_pair(w2t, self.data.type_of(idem), GenSet::EMPTY) {
                    return MatsumotoCase::Up { crossed: None };
                }
                let u = self
                    .data
                    .type_of(idem)
                    .iter()
                    .find(|&u| g.left_mul(u, right) == w2t)
                    .expect("a non-reduced letter crosses as a type generator");
                if self.data.fixing(idem).contains(u) {
                    MatsumotoCase::Fixed { witness: u }
                } else if g.length(g.right_mul(left, u)) > g.length(left) {
                    MatsumotoCase::Up { crossed: Some(u) }
                } else {
                    MatsumotoCase::Down { crossed: Some(u) }
                }
            }
        }
    }

    /// Enumerates the whole monoid as the closure of the generator
    /// letters, plus its idempotent subset.
    pub fn enumerate(&self, cap: usize) -> Result<ElementTable, RennerError> {
        let generators: Vec<RennerElement> =
            self.letters().into_iter().map(|x| self.letter_element(x)).collect();
        let mut index: HashMap<RennerElement, u32> = HashMap::new();
        let mut elements = vec![RennerElement::IDENTITY];
        index.insert(RennerElement::IDENTITY, 0);
        let mut cursor = 0;
        while cursor < elements.len() {
            let current = elements[cursor];
            cursor += 1;
            for gen in &generators {
                let next = self.mul(&current, gen);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(RennerError::CapExceeded { cap });
                    }
                    index.insert(next, elements.len() as u32);
                    elements.push(next);
                }
            }
        }
        elements.sort_by_cached_key(|r| self.shortlex_key(r));
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, i as u32))
            .collect();
        let idempotents = elements
            .iter()
            .enumerate()
            .filter(|(_, r)| self.mul(r, r) == **r)
            .map(|(i, _)| i as u32)
            .collect();
        Ok(ElementTable { elements, index, idempotents })
    }

    /// Checks every instance of the five defining relation families as an
    /// equality of normal forms.
    pub fn verify_presentation(&self) -> PresentationReport {
        let mut report = PresentationReport::default();
        let g = &self.group;
        let graph = g.graph();
        let lat = self.lattice();

        for s in graph.generators() {
            let square = self.mul(&self.generator(s), &self.generator(s));
            report.check(
                square == self.identity(),
                || format!("involution: {0} {0} = 1", graph.label(s)),
            );
        }

        for (s, t, m) in graph.edges() {
            let braid = |a: GenId, b: GenId| {
                let mut prod = self.identity();
                for i in 0..m {
                    let s = if i % 2 == 0 { a } else { b };
                    prod = self.mul(&prod, &self.generator(s));
                }
                prod
            };
            report.check(braid(s, t) == braid(t, s), || {
                format!(
                    "braid of length {m}: alternating {0},{1} = alternating {1},{0}",
                    graph.label(s),
                    graph.label(t)
                )
            });
        }
        // Commuting pairs carry the braid relation of length 2.
        for s in graph.generators() {
            for t in graph.generators() {
                if s < t && graph.order(s, t) == 2 {
                    let st = self.mul(&self.generator(s), &self.generator(t));
                    let ts = self.mul(&self.generator(t), &self.generator(s));
                    report.check(st == ts, || {
                        format!("commutation: {} {}", graph.label(s), graph.label(t))
                    });
                }
            }
        }

        for e in lat.elements() {
            let ee = self.idempotent(e);
            for s in self.data.commuting(e).iter() {
                let se = self.mul(&self.generator(s), &ee);
                let es = self.mul(&ee, &self.generator(s));
                report.check(se == es && se != ee, || {
                    format!(
                        "commuting action: {0} {1} = {1} {0} != {1}",
                        graph.label(s),
                        lat.label(e)
                    )
                });
            }
            for s in self.data.fixing(e).iter() {
                let se = self.mul(&self.generator(s), &ee);
                let es = self.mul(&ee, &self.generator(s));
                report.check(se == ee && es == ee, || {
                    format!(
                        "fixing action: {0} {1} = {1} {0} = {1}",
                        graph.label(s),
                        lat.label(e)
                    )
                });
            }
        }

        for e in lat.elements() {
            for f in lat.elements() {
                for w in g.elements() {
                    if !g.is_reduced_pair(w, self.data.type_of(e), self.data.type_of(f)) {
                        continue;
                    }
                    let Some(h) = self.meet_scan(e, f, w) else {
                        report.check(false, || {
                            format!(
                                "witnessed meet missing for ({}, {}, {})",
                                lat.label(e),
                                lat.label(f),
                                g.display_word(w)
                            )
                        });
                        continue;
                    };
                    let lhs = self.mul(
                        &self.mul(&self.idempotent(e), &self.unit(w)),
                        &self.idempotent(f),
                    );
                    report.check(lhs == self.idempotent(h), || {
                        format!(
                            "witnessed meet: {} {} {} = {}",
                            lat.label(e),
                            g.display_word(w),
                            lat.label(f),
                            lat.label(h)
                        )
                    });
                }
            }
        }

        report
    }

    /// Renders `r` in normal-form notation: `1`, a word of generator
    /// labels, or `w1 . e . w2` with empty word slots left blank.
    pub fn display(&self, r: &RennerElement) -> String {
        match *r {
            RennerElement::Unit(w) => self.group.display_word(w),
            RennerElement::Singular { left, idem, right } => {
                let word = |w: ElemId| {
                    if w == ElemId::IDENTITY {
                        String::new()
                    } else {
                        self.group.display_word(w)
                    }
                };
                format!(
                    "{} . {} . {}",
                    word(left),
                    self.lattice().label(idem),
                    word(right)
                )
                .trim()
                .to_string()
            }
        }
    }

    /// Parses normal-form notation: `w1 . e . w2`, a bare word of
    /// generator labels, a bare idempotent label, or `1`/empty for the
    /// identity. The parsed triple is normalized.
    pub fn parse_element(&self, input: &str) -> Result<RennerElement, RennerError> {
        let err = |reason: &str| RennerError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let word_of = |part: &str| -> Result<ElemId, RennerError> {
            let mut w = ElemId::IDENTITY;
            for token in part.split_whitespace() {
                if token == "1" {
                    continue;
                }
                let s = self
                    .group
                    .graph()
                    .generator_by_label(token)
                    .ok_or_else(|| err(&format!("unknown generator `{token}`")))?;
                w = self.group.right_mul(w, s);
            }
            Ok(w)
        };
        let parts: Vec<&str> = input.split('.').collect();
        match parts.as_slice() {
            [single] => {
                let tokens: Vec<&str> = single.split_whitespace().collect();
                if let [token] = tokens.as_slice() {
                    if let Some(e) = self.lattice().by_label(token) {
                        return Ok(self.idempotent(e));
                    }
                }
                Ok(self.unit(word_of(single)?))
            }
            [left, mid, right] => {
                let tokens: Vec<&str> = mid.split_whitespace().collect();
                let [label] = tokens.as_slice() else {
                    return Err(err("expected exactly one idempotent label between the dots"));
                };
                let e = self
                    .lattice()
                    .by_label(label)
                    .ok_or_else(|| err(&format!("unknown idempotent `{label}`")))?;
                Ok(self.normalize(word_of(left)?, e, word_of(right)?))
            }
            _ => Err(err("expected `w1 . e . w2` or a plain word")),
        }
    }
}

/// Outcome of a relation sweep: instance count and failed instances.
#[derive(Debug, Default)]
pub struct PresentationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PresentationReport {
    pub(crate) fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: PresentationReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for PresentationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "{} relation instances hold", self.checked)
        } else {
            writeln!(
                f,
                "{} of {} relation instances failed:",
                self.failures.len(),
                self.checked
            )?;
            for failure in &self.failures {
                writeln!(f, "  {failure}")?;
            }
            Ok(())
        }
    }
}

/// The fully enumerated element set of a finite Renner monoid, in
/// shortlex order of normal-form words.
#[derive(Debug, Clone)]
pub struct ElementTable {
    elements: Vec<RennerElement>,
    index: HashMap<RennerElement, u32>,
    idempotents: Vec<u32>,
}

impl ElementTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[RennerElement] {
        &self.elements
    }

    pub fn get(&self, i: u32) -> RennerElement {
        self.elements[i as usize]
    }

    pub fn index_of(&self, r: &RennerElement) -> Option<u32> {
        self.index.get(r).copied()
    }

    /// Indices of the elements with `r * r = r`.
    pub fn idempotent_indices(&self) -> &[u32] {
        &self.idempotents
    }
}
