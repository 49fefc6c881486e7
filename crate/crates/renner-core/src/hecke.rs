//! The generic Hecke algebra of a finite generalised Renner monoid: the
//! free `Z[q]`-module on the monoid, with multiplication defined by the
//! length-directed deformation rules
//!
//! ```text
//! T_s T_r = T_{sr}                 if l(sr) = l(r) + 1
//! T_s T_r = q T_r                  if l(sr) = l(r)
//! T_s T_r = (q-1) T_r + q T_{sr}   if l(sr) = l(r) - 1
//! T_e T_r = q^(l(r)-l(er)) T_{er}  for idempotent letters e
//! ```
//!
//! and their right-handed mirrors. A product of basis elements factors
//! the left operand into a minimal word and folds the letters onto the
//! right operand; specialising `q` to 1 recovers the monoid ring.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::bigint::BigInt;
use num::traits::Zero;

use crate::coxeter::Side;
use crate::poly::IntPoly;
use crate::renner::{
    ElementTable, Letter, PresentationReport, RennerElement, RennerError, RennerMonoid,
};

/// How one generator letter acts on one basis element from one side.
#[derive(Debug, Clone, Copy)]
enum LetterAction {
    /// `T_x T_r = T_target`
    Up { target: u32 },
    /// `T_x T_r = q T_r`
    Fixed,
    /// `T_x T_r = (q-1) T_r + q T_target`
    Down { target: u32 },
    /// `T_x T_r = q^exp T_target` (idempotent letters)
    Power { target: u32, exp: u32 },
}

/// A finitely supported `Z[q]`-combination of basis elements `T_r`,
/// keyed by the element's index in the algebra's table.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeckeElement {
    terms: BTreeMap<u32, IntPoly>,
}

impl HeckeElement {
    pub fn zero() -> HeckeElement {
        HeckeElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(index: u32, poly: IntPoly) -> HeckeElement {
        let mut h = HeckeElement::zero();
        h.add_term(index, &poly);
        h
    }

    pub fn add_term(&mut self, index: u32, poly: &IntPoly) {
        if poly.is_zero() {
            return;
        }
        let entry = self.terms.entry(index).or_default();
        *entry += poly;
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    /// `self += factor * other`.
    pub fn scaled_add(&mut self, other: &HeckeElement, factor: &IntPoly) {
        if factor.is_zero() {
            return;
        }
        for (&index, poly) in &other.terms {
            self.add_term(index, &(poly * factor));
        }
    }

    pub fn coeff(&self, index: u32) -> IntPoly {
        self.terms.get(&index).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &IntPoly)> {
        self.terms.iter().map(|(&i, p)| (i, p))
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }
}

/// Structure constants `T_a T_b = sum_c mu(a,b,c) T_c` with coefficients
/// in `C` (integer polynomials generically, integers after evaluation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants<C> {
    /// Basis size; entries absent from the map are zero.
    pub dim: usize,
    /// Normal-form notation per basis index, in table order.
    pub labels: Vec<String>,
    /// The specialisation point, if any.
    pub q: Option<i64>,
    pub entries: BTreeMap<(u32, u32, u32), C>,
}

impl<C: std::fmt::Display> StructureConstants<C> {
    /// Stable line format shared by the generic table, its
    /// specialisations and the convolution oracle, so tables can be
    /// compared with a plain diff.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str("renner-hecke-table v1\n");
        match self.q {
            Some(q) => writeln!(out, "q {q}").unwrap(),
            None => out.push_str("q generic\n"),
        }
        writeln!(out, "dim {}", self.dim).unwrap();
        writeln!(out, "entries {}", self.entries.len()).unwrap();
        for (&(a, b, c), coeff) in &self.entries {
            writeln!(
                out,
                "[{}] [{}] [{}] {}",
                self.labels[a as usize], self.labels[b as usize], self.labels[c as usize], coeff
            )
            .unwrap();
        }
        out
    }
}

/// The generic Hecke algebra over the enumerated basis of a monoid.
pub struct HeckeAlgebra<'a> {
    monoid: &'a RennerMonoid,
    table: ElementTable,
    lengths: Vec<u32>,
    letters: Vec<Letter>,
    /// Letter words of each basis element, as indices into `letters`.
    words: Vec<Vec<u32>>,
    left_actions: Vec<Vec<LetterAction>>,
    right_actions: Vec<Vec<LetterAction>>,
}

impl<'a> HeckeAlgebra<'a> {
    pub fn new(monoid: &'a RennerMonoid, cap: usize) -> Result<HeckeAlgebra<'a>, RennerError> {
        let table = monoid.enumerate(cap)?;
        Ok(HeckeAlgebra::over_table(monoid, table))
    }

    pub fn over_table(monoid: &'a RennerMonoid, table: ElementTable) -> HeckeAlgebra<'a> {
        assert_eq!(
            table.index_of(&RennerElement::IDENTITY),
            Some(0),
            "shortlex order puts the identity first"
        );
        let letters = monoid.letters();
        let letter_index: BTreeMap<Letter, u32> = letters
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i as u32))
            .collect();
        let lengths: Vec<u32> =
            table.elements().iter().map(|r| monoid.length(r)).collect();
        let words: Vec<Vec<u32>> = table
            .elements()
            .iter()
            .map(|r| {
                monoid
                    .minimal_word(r)
                    .into_iter()
                    .map(|x| letter_index[&x])
                    .collect()
            })
            .collect();

        let action_for = |x: Letter, r: &RennerElement, side: Side| {
            let x_elem = monoid.letter_element(x);
            let product = match side {
                Side::Left => monoid.mul(&x_elem, r),
                Side::Right => monoid.mul(r, &x_elem),
            };
            let target = table.index_of(&product).expect("closed under products");
            let before = monoid.length(r);
            let after = monoid.length(&product);
            match x {
                Letter::Gen(_) => {
                    if after > before {
                        LetterAction::Up { target }
                    } else if after == before {
                        debug_assert_eq!(product, *r);
                        LetterAction::Fixed
                    } else {
                        LetterAction::Down { target }
                    }
                }
                Letter::Idem(_) => LetterAction::Power { target, exp: before - after },
            }
        };
        let actions = |side: Side| -> Vec<Vec<LetterAction>> {
            letters
                .iter()
                .map(|&x| {
                    table
                        .elements()
                        .iter()
                        .map(|r| action_for(x, r, side))
                        .collect()
                })
                .collect()
        };
        let left_actions = actions(Side::Left);
        let right_actions = actions(Side::Right);

        HeckeAlgebra { monoid, table, lengths, letters, words, left_actions, right_actions }
    }

    pub fn monoid(&self) -> &RennerMonoid {
        self.monoid
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn length(&self, index: u32) -> u32 {
        self.lengths[index as usize]
    }

    pub fn one(&self) -> HeckeElement {
        HeckeElement::term(0, IntPoly::one())
    }

    pub fn basis_index(&self, index: u32) -> HeckeElement {
        HeckeElement::term(index, IntPoly::one())
    }

    pub fn basis(&self, r: &RennerElement) -> Option<HeckeElement> {
        self.table.index_of(r).map(|i| self.basis_index(i))
    }

    fn letter_position(&self, x: Letter) -> u32 {
        self.letters
            .iter()
            .position(|&y| y == x)
            .expect("letter belongs to the monoid") as u32
    }

    fn apply_action(actions: &[LetterAction], h: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (index, poly) in h.terms() {
            match actions[index as usize] {
                LetterAction::Up { target } => out.add_term(target, poly),
                LetterAction::Fixed => out.add_term(index, &(poly * &IntPoly::q())),
                LetterAction::Down { target } => {
                    out.add_term(index, &(poly * &IntPoly::q_minus_one()));
                    out.add_term(target, &(poly * &IntPoly::q()));
                }
                LetterAction::Power { target, exp } => {
                    out.add_term(target, &(poly * &IntPoly::q_pow(exp)));
                }
            }
        }
        out
    }

    /// `T_x * h` by the left deformation rules, extended linearly.
    pub fn left_mul_letter(&self, x: Letter, h: &HeckeElement) -> HeckeElement {
        Self::apply_action(&self.left_actions[self.letter_position(x) as usize], h)
    }

    /// `h * T_x` by the mirrored rules.
    pub fn right_mul_letter(&self, h: &HeckeElement, x: Letter) -> HeckeElement {
        Self::apply_action(&self.right_actions[self.letter_position(x) as usize], h)
    }

    /// `T_r * h` where `r` is the basis element with the given index:
    /// folds the minimal word of `r` right to left onto `h`.
    pub fn basis_mul(&self, index: u32, h: &HeckeElement) -> HeckeElement {
        let mut acc = h.clone();
        for &pos in self.words[index as usize].iter().rev() {
            acc = Self::apply_action(&self.left_actions[pos as usize], &acc);
        }
        acc
    }

    /// The bilinear product.
    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (index, poly) in a.terms() {
            out.scaled_add(&self.basis_mul(index, b), poly);
        }
        out
    }

    /// `h * T_r` by folding the minimal word of `r` left to right with
    /// the right rules. Agrees with [`HeckeAlgebra::mul`]; kept as the
    /// independent route for consistency checks.
    pub fn mul_via_right_rules(&self, h: &HeckeElement, index: u32) -> HeckeElement {
        let mut acc = h.clone();
        for &pos in self.words[index as usize].iter() {
            acc = Self::apply_action(&self.right_actions[pos as usize], &acc);
        }
        acc
    }

    /// All pairwise basis products `T_a T_b`, flattened row-major.
    pub fn pair_products(&self) -> Vec<HeckeElement> {
        let dim = self.dim() as u32;
        let mut out = Vec::with_capacity((dim * dim) as usize);
        for a in 0..dim {
            for b in 0..dim {
                out.push(self.basis_mul(a, &self.basis_index(b)));
            }
        }
        out
    }

    fn labels(&self) -> Vec<String> {
        self.table
            .elements()
            .iter()
            .map(|r| self.monoid.display(r))
            .collect()
    }

    /// The generic structure-constant table over `Z[q]`.
    pub fn generic_table(&self) -> StructureConstants<IntPoly> {
        let dim = self.dim() as u32;
        let pairs = self.pair_products();
        let mut entries = BTreeMap::new();
        for a in 0..dim {
            for b in 0..dim {
                for (c, poly) in pairs[(a * dim + b) as usize].terms() {
                    entries.insert((a, b, c), poly.clone());
                }
            }
        }
        StructureConstants { dim: self.dim(), labels: self.labels(), q: None, entries }
    }

    /// The integer structure constants at `q = q0`. At `q0 = 1` this is
    /// the multiplication table of the monoid ring.
    pub fn specialize(&self, q0: i64) -> StructureConstants<BigInt> {
        let generic = self.generic_table();
        let entries = generic
            .entries
            .iter()
            .filter_map(|(&key, poly)| {
                let value = poly.eval_at(q0);
                (!value.is_zero()).then_some((key, value))
            })
            .collect();
        StructureConstants { dim: generic.dim, labels: generic.labels, q: Some(q0), entries }
    }

    /// Checks every instance of the five Hecke relation families.
    pub fn verify_presentation(&self) -> PresentationReport {
        let mut report = PresentationReport::default();
        let m = self.monoid;
        let g = m.group();
        let graph = g.graph();
        let lat = m.lattice();
        let basis_of = |r: &RennerElement| self.basis(r).expect("element enumerated");
        let t_gen = |s| basis_of(&m.generator(s));
        let t_idem = |e| basis_of(&m.idempotent(e));

        // Quadratic relation: T_s^2 = (q-1) T_s + q T_1.
        for s in graph.generators() {
            let lhs = self.mul(&t_gen(s), &t_gen(s));
            let mut rhs = HeckeElement::zero();
            rhs.scaled_add(&t_gen(s), &IntPoly::q_minus_one());
            rhs.scaled_add(&self.one(), &IntPoly::q());
            report.check(lhs == rhs, || {
                format!("quadratic relation for {}", graph.label(s))
            });
        }

        // Braid relations, including commutations (m = 2).
        for s in graph.generators() {
            for t in graph.generators() {
                if s >= t {
                    continue;
                }
                let m_label = graph.order(s, t);
                let braid = |a, b| {
                    let mut acc = self.one();
                    for i in 0..m_label {
                        let x = if i % 2 == 0 { a } else { b };
                        acc = self.mul(&acc, &t_gen(x));
                    }
                    acc
                };
                report.check(braid(s, t) == braid(t, s), || {
                    format!(
                        "braid relation of length {m_label} for {} and {}",
                        graph.label(s),
                        graph.label(t)
                    )
                });
            }
        }

        for e in lat.elements() {
            // Commuting letters: T_s T_e = T_e T_s.
            for s in m.data().commuting(e).iter() {
                let lhs = self.mul(&t_gen(s), &t_idem(e));
                let rhs = self.mul(&t_idem(e), &t_gen(s));
                report.check(lhs == rhs, || {
                    format!("commuting relation for {} and {}", graph.label(s), lat.label(e))
                });
            }
            // Fixing letters: T_s T_e = T_e T_s = q T_e.
            for s in m.data().fixing(e).iter() {
                let lhs = self.mul(&t_gen(s), &t_idem(e));
                let rhs = self.mul(&t_idem(e), &t_gen(s));
                let mut expected = HeckeElement::zero();
                expected.scaled_add(&t_idem(e), &IntPoly::q());
                report.check(lhs == expected && rhs == expected, || {
                    format!("fixing relation for {} and {}", graph.label(s), lat.label(e))
                });
            }
        }

        // Witnessed meets: T_e T_w T_f = q^l(w) T_{meet}.
        for e in lat.elements() {
            for f in lat.elements() {
                for w in g.elements() {
                    if !g.is_reduced_pair(w, m.data().type_of(e), m.data().type_of(f)) {
                        continue;
                    }
                    let h = m
                        .meet_with_witness(e, f, w)
                        .expect("validated data admits witnessed meets");
                    let lhs = self.mul(
                        &self.mul(&t_idem(e), &basis_of(&m.unit(w))),
                        &t_idem(f),
                    );
                    let mut rhs = HeckeElement::zero();
                    rhs.scaled_add(&t_idem(h), &IntPoly::q_pow(g.length(w)));
                    report.check(lhs == rhs, || {
                        format!(
                            "meet relation for {} `{}` {}",
                            lat.label(e),
                            g.display_word(w),
                            lat.label(f)
                        )
                    });
                }
            }
        }

        report
    }

    /// Renders terms like `q * [. e0 .]`, joined by ` + `; multi-term
    /// polynomial coefficients are parenthesised.
    pub fn display_element(&self, h: &HeckeElement) -> String {
        if h.is_zero() {
            return "0".to_string();
        }
        let labels = self.labels();
        h.terms()
            .map(|(index, poly)| {
                let label = &labels[index as usize];
                let nonzero = poly.coeffs().iter().filter(|c| !c.is_zero()).count();
                let rendered = poly.to_string();
                if rendered == "1" {
                    format!("[{label}]")
                } else if nonzero > 1 {
                    format!("({rendered}) * [{label}]")
                } else {
                    format!("{rendered} * [{label}]")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
