//! Built-in presentation data, primarily the rook monoid family, and the
//! faithful realization of rook elements as partial permutation matrices.

use std::fmt;

use thiserror::Error;

use crate::coxeter::{CoxeterGraph, ElemId, GenSet};
use crate::lattice::CrossSectionLattice;
use crate::renner::{RennerData, RennerElement, RennerMonoid};

pub use crate::format::{from_file, FormatError};

/// An `n x n` 0/1 matrix with at most one entry per row and per column,
/// stored as a partial injection from columns to rows.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RookMatrix {
    cols: Vec<Option<u8>>,
}

impl RookMatrix {
    pub fn identity(n: usize) -> RookMatrix {
        RookMatrix { cols: (0..n as u8).map(Some).collect() }
    }

    pub fn zero(n: usize) -> RookMatrix {
        RookMatrix { cols: vec![None; n] }
    }

    /// The transposition matrix swapping rows `i` and `i + 1` (0-based).
    pub fn transposition(n: usize, i: usize) -> RookMatrix {
        let mut m = RookMatrix::identity(n);
        m.cols.swap(i, i + 1);
        m
    }

    /// `diag(1^k, 0^(n-k))`.
    pub fn diagonal_rank(n: usize, k: usize) -> RookMatrix {
        RookMatrix {
            cols: (0..n).map(|j| if j < k { Some(j as u8) } else { None }).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.cols.len()
    }

    /// Row index of the single 1 in column `j`, if any.
    pub fn col(&self, j: usize) -> Option<usize> {
        self.cols[j].map(|i| i as usize)
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.cols[j] == Some(i as u8)
    }

    pub fn rank(&self) -> usize {
        self.cols.iter().flatten().count()
    }

    /// Matrix product; matrices act on column vectors, so the right
    /// factor applies first.
    pub fn mul(&self, rhs: &RookMatrix) -> RookMatrix {
        RookMatrix {
            cols: rhs
                .cols
                .iter()
                .map(|&k| k.and_then(|k| self.cols[k as usize]))
                .collect(),
        }
    }

    /// Row and column sums at most one.
    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.cols.len()];
        for &i in self.cols.iter().flatten() {
            if seen[i as usize] {
                return false;
            }
            seen[i as usize] = true;
        }
        true
    }

    /// Every partial permutation matrix of size `n`.
    pub fn enumerate_all(n: usize) -> Vec<RookMatrix> {
        let mut out = Vec::new();
        let mut cols: Vec<Option<u8>> = Vec::new();
        fn rec(n: usize, cols: &mut Vec<Option<u8>>, used: u32, out: &mut Vec<RookMatrix>) {
            if cols.len() == n {
                out.push(RookMatrix { cols: cols.clone() });
                return;
            }
            cols.push(None);
            rec(n, cols, used, out);
            cols.pop();
            for i in 0..n {
                if used >> i & 1 == 0 {
                    cols.push(Some(i as u8));
                    rec(n, cols, used | 1 << i, out);
                    cols.pop();
                }
            }
        }
        rec(n, &mut cols, 0, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for RookMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                write!(f, "{}", if self.entry(i, j) { 1 } else { 0 })?;
                if j + 1 < n {
                    write!(f, " ")?;
                }
            }
            if i + 1 < n {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("the monoid was not built from rook data of size {0}")]
    WrongCatalog(usize),
}

/// Presentation data of the rook monoid `R_n`: partial permutation
/// matrices of size `n`.
///
/// The graph is the chain `s1 - s2 - ... - s(n-1)` with all labels 3; the
/// lattice is the chain `e0 < e1 < ... < e(n-1)` of diagonal rank
/// idempotents (the identity `e_n` is the monoid unit and not listed);
/// `e_i` is fixed by the `s_j` with `j > i` and commutes with those with
/// `j < i`.
pub fn rook_data(n: usize) -> RennerData {
    assert!(n >= 1, "rook data needs n >= 1");
    let graph = CoxeterGraph::new(
        (1..n).map(|i| format!("s{i}")),
        (0..n.saturating_sub(2)).map(|i| (i, i + 1, 3)),
    )
    .expect("chain graph is well-formed");
    let lattice = CrossSectionLattice::new(
        (0..n).map(|i| format!("e{i}")),
        (0..n - 1).map(|i| (i, i + 1)),
    )
    .expect("chain lattice is well-formed");
    let fixing = (0..n)
        .map(|i| GenSet::from_iter((i..n.saturating_sub(1)).map(|j| crate::coxeter::GenId(j as u16))))
        .collect();
    let commuting = (0..n)
        .map(|i| GenSet::from_iter((0..i.saturating_sub(1)).map(|j| crate::coxeter::GenId(j as u16))))
        .collect();
    RennerData::new(graph, lattice, fixing, commuting).expect("rook data is well-formed")
}

/// Rook size of a monoid built from [`rook_data`], if it is one.
pub fn rook_size(m: &RennerMonoid) -> Option<usize> {
    let n = m.lattice().len();
    (n >= 1 && *m.data() == rook_data(n)).then_some(n)
}

/// The matrix realization: a monoid isomorphism onto the `n x n` partial
/// permutation matrices.
///
/// A unit maps to its permutation matrix (column `j` carries the 1 in row
/// `w(j)`), the idempotent `e_k` to `diag(1^k, 0^(n-k))`, and a singular
/// normal form to the corresponding triple product.
pub fn to_matrix(m: &RennerMonoid, r: &RennerElement) -> Result<RookMatrix, CatalogError> {
    let n = m.lattice().len();
    if rook_size(m) != Some(n) {
        return Err(CatalogError::WrongCatalog(n));
    }
    let perm = |w: ElemId| {
        let mut acc = RookMatrix::identity(n);
        for &s in m.group().word(w) {
            acc = acc.mul(&RookMatrix::transposition(n, s.0 as usize));
        }
        acc
    };
    Ok(match *r {
        RennerElement::Unit(w) => perm(w),
        RennerElement::Singular { left, idem, right } => perm(left)
            .mul(&RookMatrix::diagonal_rank(n, idem.0 as usize))
            .mul(&perm(right)),
    })
}
