//! Exhaustive no-go check for a basis-to-basis match at n = 2, p = 2.
//!
//! The convolution algebra of M_2(F_2) in its double-coset basis and the
//! generic Hecke algebra of the rook monoid at q = 2 both deform the
//! monoid ring of R_2, but no relabelling of the seven basis elements
//! combined with any rescaling makes their multiplication tables equal:
//! the search below tries all 5040 bijections with free positive
//! rational scale factors and finds none. A control run against the
//! convolution table itself finds exactly the identity, so the solver is
//! complete for this problem size.
//!
//! This pins down that the mismatches reported by `compare_with_generic`
//! are structural and not an artifact of label or normalisation
//! conventions.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Zero;

use renner_core::catalog::{rook_data, to_matrix};
use renner_core::hecke::HeckeAlgebra;
use renner_core::renner::RennerMonoid;

fn mat_mul(n: usize, p: u64, a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u64;
            for k in 0..n {
                acc += a[i * n + k] as u64 * b[k * n + j] as u64;
            }
            out[i * n + j] = (acc % p) as u8;
        }
    }
    out
}

fn index_of(p: u64, m: &[u8]) -> usize {
    m.iter().rev().fold(0u64, |acc, &e| acc * p + e as u64) as usize
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![0]];
    }
    let smaller = permutations(n - 1);
    let mut out = Vec::new();
    for perm in smaller {
        for pos in 0..n {
            let mut next = perm.clone();
            next.insert(pos, n - 1);
            out.push(next);
        }
    }
    out
}

/// Raw pair counts of the convolution algebra of M_2(F_2) over the
/// double-coset indicator sums, plus the normalisers from the length
/// function, in the element-table order of the rook monoid.
struct Setup {
    dim: usize,
    raw: BTreeMap<(usize, usize, usize), u64>,
    norm: Vec<BigRational>,
    generic: BTreeMap<(usize, usize, usize), BigRational>,
}

fn setup() -> Setup {
    let (n, p) = (2usize, 2u64);
    let monoid = RennerMonoid::build(rook_data(n), 100_000).unwrap();
    let hecke = HeckeAlgebra::new(&monoid, 100_000).unwrap();
    let table = hecke.table().clone();
    let dim = table.len();

    let nn = n * n;
    let size = p.pow(nn as u32) as usize;
    let mats: Vec<Vec<u8>> = (0..size)
        .map(|idx| {
            let mut rem = idx as u64;
            let mut m = vec![0u8; nn];
            for pos in 0..nn {
                m[pos] = (rem % p) as u8;
                rem /= p;
            }
            m
        })
        .collect();
    let borel: Vec<usize> = (0..size)
        .filter(|&i| {
            let m = &mats[i];
            (0..n).all(|r| m[r * n + r] != 0 && (0..r).all(|c| m[r * n + c] == 0))
        })
        .collect();
    let lifts: Vec<usize> = table
        .elements()
        .iter()
        .map(|r| {
            let rook = to_matrix(&monoid, r).unwrap();
            let mut m = vec![0u8; nn];
            for j in 0..n {
                if let Some(i) = rook.col(j) {
                    m[i * n + j] = 1;
                }
            }
            index_of(p, &m)
        })
        .collect();
    let mut class_of = vec![usize::MAX; size];
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for (k, &rep) in lifts.iter().enumerate() {
        for &b1 in &borel {
            let left = mat_mul(n, p, &mats[b1], &mats[rep]);
            for &b2 in &borel {
                let x = index_of(p, &mat_mul(n, p, &left, &mats[b2]));
                if class_of[x] == usize::MAX {
                    class_of[x] = k;
                    members[k].push(x);
                }
            }
        }
    }
    let mut raw = BTreeMap::new();
    for i in 0..dim {
        for j in 0..dim {
            let mut counts = vec![0u64; dim];
            for &x in &members[i] {
                for &y in &members[j] {
                    let z = index_of(p, &mat_mul(n, p, &mats[x], &mats[y]));
                    for (k, &rep) in lifts.iter().enumerate() {
                        if z == rep {
                            counts[k] += 1;
                        }
                    }
                }
            }
            for k in 0..dim {
                if counts[k] > 0 {
                    raw.insert((i, j, k), counts[k]);
                }
            }
        }
    }
    let norm: Vec<BigRational> = (0..dim)
        .map(|k| {
            let len = monoid.length(&table.get(k as u32));
            BigRational::new(BigInt::from(p).pow(len), BigInt::from(members[k].len() as u64))
        })
        .collect();
    let generic = hecke
        .specialize(p as i64)
        .entries
        .iter()
        .map(|(&(a, b, c), v)| {
            ((a as usize, b as usize, c as usize), BigRational::from(v.clone()))
        })
        .collect();
    Setup { dim, raw, norm, generic }
}

/// Number of (bijection, scaling) pairs realising the target table from
/// the raw pair counts.
fn count_solutions(
    dim: usize,
    raw: &BTreeMap<(usize, usize, usize), u64>,
    target: &dyn Fn(usize, usize, usize) -> BigRational,
) -> usize {
    let sqrt_rational = |x: &BigRational| -> Option<BigRational> {
        let num = x.numer().sqrt();
        let den = x.denom().sqrt();
        let candidate = BigRational::new(num, den);
        (&candidate * &candidate == *x).then_some(candidate)
    };
    let mut found = 0;
    for sigma in permutations(dim) {
        let support_ok = (0..dim).all(|i| {
            (0..dim).all(|j| {
                (0..dim).all(|k| {
                    raw.contains_key(&(sigma[i], sigma[j], sigma[k]))
                        == !target(i, j, k).is_zero()
                })
            })
        });
        if !support_ok {
            continue;
        }
        // Solve raw(sigma_i, sigma_j, sigma_k) * d_i d_j / d_k = target(i,j,k)
        // for the unknown positive scale factors d.
        let mut d: Vec<Option<BigRational>> = vec![None; dim];
        let mut consistent = true;
        let mut changed = true;
        while changed && consistent {
            changed = false;
            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        let t = target(i, j, k);
                        if t.is_zero() {
                            continue;
                        }
                        let r = BigRational::from(BigInt::from(
                            raw[&(sigma[i], sigma[j], sigma[k])],
                        ));
                        let pin = |slot: usize, value: BigRational, d: &mut Vec<Option<BigRational>>, changed: &mut bool, consistent: &mut bool| {
                            match &d[slot] {
                                Some(existing) => {
                                    if *existing != value {
                                        *consistent = false;
                                    }
                                }
                                None => {
                                    d[slot] = Some(value);
                                    *changed = true;
                                }
                            }
                        };
                        if i == j && j == k {
                            pin(i, &t / &r, &mut d, &mut changed, &mut consistent);
                        } else if i == k {
                            pin(j, &t / &r, &mut d, &mut changed, &mut consistent);
                        } else if j == k {
                            pin(i, &t / &r, &mut d, &mut changed, &mut consistent);
                        } else if i == j {
                            if let Some(dk) = d[k].clone() {
                                let square = &t * &dk / &r;
                                match sqrt_rational(&square) {
                                    Some(value) => pin(
                                        i,
                                        value,
                                        &mut d,
                                        &mut changed,
                                        &mut consistent,
                                    ),
                                    None => consistent = false,
                                }
                            } else if let Some(di) = d[i].clone() {
                                pin(k, &r * &di * &di / &t, &mut d, &mut changed, &mut consistent);
                            }
                        } else {
                            match (d[i].clone(), d[j].clone(), d[k].clone()) {
                                (Some(di), Some(dj), Some(dk)) => {
                                    if &r * &di * &dj / &dk != t {
                                        consistent = false;
                                    }
                                }
                                (Some(di), Some(dj), None) => {
                                    d[k] = Some(&r * &di * &dj / &t);
                                    changed = true;
                                }
                                (Some(di), None, Some(dk)) => {
                                    d[j] = Some(&t * &dk / (&r * &di));
                                    changed = true;
                                }
                                (None, Some(dj), Some(dk)) => {
                                    d[i] = Some(&t * &dk / (&r * &dj));
                                    changed = true;
                                }
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        if !consistent || d.iter().any(Option::is_none) {
            continue;
        }
        let full_check = (0..dim).all(|i| {
            (0..dim).all(|j| {
                (0..dim).all(|k| {
                    let r = raw
                        .get(&(sigma[i], sigma[j], sigma[k]))
                        .map(|&c| BigRational::from(BigInt::from(c)))
                        .unwrap_or_else(BigRational::zero);
                    let lhs = &r * d[i].as_ref().unwrap() * d[j].as_ref().unwrap()
                        / d[k].as_ref().unwrap();
                    lhs == target(i, j, k)
                })
            })
        });
        if full_check {
            found += 1;
        }
    }
    found
}

#[test]
fn solver_control_finds_the_identity() {
    let s = setup();
    let raw = s.raw.clone();
    let norm = s.norm.clone();
    let conv_target = move |i: usize, j: usize, k: usize| -> BigRational {
        match raw.get(&(i, j, k)) {
            Some(&c) => &norm[i] * &norm[j] / &norm[k] * BigRational::from(BigInt::from(c)),
            None => BigRational::zero(),
        }
    };
    assert_eq!(count_solutions(s.dim, &s.raw, &conv_target), 1);
}

#[test]
fn no_relabelling_matches_the_generic_table() {
    let s = setup();
    let generic = s.generic.clone();
    let generic_target = move |i: usize, j: usize, k: usize| -> BigRational {
        generic.get(&(i, j, k)).cloned().unwrap_or_else(BigRational::zero)
    };
    assert_eq!(count_solutions(s.dim, &s.raw, &generic_target), 0);
}
