//! Dense univariate polynomials in `q` over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::traits::{One, Zero};

/// A polynomial in `q` with `BigInt` coefficients, index = degree,
/// normalized so the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> IntPoly {
        IntPoly::from_coeffs(vec![c.into()])
    }

    /// The monomial `q`.
    pub fn q() -> IntPoly {
        IntPoly::q_pow(1)
    }

    /// The monomial `q^k`.
    pub fn q_pow(k: u32) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); k as usize + 1];
        coeffs[k as usize] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `q - 1`.
    pub fn q_minus_one() -> IntPoly {
        IntPoly::from_coeffs(vec![BigInt::from(-1), BigInt::one()])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> IntPoly {
        let mut poly = IntPoly { coeffs };
        poly.normalize();
        poly
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Horner evaluation at an integer point.
    pub fn eval_at(&self, q0: impl Into<BigInt>) -> BigInt {
        let q0 = q0.into();
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &q0 + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Add for IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            self.coeffs[i] += c;
        }
        self.normalize();
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs.clone())
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.into_iter().map(Neg::neg).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl fmt::Display for IntPoly {
    /// Renders like `q^2-q`, `2*q+1`, `-3`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &BigInt::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            let unit = abs.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{abs}*q^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_identities() {
        let q = IntPoly::q();
        let qm1 = IntPoly::q_minus_one();
        assert_eq!(
            &qm1 * &q,
            IntPoly::from_coeffs(vec![BigInt::from(0), BigInt::from(-1), BigInt::from(1)])
        );
        assert_eq!((&qm1 * &q).eval_at(2), BigInt::from(2));
        let qp1 = IntPoly::from_coeffs(vec![BigInt::one(), BigInt::one()]);
        assert_eq!(
            &qp1 * &qp1,
            IntPoly::from_coeffs(vec![BigInt::from(1), BigInt::from(2), BigInt::from(1)])
        );
        assert_eq!(format!("{}", &qm1 * &q), "q^2-q");
        assert_eq!(format!("{}", &qp1 * &qp1), "q^2+2*q+1");
        assert_eq!(format!("{}", IntPoly::zero()), "0");
        assert_eq!(format!("{}", IntPoly::constant(-7)), "-7");
        assert_eq!(format!("{}", qm1), "q-1");
    }

    #[test]
    fn degree_is_additive() {
        let a = IntPoly::from_coeffs(vec![BigInt::from(3), BigInt::from(5)]);
        let b = IntPoly::q_pow(4);
        assert_eq!((&a * &b).degree(), Some(5));
        assert_eq!(IntPoly::zero().degree(), None);
    }

    fn arbitrary_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(-50i64..50, 0..6)
            .prop_map(|cs| IntPoly::from_coeffs(cs.into_iter().map(BigInt::from).collect()))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arbitrary_poly(), b in arbitrary_poly(), c in arbitrary_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            let left = &(&a + &b) * &c;
            let right = &(&a * &c) + &(&b * &c);
            prop_assert_eq!(left, right);
            let assoc_l = &(&a * &b) * &c;
            let assoc_r = &a * &(&b * &c);
            prop_assert_eq!(assoc_l, assoc_r);
        }

        #[test]
        fn eval_is_a_ring_morphism(a in arbitrary_poly(), b in arbitrary_poly(), q0 in -9i64..9) {
            prop_assert_eq!((&a + &b).eval_at(q0), a.eval_at(q0) + b.eval_at(q0));
            prop_assert_eq!((&a * &b).eval_at(q0), a.eval_at(q0) * b.eval_at(q0));
        }

        #[test]
        fn display_has_no_spaces_and_roundtrips_degree(a in arbitrary_poly()) {
            let s = format!("{a}");
            prop_assert!(!s.contains(' '));
            if let Some(d) = a.degree() {
                if d >= 2 {
                    let lead = format!("q^{d}");
                    prop_assert!(s.contains(&lead));
                }
            }
        }
    }
}
