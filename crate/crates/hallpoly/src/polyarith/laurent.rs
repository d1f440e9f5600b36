use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat, render_terms, IntPoly, Rational};

/// Laurent polynomial in `v` with exact rational coefficients.
/// Only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// Build from `(exponent, integer coefficient)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut out = Self::zero();
        for &(e, c) in pairs {
            out.add_term(e, &rat(c));
        }
        out
    }

    pub fn add_term(&mut self, e: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, &(a * c));
        }
        out
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a rational value of `v` (must be nonzero when negative
    /// exponents occur).
    pub fn eval(&self, v: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(v.clone(), *e as usize)
            } else {
                num_traits::pow(v.recip(), (-e) as usize)
            };
            acc += c * p;
        }
        acc
    }

    /// Inverse of [`substitute_t_v2`] when every exponent is even and
    /// non-negative.
    pub fn to_t_poly(&self) -> Option<IntPoly> {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if *e < 0 || e % 2 != 0 {
                return None;
            }
            let i = (*e / 2) as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, Rational::zero());
            }
            coeffs[i] = c.clone();
        }
        Some(IntPoly::new(coeffs))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono = match *e {
                    0 => String::new(),
                    1 => "v".to_string(),
                    _ => format!("v^{}", e),
                };
                (c.clone(), mono)
            })
            .collect();
        f.write_str(&render_terms(&terms))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub fn laurent_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a * b
}

pub fn laurent_add(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a + b
}

/// Formal substitution `T = v^2`.
pub fn substitute_t_v2(p: &IntPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in p.coeffs().iter().enumerate() {
        out.add_term(2 * e as i64, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_conjugates() {
        let a = LaurentPoly::from_pairs(&[(1, 1), (-1, -1)]);
        let b = LaurentPoly::from_pairs(&[(1, 1), (-1, 1)]);
        assert_eq!(laurent_mul(&a, &b), LaurentPoly::from_pairs(&[(2, 1), (-2, -1)]));
        assert_eq!(laurent_mul(&a, &LaurentPoly::one()), a);
    }

    #[test]
    fn sum_cancels() {
        let a = LaurentPoly::from_pairs(&[(2, 1), (0, 1)]);
        let b = LaurentPoly::from_pairs(&[(0, -1)]);
        assert_eq!(laurent_add(&a, &b), LaurentPoly::v_pow(2));
    }

    #[test]
    fn renders_descending() {
        let p = LaurentPoly::from_pairs(&[(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(p.to_string(), "v^2 + 1 + v^-2");
        assert_eq!(LaurentPoly::from_pairs(&[(1, 1), (-1, -1)]).to_string(), "v - v^-1");
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(substitute_t_v2(&IntPoly::from_ints(&[1, 1])).to_string(), "v^2 + 1");
        assert_eq!(substitute_t_v2(&IntPoly::one()).to_string(), "1");
        assert_eq!(substitute_t_v2(&IntPoly::from_ints(&[0, -1, 1])).to_string(), "v^4 - v^2");
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..=4, -6i64..=6), 0..5).prop_map(|p| LaurentPoly::from_pairs(&p))
    }

    fn int_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| IntPoly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &LaurentPoly::one(), a);
        }

        #[test]
        fn substitution_is_a_ring_map(p in int_poly(), r in int_poly()) {
            prop_assert_eq!(substitute_t_v2(&(&p * &r)), &substitute_t_v2(&p) * &substitute_t_v2(&r));
            prop_assert_eq!(substitute_t_v2(&(&p + &r)), &substitute_t_v2(&p) + &substitute_t_v2(&r));
        }
    }
}
