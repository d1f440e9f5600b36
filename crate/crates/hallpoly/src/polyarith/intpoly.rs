use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{dense, rat, render_terms, Rational};

/// Polynomial in one variable with exact rational coefficients.
///
/// Coefficients are stored lowest degree first with trailing zeros stripped,
/// so the zero polynomial has an empty coefficient list and no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<Rational>,
    var: String,
}

impl IntPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self::with_var(coeffs, "T")
    }

    pub fn with_var(mut coeffs: Vec<Rational>, var: &str) -> Self {
        dense::trim(&mut coeffs);
        IntPoly {
            coeffs,
            var: var.to_string(),
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::with_var(self.coeffs.iter().map(|a| a * c).collect(), &self.var)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one().renamed(&self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `T -> T^d`.
    pub fn compose_power(&self, d: usize) -> Self {
        assert!(d >= 1);
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * d + 1];
        for (e, c) in self.coeffs.iter().enumerate() {
            coeffs[e * d] = c.clone();
        }
        Self::with_var(coeffs, &self.var)
    }

    pub fn renamed(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let mono = match e {
                    0 => String::new(),
                    1 => self.var.clone(),
                    _ => format!("{}^{}", self.var, e),
                };
                (c.clone(), mono)
            })
            .collect();
        f.write_str(&render_terms(&terms))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPoly::with_var(coeffs, &self.var)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPoly::with_var(coeffs, &self.var)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::with_var(dense::mul(&self.coeffs, &rhs.coeffs), &self.var)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::with_var(self.coeffs.iter().map(|c| -c).collect(), &self.var)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_canonically() {
        assert_eq!(IntPoly::from_ints(&[0, -1, 1]).to_string(), "T^2 - T");
        assert_eq!(IntPoly::from_ints(&[1, 1]).to_string(), "T + 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::from_ints(&[-2, 0, -3]).to_string(), "-3*T^2 - 2");
        let half = IntPoly::new(vec![rat(0), super::super::frac(-1, 2), super::super::frac(1, 2)]);
        assert_eq!(half.to_string(), "1/2*T^2 - 1/2*T");
    }

    #[test]
    fn arithmetic_and_degree() {
        let a = IntPoly::from_ints(&[-1, 1]);
        let b = IntPoly::from_ints(&[1, 1]);
        assert_eq!(&a * &b, IntPoly::from_ints(&[-1, 0, 1]));
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(IntPoly::from_ints(&[1, 1]).compose_power(2), IntPoly::from_ints(&[1, 0, 1]));
        assert_eq!(b.eval_int(2), rat(3));
        assert!(IntPoly::from_ints(&[0, -1, 1]).is_monic());
    }
}
