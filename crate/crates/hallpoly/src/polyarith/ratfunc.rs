use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{dense, LaurentPoly, Rational};

/// Quotient of Laurent polynomials in `v`, kept in lowest terms.
///
/// The canonical form is `num / den` where `den` is a monic polynomial with
/// nonzero constant term and coprime to the polynomial part of `num`. Equal
/// functions therefore have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: Vec<Rational>,
}

fn to_dense(p: &LaurentPoly) -> (i64, Vec<Rational>) {
    let lo = p.min_exp().unwrap_or(0);
    let hi = p.max_exp().unwrap_or(0);
    let mut out = vec![Rational::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        out[(e - lo) as usize] = c.clone();
    }
    dense::trim(&mut out);
    (lo, out)
}

fn from_dense(shift: i64, d: &[Rational]) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (i, c) in d.iter().enumerate() {
        out.add_term(shift + i as i64, c);
    }
    out
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: vec![Rational::one()],
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: vec![Rational::one()],
        }
    }

    /// `num / den`; panics when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (dshift, d) = to_dense(&den);
        let (nshift, n) = to_dense(&num);
        let lead = d.last().unwrap().clone();
        let d = dense::monic(&d);
        let n: Vec<Rational> = n.iter().map(|c| c / &lead).collect();
        let g = dense::gcd(&n, &d);
        let (n, _) = dense::divrem(&n, &g);
        let (d, _) = dense::divrem(&d, &g);
        RatFunc {
            num: from_dense(nshift - dshift, &n),
            den: d,
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> LaurentPoly {
        from_dense(0, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this equals, when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        dense::is_one(&self.den).then_some(&self.num)
    }

    pub fn recip(&self) -> Self {
        Self::new(self.denominator(), self.num.clone())
    }

    pub fn eval(&self, v: &Rational) -> Rational {
        self.num.eval(v) / self.denominator().eval(v)
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_laurent(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if dense::is_one(&self.den) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.denominator())
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.denominator());
        }
        let (a, b) = (self.denominator(), rhs.denominator());
        RatFunc::new(&(&self.num * &b) + &(&rhs.num * &a), &a * &b)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.denominator() * &rhs.denominator())
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.recip()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        // (v^2 - 1)^2 / (v^4 - v^2) = (v^2 - 1) / v^2
        let a = LaurentPoly::from_pairs(&[(2, 1), (0, -1)]);
        let r = RatFunc::new(&a * &a, LaurentPoly::from_pairs(&[(4, 1), (2, -1)]));
        assert_eq!(r.as_laurent().unwrap().to_string(), "1 - v^-2");
        let s = RatFunc::new(LaurentPoly::one(), a.clone());
        assert_eq!(s.to_string(), "(1)/(v^2 - 1)");
        assert_eq!(&(&s * &RatFunc::from(a)), &RatFunc::one());
    }

    #[test]
    fn sums_are_canonical() {
        let a = RatFunc::new(LaurentPoly::one(), LaurentPoly::from_pairs(&[(1, 1), (0, -1)]));
        let b = RatFunc::new(LaurentPoly::one(), LaurentPoly::from_pairs(&[(1, 1), (0, 1)]));
        let s = &a + &b;
        let expect = RatFunc::new(LaurentPoly::from_pairs(&[(1, 2)]), LaurentPoly::from_pairs(&[(2, 1), (0, -1)]));
        assert_eq!(s, expect);
        assert!((&s - &expect).is_zero());
    }
}
