//! Exact polynomial arithmetic over the rationals.
//!
//! [`IntPoly`] holds polynomials in `T`, [`LaurentPoly`] Laurent polynomials in
//! `v`, and [`RatFunc`] quotients of Laurent polynomials in reduced form. The
//! only bridge between `T` and `v` is the formal substitution `T = v^2`.
//! [`interpolate`] recovers a polynomial from exact samples and reports how
//! well the fit is supported by held-out points.

mod interp;
mod intpoly;
mod laurent;
mod ratfunc;

pub use interp::{interpolate, lagrange, Deviation, InterpolationReport};
pub use intpoly::IntPoly;
pub use laurent::{laurent_add, laurent_mul, substitute_t_v2, LaurentPoly};
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Integer as an exact rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact fraction `n / d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text for a rational: `"3"`, `"-1/2"`.
pub fn rat_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"3"` or `"-1/2"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Render a sum of `(coefficient, monomial)` pairs, highest term first.
/// Monomials are given as already formatted strings ("" for the constant).
pub(crate) fn render_terms(terms: &[(Rational, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&rat_string(&a));
        } else if a.is_one() {
            out.push_str(mono);
        } else {
            out.push_str(&rat_string(&a));
            out.push('*');
            out.push_str(mono);
        }
    }
    out
}

/// Dense polynomial helpers over Q, little-endian coefficient vectors.
pub(crate) mod dense {
    use super::Rational;
    use num_traits::{One, Zero};

    pub fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let c = r.last().unwrap() / &lead;
            for (j, y) in b.iter().enumerate() {
                r[shift + j] -= &c * y;
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn monic(p: &[Rational]) -> Vec<Rational> {
        match p.last() {
            None => Vec::new(),
            Some(l) => p.iter().map(|c| c / l).collect(),
        }
    }

    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        monic(&x)
    }

    pub fn is_one(p: &[Rational]) -> bool {
        p.len() == 1 && p[0].is_one()
    }
}
