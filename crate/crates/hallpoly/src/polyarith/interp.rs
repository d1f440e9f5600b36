use std::collections::HashSet;

use serde_json::{json, Value};

use super::{rat, rat_string, IntPoly, Rational};
use crate::error::{HallError, Result};

/// Held-out samples required beyond the refit point.
const EXTRA_HELD_OUT: usize = 2;

/// A sample that disagrees with a fit that stabilized on the larger fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deviation {
    pub q: i64,
    pub observed: Rational,
    pub predicted: Rational,
}

/// Outcome of [`interpolate`].
///
/// `stabilized` means: the fit through the first `n` samples agrees with the
/// fit through the first `n + 1`, at least two further held-out samples
/// exist, and every held-out sample is predicted exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationReport {
    pub poly: IntPoly,
    pub samples: Vec<(i64, Rational)>,
    pub held_out: Vec<(i64, Rational)>,
    pub stabilized: bool,
    pub integral: bool,
    pub deviations: Vec<Deviation>,
}

impl InterpolationReport {
    pub fn to_json(&self) -> Value {
        let pts = |v: &[(i64, Rational)]| -> Value {
            v.iter().map(|(q, y)| json!([q, rat_string(y)])).collect()
        };
        json!({
            "polynomial": self.poly.to_string(),
            "samples": pts(&self.samples),
            "held_out": pts(&self.held_out),
            "stabilized": self.stabilized,
            "integral": self.integral,
            "deviations": self.deviations.iter().map(|d| json!({
                "q": d.q,
                "observed": rat_string(&d.observed),
                "predicted": rat_string(&d.predicted),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Newton interpolation through the given points.
pub fn lagrange(points: &[(Rational, Rational)]) -> IntPoly {
    let n = points.len();
    let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    let mut poly = IntPoly::zero();
    let mut basis = IntPoly::one();
    for (i, c) in dd.iter().enumerate() {
        poly = &poly + &basis.scale(c);
        basis = &basis * &IntPoly::new(vec![-xs[i].clone(), rat(1)]);
    }
    poly
}

fn fit(samples: &[(i64, Rational)]) -> IntPoly {
    let pts: Vec<(Rational, Rational)> = samples.iter().map(|(q, y)| (rat(*q), y.clone())).collect();
    lagrange(&pts)
}

fn predicts(p: &IntPoly, samples: &[(i64, Rational)]) -> bool {
    samples.iter().all(|(q, y)| &p.eval_int(*q) == y)
}

fn run_protocol(samples: &[(i64, Rational)], hint: Option<usize>) -> InterpolationReport {
    let total = samples.len();
    let n = match hint {
        Some(h) => (h + 1).min(total),
        None => (1..=total)
            .find(|&n| predicts(&fit(&samples[..n]), &samples[n..]))
            .unwrap_or(total),
    };
    let poly = fit(&samples[..n]);
    let held_out = samples[n..].to_vec();
    let refit_agrees = total > n && fit(&samples[..n + 1]) == poly;
    let stabilized = refit_agrees && held_out.len() > EXTRA_HELD_OUT && predicts(&poly, &held_out);
    InterpolationReport {
        integral: poly.is_integral(),
        poly,
        samples: samples[..n].to_vec(),
        held_out,
        stabilized,
        deviations: Vec::new(),
    }
}

/// Fit a polynomial to exact samples `(q, value)`, taken in the order given.
///
/// Without a hint the fit uses the shortest prefix whose interpolant predicts
/// every later sample; with a hint `h` it uses exactly `h + 1` samples. All
/// remaining samples are held out. When the full list does not stabilize,
/// leading (small-field) samples are dropped one at a time; if the rest then
/// stabilizes, the dropped samples that disagree are reported as deviations.
pub fn interpolate(samples: &[(i64, Rational)], degree_hint: Option<usize>) -> Result<InterpolationReport> {
    if samples.len() < 2 {
        return Err(HallError::TooFewSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    let mut seen = HashSet::new();
    for (q, _) in samples {
        if !seen.insert(*q) {
            return Err(HallError::DuplicateAbscissa(*q));
        }
    }
    let full = run_protocol(samples, degree_hint);
    if full.stabilized {
        return Ok(full);
    }
    for skip in 1..samples.len() {
        let rest = run_protocol(&samples[skip..], degree_hint);
        if rest.stabilized {
            let deviations: Vec<Deviation> = samples[..skip]
                .iter()
                .filter_map(|(q, y)| {
                    let p = rest.poly.eval_int(*q);
                    (&p != y).then(|| Deviation {
                        q: *q,
                        observed: y.clone(),
                        predicted: p,
                    })
                })
                .collect();
            if deviations.is_empty() {
                break;
            }
            return Ok(InterpolationReport { deviations, ..rest });
        }
    }
    Ok(full)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[(i64, i64)]) -> Vec<(i64, Rational)> {
        v.iter().map(|&(q, y)| (q, rat(y))).collect()
    }

    #[test]
    fn linear_data() {
        let r = interpolate(&s(&[(2, 3), (3, 4), (5, 6), (7, 8), (11, 12)]), None).unwrap();
        assert_eq!(r.poly, IntPoly::from_ints(&[1, 1]));
        assert!(r.stabilized && r.integral);
        assert_eq!(r.held_out.len(), 3);
        // three points alone cannot be certified
        let short = interpolate(&s(&[(2, 3), (3, 4), (5, 6)]), None).unwrap();
        assert_eq!(short.poly.to_string(), "T + 1");
        assert!(!short.stabilized);
    }

    #[test]
    fn constant_data() {
        let r = interpolate(&s(&[(2, 1), (3, 1), (5, 1), (7, 1)]), None).unwrap();
        assert_eq!(r.poly, IntPoly::one());
        assert!(r.stabilized);
    }

    #[test]
    fn duplicate_abscissa_is_an_error() {
        assert_eq!(
            interpolate(&s(&[(2, 1), (2, 1)]), None),
            Err(HallError::DuplicateAbscissa(2))
        );
        assert!(interpolate(&s(&[(2, 1)]), None).is_err());
    }

    #[test]
    fn hint_fixes_fit_size() {
        let r = interpolate(&s(&[(2, 3), (3, 4), (5, 6), (7, 8), (11, 12)]), Some(1)).unwrap();
        assert_eq!(r.samples.len(), 2);
        assert!(r.stabilized);
        // an underestimated degree is caught by the refit
        let sq = interpolate(&s(&[(2, 4), (3, 9), (5, 25), (7, 49), (11, 121)]), Some(1)).unwrap();
        assert!(!sq.stabilized);
    }

    #[test]
    fn small_field_deviation_is_recorded() {
        let mut data = s(&[(2, 99)]);
        data.extend(s(&[(3, 9), (5, 25), (7, 49), (11, 121), (13, 169), (17, 289)]));
        let r = interpolate(&data, None).unwrap();
        assert!(r.stabilized);
        assert_eq!(r.poly, IntPoly::from_ints(&[0, 0, 1]));
        assert_eq!(r.deviations.len(), 1);
        assert_eq!(r.deviations[0].predicted, rat(4));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn lagrange_recovers_integer_polynomials(coeffs in prop::collection::vec(-20i64..=20, 1..=7), start in -5i64..=5) {
            let p = IntPoly::from_ints(&coeffs);
            let n = p.degree().unwrap_or(0) + 1;
            let pts: Vec<(Rational, Rational)> = (0..n as i64).map(|i| (rat(start + i), p.eval_int(start + i))).collect();
            prop_assert_eq!(lagrange(&pts), p);
        }
    }
}
