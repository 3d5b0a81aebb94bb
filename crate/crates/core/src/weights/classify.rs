//! Classification of rational polynomials by the absolute values of their
//! roots against `q^{w/2}`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::roots::{certified_roots, RootDisc};
use super::WeightError;
use crate::linalg::rational::Rational;
use crate::poly::Polynomial;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MAX_WEIGHT: i64 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "weight", rename_all = "snake_case")]
pub enum WeightClass {
    Pure(i64),
    NotPure,
    Inconclusive,
}

impl fmt::Display for WeightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightClass::Pure(w) => write!(f, "{w}"),
            WeightClass::NotPure => write!(f, "not pure"),
            WeightClass::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut r = q;
            while r % p == 0 {
                r /= p;
            }
            return r == 1;
        }
        p += 1;
    }
    true
}

/// Largest relative tolerance at which the bands around `q^{w/2}` and
/// `q^{(w+1)/2}` stay disjoint.
pub fn separation_limit(q: u64) -> f64 {
    let s = (q as f64).sqrt();
    (s - 1.0) / (s + 1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeilClassifier {
    q: u64,
    tol: f64,
    max_weight: i64,
}

impl WeilClassifier {
    pub fn new(q: u64, tol: f64) -> Result<Self, WeightError> {
        if !is_prime_power(q) {
            return Err(WeightError::InvalidQ(q));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(WeightError::InvalidTolerance(tol));
        }
        let limit = separation_limit(q);
        if tol >= limit {
            return Err(WeightError::ToleranceTooLarge { tol, limit });
        }
        Ok(WeilClassifier {
            q,
            tol,
            max_weight: DEFAULT_MAX_WEIGHT,
        })
    }

    /// Candidate weights `|w| <= 2N + 4` for nilpotency class `N`.
    pub fn for_class(q: u64, tol: f64, class_bound: usize) -> Result<Self, WeightError> {
        Ok(WeilClassifier {
            max_weight: 2 * class_bound as i64 + 4,
            ..Self::new(q, tol)?
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    /// Weight whose tolerance band contains the whole norm enclosure.
    pub fn root_weight(&self, disc: &RootDisc) -> Option<i64> {
        let (lo, hi) = disc.norm_interval();
        if lo <= 0.0 {
            return None;
        }
        let lq = (self.q as f64).ln();
        let w = (2.0 * disc.center.norm().ln() / lq).round() as i64;
        if w.abs() > self.max_weight {
            return None;
        }
        let c = (w as f64 * lq / 2.0).exp();
        (lo >= c * (1.0 - self.tol) && hi <= c * (1.0 + self.tol)).then_some(w)
    }

    /// Weight of a single factor: pure if every root falls in one band, not
    /// pure if two roots have provably different norms, otherwise unknown.
    pub fn classify(&self, factor: &Polynomial) -> WeightClass {
        if factor.is_zero() || factor.is_constant() {
            return WeightClass::Inconclusive;
        }
        let Some(discs) = certified_roots(&factor.squarefree_part()) else {
            return WeightClass::Inconclusive;
        };
        let weights: Vec<Option<i64>> = discs.iter().map(|d| self.root_weight(d)).collect();
        if let Some(Some(w)) = weights.first() {
            if weights.iter().all(|x| *x == Some(*w)) {
                return WeightClass::Pure(*w);
            }
        }
        if norms_differ(&discs) {
            WeightClass::NotPure
        } else {
            WeightClass::Inconclusive
        }
    }

    /// Split a square-free polynomial into its weight-isotypic rational
    /// factors, ordered by weight. Each root is classified numerically; the
    /// factors themselves are exact, peeled off from the smallest weight up
    /// as `gcd(r, T^n r(q^w / T))`.
    pub fn split(&self, s: &Polynomial) -> Result<Vec<(i64, Polynomial)>, WeightClass> {
        let Some(discs) = certified_roots(s) else {
            return Err(WeightClass::Inconclusive);
        };
        let weights: Vec<Option<i64>> = discs.iter().map(|d| self.root_weight(d)).collect();
        if weights.iter().any(Option::is_none) {
            let stray: Vec<RootDisc> = discs
                .iter()
                .zip(&weights)
                .filter(|(_, w)| w.is_none())
                .map(|(d, _)| *d)
                .collect();
            return Err(if norms_differ(&stray) {
                WeightClass::NotPure
            } else {
                WeightClass::Inconclusive
            });
        }
        let mut counts = std::collections::BTreeMap::<i64, usize>::new();
        for w in weights.into_iter().flatten() {
            *counts.entry(w).or_default() += 1;
        }
        let mut rest = s.monic();
        let mut out = Vec::new();
        for (&w, &count) in &counts {
            let g = rest.gcd(&self.reflect(&rest, w));
            if g.degree() != Some(count) {
                return Err(WeightClass::Inconclusive);
            }
            let (quot, rem) = rest.div_rem(&g);
            debug_assert!(rem.is_zero());
            rest = quot;
            out.push((w, g));
        }
        if !rest.is_constant() {
            return Err(WeightClass::Inconclusive);
        }
        Ok(out)
    }

    /// `T^n p(q^w / T)`, whose roots are `q^w / α`.
    fn reflect(&self, p: &Polynomial, w: i64) -> Polynomial {
        let n = p.degree().unwrap_or(0);
        let base = Rational::from_integer(self.q.into());
        let qw = if w >= 0 {
            num_traits::pow(base, w as usize)
        } else {
            Rational::one() / num_traits::pow(base, (-w) as usize)
        };
        let mut coeffs = vec![Rational::zero(); n + 1];
        let mut power = Rational::one();
        for k in 0..=n {
            coeffs[n - k] = p.coeff(k) * &power;
            power *= &qw;
        }
        Polynomial::new(coeffs)
    }
}

fn norms_differ(discs: &[RootDisc]) -> bool {
    discs.iter().enumerate().any(|(i, a)| {
        discs[i + 1..].iter().any(|b| {
            let (alo, ahi) = a.norm_interval();
            let (blo, bhi) = b.norm_interval();
            ahi < blo || bhi < alo
        })
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifiedFactor {
    pub factor: String,
    pub class: WeightClass,
}

/// Classify each factor independently.
pub fn weil_classify(factors: &[Polynomial], q: u64, tol: f64) -> Result<Vec<ClassifiedFactor>, WeightError> {
    let c = WeilClassifier::new(q, tol)?;
    Ok(factors
        .iter()
        .map(|f| ClassifiedFactor {
            factor: f.to_string(),
            class: c.classify(f),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> WeilClassifier {
        WeilClassifier::new(5, DEFAULT_TOLERANCE).unwrap()
    }

    #[test]
    fn basic_factors() {
        let c = c5();
        assert_eq!(c.classify(&Polynomial::from_i64(&[-1, 1])), WeightClass::Pure(0));
        assert_eq!(c.classify(&Polynomial::from_i64(&[-5, 1])), WeightClass::Pure(2));
        assert_eq!(c.classify(&Polynomial::from_i64(&[5, -2, 1])), WeightClass::Pure(1));
        assert_eq!(c.classify(&Polynomial::from_i64(&[-3, 0, 1])), WeightClass::Inconclusive);
        assert_eq!(c.classify(&Polynomial::from_i64(&[5, -6, 1])), WeightClass::NotPure);
        assert_eq!(c.classify(&Polynomial::from_i64(&[1, -6, 1])), WeightClass::NotPure);
    }

    #[test]
    fn negative_weights() {
        let c = c5();
        // T^2 - 2/5 T + 1/5: roots of norm 5^{-1/2}
        let p = Polynomial::new(vec![crate::linalg::rat(1, 5), crate::linalg::rat(-2, 5), Rational::one()]);
        assert_eq!(c.classify(&p), WeightClass::Pure(-1));
        assert_eq!(c.classify(&Polynomial::linear(crate::linalg::rat(1, 25))), WeightClass::Pure(-4));
    }

    #[test]
    fn tolerance_guard() {
        assert!(matches!(WeilClassifier::new(5, 0.5), Err(WeightError::ToleranceTooLarge { .. })));
        assert!(matches!(WeilClassifier::new(5, 0.0), Err(WeightError::InvalidTolerance(_))));
        assert!(matches!(WeilClassifier::new(6, 1e-6), Err(WeightError::InvalidQ(6))));
        assert!(WeilClassifier::new(4, 1e-6).is_ok());
        assert!(WeilClassifier::new(4, 0.34).is_err());
    }

    #[test]
    fn out_of_range_weight_is_inconclusive() {
        let c = WeilClassifier::for_class(2, 1e-6, 1).unwrap();
        assert_eq!(c.max_weight(), 6);
        assert_eq!(c.classify(&Polynomial::from_i64(&[-8, 1])), WeightClass::Pure(6));
        assert_eq!(c.classify(&Polynomial::from_i64(&[-16, 1])), WeightClass::Inconclusive);
    }

    #[test]
    fn split_mixed_weights() {
        let c = c5();
        // (T-1)(T-5)(T^2-2T+5)(T-25)
        let p = Polynomial::from_i64(&[-1, 1])
            .mul(&Polynomial::from_i64(&[-5, 1]))
            .mul(&Polynomial::from_i64(&[5, -2, 1]))
            .mul(&Polynomial::from_i64(&[-25, 1]));
        let parts = c.split(&p).unwrap();
        let expected = vec![
            (0, Polynomial::from_i64(&[-1, 1])),
            (1, Polynomial::from_i64(&[5, -2, 1])),
            (2, Polynomial::from_i64(&[-5, 1])),
            (4, Polynomial::from_i64(&[-25, 1])),
        ];
        assert_eq!(parts, expected);
    }

    #[test]
    fn split_reports_strays() {
        let c = c5();
        let p = Polynomial::from_i64(&[-1, 1]).mul(&Polynomial::from_i64(&[-3, 0, 1]));
        assert_eq!(c.split(&p), Err(WeightClass::Inconclusive));
        let p = Polynomial::from_i64(&[-1, 1]).mul(&Polynomial::from_i64(&[1, -6, 1]));
        assert_eq!(c.split(&p), Err(WeightClass::NotPure));
    }

    #[test]
    fn scaling_roots_shifts_weight_by_two() {
        let c = c5();
        for (p, w) in [
            (Polynomial::from_i64(&[-1, 1]), 0),
            (Polynomial::from_i64(&[-5, 1]), 2),
            (Polynomial::from_i64(&[5, -2, 1]), 1),
        ] {
            let scaled = p.scale_roots(&Rational::from_integer(5.into()));
            assert_eq!(c.classify(&scaled), WeightClass::Pure(w + 2));
        }
    }

    #[test]
    fn batch_interface() {
        let out = weil_classify(&[Polynomial::from_i64(&[-1, 1]), Polynomial::from_i64(&[-3, 0, 1])], 5, 1e-6).unwrap();
        assert_eq!(out[0].class, WeightClass::Pure(0));
        assert_eq!(out[1].class, WeightClass::Inconclusive);
        assert_eq!(out[0].factor, "T - 1");
    }
}
