//! Exact rational scalars and sparse coordinate vectors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Sparse coordinate vector: index -> nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Rational>;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"`, `"-p/q"` or an integer literal.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let r: Rational = s.parse().ok()?;
    Some(r)
}

/// Lossy conversion used only by the numerical root classifier.
pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge numerators/denominators before dividing.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// `y += a * x`, dropping entries that cancel.
pub fn axpy(y: &mut SparseVec, a: &Rational, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (&i, xi) in x {
        let cancelled = {
            let entry = y.entry(i).or_insert_with(Rational::zero);
            *entry += a * xi;
            entry.is_zero()
        };
        if cancelled {
            y.remove(&i);
        }
    }
}

pub fn add_entry(y: &mut SparseVec, i: usize, a: Rational) {
    if a.is_zero() {
        return;
    }
    let cancelled = {
        let entry = y.entry(i).or_insert_with(Rational::zero);
        *entry += a;
        entry.is_zero()
    };
    if cancelled {
        y.remove(&i);
    }
}

pub fn scale(x: &SparseVec, a: &Rational) -> SparseVec {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(&i, v)| (i, v * a)).collect()
}

pub fn to_dense(x: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (&i, v) in x {
        out[i] = v.clone();
    }
    out
}

pub fn to_sparse(x: &[Rational]) -> SparseVec {
    x.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Formats a coefficient for human-readable output: integers bare, otherwise `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-4"), Some(int(-4)));
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn reduced_form_with_positive_denominator() {
        let r = rat(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
    }

    #[test]
    fn axpy_drops_cancelled_entries() {
        let mut y: SparseVec = [(0, int(1)), (2, int(3))].into_iter().collect();
        let x: SparseVec = [(0, int(-1)), (1, int(5))].into_iter().collect();
        axpy(&mut y, &int(1), &x);
        assert_eq!(y.get(&0), None);
        assert_eq!(y[&1], int(5));
        assert_eq!(y[&2], int(3));
    }

    #[test]
    fn huge_values_convert_to_f64() {
        let big = Rational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-9);
    }
}
