//! Numerical root isolation with certified enclosing discs.

use num_complex::Complex64;

use crate::linalg::rational::to_f64;
use crate::poly::Polynomial;

const MAX_ITERATIONS: usize = 2000;

/// A disc known to contain exactly one root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootDisc {
    pub center: Complex64,
    pub radius: f64,
}

impl RootDisc {
    /// Enclosure `[lo, hi]` of the absolute value of the root.
    pub fn norm_interval(&self) -> (f64, f64) {
        let m = self.center.norm();
        ((m - self.radius).max(0.0), m + self.radius)
    }
}

/// Horner evaluation of `p` and `p'`, plus a running bound on
/// `sum |a_i| |z|^i` for the rounding error estimate.
fn horner(a: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let r = z.norm();
    for &c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        mag = mag * r + c.abs();
    }
    (p, dp, mag)
}

/// Aberth iteration followed by an a posteriori inclusion test. Returns
/// `None` when the discs cannot be separated, which callers must treat as
/// "unknown". Expects a square-free polynomial.
pub fn certified_roots(p: &Polynomial) -> Option<Vec<RootDisc>> {
    let n = p.degree()?;
    if n == 0 {
        return Some(Vec::new());
    }
    let monic = p.monic();
    if n == 1 {
        let root = -to_f64(&monic.coeff(0));
        if !root.is_finite() {
            return None;
        }
        return Some(vec![RootDisc {
            center: Complex64::new(root, 0.0),
            radius: root.abs() * 4.0 * f64::EPSILON + f64::MIN_POSITIVE,
        }]);
    }
    let a: Vec<f64> = monic.coeffs().iter().map(to_f64).collect();
    if a.iter().any(|c| !c.is_finite()) {
        return None;
    }

    let start = if a[0] != 0.0 { a[0].abs().powf(1.0 / n as f64) } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(start, std::f64::consts::TAU * k as f64 / n as f64 + 0.7))
        .collect();

    let mut settled = 0;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (pv, dpv, _) = horner(&a, z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dpv;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[k] -= w;
            max_step = max_step.max(w.norm() / z[k].norm().max(f64::MIN_POSITIVE));
        }
        if max_step < 1e-14 {
            settled += 1;
            if settled >= 3 {
                break;
            }
        } else {
            settled = 0;
        }
    }

    // Roots lie in the union of discs D(z_k, n |W_k|), W_k the Weierstrass
    // correction; an isolated disc holds exactly one root.
    let unit = 8.0 * (n as f64 + 2.0) * f64::EPSILON;
    let mut discs = Vec::with_capacity(n);
    for k in 0..n {
        let (pv, _, mag) = horner(&a, z[k]);
        let numerator = pv.norm() + unit * mag;
        let mut log_den = 0.0;
        for j in 0..n {
            if j != k {
                let d = (z[k] - z[j]).norm();
                if d == 0.0 {
                    return None;
                }
                log_den += d.ln();
            }
        }
        let radius = if numerator == 0.0 {
            0.0
        } else {
            (numerator.ln() - log_den).exp() * n as f64 * (1.0 + 1e-9)
        };
        let radius = radius + z[k].norm() * 4.0 * f64::EPSILON;
        if !radius.is_finite() {
            return None;
        }
        discs.push(RootDisc { center: z[k], radius });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (discs[i].center - discs[j].center).norm() <= discs[i].radius + discs[j].radius {
                return None;
            }
        }
    }
    Some(discs)
}
