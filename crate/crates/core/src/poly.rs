//! Univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::rational::{fmt_rational, Rational};
use crate::linalg::Matrix;

/// Polynomial with rational coefficients in ascending order of degree;
/// trailing zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `T - root`.
    pub fn linear(root: Rational) -> Self {
        Polynomial::new(vec![-root, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    pub fn scale(&self, a: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * a).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lc_inv;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * d;
                }
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) && rem.len() > dd {
                rem.pop();
                // quotient entries between are zero by construction
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        assert!(m.is_square(), "polynomial of a non-square matrix");
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(n).scale(c));
        }
        acc
    }

    /// Polynomial whose roots are `c` times the roots of `self`:
    /// `c^deg * p(T / c)`.
    pub fn scale_roots(&self, c: &Rational) -> Polynomial {
        let Some(n) = self.degree() else {
            return Polynomial::zero();
        };
        let mut pow = Rational::one();
        let mut out = vec![Rational::zero(); n + 1];
        for i in (0..=n).rev() {
            out[i] = &self.coeffs[i] * &pow;
            pow *= c;
        }
        Polynomial::new(out)
    }

    /// Yun's square-free decomposition of the monic part: pairs
    /// `(g_i, i)` with `monic(self) = prod g_i^i`, each `g_i` square-free,
    /// pairwise coprime and non-constant.
    pub fn squarefree_decomposition(&self) -> Vec<(Polynomial, usize)> {
        let f = self.monic();
        if f.is_constant() {
            return Vec::new();
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            let nb = b.div_rem(&a).0;
            let nc = d.div_rem(&a).0;
            d = nc.sub(&nb.derivative());
            if !a.is_constant() {
                out.push((a, i));
            }
            b = nb;
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Polynomial {
        self.squarefree_decomposition()
            .into_iter()
            .fold(Polynomial::one(), |acc, (g, _)| acc.mul(&g))
    }

    /// Primitive integer polynomial proportional to `self`, with positive
    /// leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }
}

/// Characteristic polynomial `det(T I - M)` via exact reduction to upper
/// Hessenberg form.
pub fn charpoly(m: &Matrix) -> Polynomial {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut h = m.to_dense();

    for col in 0..n.saturating_sub(2) {
        let m_row = col + 1;
        let Some(piv) = (m_row..n).find(|&i| !h[i][col].is_zero()) else {
            continue;
        };
        if piv != m_row {
            h.swap(piv, m_row);
            for row in h.iter_mut() {
                row.swap(piv, m_row);
            }
        }
        let t = h[m_row][col].clone();
        for i in (m_row + 1)..n {
            if h[i][col].is_zero() {
                continue;
            }
            let u = &h[i][col] / &t;
            // row_i -= u * row_m
            for j in 0..n {
                if !h[m_row][j].is_zero() {
                    let delta = &u * &h[m_row][j];
                    h[i][j] -= delta;
                }
            }
            // col_m += u * col_i
            for row in h.iter_mut() {
                if !row[i].is_zero() {
                    let delta = &u * &row[i];
                    row[m_row] += delta;
                }
            }
        }
    }

    let mut p: Vec<Polynomial> = vec![Polynomial::one()];
    for mm in 0..n {
        let mut next = Polynomial::linear(h[mm][mm].clone()).mul(&p[mm]);
        let mut t = Rational::one();
        for i in (0..mm).rev() {
            t *= &h[i + 1][i];
            if t.is_zero() {
                break;
            }
            let c = &h[i][mm] * &t;
            if !c.is_zero() {
                next = next.sub(&p[i].scale(&c));
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", fmt_rational(&mag))?;
            }
            let sep = if show_coeff && !mag.is_integer() { " " } else { "" };
            match i {
                0 => {}
                1 => write!(f, "{sep}T")?,
                _ => write!(f, "{sep}T^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{int, rat};

    #[test]
    fn division_and_gcd() {
        let a = Polynomial::from_i64(&[-1, 0, 1]); // T^2 - 1
        let b = Polynomial::from_i64(&[1, 1]); // T + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Polynomial::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        let c = Polynomial::from_i64(&[-1, 1]).mul(&Polynomial::from_i64(&[2, 1]));
        assert_eq!(a.gcd(&c), Polynomial::from_i64(&[-1, 1]));
    }

    #[test]
    fn squarefree_decomposition_of_powers() {
        let l1 = Polynomial::linear(int(1));
        let l5 = Polynomial::linear(int(5));
        let q = Polynomial::from_i64(&[5, -2, 1]);
        let f = l1.pow(3).mul(&l5).mul(&q.pow(2));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(l5.clone(), 1), (q.clone(), 2), (l1.clone(), 3)]);
        assert_eq!(f.squarefree_part(), l5.mul(&q).mul(&l1));
    }

    #[test]
    fn charpoly_of_companion_and_diagonal() {
        let comp = Matrix::from_i64_rows(&[&[0, -5], &[1, 2]]);
        assert_eq!(charpoly(&comp), Polynomial::from_i64(&[5, -2, 1]));
        let d = Matrix::diagonal(&[int(1), int(5), rat(1, 5)]);
        let expect = Polynomial::linear(int(1))
            .mul(&Polynomial::linear(int(5)))
            .mul(&Polynomial::linear(rat(1, 5)));
        assert_eq!(charpoly(&d), expect);
    }

    #[test]
    fn cayley_hamilton() {
        let m = Matrix::from_i64_rows(&[&[2, 1, 0, 3], &[0, 1, 4, 1], &[5, 0, 1, 2], &[1, 1, 1, 0]]);
        assert!(charpoly(&m).eval_matrix(&m).is_zero());
    }

    #[test]
    fn scale_roots_multiplies_roots() {
        let p = Polynomial::linear(int(1)).mul(&Polynomial::linear(int(3)));
        let s = p.scale_roots(&int(5));
        assert_eq!(s, Polynomial::linear(int(5)).mul(&Polynomial::linear(int(15))));
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_i64(&[5, -2, 1]).to_string(), "T^2 - 2T + 5");
        let p = Polynomial::new(vec![rat(1, 5), rat(-2, 5), int(1)]);
        assert_eq!(p.to_string(), "T^2 - 2/5 T + 1/5");
        assert_eq!(Polynomial::linear(int(1)).to_string(), "T - 1");
    }

    #[test]
    fn primitive_integer_form() {
        let p = Polynomial::new(vec![rat(1, 5), rat(-2, 5), int(1)]);
        let ints: Vec<i64> = p.primitive_integer().iter().map(|b| b.try_into().unwrap()).collect();
        assert_eq!(ints, vec![1, -2, 5]);
    }
}
