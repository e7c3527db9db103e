use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Element of `Q(ζ_p)` in the basis `1, ζ, …, ζ^{p−2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloNum {
    p: u64,
    coeffs: Vec<Rational>,
}

impl CycloNum {
    pub fn zero(p: u64) -> Self {
        CycloNum {
            p,
            coeffs: vec![Rational::zero(); (p - 1) as usize],
        }
    }

    pub fn from_rational(p: u64, c: Rational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = c;
        z
    }

    pub fn from_int(p: u64, c: i64) -> Self {
        Self::from_rational(p, int(c))
    }

    pub fn one(p: u64) -> Self {
        Self::from_int(p, 1)
    }

    /// `ζ_p^k` for any integer `k`.
    pub fn zeta_pow(p: u64, k: i64) -> Self {
        let e = k.rem_euclid(p as i64) as usize;
        let mut z = Self::zero(p);
        if e == (p - 1) as usize {
            for c in z.coeffs.iter_mut() {
                *c = -Rational::one();
            }
        } else {
            z.coeffs[e] = Rational::one();
        }
        z
    }

    /// Builds `Σ counts[k] ζ^k` from an integer histogram of exponents mod p.
    pub fn from_exponent_counts(p: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let top = counts[(p - 1) as usize];
        CycloNum {
            p,
            coeffs: (0..(p - 1) as usize)
                .map(|k| int(counts[k] - top))
                .collect(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycloNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Field inverse, by solving the multiplication-matrix system.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = (self.p - 1) as usize;
        // column j of the matrix is self·ζ^j
        let cols: Vec<CycloNum> = (0..n)
            .map(|j| self * &CycloNum::zeta_pow(self.p, j as i64))
            .collect();
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n).map(|j| cols[j].coeffs[i].clone()).collect();
                row.push(if i == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                });
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::NotInvertible)?;
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for v in m[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=n {
                        let t = &f * &m[col][c];
                        m[r][c] -= t;
                    }
                }
            }
        }
        Ok(CycloNum {
            p: self.p,
            coeffs: m.into_iter().map(|row| row[n].clone()).collect(),
        })
    }

    fn check(&self, o: &CycloNum) {
        assert_eq!(self.p, o.p, "mixed cyclotomic fields");
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        self.check(o);
        CycloNum {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        self.check(o);
        CycloNum {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        self.check(o);
        let p = self.p as usize;
        let mut acc = vec![Rational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[(i + j) % p] += a * b;
                }
            }
        }
        let top = acc[p - 1].clone();
        CycloNum {
            p: self.p,
            coeffs: acc[..p - 1].iter().map(|c| c - &top).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(CycloNum, Add add, Sub sub, Mul mul);

/// The quadratic Gauss sum `g = Σ_x sgn(x) ζ_p^x`.
pub fn gauss_sum(p: u64) -> CycloNum {
    let mut counts = vec![0i64; p as usize];
    for x in 1..p {
        counts[x as usize] = crate::finite::legendre(x, p);
    }
    CycloNum::from_exponent_counts(p, &counts)
}
