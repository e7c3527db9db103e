use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial in `L` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quo[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quo), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = super::rational::fmt_rational(c);
            match i {
                0 => write!(f, "({cs})")?,
                1 => write!(f, "({cs})*L")?,
                _ => write!(f, "({cs})*L^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rational function in `L` over Q, kept reduced with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncL {
    num: Poly,
    den: Poly,
}

impl RatFuncL {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFuncL::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.lead().unwrap().recip();
        RatFuncL {
            num: n.scale(&lead),
            den: d.scale(&lead),
        }
    }

    pub fn zero() -> Self {
        RatFuncL {
            num: Poly::zero(),
            den: Poly::constant(Rational::one()),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFuncL {
            num: Poly::constant(c),
            den: Poly::constant(Rational::one()),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(int(c))
    }

    /// The Lefschetz symbol `L`.
    pub fn l() -> Self {
        Self::l_pow(1)
    }

    /// `L^k` for any integer `k`.
    pub fn l_pow(k: i32) -> Self {
        if k >= 0 {
            RatFuncL::new(
                Poly::monomial(Rational::one(), k as usize),
                Poly::constant(Rational::one()),
            )
        } else {
            RatFuncL::new(
                Poly::constant(Rational::one()),
                Poly::monomial(Rational::one(), (-k) as usize),
            )
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatFuncL::new(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Self {
        RatFuncL::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFuncL) -> Self {
        self * &o.inv()
    }

    /// Specializes `L ↦ q`.
    pub fn eval(&self, q: u64) -> Result<Rational> {
        let x = Rational::from_integer(q.into());
        let d = self.den.eval(&x);
        if d.is_zero() {
            return Err(Error::PoleAtQ { q });
        }
        Ok(self.num.eval(&x) / d)
    }
}

impl Add for &RatFuncL {
    type Output = RatFuncL;
    fn add(self, o: &RatFuncL) -> RatFuncL {
        if self.den == o.den {
            return RatFuncL::new(&self.num + &o.num, self.den.clone());
        }
        RatFuncL::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatFuncL {
    type Output = RatFuncL;
    fn sub(self, o: &RatFuncL) -> RatFuncL {
        self + &(-o)
    }
}

impl Neg for &RatFuncL {
    type Output = RatFuncL;
    fn neg(self) -> RatFuncL {
        RatFuncL {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFuncL {
    type Output = RatFuncL;
    fn mul(self, o: &RatFuncL) -> RatFuncL {
        RatFuncL::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl fmt::Display for RatFuncL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}
