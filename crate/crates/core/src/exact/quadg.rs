use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::cyclo::{gauss_sum, CycloNum};
use super::rational::{fmt_rational, int, sign_of_minus_one, Rational};
use crate::error::{Error, Result};

/// Element `a + b·g` of `Q(g)`, with `g` the quadratic Gauss sum and `g² = sgn(−1)·p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadGNum {
    p: u64,
    pub a: Rational,
    pub b: Rational,
}

impl QuadGNum {
    pub fn new(p: u64, a: Rational, b: Rational) -> Self {
        QuadGNum { p, a, b }
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, Rational::zero(), Rational::zero())
    }

    pub fn rational(p: u64, a: Rational) -> Self {
        Self::new(p, a, Rational::zero())
    }

    pub fn g(p: u64) -> Self {
        Self::new(p, Rational::zero(), int(1))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn gsq(&self) -> Rational {
        int(sign_of_minus_one(self.p) * self.p as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.p, &self.a * c, &self.b * c)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.p, self.a.clone(), -&self.b)
    }

    pub fn inv(&self) -> Result<Self> {
        let norm = &self.a * &self.a - &self.b * &self.b * self.gsq();
        if norm.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(self.conj().scale(&norm.recip()))
    }

    /// Image in `Q(ζ_p)`.
    pub fn embed(&self) -> CycloNum {
        &CycloNum::from_rational(self.p, self.a.clone()) + &gauss_sum(self.p).scale(&self.b)
    }

    fn check(&self, o: &QuadGNum) {
        assert_eq!(self.p, o.p, "mixed quadratic fields");
    }
}

/// Writes a cyclotomic number as `a + b·g`; fails if it lies outside `Q(g)`.
pub fn as_quadg(c: &CycloNum) -> Result<QuadGNum> {
    let p = c.p();
    let g = gauss_sum(p);
    let i = (1..g.coeffs().len())
        .find(|&i| !g.coeffs()[i].is_zero())
        .expect("gauss sum has a nonconstant coordinate");
    let b = &c.coeffs()[i] / &g.coeffs()[i];
    let a = &c.coeffs()[0] - &b * &g.coeffs()[0];
    let out = QuadGNum::new(p, a, b);
    if &out.embed() != c {
        return Err(Error::NotInSubfield { p });
    }
    Ok(out)
}

impl Add for &QuadGNum {
    type Output = QuadGNum;
    fn add(self, o: &QuadGNum) -> QuadGNum {
        self.check(o);
        QuadGNum::new(self.p, &self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &QuadGNum {
    type Output = QuadGNum;
    fn sub(self, o: &QuadGNum) -> QuadGNum {
        self.check(o);
        QuadGNum::new(self.p, &self.a - &o.a, &self.b - &o.b)
    }
}

impl Neg for &QuadGNum {
    type Output = QuadGNum;
    fn neg(self) -> QuadGNum {
        QuadGNum::new(self.p, -&self.a, -&self.b)
    }
}

impl Mul for &QuadGNum {
    type Output = QuadGNum;
    fn mul(self, o: &QuadGNum) -> QuadGNum {
        self.check(o);
        QuadGNum::new(
            self.p,
            &self.a * &o.a + &self.b * &o.b * self.gsq(),
            &self.a * &o.b + &self.b * &o.a,
        )
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
forward_owned!(QuadGNum, Add add, Sub sub, Mul mul);

impl fmt::Display for QuadGNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + ({})*g",
            fmt_rational(&self.a),
            fmt_rational(&self.b)
        )
    }
}

impl Serialize for QuadGNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuadGNum", 3)?;
        st.serialize_field("a", &fmt_rational(&self.a))?;
        st.serialize_field("b", &fmt_rational(&self.b))?;
        st.serialize_field("gsq", &fmt_rational(&self.gsq()))?;
        st.end()
    }
}
