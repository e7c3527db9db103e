use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::RatFuncL;
use super::rational::{int, sign_of_minus_one, Rational};
use crate::error::{Error, Result};

/// Element `a + b·S` of `Q(L)[S]/(S² − 2S)`, where `S` is the class of `x² = −1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MotiveElem {
    pub a: RatFuncL,
    pub b: RatFuncL,
}

impl MotiveElem {
    pub fn new(a: RatFuncL, b: RatFuncL) -> Self {
        MotiveElem { a, b }
    }

    pub fn zero() -> Self {
        Self::from(RatFuncL::zero())
    }

    pub fn one() -> Self {
        Self::from(RatFuncL::one())
    }

    pub fn l() -> Self {
        Self::from(RatFuncL::l())
    }

    pub fn l_pow(k: i32) -> Self {
        Self::from(RatFuncL::l_pow(k))
    }

    pub fn s() -> Self {
        MotiveElem::new(RatFuncL::zero(), RatFuncL::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from(RatFuncL::from_int(c))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        MotiveElem::new(self.a.scale(c), self.b.scale(c))
    }

    /// Divides by a pure rational function of `L`.
    pub fn div_l(&self, d: &RatFuncL) -> Self {
        MotiveElem::new(self.a.div(d), self.b.div(d))
    }

    /// Trace of Frobenius at `q`: `L ↦ q`, `S ↦ 1 + sgn_q(−1)`.
    pub fn trfrob(&self, q: u64) -> Result<Rational> {
        if q < 3 || !crate::finite::is_odd_prime(q) {
            return Err(Error::Range(format!("q = {q} is not an odd prime")));
        }
        let s_count = int(1 + sign_of_minus_one(q));
        Ok(self.a.eval(q)? + self.b.eval(q)? * s_count)
    }
}

impl From<RatFuncL> for MotiveElem {
    fn from(a: RatFuncL) -> Self {
        MotiveElem::new(a, RatFuncL::zero())
    }
}

impl Add for &MotiveElem {
    type Output = MotiveElem;
    fn add(self, o: &MotiveElem) -> MotiveElem {
        MotiveElem::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &MotiveElem {
    type Output = MotiveElem;
    fn sub(self, o: &MotiveElem) -> MotiveElem {
        MotiveElem::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Neg for &MotiveElem {
    type Output = MotiveElem;
    fn neg(self) -> MotiveElem {
        MotiveElem::new(-&self.a, -&self.b)
    }
}

impl Mul for &MotiveElem {
    type Output = MotiveElem;
    fn mul(self, o: &MotiveElem) -> MotiveElem {
        let ad = &self.a * &o.b;
        let bc = &self.b * &o.a;
        let bd = &self.b * &o.b;
        let two_bd = &bd + &bd;
        MotiveElem::new(&self.a * &o.a, &(&ad + &bc) + &two_bd)
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
forward_owned!(MotiveElem, Add add, Sub sub, Mul mul);

impl fmt::Display for MotiveElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})*S", self.a, self.b)
        }
    }
}
