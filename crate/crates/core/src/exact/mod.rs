//! Exact value rings: rationals, rational functions in `L`, the motive ring
//! `Q(L)[S]/(S² − 2S)`, the cyclotomic field `Q(ζ_p)` and its quadratic
//! subfield `Q(g)`.

mod cyclo;
mod motive;
mod poly;
mod quadg;
mod rational;

pub use cyclo::{gauss_sum, CycloNum};
pub use motive::MotiveElem;
pub use poly::{Poly, RatFuncL};
pub use quadg::{as_quadg, QuadGNum};
pub use rational::{fmt_rational, int, parse_rational, pow, rat, sign_of_minus_one, Rational};
