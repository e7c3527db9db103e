//! Truncated p-adic arithmetic over `Q_p` (uniformizer `ϖ = p`), 2×2 matrices
//! with precision tracking, the parahoric lattices and their reductions, the
//! modified Cayley transform and the standard representatives.

use std::fmt;

use crate::error::{Error, Result};
use crate::finite::{smallest_nonsquare, FqMat};
use crate::labels::CocycleLabel;

pub(crate) fn pow_u64(p: u64, k: u32) -> u64 {
    let mut r: u64 = 1;
    for _ in 0..k {
        r = r.checked_mul(p).expect("modulus exceeds 64 bits");
    }
    r
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

#[inline]
fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Valuation of a p-adic number, or a lower bound when it is zero at the working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ord {
    Exact(i64),
    AtLeast(i64),
}

/// An integer modulo `p^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicInt {
    pub p: u64,
    pub m: u32,
    pub value: u64,
}

impl PadicInt {
    pub fn new(p: u64, m: u32, value: i64) -> Self {
        let pm = pow_u64(p, m);
        PadicInt {
            p,
            m,
            value: value.rem_euclid(pm as i64) as u64,
        }
    }

    /// `(ord, ac)`; `ac` is `None` when the value vanishes at this precision.
    pub fn ord_ac(&self) -> (Ord, Option<u64>) {
        if self.value == 0 {
            return (Ord::AtLeast(self.m as i64), None);
        }
        let mut v = self.value;
        let mut k = 0;
        while v.is_multiple_of(self.p) {
            v /= self.p;
            k += 1;
        }
        (Ord::Exact(k), Some(v % self.p))
    }
}

/// A p-adic number `p^e·u` known modulo `p^{e+m}`; `u` is a unit unless the value is zero
/// at this precision, in which case `u = 0` and `m = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicNum {
    p: u64,
    e: i64,
    m: u32,
    u: u64,
}

impl PadicNum {
    fn normalized(p: u64, e: i64, m: u32, u: u64) -> Self {
        let (mut e, mut m, mut u) = (e, m, u % pow_u64(p, m));
        if u == 0 {
            return PadicNum {
                p,
                e: e + m as i64,
                m: 0,
                u: 0,
            };
        }
        while u % p == 0 {
            u /= p;
            e += 1;
            m -= 1;
        }
        PadicNum { p, e, m, u }
    }

    /// Zero known modulo `p^abs_prec`.
    pub fn zero(p: u64, abs_prec: i64) -> Self {
        PadicNum {
            p,
            e: abs_prec,
            m: 0,
            u: 0,
        }
    }

    pub fn from_int(p: u64, x: i64, abs_prec: i64) -> Self {
        Self::from_i128(p, x as i128, abs_prec)
    }

    pub fn from_i128(p: u64, x: i128, abs_prec: i64) -> Self {
        if x == 0 {
            return Self::zero(p, abs_prec);
        }
        let mut e = 0i64;
        let mut y = x;
        while y % p as i128 == 0 {
            y /= p as i128;
            e += 1;
        }
        if e >= abs_prec {
            return Self::zero(p, abs_prec);
        }
        let m = (abs_prec - e) as u32;
        let pm = pow_u64(p, m) as i128;
        Self::normalized(p, e, m, y.rem_euclid(pm) as u64)
    }

    /// `p^k·x` with `x` known to absolute precision `abs_prec` before scaling.
    pub fn shifted(self, k: i64) -> Self {
        PadicNum {
            e: self.e + k,
            ..self
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Absolute precision: the value is known modulo `p^{prec}`.
    pub fn prec(&self) -> i64 {
        self.e + self.m as i64
    }

    pub fn is_zero(&self) -> bool {
        self.u == 0
    }

    pub fn ord(&self) -> Ord {
        if self.u == 0 {
            Ord::AtLeast(self.e)
        } else {
            Ord::Exact(self.e)
        }
    }

    /// Lower bound on the valuation (exact when nonzero).
    pub fn ord_lower(&self) -> i64 {
        self.e
    }

    pub fn ac(&self) -> Option<u64> {
        (self.u != 0).then(|| self.u % self.p)
    }

    /// Whether `ord ≥ t`; errors if the precision cannot decide it.
    pub fn ord_at_least(&self, t: i64) -> Result<bool> {
        match self.ord() {
            Ord::Exact(k) => Ok(k >= t),
            Ord::AtLeast(k) if k >= t => Ok(true),
            Ord::AtLeast(k) => Err(Error::Precision { needed: t, have: k }),
        }
    }

    /// The residue of `p^{-t}·x` modulo `p`, assuming `ord(x) ≥ t`.
    pub fn digit(&self, t: i64) -> Result<u64> {
        if self.prec() <= t {
            return Err(Error::Precision {
                needed: t + 1,
                have: self.prec(),
            });
        }
        match self.ord() {
            Ord::Exact(k) if k == t => Ok(self.u % self.p),
            Ord::Exact(k) if k > t => Ok(0),
            Ord::AtLeast(_) => Ok(0),
            Ord::Exact(_) => Err(Error::NonMember("digit below the valuation")),
        }
    }

    /// Value modulo `p^k` as a nonnegative integer, for integral elements.
    pub fn residue(&self, k: u32) -> Result<u64> {
        if self.prec() < k as i64 {
            return Err(Error::Precision {
                needed: k as i64,
                have: self.prec(),
            });
        }
        if self.u == 0 || self.e >= k as i64 {
            return Ok(0);
        }
        if self.e < 0 {
            return Err(Error::NonMember("integers"));
        }
        let pk = pow_u64(self.p, k);
        Ok(mulm(pow_u64(self.p, self.e as u32), self.u, pk))
    }

    pub fn neg(&self) -> Self {
        if self.u == 0 {
            return *self;
        }
        let pm = pow_u64(self.p, self.m);
        PadicNum {
            u: pm - self.u,
            ..*self
        }
    }

    pub fn add(&self, o: &PadicNum) -> Self {
        assert_eq!(self.p, o.p);
        let p = self.p;
        let n = self.prec().min(o.prec());
        let e0 = self.e.min(o.e);
        if n <= e0 {
            return Self::zero(p, n);
        }
        let k = (n - e0) as u32;
        let pk = pow_u64(p, k);
        let part = |x: &PadicNum| -> u64 {
            let d = x.e - e0;
            if x.u == 0 || d >= k as i64 {
                0
            } else {
                mulm(x.u % pk, pow_u64(p, d as u32), pk)
            }
        };
        Self::normalized(p, e0, k, (part(self) + part(o)) % pk)
    }

    pub fn sub(&self, o: &PadicNum) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &PadicNum) -> Self {
        assert_eq!(self.p, o.p);
        let p = self.p;
        let e = self.e + o.e;
        let n = (self.e + o.prec()).min(o.e + self.prec());
        if self.u == 0 || o.u == 0 {
            return Self::zero(p, n);
        }
        let m = self.m.min(o.m);
        let pm = pow_u64(p, m);
        Self::normalized(p, e, m, mulm(self.u % pm, o.u % pm, pm))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.u == 0 {
            return Err(Error::NotInvertible);
        }
        let pm = pow_u64(self.p, self.m);
        Ok(PadicNum {
            p: self.p,
            e: -self.e,
            m: self.m,
            u: inv_mod(self.u, pm).ok_or(Error::NotInvertible)?,
        })
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u == 0 {
            write!(f, "O({}^{})", self.p, self.prec())
        } else {
            write!(
                f,
                "{}^{}*{} + O({}^{})",
                self.p,
                self.e,
                self.u,
                self.p,
                self.prec()
            )
        }
    }
}

/// 2×2 matrix over `Q_p` with per-entry valuations (negative exponents allowed).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicMat {
    pub e: [[PadicNum; 2]; 2],
}

impl PadicMat {
    pub fn new(e: [[PadicNum; 2]; 2]) -> Self {
        PadicMat { e }
    }

    pub fn p(&self) -> u64 {
        self.e[0][0].p
    }

    pub fn from_ints(p: u64, m: [[i64; 2]; 2], abs_prec: i64) -> Self {
        let f = |x| PadicNum::from_int(p, x, abs_prec);
        PadicMat::new([[f(m[0][0]), f(m[0][1])], [f(m[1][0]), f(m[1][1])]])
    }

    pub fn identity(p: u64, abs_prec: i64) -> Self {
        Self::from_ints(p, [[1, 0], [0, 1]], abs_prec)
    }

    pub fn entry(&self, i: usize, j: usize) -> &PadicNum {
        &self.e[i][j]
    }

    /// Smallest absolute precision among the entries.
    pub fn prec(&self) -> i64 {
        self.e.iter().flatten().map(|x| x.prec()).min().unwrap()
    }

    pub fn add(&self, o: &PadicMat) -> Self {
        let mut r = self.e;
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = self.e[i][j].add(&o.e[i][j]);
            }
        }
        PadicMat::new(r)
    }

    pub fn sub(&self, o: &PadicMat) -> Self {
        let mut r = self.e;
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = self.e[i][j].sub(&o.e[i][j]);
            }
        }
        PadicMat::new(r)
    }

    pub fn mul(&self, o: &PadicMat) -> Self {
        let mut r = self.e;
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = self.e[i][0]
                    .mul(&o.e[0][j])
                    .add(&self.e[i][1].mul(&o.e[1][j]));
            }
        }
        PadicMat::new(r)
    }

    pub fn scale(&self, c: &PadicNum) -> Self {
        let mut r = self.e;
        for row in r.iter_mut() {
            for x in row.iter_mut() {
                *x = x.mul(c);
            }
        }
        PadicMat::new(r)
    }

    pub fn det(&self) -> PadicNum {
        self.e[0][0]
            .mul(&self.e[1][1])
            .sub(&self.e[0][1].mul(&self.e[1][0]))
    }

    pub fn trace(&self) -> PadicNum {
        self.e[0][0].add(&self.e[1][1])
    }

    pub fn inv(&self) -> Result<Self> {
        let d = self.det().inv()?;
        let [[a, b], [c, dd]] = self.e;
        Ok(PadicMat::new([[dd, b.neg()], [c.neg(), a]]).scale(&d))
    }

    /// `a_λ⁻¹·M·a_λ` with `a_λ = diag(p^λ, p^{−λ})`: upper-right scales by `p^{−2λ}`, lower-left by `p^{2λ}`.
    pub fn conj_a(&self, lambda: i64) -> Self {
        let mut r = self.e;
        r[0][1] = r[0][1].shifted(-2 * lambda);
        r[1][0] = r[1][0].shifted(2 * lambda);
        PadicMat::new(r)
    }

    /// `η⁻¹·M·η` with `η = diag(1, p)`, which carries `G_(1)` onto `G_(0)`.
    pub fn conj_eta(&self) -> Self {
        let mut r = self.e;
        r[0][1] = r[0][1].shifted(1);
        r[1][0] = r[1][0].shifted(-1);
        PadicMat::new(r)
    }
}

impl fmt::Display for PadicMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}; {}, {}]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

/// `a_λ = diag(p^λ, p^{−λ})`.
pub fn a_lambda(p: u64, lambda: i64, abs_prec: i64) -> PadicMat {
    let one = PadicNum::from_int(p, 1, abs_prec);
    let zero = PadicNum::zero(p, abs_prec);
    PadicMat::new([[one.shifted(lambda), zero], [zero, one.shifted(-lambda)]])
}

/// Modified Cayley transform `(1 + Y/2)(1 − Y/2)⁻¹`.
pub fn cayley(y: &PadicMat) -> Result<PadicMat> {
    let p = y.p();
    let prec = y.prec().max(1);
    let half = PadicNum::from_int(p, 2, prec + 2).inv()?;
    let one = PadicMat::identity(p, prec + 2);
    let hy = y.scale(&half);
    Ok(one.add(&hy).mul(&one.sub(&hy).inv()?))
}

/// Inverse transform `2(h − 1)(h + 1)⁻¹`.
pub fn inverse_cayley(h: &PadicMat) -> Result<PadicMat> {
    let p = h.p();
    let prec = h.prec().max(1);
    let two = PadicNum::from_int(p, 2, prec + 2);
    let one = PadicMat::identity(p, prec + 2);
    Ok(h.sub(&one).mul(&h.add(&one).inv()?).scale(&two))
}

fn eps_lift(p: u64) -> i64 {
    smallest_nonsquare(p) as i64
}

/// `Y_{z,n}(u)` with `ε` the least non-residue.
pub fn y_rep(z: CocycleLabel, n: i64, u: i64, p: u64, abs_prec: i64) -> Result<PadicMat> {
    y_rep_with(z, n, u, p, abs_prec, eps_lift(p))
}

/// `Y_{z,n}(u)` with a caller-chosen lift `eps` of a non-residue.
pub fn y_rep_with(
    z: CocycleLabel,
    n: i64,
    u: i64,
    p: u64,
    abs_prec: i64,
    eps: i64,
) -> Result<PadicMat> {
    if n < z.n_min() {
        return Err(Error::Range(format!(
            "Y_{{{z},{n}}} requires n >= {}",
            z.n_min()
        )));
    }
    if u.rem_euclid(p as i64) == 0 {
        return Err(Error::Range("u must be a unit".into()));
    }
    if crate::finite::legendre(eps.rem_euclid(p as i64) as u64, p) != -1 {
        return Err(Error::Range(format!("{eps} is not a non-residue mod {p}")));
    }
    let c = |x: i64, k: i64| PadicNum::from_int(p, x, abs_prec - k).shifted(k);
    let zero = PadicNum::zero(p, abs_prec);
    let eps_inv = PadicNum::from_int(p, eps, abs_prec).inv()?;
    use CocycleLabel::*;
    let m = match z {
        S0 => [[c(u, n), zero], [zero, c(-u, n)]],
        S1 => [[zero, c(u, n)], [c(eps * u, n), zero]],
        S2 => [[zero, c(u, n - 1)], [c(eps * u, n + 1), zero]],
        T0 => [[zero, c(u, n)], [c(u, n + 1), zero]],
        T1 => [[zero, c(eps * u, n)], [c(u, n + 1).mul(&eps_inv), zero]],
        T2 => [[zero, c(u, n)], [c(eps * u, n + 1), zero]],
        T3 => [[zero, c(eps * u, n)], [c(u, n + 1), zero]],
    };
    Ok(PadicMat::new(m))
}

/// `X_z(v)`.
pub fn x_rep(z: CocycleLabel, v: i64, p: u64, abs_prec: i64) -> Result<PadicMat> {
    if z == CocycleLabel::S0 {
        return Err(Error::Range("no elliptic representative for s0".into()));
    }
    if v.rem_euclid(p as i64) == 0 {
        return Err(Error::Range("v must be a unit".into()));
    }
    let eps = eps_lift(p);
    let c = |x: i64, k: i64| PadicNum::from_int(p, x, abs_prec - k).shifted(k);
    let zero = PadicNum::zero(p, abs_prec);
    let eps_inv = PadicNum::from_int(p, eps, abs_prec).inv()?;
    use CocycleLabel::*;
    let m = match z {
        S1 => [[zero, c(v, 0)], [c(eps * v, 0), zero]],
        S2 => [[zero, c(v, -1)], [c(eps * v, 1), zero]],
        T0 => [[zero, c(v, 0)], [c(v, 1), zero]],
        T1 => [[zero, c(eps * v, 0)], [c(v, 1).mul(&eps_inv), zero]],
        T2 => [[zero, c(v, 0)], [c(eps * v, 1), zero]],
        T3 => [[zero, c(eps * v, 0)], [c(v, 1), zero]],
        S0 => unreachable!(),
    };
    Ok(PadicMat::new(m))
}

/// The lattices used here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// `SL(2, O)`.
    G0,
    /// `b ∈ P⁻¹, c ∈ P`.
    G1,
    /// `c ∈ P`.
    Iwahori,
    /// `sl(2, O)`.
    G00,
    /// Lie lattice of `G1`: `[z, xϖ⁻¹; yϖ, −z]`.
    G10,
    /// `[zϖ, x; yϖ, −zϖ]`.
    G01Half,
    /// `[c, aϖ⁻¹; b, −c]`.
    G01MinusHalf,
}

impl Lattice {
    fn name(self) -> &'static str {
        match self {
            Lattice::G0 => "G0",
            Lattice::G1 => "G1",
            Lattice::Iwahori => "Iwahori",
            Lattice::G00 => "g00",
            Lattice::G10 => "g10",
            Lattice::G01Half => "g01_half",
            Lattice::G01MinusHalf => "g01_minus_half",
        }
    }

    /// Required valuations of `[a b; c d]`.
    fn bounds(self) -> [[i64; 2]; 2] {
        match self {
            Lattice::G0 | Lattice::G00 => [[0, 0], [0, 0]],
            Lattice::G1 | Lattice::G10 => [[0, -1], [1, 0]],
            Lattice::Iwahori => [[0, 0], [1, 0]],
            Lattice::G01Half => [[1, 0], [1, 1]],
            Lattice::G01MinusHalf => [[0, -1], [0, 0]],
        }
    }
}

pub fn lattice_member(m: &PadicMat, which: Lattice) -> Result<bool> {
    let b = which.bounds();
    let mut ok = true;
    for i in 0..2 {
        for j in 0..2 {
            ok &= m.e[i][j].ord_at_least(b[i][j])?;
        }
    }
    Ok(ok)
}

/// Image of a lattice element in its finite quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    /// Element of `SL(2, F_q)`.
    Group(FqMat),
    /// Element of `sl(2, F_q)`.
    Lie(FqMat),
    /// Point of `A²(F_q)`.
    A2(u64, u64),
    /// Diagonal entry of the Iwahori quotient `GL(1, F_q)`.
    Torus(u64),
}

pub fn reduce(m: &PadicMat, which: Lattice) -> Result<Reduction> {
    if !lattice_member(m, which)? {
        return Err(Error::NonMember(which.name()));
    }
    let p = m.p();
    let b = which.bounds();
    let d = |i: usize, j: usize| m.e[i][j].digit(b[i][j]);
    Ok(match which {
        Lattice::G0 | Lattice::G1 => Reduction::Group(FqMat {
            p,
            m: [[d(0, 0)?, d(0, 1)?], [d(1, 0)?, d(1, 1)?]],
        }),
        Lattice::G00 | Lattice::G10 => Reduction::Lie(FqMat {
            p,
            m: [[d(0, 0)?, d(0, 1)?], [d(1, 0)?, d(1, 1)?]],
        }),
        Lattice::Iwahori => Reduction::Torus(d(0, 0)?),
        Lattice::G01Half => Reduction::A2(d(0, 1)?, d(1, 0)?),
        Lattice::G01MinusHalf => Reduction::A2(d(0, 1)?, d(1, 0)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(m: &PadicMat, k: u32) -> [[u64; 2]; 2] {
        let r = |i, j| m.entry(i, j).residue(k).unwrap();
        [[r(0, 0), r(0, 1)], [r(1, 0), r(1, 1)]]
    }

    #[test]
    fn representatives() {
        let y = y_rep(CocycleLabel::S1, 1, 1, 3, 6).unwrap();
        assert_eq!(ints(&y, 4), [[0, 3], [6, 0]]);
        let y = y_rep(CocycleLabel::T0, 0, 1, 3, 6).unwrap();
        assert_eq!(ints(&y, 4), [[0, 1], [3, 0]]);
        let y = y_rep(CocycleLabel::S0, 2, 1, 5, 6).unwrap();
        assert_eq!(ints(&y, 4), [[25, 0], [0, 625 - 25]]);
        let x = x_rep(CocycleLabel::S1, 1, 3, 6).unwrap();
        assert_eq!(ints(&x, 3), [[0, 1], [2, 0]]);
        let x = x_rep(CocycleLabel::T2, 1, 5, 6).unwrap();
        assert_eq!(ints(&x, 3), [[0, 1], [10, 0]]);
        let x = x_rep(CocycleLabel::T1, 1, 5, 6).unwrap();
        // 5·2⁻¹ mod 125 = 5·63
        assert_eq!(ints(&x, 3), [[0, 2], [315 % 125, 0]]);
    }

    #[test]
    fn cayley_example() {
        let y = y_rep(CocycleLabel::S1, 1, 1, 3, 2).unwrap();
        let h = cayley(&y).unwrap();
        assert_eq!(ints(&h, 2), [[1, 3], [6, 1]]);
    }

    #[test]
    fn ord_ac_examples() {
        assert_eq!(PadicInt::new(3, 5, 45).ord_ac(), (Ord::Exact(2), Some(2)));
        assert_eq!(PadicInt::new(3, 5, 1).ord_ac(), (Ord::Exact(0), Some(1)));
        assert_eq!(PadicInt::new(3, 5, 0).ord_ac(), (Ord::AtLeast(5), None));
    }

    #[test]
    fn lattices() {
        let id = PadicMat::identity(3, 4);
        assert!(lattice_member(&id, Lattice::G0).unwrap());
        assert!(!lattice_member(&a_lambda(3, 1, 4), Lattice::G0).unwrap());
        let one = PadicNum::from_int(3, 1, 4);
        let zero = PadicNum::zero(3, 4);
        let u = PadicMat::new([[one, one.shifted(-1)], [zero, one]]);
        assert!(lattice_member(&u, Lattice::G1).unwrap());
        assert!(!lattice_member(&u, Lattice::G0).unwrap());
    }

    #[test]
    fn reductions() {
        let y = y_rep(CocycleLabel::T0, 0, 1, 3, 6).unwrap();
        assert_eq!(reduce(&y, Lattice::G01Half).unwrap(), Reduction::A2(1, 1));
        let h = cayley(&y_rep(CocycleLabel::S1, 2, 1, 5, 6).unwrap()).unwrap();
        assert_eq!(
            reduce(&h, Lattice::G0).unwrap(),
            Reduction::Group(FqMat::identity(5))
        );
        let x = x_rep(CocycleLabel::S1, 1, 3, 6).unwrap();
        assert_eq!(
            reduce(&x, Lattice::G00).unwrap(),
            Reduction::Lie(FqMat::new(3, [[0, 1], [2, 0]]))
        );
    }

    #[test]
    fn undecidable_membership_is_an_error() {
        let z = PadicMat::new([[PadicNum::zero(3, 0); 2]; 2]);
        assert!(matches!(
            lattice_member(&z, Lattice::Iwahori),
            Err(Error::Precision { .. })
        ));
    }
}
