//! Prime-field arithmetic, unipotent classes of `SL(2, F_q)`, and the
//! cuspidal character data (Green's functions `Q_T`, `Q_G`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, rat, sign_of_minus_one, CycloNum, QuadGNum, Rational};

pub fn is_odd_prime(q: u64) -> bool {
    q >= 3
        && q % 2 == 1
        && (3..)
            .step_by(2)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Quadratic character of `F_p`, extended by zero.
pub fn legendre(x: u64, p: u64) -> i64 {
    let x = x % p;
    if x == 0 {
        return 0;
    }
    if pow_mod(x, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, m);
        }
        b = mulm(b, b, m);
        e >>= 1;
    }
    r
}

#[inline]
pub(crate) fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Least positive quadratic non-residue mod `p`.
pub fn smallest_nonsquare(p: u64) -> u64 {
    (2..p)
        .find(|&x| legendre(x, p) == -1)
        .expect("odd prime has a non-residue")
}

/// A sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn from_i64(s: i64) -> Sign {
        match s {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => panic!("not a sign: {s}"),
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        Sign::from_i64(-self.to_i64())
    }

    pub fn times(self, o: Sign) -> Sign {
        Sign::from_i64(self.to_i64() * o.to_i64())
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Element of the prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqElem {
    p: u64,
    v: u64,
}

impl FqElem {
    pub fn new(p: u64, v: i64) -> Self {
        FqElem {
            p,
            v: v.rem_euclid(p as i64) as u64,
        }
    }

    pub fn value(self) -> u64 {
        self.v
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    pub fn sgn(self) -> i64 {
        legendre(self.v, self.p)
    }

    pub fn inv(self) -> Result<Self> {
        if self.v == 0 {
            return Err(Error::NotInvertible);
        }
        Ok(FqElem {
            p: self.p,
            v: pow_mod(self.v, self.p - 2, self.p),
        })
    }
}

impl Add for FqElem {
    type Output = FqElem;
    fn add(self, o: FqElem) -> FqElem {
        FqElem {
            p: self.p,
            v: (self.v + o.v) % self.p,
        }
    }
}

impl Sub for FqElem {
    type Output = FqElem;
    fn sub(self, o: FqElem) -> FqElem {
        FqElem {
            p: self.p,
            v: (self.v + self.p - o.v) % self.p,
        }
    }
}

impl Mul for FqElem {
    type Output = FqElem;
    fn mul(self, o: FqElem) -> FqElem {
        FqElem {
            p: self.p,
            v: mulm(self.v, o.v, self.p),
        }
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        FqElem {
            p: self.p,
            v: (self.p - self.v) % self.p,
        }
    }
}

/// 2×2 matrix over `F_p`, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqMat {
    pub p: u64,
    pub m: [[u64; 2]; 2],
}

impl FqMat {
    pub fn new(p: u64, m: [[i64; 2]; 2]) -> Self {
        let r = |x: i64| x.rem_euclid(p as i64) as u64;
        FqMat {
            p,
            m: [[r(m[0][0]), r(m[0][1])], [r(m[1][0]), r(m[1][1])]],
        }
    }

    pub fn identity(p: u64) -> Self {
        FqMat {
            p,
            m: [[1, 0], [0, 1]],
        }
    }

    pub fn det(&self) -> u64 {
        let p = self.p;
        (mulm(self.m[0][0], self.m[1][1], p) + p - mulm(self.m[0][1], self.m[1][0], p)) % p
    }

    pub fn mul(&self, o: &FqMat) -> FqMat {
        let p = self.p;
        let mut r = [[0u64; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (mulm(self.m[i][0], o.m[0][j], p) + mulm(self.m[i][1], o.m[1][j], p)) % p;
            }
        }
        FqMat { p, m: r }
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inv_sl2(&self) -> FqMat {
        let p = self.p;
        FqMat {
            p,
            m: [
                [self.m[1][1], (p - self.m[0][1]) % p],
                [(p - self.m[1][0]) % p, self.m[0][0]],
            ],
        }
    }

    pub fn sub_identity(&self) -> FqMat {
        let p = self.p;
        FqMat {
            p,
            m: [
                [(self.m[0][0] + p - 1) % p, self.m[0][1]],
                [self.m[1][0], (self.m[1][1] + p - 1) % p],
            ],
        }
    }

    pub fn add_identity(&self) -> FqMat {
        let p = self.p;
        FqMat {
            p,
            m: [
                [(self.m[0][0] + 1) % p, self.m[0][1]],
                [self.m[1][0], (self.m[1][1] + 1) % p],
            ],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|&x| x == 0)
    }
}

/// All elements of `SL(2, F_p)`.
pub fn sl2_elements(p: u64) -> Vec<FqMat> {
    let mut out = Vec::with_capacity((p * (p * p - 1)) as usize);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = FqMat {
                        p,
                        m: [[a, b], [c, d]],
                    };
                    if m.det() == 1 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// The three unipotent conjugacy classes of `SL(2, F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum UnipClass {
    U0,
    U1,
    Ueps,
}

/// Nilpotent orbits matching the unipotent classes under the Cayley transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NilpClass {
    N0,
    N1,
    Neps,
}

impl UnipClass {
    pub const ALL: [UnipClass; 3] = [UnipClass::U0, UnipClass::U1, UnipClass::Ueps];

    pub fn nilpotent(self) -> NilpClass {
        match self {
            UnipClass::U0 => NilpClass::N0,
            UnipClass::U1 => NilpClass::N1,
            UnipClass::Ueps => NilpClass::Neps,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            UnipClass::U0 => "0",
            UnipClass::U1 => "1",
            UnipClass::Ueps => "eps",
        }
    }
}

impl NilpClass {
    pub const ALL: [NilpClass; 3] = [NilpClass::N0, NilpClass::N1, NilpClass::Neps];
}

/// Class of a nilpotent `N`: zero, or the sign of `b` after conjugating to `[0, b; 0, 0]`.
pub fn classify_nilpotent(n: &FqMat) -> Result<NilpClass> {
    let p = n.p;
    let tr = (n.m[0][0] + n.m[1][1]) % p;
    if tr != 0 || n.det() != 0 {
        return Err(Error::NotNilpotent);
    }
    if n.is_zero() {
        return Ok(NilpClass::N0);
    }
    let b = if n.m[0][1] != 0 {
        n.m[0][1]
    } else {
        // a Weyl reflection sends [z 0; y -z] with z = 0 to [0 -y; 0 0]
        (p - n.m[1][0]) % p
    };
    Ok(if legendre(b, p) == 1 {
        NilpClass::N1
    } else {
        NilpClass::Neps
    })
}

pub fn classify_unipotent(m: &FqMat) -> Result<UnipClass> {
    if m.det() != 1 {
        return Err(Error::NotUnipotent);
    }
    let n = m.sub_identity();
    if !n.mul(&n).is_zero() {
        return Err(Error::NotUnipotent);
    }
    Ok(
        match classify_nilpotent(&n).map_err(|_| Error::NotUnipotent)? {
            NilpClass::N0 => UnipClass::U0,
            NilpClass::N1 => UnipClass::U1,
            NilpClass::Neps => UnipClass::Ueps,
        },
    )
}

/// Green's polynomial of the Deligne–Lusztig character on nilpotent classes.
pub fn q_t(c: NilpClass, p: u64) -> Rational {
    match c {
        NilpClass::N0 => int(1 - p as i64),
        NilpClass::N1 | NilpClass::Neps => int(1),
    }
}

/// Difference of the two cuspidal characters of the quadratic series:
/// `g·s` on `n1`, `−g·s` on `neps`, zero at the origin.
pub fn q_g(c: NilpClass, p: u64) -> QuadGNum {
    let s = int(sign_of_minus_one(p));
    match c {
        NilpClass::N0 => QuadGNum::zero(p),
        NilpClass::N1 => QuadGNum::g(p).scale(&s),
        NilpClass::Neps => QuadGNum::g(p).scale(&-s),
    }
}

/// The cuspidal representations of `SL(2, F_q)` that enter here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CuspLabel {
    #[serde(rename = "theta")]
    SigmaTheta,
    #[serde(rename = "+")]
    SigmaPlus,
    #[serde(rename = "-")]
    SigmaMinus,
}

impl CuspLabel {
    pub const ALL: [CuspLabel; 3] = [
        CuspLabel::SigmaTheta,
        CuspLabel::SigmaPlus,
        CuspLabel::SigmaMinus,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CuspLabel::SigmaTheta => "theta",
            CuspLabel::SigmaPlus => "+",
            CuspLabel::SigmaMinus => "-",
        }
    }
}

/// Coefficients `(a_T, a_G)` with `χ_σ = a_T·Q_T + a_G·Q_G` on unipotents.
pub fn chi_coeffs(sigma: CuspLabel) -> (Rational, Rational) {
    match sigma {
        CuspLabel::SigmaTheta => (int(-1), int(0)),
        CuspLabel::SigmaPlus => (rat(-1, 2), rat(-1, 2)),
        CuspLabel::SigmaMinus => (rat(-1, 2), rat(1, 2)),
    }
}

/// Character value of `σ` on a nilpotent class (through the Cayley dictionary).
pub fn chi_value(sigma: CuspLabel, c: NilpClass, p: u64) -> QuadGNum {
    let (at, ag) = chi_coeffs(sigma);
    &QuadGNum::rational(p, at * q_t(c, p)) + &q_g(c, p).scale(&ag)
}

/// `γ_σ(a) = Σ_{sgn(x) = σ} ζ_p^{xa}`.
pub fn gamma_val(sig: Sign, a: u64, p: u64) -> CycloNum {
    let mut counts = vec![0i64; p as usize];
    for x in 1..p {
        if legendre(x, p) == sig.to_i64() {
            counts[mulm(x, a, p) as usize] += 1;
        }
    }
    CycloNum::from_exponent_counts(p, &counts)
}
