//! Finite Fourier transforms on `sl(2, F_q)` and on `A²(F_q)`, the orbit
//! functions of the elliptic representatives and their transforms.
//!
//! Transforms are the plain character sums `f̂(Y) = Σ_Z f(Z)·ζ^{⟨Y,Z⟩}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{as_quadg, int, rat, sign_of_minus_one, CycloNum, QuadGNum, Rational};
use crate::finite::{classify_nilpotent, legendre, mulm, q_t, smallest_nonsquare, FqMat};
use crate::labels::CocycleLabel;

/// Function on `sl(2, F_p)`, indexed by `(z, x, y)` for `[z x; y −z]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FnSl2 {
    pub p: u64,
    pub values: Vec<CycloNum>,
}

/// Function on `A²(F_p)`, indexed by `(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FnA2 {
    pub p: u64,
    pub values: Vec<CycloNum>,
}

impl FnSl2 {
    pub fn zero(p: u64) -> Self {
        FnSl2 {
            p,
            values: vec![CycloNum::zero(p); (p * p * p) as usize],
        }
    }

    pub fn index(p: u64, z: u64, x: u64, y: u64) -> usize {
        ((z * p + x) * p + y) as usize
    }

    pub fn coords(p: u64, i: usize) -> (u64, u64, u64) {
        let i = i as u64;
        (i / (p * p), (i / p) % p, i % p)
    }

    pub fn at(&self, z: u64, x: u64, y: u64) -> &CycloNum {
        &self.values[Self::index(self.p, z, x, y)]
    }
}

impl FnA2 {
    pub fn zero(p: u64) -> Self {
        FnA2 {
            p,
            values: vec![CycloNum::zero(p); (p * p) as usize],
        }
    }

    pub fn index(p: u64, x: u64, y: u64) -> usize {
        (x * p + y) as usize
    }

    pub fn at(&self, x: u64, y: u64) -> &CycloNum {
        &self.values[Self::index(self.p, x, y)]
    }
}

/// Trace pairing of `[c a; b −c]` with `[z x; y −z]`: `xb + ya + 2zc`.
fn pair_sl2(p: u64, y: (u64, u64, u64), z: (u64, u64, u64)) -> u64 {
    (mulm(2 * y.0 % p, z.0, p) + mulm(y.1, z.2, p) + mulm(y.2, z.1, p)) % p
}

/// Pairing `⟨(x, y), (a, b)⟩ = xb + ya`.
fn pair_a2(p: u64, xy: (u64, u64), ab: (u64, u64)) -> u64 {
    (mulm(xy.0, ab.1, p) + mulm(xy.1, ab.0, p)) % p
}

/// Groups the support by value; a rational-valued function transforms through
/// integer exponent histograms.
fn transform<F>(p: u64, values: &[CycloNum], n_out: usize, pairing: F) -> Vec<CycloNum>
where
    F: Fn(usize, usize) -> u64 + Sync,
{
    let mut groups: HashMap<Rational, Vec<usize>> = HashMap::new();
    let mut generic = false;
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        match v.as_rational() {
            Some(r) => groups.entry(r).or_default().push(i),
            None => {
                generic = true;
                break;
            }
        }
    }
    if generic {
        let support: Vec<usize> = (0..values.len())
            .filter(|&i| !values[i].is_zero())
            .collect();
        return (0..n_out)
            .into_par_iter()
            .map(|o| {
                let mut buckets = vec![CycloNum::zero(p); p as usize];
                for &i in &support {
                    let k = pairing(o, i) as usize;
                    buckets[k] = &buckets[k] + &values[i];
                }
                buckets
                    .iter()
                    .enumerate()
                    .fold(CycloNum::zero(p), |acc, (k, b)| {
                        &acc + &(b * &CycloNum::zeta_pow(p, k as i64))
                    })
            })
            .collect();
    }
    let mut groups: Vec<(Rational, Vec<usize>)> = groups.into_iter().collect();
    groups.sort_by(|a, b| a.0.cmp(&b.0));
    (0..n_out)
        .into_par_iter()
        .map(|o| {
            let mut acc = CycloNum::zero(p);
            for (val, idx) in &groups {
                let mut counts = vec![0i64; p as usize];
                for &i in idx {
                    counts[pairing(o, i) as usize] += 1;
                }
                acc = &acc + &CycloNum::from_exponent_counts(p, &counts).scale(val);
            }
            acc
        })
        .collect()
}

pub fn ft_sl2(f: &FnSl2) -> FnSl2 {
    let p = f.p;
    let n = (p * p * p) as usize;
    FnSl2 {
        p,
        values: transform(p, &f.values, n, |o, i| {
            pair_sl2(p, FnSl2::coords(p, o), FnSl2::coords(p, i))
        }),
    }
}

pub fn ft_a2(f: &FnA2) -> FnA2 {
    let p = f.p;
    let n = (p * p) as usize;
    FnA2 {
        p,
        values: transform(p, &f.values, n, |o, i| {
            let ab = (o as u64 / p, o as u64 % p);
            let xy = (i as u64 / p, i as u64 % p);
            pair_a2(p, xy, ab)
        }),
    }
}

/// Transform of `f` at a single point `[c a; b −c]`.
pub fn ft_sl2_at(f: &FnSl2, c: u64, a: u64, b: u64) -> CycloNum {
    let p = f.p;
    let mut out = CycloNum::zero(p);
    let mut counts: HashMap<Rational, Vec<i64>> = HashMap::new();
    for (i, v) in f.values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let k = pair_sl2(p, (c, a, b), FnSl2::coords(p, i));
        match v.as_rational() {
            Some(r) => counts.entry(r).or_insert_with(|| vec![0; p as usize])[k as usize] += 1,
            None => out = &out + &(v * &CycloNum::zeta_pow(p, k as i64)),
        }
    }
    for (r, cnt) in counts {
        out = &out + &CycloNum::from_exponent_counts(p, &cnt).scale(&r);
    }
    out
}

/// Indicator of `{xy + z² = ε̄v²}` scaled by `1/(q(q−1))`.
pub fn phi_orbit_sl2(p: u64, v: u64) -> Result<FnSl2> {
    phi_orbit_sl2_with(p, v, smallest_nonsquare(p))
}

pub fn phi_orbit_sl2_with(p: u64, v: u64, eps: u64) -> Result<FnSl2> {
    if v.is_multiple_of(p) {
        return Err(Error::Range("v must be nonzero".into()));
    }
    if legendre(eps, p) != -1 {
        return Err(Error::Range(format!("{eps} is not a non-residue mod {p}")));
    }
    let target = mulm(eps, mulm(v, v, p), p);
    let weight = CycloNum::from_rational(p, rat(1, (p * (p - 1)) as i64));
    let mut f = FnSl2::zero(p);
    let mut size = 0;
    for z in 0..p {
        for x in 0..p {
            for y in 0..p {
                if (mulm(x, y, p) + mulm(z, z, p)) % p == target {
                    f.values[FnSl2::index(p, z, x, y)] = weight.clone();
                    size += 1;
                }
            }
        }
    }
    assert_eq!(
        size,
        p * (p - 1),
        "orbit of the unramified representative has q(q-1) points"
    );
    Ok(f)
}

/// Checks `Q_T = (1 − q)·φ̂` on the nilpotent cone for every nonzero `v`.
pub fn springer_check(p: u64) -> bool {
    springer_check_with(p, smallest_nonsquare(p))
}

pub fn springer_check_with(p: u64, eps: u64) -> bool {
    let one_minus_q = int(1 - p as i64);
    (1..p).into_par_iter().all(|v| {
        let Ok(f) = phi_orbit_sl2_with(p, v, eps) else {
            return false;
        };
        let mut ok = true;
        for c in 0..p {
            for a in 0..p {
                for b in 0..p {
                    if !(mulm(a, b, p) + mulm(c, c, p)).is_multiple_of(p) {
                        continue;
                    }
                    let n = FqMat {
                        p,
                        m: [[c, a], [b, (p - c) % p]],
                    };
                    let cls = classify_nilpotent(&n).expect("cone point is nilpotent");
                    let lhs = CycloNum::from_rational(p, q_t(cls, p));
                    let rhs = ft_sl2_at(&f, c, a, b).scale(&one_minus_q);
                    ok &= lhs == rhs;
                }
            }
        }
        ok
    })
}

/// Orbits of the torus action `t·(a, b) = (t²a, t⁻²b)` on the cross `{ab = 0}` of the dual space.
///
/// `V1±` is the line `{(a, 0)}` (nonzero upper-right coordinate of the dual lattice),
/// `V2±` the line `{(0, b)}`, split by the sign of the nonzero coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VOrbit {
    V0,
    V1p,
    V1m,
    V2p,
    V2m,
}

impl VOrbit {
    pub const ALL: [VOrbit; 5] = [
        VOrbit::V0,
        VOrbit::V1p,
        VOrbit::V1m,
        VOrbit::V2p,
        VOrbit::V2m,
    ];
    pub const NONZERO: [VOrbit; 4] = [VOrbit::V1p, VOrbit::V1m, VOrbit::V2p, VOrbit::V2m];

    /// Orbit of the point `(a, b)`, or `None` off the cross.
    pub fn of(a: u64, b: u64, p: u64) -> Option<VOrbit> {
        match (a % p, b % p) {
            (0, 0) => Some(VOrbit::V0),
            (a, 0) => Some(if legendre(a, p) == 1 {
                VOrbit::V1p
            } else {
                VOrbit::V1m
            }),
            (0, b) => Some(if legendre(b, p) == 1 {
                VOrbit::V2p
            } else {
                VOrbit::V2m
            }),
            _ => None,
        }
    }

    /// `(l, α)` for the nonzero orbits.
    pub fn line_sign(self) -> Option<(u8, i64)> {
        match self {
            VOrbit::V0 => None,
            VOrbit::V1p => Some((1, 1)),
            VOrbit::V1m => Some((1, -1)),
            VOrbit::V2p => Some((2, 1)),
            VOrbit::V2m => Some((2, -1)),
        }
    }

    pub fn from_line_sign(l: u8, alpha: i64) -> VOrbit {
        match (l, alpha) {
            (1, 1) => VOrbit::V1p,
            (1, -1) => VOrbit::V1m,
            (2, 1) => VOrbit::V2p,
            (2, -1) => VOrbit::V2m,
            _ => panic!("no orbit ({l}, {alpha})"),
        }
    }

    /// A point of the orbit.
    pub fn representative(self, p: u64) -> (u64, u64) {
        let e = smallest_nonsquare(p);
        match self {
            VOrbit::V0 => (0, 0),
            VOrbit::V1p => (1, 0),
            VOrbit::V1m => (e, 0),
            VOrbit::V2p => (0, 1),
            VOrbit::V2m => (0, e),
        }
    }
}

impl fmt::Display for VOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Weighted indicator of the reduction of the ramified representative `X_z(v)` in `A²(F_q)`.
pub fn phi_orbit_a2(z: CocycleLabel, p: u64, v: u64) -> Result<FnA2> {
    phi_orbit_a2_with(z, p, v, smallest_nonsquare(p))
}

pub fn phi_orbit_a2_with(z: CocycleLabel, p: u64, v: u64, eps: u64) -> Result<FnA2> {
    if !z.is_ramified() {
        return Err(Error::Range(format!("{z} has no A² orbit function")));
    }
    if v.is_multiple_of(p) {
        return Err(Error::Range("v must be nonzero".into()));
    }
    let v2 = mulm(v, v, p);
    let (prod, sign_ref) = match z {
        CocycleLabel::T0 => (v2, v),
        CocycleLabel::T1 => (v2, mulm(eps, v, p)),
        CocycleLabel::T2 => (mulm(eps, v2, p), v),
        _ => (mulm(eps, v2, p), mulm(eps, v, p)),
    };
    let target_sign = legendre(sign_ref, p);
    let weight = CycloNum::from_rational(p, rat(2, (p - 1) as i64));
    let mut f = FnA2::zero(p);
    let mut size = 0;
    for x in 1..p {
        for y in 1..p {
            if mulm(x, y, p) == prod && legendre(x, p) == target_sign {
                f.values[FnA2::index(p, x, y)] = weight.clone();
                size += 1;
            }
        }
    }
    assert_eq!(2 * size, p - 1, "ramified orbit has (q-1)/2 points");
    Ok(f)
}

/// Restricts `f̂` to the five orbits of the cross, asserting constancy on each.
pub fn restrict_to_orbits(fh: &FnA2) -> Result<BTreeMap<VOrbit, CycloNum>> {
    let p = fh.p;
    let mut out: BTreeMap<VOrbit, CycloNum> = BTreeMap::new();
    for a in 0..p {
        for b in 0..p {
            let Some(o) = VOrbit::of(a, b, p) else {
                continue;
            };
            let val = fh.at(a, b);
            match out.get(&o) {
                Some(prev) if prev != val => return Err(Error::NonConstantOrbit(o.to_string())),
                Some(_) => {}
                None => {
                    out.insert(o, val.clone());
                }
            }
        }
    }
    Ok(out)
}

pub fn phihat_a2_on_orbits(z: CocycleLabel, p: u64, v: u64) -> Result<BTreeMap<VOrbit, CycloNum>> {
    phihat_a2_on_orbits_with(z, p, v, smallest_nonsquare(p))
}

pub fn phihat_a2_on_orbits_with(
    z: CocycleLabel,
    p: u64,
    v: u64,
    eps: u64,
) -> Result<BTreeMap<VOrbit, CycloNum>> {
    restrict_to_orbits(&ft_a2(&phi_orbit_a2_with(z, p, v, eps)?))
}

/// Signs of `(t0, t1, t2, t3)` in `φ_(0)` and `φ_(1)`.
pub fn combination_signs(which: u8) -> [i64; 4] {
    match which {
        0 => [1, -1, 1, -1],
        1 => [1, -1, -1, 1],
        _ => panic!("combination index is 0 or 1"),
    }
}

/// Transform of `φ_(which)` on the five orbits, computed from the brute-force transforms.
pub fn phi01_hat(which: u8, p: u64, v: u64) -> Result<BTreeMap<VOrbit, QuadGNum>> {
    phi01_hat_with(which, p, v, smallest_nonsquare(p))
}

pub fn phi01_hat_with(which: u8, p: u64, v: u64, eps: u64) -> Result<BTreeMap<VOrbit, QuadGNum>> {
    if which > 1 {
        return Err(Error::Range("combination index is 0 or 1".into()));
    }
    let signs = combination_signs(which);
    let mut acc: BTreeMap<VOrbit, CycloNum> = VOrbit::ALL
        .iter()
        .map(|&o| (o, CycloNum::zero(p)))
        .collect();
    for (z, s) in CocycleLabel::RAMIFIED.into_iter().zip(signs) {
        for (o, val) in phihat_a2_on_orbits_with(z, p, v, eps)? {
            let e = acc.get_mut(&o).unwrap();
            *e = &*e + &val.scale(&int(s));
        }
    }
    acc.into_iter()
        .map(|(o, c)| Ok((o, as_quadg(&c)?)))
        .collect()
}

/// The closed forms `φ̂_(0)(0, b) = (4/(q−1))·g·s·sgn(b)`, `φ̂_(0)(a, 0) = 0`,
/// `φ̂_(1)(a, 0) = (4/(q−1))·g·sgn(a)`, `φ̂_(1)(0, b) = 0`, scaled by `sgn(v)`.
pub fn phi01_closed_form(which: u8, p: u64, v: u64) -> BTreeMap<VOrbit, QuadGNum> {
    let s = sign_of_minus_one(p);
    let sv = legendre(v, p);
    let unit = QuadGNum::g(p).scale(&rat(4, p as i64 - 1));
    VOrbit::ALL
        .iter()
        .map(|&o| {
            let val = match (which, o.line_sign()) {
                (0, Some((2, alpha))) => unit.scale(&int(s * alpha * sv)),
                (1, Some((1, alpha))) => unit.scale(&int(alpha * sv)),
                _ => QuadGNum::zero(p),
            };
            (o, val)
        })
        .collect()
}

/// One comparison between a brute-force transform value and its closed form.
#[derive(Clone, Debug, Serialize)]
pub struct Phi01Check {
    pub p: u64,
    pub which: u8,
    pub v: u64,
    pub orbit: VOrbit,
    pub brute: QuadGNum,
    pub closed: QuadGNum,
    pub pass: bool,
}

/// Compares the brute-force transforms of `φ_(0)`, `φ_(1)` with the closed forms, for `v = 1` and a non-square `v`.
pub fn phi01_identity_checks(p: u64) -> Result<Vec<Phi01Check>> {
    let mut out = Vec::new();
    for v in [1, smallest_nonsquare(p)] {
        for which in [0u8, 1] {
            let brute = phi01_hat(which, p, v)?;
            let closed = phi01_closed_form(which, p, v);
            for o in VOrbit::ALL {
                let (b, c) = (brute[&o].clone(), closed[&o].clone());
                out.push(Phi01Check {
                    p,
                    which,
                    v,
                    orbit: o,
                    pass: b == c,
                    brute: b,
                    closed: c,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{gamma_val, Sign};

    #[test]
    fn delta_transforms_to_one() {
        let mut f = FnSl2::zero(3);
        f.values[0] = CycloNum::one(3);
        assert!(ft_sl2(&f).values.iter().all(|v| *v == CycloNum::one(3)));
    }

    #[test]
    fn constant_transforms_to_delta() {
        let f = FnA2 {
            p: 5,
            values: vec![CycloNum::one(5); 25],
        };
        let fh = ft_a2(&f);
        assert_eq!(fh.values[0], CycloNum::from_int(5, 25));
        assert!(fh.values[1..].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn t0_orbit_function() {
        let f = phi_orbit_a2(CocycleLabel::T0, 5, 1).unwrap();
        let support: Vec<(u64, u64)> = (0..25u64)
            .filter(|&i| !f.values[i as usize].is_zero())
            .map(|i| (i / 5, i % 5))
            .collect();
        assert_eq!(support, vec![(1, 1), (4, 4)]);
        assert_eq!(f.at(1, 1).as_rational(), Some(rat(1, 2)));
    }

    #[test]
    fn ramified_transforms_match_gamma_values() {
        let p = 7;
        let w = rat(2, 6);
        let t0 = phihat_a2_on_orbits(CocycleLabel::T0, p, 1).unwrap();
        assert_eq!(t0[&VOrbit::V2p], gamma_val(Sign::Plus, 1, p).scale(&w));
        assert_eq!(t0[&VOrbit::V0], CycloNum::one(p));
        let t1 = phihat_a2_on_orbits(CocycleLabel::T1, p, 1).unwrap();
        assert_eq!(t1[&VOrbit::V1p], gamma_val(Sign::Minus, 1, p).scale(&w));
    }

    #[test]
    fn orbit_classification() {
        assert_eq!(VOrbit::of(0, 0, 5), Some(VOrbit::V0));
        assert_eq!(VOrbit::of(2, 0, 5), Some(VOrbit::V1m));
        assert_eq!(VOrbit::of(0, 4, 5), Some(VOrbit::V2p));
        assert_eq!(VOrbit::of(1, 1, 5), None);
    }
}
