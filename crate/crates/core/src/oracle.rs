//! Brute-force coset counts by enumeration of `SL(2, Z/p^m)`.
//!
//! For a vertex `x` the number `N^x_{U,λ}(h)` of cosets `y·a_λ·G_x` with
//! `ρ((y a_λ)⁻¹ h (y a_λ)) ∈ U` is the fraction of `y ∈ G_(0)` satisfying the
//! condition times the number of cosets in `G_x a_λ G_x / G_x`. The vertex
//! `(1)` is reduced to `(0)` by conjugating with `η = diag(1, p)`. The Iwahori
//! counts `N_{V,λ}(Y)` are computed the same way on `𝔤_{(01),−1/2}`.
//!
//! The level `m′` is raised until every tested valuation is decided; an
//! element whose relevant entry vanishes modulo `p^{m′}` before the tested
//! digit is reported as ambiguous and forces a retry.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{QuadGNum, Rational};
use crate::finite::{
    classify_unipotent, legendre, q_g, q_t, smallest_nonsquare, FqMat, Sign, UnipClass,
};
use crate::fourier::VOrbit;
use crate::labels::{CellIndex, CocycleLabel, Vertex};
use crate::padic::{cayley, inv_mod, pow_u64, y_rep_with, PadicMat};

/// Largest enumeration size attempted before giving up with a precision error.
const MAX_GROUP_ORDER: u64 = 20_000_000;

/// Which double-coset space to count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetPair {
    VertexVertex,
    VertexIwahori,
}

/// `|G_x \ G_x a_λ G_y|` in the normalization of the coset numbers.
pub fn coset_count(pair: CosetPair, lambda: i64, p: u64) -> Result<u64> {
    match pair {
        CosetPair::VertexVertex if lambda < 0 => {
            Err(Error::Range("vertex-vertex needs lambda >= 0".into()))
        }
        CosetPair::VertexVertex if lambda == 0 => Ok(1),
        CosetPair::VertexVertex => Ok((p + 1) * pow_u64(p, (2 * lambda - 1) as u32)),
        CosetPair::VertexIwahori if lambda > 0 => Ok(pow_u64(p, (2 * lambda - 1) as u32)),
        CosetPair::VertexIwahori => Ok(pow_u64(p, (2 * -lambda) as u32)),
    }
}

/// `|SL(2, Z/p^m)| = p^{3m−2}(p² − 1)`.
pub fn sl2_order(p: u64, m: u32) -> u64 {
    pow_u64(p, 3 * m - 2) * (p * p - 1)
}

/// Index of `{upper-right ≡ 0 mod p^{2λ}}` in `SL(2, Z/p^m)`, by enumeration.
pub fn congruence_index_enumerated(p: u64, lambda: u32, m: u32) -> Result<u64> {
    if m < 2 * lambda {
        return Err(Error::Precision {
            needed: 2 * lambda as i64,
            have: m as i64,
        });
    }
    let modulus = pow_u64(p, 2 * lambda);
    let mut inside = 0u64;
    let mut total = 0u64;
    for_each_sl2(p, m, |_, b, _, _| {
        total += 1;
        if b % modulus == 0 {
            inside += 1;
        }
    });
    Ok(total / inside)
}

fn for_each_sl2(p: u64, m: u32, mut f: impl FnMut(u64, u64, u64, u64)) {
    let pm = pow_u64(p, m);
    for a in 0..pm {
        sl2_row(p, pm, a, &mut f);
    }
}

/// All `[a b; c d] ∈ SL(2, Z/p^m)` with first entry `a`.
#[inline]
fn sl2_row(p: u64, pm: u64, a: u64, f: &mut impl FnMut(u64, u64, u64, u64)) {
    if !a.is_multiple_of(p) {
        let ainv = inv_mod(a, pm).unwrap();
        for c in 0..pm {
            for b in 0..pm {
                let d = (1 + b * c) % pm * ainv % pm;
                f(a, b, c, d);
            }
        }
    } else {
        for c in (0..pm).filter(|c| c % p != 0) {
            let cinv = inv_mod(c, pm).unwrap();
            for d in 0..pm {
                let b = (a * d + pm - 1) % pm * cinv % pm;
                f(a, b, c, d);
            }
        }
    }
}

/// Options shared by the oracle queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Unit `u` of the representative; defaults to `1` or the least non-residue according to `ν`.
    pub u: Option<i64>,
    /// Lift of the non-residue `ε`; defaults to the least non-residue.
    pub eps: Option<i64>,
    /// Number of tail terms beyond `n/2` checked for `s0` cells.
    pub s0_tail: i64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            u: None,
            eps: None,
            s0_tail: 1,
        }
    }
}

impl OracleOptions {
    fn unit(&self, cell: CellIndex, p: u64) -> i64 {
        self.u.unwrap_or(match cell.nu {
            Sign::Plus => 1,
            Sign::Minus => smallest_nonsquare(p) as i64,
        })
    }

    fn eps(&self, p: u64) -> i64 {
        self.eps.unwrap_or(smallest_nonsquare(p) as i64)
    }
}

/// Whether `(p, cell)` lies in the enumeration scope.
pub fn in_scope(p: u64, cell: CellIndex) -> bool {
    (p == 3 && cell.n <= 3) || (p == 5 && cell.n <= 1)
}

enum Fail {
    Ambiguous,
    Bug(Error),
}

/// Valuation of a residue modulo `p^m` (`m` when it vanishes) and its unit digit.
#[inline]
fn ord_digit(x: u64, p: u64, m: u32) -> (u32, u64) {
    if x == 0 {
        return (m, 0);
    }
    let mut x = x;
    let mut k = 0;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    (k, x % p)
}

/// Matrix `M` as `p^v·M0` with `M0` modulo `p^m`.
fn scaled_residues(mat: &PadicMat, m: u32) -> Result<(i64, [[u64; 2]; 2])> {
    let v = mat.e.iter().flatten().map(|x| x.ord_lower()).min().unwrap();
    if v < 0 {
        return Err(Error::NonMember("integral matrices"));
    }
    // precision policy: two digits of slack beyond the last tested one
    let need = v + m as i64 + 2;
    if mat.prec() < need {
        return Err(Error::Precision {
            needed: need,
            have: mat.prec(),
        });
    }
    let mut r = [[0u64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = mat.e[i][j].shifted(-v).residue(m)?;
        }
    }
    Ok((v, r))
}

/// Counts per slot over `y ∈ SL(2, Z/p^m)` of a kernel applied to `y⁻¹·M0·y`.
fn enumerate<K>(
    p: u64,
    m: u32,
    h0: [[u64; 2]; 2],
    slots: usize,
    kernel: K,
) -> std::result::Result<Vec<u64>, Fail>
where
    K: Fn([u64; 4], &mut [u64]) -> std::result::Result<(), Fail> + Sync,
{
    let pm = pow_u64(p, m);
    let [[h11, h12], [h21, h22]] = h0;
    let counts = (0..pm)
        .into_par_iter()
        .map(|a| {
            let mut acc = vec![0u64; slots];
            let mut err = None;
            sl2_row(p, pm, a, &mut |a, b, c, d| {
                if err.is_some() {
                    return;
                }
                let t11 = (h11 * a + h12 * c) % pm;
                let t12 = (h11 * b + h12 * d) % pm;
                let t21 = (h21 * a + h22 * c) % pm;
                let t22 = (h21 * b + h22 * d) % pm;
                let z11 = (d * t11 + (pm - b) * t21) % pm;
                let z12 = (d * t12 + (pm - b) * t22) % pm;
                let z21 = (a * t21 + (pm - c) * t11) % pm;
                let z22 = (a * t22 + (pm - c) * t12) % pm;
                if let Err(e) = kernel([z11, z12, z21, z22], &mut acc) {
                    err = Some(e);
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(acc),
            }
        })
        .try_reduce(
            || vec![0u64; slots],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                Ok(x)
            },
        )?;
    Ok(counts)
}

fn with_adaptive_level<T>(
    p: u64,
    mut run: impl FnMut(u32) -> std::result::Result<T, Fail>,
) -> Result<(T, u32)> {
    let mut m = 1;
    loop {
        if sl2_order(p, m) > MAX_GROUP_ORDER {
            return Err(Error::Precision {
                needed: m as i64,
                have: m as i64 - 1,
            });
        }
        match run(m) {
            Ok(t) => return Ok((t, m)),
            Err(Fail::Ambiguous) => m += 1,
            Err(Fail::Bug(e)) => return Err(e),
        }
    }
}

/// Per-λ unipotent class counts at a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexProfile {
    pub lambdas: Vec<i64>,
    /// `N_{U,λ}` indexed by `[λ][U0, U1, Uε]`.
    pub counts: Vec<[Rational; 3]>,
    pub level: u32,
}

/// Per-λ orbit counts at the Iwahori vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IwahoriProfile {
    pub lambdas: Vec<i64>,
    /// `N_{V,λ}` indexed by `[λ][V0, V1+, V1−, V2+, V2−]`.
    pub counts: Vec<[Rational; 5]>,
    pub level: u32,
}

fn class_index(c: UnipClass) -> usize {
    match c {
        UnipClass::U0 => 0,
        UnipClass::U1 => 1,
        UnipClass::Ueps => 2,
    }
}

fn orbit_index(o: VOrbit) -> usize {
    VOrbit::ALL.iter().position(|&x| x == o).unwrap()
}

fn working_precision(cell: CellIndex) -> i64 {
    cell.n + 16
}

/// Vertex counts for the given λ values.
pub fn vertex_counts(
    p: u64,
    x: Vertex,
    cell: CellIndex,
    lambdas: &[i64],
    opts: OracleOptions,
) -> Result<VertexProfile> {
    if lambdas.iter().any(|&l| l < 0) {
        return Err(Error::Range("vertex counts need lambda >= 0".into()));
    }
    let y = y_rep_with(
        cell.z,
        cell.n,
        opts.unit(cell, p),
        p,
        working_precision(cell),
        opts.eps(p),
    )?;
    let mut h = cayley(&y)?;
    if x == Vertex::V1 {
        h = h.conj_eta();
    }
    let hm1 = h.sub(&PadicMat::identity(p, working_precision(cell)));
    let nl = lambdas.len();
    let (raw, level) = with_adaptive_level(p, |m| {
        let (v, h0) = scaled_residues(&hm1, m).map_err(Fail::Bug)?;
        let v = v as u32;
        enumerate(p, m, h0, 3 * nl, |[z11, z12, z21, z22], acc| {
            for (i, &lambda) in lambdas.iter().enumerate() {
                let two_l = 2 * lambda as u32;
                let (o, unit) = ord_digit(z12, p, m);
                let ur = if z12 == 0 {
                    if two_l >= v + m {
                        return Err(Fail::Ambiguous);
                    }
                    0
                } else if v + o < two_l {
                    continue;
                } else if v + o == two_l {
                    unit
                } else {
                    0
                };
                let low = if v + two_l >= 1 { 0 } else { z21 % p };
                let (d1, d2) = if v >= 1 {
                    (1, 1)
                } else {
                    ((1 + z11) % p, (1 + z22) % p)
                };
                let red = FqMat {
                    p,
                    m: [[d1, ur], [low, d2]],
                };
                let cls = classify_unipotent(&red).map_err(Fail::Bug)?;
                acc[3 * i + class_index(cls)] += 1;
            }
            Ok(())
        })
    })?;
    let order = sl2_order(p, level);
    let mut counts = Vec::with_capacity(nl);
    for (i, &lambda) in lambdas.iter().enumerate() {
        let cc = coset_count(CosetPair::VertexVertex, lambda, p)?;
        let row: [Rational; 3] = std::array::from_fn(|k| {
            Rational::new(
                BigInt::from(raw[3 * i + k]) * BigInt::from(cc),
                BigInt::from(order),
            )
        });
        if let Some(bad) = row.iter().find(|r| !r.is_integer()) {
            return Err(Error::NonIntegral(format!(
                "N at lambda = {lambda} is {bad}"
            )));
        }
        counts.push(row);
    }
    Ok(VertexProfile {
        lambdas: lambdas.to_vec(),
        counts,
        level,
    })
}

/// Iwahori orbit counts for the given λ values.
pub fn iwahori_counts(
    p: u64,
    cell: CellIndex,
    lambdas: &[i64],
    opts: OracleOptions,
) -> Result<IwahoriProfile> {
    let y = y_rep_with(
        cell.z,
        cell.n,
        opts.unit(cell, p),
        p,
        working_precision(cell),
        opts.eps(p),
    )?;
    let nl = lambdas.len();
    let (raw, level) = with_adaptive_level(p, |m| {
        let (v, h0) = scaled_residues(&y, m).map_err(Fail::Bug)?;
        let mi = m as i64;
        enumerate(p, m, h0, 5 * nl, |[_, z12, z21, _], acc| {
            for (i, &lambda) in lambdas.iter().enumerate() {
                // upper-right needs ord ≥ 2λ−1, lower-left ord ≥ −2λ
                let digit = |z: u64, t: i64| -> std::result::Result<Option<u64>, Fail> {
                    if z == 0 {
                        if t >= v + mi {
                            return Err(Fail::Ambiguous);
                        }
                        return Ok(Some(0));
                    }
                    let (o, unit) = ord_digit(z, p, m);
                    let tot = v + o as i64;
                    Ok(if tot < t {
                        None
                    } else if tot == t {
                        Some(unit)
                    } else {
                        Some(0)
                    })
                };
                let Some(a) = digit(z12, 2 * lambda - 1)? else {
                    continue;
                };
                let Some(b) = digit(z21, -2 * lambda)? else {
                    continue;
                };
                let orbit = VOrbit::of(a, b, p)
                    .ok_or(Fail::Bug(Error::NonMember("reduction off the cross ab = 0")))?;
                acc[5 * i + orbit_index(orbit)] += 1;
            }
            Ok(())
        })
    })?;
    let order = sl2_order(p, level);
    let mut counts = Vec::with_capacity(nl);
    for (i, &lambda) in lambdas.iter().enumerate() {
        let cc = coset_count(CosetPair::VertexIwahori, lambda, p)?;
        counts.push(std::array::from_fn(|k| {
            Rational::new(
                BigInt::from(raw[5 * i + k]) * BigInt::from(cc),
                BigInt::from(order),
            )
        }));
    }
    Ok(IwahoriProfile {
        lambdas: lambdas.to_vec(),
        counts,
        level,
    })
}

fn closed_window(cell: CellIndex) -> i64 {
    (cell.n + 2) / 2 + 2
}

fn check_scope(p: u64, cell: CellIndex) -> Result<()> {
    if in_scope(p, cell) {
        Ok(())
    } else {
        Err(Error::Scope(format!("p = {p}, cell {cell}")))
    }
}

/// Vertex profile over the full nonzero window, asserting the window closes.
pub fn vertex_profile(
    p: u64,
    x: Vertex,
    cell: CellIndex,
    opts: OracleOptions,
) -> Result<VertexProfile> {
    check_scope(p, cell)?;
    let top = if cell.z == CocycleLabel::S0 {
        cell.n / 2 + opts.s0_tail
    } else {
        closed_window(cell)
    };
    let lambdas: Vec<i64> = (0..=top).collect();
    let prof = vertex_counts(p, x, cell, &lambdas, opts)?;
    if cell.z != CocycleLabel::S0 && prof.counts.last().unwrap().iter().any(|c| !c.is_zero()) {
        return Err(Error::WindowNotClosed { lambda: top });
    }
    Ok(prof)
}

/// Iwahori profile over the full nonzero window, asserting the window closes at both ends.
pub fn iwahori_profile(p: u64, cell: CellIndex, opts: OracleOptions) -> Result<IwahoriProfile> {
    check_scope(p, cell)?;
    let top = if cell.z == CocycleLabel::S0 {
        cell.n / 2 + opts.s0_tail
    } else {
        closed_window(cell)
    };
    let lambdas: Vec<i64> = (-top..=top).collect();
    let prof = iwahori_counts(p, cell, &lambdas, opts)?;
    if cell.z != CocycleLabel::S0 {
        for end in [0, prof.counts.len() - 1] {
            if prof.counts[end].iter().any(|c| !c.is_zero()) {
                return Err(Error::WindowNotClosed {
                    lambda: prof.lambdas[end],
                });
            }
        }
    }
    Ok(prof)
}

/// `N^x_{U,λ}(cay(Y_{z,n}(u)))`.
pub fn count_n_u_lambda(
    p: u64,
    x: Vertex,
    cell: CellIndex,
    lambda: i64,
    class: UnipClass,
    opts: OracleOptions,
) -> Result<Rational> {
    let prof = vertex_counts(p, x, cell, &[lambda], opts)?;
    Ok(prof.counts[0][class_index(class)].clone())
}

/// `Σ_λ N^x_{U,λ}`, comparable with `TrFrob M^{x,U}_{z,n,ν}` (`z ≠ s0`).
pub fn oracle_m(
    p: u64,
    x: Vertex,
    cell: CellIndex,
    class: UnipClass,
    opts: OracleOptions,
) -> Result<Rational> {
    if cell.z == CocycleLabel::S0 {
        return Err(Error::Scope(
            "s0 cells are only available paired with a character".into(),
        ));
    }
    let prof = vertex_profile(p, x, cell, opts)?;
    Ok(prof
        .counts
        .iter()
        .map(|r| r[class_index(class)].clone())
        .sum())
}

/// `(Σ_U Q_T(U)·N_U, Σ_U Q_G(U)·N_U)` summed over `λ ≤ n/2`; for `s0` the terms with
/// `n/2 < λ ≤ n/2 + tail` are required to vanish.
pub fn oracle_m_paired(
    p: u64,
    x: Vertex,
    cell: CellIndex,
    opts: OracleOptions,
) -> Result<(Rational, QuadGNum)> {
    paired_from_vertex_profile(p, cell, &vertex_profile(p, x, cell, opts)?)
}

/// The class-paired sums of [`oracle_m_paired`] from an already computed profile.
pub fn paired_from_vertex_profile(
    p: u64,
    cell: CellIndex,
    prof: &VertexProfile,
) -> Result<(Rational, QuadGNum)> {
    let mut qt_sum = Rational::zero();
    let mut qg_sum = QuadGNum::zero(p);
    for (lambda, row) in prof.lambdas.iter().zip(&prof.counts) {
        let (t, g) = pair_classes(p, row);
        if cell.z == CocycleLabel::S0 && 2 * lambda > cell.n {
            if !t.is_zero() || !g.is_zero() {
                return Err(Error::TailNonvanishing { lambda: *lambda });
            }
            continue;
        }
        qt_sum += t;
        qg_sum = &qg_sum + &g;
    }
    Ok((qt_sum, qg_sum))
}

/// `N_{V,λ}(Y_{z,n}(u))` for a single λ.
pub fn oracle_n_iwahori(
    p: u64,
    cell: CellIndex,
    lambda: i64,
    orbit: VOrbit,
    opts: OracleOptions,
) -> Result<Rational> {
    let prof = iwahori_counts(p, cell, &[lambda], opts)?;
    Ok(prof.counts[0][orbit_index(orbit)].clone())
}

/// `Σ_λ N_{V,λ}`, comparable with `TrFrob 𝒩^{l,α}` (elliptic cells).
pub fn oracle_n_total(
    p: u64,
    cell: CellIndex,
    orbit: VOrbit,
    opts: OracleOptions,
) -> Result<Rational> {
    if cell.z == CocycleLabel::S0 {
        return Err(Error::Scope(
            "orbit counts of s0 cells do not have finite support".into(),
        ));
    }
    let prof = iwahori_profile(p, cell, opts)?;
    Ok(prof
        .counts
        .iter()
        .map(|r| r[orbit_index(orbit)].clone())
        .sum())
}

/// The origin term `𝒩⁰`.
pub fn oracle_n0(p: u64, cell: CellIndex, opts: OracleOptions) -> Result<Rational> {
    oracle_n_total(p, cell, VOrbit::V0, opts)
}

/// `Σ_λ Σ_V w(V)·N_{V,λ}`; for `s0` the weights must be odd under the orbit sign and the
/// terms with `|λ| > n/2` are required to vanish.
pub fn oracle_n_paired(
    p: u64,
    cell: CellIndex,
    weights: &[(VOrbit, QuadGNum)],
    opts: OracleOptions,
) -> Result<QuadGNum> {
    paired_from_iwahori_profile(p, cell, &iwahori_profile(p, cell, opts)?, weights)
}

/// The weighted sum of [`oracle_n_paired`] from an already computed profile.
pub fn paired_from_iwahori_profile(
    p: u64,
    cell: CellIndex,
    prof: &IwahoriProfile,
    weights: &[(VOrbit, QuadGNum)],
) -> Result<QuadGNum> {
    let mut total = QuadGNum::zero(p);
    for (lambda, row) in prof.lambdas.iter().zip(&prof.counts) {
        let mut term = QuadGNum::zero(p);
        for (o, w) in weights {
            term = &term + &w.scale(&row[orbit_index(*o)]);
        }
        if cell.z == CocycleLabel::S0 && 2 * lambda.abs() > cell.n {
            if !term.is_zero() {
                return Err(Error::TailNonvanishing { lambda: *lambda });
            }
            continue;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// `#{(x, y) ∈ F_q² : x² − y² = 1}`.
pub fn hyperbola_count(q: u64) -> u64 {
    let mut n = 0;
    for x in 0..q {
        for y in 0..q {
            if (x * x + q * q - y * y) % q == 1 % q {
                n += 1;
            }
        }
    }
    n
}

/// `#{[a b; c d] ∈ SL(2, F_q) : d² − η·b² is a nonzero square}` for a non-residue `η`.
pub fn conic_half_count(q: u64, eta: u64) -> u64 {
    let mut n = 0;
    for_each_sl2(q, 1, |_, b, _, d| {
        let w = (d * d + q * q - eta * b % q * b % q) % q;
        if legendre(w, q) == 1 {
            n += 1;
        }
    });
    n
}

/// `Q_T`-weighted and `Q_G`-weighted class sums of a table row, for comparison with `oracle_m_paired`.
pub fn pair_classes(p: u64, m: &[Rational; 3]) -> (Rational, QuadGNum) {
    let mut t = Rational::zero();
    let mut g = QuadGNum::zero(p);
    for cls in UnipClass::ALL {
        t += q_t(cls.nilpotent(), p) * &m[class_index(cls)];
        g = &g + &q_g(cls.nilpotent(), p).scale(&m[class_index(cls)]);
    }
    (t, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn cell(z: CocycleLabel, n: i64, nu: Sign) -> CellIndex {
        CellIndex::new(z, n, nu).unwrap()
    }

    #[test]
    fn coset_counts() {
        assert_eq!(coset_count(CosetPair::VertexVertex, 1, 3).unwrap(), 12);
        assert_eq!(coset_count(CosetPair::VertexIwahori, 0, 5).unwrap(), 1);
        assert_eq!(coset_count(CosetPair::VertexVertex, 0, 7).unwrap(), 1);
        assert_eq!(coset_count(CosetPair::VertexIwahori, -1, 3).unwrap(), 9);
        assert_eq!(coset_count(CosetPair::VertexIwahori, 2, 3).unwrap(), 27);
    }

    #[test]
    fn congruence_index_matches_closed_form() {
        assert_eq!(congruence_index_enumerated(3, 1, 2).unwrap(), 12);
        assert_eq!(congruence_index_enumerated(3, 1, 3).unwrap(), 12);
        assert_eq!(congruence_index_enumerated(5, 1, 2).unwrap(), 30);
    }

    #[test]
    fn group_order_by_enumeration() {
        let mut n = 0u64;
        for_each_sl2(3, 2, |_, _, _, _| n += 1);
        assert_eq!(n, sl2_order(3, 2));
    }

    #[test]
    fn vertex_examples() {
        let o = OracleOptions::default();
        let c = cell(CocycleLabel::S1, 2, Sign::Plus);
        assert_eq!(
            count_n_u_lambda(5, Vertex::V0, c, 1, UnipClass::U1, o).unwrap(),
            int(15)
        );
        assert_eq!(
            count_n_u_lambda(3, Vertex::V0, c, 0, UnipClass::U0, o).unwrap(),
            int(1)
        );
        let c1 = cell(CocycleLabel::S1, 1, Sign::Plus);
        for u in UnipClass::ALL {
            assert!(count_n_u_lambda(3, Vertex::V0, c1, 1, u, o)
                .unwrap()
                .is_zero());
        }
        assert_eq!(
            oracle_m(3, Vertex::V0, c, UnipClass::U1, o).unwrap(),
            int(6)
        );
        let t2 = cell(CocycleLabel::T2, 3, Sign::Plus);
        assert_eq!(
            oracle_m(3, Vertex::V0, t2, UnipClass::U0, o).unwrap(),
            int(13)
        );
    }

    #[test]
    fn iwahori_examples() {
        let o = OracleOptions::default();
        let c = cell(CocycleLabel::S1, 1, Sign::Plus);
        assert_eq!(
            oracle_n_iwahori(3, c, 1, VOrbit::V1p, o).unwrap(),
            rat(3, 2)
        );
        let t0 = cell(CocycleLabel::T0, 0, Sign::Plus);
        let total: Rational = [VOrbit::V1p, VOrbit::V1m]
            .iter()
            .map(|&v| oracle_n_total(3, t0, v, o).unwrap())
            .sum();
        assert_eq!(total, rat(3, 4));
        assert!(oracle_n0(3, cell(CocycleLabel::T2, 0, Sign::Plus), o).unwrap() >= int(0));
    }

    #[test]
    fn point_counts() {
        for q in [3u64, 5, 7] {
            assert_eq!(hyperbola_count(q), q - 1);
            assert_eq!(
                conic_half_count(q, smallest_nonsquare(q)),
                q * (q * q - 1) / 2
            );
        }
    }
}
