//! Named groups of checks, each producing one [`CellValueReport`] per comparison.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{
    check_endo_expansion, check_expansion, check_relations, check_symmetry, rank_and_independence,
    CellValueReport, Mode, OracleCell, SUPPORTED_Q,
};
use crate::error::{Error, Result};
use crate::exact::{
    as_quadg, int, rat, sign_of_minus_one, CycloNum, MotiveElem, QuadGNum, RatFuncL, Rational,
};
use crate::finite::{
    classify_nilpotent, gamma_val, legendre, q_g, q_t, smallest_nonsquare, FqMat, NilpClass, Sign,
    UnipClass,
};
use crate::fourier::{ft_sl2_at, phi01_identity_checks, phi_orbit_sl2, VOrbit};
use crate::labels::{CellIndex, CocycleLabel, ReprLabel, Vertex};
use crate::oracle::{conic_half_count, hyperbola_count, in_scope, pair_classes, OracleOptions};
use crate::tables::{
    c_coeff, c_coeff_numeric, m_table, n_table, ErratumBranch, MTableKey, NTableKey,
};

/// The verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gauss,
    Green,
    Fourier,
    Tables,
    Oracle,
    Formula,
    Endoscopy,
    Relations,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Gauss,
        Suite::Green,
        Suite::Fourier,
        Suite::Tables,
        Suite::Oracle,
        Suite::Formula,
        Suite::Endoscopy,
        Suite::Relations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gauss => "gauss",
            Suite::Green => "green",
            Suite::Fourier => "fourier",
            Suite::Tables => "tables",
            Suite::Oracle => "oracle",
            Suite::Formula => "formula",
            Suite::Endoscopy => "endoscopy",
            Suite::Relations => "relations",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Whether the outcome depends on the erratum branch.
    pub fn uses_branch(self) -> bool {
        matches!(
            self,
            Suite::Oracle | Suite::Formula | Suite::Endoscopy | Suite::Relations
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The reports of one suite at one `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteBlock {
    pub suite: Suite,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<ErratumBranch>,
    pub cells: Vec<CellValueReport>,
}

impl SuiteBlock {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellValueReport> {
        self.cells.iter().filter(|c| !c.pass)
    }
}

fn rational(q: u64, r: Rational) -> QuadGNum {
    QuadGNum::rational(q, r)
}

/// `γ₊ + γ₋ = −1` and `(γ₊ − γ₋)² = sgn(−1)·q` in `Q(ζ_q)`.
pub fn gauss(q: u64) -> Result<Vec<CellValueReport>> {
    let gp = gamma_val(Sign::Plus, 1, q);
    let gm = gamma_val(Sign::Minus, 1, q);
    let sum = as_quadg(&(&gp + &gm))?;
    let diff = &gp - &gm;
    let sq = as_quadg(&(&diff * &diff))?;
    let s = sign_of_minus_one(q);
    Ok(vec![
        CellValueReport::compare("gamma_sum", q, sum, rational(q, int(-1)), Mode::Oracle),
        CellValueReport::compare(
            "gamma_diff_sq",
            q,
            sq,
            rational(q, int(s * q as i64)),
            Mode::Oracle,
        ),
    ])
}

/// Green's-function structure of `Q_G`, with `Q_G` on `n1`, `nε` also compared with `sgn(−1)·(γ₊ − γ₋)`.
pub fn green(q: u64) -> Result<Vec<CellValueReport>> {
    let s = sign_of_minus_one(q);
    let n0 = q_g(NilpClass::N0, q);
    let n1 = q_g(NilpClass::N1, q);
    let ne = q_g(NilpClass::Neps, q);
    let mut out = vec![
        CellValueReport::compare("qg_origin", q, n0, QuadGNum::zero(q), Mode::Table),
        CellValueReport::compare("qg_odd", q, &n1 + &ne, QuadGNum::zero(q), Mode::Table),
        CellValueReport::compare(
            "qg_square",
            q,
            &n1 * &n1,
            rational(q, int(s * q as i64)),
            Mode::Table,
        ),
    ];
    for (name, a, val) in [
        ("qg_n1_gauss", 1, &n1),
        ("qg_neps_gauss", smallest_nonsquare(q), &ne),
    ] {
        let d = &gamma_val(Sign::Plus, a, q) - &gamma_val(Sign::Minus, a, q);
        let brute = as_quadg(&d.scale(&int(s)))?;
        out.push(CellValueReport::compare(
            name,
            q,
            brute,
            val.clone(),
            Mode::Oracle,
        ));
    }
    Ok(out)
}

fn nilp_name(c: NilpClass) -> &'static str {
    match c {
        NilpClass::N0 => "n0",
        NilpClass::N1 => "n1",
        NilpClass::Neps => "neps",
    }
}

/// `Q_T = (1 − q)·φ̂` on the nilpotent cone, one report per `(v, class)`.
pub fn springer(q: u64) -> Result<Vec<CellValueReport>> {
    let one_minus_q = int(1 - q as i64);
    let per_v: Vec<Result<Vec<CellValueReport>>> = (1..q)
        .into_par_iter()
        .map(|v| {
            let f = phi_orbit_sl2(q, v)?;
            let mut first: [Option<CycloNum>; 3] = Default::default();
            let mut bad: [Option<CycloNum>; 3] = Default::default();
            for c in 0..q {
                for a in 0..q {
                    for b in 0..q {
                        if (a * b + c * c) % q != 0 {
                            continue;
                        }
                        let n = FqMat {
                            p: q,
                            m: [[c, a], [b, (q - c) % q]],
                        };
                        let k = match classify_nilpotent(&n)? {
                            NilpClass::N0 => 0,
                            NilpClass::N1 => 1,
                            NilpClass::Neps => 2,
                        };
                        let val = ft_sl2_at(&f, c, a, b).scale(&one_minus_q);
                        let lhs = CycloNum::from_rational(q, q_t(UnipClass::ALL[k].nilpotent(), q));
                        if first[k].is_none() {
                            first[k] = Some(val.clone());
                        }
                        if val != lhs && bad[k].is_none() {
                            bad[k] = Some(val);
                        }
                    }
                }
            }
            let mut out = Vec::new();
            for (k, class) in UnipClass::ALL.into_iter().enumerate() {
                let c = class.nilpotent();
                let rhs = bad[k]
                    .take()
                    .or(first[k].take())
                    .ok_or(Error::Range("empty nilpotent class".into()))?;
                let name = format!("springer[v={v},{}]", nilp_name(c));
                out.push(CellValueReport::compare(
                    name,
                    q,
                    rational(q, q_t(c, q)),
                    as_quadg(&rhs)?,
                    Mode::Oracle,
                ));
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_v {
        out.extend(r?);
    }
    Ok(out)
}

fn orbit_name(o: VOrbit) -> &'static str {
    match o {
        VOrbit::V0 => "V0",
        VOrbit::V1p => "V1+",
        VOrbit::V1m => "V1-",
        VOrbit::V2p => "V2+",
        VOrbit::V2m => "V2-",
    }
}

/// Brute-force transforms of `φ_(0)`, `φ_(1)` against their closed forms.
pub fn phi01(q: u64) -> Result<Vec<CellValueReport>> {
    Ok(phi01_identity_checks(q)?
        .into_iter()
        .map(|c| {
            let name = format!("phi01[w={},v={},{}]", c.which, c.v, orbit_name(c.orbit));
            CellValueReport::compare(name, q, c.brute, c.closed, Mode::Oracle)
        })
        .collect())
}

/// Springer instance and the `φ_(0)`, `φ_(1)` closed forms.
pub fn fourier(q: u64) -> Result<Vec<CellValueReport>> {
    let mut out = springer(q)?;
    out.extend(phi01(q)?);
    Ok(out)
}

/// Motivic coefficients evaluated at `q` against the numeric ones, and the ramified pairing.
pub fn tables(q: u64) -> Result<Vec<CellValueReport>> {
    let mut out = Vec::new();
    for pi in ReprLabel::all() {
        for z in CocycleLabel::ELLIPTIC {
            let m = rational(q, c_coeff(pi, z)?.trfrob(q)?);
            let n = rational(q, c_coeff_numeric(pi, z, q)?);
            out.push(
                CellValueReport::compare(format!("coeff[{z}]"), q, m, n, Mode::Table).for_pi(pi),
            );
        }
        for (a, b) in [
            (CocycleLabel::T0, CocycleLabel::T1),
            (CocycleLabel::T2, CocycleLabel::T3),
        ] {
            let lhs = rational(q, c_coeff_numeric(pi, a, q)?);
            let rhs = rational(q, -c_coeff_numeric(pi, b, q)?);
            out.push(
                CellValueReport::compare(format!("pairing[{a},{b}]"), q, lhs, rhs, Mode::Table)
                    .for_pi(pi),
            );
        }
    }
    Ok(out)
}

/// Largest `n` enumerated at `p`.
pub fn oracle_n_max(p: u64) -> Option<i64> {
    match p {
        3 => Some(3),
        5 => Some(1),
        _ => None,
    }
}

fn table_class_values(
    p: u64,
    x: Vertex,
    cell: CellIndex,
    branch: ErratumBranch,
) -> Result<[Rational; 3]> {
    let s = sign_of_minus_one(p);
    let mut out: [Rational; 3] = Default::default();
    for (k, class) in UnipClass::ALL.into_iter().enumerate() {
        out[k] = m_table(MTableKey { x, cell, class }, s, branch)?.trfrob(p)?;
    }
    Ok(out)
}

/// Every enumerated count of one cell against the tables, and the character expansion from enumeration alone.
pub fn oracle_cell(
    p: u64,
    cell: CellIndex,
    branch: ErratumBranch,
    opts: OracleOptions,
) -> Result<Vec<CellValueReport>> {
    let oc = OracleCell::compute(p, cell, opts)?;
    let mut out = Vec::new();
    for x in Vertex::ALL {
        let table = table_class_values(p, x, cell, branch)?;
        if cell.z == CocycleLabel::S0 {
            let (tt, tg) = pair_classes(p, &table);
            let (ot, og) = oc.paired[x as usize].clone();
            let r = CellValueReport::compare(
                format!("M_paired_T[x={}]", x.name()),
                p,
                rational(p, ot),
                rational(p, tt),
                Mode::Oracle,
            );
            out.push(r.at(cell).on(branch));
            let r = CellValueReport::compare(
                format!("M_paired_G[x={}]", x.name()),
                p,
                og,
                tg,
                Mode::Oracle,
            );
            out.push(r.at(cell).on(branch));
        } else {
            for (k, class) in UnipClass::ALL.into_iter().enumerate() {
                let name = format!("M[x={},{}]", x.name(), class.label());
                let r = CellValueReport::compare(
                    name,
                    p,
                    rational(p, oc.class_total(x, k)),
                    rational(p, table[k].clone()),
                    Mode::Oracle,
                );
                out.push(r.at(cell).on(branch));
            }
        }
    }
    if cell.z != CocycleLabel::S0 {
        let s = sign_of_minus_one(p);
        for o in VOrbit::NONZERO {
            let (l, alpha) = o.line_sign().expect("nonzero orbit");
            let table = n_table(
                NTableKey {
                    cell,
                    l,
                    alpha: Sign::from_i64(alpha),
                },
                s,
            )?
            .trfrob(p)?;
            let name = format!("N[{}]", orbit_name(o));
            let r = CellValueReport::compare(
                name,
                p,
                rational(p, oc.orbit_total(o)),
                rational(p, table),
                Mode::Oracle,
            );
            out.push(r.at(cell).on(branch));
        }
    }
    for pi in ReprLabel::all() {
        out.push(oc.check_expansion(pi)?.on(branch));
    }
    Ok(out)
}

/// Point counts against the classes `L − 1` and `½L(L² − 1)`.
pub fn point_counts(q: u64) -> Result<Vec<CellValueReport>> {
    let l = RatFuncL::l();
    let hyper = MotiveElem::from(&l - &RatFuncL::one()).trfrob(q)?;
    let conic = MotiveElem::from(&l * &(&RatFuncL::l_pow(2) - &RatFuncL::one()))
        .scale(&rat(1, 2))
        .trfrob(q)?;
    let eta = smallest_nonsquare(q);
    debug_assert_eq!(legendre(eta, q), -1);
    Ok(vec![
        CellValueReport::compare(
            "hyperbola",
            q,
            rational(q, int(hyperbola_count(q) as i64)),
            rational(q, hyper),
            Mode::Oracle,
        ),
        CellValueReport::compare(
            "conic_half",
            q,
            rational(q, int(conic_half_count(q, eta) as i64)),
            rational(q, conic),
            Mode::Oracle,
        ),
    ])
}

/// Enumeration suite; cells are clamped to the enumeration scope.
pub fn oracle(
    p: u64,
    n_max: i64,
    branch: ErratumBranch,
    opts: OracleOptions,
) -> Result<Vec<CellValueReport>> {
    let mut out = if p <= 7 { point_counts(p)? } else { Vec::new() };
    let Some(top) = oracle_n_max(p) else {
        return Ok(out);
    };
    let cells: Vec<CellIndex> = CellIndex::grid(n_max.min(top))
        .into_iter()
        .filter(|&c| in_scope(p, c))
        .collect();
    for cell in cells {
        out.extend(oracle_cell(p, cell, branch, opts)?);
    }
    Ok(out)
}

fn over_grid<F>(n_max: i64, f: F) -> Result<Vec<CellValueReport>>
where
    F: Fn(CellIndex) -> Result<Vec<CellValueReport>> + Sync + Send,
{
    let per_cell: Vec<Result<Vec<CellValueReport>>> =
        CellIndex::grid(n_max).into_par_iter().map(f).collect();
    let mut out = Vec::new();
    for r in per_cell {
        out.extend(r?);
    }
    Ok(out)
}

/// The character expansion on every cell with `n ≤ n_max`, table mode.
pub fn formula(q: u64, n_max: i64, branch: ErratumBranch) -> Result<Vec<CellValueReport>> {
    over_grid(n_max, |cell| {
        ReprLabel::all()
            .into_iter()
            .map(|pi| check_expansion(pi, cell, q, branch))
            .collect()
    })
}

/// The endoscopic expansion on every cell, the coefficient rank and the independence of the endoscopic distributions.
pub fn endoscopy(q: u64, n_max: i64, branch: ErratumBranch) -> Result<Vec<CellValueReport>> {
    let mut out = over_grid(n_max, |cell| {
        ReprLabel::all()
            .into_iter()
            .map(|pi| check_endo_expansion(pi, cell, q, branch))
            .collect()
    })?;
    let rank = rank_and_independence(q, n_max.max(2), branch)?;
    let as_q = |k: usize| rational(q, int(k as i64));
    out.push(
        CellValueReport::compare(
            "coefficient_rank",
            q,
            as_q(rank.coefficient_rank),
            as_q(4),
            Mode::Table,
        )
        .on(branch),
    );
    out.push(
        CellValueReport::compare(
            "endoscopic_rank",
            q,
            as_q(rank.endoscopic_rank),
            as_q(4),
            Mode::Table,
        )
        .on(branch),
    );
    Ok(out)
}

/// L-packet and stable sums on every cell, and the conjugate-Cartan symmetry when `q ≡ 3 (mod 4)`.
pub fn relations(q: u64, n_max: i64, branch: ErratumBranch) -> Result<Vec<CellValueReport>> {
    let mut out = over_grid(n_max, |cell| check_relations(cell, q, branch))?;
    if q % 4 == 3 {
        out.extend(check_symmetry(q, n_max, branch)?);
    }
    Ok(out)
}

/// Runs one suite at one `q`.
pub fn run_suite(
    suite: Suite,
    q: u64,
    n_max: i64,
    branch: ErratumBranch,
    opts: OracleOptions,
) -> Result<SuiteBlock> {
    if !SUPPORTED_Q.contains(&q) {
        return Err(Error::Range(format!("q = {q} is not in {SUPPORTED_Q:?}")));
    }
    let cells = match suite {
        Suite::Gauss => gauss(q)?,
        Suite::Green => green(q)?,
        Suite::Fourier => fourier(q)?,
        Suite::Tables => tables(q)?,
        Suite::Oracle => oracle(q, n_max, branch, opts)?,
        Suite::Formula => formula(q, n_max, branch)?,
        Suite::Endoscopy => endoscopy(q, n_max, branch)?,
        Suite::Relations => relations(q, n_max, branch)?,
    };
    Ok(SuiteBlock {
        suite,
        q,
        branch: suite.uses_branch().then_some(branch),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for q in [3, 5] {
            for s in [Suite::Gauss, Suite::Green, Suite::Tables] {
                let b =
                    run_suite(s, q, 2, ErratumBranch::Corrected, OracleOptions::default()).unwrap();
                assert!(b.passed(), "{s} q={q}: {:?}", b.failures().next());
                assert!(b.branch.is_none());
            }
        }
    }

    #[test]
    fn springer_has_one_report_per_v_and_class() {
        let r = springer(5).unwrap();
        assert_eq!(r.len(), 4 * 3);
        assert!(r.iter().all(|c| c.pass));
    }

    #[test]
    fn printed_branch_fails_formula_only_on_t1() {
        let b = run_suite(
            Suite::Formula,
            3,
            2,
            ErratumBranch::Printed,
            OracleOptions::default(),
        )
        .unwrap();
        let fails: Vec<_> = b.failures().collect();
        assert!(!fails.is_empty());
        assert!(fails
            .iter()
            .all(|c| c.cell.unwrap().z == CocycleLabel::T1 && c.pi.unwrap().x == Vertex::V1));
    }

    #[test]
    fn unsupported_q_is_rejected() {
        assert!(run_suite(
            Suite::Gauss,
            17,
            1,
            ErratumBranch::Corrected,
            OracleOptions::default()
        )
        .is_err());
    }
}
