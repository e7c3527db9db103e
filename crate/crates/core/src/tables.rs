//! Motive tables for the character side (`M`), the orbital side (`𝒩`), and the
//! coefficient tables of both expansions.
//!
//! Sign conditions `ζ^{2k} = ±ν` are evaluated as `s^k = ±ν` with
//! `s = sgn(-1)` passed explicitly, so `m_table` and `n_table` return pure
//! `Q(L)` values; the class `S` only enters through the coefficients.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, rat, sign_of_minus_one, MotiveElem, RatFuncL, Rational};
use crate::finite::{CuspLabel, Sign, UnipClass};
use crate::labels::{CellIndex, CocycleLabel, EndoLabel, ReprLabel, Vertex};

/// Which reading of the character tables to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErratumBranch {
    /// `x = (1)`, `t1` uses `ζ^{2n+2} = −ν`, the mirror of the `t0` row; the
    /// `s2` rows split on the opposite parity of `n` from the `s1` rows.
    Corrected,
    /// Both as printed: `ζ^{2n} = −ν`, and `s2` rows identical to `s1` rows.
    Printed,
}

impl ErratumBranch {
    pub fn name(self) -> &'static str {
        match self {
            ErratumBranch::Corrected => "corrected",
            ErratumBranch::Printed => "printed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MTableKey {
    pub x: Vertex,
    pub cell: CellIndex,
    pub class: UnipClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NTableKey {
    pub cell: CellIndex,
    /// Line index: `1` for `V^{1,±}`, `2` for `V^{2,±}`.
    pub l: u8,
    pub alpha: Sign,
}

fn sign_pow(s: i64, k: i64) -> i64 {
    if s == 1 || k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(L^k − 1)/(L − 1)` for `k ≥ 0`.
fn geometric(k: i64) -> MotiveElem {
    let num = &RatFuncL::l_pow(k as i32) - &RatFuncL::one();
    let den = &RatFuncL::l() - &RatFuncL::one();
    MotiveElem::from(num.div(&den))
}

fn half_l_plus_one_l_pow(k: i64) -> MotiveElem {
    let f = &(&RatFuncL::l() + &RatFuncL::one()) * &RatFuncL::l_pow(k as i32);
    MotiveElem::from(f.scale(&rat(1, 2)))
}

fn check_s(s: i64) -> Result<()> {
    if s == 1 || s == -1 {
        Ok(())
    } else {
        Err(Error::Range(format!("sgn(-1) must be ±1, got {s}")))
    }
}

/// Whether the `U1` column of a `t` row carries `L^n` (otherwise the `Uε` column does).
fn t_row_condition(
    x: Vertex,
    z: CocycleLabel,
    n: i64,
    nu: i64,
    s: i64,
    branch: ErratumBranch,
) -> bool {
    let par = |k: i64| sign_pow(-1, k);
    match (x, z) {
        (Vertex::V0, CocycleLabel::T0) => sign_pow(s, n) == nu,
        (Vertex::V0, CocycleLabel::T1) => sign_pow(s, n) == -nu,
        (Vertex::V0, CocycleLabel::T2) => sign_pow(s, n) == par(n) * nu,
        (Vertex::V0, CocycleLabel::T3) => sign_pow(s, n) == par(n + 1) * nu,
        (Vertex::V1, CocycleLabel::T0) => sign_pow(s, n + 1) == nu,
        (Vertex::V1, CocycleLabel::T1) => match branch {
            ErratumBranch::Corrected => sign_pow(s, n + 1) == -nu,
            ErratumBranch::Printed => sign_pow(s, n) == -nu,
        },
        (Vertex::V1, CocycleLabel::T2) => sign_pow(s, n + 1) == par(n + 1) * nu,
        (Vertex::V1, CocycleLabel::T3) => sign_pow(s, n + 1) == par(n) * nu,
        _ => unreachable!("t-row condition requested for {z}"),
    }
}

/// Character-side motive `M_{z,n,ν}^{x,U}`.
pub fn m_table(key: MTableKey, s: i64, branch: ErratumBranch) -> Result<MotiveElem> {
    check_s(s)?;
    let CellIndex { z, n, nu } = key.cell;
    if n < z.n_min() {
        return Err(Error::Range(format!("cell {} out of range", key.cell)));
    }
    let nu = nu.to_i64();
    Ok(match z {
        CocycleLabel::S0 => match key.class {
            UnipClass::U0 => geometric(n - 1),
            _ => MotiveElem::l_pow(n as i32),
        },
        CocycleLabel::S1 | CocycleLabel::S2 => {
            // s1 at x = (0) is regular for n even, at x = (1) for n odd.
            let mut regular = match key.x {
                Vertex::V0 => n % 2 == 0,
                Vertex::V1 => n % 2 == 1,
            };
            if z == CocycleLabel::S2 && branch == ErratumBranch::Corrected {
                regular = !regular;
            }
            match (key.class, regular) {
                (UnipClass::U0, true) => geometric(n - 1),
                (UnipClass::U0, false) => geometric(n),
                (_, true) => half_l_plus_one_l_pow(n - 1),
                (_, false) => MotiveElem::zero(),
            }
        }
        _ => {
            let cond = t_row_condition(key.x, z, n, nu, s, branch);
            match key.class {
                UnipClass::U0 => geometric(n),
                UnipClass::U1 if cond => MotiveElem::l_pow(n as i32),
                UnipClass::Ueps if !cond => MotiveElem::l_pow(n as i32),
                _ => MotiveElem::zero(),
            }
        }
    })
}

/// Orbital-side motive `𝒩_{z,n,ν}^{l,α}` for `z ≠ s0`.
pub fn n_table(key: NTableKey, s: i64) -> Result<MotiveElem> {
    check_s(s)?;
    let CellIndex { z, n, nu } = key.cell;
    if n < z.n_min() {
        return Err(Error::Range(format!("cell {} out of range", key.cell)));
    }
    if key.l != 1 && key.l != 2 {
        return Err(Error::Range(format!(
            "line index must be 1 or 2, got {}",
            key.l
        )));
    }
    let nu = nu.to_i64();
    let par = |k: i64| sign_pow(-1, k);
    Ok(match z {
        CocycleLabel::S0 => return Err(Error::Range("no orbital table for s0".into())),
        CocycleLabel::S1 | CocycleLabel::S2 => {
            let live = match (z, n % 2 == 1) {
                (CocycleLabel::S1, true) | (CocycleLabel::S2, false) => 1,
                _ => 2,
            };
            if key.l == live {
                MotiveElem::l_pow(n as i32).scale(&rat(1, 2))
            } else {
                MotiveElem::zero()
            }
        }
        _ => {
            let lhs = sign_pow(s, n + 1);
            let cond = match (z, key.l) {
                (CocycleLabel::T0, _) => lhs == nu,
                (CocycleLabel::T1, _) => lhs == -nu,
                (CocycleLabel::T2, 1) | (CocycleLabel::T3, 2) => lhs == par(n + 1) * nu,
                (CocycleLabel::T2, _) | (CocycleLabel::T3, _) => lhs == par(n) * nu,
                _ => unreachable!(),
            };
            if cond == (key.alpha == Sign::Plus) {
                let lp = RatFuncL::l_pow((n + 1) as i32);
                let den = &RatFuncL::l() + &RatFuncL::one();
                MotiveElem::from(lp.div(&den))
            } else {
                MotiveElem::zero()
            }
        }
    })
}

/// `𝕄/(2³L)` with `𝕄 = (L² − 1)(1 − S)`.
fn ramified_unit() -> MotiveElem {
    let l2m1 = MotiveElem::from(&RatFuncL::l_pow(2) - &RatFuncL::one());
    let one_minus_s = &MotiveElem::one() - &MotiveElem::s();
    (&l2m1 * &one_minus_s).div_l(&RatFuncL::l().scale(&int(8)))
}

fn l_minus_one() -> MotiveElem {
    MotiveElem::from(&RatFuncL::l() - &RatFuncL::one())
}

/// Sign pattern of the ramified columns `(t0, t1, t2, t3)` for `π(x, +)`; `π(x, −)` is its negative.
fn ramified_pattern(x: Vertex) -> [i64; 4] {
    match x {
        Vertex::V0 => [1, -1, 1, -1],
        Vertex::V1 => [1, -1, -1, 1],
    }
}

fn ramified_index(z: CocycleLabel) -> Option<usize> {
    match z {
        CocycleLabel::T0 => Some(0),
        CocycleLabel::T1 => Some(1),
        CocycleLabel::T2 => Some(2),
        CocycleLabel::T3 => Some(3),
        _ => None,
    }
}

/// Motivic coefficient `c_z(π)`.
pub fn c_coeff(pi: ReprLabel, z: CocycleLabel) -> Result<MotiveElem> {
    let home = match pi.x {
        Vertex::V0 => CocycleLabel::S1,
        Vertex::V1 => CocycleLabel::S2,
    };
    Ok(match (pi.cusp, z) {
        (_, CocycleLabel::S0) => return Err(Error::Range("no coefficient for s0".into())),
        (CuspLabel::SigmaTheta, z) if z == home => l_minus_one(),
        (CuspLabel::SigmaTheta, _) => MotiveElem::zero(),
        (_, CocycleLabel::S1 | CocycleLabel::S2) if z == home => l_minus_one().scale(&rat(1, 2)),
        (_, CocycleLabel::S1 | CocycleLabel::S2) => MotiveElem::zero(),
        (cusp, z) => {
            let sign = ramified_pattern(pi.x)[ramified_index(z).unwrap()] * cusp_sign(cusp);
            ramified_unit().scale(&int(sign))
        }
    })
}

fn cusp_sign(c: CuspLabel) -> i64 {
    match c {
        CuspLabel::SigmaPlus => 1,
        CuspLabel::SigmaMinus => -1,
        CuspLabel::SigmaTheta => 0,
    }
}

/// Numeric coefficient `c_z(π)` at `q`, with `ζ² = sgn(−1)`.
pub fn c_coeff_numeric(pi: ReprLabel, z: CocycleLabel, q: u64) -> Result<Rational> {
    let qq = q as i64;
    let zeta2 = sign_of_minus_one(q);
    let home = match pi.x {
        Vertex::V0 => CocycleLabel::S1,
        Vertex::V1 => CocycleLabel::S2,
    };
    Ok(match (pi.cusp, z) {
        (_, CocycleLabel::S0) => return Err(Error::Range("no coefficient for s0".into())),
        (CuspLabel::SigmaTheta, z) if z == home => int(qq - 1),
        (CuspLabel::SigmaTheta, _) => int(0),
        (_, CocycleLabel::S1 | CocycleLabel::S2) if z == home => rat(qq - 1, 2),
        (_, CocycleLabel::S1 | CocycleLabel::S2) => int(0),
        (cusp, z) => {
            let sign = -ramified_pattern(pi.x)[ramified_index(z).unwrap()] * cusp_sign(cusp);
            rat((qq * qq - 1) * sign * zeta2, 8 * qq)
        }
    })
}

/// Motivic coefficient `c_H(π)` of the endoscopic expansion.
pub fn c_endo(pi: ReprLabel, h: EndoLabel) -> MotiveElem {
    let sgn_x = match pi.x {
        Vertex::V0 => 1,
        Vertex::V1 => -1,
    };
    let ram = || {
        let l2m1 = MotiveElem::from(&RatFuncL::l_pow(2) - &RatFuncL::one());
        let one_minus_s = &MotiveElem::one() - &MotiveElem::s();
        (&l2m1 * &one_minus_s).div_l(&RatFuncL::l().scale(&int(8)))
    };
    match (pi.cusp, h) {
        (CuspLabel::SigmaTheta, EndoLabel::Sl2) => l_minus_one().scale(&rat(1, 2)),
        (CuspLabel::SigmaTheta, EndoLabel::UEps) => l_minus_one().scale(&rat(sgn_x, 2)),
        (CuspLabel::SigmaTheta, _) => MotiveElem::zero(),
        (_, EndoLabel::Sl2) => l_minus_one().scale(&rat(1, 4)),
        (_, EndoLabel::UEps) => l_minus_one().scale(&rat(sgn_x, 4)),
        (c, EndoLabel::UPi) => ram().scale(&int(cusp_sign(c))),
        (c, EndoLabel::UEpsPi) => ram().scale(&int(cusp_sign(c) * sgn_x)),
    }
}

/// Signed combination of orbital integrals attached to each endoscopic group.
pub fn endo_combo(h: EndoLabel) -> [(i64, CocycleLabel); 2] {
    match h {
        EndoLabel::Sl2 => [(1, CocycleLabel::S1), (1, CocycleLabel::S2)],
        EndoLabel::UEps => [(1, CocycleLabel::S1), (-1, CocycleLabel::S2)],
        EndoLabel::UPi => [(1, CocycleLabel::T0), (-1, CocycleLabel::T1)],
        EndoLabel::UEpsPi => [(1, CocycleLabel::T2), (-1, CocycleLabel::T3)],
    }
}

/// A rendered table: file name and TSV contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDump {
    pub name: String,
    pub contents: String,
}

fn motive_cols(m: &MotiveElem) -> String {
    format!("{}\t{}", m.a, m.b)
}

/// Every table as TSV, rows for `n ≤ n_max` and both values of `sgn(−1)`.
pub fn dump_tables(n_max: i64, branch: ErratumBranch) -> Result<Vec<TableDump>> {
    let mut out = Vec::new();
    for x in Vertex::ALL {
        for (suffix, labels) in [
            (
                "s",
                &[CocycleLabel::S0, CocycleLabel::S1, CocycleLabel::S2][..],
            ),
            ("t", &CocycleLabel::RAMIFIED[..]),
        ] {
            let xi = if x == Vertex::V0 { 0 } else { 1 };
            let mut t = String::new();
            writeln!(
                t,
                "# character-side motives M^{{({xi}),U}}_{{z,n,nu}}, {suffix}-rows"
            )
            .unwrap();
            writeln!(t, "# erratum branch: {}", branch.name()).unwrap();
            writeln!(t, "x\tz\tn\tnu\tsgn_m1\tclass\ta(L)\tb(L)").unwrap();
            for &z in labels {
                for n in z.n_min()..=n_max {
                    for nu in [Sign::Plus, Sign::Minus] {
                        for s in [1, -1] {
                            for class in UnipClass::ALL {
                                let cell = CellIndex::new(z, n, nu)?;
                                let m = m_table(MTableKey { x, cell, class }, s, branch)?;
                                writeln!(
                                    t,
                                    "{xi}\t{z}\t{n}\t{nu}\t{s}\t{}\t{}",
                                    class.label(),
                                    motive_cols(&m)
                                )
                                .unwrap();
                            }
                        }
                    }
                }
            }
            out.push(TableDump {
                name: format!("m_char_{xi}_{suffix}.tsv"),
                contents: t,
            });
        }
    }
    for (suffix, labels) in [
        ("s", &[CocycleLabel::S1, CocycleLabel::S2][..]),
        ("t", &CocycleLabel::RAMIFIED[..]),
    ] {
        let mut t = String::new();
        writeln!(
            t,
            "# orbital-side motives N^{{l,alpha}}_{{z,n,nu}}, {suffix}-rows"
        )
        .unwrap();
        writeln!(t, "# line 1 is V^1 = {{(a,0)}}, line 2 is V^2 = {{(0,b)}}").unwrap();
        writeln!(t, "z\tn\tnu\tsgn_m1\tl\talpha\ta(L)\tb(L)").unwrap();
        for &z in labels {
            for n in z.n_min()..=n_max {
                for nu in [Sign::Plus, Sign::Minus] {
                    for s in [1, -1] {
                        for l in [1u8, 2] {
                            for alpha in [Sign::Plus, Sign::Minus] {
                                let cell = CellIndex::new(z, n, nu)?;
                                let m = n_table(NTableKey { cell, l, alpha }, s)?;
                                writeln!(
                                    t,
                                    "{z}\t{n}\t{nu}\t{s}\t{l}\t{alpha}\t{}",
                                    motive_cols(&m)
                                )
                                .unwrap();
                            }
                        }
                    }
                }
            }
        }
        out.push(TableDump {
            name: format!("m_orb_{suffix}.tsv"),
            contents: t,
        });
    }
    let mut t = String::new();
    writeln!(t, "# motivic coefficients c_z(pi)").unwrap();
    writeln!(t, "pi\tz\ta(L)\tb(L)").unwrap();
    for pi in ReprLabel::all() {
        for z in CocycleLabel::ELLIPTIC {
            writeln!(t, "{pi}\t{z}\t{}", motive_cols(&c_coeff(pi, z)?)).unwrap();
        }
    }
    out.push(TableDump {
        name: "c_mot.tsv".into(),
        contents: t,
    });
    let mut t = String::new();
    writeln!(t, "# numeric coefficients c_z(pi)").unwrap();
    writeln!(t, "q\tpi\tz\tvalue").unwrap();
    for q in [3u64, 5, 7, 11, 13] {
        for pi in ReprLabel::all() {
            for z in CocycleLabel::ELLIPTIC {
                let v = c_coeff_numeric(pi, z, q)?;
                writeln!(t, "{q}\t{pi}\t{z}\t{}", crate::exact::fmt_rational(&v)).unwrap();
            }
        }
    }
    out.push(TableDump {
        name: "c_num.tsv".into(),
        contents: t,
    });
    let mut t = String::new();
    writeln!(
        t,
        "# motivic coefficients c_H(pi) of the endoscopic expansion"
    )
    .unwrap();
    writeln!(t, "pi\tH\ta(L)\tb(L)").unwrap();
    for pi in ReprLabel::all() {
        for h in EndoLabel::ALL {
            writeln!(t, "{pi}\t{h}\t{}", motive_cols(&c_endo(pi, h))).unwrap();
        }
    }
    out.push(TableDump {
        name: "c_endo.tsv".into(),
        contents: t,
    });
    let mut t = String::new();
    writeln!(
        t,
        "# kappa-orbital integrals attached to the elliptic endoscopic groups"
    )
    .unwrap();
    writeln!(t, "H\tcombination").unwrap();
    for h in EndoLabel::ALL {
        let [(s1, z1), (s2, z2)] = endo_combo(h);
        let sg = |s: i64| if s > 0 { "+" } else { "-" };
        writeln!(t, "{h}\t{}{z1} {}{z2}", sg(s1), sg(s2)).unwrap();
    }
    out.push(TableDump {
        name: "endo_combo.tsv".into(),
        contents: t,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(z: CocycleLabel, n: i64, nu: Sign) -> CellIndex {
        CellIndex::new(z, n, nu).unwrap()
    }

    fn tf(m: &MotiveElem, q: u64) -> Rational {
        m.trfrob(q).unwrap()
    }

    #[test]
    fn m_table_examples() {
        let k = MTableKey {
            x: Vertex::V0,
            cell: cell(CocycleLabel::S1, 2, Sign::Plus),
            class: UnipClass::U1,
        };
        let m = m_table(k, 1, ErratumBranch::Corrected).unwrap();
        assert_eq!(m, half_l_plus_one_l_pow(1));
        let k = MTableKey {
            x: Vertex::V0,
            cell: cell(CocycleLabel::T2, 1, Sign::Plus),
            class: UnipClass::U1,
        };
        assert!(m_table(k, 1, ErratumBranch::Corrected).unwrap().is_zero());
        let k = MTableKey {
            class: UnipClass::Ueps,
            ..k
        };
        assert_eq!(
            m_table(k, 1, ErratumBranch::Corrected).unwrap(),
            MotiveElem::l()
        );
        let k = MTableKey {
            x: Vertex::V0,
            cell: cell(CocycleLabel::S0, 3, Sign::Plus),
            class: UnipClass::U0,
        };
        let m = m_table(k, 1, ErratumBranch::Corrected).unwrap();
        assert_eq!(m, MotiveElem::from(&RatFuncL::l() + &RatFuncL::one()));
    }

    #[test]
    fn erratum_branches_differ_only_on_t1_and_s2() {
        for x in Vertex::ALL {
            for c in CellIndex::grid(6) {
                for s in [1, -1] {
                    for class in UnipClass::ALL {
                        let k = MTableKey { x, cell: c, class };
                        let a = m_table(k, s, ErratumBranch::Corrected).unwrap();
                        let b = m_table(k, s, ErratumBranch::Printed).unwrap();
                        let may_differ = (x == Vertex::V1 && c.z == CocycleLabel::T1 && s == -1)
                            || c.z == CocycleLabel::S2;
                        assert!(may_differ || a == b, "{k:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn n_table_examples() {
        let k = NTableKey {
            cell: cell(CocycleLabel::S1, 2, Sign::Plus),
            l: 2,
            alpha: Sign::Minus,
        };
        assert_eq!(
            n_table(k, 1).unwrap(),
            MotiveElem::l_pow(2).scale(&rat(1, 2))
        );
        let k = NTableKey {
            cell: cell(CocycleLabel::T0, 0, Sign::Plus),
            l: 1,
            alpha: Sign::Plus,
        };
        assert_eq!(tf(&n_table(k, 1).unwrap(), 5), rat(5, 6));
        let k = NTableKey {
            alpha: Sign::Minus,
            ..k
        };
        assert!(n_table(k, 1).unwrap().is_zero());
    }

    #[test]
    fn coefficient_examples() {
        let pi = |x, cusp| ReprLabel { x, cusp };
        assert_eq!(
            c_coeff(pi(Vertex::V0, CuspLabel::SigmaTheta), CocycleLabel::S1).unwrap(),
            l_minus_one()
        );
        let c = c_coeff(pi(Vertex::V0, CuspLabel::SigmaPlus), CocycleLabel::T0).unwrap();
        assert_eq!(tf(&c, 5), rat(-3, 5));
        assert!(
            c_coeff(pi(Vertex::V1, CuspLabel::SigmaMinus), CocycleLabel::S1)
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            c_endo(pi(Vertex::V0, CuspLabel::SigmaTheta), EndoLabel::Sl2),
            l_minus_one().scale(&rat(1, 2))
        );
        assert_eq!(
            c_endo(pi(Vertex::V1, CuspLabel::SigmaTheta), EndoLabel::UEps),
            l_minus_one().scale(&rat(-1, 2))
        );
        assert_eq!(
            tf(
                &c_endo(pi(Vertex::V0, CuspLabel::SigmaPlus), EndoLabel::UPi),
                5
            ),
            rat(-3, 5)
        );
    }

    #[test]
    fn motivic_and_numeric_coefficients_agree() {
        for q in [3u64, 5, 7, 11, 13] {
            for pi in ReprLabel::all() {
                for z in CocycleLabel::ELLIPTIC {
                    assert_eq!(
                        tf(&c_coeff(pi, z).unwrap(), q),
                        c_coeff_numeric(pi, z, q).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn ramified_coefficients_pair_up() {
        for pi in ReprLabel::all() {
            let c = |z| c_coeff(pi, z).unwrap();
            assert_eq!(c(CocycleLabel::T0), -&c(CocycleLabel::T1));
            assert_eq!(c(CocycleLabel::T2), -&c(CocycleLabel::T3));
        }
    }

    #[test]
    fn dump_has_every_table() {
        let d = dump_tables(2, ErratumBranch::Corrected).unwrap();
        assert_eq!(d.len(), 10);
        assert!(d.iter().all(|t| t.contents.starts_with('#')));
    }
}
