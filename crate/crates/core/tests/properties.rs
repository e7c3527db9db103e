//! Property tests for the algebraic invariants of each layer.

use depthzero::exact::{
    as_quadg, gauss_sum, int, rat, sign_of_minus_one, CycloNum, MotiveElem, Poly, QuadGNum,
    RatFuncL, Rational,
};
use depthzero::finite::{
    classify_nilpotent, classify_unipotent, gamma_val, q_g, sl2_elements, FqMat, NilpClass, Sign,
    UnipClass,
};
use depthzero::fourier::{
    ft_a2, phi01_hat, phi01_hat_with, phihat_a2_on_orbits, springer_check_with, FnA2, VOrbit,
};
use depthzero::labels::{CellIndex, CocycleLabel, Vertex};
use depthzero::oracle::{iwahori_profile, vertex_profile, OracleOptions};
use depthzero::padic::{a_lambda, cayley, inverse_cayley, y_rep, PadicMat, PadicNum};
use depthzero::tables::{m_table, n_table, ErratumBranch, MTableKey, NTableKey};
use proptest::prelude::*;

const QS: [u64; 5] = [3, 5, 7, 11, 13];

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(QS.to_vec())
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..=max_len).prop_map(Poly::new)
}

/// Rational functions whose denominators are products of `L`, `L ± 1` and `L² + 1`.
fn ratfunc() -> impl Strategy<Value = RatFuncL> {
    let dens = vec![
        Poly::new(vec![int(1)]),
        Poly::new(vec![int(0), int(1)]),
        Poly::new(vec![int(1), int(1)]),
        Poly::new(vec![int(-1), int(1)]),
        Poly::new(vec![int(1), int(0), int(1)]),
    ];
    (poly(4), prop::sample::select(dens)).prop_map(|(n, d)| RatFuncL::new(n, d))
}

fn motive() -> impl Strategy<Value = MotiveElem> {
    (ratfunc(), ratfunc()).prop_map(|(a, b)| MotiveElem::new(a, b))
}

fn quadg() -> impl Strategy<Value = QuadGNum> {
    (prime(), small_rat(), small_rat()).prop_map(|(p, a, b)| QuadGNum::new(p, a, b))
}

fn cell(n_max: i64) -> impl Strategy<Value = CellIndex> {
    (
        prop::sample::select(CocycleLabel::ALL.to_vec()),
        0..=n_max,
        any::<bool>(),
    )
        .prop_filter_map("n below the label's range", |(z, n, plus)| {
            CellIndex::new(z, n, if plus { Sign::Plus } else { Sign::Minus }).ok()
        })
}

fn nonsquares(p: u64) -> Vec<u64> {
    (1..p)
        .filter(|&e| depthzero::finite::legendre(e, p) == -1)
        .collect()
}

fn unipotents(p: u64) -> Vec<FqMat> {
    sl2_elements(p)
        .into_iter()
        .filter(|m| (m.m[0][0] + m.m[1][1]) % p == 2 % p)
        .collect()
}

/// `x ≡ y` modulo `p^k`, for p-adic numbers of any valuation.
fn close(x: &PadicNum, y: &PadicNum, k: i64) -> bool {
    x.sub(y).ord_at_least(k).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn trfrob_is_additive_and_multiplicative(x in motive(), y in motive(), q in prime()) {
        if let (Ok(a), Ok(b)) = (x.trfrob(q), y.trfrob(q)) {
            prop_assert_eq!((&x + &y).trfrob(q).unwrap(), &a + &b);
            prop_assert_eq!((&x * &y).trfrob(q).unwrap(), &a * &b);
        }
    }

    #[test]
    fn as_quadg_inverts_embed(x in quadg()) {
        prop_assert_eq!(as_quadg(&x.embed()).unwrap(), x);
    }

    #[test]
    fn embed_is_a_ring_map(x in quadg(), y in small_rat(), z in small_rat()) {
        let y = QuadGNum::new(x.p(), y, z);
        prop_assert_eq!((&x * &y).embed(), &x.embed() * &y.embed());
        prop_assert_eq!((&x + &y).embed(), &x.embed() + &y.embed());
    }

    #[test]
    fn integer_polynomials_specialize_to_integers(c in prop::collection::vec(-50i64..=50, 0..6), q in prime()) {
        let a = RatFuncL::new(Poly::new(c.iter().map(|&k| int(k)).collect()), Poly::new(vec![int(1)]));
        let v = MotiveElem::new(a, RatFuncL::zero()).trfrob(q).unwrap();
        prop_assert!(v.is_integer());
    }

    #[test]
    fn m_entries_are_integers(c in cell(6), q in prime(), x in any::<bool>(), class in 0usize..3) {
        let key = MTableKey { x: if x { Vertex::V1 } else { Vertex::V0 }, cell: c, class: UnipClass::ALL[class] };
        for branch in [ErratumBranch::Corrected, ErratumBranch::Printed] {
            let v = m_table(key, sign_of_minus_one(q), branch).unwrap().trfrob(q).unwrap();
            prop_assert!(v.is_integer(), "{:?} -> {}", key, v);
        }
    }

    #[test]
    fn n_entries_have_denominator_dividing_q_plus_one(c in cell(6), q in prime(), l in 1u8..=2, plus in any::<bool>()) {
        let key = NTableKey { cell: c, l, alpha: if plus { Sign::Plus } else { Sign::Minus } };
        if let Ok(m) = n_table(key, sign_of_minus_one(q)) {
            let v = m.trfrob(q).unwrap();
            let den = v.denom().clone();
            prop_assert!((num_bigint::BigInt::from(q + 1) % den) == num_bigint::BigInt::from(0));
        }
    }

    #[test]
    fn unipotent_class_is_conjugation_invariant(q in prop::sample::select(vec![3u64, 5, 7]), gi in any::<prop::sample::Index>(), ui in any::<prop::sample::Index>()) {
        let g = *gi.get(&sl2_elements(q));
        let u = *ui.get(&unipotents(q));
        let conj = g.mul(&u).mul(&g.inv_sl2());
        prop_assert_eq!(classify_unipotent(&conj).unwrap(), classify_unipotent(&u).unwrap());
    }

    #[test]
    fn cayley_recovers_topologically_nilpotent_elements(
        p in prop::sample::select(vec![3u64, 5, 7]),
        a in -40i64..40, b in -40i64..40, c in -40i64..40,
        ea in 1i64..3, eb in 0i64..3, ec in 1i64..3,
    ) {
        let prec = 12;
        let e = |x: i64, k: i64| PadicNum::from_int(p, x, prec).shifted(k);
        let y = PadicMat::new([[e(a, ea), e(b, eb)], [e(c, ec), e(-a, ea)]]);
        let h = cayley(&y).unwrap();
        prop_assert!(close(&h.det(), &PadicNum::from_int(p, 1, prec), 6));
        let back = inverse_cayley(&h).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!(close(back.entry(i, j), y.entry(i, j), 6), "{} vs {}", back, y);
            }
        }
    }

    #[test]
    fn conjugation_by_a_lambda_scales_off_diagonal(p in prop::sample::select(vec![3u64, 5]), m in prop::array::uniform4(-30i64..30), lambda in -2i64..=2) {
        let prec = 14;
        let x = PadicMat::from_ints(p, [[m[0], m[1]], [m[2], m[3]]], prec);
        let a = a_lambda(p, lambda, prec);
        let direct = a.inv().unwrap().mul(&x).mul(&a);
        let law = x.conj_a(lambda);
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!(close(direct.entry(i, j), law.entry(i, j), 6));
            }
        }
    }

    #[test]
    fn representative_depth(c in cell(6), p in prop::sample::select(vec![3u64, 5, 7]), u in 1i64..50) {
        prop_assume!(u % p as i64 != 0);
        let y = y_rep(c.z, c.n, u, p, c.n + 10).unwrap();
        let expected = if c.z.is_ramified() { 2 * c.n + 1 } else { 2 * c.n };
        prop_assert_eq!(y.det().neg().ord(), depthzero::padic::Ord::Exact(expected));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn double_transform_is_negation_times_q_squared(p in prop::sample::select(vec![3u64, 5]), vals in prop::collection::vec(-5i64..=5, 25)) {
        let mut f = FnA2::zero(p);
        for (i, v) in f.values.iter_mut().enumerate() {
            *v = CycloNum::from_int(p, vals[i % vals.len()]);
        }
        let ff = ft_a2(&ft_a2(&f));
        let q2 = int((p * p) as i64);
        for x in 0..p {
            for y in 0..p {
                prop_assert_eq!(ff.at(x, y), &f.at((p - x) % p, (p - y) % p).scale(&q2));
            }
        }
    }

    #[test]
    fn transforms_depend_only_on_sign_of_v(p in prime(), z in prop::sample::select(CocycleLabel::RAMIFIED.to_vec()), v in 1u64..13, w in 1u64..13) {
        let (v, w) = (v % p, w % p);
        prop_assume!(v != 0 && w != 0);
        let a = phihat_a2_on_orbits(z, p, v).unwrap();
        let b = phihat_a2_on_orbits(z, p, w).unwrap();
        let same = depthzero::finite::legendre(v, p) == depthzero::finite::legendre(w, p);
        let swap = |o: VOrbit| match o {
            VOrbit::V1p => VOrbit::V1m,
            VOrbit::V1m => VOrbit::V1p,
            VOrbit::V2p => VOrbit::V2m,
            VOrbit::V2m => VOrbit::V2p,
            VOrbit::V0 => VOrbit::V0,
        };
        for o in VOrbit::ALL {
            let target = if same { o } else { swap(o) };
            prop_assert_eq!(&a[&o], &b[&target]);
        }
    }
}

#[test]
fn gauss_sum_identities() {
    for p in QS {
        let g = gauss_sum(p);
        let s = sign_of_minus_one(p);
        assert_eq!(&g * &g, CycloNum::from_int(p, s * p as i64));
        for a in 1..p {
            let total = &gamma_val(Sign::Plus, a, p) + &gamma_val(Sign::Minus, a, p);
            assert_eq!(total, CycloNum::from_int(p, -1), "p = {p}, a = {a}");
        }
    }
}

#[test]
fn all_transform_restrictions_are_quadratic() {
    for p in [3, 5, 7] {
        for z in CocycleLabel::RAMIFIED {
            for v in 1..p {
                for val in phihat_a2_on_orbits(z, p, v).unwrap().values() {
                    as_quadg(val).unwrap();
                }
            }
        }
    }
}

#[test]
fn unipotent_class_sizes() {
    for q in [3u64, 5, 7] {
        let mut sizes = [0u64; 3];
        for u in unipotents(q) {
            sizes[UnipClass::ALL
                .iter()
                .position(|&c| c == classify_unipotent(&u).unwrap())
                .unwrap()] += 1;
        }
        assert_eq!(sizes, [1, (q * q - 1) / 2, (q * q - 1) / 2], "q = {q}");
    }
}

#[test]
fn cayley_matches_nilpotent_tags() {
    for p in [3u64, 5, 7] {
        for z in 0..p as i64 {
            for x in 0..p as i64 {
                for y in 0..p as i64 {
                    let n = FqMat::new(p, [[z, x], [y, -z]]);
                    if (z * z + x * y) % p as i64 != 0 {
                        continue;
                    }
                    let h = cayley(&PadicMat::from_ints(p, [[z, x], [y, -z]], 4)).unwrap();
                    let r = |i: usize, j: usize| h.entry(i, j).residue(1).unwrap() as i64;
                    let u = FqMat::new(p, [[r(0, 0), r(0, 1)], [r(1, 0), r(1, 1)]]);
                    assert_eq!(
                        classify_unipotent(&u).unwrap().nilpotent(),
                        classify_nilpotent(&n).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn q_g_vanishes_at_the_identity_class() {
    for p in QS {
        assert!(q_g(NilpClass::N0, p).is_zero());
    }
}

#[test]
fn transforms_are_independent_of_the_non_residue() {
    for p in [5u64, 7, 11, 13] {
        let alt = nonsquares(p)[1];
        assert!(springer_check_with(p, alt), "p = {p}");
        for which in [0, 1] {
            for v in [1, alt] {
                assert_eq!(
                    phi01_hat(which, p, v).unwrap(),
                    phi01_hat_with(which, p, v, alt).unwrap()
                );
            }
        }
    }
}

fn sample_cells() -> Vec<(u64, CellIndex)> {
    let mut out = Vec::new();
    for c in CellIndex::grid(2) {
        out.push((3, c));
    }
    for c in CellIndex::grid(0) {
        out.push((5, c));
    }
    out
}

#[test]
fn oracle_counts_are_independent_of_the_non_residue() {
    for (p, c) in sample_cells() {
        let base = OracleOptions::default();
        // lifts of the same residue and, at p = 5, a different non-residue
        let alts: Vec<i64> = if p == 3 { vec![5, -1] } else { vec![3, 7] };
        for eps in alts {
            let alt = OracleOptions {
                eps: Some(eps),
                ..base
            };
            for x in Vertex::ALL {
                assert_eq!(
                    vertex_profile(p, x, c, base).unwrap().counts,
                    vertex_profile(p, x, c, alt).unwrap().counts,
                    "{p} {c:?} {x:?} eps {eps}"
                );
            }
            assert_eq!(
                iwahori_profile(p, c, base).unwrap().counts,
                iwahori_profile(p, c, alt).unwrap().counts,
                "{p} {c:?} eps {eps}"
            );
        }
    }
}

#[test]
fn oracle_counts_are_independent_of_the_unit() {
    for (p, c) in sample_cells() {
        let units: Vec<i64> = (1..2 * p as i64)
            .filter(|u| u % p as i64 != 0)
            .filter(|&u| {
                let sq = depthzero::finite::legendre(u.rem_euclid(p as i64) as u64, p) == 1;
                sq == (c.nu == Sign::Plus)
            })
            .collect();
        let reference = OracleOptions {
            u: Some(units[0]),
            ..OracleOptions::default()
        };
        for &u in &units[1..] {
            let o = OracleOptions {
                u: Some(u),
                ..OracleOptions::default()
            };
            for x in Vertex::ALL {
                assert_eq!(
                    vertex_profile(p, x, c, reference).unwrap().counts,
                    vertex_profile(p, x, c, o).unwrap().counts,
                    "{p} {c:?} u {u}"
                );
            }
            assert_eq!(
                iwahori_profile(p, c, reference).unwrap().counts,
                iwahori_profile(p, c, o).unwrap().counts,
                "{p} {c:?} u {u}"
            );
        }
    }
}

#[test]
fn motive_s_squares_to_twice_itself() {
    let s = MotiveElem::s();
    assert_eq!(&s * &s, &s + &s);
}
