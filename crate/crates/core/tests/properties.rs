mod common;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use common::*;
use sisinv::branch::{sequence_from_newton_pairs, PlaneBranch};
use sisinv::exactmath::{det, rat, solve_rational, IntMatrix, IntPolynomial, Rational};
use sisinv::seifert::BrieskornTriple;
use sisinv::superisolated::casson_walker;

proptest! {
    #[test]
    fn newton_pairs_round_trip(pairs in newton_pairs()) {
        newton_round_trip(pairs)?;
    }

    #[test]
    fn alexander_is_palindromic_of_degree_two_delta(pairs in newton_pairs()) {
        alexander_shape(&PlaneBranch::new(sequence_from_newton_pairs(&pairs).unwrap()).unwrap())?;
    }

    #[test]
    fn one_pair_alexander_is_torus_knot(pq in coprime_pair()) {
        one_pair_alexander(pq)?;
    }

    #[test]
    fn k2s_is_invariant_under_blow_ups(g in dominant_strategy(6), moves in moves_strategy(4)) {
        k2s_blow_up_invariant((g, moves))?;
    }

    #[test]
    fn minimization_is_confluent(
        g in dominant_strategy(6),
        moves in moves_strategy(5),
        picks in prop::collection::vec(0usize..8, 16),
    ) {
        minimize_confluent((g, moves, picks))?;
    }

    #[test]
    fn minimal_cycle_beats_brute_force(g in dominant_strategy(5)) {
        minimal_cycle_is_minimal(g)?;
    }

    #[test]
    fn star_graphs(s in seifert_strategy()) {
        star_invariants(s)?;
    }

    #[test]
    fn pinkham_agrees_with_brieskorn_lattice_count(t in coprime_triple()) {
        pinkham_matches_lattice_count(t)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn det_is_product_of_invariant_factors(g in tree_strategy(8, -6..=1)) {
        det_matches_invariant_factors(g)?;
    }

    #[test]
    fn solve_rational_resubstitutes(
        n in 1usize..6,
        entries in prop::collection::vec(-9i64..10, 36),
        rhs in prop::collection::vec((-20i64..20, 1i64..7), 6),
    ) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| entries[i * 6..i * 6 + n].to_vec()).collect();
        let m = IntMatrix::from_rows(&rows).unwrap();
        let b: Vec<Rational> = rhs[..n].iter().map(|&(p, q)| rat(p, q)).collect();
        match solve_rational(&m, &b) {
            Ok(x) => prop_assert_eq!(m.mul_rational_vec(&x).unwrap(), b),
            Err(_) => prop_assert!(det(&m).unwrap().is_zero()),
        }
    }

    #[test]
    fn reduction_mod_t_d_minus_one_agrees_at_roots(coeffs in prop::collection::vec(-5i64..6, 1..40), d in 1u32..13) {
        let p = IntPolynomial::from_coeffs(coeffs);
        let r = p.reduce_mod_t_pow_minus_one(d as usize);
        for z in roots_of_unity(d) {
            prop_assert!((eval_c(&p, z) - eval_c(&r, z)).norm() < 1e-8);
        }
    }
}

#[test]
fn catalog_cusps_have_palindromic_alexander() {
    for input in catalog_inputs() {
        for c in input.cusps() {
            alexander_shape(c).unwrap();
            if let [(p, q)] = c.newton_pairs() {
                assert_eq!(c.alexander().unwrap(), IntPolynomial::from_coeffs(torus_oracle(*p as usize, *q as usize)));
            }
        }
    }
}

#[test]
fn laufer_for_brieskorn_fixtures() {
    for (a, b, c) in [(2, 3, 5), (2, 3, 7), (2, 7, 18), (2, 13, 31), (7, 18, 2), (3, 4, 5), (2, 5, 7)] {
        brieskorn_laufer(BrieskornTriple::new(a, b, c).unwrap()).unwrap();
    }
}

#[test]
fn laufer_identity_for_degrees_3_to_9() {
    for input in one_cusp_inputs(3..=9) {
        sis_laufer(&input).unwrap();
    }
}

#[test]
fn root_sums_match_floating_point() {
    for d in 2..=12 {
        root_sums(d).unwrap();
    }
}

#[test]
fn torsion_matches_floating_point_shadow() {
    for input in catalog_inputs().iter().chain(&one_cusp_inputs(3..=9)) {
        torsion_shadow(input).unwrap();
    }
}

#[test]
fn casson_walker_from_second_derivative() {
    // λ = −½ Σᵢ (t^{−δᵢ}Δᵢ)''(1) + (d−1)(d−2)/24 via ordinary derivatives
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    for input in catalog_inputs() {
        let mut total = Rational::zero();
        for c in input.cusps() {
            let a = c.alexander().unwrap();
            let delta = Rational::from_integer(BigInt::from(c.delta()));
            let d1 = a.derivative().eval(&one);
            let d2 = a.derivative().derivative().eval(&one);
            // (t^{−δ}Δ)''(1) = Δ''(1) − 2δΔ'(1) + δ(δ+1)Δ(1)
            total += d2 - &delta * &d1 * &two + &delta * (&delta + &one);
        }
        let d = i64::from(input.d());
        let expected = -total / &two + rat((d - 1) * (d - 2), 24);
        assert_eq!(casson_walker(&input).unwrap(), expected, "{}", input.cusp_notation());
    }
}
