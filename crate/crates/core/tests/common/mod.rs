//! Oracles, generators, and property bodies shared by the property and
//! acceptance suites.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use sisinv::branch::{sequence_from_newton_pairs, PlaneBranch};
use sisinv::exactmath::{det, smith_normal_form, IntPolynomial, Rational};
use sisinv::plumbing::{
    canonical_k2s, determinant, homology, intersection_matrix, is_negative_definite, isomorphic, minimal_cycle,
    minimize, minimize_by, star_shape, PlumbingGraph, Vertex,
};
use sisinv::seifert::{
    brieskorn_mu, brieskorn_pg, brieskorn_seifert, laufer_check, pinkham_pg, seifert_to_graph, BrieskornTriple,
    SeifertData,
};
use sisinv::splice::splice_diagram;
use sisinv::superisolated::{catalog, closed_forms, cusp_product, root_sum_s1, root_sum_s2, sw_verdict, torsion, SisInput};

pub type Check = Result<(), TestCaseError>;

// ---------- oracles ----------

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * cofactor_det(&minor)
        })
        .sum()
}

/// `(t^{pq} − 1)(t − 1) / ((t^p − 1)(t^q − 1))` by long division over i64.
pub fn torus_oracle(p: usize, q: usize) -> Vec<i64> {
    let mut num = vec![0i64; p * q + 2];
    // (t^{pq} − 1)(t − 1) = t^{pq+1} − t^{pq} − t + 1
    num[p * q + 1] += 1;
    num[p * q] -= 1;
    num[1] -= 1;
    num[0] += 1;
    for k in [p, q] {
        let deg = num.len() - 1;
        let mut quot = vec![0i64; deg + 1 - k];
        for i in (k..=deg).rev() {
            let c = num[i];
            quot[i - k] = c;
            num[i] = 0;
            num[i - k] += c;
        }
        assert!(num.iter().all(|&c| c == 0), "exact division");
        num = quot;
    }
    num
}

pub fn roots_of_unity(d: u32) -> Vec<Complex64> {
    (0..d).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64)).collect()
}

pub fn eval_c(p: &IntPolynomial, x: Complex64) -> Complex64 {
    p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_f64().unwrap())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

/// All cycles with coefficients in `1..=bound` pairing non-positively with every vertex.
pub fn brute_force_anti_nef(g: &PlumbingGraph, bound: i64) -> Vec<Vec<i64>> {
    let m = intersection_matrix(g);
    let n = g.len();
    let mut found = Vec::new();
    let mut c = vec![1i64; n];
    loop {
        let big: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        if m.mul_vec(&big).unwrap().iter().all(|x| !x.is_positive()) {
            found.push(c.clone());
        }
        let mut k = 0;
        while k < n && c[k] == bound {
            c[k] = 1;
            k += 1;
        }
        if k == n {
            return found;
        }
        c[k] += 1;
    }
}

// ---------- generators ----------

/// Tree on `eulers.len()` vertices with vertex `i + 1` attached to `parents[i] % (i + 1)`.
pub fn tree(eulers: &[i64], parents: &[usize]) -> PlumbingGraph {
    let vertices = eulers.iter().enumerate().map(|(i, &e)| Vertex::new(i as u32, e)).collect();
    let edges = (1..eulers.len()).map(|i| [(parents[i - 1] % i) as u32, i as u32]).collect();
    PlumbingGraph::new(vertices, edges).unwrap()
}

/// Euler numbers at most minus the valence (and at most −2): negative
/// definite and minimal.
pub fn dominant_tree(extra: &[i64], parents: &[usize]) -> PlumbingGraph {
    let n = extra.len();
    let mut valence = vec![0i64; n];
    for i in 1..n {
        valence[i] += 1;
        valence[parents[i - 1] % i] += 1;
    }
    let eulers: Vec<i64> = (0..n).map(|i| -(valence[i].max(2)) - extra[i]).collect();
    tree(&eulers, parents)
}

pub fn tree_strategy(max: usize, euler: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = PlumbingGraph> {
    (1..=max).prop_flat_map(move |n| {
        (prop::collection::vec(euler.clone(), n), prop::collection::vec(0usize..64, n.saturating_sub(1)))
            .prop_map(|(e, p)| tree(&e, &p))
    })
}

pub fn dominant_strategy(max: usize) -> impl Strategy<Value = PlumbingGraph> {
    (1..=max).prop_flat_map(|n| {
        (prop::collection::vec(0i64..3, n), prop::collection::vec(0usize..64, n.saturating_sub(1)))
            .prop_map(|(e, p)| dominant_tree(&e, &p))
    })
}

pub fn moves_strategy(max: usize) -> impl Strategy<Value = Vec<(bool, usize)>> {
    prop::collection::vec((any::<bool>(), 0usize..32), 1..max)
}

pub fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
    (2u64..9, 3u64..30).prop_filter("p < q coprime", |&(p, q)| p < q && p.gcd(&q) == 1)
}

pub fn newton_pairs() -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop_oneof![
        coprime_pair().prop_map(|x| vec![x]),
        (coprime_pair(), 2u64..4, 1u64..12)
            .prop_filter_map("second pair", |((p1, q1), p2, q2)| (q2.gcd(&p2) == 1 && p1 * q1 * p2 < 400)
                .then_some(vec![(p1, q1), (p2, q2)])),
    ]
}

pub fn seifert_strategy() -> impl Strategy<Value = SeifertData> {
    (1i64..4, prop::collection::vec((2u64..12, 1u64..12), 0..5)).prop_map(|(b, legs)| {
        let legs = legs.into_iter().filter(|&(a, x)| x < a && a.gcd(&x) == 1).collect();
        SeifertData::new(b, legs).unwrap()
    })
}

pub fn coprime_triple() -> impl Strategy<Value = BrieskornTriple> {
    (2u64..8, 2u64..12, 2u64..20).prop_filter_map("pairwise coprime", |(a, b, c)| {
        (a.gcd(&b) == 1 && b.gcd(&c) == 1 && a.gcd(&c) == 1).then(|| BrieskornTriple::new(a, b, c).unwrap())
    })
}

pub fn blow_up_sequence(mut g: PlumbingGraph, moves: &[(bool, usize)]) -> PlumbingGraph {
    for &(on_edge, k) in moves {
        g = if on_edge && !g.edges().is_empty() {
            let [a, b] = g.edges()[k % g.edges().len()];
            g.blow_up_edge(a, b).unwrap()
        } else {
            let id = g.vertices()[k % g.len()].id;
            g.blow_up_vertex(id).unwrap()
        };
    }
    g
}

pub fn catalog_inputs() -> Vec<SisInput> {
    [4, 5, 6].into_iter().flat_map(|d| catalog(d).unwrap()).map(|e| e.input).collect()
}

/// Curves with a single `[d−1]` cusp, one for every degree.
pub fn one_cusp_inputs(degrees: std::ops::RangeInclusive<u32>) -> Vec<SisInput> {
    degrees.map(|d| SisInput::parse(d, &format!("[{}]", d - 1)).unwrap()).collect()
}

/// Runs `check` on `cases` deterministic samples of `strategy`.
pub fn run_deterministic<S: Strategy>(cases: u32, strategy: S, check: impl Fn(S::Value) -> Check) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

// ---------- property bodies ----------

pub fn newton_round_trip(pairs: Vec<(u64, u64)>) -> Check {
    let b = PlaneBranch::new(sequence_from_newton_pairs(&pairs).unwrap()).unwrap();
    prop_assert_eq!(b.newton_pairs(), &pairs[..]);
    Ok(())
}

pub fn alexander_shape(b: &PlaneBranch) -> Check {
    let a = b.alexander().unwrap();
    prop_assert!(a.is_palindromic(), "{} not palindromic", b.sequence());
    prop_assert_eq!(a.at_one(), BigInt::from(1));
    prop_assert_eq!(a.degree(), Some(2 * b.delta() as usize));
    Ok(())
}

pub fn one_pair_alexander((p, q): (u64, u64)) -> Check {
    let b = PlaneBranch::new(sequence_from_newton_pairs(&[(p, q)]).unwrap()).unwrap();
    prop_assert!(b.is_one_pair());
    prop_assert_eq!(b.alexander().unwrap(), IntPolynomial::from_coeffs(torus_oracle(p as usize, q as usize)));
    Ok(())
}

pub fn det_matches_invariant_factors(g: PlumbingGraph) -> Check {
    let m = intersection_matrix(&g);
    let d = det(&m).unwrap();
    let prod: BigInt = smith_normal_form(&m).iter().product();
    prop_assert_eq!(d.abs(), prod.abs());
    if g.len() <= 6 {
        let rows: Vec<Vec<i64>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_i64().unwrap()).collect()).collect();
        prop_assert_eq!(&d, &BigInt::from(cofactor_det(&rows)));
    }
    let h = homology(&g).unwrap();
    if d.is_zero() {
        prop_assert!(h.factors.iter().any(Zero::is_zero));
    } else {
        prop_assert_eq!(h.order(), d.abs());
    }
    Ok(())
}

pub fn k2s_blow_up_invariant((g, moves): (PlumbingGraph, Vec<(bool, usize)>)) -> Check {
    let before = canonical_k2s(&g).unwrap().1;
    let h = blow_up_sequence(g.clone(), &moves);
    prop_assert!(is_negative_definite(&h));
    prop_assert_eq!(canonical_k2s(&h).unwrap().1, before);
    prop_assert_eq!(determinant(&h), determinant(&g));
    Ok(())
}

pub fn minimize_confluent((g, moves, picks): (PlumbingGraph, Vec<(bool, usize)>, Vec<usize>)) -> Check {
    let h = blow_up_sequence(g.clone(), &moves);
    let mut it = picks.iter().cycle();
    let other = minimize_by(&h, |c| it.next().unwrap() % c.len());
    prop_assert!(isomorphic(&minimize(&h), &g));
    prop_assert!(isomorphic(&other, &g));
    prop_assert!(isomorphic(&minimize_by(&h, |c| c.len() - 1), &g));
    Ok(())
}

pub fn minimal_cycle_is_minimal(g: PlumbingGraph) -> Check {
    let z = minimal_cycle(&g).unwrap();
    let zv: Vec<i64> = z.values().iter().map(|x| x.to_i64().unwrap()).collect();
    if zv.iter().any(|&c| c > 6) {
        return Ok(());
    }
    let found = brute_force_anti_nef(&g, 6);
    prop_assert!(found.contains(&zv));
    for f in &found {
        prop_assert!(f.iter().zip(&zv).all(|(a, b)| a >= b), "{:?} not above {:?}", f, zv);
    }
    Ok(())
}

pub fn star_invariants(s: SeifertData) -> Check {
    let g = seifert_to_graph(&s);
    if g.len() == 1 || !s.e().is_negative() {
        return Ok(());
    }
    prop_assert_eq!(star_shape(&g).unwrap().sorted_legs(), s.sorted_legs());
    // |e| ∏α = |H|
    let h = homology(&g).unwrap().order();
    prop_assert_eq!(-s.e() * Rational::from(s.alpha_product()), Rational::from(h));
    if let [centre] = g.nodes()[..] {
        let mut w = splice_diagram(&g).unwrap().weights_at(g.vertices()[centre].id);
        w.sort();
        let mut alphas: Vec<BigInt> = s.legs.iter().map(|&(a, _)| BigInt::from(a)).collect();
        alphas.sort();
        prop_assert_eq!(w, alphas);
    }
    Ok(())
}

pub fn pinkham_matches_lattice_count(t: BrieskornTriple) -> Check {
    let s = brieskorn_seifert(t).unwrap();
    prop_assert_eq!(pinkham_pg(&s).unwrap(), BigInt::from(brieskorn_pg(t)));
    brieskorn_laufer(t)
}

pub fn brieskorn_laufer(t: BrieskornTriple) -> Check {
    let k2s = canonical_k2s(&seifert_to_graph(&brieskorn_seifert(t).unwrap())).unwrap().1;
    prop_assert!(laufer_check(&BigInt::from(brieskorn_mu(t)), &BigInt::from(brieskorn_pg(t)), &k2s), "{}", t);
    Ok(())
}

pub fn sis_laufer(input: &SisInput) -> Check {
    let r = sw_verdict(input).unwrap();
    let c = closed_forms(input.d());
    prop_assert_eq!(&r.k2s, &Rational::from(c.k2s.clone()));
    prop_assert_eq!(r.delta_f.degree(), c.mu.to_usize());
    prop_assert!(laufer_check(&c.mu, &c.pg, &r.k2s), "d = {}", input.d());
    Ok(())
}

pub fn root_sums(d: u32) -> Check {
    let (mut s1, mut s2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for z in roots_of_unity(d).into_iter().skip(1) {
        let w = (z - 1.0).inv();
        s1 += w;
        s2 += w * w;
    }
    prop_assert!((s1.re - to_f64(&root_sum_s1(d))).abs() < 1e-9 && s1.im.abs() < 1e-9, "S1 d={}", d);
    prop_assert!((s2.re - to_f64(&root_sum_s2(d))).abs() < 1e-9 && s2.im.abs() < 1e-9, "S2 d={}", d);
    Ok(())
}

pub fn torsion_shadow(input: &SisInput) -> Check {
    let d = input.d();
    let p = cusp_product(input).unwrap();
    let shadow: Complex64 =
        roots_of_unity(d).into_iter().skip(1).map(|z| eval_c(&p, z) / ((z - 1.0) * (z - 1.0))).sum::<Complex64>()
            / d as f64;
    let exact = to_f64(&torsion(input).unwrap());
    prop_assert!((shadow.re - exact).abs() < 1e-6 && shadow.im.abs() < 1e-6, "d={} {}", d, input.cusp_notation());
    Ok(())
}
