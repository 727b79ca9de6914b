//! Property suites for the spec invariants: exact arithmetic round trips,
//! mod-2 invariances, enclosure sign certificates, bracket containment, the
//! closed-form cycle gcd, and Perron dominance separation.

use num_bigint::BigInt;
use proptest::prelude::*;

use dilatation_core::classes::{enumerate_candidates, ClassSpec, Family};
use dilatation_core::matrix::{
    collatz_wielandt_bounds, dominates, is_primitive_digraph, is_primitive_matrix,
    separate_spectral_radii, wielandt_oracle, CompanionDigraph,
};
use dilatation_core::poly::IntPoly;
use dilatation_core::rational::{parse_rational, rat, rat_int};
use dilatation_core::roots::{largest_root_enclosure, root_modulus_profile};
use dilatation_core::verify::minispec_member;

fn small_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-5i64..=5, 1..=8).prop_map(IntPoly::from_ascending)
}

fn nonzero_poly() -> impl Strategy<Value = IntPoly> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rational_point() -> impl Strategy<Value = num_rational::BigRational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

/// Candidate-shaped polynomial x^d - a_{d-1}x^{d-1} - ... - a_1 x - 1 with a
/// nonempty support, not necessarily primitive.
fn class_shaped_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(0i64..=3, 2..=12)
        .prop_filter("some positive entry", |a| a.iter().any(|&v| v > 0))
        .prop_map(|a| {
            let d = a.len() + 1;
            let mut coeffs = vec![BigInt::from(0); d + 1];
            coeffs[0] = BigInt::from(-1);
            for (i, v) in a.into_iter().enumerate() {
                coeffs[i + 1] = BigInt::from(-v);
            }
            coeffs[d] = BigInt::from(1);
            IntPoly::from_ascending(coeffs)
        })
}

fn companion_bottom() -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(0u32..=2, 1..=11).prop_map(|tail| {
        let mut bottom = vec![BigInt::from(1)];
        bottom.extend(tail.into_iter().map(BigInt::from));
        bottom
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eval_is_multiplicative(p in small_poly(), q in small_poly(), x in rational_point()) {
        let prod = p.multiply(&q);
        prop_assert_eq!(prod.eval(&x), p.eval(&x) * q.eval(&x));
    }

    #[test]
    fn division_inverts_multiplication(p in small_poly(), q in nonzero_poly()) {
        let prod = p.multiply(&q);
        prop_assert_eq!(prod.exact_divide(&q).unwrap(), p);
    }

    #[test]
    fn mod2_reciprocity_stable_under_symmetric_bumps(
        p in nonzero_poly(),
        i in 0usize..8,
        bump in -3i64..=3,
    ) {
        let d = p.degree();
        let i = i.min(d);
        let before = p.is_reciprocal_mod2();
        // add 2*bump to the pair (i, d-i) symmetrically; degree is pinned by
        // also bumping the leading pair only when it stays nonzero
        let mut coeffs: Vec<BigInt> = p.coeffs().to_vec();
        let delta = BigInt::from(2 * bump);
        coeffs[i] += &delta;
        if d - i != i {
            coeffs[d - i] += &delta;
        }
        if coeffs[d] == BigInt::from(0) {
            return Ok(());
        }
        let bumped = IntPoly::from_ascending(coeffs);
        prop_assert_eq!(before, bumped.is_reciprocal_mod2());
    }

    #[test]
    fn enclosure_invariants_survive_refinement(p in class_shaped_poly(), steps in 0usize..40) {
        let mut enc = largest_root_enclosure(&p, &rat(1, 2)).unwrap();
        prop_assert!(enc.invariants_hold());
        for _ in 0..steps {
            enc.bisect_step();
            prop_assert!(enc.invariants_hold());
        }
    }

    #[test]
    fn collatz_wielandt_bracket_contains_enclosure(bottom in companion_bottom()) {
        let g = CompanionDigraph::from_bottom_row(bottom).unwrap();
        if !is_primitive_digraph(&g).primitive {
            return Ok(());
        }
        let p = g.char_poly();
        let enc = largest_root_enclosure(&p, &rat(1, 1_000_000)).unwrap();
        let (cw_lo, cw_hi) = collatz_wielandt_bounds(&g.materialize(), 24).unwrap();
        // both intervals contain the spectral radius, so they must intersect
        prop_assert!(cw_lo <= *enc.hi(), "cw_lo {} vs hi {}", cw_lo, enc.hi());
        prop_assert!(cw_hi >= *enc.lo(), "cw_hi {} vs lo {}", cw_hi, enc.lo());
    }

    #[test]
    fn closed_form_cycle_gcd_matches_bfs(bottom in companion_bottom()) {
        let g = CompanionDigraph::from_bottom_row(bottom).unwrap();
        let report = is_primitive_digraph(&g);
        prop_assert!(report.strongly_connected);
        prop_assert_eq!(report.cycle_gcd, Some(g.closed_form_cycle_gcd()));
    }

    #[test]
    fn primitivity_agrees_with_wielandt(bottom in companion_bottom()) {
        let g = CompanionDigraph::from_bottom_row(bottom).unwrap();
        let m = g.materialize();
        prop_assert_eq!(
            is_primitive_matrix(&m).primitive,
            wielandt_oracle(&m).unwrap()
        );
    }

    #[test]
    fn perron_dominance_separates(bottom in companion_bottom(), extra in 0usize..11) {
        let l = CompanionDigraph::from_bottom_row(bottom).unwrap();
        if !is_primitive_digraph(&l).primitive {
            return Ok(());
        }
        let lm = l.materialize();
        let dim = lm.dim();
        let mut tm = lm.clone();
        let j = extra % dim;
        tm.set(dim - 1, j, tm.get(dim - 1, j) + BigInt::from(1));
        prop_assert!(dominates(&tm, &lm).unwrap());
        // a cap hit here is a test failure by design
        prop_assert!(separate_spectral_radii(&tm, &lm, 5000).is_ok());
    }

    #[test]
    fn profile_moduli_product_matches_constant(bottom in companion_bottom()) {
        let g = CompanionDigraph::from_bottom_row(bottom).unwrap();
        let p = g.char_poly();
        if let Ok(profile) = root_modulus_profile(&p) {
            let product: f64 = profile.moduli.iter().map(|(m, _)| m).product();
            let radius_slack: f64 = profile.moduli.iter().map(|(_, r)| r).sum::<f64>() * 10.0;
            prop_assert!((product - 1.0).abs() < 1e-6 + radius_slack);
        }
    }
}

/// Boundary identities of the single-pair family, exactly, for all n <= 32.
#[test]
fn minispec_boundary_values_exact() {
    let two = BigInt::from(2);
    for n in 2usize..=32 {
        for i in 1..n {
            let g = minispec_member(n, i);
            assert_eq!(g.eval_int(&BigInt::from(1)), BigInt::from(-2));
            let mut expected = (pow(&two, 2 * n - i) - BigInt::from(1))
                * (pow(&two, i) - BigInt::from(1));
            expected -= &two;
            assert_eq!(g.eval_int(&two), expected);
            assert!(expected > BigInt::from(0));
        }
    }

    fn pow(b: &BigInt, e: usize) -> BigInt {
        let mut acc = BigInt::from(1);
        for _ in 0..e {
            acc *= b;
        }
        acc
    }
}

/// Every enumerated candidate polynomial is reciprocal mod 2 and has a
/// primitive companion digraph.
#[test]
fn enumerated_candidates_are_class_consistent() {
    for spec in [
        ClassSpec::new(Family::N, 5, 3).unwrap(),
        ClassSpec::new(Family::S, 3, 3).unwrap(),
    ] {
        for c in enumerate_candidates(&spec) {
            let p = c.poly();
            assert!(p.is_reciprocal_mod2(), "{p}");
            assert!(is_primitive_digraph(&c.companion()).primitive, "{p}");
            assert_eq!(p.eval(&rat_int(1)).numer() < &BigInt::from(0), true, "{p}");
        }
    }
}

/// The default table tolerance admits refinement down to the shared-root
/// width without losing the certificates.
#[test]
fn deep_refinement_stays_certified() {
    let p = IntPoly::parse("x^3 - x^2 - x - 1").unwrap();
    let tol = parse_rational("1e-40").unwrap();
    let enc = largest_root_enclosure(&p, &tol).unwrap();
    assert!(enc.invariants_hold());
    assert!(enc.width() <= tol);
}
