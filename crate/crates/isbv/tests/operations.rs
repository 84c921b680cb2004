//! Worked examples for the individual kernel operations, including the
//! golden canonical prints of the builtin equation lists.

use isbv::coeff::Domain;
use isbv::groebner::{
    buchberger, finite_staircase, leading_x_monomials, normal_form, Budget, Ideal,
};
use isbv::linalg::graded_piece_dim;
use isbv::models::{builtin_models, freeness_setup};
use isbv::order::{MonomialOrder, SimpleOrder};
use isbv::parse::parse_poly;
use isbv::poly::Polynomial;
use isbv::vars::VariableSet;

/// Canonical prints of the builtin equation lists, frozen byte for byte.
const I_II_GOLDEN: [&str; 20] = [
    "-x1*x2 + x0*x5",
    "s^2*x2^2 - x4^2 + 4*x0*x8",
    "-x1*x4 + x0*x6",
    "-x4*x5 + x2*x6",
    "t^2*x0*x2 - x1*x8",
    "4*t^2*x0*x2 + s^2*x2*x5 - x4*x6",
    "-x2*x3 + x0*x6",
    "t^2*x0*x3 - x4*x7",
    "t^2*x0*x1 - x2*x7",
    "t^2*x1^2 - x5*x7",
    "s^2*x1^2 - x3^2 + 4*x0*x7",
    "t^2*x2^2 - x5*x8",
    "4*t^2*x0^2 + s^2*x1*x2 - x3*x4",
    "4*t^2*x0*x5 + s^2*x5^2 - x6^2",
    "-x3*x5 + x1*x6",
    "t^2*x1*x3 - x6*x7",
    "4*t^2*x0*x1 + s^2*x1*x5 - x3*x6",
    "t^2*x2*x4 - x6*x8",
    "t^2*x0*x4 - x3*x8",
    "s^2*t^2*x0*x5 - t^2*x3*x4 + 4*x7*x8",
];

const III_II_GOLDEN: [&str; 20] = [
    "t^2*x1^2 - x2^2 + 4*x0*x4",
    "r^4*x0*x1 + 2*x4*x5 + x3*x6",
    "x2*x3 - 2*x1*x4 + x0*x5",
    "r^4*x0*x2 + t^2*x3*x5 + 2*x4*x6",
    "t^2*x1*x3 - 2*x2*x4 + x0*x6",
    "r^4*x1^2 + 2*x4*x7 - x3*x8",
    "x2*x5 + x1*x6 + 2*x0*x8",
    "-r^4*x1*x2 + r^4*x0*x3 - t^2*x3*x7 + 2*x4*x8",
    "2*r^4*x0^2 + t^2*x1*x5 - 2*t^2*x0*x7 + x2*x6",
    "-x5^2 + 2*x4*x7 + x3*x8",
    "-x3^2 - x1*x5 + x0*x7",
    "r^4*x1*x2 - x5*x6 - 4*x4*x8",
    "2*x3*x4 + x2*x5 + x0*x8",
    "r^4*x2^2 - 2*t^2*x5^2 + 4*t^2*x4*x7 + x6^2",
    "x3*x5 + x2*x7 + x1*x8",
    "r^4*x1*x3 + x6*x7 + x5*x8",
    "2*r^4*x0*x1 - t^2*x1*x7 + x3*x6 - x2*x8",
    "-r^4*x2*x3 + 4*r^4*x1*x4 - t^2*x5*x7 - x6*x8",
    "r^4*x0^2 - t^2*x3^2 + 4*x4^2",
    "r^4*x3^2 + 2*r^4*x1*x5 - t^2*x7^2 + x8^2",
];

#[test]
fn golden_equation_prints_match_byte_for_byte() {
    let registry = builtin_models();
    let order = MonomialOrder::GrevLex;
    for (name, golden) in [("i-ii", &I_II_GOLDEN), ("iii-ii", &III_II_GOLDEN)] {
        let model = registry.get(name).unwrap();
        assert_eq!(model.equations.len(), golden.len());
        for (eq, expect) in model.equations.iter().zip(golden.iter()) {
            assert_eq!(&eq.grammar_text(&order).unwrap(), expect);
        }
    }
}

/// The two-row binomial identity behind the second table column:
/// (uv' - u'v)^2 + 4*u*u'*v*v' expands to (uv' + u'v)^2 exactly.
#[test]
fn binomial_identity_expands_exactly() {
    let vs = VariableSet::simple(&["u", "v", "u'", "v'"]);
    let d = Domain::Rational;
    let minus = parse_poly("u*v' - u'*v", &vs, d).unwrap();
    let plus = parse_poly("u*v' + u'*v", &vs, d).unwrap();
    let cross = parse_poly("4*u*u'*v*v'", &vs, d).unwrap();
    let lhs = minus.mul(&minus).unwrap().add(&cross).unwrap();
    let rhs = plus.mul(&plus).unwrap();
    assert_eq!(lhs, rhs);
}

/// The constant 1 survives division by the table generators (the table
/// ideal has no elements of degree zero), so NF(row + 1) = 1 and the ideal
/// is proper; a rational point of the variety certifies properness
/// independently.
#[test]
fn table_ideal_is_proper() {
    let registry = builtin_models();
    let model = registry.get("i-ii").unwrap();
    let vs = &model.vars;
    let d = Domain::Rational;
    let order = MonomialOrder::GrevLex;
    let budget = Budget::default();
    let ideal = Ideal::new(vs, d, model.equations.clone());
    let one = Polynomial::one(vs, d);
    assert!(!ideal.member(&one, &order, &budget).unwrap());
    // NF(first row + 1) against the reduced basis is the constant 1
    let gb = ideal.groebner_basis(&order, &budget).unwrap();
    let probe = model.equations[0].add(&one).unwrap();
    assert_eq!(normal_form(&probe, &gb, &order), one);
    // membership of a stored row, for contrast
    assert!(ideal.member(&model.equations[0], &order, &budget).unwrap());
    // an explicit point on the variety: the image of the sections at
    // (s,t,u,v,u',v') = (1,1,1,1,1,2) satisfies every equation
    let sections = model.sections.as_ref().unwrap();
    let target = model.section_target.as_ref().unwrap();
    let values: Vec<_> = (0..target.len())
        .map(|i| {
            if target.name(i) == "v'" {
                d.from_i64(2)
            } else {
                d.from_i64(1)
            }
        })
        .collect();
    let point: Vec<_> = (0..vs.len())
        .map(|i| sections.image(i).unwrap().eval(&values))
        .collect();
    for eq in &model.equations {
        assert!(eq.eval(&point).is_zero());
    }
}

/// Golden basis of the i-ii fiber over the origin, restricted to the
/// x0 = 1 chart: 20 reduced elements, and the staircase is infinite (the
/// most degenerate fiber meets the chart along ruling lines; the witness
/// line x1 free, all other coordinates zero, satisfies every equation).
#[test]
fn origin_chart_basis_golden() {
    let registry = builtin_models();
    let model = registry.get("i-ii").unwrap().geometry();
    let vs = &model.vars;
    let d = Domain::Rational;
    let zero = d.zero();
    let one = d.one();
    let x = vs.index_of("x").unwrap();
    let y = vs.index_of("y").unwrap();
    let x0 = vs.index_of("x0").unwrap();
    let gens: Vec<Polynomial> = model
        .equations
        .iter()
        .map(|e| e.substitute_values(&[(x, zero.clone()), (y, zero.clone()), (x0, one.clone())]))
        .collect();
    let mains: Vec<usize> = (0..vs.len())
        .filter(|&i| i != x && i != y && i != x0)
        .collect();
    let order = MonomialOrder::blocks(vec![
        (mains.clone(), SimpleOrder::GrevLex),
        (vec![x, y, x0], SimpleOrder::GrevLex),
    ]);
    let gb = buchberger(&gens, &order, &Budget::default()).unwrap();
    assert_eq!(gb.len(), 20);
    let leads = leading_x_monomials(&gb, &mains, &SimpleOrder::GrevLex);
    let golden_leads = [
        "x7*x8", "x6*x8", "x6*x7", "x6^2", "x5*x8", "x5*x7", "x4*x7", "x4*x6", "x4*x5", "x4^2",
        "x3*x8", "x3*x6", "x3*x5", "x3*x4", "x3^2", "x2*x7", "x2*x3", "x1*x8", "x1*x4", "x1*x2",
    ];
    let mut printed: Vec<String> = leads.iter().map(|l| l.render(vs)).collect();
    let mut expected: Vec<String> = golden_leads.iter().map(|s| s.to_string()).collect();
    printed.sort();
    expected.sort();
    assert_eq!(printed, expected);
    assert!(finite_staircase(&leads, &mains, vs.len()).is_none());
    // the witness line
    let x1 = vs.index_of("x1").unwrap();
    let mut point = vec![d.zero(); vs.len()];
    point[x1] = d.from_i64(7);
    for g in &gens {
        assert!(g.eval(&point).is_zero());
    }
}

/// Degree-by-degree quotient dimensions of a specialized fiber: the frozen
/// values h(1), h(2), h(3) = 9, 25, 49 at a generic-looking point.
#[test]
fn graded_piece_dims_at_a_point() {
    let registry = builtin_models();
    let model = registry.get("i-ii").unwrap().geometry();
    let vs = &model.vars;
    let d = Domain::Rational;
    let x = vs.index_of("x").unwrap();
    let y = vs.index_of("y").unwrap();
    let gens: Vec<Polynomial> = model
        .equations
        .iter()
        .map(|e| e.substitute_values(&[(x, d.from_i64(1)), (y, d.from_i64(2))]))
        .collect();
    let proj = model.projective_indices();
    assert_eq!(graded_piece_dim(&gens, &proj, 1).unwrap(), 9);
    assert_eq!(graded_piece_dim(&gens, &proj, 2).unwrap(), 25);
    assert_eq!(graded_piece_dim(&gens, &proj, 3).unwrap(), 49);
}

/// A single named specialization from the freeness scan: the iii-ii
/// quotient at the all-zero subring point has dimension exactly 8.
#[test]
fn freeness_origin_specialization() {
    let registry = builtin_models();
    let model = registry.get("iii-ii").unwrap();
    let setup = freeness_setup(model).unwrap();
    let fp = Domain::fp(3).unwrap();
    let zero = fp.zero();
    let gens: Vec<Polynomial> = setup
        .gens
        .iter()
        .map(|g| {
            let reduced = g.reduce_mod(3).unwrap();
            let assignments: Vec<_> = setup.params.iter().map(|&v| (v, zero.clone())).collect();
            reduced.substitute_values(&assignments)
        })
        .collect();
    let order = MonomialOrder::blocks(vec![
        (setup.mains.clone(), SimpleOrder::GrevLex),
        (setup.params.clone(), SimpleOrder::GrevLex),
    ]);
    let gb = buchberger(&gens, &order, &Budget::default()).unwrap();
    let leads = leading_x_monomials(&gb, &setup.mains, &SimpleOrder::GrevLex);
    let stairs = finite_staircase(&leads, &setup.mains, setup.vars.len()).unwrap();
    assert_eq!(stairs.len(), 8);
}

/// Check independence: a check run alone returns the same witness as the
/// same check inside a full-suite run.
#[test]
fn checks_are_independent() {
    use isbv::verify::{run_check, run_suite, CheckConfig};
    let registry = builtin_models();
    let model = registry.get("ii-ii").unwrap();
    let config = CheckConfig {
        primes: vec![3],
        ..CheckConfig::default()
    };
    let solo = run_check(model, "counts", &config);
    let suite = run_suite(&[std::sync::Arc::clone(model)], &[], &config, 0);
    let in_suite = suite
        .results
        .iter()
        .find(|r| r.check == "counts")
        .expect("counts ran");
    assert_eq!(solo.witness, in_suite.witness);
    assert_eq!(solo.status, in_suite.status);
}

/// The origin fibers now carry oracle-derived closed forms; the counts
/// check verifies them at every configured prime.
#[test]
fn origin_fiber_counts_match_closed_forms() {
    use isbv::verify::{check_fiber_counts, CheckConfig, CheckStatus};
    let registry = builtin_models();
    let config = CheckConfig {
        primes: vec![3, 5],
        ..CheckConfig::default()
    };
    for (name, at_three) in [("i-ii", 34u64), ("iii-ii", 13u64)] {
        let model = registry.get(name).unwrap();
        let result = check_fiber_counts(model, &config);
        assert_eq!(
            result.status,
            CheckStatus::Pass,
            "{}: {}",
            name,
            result.witness
        );
        let claims = result.witness["claims"].as_array().unwrap();
        assert!(claims
            .iter()
            .any(|c| c["prime"] == 3 && c["count"] == at_three && c["ok"] == true));
    }
}

/// Symbolic certificates agree with mod-p evaluation at the claimed points:
/// the Jacobian rank of the i-ii chart system at a generic curve point is 5
/// over the function field, and evaluating at concrete F_p points of the
/// curve gives 5 as well.
#[test]
fn symbolic_and_mod_p_jacobian_ranks_agree() {
    use isbv::ffenum::{smoothness_scan, BaseMode};
    let registry = builtin_models();
    let model = registry.get("i-ii").unwrap().geometry();
    for p in [3u64, 5] {
        let scan = smoothness_scan(model, p, BaseMode::Exhaustive).unwrap();
        assert!(scan.singular_count > 0);
        let x = model.vars.index_of("x").unwrap();
        for sp in &scan.singular_points {
            assert!(sp.on_claimed_locus);
            // away from the deepest degeneration (x = 0) the corank is
            // exactly 1, matching the symbolic certificate
            if sp.coords[x] != 0 {
                assert_eq!(sp.jacobian_rank, model.smooth_rank - 1, "{:?}", sp.coords);
            }
        }
    }
}

/// The user-suppliable component hook: candidate component ideals are
/// checked for containment of the fiber ideal.
#[test]
fn fiber_component_hook() {
    use isbv::models::load_model_str;
    use isbv::verify::{check_flatness, CheckConfig, CheckStatus};
    // the fiber of a split conic pair over (1,0) decomposes; one component
    // is cut by a pair of linear forms
    let text = r#"
name = "component-demo"
base_vars = ["x", "y"]
equations = ["x*z0^2 + y*z1^2 - z2^2", "x*z0'^2 + y*z1'^2 - z2'^2"]
smooth_rank = 2

[[blocks]]
name = "z"
vars = ["z0", "z1", "z2"]

[[blocks]]
name = "z'"
vars = ["z0'", "z1'", "z2'"]

[[claims.fibers]]
point = ["1", "0"]
hilbert = []
components = [["z0 - z2", "z0' - z2'"], ["z0 + z2", "z0' - z2'"]]
"#;
    let model = load_model_str(text).unwrap();
    let config = CheckConfig {
        primes: vec![],
        ..CheckConfig::default()
    };
    let result = check_flatness(&model, &config);
    assert_eq!(result.status, CheckStatus::Pass, "{}", result.witness);
    let claims = result.witness["claims"].as_array().unwrap();
    let containments: Vec<_> = claims
        .iter()
        .filter(|c| c.get("component").is_some())
        .collect();
    assert_eq!(containments.len(), 2);
    assert!(containments
        .iter()
        .all(|c| c["fiber_ideal_contained"] == true));

    // a wrong candidate is reported as not containing the fiber ideal
    let bad = text.replace(r#"["z0 - z2", "z0' - z2'"]"#, r#"["z0 - z1", "z0' - z2'"]"#);
    let model = load_model_str(&bad).unwrap();
    let result = check_flatness(&model, &config);
    assert_eq!(result.status, CheckStatus::Fail);
}
