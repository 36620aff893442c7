use astrap::algebra::{k_vars, Coefficient, MultiPoly};
use astrap::operators::{apply_operator, parse_operator_expr, OperatorExpr};
use proptest::prelude::*;

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((0u32..=3, 0u32..=3, -5i64..=5, 0i64..=2), 1..6).prop_map(|terms| {
        let vars = k_vars(2);
        let mut p = MultiPoly::zero(&vars);
        for (e1, e2, c, q) in terms {
            p.add_term(vec![e1, e2], Coefficient::from_int(c).mul_q_power(q));
        }
        p
    })
}

fn apply(text: &str, p: &MultiPoly) -> MultiPoly {
    apply_operator(&parse_operator_expr(text).unwrap(), p).unwrap()
}

const ATOMS: [&str; 9] = [
    "E_{k1}",
    "E_{k1}^-1",
    "Fd_{k1}",
    "Bd_{k1}",
    "Qfd_{k1}",
    "QId_{k1}",
    "QE_{k1}",
    "(Q-1)*E_{k1} + 2*Id",
    "(-Qfd_{k1})^2",
];

proptest! {
    #[test]
    fn forward_difference_is_shift_minus_identity(p in poly_strategy()) {
        prop_assert_eq!(apply("E_{k1} - Id", &p), apply("Fd_{k1}", &p));
    }

    #[test]
    fn backward_difference_after_shift(p in poly_strategy()) {
        prop_assert_eq!(apply("Bd_{k2} * E_{k2}", &p), apply("Fd_{k2}", &p));
    }

    #[test]
    fn q_identity_inverts_the_q_difference_factor(p in poly_strategy()) {
        prop_assert_eq!(apply("QId_{k1} * Qfd_{k1}", &p), apply("Fd_{k1}", &p));
    }

    #[test]
    fn q_difference_from_backward_difference(p in poly_strategy()) {
        prop_assert_eq!(apply("Q^-1 * Bd_{k1} * (Id + Qfd_{k1})", &p), apply("Qfd_{k1}", &p));
    }

    #[test]
    fn shift_round_trip(p in poly_strategy(), a in -3i64..=3) {
        let there = OperatorExpr::e("k2", a);
        let back = OperatorExpr::e("k2", -a);
        let q = apply_operator(&back, &apply_operator(&there, &p).unwrap()).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn distinct_variables_commute(p in poly_strategy(), i in 0usize..ATOMS.len(), j in 0usize..ATOMS.len()) {
        let a = ATOMS[i];
        let b = ATOMS[j].replace("k1", "k2");
        prop_assert_eq!(apply(&format!("({a}) * ({b})"), &p), apply(&format!("({b}) * ({a})"), &p));
    }

    #[test]
    fn operators_are_linear(p in poly_strategy(), r in poly_strategy(), i in 0usize..ATOMS.len(), c in -4i64..=4) {
        let op = parse_operator_expr(ATOMS[i]).unwrap();
        let combo = p.scale(&Coefficient::from_int(c)) + &r;
        let lhs = apply_operator(&op, &combo).unwrap();
        let rhs = apply_operator(&op, &p).unwrap().scale(&Coefficient::from_int(c)) + apply_operator(&op, &r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_round_trip(i in 0usize..ATOMS.len(), j in 0usize..ATOMS.len()) {
        let e = parse_operator_expr(&format!("({}) * ({}) + QS_{{k2,k1}}", ATOMS[i], ATOMS[j])).unwrap();
        prop_assert_eq!(parse_operator_expr(&e.to_string()).unwrap(), e);
    }
}

#[test]
fn difference_lowers_binomials() {
    let vars = k_vars(1);
    let binom = |d: u32| {
        let mut acc = MultiPoly::one(&vars);
        for t in 0..d as i64 {
            acc = acc * MultiPoly::linear(&vars, "k1", -t).unwrap();
        }
        acc.scale_rational(&astrap::algebra::Rational::new(1.into(), astrap::algebra::factorial(d)))
    };
    for d in 1..5 {
        assert_eq!(apply("Fd_{k1}", &binom(d)), binom(d - 1));
    }
    let constant = MultiPoly::constant(&vars, Coefficient::from_int(7));
    assert!(apply("Qfd_{k1}", &constant).is_zero());
    let linear = MultiPoly::var(&vars, "k1").unwrap();
    assert_eq!(apply("Qfd_{k1}", &linear), MultiPoly::constant(&vars, Coefficient::q_pow(-1)));
}

#[test]
fn unknown_variable_is_rejected() {
    let p = MultiPoly::one(&k_vars(1));
    assert!(apply_operator(&parse_operator_expr("Fd_{k3}").unwrap(), &p).is_err());
}
