use proptest::prelude::*;

use super::*;
use crate::rational::Rational;
use crate::sequences::build_t;

pub(crate) const T_FAMILY: &str = "case i odd: (i-1)+(n-1)/n ; case i even: i-(n-1)/n";

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

#[test]
fn division_binds_tighter_than_addition() {
    let parsed = parse("(i-1) + (n-1)/n").unwrap();
    let expected = Expr::bin(
        BinOp::Add,
        Expr::bin(BinOp::Sub, Expr::Var(Var::I), Expr::int(1)),
        Expr::bin(
            BinOp::Div,
            Expr::bin(BinOp::Sub, Expr::Var(Var::N), Expr::int(1)),
            Expr::Var(Var::N),
        ),
    );
    assert_eq!(parsed, SequenceExpr::Plain(expected));
}

#[test]
fn piecewise_family_parses() {
    let SequenceExpr::Piecewise(cases) = parse(T_FAMILY).unwrap() else {
        panic!("expected piecewise");
    };
    assert_eq!(cases.len(), 2);
    assert_eq!(cases[0].0, Guard::IOdd);
    assert_eq!(cases[1].0, Guard::IEven);
}

#[test]
fn syntax_errors_carry_offsets() {
    let err = parse("1/(n").unwrap_err();
    assert_eq!(err.offset(), Some(4));
    let ParseError::Syntax { expected, .. } = err else {
        unreachable!()
    };
    assert!(expected.contains(&")".to_string()));
    assert!(expected.contains(&"+".to_string()));

    assert_eq!(parse("n + ").unwrap_err().offset(), Some(4));
    assert_eq!(parse("n $ 2").unwrap_err().offset(), Some(2));
    assert_eq!(parse("2^3^2").unwrap_err().offset(), Some(3));
    assert_eq!(parse("case i odd n").unwrap_err().offset(), Some(11));
}

#[test]
fn non_total_cases_are_rejected() {
    assert!(matches!(
        parse("case i odd: n"),
        Err(ParseError::NotTotal { i: 2, .. })
    ));
    assert!(matches!(
        parse("case n < 3: 1 ; case n >= 4: n"),
        Err(ParseError::NotTotal { n: 3, .. })
    ));
    assert!(parse("case n < 3: 1 ; case n >= 3: n").is_ok());
    assert!(parse("case i odd: n ; 1/n").is_ok());
}

#[test]
fn comments_and_whitespace() {
    let a =
        parse("# T family\ncase i odd : (i - 1) + (n - 1) / n ;\n case i even: i-(n-1)/n # tail")
            .unwrap();
    assert_eq!(a, parse(T_FAMILY).unwrap());
}

#[test]
fn eval_examples() {
    let t = parse(T_FAMILY).unwrap();
    assert_eq!(eval(&t, 1, 2).unwrap(), r("1/2"));
    assert_eq!(eval(&t, 2, 1).unwrap(), r("2"));
    let bad = parse("1/(n-1)").unwrap();
    assert_eq!(
        eval(&bad, 7, 1),
        Err(EvalError::DivisionByZero { i: 7, n: 1 })
    );
    assert_eq!(eval(&t, 1, 0), Err(EvalError::ZeroPosition));
    assert_eq!(
        eval(&parse("-2^2 + (-2)^2").unwrap(), 0, 1).unwrap(),
        r("0")
    );
    assert_eq!(eval(&parse("i - -n").unwrap(), 3, 4).unwrap(), r("7"));
}

#[test]
fn listing_matches_t_family() {
    let t = parse(T_FAMILY).unwrap();
    for i in 1..=6 {
        let mut from_expr = to_listing(&t, i);
        let mut built = build_t(i as u64).unwrap().listing();
        assert_eq!(from_expr.prefix(100).unwrap(), built.prefix(100).unwrap());
    }
}

#[test]
fn constant_and_thirds_listings() {
    let mut c = to_listing(&parse("1").unwrap(), 0);
    assert_eq!(c.take(5).unwrap(), &[r("1")]);
    let mut t = to_listing(&parse("n/3").unwrap(), 9);
    assert_eq!(t.prefix(3).unwrap(), &[r("1/3"), r("2/3"), r("1")]);
    let mut e = to_listing(&parse("1/(n-1)").unwrap(), 0);
    assert!(e.get(0).is_err());
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u64..20).prop_map(Expr::int),
        Just(Expr::Var(Var::N)),
        Just(Expr::Var(Var::I)),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), 0u32..4).prop_map(|(e, k)| Expr::Pow(Box::new(e), k)),
            (
                prop_oneof![
                    Just(BinOp::Add),
                    Just(BinOp::Sub),
                    Just(BinOp::Mul),
                    Just(BinOp::Div)
                ],
                inner.clone(),
                inner
            )
                .prop_map(|(op, l, r)| Expr::bin(op, l, r)),
        ]
    })
}

fn arb_guard() -> impl Strategy<Value = Guard> {
    prop_oneof![
        Just(Guard::IOdd),
        Just(Guard::IEven),
        (1u64..10).prop_map(Guard::NLess),
        (1u64..10).prop_map(Guard::NAtLeast),
    ]
}

fn arb_def() -> impl Strategy<Value = SequenceExpr> {
    prop_oneof![
        arb_expr().prop_map(SequenceExpr::Plain),
        (
            prop::collection::vec((arb_guard(), arb_expr()), 0..3),
            arb_expr()
        )
            .prop_map(|(mut cases, last)| {
                cases.push((Guard::Otherwise, last));
                SequenceExpr::Piecewise(cases)
            }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn print_parse_round_trip(def in arb_def()) {
        let text = def.to_string();
        let reparsed = parse(&text).unwrap();
        prop_assert_eq!(reparsed, def, "text was {}", text);
    }

    #[test]
    fn eval_is_pure(def in arb_def(), i in -5i64..6, n in 1u64..30) {
        prop_assert_eq!(eval(&def, i, n), eval(&def, i, n));
    }
}
