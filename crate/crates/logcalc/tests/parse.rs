use logcalc::fuzz::fuzz_roundtrip;
use logcalc::parse::{parse_exponent, parse_scalar, parse_series, ParseError};
use logcalc_core::{ExactScalar, Exponent, LogSeries, Monomial, Var};

fn canon(s: &str) -> String {
    parse_series(s).unwrap().to_string()
}

#[test]
fn single_term() {
    let f = parse_series("x^(1/2)*lg(x)^2").unwrap();
    let want = LogSeries::power(&Var::new("x"), Exponent::frac(1, 2).unwrap(), 2);
    assert_eq!(f, want);
}

#[test]
fn canonical_order() {
    assert_eq!(canon("2*x + lg(x)"), "lg(x) + 2*x");
    assert_eq!(canon("3*x^(1/2)*lg(x)^2 + (1/2)*x^(-1/2)"), "(1/2)*x^(-1/2) + 3*x^(1/2)*lg(x)^2");
}

#[test]
fn lattice_violation() {
    match parse_series("x^(1/7)") {
        Err(ParseError::Lattice { line: 1, col: 3, .. }) => {}
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_series("e(1/7)"), Err(ParseError::Lattice { .. })));
}

#[test]
fn syntax_errors_have_positions() {
    match parse_series("x +\n  2*$") {
        Err(ParseError::Syntax { line: 2, col: 5, .. }) => {}
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_series("x + "), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse_series("(x"), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse_series("x*O(y^2)"), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse_series(""), Err(ParseError::Syntax { .. })));
}

#[test]
fn division_only_by_monomials() {
    assert_eq!(canon("x/(2*Pi)"), "(1/2*Pi^(-1))*x");
    assert!(matches!(parse_series("1/(1 + Pi)"), Err(ParseError::Math { .. })));
    assert_eq!(canon("x^2/x"), "x");
}

#[test]
fn big_o_truncates() {
    assert_eq!(canon("1 + y + y^2 + y^3 + O(y^3)"), "1 + y + y^2 + O(y^3)");
    let f = parse_series("x + O(y^5)").unwrap();
    assert_eq!(f.trunc_of(&Var::new("y")), Some(4));
}

#[test]
fn scalars_and_exponents() {
    assert_eq!(parse_scalar("e(1/2)^2").unwrap(), ExactScalar::int(-1));
    assert_eq!(parse_scalar("e(1/2)").unwrap(), ExactScalar::imag_unit());
    assert_eq!(parse_exponent("1/2 - 1/3*i").unwrap().to_string(), "1/2-1/3*i");
    assert_eq!(parse_scalar("Pi^(-1)*Pi").unwrap(), ExactScalar::one());
    assert!(parse_scalar("x").is_err());
}

#[test]
fn vectors_and_matrices() {
    let f = parse_series("[1, -1/2]*x + [0, 1]").unwrap();
    assert_eq!(f.to_string(), "[0, 1] + [1, -1/2]*x");
    let m = parse_series("[[1, 0], [0, 1]]*lg(y)").unwrap();
    assert_eq!(m.coeff(&Monomial::power(&Var::new("y"), Exponent::zero(), 1)).support().count(), 2);
    assert!(parse_series("[1, 2] + [1]").is_err());
    assert!(parse_series("[1, x]").is_err());
}

#[test]
fn print_parse_round_trip_fuzz() {
    fuzz_roundtrip(2000, 7).unwrap();
}

proptest::proptest! {
    #[test]
    fn exponent_text_round_trips(a in -60i64..60, b in -60i64..60, da in proptest::sample::select(vec![1i64, 2, 3, 4, 6, 12]), db in proptest::sample::select(vec![1i64, 2, 3, 4, 6, 12])) {
        use logcalc_core::Rat;
        let e = Exponent::new(Rat::new(a, da), Rat::new(b, db)).unwrap();
        proptest::prop_assert_eq!(parse_exponent(&e.to_string()).unwrap(), e.clone());
        let f = LogSeries::power(&Var::new("x"), e, 1);
        proptest::prop_assert_eq!(parse_series(&f.to_string()).unwrap(), f);
    }
}
