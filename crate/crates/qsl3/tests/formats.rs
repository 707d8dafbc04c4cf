use proptest::prelude::*;
use qsl3::formats::parse_poly;
use qsl3_core::bqd::{quantum_determinants, Bqd};
use qsl3_core::{Monomial, MultiPoly, PolyContext, Qj, Rational};

fn ctx() -> PolyContext<Rational> {
    PolyContext::new(&["alpha", "beta", "gamma", "beta_p", "gamma_p"], ())
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly<Rational>> {
    prop::collection::vec(((-20i64..20, 1i64..6), prop::collection::vec(0u32..4, 5)), 0..8).prop_map(|terms| {
        MultiPoly::from_terms(&ctx(), terms.into_iter().map(|((n, d), e)| (Monomial(e), Rational::new(n, d))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(p in poly_strategy()) {
        let text = p.to_string();
        let back = parse_poly(&ctx(), &text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), text);
    }
}

#[test]
fn determinant_cubic_round_trip() {
    let b = Bqd::case_ih(&Rational::new(7, 3)).unwrap();
    let s = quantum_determinants(&b).unwrap().s;
    let text = s.to_string();
    assert_eq!(parse_poly(s.poly_context(), &text).unwrap(), s);
}

#[test]
fn qj_coefficients_round_trip() {
    let c = PolyContext::<Qj>::new(&["x", "y"], ());
    let p = parse_poly(&c, "(1 + 2*j)*x^2*y - j*y + 3").unwrap();
    assert_eq!(parse_poly(&c, &p.to_string()).unwrap(), p);
}
