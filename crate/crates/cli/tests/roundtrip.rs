use proptest::prelude::*;

use cremona_cli::parse::{parse_derivation, parse_poly};
use cremona_cli::report::{RootsDocument, VerifyDocument, VerifySummary};
use cremona_core::classify::enumerate_root_vectors;
use cremona_core::grading::{normalize_char, CharClass, MVec};
use cremona_core::poly::{exponents_up_to, ratio, Poly, Rat};
use cremona_core::Derivation;

fn coeff() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=7).prop_map(|(p, q)| ratio(p, q))
}

fn poly_in(n: usize) -> impl Strategy<Value = Poly> {
    let exps = exponents_up_to(n, 6);
    prop::collection::vec((prop::sample::select(exps), coeff()), 0..=6)
        .prop_map(move |terms| Poly::from_terms(n, terms).unwrap())
}

fn derivation() -> impl Strategy<Value = Derivation> {
    (2usize..=4).prop_flat_map(|n| prop::collection::vec(poly_in(n), n))
        .prop_map(|images| Derivation::new(images).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn poly_round_trip(p in (2usize..=4).prop_flat_map(poly_in)) {
        prop_assert_eq!(parse_poly(&p.to_string(), p.dim()).unwrap(), p);
    }

    #[test]
    fn derivation_round_trip(d in derivation()) {
        prop_assert_eq!(&parse_derivation(&d.to_string(), d.dim()).unwrap(), &d);
        prop_assert_eq!(&parse_derivation(&d.operator_form(), d.dim()).unwrap(), &d);
    }

    #[test]
    fn char_class_round_trip(beta in prop::collection::vec(-9i64..=9, 2..=8)) {
        let c = normalize_char(&beta).unwrap();
        prop_assert_eq!(c.to_string().parse::<CharClass>().unwrap(), c.clone());
        let m: MVec = cremona_core::grading::char_to_mvec(&c).to_string().parse().unwrap();
        prop_assert_eq!(cremona_core::grading::mvec_to_char(&m), c);
    }
}

#[test]
fn report_documents_round_trip() {
    for n in 2..=3 {
        let doc = RootsDocument::new(n, 3, &enumerate_root_vectors(n, 3).unwrap());
        let back: RootsDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
    }
    let verify = VerifyDocument::run(2, 2, 3, 50, 1).unwrap();
    let back: VerifySummary = serde_json::from_str(&verify.to_json()).unwrap();
    assert_eq!(back, verify.summary());
}
