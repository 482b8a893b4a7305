use proptest::prelude::*;

use hklab::monomial::Monomial;
use hklab::spec::{parse_polynomial, parse_spec, ring_to_spec};
use hklab::{HkError, MonomialOrder, Polynomial, PrimeField, RingPresentation};

fn local_poly(field: PrimeField, terms: Vec<(Vec<u16>, i64)>) -> Polynomial {
    let terms = terms
        .into_iter()
        .filter(|(e, _)| e.iter().any(|&x| x > 0))
        .map(|(e, c)| (Monomial::from_slice(&e), c))
        .collect();
    Polynomial::from_terms(field, 3, MonomialOrder::grevlex(), terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printed_declarations_reparse_identically(
        p_idx in 0usize..4,
        gens in prop::collection::vec(
            prop::collection::vec((prop::collection::vec(0u16..5, 3), -40i64..40), 1..5),
            0..4,
        ),
        cols in prop::collection::vec(prop::collection::vec((prop::collection::vec(0u16..3, 3), 1i64..9), 1..3), 0..3),
    ) {
        let p = [2u64, 3, 5, 101][p_idx];
        let field = PrimeField::new(p).unwrap();
        let gens: Vec<Polynomial> = gens.into_iter().map(|t| local_poly(field, t)).filter(|f| !f.is_zero()).collect();
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let ring = RingPresentation::new(field, names, gens).unwrap();
        let mut text = ring_to_spec("R", &ring);
        text.push('\n');
        if !cols.is_empty() {
            let entries: Vec<String> = cols
                .into_iter()
                .map(|c| format!("[{}]", ring.fmt_poly(&local_poly(field, c))))
                .collect();
            text.push_str(&format!("module M = coker R [{}];\n", entries.join(",")));
        }
        let first = parse_spec(&text).unwrap();
        prop_assert_eq!(first.ring("R").unwrap().as_ref(), &ring);
        let printed = first.to_spec_string();
        let second = parse_spec(&printed).unwrap();
        prop_assert_eq!(first.ring("R").unwrap(), second.ring("R").unwrap());
        prop_assert_eq!(&printed, &second.to_spec_string());
        if let (Ok(a), Ok(b)) = (first.module("M"), second.module("M")) {
            prop_assert_eq!(a.module.rows(), b.module.rows());
        }
    }
}

#[test]
fn example_declarations() {
    let d = parse_spec("ring S = GF(5)[x,y,z] / (x*y + z^5);").unwrap();
    let s = d.ring("S").unwrap();
    assert_eq!(s.nvars(), 3);
    assert_eq!(s.characteristic(), 5);
    let d = parse_spec("ring R = GF(3)[x,y] / (x*y);\nmodule M = coker R [[x],[y]];").unwrap();
    let m = &d.module("M").unwrap().module;
    assert_eq!((m.generator_count(), m.relation_count()), (1, 2));
}

#[test]
fn coefficients_reduce_and_parentheses_expand() {
    let d = parse_spec("ring R = GF(3)[x,y];").unwrap();
    let r = d.ring("R").unwrap();
    let f = parse_polynomial(r, "(x - y)^3 + 300000000000000000000001*x*y").unwrap();
    assert_eq!(r.fmt_poly(&f), "x^3 - y^3 + x*y");
}

#[test]
fn ideal_generators_must_be_local() {
    match parse_spec("ring R = GF(3)[x];\nideal J = (x, 1 + x) in R;") {
        Err(HkError::At { line: 2, source, .. }) => assert!(matches!(*source, HkError::NotLocalInput(_))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn duplicate_names_are_rejected() {
    assert!(matches!(
        parse_spec("ring R = GF(3)[x];\nring R = GF(3)[y];"),
        Err(HkError::Syntax { line: 2, col: 6, .. })
    ));
    assert!(matches!(parse_spec("ring R = GF(3)[x,x];"), Err(HkError::Syntax { col: 18, .. })));
}
