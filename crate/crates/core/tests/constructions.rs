use std::sync::Arc;

use num_bigint::BigInt;

use hklab::constructions::{
    amalgamated_duplication, fiber_product_over_k, idealization, multi_fiber_product_over_k, ConstructionKind,
    VariableSource,
};
use hklab::formulas::{duplication_formula, fiber_formula};
use hklab::hk::{hk_estimate, hk_function, EstimateMethod};
use hklab::{ideal_equal, parse_spec, HkError, ModulePresentation, Polynomial, Rational, RingPresentation};

fn int(a: i64) -> Rational {
    Rational::from_integer(BigInt::from(a))
}

fn ring(text: &str) -> RingPresentation {
    let d = parse_spec(text).unwrap();
    d.rings.values().next().unwrap().as_ref().clone()
}

fn fit(r: &RingPresentation, e_max: u32) -> Rational {
    let s = hk_function(r, &r.variables(), e_max).unwrap();
    hk_estimate(&s, EstimateMethod::TwoPointFit).unwrap().value
}

fn lengths(r: &RingPresentation, e_max: u32) -> Vec<u64> {
    hk_function(r, &r.variables(), e_max).unwrap().iter().map(|s| s.length).collect()
}

fn same_ideal(a: &RingPresentation, b: &RingPresentation) -> bool {
    a.nvars() == b.nvars() && ideal_equal(a.generators(), b.generators(), a.order()).unwrap()
}

#[test]
fn two_lines_meet_in_a_node() {
    let rep = fiber_product_over_k(&ring("ring A = GF(3)[x];"), &ring("ring B = GF(3)[y];")).unwrap();
    assert_eq!(rep.kind, ConstructionKind::FiberProductK);
    assert_eq!(rep.result.names(), ["x", "y"]);
    assert!(same_ideal(&rep.result, &ring("ring N = GF(3)[x,y] / (x*y);")));
    assert_eq!(rep.component_dims, [1, 1]);
}

#[test]
fn clashing_names_are_renamed() {
    let a = ring("ring A = GF(3)[x];");
    let rep = fiber_product_over_k(&a, &a).unwrap();
    assert_eq!(rep.result.names(), ["x_1", "x_2"]);
    assert_eq!(
        rep.provenance[1].1,
        VariableSource::Component {
            component: 1,
            original: "x".into()
        }
    );
}

#[test]
fn six_variable_example() {
    let r = ring("ring R = GF(5)[x,y,z] / (x*y + z^5);");
    let s = ring("ring S = GF(5)[w,u,v] / (w^2 + u*v^2 + u^3);");
    let rep = fiber_product_over_k(&r, &s).unwrap();
    let p = &rep.result;
    assert_eq!(p.nvars(), 6);
    let expected = ring(
        "ring P = GF(5)[x,y,z,w,u,v] / (x*w, x*u, x*v, y*w, y*u, y*v, z*w, z*u, z*v, x*y + z^5, w^2 + u*v^2 + u^3);",
    );
    assert!(same_ideal(p, &expected));
    // both hypersurfaces are surfaces, and so is their fiber product
    assert_eq!(rep.component_dims, [2, 2]);
    assert_eq!(p.dimension().unwrap(), 2);
}

#[test]
fn fiber_product_errors() {
    let a = ring("ring A = GF(3)[x];");
    let b = ring("ring B = GF(5)[y];");
    assert_eq!(fiber_product_over_k(&a, &b).unwrap_err(), HkError::CharMismatch(3, 5));
    let unit = RingPresentation::new(a.field(), vec!["t".into()], vec![Polynomial::var(a.field(), 1, a.order().clone(), 0).add(&Polynomial::constant(a.field(), 1, a.order().clone(), 1)).unwrap()]).unwrap();
    assert!(matches!(fiber_product_over_k(&a, &unit), Err(HkError::NotLocalInput(_))));
}

#[test]
fn triple_line_and_fold() {
    let l = ring("ring L = GF(3)[x];");
    let rep = multi_fiber_product_over_k(&[l.clone(), l.clone(), l.clone()]).unwrap();
    assert_eq!(rep.kind, ConstructionKind::MultiFiberK);
    assert!(same_ideal(&rep.result, &ring("ring T = GF(3)[a,b,c] / (a*b, a*c, b*c);")));
    let a = ring("ring A = GF(3)[x];");
    let b = ring("ring B = GF(3)[y];");
    let two = multi_fiber_product_over_k(&[a.clone(), b.clone()]).unwrap();
    assert!(same_ideal(&two.result, &fiber_product_over_k(&a, &b).unwrap().result));
}

#[test]
fn multi_fiber_dimension_is_the_maximum() {
    let plane = ring("ring A = GF(3)[x,y];");
    let line = ring("ring B = GF(3)[z];");
    let rep = multi_fiber_product_over_k(&[plane, line.clone(), line]).unwrap();
    assert_eq!(rep.component_dims, [2, 1, 1]);
    assert_eq!(rep.result.dimension().unwrap(), 2);
}

#[test]
fn duplication_along_the_maximal_ideal() {
    let r = ring("ring R = GF(3)[x];");
    let rep = amalgamated_duplication(&r, &[r.var(0)]).unwrap();
    assert_eq!(rep.kind, ConstructionKind::Duplication);
    assert!(same_ideal(&rep.result, &ring("ring D = GF(3)[x,y1] / (y1^2 - x*y1);")));
    // R dup m = R x_k R, so the two presentations share every sample
    let fiber = fiber_product_over_k(&r, &r).unwrap();
    assert_eq!(lengths(&rep.result, 3), lengths(&fiber.result, 3));
    assert_eq!(fit(&rep.result, 3), int(2));
}

#[test]
fn duplication_with_a_syzygy() {
    let r = ring("ring R = GF(3)[x];");
    let f = vec![r.var(0).pow(2).unwrap(), r.var(0).pow(3).unwrap()];
    let rep = amalgamated_duplication(&r, &f).unwrap();
    let expected = ring(
        "ring D = GF(3)[x,y1,y2] / (x*y1 - y2, y1^2 - x^2*y1, y1*y2 - x^2*y2, y2*y1 - x^3*y1, y2^2 - x^3*y2);",
    );
    assert!(same_ideal(&rep.result, &expected));
    assert_eq!(rep.component_dims, [1, 0]);
    assert_eq!(fit(&rep.result, 3), int(2));
}

#[test]
fn duplication_of_the_node() {
    let r = ring("ring R = GF(3)[x,y] / (x*y);");
    let f = vec![r.var(0).add(&r.var(1)).unwrap()];
    let rep = amalgamated_duplication(&r, &f).unwrap();
    let predicted = duplication_formula(&fit(&r, 3), rep.component_dims[0], &int(0), rep.component_dims[1]).unwrap();
    assert_eq!(predicted, int(4));
    assert_eq!(fit(&rep.result, 3), int(4));
}

#[test]
fn duplication_edge_cases() {
    let r = ring("ring R = GF(3)[x];");
    let zero = amalgamated_duplication(&r, &[r.zero()]).unwrap();
    assert!(zero.degenerate);
    assert!(same_ideal(&zero.result, &r));
    let one = r.constant(1);
    assert_eq!(amalgamated_duplication(&r, &[one]).unwrap_err(), HkError::UnitIdeal);
}

#[test]
fn idealization_examples() {
    let d = parse_spec(
        "ring N = GF(3)[x,y] / (x*y);\nmodule G = free N 1;\nring B = GF(3)[x];\nmodule K = coker B [[x]];\nring A = GF(3)[x,y];\nmodule F = free A 2;",
    )
    .unwrap();
    let cases = [
        ("N", "G", "ring E = GF(3)[x,y,y1] / (x*y, y1^2);", 4),
        ("B", "K", "ring E = GF(3)[x,y1] / (x*y1, y1^2);", 1),
        ("A", "F", "ring E = GF(3)[x,y,y1,y2] / (y1^2, y1*y2, y2^2);", 3),
    ];
    for (rn, mn, expected, value) in cases {
        let rep = idealization(d.ring(rn).unwrap(), &d.module(mn).unwrap().module).unwrap();
        assert_eq!(rep.kind, ConstructionKind::Idealization);
        assert!(same_ideal(&rep.result, &ring(expected)), "{rn} {mn}");
        assert_eq!(fit(&rep.result, 3), int(value), "{rn} {mn}");
    }
}

#[test]
fn idealization_of_the_zero_module() {
    let r = Arc::new(ring("ring N = GF(3)[x,y] / (x*y);"));
    let zero = ModulePresentation::free(r.clone(), 0);
    let rep = idealization(&r, &zero).unwrap();
    assert_eq!(lengths(&rep.result, 3), lengths(&r, 3));
}

#[test]
fn idealization_needs_the_same_ring() {
    let d = parse_spec("ring A = GF(3)[x];\nring B = GF(3)[x,y];\nmodule F = free B 1;").unwrap();
    assert!(idealization(d.ring("A").unwrap(), &d.module("F").unwrap().module).is_err());
}

#[test]
fn zero_divisor_witnesses() {
    let r = ring("ring R = GF(3)[x,y] / (x^2 - y^3);");
    let s = ring("ring S = GF(3)[u,v];");
    let rep = fiber_product_over_k(&r, &s).unwrap();
    let p = &rep.result;
    for a in rep.component_variables(0) {
        for b in rep.component_variables(1) {
            assert!(!p.normal_form(&p.var(a)).unwrap().is_zero());
            assert!(p.normal_form(&p.var(a).mul(&p.var(b)).unwrap()).unwrap().is_zero());
        }
    }
    let d = parse_spec("ring A = GF(3)[x,y];\nmodule F = free A 2;").unwrap();
    let rep = idealization(d.ring("A").unwrap(), &d.module("F").unwrap().module).unwrap();
    let e = &rep.result;
    let ys = rep.module_variables();
    for &i in &ys {
        assert!(!e.normal_form(&e.var(i)).unwrap().is_zero());
        for &j in &ys {
            assert!(e.normal_form(&e.var(i).mul(&e.var(j)).unwrap()).unwrap().is_zero());
        }
    }
}

#[test]
fn dimension_law_and_additivity() {
    let comps = [
        "ring A = GF(3)[x,y] / (x*y);",
        "ring B = GF(3)[u,v];",
        "ring C = GF(3)[s];",
        "ring D = GF(3)[a,b] / (a^2 - b^3);",
    ];
    for a in comps {
        for b in comps {
            let (ra, rb) = (ring(a), ring(b));
            let rep = fiber_product_over_k(&ra, &rb).unwrap();
            let (da, db) = (ra.dimension().unwrap(), rb.dimension().unwrap());
            assert_eq!(rep.result.dimension().unwrap(), da.max(db));
            if da == db {
                // l(P / m^[q]) = l(R / m^[q]) + l(S / m^[q]) - 1 for every q
                let (lp, la, lb) = (lengths(&rep.result, 2), lengths(&ra, 2), lengths(&rb, 2));
                for i in 0..lp.len() {
                    assert_eq!(lp[i] + 1, la[i] + lb[i]);
                }
                let predicted = fiber_formula(&fit(&ra, 3), &fit(&rb, 3), &int(1), da, db, 0).unwrap();
                if da == 1 {
                    assert_eq!(fit(&rep.result, 3), predicted);
                }
            }
        }
    }
}
