use seidel_core::catalog::{self, SpecBundle};
use seidel_core::literal::parse_element;
use seidel_core::num::{rat, rat2, Energy};
use seidel_core::quantum::{ClassVector, GWTable, QhElement, RingSpec};
use seidel_core::seidel::{
    classical_inverse, compose_loops, degree_obstruction, identity_lift, in_tau_image, invert, loop_power,
    order_lower_bound, tau, InvertOutcome, LoopElement, Obstruction, OrderBound, SeidelError, TauImage,
};
use seidel_core::verify::{axiom_suite, classical_cp2};

fn el(b: &SpecBundle, s: &str) -> QhElement {
    parse_element(&b.spec, s).unwrap()
}

fn inverse_of(b: &SpecBundle, x: &str, e: i128) -> String {
    match invert(&b.spec, &el(b, x), &rat(e)).unwrap() {
        InvertOutcome::Inverse(y) => b.spec.render(&y),
        other => panic!("{x}: {other:?}"),
    }
}

#[test]
fn classical_inverse_is_a_finite_neumann_series() {
    let cp2 = classical_cp2();
    let s = &cp2.spec;
    // (1 + l)⁻¹ = 1 + l + l² over Z/2
    let h = ClassVector::new([0, 1]);
    assert_eq!(classical_inverse(s, &h).unwrap(), ClassVector::new([0, 1, 2]));
    assert_eq!(classical_inverse(s, &ClassVector::new([0])).unwrap(), ClassVector::new([0]));
    assert_eq!(
        classical_inverse(s, &ClassVector::new([1])),
        Err(SeidelError::ClassicalNotInvertible)
    );
}

#[test]
fn inverses_of_monomials() {
    let cp1 = catalog::cp1();
    assert_eq!(inverse_of(&cp1, "[M]", 3), "[M]<0> @E=3");
    assert_eq!(inverse_of(&cp1, "pt", 3), "pt<-1> @E=3");
    assert_eq!(inverse_of(&cp1, "pt<2>", 3), "pt<-3> @E=3");
    assert_eq!(inverse_of(&catalog::cp2(), "line", 3), "pt<-1> @E=3");
    assert_eq!(inverse_of(&catalog::cp2(), "pt", 3), "line<-1> @E=3");
    // a ∗ a = [M]<b>
    assert_eq!(inverse_of(&catalog::builtin("cp1xcp1:2").unwrap(), "a", 5), "a<0,-1> @E=5");
}

#[test]
fn inverse_of_the_circle_action_element() {
    let b = catalog::builtin("f2-as-s2xs2:2").unwrap();
    let x = el(&b, "a + b");
    let InvertOutcome::Inverse(y) = invert(&b.spec, &x, &rat2(9, 2)).unwrap() else {
        panic!("not inverted");
    };
    // (a + b)<-b> Σ_k <k x⁻>, truncated at 9/2; ω(-b + k x⁻) = k - 1
    let mut expected = Vec::new();
    for k in 0..=5 {
        let g = catalog::x_minus(&b.spec).scaled(k).plus(&b.spec.gamma().generator(1).negated());
        expected.push((1, g.clone()));
        expected.push((2, g));
    }
    let expected = QhElement::from_terms(b.spec.gamma().clone(), expected, Energy::Finite(rat2(9, 2)));
    assert_eq!(y, expected);
    let e = b.spec.product(&x, &y).unwrap();
    assert!(e.agrees_below(&b.spec.unit(), &Energy::Finite(rat2(9, 2))));
}

#[test]
fn inverting_truncated_or_zero_input() {
    let cp1 = catalog::cp1();
    assert!(matches!(
        invert(&cp1.spec, &el(&cp1, "0 @E=2"), &rat(3)).unwrap(),
        InvertOutcome::Undetermined { achieved: Energy::Finite(a), .. } if a == rat(2)
    ));
    assert!(matches!(
        invert(&cp1.spec, &el(&cp1, "pt @E=2"), &rat(3)).unwrap(),
        InvertOutcome::Undetermined { .. }
    ));
    // enough precision in the input gives an answer
    assert_eq!(inverse_of(&cp1, "pt @E=6", 3), "pt<-1> @E=3");
    assert_eq!(invert(&cp1.spec, &el(&cp1, "0"), &rat(3)), Err(SeidelError::ZeroElement));
    assert_eq!(
        invert(&cp1.spec, &el(&cp1, "[M] + pt"), &rat(3)),
        Err(SeidelError::NotHomogeneous)
    );
}

#[test]
fn singular_multiplication_gives_a_witness() {
    let b = catalog::classical_only();
    let InvertOutcome::NotInvertible(w) = invert(&b.spec, &el(&b, "a"), &rat(3)).unwrap() else {
        panic!("a is not a unit");
    };
    assert_eq!(w.level, rat(0));
    assert_eq!(w.size, 4);
    assert!(w.rank < 4);
    assert!(!w.functional.is_empty());

    // a + b has a ∗ (a + b) = pt and (a + b)² = 2pt = 0, still singular
    let InvertOutcome::NotInvertible(w) = invert(&b.spec, &el(&b, "a + b"), &rat(3)).unwrap() else {
        panic!("a + b is not a unit");
    };
    assert_eq!(w.level, rat(0));
}

#[test]
fn tau_image_membership() {
    let cp1 = catalog::cp1();
    let s = &cp1.spec;
    let l = s.gamma().generator(0);
    assert_eq!(in_tau_image(s, &tau(s, &l)), TauImage::Yes(l.clone()));
    assert_eq!(in_tau_image(s, &el(&cp1, "[M]<1> @E=2")), TauImage::Yes(l));
    assert_eq!(in_tau_image(s, &el(&cp1, "[M]<1> @E=1")), TauImage::Undetermined);
    assert_eq!(in_tau_image(s, &el(&cp1, "0 @E=1")), TauImage::Undetermined);
    assert!(matches!(in_tau_image(s, &el(&cp1, "0")), TauImage::No(_)));
    assert!(matches!(in_tau_image(s, &el(&cp1, "pt")), TauImage::No(_)));
    assert!(matches!(in_tau_image(s, &el(&cp1, "[M] + [M]<1>")), TauImage::No(_)));
}

#[test]
fn loop_powers_and_composition() {
    let b = catalog::builtin("f2-as-s2xs2:2").unwrap();
    let circle = b.loop_named("circle-action").unwrap();
    let p4 = loop_power(circle, 4, &rat(10)).unwrap();
    assert_eq!(b.spec.render(p4.q()), "[M]<0,2> + [M]<2,0> @E=10");
    assert_eq!(p4.maslov(), 4);
    assert_eq!(p4.name(), "circle-action^4");
    let p3 = loop_power(circle, 3, &rat(10)).unwrap();
    assert_eq!(b.spec.render(p3.q()), "a<0,1> + a<1,0> + b<0,1> + b<1,0> @E=10");
    let p1 = loop_power(circle, 1, &rat(10)).unwrap();
    assert_eq!(compose_loops(&p1, &p3).unwrap().truncate(&Energy::Finite(rat(10))).q(), p4.q());

    let cp1 = catalog::cp1();
    let rotation = cp1.loop_named("rotation").unwrap();
    assert_eq!(
        cp1.spec.render(compose_loops(rotation, rotation).unwrap().q()),
        "[M]<1>"
    );
    assert_eq!(compose_loops(rotation, circle), Err(SeidelError::SpecMismatch));
}

#[test]
fn loop_degree_is_enforced() {
    let cp1 = catalog::cp1();
    let q = el(&cp1, "pt");
    assert!(matches!(
        LoopElement::new("bad", cp1.spec.clone(), q.clone(), 0),
        Err(SeidelError::DegreeMismatch { expected: 2, .. })
    ));
    assert!(LoopElement::new("ok", cp1.spec.clone(), q, 1).is_ok());
    assert!(LoopElement::new("mixed", cp1.spec.clone(), el(&cp1, "[M] + pt"), 1).is_err());
}

#[test]
fn order_bounds() {
    let cp1 = catalog::cp1();
    let rotation = cp1.loop_named("rotation").unwrap();
    assert_eq!(
        order_lower_bound(rotation, 5, &rat(6)).unwrap(),
        OrderBound::FirstTauPower(2, cp1.spec.gamma().generator(0))
    );
    // [pt]^2 = [M]<1> has energy 1, so a cutoff of 1 cannot decide
    assert_eq!(
        order_lower_bound(rotation, 5, &rat(1)),
        Err(SeidelError::CutoffTooSmall { power: 2 })
    );
    let cp2 = catalog::cp2();
    let rotation = cp2.loop_named("rotation").unwrap();
    assert_eq!(
        order_lower_bound(rotation, 5, &rat(6)).unwrap(),
        OrderBound::FirstTauPower(3, cp2.spec.gamma().generator(0))
    );
    let b = catalog::builtin("f2-as-s2xs2:2").unwrap();
    let circle = b.loop_named("circle-action").unwrap();
    assert_eq!(order_lower_bound(circle, 6, &rat(12)).unwrap(), OrderBound::NoneUpTo(6));
}

#[test]
fn degree_obstruction_needs_closed_q_plus() {
    let b = catalog::classical_only();
    assert_eq!(degree_obstruction(&b.spec, &el(&b, "a")), Ok(Obstruction::Obstructed));
    assert_eq!(degree_obstruction(&b.spec, &el(&b, "pt")), Ok(Obstruction::Obstructed));
    assert_eq!(degree_obstruction(&b.spec, &el(&b, "[M]<3>")), Ok(Obstruction::NotObstructed));
    let cp2 = classical_cp2();
    // N = 3, so degrees 4 + 6i are allowed
    assert_eq!(degree_obstruction(&cp2.spec, &el(&cp2, "line")), Ok(Obstruction::Obstructed));
    assert_eq!(degree_obstruction(&cp2.spec, &el(&cp2, "[M]<-1>")), Ok(Obstruction::NotObstructed));
    let cp1 = catalog::cp1();
    assert!(matches!(
        degree_obstruction(&cp1.spec, &cp1.spec.unit()),
        Err(SeidelError::QPlusNotClosed(_))
    ));
}

#[test]
fn identity_lift_shifts_by_gamma() {
    let b = catalog::builtin("cp1xcp1:2").unwrap();
    let g = catalog::x_plus(&b.spec);
    let lift = identity_lift(&b.spec, &g).unwrap();
    assert_eq!(lift.q(), &tau(&b.spec, &g));
    // deg <γ> = 4 - 2c₁(γ) = 4 - 2I
    assert_eq!(lift.maslov(), 4);
}

fn with_quantum(base: &RingSpec, quantum: GWTable) -> RingSpec {
    RingSpec::new("faulty", base.gamma().clone(), base.basis().clone(), quantum).unwrap()
}

#[test]
fn axiom_suite_catches_a_corrupted_table() {
    let b = catalog::builtin("cp1xcp1:2").unwrap();
    let s = &b.spec;
    assert!(axiom_suite(s, 50, &rat(6), 7).passed());

    // replace a ∗_b pt = b by a ∗_b pt = a
    let mut table = GWTable {
        classical: s.table().classical.clone(),
        quantum: vec![],
    };
    for e in &s.table().quantum {
        if e.pair.0 <= e.pair.1 {
            let value = if e.pair == (1, 3) { ClassVector::new([1]) } else { e.value.clone() };
            table.push_quantum(e.gamma.clone(), e.pair.0, e.pair.1, value);
        }
    }
    let faulty = with_quantum(s, table);
    let report = axiom_suite(&faulty, 50, &rat(6), 7);
    assert!(!report.passed());
    assert!(report.failures.iter().any(|f| f.contains("associativity")), "{:?}", report.failures);
}
