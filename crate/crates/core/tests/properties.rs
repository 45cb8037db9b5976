use std::sync::Arc;

use proptest::prelude::*;
use seidel_core::catalog;
use seidel_core::gamma::{GammaElement, GammaGroup, SphereClassLattice};
use seidel_core::novikov::NovikovSeries;
use seidel_core::num::{rat, rat2, Energy, Rational};
use seidel_core::quantum::{QhElement, RingSpec};

fn s2xs2() -> Arc<RingSpec> {
    catalog::cp1xcp1(&rat(2)).unwrap().spec
}

fn gamma2(g: &GammaGroup, (i, j): (i64, i64)) -> GammaElement {
    g.element(vec![i, j]).unwrap()
}

fn energy() -> impl Strategy<Value = Energy> {
    prop_oneof![
        1 => Just(Energy::Infinite),
        4 => (-6i128..16).prop_map(|n| Energy::Finite(rat2(n, 2))),
    ]
}

fn series(g: Arc<GammaGroup>) -> impl Strategy<Value = NovikovSeries> {
    (prop::collection::vec((-3i64..4, -3i64..4), 0..6), energy()).prop_map(move |(coords, cut)| {
        let gammas = coords.into_iter().map(|c| gamma2(&g, c));
        NovikovSeries::from_gammas(g.clone(), gammas, cut)
    })
}

fn element(s: Arc<RingSpec>) -> impl Strategy<Value = QhElement> {
    let g = s.gamma().clone();
    let b = s.basis().len();
    (prop::collection::vec((0..b, -2i64..3, -2i64..3), 0..5), energy()).prop_map(move |(terms, cut)| {
        let terms = terms.into_iter().map(|(c, i, j)| (c, gamma2(&g, (i, j))));
        QhElement::from_terms(g.clone(), terms, cut)
    })
}

proptest! {
    #[test]
    fn series_product_is_commutative(x in series(s2xs2().gamma().clone()), y in series(s2xs2().gamma().clone())) {
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
    }

    #[test]
    fn series_product_is_associative_below_cutoff(
        x in series(s2xs2().gamma().clone()),
        y in series(s2xs2().gamma().clone()),
        z in series(s2xs2().gamma().clone()),
    ) {
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert!(left.agrees(&right));
    }

    #[test]
    fn truncated_products_agree_with_exact_ones(
        x in series(s2xs2().gamma().clone()),
        y in series(s2xs2().gamma().clone()),
        ex in energy(),
        ey in energy(),
    ) {
        let exact = x.mul(&y).unwrap();
        let cut = x.truncate(&ex).mul(&y.truncate(&ey)).unwrap();
        prop_assert!(cut.agrees_below(&exact, cut.cutoff()));
    }

    #[test]
    fn shifts_compose_and_move_the_valuation(
        x in series(s2xs2().gamma().clone()),
        a in (-3i64..4, -3i64..4),
        b in (-3i64..4, -3i64..4),
    ) {
        let g = s2xs2().gamma().clone();
        let (a, b) = (gamma2(&g, a), gamma2(&g, b));
        prop_assert_eq!(x.shift(&a).shift(&b), x.shift(&a.plus(&b)));
        if !x.is_empty() {
            prop_assert_eq!(
                x.shift(&a).valuation(),
                Energy::Finite(x.valuation().finite().unwrap() + g.omega(&a))
            );
        }
    }

    #[test]
    fn geometric_inverse_inverts_below_cutoff(
        tail in prop::collection::vec((0i64..3, 0i64..3), 0..5),
        e in 1i128..12,
    ) {
        let g = s2xs2().gamma().clone();
        let gammas = tail
            .into_iter()
            .filter(|&c| c != (0, 0))
            .map(|c| gamma2(&g, c))
            .chain([g.zero()]);
        let u = NovikovSeries::from_gammas(g.clone(), gammas, Energy::Infinite);
        if !u.contains(&g.zero()) {
            return Ok(());
        }
        let e = Energy::Finite(rat(e));
        let inv = u.geom_inverse(e.finite().unwrap()).unwrap();
        let one = NovikovSeries::one(g.clone());
        prop_assert!(u.mul(&inv).unwrap().agrees_below(&one, &e));
    }

    #[test]
    fn quantum_product_is_bilinear(
        x in element(s2xs2()),
        y in element(s2xs2()),
        z in element(s2xs2()),
    ) {
        let s = s2xs2();
        let left = s.product(&x, &y.add(&z).unwrap()).unwrap();
        let right = s.product(&x, &y).unwrap().add(&s.product(&x, &z).unwrap()).unwrap();
        prop_assert!(left.agrees(&right));
    }

    #[test]
    fn rendered_elements_parse_back(x in element(s2xs2())) {
        let s = s2xs2();
        let text = s.render(&x);
        prop_assert_eq!(seidel_core::literal::parse_element(&s, &text).unwrap(), x);
    }

    #[test]
    fn projection_and_lift_are_consistent(
        cols in prop::collection::vec((-3i128..4, 1i128..3, -3i64..4), 1..5),
        probe in prop::collection::vec(-4i64..5, 4),
    ) {
        let omega: Vec<Rational> = cols.iter().map(|&(n, d, _)| rat2(n, d)).collect();
        let chern: Vec<i64> = cols.iter().map(|&(_, _, c)| c).collect();
        let r = omega.len();
        let g = GammaGroup::build(SphereClassLattice::new(omega.clone(), chern.clone()).unwrap());
        let raw = &probe[..r];
        let p = g.project(raw).unwrap();
        let raw_omega: Rational = raw.iter().zip(&omega).map(|(&v, w)| w * Rational::from_integer(v.into())).sum();
        let raw_chern: i64 = raw.iter().zip(&chern).map(|(v, c)| v * c).sum();
        prop_assert_eq!(g.omega(&p), raw_omega);
        prop_assert_eq!(g.chern(&p), raw_chern);
        prop_assert_eq!(g.project(&g.lift(&p).unwrap()).unwrap(), p);
        for k in g.kernel_basis() {
            prop_assert!(g.project(k).unwrap().is_zero());
        }
    }
}
