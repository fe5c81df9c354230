use std::sync::Arc;

use proptest::prelude::*;

use fracideal::dirichlet::{PlaceSet, UnitGroup};
use fracideal::functorial::{fixed_point_map, Tower};
use fracideal::group_ring::det_over_group_ring;
use fracideal::scalar::{int, rat};
use fracideal::stickelberger::stickelberger;
use fracideal::{Ambient, FiniteGroup, FractionalIdeal, GroupRingElement, QGroupRing, QMatrix, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, prop::sample::select(vec![1i64, 2, 3, 4, 5, 9])).prop_map(|(n, d)| rat(n, d))
}

fn element(group: Arc<FiniteGroup>) -> impl Strategy<Value = QGroupRing> {
    prop::collection::vec(small_rational(), group.order())
        .prop_map(move |c| GroupRingElement::from_coeffs(&group, c).unwrap())
}

fn c6() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(6))
}

fn s3() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::symmetric3())
}

fn vectors(dim: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(small_rational(), dim), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_generator_choice(vs in vectors(4), k in -3i64..=3) {
        let amb = Ambient::new((0..4).map(|i| format!("e{i}")).collect());
        let a = FractionalIdeal::from_vectors(amb.clone(), &vs).unwrap();
        let mut ws: Vec<Vec<Rational>> = vs.iter().rev().cloned().collect();
        let first = ws[0].clone();
        for w in ws.iter_mut().skip(1) {
            for (x, y) in w.iter_mut().zip(&first) {
                *x += int(k) * y;
            }
        }
        ws.push(vs[0].iter().map(|x| x * rat(1, 2)).collect());
        let b = FractionalIdeal::from_vectors(amb, &ws).unwrap();
        // Halving a generator changes nothing over Z[1/2].
        prop_assert_eq!(a, b);
    }

    #[test]
    fn ring_axioms(x in element(s3()), y in element(s3()), z in element(s3())) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        let one = GroupRingElement::one(x.group());
        prop_assert_eq!(&one * &x, x.clone());
    }

    #[test]
    fn fixed_point_map_is_multiplicative(x in element(Arc::new(FiniteGroup::cyclic(3))), y in element(Arc::new(FiniteGroup::cyclic(3)))) {
        let g = c6();
        let t = Tower::from_normal(g.clone(), &g.closure(&[3])).unwrap();
        let x = GroupRingElement::from_coeffs(&t.quotient, x.coeffs().to_vec()).unwrap();
        let y = GroupRingElement::from_coeffs(&t.quotient, y.coeffs().to_vec()).unwrap();
        let lhs = fixed_point_map(&t, &(&x * &y)).unwrap();
        let rhs = &fixed_point_map(&t, &x).unwrap() * &fixed_point_map(&t, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_is_an_involutive_antihomomorphism(x in element(s3()), y in element(s3())) {
        prop_assert_eq!(x.tau().tau(), x.clone());
        prop_assert_eq!((&x * &y).tau(), &y.tau() * &x.tau());
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(element(c6()), 4), b in prop::collection::vec(element(c6()), 4)) {
        let m = |v: &[QGroupRing]| vec![vec![v[0].clone(), v[1].clone()], vec![v[2].clone(), v[3].clone()]];
        let (ma, mb) = (m(&a), m(&b));
        let prod: Vec<Vec<QGroupRing>> = (0..2)
            .map(|i| (0..2).map(|j| &(&ma[i][0] * &mb[0][j]) + &(&ma[i][1] * &mb[1][j])).collect())
            .collect();
        let lhs = det_over_group_ring(&prod).unwrap();
        let rhs = &det_over_group_ring(&ma).unwrap() * &det_over_group_ring(&mb).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_closure_is_idempotent(gens in prop::collection::vec(element(s3()), 1..3)) {
        let g = s3();
        let j = FractionalIdeal::from_generators(&g, &gens).unwrap();
        let again = FractionalIdeal::from_generators(&g, &j.basis_elements(&g).unwrap()).unwrap();
        prop_assert_eq!(again, j);
    }

    #[test]
    fn conjugation_is_a_ring_automorphism(x in element(s3()), y in element(s3()), w in 0usize..6) {
        prop_assert_eq!((&x * &y).conjugate_by(w), &x.conjugate_by(w) * &y.conjugate_by(w));
        let back = x.conjugate_by(w).conjugate_by(s3().inv(w));
        prop_assert_eq!(back, x);
    }

    #[test]
    fn preimage_of_image_recovers_ideal(vs in vectors(3), extra in prop::collection::vec(small_rational(), 3), diag in prop::collection::vec(prop::sample::select(vec![1i64, -1, 2, 3]), 3)) {
        let dom = Ambient::new((0..3).map(|i| format!("x{i}")).collect());
        let cod = Ambient::new((0..4).map(|i| format!("y{i}")).collect());
        let t = QMatrix::from_fn(4, 3, |i, j| {
            if i == 3 { extra[j].clone() } else if i == j { int(diag[i]) } else if j > i { rat(1, 3) } else { int(0) }
        });
        let j = FractionalIdeal::from_vectors(dom.clone(), &vs).unwrap();
        let back = j.map_image(&t, cod).unwrap().map_preimage(&t, dom).unwrap();
        prop_assert!(j.is_subset(&back).unwrap());
        prop_assert_eq!(back, j);
    }
}

#[test]
fn scaling_by_unit_matches_character_values() {
    let m = 7;
    let units = UnitGroup::get(m);
    let g = units.group().clone();
    let theta = stickelberger(m, &PlaceSet::with_primes(&[7]).unwrap(), 0).unwrap().element;
    let sigma2 = units.index_of(2).unwrap();
    let r = &GroupRingElement::scalar(&g, int(2)) + &GroupRingElement::basis(&g, sigma2);
    let scaled = FractionalIdeal::principal(&theta).unwrap().scale_by(&r).unwrap();
    assert_eq!(scaled, FractionalIdeal::principal(&(&theta * &r)).unwrap());
    let product = (&theta * &r).character_values().unwrap();
    let expected: Vec<_> = theta
        .character_values()
        .unwrap()
        .iter()
        .zip(r.character_values().unwrap())
        .map(|(a, b)| a.clone() * b)
        .collect();
    assert_eq!(product, expected);
}
