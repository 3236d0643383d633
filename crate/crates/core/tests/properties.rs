use b2tensor::engine::single_step_decompose;
use b2tensor::formal::{singular_element, weight_multiplicities};
use b2tensor::io::{decomposition_from_json, decomposition_to_json};
use b2tensor::lattice::{dim_irrep, dominant_representative, is_dominant, to_dominant_regular};
use b2tensor::{Fundamental, LatticeSeries, MultiplicityTower, Weight, WeylElement};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn weight(range: i64) -> impl Strategy<Value = Weight> {
    (-range..=range, -range..=range, any::<bool>()).prop_map(|(a, b, half)| {
        let (d1, d2) = if half {
            (2 * a + 1, 2 * b + 1)
        } else {
            (2 * a, 2 * b)
        };
        Weight::doubled(d1, d2).unwrap()
    })
}

fn dominant(range: i64) -> impl Strategy<Value = Weight> {
    weight(range).prop_map(dominant_representative)
}

fn module() -> impl Strategy<Value = Fundamental> {
    prop_oneof![Just(Fundamental::Vector), Just(Fundamental::Spinor)]
}

proptest! {
    #[test]
    fn orbit_representative_is_dominant(w in weight(12)) {
        let d = dominant_representative(w);
        prop_assert!(is_dominant(d));
        prop_assert!(WeylElement::all().iter().any(|g| g.apply(w) == d));
    }

    #[test]
    fn regular_chamber_sign_is_the_determinant(w in weight(12)) {
        let (d, sign) = to_dominant_regular(w);
        if sign != 0 {
            let g = WeylElement::all().into_iter().find(|g| g.apply(w) == d).unwrap();
            prop_assert_eq!(g.det(), sign);
        }
    }

    #[test]
    fn extended_multiplicity_is_dot_antisymmetric(m in module(), p in 0u32..7, w in weight(8)) {
        let mut tower = MultiplicityTower::new(m);
        let v = tower.value(p, w);
        for g in WeylElement::all() {
            prop_assert_eq!(tower.value(p, g.dot(w)), &v * g.det());
        }
    }

    #[test]
    fn freudenthal_diagram_has_the_weyl_dimension(lam in dominant(4)) {
        let diagram = weight_multiplicities(lam).unwrap();
        prop_assert!(diagram.is_weyl_invariant());
        prop_assert_eq!(diagram.mass(), dim_irrep(lam).unwrap());
    }

    #[test]
    fn weyl_character_identity(lam in dominant(4)) {
        let psi0 = singular_element(Weight::ZERO).unwrap();
        prop_assert_eq!(
            weight_multiplicities(lam).unwrap().convolve(&psi0),
            singular_element(lam).unwrap()
        );
    }

    #[test]
    fn single_step_preserves_dimension(m in module(), mu in dominant(6)) {
        let step = single_step_decompose(mu, m).unwrap();
        let total: BigInt = step.iter().map(|(w, c)| dim_irrep(*w).unwrap() * c).sum();
        prop_assert_eq!(total, dim_irrep(mu).unwrap() * m.dim());
        prop_assert!(step.values().all(|c| *c > BigInt::zero()));
    }

    #[test]
    fn decomposition_json_round_trips(m in module(), p in 0u32..9) {
        let d = MultiplicityTower::new(m).level(p).decomposition();
        let back = decomposition_from_json(&decomposition_to_json(&d).unwrap()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn convolution_distributes(
        a in proptest::collection::vec((weight(3), -3i64..4), 0..6),
        b in proptest::collection::vec((weight(3), -3i64..4), 0..6),
        c in proptest::collection::vec((weight(3), -3i64..4), 0..6),
    ) {
        let s = |v: &[(Weight, i64)]| v.iter().map(|(w, k)| (*w, BigInt::from(*k))).collect::<LatticeSeries>();
        let (a, b, c) = (s(&a), s(&b), s(&c));
        prop_assert_eq!(a.convolve(&b.add(&c)), a.convolve(&b).add(&a.convolve(&c)));
        prop_assert_eq!(a.convolve(&b), b.convolve(&a));
    }
}
