use std::collections::BTreeMap;

use proptest::prelude::*;

use kktlab_core::chevalley::{classify_gcm, extend_diagram, Gcm, GcmClass};
use kktlab_core::compalg::{CompositionElement, CompositionKind};
use kktlab_core::exactnum::SparseVec;
use kktlab_core::jordan::JordanAlgebra;
use kktlab_core::kantorvf::{vf_bracket, CoordinateSpace, PolyVectorField, Polynomial};
use kktlab_core::sampling::CheckMode;
use kktlab_core::triplesys::eq7_tensor;
use kktlab_core::{Rational, Scalar};

fn kind() -> impl Strategy<Value = CompositionKind> {
    prop_oneof![Just(CompositionKind::R), Just(CompositionKind::C), Just(CompositionKind::H), Just(CompositionKind::O)]
}

fn element(k: CompositionKind, coords: &[i64]) -> CompositionElement<Rational> {
    let c = coords.iter().take(k.dim()).map(|&x| Rational::from_int(x)).collect();
    CompositionElement::new(k, c).unwrap()
}

fn sparse(coords: &[i64]) -> SparseVec<Rational> {
    SparseVec::from_pairs(coords.iter().enumerate().map(|(i, &x)| (i, Rational::from_int(x))))
}

/// A field on three coordinates whose components have degree at most one.
fn affine_field(space: &std::sync::Arc<CoordinateSpace>, c: &[i64]) -> PolyVectorField<Rational> {
    let comps: BTreeMap<usize, Polynomial<Rational>> = (0..3)
        .map(|i| {
            let mut p = Polynomial::constant(Rational::from_int(c[4 * i]));
            for j in 0..3 {
                p = p.add(&Polynomial::var(j).scaled(&Rational::from_int(c[4 * i + j + 1])));
            }
            (i, p)
        })
        .collect();
    PolyVectorField::new(space.clone(), comps).unwrap()
}

fn space() -> std::sync::Arc<CoordinateSpace> {
    CoordinateSpace::new(vec!["x0".into(), "x1".into(), "x2".into()], vec![1, 1, 1], vec![1, -1, -1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_norm_and_alternativity(k in kind(), a in prop::collection::vec(-4i64..=4, 8), b in prop::collection::vec(-4i64..=4, 8)) {
        let (x, y) = (element(k, &a), element(k, &b));
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(xy.norm(), x.norm().mul_ref(&y.norm()));
        let xx = x.mul(&x).unwrap();
        prop_assert_eq!(xx.mul(&y).unwrap(), x.mul(&xy).unwrap());
        prop_assert_eq!(y.mul(&xx).unwrap(), y.mul(&x).unwrap().mul(&x).unwrap());
        prop_assert_eq!(xy.conj(), y.conj().mul(&x.conj()).unwrap());
    }

    #[test]
    fn hermitian_cubes_are_jordan(k in kind(), a in prop::collection::vec(-3i64..=3, 27), b in prop::collection::vec(-3i64..=3, 27)) {
        let j = JordanAlgebra::<Rational>::new(3, k).unwrap();
        let (x, y) = (sparse(&a[..j.dim()]), sparse(&b[..j.dim()]));
        prop_assert_eq!(j.mul_coords(&x, &y), j.mul_coords(&y, &x));
        let x2 = j.mul_coords(&x, &x);
        let lhs = j.mul_coords(&x2, &j.mul_coords(&y, &x));
        let rhs = j.mul_coords(&j.mul_coords(&x2, &y), &x);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vector_field_bracket_is_lie(a in prop::collection::vec(-3i64..=3, 12), b in prop::collection::vec(-3i64..=3, 12), c in prop::collection::vec(-3i64..=3, 12)) {
        let s = space();
        let (f, g, h) = (affine_field(&s, &a), affine_field(&s, &b), affine_field(&s, &c));
        let fg = vf_bracket(&f, &g).unwrap();
        prop_assert_eq!(fg.add(&vf_bracket(&g, &f).unwrap()).unwrap().is_zero(), true);
        let jac = vf_bracket(&f, &vf_bracket(&g, &h).unwrap()).unwrap()
            .add(&vf_bracket(&g, &vf_bracket(&h, &f).unwrap()).unwrap()).unwrap()
            .add(&vf_bracket(&h, &fg).unwrap()).unwrap();
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn chain_extension_of_a_end_stays_type_a(r in 1usize..=6, n in 1usize..=4) {
        let h = Gcm::named(&format!("A{r}")).unwrap();
        let e = extend_diagram(&h, 0, n).unwrap();
        prop_assert_eq!(e.rank(), r + n - 1);
        prop_assert_eq!(classify_gcm(&e), GcmClass::Finite);
        prop_assert_eq!(e.identify(), Some(format!("A{}", r + n - 1)));
    }

    #[test]
    fn slotted_hermitian_tensors_are_generalized_jts(k in kind(), n in 1usize..=3, seed in any::<u64>()) {
        let j = JordanAlgebra::<Rational>::new(2, k).unwrap();
        let t = eq7_tensor(&j, n).unwrap();
        prop_assert!(t.check_gjts(CheckMode::Sampled(200), seed).passed);
    }
}
