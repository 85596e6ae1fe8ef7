use grasscode::exterior::compound_matrix;
use grasscode::grassgeo::{is_decomposable, plucker};
use grasscode::{Field, FieldSpec, Matrix, Permutation, Subspace};
use proptest::prelude::*;

const ORDERS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn field_and_entries(n: usize) -> impl Strategy<Value = (Field, Vec<u32>)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(move |q| {
        let f = FieldSpec::from_order(q).unwrap();
        (Just(f), prop::collection::vec(0..q as u32, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, v) in field_and_entries(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            prop_assert_eq!(f.pow(a, f.q() as i64 - 1).unwrap(), 1);
        }
        // Frobenius is additive and multiplicative
        prop_assert_eq!(f.frobenius(1, f.add(a, b)), f.add(f.frobenius(1, a), f.frobenius(1, b)));
        prop_assert_eq!(f.frobenius(1, f.mul(a, b)), f.mul(f.frobenius(1, a), f.frobenius(1, b)));
    }

    #[test]
    fn rref_is_idempotent((f, v) in field_and_entries(12)) {
        let m = Matrix::from_vec(&f, 3, 4, v).unwrap();
        let once = m.rref().matrix;
        prop_assert_eq!(once.rref().matrix, once.clone());
        prop_assert_eq!(once.rank(), m.rank());
    }

    #[test]
    fn compound_is_multiplicative((f, v) in field_and_entries(32)) {
        let a = Matrix::from_vec(&f, 4, 4, v[..16].to_vec()).unwrap();
        let b = Matrix::from_vec(&f, 4, 4, v[16..].to_vec()).unwrap();
        for l in 1..=3 {
            let lhs = compound_matrix(&a.mul(&b), l).unwrap();
            let rhs = compound_matrix(&a, l).unwrap().mul(&compound_matrix(&b, l).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert_eq!(a.mul(&b).det().unwrap(), f.mul(a.det().unwrap(), b.det().unwrap()));
    }

    #[test]
    fn plucker_round_trip((f, v) in field_and_entries(10)) {
        let m = Matrix::from_vec(&f, 2, 5, v).unwrap();
        prop_assume!(m.rank() == 2);
        let gamma = Subspace::span(&m);
        let back = is_decomposable(&plucker(&gamma).unwrap()).unwrap();
        prop_assert_eq!(back, Some(gamma));
    }

    #[test]
    fn permutation_inverse(images in Just((0..9u32).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Permutation::from_images(images).unwrap();
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert_eq!(p.pow(2), p.then(&p));
    }
}
