use gelfand_lab::field::Field;
use gelfand_lab::io::{lattice_map_from_json, lattice_map_to_json, repq_from_json, repq_to_json};
use gelfand_lab::lattice::{
    build_normal_map, cokernel, perturbed_normal_map, pi_cd, pseudo_diagonalize, reduce_to_normal_form, Case, NormalForm,
};
use gelfand_lab::repq::{hom_basis, RepQ};
use gelfand_lab::scalar::Scalar;
use gelfand_lab::series::TruncSeries;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Scalar::frac(p, q))
}

fn quadratic() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(a, b)| a + b * Scalar::sqrt_of(5).unwrap())
}

fn lambda() -> impl Strategy<Value = Scalar> {
    prop_oneof![Just(Scalar::one()), Just(Scalar::int(-1)), Just(Scalar::int(2)), Just(Scalar::frac(1, 3)), Just(Scalar::frac(-3, 2))]
}

fn normal_form() -> impl Strategy<Value = NormalForm> {
    (0usize..7, 0usize..=2, 0usize..=2, lambda()).prop_filter_map("parameters out of range", |(c, k, l, lam)| {
        let case = Case::ALL[c];
        if case == Case::IId {
            NormalForm::with_any_lambda(k, l, lam).ok()
        } else {
            NormalForm::new(case, k, l).ok()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quadratic_field_axioms(a in quadratic(), b in quadratic(), c in quadratic()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        if let Some(inv) = a.inv() {
            prop_assert_eq!(a * inv, Scalar::one());
        }
    }

    #[test]
    fn scalar_display_round_trips(a in quadratic()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn series_units_invert(c in prop::collection::vec(rational(), 1..6), n in 1usize..8) {
        let s = TruncSeries::from_coeffs(c, n);
        match s.invert() {
            Ok(inv) => prop_assert!(s.mul(&inv) == TruncSeries::monomial(Scalar::one(), 0, n)),
            Err(_) => prop_assert!(!s.is_unit()),
        }
    }

    #[test]
    fn pseudo_diagonal_root(c in rational(), d in rational()) {
        prop_assume!(!d.is_zero());
        let r = pseudo_diagonalize(&c, &d).unwrap();
        prop_assert!(pi_cd(&c, &d, &r.lambda).unwrap().is_zero());
        prop_assert!(r.lambda.abs().cmp_real(&Scalar::one()).is_le());
    }

    #[test]
    fn cokernel_dimension_vector(nf in normal_form()) {
        let m = cokernel(&build_normal_map(&nf, 12).unwrap()).unwrap();
        prop_assert_eq!(m.dim_vector(), nf.dimension_vector());
        prop_assert_eq!(m.dual().dual(), m.clone());
        prop_assert_eq!(m.dual().dim_vector(), m.dim_vector());
        prop_assert!(m.dual().validate().is_ok());
    }

    #[test]
    fn reduction_recovers_normal_form(nf in normal_form(), seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = perturbed_normal_map(&nf, 12, &mut rng).unwrap();
        let red = reduce_to_normal_form(&phi).unwrap();
        prop_assert!(red.verify(&phi).is_ok());
        prop_assert_eq!(red.normal_form, nf.canonicalized());
    }

    #[test]
    fn canonicalization_is_idempotent(nf in normal_form()) {
        let c = nf.canonicalized();
        prop_assert_eq!(c.canonicalized(), c.clone());
        prop_assert_eq!(c.dimension_vector(), nf.dimension_vector());
    }

    #[test]
    fn lattice_map_json_round_trips(nf in normal_form(), seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = perturbed_normal_map(&nf, 10, &mut rng).unwrap();
        prop_assert_eq!(lattice_map_from_json(&lattice_map_to_json(&phi).to_string(), None).unwrap(), phi);
    }
}

#[test]
fn hom_dimension_is_symmetric_under_duality() {
    let six: Vec<RepQ> = RepQ::schurian_six().into_iter().map(|(_, m)| m).collect();
    for m in &six {
        for n in &six {
            assert_eq!(hom_basis(m, n).dim(), hom_basis(&n.dual(), &m.dual()).dim());
        }
        assert_eq!(repq_from_json(&repq_to_json(m).to_string()).unwrap(), *m);
    }
}
