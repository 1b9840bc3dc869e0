use proptest::prelude::*;

use resring::brackets::{Brackets, OmegaTensor};
use resring::random::{self, GlKind};
use resring::resolution::transform_with_configuration;
use resring::symmetry::symmetry_check;
use resring::table::{isomorphic_up_to_scalar, BasisNote, ShearTransform};
use resring::{
    build_resolution, structure_constants, verify_table, Configuration, GradedFreeResolution,
    MultiplicationTable, QMatrix, Rational, Scale,
};

fn random_resolution(n: usize, seed: u64) -> (Configuration, GradedFreeResolution) {
    let c = random::configuration(&mut random::rng(seed), n);
    let f = build_resolution(&c).unwrap();
    (c, f)
}

fn kind(k: u8) -> GlKind {
    match k % 4 {
        0 => GlKind::Diagonal,
        1 => GlKind::Permutation,
        2 => GlKind::Unipotent,
        _ => GlKind::General,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn symmetry_and_indicator_identities(n in 5usize..=6, seed in any::<u64>()) {
        let (_, f) = random_resolution(n, seed);
        let r = symmetry_check(&f, &mut random::rng(seed ^ 1), 4).unwrap();
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn omega_transforms_with_det(n in 4usize..=5, seed in any::<u64>(), k in any::<u8>()) {
        let (_, f) = random_resolution(n, seed);
        let g = random::gl_element(&mut random::rng(seed ^ 2), n - 1, kind(k));
        let om = Brackets::new(&f).unwrap().omega().unwrap();
        let moved = Brackets::new(&f.transform(&g).unwrap()).unwrap().omega().unwrap();
        prop_assert_eq!(moved, om.transformed(&g).unwrap());
    }

    #[test]
    fn action_is_a_group_action(seed in any::<u64>(), k1 in any::<u8>(), k2 in any::<u8>()) {
        let mut rng = random::rng(seed);
        let om = OmegaTensor::standard(5).unwrap();
        let g = random::gl_element(&mut rng, 4, kind(k1));
        let h = random::gl_element(&mut rng, 4, kind(k2));
        let lhs = om.act(&h).unwrap().act(&g).unwrap();
        prop_assert_eq!(lhs, om.act(&g.mul(&h).unwrap()).unwrap());
    }

    #[test]
    fn transform_round_trip(n in 4usize..=5, seed in any::<u64>(), k in any::<u8>()) {
        let (c, f) = random_resolution(n, seed);
        let g = random::gl_element(&mut random::rng(seed ^ 3), n - 1, kind(k));
        let (t, c2) = transform_with_configuration(&f, &c, &g).unwrap();
        prop_assert!(c2.is_in_general_position());
        prop_assert_eq!(t.transform(&g.inverse().unwrap()).unwrap(), f);
    }

    #[test]
    fn structure_constants_scale_covariantly(n in 4usize..=5, seed in any::<u64>(), p in 1i64..6, q in 1i64..6) {
        let (_, f) = random_resolution(n, seed);
        let om = Brackets::new(&f).unwrap().omega().unwrap();
        let mu = Rational::new(p, q);
        let t = structure_constants(&om, Scale::Hessian).unwrap();
        let s = structure_constants(&om.scale(&mu), Scale::Hessian).unwrap();
        prop_assert!(verify_table(&s).passed());
        prop_assert_eq!(s, t.rescaled(&mu).with_note(BasisNote::TraceZero, Some(Scale::Hessian)));
    }

    #[test]
    fn table_matches_coordinate_ring(n in 4usize..=5, seed in any::<u64>()) {
        let (c, f) = random_resolution(n, seed);
        let t = structure_constants(&Brackets::new(&f).unwrap().omega().unwrap(), Scale::Hessian).unwrap();
        prop_assert!(verify_table(&t).passed());
        prop_assert!(isomorphic_up_to_scalar(&t, &c.coordinate_ring_table().unwrap()).is_some());
    }

    #[test]
    fn shears_preserve_invariants(seed in any::<u64>(), l in proptest::collection::vec(-4i64..=4, 4)) {
        let (_, f) = random_resolution(5, seed);
        let t = structure_constants(&Brackets::new(&f).unwrap().omega().unwrap(), Scale::Bhargava).unwrap();
        let s = ShearTransform::new(l.into_iter().map(Rational::from).collect());
        let moved = t.shear(&s).unwrap();
        prop_assert_eq!(moved.basis_note(), BasisNote::Sheared);
        prop_assert!(verify_table(&moved).passed());
        prop_assert_eq!(moved.shear_invariants(), t.shear_invariants());
        prop_assert_eq!(moved.discriminant(), t.discriminant());
        let back = moved.shear(&s.inverse()).unwrap();
        prop_assert_eq!(back.shear_invariants(), t.shear_invariants());
    }

    #[test]
    fn json_round_trips(n in 4usize..=5, seed in any::<u64>()) {
        let (c, f) = random_resolution(n, seed);
        let text = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(serde_json::from_str::<Configuration>(&text).unwrap(), c);
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(&serde_json::from_str::<GradedFreeResolution>(&text).unwrap(), &f);
        let om = Brackets::new(&f).unwrap().omega().unwrap();
        let text = serde_json::to_string(&om).unwrap();
        prop_assert_eq!(&serde_json::from_str::<OmegaTensor>(&text).unwrap(), &om);
        let t = structure_constants(&om, Scale::Hessian).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<MultiplicationTable>(&text).unwrap(), t);
    }
}

#[test]
fn interior_basis_changes_fix_omega() {
    let r = resring::suites::basis_independence(&[4, 5, 6], 11, 3).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn singular_transform_is_rejected() {
    let (_, f) = random_resolution(4, 0);
    assert!(f.transform(&QMatrix::zeros(3, 3)).is_err());
}
