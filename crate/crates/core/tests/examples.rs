//! Worked values for small configurations, checked end to end through the
//! public API.

use resring::brackets::{Brackets, IndexWord};
use resring::classical::{ldf_table, BinaryCubic};
use resring::config::parse_t_polynomial;
use resring::suites::{four_point_pair, selmer_polynomial};
use resring::table::{integral_orders, isomorphic_up_to_scalar, table1_check};
use resring::{
    build_resolution, q, structure_constants, validate, verify_table, Configuration, Error,
    Normalization, Polynomial, Rational, Scale,
};

fn standard(n: usize) -> resring::GradedFreeResolution {
    build_resolution(&Configuration::standard(n).unwrap()).unwrap()
}

#[test]
fn standard_ranks() {
    assert_eq!(standard(5).ranks(), &[1, 5, 5, 1]);
    assert_eq!(standard(6).ranks(), &[1, 9, 16, 9, 1]);
    let etale = Configuration::from_etale(parse_t_polynomial("t^4-t-1").unwrap()).unwrap();
    assert_eq!(build_resolution(&etale).unwrap().ranks(), &[1, 2, 1]);
}

#[test]
fn degenerate_points_are_refused() {
    let pts = vec![
        vec![q(1, 1), q(0, 1)],
        vec![q(2, 1), q(0, 1)],
        vec![q(0, 1), q(1, 1)],
    ];
    let c = Configuration::from_points(pts).unwrap();
    assert!(matches!(
        build_resolution(&c),
        Err(Error::NotGeneralPosition { .. })
    ));
}

#[test]
fn four_point_brackets() {
    let f = four_point_pair().resolution().unwrap();
    assert!(validate(&f).passed());
    let br = Brackets::new(&f).unwrap();
    let x = |i: usize| Polynomial::var(3, i - 1);
    let b12 = br.bracket(&IndexWord::new(vec![1, 2])).unwrap();
    assert_eq!(b12, x(3).mul(&x(3).sub(&x(1)).sub(&x(2))));
    assert_eq!(br.bracket(&IndexWord::new(vec![2, 1])).unwrap(), b12.neg());
    assert_eq!(
        br.brace(&IndexWord::new(vec![1, 2, 1, 3])).unwrap(),
        q(1, 1)
    );
    let om = br.omega().unwrap();
    assert_eq!(
        *om.form(3),
        x(3).mul(&x(1).add(&x(2)).sub(&x(3))).scale(&q(2, 1))
    );
}

#[test]
fn standard_hessian_constants() {
    for n in 4..=6 {
        let om = Brackets::new(&standard(n)).unwrap().omega().unwrap();
        let t = structure_constants(&om, Scale::Hessian).unwrap();
        let mu = isomorphic_up_to_scalar(
            &t,
            &Configuration::standard(n)
                .unwrap()
                .coordinate_ring_table()
                .unwrap(),
        );
        assert!(mu.is_some());
        assert!(table1_check(&standard(n)).unwrap().passed());
    }
    let om = resring::OmegaTensor::standard(4).unwrap();
    let t = structure_constants(&om, Scale::Hessian).unwrap();
    assert_eq!(*t.c(1, 1, 2), q(-2, 1));
    assert_eq!(*t.c(1, 1, 1), q(4, 1));
}

#[test]
fn cubic_field_of_discriminant_minus_23() {
    let f = BinaryCubic::from_ints([1, 0, -1, -1]);
    assert_eq!(f.discriminant(), q(-23, 1));
    let t = ldf_table(&f);
    assert!(verify_table(&t).passed());
    assert_eq!(t.discriminant(), q(-23, 1));
    let etale = Configuration::from_etale(parse_t_polynomial("t^3-t-1").unwrap()).unwrap();
    let om = Brackets::new(&build_resolution(&etale).unwrap())
        .unwrap()
        .omega()
        .unwrap();
    let b = structure_constants(&om, Scale::Bhargava).unwrap();
    assert!(verify_table(&b).passed());
}

#[test]
fn orders_of_five_points() {
    let f = standard(5).integralize();
    for conv in [Normalization::Cyclic, Normalization::Pairwise] {
        let o = integral_orders(&f, conv).unwrap();
        assert!(o.report.passed(), "{}", o.report);
        assert_eq!(o.disc_b, &o.disc_b_prime * Rational::from(100_000_000));
    }
    let etale = Configuration::from_etale(selmer_polynomial(4)).unwrap();
    let o = integral_orders(
        &build_resolution(&etale).unwrap().integralize(),
        Normalization::Cyclic,
    )
    .unwrap();
    assert!(o.report.passed(), "{}", o.report);
    assert_eq!(o.disc_b, &o.disc_b_prime * Rational::from(8i64.pow(6)));
}

#[test]
fn pairwise_normalization_zeroes_designated_constants() {
    let om = Brackets::new(&standard(5)).unwrap().omega().unwrap();
    let (t, _) = structure_constants(&om, Scale::Bhargava)
        .unwrap()
        .normalize(Normalization::Pairwise)
        .unwrap();
    for p in [1, 3] {
        assert_eq!(*t.c(p, p, p + 1), q(0, 1));
        assert_eq!(*t.c(p + 1, p, p + 1), q(0, 1));
    }
}
