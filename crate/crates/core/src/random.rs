//! Seeded generators for configurations, group elements and classical forms.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Configuration;
use crate::matrix::QMatrix;
use crate::poly::Polynomial;
use crate::polymatrix::PolyMatrix;
use crate::rational::Rational;

/// The single generator used by every randomized suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut impl Rng, bound: i64) -> Rational {
    Rational::from(rng.gen_range(-bound..=bound))
}

/// `n` points with coordinates in `[-3, 3]`, rejection-sampled until they
/// are nonzero and in general position.
pub fn configuration(rng: &mut impl Rng, n: usize) -> Configuration {
    loop {
        let pts: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n - 1).map(|_| small(rng, 3)).collect())
            .collect();
        if pts.iter().any(|p| p.iter().all(Zero::is_zero)) {
            continue;
        }
        if let Ok(c) = Configuration::from_points(pts) {
            if c.is_in_general_position() {
                return c;
            }
        }
    }
}

/// Families of group elements, drawn separately by the change-of-coordinates
/// suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlKind {
    Diagonal,
    Permutation,
    Unipotent,
    General,
}

pub fn gl_element(rng: &mut impl Rng, size: usize, kind: GlKind) -> QMatrix {
    match kind {
        GlKind::Diagonal => {
            let d: Vec<Rational> = (0..size)
                .map(|_| {
                    let v = rng.gen_range(1..=4i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    Rational::new(v, rng.gen_range(1..=3i64))
                })
                .collect();
            QMatrix::diagonal(&d)
        }
        GlKind::Permutation => {
            let mut perm: Vec<usize> = (0..size).collect();
            perm.shuffle(rng);
            QMatrix::from_fn(size, size, |i, j| Rational::from(i64::from(perm[i] == j)))
        }
        GlKind::Unipotent => {
            let (a, b) = loop {
                let a = rng.gen_range(0..size);
                let b = rng.gen_range(0..size);
                if a != b {
                    break (a, b);
                }
            };
            let mut g = QMatrix::identity(size);
            g[(a, b)] = loop {
                let t = small(rng, 3);
                if !t.is_zero() {
                    break t;
                }
            };
            g
        }
        GlKind::General => loop {
            let g = QMatrix::from_fn(size, size, |_, _| small(rng, 2));
            if g.determinant().is_ok_and(|d| !d.is_zero()) {
                return g;
            }
        },
    }
}

/// Integer coefficients `(a, b, c, d)` in `[-5, 5]` with nonzero discriminant.
pub fn cubic_coefficients(rng: &mut impl Rng) -> [i64; 4] {
    loop {
        let v = [0; 4].map(|_| rng.gen_range(-5..=5i64));
        let [a, b, c, d] = v;
        let disc = 18 * a * b * c * d - 4 * b.pow(3) * d + b * b * c * c
            - 4 * a * c.pow(3)
            - 27 * a * a * d * d;
        if disc != 0 {
            return v;
        }
    }
}

/// A 5×5 alternating matrix of linear forms in 4 variables with
/// coefficients in `[-2, 2]`.
pub fn alternating_linear(rng: &mut impl Rng) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(5, 5, 4);
    for i in 0..5 {
        for j in i + 1..5 {
            let coeffs: Vec<Rational> = (0..4).map(|_| small(rng, 2)).collect();
            let p = Polynomial::linear(&coeffs);
            m.set(j, i, p.neg());
            m.set(i, j, p);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible() {
        let a = configuration(&mut rng(7), 5);
        let b = configuration(&mut rng(7), 5);
        assert_eq!(a, b);
        assert!(a.is_in_general_position());
        let mut r = rng(1);
        for kind in [
            GlKind::Diagonal,
            GlKind::Permutation,
            GlKind::Unipotent,
            GlKind::General,
        ] {
            let g = gl_element(&mut r, 4, kind);
            assert!(!g.determinant().unwrap().is_zero(), "{kind:?}");
        }
        let phi = alternating_linear(&mut r);
        assert_eq!(phi.transpose(), phi.neg());
        let [a, ..] = cubic_coefficients(&mut r);
        assert!((-5..=5).contains(&a));
    }
}
