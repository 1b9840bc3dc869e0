//! Finite-dimensional commutative algebras over Q: the split algebra Q^n
//! and monogenic algebras Q[t]/(f).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rational::Rational;

/// Elements are coordinate vectors: the standard idempotent basis for
/// [`FiniteAlgebra::Split`], the power basis `1, t, …, t^(n-1)` for
/// [`FiniteAlgebra::Monogenic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteAlgebra {
    Split(usize),
    /// Ascending coefficients of a monic polynomial, leading one included.
    Monogenic(Vec<Rational>),
}

impl FiniteAlgebra {
    pub fn monogenic(f: Vec<Rational>) -> Result<Self> {
        if f.len() < 2 || !f.last().is_some_and(One::is_one) {
            return Err(Error::InvalidInput(
                "expected a monic polynomial of positive degree".into(),
            ));
        }
        Ok(FiniteAlgebra::Monogenic(f))
    }

    pub fn dim(&self) -> usize {
        match self {
            FiniteAlgebra::Split(n) => *n,
            FiniteAlgebra::Monogenic(f) => f.len() - 1,
        }
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim()]
    }

    pub fn one(&self) -> Vec<Rational> {
        match self {
            FiniteAlgebra::Split(n) => vec![Rational::one(); *n],
            FiniteAlgebra::Monogenic(_) => self.basis_vector(0),
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = self.zero();
        v[i] = Rational::one();
        v
    }

    pub fn add(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn scale(&self, c: &Rational, a: &[Rational]) -> Vec<Rational> {
        a.iter().map(|x| c * x).collect()
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        match self {
            FiniteAlgebra::Split(_) => a.iter().zip(b).map(|(x, y)| x * y).collect(),
            FiniteAlgebra::Monogenic(f) => {
                let n = self.dim();
                let mut prod = vec![Rational::zero(); 2 * n - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        prod[i + j] += x * y;
                    }
                }
                for d in (n..prod.len()).rev() {
                    let c = std::mem::take(&mut prod[d]);
                    if c.is_zero() {
                        continue;
                    }
                    for (k, fk) in f[..n].iter().enumerate() {
                        prod[d - n + k] -= &c * fk;
                    }
                }
                prod.truncate(n);
                prod
            }
        }
    }

    pub fn pow(&self, a: &[Rational], e: u32) -> Vec<Rational> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Matrix of multiplication by `a`.
    pub fn mult_matrix(&self, a: &[Rational]) -> QMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim())
            .map(|j| self.mul(a, &self.basis_vector(j)))
            .collect();
        QMatrix::from_columns(&cols)
    }

    pub fn trace(&self, a: &[Rational]) -> Rational {
        let m = self.mult_matrix(a);
        (0..self.dim()).map(|i| m[(i, i)].clone()).sum()
    }

    pub fn is_unit(&self, a: &[Rational]) -> bool {
        self.mult_matrix(a)
            .determinant()
            .is_ok_and(|d| !d.is_zero())
    }

    /// Trace form `Tr(b_i b_j)` on the given elements.
    pub fn gram(&self, basis: &[Vec<Rational>]) -> QMatrix {
        QMatrix::from_fn(basis.len(), basis.len(), |i, j| {
            self.trace(&self.mul(&basis[i], &basis[j]))
        })
    }

    /// Coordinates of `x` in a basis of the algebra.
    pub fn coordinates(&self, basis: &[Vec<Rational>], x: &[Rational]) -> Result<Vec<Rational>> {
        let b = QMatrix::from_columns(basis);
        let rhs = QMatrix::from_columns(&[x.to_vec()]);
        b.solve(&rhs)?
            .map(|s| s.column(0))
            .ok_or_else(|| Error::Inconsistent("element outside the span of the basis".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn monogenic_reduction() {
        // t^3 = t + 1 in Q[t]/(t^3 - t - 1)
        let a = FiniteAlgebra::monogenic(ints(&[-1, -1, 0, 1])).unwrap();
        let t = a.basis_vector(1);
        assert_eq!(a.pow(&t, 3), ints(&[1, 1, 0]));
        assert_eq!(a.pow(&t, 4), ints(&[0, 1, 1]));
        assert_eq!(a.trace(&a.one()), q(3, 1));
        assert_eq!(a.trace(&t), q(0, 1));
        assert_eq!(a.trace(&a.pow(&t, 2)), q(2, 1));
        assert!(a.is_unit(&t));
    }

    #[test]
    fn split_algebra_basics() {
        let a = FiniteAlgebra::Split(3);
        let x = ints(&[1, 2, 0]);
        assert_eq!(a.mul(&x, &x), ints(&[1, 4, 0]));
        assert_eq!(a.trace(&x), q(3, 1));
        assert!(!a.is_unit(&x));
        assert_eq!(a.gram(&[a.one()])[(0, 0)], q(3, 1));
        let basis = vec![ints(&[1, 1, 1]), ints(&[1, 0, 0]), ints(&[0, 1, 0])];
        assert_eq!(
            a.coordinates(&basis, &ints(&[2, 3, 4])).unwrap(),
            ints(&[4, -2, -1])
        );
    }
}
