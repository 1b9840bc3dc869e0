//! Ranks 3, 4 and 5: binary cubics, pairs of ternary quadratic forms and
//! alternating 5×5 matrices of linear forms.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::brackets::{Brackets, IndexWord};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::polymatrix::PolyMatrix;
use crate::rational::Rational;
use crate::report::Report;
use crate::resolution::{validate, GradedFreeResolution};
use crate::table::{
    structure_constants, verify_table, BasisNote, MultiplicationTable, Normalization, Scale,
};

/// `a x^3 + b x^2 y + c x y^2 + d y^3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryCubic {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl BinaryCubic {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        BinaryCubic { a, b, c, d }
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        let [a, b, c, d] = v.map(Rational::from);
        BinaryCubic { a, b, c, d }
    }

    pub fn discriminant(&self) -> Rational {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let k = |v: i64| Rational::from(v);
        k(18) * a * b * c * d - k(4) * b.pow(3) * d + b * b * c * c
            - k(4) * a * c.pow(3)
            - k(27) * a * a * d * d
    }

    pub fn polynomial(&self) -> Polynomial {
        let coeffs = [&self.a, &self.b, &self.c, &self.d];
        Polynomial::from_terms(
            2,
            (0..4u32).map(|e| (Monomial::new(vec![3 - e, e]), coeffs[e as usize].clone())),
        )
    }

    /// The length-one resolution `0 → R(-3) → R` given by the form.
    pub fn resolution(&self) -> Result<GradedFreeResolution> {
        GradedFreeResolution::from_maps(
            3,
            vec![PolyMatrix::row_vector(2, vec![self.polynomial()])?],
        )
    }
}

/// The ring with basis `1, ω, θ` and
/// `ω² = -ac - bω + aθ`, `ωθ = -ad`, `θ² = -bd - dω + cθ`.
pub fn ldf_table(f: &BinaryCubic) -> MultiplicationTable {
    let (a, b, c, d) = (&f.a, &f.b, &f.c, &f.d);
    let c0 = [[-(a * c), -(a * d)], [-(a * d), -(b * d)]];
    let ck = [
        [
            [-b.clone(), Rational::zero()],
            [Rational::zero(), -d.clone()],
        ],
        [[a.clone(), Rational::zero()], [Rational::zero(), c.clone()]],
    ];
    MultiplicationTable::from_fn(
        3,
        |i, j| c0[i - 1][j - 1].clone(),
        |k, i, j| ck[k - 1][i - 1][j - 1].clone(),
    )
    .expect("3x3 symmetric data")
    .with_note(BasisNote::Cyclic, None)
}

/// Compares the `(1/6)`-Hessian constants of Ω for the cubic with the
/// Levi-Delone-Faddeev ring.
pub fn ldf_equivalence_check(f: &BinaryCubic) -> Result<Report> {
    if f.discriminant().is_zero() {
        return Err(Error::InvalidInput(
            "binary cubic has a repeated root".into(),
        ));
    }
    let res = f.resolution()?;
    let om = Brackets::new(&res)?.omega()?;
    let t = structure_constants(&om, Scale::Bhargava)?;
    let two = Rational::from(2);
    let mut r = Report::new();
    let mut eq = |name: &str, lhs: Rational, rhs: Rational| {
        r.check(
            name,
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!("{lhs} != {rhs}"))
            },
        );
    };
    eq("c^2_11 = a", t.c(2, 1, 1).clone(), f.a.clone());
    eq(
        "c^1_11 - 2c^2_12 = -b",
        t.c(1, 1, 1) - &two * t.c(2, 1, 2),
        -f.b.clone(),
    );
    eq(
        "c^2_22 - 2c^1_12 = c",
        t.c(2, 2, 2) - &two * t.c(1, 1, 2),
        f.c.clone(),
    );
    eq("c^1_22 = -d", t.c(1, 2, 2).clone(), -f.d.clone());
    let ldf = ldf_table(f);
    r.extend("ldf ", verify_table(&ldf));
    let (normalized, _) = t.normalize(Normalization::Cyclic)?;
    r.check(
        "normalized table equals ldf",
        if normalized.shear_invariants() == ldf.shear_invariants()
            && (1..3).all(|i| (1..3).all(|j| normalized.c0(i, j) == ldf.c0(i, j)))
            && (1..3)
                .all(|k| (1..3).all(|i| (1..3).all(|j| normalized.c(k, i, j) == ldf.c(k, i, j))))
        {
            Ok(())
        } else {
            Err("constants differ".into())
        },
    );
    let disc = ldf.discriminant();
    r.check(
        "discriminant",
        if disc == f.discriminant() {
            Ok(())
        } else {
            Err(format!("{disc} != {}", f.discriminant()))
        },
    );
    Ok(r)
}

/// Two ternary quadratic forms `A, B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryQuadricPair {
    pub a: Polynomial,
    pub b: Polynomial,
}

impl TernaryQuadricPair {
    pub fn new(a: Polynomial, b: Polynomial) -> Result<Self> {
        for p in [&a, &b] {
            if p.nvars() != 3 || !p.is_homogeneous_of_degree(2) {
                return Err(Error::InvalidInput(
                    "expected ternary quadratic forms".into(),
                ));
            }
        }
        Ok(TernaryQuadricPair { a, b })
    }

    /// The complex `R(-4) --(B,-A)^T--> R(-2)^2 --(A,B)--> R`.
    pub fn resolution(&self) -> Result<GradedFreeResolution> {
        let phi1 = PolyMatrix::row_vector(3, vec![self.a.clone(), self.b.clone()])?;
        let phi2 = PolyMatrix::column_vector(3, vec![self.b.clone(), self.a.neg()])?;
        GradedFreeResolution::from_maps(4, vec![phi1, phi2])
    }
}

fn second(p: &Polynomial, i: usize, j: usize) -> Result<Rational> {
    Ok(p.derivative(i - 1)?.derivative(j - 1)?.constant_term())
}

/// The n = 4 bracket/brace identities for each even permutation `(i,j,k)`
/// of `(1,2,3)`, after validating the resolution.
pub fn quartic_identities_check(f: &GradedFreeResolution) -> Result<Report> {
    if f.n() != 4 {
        return Err(Error::InvalidInput(format!(
            "expected n = 4, got {}",
            f.n()
        )));
    }
    let mut r = Report::new();
    let v = validate(f);
    let valid = v.passed();
    r.extend("validate.", v);
    if !valid {
        return Ok(r);
    }
    let br = Brackets::new(f)?;
    let om = br.omega()?;
    let b = |i: usize, j: usize| br.bracket(&IndexWord::new(vec![i, j]));
    let brace = |w: [usize; 4]| br.brace(&IndexWord::new(w.to_vec()));
    let four = Rational::from(4);
    let mut fails: [Option<String>; 5] = Default::default();
    for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let tag = format!("(i,j,k) = ({i},{j},{k})");
        let mut note = |slot: usize, ok: bool| {
            if !ok && fails[slot].is_none() {
                fails[slot] = Some(tag.clone());
            }
        };
        note(0, *om.form(k) == b(i, j)?.scale(&Rational::from(-2)));
        note(1, second(&b(j, i)?, i, j)? == &four * brace([j, j, i, i])?);
        note(2, second(&b(i, k)?, i, i)? == &four * brace([i, i, i, k])?);
        note(
            3,
            second(&b(i, k)?, i, j)? + second(&b(i, j)?, i, k)? == &four * brace([i, i, j, k])?,
        );
        let lhs = second(&b(k, j)?, i, i)? + second(&b(k, i)?, i, j)? + second(&b(i, j)?, i, k)?;
        note(4, lhs == &four * brace([i, k, i, j])?);
    }
    for (slot, name) in ["omega", "jjii", "iiik", "iijk", "ikij"].iter().enumerate() {
        r.check(*name, fails[slot].take().map_or(Ok(()), Err));
    }
    let mut bracket_anti = Ok(());
    let mut brace_anti = Ok(());
    for i in 1..=3 {
        for j in 1..=3 {
            if b(i, j)? != b(j, i)?.neg() && bracket_anti.is_ok() {
                bracket_anti = Err(format!("[{i},{j}]"));
            }
            for k in 1..=3 {
                for l in 1..=3 {
                    if brace([i, j, k, l])? != -brace([k, l, i, j])? && brace_anti.is_ok() {
                        brace_anti = Err(format!("{{{i}{j}{k}{l}}}"));
                    }
                }
            }
        }
    }
    r.check("bracket antisymmetry", bracket_anti);
    r.check("brace antisymmetry", brace_anti);
    Ok(r)
}

/// Pfaffian of an alternating 4×4 block given by row/column labels.
fn pfaffian4(m: &PolyMatrix, idx: [usize; 4]) -> Polynomial {
    let e = |a: usize, b: usize| m.get(idx[a], idx[b]);
    e(0, 1)
        .mul(e(2, 3))
        .sub(&e(0, 2).mul(e(1, 3)))
        .add(&e(0, 3).mul(e(1, 2)))
}

/// Signed Pfaffians `P_i = (-1)^i Pf(Φ without row and column i)`, `i`
/// 1-based.
pub fn signed_pfaffians(phi: &PolyMatrix) -> Result<Vec<Polynomial>> {
    if phi.rows() != 5 || phi.cols() != 5 {
        return Err(Error::DimensionMismatch("expected a 5x5 matrix".into()));
    }
    if phi.transpose() != phi.neg() {
        return Err(Error::InvalidInput("matrix is not alternating".into()));
    }
    Ok((0..5)
        .map(|i| {
            let rest: Vec<usize> = (0..5).filter(|&r| r != i).collect();
            let pf = pfaffian4(phi, [rest[0], rest[1], rest[2], rest[3]]);
            if i % 2 == 0 {
                pf.neg()
            } else {
                pf
            }
        })
        .collect())
}

/// Assembles `(P, Φ, P^T)` from an alternating matrix of linear forms,
/// validates it and, when valid, runs the bracket and table pipeline.
pub fn pfaffian_shape_check(phi: &PolyMatrix) -> Result<(Report, Option<MultiplicationTable>)> {
    if phi.nvars() != 4 || !phi.is_homogeneous_of_degree(1) {
        return Err(Error::InvalidInput(
            "expected linear forms in 4 variables".into(),
        ));
    }
    let p = signed_pfaffians(phi)?;
    let mut r = Report::new();
    let row = PolyMatrix::row_vector(4, p.clone())?;
    r.check(
        "P Φ = 0",
        if row.mul(phi)?.is_zero() {
            Ok(())
        } else {
            Err("nonzero product".into())
        },
    );
    let f = GradedFreeResolution::from_maps(
        5,
        vec![row, phi.clone(), PolyMatrix::column_vector(4, p)?],
    )?;
    let v = validate(&f);
    let valid = v.passed();
    r.extend("validate.", v);
    if !valid {
        return Ok((r, None));
    }
    let table = structure_constants(&Brackets::new(&f)?.omega()?, Scale::Hessian)?;
    r.extend("table.", verify_table(&table));
    Ok((r, Some(table)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Configuration;
    use crate::random;
    use crate::rational::q;
    use crate::resolution::build_resolution;

    #[test]
    fn ldf_examples() {
        let t = ldf_table(&BinaryCubic::from_ints([1, 0, 0, -1]));
        assert_eq!(t.product(1, 1), vec![q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(t.product(1, 2), vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(t.product(2, 2), vec![q(0, 1), q(1, 1), q(0, 1)]);
        let f = BinaryCubic::from_ints([1, 0, -1, -1]);
        let t = ldf_table(&f);
        assert_eq!(t.product(1, 1), vec![q(1, 1), q(0, 1), q(1, 1)]);
        assert_eq!(t.product(1, 2), vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(t.product(2, 2), vec![q(0, 1), q(1, 1), q(-1, 1)]);
        assert_eq!(f.discriminant(), q(-23, 1));
        assert_eq!(t.discriminant(), q(-23, 1));
        // degenerate forms still give rings
        assert!(verify_table(&ldf_table(&BinaryCubic::from_ints([0, 0, 0, 0]))).passed());
        assert!(verify_table(&ldf_table(&BinaryCubic::from_ints([1, 3, 3, 1]))).passed());
    }

    #[test]
    fn ldf_equivalence() {
        for v in [[1, 0, -1, -1], [1, 1, 1, 1], [2, -3, 5, 7]] {
            let r = ldf_equivalence_check(&BinaryCubic::from_ints(v)).unwrap();
            assert!(r.passed(), "{v:?}\n{r}");
        }
        assert!(ldf_equivalence_check(&BinaryCubic::from_ints([1, 2, 1, 0])).is_err());
    }

    #[test]
    fn quartic_identities() {
        let x = |i: usize| Polynomial::var(3, i - 1);
        let pair = TernaryQuadricPair::new(x(1).mul(&x(2).sub(&x(3))), x(2).mul(&x(1).sub(&x(3))))
            .unwrap();
        let r = quartic_identities_check(&pair.resolution().unwrap()).unwrap();
        assert!(r.passed(), "{r}");
        let f = build_resolution(&random::configuration(&mut random::rng(3), 4)).unwrap();
        assert!(quartic_identities_check(&f).unwrap().passed());
        let mut bad = pair.resolution().unwrap();
        let mut phi2 = bad.map(2).clone();
        phi2.set(0, 0, phi2.get(0, 0).neg());
        bad.replace_map(2, phi2);
        let r = quartic_identities_check(&bad).unwrap();
        assert!(!r.passed());
        assert!(r.get("omega").is_none());
        let _ = Configuration::standard(4);
    }

    #[test]
    fn pfaffians() {
        let mut g = random::rng(11);
        let phi = random::alternating_linear(&mut g);
        let p = signed_pfaffians(&phi).unwrap();
        let row = PolyMatrix::row_vector(4, p).unwrap();
        assert!(row.mul(&phi).unwrap().is_zero());
        let (r, table) = pfaffian_shape_check(&phi).unwrap();
        assert!(r.passed(), "{r}");
        assert!(table.is_some());
        let mut degenerate = phi.clone();
        for j in 0..5 {
            degenerate.set(0, j, Polynomial::zero(4));
            degenerate.set(j, 0, Polynomial::zero(4));
        }
        let (r, table) = pfaffian_shape_check(&degenerate).unwrap();
        assert!(!r.passed() && table.is_none());
        assert!(
            signed_pfaffians(&PolyMatrix::zeros(5, 5, 4).add(&row_of_ones()).unwrap()).is_err()
        );
    }

    fn row_of_ones() -> PolyMatrix {
        PolyMatrix::from_fn(5, 5, 4, |_, _| Polynomial::var(4, 0))
    }
}
