//! Koszul complexes of the sub-ideals `I^J = (x_i(x_j - x_k) : i ∉ {j,k})`
//! of the standard configuration, their comparison maps into the minimal
//! resolution, and the symbols `(i_1 ∧ … ∧ i_m) ⊗ (j,k)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::brackets::{complement, proportionality, sign_q, IndexWord};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::{MonomialBasis, Polynomial};
use crate::polymatrix::PolyMatrix;
use crate::rational::Rational;
use crate::report::Report;
use crate::resolution::GradedFreeResolution;

/// Sorted `m`-subsets of `labels`, in lexicographic order.
fn subsets(labels: &[usize], m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (p, &first) in labels.iter().enumerate() {
        for mut rest in subsets(&labels[p + 1..], m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The Koszul complex `K^J` for `J = (j,k)`, with wedge bases in
/// increasing index order.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    n: usize,
    j: usize,
    k: usize,
    labels: Vec<usize>,
    bases: Vec<Vec<Vec<usize>>>,
    diffs: Vec<PolyMatrix>,
}

impl KoszulComplex {
    pub fn new(n: usize, j: usize, k: usize) -> Result<Self> {
        if n < 5 {
            return Err(Error::InvalidInput(format!(
                "Koszul comparison needs n >= 5, got {n}"
            )));
        }
        let nv = n - 1;
        if j == k {
            return Err(Error::InvalidInput("J = (j,k) needs j != k".into()));
        }
        if !(1..=nv).contains(&j) || !(1..=nv).contains(&k) {
            return Err(Error::IndexOutOfRange(format!(
                "J = ({j},{k}) outside 1..={nv}"
            )));
        }
        let labels = complement(nv, &[j, k]);
        let bases: Vec<Vec<Vec<usize>>> = (0..=labels.len()).map(|m| subsets(&labels, m)).collect();
        let x = |i: usize| Polynomial::var(nv, i - 1);
        let mut diffs = Vec::with_capacity(labels.len());
        let d1: Vec<Polynomial> = labels.iter().map(|&i| x(i).mul(&x(j).sub(&x(k)))).collect();
        diffs.push(PolyMatrix::row_vector(nv, d1)?);
        for m in 2..=labels.len() {
            let target = &bases[m - 1];
            let mut d = PolyMatrix::zeros(target.len(), bases[m].len(), nv);
            for (col, wedge) in bases[m].iter().enumerate() {
                for (l, &i) in wedge.iter().enumerate() {
                    let mut face = wedge.clone();
                    face.remove(l);
                    let row = target
                        .binary_search(&face)
                        .expect("faces are basis elements");
                    // (-1)^ℓ with ℓ 1-based
                    let term = if l % 2 == 0 { x(i).neg() } else { x(i) };
                    d.set(row, col, term);
                }
            }
            diffs.push(d);
        }
        Ok(KoszulComplex {
            n,
            j,
            k,
            labels,
            bases,
            diffs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.j, self.k)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn length(&self) -> usize {
        self.labels.len()
    }

    /// Sorted wedges spanning `∧^m E^J`.
    pub fn basis(&self, m: usize) -> &[Vec<usize>] {
        &self.bases[m]
    }

    /// `d_m`, for `1 <= m <= length`.
    pub fn d(&self, m: usize) -> &PolyMatrix {
        &self.diffs[m - 1]
    }

    /// Position of the sorted wedge and the sign of the sorting permutation.
    pub fn locate(&self, wedge: &[usize]) -> Result<(usize, i32)> {
        if wedge.iter().any(|i| *i == self.j || *i == self.k) {
            return Err(Error::InvalidInput(format!(
                "wedge {wedge:?} meets J = ({},{})",
                self.j, self.k
            )));
        }
        let sign = IndexWord::new(wedge.to_vec())
            .sign()
            .ok_or_else(|| Error::InvalidInput(format!("wedge {wedge:?} repeats an index")))?;
        let mut sorted = wedge.to_vec();
        sorted.sort_unstable();
        let basis = self
            .bases
            .get(wedge.len())
            .ok_or_else(|| Error::IndexOutOfRange(format!("wedge of length {}", wedge.len())))?;
        let pos = basis
            .binary_search(&sorted)
            .map_err(|_| Error::IndexOutOfRange(format!("wedge {wedge:?} outside the labels")))?;
        Ok((pos, sign))
    }
}

/// The comparison map `K^J → F`, with constant components `ψ_m`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: KoszulComplex,
    psi: Vec<QMatrix>,
}

impl ChainMap {
    pub fn source(&self) -> &KoszulComplex {
        &self.source
    }

    /// `ψ_m`, for `1 <= m <= length`.
    pub fn psi(&self, m: usize) -> &QMatrix {
        &self.psi[m - 1]
    }

    /// `(i_1 ∧ … ∧ i_m) ⊗ (j,k)` in `F_m` coordinates.
    pub fn symbol(&self, wedge: &[usize]) -> Result<Vec<Rational>> {
        if wedge.is_empty() {
            return Err(Error::InvalidInput("symbols need a nonempty wedge".into()));
        }
        let (pos, sign) = self.source.locate(wedge)?;
        let s = sign_q(sign);
        Ok(self
            .psi(wedge.len())
            .column(pos)
            .iter()
            .map(|x| x * &s)
            .collect())
    }
}

/// Coefficients of the entries of `m`, one row per (entry row, monomial),
/// one column per column of `m`.
fn coefficient_system(m: &PolyMatrix, d: u32) -> Result<QMatrix> {
    let basis = MonomialBasis::of_degree(m.nvars(), d);
    let mut rows = vec![Vec::with_capacity(m.cols()); m.rows() * basis.len()];
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            let v = m.get(r, c).coefficient_vector(&basis).ok_or_else(|| {
                Error::DimensionMismatch(format!(
                    "entry ({r},{c}) is not homogeneous of degree {d}"
                ))
            })?;
            for (t, x) in v.into_iter().enumerate() {
                rows[r * basis.len() + t].push(x);
            }
        }
    }
    Ok(QMatrix::from_rows(rows))
}

/// Solves `φ_m ψ_m = ψ_{m-1} d_m` degree by degree, requiring a unique
/// solution at each step.
pub fn lift_chain_map(kc: &KoszulComplex, f: &GradedFreeResolution) -> Result<ChainMap> {
    if f.n() != kc.n() {
        return Err(Error::DimensionMismatch(format!(
            "complex for n = {} against resolution for n = {}",
            kc.n(),
            f.n()
        )));
    }
    let nv = f.nvars();
    let mut psi: Vec<QMatrix> = Vec::with_capacity(kc.length());
    for m in 1..=kc.length() {
        let prev = psi.last().cloned().unwrap_or_else(|| QMatrix::identity(1));
        let rhs = PolyMatrix::from_constant(&prev, nv).mul(kc.d(m))?;
        let deg = f.twists()[m] - f.twists()[m - 1];
        let lhs = coefficient_system(f.map(m), deg)?;
        let rhs = coefficient_system(&rhs, deg)?;
        if lhs.rank() != lhs.cols() {
            return Err(Error::Inconsistent(format!(
                "lift in homological degree {m} is not unique"
            )));
        }
        let sol = lhs.solve(&rhs)?.ok_or_else(|| {
            Error::NoSolution(format!(
                "the Koszul complex for J = {:?} does not map to F in degree {m}",
                kc.pair()
            ))
        })?;
        psi.push(sol);
    }
    for m in 1..=kc.length() {
        let prev = if m == 1 {
            QMatrix::identity(1)
        } else {
            psi[m - 2].clone()
        };
        let left = f.map(m).mul_constant(&psi[m - 1])?;
        let right = PolyMatrix::from_constant(&prev, nv).mul(kc.d(m))?;
        if left != right {
            return Err(Error::Inconsistent(format!(
                "chain map square {m} does not commute"
            )));
        }
    }
    Ok(ChainMap {
        source: kc.clone(),
        psi,
    })
}

/// Comparison maps for every ordered pair `J = (j,k)`.
#[derive(Clone, Debug)]
pub struct KoszulFamily {
    n: usize,
    maps: BTreeMap<(usize, usize), ChainMap>,
}

impl KoszulFamily {
    pub fn new(f: &GradedFreeResolution) -> Result<Self> {
        let n = f.n();
        let nv = n - 1;
        let mut maps = BTreeMap::new();
        for j in 1..=nv {
            for k in (1..=nv).filter(|&k| k != j) {
                maps.insert((j, k), lift_chain_map(&KoszulComplex::new(n, j, k)?, f)?);
            }
        }
        Ok(KoszulFamily { n, maps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chain_map(&self, j: usize, k: usize) -> Result<&ChainMap> {
        self.maps
            .get(&(j, k))
            .ok_or_else(|| Error::IndexOutOfRange(format!("no comparison map for J = ({j},{k})")))
    }

    pub fn symbol(&self, wedge: &[usize], j: usize, k: usize) -> Result<Vec<Rational>> {
        self.chain_map(j, k)?.symbol(wedge)
    }

    /// The wedge `i_1, …, i_{n-3}` with `i_1, …, i_{n-3}, j, k` an even
    /// permutation of `1, …, n-1`.
    pub fn even_wedge(&self, j: usize, k: usize) -> Vec<usize> {
        let mut w = complement(self.n - 1, &[j, k]);
        let full = IndexWord::concat(&[&w, &[j, k]]);
        if full.sign() == Some(-1) {
            w.swap(0, 1);
        }
        w
    }
}

/// `φ_m` applied to a constant vector of `F_m`.
fn apply(phi: &PolyMatrix, v: &[Rational]) -> Result<Vec<Polynomial>> {
    let col = QMatrix::from_columns(&[v.to_vec()]);
    Ok(phi.mul_constant(&col)?.column(0))
}

/// The three relation families for symbols, and the differential identity,
/// over every admissible wedge and pair.
pub fn symbol_relations_check(fam: &KoszulFamily, f: &GradedFreeResolution) -> Result<Report> {
    let nv = fam.n() - 1;
    let mut r = Report::new();
    let mut antisym = Ok(());
    let mut cyclic = Ok(());
    let mut nonzero = Ok(());
    let mut differential = Ok(());
    let add = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    };
    for m in 1..=fam.n() - 3 {
        for j in 1..=nv {
            for k in (1..=nv).filter(|&k| k != j) {
                let cm = fam.chain_map(j, k)?;
                for wedge in cm.source().basis(m).to_vec() {
                    let s = fam.symbol(&wedge, j, k)?;
                    if s.iter().all(Zero::is_zero) && nonzero.is_ok() {
                        nonzero = Err(format!("{wedge:?} ⊗ ({j},{k}) vanishes"));
                    }
                    let t = fam.symbol(&wedge, k, j)?;
                    if add(&s, &t).iter().any(|x| !x.is_zero()) && antisym.is_ok() {
                        antisym = Err(format!("{wedge:?} ⊗ ({j},{k})"));
                    }
                    for l in (1..=nv).filter(|l| *l != j && *l != k && !wedge.contains(l)) {
                        let sum = add(
                            &add(&s, &fam.symbol(&wedge, k, l)?),
                            &fam.symbol(&wedge, l, j)?,
                        );
                        if sum.iter().any(|x| !x.is_zero()) && cyclic.is_ok() {
                            cyclic = Err(format!("{wedge:?} with ({j},{k},{l})"));
                        }
                    }
                    // φ_m(symbol) = Σ_ℓ (-1)^ℓ x_{i_ℓ} · (face) ⊗ (j,k)
                    let image = apply(f.map(m), &s)?;
                    let mut expect = vec![Polynomial::zero(nv); image.len()];
                    if m == 1 {
                        let x = |i: usize| Polynomial::var(nv, i - 1);
                        expect = vec![x(wedge[0]).mul(&x(j).sub(&x(k)))];
                    } else {
                        for (l, &i) in wedge.iter().enumerate() {
                            let mut face = wedge.clone();
                            face.remove(l);
                            let sign = if l % 2 == 0 {
                                -Rational::from(1)
                            } else {
                                Rational::from(1)
                            };
                            let xi = Polynomial::var(nv, i - 1).scale(&sign);
                            for (e, c) in expect.iter_mut().zip(fam.symbol(&face, j, k)?) {
                                *e = e.add(&xi.scale(&c));
                            }
                        }
                    }
                    if image != expect && differential.is_ok() {
                        differential = Err(format!("{wedge:?} ⊗ ({j},{k})"));
                    }
                }
            }
        }
    }
    r.check("antisymmetry", antisym);
    r.check("three-term", cyclic);
    r.check("nonzero", nonzero);
    r.check("differential", differential);
    Ok(r)
}

/// The syzygy `t = Σ_{j<k} x_j x_k (i_1 ∧ … ∧ i_{n-3}) ⊗ (j,k)`.
#[derive(Clone, Debug)]
pub struct FinalSyzygy {
    pub t: Vec<Polynomial>,
    /// `μ` with `t = μ φ_{n-2}(1)`.
    pub ratio: Rational,
    pub report: Report,
}

pub fn final_syzygy(fam: &KoszulFamily, f: &GradedFreeResolution) -> Result<FinalSyzygy> {
    let n = fam.n();
    let nv = n - 1;
    let top = n - 3;
    let x = |i: usize| Polynomial::var(nv, i - 1);
    let mut t = vec![Polynomial::zero(nv); f.ranks()[top]];
    for j in 1..=nv {
        for k in j + 1..=nv {
            let s = fam.symbol(&fam.even_wedge(j, k), j, k)?;
            let xjxk = x(j).mul(&x(k));
            for (e, c) in t.iter_mut().zip(&s) {
                *e = e.add(&xjxk.scale(c));
            }
        }
    }
    let mut report = Report::new();
    let image = f.map(top).mul(&PolyMatrix::column_vector(nv, t.clone())?)?;
    report.check(
        "kernel",
        if image.is_zero() {
            Ok(())
        } else {
            Err("φ_{n-3}(t) != 0".into())
        },
    );
    let last = f.map(n - 2).column(0);
    let pivot = last
        .iter()
        .position(|p| !p.is_zero())
        .ok_or_else(|| Error::Inconsistent("φ_{n-2} is zero".into()))?;
    let ratio = proportionality(&t[pivot], &last[pivot])
        .filter(|mu| t.iter().zip(&last).all(|(a, b)| b.scale(mu) == *a) && !mu.is_zero())
        .ok_or_else(|| Error::Inconsistent("t is not proportional to φ_{n-2}(1)".into()))?;
    report.pass("proportional");
    // ∂φ_{n-2}/∂x_k (1) = Σ_{j≠k} x_j (i…) ⊗ (j,k) once φ_{n-2}(1) = t
    let mut expansion = Ok(());
    for k in 1..=nv {
        let lhs: Vec<Polynomial> = t
            .iter()
            .map(|p| p.derivative(k - 1))
            .collect::<Result<_>>()?;
        let mut rhs = vec![Polynomial::zero(nv); t.len()];
        for j in (1..=nv).filter(|&j| j != k) {
            let s = fam.symbol(&fam.even_wedge(j, k), j, k)?;
            for (e, c) in rhs.iter_mut().zip(&s) {
                *e = e.add(&x(j).scale(c));
            }
        }
        if lhs != rhs && expansion.is_ok() {
            expansion = Err(format!("derivative in x_{k}"));
        }
    }
    report.check("derivative expansion", expansion);
    Ok(FinalSyzygy { t, ratio, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Configuration;
    use crate::rational::q;
    use crate::resolution::build_resolution;

    #[test]
    fn koszul_differentials() {
        let kc = KoszulComplex::new(5, 1, 2).unwrap();
        let x = |i: usize| Polynomial::var(4, i - 1);
        let d1 = kc.d(1);
        assert_eq!(
            d1.row(0),
            vec![x(3).mul(&x(1).sub(&x(2))), x(4).mul(&x(1).sub(&x(2)))]
        );
        assert_eq!(kc.d(2).column(0), vec![x(4), x(3).neg()]);
        assert!(kc.d(1).mul(kc.d(2)).unwrap().is_zero());
        let big = KoszulComplex::new(7, 2, 5).unwrap();
        for m in 1..big.length() {
            assert!(big.d(m).mul(big.d(m + 1)).unwrap().is_zero());
        }
        assert!(KoszulComplex::new(5, 1, 1).is_err());
        assert!(KoszulComplex::new(5, 1, 5).is_err());
        assert!(KoszulComplex::new(4, 1, 2).is_err());
    }

    #[test]
    fn lifts_and_symbols_for_five_points() {
        let f = build_resolution(&Configuration::standard(5).unwrap()).unwrap();
        let fam = KoszulFamily::new(&f).unwrap();
        let r = symbol_relations_check(&fam, &f).unwrap();
        assert!(r.passed(), "{r}");
        let syz = final_syzygy(&fam, &f).unwrap();
        assert!(syz.report.passed(), "{}", syz.report);
        // ∂φ_1/∂x_i of i ⊗ (j,k) is x_j - x_k
        let s = fam.symbol(&[3], 1, 2).unwrap();
        let v = apply(&f.map(1).partial_derivative(2).unwrap(), &s).unwrap();
        assert_eq!(v[0], Polynomial::var(4, 0).sub(&Polynomial::var(4, 1)));
        assert!(fam.symbol(&[1], 1, 2).is_err());
        assert!(!syz.ratio.is_zero());
        assert_eq!(fam.even_wedge(1, 2), vec![3, 4]);
        assert_eq!(fam.even_wedge(1, 3), vec![4, 2]);
    }

    #[test]
    fn lift_fails_without_the_relations() {
        let pts = vec![
            vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(0, 1), q(1, 1)],
            vec![q(1, 1), q(2, 1), q(3, 1), q(5, 1)],
        ];
        let f = build_resolution(&Configuration::from_points(pts).unwrap()).unwrap();
        let err = lift_chain_map(&KoszulComplex::new(5, 1, 2).unwrap(), &f).unwrap_err();
        assert!(matches!(err, Error::NoSolution(_)), "{err:?}");
    }
}
