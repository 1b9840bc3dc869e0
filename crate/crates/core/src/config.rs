//! Point configurations in P^(n-2), given either explicitly or by an étale
//! algebra Q[t]/(f).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::MonomialBasis;
use crate::rational::Rational;
use crate::table::{BasisNote, MultiplicationTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Homogeneous coordinates, first nonzero coordinate normalized to 1.
    Points(Vec<Vec<Rational>>),
    /// Monic squarefree integer polynomial (ascending coefficients) and the
    /// trace-zero basis `t^j - Tr(t^j)/n` in power-basis coordinates.
    Etale {
        f: Vec<Rational>,
        alphas: Vec<Vec<Rational>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    n: usize,
    kind: Kind,
}

impl Configuration {
    /// `n` points in P^(n-2), each given by `n-1` coordinates.
    pub fn from_points(points: Vec<Vec<Rational>>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "need at least 3 points, got {n}"
            )));
        }
        let mut normalized = Vec::with_capacity(n);
        for (idx, p) in points.into_iter().enumerate() {
            if p.len() != n - 1 {
                return Err(Error::DimensionMismatch(format!(
                    "point {idx} has {} coordinates, expected {}",
                    p.len(),
                    n - 1
                )));
            }
            normalized.push(
                normalize_point(p)
                    .ok_or_else(|| Error::InvalidInput(format!("point {idx} is zero")))?,
            );
        }
        Ok(Configuration {
            n,
            kind: Kind::Points(normalized),
        })
    }

    /// The coordinate points and the all-ones point.
    pub fn standard(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "n must be at least 3, got {n}"
            )));
        }
        let mut pts: Vec<Vec<Rational>> = (0..n - 1)
            .map(|i| {
                (0..n - 1)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        pts.push(vec![Rational::one(); n - 1]);
        Configuration::from_points(pts)
    }

    /// Configuration attached to Q[t]/(f); `f` ascending, monic, integral.
    pub fn from_etale(f: Vec<Rational>) -> Result<Self> {
        if f.iter().any(|c| !c.is_integer()) {
            return Err(Error::InvalidInput("coefficients must be integers".into()));
        }
        let n = f.len().saturating_sub(1);
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "degree must be at least 3, got {n}"
            )));
        }
        if !f[n].is_one() {
            return Err(Error::InvalidInput("polynomial must be monic".into()));
        }
        if !is_squarefree(&f) {
            return Err(Error::NotSquarefree);
        }
        let sums = power_sums(&f, n - 1);
        let nq = Rational::from(n as i64);
        let alphas = (1..n)
            .map(|j| {
                let mut v = vec![Rational::zero(); n];
                v[j] = Rational::one();
                v[0] = -(&sums[j] / &nq);
                v
            })
            .collect();
        Ok(Configuration {
            n,
            kind: Kind::Etale { f, alphas },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn points(&self) -> Option<&[Vec<Rational>]> {
        match &self.kind {
            Kind::Points(p) => Some(p),
            Kind::Etale { .. } => None,
        }
    }

    pub fn algebra(&self) -> FiniteAlgebra {
        match &self.kind {
            Kind::Points(_) => FiniteAlgebra::Split(self.n),
            Kind::Etale { f, .. } => FiniteAlgebra::Monogenic(f.clone()),
        }
    }

    /// The coordinate functions `x_1, …, x_{n-1}` as elements of the
    /// algebra: values at the points, or the trace-zero basis.
    pub fn embedding(&self) -> Vec<Vec<Rational>> {
        match &self.kind {
            Kind::Points(pts) => (0..self.n - 1)
                .map(|i| pts.iter().map(|p| p[i].clone()).collect())
                .collect(),
            Kind::Etale { alphas, .. } => alphas.clone(),
        }
    }

    /// Columns: degree-`d` monomials (descending order) evaluated on the
    /// configuration. The nullspace is the degree-`d` part of the ideal.
    pub fn evaluation_matrix(&self, d: u32) -> QMatrix {
        let basis = MonomialBasis::of_degree(self.n - 1, d);
        let alg = self.algebra();
        let ell = self.embedding();
        let powers: Vec<Vec<Vec<Rational>>> = ell
            .iter()
            .map(|l| {
                let mut ps = vec![alg.one()];
                for e in 1..=d as usize {
                    let next = alg.mul(&ps[e - 1], l);
                    ps.push(next);
                }
                ps
            })
            .collect();
        let cols: Vec<Vec<Rational>> = basis
            .monomials()
            .iter()
            .map(|m| {
                m.exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(alg.one(), |acc, (i, &e)| {
                        alg.mul(&acc, &powers[i][e as usize])
                    })
            })
            .collect();
        QMatrix::from_columns(&cols)
    }

    /// First `(n-1)`-subset of points (0-based indices) lying in a
    /// hyperplane, or `None` in general position. Étale configurations are
    /// always in general position.
    pub fn general_position_witness(&self) -> Option<Vec<usize>> {
        let pts = self.points()?;
        (0..self.n).rev().find_map(|omit| {
            let subset: Vec<usize> = (0..self.n).filter(|&i| i != omit).collect();
            let cols: Vec<Vec<Rational>> = subset.iter().map(|&i| pts[i].clone()).collect();
            let det = QMatrix::from_columns(&cols).determinant().expect("square");
            det.is_zero().then_some(subset)
        })
    }

    pub fn is_in_general_position(&self) -> bool {
        self.general_position_witness().is_none()
    }

    pub fn check_general_position(&self) -> Result<()> {
        match self.general_position_witness() {
            None => Ok(()),
            Some(witness) => Err(Error::NotGeneralPosition { witness }),
        }
    }

    /// Image of the points under `p ↦ g p` (column vectors).
    pub fn map_points(&self, g: &QMatrix) -> Result<Configuration> {
        let pts = self
            .points()
            .ok_or_else(|| Error::InvalidInput("only point configurations can be mapped".into()))?;
        let mapped = pts
            .iter()
            .map(|p| g.mul_vec(p))
            .collect::<Result<Vec<_>>>()?;
        Configuration::from_points(mapped)
    }

    /// The algebra on the basis `1, α*_1, …, α*_{n-1}` trace-dual to
    /// `1, λx_1, …, λx_{n-1}`, where the unit `λ` makes every `λx_j` trace
    /// zero and is scaled so its first nonzero coordinate is 1.
    pub fn coordinate_ring_table(&self) -> Result<MultiplicationTable> {
        self.check_general_position()?;
        let alg = self.algebra();
        let n = self.n;
        let ell = self.embedding();
        let traces = QMatrix::from_fn(n - 1, n, |j, a| {
            alg.trace(&alg.mul(&alg.basis_vector(a), &ell[j]))
        });
        let kernel = traces.nullspace();
        if kernel.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "{}-dimensional space of trace-zero multipliers",
                kernel.len()
            )));
        }
        let lambda = normalize_point(kernel[0].clone()).expect("kernel vectors are nonzero");
        if !alg.is_unit(&lambda) {
            return Err(Error::Inconsistent(
                "trace-zero multiplier is not a unit".into(),
            ));
        }
        let mut basis = vec![alg.one()];
        basis.extend(ell.iter().map(|l| alg.mul(&lambda, l)));
        let gram_inv = alg.gram(&basis).inverse()?;
        let dual: Vec<Vec<Rational>> = (0..n)
            .map(|a| {
                (0..n).fold(alg.zero(), |acc, b| {
                    alg.add(&acc, &alg.scale(&gram_inv[(a, b)], &basis[b]))
                })
            })
            .collect();
        let mut new_basis = vec![alg.one()];
        new_basis.extend(dual[1..].iter().cloned());
        let mut coords = vec![vec![Vec::new(); n]; n];
        for i in 1..n {
            for j in i..n {
                let v = alg.coordinates(&new_basis, &alg.mul(&dual[i], &dual[j]))?;
                coords[i][j] = v.clone();
                coords[j][i] = v;
            }
        }
        Ok(MultiplicationTable::from_fn(
            n,
            |i, j| coords[i][j][0].clone(),
            |k, i, j| coords[i][j][k].clone(),
        )?
        .with_note(BasisNote::TraceZero, None))
    }

    /// Whether the two point lists agree as projective points, in order.
    pub fn same_points(&self, other: &Configuration) -> bool {
        self.points().is_some() && self.points() == other.points()
    }
}

fn normalize_point(p: Vec<Rational>) -> Option<Vec<Rational>> {
    let lead = p.iter().find(|x| !x.is_zero())?.clone();
    Some(p.iter().map(|x| x / &lead).collect())
}

/// `g` with `g p_i ∝ q_i` for every point, scaled so its first nonzero
/// entry (row-major) is 1.
pub fn transform_between(src: &Configuration, dst: &Configuration) -> Result<QMatrix> {
    if src.n() != dst.n() {
        return Err(Error::DimensionMismatch(format!(
            "n = {} vs {}",
            src.n(),
            dst.n()
        )));
    }
    let frame = |c: &Configuration| -> Result<QMatrix> {
        c.check_general_position()?;
        let pts = c
            .points()
            .ok_or_else(|| Error::InvalidInput("point configuration required".into()))?;
        let m = c.n() - 1;
        let basis = QMatrix::from_columns(&pts[..m]);
        let last = QMatrix::from_columns(&pts[m..]);
        let lambda = basis.solve(&last)?.ok_or(Error::Singular)?.column(0);
        let scaled: Vec<Vec<Rational>> = pts[..m]
            .iter()
            .zip(&lambda)
            .map(|(p, l)| p.iter().map(|x| x * l).collect())
            .collect();
        Ok(QMatrix::from_columns(&scaled))
    };
    let s = frame(src)?;
    let d = frame(dst)?;
    let g = d.mul(&s.inverse()?)?;
    let lead = (0..g.rows())
        .flat_map(|i| (0..g.cols()).map(move |j| (i, j)))
        .map(|ij| g[ij].clone())
        .find(|x| !x.is_zero())
        .ok_or(Error::Singular)?;
    Ok(g.scale(&lead.inv().expect("nonzero")))
}

/// `Tr(t^k)` for `k = 0..=kmax` by Newton's identities.
pub fn power_sums(f: &[Rational], kmax: usize) -> Vec<Rational> {
    let n = f.len() - 1;
    // f = t^n + e_{n-1} t^{n-1} + ... + e_0
    let coeff = |i: usize| f[i].clone();
    let mut p = vec![Rational::from(n as i64)];
    for k in 1..=kmax {
        let mut s = Rational::zero();
        for i in 1..k.min(n + 1) {
            s += coeff(n - i) * &p[k - i];
        }
        if k <= n {
            s += Rational::from(k as i64) * coeff(n - k);
        }
        p.push(-s);
    }
    p
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let c = r.last().expect("nonempty") / &lead;
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        r = trim(r);
    }
    r
}

/// Whether `gcd(f, f') = 1` over Q.
pub fn is_squarefree(f: &[Rational]) -> bool {
    let df: Vec<Rational> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from(i as i64))
        .collect();
    let (mut a, mut b) = (trim(f.to_vec()), trim(df));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Parses a monic integer polynomial in `t`, e.g. `"t^4-t-1"`, into
/// ascending coefficients.
pub fn parse_t_polynomial(s: &str) -> Result<Vec<Rational>> {
    let bad = |why: &str| Error::Parse(format!("{why} in polynomial {s:?}"));
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(bad("empty input"));
    }
    let mut terms: Vec<String> = Vec::new();
    for (i, ch) in text.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !text[..i].ends_with('^') {
            terms.push(String::new());
        }
        if terms.is_empty() {
            terms.push(String::new());
        }
        terms.last_mut().expect("pushed").push(ch);
    }
    let mut coeffs: BTreeMap<usize, BigInt> = BTreeMap::new();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (coef, deg) = match body.find('t') {
            None => (body.parse::<BigInt>().map_err(|_| bad("bad constant"))?, 0),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                let c = if c.is_empty() {
                    BigInt::one()
                } else {
                    c.parse().map_err(|_| bad("bad coefficient"))?
                };
                let rest = &body[pos + 1..];
                let d = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| bad("bad exponent"))?
                };
                (c, d)
            }
        };
        *coeffs.entry(deg).or_insert_with(BigInt::zero) += coef * sign;
    }
    let degree = *coeffs.keys().next_back().expect("at least one term");
    let mut out = vec![Rational::zero(); degree + 1];
    for (d, c) in coeffs {
        out[d] = Rational::from(c);
    }
    let out = trim(out);
    if !out.last().is_some_and(One::is_one) {
        return Err(bad("not monic"));
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ConfigJson {
    Points {
        n: usize,
        points: Vec<Vec<Rational>>,
    },
    Etale {
        n: usize,
        f: Vec<Rational>,
    },
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let json = match &self.kind {
            Kind::Points(points) => ConfigJson::Points {
                n: self.n,
                points: points.clone(),
            },
            Kind::Etale { f, .. } => ConfigJson::Etale {
                n: self.n,
                f: f.clone(),
            },
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (n, cfg) = match ConfigJson::deserialize(d)? {
            ConfigJson::Points { n, points } => (n, Configuration::from_points(points)),
            ConfigJson::Etale { n, f } => (n, Configuration::from_etale(f)),
        };
        let cfg = cfg.map_err(D::Error::custom)?;
        if cfg.n() != n {
            return Err(D::Error::custom(format!(
                "declared n = {n} but data gives {}",
                cfg.n()
            )));
        }
        Ok(cfg)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Points(pts) => {
                let shown: Vec<String> = pts
                    .iter()
                    .map(|p| {
                        format!(
                            "({})",
                            p.iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                                .join(":")
                        )
                    })
                    .collect();
                write!(f, "{}", shown.join(", "))
            }
            Kind::Etale { f: poly, .. } => {
                let terms: Vec<String> = poly
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(d, c)| format!("{c}*t^{d}"))
                    .collect();
                write!(f, "Q[t]/({})", terms.join(" + "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    fn pts(v: &[&[i64]]) -> Configuration {
        Configuration::from_points(v.iter().map(|p| ints(p)).collect()).unwrap()
    }

    #[test]
    fn standard_coordinate_ring() {
        // on the basis n·α*_i the products are -1 - α*_i - α*_j and (n-1) + (n-2)α*_i
        for n in 3..=6 {
            let t = Configuration::standard(n)
                .unwrap()
                .coordinate_ring_table()
                .unwrap();
            let t = t.rescaled(&q(n as i64, 1));
            let nn = n as i64;
            for i in 1..n {
                for j in 1..n {
                    for k in 1..n {
                        let expect = match (i == j, k == i || k == j) {
                            (false, true) => -1,
                            (true, true) => nn - 2,
                            _ => 0,
                        };
                        assert_eq!(t.c(k, i, j), &q(expect, 1), "n={n} c^{k}_{i}{j}");
                    }
                    assert_eq!(t.c0(i, j), &q(if i == j { nn - 1 } else { -1 }, 1));
                }
            }
        }
        let t = Configuration::standard(4)
            .unwrap()
            .coordinate_ring_table()
            .unwrap()
            .rescaled(&q(4, 1));
        assert_eq!(
            (t.c0(1, 2), t.c(1, 1, 2), t.c(2, 1, 2), t.c(3, 1, 2)),
            (&q(-1, 1), &q(-1, 1), &q(-1, 1), &q(0, 1))
        );
    }

    #[test]
    fn coordinate_rings_are_algebras() {
        let etale = Configuration::from_etale(ints(&[-1, -1, 0, 0, 1])).unwrap();
        let random = pts(&[&[1, 2, -1], &[0, 1, 3], &[1, -1, 1], &[2, 1, 1]]);
        for c in [Configuration::standard(5).unwrap(), etale, random] {
            let t = c.coordinate_ring_table().unwrap();
            let r = crate::table::verify_table(&t);
            assert!(r.passed(), "{r}");
        }
        let bad = pts(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert!(bad.coordinate_ring_table().is_err());
    }

    #[test]
    fn standard_points() {
        let c = Configuration::standard(4).unwrap();
        assert_eq!(
            c.points().unwrap(),
            pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])
                .points()
                .unwrap()
        );
        assert_eq!(
            Configuration::standard(3).unwrap().points().unwrap().len(),
            3
        );
        assert!(Configuration::standard(5).unwrap().is_in_general_position());
        assert!(Configuration::standard(2).is_err());
    }

    #[test]
    fn general_position_witnesses() {
        let c = pts(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(c.general_position_witness(), Some(vec![0, 1, 2]));
        let c = pts(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(!c.is_in_general_position());
        assert!(matches!(
            c.check_general_position(),
            Err(Error::NotGeneralPosition { .. })
        ));
        assert!(Configuration::from_points(vec![ints(&[0, 0]); 3]).is_err());
    }

    #[test]
    fn etale_cubic_basis() {
        let c = Configuration::from_etale(ints(&[-1, -1, 0, 1])).unwrap();
        let Kind::Etale { alphas, .. } = c.kind() else {
            panic!()
        };
        assert_eq!(alphas[0], ints(&[0, 1, 0]));
        assert_eq!(alphas[1], vec![q(-2, 3), q(0, 1), q(1, 1)]);
        // independent check: trace from the multiplication matrix
        let a = c.algebra();
        for al in alphas {
            assert!(a.trace(al).is_zero());
        }
        assert_eq!(
            Configuration::from_etale(ints(&[0, 0, 1, 1])),
            Err(Error::NotSquarefree)
        );
        assert!(Configuration::from_etale(ints(&[1, 0, 1])).is_err());
    }

    #[test]
    fn newton_sums_match_matrix_traces() {
        let f = ints(&[-1, -1, 0, 0, 0, 1]);
        let alg = FiniteAlgebra::Monogenic(f.clone());
        let t = alg.basis_vector(1);
        let sums = power_sums(&f, 8);
        for (k, s) in sums.iter().enumerate() {
            assert_eq!(&alg.trace(&alg.pow(&t, k as u32)), s, "k = {k}");
        }
    }

    #[test]
    fn ideal_dimensions() {
        let c = Configuration::standard(4).unwrap();
        let k2 = c.evaluation_matrix(2).nullspace();
        assert_eq!(k2.len(), 2);
        // x1(x2-x3), x2(x1-x3) in the basis x1^2, x1x2, x1x3, x2^2, x2x3, x3^2
        let a = ints(&[0, 1, -1, 0, 0, 0]);
        let b = ints(&[0, 1, 0, 0, -1, 0]);
        let span = QMatrix::from_columns(&k2);
        for v in [a, b] {
            let ext = QMatrix::from_columns(&[k2[0].clone(), k2[1].clone(), v]);
            assert_eq!(ext.rank(), span.rank());
        }
        assert!(c.evaluation_matrix(1).nullspace().is_empty());
        for n in 4..=6 {
            let c = Configuration::standard(n).unwrap();
            assert_eq!(
                c.evaluation_matrix(2).nullspace().len(),
                n * (n - 1) / 2 - n
            );
        }
        let e = Configuration::from_etale(ints(&[-1, -1, 0, 0, 1])).unwrap();
        assert_eq!(e.evaluation_matrix(1).rank(), 3);
        assert_eq!(e.evaluation_matrix(2).nullspace().len(), 2);
    }

    #[test]
    fn split_etale_is_projectively_standard() {
        // (t-1)(t-2)(t-3)(t-4)
        let e = Configuration::from_etale(ints(&[24, -50, 35, -10, 1])).unwrap();
        let Kind::Etale { alphas, .. } = e.kind() else {
            panic!()
        };
        // points: values of alpha_j at the roots 1..4
        let roots = [1i64, 2, 3, 4];
        let points: Vec<Vec<Rational>> = roots
            .iter()
            .map(|&r| {
                alphas
                    .iter()
                    .map(|a| {
                        a.iter()
                            .rev()
                            .fold(Rational::zero(), |acc, c| acc * Rational::from(r) + c)
                    })
                    .collect()
            })
            .collect();
        let src = Configuration::standard(4).unwrap();
        let dst = Configuration::from_points(points).unwrap();
        let g = transform_between(&src, &dst).unwrap();
        assert!(src.map_points(&g).unwrap().same_points(&dst));
    }

    #[test]
    fn transforms() {
        let s = Configuration::standard(4).unwrap();
        assert_eq!(transform_between(&s, &s).unwrap(), QMatrix::identity(3));
        let swapped = pts(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1], &[1, 1, 1]]);
        let g = transform_between(&s, &swapped).unwrap();
        assert!(s.map_points(&g).unwrap().same_points(&swapped));
        let back = transform_between(&swapped, &s).unwrap();
        let prod = g.mul(&back).unwrap();
        assert_eq!(
            prod.scale(&prod[(0, 0)].inv().unwrap()),
            QMatrix::identity(3)
        );
        let repeated = pts(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 0], &[1, 1, 1]]);
        assert!(transform_between(&s, &repeated).is_err());
    }

    #[test]
    fn parses_t_polynomials() {
        assert_eq!(
            parse_t_polynomial("t^4-t-1").unwrap(),
            ints(&[-1, -1, 0, 0, 1])
        );
        assert_eq!(
            parse_t_polynomial("t^3 + 2*t^2 - 3t + 5").unwrap(),
            ints(&[5, -3, 2, 1])
        );
        assert!(parse_t_polynomial("2t^2+1").is_err());
        assert!(parse_t_polynomial("t^x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = Configuration::standard(4).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.starts_with(r#"{"kind":"points","n":4,"points":[["1","0","0"]"#));
        assert_eq!(serde_json::from_str::<Configuration>(&text).unwrap(), c);
        let e: Configuration =
            serde_json::from_str(r#"{"kind":"etale","n":5,"f":["-1","-1","0","0","0","1"]}"#)
                .unwrap();
        assert_eq!(e.n(), 5);
        assert!(serde_json::from_str::<Configuration>(
            r#"{"kind":"etale","n":4,"f":["-1","-1","0","0","0","1"]}"#
        )
        .is_err());
    }
}
