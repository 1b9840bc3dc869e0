//! Minimal graded free resolutions of the coordinate ring of a configuration,
//! built one graded kernel at a time.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::modular::SparseQMatrix;
use crate::poly::{MonomialBasis, Polynomial};
use crate::polymatrix::PolyMatrix;
use crate::rational::Rational;
use crate::report::Report;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Ranks `[1, b_1, …, b_{n-3}, 1]` of the free modules (`[1, 1]` for n = 3).
pub fn betti_numbers(n: usize) -> Vec<usize> {
    assert!(n >= 3, "n must be at least 3");
    if n == 3 {
        return vec![1, 1];
    }
    let mut ranks = vec![1];
    for i in 1..=n - 3 {
        ranks.push(n * binomial(n - 2, i) - binomial(n, i + 1));
    }
    ranks.push(1);
    ranks
}

/// Generator degrees `[0, 2, 3, …, n-2, n]` (`[0, 3]` for n = 3).
pub fn generator_degrees(n: usize) -> Vec<u32> {
    assert!(n >= 3, "n must be at least 3");
    if n == 3 {
        return vec![0, 3];
    }
    let mut t = vec![0];
    t.extend(2..=(n as u32 - 2));
    t.push(n as u32);
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedFreeResolution {
    n: usize,
    ranks: Vec<usize>,
    twists: Vec<u32>,
    maps: Vec<PolyMatrix>,
    /// Factor applied to the last differential when normalizing it.
    scale: Rational,
}

impl GradedFreeResolution {
    /// Wraps explicit differentials `φ_1, …, φ_{n-2}` with the expected
    /// shape for `n`. Only matrix sizes are checked; use [`validate`] for
    /// the rest.
    pub fn from_maps(n: usize, maps: Vec<PolyMatrix>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "n must be at least 3, got {n}"
            )));
        }
        let ranks = betti_numbers(n);
        if maps.len() != ranks.len() - 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} maps, got {}",
                ranks.len() - 1,
                maps.len()
            )));
        }
        for (r, m) in maps.iter().enumerate() {
            if m.nvars() != n - 1 || (m.rows(), m.cols()) != (ranks[r], ranks[r + 1]) {
                return Err(Error::DimensionMismatch(format!(
                    "map {} is {}x{} in {} variables, expected {}x{} in {}",
                    r + 1,
                    m.rows(),
                    m.cols(),
                    m.nvars(),
                    ranks[r],
                    ranks[r + 1],
                    n - 1
                )));
            }
        }
        Ok(GradedFreeResolution {
            n,
            ranks,
            twists: generator_degrees(n),
            maps,
            scale: Rational::one(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn twists(&self) -> &[u32] {
        &self.twists
    }

    /// All differentials, `maps()[r-1] = φ_r`.
    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// The differential `φ_r`, 1-based.
    pub fn map(&self, r: usize) -> &PolyMatrix {
        &self.maps[r - 1]
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn with_scale(mut self, scale: Rational) -> Self {
        self.scale = scale;
        self
    }

    /// Replaces `φ_r` (1-based) without further checks.
    pub fn replace_map(&mut self, r: usize, m: PolyMatrix) {
        self.maps[r - 1] = m;
    }

    /// Multiplies the last differential by `c`.
    pub fn rescale_last(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        let last = out.maps.len();
        out.maps[last - 1] = out.maps[last - 1].scale(c);
        out.scale = &out.scale * c;
        out
    }

    /// Entrywise substitution `x'_j = Σ_i g_ij x_i` in every differential.
    pub fn transform(&self, g: &QMatrix) -> Result<Self> {
        if g.rows() != self.nvars() || g.cols() != self.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "expected {0}x{0} matrix",
                self.nvars()
            )));
        }
        if g.determinant()?.is_zero() {
            return Err(Error::Singular);
        }
        let maps = self
            .maps
            .iter()
            .map(|m| m.linear_substitution(g))
            .collect::<Result<_>>()?;
        Ok(GradedFreeResolution {
            maps,
            ..self.clone()
        })
    }

    /// Whether every coefficient of every differential is an integer.
    pub fn is_integral(&self) -> bool {
        self.maps.iter().all(|m| {
            m.entries()
                .iter()
                .all(|p| p.terms().iter().all(|(_, c)| c.is_integer()))
        })
    }

    /// Integral resolution obtained by scaling each column of `φ_r` to a
    /// primitive integer vector and compensating in the rows of `φ_{r+1}`.
    /// Only the final column scaling changes the brackets; its product with
    /// the existing scale is recorded.
    pub fn integralize(&self) -> Self {
        let mut maps = self.maps.clone();
        let mut last_factor = Rational::one();
        for r in 0..maps.len() {
            let m = &maps[r];
            let factors: Vec<Rational> = (0..m.cols())
                .map(|j| primitive_factor(&m.column(j)))
                .collect();
            let scaled = PolyMatrix::from_fn(m.rows(), m.cols(), m.nvars(), |i, j| {
                m.get(i, j).scale(&factors[j])
            });
            maps[r] = scaled;
            if r + 1 < maps.len() {
                let next = &maps[r + 1];
                maps[r + 1] =
                    PolyMatrix::from_fn(next.rows(), next.cols(), next.nvars(), |i, j| {
                        next.get(i, j)
                            .scale(&factors[i].inv().expect("nonzero factor"))
                    });
            } else {
                last_factor = factors[0].clone();
            }
        }
        GradedFreeResolution {
            maps,
            scale: &self.scale * &last_factor,
            ..self.clone()
        }
    }
}

/// `c` making `c·v` a primitive integer vector whose first nonzero
/// coefficient is positive.
fn primitive_factor(v: &[Polynomial]) -> Rational {
    let coeffs: Vec<&Rational> = v
        .iter()
        .flat_map(|p| p.terms().iter().map(|(_, c)| c))
        .collect();
    let Some(first) = coeffs.first() else {
        return Rational::one();
    };
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let gcd = coeffs.iter().fold(BigInt::zero(), |acc, c| {
        acc.gcd(&(c.numer() * &lcm / c.denom()))
    });
    let sign = if first.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    Rational::new(lcm * sign, gcd)
}

/// Coefficient matrix of `v ↦ φ v` on column vectors whose entries are
/// forms of degree `e`, where the entries of `φ` are forms of degree `dphi`.
/// Unknowns are indexed by (entry, monomial) with the entry index major.
fn syzygy_system(phi: &PolyMatrix, dphi: u32, e: u32) -> (SparseQMatrix, MonomialBasis) {
    let nvars = phi.nvars();
    let unknowns = MonomialBasis::of_degree(nvars, e);
    let targets = MonomialBasis::of_degree(nvars, dphi + e);
    let mut sys = SparseQMatrix::new(phi.rows() * targets.len());
    for i in 0..phi.cols() {
        for m in unknowns.monomials() {
            let mut entries = Vec::new();
            for j in 0..phi.rows() {
                for (t, c) in phi.get(j, i).terms() {
                    let row = targets.index_of(&t.mul(m)).expect("degree matches");
                    entries.push((j * targets.len() + row, c.clone()));
                }
            }
            sys.push_column(entries);
        }
    }
    (sys, unknowns)
}

fn vector_to_column(
    v: &[Rational],
    entries: usize,
    basis: &MonomialBasis,
    nvars: usize,
) -> Vec<Polynomial> {
    let k = basis.len();
    (0..entries)
        .map(|i| basis.polynomial(nvars, &v[i * k..(i + 1) * k]))
        .collect()
}

fn coefficient_columns(m: &PolyMatrix, d: u32) -> Vec<Vec<Rational>> {
    let basis = MonomialBasis::of_degree(m.nvars(), d);
    (0..m.cols())
        .map(|j| {
            m.column(j)
                .iter()
                .flat_map(|p| p.coefficient_vector(&basis).expect("homogeneous entries"))
                .collect()
        })
        .collect()
}

/// Builds the minimal free resolution of a configuration in general
/// position. The result is deterministic: each differential is the
/// canonical kernel basis of the previous one, and the last differential is
/// a primitive integer column.
pub fn build_resolution(c: &Configuration) -> Result<GradedFreeResolution> {
    c.check_general_position()?;
    let n = c.n();
    let nvars = n - 1;
    let ranks = betti_numbers(n);
    let twists = generator_degrees(n);

    let gens = c.evaluation_matrix(twists[1]).nullspace();
    if gens.len() != ranks[1] {
        return Err(Error::Inconsistent(format!(
            "ideal has {} generators in degree {}, expected {}",
            gens.len(),
            twists[1],
            ranks[1]
        )));
    }
    let basis = MonomialBasis::of_degree(nvars, twists[1]);
    let row: Vec<Polynomial> = gens.iter().map(|v| basis.polynomial(nvars, v)).collect();
    let mut maps = vec![PolyMatrix::row_vector(nvars, row)?];

    for r in 1..ranks.len() - 1 {
        let phi = &maps[r - 1];
        let dphi = twists[r] - twists[r - 1];
        let e = twists[r + 1] - twists[r];
        let (sys, unknowns) = syzygy_system(phi, dphi, e);
        let kernel = sys.nullspace();
        if kernel.len() != ranks[r + 1] {
            return Err(Error::Inconsistent(format!(
                "syzygies of map {r} in degree {}: found {}, expected {}",
                twists[r + 1],
                kernel.len(),
                ranks[r + 1]
            )));
        }
        let cols: Vec<Vec<Polynomial>> = kernel
            .iter()
            .map(|v| vector_to_column(v, phi.cols(), &unknowns, nvars))
            .collect();
        let next = PolyMatrix::from_fn(phi.cols(), cols.len(), nvars, |i, j| cols[j][i].clone());
        maps.push(next);
    }

    let res = GradedFreeResolution::from_maps(n, maps)?;
    let factor = primitive_factor(&res.maps.last().expect("at least one map").column(0));
    Ok(res.rescale_last(&factor))
}

/// Checks shape, grading, the complex property, minimality and exactness
/// at the generator degrees.
pub fn validate(f: &GradedFreeResolution) -> Report {
    let mut report = Report::new();
    let n = f.n;
    let expected_ranks = betti_numbers(n);
    let expected_twists = generator_degrees(n);
    let mut shape_ok = f.ranks == expected_ranks && f.twists == expected_twists;
    let mut detail = String::new();
    if !shape_ok {
        detail = format!(
            "ranks {:?} twists {:?}, expected {:?} {:?}",
            f.ranks, f.twists, expected_ranks, expected_twists
        );
    } else if f.maps.len() != f.ranks.len() - 1 {
        shape_ok = false;
        detail = format!("{} maps for {} modules", f.maps.len(), f.ranks.len());
    } else if let Some((r, m)) =
        f.maps.iter().enumerate().find(|(r, m)| {
            (m.rows(), m.cols()) != (f.ranks[*r], f.ranks[r + 1]) || m.nvars() != n - 1
        })
    {
        shape_ok = false;
        detail = format!("map {} is {}x{}", r + 1, m.rows(), m.cols());
    }
    report.record("shape", shape_ok, detail);
    if !shape_ok {
        return report;
    }

    let degree = |r: usize| f.twists[r] - f.twists[r - 1];
    let grading = (1..=f.length()).find_map(|r| {
        let m = f.map(r);
        (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| !m.get(i, j).is_homogeneous_of_degree(degree(r)))
            .map(|(i, j)| {
                format!(
                    "map {r} entry ({},{}) is not a form of degree {}",
                    i + 1,
                    j + 1,
                    degree(r)
                )
            })
    });
    report.check("grading", grading.map_or(Ok(()), Err));

    let mut complex_ok = true;
    let mut complex_detail = Ok(());
    for r in 1..f.length() {
        let prod = f.map(r).mul(f.map(r + 1)).expect("shapes checked");
        if let Some((i, j)) = prod.first_nonzero() {
            complex_ok = false;
            complex_detail = Err(format!(
                "map {r} times map {} is nonzero at ({},{})",
                r + 1,
                i + 1,
                j + 1
            ));
            break;
        }
    }
    report.check("complex", complex_detail);

    let minimal = (1..=f.length()).find_map(|r| {
        f.map(r)
            .first_constant_entry()
            .map(|(i, j)| format!("map {r} entry ({},{}) has a constant term", i + 1, j + 1))
    });
    report.check("minimality", minimal.map_or(Ok(()), Err));

    let last_nonzero = !f.maps.last().expect("nonempty").is_zero();
    report.record(
        "nonzero",
        last_nonzero,
        if last_nonzero { "" } else { "last map is zero" },
    );

    if report.passed() {
        report.check("exactness", exactness(f, complex_ok));
    } else {
        report.fail("exactness", "skipped after an earlier failure");
    }
    report
}

/// Kernel of `φ_r` in degree `twists[r+1] - twists[r]` has dimension
/// `ranks[r+1]` for every `r < n-2`. Certified with modular rank bounds:
/// independent columns of `φ_{r+1}` inside the kernel bound it below, a
/// modular rank bounds it above.
fn exactness(f: &GradedFreeResolution, complex_ok: bool) -> std::result::Result<(), String> {
    for r in 1..f.length() {
        let e = f.twists[r + 1] - f.twists[r];
        let dphi = f.twists[r] - f.twists[r - 1];
        let (sys, _) = syzygy_system(f.map(r), dphi, e);
        let expected = f.ranks[r + 1];
        let next_cols = SparseQMatrix::from_dense(&QMatrix::from_columns(&coefficient_columns(
            f.map(r + 1),
            e,
        )));
        let lower_ok = complex_ok && next_cols.rank_lower_bound(1) == expected;
        let kernel_dim = if lower_ok {
            let upper = (1..=4)
                .map(|k| sys.cols() - sys.rank_lower_bound(k))
                .find(|&u| u == expected);
            match upper {
                Some(u) => u,
                None => sys.nullspace().len(),
            }
        } else {
            sys.nullspace().len()
        };
        if kernel_dim != expected {
            return Err(format!(
                "kernel of map {r} in degree {} has dimension {kernel_dim}, expected {expected}",
                f.twists[r + 1]
            ));
        }
    }
    Ok(())
}

/// Configuration on which every generator in `φ_1` of the transformed
/// resolution vanishes: the points `g^{-T} p`.
pub fn transformed_configuration(c: &Configuration, g: &QMatrix) -> Result<Configuration> {
    c.map_points(&g.inverse()?.transpose())
}

/// Transforms `f` (a resolution of `c`) by `g` and returns the new
/// resolution together with the configuration it resolves, after checking
/// that its generators vanish there.
pub fn transform_with_configuration(
    f: &GradedFreeResolution,
    c: &Configuration,
    g: &QMatrix,
) -> Result<(GradedFreeResolution, Configuration)> {
    let t = f.transform(g)?;
    let c2 = transformed_configuration(c, g)?;
    for p in c2.points().expect("point configuration") {
        if t.map(1).entries().iter().any(|q| !q.eval(p).is_zero()) {
            return Err(Error::Inconsistent(
                "transformed generators do not vanish on the image points".into(),
            ));
        }
    }
    Ok((t, c2))
}

/// Checks that the dual complex `φ_{n-2}^T, …, φ_1^T` is again a minimal
/// resolution of the same shape and that the entries of `φ_{n-2}` span the
/// same quadrics as those of `φ_1`.
pub fn self_duality_check(f: &GradedFreeResolution) -> Report {
    let mut report = Report::new();
    if f.n < 4 {
        report.fail("applicable", "requires n >= 4");
        return report;
    }
    let dual_maps: Vec<PolyMatrix> = f.maps.iter().rev().map(PolyMatrix::transpose).collect();
    match GradedFreeResolution::from_maps(f.n, dual_maps) {
        Ok(dual) => report.extend("dual.", validate(&dual)),
        Err(e) => report.fail("dual.shape", e.to_string()),
    }
    let first = coefficient_columns(f.map(1), 2);
    let last = coefficient_columns(&f.maps.last().expect("nonempty").transpose(), 2);
    let a = QMatrix::from_columns(&first);
    let b = QMatrix::from_columns(&last);
    let joint = QMatrix::from_columns(&[first.clone(), last.clone()].concat());
    let (ra, rb, rj) = (a.rank(), b.rank(), joint.rank());
    report.record(
        "same ideal",
        ra == rb && rb == rj,
        if ra == rb && rb == rj {
            String::new()
        } else {
            format!("ranks {ra}, {rb}, joint {rj}")
        },
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n - 1, i)
    }

    #[test]
    fn betti_shapes() {
        assert_eq!(betti_numbers(3), vec![1, 1]);
        assert_eq!(betti_numbers(4), vec![1, 2, 1]);
        assert_eq!(betti_numbers(5), vec![1, 5, 5, 1]);
        assert_eq!(betti_numbers(6), vec![1, 9, 16, 9, 1]);
        assert_eq!(betti_numbers(7), vec![1, 14, 35, 35, 14, 1]);
        assert_eq!(generator_degrees(6), vec![0, 2, 3, 4, 6]);
        assert_eq!(generator_degrees(3), vec![0, 3]);
    }

    #[test]
    fn four_points() {
        let c = Configuration::standard(4).unwrap();
        let f = build_resolution(&c).unwrap();
        assert!(validate(&f).passed(), "{}", validate(&f));
        let a = x(4, 0).mul(&x(4, 1).sub(&x(4, 2)));
        let b = x(4, 1).mul(&x(4, 0).sub(&x(4, 2)));
        // canonical kernel basis is (-A, -B)
        assert_eq!(f.map(1).row(0), vec![a.neg(), b.neg()]);
        assert_eq!(f.map(2).column(0), vec![b, a.neg()]);
        assert_eq!(f.scale(), &q(1, 1));
    }

    #[test]
    fn five_and_six_points() {
        for n in [5, 6] {
            let f = build_resolution(&Configuration::standard(n).unwrap()).unwrap();
            assert_eq!(f.ranks(), betti_numbers(n).as_slice());
            let rep = validate(&f);
            assert!(rep.passed(), "{rep}");
            let dual = self_duality_check(&f);
            assert!(dual.passed(), "{dual}");
            assert!(f.is_integral());
        }
    }

    #[test]
    fn three_points_give_the_cubic() {
        let f = build_resolution(&Configuration::standard(3).unwrap()).unwrap();
        // x1 x2 (x1 - x2) up to sign
        let e = x(3, 0).mul(&x(3, 1)).mul(&x(3, 0).sub(&x(3, 1)));
        let got = f.map(1).get(0, 0).clone();
        assert!(got == e || got == e.neg());
        assert!(validate(&f).passed());
    }

    #[test]
    fn validate_catches_damage() {
        let f = build_resolution(&Configuration::standard(5).unwrap()).unwrap();
        let mut flipped = f.clone();
        let m = f.map(2);
        let mut m2 = m.clone();
        let (i, j) = m.first_nonzero().unwrap();
        m2.set(i, j, m.get(i, j).neg());
        flipped.replace_map(2, m2);
        let rep = validate(&flipped);
        assert!(!rep.get("complex").unwrap().passed);
        assert!(rep.get("complex").unwrap().detail.contains("map"));

        let mut constant = f.clone();
        let mut m3 = f.map(2).clone();
        m3.set(0, 0, m3.get(0, 0).add(&Polynomial::constant(4, q(1, 1))));
        constant.replace_map(2, m3);
        assert!(!validate(&constant).get("minimality").unwrap().passed);
    }

    #[test]
    fn transform_round_trip() {
        let c = Configuration::standard(5).unwrap();
        let f = build_resolution(&c).unwrap();
        let g = QMatrix::from_rows(vec![
            vec![q(1, 1), q(2, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(0, 1), q(-1, 2)],
            vec![q(3, 1), q(0, 1), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1), q(1, 1)],
        ]);
        let (t, c2) = transform_with_configuration(&f, &c, &g).unwrap();
        assert!(validate(&t).passed());
        assert!(c2.is_in_general_position());
        let back = t.transform(&g.inverse().unwrap()).unwrap();
        assert_eq!(back, f);
        assert_eq!(f.transform(&QMatrix::identity(4)).unwrap(), f);
        assert!(f.transform(&QMatrix::zeros(4, 4)).is_err());
    }

    #[test]
    fn integralize_keeps_validity() {
        let pts = vec![
            vec![q(1, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1)],
            vec![q(1, 1), q(2, 1), q(3, 1)],
        ];
        let f = build_resolution(&Configuration::from_points(pts).unwrap()).unwrap();
        let fi = f.integralize();
        assert!(fi.is_integral());
        assert!(validate(&fi).passed());
    }

    #[test]
    fn json_round_trip() {
        let f = build_resolution(&Configuration::standard(4).unwrap()).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.contains(r#""ranks":[1,2,1]"#));
        assert!(text.contains(r#""scale":"1""#));
        let back: GradedFreeResolution = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_degenerate_points() {
        let pts = vec![
            vec![q(1, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(0, 1)],
            vec![q(1, 1), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1)],
        ];
        let c = Configuration::from_points(pts).unwrap();
        assert_eq!(
            build_resolution(&c),
            Err(Error::NotGeneralPosition {
                witness: vec![0, 1, 2]
            })
        );
    }
}
