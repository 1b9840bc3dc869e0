//! Seeded verification suites over ranges of `n`, shared by the command line
//! and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::brackets::{distinct_bracket_words, Brackets, IndexWord, OmegaTensor};
use crate::classical::{
    ldf_equivalence_check, pfaffian_shape_check, quartic_identities_check, BinaryCubic,
    TernaryQuadricPair,
};
use crate::config::{parse_t_polynomial, Configuration};
use crate::error::{Error, Result};
use crate::koszul::{final_syzygy, symbol_relations_check, KoszulFamily};
use crate::matrix::QMatrix;
use crate::poly::{Monomial, Polynomial};
use crate::polymatrix::PolyMatrix;
use crate::random::{self, GlKind};
use crate::rational::Rational;
use crate::report::Report;
use crate::resolution::{betti_numbers, build_resolution, validate, GradedFreeResolution};
use crate::symmetry::symmetry_check;
use crate::table::{
    integral_orders, isomorphic_up_to_scalar, structure_constants, table1_check, verify_table,
    Normalization, Scale,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Symmetries,
    Koszul,
    Table1,
    Endtoend,
    Classical,
    Orders,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Symmetries,
        Suite::Koszul,
        Suite::Table1,
        Suite::Endtoend,
        Suite::Classical,
        Suite::Orders,
    ];

    /// Sizes used when no range is given.
    pub fn default_ns(self) -> Vec<usize> {
        match self {
            Suite::Symmetries | Suite::Table1 => vec![5, 6],
            Suite::Koszul => vec![5, 6],
            Suite::Endtoend => vec![4, 5, 6],
            Suite::Classical => vec![3, 4, 5],
            Suite::Orders => vec![4, 5],
            Suite::All => vec![4, 5, 6],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "symmetries" => Suite::Symmetries,
            "koszul" => Suite::Koszul,
            "table1" => Suite::Table1,
            "endtoend" => Suite::Endtoend,
            "classical" => Suite::Classical,
            "orders" => Suite::Orders,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Symmetries => "symmetries",
            Suite::Koszul => "koszul",
            Suite::Table1 => "table1",
            Suite::Endtoend => "endtoend",
            Suite::Classical => "classical",
            Suite::Orders => "orders",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOptions {
    pub ns: Vec<usize>,
    pub seed: u64,
    pub cases: usize,
}

/// `"5"`, `"4..6"` (inclusive) or `"4,6,7"`.
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad range {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let out: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<_>>()?
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// Seed for the sub-stream keyed by a tag and `n`, so suites stay
/// reproducible when run alone or together.
fn sub_seed(seed: u64, tag: u64, n: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (tag << 32) ^ n as u64
}

fn outcome(ok: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

/// Ranks, twists and `validate` for `count` random configurations per `n`.
pub fn betti_shapes(ns: &[usize], seed: u64, count: usize) -> Result<Report> {
    let mut r = Report::new();
    for &n in ns {
        let mut rng = random::rng(sub_seed(seed, 1, n));
        for case in 0..count {
            let c = random::configuration(&mut rng, n);
            let f = build_resolution(&c)?;
            let expected = betti_numbers(n);
            let tag = format!("n={n} #{case}");
            r.check(
                format!("{tag} ranks"),
                outcome(f.ranks() == expected, || {
                    format!("{:?} != {expected:?}", f.ranks())
                }),
            );
            r.extend(&format!("{tag} "), validate(&f));
        }
    }
    Ok(r)
}

fn n3_closed_forms(f: &GradedFreeResolution) -> Result<OmegaTensor> {
    let cubic = f.map(1).get(0, 0);
    let co = |e: u32| cubic.coeff(&Monomial::new(vec![3 - e, e]));
    let (a, b, c, d) = (co(0), co(1), co(2), co(3));
    let q = |u: Rational, v: Rational, w: Rational| {
        Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![2, 0]), u),
                (Monomial::new(vec![1, 1]), v),
                (Monomial::new(vec![0, 2]), w),
            ],
        )
    };
    let k = |v: i64| Rational::from(v);
    OmegaTensor::new(
        3,
        vec![
            q(-b.clone(), -(k(2) * &c), -(k(3) * d)),
            q(k(3) * a, k(2) * b, c),
        ],
    )
}

/// Ω of the standard configuration: proportional to the closed form
/// `n x_i² - 2 x_i Σ x_j`, or equal to the cubic's derivative forms at
/// `n = 3`.
pub fn standard_omega(ns: &[usize]) -> Result<Report> {
    let mut r = Report::new();
    for &n in ns {
        let f = build_resolution(&Configuration::standard(n)?)?;
        let om = Brackets::new(&f)?.omega()?;
        if n == 3 {
            let model = n3_closed_forms(&f)?;
            r.check(
                "n=3 closed forms",
                outcome(om == model, || format!("{:?}", om.forms())),
            );
        } else {
            let ratio = om.ratio_to(&OmegaTensor::standard(n)?);
            r.record(
                format!("n={n} proportional"),
                ratio.is_some(),
                ratio.map_or("not proportional".into(), |c| format!("constant {c}")),
            );
        }
    }
    Ok(r)
}

/// One constant relating every bracket of the standard configuration to
/// `sign · (x_b - x_{a_1} - x_{a_{n-2}}) x_b`. All words up to `exhaustive_max`,
/// otherwise `sample` random words.
pub fn key_lemma(ns: &[usize], seed: u64, exhaustive_max: usize, sample: usize) -> Result<Report> {
    let mut r = Report::new();
    for &n in ns {
        let br = Brackets::new(&build_resolution(&Configuration::standard(n)?)?)?;
        let words = if n <= exhaustive_max {
            distinct_bracket_words(n)
        } else {
            let mut rng = random::rng(sub_seed(seed, 2, n));
            (0..sample)
                .map(|_| {
                    let mut v: Vec<usize> = (1..n).collect();
                    v.shuffle(&mut rng);
                    v.truncate(n - 2);
                    IndexWord::new(v)
                })
                .collect()
        };
        let c = br.key_lemma_constant(&words)?;
        r.record(
            format!("n={n} key lemma ({} words)", words.len()),
            c.is_some(),
            c.map_or("no common constant".into(), |c| format!("constant {c}")),
        );
    }
    Ok(r)
}

/// The symmetry and indicator identities on the standard configuration and
/// one random configuration per `n`.
pub fn symmetries(ns: &[usize], seed: u64, cases: usize) -> Result<Report> {
    let mut r = Report::new();
    for &n in ns {
        let mut rng = random::rng(sub_seed(seed, 3, n));
        let standard = build_resolution(&Configuration::standard(n)?)?;
        r.extend(
            &format!("n={n} standard "),
            symmetry_check(&standard, &mut rng, cases)?,
        );
        let c = random::configuration(&mut rng, n);
        r.extend(
            &format!("n={n} random "),
            symmetry_check(&build_resolution(&c)?, &mut rng, cases)?,
        );
    }
    Ok(r)
}

/// The signed brace identities for all triples on the standard
/// configuration and `count` random ones.
pub fn table1(ns: &[usize], seed: u64, count: usize) -> Result<Report> {
    let mut r = Report::new();
    for &n in ns {
        let mut rng = random::rng(sub_seed(seed, 4, n));
        let standard = build_resolution(&Configuration::standard(n)?)?;
        r.extend(&format!("n={n} standard "), table1_check(&standard)?);
        for case in 0..count {
            let f = build_resolution(&random::configuration(&mut rng, n))?;
            r.extend(&format!("n={n} random #{case} "), table1_check(&f)?);
        }
    }
    Ok(r)
}

/// The four-point pair `x1(x2-x3), x2(x1-x3)` and its resolution.
pub fn four_point_pair() -> TernaryQuadricPair {
    let x = |i: usize| Polynomial::var(3, i - 1);
    TernaryQuadricPair::new(x(1).mul(&x(2).sub(&x(3))), x(2).mul(&x(1).sub(&x(3))))
        .expect("ternary quadrics")
}

/// The n = 4 identities on the four-point pair and `count` random quartic
/// configurations.
pub fn quartic(seed: u64, count: usize) -> Result<Report> {
    let mut r = Report::new();
    r.extend(
        "four-point ",
        quartic_identities_check(&four_point_pair().resolution()?)?,
    );
    let mut rng = random::rng(sub_seed(seed, 5, 4));
    for case in 0..count {
        let f = build_resolution(&random::configuration(&mut rng, 4))?;
        r.extend(&format!("random #{case} "), quartic_identities_check(&f)?);
    }
    Ok(r)
}

/// `t^n - t - 1` as an ascending coefficient list.
pub fn selmer_polynomial(n: usize) -> Vec<Rational> {
    parse_t_polynomial(&format!("t^{n}-t-1")).expect("well-formed")
}

fn pipeline(c: &Configuration) -> Result<Report> {
    let f = build_resolution(c)?;
    let mut r = Report::new();
    let v = validate(&f);
    let valid = v.passed();
    r.extend("resolution ", v);
    if !valid {
        return Ok(r);
    }
    let t = structure_constants(&Brackets::new(&f)?.omega()?, Scale::Hessian)?;
    r.extend("table ", verify_table(&t));
    let ring = c.coordinate_ring_table()?;
    let mu = isomorphic_up_to_scalar(&t, &ring);
    r.record(
        "isomorphic to coordinate ring",
        mu.is_some(),
        mu.map_or("no scalar".into(), |m| format!("scalar {m}")),
    );
    Ok(r)
}

/// Resolution, table and comparison with the coordinate ring for `count`
/// random configurations per `n` and for `t^n - t - 1`.
pub fn end_to_end(ns: &[usize], seed: u64, count: usize) -> Result<Report> {
    let mut r = Report::new();
    for &n in ns {
        let mut rng = random::rng(sub_seed(seed, 6, n));
        for case in 0..count {
            let c = random::configuration(&mut rng, n);
            r.extend(&format!("n={n} random #{case} "), pipeline(&c)?);
        }
        let etale = Configuration::from_etale(selmer_polynomial(n))?;
        r.extend(&format!("n={n} t^{n}-t-1 "), pipeline(&etale)?);
    }
    Ok(r)
}

/// `Ω(F·g) = (det g)(g·Ω(F))` for `per_kind` group elements of each kind on
/// one random configuration per `n`.
pub fn change_of_coordinates(ns: &[usize], seed: u64, per_kind: usize) -> Result<Report> {
    let mut r = Report::new();
    let kinds = [
        ("diagonal", GlKind::Diagonal),
        ("permutation", GlKind::Permutation),
        ("unipotent", GlKind::Unipotent),
        ("general", GlKind::General),
    ];
    for &n in ns {
        let mut rng = random::rng(sub_seed(seed, 7, n));
        let f = build_resolution(&random::configuration(&mut rng, n))?;
        let om = Brackets::new(&f)?.omega()?;
        for (name, kind) in kinds {
            let mut res = Ok(());
            for _ in 0..per_kind {
                let g = random::gl_element(&mut rng, n - 1, kind);
                let lhs = Brackets::new(&f.transform(&g)?)?.omega()?;
                if lhs != om.transformed(&g)? {
                    res = Err(format!("g = {:?}", g.to_rows()));
                    break;
                }
            }
            r.check(format!("n={n} {name}"), res);
        }
    }
    Ok(r)
}

fn random_invertible(rng: &mut impl Rng, size: usize) -> QMatrix {
    loop {
        let g = QMatrix::from_fn(size, size, |_, _| Rational::from(rng.gen_range(-2..=2i64)));
        if g.determinant().is_ok_and(|d| !d.is_zero()) {
            return g;
        }
    }
}

/// Changing bases of the interior free modules leaves Ω fixed, and scaling
/// the last map by `μ` scales Ω by `μ`.
pub fn basis_independence(ns: &[usize], seed: u64, cases: usize) -> Result<Report> {
    let mut r = Report::new();
    for &n in ns {
        let mut rng = random::rng(sub_seed(seed, 8, n));
        let f = build_resolution(&random::configuration(&mut rng, n))?;
        let om = Brackets::new(&f)?.omega()?;
        let mut fixed = Ok(());
        let mut scaled = Ok(());
        for _ in 0..cases {
            let len = f.length();
            let nv = f.nvars();
            let changes: Vec<QMatrix> = (1..len)
                .map(|r| random_invertible(&mut rng, f.ranks()[r]))
                .collect();
            let mut maps = Vec::with_capacity(len);
            for r in 1..=len {
                let mut m = f.map(r).clone();
                if r > 1 {
                    m = PolyMatrix::from_constant(&changes[r - 2].inverse()?, nv).mul(&m)?;
                }
                if r < len {
                    m = m.mul_constant(&changes[r - 1])?;
                }
                maps.push(m);
            }
            let g = GradedFreeResolution::from_maps(n, maps)?;
            if Brackets::new(&g)?.omega()? != om && fixed.is_ok() {
                fixed = Err("Ω changed under an interior basis change".to_string());
            }
            let mu = Rational::new(rng.gen_range(1..=5i64), rng.gen_range(1..=5i64));
            let om2 = Brackets::new(&f.rescale_last(&mu))?.omega()?;
            if om2 != om.scale(&mu) && scaled.is_ok() {
                scaled = Err(format!("μ = {mu}"));
            }
        }
        r.check(format!("n={n} interior bases"), fixed);
        r.check(format!("n={n} last map scaling"), scaled);
    }
    Ok(r)
}

/// Chain-map lifts, symbol relations and the final syzygy on the standard
/// configuration.
pub fn koszul(ns: &[usize]) -> Result<Report> {
    let mut r = Report::new();
    for &n in ns {
        let f = build_resolution(&Configuration::standard(n)?)?;
        let fam = match KoszulFamily::new(&f) {
            Ok(fam) => fam,
            Err(e @ (Error::Inconsistent(_) | Error::NoSolution(_))) => {
                r.fail(format!("n={n} lifts"), e.to_string());
                continue;
            }
            Err(e) => return Err(e),
        };
        r.pass(format!("n={n} lifts exist and are unique"));
        r.extend(&format!("n={n} "), symbol_relations_check(&fam, &f)?);
        r.extend(&format!("n={n} syzygy "), final_syzygy(&fam, &f)?.report);
    }
    Ok(r)
}

/// `count` random integer cubics with nonzero discriminant plus the anchor
/// `(1, 0, -1, -1)`.
pub fn cubics(seed: u64, count: usize) -> Result<Report> {
    let mut r = Report::new();
    let anchor = BinaryCubic::from_ints([1, 0, -1, -1]);
    let d = anchor.discriminant();
    r.check(
        "anchor discriminant",
        outcome(d == Rational::from(-23), || format!("{d}")),
    );
    r.extend("anchor ", ldf_equivalence_check(&anchor)?);
    let mut rng = random::rng(sub_seed(seed, 9, 3));
    for case in 0..count {
        let v = random::cubic_coefficients(&mut rng);
        r.extend(
            &format!("{v:?} #{case} "),
            ldf_equivalence_check(&BinaryCubic::from_ints(v))?,
        );
    }
    Ok(r)
}

/// Pfaffian complexes of random alternating matrices.
pub fn pfaffians(seed: u64, count: usize) -> Result<Report> {
    let mut r = Report::new();
    let mut rng = random::rng(sub_seed(seed, 10, 5));
    for case in 0..count {
        let (rep, _) = pfaffian_shape_check(&random::alternating_linear(&mut rng))?;
        r.extend(&format!("#{case} "), rep);
    }
    Ok(r)
}

/// The orders `B ⊂ B'` for the integral standard resolution and for
/// `t^n - t - 1`, with the pairwise normalization added for odd `n`.
pub fn orders(ns: &[usize]) -> Result<Report> {
    let mut r = Report::new();
    for &n in ns {
        let inputs = [
            ("standard", Configuration::standard(n)?),
            ("etale", Configuration::from_etale(selmer_polynomial(n))?),
        ];
        for (name, c) in inputs {
            let f = build_resolution(&c)?.integralize();
            let mut convs = vec![Normalization::Cyclic];
            if n % 2 == 1 {
                convs.push(Normalization::Pairwise);
            }
            for conv in convs {
                let o = integral_orders(&f, conv)?;
                r.extend(&format!("n={n} {name} {conv:?} "), o.report);
            }
        }
    }
    Ok(r)
}

/// Runs a named suite. `opts.cases` is the per-identity count for the
/// symmetry suite and the number of random inputs elsewhere.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Report> {
    let ns = &opts.ns;
    let at_least = |k: usize| -> Vec<usize> { ns.iter().copied().filter(|&n| n >= k).collect() };
    let (seed, cases) = (opts.seed, opts.cases);
    let few = cases.clamp(1, 3);
    let mut r = Report::new();
    match suite {
        Suite::Symmetries => {
            r.extend("symmetry ", symmetries(&at_least(5), seed, cases)?);
            r.extend("key lemma ", key_lemma(&at_least(4), seed, 7, cases)?);
            r.extend(
                "coordinates ",
                change_of_coordinates(&at_least(4), seed, cases)?,
            );
            r.extend("bases ", basis_independence(&at_least(4), seed, few)?);
        }
        Suite::Koszul => r.extend("koszul ", koszul(&at_least(5))?),
        Suite::Table1 => r.extend("table1 ", table1(&at_least(4), seed, few)?),
        Suite::Endtoend => {
            r.extend("betti ", betti_shapes(&at_least(4), seed, few)?);
            r.extend("omega ", standard_omega(&at_least(3))?);
            r.extend("pipeline ", end_to_end(&at_least(4), seed, few)?);
        }
        Suite::Classical => {
            r.extend("cubic ", cubics(seed, cases)?);
            r.extend("quartic ", quartic(seed, few)?);
            r.extend("quintic ", pfaffians(seed, few)?);
        }
        Suite::Orders => r.extend("orders ", orders(&at_least(4))?),
        Suite::All => {
            for s in Suite::ALL {
                r.extend(&format!("{s}."), run_suite(s, opts)?);
            }
        }
    }
    Ok(r)
}
