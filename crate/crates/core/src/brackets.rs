//! Brackets, double brackets, the Ω tensor and brace symbols of a
//! resolution.
//!
//! Indices in words are 1-based labels of the variables `x_1, …, x_{n-1}`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;
use crate::resolution::GradedFreeResolution;

/// A word of 1-based variable labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexWord(Vec<usize>);

impl IndexWord {
    pub fn new(entries: Vec<usize>) -> Self {
        IndexWord(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_distinct(&self) -> bool {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// Sign of the permutation taking the sorted word to the word, or
    /// `None` when an entry repeats.
    pub fn sign(&self) -> Option<i32> {
        if !self.is_distinct() {
            return None;
        }
        let mut inversions = 0usize;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        Some(if inversions % 2 == 0 { 1 } else { -1 })
    }

    pub fn reversed(&self) -> Self {
        IndexWord(self.0.iter().rev().copied().collect())
    }

    /// Swaps the entries at 0-based positions `a` and `b`.
    pub fn swapped(&self, a: usize, b: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(a, b);
        IndexWord(v)
    }

    /// The word `w'` with `w'[p] = w[(p + s) mod len]`.
    pub fn rotated(&self, s: usize) -> Self {
        let m = self.0.len();
        IndexWord((0..m).map(|p| self.0[(p + s) % m]).collect())
    }

    pub fn concat(parts: &[&[usize]]) -> Self {
        IndexWord(parts.iter().flat_map(|p| p.iter().copied()).collect())
    }
}

impl From<Vec<usize>> for IndexWord {
    fn from(v: Vec<usize>) -> Self {
        IndexWord(v)
    }
}

/// Sign of the permutation taking the sequence `from` to `to`; both must
/// list the same distinct labels.
pub fn permutation_sign(from: &[usize], to: &[usize]) -> Option<i32> {
    let mut a = from.to_vec();
    let mut b = to.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    Some(IndexWord::new(from.to_vec()).sign()? * IndexWord::new(to.to_vec()).sign()?)
}

/// A sign as a rational.
pub fn sign_q(s: i32) -> Rational {
    if s >= 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `1, …, top` with the labels in `omit` removed.
pub fn complement(top: usize, omit: &[usize]) -> Vec<usize> {
    (1..=top).filter(|i| !omit.contains(i)).collect()
}

fn quadratic_monomial(nvars: usize, i: usize, j: usize) -> Monomial {
    Monomial::var(nvars, i).mul(&Monomial::var(nvars, j))
}

/// Coefficient of `x_i x_j` (0-based, any order) in `p`.
fn quadratic_coeff(p: &Polynomial, i: usize, j: usize) -> Rational {
    p.coeff(&quadratic_monomial(p.nvars(), i, j))
}

/// Precomputed derivative data of a resolution, shared by all bracket and
/// brace evaluations.
#[derive(Clone, Debug)]
pub struct Brackets {
    n: usize,
    /// n = 3: the partial derivatives of the cubic.
    cubic: Vec<Polynomial>,
    /// `first[a]` is `nvars × b_1`: coefficient of `x_v` in `∂φ_1/∂x_a`.
    first: Vec<QMatrix>,
    /// `interior[r][a] = ∂φ_{r+2}/∂x_a`, constant.
    interior: Vec<Vec<QMatrix>>,
    /// `last[a]` is `b_{n-3} × nvars`: coefficient of `x_u` in `∂φ_{n-2}/∂x_a`.
    last: Vec<QMatrix>,
    phi1: Vec<Polynomial>,
    phi_last: Vec<Polynomial>,
}

impl Brackets {
    pub fn new(f: &GradedFreeResolution) -> Result<Self> {
        let n = f.n();
        let nv = f.nvars();
        let m = f.length();
        if n < 3 || m != n - 2 {
            return Err(Error::DimensionMismatch(format!(
                "resolution of length {m} for n = {n}"
            )));
        }
        let phi1 = f.map(1).row(0);
        if n == 3 {
            let cubic = (0..nv)
                .map(|a| phi1[0].derivative(a))
                .collect::<Result<_>>()?;
            return Ok(Brackets {
                n,
                cubic,
                first: vec![],
                interior: vec![],
                last: vec![],
                phi1,
                phi_last: vec![],
            });
        }
        let phi_last = f.map(m).column(0);
        let linear_coeffs = |entries: &[Polynomial], a: usize, by_rows: bool| -> Result<QMatrix> {
            let d: Vec<Polynomial> = entries
                .iter()
                .map(|p| p.derivative(a))
                .collect::<Result<_>>()?;
            let coeff = |c: usize, v: usize| d[c].coeff(&Monomial::var(nv, v));
            Ok(if by_rows {
                QMatrix::from_fn(nv, d.len(), |v, c| coeff(c, v))
            } else {
                QMatrix::from_fn(d.len(), nv, |c, u| coeff(c, u))
            })
        };
        let first = (0..nv)
            .map(|a| linear_coeffs(&phi1, a, true))
            .collect::<Result<_>>()?;
        let last = (0..nv)
            .map(|a| linear_coeffs(&phi_last, a, false))
            .collect::<Result<_>>()?;
        let mut interior = Vec::new();
        for r in 2..m {
            let mut per_var = Vec::with_capacity(nv);
            for a in 0..nv {
                let d = f.map(r).partial_derivative(a)?;
                let c = d.to_constant().ok_or_else(|| {
                    Error::DimensionMismatch(format!("interior map {r} is not linear"))
                })?;
                per_var.push(c);
            }
            interior.push(per_var);
        }
        Ok(Brackets {
            n,
            cubic: vec![],
            first,
            interior,
            last,
            phi1,
            phi_last,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n - 1
    }

    fn check_word(&self, word: &IndexWord, len: usize) -> Result<()> {
        if word.len() != len {
            return Err(Error::DimensionMismatch(format!(
                "word of length {}, expected {len}",
                word.len()
            )));
        }
        if let Some(&a) = word.entries().iter().find(|&&a| a == 0 || a > self.nvars()) {
            return Err(Error::IndexOutOfRange(format!(
                "label {a} outside 1..={}",
                self.nvars()
            )));
        }
        Ok(())
    }

    fn quadratic_from_matrix(&self, c: &QMatrix) -> Polynomial {
        let nv = self.nvars();
        let terms = (0..nv)
            .flat_map(|v| (0..nv).map(move |u| (v, u)))
            .map(|(v, u)| (quadratic_monomial(nv, v, u), c[(v, u)].clone()));
        Polynomial::from_terms(nv, terms)
    }

    /// `[a_1, …, a_{n-2}]`; repeated labels are allowed.
    pub fn bracket(&self, word: &IndexWord) -> Result<Polynomial> {
        self.check_word(word, self.n - 2)?;
        let a = word.entries();
        if self.n == 3 {
            return Ok(self.cubic[a[0] - 1].clone());
        }
        let mut acc = self.first[a[0] - 1].clone();
        for (r, &label) in a[1..a.len() - 1].iter().enumerate() {
            acc = acc.mul(&self.interior[r][label - 1])?;
        }
        acc = acc.mul(&self.last[a[a.len() - 1] - 1])?;
        Ok(self.quadratic_from_matrix(&acc))
    }

    /// `[[a_1, …, a_{n-2}]]`: the sum of the brackets of the word rotated by
    /// `2k`, `k = 1, …, n-2`.
    pub fn double_bracket(&self, word: &IndexWord) -> Result<Polynomial> {
        self.check_word(word, self.n - 2)?;
        let m = self.n - 2;
        let mut sum = Polynomial::zero(self.nvars());
        for k in 1..=m {
            sum = sum.add(&self.bracket(&word.rotated((2 * k) % m))?);
        }
        Ok(sum)
    }

    /// `Ω_j = (-1)^j [[1, …, ĵ, …, n-1]]`.
    pub fn omega(&self) -> Result<OmegaTensor> {
        let nv = self.nvars();
        let mut forms = Vec::with_capacity(nv);
        for j in 1..=nv {
            let w = IndexWord::new(complement(nv, &[j]));
            let db = self.double_bracket(&w)?;
            forms.push(if j % 2 == 0 { db } else { db.neg() });
        }
        OmegaTensor::new(self.n, forms)
    }

    /// Row vector of coefficients of `x_i x_j` (1-based) in the entries of `φ_1`.
    pub fn p_vector(&self, i: usize, j: usize) -> Vec<Rational> {
        self.phi1
            .iter()
            .map(|p| quadratic_coeff(p, i - 1, j - 1))
            .collect()
    }

    /// Column of coefficients of `x_i x_j` (1-based) in the entries of `φ_{n-2}`.
    pub fn q_vector(&self, i: usize, j: usize) -> Vec<Rational> {
        self.phi_last
            .iter()
            .map(|p| quadratic_coeff(p, i - 1, j - 1))
            .collect()
    }

    /// `{a_1 … a_n}`.
    pub fn brace(&self, word: &IndexWord) -> Result<Rational> {
        if self.n < 4 {
            return Err(Error::InvalidInput("braces need n >= 4".into()));
        }
        self.check_word(word, self.n)?;
        let a = word.entries();
        let mut row = QMatrix::from_rows(vec![self.p_vector(a[0], a[1])]);
        for (r, &label) in a[2..self.n - 2].iter().enumerate() {
            row = row.mul(&self.interior[r][label - 1])?;
        }
        let col = self.q_vector(a[self.n - 2], a[self.n - 1]);
        Ok(row.row(0).iter().zip(&col).map(|(x, y)| x * y).sum())
    }

    /// `A(i,j) = ν({i,j,a,i} + {i,i,a,j})` with `ν` the sign of `a` as a
    /// permutation of the complement of `{i,j}`.
    pub fn a_form(&self, i: usize, j: usize, a: &[usize]) -> Result<Rational> {
        if i == j {
            return Err(Error::InvalidInput("A(i,j) needs i != j".into()));
        }
        let nu = permutation_sign(a, &complement(self.nvars(), &[i, j])).ok_or_else(|| {
            Error::InvalidInput(format!(
                "{a:?} is not an ordering of the complement of {{{i},{j}}}"
            ))
        })?;
        let first = self.brace(&IndexWord::concat(&[&[i, j], a, &[i]]))?;
        let second = self.brace(&IndexWord::concat(&[&[i, i], a, &[j]]))?;
        Ok(Rational::from(nu as i64) * (first + second))
    }

    /// For a word `a` with missing label `b`, the scalar `c` with
    /// `[a] = c · sign(a, b) · (x_b - x_{a_1} - x_{a_{n-2}}) x_b`, if any.
    pub fn key_lemma_ratio(&self, word: &IndexWord) -> Result<Option<Rational>> {
        let nv = self.nvars();
        let rest = complement(nv, word.entries());
        let full = IndexWord::concat(&[word.entries(), &rest]);
        let Some(sign) = (rest.len() == 1).then(|| full.sign()).flatten() else {
            return Err(Error::InvalidInput(format!(
                "{:?} does not omit exactly one label",
                word.entries()
            )));
        };
        let a = word.entries();
        let x = |i: usize| Polynomial::var(nv, i - 1);
        let b = rest[0];
        let model = x(b)
            .sub(&x(a[0]))
            .sub(&x(a[a.len() - 1]))
            .mul(&x(b))
            .scale(&Rational::from(sign as i64));
        Ok(proportionality(&self.bracket(word)?, &model))
    }
}

/// `μ` with `p = μ · model`, when `model` is nonzero and such a scalar exists.
pub fn proportionality(p: &Polynomial, model: &Polynomial) -> Option<Rational> {
    let (m, c) = model.leading()?;
    let mu = p.coeff(m) / c;
    (model.scale(&mu) == *p).then_some(mu)
}

pub fn bracket(f: &GradedFreeResolution, word: &IndexWord) -> Result<Polynomial> {
    Brackets::new(f)?.bracket(word)
}

pub fn double_bracket(f: &GradedFreeResolution, word: &IndexWord) -> Result<Polynomial> {
    Brackets::new(f)?.double_bracket(word)
}

pub fn omega(f: &GradedFreeResolution) -> Result<OmegaTensor> {
    Brackets::new(f)?.omega()
}

pub fn brace(f: &GradedFreeResolution, word: &IndexWord) -> Result<Rational> {
    Brackets::new(f)?.brace(word)
}

pub fn a_form(f: &GradedFreeResolution, i: usize, j: usize, a: &[usize]) -> Result<Rational> {
    Brackets::new(f)?.a_form(i, j, a)
}

/// The element `Σ x*_j ⊗ Ω_j` of `V* ⊗ S²V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaTensor {
    n: usize,
    #[serde(rename = "omega")]
    forms: Vec<Polynomial>,
}

impl OmegaTensor {
    pub fn new(n: usize, forms: Vec<Polynomial>) -> Result<Self> {
        if n < 3 || forms.len() != n - 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} forms for n = {n}",
                forms.len()
            )));
        }
        if let Some(j) = forms
            .iter()
            .position(|p| p.nvars() != n - 1 || !p.is_homogeneous_of_degree(2))
        {
            return Err(Error::InvalidInput(format!(
                "form {} is not a quadratic form in {} variables",
                j + 1,
                n - 1
            )));
        }
        Ok(OmegaTensor { n, forms })
    }

    /// `Ω_i = n x_i² - 2 x_i Σ_j x_j`.
    pub fn standard(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput("n must be at least 3".into()));
        }
        let nv = n - 1;
        let sum = (0..nv).fold(Polynomial::zero(nv), |s, j| s.add(&Polynomial::var(nv, j)));
        let forms = (0..nv)
            .map(|i| {
                let xi = Polynomial::var(nv, i);
                xi.mul(&xi)
                    .scale(&Rational::from(n as i64))
                    .sub(&xi.mul(&sum).scale(&Rational::from(2)))
            })
            .collect();
        OmegaTensor::new(n, forms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    /// `Ω_j` for 1-based `j`.
    pub fn form(&self, j: usize) -> &Polynomial {
        &self.forms[j - 1]
    }

    pub fn scale(&self, mu: &Rational) -> Self {
        OmegaTensor {
            n: self.n,
            forms: self.forms.iter().map(|p| p.scale(mu)).collect(),
        }
    }

    /// `∂²Ω_k/∂x_i∂x_j`, all indices 1-based.
    pub fn second_derivative(&self, k: usize, i: usize, j: usize) -> Rational {
        let c = quadratic_coeff(&self.forms[k - 1], i - 1, j - 1);
        if i == j {
            c * Rational::from(2)
        } else {
            c
        }
    }

    /// The GL action `Σ x*_j ⊗ Ω_j ↦ Σ (g·x*_j) ⊗ (g·Ω_j)`.
    pub fn act(&self, g: &QMatrix) -> Result<Self> {
        let nv = self.n - 1;
        if g.rows() != nv || g.cols() != nv {
            return Err(Error::DimensionMismatch(format!(
                "expected a {nv}x{nv} matrix"
            )));
        }
        let dual = g.inverse()?.transpose();
        let moved: Vec<Polynomial> = self
            .forms
            .iter()
            .map(|p| p.linear_substitution(g))
            .collect::<Result<_>>()?;
        let forms = (0..nv)
            .map(|i| {
                (0..nv)
                    .filter(|&j| !dual[(i, j)].is_zero())
                    .fold(Polynomial::zero(nv), |acc, j| {
                        acc.add(&moved[j].scale(&dual[(i, j)]))
                    })
            })
            .collect();
        OmegaTensor::new(self.n, forms)
    }

    /// `(det g)(g·Ω)`, the tensor of the transformed resolution.
    pub fn transformed(&self, g: &QMatrix) -> Result<Self> {
        let det = g.determinant()?;
        Ok(self.act(g)?.scale(&det))
    }

    /// `μ` with `self = μ · other`, if any; `μ` is nonzero unless `self` is zero.
    pub fn ratio_to(&self, other: &OmegaTensor) -> Option<Rational> {
        if self.n != other.n {
            return None;
        }
        let (k, _) = other.forms.iter().enumerate().find(|(_, p)| !p.is_zero())?;
        let mu = proportionality(&self.forms[k], &other.forms[k])?;
        self.forms
            .iter()
            .zip(&other.forms)
            .all(|(a, b)| b.scale(&mu) == *a)
            .then_some(mu)
    }

    pub fn is_zero(&self) -> bool {
        self.forms.iter().all(Polynomial::is_zero)
    }
}

impl Brackets {
    /// Every ratio from [`Brackets::key_lemma_ratio`] over distinct words,
    /// together with the common value when they agree.
    pub fn key_lemma_constant(&self, words: &[IndexWord]) -> Result<Option<Rational>> {
        let mut common: Option<Rational> = None;
        for w in words {
            match (self.key_lemma_ratio(w)?, &common) {
                (None, _) => return Ok(None),
                (Some(c), None) => common = Some(c),
                (Some(c), Some(prev)) if &c != prev => return Ok(None),
                _ => {}
            }
        }
        Ok(common.filter(|c| !c.is_zero()))
    }
}

/// All orderings of `labels`, in lexicographic order.
pub fn permutations(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = labels.to_vec();
    cur.sort_unstable();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len())
            .rev()
            .find(|&j| cur[j] > cur[i - 1])
            .expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Words `a_1 … a_{n-2}` of distinct labels from `1..=n-1`.
pub fn distinct_bracket_words(n: usize) -> Vec<IndexWord> {
    let nv = n - 1;
    (1..=nv)
        .flat_map(|b| {
            permutations(&complement(nv, &[b]))
                .into_iter()
                .map(IndexWord::new)
        })
        .collect()
}
