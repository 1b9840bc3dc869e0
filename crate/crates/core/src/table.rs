//! Multiplication tables of rank-n algebras on a basis `1, α_1, …, α_{n-1}`,
//! their construction from Ω, shears, normalizations, traces and the
//! integral orders attached to an integral resolution.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::brackets::{complement, sign_q, Brackets, IndexWord, OmegaTensor};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rational::Rational;
use crate::report::Report;
use crate::resolution::GradedFreeResolution;

/// How the constants `c^k_ij` relate to the Hessians of the `Ω_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// `c^k_ij = ∂²Ω_k/∂x_i∂x_j`.
    Hessian,
    /// `c^k_ij = (1/2n) ∂²Ω_k/∂x_i∂x_j`.
    Bhargava,
}

impl Scale {
    pub fn factor(self, n: usize) -> Rational {
        match self {
            Scale::Hessian => Rational::one(),
            Scale::Bhargava => Rational::new(1, 2 * n as i64),
        }
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hessian" => Ok(Scale::Hessian),
            "bhargava" => Ok(Scale::Bhargava),
            _ => Err(Error::Parse(format!("unknown scale {s:?}"))),
        }
    }
}

/// Which normalization the basis satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisNote {
    TraceZero,
    Cyclic,
    Pairwise,
    /// Any other basis, e.g. after an arbitrary shear.
    Sheared,
}

/// Shear conventions reachable by [`MultiplicationTable::normalize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `c^2_12 = c^3_23 = … = c^1_{n-1,1} = 0`.
    Cyclic,
    /// `c^1_12 = c^2_12 = c^3_34 = c^4_34 = … = 0`, n odd.
    Pairwise,
    /// Every `α_k` has trace zero.
    TraceZero,
}

impl Normalization {
    pub fn note(self) -> BasisNote {
        match self {
            Normalization::Cyclic => BasisNote::Cyclic,
            Normalization::Pairwise => BasisNote::Pairwise,
            Normalization::TraceZero => BasisNote::TraceZero,
        }
    }
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(Normalization::Cyclic),
            "pairwise" => Ok(Normalization::Pairwise),
            "trace-zero" | "trace_zero" => Ok(Normalization::TraceZero),
            _ => Err(Error::Parse(format!("unknown normalization {s:?}"))),
        }
    }
}

/// The basis change `β_i = α_i + λ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShearTransform(Vec<Rational>);

impl ShearTransform {
    pub fn new(lambda: Vec<Rational>) -> Self {
        ShearTransform(lambda)
    }

    pub fn zero(nvars: usize) -> Self {
        ShearTransform(vec![Rational::zero(); nvars])
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn inverse(&self) -> Self {
        ShearTransform(self.0.iter().map(|x| -x).collect())
    }
}

/// Structure constants `α_i α_j = c^0_ij + Σ_k c^k_ij α_k`.
///
/// Storage is 0-based: `c0[i][j]` and `c[k][i][j]` hold `c^0_{i+1,j+1}`
/// and `c^{k+1}_{i+1,j+1}`; accessors take 1-based labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct MultiplicationTable {
    n: usize,
    c0: Vec<Vec<Rational>>,
    c: Vec<Vec<Vec<Rational>>>,
    basis_note: BasisNote,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<Scale>,
}

#[derive(Deserialize)]
struct RawTable {
    n: usize,
    c0: Vec<Vec<Rational>>,
    c: Vec<Vec<Vec<Rational>>>,
    basis_note: BasisNote,
    #[serde(default)]
    scale: Option<Scale>,
}

impl TryFrom<RawTable> for MultiplicationTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        Ok(MultiplicationTable::new(raw.n, raw.c0, raw.c)?.with_note(raw.basis_note, raw.scale))
    }
}

impl MultiplicationTable {
    pub fn new(n: usize, c0: Vec<Vec<Rational>>, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("tables need n >= 2".into()));
        }
        let nv = n - 1;
        let square = |m: &Vec<Vec<Rational>>| m.len() == nv && m.iter().all(|r| r.len() == nv);
        if !square(&c0) || c.len() != nv || !c.iter().all(square) {
            return Err(Error::DimensionMismatch(format!(
                "structure constants for n = {n} must be {nv}x{nv}"
            )));
        }
        let symmetric =
            |m: &Vec<Vec<Rational>>| (0..nv).all(|i| (0..i).all(|j| m[i][j] == m[j][i]));
        if !symmetric(&c0) || !c.iter().all(symmetric) {
            return Err(Error::InvalidInput(
                "structure constants must be symmetric in i, j".into(),
            ));
        }
        Ok(MultiplicationTable {
            n,
            c0,
            c,
            basis_note: BasisNote::Sheared,
            scale: None,
        })
    }

    /// Builds a table from 1-based constant functions `c0(i,j)` and `c(k,i,j)`.
    pub fn from_fn(
        n: usize,
        c0: impl Fn(usize, usize) -> Rational,
        c: impl Fn(usize, usize, usize) -> Rational,
    ) -> Result<Self> {
        let nv = n.saturating_sub(1);
        let c0 = (1..=nv)
            .map(|i| (1..=nv).map(|j| c0(i, j)).collect())
            .collect();
        let c = (1..=nv)
            .map(|k| {
                (1..=nv)
                    .map(|i| (1..=nv).map(|j| c(k, i, j)).collect())
                    .collect()
            })
            .collect();
        MultiplicationTable::new(n, c0, c)
    }

    pub fn with_note(mut self, note: BasisNote, scale: Option<Scale>) -> Self {
        self.basis_note = note;
        self.scale = scale;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n - 1
    }

    pub fn basis_note(&self) -> BasisNote {
        self.basis_note
    }

    pub fn scale(&self) -> Option<Scale> {
        self.scale
    }

    /// `c^0_ij`, 1-based.
    pub fn c0(&self, i: usize, j: usize) -> &Rational {
        &self.c0[i - 1][j - 1]
    }

    /// `c^k_ij`, 1-based.
    pub fn c(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.c[k - 1][i - 1][j - 1]
    }

    /// Coordinates of `β_a β_b` in the basis `β_0 = 1, β_1, …`.
    pub fn product(&self, a: usize, b: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        match (a, b) {
            (0, x) | (x, 0) => v[x] = Rational::one(),
            (i, j) => {
                v[0] = self.c0(i, j).clone();
                for k in 1..self.n {
                    v[k] = self.c(k, i, j).clone();
                }
            }
        }
        v
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coeff = xa * yb;
                for (o, p) in out.iter_mut().zip(self.product(a, b)) {
                    if !p.is_zero() {
                        *o += &coeff * &p;
                    }
                }
            }
        }
        out
    }

    fn basis_vector(&self, a: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        v[a] = Rational::one();
        v
    }

    /// Matrix of multiplication by `x`.
    pub fn left_matrix(&self, x: &[Rational]) -> QMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.n)
            .map(|b| self.mul(x, &self.basis_vector(b)))
            .collect();
        QMatrix::from_columns(&cols)
    }

    pub fn trace(&self, x: &[Rational]) -> Rational {
        let m = self.left_matrix(x);
        (0..self.n).map(|i| m[(i, i)].clone()).sum()
    }

    /// `Tr(β_k)` for the basis element `β_k` (`β_0 = 1`).
    pub fn basis_trace(&self, k: usize) -> Rational {
        if k == 0 {
            return Rational::from(self.n as i64);
        }
        (1..self.n).map(|j| self.c(j, k, j)).sum()
    }

    /// The first triple `(a,b,c)` of basis indices with
    /// `(β_a β_b) β_c ≠ β_a (β_b β_c)`.
    pub fn associativity_witness(&self) -> Option<[usize; 3]> {
        for a in 0..self.n {
            for b in 0..self.n {
                let ab = self.product(a, b);
                for c in 0..self.n {
                    let left = self.mul(&ab, &self.basis_vector(c));
                    let right = self.mul(&self.basis_vector(a), &self.product(b, c));
                    if left != right {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    /// `Σ_r (c^r_jk c^k_ri - c^r_ij c^k_rk)`, which equals `c^0_ij` for
    /// every `k ≠ i` in an associative table.
    pub fn c0_from_associativity(&self, i: usize, j: usize, k: usize) -> Rational {
        (1..self.n)
            .map(|r| self.c(r, j, k) * self.c(k, r, i) - self.c(r, i, j) * self.c(k, r, k))
            .sum()
    }

    /// First `(i,j,k)` where the associativity formula disagrees with `c^0_ij`.
    pub fn c0_witness(&self) -> Option<[usize; 3]> {
        let nv = self.nvars();
        for i in 1..=nv {
            for j in 1..=nv {
                for k in (1..=nv).filter(|&k| k != i) {
                    if &self.c0_from_associativity(i, j, k) != self.c0(i, j) {
                        return Some([i, j, k]);
                    }
                }
            }
        }
        None
    }

    /// First `k` with `Tr(α_k) ≠ 0`.
    pub fn trace_zero_witness(&self) -> Option<usize> {
        (1..self.n).find(|&k| !self.basis_trace(k).is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.c0
            .iter()
            .flatten()
            .chain(self.c.iter().flatten().flatten())
            .all(Rational::is_integer)
    }

    /// Gram matrix `Tr(β_a β_b)` on `1, β_1, …, β_{n-1}`.
    pub fn trace_form(&self) -> QMatrix {
        let traces: Vec<Rational> = (0..self.n).map(|k| self.basis_trace(k)).collect();
        QMatrix::from_fn(self.n, self.n, |a, b| {
            self.product(a, b)
                .iter()
                .zip(&traces)
                .map(|(x, t)| x * t)
                .sum()
        })
    }

    pub fn discriminant(&self) -> Rational {
        self.trace_form()
            .determinant()
            .expect("trace form is square")
    }

    /// The table on the basis `β_i = α_i + λ_i`.
    pub fn shear(&self, s: &ShearTransform) -> Result<Self> {
        let nv = self.nvars();
        if s.0.len() != nv {
            return Err(Error::DimensionMismatch(format!(
                "shear of length {} for {nv} basis elements",
                s.0.len()
            )));
        }
        let l = |i: usize| &s.0[i - 1];
        let delta = |a: usize, b: usize| {
            if a == b {
                Rational::one()
            } else {
                Rational::zero()
            }
        };
        let c = |k: usize, i: usize, j: usize| {
            self.c(k, i, j) + l(j) * delta(i, k) + l(i) * delta(j, k)
        };
        let c0 = |i: usize, j: usize| {
            let shift: Rational = (1..=nv).map(|k| self.c(k, i, j) * l(k)).sum();
            self.c0(i, j) - shift - l(i) * l(j)
        };
        let note = if s.is_zero() {
            self.basis_note
        } else {
            BasisNote::Sheared
        };
        Ok(MultiplicationTable::from_fn(self.n, c0, c)?.with_note(note, self.scale))
    }

    /// The table on the basis `t α_i`.
    pub fn rescaled(&self, t: &Rational) -> Self {
        let t2 = t * t;
        MultiplicationTable {
            n: self.n,
            c0: self
                .c0
                .iter()
                .map(|r| r.iter().map(|x| x * &t2).collect())
                .collect(),
            c: self
                .c
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|r| r.iter().map(|x| x * t).collect())
                        .collect()
                })
                .collect(),
            basis_note: self.basis_note,
            scale: None,
        }
    }

    /// The unique shear achieving `conv`, and the resulting table.
    pub fn normalize(&self, conv: Normalization) -> Result<(Self, ShearTransform)> {
        let nv = self.nvars();
        let mut lambda = vec![Rational::zero(); nv];
        match conv {
            Normalization::Cyclic => {
                // c'^{i+1}_{i,i+1} = c^{i+1}_{i,i+1} + λ_i
                for i in 1..=nv {
                    let next = i % nv + 1;
                    lambda[i - 1] = -self.c(next, i, next);
                }
            }
            Normalization::Pairwise => {
                if self.n % 2 == 0 {
                    return Err(Error::InvalidInput(format!(
                        "pairwise normalization needs n odd, got {}",
                        self.n
                    )));
                }
                for p in (1..=nv).step_by(2) {
                    lambda[p] = -self.c(p, p, p + 1);
                    lambda[p - 1] = -self.c(p + 1, p, p + 1);
                }
            }
            Normalization::TraceZero => {
                let n = Rational::from(self.n as i64);
                for k in 1..=nv {
                    lambda[k - 1] = -(self.basis_trace(k) / &n);
                }
            }
        }
        let s = ShearTransform(lambda);
        let t = self.shear(&s)?.with_note(conv.note(), self.scale);
        Ok((t, s))
    }

    /// The Table-1 combinations, which a shear leaves unchanged: for distinct
    /// `i,j,k`, the values `c^k_ij`, `c^j_ii`, `c^j_ij - c^k_ik` and
    /// `c^i_ii - c^j_ij - c^k_ik`.
    pub fn shear_invariants(&self) -> Vec<Rational> {
        let nv = self.nvars();
        let mut out = Vec::new();
        for i in 1..=nv {
            for j in (1..=nv).filter(|&j| j != i) {
                out.push(self.c(j, i, i).clone());
                for k in (1..=nv).filter(|&k| k != i && k != j) {
                    out.push(self.c(k, i, j).clone());
                    out.push(self.c(j, i, j) - self.c(k, i, k));
                    out.push(self.c(i, i, i) - self.c(j, i, j) - self.c(k, i, k));
                }
            }
        }
        out
    }
}

impl fmt::Display for MultiplicationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |a: usize| {
            if a == 0 {
                "1".to_string()
            } else {
                format!("a{a}")
            }
        };
        for i in 1..self.n {
            for j in i..self.n {
                let terms: Vec<String> = self
                    .product(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| {
                        if k == 0 {
                            x.to_string()
                        } else {
                            format!("{x}*{}", name(k))
                        }
                    })
                    .collect();
                let rhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                };
                writeln!(f, "{}*{} = {rhs}", name(i), name(j))?;
            }
        }
        Ok(())
    }
}

/// Table on the trace-zero basis with `c^k_ij = s ∂²Ω_k/∂x_i∂x_j`; the
/// `c^0_ij` are solved from associativity and cross-checked over every
/// admissible `k`.
pub fn structure_constants(om: &OmegaTensor, scale: Scale) -> Result<MultiplicationTable> {
    let n = om.n();
    let s = scale.factor(n);
    let zero_c0 = MultiplicationTable::from_fn(
        n,
        |_, _| Rational::zero(),
        |k, i, j| &s * &om.second_derivative(k, i, j),
    )?;
    let c0 = |i: usize, j: usize| {
        let k = if i == 1 { 2 } else { 1 };
        zero_c0.c0_from_associativity(i, j, k)
    };
    let table = MultiplicationTable::from_fn(n, c0, |k, i, j| zero_c0.c(k, i, j).clone());
    let table = match table {
        Ok(t) => t,
        Err(Error::InvalidInput(_)) => {
            return Err(Error::Inconsistent("recovered c0 is not symmetric".into()));
        }
        Err(e) => return Err(e),
    }
    .with_note(BasisNote::TraceZero, Some(scale));
    if let Some([i, j, k]) = table.c0_witness() {
        return Err(Error::Inconsistent(format!(
            "c0_{i}{j} depends on the choice k = {k}"
        )));
    }
    if let Some(w) = table.associativity_witness() {
        return Err(Error::Inconsistent(format!(
            "associativity fails for basis triple {w:?}"
        )));
    }
    Ok(table)
}

/// Associativity over all basis triples, the `c^0` formula for every
/// admissible `k`, and for trace-zero bases the trace identity.
pub fn verify_table(t: &MultiplicationTable) -> Report {
    let mut r = Report::new();
    r.check(
        "associativity",
        t.associativity_witness()
            .map_or(Ok(()), |w| Err(format!("basis triple {w:?}"))),
    );
    r.check(
        "c0",
        t.c0_witness()
            .map_or(Ok(()), |[i, j, k]| Err(format!("c0_{i}{j} with k = {k}"))),
    );
    if t.basis_note() == BasisNote::TraceZero {
        r.check(
            "trace-zero",
            t.trace_zero_witness()
                .map_or(Ok(()), |k| Err(format!("Tr(a{k}) != 0"))),
        );
    }
    r
}

/// `μ` with `c^k(t1) = μ c^k(t2)` and `c^0(t1) = μ² c^0(t2)`, i.e. `t1` is
/// `t2` on the basis `μ α_i`.
pub fn isomorphic_up_to_scalar(
    t1: &MultiplicationTable,
    t2: &MultiplicationTable,
) -> Option<Rational> {
    if t1.n() != t2.n() {
        return None;
    }
    let nv = t1.nvars();
    let triples =
        || (1..=nv).flat_map(move |k| (1..=nv).flat_map(move |i| (1..=nv).map(move |j| (k, i, j))));
    let mu = match triples().find(|&(k, i, j)| !t2.c(k, i, j).is_zero()) {
        Some((k, i, j)) => t1.c(k, i, j) / t2.c(k, i, j),
        None => {
            // no c^k at all: compare c0 up to a square
            return (t1 == t2).then(Rational::one);
        }
    };
    if mu.is_zero() {
        return None;
    }
    (t2.rescaled(&mu).c0 == t1.c0 && t2.rescaled(&mu).c == t1.c).then_some(mu)
}

/// `ε` for the word `lead, 1, …, (omitted), …, n-1`.
fn epsilon(nv: usize, lead: &[usize]) -> Rational {
    let word = IndexWord::concat(&[lead, &complement(nv, lead)]);
    sign_q(word.sign().expect("distinct labels"))
}

/// The signed brace identities expressing the Table-1 combinations of the
/// second derivatives of Ω for every distinct triple, plus the `A(i,j)`
/// relation, on a resolution with `n >= 4`.
pub fn table1_check(f: &GradedFreeResolution) -> Result<Report> {
    let n = f.n();
    if n < 4 {
        return Err(Error::InvalidInput("brace identities need n >= 4".into()));
    }
    let br = Brackets::new(f)?;
    let om = br.omega()?;
    let nv = n - 1;
    let two_n = Rational::from(2 * n as i64);
    let parity = |e: usize| sign_q(if e % 2 == 0 { 1 } else { -1 });
    let d = |k: usize, i: usize, j: usize| om.second_derivative(k, i, j);
    let brace = |parts: &[&[usize]]| br.brace(&IndexWord::concat(parts));
    let mut failures: [Option<String>; 5] = Default::default();
    let mut note = |slot: usize, lhs: Rational, rhs: Rational, what: String| {
        if lhs != rhs && failures[slot].is_none() {
            failures[slot] = Some(format!("{what}: {lhs} != {rhs}"));
        }
    };
    for i in 1..=nv {
        for j in (1..=nv).filter(|&j| j != i) {
            let rest_ij = complement(nv, &[i, j]);
            let e_ij = epsilon(nv, &[i, j]);
            let rhs = &e_ij * &two_n * brace(&[&[i, i], &rest_ij, &[i]])?;
            note(1, d(j, i, i), rhs, format!("(i,j) = ({i},{j})"));
            if n >= 5 {
                let lhs = d(i, i, i) - d(j, i, j) * Rational::from(2);
                let rhs = -(&e_ij * &two_n * br.a_form(i, j, &rest_ij)?);
                note(4, lhs, rhs, format!("(i,j) = ({i},{j})"));
            }
            for k in (1..=nv).filter(|&k| k != i && k != j) {
                let rest = complement(nv, &[i, j, k]);
                let e = epsilon(nv, &[i, j, k]);
                let rhs = parity(n + 1) * &e * &two_n * brace(&[&[i, i], &rest, &[j, j]])?;
                note(0, d(k, i, j), rhs, format!("(i,j,k) = ({i},{j},{k})"));
                let rhs = parity(n) * &e * &two_n * brace(&[&[i, i], &rest, &[j, k]])?;
                note(
                    2,
                    d(j, i, j) - d(k, i, k),
                    rhs,
                    format!("(i,j,k) = ({i},{j},{k})"),
                );
                let rhs = parity(n + 1) * &e * &two_n * brace(&[&[i, j], &rest, &[k, i]])?;
                note(
                    3,
                    d(i, i, i) - d(j, i, j) - d(k, i, k),
                    rhs,
                    format!("(i,j,k) = ({i},{j},{k})"),
                );
            }
        }
    }
    let names = ["mixed", "square", "difference", "diagonal", "a-form"];
    let mut r = Report::new();
    for (slot, name) in names.iter().enumerate() {
        if slot == 4 && n < 5 {
            continue;
        }
        r.check(*name, failures[slot].take().map_or(Ok(()), Err));
    }
    Ok(r)
}

/// The orders `B ⊂ B'` of an integral resolution.
#[derive(Clone, Debug, Serialize)]
pub struct Orders {
    /// Hessian constants on the trace-zero basis.
    pub b: MultiplicationTable,
    /// `(1/2n)`-Hessian constants after the normalization shear.
    pub b_prime: MultiplicationTable,
    pub shear: ShearTransform,
    pub disc_b: Rational,
    pub disc_b_prime: Rational,
    pub report: Report,
}

pub fn integral_orders(f: &GradedFreeResolution, conv: Normalization) -> Result<Orders> {
    let n = f.n();
    if n < 4 {
        return Err(Error::InvalidInput("orders are built for n >= 4".into()));
    }
    if !f.is_integral() {
        return Err(Error::InvalidInput(
            "resolution has non-integral coefficients".into(),
        ));
    }
    let om = Brackets::new(f)?.omega()?;
    let b = structure_constants(&om, Scale::Hessian)?;
    let (b_prime, shear) = structure_constants(&om, Scale::Bhargava)?.normalize(conv)?;
    let mut report = Report::new();
    report.check(
        "B integral",
        if b.is_integral() {
            Ok(())
        } else {
            Err("non-integral constant".into())
        },
    );
    report.extend("B ", verify_table(&b));
    if !b_prime.is_integral() {
        return Err(Error::Inconsistent(
            "normalized (1/2n)-Hessian table is not integral".into(),
        ));
    }
    report.pass("B' integral");
    report.extend("B' ", verify_table(&b_prime));
    let disc_b = b.discriminant();
    let disc_b_prime = b_prime.discriminant();
    let ratio = Rational::from(2 * n as i64).pow(2 * (n as u32 - 1));
    report.check(
        "discriminant ratio",
        if disc_b == &ratio * &disc_b_prime {
            Ok(())
        } else {
            Err(format!("disc(B) = {disc_b}, disc(B') = {disc_b_prime}"))
        },
    );
    Ok(Orders {
        b,
        b_prime,
        shear,
        disc_b,
        disc_b_prime,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Configuration;
    use crate::rational::q;
    use crate::resolution::build_resolution;

    /// Standard Hessian table from the closed-form Ω.
    fn standard_table(n: usize) -> MultiplicationTable {
        structure_constants(&OmegaTensor::standard(n).unwrap(), Scale::Hessian).unwrap()
    }

    #[test]
    fn standard_hessian_constants() {
        for n in 3..=6 {
            let t = standard_table(n);
            let nn = n as i64;
            for i in 1..n {
                for j in 1..n {
                    let c0 = if i == j { 4 * (nn - 1) } else { -4 };
                    assert_eq!(t.c0(i, j), &q(c0, 1), "n={n} c0_{i}{j}");
                    if i != j {
                        assert_eq!(t.c(i, i, j), &q(-2, 1));
                    }
                }
                assert_eq!(t.c(i, i, i), &q(2 * nn - 4, 1));
            }
            assert!(verify_table(&t).passed());
        }
    }

    #[test]
    fn perturbation_is_caught() {
        let t = standard_table(4);
        let mut c = t.c.clone();
        c[2][0][1] += q(1, 1);
        c[2][1][0] += q(1, 1);
        let bad = MultiplicationTable::new(4, t.c0.clone(), c).unwrap();
        let r = verify_table(&bad);
        assert!(!r.get("associativity").unwrap().passed);
        assert!(isomorphic_up_to_scalar(&t, &bad).is_none());
        assert_eq!(isomorphic_up_to_scalar(&t, &t), Some(q(1, 1)));
    }

    #[test]
    fn shears_round_trip_and_keep_invariants() {
        let t = standard_table(5);
        let s = ShearTransform::new(vec![q(1, 2), q(-3, 1), q(0, 1), q(7, 5)]);
        let u = t.shear(&s).unwrap();
        assert_eq!(u.basis_note(), BasisNote::Sheared);
        assert_eq!(u.shear_invariants(), t.shear_invariants());
        assert_eq!(u.discriminant(), t.discriminant());
        assert!(verify_table(&u).passed());
        let back = u.shear(&s.inverse()).unwrap();
        assert_eq!(back.c0, t.c0);
        assert_eq!(back.c, t.c);
        assert_eq!(t.shear(&ShearTransform::zero(4)).unwrap(), t);
    }

    #[test]
    fn shear_matches_direct_basis_change() {
        // oracle: multiply the new basis vectors inside the old table
        let t = standard_table(4);
        let lambda = [q(2, 1), q(-1, 3), q(5, 1)];
        let u = t.shear(&ShearTransform::new(lambda.to_vec())).unwrap();
        let beta = |i: usize| {
            let mut v = vec![q(0, 1); 4];
            v[0] = lambda[i - 1].clone();
            v[i] = q(1, 1);
            v
        };
        for i in 1..4 {
            for j in 1..4 {
                let mut expect = vec![u.c0(i, j).clone()];
                let mut direct = t.mul(&beta(i), &beta(j));
                for k in 1..4 {
                    expect.push(u.c(k, i, j).clone());
                    // β_k = α_k + λ_k, so the constant absorbs λ_k
                    direct[0] = &direct[0] - &(u.c(k, i, j) * &lambda[k - 1]);
                }
                assert_eq!(expect[1..], direct[1..]);
                assert_eq!(expect[0], direct[0]);
            }
        }
    }

    #[test]
    fn normalizations() {
        let t = standard_table(5);
        let (c, _) = t.normalize(Normalization::Cyclic).unwrap();
        for i in 1..5 {
            let next = i % 4 + 1;
            assert!(c.c(next, i, next).is_zero());
        }
        let (p, _) = t.normalize(Normalization::Pairwise).unwrap();
        for (a, b) in [(1, 2), (3, 4)] {
            assert!(p.c(a, a, b).is_zero() && p.c(b, a, b).is_zero());
        }
        let (z, s) = t.normalize(Normalization::TraceZero).unwrap();
        assert!(s.is_zero());
        assert_eq!(z.basis_note(), BasisNote::TraceZero);
        assert!(standard_table(6)
            .normalize(Normalization::Pairwise)
            .is_err());
        let (back, _) = c.normalize(Normalization::TraceZero).unwrap();
        assert_eq!(back.c, t.c);
    }

    #[test]
    fn cubic_bhargava_system() {
        // Ω of f = a x^3 + b x^2 y + c x y^2 + d y^3
        let (a, b, c, d) = (2i64, -3, 5, 7);
        let om = OmegaTensor::new(
            3,
            vec![
                crate::poly::Polynomial::from_terms(
                    2,
                    [
                        (crate::poly::Monomial::new(vec![2, 0]), q(-b, 1)),
                        (crate::poly::Monomial::new(vec![1, 1]), q(-2 * c, 1)),
                        (crate::poly::Monomial::new(vec![0, 2]), q(-3 * d, 1)),
                    ],
                ),
                crate::poly::Polynomial::from_terms(
                    2,
                    [
                        (crate::poly::Monomial::new(vec![2, 0]), q(3 * a, 1)),
                        (crate::poly::Monomial::new(vec![1, 1]), q(2 * b, 1)),
                        (crate::poly::Monomial::new(vec![0, 2]), q(c, 1)),
                    ],
                ),
            ],
        )
        .unwrap();
        let t = structure_constants(&om, Scale::Bhargava).unwrap();
        assert_eq!(t.c(2, 1, 1), &q(a, 1));
        assert_eq!(t.c(1, 1, 1) - t.c(2, 1, 2) * q(2, 1), q(-b, 1));
        assert_eq!(t.c(2, 2, 2) - t.c(1, 1, 2) * q(2, 1), q(c, 1));
        assert_eq!(t.c(1, 2, 2), &q(-d, 1));
    }

    #[test]
    fn table1_on_small_standard_resolutions() {
        for n in 4..=6 {
            let f = build_resolution(&Configuration::standard(n).unwrap()).unwrap();
            let r = table1_check(&f).unwrap();
            assert!(r.passed(), "n = {n}:\n{r}");
        }
    }

    #[test]
    fn orders_of_standard_five_points() {
        let f = build_resolution(&Configuration::standard(5).unwrap())
            .unwrap()
            .integralize();
        let o = integral_orders(&f, Normalization::Cyclic).unwrap();
        assert!(o.report.passed(), "{}", o.report);
        assert_eq!(o.disc_b, &o.disc_b_prime * &q(100_000_000, 1));
    }

    #[test]
    fn json_round_trip() {
        let t = standard_table(4);
        let text = serde_json::to_string(&t).unwrap();
        assert!(text.contains("\"basis_note\":\"trace-zero\""));
        assert!(text.contains("\"scale\":\"hessian\""));
        let back: MultiplicationTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        let broken = text.replacen("\"n\":4", "\"n\":5", 1);
        assert!(serde_json::from_str::<MultiplicationTable>(&broken).is_err());
    }
}
