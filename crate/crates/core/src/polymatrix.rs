//! Matrices with polynomial entries.

use std::fmt;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Row-major matrix of polynomials in a common number of variables.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries: vec![Polynomial::zero(nvars); rows * cols],
        }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged polynomial matrix".into()));
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        if let Some(p) = entries.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::DimensionMismatch(format!(
                "entry in {} variables, expected {nvars}",
                p.nvars()
            )));
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            nvars,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                assert_eq!(
                    p.nvars(),
                    nvars,
                    "entry ({i},{j}) has wrong number of variables"
                );
                entries.push(p);
            }
        }
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries,
        }
    }

    /// Constant matrix viewed as polynomials.
    pub fn from_constant(m: &QMatrix, nvars: usize) -> Self {
        PolyMatrix::from_fn(m.rows(), m.cols(), nvars, |i, j| {
            Polynomial::constant(nvars, m[(i, j)].clone())
        })
    }

    pub fn row_vector(nvars: usize, entries: Vec<Polynomial>) -> Result<Self> {
        PolyMatrix::from_rows(nvars, vec![entries])
    }

    pub fn column_vector(nvars: usize, entries: Vec<Polynomial>) -> Result<Self> {
        PolyMatrix::from_rows(nvars, entries.into_iter().map(|p| vec![p]).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        assert!(
            i < self.rows && j < self.cols,
            "entry ({i},{j}) out of range"
        );
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert!(
            i < self.rows && j < self.cols,
            "entry ({i},{j}) out of range"
        );
        assert_eq!(p.nvars(), self.nvars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn map(&self, f: impl FnMut(&Polynomial) -> Polynomial) -> Self {
        self.with_entries(self.entries.iter().map(f).collect())
    }

    fn with_entries(&self, entries: Vec<Polynomial>) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries,
        }
    }

    pub fn transpose(&self) -> Self {
        PolyMatrix::from_fn(self.cols, self.rows, self.nvars, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(Polynomial::neg)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(self.with_entries(entries))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(self.with_entries(entries))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols, self.nvars) != (other.rows, other.cols, other.nvars) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Product with a constant matrix on the right.
    pub fn mul_constant(&self, m: &QMatrix) -> Result<Self> {
        self.mul(&PolyMatrix::from_constant(m, self.nvars))
    }

    /// Entrywise partial derivative in the variable with 0-based index `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange(format!(
                "variable {var} of {}",
                self.nvars
            )));
        }
        let entries = self
            .entries
            .iter()
            .map(|p| p.derivative(var))
            .collect::<Result<_>>()?;
        Ok(self.with_entries(entries))
    }

    pub fn linear_substitution(&self, g: &QMatrix) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.linear_substitution(g))
            .collect::<Result<_>>()?;
        Ok(self.with_entries(entries))
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.entries.iter().all(|p| p.is_homogeneous_of_degree(d))
    }

    /// The matrix of constants, if every entry is constant.
    pub fn to_constant(&self) -> Option<QMatrix> {
        if self
            .entries
            .iter()
            .any(|p| p.total_degree().is_some_and(|d| d > 0))
        {
            return None;
        }
        Some(QMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).constant_term()
        }))
    }

    /// Position of the first entry with a nonzero constant term.
    pub fn first_constant_entry(&self) -> Option<(usize, usize)> {
        (0..self.entries.len())
            .find(|&k| !self.entries[k].constant_term().is_zero())
            .map(|k| (k / self.cols, k % self.cols))
    }

    /// Position of the first nonzero entry.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|p| !p.is_zero())
            .map(|k| (k / self.cols, k % self.cols))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Serialize for PolyMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Polynomial>>::deserialize(d)?;
        let nvars = rows
            .first()
            .and_then(|r| r.first())
            .map(Polynomial::nvars)
            .ok_or_else(|| D::Error::custom("empty polynomial matrix"))?;
        PolyMatrix::from_rows(nvars, rows).map_err(D::Error::custom)
    }
}
