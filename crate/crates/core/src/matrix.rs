//! Dense matrices over a cyclotomic field, with exact rank and order.
//!
//! Every matrix stores a single ambient conductor and all entries embedded at
//! that conductor, so structural equality and hashing are canonical. Mixed
//! conductors unify to the lcm on construction and on arithmetic.

use std::fmt;

use crate::cyclo::{lcm_u64, CyclotomicNumber, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloMatrix {
    n_rows: usize,
    n_cols: usize,
    conductor: u64,
    entries: Vec<CyclotomicNumber>,
}

impl CycloMatrix {
    pub fn from_rows(rows: Vec<Vec<CyclotomicNumber>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map(|r| r.len()).unwrap_or(0);
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::Schema("matrix must be nonempty".into()));
        }
        let mut conductor = 1u64;
        for row in &rows {
            if row.len() != n_cols {
                return Err(Error::Schema("ragged matrix rows".into()));
            }
            for e in row {
                conductor = lcm_u64(conductor, e.conductor());
            }
        }
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            for e in row {
                entries.push(e.embed(conductor)?);
            }
        }
        Ok(Self {
            n_rows,
            n_cols,
            conductor,
            entries,
        })
    }

    pub fn identity(n: usize, conductor: u64) -> Result<Self> {
        let mut m = Self::zeros(n, n, conductor)?;
        for i in 0..n {
            *m.entry_mut(i, i) = CyclotomicNumber::one(conductor)?;
        }
        Ok(m)
    }

    pub fn zeros(n_rows: usize, n_cols: usize, conductor: u64) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::Schema("matrix must be nonempty".into()));
        }
        let zero = CyclotomicNumber::zero(conductor)?;
        Ok(Self {
            n_rows,
            n_cols,
            conductor,
            entries: vec![zero; n_rows * n_cols],
        })
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(diag: Vec<CyclotomicNumber>) -> Result<Self> {
        let n = diag.len();
        let conductor = diag
            .iter()
            .fold(1u64, |m, e| lcm_u64(m, e.conductor()));
        let mut out = Self::zeros(n, n, conductor)?;
        for (i, e) in diag.into_iter().enumerate() {
            *out.entry_mut(i, i) = e.embed(conductor)?;
        }
        Ok(out)
    }

    /// Permutation matrix sending basis vector j to basis vector sigma[j].
    pub fn permutation(sigma: &[usize], conductor: u64) -> Result<Self> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &img in sigma {
            if img >= n || seen[img] {
                return Err(Error::Schema("not a permutation".into()));
            }
            seen[img] = true;
        }
        let mut out = Self::zeros(n, n, conductor)?;
        for (j, &img) in sigma.iter().enumerate() {
            *out.entry_mut(img, j) = CyclotomicNumber::one(conductor)?;
        }
        Ok(out)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn entry(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.n_cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut CyclotomicNumber {
        &mut self.entries[i * self.n_cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                let e = self.entry(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Raises the ambient conductor; target must be a multiple.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if target == self.conductor {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            conductor: target,
            entries,
        })
    }

    fn unify(&self, other: &Self) -> Result<(Self, Self)> {
        if self.conductor == other.conductor {
            return Ok((self.clone(), other.clone()));
        }
        let m = lcm_u64(self.conductor, other.conductor);
        Ok((self.embed(m)?, other.embed(m)?))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n_cols != other.n_rows {
            return Err(Error::DimensionMismatch(
                self.n_rows,
                self.n_cols,
                other.n_rows,
                other.n_cols,
            ));
        }
        let (a, b) = self.unify(other)?;
        let mut out = Self::zeros(a.n_rows, b.n_cols, a.conductor)?;
        for i in 0..a.n_rows {
            for k in 0..a.n_cols {
                let aik = a.entry(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..b.n_cols {
                    let bkj = b.entry(k, j);
                    if bkj.is_zero() {
                        continue;
                    }
                    let prod = aik.mul(bkj)?;
                    let cur = out.entry(i, j).add(&prod)?;
                    *out.entry_mut(i, j) = cur;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
            return Err(Error::DimensionMismatch(
                self.n_rows,
                self.n_cols,
                other.n_rows,
                other.n_cols,
            ));
        }
        let (a, b) = self.unify(other)?;
        let mut out = a.clone();
        for idx in 0..out.entries.len() {
            out.entries[idx] = a.entries[idx].add(&b.entries[idx])?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale_rational(&crate::cyclo::rational_int(-1)))
    }

    pub fn scale(&self, factor: &CyclotomicNumber) -> Result<Self> {
        let m = lcm_u64(self.conductor, factor.conductor());
        let a = self.embed(m)?;
        let f = factor.embed(m)?;
        let mut out = a.clone();
        for e in &mut out.entries {
            *e = e.mul(&f)?;
        }
        Ok(out)
    }

    pub fn scale_rational(&self, factor: &Rational) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.scale(factor);
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.n_cols {
            for i in 0..self.n_rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        Self {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            conductor: self.conductor,
            entries,
        }
    }

    pub fn conjugate_transpose(&self) -> Self {
        let mut out = self.transpose();
        for e in &mut out.entries {
            *e = e.conjugate();
        }
        out
    }

    pub fn is_unitary(&self) -> Result<bool> {
        if !self.is_square() {
            return Ok(false);
        }
        Ok(self.mul(&self.conjugate_transpose())?.is_identity())
    }

    pub fn trace(&self) -> Result<CyclotomicNumber> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.n_rows,
                cols: self.n_cols,
            });
        }
        let mut acc = CyclotomicNumber::zero(self.conductor)?;
        for i in 0..self.n_rows {
            acc = acc.add(self.entry(i, i))?;
        }
        Ok(acc)
    }

    /// Multiplicative order by repeated multiplication, bounded by `cap`.
    pub fn order(&self, cap: u64) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.n_rows,
                cols: self.n_cols,
            });
        }
        let mut acc = self.clone();
        let mut k = 1u64;
        while !acc.is_identity() {
            if k >= cap {
                return Err(Error::OrderExceedsCap { cap });
            }
            acc = acc.mul(self)?;
            k += 1;
        }
        Ok(k)
    }

    /// Row rank by Gaussian elimination over the cyclotomic field.
    pub fn rank(&self) -> Result<usize> {
        let mut rows: Vec<Vec<CyclotomicNumber>> = (0..self.n_rows)
            .map(|i| (0..self.n_cols).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut rank = 0usize;
        for col in 0..self.n_cols {
            let pivot = match (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) {
                Some(p) => p,
                None => continue,
            };
            rows.swap(rank, pivot);
            let inv = rows[rank][col].inverse()?;
            for r in rank + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].mul(&inv)?;
                for c in col..self.n_cols {
                    let delta = factor.mul(&rows[rank][c])?;
                    rows[r][c] = rows[r][c].sub(&delta)?;
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        Ok(rank)
    }

    /// Dimension of the null space, cols minus rank.
    pub fn kernel_rank(&self) -> Result<usize> {
        Ok(self.n_cols - self.rank()?)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[CycloMatrix]) -> Result<Self> {
        let first = blocks.first().ok_or_else(|| {
            Error::Schema("vstack requires at least one block".into())
        })?;
        let n_cols = first.n_cols;
        let mut conductor = 1u64;
        for b in blocks {
            if b.n_cols != n_cols {
                return Err(Error::DimensionMismatch(
                    first.n_rows,
                    first.n_cols,
                    b.n_rows,
                    b.n_cols,
                ));
            }
            conductor = lcm_u64(conductor, b.conductor);
        }
        let mut entries = Vec::new();
        let mut n_rows = 0;
        for b in blocks {
            let e = b.embed(conductor)?;
            entries.extend(e.entries);
            n_rows += b.n_rows;
        }
        Ok(Self {
            n_rows,
            n_cols,
            conductor,
            entries,
        })
    }
}

impl fmt::Debug for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycloMatrix {}x{} over Q(z{})", self.n_rows, self.n_cols, self.conductor)?;
        for i in 0..self.n_rows {
            let row: Vec<String> = (0..self.n_cols).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
