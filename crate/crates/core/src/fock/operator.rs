use std::io::{BufRead, Write};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A square real matrix stored row-wise as sorted `(column, value)` lists.
///
/// Exact zeros are never stored, so the sparsity pattern reflects the
/// selection rules of the operator.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    rows: Vec<Vec<(usize, f64)>>,
}

impl OperatorMatrix {
    pub fn zeros(dimension: usize) -> Self {
        Self {
            rows: vec![Vec::new(); dimension],
        }
    }

    /// Builds from unsorted triplets; duplicates are summed.
    pub fn from_triplets(
        dimension: usize,
        triplets: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Self {
        let mut rows = vec![Vec::new(); dimension];
        for (r, c, v) in triplets {
            assert!(
                r < dimension && c < dimension,
                "entry ({r}, {c}) out of range"
            );
            rows[r].push((c, v));
        }
        for row in &mut rows {
            row.sort_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0.0);
            *row = merged;
        }
        Self { rows }
    }

    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        assert_eq!(m.nrows(), m.ncols());
        let n = m.nrows();
        Self::from_triplets(
            n,
            (0..n).flat_map(|r| (0..n).map(move |c| (r, c, m[(r, c)]))),
        )
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dimension();
        let mut m = DMatrix::zeros(n, n);
        for (r, c, v) in self.entries() {
            m[(r, c)] = v;
        }
        m
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.rows[row]
            .binary_search_by_key(&col, |&(c, _)| c)
            .map_or(0.0, |k| self.rows[row][k].1)
    }

    pub fn row(&self, row: usize) -> &[(usize, f64)] {
        &self.rows[row]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dimension()).map(|i| self.get(i, i)).collect()
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.dimension(), self.entries().map(|(r, c, v)| (c, r, v)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dimension(), other.dimension());
        Self::from_triplets(self.dimension(), self.entries().chain(other.entries()))
    }

    /// max |M − Mᵀ| over all entries.
    pub fn symmetry_defect(&self) -> f64 {
        self.entries()
            .map(|(r, c, v)| (v - self.get(c, r)).abs())
            .fold(0.0, f64::max)
    }

    /// max |M − other| over all entries.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dimension(), other.dimension());
        self.entries()
            .map(|(r, c, v)| (v - other.get(r, c)).abs())
            .chain(other.entries().map(|(r, c, v)| (v - self.get(r, c)).abs()))
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dimension());
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, v)| v * x[c]).sum())
            .collect()
    }

    /// Writes the dimension on the first line, then one `row col value` line
    /// per stored entry. Values round-trip exactly.
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{}", self.dimension())?;
        for (r, c, v) in self.entries() {
            writeln!(w, "{r} {c} {v:e}")?;
        }
        Ok(())
    }

    pub fn read_dump<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedDump("empty input".into()))??;
        let dimension: usize = header
            .trim()
            .parse()
            .map_err(|_| Error::MalformedDump(format!("bad dimension line {header:?}")))?;
        let mut triplets = Vec::new();
        for (k, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = || Error::MalformedDump(format!("line {}: {line:?}", k + 2));
            let mut it = line.split_whitespace();
            let r: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let c: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let v: f64 = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            if it.next().is_some() || r >= dimension || c >= dimension {
                return Err(bad());
            }
            triplets.push((r, c, v));
        }
        Ok(Self::from_triplets(dimension, triplets))
    }
}
