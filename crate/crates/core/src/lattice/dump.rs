use std::io::{Read, Write};

use super::grid::GridConfig;
use crate::error::{Error, Result};
use crate::types::Eigenpair;

/// Contents of an eigenvector dump.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorDump {
    pub points_per_dim: usize,
    pub half_width: f64,
    pub vectors: Vec<Vec<f64>>,
}

/// Little-endian layout: `n: u64`, `L: f64`, `count: u64`, then `count`
/// vectors of `n²` `f64` values each, row-major in `(i1, i2)`.
pub fn write_eigenvectors<W: Write>(mut w: W, grid: GridConfig, pairs: &[Eigenpair]) -> Result<()> {
    let n = grid.points_per_dim();
    w.write_all(&(n as u64).to_le_bytes())?;
    w.write_all(&grid.half_width().to_le_bytes())?;
    w.write_all(&(pairs.len() as u64).to_le_bytes())?;
    for p in pairs {
        if p.vector.len() != n * n {
            return Err(Error::MalformedDump(format!(
                "vector of length {} on a {n}x{n} grid",
                p.vector.len()
            )));
        }
        for v in &p.vector {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_eigenvectors<R: Read>(mut r: R) -> Result<EigenvectorDump> {
    let mut word = [0u8; 8];
    let mut next = |r: &mut R| -> Result<[u8; 8]> {
        r.read_exact(&mut word)
            .map_err(|e| Error::MalformedDump(e.to_string()))?;
        Ok(word)
    };
    let n = u64::from_le_bytes(next(&mut r)?) as usize;
    let half_width = f64::from_le_bytes(next(&mut r)?);
    let count = u64::from_le_bytes(next(&mut r)?) as usize;
    let len = n
        .checked_mul(n)
        .ok_or_else(|| Error::MalformedDump(format!("grid size {n}")))?;
    let mut vectors = Vec::with_capacity(count.min(1024));
    for _ in 0..count {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(f64::from_le_bytes(next(&mut r)?));
        }
        vectors.push(v);
    }
    let mut rest = Vec::new();
    r.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        return Err(Error::MalformedDump(format!(
            "{} trailing bytes",
            rest.len()
        )));
    }
    Ok(EigenvectorDump {
        points_per_dim: n,
        half_width,
        vectors,
    })
}
