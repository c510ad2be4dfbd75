use nalgebra::{DMatrix, SymmetricEigen};

use super::basis::FockBasis;
use super::operator::OperatorMatrix;
use crate::error::{Error, Result};
use crate::types::{Eigenpair, QuasiParticleState};

/// Connected components of the sparsity graph, each sorted ascending.
fn blocks(m: &OperatorMatrix) -> Vec<Vec<usize>> {
    let n = m.dimension();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut block = Vec::new();
        while let Some(i) = stack.pop() {
            block.push(i);
            for &(j, _) in m.row(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        block.sort_unstable();
        out.push(block);
    }
    out
}

/// The `k` lowest eigenpairs of a symmetric matrix, ascending.
///
/// The matrix is split into the connected blocks of its sparsity pattern and
/// each block is solved densely. Ties are broken by block order, so the
/// output is deterministic.
pub fn diagonalize(m: &OperatorMatrix, k: usize) -> Result<Vec<Eigenpair>> {
    let n = m.dimension();
    if k == 0 || k > n {
        return Err(Error::InvalidEigenCount {
            requested: k,
            dimension: n,
        });
    }
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    let mut solved = Vec::new();
    for (b, block) in blocks(m).into_iter().enumerate() {
        let local = |g: usize| {
            block
                .binary_search(&g)
                .expect("block is closed under the pattern")
        };
        let mut dense = DMatrix::zeros(block.len(), block.len());
        for (li, &gi) in block.iter().enumerate() {
            for &(gj, v) in m.row(gi) {
                dense[(li, local(gj))] = v;
            }
        }
        let eig = SymmetricEigen::try_new(dense, f64::EPSILON, 100 * block.len().max(10))
            .ok_or_else(|| Error::EigenNotConverged {
                residuals: vec![f64::NAN],
            })?;
        candidates.extend(eig.eigenvalues.iter().enumerate().map(|(j, &e)| (e, b, j)));
        solved.push((block, eig));
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let scale = m
        .entries()
        .map(|(_, _, v)| v.abs())
        .fold(0.0, f64::max)
        .max(1.0);
    let mut pairs = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for &(value, b, j) in &candidates[..k] {
        let (block, eig) = &solved[b];
        let mut vector = vec![0.0; n];
        for (li, &gi) in block.iter().enumerate() {
            vector[gi] = eig.eigenvectors[(li, j)];
        }
        let hv = m.apply(&vector);
        residuals.push(
            hv.iter()
                .zip(&vector)
                .map(|(h, x)| (h - value * x).powi(2))
                .sum::<f64>()
                .sqrt(),
        );
        pairs.push(Eigenpair { value, vector });
    }
    if !residuals.iter().all(|&r| r <= 1e-10 * scale) {
        return Err(Error::EigenNotConverged { residuals });
    }
    Ok(pairs)
}

/// Squared overlap `|⟨n1, n2|v⟩|²` of an eigenvector with a basis state.
pub fn overlap_with_basis_state(
    pair: &Eigenpair,
    basis: &FockBasis,
    state: QuasiParticleState,
) -> f64 {
    basis.index(state).map_or(0.0, |i| pair.vector[i].powi(2))
}
