use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hamiltonian::{
    half_line_kinetic_diag, LatticeHamiltonian, Parity, Sector, SectorOperator,
};
use crate::error::{Error, Result};
use crate::types::Eigenpair;

/// Knobs for [`solve_lowest`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Seed of the Krylov starting vectors.
    pub seed: u64,
    /// Required `‖Hv − Ev‖ / |E|` for every returned pair.
    pub tolerance: f64,
    /// Relative residual of the inner linear solves.
    pub inner_tolerance: f64,
    /// Krylov basis size limit per sector.
    pub max_basis: usize,
    pub max_inner_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            tolerance: 1e-8,
            inner_tolerance: 1e-9,
            max_basis: 240,
            max_inner_iterations: 500,
        }
    }
}

/// Spectral decomposition of one half-line operator `T + u(x)`.
struct HalfLine {
    q: DMatrix<f64>,
    qt: DMatrix<f64>,
    mu: Vec<f64>,
}

impl HalfLine {
    fn new(h: &LatticeHamiltonian, parity: Parity) -> Self {
        let g = h.grid();
        let m = g.points_per_dim() / 2;
        let a2 = g.spacing().powi(2);
        let mut t = DMatrix::zeros(m, m);
        for i in 0..m {
            t[(i, i)] =
                half_line_kinetic_diag(i, parity, a2) + h.potential().separable(g.node(m + i));
            if i + 1 < m {
                t[(i, i + 1)] = -0.5 / a2;
                t[(i + 1, i)] = -0.5 / a2;
            }
        }
        let eig = SymmetricEigen::new(t);
        Self {
            qt: eig.eigenvectors.transpose(),
            q: eig.eigenvectors,
            mu: eig.eigenvalues.iter().copied().collect(),
        }
    }
}

/// `(T1 + u(x1)) ⊕ (T2 + u(x2))`, inverted through its eigenbasis.
struct Preconditioner {
    first: HalfLine,
    second: HalfLine,
    work: DMatrix<f64>,
    work2: DMatrix<f64>,
}

impl Preconditioner {
    fn new(h: &LatticeHamiltonian, sector: Sector) -> Self {
        let m = h.grid().points_per_dim() / 2;
        Self {
            first: HalfLine::new(h, sector.p1),
            second: HalfLine::new(h, sector.p2),
            work: DMatrix::zeros(m, m),
            work2: DMatrix::zeros(m, m),
        }
    }

    fn apply(&mut self, r: &[f64], z: &mut [f64]) {
        let m = self.first.mu.len();
        // column-major view of the row-major vector: X[(i2, i1)] = r[i1 m + i2]
        let x = nalgebra::DMatrixView::from_slice(r, m, m);
        self.work.gemm(1.0, &self.second.qt, &x, 0.0);
        self.work2.gemm(1.0, &self.work, &self.first.q, 0.0);
        for a in 0..m {
            for b in 0..m {
                self.work2[(b, a)] /= self.first.mu[a] + self.second.mu[b];
            }
        }
        self.work.gemm(1.0, &self.second.q, &self.work2, 0.0);
        let mut out = nalgebra::DMatrixViewMut::from_slice(z, m, m);
        out.gemm(1.0, &self.work, &self.first.qt, 0.0);
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(y, x)| *y += alpha * x);
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    n
}

/// Preconditioned conjugate gradients for `H x = b`.
fn pcg(
    op: &SectorOperator,
    pre: &mut Preconditioner,
    b: &[f64],
    tol: f64,
    max_iter: usize,
) -> Vec<f64> {
    let n = b.len();
    let bnorm = dot(b, b).sqrt();
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut z = vec![0.0; n];
    let mut q = vec![0.0; n];
    pre.apply(&r, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    for _ in 0..max_iter {
        op.apply(&p, &mut q);
        let alpha = rz / dot(&p, &q);
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &q, &mut r);
        if dot(&r, &r).sqrt() <= tol * bnorm {
            break;
        }
        pre.apply(&r, &mut z);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        p.iter_mut().zip(&z).for_each(|(p, z)| *p = z + beta * *p);
    }
    x
}

fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for v in basis {
            let c = dot(w, v);
            axpy(-c, v, w);
        }
    }
}

struct SectorSolve {
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    residuals: Vec<f64>,
}

/// Lowest `k` eigenpairs of one sector.
///
/// The subspace is grown by inverse iteration (`w = H⁻¹ v`, solved by PCG) and
/// orthogonalized against all previous directions, which spans the Krylov
/// space of `H⁻¹`. Ritz pairs come from a Rayleigh–Ritz projection of `H`
/// itself and are accepted on their true residuals.
fn solve_sector(
    h: &LatticeHamiltonian,
    sector: Sector,
    k: usize,
    opts: &SolverOptions,
) -> Result<SectorSolve> {
    let op = h.sector(sector);
    let dim = op.dimension();
    let k = k.min(dim);
    let mut pre = Preconditioner::new(h, sector);
    let sector_id = Sector::ALL
        .iter()
        .position(|s| *s == sector)
        .expect("known sector") as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (sector_id << 32));
    let mut random_vector = |basis: &[Vec<f64>]| {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() - 0.5).collect();
        orthogonalize(&mut v, basis);
        normalize(&mut v);
        v
    };

    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut images: Vec<Vec<f64>> = Vec::new();
    let mut gram: Vec<Vec<f64>> = Vec::new();
    let mut v = random_vector(&basis);
    let max_basis = opts.max_basis.min(dim);
    let mut last = None;
    loop {
        let mut hv = vec![0.0; dim];
        op.apply(&v, &mut hv);
        let row: Vec<f64> = basis.iter().map(|b| dot(b, &hv)).collect();
        gram.push(row);
        let diag = dot(&v, &hv);
        gram.last_mut().expect("just pushed").push(diag);
        basis.push(v);
        images.push(hv);

        let size = basis.len();
        if size >= k && ((size - k).is_multiple_of(4) || size == max_basis) {
            let solve = rayleigh_ritz(&basis, &images, &gram, k);
            let ok = solve
                .values
                .iter()
                .zip(&solve.residuals)
                .all(|(e, r)| *r < opts.tolerance * e.abs());
            if ok {
                return Ok(solve);
            }
            last = Some(solve);
        }
        if size == max_basis {
            let residuals = last.map(|s| s.residuals).unwrap_or_default();
            return Err(Error::EigenNotConverged { residuals });
        }

        let mut w = pcg(
            &op,
            &mut pre,
            basis.last().expect("nonempty"),
            opts.inner_tolerance,
            opts.max_inner_iterations,
        );
        let before = dot(&w, &w).sqrt();
        orthogonalize(&mut w, &basis);
        let norm = dot(&w, &w).sqrt();
        // an invariant subspace was found; continue from a fresh direction
        v = if norm.is_finite() && norm > 1e-12 * before {
            w.iter_mut().for_each(|x| *x /= norm);
            w
        } else {
            random_vector(&basis)
        };
    }
}

fn rayleigh_ritz(
    basis: &[Vec<f64>],
    images: &[Vec<f64>],
    gram: &[Vec<f64>],
    k: usize,
) -> SectorSolve {
    let s = basis.len();
    let g = DMatrix::from_fn(s, s, |i, j| if j <= i { gram[i][j] } else { gram[j][i] });
    let eig = SymmetricEigen::new(g);
    let mut order: Vec<usize> = (0..s).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let dim = basis[0].len();
    let mut values = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for &c in &order[..k] {
        let theta = eig.eigenvalues[c];
        let mut y = vec![0.0; dim];
        let mut hy = vec![0.0; dim];
        for a in 0..s {
            let coef = eig.eigenvectors[(a, c)];
            axpy(coef, &basis[a], &mut y);
            axpy(coef, &images[a], &mut hy);
        }
        let norm = normalize(&mut y);
        hy.iter_mut().for_each(|x| *x /= norm);
        let r: f64 = hy
            .iter()
            .zip(&y)
            .map(|(h, v)| (h - theta * v).powi(2))
            .sum::<f64>()
            .sqrt();
        values.push(theta);
        vectors.push(y);
        residuals.push(r);
    }
    SectorSolve {
        values,
        vectors,
        residuals,
    }
}

/// The `k` lowest eigenpairs of `h`, ascending, as full-grid unit vectors.
///
/// Each parity sector is solved separately and the results merged. A sector
/// is enlarged until its highest computed level lies above the `k`-th merged
/// level, so no level can be missed.
pub fn solve_lowest(
    h: &LatticeHamiltonian,
    k: usize,
    opts: &SolverOptions,
) -> Result<Vec<Eigenpair>> {
    if k == 0 || k > h.dimension() {
        return Err(Error::InvalidEigenCount {
            requested: k,
            dimension: h.dimension(),
        });
    }
    let sector_dim = h.dimension() / 4;
    let mut counts = [k.div_ceil(4) + 3; 4];
    counts.iter_mut().for_each(|c| *c = (*c).min(sector_dim));
    let mut solves: Vec<Option<SectorSolve>> = (0..4).map(|_| None).collect();
    loop {
        for (s, sector) in Sector::ALL.iter().enumerate() {
            if solves[s]
                .as_ref()
                .is_none_or(|r| r.values.len() < counts[s])
            {
                solves[s] = Some(solve_sector(h, *sector, counts[s], opts)?);
            }
        }
        let mut all: Vec<(f64, usize, usize)> = solves
            .iter()
            .enumerate()
            .flat_map(|(s, r)| {
                r.as_ref()
                    .expect("solved")
                    .values
                    .iter()
                    .enumerate()
                    .map(move |(i, &e)| (e, s, i))
            })
            .collect();
        all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        if all.len() < k {
            counts
                .iter_mut()
                .for_each(|c| *c = (*c * 2).min(sector_dim));
            continue;
        }
        let kth = all[k - 1].0;
        let mut grown = false;
        for s in 0..4 {
            let r = solves[s].as_ref().expect("solved");
            let top = *r.values.last().expect("nonempty");
            if r.values.len() < sector_dim && top <= kth {
                counts[s] = (counts[s] * 2).min(sector_dim);
                grown = true;
            }
        }
        if grown {
            continue;
        }
        let ops: Vec<SectorOperator> = Sector::ALL.iter().map(|s| h.sector(*s)).collect();
        return Ok(all[..k]
            .iter()
            .map(|&(value, s, i)| Eigenpair {
                value,
                vector: ops[s].unfold(&solves[s].as_ref().expect("solved").vectors[i]),
            })
            .collect());
    }
}
