use nalgebra::DMatrix;

use super::basis::FockBasis;
use super::operator::OperatorMatrix;
use crate::adaptive::{leading_energy, PerturbationCoefficients};
use crate::error::{Error, Result};
use crate::types::OscillatorConfig;

/// Extra occupations carried while forming operator products, so that the
/// cropped products are exact up to quartic order.
pub const OPERATOR_PADDING: usize = 8;

fn ladder_dense(size: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(size, size);
    for n in 1..size {
        a[(n - 1, n)] = (n as f64).sqrt();
    }
    a
}

/// Single-mode annihilation operator on occupations `0..=cutoff`.
pub fn build_ladder(cutoff: usize) -> Result<OperatorMatrix> {
    if cutoff == 0 {
        return Err(Error::InvalidCutoff(cutoff));
    }
    Ok(OperatorMatrix::from_dense(&ladder_dense(cutoff + 1)))
}

/// Single-mode operators, formed on a padded space and cropped to `modes`.
struct Mode {
    a: DMatrix<f64>,
    ad: DMatrix<f64>,
    modes: usize,
}

impl Mode {
    fn new(modes: usize) -> Self {
        let a = ladder_dense(modes + OPERATOR_PADDING);
        let ad = a.transpose();
        Self { a, ad, modes }
    }

    fn crop(&self, m: DMatrix<f64>) -> DMatrix<f64> {
        m.view((0, 0), (self.modes, self.modes)).into_owned()
    }

    fn identity(&self) -> DMatrix<f64> {
        DMatrix::identity(self.modes, self.modes)
    }

    fn pow(m: &DMatrix<f64>, k: u32) -> DMatrix<f64> {
        (1..k).fold(m.clone(), |acc, _| &acc * m)
    }
}

fn kron(modes: usize, terms: &[(f64, &DMatrix<f64>, &DMatrix<f64>)]) -> OperatorMatrix {
    let nz = |m: &DMatrix<f64>| -> Vec<(usize, usize, f64)> {
        (0..modes)
            .flat_map(|r| (0..modes).map(move |c| (r, c)))
            .filter(|&(r, c)| m[(r, c)] != 0.0 ).map(|(r, c)| (r, c, m[(r, c)]))
            .collect()
    };
    let mut triplets = Vec::new();
    for &(coef, m1, m2) in terms {
        let (e1, e2) = (nz(m1), nz(m2));
        for &(r1, c1, v1) in &e1 {
            for &(r2, c2, v2) in &e2 {
                triplets.push((r1 * modes + r2, c1 * modes + c2, coef * v1 * v2));
            }
        }
    }
    OperatorMatrix::from_triplets(modes * modes, triplets)
}

/// The split `H = H0 + V` in `basis`.
///
/// `H0` is diagonal with the leading-order energies. `V` is assembled term by
/// term from its normal-ordered ladder-operator form.
pub fn build_hamiltonian(
    cfg: OscillatorConfig,
    basis: &FockBasis,
) -> (OperatorMatrix, OperatorMatrix) {
    let gamma = basis.gamma();
    let h0 = OperatorMatrix::from_triplets(
        basis.dimension(),
        basis
            .states()
            .enumerate()
            .map(|(i, s)| (i, i, leading_energy(s, gamma, cfg))),
    );

    let m = Mode::new(basis.modes());
    let lam = cfg.lambda();
    let k = PerturbationCoefficients::new(gamma, cfg);
    let (a, ad) = (&m.a, &m.ad);
    let a2 = m.crop(a * a);
    let ad2 = m.crop(ad * ad);
    let pair = &a2 + &ad2;
    let quartic = m.crop(
        (Mode::pow(ad, 4) + Mode::pow(a, 4)) / 6.0
            + (Mode::pow(ad, 3) * a + ad * Mode::pow(a, 3)) * (2.0 / 3.0),
    );
    let number = m.crop(ad * a);
    let id = m.identity();
    let q1 = lam / (4.0 * gamma.gamma1().powi(2));
    let q2 = lam / (4.0 * gamma.gamma2().powi(2));
    let two_n_plus_one = &number * 2.0 + &id;

    let v = kron(
        basis.modes(),
        &[
            (k.a1, &pair, &id),
            (q1, &quartic, &id),
            (k.b1, &id, &pair),
            (q2, &id, &quartic),
            (k.c, &pair, &pair),
            (k.c, &pair, &two_n_plus_one),
            (k.c, &two_n_plus_one, &pair),
        ],
    );
    (h0, v)
}

/// `H` by direct substitution of `x = (A† + A)/√(2γ)` and
/// `p = i√(γ/2)(A† − A)` into the Hamiltonian.
pub fn build_full_hamiltonian(cfg: OscillatorConfig, basis: &FockBasis) -> OperatorMatrix {
    let lam = cfg.lambda();
    let m = Mode::new(basis.modes());
    let single = |g: f64| {
        let x = (&m.ad + &m.a) / (2.0 * g).sqrt();
        let q = &m.ad - &m.a;
        // p² = −(γ/2)(A† − A)²
        let p2 = (&q * &q) * (-g / 2.0);
        let x2 = &x * &x;
        let x4 = &x2 * &x2;
        let h1 = p2 / 2.0 + x4 * (lam / 6.0) + &x2 * (cfg.lambda_prime() / 3.0);
        (m.crop(h1), m.crop(x2))
    };
    let (h1, x1sq) = single(basis.gamma().gamma1());
    let (h2, x2sq) = single(basis.gamma().gamma2());
    let id = m.identity();
    kron(
        basis.modes(),
        &[(1.0, &h1, &id), (1.0, &id, &h2), (lam, &x1sq, &x2sq)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::GammaPair;

    #[test]
    fn ladder_entries() {
        let a = build_ladder(5).unwrap();
        assert!((0..6).all(|r| a.get(r, 0) == 0.0));
        assert_eq!(a.get(2, 3), 3f64.sqrt());
        assert!(build_ladder(0).is_err());
    }

    #[test]
    fn commutator_is_identity_below_top() {
        let n = 9;
        let a = build_ladder(n).unwrap().to_dense();
        let c = &a * a.transpose() - a.transpose() * &a;
        for r in 0..=n {
            for col in 0..=n {
                let expect = if r == col { 1.0 } else { 0.0 };
                if r < n && col < n {
                    assert!((c[(r, col)] - expect).abs() < 1e-14);
                }
            }
        }
        assert!((c[(n, n)] + n as f64).abs() < 1e-12);
    }

    #[test]
    fn split_reassembles_direct_hamiltonian() {
        let cfg = OscillatorConfig::new(1.7).unwrap();
        let basis = FockBasis::new(12, GammaPair::new(1.3, 0.9).unwrap()).unwrap();
        let (h0, v) = build_hamiltonian(cfg, &basis);
        let h = build_full_hamiltonian(cfg, &basis);
        let scale = h.entries().map(|(_, _, x)| x.abs()).fold(0.0, f64::max);
        assert!(h0.add(&v).max_abs_diff(&h) < 1e-12 * scale);
        assert!(v.diagonal().iter().all(|d| d.abs() < 1e-12));
        assert!(h.symmetry_defect() < 1e-12);
    }

    #[test]
    fn h0_diagonal_is_leading_energy() {
        let cfg = OscillatorConfig::new(0.5).unwrap();
        let g = GammaPair::new(1.1, 0.7).unwrap();
        let basis = FockBasis::new(6, g).unwrap();
        let (h0, _) = build_hamiltonian(cfg, &basis);
        assert_eq!(h0.nnz(), basis.dimension());
        for s in basis.states() {
            let i = basis.index(s).unwrap();
            assert_eq!(h0.get(i, i), leading_energy(s, g, cfg));
        }
    }
}
