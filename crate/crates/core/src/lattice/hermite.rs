/// Normalized harmonic-oscillator eigenfunctions `h_0..=h_nmax` of frequency
/// `gamma` at `x`, by the stable three-term recurrence.
pub fn hermite_functions(nmax: usize, gamma: f64, x: f64) -> Vec<f64> {
    let xi = gamma.sqrt() * x;
    let mut h = Vec::with_capacity(nmax + 1);
    h.push((gamma / std::f64::consts::PI).powf(0.25) * (-0.5 * xi * xi).exp());
    if nmax >= 1 {
        h.push(std::f64::consts::SQRT_2 * xi * h[0]);
    }
    for k in 1..nmax {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * xi * h[k] - (kf / (kf + 1.0)).sqrt() * h[k - 1];
        h.push(next);
    }
    h
}

pub fn hermite_function(n: usize, gamma: f64, x: f64) -> f64 {
    hermite_functions(n, gamma, x)[n]
}
