//! Radix-2 FFT and a direct DFT fallback.
//!
//! Both compute `X_k = Σ_j x_j e^{sign·2πi·jk/n}` with no normalisation;
//! `sign = +1` matches the character convention `μ^{jk}` used for circulant
//! eigenvalues, `sign = -1` is the inverse orientation.

use num_complex::Complex64;

/// In-place iterative Cooley-Tukey; `x.len()` must be a power of two.
pub fn fft_pow2(x: &mut [Complex64], sign: f64) {
    let n = x.len();
    assert!(n.is_power_of_two(), "fft_pow2 needs a power-of-two length");
    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            x.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let ang = sign * std::f64::consts::TAU / len as f64;
        let wl = Complex64::from_polar(1.0, ang);
        for start in (0..n).step_by(len) {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let a = x[start + k];
                let b = x[start + k + len / 2] * w;
                x[start + k] = a + b;
                x[start + k + len / 2] = a - b;
                w *= wl;
            }
        }
        len <<= 1;
    }
}

/// Direct O(n²) DFT, any length.
pub fn dft_direct(x: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = x.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (k, o) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &v) in x.iter().enumerate() {
            // Reduce j·k mod n before the trig call to keep phases exact.
            let e = ((j * k) % n) as f64;
            acc += v * Complex64::from_polar(1.0, sign * std::f64::consts::TAU * e / n as f64);
        }
        *o = acc;
    }
    out
}

/// FFT when the length is a power of two, direct DFT otherwise.
pub fn transform(x: &[Complex64], sign: f64) -> Vec<Complex64> {
    if x.len().is_power_of_two() {
        let mut buf = x.to_vec();
        fft_pow2(&mut buf, sign);
        buf
    } else {
        dft_direct(x, sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-10
    }

    #[test]
    fn fft_matches_direct_dft() {
        let x: Vec<Complex64> = (0..16)
            .map(|k| Complex64::new((k as f64).sin(), (k as f64 * 0.7).cos()))
            .collect();
        let a = transform(&x, 1.0);
        let b = dft_direct(&x, 1.0);
        for (u, v) in a.iter().zip(&b) {
            assert!(close(*u, *v), "{u} vs {v}");
        }
    }

    #[test]
    fn impulse_transforms_to_constant() {
        let mut x = vec![Complex64::new(0.0, 0.0); 8];
        x[0] = Complex64::new(1.0, 0.0);
        let y = transform(&x, 1.0);
        for v in y {
            assert!(close(v, Complex64::new(1.0, 0.0)));
        }
    }

    #[test]
    fn forward_then_inverse_recovers_input() {
        let x: Vec<Complex64> =
            (0..32).map(|k| Complex64::new(k as f64, -(k as f64) / 3.0)).collect();
        let y = transform(&x, 1.0);
        let z = transform(&y, -1.0);
        for (orig, back) in x.iter().zip(&z) {
            assert!(close(*orig, back / 32.0));
        }
    }

    #[test]
    fn non_power_of_two_uses_direct_path() {
        let x: Vec<Complex64> = (0..6).map(|k| Complex64::new(k as f64, 0.0)).collect();
        let y = transform(&x, 1.0);
        assert!((y[0].re - 15.0).abs() < 1e-10);
    }
}
