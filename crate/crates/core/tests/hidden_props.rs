//! Hidden-cover invariants: Fourier support of coset states, spectral
//! confinement of measurements, the continued-fraction guarantee, and
//! recovery statistics.

mod support;

use coverwalk::fft;
use coverwalk::hidden::{
    constant_coset_state, continued_fractions, measure_hamiltonian, recovery_campaign,
};
use coverwalk::spectral::circulant_decomposition;
use coverwalk::SplitMix64;
use num_complex::Complex64;
use proptest::prelude::*;

fn cycle_basis(n: u64) -> coverwalk::spectral::SpectralDecomposition {
    let mut row = vec![0.0; n as usize];
    row[1] = 1.0;
    row[n as usize - 1] = 1.0;
    circulant_decomposition(&row).unwrap()
}

#[test]
fn coset_fourier_support_matches_dft_for_all_small_cases() {
    for n in 2..=64u64 {
        for p in 2..=n {
            if n % p != 0 {
                continue;
            }
            for j in [0, p / 2, p - 1] {
                let state = constant_coset_state(n, p, j).unwrap();
                let support = coverwalk::hidden::coset_fourier_support(n, p, j).unwrap();
                // ⟨W(k)|α⟩ = conj-DFT coefficient / √n.
                let coeffs = fft::transform(state.amplitudes(), -1.0);
                let mut from_support = vec![Complex64::new(0.0, 0.0); n as usize];
                for &(k, a) in &support {
                    from_support[k] = a;
                }
                for k in 0..n as usize {
                    let direct = coeffs[k] / (n as f64).sqrt();
                    assert!(
                        (direct - from_support[k]).norm() <= 1e-10,
                        "n={n} p={p} j={j} k={k}"
                    );
                }
            }
        }
    }
    // One larger spot check.
    let (n, p, j) = (256u64, 8u64, 5u64);
    let state = constant_coset_state(n, p, j).unwrap();
    let support = coverwalk::hidden::coset_fourier_support(n, p, j).unwrap();
    let coeffs = fft::transform(state.amplitudes(), -1.0);
    for &(k, a) in &support {
        assert!((coeffs[k] / 16.0 - a).norm() <= 1e-10);
    }
}

#[test]
fn measurements_on_coset_states_are_spectrally_confined() {
    // Never an eigenvalue farther than 2·2^{−b} from the quotient spectrum.
    let (n, p, bits) = (30u64, 5u64, 32u32);
    let basis = cycle_basis(n);
    let allowed: Vec<f64> = (0..=p / 2)
        .map(|j| 2.0 * (std::f64::consts::TAU * j as f64 / p as f64).cos())
        .collect();
    let slack = 2.0 * (2f64).powi(-(bits as i32));
    let mut rng = SplitMix64::new(17);
    for j in 0..p {
        let state = constant_coset_state(n, p, j).unwrap();
        for _ in 0..200 {
            let m = measure_hamiltonian(&state, &basis, bits, &mut rng).unwrap();
            let nearest = allowed
                .iter()
                .map(|a| (a - m.lambda_tilde).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest <= slack, "leak: {} (nearest {nearest})", m.lambda_tilde);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Classic guarantee: for prime p, j ≢ 0 and |ε| < 1/(2n²), the
    /// continued fraction of j/p + ε capped at denominator n returns j/p.
    #[test]
    fn continued_fraction_guarantee(
        pair_idx in 0usize..4,
        j_seed in 1u64..1000,
        frac in -0.95f64..0.95,
    ) {
        let (p, n) = [(3u64, 15u64), (5, 35), (11, 187), (13, 403)][pair_idx];
        let j = 1 + j_seed % (p - 1);
        let bound = 1.0 / (2.0 * (n as f64) * (n as f64));
        let x = (j as f64 / p as f64 + frac * bound).clamp(0.0, 1.0);
        let r = continued_fractions(x, n).unwrap();
        prop_assert_eq!(r.denominator, p);
        prop_assert_eq!(r.numerator, j);
    }
}

#[test]
fn recovery_campaign_statistics_small() {
    for (p, q) in [(3u64, 5u64), (5, 3), (2, 7)] {
        let stats = recovery_campaign(p * q, p, 32, 50, 25, 2000, 0).unwrap();
        assert_eq!(stats.wrong, 0, "p={p} q={q}");
        assert_eq!(stats.failed, 0, "p={p} q={q}");
        assert_eq!(stats.recovered, 50);
        let predicted = (p - 1) as f64 / p as f64;
        assert!(
            (stats.single_sample_rate() - predicted).abs() <= 0.05,
            "p={p}: {} vs {predicted}",
            stats.single_sample_rate()
        );
    }
}
