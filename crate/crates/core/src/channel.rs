//! BPSK over AWGN.
//!
//! Bit 0 maps to +1 and bit 1 to −1. SNR is Eb/N0 in dB with the code-rate
//! adjustment σ² = 1 / (2 R 10^(SNR/10)); the channel LLR is 2y/σ², positive
//! values favoring bit 0.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Noise standard deviation for a given Eb/N0 (dB) and code rate k/n.
pub fn snr_to_sigma(snr_db: f64, rate: f64) -> f64 {
    (1.0 / (2.0 * rate * 10f64.powf(snr_db / 10.0))).sqrt()
}

/// Reproducible RNG for stream `stream` of experiment seed `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSample {
    pub codeword: Vec<u8>,
    pub symbols: Vec<f64>,
    pub received: Vec<f64>,
    pub llr: Vec<f64>,
    pub snr_db: f64,
}

/// Transmits `codeword` once.
pub fn sample<R: Rng + ?Sized>(codeword: &[u8], snr_db: f64, rate: f64, rng: &mut R) -> ChannelSample {
    let sigma = snr_to_sigma(snr_db, rate);
    let var = sigma * sigma;
    let symbols: Vec<f64> = codeword.iter().map(|&c| 1.0 - 2.0 * f64::from(c)).collect();
    let received: Vec<f64> = symbols
        .iter()
        .map(|&s| s + sigma * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let llr = received.iter().map(|&y| 2.0 * y / var).collect();
    ChannelSample {
        codeword: codeword.to_vec(),
        symbols,
        received,
        llr,
        snr_db,
    }
}

/// LLRs of the all-zero codeword of length `n`.
pub fn zero_codeword_llr<R: Rng + ?Sized>(n: usize, snr_db: f64, rate: f64, rng: &mut R) -> Vec<f64> {
    let sigma = snr_to_sigma(snr_db, rate);
    let scale = 2.0 / (sigma * sigma);
    (0..n)
        .map(|_| scale * (1.0 + sigma * rng.sample::<f64, _>(StandardNormal)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::hard_decision;

    #[test]
    fn sigma_values() {
        assert!((snr_to_sigma(0.0, 1.0).powi(2) - 0.5).abs() < 1e-15);
        let s = snr_to_sigma(4.0, 45.0 / 63.0);
        assert!((s - 0.5279).abs() < 1e-4, "{s}");
        let mut last = f64::INFINITY;
        for db in -5..15 {
            let s = snr_to_sigma(db as f64, 0.5);
            assert!(s < last);
            last = s;
        }
    }

    #[test]
    fn llr_sign_matches_gaussian_density_ratio() {
        // log N(y; +1, σ²) − log N(y; −1, σ²) = 2y/σ².
        let sigma: f64 = 0.8;
        for y in [-1.7, -0.2, 0.0, 0.4, 2.5] {
            let lp0 = -(y - 1.0f64).powi(2) / (2.0 * sigma * sigma);
            let lp1 = -(y + 1.0f64).powi(2) / (2.0 * sigma * sigma);
            assert!(((lp0 - lp1) - 2.0 * y / (sigma * sigma)).abs() < 1e-12);
        }
    }

    #[test]
    fn high_snr_recovers_codeword() {
        let mut rng = stream_rng(1, 0);
        let cw = [0, 1, 1, 0, 1, 0, 0];
        let s = sample(&cw, 60.0, 4.0 / 7.0, &mut rng);
        assert_eq!(hard_decision(&s.llr), cw.to_vec());
    }

    #[test]
    fn empirical_moments() {
        let mut rng = stream_rng(7, 3);
        let rate = 0.5;
        let sigma = snr_to_sigma(2.0, rate);
        let n = 1_000_000;
        let s = sample(&vec![0u8; n], 2.0, rate, &mut rng);
        let mean = s.received.iter().sum::<f64>() / n as f64;
        let var = s.received.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean {mean}");
        assert!((var / (sigma * sigma) - 1.0).abs() < 0.01, "var {var}");
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = zero_codeword_llr(10, 3.0, 0.5, &mut stream_rng(5, 1));
        let b = zero_codeword_llr(10, 3.0, 0.5, &mut stream_rng(5, 1));
        let c = zero_codeword_llr(10, 3.0, 0.5, &mut stream_rng(5, 2));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
