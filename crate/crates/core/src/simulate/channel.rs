use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// One Eb/N0 operating point of the BPSK / BI-AWGN channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPoint {
    pub eb_n0_db: f64,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl ChannelPoint {
    /// `sigma^2 = 1 / (2 R 10^(Eb/N0 / 10))`.
    pub fn new(eb_n0_db: f64, rate: f64, seed: u64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) || !eb_n0_db.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "need 0 < rate <= 1 and finite Eb/N0, got rate {rate}, {eb_n0_db} dB"
            )));
        }
        let sigma = (1.0 / (2.0 * rate * 10f64.powf(eb_n0_db / 10.0))).sqrt();
        Ok(Self {
            eb_n0_db,
            noise_sigma: sigma,
            seed,
        })
    }

    /// A point with an explicit noise level.
    pub fn with_sigma(noise_sigma: f64, seed: u64) -> Result<Self> {
        if !(noise_sigma > 0.0) || !noise_sigma.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "noise sigma must be positive, got {noise_sigma}"
            )));
        }
        Ok(Self {
            eb_n0_db: f64::NAN,
            noise_sigma,
            seed,
        })
    }

    /// Random stream of frame `frame`: stream `frame` of the ChaCha
    /// generator keyed by the point seed.
    pub fn frame_rng(&self, frame: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(frame);
        rng
    }
}

/// Channel LLRs `2 y / sigma^2` for the all-zero codeword sent as `+1`.
pub fn transmit_all_zero<R: Rng + ?Sized>(len: usize, point: &ChannelPoint, rng: &mut R) -> Vec<f64> {
    let sigma = point.noise_sigma;
    let scale = 2.0 / (sigma * sigma);
    (0..len)
        .map(|_| {
            let noise: f64 = rng.sample(StandardNormal);
            scale * (1.0 + sigma * noise)
        })
        .collect()
}

/// LLRs of frame `frame` at `point`.
pub fn frame_llrs(len: usize, point: &ChannelPoint, frame: u64) -> Vec<f64> {
    transmit_all_zero(len, point, &mut point.frame_rng(frame))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_from_rate() {
        let p = ChannelPoint::new(0.0, 0.5, 1).unwrap();
        assert!((p.noise_sigma - 1.0).abs() < 1e-12);
        let p = ChannelPoint::new(3.0, 0.5, 1).unwrap();
        assert!((p.noise_sigma.powi(2) - 1.0 / 10f64.powf(0.3)).abs() < 1e-12);
        assert!(ChannelPoint::new(1.0, 0.0, 1).is_err());
        assert!(ChannelPoint::with_sigma(0.0, 1).is_err());
    }

    #[test]
    fn tiny_noise_gives_large_positive_llrs() {
        let p = ChannelPoint::with_sigma(1e-3, 9).unwrap();
        let llr = frame_llrs(1000, &p, 0);
        assert!(llr.iter().all(|&x| x > 1e5));
    }

    #[test]
    fn frames_are_reproducible_and_distinct() {
        let p = ChannelPoint::new(2.0, 0.5, 42).unwrap();
        assert_eq!(frame_llrs(64, &p, 5), frame_llrs(64, &p, 5));
        assert_ne!(frame_llrs(64, &p, 5), frame_llrs(64, &p, 6));
        let q = ChannelPoint { seed: 43, ..p };
        assert_ne!(frame_llrs(64, &p, 5), frame_llrs(64, &q, 5));
    }

    #[test]
    fn llr_mean_matches_analytic_value() {
        let p = ChannelPoint::with_sigma(0.8, 11).unwrap();
        let llr = frame_llrs(100_000, &p, 0);
        let n = llr.len() as f64;
        let mean = llr.iter().sum::<f64>() / n;
        let var = llr.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let expected = 2.0 / (0.8f64 * 0.8);
        let stderr = (var / n).sqrt();
        assert!((mean - expected).abs() < 3.0 * stderr, "mean {mean} vs {expected}");
    }
}
