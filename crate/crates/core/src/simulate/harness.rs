use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::channel::{frame_llrs, ChannelPoint};
use super::decoder::{SpaDecoder, DEFAULT_MAX_ITER};
use crate::error::{Error, Result};
use crate::matrix::SparseBinaryMatrix;

/// Per-point Monte-Carlo stopping rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    pub min_frame_errors: u64,
    pub max_frames: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        Self {
            min_frame_errors: 100,
            max_frames: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub stop: StopRule,
    pub max_iter: usize,
    /// Frames decoded per parallel batch.
    pub batch: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            stop: StopRule::default(),
            max_iter: DEFAULT_MAX_ITER,
            batch: 64,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointResult {
    pub eb_n0_db: f64,
    pub noise_sigma: f64,
    pub frames_sent: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    /// Frames whose decoder output had zero syndrome.
    pub converged_frames: u64,
    pub total_iterations: u64,
    /// Weight -> count of converged non-zero outputs, each re-verified as a
    /// codeword.
    pub wrong_codeword_weights: BTreeMap<usize, u64>,
    pub code_length: usize,
}

impl PointResult {
    pub fn ber(&self) -> f64 {
        if self.frames_sent == 0 {
            return 0.0;
        }
        self.bit_errors as f64 / (self.frames_sent as f64 * self.code_length as f64)
    }

    pub fn fer(&self) -> f64 {
        if self.frames_sent == 0 {
            return 0.0;
        }
        self.frame_errors as f64 / self.frames_sent as f64
    }

    pub fn min_wrong_codeword_weight(&self) -> Option<usize> {
        self.wrong_codeword_weights.keys().next().copied()
    }

    pub fn mean_iterations(&self) -> f64 {
        self.total_iterations as f64 / self.frames_sent.max(1) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub points: Vec<PointResult>,
}

struct FrameSummary {
    bit_errors: u64,
    converged: bool,
    iterations: u64,
    wrong_weight: Option<usize>,
}

fn run_frame(
    h: &SparseBinaryMatrix,
    decoder: &SpaDecoder,
    point: &ChannelPoint,
    frame: u64,
    max_iter: usize,
) -> Result<FrameSummary> {
    let llr = frame_llrs(h.cols(), point, frame);
    let out = decoder.decode(&llr, max_iter)?;
    let bit_errors = out.decoded_word.iter().filter(|&&b| b == 1).count();
    let wrong_weight = match out.wrong_codeword_weight {
        Some(w) if h.is_codeword(&out.decoded_word) && w == bit_errors => Some(w),
        Some(w) => {
            return Err(Error::InvalidArgument(format!(
                "frame {frame}: reported codeword of weight {w} fails re-verification"
            )))
        }
        None => None,
    };
    if out.converged && !h.is_codeword(&out.decoded_word) {
        return Err(Error::InvalidArgument(format!(
            "frame {frame}: converged output has nonzero syndrome"
        )));
    }
    Ok(FrameSummary {
        bit_errors: bit_errors as u64,
        converged: out.converged,
        iterations: out.iterations_used as u64,
        wrong_weight,
    })
}

/// Simulates one channel point. Frame `k` always sees the same noise, and
/// the run stops after the first frame at which the error count reaches
/// the target, so the result does not depend on threads or batch size.
pub fn run_point(
    h: &SparseBinaryMatrix,
    decoder: &SpaDecoder,
    point: &ChannelPoint,
    config: &SimConfig,
) -> Result<PointResult> {
    if config.stop.min_frame_errors == 0 {
        return Err(Error::InvalidArgument(
            "min_frame_errors must be at least 1".into(),
        ));
    }
    let mut res = PointResult {
        eb_n0_db: point.eb_n0_db,
        noise_sigma: point.noise_sigma,
        frames_sent: 0,
        bit_errors: 0,
        frame_errors: 0,
        converged_frames: 0,
        total_iterations: 0,
        wrong_codeword_weights: BTreeMap::new(),
        code_length: h.cols(),
    };
    let batch = config.batch.max(1) as u64;
    let mut next = 0u64;
    while next < config.stop.max_frames {
        // never decode more frames than errors still needed could require
        let needed = config.stop.min_frame_errors - res.frame_errors;
        let end = (next + batch.min(needed)).min(config.stop.max_frames);
        let summaries: Vec<FrameSummary> = (next..end)
            .into_par_iter()
            .map(|f| run_frame(h, decoder, point, f, config.max_iter))
            .collect::<Result<_>>()?;
        for s in summaries {
            res.frames_sent += 1;
            res.total_iterations += s.iterations;
            res.converged_frames += s.converged as u64;
            if s.bit_errors > 0 {
                res.bit_errors += s.bit_errors;
                res.frame_errors += 1;
            }
            if let Some(w) = s.wrong_weight {
                *res.wrong_codeword_weights.entry(w).or_insert(0) += 1;
            }
            if res.frame_errors >= config.stop.min_frame_errors {
                return Ok(res);
            }
        }
        next = end;
    }
    Ok(res)
}

/// Runs every point in order.
pub fn run_ber(
    h: &SparseBinaryMatrix,
    points: &[ChannelPoint],
    config: &SimConfig,
) -> Result<SimResult> {
    let decoder = SpaDecoder::new(h);
    let run = || {
        points
            .iter()
            .map(|p| run_point(h, &decoder, p, config))
            .collect::<Result<Vec<_>>>()
    };
    let points = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    Ok(SimResult { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::example1_compound;
    use crate::matrix::{expand, profile};

    fn small_code() -> SparseBinaryMatrix {
        expand(&example1_compound(16))
    }

    fn points(h: &SparseBinaryMatrix, snrs: &[f64]) -> Vec<ChannelPoint> {
        let rate = profile(h).designed_rate_f64().unwrap();
        snrs.iter()
            .enumerate()
            .map(|(k, &s)| ChannelPoint::new(s, rate, 1000 + k as u64).unwrap())
            .collect()
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let h = small_code();
        let pts = points(&h, &[1.0, 2.0]);
        let stop = StopRule {
            min_frame_errors: 20,
            max_frames: 2000,
        };
        let one = run_ber(&h, &pts, &SimConfig { stop, threads: Some(1), batch: 7, ..Default::default() }).unwrap();
        let three = run_ber(&h, &pts, &SimConfig { stop, threads: Some(3), batch: 50, ..Default::default() }).unwrap();
        assert_eq!(one, three);
        for p in &one.points {
            assert!(p.frame_errors == 20 || p.frames_sent == 2000);
            assert!((p.ber() - p.bit_errors as f64 / (p.frames_sent as f64 * h.cols() as f64)).abs() < 1e-15);
            assert!((p.fer() - p.frame_errors as f64 / p.frames_sent as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_error_target_is_rejected() {
        let h = small_code();
        let pts = points(&h, &[1.0]);
        let config = SimConfig {
            stop: StopRule { min_frame_errors: 0, max_frames: 10 },
            ..Default::default()
        };
        assert!(run_ber(&h, &pts, &config).is_err());
    }

    #[test]
    fn max_frames_caps_the_run() {
        let h = small_code();
        let pts = points(&h, &[9.0]);
        let config = SimConfig {
            stop: StopRule { min_frame_errors: 1000, max_frames: 100 },
            ..Default::default()
        };
        let r = run_ber(&h, &pts, &config).unwrap();
        assert_eq!(r.points[0].frames_sent, 100);
        assert_eq!(r.points[0].frame_errors, 0);
    }
}
