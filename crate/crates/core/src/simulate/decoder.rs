use crate::error::{Error, Result};
use crate::matrix::SparseBinaryMatrix;

pub const DEFAULT_MAX_ITER: usize = 50;

/// Messages are clipped to this magnitude.
pub const LLR_CLIP: f64 = 30.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub decoded_word: Vec<u8>,
    /// The syndrome of `decoded_word` is zero.
    pub converged: bool,
    pub iterations_used: usize,
    /// Hamming weight of a converged, non-zero output (all-zero was sent).
    pub wrong_codeword_weight: Option<usize>,
}

/// Flooding-schedule log-domain sum-product decoder.
///
/// The Tanner graph is flattened into edge arrays once so one decoder can be
/// reused across frames.
#[derive(Debug, Clone)]
pub struct SpaDecoder {
    n: usize,
    /// Edges of check `c` are `check_start[c]..check_start[c + 1]`.
    check_start: Vec<usize>,
    /// Variable of each edge, in check order.
    edge_var: Vec<usize>,
    /// Edge ids of variable `v` are `var_edges[var_start[v]..var_start[v + 1]]`.
    var_start: Vec<usize>,
    var_edges: Vec<usize>,
}

impl SpaDecoder {
    pub fn new(h: &SparseBinaryMatrix) -> Self {
        let mut check_start = Vec::with_capacity(h.rows() + 1);
        let mut edge_var = Vec::with_capacity(h.nnz());
        check_start.push(0);
        for r in 0..h.rows() {
            edge_var.extend_from_slice(h.row(r));
            check_start.push(edge_var.len());
        }
        let mut var_start = vec![0usize; h.cols() + 1];
        for &v in &edge_var {
            var_start[v + 1] += 1;
        }
        for v in 0..h.cols() {
            var_start[v + 1] += var_start[v];
        }
        let mut fill = var_start.clone();
        let mut var_edges = vec![0usize; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v]] = e;
            fill[v] += 1;
        }
        Self {
            n: h.cols(),
            check_start,
            edge_var,
            var_start,
            var_edges,
        }
    }

    pub fn code_length(&self) -> usize {
        self.n
    }

    fn syndrome_is_zero(&self, word: &[u8]) -> bool {
        self.check_start.windows(2).all(|w| {
            self.edge_var[w[0]..w[1]]
                .iter()
                .fold(0u8, |acc, &v| acc ^ word[v])
                == 0
        })
    }

    /// Decodes channel LLRs (positive favours bit 0).
    pub fn decode(&self, llr: &[f64], max_iter: usize) -> Result<DecodeOutcome> {
        if llr.len() != self.n {
            return Err(Error::ShapeMismatch {
                expected: format!("{} LLRs", self.n),
                got: format!("{} LLRs", llr.len()),
            });
        }
        if max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
        }
        let edges = self.edge_var.len();
        let channel: Vec<f64> = llr.iter().map(|&x| clip(x)).collect();
        let mut v2c: Vec<f64> = self.edge_var.iter().map(|&v| channel[v]).collect();
        let mut c2v = vec![0.0f64; edges];
        let mut word = vec![0u8; self.n];
        let mut scratch = Vec::new();

        for iteration in 1..=max_iter {
            for w in self.check_start.windows(2) {
                check_update(&v2c[w[0]..w[1]], &mut c2v[w[0]..w[1]], &mut scratch);
            }
            for v in 0..self.n {
                let ids = &self.var_edges[self.var_start[v]..self.var_start[v + 1]];
                let total = channel[v] + ids.iter().map(|&e| c2v[e]).sum::<f64>();
                word[v] = (total < 0.0) as u8;
                for &e in ids {
                    v2c[e] = clip(total - c2v[e]);
                }
            }
            if self.syndrome_is_zero(&word) {
                let weight = word.iter().filter(|&&b| b == 1).count();
                return Ok(DecodeOutcome {
                    decoded_word: word,
                    converged: true,
                    iterations_used: iteration,
                    wrong_codeword_weight: (weight > 0).then_some(weight),
                });
            }
        }
        Ok(DecodeOutcome {
            decoded_word: word,
            converged: false,
            iterations_used: max_iter,
            wrong_codeword_weight: None,
        })
    }
}

#[inline]
fn clip(x: f64) -> f64 {
    x.clamp(-LLR_CLIP, LLR_CLIP)
}

/// `a ⊞ b = 2 atanh(tanh(a/2) tanh(b/2))` in its overflow-free form. The
/// decoder uses the equivalent tanh product; this pairwise form is kept as a
/// cross-check.
#[inline]
pub fn box_plus(a: f64, b: f64) -> f64 {
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    let core = a.abs().min(b.abs());
    sign * core + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
}

/// Extrinsic check-to-variable messages, `2 atanh(prod_{k != i} tanh(x_k / 2))`,
/// with the products over the other edges formed by forward and backward
/// recursions.
fn check_update(incoming: &[f64], outgoing: &mut [f64], scratch: &mut Vec<f64>) {
    let d = incoming.len();
    match d {
        0 => return,
        1 => {
            outgoing[0] = 0.0;
            return;
        }
        _ => {}
    }
    scratch.clear();
    scratch.extend(incoming.iter().map(|&x| half_tanh(x)));
    // outgoing[k] temporarily holds the product of tanh terms before k
    let mut acc = 1.0;
    for k in 0..d {
        outgoing[k] = acc;
        acc *= scratch[k];
    }
    let mut suffix = 1.0;
    for k in (0..d).rev() {
        outgoing[k] = clip(double_atanh(outgoing[k] * suffix));
        suffix *= scratch[k];
    }
}

/// `tanh(x / 2)` through a single exponential.
#[inline]
fn half_tanh(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    ((1.0 - e) / (1.0 + e)).copysign(x)
}

/// `2 atanh(t)` through a single logarithm.
#[inline]
fn double_atanh(t: f64) -> f64 {
    ((1.0 + t) / (1.0 - t)).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gcd_base, mask_hamming, extend_maskset, splice_exponent, LatinSquare};
    use crate::matrix::expand;

    fn tanh_rule(values: &[f64]) -> f64 {
        let prod: f64 = values.iter().map(|&x| (x / 2.0).tanh()).product();
        2.0 * prod.atanh()
    }

    #[test]
    fn box_plus_matches_tanh_rule() {
        let cases = [(1.0, 2.0), (-0.5, 3.0), (4.0, -4.0), (0.0, 7.0), (-2.5, -1.5)];
        for (a, b) in cases {
            assert!((box_plus(a, b) - tanh_rule(&[a, b])).abs() < 1e-12, "{a} {b}");
        }
    }

    #[test]
    fn check_update_is_extrinsic() {
        let incoming = [1.2, -0.7, 2.5, 0.3, -3.1];
        let mut out = [0.0; 5];
        let mut scratch = Vec::new();
        check_update(&incoming, &mut out, &mut scratch);
        for k in 0..5 {
            let others: Vec<f64> = incoming
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &x)| x)
                .collect();
            assert!((out[k] - tanh_rule(&others)).abs() < 1e-9, "edge {k}");
            let folded = others[1..].iter().fold(others[0], |acc, &x| box_plus(acc, x));
            assert!((out[k] - folded).abs() < 1e-9, "edge {k}");
        }
    }

    fn ps_h_code() -> SparseBinaryMatrix {
        let e0 = gcd_base(64, 8).unwrap();
        let ms = extend_maskset(&mask_hamming(4, 8).unwrap(), 4).unwrap();
        expand(&splice_exponent(&e0, &ms, &LatinSquare::circulant(4).unwrap()).unwrap())
    }

    #[test]
    fn noiseless_input_decodes_in_one_iteration() {
        let h = ps_h_code();
        let dec = SpaDecoder::new(&h);
        let out = dec.decode(&vec![25.0; h.cols()], 50).unwrap();
        assert!(out.converged);
        assert_eq!(out.iterations_used, 1);
        assert!(out.decoded_word.iter().all(|&b| b == 0));
        assert_eq!(out.wrong_codeword_weight, None);
    }

    #[test]
    fn single_flipped_bit_is_corrected() {
        let e = crate::construct::example1_compound(7);
        let h = expand(&e);
        let dec = SpaDecoder::new(&h);
        for flip in [0, 13, h.cols() - 1] {
            let mut llr = vec![8.0; h.cols()];
            llr[flip] = -8.0;
            let out = dec.decode(&llr, 50).unwrap();
            assert!(out.converged, "flip {flip}");
            assert!(out.decoded_word.iter().all(|&b| b == 0));
        }
    }

    #[test]
    fn converged_nonzero_word_is_a_codeword() {
        // H = [1 1 0; 0 1 1] has codeword 111
        let h = SparseBinaryMatrix::from_positions(2, 3, [(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap();
        let dec = SpaDecoder::new(&h);
        let out = dec.decode(&[-5.0, -5.0, -5.0], 10).unwrap();
        assert!(out.converged);
        assert!(h.is_codeword(&out.decoded_word));
        assert_eq!(out.wrong_codeword_weight, Some(3));
    }

    #[test]
    fn rejects_bad_input() {
        let h = SparseBinaryMatrix::identity(3);
        let dec = SpaDecoder::new(&h);
        assert!(dec.decode(&[1.0, 1.0], 5).is_err());
        assert!(dec.decode(&[1.0; 3], 0).is_err());
    }
}
