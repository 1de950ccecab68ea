//! Fast repeated evaluation of `w ↦ E_{α,β}(-w)` for `w ≥ 0`.
//!
//! The mild solver evaluates the same `(α, β)` kernel at ~10⁸ arguments per
//! run; direct evaluation through the integral branch would dominate the
//! runtime. This caches a piecewise Chebyshev fit of `y ↦ E_{α,β}(-e^y)`
//! built once from [`super::ml_eval`], accurate to ~1e-12 relative to the
//! local envelope, then evaluated in O(log n_intervals + degree).

use super::{ml_eval, recip_gamma, MLParams, MlError};

const DEGREE: usize = 16;
/// Below this argument the two-term series tail is already < 1e-18 relative.
const SERIES_CUT: f64 = 1e-6;
const FIT_TOL: f64 = 1e-13;

struct ChebPiece {
    lo: f64,
    hi: f64,
    coeffs: [f64; DEGREE + 1],
}

impl ChebPiece {
    fn eval(&self, y: f64) -> f64 {
        let t = (2.0 * y - self.lo - self.hi) / (self.hi - self.lo);
        let mut b1 = 0.0f64;
        let mut b2 = 0.0f64;
        for &c in self.coeffs.iter().rev().take(DEGREE) {
            let b0 = 2.0 * t * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        t * b1 - b2 + self.coeffs[0]
    }
}

/// Immutable, thread-safe evaluator of `E_{α,β}(-w)` on `w ∈ [0, w_max]`.
pub struct MlInterpolant {
    alpha: f64,
    beta: f64,
    w_max: f64,
    pieces: Vec<ChebPiece>,
    lows: Vec<f64>,
}

impl MlInterpolant {
    pub fn build(alpha: f64, beta: f64, w_max: f64) -> Result<Self, MlError> {
        assert!(w_max > SERIES_CUT, "interpolant range too small");
        let y_lo = SERIES_CUT.ln();
        let y_hi = w_max.ln() + 1e-12;

        let mut pieces = Vec::new();
        // work stack of unresolved intervals
        let mut stack = vec![(y_lo, y_hi)];
        while let Some((lo, hi)) = stack.pop() {
            match Self::try_fit(alpha, beta, lo, hi)? {
                Some(p) => pieces.push(p),
                None => {
                    let mid = 0.5 * (lo + hi);
                    if hi - lo < 1e-8 {
                        // refuse to loop forever; accept the best fit
                        pieces.push(Self::force_fit(alpha, beta, lo, hi)?);
                    } else {
                        stack.push((lo, mid));
                        stack.push((mid, hi));
                    }
                }
            }
        }
        pieces.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap());
        let lows = pieces.iter().map(|p| p.lo).collect();
        Ok(Self { alpha, beta, w_max, pieces, lows })
    }

    fn sample(alpha: f64, beta: f64, lo: f64, hi: f64) -> Result<[f64; DEGREE + 1], MlError> {
        let mut vals = [0.0; DEGREE + 1];
        for (i, v) in vals.iter_mut().enumerate() {
            // Chebyshev-Lobatto nodes, descending in cos
            let t = (std::f64::consts::PI * i as f64 / DEGREE as f64).cos();
            let y = 0.5 * ((hi - lo) * t + lo + hi);
            *v = ml_eval(MLParams::new(alpha, beta, -y.exp()))?;
        }
        Ok(vals)
    }

    fn coeffs_from(vals: &[f64; DEGREE + 1]) -> [f64; DEGREE + 1] {
        let n = DEGREE;
        let mut c = [0.0; DEGREE + 1];
        for (j, cj) in c.iter_mut().enumerate() {
            let mut s = 0.5 * (vals[0] * 1.0 + vals[n] * if j % 2 == 0 { 1.0 } else { -1.0 });
            for (i, &v) in vals.iter().enumerate().take(n).skip(1) {
                s += v * (std::f64::consts::PI * (i * j) as f64 / n as f64).cos();
            }
            *cj = 2.0 * s / n as f64;
        }
        c[0] *= 0.5;
        c[n] *= 0.5;
        c
    }

    fn try_fit(alpha: f64, beta: f64, lo: f64, hi: f64) -> Result<Option<ChebPiece>, MlError> {
        let vals = Self::sample(alpha, beta, lo, hi)?;
        let coeffs = Self::coeffs_from(&vals);
        let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-280);
        let tail = coeffs[DEGREE - 1].abs().max(coeffs[DEGREE].abs());
        if tail <= FIT_TOL * scale {
            Ok(Some(ChebPiece { lo, hi, coeffs }))
        } else {
            Ok(None)
        }
    }

    fn force_fit(alpha: f64, beta: f64, lo: f64, hi: f64) -> Result<ChebPiece, MlError> {
        let vals = Self::sample(alpha, beta, lo, hi)?;
        Ok(ChebPiece { lo, hi, coeffs: Self::coeffs_from(&vals) })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `E_{α,β}(-w)` for `w ≥ 0`. Arguments beyond the build range fall back
    /// to direct evaluation (should not happen on the solver hot path).
    pub fn eval_neg(&self, w: f64) -> f64 {
        debug_assert!(w >= 0.0);
        if w <= SERIES_CUT {
            // E(-w) = 1/Γ(β) - w/Γ(α+β) + w²/Γ(2α+β) + O(w³/Γ(3α+β))
            return recip_gamma(self.beta) - w * recip_gamma(self.alpha + self.beta)
                + w * w * recip_gamma(2.0 * self.alpha + self.beta);
        }
        if w > self.w_max {
            return ml_eval(MLParams::new(self.alpha, self.beta, -w)).unwrap_or(f64::NAN);
        }
        let y = w.ln();
        let idx = match self.lows.binary_search_by(|p| p.partial_cmp(&y).unwrap()) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        };
        self.pieces[idx].eval(y)
    }
}
