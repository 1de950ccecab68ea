//! Extended-precision reference evaluation of `E_{α,β}(z)` for real
//! arguments, used as the independent oracle in test suites.
//!
//! Two routes, both in MPFR arbitrary-precision arithmetic:
//!
//! * the defining series, at a working precision that covers model
//!   cancellation (`|z|^{1/α}` digits of it) plus a 60-digit guard;
//! * for arguments whose series would need more than [`SERIES_DIGIT_CAP`]
//!   digits (deep negative `z` at small `α`), the algebraic asymptotic
//!   series at optimal truncation plus the exact residue pair, with a
//!   certified error bound that must sit far below the comparison tolerance.
//!
//! In the band where both routes are excellent the two are cross-checked
//! against each other (`assert` to 1e-22), which is the "asymptotic tail
//! check" of the series oracle.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Hard ceiling on series working precision, in decimal digits.
pub const SERIES_DIGIT_CAP: u32 = 400;

fn bits(digits: u32) -> u32 {
    (digits as f64 * 3.33).ceil() as u32 + 64
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `1/Γ(w)` at precision `prec`, via reflection for `w < 0.5`; exact 0 at
/// non-positive integers.
fn recip_gamma(prec: u32, w: &Float, pi_val: &Float) -> Float {
    if *w >= 0.5 {
        w.clone().gamma().recip()
    } else {
        let is_int = w.clone().fract() == 0.0;
        if is_int {
            return Float::with_val(prec, 0);
        }
        // 1/Γ(w) = sin(πw) Γ(1-w) / π
        let pw = pi_val.clone() * w.clone();
        let g = (Float::with_val(prec, 1) - w.clone()).gamma();
        pw.sin() * g / pi_val.clone()
    }
}

/// Direct series at `digits` working digits. Returns `None` if 100k terms
/// do not converge (they always should at sane inputs).
pub fn ml_series(alpha: f64, beta: f64, z: f64, digits: u32) -> Option<Float> {
    let prec = bits(digits);
    let a = Float::with_val(prec, alpha);
    let b = Float::with_val(prec, beta);
    let zz = Float::with_val(prec, z);
    let mut sum = Float::with_val(prec, 0);
    let mut zpow = Float::with_val(prec, 1);
    let eps = Float::with_val(prec, 10).pow(-(digits as i32 + 20));
    let mut small_run = 0;
    let pi_val = pi(prec);
    for k in 0..100_000u32 {
        let w = a.clone() * k + b.clone();
        let term = zpow.clone() * recip_gamma(prec, &w, &pi_val);
        sum += &term;
        // convergence requires sustained smallness past the hump
        let tiny = term.clone().abs() <= eps.clone() * sum.clone().abs().max(&Float::with_val(prec, 1e-300));
        if tiny {
            small_run += 1;
            if small_run >= 4 {
                return Some(sum);
            }
        } else {
            small_run = 0;
        }
        zpow *= &zz;
    }
    None
}

/// Asymptotic route for `z < 0` with certified bound: returns
/// `(value, relative_bound)`.
pub fn ml_asymptotic(alpha: f64, beta: f64, z: f64, digits: u32) -> (Float, Float) {
    assert!(z < 0.0, "asymptotic route is for negative arguments");
    let prec = bits(digits);
    let a = Float::with_val(prec, alpha);
    let b = Float::with_val(prec, beta);
    let x = Float::with_val(prec, -z);
    let ln_x = x.clone().ln();

    // Algebraic part at optimal truncation. Truncation is controlled by the
    // smooth reflection envelope x^{-k} Γ(αk+1-β)/π ≥ x^{-k} |1/Γ(β-αk)|,
    // which has no pole dips; the remainder bound is the envelope of the
    // first omitted term with a safety factor.
    let mut sum = Float::with_val(prec, 0);
    let mut prev_env = Float::with_val(prec, f64::INFINITY);
    let mut bound = Float::with_val(prec, f64::INFINITY);
    let floor = Float::with_val(prec, 10).pow(-(digits as i32 + 20));
    let pi_val = pi(prec);
    for k in 1..100_000u32 {
        let w = b.clone() - a.clone() * k;
        let refl = Float::with_val(prec, a.clone() * k + 1u32 - b.clone()); // αk + 1 - β
        let env = if refl > 0.5 {
            (ln_x.clone() * -(k as i32) + refl.ln_gamma()).exp() / pi_val.clone()
        } else {
            (ln_x.clone() * -(k as i32)).exp() * recip_gamma(prec, &w, &pi_val).abs()
        };
        if env > prev_env {
            bound = env * 100u32;
            break;
        }
        prev_env = env.clone();
        let rg = recip_gamma(prec, &w, &pi_val);
        // sign: -(z^{-k}) = -(-1)^{-k} x^{-k} = (-1)^{k+1} x^{-k}
        let sgn = if k % 2 == 1 { 1 } else { -1 };
        let term = (ln_x.clone() * -(k as i32)).exp() * rg * sgn;
        sum += term;
        if env < floor {
            bound = env * 100u32;
            break;
        }
    }

    // residue pair for α > 1 (and the α = 2 oscillation): exact
    if alpha > 1.0 {
        let u = x.clone().pow(Float::with_val(prec, 1.0) / a.clone());
        let phi = pi_val.clone() / a.clone();
        let (s, c) = phi.sin_cos(Float::new(prec));
        let env = ((Float::with_val(prec, 1) - b.clone()) / a.clone() * ln_x.clone()
            + u.clone() * c)
            .exp()
            * 2
            / a.clone();
        let arg = u * s + pi_val * (Float::with_val(prec, 1) - b.clone()) / a.clone();
        sum += env * arg.cos();
    }

    let rel = bound / sum.clone().abs().max(&Float::with_val(prec, 1e-300));
    (sum, rel)
}

/// Decimal digits the series route needs for `E_{α,β}(z)`.
pub fn series_digits_needed(alpha: f64, z: f64) -> u32 {
    if z >= 0.0 {
        return 60;
    }
    let u = (-z).powf(1.0 / alpha);
    let cancel = if alpha > 1.0 { 1.0 - (std::f64::consts::PI / alpha).cos() } else { 1.0 };
    (u * cancel / std::f64::consts::LN_10).ceil() as u32 + 60
}

/// The oracle: extended-precision value of `E_{α,β}(z)` rounded to f64.
///
/// Uses the series wherever its working precision stays under
/// [`SERIES_DIGIT_CAP`] digits; beyond that, the certified asymptotic
/// (which is astronomically accurate exactly where the series becomes
/// infeasible). Panics if neither route can certify the target accuracy.
pub fn ml_oracle(alpha: f64, beta: f64, z: f64) -> f64 {
    assert!(alpha > 0.0 && alpha <= 2.0, "oracle supports 0 < alpha <= 2");
    let digits = series_digits_needed(alpha, z);
    if digits <= SERIES_DIGIT_CAP {
        let v = ml_series(alpha, beta, z, digits).expect("oracle series did not converge");
        return v.to_f64();
    }
    let (v, rel) = ml_asymptotic(alpha, beta, z, 80);
    assert!(
        rel < 1e-25,
        "asymptotic oracle not certified at alpha={alpha}, beta={beta}, z={z}: rel bound {rel}"
    );
    v.to_f64()
}

/// Cross-check of the two oracle routes in their overlap band; returns the
/// relative discrepancy (callers assert on it).
pub fn oracle_overlap_discrepancy(alpha: f64, beta: f64, z: f64) -> f64 {
    let digits = series_digits_needed(alpha, z);
    assert!(
        (200..=SERIES_DIGIT_CAP).contains(&digits),
        "pick z so the series needs 200..=400 digits (got {digits})"
    );
    let s = ml_series(alpha, beta, z, digits).unwrap();
    let (a, rel) = ml_asymptotic(alpha, beta, z, 80);
    assert!(rel < 1e-25, "asymptotic not certified in overlap: {rel}");
    let denom = s.clone().abs().max(&Float::with_val(s.prec(), 1e-300));
    ((s - a).abs() / denom).to_f64()
}

/// High-precision `Γ(x)` rounded to f64, for frozen-constant derivations.
pub fn gamma_ref(x: f64) -> f64 {
    Float::with_val(256, x).gamma().to_f64()
}

/// Series oracle with a reusable `1/Γ(αk+β)` table: evaluating a whole
/// z-grid for one `(α, β)` costs the Γ evaluations once.
pub struct SeriesTable {
    alpha: Float,
    beta: Float,
    prec: u32,
    digits: u32,
    pi_val: Float,
    rg: Vec<Float>,
}

impl SeriesTable {
    pub fn new(alpha: f64, beta: f64, digits: u32) -> Self {
        let prec = bits(digits);
        Self {
            alpha: Float::with_val(prec, alpha),
            beta: Float::with_val(prec, beta),
            prec,
            digits,
            pi_val: pi(prec),
            rg: Vec::new(),
        }
    }

    fn rg(&mut self, k: usize) -> Float {
        // Entries are computed directly: an integer-step Γ recurrence would
        // leave the actual w-grid w_k = fl(α)·k + β by ~ulp(α·10) per step
        // (fl(0.3)·10 ≠ 3), a systematic ψ(w)-amplified drift the series
        // cancellation then magnifies.
        while self.rg.len() <= k {
            let len = self.rg.len();
            let w = Float::with_val(self.prec, self.alpha.clone() * len as u32 + self.beta.clone());
            self.rg.push(recip_gamma(self.prec, &w, &self.pi_val));
        }
        self.rg[k].clone()
    }

    pub fn eval(&mut self, z: f64) -> Option<Float> {
        self.eval_to_digits(z, self.digits)
    }

    /// Evaluate at a point-specific accuracy (≤ the table's precision), so
    /// easy points in a high-precision bucket stop summing early.
    pub fn eval_to_digits(&mut self, z: f64, digits: u32) -> Option<Float> {
        let prec = self.prec;
        let digits = digits.min(self.digits);
        let zz = Float::with_val(prec, z);
        let mut sum = Float::with_val(prec, 0);
        let mut zpow = Float::with_val(prec, 1);
        let eps = Float::with_val(prec, 10).pow(-(digits as i32 + 20));
        let mut small_run = 0;
        for k in 0..100_000usize {
            let term = zpow.clone() * self.rg(k);
            sum += &term;
            let tiny = term.clone().abs()
                <= eps.clone() * sum.clone().abs().max(&Float::with_val(prec, 1e-300));
            if tiny {
                small_run += 1;
                if small_run >= 4 {
                    return Some(sum);
                }
            } else {
                small_run = 0;
            }
            zpow *= &zz;
        }
        None
    }
}

/// Oracle for a grid of arguments sharing `(α, β)`: series tables are built
/// per precision bucket and reused; infeasible-series points go through the
/// certified asymptotic exactly as [`ml_oracle`].
pub fn ml_oracle_grid(alpha: f64, beta: f64, zs: &[f64]) -> Vec<f64> {
    let mut tables: Vec<(u32, SeriesTable)> = Vec::new();
    zs.iter()
        .map(|&z| {
            let digits = series_digits_needed(alpha, z);
            if digits <= SERIES_DIGIT_CAP {
                let bucket = [80u32, 150, 250, SERIES_DIGIT_CAP]
                    .into_iter()
                    .find(|&b| b >= digits)
                    .unwrap();
                let idx = match tables.iter().position(|(b, _)| *b == bucket) {
                    Some(i) => i,
                    None => {
                        tables.push((bucket, SeriesTable::new(alpha, beta, bucket)));
                        tables.len() - 1
                    }
                };
                tables[idx]
                    .1
                    .eval_to_digits(z, digits)
                    .expect("oracle series did not converge")
                    .to_f64()
            } else {
                let (v, rel) = ml_asymptotic(alpha, beta, z, 80);
                assert!(
                    rel < 1e-25,
                    "asymptotic oracle not certified at alpha={alpha}, beta={beta}, z={z}"
                );
                v.to_f64()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_matches_exponential() {
        let v = ml_series(1.0, 1.0, -3.0, 60).unwrap().to_f64();
        assert!((v - (-3.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn series_matches_cosine() {
        let v = ml_series(2.0, 1.0, -4.0, 60).unwrap().to_f64();
        assert!((v - 2.0f64.cos()).abs() < 1e-16);
    }

    #[test]
    fn erfc_value_at_minus_one() {
        // E_{1/2,1}(-1) = e · erfc(1)
        let v = ml_series(0.5, 1.0, -1.0, 60).unwrap().to_f64();
        assert!((v - 0.427_583_576_155_807_0).abs() < 1e-15, "got {v}");
    }

    #[test]
    fn asymptotic_certified_far_out() {
        let (v, rel) = ml_asymptotic(0.3, 1.0, -50.0, 80);
        assert!(rel.to_f64() < 1e-30);
        assert!(v.to_f64() > 0.0);
    }

    #[test]
    fn overlap_routes_agree() {
        // z where the series needs 200-400 digits
        for (alpha, beta) in [(0.3, 1.0), (0.3, 0.5), (0.5, 2.0)] {
            let u_needed = 250.0 * std::f64::consts::LN_10;
            let z = -(u_needed.powf(alpha));
            let d = oracle_overlap_discrepancy(alpha, beta, z);
            assert!(d < 1e-22, "alpha={alpha} beta={beta} z={z}: {d}");
        }
    }

    #[test]
    fn oracle_dispatches_both_routes() {
        // series route
        let v = ml_oracle(1.5, 1.0, -10.0);
        assert!(v.is_finite());
        // asymptotic route (series would need > 400 digits)
        let v = ml_oracle(0.3, 1.0, -50.0);
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn gamma_reference_value() {
        assert!((gamma_ref(1.5) - 0.886_226_925_452_758).abs() < 1e-15);
    }

    #[test]
    fn grid_oracle_matches_pointwise_oracle() {
        let zs = [-50.0, -20.0, -3.5, -0.1, 0.0, 2.0, 5.0];
        for (alpha, beta) in [(0.3, 1.0), (1.5, 2.0)] {
            let grid = ml_oracle_grid(alpha, beta, &zs);
            for (&z, &g) in zs.iter().zip(&grid) {
                let want = ml_oracle(alpha, beta, z);
                assert!(
                    (g - want).abs() <= 1e-15 * want.abs().max(1e-300),
                    "alpha={alpha} beta={beta} z={z}: {g} vs {want}"
                );
            }
        }
    }
}
