//! Periodic-box discretization of ℝ^N (N ∈ {1,2,3}) and the Mittag-Leffler
//! operator families as Fourier multipliers.
//!
//! The box is `[-L/2, L/2)^N` sampled on `n` points per side; frequencies are
//! `ξ_k = 2πk/L`, `k ∈ {-n/2, …, n/2-1}^N`, and the Laplacian symbol is
//! `-|ξ|²` so the operator families multiply mode `ξ` by `E_{α,β}(-|ξ|² t^α)`
//! (times `t` for the `t·Ẽ_{α,2}` family). This is the convention where the
//! continuum operators `(2π)^{-N/2} F^{-1}(E_{α,β}(-4π²t^α|ξ'|²)) F` with the
//! unitary transform pair coincide with plain diagonal multiplication here;
//! only the frequency labeling differs (`ξ = 2πξ'`), not the operator.
//!
//! Multiplier application is parallel over independent lines/modes, which is
//! bitwise deterministic for any thread count.

use crate::mittag_leffler::{ml_eval, MLParams, MlError};
use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(&'static str),
    #[error("geometry mismatch between operands")]
    GeometryMismatch,
    #[error("invalid Lp exponent {0}; need p >= 1 or infinity")]
    InvalidExponent(f64),
    #[error("field has nonzero mean {0}; homogeneous negative-order norm undefined")]
    NonzeroMean(f64),
    #[error("multiplier order {0} outside (1,2)")]
    InvalidOrder(f64),
    #[error("negative time {0}")]
    NegativeTime(f64),
    #[error("mittag-leffler evaluation failed: {0}")]
    Ml(#[from] MlError),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("malformed field file: {0}")]
    Parse(String),
}

/// Cubic periodic box `[-L/2, L/2)^N` with `n` samples per side.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoxGeometry {
    pub dim: usize,
    pub n: usize,
    pub length: f64,
}

impl BoxGeometry {
    pub fn new(dim: usize, n: usize, length: f64) -> Result<Self, GridError> {
        if !(1..=3).contains(&dim) {
            return Err(GridError::InvalidGeometry("dim must be 1, 2 or 3"));
        }
        if n < 8 || n % 2 != 0 {
            return Err(GridError::InvalidGeometry("n must be even and >= 8"));
        }
        if !(length > 0.0) {
            return Err(GridError::InvalidGeometry("side length must be positive"));
        }
        Ok(Self { dim, n, length })
    }

    pub fn total_points(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn cell_volume(&self) -> f64 {
        (self.length / self.n as f64).powi(self.dim as i32)
    }

    pub fn volume(&self) -> f64 {
        self.length.powi(self.dim as i32)
    }

    /// Signed integer wavenumber for a stored axis index.
    fn k_of(&self, idx: usize) -> i64 {
        if idx < self.n / 2 {
            idx as i64
        } else {
            idx as i64 - self.n as i64
        }
    }

    /// Physical coordinate of a stored axis index, in `[-L/2, L/2)`.
    pub fn coord_of(&self, idx: usize) -> f64 {
        -0.5 * self.length + self.length * idx as f64 / self.n as f64
    }

    /// Flat-index decomposition into per-axis indices (lexicographic, axis 0
    /// slowest).
    fn axis_indices(&self, flat: usize) -> [usize; 3] {
        let mut out = [0usize; 3];
        let mut rem = flat;
        for a in (0..self.dim).rev() {
            out[a] = rem % self.n;
            rem /= self.n;
        }
        out
    }

    /// Integer squared wavenumber `Σ k_a²` of a flat spectral index.
    pub fn ksq_of(&self, flat: usize) -> u64 {
        let idx = self.axis_indices(flat);
        let mut s = 0i64;
        for a in 0..self.dim {
            let k = self.k_of(idx[a]);
            s += k * k;
        }
        s as u64
    }

    /// `|ξ|²` for an integer squared wavenumber.
    pub fn xi_sq(&self, ksq: u64) -> f64 {
        let base = 2.0 * std::f64::consts::PI / self.length;
        base * base * ksq as f64
    }

    /// Largest time for which the diffusive scale `t^{α/2}` stays below
    /// `L/8`, the wrap-around validity window of the periodic approximation.
    pub fn validity_horizon(&self, alpha: f64) -> f64 {
        (self.length / 8.0).powf(2.0 / alpha)
    }
}

/// Real scalar field sampled on a [`BoxGeometry`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    geometry: BoxGeometry,
    samples: Vec<f64>,
}

impl GridFunction {
    pub fn from_samples(geometry: BoxGeometry, samples: Vec<f64>) -> Result<Self, GridError> {
        if samples.len() != geometry.total_points() {
            return Err(GridError::InvalidGeometry("sample count != n^dim"));
        }
        if !samples.iter().all(|v| v.is_finite()) {
            return Err(GridError::InvalidGeometry("non-finite sample"));
        }
        Ok(Self { geometry, samples })
    }

    pub fn zeros(geometry: BoxGeometry) -> Self {
        Self { geometry, samples: vec![0.0; geometry.total_points()] }
    }

    /// Like [`Self::from_samples`] without the finiteness check; solver
    /// output may overflow legitimately while blowing up.
    pub fn from_samples_unchecked(geometry: BoxGeometry, samples: Vec<f64>) -> Self {
        assert_eq!(samples.len(), geometry.total_points());
        Self { geometry, samples }
    }

    /// Sample a function of the centered coordinates.
    pub fn from_fn(geometry: BoxGeometry, f: impl Fn(&[f64]) -> f64) -> Self {
        let mut samples = vec![0.0; geometry.total_points()];
        let mut coords = [0.0f64; 3];
        for (flat, s) in samples.iter_mut().enumerate() {
            let idx = geometry.axis_indices(flat);
            for a in 0..geometry.dim {
                coords[a] = geometry.coord_of(idx[a]);
            }
            *s = f(&coords[..geometry.dim]);
        }
        Self { geometry, samples }
    }

    pub fn geometry(&self) -> &BoxGeometry {
        &self.geometry
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.samples
    }

    pub fn scale(&mut self, c: f64) {
        for v in &mut self.samples {
            *v *= c;
        }
    }

    /// Mean of the samples (the zero-mode coefficient over the volume).
    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Riemann-sum integral over the box.
    pub fn integral(&self) -> f64 {
        self.samples.iter().sum::<f64>() * self.geometry.cell_volume()
    }

    /// Binary serialization: one JSON header line `{dim, n, L}` then the raw
    /// samples as little-endian f64.
    pub fn write_binary(&self, w: &mut impl Write) -> Result<(), GridError> {
        let header = serde_json::json!({
            "dim": self.geometry.dim,
            "n": self.geometry.n,
            "L": self.geometry.length,
        });
        writeln!(w, "{header}")?;
        for v in &self.samples {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary(r: &mut impl BufRead) -> Result<Self, GridError> {
        let mut header = String::new();
        r.read_line(&mut header)?;
        let h: serde_json::Value =
            serde_json::from_str(header.trim()).map_err(|e| GridError::Parse(e.to_string()))?;
        let dim = h["dim"].as_u64().ok_or_else(|| GridError::Parse("missing dim".into()))?;
        let n = h["n"].as_u64().ok_or_else(|| GridError::Parse("missing n".into()))?;
        let length = h["L"].as_f64().ok_or_else(|| GridError::Parse("missing L".into()))?;
        let geometry = BoxGeometry::new(dim as usize, n as usize, length)?;
        let mut buf = vec![0u8; 8 * geometry.total_points()];
        r.read_exact(&mut buf)?;
        let samples = buf.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
        Self::from_samples(geometry, samples)
    }

    /// CSV export (`x,value`) for one-dimensional fields.
    pub fn write_csv_1d(&self, w: &mut impl Write) -> Result<(), GridError> {
        if self.geometry.dim != 1 {
            return Err(GridError::InvalidGeometry("csv export is 1-d only"));
        }
        writeln!(w, "x,value")?;
        for (i, v) in self.samples.iter().enumerate() {
            writeln!(w, "{},{}", self.geometry.coord_of(i), v)?;
        }
        Ok(())
    }
}

/// Operator family selector: `Ẽ_{α,1}`, `t·Ẽ_{α,2}` and `Ẽ_{α,α}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MultiplierFamily {
    E1,
    E2,
    Ealpha,
}

impl MultiplierFamily {
    pub fn beta(&self, alpha: f64) -> f64 {
        match self {
            MultiplierFamily::E1 => 1.0,
            MultiplierFamily::E2 => 2.0,
            MultiplierFamily::Ealpha => alpha,
        }
    }
}

/// A concrete Fourier multiplier `ξ ↦ E_{α,β}(-|ξ|² t^α)` (times `t` for E2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierKind {
    pub family: MultiplierFamily,
    pub alpha: f64,
    pub t: f64,
}

impl MultiplierKind {
    pub fn new(family: MultiplierFamily, alpha: f64, t: f64) -> Result<Self, GridError> {
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(GridError::InvalidOrder(alpha));
        }
        if !(t >= 0.0) {
            return Err(GridError::NegativeTime(t));
        }
        Ok(Self { family, alpha, t })
    }

    /// Scalar symbol at squared frequency `μ = |ξ|²`.
    pub fn symbol(&self, mu: f64) -> Result<f64, MlError> {
        let beta = self.family.beta(self.alpha);
        if self.t == 0.0 {
            // E1 → identity, E2 → zero operator, Ealpha → 1/Γ(α) Id
            return Ok(match self.family {
                MultiplierFamily::E2 => 0.0,
                _ => crate::mittag_leffler::recip_gamma(beta),
            });
        }
        let z = -mu * self.t.powf(self.alpha);
        let e = ml_eval(MLParams::new(self.alpha, beta, z))?;
        Ok(match self.family {
            MultiplierFamily::E2 => self.t * e,
            _ => e,
        })
    }
}

/// FFT plans plus cached mode tables for one geometry.
pub struct SpectralWorkspace {
    geom: BoxGeometry,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    /// integer |k|² per flat spectral index
    ksq: Vec<u64>,
    /// sorted distinct |k|² values
    distinct_ksq: Vec<u64>,
    /// map flat index -> position in `distinct_ksq`
    distinct_idx: Vec<u32>,
}

impl SpectralWorkspace {
    pub fn new(geom: BoxGeometry) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(geom.n);
        let inv = planner.plan_fft_inverse(geom.n);
        let total = geom.total_points();
        let ksq: Vec<u64> = (0..total).map(|f| geom.ksq_of(f)).collect();
        let mut sorted: Vec<u64> = ksq.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let map: BTreeMap<u64, u32> =
            sorted.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        let distinct_idx = ksq.iter().map(|k| map[k]).collect();
        Self { geom, fwd, inv, ksq, distinct_ksq: sorted, distinct_idx }
    }

    pub fn geometry(&self) -> &BoxGeometry {
        &self.geom
    }

    pub fn distinct_ksq(&self) -> &[u64] {
        &self.distinct_ksq
    }

    pub fn distinct_index(&self) -> &[u32] {
        &self.distinct_idx
    }

    pub fn ksq(&self) -> &[u64] {
        &self.ksq
    }

    fn transform_axis(&self, data: &mut [Complex64], axis: usize, forward: bool) {
        let n = self.geom.n;
        let dim = self.geom.dim;
        // stride between consecutive elements along `axis`
        let stride = n.pow((dim - 1 - axis) as u32);
        let plan = if forward { &self.fwd } else { &self.inv };
        let n_lines = data.len() / n;

        // Collect line start offsets: iterate all flat indices with axis-index 0.
        let mut starts = Vec::with_capacity(n_lines);
        let total = data.len();
        for base in 0..total {
            let axis_idx = (base / stride) % n;
            if axis_idx == 0 {
                starts.push(base);
            }
        }

        let data_ptr = SendPtr(data.as_mut_ptr());
        starts.par_iter().for_each_init(
            || vec![Complex64::default(); n],
            |line, &start| {
                let ptr = data_ptr; // capture
                // Safety: lines are disjoint index sets for fixed axis.
                unsafe {
                    for (i, v) in line.iter_mut().enumerate() {
                        *v = *ptr.0.add(start + i * stride);
                    }
                }
                plan.process(line);
                unsafe {
                    for (i, v) in line.iter().enumerate() {
                        *ptr.0.add(start + i * stride) = *v;
                    }
                }
            },
        );
    }

    /// Unnormalized forward DFT of the samples.
    pub fn forward(&self, f: &GridFunction) -> Vec<Complex64> {
        let mut data: Vec<Complex64> =
            f.samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        for a in 0..self.geom.dim {
            self.transform_axis(&mut data, a, true);
        }
        data
    }

    /// Inverse of [`Self::forward`] (including the 1/n^N normalization),
    /// returning the real part.
    pub fn inverse(&self, mut spec: Vec<Complex64>) -> Vec<f64> {
        for a in 0..self.geom.dim {
            self.transform_axis(&mut spec, a, false);
        }
        let scale = 1.0 / self.geom.total_points() as f64;
        spec.iter().map(|c| c.re * scale).collect()
    }

    /// Multiplier symbol table over the distinct squared wavenumbers.
    pub fn symbol_table(&self, kind: &MultiplierKind) -> Result<Vec<f64>, GridError> {
        self.distinct_ksq
            .iter()
            .map(|&k| kind.symbol(self.geom.xi_sq(k)).map_err(GridError::from))
            .collect()
    }

    /// Apply a diagonal symbol given per-distinct-|k|² values.
    pub fn apply_table(&self, spec: &mut [Complex64], table: &[f64]) {
        spec.par_iter_mut().zip(self.distinct_idx.par_iter()).for_each(|(c, &i)| {
            *c *= table[i as usize];
        });
    }
}

#[derive(Clone, Copy)]
struct SendPtr(*mut Complex64);
unsafe impl Send for SendPtr {}
unsafe impl Sync for SendPtr {}

/// Apply the Fourier multiplier `kind` to `f`.
pub fn apply_multiplier(kind: &MultiplierKind, f: &GridFunction) -> Result<GridFunction, GridError> {
    let ws = SpectralWorkspace::new(*f.geometry());
    apply_multiplier_with(&ws, kind, f)
}

/// Same as [`apply_multiplier`] with a reusable workspace.
pub fn apply_multiplier_with(
    ws: &SpectralWorkspace,
    kind: &MultiplierKind,
    f: &GridFunction,
) -> Result<GridFunction, GridError> {
    if ws.geometry() != f.geometry() {
        return Err(GridError::GeometryMismatch);
    }
    let table = ws.symbol_table(kind)?;
    let mut spec = ws.forward(f);
    ws.apply_table(&mut spec, &table);
    let samples = ws.inverse(spec);
    GridFunction::from_samples(*f.geometry(), samples)
}

/// Physical-space kernel of the multiplier: the inverse transform applied to
/// the discrete delta at the origin, normalized so the Riemann-sum integral
/// over the box equals the zero-mode symbol.
pub fn realize_kernel(kind: &MultiplierKind, geom: BoxGeometry) -> Result<GridFunction, GridError> {
    if !(kind.t > 0.0) {
        return Err(GridError::NegativeTime(kind.t));
    }
    let ws = SpectralWorkspace::new(geom);
    let table = ws.symbol_table(kind)?;
    // kernel(x_j) = (1/V) Σ_k m(ξ_k) e^{i ξ_k x_j}; the centered coordinates
    // introduce a (-1)^{Σ index} phase relative to the plain inverse DFT
    let mut spec: Vec<Complex64> = Vec::with_capacity(geom.total_points());
    for flat in 0..geom.total_points() {
        let idx = geom.axis_indices(flat);
        let parity: usize = idx[..geom.dim].iter().sum();
        let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
        spec.push(Complex64::new(sign * table[ws.distinct_idx[flat] as usize], 0.0));
    }
    let vals = ws.inverse(spec);
    let scale = geom.total_points() as f64 / geom.volume();
    GridFunction::from_samples(geom, vals.iter().map(|v| v * scale).collect())
}

/// Riemann-sum `L^p` norm; `p = f64::INFINITY` gives the max norm.
pub fn lp_norm(f: &GridFunction, p: f64) -> Result<f64, GridError> {
    if p.is_nan() || p < 1.0 {
        return Err(GridError::InvalidExponent(p));
    }
    if p.is_infinite() {
        return Ok(f.samples.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    }
    let cell = f.geometry.cell_volume();
    if p == 1.0 {
        return Ok(f.samples.iter().map(|v| v.abs()).sum::<f64>() * cell);
    }
    if p == 2.0 {
        return Ok((f.samples.iter().map(|v| v * v).sum::<f64>() * cell).sqrt());
    }
    Ok((f.samples.iter().map(|v| v.abs().powf(p)).sum::<f64>() * cell).powf(1.0 / p))
}

/// Homogeneous negative-order norm `‖ |ξ|^{-s} f̂ ‖` measured in `L^p`:
/// diagonal realization with the zero mode excluded (which must carry no
/// mass: the mean of `f` has to vanish).
pub fn sobolev_neg_norm(f: &GridFunction, order: f64, p_index: f64) -> Result<f64, GridError> {
    if !(order > 0.0) {
        return Err(GridError::InvalidExponent(order));
    }
    let sup = f.samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mean = f.mean();
    if mean.abs() > 1e-12 * sup.max(f64::MIN_POSITIVE) {
        return Err(GridError::NonzeroMean(mean));
    }
    let ws = SpectralWorkspace::new(*f.geometry());
    let mut spec = ws.forward(f);
    for (c, &k) in spec.iter_mut().zip(ws.ksq.iter()) {
        if k == 0 {
            *c = Complex64::new(0.0, 0.0);
        } else {
            *c *= f.geometry.xi_sq(k).powf(-0.5 * order);
        }
    }
    let vals = ws.inverse(spec);
    let g = GridFunction::from_samples(*f.geometry(), vals)?;
    lp_norm(&g, p_index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn geom1(n: usize, l: f64) -> BoxGeometry {
        BoxGeometry::new(1, n, l).unwrap()
    }

    #[test]
    fn roundtrip_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for geom in [geom1(64, 5.0), BoxGeometry::new(2, 16, 3.0).unwrap(), BoxGeometry::new(3, 8, 2.0).unwrap()] {
            let f = GridFunction::from_samples(
                geom,
                (0..geom.total_points()).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            )
            .unwrap();
            let ws = SpectralWorkspace::new(geom);
            let back = ws.inverse(ws.forward(&f));
            let max = f.samples().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (a, b) in f.samples().iter().zip(back.iter()) {
                assert!((a - b).abs() <= 1e-12 * max, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn parseval_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let geom = BoxGeometry::new(2, 32, 7.0).unwrap();
        let f = GridFunction::from_samples(
            geom,
            (0..geom.total_points()).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )
        .unwrap();
        let physical = lp_norm(&f, 2.0).unwrap();
        let ws = SpectralWorkspace::new(geom);
        let spec = ws.forward(&f);
        let mode_sum: f64 = spec.iter().map(|c| c.norm_sqr()).sum();
        let spectral = (mode_sum * geom.cell_volume() / geom.total_points() as f64).sqrt();
        assert!((physical - spectral).abs() < 1e-10 * physical);
    }

    #[test]
    fn identity_at_time_zero() {
        let geom = geom1(64, 10.0);
        let f = GridFunction::from_fn(geom, |x| (x[0] * 0.9).sin() + 0.2);
        let kind = MultiplierKind::new(MultiplierFamily::E1, 1.5, 0.0).unwrap();
        let g = apply_multiplier(&kind, &f).unwrap();
        for (a, b) in f.samples().iter().zip(g.samples()) {
            assert!((a - b).abs() < 1e-12);
        }
        let kind2 = MultiplierKind::new(MultiplierFamily::E2, 1.5, 0.0).unwrap();
        let h = apply_multiplier(&kind2, &f).unwrap();
        assert!(h.samples().iter().all(|&v| v.abs() < 1e-14));
    }

    #[test]
    fn constants_are_preserved_by_e1() {
        let geom = BoxGeometry::new(2, 16, 4.0).unwrap();
        let f = GridFunction::from_fn(geom, |_| 2.5);
        let kind = MultiplierKind::new(MultiplierFamily::E1, 1.7, 3.0).unwrap();
        let g = apply_multiplier(&kind, &f).unwrap();
        for v in g.samples() {
            assert!((v - 2.5).abs() < 1e-12, "{v}");
        }
    }

    #[test]
    fn single_mode_scales_by_symbol() {
        let geom = geom1(128, 6.0);
        let xi = 2.0 * std::f64::consts::PI / geom.length;
        let f = GridFunction::from_fn(geom, |x| (xi * x[0]).cos());
        let kind = MultiplierKind::new(MultiplierFamily::Ealpha, 1.5, 1.0).unwrap();
        let want = ml_eval(MLParams::new(1.5, 1.5, -xi * xi)).unwrap();
        let g = apply_multiplier(&kind, &f).unwrap();
        for (a, b) in f.samples().iter().zip(g.samples()) {
            assert!((b - want * a).abs() < 1e-12, "{b} vs {}", want * a);
        }
    }

    #[test]
    fn multiplier_commutes_with_translation() {
        let geom = geom1(64, 5.0);
        let f = GridFunction::from_fn(geom, |x| (-x[0] * x[0]).exp());
        let shift = 9usize;
        let shifted = GridFunction::from_samples(
            geom,
            (0..64).map(|i| f.samples()[(i + 64 - shift) % 64]).collect(),
        )
        .unwrap();
        let kind = MultiplierKind::new(MultiplierFamily::E1, 1.4, 0.7).unwrap();
        let a = apply_multiplier(&kind, &shifted).unwrap();
        let b = apply_multiplier(&kind, &f).unwrap();
        for i in 0..64 {
            let want = b.samples()[(i + 64 - shift) % 64];
            assert!((a.samples()[i] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_mass_equals_zero_mode_symbol() {
        for family in [MultiplierFamily::E1, MultiplierFamily::Ealpha] {
            let geom = geom1(256, 40.0);
            let kind = MultiplierKind::new(family, 1.5, 0.8).unwrap();
            let k = realize_kernel(&kind, geom).unwrap();
            let want = crate::mittag_leffler::recip_gamma(family.beta(1.5));
            assert!(
                (k.integral() - want).abs() < 1e-10,
                "family {:?}: {} vs {want}",
                family,
                k.integral()
            );
        }
    }

    #[test]
    fn kernel_of_e1_at_small_t_approximates_delta() {
        let geom = geom1(512, 20.0);
        let kind = MultiplierKind::new(MultiplierFamily::E1, 1.5, 1e-4).unwrap();
        let k = realize_kernel(&kind, geom).unwrap();
        // mass 1, concentrated near the origin (index n/2)
        assert!((k.integral() - 1.0).abs() < 1e-9);
        let peak_idx =
            (0..512).max_by(|&a, &b| k.samples()[a].abs().partial_cmp(&k.samples()[b].abs()).unwrap()).unwrap();
        assert_eq!(peak_idx, 256);
        let half_mass: f64 = (246..266).map(|i| k.samples()[i]).sum::<f64>() * geom.cell_volume();
        assert!(half_mass > 0.9, "mass near origin {half_mass}");
    }

    #[test]
    fn lp_norms_on_reference_fields() {
        let geom = BoxGeometry::new(2, 32, 3.0).unwrap();
        let one = GridFunction::from_fn(geom, |_| 1.0);
        // ||1||_2 = V^{1/2}
        assert!((lp_norm(&one, 2.0).unwrap() - 3.0).abs() < 1e-12);
        assert!((lp_norm(&one, f64::INFINITY).unwrap() - 1.0).abs() < 1e-15);
        let zero = GridFunction::zeros(geom);
        assert_eq!(lp_norm(&zero, 1.0).unwrap(), 0.0);
        assert!(matches!(lp_norm(&one, 0.5), Err(GridError::InvalidExponent(_))));
    }

    #[test]
    fn l1_norm_converges_to_reference_quadrature() {
        // smooth bump integrated at two resolutions vs a fine reference
        let f = |x: f64| (-x * x / 0.18).exp();
        let reference: f64 = {
            let geom = geom1(8192, 10.0);
            let g = GridFunction::from_fn(geom, |x| f(x[0]));
            lp_norm(&g, 1.0).unwrap()
        };
        let geom = geom1(256, 10.0);
        let g = GridFunction::from_fn(geom, |x| f(x[0]));
        let coarse = lp_norm(&g, 1.0).unwrap();
        assert!((coarse - reference).abs() < 1e-6 * reference, "{coarse} vs {reference}");
    }

    #[test]
    fn sobolev_negative_norm_diagonal_action() {
        let geom = geom1(64, 2.0 * std::f64::consts::PI);
        // single mode k=2 → |ξ| = 2
        let f = GridFunction::from_fn(geom, |x| (2.0 * x[0]).sin());
        let s = 1.3;
        let norm = sobolev_neg_norm(&f, s, 2.0).unwrap();
        let base = lp_norm(&f, 2.0).unwrap();
        let want = base * 2.0f64.powf(-s);
        assert!((norm - want).abs() < 1e-10 * want, "{norm} vs {want}");
        // zero field
        let z = GridFunction::zeros(geom);
        assert_eq!(sobolev_neg_norm(&z, 1.0, 2.0).unwrap(), 0.0);
        // nonzero mean is rejected
        let c = GridFunction::from_fn(geom, |_| 1.0);
        assert!(matches!(sobolev_neg_norm(&c, 1.0, 2.0), Err(GridError::NonzeroMean(_))));
    }

    #[test]
    fn sobolev_norm_decreases_in_order_for_high_frequency_fields() {
        let geom = geom1(64, 2.0 * std::f64::consts::PI);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // random zero-mean field with |k| >= 1 content only (any sampled field qualifies
        // once the mean is removed; frequencies on this box have |ξ| >= 1)
        let mut vals: Vec<f64> = (0..64).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mean = vals.iter().sum::<f64>() / 64.0;
        for v in &mut vals {
            *v -= mean;
        }
        let f = GridFunction::from_samples(geom, vals).unwrap();
        let n1 = sobolev_neg_norm(&f, 0.7, 2.0).unwrap();
        let n2 = sobolev_neg_norm(&f, 1.9, 2.0).unwrap();
        assert!(n2 < n1, "norm should decrease with order: {n2} vs {n1}");
    }

    #[test]
    fn binary_round_trip() {
        let geom = BoxGeometry::new(2, 16, 1.5).unwrap();
        let f = GridFunction::from_fn(geom, |x| x[0] + 2.0 * x[1] * x[1]);
        let mut buf = Vec::new();
        f.write_binary(&mut buf).unwrap();
        let g = GridFunction::read_binary(&mut std::io::Cursor::new(buf)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn geometry_validation() {
        assert!(BoxGeometry::new(4, 16, 1.0).is_err());
        assert!(BoxGeometry::new(2, 15, 1.0).is_err());
        assert!(BoxGeometry::new(2, 4, 1.0).is_err());
        assert!(BoxGeometry::new(2, 16, -1.0).is_err());
    }

    #[test]
    fn geometry_mismatch_is_reported() {
        let a = GridFunction::zeros(geom1(16, 1.0));
        let ws = SpectralWorkspace::new(geom1(32, 1.0));
        let kind = MultiplierKind::new(MultiplierFamily::E1, 1.5, 1.0).unwrap();
        assert!(matches!(
            apply_multiplier_with(&ws, &kind, &a),
            Err(GridError::GeometryMismatch)
        ));
    }
}
