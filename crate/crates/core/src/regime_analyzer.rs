//! Classification of parameter regimes and evaluation of every derived
//! exponent in the global-existence and blow-up theorems.
//!
//! Everything here is plain f64 arithmetic on the tuple
//! `(γ₁, γ₂, p, q, N)`: the critical-dimension inequality for small-data
//! global existence, the two four-term blow-up condition blocks, the δ
//! window with the exponents r₁, r₂, s₁, s₂, σ₁, σ₂ it generates, the
//! bootstrap index iteration, and the test-function exponents δ₁, δ₂ of the
//! blow-up argument.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegimeError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("empty delta window: ({lo}, {hi})")]
    EmptyDeltaWindow { lo: f64, hi: f64 },
    #[error("delta {0} outside the admissible window ({1}, {2})")]
    InvalidDelta(f64, f64, f64),
    #[error("eta {0} outside (0, {1})")]
    InvalidEta(f64, f64),
    #[error("bootstrap iteration exceeded {0} steps")]
    DivergedIteration(usize),
}

/// A parameter tuple of the coupled system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub gamma1: f64,
    pub gamma2: f64,
    pub p: f64,
    pub q: f64,
    pub dim: u32,
}

impl ParamPoint {
    pub fn new(gamma1: f64, gamma2: f64, p: f64, q: f64, dim: u32) -> Result<Self, RegimeError> {
        let pt = Self { gamma1, gamma2, p, q, dim };
        pt.validate()?;
        Ok(pt)
    }

    pub fn validate(&self) -> Result<(), RegimeError> {
        if !(self.gamma1 > 1.0 && self.gamma1 < 2.0 && self.gamma2 > 1.0 && self.gamma2 < 2.0) {
            return Err(RegimeError::InvalidParams(format!(
                "orders must lie in (1,2): gamma1={}, gamma2={}",
                self.gamma1, self.gamma2
            )));
        }
        if !(self.p >= 1.0 && self.q >= 1.0) {
            return Err(RegimeError::InvalidParams(format!(
                "exponents must be >= 1: p={}, q={}",
                self.p, self.q
            )));
        }
        if !(self.p * self.q > 1.0) {
            return Err(RegimeError::InvalidParams(format!(
                "need pq > 1: p={}, q={}",
                self.p, self.q
            )));
        }
        if self.dim == 0 {
            return Err(RegimeError::InvalidParams("dimension must be >= 1".into()));
        }
        Ok(())
    }

    /// Swap the roles of the two equations: `(γ₁,p) ↔ (γ₂,q)`.
    pub fn role_swapped(&self) -> Self {
        Self { gamma1: self.gamma2, gamma2: self.gamma1, p: self.q, q: self.p, dim: self.dim }
    }
}

/// One evaluated inequality of a theorem condition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    GlobalSmallData,
    BlowUp,
    /// Neither sufficient condition holds: the theorems leave this point open.
    Indeterminate,
    /// The global-existence hypotheses cannot be met in either role
    /// assignment and the blow-up condition fails too.
    BothConditionsFail,
    /// Both sufficient conditions evaluate true within the boundary
    /// tolerance — mathematically impossible, flagged for review.
    Inconsistent,
}

/// Exponents derived from a δ in the admissible window.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivedExponents {
    pub delta: f64,
    pub delta_window: (f64, f64),
    pub r1: f64,
    pub r2: f64,
    pub s1: f64,
    pub s2: f64,
    pub sigma1: f64,
    pub sigma2: f64,
}

/// Bootstrap sequences `{s_i'}, {s_i''}` and the stopping index.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BootstrapResult {
    pub s_prime: Vec<f64>,
    pub s_second: Vec<f64>,
    pub i0: usize,
}

/// Test-function exponents of the blow-up argument for one scaling choice λ.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BlowupExponents {
    pub lambda: f64,
    pub delta1: f64,
    pub delta2: f64,
}

/// Full classification report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegimeReport {
    pub point: ParamPoint,
    /// point after role normalization (γ₁ ≤ γ₂ and p ≤ q), when achievable
    pub normalized: Option<ParamPoint>,
    pub roles_swapped: bool,
    pub classification: Classification,
    pub inequalities: Vec<InequalityRecord>,
    pub derived: Option<DerivedExponents>,
    /// δ₁, δ₂ for λ = γ₁/2 and λ = γ₂/2 (needs p, q > 1)
    pub blowup_exponents: Vec<BlowupExponents>,
    /// which L^∞-decay clause of the global theorem applies, when global
    pub decay_flags: Vec<String>,
}

/// Boundary tolerance: conditions within this of equality on both sides are
/// flagged [`Classification::Inconsistent`] rather than resolved by fiat.
const BOUNDARY_TOL: f64 = 1e-12;

/// The critical-dimension condition of the global-existence theorem for a
/// role-normalized point: `N/2 ≥ max{1/γ₁ + (q+1)/(pq-1), 1/γ₁ + (pγ₂+γ₁)/(γ₁(pq-1))}`.
fn gelt_condition(pt: &ParamPoint) -> (f64, f64, f64) {
    let pq1 = pt.p * pt.q - 1.0;
    let a = 1.0 / pt.gamma1 + (pt.q + 1.0) / pq1;
    let b = 1.0 / pt.gamma1 + (pt.p * pt.gamma2 + pt.gamma1) / (pt.gamma1 * pq1);
    (pt.dim as f64 / 2.0, a, b)
}

/// The two four-term minimum blocks of the blow-up condition; blow-up holds
/// if `N/2` is below either minimum.
fn neg_blocks(pt: &ParamPoint) -> ([f64; 4], [f64; 4]) {
    let (g1, g2, p, q) = (pt.gamma1, pt.gamma2, pt.p, pt.q);
    let pq1 = p * q - 1.0;
    let block1 = [
        1.0 / g1 + (g1 + p * g2) / (g1 * pq1),
        1.0 / g1 + (1.0 + p) / pq1,
        1.0 / g1 + (g2 + q * g1) / (g1 * pq1),
        (1.0 - g2) / g1 + q * (p + 1.0) / pq1,
    ];
    let block2 = [
        1.0 / g2 + (g1 + g2 * p) / (g2 * pq1),
        (1.0 - g1) / g2 + p * (q + 1.0) / pq1,
        1.0 / g2 + (g2 + g1 * q) / (g2 * pq1),
        1.0 / g2 + (1.0 + q) / pq1,
    ];
    (block1, block2)
}

/// Classify a parameter point against both theorems.
pub fn classify(point: &ParamPoint) -> Result<RegimeReport, RegimeError> {
    point.validate()?;
    let mut inequalities = Vec::new();

    // Global-existence side needs N ≥ 2 and the normalized roles
    // γ₁ ≤ γ₂, p ≤ q (one simultaneous swap may achieve this).
    let mut roles_swapped = false;
    let normalized = if point.gamma1 <= point.gamma2 && point.p <= point.q {
        Some(*point)
    } else {
        let sw = point.role_swapped();
        if sw.gamma1 <= sw.gamma2 && sw.p <= sw.q {
            roles_swapped = true;
            Some(sw)
        } else {
            None
        }
    };

    let mut global = false;
    let mut global_boundary = false;
    if point.dim >= 2 {
        if let Some(npt) = &normalized {
            let (lhs, a, b) = gelt_condition(npt);
            let rhs = a.max(b);
            global = lhs >= rhs;
            global_boundary = (lhs - rhs).abs() <= BOUNDARY_TOL;
            inequalities.push(InequalityRecord {
                name: "global: N/2 >= 1/gamma1 + (q+1)/(pq-1)".into(),
                lhs,
                rhs: a,
                satisfied: lhs >= a,
            });
            inequalities.push(InequalityRecord {
                name: "global: N/2 >= 1/gamma1 + (p*gamma2+gamma1)/(gamma1*(pq-1))".into(),
                lhs,
                rhs: b,
                satisfied: lhs >= b,
            });
        } else {
            inequalities.push(InequalityRecord {
                name: "global: role normalization gamma1<=gamma2, p<=q".into(),
                lhs: f64::NAN,
                rhs: f64::NAN,
                satisfied: false,
            });
        }
    } else {
        inequalities.push(InequalityRecord {
            name: "global: N >= 2".into(),
            lhs: point.dim as f64,
            rhs: 2.0,
            satisfied: false,
        });
    }

    // Blow-up side needs p > 1 and q > 1 (and positive-average data, which
    // is a property of the run, not of the parameter point).
    let mut blowup = false;
    let mut blowup_boundary = false;
    if point.p > 1.0 && point.q > 1.0 {
        let (b1, b2) = neg_blocks(point);
        let m1 = b1.iter().cloned().fold(f64::INFINITY, f64::min);
        let m2 = b2.iter().cloned().fold(f64::INFINITY, f64::min);
        let lhs = point.dim as f64 / 2.0;
        blowup = lhs < m1 || lhs < m2;
        blowup_boundary = (lhs - m1).abs() <= BOUNDARY_TOL || (lhs - m2).abs() <= BOUNDARY_TOL;
        for (bi, (name, m)) in
            [("blowup block 1", m1), ("blowup block 2", m2)].iter().enumerate()
        {
            let _ = bi;
            inequalities.push(InequalityRecord {
                name: format!("{name}: N/2 < min block"),
                lhs,
                rhs: *m,
                satisfied: lhs < *m,
            });
        }
    } else {
        inequalities.push(InequalityRecord {
            name: "blowup: p > 1 and q > 1".into(),
            lhs: point.p.min(point.q),
            rhs: 1.0,
            satisfied: false,
        });
    }

    let classification = match (global, blowup) {
        (true, true) => Classification::Inconsistent,
        (true, false) => {
            if blowup_boundary {
                Classification::Inconsistent
            } else {
                Classification::GlobalSmallData
            }
        }
        (false, true) => {
            if global_boundary {
                Classification::Inconsistent
            } else {
                Classification::BlowUp
            }
        }
        (false, false) => {
            if normalized.is_some() && point.dim >= 2 && point.p > 1.0 && point.q > 1.0 {
                Classification::Indeterminate
            } else {
                Classification::BothConditionsFail
            }
        }
    };

    let derived = if classification == Classification::GlobalSmallData {
        derive_exponents(normalized.as_ref().unwrap(), None).ok()
    } else {
        None
    };

    let mut decay_flags = Vec::new();
    if let Some(d) = &derived {
        let npt = normalized.as_ref().unwrap();
        let n = npt.dim as f64;
        let pn = npt.p * n / (2.0 * d.s2);
        let qn = npt.q * n / (2.0 * d.s1);
        if pn < 1.0 && qn < 1.0 {
            decay_flags.push("pN/(2s2) < 1 and qN/(2s1) < 1".into());
        } else if n > 2.0 && pn < 1.0 && qn >= 1.0 {
            decay_flags.push("N>2, pN/(2s2) < 1 <= qN/(2s1)".into());
        } else if n > 2.0 && pn >= 1.0 && qn >= 1.0 {
            let clause =
                ((npt.p + 1.0) * npt.q * npt.gamma1 / ((npt.q + 1.0) * npt.p)).sqrt();
            if npt.q >= npt.p && npt.p > 1.0 && clause < npt.gamma1 {
                decay_flags.push(
                    "N>2, both >= 1, sqrt((p+1)q*gamma1/((q+1)p)) < gamma1".into(),
                );
            } else {
                decay_flags.push("N>2, both >= 1, extra-decay clause fails".into());
            }
        }
    }

    let blowup_exponents = if point.p > 1.0 && point.q > 1.0 {
        blowup_proof_exponents(point)?
    } else {
        Vec::new()
    };

    Ok(RegimeReport {
        point: *point,
        normalized,
        roles_swapped,
        classification,
        inequalities,
        derived,
        blowup_exponents,
        decay_flags,
    })
}

/// Admissible δ window `(1 - (pq-1)/(q(p+1)γ₂), min{1, N(pq-1)/(2q(p+1))})`
/// for a role-normalized point.
pub fn delta_window(pt: &ParamPoint) -> (f64, f64) {
    let pq1 = pt.p * pt.q - 1.0;
    let lo = 1.0 - pq1 / (pt.q * (pt.p + 1.0) * pt.gamma2);
    let hi = 1.0f64.min(pt.dim as f64 * pq1 / (2.0 * pt.q * (pt.p + 1.0)));
    (lo, hi)
}

/// Derive `r₁, r₂, s₁, s₂, σ₁, σ₂` from δ (`None` → window midpoint).
pub fn derive_exponents(
    pt: &ParamPoint,
    delta: Option<f64>,
) -> Result<DerivedExponents, RegimeError> {
    pt.validate()?;
    let (lo, hi) = delta_window(pt);
    if !(lo < hi) {
        return Err(RegimeError::EmptyDeltaWindow { lo, hi });
    }
    let delta = match delta {
        Some(d) => {
            if !(d > lo && d < hi) {
                return Err(RegimeError::InvalidDelta(d, lo, hi));
            }
            d
        }
        None => 0.5 * (lo + hi),
    };

    let (g1, g2, p, q, n) = (pt.gamma1, pt.gamma2, pt.p, pt.q, pt.dim as f64);
    let pq1 = p * q - 1.0;
    let r1 = n * g1 * pq1 / (2.0 * (g1 * (1.0 + delta * p) + g2 * p * (1.0 - delta)));
    let r2 = n * g2 * pq1 / (2.0 * (g2 * (1.0 + delta * q) + g1 * q * (1.0 - delta)));
    let s1 = 1.0 / (2.0 * delta / n * (p + 1.0) / pq1);
    let s2 = 1.0 / (2.0 * delta / n * (q + 1.0) / pq1);
    let sigma1 = (1.0 - delta) * (g1 + g2 * p) / pq1;
    let sigma2 = (1.0 - delta) * (g2 + g1 * q) / pq1;

    // identity chain: 1/r₁ = (2/(Nγ₁))σ₁ + 1/s₁ and its mirror
    debug_assert!(
        ((2.0 / (n * g1)) * sigma1 + 1.0 / s1 - 1.0 / r1).abs() < 1e-12,
        "r1 identity broken"
    );
    debug_assert!(
        ((2.0 / (n * g2)) * sigma2 + 1.0 / s2 - 1.0 / r2).abs() < 1e-12,
        "r2 identity broken"
    );

    Ok(DerivedExponents { delta, delta_window: (lo, hi), r1, r2, s1, s2, sigma1, sigma2 })
}

/// The three zero-sum identities tying the derived exponents together;
/// returns the residuals (all should vanish to roundoff).
pub fn exponent_identities(pt: &ParamPoint, d: &DerivedExponents) -> [f64; 4] {
    let (g1, g2, p, q, n) = (pt.gamma1, pt.gamma2, pt.p, pt.q, pt.dim as f64);
    let i1 = d.sigma1 + g1 - (n / 2.0) * g1 * (p / d.s2 - 1.0 / d.s1) - p * d.sigma2;
    let i2 = d.sigma1 + g1 - (n / 2.0) * g1 * (p / d.s2 - 1.0 / d.s1)
        + (g2 - (n / 2.0) * g2 * (q / d.s1 - 1.0 / d.s2) - q * d.sigma1) * p;
    let i3 = (n / 2.0) * (p / d.s2 - 1.0 / d.s1) - d.delta;
    let i4 = (n / 2.0) * (q / d.s1 - 1.0 / d.s2) - d.delta;
    [i1, i2, i3, i4]
}

/// The window inequality chain `s₁>q, s₂>p, ps₁>s₂, qs₂>s₁, s₁>r₁>1, s₂>r₂>1`
/// plus the kernel-integrability bounds; returns any violated names.
pub fn window_inequalities(pt: &ParamPoint, d: &DerivedExponents) -> Vec<&'static str> {
    let mut bad = Vec::new();
    let (g1, g2, p, q, n) = (pt.gamma1, pt.gamma2, pt.p, pt.q, pt.dim as f64);
    if !(d.s1 > q) {
        bad.push("s1 > q");
    }
    if !(d.s2 > p) {
        bad.push("s2 > p");
    }
    if !(p * d.s1 > d.s2) {
        bad.push("p*s1 > s2");
    }
    if !(q * d.s2 > d.s1) {
        bad.push("q*s2 > s1");
    }
    if !(d.s1 > d.r1 && d.r1 > 1.0) {
        bad.push("s1 > r1 > 1");
    }
    if !(d.s2 > d.r2 && d.r2 > 1.0) {
        bad.push("s2 > r2 > 1");
    }
    if !((n / 2.0) * g1 * (1.0 / d.r1 - 1.0 / d.s1) * q < 1.0) {
        bad.push("(N/2)gamma1(1/r1-1/s1)q < 1");
    }
    if !((n / 2.0) * g2 * (1.0 / d.r2 - 1.0 / d.s2) * p < 1.0) {
        bad.push("(N/2)gamma2(1/r2-1/s2)p < 1");
    }
    bad
}

/// Bootstrap iteration `1/s_i' = p/s_{i-1}'' - 2/N + η`,
/// `1/s_i'' = q/s_{i-1}' - 2/N + η`, stopping when
/// `p/s_{i₀}'' < 2/N` or `q/s_{i₀}' < 2/N`.
pub fn bootstrap_indices(
    pt: &ParamPoint,
    exps: &DerivedExponents,
    eta: f64,
) -> Result<BootstrapResult, RegimeError> {
    pt.validate()?;
    let n = pt.dim as f64;
    let eta_cap = 2.0 * (1.0 - exps.delta) / n;
    if !(eta > 0.0 && eta < eta_cap) {
        return Err(RegimeError::InvalidEta(eta, eta_cap));
    }
    let two_over_n = 2.0 / n;
    let mut s_prime = vec![exps.s1];
    let mut s_second = vec![exps.s2];
    const MAX_ITERS: usize = 10_000;
    for i in 0..=MAX_ITERS {
        let sp = *s_prime.last().unwrap();
        let ss = *s_second.last().unwrap();
        if pt.p / ss < two_over_n || pt.q / sp < two_over_n {
            return Ok(BootstrapResult { s_prime, s_second, i0: i + 1 });
        }
        if i == MAX_ITERS {
            break;
        }
        let inv_sp_next = pt.p / ss - two_over_n + eta;
        let inv_ss_next = pt.q / sp - two_over_n + eta;
        // a nonpositive reciprocal means the norm index escaped to infinity:
        // the stopping rule must already fire on the next check
        s_prime.push(if inv_sp_next > 0.0 { 1.0 / inv_sp_next } else { f64::INFINITY });
        s_second.push(if inv_ss_next > 0.0 { 1.0 / inv_ss_next } else { f64::INFINITY });
    }
    Err(RegimeError::DivergedIteration(MAX_ITERS))
}

/// Test-function exponents δ₁, δ₂ of the blow-up argument for both scaling
/// choices `λ ∈ {γ₁/2, γ₂/2}`.
///
/// For a given λ the two Hölder factors scale like
/// `T^{(-q'γ₁+1+Nλ)/q'}` / `T^{(-2λq'+1+Nλ)/q'}` (and the p'-side analogues
/// with γ₂); δ₁ combines the worst factors with weight `1/q` on the second
/// block plus `γ₁ - 2`, and δ₂ mirrors it with `1/p` and `γ₂ - 2`. At
/// `λ = γ₁/2` the two q'-side exponents coincide and the expression reduces
/// to the printed max-of-two display.
pub fn blowup_proof_exponents(pt: &ParamPoint) -> Result<Vec<BlowupExponents>, RegimeError> {
    pt.validate()?;
    if !(pt.p > 1.0 && pt.q > 1.0) {
        return Err(RegimeError::InvalidParams(format!(
            "blow-up exponents need p, q > 1: p={}, q={}",
            pt.p, pt.q
        )));
    }
    let (g1, g2, p, q, n) = (pt.gamma1, pt.gamma2, pt.p, pt.q, pt.dim as f64);
    let qp = q / (q - 1.0); // q'
    let pp = p / (p - 1.0); // p'
    let pq = p * q;
    let amp = pq / (pq - 1.0);

    let mut out = Vec::with_capacity(2);
    for lambda in [0.5 * g1, 0.5 * g2] {
        let a_exps = [
            (-qp * g1 + 1.0 + n * lambda) / qp,
            (-2.0 * lambda * qp + 1.0 + n * lambda) / qp,
        ];
        let b_exps = [
            (-pp * g2 + 1.0 + n * lambda) / pp,
            (-2.0 * lambda * pp + 1.0 + n * lambda) / pp,
        ];
        let a = a_exps[0].max(a_exps[1]);
        let b = b_exps[0].max(b_exps[1]);
        let delta1 = (a + b / q) * amp + g1 - 2.0;
        let delta2 = (b + a / p) * amp + g2 - 2.0;
        out.push(BlowupExponents { lambda, delta1, delta2 });
    }
    Ok(out)
}
