//! JSON document types for the CLI. Parsing is strict: unknown keys are
//! rejected so a typo like `"P"` for `"p"` fails loudly instead of running
//! the wrong sweep.

use crate::mild_solver::{Nonlinearity, NonlinearityForm, SystemConfig, TimeMesh};
use crate::spectral_grid::{BoxGeometry, GridFunction};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    pub dim: usize,
    pub n: usize,
    #[serde(rename = "L")]
    pub length: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "profile", rename_all = "snake_case")]
pub enum ProfileSpec {
    Zero,
    Gaussian { amplitude: f64, width: f64 },
    Bump { amplitude: f64, radius: f64 },
    SingleMode { amplitude: f64, k: Vec<i64> },
}

impl ProfileSpec {
    pub fn realize(&self, geom: BoxGeometry) -> GridFunction {
        use crate::mild_solver::profiles;
        match self {
            ProfileSpec::Zero => GridFunction::zeros(geom),
            ProfileSpec::Gaussian { amplitude, width } => {
                profiles::gaussian(geom, *amplitude, *width)
            }
            ProfileSpec::Bump { amplitude, radius } => profiles::bump(geom, *amplitude, *radius),
            ProfileSpec::SingleMode { amplitude, k } => {
                profiles::single_mode(geom, *amplitude, k)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub struct NonlinearitySpec {
    pub f_form: FormSpec,
    pub g_form: FormSpec,
    pub sign_f: f64,
    pub sign_g: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum FormSpec {
    SignedPower,
    AbsolutePower,
    Zero,
}

impl FormSpec {
    fn form(&self) -> NonlinearityForm {
        match self {
            FormSpec::SignedPower => NonlinearityForm::SignedPower,
            FormSpec::AbsolutePower => NonlinearityForm::AbsolutePower,
            FormSpec::Zero => NonlinearityForm::Zero,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshSpec {
    pub horizon: f64,
    pub steps: usize,
    /// omitted → the kernel-resolving default 2/min(γ₁,γ₂)
    #[serde(default)]
    pub grading: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct NormSpec {
    #[serde(default)]
    pub s1: Option<f64>,
    #[serde(default)]
    pub s2: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapSpec {
    pub blowup_cap: f64,
}

impl Default for CapSpec {
    fn default() -> Self {
        Self { blowup_cap: 1e6 }
    }
}

/// Full `simulate` document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub geometry: GeometrySpec,
    pub orders: OrdersSpec,
    pub exponents: ExponentsSpec,
    pub nonlinearity: NonlinearitySpec,
    pub data: DataSpec,
    #[serde(default = "one")]
    pub data_scale: f64,
    pub mesh: MeshSpec,
    #[serde(default)]
    pub norms: NormSpec,
    #[serde(default)]
    pub caps: CapSpec,
    #[serde(default)]
    pub picard_sweeps: usize,
    #[serde(default)]
    pub snapshots: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub sequential_mode: bool,
    #[serde(default)]
    pub out_dir: Option<String>,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrdersSpec {
    pub gamma1: f64,
    pub gamma2: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentsSpec {
    pub p: f64,
    pub q: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSpec {
    pub u0: ProfileSpec,
    pub u1: ProfileSpec,
    pub v0: ProfileSpec,
    pub v1: ProfileSpec,
}

impl SimulateConfig {
    pub fn geometry(&self) -> Result<BoxGeometry, String> {
        BoxGeometry::new(self.geometry.dim, self.geometry.n, self.geometry.length)
            .map_err(|e| e.to_string())
    }

    pub fn system(&self) -> Result<SystemConfig, String> {
        let geom = self.geometry()?;
        let cfg = SystemConfig {
            gamma1: self.orders.gamma1,
            gamma2: self.orders.gamma2,
            f_nl: Nonlinearity {
                form: self.nonlinearity.f_form.form(),
                sign: self.nonlinearity.sign_f,
                exponent: self.exponents.p,
            },
            g_nl: Nonlinearity {
                form: self.nonlinearity.g_form.form(),
                sign: self.nonlinearity.sign_g,
                exponent: self.exponents.q,
            },
            geometry: geom,
            u0: self.data.u0.realize(geom),
            u1: self.data.u1.realize(geom),
            v0: self.data.v0.realize(geom),
            v1: self.data.v1.realize(geom),
            data_scale: self.data_scale,
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }

    pub fn mesh(&self) -> Result<TimeMesh, String> {
        let grading = self
            .mesh
            .grading
            .unwrap_or(2.0 / self.orders.gamma1.min(self.orders.gamma2));
        TimeMesh::new(self.mesh.horizon, self.mesh.steps, grading).map_err(|e| e.to_string())
    }
}

/// Axis specification inside a sweep grid: an explicit list or a linspace.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, untagged)]
pub enum AxisSpec {
    List(Vec<f64>),
    Linspace { min: f64, max: f64, count: usize },
}

impl AxisSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            AxisSpec::List(v) => v.clone(),
            AxisSpec::Linspace { min, max, count } => {
                if *count <= 1 {
                    vec![*min]
                } else {
                    (0..*count)
                        .map(|i| min + (max - min) * i as f64 / (*count as f64 - 1.0))
                        .collect()
                }
            }
        }
    }
}

/// `sweep --grid` document: the Cartesian product of the axes.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub gamma1: AxisSpec,
    pub gamma2: AxisSpec,
    pub p: AxisSpec,
    pub q: AxisSpec,
    #[serde(rename = "N")]
    pub dims: Vec<u32>,
    #[serde(default)]
    pub out_dir: Option<String>,
}

/// `find-threshold` document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdConfig {
    pub template: SimulateConfig,
    /// [ε_lo, ε_hi]: lo must complete, hi must blow up
    pub bracket: [f64; 2],
    /// stop when the bracket width falls below this fraction of ε_hi
    #[serde(default = "default_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_bisections")]
    pub max_bisections: usize,
    #[serde(default)]
    pub out_dir: Option<String>,
}

fn default_tol() -> f64 {
    0.05
}

fn default_bisections() -> usize {
    20
}
