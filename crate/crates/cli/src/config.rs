//! JSON run configuration.
//!
//! Fourier coefficients are 1-based: `"cos": [c1, c2, …]` multiplies
//! `cos t, cos 2t, …`, and the constant term has its own `"const"` key.

use std::path::Path;

use flatfront_core::curves::{SpaceCurve, SphericalCurve, DEFAULT_GRID};
use flatfront_core::frontal::{project_period, Quadruple};
use flatfront_core::gallery::{gallery_build, GallerySpec, GALLERY_NAMES};
use flatfront_core::{TrigCurve3, TrigSeries, Vec3};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub curve: CurveConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<SeriesConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<SeriesConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<CurveConfig>,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub project_period: bool,
    /// Sample count of the spectral grid.
    #[serde(default = "default_resolution")]
    pub resolution: usize,
}

fn default_resolution() -> usize {
    DEFAULT_GRID
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CurveConfig {
    Fourier {
        #[serde(rename = "const", default)]
        constant: [f64; 3],
        #[serde(default)]
        cos: Vec<[f64; 3]>,
        #[serde(default)]
        sin: Vec<[f64; 3]>,
    },
    Latitude {
        phi: f64,
    },
    Gallery {
        name: String,
        #[serde(default)]
        params: GalleryParams,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesConfig {
    #[serde(rename = "const", default)]
    pub constant: f64,
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GalleryParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<SpaceCurveConfig>,
}

/// `c(t) = const + Σ (cos_k cos kt + sin_k sin kt) + drift·t`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceCurveConfig {
    #[serde(rename = "const", default)]
    pub constant: [f64; 3],
    #[serde(default)]
    pub cos: Vec<[f64; 3]>,
    #[serde(default)]
    pub sin: Vec<[f64; 3]>,
    #[serde(default)]
    pub drift: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_nt")]
    pub nt: usize,
    #[serde(default = "default_nv")]
    pub nv: usize,
    #[serde(default = "default_vmin")]
    pub vmin: f64,
    #[serde(default = "default_vmax")]
    pub vmax: f64,
    /// Stitch the last t-row to the first.
    #[serde(default)]
    pub wrap: bool,
}

fn default_nt() -> usize {
    128
}
fn default_nv() -> usize {
    16
}
fn default_vmin() -> f64 {
    -1.0
}
fn default_vmax() -> f64 {
    1.0
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { nt: default_nt(), nv: default_nv(), vmin: default_vmin(), vmax: default_vmax(), wrap: false }
    }
}

impl SeriesConfig {
    pub fn to_series(&self) -> TrigSeries {
        TrigSeries::new(self.constant, self.cos.clone(), self.sin.clone())
    }

    /// Coefficients of `s`, with trailing zero harmonics dropped.
    pub fn from_series(s: &TrigSeries) -> Self {
        let s = s.clone().trimmed(0.0);
        let mut cos = s.cos.clone();
        let mut sin = s.sin.clone();
        while cos.last() == Some(&0.0) {
            cos.pop();
        }
        while sin.last() == Some(&0.0) {
            sin.pop();
        }
        SeriesConfig { constant: s.constant, cos, sin }
    }
}

fn vec3s(v: &[[f64; 3]]) -> Vec<Vec3> {
    v.iter().map(|&a| Vec3::from(a)).collect()
}

impl SpaceCurveConfig {
    pub fn to_curve(&self) -> SpaceCurve {
        SpaceCurve {
            periodic: TrigCurve3::new(Vec3::from(self.constant), vec3s(&self.cos), vec3s(&self.sin)),
            drift: Vec3::from(self.drift),
        }
    }
}

impl CurveConfig {
    fn spherical(&self, key: &str, n: usize) -> Result<SphericalCurve> {
        match self {
            CurveConfig::Fourier { constant, cos, sin } => {
                let raw = TrigCurve3::new(Vec3::from(*constant), vec3s(cos), vec3s(sin));
                Ok(SphericalCurve::new(raw)?.with_grid(n))
            }
            CurveConfig::Latitude { phi } => Ok(SphericalCurve::latitude(*phi).with_grid(n)),
            CurveConfig::Gallery { .. } => Err(schema(key, "a gallery entry is not a spherical curve here")),
        }
    }
}

fn schema(key: &str, message: &str) -> CliError {
    CliError::Schema { key: key.to_string(), message: message.to_string() }
}

/// Gallery spec from a name and parameters; `φ` defaults to π/4, `n` to 2.
pub fn gallery_spec(name: &str, params: &GalleryParams) -> Result<GallerySpec> {
    let phi = params.phi.unwrap_or(std::f64::consts::FRAC_PI_4);
    let custom = || {
        params
            .curve
            .as_ref()
            .map(SpaceCurveConfig::to_curve)
            .ok_or_else(|| schema("curve.params.curve", "missing space curve"))
    };
    Ok(match name {
        "cone" => GallerySpec::Cone { phi },
        "circle_cos_n" => GallerySpec::CircleCosN { phi, n: params.n.unwrap_or(2) },
        "cardioid_cylinder" => GallerySpec::CardioidCylinder,
        "tangential_example54" => GallerySpec::TangentialExample54,
        "tangential_custom" => GallerySpec::TangentialCustom(custom()?),
        "rectifying_custom" => GallerySpec::RectifyingCustom(custom()?),
        "plane" => GallerySpec::Plane,
        _ => {
            return Err(schema(
                "curve.name",
                &format!("unknown gallery entry `{name}`; expected one of {}", GALLERY_NAMES.join(", ")),
            ))
        }
    })
}

/// A parsed configuration together with the quadruple it describes.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub config: Config,
    pub quadruple: Quadruple,
}

/// Parses and resolves a configuration given as JSON text; `origin` names
/// the source in parse errors.
pub fn parse_config(text: &str, origin: &str) -> Result<Loaded> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let config: Config = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let message = e.inner().to_string();
        let key = match missing_field(&message) {
            Some(f) if path == "." => f.to_string(),
            Some(f) => format!("{path}.{f}"),
            None => path,
        };
        CliError::Schema { key, message }
    })?;
    let quadruple = resolve(&config)?;
    Ok(Loaded { config, quadruple })
}

fn missing_field(message: &str) -> Option<&str> {
    let rest = message.strip_prefix("missing field `")?;
    rest.split('`').next()
}

pub fn load_config(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text, &path.display().to_string())
}

/// Builds the quadruple: gallery data first, then explicit `alpha`, `beta`
/// and `nu` override it; finally `a` is projected if requested.
pub fn resolve(config: &Config) -> Result<Quadruple> {
    let n = config.resolution;
    if n < 16 {
        return Err(schema("resolution", "must be at least 16"));
    }
    let g = &config.grid;
    if g.nt < 2 || g.nv < 2 {
        return Err(schema("grid", "nt and nv must be at least 2"));
    }
    if !(g.vmin.is_finite() && g.vmax.is_finite()) || g.vmin >= g.vmax {
        return Err(schema("grid", "need finite vmin < vmax"));
    }
    let mut q = match &config.curve {
        CurveConfig::Gallery { name, params } => gallery_build(&gallery_spec(name, params)?, n)?,
        curve => {
            let xi = curve.spherical("curve", n)?;
            let nu = match &config.nu {
                Some(c) => c.spherical("nu", n)?,
                None => flatfront_core::curves::dual_curve(&xi)?.curve.with_grid(n),
            };
            Quadruple::new(TrigSeries::zero(), TrigSeries::zero(), xi, nu)
        }
    };
    if let (CurveConfig::Gallery { .. }, Some(nu)) = (&config.curve, &config.nu) {
        q.nu = nu.spherical("nu", n)?;
    }
    if let Some(a) = &config.alpha {
        q.alpha = a.to_series();
    }
    if let Some(b) = &config.beta {
        q.beta = b.to_series();
    }
    if config.project_period {
        q.alpha = project_period(&q.xi, &q.alpha)?;
    }
    Ok(q)
}

/// Example configuration for a gallery entry.
pub fn gallery_config(name: &str, params: GalleryParams) -> Result<Config> {
    gallery_spec(name, &params)?;
    Ok(Config {
        curve: CurveConfig::Gallery { name: name.to_string(), params },
        alpha: None,
        beta: None,
        nu: None,
        grid: GridConfig::default(),
        project_period: false,
        resolution: DEFAULT_GRID,
    })
}
