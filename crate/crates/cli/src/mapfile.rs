//! JSON map files.
//!
//! ```json
//! {"kind": "planar", "g": [[0, 0], [1, 0]], "h": [[0, 0], [0.3, 0]]}
//! {"kind": "ball-linear", "n": 3, "A": [1, 0, 0, 0, 1, 0, 0, 0, 2], "b": [0, 0, 0]}
//! ```

use std::path::Path;

use num_complex::Complex;
use qrlab::analytic::ComplexSeries;
use qrlab::ball::{LinearBallMap, Matrix};
use qrlab::planar::PlanarHarmonicMap;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Planar,
    BallLinear,
}

/// Raw map-file contents. Parsed flat (not as a tagged enum) so that syntax
/// errors keep their line and column.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub kind: MapKind,
    /// Planar: coefficients of `g` in `f = g + conj(h)`.
    #[serde(default)]
    pub g: Option<Vec<[f64; 2]>>,
    /// Planar, optional: coefficients of `h`.
    #[serde(default)]
    pub h: Option<Vec<[f64; 2]>>,
    /// Ball-linear: dimension.
    #[serde(default)]
    pub n: Option<usize>,
    /// Ball-linear: `A` in row-major order.
    #[serde(default, rename = "A")]
    pub a: Option<Vec<f64>>,
    /// Ball-linear: `b`.
    #[serde(default)]
    pub b: Option<Vec<f64>>,
}

/// A validated map ready for the harness.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedMap {
    Planar(PlanarHarmonicMap<f64>),
    BallLinear(LinearBallMap<f64>),
}

fn field_error(origin: &str, field: &str, msg: String) -> CliError {
    CliError::Usage(format!("{origin}: field `{field}`: {msg}"))
}

fn series(origin: &str, field: &str, pairs: &[[f64; 2]]) -> Result<ComplexSeries<f64>, CliError> {
    if pairs.is_empty() {
        return Err(field_error(
            origin,
            field,
            "must be a nonempty array of [re, im] pairs".into(),
        ));
    }
    if let Some(j) = pairs.iter().position(|c| !c[0].is_finite() || !c[1].is_finite()) {
        return Err(field_error(origin, field, format!("entry {j} is not finite")));
    }
    Ok(ComplexSeries::new(
        pairs.iter().map(|c| Complex::new(c[0], c[1])).collect(),
    ))
}

impl MapFile {
    /// Parses map-file text; `origin` names the source in error messages.
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("{origin}: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn validate(&self, origin: &str) -> Result<LoadedMap, CliError> {
        let missing = |field: &str| field_error(origin, field, "missing".into());
        let unexpected = |field: &str| field_error(origin, field, "not allowed for this kind".into());
        match self.kind {
            MapKind::Planar => {
                for (name, present) in [
                    ("n", self.n.is_some()),
                    ("A", self.a.is_some()),
                    ("b", self.b.is_some()),
                ] {
                    if present {
                        return Err(unexpected(name));
                    }
                }
                let g = series(origin, "g", self.g.as_ref().ok_or_else(|| missing("g"))?)?;
                let h = match &self.h {
                    Some(h) => series(origin, "h", h)?,
                    None => ComplexSeries::zero(),
                };
                Ok(LoadedMap::Planar(PlanarHarmonicMap::new(g, h)))
            }
            MapKind::BallLinear => {
                for (name, present) in [("g", self.g.is_some()), ("h", self.h.is_some())] {
                    if present {
                        return Err(unexpected(name));
                    }
                }
                let n = self.n.ok_or_else(|| missing("n"))?;
                let a = self.a.as_ref().ok_or_else(|| missing("A"))?;
                let b = self.b.as_ref().ok_or_else(|| missing("b"))?;
                if n < 2 {
                    return Err(field_error(
                        origin,
                        "n",
                        format!("dimension must be at least 2, got {n}"),
                    ));
                }
                if a.len() != n * n {
                    return Err(field_error(
                        origin,
                        "A",
                        format!("expected {} entries (n = {n}), got {}", n * n, a.len()),
                    ));
                }
                if b.len() != n {
                    return Err(field_error(
                        origin,
                        "b",
                        format!("expected {n} entries, got {}", b.len()),
                    ));
                }
                if a.iter().chain(b).any(|v| !v.is_finite()) {
                    return Err(field_error(origin, "A/b", "entries must be finite".into()));
                }
                let m = Matrix::from_row_major(n, a.clone()).map_err(|e| field_error(origin, "A", e.to_string()))?;
                let map = LinearBallMap::new(m, b.clone()).map_err(|e| field_error(origin, "b", e.to_string()))?;
                Ok(LoadedMap::BallLinear(map))
            }
        }
    }
}
