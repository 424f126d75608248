//! Geometry files: `{"milnor_lambda": [..]}` or `{"structure_constants": [[[..]]]}`,
//! with optional `theta`, `beta` and `beta_weight`.

use std::path::Path;

use killing_weyl::homgeo::{HomogeneousWeylGeometry, StructureConstants, WeightedDensity};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometryFile {
    milnor_lambda: Option<[f64; 3]>,
    structure_constants: Option<StructureConstants<f64>>,
    theta: Option<[f64; 3]>,
    beta: Option<f64>,
    beta_weight: Option<f64>,
}

/// Brackets given either way; `c[k][i][j] = c^k_ij`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Brackets {
    Milnor([f64; 3]),
    Full(StructureConstants<f64>),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "RawGeometryFile")]
pub struct GeometryFile {
    pub brackets: Brackets,
    pub theta: [f64; 3],
    pub beta: f64,
    pub beta_weight: f64,
}

impl TryFrom<RawGeometryFile> for GeometryFile {
    type Error = String;

    fn try_from(raw: RawGeometryFile) -> Result<Self, String> {
        let brackets = match (raw.milnor_lambda, raw.structure_constants) {
            (Some(l), None) => Brackets::Milnor(l),
            (None, Some(c)) => Brackets::Full(c),
            (Some(_), Some(_)) => return Err("give either `milnor_lambda` or `structure_constants`, not both".into()),
            (None, None) => return Err("missing `milnor_lambda` or `structure_constants`".into()),
        };
        Ok(Self {
            brackets,
            theta: raw.theta.unwrap_or([0.0; 3]),
            beta: raw.beta.unwrap_or(0.0),
            beta_weight: raw.beta_weight.unwrap_or(-1.0),
        })
    }
}

impl GeometryFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Validated geometry and density.
    pub fn build(&self) -> Result<(HomogeneousWeylGeometry<f64>, WeightedDensity<f64>), CliError> {
        let g = match self.brackets {
            Brackets::Milnor(l) => {
                HomogeneousWeylGeometry::validate(killing_weyl::homgeo::milnor_constants(l), self.theta)?
            }
            Brackets::Full(c) => HomogeneousWeylGeometry::validate(c, self.theta)?,
        };
        Ok((g, WeightedDensity::new(self.beta, self.beta_weight)))
    }
}

pub fn load_geometry(path: &Path) -> Result<(HomogeneousWeylGeometry<f64>, WeightedDensity<f64>), CliError> {
    GeometryFile::load(path)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use killing_weyl::Error;

    #[test]
    fn round_sphere() {
        let f = GeometryFile::parse(r#"{"milnor_lambda":[2,2,2],"theta":[0,0,0],"beta":0.5}"#).unwrap();
        assert_eq!(f.brackets, Brackets::Milnor([2.0; 3]));
        let (g, b) = f.build().unwrap();
        assert_eq!(g.milnor_lambda(0.0), Some([2.0; 3]));
        assert_eq!((b.value, b.weight), (0.5, -1.0));
    }

    #[test]
    fn defaults() {
        let f = GeometryFile::parse(r#"{"milnor_lambda":[0,0,0]}"#).unwrap();
        assert_eq!((f.theta, f.beta, f.beta_weight), ([0.0; 3], 0.0, -1.0));
        let (g, _) = f.build().unwrap();
        assert_eq!(g, HomogeneousWeylGeometry::flat());
    }

    #[test]
    fn shape_errors_carry_position() {
        let err = GeometryFile::parse("{\"milnor_lambda\":[2,2],\n\"theta\":[0,0,0]}").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, .. }), "{err:?}");
        let err = GeometryFile::parse("{\n  \"milnor_lambda\":[1,1,1],\n  \"colour\":3}").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err:?}");
        assert!(matches!(GeometryFile::parse("{"), Err(CliError::Parse { .. })));
        assert!(matches!(GeometryFile::parse("{}"), Err(CliError::Parse { .. })));
        let both = r#"{"milnor_lambda":[1,1,1],"structure_constants":[[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]]]}"#;
        assert!(matches!(GeometryFile::parse(both), Err(CliError::Parse { .. })));
    }

    #[test]
    fn structure_constants_are_validated() {
        // heisenberg: [e1, e2] = e3
        let mut c = [[[0.0; 3]; 3]; 3];
        c[2][0][1] = 1.0;
        c[2][1][0] = -1.0;
        let text = serde_json::json!({ "structure_constants": c }).to_string();
        let (g, _) = GeometryFile::parse(&text).unwrap().build().unwrap();
        assert_eq!(g.milnor_lambda(1e-12), Some([0.0, 0.0, 1.0]));

        // [e1,e2]=e1, [e1,e3]=e2, [e2,e3]=0 violates Jacobi
        let mut c = [[[0.0; 3]; 3]; 3];
        c[0][0][1] = 1.0;
        c[0][1][0] = -1.0;
        c[1][0][2] = 1.0;
        c[1][2][0] = -1.0;
        let text = serde_json::json!({ "structure_constants": c }).to_string();
        let err = GeometryFile::parse(&text).unwrap().build().unwrap_err();
        assert!(matches!(err, CliError::Core(Error::JacobiViolation { .. })), "{err:?}");
    }
}
