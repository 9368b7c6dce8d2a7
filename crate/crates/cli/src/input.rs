//! Triangle and point input formats.

use std::io::Read;
use std::path::Path;

use exparabolas::{Homogeneous3, Point2, Triangle};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// A triangle given by its vertices or by its side lengths.
///
/// Accepted JSON forms: `[[x, y], [x, y], [x, y]]`,
/// `{"vertices": [[x, y], [x, y], [x, y]]}` and `{"a": .., "b": .., "c": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TriangleSpec {
    Bare([[f64; 2]; 3]),
    Vertices { vertices: [[f64; 2]; 3] },
    Sides { a: f64, b: f64, c: f64 },
}

impl TriangleSpec {
    pub fn triangle(&self) -> CliResult<Triangle> {
        let tri = match *self {
            TriangleSpec::Bare(v) | TriangleSpec::Vertices { vertices: v } => {
                let p = v.map(|[x, y]| Point2::new(x, y));
                Triangle::new(p[0], p[1], p[2])
            }
            TriangleSpec::Sides { a, b, c } => Triangle::from_sides(a, b, c),
        };
        tri.map_err(|e| CliError::Input(e.to_string()))
    }

    /// Vertex form, for echoing into reports.
    pub fn vertices(&self) -> CliResult<[[f64; 2]; 3]> {
        Ok(self.triangle()?.vertices().map(|p| [p.x, p.y]))
    }
}

pub fn parse_spec(text: &str) -> CliResult<TriangleSpec> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Input(format!(
            "expected [[x,y],[x,y],[x,y]], {{\"vertices\": ...}} or {{\"a\",\"b\",\"c\"}}: {e}"
        ))
    })
}

/// Reads a spec from `path`, or from stdin when `path` is `None` or `-`.
pub fn read_spec(path: Option<&Path>) -> CliResult<TriangleSpec> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
            s
        }
    };
    parse_spec(&text)
}

/// Parses `x0,x1,x2`.
pub fn parse_triple(s: &str) -> Result<Homogeneous3, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got {s:?}"));
    }
    let mut v = [0.0f64; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|e| format!("{part:?}: {e}"))?;
        if !slot.is_finite() {
            return Err(format!("{part:?} is not finite"));
        }
    }
    Ok(Homogeneous3::new(v[0], v[1], v[2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_forms() {
        for text in [
            "[[0,0],[1,0],[0,1]]",
            "{\"vertices\": [[0,0],[1,0],[0,1]]}",
            "{\"a\": 1.4142135623730951, \"b\": 1, \"c\": 1}",
        ] {
            let tri = parse_spec(text).unwrap().triangle().unwrap();
            let s = tri.side_lengths();
            assert!((s.a - 2f64.sqrt()).abs() < 1e-15 && (s.b - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_spec("{\"a\": 1}").is_err());
        assert!(parse_spec("{\"a\": 1, \"b\": 1, \"c\": 3}")
            .unwrap()
            .triangle()
            .is_err());
        assert!(parse_spec("[[0,0],[1,1],[2,2]]")
            .unwrap()
            .triangle()
            .is_err());
        assert!(parse_triple("1,2").is_err());
        assert_eq!(
            parse_triple("1, 2,3").unwrap(),
            Homogeneous3::new(1.0, 2.0, 3.0)
        );
    }
}
