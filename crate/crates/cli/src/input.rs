use std::fs;
use std::io::Read;
use std::path::Path;

use newton_number::{LatticePoint, SupportSet};
use serde::Deserialize;

use crate::Failure;

/// The JSON document read by every subcommand that takes `--input`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub support: Vec<Vec<i64>>,
    #[serde(default)]
    pub point: Option<Vec<i64>>,
    #[serde(default)]
    pub points: Option<Vec<Vec<i64>>>,
}

impl InputDocument {
    /// Reads a document from a file, or from standard input for `-`.
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = if path == Path::new("-") {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(|e| Failure::input(format!("stdin: {e}")))?;
            buf
        } else {
            fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
        };
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }

    pub fn support(&self) -> Result<SupportSet, Failure> {
        let first = self.support.first().ok_or_else(|| Failure::input("support is empty"))?;
        let dim = first.len();
        let points = self.support.iter().map(|row| lattice_point(row)).collect::<Result<Vec<_>, _>>()?;
        Ok(SupportSet::new(dim, points)?)
    }
}

pub fn lattice_point(coords: &[i64]) -> Result<LatticePoint, Failure> {
    LatticePoint::new(coords).map_err(|e| Failure::input(e.to_string()))
}

/// Parses `x,y,z`.
pub fn parse_point(text: &str) -> Result<LatticePoint, Failure> {
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|e| Failure::input(format!("bad coordinate {c:?} in {text:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    lattice_point(&coords)
}

/// Parses `x,y,z;x,y,z;...`; empty entries are ignored.
pub fn parse_points(text: &str) -> Result<Vec<LatticePoint>, Failure> {
    text.split(';').map(str::trim).filter(|s| !s.is_empty()).map(parse_point).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_lists() {
        let pts = parse_points("1,0,0; 0,2,1;").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].coords(), &[0, 2, 1]);
        assert!(parse_points("").unwrap().is_empty());
        assert_eq!(parse_point("1,x,0").unwrap_err().code, 1);
        assert_eq!(parse_point("1,-1,0").unwrap_err().code, 1);
    }

    #[test]
    fn documents() {
        let doc: InputDocument = serde_json::from_str(r#"{"support":[[2,0],[0,3]],"point":[1,1]}"#).unwrap();
        assert_eq!(doc.support().unwrap().dim(), 2);
        assert_eq!(doc.point, Some(vec![1, 1]));
        assert!(serde_json::from_str::<InputDocument>(r#"{"support":[[1]],"extra":1}"#).is_err());
        let doc: InputDocument = serde_json::from_str(r#"{"support":[[1,0,0],[0,1]]}"#).unwrap();
        assert_eq!(doc.support().unwrap_err().code, 1);
    }
}
