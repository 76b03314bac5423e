use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use spinlab_core::PointSet;

use crate::commands::CliError;

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("malformed JSON in {}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"))
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable payload");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
struct PointRow {
    x: f64,
    y: f64,
    z: f64,
}

pub fn points_to_csv(points: &PointSet) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in points.points() {
        w.serialize(PointRow { x: p[0], y: p[1], z: p[2] })
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// Reads points from CSV (header `x,y,z`) or from JSON `{"points": [...]}`.
pub fn read_points(path: &Path) -> Result<PointSet, CliError> {
    if is_csv(path) {
        let mut r = csv::Reader::from_path(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        let rows: Vec<PointRow> = r
            .deserialize()
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Validation(format!("malformed CSV in {}: {e}", path.display())))?;
        PointSet::new(rows.into_iter().map(|p| [p.x, p.y, p.z]).collect())
            .map_err(|e| CliError::Validation(e.to_string()))
    } else {
        serde_json::from_value(read_json(path)?)
            .map_err(|e| CliError::Validation(format!("invalid point set in {}: {e}", path.display())))
    }
}

#[derive(Serialize)]
struct RangeRow {
    sx: f64,
    sy: f64,
    sz: f64,
}

pub fn range_to_csv(points: &[[f64; 3]]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in points {
        w.serialize(RangeRow { sx: p[0], sy: p[1], sz: p[2] })
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

pub fn table_to_csv(header: &[&str], rows: &[[String; 5]]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_csv_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        let pts = PointSet::new(vec![[0.0, 0.0, 1.0], [0.6, 0.8, 0.0]]).unwrap();
        fs::write(&path, points_to_csv(&pts)).unwrap();
        assert_eq!(read_points(&path).unwrap(), pts);
    }

    #[test]
    fn off_sphere_csv_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        fs::write(&path, "x,y,z\n0,0,2\n").unwrap();
        assert!(matches!(read_points(&path), Err(CliError::Validation(_))));
    }

    #[test]
    fn extension_selects_csv() {
        assert!(is_csv(Path::new("a/b.CSV")));
        assert!(!is_csv(Path::new("a/b.json")));
        assert!(!is_csv(Path::new("csv")));
    }
}
