use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::imgfeat::{feature_columns, FeatureFlag, FeatureVector, FEATURE_DIM};
use crate::texgen::Mode;

const LEADING: [&str; 5] = ["row", "mode", "index", "seed", "flags"];

/// One row of the feature CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub mode: Mode,
    pub index: usize,
    pub seed: u64,
    pub features: FeatureVector,
}

fn header() -> Vec<String> {
    let mut h: Vec<String> = LEADING.iter().map(|s| s.to_string()).collect();
    h.extend(feature_columns());
    h
}

/// Writes rows in the given order. Floats use the shortest representation
/// that parses back to the same value, so reading is lossless.
pub fn write_feature_csv(path: &Path, rows: &[FeatureRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_path(path)?;
    wtr.write_record(header())?;
    for (i, r) in rows.iter().enumerate() {
        let mut rec = vec![
            i.to_string(),
            r.mode.to_string(),
            r.index.to_string(),
            r.seed.to_string(),
            r.features.flags_string(),
        ];
        rec.extend(r.features.values().iter().map(|v| v.to_string()));
        wtr.write_record(&rec)?;
    }
    wtr.flush().map_err(|e| Error::io(path, e))
}

/// Feature table for arbitrary image files: `path`, `flags`, then the
/// feature columns.
pub fn write_image_features_csv(path: &Path, rows: &[(String, FeatureVector)]) -> Result<()> {
    let mut wtr = csv::Writer::from_path(path)?;
    let mut h = vec!["path".to_string(), "flags".to_string()];
    h.extend(feature_columns());
    wtr.write_record(&h)?;
    for (name, f) in rows {
        let mut rec = vec![name.clone(), f.flags_string()];
        rec.extend(f.values().iter().map(|v| v.to_string()));
        wtr.write_record(&rec)?;
    }
    wtr.flush().map_err(|e| Error::io(path, e))
}

/// Reads a file written by [`write_feature_csv`]. Row numbers in errors count
/// data rows from 1 (the header is row 0).
pub fn read_feature_csv(path: &Path) -> Result<Vec<FeatureRow>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let parse = |row: usize, message: String| Error::Parse { row, message };
    let got: Vec<String> = rdr
        .headers()
        .map_err(|e| parse(0, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if got != header() {
        return Err(parse(0, "unexpected header".into()));
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| parse(row, e.to_string()))?;
        if rec.len() != LEADING.len() + FEATURE_DIM {
            return Err(parse(row, format!("{} fields", rec.len())));
        }
        let declared: usize = rec[0].parse().map_err(|_| parse(row, "bad row number".into()))?;
        if declared != i {
            return Err(parse(row, format!("row number {declared} out of sequence")));
        }
        let mode: Mode = rec[1].parse().map_err(|e: Error| parse(row, e.to_string()))?;
        let index = rec[2].parse().map_err(|_| parse(row, "bad index".into()))?;
        let seed = rec[3].parse().map_err(|_| parse(row, "bad seed".into()))?;
        let flags = rec[4]
            .split(';')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<FeatureFlag>())
            .collect::<Result<BTreeSet<_>>>()
            .map_err(|e| parse(row, e.to_string()))?;
        let values = rec
            .iter()
            .skip(LEADING.len())
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse(row, e.to_string()))?;
        let features =
            FeatureVector::from_values(&values, flags).map_err(|e| parse(row, e.to_string()))?;
        rows.push(FeatureRow { mode, index, seed, features });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imgfeat::extract_all;
    use crate::raster::Raster;

    fn row(seed: u64) -> FeatureRow {
        let img = Raster::from_fn(32, 32, |x, y| {
            ((x as f64 * 0.37 + seed as f64).sin() * (y as f64 * 0.21).cos() + 1.0) / 2.0
        });
        FeatureRow { mode: Mode::Wave, index: seed as usize, seed, features: extract_all(&img).unwrap() }
    }

    #[test]
    fn empty_is_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.csv");
        write_feature_csv(&p, &[]).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(read_feature_csv(&p).unwrap().is_empty());
    }

    #[test]
    fn round_trip_including_nan_rows() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.csv");
        let constant = FeatureRow {
            mode: Mode::Ring,
            index: 9,
            seed: u64::MAX,
            features: extract_all(&Raster::filled(16, 16, 0.5)).unwrap(),
        };
        let rows = vec![row(1), row(2), constant];
        write_feature_csv(&p, &rows).unwrap();
        let back = read_feature_csv(&p).unwrap();
        assert_eq!(back.len(), 3);
        for (a, b) in rows.iter().zip(&back) {
            assert_eq!((a.mode, a.index, a.seed), (b.mode, b.index, b.seed));
            assert_eq!(a.features.flags, b.features.flags);
            for (x, y) in a.features.values().iter().zip(b.features.values()) {
                assert!(x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()));
            }
        }
    }

    #[test]
    fn malformed_row_reports_row_number() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.csv");
        write_feature_csv(&p, &[row(1), row(2)]).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
        lines[2] = lines[2].replacen(",wave,", ",spiral,", 1);
        std::fs::write(&p, lines.join("\n")).unwrap();
        match read_feature_csv(&p) {
            Err(Error::Parse { row, .. }) => assert_eq!(row, 2),
            other => panic!("{other:?}"),
        }
    }
}
