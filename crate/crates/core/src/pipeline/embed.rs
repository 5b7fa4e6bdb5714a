use std::path::Path;

use super::csvio::FeatureRow;
use super::scatter::scatter_plot;
use crate::error::{Error, Result};
use crate::plot::save_rgb;
use crate::simil::{kmeans, pca2, standardize, Embedding2D, KMeans, DEFAULT_MAX_ITER};
use crate::texgen::Mode;

/// PCA embedding and clustering of a feature table.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureEmbedding {
    /// `(csv row, mode, index)` of every embedded row, in input order.
    pub rows: Vec<(usize, Mode, usize)>,
    /// Input rows left out because they carry NaN features.
    pub excluded_rows: Vec<usize>,
    pub zero_variance_columns: usize,
    /// Carries the cluster labels.
    pub embedding: Embedding2D,
    pub kmeans: KMeans,
}

/// Standardize, project to two components and cluster. Returns `None` when
/// fewer than `max(3, k)` rows are free of NaN.
pub fn embed_features(rows: &[FeatureRow], k: usize, seed: u64) -> Result<Option<FeatureEmbedding>> {
    let (kept, excluded_rows): (Vec<usize>, Vec<usize>) =
        (0..rows.len()).partition(|&i| !rows[i].features.has_nan());
    if kept.len() < 3.max(k) {
        return Ok(None);
    }
    let vectors: Vec<Vec<f64>> = kept.iter().map(|&i| rows[i].features.values()).collect();
    let std = standardize(&vectors)?;
    let mut embedding = pca2(&std.rows)?;
    let km = kmeans(&embedding.points, k, seed, DEFAULT_MAX_ITER)?;
    embedding.cluster_labels = km.labels.clone();
    Ok(Some(FeatureEmbedding {
        rows: kept.iter().map(|&i| (i, rows[i].mode, rows[i].index)).collect(),
        excluded_rows,
        zero_variance_columns: std.zero_variance.iter().filter(|&&z| z).count(),
        embedding,
        kmeans: km,
    }))
}

impl FeatureEmbedding {
    /// Writes the embedding CSV and the scatter plot.
    pub fn write(&self, csv_path: &Path, scatter_path: &Path) -> Result<()> {
        let mut wtr = csv::Writer::from_path(csv_path)?;
        wtr.write_record(["row", "mode", "index", "pc1", "pc2", "cluster"])?;
        for (((row, mode, index), p), c) in
            self.rows.iter().zip(&self.embedding.points).zip(&self.embedding.cluster_labels)
        {
            wtr.write_record([
                row.to_string(),
                mode.to_string(),
                index.to_string(),
                p[0].to_string(),
                p[1].to_string(),
                c.to_string(),
            ])?;
        }
        wtr.flush().map_err(|e| Error::io(csv_path, e))?;
        let modes: Vec<Mode> = self.rows.iter().map(|r| r.1).collect();
        let img = scatter_plot(&self.embedding.points, &self.embedding.cluster_labels, &modes);
        save_rgb(&img, scatter_path)
    }
}
