use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::config::{mix_seed, BatchConfig};
use super::csvio::{write_feature_csv, FeatureRow};
use super::embed::embed_features;
use crate::error::{Error, Result};
use crate::imgfeat::{extract_all, panel_a, panel_b, FeatureParams, FeatureVector};
use crate::par;
use crate::qstate::amplitude_chart;
use crate::raster::Raster;
use crate::simil::{pairwise_ssim, SimilarityMatrix};
use crate::texgen::{encode_png, generate_texture, topological_charge, Mode};

pub const SCHEMA_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";

const FEATURES_FILE: &str = "features.csv";
const EMBEDDING_FILE: &str = "embedding.csv";
const SCATTER_FILE: &str = "scatter.png";
const HEATMAP_FILE: &str = "ssim_heatmap.png";
const HEATMAP_META_FILE: &str = "ssim_heatmap.json";
const MATRIX_FILE: &str = "ssim_matrix.csv";

/// Per-image entry of the manifest. Paths are relative to the output
/// directory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImageRecord {
    pub mode: Mode,
    pub index: usize,
    pub seed: u64,
    pub rgb_path: Option<String>,
    pub gray_path: Option<String>,
    /// Zero-based data row in the feature CSV.
    pub csv_row: Option<usize>,
    pub topological_charge: Option<f64>,
    pub flags: Vec<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SsimSummary {
    pub n: usize,
    pub labels: Vec<String>,
    pub min: f64,
    pub max: f64,
    /// Mean over off-diagonal pairs of the same mode.
    pub within_mode_mean: Option<f64>,
    pub cross_mode_mean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingSummary {
    pub n_points: usize,
    /// Feature-CSV rows left out of the embedding because they carry NaN.
    pub excluded_rows: Vec<usize>,
    pub zero_variance_columns: usize,
    pub explained_variance: [f64; 2],
    pub cluster_k: usize,
    pub kmeans_seed: u64,
    pub kmeans_iterations: usize,
    pub kmeans_converged: bool,
    pub objective_history: Vec<f64>,
    pub cluster_labels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchManifest {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: BatchConfig,
    pub seed_mixing: String,
    pub feature_params: FeatureParams,
    pub records: Vec<ImageRecord>,
    pub failures: usize,
    pub ssim: Option<SsimSummary>,
    pub embedding: Option<EmbeddingSummary>,
    pub warnings: Vec<String>,
    /// Every file written besides the manifest, sorted, relative paths.
    pub outputs: Vec<String>,
    /// SHA-256 over the PNG and CSV outputs (path and bytes, in `outputs`
    /// order) followed by the SSIM matrix values as little-endian `f64`.
    pub determinism_hash: String,
    /// Wall-clock time of the run; not part of the hash.
    pub created_unix: u64,
}

impl BatchManifest {
    pub fn read(path: &Path) -> Result<serde_json::Value> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

struct Rendered {
    rgb_png: Vec<u8>,
    gray_png: Vec<u8>,
    features: FeatureVector,
    charge: f64,
    gray: Option<Raster>,
    samples: Vec<(String, Vec<u8>)>,
}

struct Job {
    mode: Mode,
    index: usize,
    seed: u64,
}

fn rgb_rel(mode: Mode, j: usize) -> String {
    format!("images/{mode}/{mode}_{j:03}.png")
}

fn gray_rel(mode: Mode, j: usize) -> String {
    format!("gray/{mode}/{mode}_{j:03}.png")
}

fn render_one(job: &Job, config: &BatchConfig) -> Result<Rendered> {
    let tex = generate_texture(job.seed, job.mode, config.image_size, config.n_qubits, config.depth)?;
    let (rgb_png, gray_png) = tex.image.png_bytes()?;
    let gray = tex.image.gray_quantized();
    let features = extract_all(&gray)?;
    let charge = topological_charge(&tex.field)?;
    let mut samples = Vec::new();
    if job.index == 0 {
        let mode = job.mode;
        let chart = amplitude_chart(&tex.state);
        samples.push((format!("amplitudes/{mode}_000.png"), encode_png(&chart)?));
        samples.push((format!("panels/{mode}_000_a.png"), encode_png(&panel_a(&gray)?)?));
        samples.push((format!("panels/{mode}_000_b.png"), encode_png(&panel_b(&gray)?)?));
    }
    let gray = (job.index < config.ssim_subset).then_some(gray);
    Ok(Rendered { rgb_png, gray_png, features, charge, gray, samples })
}

struct Writer {
    root: PathBuf,
    outputs: Vec<String>,
}

impl Writer {
    fn write(&mut self, rel: &str, bytes: &[u8]) -> Result<()> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        std::fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        self.outputs.push(rel.to_string());
        Ok(())
    }

    fn record(&mut self, rel: &str) {
        self.outputs.push(rel.to_string());
    }

    fn path(&self, rel: &str) -> PathBuf {
        self.root.join(rel)
    }
}

fn ssim_summary(m: &SimilarityMatrix, modes: &[Mode]) -> SsimSummary {
    let (mut within, mut cross) = ((0.0, 0usize), (0.0, 0usize));
    for i in 0..m.n {
        for j in 0..m.n {
            if i == j {
                continue;
            }
            let acc = if modes[i] == modes[j] { &mut within } else { &mut cross };
            acc.0 += m.get(i, j);
            acc.1 += 1;
        }
    }
    let mean = |(s, c): (f64, usize)| (c > 0).then(|| s / c as f64);
    let (min, max) = m.value_range();
    SsimSummary {
        n: m.n,
        labels: m.labels.clone(),
        min,
        max,
        within_mode_mean: mean(within),
        cross_mode_mean: mean(cross),
    }
}

/// Generates, featurizes, compares and embeds the whole batch, writing every
/// artifact and the manifest into `config.output_dir`.
///
/// Per-image failures are recorded in the manifest instead of aborting; the
/// caller decides how to report `manifest.failures`.
pub fn run_batch(config: &BatchConfig) -> Result<BatchManifest> {
    config.validate()?;
    let jobs: Vec<Job> = config
        .modes
        .iter()
        .flat_map(|&mode| {
            (0..config.per_mode_count).map(move |index| Job {
                mode,
                index,
                seed: mix_seed(config.base_seed, mode.index(), index),
            })
        })
        .collect();
    let distinct: HashSet<u64> = jobs.iter().map(|j| j.seed).collect();
    if distinct.len() != jobs.len() {
        return Err(Error::invalid("per-image seed derivation collided"));
    }
    std::fs::create_dir_all(&config.output_dir).map_err(|e| Error::io(&config.output_dir, e))?;

    let exec = config.execution;
    let rendered = par::with_threads(config.resolved_threads(), || {
        exec.map(&jobs, |job| render_one(job, config))
    });

    let mut out = Writer { root: config.output_dir.clone(), outputs: Vec::new() };
    let mut records = Vec::with_capacity(jobs.len());
    let mut feature_rows = Vec::new();
    let mut ssim_images = Vec::new();
    let mut ssim_labels = Vec::new();
    let mut ssim_modes = Vec::new();
    for (job, result) in jobs.iter().zip(rendered) {
        let mut record = ImageRecord {
            mode: job.mode,
            index: job.index,
            seed: job.seed,
            rgb_path: None,
            gray_path: None,
            csv_row: None,
            topological_charge: None,
            flags: Vec::new(),
            error: None,
        };
        match result {
            Ok(r) => {
                let (rgb, gray) = (rgb_rel(job.mode, job.index), gray_rel(job.mode, job.index));
                out.write(&rgb, &r.rgb_png)?;
                out.write(&gray, &r.gray_png)?;
                for (rel, bytes) in &r.samples {
                    out.write(rel, bytes)?;
                }
                record.rgb_path = Some(rgb);
                record.gray_path = Some(gray);
                record.csv_row = Some(feature_rows.len());
                record.topological_charge = Some(r.charge);
                record.flags = r.features.flags.iter().map(|f| f.as_str().to_string()).collect();
                if let Some(g) = r.gray {
                    ssim_images.push(g);
                    ssim_labels.push(format!("{}_{:03}", job.mode, job.index));
                    ssim_modes.push(job.mode);
                }
                feature_rows.push(FeatureRow {
                    mode: job.mode,
                    index: job.index,
                    seed: job.seed,
                    features: r.features,
                });
            }
            Err(e) => record.error = Some(e.to_string()),
        }
        records.push(record);
    }
    let failures = records.iter().filter(|r| r.error.is_some()).count();
    let mut warnings = Vec::new();

    write_feature_csv(&out.path(FEATURES_FILE), &feature_rows)?;
    out.record(FEATURES_FILE);

    let mut matrix_values = Vec::new();
    let ssim = if ssim_images.is_empty() {
        warnings.push("no images available for the SSIM matrix".to_string());
        None
    } else {
        let m = pairwise_ssim(&ssim_images, ssim_labels, exec)?;
        m.write_heatmap(&out.path(HEATMAP_FILE), &out.path(HEATMAP_META_FILE))?;
        m.write_csv(&out.path(MATRIX_FILE))?;
        for f in [HEATMAP_FILE, HEATMAP_META_FILE, MATRIX_FILE] {
            out.record(f);
        }
        matrix_values = m.values.clone();
        Some(ssim_summary(&m, &ssim_modes))
    };

    let embedding = match embed_features(&feature_rows, config.cluster_k, config.base_seed)? {
        None => {
            warnings.push(format!(
                "embedding skipped: too few usable feature rows for k = {}",
                config.cluster_k
            ));
            None
        }
        Some(fe) => {
            fe.write(&out.path(EMBEDDING_FILE), &out.path(SCATTER_FILE))?;
            out.record(EMBEDDING_FILE);
            out.record(SCATTER_FILE);
            Some(EmbeddingSummary {
                n_points: fe.rows.len(),
                excluded_rows: fe.excluded_rows,
                zero_variance_columns: fe.zero_variance_columns,
                explained_variance: fe.embedding.explained_variance,
                cluster_k: config.cluster_k,
                kmeans_seed: config.base_seed,
                kmeans_iterations: fe.kmeans.iterations,
                kmeans_converged: fe.kmeans.converged,
                objective_history: fe.kmeans.objective_history,
                cluster_labels: fe.kmeans.labels,
            })
        }
    };

    out.outputs.sort();
    let determinism_hash = hash_outputs(&out.root, &out.outputs, &matrix_values)?;
    let created_unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    let manifest = BatchManifest {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        seed_mixing: "splitmix64(base_seed ^ splitmix64((mode_index << 32) | index))".into(),
        feature_params: FeatureParams::default(),
        records,
        failures,
        ssim,
        embedding,
        warnings,
        outputs: out.outputs,
        determinism_hash,
        created_unix,
    };
    let text = serde_json::to_string_pretty(&manifest)?;
    let path = config.output_dir.join(MANIFEST_FILE);
    std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}

fn hash_outputs(root: &Path, outputs: &[String], matrix: &[f64]) -> Result<String> {
    let mut h = Sha256::new();
    for rel in outputs.iter().filter(|r| r.ends_with(".png") || r.ends_with(".csv")) {
        let path = root.join(rel);
        let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
        h.update(rel.as_bytes());
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(&bytes);
    }
    for v in matrix {
        h.update(v.to_le_bytes());
    }
    Ok(hex::encode(h.finalize()))
}
