//! Command-line front end: generate textures, extract features, compare two
//! images, embed a feature table, or reproduce the full batch.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use skyrtex::imgfeat::extract_all;
use skyrtex::par::Execution;
use skyrtex::pipeline::{
    embed_features, mix_seed, read_feature_csv, run_batch, threads_from_env,
    write_image_features_csv, BatchConfig,
};
use skyrtex::simil::ssim;
use skyrtex::texgen::{generate_texture, write_spin_dump, Mode};
use skyrtex::{Error, Raster, Result};

#[derive(Parser)]
#[command(name = "skyrtex", version, about = "Quantum-seeded skyrmion texture generator and analyzer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render textures (RGB and gray PNGs) for the selected modes.
    Generate(GenerateArgs),
    /// Extract the feature vector of each input PNG into a CSV.
    Features(FeaturesArgs),
    /// Print the SSIM of two equally sized images.
    Compare { a: PathBuf, b: PathBuf },
    /// PCA and k-means embedding of a batch feature CSV.
    Embed(EmbedArgs),
    /// Run the full batch: images, features, SSIM heatmap, embedding, manifest.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct Common {
    /// Base seed; per-image seeds are derived from it.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Qubits in the random circuit.
    #[arg(long, default_value_t = 6)]
    qubits: usize,
    /// Rotation/CNOT layers in the random circuit.
    #[arg(long, default_value_t = 6)]
    depth: usize,
    /// Texture modes: `all` or a comma-separated list of chaotic, layered, ring, wave.
    #[arg(long, default_value = "all")]
    mode: String,
    /// Image size, `N` for NxN or `WxH`.
    #[arg(long, default_value = "256")]
    size: String,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    common: Common,
    /// Images per mode.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Also write a raw spin-field dump next to each image.
    #[arg(long)]
    spins: bool,
}

#[derive(Args)]
struct FeaturesArgs {
    /// Input PNG files (read as 8-bit gray).
    #[arg(required = true)]
    images: Vec<PathBuf>,
    /// Output CSV.
    #[arg(long, default_value = "features.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct EmbedArgs {
    /// Feature CSV written by `reproduce`.
    features: PathBuf,
    /// Number of k-means clusters.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// k-means seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output directory for embedding.csv and scatter.png.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct ReproduceArgs {
    #[command(flatten)]
    common: Common,
    /// Images per mode.
    #[arg(long, default_value_t = 50)]
    count: usize,
    /// Output directory.
    #[arg(long, default_value = "run")]
    out: PathBuf,
    /// Number of k-means clusters.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Images per mode entering the SSIM matrix.
    #[arg(long, default_value_t = 8)]
    ssim_subset: usize,
    /// Run on one thread (worker count otherwise capped by SKYRTEX_THREADS).
    #[arg(long)]
    sequential: bool,
}

fn parse_modes(s: &str) -> Result<Vec<Mode>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Mode::ALL.to_vec());
    }
    s.split(',').map(|m| m.trim().parse()).collect()
}

fn parse_size(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidArgument(format!("size {s:?} is not N or WxH"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once(['x', 'X']) {
        Some((w, h)) => Ok((num(w)?, num(h)?)),
        None => num(s).map(|n| (n, n)),
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.to_path_buf(), source: e })
}

fn generate(args: GenerateArgs) -> Result<()> {
    let modes = parse_modes(&args.common.mode)?;
    let size = parse_size(&args.common.size)?;
    if args.count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    ensure_dir(&args.out)?;
    for mode in modes {
        for j in 0..args.count {
            let seed = mix_seed(args.common.seed, mode.index(), j);
            let tex = generate_texture(seed, mode, size, args.common.qubits, args.common.depth)?;
            let stem = format!("{mode}_{j:03}");
            let rgb = args.out.join(format!("{stem}.png"));
            let gray = args.out.join(format!("{stem}_gray.png"));
            tex.image.save(&rgb, &gray)?;
            if args.spins {
                write_spin_dump(&tex.field, &args.out.join(format!("{stem}.spins")))?;
            }
            println!("{}", rgb.display());
        }
    }
    Ok(())
}

fn features(args: FeaturesArgs) -> Result<()> {
    let mut rows = Vec::with_capacity(args.images.len());
    for path in &args.images {
        let gray = Raster::load_gray(path)?;
        rows.push((path.display().to_string(), extract_all(&gray)?));
    }
    write_image_features_csv(&args.out, &rows)?;
    println!("{} rows -> {}", rows.len(), args.out.display());
    Ok(())
}

fn compare(a: &Path, b: &Path) -> Result<()> {
    let score = ssim(&Raster::load_gray(a)?, &Raster::load_gray(b)?)?;
    println!("{score:?}");
    Ok(())
}

fn embed(args: EmbedArgs) -> Result<()> {
    let rows = read_feature_csv(&args.features)?;
    let Some(fe) = embed_features(&rows, args.k, args.seed)? else {
        return Err(Error::InvalidArgument(format!(
            "{} rows are too few to embed with k = {}",
            rows.len(),
            args.k
        )));
    };
    ensure_dir(&args.out)?;
    fe.write(&args.out.join("embedding.csv"), &args.out.join("scatter.png"))?;
    println!(
        "{} points, {} excluded, explained variance {:?}",
        fe.rows.len(),
        fe.excluded_rows.len(),
        fe.embedding.explained_variance
    );
    Ok(())
}

fn reproduce(args: ReproduceArgs) -> Result<bool> {
    let config = BatchConfig {
        base_seed: args.common.seed,
        n_qubits: args.common.qubits,
        depth: args.common.depth,
        modes: parse_modes(&args.common.mode)?,
        per_mode_count: args.count,
        image_size: parse_size(&args.common.size)?,
        output_dir: args.out,
        cluster_k: args.k,
        ssim_subset: args.ssim_subset,
        execution: if args.sequential { Execution::Sequential } else { Execution::Parallel },
        threads: threads_from_env(),
        ..Default::default()
    };
    let manifest = run_batch(&config)?;
    println!(
        "{} images ({} failed) in {}",
        manifest.records.len(),
        manifest.failures,
        config.output_dir.display()
    );
    if let Some(s) = &manifest.ssim {
        println!(
            "ssim {}x{}: within-mode {:?}, cross-mode {:?}",
            s.n, s.n, s.within_mode_mean, s.cross_mode_mean
        );
    }
    for w in &manifest.warnings {
        eprintln!("warning: {w}");
    }
    for r in manifest.records.iter().filter(|r| r.error.is_some()) {
        eprintln!("{} {}: {}", r.mode, r.index, r.error.as_deref().unwrap_or(""));
    }
    println!("determinism hash {}", manifest.determinism_hash);
    Ok(manifest.failures == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a).map(|_| true),
        Command::Features(a) => features(a).map(|_| true),
        Command::Compare { a, b } => compare(&a, &b).map(|_| true),
        Command::Embed(a) => embed(a).map(|_| true),
        Command::Reproduce(a) => reproduce(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
