//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use common::{direct_acf, finite_difference_charge, kronecker_simulate, normal, power_pca, sierpinski, Xorshift};
use skyrtex::imgfeat::{
    autocorrelation2d, fractal_dimension, glcm_features, haar_approx, hu_moments, lbp_histogram,
    power_spectrum,
};
use skyrtex::pipeline::{read_feature_csv, run_batch, BatchConfig, BatchManifest};
use skyrtex::qstate::{build_random_circuit, simulate};
use skyrtex::simil::{kmeans, pca2, ssim, DEFAULT_MAX_ITER};
use skyrtex::texgen::{generate_texture, multi_skyrmion, skyrmion_ansatz, topological_charge, Mode, Skyrmion, SpinField};
use skyrtex::Raster;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Run {
    _dir: tempfile::TempDir,
    root: std::path::PathBuf,
    manifest: serde_json::Value,
    seconds: f64,
}

fn reproduce() -> Result<Run, String> {
    let dir = ok(tempfile::tempdir())?;
    let root = dir.path().join("run");
    let config = BatchConfig { output_dir: root.clone(), ..Default::default() };
    let start = Instant::now();
    ok(run_batch(&config))?;
    let seconds = start.elapsed().as_secs_f64();
    let manifest = ok(BatchManifest::read(&root.join("manifest.json")))?;
    Ok(Run { _dir: dir, root, manifest, seconds })
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut circuits = 0;
    for seed in 0..200u64 {
        for n in 1..=3 {
            for depth in 0..=4 {
                let circuit = ok(build_random_circuit(seed, n, depth))?;
                let fast = ok(simulate(&circuit))?;
                let oracle = kronecker_simulate(&circuit);
                for (a, b) in fast.amplitudes().iter().zip(&oracle) {
                    worst = worst.max((a - b).norm());
                }
                circuits += 1;
            }
        }
    }
    ensure(worst < 1e-10, || format!("max amplitude error {worst:e}"))?;
    let mut norm_err: f64 = 0.0;
    for seed in 0..1000u64 {
        let state = ok(simulate(&ok(build_random_circuit(seed, 6, 6))?))?;
        norm_err = norm_err.max((state.norm_sqr() - 1.0).abs());
    }
    ensure(norm_err < 1e-12, || format!("norm error {norm_err:e}"))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.2} s"))?;
    Ok(format!(
        "{circuits} oracle circuits, max |err| {worst:.1e}; 1000 six-qubit norms within {norm_err:.1e}; {secs:.2} s"
    ))
}

fn ac2(run: &Run) -> Outcome {
    let images = walkdir::WalkDir::new(run.root.join("images"))
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| e.path().extension().is_some_and(|x| x == "png"))
        .count();
    let mut per_mode: HashMap<String, usize> = HashMap::new();
    for r in run.manifest["records"].as_array().into_iter().flatten() {
        *per_mode.entry(r["mode"].as_str().unwrap_or("").to_string()).or_default() += 1;
    }
    ensure(images == 200, || format!("{images} texture PNGs"))?;
    ensure(per_mode.len() == 4 && per_mode.values().all(|&c| c == 50), || format!("{per_mode:?}"))?;
    ensure(run.manifest["failures"] == 0, || "failed images".into())?;
    ensure(run.seconds < 300.0, || format!("batch took {:.1} s", run.seconds))?;
    Ok(format!("200 PNGs (4 x 50) in {:.1} s", run.seconds))
}

fn mode_means(root: &Path, pick: impl Fn(&skyrtex::imgfeat::FeatureVector) -> f64) -> Result<HashMap<Mode, f64>, String> {
    let rows = ok(read_feature_csv(&root.join("features.csv")))?;
    let mut acc: HashMap<Mode, (f64, usize)> = HashMap::new();
    for r in &rows {
        let v = pick(&r.features);
        if v.is_finite() {
            let e = acc.entry(r.mode).or_default();
            e.0 += v;
            e.1 += 1;
        }
    }
    Ok(acc.into_iter().map(|(m, (s, c))| (m, s / c as f64)).collect())
}

fn ac3(run: &Run) -> Outcome {
    let square = Raster::from_fn(256, 256, |x, y| if (64..192).contains(&x) && (64..192).contains(&y) { 1.0 } else { 0.0 });
    let line = Raster::from_fn(256, 256, |_, y| if y == 128 { 1.0 } else { 0.0 });
    let fd_square = ok(fractal_dimension(&square))?;
    let fd_line = ok(fractal_dimension(&line))?;
    let fd_sier = ok(fractal_dimension(&sierpinski(512, 1_000_000, &mut Xorshift(11))))?;
    ensure((fd_square - 2.0).abs() <= 0.05, || format!("square {fd_square}"))?;
    ensure((fd_line - 1.0).abs() <= 0.1, || format!("line {fd_line}"))?;
    ensure((fd_sier - 1.585).abs() <= 0.05, || format!("sierpinski {fd_sier}"))?;
    let means = mode_means(&run.root, |f| f.fractal_dim)?;
    let (chaotic, wave) = (means[&Mode::Chaotic], means[&Mode::Wave]);
    ensure((1.7..=2.0).contains(&chaotic), || format!("chaotic mean FD {chaotic}"))?;
    ensure(chaotic > wave, || format!("chaotic {chaotic} <= wave {wave}"))?;
    Ok(format!(
        "square {fd_square:.3}, line {fd_line:.3}, sierpinski {fd_sier:.3}; mean FD chaotic {chaotic:.3} > wave {wave:.3} (layered {:.3}, ring {:.3})",
        means[&Mode::Layered],
        means[&Mode::Ring]
    ))
}

fn sky(cx: f64, cy: f64, r: f64, v: i32, p: i32) -> Skyrmion {
    Skyrmion { center: (cx, cy), radius: r, vorticity: v, helicity: 0.3, polarity: p }
}

fn ac4() -> Outcome {
    let q0 = ok(topological_charge(&ok(SpinField::uniform(64, 64, [0.0, 0.0, 1.0]))?))?;
    ensure(q0 == 0.0, || format!("uniform Q = {q0}"))?;
    let mut worst_unit: f64 = 0.0;
    let mut worst_fd: f64 = 0.0;
    for (v, p) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let field = ok(skyrmion_ansatz(256, 256, &sky(128.0, 128.0, 40.0, v, p)))?;
        let q = ok(topological_charge(&field))?;
        let expected = -f64::from(v * p);
        worst_unit = worst_unit.max((q - expected).abs());
        worst_fd = worst_fd.max((q - finite_difference_charge(&field)).abs());
    }
    ensure(worst_unit < 2e-2, || format!("|Q -+ 1| = {worst_unit}"))?;
    ensure(worst_fd < 5e-2, || format!("solid angle vs finite difference {worst_fd}"))?;
    let (a, b) = (sky(70.0, 128.0, 25.0, 1, 1), sky(186.0, 128.0, 25.0, 1, 1));
    let qa = ok(topological_charge(&ok(skyrmion_ansatz(256, 256, &a))?))?;
    let qb = ok(topological_charge(&ok(skyrmion_ansatz(256, 256, &b))?))?;
    let qab = ok(topological_charge(&ok(multi_skyrmion(256, 256, &[a, b]))?))?;
    let additivity = (qab - qa - qb).abs();
    ensure(additivity < 5e-2, || format!("additivity error {additivity}"))?;
    Ok(format!(
        "uniform 0; max |Q -+ 1| {worst_unit:.1e}; pair {qab:.4} vs {:.4}; estimator gap {worst_fd:.1e}",
        qa + qb
    ))
}

fn ac5(run: &Run) -> Outcome {
    let mut rng = Xorshift(0x5eed);
    let (x, y) = (rng.raster(64, 64), rng.raster(64, 64));
    let self_sim = ok(ssim(&x, &x))?;
    ensure(self_sim == 1.0, || format!("ssim(x, x) = {self_sim}"))?;
    let asym = (ok(ssim(&x, &y))? - ok(ssim(&y, &x))?).abs();
    ensure(asym < 1e-12, || format!("asymmetry {asym}"))?;
    let mut rdr = ok(csv::Reader::from_path(run.root.join("ssim_matrix.csv")))?;
    let rows: Vec<Vec<f64>> = rdr
        .records()
        .map(|r| r.map(|r| r.iter().skip(1).map(|v| v.parse().unwrap_or(f64::NAN)).collect()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(rows.len() == 32 && rows.iter().all(|r| r.len() == 32), || "matrix is not 32x32".into())?;
    for i in 0..32 {
        ensure(rows[i][i] == 1.0, || format!("diagonal {i} = {}", rows[i][i]))?;
        for j in 0..32 {
            ensure(rows[i][j] == rows[j][i], || format!("asymmetric at ({i}, {j})"))?;
        }
    }
    let within = run.manifest["ssim"]["within_mode_mean"].as_f64().unwrap_or(f64::NAN);
    let cross = run.manifest["ssim"]["cross_mode_mean"].as_f64().unwrap_or(f64::NAN);
    ensure(within >= cross, || format!("within-mode {within} < cross-mode {cross}"))?;
    Ok(format!("exact self-similarity, asymmetry {asym:.0e}; 32x32 matrix ok; within {within:.4} >= cross {cross:.4}"))
}

fn ac6() -> Outcome {
    let mut rng = Xorshift(77);
    let mut acf_err: f64 = 0.0;
    for _ in 0..50 {
        let img = rng.raster(8, 8);
        let fast = ok(autocorrelation2d(&img))?.acf;
        let slow = direct_acf(&img);
        for (a, b) in fast.data().iter().zip(slow.data()) {
            acf_err = acf_err.max((a - b).abs());
        }
    }
    ensure(acf_err < 1e-9, || format!("ACF error {acf_err:e}"))?;

    let mut pca_err: f64 = 0.0;
    for _ in 0..20 {
        let rows: Vec<Vec<f64>> = (0..5).map(|_| (0..3).map(|k| normal(&mut rng) * (3 - k) as f64).collect()).collect();
        let e = ok(pca2(&rows))?;
        let (values, vectors) = power_pca(&rows);
        for k in 0..2 {
            pca_err = pca_err.max((e.explained_variance[k] - values[k]).abs());
            let same: f64 = e.components[k].iter().zip(&vectors[k]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let flip: f64 = e.components[k].iter().zip(&vectors[k]).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max);
            pca_err = pca_err.max(same.min(flip));
        }
    }
    ensure(pca_err < 1e-8, || format!("PCA error {pca_err:e}"))?;

    let img = rng.raster(64, 48);
    let energy: f64 = img.data().iter().map(|v| v * v).sum();
    let haar = ok(haar_approx(&img, 3))?;
    let rec_err = haar.reconstruct().data().iter().zip(img.data()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let energy_err = (haar.total_energy() - energy).abs() / energy;
    ensure(rec_err < 1e-10, || format!("Haar reconstruction {rec_err:e}"))?;
    ensure(energy_err < 1e-9, || format!("Haar energy {energy_err:e}"))?;

    let spectral: f64 = power_spectrum(&img).data().iter().sum();
    let parseval = (spectral / img.len() as f64 - energy).abs() / energy;
    ensure(parseval < 1e-6, || format!("Parseval {parseval:e}"))?;
    Ok(format!(
        "ACF {acf_err:.1e}, PCA {pca_err:.1e}, Haar {rec_err:.1e}/{energy_err:.1e}, Parseval {parseval:.1e}"
    ))
}

fn bump(u: f64, v: f64) -> f64 {
    (1.0 - u * u - v * v).max(0.0).powi(2)
}

fn object(ox: f64, oy: f64) -> Raster {
    Raster::from_fn(96, 96, |x, y| {
        let (x, y) = (x as f64 - ox, y as f64 - oy);
        bump((x - 30.0) / 14.0, (y - 28.0) / 6.0) + 0.5 * bump((x - 40.0 + 0.4 * y) / 5.0, (y - 40.0) / 9.0)
    })
}

fn ac7() -> Outcome {
    let base = ok(hu_moments(&object(0.0, 0.0)))?;
    let shifted = ok(hu_moments(&object(17.0, 11.0)))?;
    let scaled = ok(hu_moments(&object(0.0, 0.0).map(|v| 0.37 * v)))?;
    let t_err = base.iter().zip(&shifted).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let s_err = base.iter().zip(&scaled).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure(t_err < 1e-6, || format!("Hu translation {t_err:e}"))?;
    ensure(s_err < 1e-6, || format!("Hu intensity scale {s_err:e}"))?;

    for value in [0.0, 0.4, 1.0] {
        let g = ok(glcm_features(&Raster::filled(32, 32, value), 8, &[(1, 0), (0, 1), (1, 1), (1, -1)]))?;
        for s in &g {
            ensure(s.contrast == 0.0 && s.energy == 1.0 && s.homogeneity == 1.0, || format!("constant {value}: {s:?}"))?;
        }
    }
    let mut rng = Xorshift(3);
    let mut lbp_err: f64 = 0.0;
    for _ in 0..20 {
        let sum: f64 = lbp_histogram(&rng.raster(40, 30)).iter().sum();
        lbp_err = lbp_err.max((sum - 1.0).abs());
    }
    ensure(lbp_err < 1e-9, || format!("LBP sum error {lbp_err:e}"))?;
    let board = Raster::from_fn(32, 32, |x, y| ((x + y) % 2) as f64);
    let contrast = ok(glcm_features(&board, 8, &[(1, 0)]))?[0].contrast;
    ensure(contrast == 49.0, || format!("checkerboard contrast {contrast}"))?;
    Ok(format!("Hu {t_err:.1e}/{s_err:.1e}; GLCM constant identities exact; LBP {lbp_err:.1e}; checkerboard 49"))
}

fn ac8(first: &Run, second: &Run) -> Outcome {
    let (h1, h2) = (&first.manifest["determinism_hash"], &second.manifest["determinism_hash"]);
    ensure(h1.is_string() && h1 == h2, || format!("hashes {h1} vs {h2}"))?;
    let grays: Vec<Raster> = Mode::ALL
        .iter()
        .map(|&m| ok(generate_texture(42, m, (256, 256), 6, 6)).map(|t| t.image.gray_quantized()))
        .collect::<Result<_, _>>()?;
    let mut max_pair: f64 = f64::NEG_INFINITY;
    for i in 0..4 {
        for j in i + 1..4 {
            max_pair = max_pair.max(ok(ssim(&grays[i], &grays[j]))?);
        }
    }
    ensure(max_pair < 0.9, || format!("max cross-mode SSIM {max_pair}"))?;
    let centroids = mode_means(&first.root, |f| f.spectral_centroid)?;
    let (c, w) = (centroids[&Mode::Chaotic], centroids[&Mode::Wave]);
    ensure(c > w, || format!("centroid chaotic {c} <= wave {w}"))?;
    Ok(format!(
        "hash {}… on both runs; max cross-mode SSIM {max_pair:.3}; centroid chaotic {c:.2} > wave {w:.2} over 50 seeds",
        &h1.as_str().unwrap_or("")[..12]
    ))
}

fn ac9(first: &Run, second: &Run) -> Outcome {
    let mut rng = Xorshift(2024);
    let centers = [(0.0, 0.0), (20.0, 0.0), (0.0, 20.0), (20.0, 20.0)];
    let mut points = Vec::new();
    let mut truth = Vec::new();
    for (b, (cx, cy)) in centers.iter().enumerate() {
        for _ in 0..40 {
            points.push([cx + normal(&mut rng), cy + normal(&mut rng)]);
            truth.push(b);
        }
    }
    let km = ok(kmeans(&points, 4, 7, DEFAULT_MAX_ITER))?;
    let mut mapping = HashMap::new();
    for (&t, &l) in truth.iter().zip(&km.labels) {
        if *mapping.entry(t).or_insert(l) != l {
            return Err("blob split across clusters".into());
        }
    }
    let mut used: Vec<usize> = mapping.values().copied().collect();
    used.sort();
    used.dedup();
    ensure(used.len() == 4, || "blobs merged".into())?;

    let history: Vec<f64> = first.manifest["embedding"]["objective_history"]
        .as_array()
        .ok_or("no embedding in manifest")?
        .iter()
        .filter_map(|v| v.as_f64())
        .collect();
    ensure(history.windows(2).all(|w| w[1] <= w[0]), || format!("objective {history:?}"))?;
    let labels = |run: &Run| run.manifest["embedding"]["cluster_labels"].clone();
    ensure(labels(first) == labels(second) && labels(first).is_array(), || "labels differ between runs".into())?;
    let n = first.manifest["embedding"]["n_points"].as_u64().unwrap_or(0);
    Ok(format!(
        "4 blobs recovered exactly; {n}-point objective monotone over {} steps; labels stable",
        history.len()
    ))
}

fn report(id: usize, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
    });
    match &outcome {
        Ok(detail) => println!("[PASS] AC{id} {title}: {detail}"),
        Err(why) => println!("[FAIL] AC{id} {title}: {why}"),
    }
    outcome.is_ok()
}

fn main() {
    let first = reproduce();
    let second = reproduce();
    let batch = |f: &dyn Fn(&Run) -> Outcome| match &first {
        Ok(run) => f(run),
        Err(e) => Err(format!("reproduce failed: {e}")),
    };
    let pair = |f: &dyn Fn(&Run, &Run) -> Outcome| match (&first, &second) {
        (Ok(a), Ok(b)) => f(a, b),
        (Err(e), _) | (_, Err(e)) => Err(format!("reproduce failed: {e}")),
    };
    let results = [
        report(1, "statevector correctness", ac1),
        report(2, "batch shape", || batch(&ac2)),
        report(3, "fractal-dimension calibration", || batch(&ac3)),
        report(4, "topological charge", ac4),
        report(5, "SSIM properties", || batch(&ac5)),
        report(6, "oracle equivalences", ac6),
        report(7, "invariance suite", ac7),
        report(8, "determinism", || pair(&ac8)),
        report(9, "clustering sanity", || pair(&ac9)),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
