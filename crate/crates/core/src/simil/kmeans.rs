use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeans {
    pub labels: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    /// Within-cluster sum of squares after each assignment step.
    pub objective_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl KMeans {
    pub fn objective(&self) -> f64 {
        self.objective_history.last().copied().unwrap_or(0.0)
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(p: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centroid) in centroids.iter().enumerate() {
        let d = dist2(p, centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn plus_plus<P: AsRef<[f64]>>(points: &[P], k: usize, rng: &mut ChaCha20Rng) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut centroids = vec![points[rng.random_range(0..n)].as_ref().to_vec()];
    let mut d2: Vec<f64> = points.iter().map(|p| dist2(p.as_ref(), &centroids[0])).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut r = rng.random::<f64>() * total;
            let mut chosen = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if w > 0.0 && r < w {
                    chosen = i;
                    break;
                }
                r -= w;
            }
            chosen
        } else {
            rng.random_range(0..n)
        };
        let c = points[pick].as_ref().to_vec();
        for (d, p) in d2.iter_mut().zip(points) {
            *d = d.min(dist2(p.as_ref(), &c));
        }
        centroids.push(c);
    }
    centroids
}

/// Lloyd's algorithm with k-means++ seeding from a ChaCha20 stream. Ties go to
/// the lowest centroid index; an emptied cluster keeps its previous centroid.
pub fn kmeans<P: AsRef<[f64]>>(points: &[P], k: usize, seed: u64, max_iter: usize) -> Result<KMeans> {
    let n = points.len();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("k = {k} for {n} points")));
    }
    let d = points[0].as_ref().len();
    if points.iter().any(|p| p.as_ref().len() != d) {
        return Err(Error::invalid("points must share one dimension"));
    }
    if points.iter().flat_map(|p| p.as_ref()).any(|v| !v.is_finite()) {
        return Err(Error::invalid("points contain non-finite values"));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut centroids = plus_plus(points, k, &mut rng);
    let mut labels = vec![usize::MAX; n];
    let mut history = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iter.max(1) {
        iterations += 1;
        let mut changed = false;
        let mut objective = 0.0;
        for (label, p) in labels.iter_mut().zip(points) {
            let (c, dist) = nearest(p.as_ref(), &centroids);
            changed |= *label != c;
            *label = c;
            objective += dist;
        }
        history.push(objective);
        if !changed {
            converged = true;
            break;
        }
        let mut sums = vec![vec![0.0; d]; k];
        let mut counts = vec![0usize; k];
        for (&c, p) in labels.iter().zip(points) {
            counts[c] += 1;
            for (s, v) in sums[c].iter_mut().zip(p.as_ref()) {
                *s += v;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                centroids[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
    }
    Ok(KMeans { labels, centroids, objective_history: history, iterations, converged })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blobs() -> Vec<[f64; 2]> {
        let mut pts = Vec::new();
        for (cx, cy) in [(0.0, 0.0), (10.0, 0.0), (0.0, 10.0)] {
            for i in 0..10 {
                let a = i as f64 * 0.628;
                pts.push([cx + 0.5 * a.cos(), cy + 0.5 * a.sin()]);
            }
        }
        pts
    }

    #[test]
    fn separates_blobs() {
        let r = kmeans(&blobs(), 3, 7, DEFAULT_MAX_ITER).unwrap();
        assert!(r.converged);
        for group in r.labels.chunks(10) {
            assert!(group.iter().all(|&l| l == group[0]));
        }
        let mut firsts: Vec<usize> = r.labels.chunks(10).map(|g| g[0]).collect();
        firsts.dedup();
        assert_eq!(firsts.len(), 3);
    }

    #[test]
    fn objective_never_increases() {
        for seed in 0..10 {
            let r = kmeans(&blobs(), 4, seed, DEFAULT_MAX_ITER).unwrap();
            for w in r.objective_history.windows(2) {
                assert!(w[1] <= w[0] + 1e-9);
            }
        }
    }

    #[test]
    fn deterministic_and_validated() {
        let a = kmeans(&blobs(), 3, 11, 50).unwrap();
        let b = kmeans(&blobs(), 3, 11, 50).unwrap();
        assert_eq!(a, b);
        assert!(kmeans(&blobs()[..2], 3, 0, 10).is_err());
        assert!(kmeans(&blobs(), 0, 0, 10).is_err());
        let same = vec![[1.0, 1.0]; 4];
        let r = kmeans(&same, 2, 0, 10).unwrap();
        assert_eq!(r.objective(), 0.0);
    }
}
