use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};

/// Column-standardized rows. Columns with (numerically) zero population
/// variance are set to 0 and reported in `zero_variance`.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardized {
    pub rows: Vec<Vec<f64>>,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    pub zero_variance: Vec<bool>,
}

fn check_rows(rows: &[Vec<f64>], min_rows: usize) -> Result<usize> {
    if rows.len() < min_rows {
        return Err(Error::invalid(format!(
            "need at least {min_rows} vectors, got {}",
            rows.len()
        )));
    }
    let d = rows[0].len();
    if d == 0 || rows.iter().any(|r| r.len() != d) {
        return Err(Error::invalid("vectors must share one nonzero dimension"));
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::invalid("vectors contain non-finite values"));
    }
    Ok(d)
}

pub fn standardize(rows: &[Vec<f64>]) -> Result<Standardized> {
    let d = check_rows(rows, 1)?;
    let n = rows.len() as f64;
    let mut means = vec![0.0; d];
    for r in rows {
        for (m, v) in means.iter_mut().zip(r) {
            *m += v;
        }
    }
    means.iter_mut().for_each(|m| *m /= n);
    let mut stds = vec![0.0; d];
    for r in rows {
        for ((s, v), m) in stds.iter_mut().zip(r).zip(&means) {
            *s += (v - m) * (v - m);
        }
    }
    stds.iter_mut().for_each(|s| *s = (*s / n).sqrt());
    let zero_variance: Vec<bool> = stds
        .iter()
        .zip(&means)
        .map(|(s, m)| *s <= 1e-12 * (1.0 + m.abs()))
        .collect();
    let out = rows
        .iter()
        .map(|r| {
            (0..d)
                .map(|j| if zero_variance[j] { 0.0 } else { (r[j] - means[j]) / stds[j] })
                .collect()
        })
        .collect();
    Ok(Standardized { rows: out, means, stds, zero_variance })
}

/// Two-component PCA embedding.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Embedding2D {
    pub points: Vec<[f64; 2]>,
    /// Unit principal axes, each signed so its largest-magnitude entry is
    /// positive.
    pub components: [Vec<f64>; 2],
    /// Sample variance (divisor `n - 1`) along each axis.
    pub explained_variance: [f64; 2],
    /// Filled in by the caller after clustering; empty otherwise.
    pub cluster_labels: Vec<usize>,
}

fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Projects onto the top two eigenvectors of the sample covariance.
pub fn pca2(rows: &[Vec<f64>]) -> Result<Embedding2D> {
    let d = check_rows(rows, 3)?;
    if d < 2 {
        return Err(Error::invalid("PCA to two components needs dimension >= 2"));
    }
    let n = rows.len();
    let mut mean = vec![0.0; d];
    for r in rows {
        for (m, v) in mean.iter_mut().zip(r) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let x = DMatrix::from_fn(n, d, |i, j| rows[i][j] - mean[j]);
    let cov = (x.transpose() * &x) / (n as f64 - 1.0);
    let eig = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let axis = |k: usize| {
        let mut v: Vec<f64> = eig.eigenvectors.column(order[k]).iter().copied().collect();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        v.iter_mut().for_each(|c| *c /= norm);
        fix_sign(&mut v);
        v
    };
    let components = [axis(0), axis(1)];
    let points = (0..n)
        .map(|i| {
            let row = x.row(i);
            let p = |c: &[f64]| row.iter().zip(c).map(|(a, b)| a * b).sum::<f64>();
            [p(&components[0]), p(&components[1])]
        })
        .collect();
    let explained_variance = [
        eig.eigenvalues[order[0]].max(0.0),
        eig.eigenvalues[order[1]].max(0.0),
    ];
    Ok(Embedding2D { points, components, explained_variance, cluster_labels: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standardize_moments() {
        let rows = vec![vec![1.0, 5.0, 2.0], vec![3.0, 5.0, 4.0], vec![5.0, 5.0, 9.0]];
        let s = standardize(&rows).unwrap();
        assert_eq!(s.zero_variance, vec![false, true, false]);
        for j in [0, 2] {
            let col: Vec<f64> = s.rows.iter().map(|r| r[j]).collect();
            let m = col.iter().sum::<f64>() / 3.0;
            let var = col.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / 3.0;
            assert!(m.abs() < 1e-12 && (var - 1.0).abs() < 1e-12);
        }
        assert!(s.rows.iter().all(|r| r[1] == 0.0));
        let again = standardize(&s.rows).unwrap();
        for (a, b) in again.rows.iter().flatten().zip(s.rows.iter().flatten()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn pca_recovers_dominant_axis() {
        let rows: Vec<Vec<f64>> = (0..20)
            .map(|i| {
                let t = i as f64 - 9.5;
                vec![3.0 * t, -3.0 * t + 0.1 * (i % 3) as f64, 0.5 * ((i * 7) % 5) as f64]
            })
            .collect();
        let e = pca2(&rows).unwrap();
        let c0 = &e.components[0];
        assert!((c0[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-2);
        assert!((c0[1] + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-2);
        let dot: f64 = c0.iter().zip(&e.components[1]).map(|(a, b)| a * b).sum();
        assert!(dot.abs() < 1e-9);
        assert!(e.explained_variance[0] >= e.explained_variance[1]);
        assert_eq!(e.points.len(), 20);
    }

    #[test]
    fn pca_rejects_tiny_inputs() {
        assert!(pca2(&[vec![1.0, 2.0], vec![3.0, 4.0]]).is_err());
        assert!(pca2(&[vec![1.0], vec![2.0], vec![3.0]]).is_err());
        assert!(pca2(&[vec![1.0, 2.0], vec![3.0], vec![5.0, 6.0]]).is_err());
        assert!(standardize(&[vec![f64::NAN]]).is_err());
    }
}
