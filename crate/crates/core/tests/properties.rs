mod common;

use proptest::prelude::*;
use skyrtex::imgfeat::{haar_approx, hu_moments, lbp_histogram};
use skyrtex::pipeline::mix_seed;
use skyrtex::qstate::{build_random_circuit, simulate, Statevector};
use skyrtex::simil::{kmeans, pca2, ssim, standardize};
use skyrtex::texgen::{field_to_spins, generate_texture, topological_charge, Mode};
use skyrtex::Raster;

fn raster(w: usize, h: usize) -> impl Strategy<Value = Raster> {
    prop::collection::vec(0.0f64..=1.0, w * h).prop_map(move |d| Raster::new(w, h, d).unwrap())
}

fn rows(n: usize, d: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-50.0f64..50.0, d), n)
}

fn mode() -> impl Strategy<Value = Mode> {
    prop::sample::select(Mode::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ssim_is_bounded(a in raster(12, 12), b in raster(12, 12)) {
        let s = ssim(&a, &b).unwrap();
        prop_assert!((-1.0..=1.0).contains(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ssim_symmetric_and_reflexive(a in raster(16, 10), b in raster(16, 10)) {
        prop_assert!((ssim(&a, &b).unwrap() - ssim(&b, &a).unwrap()).abs() < 1e-12);
        prop_assert_eq!(ssim(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn circuits_preserve_norm(seed: u64, n in 1usize..=8, depth in 0usize..=8) {
        let state = simulate(&build_random_circuit(seed, n, depth).unwrap()).unwrap();
        prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_circuit_restores_ground_state(seed: u64, n in 1usize..=5, depth in 0usize..=5) {
        let circuit = build_random_circuit(seed, n, depth).unwrap();
        let mut state = simulate(&circuit).unwrap();
        let gates: Vec<_> = circuit.gates().copied().collect();
        for g in gates.into_iter().rev() {
            state.apply(&g.inverse());
        }
        let ground = Statevector::zero(n).unwrap();
        for (a, b) in state.amplitudes().iter().zip(ground.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn simulation_is_deterministic(seed: u64) {
        let a = simulate(&build_random_circuit(seed, 6, 6).unwrap()).unwrap();
        let b = simulate(&build_random_circuit(seed, 6, 6).unwrap()).unwrap();
        prop_assert_eq!(a.amplitudes(), b.amplitudes());
    }

    #[test]
    fn spins_are_unit_vectors(u in raster(9, 7), v in raster(9, 7)) {
        let to_signed = |r: &Raster| r.map(|x| 2.0 * x - 1.0);
        let field = field_to_spins(&to_signed(&u), &to_signed(&v)).unwrap();
        prop_assert!(field.max_norm_deviation() < 1e-12);
        prop_assert!(topological_charge(&field).is_ok());
    }

    #[test]
    fn textures_are_reproducible(seed: u64, m in mode()) {
        let a = generate_texture(seed, m, (24, 20), 4, 3).unwrap();
        let b = generate_texture(seed, m, (24, 20), 4, 3).unwrap();
        prop_assert_eq!(a.image.png_bytes().unwrap(), b.image.png_bytes().unwrap());
        prop_assert!(a.field.max_norm_deviation() < 1e-12);
    }

    #[test]
    fn lbp_codes_rotate_with_the_image(img in raster(10, 9)) {
        let before = lbp_histogram(&img);
        let after = lbp_histogram(&img.rotate90());
        for code in 0..256usize {
            let rotated = (code as u8).rotate_left(2) as usize;
            prop_assert!((before[code] - after[rotated]).abs() < 1e-12);
        }
        prop_assert!((before.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hu_moments_survive_quarter_turns(img in raster(16, 16)) {
        let a = hu_moments(&img).unwrap();
        let b = hu_moments(&img.rotate90()).unwrap();
        for k in 0..7 {
            prop_assert!((a[k] - b[k]).abs() < 1e-6 * (1.0 + a[k].abs()), "h{} {} {}", k + 1, a[k], b[k]);
        }
    }

    #[test]
    fn haar_reconstructs(img in raster(16, 12), levels in 1usize..=2) {
        let h = haar_approx(&img, levels).unwrap();
        let rec = h.reconstruct();
        for (a, b) in rec.data().iter().zip(img.data()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn standardize_is_idempotent(data in rows(6, 4)) {
        let once = standardize(&data).unwrap();
        let twice = standardize(&once.rows).unwrap();
        for (a, b) in once.rows.iter().flatten().zip(twice.rows.iter().flatten()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn pca_components_are_orthonormal(data in rows(8, 4)) {
        let e = pca2(&data).unwrap();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        prop_assert!((dot(&e.components[0], &e.components[0]) - 1.0).abs() < 1e-9);
        prop_assert!((dot(&e.components[1], &e.components[1]) - 1.0).abs() < 1e-9);
        prop_assert!(dot(&e.components[0], &e.components[1]).abs() < 1e-9);
        prop_assert!(e.explained_variance[0] >= e.explained_variance[1]);
        let n = data.len() as f64;
        let var = |k: usize| e.points.iter().map(|p| p[k] * p[k]).sum::<f64>() / (n - 1.0);
        prop_assert!((var(0) - e.explained_variance[0]).abs() < 1e-9 * (1.0 + var(0)));
        let total: f64 = (0..4)
            .map(|j| {
                let m = data.iter().map(|r| r[j]).sum::<f64>() / n;
                data.iter().map(|r| (r[j] - m).powi(2)).sum::<f64>() / (n - 1.0)
            })
            .sum();
        prop_assert!(var(0) + var(1) <= total + 1e-9 * (1.0 + total));
    }

    #[test]
    fn kmeans_is_monotone_and_seeded(data in rows(20, 2), k in 1usize..=5, seed: u64) {
        let a = kmeans(&data, k, seed, 100).unwrap();
        let b = kmeans(&data, k, seed, 100).unwrap();
        prop_assert_eq!(&a.labels, &b.labels);
        for w in a.objective_history.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9 * (1.0 + w[0]));
        }
        if k == 1 {
            prop_assert!(a.labels.iter().all(|&l| l == 0));
        }
    }

    #[test]
    fn seed_mixing_separates_images(base: u64, m in 0usize..4, j in 0usize..10_000, dj in 1usize..10_000) {
        prop_assert_ne!(mix_seed(base, m, j), mix_seed(base, m, j + dj));
        prop_assert_ne!(mix_seed(base, m, j), mix_seed(base, (m + 1) % 4, j));
    }
}
