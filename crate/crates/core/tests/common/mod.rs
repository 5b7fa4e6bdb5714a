//! Independent reference implementations used only by the integration and
//! acceptance tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use skyrtex::qstate::{Circuit, Gate};
use skyrtex::texgen::SpinField;
use skyrtex::Raster;

type CMatrix = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli(p: char) -> CMatrix {
    let o = c(0.0, 0.0);
    let entries = match p {
        'I' => [c(1.0, 0.0), o, o, c(1.0, 0.0)],
        'X' => [o, c(1.0, 0.0), c(1.0, 0.0), o],
        'Y' => [o, c(0.0, -1.0), c(0.0, 1.0), o],
        'Z' => [c(1.0, 0.0), o, o, c(-1.0, 0.0)],
        _ => unreachable!(),
    };
    CMatrix::from_row_slice(2, 2, &entries)
}

/// `exp(-i theta P / 2) = cos(theta/2) I - i sin(theta/2) P`.
fn rotation(p: char, theta: f64) -> CMatrix {
    pauli('I') * c((theta / 2.0).cos(), 0.0) - pauli(p) * c(0.0, (theta / 2.0).sin())
}

/// Full operator with `ops[q]` on qubit `q`; qubit 0 is the rightmost
/// Kronecker factor (least significant index bit).
fn kron_all(ops: &[CMatrix]) -> CMatrix {
    let mut full = CMatrix::from_element(1, 1, c(1.0, 0.0));
    for op in ops.iter().rev() {
        full = full.kronecker(op);
    }
    full
}

pub fn gate_unitary(gate: &Gate, n: usize) -> CMatrix {
    let single = |q: usize, u: CMatrix| {
        let mut ops = vec![pauli('I'); n];
        ops[q] = u;
        kron_all(&ops)
    };
    match *gate {
        Gate::H(q) => single(q, (pauli('X') + pauli('Z')) * c(1.0 / 2f64.sqrt(), 0.0)),
        Gate::Rx(q, t) => single(q, rotation('X', t)),
        Gate::Ry(q, t) => single(q, rotation('Y', t)),
        Gate::Rz(q, t) => single(q, rotation('Z', t)),
        Gate::Cnot { control, target } => {
            let p0 = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
            let p1 = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
            let mut off = vec![pauli('I'); n];
            off[control] = p0;
            let mut on = vec![pauli('I'); n];
            on[control] = p1;
            on[target] = pauli('X');
            kron_all(&off) + kron_all(&on)
        }
    }
}

/// Dense statevector of `circuit` by explicit matrix products.
pub fn kronecker_simulate(circuit: &Circuit) -> Vec<Complex64> {
    let n = circuit.n_qubits();
    let mut psi = DVector::from_element(1 << n, c(0.0, 0.0));
    psi[0] = c(1.0, 0.0);
    for g in circuit.gates() {
        psi = gate_unitary(g, n) * psi;
    }
    psi.iter().copied().collect()
}

/// Continuum charge `(1/4 pi) sum m . (d_x m x d_y m)` with central
/// differences on interior cells.
pub fn finite_difference_charge(field: &SpinField) -> f64 {
    let (w, h) = (field.width(), field.height());
    let sub = |a: [f64; 3], b: [f64; 3]| [(a[0] - b[0]) / 2.0, (a[1] - b[1]) / 2.0, (a[2] - b[2]) / 2.0];
    let mut total = 0.0;
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let m = field.get(x, y);
            let dx = sub(field.get(x + 1, y), field.get(x - 1, y));
            let dy = sub(field.get(x, y + 1), field.get(x, y - 1));
            let cross = [
                dx[1] * dy[2] - dx[2] * dy[1],
                dx[2] * dy[0] - dx[0] * dy[2],
                dx[0] * dy[1] - dx[1] * dy[0],
            ];
            total += m[0] * cross[0] + m[1] * cross[1] + m[2] * cross[2];
        }
    }
    total / (4.0 * PI)
}

/// Circular autocorrelation of the mean-removed image by direct summation,
/// normalized to 1 at zero lag.
pub fn direct_acf(img: &Raster) -> Raster {
    let (w, h) = (img.width(), img.height());
    let mean = img.mean();
    let f = |x: usize, y: usize| img.get(x % w, y % h) - mean;
    let raw = Raster::from_fn(w, h, |dx, dy| {
        let mut s = 0.0;
        for y in 0..h {
            for x in 0..w {
                s += f(x, y) * f(x + dx, y + dy);
            }
        }
        s
    });
    let zero = raw.get(0, 0);
    raw.map(|v| v / zero)
}

/// Sample covariance (divisor `n - 1`) and its two leading eigenpairs by
/// power iteration with deflation.
pub fn power_pca(rows: &[Vec<f64>]) -> ([f64; 2], [Vec<f64>; 2]) {
    let n = rows.len();
    let d = rows[0].len();
    let mean: Vec<f64> = (0..d).map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n as f64).collect();
    let mut cov = vec![vec![0.0; d]; d];
    for r in rows {
        for i in 0..d {
            for j in 0..d {
                cov[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]) / (n as f64 - 1.0);
            }
        }
    }
    let mut values = [0.0; 2];
    let mut vectors = [vec![], vec![]];
    for k in 0..2 {
        let mut v: Vec<f64> = (0..d).map(|i| 1.0 + i as f64 * 0.37).collect();
        let mut lambda = 0.0;
        for _ in 0..20_000 {
            let mut next: Vec<f64> = (0..d).map(|i| (0..d).map(|j| cov[i][j] * v[j]).sum()).collect();
            let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
            next.iter_mut().for_each(|x| *x /= norm);
            let delta: f64 = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).sum();
            v = next;
            lambda = norm;
            if delta < 1e-15 {
                break;
            }
        }
        for i in 0..d {
            for j in 0..d {
                cov[i][j] -= lambda * v[i] * v[j];
            }
        }
        values[k] = lambda;
        vectors[k] = v;
    }
    (values, vectors)
}

/// Chaos-game Sierpinski raster on `side x side` with vertices at three
/// corners: `points` iterates of `p <- (p + v) / 2` after a short burn-in.
pub fn sierpinski(side: usize, points: usize, rng: &mut Xorshift) -> Raster {
    let s = side as f64;
    let vertices = [(0.0, 0.0), (s, 0.0), (0.0, s)];
    let mut img = Raster::filled(side, side, 0.0);
    let (mut x, mut y) = (rng.next_f64() * s, rng.next_f64() * s);
    for i in 0..points + 32 {
        let (vx, vy) = vertices[((rng.next_f64() * 3.0) as usize).min(2)];
        x = (x + vx) / 2.0;
        y = (y + vy) / 2.0;
        if i >= 32 {
            img.set((x as usize).min(side - 1), (y as usize).min(side - 1), 1.0);
        }
    }
    img
}

/// Small xorshift generator for test fixtures.
pub struct Xorshift(pub u64);

impl Xorshift {
    pub fn next_f64(&mut self) -> f64 {
        let mut s = self.0;
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        self.0 = s;
        (s >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn raster(&mut self, w: usize, h: usize) -> Raster {
        Raster::from_fn(w, h, |_, _| self.next_f64())
    }
}

/// Gaussian via Box-Muller.
pub fn normal(rng: &mut Xorshift) -> f64 {
    let u = rng.next_f64().max(1e-300);
    let v = rng.next_f64();
    (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
}
