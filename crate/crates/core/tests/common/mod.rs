#![allow(dead_code)]

use num_traits::ToPrimitive;
use rand::Rng;
use symhyp::BigRational;

pub fn f64s(c: &[BigRational]) -> Vec<f64> {
    c.iter().map(|x| x.to_f64().unwrap()).collect()
}

/// `2|r|^2 + c.r` (quadratic) or `2 + c.r` (linear).
pub fn objective(c: &[f64], quadratic: bool, r: &[f64]) -> f64 {
    let lin: f64 = c.iter().zip(r).map(|(a, b)| a * b).sum();
    if quadratic {
        2.0 * r.iter().map(|x| x * x).sum::<f64>() + lin
    } else {
        2.0 + lin
    }
}

/// Point of the ordered simplex with vertex weights `w`:
/// `r_i = sum_{j >= i} w_j / j`.
pub fn from_weights(w: &[f64]) -> Vec<f64> {
    let m = w.len();
    let mut r = vec![0.0; m];
    let mut acc = 0.0;
    for i in (0..m).rev() {
        acc += w[i] / (i + 1) as f64;
        r[i] = acc;
    }
    r
}

/// Euclidean projection onto the standard simplex (sort and threshold).
pub fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, x) in u.iter().enumerate() {
        cumsum += x;
        let t = (cumsum - 1.0) / (i + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

/// Projected gradient descent in vertex-weight coordinates; returns the
/// smallest objective value visited.
pub fn descend(c: &[f64], quadratic: bool, start: Vec<f64>, iters: usize) -> f64 {
    let m = c.len();
    let mut w = project_simplex(&start);
    let mut best = objective(c, quadratic, &from_weights(&w));
    let step = 0.05;
    for _ in 0..iters {
        let r = from_weights(&w);
        // dF/dr_i, then dF/dw_j = (1/j) sum_{i <= j} dF/dr_i
        let gr: Vec<f64> = (0..m)
            .map(|i| if quadratic { 4.0 * r[i] + c[i] } else { c[i] })
            .collect();
        let mut gw = vec![0.0; m];
        let mut acc = 0.0;
        for j in 0..m {
            acc += gr[j];
            gw[j] = acc / (j + 1) as f64;
        }
        let next: Vec<f64> = w.iter().zip(&gw).map(|(a, g)| a - step * g).collect();
        w = project_simplex(&next);
        best = best.min(objective(c, quadratic, &from_weights(&w)));
    }
    best
}

pub fn multistart<R: Rng>(
    c: &[f64],
    quadratic: bool,
    starts: usize,
    iters: usize,
    rng: &mut R,
) -> f64 {
    let m = c.len();
    (0..starts)
        .map(|_| {
            let start: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
            descend(c, quadratic, start, iters)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Cycle lengths of a permutation given as an image array.
pub fn cycle_lengths(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Multiplicity of the eigenvalue `exp(2 pi i a / r)` of the permutation
/// acting on `(C^n)^m`, from traces of powers:
/// `mult(a) = (n / r) sum_t tr(P^t) exp(-2 pi i a t / r)`, where `tr(P^t)`
/// counts fixed points of `perm^t`.
pub fn eigen_multiplicities(perm: &[usize], n: u64, r: u64) -> Vec<u64> {
    let m = perm.len();
    let mut traces = Vec::with_capacity(r as usize);
    let mut power: Vec<usize> = (0..m).collect();
    for _ in 0..r {
        traces.push(power.iter().enumerate().filter(|(i, x)| i == *x).count() as f64);
        power = power.iter().map(|&x| perm[x]).collect();
    }
    (0..r)
        .map(|a| {
            let mut re = 0.0;
            for (t, tr) in traces.iter().enumerate() {
                let angle = -2.0 * std::f64::consts::PI * (a as f64) * (t as f64) / r as f64;
                re += tr * angle.cos();
            }
            let mult = n as f64 * re / r as f64;
            let rounded = mult.round();
            assert!(
                (mult - rounded).abs() < 1e-6,
                "non-integral multiplicity {mult}"
            );
            rounded as u64
        })
        .collect()
}
