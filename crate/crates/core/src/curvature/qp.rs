//! Exact minimization over the ordered simplex
//! `{ r_1 >= ... >= r_m >= 0, sum r_i = 1 }`.
//!
//! Two objectives occur: `2 |r|^2 + c.r` (strictly convex) and the linear
//! `c.r`. The ordered simplex is the convex hull of its vertices
//! `v_j = (1/j, ..., 1/j, 0, ..., 0)` (`j` leading entries), and
//! `r = sum_j w_j v_j` with `w` on the standard simplex, `w_j = j (r_j - r_{j+1})`.
//! In weight coordinates the quadratic has Hessian `4 G` with
//! `G_ab = <v_a, v_b> = 1 / max(a, b)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::int;

/// An exact minimizer: the point and the objective value there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QpSolution {
    pub point: Vec<BigRational>,
    pub value: BigRational,
}

fn q(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn quadratic_value(c: &[BigRational], r: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (ci, ri) in c.iter().zip(r) {
        acc += int(2) * ri * ri + ci * ri;
    }
    acc
}

pub fn linear_value(c: &[BigRational], r: &[BigRational]) -> BigRational {
    c.iter().zip(r).map(|(ci, ri)| ci * ri).sum()
}

/// Vertex `v_j` (1-based `j`) of the ordered simplex in dimension `m`.
pub fn vertex(m: usize, j: usize) -> Vec<BigRational> {
    let w = BigRational::new(BigInt::one(), BigInt::from(j));
    (0..m)
        .map(|i| {
            if i < j {
                w.clone()
            } else {
                BigRational::zero()
            }
        })
        .collect()
}

/// Barycentric weights of `r` on the vertices `v_1, ..., v_m`.
pub fn vertex_weights(r: &[BigRational]) -> Vec<BigRational> {
    let m = r.len();
    (0..m)
        .map(|i| {
            let next = if i + 1 < m {
                r[i + 1].clone()
            } else {
                BigRational::zero()
            };
            q(i + 1) * (&r[i] - next)
        })
        .collect()
}

fn from_weights(w: &[BigRational]) -> Vec<BigRational> {
    let m = w.len();
    let mut r = vec![BigRational::zero(); m];
    let mut tail = BigRational::zero();
    for i in (0..m).rev() {
        tail += &w[i] / q(i + 1);
        r[i] = tail.clone();
    }
    r
}

/// Gradient of `2 |r|^2 + c.r` in vertex-weight coordinates:
/// `g_j = (1/j) sum_{i <= j} (4 r_i + c_i)`.
pub fn weight_gradient(c: &[BigRational], r: &[BigRational]) -> Vec<BigRational> {
    let mut prefix = BigRational::zero();
    (0..r.len())
        .map(|i| {
            prefix += int(4) * &r[i] + &c[i];
            &prefix / q(i + 1)
        })
        .collect()
}

/// Water-filling for non-decreasing `c`: the unconstrained-order minimizer
/// `r_i = max(0, (tau - c_i) / 4)` is then already ordered, hence optimal on
/// the ordered simplex too. Returns `None` when `c` is not monotone.
pub fn water_fill(c: &[BigRational]) -> Option<QpSolution> {
    if c.is_empty() || c.windows(2).any(|w| w[0] > w[1]) {
        return None;
    }
    let m = c.len();
    let mut prefix = BigRational::zero();
    for s in 1..=m {
        prefix += &c[s - 1];
        let tau = (int(4) + &prefix) / q(s);
        if tau < c[s - 1] {
            continue;
        }
        if s < m && tau > c[s] {
            continue;
        }
        let point: Vec<BigRational> = (0..m)
            .map(|i| {
                if i < s {
                    (&tau - &c[i]) / int(4)
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        let value = quadratic_value(c, &point);
        return Some(QpSolution { point, value });
    }
    None
}

fn solve_linear(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&row| !a[row][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = BigRational::one() / &a[col][col];
        let pivot_row = a[col].clone();
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] * &inv;
            for (x, p) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
            let delta = &factor * &b[col];
            b[row] -= delta;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// General exact minimizer of `2 |r|^2 + c.r` on the ordered simplex, by
/// enumerating the support of the vertex weights and solving each face's
/// KKT system. The first primal- and dual-feasible face is optimal; the
/// objective is strictly convex so the minimizer is unique.
pub fn support_enumeration(c: &[BigRational]) -> QpSolution {
    let m = c.len();
    assert!(m > 0, "empty coefficient vector");
    // h_a = <v_a, c>
    let mut prefix = BigRational::zero();
    let h: Vec<BigRational> = (0..m)
        .map(|a| {
            prefix += &c[a];
            &prefix / q(a + 1)
        })
        .collect();
    let gram = |a: usize, b: usize| BigRational::new(BigInt::one(), BigInt::from(a.max(b) + 1));

    for size in 1..=m {
        for support in subsets(m, size) {
            // [4 G_SS  -1] [w_S]   [-h_S]
            // [1^T      0] [mu ] = [ 1  ]
            let k = support.len();
            let mut a = vec![vec![BigRational::zero(); k + 1]; k + 1];
            let mut b = vec![BigRational::zero(); k + 1];
            for (row, &sa) in support.iter().enumerate() {
                for (col, &sb) in support.iter().enumerate() {
                    a[row][col] = int(4) * gram(sa, sb);
                }
                a[row][k] = -BigRational::one();
                b[row] = -h[sa].clone();
            }
            a[k][..k].fill(BigRational::one());
            b[k] = BigRational::one();
            let Some(sol) = solve_linear(a, b) else {
                continue;
            };
            if sol[..k].iter().any(|w| w.is_negative()) {
                continue;
            }
            let mut weights = vec![BigRational::zero(); m];
            for (idx, &sa) in support.iter().enumerate() {
                weights[sa] = sol[idx].clone();
            }
            let point = from_weights(&weights);
            let mu = &sol[k];
            let grad = weight_gradient(c, &point);
            if grad.iter().any(|g| g < mu) {
                continue;
            }
            let value = quadratic_value(c, &point);
            return QpSolution { point, value };
        }
    }
    unreachable!("a strictly convex quadratic attains its minimum on a compact polytope")
}

/// Exact minimizer of `2 |r|^2 + c.r` on the ordered simplex.
pub fn minimize_quadratic(c: &[BigRational]) -> QpSolution {
    water_fill(c).unwrap_or_else(|| support_enumeration(c))
}

/// Exact minimizer of `c.r` on the ordered simplex: the best vertex,
/// smallest `j` on ties.
pub fn minimize_linear(c: &[BigRational]) -> QpSolution {
    let m = c.len();
    assert!(m > 0, "empty coefficient vector");
    let mut best: Option<(usize, BigRational)> = None;
    let mut prefix = BigRational::zero();
    for j in 1..=m {
        prefix += &c[j - 1];
        let value = &prefix / q(j);
        if best.as_ref().is_none_or(|(_, v)| value < *v) {
            best = Some((j, value));
        }
    }
    let (j, value) = best.expect("m > 0");
    QpSolution {
        point: vertex(m, j),
        value,
    }
}

fn subsets(m: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    use itertools::Itertools;
    (0..m).combinations(size)
}

/// Why a claimed minimizer fails its optimality certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KktViolation {
    NotInSimplex,
    /// Stationarity fails on the support.
    NotStationary {
        index: usize,
    },
    /// A zero coordinate would decrease the objective if raised.
    DualInfeasible {
        index: usize,
    },
}

/// Exact KKT certificate for `2 |r|^2 + c.r` on the ordered simplex, in
/// vertex-weight coordinates.
pub fn check_ordered_kkt(c: &[BigRational], r: &[BigRational]) -> Result<(), KktViolation> {
    if !in_ordered_simplex(r) {
        return Err(KktViolation::NotInSimplex);
    }
    let w = vertex_weights(r);
    let g = weight_gradient(c, r);
    let support: Vec<usize> = (0..r.len()).filter(|&j| w[j].is_positive()).collect();
    let mu = g[support[0]].clone();
    for &j in &support {
        if g[j] != mu {
            return Err(KktViolation::NotStationary { index: j });
        }
    }
    for (j, gj) in g.iter().enumerate() {
        if *gj < mu {
            return Err(KktViolation::DualInfeasible { index: j });
        }
    }
    Ok(())
}

/// KKT certificate on the plain simplex (ordering ignored): `4 r_i + c_i`
/// is one constant `mu` where `r_i > 0`, and `c_i >= mu` where `r_i = 0`.
/// For non-decreasing `c` this certifies optimality on the ordered simplex.
pub fn check_simplex_kkt(c: &[BigRational], r: &[BigRational]) -> Result<(), KktViolation> {
    let total: BigRational = r.iter().sum();
    if total != BigRational::one() || r.iter().any(|x| x.is_negative()) {
        return Err(KktViolation::NotInSimplex);
    }
    let support: Vec<usize> = (0..r.len()).filter(|&i| r[i].is_positive()).collect();
    let mu = int(4) * &r[support[0]] + &c[support[0]];
    for &i in &support {
        if int(4) * &r[i] + &c[i] != mu {
            return Err(KktViolation::NotStationary { index: i });
        }
    }
    for i in 0..r.len() {
        if r[i].is_zero() && c[i] < mu {
            return Err(KktViolation::DualInfeasible { index: i });
        }
    }
    Ok(())
}

pub fn in_ordered_simplex(r: &[BigRational]) -> bool {
    let total: BigRational = r.iter().sum();
    !r.is_empty()
        && total == BigRational::one()
        && r.windows(2).all(|w| w[0] >= w[1])
        && r.last().is_some_and(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn rv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn weights_round_trip() {
        let r = vec![ratio(5, 12), ratio(5, 12), ratio(1, 6)];
        let w = vertex_weights(&r);
        assert_eq!(w, vec![int(0), ratio(1, 2), ratio(1, 2)]);
        assert_eq!(from_weights(&w), r);
    }

    #[test]
    fn water_fill_examples() {
        let s = water_fill(&rv(&[0, 1])).unwrap();
        assert_eq!(s.point, vec![ratio(5, 8), ratio(3, 8)]);
        assert_eq!(s.value, ratio(23, 16));

        let s = water_fill(&rv(&[0, 0, 1])).unwrap();
        assert_eq!(s.point, vec![ratio(5, 12), ratio(5, 12), ratio(1, 6)]);
        assert_eq!(s.value, ratio(11, 12));

        let s = water_fill(&rv(&[0, 4])).unwrap();
        assert_eq!(s.point, vec![int(1), int(0)]);
        assert_eq!(s.value, int(2));

        assert!(water_fill(&rv(&[1, 0])).is_none());
    }

    #[test]
    fn both_routes_agree_on_monotone_coefficients() {
        for c in [
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![0, 0, 0, 1],
            vec![1, 1, 5, 6],
            vec![0, 0, 2, 2, 3],
        ] {
            let c = rv(&c);
            assert_eq!(water_fill(&c).unwrap(), support_enumeration(&c));
        }
    }

    #[test]
    fn ordering_constraint_binds_for_decreasing_coefficients() {
        // Unconstrained minimizer would put more mass on r_2.
        let s = minimize_quadratic(&rv(&[1, 0]));
        assert_eq!(s.point, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(s.value, ratio(3, 2));
        assert!(check_ordered_kkt(&rv(&[1, 0]), &s.point).is_ok());
        assert!(check_simplex_kkt(&rv(&[1, 0]), &s.point).is_err());
    }

    #[test]
    fn linear_minimum_picks_first_best_vertex() {
        let s = minimize_linear(&rv(&[3, 4, 4]));
        assert_eq!(s.point, vertex(3, 1));
        assert_eq!(s.value, int(3));
        let s = minimize_linear(&rv(&[4, 0, 0]));
        assert_eq!(s.point, vertex(3, 3));
        assert_eq!(s.value, ratio(4, 3));
    }

    #[test]
    fn certificates_reject_non_minimizers() {
        let c = rv(&[0, 1]);
        assert_eq!(
            check_ordered_kkt(&c, &[ratio(1, 2), ratio(1, 2)]),
            Err(KktViolation::DualInfeasible { index: 0 })
        );
        assert_eq!(
            check_ordered_kkt(&c, &[ratio(1, 3), ratio(2, 3)]),
            Err(KktViolation::NotInSimplex)
        );
        assert!(check_simplex_kkt(&c, &[ratio(3, 4), ratio(1, 4)]).is_err());
        assert!(check_simplex_kkt(&c, &[ratio(5, 8), ratio(3, 8)]).is_ok());
    }
}
