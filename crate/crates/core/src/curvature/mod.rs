//! Curvature constants `C_p` of the product of balls `(B^n)^m`.
//!
//! Up to normalization, `C_p` is the minimum of a functional `F(r, Gamma)`
//! where `r` runs over the ordered simplex and `Gamma` over
//! `(p-1)`-element subsets of the grid `[1, m] x [1, n]` with at most
//! `m - 1` cells in the first column. Writing `k` for that first-column
//! count and `b_i` for the number of cells of row `i` outside the first
//! column:
//!
//! ```text
//! F = 2 + sum_i b_i r_i                                   if k = m - 1
//! F = 2 sum_i r_i^2 + 2 sum_{(i,1) in Gamma} r_i + sum_i b_i r_i   otherwise
//! ```
//!
//! Values carry a [`Normalization`]: the working one has `C_{nm} = n + 1`
//! and the reported one has `C_{nm} = 1`.

mod brute;
pub mod qp;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::rational::{int, ratio};
use crate::{Error, Result};

pub use brute::{brute_force_cp, brute_force_min_f, BruteForceReport, DEFAULT_BUDGET};

/// Smallest factor dimension covered by the closed-form tables.
pub const TABLE_MIN_N: u32 = 5;

/// A point `r_1 >= ... >= r_m >= 0` with `sum r_i = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplexPoint(Vec<BigRational>);

impl SimplexPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput(
                "a simplex point needs at least one coordinate".into(),
            ));
        }
        if !qp::in_ordered_simplex(&coords) {
            return Err(Error::domain(
                "coordinates must be non-increasing, non-negative and sum to 1",
            ));
        }
        Ok(SimplexPoint(coords))
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for SimplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Which of the two formulas for `F` applies to a shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `k = m - 1`: the objective is `2 + sum b_i r_i`.
    FullFirstColumn,
    /// `k <= m - 2`: quadratic objective.
    Quadratic,
}

/// A set of grid cells `(row, column)`, 1-based, in `[1, m] x [1, n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaShape {
    n: u32,
    m: u32,
    cells: BTreeSet<(u32, u32)>,
}

impl GammaShape {
    pub fn new(n: u32, m: u32, cells: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::domain("n and m must be positive"));
        }
        let cells: BTreeSet<(u32, u32)> = cells.into_iter().collect();
        if let Some(&(i, j)) = cells
            .iter()
            .find(|&&(i, j)| i == 0 || i > m || j == 0 || j > n)
        {
            return Err(Error::domain(format!(
                "cell ({i}, {j}) lies outside [1, {m}] x [1, {n}]"
            )));
        }
        let shape = GammaShape { n, m, cells };
        if shape.k() + 1 > m {
            return Err(Error::domain(format!(
                "{} first-column cells, at most m - 1 = {} allowed",
                shape.k(),
                m - 1
            )));
        }
        Ok(shape)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.cells.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of cells in the first column.
    pub fn k(&self) -> u32 {
        self.cells.iter().filter(|&&(_, j)| j == 1).count() as u32
    }

    /// `b_i`: cells of row `i` outside the first column, indexed from 0.
    pub fn off_column_counts(&self) -> Vec<u32> {
        let mut b = vec![0; self.m as usize];
        for &(i, j) in &self.cells {
            if j >= 2 {
                b[i as usize - 1] += 1;
            }
        }
        b
    }

    pub fn in_first_column(&self, row: u32) -> bool {
        self.cells.contains(&(row, 1))
    }

    pub fn branch(&self) -> Branch {
        if self.k() + 1 == self.m {
            Branch::FullFirstColumn
        } else {
            Branch::Quadratic
        }
    }

    /// Linear coefficient of each `r_i` in `F`.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let b = self.off_column_counts();
        (0..self.m as usize)
            .map(|i| {
                let first = match self.branch() {
                    Branch::Quadratic if self.in_first_column(i as u32 + 1) => 2,
                    _ => 0,
                };
                int(i64::from(b[i]) + first)
            })
            .collect()
    }
}

impl fmt::Display for GammaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, (i, j)) in self.cells.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// Working normalization: `C_{nm} = n + 1`, values are minima of `F`.
    CnmEqualsNPlusOne,
    /// Reported normalization: `C_{nm} = 1`.
    CnmEqualsOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureValue {
    pub n: u32,
    pub m: u32,
    pub p: u32,
    pub value: BigRational,
    pub normalization: Normalization,
}

impl CurvatureValue {
    /// Rescales to `C_{nm} = 1`. Already-normalized values pass through.
    pub fn normalized(&self) -> CurvatureValue {
        match self.normalization {
            Normalization::CnmEqualsOne => self.clone(),
            Normalization::CnmEqualsNPlusOne => CurvatureValue {
                value: &self.value / int(i64::from(self.n) + 1),
                normalization: Normalization::CnmEqualsOne,
                ..self.clone()
            },
        }
    }

    pub fn unnormalized(&self) -> CurvatureValue {
        match self.normalization {
            Normalization::CnmEqualsNPlusOne => self.clone(),
            Normalization::CnmEqualsOne => CurvatureValue {
                value: &self.value * int(i64::from(self.n) + 1),
                normalization: Normalization::CnmEqualsNPlusOne,
                ..self.clone()
            },
        }
    }
}

fn check_dims(n: u32, m: u32, p: u32) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::domain("n and m must be positive"));
    }
    if p == 0 || p > n * m {
        return Err(Error::domain(format!(
            "p = {p} must lie in [1, n*m] = [1, {}]",
            n * m
        )));
    }
    Ok(())
}

/// `F(r, Gamma)`.
pub fn evaluate_f(r: &SimplexPoint, gamma: &GammaShape) -> Result<BigRational> {
    if r.dim() != gamma.m() as usize {
        return Err(Error::domain(format!(
            "point has {} coordinates, shape has {} rows",
            r.dim(),
            gamma.m()
        )));
    }
    let c = gamma.coefficients();
    Ok(match gamma.branch() {
        Branch::FullFirstColumn => int(2) + qp::linear_value(&c, r.coords()),
        Branch::Quadratic => qp::quadratic_value(&c, r.coords()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMinimum {
    pub value: BigRational,
    pub argmin: SimplexPoint,
}

/// Exact minimum of `F(., Gamma)` over the ordered simplex.
pub fn minimize_f_given_gamma(gamma: &GammaShape) -> FMinimum {
    let c = gamma.coefficients();
    let (value, point) = match gamma.branch() {
        Branch::FullFirstColumn => {
            let s = qp::minimize_linear(&c);
            (int(2) + s.value, s.point)
        }
        Branch::Quadratic => {
            let s = qp::minimize_quadratic(&c);
            (s.value, s.point)
        }
    };
    FMinimum {
        value,
        argmin: SimplexPoint(point),
    }
}

/// For `a_1 <= ... <= a_m`, the smallest `t` with
/// `sum_{i <= t} (a_t - a_i) >= 4`, or `m + 1`. Every minimizer of
/// `2 |r|^2 + a.r` on the ordered simplex has `r_t = ... = r_m = 0`.
pub fn smallest_forced_zero(a: &[BigRational]) -> Result<usize> {
    if a.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::domain("coefficients must be non-decreasing"));
    }
    if a.iter().any(|x| x.is_negative()) {
        return Err(Error::domain("coefficients must be non-negative"));
    }
    let four = int(4);
    for t in 1..=a.len() {
        let gap: BigRational = a[..t].iter().map(|ai| &a[t - 1] - ai).sum();
        if gap >= four {
            return Ok(t);
        }
    }
    Ok(a.len() + 1)
}

/// Shapes with `k` first-column cells on the bottom rows and the other
/// cells filling whole rows off the first column from the bottom up, one
/// for every feasible `k`.
pub fn canonical_gammas(n: u32, m: u32, p: u32) -> Result<Vec<GammaShape>> {
    check_dims(n, m, p)?;
    let mut out = Vec::new();
    for k in 0..=(m - 1).min(p - 1) {
        let mut off = p - 1 - k;
        if off > m * (n - 1) {
            continue;
        }
        let mut cells: Vec<(u32, u32)> = ((m - k + 1)..=m).map(|i| (i, 1)).collect();
        let mut row = m;
        while off > 0 {
            let take = off.min(n - 1);
            cells.extend((2..2 + take).map(|j| (row, j)));
            off -= take;
            row -= 1;
        }
        out.push(GammaShape::new(n, m, cells)?);
    }
    Ok(out)
}

/// `(k, d)` with `p - 1 = k n + d`, `0 <= d < n`.
pub fn table_position(n: u32, p: u32) -> (u32, u32) {
    ((p - 1) / n, (p - 1) % n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinFReport {
    /// Unnormalized minimum.
    pub value: CurvatureValue,
    pub gamma: GammaShape,
    pub argmin: SimplexPoint,
    /// `false` when `n` is below [`TABLE_MIN_N`]: the canonical shapes are
    /// then not known to realize the global minimum.
    pub within_table_domain: bool,
}

/// Minimum of `F` over the canonical shapes (working normalization).
pub fn min_f(n: u32, m: u32, p: u32) -> Result<MinFReport> {
    let mut best: Option<(FMinimum, GammaShape)> = None;
    for gamma in canonical_gammas(n, m, p)? {
        let found = minimize_f_given_gamma(&gamma);
        if best.as_ref().is_none_or(|(b, _)| found.value < b.value) {
            best = Some((found, gamma));
        }
    }
    let (found, gamma) = best.ok_or_else(|| {
        Error::domain(format!(
            "no canonical shape for (n, m, p) = ({n}, {m}, {p})"
        ))
    })?;
    Ok(MinFReport {
        value: CurvatureValue {
            n,
            m,
            p,
            value: found.value,
            normalization: Normalization::CnmEqualsNPlusOne,
        },
        gamma,
        argmin: found.argmin,
        within_table_domain: n >= TABLE_MIN_N,
    })
}

/// Closed-form minimum of `F` (working normalization), valid for `n >= 5`.
pub fn closed_form_min_f(n: u32, m: u32, p: u32) -> Result<CurvatureValue> {
    check_dims(n, m, p)?;
    if n < TABLE_MIN_N {
        return Err(Error::Unsupported(format!(
            "closed form unavailable (n = {n} < {TABLE_MIN_N})"
        )));
    }
    let (k, d) = table_position(n, p);
    let rest = i64::from(m - k);
    let value = match (d, rest) {
        (d, 1) => int(i64::from(d) + 2),
        (0, rest) => ratio(2, rest),
        (1, 2) => ratio(23, 16),
        (1, 3) => ratio(11, 12),
        (1, 4) => ratio(21, 32),
        (2, 2) => ratio(7, 4),
        (3, 2) => ratio(31, 16),
        (_, rest) => ratio(2, rest - 1),
    };
    Ok(CurvatureValue {
        n,
        m,
        p,
        value,
        normalization: Normalization::CnmEqualsNPlusOne,
    })
}

/// `C_p((B^n)^m)` normalized so that `C_{nm} = 1`, valid for `n >= 5`.
pub fn closed_form_cp(n: u32, m: u32, p: u32) -> Result<CurvatureValue> {
    Ok(closed_form_min_f(n, m, p)?.normalized())
}

/// `C_1(Omega^m) = gamma / m`, where `-gamma` is the maximum holomorphic
/// sectional curvature of `Omega`.
pub fn c1_product(gamma: &BigRational, m: u32) -> Result<BigRational> {
    if !gamma.is_positive() {
        return Err(Error::domain("gamma must be positive"));
    }
    if m == 0 {
        return Err(Error::domain("m must be positive"));
    }
    Ok(gamma / BigRational::from_integer(BigInt::from(m)))
}

/// `gamma = 2 / (n + 1)` for the ball `B^n` with `C_n = 1`.
pub fn ball_gamma(n: u32) -> BigRational {
    BigRational::new(BigInt::from(2), BigInt::from(n) + BigInt::one())
}

/// The exceptional entries of the tables, unnormalized:
/// `((d, m - k), value)`.
pub fn exceptional_entries() -> [((u32, u32), BigRational); 5] {
    [
        ((1, 2), ratio(23, 16)),
        ((1, 3), ratio(11, 12)),
        ((1, 4), ratio(21, 32)),
        ((2, 2), ratio(7, 4)),
        ((3, 2), ratio(31, 16)),
    ]
}
