//! `S_m`-invariant sections on products of projective spaces.
//!
//! On `V = P^N x ... x P^N` (`m` factors) the polynomial
//! `s = prod_{i<j} (X_i Y_j - X_j Y_i)^2`, with `X_i`, `Y_i` the same two
//! linear forms read in the coordinates of factor `i`, is invariant under
//! permutation of the factors, has degree `2(m-1)` in every factor, and
//! vanishes to order exactly 2 along each diagonal `{x_i = x_j}`.
//!
//! Polynomials are exact, with rational coefficients. Variables are grouped
//! in `m` blocks of `N + 1` homogeneous coordinates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::rational::int;
use crate::{Error, Result};

type Exponent = Vec<u32>;

/// Multivariate polynomial in `blocks * block_len` variables, the variable
/// `(b, c)` being coordinate `c` of block `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPolynomial {
    blocks: usize,
    block_len: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl MultiPolynomial {
    pub fn zero(blocks: usize, block_len: usize) -> Self {
        MultiPolynomial {
            blocks,
            block_len,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(blocks: usize, block_len: usize, c: BigRational) -> Self {
        let mut p = Self::zero(blocks, block_len);
        if !c.is_zero() {
            p.terms.insert(vec![0; blocks * block_len], c);
        }
        p
    }

    pub fn one(blocks: usize, block_len: usize) -> Self {
        Self::constant(blocks, block_len, BigRational::one())
    }

    pub fn variable(blocks: usize, block_len: usize, block: usize, coord: usize) -> Self {
        assert!(block < blocks && coord < block_len, "variable out of range");
        let mut e = vec![0; blocks * block_len];
        e[block * block_len + coord] = 1;
        let mut p = Self::zero(blocks, block_len);
        p.terms.insert(e, BigRational::one());
        p
    }

    /// The form `sum_c coeffs[c] x_c` in the coordinates of `block`.
    pub fn linear_form(blocks: usize, block_len: usize, block: usize, form: &LinearForm) -> Self {
        assert_eq!(
            form.coeffs.len(),
            block_len,
            "form length must match the block"
        );
        let mut p = Self::zero(blocks, block_len);
        for (c, a) in form.coeffs.iter().enumerate() {
            if !a.is_zero() {
                let mut e = vec![0; blocks * block_len];
                e[block * block_len + c] = 1;
                p.terms.insert(e, a.clone());
            }
        }
        p
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn shape_matches(&self, other: &Self) {
        assert!(
            self.blocks == other.blocks && self.block_len == other.block_len,
            "polynomials live in different variable sets"
        );
    }

    fn insert_add(&mut self, e: Exponent, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn block_degree_of(&self, e: &[u32], block: usize) -> u32 {
        e[block * self.block_len..(block + 1) * self.block_len]
            .iter()
            .sum()
    }

    /// Per-block degrees if every term has the same degree in each block;
    /// `None` for the zero polynomial or a non-multihomogeneous one.
    pub fn block_degrees(&self) -> Option<Vec<u32>> {
        let mut iter = self.terms.keys();
        let first = iter.next()?;
        let degrees: Vec<u32> = (0..self.blocks)
            .map(|b| self.block_degree_of(first, b))
            .collect();
        for e in iter {
            if (0..self.blocks).any(|b| self.block_degree_of(e, b) != degrees[b]) {
                return None;
            }
        }
        Some(degrees)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.blocks, self.block_len);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.blocks, self.block_len);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Relabels blocks: block `b` of `self` becomes block `perm[b]`.
    pub fn permute_blocks(&self, perm: &[usize]) -> Self {
        assert_eq!(
            perm.len(),
            self.blocks,
            "permutation size must match the block count"
        );
        let mut out = Self::zero(self.blocks, self.block_len);
        for (e, c) in &self.terms {
            let mut f = vec![0; e.len()];
            for (b, &target) in perm.iter().enumerate() {
                f[target * self.block_len..(target + 1) * self.block_len]
                    .copy_from_slice(&e[b * self.block_len..(b + 1) * self.block_len]);
            }
            out.terms.insert(f, c.clone());
        }
        out
    }

    pub fn swap_blocks(&self, a: usize, b: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.blocks).collect();
        perm.swap(a, b);
        self.permute_blocks(&perm)
    }

    /// Value at a point given block by block.
    pub fn evaluate(&self, point: &[Vec<BigRational>]) -> BigRational {
        assert_eq!(point.len(), self.blocks, "point needs one vector per block");
        let flat: Vec<&BigRational> = point.iter().flatten().collect();
        assert_eq!(
            flat.len(),
            self.blocks * self.block_len,
            "point has the wrong block length"
        );
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &k) in flat.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow((*v).clone(), k as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Largest total degree of a term; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Coefficients in `eps` of `self(base + eps * dir)`, lowest degree first,
    /// trailing zeros removed.
    pub fn restrict_to_line(
        &self,
        base: &[Vec<BigRational>],
        dir: &[Vec<BigRational>],
    ) -> Vec<BigRational> {
        let mut coeffs = self.restrict_to_line_truncated(base, dir, self.total_degree() as usize);
        while coeffs.last().is_some_and(|x| x.is_zero()) {
            coeffs.pop();
        }
        coeffs
    }

    /// Coefficients of `eps^0, ..., eps^max_order` of `self(base + eps * dir)`.
    ///
    /// Integer data is handled in checked `i128` arithmetic, falling back to
    /// exact rationals on overflow; both routes give the same exact result.
    pub fn restrict_to_line_truncated(
        &self,
        base: &[Vec<BigRational>],
        dir: &[Vec<BigRational>],
        max_order: usize,
    ) -> Vec<BigRational> {
        let base: Vec<&BigRational> = base.iter().flatten().collect();
        let dir: Vec<&BigRational> = dir.iter().flatten().collect();
        let nvars = self.blocks * self.block_len;
        assert!(
            base.len() == nvars && dir.len() == nvars,
            "line has the wrong dimension"
        );
        let max_exp: Vec<u32> = (0..nvars)
            .map(|v| self.terms.keys().map(|e| e[v]).max().unwrap_or(0))
            .collect();

        if let Some(small) = self.truncated_i128(&base, &dir, &max_exp, max_order) {
            return small
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect();
        }
        self.truncated_exact(&base, &dir, &max_exp, max_order)
    }

    fn truncated_exact(
        &self,
        base: &[&BigRational],
        dir: &[&BigRational],
        max_exp: &[u32],
        t: usize,
    ) -> Vec<BigRational> {
        // powers[v][k] = (base_v + eps dir_v)^k mod eps^(t+1)
        let powers: Vec<Vec<Vec<BigRational>>> = (0..base.len())
            .map(|v| {
                let lin = [base[v].clone(), dir[v].clone()];
                let mut out = vec![vec![BigRational::one()]];
                for k in 1..=max_exp[v] as usize {
                    out.push(series_mul(&out[k - 1], &lin, t));
                }
                out
            })
            .collect();
        let mut acc = vec![BigRational::zero(); t + 1];
        for (e, c) in &self.terms {
            let mut term = vec![c.clone()];
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = series_mul(&term, &powers[v][k as usize], t);
                }
            }
            for (a, x) in acc.iter_mut().zip(term) {
                *a += x;
            }
        }
        acc
    }

    fn truncated_i128(
        &self,
        base: &[&BigRational],
        dir: &[&BigRational],
        max_exp: &[u32],
        t: usize,
    ) -> Option<Vec<i128>> {
        let small = |q: &BigRational| {
            if q.is_integer() {
                q.numer().to_i128()
            } else {
                None
            }
        };
        let base: Vec<i128> = base.iter().map(|q| small(q)).collect::<Option<_>>()?;
        let dir: Vec<i128> = dir.iter().map(|q| small(q)).collect::<Option<_>>()?;
        let mut powers: Vec<Vec<Vec<i128>>> = Vec::with_capacity(base.len());
        for v in 0..base.len() {
            let lin = [base[v], dir[v]];
            let mut out = vec![vec![1i128]];
            for k in 1..=max_exp[v] as usize {
                let next = series_mul_i128(&out[k - 1], &lin, t)?;
                out.push(next);
            }
            powers.push(out);
        }
        let mut acc = vec![0i128; t + 1];
        for (e, c) in &self.terms {
            let mut term = vec![small(c)?];
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = series_mul_i128(&term, &powers[v][k as usize], t)?;
                }
            }
            for (a, x) in acc.iter_mut().zip(term) {
                *a = a.checked_add(x)?;
            }
        }
        Some(acc)
    }
}

/// Product of two power series in `eps`, truncated after `eps^t`.
fn series_mul(a: &[BigRational], b: &[BigRational], t: usize) -> Vec<BigRational> {
    let len = (a.len() + b.len() - 1).min(t + 1);
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_mul_i128(a: &[i128], b: &[i128], t: usize) -> Option<Vec<i128>> {
    let len = (a.len() + b.len() - 1).min(t + 1);
    let mut out = vec![0i128; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].checked_add(x.checked_mul(y)?)?;
        }
    }
    Some(out)
}

impl Add for &MultiPolynomial {
    type Output = MultiPolynomial;

    fn add(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        self.shape_matches(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPolynomial {
    type Output = MultiPolynomial;

    fn sub(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &MultiPolynomial {
    type Output = MultiPolynomial;

    fn neg(self) -> MultiPolynomial {
        MultiPolynomial {
            blocks: self.blocks,
            block_len: self.block_len,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPolynomial {
    type Output = MultiPolynomial;

    // Exponents add under multiplication.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        self.shape_matches(rhs);
        let mut out = MultiPolynomial::zero(self.blocks, self.block_len);
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                let g: Exponent = e.iter().zip(f).map(|(a, b)| a + b).collect();
                out.insert_add(g, c * d);
            }
        }
        out
    }
}

impl fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    write!(f, "*x{}_{}", v / self.block_len + 1, v % self.block_len)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A linear form `sum_c a_c x_c` on one factor `P^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<BigRational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput(
                "a linear form needs at least one coefficient".into(),
            ));
        }
        Ok(LinearForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// The coordinate `x_c` as a form on `P^N`.
    pub fn coordinate(n_proj: usize, c: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n_proj + 1];
        coeffs[c] = BigRational::one();
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// `prod_{i<j} (X_i Y_j - X_j Y_i)^2` on `(P^N)^m`, where `X_i` and `Y_i`
/// are read in the coordinates of block `i`.
pub fn build_invariant_section(
    m: usize,
    n_proj: usize,
    x: &[LinearForm],
    y: &[LinearForm],
) -> Result<MultiPolynomial> {
    if m == 0 || n_proj == 0 {
        return Err(Error::domain("m and N must be positive"));
    }
    if x.len() != m || y.len() != m {
        return Err(Error::domain(format!(
            "need {m} forms X_i and {m} forms Y_i"
        )));
    }
    let block_len = n_proj + 1;
    if let Some(f) = x.iter().chain(y).find(|f| f.coeffs.len() != block_len) {
        return Err(Error::domain(format!(
            "form has {} coefficients, P^{n_proj} needs {block_len}",
            f.coeffs.len()
        )));
    }
    if x.iter().chain(y).any(LinearForm::is_zero) {
        return Err(Error::domain("linear forms must be nonzero"));
    }
    let xs: Vec<MultiPolynomial> = (0..m)
        .map(|i| MultiPolynomial::linear_form(m, block_len, i, &x[i]))
        .collect();
    let ys: Vec<MultiPolynomial> = (0..m)
        .map(|i| MultiPolynomial::linear_form(m, block_len, i, &y[i]))
        .collect();
    let mut s = MultiPolynomial::one(m, block_len);
    for i in 0..m {
        for j in i + 1..m {
            let factor = &(&xs[i] * &ys[j]) - &(&xs[j] * &ys[i]);
            s = &s * &(&factor * &factor);
        }
    }
    Ok(s)
}

/// The single factor `X_1 Y_2 - X_2 Y_1` on `P^N x P^N`.
pub fn pair_determinant(n_proj: usize, x: &LinearForm, y: &LinearForm) -> Result<MultiPolynomial> {
    let block_len = n_proj + 1;
    if x.coeffs.len() != block_len || y.coeffs.len() != block_len {
        return Err(Error::domain("form length must be N + 1"));
    }
    let x1 = MultiPolynomial::linear_form(2, block_len, 0, x);
    let x2 = MultiPolynomial::linear_form(2, block_len, 1, x);
    let y1 = MultiPolynomial::linear_form(2, block_len, 0, y);
    let y2 = MultiPolynomial::linear_form(2, block_len, 1, y);
    Ok(&(&x1 * &y2) - &(&x2 * &y1))
}

/// `true` iff every adjacent transposition of blocks fixes `s`. Adjacent
/// transpositions generate `S_m`.
pub fn check_sm_invariance(s: &MultiPolynomial, m: usize) -> bool {
    if s.blocks != m {
        return false;
    }
    (0..m.saturating_sub(1)).all(|a| s.swap_blocks(a, a + 1) == *s)
}

/// Order of vanishing; the zero polynomial vanishes to infinite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VanishingOrder {
    Finite(u32),
    Infinite,
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingOrder::Finite(k) => write!(f, "{k}"),
            VanishingOrder::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalOrderReport {
    /// Minimum over the diagonal components `{x_a = x_b}`.
    pub order: VanishingOrder,
    /// Probes per component.
    pub direction_samples: u32,
    /// Order observed on each component `(a, b)`, 0-based blocks.
    pub per_pair: Vec<((usize, usize), VanishingOrder)>,
}

const COORD_RANGE: i64 = 9;
const MAX_REDRAWS: usize = 256;
/// Orders expanded before falling back to the full restriction.
const PROBE_ORDER: usize = 3;

fn random_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<BigRational> {
    (0..len)
        .map(|_| int(rng.random_range(-COORD_RANGE..=COORD_RANGE)))
        .collect()
}

/// Whether two coordinate vectors define the same point of `P^N` (all 2x2
/// minors vanish). The zero vector is proportional to everything.
pub fn proportional(u: &[BigRational], v: &[BigRational]) -> bool {
    (0..u.len()).all(|i| (i + 1..u.len()).all(|j| &u[i] * &v[j] == &u[j] * &v[i]))
}

/// Random point of `(P^N)^m` with pairwise distinct, nonzero factors.
pub fn random_off_diagonal_point<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n_proj: usize,
) -> Result<Vec<Vec<BigRational>>> {
    for _ in 0..MAX_REDRAWS {
        let point: Vec<Vec<BigRational>> = (0..m).map(|_| random_vector(rng, n_proj + 1)).collect();
        let distinct = (0..m).all(|i| (i + 1..m).all(|j| !proportional(&point[i], &point[j])));
        if distinct && point.iter().all(|v| v.iter().any(|x| !x.is_zero())) {
            return Ok(point);
        }
    }
    Err(Error::domain("could not draw an off-diagonal point"))
}

/// Generic pair of nonzero, non-proportional forms with small integer
/// coefficients.
pub fn random_forms<R: Rng + ?Sized>(rng: &mut R, n_proj: usize) -> (LinearForm, LinearForm) {
    loop {
        let x = LinearForm {
            coeffs: (0..=n_proj)
                .map(|_| int(rng.random_range(-5..=5)))
                .collect(),
        };
        let y = LinearForm {
            coeffs: (0..=n_proj)
                .map(|_| int(rng.random_range(-5..=5)))
                .collect(),
        };
        if !x.is_zero() && !y.is_zero() && !proportional(&x.coeffs, &y.coeffs) {
            return (x, y);
        }
    }
}

/// Forms with `X(z_i) Y(z_j) - X(z_j) Y(z_i) != 0` for every `i < j`, so
/// that the invariant section built from them does not vanish at `z`.
pub fn separating_forms<R: Rng + ?Sized>(
    rng: &mut R,
    z: &[Vec<BigRational>],
) -> Result<(LinearForm, LinearForm)> {
    let n_proj = z
        .first()
        .map(|v| v.len())
        .ok_or_else(|| Error::EmptyInput("empty point".into()))?
        - 1;
    for _ in 0..MAX_REDRAWS {
        let (x, y) = random_forms(rng, n_proj);
        let ok = (0..z.len()).all(|i| {
            (i + 1..z.len()).all(|j| x.eval(&z[i]) * y.eval(&z[j]) != x.eval(&z[j]) * y.eval(&z[i]))
        });
        if ok {
            return Ok((x, y));
        }
    }
    Err(Error::domain(
        "no separating forms found; is the point on the diagonal?",
    ))
}

/// Probabilistic vanishing order of `s` along the diagonal components.
///
/// For each pair `a < b`, `trials` probes: a random point with
/// `x_a = x_b` and all other factors distinct, moved along a random
/// direction `x + eps u`. The `eps`-order of the restriction is the order of
/// `s` along `{x_a = x_b}` for generic probes; the minimum over probes is
/// reported.
pub fn diagonal_vanishing_order<R: Rng + ?Sized>(
    s: &MultiPolynomial,
    trials: u32,
    rng: &mut R,
) -> Result<DiagonalOrderReport> {
    let m = s.blocks;
    if m < 2 {
        return Err(Error::domain("the diagonal needs at least two factors"));
    }
    if trials == 0 {
        return Err(Error::domain("at least one probe is needed"));
    }
    let n_proj = s.block_len - 1;
    let mut per_pair = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let order = if s.is_zero() {
                VanishingOrder::Infinite
            } else {
                let mut best = VanishingOrder::Infinite;
                for _ in 0..trials {
                    best = best.min(probe_pair(s, a, b, n_proj, rng)?);
                }
                best
            };
            per_pair.push(((a, b), order));
        }
    }
    let order = per_pair
        .iter()
        .map(|&(_, o)| o)
        .min()
        .unwrap_or(VanishingOrder::Infinite);
    Ok(DiagonalOrderReport {
        order,
        direction_samples: trials,
        per_pair,
    })
}

fn probe_pair<R: Rng + ?Sized>(
    s: &MultiPolynomial,
    a: usize,
    b: usize,
    n_proj: usize,
    rng: &mut R,
) -> Result<VanishingOrder> {
    let m = s.blocks;
    for _ in 0..MAX_REDRAWS {
        let mut base: Vec<Vec<BigRational>> =
            (0..m).map(|_| random_vector(rng, n_proj + 1)).collect();
        base[b] = base[a].clone();
        let degenerate = base.iter().any(|v| v.iter().all(|x| x.is_zero()))
            || (0..m)
                .any(|i| (i + 1..m).any(|j| (i, j) != (a, b) && proportional(&base[i], &base[j])));
        if degenerate {
            continue;
        }
        let dir: Vec<Vec<BigRational>> = (0..m).map(|_| random_vector(rng, n_proj + 1)).collect();
        let mut coeffs = s.restrict_to_line_truncated(&base, &dir, PROBE_ORDER);
        if coeffs.iter().all(|c| c.is_zero()) {
            coeffs = s.restrict_to_line(&base, &dir);
        }
        if let Some(k) = coeffs.iter().position(|c| !c.is_zero()) {
            return Ok(VanishingOrder::Finite(k as u32));
        }
    }
    Err(Error::domain(
        "every probe line was contained in the zero set",
    ))
}

/// Lower bound `r / mult` on the vanishing order, along an exceptional
/// divisor of orbifold multiplicity `mult`, of a section descended from an
/// invariant section vanishing to order `r` upstairs.
pub fn descend_order(r: u32, mult: u32) -> Result<BigRational> {
    if r == 0 || mult == 0 {
        return Err(Error::domain("order and multiplicity must be positive"));
    }
    Ok(BigRational::new(BigInt::from(r), BigInt::from(mult)))
}

/// The coefficient `1 / (2(m-1))` of the exceptional divisor certified by
/// the invariant sections in the stable base locus statement.
pub fn base_locus_coefficient(m: u32) -> Result<BigRational> {
    Ok(base_locus_report(m)?.coefficient)
}

/// How the coefficient arises: a section of degree `2(m-1)` vanishing to
/// order 2 along the diagonal descends with order `2 / 2 = 1` along the
/// exceptional divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLocusReport {
    pub m: u32,
    pub section_degree: u32,
    pub diagonal_order: u32,
    pub descent_multiplicity: u32,
    pub descended_order: BigRational,
    pub coefficient: BigRational,
}

pub fn base_locus_report(m: u32) -> Result<BaseLocusReport> {
    if m < 2 {
        return Err(Error::domain("the diagonal is empty for m < 2"));
    }
    let section_degree = 2 * (m - 1);
    let descended_order = descend_order(2, 2)?;
    let coefficient = &descended_order / int(i64::from(section_degree));
    Ok(BaseLocusReport {
        m,
        section_degree,
        diagonal_order: 2,
        descent_multiplicity: 2,
        descended_order,
        coefficient,
    })
}

/// Outcome of the full battery run by `section-check`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionCheckReport {
    pub m: usize,
    pub n_proj: usize,
    pub x: LinearForm,
    pub y: LinearForm,
    pub terms: usize,
    pub invariant: bool,
    pub block_degrees: Option<Vec<u32>>,
    pub expected_degree: u32,
    pub diagonal: DiagonalOrderReport,
    pub test_point: Vec<Vec<BigRational>>,
    pub value_at_point: BigRational,
}

impl SectionCheckReport {
    pub fn degree_ok(&self) -> bool {
        self.block_degrees
            .as_ref()
            .is_some_and(|d| d.iter().all(|&k| k == self.expected_degree))
    }

    pub fn order_ok(&self) -> bool {
        self.diagonal.order == VanishingOrder::Finite(2)
    }

    pub fn nonzero_ok(&self) -> bool {
        !self.value_at_point.is_zero()
    }

    pub fn all_passed(&self) -> bool {
        self.invariant && self.degree_ok() && self.order_ok() && self.nonzero_ok()
    }
}

/// Draws an off-diagonal point `z`, forms separating it, builds the
/// invariant section and checks invariance, block degrees, diagonal order
/// and `s(z) != 0`.
pub fn run_section_check<R: Rng + ?Sized>(
    m: usize,
    n_proj: usize,
    trials: u32,
    rng: &mut R,
) -> Result<SectionCheckReport> {
    if m < 2 {
        return Err(Error::domain("m >= 2 is required"));
    }
    if n_proj == 0 {
        return Err(Error::domain("N >= 1 is required"));
    }
    let z = random_off_diagonal_point(rng, m, n_proj)?;
    let (x, y) = separating_forms(rng, &z)?;
    let xs = vec![x.clone(); m];
    let ys = vec![y.clone(); m];
    let s = build_invariant_section(m, n_proj, &xs, &ys)?;
    let diagonal = diagonal_vanishing_order(&s, trials, rng)?;
    Ok(SectionCheckReport {
        m,
        n_proj,
        terms: s.num_terms(),
        invariant: check_sm_invariance(&s, m),
        block_degrees: s.block_degrees(),
        expected_degree: 2 * (m as u32 - 1),
        diagonal,
        value_at_point: s.evaluate(&z),
        test_point: z,
        x,
        y,
    })
}
