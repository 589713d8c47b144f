//! Effective degree bounds, thresholds and criterion inequalities, all in
//! exact arithmetic.
//!
//! Strictness follows the statements: `d/r > 2m(m-1)` and `gamma delta >
//! 2m(m-1)` are strict, the degree bounds `d >= ...` are not. For `m = 1`
//! the right-hand side `2m(m-1)` is 0 and the calculators return without
//! error.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{pow, Signed, Zero};

use crate::rational::{exact, parse_rational};
use crate::{Error, Result};

/// Largest `n + n'` accepted by [`debarre_ci_bound`]; the value has about
/// `(n+n')^2 log2(n+n')` bits.
pub const DEBARRE_MAX_SUM: u64 = 256;

/// An exact bound value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Integer(BigInt),
    Rational(BigRational),
    Infinite,
    Verdict(Verdict),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Integer(k) => write!(f, "{k}"),
            Value::Rational(q) => write!(f, "{}", exact(q)),
            Value::Infinite => write!(f, "inf"),
            Value::Verdict(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub name: &'static str,
    pub inputs: Vec<(&'static str, String)>,
    pub value: Value,
    /// Present for criteria.
    pub satisfied: Option<bool>,
    /// Present for strict criteria; `satisfied == (margin > 0)`.
    pub margin: Option<BigRational>,
    /// Secondary quantities, e.g. a codimension bound next to a degree.
    pub extras: Vec<(&'static str, String)>,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(name: &'static str, inputs: Vec<(&'static str, String)>, value: Value) -> Self {
        BoundReport {
            name,
            inputs,
            value,
            satisfied: None,
            margin: None,
            extras: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn with_margin(mut self, margin: BigRational) -> Self {
        self.satisfied = Some(margin.is_positive());
        self.margin = Some(margin);
        self
    }

    fn extra_pair(mut self, key: &'static str, value: String) -> Self {
        self.extras.push((key, value));
        self
    }

    fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    pub fn value_integer(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Integer(k) => Some(k),
            _ => None,
        }
    }

    pub fn extra(&self, key: &str) -> Option<&str> {
        self.extras
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn big(k: u64) -> BigInt {
    BigInt::from(k)
}

fn require_positive(name: &str, k: u64) -> Result<()> {
    if k == 0 {
        Err(Error::domain(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

/// `2m(m-1)`.
pub fn criterion_rhs(m: u64) -> BigInt {
    big(2) * big(m) * (big(m) - 1)
}

/// Margin `d/r - 2m(m-1)` of the hyperbolicity criterion; satisfied iff
/// strictly positive.
pub fn hyp_criterion_margin(d: u64, r: u64, m: u64) -> Result<BoundReport> {
    require_positive("d", d)?;
    require_positive("r", r)?;
    require_positive("m", m)?;
    let ratio = BigRational::new(big(d), big(r));
    let margin = &ratio - BigRational::from_integer(criterion_rhs(m));
    let inputs = vec![
        ("d", d.to_string()),
        ("r", r.to_string()),
        ("m", m.to_string()),
    ];
    Ok(BoundReport::new("hypcrit", inputs, Value::Rational(ratio))
        .with_margin(margin)
        .extra_pair("rhs", criterion_rhs(m).to_string()))
}

/// `16 n^5 (5n + 2m^2 + 4)`.
pub fn bk19_bound(n: u64, m: u64) -> Result<BoundReport> {
    require_positive("n", n)?;
    require_positive("m", m)?;
    let (bn, bm) = (big(n), big(m));
    let value = big(16) * pow(bn.clone(), 5) * (big(5) * &bn + big(2) * &bm * &bm + 4);
    Ok(BoundReport::new(
        "bk19",
        vec![("n", n.to_string()), ("m", m.to_string())],
        Value::Integer(value),
    ))
}

/// `(2n - 1)^5 (2m^2 + 10n - 1)`.
pub fn kobayashi_sym_bound(n: u64, m: u64) -> Result<BoundReport> {
    require_positive("n", n)?;
    require_positive("m", m)?;
    let (bn, bm) = (big(n), big(m));
    let value = pow(big(2) * &bn - 1, 5) * (big(2) * &bm * &bm + big(10) * &bn - 1);
    Ok(BoundReport::new(
        "kobayashi",
        vec![("n", n.to_string()), ("m", m.to_string())],
        Value::Integer(value),
    ))
}

/// `(n + n')^((n + n')^2) * 2m(m-1)`, for `n' >= n`.
pub fn debarre_ci_bound(n: u64, nprime: u64, m: u64) -> Result<BoundReport> {
    require_positive("n", n)?;
    require_positive("m", m)?;
    if nprime < n {
        return Err(Error::domain(format!(
            "n' = {nprime} must be at least n = {n}"
        )));
    }
    let sum = n + nprime;
    if sum > DEBARRE_MAX_SUM {
        return Err(Error::Resource {
            needed: format!("(n+n')^((n+n')^2) with n+n' = {sum}"),
            budget: DEBARRE_MAX_SUM,
        });
    }
    let value = pow(big(sum), (sum * sum) as usize) * criterion_rhs(m);
    let digits = if value.is_zero() {
        1
    } else {
        value.to_string().len()
    };
    let inputs = vec![
        ("n", n.to_string()),
        ("nprime", nprime.to_string()),
        ("m", m.to_string()),
    ];
    Ok(BoundReport::new("debarre", inputs, Value::Integer(value))
        .extra_pair("digits", digits.to_string())
        .note("strict: every degree must exceed the value"))
}

/// Smallest dimension `(m-1)n + 2` of a subvariety certified of general
/// type, with the codimension bound `n - 2`.
pub fn subvariety_gt_threshold(n: u64, m: u64) -> Result<BoundReport> {
    if n < 2 {
        return Err(Error::domain("n >= 2 is required"));
    }
    require_positive("m", m)?;
    let value = big(m - 1) * big(n) + 2;
    Ok(BoundReport::new(
        "subvariety",
        vec![("n", n.to_string()), ("m", m.to_string())],
        Value::Integer(value),
    )
    .extra_pair("codim_max", (n - 2).to_string())
    .extra_pair("dim", (n * m).to_string()))
}

/// Codimension bound `n - 6` and degree threshold `p >= n(m-1) + 6` for
/// ball quotients. Part (a) is vacuous for `n < 7`.
pub fn ball_quotient_thresholds(n: u64, m: u64) -> Result<BoundReport> {
    require_positive("n", n)?;
    require_positive("m", m)?;
    let p_min: BigInt = big(n) * big(m - 1) + 6;
    let codim_max: BigInt = BigInt::from(n) - 6;
    let vacuous = n < 7;
    let mut report = BoundReport::new(
        "ball-quotient",
        vec![("n", n.to_string()), ("m", m.to_string())],
        Value::Integer(p_min.clone()),
    )
    .extra_pair("codim_max", codim_max.to_string())
    .extra_pair("p_min", p_min.to_string())
    .extra_pair("vacuous_a", vacuous.to_string());
    if vacuous {
        report = report.note("n < 7: the subvariety statement is vacuous");
    }
    Ok(report)
}

/// `gamma * delta > 2m(m-1)`, strict.
pub fn compact_quotient_check(
    gamma: &BigRational,
    delta: &BigRational,
    m: u64,
) -> Result<BoundReport> {
    if !gamma.is_positive() || !delta.is_positive() {
        return Err(Error::domain("gamma and delta must be positive"));
    }
    require_positive("m", m)?;
    let product = gamma * delta;
    let margin = &product - BigRational::from_integer(criterion_rhs(m));
    let inputs = vec![
        ("gamma", exact(gamma)),
        ("delta", exact(delta)),
        ("m", m.to_string()),
    ];
    Ok(
        BoundReport::new("compact-quotient", inputs, Value::Rational(product))
            .with_margin(margin)
            .extra_pair("rhs", criterion_rhs(m).to_string()),
    )
}

/// An orbifold multiplicity in `Q>=1 ∪ {inf}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(BigRational),
    Infinite,
}

impl Multiplicity {
    pub fn finite(q: BigRational) -> Result<Self> {
        if q < BigRational::from_integer(BigInt::from(1)) {
            return Err(Error::domain(format!(
                "multiplicity {} is below 1",
                exact(&q)
            )));
        }
        Ok(Multiplicity::Finite(q))
    }

    fn times(&self, t: u64) -> Multiplicity {
        match self {
            Multiplicity::Finite(q) => Multiplicity::Finite(q * BigRational::from_integer(big(t))),
            Multiplicity::Infinite => Multiplicity::Infinite,
        }
    }
}

impl PartialOrd for Multiplicity {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multiplicity {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => a.cmp(b),
            (Multiplicity::Finite(_), Multiplicity::Infinite) => Less,
            (Multiplicity::Infinite, Multiplicity::Finite(_)) => Greater,
            (Multiplicity::Infinite, Multiplicity::Infinite) => Equal,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(q) => write!(f, "{}", exact(q)),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Multiplicity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Multiplicity::Infinite),
            other => Multiplicity::finite(parse_rational(other)?),
        }
    }
}

/// Scheme multiplicities `t_k` and orbifold multiplicities `m_k` of the
/// components of a fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberDatum {
    components: Vec<(u64, Multiplicity)>,
}

impl FiberDatum {
    pub fn new(components: Vec<(u64, Multiplicity)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyInput(
                "a fiber needs at least one component".into(),
            ));
        }
        if components.iter().any(|&(t, _)| t == 0) {
            return Err(Error::domain("scheme multiplicities must be positive"));
        }
        if let Some((_, m)) = components.iter().find(|(_, m)| matches!(m, Multiplicity::Finite(q) if *q < BigRational::from_integer(BigInt::from(1)))) {
            return Err(Error::domain(format!("orbifold multiplicity {m} is below 1")));
        }
        Ok(FiberDatum { components })
    }

    pub fn components(&self) -> &[(u64, Multiplicity)] {
        &self.components
    }
}

/// Parses `t:m,t:m,...`, e.g. `2:3,1:inf`.
impl FromStr for FiberDatum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut components = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (t, m) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected t:m, got {item:?}")))?;
            let t: u64 = t
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad scheme multiplicity {t:?}")))?;
            components.push((t, m.parse()?));
        }
        FiberDatum::new(components)
    }
}

/// `inf_k t_k m_k`; infinite components never win against finite ones.
pub fn orbifold_multiplicity(fiber: &FiberDatum) -> Multiplicity {
    fiber
        .components
        .iter()
        .map(|(t, m)| m.times(*t))
        .min()
        .expect("fiber is non-empty")
}

pub fn orbifold_report(fiber: &FiberDatum) -> BoundReport {
    let spec: Vec<String> = fiber
        .components
        .iter()
        .map(|(t, m)| format!("{t}:{m}"))
        .collect();
    let value = match orbifold_multiplicity(fiber) {
        Multiplicity::Finite(q) if q.is_integer() => Value::Integer(q.to_integer()),
        Multiplicity::Finite(q) => Value::Rational(q),
        Multiplicity::Infinite => Value::Infinite,
    };
    BoundReport::new("orbifold", vec![("fiber", spec.join(","))], value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    NotZariskiDense,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NotZariskiDense => write!(f, "not Zariski dense"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Entire curves in the symmetric product are not Zariski dense when
/// `mn < q`, or when `X` is of general type, `n >= 2` and `mn <= q`.
pub fn albanese_degeneracy(n: u64, m: u64, q_irr: u64, general_type: bool) -> Result<Verdict> {
    require_positive("n", n)?;
    require_positive("m", m)?;
    let mn = m * n;
    Ok(if mn < q_irr || (general_type && n >= 2 && mn <= q_irr) {
        Verdict::NotZariskiDense
    } else {
        Verdict::Unknown
    })
}

pub fn albanese_report(n: u64, m: u64, q_irr: u64, general_type: bool) -> Result<BoundReport> {
    let verdict = albanese_degeneracy(n, m, q_irr, general_type)?;
    let inputs = vec![
        ("n", n.to_string()),
        ("m", m.to_string()),
        ("q", q_irr.to_string()),
        ("general_type", general_type.to_string()),
    ];
    let mut report = BoundReport::new("albanese", inputs, Value::Verdict(verdict))
        .extra_pair("mn", (m * n).to_string());
    report.satisfied = Some(verdict == Verdict::NotZariskiDense);
    Ok(report)
}

/// Curves of degree `d` in a subvariety `Y` with `l * codim Y <= n - 2`
/// have genus `g > d`. The hypothesis is non-strict, so no margin is
/// reported; `slack = n - 2 - l codim Y` is listed instead.
pub fn genus_estimate(l: u64, codim_y: u64, n: u64, d: u64) -> Result<BoundReport> {
    require_positive("l", l)?;
    require_positive("d", d)?;
    if n < 2 {
        return Err(Error::domain("n >= 2 is required"));
    }
    let lhs = big(l) * big(codim_y);
    let slack = big(n - 2) - &lhs;
    let satisfied = !slack.is_negative();
    let inputs = vec![
        ("l", l.to_string()),
        ("codim_y", codim_y.to_string()),
        ("n", n.to_string()),
        ("d", d.to_string()),
    ];
    let mut report = BoundReport::new("genus", inputs, Value::Integer(big(d) + 1))
        .extra_pair("slack", slack.to_string());
    report.satisfied = Some(satisfied);
    if satisfied {
        report = report.extra_pair("g_min", (d + 1).to_string());
    } else {
        report = report.note("hypothesis fails; no genus bound");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn value(r: &BoundReport) -> String {
        r.value.to_string()
    }

    #[test]
    fn hypcrit_strictness() {
        let r = hyp_criterion_margin(100, 2, 3).unwrap();
        assert_eq!(
            (r.margin.clone().unwrap(), r.satisfied),
            (int(38), Some(true))
        );
        let r = hyp_criterion_margin(4, 1, 2).unwrap();
        assert_eq!(
            (r.margin.clone().unwrap(), r.satisfied),
            (int(0), Some(false))
        );
        let r = hyp_criterion_margin(5, 1, 2).unwrap();
        assert_eq!(
            (r.margin.clone().unwrap(), r.satisfied),
            (int(1), Some(true))
        );
        assert_eq!(
            hyp_criterion_margin(7, 2, 1).unwrap().margin.unwrap(),
            ratio(7, 2)
        );
        assert!(hyp_criterion_margin(4, 0, 2).is_err());
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(value(&bk19_bound(2, 2).unwrap()), "11264");
        assert_eq!(value(&bk19_bound(1, 1).unwrap()), "176");
        assert_eq!(value(&bk19_bound(3, 2).unwrap()), "104976");
        assert_eq!(value(&kobayashi_sym_bound(2, 2).unwrap()), "6561");
        assert_eq!(value(&kobayashi_sym_bound(1, 1).unwrap()), "11");
        assert_eq!(value(&kobayashi_sym_bound(3, 3).unwrap()), "146875");
        assert!(bk19_bound(0, 1).is_err());
    }

    #[test]
    fn debarre_values() {
        let r = debarre_ci_bound(2, 2, 2).unwrap();
        assert_eq!(value(&r), "17179869184");
        assert_eq!(r.extra("digits"), Some("11"));
        assert_eq!(value(&debarre_ci_bound(1, 1, 2).unwrap()), "64");
        let expected = num_traits::pow(BigInt::from(5), 25) * 4;
        assert_eq!(
            debarre_ci_bound(2, 3, 2).unwrap().value,
            Value::Integer(expected)
        );
        assert_eq!(
            value(&debarre_ci_bound(2, 3, 2).unwrap()),
            "1192092895507812500"
        );
        assert_eq!(value(&debarre_ci_bound(1, 1, 1).unwrap()), "0");
        assert!(debarre_ci_bound(3, 2, 2).is_err());
        assert!(matches!(
            debarre_ci_bound(200, 200, 2),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn thresholds() {
        let r = subvariety_gt_threshold(2, 2).unwrap();
        assert_eq!(
            (value(&r), r.extra("codim_max")),
            ("4".to_string(), Some("0"))
        );
        assert_eq!(value(&subvariety_gt_threshold(4, 3).unwrap()), "10");
        let r = subvariety_gt_threshold(5, 2).unwrap();
        assert_eq!(
            (value(&r), r.extra("codim_max")),
            ("7".to_string(), Some("3"))
        );
        assert!(subvariety_gt_threshold(1, 2).is_err());

        let r = ball_quotient_thresholds(7, 2).unwrap();
        assert_eq!(
            (r.extra("codim_max"), r.extra("p_min"), r.extra("vacuous_a")),
            (Some("1"), Some("13"), Some("false"))
        );
        let r = ball_quotient_thresholds(6, 1).unwrap();
        assert_eq!(
            (r.extra("codim_max"), r.extra("p_min"), r.extra("vacuous_a")),
            (Some("0"), Some("6"), Some("true"))
        );
        let r = ball_quotient_thresholds(10, 3).unwrap();
        assert_eq!(
            (r.extra("codim_max"), r.extra("p_min")),
            (Some("4"), Some("26"))
        );
        assert_eq!(
            ball_quotient_thresholds(3, 2).unwrap().extra("codim_max"),
            Some("-3")
        );
    }

    #[test]
    fn compact_quotient() {
        let r = compact_quotient_check(&ratio(1, 3), &int(13), 1).unwrap();
        assert_eq!(
            (r.margin.clone().unwrap(), r.satisfied),
            (ratio(13, 3), Some(true))
        );
        let r = compact_quotient_check(&ratio(1, 3), &int(36), 2).unwrap();
        assert_eq!(
            (r.margin.clone().unwrap(), r.satisfied),
            (int(8), Some(true))
        );
        let r = compact_quotient_check(&ratio(1, 3), &int(12), 2).unwrap();
        assert_eq!(
            (r.margin.clone().unwrap(), r.satisfied),
            (int(0), Some(false))
        );
        assert!(compact_quotient_check(&int(0), &int(12), 2).is_err());
    }

    #[test]
    fn orbifold() {
        let f: FiberDatum = "2:3,1:inf".parse().unwrap();
        assert_eq!(orbifold_multiplicity(&f), Multiplicity::Finite(int(6)));
        let f: FiberDatum = "1:1".parse().unwrap();
        assert_eq!(orbifold_multiplicity(&f), Multiplicity::Finite(int(1)));
        let f: FiberDatum = "3:2, 2:2, 5:1".parse().unwrap();
        assert_eq!(orbifold_multiplicity(&f), Multiplicity::Finite(int(4)));
        let f: FiberDatum = "1:inf,4:inf".parse().unwrap();
        assert_eq!(orbifold_multiplicity(&f), Multiplicity::Infinite);
        assert_eq!(orbifold_report(&f).value, Value::Infinite);
        let f: FiberDatum = "1:3/2".parse().unwrap();
        assert_eq!(orbifold_report(&f).value, Value::Rational(ratio(3, 2)));

        assert!("".parse::<FiberDatum>().is_err());
        assert!("0:2".parse::<FiberDatum>().is_err());
        assert!("1:1/2".parse::<FiberDatum>().is_err());
        assert!("1-2".parse::<FiberDatum>().is_err());
    }

    #[test]
    fn albanese() {
        assert_eq!(
            albanese_degeneracy(2, 2, 5, false).unwrap(),
            Verdict::NotZariskiDense
        );
        assert_eq!(
            albanese_degeneracy(2, 2, 4, true).unwrap(),
            Verdict::NotZariskiDense
        );
        assert_eq!(
            albanese_degeneracy(2, 2, 4, false).unwrap(),
            Verdict::Unknown
        );
        assert_eq!(
            albanese_degeneracy(1, 4, 4, true).unwrap(),
            Verdict::Unknown
        );
        assert_eq!(
            albanese_report(2, 2, 5, false).unwrap().satisfied,
            Some(true)
        );
    }

    #[test]
    fn genus() {
        let r = genus_estimate(1, 2, 4, 7).unwrap();
        assert_eq!((r.satisfied, r.extra("g_min")), (Some(true), Some("8")));
        let r = genus_estimate(2, 2, 4, 7).unwrap();
        assert_eq!((r.satisfied, r.extra("g_min")), (Some(false), None));
        let r = genus_estimate(3, 1, 5, 10).unwrap();
        assert_eq!((r.satisfied, r.extra("g_min")), (Some(true), Some("11")));
        assert!(genus_estimate(1, 1, 1, 3).is_err());
    }
}
