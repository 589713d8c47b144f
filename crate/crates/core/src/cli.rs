//! Report assembly for the `symhyp` binary.
//!
//! Every command produces a [`Report`]: the inputs, one record per result
//! and an overall verdict. Records are ordered key/value lists of strings so
//! that numbers are never rounded on the way out. Rationals are rendered as
//! `p/q (decimal)`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value as Json};

use crate::bounds::{self, BoundReport, FiberDatum};
use crate::curvature::{self, brute_force_cp, closed_form_cp, min_f, table_position, TABLE_MIN_N};
use crate::perm_rep::{self, enumerate_cycle_types, ConditionParams, CycleType};
use crate::rational::{exact, parse_rational, render};
use crate::sections;
use crate::{BigRational, Error, Result};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "symhyp",
    version,
    about = "Exact checks for symmetric products: extension conditions, curvature constants, invariant sections, degree bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for randomized checks (decimal or 0x-prefixed hex).
    #[arg(long, global = true, value_parser = parse_seed, default_value = "0xC0FFEE")]
    pub seed: u64,

    /// Run brute-force oracles where available.
    #[arg(long, global = true)]
    pub verify: bool,

    /// Enumeration cap for brute-force oracles.
    #[arg(long, global = true, default_value_t = curvature::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Curvature constants C_p of (B^n)^m for every p.
    CpTable {
        /// Ball dimensions, e.g. `5`, `5..8` or `5,7`.
        #[arg(long = "n", value_parser = parse_int_list)]
        n: IntList,
        /// Numbers of factors.
        #[arg(long = "m", value_parser = parse_int_list)]
        m: IntList,
        /// Lay out each (n, m) as a (d, m-k) grid of (n+1) C_p.
        #[arg(long)]
        grid: bool,
    },
    /// Condition (I') for S_m acting on (C^n)^m.
    CheckReidtai {
        #[arg(long = "n")]
        n: u32,
        #[arg(long = "m")]
        m: u32,
        #[arg(long = "d")]
        d: u32,
        #[arg(long, value_parser = parse_rational_arg, default_value = "0")]
        alpha: BigRational,
    },
    /// Campaign: the condition holds from the threshold on and is sharp at alpha = 0.
    VerifyLemcrit {
        #[arg(long = "n", value_parser = parse_int_list, default_value = "2..6")]
        n: IntList,
        #[arg(long = "m", value_parser = parse_int_list, default_value = "2..8")]
        m: IntList,
        /// Comma-separated rationals in [0, 1].
        #[arg(long, value_parser = parse_rational_list, default_value = "0,1/2,1")]
        alpha: RationalList,
    },
    /// Effective bounds and criteria.
    Bounds {
        #[command(subcommand)]
        bound: BoundCommand,
    },
    /// Invariant section checks on (P^N)^m.
    SectionCheck {
        #[arg(long = "m")]
        m: usize,
        #[arg(long = "N")]
        big_n: usize,
        /// Probes per diagonal component.
        #[arg(long, default_value_t = 8)]
        trials: u32,
    },
    /// Exponent sums against the closed form for all cycle types.
    SigmaCheck {
        #[arg(long, default_value_t = 10)]
        m_max: u32,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundCommand {
    /// d/r > 2m(m-1).
    Hypcrit {
        #[arg(long = "d")]
        d: u64,
        #[arg(long = "r")]
        r: u64,
        #[arg(long = "m")]
        m: u64,
    },
    /// 16 n^5 (5n + 2m^2 + 4).
    Bk19(NM),
    /// (2n-1)^5 (2m^2 + 10n - 1).
    Kobayashi(NM),
    /// (n+n')^((n+n')^2) 2m(m-1).
    Debarre {
        #[arg(long = "n")]
        n: u64,
        #[arg(long)]
        nprime: u64,
        #[arg(long = "m")]
        m: u64,
    },
    /// (m-1)n + 2 and codimension n - 2.
    Subvariety(NM),
    /// Codimension n - 6 and p >= n(m-1) + 6.
    BallQuotient(NM),
    /// gamma delta > 2m(m-1).
    CompactQuotient {
        #[arg(long, value_parser = parse_rational_arg)]
        gamma: BigRational,
        #[arg(long, value_parser = parse_rational_arg)]
        delta: BigRational,
        #[arg(long = "m")]
        m: u64,
    },
    /// inf_k t_k m_k over fiber components given as `t:m,...` (m may be `inf`).
    Orbifold {
        #[arg(long, value_parser = parse_fiber)]
        fiber: FiberDatum,
    },
    /// Degeneracy of entire curves from the irregularity.
    Albanese {
        #[arg(long = "n")]
        n: u64,
        #[arg(long = "m")]
        m: u64,
        #[arg(long = "q")]
        q: u64,
        #[arg(long)]
        general_type: bool,
    },
    /// g > d when l codim Y <= n - 2.
    Genus {
        #[arg(long = "l")]
        l: u64,
        #[arg(long)]
        codim_y: u64,
        #[arg(long = "n")]
        n: u64,
        #[arg(long = "d")]
        d: u64,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct NM {
    #[arg(long = "n")]
    pub n: u64,
    #[arg(long = "m")]
    pub m: u64,
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed {s:?}: {e}"))
}

/// Parses `a`, `a..b`, `a-b` and comma-separated lists of those into a
/// sorted, deduplicated list.
pub fn parse_range(s: &str) -> std::result::Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        let bounds = item.split_once("..").or_else(|| item.split_once('-'));
        let (lo, hi) = match bounds {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (item, item),
        };
        let lo: u32 = lo.parse().map_err(|_| format!("malformed range {s:?}"))?;
        let hi: u32 = hi.parse().map_err(|_| format!("malformed range {s:?}"))?;
        if lo > hi {
            return Err(format!("empty range {item:?}"));
        }
        out.extend(lo..=hi);
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(format!("empty range {s:?}"));
    }
    Ok(out)
}

/// A parsed `--n`/`--m` range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalList(pub Vec<BigRational>);

fn parse_int_list(s: &str) -> std::result::Result<IntList, String> {
    parse_range(s).map(IntList)
}

fn parse_rational_arg(s: &str) -> std::result::Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_rational_list(s: &str) -> std::result::Result<RationalList, String> {
    let items: Vec<&str> = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .collect();
    if items.is_empty() {
        return Err("empty list".into());
    }
    items
        .into_iter()
        .map(parse_rational_arg)
        .collect::<std::result::Result<_, _>>()
        .map(RationalList)
}

fn parse_fiber(s: &str) -> std::result::Result<FiberDatum, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

pub type Record = Vec<(String, String)>;

/// The result of a command, independent of the output format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<Record>,
    pub all_passed: bool,
    /// Extra text-only layout, printed before the records.
    pub grid: Option<String>,
}

fn rec<const N: usize>(pairs: [(&str, String); N]) -> Record {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

impl Report {
    fn new(command: &str, inputs: Vec<(&str, String)>) -> Self {
        Report {
            command: command.to_string(),
            inputs: inputs
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            results: Vec::new(),
            all_passed: true,
            grid: None,
        }
    }

    pub fn to_json(&self) -> Json {
        let obj = |pairs: &[(String, String)]| -> Json {
            Json::Object(
                pairs
                    .iter()
                    .map(|(k, v)| (k.clone(), Json::String(v.clone())))
                    .collect::<Map<_, _>>(),
            )
        };
        json!({
            "command": self.command,
            "inputs": obj(&self.inputs),
            "results": self.results.iter().map(|r| obj(r)).collect::<Vec<_>>(),
            "all_passed": self.all_passed,
        })
    }

    /// Header is the union of record keys in first-seen order.
    pub fn to_csv(&self) -> Result<String> {
        let mut header: Vec<&str> = Vec::new();
        for r in &self.results {
            for (k, _) in r {
                if !header.contains(&k.as_str()) {
                    header.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Parse(format!("csv: {e}"));
        w.write_record(&header).map_err(io)?;
        for r in &self.results {
            let row = header.iter().map(|h| {
                r.iter()
                    .find(|(k, _)| k == h)
                    .map_or("", |(_, v)| v.as_str())
            });
            w.write_record(row).map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Parse(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(out, "{} {}", self.command, inputs.join(" "));
        if let Some(grid) = &self.grid {
            out.push_str(grid);
        }
        for r in &self.results {
            let fields: Vec<String> = r.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            let _ = writeln!(out, "  {}", fields.join(", "));
        }
        let _ = writeln!(
            out,
            "{}",
            if self.all_passed {
                "all checks passed"
            } else {
                "some checks FAILED"
            }
        );
        out
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json())
                    .map_err(|e| Error::Parse(e.to_string()))?;
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv()?,
        })
    }
}

/// Runs the parsed command line.
pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::CpTable { n, m, grid } => cp_table(&n.0, &m.0, *grid, cli.verify, cli.budget),
        Command::CheckReidtai { n, m, d, alpha } => check_reidtai(*n, *m, *d, alpha),
        Command::VerifyLemcrit { n, m, alpha } => verify_lemcrit(&n.0, &m.0, &alpha.0),
        Command::Bounds { bound } => bounds_report(bound),
        Command::SectionCheck { m, big_n, trials } => section_check(*m, *big_n, *trials, cli.seed),
        Command::SigmaCheck { m_max, n_max } => sigma_check(*m_max, *n_max),
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub fn cp_table(ns: &[u32], ms: &[u32], grid: bool, verify: bool, budget: u64) -> Result<Report> {
    let mut report = Report::new(
        "cp-table",
        vec![
            ("n", join(ns)),
            ("m", join(ms)),
            ("verify", verify.to_string()),
        ],
    );
    if verify {
        report.inputs.push(("budget".into(), budget.to_string()));
    }
    let mut grid_text = String::new();
    for &n in ns {
        for &m in ms {
            let mut cells = Vec::new();
            for p in 1..=n * m {
                let (k, d) = table_position(n, p);
                let found = min_f(n, m, p)?;
                let minimized = found.value.normalized().value;
                let mut r = rec([
                    ("n", n.to_string()),
                    ("m", m.to_string()),
                    ("p", p.to_string()),
                    ("k", k.to_string()),
                    ("d", d.to_string()),
                ]);
                let closed = match closed_form_cp(n, m, p) {
                    Ok(c) => {
                        let ok = c.value == minimized;
                        report.all_passed &= ok;
                        r.push(("closed_form".into(), render(&c.value)));
                        r.push(("minimized".into(), render(&minimized)));
                        r.push(("agree".into(), yes_no(ok)));
                        Some(c.value)
                    }
                    Err(Error::Unsupported(_)) => {
                        r.push((
                            "closed_form".into(),
                            format!("closed form unavailable (n < {TABLE_MIN_N})"),
                        ));
                        r.push(("minimized".into(), render(&minimized)));
                        None
                    }
                    Err(e) => return Err(e),
                };
                r.push(("gamma".into(), found.gamma.to_string()));
                r.push(("argmin".into(), found.argmin.to_string()));
                if verify {
                    let status = match brute_force_cp(n, m, p, budget) {
                        Ok(b) => {
                            let reference = closed.clone().unwrap_or_else(|| minimized.clone());
                            if b.value == reference {
                                "match".to_string()
                            } else {
                                report.all_passed = false;
                                format!("MISMATCH {}", exact(&b.value))
                            }
                        }
                        Err(Error::Resource { .. }) => "skipped (budget)".to_string(),
                        Err(e) => return Err(e),
                    };
                    r.push(("oracle".into(), status));
                }
                cells.push(((d, m - k), found.value.value.clone()));
                report.results.push(r);
            }
            if grid {
                grid_text.push_str(&format_grid(n, m, &cells));
            }
        }
    }
    if grid {
        report.grid = Some(grid_text);
    }
    Ok(report)
}

fn format_grid(n: u32, m: u32, cells: &[((u32, u32), BigRational)]) -> String {
    let mut out = format!("  n={n} m={m}: (n+1) C_p by row d and column m-k\n");
    let width = cells
        .iter()
        .map(|(_, v)| exact(v).len())
        .max()
        .unwrap_or(1)
        .max(5);
    let _ = write!(out, "  {:>4}", "d");
    for col in 1..=m {
        let _ = write!(out, " {:>width$}", format!("m-k={col}"));
    }
    out.push('\n');
    for d in 0..n {
        let _ = write!(out, "  {d:>4}");
        for col in 1..=m {
            let cell = cells
                .iter()
                .find(|((cd, cc), _)| *cd == d && *cc == col)
                .map_or("-".to_string(), |(_, v)| exact(v));
            let _ = write!(out, " {cell:>width$}");
        }
        out.push('\n');
    }
    out
}

pub fn check_reidtai(n: u32, m: u32, d: u32, alpha: &BigRational) -> Result<Report> {
    let params = ConditionParams::new(d, alpha.clone())?;
    let result = perm_rep::check_condition(m, n, &params)?;
    let mut report = Report::new(
        "check-reidtai",
        vec![
            ("n", n.to_string()),
            ("m", m.to_string()),
            ("d", d.to_string()),
            ("alpha", exact(alpha)),
        ],
    );
    let mut r = rec([
        (
            "holds",
            if result.holds { "holds" } else { "fails" }.to_string(),
        ),
        ("classes_checked", result.classes_checked.to_string()),
    ]);
    if let Some(w) = &result.witness {
        r.push(("witness".into(), w.cycle_type.to_string()));
        r.push(("order".into(), w.order.to_string()));
        r.push(("min_sum".into(), w.min_sum.to_string()));
        r.push(("required".into(), render(&w.required)));
    }
    report.results.push(r);
    report.all_passed = result.holds;
    Ok(report)
}

pub fn verify_lemcrit(ns: &[u32], ms: &[u32], alphas: &[BigRational]) -> Result<Report> {
    let alpha_list: Vec<String> = alphas.iter().map(exact).collect();
    let mut report = Report::new(
        "verify-lemcrit",
        vec![
            ("n", join(ns)),
            ("m", join(ms)),
            ("alpha", alpha_list.join(",")),
        ],
    );
    for &n in ns {
        for &m in ms {
            for alpha in alphas {
                let threshold = perm_rep::lemcrit_threshold(n, m, alpha)?;
                let d = perm_rep::lemcrit_min_d(n, m, alpha)?;
                let holds =
                    perm_rep::check_condition(m, n, &ConditionParams::new(d, alpha.clone())?)?
                        .holds;
                let mut r = rec([
                    ("n", n.to_string()),
                    ("m", m.to_string()),
                    ("alpha", exact(alpha)),
                    ("threshold", render(&threshold)),
                    ("d", d.to_string()),
                    ("holds", yes_no(holds)),
                ]);
                let exact_d = perm_rep::exact_min_d(m, n, alpha)?
                    .map_or("none".to_string(), |(d, _)| d.to_string());
                r.push(("exact_min_d".into(), exact_d));
                let mut pass = holds;
                if alpha == &BigRational::from_integer(0.into()) {
                    let d0 = n * (m - 1) + 1;
                    let below =
                        perm_rep::check_condition(m, n, &ConditionParams::new(d0, alpha.clone())?)?;
                    let witness = below.witness.as_ref().map(|w| w.cycle_type.clone());
                    let sharp = !below.holds && witness == Some(CycleType::transposition(m)?);
                    pass &= sharp;
                    r.push(("sharp_d".into(), d0.to_string()));
                    r.push((
                        "sharp_witness".into(),
                        witness.map_or("none".to_string(), |w| w.to_string()),
                    ));
                }
                r.push(("pass".into(), yes_no(pass)));
                report.all_passed &= pass;
                report.results.push(r);
            }
        }
    }
    Ok(report)
}

fn bound_record(b: &BoundReport) -> Record {
    let mut r = rec([("name", b.name.to_string()), ("value", b.value.to_string())]);
    if let Some(s) = b.satisfied {
        r.push(("satisfied".into(), yes_no(s)));
    }
    if let Some(margin) = &b.margin {
        r.push(("margin".into(), render(margin)));
    }
    for (k, v) in &b.extras {
        r.push((k.to_string(), v.clone()));
    }
    if !b.notes.is_empty() {
        r.push(("notes".into(), b.notes.join("; ")));
    }
    r
}

pub fn bounds_report(cmd: &BoundCommand) -> Result<Report> {
    let b = match cmd {
        BoundCommand::Hypcrit { d, r, m } => bounds::hyp_criterion_margin(*d, *r, *m)?,
        BoundCommand::Bk19(a) => bounds::bk19_bound(a.n, a.m)?,
        BoundCommand::Kobayashi(a) => bounds::kobayashi_sym_bound(a.n, a.m)?,
        BoundCommand::Debarre { n, nprime, m } => bounds::debarre_ci_bound(*n, *nprime, *m)?,
        BoundCommand::Subvariety(a) => bounds::subvariety_gt_threshold(a.n, a.m)?,
        BoundCommand::BallQuotient(a) => bounds::ball_quotient_thresholds(a.n, a.m)?,
        BoundCommand::CompactQuotient { gamma, delta, m } => {
            bounds::compact_quotient_check(gamma, delta, *m)?
        }
        BoundCommand::Orbifold { fiber } => bounds::orbifold_report(fiber),
        BoundCommand::Albanese {
            n,
            m,
            q,
            general_type,
        } => bounds::albanese_report(*n, *m, *q, *general_type)?,
        BoundCommand::Genus { l, codim_y, n, d } => bounds::genus_estimate(*l, *codim_y, *n, *d)?,
    };
    let mut report = Report::new(
        "bounds",
        b.inputs.iter().map(|(k, v)| (*k, v.clone())).collect(),
    );
    report.inputs.insert(0, ("name".into(), b.name.to_string()));
    report.all_passed = b.satisfied.unwrap_or(true);
    report.results.push(bound_record(&b));
    Ok(report)
}

pub fn section_check(m: usize, big_n: usize, trials: u32, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = sections::run_section_check(m, big_n, trials, &mut rng)?;
    let mut report = Report::new(
        "section-check",
        vec![
            ("m", m.to_string()),
            ("N", big_n.to_string()),
            ("trials", trials.to_string()),
            ("seed", format!("{seed:#x}")),
        ],
    );
    let forms =
        |f: &sections::LinearForm| f.coeffs().iter().map(exact).collect::<Vec<_>>().join(" ");
    let degrees = s
        .block_degrees
        .as_ref()
        .map_or("not multihomogeneous".to_string(), |d| join(d));
    report.results.push(rec([
        ("invariant", yes_no(s.invariant)),
        ("block_degree", degrees),
        ("expected_degree", s.expected_degree.to_string()),
        ("diagonal_order", s.diagonal.order.to_string()),
        ("nonzero_off_diagonal", yes_no(s.nonzero_ok())),
        ("value_at_point", exact(&s.value_at_point)),
        ("terms", s.terms.to_string()),
        ("X", forms(&s.x)),
        ("Y", forms(&s.y)),
    ]));
    let base = sections::base_locus_report(m as u32)?;
    report.results.push(rec([
        ("descended_order", exact(&base.descended_order)),
        ("base_locus_coefficient", render(&base.coefficient)),
    ]));
    report.all_passed = s.all_passed();
    Ok(report)
}

pub fn sigma_check(m_max: u32, n_max: u32) -> Result<Report> {
    if m_max == 0 || n_max == 0 {
        return Err(Error::domain("m_max and n_max must be positive"));
    }
    let mut report = Report::new(
        "sigma-check",
        vec![("m_max", m_max.to_string()), ("n_max", n_max.to_string())],
    );
    for m in 1..=m_max {
        let types = enumerate_cycle_types(m)?;
        for n in 1..=n_max {
            let mut mismatches = Vec::new();
            for ct in &types {
                if perm_rep::sigma_sum(ct, n)? != perm_rep::sigma_closed_form(ct, n) {
                    mismatches.push(ct.to_string());
                }
            }
            report.all_passed &= mismatches.is_empty();
            report.results.push(rec([
                ("m", m.to_string()),
                ("n", n.to_string()),
                ("cycle_types", types.len().to_string()),
                (
                    "mismatches",
                    if mismatches.is_empty() {
                        "none".to_string()
                    } else {
                        mismatches.join(" ")
                    },
                ),
            ]));
        }
    }
    Ok(report)
}
