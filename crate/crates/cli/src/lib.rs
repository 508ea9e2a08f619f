//! Command-line front end for `lgcy-core`.
//!
//! Every command produces a serializable report and a pass/fail verdict.
//! `main` maps the verdict to the exit code: 0 success, 1 check failure,
//! 2 input error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use lgcy_core::continuation::{
    build_u_matrix, check_symplectic, continuation_consistency, default_grams, f_series, fg_expansion, g_series,
    ContinuationMatrix,
};
use lgcy_core::golden::golden;
use lgcy_core::ifunction::{build_fjrw_omegas, build_gw_omegas, pf_residual_fjrw, pf_residual_gw, OmegaEntry};
use lgcy_core::mirror::{
    all_integral, fjrw_invariants, fjrw_j_coefficients, fjrw_mirror_map, gw_mirror_map, instanton_numbers,
    untwisted_correlator, InvariantRecord,
};
use lgcy_core::ring::{fmt_rational, parse_rational, Rational};
use lgcy_core::series::{DEFAULT_Q_ORDER, DEFAULT_T_ORDER};
use lgcy_core::singularity::{ProfileReport, SingularityProfile};
use lgcy_core::tautological::{grr_coefficients, grr_rows, GrrRow};
use lgcy_core::{Error, Execution, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "lgcy", version, about = "Genus-zero LG/CY computations for the quintic")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by all commands.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Truncation order in `t` (and `τ`).
    #[arg(long, global = true, env = "LGCY_ORDER", default_value_t = DEFAULT_T_ORDER, value_parser = parse_order)]
    pub order: usize,
    /// Truncation order in `q`.
    #[arg(long, global = true, default_value_t = DEFAULT_Q_ORDER, value_parser = parse_order)]
    pub q_order: usize,
    /// Largest `h` in the invariant tables (rows `n = 5h+3`, `5h+4`).
    #[arg(long, global = true, default_value_t = 3)]
    pub h_max: usize,
    #[arg(long, global = true, default_value_t = 1e-10, value_parser = parse_tolerance)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    Fjrw,
    Gw,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Charges, group, invariants and sectors of a quasihomogeneous polynomial.
    Analyze { polynomial: String },
    /// Coefficients of the I-function periods.
    Ifunction {
        #[arg(long, value_enum, default_value_t = SideArg::Fjrw)]
        side: SideArg,
    },
    /// Picard–Fuchs residuals of all periods on both sides.
    PfCheck,
    /// FJRW invariant tables and mirror map, checked against reference values.
    Invariants,
    /// One untwisted genus-zero correlator.
    Untwisted {
        /// Descendant exponents `a_i`.
        #[arg(long = "a", value_delimiter = ',', required = true)]
        a: Vec<u64>,
        /// Sector labels `h_i` in `0..=4`.
        #[arg(long = "h", value_delimiter = ',', required = true)]
        h: Vec<u32>,
    },
    /// Coefficients of the GRR formula for `ch_h`.
    Grr {
        #[arg(long, value_parser = parse_rational_arg, default_value = "1/5")]
        q: Rational,
        /// Multiplicities `Θ_i` of the markings.
        #[arg(long = "theta", value_delimiter = ',', value_parser = parse_rational_arg)]
        thetas: Vec<Rational>,
        #[arg(long, default_value_t = 5)]
        dbar: u64,
        #[arg(long, default_value_t = 5)]
        d: u64,
        /// Degrees `h` to tabulate.
        #[arg(long = "degree", value_delimiter = ',', default_values_t = vec![0usize, 1, 2])]
        degrees: Vec<usize>,
    },
    /// The continuation matrix `U` with its checks.
    Umatrix,
    /// GW mirror coordinate `q'` and instanton numbers.
    GwMirror,
}

pub fn parse_order(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 5 {
        return Err(format!("order must be at least 5, got {n}"));
    }
    Ok(n)
}

pub fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(t > 0.0 && t <= 1e-6) {
        return Err(format!("tolerance must lie in (0, 1e-6], got {t}"));
    }
    Ok(t)
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

/// `(exponent, value)` pair of a series coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub exponent: usize,
    pub value: String,
}

fn coefficients(s: &TruncatedSeries<Rational>) -> Vec<Coefficient> {
    s.iter_nonzero().map(|(e, c)| Coefficient { exponent: e, value: fmt_rational(c) }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IFunctionReport {
    pub side: SideArg,
    pub order: usize,
    pub entries: Vec<OmegaEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Residual {
    pub side: SideArg,
    pub k: usize,
    pub nonzero_terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PfReport {
    pub t_order: usize,
    pub q_order: usize,
    pub residuals: Vec<Residual>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GoldenCheck {
    pub table: String,
    pub key: usize,
    pub expected: String,
    pub actual: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantsReport {
    pub order: usize,
    pub h_max: usize,
    pub inverse_mirror_map: Vec<Coefficient>,
    pub invariants: Vec<InvariantRecord>,
    pub golden: Vec<GoldenCheck>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UntwistedReport {
    pub a: Vec<u64>,
    pub h: Vec<u32>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrrReport {
    pub rows: Vec<GrrRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UMatrixReport {
    pub matrix: ContinuationMatrix,
    pub symplectic_deviation: f64,
    pub f_deviation: f64,
    pub g_deviation: f64,
    pub consistency_deviation: f64,
    pub tolerance: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GwMirrorReport {
    pub q_order: usize,
    pub q_prime: Vec<Coefficient>,
    pub instanton_numbers: Vec<Coefficient>,
    pub integral: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Analyze(ProfileReport),
    Ifunction(IFunctionReport),
    PfCheck(PfReport),
    Invariants(InvariantsReport),
    Untwisted(UntwistedReport),
    Grr(GrrReport),
    Umatrix(UMatrixReport),
    GwMirror(GwMirrorReport),
}

impl Report {
    /// Whether every check carried by the report passed.
    pub fn ok(&self) -> bool {
        match self {
            Report::PfCheck(r) => r.ok,
            Report::Invariants(r) => r.ok,
            Report::Umatrix(r) => r.ok,
            _ => true,
        }
    }
}

pub fn run(config: &RunConfig, command: &Command) -> Result<Report, Error> {
    let exec = Execution::default();
    Ok(match command {
        Command::Analyze { polynomial } => Report::Analyze(SingularityProfile::from_text(polynomial)?.report()),
        Command::Ifunction { side } => {
            let (order, entries) = match side {
                SideArg::Fjrw => (config.order, build_fjrw_omegas(config.order, exec)?.entries()),
                SideArg::Gw => (config.q_order, build_gw_omegas(config.q_order, exec)?.entries()),
            };
            Report::Ifunction(IFunctionReport { side: *side, order, entries })
        }
        Command::PfCheck => {
            let mut residuals = Vec::new();
            for (i, w) in build_fjrw_omegas(config.order, exec)?.omegas.iter().enumerate() {
                let r = pf_residual_fjrw(w);
                residuals.push(Residual { side: SideArg::Fjrw, k: i + 1, nonzero_terms: r.iter_nonzero().count() });
            }
            for (i, w) in build_gw_omegas(config.q_order, exec)?.omegas.iter().enumerate() {
                let r = pf_residual_gw(w);
                let nonzero_terms = r.components().iter().map(|c| c.iter_nonzero().count()).sum();
                residuals.push(Residual { side: SideArg::Gw, k: i + 1, nonzero_terms });
            }
            let ok = residuals.iter().all(|r| r.nonzero_terms == 0);
            Report::PfCheck(PfReport { t_order: config.order, q_order: config.q_order, residuals, ok })
        }
        Command::Invariants => Report::Invariants(invariants(config, exec)?),
        Command::Untwisted { a, h } => Report::Untwisted(UntwistedReport {
            a: a.clone(),
            h: h.clone(),
            value: fmt_rational(&untwisted_correlator(a, h)?),
        }),
        Command::Grr { q, thetas, dbar, d, degrees } => {
            let mut rows = Vec::new();
            for &h in degrees {
                rows.extend(grr_rows(&grr_coefficients(h, q, thetas, *dbar, *d)?));
            }
            Report::Grr(GrrReport { rows })
        }
        Command::Umatrix => Report::Umatrix(umatrix(config.tolerance)?),
        Command::GwMirror => {
            let mirror = gw_mirror_map(config.q_order, exec)?;
            let inst = instanton_numbers(config.q_order, exec)?;
            Report::GwMirror(GwMirrorReport {
                q_order: config.q_order,
                q_prime: coefficients(&mirror.q_prime),
                instanton_numbers: inst
                    .numbers
                    .iter()
                    .map(|(d, n)| Coefficient { exponent: *d, value: fmt_rational(n) })
                    .collect(),
                integral: all_integral(&inst.numbers),
            })
        }
    })
}

fn invariants(config: &RunConfig, exec: Execution) -> Result<InvariantsReport, Error> {
    let map = fjrw_mirror_map(config.order, exec)?;
    let slots = fjrw_j_coefficients(config.order, exec)?;
    let tables = fjrw_invariants(&slots, config.h_max)?;
    let reference = golden();
    let mut checks = Vec::new();
    let mut series_check = |name: &str, s: &TruncatedSeries<Rational>, table: &[(usize, Rational)]| {
        for (e, expected) in table {
            if let Some(actual) = s.coeff(*e) {
                checks.push(GoldenCheck {
                    table: name.into(),
                    key: *e,
                    expected: fmt_rational(expected),
                    actual: fmt_rational(actual),
                    matches: actual == expected,
                });
            }
        }
    };
    series_check("inverseMirrorMap", &map.inverse, &reference.inverse_mirror_map);
    series_check("jSlotZMinus1", &slots.z_minus_1, &reference.j_slot_z_minus_1);
    series_check("jSlotZMinus2", &slots.z_minus_2, &reference.j_slot_z_minus_2);
    for (name, rows, table) in [
        ("primary", &tables.primary, &reference.primary),
        ("descendant", &tables.descendant, &reference.descendant),
    ] {
        for (n, expected) in table {
            if let Some(row) = rows.iter().find(|r| r.n == *n) {
                checks.push(GoldenCheck {
                    table: name.into(),
                    key: *n,
                    expected: fmt_rational(expected),
                    actual: fmt_rational(&row.value),
                    matches: row.value == *expected,
                });
            }
        }
    }
    let ok = checks.iter().all(|c| c.matches);
    Ok(InvariantsReport {
        order: config.order,
        h_max: config.h_max,
        inverse_mirror_map: coefficients(&map.inverse),
        invariants: tables.records(),
        golden: checks,
        ok,
    })
}

fn umatrix(tolerance: f64) -> Result<UMatrixReport, Error> {
    let matrix = build_u_matrix()?;
    let (g_fjrw, g_gw) = default_grams();
    let symplectic_deviation = check_symplectic(&matrix, &g_fjrw, &g_gw)?;
    let mut f_deviation: f64 = 0.0;
    let mut g_deviation: f64 = 0.0;
    let f = f_series(3);
    for k in 1..=4u32 {
        let expected = fg_expansion(k);
        let g = g_series(k, 3);
        for j in 0..4 {
            f_deviation = f_deviation.max((f.coeffs()[j] - expected.f[j]).norm());
            g_deviation = g_deviation.max((g.coeffs()[j] - expected.g[j]).norm());
        }
    }
    let consistency_deviation = continuation_consistency(8)?;
    let ok = [symplectic_deviation, f_deviation, g_deviation, consistency_deviation]
        .iter()
        .all(|d| *d < tolerance);
    Ok(UMatrixReport {
        matrix,
        symplectic_deviation,
        f_deviation,
        g_deviation,
        consistency_deviation,
        tolerance,
        ok,
    })
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Csv => csv(report),
        Format::Pretty => pretty(report),
    }
}

fn csv(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Analyze(r) => {
            out.push_str("m,kind,fixedDimension,iota,degree,invariantDimension\n");
            for s in &r.sectors {
                let dim = s.invariant_dimension.map(|d| d.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{},{:?},{},{},{},{}", s.m, s.kind, s.fixed_dimension, s.iota, s.degree, dim);
            }
        }
        Report::Ifunction(r) => {
            out.push_str("k,exponent,logDegree,value\n");
            for e in &r.entries {
                let _ = writeln!(out, "{},{},{},{}", e.k, e.exponent, e.log_degree, e.value);
            }
        }
        Report::PfCheck(r) => {
            out.push_str("side,k,nonzeroTerms\n");
            for x in &r.residuals {
                let _ = writeln!(out, "{:?},{},{}", x.side, x.k, x.nonzero_terms);
            }
        }
        Report::Invariants(r) => {
            out.push_str("n,kind,value\n");
            for x in &r.invariants {
                let kind = serde_json::to_value(x.kind).expect("kind serializes");
                let _ = writeln!(out, "{},{},{}", x.n, kind.as_str().unwrap_or_default(), x.value);
            }
        }
        Report::Untwisted(r) => {
            out.push_str("value\n");
            let _ = writeln!(out, "{}", r.value);
        }
        Report::Grr(r) => {
            out.push_str("h,class,marking,theta,coefficient\n");
            for row in &r.rows {
                let marking = row.marking.map(|m| m.to_string()).unwrap_or_default();
                let theta = row.theta.clone().unwrap_or_default();
                let _ = writeln!(out, "{},{},{},{},{}", row.h, row.class, marking, theta, row.coefficient);
            }
        }
        Report::Umatrix(r) => {
            out.push_str("r,k,re,im,zPower\n");
            for (i, row) in r.matrix.entries.iter().enumerate() {
                for (k, e) in row.iter().enumerate() {
                    let _ = writeln!(out, "{},{},{:e},{:e},{}", i, k + 1, e.re, e.im, e.z_power);
                }
            }
        }
        Report::GwMirror(r) => {
            out.push_str("series,exponent,value\n");
            for c in &r.q_prime {
                let _ = writeln!(out, "qPrime,{},{}", c.exponent, c.value);
            }
            for c in &r.instanton_numbers {
                let _ = writeln!(out, "instanton,{},{}", c.exponent, c.value);
            }
        }
    }
    out
}

fn pretty(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Analyze(r) => {
            let _ = writeln!(out, "variables       {}", r.variables.join(" "));
            let _ = writeln!(out, "charges         {}", r.charges.join(" "));
            let _ = writeln!(out, "d               {}", r.d);
            let _ = writeln!(out, "invariant fac.  {}", r.invariant_factors.join(" "));
            let _ = writeln!(out, "|G_W|           {}", r.group_order);
            let _ = writeln!(out, "exponent        {}", r.exponent);
            let _ = writeln!(out, "milnor number   {}", r.milnor);
            let _ = writeln!(out, "central charge  {}", r.central_charge);
            for w in &r.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            for s in &r.sectors {
                let dim = s.invariant_dimension.map(|d| d.to_string()).unwrap_or_else(|| "?".into());
                let _ = writeln!(out, "J^{:<3} {:?}  N={}  iota={}  deg={}  dim={}", s.m, s.kind, s.fixed_dimension, s.iota, s.degree, dim);
            }
        }
        Report::Ifunction(r) => {
            for e in &r.entries {
                let _ = writeln!(out, "omega_{}  [{}^{}] L^{}  {}", e.k, if r.side == SideArg::Fjrw { "t" } else { "q" }, e.exponent, e.log_degree, e.value);
            }
        }
        Report::PfCheck(r) => {
            for x in &r.residuals {
                let _ = writeln!(out, "{:?} omega_{}: {} nonzero terms", x.side, x.k, x.nonzero_terms);
            }
            let _ = writeln!(out, "{}", if r.ok { "all residuals vanish" } else { "NONZERO RESIDUAL" });
        }
        Report::Invariants(r) => {
            for x in &r.invariants {
                let _ = writeln!(out, "{:?} n={:<3} {}", x.kind, x.n, x.value);
            }
            for c in r.golden.iter().filter(|c| !c.matches) {
                let _ = writeln!(out, "mismatch {} [{}]: expected {} got {}", c.table, c.key, c.expected, c.actual);
            }
            let checked = r.golden.len();
            let _ = writeln!(out, "{} reference values checked: {}", checked, if r.ok { "ok" } else { "FAILED" });
        }
        Report::Untwisted(r) => {
            let _ = writeln!(out, "{}", r.value);
        }
        Report::Grr(r) => {
            for row in &r.rows {
                let at = match (&row.marking, &row.theta) {
                    (Some(m), _) => format!(" i={m}"),
                    (_, Some(t)) => format!(" theta={t}"),
                    _ => String::new(),
                };
                let _ = writeln!(out, "h={} {}{}  {}", row.h, row.class, at, row.coefficient);
            }
        }
        Report::Umatrix(r) => {
            for row in &r.matrix.entries {
                let cells: Vec<String> = row.iter().map(|e| format!("({:+.6e}{:+.6e}i) z^{}", e.re, e.im, e.z_power)).collect();
                let _ = writeln!(out, "{}", cells.join("  "));
            }
            let _ = writeln!(out, "symplectic deviation   {:e}", r.symplectic_deviation);
            let _ = writeln!(out, "f deviation            {:e}", r.f_deviation);
            let _ = writeln!(out, "g deviation            {:e}", r.g_deviation);
            let _ = writeln!(out, "consistency deviation  {:e}", r.consistency_deviation);
            let _ = writeln!(out, "tolerance {:e}: {}", r.tolerance, if r.ok { "ok" } else { "FAILED" });
        }
        Report::GwMirror(r) => {
            for c in &r.q_prime {
                let _ = writeln!(out, "q' [q^{}] {}", c.exponent, c.value);
            }
            for c in &r.instanton_numbers {
                let _ = writeln!(out, "n_{} = {}", c.exponent, c.value);
            }
        }
    }
    out
}
