//! Command-line front end.

mod verify;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{parse_poly, rat, Coefficient, Rational};
use crate::constant_term::{ct_qhtree, ct_vsast_pq, ct_vsast_pq_odd, ct_vsast_pqc, ct_vsastriangle};
use crate::error::{Error, Result};
use crate::formulas::{det_binom, hmt_det_closed, lgv_count, sp_all_ones, two_enumeration, Parity, Partition, SpMethod};
use crate::objects::{
    enumerate_astrapezoids, enumerate_halved_patterns, enumerate_vsast, genfun_from_list, HalvedShape, NodeBudget,
    RowMode, WeightMonomial,
};
use crate::operators::{apply_operator, parse_operator_expr, qhmt_genfun, qhtree_genfun, vsast_pq_genfun_op};

pub use verify::{
    brute_equal_pairs, hmt_grid, pair_refinable, random_qasym_point, random_rational, random_series, random_strict,
    run_suite, strict_rows, tree_shapes, weak_rows, Fault, Record, Status, Suite, Summary, VerifyConfig,
    VerifyReport, DEFAULT_SEED, VSAST_INSTANCES,
};

/// Environment variable overriding the enumeration node budget.
pub const BUDGET_ENV: &str = "ASTRAP_NODE_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "astrap", version, about = "Exact enumeration and formula verification for halved monotone triangles and symmetric alternating sign trapezoids")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List objects with their weights.
    Enumerate(EnumerateArgs),
    /// Generating function by a chosen method.
    Genfun(GenfunArgs),
    /// Run a cross-verification suite.
    Verify(VerifyArgs),
    /// Evaluate a constant-term integrand.
    CtEval(CtEvalArgs),
    /// Evaluate a closed formula.
    Formula(FormulaArgs),
    /// Apply an operator expression to a polynomial.
    Apply(ApplyArgs),
}

#[derive(Args, Debug, Default)]
struct Instance {
    /// Number of rows (order).
    #[arg(long)]
    n: Option<usize>,
    /// Length of the bottom row of a trapezoid.
    #[arg(long)]
    l: Option<usize>,
    /// Upper bound on entries.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    /// Prescribed bottom row, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    bottom: Vec<i64>,
    /// Truncation vector, comma separated.
    #[arg(long, value_delimiter = ',')]
    s: Vec<usize>,
}

impl Instance {
    fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| usage("--n is required"))
    }

    fn l(&self) -> Result<usize> {
        self.l.ok_or_else(|| usage("--l is required"))
    }

    fn b(&self) -> Result<i64> {
        self.b.ok_or_else(|| usage("--b is required"))
    }

    fn s_or_zero(&self, n: usize) -> Vec<usize> {
        let mut s = self.s.clone();
        s.resize(n.div_ceil(2).max(s.len()), 0);
        s
    }
}

fn usage(msg: &str) -> Error {
    Error::Precondition(msg.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EnumerateKind {
    Trapezoid,
    Vsast,
    Hmt,
    Tree,
    Gt,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    kind: EnumerateKind,
    #[command(flatten)]
    inst: Instance,
    /// One JSON object per line (default).
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Weight table with columns instance,q_exp,p_exp,count.
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenfunKind {
    Hmt,
    Tree,
    Vsast,
    VsastOdd,
    Triangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Bruteforce,
    Operator,
    Ct,
}

#[derive(Args, Debug)]
struct GenfunArgs {
    kind: GenfunKind,
    #[arg(long)]
    method: Method,
    #[command(flatten)]
    inst: Instance,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: Suite,
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Print per-instance wall-clock times to stderr.
    #[arg(long)]
    timings: bool,
    #[arg(long, hide = true)]
    inject_fault: Option<Fault>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CtIntegrand {
    Qhtree,
    VsastPqc,
    VsastPq,
    VsastPqOdd,
    Vsastriangle,
}

#[derive(Args, Debug)]
struct CtEvalArgs {
    integrand: CtIntegrand,
    #[command(flatten)]
    inst: Instance,
    /// Labels of the 1-columns, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    c: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormulaName {
    DetBinom,
    HmtDet,
    TwoEnum,
    Lgv,
    Sp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SpMethodArg {
    Product,
    JacobiTrudi,
}

#[derive(Args, Debug)]
struct FormulaArgs {
    #[arg(long)]
    name: FormulaName,
    #[command(flatten)]
    inst: Instance,
    #[arg(long)]
    parity: Option<ParityArg>,
    /// Integer vector for the binomial determinants.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    k: Vec<i64>,
    /// Partition parts, weakly decreasing.
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<u64>,
    #[arg(long, default_value = "product")]
    method: SpMethodArg,
}

#[derive(Args, Debug)]
struct ApplyArgs {
    /// Operator expression, e.g. "(-Qfd_{k1})^2 * (Id + Qfd_{k2})".
    #[arg(long)]
    op: String,
    /// Polynomial, e.g. "k1^2 + Q*k2".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Evaluate the result at a point, e.g. "k1=1,k2=3".
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
}

/// Exit status for a library error: 3 for resource refusals, 1 for identity violations, 2 otherwise.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceBound { .. } | Error::SizeCap { .. } | Error::CapExceeded { .. } => 3,
        Error::Mismatch(_) | Error::NonInteger(_) => 1,
        _ => 2,
    }
}

fn node_budget() -> Result<NodeBudget> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(NodeBudget)
            .map_err(|_| usage(&format!("{BUDGET_ENV} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(NodeBudget::DEFAULT),
    }
}

/// Parses the process arguments, runs the command and returns its exit status.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8> {
    let budget = node_budget()?;
    match cli.command {
        Command::Enumerate(a) => enumerate(a, budget, out).map(|_| 0),
        Command::Genfun(a) => {
            let g = genfun(&a, budget)?;
            print_json(out, &g)?;
            Ok(0)
        }
        Command::Verify(a) => verify(a, budget, out),
        Command::CtEval(a) => {
            print_json(out, &ct_eval(&a)?)?;
            Ok(0)
        }
        Command::Formula(a) => {
            writeln!(out, "{}", formula(&a)?).map_err(io_err)?;
            Ok(0)
        }
        Command::Apply(a) => apply(&a, out).map(|_| 0),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Precondition(format!("output failed: {e}"))
}

fn print_json(out: &mut impl Write, v: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string(v).map_err(|e| Error::Precondition(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_err)
}

fn weight_table(out: &mut impl Write, instance: &str, weights: impl IntoIterator<Item = WeightMonomial>) -> Result<()> {
    let mut counts: BTreeMap<WeightMonomial, u64> = BTreeMap::new();
    for w in weights {
        *counts.entry(w).or_default() += 1;
    }
    writeln!(out, "instance,q_exp,p_exp,count").map_err(io_err)?;
    for (w, c) in counts {
        writeln!(out, "{instance},{},{},{c}", w.q_exp, w.p_exp).map_err(io_err)?;
    }
    Ok(())
}

fn enumerate(a: EnumerateArgs, budget: NodeBudget, out: &mut impl Write) -> Result<()> {
    let inst = &a.inst;
    match a.kind {
        EnumerateKind::Trapezoid => {
            if a.csv {
                return Err(usage("trapezoids carry no weight; use --json"));
            }
            for t in enumerate_astrapezoids(inst.n()?, inst.l()?, budget)? {
                print_json(out, &t)?;
            }
        }
        EnumerateKind::Vsast => {
            let (n, l) = (inst.n()?, inst.l()?);
            let list = enumerate_vsast(n, l, budget)?;
            if let Some(w) = &list.warning {
                eprintln!("warning: {w}");
            }
            if a.csv {
                weight_table(out, &format!("vsast n={n} l={l}"), list.items.iter().map(|(_, w)| *w))?;
            } else {
                for (t, w) in &list.items {
                    print_json(out, &json!({ "trapezoid": t, "weight": w }))?;
                }
            }
        }
        EnumerateKind::Hmt | EnumerateKind::Tree | EnumerateKind::Gt => {
            let n = inst.n()?;
            let b = inst.b()?;
            let (s, mode) = match a.kind {
                EnumerateKind::Tree => (inst.s_or_zero(n), RowMode::Strict),
                EnumerateKind::Gt => (vec![0; n.div_ceil(2)], RowMode::Weak),
                _ => (vec![0; n.div_ceil(2)], RowMode::Strict),
            };
            let shape = HalvedShape::new(n, &s)?;
            let items = enumerate_halved_patterns(&shape, b, &inst.bottom, mode, budget)?;
            if a.csv {
                let name = format!("{:?} n={n} b={b} k={:?} s={s:?}", a.kind, inst.bottom).to_lowercase();
                weight_table(out, &format!("\"{name}\""), items.iter().map(|(_, w)| *w))?;
            } else {
                for (p, w) in &items {
                    print_json(out, &json!({ "pattern": p, "weight": w }))?;
                }
            }
        }
    }
    Ok(())
}

fn brute_halved(n: usize, b: i64, k: &[i64], s: &[usize], budget: NodeBudget) -> Result<Coefficient> {
    let items = enumerate_halved_patterns(&HalvedShape::new(n, s)?, b, k, RowMode::Strict, budget)?;
    Ok(genfun_from_list(&items).substitute_p(&rat(1)))
}

fn genfun(a: &GenfunArgs, budget: NodeBudget) -> Result<Coefficient> {
    let inst = &a.inst;
    let n = inst.n()?;
    match (a.kind, a.method) {
        (GenfunKind::Hmt | GenfunKind::Tree, method) => {
            let b = inst.b()?;
            let s = if a.kind == GenfunKind::Tree { inst.s_or_zero(n) } else { vec![0; n.div_ceil(2)] };
            let k = &inst.bottom;
            match method {
                Method::Bruteforce => brute_halved(n, b, k, &s, budget),
                Method::Operator if a.kind == GenfunKind::Hmt => qhmt_genfun(n, b, k),
                Method::Operator => qhtree_genfun(n, b, k, &s),
                Method::Ct => ct_qhtree(n, b, k, &s),
            }
        }
        (GenfunKind::Vsast, method) => {
            let l = inst.l()?;
            match method {
                Method::Bruteforce => Ok(genfun_from_list(&enumerate_vsast(n, l, budget)?.items)),
                Method::Operator => vsast_pq_genfun_op(n, l),
                Method::Ct => ct_vsast_pq(n, l),
            }
        }
        (GenfunKind::VsastOdd, method) => {
            if n % 2 == 0 {
                return Err(Error::InvalidParity { n, l: 1 });
            }
            match method {
                Method::Bruteforce => Ok(genfun_from_list(&enumerate_vsast(n, 1, budget)?.items)),
                // each (n, 1)-trapezoid reduces to an (n-1, 3)-trapezoid in exactly two ways
                Method::Operator if n == 1 => Ok(Coefficient::from_int(2)),
                Method::Operator => Ok(vsast_pq_genfun_op(n - 1, 3)?.scale(&rat(2))),
                Method::Ct => ct_vsast_pq_odd(n),
            }
        }
        (GenfunKind::Triangle, method) => {
            if n % 2 == 0 {
                return Err(Error::InvalidParity { n, l: 1 });
            }
            match method {
                Method::Bruteforce | Method::Operator if n == 1 => Ok(Coefficient::one()),
                Method::Bruteforce => Ok(genfun_from_list(&enumerate_vsast(n - 1, 3, budget)?.items)),
                Method::Operator => vsast_pq_genfun_op(n - 1, 3),
                Method::Ct => ct_vsastriangle(n),
            }
        }
    }
}

fn verify(a: VerifyArgs, budget: NodeBudget, out: &mut impl Write) -> Result<u8> {
    let cfg = VerifyConfig { max_n: a.max_n, seed: a.seed, budget, fault: a.inject_fault };
    let report = run_suite(a.suite, &cfg);
    if a.timings {
        for r in &report.records {
            eprintln!("{:>10.3} ms  {}", r.elapsed.as_secs_f64() * 1e3, r.instance);
        }
    }
    let text = serde_json::to_string_pretty(&report).map_err(|e| Error::Precondition(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_err)?;
    Ok(report.exit_code())
}

fn ct_eval(a: &CtEvalArgs) -> Result<Coefficient> {
    let inst = &a.inst;
    let n = inst.n()?;
    match a.integrand {
        CtIntegrand::Qhtree => ct_qhtree(n, inst.b()?, &inst.bottom, &inst.s_or_zero(n)),
        CtIntegrand::VsastPqc => ct_vsast_pqc(n, inst.l()?, &a.c),
        CtIntegrand::VsastPq => ct_vsast_pq(n, inst.l()?),
        CtIntegrand::VsastPqOdd => ct_vsast_pq_odd(n),
        CtIntegrand::Vsastriangle => ct_vsastriangle(n),
    }
}

fn rational_text(r: &Rational) -> String {
    r.to_string()
}

fn formula(a: &FormulaArgs) -> Result<String> {
    let inst = &a.inst;
    let parity = || match a.parity {
        Some(ParityArg::Even) => Ok(Parity::Even),
        Some(ParityArg::Odd) => Ok(Parity::Odd),
        None => Err(usage("--parity is required")),
    };
    Ok(match a.name {
        FormulaName::DetBinom => rational_text(&det_binom(parity()?, &a.k)?),
        FormulaName::HmtDet => rational_text(&hmt_det_closed(inst.n()?, inst.b()?, &inst.bottom)?),
        FormulaName::TwoEnum => two_enumeration(inst.n()?, inst.b()?, &inst.bottom)?.to_string(),
        FormulaName::Lgv => lgv_count(inst.n()?, inst.b()?, &inst.bottom)?.to_string(),
        FormulaName::Sp => {
            let method = match a.method {
                SpMethodArg::Product => SpMethod::Product,
                SpMethodArg::JacobiTrudi => SpMethod::JacobiTrudi,
            };
            sp_all_ones(&Partition::new(a.lambda.clone())?, parity()?, method)?.to_string()
        }
    })
}

fn parse_point(text: &str) -> Result<BTreeMap<String, i64>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (name, value) = pair.split_once('=').ok_or_else(|| usage(&format!("expected name=value, got `{pair}`")))?;
            let v = value.trim().parse().map_err(|_| usage(&format!("`{value}` is not an integer")))?;
            Ok((name.trim().to_string(), v))
        })
        .collect()
}

fn apply(a: &ApplyArgs, out: &mut impl Write) -> Result<()> {
    let op = parse_operator_expr(&a.op)?;
    let mut poly = parse_poly(&a.poly)?;
    let extra: Vec<String> = op.variables().into_iter().filter(|v| !poly.vars().contains(v)).collect();
    if !extra.is_empty() {
        let mut vars = poly.vars().to_vec();
        vars.extend(extra);
        vars.sort();
        poly = poly.embed(&vars)?;
    }
    let result = apply_operator(&op, &poly)?;
    let value = match &a.at {
        Some(text) => Some(result.eval(&parse_point(text)?)?),
        None => None,
    };
    let mut obj = json!({ "vars": result.vars(), "result": result.to_string() });
    if let Some(v) = value {
        obj["value"] = serde_json::to_value(&v).map_err(|e| Error::Precondition(e.to_string()))?;
    }
    print_json(out, &obj)
}
