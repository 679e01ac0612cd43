//! Command-line front end.
//!
//! Exit codes: 0 success (or every check passed), 1 mathematical failure
//! (singular, inconsistent, non-integral, failed check), 2 input error,
//! 3 budget exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::census::{
    census, check_full_rank_regime, verify_counting_identity_cached, CensusCache, CensusError, CensusOptions,
    DEFAULT_CENSUS_BUDGET,
};
use crate::closed_forms::{
    amds_distribution, extremal_distribution, extremal_system, mds_distribution, nmds_distribution, AmdsInput,
    ClosedFormError,
};
use crate::code::{
    brute_weight_distribution_with, macwilliams_transform, parameters_from_distribution, CodeError,
    CodeParameters, EnumerationOptions, LinearCode, WeightDistribution, DEFAULT_ENUMERATION_BUDGET,
};
use crate::io::{
    census_to_json, distribution_to_json, format_code, knowns_from_json, knowns_to_json, params_to_json, parse_code,
    ParseError,
};
use crate::matrix::{solve_exact, MatrixError};
use crate::moments::{
    build_pascal_system, build_pless_system, cross_check_systems, rank_relationship_report, solve_with_knowns,
    trivial_knowns, verify_pless_full, MomentSystem, SolveError,
};
use crate::specimens;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Identity,
    Pless,
    Regime,
    Crosscheck,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemChoice {
    Pascal,
    Pless,
}

#[derive(Parser, Debug)]
#[command(name = "codeweights", version, about = "Exact weight distributions of linear codes")]
pub struct Cli {
    /// Maximum number of codewords one enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Maximum number of column subsets one census may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_CENSUS_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub census_budget: u64,
    /// Worker threads for enumeration and census (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Seed for randomized corpora.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of stdout (a directory for `fixtures`).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Parameters given either as a code file or explicitly.
#[derive(Args, Debug, Clone)]
pub struct ParamSource {
    /// Code file from which parameters are derived by enumeration.
    #[arg(long, conflicts_with_all = ["n", "k", "q", "d", "d_perp"])]
    pub code: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub d_perp: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct KnownsArgs {
    /// Known weights as inline JSON (`{"4":"27"}`) or a path to a JSON file.
    #[arg(long)]
    pub knowns: String,
    /// Also fix A_0 = 1 and A_i = 0 for 0 < i < d.
    #[arg(long)]
    pub with_trivial: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exhaustive weight distribution and parameters of a code file.
    Enumerate { file: PathBuf },
    /// Print the dual code as a code file.
    Dual { file: PathBuf },
    /// Rank census of the parity-check matrix.
    Census {
        file: PathBuf,
        /// Single column count; all of 1..=n when omitted.
        #[arg(long)]
        nu: Option<usize>,
    },
    /// Check the identities on a code.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
        /// Overwrite A_i before checking, as `i=value` (repeatable).
        #[arg(long, value_parser = parse_corruption)]
        corrupt: Vec<(usize, BigInt)>,
    },
    /// Complete a distribution from known entries.
    Solve {
        #[command(flatten)]
        params: ParamSource,
        #[command(flatten)]
        knowns: KnownsArgs,
        #[arg(long, value_enum, default_value_t = SystemChoice::Pascal)]
        system: SystemChoice,
    },
    /// Solve both moment systems and compare.
    Crosscheck {
        #[command(flatten)]
        params: ParamSource,
        #[command(flatten)]
        knowns: KnownsArgs,
    },
    /// MDS distribution.
    Mds { n: usize, k: usize, q: u32 },
    /// Near-MDS distribution from A_{n-k}.
    Nmds { n: usize, k: usize, q: u32, a_d: BigInt },
    /// Almost-MDS distribution from comma-separated seeds A_{n-k}, ..., A_{n-k+sigma-2}.
    Amds {
        n: usize,
        k: usize,
        q: u32,
        sigma: usize,
        #[arg(value_delimiter = ',')]
        seeds: Vec<BigInt>,
    },
    /// Extremal doubly-even self-dual distribution, or one chosen relation system.
    Extremal {
        m: usize,
        /// Relation indices to use instead of the default selection.
        #[arg(long, value_delimiter = ',')]
        nu: Option<Vec<usize>>,
        /// Add the symmetry rows (only with --nu).
        #[arg(long, requires = "nu")]
        symmetry: bool,
    },
    /// Ranks of the two moment systems, alone and stacked.
    PlessReport {
        #[command(flatten)]
        params: ParamSource,
    },
    /// Regenerate the golden fixture files into --output.
    Fixtures,
}

fn parse_corruption(s: &str) -> Result<(usize, BigInt), String> {
    let (i, v) = s.split_once('=').ok_or("expected i=value")?;
    let i = i.trim().parse().map_err(|_| format!("bad index {i:?}"))?;
    let v = v.trim().parse().map_err(|_| format!("bad value {v:?}"))?;
    Ok((i, v))
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    Math(String),
    Input(String),
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Math(m) | CliError::Input(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            CodeError::NonIntegralResult { .. } | CodeError::InvalidDistribution(_) => CliError::Math(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::TooFewKnowns { .. } | SolveError::UnknownIndex(_) | SolveError::NegativeKnown { .. } => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<ClosedFormError> for CliError {
    fn from(e: ClosedFormError) -> Self {
        match e {
            ClosedFormError::InvalidParameters(_) | ClosedFormError::RangeViolation { .. } => {
                CliError::Input(e.to_string())
            }
            ClosedFormError::Solve(s) => s.into(),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Command output: a JSON document plus optional tabular rendering.
struct Report {
    json: Value,
    table: Option<Vec<Vec<String>>>,
    /// Plain text emitted verbatim regardless of format.
    text: Option<String>,
    success: bool,
}

impl Report {
    fn json(json: Value) -> Self {
        Report {
            json,
            table: None,
            text: None,
            success: true,
        }
    }

    fn distribution(a: &WeightDistribution, extra: Option<Value>) -> Self {
        let mut doc = distribution_to_json(a);
        if let (Some(Value::Object(extra)), Value::Object(obj)) = (extra, &mut doc) {
            obj.extend(extra);
        }
        let mut rows = vec![vec!["weight".to_string(), "count".to_string()]];
        rows.extend(a.counts().iter().enumerate().map(|(i, c)| vec![i.to_string(), c.to_string()]));
        Report {
            json: doc,
            table: Some(rows),
            text: None,
            success: true,
        }
    }

    fn render(&self, format: OutputFormat) -> String {
        if let Some(text) = &self.text {
            return text.clone();
        }
        match (format, &self.table) {
            (OutputFormat::Csv, Some(rows)) => {
                rows.iter().map(|r| r.join(",")).collect::<Vec<_>>().join("\n") + "\n"
            }
            (OutputFormat::Table, Some(rows)) => {
                let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
                let widths: Vec<usize> = (0..cols)
                    .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
                    .collect();
                let mut out = String::new();
                for r in rows {
                    let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
                    out.push_str(cells.join("  ").trim_end());
                    out.push('\n');
                }
                out
            }
            _ => serde_json::to_string_pretty(&self.json).expect("serializable") + "\n",
        }
    }
}

struct Context {
    enumeration: EnumerationOptions,
    census: CensusOptions,
}

fn read_code(path: &Path) -> Result<LinearCode, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_code(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_knowns(args: &KnownsArgs, d: usize) -> Result<BTreeMap<usize, BigInt>, CliError> {
    let text = if args.knowns.trim_start().starts_with('{') {
        args.knowns.clone()
    } else {
        fs::read_to_string(&args.knowns).map_err(|e| CliError::Input(format!("{}: {e}", args.knowns)))?
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("knowns: {e}")))?;
    let mut knowns = knowns_from_json(&value)?;
    if args.with_trivial {
        for (i, v) in trivial_knowns(d) {
            if let Some(existing) = knowns.get(&i) {
                if *existing != v {
                    return Err(CliError::Input(format!("known A_{i} = {existing} contradicts d = {d}")));
                }
            }
            knowns.insert(i, v);
        }
    }
    Ok(knowns)
}

fn resolve_params(src: &ParamSource, ctx: &Context) -> Result<CodeParameters, CliError> {
    if let Some(path) = &src.code {
        let code = read_code(path)?;
        let a = brute_weight_distribution_with(&code, &ctx.enumeration)?;
        return Ok(parameters_from_distribution(&a)?);
    }
    match (src.n, src.k, src.q, src.d, src.d_perp) {
        (Some(n), Some(k), Some(q), Some(d), Some(d_perp)) => Ok(CodeParameters::new(n, k, q, d, d_perp)?),
        _ => Err(CliError::Input(
            "give either --code FILE or all of --n --k --q --d --d-perp".into(),
        )),
    }
}

fn cmd_enumerate(ctx: &Context, file: &Path) -> Result<Report, CliError> {
    let code = read_code(file)?;
    let a = brute_weight_distribution_with(&code, &ctx.enumeration)?;
    let extra = if code.k() > 0 {
        let p = parameters_from_distribution(&a)?;
        json!({"d": p.d, "d_perp": p.d_perp, "sigma": p.sigma()})
    } else {
        json!({})
    };
    Ok(Report::distribution(&a, Some(extra)))
}

fn cmd_census(ctx: &Context, file: &Path, nu: Option<usize>) -> Result<Report, CliError> {
    let code = read_code(file)?;
    let h = code.parity_check();
    let nus: Vec<usize> = match nu {
        Some(nu) => vec![nu],
        None => (1..=code.n()).collect(),
    };
    let mut docs = Vec::new();
    let mut rows = vec![vec!["nu".to_string(), "rank".to_string(), "count".to_string()]];
    for nu in nus {
        let c = census(h, nu, &ctx.census)?;
        for (r, count) in &c.counts {
            rows.push(vec![nu.to_string(), r.to_string(), count.to_string()]);
        }
        docs.push(census_to_json(&c));
    }
    let json = if docs.len() == 1 { docs.pop().expect("one census") } else { Value::Array(docs) };
    Ok(Report {
        json,
        table: Some(rows),
        text: None,
        success: true,
    })
}

struct CheckLine {
    check: &'static str,
    nu: Option<usize>,
    lhs: String,
    rhs: String,
    pass: bool,
}

fn cmd_verify(
    ctx: &Context,
    file: &Path,
    which: Check,
    corrupt: &[(usize, BigInt)],
) -> Result<Report, CliError> {
    let code = read_code(file)?;
    if code.k() == 0 {
        return Err(CodeError::ZeroCode.into());
    }
    let n = code.n();
    let truth = brute_weight_distribution_with(&code, &ctx.enumeration)?;
    let params = parameters_from_distribution(&truth)?;
    let mut counts = truth.counts().to_vec();
    for (i, v) in corrupt {
        if *i > n {
            return Err(CliError::Input(format!("corrupt index {i} exceeds n = {n}")));
        }
        counts[*i] = v.clone();
    }
    let a = WeightDistribution::new(n, code.k(), code.q(), counts)?;
    let enabled = |c: Check| which == Check::All || which == c;
    let mut lines = Vec::new();

    if enabled(Check::Identity) {
        let mut cache = CensusCache::new(code.parity_check(), ctx.census);
        for nu in 1..=n {
            let chk = verify_counting_identity_cached(&mut cache, code.q(), &a, nu)?;
            lines.push(CheckLine {
                check: "identity",
                nu: Some(nu),
                lhs: chk.lhs.to_string(),
                rhs: chk.rhs.to_string(),
                pass: chk.holds,
            });
        }
    }
    if enabled(Check::Pless) {
        let b = match brute_weight_distribution_with(&code.dual(), &ctx.enumeration) {
            Ok(b) => b,
            Err(CodeError::BudgetExceeded { .. }) => macwilliams_transform(&truth)?,
            Err(e) => return Err(e.into()),
        };
        for nu in 0..=n {
            let chk = verify_pless_full(&a, &b, nu);
            lines.push(CheckLine {
                check: "pless",
                nu: Some(nu),
                lhs: chk.lhs.to_string(),
                rhs: chk.rhs.to_string(),
                pass: chk.holds,
            });
        }
    }
    if enabled(Check::Regime) {
        for nu in n + 1 - params.d_perp..=n {
            let pass = check_full_rank_regime(&code, nu, params.d_perp, &ctx.census)?;
            lines.push(CheckLine {
                check: "regime",
                nu: Some(nu),
                lhs: format!("rank {}", n - code.k()),
                rhs: "all subsets".into(),
                pass,
            });
        }
    }
    if enabled(Check::Crosscheck) {
        let mut knowns = trivial_knowns(params.d);
        for i in params.d..params.d + params.sigma().saturating_sub(1) {
            knowns.insert(i, a.get(i).clone());
        }
        let (desc, pass) = match cross_check_systems(&params, &knowns) {
            Ok(cc) => (
                format!("agree={}", cc.agree),
                cc.agree && cc.pascal == a && cc.pless == a,
            ),
            Err(e) => (e.to_string(), false),
        };
        lines.push(CheckLine {
            check: "crosscheck",
            nu: None,
            lhs: desc,
            rhs: "enumerated".into(),
            pass,
        });
    }

    let success = lines.iter().all(|l| l.pass);
    let json = json!({
        "params": params_to_json(&params),
        "all_pass": success,
        "checks": lines.iter().map(|l| json!({
            "check": l.check,
            "nu": l.nu,
            "lhs": l.lhs,
            "rhs": l.rhs,
            "pass": l.pass,
        })).collect::<Vec<_>>(),
    });
    let mut rows = vec![vec!["check".into(), "nu".into(), "lhs".into(), "rhs".into(), "result".into()]];
    for l in &lines {
        rows.push(vec![
            l.check.to_string(),
            l.nu.map_or("-".into(), |v| v.to_string()),
            l.lhs.clone(),
            l.rhs.clone(),
            if l.pass { "PASS" } else { "FAIL" }.to_string(),
        ]);
    }
    Ok(Report {
        json,
        table: Some(rows),
        text: None,
        success,
    })
}

fn system_for(params: &CodeParameters, choice: SystemChoice) -> MomentSystem {
    match choice {
        SystemChoice::Pascal => build_pascal_system(params),
        SystemChoice::Pless => build_pless_system(params),
    }
}

fn cmd_extremal(m: usize, nu: Option<&[usize]>, symmetry: bool) -> Result<Report, CliError> {
    let Some(nu) = nu else {
        let a = extremal_distribution(m)?;
        return Ok(Report::distribution(&a, Some(json!({"m": m}))));
    };
    let system = extremal_system(m, nu, symmetry)?;
    let labels: Vec<String> = system.row_labels.iter().map(ToString::to_string).collect();
    let base = json!({
        "m": m,
        "nu": nu,
        "symmetry": symmetry,
        "rows": labels,
        "unknowns": system.col_labels,
        "rank": system.matrix.rank(),
    });
    let outcome = if system.rows() == system.col_labels.len() {
        solve_exact(&system.matrix, &system.rhs)
    } else {
        system
            .solve(&BTreeMap::new())
            .map(|v| v.into_values().collect())
            .map_err(|e| match e {
                SolveError::SingularReducedSystem { rank, kernel, .. } => MatrixError::Singular { rank, kernel },
                other => MatrixError::DimensionMismatch(other.to_string()),
            })
    };
    let mut doc = base;
    let obj = doc.as_object_mut().expect("object");
    match outcome {
        Ok(x) => {
            let solution: serde_json::Map<String, Value> = system
                .col_labels
                .iter()
                .zip(&x)
                .map(|(w, v)| (w.to_string(), Value::String(v.to_string())))
                .collect();
            obj.insert("singular".into(), Value::Bool(false));
            obj.insert("solution".into(), Value::Object(solution));
            Ok(Report::json(doc))
        }
        Err(MatrixError::Singular { rank, kernel }) => {
            obj.insert("singular".into(), Value::Bool(true));
            obj.insert("rank".into(), json!(rank));
            obj.insert(
                "kernel".into(),
                json!(kernel.iter().map(ToString::to_string).collect::<Vec<_>>()),
            );
            let mut r = Report::json(doc);
            r.success = false;
            Ok(r)
        }
        Err(e) => Err(CliError::Math(e.to_string())),
    }
}

fn system_json(s: &MomentSystem) -> Value {
    json!({
        "kind": s.kind.to_string(),
        "rows": s.row_labels.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "unknowns": s.col_labels,
        "matrix": (0..s.rows()).map(|i| s.matrix.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "rhs": s.rhs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "rank": s.matrix.rank(),
    })
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::write(dir.join(name), contents).map_err(|e| CliError::Input(format!("{}: {e}", dir.join(name).display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Writes every golden file the test suite compares against.
pub fn write_fixtures(dir: &Path, ctx_budget: u64) -> Result<Vec<String>, CliError> {
    fs::create_dir_all(dir)?;
    let opts = EnumerationOptions::with_budget(ctx_budget);
    let mut written = Vec::new();
    for (name, code) in [("c1", specimens::c1()), ("c2", specimens::c2())] {
        write_file(dir, &format!("{name}.code"), &format_code(&code))?;
        let a = brute_weight_distribution_with(&code, &opts)?;
        let p = parameters_from_distribution(&a)?;
        let mut doc = distribution_to_json(&a);
        doc["d"] = json!(p.d);
        doc["d_perp"] = json!(p.d_perp);
        doc["sigma"] = json!(p.sigma());
        write_file(dir, &format!("{name}.json"), &pretty(&doc))?;
        written.extend([format!("{name}.code"), format!("{name}.json")]);

        let mut knowns = trivial_knowns(p.d);
        knowns.insert(p.d, a.get(p.d).clone());
        write_file(dir, &format!("{name}_knowns.json"), &pretty(&knowns_to_json(&knowns)))?;
        written.push(format!("{name}_knowns.json"));
    }

    for (name, nus) in [("extremal_22_24", [22usize, 24]), ("extremal_23_24", [23, 24])] {
        let s = extremal_system(1, &nus, true)?;
        let mut doc = system_json(&s);
        match solve_exact(&s.matrix, &s.rhs) {
            Ok(x) => doc["solution"] = json!(x.iter().map(ToString::to_string).collect::<Vec<_>>()),
            Err(MatrixError::Singular { rank, .. }) => {
                doc["singular"] = json!(true);
                doc["singular_rank"] = json!(rank);
            }
            Err(e) => return Err(CliError::Math(e.to_string())),
        }
        write_file(dir, &format!("{name}.json"), &pretty(&doc))?;
        written.push(format!("{name}.json"));
    }

    let mut mds = Vec::new();
    for q in [4u32, 5, 7, 8, 9] {
        for n in 1..=q as usize {
            for k in 1..=n {
                mds.push(distribution_to_json(&mds_distribution(n, k, q)?));
            }
        }
    }
    write_file(dir, "mds_table.json", &pretty(&Value::Array(mds)))?;
    written.push("mds_table.json".into());

    let nmds: Vec<Value> = [27, 30]
        .iter()
        .map(|&a| nmds_distribution(8, 4, 4, &BigInt::from(a)).map(|d| distribution_to_json(&d)))
        .collect::<Result<_, _>>()?;
    write_file(dir, "nmds_table.json", &pretty(&Value::Array(nmds)))?;
    written.push("nmds_table.json".into());

    let extremal: Vec<Value> = (1..=5)
        .map(|m| extremal_distribution(m).map(|d| distribution_to_json(&d)))
        .collect::<Result<_, _>>()?;
    write_file(dir, "extremal.json", &pretty(&Value::Array(extremal)))?;
    written.push("extremal.json".into());
    Ok(written)
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let ctx = Context {
        enumeration: EnumerationOptions {
            budget: cli.budget,
            workers: cli.workers,
        },
        census: CensusOptions {
            budget: cli.census_budget,
            workers: cli.workers,
        },
    };
    match &cli.command {
        Command::Enumerate { file } => cmd_enumerate(&ctx, file),
        Command::Dual { file } => {
            let code = read_code(file)?;
            let text = format_code(&code.dual());
            let mut r = Report::json(json!({"code": text}));
            r.text = Some(text);
            Ok(r)
        }
        Command::Census { file, nu } => cmd_census(&ctx, file, *nu),
        Command::Verify { file, check, corrupt } => cmd_verify(&ctx, file, *check, corrupt),
        Command::Solve { params, knowns, system } => {
            let p = resolve_params(params, &ctx)?;
            let knowns = read_knowns(knowns, p.d)?;
            let a = solve_with_knowns(&system_for(&p, *system), &knowns)?;
            Ok(Report::distribution(&a, None))
        }
        Command::Crosscheck { params, knowns } => {
            let p = resolve_params(params, &ctx)?;
            let knowns = read_knowns(knowns, p.d)?;
            let cc = cross_check_systems(&p, &knowns)?;
            let mut rows = vec![vec!["weight".to_string(), "pascal".into(), "pless".into()]];
            for i in 0..=p.n {
                rows.push(vec![i.to_string(), cc.pascal.get(i).to_string(), cc.pless.get(i).to_string()]);
            }
            Ok(Report {
                json: json!({
                    "pascal": distribution_to_json(&cc.pascal),
                    "pless": distribution_to_json(&cc.pless),
                    "agree": cc.agree,
                }),
                table: Some(rows),
                text: None,
                success: cc.agree,
            })
        }
        Command::Mds { n, k, q } => Ok(Report::distribution(&mds_distribution(*n, *k, *q)?, None)),
        Command::Nmds { n, k, q, a_d } => {
            let a = nmds_distribution(*n, *k, *q, a_d)?;
            let negative = a.negative_entries();
            let mut r = Report::distribution(&a, Some(json!({"negative_entries": negative})));
            r.success = negative.is_empty();
            Ok(r)
        }
        Command::Amds { n, k, q, sigma, seeds } => {
            let input = AmdsInput {
                n: *n,
                k: *k,
                q: *q,
                sigma: *sigma,
                seed_weights: seeds.clone(),
            };
            Ok(Report::distribution(&amds_distribution(&input)?, None))
        }
        Command::Extremal { m, nu, symmetry } => cmd_extremal(*m, nu.as_deref(), *symmetry),
        Command::PlessReport { params } => {
            let p = resolve_params(params, &ctx)?;
            let rep = rank_relationship_report(&p);
            let rows = vec![
                vec!["system".into(), "rows".into(), "rank".into()],
                vec!["pascal".into(), rep.pascal_rows.to_string(), rep.pascal_rank.to_string()],
                vec!["pless".into(), rep.pless_rows.to_string(), rep.pless_rank.to_string()],
                vec!["joint".into(), (rep.pascal_rows + rep.pless_rows).to_string(), rep.joint_rank.to_string()],
                vec![
                    "joint augmented".into(),
                    (rep.pascal_rows + rep.pless_rows).to_string(),
                    rep.joint_augmented_rank.to_string(),
                ],
            ];
            Ok(Report {
                json: json!({
                    "params": params_to_json(&p),
                    "pascal_rows": rep.pascal_rows,
                    "pless_rows": rep.pless_rows,
                    "pascal_rank": rep.pascal_rank,
                    "pless_rank": rep.pless_rank,
                    "joint_rank": rep.joint_rank,
                    "joint_augmented_rank": rep.joint_augmented_rank,
                }),
                table: Some(rows),
                text: None,
                success: true,
            })
        }
        Command::Fixtures => {
            let dir = cli
                .output
                .as_ref()
                .ok_or_else(|| CliError::Input("fixtures needs --output DIR".into()))?;
            let written = write_fixtures(dir, cli.budget)?;
            let mut r = Report::json(json!({"written": written}));
            r.text = Some(written.join("\n") + "\n");
            Ok(r)
        }
    }
}

/// Parses `args` and runs one command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let rendered = report.render(cli.format);
            let write_result = match (&cli.output, &cli.command) {
                (Some(path), cmd) if !matches!(cmd, Command::Fixtures) => fs::write(path, rendered),
                _ => out.write_all(rendered.as_bytes()),
            };
            if let Err(e) = write_result {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if report.success {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}
