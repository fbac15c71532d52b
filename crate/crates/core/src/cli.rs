//! Command-line frontend: `search`, `verify`, `codes` and `hws`.
//!
//! Every run emits JSON-lines. The first line is the run configuration, the
//! rest are results in deterministic order. `--out` always receives
//! JSON-lines; `--format` picks the view printed on stdout.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::codes::{self, Codeword};
use crate::digits;
use crate::error::{Error, Result};
use crate::families::{self, Classification, FamilyKind};
use crate::gf::{FieldBuilder, FieldCtx, FieldElem, DEFAULT_TABLE_CAP};
use crate::hws::{self, HwsReport};
use crate::linpoly::{self, LinearizedPoly, SearchMode, DEFAULT_SEARCH_BUDGET};
use crate::presemifield::{GanleyResult, ZeroDivisor};

#[derive(Parser, Debug)]
#[command(name = "semiswitch", version, about = "Switchings of finite-field multiplication into presemifields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search coefficient space for L with Tr(L(x)/x) ≠ 0 on all x ≠ 0.
    Search(SearchArgs),
    /// Classify each L from a JSON-lines file.
    Verify(FileArgs),
    /// Dimension and full-weight words of the trace code.
    Codes(CodesArgs),
    /// Genus and point-count verdicts for each L from a file.
    Hws(FileArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct FieldOpts {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Coefficients c_0,…,c_{mn} of the defining polynomial over F_p.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    /// Largest field order for which tables may be built.
    #[arg(long, env = "SEMISWITCH_TABLE_CAP", default_value_t = DEFAULT_TABLE_CAP)]
    pub table_cap: u64,
}

#[derive(Args, Debug, Clone)]
pub struct ModeOpts {
    #[arg(long, conflicts_with = "random")]
    pub exhaustive: bool,
    #[arg(long)]
    pub random: bool,
    #[arg(long, env = "SEMISWITCH_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Candidate cap (exhaustive) or sample count (random); accepts `10^6`.
    #[arg(long, env = "SEMISWITCH_BUDGET", value_parser = parse_budget, default_value_t = DEFAULT_SEARCH_BUDGET)]
    pub budget: u64,
}

impl ModeOpts {
    fn mode(&self) -> SearchMode {
        if self.random {
            SearchMode::Random { seed: self.seed }
        } else {
            SearchMode::Exhaustive
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputOpts {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    /// Coefficient indices allowed to be nonzero: `0,2` or a bit mask like `0b101`.
    #[arg(long, value_parser = parse_mask)]
    pub mask: Option<Mask>,
    #[command(flatten)]
    pub mode: ModeOpts,
    /// Skip presemifield classification of the results.
    #[arg(long)]
    pub brief: bool,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct FileArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    /// JSON-lines file of records with a `coeffs` array (discrete logs, null for 0).
    #[arg(long)]
    pub l_file: PathBuf,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct CodesArgs {
    #[command(flatten)]
    pub field: FieldOpts,
    #[command(flatten)]
    pub mode: ModeOpts,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mask(pub Vec<usize>);

fn parse_mask(s: &str) -> std::result::Result<Mask, String> {
    let s = s.trim();
    if let Some(bits) = s.strip_prefix("0b") {
        let v = u64::from_str_radix(bits, 2).map_err(|e| e.to_string())?;
        return Ok(Mask((0..64).filter(|i| v >> i & 1 == 1).collect()));
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<_, _>>()
        .map(Mask)
}

/// Accepts `1000000`, `10^6` and `2^24`.
pub fn parse_budget(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim().replace('_', "");
    let parsed = match s.split_once('^') {
        Some((b, e)) => {
            let b: u64 = b.parse().map_err(|_| format!("bad base in {s:?}"))?;
            let e: u32 = e.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            b.checked_pow(e)
        }
        None => s.parse().ok(),
    };
    parsed.ok_or_else(|| format!("cannot read budget {s:?}"))
}

/// Field parameters as recorded in outputs and accepted in input files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u32,
    #[serde(default = "one")]
    pub m: u32,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

impl FieldParams {
    fn build(&self, cap: u64) -> Result<FieldCtx> {
        let mut b = FieldBuilder::new(self.p, self.m, self.n).cap(cap);
        if let Some(f) = &self.modulus {
            b = b.modulus(f.clone());
        }
        b.build()
    }
}

/// Everything needed to reproduce a run; written as the first output line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub field: FieldParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<SearchMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mask: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    pub table_cap: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

#[derive(Debug, Deserialize)]
struct LRecord {
    #[serde(default)]
    field: Option<FieldParams>,
    #[serde(default)]
    coeffs: Option<Vec<FieldElem>>,
}

fn resolve_field(opts: &FieldOpts, from_file: Option<&FieldParams>) -> Result<FieldParams> {
    match (opts.p, opts.n) {
        (Some(p), Some(n)) => Ok(FieldParams { p, m: opts.m.unwrap_or(1), n, modulus: opts.modulus.clone() }),
        (None, None) if opts.m.is_none() && opts.modulus.is_none() => from_file
            .cloned()
            .ok_or_else(|| Error::InvalidInput("field not given: pass --p and --n".into())),
        _ => Err(Error::InvalidInput("--p and --n must be given together".into())),
    }
}

fn read_l_file(path: &Path) -> Result<(Option<FieldParams>, Vec<Vec<FieldElem>>)> {
    let file = fs::File::open(path)?;
    let mut field = None;
    let mut polys = Vec::new();
    for (lineno, line) in io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: LRecord = serde_json::from_str(&line)
            .map_err(|e| Error::InvalidInput(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        if field.is_none() {
            field = rec.field;
        }
        if let Some(c) = rec.coeffs {
            polys.push(c);
        }
    }
    Ok((field, polys))
}

fn header(config: &RunConfig) -> Value {
    json!({ "kind": "run_config", "config": config })
}

/// Collected output of one command.
struct Report {
    lines: Vec<Value>,
    table: Vec<String>,
    csv: Vec<String>,
}

impl Report {
    fn new(config: &RunConfig) -> Self {
        Report { lines: vec![header(config)], table: Vec::new(), csv: Vec::new() }
    }

    fn jsonl(&self) -> String {
        let mut s = String::new();
        for v in &self.lines {
            s.push_str(&serde_json::to_string(v).expect("json values serialize"));
            s.push('\n');
        }
        s
    }

    fn emit(&self, output: &OutputOpts, stdout: &mut dyn Write) -> Result<()> {
        if let Some(path) = &output.out {
            fs::write(path, self.jsonl())?;
        }
        match output.format {
            Format::Json => stdout.write_all(self.jsonl().as_bytes())?,
            Format::Table => {
                for row in &self.table {
                    writeln!(stdout, "{row}")?;
                }
            }
            Format::Csv => {
                for row in &self.csv {
                    writeln!(stdout, "{row}")?;
                }
            }
        }
        Ok(())
    }
}

fn coeff_cells(l: &[FieldElem]) -> Vec<String> {
    l.iter()
        .map(|c| c.index().map_or_else(|| "0".to_string(), |k| format!("g^{k}")))
        .collect()
}

fn fmt_coeffs(l: &[FieldElem]) -> String {
    format!("[{}]", coeff_cells(l).join(" "))
}

fn csv_coeffs(l: &[FieldElem]) -> String {
    l.iter()
        .map(|c| c.index().map_or_else(String::new, |k| k.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Serialize)]
struct SearchRecord<'a> {
    kind: &'static str,
    index: usize,
    coeffs: &'a [FieldElem],
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<&'a Classification>,
}

fn families_label(kinds: &[FamilyKind]) -> String {
    if kinds.is_empty() {
        "-".into()
    } else {
        kinds.iter().map(|k| format!("{k:?}")).collect::<Vec<_>>().join("+")
    }
}

pub fn cmd_search(args: &SearchArgs, stdout: &mut dyn Write) -> Result<()> {
    let field = resolve_field(&args.field, None)?;
    let ctx = field.build(args.field.table_cap)?;
    let support = match &args.mask {
        Some(Mask(s)) => s.clone(),
        None => (0..ctx.n() as usize).collect(),
    };
    let mode = args.mode.mode();
    let config = RunConfig {
        command: "search".into(),
        field,
        mode: Some(mode),
        mask: Some(support.clone()),
        budget: Some(args.mode.budget),
        table_cap: args.field.table_cap,
        input: None,
        format: args.output.format,
        out: args.output.out.as_ref().map(|p| p.display().to_string()),
    };
    let found = linpoly::search(&ctx, &support, mode, args.mode.budget)?;
    let classes: Vec<Option<Classification>> = if args.brief {
        vec![None; found.len()]
    } else {
        found
            .par_iter()
            .map(|l| families::classify(&ctx, l).map(Some))
            .collect::<Result<_>>()?
    };

    let mut report = Report::new(&config);
    report.table.push("#  coeffs  monomial  families  commutative  ganley  nuclei".into());
    report.csv.push(format!(
        "index,{},monomial,families,commutative,ganley",
        (0..ctx.n()).map(|i| format!("a{i}")).collect::<Vec<_>>().join(",")
    ));
    for (index, (l, class)) in found.iter().zip(&classes).enumerate() {
        report.lines.push(serde_json::to_value(SearchRecord {
            kind: "result",
            index,
            coeffs: l.coeffs(),
            classification: class.as_ref(),
        })?);
        let (fams, comm, ganley, nuc) = match class {
            Some(c) => (
                families_label(&c.families),
                c.commutative.map_or("-".into(), |b| b.to_string()),
                c.ganley.as_ref().map_or("-".into(), |g| g.isotopic_to_commutative.to_string()),
                c.nuclei.map_or("-".into(), |x| format!("{:?}", x.as_array())),
            ),
            None => ("-".into(), "-".into(), "-".into(), "-".into()),
        };
        report.table.push(format!(
            "{index}  {}  {}  {fams}  {comm}  {ganley}  {nuc}",
            fmt_coeffs(l.coeffs()),
            l.is_monomial()
        ));
        report.csv.push(format!("{index},{},{},{fams},{comm},{ganley}", csv_coeffs(l.coeffs()), l.is_monomial()));
    }
    let monomials = found.iter().filter(|l| l.is_monomial()).count();
    report.lines.push(json!({
        "kind": "summary",
        "results": found.len(),
        "monomial": monomials,
        "non_monomial": found.len() - monomials,
    }));
    report.table.push(format!("{} results, {monomials} monomial", found.len()));
    report.emit(&args.output, stdout)
}

/// Per-L output of `verify`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub kind: String,
    pub index: usize,
    pub coeffs: Vec<FieldElem>,
    pub predicate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicate_witness: Option<FieldElem>,
    pub presemifield: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_divisor: Option<ZeroDivisor>,
    pub families: Vec<FamilyKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ganley: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ganley_witness: Option<FieldElem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nuclei: Option<[u64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hws: Option<HwsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma42: Option<digits::Lemma42Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub congruence: Option<bool>,
}

pub fn verify_one(ctx: &FieldCtx, index: usize, l: &LinearizedPoly) -> Result<VerifyRecord> {
    let class = families::classify(ctx, l)?;
    let hws = if l.higher_support().is_empty() { None } else { Some(hws::verdicts(ctx, l)?) };
    let lemma42 = if class.predicate && ctx.m() == 1 { Some(digits::lemma42_check(ctx, l)?) } else { None };
    let congruence = class.predicate.then(|| digits::congruence_holds(ctx, l));
    if lemma42.as_ref().is_some_and(|o| !o.holds) || congruence == Some(false) {
        return Err(Error::Contradiction(format!(
            "digit identities fail for switching L = {:?}",
            l.coeffs()
        )));
    }
    if let Some(r) = hws.as_ref().filter(|_| class.predicate) {
        if r.triggered() || !r.meets_threshold() {
            return Err(Error::Contradiction(format!(
                "point-count verdict excludes switching L = {:?} (ell {}, j {})",
                l.coeffs(),
                r.ell,
                r.argmin_j
            )));
        }
    }
    let ganley: Option<GanleyResult> = class.ganley;
    Ok(VerifyRecord {
        kind: "verify".into(),
        index,
        coeffs: l.coeffs().to_vec(),
        predicate: class.predicate,
        predicate_witness: l.switching_witness(ctx),
        presemifield: class.presemifield,
        zero_divisor: class.zero_divisor,
        families: class.families,
        commutative: class.commutative,
        ganley: ganley.as_ref().map(|g| g.isotopic_to_commutative),
        ganley_witness: ganley.and_then(|g| g.witness),
        nuclei: class.nuclei.map(|x| x.as_array()),
        hws,
        lemma42,
        congruence,
    })
}

fn load_polys(args: &FileArgs) -> Result<(FieldParams, FieldCtx, Vec<LinearizedPoly>)> {
    let (file_field, raw) = read_l_file(&args.l_file)?;
    let field = resolve_field(&args.field, file_field.as_ref())?;
    let ctx = field.build(args.field.table_cap)?;
    let polys = raw
        .into_iter()
        .map(|c| LinearizedPoly::new(&ctx, c))
        .collect::<Result<Vec<_>>>()?;
    Ok((field, ctx, polys))
}

fn file_config(command: &str, field: FieldParams, args: &FileArgs) -> RunConfig {
    RunConfig {
        command: command.into(),
        field,
        mode: None,
        mask: None,
        budget: None,
        table_cap: args.field.table_cap,
        input: Some(args.l_file.display().to_string()),
        format: args.output.format,
        out: args.output.out.as_ref().map(|p| p.display().to_string()),
    }
}

pub fn cmd_verify(args: &FileArgs, stdout: &mut dyn Write) -> Result<()> {
    let (field, ctx, polys) = load_polys(args)?;
    let config = file_config("verify", field, args);
    let records = polys
        .par_iter()
        .enumerate()
        .map(|(i, l)| verify_one(&ctx, i, l))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new(&config);
    report.table.push("#  coeffs  predicate  presemifield  commutative  ganley  nuclei".into());
    report.csv.push(format!(
        "index,{},predicate,presemifield,commutative,ganley",
        (0..ctx.n()).map(|i| format!("a{i}")).collect::<Vec<_>>().join(",")
    ));
    let opt = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
    for r in &records {
        report.lines.push(serde_json::to_value(r)?);
        report.table.push(format!(
            "{}  {}  {}  {}  {}  {}  {}",
            r.index,
            fmt_coeffs(&r.coeffs),
            r.predicate,
            r.presemifield,
            opt(r.commutative),
            opt(r.ganley),
            r.nuclei.map_or("-".into(), |x| format!("{x:?}"))
        ));
        report.csv.push(format!(
            "{},{},{},{},{},{}",
            r.index,
            csv_coeffs(&r.coeffs),
            r.predicate,
            r.presemifield,
            opt(r.commutative),
            opt(r.ganley)
        ));
    }
    report.emit(&args.output, stdout)
}

pub fn cmd_hws(args: &FileArgs, stdout: &mut dyn Write) -> Result<()> {
    let (field, ctx, polys) = load_polys(args)?;
    let config = file_config("hws", field, args);
    let reports = polys
        .par_iter()
        .map(|l| hws::verdicts(&ctx, l))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new(&config);
    report.table.push("#  coeffs  ell  j  genus  serre  tr(a0)=0  triggered  threshold  N".into());
    report.csv.push("index,ell,argmin_j,genus,serre_term,trace_a0_zero,triggered,threshold,n_chi".into());
    for (i, (l, r)) in polys.iter().zip(&reports).enumerate() {
        let mut v = serde_json::to_value(r)?;
        v["kind"] = json!("hws");
        v["index"] = json!(i);
        v["coeffs"] = serde_json::to_value(l.coeffs())?;
        v["triggered"] = json!(r.triggered());
        report.lines.push(v);
        report.table.push(format!(
            "{i}  {}  {}  {}  {}  {}  {}  {}  {}  {}",
            fmt_coeffs(l.coeffs()),
            r.ell,
            r.argmin_j,
            r.genus,
            r.serre_term,
            r.trace_a0_zero,
            r.triggered(),
            r.applicable_threshold(),
            r.n_chi
        ));
        report.csv.push(format!(
            "{i},{},{},{},{},{},{},{},{}",
            r.ell,
            r.argmin_j,
            r.genus,
            r.serre_term,
            r.trace_a0_zero,
            r.triggered(),
            r.applicable_threshold(),
            r.n_chi
        ));
    }
    report.emit(&args.output, stdout)
}

pub fn cmd_codes(args: &CodesArgs, stdout: &mut dyn Write) -> Result<()> {
    let field = resolve_field(&args.field, None)?;
    let ctx = field.build(args.field.table_cap)?;
    let mode = args.mode.mode();
    let config = RunConfig {
        command: "codes".into(),
        field,
        mode: Some(mode),
        mask: None,
        budget: Some(args.mode.budget),
        table_cap: args.field.table_cap,
        input: None,
        format: args.output.format,
        out: args.output.out.as_ref().map(|p| p.display().to_string()),
    };
    let (q, n) = (ctx.q(), ctx.n());
    let dimension = codes::code_dimension(q, n)?;
    let basic = codes::basic_zero_set_check(q, ctx.group_order(), &codes::defining_exponents(q, n))?;
    let summary = codes::full_weight_search(&ctx, mode, args.mode.budget)?;
    let words: Vec<Codeword> = summary
        .witnesses
        .iter()
        .map(|l| codes::delsarte_codeword(&ctx, l.coeffs()))
        .collect::<Result<_>>()?;
    if words.iter().any(|w| !w.is_full_weight() || w.is_constant()) {
        return Err(Error::Contradiction("a switching L gave a word of deficient weight or a constant word".into()));
    }

    let mut report = Report::new(&config);
    report.lines.push(json!({
        "kind": "codes",
        "length": ctx.group_order(),
        "dimension": dimension,
        "basic_zero_set": basic,
        "total": summary.total,
        "full_weight_constant": summary.full_weight_constant,
        "full_weight_nonconstant": summary.full_weight_nonconstant,
        "nonconstant_full_weight": summary.full_weight_nonconstant > 0,
        "witnesses": summary.witnesses,
    }));
    report.table.push(format!("length     {}", ctx.group_order()));
    report.table.push(format!("dimension  {dimension}"));
    report.table.push(format!(
        "full weight  {} constant, {} non-constant (of {} candidates)",
        summary.full_weight_constant, summary.full_weight_nonconstant, summary.total
    ));
    for w in &words {
        report.table.push(format!("{}  {}", fmt_coeffs(&w.coeffs), w.csv_row(&ctx).replace(',', "")));
        report.csv.push(w.csv_row(&ctx));
    }
    report.emit(&args.output, stdout)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Search(a) => cmd_search(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Codes(a) => cmd_codes(a, stdout),
        Command::Hws(a) => cmd_hws(a, stdout),
    }
}

fn out_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Search(a) => a.output.out.as_ref(),
        Command::Verify(a) | Command::Hws(a) => a.output.out.as_ref(),
        Command::Codes(a) => a.output.out.as_ref(),
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Error::Contradiction(msg) = &e {
                let dump = json!({ "kind": "contradiction", "witness": msg });
                eprintln!("{dump}");
                if let Some(p) = out_path(&cli) {
                    let _ = fs::write(p.with_extension("witness.json"), format!("{dump}\n"));
                }
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
