//! The `cf` command line.
//!
//! Every subcommand builds a [`Report`] holding a JSON value plus text and CSV
//! renderings, then prints the one selected by `--format`. Exit codes: 0 on
//! success, 1 when a check fails, 2 on usage or input errors.

use std::io::Write;
use std::str::FromStr;

use cf_core::bijections::{
    self, colored_word, motzkin_class_map, pair_to_two_colored, schroder_elevate, schroder_flatten, MotzkinCase,
};
use cf_core::family::{distribution_table, enumerate_family, DistributionTable};
use cf_core::forms::{self, eval, Args, Family, FormId, TableLayout};
use cf_core::series::{identity_check, named_series, IDENTITIES};
use cf_core::theorems::{verify_theorem, Bounds, TheoremReport, THEOREMS};
use cf_core::{Budget, CfError, FamilySpec, Statistic};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableName {
    Tkl,
    Zkl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Layout {
    Published,
    Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BijectionName {
    SchroderFlatten,
    SchroderElevate,
    #[value(name = "pair2motzkin")]
    Pair2Motzkin,
    MotzkinClass,
}

#[derive(Parser, Debug)]
#[command(name = "cf", version, about = "Chung-Feller lattice path enumeration and verification")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a T or Z table.
    Table {
        #[arg(long, value_enum)]
        name: TableName,
        #[arg(long)]
        kmax: i64,
        #[arg(long)]
        lmax: i64,
        /// First row; defaults to 0 for T and 1 for Z.
        #[arg(long)]
        kmin: Option<i64>,
        /// First column; defaults to 0 for T and 1 for Z.
        #[arg(long)]
        lmin: Option<i64>,
        #[arg(long, value_enum, default_value = "published")]
        layout: Layout,
    },
    /// Print the first terms of a sequence.
    Seq {
        #[arg(long)]
        name: String,
        #[arg(long)]
        count: usize,
        /// Down-step depth for fuss-catalan.
        #[arg(long, default_value_t = 2)]
        r: i64,
    },
    /// Distribution of a statistic over a family, e.g. `--family P:n=3,h=1 --stat on-or-below:up-start`.
    Dist {
        #[arg(long)]
        family: String,
        #[arg(long)]
        stat: String,
        /// Admissible values `a..b`; when given, exit 1 unless the distribution is uniform on them.
        #[arg(long)]
        domain: Option<String>,
    },
    /// Exhaustively verify a registered theorem, or `all`.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 6)]
        max_n: i64,
        #[arg(long, default_value_t = 3)]
        max_r: i64,
    },
    /// Print the coefficients of a named series.
    Series {
        #[arg(long)]
        name: String,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    /// Check a series identity, or `all`.
    Identity {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Apply a bijection to every path of its domain.
    Bijection {
        #[arg(long, value_enum)]
        name: BijectionName,
        #[arg(long)]
        n: u32,
        /// For motzkin-class: leading-flat or leading-du (default both).
        #[arg(long)]
        case: Option<String>,
    },
    /// Evaluate a closed form, e.g. `--form t#7 --args k=3,l=4`.
    Eval {
        #[arg(long)]
        form: String,
        #[arg(long)]
        args: String,
    },
    /// Check a numeric relation between families, or `all`.
    Relation {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 10)]
        bound: i64,
    },
}

/// A rendered command result.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub csv: String,
    pub ok: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Csv => self.csv.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

fn s<T: ToString>(v: T) -> Value {
    Value::String(v.to_string())
}

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

fn csv_field(f: &str) -> String {
    if f.contains([',', '"', '\n']) {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

fn csv(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",") + "\n").collect()
}

fn usage(msg: impl Into<String>) -> CfError {
    CfError::InvalidArgument(msg.into())
}

fn table_cmd(name: TableName, k: (i64, i64), l: (i64, i64), layout: Layout) -> Result<Report, CfError> {
    let family = if name == TableName::Tkl { Family::T } else { Family::Z };
    let lay = if layout == Layout::Published { TableLayout::Published } else { TableLayout::Formula };
    let rows = forms::table(family, lay, k, l)?;
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1).max(3);
    let mut text = format!("{:>4} |", "k\\l");
    for c in l.0..=l.1 {
        text += &format!(" {c:>width$}");
    }
    text.push('\n');
    for (i, r) in cells.iter().enumerate() {
        text += &format!("{:>4} |", k.0 + i as i64);
        for c in r {
            text += &format!(" {c:>width$}");
        }
        text.push('\n');
    }
    let mut rows_csv = vec![std::iter::once("k".to_string()).chain((l.0..=l.1).map(|c| c.to_string())).collect::<Vec<_>>()];
    for (i, r) in cells.iter().enumerate() {
        rows_csv.push(std::iter::once((k.0 + i as i64).to_string()).chain(r.iter().cloned()).collect());
    }
    let json = obj(vec![
        ("table", s(if family == Family::T { "tkl" } else { "zkl" })),
        ("layout", s(if lay == TableLayout::Published { "published" } else { "formula" })),
        ("k", json!([s(k.0), s(k.1)])),
        ("l", json!([s(l.0), s(l.1)])),
        ("rows", Value::Array(cells.iter().map(|r| Value::Array(r.iter().map(s).collect())).collect())),
    ]);
    Ok(Report { json, text, csv: csv(&rows_csv), ok: true })
}

fn seq_cmd(name: &str, count: usize, r: i64) -> Result<Report, CfError> {
    let family = Family::from_str(name)?;
    let terms: Vec<String> = forms::sequence(family, count, r)?.iter().map(ToString::to_string).collect();
    let start = if family == Family::Riordan { 1 } else { 0 };
    let mut rows = vec![vec!["index".to_string(), "value".to_string()]];
    rows.extend(terms.iter().enumerate().map(|(i, v)| vec![(i + start).to_string(), v.clone()]));
    let json = obj(vec![
        ("sequence", s(name)),
        ("start", s(start)),
        ("terms", Value::Array(terms.iter().map(s).collect())),
    ]);
    Ok(Report { json, text: terms.join(",") + "\n", csv: csv(&rows), ok: true })
}

fn table_json(t: &DistributionTable) -> Value {
    obj(vec![
        ("family", s(&t.spec)),
        ("statistic", s(&t.statistic)),
        ("total", s(t.total)),
        ("domain", t.domain.map(|(a, b)| json!([s(a), s(b)])).unwrap_or(Value::Null)),
        ("uniform", Value::Bool(t.is_uniform())),
        ("counts", Value::Object(t.counts.iter().map(|(k, v)| (k.to_string(), s(v))).collect())),
    ])
}

fn counts_text(t: &DistributionTable) -> String {
    t.counts.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ")
}

fn parse_domain(d: &str) -> Result<(i64, i64), CfError> {
    let (a, b) = d.split_once("..").ok_or_else(|| usage(format!("domain {d:?} is not of the form a..b")))?;
    let p = |x: &str| x.trim().trim_start_matches('=').parse::<i64>().map_err(|_| usage(format!("bad domain bound {x:?}")));
    Ok((p(a)?, p(b)?))
}

fn dist_cmd(family: &str, stat: &str, domain: Option<&str>, budget: Budget) -> Result<Report, CfError> {
    let spec = FamilySpec::from_str(family)?;
    let statistic = Statistic::from_str(stat)?;
    let dom = domain.map(parse_domain).transpose()?;
    let t = distribution_table(&spec, statistic, dom.map(|(a, b)| a..=b), budget)?;
    let ok = dom.is_none() || t.is_uniform();
    let mut rows = vec![vec!["value".to_string(), "count".to_string()]];
    rows.extend(t.counts.iter().map(|(k, v)| vec![k.to_string(), v.to_string()]));
    let verdict = match (dom, t.is_uniform()) {
        (None, _) => String::new(),
        (Some(_), true) => format!(" uniform, common count {}", t.common_count().unwrap_or(0)),
        (Some(_), false) => " NOT uniform".to_string(),
    };
    let text = format!("{} {} total={}{}\n{}\n", t.spec, t.statistic, t.total, verdict, counts_text(&t));
    Ok(Report { json: table_json(&t), text, csv: csv(&rows), ok })
}

fn verify_cmd(theorem: &str, bounds: Bounds, budget: Budget) -> Result<Report, CfError> {
    let ids: Vec<&str> = if theorem == "all" { THEOREMS.to_vec() } else { vec![theorem] };
    let reports: Vec<TheoremReport> = ids.iter().map(|id| verify_theorem(id, bounds, budget)).collect::<Result<_, _>>()?;
    let ok = reports.iter().all(TheoremReport::passed);
    let mut text = String::new();
    let mut rows = vec![["theorem", "case", "family", "statistic", "expected", "total", "uniform", "passed"].map(String::from).to_vec()];
    let mut jreports = Vec::new();
    for rep in &reports {
        let mut jcases = Vec::new();
        for r in &rep.results {
            text += &format!(
                "{} {} {} {} expected={} {}\n",
                if r.passed { "PASS" } else { "FAIL" },
                rep.id,
                r.case.label,
                r.case.statistic,
                r.case.expected,
                counts_text(&r.table)
            );
            rows.push(vec![
                rep.id.clone(),
                r.case.label.clone(),
                r.case.spec.to_string(),
                r.case.statistic.to_string(),
                r.case.expected.to_string(),
                r.table.total.to_string(),
                r.table.is_uniform().to_string(),
                r.passed.to_string(),
            ]);
            let mut c = table_json(&r.table);
            if let Value::Object(m) = &mut c {
                m.insert("case".into(), s(&r.case.label));
                m.insert("expected".into(), s(&r.case.expected));
                m.insert("passed".into(), Value::Bool(r.passed));
            }
            jcases.push(c);
        }
        text += &format!("{} {}: {} cases\n", if rep.passed() { "PASS" } else { "FAIL" }, rep.id, rep.results.len());
        jreports.push(obj(vec![("theorem", s(&rep.id)), ("passed", Value::Bool(rep.passed())), ("cases", Value::Array(jcases))]));
    }
    let json = obj(vec![
        ("max_n", s(bounds.max_n)),
        ("max_r", s(bounds.max_r)),
        ("passed", Value::Bool(ok)),
        ("theorems", Value::Array(jreports)),
    ]);
    Ok(Report { json, text, csv: csv(&rows), ok })
}

fn series_cmd(name: &str, order: usize, r: u32) -> Result<Report, CfError> {
    let named = named_series(name, order, r)?;
    let mut header = named.vars.clone();
    header.push("coeff".into());
    let mut rows = vec![header];
    let mut terms = Vec::new();
    for (e, c) in named.series.terms() {
        let mut row: Vec<String> = e.iter().map(ToString::to_string).collect();
        row.push(c.to_string());
        terms.push(obj(vec![
            ("exponents", Value::Array(e.iter().map(s).collect())),
            ("coeff", s(&c)),
        ]));
        rows.push(row);
    }
    let json = obj(vec![
        ("series", s(name)),
        ("order", s(order)),
        ("vars", Value::Array(named.vars.iter().map(s).collect())),
        ("terms", Value::Array(terms)),
    ]);
    Ok(Report { json, text: named.to_string(), csv: csv(&rows), ok: true })
}

fn check_list(
    kind: &str,
    ids: Vec<String>,
    run: impl Fn(&str) -> Result<forms::CheckReport, CfError>,
) -> Result<Report, CfError> {
    let mut text = String::new();
    let mut rows = vec![vec![kind.to_string(), "checked".into(), "passed".into(), "first_failure".into()]];
    let mut items = Vec::new();
    let mut ok = true;
    for id in ids {
        let rep = run(&id)?;
        ok &= rep.passed();
        let first = rep.failures.first().cloned().unwrap_or_default();
        text += &format!("{} {id} ({} checked){}\n", if rep.passed() { "PASS" } else { "FAIL" }, rep.checked, if first.is_empty() { String::new() } else { format!(": {first}") });
        rows.push(vec![id.clone(), rep.checked.to_string(), rep.passed().to_string(), first]);
        items.push(obj(vec![
            ("id", s(&id)),
            ("checked", s(rep.checked)),
            ("passed", Value::Bool(rep.passed())),
            ("failures", Value::Array(rep.failures.iter().map(s).collect())),
        ]));
    }
    let json = obj(vec![("kind", s(kind)), ("passed", Value::Bool(ok)), ("checks", Value::Array(items))]);
    Ok(Report { json, text, csv: csv(&rows), ok })
}

fn bijection_cmd(name: BijectionName, n: u32, case: Option<&str>) -> Result<Report, CfError> {
    let mut pairs: Vec<(String, String, String)> = Vec::new();
    let label = match name {
        BijectionName::SchroderFlatten => "schroder-flatten",
        BijectionName::SchroderElevate => "schroder-elevate",
        BijectionName::Pair2Motzkin => "pair2motzkin",
        BijectionName::MotzkinClass => "motzkin-class",
    };
    match name {
        BijectionName::SchroderFlatten | BijectionName::SchroderElevate => {
            let flatten = name == BijectionName::SchroderFlatten;
            for p in bijections::schroder_paths(n, !flatten)? {
                let q = if flatten { schroder_flatten(&p)? } else { schroder_elevate(&p)? };
                pairs.push((String::new(), p.word(), q.word()));
            }
        }
        BijectionName::Pair2Motzkin => {
            if n == 0 {
                return Err(usage("pair2motzkin needs n >= 1"));
            }
            for p in enumerate_family(&FamilySpec::p(n - 1, 1, 2))? {
                pairs.push((String::new(), p.word(), colored_word(&pair_to_two_colored(&p)?)));
            }
        }
        BijectionName::MotzkinClass => {
            let cases = match case {
                Some(c) => vec![MotzkinCase::from_str(c)?],
                None => vec![MotzkinCase::LeadingFlat, MotzkinCase::LeadingDu],
            };
            for c in cases {
                for q in bijections::motzkin_class_paths(n, c)? {
                    pairs.push((c.to_string(), q.word(), motzkin_class_map(&q, c)?.word()));
                }
            }
        }
    }
    let w = pairs.iter().map(|p| p.1.len()).max().unwrap_or(0);
    let mut text = String::new();
    for (c, a, b) in &pairs {
        let prefix = if c.is_empty() { String::new() } else { format!("{c:<12} ") };
        text += &format!("{prefix}{a:<w$} -> {b}\n");
    }
    text += &format!("{} pairs\n", pairs.len());
    let mut rows = vec![vec!["case".to_string(), "input".into(), "output".into()]];
    rows.extend(pairs.iter().map(|(c, a, b)| vec![c.clone(), a.clone(), b.clone()]));
    let json = obj(vec![
        ("bijection", s(label)),
        ("n", s(n)),
        (
            "pairs",
            Value::Array(
                pairs
                    .iter()
                    .map(|(c, a, b)| {
                        let mut v = vec![("input", s(a)), ("output", s(b))];
                        if !c.is_empty() {
                            v.push(("case", s(c)));
                        }
                        obj(v)
                    })
                    .collect(),
            ),
        ),
    ]);
    Ok(Report { json, text, csv: csv(&rows), ok: true })
}

fn eval_cmd(form: &str, args: &str) -> Result<Report, CfError> {
    let id = FormId::from_str(form)?;
    let a = Args::from_str(args)?;
    let v = eval(id, &a)?;
    let json = obj(vec![("form", s(id)), ("args", Value::Object(a.0.iter().map(|(k, v)| (k.clone(), s(v))).collect())), ("value", s(&v))]);
    Ok(Report { json, text: format!("{v}\n"), csv: csv(&[vec!["form".into(), "value".into()], vec![id.to_string(), v.to_string()]]), ok: true })
}

fn dispatch(cli: Cli, budget: Budget) -> Result<Report, CfError> {
    match cli.command {
        Command::Table { name, kmax, lmax, kmin, lmin, layout } => {
            let base = if name == TableName::Zkl && layout == Layout::Published { 1 } else { 0 };
            table_cmd(name, (kmin.unwrap_or(base), kmax), (lmin.unwrap_or(base), lmax), layout)
        }
        Command::Seq { name, count, r } => seq_cmd(&name, count, r),
        Command::Dist { family, stat, domain } => dist_cmd(&family, &stat, domain.as_deref(), budget),
        Command::Verify { theorem, max_n, max_r } => verify_cmd(&theorem, Bounds { max_n, max_r }, budget),
        Command::Series { name, order, r } => series_cmd(&name, order, r),
        Command::Identity { name, order } => {
            let ids = if name == "all" { IDENTITIES.iter().map(|s| s.to_string()).collect() } else { vec![name] };
            check_list("identity", ids, |id| identity_check(id, order))
        }
        Command::Bijection { name, n, case } => bijection_cmd(name, n, case.as_deref()),
        Command::Eval { form, args } => eval_cmd(&form, &args),
        Command::Relation { name, bound } => {
            let ids = if name == "all" { forms::RELATIONS.iter().map(|s| s.to_string()).collect() } else { vec![name] };
            check_list("relation", ids, |id| forms::relation_check(id, bound))
        }
    }
}

/// Run with explicit output streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let format = cli.format;
    match dispatch(cli, Budget::from_env()) {
        Ok(rep) => {
            let _ = out.write_all(rep.render(format).as_bytes());
            if rep.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Run against stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
