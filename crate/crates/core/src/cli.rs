//! Command surface of the `aq` binary.
//!
//! [`run`] takes the arguments and the three standard streams explicitly, so
//! tests can drive it in-process.

use std::io::{Read, Write};
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::aq::{self, CohomologyReport, WlReport};
use crate::cdga::Morphism;
use crate::der::{DerContext, Derivation};
use crate::dsl::{self, SourceFile};
use crate::gca::Rational;
use crate::models;

#[derive(Parser, Debug)]
#[command(
    name = "aq",
    version,
    about = "Rational homotopy of mapping spaces from Sullivan models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate every algebra and morphism in a file.
    Check {
        /// Input file, or `-` for standard input.
        file: String,
    },
    /// Print omega, nil, d1-depth and the Whitehead length of an algebra.
    Invariants {
        file: String,
        #[arg(long)]
        algebra: String,
    },
    /// André-Quillen cohomology of the derivation complex of a map.
    Cohomology {
        file: String,
        #[command(flatten)]
        map: MapArgs,
        /// Degrees `a..b` (inclusive); defaults to the range where classes can live.
        #[arg(long, value_parser = parse_range)]
        range: Option<RangeInclusive<i64>>,
        #[arg(long)]
        json: bool,
    },
    /// Brackets of all pairs of cohomology representatives.
    Bracket {
        file: String,
        #[command(flatten)]
        map: MapArgs,
        /// Degrees `a..b` of the representatives to pair.
        #[arg(long, value_parser = parse_range)]
        degrees: Option<RangeInclusive<i64>>,
    },
    /// Lower and upper bounds for the Whitehead length of the mapping space.
    Wl {
        file: String,
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Emit a ready-made input file.
    Example {
        #[command(subcommand)]
        generator: ExampleKind,
    },
}

#[derive(Args, Debug)]
struct MapArgs {
    /// Name of the morphism.
    #[arg(long)]
    map: String,
    /// Use the based mapping space.
    #[arg(long)]
    based: bool,
}

#[derive(Subcommand, Debug)]
enum ExampleKind {
    /// Map from CP^inf x CP^n to CP^inf x CP^m.
    #[command(name = "cp_map")]
    CpMap {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Coefficients q1 q2 q3 of z -> q1 w, x -> q2 w + q3 y.
        #[arg(long, num_args = 3, value_names = ["Q1", "Q2", "Q3"], allow_hyphen_values = true, value_parser = parse_rational)]
        q: Vec<Rational>,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a range like 2..7, got `{s}`"))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|e| format!("bad range start: {e}"))?;
    let b: i64 = b
        .trim()
        .parse()
        .map_err(|e| format!("bad range end: {e}"))?;
    Ok(a..=b)
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>()
        .map_err(|e| format!("bad rational `{s}`: {e}"))
}

/// Failure that maps to exit status 1.
struct Failure(String);

type CmdResult = Result<(), Failure>;

fn fail(msg: impl Into<String>) -> Failure {
    Failure(msg.into())
}

/// Runs the CLI and returns the process exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    let mut warnings = Vec::new();
    let result = dispatch(cli.command, stdin, out, &mut warnings);
    for w in warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    match result {
        Ok(()) => 0,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
    }
}

fn dispatch(
    cmd: Command,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    warnings: &mut Vec<String>,
) -> CmdResult {
    let mut text = String::new();
    match cmd {
        Command::Check { file } => {
            let src = load(&file, stdin, &mut text)?;
            cmd_check(&src, out)
        }
        Command::Invariants { file, algebra } => {
            let src = load(&file, stdin, &mut text)?;
            cmd_invariants(&src, &algebra, out)
        }
        Command::Cohomology {
            file,
            map,
            range,
            json,
        } => {
            let src = load(&file, stdin, &mut text)?;
            let ctx = context(&src, &map, warnings)?;
            let range = range.unwrap_or_else(|| aq::default_k_range(&ctx));
            let report = aq::aq_cohomology(&ctx, range);
            let rendered = if json {
                render_json(&ctx, &report)
            } else {
                render_table(&ctx, &report)
            };
            emit(out, &rendered)
        }
        Command::Bracket { file, map, degrees } => {
            let src = load(&file, stdin, &mut text)?;
            let ctx = context(&src, &map, warnings)?;
            let range = degrees.unwrap_or_else(|| aq::default_k_range(&ctx));
            cmd_bracket(&ctx, range, out)
        }
        Command::Wl { file, map, max_len } => {
            let src = load(&file, stdin, &mut text)?;
            let ctx = context(&src, &map, warnings)?;
            let report = aq::wl_report(&ctx, max_len, aq::default_k_range(&ctx));
            emit(out, &render_wl(&report))
        }
        Command::Example {
            generator: ExampleKind::CpMap { n, m, q },
        } => {
            let f = models::cp_map(n, m, q[0].clone(), q[1].clone(), q[2].clone())
                .map_err(|e| fail(format!("error: {e}")))?;
            let header = format!("# cp_map n={n} m={m} q=({}, {}, {})\n", q[0], q[1], q[2]);
            emit(out, &format!("{header}{}", dsl::print_morphism_file(&f)))
        }
    }
}

fn emit(out: &mut dyn Write, s: &str) -> CmdResult {
    out.write_all(s.as_bytes())
        .map_err(|e| fail(format!("error: cannot write output: {e}")))
}

fn load(path: &str, stdin: &mut dyn Read, buf: &mut String) -> Result<SourceFile, Failure> {
    if path == "-" {
        stdin
            .read_to_string(buf)
            .map_err(|e| fail(format!("error: cannot read standard input: {e}")))?;
    } else {
        *buf = std::fs::read_to_string(path)
            .map_err(|e| fail(format!("error: cannot read {path}: {e}")))?;
    }
    let shown = if path == "-" { "<stdin>" } else { path };
    dsl::parse(buf).map_err(|diags| {
        fail(
            diags
                .0
                .iter()
                .map(|d| format!("{shown}:{d}"))
                .collect::<Vec<_>>()
                .join("\n"),
        )
    })
}

fn morphism<'a>(src: &'a SourceFile, name: &str) -> Result<&'a Morphism, Failure> {
    src.morphism(name)
        .ok_or_else(|| fail(format!("error: no morphism named `{name}`")))
}

fn context(
    src: &SourceFile,
    args: &MapArgs,
    warnings: &mut Vec<String>,
) -> Result<DerContext, Failure> {
    let f = morphism(src, &args.map)?;
    let ctx = DerContext::new(f.clone(), args.based).map_err(|e| fail(format!("error: {e}")))?;
    for defect in ctx.chain_defects() {
        warnings.push(defect.clone());
    }
    Ok(ctx)
}

fn cmd_check(src: &SourceFile, out: &mut dyn Write) -> CmdResult {
    let mut report = String::new();
    let mut failed = false;
    for a in src.algebras() {
        match a.validate() {
            Ok(()) => report.push_str(&format!("algebra {}: ok\n", a.name())),
            Err(problems) => {
                failed = true;
                report.push_str(&format!("algebra {}: invalid\n", a.name()));
                for p in problems {
                    report.push_str(&format!("  {p}\n"));
                }
            }
        }
    }
    for f in src.morphisms() {
        match f.validate() {
            Ok(()) => report.push_str(&format!("morphism {}: ok\n", f.name())),
            Err(problems) => {
                failed = true;
                report.push_str(&format!("morphism {}: invalid\n", f.name()));
                for p in problems {
                    report.push_str(&format!("  {p}\n"));
                }
            }
        }
    }
    emit(out, &report)?;
    if failed {
        Err(fail("error: validation failed"))
    } else {
        Ok(())
    }
}

fn cmd_invariants(src: &SourceFile, name: &str, out: &mut dyn Write) -> CmdResult {
    let a = src
        .algebra(name)
        .ok_or_else(|| fail(format!("error: no algebra named `{name}`")))?;
    if let Err(problems) = a.validate() {
        return Err(fail(format!(
            "error: algebra {name} is invalid: {}",
            problems.join("; ")
        )));
    }
    let show = |r: crate::Result<u32>| match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("unavailable ({e})"),
    };
    let text = format!(
        "algebra {name}\nomega: {}\nnil: {}\nd1_depth: {}\nwl: {}\n",
        a.omega(),
        a.nil(),
        show(a.d1_depth()),
        show(a.wl_space()),
    );
    emit(out, &text)
}

fn describe(ctx: &DerContext, theta: &Derivation) -> Vec<(String, String)> {
    theta
        .describe(ctx)
        .into_iter()
        .filter(|(_, v)| v != "0")
        .collect()
}

fn show_derivation(ctx: &DerContext, theta: &Derivation) -> String {
    let parts = describe(ctx, theta);
    if parts.is_empty() {
        return "0".into();
    }
    let inner: Vec<String> = parts.iter().map(|(g, v)| format!("{g} |-> {v}")).collect();
    format!("[{}]", inner.join("; "))
}

/// Aligned text table of a cohomology report.
pub fn render_table(ctx: &DerContext, report: &CohomologyReport) -> String {
    let f = ctx.morphism();
    let mut rows = vec![[
        "k".to_string(),
        "rank".to_string(),
        "cochains".to_string(),
        "representatives".to_string(),
    ]];
    for d in &report.degrees {
        let mut reps: Vec<String> = d
            .representatives
            .iter()
            .map(|r| show_derivation(ctx, r))
            .collect();
        if !d.is_homotopy_interpretable() {
            reps.push("(below the homotopy range)".into());
        }
        rows.push([
            d.k.to_string(),
            d.rank.to_string(),
            d.cochains.to_string(),
            reps.join(" "),
        ]);
    }
    let widths: Vec<usize> = (0..3)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut s = format!(
        "# {} mapping space of {}: {} -> {}\n",
        if report.based { "based" } else { "free" },
        f.name(),
        f.source().name(),
        f.target().name()
    );
    for r in rows {
        let line = format!(
            "{:>w0$}  {:>w1$}  {:>w2$}  {}",
            r[0],
            r[1],
            r[2],
            r[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2]
        );
        s.push_str(line.trim_end());
        s.push('\n');
    }
    s
}

/// JSON rendering with sorted keys. Each representative is the list of its
/// nonzero values as `{"gen", "value"}` objects.
pub fn render_json(ctx: &DerContext, report: &CohomologyReport) -> String {
    let degrees: Vec<Value> = report
        .degrees
        .iter()
        .map(|d| {
            let reps: Vec<Value> = d
                .representatives
                .iter()
                .map(|r| {
                    Value::Array(
                        describe(ctx, r)
                            .into_iter()
                            .map(|(g, v)| json!({ "gen": g, "value": v }))
                            .collect(),
                    )
                })
                .collect();
            json!({ "k": d.k, "rank": d.rank, "representatives": reps })
        })
        .collect();
    let doc = json!({ "kind": "cohomology", "based": report.based, "degrees": degrees });
    let mut s = serde_json::to_string_pretty(&doc).expect("plain JSON values");
    s.push('\n');
    s
}

fn cmd_bracket(ctx: &DerContext, range: RangeInclusive<i64>, out: &mut dyn Write) -> CmdResult {
    let report = aq::aq_cohomology(ctx, range);
    let classes: Vec<(String, &Derivation)> = report
        .degrees
        .iter()
        .filter(|d| d.is_homotopy_interpretable())
        .flat_map(|d| {
            d.representatives
                .iter()
                .enumerate()
                .map(move |(i, r)| (format!("c{}.{}", d.k, i + 1), r))
        })
        .collect();
    let mut s = String::new();
    for (label, r) in &classes {
        s.push_str(&format!("{label} = {}\n", show_derivation(ctx, r)));
    }
    if !classes.is_empty() {
        s.push('\n');
    }
    for (i, (la, a)) in classes.iter().enumerate() {
        for (lb, b) in &classes[i..] {
            let c =
                aq::bracket_on_cohomology(ctx, a, b).map_err(|e| fail(format!("error: {e}")))?;
            let verdict = if c.is_zero {
                "zero".to_string()
            } else {
                format!("nonzero {}", show_derivation(ctx, &c.representative))
            };
            s.push_str(&format!("[{la}, {lb}]  {verdict}\n"));
        }
    }
    emit(out, &s)
}

/// Text rendering of a Whitehead-length report.
pub fn render_wl(report: &WlReport) -> String {
    let target = match &report.wl_target {
        Ok(v) => v.to_string(),
        Err(e) => format!("unavailable ({e})"),
    };
    format!(
        "lower_bound: {}\nnil_bound: {}\nrefined_bound: {}\ncoformal_bound: {}\nwl_target: {}\nconsistent: {}\n",
        report.lower_bound,
        report.nil_bound,
        report.refined_bound,
        report.coformal_bound,
        target,
        report.is_consistent()
    )
}
