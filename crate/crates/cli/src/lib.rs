//! The `conelab` command line. Every subcommand returns an exit code:
//! 0 when a witness was found or the claim holds on the window, 2 when a
//! violation or obstruction was found and verified, 3 when the result is
//! inconclusive at the given window, and 1 on usage or internal errors.

pub mod config;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use conelab::certificates::{
    free_to_depth, structural_verify_semigroup_violation, to_json, verify_json, verify_with_cap, Certificate,
    spell_letters, FreenessOutcome, FunctionResolver, Level, VerificationReport, MIN_STRUCTURAL_DEPTH,
};
use conelab::constructions::{jenkins_weight, transport_subgroup, JenkinsSpec};
use conelab::functions::{parse_function, Embedding};
use conelab::group::{ball, growth_report, parse_group_with, Element, DEFAULT_CAP};
use conelab::rational::{self, Rational};
use conelab::search::{
    find_free_pairs, moore_gap, ratio_defect_lp, reiter_defect_lp, windowed_alternative, AlternativeBranch, LpTrace,
};
use conelab::{Group, QuerySpec, TestFunction};
use thiserror::Error;

pub use config::Config;

pub const EXIT_WITNESS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_OBSTRUCTION: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] conelab::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "conelab", version, about = "Exact certificates for translate, ratio and Reiter properties")]
pub struct Cli {
    /// TOML file with named matrix groups and custom test functions.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct GroupArgs {
    /// Group spec, e.g. `Z^2`, `F2`, `prod(F2,Z)` or a config name.
    #[arg(long)]
    pub group: String,
    /// Comma-separated generating set; the group's defaults when omitted.
    #[arg(long)]
    pub gens: Option<String>,
}

#[derive(Debug, clap::Args)]
pub struct QueryArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Test function spec, e.g. `semigroup:a,b` or `half:Z^1:1`.
    #[arg(long)]
    pub f: String,
    /// Comma-separated test set starting with `e`.
    #[arg(long)]
    pub set: String,
    /// Radius of the window ball.
    #[arg(long)]
    pub window: usize,
}

#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    /// Write the certificate JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the certificate JSON on stdout instead of a summary.
    #[arg(long)]
    pub json: bool,
    /// Write the solved LPs to this sidecar file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the group catalog and any configured groups.
    Groups,
    /// Ball sizes, successive ratios and a growth label.
    Growth {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        radius: usize,
    },
    /// Elements of a ball with their word lengths.
    Ball {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        radius: usize,
    },
    /// Windowed alternative: ratio witness or translate violation.
    Alternative {
        #[command(flatten)]
        query: QueryArgs,
        /// Fail (exit 3) unless a violation is upgraded to structural level.
        #[arg(long)]
        structural: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimal ratio defect on the window.
    Ratio {
        #[command(flatten)]
        query: QueryArgs,
        /// Tolerance the witness must meet.
        #[arg(long)]
        epsilon: String,
        /// Use the one-sided defect instead of the two-sided one.
        #[arg(long)]
        one_sided: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimal Reiter defect on the window.
    Reiter {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        epsilon: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exponentially decaying weight `r^{|g|}` and its measured defect.
    Jenkins {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        epsilon: String,
        /// Truncation radius.
        #[arg(long)]
        radius: usize,
        /// Override for the base `r`.
        #[arg(long)]
        base: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Windowed distance from 1 to the span of `1_E - 1_{gE}`.
    MooreGap {
        #[command(flatten)]
        group: GroupArgs,
        /// A 0/1-valued test function.
        #[arg(long)]
        f: String,
        /// Comma-separated translates.
        #[arg(long)]
        translates: String,
        #[arg(long)]
        window: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a pair for freeness, or scan the ball of radius 2 for free pairs.
    Freeness {
        #[command(flatten)]
        group: GroupArgs,
        /// `a,b`; omit to scan.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        /// Maximum number of pairs reported by a scan.
        #[arg(long, default_value_t = 5)]
        limit: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-check a violation file, optionally at structural level.
    ViolationVerify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        structural: bool,
        /// Depth of the structural check.
        #[arg(long, default_value_t = MIN_STRUCTURAL_DEPTH)]
        depth: usize,
    },
    /// Move a certificate along a subgroup embedding.
    Transport {
        #[arg(long)]
        cert: PathBuf,
        /// Target group spec.
        #[arg(long)]
        target: String,
        /// `id`, `left`, `right` or `lattice:<d>:<s1,..>`.
        #[arg(long)]
        embedding: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-verify any certificate file.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        /// Also report weighted ℓ^p norms (p-th powers) of witness translates.
        #[arg(long)]
        p: Option<u32>,
    },
}

/// Element cap from `CONELAB_CAP`, or the library default.
pub fn cap_from_env() -> Result<usize> {
    match std::env::var("CONELAB_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("CONELAB_CAP must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

struct Context {
    config: Config,
    cap: usize,
}

impl Context {
    fn group(&self, spec: &str) -> Result<Group> {
        Ok(parse_group_with(spec, &|name| self.config.group(name))?)
    }

    fn function(&self, spec: &str, group: &Group) -> Result<TestFunction> {
        Ok(parse_function(spec, group, &|name, g| self.config.function(name, g))?)
    }

    fn gens(&self, group: &Group, args: &GroupArgs) -> Result<Vec<Element>> {
        match &args.gens {
            Some(list) => elements(group, list),
            None => Ok(group.default_generators()),
        }
    }

    fn query(&self, args: &QueryArgs, epsilon: Rational) -> Result<(TestFunction, QuerySpec)> {
        let group = self.group(&args.group.group)?;
        let f = self.function(&args.f, &group)?;
        let mut q = QuerySpec::new(&group, elements(&group, &args.set)?, epsilon, args.window)?;
        if args.group.gens.is_some() {
            q = q.with_generators(self.gens(&group, &args.group)?);
        }
        Ok((f, q))
    }
}

fn elements(group: &Group, list: &str) -> Result<Vec<Element>> {
    Ok(list
        .split(',')
        .map(|w| group.parse_element(w.trim()))
        .collect::<std::result::Result<_, _>>()?)
}

fn parse_rational(s: &str) -> Result<Rational> {
    Ok(rational::parse(s).map_err(conelab::Error::from)?)
}

fn word(group: &Group, g: &Element) -> String {
    group.format_element(g).unwrap_or_else(|_| g.key())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Serialises `cert` with its report and routes the JSON, the summary and
/// the trace sidecar according to `output`.
fn emit(
    out: &mut dyn Write,
    output: &OutputArgs,
    cert: &Certificate,
    report: &VerificationReport,
    summary: &str,
    traces: &[LpTrace],
) -> Result<()> {
    let json = to_json(cert, report)?;
    if let Some(path) = &output.out {
        write_file(path, &json)?;
    }
    if let Some(path) = &output.trace {
        write_file(path, &LpTrace::render(traces))?;
    }
    let text = if output.json { json } else { summary.to_string() };
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn print(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn report_lines(report: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "verification: {} at {} level",
        if report.passed { "passed" } else { "FAILED" },
        report.level.as_str()
    );
    for failure in &report.failures {
        let _ = writeln!(s, "  failure: {failure}");
    }
    s
}

fn outcome_code(cert: &Certificate, report: &VerificationReport) -> i32 {
    if !report.passed {
        EXIT_INCONCLUSIVE
    } else if cert.is_obstruction() {
        EXIT_OBSTRUCTION
    } else {
        EXIT_WITNESS
    }
}

/// Runs one parsed command, writing human or JSON output to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let config = match &cli.config {
        Some(path) => Config::parse(&read_file(path)?)?,
        None => Config::default(),
    };
    let cx = Context {
        config,
        cap: cap_from_env()?,
    };
    match cli.command {
        Command::Groups => groups(&cx, out),
        Command::Growth { group, radius } => growth(&cx, &group, radius, out),
        Command::Ball { group, radius } => ball_cmd(&cx, &group, radius, out),
        Command::Alternative {
            query,
            structural,
            output,
        } => alternative(&cx, &query, structural, &output, out),
        Command::Ratio {
            query,
            epsilon,
            one_sided,
            output,
        } => ratio(&cx, &query, &epsilon, !one_sided, &output, out),
        Command::Reiter { query, epsilon, output } => reiter(&cx, &query, &epsilon, &output, out),
        Command::Jenkins {
            group,
            epsilon,
            radius,
            base,
            output,
        } => jenkins(&cx, &group, &epsilon, radius, base.as_deref(), &output, out),
        Command::MooreGap {
            group,
            f,
            translates,
            window,
            output,
        } => moore(&cx, &group, &f, &translates, window, &output, out),
        Command::Freeness {
            group,
            pair,
            depth,
            limit,
            output,
        } => freeness(&cx, &group, pair.as_deref(), depth, limit, &output, out),
        Command::ViolationVerify { cert, structural, depth } => violation_verify(&cx, &cert, structural, depth, out),
        Command::Transport {
            cert,
            target,
            embedding,
            output,
        } => transport(&cx, &cert, &target, &embedding, &output, out),
        Command::Verify { cert, p } => verify(&cx, &cert, p, out),
    }
}

fn groups(cx: &Context, out: &mut dyn Write) -> Result<i32> {
    let mut s = String::from("catalog:\n");
    let catalog = [
        ("Z^d", "Z^2", "integer lattice"),
        ("F<k>", "F2", "free group"),
        ("H3", "H3", "integer Heisenberg group"),
        ("LL", "LL", "lamplighter Z/2 wr Z"),
        ("BS1_<m>", "BS1_2", "Baumslag-Solitar BS(1,m) as affine maps"),
        ("Dinf", "Dinf", "infinite dihedral group as 2x2 matrices"),
        ("prod(<G>,<H>)", "prod(F2,Z)", "direct product"),
        ("mat:[...]", "mat:[[[2,0],[0,1/2]]]", "group generated by rational matrices"),
    ];
    for (pattern, example, about) in catalog {
        let g = cx.group(example)?;
        let names: Vec<String> = g.named_generators().into_iter().map(|(n, _)| n).collect();
        let _ = writeln!(s, "  {pattern:<14} {about}; e.g. {example} with generators {}", names.join(","));
    }
    if !cx.config.groups.is_empty() {
        s.push_str("configured:\n");
        for name in cx.config.groups.keys() {
            let g = cx.group(name)?;
            let _ = writeln!(s, "  {name:<14} {}", g.spec());
        }
    }
    print(out, &s)?;
    Ok(EXIT_WITNESS)
}

fn growth(cx: &Context, args: &GroupArgs, radius: usize, out: &mut dyn Write) -> Result<i32> {
    let group = cx.group(&args.group)?;
    let gens = cx.gens(&group, args)?;
    let report = growth_report(&group, &gens, radius, cx.cap)?;
    let mut s = format!("{:>3} {:>12} {:>12} {:>24}\n", "n", "|B_n|", "|S^n|", "|B_n|/|B_n-1|");
    for (n, size) in report.sizes.iter().enumerate() {
        let ratio = if n == 0 {
            "-".to_string()
        } else {
            rational::format(&report.ratios[n - 1])
        };
        let product = report
            .product_sizes
            .get(n)
            .map_or("-".to_string(), |p| p.to_string());
        let _ = writeln!(s, "{n:>3} {size:>12} {product:>12} {ratio:>24}");
    }
    let _ = writeln!(s, "label: {}", report.label.as_str());
    if !report.complete {
        let _ = writeln!(s, "note: element cap reached; sequence is partial");
    }
    if let Some(last) = report.sizes.last() {
        let _ = writeln!(s, "|B_{}| = {}", report.sizes.len() - 1, last);
    }
    print(out, &s)?;
    Ok(if report.complete { EXIT_WITNESS } else { EXIT_INCONCLUSIVE })
}

fn ball_cmd(cx: &Context, args: &GroupArgs, radius: usize, out: &mut dyn Write) -> Result<i32> {
    let group = cx.group(&args.group)?;
    let gens = cx.gens(&group, args)?;
    let table = ball(&group, &gens, radius, cx.cap)?;
    let mut s = String::new();
    for (n, layer) in table.layers.iter().enumerate() {
        for g in layer {
            let _ = writeln!(s, "{n}\t{}", word(&group, g));
        }
    }
    let _ = writeln!(s, "|B_{radius}| = {}", table.len());
    print(out, &s)?;
    Ok(EXIT_WITNESS)
}

fn alternative(cx: &Context, args: &QueryArgs, structural: bool, output: &OutputArgs, out: &mut dyn Write) -> Result<i32> {
    let (f, q) = cx.query(args, rational::one())?;
    let outcome = windowed_alternative(&f, &q, cx.cap)?;
    let group = f.group().clone();
    let mut summary = String::new();
    let (cert, code) = match outcome.branch {
        AlternativeBranch::Witness(w) => {
            let _ = writeln!(summary, "witness: u with {} support points", w.u.len());
            for (x, v) in w.u.entries() {
                let _ = writeln!(summary, "  u({}) = {}", word(&group, x), rational::format(v));
            }
            (Certificate::Ratio(w), EXIT_WITNESS)
        }
        AlternativeBranch::Violation(mut v) => {
            let mut upgraded = false;
            if f.is_structural() {
                let depth = q.window_radius.max(MIN_STRUCTURAL_DEPTH);
                if let Ok(r) = structural_verify_semigroup_violation(&v, depth, cx.cap) {
                    if r.passed {
                        v.level = Level::Structural;
                        upgraded = true;
                    }
                }
            }
            let _ = writeln!(summary, "violation ({} level):", v.level.as_str());
            for (t, g) in &v.items {
                let _ = writeln!(summary, "  {} * {}", rational::format(t), word(&group, g));
            }
            let code = if structural && !upgraded {
                let _ = writeln!(summary, "structural upgrade unavailable");
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OBSTRUCTION
            };
            (Certificate::Violation(v), code)
        }
    };
    let report = verify_with_cap(&cert, q.window_radius, cx.cap)?;
    summary.push_str(&report_lines(&report));
    emit(out, output, &cert, &report, &summary, &outcome.traces)?;
    Ok(if report.passed { code } else { EXIT_INCONCLUSIVE })
}

fn ratio(
    cx: &Context,
    args: &QueryArgs,
    epsilon: &str,
    two_sided: bool,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let epsilon = parse_rational(epsilon)?;
    let (f, q) = cx.query(args, epsilon.clone())?;
    let result = ratio_defect_lp(&f, &q, two_sided, cx.cap)?;
    let mut summary = format!(
        "{} ratio defect on B_{}: {}\n",
        if two_sided { "two-sided" } else { "one-sided" },
        q.window_radius,
        rational::format(&result.lambda)
    );
    let mut witness = result.witness;
    let within = result.lambda <= epsilon;
    if within {
        witness.epsilon = epsilon;
    }
    let cert = Certificate::Ratio(witness);
    let report = verify_with_cap(&cert, q.window_radius, cx.cap)?;
    summary.push_str(&report_lines(&report));
    if !within {
        summary.push_str("defect exceeds epsilon; certificate records the optimum instead\n");
    }
    emit(out, output, &cert, &report, &summary, &result.traces)?;
    Ok(if within && report.passed { EXIT_WITNESS } else { EXIT_INCONCLUSIVE })
}

fn reiter(cx: &Context, args: &QueryArgs, epsilon: &str, output: &OutputArgs, out: &mut dyn Write) -> Result<i32> {
    let epsilon = parse_rational(epsilon)?;
    let (f, q) = cx.query(args, epsilon.clone())?;
    let result = reiter_defect_lp(&f, &q, cx.cap)?;
    let mut summary = format!("Reiter defect on B_{}: {}\n", q.window_radius, rational::format(&result.epsilon));
    let mut witness = result.witness;
    let within = result.epsilon <= epsilon;
    if within {
        witness.epsilon = epsilon;
    }
    let cert = Certificate::Reiter(witness);
    let report = verify_with_cap(&cert, q.window_radius, cx.cap)?;
    summary.push_str(&report_lines(&report));
    if !within {
        summary.push_str("defect exceeds epsilon; certificate records the optimum instead\n");
    }
    emit(out, output, &cert, &report, &summary, &result.traces)?;
    Ok(if within && report.passed { EXIT_WITNESS } else { EXIT_INCONCLUSIVE })
}

fn jenkins(
    cx: &Context,
    args: &GroupArgs,
    epsilon: &str,
    radius: usize,
    base: Option<&str>,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let group = cx.group(&args.group)?;
    let gens = cx.gens(&group, args)?;
    let epsilon = parse_rational(epsilon)?;
    let spec = match base {
        Some(b) => JenkinsSpec::with_base(&group, &gens, epsilon, parse_rational(b)?, radius)?,
        None => JenkinsSpec::new(&group, &gens, epsilon, radius)?,
    };
    let report = jenkins_weight(&spec, cx.cap)?;
    let mut summary = format!(
        "r = {}\nsupport: {} points\ninterior points checked: {} (left and right), failures: {}\n",
        rational::format(&spec.base),
        report.weight.len(),
        report.interior_points,
        report.pointwise_failures.len()
    );
    for failure in &report.pointwise_failures {
        let _ = writeln!(
            summary,
            "  {} step {} at {}",
            if failure.right { "right" } else { "left" },
            word(&group, &failure.step),
            word(&group, &failure.point)
        );
    }
    let _ = writeln!(summary, "measured Reiter defect: {}", rational::format(report.defect()));
    summary.push_str(&report_lines(&report.verification));
    let cert = Certificate::Reiter(report.witness.clone());
    emit(out, output, &cert, &report.verification, &summary, &[])?;
    Ok(if report.verification.passed && report.pointwise_failures.is_empty() {
        EXIT_WITNESS
    } else {
        EXIT_INCONCLUSIVE
    })
}

fn moore(
    cx: &Context,
    args: &GroupArgs,
    f: &str,
    translates: &str,
    window: usize,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let group = cx.group(&args.group)?;
    let e = cx.function(f, &group)?;
    let translates = elements(&group, translates)?;
    if args.gens.is_some() {
        return Err(CliError::Usage("moore-gap windows use the default generators".into()));
    }
    let table = ball(&group, &group.default_generators(), window, cx.cap)?;
    let outcome = moore_gap(&e, &translates, &table)?;
    let probe = outcome.probe;
    let mut summary = format!("windowed distance on B_{window}: {}\n", rational::format(&probe.value));
    for (g, t) in probe.translates.iter().zip(&probe.coefficients) {
        let _ = writeln!(summary, "  t[{}] = {}", word(&group, g), rational::format(t));
    }
    let cert = Certificate::Moore(probe);
    let report = verify_with_cap(&cert, window, cx.cap)?;
    summary.push_str(&report_lines(&report));
    emit(out, output, &cert, &report, &summary, &outcome.traces)?;
    Ok(outcome_code(&cert, &report))
}

fn freeness(
    cx: &Context,
    args: &GroupArgs,
    pair: Option<&str>,
    depth: usize,
    limit: usize,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let group = cx.group(&args.group)?;
    let Some(pair) = pair else {
        let gens = cx.gens(&group, args)?;
        let found = find_free_pairs(&group, &gens, depth, limit, cx.cap)?;
        let mut s = format!("{} pair(s) free to depth {depth}\n", found.len());
        for w in &found {
            let _ = writeln!(s, "  ({}, {})", word(&group, &w.a), word(&group, &w.b));
        }
        print(out, &s)?;
        return Ok(if found.is_empty() { EXIT_INCONCLUSIVE } else { EXIT_OBSTRUCTION });
    };
    let pair = elements(&group, pair)?;
    let [a, b] = pair.as_slice() else {
        return Err(CliError::Usage("--pair takes exactly two elements".into()));
    };
    match free_to_depth(&group, a, b, depth, cx.cap)? {
        FreenessOutcome::Free(w) => {
            let cert = Certificate::Freeness(w);
            let report = verify_with_cap(&cert, 0, cx.cap)?;
            let mut summary = format!("all positive words of length <= {depth} are distinct\n");
            summary.push_str(&report_lines(&report));
            emit(out, output, &cert, &report, &summary, &[])?;
            Ok(outcome_code(&cert, &report))
        }
        FreenessOutcome::Collision { first, second } => {
            print(
                out,
                &format!("collision: {} = {}\n", spell_letters(&first), spell_letters(&second)),
            )?;
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn load(cx: &Context, path: &Path) -> Result<(Certificate, VerificationReport)> {
    Ok(verify_json(&read_file(path)?, &cx.config, cx.cap)?)
}

fn violation_verify(cx: &Context, path: &Path, structural: bool, depth: usize, out: &mut dyn Write) -> Result<i32> {
    let (cert, mut report) = load(cx, path)?;
    let Certificate::Violation(v) = &cert else {
        return Err(CliError::Usage(format!("{} holds a {}, not a violation", path.display(), cert.kind())));
    };
    let mut s = report_lines(&report);
    if structural && report.passed && report.level != Level::Structural {
        match structural_verify_semigroup_violation(v, depth.max(MIN_STRUCTURAL_DEPTH), cx.cap) {
            Ok(r) => {
                let _ = writeln!(s, "structural check: {}", if r.passed { "passed" } else { "FAILED" });
                for failure in &r.failures {
                    let _ = writeln!(s, "  failure: {failure}");
                }
                report.passed &= r.passed;
                report.level = Level::Structural;
            }
            Err(e) => {
                let _ = writeln!(s, "structural check unavailable: {e}");
                report.passed = false;
            }
        }
    }
    print(out, &s)?;
    Ok(if report.passed { EXIT_OBSTRUCTION } else { EXIT_INCONCLUSIVE })
}

fn transport(
    cx: &Context,
    path: &Path,
    target: &str,
    embedding: &str,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let (cert, original) = load(cx, path)?;
    let target = cx.group(target)?;
    let (emb, rest) = Embedding::parse(embedding, &target)?;
    if !rest.is_empty() {
        return Err(CliError::Usage(format!("trailing input `{rest}` after embedding")));
    }
    let moved = transport_subgroup(&cert, &emb)?;
    let radius = original.window_radius.unwrap_or(0);
    let report = verify_with_cap(&moved, radius, cx.cap)?;
    let mut summary = format!("transported {} along {}\n", moved.kind(), emb.spec());
    summary.push_str(&report_lines(&report));
    emit(out, output, &moved, &report, &summary, &[])?;
    Ok(outcome_code(&moved, &report))
}

fn verify(cx: &Context, path: &Path, p: Option<u32>, out: &mut dyn Write) -> Result<i32> {
    let (cert, report) = load(cx, path)?;
    let mut s = format!("{}: ", cert.kind());
    s.push_str(&report_lines(&report));
    if let Some(p) = p {
        let witness = match &cert {
            Certificate::Ratio(w) => Some((&w.u, &w.f, &w.set)),
            Certificate::Reiter(w) => Some((&w.u, &w.f, &w.set)),
            _ => None,
        };
        let Some((u, f, set)) = witness else {
            return Err(CliError::Usage("--p applies to ratio and Reiter witnesses".into()));
        };
        if p == 0 {
            return Err(CliError::Usage("--p must be positive".into()));
        }
        let group = f.group();
        for s_elem in set {
            let norm = u.translate(s_elem)?.weighted_norm(f, p)?;
            let _ = writeln!(s, "  l^{p} norm^{p} of ({})u: {}", word(group, s_elem), rational::format(&norm));
        }
    }
    print(out, &s)?;
    Ok(outcome_code(&cert, &report))
}

/// Parses arguments and runs; clap usage errors map to exit code 1.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_ERROR;
            }
            let _ = write!(out, "{e}");
            return EXIT_WITNESS;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
