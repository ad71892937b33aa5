//! Command-line front end for the `fano3` toolkit.
//!
//! Subcommands:
//!
//! * `euler` — Euler number of a complete-intersection threefold in a
//!   scroll, cross-checked against the two-divisor closed form;
//! * `links` — enumerate two-ray links by central genus and match them
//!   against the embedded classification table;
//! * `catalog` — dump the twelve-row classification table;
//! * `effcone` — cyclic wall configurations of the effective cone at
//!   Picard rank three;
//! * `castelnuovo` — the genus bound for irreducible nondegenerate curves;
//! * `quadrics` — node counting and skew-pencil classification for exact
//!   quadric inputs, seeded or from a JSON file;
//! * `classify` — rationality verdict for a two-divisor model.
//!
//! Exit codes: `0` success, `1` a mathematical cross-check failed (this
//! signals a bug, not bad input), `2` usage or parse error. All `--json`
//! output carries a `"schema": "fano3/1"` tag.

use std::fmt;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use fano3::catalog::{self, Generality};
use fano3::chow::{self, CISpec, DivisorClass};
use fano3::enumerate::{self, EffConeSolution, EffConeStatus, LinkRecord};
use fano3::expr::parse_chow_expr;
use fano3::lattice::{ContractionSignature, Rho1Target};
use fano3::quadrics::{
    self, gen_corank3_net, gen_skew_pencil, AlgebraicPoint, NodeReport, QuadraticForm,
    RankTwoLocus, SkewClassification, SkewPencil,
};
use fano3::rationality::{self, Verdict, VerdictStatus};

/// Version tag carried by every JSON document this binary emits.
const SCHEMA: &str = "fano3/1";

#[derive(Parser)]
#[command(
    name = "fano3",
    version,
    about = "Exact invariants of Gorenstein Fano threefolds",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler number of a complete intersection in a scroll over P^1.
    Euler(EulerArgs),
    /// Enumerate two-ray links by the genus of the central variety.
    Links(LinksArgs),
    /// Print the embedded twelve-row classification table.
    Catalog(CatalogArgs),
    /// Cyclic wall configurations of the effective cone at rank three.
    Effcone(CatalogArgs),
    /// Genus bound for an irreducible nondegenerate curve of degree m in P^r.
    Castelnuovo(CastelnuovoArgs),
    /// Exact computations on quadrics, from a seed or a JSON file.
    #[command(subcommand)]
    Quadrics(QuadricsMode),
    /// Rationality verdict for a two-divisor model in a rank-5 scroll.
    Classify(ModelArgs),
}

#[derive(Args)]
struct EulerArgs {
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct ModelArgs {
    /// Twists of the split bundle, comma-separated: a0,a1,...
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    bundle: Vec<i64>,
    /// Divisor classes cutting the threefold, comma-separated: 2M,2M-F,...
    #[arg(long, value_delimiter = ',', required = true)]
    divisors: Vec<String>,
    /// Emit JSON instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("scope").required(true).args(["genus", "all"])))]
struct LinksArgs {
    /// Genus of the central variety.
    #[arg(long)]
    genus: Option<i64>,
    /// Enumerate every admissible genus.
    #[arg(long)]
    all: bool,
    /// Emit JSON instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CatalogArgs {
    /// Emit JSON instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CastelnuovoArgs {
    /// Degree of the curve.
    m: i64,
    /// Dimension of the ambient projective space.
    r: i64,
    /// Emit JSON instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum QuadricsMode {
    /// Count the nodes of a net of quadrics on its vertex plane.
    Nodes(QuadricsArgs),
    /// Classify a pencil of antisymmetric 5x5 forms by its rank-2 members.
    Skew(QuadricsArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["file", "seed"])))]
struct QuadricsArgs {
    /// JSON input file (nodes: {"forms": [..3 forms..]}, skew: {"pencil": {"a": .., "b": ..}}).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Generate a pseudorandom instance from this seed instead.
    #[arg(long)]
    seed: Option<u64>,
    /// Emit JSON instead of plain text.
    #[arg(long)]
    json: bool,
}

/// A cross-check that can only fail through a bug, never through bad input.
/// Mapped to exit code 1 at top level.
#[derive(Debug)]
struct Inconsistency(String);

impl fmt::Display for Inconsistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "internal inconsistency: {}", self.0)
    }
}

impl std::error::Error for Inconsistency {}

fn inconsistency(message: String) -> anyhow::Error {
    anyhow::Error::new(Inconsistency(message))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            // Tolerate a closed pipe (e.g. `fano3 catalog | head`).
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(output.as_bytes()).and_then(|()| stdout.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: writing to stdout: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(error) => {
            eprintln!("error: {error:#}");
            if error.is::<Inconsistency>() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

/// Executes one subcommand and returns the full stdout text.
fn run(command: Command) -> anyhow::Result<String> {
    match command {
        Command::Euler(args) => cmd_euler(&args.model),
        Command::Links(args) => cmd_links(&args),
        Command::Catalog(args) => cmd_catalog(&args),
        Command::Effcone(args) => cmd_effcone(&args),
        Command::Castelnuovo(args) => cmd_castelnuovo(&args),
        Command::Quadrics(mode) => cmd_quadrics(&mode),
        Command::Classify(args) => cmd_classify(&args),
    }
}

fn render_json(value: &serde_json::Value) -> anyhow::Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(value)?))
}

// ---------------------------------------------------------------------------
// euler / classify
// ---------------------------------------------------------------------------

/// Parses each divisor expression and requires it to be linear in M, F.
fn parse_divisors(texts: &[String]) -> anyhow::Result<(Vec<String>, Vec<DivisorClass>)> {
    let mut canonical = Vec::new();
    let mut classes = Vec::new();
    for text in texts {
        let expr =
            parse_chow_expr(text).with_context(|| format!("in divisor {text:?}"))?;
        let class = expr.to_divisor_class().ok_or_else(|| {
            anyhow::anyhow!("divisor {text:?} is not linear in M and F")
        })?;
        canonical.push(expr.to_string());
        classes.push(class);
    }
    Ok((canonical, classes))
}

fn build_ci(model: &ModelArgs) -> anyhow::Result<(Vec<String>, CISpec)> {
    let (canonical, classes) = parse_divisors(&model.divisors)?;
    let ci = CISpec::new(&model.bundle, &classes)?;
    Ok((canonical, ci))
}

fn cmd_euler(model: &ModelArgs) -> anyhow::Result<String> {
    let (divisors, ci) = build_ci(model)?;
    let eu = chow::euler_ci(&ci)?;
    let applies = chow::closed_form_applies(&ci);
    if applies {
        let closed = chow::euler_closed_form(ci.ambient().sum_twists(), ci.sum_divisor_f());
        if closed.to_string() != eu.to_string() {
            return Err(inconsistency(format!(
                "Eu={eu} from the Chern computation, but the closed form gives {closed}"
            )));
        }
    }
    if model.json {
        render_json(&json!({
            "schema": SCHEMA,
            "bundle": model.bundle,
            "divisors": divisors,
            "eu": eu.to_string(),
            "closed_form_applies": applies,
        }))
    } else if applies {
        Ok(format!("Eu={eu} (closed form agrees)\n"))
    } else {
        Ok(format!("Eu={eu}\n"))
    }
}

fn verdict_text(status: VerdictStatus) -> &'static str {
    match status {
        VerdictStatus::Rational => "rational",
        VerdictStatus::Nonrational => "nonrational",
        VerdictStatus::Undetermined => "undetermined",
    }
}

fn cmd_classify(model: &ModelArgs) -> anyhow::Result<String> {
    let (divisors, ci) = build_ci(model)?;
    let verdict: Verdict = rationality::classify_ci_model(&ci)?;
    if model.json {
        let mut doc = serde_json::to_value(&verdict)?;
        let map = doc.as_object_mut().expect("verdict serializes to an object");
        map.insert("schema".into(), json!(SCHEMA));
        map.insert("bundle".into(), json!(model.bundle));
        map.insert("divisors".into(), json!(divisors));
        render_json(&doc)
    } else {
        Ok(format!(
            "verdict: {}\nrule: {}\n",
            verdict_text(verdict.status),
            verdict.rule
        ))
    }
}

// ---------------------------------------------------------------------------
// links / catalog
// ---------------------------------------------------------------------------

fn target_text(t: &Rho1Target) -> String {
    if t.iota == 2 {
        format!("iota 2, deg {}", t.degree_or_genus)
    } else {
        format!("iota 1, genus {}", t.degree_or_genus)
    }
}

fn signature_text(sig: &ContractionSignature) -> String {
    match sig {
        ContractionSignature::B1 { target, deg, pa } => {
            format!("B1(curve deg {deg}, pa {pa}; Y: {})", target_text(target))
        }
        ContractionSignature::B2 { target } => format!("B2(Y: {})", target_text(target)),
        ContractionSignature::B3B4 { target } => format!("B3B4(Y: {})", target_text(target)),
        ContractionSignature::B5 => "B5".to_string(),
        ContractionSignature::C1 { d } => format!("C1(disc deg {d})"),
        ContractionSignature::C2 => "C2".to_string(),
        ContractionSignature::D1 { d } => format!("D1(deg {d})"),
        ContractionSignature::D2 => "D2".to_string(),
        ContractionSignature::D3 => "D3".to_string(),
    }
}

fn generality_text(g: Generality) -> &'static str {
    match g {
        Generality::General => "general",
        Generality::All => "all",
    }
}

fn cmd_links(args: &LinksArgs) -> anyhow::Result<String> {
    let records: Vec<LinkRecord> = if args.all {
        enumerate::enumerate_all_links()?
    } else {
        enumerate::enumerate_links(args.genus.expect("clap enforces the scope group"))?
    };
    for record in &records {
        if record.row.is_none() {
            return Err(inconsistency(format!(
                "a link at genus {} ({} / {}) matches no row of the classification table",
                record.genus,
                signature_text(&record.left),
                signature_text(&record.right),
            )));
        }
    }
    if args.json {
        return render_json(&json!({ "schema": SCHEMA, "links": records }));
    }
    let mut out = String::new();
    for r in &records {
        writeln!(
            out,
            "g={}  row {:>2}  {:<41} <-> {:<41}  nodes {:>2}  nonrational: {}",
            r.genus,
            r.row.expect("checked above"),
            signature_text(&r.left),
            signature_text(&r.right),
            r.nodes.expect("present whenever a row matches"),
            generality_text(r.nonrational.expect("present whenever a row matches")),
        )?;
    }
    Ok(out)
}

fn cmd_catalog(args: &CatalogArgs) -> anyhow::Result<String> {
    let rows = catalog::catalog();
    if args.json {
        return render_json(&json!({ "schema": SCHEMA, "rows": rows }));
    }
    let mut out = String::new();
    for row in &rows {
        writeln!(
            out,
            "row {:>2}  g={}  nodes {:>2}  nonrational: {:<7}  {}",
            row.row,
            row.genus,
            row.nodes,
            generality_text(row.nonrational),
            if row.symmetric { "symmetric" } else { "non-symmetric" },
        )?;
        writeln!(out, "        left:  {}", row.left_desc)?;
        writeln!(out, "        right: {}", row.right_desc)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// effcone / castelnuovo
// ---------------------------------------------------------------------------

fn status_text(status: EffConeStatus) -> &'static str {
    match status {
        EffConeStatus::Realized => "realized",
        EffConeStatus::ExcludedByPairing => "excluded by the triple-product pairing",
        EffConeStatus::ExtraArithmetic => "extra arithmetic solution",
    }
}

fn cmd_effcone(args: &CatalogArgs) -> anyhow::Result<String> {
    let solutions: Vec<EffConeSolution> = enumerate::eff_cone_solve();
    if args.json {
        return render_json(&json!({ "schema": SCHEMA, "solutions": solutions }));
    }
    let mut out = String::new();
    for s in &solutions {
        writeln!(
            out,
            "g={}  r={}  degrees {:?}  c {:?}  status: {}",
            s.g,
            s.r,
            s.degrees,
            s.c_seq,
            status_text(s.status),
        )?;
    }
    let extras = solutions
        .iter()
        .filter(|s| s.status == EffConeStatus::ExtraArithmetic)
        .count();
    if extras > 0 {
        writeln!(
            out,
            "note: {extras} arithmetic solution(s) neither realized nor excluded; \
             listed above, not suppressed"
        )?;
    }
    Ok(out)
}

fn cmd_castelnuovo(args: &CastelnuovoArgs) -> anyhow::Result<String> {
    let bound = enumerate::castelnuovo(args.m, args.r)
        .with_context(|| format!("pi({},{}) is undefined", args.m, args.r))?;
    if args.json {
        render_json(&json!({
            "schema": SCHEMA,
            "m": args.m,
            "r": args.r,
            "bound": bound,
        }))
    } else {
        Ok(format!("pi({},{}) = {}\n", args.m, args.r, bound))
    }
}

// ---------------------------------------------------------------------------
// quadrics
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct NodesInput {
    forms: Vec<QuadraticForm>,
}

#[derive(Deserialize)]
struct SkewInput {
    pencil: SkewPencil,
}

fn read_input<T: serde::de::DeserializeOwned>(path: &PathBuf) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// On generated instances a failure is a bug; on user files it is bad input.
fn quadrics_failure(generated: bool, error: quadrics::QuadricsError) -> anyhow::Error {
    if generated {
        inconsistency(format!("a generated instance was rejected: {error}"))
    } else {
        error.into()
    }
}

fn point_line(index: usize, p: &AlgebraicPoint) -> String {
    format!(
        "point {index}: multiplicity {}, field degree {}, certified node: {}, minpoly {} (root #{})",
        p.multiplicity(),
        p.field_degree(),
        p.certified(),
        p.minpoly().render("t"),
        p.root_index(),
    )
}

fn cmd_quadrics(mode: &QuadricsMode) -> anyhow::Result<String> {
    match mode {
        QuadricsMode::Nodes(args) => {
            let (forms, seed) = match (&args.file, args.seed) {
                (Some(path), None) => {
                    let input: NodesInput = read_input(path)?;
                    anyhow::ensure!(
                        input.forms.len() == 3,
                        "expected exactly 3 forms, got {}",
                        input.forms.len()
                    );
                    (input.forms, None)
                }
                (None, Some(seed)) => {
                    let (q1, q2, q3) = gen_corank3_net(seed)
                        .map_err(|e| quadrics_failure(true, e))?;
                    (vec![q1, q2, q3], Some(seed))
                }
                _ => unreachable!("clap enforces the source group"),
            };
            let report: NodeReport =
                quadrics::nodes_on_vertex_plane(&forms[0], &forms[1], &forms[2])
                    .map_err(|e| quadrics_failure(seed.is_some(), e))?;
            if args.json {
                return render_json(&json!({
                    "schema": SCHEMA,
                    "mode": "nodes",
                    "seed": seed,
                    "forms": forms,
                    "report": report,
                }));
            }
            let mut out = String::new();
            writeln!(
                out,
                "distinct points: {}  total multiplicity: {}  all nodes certified: {}",
                report.distinct_count(),
                report.total_multiplicity(),
                report.all_nodes_certified(),
            )?;
            for (i, p) in report.points().iter().enumerate() {
                writeln!(out, "{}", point_line(i, p))?;
            }
            Ok(out)
        }
        QuadricsMode::Skew(args) => {
            let (pencil, seed) = match (&args.file, args.seed) {
                (Some(path), None) => {
                    let input: SkewInput = read_input(path)?;
                    (input.pencil, None)
                }
                (None, Some(seed)) => (
                    gen_skew_pencil(seed).map_err(|e| quadrics_failure(true, e))?,
                    Some(seed),
                ),
                _ => unreachable!("clap enforces the source group"),
            };
            let classification = quadrics::skew_pencil_classify(&pencil)
                .map_err(|e| quadrics_failure(seed.is_some(), e))?;
            if args.json {
                return render_json(&json!({
                    "schema": SCHEMA,
                    "mode": "skew",
                    "seed": seed,
                    "pencil": pencil,
                    "classification": classification,
                }));
            }
            Ok(format!("{}\n", skew_text(&classification)))
        }
    }
}

fn skew_text(c: &SkewClassification) -> String {
    match c {
        SkewClassification::AllSmooth => {
            "every member of the pencil has rank 4".to_string()
        }
        SkewClassification::OneSingularMember { member, .. } => format!(
            "one rank-2 member, at (s:t) = ({}:{})",
            member.s, member.t
        ),
        SkewClassification::TwoSingularMembers { locus, skew_lines } => match locus {
            RankTwoLocus::SplitPair { members, .. } => format!(
                "two rank-2 members, at (s:t) = ({}:{}) and ({}:{}); singular lines skew: {}",
                members[0].s, members[0].t, members[1].s, members[1].t, skew_lines
            ),
            RankTwoLocus::ConjugatePair { minpoly } => format!(
                "two conjugate rank-2 members with minimal polynomial {}; singular lines skew: {}",
                minpoly.render("x"),
                skew_lines
            ),
        },
        SkewClassification::ContainedInDual => {
            "the rank-2 locus is the whole pencil (contained in the dual)".to_string()
        }
    }
}
