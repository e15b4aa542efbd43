use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use levgraph::graph::{geodesic_closed_form, SpecExport, DEFAULT_VERTEX_BUDGET};
use levgraph::resolving::{Embedder, EmbeddingExport};
use levgraph::symmetry::exact_determining_number;
use levgraph::verify::{self, Suite};
use levgraph::{
    build_resolving_set, construct_theorem_group, edit_distance_dp, enumerate_automorphisms,
    exact_metric_dimension, hamming_distance, GraphSpec, LevGraph, LevString,
};

#[derive(Parser)]
#[command(
    name = "levgraph",
    version,
    about = "Levenshtein graph construction and analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Refuse to build graphs with more vertices than this.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_BUDGET)]
    max_vertices: usize,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args, Clone, Copy)]
struct SpecArgs {
    /// Alphabet size.
    #[arg(long)]
    a: u32,
    /// Shortest string length.
    #[arg(long)]
    k1: usize,
    /// Longest string length.
    #[arg(long)]
    k2: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph and export it.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Edit, Hamming and geodesic distance between two strings.
    Dist {
        u: String,
        v: String,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Print the explicit resolving set.
    Resolve {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Distance vectors to the resolving set.
    Embed {
        strings: Vec<String>,
        /// Embed every vertex.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Run oracle cross-checks.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Enumerate automorphisms.
    Auto {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Exact metric dimension.
    Dim {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Exact determining number.
    Det {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Geodesic,
    Resolve,
    Auto,
    Det,
    All,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<levgraph::Error> for Failure {
    fn from(e: levgraph::Error) -> Self {
        match e {
            levgraph::Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            levgraph::Error::ResourceLimit { .. } => Failure::Check(e.to_string()),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

type CmdResult = Result<Output, Failure>;

/// Command output plus whether the command itself reported a failure.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn unsupported(cmd: &str, format: Format) -> Failure {
    let name = format.to_possible_value().unwrap().get_name().to_string();
    Failure::Usage(format!("{cmd} does not support --format {name}"))
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

impl SpecArgs {
    fn spec(self) -> Result<GraphSpec, Failure> {
        Ok(GraphSpec::new(self.k1, self.k2, self.a)?)
    }

    fn member(self, spec: &GraphSpec, text: &str) -> Result<LevString, Failure> {
        let w = LevString::parse_literal(text, spec.a)?;
        spec.check_member(&w)?;
        Ok(w)
    }
}

struct Ctx {
    format: Option<Format>,
    max_vertices: usize,
}

impl Ctx {
    fn graph(&self, spec: GraphSpec) -> Result<LevGraph, Failure> {
        Ok(LevGraph::build_with_budget(spec, self.max_vertices)?)
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn cmd_gen(ctx: &Ctx, args: SpecArgs) -> CmdResult {
    let g = ctx.graph(args.spec()?)?;
    let text = match ctx.format(Format::Dot) {
        Format::Dot => g.to_dot(),
        Format::Json => to_json(&g.to_export()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["source", "target"])?;
            for (u, v) in g.edges() {
                w.write_record([g.literal(u), g.literal(v)])?;
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
        }
        Format::Text => {
            let mut out = format!(
                "{}: {} vertices, {} edges\n",
                g.spec(),
                g.vertex_count(),
                g.edge_count()
            );
            for u in 0..g.vertex_count() {
                let nbrs: Vec<String> = g
                    .neighbors(u)
                    .iter()
                    .map(|&v| g.literal(v as usize))
                    .collect();
                let _ = writeln!(out, "{}: {}", g.literal(u), nbrs.join(" "));
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn cmd_dist(ctx: &Ctx, u: &str, v: &str, args: SpecArgs) -> CmdResult {
    let spec = args.spec()?;
    let (u, v) = (args.member(&spec, u)?, args.member(&spec, v)?);
    let edit = edit_distance_dp(&u, &v);
    let hamming = (u.len() == v.len()).then(|| hamming_distance(&u, &v).expect("equal lengths"));
    let geodesic = geodesic_closed_form(&spec, &u, &v)?;
    let text = match ctx.format(Format::Text) {
        Format::Text => {
            let mut out = format!("edit = {edit}\n");
            if let Some(h) = hamming {
                let _ = writeln!(out, "hamming = {h}");
            }
            let _ = writeln!(out, "geodesic = {geodesic}");
            out
        }
        Format::Json => to_json(&json!({
            "format_version": 1,
            "spec": SpecExport::from(&spec),
            "u": u.to_literal(spec.a),
            "v": v.to_literal(spec.a),
            "edit": edit,
            "hamming": hamming,
            "geodesic": geodesic,
        })),
        f => return Err(unsupported("dist", f)),
    };
    Ok(Output::ok(text))
}

fn cmd_resolve(ctx: &Ctx, args: SpecArgs) -> CmdResult {
    let spec = args.spec()?;
    let set = build_resolving_set(&spec);
    let rows: Vec<(String, String)> = set
        .literals()
        .into_iter()
        .zip(set.provenance())
        .map(|(lit, prov)| {
            let tags: Vec<String> = prov.iter().map(|p| p.to_string()).collect();
            (lit, tags.join(", "))
        })
        .collect();
    let text = match ctx.format(Format::Text) {
        Format::Text => {
            let mut out = String::new();
            for (lit, tags) in &rows {
                let _ = writeln!(out, "{lit}  # {tags}");
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["string", "provenance"])?;
            for (lit, tags) in &rows {
                w.write_record([lit, tags])?;
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
        }
        Format::Json => {
            let nodes: Vec<Value> = set
                .literals()
                .into_iter()
                .zip(set.provenance())
                .map(|(lit, prov)| json!({ "string": lit, "provenance": prov }))
                .collect();
            to_json(&json!({
                "format_version": 1,
                "spec": SpecExport::from(&spec),
                "emitted": set.raw_len(),
                "nodes": nodes,
            }))
        }
        f => return Err(unsupported("resolve", f)),
    };
    Ok(Output::ok(text))
}

fn cmd_embed(ctx: &Ctx, inputs: &[String], all: bool, args: SpecArgs) -> CmdResult {
    let spec = args.spec()?;
    let strings: Vec<LevString> = if all {
        if !inputs.is_empty() {
            return Err(Failure::Usage("--all takes no strings".into()));
        }
        let n = spec.vertex_count();
        if n > ctx.max_vertices as u128 {
            return Err(levgraph::Error::ResourceLimit {
                what: "vertices",
                count: n,
                limit: ctx.max_vertices as u128,
            }
            .into());
        }
        spec.strings().collect()
    } else {
        if inputs.is_empty() {
            return Err(Failure::Usage("give strings to embed or --all".into()));
        }
        inputs
            .iter()
            .map(|t| args.member(&spec, t))
            .collect::<Result<_, _>>()?
    };
    let set = build_resolving_set(&spec);
    let embedder = Embedder::new(&set);
    let rows: Vec<_> = strings
        .into_iter()
        .map(|w| {
            let e = embedder.embed(&w)?;
            Ok((w, e))
        })
        .collect::<Result<_, levgraph::Error>>()?;

    let text = match ctx.format(Format::Json) {
        Format::Json => to_json(&EmbeddingExport::new(&set, &rows)),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["string".to_string()];
            header.extend(set.literals());
            w.write_record(&header)?;
            for (s, e) in &rows {
                let mut record = vec![s.to_literal(spec.a)];
                record.extend(e.0.iter().map(|x| x.to_string()));
                w.write_record(&record)?;
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
        }
        Format::Text => {
            let mut out = String::new();
            for (s, e) in &rows {
                let coords: Vec<String> = e.0.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "{}: ({})", s.to_literal(spec.a), coords.join(", "));
            }
            out
        }
        f => return Err(unsupported("embed", f)),
    };
    Ok(Output::ok(text))
}

fn cmd_verify(ctx: &Ctx, suite: SuiteArg, args: SpecArgs) -> CmdResult {
    let spec = args.spec()?;
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Geodesic => vec![Suite::Geodesic],
        SuiteArg::Resolve => vec![Suite::Resolve],
        SuiteArg::Auto => vec![Suite::Auto],
        SuiteArg::Det => vec![Suite::Det],
    };
    let report = verify::run(&spec, &suites, ctx.max_vertices)?;
    let ok = report.passed();
    let text = match ctx.format(Format::Text) {
        Format::Text => {
            let mut out = String::new();
            for check in &report.checks {
                let _ = writeln!(out, "{check}");
            }
            let failed = report
                .checks
                .iter()
                .filter(|c| matches!(c.status, verify::Status::Fail(_)))
                .count();
            let _ = writeln!(
                out,
                "{spec}: {} checks, {failed} failed",
                report.checks.len()
            );
            out
        }
        Format::Json => to_json(&json!({
            "format_version": 1,
            "spec": SpecExport::from(&spec),
            "passed": ok,
            "checks": report.checks,
        })),
        f => return Err(unsupported("verify", f)),
    };
    Ok(Output { text, ok })
}

fn cmd_auto(ctx: &Ctx, args: SpecArgs) -> CmdResult {
    let spec = args.spec()?;
    let g = ctx.graph(spec)?;
    let perms = enumerate_automorphisms(&g)?;
    let structural = if spec.k1 != spec.k2 && spec.k2 >= 2 {
        Some(construct_theorem_group(spec.a))
    } else {
        None
    };
    let text = match ctx.format(Format::Text) {
        Format::Text => {
            let mut out = format!("{spec}: |Aut| = {}\n", perms.len());
            if let Some(group) = &structural {
                for phi in group {
                    let xi: Vec<String> = phi.xi.iter().map(|s| s.to_string()).collect();
                    let _ = writeln!(
                        out,
                        "xi = [{}]{}",
                        xi.join(" "),
                        if phi.reversed { ", reversed" } else { "" }
                    );
                }
            } else {
                for p in &perms {
                    let moved: Vec<String> = (0..g.vertex_count())
                        .filter(|&r| p.image(r) != r)
                        .map(|r| format!("{} -> {}", g.literal(r), g.literal(p.image(r))))
                        .collect();
                    let line = if moved.is_empty() {
                        "identity".to_string()
                    } else {
                        moved.join(", ")
                    };
                    let _ = writeln!(out, "{line}");
                }
            }
            out
        }
        Format::Json => {
            let nodes: Vec<String> = (0..g.vertex_count()).map(|r| g.literal(r)).collect();
            to_json(&json!({
                "format_version": 1,
                "spec": SpecExport::from(&spec),
                "count": perms.len(),
                "nodes": nodes,
                "structural": structural,
                "explicit": perms,
            }))
        }
        f => return Err(unsupported("auto", f)),
    };
    Ok(Output::ok(text))
}

fn witness_literals(spec: &GraphSpec, witness: &[LevString]) -> Vec<String> {
    witness.iter().map(|w| w.to_literal(spec.a)).collect()
}

fn report_value(
    ctx: &Ctx,
    cmd: &str,
    label: &str,
    spec: &GraphSpec,
    value: usize,
    witness: &[String],
) -> CmdResult {
    let text = match ctx.format(Format::Text) {
        Format::Text => format!("{label} = {value}\nwitness: {}\n", witness.join(" ")),
        Format::Json => to_json(&json!({
            "format_version": 1,
            "spec": SpecExport::from(spec),
            "value": value,
            "witness": witness,
        })),
        f => return Err(unsupported(cmd, f)),
    };
    Ok(Output::ok(text))
}

fn cmd_dim(ctx: &Ctx, args: SpecArgs) -> CmdResult {
    let spec = args.spec()?;
    let g = ctx.graph(spec)?;
    let dim = exact_metric_dimension(&g, g.vertex_count())?.expect("the full vertex set resolves");
    report_value(
        ctx,
        "dim",
        "beta",
        &spec,
        dim.beta,
        &witness_literals(&spec, &dim.witness),
    )
}

fn cmd_det(ctx: &Ctx, args: SpecArgs) -> CmdResult {
    let spec = args.spec()?;
    let g = ctx.graph(spec)?;
    let det = exact_determining_number(&g)?;
    report_value(
        ctx,
        "det",
        "Det",
        &spec,
        det.det,
        &witness_literals(&spec, &det.witness),
    )
}

fn run(cli: &Cli) -> CmdResult {
    let ctx = Ctx {
        format: cli.format,
        max_vertices: cli.max_vertices,
    };
    match &cli.command {
        Command::Gen { spec } => cmd_gen(&ctx, *spec),
        Command::Dist { u, v, spec } => cmd_dist(&ctx, u, v, *spec),
        Command::Resolve { spec } => cmd_resolve(&ctx, *spec),
        Command::Embed { strings, all, spec } => cmd_embed(&ctx, strings, *all, *spec),
        Command::Verify { suite, spec } => cmd_verify(&ctx, *suite, *spec),
        Command::Auto { spec } => cmd_auto(&ctx, *spec),
        Command::Dim { spec } => cmd_dim(&ctx, *spec),
        Command::Det { spec } => cmd_det(&ctx, *spec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(output) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &output.text),
                None => {
                    print!("{}", output.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            if output.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
