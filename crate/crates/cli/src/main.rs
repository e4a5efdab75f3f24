mod report;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ggdp_core::closedform::{path_grundy, web_grundy};
use ggdp_core::graph::{self, parse_instance, write_instance, CMode};
use ggdp_core::lp::{root_cut_loop, CutFamilies};
use ggdp_core::model::{build_formulation, count_solutions, export_lp, parse_point, Formulation, Layout};
use ggdp_core::polytope::{audit, check_facet, p3_dimension_formula, predict_facet, IneqSpec, VertexCloud};
use ggdp_core::separation::{separate_type1, separate_type2, SeparationState};
use ggdp_core::sequence::{greedy_sequence, grundy_exact_with_budget, DEFAULT_BUDGET};
use ggdp_core::{Instance, VertexSet};

use report::Report;

#[derive(Parser)]
#[command(name = "ggdp", version, about = "Grundy domination sequences, formulations and cuts")]
struct Cli {
    /// Print one JSON object instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Longest legal sequence, exactly or greedily.
    Solve(SolveArgs),
    /// Closed-form Grundy numbers of paths and webs.
    ClosedForm(ClosedFormArgs),
    /// Build a formulation and optionally export it in LP format.
    Model(ModelArgs),
    /// Count the integral solutions of a formulation.
    Count(CountArgs),
    /// Polytope dimension, facet checks and the facet audit.
    Poly {
        #[command(subcommand)]
        command: PolyCommand,
    },
    /// Separate Type I/II inequalities at a fractional point.
    Separate(SeparateArgs),
    /// Root LP bound with cutting-plane rounds.
    RootBound(RootBoundArgs),
    /// Remove twins (and report the components).
    Reduce(ReduceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    Web,
    Bull,
    Random,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    /// Number of vertices (leaves for a star).
    #[arg(short)]
    n: Option<usize>,
    /// Web parameter.
    #[arg(short)]
    k: Option<usize>,
    /// `empty`, `all`, `half` (random only) or a list like `1,3,4`.
    #[arg(short = 'C', default_value = "all")]
    closed: String,
    /// Edge probability for random instances.
    #[arg(short, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    retries: usize,
    #[arg(short)]
    o: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file, `-` for stdin.
    file: String,
    #[arg(long, conflicts_with = "greedy")]
    exact: bool,
    #[arg(long)]
    greedy: bool,
    /// Node budget of the exact search.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosedFamily {
    Path,
    Web,
}

#[derive(Args)]
struct ClosedFormArgs {
    family: ClosedFamily,
    #[arg(short)]
    n: usize,
    #[arg(short)]
    k: Option<usize>,
    #[arg(short = 'C', default_value = "all")]
    closed: String,
}

#[derive(Args)]
struct FormArgs {
    file: String,
    #[arg(long, default_value = "F1", value_parser = parse_form)]
    form: Formulation,
    #[arg(long, default_value_t = 1)]
    lb: usize,
}

#[derive(Args)]
struct ModelArgs {
    #[command(flatten)]
    form: FormArgs,
    /// Write the LP file here, `-` for stdout.
    #[arg(long)]
    export: Option<String>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    form: FormArgs,
}

#[derive(Subcommand)]
enum PolyCommand {
    /// Affine dimension of the integral points.
    Dim(FormArgs),
    /// Validity and facet test of one inequality on the F1 points.
    Check {
        file: String,
        /// e.g. `type1 u=1 w=2 i=3`.
        #[arg(long)]
        ineq: String,
    },
    /// Predicted against computed facets for every family member.
    Audit { file: String },
}

#[derive(Args)]
struct SeparateArgs {
    file: String,
    /// Lines `x <u> <i> <val>` / `y <v> <i> <val>`.
    #[arg(long)]
    point: String,
    #[arg(long)]
    type1: bool,
    #[arg(long)]
    type2: bool,
}

#[derive(Args)]
struct RootBoundArgs {
    file: String,
    #[arg(long, default_value = "F3", value_parser = parse_form)]
    form: Formulation,
    /// Defaults to the greedy sequence length.
    #[arg(long)]
    lb: Option<usize>,
    #[arg(long, default_value_t = 10)]
    rounds: usize,
    /// Comma list of `type1`, `type2`, or `none`.
    #[arg(long, default_value = "type1,type2")]
    cuts: String,
}

#[derive(Args)]
struct ReduceArgs {
    file: String,
    #[arg(short)]
    o: Option<PathBuf>,
}

fn parse_form(s: &str) -> std::result::Result<Formulation, String> {
    s.parse().map_err(|e: ggdp_core::Error| e.to_string())
}

fn read_source(name: &str) -> Result<String> {
    if name == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(name).with_context(|| format!("reading {name}"))
    }
}

fn load(name: &str) -> Result<Instance> {
    parse_instance(&read_source(name)?).with_context(|| format!("parsing {name}"))
}

fn write_target(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn closed_set(spec: &str, n: usize) -> Result<VertexSet> {
    match spec {
        "empty" => Ok(VertexSet::EMPTY),
        "all" => Ok(VertexSet::full(n)),
        "half" => bail!("-C half is only available for random instances"),
        list => list
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| match t.trim().parse::<usize>() {
                Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                _ => bail!("bad vertex {t:?} in -C, expected ids in 1..={n}"),
            })
            .collect(),
    }
}

fn ids(vs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    vs.into_iter().map(|v| v + 1).collect()
}

fn budget(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("GGDP_BUDGET") {
        Ok(s) => s.trim().parse().with_context(|| format!("GGDP_BUDGET={s:?} is not a number")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn need(v: Option<usize>, flag: &str, what: &str) -> Result<usize> {
    v.with_context(|| format!("{what} needs {flag}"))
}

fn gen(a: &GenArgs) -> Result<Option<Report>> {
    let mut header = String::new();
    let inst = match a.family {
        Family::Bull => {
            if a.closed != "all" {
                graph::bull().with_closed(closed_set(&a.closed, 5)?)?
            } else {
                graph::bull()
            }
        }
        Family::Random => {
            let n = need(a.n, "-n", "random")?;
            let mode = match a.closed.as_str() {
                "empty" => CMode::Empty,
                "all" => CMode::All,
                "half" => CMode::Half,
                _ => bail!("random instances take -C empty|all|half"),
            };
            let r = graph::random(n, a.p, mode, a.seed, a.retries)?;
            header = format!("# random n={n} p={} seed={} attempts={}\n", a.p, a.seed, r.attempts);
            r.instance
        }
        Family::Star => {
            let leaves = need(a.n, "-n", "star")?;
            graph::star(leaves, closed_set(&a.closed, leaves + 1)?)?
        }
        fam => {
            let n = need(a.n, "-n", "this family")?;
            let c = closed_set(&a.closed, n)?;
            match fam {
                Family::Path => graph::path(n, c)?,
                Family::Cycle => graph::cycle(n, c)?,
                Family::Complete => graph::complete(n, c)?,
                _ => graph::web(n, need(a.k, "-k", "web")?, c)?,
            }
        }
    };
    let text = header + &write_instance(&inst);
    match &a.o {
        Some(path) => {
            write_target(path, &text)?;
            let mut r = Report::new();
            r.put("file", path.display().to_string())
                .put("n", inst.n())
                .put("edges", inst.edges().len());
            Ok(Some(r))
        }
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}

fn solve(a: &SolveArgs) -> Result<Report> {
    let inst = load(&a.file)?;
    let greedy = greedy_sequence(&inst);
    let mut r = Report::new();
    if a.greedy {
        r.put("value", greedy.len())
            .put("sequence", ids(greedy.vertices().iter().copied()))
            .put("method", "greedy");
    } else {
        let (value, seq) = grundy_exact_with_budget(&inst, budget(a.budget)?)?;
        r.put("value", value)
            .put("sequence", ids(seq.vertices().iter().copied()))
            .put("method", "exact");
    }
    r.put("m", inst.upper_bound_m()).put("lb", greedy.len());
    Ok(r)
}

fn closed_form(a: &ClosedFormArgs) -> Result<Report> {
    let c = closed_set(&a.closed, a.n)?;
    let value = match a.family {
        ClosedFamily::Path => path_grundy(a.n, c)?,
        ClosedFamily::Web => web_grundy(a.n, need(a.k, "-k", "web")?, c)?,
    };
    let mut r = Report::new();
    r.put("value", value);
    Ok(r)
}

fn model(a: &ModelArgs) -> Result<Option<Report>> {
    let inst = load(&a.form.file)?;
    let model = build_formulation(&inst, a.form.form, a.form.lb)?;
    let mut r = Report::new();
    r.put("form", a.form.form.to_string())
        .put("m", model.m())
        .put("lb", model.lb())
        .put("variables", model.num_vars())
        .put("constraints", model.constraints().len());
    match a.export.as_deref() {
        Some("-") => {
            eprint!("{}", r.render(false));
            print!("{}", export_lp(&model));
            return Ok(None);
        }
        Some(path) => {
            write_target(Path::new(path), &export_lp(&model))?;
            r.put("export", path);
        }
        None => {}
    }
    Ok(Some(r))
}

fn count(a: &CountArgs) -> Result<Report> {
    let inst = load(&a.form.file)?;
    let model = build_formulation(&inst, a.form.form, a.form.lb)?;
    let mut r = Report::new();
    r.put("count", count_solutions(&model)?)
        .put("form", a.form.form.to_string())
        .put("m", model.m())
        .put("lb", model.lb());
    Ok(r)
}

fn poly(c: &PolyCommand) -> Result<Report> {
    let mut r = Report::new();
    match c {
        PolyCommand::Dim(a) => {
            let inst = load(&a.file)?;
            let model = build_formulation(&inst, a.form, a.lb)?;
            let cloud = VertexCloud::from_model(&model)?;
            let dim = cloud.dimension()?;
            let ambient = model.num_vars();
            r.put("form", a.form.to_string())
                .put("points", cloud.len())
                .put("dimension", dim)
                .put("ambient", ambient)
                .put("full_dimensional", dim == ambient);
            if a.form == Formulation::F3 && a.lb == 1 {
                r.put("formula", p3_dimension_formula(&inst)?);
            }
        }
        PolyCommand::Check { file, ineq } => {
            let inst = load(file)?;
            let m = inst.upper_bound_m();
            let spec: IneqSpec = ineq.parse()?;
            let built = spec.build(&inst, m)?;
            let cloud = VertexCloud::f1(&inst)?;
            let rep = check_facet(&built, &cloud)?;
            r.put("spec", spec.to_string())
                .put("inequality", built.to_string())
                .put("valid", rep.valid)
                .put("facet", rep.is_facet)
                .put("tight_points", rep.tight_points)
                .put("tight_dim", rep.tight_dim)
                .put("cloud_dim", rep.cloud_dim);
            match predict_facet(&spec, &inst, m) {
                Ok(p) => r.put("predicted", p),
                Err(e) => r.put("predicted", format!("n/a ({e})")),
            };
        }
        PolyCommand::Audit { file } => {
            let inst = load(file)?;
            let cloud = VertexCloud::f1(&inst)?;
            let rep = audit(&inst, &cloud)?;
            let rows: Vec<_> = rep
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "family": row.family,
                        "count": row.count,
                        "facets": row.facets,
                        "predicted": row.predicted,
                        "invalid": row.invalid,
                        "disagreements": row.disagreements,
                    })
                })
                .collect();
            let mismatches: Vec<_> = rep
                .disagreements
                .iter()
                .map(|d| json!({"spec": d.spec, "predicted": d.predicted, "actual": d.actual}))
                .collect();
            r.put("cloud_dim", rep.cloud_dim)
                .put("row", rows)
                .put("disagreements", rep.total_disagreements())
                .put("all_valid", rep.all_valid());
            if !mismatches.is_empty() {
                r.put("mismatch", mismatches);
            }
        }
    }
    Ok(r)
}

fn separate(a: &SeparateArgs) -> Result<Report> {
    let inst = load(&a.file)?;
    let layout = Layout::new(inst.n(), inst.upper_bound_m());
    let point = parse_point(&read_source(&a.point)?, layout).with_context(|| format!("parsing {}", a.point))?;
    let (t1, t2) = if a.type1 || a.type2 { (a.type1, a.type2) } else { (true, true) };
    let mut state = SeparationState::precompute(&inst);
    let mut cuts = Vec::new();
    if t1 {
        cuts.extend(separate_type1(&inst, &mut state, &point)?);
    }
    if t2 {
        cuts.extend(separate_type2(&inst, &mut state, &point)?);
    }
    let mut r = Report::new();
    r.put("cuts", cuts.len());
    if !cuts.is_empty() {
        let lines: Vec<_> = cuts
            .iter()
            .map(|c| json!({"spec": c.spec.to_string(), "violation": format!("{:.6}", c.violation)}))
            .collect();
        r.put("cut", lines);
    }
    Ok(r)
}

fn root_bound(a: &RootBoundArgs) -> Result<Report> {
    let inst = load(&a.file)?;
    let mut families = CutFamilies { type1: false, type2: false };
    for name in a.cuts.split(',').map(str::trim) {
        match name {
            "type1" => families.type1 = true,
            "type2" => families.type2 = true,
            "none" | "" => {}
            other => bail!("unknown cut family {other:?}, expected type1, type2 or none"),
        }
    }
    let lb = a.lb.unwrap_or_else(|| greedy_sequence(&inst).len());
    let res = root_cut_loop(&inst, a.form, lb, a.rounds, families)?;
    let history: Vec<_> = res
        .bound_history
        .iter()
        .enumerate()
        .map(|(k, b)| json!({"round": k, "bound": format!("{b:.6}")}))
        .collect();
    let mut r = Report::new();
    r.put("form", a.form.to_string())
        .put("lb", lb)
        .put("history", history)
        .put("cuts", res.cuts.len())
        .put("status", serde_json::to_value(res.status)?);
    if let Some(b) = res.bound_history.last() {
        r.put("bound", format!("{b:.6}"));
    }
    if !res.cuts.is_empty() {
        r.put("cut", res.cuts.iter().map(|c| c.spec.to_string()).collect::<Vec<_>>());
    }
    Ok(r)
}

fn reduce(a: &ReduceArgs) -> Result<Option<Report>> {
    let inst = load(&a.file)?;
    let (reduced, removed) = inst.reduce_twins();
    let components = reduced.split_components().len();
    let text = write_instance(&reduced);
    let mut r = Report::new();
    r.put("n", reduced.n())
        .put("removed", ids(removed))
        .put("components", components);
    match &a.o {
        Some(path) => {
            write_target(path, &text)?;
            r.put("file", path.display().to_string());
            Ok(Some(r))
        }
        None => {
            eprint!("{}", r.render(false));
            print!("{text}");
            Ok(None)
        }
    }
}

fn run(cli: &Cli) -> Result<Option<Report>> {
    Ok(match &cli.command {
        Command::Gen(a) => return gen(a),
        Command::Reduce(a) => return reduce(a),
        Command::Solve(a) => Some(solve(a)?),
        Command::ClosedForm(a) => Some(closed_form(a)?),
        Command::Model(a) => return model(a),
        Command::Count(a) => Some(count(a)?),
        Command::Poly { command } => Some(poly(command)?),
        Command::Separate(a) => Some(separate(a)?),
        Command::RootBound(a) => Some(root_bound(a)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Some(r)) => {
            print!("{}", r.render(cli.json));
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
