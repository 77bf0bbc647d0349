//! Command-line front end: parses model files and prints subgroup reports.

pub mod report;
pub mod workspace;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use liederiv::constructions::{cylinder, product_model, verify_homotopy};
use liederiv::evsub::{gottlieb, MapAnalysis};
use liederiv::lie::LieElement;
use liederiv::model::{DglModel, DglMorphism, ModelError};
use liederiv::rel::{les_of_adjoint, les_of_morphism, les_of_push_forward};
use serde_json::json;

use report::{DegreeEntry, Report};
pub use workspace::{model_text, Workspace};

#[derive(Parser, Debug)]
#[command(name = "liederiv", version, about = "Evaluation subgroups and G-sequences of DGL maps")]
pub struct Cli {
    /// Truncation degree N of every model in the file.
    #[arg(long, global = true, default_value_t = 12)]
    pub max_degree: i32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Read and print internal (Quillen) degrees instead of topological ones.
    #[arg(long, global = true)]
    pub internal_degrees: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sequence {
    /// H(L) -> H(K) -> H(Rel) of the map itself.
    Morphism,
    /// The sequence of ad_psi.
    Adjoint,
    /// The sequence of psi_*: Der(L) -> Der(L, K; psi).
    PushForward,
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    pub file: PathBuf,
    pub model: String,
}

#[derive(Args, Debug)]
pub struct MapArgs {
    pub file: PathBuf,
    pub map: String,
    /// Report a single degree (topological unless --internal-degrees).
    #[arg(long, visible_alias = "degree")]
    pub top_degree: Option<i32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check d² = 0, minimality, bigrading and the chain condition of every map.
    Validate { file: PathBuf },
    /// Homology of a model.
    Homology(ModelArgs),
    /// Gottlieb groups of a model.
    Gottlieb {
        #[command(flatten)]
        args: ModelArgs,
        #[arg(long, visible_alias = "degree")]
        top_degree: Option<i32>,
    },
    /// Evaluation subgroups G_n(K, L; psi).
    Evsub(MapArgs),
    /// Whitehead centers P_n.
    Center(MapArgs),
    /// P_n / G_n, with a witness.
    Gvp(MapArgs),
    /// Relative evaluation subgroups.
    Grel(MapArgs),
    /// The G-sequence and its homology.
    Gseq(MapArgs),
    /// omega-homology of the G-sequence at G_n(L).
    Omega(MapArgs),
    /// Model of X × S^{n_1} × ... from a model of X.
    Product {
        #[command(flatten)]
        args: ModelArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        spheres: Vec<i32>,
    },
    /// Cylinder object of a model, with its invariants checked.
    Cylinder {
        #[command(flatten)]
        args: ModelArgs,
        /// Also check that exp(theta) is invertible on basis monomials; slow above N = 9.
        #[arg(long)]
        monomials: bool,
    },
    /// Check that a homotopy on the cylinder carries START to END.
    VerifyHomotopy {
        file: PathBuf,
        start: String,
        end: String,
        /// Value of the homotopy on s_GEN, as GEN=ELEMENT; unset values are zero.
        #[arg(long = "svalue")]
        svalues: Vec<String>,
    },
    /// Exactness of a long exact sequence.
    Les {
        #[command(flatten)]
        args: MapArgs,
        #[arg(long, value_enum, default_value_t = Sequence::Morphism)]
        sequence: Sequence,
    },
}

/// What the binary prints and its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    /// Parse, IO or an unknown name.
    Input(String),
    Validation(String),
    Precondition(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Input(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Validation(m) | Failure::Precondition(m) => m,
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Syntax(_) | ModelError::Degree { .. } => Failure::Input(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok((report, ok)) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout: match cli.format {
                Format::Text => report.to_text(cli.internal_degrees),
                Format::Json => report.to_json(),
            },
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

fn load(cli: &Cli, file: &PathBuf) -> Result<Workspace, Failure> {
    let src = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    Workspace::parse(&src, cli.max_degree).map_err(|e| Failure::Input(format!("{}:{e}", file.display())))
}

/// Loads the file and refuses to go on unless every model and map validates.
fn load_valid(cli: &Cli, file: &PathBuf) -> Result<Workspace, Failure> {
    let ws = load(cli, file)?;
    let (models, maps) = ws.validate();
    let mut problems = Vec::new();
    for (name, r) in models {
        if !r.ok() {
            problems.push(format!("model `{name}`: {}", r.failures.join("; ")));
        }
    }
    for (name, e) in maps {
        if let Some(e) = e {
            problems.push(format!("map `{name}`: {e}"));
        }
    }
    if problems.is_empty() {
        Ok(ws)
    } else {
        Err(Failure::Validation(format!("validation failed\n{}", problems.join("\n"))))
    }
}

fn model<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Arc<DglModel>, Failure> {
    ws.model(name).ok_or_else(|| Failure::Input(format!("no model named `{name}`")))
}

fn map<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Arc<DglMorphism>, Failure> {
    ws.map(name).ok_or_else(|| Failure::Input(format!("no map named `{name}`")))
}

fn inputs(file: &Path, names: &[&str]) -> Vec<String> {
    let mut v = vec![file.display().to_string()];
    v.extend(names.iter().map(|s| s.to_string()));
    v
}

/// Topological degrees to report: the requested one, or every degree in `lo..=hi`.
fn topological_degrees(cli: &Cli, requested: Option<i32>, lo: i32, hi: i32) -> Vec<i32> {
    match requested {
        Some(n) if cli.internal_degrees => vec![n + 1],
        Some(n) => vec![n],
        None => (lo..=hi).collect(),
    }
}

fn dispatch(cli: &Cli) -> Result<(Report, bool), Failure> {
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        Command::Homology(a) => {
            let ws = load_valid(cli, &a.file)?;
            let m = model(&ws, &a.model)?;
            let mut r = Report::new("homology", inputs(&a.file, &[&a.model]));
            for n in 1..=m.complex().hi() {
                let h = m.homology(n);
                let mut e = DegreeEntry::new(Some(n + 1), n, h.dim, h.trusted);
                e.representatives = h.representatives.iter().map(|x| m.render(x)).collect();
                r.degrees.push(e);
            }
            r.set("truncation", m.max_degree());
            Ok((r, true))
        }
        Command::Gottlieb { args: a, top_degree } => {
            let ws = load_valid(cli, &a.file)?;
            let m = model(&ws, &a.model)?;
            let analysis = MapAnalysis::identity(m.clone())?;
            let mut r = Report::new("gottlieb", inputs(&a.file, &[&a.model]));
            for n in topological_degrees(cli, *top_degree, 2, analysis.max_internal() + 1) {
                r.degrees.push(DegreeEntry::subspace(&gottlieb(m.clone(), n)?));
            }
            Ok((r, true))
        }
        Command::Evsub(a) => subgroup(cli, a, "evsub", |x, n| x.evaluation_subgroup(n)),
        Command::Center(a) => subgroup(cli, a, "center", |x, n| x.whitehead_center(n)),
        Command::Grel(a) => subgroup(cli, a, "grel", |x, n| x.rel_evaluation_subgroup(n)),
        Command::Gvp(a) => gvp(cli, a),
        Command::Gseq(a) => gseq(cli, a),
        Command::Omega(a) => omega(cli, a),
        Command::Product { args: a, spheres } => product(cli, a, spheres),
        Command::Cylinder { args: a, monomials } => cylinder_cmd(cli, a, *monomials),
        Command::VerifyHomotopy {
            file,
            start,
            end,
            svalues,
        } => homotopy(cli, file, start, end, svalues),
        Command::Les { args: a, sequence } => les(cli, a, *sequence),
    }
}

fn validate(cli: &Cli, file: &PathBuf) -> Result<(Report, bool), Failure> {
    let ws = load(cli, file)?;
    let (models, maps) = ws.validate();
    let mut r = Report::new("validate", inputs(file, &[]));
    let mut ok = true;
    let mut model_summary = serde_json::Map::new();
    for (name, v) in &models {
        ok &= v.ok();
        model_summary.insert(
            name.clone(),
            json!({
                "ok": v.ok(),
                "d_squared_zero": v.d_squared_ok,
                "minimal": v.minimal,
                "bigraded": v.bigraded_ok,
                "failures": v.failures,
                "linear_parts": v.linear_parts,
            }),
        );
        let status = if v.ok() { "ok" } else { "FAILED" };
        let minimal = if v.minimal { "minimal" } else { "not minimal" };
        r.notes.push(format!("model {name}: {status} ({minimal})"));
        for f in &v.failures {
            r.notes.push(format!("  {f}"));
        }
    }
    let mut map_summary = serde_json::Map::new();
    for (name, e) in &maps {
        ok &= e.is_none();
        map_summary.insert(name.clone(), json!({ "ok": e.is_none(), "failure": e }));
        match e {
            None => r.notes.push(format!("map {name}: ok")),
            Some(e) => r.notes.push(format!("map {name}: FAILED\n  {e}")),
        }
    }
    r.summary.insert("models".into(), model_summary.into());
    r.summary.insert("maps".into(), map_summary.into());
    r.set("ok", ok);
    Ok((r, ok))
}

fn analysis(cli: &Cli, a: &MapArgs) -> Result<MapAnalysis, Failure> {
    let ws = load_valid(cli, &a.file)?;
    Ok(MapAnalysis::new(map(&ws, &a.map)?.clone())?)
}

fn subgroup(
    cli: &Cli,
    a: &MapArgs,
    command: &str,
    f: impl Fn(&MapAnalysis, i32) -> Result<liederiv::evsub::SubspaceReport, ModelError>,
) -> Result<(Report, bool), Failure> {
    let x = analysis(cli, a)?;
    let mut r = Report::new(command, inputs(&a.file, &[&a.map]));
    for n in topological_degrees(cli, a.top_degree, 2, x.max_internal() + 1) {
        r.degrees.push(DegreeEntry::subspace(&f(&x, n)?));
    }
    Ok((r, true))
}

fn gvp(cli: &Cli, a: &MapArgs) -> Result<(Report, bool), Failure> {
    let x = analysis(cli, a)?;
    let mut r = Report::new("gvp", inputs(&a.file, &[&a.map]));
    let mut ok = true;
    for n in topological_degrees(cli, a.top_degree, 2, x.max_internal() + 1) {
        let q = x.g_vs_p(n)?;
        ok &= q.agree;
        let mut e = DegreeEntry::new(Some(n), n - 1, q.quotient_dim, q.g.trusted && q.p.trusted);
        e.low_degree_caveat();
        e.representatives = q.witness_representatives.clone();
        e.set("g_dimension", q.g.dim);
        e.set("p_dimension", q.p.dim);
        e.set("witness_dimension", q.witness.len());
        e.set("agree", q.agree);
        r.degrees.push(e);
    }
    Ok((r, ok))
}

fn gseq(cli: &Cli, a: &MapArgs) -> Result<(Report, bool), Failure> {
    let x = analysis(cli, a)?;
    let mut r = Report::new("gseq", inputs(&a.file, &[&a.map]));
    let mut ok = true;
    for n in topological_degrees(cli, a.top_degree, 2, x.max_internal() + 1) {
        let s = x.g_sequence_degree(n)?;
        ok &= s.maps_into_subgroups && s.composite_zero;
        let mut e = DegreeEntry::new(Some(n), n - 1, s.g_map.dim, s.trusted);
        e.low_degree_caveat();
        e.representatives = s.g_map.representatives.clone();
        e.set("g_source", s.g_source.dim);
        e.set("g_map", s.g_map.dim);
        e.set("g_rel", s.g_rel.dim);
        e.set("homology_source", s.homology_source);
        e.set("homology_map", s.homology_map);
        e.set("homology_rel", s.homology_rel);
        e.set("maps_into_subgroups", s.maps_into_subgroups);
        e.set("composite_zero", s.composite_zero);
        r.degrees.push(e);
    }
    Ok((r, ok))
}

fn omega(cli: &Cli, a: &MapArgs) -> Result<(Report, bool), Failure> {
    let x = analysis(cli, a)?;
    let mut r = Report::new("omega", inputs(&a.file, &[&a.map]));
    for n in topological_degrees(cli, a.top_degree, 2, x.max_internal()) {
        let (dim, trusted) = x.omega_homology(n)?;
        let mut e = DegreeEntry::new(Some(n), n - 1, dim, trusted);
        e.low_degree_caveat();
        r.degrees.push(e);
    }
    Ok((r, true))
}

fn product(cli: &Cli, a: &ModelArgs, spheres: &[i32]) -> Result<(Report, bool), Failure> {
    let ws = load_valid(cli, &a.file)?;
    let base = model(&ws, &a.model)?;
    let pm = product_model(base.clone(), spheres)?;
    let list = spheres.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
    let mut r = Report::new("product", inputs(&a.file, &[&a.model, &list]));
    let mut ok = pm.result.is_valid();
    for d in pm.additivity()? {
        ok &= d.holds();
        let mut e = DegreeEntry::new(Some(d.degree + 1), d.degree, d.product, pm.result.complex().trusted(d.degree));
        e.set("spheres", d.spheres);
        e.set("base", d.base);
        e.set("additive", d.holds());
        r.degrees.push(e);
    }
    r.set("dropped", pm.dropped.clone());
    r.set("model", model_text(&pm.result));
    Ok((r, ok))
}

fn cylinder_cmd(cli: &Cli, a: &ModelArgs, monomials: bool) -> Result<(Report, bool), Failure> {
    let ws = load_valid(cli, &a.file)?;
    let cyl = cylinder(model(&ws, &a.model)?.clone())?;
    let check = cyl.check(monomials)?;
    let mut r = Report::new("cylinder", inputs(&a.file, &[&a.model]));
    r.set("exp_cap", cyl.exp_cap);
    r.set("monomials_checked", check.monomials_checked);
    r.set("failures", check.failures.clone());
    r.set("ok", check.ok());
    let lambda1: Vec<String> = (cyl.source.generators().iter())
        .zip(cyl.lambda1.values())
        .map(|(g, v)| format!("{} -> {}", g.name, cyl.result.render(v)))
        .collect();
    r.set("lambda1", lambda1);
    r.set("model", model_text(&cyl.result));
    Ok((r, check.ok()))
}

/// Parses `GEN=ELEMENT` values for the s-generators, in the target of `start`.
fn svalue_list(start: &DglMorphism, raw: &[String]) -> Result<Vec<LieElement>, Failure> {
    let src = start.source();
    let tgt = start.target();
    let mut values: Vec<LieElement> = src.generators().iter().map(|g| LieElement::zero(g.degree + 1)).collect();
    for s in raw {
        let (g, e) = s
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("--svalue `{s}` is not of the form GEN=ELEMENT")))?;
        let i = src
            .lie()
            .index_of(g.trim())
            .ok_or_else(|| Failure::Input(format!("--svalue: `{}` has no generator `{}`", src.name(), g.trim())))?;
        let e = tgt
            .parse(e)
            .map_err(|err| Failure::Input(format!("--svalue {s}: {err}")))?;
        values[i] = e;
    }
    Ok(values)
}

fn homotopy(cli: &Cli, file: &PathBuf, start: &str, end: &str, raw: &[String]) -> Result<(Report, bool), Failure> {
    let ws = load_valid(cli, file)?;
    let f = map(&ws, start)?;
    let g = map(&ws, end)?;
    let cyl = cylinder(f.source().clone())?;
    if !Arc::ptr_eq(f.source(), g.source()) || !Arc::ptr_eq(f.target(), g.target()) {
        return Err(Failure::Precondition(format!("`{start}` and `{end}` have different sources or targets")));
    }
    let svalues = svalue_list(f, raw)?;
    let v = verify_homotopy(&cyl, f.target(), f, &svalues, g)?;
    let mut r = Report::new("verify-homotopy", inputs(file, &[start, end]));
    r.set("holds", v.holds);
    r.set("truncated", v.truncated.clone());
    r.set(
        "mismatches",
        v.mismatches
            .iter()
            .map(|(g, got, want)| json!({ "generator": g, "got": got, "expected": want }))
            .collect::<Vec<_>>(),
    );
    for (g, got, want) in &v.mismatches {
        r.notes.push(format!("{g}: H(lambda1({g})) = {got}, expected {want}"));
    }
    Ok((r, v.holds))
}

fn les(cli: &Cli, a: &MapArgs, sequence: Sequence) -> Result<(Report, bool), Failure> {
    let ws = load_valid(cli, &a.file)?;
    let psi = map(&ws, &a.map)?;
    let rep = match sequence {
        Sequence::Morphism => les_of_morphism(psi),
        Sequence::Adjoint => les_of_adjoint(psi),
        Sequence::PushForward => les_of_push_forward(psi),
    };
    let name = format!("{sequence:?}").to_lowercase();
    let mut r = Report::new("les", inputs(&a.file, &[&a.map, &name]));
    for node in &rep.nodes {
        if a.top_degree.is_some_and(|d| d != node.degree) {
            continue;
        }
        let mut e = DegreeEntry::new(None, node.degree, node.check.dim, node.trusted);
        e.set("space", node.space.to_string());
        e.set("rank_in", node.check.rank_in);
        e.set("rank_out", node.check.rank_out);
        e.set("exact", node.check.exact);
        r.degrees.push(e);
    }
    r.set("exact", rep.exact());
    Ok((r, rep.exact()))
}
