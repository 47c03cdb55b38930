//! Command-line front end. Every report is wrapped with the library version and the run
//! configuration; exit code 2 marks a failed cross-check, 1 an input or usage error.

use std::error::Error;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalan_bott::{
    atoms_coatoms_vs_trees, catalan_fan, catalan_pair, fano_bott_from_forest, forest_from_fano_fan, hat_u,
    left_right_trees, psi, psi_triangulation, sf_classes, tilde_u, tree_of_triangulation, triangulations,
    unordered_canonical, wedderburn_etherington, CatalanSide, SignedForest, Triangulation,
};
use crate::exact_polytopes::{fan_isomorphic, Fan, LatticePolytope};
use crate::group_core::{bruhat_leq, BruhatInterval, Permutation};
use crate::matroids::{
    algebraic_retraction, distance_to_set, is_coxeter_matroid, matroid_polytope, matroid_retraction, CoxeterSubset,
    CoxeterSubsetJson,
};
use crate::orbit_closures::{fixed_points, geometric_retraction, orbit_fan, retraction_by_moment_maximizer, FlagMatrix};
use crate::richardson::{self, q_vw};
use crate::schubert::{self, a_w, complexity, complexity_one_report, poincare_yw, q_w, toric_schubert_report};

type CliResult<T> = Result<T, Box<dyn Error + Send + Sync>>;

const MAX_GROUP_N: usize = 7;
const MAX_FACE_LATTICE_N: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "flagtoric", version, about = "Torus orbit closures in the type-A flag variety")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
struct GlobalOpts {
    /// Rank for commands that sweep or sample S_n.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// RNG seed for sampled inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Cap on the number of rows listed in a report.
    #[arg(long, global = true)]
    limit: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
enum Command {
    /// Compare two permutations in Bruhat order.
    Bruhat { v: String, w: String },
    /// Face data of a Bruhat interval, permutohedron or matroid polytope.
    Polytope {
        #[command(subcommand)]
        kind: PolytopeKind,
        /// Include the normal fan.
        #[arg(long)]
        normal_fan: bool,
    },
    /// A_w(t) and the Poincaré polynomial of Y_w.
    Poincare { w: String },
    /// Fixed points, matroid test, retraction table and fan of a flag given as a CSV matrix.
    Orbit {
        /// CSV of rationals p/q, one row per line.
        matrix: Option<PathBuf>,
        /// Use a seeded random flag of rank --n instead.
        #[arg(long)]
        random: bool,
    },
    /// Algebraic and matroid retractions of a subset of S_n.
    Retraction {
        /// JSON {"n", "elements"} or whitespace/comma separated permutations.
        subset: Option<PathBuf>,
        /// Take the subset as the fixed points of this matrix.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Exhaustive checks over S_n or over a combinatorial family.
    Sweep {
        #[arg(value_enum)]
        family: Family,
    },
    /// Catalan-type fans: a triangulation, a permutation's ψ-tree, or all classes for --n.
    Catalan {
        #[arg(long)]
        triangulation: Option<PathBuf>,
        #[arg(long)]
        perm: Option<String>,
    },
    /// Fano Bott fans from signed forests, or the SF_n classes for --n.
    Bott {
        /// Forest JSON {"parents": {...}, "signs": {...}}.
        forest: Option<PathBuf>,
        /// Read the forest off the Catalan fan of this triangulation.
        #[arg(long)]
        triangulation: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
enum PolytopeKind {
    /// Q_w = Q^e_w.
    Qw { w: String },
    /// Q^v_w.
    Qvw { v: String, w: String },
    /// The permutohedron Perm_{n-1}.
    Perm { n: usize },
    /// Conv{w·ν : w ∈ M} for a subset file.
    Matroid {
        subset: PathBuf,
        /// Strictly increasing weights, comma separated; defaults to 1,…,n.
        #[arg(long, value_delimiter = ',')]
        nu: Option<Vec<i64>>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    ToricSchubert,
    ComplexityOne,
    SfClasses,
    Catalan,
    ConjectureSearch,
}

/// A command's result before wrapping: the JSON body, an optional table for CSV output, and
/// whether every cross-check passed.
struct Outcome {
    result: Value,
    table: Option<Table>,
    ok: bool,
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Outcome {
    fn new(result: Value) -> Self {
        Outcome { result, table: None, ok: true }
    }

    fn checked(result: Value, ok: bool) -> Self {
        Outcome { result, table: None, ok }
    }

    fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { header: header.iter().map(|s| s.to_string()).collect(), rows });
        self
    }
}

pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    match execute(args) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err((msg, code)) => {
            eprint!("{msg}");
            code
        }
    }
}

/// Parses and runs one invocation, returning the rendered report and exit code, or the
/// message for stderr and its exit code. Help and version requests come back as `Ok`.
pub fn execute<I, T>(args: I) -> Result<(String, i32), (String, i32)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => return Err((e.render().to_string(), 1)),
        Err(e) => return Ok((e.render().to_string(), 0)),
    };
    match run(&cli) {
        Ok((text, ok)) => Ok((text, if ok { 0 } else { 2 })),
        Err(e) => Err((format!("error: {e}\n"), 1)),
    }
}

/// Runs a parsed command and renders it; the flag is false when a cross-check failed.
fn run(cli: &Cli) -> CliResult<(String, bool)> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if cli.global.jobs > 0 {
        pool = pool.num_threads(cli.global.jobs);
    }
    let pool = pool.build()?;
    let outcome = pool.install(|| dispatch(&cli.command, &cli.global))?;
    let config = json!({
        "command": serde_json::to_value(&cli.command)?,
        "n": cli.global.n,
        "seed": cli.global.seed,
        "format": cli.global.format,
        "jobs": cli.global.jobs,
        "limit": cli.global.limit,
    });
    let text = render(&outcome, &config, cli.global.format)?;
    Ok((text, outcome.ok))
}

fn render(o: &Outcome, config: &Value, format: Format) -> CliResult<String> {
    match format {
        Format::Json => {
            let doc = json!({
                "version": crate::VERSION,
                "config": config,
                "checks_passed": o.ok,
                "result": o.result,
            });
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        Format::Csv => {
            let mut out = format!("# flagtoric {}\n# config {}\n", crate::VERSION, serde_json::to_string(config)?);
            let mut w = csv::Writer::from_writer(Vec::new());
            match &o.table {
                Some(t) => {
                    w.write_record(&t.header)?;
                    for r in &t.rows {
                        w.write_record(r)?;
                    }
                }
                None => {
                    w.write_record(["key", "value"])?;
                    for (k, v) in flat_fields(&o.result) {
                        w.write_record([k, v])?;
                    }
                }
            }
            out.push_str(&String::from_utf8(w.into_inner()?)?);
            Ok(out)
        }
        Format::Text => {
            let mut out = format!("flagtoric {}\nconfig: {}\n", crate::VERSION, serde_json::to_string(config)?);
            for (k, v) in flat_fields(&o.result) {
                out.push_str(&format!("{k}: {v}\n"));
            }
            out.push_str(&format!("checks passed: {}\n", o.ok));
            Ok(out)
        }
    }
}

fn flat_fields(v: &Value) -> Vec<(String, String)> {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| {
                let s = match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                (k.clone(), s)
            })
            .collect(),
        other => vec![("result".into(), other.to_string())],
    }
}

fn dispatch(cmd: &Command, g: &GlobalOpts) -> CliResult<Outcome> {
    match cmd {
        Command::Bruhat { v, w } => cmd_bruhat(&perm(v)?, &perm(w)?),
        Command::Polytope { kind, normal_fan } => cmd_polytope(kind, *normal_fan),
        Command::Poincare { w } => cmd_poincare(&perm(w)?),
        Command::Orbit { matrix, random } => {
            let x = if *random {
                let n = bounded_n(g, 4, MAX_FACE_LATTICE_N)?;
                FlagMatrix::random_seeded(n, g.seed)
            } else {
                let path = matrix.as_ref().ok_or("orbit needs a matrix file or --random")?;
                FlagMatrix::from_csv(&read(path)?)?
            };
            cmd_orbit(&x, g.limit)
        }
        Command::Retraction { subset, matrix } => {
            let m = match (subset, matrix) {
                (Some(p), None) => read_subset(p)?,
                (None, Some(p)) => fixed_points(&FlagMatrix::from_csv(&read(p)?)?),
                _ => return Err("retraction needs exactly one of a subset file or --matrix".into()),
            };
            if m.n() > MAX_GROUP_N {
                return Err(format!("n = {} exceeds {MAX_GROUP_N}", m.n()).into());
            }
            cmd_retraction(&m, g.limit)
        }
        Command::Sweep { family } => cmd_sweep(*family, g),
        Command::Catalan { triangulation, perm: u } => match (triangulation, u) {
            (Some(p), None) => cmd_catalan_triangulation(&Triangulation::from_json(&serde_json::from_str(&read(p)?)?)?),
            (None, Some(u)) => cmd_catalan_perm(&perm(u)?),
            (None, None) => sweep_catalan(bounded_n(g, 3, MAX_GROUP_N)?, g.limit),
            _ => Err("give at most one of --triangulation and --perm".into()),
        },
        Command::Bott { forest, triangulation } => match (forest, triangulation) {
            (Some(p), None) => cmd_bott_forest(&serde_json::from_str::<SignedForest>(&read(p)?)?),
            (None, Some(p)) => {
                let t = Triangulation::from_json(&serde_json::from_str(&read(p)?)?)?;
                cmd_bott_forest(&forest_from_fano_fan(&catalan_fan(&t)?)?)
            }
            (None, None) => sweep_sf_classes(bounded_n(g, 3, 6)?, g.limit),
            _ => Err("give at most one forest file or --triangulation".into()),
        },
    }
}

fn perm(s: &str) -> CliResult<Permutation> {
    Ok(s.parse::<Permutation>()?)
}

fn read(p: &Path) -> CliResult<String> {
    std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()).into())
}

fn read_subset(p: &Path) -> CliResult<CoxeterSubset> {
    let text = read(p)?;
    if text.trim_start().starts_with('{') {
        let j: CoxeterSubsetJson = serde_json::from_str(&text)?;
        return Ok(CoxeterSubset::from_json(&j)?);
    }
    let items: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
    Ok(CoxeterSubset::parse(&items)?)
}

fn bounded_n(g: &GlobalOpts, default: usize, max: usize) -> CliResult<usize> {
    let n = g.n.unwrap_or(default);
    if n == 0 || n > max {
        return Err(format!("--n must be in 1..={max}, got {n}").into());
    }
    Ok(n)
}

fn check_face_lattice_n(n: usize) -> CliResult<()> {
    if n > MAX_FACE_LATTICE_N {
        return Err(format!("face lattices are limited to n ≤ {MAX_FACE_LATTICE_N}").into());
    }
    Ok(())
}

fn truncate<T>(mut v: Vec<T>, limit: Option<usize>) -> Vec<T> {
    if let Some(l) = limit {
        v.truncate(l);
    }
    v
}

fn strings<'a>(ps: impl IntoIterator<Item = &'a Permutation>) -> Vec<String> {
    ps.into_iter().map(|p| p.to_string()).collect()
}

fn cmd_bruhat(v: &Permutation, w: &Permutation) -> CliResult<Outcome> {
    let le = bruhat_leq(v, w)?;
    let ge = bruhat_leq(w, v)?;
    let size = if le {
        Some(BruhatInterval::new(v, w)?.len())
    } else if ge {
        Some(BruhatInterval::new(w, v)?.len())
    } else {
        None
    };
    Ok(Outcome::new(json!({
        "v": v.to_string(),
        "w": w.to_string(),
        "v_leq_w": le,
        "w_leq_v": ge,
        "comparable": le || ge,
        "length_v": v.length(),
        "length_w": w.length(),
        "interval_size": size,
    })))
}

fn polytope_body(q: &LatticePolytope, with_fan: bool) -> CliResult<serde_json::Map<String, Value>> {
    let non_simple: Vec<String> = (0..q.num_vertices())
        .filter(|&v| !q.is_simple_at(v))
        .map(|v| match q.labels() {
            Some(l) => l[v].to_string(),
            None => format!("{:?}", q.vertices()[v]),
        })
        .collect();
    let mut m = serde_json::Map::new();
    m.insert("dim".into(), json!(q.dim()));
    m.insert("num_vertices".into(), json!(q.num_vertices()));
    m.insert("f_vector".into(), json!(q.face_lattice().f_vector()));
    m.insert("h_polynomial".into(), json!(q.h_polynomial().coeffs()));
    m.insert("simple".into(), json!(non_simple.is_empty()));
    m.insert("simple_vertices".into(), json!(q.num_vertices() - non_simple.len()));
    m.insert("not_simple_at".into(), json!(non_simple));
    m.insert("cube".into(), json!(q.is_cube()));
    if with_fan && q.dim() > 0 {
        m.insert("normal_fan".into(), serde_json::to_value(q.normal_fan()?.to_json())?);
    }
    Ok(m)
}

fn cmd_polytope(kind: &PolytopeKind, with_fan: bool) -> CliResult<Outcome> {
    let (q, mut extra) = match kind {
        PolytopeKind::Qw { w } => {
            let w = perm(w)?;
            check_face_lattice_n(w.n())?;
            let toric = complexity(&w) == 0;
            (q_w(&w), json!({"kind": "qw", "w": w.to_string(), "toric": toric}))
        }
        PolytopeKind::Qvw { v, w } => {
            let (v, w) = (perm(v)?, perm(w)?);
            check_face_lattice_n(w.n())?;
            let q = q_vw(&v, &w)?;
            let toric = q.dim() == w.length() - v.length();
            (q, json!({"kind": "qvw", "v": v.to_string(), "w": w.to_string(), "toric": toric}))
        }
        PolytopeKind::Perm { n } => {
            check_face_lattice_n(*n)?;
            (LatticePolytope::permutohedron(*n), json!({"kind": "perm", "n": n, "toric": true}))
        }
        PolytopeKind::Matroid { subset, nu } => {
            let m = read_subset(subset)?;
            check_face_lattice_n(m.n())?;
            let nu = nu.clone().unwrap_or_else(|| (1..=m.n() as i64).collect());
            let check = is_coxeter_matroid(&m);
            (matroid_polytope(&m, &nu)?, json!({"kind": "matroid", "n": m.n(), "nu": nu, "coxeter_matroid": check}))
        }
    };
    let obj = extra.as_object_mut().expect("object");
    obj.extend(polytope_body(&q, with_fan)?);
    Ok(Outcome::new(extra))
}

fn cmd_poincare(w: &Permutation) -> CliResult<Outcome> {
    if w.n() > MAX_GROUP_N {
        return Err(format!("n = {} exceeds {MAX_GROUP_N}", w.n()).into());
    }
    let a = a_w(w);
    let p = poincare_yw(w);
    Ok(Outcome::new(json!({
        "w": w.to_string(),
        "A_w": a.coeffs(),
        "A_w_text": a.to_string(),
        "poincare": p.coeffs(),
        "poincare_text": p.to_string(),
    })))
}

fn cmd_orbit(x: &FlagMatrix, limit: Option<usize>) -> CliResult<Outcome> {
    let m = fixed_points(x);
    let check = is_coxeter_matroid(&m);
    let fan = orbit_fan(x)?;
    let mut rows = Vec::new();
    let mut agree_matroid = true;
    let mut agree_moment = true;
    for u in Permutation::all(x.n()) {
        let g = geometric_retraction(x, &u)?;
        let r = matroid_retraction(&m, &u).ok();
        let mx = retraction_by_moment_maximizer(x, &u);
        agree_matroid &= r.as_ref() == Some(&g);
        agree_moment &= mx.as_ref().is_none_or(|y| *y == g);
        rows.push(vec![
            u.to_string(),
            g.to_string(),
            r.map_or_else(String::new, |p| p.to_string()),
            mx.map_or_else(String::new, |p| p.to_string()),
        ]);
    }
    let connected = fan.fibers_connected();
    let ok = check.is_matroid && agree_matroid && agree_moment && connected;
    let rows = truncate(rows, limit);
    let table: Vec<Value> =
        rows.iter().map(|r| json!({"u": r[0], "geometric": r[1], "matroid": r[2], "moment_maximizer": r[3]})).collect();
    Ok(Outcome::checked(
        json!({
            "n": x.n(),
            "fixed_points": strings(m.elements()),
            "coxeter_matroid": check,
            "retraction_geometric_equals_matroid": agree_matroid,
            "retraction_equals_moment_maximizer": agree_moment,
            "fibers_connected": connected,
            "retraction_table": table,
            "fan": serde_json::to_value(fan.to_json())?,
        }),
        ok,
    )
    .with_table(&["u", "geometric", "matroid", "moment_maximizer"], rows))
}

fn cmd_retraction(m: &CoxeterSubset, limit: Option<usize>) -> CliResult<Outcome> {
    let check = is_coxeter_matroid(m);
    let mut rows = Vec::new();
    let mut agree = true;
    let mut closest = true;
    for u in Permutation::all(m.n()) {
        let a = algebraic_retraction(m, &u)?;
        let r = matroid_retraction(m, &u).ok();
        if check.is_matroid {
            agree &= r.as_ref() == Some(&a);
            let (_, arg) = distance_to_set(&u, m)?;
            closest &= arg.len() == 1 && arg[0] == a;
        }
        rows.push(vec![u.to_string(), a.to_string(), r.map_or_else(String::new, |p| p.to_string())]);
    }
    let ok = !check.is_matroid || (agree && closest);
    let rows = truncate(rows, limit);
    let table: Vec<Value> = rows.iter().map(|r| json!({"u": r[0], "algebraic": r[1], "matroid": r[2]})).collect();
    Ok(Outcome::checked(
        json!({
            "n": m.n(),
            "subset": strings(m.elements()),
            "coxeter_matroid": check,
            "algebraic_equals_matroid": check.is_matroid.then_some(agree),
            "unique_closest_point": check.is_matroid.then_some(closest),
            "table": table,
        }),
        ok,
    )
    .with_table(&["u", "algebraic", "matroid"], rows))
}

fn cmd_sweep(family: Family, g: &GlobalOpts) -> CliResult<Outcome> {
    match family {
        Family::ToricSchubert => sweep_toric(bounded_n(g, 4, MAX_FACE_LATTICE_N)?, g.limit),
        Family::ComplexityOne => sweep_complexity_one(bounded_n(g, 4, MAX_FACE_LATTICE_N)?, g.limit),
        Family::SfClasses => sweep_sf_classes(bounded_n(g, 3, 6)?, g.limit),
        Family::Catalan => sweep_catalan(bounded_n(g, 3, 6)?, g.limit),
        Family::ConjectureSearch => {
            let n = bounded_n(g, 4, MAX_FACE_LATTICE_N)?;
            let forest = schubert::forest_conjecture_search(n);
            let simple = richardson::simplicity_search(n);
            Ok(Outcome::new(json!({
                "n": n,
                "schubert_forest": forest,
                "richardson_simplicity": simple,
            })))
        }
    }
}

fn sweep_toric(n: usize, limit: Option<usize>) -> CliResult<Outcome> {
    let names = ["complexity_zero", "avoids_321_3412", "distinct_letter_word", "boolean_interval", "cube"];
    let mut rows = Vec::new();
    let mut toric = 0;
    let mut disagreements = Vec::new();
    for w in Permutation::all(n) {
        let r = toric_schubert_report(&w);
        toric += usize::from(r.is_toric());
        if !r.consistent() {
            disagreements.push(json!({"w": w.to_string(), "report": r}));
        }
        let mut row = vec![w.to_string()];
        row.extend(r.values().iter().map(|b| b.to_string()));
        rows.push(row);
    }
    let ok = disagreements.is_empty();
    let mut header = vec!["w"];
    header.extend(names);
    Ok(Outcome::checked(
        json!({"n": n, "checked": rows.len(), "toric": toric, "disagreements": truncate(disagreements, limit)}),
        ok,
    )
    .with_table(&header, truncate(rows, limit)))
}

fn sweep_complexity_one(n: usize, limit: Option<usize>) -> CliResult<Outcome> {
    let mut smooth = Vec::new();
    let mut singular = Vec::new();
    let mut disagreements = Vec::new();
    let mut rows = Vec::new();
    for w in Permutation::all(n) {
        let r = complexity_one_report(&w);
        if !r.consistent() {
            disagreements.push(json!({"w": w.to_string(), "report": r}));
        }
        match r.kind {
            schubert::ComplexityOneKind::SmoothC1 => smooth.push(w.to_string()),
            schubert::ComplexityOneKind::SingularC1 => singular.push(w.to_string()),
            schubert::ComplexityOneKind::Neither => {}
        }
        rows.push(vec![w.to_string(), serde_json::to_value(r.kind)?.as_str().unwrap_or("").to_string()]);
    }
    let ok = disagreements.is_empty();
    Ok(Outcome::checked(
        json!({
            "n": n,
            "smooth_c1_count": smooth.len(),
            "singular_c1_count": singular.len(),
            "smooth_c1": truncate(smooth, limit),
            "singular_c1": truncate(singular, limit),
            "disagreements": truncate(disagreements, limit),
        }),
        ok,
    )
    .with_table(&["w", "kind"], truncate(rows, limit)))
}

fn sweep_sf_classes(n: usize, limit: Option<usize>) -> CliResult<Outcome> {
    let classes = sf_classes(n);
    let rows: Vec<Vec<String>> = classes
        .iter()
        .map(|c| Ok(vec![c.canonical.clone(), c.members.to_string(), serde_json::to_string(&c.representative)?]))
        .collect::<CliResult<_>>()?;
    Ok(Outcome::new(json!({
        "n": n,
        "classes": classes.len(),
        "representatives": truncate(classes, limit),
    }))
    .with_table(&["canonical", "members", "representative"], truncate(rows, limit)))
}

fn sweep_catalan(n: usize, limit: Option<usize>) -> CliResult<Outcome> {
    let ts = triangulations(n);
    let b = wedderburn_etherington(n + 1)[n];
    let mut reps: Vec<(String, Fan)> = Vec::new();
    let mut rows = Vec::new();
    let mut consistent = true;
    for t in &ts {
        let form = unordered_canonical(&tree_of_triangulation(t));
        let fan = catalan_fan(t)?;
        // one fan-isomorphism test per class representative
        let hit = reps.iter().position(|(_, f)| fan_isomorphic(f, &fan).unwrap_or(false));
        match hit {
            Some(i) => consistent &= reps[i].0 == form,
            None => {
                consistent &= reps.iter().all(|(f, _)| *f != form);
                reps.push((form.clone(), fan));
            }
        }
        rows.push(vec![serde_json::to_string(&t.to_json())?, form]);
    }
    let ok = consistent && reps.len() as u128 == b;
    Ok(Outcome::checked(
        json!({
            "n": n,
            "triangulations": ts.len(),
            "classes": reps.len(),
            "wedderburn_etherington": b.to_string(),
            "fan_classes_match_trees": consistent,
            "class_forms": truncate(reps.iter().map(|r| r.0.clone()).collect::<Vec<_>>(), limit),
        }),
        ok,
    )
    .with_table(&["triangulation", "unordered_tree"], truncate(rows, limit)))
}

fn cmd_catalan_triangulation(t: &Triangulation) -> CliResult<Outcome> {
    let n = t.n();
    let lr = left_right_trees(t);
    let fan = catalan_fan(t)?;
    let fano = fan.is_fano()?;
    let forest = forest_from_fano_fan(&fan)?;
    let vectors: Vec<Value> = (1..=n)
        .map(|k| json!({"k": k, "k_L": lr.left[k - 1], "k_R": lr.right[k - 1], "v": lr.v(k), "w": lr.w(k)}))
        .collect();
    Ok(Outcome::checked(
        json!({
            "triangulation": t.to_json(),
            "triangles": t.triangles(),
            "left_tree": lr.left_edges(),
            "right_tree": lr.right_edges(),
            "k0": lr.k0(),
            "vectors": vectors,
            "tree": tree_of_triangulation(t).to_string(),
            "unordered_tree": unordered_canonical(&tree_of_triangulation(t)),
            "fano": fano,
            "forest": forest,
            "fan": fan.to_json(),
        }),
        fano,
    ))
}

fn cmd_catalan_perm(u: &Permutation) -> CliResult<Outcome> {
    let n = u.n();
    let t = psi_triangulation(u);
    let atoms = atoms_coatoms_vs_trees(u);
    let mut ok = atoms.holds;
    let mut body = json!({
        "u": u.to_string(),
        "psi": psi(u).to_string(),
        "triangulation": t.to_json(),
        "hat_u": hat_u(u).to_string(),
        "tilde_u": tilde_u(u).to_string(),
        "atoms_coatoms": atoms,
    });
    for (name, side) in [("head", CatalanSide::Head), ("tail", CatalanSide::Tail)] {
        let (v, w) = catalan_pair(u, side);
        let mut entry = json!({"v": v.to_string(), "w": w.to_string()});
        // Q^v_w lives in S_{n+1}; keep the exact polytope for small n
        if n + 1 <= MAX_FACE_LATTICE_N {
            let target = match side {
                CatalanSide::Head => t.clone(),
                CatalanSide::Tail => {
                    let w0 = Permutation::longest(n);
                    psi_triangulation(&(&(&w0 * u) * &w0))
                }
            };
            let bridge = fan_isomorphic(&q_vw(&v, &w)?.normal_fan()?, &catalan_fan(&target)?)?;
            ok &= bridge;
            entry["normal_fan_bridge"] = json!(bridge);
        }
        body[name] = entry;
    }
    Ok(Outcome::checked(body, ok))
}

fn cmd_bott_forest(f: &SignedForest) -> CliResult<Outcome> {
    let fan = fano_bott_from_forest(f)?;
    let fano = fan.is_fano()?;
    let back = forest_from_fano_fan(&fan)?;
    let round_trip = back.canonical_form() == f.canonical_form();
    Ok(Outcome::checked(
        json!({
            "forest": f,
            "canonical": f.canonical_form(),
            "fano": fano,
            "smooth": fan.is_smooth(),
            "round_trip": round_trip,
            "fan": fan.to_json(),
        }),
        fano && round_trip,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Value, bool) {
        let cli = Cli::try_parse_from(std::iter::once("flagtoric").chain(args.iter().copied())).unwrap();
        let (text, ok) = run(&cli).unwrap();
        (serde_json::from_str(&text).unwrap(), ok)
    }

    #[test]
    fn bruhat_examples() {
        let (j, _) = run_args(&["bruhat", "213", "132"]);
        assert_eq!(j["result"]["comparable"], false);
        let (j, _) = run_args(&["bruhat", "e@3", "321"]);
        assert_eq!(j["result"]["v_leq_w"], true);
        let (j, _) = run_args(&["bruhat", "1324", "3412"]);
        assert_eq!(j["result"]["interval_size"], 10);
    }

    #[test]
    fn polytope_examples() {
        let (j, _) = run_args(&["polytope", "qw", "3412"]);
        assert_eq!(j["result"]["dim"], 3);
        assert!(j["result"]["not_simple_at"].as_array().unwrap().contains(&json!("3412")));
        let (j, _) = run_args(&["polytope", "perm", "3"]);
        assert_eq!(j["result"]["f_vector"], json!([6, 6, 1]));
        let (j, _) = run_args(&["polytope", "qvw", "1243", "3412"]);
        assert_eq!(j["result"]["cube"], true);
    }

    #[test]
    fn poincare_examples() {
        let (j, _) = run_args(&["poincare", "4231"]);
        assert_eq!(j["result"]["poincare"], json!([1, 0, 7, 0, 11, 0, 1]));
        let (j, _) = run_args(&["poincare", "w0@3"]);
        assert_eq!(j["result"]["poincare"], json!([1, 0, 4, 0, 1]));
        let (j, _) = run_args(&["poincare", "e@4"]);
        assert_eq!(j["result"]["poincare"], json!([1]));
    }

    #[test]
    fn sweep_examples() {
        let (j, ok) = run_args(&["sweep", "sf-classes", "--n", "4"]);
        assert_eq!(j["result"]["classes"], 13);
        assert!(ok);
        let (j, ok) = run_args(&["sweep", "catalan", "--n", "3"]);
        assert_eq!(j["result"]["classes"], 2);
        assert!(ok);
        let (j, _) = run_args(&["sweep", "conjecture-search", "--n", "4"]);
        assert!(j["result"]["schubert_forest"]["witnesses"].is_array());
    }

    #[test]
    fn random_orbit_agrees() {
        let (j, ok) = run_args(&["orbit", "--random", "--n", "4", "--seed", "1"]);
        assert!(ok, "{j}");
        assert_eq!(j["result"]["retraction_geometric_equals_matroid"], true);
        assert_eq!(j["config"]["seed"], 1);
    }

    #[test]
    fn output_is_deterministic() {
        let a = run_args(&["sweep", "toric-schubert", "--n", "4", "--jobs", "2"]);
        let b = run_args(&["sweep", "toric-schubert", "--n", "4", "--jobs", "2"]);
        assert_eq!(a.0, b.0);
        assert_eq!(a.0["version"], crate::VERSION);
    }

    #[test]
    fn csv_and_text_formats() {
        let cli = Cli::try_parse_from(["flagtoric", "sweep", "toric-schubert", "--n", "3", "--format", "csv"]).unwrap();
        let (text, _) = run(&cli).unwrap();
        assert!(text.starts_with("# flagtoric"));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 7);
        let cli = Cli::try_parse_from(["flagtoric", "bruhat", "12", "21", "--format", "text"]).unwrap();
        let (text, _) = run(&cli).unwrap();
        assert!(text.contains("v_leq_w: true"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(main_with_args(["flagtoric", "bruhat"].map(OsString::from)), 1);
        assert_eq!(main_with_args(["flagtoric", "bruhat", "12", "123"].map(OsString::from)), 1);
    }
}
