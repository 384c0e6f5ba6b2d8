//! `xmg`: command-line driver for the xmgraph library.
//!
//! Every command writes one canonical JSON report (sorted keys) to stdout or
//! to `--out`. Exit codes: 0 success, 1 failed check or invalid document
//! (the report carries the witness), 2 usage or parse error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use xmgraph::adjunction::{check_triangles, inj_refinement, proj_refinement, AdjunctionError};
use xmgraph::family::are_isomorphic;
use xmgraph::format::{
    edge_graph_json, graph_json, morphism_json, to_canonical_string, FormatError, Workspace,
};
use xmgraph::hullcover::{
    decompose_projective, injective_hull, is_essential_epi, is_essential_mono, is_injective,
    projective_cover, HullError,
};
use xmgraph::hypersem::{
    coreflect_k, counit_hyper, edge_hom_enumerate, edge_object, hyper_is_injective,
    hyper_is_projective, nerve_hyper, nerve_pi, realize_hyper, realize_pi, EdgeGraph, HyperError,
    Hypergraph, Incidence, Nerve, PiGraph, ProjectivityMode,
};
use xmgraph::{hom_enumerate, Context, GraphMorphism, Sort, XMGraph};

#[derive(Parser)]
#[command(
    name = "xmg",
    version,
    about = "Finite (X,M)-graphs, hulls, covers and hypergraph nerves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Workspace document, or a built-in context: trivial-N, quiver,
    /// symmetric-N, idempotent-2.
    #[arg(long, global = true, value_name = "FILE|NAME")]
    context: Option<String>,
    /// Object name in the workspace, or a built-in: V, A, initial,
    /// terminal, E<k>. Repeat for `hom`.
    #[arg(long, global = true, value_name = "NAME")]
    graph: Vec<String>,
    /// Morphism name in the workspace, for the essentiality checks.
    #[arg(long, global = true, value_name = "NAME")]
    morphism: Option<String>,
    /// Edge-graph side for `nerve`, `realize`, `hom` and `check`.
    #[arg(long, global = true, value_enum)]
    target: Option<Target>,
    /// Edge-size bound for `coreflect` and k-bounded projectivity.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Hyper,
    Pi,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Load the workspace and validate every object.
    Validate,
    /// Enumerate morphisms between two graphs.
    Hom,
    /// Projective refinement ι_!ι^*G with its counit.
    RefineProj,
    /// Injective refinement ι_*ι^*G with its unit.
    RefineInj,
    /// Injective hull.
    Hull,
    /// Projective cover.
    Cover,
    /// Run a decider or law check.
    Check {
        #[arg(value_enum)]
        property: Property,
    },
    /// Nerve of a hypergraph or Π-graph.
    Nerve,
    /// Realization of a graph as a hypergraph or Π-graph.
    Realize,
    /// Coreflection of a hypergraph onto edges of size at most k.
    Coreflect,
    /// Emit and check the built-in golden fixtures.
    Examples,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Injective,
    Projective,
    EssentialMono,
    EssentialEpi,
    Triangles,
}

enum Failure {
    Usage(String),
    Parse(Value),
    /// A failed check or invalid input; the report holds the witness.
    Check(Value),
}

type Outcome = Result<Value, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn witness<T: serde::Serialize>(w: &T) -> Value {
    serde_json::to_value(w).expect("witnesses serialize")
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate => "validate",
        Command::Hom => "hom",
        Command::RefineProj => "refine-proj",
        Command::RefineInj => "refine-inj",
        Command::Hull => "hull",
        Command::Cover => "cover",
        Command::Check { .. } => "check",
        Command::Nerve => "nerve",
        Command::Realize => "realize",
        Command::Coreflect => "coreflect",
        Command::Examples => "examples",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let (status, code, mut report) = match run(&cli) {
        Ok(v) => ("ok", 0, v),
        Err(Failure::Check(v)) => ("failed", 1, v),
        Err(Failure::Parse(v)) => ("error", 2, json!({ "error": v })),
        Err(Failure::Usage(msg)) => (
            "error",
            2,
            json!({ "error": { "kind": "usage", "message": msg } }),
        ),
    };
    let obj = report.as_object_mut().expect("reports are objects");
    obj.insert("command".into(), name.into());
    obj.insert("status".into(), status.into());
    let text = to_canonical_string(&report);
    let written = match &cli.opts.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("xmg: cannot write report: {e}");
        return ExitCode::from(2);
    }
    announce(name, status, &report);
    ExitCode::from(code)
}

fn announce(name: &str, status: &str, report: &Value) {
    let color = std::env::var("XMG_COLOR").is_ok_and(|v| v == "1");
    let paint = match (color, status) {
        (false, _) => ("", ""),
        (true, "ok") => ("\x1b[32m", "\x1b[0m"),
        (true, "failed") => ("\x1b[31m", "\x1b[0m"),
        (true, _) => ("\x1b[33m", "\x1b[0m"),
    };
    let detail = report
        .pointer("/error/message")
        .and_then(Value::as_str)
        .map(|m| format!(": {m}"))
        .unwrap_or_default();
    eprintln!("xmg {name}: {}{status}{}{detail}", paint.0, paint.1);
}

fn run(cli: &Cli) -> Outcome {
    let opts = &cli.opts;
    if cli.command_is_examples() {
        return examples();
    }
    let ws = load(opts)?;
    match &cli.command {
        Command::Validate => Ok(validate_report(&ws)),
        Command::Hom => hom(&ws, opts),
        Command::RefineProj => {
            let g = one_graph(&ws, opts)?;
            let (p, eps) = proj_refinement(&g);
            Ok(json!({
                "refinement": graph_json("proj", &p),
                "counit": morphism_json(&eps),
            }))
        }
        Command::RefineInj => {
            let g = one_graph(&ws, opts)?;
            let (q, eta) = inj_refinement(&g).map_err(adjunction_failure)?;
            Ok(json!({
                "refinement": graph_json("inj", &q),
                "unit": morphism_json(&eta),
            }))
        }
        Command::Hull => {
            let g = one_graph(&ws, opts)?;
            let h = injective_hull(&g).map_err(hull_failure)?;
            let terminal = XMGraph::terminal(g.context());
            Ok(json!({
                "hull": graph_json("hull", &h.hull),
                "embedding": morphism_json(&h.embedding),
                "added_arcs": h.added_arcs,
                "added_vertex": h.added_vertex,
                "is_terminal": are_isomorphic(&h.hull, &terminal),
            }))
        }
        Command::Cover => {
            let g = one_graph(&ws, opts)?;
            let c = projective_cover(&g);
            Ok(json!({
                "cover": graph_json("cover", &c.cover),
                "projection": morphism_json(&c.projection),
                "isolated": c.isolated,
                "generators": c.generators,
            }))
        }
        Command::Check { property } => check(&ws, opts, *property),
        Command::Nerve => nerve(&ws, opts),
        Command::Realize => {
            let g = one_graph(&ws, opts)?;
            match opts.target.unwrap_or(Target::Hyper) {
                Target::Hyper => {
                    let r = realize_hyper(&g).map_err(hyper_failure)?;
                    Ok(json!({
                        "realization": edge_graph_json("realization", &r.object),
                        "edge_of_arc": r.edge_of_arc,
                    }))
                }
                Target::Pi => {
                    let r = realize_pi(&g).map_err(hyper_failure)?;
                    Ok(json!({
                        "realization": edge_graph_json("realization", &r.object),
                        "edge_of_arc": r.edge_of_arc,
                    }))
                }
            }
        }
        Command::Coreflect => {
            let k = opts.k.ok_or_else(|| usage("coreflect needs --k"))?;
            let h = one_hypergraph(&ws, opts)?;
            let (c, inc) = coreflect_k(&h, k);
            Ok(json!({
                "coreflection": edge_graph_json("coreflection", &c),
                "inclusion": { "vmap": inc.vmap(), "emap": inc.emap() },
            }))
        }
        Command::Examples => unreachable!("handled above"),
    }
}

impl Cli {
    fn command_is_examples(&self) -> bool {
        matches!(self.command, Command::Examples)
    }
}

fn builtin_context(name: &str) -> Option<Context> {
    if let Some((_, c)) = Context::standard().into_iter().find(|(n, _)| *n == name) {
        return Some(c);
    }
    let (kind, n) = name.rsplit_once('-')?;
    let n: usize = n.parse().ok()?;
    match kind {
        "trivial" => Some(Context::trivial(n)),
        "symmetric" if n <= 6 => Some(Context::symmetric(n)),
        _ => None,
    }
}

fn load(opts: &Opts) -> Result<Workspace, Failure> {
    let Some(source) = &opts.context else {
        return Ok(Workspace::default());
    };
    if Path::new(source).is_file() {
        let text = std::fs::read_to_string(source).map_err(|e| usage(format!("{source}: {e}")))?;
        return Workspace::parse(&text).map_err(|e| match e {
            FormatError::Parse(p) => Failure::Parse(witness(&p)),
            FormatError::Validation(v) => Failure::Check(json!({ "witness": witness(&v) })),
        });
    }
    builtin_context(source)
        .map(|c| Workspace::new(Arc::new(c)))
        .ok_or_else(|| usage(format!("{source} is neither a file nor a built-in context")))
}

fn context(ws: &Workspace) -> Result<&Arc<Context>, Failure> {
    ws.context
        .as_ref()
        .ok_or_else(|| usage("no context: pass --context"))
}

fn graph(ws: &Workspace, name: &str) -> Result<XMGraph, Failure> {
    if let Some(g) = ws.graph(name) {
        return Ok(g.clone());
    }
    let ctx = context(ws)?;
    match name {
        "V" => Ok(XMGraph::representable(ctx, Sort::Vertex)),
        "A" => Ok(XMGraph::representable(ctx, Sort::Arc)),
        "initial" => Ok(XMGraph::initial(ctx)),
        "terminal" => Ok(XMGraph::terminal(ctx)),
        _ => Err(usage(format!("no graph named {name}"))),
    }
}

fn one_name(opts: &Opts) -> Result<&str, Failure> {
    match opts.graph.as_slice() {
        [name] => Ok(name),
        _ => Err(usage("expected exactly one --graph")),
    }
}

fn one_graph(ws: &Workspace, opts: &Opts) -> Result<XMGraph, Failure> {
    graph(ws, one_name(opts)?)
}

fn hypergraph(ws: &Workspace, name: &str) -> Result<Hypergraph, Failure> {
    if let Some(h) = ws.hypergraph(name) {
        return Ok(h.clone());
    }
    name.strip_prefix('E')
        .and_then(|k| k.parse().ok())
        .map(edge_object)
        .ok_or_else(|| usage(format!("no hypergraph named {name}")))
}

fn one_hypergraph(ws: &Workspace, opts: &Opts) -> Result<Hypergraph, Failure> {
    hypergraph(ws, one_name(opts)?)
}

fn pigraph(ws: &Workspace, name: &str) -> Result<PiGraph, Failure> {
    ws.pigraph(name)
        .cloned()
        .ok_or_else(|| usage(format!("no Π-graph named {name}")))
}

fn hyper_failure(e: HyperError) -> Failure {
    match e {
        HyperError::MonoidNotAut | HyperError::KindMismatch => usage(e.to_string()),
        other => Failure::Check(json!({ "witness": witness(&other) })),
    }
}

fn hull_failure(e: HullError) -> Failure {
    Failure::Check(json!({ "witness": witness(&e) }))
}

fn adjunction_failure(e: AdjunctionError) -> Failure {
    match e {
        AdjunctionError::TooLarge(_) => usage(e.to_string()),
        other => Failure::Check(json!({ "witness": witness(&other) })),
    }
}

fn validate_report(ws: &Workspace) -> Value {
    let counts = |n: &str, c: (usize, usize)| json!({ "name": n, "counts": [c.0, c.1] });
    json!({
        "context": ws.context.as_ref().map(|c| json!({ "X": c.arity(), "M": c.order() })),
        "graphs": ws.graphs.iter().map(|g| counts(&g.name, g.value.counts())).collect::<Vec<_>>(),
        "hypergraphs": ws.hypergraphs.iter().map(|g| counts(&g.name, g.value.counts())).collect::<Vec<_>>(),
        "pigraphs": ws.pigraphs.iter().map(|g| counts(&g.name, g.value.counts())).collect::<Vec<_>>(),
        "morphisms": ws.morphisms.iter().map(|m| json!({
            "name": m.name, "source": m.source, "target": m.target, "kind": witness(&m.morphism.kind()),
        })).collect::<Vec<_>>(),
    })
}

fn edge_homs<K: Incidence>(a: &EdgeGraph<K>, b: &EdgeGraph<K>) -> Outcome {
    let maps = edge_hom_enumerate(a, b).map_err(hyper_failure)?;
    Ok(json!({
        "count": maps.len(),
        "morphisms": maps.iter().map(|f| json!({ "vmap": f.vmap(), "emap": f.emap() })).collect::<Vec<_>>(),
    }))
}

fn hom(ws: &Workspace, opts: &Opts) -> Outcome {
    let [a, b] = opts.graph.as_slice() else {
        return Err(usage("hom needs two --graph arguments"));
    };
    match opts.target {
        Some(Target::Hyper) => edge_homs(&hypergraph(ws, a)?, &hypergraph(ws, b)?),
        Some(Target::Pi) => edge_homs(&pigraph(ws, a)?, &pigraph(ws, b)?),
        None => {
            let maps = hom_enumerate(&graph(ws, a)?, &graph(ws, b)?)
                .map_err(|e| Failure::Check(json!({ "witness": witness(&e) })))?;
            Ok(json!({
                "count": maps.len(),
                "morphisms": maps.iter().map(morphism_json).collect::<Vec<_>>(),
            }))
        }
    }
}

fn morphism_or(
    ws: &Workspace,
    opts: &Opts,
    fallback: impl FnOnce(XMGraph) -> GraphMorphism,
) -> Result<GraphMorphism, Failure> {
    match &opts.morphism {
        Some(name) => ws
            .morphism(name)
            .map(|m| m.morphism.clone())
            .ok_or_else(|| usage(format!("no morphism named {name}"))),
        None => Ok(fallback(one_graph(ws, opts)?)),
    }
}

fn verdict(holds: bool, body: Value) -> Outcome {
    if holds {
        Ok(body)
    } else {
        Err(Failure::Check(body))
    }
}

fn check(ws: &Workspace, opts: &Opts, property: Property) -> Outcome {
    match (property, opts.target) {
        (Property::Injective, None) => {
            let cert = is_injective(&one_graph(ws, opts)?)
                .map_err(|e| Failure::Check(json!({ "witness": witness(&e) })))?;
            verdict(cert.holds(), json!({ "certificate": witness(&cert) }))
        }
        (Property::Injective, Some(Target::Hyper)) => {
            let cert = hyper_is_injective(&one_hypergraph(ws, opts)?).map_err(hyper_failure)?;
            verdict(cert.holds(), json!({ "certificate": witness(&cert) }))
        }
        (Property::Projective, None) => {
            let g = one_graph(ws, opts)?;
            match decompose_projective(&g) {
                Some(d) => Ok(json!({
                    "isolated": d.isolated,
                    "generators": d.generators,
                    "iso": morphism_json(&d.iso),
                })),
                None => {
                    let c = projective_cover(&g);
                    Err(Failure::Check(json!({
                        "witness": {
                            "reason": "not a coproduct of representables",
                            "cover_counts": [c.cover.vertex_count(), c.cover.arc_count()],
                            "graph_counts": [g.vertex_count(), g.arc_count()],
                        }
                    })))
                }
            }
        }
        (Property::Projective, Some(Target::Hyper)) => {
            let mode = opts
                .k
                .map_or(ProjectivityMode::Plain, ProjectivityMode::KBounded);
            let h = one_hypergraph(ws, opts)?;
            let holds = hyper_is_projective(&h, mode).map_err(hyper_failure)?;
            verdict(
                holds,
                json!({ "mode": witness(&mode), "edges": h.edge_count() }),
            )
        }
        (Property::Injective | Property::Projective, Some(Target::Pi)) => {
            let ctx = context(ws)?;
            let p = pigraph(ws, one_name(opts)?)?;
            let n = nerve_pi(ctx, &p).map_err(hyper_failure)?;
            if property == Property::Injective {
                let cert = is_injective(&n.graph)
                    .map_err(|e| Failure::Check(json!({ "witness": witness(&e) })))?;
                verdict(cert.holds(), json!({ "nerve_certificate": witness(&cert) }))
            } else {
                let holds = decompose_projective(&n.graph).is_some();
                verdict(
                    holds,
                    json!({ "nerve_counts": [n.graph.vertex_count(), n.graph.arc_count()] }),
                )
            }
        }
        (Property::EssentialMono, _) => {
            let i = morphism_or(ws, opts, |g| {
                injective_hull(&g)
                    .map(|h| h.embedding)
                    .unwrap_or_else(|_| GraphMorphism::identity(&g))
            })?;
            let e = is_essential_mono(&i).map_err(hull_failure)?;
            verdict(e.holds(), json!({ "essentiality": witness(&e) }))
        }
        (Property::EssentialEpi, _) => {
            let p = morphism_or(ws, opts, |g| projective_cover(&g).projection)?;
            let e = is_essential_epi(&p).map_err(hull_failure)?;
            verdict(e.holds(), json!({ "essentiality": witness(&e) }))
        }
        (Property::Triangles, _) => {
            let name = one_name(opts)?;
            let g = graph(ws, name)?;
            let mut along: Vec<GraphMorphism> = ws
                .morphisms
                .iter()
                .filter(|m| m.source == name)
                .map(|m| m.morphism.clone())
                .collect();
            along.push(GraphMorphism::identity(&g));
            let terminal = XMGraph::terminal(g.context());
            along.extend(
                hom_enumerate(&g, &terminal)
                    .map_err(|e| Failure::Check(json!({ "witness": witness(&e) })))?,
            );
            let report = check_triangles(&g, &along).map_err(adjunction_failure)?;
            Ok(json!({ "report": witness(&report), "morphisms": along.len() }))
        }
    }
}

fn orbit_count(g: &XMGraph) -> usize {
    let mut seen = vec![false; g.arc_count()];
    let mut orbits = 0;
    for a in g.arcs() {
        if seen[a] {
            continue;
        }
        orbits += 1;
        for &b in g.orbit_map(a) {
            seen[b] = true;
        }
    }
    orbits
}

fn nerve_json(n: &Nerve) -> Value {
    json!({
        "nerve": graph_json("nerve", &n.graph),
        "labels": n.arcs.iter().map(|(e, f)| json!({ "edge": e, "f": f })).collect::<Vec<_>>(),
        "orbits": orbit_count(&n.graph),
    })
}

fn nerve(ws: &Workspace, opts: &Opts) -> Outcome {
    let ctx = context(ws)?;
    let n = match opts.target.unwrap_or(Target::Hyper) {
        Target::Hyper => nerve_hyper(ctx, &one_hypergraph(ws, opts)?),
        Target::Pi => nerve_pi(ctx, &pigraph(ws, one_name(opts)?)?),
    }
    .map_err(hyper_failure)?;
    Ok(nerve_json(&n))
}

struct Checks(Vec<Value>);

impl Checks {
    fn expect<T: serde::Serialize + PartialEq>(&mut self, name: &str, expected: T, got: T) {
        self.0.push(json!({
            "name": name,
            "expected": witness(&expected),
            "got": witness(&got),
            "pass": expected == got,
        }));
    }

    fn all_pass(&self) -> bool {
        self.0.iter().all(|c| c["pass"] == Value::Bool(true))
    }
}

/// Least incidence in each arc orbit, as digit strings.
fn orbit_labels(g: &XMGraph) -> Vec<String> {
    let mut labels: Vec<String> = g
        .arcs()
        .map(|a| {
            g.orbit_map(a)
                .iter()
                .map(|&b| {
                    g.incidence(b)
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<String>()
                })
                .min()
                .unwrap_or_default()
        })
        .collect();
    labels.sort();
    labels.dedup();
    labels
}

fn examples() -> Outcome {
    let mut checks = Checks(Vec::new());
    let mut fixtures = Vec::new();

    let s3 = Arc::new(Context::symmetric(3));
    let mut ws = Workspace::new(s3.clone());
    let edge = Hypergraph::new(2, &[vec![0, 1]]).expect("valid hypergraph");
    let wide = Hypergraph::new(4, &[vec![0, 1, 2, 3]]).expect("valid hypergraph");
    let n = nerve_hyper(&s3, &edge).map_err(hyper_failure)?;
    checks.expect("two-vertex edge: nerve arcs", 6, n.graph.arc_count());
    checks.expect("two-vertex edge: arc orbits", 2, orbit_count(&n.graph));
    checks.expect(
        "two-vertex edge: orbit labels",
        vec!["001".to_string(), "011".to_string()],
        orbit_labels(&n.graph),
    );
    let r = realize_hyper(&n.graph).map_err(hyper_failure)?;
    checks.expect("two-vertex edge: realized edges", 2, r.object.edge_count());
    let counit = counit_hyper(&s3, &edge).map_err(hyper_failure)?;
    checks.expect(
        "two-vertex edge: counit onto the edge",
        vec![0, 0],
        counit.emap().to_vec(),
    );
    let n4 = nerve_hyper(&s3, &wide).map_err(hyper_failure)?;
    checks.expect("four-vertex edge: nerve arcs", 0, n4.graph.arc_count());
    ws.add_hypergraph("edge", edge);
    ws.add_hypergraph("wide-edge", wide);
    ws.add_graph("nerve-of-edge", n.graph);
    ws.notes.push("|X| = 3 with M = Aut(X)".into());
    fixtures.push(json!({ "name": "hypergraph-x3", "workspace": ws.to_value() }));

    for (name, ctx) in Context::standard() {
        if !["quiver", "symmetric-2", "symmetric-3"].contains(&name) {
            continue;
        }
        let ctx = Arc::new(ctx);
        let v = XMGraph::representable(&ctx, Sort::Vertex);
        let a = XMGraph::representable(&ctx, Sort::Arc);
        checks.expect(&format!("{name}: V counts"), (1, 0), v.counts());
        checks.expect(
            &format!("{name}: A counts"),
            (ctx.arity(), ctx.order()),
            a.counts(),
        );
        let hull = injective_hull(&XMGraph::initial(&ctx)).map_err(hull_failure)?;
        checks.expect(
            &format!("{name}: hull of the initial graph is terminal"),
            true,
            are_isomorphic(&hull.hull, &XMGraph::terminal(&ctx)),
        );
        let triangles = check_triangles(&a, &[GraphMorphism::identity(&a)]).is_ok();
        checks.expect(&format!("{name}: triangles on A"), true, triangles);
        if name == "symmetric-2" {
            checks.expect(
                "symmetric-2: A arcs",
                json!([{ "id": 0, "inc": [0, 1], "act": [0, 1] }, { "id": 1, "inc": [1, 0], "act": [1, 0] }]),
                graph_json("A", &a)["arcs"].clone(),
            );
        }
        let mut ws = Workspace::new(ctx);
        ws.add_graph("V", v);
        ws.add_graph("A", a);
        fixtures.push(json!({ "name": name, "workspace": ws.to_value() }));
    }

    let body = json!({ "fixtures": fixtures, "checks": checks.0 });
    verdict(checks.all_pass(), body)
}
