//! JSON workspace documents.
//!
//! ```json
//! {
//!   "context": {"X": 2, "M": {"identity": 0, "table": [[0, 1], [1, 0]]},
//!               "action": [[0, 1], [1, 0]]},
//!   "graphs": [{"name": "A", "vertices": 2, "arcs": [
//!       {"id": 0, "inc": [0, 1], "act": [0, 1]},
//!       {"id": 1, "inc": [1, 0], "act": [1, 0]}]}],
//!   "hypergraphs": [{"name": "H", "vertices": 2, "edges": [{"id": 0, "phi": [0, 1]}]}],
//!   "pigraphs": [],
//!   "morphisms": [{"name": "f", "source": "A", "target": "A", "vmap": [0, 1], "amap": [0, 1]}],
//!   "notes": []
//! }
//! ```
//!
//! `table[a][b]` is `a*b` (diagrammatic), `action[x][m]` is `x.m`. Ids must
//! be dense and listed in order. Output keys are sorted and empty lists are
//! omitted, so serialization is canonical.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::algebra::{build_monoid, validate_mset, AlgebraError, Context};
use crate::graph::{GraphError, GraphMorphism, XMGraph};
use crate::hypersem::{EdgeGraph, HyperError, Hypergraph, Incidence, PiGraph};

/// Where a parse error was found: a text position or a path into the
/// document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Text { line: usize, column: usize },
    Path(String),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Text { line, column } => write!(f, "line {line}, column {column}"),
            Location::Path(p) => f.write_str(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{location}: {message}")]
pub struct ParseError {
    pub location: Location,
    pub message: String,
}

/// A law violation found while loading, with the failing instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "layer", content = "witness", rename_all = "snake_case")]
pub enum Witness {
    Algebra(AlgebraError),
    Graph(GraphError),
    Hyper(HyperError),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Algebra(e) => e.fmt(f),
            Witness::Graph(e) => e.fmt(f),
            Witness::Hyper(e) => e.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{path}: {witness}")]
pub struct ValidationError {
    pub path: String,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("validation error at {0}")]
    Validation(#[from] ValidationError),
}

impl FormatError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        FormatError::Parse(ParseError {
            location: Location::Path(path.into()),
            message: message.into(),
        })
    }

    fn invalid(path: impl Into<String>, witness: Witness) -> Self {
        FormatError::Validation(ValidationError {
            path: path.into(),
            witness,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

/// A graph morphism between two named graphs of the workspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedMorphism {
    pub name: String,
    pub source: String,
    pub target: String,
    pub morphism: GraphMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Workspace {
    pub context: Option<Arc<Context>>,
    pub graphs: Vec<Named<XMGraph>>,
    pub hypergraphs: Vec<Named<Hypergraph>>,
    pub pigraphs: Vec<Named<PiGraph>>,
    pub morphisms: Vec<NamedMorphism>,
    pub notes: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    context: Option<RawContext>,
    #[serde(default)]
    graphs: Vec<RawGraph>,
    #[serde(default)]
    hypergraphs: Vec<RawEdgeGraph>,
    #[serde(default)]
    pigraphs: Vec<RawEdgeGraph>,
    #[serde(default)]
    morphisms: Vec<RawMorphism>,
    #[serde(default)]
    notes: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawContext {
    #[serde(rename = "X")]
    x: usize,
    #[serde(rename = "M")]
    m: RawMonoid,
    action: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonoid {
    identity: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    name: String,
    vertices: usize,
    #[serde(default)]
    arcs: Vec<RawArc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArc {
    id: usize,
    inc: Vec<usize>,
    act: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdgeGraph {
    name: String,
    vertices: usize,
    #[serde(default)]
    edges: Vec<RawEdge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: usize,
    phi: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    name: String,
    source: String,
    target: String,
    vmap: Vec<usize>,
    amap: Vec<usize>,
}

fn check_names<'a>(list: &str, names: impl Iterator<Item = &'a String>) -> Result<(), FormatError> {
    let mut seen = HashSet::new();
    for (i, name) in names.enumerate() {
        if !seen.insert(name) {
            return Err(FormatError::at(
                format!("{list}[{i}].name"),
                format!("duplicate name {name:?}"),
            ));
        }
    }
    Ok(())
}

fn load_context(raw: RawContext) -> Result<Context, FormatError> {
    let size = raw.m.table.len();
    for (i, row) in raw.m.table.iter().enumerate() {
        if row.len() != size {
            return Err(FormatError::at(
                format!("context.M.table[{i}]"),
                format!("row has {} entries, expected {size}", row.len()),
            ));
        }
    }
    if raw.action.len() != raw.x {
        return Err(FormatError::at(
            "context.action",
            format!("{} rows, expected X = {}", raw.action.len(), raw.x),
        ));
    }
    for (i, row) in raw.action.iter().enumerate() {
        if row.len() != size {
            return Err(FormatError::at(
                format!("context.action[{i}]"),
                format!("row has {} entries, expected |M| = {size}", row.len()),
            ));
        }
    }
    let monoid = build_monoid(&raw.m.table, raw.m.identity)
        .map_err(|e| FormatError::invalid("context.M", Witness::Algebra(e)))?;
    let carrier = validate_mset(&monoid, &raw.action)
        .map_err(|e| FormatError::invalid("context.action", Witness::Algebra(e)))?;
    Context::new(monoid, carrier).map_err(|e| FormatError::invalid("context", Witness::Algebra(e)))
}

fn load_graph(ctx: &Arc<Context>, i: usize, raw: RawGraph) -> Result<XMGraph, FormatError> {
    let mut inc = Vec::with_capacity(raw.arcs.len());
    let mut act = Vec::with_capacity(raw.arcs.len());
    for (a, arc) in raw.arcs.into_iter().enumerate() {
        let path = format!("graphs[{i}].arcs[{a}]");
        if arc.id != a {
            return Err(FormatError::at(
                format!("{path}.id"),
                format!("id {} out of order, expected {a}", arc.id),
            ));
        }
        if arc.inc.len() != ctx.arity() {
            return Err(FormatError::at(
                format!("{path}.inc"),
                format!("{} entries, expected X = {}", arc.inc.len(), ctx.arity()),
            ));
        }
        if arc.act.len() != ctx.order() {
            return Err(FormatError::at(
                format!("{path}.act"),
                format!("{} entries, expected |M| = {}", arc.act.len(), ctx.order()),
            ));
        }
        inc.push(arc.inc);
        act.push(arc.act);
    }
    XMGraph::new(ctx, raw.vertices, &inc, &act)
        .map_err(|e| FormatError::invalid(format!("graphs[{i}]"), Witness::Graph(e)))
}

fn load_edges(list: &str, i: usize, raw: &RawEdgeGraph) -> Result<Vec<Vec<usize>>, FormatError> {
    raw.edges
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            if edge.id == e {
                Ok(edge.phi.clone())
            } else {
                Err(FormatError::at(
                    format!("{list}[{i}].edges[{e}].id"),
                    format!("id {} out of order, expected {e}", edge.id),
                ))
            }
        })
        .collect()
}

impl Workspace {
    pub fn new(ctx: Arc<Context>) -> Self {
        Self {
            context: Some(ctx),
            ..Self::default()
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let raw: RawDoc = serde_json::from_str(text).map_err(|e| {
            FormatError::Parse(ParseError {
                location: Location::Text {
                    line: e.line(),
                    column: e.column(),
                },
                message: e.to_string(),
            })
        })?;
        check_names("graphs", raw.graphs.iter().map(|g| &g.name))?;
        check_names("hypergraphs", raw.hypergraphs.iter().map(|g| &g.name))?;
        check_names("pigraphs", raw.pigraphs.iter().map(|g| &g.name))?;
        check_names("morphisms", raw.morphisms.iter().map(|g| &g.name))?;

        let context = raw.context.map(load_context).transpose()?.map(Arc::new);
        let needs_context = !raw.graphs.is_empty() || !raw.pigraphs.is_empty();
        let ctx = match (&context, needs_context) {
            (Some(c), _) => Some(c.clone()),
            (None, true) => return Err(FormatError::at("context", "graphs need a context")),
            (None, false) => None,
        };

        let mut ws = Workspace {
            context,
            notes: raw.notes,
            ..Self::default()
        };
        for (i, g) in raw.graphs.into_iter().enumerate() {
            let ctx = ctx.as_ref().expect("checked above");
            let name = g.name.clone();
            ws.graphs.push(Named {
                name,
                value: load_graph(ctx, i, g)?,
            });
        }
        for (i, h) in raw.hypergraphs.iter().enumerate() {
            let edges = load_edges("hypergraphs", i, h)?;
            let value = Hypergraph::new(h.vertices, &edges).map_err(|e| {
                FormatError::invalid(format!("hypergraphs[{i}]"), Witness::Hyper(e))
            })?;
            ws.hypergraphs.push(Named {
                name: h.name.clone(),
                value,
            });
        }
        for (i, p) in raw.pigraphs.iter().enumerate() {
            let arity = ctx.as_ref().expect("checked above").arity();
            let edges = load_edges("pigraphs", i, p)?;
            let value = PiGraph::new(arity, p.vertices, &edges)
                .map_err(|e| FormatError::invalid(format!("pigraphs[{i}]"), Witness::Hyper(e)))?;
            ws.pigraphs.push(Named {
                name: p.name.clone(),
                value,
            });
        }
        for (i, m) in raw.morphisms.into_iter().enumerate() {
            let path = format!("morphisms[{i}]");
            let lookup = |field: &str, name: &str| {
                ws.graph(name).cloned().ok_or_else(|| {
                    FormatError::at(
                        format!("{path}.{field}"),
                        format!("no graph named {name:?}"),
                    )
                })
            };
            let source = lookup("source", &m.source)?;
            let target = lookup("target", &m.target)?;
            let morphism = GraphMorphism::new(source, target, m.vmap, m.amap)
                .map_err(|e| FormatError::invalid(path.clone(), Witness::Graph(e)))?;
            ws.morphisms.push(NamedMorphism {
                name: m.name,
                source: m.source,
                target: m.target,
                morphism,
            });
        }
        Ok(ws)
    }

    pub fn graph(&self, name: &str) -> Option<&XMGraph> {
        self.graphs
            .iter()
            .find(|g| g.name == name)
            .map(|g| &g.value)
    }

    pub fn hypergraph(&self, name: &str) -> Option<&Hypergraph> {
        self.hypergraphs
            .iter()
            .find(|g| g.name == name)
            .map(|g| &g.value)
    }

    pub fn pigraph(&self, name: &str) -> Option<&PiGraph> {
        self.pigraphs
            .iter()
            .find(|g| g.name == name)
            .map(|g| &g.value)
    }

    pub fn morphism(&self, name: &str) -> Option<&NamedMorphism> {
        self.morphisms.iter().find(|m| m.name == name)
    }

    pub fn add_graph(&mut self, name: impl Into<String>, g: XMGraph) {
        self.graphs.push(Named {
            name: name.into(),
            value: g,
        });
    }

    pub fn add_hypergraph(&mut self, name: impl Into<String>, h: Hypergraph) {
        self.hypergraphs.push(Named {
            name: name.into(),
            value: h,
        });
    }

    pub fn add_pigraph(&mut self, name: impl Into<String>, p: PiGraph) {
        self.pigraphs.push(Named {
            name: name.into(),
            value: p,
        });
    }

    pub fn to_value(&self) -> Value {
        let mut doc = Map::new();
        if let Some(ctx) = &self.context {
            doc.insert("context".into(), context_json(ctx));
        }
        let mut put = |key: &str, items: Vec<Value>| {
            if !items.is_empty() {
                doc.insert(key.into(), Value::Array(items));
            }
        };
        put(
            "graphs",
            self.graphs
                .iter()
                .map(|g| graph_json(&g.name, &g.value))
                .collect(),
        );
        put(
            "hypergraphs",
            self.hypergraphs
                .iter()
                .map(|g| edge_graph_json(&g.name, &g.value))
                .collect(),
        );
        put(
            "pigraphs",
            self.pigraphs
                .iter()
                .map(|g| edge_graph_json(&g.name, &g.value))
                .collect(),
        );
        put(
            "morphisms",
            self.morphisms
                .iter()
                .map(|m| {
                    let mut v = morphism_json(&m.morphism);
                    let obj = v.as_object_mut().expect("object");
                    obj.insert("name".into(), m.name.clone().into());
                    obj.insert("source".into(), m.source.clone().into());
                    obj.insert("target".into(), m.target.clone().into());
                    v
                })
                .collect(),
        );
        put(
            "notes",
            self.notes.iter().map(|n| Value::from(n.as_str())).collect(),
        );
        canonical(Value::Object(doc))
    }

    /// Canonical pretty-printed text, newline-terminated.
    pub fn to_json_string(&self) -> String {
        to_canonical_string(&self.to_value())
    }
}

/// Recursively sorts object keys.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(
                entries
                    .into_iter()
                    .map(|(k, v)| (k, canonical(v)))
                    .collect(),
            )
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        other => other,
    }
}

pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonical(v.clone())).expect("json values serialize");
    s.push('\n');
    s
}

pub fn context_json(ctx: &Context) -> Value {
    serde_json::json!({
        "X": ctx.arity(),
        "M": {
            "identity": ctx.monoid().identity(),
            "table": ctx.monoid().table_rows(),
        },
        "action": ctx.carrier().table_rows(),
    })
}

pub fn graph_json(name: &str, g: &XMGraph) -> Value {
    let arcs: Vec<Value> = g
        .arcs()
        .map(|a| {
            serde_json::json!({
                "id": a,
                "inc": g.incidence(a),
                "act": g.orbit_map(a),
            })
        })
        .collect();
    serde_json::json!({"name": name, "vertices": g.vertex_count(), "arcs": arcs})
}

pub fn edge_graph_json<K: Incidence>(name: &str, h: &EdgeGraph<K>) -> Value {
    let edges: Vec<Value> = (0..h.edge_count())
        .map(|e| serde_json::json!({"id": e, "phi": h.phi(e)}))
        .collect();
    serde_json::json!({"name": name, "vertices": h.vertex_count(), "edges": edges})
}

pub fn morphism_json(f: &GraphMorphism) -> Value {
    serde_json::json!({"vmap": f.vmap(), "amap": f.amap()})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sort;

    #[test]
    fn empty_document() {
        let ws = Workspace::parse("{}").unwrap();
        assert_eq!(ws, Workspace::default());
        assert_eq!(ws.to_json_string(), "{}\n");
    }

    #[test]
    fn representable_over_s2() {
        let ctx = Arc::new(Context::symmetric(2));
        let mut ws = Workspace::new(ctx.clone());
        ws.add_graph("A", XMGraph::representable(&ctx, Sort::Arc));
        let v = ws.to_value();
        assert_eq!(v["graphs"][0]["vertices"], 2);
        assert_eq!(
            v["graphs"][0]["arcs"],
            serde_json::json!([
                {"id": 0, "inc": [0, 1], "act": [0, 1]},
                {"id": 1, "inc": [1, 0], "act": [1, 0]},
            ])
        );
        let text = ws.to_json_string();
        let back = Workspace::parse(&text).unwrap();
        assert_eq!(back, ws);
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn wrong_action_arity_is_a_parse_error() {
        let text = r#"{"context": {"X": 2, "M": {"identity": 0, "table": [[0, 1], [1, 0]]},
                       "action": [[0, 1], [1]]}}"#;
        match Workspace::parse(text).unwrap_err() {
            FormatError::Parse(e) => {
                assert_eq!(e.location, Location::Path("context.action[1]".into()))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match Workspace::parse("{\n  \"graphs\": [,]\n}").unwrap_err() {
            FormatError::Parse(ParseError {
                location: Location::Text { line, .. },
                ..
            }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Workspace::parse(r#"{"bogus": 1}"#),
            Err(FormatError::Parse(_))
        ));
    }

    #[test]
    fn law_violations_forward_witnesses() {
        let text = r#"{"context": {"X": 2, "M": {"identity": 0, "table": [[0, 1], [1, 0]]},
                       "action": [[0, 1], [1, 0]]},
                       "graphs": [{"name": "g", "vertices": 2, "arcs": [
                         {"id": 0, "inc": [0, 1], "act": [0, 0]}]}]}"#;
        match Workspace::parse(text).unwrap_err() {
            FormatError::Validation(e) => {
                assert_eq!(e.path, "graphs[0]");
                let w = serde_json::to_value(&e.witness).unwrap();
                assert_eq!(w["layer"], "graph");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ids_must_be_dense() {
        let text = r#"{"hypergraphs": [{"name": "h", "vertices": 1,
                       "edges": [{"id": 1, "phi": [0]}]}]}"#;
        assert!(matches!(
            Workspace::parse(text),
            Err(FormatError::Parse(ParseError { location: Location::Path(p), .. }))
                if p == "hypergraphs[0].edges[0].id"
        ));
    }

    #[test]
    fn morphisms_resolve_names() {
        let ctx = Arc::new(Context::symmetric(2));
        let a = XMGraph::representable(&ctx, Sort::Arc);
        let mut ws = Workspace::new(ctx.clone());
        ws.add_graph("A", a.clone());
        ws.morphisms.push(NamedMorphism {
            name: "swap".into(),
            source: "A".into(),
            target: "A".into(),
            morphism: GraphMorphism::new(a.clone(), a, vec![1, 0], vec![1, 0]).unwrap(),
        });
        ws.add_hypergraph("h", Hypergraph::new(2, &[vec![1, 0]]).unwrap());
        ws.add_pigraph("p", PiGraph::new(2, 1, &[vec![0, 0]]).unwrap());
        ws.notes.push("fixture".into());
        let back = Workspace::parse(&ws.to_json_string()).unwrap();
        assert_eq!(back, ws);
    }
}
