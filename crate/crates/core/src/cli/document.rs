//! JSON documents describing finite structures and tasks.
//!
//! A document is `{"schema": "adjunct/v1", "kind": ..., "body": ...}` with an
//! optional `"definitions"` object of named `{"kind", "body"}` entries. Any
//! argument position accepts either an inline `{"kind", "body"}` object or a
//! string naming an earlier definition or a built-in fixture.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::cli::task::{parse_task, TaskSpec};
use crate::error::Error;
use crate::finset::{FinitePoset, FiniteSet, Mapping};
use crate::graphs::{ContactTable, Edge, FiniteGraph, Transport, UnitChoice};
use crate::ordered::{OrderedCharacter, OrderedGraph};
use crate::quantale::{quantale_law_checks, Quantale, VTransport, WeightedGraph};
use crate::structure::{self, Character, OriginalGraph};

pub const SCHEMA: &str = "adjunct/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Set,
    Mapping,
    Poset,
    Graph,
    Transport,
    OriginalGraph,
    OrderedGraph,
    Character,
    Quantale,
    WeightedGraph,
    VTransport,
    Task,
}

impl Kind {
    pub const ALL: [Kind; 12] = [
        Kind::Set,
        Kind::Mapping,
        Kind::Poset,
        Kind::Graph,
        Kind::Transport,
        Kind::OriginalGraph,
        Kind::OrderedGraph,
        Kind::Character,
        Kind::Quantale,
        Kind::WeightedGraph,
        Kind::VTransport,
        Kind::Task,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Set => "set",
            Kind::Mapping => "mapping",
            Kind::Poset => "poset",
            Kind::Graph => "graph",
            Kind::Transport => "transport",
            Kind::OriginalGraph => "original_graph",
            Kind::OrderedGraph => "ordered_graph",
            Kind::Character => "character",
            Kind::Quantale => "quantale",
            Kind::WeightedGraph => "weighted_graph",
            Kind::VTransport => "vtransport",
            Kind::Task => "task",
        }
    }

    pub fn from_name(name: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.as_str() == name)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What went wrong, independent of where.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    Schema,
    UnknownKind,
    DanglingReference,
    NotAPoset,
    NotAQuantale,
    UnknownTask,
    Structure,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{}: {message}", if pointer.is_empty() { "/" } else { pointer })]
    Invalid { pointer: String, reason: Reason, message: String },
}

impl DocumentError {
    pub fn reason(&self) -> Option<Reason> {
        match self {
            DocumentError::Syntax { .. } => None,
            DocumentError::Invalid { reason, .. } => Some(*reason),
        }
    }

    pub fn pointer(&self) -> Option<&str> {
        match self {
            DocumentError::Syntax { .. } => None,
            DocumentError::Invalid { pointer, .. } => Some(pointer),
        }
    }
}

pub(crate) type PResult<T> = std::result::Result<T, DocumentError>;

pub(crate) fn invalid(pointer: &str, reason: Reason, message: impl Into<String>) -> DocumentError {
    DocumentError::Invalid {
        pointer: pointer.to_string(),
        reason,
        message: message.into(),
    }
}

pub(crate) fn lift(pointer: &str, e: Error) -> DocumentError {
    let reason = match e {
        Error::NotAPoset(_) => Reason::NotAPoset,
        Error::NotAQuantale(_) => Reason::NotAQuantale,
        Error::UnknownElement(_) => Reason::DanglingReference,
        _ => Reason::Structure,
    };
    invalid(pointer, reason, e.to_string())
}

pub(crate) fn child(pointer: &str, key: impl fmt::Display) -> String {
    let key = key.to_string().replace('~', "~0").replace('/', "~1");
    format!("{pointer}/{key}")
}

/// A resolved structure of any kind.
#[derive(Clone)]
pub enum Structure {
    Set(FiniteSet),
    Mapping(Mapping),
    Poset(FinitePoset),
    Graph(Arc<FiniteGraph>),
    Transport(Transport),
    OriginalGraph(OriginalGraph),
    OrderedGraph(OrderedGraph),
    Character(OrderedCharacter),
    Quantale(Arc<Quantale>),
    WeightedGraph(Arc<WeightedGraph>),
    VTransport(VTransport),
    Task(Box<TaskSpec>),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Set(_) => Kind::Set,
            Structure::Mapping(_) => Kind::Mapping,
            Structure::Poset(_) => Kind::Poset,
            Structure::Graph(_) => Kind::Graph,
            Structure::Transport(_) => Kind::Transport,
            Structure::OriginalGraph(_) => Kind::OriginalGraph,
            Structure::OrderedGraph(_) => Kind::OrderedGraph,
            Structure::Character(_) => Kind::Character,
            Structure::Quantale(_) => Kind::Quantale,
            Structure::WeightedGraph(_) => Kind::WeightedGraph,
            Structure::VTransport(_) => Kind::VTransport,
            Structure::Task(_) => Kind::Task,
        }
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Structure({})", self.kind())
    }
}

/// The ordered graph `{1 ≤ e}` with `e∘e = e`: the smallest monoid whose
/// hom order is a nontrivial chain and whose contact is monotone.
pub fn chain_monoid() -> OrderedGraph {
    let x = OriginalGraph::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]]).expect("fixture is well formed");
    OrderedGraph::from_original(&x, vec![FinitePoset::chain_on(x.graph().hom(0, 0).clone())])
        .expect("one order for the single hom")
}

/// Built-in fixtures addressable by name from any document.
pub fn builtin(name: &str) -> Option<Structure> {
    let s = match name {
        "point" => Structure::Graph(FiniteGraph::point().shared()),
        "loop_point" => Structure::Graph(FiniteGraph::loop_point().shared()),
        "arrow" => Structure::Graph(FiniteGraph::arrow().shared()),
        "walking_arrow" => Structure::OriginalGraph(structure::walking_arrow()),
        "composable_pair" => Structure::OriginalGraph(structure::composable_pair()),
        "z2" => Structure::OriginalGraph(structure::z2()),
        "m3" => Structure::OriginalGraph(structure::m3()),
        "adjoined_unit_z2" => Structure::OriginalGraph(structure::adjoined_unit_z2()),
        "chain_monoid" => Structure::OrderedGraph(chain_monoid()),
        "boolean" => Structure::Quantale(Arc::new(Quantale::boolean())),
        "tropical" => Structure::Quantale(Arc::new(Quantale::tropical(3))),
        _ => return None,
    };
    Some(s)
}

pub const BUILTINS: [&str; 11] = [
    "point",
    "loop_point",
    "arrow",
    "walking_arrow",
    "composable_pair",
    "z2",
    "m3",
    "adjoined_unit_z2",
    "chain_monoid",
    "boolean",
    "tropical",
];

/// Named definitions visible to a document, in declaration order.
#[derive(Default)]
pub(crate) struct Scope {
    defs: Vec<(String, Structure)>,
}

impl Scope {
    fn lookup(&self, name: &str) -> Option<Structure> {
        self.defs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s.clone())
            .or_else(|| builtin(name))
    }

    /// Resolves a reference or an inline document; returns the structure and
    /// its canonical argument form.
    pub(crate) fn structure(&self, v: &Value, pointer: &str) -> PResult<(Structure, Value)> {
        match v {
            Value::String(name) => match self.lookup(name) {
                Some(s) => Ok((s, v.clone())),
                None => Err(invalid(pointer, Reason::DanglingReference, format!("no definition or fixture named `{name}`"))),
            },
            Value::Object(_) => {
                let obj = Obj::new(v, pointer, &["kind", "body"])?;
                let (kind, kind_ptr) = obj.req("kind")?;
                let kind = parse_kind(kind, &kind_ptr)?;
                let (body, body_ptr) = obj.req("body")?;
                let (s, canonical) = self.body(kind, body, &body_ptr)?;
                Ok((s, json!({"kind": kind.as_str(), "body": canonical})))
            }
            _ => Err(invalid(pointer, Reason::Schema, "expected a reference or an inline document")),
        }
    }

    fn expect<T>(&self, v: &Value, pointer: &str, want: &str, pick: impl Fn(Structure) -> Option<T>) -> PResult<(T, Value)> {
        let (s, canonical) = self.structure(v, pointer)?;
        let kind = s.kind();
        match pick(s) {
            Some(t) => Ok((t, canonical)),
            None => Err(invalid(pointer, Reason::Schema, format!("expected {want}, found {kind}"))),
        }
    }

    /// A set argument: an array of atoms, a size `n` for `0..n`, or a set document.
    pub(crate) fn set(&self, v: &Value, pointer: &str) -> PResult<(FiniteSet, Value)> {
        match v {
            Value::Array(_) => Ok((atoms(v, pointer)?, v.clone())),
            Value::Number(_) => Ok((FiniteSet::range(size(v, pointer)?), v.clone())),
            _ => self.expect(v, pointer, "a set", |s| match s {
                Structure::Set(x) => Some(x),
                _ => None,
            }),
        }
    }

    pub(crate) fn poset(&self, v: &Value, pointer: &str) -> PResult<(FinitePoset, Value)> {
        self.expect(v, pointer, "a poset", |s| match s {
            Structure::Poset(p) => Some(p),
            _ => None,
        })
    }

    /// Any graph-like structure, forgetting units, contact and orders.
    pub(crate) fn graph(&self, v: &Value, pointer: &str) -> PResult<(Arc<FiniteGraph>, Value)> {
        self.expect(v, pointer, "a graph", |s| match s {
            Structure::Graph(g) => Some(g),
            Structure::OriginalGraph(x) => Some(x.graph().clone()),
            Structure::OrderedGraph(y) => Some(y.graph().clone()),
            _ => None,
        })
    }

    pub(crate) fn original(&self, v: &Value, pointer: &str) -> PResult<(OriginalGraph, Value)> {
        self.expect(v, pointer, "an original_graph", |s| match s {
            Structure::OriginalGraph(x) => Some(x),
            _ => None,
        })
    }

    pub(crate) fn ordered(&self, v: &Value, pointer: &str) -> PResult<(OrderedGraph, Value)> {
        self.expect(v, pointer, "an ordered_graph", |s| match s {
            Structure::OrderedGraph(y) => Some(y),
            _ => None,
        })
    }

    pub(crate) fn character(&self, v: &Value, pointer: &str) -> PResult<(OrderedCharacter, Value)> {
        self.expect(v, pointer, "a character", |s| match s {
            Structure::Character(c) => Some(c),
            _ => None,
        })
    }

    pub(crate) fn quantale(&self, v: &Value, pointer: &str) -> PResult<(Arc<Quantale>, Value)> {
        self.expect(v, pointer, "a quantale", |s| match s {
            Structure::Quantale(q) => Some(q),
            _ => None,
        })
    }

    pub(crate) fn weighted(&self, v: &Value, pointer: &str) -> PResult<(Arc<WeightedGraph>, Value)> {
        self.expect(v, pointer, "a weighted_graph", |s| match s {
            Structure::WeightedGraph(w) => Some(w),
            _ => None,
        })
    }

    pub(crate) fn vtransport(&self, v: &Value, pointer: &str) -> PResult<(VTransport, Value)> {
        self.expect(v, pointer, "a vtransport", |s| match s {
            Structure::VTransport(f) => Some(f),
            _ => None,
        })
    }

    fn body(&self, kind: Kind, v: &Value, pointer: &str) -> PResult<(Structure, Value)> {
        match kind {
            Kind::Set => {
                let obj = Obj::new(v, pointer, &["atoms"])?;
                let (a, p) = obj.req("atoms")?;
                let set = atoms(a, &p)?;
                let canonical = set_body(&set);
                Ok((Structure::Set(set), canonical))
            }
            Kind::Mapping => self.mapping(v, pointer),
            Kind::Poset => {
                let obj = Obj::new(v, pointer, &["elements", "leq"])?;
                let (e, p) = obj.req("elements")?;
                let carrier = atoms(e, &p)?;
                let poset = match obj.opt("leq") {
                    Some((l, p)) => order_on(&carrier, l, &p)?,
                    None => FinitePoset::discrete(carrier),
                };
                let canonical = poset_body(&poset);
                Ok((Structure::Poset(poset), canonical))
            }
            Kind::Graph => {
                let g = graph_from(v, pointer)?;
                let canonical = graph_body(&g);
                Ok((Structure::Graph(g.shared()), canonical))
            }
            Kind::Transport => self.transport(v, pointer),
            Kind::OriginalGraph => self.original_graph(v, pointer),
            Kind::OrderedGraph => self.ordered_graph(v, pointer),
            Kind::Character => self.character_body(v, pointer),
            Kind::Quantale => {
                let q = quantale_from(v, pointer)?;
                let canonical = quantale_body(&q);
                Ok((Structure::Quantale(Arc::new(q)), canonical))
            }
            Kind::WeightedGraph => self.weighted_graph(v, pointer),
            Kind::VTransport => self.vtransport_body(v, pointer),
            Kind::Task => {
                let (task, canonical) = parse_task(self, v, pointer)?;
                Ok((Structure::Task(Box::new(task)), canonical))
            }
        }
    }

    fn mapping(&self, v: &Value, pointer: &str) -> PResult<(Structure, Value)> {
        let obj = Obj::new(v, pointer, &["source", "target", "pairs"])?;
        let (s, sp) = obj.req("source")?;
        let (source, source_c) = self.set(s, &sp)?;
        let (t, tp) = obj.req("target")?;
        let (target, target_c) = self.set(t, &tp)?;
        let (pairs, pp) = obj.req("pairs")?;
        let assignment = total_map(&source, &target, pairs, &pp, "atom")?;
        let map = Mapping::new(source.clone(), target.clone(), assignment).map_err(|e| lift(&pp, e))?;
        let canonical = json!({
            "source": source_c,
            "target": target_c,
            "pairs": pairs_value(&source, &target, map.assignment()),
        });
        Ok((Structure::Mapping(map), canonical))
    }

    fn transport(&self, v: &Value, pointer: &str) -> PResult<(Structure, Value)> {
        let obj = Obj::new(v, pointer, &["source", "target", "vertices", "edges"])?;
        let (s, sp) = obj.req("source")?;
        let (source, source_c) = self.graph(s, &sp)?;
        let (t, tp) = obj.req("target")?;
        let (target, target_c) = self.graph(t, &tp)?;
        let (vs, vp) = obj.req("vertices")?;
        let vertex_map = total_map(source.vertices(), target.vertices(), vs, &vp, "vertex")?;
        let n = source.vertex_count();
        let mut edge_maps: Vec<Vec<usize>> = (0..n * n).map(|k| vec![0; source.hom_len(k / n, k % n)]).collect();
        let (es, ep) = obj.req("edges")?;
        let es = as_object(es, &ep)?;
        for (name, image) in es {
            let p = child(&ep, name);
            let e = find_edge(&source, name, &p)?;
            let image = as_str(image, &p)?;
            let (fa, fb) = (vertex_map[e.src], vertex_map[e.dst]);
            let idx = target.hom(fa, fb).index_of(image).ok_or_else(|| {
                invalid(
                    &p,
                    Reason::DanglingReference,
                    format!(
                        "no edge `{image}` from {} to {} in the target",
                        target.vertices().atom(fa),
                        target.vertices().atom(fb)
                    ),
                )
            })?;
            edge_maps[e.src * n + e.dst][e.idx] = idx;
        }
        if let Some(e) = source.edges().find(|e| !es.contains_key(source.edge_name(*e))) {
            return Err(invalid(&ep, Reason::Structure, format!("edge `{}` has no image", source.edge_name(e))));
        }
        let f = Transport::new(source.clone(), target.clone(), vertex_map, edge_maps).map_err(|e| lift(pointer, e))?;
        let canonical = json!({
            "source": source_c,
            "target": target_c,
            "vertices": pairs_value(source.vertices(), target.vertices(), f.vertex_map()),
            "edges": Value::Object(
                source
                    .edges()
                    .map(|e| (source.edge_name(e).to_string(), Value::from(target.edge_name(f.edge(e)))))
                    .collect()
            ),
        });
        Ok((Structure::Transport(f), canonical))
    }

    fn original_graph(&self, v: &Value, pointer: &str) -> PResult<(Structure, Value)> {
        let obj = Obj::new(v, pointer, &["graph", "units", "contact"])?;
        let (g, gp) = obj.req("graph")?;
        let (graph, graph_c) = self.graph(g, &gp)?;
        let (c, cp) = obj.req("contact")?;
        if c.as_str() == Some("thin") {
            if let Some((_, up)) = obj.opt("units") {
                return Err(invalid(&up, Reason::Schema, "a thin contact fixes its own units"));
            }
            let x = OriginalGraph::thin(graph).map_err(|e| lift(&cp, e))?;
            return Ok((Structure::OriginalGraph(x), json!({"graph": graph_c, "contact": "thin"})));
        }
        let (u, up) = obj.req("units")?;
        let u = as_object(u, &up)?;
        let mut units = Vec::with_capacity(graph.vertex_count());
        for (a, atom) in graph.vertices().iter().enumerate() {
            let (name, p) = match u.get(atom) {
                Some(name) => (name, child(&up, atom)),
                None => return Err(invalid(&up, Reason::Structure, format!("vertex `{atom}` has no unit"))),
            };
            let name = as_str(name, &p)?;
            let idx = graph.hom(a, a).index_of(name).ok_or_else(|| {
                invalid(&p, Reason::DanglingReference, format!("no loop `{name}` at `{atom}`"))
            })?;
            units.push(idx);
        }
        if let Some(extra) = u.keys().find(|k| !graph.vertices().contains(k)) {
            return Err(invalid(&child(&up, extra), Reason::DanglingReference, format!("unknown vertex `{extra}`")));
        }
        let units = UnitChoice::new(&graph, units).map_err(|e| lift(&up, e))?;
        let rows = as_array(c, &cp)?;
        let mut triples = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let p = child(&cp, i);
            let row = tuple(row, &p, 3)?;
            let mut edges = [Edge::new(0, 0, 0); 3];
            for (k, name) in row.iter().enumerate() {
                edges[k] = find_edge(&graph, as_str(name, &child(&p, k))?, &child(&p, k))?;
            }
            triples.push((edges[0], edges[1], edges[2]));
        }
        let contact = ContactTable::from_triples(&graph, &triples).map_err(|e| lift(&cp, e))?;
        let x = OriginalGraph::new(units, contact).map_err(|e| lift(pointer, e))?;
        let canonical = json!({
            "graph": graph_c,
            "units": units_value(&x),
            "contact": contact_value(&x),
        });
        Ok((Structure::OriginalGraph(x), canonical))
    }

    fn ordered_graph(&self, v: &Value, pointer: &str) -> PResult<(Structure, Value)> {
        let obj = Obj::new(v, pointer, &["original", "orders"])?;
        let (o, op) = obj.req("original")?;
        let (x, x_c) = self.original(o, &op)?;
        let g = x.graph();
        let n = g.vertex_count();
        let (ords, ordp) = obj.req("orders")?;
        let (orders, orders_c) = match ords.as_str() {
            Some("chains") => (
                (0..n * n).map(|k| FinitePoset::chain_on(g.hom(k / n, k % n).clone())).collect(),
                ords.clone(),
            ),
            Some("discrete") => (
                (0..n * n).map(|k| FinitePoset::discrete(g.hom(k / n, k % n).clone())).collect(),
                ords.clone(),
            ),
            _ => {
                let entries = as_array(ords, &ordp)?;
                let mut given: Vec<Option<FinitePoset>> = vec![None; n * n];
                for (i, entry) in entries.iter().enumerate() {
                    let p = child(&ordp, i);
                    let e = Obj::new(entry, &p, &["hom", "leq"])?;
                    let (hom, hp) = e.req("hom")?;
                    let hom = tuple(hom, &hp, 2)?;
                    let a = lookup(g.vertices(), &hom[0], &child(&hp, 0), "vertex")?;
                    let b = lookup(g.vertices(), &hom[1], &child(&hp, 1), "vertex")?;
                    if given[a * n + b].is_some() {
                        return Err(invalid(&hp, Reason::Schema, "hom listed twice"));
                    }
                    let (leq, lp) = e.req("leq")?;
                    given[a * n + b] = Some(order_on(g.hom(a, b), leq, &lp)?);
                }
                let canonical: Vec<Value> = given
                    .iter()
                    .enumerate()
                    .filter_map(|(k, o)| {
                        o.as_ref().map(|o| {
                            json!({
                                "hom": [g.vertices().atom(k / n), g.vertices().atom(k % n)],
                                "leq": leq_value(o),
                            })
                        })
                    })
                    .collect();
                let orders = given
                    .into_iter()
                    .enumerate()
                    .map(|(k, o)| o.unwrap_or_else(|| FinitePoset::discrete(g.hom(k / n, k % n).clone())))
                    .collect();
                (orders, Value::Array(canonical))
            }
        };
        let y = OrderedGraph::from_original(&x, orders).map_err(|e| lift(&ordp, e))?;
        Ok((Structure::OrderedGraph(y), json!({"original": x_c, "orders": orders_c})))
    }

    fn character_body(&self, v: &Value, pointer: &str) -> PResult<(Structure, Value)> {
        let obj = Obj::new(v, pointer, &["base", "values", "actions", "orders"])?;
        let (b, bp) = obj.req("base")?;
        let (base, base_c) = self.graph(b, &bp)?;
        let n = base.vertex_count();
        let (vals, vp) = obj.req("values")?;
        let vals = as_object(vals, &vp)?;
        let mut values = Vec::with_capacity(n);
        for atom in base.vertices().iter() {
            match vals.get(atom) {
                Some(set) => values.push(atoms(set, &child(&vp, atom))?),
                None => return Err(invalid(&vp, Reason::Structure, format!("vertex `{atom}` has no value set"))),
            }
        }
        if let Some(extra) = vals.keys().find(|k| !base.vertices().contains(k)) {
            return Err(invalid(&child(&vp, extra), Reason::DanglingReference, format!("unknown vertex `{extra}`")));
        }
        let (acts, ap) = obj.req("actions")?;
        let acts = as_object(acts, &ap)?;
        let mut actions: Vec<Vec<Vec<usize>>> = (0..n * n).map(|k| vec![Vec::new(); base.hom_len(k / n, k % n)]).collect();
        for (name, table) in acts {
            let p = child(&ap, name);
            let e = find_edge(&base, name, &p)?;
            actions[e.src * n + e.dst][e.idx] = total_map(&values[e.dst], &values[e.src], table, &p, "value")?;
        }
        if let Some(e) = base.edges().find(|e| !acts.contains_key(base.edge_name(*e))) {
            return Err(invalid(&ap, Reason::Structure, format!("edge `{}` has no action", base.edge_name(e))));
        }
        let character = Character::new(base.clone(), values.clone(), actions).map_err(|e| lift(pointer, e))?;
        let mut canonical = Map::new();
        canonical.insert("base".into(), base_c);
        canonical.insert(
            "values".into(),
            Value::Object(
                base.vertices()
                    .iter()
                    .zip(&values)
                    .map(|(a, set)| (a.to_string(), atoms_value(set)))
                    .collect(),
            ),
        );
        canonical.insert(
            "actions".into(),
            Value::Object(
                base.edges()
                    .map(|e| {
                        let table = pairs_value(&values[e.dst], &values[e.src], character.action(e));
                        (base.edge_name(e).to_string(), table)
                    })
                    .collect(),
            ),
        );
        let ordered = match obj.opt("orders") {
            None => OrderedCharacter::discrete(character),
            Some((o, op)) => match o.as_str() {
                Some("chains") => {
                    canonical.insert("orders".into(), o.clone());
                    OrderedCharacter::chains(character)
                }
                Some("discrete") => {
                    canonical.insert("orders".into(), o.clone());
                    OrderedCharacter::discrete(character)
                }
                _ => {
                    let given = as_object(o, &op)?;
                    let mut orders = Vec::with_capacity(n);
                    let mut orders_c = Map::new();
                    for (a, atom) in base.vertices().iter().enumerate() {
                        match given.get(atom) {
                            Some(leq) => {
                                let order = order_on(&values[a], leq, &child(&op, atom))?;
                                orders_c.insert(atom.to_string(), leq_value(&order));
                                orders.push(order);
                            }
                            None => orders.push(FinitePoset::discrete(values[a].clone())),
                        }
                    }
                    if let Some(extra) = given.keys().find(|k| !base.vertices().contains(k)) {
                        return Err(invalid(&child(&op, extra), Reason::DanglingReference, format!("unknown vertex `{extra}`")));
                    }
                    canonical.insert("orders".into(), Value::Object(orders_c));
                    OrderedCharacter::new(character, orders).map_err(|e| lift(&op, e))?
                }
            },
        };
        Ok((Structure::Character(ordered), Value::Object(canonical)))
    }

    fn weighted_graph(&self, v: &Value, pointer: &str) -> PResult<(Structure, Value)> {
        let obj = Obj::new(v, pointer, &["quantale", "vertices", "weights"])?;
        let (q, qp) = obj.req("quantale")?;
        let (quantale, quantale_c) = self.quantale(q, &qp)?;
        let (vs, vp) = obj.req("vertices")?;
        let vertices = atoms(vs, &vp)?;
        let (ws, wp) = obj.req("weights")?;
        let weights = square(quantale.elements(), ws, &wp, vertices.len())?;
        let w = WeightedGraph::new(quantale.clone(), vertices, weights).map_err(|e| lift(&wp, e))?;
        let canonical = weighted_body(&w, quantale_c);
        Ok((Structure::WeightedGraph(Arc::new(w)), canonical))
    }

    fn vtransport_body(&self, v: &Value, pointer: &str) -> PResult<(Structure, Value)> {
        let obj = Obj::new(v, pointer, &["source", "target", "map"])?;
        let (s, sp) = obj.req("source")?;
        let (source, source_c) = self.weighted(s, &sp)?;
        let (t, tp) = obj.req("target")?;
        let (target, target_c) = self.weighted(t, &tp)?;
        let (m, mp) = obj.req("map")?;
        let map = total_map(source.vertices(), target.vertices(), m, &mp, "vertex")?;
        let f = VTransport::new(source.clone(), target.clone(), map).map_err(|e| lift(&mp, e))?;
        let canonical = json!({
            "source": source_c,
            "target": target_c,
            "map": pairs_value(source.vertices(), target.vertices(), f.map()),
        });
        Ok((Structure::VTransport(f), canonical))
    }
}

/// A parsed, validated document with its canonical JSON form.
#[derive(Debug, Clone)]
pub struct Document {
    structure: Structure,
    canonical: Value,
}

impl Document {
    pub fn parse(text: &str) -> PResult<Document> {
        let value: Value = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Document::from_value(&value)
    }

    pub fn from_value(value: &Value) -> PResult<Document> {
        let obj = Obj::new(value, "", &["schema", "kind", "definitions", "body"])?;
        let (schema, sp) = obj.req("schema")?;
        if schema.as_str() != Some(SCHEMA) {
            return Err(invalid(&sp, Reason::Schema, format!("expected schema `{SCHEMA}`")));
        }
        let (kind, kp) = obj.req("kind")?;
        let kind = parse_kind(kind, &kp)?;
        let mut scope = Scope::default();
        let mut definitions = Map::new();
        if let Some((defs, dp)) = obj.opt("definitions") {
            for (name, def) in as_object(defs, &dp)? {
                let p = child(&dp, name);
                if scope.defs.iter().any(|(n, _)| n == name) {
                    return Err(invalid(&p, Reason::Schema, format!("`{name}` is defined twice")));
                }
                if !def.is_object() {
                    return Err(invalid(&p, Reason::Schema, "a definition is a {\"kind\", \"body\"} object"));
                }
                let (s, canonical) = scope.structure(def, &p)?;
                definitions.insert(name.clone(), canonical);
                scope.defs.push((name.clone(), s));
            }
        }
        let (body, bp) = obj.req("body")?;
        let (structure, body_c) = scope.body(kind, body, &bp)?;
        let mut canonical = Map::new();
        canonical.insert("schema".into(), Value::from(SCHEMA));
        canonical.insert("kind".into(), Value::from(kind.as_str()));
        if !definitions.is_empty() {
            canonical.insert("definitions".into(), Value::Object(definitions));
        }
        canonical.insert("body".into(), body_c);
        Ok(Document {
            structure,
            canonical: Value::Object(canonical),
        })
    }

    /// Wraps a canonical body of the given kind; the body is validated.
    pub fn wrap(kind: Kind, body: Value) -> PResult<Document> {
        Document::from_value(&json!({"schema": SCHEMA, "kind": kind.as_str(), "body": body}))
    }

    pub fn kind(&self) -> Kind {
        self.structure.kind()
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn canonical(&self) -> &Value {
        &self.canonical
    }

    /// Indented JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = super::json::pretty(&self.canonical);
        s.push('\n');
        s
    }

    /// One line, no trailing newline.
    pub fn render_compact(&self) -> String {
        serde_json::to_string(&self.canonical).expect("values serialize")
    }
}

/// `render(parse(text))`.
pub fn normalize(text: &str) -> PResult<String> {
    Ok(Document::parse(text)?.render())
}

pub(crate) struct Obj<'a> {
    map: &'a Map<String, Value>,
    pointer: String,
}

impl<'a> Obj<'a> {
    pub(crate) fn new(v: &'a Value, pointer: &str, allowed: &[&str]) -> PResult<Obj<'a>> {
        let map = as_object(v, pointer)?;
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(invalid(&child(pointer, k), Reason::Schema, format!("unexpected key `{k}`")));
        }
        Ok(Obj {
            map,
            pointer: pointer.to_string(),
        })
    }

    pub(crate) fn req(&self, key: &str) -> PResult<(&'a Value, String)> {
        self.opt(key)
            .ok_or_else(|| invalid(&self.pointer, Reason::Schema, format!("missing key `{key}`")))
    }

    pub(crate) fn pointer(&self) -> &str {
        &self.pointer
    }

    pub(crate) fn opt(&self, key: &str) -> Option<(&'a Value, String)> {
        self.map.get(key).map(|v| (v, child(&self.pointer, key)))
    }
}

fn parse_kind(v: &Value, pointer: &str) -> PResult<Kind> {
    let name = as_str(v, pointer)?;
    Kind::from_name(name).ok_or_else(|| invalid(pointer, Reason::UnknownKind, format!("unknown kind `{name}`")))
}

pub(crate) fn as_object<'a>(v: &'a Value, pointer: &str) -> PResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| invalid(pointer, Reason::Schema, "expected an object"))
}

pub(crate) fn as_array<'a>(v: &'a Value, pointer: &str) -> PResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| invalid(pointer, Reason::Schema, "expected an array"))
}

pub(crate) fn as_str<'a>(v: &'a Value, pointer: &str) -> PResult<&'a str> {
    v.as_str().ok_or_else(|| invalid(pointer, Reason::Schema, "expected a string"))
}

pub(crate) fn size(v: &Value, pointer: &str) -> PResult<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| invalid(pointer, Reason::Schema, "expected a non-negative integer"))
}

fn tuple<'a>(v: &'a Value, pointer: &str, len: usize) -> PResult<&'a [Value]> {
    let items = as_array(v, pointer)?;
    if items.len() != len {
        return Err(invalid(pointer, Reason::Schema, format!("expected {len} entries")));
    }
    Ok(items)
}

fn atoms(v: &Value, pointer: &str) -> PResult<FiniteSet> {
    let items = as_array(v, pointer)?;
    let mut names = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let name = as_str(item, &child(pointer, i))?;
        if names.contains(&name) {
            return Err(invalid(&child(pointer, i), Reason::Structure, format!("duplicate atom `{name}`")));
        }
        names.push(name);
    }
    FiniteSet::new(names).map_err(|e| lift(pointer, e))
}

pub(crate) fn lookup(set: &FiniteSet, v: &Value, pointer: &str, what: &str) -> PResult<usize> {
    let name = as_str(v, pointer)?;
    set.index_of(name)
        .ok_or_else(|| invalid(pointer, Reason::DanglingReference, format!("unknown {what} `{name}`")))
}

fn find_edge(g: &FiniteGraph, name: &str, pointer: &str) -> PResult<Edge> {
    g.find_edge(name)
        .ok_or_else(|| invalid(pointer, Reason::DanglingReference, format!("unknown edge `{name}`")))
}

/// An object sending every atom of `source` to an atom of `target`.
fn total_map(source: &FiniteSet, target: &FiniteSet, v: &Value, pointer: &str, what: &str) -> PResult<Vec<usize>> {
    let obj = as_object(v, pointer)?;
    let mut image = vec![None; source.len()];
    for (key, val) in obj {
        let p = child(pointer, key);
        let i = source
            .index_of(key)
            .ok_or_else(|| invalid(&p, Reason::DanglingReference, format!("unknown {what} `{key}`")))?;
        image[i] = Some(lookup(target, val, &p, what)?);
    }
    image
        .into_iter()
        .enumerate()
        .map(|(i, j)| j.ok_or_else(|| invalid(pointer, Reason::Structure, format!("{what} `{}` has no image", source.atom(i)))))
        .collect()
}

/// Pairs `[a, b]` read as `a ≤ b`, closed reflexively and transitively.
fn order_on(carrier: &FiniteSet, v: &Value, pointer: &str) -> PResult<FinitePoset> {
    let items = as_array(v, pointer)?;
    let mut pairs = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let p = child(pointer, i);
        let pair = tuple(item, &p, 2)?;
        pairs.push((lookup(carrier, &pair[0], &child(&p, 0), "element")?, lookup(carrier, &pair[1], &child(&p, 1), "element")?));
    }
    FinitePoset::generated_by(carrier.clone(), &pairs).map_err(|e| lift(pointer, e))
}

fn square(elements: &FiniteSet, v: &Value, pointer: &str, n: usize) -> PResult<Vec<usize>> {
    let rows = tuple(v, pointer, n)?;
    let mut cells = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let p = child(pointer, i);
        for (j, cell) in tuple(row, &p, n)?.iter().enumerate() {
            cells.push(lookup(elements, cell, &child(&p, j), "element")?);
        }
    }
    Ok(cells)
}

fn graph_from(v: &Value, pointer: &str) -> PResult<FiniteGraph> {
    let obj = Obj::new(v, pointer, &["vertices", "edges"])?;
    let (vs, vp) = obj.req("vertices")?;
    let vertices = atoms(vs, &vp)?;
    let (es, ep) = obj.req("edges")?;
    let mut seen: Vec<&str> = Vec::new();
    let mut triples = Vec::new();
    for (i, e) in as_array(es, &ep)?.iter().enumerate() {
        let p = child(&ep, i);
        let e = tuple(e, &p, 3)?;
        let name = as_str(&e[0], &child(&p, 0))?;
        if seen.contains(&name) {
            return Err(invalid(&child(&p, 0), Reason::Structure, format!("duplicate edge name `{name}`")));
        }
        seen.push(name);
        let from = lookup(&vertices, &e[1], &child(&p, 1), "vertex")?;
        let to = lookup(&vertices, &e[2], &child(&p, 2), "vertex")?;
        triples.push((from, to, name.to_string()));
    }
    FiniteGraph::with_edges(vertices, triples).map_err(|e| lift(&ep, e))
}

fn quantale_from(v: &Value, pointer: &str) -> PResult<Quantale> {
    let obj = Obj::new(v, pointer, &["elements", "leq", "tensor", "unit"])?;
    let (e, ep) = obj.req("elements")?;
    let carrier = atoms(e, &ep)?;
    let (l, lp) = obj.req("leq")?;
    let order = order_on(&carrier, l, &lp)?;
    let (t, tp) = obj.req("tensor")?;
    let n = carrier.len();
    let cells = square(&carrier, t, &tp, n)?;
    let table: Vec<Vec<usize>> = cells.chunks(n.max(1)).map(|r| r.to_vec()).collect();
    let (u, up) = obj.req("unit")?;
    let unit = lookup(&carrier, u, &up, "element")?;
    let q = Quantale::new(order, table, unit).map_err(|e| lift(pointer, e))?;
    for law in quantale_law_checks(&q) {
        let Some(w) = law.witness else { continue };
        let idx = |k: usize| carrier.index_of(&w.location[k]).expect("witness names elements");
        let cell = match w.property.as_str() {
            "lattice" => None,
            "unit" => Some((unit, idx(0))),
            "monotone tensor" => Some((idx(0), idx(2))),
            _ => Some((idx(0), idx(1))),
        };
        let message = format!(
            "not a quantale: {} fails at ({}): expected {}, found {}",
            w.property,
            w.location.join(", "),
            w.expected,
            w.found
        );
        return Err(match cell {
            None => invalid(&lp, Reason::NotAQuantale, message),
            Some((i, j)) => invalid(
                &child(&child(&tp, i), j),
                Reason::NotAQuantale,
                format!("{message}; cell {} ⊗ {}", carrier.atom(i), carrier.atom(j)),
            ),
        });
    }
    Ok(q)
}

pub fn atoms_value(set: &FiniteSet) -> Value {
    Value::Array(set.iter().map(Value::from).collect())
}

fn pairs_value(source: &FiniteSet, target: &FiniteSet, assignment: &[usize]) -> Value {
    Value::Object(
        assignment
            .iter()
            .enumerate()
            .map(|(i, &j)| (source.atom(i).to_string(), Value::from(target.atom(j))))
            .collect(),
    )
}

fn leq_value(p: &FinitePoset) -> Value {
    let c = p.carrier();
    Value::Array(p.strict_pairs().into_iter().map(|(i, j)| json!([c.atom(i), c.atom(j)])).collect())
}

pub fn set_body(set: &FiniteSet) -> Value {
    json!({ "atoms": atoms_value(set) })
}

pub fn poset_body(p: &FinitePoset) -> Value {
    json!({ "elements": atoms_value(p.carrier()), "leq": leq_value(p) })
}

pub fn graph_body(g: &FiniteGraph) -> Value {
    let vs = g.vertices();
    let edges: Vec<Value> = g
        .edges()
        .map(|e| json!([g.edge_name(e), vs.atom(e.src), vs.atom(e.dst)]))
        .collect();
    json!({ "vertices": atoms_value(vs), "edges": edges })
}

fn units_value(x: &OriginalGraph) -> Value {
    let g = x.graph();
    Value::Object(
        (0..g.vertex_count())
            .map(|a| (g.vertices().atom(a).to_string(), Value::from(g.edge_name(x.unit(a)))))
            .collect(),
    )
}

fn contact_value(x: &OriginalGraph) -> Value {
    let g = x.graph();
    let mut rows = Vec::new();
    for f in g.edges() {
        for c in 0..g.vertex_count() {
            for h in g.edges_between(f.dst, c) {
                rows.push(json!([g.edge_name(f), g.edge_name(h), g.edge_name(x.compose(f, h))]));
            }
        }
    }
    Value::Array(rows)
}

/// Canonical body of an original graph with its graph inlined.
pub fn original_body(x: &OriginalGraph) -> Value {
    json!({
        "graph": {"kind": "graph", "body": graph_body(x.graph())},
        "units": units_value(x),
        "contact": contact_value(x),
    })
}

pub fn quantale_body(q: &Quantale) -> Value {
    let tensor: Vec<Value> = q
        .table()
        .iter()
        .map(|row| Value::Array(row.iter().map(|&v| Value::from(q.name(v))).collect()))
        .collect();
    json!({
        "elements": atoms_value(q.elements()),
        "leq": leq_value(q.order()),
        "tensor": tensor,
        "unit": q.name(q.unit()),
    })
}

/// Canonical body of a weighted graph; `quantale` is the argument form to emit.
pub fn weighted_body(w: &WeightedGraph, quantale: Value) -> Value {
    let q = w.quantale();
    let n = w.len();
    let rows: Vec<Value> = (0..n)
        .map(|a| Value::Array((0..n).map(|b| Value::from(q.name(w.weight(a, b)))).collect()))
        .collect();
    json!({ "quantale": quantale, "vertices": atoms_value(w.vertices()), "weights": rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(kind: &str, body: Value) -> String {
        json!({"schema": SCHEMA, "kind": kind, "body": body}).to_string()
    }

    #[test]
    fn one_vertex_graph_parses() {
        let d = Document::parse(&doc("graph", json!({"vertices": ["0"], "edges": []}))).unwrap();
        match d.structure() {
            Structure::Graph(g) => assert_eq!(g.vertex_count(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_vertex_is_positioned() {
        let text = doc("graph", json!({"vertices": ["0", "1"], "edges": [["f", "0", "1"], ["g", "1", "2"]]}));
        let e = Document::parse(&text).unwrap_err();
        assert_eq!(e.pointer(), Some("/body/edges/1/2"));
        assert_eq!(e.reason(), Some(Reason::DanglingReference));
    }

    #[test]
    fn syntax_error_has_line_and_column() {
        let e = Document::parse("{\n  \"schema\": \"adjunct/v1\",\n  \"kind\": \n}").unwrap_err();
        assert!(matches!(e, DocumentError::Syntax { line: 4, .. }), "{e:?}");
    }

    #[test]
    fn non_monotone_tensor_names_the_cell() {
        // {m, 1} is a group with m∘m = 1 and 0 is absorbing; m ≤ 1 but m⊗m > 1⊗m.
        let body = json!({
            "elements": ["0", "m", "1"],
            "leq": [["0", "m"], ["m", "1"]],
            "tensor": [["0", "0", "0"], ["0", "1", "m"], ["0", "m", "1"]],
            "unit": "1",
        });
        let e = Document::parse(&doc("quantale", body)).unwrap_err();
        assert_eq!(e.reason(), Some(Reason::NotAQuantale));
        assert_eq!(e.pointer(), Some("/body/tensor/1/1"));
        assert!(e.to_string().contains("monotone tensor"), "{e}");
    }

    #[test]
    fn cyclic_order_is_not_a_poset() {
        let e = Document::parse(&doc("poset", json!({"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}))).unwrap_err();
        assert_eq!(e.reason(), Some(Reason::NotAPoset));
        assert_eq!(e.pointer(), Some("/body/leq"));
    }

    #[test]
    fn unknown_kind_and_dangling_reference() {
        let e = Document::parse(&doc("category", json!({}))).unwrap_err();
        assert_eq!(e.reason(), Some(Reason::UnknownKind));
        let e = Document::parse(&doc("ordered_graph", json!({"original": "nowhere", "orders": "chains"}))).unwrap_err();
        assert_eq!(e.reason(), Some(Reason::DanglingReference));
        assert_eq!(e.pointer(), Some("/body/original"));
    }

    #[test]
    fn definitions_resolve_in_order() {
        let text = json!({
            "schema": SCHEMA,
            "kind": "transport",
            "definitions": {
                "g": {"kind": "graph", "body": {"vertices": ["p"], "edges": [["l", "p", "p"]]}}
            },
            "body": {"source": "g", "target": "walking_arrow", "vertices": {"p": "1"}, "edges": {"l": "1_1"}}
        })
        .to_string();
        let d = Document::parse(&text).unwrap();
        assert_eq!(d.kind(), Kind::Transport);
        assert_eq!(normalize(&d.render()).unwrap(), d.render());
    }

    #[test]
    fn builtins_round_trip_through_original_body() {
        for name in ["walking_arrow", "composable_pair", "z2", "m3", "adjoined_unit_z2"] {
            let Some(Structure::OriginalGraph(x)) = builtin(name) else { panic!("{name}") };
            let d = Document::wrap(Kind::OriginalGraph, original_body(&x)).unwrap();
            match d.structure() {
                Structure::OriginalGraph(y) => {
                    assert_eq!(y.graph(), x.graph());
                    assert_eq!(y.units(), x.units());
                    assert_eq!(y.contact(), x.contact());
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn normalization_reorders_and_closes() {
        let text = doc("poset", json!({"leq": [["b", "c"], ["a", "b"]], "elements": ["a", "b", "c"]}));
        let d = Document::parse(&text).unwrap();
        assert_eq!(d.canonical()["body"]["leq"], json!([["a", "b"], ["a", "c"], ["b", "c"]]));
        let keys: Vec<&String> = d.canonical().as_object().unwrap().keys().collect();
        assert_eq!(keys, ["schema", "kind", "body"]);
    }
}
