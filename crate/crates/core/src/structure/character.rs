use std::fmt;
use std::sync::Arc;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::finset::FiniteSet;
use crate::graphs::{ContactTable, Edge, FiniteGraph, UnitChoice};
use crate::structure::original::OriginalGraph;

/// A contravariant assignment on a graph: a value set `F₀(a)` per vertex and,
/// for every edge `f: a → b`, an action `f^F: F₀(b) → F₀(a)`. No
/// functoriality is assumed.
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    base: Arc<FiniteGraph>,
    values: Vec<FiniteSet>,
    // Per pair `a·n + b`, per edge of `X(a;b)`, the action as a table over `F₀(b)`.
    actions: Vec<Vec<Vec<usize>>>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_map();
        for e in self.base.edges() {
            d.entry(&self.base.edge_name(e), &self.action(e));
        }
        d.finish()
    }
}

impl Character {
    pub fn new(base: Arc<FiniteGraph>, values: Vec<FiniteSet>, actions: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let n = base.vertex_count();
        if values.len() != n || actions.len() != n * n {
            return Err(Error::ShapeMismatch("character data does not match its base".into()));
        }
        for e in base.edges() {
            let table = actions[e.src * n + e.dst]
                .get(e.idx)
                .ok_or_else(|| Error::ShapeMismatch(format!("no action for {}", base.edge_label(e))))?;
            if table.len() != values[e.dst].len() || table.iter().any(|&m| m >= values[e.src].len()) {
                return Err(Error::ShapeMismatch(format!(
                    "action of {} is not a mapping between the value sets",
                    base.edge_label(e)
                )));
            }
        }
        for (k, per_pair) in actions.iter().enumerate() {
            if per_pair.len() != base.hom_len(k / n, k % n) {
                return Err(Error::ShapeMismatch("one action per edge is required".into()));
            }
        }
        Ok(Character { base, values, actions })
    }

    /// The representable character `X(−;x)`: values `X(a;x)` and actions
    /// `h^*(f) = h ∘ f`.
    pub fn representable(x: &OriginalGraph, target: usize) -> Result<Self> {
        let g = x.graph();
        let n = g.vertex_count();
        if target >= n {
            return Err(Error::UnknownElement(format!("vertex index {target}")));
        }
        let values = (0..n).map(|a| g.hom(a, target).clone()).collect();
        let actions = (0..n * n)
            .map(|k| {
                let (b, a) = (k / n, k % n);
                g.edges_between(b, a)
                    .map(|h| {
                        g.edges_between(a, target)
                            .map(|f| x.compose(h, f).idx)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Character {
            base: g.clone(),
            values,
            actions,
        })
    }

    pub fn base(&self) -> &Arc<FiniteGraph> {
        &self.base
    }

    pub fn values(&self, a: usize) -> &FiniteSet {
        &self.values[a]
    }

    pub fn value_sets(&self) -> &[FiniteSet] {
        &self.values
    }

    /// The table of `f^F: F₀(b) → F₀(a)` for `f: a → b`.
    pub fn action(&self, f: Edge) -> &[usize] {
        &self.actions[f.src * self.base.vertex_count() + f.dst][f.idx]
    }

    pub fn act(&self, f: Edge, m: usize) -> usize {
        self.action(f)[m]
    }

    /// `1_a^F` is the identity for every vertex.
    pub fn unital_check(&self, units: &UnitChoice) -> Check {
        let mut check = Check::new("unital character");
        for a in 0..self.base.vertex_count() {
            let table = self.action(units.unit(a));
            for (m, &image) in table.iter().enumerate() {
                check.tick();
                if image != m {
                    return check.fail(
                        vec![self.base.edge_label(units.unit(a)), self.values[a].atom(m).to_string()],
                        self.values[a].atom(m).to_string(),
                        self.values[a].atom(image).to_string(),
                    );
                }
            }
        }
        check
    }

    /// `(h∘f)^F = h^F ∘ f^F` (acting on the right) for every composable pair.
    pub fn functorial_check(&self, contact: &ContactTable) -> Check {
        let mut check = Check::new("functorial character");
        let g = &self.base;
        for x in 0..g.vertex_count() {
            for m in 0..self.values[x].len() {
                check.tick();
                if let Some((location, expected, found)) = social_violation(self, contact, x, m, &|_, a, b| a == b) {
                    return check.fail(location, expected, found);
                }
            }
        }
        check
    }
}

/// A comparison `rel(vertex, h^F(f^F(m)), (h∘f)^F(m))` inside `F₀(vertex)`.
pub type ValueRelation<'a> = &'a dyn Fn(usize, usize, usize) -> bool;

type Violation = (Vec<String>, String, String);

fn social_violation(
    f: &Character,
    contact: &ContactTable,
    x: usize,
    m: usize,
    rel: ValueRelation<'_>,
) -> Option<Violation> {
    let g = &f.base;
    for b in 0..g.vertex_count() {
        for fe in g.edges_between(b, x) {
            let fm = f.act(fe, m);
            for c in 0..g.vertex_count() {
                for he in g.edges_between(c, b) {
                    let left = f.act(he, fm);
                    let right = f.act(contact.compose(he, fe), m);
                    if !rel(c, left, right) {
                        return Some((
                            vec![
                                f.values[x].atom(m).to_string(),
                                g.edge_label(he),
                                g.edge_label(fe),
                            ],
                            f.values[c].atom(right).to_string(),
                            f.values[c].atom(left).to_string(),
                        ));
                    }
                }
            }
        }
    }
    None
}

/// Points `m ∈ F₀(x)` with `rel(c, h^F(f^F(m)), (h∘f)^F(m))` for all
/// `f: b → x`, `h: c → b`.
pub fn social_points_with(f: &Character, contact: &ContactTable, x: usize, rel: ValueRelation<'_>) -> Vec<usize> {
    (0..f.values[x].len())
        .filter(|&m| social_violation(f, contact, x, m, rel).is_none())
        .collect()
}

/// Points of `F₀(x)` on which the action is compatible with contact.
pub fn social_points(f: &Character, contact: &ContactTable, x: usize) -> Vec<usize> {
    social_points_with(f, contact, x, &|_, a, b| a == b)
}

/// The first failing triangle for a non-social point, if any.
pub fn social_witness(f: &Character, contact: &ContactTable, x: usize, m: usize) -> Option<Check> {
    social_violation(f, contact, x, m, &|_, a, b| a == b)
        .map(|(loc, exp, found)| Check::new("social point").fail(loc, exp, found))
}
