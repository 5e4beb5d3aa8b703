use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::finset::{FinitePoset, FiniteSet};
use crate::quantale::values::Quantale;
use crate::util::{bracket, saturating_pow, Budget, MixedRadix};

/// A V-graph: one quantale weight `W(x,y)` per ordered pair of vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    quantale: Arc<Quantale>,
    vertices: FiniteSet,
    weights: Vec<usize>,
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.len();
        let rows: Vec<Vec<&str>> = (0..n)
            .map(|x| (0..n).map(|y| self.quantale.name(self.weight(x, y))).collect())
            .collect();
        f.debug_struct("WeightedGraph")
            .field("vertices", &self.vertices.iter().collect::<Vec<_>>())
            .field("weights", &rows)
            .finish()
    }
}

impl WeightedGraph {
    /// `weights[x·n + y] = W(x,y)`.
    pub fn new(quantale: Arc<Quantale>, vertices: FiniteSet, weights: Vec<usize>) -> Result<Self> {
        let n = vertices.len();
        if weights.len() != n * n || weights.iter().any(|&w| w >= quantale.len()) {
            return Err(Error::ShapeMismatch("one quantale element per ordered pair of vertices".into()));
        }
        Ok(WeightedGraph {
            quantale,
            vertices,
            weights,
        })
    }

    /// Vertices `0..n` with the given weight matrix.
    pub fn from_rows(quantale: Arc<Quantale>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("weight matrix must be square".into()));
        }
        WeightedGraph::new(quantale, FiniteSet::range(n), rows.concat())
    }

    /// A poset as a Boolean V-graph: `W(x,y) = 1` iff `x ≤ y`.
    pub fn from_poset(p: &FinitePoset) -> Self {
        let q = Quantale::boolean();
        let n = p.len();
        WeightedGraph {
            quantale: Arc::new(q),
            vertices: p.carrier().clone(),
            weights: (0..n * n).map(|k| usize::from(p.leq(k / n, k % n))).collect(),
        }
    }

    /// Reads a Boolean V-graph back as a relation matrix.
    pub fn relation(&self) -> Vec<bool> {
        let top = self.quantale.top();
        self.weights.iter().map(|&w| w == top).collect()
    }

    pub fn shared(self) -> Arc<WeightedGraph> {
        Arc::new(self)
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.quantale
    }

    pub fn vertices(&self) -> &FiniteSet {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn weight(&self, x: usize, y: usize) -> usize {
        self.weights[x * self.len() + y]
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    fn pair_label(&self, x: usize, y: usize) -> String {
        format!("({},{})", self.vertices.atom(x), self.vertices.atom(y))
    }
}

fn same_quantale(a: &WeightedGraph, b: &WeightedGraph) -> Result<()> {
    if a.quantale != b.quantale {
        return Err(Error::ShapeMismatch("weighted graphs over different quantales".into()));
    }
    Ok(())
}

/// `e ≤ W(x,x)` for every vertex.
pub fn unit_weights_check(x: &WeightedGraph) -> Check {
    let q = &x.quantale;
    let mut check = Check::new("unit below self weight");
    for a in 0..x.len() {
        check.tick();
        if !q.leq(q.unit(), x.weight(a, a)) {
            return check.fail(vec![x.pair_label(a, a)], format!("at least {}", q.name(q.unit())), q.name(x.weight(a, a)));
        }
    }
    check
}

/// `W(x,y) ⊗ W(y,z) ≤ W(x,z)` for every triple.
pub fn contact_weights_check(x: &WeightedGraph) -> Check {
    let q = &x.quantale;
    let mut check = Check::new("composite below direct weight");
    let n = x.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                check.tick();
                let via = q.tensor(x.weight(a, b), x.weight(b, c));
                if !q.leq(via, x.weight(a, c)) {
                    return check.fail(
                        vec![x.vertices.atom(a).into(), x.vertices.atom(b).into(), x.vertices.atom(c).into()],
                        format!("at least {}", q.name(via)),
                        q.name(x.weight(a, c)),
                    );
                }
            }
        }
    }
    check
}

/// Both V-category laws.
pub fn v_category_validate(x: &WeightedGraph) -> Check {
    unit_weights_check(x).and(contact_weights_check(x)).renamed("V-category")
}

/// Every weighted graph on `n` vertices satisfying both V-category laws,
/// by weight matrix read row-major.
pub fn v_categories(q: &Arc<Quantale>, n: usize) -> impl Iterator<Item = WeightedGraph> + '_ {
    let k = q.len();
    let diagonal: Vec<usize> = (0..k).filter(|&v| q.leq(q.unit(), v)).collect();
    let radices: Vec<usize> = (0..n * n)
        .map(|c| if c / n == c % n { diagonal.len() } else { k })
        .collect();
    MixedRadix::new(radices).filter_map(move |digits| {
        let weights = digits
            .iter()
            .enumerate()
            .map(|(c, &d)| if c / n == c % n { diagonal[d] } else { d })
            .collect();
        let x = WeightedGraph::new(q.clone(), FiniteSet::range(n), weights).ok()?;
        contact_weights_check(&x).holds().then_some(x)
    })
}

/// `(X⊗Y)(⟨x,y⟩;⟨x′,y′⟩) = X(x;x′) ⊗ Y(y;y′)`; vertex `⟨x,y⟩` has index
/// `x·|Y| + y`.
pub fn v_biproduct(x: &WeightedGraph, y: &WeightedGraph) -> Result<WeightedGraph> {
    same_quantale(x, y)?;
    let q = &x.quantale;
    let (nx, ny) = (x.len(), y.len());
    let vertices = FiniteSet::new((0..nx * ny).map(|k| {
        format!(
            "<{},{}>",
            crate::util::escape_atom(x.vertices.atom(k / ny)),
            crate::util::escape_atom(y.vertices.atom(k % ny))
        )
    }))?;
    let n = nx * ny;
    let weights = (0..n * n)
        .map(|k| {
            let (p, r) = (k / n, k % n);
            q.tensor(x.weight(p / ny, r / ny), y.weight(p % ny, r % ny))
        })
        .collect();
    WeightedGraph::new(q.clone(), vertices, weights)
}

/// A vertex map with `W_X(x,y) ≤ W_Y(f x, f y)` for every pair.
#[derive(Clone, PartialEq, Eq)]
pub struct VTransport {
    source: Arc<WeightedGraph>,
    target: Arc<WeightedGraph>,
    map: Vec<usize>,
}

impl fmt::Debug for VTransport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VTransport({})", self.label())
    }
}

impl VTransport {
    pub fn new(source: Arc<WeightedGraph>, target: Arc<WeightedGraph>, map: Vec<usize>) -> Result<Self> {
        same_quantale(&source, &target)?;
        if map.len() != source.len() || map.iter().any(|&v| v >= target.len()) {
            return Err(Error::ShapeMismatch("vertex map does not match the graphs".into()));
        }
        let f = VTransport { source, target, map };
        if let Some(w) = v_transport_check(&f).witness {
            return Err(Error::NotAVTransport(format!("weight drops at {}", w.location.join(", "))));
        }
        Ok(f)
    }

    pub fn identity(x: &Arc<WeightedGraph>) -> Self {
        VTransport {
            source: x.clone(),
            target: x.clone(),
            map: (0..x.len()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<WeightedGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<WeightedGraph> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn label(&self) -> String {
        bracket(
            '[',
            self.map.iter().map(|&v| self.target.vertices.atom(v)),
            ']',
        )
    }
}

fn v_transport_check(f: &VTransport) -> Check {
    let (x, y) = (&f.source, &f.target);
    let q = &x.quantale;
    let mut check = Check::new("V-transport");
    for a in 0..x.len() {
        for b in 0..x.len() {
            check.tick();
            let (w, v) = (x.weight(a, b), y.weight(f.map[a], f.map[b]));
            if !q.leq(w, v) {
                return check.fail(vec![x.pair_label(a, b)], format!("at least {}", q.name(w)), q.name(v));
            }
        }
    }
    check
}

/// Every V-transport `X → Y`, by vertex map read lexicographically.
pub fn v_transports(x: &Arc<WeightedGraph>, y: &Arc<WeightedGraph>) -> impl Iterator<Item = VTransport> {
    let (x, y) = (x.clone(), y.clone());
    MixedRadix::new(vec![y.len(); x.len()]).filter_map(move |map| VTransport::new(x.clone(), y.clone(), map).ok())
}

pub fn count_vertex_maps(x: &WeightedGraph, y: &WeightedGraph) -> u128 {
    saturating_pow(y.len(), x.len())
}

/// `Y^T`: vertices are the V-transports `T → Y` and
/// `Y^T(φ;ψ) = ⋀ₛ Y(φ s; ψ s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VExponential {
    graph: Arc<WeightedGraph>,
    base: Arc<WeightedGraph>,
    target: Arc<WeightedGraph>,
    transports: Vec<VTransport>,
}

impl VExponential {
    pub fn graph(&self) -> &Arc<WeightedGraph> {
        &self.graph
    }

    pub fn base(&self) -> &Arc<WeightedGraph> {
        &self.base
    }

    pub fn target(&self) -> &Arc<WeightedGraph> {
        &self.target
    }

    pub fn transports(&self) -> &[VTransport] {
        &self.transports
    }

    pub fn transport(&self, v: usize) -> &VTransport {
        &self.transports[v]
    }

    pub fn position(&self, map: &[usize]) -> Option<usize> {
        self.transports.iter().position(|t| t.map == map)
    }
}

pub fn v_exponential(t: &Arc<WeightedGraph>, y: &Arc<WeightedGraph>, budget: Budget) -> Result<VExponential> {
    same_quantale(t, y)?;
    budget.admit(count_vertex_maps(t, y))?;
    let q = &y.quantale;
    let transports: Vec<VTransport> = v_transports(t, y).collect();
    let vertices = FiniteSet::new(transports.iter().map(VTransport::label))?;
    let k = transports.len();
    let weights = (0..k * k)
        .map(|c| {
            let (phi, psi) = (&transports[c / k], &transports[c % k]);
            q.meet_all((0..t.len()).map(|s| y.weight(phi.map[s], psi.map[s])))
        })
        .collect();
    Ok(VExponential {
        graph: Arc::new(WeightedGraph::new(q.clone(), vertices, weights)?),
        base: t.clone(),
        target: y.clone(),
        transports,
    })
}

/// Flags of a V-transport between V-categories, compared on the weights
/// the target assigns to images.
///
/// Crude: an exact unit `W_X(x,x) = e` lands on an exact unit. For each
/// exact composite `W_X(a,b) ⊗ W_X(b,c) = W_X(a,c)`, continuous asks
/// `W_Y(fa,fb) ⊗ W_Y(fb,fc) ≤ W_Y(fa,fc)`, cocontinuous asks `≥`, natural
/// asks both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VClassification {
    pub crude: Check,
    pub continuous: Check,
    pub cocontinuous: Check,
    pub natural: Check,
}

impl VClassification {
    pub fn flags(&self) -> [bool; 4] {
        [self.crude.holds(), self.continuous.holds(), self.cocontinuous.holds(), self.natural.holds()]
    }
}

pub fn v_functor_classify(f: &VTransport) -> VClassification {
    let (x, y) = (&f.source, &f.target);
    let q = &x.quantale;
    let name = |v| q.name(v).to_string();
    let mut crude = Check::new("crude");
    for a in 0..x.len() {
        if x.weight(a, a) != q.unit() {
            continue;
        }
        crude.tick();
        let image = y.weight(f.map[a], f.map[a]);
        if image != q.unit() {
            crude = crude.fail(vec![x.pair_label(a, a)], name(q.unit()), name(image));
            break;
        }
    }
    let mut continuous = Check::new("continuous");
    let mut cocontinuous = Check::new("cocontinuous");
    let mut natural = Check::new("natural");
    let n = x.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if q.tensor(x.weight(a, b), x.weight(b, c)) != x.weight(a, c) {
                    continue;
                }
                let (fa, fb, fc) = (f.map[a], f.map[b], f.map[c]);
                let composite = q.tensor(y.weight(fa, fb), y.weight(fb, fc));
                let direct = y.weight(fa, fc);
                let location = || vec![x.vertices.atom(a).to_string(), x.vertices.atom(b).to_string(), x.vertices.atom(c).to_string()];
                continuous.tick();
                cocontinuous.tick();
                natural.tick();
                if !q.leq(composite, direct) {
                    continuous = continuous.fail(location(), format!("at least {}", name(composite)), name(direct));
                }
                if !q.leq(direct, composite) {
                    cocontinuous = cocontinuous.fail(location(), format!("at most {}", name(composite)), name(direct));
                }
                if composite != direct {
                    natural = natural.fail(location(), name(composite), name(direct));
                }
            }
        }
    }
    VClassification {
        crude,
        continuous,
        cocontinuous,
        natural,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::labeled_posets;

    fn tropical() -> Arc<Quantale> {
        Arc::new(Quantale::tropical(3))
    }

    #[test]
    fn boolean_v_categories_are_preorders() {
        let q = Arc::new(Quantale::boolean());
        let cats: Vec<_> = v_categories(&q, 3).collect();
        // 29 preorders on three labeled points.
        assert_eq!(cats.len(), 29);
        assert!(labeled_posets(3).all(|p| v_category_validate(&WeightedGraph::from_poset(&p)).holds()));
    }

    #[test]
    fn tropical_categories_satisfy_triangle() {
        let q = tropical();
        for x in v_categories(&q, 3).take(500) {
            for a in 0..3 {
                assert_eq!(x.weight(a, a), 0);
                for b in 0..3 {
                    for c in 0..3 {
                        let d = |u, v| x.weight(u, v);
                        // Index = distance; index 4 is inf.
                        assert!(d(a, c) <= d(a, b) + d(b, c) || d(a, b) + d(b, c) >= 4);
                    }
                }
            }
        }
    }

    #[test]
    fn all_top_weights_form_a_category() {
        let q = tropical();
        let x = WeightedGraph::from_rows(q, &[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(v_category_validate(&x).holds());
    }

    #[test]
    fn missing_self_distance_fails() {
        let q = tropical();
        let x = WeightedGraph::from_rows(q, &[vec![1, 2], vec![2, 0]]).unwrap();
        let w = v_category_validate(&x).witness.unwrap();
        assert_eq!(w.location, vec!["(0,0)"]);
    }

    #[test]
    fn product_of_categories_is_a_category() {
        let q = tropical();
        let cats: Vec<_> = v_categories(&q, 2).collect();
        for a in &cats {
            for b in &cats {
                assert!(v_category_validate(&v_biproduct(a, b).unwrap()).holds());
            }
        }
    }

    #[test]
    fn single_vertex_exponential_is_the_target() {
        let q = tropical();
        let t = WeightedGraph::from_rows(q.clone(), &[vec![0]]).unwrap().shared();
        let y = WeightedGraph::from_rows(q, &[vec![0, 2], vec![1, 0]]).unwrap().shared();
        let exp = v_exponential(&t, &y, Budget::default()).unwrap();
        assert_eq!(exp.graph().weights(), y.weights());
    }

    #[test]
    fn identity_has_every_flag() {
        let q = tropical();
        for x in v_categories(&q, 2) {
            let x = x.shared();
            assert_eq!(v_functor_classify(&VTransport::identity(&x)).flags(), [true; 4]);
        }
    }

    #[test]
    fn collapsing_map_loses_naturality() {
        let q = tropical();
        // A path 0 →1→ 1 →1→ 2 with d(0,2) = 2, squeezed onto a space where
        // d(0,1) = 1 but the far point is only 1 away.
        let x = WeightedGraph::from_rows(q.clone(), &[vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]).unwrap().shared();
        let y = WeightedGraph::from_rows(q, &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap().shared();
        let f = VTransport::new(x, y, vec![0, 1, 2]).unwrap();
        let c = v_functor_classify(&f);
        assert!(c.crude.holds() && c.continuous.holds());
        assert!(!c.natural.holds() && !c.cocontinuous.holds());
    }
}
