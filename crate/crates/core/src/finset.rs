//! Finite sets, mappings and posets, with the product/exponential
//! adjunction between them.
//!
//! Composition of mappings is written in diagrammatic order throughout the
//! crate: `f.then(g)` applies `f` first.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::util::{bracket, rank, saturating_pow, unrank, Budget, MixedRadix};

/// An ordered list of distinct atoms. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteSet {
    atoms: Arc<IndexSet<String>>,
}

impl PartialEq for FiniteSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.atoms, &other.atoms) || self.atoms.iter().eq(other.atoms.iter())
    }
}

impl Eq for FiniteSet {}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms.iter()).finish()
    }
}

impl Default for FiniteSet {
    fn default() -> Self {
        FiniteSet::empty()
    }
}

impl FiniteSet {
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = IndexSet::new();
        for a in atoms {
            let a = a.into();
            if !set.insert(a.clone()) {
                return Err(Error::DuplicateAtom(a));
            }
        }
        Ok(FiniteSet { atoms: Arc::new(set) })
    }

    pub fn empty() -> Self {
        FiniteSet {
            atoms: Arc::new(IndexSet::new()),
        }
    }

    /// The set `{"0", "1", ..., "n-1"}`.
    pub fn range(n: usize) -> Self {
        FiniteSet {
            atoms: Arc::new((0..n).map(|i| i.to_string()).collect()),
        }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom(&self, index: usize) -> &str {
        &self.atoms[index]
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.atoms.get_index_of(atom)
    }

    pub fn require(&self, atom: &str) -> Result<usize> {
        self.index_of(atom)
            .ok_or_else(|| Error::UnknownElement(atom.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.atoms.iter().map(String::as_str)
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.atoms.contains(atom)
    }
}

/// A total function between two finite sets.
#[derive(Clone, PartialEq, Eq)]
pub struct Mapping {
    source: FiniteSet,
    target: FiniteSet,
    assignment: Vec<usize>,
}

impl fmt::Debug for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, &j) in self.assignment.iter().enumerate() {
            m.entry(&self.source.atom(i), &self.target.atom(j));
        }
        m.finish()
    }
}

impl Mapping {
    pub fn new(source: FiniteSet, target: FiniteSet, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::ShapeMismatch(format!(
                "assignment has {} values for a source of {} elements",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&j| j >= target.len()) {
            return Err(Error::ShapeMismatch(format!(
                "value index {bad} outside a target of {} elements",
                target.len()
            )));
        }
        Ok(Mapping {
            source,
            target,
            assignment,
        })
    }

    /// Builds a mapping from `(source atom, target atom)` pairs; every
    /// source atom must be assigned exactly once.
    pub fn from_pairs(source: FiniteSet, target: FiniteSet, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; source.len()];
        for (s, t) in pairs {
            let i = source.require(s)?;
            let j = target.require(t)?;
            if assignment[i] != usize::MAX {
                return Err(Error::ShapeMismatch(format!("`{s}` assigned twice")));
            }
            assignment[i] = j;
        }
        if let Some(i) = assignment.iter().position(|&j| j == usize::MAX) {
            return Err(Error::ShapeMismatch(format!(
                "`{}` is not assigned",
                source.atom(i)
            )));
        }
        Mapping::new(source, target, assignment)
    }

    pub fn identity(set: &FiniteSet) -> Self {
        Mapping {
            source: set.clone(),
            target: set.clone(),
            assignment: (0..set.len()).collect(),
        }
    }

    pub fn constant(source: &FiniteSet, target: &FiniteSet, value: usize) -> Result<Self> {
        Mapping::new(source.clone(), target.clone(), vec![value; source.len()])
    }

    pub fn source(&self) -> &FiniteSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSet {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, index: usize) -> usize {
        self.assignment[index]
    }

    pub fn apply_atom(&self, atom: &str) -> Result<&str> {
        let i = self.source.require(atom)?;
        Ok(self.target.atom(self.assignment[i]))
    }

    /// Diagrammatic composite: `self` first, then `next`.
    pub fn then(&self, next: &Mapping) -> Result<Mapping> {
        if self.target != next.source {
            return Err(Error::ShapeMismatch(
                "target of the first mapping differs from source of the second".into(),
            ));
        }
        Ok(Mapping {
            source: self.source.clone(),
            target: next.target.clone(),
            assignment: self.assignment.iter().map(|&j| next.assignment[j]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &j in &self.assignment {
            hit[j] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// All mappings `source → target` in lexicographic order of their value lists.
pub fn all_mappings(source: &FiniteSet, target: &FiniteSet) -> impl Iterator<Item = Mapping> {
    let (source, target) = (source.clone(), target.clone());
    MixedRadix::new(vec![target.len(); source.len()]).map(move |assignment| Mapping {
        source: source.clone(),
        target: target.clone(),
        assignment,
    })
}

/// The Cartesian product `X × T` with its two projections. Pair `⟨x,t⟩`
/// sits at index `x·|T| + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    set: FiniteSet,
    left: FiniteSet,
    right: FiniteSet,
}

pub fn product(x: &FiniteSet, t: &FiniteSet) -> Product {
    let atoms: IndexSet<String> = x
        .iter()
        .flat_map(|a| t.iter().map(move |b| bracket('(', [a, b], ')')))
        .collect();
    debug_assert_eq!(atoms.len(), x.len() * t.len());
    Product {
        set: FiniteSet {
            atoms: Arc::new(atoms),
        },
        left: x.clone(),
        right: t.clone(),
    }
}

impl Product {
    pub fn set(&self) -> &FiniteSet {
        &self.set
    }

    pub fn left(&self) -> &FiniteSet {
        &self.left
    }

    pub fn right(&self) -> &FiniteSet {
        &self.right
    }

    pub fn pair(&self, x: usize, t: usize) -> usize {
        x * self.right.len() + t
    }

    pub fn split(&self, index: usize) -> (usize, usize) {
        (index / self.right.len(), index % self.right.len())
    }

    pub fn first_projection(&self) -> Mapping {
        Mapping {
            source: self.set.clone(),
            target: self.left.clone(),
            assignment: (0..self.set.len()).map(|i| self.split(i).0).collect(),
        }
    }

    pub fn second_projection(&self) -> Mapping {
        Mapping {
            source: self.set.clone(),
            target: self.right.clone(),
            assignment: (0..self.set.len()).map(|i| self.split(i).1).collect(),
        }
    }
}

/// `u × v : X × T → X' × T'`, componentwise.
pub fn product_map(u: &Mapping, v: &Mapping) -> Mapping {
    let from = product(&u.source, &v.source);
    let to = product(&u.target, &v.target);
    let assignment = (0..from.set.len())
        .map(|i| {
            let (x, t) = from.split(i);
            to.pair(u.apply(x), v.apply(t))
        })
        .collect();
    Mapping {
        source: from.set,
        target: to.set,
        assignment,
    }
}

/// The set `Y^T` of all mappings `T → Y`, listed lexicographically by
/// value lists (first element of `T` most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exponential {
    set: FiniteSet,
    base: FiniteSet,
    target: FiniteSet,
}

pub fn exponential(t: &FiniteSet, y: &FiniteSet) -> Exponential {
    let atoms: IndexSet<String> = MixedRadix::new(vec![y.len(); t.len()])
        .map(|values| bracket('[', values.iter().map(|&v| y.atom(v)), ']'))
        .collect();
    Exponential {
        set: FiniteSet {
            atoms: Arc::new(atoms),
        },
        base: t.clone(),
        target: y.clone(),
    }
}

impl Exponential {
    pub fn set(&self) -> &FiniteSet {
        &self.set
    }

    pub fn base(&self) -> &FiniteSet {
        &self.base
    }

    pub fn target(&self) -> &FiniteSet {
        &self.target
    }

    fn radices(&self) -> Vec<usize> {
        vec![self.target.len(); self.base.len()]
    }

    pub fn mapping(&self, index: usize) -> Mapping {
        Mapping {
            source: self.base.clone(),
            target: self.target.clone(),
            assignment: unrank(index, &self.radices()),
        }
    }

    pub fn index_of(&self, phi: &Mapping) -> Result<usize> {
        if phi.source != self.base || phi.target != self.target {
            return Err(Error::ShapeMismatch("mapping is not a point of this exponential".into()));
        }
        Ok(rank(&phi.assignment, &self.radices()))
    }

    pub fn mappings(&self) -> impl Iterator<Item = Mapping> + '_ {
        (0..self.set.len()).map(move |i| self.mapping(i))
    }
}

/// `v^T : Y^T → (Y')^T`, post-composition with `v`.
pub fn exponential_map(v: &Mapping, t: &FiniteSet) -> Mapping {
    let from = exponential(t, &v.source);
    let to = exponential(t, &v.target);
    let assignment = (0..from.set.len())
        .map(|i| {
            let phi = from.mapping(i);
            rank(
                &phi.assignment.iter().map(|&y| v.apply(y)).collect::<Vec<_>>(),
                &to.radices(),
            )
        })
        .collect();
    Mapping {
        source: from.set,
        target: to.set,
        assignment,
    }
}

/// Currying: a form `f : X × T → Y` becomes `x ↦ (t ↦ f⟨x,t⟩)`.
pub fn name(product: &Product, exponential: &Exponential, form: &Mapping) -> Result<Mapping> {
    if form.source != product.set {
        return Err(Error::ShapeMismatch("form is not defined on the given product".into()));
    }
    if exponential.base != product.right || exponential.target != form.target {
        return Err(Error::ShapeMismatch(
            "exponential does not match the form's exponent and target".into(),
        ));
    }
    let radices = exponential.radices();
    let assignment = (0..product.left.len())
        .map(|x| {
            let partial: Vec<usize> = (0..product.right.len())
                .map(|t| form.apply(product.pair(x, t)))
                .collect();
            rank(&partial, &radices)
        })
        .collect();
    Ok(Mapping {
        source: product.left.clone(),
        target: exponential.set.clone(),
        assignment,
    })
}

/// Uncurrying: `g : X → Y^T` becomes `⟨x,t⟩ ↦ g(x)(t)`.
pub fn realize(product: &Product, exponential: &Exponential, g: &Mapping) -> Result<Mapping> {
    if g.target != exponential.set {
        return Err(Error::ShapeMismatch("name form does not land in the exponential".into()));
    }
    if g.source != product.left || exponential.base != product.right {
        return Err(Error::ShapeMismatch("product does not match the name form".into()));
    }
    let radices = exponential.radices();
    let assignment = (0..product.set.len())
        .map(|i| {
            let (x, t) = product.split(i);
            unrank(g.apply(x), &radices)[t]
        })
        .collect();
    Ok(Mapping {
        source: product.set.clone(),
        target: exponential.target.clone(),
        assignment,
    })
}

/// The sections mapping `X → (X × T)^T`, `x ↦ (t ↦ ⟨x,t⟩)`.
pub fn unit_section(x: &FiniteSet, t: &FiniteSet) -> Mapping {
    let prod = product(x, t);
    let expo = exponential(t, &prod.set);
    let radices = expo.radices();
    let assignment = (0..x.len())
        .map(|a| {
            let section: Vec<usize> = (0..t.len()).map(|s| prod.pair(a, s)).collect();
            rank(&section, &radices)
        })
        .collect();
    Mapping {
        source: x.clone(),
        target: expo.set,
        assignment,
    }
}

/// Evaluation `Y^T × T → Y`, `⟨φ,s⟩ ↦ φ(s)`.
pub fn counit_eval(y: &FiniteSet, t: &FiniteSet) -> Mapping {
    let expo = exponential(t, y);
    let prod = product(&expo.set, t);
    let radices = expo.radices();
    let assignment = (0..prod.set.len())
        .map(|i| {
            let (phi, s) = prod.split(i);
            unrank(phi, &radices)[s]
        })
        .collect();
    Mapping {
        source: prod.set,
        target: y.clone(),
        assignment,
    }
}

/// Exhaustive check of the set-level currying adjunction on `X`, `T`, `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetAdjunctionReport {
    pub forms: u64,
    pub names: u64,
    /// `|Y|^(|X|·|T|)`.
    pub expected: u64,
    pub realize_after_name: Check,
    pub name_after_realize: Check,
    /// `(η × T) ; ε = id` on `X × T`.
    pub triangle_product: Check,
    /// `η ; ε^T = id` on `Y^T`.
    pub triangle_exponential: Check,
    /// `name((u × T) ; f) = u ; name(f)` for every `u : X → X`.
    pub natural_in_source: Check,
    /// `name(f ; v) = name(f) ; v^T` for every `v : Y → Y`.
    pub natural_in_target: Check,
}

impl SetAdjunctionReport {
    pub fn holds(&self) -> bool {
        self.forms == self.expected
            && self.names == self.expected
            && [
                &self.realize_after_name,
                &self.name_after_realize,
                &self.triangle_product,
                &self.triangle_exponential,
                &self.natural_in_source,
                &self.natural_in_target,
            ]
            .iter()
            .all(|c| c.holds())
    }
}

pub fn set_adjunction_suite(x: &FiniteSet, t: &FiniteSet, y: &FiniteSet, budget: Budget) -> Result<SetAdjunctionReport> {
    let prod = product(x, t);
    let expo = exponential(t, y);
    let expected = saturating_pow(y.len(), x.len() * t.len());
    let endos = saturating_pow(x.len(), x.len()) + saturating_pow(y.len(), y.len());
    // Forms, names and the endomaps driving both naturality squares.
    budget.admit(expected.saturating_mul(2).saturating_add(endos))?;
    let expected = expected as u64;

    let mut forms = 0;
    let mut realize_after_name = Check::new("realize(name(f)) = f");
    let mut natural_in_source = Check::new("name is natural in the source");
    let mut natural_in_target = Check::new("name is natural in the target");
    let sources: Vec<Mapping> = all_mappings(x, x).collect();
    let targets: Vec<(Mapping, Mapping)> = all_mappings(y, y).map(|v| {
        let vt = exponential_map(&v, t);
        (v, vt)
    }).collect();
    for f in all_mappings(prod.set(), y) {
        forms += 1;
        realize_after_name.tick();
        let g = name(&prod, &expo, &f)?;
        let back = realize(&prod, &expo, &g)?;
        if back != f {
            realize_after_name = realize_after_name.fail(vec![format!("{f:?}")], format!("{f:?}"), format!("{back:?}"));
        }
        for u in &sources {
            natural_in_source.tick();
            let left = name(&prod, &expo, &product_map(u, &Mapping::identity(t)).then(&f)?)?;
            let right = u.then(&g)?;
            if left != right {
                natural_in_source = natural_in_source.fail(vec![format!("{f:?}"), format!("{u:?}")], format!("{right:?}"), format!("{left:?}"));
            }
        }
        for (v, vt) in &targets {
            natural_in_target.tick();
            let left = name(&prod, &exponential(t, v.target()), &f.then(v)?)?;
            let right = g.then(vt)?;
            if left != right {
                natural_in_target = natural_in_target.fail(vec![format!("{f:?}"), format!("{v:?}")], format!("{right:?}"), format!("{left:?}"));
            }
        }
    }

    let mut names = 0;
    let mut name_after_realize = Check::new("name(realize(g)) = g");
    for g in all_mappings(x, expo.set()) {
        names += 1;
        name_after_realize.tick();
        let back = name(&prod, &expo, &realize(&prod, &expo, &g)?)?;
        if back != g {
            name_after_realize = name_after_realize.fail(vec![format!("{g:?}")], format!("{g:?}"), format!("{back:?}"));
        }
    }

    let mut triangle_product = Check::new("triangle on X × T");
    let eta_t = product_map(&unit_section(x, t), &Mapping::identity(t));
    let composite = eta_t.then(&counit_eval(prod.set(), t))?;
    for i in 0..prod.set().len() {
        triangle_product.tick();
        if composite.apply(i) != i {
            let at = prod.set().atom(i);
            triangle_product = triangle_product.fail(vec![at.to_string()], at, prod.set().atom(composite.apply(i)));
        }
    }

    let mut triangle_exponential = Check::new("triangle on Y^T");
    let composite = unit_section(expo.set(), t).then(&exponential_map(&counit_eval(y, t), t))?;
    for i in 0..expo.set().len() {
        triangle_exponential.tick();
        if composite.apply(i) != i {
            let at = expo.set().atom(i);
            triangle_exponential = triangle_exponential.fail(vec![at.to_string()], at, expo.set().atom(composite.apply(i)));
        }
    }

    Ok(SetAdjunctionReport {
        forms,
        names,
        expected,
        realize_after_name,
        name_after_realize,
        triangle_product,
        triangle_exponential,
        natural_in_source,
        natural_in_target,
    })
}

/// A partial order on a finite set, stored as a dense `leq` matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    carrier: FiniteSet,
    leq: Vec<bool>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.carrier.len();
        let strict: Vec<(&str, &str)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.leq(i, j))
            .map(|(i, j)| (self.carrier.atom(i), self.carrier.atom(j)))
            .collect();
        f.debug_struct("FinitePoset")
            .field("carrier", &self.carrier)
            .field("strict", &strict)
            .finish()
    }
}

impl FinitePoset {
    /// Validates a complete relation matrix (row-major, `leq[i·n + j]` means `i ≤ j`).
    pub fn from_matrix(carrier: FiniteSet, leq: Vec<bool>) -> Result<Self> {
        let n = carrier.len();
        if leq.len() != n * n {
            return Err(Error::ShapeMismatch("order matrix has the wrong size".into()));
        }
        let poset = FinitePoset { carrier, leq };
        poset.validate()?;
        Ok(poset)
    }

    /// Reflexive-transitive closure of `pairs` (`(i, j)` meaning `i ≤ j`),
    /// rejected if the closure is not antisymmetric.
    pub fn generated_by(carrier: FiniteSet, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = carrier.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::ShapeMismatch(format!("pair ({i},{j}) outside the carrier")));
            }
            leq[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        FinitePoset::from_matrix(carrier, leq)
    }

    pub fn discrete(carrier: FiniteSet) -> Self {
        let n = carrier.len();
        let leq = (0..n * n).map(|k| k / n == k % n).collect();
        FinitePoset { carrier, leq }
    }

    /// The chain `0 ≤ 1 ≤ … ≤ n-1`.
    pub fn chain(n: usize) -> Self {
        let leq = (0..n * n).map(|k| k / n <= k % n).collect();
        FinitePoset {
            carrier: FiniteSet::range(n),
            leq,
        }
    }

    /// A chain on an existing carrier, in the carrier's order.
    pub fn chain_on(carrier: FiniteSet) -> Self {
        let n = carrier.len();
        let leq = (0..n * n).map(|k| k / n <= k % n).collect();
        FinitePoset { carrier, leq }
    }

    fn validate(&self) -> Result<()> {
        let n = self.carrier.len();
        let name = |i: usize| self.carrier.atom(i).to_string();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::NotAPoset(format!("`{}` is not ≤ itself", name(i))));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::NotAPoset(format!(
                        "`{}` and `{}` are mutually ≤ (antisymmetry)",
                        name(i),
                        name(j)
                    )));
                }
                for k in 0..n {
                    if self.leq(i, j) && self.leq(j, k) && !self.leq(i, k) {
                        return Err(Error::NotAPoset(format!(
                            "`{}` ≤ `{}` ≤ `{}` but not `{}` ≤ `{}` (transitivity)",
                            name(i),
                            name(j),
                            name(k),
                            name(i),
                            name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &FiniteSet {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.carrier.len() + j]
    }

    pub fn matrix(&self) -> &[bool] {
        &self.leq
    }

    pub fn is_discrete(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| i == j || !self.leq(i, j)))
    }

    /// Strict relations `(i, j)` with `i ≤ j`, `i ≠ j`, in row-major order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.leq(i, j))
            .collect()
    }

    /// The order on `P × Q` initial for both projections.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let prod = product(&self.carrier, &other.carrier);
        let n = prod.set.len();
        let leq = (0..n * n)
            .map(|k| {
                let (a, b) = (prod.split(k / n), prod.split(k % n));
                self.leq(a.0, b.0) && other.leq(a.1, b.1)
            })
            .collect();
        FinitePoset {
            carrier: prod.set,
            leq,
        }
    }

    /// The dual order.
    pub fn opposite(&self) -> FinitePoset {
        let n = self.len();
        FinitePoset {
            carrier: self.carrier.clone(),
            leq: (0..n * n).map(|k| self.leq(k % n, k / n)).collect(),
        }
    }

    pub fn greatest_lower_bound(&self, elements: &[usize]) -> Option<usize> {
        let n = self.len();
        let lower: Vec<usize> = (0..n)
            .filter(|&c| elements.iter().all(|&e| self.leq(c, e)))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&c| lower.iter().all(|&d| self.leq(d, c)))
    }

    pub fn least_upper_bound(&self, elements: &[usize]) -> Option<usize> {
        let n = self.len();
        let upper: Vec<usize> = (0..n)
            .filter(|&c| elements.iter().all(|&e| self.leq(e, c)))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&c| upper.iter().all(|&d| self.leq(c, d)))
    }
}

/// A mapping between poset carriers that preserves the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    map: Mapping,
}

impl MonotoneMap {
    pub fn new(map: Mapping, source: &FinitePoset, target: &FinitePoset) -> Result<Self> {
        if map.source != source.carrier || map.target != target.carrier {
            return Err(Error::ShapeMismatch("mapping does not connect the given posets".into()));
        }
        if let Some((i, j)) = first_monotonicity_failure(&map, source, target) {
            return Err(Error::NotMonotone(format!(
                "`{}` ≤ `{}` but their images are not ordered",
                source.carrier.atom(i),
                source.carrier.atom(j)
            )));
        }
        Ok(MonotoneMap { map })
    }

    pub fn mapping(&self) -> &Mapping {
        &self.map
    }

    pub fn into_mapping(self) -> Mapping {
        self.map
    }
}

fn first_monotonicity_failure(map: &Mapping, p: &FinitePoset, q: &FinitePoset) -> Option<(usize, usize)> {
    let n = p.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| p.leq(i, j) && !q.leq(map.apply(i), map.apply(j)))
}

pub fn is_monotone(map: &Mapping, p: &FinitePoset, q: &FinitePoset) -> bool {
    first_monotonicity_failure(map, p, q).is_none()
}

/// `lim x = { y : x ≤ y }`.
pub fn limit_set(p: &FinitePoset, x: &str) -> Result<FiniteSet> {
    let i = p.carrier.require(x)?;
    let atoms: Vec<&str> = (0..p.len())
        .filter(|&j| p.leq(i, j))
        .map(|j| p.carrier.atom(j))
        .collect();
    FiniteSet::new(atoms)
}

/// Continuity read through limit sets: `f(lim x) ⊆ lim f(x)` for all `x`.
pub fn is_limit_continuous(map: &Mapping, p: &FinitePoset, q: &FinitePoset) -> bool {
    (0..p.len()).all(|x| {
        let fx = map.apply(x);
        (0..p.len())
            .filter(|&y| p.leq(x, y))
            .all(|y| q.leq(fx, map.apply(y)))
    })
}

/// The monotone maps `T → Y` as a sub-poset of `Y^T` with the pointwise order.
#[derive(Debug, Clone)]
pub struct PosetExponential {
    poset: FinitePoset,
    maps: Vec<MonotoneMap>,
}

impl PosetExponential {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn maps(&self) -> &[MonotoneMap] {
        &self.maps
    }
}

pub fn poset_exponential(t: &FinitePoset, y: &FinitePoset) -> PosetExponential {
    let full = exponential(&t.carrier, &y.carrier);
    let maps: Vec<MonotoneMap> = full
        .mappings()
        .filter(|m| is_monotone(m, t, y))
        .map(|map| MonotoneMap { map })
        .collect();
    let carrier = FiniteSet::new(
        maps.iter()
            .map(|m| full.set.atom(full.index_of(&m.map).expect("point of the exponential")).to_string()),
    )
    .expect("distinct mappings have distinct labels");
    let k = maps.len();
    let leq = (0..k * k)
        .map(|idx| {
            let (a, b) = (&maps[idx / k].map, &maps[idx % k].map);
            (0..t.len()).all(|s| y.leq(a.apply(s), b.apply(s)))
        })
        .collect();
    PosetExponential {
        poset: FinitePoset { carrier, leq },
        maps,
    }
}

/// Checks that evaluation on `Mn(T;Y) × T` is monotone: `φ ≤ ψ`, `s ≤ t`
/// imply `φ(s) ≤ ψ(t)`.
pub fn poset_eval_monotone_check(t: &FinitePoset, y: &FinitePoset) -> Check {
    let expo = poset_exponential(t, y);
    let mut check = Check::new("evaluation is monotone");
    let k = expo.maps.len();
    for a in 0..k {
        for b in 0..k {
            if !expo.poset.leq(a, b) {
                continue;
            }
            for s in 0..t.len() {
                for u in 0..t.len() {
                    if !t.leq(s, u) {
                        continue;
                    }
                    check.tick();
                    let (phi, psi) = (expo.maps[a].mapping(), expo.maps[b].mapping());
                    if !y.leq(phi.apply(s), psi.apply(u)) {
                        return check.fail(
                            vec![
                                expo.poset.carrier.atom(a).into(),
                                expo.poset.carrier.atom(b).into(),
                                t.carrier.atom(s).into(),
                                t.carrier.atom(u).into(),
                            ],
                            format!("{} ≤ {}", y.carrier.atom(phi.apply(s)), y.carrier.atom(psi.apply(u))),
                            "incomparable or reversed",
                        );
                    }
                }
            }
        }
    }
    check
}
