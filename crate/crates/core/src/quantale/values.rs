use std::fmt;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::finset::{FinitePoset, FiniteSet};

/// A finite lattice with a tensor and a unit.
///
/// Nothing is validated on construction beyond shape; see
/// [`validate_quantale`] and [`Quantale::validated`].
#[derive(Clone, PartialEq, Eq)]
pub struct Quantale {
    order: FinitePoset,
    tensor: Vec<Vec<usize>>,
    unit: usize,
}

impl fmt::Debug for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quantale")
            .field("elements", &self.order.carrier().iter().collect::<Vec<_>>())
            .field("unit", &self.name(self.unit))
            .finish()
    }
}

impl Quantale {
    pub fn new(order: FinitePoset, tensor: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::NotAQuantale("empty carrier".into()));
        }
        if tensor.len() != n || tensor.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::ShapeMismatch("tensor table must be square over the carrier".into()));
        }
        if unit >= n {
            return Err(Error::UnknownElement(format!("unit index {unit}")));
        }
        Ok(Quantale { order, tensor, unit })
    }

    /// As [`Quantale::new`], then every law of [`validate_quantale`].
    pub fn validated(order: FinitePoset, tensor: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let q = Quantale::new(order, tensor, unit)?;
        match validate_quantale(&q).witness {
            Some(w) => Err(Error::NotAQuantale(format!("{} fails at {}", w.property, w.location.join(", ")))),
            None => Ok(q),
        }
    }

    /// `{0 ≤ 1}` with `∧` and unit `1`.
    pub fn boolean() -> Self {
        let order = FinitePoset::chain_on(FiniteSet::new(["0", "1"]).expect("distinct"));
        Quantale {
            order,
            tensor: vec![vec![0, 0], vec![0, 1]],
            unit: 1,
        }
    }

    /// Distances `0, 1, …, cap, inf` ordered by reverse magnitude (`inf` is
    /// the bottom), with truncated addition and unit `0`.
    pub fn tropical(cap: usize) -> Self {
        let n = cap + 2;
        let names: Vec<String> = (0..=cap).map(|d| d.to_string()).chain(["inf".to_string()]).collect();
        let carrier = FiniteSet::new(names).expect("distinct");
        // Index i is distance i; index cap+1 is inf. Larger distance is lower.
        let leq = (0..n * n).map(|k| k / n >= k % n).collect();
        let order = FinitePoset::from_matrix(carrier, leq).expect("a chain");
        let tensor = (0..n)
            .map(|a| (0..n).map(|b| if a + b > cap { cap + 1 } else { a + b }).collect())
            .collect();
        Quantale { order, tensor, unit: 0 }
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn elements(&self) -> &FiniteSet {
        self.order.carrier()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        self.order.carrier().atom(v)
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.order.carrier().require(name)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.tensor
    }

    pub fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor[a][b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    /// Panics if the carrier is not a lattice; validated quantales are.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.order.greatest_lower_bound(&[a, b]).expect("binary meet")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.order.least_upper_bound(&[a, b]).expect("binary join")
    }

    pub fn top(&self) -> usize {
        self.order.greatest_lower_bound(&[]).expect("top element")
    }

    pub fn bottom(&self) -> usize {
        self.order.least_upper_bound(&[]).expect("bottom element")
    }

    /// Meet of a family; the top for the empty family.
    pub fn meet_all(&self, values: impl IntoIterator<Item = usize>) -> usize {
        values.into_iter().fold(self.top(), |acc, v| self.meet(acc, v))
    }
}

/// Lattice, associativity, commutativity, unit, monotonicity and the
/// middle-four interchange, each checked over the whole carrier.
pub fn validate_quantale(q: &Quantale) -> Check {
    quantale_law_checks(q)
        .into_iter()
        .fold(Check::new("quantale"), Check::and)
}

/// One check per law, in the order [`validate_quantale`] reports them.
pub fn quantale_law_checks(q: &Quantale) -> Vec<Check> {
    let n = q.len();
    let name = |v: usize| q.name(v).to_string();
    let mut laws = Vec::new();

    let mut lattice = Check::new("lattice");
    lattice.tick();
    if q.order.greatest_lower_bound(&[]).is_none() || q.order.least_upper_bound(&[]).is_none() {
        lattice = lattice.fail(vec![], "top and bottom", "missing");
    }
    'lattice: for a in 0..n {
        for b in 0..n {
            lattice.tick();
            if q.order.greatest_lower_bound(&[a, b]).is_none() || q.order.least_upper_bound(&[a, b]).is_none() {
                lattice = lattice.fail(vec![name(a), name(b)], "meet and join", "missing");
                break 'lattice;
            }
        }
    }
    laws.push(lattice);

    let mut unit = Check::new("unit");
    for a in 0..n {
        unit.tick();
        if q.tensor(q.unit, a) != a || q.tensor(a, q.unit) != a {
            unit = unit.fail(vec![name(a)], name(a), format!("{} / {}", name(q.tensor(q.unit, a)), name(q.tensor(a, q.unit))));
            break;
        }
    }
    laws.push(unit);

    let mut commutative = Check::new("commutative");
    'comm: for a in 0..n {
        for b in 0..n {
            commutative.tick();
            if q.tensor(a, b) != q.tensor(b, a) {
                commutative = commutative.fail(vec![name(a), name(b)], name(q.tensor(b, a)), name(q.tensor(a, b)));
                break 'comm;
            }
        }
    }
    laws.push(commutative);

    let mut associative = Check::new("associative");
    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                associative.tick();
                let (l, r) = (q.tensor(q.tensor(a, b), c), q.tensor(a, q.tensor(b, c)));
                if l != r {
                    associative = associative.fail(vec![name(a), name(b), name(c)], name(r), name(l));
                    break 'assoc;
                }
            }
        }
    }
    laws.push(associative);

    let mut monotone = Check::new("monotone tensor");
    'mono: for a in 0..n {
        for b in 0..n {
            if !q.leq(a, b) {
                continue;
            }
            for c in 0..n {
                monotone.tick();
                if !q.leq(q.tensor(a, c), q.tensor(b, c)) {
                    monotone = monotone.fail(vec![name(a), name(b), name(c)], format!("{} ≤ {}", name(q.tensor(a, c)), name(q.tensor(b, c))), "not ordered");
                    break 'mono;
                }
                if !q.leq(q.tensor(c, a), q.tensor(c, b)) {
                    monotone = monotone.fail(vec![name(c), name(a), name(b)], format!("{} ≤ {}", name(q.tensor(c, a)), name(q.tensor(c, b))), "not ordered");
                    break 'mono;
                }
            }
        }
    }
    laws.push(monotone);

    let mut interchange = Check::new("middle-four interchange");
    'inter: for p in 0..n {
        for s in 0..n {
            for r in 0..n {
                for t in 0..n {
                    interchange.tick();
                    let l = q.tensor(q.tensor(p, s), q.tensor(r, t));
                    let rr = q.tensor(q.tensor(p, r), q.tensor(s, t));
                    if l != rr {
                        interchange = interchange.fail(vec![name(p), name(s), name(r), name(t)], name(rr), name(l));
                        break 'inter;
                    }
                }
            }
        }
    }
    laws.push(interchange);
    laws
}

/// `(p₁∧p₂) ⊗ (r₁∧r₂) = (p₁⊗r₁) ∧ (p₂⊗r₂)`: the tensor preserves binary
/// meets of families jointly. Holds for `∧` itself, fails for addition.
pub fn meet_distribution_check(q: &Quantale) -> Check {
    let n = q.len();
    let mut check = Check::new("tensor preserves meets");
    for p1 in 0..n {
        for p2 in 0..n {
            for r1 in 0..n {
                for r2 in 0..n {
                    check.tick();
                    let left = q.tensor(q.meet(p1, p2), q.meet(r1, r2));
                    let right = q.meet(q.tensor(p1, r1), q.tensor(p2, r2));
                    if left != right {
                        return check.fail(
                            vec![q.name(p1).into(), q.name(p2).into(), q.name(r1).into(), q.name(r2).into()],
                            q.name(right),
                            q.name(left),
                        );
                    }
                }
            }
        }
    }
    check
}
