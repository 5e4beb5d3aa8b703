use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::graphs::Side;
use crate::quantale::weighted::{
    unit_weights_check, v_biproduct, v_category_validate, v_transports, VExponential, VTransport, WeightedGraph,
};
use crate::util::{saturating_pow, Budget};

fn require_product(f: &VTransport, x: &WeightedGraph, t: &WeightedGraph) -> Result<()> {
    if f.source().as_ref() != &v_biproduct(x, t)? {
        return Err(Error::ShapeMismatch("form is not defined on the biproduct".into()));
    }
    Ok(())
}

fn require_units(x: &WeightedGraph, which: &str) -> Result<()> {
    match unit_weights_check(x).witness {
        Some(w) => Err(Error::HypothesisFailed(format!("{which} lacks unit weight at {}", w.location.join(", ")))),
        None => Ok(()),
    }
}

fn require_category(y: &WeightedGraph) -> Result<()> {
    match v_category_validate(y).witness {
        Some(w) => Err(Error::NotAVCategory(format!("{} fails at {}", w.property, w.location.join(", ")))),
        None => Ok(()),
    }
}

/// `g(a) = f(a,−)` as a V-transport `X → Y^T`.
pub fn v_name(f: &VTransport, x: &Arc<WeightedGraph>, t: &Arc<WeightedGraph>, exp: &VExponential) -> Result<VTransport> {
    require_product(f, x, t)?;
    require_units(x, "source")?;
    require_units(t, "base")?;
    let nt = t.len();
    let mut map = Vec::with_capacity(x.len());
    for a in 0..x.len() {
        let slice: Vec<usize> = (0..nt).map(|s| f.apply(a * nt + s)).collect();
        match exp.position(&slice) {
            Some(p) => map.push(p),
            None => {
                let e = VTransport::new(t.clone(), f.target().clone(), slice).err();
                return Err(e.unwrap_or_else(|| Error::ShapeMismatch("slice missing from the exponential".into())));
            }
        }
    }
    VTransport::new(x.clone(), exp.graph().clone(), map)
}

/// `f(a,s) = g(a)(s)`, verified through the pre or post factorisation
/// `W_X(a,b) ⊗ W_T(s,u) ≤ W_Y(·,·) ⊗ W_Y(·,·) ≤ W_Y(f(a,s), f(b,u))`.
pub fn v_realize(
    g: &VTransport,
    x: &Arc<WeightedGraph>,
    t: &Arc<WeightedGraph>,
    exp: &VExponential,
    side: Side,
) -> Result<VTransport> {
    let y = exp.target();
    require_category(y)?;
    let q = y.quantale();
    let nt = t.len();
    let value = |a: usize, s: usize| exp.transport(g.apply(a)).apply(s);
    for a in 0..x.len() {
        for b in 0..x.len() {
            for s in 0..nt {
                for u in 0..nt {
                    let source = q.tensor(x.weight(a, b), t.weight(s, u));
                    let mid = match side {
                        Side::Pre => (value(b, s), value(b, s)),
                        Side::Post => (value(a, u), value(a, u)),
                    };
                    let chain = q.tensor(y.weight(value(a, s), mid.0), y.weight(mid.1, value(b, u)));
                    if !q.leq(source, chain) || !q.leq(chain, y.weight(value(a, s), value(b, u))) {
                        return Err(Error::NotAVTransport(format!(
                            "{} realization breaks at ({},{}),({},{})",
                            side.as_str(),
                            x.vertices().atom(a),
                            t.vertices().atom(s),
                            x.vertices().atom(b),
                            t.vertices().atom(u)
                        )));
                    }
                }
            }
        }
    }
    let product = Arc::new(v_biproduct(x, t)?);
    let map = (0..x.len() * nt).map(|p| value(p / nt, p % nt)).collect();
    VTransport::new(product, y.clone(), map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VCondition {
    LowerDecomposable,
    UpperNeutral,
}

/// Lower decomposable form: for all `(a,s)`, `(b,u)` the unit-slice route
/// carries the weight, `W_X(a,b) ⊗ W_T(s,u) ≤ W_Y(f(a,s),f(b,s)) ⊗
/// W_Y(f(b,s),f(b,u)) ≤ W_Y(f(a,s),f(b,u))`.
pub fn lower_decomposable_check(f: &VTransport, x: &WeightedGraph, t: &WeightedGraph) -> Result<Check> {
    require_product(f, x, t)?;
    let y = f.target();
    let q = y.quantale();
    let nt = t.len();
    let v = |a: usize, s: usize| f.apply(a * nt + s);
    let mut check = Check::new("lower decomposable");
    for a in 0..x.len() {
        for b in 0..x.len() {
            for s in 0..nt {
                for u in 0..nt {
                    check.tick();
                    let source = q.tensor(x.weight(a, b), t.weight(s, u));
                    let route = q.tensor(y.weight(v(a, s), v(b, s)), y.weight(v(b, s), v(b, u)));
                    let direct = y.weight(v(a, s), v(b, u));
                    if !q.leq(source, route) || !q.leq(route, direct) {
                        return Ok(check.fail(
                            vec![
                                format!("({},{})", x.vertices().atom(a), t.vertices().atom(s)),
                                format!("({},{})", x.vertices().atom(b), t.vertices().atom(u)),
                            ],
                            format!("{} ≤ {} ≤ {}", q.name(source), q.name(route), q.name(direct)),
                            "broken chain",
                        ));
                    }
                }
            }
        }
    }
    Ok(check)
}

/// Upper neutral name: every image vertex carries the unit,
/// `e ≤ W_Y(g(a)s, g(a)s)`, and composing with it stays below the direct
/// weight, `W_Y(g(a)s,g(a)s) ⊗ W_Y(g(a)s,g(b)u) ≤ W_Y(g(a)s,g(b)u)`.
pub fn upper_neutral_check(g: &VTransport, exp: &VExponential) -> Check {
    let y = exp.target();
    let q = y.quantale();
    let x = g.source();
    let nt = exp.base().len();
    let v = |a: usize, s: usize| exp.transport(g.apply(a)).apply(s);
    let mut check = Check::new("upper neutral");
    for a in 0..x.len() {
        for s in 0..nt {
            check.tick();
            let own = y.weight(v(a, s), v(a, s));
            if !q.leq(q.unit(), own) {
                return check.fail(
                    vec![x.vertices().atom(a).into(), exp.base().vertices().atom(s).into()],
                    format!("at least {}", q.name(q.unit())),
                    q.name(own),
                );
            }
            for b in 0..x.len() {
                for u in 0..nt {
                    check.tick();
                    let direct = y.weight(v(a, s), v(b, u));
                    if !q.leq(q.tensor(own, direct), direct) {
                        return check.fail(
                            vec![
                                x.vertices().atom(a).into(),
                                exp.base().vertices().atom(s).into(),
                                x.vertices().atom(b).into(),
                                exp.base().vertices().atom(u).into(),
                            ],
                            format!("at most {}", q.name(direct)),
                            q.name(q.tensor(own, direct)),
                        );
                    }
                }
            }
        }
    }
    check
}

/// Exhaustive round trips between V-forms `X⊗T → Y` and V-names `X → Y^T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VAdjunctionReport {
    pub forms: u64,
    pub lower_decomposable: u64,
    /// `realize(name(f))` exists and equals `f` on vertices.
    pub unit_inequality: Check,
    pub names: u64,
    pub upper_neutral: u64,
    /// `name(realize(g))` exists and equals `g` on vertices.
    pub counit_inequality: Check,
    /// Pre and post realization build the same transport.
    pub sides_agree: Check,
}

impl VAdjunctionReport {
    pub fn holds(&self) -> bool {
        self.unit_inequality.holds() && self.counit_inequality.holds() && self.sides_agree.holds()
    }
}

pub fn v_adjunction_suite(
    x: &Arc<WeightedGraph>,
    t: &Arc<WeightedGraph>,
    y: &Arc<WeightedGraph>,
    budget: Budget,
) -> Result<VAdjunctionReport> {
    require_units(x, "source")?;
    require_units(t, "base")?;
    require_category(y)?;
    let exp = crate::quantale::weighted::v_exponential(t, y, budget)?;
    let product = Arc::new(v_biproduct(x, t)?);
    budget.admit(saturating_pow(y.len(), product.len()))?;
    budget.admit(saturating_pow(exp.graph().len(), x.len()))?;

    let mut forms = 0;
    let mut lower = 0;
    let mut unit_inequality = Check::new("realize(name(f)) = f");
    for f in v_transports(&product, y) {
        forms += 1;
        if !lower_decomposable_check(&f, x, t)?.holds() {
            continue;
        }
        lower += 1;
        unit_inequality.tick();
        let back = v_name(&f, x, t, &exp).and_then(|g| v_realize(&g, x, t, &exp, Side::Pre));
        match back {
            Ok(back) if back.map() == f.map() => {}
            Ok(back) => unit_inequality = unit_inequality.fail(vec![f.label()], f.label(), back.label()),
            Err(e) => unit_inequality = unit_inequality.fail(vec![f.label()], f.label(), e.to_string()),
        }
    }

    let mut names = 0;
    let mut neutral = 0;
    let mut counit_inequality = Check::new("name(realize(g)) = g");
    let mut sides_agree = Check::new("pre and post realization agree");
    for g in v_transports(x, exp.graph()) {
        names += 1;
        sides_agree.tick();
        let pre = v_realize(&g, x, t, &exp, Side::Pre)?;
        let post = v_realize(&g, x, t, &exp, Side::Post)?;
        if pre != post {
            sides_agree = sides_agree.fail(vec![g.label()], pre.label(), post.label());
        }
        if !upper_neutral_check(&g, &exp).holds() {
            continue;
        }
        neutral += 1;
        counit_inequality.tick();
        match v_name(&pre, x, t, &exp) {
            Ok(back) if back.map() == g.map() => {}
            Ok(back) => counit_inequality = counit_inequality.fail(vec![g.label()], g.label(), back.label()),
            Err(e) => counit_inequality = counit_inequality.fail(vec![g.label()], g.label(), e.to_string()),
        }
    }
    Ok(VAdjunctionReport {
        forms,
        lower_decomposable: lower,
        unit_inequality,
        names,
        upper_neutral: neutral,
        counit_inequality,
        sides_agree,
    })
}
