//! Generic planar diagrams of rectangular vertices, crossings and bends,
//! evaluated by summing over internal edge labels.
//!
//! Documents use the `tangle-v1` schema:
//!
//! ```json
//! {
//!   "format": "tangle-v1",
//!   "nodes": [
//!     {"id": "r", "kind": "cross", "upper": "x1", "lower": "x2"},
//!     {"id": "t", "kind": "rect", "param": "x2"},
//!     {"id": "b", "kind": "bend", "pair": 1, "param": "xbar1"}
//!   ],
//!   "edges": [
//!     {"a": {"node": "r", "port": "ru"}, "b": {"node": "t", "port": "left"}, "capacity": 1},
//!     {"a": {"node": "t", "port": "top"}, "b": {"boundary": "phi"}, "capacity": null}
//!   ]
//! }
//! ```
//!
//! Ports: rect `left`, `bottom`, `right`, `top`; cross `lu`, `ll`, `ru`, `rl`;
//! bend `upper`, `lower`. Parameters are `xN` or `xbarN` (1-based). Vertical
//! rect edges have `capacity: null` (unbounded); every other edge has 1.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Rational;
use crate::error::{Error, Result};

use super::weights::{r_weight_or_zero, rect_weight_unchecked};
use super::{bend_weight, BendWeights, SpectralPoint};

pub const FORMAT: &str = "tangle-v1";

/// `x_i` or `x̄_i = 1/x_i`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    X(usize),
    XBar(usize),
}

impl Param {
    pub fn value(&self, pt: &SpectralPoint) -> Result<Rational> {
        let i = match self {
            Param::X(i) | Param::XBar(i) => *i,
        };
        if i == 0 || i > pt.rank() {
            return Err(Error::InvalidInput(format!("parameter index {i} outside point of rank {}", pt.rank())));
        }
        let x = pt.x(i);
        match self {
            Param::X(_) => Ok(x.clone()),
            Param::XBar(_) if x.is_zero() => Err(Error::ZeroBase),
            Param::XBar(_) => Ok(x.recip()),
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            Param::X(i) => Param::XBar(i),
            Param::XBar(i) => Param::X(i),
        }
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Param::X(i) => s.serialize_str(&format!("x{i}")),
            Param::XBar(i) => s.serialize_str(&format!("xbar{i}")),
        }
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let bad = || serde::de::Error::custom(format!("bad parameter {s:?}"));
        if let Some(rest) = s.strip_prefix("xbar") {
            rest.parse().map(Param::XBar).map_err(|_| bad())
        } else if let Some(rest) = s.strip_prefix('x') {
            rest.parse().map(Param::X).map_err(|_| bad())
        } else {
            Err(bad())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    Rect { param: Param },
    Cross { upper: Param, lower: Param },
    Bend { pair: usize, param: Param },
}

impl NodeKind {
    fn ports(&self) -> &'static [&'static str] {
        match self {
            NodeKind::Rect { .. } => &["left", "bottom", "right", "top"],
            NodeKind::Cross { .. } => &["lu", "ll", "ru", "rl"],
            NodeKind::Bend { .. } => &["upper", "lower"],
        }
    }

    fn is_vertical(&self, port: &str) -> bool {
        matches!(self, NodeKind::Rect { .. }) && (port == "bottom" || port == "top")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    #[serde(flatten)]
    pub kind: NodeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Endpoint {
    Port { node: String, port: String },
    Boundary { boundary: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: Endpoint,
    pub b: Endpoint,
    /// `None` for unbounded (vertical) edges.
    pub capacity: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleDiagram {
    pub format: String,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

impl Default for TangleDiagram {
    fn default() -> Self {
        Self { format: FORMAT.to_string(), nodes: Vec::new(), edges: Vec::new() }
    }
}

impl TangleDiagram {
    pub fn from_json(s: &str) -> Result<Self> {
        let d: TangleDiagram = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn boundary_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.edges {
            for ep in [&e.a, &e.b] {
                if let Endpoint::Boundary { boundary } = ep {
                    out.push(boundary.clone());
                }
            }
        }
        out
    }

    /// Checks the format tag, port matching and declared capacities.
    pub fn validate(&self) -> Result<()> {
        if self.format != FORMAT {
            return Err(Error::Parse(format!("unsupported format {:?}", self.format)));
        }
        let mut kinds: HashMap<&str, &NodeKind> = HashMap::new();
        for n in &self.nodes {
            if kinds.insert(&n.id, &n.kind).is_some() {
                return Err(Error::InvalidInput(format!("duplicate node id {:?}", n.id)));
            }
        }
        let mut seen: HashMap<(String, String), usize> = HashMap::new();
        let mut boundaries: HashMap<String, usize> = HashMap::new();
        for e in &self.edges {
            let mut vertical = Vec::new();
            for ep in [&e.a, &e.b] {
                match ep {
                    Endpoint::Port { node, port } => {
                        let kind = kinds
                            .get(node.as_str())
                            .ok_or_else(|| Error::InvalidInput(format!("edge references unknown node {node:?}")))?;
                        if !kind.ports().contains(&port.as_str()) {
                            return Err(Error::InvalidInput(format!("node {node:?} has no port {port:?}")));
                        }
                        *seen.entry((node.clone(), port.clone())).or_default() += 1;
                        vertical.push(kind.is_vertical(port));
                    }
                    Endpoint::Boundary { boundary } => {
                        *boundaries.entry(boundary.clone()).or_default() += 1;
                    }
                }
            }
            if vertical.is_empty() {
                return Err(Error::InvalidInput("edge joins two boundary labels".into()));
            }
            if vertical.iter().any(|&v| v) != vertical.iter().all(|&v| v) {
                return Err(Error::InvalidInput("edge joins a vertical port to a horizontal one".into()));
            }
            let want = if vertical[0] { None } else { Some(1) };
            if e.capacity != want {
                return Err(Error::InvalidInput(format!("edge {e:?} has capacity {:?}, expected {want:?}", e.capacity)));
            }
        }
        for n in &self.nodes {
            for p in n.kind.ports() {
                match seen.get(&(n.id.clone(), p.to_string())) {
                    Some(1) => {}
                    Some(_) => return Err(Error::InvalidInput(format!("port {}.{p} wired twice", n.id))),
                    None => return Err(Error::InvalidInput(format!("port {}.{p} is unwired", n.id))),
                }
            }
        }
        if let Some((b, _)) = boundaries.iter().find(|(_, &c)| c > 1) {
            return Err(Error::InvalidInput(format!("boundary label {b:?} used twice")));
        }
        Ok(())
    }
}

/// Incremental construction of diagrams.
#[derive(Default)]
pub struct Builder {
    d: TangleDiagram,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rect(mut self, id: &str, param: Param) -> Self {
        self.d.nodes.push(Node { id: id.into(), kind: NodeKind::Rect { param } });
        self
    }

    pub fn cross(mut self, id: &str, upper: Param, lower: Param) -> Self {
        self.d.nodes.push(Node { id: id.into(), kind: NodeKind::Cross { upper, lower } });
        self
    }

    pub fn bend(mut self, id: &str, pair: usize, param: Param) -> Self {
        self.d.nodes.push(Node { id: id.into(), kind: NodeKind::Bend { pair, param } });
        self
    }

    fn capacity(&self, node: &str, port: &str) -> Option<u32> {
        let vertical = self.d.nodes.iter().any(|n| n.id == node && n.kind.is_vertical(port));
        if vertical {
            None
        } else {
            Some(1)
        }
    }

    pub fn wire(mut self, a: (&str, &str), b: (&str, &str)) -> Self {
        let capacity = self.capacity(a.0, a.1);
        self.d.edges.push(Edge {
            a: Endpoint::Port { node: a.0.into(), port: a.1.into() },
            b: Endpoint::Port { node: b.0.into(), port: b.1.into() },
            capacity,
        });
        self
    }

    pub fn boundary(mut self, a: (&str, &str), name: &str) -> Self {
        let capacity = self.capacity(a.0, a.1);
        self.d.edges.push(Edge {
            a: Endpoint::Port { node: a.0.into(), port: a.1.into() },
            b: Endpoint::Boundary { boundary: name.into() },
            capacity,
        });
        self
    }

    pub fn build(self) -> TangleDiagram {
        debug_assert!(self.d.validate().is_ok(), "{:?}", self.d.validate());
        self.d
    }
}

/// Crossing weight `(lu, ll, ru, rl, x_upper, x_lower, q)`.
pub type CrossingFn = dyn Fn(u8, u8, u8, u8, &Rational, &Rational, &Rational) -> Result<Rational> + Sync;

#[derive(Default, Clone, Copy)]
pub struct EvalOptions<'a> {
    /// Range of unbounded edges; defaults to the sum of the boundary labels.
    pub max_mult: Option<u32>,
    /// Replaces the standard crossing weights.
    pub crossing: Option<&'a CrossingFn>,
}

/// Sums the product of vertex weights over all internal edge labelings.
pub fn evaluate_tangle(
    d: &TangleDiagram,
    boundary: &BTreeMap<String, u32>,
    bw: Option<&BendWeights>,
    pt: &SpectralPoint,
) -> Result<Rational> {
    evaluate_tangle_with(d, boundary, bw, pt, EvalOptions::default())
}

pub fn evaluate_tangle_with(
    d: &TangleDiagram,
    boundary: &BTreeMap<String, u32>,
    bw: Option<&BendWeights>,
    pt: &SpectralPoint,
    opts: EvalOptions<'_>,
) -> Result<Rational> {
    d.validate()?;
    let total: u32 = boundary.values().sum();
    let bound = opts.max_mult.unwrap_or(total);

    let index: HashMap<&str, usize> = d.nodes.iter().enumerate().map(|(i, n)| (n.id.as_str(), i)).collect();
    // Port values: per node, per port position.
    let mut fixed: Vec<Vec<Option<u32>>> = d.nodes.iter().map(|n| vec![None; n.kind.ports().len()]).collect();
    let mut internal: Vec<(usize, usize, usize, usize, u32)> = Vec::new();
    let port_pos = |n: usize, p: &str| d.nodes[n].kind.ports().iter().position(|q| *q == p).unwrap();

    for e in &d.edges {
        match (&e.a, &e.b) {
            (Endpoint::Port { node, port }, Endpoint::Boundary { boundary: name })
            | (Endpoint::Boundary { boundary: name }, Endpoint::Port { node, port }) => {
                let v = *boundary
                    .get(name)
                    .ok_or_else(|| Error::InvalidInput(format!("boundary label {name:?} not assigned")))?;
                if let Some(c) = e.capacity {
                    if v > c {
                        return Ok(Rational::zero());
                    }
                }
                let n = index[node.as_str()];
                fixed[n][port_pos(n, port)] = Some(v);
            }
            (Endpoint::Port { node: na, port: pa }, Endpoint::Port { node: nb, port: pb }) => {
                let (a, b) = (index[na.as_str()], index[nb.as_str()]);
                internal.push((a, port_pos(a, pa), b, port_pos(b, pb), e.capacity.unwrap_or(bound)));
            }
            _ => unreachable!("validated"),
        }
    }

    // Each node is weighed once its last internal edge has been labeled.
    let mut ready_at: Vec<Vec<usize>> = vec![Vec::new(); internal.len() + 1];
    for n in 0..d.nodes.len() {
        let last = internal
            .iter()
            .enumerate()
            .filter(|(_, e)| e.0 == n || e.2 == n)
            .map(|(i, _)| i + 1)
            .max()
            .unwrap_or(0);
        ready_at[last].push(n);
    }

    let params: Vec<Vec<Rational>> = d
        .nodes
        .iter()
        .map(|n| match &n.kind {
            NodeKind::Rect { param } | NodeKind::Bend { param, .. } => Ok(vec![param.value(pt)?]),
            NodeKind::Cross { upper, lower } => Ok(vec![upper.value(pt)?, lower.value(pt)?]),
        })
        .collect::<Result<_>>()?;

    let ctx = Ctx { d, bw, pt, params, internal, ready_at, crossing: opts.crossing };
    let mut vals = fixed;
    let mut front = Rational::one();
    for &n in &ctx.ready_at[0] {
        front *= ctx.node_weight(n, &vals)?;
        if front.is_zero() {
            return Ok(front);
        }
    }
    Ok(front * ctx.sum_from(0, &mut vals)?)
}

struct Ctx<'a> {
    d: &'a TangleDiagram,
    bw: Option<&'a BendWeights>,
    pt: &'a SpectralPoint,
    params: Vec<Vec<Rational>>,
    internal: Vec<(usize, usize, usize, usize, u32)>,
    ready_at: Vec<Vec<usize>>,
    crossing: Option<&'a CrossingFn>,
}

impl Ctx<'_> {
    fn sum_from(&self, i: usize, vals: &mut Vec<Vec<Option<u32>>>) -> Result<Rational> {
        if i == self.internal.len() {
            return Ok(Rational::one());
        }
        let (a, pa, b, pb, cap) = self.internal[i];
        let mut acc = Rational::zero();
        for v in 0..=cap {
            vals[a][pa] = Some(v);
            vals[b][pb] = Some(v);
            let mut w = Rational::one();
            for &n in &self.ready_at[i + 1] {
                w *= self.node_weight(n, vals)?;
                if w.is_zero() {
                    break;
                }
            }
            if !w.is_zero() {
                acc += w * self.sum_from(i + 1, vals)?;
            }
        }
        vals[a][pa] = None;
        vals[b][pb] = None;
        Ok(acc)
    }

    fn node_weight(&self, n: usize, vals: &[Vec<Option<u32>>]) -> Result<Rational> {
        let v: Vec<u32> = vals[n].iter().map(|x| x.expect("all ports labeled")).collect();
        let p = &self.params[n];
        let q = &self.pt.q;
        match &self.d.nodes[n].kind {
            NodeKind::Rect { .. } => {
                let (l, b, r, t) = (v[0], v[1], v[2], v[3]);
                if l > 1 || r > 1 || b + r != t + l {
                    return Ok(Rational::zero());
                }
                Ok(rect_weight_unchecked(l as u8, r as u8, t, &p[0], q))
            }
            NodeKind::Cross { .. } => {
                if v.iter().any(|&x| x > 1) {
                    return Ok(Rational::zero());
                }
                let (a, b, c, e) = (v[0] as u8, v[1] as u8, v[2] as u8, v[3] as u8);
                if a + b != c + e {
                    return Ok(Rational::zero());
                }
                match self.crossing {
                    Some(f) => f(a, b, c, e, &p[0], &p[1], q),
                    None => r_weight_or_zero(a, b, c, e, &p[0], &p[1], q),
                }
            }
            NodeKind::Bend { pair, .. } => {
                let bw = self.bw.ok_or_else(|| Error::MissingParam("diagram has bends but no bend weights".into()))?;
                if v[0] > 1 || v[1] > 1 {
                    return Ok(Rational::zero());
                }
                bend_weight(bw, *pair, v[0] as u8, v[1] as u8, &p[0], q)
            }
        }
    }
}

/// A lone rectangular vertex with boundary `left, bottom, right, top`.
pub fn single_rect(param: Param) -> TangleDiagram {
    Builder::new()
        .rect("v", param)
        .boundary(("v", "left"), "left")
        .boundary(("v", "bottom"), "bottom")
        .boundary(("v", "right"), "right")
        .boundary(("v", "top"), "top")
        .build()
}

/// A lone crossing with boundary `lu, ll, ru, rl`.
pub fn single_cross(upper: Param, lower: Param) -> TangleDiagram {
    Builder::new()
        .cross("v", upper, lower)
        .boundary(("v", "lu"), "lu")
        .boundary(("v", "ll"), "ll")
        .boundary(("v", "ru"), "ru")
        .boundary(("v", "rl"), "rl")
        .build()
}

/// A lone bend with boundary `upper, lower`.
pub fn single_bend(pair: usize, param: Param) -> TangleDiagram {
    Builder::new()
        .bend("v", pair, param)
        .boundary(("v", "upper"), "upper")
        .boundary(("v", "lower"), "lower")
        .build()
}

/// Crossing on the left of a two-vertex column. Boundary: `alpha` upper
/// left, `beta` lower left, `phi` top, `gamma` bottom, `epsilon` upper
/// right, `delta` lower right. Parameters `x1` (upper-left strand), `x2`.
pub fn ybe_lhs() -> TangleDiagram {
    let (xj, xk) = (Param::X(1), Param::X(2));
    Builder::new()
        .cross("r", xj, xk)
        .rect("top", xk)
        .rect("bot", xj)
        .boundary(("r", "lu"), "alpha")
        .boundary(("r", "ll"), "beta")
        .wire(("r", "ru"), ("top", "left"))
        .wire(("r", "rl"), ("bot", "left"))
        .wire(("bot", "top"), ("top", "bottom"))
        .boundary(("top", "top"), "phi")
        .boundary(("top", "right"), "epsilon")
        .boundary(("bot", "bottom"), "gamma")
        .boundary(("bot", "right"), "delta")
        .build()
}

/// Column on the left of the crossing; same boundary names as [`ybe_lhs`].
pub fn ybe_rhs() -> TangleDiagram {
    let (xj, xk) = (Param::X(1), Param::X(2));
    Builder::new()
        .rect("top", xj)
        .rect("bot", xk)
        .cross("r", xj, xk)
        .boundary(("top", "left"), "alpha")
        .boundary(("bot", "left"), "beta")
        .wire(("bot", "top"), ("top", "bottom"))
        .boundary(("top", "top"), "phi")
        .boundary(("bot", "bottom"), "gamma")
        .wire(("top", "right"), ("r", "lu"))
        .wire(("bot", "right"), ("r", "ll"))
        .boundary(("r", "ru"), "epsilon")
        .boundary(("r", "rl"), "delta")
        .build()
}

/// Two crossings in series. Boundary `alpha, beta` on the left and
/// `alpha_out, beta_out` on the right.
pub fn unitarity() -> TangleDiagram {
    let (xj, xk) = (Param::X(1), Param::X(2));
    Builder::new()
        .cross("c1", xj, xk)
        .cross("c2", xk, xj)
        .boundary(("c1", "lu"), "alpha")
        .boundary(("c1", "ll"), "beta")
        .wire(("c1", "ru"), ("c2", "lu"))
        .wire(("c1", "rl"), ("c2", "ll"))
        .boundary(("c2", "ru"), "alpha_out")
        .boundary(("c2", "rl"), "beta_out")
        .build()
}

/// Bend `pair` fed through a crossing. Boundary `alpha` on the `x̄` row
/// (top) and `beta` on the `x` row, parameter `x1`.
pub fn fish_lhs(pair: usize) -> TangleDiagram {
    let x = Param::X(1);
    Builder::new()
        .cross("c", x, x.inverse())
        .bend("k", pair, x)
        .boundary(("c", "ru"), "alpha")
        .boundary(("c", "rl"), "beta")
        .wire(("k", "upper"), ("c", "lu"))
        .wire(("k", "lower"), ("c", "ll"))
        .build()
}

/// Bare bend `pair` with its upper arc on the `x̄` row.
pub fn fish_rhs(pair: usize) -> TangleDiagram {
    Builder::new()
        .bend("k", pair, Param::XBar(1))
        .boundary(("k", "upper"), "alpha")
        .boundary(("k", "lower"), "beta")
        .build()
}

/// Four crossings braiding pairs `j` (below) and `k` (above) into two
/// bends. Right boundary top to bottom: `alpha` (`x_j`), `beta` (`x̄_j`),
/// `gamma` (`x_k`), `delta` (`x̄_k`).
pub fn caduceus_lhs(j: usize, k: usize) -> TangleDiagram {
    let (xj, xk) = (Param::X(j), Param::X(k));
    let (xjb, xkb) = (xj.inverse(), xk.inverse());
    Builder::new()
        .cross("x1", xk, xjb)
        .cross("x2", xk, xj)
        .cross("x3", xkb, xjb)
        .cross("x4", xkb, xj)
        .bend("bk", k, xk)
        .bend("bj", j, xj)
        .boundary(("x1", "ru"), "beta")
        .boundary(("x1", "rl"), "gamma")
        .boundary(("x2", "ru"), "alpha")
        .wire(("x2", "rl"), ("x1", "lu"))
        .wire(("x3", "ru"), ("x1", "ll"))
        .boundary(("x3", "rl"), "delta")
        .wire(("x4", "ru"), ("x2", "ll"))
        .wire(("x4", "rl"), ("x3", "lu"))
        .wire(("bk", "upper"), ("x2", "lu"))
        .wire(("bk", "lower"), ("x4", "lu"))
        .wire(("bj", "upper"), ("x4", "ll"))
        .wire(("bj", "lower"), ("x3", "ll"))
        .build()
}

/// Two bare bends: `k` at `x_j` on top, `j` at `x_k` below.
pub fn caduceus_rhs(j: usize, k: usize) -> TangleDiagram {
    Builder::new()
        .bend("bk", k, Param::X(j))
        .bend("bj", j, Param::X(k))
        .boundary(("bk", "upper"), "alpha")
        .boundary(("bk", "lower"), "beta")
        .boundary(("bj", "upper"), "gamma")
        .boundary(("bj", "lower"), "delta")
        .build()
}

/// Convenience for building boundary assignments.
pub fn labels(pairs: &[(&str, u32)]) -> BTreeMap<String, u32> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::lattice::{r_weight, rect_weight, BendRow};

    fn pt2() -> SpectralPoint {
        SpectralPoint::new(rat(2, 7), vec![rat(3, 2), rat(-5, 3)])
    }

    #[test]
    fn empty_diagram_is_one() {
        let d = TangleDiagram::default();
        assert_eq!(evaluate_tangle(&d, &BTreeMap::new(), None, &pt2()).unwrap(), int(1));
    }

    #[test]
    fn single_vertices_match_weights() {
        let p = pt2();
        let d = single_rect(Param::X(2));
        for (l, b, r, t) in [(0, 2, 0, 2), (1, 1, 1, 1), (0, 1, 1, 2), (1, 3, 0, 2)] {
            let v = evaluate_tangle(&d, &labels(&[("left", l), ("bottom", b), ("right", r), ("top", t)]), None, &p).unwrap();
            assert_eq!(v, rect_weight(l as u8, b, r as u8, t, p.x(2), &p.q).unwrap());
        }
        let c = single_cross(Param::X(1), Param::XBar(2));
        for (a, b, e, f) in [(1, 0, 0, 1), (0, 1, 0, 1), (1, 1, 1, 1)] {
            let v = evaluate_tangle(&c, &labels(&[("lu", a), ("ll", b), ("ru", e), ("rl", f)]), None, &p).unwrap();
            assert_eq!(v, r_weight(a as u8, b as u8, e as u8, f as u8, p.x(1), &p.x(2).recip(), &p.q).unwrap());
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let d = caduceus_lhs(1, 2);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(TangleDiagram::from_json(&s).unwrap(), d);
        let mut broken = d.clone();
        broken.edges.pop();
        assert!(broken.validate().is_err());
        let mut wrong_cap = ybe_lhs();
        wrong_cap.edges[0].capacity = None;
        assert!(wrong_cap.validate().is_err());
    }

    #[test]
    fn unitarity_diagram() {
        let p = pt2();
        for a in 0..2 {
            for b in 0..2 {
                for a2 in 0..2 {
                    for b2 in 0..2 {
                        let v = evaluate_tangle(
                            &unitarity(),
                            &labels(&[("alpha", a), ("beta", b), ("alpha_out", a2), ("beta_out", b2)]),
                            None,
                            &p,
                        )
                        .unwrap();
                        assert_eq!(v, int(((a, b) == (a2, b2)) as i64));
                    }
                }
            }
        }
    }

    #[test]
    fn missing_bends_reported() {
        let r = evaluate_tangle(&fish_rhs(1), &labels(&[("alpha", 1), ("beta", 0)]), None, &pt2());
        assert!(matches!(r, Err(Error::MissingParam(_))));
        let bw = BendWeights::uniform(BendRow::wzj(), 1);
        let v = evaluate_tangle(&fish_rhs(1), &labels(&[("alpha", 0), ("beta", 1)]), Some(&bw), &pt2()).unwrap();
        assert_eq!(v, -pt2().q);
    }
}
