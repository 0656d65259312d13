//! Claspers on a standard genus-`g` Seifert surface of the unknot whose
//! leaves are meridians of the surface bands, complete contraction in
//! degree 2, the resulting knot invariant `Q` of the surgered unknot, and
//! realization of prescribed values.
//!
//! Bands `2i` and `2i + 1` are the dual pair of handle `i`. Every edge
//! carries a winding, its algebraic intersection number with the surface
//! read from tail to head, and a half-twist flag.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::diagrams::{expand_linear, ClosedGraph, End, HalfEdge};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::laurent::LaurentPoly;
use crate::ltheta::{realize_decompose, ThetaElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StandardSurface {
    pub genus: usize,
}

impl StandardSurface {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Precondition(
                "surface genus must be at least 1".into(),
            ));
        }
        Ok(StandardSurface { genus })
    }

    pub fn bands(&self) -> usize {
        2 * self.genus
    }

    pub fn dual(band: usize) -> usize {
        band ^ 1
    }

    fn check(&self, band: usize) -> Result<()> {
        if band >= self.bands() {
            return Err(Error::BandOutOfRange {
                band,
                genus: self.genus,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Leaf {
    /// Meridian of a band, with framing in `{-1, 0, 1}`.
    Band { band: usize, framing: i8 },
    /// One side of an internal edge cut open. The two sides of a pair form a
    /// Hopf link and link nothing else.
    Cut { pair: usize, side: bool },
}

/// Equivariant linking number of two leaves.
pub fn equivariant_lk(l1: &Leaf, l2: &Leaf, s: &StandardSurface) -> Result<LaurentPoly> {
    Ok(match (*l1, *l2) {
        (Leaf::Band { band: a, .. }, Leaf::Band { band: b, .. }) => {
            s.check(a)?;
            s.check(b)?;
            if StandardSurface::dual(a) != b {
                LaurentPoly::zero()
            } else if a < b {
                LaurentPoly::from_terms([(1, 1), (0, -1)])
            } else {
                LaurentPoly::from_terms([(-1, 1), (0, -1)])
            }
        }
        (Leaf::Cut { pair: p, side: x }, Leaf::Cut { pair: q, side: y }) if p == q && x != y => {
            LaurentPoly::constant(1)
        }
        (Leaf::Band { band, .. }, Leaf::Cut { .. })
        | (Leaf::Cut { .. }, Leaf::Band { band, .. }) => {
            s.check(band)?;
            LaurentPoly::zero()
        }
        _ => LaurentPoly::zero(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// Trivalent vertex with half-edges in counterclockwise order.
    Vertex([HalfEdge; 3]),
    Leaf(Leaf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub winding: i64,
    pub half_twist: bool,
}

/// A clasper (or a disjoint union of claspers) as an abstract graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClasperGraph {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

/// A leaf together with the edge that attaches it.
#[derive(Clone, Copy, Debug)]
struct Leg {
    leaf: Leaf,
    vertex: usize,
    /// Slot of the attaching half-edge in the vertex's cyclic order.
    slot: usize,
    /// Winding read from the vertex towards the leaf.
    exponent: i64,
    half_twist: bool,
}

impl ClasperGraph {
    pub fn validate(&self) -> Result<()> {
        let mut incident = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            for (node, end) in [(e.tail, End::Tail), (e.head, End::Head)] {
                if node >= self.nodes.len() {
                    return Err(Error::MalformedClasper(format!(
                        "edge {i} ends at missing node {node}"
                    )));
                }
                incident[node].push(HalfEdge { edge: i, end });
            }
            if matches!(self.nodes[e.tail], Node::Leaf(_))
                && matches!(self.nodes[e.head], Node::Leaf(_))
            {
                return Err(Error::MalformedClasper(format!(
                    "edge {i} joins two leaves (a strut)"
                )));
            }
        }
        for (n, node) in self.nodes.iter().enumerate() {
            match node {
                Node::Vertex(slots) => {
                    let mut want = incident[n].clone();
                    let mut have = slots.to_vec();
                    want.sort();
                    have.sort();
                    if want != have {
                        return Err(Error::MalformedClasper(format!(
                            "vertex {n} lists {have:?} but has incident half-edges {want:?}"
                        )));
                    }
                }
                Node::Leaf(leaf) => {
                    if incident[n].len() != 1 {
                        return Err(Error::MalformedClasper(format!(
                            "leaf {n} has {} incident half-edges",
                            incident[n].len()
                        )));
                    }
                    if let Leaf::Band { framing, .. } = leaf {
                        if !(-1..=1).contains(framing) {
                            return Err(Error::MalformedClasper(format!(
                                "leaf {n} has framing {framing}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of trivalent vertices.
    pub fn degree(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Vertex(_)))
            .count()
    }

    fn slot_of(&self, vertex: usize, h: HalfEdge) -> usize {
        match &self.nodes[vertex] {
            Node::Vertex(slots) => slots.iter().position(|&x| x == h).expect("validated"),
            Node::Leaf(_) => unreachable!("slot lookup on a leaf"),
        }
    }

    fn legs(&self) -> Vec<Leg> {
        let mut legs = Vec::new();
        for (n, node) in self.nodes.iter().enumerate() {
            let Node::Leaf(leaf) = node else { continue };
            let (i, e) = self
                .edges
                .iter()
                .enumerate()
                .find(|(_, e)| e.tail == n || e.head == n)
                .expect("validated");
            let (vertex, end, exponent) = if e.head == n {
                (e.tail, End::Tail, e.winding)
            } else {
                (e.head, End::Head, -e.winding)
            };
            legs.push(Leg {
                leaf: *leaf,
                vertex,
                slot: self.slot_of(vertex, HalfEdge { edge: i, end }),
                exponent,
                half_twist: e.half_twist,
            });
        }
        legs
    }

    /// Replaces internal edge `e` by a pair of cut leaves, splitting its
    /// winding as `first + (winding - first)`. Contraction is unchanged.
    pub fn break_edge(&self, e: usize, first: i64) -> Result<ClasperGraph> {
        let edge = *self
            .edges
            .get(e)
            .ok_or_else(|| Error::MalformedClasper(format!("no edge {e}")))?;
        let internal = |n: usize| matches!(self.nodes[n], Node::Vertex(_));
        if !internal(edge.tail) || !internal(edge.head) {
            return Err(Error::MalformedClasper(format!("edge {e} is not internal")));
        }
        let pair = self
            .nodes
            .iter()
            .filter_map(|n| match n {
                Node::Leaf(Leaf::Cut { pair, .. }) => Some(pair + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let mut out = self.clone();
        let a = out.nodes.len();
        out.nodes.push(Node::Leaf(Leaf::Cut { pair, side: false }));
        out.nodes.push(Node::Leaf(Leaf::Cut { pair, side: true }));
        // edge e now runs tail -> a; a new edge runs head -> a + 1
        let winding = if edge.half_twist {
            -edge.winding
        } else {
            edge.winding
        };
        out.edges[e] = Edge {
            head: a,
            winding: first,
            half_twist: false,
            ..edge
        };
        let new = out.edges.len();
        out.edges.push(Edge {
            tail: edge.head,
            head: a + 1,
            winding: first - winding,
            half_twist: false,
        });
        if let Node::Vertex(slots) = &mut out.nodes[edge.head] {
            for h in slots.iter_mut() {
                if *h == HalfEdge::head(e) {
                    *h = HalfEdge::tail(new);
                }
            }
        }
        out.validate()?;
        Ok(out)
    }

    /// Pushes vertex `v` through the surface `k` times: every edge at `v`
    /// gains `k` intersections on the side leaving `v`. A half twist on an
    /// internal edge reverses the side from which it meets the surface.
    pub fn push_vertex(&self, v: usize, k: i64) -> ClasperGraph {
        let mut out = self.clone();
        for e in out.edges.iter_mut() {
            let internal = matches!(self.nodes[e.tail], Node::Vertex(_))
                && matches!(self.nodes[e.head], Node::Vertex(_));
            let k = if internal && e.half_twist { -k } else { k };
            if e.tail == v {
                e.winding += k;
            }
            if e.head == v {
                e.winding -= k;
            }
        }
        out
    }
}

/// All perfect matchings of `0..n` (`n` even), each as a list of pairs
/// `(a, b)` with `a < b`, in lexicographic order.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(rest: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&a, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        for (k, &b) in tail.iter().enumerate() {
            let remaining: Vec<usize> = tail
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &x)| x)
                .collect();
            acc.push((a, b));
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        go(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    }
    out
}

fn glue(
    g: &ClasperGraph,
    legs: &[Leg],
    matching: &[(usize, usize)],
    s: &StandardSurface,
) -> Result<ThetaElement> {
    let vertex_ids: Vec<usize> = (0..g.nodes.len())
        .filter(|&n| matches!(g.nodes[n], Node::Vertex(_)))
        .collect();
    let local = |n: usize| vertex_ids.iter().position(|&v| v == n).expect("vertex");
    let mut slots: [[Option<HalfEdge>; 3]; 2] = [[None; 3]; 2];
    let mut beads: Vec<LaurentPoly> = Vec::with_capacity(3);

    for (i, e) in g.edges.iter().enumerate() {
        if !(matches!(g.nodes[e.tail], Node::Vertex(_))
            && matches!(g.nodes[e.head], Node::Vertex(_)))
        {
            continue;
        }
        let k = beads.len();
        for (node, end) in [(e.tail, End::Tail), (e.head, End::Head)] {
            let slot = g.slot_of(node, HalfEdge { edge: i, end });
            slots[local(node)][slot] = Some(HalfEdge { edge: k, end });
        }
        let x = if e.half_twist { -e.winding } else { e.winding };
        beads.push(LaurentPoly::monomial(x, 1));
    }
    for &(a, b) in matching {
        let (la, lb) = (&legs[a], &legs[b]);
        let mut lk = equivariant_lk(&la.leaf, &lb.leaf, s)?;
        if lk.is_empty() {
            return Ok(ThetaElement::zero());
        }
        for twisted in [la.half_twist, lb.half_twist] {
            if twisted {
                lk = lk.bar();
            }
        }
        let bead = &(&LaurentPoly::monomial(la.exponent, 1) * &lk)
            * &LaurentPoly::monomial(-lb.exponent, 1);
        let k = beads.len();
        slots[local(la.vertex)][la.slot] = Some(HalfEdge::tail(k));
        slots[local(lb.vertex)][lb.slot] = Some(HalfEdge::head(k));
        beads.push(bead);
    }
    let vertices = slots.map(|v| v.map(|h| h.expect("every slot filled")));
    let beads: [LaurentPoly; 3] = beads
        .try_into()
        .map_err(|_| Error::MalformedClasper("closed graph must have three edges".into()))?;
    Ok(expand_linear(vertices, &beads, 1)?
        .iter()
        .map(ClosedGraph::evaluate)
        .sum())
}

/// Complete contraction of a degree-2 clasper graph: the sum over all
/// gluings of its legs in pairs.
pub fn contract_graph(
    g: &ClasperGraph,
    s: &StandardSurface,
    exec: Execution,
) -> Result<ThetaElement> {
    g.validate()?;
    let degree = g.degree();
    if degree != 2 {
        return Err(Error::UnsupportedDegree(degree));
    }
    let legs = g.legs();
    let matchings = perfect_matchings(legs.len());
    let parts = exec::map(exec, &matchings, |m| glue(g, &legs, m, s));
    let mut parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    parts.sort();
    Ok(parts.into_iter().sum())
}

fn default_twists() -> [bool; 3] {
    [false; 3]
}

/// One Y clasper: a single vertex with three band-meridian leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YSpec {
    pub bands: [usize; 3],
    pub windings: [i64; 3],
    #[serde(default = "default_twists")]
    pub half_twists: [bool; 3],
    #[serde(default)]
    pub framings: [i8; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum ClasperSpec {
    /// One loop and two leaves. The loop edges carry windings `n`, `m`;
    /// half twists sit on the two loop edges and the first leg.
    Wheel {
        bands: [usize; 2],
        windings: [i64; 2],
        #[serde(default = "default_twists")]
        half_twists: [bool; 3],
    },
    YPair {
        claspers: [YSpec; 2],
    },
}

impl ClasperSpec {
    pub fn wheel(n: i64, m: i64) -> Self {
        ClasperSpec::Wheel {
            bands: [0, 1],
            windings: [n, m],
            half_twists: [false; 3],
        }
    }

    pub fn shape(&self) -> &'static str {
        match self {
            ClasperSpec::Wheel { .. } => "wheel",
            ClasperSpec::YPair { .. } => "y_pair",
        }
    }

    pub fn to_graph(&self) -> ClasperGraph {
        let band = |band: usize| Node::Leaf(Leaf::Band { band, framing: 0 });
        match self {
            ClasperSpec::Wheel {
                bands,
                windings,
                half_twists,
            } => {
                let edge = |tail, head, winding, half_twist| Edge {
                    tail,
                    head,
                    winding,
                    half_twist,
                };
                // nodes: v1, v2, leaf1, leaf2; edges: e1, e2 (v1 -> v2), leg1, leg2
                ClasperGraph {
                    nodes: vec![
                        Node::Vertex([HalfEdge::tail(0), HalfEdge::tail(2), HalfEdge::tail(1)]),
                        Node::Vertex([HalfEdge::tail(3), HalfEdge::head(0), HalfEdge::head(1)]),
                        band(bands[0]),
                        band(bands[1]),
                    ],
                    edges: vec![
                        edge(0, 1, windings[0], half_twists[0]),
                        edge(0, 1, windings[1], half_twists[1]),
                        edge(0, 2, 0, half_twists[2]),
                        edge(1, 3, 0, false),
                    ],
                }
            }
            ClasperSpec::YPair { claspers } => {
                let mut g = ClasperGraph {
                    nodes: Vec::new(),
                    edges: Vec::new(),
                };
                for y in claspers {
                    let v = g.nodes.len();
                    let e0 = g.edges.len();
                    g.nodes.push(Node::Vertex([
                        HalfEdge::tail(e0),
                        HalfEdge::tail(e0 + 1),
                        HalfEdge::tail(e0 + 2),
                    ]));
                    for k in 0..3 {
                        g.nodes.push(Node::Leaf(Leaf::Band {
                            band: y.bands[k],
                            framing: y.framings[k],
                        }));
                        g.edges.push(Edge {
                            tail: v,
                            head: v + 1 + k,
                            winding: y.windings[k],
                            half_twist: y.half_twists[k],
                        });
                    }
                }
                g
            }
        }
    }

    fn check_bands(&self, s: &StandardSurface) -> Result<()> {
        let bands: Vec<usize> = match self {
            ClasperSpec::Wheel { bands, .. } => bands.to_vec(),
            ClasperSpec::YPair { claspers } => claspers.iter().flat_map(|y| y.bands).collect(),
        };
        bands.into_iter().try_for_each(|b| s.check(b))
    }
}

/// On-disk form of a list of claspers, read as a connected sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClasperFile {
    pub surface_genus: usize,
    pub claspers: Vec<ClasperSpec>,
}

impl ClasperFile {
    pub fn surface(&self) -> Result<StandardSurface> {
        StandardSurface::new(self.surface_genus)
    }
}

pub fn contract(spec: &ClasperSpec, s: &StandardSurface) -> Result<ThetaElement> {
    contract_with(spec, s, Execution::default())
}

pub fn contract_with(
    spec: &ClasperSpec,
    s: &StandardSurface,
    exec: Execution,
) -> Result<ThetaElement> {
    spec.check_bands(s)?;
    contract_graph(&spec.to_graph(), s, exec)
}

/// Sum of the contractions of every entry.
pub fn contract_all(
    specs: &[ClasperSpec],
    s: &StandardSurface,
    exec: Execution,
) -> Result<ThetaElement> {
    specs.iter().map(|c| contract_with(c, s, exec)).sum()
}

/// `Q` of the unknot after surgery on each wheel, summed over the connected
/// sum: surgery on a single clasper changes `Q` by minus its contraction.
pub fn q_surgery(specs: &[ClasperSpec], s: &StandardSurface) -> Result<ThetaElement> {
    let mut total = ThetaElement::zero();
    for (i, spec) in specs.iter().enumerate() {
        if !matches!(spec, ClasperSpec::Wheel { .. }) {
            return Err(Error::UnsupportedShape(format!(
                "clasper {i} has shape {}; Q is defined here for wheels only",
                spec.shape()
            )));
        }
        total.add_scaled(&contract(spec, s)?, -1);
    }
    Ok(total)
}

/// Wheels on bands 0 and 1 whose surgeries realize `target`.
///
/// The wheel with windings `(n, m)` contributes `-(t1 - 1) t2^n t3^m`, and
/// reflecting the windings to `(1 - n, 1 - m)` flips that sign, so negative
/// coefficients need no orientation data.
pub fn realize_claspers(target: &ThetaElement, _s: &StandardSurface) -> Result<Vec<ClasperSpec>> {
    let mut out = Vec::new();
    for t in realize_decompose(target)? {
        let (n, m) = if t.coef < 0 {
            (t.n, t.m)
        } else {
            (1 - t.n, 1 - t.m)
        };
        let copies = t.coef.unsigned_abs() as usize;
        out.extend(std::iter::repeat_n(ClasperSpec::wheel(n, m), copies));
    }
    Ok(out)
}
