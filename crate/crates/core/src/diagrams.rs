//! Degree-2 beaded trivalent diagrams and their normalization into the orbit
//! group of [`crate::ltheta`].
//!
//! A [`ClosedGraph`] has two trivalent vertices and three oriented edges,
//! each carrying a monomial bead `t^x` read along the edge orientation.
//! Every vertex lists its three half-edges in cyclic (counterclockwise)
//! order. With two trivalent vertices the graph is either a theta (all three
//! edges join the two vertices) or an eyes graph (one middle edge and a loop
//! at each vertex).
//!
//! Relations used:
//! - orientation reversal: reversing an edge inverts its bead;
//! - AS: swapping two half-edges at a vertex negates the diagram;
//! - holonomy: multiplying the beads of all edges leaving a vertex by `t^k`
//!   (and entering it by `t^-k`) is the identity;
//! - IHX, used only to rewrite an eyes graph as two thetas.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cursor::Cursor;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ltheta::{project, AmbientPoly, ThetaElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Tail => End::Head,
            End::Head => End::Tail,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: usize,
    pub end: End,
}

impl HalfEdge {
    pub fn tail(edge: usize) -> Self {
        HalfEdge {
            edge,
            end: End::Tail,
        }
    }

    pub fn head(edge: usize) -> Self {
        HalfEdge {
            edge,
            end: End::Head,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedGraph {
    pub vertices: [[HalfEdge; 3]; 2],
    /// Bead exponent of each edge, read from tail to head.
    pub beads: [i64; 3],
    pub coef: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Theta,
    /// Index of the middle edge.
    Eyes(usize),
}

impl ClosedGraph {
    pub fn new(vertices: [[HalfEdge; 3]; 2], beads: [i64; 3], coef: i64) -> Result<Self> {
        let mut seen = [[false; 2]; 3];
        for h in vertices.iter().flatten() {
            if h.edge >= 3 {
                return Err(Error::MalformedClasper(format!(
                    "edge index {} out of range",
                    h.edge
                )));
            }
            let slot = &mut seen[h.edge][h.end as usize];
            if *slot {
                return Err(Error::MalformedClasper(format!(
                    "half-edge {h:?} used twice"
                )));
            }
            *slot = true;
        }
        Ok(ClosedGraph {
            vertices,
            beads,
            coef,
        })
    }

    /// Vertex holding the given half-edge.
    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        if self.vertices[0].contains(&h) {
            0
        } else {
            1
        }
    }

    fn edge_joins_both(&self, e: usize) -> bool {
        self.vertex_of(HalfEdge::tail(e)) != self.vertex_of(HalfEdge::head(e))
    }

    pub fn shape(&self) -> Shape {
        let crossing: Vec<usize> = (0..3).filter(|&e| self.edge_joins_both(e)).collect();
        if crossing.len() == 3 {
            Shape::Theta
        } else {
            Shape::Eyes(crossing[0])
        }
    }

    /// The graph with edge `e` reversed, bead inverted.
    pub fn reverse_edge(&self, e: usize) -> ClosedGraph {
        let mut out = self.clone();
        for h in out.vertices.iter_mut().flatten() {
            if h.edge == e {
                h.end = h.end.flip();
            }
        }
        out.beads[e] = -out.beads[e];
        out
    }

    /// Value in the orbit group.
    pub fn evaluate(&self) -> ThetaElement {
        match self.shape() {
            Shape::Theta => self.evaluate_theta(),
            Shape::Eyes(middle) => {
                relations::eyes_to_thetas(&relations::holonomy_clear(self, middle), middle)
                    .iter()
                    .map(ClosedGraph::evaluate_theta)
                    .sum()
            }
        }
    }

    fn evaluate_theta(&self) -> ThetaElement {
        let v0 = self.vertices[0];
        let exps: Vec<i64> = v0
            .iter()
            .map(|h| match h.end {
                End::Tail => self.beads[h.edge],
                End::Head => -self.beads[h.edge],
            })
            .collect();
        let order0: Vec<usize> = v0.iter().map(|h| h.edge).collect();
        let order1: Vec<usize> = self.vertices[1].iter().map(|h| h.edge).collect();
        let reversed = [order0[2], order0[1], order0[0]];
        let sign = if is_rotation(&order1, &reversed) {
            1
        } else {
            -1
        };
        project(&AmbientPoly::monomial(
            [exps[0], exps[1], exps[2]],
            sign * self.coef,
        ))
    }
}

fn is_rotation(a: &[usize], b: &[usize; 3]) -> bool {
    (0..3).any(|r| (0..3).all(|i| a[i] == b[(i + r) % 3]))
}

/// Diagram relations that are read off pictures: holonomy transport and the
/// IHX rewrite of an eyes graph. Everything else in this module follows from
/// orientation reversal and AS.
pub mod relations {
    use super::*;

    /// Moves the bead of the middle edge of an eyes graph onto the vertex it
    /// leaves, where the loop absorbs nothing (a loop both leaves and enters
    /// its vertex). Result has middle bead 0.
    pub fn holonomy_clear(g: &ClosedGraph, middle: usize) -> ClosedGraph {
        let mut out = g.clone();
        out.beads[middle] = 0;
        out
    }

    /// Rotates a vertex's cyclic order so that `h` sits at position `at`.
    fn rotate_to(v: [HalfEdge; 3], h: HalfEdge, at: usize) -> [HalfEdge; 3] {
        let i = v.iter().position(|&x| x == h).expect("half-edge at vertex");
        let mut out = v;
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = v[(i + 3 + k - at) % 3];
        }
        out
    }

    /// IHX across `middle` (middle bead must be 0), in the form
    /// `G[x:(A,B,e), y:(e,C,D)] = -G[x:(B,C,e), y:(e,A,D)] - G[x:(C,A,e), y:(e,B,D)]`,
    /// where `x` holds the tail of `e`. Returns the two graphs with their
    /// signs folded into the coefficients.
    pub fn eyes_to_thetas(g: &ClosedGraph, middle: usize) -> [ClosedGraph; 2] {
        debug_assert_eq!(g.beads[middle], 0);
        let e_tail = HalfEdge::tail(middle);
        let e_head = HalfEdge::head(middle);
        let xi = g.vertex_of(e_tail);
        let x = rotate_to(g.vertices[xi], e_tail, 2);
        let y = rotate_to(g.vertices[1 - xi], e_head, 0);
        let (a, b, c, d) = (x[0], x[1], y[1], y[2]);
        let term = |x: [HalfEdge; 3], y: [HalfEdge; 3]| ClosedGraph {
            vertices: [x, y],
            beads: g.beads,
            coef: -g.coef,
        };
        [
            term([b, c, e_tail], [e_head, a, d]),
            term([c, a, e_tail], [e_head, b, d]),
        ]
    }
}

/// Theta diagram with bead exponents on its three parallel edges, all
/// oriented from the first vertex to the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaDiagram {
    pub beads: [i64; 3],
    pub coef: i64,
}

impl ThetaDiagram {
    pub fn new(a: i64, b: i64, c: i64, coef: i64) -> Self {
        ThetaDiagram {
            beads: [a, b, c],
            coef,
        }
    }

    pub fn to_graph(&self) -> ClosedGraph {
        ClosedGraph {
            vertices: [
                [HalfEdge::tail(0), HalfEdge::tail(1), HalfEdge::tail(2)],
                [HalfEdge::head(2), HalfEdge::head(1), HalfEdge::head(0)],
            ],
            beads: self.beads,
            coef: self.coef,
        }
    }
}

pub fn theta_normal_form(d: &ThetaDiagram) -> ThetaElement {
    project(&AmbientPoly::monomial(d.beads, d.coef))
}

/// Eyes diagram: loops with beads `a`, `b` and middle edge bead `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EyesDiagram {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub coef: i64,
}

impl EyesDiagram {
    pub fn new(a: i64, b: i64, c: i64, coef: i64) -> Self {
        EyesDiagram { a, b, c, coef }
    }

    /// Edge 0 is the middle edge, edges 1 and 2 the loops. Each vertex reads
    /// (middle, loop tail, loop head) counterclockwise.
    pub fn to_graph(&self) -> ClosedGraph {
        ClosedGraph {
            vertices: [
                [HalfEdge::tail(0), HalfEdge::tail(1), HalfEdge::head(1)],
                [HalfEdge::head(0), HalfEdge::tail(2), HalfEdge::head(2)],
            ],
            beads: [self.c, self.a, self.b],
            coef: self.coef,
        }
    }
}

pub fn holonomy_normalize(e: &EyesDiagram) -> EyesDiagram {
    EyesDiagram { c: 0, ..*e }
}

pub fn reduce_eyes(e: &EyesDiagram) -> ThetaElement {
    e.to_graph().evaluate()
}

/// Expands Laurent polynomial beads by linearity into monomial-bead graphs.
pub fn expand_linear(
    vertices: [[HalfEdge; 3]; 2],
    beads: &[LaurentPoly; 3],
    coef: i64,
) -> Result<Vec<ClosedGraph>> {
    let mut out = Vec::new();
    for (x0, c0) in beads[0].terms() {
        for (x1, c1) in beads[1].terms() {
            for (x2, c2) in beads[2].terms() {
                let c = c0 * c1 * c2 * coef;
                let c =
                    i64::try_from(&c).map_err(|_| Error::Overflow(format!("bead product {c}")))?;
                out.push(ClosedGraph::new(vertices, [x0, x1, x2], c)?);
            }
        }
    }
    Ok(out)
}

/// Literal forms `theta(a,b,c; coef)` and `eyes(a,b|c; coef)`; the
/// coefficient part is optional.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagram {
    Theta(ThetaDiagram),
    Eyes(EyesDiagram),
}

impl Diagram {
    pub fn evaluate(&self) -> ThetaElement {
        match self {
            Diagram::Theta(d) => theta_normal_form(d),
            Diagram::Eyes(e) => reduce_eyes(e),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::Theta(d) => {
                write!(
                    f,
                    "theta({},{},{}; {})",
                    d.beads[0], d.beads[1], d.beads[2], d.coef
                )
            }
            Diagram::Eyes(e) => write!(f, "eyes({},{}|{}; {})", e.a, e.b, e.c, e.coef),
        }
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        cur.skip_ws();
        let rest = &s[cur.pos()..];
        let theta = rest.starts_with("theta");
        if !theta && !rest.starts_with("eyes") {
            return Err(cur.error("expected 'theta' or 'eyes'"));
        }
        for &b in if theta {
            b"theta".as_slice()
        } else {
            b"eyes".as_slice()
        } {
            cur.expect(b)?;
        }
        cur.expect(b'(')?;
        let a = cur.signed_i64()?;
        cur.expect(b',')?;
        let b = cur.signed_i64()?;
        cur.expect(if theta { b',' } else { b'|' })?;
        let c = cur.signed_i64()?;
        let coef = if cur.eat(b';') { cur.signed_i64()? } else { 1 };
        cur.expect(b')')?;
        if !cur.at_end() {
            return Err(cur.error("trailing input"));
        }
        Ok(if theta {
            Diagram::Theta(ThetaDiagram::new(a, b, c, coef))
        } else {
            Diagram::Eyes(EyesDiagram::new(a, b, c, coef))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(t: [i64; 3], c: i64) -> ThetaElement {
        ThetaElement::class_of(t, c)
    }

    fn lit(s: &str) -> ThetaElement {
        s.parse::<Diagram>().unwrap().evaluate()
    }

    #[test]
    fn theta_examples() {
        assert_eq!(lit("theta(0,0,0; 1)"), class([0, 0, 0], 1));
        assert_eq!(lit("theta(1,0,0)"), lit("theta(0,1,0)"));
        assert_eq!(lit("theta(1,-1,0)"), lit("theta(-1,1,0)"));
        assert_eq!(lit("theta(2,5,-1; -3)"), class([2, 5, -1], -3));
    }

    #[test]
    fn theta_graph_matches_normal_form() {
        for beads in [[0, 0, 0], [1, 2, 3], [-2, 0, 4]] {
            let d = ThetaDiagram { beads, coef: 2 };
            assert_eq!(d.to_graph().evaluate(), theta_normal_form(&d));
        }
    }

    #[test]
    fn as_flip_negates_theta() {
        let g = ThetaDiagram::new(1, 2, -1, 1).to_graph();
        let mut flipped = g.clone();
        flipped.vertices[0].swap(0, 1);
        assert_eq!(flipped.evaluate(), -&g.evaluate());
    }

    #[test]
    fn shapes() {
        assert_eq!(
            ThetaDiagram::new(0, 0, 0, 1).to_graph().shape(),
            Shape::Theta
        );
        assert_eq!(
            EyesDiagram::new(0, 0, 0, 1).to_graph().shape(),
            Shape::Eyes(0)
        );
    }

    #[test]
    fn eyes_examples() {
        assert!(lit("eyes(0,0|0)").is_zero());
        assert_eq!(lit("eyes(1,2|0)"), lit("eyes(2,1|0)"));
        assert_eq!(
            lit("eyes(1,2|0)"),
            &class([-1, 2, 0], 1) - &class([1, 2, 0], 1)
        );
        // loop reversal is an AS flip at the loop vertex
        assert_eq!(lit("eyes(-1,2|0)"), -&lit("eyes(1,2|0)"));
    }

    #[test]
    fn holonomy() {
        let e = EyesDiagram::new(2, 1, 0, 1);
        assert_eq!(holonomy_normalize(&e), e);
        let f = EyesDiagram::new(2, -3, 5, 4);
        assert_eq!(
            holonomy_normalize(&holonomy_normalize(&f)),
            holonomy_normalize(&f)
        );
        assert_eq!(reduce_eyes(&f), reduce_eyes(&holonomy_normalize(&f)));
    }

    #[test]
    fn ihx_terms_are_thetas() {
        let g = EyesDiagram::new(3, -1, 0, 1).to_graph();
        for t in relations::eyes_to_thetas(&g, 0) {
            assert_eq!(t.shape(), Shape::Theta);
            assert_eq!(t.coef, -1);
        }
    }

    #[test]
    fn literal_parsing() {
        assert_eq!(
            "eyes(1,-2|3; 4)".parse::<Diagram>().unwrap(),
            Diagram::Eyes(EyesDiagram::new(1, -2, 3, 4))
        );
        assert!("eyes(1,2,3)".parse::<Diagram>().is_err());
        assert!("cube(1,2,3)".parse::<Diagram>().is_err());
        let d = Diagram::Theta(ThetaDiagram::new(1, 2, 3, -1));
        assert_eq!(d.to_string().parse::<Diagram>().unwrap(), d);
    }

    #[test]
    fn linear_expansion() {
        let v = ThetaDiagram::new(0, 0, 0, 1).to_graph().vertices;
        let t_minus_1: LaurentPoly = "-1 + 1*t".parse().unwrap();
        let beads = [LaurentPoly::t(), t_minus_1, LaurentPoly::constant(1)];
        let gs = expand_linear(v, &beads, 1).unwrap();
        assert_eq!(gs.len(), 2);
        let total: ThetaElement = gs.iter().map(ClosedGraph::evaluate).sum();
        assert_eq!(total, &class([1, 1, 0], 1) - &class([1, 0, 0], 1));
    }
}
