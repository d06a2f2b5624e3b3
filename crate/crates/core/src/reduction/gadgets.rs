//! Gadget construction on a shared builder. Handles refer to vertices here
//! and are resolved to edge ids once the instance is built.

use crate::model::{Instance, InstanceBuilder, PartId, VertexId};

use super::TriCliqueHandle;

/// A triangle `(a, b, c)` with base `(a, b)`, left `(b, c)`, right `(a, c)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tri {
    part: PartId,
    v: [usize; 3],
}

impl Tri {
    pub(crate) fn add(b: &mut InstanceBuilder) -> Self {
        let a = b.add_vertices(3);
        let v = [a, a + 1, a + 2];
        Self { part: b.part(&v), v }
    }

    pub(crate) fn left(&self) -> (usize, usize) {
        (self.v[1], self.v[2])
    }

    pub(crate) fn right(&self) -> (usize, usize) {
        (self.v[0], self.v[2])
    }

    pub(crate) fn resolve(&self, inst: &Instance) -> TriCliqueHandle {
        let g = inst.graph();
        let edge = |(x, y): (usize, usize)| g.find_edge(VertexId(x), VertexId(y)).expect("triangle edge");
        TriCliqueHandle {
            part: self.part,
            vertices: self.v.map(VertexId),
            base: edge((self.v[0], self.v[1])),
            left: edge(self.left()),
            right: edge(self.right()),
        }
    }
}

/// Left crosses left and right crosses right; neighbouring triangles along
/// a ring or chain must then drop opposite sides.
pub(crate) fn attach(b: &mut InstanceBuilder, x: &Tri, y: &Tri) {
    b.cross(x.left(), y.left()).cross(x.right(), y.right());
}

pub(crate) struct VariableProto {
    pub ring: Vec<Tri>,
    pub tau: Vec<Tri>,
}

/// Ring `t_1..t_{2n}` plus `tau_1..tau_n`. Right of `tau_j` crosses left of
/// `t_{2j-1}` and right of `t_{2j}`; left of `tau_j` crosses left of `t_{2j}`
/// and right of `t_{2j-1}`.
pub(crate) fn add_variable(b: &mut InstanceBuilder, occurrences: usize) -> VariableProto {
    let len = 2 * occurrences;
    let ring: Vec<Tri> = (0..len).map(|_| Tri::add(b)).collect();
    let tau: Vec<Tri> = (0..occurrences).map(|_| Tri::add(b)).collect();
    // A ring of two has a single neighbour pair.
    let pairs = if len == 2 { 1 } else { len };
    for i in 0..pairs {
        attach(b, &ring[i], &ring[(i + 1) % len]);
    }
    for (j, t) in tau.iter().enumerate() {
        let (odd, even) = (&ring[2 * j], &ring[2 * j + 1]);
        b.cross(t.right(), odd.left())
            .cross(t.right(), even.right())
            .cross(t.left(), even.left())
            .cross(t.left(), odd.right());
    }
    VariableProto { ring, tau }
}

pub(crate) struct ClauseProto {
    pub part: PartId,
    pub center: usize,
    pub rim: [usize; 3],
    pub inputs: [Tri; 3],
}

/// A crossing-free 4-clique `{v, v_x, v_y, v_z}` (rim in clockwise order)
/// and one input triangle per rim vertex `v_w`: its left edge crosses the
/// spoke `(v, v_w)` and the rim edge `(v_w, v_next)`, its right edge the
/// rim edge `(v_prev, v_w)`.
pub(crate) fn add_clause(b: &mut InstanceBuilder) -> ClauseProto {
    let center = b.add_vertices(4);
    let rim = [center + 1, center + 2, center + 3];
    let part = b.part(&[center, rim[0], rim[1], rim[2]]);
    let inputs = [Tri::add(b), Tri::add(b), Tri::add(b)];
    for w in 0..3 {
        let (next, prev) = (rim[(w + 1) % 3], rim[(w + 2) % 3]);
        b.cross(inputs[w].left(), (center, rim[w]))
            .cross(inputs[w].left(), (rim[w], next))
            .cross(inputs[w].right(), (prev, rim[w]));
    }
    ClauseProto {
        part,
        center,
        rim,
        inputs,
    }
}

/// `len` triangles, consecutive ones attached.
pub(crate) fn add_chain(b: &mut InstanceBuilder, len: usize) -> Vec<Tri> {
    let chain: Vec<Tri> = (0..len).map(|_| Tri::add(b)).collect();
    for w in chain.windows(2) {
        attach(b, &w[0], &w[1]);
    }
    chain
}
