//! Combinatorial model of a simple topological graph whose vertex set is
//! partitioned into cliques.
//!
//! A drawing is abstracted as the set of unordered edge pairs that cross.
//! Simplicity of the drawing shows up as two invariants on that set: two
//! edges sharing an endpoint never cross, and any pair crosses at most once.
//! Whether a crossing set is realizable by an actual drawing is not checked.

mod paths;
mod solution;

pub(crate) use paths::path_table;
pub use paths::{spanning_paths, PathChoice, MAX_PART_SIZE};
pub use solution::{Outcome, Solution};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub usize);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(
    /// Dense vertex index in `0..n`.
    VertexId
);
id_type!(
    /// Dense edge index in creation order.
    EdgeId
);
id_type!(
    /// Index of a part of the clique partition.
    PartId
);

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.u == other.u || self.u == other.v || self.v == other.u || self.v == other.v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge #{edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge #{edge} ({u}, {v}) duplicates edge #{first}")]
    DuplicateEdge {
        edge: usize,
        first: usize,
        u: usize,
        v: usize,
    },
    #[error("crossing #{crossing} names an edge that does not exist")]
    UnknownEdgeInCrossing { crossing: usize },
    #[error("crossing #{crossing} pairs edges {a} and {b}, which share an endpoint")]
    AdjacentCrossing { crossing: usize, a: EdgeId, b: EdgeId },
    #[error("crossing #{crossing} repeats crossing #{first} between edges {a} and {b}")]
    DuplicateCrossing {
        crossing: usize,
        first: usize,
        a: EdgeId,
        b: EdgeId,
    },
    #[error("part {part} is empty")]
    EmptyPart { part: usize },
    #[error("vertex {vertex} lies in more than one part")]
    PartitionOverlap { vertex: usize },
    #[error("vertex {vertex} is not covered by any part")]
    PartitionNotCovering { vertex: usize },
    #[error("part {part} is not a clique: edge ({u}, {v}) is missing")]
    CliqueIncomplete { part: usize, u: usize, v: usize },
    #[error("part {part} has {size} vertices; spanning paths need at least 2")]
    PartTooSmall { part: usize, size: usize },
    #[error("part {part} has {size} vertices; path tables stop at {MAX_PART_SIZE}")]
    PartTooLarge { part: usize, size: usize },
}

/// Vertices, edges, and the pairwise crossing relation of a drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopoGraph {
    n: usize,
    edges: Vec<Edge>,
    crossings: Vec<(EdgeId, EdgeId)>,
    by_endpoints: HashMap<(VertexId, VertexId), EdgeId>,
    crossed_by: Vec<Vec<EdgeId>>,
}

impl TopoGraph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    /// Crossing pairs in input order, each stored with the smaller id first.
    pub fn crossings(&self) -> &[(EdgeId, EdgeId)] {
        &self.crossings
    }

    /// Edges crossing `e`, in the order the crossings were declared.
    pub fn crossing_partners(&self, e: EdgeId) -> &[EdgeId] {
        &self.crossed_by[e.0]
    }

    pub fn crossing_count(&self, e: EdgeId) -> usize {
        self.crossed_by[e.0].len()
    }

    pub fn find_edge(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.by_endpoints.get(&key).copied()
    }

    pub fn crosses(&self, a: EdgeId, b: EdgeId) -> bool {
        let (short, other) = if self.crossed_by[a.0].len() <= self.crossed_by[b.0].len() {
            (a, b)
        } else {
            (b, a)
        };
        self.crossed_by[short.0].contains(&other)
    }
}

/// Partition of the vertex set into cliques. Vertex lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePartition {
    parts: Vec<Vec<VertexId>>,
    part_of: Vec<PartId>,
}

impl CliquePartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    pub fn part(&self, p: PartId) -> &[VertexId] {
        &self.parts[p.0]
    }

    pub fn part_of(&self, v: VertexId) -> PartId {
        self.part_of[v.0]
    }
}

/// Role of an edge with respect to the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// Both endpoints lie in `part`; `local` indexes the pair within the
    /// part's sorted vertex list (see [`Instance::clique_edges`]).
    Clique {
        part: PartId,
        local: usize,
    },
    Link,
}

/// A validated problem instance. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: TopoGraph,
    partition: CliquePartition,
    classes: Vec<EdgeClass>,
    clique_edges: Vec<Vec<EdgeId>>,
    h: usize,
}

type EndpointIndex = HashMap<(VertexId, VertexId), EdgeId>;

fn collect_edges(n: usize, edges: &[(usize, usize)]) -> Result<(Vec<Edge>, EndpointIndex), ModelError> {
    let mut edge_list = Vec::with_capacity(edges.len());
    let mut by_endpoints = HashMap::with_capacity(edges.len());
    for (i, &(a, b)) in edges.iter().enumerate() {
        for x in [a, b] {
            if x >= n {
                return Err(ModelError::VertexOutOfRange { vertex: x, n });
            }
        }
        if a == b {
            return Err(ModelError::SelfLoop { edge: i, vertex: a });
        }
        let (u, v) = (VertexId(a.min(b)), VertexId(a.max(b)));
        if let Some(first) = by_endpoints.insert((u, v), EdgeId(i)) {
            return Err(ModelError::DuplicateEdge {
                edge: i,
                first: first.0,
                u: u.0,
                v: v.0,
            });
        }
        edge_list.push(Edge { id: EdgeId(i), u, v });
    }
    Ok((edge_list, by_endpoints))
}

/// Validates raw lists and assembles an [`Instance`].
///
/// `edges` must contain every clique edge explicitly. Crossings name edges by
/// their index in `edges`. Errors report the lowest offending element, with
/// edges checked before crossings and crossings before the partition.
pub fn build_instance(
    n: usize,
    edges: &[(usize, usize)],
    crossings: &[(usize, usize)],
    parts: &[Vec<usize>],
) -> Result<Instance, ModelError> {
    let (edge_list, by_endpoints) = collect_edges(n, edges)?;

    let mut crossing_list = Vec::with_capacity(crossings.len());
    let mut crossed_by = vec![Vec::new(); edge_list.len()];
    let mut seen: HashMap<(EdgeId, EdgeId), usize> = HashMap::with_capacity(crossings.len());
    for (i, &(a, b)) in crossings.iter().enumerate() {
        if a >= edge_list.len() || b >= edge_list.len() {
            return Err(ModelError::UnknownEdgeInCrossing { crossing: i });
        }
        let (a, b) = (EdgeId(a.min(b)), EdgeId(a.max(b)));
        if a == b || edge_list[a.0].shares_endpoint(&edge_list[b.0]) {
            return Err(ModelError::AdjacentCrossing { crossing: i, a, b });
        }
        if let Some(&first) = seen.get(&(a, b)) {
            return Err(ModelError::DuplicateCrossing {
                crossing: i,
                first,
                a,
                b,
            });
        }
        seen.insert((a, b), i);
        crossed_by[a.0].push(b);
        crossed_by[b.0].push(a);
        crossing_list.push((a, b));
    }

    const UNSET: usize = usize::MAX;
    let mut part_of = vec![UNSET; n];
    let mut sorted_parts = Vec::with_capacity(parts.len());
    for (p, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(ModelError::EmptyPart { part: p });
        }
        let mut sorted: Vec<usize> = part.clone();
        sorted.sort_unstable();
        for &v in &sorted {
            if v >= n {
                return Err(ModelError::VertexOutOfRange { vertex: v, n });
            }
            if part_of[v] != UNSET {
                return Err(ModelError::PartitionOverlap { vertex: v });
            }
            part_of[v] = p;
        }
        sorted_parts.push(sorted.into_iter().map(VertexId).collect::<Vec<_>>());
    }
    if let Some(v) = part_of.iter().position(|&p| p == UNSET) {
        return Err(ModelError::PartitionNotCovering { vertex: v });
    }

    let mut classes = vec![EdgeClass::Link; edge_list.len()];
    let mut clique_edges = Vec::with_capacity(sorted_parts.len());
    for (p, part) in sorted_parts.iter().enumerate() {
        let s = part.len();
        let mut ids = Vec::with_capacity(s * s.saturating_sub(1) / 2);
        for i in 0..s {
            for j in i + 1..s {
                let Some(&e) = by_endpoints.get(&(part[i], part[j])) else {
                    return Err(ModelError::CliqueIncomplete {
                        part: p,
                        u: part[i].0,
                        v: part[j].0,
                    });
                };
                classes[e.0] = EdgeClass::Clique {
                    part: PartId(p),
                    local: ids.len(),
                };
                ids.push(e);
            }
        }
        clique_edges.push(ids);
    }

    let h = sorted_parts.iter().map(Vec::len).max().unwrap_or(0);
    Ok(Instance {
        graph: TopoGraph {
            n,
            edges: edge_list,
            crossings: crossing_list,
            by_endpoints,
            crossed_by,
        },
        partition: CliquePartition {
            parts: sorted_parts,
            part_of: part_of.into_iter().map(PartId).collect(),
        },
        classes,
        clique_edges,
        h,
    })
}

impl Instance {
    pub fn graph(&self) -> &TopoGraph {
        &self.graph
    }

    pub fn partition(&self) -> &CliquePartition {
        &self.partition
    }

    pub fn part_count(&self) -> usize {
        self.partition.len()
    }

    pub fn part(&self, p: PartId) -> &[VertexId] {
        self.partition.part(p)
    }

    pub fn part_ids(&self) -> impl Iterator<Item = PartId> + '_ {
        (0..self.partition.len()).map(PartId)
    }

    /// Largest part size.
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn classify_edge(&self, e: EdgeId) -> EdgeClass {
        self.classes[e.0]
    }

    /// Clique edges of part `p`, indexed by pair position in the sorted
    /// vertex list: `(0,1), (0,2), .., (0,s-1), (1,2), ..`.
    pub fn clique_edges(&self, p: PartId) -> &[EdgeId] {
        &self.clique_edges[p.0]
    }

    pub fn link_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, EdgeClass::Link))
            .map(|(i, _)| EdgeId(i))
    }

    /// An edge can be dropped only if it belongs to a clique with at least
    /// three vertices. Links and the single edge of a two-vertex part stay.
    pub fn is_removable(&self, e: EdgeId) -> bool {
        match self.classes[e.0] {
            EdgeClass::Clique { part, .. } => self.partition.part(part).len() >= 3,
            EdgeClass::Link => false,
        }
    }

    /// Maximum number of crossings on a single edge; the instance is
    /// k-plane iff this is at most k.
    pub fn max_crossings_per_edge(&self) -> usize {
        self.graph.crossed_by.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// All spanning paths of part `p` in canonical order.
    pub fn spanning_paths(&self, p: PartId) -> Result<Vec<PathChoice>, ModelError> {
        spanning_paths(p, self.part(p))
    }
}

/// Assembles an instance in the canonical edge order used by the text
/// format: clique edges part by part, then links in insertion order.
#[derive(Debug, Clone, Default)]
pub struct InstanceBuilder {
    n: usize,
    parts: Vec<Vec<usize>>,
    links: Vec<(usize, usize)>,
    crosses: Vec<((usize, usize), (usize, usize))>,
}

impl InstanceBuilder {
    pub fn new(n: usize) -> Self {
        Self { n, ..Self::default() }
    }

    /// Reopens an instance for extension. Edge ids stay stable as long as
    /// the instance came from a builder and only singleton parts and links
    /// are added.
    pub fn from_instance(instance: &Instance) -> Self {
        let g = instance.graph();
        let ends = |e: EdgeId| {
            let edge = g.edge(e);
            (edge.u.0, edge.v.0)
        };
        Self {
            n: g.vertex_count(),
            parts: instance
                .partition()
                .parts()
                .iter()
                .map(|p| p.iter().map(|v| v.0).collect())
                .collect(),
            links: instance.link_edges().map(ends).collect(),
            crosses: g.crossings().iter().map(|&(a, b)| (ends(a), ends(b))).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Appends `count` fresh vertices and returns the first new id.
    pub fn add_vertices(&mut self, count: usize) -> usize {
        let first = self.n;
        self.n += count;
        first
    }

    pub fn part(&mut self, vertices: &[usize]) -> PartId {
        self.parts.push(vertices.to_vec());
        PartId(self.parts.len() - 1)
    }

    pub fn link(&mut self, u: usize, v: usize) -> &mut Self {
        self.links.push((u, v));
        self
    }

    /// Declares that the edge between `a` and the edge between `b` cross.
    pub fn cross(&mut self, a: (usize, usize), b: (usize, usize)) -> &mut Self {
        self.crosses.push((a, b));
        self
    }

    pub fn build(&self) -> Result<Instance, ModelError> {
        let mut edges = Vec::new();
        let mut sorted_parts = Vec::with_capacity(self.parts.len());
        for part in &self.parts {
            let mut sorted = part.clone();
            sorted.sort_unstable();
            for i in 0..sorted.len() {
                for j in i + 1..sorted.len() {
                    edges.push((sorted[i], sorted[j]));
                }
            }
            sorted_parts.push(sorted);
        }
        edges.extend(self.links.iter().copied());

        let mut index: HashMap<(usize, usize), usize> = HashMap::with_capacity(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            index.entry((a.min(b), a.max(b))).or_insert(i);
        }
        let lookup = |(a, b): (usize, usize)| index.get(&(a.min(b), a.max(b))).copied();

        let mut crossings = Vec::with_capacity(self.crosses.len());
        for &(a, b) in &self.crosses {
            match (lookup(a), lookup(b)) {
                (Some(x), Some(y)) => crossings.push((x, y)),
                _ => {
                    // Edge-level problems take precedence, as in build_instance.
                    collect_edges(self.n, &edges)?;
                    return Err(ModelError::UnknownEdgeInCrossing {
                        crossing: crossings.len(),
                    });
                }
            }
        }
        build_instance(self.n, &edges, &crossings, &sorted_parts)
    }
}
