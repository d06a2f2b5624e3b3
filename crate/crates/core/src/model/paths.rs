//! Spanning-path domains of complete graphs.

use std::sync::OnceLock;

use itertools::Itertools;

use super::{ModelError, PartId, VertexId};

/// Largest part whose spanning paths are tabulated (10!/2 paths, 45 edges).
pub const MAX_PART_SIZE: usize = 10;

/// A spanning path of one part, oriented so the smaller endpoint comes first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathChoice {
    pub part: PartId,
    pub vertices: Vec<VertexId>,
}

impl PathChoice {
    pub fn new(part: PartId, mut vertices: Vec<VertexId>) -> Self {
        if let (Some(first), Some(last)) = (vertices.first(), vertices.last()) {
            if first > last {
                vertices.reverse();
            }
        }
        Self { part, vertices }
    }

    /// Consecutive vertex pairs, i.e. the clique edges the path keeps.
    pub fn steps(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Index of the pair `(i, j)`, `i < j`, among the pairs of `0..s` listed as
/// `(0,1), (0,2), .., (0,s-1), (1,2), ..`.
#[inline]
pub(crate) fn pair_index(s: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < s);
    i * s - i * (i + 1) / 2 + (j - i - 1)
}

/// All spanning paths of `K_s` over positions `0..s`, in lexicographic order
/// with the smaller endpoint first. `kept[k]` is the bitmask (by
/// [`pair_index`]) of the edges path `k` keeps.
pub(crate) struct PathTable {
    pub size: usize,
    orders: Vec<u8>,
    pub kept: Vec<u64>,
}

impl PathTable {
    fn new(size: usize) -> Self {
        let mut orders = Vec::new();
        let mut kept = Vec::new();
        if size == 1 {
            orders.push(0);
            kept.push(0);
        }
        if size >= 2 {
            for perm in (0..size as u8).permutations(size) {
                if perm[0] > perm[size - 1] {
                    continue;
                }
                let mut mask = 0u64;
                for w in perm.windows(2) {
                    let (a, b) = (w[0].min(w[1]) as usize, w[0].max(w[1]) as usize);
                    mask |= 1 << pair_index(size, a, b);
                }
                orders.extend_from_slice(&perm);
                kept.push(mask);
            }
        }
        Self { size, orders, kept }
    }

    pub fn len(&self) -> usize {
        self.kept.len()
    }

    pub fn order(&self, k: usize) -> &[u8] {
        &self.orders[k * self.size..(k + 1) * self.size]
    }
}

/// Cached table for parts of `size` vertices (`1..=MAX_PART_SIZE`).
pub(crate) fn path_table(size: usize) -> &'static PathTable {
    static TABLES: [OnceLock<PathTable>; MAX_PART_SIZE + 1] = [const { OnceLock::new() }; MAX_PART_SIZE + 1];
    assert!((1..=MAX_PART_SIZE).contains(&size), "no path table for size {size}");
    TABLES[size].get_or_init(|| PathTable::new(size))
}

/// Every Hamiltonian path of the complete graph on `vertices`, `|part|!/2`
/// of them, in lexicographic order of the normalized vertex sequence.
pub fn spanning_paths(part: PartId, vertices: &[VertexId]) -> Result<Vec<PathChoice>, ModelError> {
    let size = vertices.len();
    if size < 2 {
        return Err(ModelError::PartTooSmall { part: part.0, size });
    }
    if size > MAX_PART_SIZE {
        return Err(ModelError::PartTooLarge { part: part.0, size });
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    let table = path_table(size);
    Ok((0..table.len())
        .map(|k| PathChoice {
            part,
            vertices: table.order(k).iter().map(|&i| sorted[i as usize]).collect(),
        })
        .collect())
}
