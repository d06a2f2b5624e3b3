//! Seeded random instances and formulas.
//!
//! All randomness comes from ChaCha8 seeded through `seed_from_u64`, and
//! only integer ranges are sampled, so a seed produces the same artifact on
//! every platform. Crossings are drawn by rejection sampling among pairs of
//! non-adjacent edges.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{EdgeId, Instance, InstanceBuilder, ModelError, MAX_PART_SIZE};
use crate::reduction::{Formula, ReductionError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("conflicting parameters: {0}")]
    ParamConflict(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub seed: u64,
    pub parts: usize,
    /// Part sizes are uniform in `min_part_size..=max_part_size`.
    pub min_part_size: usize,
    pub max_part_size: usize,
    /// Fraction in `[0, 1]`. In general mode, the share of the crossing
    /// capacity `|E| * cap / 2` to fill; in realizable mode, the probability
    /// that a clique pair, a large clique, or a link receives crossings.
    pub density: f64,
    /// Maximum crossings per edge.
    pub cap: usize,
    pub links: usize,
    /// Only with `cap == 1`: keep crossing cliques in pairs of at most four
    /// vertices each, and let larger cliques cross only themselves.
    pub realizable: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            seed: 0,
            parts: 8,
            min_part_size: 1,
            max_part_size: 3,
            density: 0.3,
            cap: 2,
            links: 2,
            realizable: false,
        }
    }
}

const PPM: u64 = 1_000_000;

fn conflict(msg: impl Into<String>) -> GenError {
    GenError::ParamConflict(msg.into())
}

impl GenParams {
    fn check(&self) -> Result<u64, GenError> {
        if !(0.0..=1.0).contains(&self.density) {
            return Err(conflict(format!("density {} is outside [0, 1]", self.density)));
        }
        if self.min_part_size == 0 || self.min_part_size > self.max_part_size {
            return Err(conflict("part sizes need 1 <= min <= max"));
        }
        if self.max_part_size > MAX_PART_SIZE {
            return Err(conflict(format!("part sizes are limited to {MAX_PART_SIZE}")));
        }
        if self.cap == 1 && self.max_part_size > 6 {
            return Err(conflict("1-plane output allows cliques of at most 6 vertices"));
        }
        if self.realizable && self.cap != 1 {
            return Err(conflict("realizable output is only defined for cap = 1"));
        }
        if self.links > 0 && self.parts < 2 {
            return Err(conflict("links need at least two parts"));
        }
        Ok((self.density * PPM as f64).round() as u64)
    }
}

/// Uniform index in `0..n`.
fn below(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.random_range(0..n as u64) as usize
}

fn chance(rng: &mut ChaCha8Rng, ppm: u64) -> bool {
    rng.random_range(0..PPM) < ppm
}

struct Layout {
    builder: InstanceBuilder,
    parts: Vec<Vec<usize>>,
}

fn layout(params: &GenParams, rng: &mut ChaCha8Rng) -> Result<Layout, GenError> {
    let mut builder = InstanceBuilder::new(0);
    let mut part_of = Vec::new();
    let mut parts = Vec::with_capacity(params.parts);
    for p in 0..params.parts {
        let size = params.min_part_size + below(rng, params.max_part_size - params.min_part_size + 1);
        let first = builder.add_vertices(size);
        let vs: Vec<usize> = (first..first + size).collect();
        builder.part(&vs);
        part_of.extend(std::iter::repeat_n(p, size));
        parts.push(vs);
    }

    let n = part_of.len();
    let mut seen = HashSet::new();
    let mut placed = 0;
    let mut attempts = 0;
    while placed < params.links {
        attempts += 1;
        if attempts > 100 * params.links + 1000 {
            return Err(conflict(format!("could place only {placed} of {} links", params.links)));
        }
        let (u, v) = (below(rng, n), below(rng, n));
        if part_of[u] == part_of[v] || !seen.insert((u.min(v), u.max(v))) {
            continue;
        }
        builder.link(u, v);
        placed += 1;
    }
    Ok(Layout { builder, parts })
}

/// Crossing bookkeeping over a crossing-free base instance.
struct Crossings<'a> {
    base: &'a Instance,
    count: Vec<usize>,
    pairs: HashSet<(EdgeId, EdgeId)>,
    out: Vec<(EdgeId, EdgeId)>,
    cap: usize,
}

impl<'a> Crossings<'a> {
    fn new(base: &'a Instance, cap: usize) -> Self {
        Self {
            base,
            count: vec![0; base.graph().edge_count()],
            pairs: HashSet::new(),
            out: Vec::new(),
            cap,
        }
    }

    fn try_add(&mut self, a: EdgeId, b: EdgeId) -> bool {
        let g = self.base.graph();
        if a == b
            || g.edge(a).shares_endpoint(g.edge(b))
            || self.count[a.index()] >= self.cap
            || self.count[b.index()] >= self.cap
            || !self.pairs.insert((a.min(b), a.max(b)))
        {
            return false;
        }
        self.count[a.index()] += 1;
        self.count[b.index()] += 1;
        self.out.push((a, b));
        true
    }

    fn finish(self, mut builder: InstanceBuilder) -> Result<Instance, GenError> {
        let g = self.base.graph();
        for (a, b) in self.out {
            let (ea, eb) = (g.edge(a), g.edge(b));
            builder.cross((ea.u.0, ea.v.0), (eb.u.0, eb.v.0));
        }
        Ok(builder.build()?)
    }
}

/// A random instance satisfying every model invariant, with at most
/// `params.cap` crossings per edge.
pub fn random_instance(params: &GenParams) -> Result<Instance, GenError> {
    let ppm = params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let lay = layout(params, &mut rng)?;
    let base = lay.builder.build()?;
    let mut cr = Crossings::new(&base, params.cap);
    if params.realizable {
        realizable_crossings(&lay, &base, &mut cr, ppm, &mut rng);
    } else {
        uniform_crossings(&base, &mut cr, ppm, &mut rng)?;
    }
    cr.finish(lay.builder)
}

fn uniform_crossings(base: &Instance, cr: &mut Crossings<'_>, ppm: u64, rng: &mut ChaCha8Rng) -> Result<(), GenError> {
    let edges = base.graph().edge_count();
    let capacity = (edges * cr.cap / 2) as u64;
    let target = (capacity * ppm / PPM) as usize;
    let budget = 200 * target + 10_000;
    let mut attempts = 0;
    while cr.out.len() < target {
        attempts += 1;
        if attempts > budget {
            return Err(conflict(format!(
                "placed {} of {target} crossings; density unreachable under cap {}",
                cr.out.len(),
                cr.cap
            )));
        }
        let (a, b) = (EdgeId(below(rng, edges)), EdgeId(below(rng, edges)));
        cr.try_add(a, b);
    }
    Ok(())
}

fn realizable_crossings(lay: &Layout, base: &Instance, cr: &mut Crossings<'_>, ppm: u64, rng: &mut ChaCha8Rng) {
    let edges_of = |p: usize| base.clique_edges(crate::model::PartId(p));
    let mut self_crossed = vec![false; lay.parts.len()];

    // Cliques of four or more vertices may cross themselves.
    for (p, vs) in lay.parts.iter().enumerate() {
        if vs.len() < 4 || !chance(rng, ppm) {
            continue;
        }
        let own = edges_of(p);
        let want = 1 + below(rng, vs.len() - 3);
        let mut got = 0;
        for _ in 0..8 * want {
            if got == want {
                break;
            }
            if cr.try_add(own[below(rng, own.len())], own[below(rng, own.len())]) {
                got += 1;
            }
        }
        self_crossed[p] = got > 0;
    }

    // Remaining cliques of two to four vertices cross in pairs.
    let mut small: Vec<usize> = (0..lay.parts.len())
        .filter(|&p| (2..=4).contains(&lay.parts[p].len()) && !self_crossed[p])
        .collect();
    small.shuffle(rng);
    for pair in small.chunks_exact(2) {
        if !chance(rng, ppm) {
            continue;
        }
        let (ea, eb) = (edges_of(pair[0]), edges_of(pair[1]));
        let want = 1 + below(rng, 4);
        let mut got = 0;
        for _ in 0..8 * want {
            if got == want {
                break;
            }
            if cr.try_add(ea[below(rng, ea.len())], eb[below(rng, eb.len())]) {
                got += 1;
            }
        }
    }

    // Links cross arbitrary edges that are still free.
    let links: Vec<EdgeId> = base.link_edges().collect();
    let total = base.graph().edge_count();
    for &l in &links {
        if !chance(rng, ppm) {
            continue;
        }
        for _ in 0..8 {
            if cr.try_add(l, EdgeId(below(rng, total))) {
                break;
            }
        }
    }
}

/// A random formula whose clauses are triples of distinct variables and in
/// which every variable occurs. Variables are first dealt out once each in
/// random order; remaining slots are filled at random.
pub fn random_formula(seed: u64, nvars: usize, nclauses: usize) -> Result<Formula, ReductionError> {
    if nvars < 3 || 3 * nclauses < nvars {
        return Err(ReductionError::Underconstrained { nvars });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vars: Vec<usize> = (1..=nvars).collect();
    vars.shuffle(&mut rng);
    let mut clauses = vec![[0usize; 3]; nclauses];
    for (slot, &x) in vars.iter().enumerate() {
        clauses[slot / 3][slot % 3] = x;
    }
    for slot in nvars..3 * nclauses {
        let (c, k) = (slot / 3, slot % 3);
        loop {
            let x = 1 + below(&mut rng, nvars);
            if !clauses[c][..k].contains(&x) {
                clauses[c][k] = x;
                break;
            }
        }
    }
    clauses.shuffle(&mut rng);
    for clause in &mut clauses {
        clause.shuffle(&mut rng);
    }
    Formula::new(nvars, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::write_instance;

    #[test]
    fn deterministic() {
        let p = GenParams {
            seed: 42,
            parts: 20,
            ..GenParams::default()
        };
        let a = write_instance(&random_instance(&p).unwrap());
        let b = write_instance(&random_instance(&p).unwrap());
        assert_eq!(a, b);
        let other = write_instance(&random_instance(&GenParams { seed: 43, ..p }).unwrap());
        assert_ne!(a, other);
    }

    #[test]
    fn respects_cap() {
        for seed in 0..20 {
            let p = GenParams {
                seed,
                parts: 15,
                max_part_size: 5,
                cap: 1,
                density: 0.8,
                ..GenParams::default()
            };
            assert!(random_instance(&p).unwrap().max_crossings_per_edge() <= 1);
            let p3 = GenParams { cap: 3, ..p };
            assert!(random_instance(&p3).unwrap().max_crossings_per_edge() <= 3);
        }
    }

    #[test]
    fn param_conflicts() {
        let bad = [
            GenParams {
                density: 1.5,
                ..GenParams::default()
            },
            GenParams {
                cap: 1,
                max_part_size: 7,
                ..GenParams::default()
            },
            GenParams {
                realizable: true,
                cap: 2,
                ..GenParams::default()
            },
            // A lone triangle has no non-adjacent edge pair.
            GenParams {
                parts: 1,
                min_part_size: 3,
                links: 0,
                density: 1.0,
                ..GenParams::default()
            },
        ];
        for p in bad {
            assert!(matches!(random_instance(&p), Err(GenError::ParamConflict(_))), "{p:?}");
        }
    }

    #[test]
    fn formulas() {
        let f = random_formula(7, 3, 1).unwrap();
        let mut c = f.clauses()[0];
        c.sort();
        assert_eq!(c, [1, 2, 3]);
        assert_eq!(random_formula(9, 6, 4).unwrap(), random_formula(9, 6, 4).unwrap());
        for seed in 0..50 {
            let f = random_formula(seed, 5, 3).unwrap();
            assert!(f.occurrences().iter().all(|&k| k > 0));
        }
        assert_eq!(
            random_formula(0, 7, 2).unwrap_err(),
            ReductionError::Underconstrained { nvars: 7 }
        );
    }
}
