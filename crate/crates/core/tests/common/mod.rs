//! Brute-force reference and small instance builders shared by the tests.
#![allow(dead_code)]

use std::collections::HashSet;

use cliques2paths::model::{EdgeId, PartId, PathChoice, VertexId};
use cliques2paths::{Instance, InstanceBuilder, Solution};

/// Orders of `0..n` with the first entry below the last; `[[0]]` for `n = 1`.
pub fn half_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            if prefix.len() < 2 || prefix[0] < prefix[prefix.len() - 1] {
                out.push(prefix.clone());
            }
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn key(a: VertexId, b: VertexId) -> (usize, usize) {
    (a.0.min(b.0), a.0.max(b.0))
}

/// Every path system of the Cartesian product that leaves no crossing
/// between kept edges, in product order (first part varies slowest).
/// Single-vertex parts get no entry, as in the solvers' output.
pub fn brute_solutions(inst: &Instance) -> Vec<Solution> {
    let parts: Vec<Vec<VertexId>> = inst.partition().parts().to_vec();
    let domains: Vec<Vec<Vec<VertexId>>> = parts
        .iter()
        .map(|p| {
            half_permutations(p.len())
                .into_iter()
                .map(|o| o.iter().map(|&i| p[i]).collect())
                .collect()
        })
        .collect();
    let g = inst.graph();
    let mut out = Vec::new();
    let mut idx = vec![0usize; parts.len()];
    loop {
        let mut kept: HashSet<(usize, usize)> = HashSet::new();
        for (d, &i) in domains.iter().zip(&idx) {
            for w in d[i].windows(2) {
                kept.insert(key(w[0], w[1]));
            }
        }
        let alive = |e: EdgeId| {
            let edge = g.edge(e);
            let same = inst.partition().part_of(edge.u) == inst.partition().part_of(edge.v);
            !same || kept.contains(&key(edge.u, edge.v))
        };
        if g.crossings().iter().all(|&(a, b)| !(alive(a) && alive(b))) {
            out.push(Solution::new(
                domains
                    .iter()
                    .zip(&idx)
                    .enumerate()
                    .filter(|(_, (d, &i))| d[i].len() > 1)
                    .map(|(p, (d, &i))| PathChoice::new(PartId(p), d[i].clone()))
                    .collect(),
            ));
        }
        // Odometer, last part fastest.
        let mut k = parts.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < domains[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Parts of the given sizes on consecutive vertices, links `(u, v)` taken
/// modulo `n` (skipped when inside one part or repeated) and crossings
/// `(i, j)` taken modulo `|E|` (skipped when adjacent, repeated, or when an
/// edge would exceed `cap` crossings).
pub fn small_instance(sizes: &[usize], links: &[(usize, usize)], picks: &[(usize, usize)], cap: usize) -> Instance {
    let mut b = InstanceBuilder::new(0);
    let mut part_of = Vec::new();
    for (p, &s) in sizes.iter().enumerate() {
        let first = b.add_vertices(s);
        b.part(&(first..first + s).collect::<Vec<_>>());
        part_of.extend(std::iter::repeat_n(p, s));
    }
    let n = part_of.len();
    let mut seen = HashSet::new();
    for &(u, v) in links {
        let (u, v) = (u % n, v % n);
        if part_of[u] != part_of[v] && seen.insert((u.min(v), u.max(v))) {
            b.link(u, v);
        }
    }
    let base = b.build().unwrap();
    let g = base.graph();
    let m = g.edge_count();
    if m < 2 {
        return base;
    }
    let mut count = vec![0; m];
    let mut pairs = HashSet::new();
    for &(i, j) in picks {
        let (i, j) = (i % m, j % m);
        let (ei, ej) = (g.edges()[i], g.edges()[j]);
        if i == j
            || ei.shares_endpoint(&ej)
            || count[i] >= cap
            || count[j] >= cap
            || !pairs.insert((i.min(j), i.max(j)))
        {
            continue;
        }
        count[i] += 1;
        count[j] += 1;
        b.cross((ei.u.0, ei.v.0), (ej.u.0, ej.v.0));
    }
    b.build().unwrap()
}
