//! Shared fixtures and independent oracles for the integration tests.
//!
//! Pairwise checks of isomorphism-invariant relations run on one
//! representative per isomorphism class, plus every labeled graph against
//! its own representative. Since every relation checked this way is an
//! equivalence, that covers all labeled pairs.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;

use ctrl_iso::walk::is_controllable;
use ctrl_iso::{enumerate_graphs, Graph, Permutation, SplitMix64};

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

pub fn c6_k1() -> Graph {
    Graph::cycle(6).unwrap().disjoint_union(&Graph::empty(1).unwrap())
}

pub fn spider() -> Graph {
    Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap()
}

pub fn two_triangles() -> Graph {
    let k3 = Graph::complete(3).unwrap();
    k3.disjoint_union(&k3)
}

fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

pub fn edge_mask(g: &Graph) -> u64 {
    g.edges().iter().fold(0, |m, &(i, j)| m | 1 << pair_index(i, j))
}

pub fn from_mask(n: usize, mask: u64) -> Graph {
    Graph::from_fn(n, |i, j| mask >> pair_index(i, j) & 1 == 1).unwrap()
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// Least edge mask over all relabelings.
pub fn canonical_mask(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let edges = g.edges();
    perms
        .iter()
        .map(|p| edges.iter().fold(0u64, |m, &(i, j)| m | 1 << pair_index(p[i], p[j])))
        .min()
        .unwrap_or(0)
}

pub struct IsoClass {
    pub rep: Graph,
    pub members: Vec<Graph>,
}

fn build_classes(n: usize) -> Vec<IsoClass> {
    let perms = all_permutations(n);
    let mut classes: BTreeMap<u64, Vec<Graph>> = BTreeMap::new();
    for g in enumerate_graphs(n, false).unwrap() {
        classes.entry(canonical_mask(&g, &perms)).or_default().push(g);
    }
    classes
        .into_iter()
        .map(|(mask, members)| IsoClass {
            rep: from_mask(n, mask),
            members,
        })
        .collect()
}

/// Isomorphism classes of all graphs on `n ≤ 6` vertices with their labeled
/// members, ordered by canonical mask.
pub fn classes(n: usize) -> &'static [IsoClass] {
    static CACHE: OnceLock<Vec<Vec<IsoClass>>> = OnceLock::new();
    assert!((1..=6).contains(&n));
    &CACHE.get_or_init(|| (1..=6).map(build_classes).collect())[n - 1]
}

/// Representatives of every class on `n ≤ 6` vertices.
pub fn reps(n: usize) -> Vec<&'static Graph> {
    classes(n).iter().map(|c| &c.rep).collect()
}

/// Representatives of the controllable classes on `n ≤ 7` vertices. Order
/// seven is reached by adding a vertex to every six-vertex representative
/// in all possible ways.
pub fn controllable_reps(n: usize) -> &'static [Graph] {
    static CACHE: OnceLock<Vec<Vec<Graph>>> = OnceLock::new();
    assert!((1..=7).contains(&n));
    &CACHE.get_or_init(|| {
        let mut out: Vec<Vec<Graph>> = (1..=6)
            .map(|m| {
                classes(m)
                    .iter()
                    .filter(|c| is_controllable(&c.rep))
                    .map(|c| c.rep.clone())
                    .collect()
            })
            .collect();
        let perms = all_permutations(7);
        let mut seven = BTreeMap::new();
        for base in reps(6) {
            for subset in 0u32..64 {
                let g = Graph::from_fn(7, |i, j| {
                    if j == 6 {
                        subset >> i & 1 == 1
                    } else {
                        base.has_edge(i, j)
                    }
                })
                .unwrap();
                if is_controllable(&g) {
                    seven.entry(canonical_mask(&g, &perms)).or_insert(());
                }
            }
        }
        out.push(seven.into_keys().map(|m| from_mask(7, m)).collect());
        out
    })[n - 1]
}

pub fn relabel(g: &Graph, rng: &mut SplitMix64) -> (Graph, Permutation) {
    let p = Permutation::random(g.order(), rng);
    (g.apply_permutation(&p).unwrap(), p)
}

/// Controllable graph on `n` vertices from consecutive seeds.
pub fn random_controllable(n: usize, seed: &mut u64) -> Graph {
    loop {
        let g = ctrl_iso::random_graph(n, *seed).unwrap();
        *seed += 1;
        if is_controllable(&g) {
            return g;
        }
    }
}

/// `det(tI - A)` by the permutation expansion, low degree first.
pub fn cofactor_char_poly(g: &Graph) -> Vec<i64> {
    let n = g.order();
    let mut total = vec![0i64; n + 1];
    for p in (0..n).permutations(n) {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        // product of (t·δ - a) entries along the permutation
        let mut term = vec![1i64];
        for (i, &pi) in p.iter().enumerate() {
            let entry: Vec<i64> = if i == pi {
                vec![0, 1]
            } else if g.has_edge(i, pi) {
                vec![-1]
            } else {
                vec![0]
            };
            let mut next = vec![0i64; term.len() + entry.len() - 1];
            for (a, x) in term.iter().enumerate() {
                for (b, y) in entry.iter().enumerate() {
                    next[a + b] += x * y;
                }
            }
            term = next;
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        for (k, c) in term.iter().enumerate() {
            total[k] += sign * c;
        }
    }
    total
}

/// Walks of length `r` starting at each vertex, by explicit enumeration.
pub fn enumerate_walks_from(g: &Graph, r: usize) -> Vec<u64> {
    fn count(g: &Graph, v: usize, left: usize) -> u64 {
        if left == 0 {
            1
        } else {
            g.neighbors(v).iter().map(|&w| count(g, w, left - 1)).sum()
        }
    }
    (0..g.order()).map(|v| count(g, v, r)).collect()
}

pub fn big(v: u64) -> BigInt {
    BigInt::from(v)
}
