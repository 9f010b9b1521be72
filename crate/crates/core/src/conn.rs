//! Global minimum cuts of weighted undirected graphs and the recursive
//! connectivity decomposition built on them.

use num_traits::Zero;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Partition, Rat, WGraph};

/// Exact global minimum cut (no terminal constraint). Uses exhaustive
/// bipartition enumeration up to 12 vertices and Stoer-Wagner beyond; the
/// two agree on the overlap, which the tests exercise.
pub fn global_min_cut(g: &WGraph) -> Result<(Rat, VertexSet)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "global min cut needs at least 2 vertices".into(),
        ));
    }
    if g.components().len() > 1 {
        // any component against the rest is a zero cut
        let comp = &g.components()[0];
        return Ok((
            Rat::zero(),
            VertexSet::from_iter(n, comp.iter().copied()),
        ));
    }
    if n <= 12 {
        Ok(global_min_cut_exhaustive(g))
    } else {
        Ok(stoer_wagner(g))
    }
}

/// Brute-force over all 2^(n-1) bipartitions that keep vertex 0 on one side.
pub fn global_min_cut_exhaustive(g: &WGraph) -> (Rat, VertexSet) {
    let n = g.n();
    assert!((2..=16).contains(&n));
    let mut best: Option<(Rat, VertexSet)> = None;
    for mask in 1u64..(1 << (n - 1)) {
        // vertex n-1 fixed outside the side to halve the space
        let side = VertexSet::from_mask(n, mask);
        let w = g.bipartition_weight(&side);
        if best.as_ref().is_none_or(|(b, _)| w < *b) {
            best = Some((w, side));
        }
    }
    best.expect("n >= 2 so at least one bipartition exists")
}

/// Stoer-Wagner minimum cut via repeated maximum-adjacency orderings.
pub fn stoer_wagner(g: &WGraph) -> (Rat, VertexSet) {
    let n = g.n();
    let mut w = vec![vec![Rat::zero(); n]; n];
    for ((u, v), wt) in g.edges() {
        w[u][v] = wt;
        w[v][u] = wt;
    }
    // merged[i] = original vertices currently fused into i
    let mut merged: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<(Rat, Vec<usize>)> = None;

    while active.len() > 1 {
        // maximum adjacency search from the first active vertex
        let mut order = vec![active[0]];
        let mut weight_to: Vec<Rat> = vec![Rat::zero(); n];
        let mut in_a = vec![false; n];
        in_a[active[0]] = true;
        for &v in &active {
            if v != active[0] {
                weight_to[v] = w[active[0]][v];
            }
        }
        while order.len() < active.len() {
            let &next = active
                .iter()
                .filter(|&&v| !in_a[v])
                .max_by(|&&a, &&b| weight_to[a].cmp(&weight_to[b]))
                .expect("some vertex remains");
            in_a[next] = true;
            order.push(next);
            for &v in &active {
                if !in_a[v] {
                    let add = w[next][v];
                    weight_to[v] += add;
                }
            }
        }
        let t = *order.last().unwrap();
        let s = order[order.len() - 2];
        let cut_of_phase = weight_to[t];
        if best
            .as_ref()
            .is_none_or(|(b, _)| cut_of_phase < *b)
        {
            best = Some((cut_of_phase, merged[t].clone()));
        }
        // merge t into s
        let t_members = std::mem::take(&mut merged[t]);
        merged[s].extend(t_members);
        for &v in &active {
            if v != s && v != t {
                let add = w[t][v];
                w[s][v] += add;
                let add = w[v][t];
                w[v][s] += add;
            }
        }
        active.retain(|&v| v != t);
    }
    let (val, members) = best.expect("at least one phase ran");
    (val, VertexSet::from_iter(n, members))
}

/// Splits V into blocks whose induced subgraphs each have global min cut at
/// least `threshold` (singletons vacuously), by recursively cutting along
/// global minimum cuts below the threshold.
pub fn connectivity_decomposition(g: &WGraph, threshold: &Rat) -> Result<Partition> {
    if *threshold < Rat::zero() {
        return Err(Error::InvalidParameter(
            "threshold must be nonnegative".into(),
        ));
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![(0..g.n()).collect()];
    while let Some(verts) = stack.pop() {
        if verts.len() == 1 {
            blocks.push(verts);
            continue;
        }
        let sub = g.induced(&verts);
        // a disconnected piece always has a zero cut across components
        let comps = sub.components();
        if comps.len() > 1 && *threshold > Rat::zero() {
            for c in comps {
                stack.push(c.iter().map(|&i| verts[i]).collect());
            }
            continue;
        }
        let (val, side) = global_min_cut(&sub)?;
        if val >= *threshold {
            blocks.push(verts);
            continue;
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, &v) in verts.iter().enumerate() {
            if side.contains(i) {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        stack.push(a);
        stack.push(b);
    }
    Partition::new(g.n(), blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rat;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn wg(n: usize, edges: &[(usize, usize, i128)]) -> WGraph {
        let mut g = WGraph::new(n);
        for &(u, v, w) in edges {
            g.add_weight(u, v, Rat::from_integer(w));
        }
        g
    }

    #[test]
    fn single_edge() {
        let g = wg(2, &[(0, 1, 5)]);
        let (val, _) = global_min_cut(&g).unwrap();
        assert_eq!(val, Rat::from_integer(5));
    }

    #[test]
    fn cycle_min_cut_is_two() {
        for n in 3..8 {
            let mut g = WGraph::new(n);
            for v in 0..n {
                g.add_weight(v, (v + 1) % n, Rat::from_integer(1));
            }
            let (val, _) = global_min_cut(&g).unwrap();
            assert_eq!(val, Rat::from_integer(2), "C_{n}");
        }
    }

    #[test]
    fn stoer_wagner_matches_exhaustive_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(2..=9);
            let mut g = WGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.55) {
                        g.add_weight(u, v, Rat::from_integer(rng.gen_range(1..=6)));
                    }
                }
            }
            if g.components().len() > 1 {
                continue;
            }
            let (ex, _) = global_min_cut_exhaustive(&g);
            let (sw, sw_side) = stoer_wagner(&g);
            assert_eq!(ex, sw);
            assert_eq!(g.bipartition_weight(&sw_side), sw);
        }
    }

    #[test]
    fn decomposition_splits_bridged_triangles() {
        // two triangles joined by one edge
        let g = wg(
            6,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (0, 2, 1),
                (3, 4, 1),
                (4, 5, 1),
                (3, 5, 1),
                (2, 3, 1),
            ],
        );
        let p = connectivity_decomposition(&g, &rat(2, 1)).unwrap();
        let mut blocks: Vec<Vec<usize>> = p.blocks().to_vec();
        blocks.sort();
        assert_eq!(blocks, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn decomposition_single_edge_threshold_two() {
        let g = wg(2, &[(0, 1, 1)]);
        let p = connectivity_decomposition(&g, &rat(2, 1)).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn decomposition_threshold_zero_is_one_block() {
        let g = wg(4, &[(0, 1, 1)]);
        let p = connectivity_decomposition(&g, &Rat::zero()).unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn decomposition_postconditions_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(3..=10);
            let mut g = WGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_weight(u, v, Rat::from_integer(rng.gen_range(1..=3)));
                    }
                }
            }
            let threshold = rat(rng.gen_range(1..=4), 1);
            let p = connectivity_decomposition(&g, &threshold).unwrap();
            // every block meets the connectivity bar
            for b in p.blocks() {
                if b.len() >= 2 {
                    let (val, _) = global_min_cut(&g.induced(b)).unwrap();
                    assert!(val >= threshold);
                }
            }
            // contracted total weight obeys the small-connectivity bound
            let id = p.block_of();
            let crossing: Rat = g
                .edges()
                .filter(|&((u, v), _)| id[u] != id[v])
                .fold(Rat::zero(), |a, (_, w)| a + w);
            assert!(crossing <= threshold * Rat::from_integer((n as i128) - 1));
            // the contracted graph is below the threshold wherever it can be split
            if p.len() >= 2 {
                let mut cg = WGraph::new(p.len());
                for ((u, v), w) in g.edges() {
                    if id[u] != id[v] {
                        cg.add_weight(id[u], id[v], w);
                    }
                }
                if cg.m() > 0 {
                    let (val, _) = global_min_cut(&cg).unwrap();
                    assert!(val <= threshold);
                }
            }
        }
    }
}
