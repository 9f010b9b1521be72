//! Contraction-based minimum s-t cut for mixed graphs, parameterized over
//! an edge-discovery backend so one control flow serves both access models.
//!
//! The routine sparsifies the undirected part, computes a maximum flow of
//! the sparsifier joined with the explicit directed part, decomposes the
//! flow-free leftover into well-connected blocks, learns only the edges
//! crossing the blocks, and solves the contracted instance exactly. Every
//! minimum s-t cut survives the contraction whenever the sparsifier met
//! its quality bound.

use num_traits::Zero;
use std::collections::BTreeMap;

use crate::bitset::VertexSet;
use crate::conn::connectivity_decomposition;
use crate::error::{Error, Result};
use crate::flow::{cancel_cycles, min_cut_contracted, scaled_network};
use crate::graph::{ContractedMixed, Cut, Partition, Rat, WGraph, WeightedDigraph};
use crate::oracle::{learn_contracted, QuerySurface};
use crate::sparsify::{rat_from_f64_ceil, sparsify_by_queries, sparsify_exact, SparseGraph};

/// Largest admissible quality parameter: the correctness argument needs
/// eps strictly inside (0, 1/5), so formula values are clamped to 0.199.
pub fn clamp_eps(raw: f64) -> Rat {
    let r = rat_from_f64_ceil(raw.max(1e-9));
    r.min(Rat::new(199, 1000))
}

/// eps = (n nu)^(-1/6), clamped into the admissible window.
pub fn choose_eps_cut_query(n: usize, nu_estimate: u64) -> Rat {
    if nu_estimate == 0 {
        // callers short-circuit the trivial cut before reaching the routine
        return Rat::new(199, 1000);
    }
    clamp_eps(((n as f64) * (nu_estimate as f64)).powf(-1.0 / 6.0))
}

/// eps = f^(-1/3), clamped into the admissible window.
pub fn choose_eps_comm(f: u64) -> Rat {
    if f == 0 {
        return Rat::new(199, 1000);
    }
    clamp_eps((f as f64).powf(-1.0 / 3.0))
}

/// Model-specific access to the undirected part of the mixed graph. The
/// directed part is explicit and free.
pub trait RswAccess {
    fn n(&self) -> usize;
    fn s(&self) -> usize;
    fn t(&self) -> usize;
    fn directed(&self) -> WeightedDigraph;
    /// An eps-cut sparsifier of the undirected part.
    fn sparsifier(&mut self, eps: &Rat) -> Result<SparseGraph>;
    /// All undirected-part edges crossing the partition, with ground truth
    /// multiplicity (each simple edge once).
    fn discover_crossing(&mut self, partition: &Partition) -> Result<Vec<(usize, usize)>>;
}

/// Cut-query backend: the undirected part is behind a (possibly masked)
/// query surface.
pub struct CutQueryAccess<'a, S: QuerySurface + ?Sized> {
    pub surface: &'a mut S,
    pub f: WeightedDigraph,
    pub exact_sparsifier: bool,
    pub seed: u64,
}

impl<S: QuerySurface + ?Sized> RswAccess for CutQueryAccess<'_, S> {
    fn n(&self) -> usize {
        self.surface.n()
    }
    fn s(&self) -> usize {
        self.surface.s()
    }
    fn t(&self) -> usize {
        self.surface.t()
    }
    fn directed(&self) -> WeightedDigraph {
        self.f.clone()
    }

    fn sparsifier(&mut self, eps: &Rat) -> Result<SparseGraph> {
        let sp = if self.exact_sparsifier {
            sparsify_exact(self.surface, "rsw/sparsifier")?
        } else {
            sparsify_by_queries(self.surface, eps, self.seed, "rsw/sparsifier")?
        };
        Ok(sp.sparse)
    }

    fn discover_crossing(&mut self, partition: &Partition) -> Result<Vec<(usize, usize)>> {
        learn_contracted(self.surface, partition, "rsw/learn")
    }
}

/// Per-run diagnostics for the report.
#[derive(Clone, Debug)]
pub struct RswReport {
    pub eps: Rat,
    pub nu_h: Rat,
    pub blocks: usize,
    pub learned_edges: usize,
    pub contracted_leftover_weight: Rat,
    pub flow_total_weight: u64,
}

#[derive(Clone, Debug)]
pub struct RswRun {
    pub value: u64,
    pub cut: Cut,
    pub partition: Partition,
    pub report: RswReport,
    /// The sparsifier used, for post-hoc quality verification.
    pub sparsifier: SparseGraph,
}

/// Minimum s-t cut of the mixed graph (G, F), touching G only through the
/// backend. Correct whenever the sparsifier met its (1 +- eps) bound.
pub fn rsw_min_cut<A: RswAccess>(access: &mut A, eps: &Rat) -> Result<RswRun> {
    if *eps <= Rat::zero() || *eps >= Rat::new(1, 5) {
        return Err(Error::InvalidParameter(
            "eps must lie strictly inside (0, 1/5)".into(),
        ));
    }
    let (n, s, t) = (access.n(), access.s(), access.t());
    let f_part = access.directed();
    let sparse = access.sparsifier(eps)?;

    // max flow of H = G' u F on the scaled integer network, tracking which
    // capacity belongs to which host edge
    let (mut net, scale) = scaled_network(&sparse.graph, &f_part, s, t)?;
    let und_edges: Vec<(usize, usize)> = sparse.graph.edges().map(|(e, _)| e).collect();
    let nu_scaled = net.max_flow();
    let nu_h = Rat::new(nu_scaled as i128, scale);
    if nu_h.is_zero() {
        // callers short-circuit genuinely zero instances before this point,
        // so a zero here means the sparsifier missed every s-t path
        return Err(Error::SparsifierUnusable);
    }

    // non-circular flow multiset, directed-part usage attributed first
    let mut flow_map: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (id, &(u, v)) in und_edges.iter().enumerate() {
        let fl = net.edge_flow(id);
        match fl.cmp(&0) {
            std::cmp::Ordering::Greater => {
                *flow_map.entry((u, v)).or_insert(0) += fl as u64;
            }
            std::cmp::Ordering::Less => {
                *flow_map.entry((v, u)).or_insert(0) += (-fl) as u64;
            }
            std::cmp::Ordering::Equal => {}
        }
    }
    let dir_arcs: Vec<((usize, usize), u64)> = f_part.arcs().collect();
    for (id, &((u, v), _)) in dir_arcs.iter().enumerate() {
        let fl = net.edge_flow(und_edges.len() + id);
        debug_assert!(fl >= 0);
        if fl > 0 {
            *flow_map.entry((u, v)).or_insert(0) += fl as u64;
        }
    }
    cancel_cycles(&mut flow_map, n);

    // flow-size sanity: w(flow) <= n sqrt(2 f W) for non-circular flows
    let flow_total: u64 = flow_map.values().sum();
    let w_max = flow_map.values().copied().max().unwrap_or(1);
    debug_assert!(
        flow_total as f64 <= n as f64 * (2.0 * nu_scaled as f64 * w_max as f64).sqrt() + 1e-6
    );

    // K = leftover undirected weight after removing the flow's usage of the
    // sparsifier; consists solely of undirected edges
    let mut usage: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (&(u, v), &c) in &flow_map {
        let key = (u.min(v), u.max(v));
        let dir_budget = f_part.weight(u, v) * scale as u64;
        // attribute to the directed copy first, the rest came from G'
        let from_und = c.saturating_sub(dir_budget);
        *usage.entry(key).or_insert(0) += from_und;
    }
    let mut k_graph = WGraph::new(n);
    for &(u, v) in &und_edges {
        let cap = (sparse.graph.weight(u, v) * Rat::from_integer(scale)).to_integer() as u64;
        let used = usage.get(&(u, v)).copied().unwrap_or(0).min(cap);
        let leftover = cap - used;
        if leftover > 0 {
            k_graph.add_weight(u, v, Rat::new(leftover as i128, scale));
        }
    }

    // decompose K into blocks of connectivity at least 3 eps nu(H)
    let threshold = Rat::from_integer(3) * *eps * nu_h;
    let partition = connectivity_decomposition(&k_graph, &threshold)?;
    let id = partition.block_of();
    if id[s] == id[t] {
        return Err(Error::TerminalsInOneBlock);
    }
    let contracted_leftover: Rat = k_graph
        .edges()
        .filter(|&((u, v), _)| id[u] != id[v])
        .fold(Rat::zero(), |a, (_, w)| a + w);
    debug_assert!(
        contracted_leftover <= threshold * Rat::from_integer(n as i128),
        "contracted leftover exceeds the small-connectivity bound"
    );

    // learn the real crossing edges and solve the contracted instance
    let learned = access.discover_crossing(&partition)?;
    let mut und: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (u, v) in &learned {
        let (a, b) = (id[*u], id[*v]);
        debug_assert_ne!(a, b, "backend returned an intra-block edge");
        *und.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    }
    let mut dir: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for ((u, v), w) in f_part.arcs() {
        let (a, b) = (id[u], id[v]);
        if a != b {
            *dir.entry((a, b)).or_insert(0) += w;
        }
    }
    let cm = ContractedMixed {
        z: partition.len(),
        s_block: id[s],
        t_block: id[t],
        und,
        dir,
        partition: partition.clone(),
    };
    let (value, t_blocks) = min_cut_contracted(&cm);
    let cut = cm.lift_cut(&t_blocks, s, t)?;
    Ok(RswRun {
        value,
        cut,
        partition: partition.clone(),
        report: RswReport {
            eps: *eps,
            nu_h,
            blocks: partition.len(),
            learned_edges: learned.len(),
            contracted_leftover_weight: contracted_leftover,
            flow_total_weight: flow_total,
        },
        sparsifier: sparse,
    })
}

/// Convenience: t-side block set of a vertex cut under a partition.
pub fn block_cut(partition: &Partition, cut: &Cut) -> Option<VertexSet> {
    let mut side = VertexSet::empty(partition.len());
    for (i, b) in partition.blocks().iter().enumerate() {
        let in_t = cut.in_t(b[0]);
        if b.iter().any(|&v| cut.in_t(v) != in_t) {
            return None;
        }
        if in_t {
            side.insert(i);
        }
    }
    Some(side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{max_flow_value, min_cut};
    use crate::graph::{cut_weight_mixed, Graph, MixedGraph};
    use crate::oracle::CutOracle;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn run_cut_query(g: Graph, f: WeightedDigraph, eps: &Rat) -> Result<RswRun> {
        let mut oracle = CutOracle::new(g);
        let mut access = CutQueryAccess {
            surface: &mut oracle,
            f,
            exact_sparsifier: true,
            seed: 3,
        };
        rsw_min_cut(&mut access, eps)
    }

    #[test]
    fn eps_choices_clamp() {
        assert_eq!(choose_eps_cut_query(8, 8), Rat::new(199, 1000));
        let e = choose_eps_cut_query(100, 10_000);
        assert!(e < Rat::new(1, 5) && e > Rat::zero());
        assert_eq!(choose_eps_comm(8), Rat::new(199, 1000));
        // f = 125 gives 0.2 raw, above the window, so it clamps too
        assert_eq!(choose_eps_comm(125), Rat::new(199, 1000));
        // f = 1000 gives 0.1 up to float rounding
        let e = choose_eps_comm(1000);
        assert!(e >= Rat::new(1, 10) && e <= Rat::new(100000100, 1_000_000_000));
    }

    #[test]
    fn path_graph_bottleneck() {
        let g = Graph::with_edges(5, 0, 4, (0..4).map(|i| (i, i + 1)).collect::<Vec<_>>())
            .unwrap();
        let f = WeightedDigraph::new(5);
        let run = run_cut_query(g, f, &Rat::new(1, 10)).unwrap();
        assert_eq!(run.value, 1);
    }

    #[test]
    fn figure_residual_pair_value_one() {
        // undirected leftovers of the running example with its 2-flow,
        // plus the reversal arcs at weight 2
        let mut f = WeightedDigraph::new(8);
        for &(u, v) in &[(1, 0), (3, 0), (5, 1), (6, 3), (4, 5), (5, 6), (7, 4), (7, 5)] {
            f.add_arc(u, v, 2).unwrap();
        }
        let reference = {
            let m = MixedGraph::new(
                Graph::with_edges(8, 0, 7, vec![(0, 2), (2, 5), (6, 7)]).unwrap(),
                f.clone(),
            )
            .unwrap();
            max_flow_value(&m)
        };
        assert_eq!(reference, 1);
        let run = run_cut_query(
            Graph::with_edges(8, 0, 7, vec![(0, 2), (2, 5), (6, 7)]).unwrap(),
            f,
            &Rat::new(19, 100),
        )
        .unwrap();
        assert_eq!(run.value, 1);
    }

    #[test]
    fn random_mixed_matches_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let mut done = 0;
        while done < 25 {
            let n = rng.gen_range(4..=10);
            let mut g = Graph::new(n, 0, n - 1).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let mut f = WeightedDigraph::new(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.1) {
                        let _ = f.add_arc(u, v, rng.gen_range(1..=2));
                    }
                }
            }
            let mixed = MixedGraph::new(g.clone(), f.clone()).unwrap();
            let (expect, _) = min_cut(&mixed).unwrap();
            if expect == 0 {
                continue;
            }
            let run = run_cut_query(g, f, &Rat::new(19, 100)).unwrap();
            assert_eq!(run.value, expect);
            assert_eq!(cut_weight_mixed(&mixed, &run.cut).unwrap(), expect);
            done += 1;
        }
    }

    #[test]
    fn min_cuts_survive_contraction() {
        use crate::graph::all_st_cuts;
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        let mut done = 0;
        while done < 15 {
            let n = rng.gen_range(4..=9);
            let mut g = Graph::new(n, 0, n - 1).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let mixed = MixedGraph::undirected_only(g.clone());
            let (expect, _) = min_cut(&mixed).unwrap();
            if expect == 0 {
                continue;
            }
            let mut oracle = CutOracle::new(g);
            let mut access = CutQueryAccess {
                surface: &mut oracle,
                f: WeightedDigraph::new(n),
                exact_sparsifier: true,
                seed: 3,
            };
            let run = rsw_min_cut(&mut access, &Rat::new(19, 100)).unwrap();
            assert_eq!(run.value, expect);
            // no block of the computed partition is split by any min cut
            for cut in all_st_cuts(n, 0, n - 1) {
                if cut_weight_mixed(&mixed, &cut).unwrap() == expect {
                    assert!(
                        run.partition.respected_by(&cut),
                        "a minimum cut splits a contraction block"
                    );
                }
            }
            done += 1;
        }
    }
}
