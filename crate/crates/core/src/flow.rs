//! Exact integer max-flow / min-cut on mixed graphs, decomposition of flows
//! into unit s-t paths, cycle cancellation, and residual graphs.

use std::collections::BTreeMap;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{
    cut_weight_graph, cut_weight_mixed, ContractedMixed, Cut, Graph, MixedGraph, Rat,
    WeightedDigraph, WGraph,
};

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: u64,
    init: u64,
    rev: usize,
}

/// Integer-capacity flow network solved with Dinic's algorithm. Undirected
/// edges become a mutually-reverse arc pair so cancellation is automatic.
#[derive(Clone, Debug)]
pub struct Network {
    n: usize,
    s: usize,
    t: usize,
    head: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
    // indices of the forward arcs in insertion order, with their tails
    tails: Vec<usize>,
}

impl Network {
    pub fn new(n: usize, s: usize, t: usize) -> Self {
        Network {
            n,
            s,
            t,
            head: vec![Vec::new(); n],
            arcs: Vec::new(),
            tails: Vec::new(),
        }
    }

    pub fn add_directed(&mut self, u: usize, v: usize, cap: u64) -> usize {
        let a = self.arcs.len();
        self.arcs.push(Arc {
            to: v,
            cap,
            init: cap,
            rev: a + 1,
        });
        self.arcs.push(Arc {
            to: u,
            cap: 0,
            init: 0,
            rev: a,
        });
        self.head[u].push(a);
        self.head[v].push(a + 1);
        self.tails.push(u);
        self.tails.push(v);
        a / 2
    }

    pub fn add_undirected(&mut self, u: usize, v: usize, cap: u64) -> usize {
        let a = self.arcs.len();
        self.arcs.push(Arc {
            to: v,
            cap,
            init: cap,
            rev: a + 1,
        });
        self.arcs.push(Arc {
            to: u,
            cap,
            init: cap,
            rev: a,
        });
        self.head[u].push(a);
        self.head[v].push(a + 1);
        self.tails.push(u);
        self.tails.push(v);
        a / 2
    }

    /// Signed net flow through the edge with the given insertion id:
    /// positive means from u to v as inserted, negative (undirected edges
    /// only) the other way.
    pub fn edge_flow(&self, id: usize) -> i64 {
        let a = &self.arcs[2 * id];
        a.init as i64 - a.cap as i64
    }

    pub fn from_mixed(m: &MixedGraph) -> Self {
        let mut net = Network::new(m.n(), m.s(), m.t());
        for (u, v) in m.g.edges() {
            net.add_undirected(u, v, 1);
        }
        for ((u, v), w) in m.f.arcs() {
            net.add_directed(u, v, w);
        }
        net
    }

    fn bfs_levels(&self) -> Option<Vec<i32>> {
        let mut level = vec![-1i32; self.n];
        level[self.s] = 0;
        let mut queue = std::collections::VecDeque::from([self.s]);
        while let Some(v) = queue.pop_front() {
            for &ai in &self.head[v] {
                let a = &self.arcs[ai];
                if a.cap > 0 && level[a.to] < 0 {
                    level[a.to] = level[v] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        if level[self.t] >= 0 {
            Some(level)
        } else {
            None
        }
    }

    fn dfs_push(&mut self, v: usize, upto: u64, level: &[i32], iter: &mut [usize]) -> u64 {
        if v == self.t {
            return upto;
        }
        while iter[v] < self.head[v].len() {
            let ai = self.head[v][iter[v]];
            let (to, cap) = (self.arcs[ai].to, self.arcs[ai].cap);
            if cap > 0 && level[to] == level[v] + 1 {
                let pushed = self.dfs_push(to, upto.min(cap), level, iter);
                if pushed > 0 {
                    self.arcs[ai].cap -= pushed;
                    let rev = self.arcs[ai].rev;
                    self.arcs[rev].cap += pushed;
                    return pushed;
                }
            }
            iter[v] += 1;
        }
        0
    }

    pub fn max_flow(&mut self) -> u64 {
        let mut total = 0u64;
        while let Some(level) = self.bfs_levels() {
            let mut iter = vec![0usize; self.n];
            loop {
                let pushed = self.dfs_push(self.s, u64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }

    /// Net positive flow on every constructed arc, as an ordered-pair
    /// multimap. For an undirected pair only one direction can be positive.
    pub fn net_flows(&self) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for (ai, arc) in self.arcs.iter().enumerate() {
            // positive net flow shows up as the reverse arc having gained cap
            let rev = &self.arcs[arc.rev];
            let _ = rev;
            if arc.init > arc.cap {
                let u = self.tails[ai];
                *out.entry((u, arc.to)).or_insert(0) += arc.init - arc.cap;
            }
        }
        out
    }

    /// Vertices reachable from s in the final residual network.
    pub fn residual_source_side(&self) -> VertexSet {
        let mut seen = VertexSet::singleton(self.n, self.s);
        let mut stack = vec![self.s];
        while let Some(v) = stack.pop() {
            for &ai in &self.head[v] {
                let a = &self.arcs[ai];
                if a.cap > 0 && !seen.contains(a.to) {
                    seen.insert(a.to);
                    stack.push(a.to);
                }
            }
        }
        seen
    }
}

/// A flow written as edge-disjoint directed unit s-t paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowDecomposition {
    pub paths: Vec<Vec<usize>>,
}

impl FlowDecomposition {
    pub fn empty() -> Self {
        FlowDecomposition { paths: Vec::new() }
    }

    pub fn value(&self) -> u64 {
        self.paths.len() as u64
    }

    /// Directed edge multiset underlying the paths.
    pub fn arc_multiset(&self) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for p in &self.paths {
            for w in p.windows(2) {
                *out.entry((w[0], w[1])).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn arc_count(&self) -> u64 {
        self.paths.iter().map(|p| (p.len() - 1) as u64).sum()
    }

    /// Undirected edge set touched by the flow. Errors if some undirected
    /// pair is used more than once.
    pub fn undirected_edges(&self) -> Result<Vec<(usize, usize)>> {
        let mut seen = std::collections::BTreeSet::new();
        for p in &self.paths {
            for w in p.windows(2) {
                let e = if w[0] < w[1] {
                    (w[0], w[1])
                } else {
                    (w[1], w[0])
                };
                if !seen.insert(e) {
                    return Err(Error::InfeasibleFlow);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// CSV debug form: one row per unit path, vertices joined by `-`.
    pub fn paths_csv(&self) -> String {
        let mut out = String::from("path\n");
        for p in &self.paths {
            let row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join("-"));
            out.push('\n');
        }
        out
    }

    /// As an explicit directed graph with the given arc weight.
    pub fn as_digraph(&self, n: usize, weight: u64) -> WeightedDigraph {
        let mut f = WeightedDigraph::new(n);
        for ((u, v), c) in self.arc_multiset() {
            f.add_arc(u, v, c * weight).expect("valid flow arcs");
        }
        f
    }

    /// Checks path structure against an undirected host graph: every arc is
    /// a host edge, each host edge carries at most one unit, paths run s->t
    /// without repeating edges.
    pub fn validate_unit(&self, g: &Graph) -> Result<()> {
        let mut used = std::collections::BTreeSet::new();
        for p in &self.paths {
            if p.first() != Some(&g.s()) || p.last() != Some(&g.t()) {
                return Err(Error::InfeasibleFlow);
            }
            for w in p.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(Error::FlowNotSubgraph);
                }
                let e = if w[0] < w[1] {
                    (w[0], w[1])
                } else {
                    (w[1], w[0])
                };
                if !used.insert(e) {
                    return Err(Error::InfeasibleFlow);
                }
            }
        }
        Ok(())
    }
}

/// Subtracts directed cycles from an arc multiset until none remain.
pub fn cancel_cycles(flows: &mut BTreeMap<(usize, usize), u64>, n: usize) {
    loop {
        // look for any directed cycle among arcs with remaining flow
        let mut adj = vec![Vec::new(); n];
        for (&(u, v), &c) in flows.iter() {
            if c > 0 {
                adj[u].push(v);
            }
        }
        let mut color = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        let mut cycle: Option<(usize, usize)> = None;
        'outer: for start in 0..n {
            if color[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = 1;
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < adj[v].len() {
                    let u = adj[v][*i];
                    *i += 1;
                    if color[u] == 0 {
                        color[u] = 1;
                        parent[u] = v;
                        stack.push((u, 0));
                    } else if color[u] == 1 {
                        cycle = Some((v, u));
                        break 'outer;
                    }
                } else {
                    color[v] = 2;
                    stack.pop();
                }
            }
        }
        let Some((back_from, back_to)) = cycle else {
            return;
        };
        // recover the cycle back_to -> ... -> back_from -> back_to
        let mut path = vec![back_from];
        let mut v = back_from;
        while v != back_to {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        path.push(back_to);
        let min = path
            .windows(2)
            .map(|w| flows[&(w[0], w[1])])
            .min()
            .expect("cycle has arcs");
        for w in path.windows(2) {
            let e = flows.get_mut(&(w[0], w[1])).unwrap();
            *e -= min;
            if *e == 0 {
                flows.remove(&(w[0], w[1]));
            }
        }
    }
}

fn excesses(flows: &BTreeMap<(usize, usize), u64>, n: usize) -> Vec<i64> {
    let mut ex = vec![0i64; n];
    for (&(u, v), &c) in flows {
        ex[u] -= c as i64;
        ex[v] += c as i64;
    }
    ex
}

/// Turns a feasible raw flow (arc multiset) into an acyclic decomposition of
/// the same value. The output admits a topological order and carries at most
/// n * sqrt(2 f) arcs.
pub fn make_noncircular(
    n: usize,
    s: usize,
    t: usize,
    raw: &BTreeMap<(usize, usize), u64>,
) -> Result<FlowDecomposition> {
    let ex = excesses(raw, n);
    let value = -ex[s];
    if value < 0 || ex[t] != value {
        return Err(Error::InfeasibleFlow);
    }
    for (v, &e) in ex.iter().enumerate() {
        if v != s && v != t && e != 0 {
            return Err(Error::InfeasibleFlow);
        }
    }
    let mut flows = raw.clone();
    cancel_cycles(&mut flows, n);
    // peel unit paths; in an acyclic flow every walk from s ends at t
    let mut paths = Vec::with_capacity(value as usize);
    for _ in 0..value {
        let mut path = vec![s];
        let mut v = s;
        while v != t {
            let (&(_, next), _) = flows
                .range((v, 0)..(v + 1, 0))
                .find(|(_, &c)| c > 0)
                .ok_or(Error::InfeasibleFlow)?;
            let c = flows.get_mut(&(v, next)).unwrap();
            *c -= 1;
            if *c == 0 {
                flows.remove(&(v, next));
            }
            path.push(next);
            v = next;
        }
        paths.push(path);
    }
    let dec = FlowDecomposition { paths };
    debug_assert!(
        (dec.arc_count() as f64) <= (n as f64) * (2.0 * dec.value() as f64).sqrt() + 1e-9
    );
    Ok(dec)
}

/// Maximum s-t flow of a mixed graph with its unit-path decomposition.
/// The decomposition is cycle-cancelled before being peeled, so its arc
/// multiset is always acyclic.
pub fn max_flow(m: &MixedGraph) -> Result<(u64, FlowDecomposition)> {
    let mut net = Network::from_mixed(m);
    let value = net.max_flow();
    let flows = net.net_flows();
    let dec = make_noncircular(m.n(), m.s(), m.t(), &flows)?;
    debug_assert_eq!(dec.value(), value);
    Ok((value, dec))
}

pub fn max_flow_value(m: &MixedGraph) -> u64 {
    Network::from_mixed(m).max_flow()
}

/// Minimum s-t cut of a mixed graph. Ties are broken canonically by the
/// source-side reachability cut of the final residual network.
pub fn min_cut(m: &MixedGraph) -> Result<(u64, Cut)> {
    let mut net = Network::from_mixed(m);
    let value = net.max_flow();
    let cut = Cut::from_source_side(&net.residual_source_side(), m.s(), m.t())?;
    debug_assert_eq!(cut_weight_mixed(m, &cut)?, value);
    Ok((value, cut))
}

/// Common denominator of all undirected weights, for integer scaling.
fn common_denominator(und: &WGraph) -> Result<i128> {
    let mut d: i128 = 1;
    for (_, w) in und.edges() {
        let den = *w.denom();
        let g = gcd_i128(d, den);
        d = d.checked_mul(den / g).ok_or_else(|| {
            Error::InvalidParameter("weight denominators overflow the scaling range".into())
        })?;
        if d > 1 << 40 {
            return Err(Error::InvalidParameter(
                "weight denominators too large to scale exactly".into(),
            ));
        }
    }
    Ok(d)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i128(b, a % b)
    }
}

/// Builds the scaled integer network of a rationally weighted mixed graph.
/// Returns the network and the scale factor D (all capacities are weight*D).
pub fn scaled_network(
    und: &WGraph,
    dir: &WeightedDigraph,
    s: usize,
    t: usize,
) -> Result<(Network, i128)> {
    let d = common_denominator(und)?;
    let mut net = Network::new(und.n(), s, t);
    for ((u, v), w) in und.edges() {
        let cap = (w * Rat::from_integer(d)).to_integer();
        debug_assert!(cap > 0);
        net.add_undirected(u, v, cap as u64);
    }
    for ((u, v), w) in dir.arcs() {
        net.add_directed(u, v, w * d as u64);
    }
    Ok((net, d))
}

/// Exact max-flow value of a mixed graph with rational undirected weights.
pub fn rational_mixed_nu(und: &WGraph, dir: &WeightedDigraph, s: usize, t: usize) -> Result<Rat> {
    let (mut net, d) = scaled_network(und, dir, s, t)?;
    let v = net.max_flow();
    Ok(Rat::new(v as i128, d))
}

/// Minimum s-t cut of a contracted mixed multigraph, over block vertices.
/// Returns the value and the t-side block set.
pub fn min_cut_contracted(cm: &ContractedMixed) -> (u64, VertexSet) {
    let mut net = Network::new(cm.z, cm.s_block, cm.t_block);
    for (&(u, v), &c) in &cm.und {
        net.add_undirected(u, v, c);
    }
    for (&(u, v), &w) in &cm.dir {
        net.add_directed(u, v, w);
    }
    let value = net.max_flow();
    (value, net.residual_source_side().complement())
}

/// The residual graph of an undirected graph induced by a unit flow: flow
/// edges are replaced by their reversals at weight 2, the rest of the graph
/// stays undirected.
#[derive(Clone, Debug)]
pub struct ResidualGraph {
    pub base: MixedGraph,
    pub flow_value: u64,
}

pub fn residual(g: &Graph, flow: &FlowDecomposition) -> Result<ResidualGraph> {
    let used = flow.undirected_edges()?;
    let mut rest = g.clone();
    for &(u, v) in &used {
        if !rest.remove_edge(u, v) {
            return Err(Error::FlowNotSubgraph);
        }
    }
    let mut rev = WeightedDigraph::new(g.n());
    for ((u, v), c) in flow.arc_multiset() {
        debug_assert_eq!(c, 1);
        rev.add_arc(v, u, 2)?;
    }
    Ok(ResidualGraph {
        base: MixedGraph::new(rest, rev)?,
        flow_value: flow.value(),
    })
}

/// Whether |E_G(S,T)| = value(F) + w_{G_F}(S,T) holds for this triple.
/// Holds for every cut of every residual graph; exercised in tests.
pub fn cut_identity_check(g: &Graph, flow: &FlowDecomposition, cut: &Cut) -> Result<bool> {
    let res = residual(g, flow)?;
    let lhs = cut_weight_graph(g, cut)?;
    let rhs = flow.value() + cut_weight_mixed(&res.base, cut)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_st_cuts, cut_weight_graph};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn figure_graph() -> (Graph, FlowDecomposition) {
        let g = Graph::with_edges(
            8,
            0,
            7,
            vec![
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 5),
                (2, 5),
                (3, 6),
                (4, 7),
                (5, 7),
                (5, 4),
                (6, 5),
                (6, 7),
            ],
        )
        .unwrap();
        let flow = FlowDecomposition {
            paths: vec![vec![0, 1, 5, 4, 7], vec![0, 3, 6, 5, 7]],
        };
        (g, flow)
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n, 0, n - 1).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    fn exhaustive_min_cut(m: &MixedGraph) -> u64 {
        all_st_cuts(m.n(), m.s(), m.t())
            .iter()
            .map(|c| cut_weight_mixed(m, c).unwrap())
            .min()
            .unwrap()
    }

    #[test]
    fn single_edge_flow() {
        let g = Graph::with_edges(2, 0, 1, vec![(0, 1)]).unwrap();
        let (v, dec) = max_flow(&MixedGraph::undirected_only(g.clone())).unwrap();
        assert_eq!(v, 1);
        dec.validate_unit(&g).unwrap();
    }

    #[test]
    fn figure_graph_max_flow_is_three() {
        let (g, _) = figure_graph();
        let m = MixedGraph::undirected_only(g.clone());
        let (v, dec) = max_flow(&m).unwrap();
        assert_eq!(v, 3);
        assert_eq!(v, exhaustive_min_cut(&m));
        dec.validate_unit(&g).unwrap();
    }

    #[test]
    fn flow_value_matches_exhaustive_cuts() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let n = rng.gen_range(3..=9);
            let g = random_graph(&mut rng, n, 0.5);
            let m = MixedGraph::undirected_only(g.clone());
            let (v, dec) = max_flow(&m).unwrap();
            assert_eq!(v, exhaustive_min_cut(&m));
            dec.validate_unit(&g).unwrap();
        }
    }

    #[test]
    fn mixed_flow_matches_exhaustive_cuts() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let n = rng.gen_range(3..=8);
            let g = random_graph(&mut rng, n, 0.35);
            let mut f = WeightedDigraph::new(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.15) {
                        let _ = f.add_arc(u, v, rng.gen_range(1..=2));
                    }
                }
            }
            let m = MixedGraph::new(g, f).unwrap();
            let v = max_flow_value(&m);
            assert_eq!(v, exhaustive_min_cut(&m));
            let (mv, cut) = min_cut(&m).unwrap();
            assert_eq!(mv, v);
            assert_eq!(cut_weight_mixed(&m, &cut).unwrap(), v);
        }
    }

    #[test]
    fn min_cut_on_path() {
        let g = Graph::with_edges(3, 0, 2, vec![(0, 1), (1, 2)]).unwrap();
        let (v, cut) = min_cut(&MixedGraph::undirected_only(g)).unwrap();
        assert_eq!(v, 1);
        assert!(cut.in_s(0) && cut.in_t(2));
    }

    #[test]
    fn min_cut_disconnected_is_zero() {
        let g = Graph::new(4, 0, 3).unwrap();
        let (v, _) = min_cut(&MixedGraph::undirected_only(g)).unwrap();
        assert_eq!(v, 0);
    }

    #[test]
    fn residual_of_figure_matches_drawn_version() {
        let (g, flow) = figure_graph();
        let res = residual(&g, &flow).unwrap();
        // undirected leftovers: s-a2, a2-b2, b3-t
        let mut leftovers: Vec<(usize, usize)> = res.base.g.edges().collect();
        leftovers.sort();
        assert_eq!(leftovers, vec![(0, 2), (2, 5), (6, 7)]);
        // all reversal arcs carry weight 2
        assert_eq!(res.base.f.arcs().count(), 8);
        assert!(res.base.f.arcs().all(|(_, w)| w == 2));
        assert_eq!(res.base.f.weight(1, 0), 2);
        assert_eq!(res.base.f.weight(7, 4), 2);
        // sum of flows: maxflow(F) + maxflow(G_F) = maxflow(G)
        assert_eq!(max_flow_value(&res.base), 1);
    }

    #[test]
    fn residual_of_path_flow() {
        let g = Graph::with_edges(3, 0, 2, vec![(0, 1), (1, 2)]).unwrap();
        let flow = FlowDecomposition {
            paths: vec![vec![0, 1, 2]],
        };
        let res = residual(&g, &flow).unwrap();
        assert_eq!(res.base.g.m(), 0);
        assert_eq!(res.base.f.weight(1, 0), 2);
        assert_eq!(res.base.f.weight(2, 1), 2);
        assert_eq!(max_flow_value(&res.base), 0);
    }

    #[test]
    fn residual_of_empty_flow_is_identity() {
        let (g, _) = figure_graph();
        let res = residual(&g, &FlowDecomposition::empty()).unwrap();
        assert_eq!(res.base.g, g);
        assert!(res.base.f.is_empty());
    }

    #[test]
    fn sum_flows_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..50 {
            let n = rng.gen_range(3..=9);
            let g = random_graph(&mut rng, n, 0.5);
            let m = MixedGraph::undirected_only(g.clone());
            let (v, dec) = max_flow(&m).unwrap();
            // take a partial flow too: drop the last path
            for dec in [
                dec.clone(),
                FlowDecomposition {
                    paths: dec.paths[..dec.paths.len().saturating_sub(1)].to_vec(),
                },
            ] {
                let res = residual(&g, &dec).unwrap();
                assert_eq!(dec.value() + max_flow_value(&res.base), v);
            }
        }
    }

    #[test]
    fn cut_identity_exhaustive_on_figure() {
        let (g, flow) = figure_graph();
        for cut in all_st_cuts(8, 0, 7) {
            assert!(cut_identity_check(&g, &flow, &cut).unwrap());
        }
    }

    #[test]
    fn cut_identity_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..40 {
            let n = rng.gen_range(3..=9);
            let g = random_graph(&mut rng, n, 0.5);
            let (_, dec) = max_flow(&MixedGraph::undirected_only(g.clone())).unwrap();
            for cut in all_st_cuts(n, 0, n - 1) {
                assert!(cut_identity_check(&g, &dec, &cut).unwrap());
            }
        }
    }

    #[test]
    fn cut_identity_with_empty_flow() {
        let (g, _) = figure_graph();
        let empty = FlowDecomposition::empty();
        for cut in all_st_cuts(8, 0, 7).into_iter().take(16) {
            let res = residual(&g, &empty).unwrap();
            assert_eq!(
                cut_weight_graph(&g, &cut).unwrap(),
                cut_weight_mixed(&res.base, &cut).unwrap()
            );
        }
    }

    #[test]
    fn noncircular_keeps_acyclic_flow() {
        let mut raw = BTreeMap::new();
        raw.insert((0, 1), 1);
        raw.insert((1, 3), 1);
        raw.insert((0, 2), 1);
        raw.insert((2, 3), 1);
        let dec = make_noncircular(4, 0, 3, &raw).unwrap();
        assert_eq!(dec.value(), 2);
        assert_eq!(dec.arc_multiset(), raw);
    }

    #[test]
    fn noncircular_removes_disjoint_cycle() {
        // 1-flow s->t plus a directed triangle on {1,2,3}
        let mut raw = BTreeMap::new();
        raw.insert((0, 4), 1);
        raw.insert((1, 2), 1);
        raw.insert((2, 3), 1);
        raw.insert((3, 1), 1);
        let dec = make_noncircular(5, 0, 4, &raw).unwrap();
        assert_eq!(dec.value(), 1);
        assert_eq!(dec.paths, vec![vec![0, 4]]);
    }

    #[test]
    fn noncircular_rejects_infeasible() {
        let mut raw = BTreeMap::new();
        raw.insert((1, 2), 1); // conservation broken at 1 and 2
        assert!(make_noncircular(4, 0, 3, &raw).is_err());
    }

    #[test]
    fn noncircular_edge_bound_on_random_max_flows() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..30 {
            let n = rng.gen_range(4..=10);
            let g = random_graph(&mut rng, n, 0.7);
            let (f, dec) = max_flow(&MixedGraph::undirected_only(g)).unwrap();
            let edges = dec.arc_count() as f64;
            assert!(edges <= (n as f64) * (2.0 * f as f64).sqrt() + 1e-9);
        }
    }
}
