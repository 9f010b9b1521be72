//! Graph representations shared by every algorithm: the undirected unit
//! graph, the directed bounded-weight graph, their union (a mixed graph),
//! cuts, partitions, and the edge-list file format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_rational::Ratio;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Exact rational scalar used for weighted graphs and thresholds.
pub type Rat = Ratio<i128>;

pub fn rat(num: i128, den: i128) -> Rat {
    Ratio::new(num, den)
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Undirected, unweighted, simple graph with designated terminals.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    s: usize,
    t: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, s: usize, t: usize) -> Result<Self> {
        if s >= n {
            return Err(Error::VertexOutOfRange { vertex: s, n });
        }
        if t >= n {
            return Err(Error::VertexOutOfRange { vertex: t, n });
        }
        if s == t {
            return Err(Error::EqualTerminals(s));
        }
        Ok(Graph {
            n,
            s,
            t,
            edges: BTreeSet::new(),
        })
    }

    pub fn with_edges<I>(n: usize, s: usize, t: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n, s, t)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !self.edges.insert(norm(u, v)) {
            return Err(Error::DuplicateEdge(u, v));
        }
        Ok(())
    }

    /// Inserts the edge if absent; returns whether it was new.
    pub fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n && u != v);
        self.edges.insert(norm(u, v))
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        self.edges.remove(&norm(u, v))
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn t(&self) -> usize {
        self.t
    }
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&norm(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Edge-wise difference `self \ other` (terminals kept).
    pub fn minus(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        for (u, v) in other.edges() {
            g.remove_edge(u, v);
        }
        g
    }

    /// Edge-wise union (terminals taken from `self`).
    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        for (u, v) in other.edges() {
            g.insert_edge(u, v);
        }
        g
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.edges.is_subset(&other.edges)
    }

    /// Vertices reachable from `from` ignoring edge directions.
    pub fn reachable_from(&self, from: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(self.n, from);
        let mut stack = vec![from];
        let adj = self.adjacency();
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen.contains(u) {
                    seen.insert(u);
                    stack.push(u);
                }
            }
        }
        seen
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, s={}, t={}, m={})",
            self.n,
            self.s,
            self.t,
            self.edges.len()
        )
    }
}

/// Directed graph with positive integer arc weights.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightedDigraph {
    n: usize,
    arcs: BTreeMap<(usize, usize), u64>,
}

impl WeightedDigraph {
    pub fn new(n: usize) -> Self {
        WeightedDigraph {
            n,
            arcs: BTreeMap::new(),
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize, w: u64) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if w == 0 {
            return Err(Error::NonPositiveWeight);
        }
        *self.arcs.entry((u, v)).or_insert(0) += w;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.arcs.iter().map(|(&k, &w)| (k, w))
    }

    pub fn weight(&self, u: usize, v: usize) -> u64 {
        self.arcs.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u64 {
        self.arcs.values().sum()
    }

    pub fn max_weight(&self) -> u64 {
        self.arcs.values().copied().max().unwrap_or(0)
    }

    /// Every arc reversed, each given weight `w`.
    pub fn reversed_with_weight(&self, w: u64) -> WeightedDigraph {
        let mut out = WeightedDigraph::new(self.n);
        for &(u, v) in self.arcs.keys() {
            *out.arcs.entry((v, u)).or_insert(0) += w;
        }
        out
    }
}

/// A mixed graph: undirected unit-weight part plus an explicit directed
/// bounded-weight part over the same vertex set.
#[derive(Clone, Debug)]
pub struct MixedGraph {
    pub g: Graph,
    pub f: WeightedDigraph,
}

impl MixedGraph {
    pub fn new(g: Graph, f: WeightedDigraph) -> Result<Self> {
        if g.n() != f.n() {
            return Err(Error::VertexCountMismatch(g.n(), f.n()));
        }
        Ok(MixedGraph { g, f })
    }

    pub fn undirected_only(g: Graph) -> Self {
        let f = WeightedDigraph::new(g.n());
        MixedGraph { g, f }
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }
    pub fn s(&self) -> usize {
        self.g.s()
    }
    pub fn t(&self) -> usize {
        self.g.t()
    }
}

/// An s-t cut stored as the t-side indicator over vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    t_side: VertexSet,
}

impl Cut {
    /// `t_side` must exclude s and include t.
    pub fn new(t_side: VertexSet, s: usize, t: usize) -> Result<Self> {
        if t_side.contains(s) || !t_side.contains(t) {
            return Err(Error::InvalidParameter(
                "cut must place s on the source side and t on the sink side".into(),
            ));
        }
        Ok(Cut { t_side })
    }

    /// Builds the cut from the source side instead.
    pub fn from_source_side(s_side: &VertexSet, s: usize, t: usize) -> Result<Self> {
        Self::new(s_side.complement(), s, t)
    }

    pub fn n(&self) -> usize {
        self.t_side.universe()
    }

    pub fn in_t(&self, v: usize) -> bool {
        self.t_side.contains(v)
    }

    pub fn in_s(&self, v: usize) -> bool {
        !self.t_side.contains(v)
    }

    pub fn t_side(&self) -> &VertexSet {
        &self.t_side
    }

    pub fn s_side(&self) -> VertexSet {
        self.t_side.complement()
    }

    pub fn s_len(&self) -> usize {
        self.n() - self.t_side.len()
    }

    pub fn t_len(&self) -> usize {
        self.t_side.len()
    }
}

/// Iterates all s-t cuts of an n-vertex graph (t-side masks). Intended for
/// exhaustive checks at small n.
pub fn all_st_cuts(n: usize, s: usize, t: usize) -> Vec<Cut> {
    assert!(n <= 26, "exhaustive cut enumeration capped");
    let others: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut cuts = Vec::with_capacity(1 << others.len());
    for mask in 0u64..(1 << others.len()) {
        let mut side = VertexSet::singleton(n, t);
        for (i, &v) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                side.insert(v);
            }
        }
        cuts.push(Cut { t_side: side });
    }
    cuts
}

/// Number of undirected edges split by the cut.
pub fn cut_weight_graph(g: &Graph, cut: &Cut) -> Result<u64> {
    if cut.n() != g.n() {
        return Err(Error::DimensionMismatch {
            cut_n: cut.n(),
            graph_n: g.n(),
        });
    }
    Ok(g
        .edges()
        .filter(|&(u, v)| cut.in_t(u) != cut.in_t(v))
        .count() as u64)
}

/// Total weight of arcs with tail on the s-side and head on the t-side.
pub fn cut_weight_digraph(f: &WeightedDigraph, cut: &Cut) -> Result<u64> {
    if cut.n() != f.n() {
        return Err(Error::DimensionMismatch {
            cut_n: cut.n(),
            graph_n: f.n(),
        });
    }
    Ok(f
        .arcs()
        .filter(|&((u, v), _)| cut.in_s(u) && cut.in_t(v))
        .map(|(_, w)| w)
        .sum())
}

/// Mixed cut value: split undirected edges plus forward-crossing arcs.
pub fn cut_weight_mixed(m: &MixedGraph, cut: &Cut) -> Result<u64> {
    Ok(cut_weight_graph(&m.g, cut)? + cut_weight_digraph(&m.f, cut)?)
}

/// A partition of the vertex set into disjoint covering blocks.
#[derive(Clone, Debug)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    n: usize,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut count = 0usize;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in b {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} appears in two blocks"
                    )));
                }
                seen[v] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(Error::InvalidPartition("blocks do not cover V".into()));
        }
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        Ok(Partition { blocks, n })
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|v| vec![v]).collect(),
            n,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Map from vertex to its block index.
    pub fn block_of(&self) -> Vec<usize> {
        let mut id = vec![0usize; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                id[v] = i;
            }
        }
        id
    }

    pub fn block_index(&self, v: usize) -> usize {
        self.block_of()[v]
    }

    /// Whether the cut assigns every block entirely to one side.
    pub fn respected_by(&self, cut: &Cut) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&v| cut.in_t(v)) || b.iter().all(|&v| !cut.in_t(v)))
    }
}

/// Result of contracting a mixed graph along a partition. Parallel
/// undirected edges collapse to integer multiplicities; the pre-contraction
/// graph stays simple.
#[derive(Clone, Debug)]
pub struct ContractedMixed {
    pub z: usize,
    pub s_block: usize,
    pub t_block: usize,
    pub und: BTreeMap<(usize, usize), u64>,
    pub dir: BTreeMap<(usize, usize), u64>,
    pub partition: Partition,
}

impl ContractedMixed {
    pub fn und_total(&self) -> u64 {
        self.und.values().sum()
    }

    /// Lifts a cut over blocks back to a vertex-level cut.
    pub fn lift_cut(&self, t_blocks: &VertexSet, s: usize, t: usize) -> Result<Cut> {
        let mut side = VertexSet::empty(self.partition.n());
        for (i, b) in self.partition.blocks().iter().enumerate() {
            if t_blocks.contains(i) {
                for &v in b {
                    side.insert(v);
                }
            }
        }
        Cut::new(side, s, t)
    }
}

/// Contracts each block to a super-vertex, dropping intra-block edges.
/// Cut values over block-respecting cuts are preserved.
pub fn contract(m: &MixedGraph, partition: &Partition) -> Result<ContractedMixed> {
    if partition.n() != m.n() {
        return Err(Error::VertexCountMismatch(partition.n(), m.n()));
    }
    let id = partition.block_of();
    let (s_block, t_block) = (id[m.s()], id[m.t()]);
    if s_block == t_block {
        return Err(Error::TerminalsInOneBlock);
    }
    let mut und: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (u, v) in m.g.edges() {
        let (a, b) = (id[u], id[v]);
        if a != b {
            *und.entry(norm(a, b)).or_insert(0) += 1;
        }
    }
    let mut dir: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for ((u, v), w) in m.f.arcs() {
        let (a, b) = (id[u], id[v]);
        if a != b {
            *dir.entry((a, b)).or_insert(0) += w;
        }
    }
    Ok(ContractedMixed {
        z: partition.len(),
        s_block,
        t_block,
        und,
        dir,
        partition: partition.clone(),
    })
}

/// Undirected graph with exact rational edge weights. Used for sparsifiers,
/// packing leftovers and connectivity decompositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), Rat>,
}

impl WGraph {
    pub fn new(n: usize) -> Self {
        WGraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_unit_graph(g: &Graph) -> Self {
        let mut w = WGraph::new(g.n());
        for (u, v) in g.edges() {
            w.add_weight(u, v, Rat::from_integer(1));
        }
        w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn add_weight(&mut self, u: usize, v: usize, w: Rat) {
        assert!(u != v && u < self.n && v < self.n);
        use num_traits::Zero;
        assert!(w > Rat::zero());
        let e = self.edges.entry(norm(u, v)).or_insert_with(Rat::zero);
        *e += w;
    }

    pub fn weight(&self, u: usize, v: usize) -> Rat {
        use num_traits::Zero;
        self.edges
            .get(&norm(u, v))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), Rat)> + '_ {
        self.edges.iter().map(|(&k, &w)| (k, w))
    }

    pub fn total_weight(&self) -> Rat {
        use num_traits::Zero;
        self.edges.values().fold(Rat::zero(), |a, b| a + b)
    }

    pub fn max_weight(&self) -> Rat {
        use num_traits::Zero;
        self.edges.values().cloned().max().unwrap_or_else(Rat::zero)
    }

    /// Weight crossing an arbitrary bipartition (side, complement).
    pub fn bipartition_weight(&self, side: &VertexSet) -> Rat {
        use num_traits::Zero;
        self.edges
            .iter()
            .filter(|(&(u, v), _)| side.contains(u) != side.contains(v))
            .fold(Rat::zero(), |acc, (_, w)| acc + w)
    }

    /// Induced subgraph on `verts`, with vertices relabeled by position.
    pub fn induced(&self, verts: &[usize]) -> WGraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut out = WGraph::new(verts.len());
        for (&(u, v), &w) in &self.edges {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                out.add_weight(pos[u], pos[v], w);
            }
        }
        out
    }

    /// Connected components (isolated vertices are their own components).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in self.edges.keys() {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            comp[start] = c;
            let mut stack = vec![start];
            let mut members = vec![start];
            while let Some(v) = stack.pop() {
                for &u in &adj[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = c;
                        members.push(u);
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// Ordered list of spanning forests, each drawn from what the earlier
/// forests left behind.
#[derive(Clone, Debug)]
pub struct ForestPacking {
    pub forests: Vec<Vec<(usize, usize)>>,
}

impl ForestPacking {
    /// All packed edges as one graph.
    pub fn union_graph(&self, n: usize, s: usize, t: usize) -> Graph {
        let mut g = Graph::new(n, s, t).expect("valid terminals");
        for f in &self.forests {
            for &(u, v) in f {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn edge_count(&self) -> usize {
        self.forests.iter().map(|f| f.len()).sum()
    }
}

// ---------------------------------------------------------------------------
// Edge-list text format.
//
// Header `n s t`, then `u v` per undirected edge and `u v w D` per directed
// weighted arc. Parsing is deterministic and duplicate edges are rejected.
// ---------------------------------------------------------------------------

pub fn parse_edge_list(text: &str) -> Result<MixedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 3 {
        return Err(Error::Parse {
            line: line_no,
            msg: "header must be `n s t`".into(),
        });
    }
    let parse_num = |tok: &str, line: usize| -> Result<usize> {
        tok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("invalid integer `{tok}`"),
        })
    };
    let n = parse_num(head[0], line_no)?;
    let s = parse_num(head[1], line_no)?;
    let t = parse_num(head[2], line_no)?;
    let mut g = Graph::new(n, s, t).map_err(|e| Error::Parse {
        line: line_no,
        msg: e.to_string(),
    })?;
    let mut f = WeightedDigraph::new(n);
    let mut seen_arcs = BTreeSet::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.len() {
            2 => {
                let u = parse_num(toks[0], line)?;
                let v = parse_num(toks[1], line)?;
                g.add_edge(u, v).map_err(|e| Error::Parse {
                    line,
                    msg: e.to_string(),
                })?;
            }
            4 if toks[3] == "D" => {
                let u = parse_num(toks[0], line)?;
                let v = parse_num(toks[1], line)?;
                let w = toks[2].parse::<u64>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("invalid weight `{}`", toks[2]),
                })?;
                if !seen_arcs.insert((u, v)) {
                    return Err(Error::Parse {
                        line,
                        msg: format!("duplicate arc ({u}, {v})"),
                    });
                }
                f.add_arc(u, v, w).map_err(|e| Error::Parse {
                    line,
                    msg: e.to_string(),
                })?;
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: "expected `u v` or `u v w D`".into(),
                })
            }
        }
    }
    MixedGraph::new(g, f)
}

pub fn write_edge_list(m: &MixedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", m.n(), m.s(), m.t());
    for (u, v) in m.g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    for ((u, v), w) in m.f.arcs() {
        let _ = writeln!(out, "{u} {v} {w} D");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        // vertices s=0, a=1, t=2
        Graph::with_edges(3, 0, 2, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    /// The 8-vertex graph used as a running example: s=0, inner layers
    /// 1..=6, t=7, with an explicit 2-unit flow drawn through it.
    pub(crate) fn figure_graph() -> (Graph, Vec<Vec<usize>>) {
        // a1=1 a2=2 a3=3 b1=4 b2=5 b3=6
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
        let paths = vec![vec![0, 1, 5, 4, 7], vec![0, 3, 6, 5, 7]];
        (g, paths)
    }

    #[test]
    fn triangle_cut_weight() {
        let g = triangle();
        let cut = Cut::new(VertexSet::from_iter(3, [1, 2]), 0, 2).unwrap();
        assert_eq!(cut_weight_graph(&g, &cut).unwrap(), 2);
    }

    #[test]
    fn figure_cut_at_source_is_three() {
        let (g, _) = figure_graph();
        let cut = Cut::from_source_side(&VertexSet::singleton(8, 0), 0, 7).unwrap();
        assert_eq!(cut_weight_graph(&g, &cut).unwrap(), 3);
    }

    #[test]
    fn arc_from_t_side_contributes_zero() {
        let mut f = WeightedDigraph::new(3);
        f.add_arc(1, 0, 2).unwrap();
        // a=1 is on the t side, so the arc does not cross s->t
        let cut = Cut::new(VertexSet::from_iter(3, [1, 2]), 0, 2).unwrap();
        assert_eq!(cut_weight_digraph(&f, &cut).unwrap(), 0);
    }

    #[test]
    fn contract_identity_on_singletons() {
        let g = triangle();
        let m = MixedGraph::undirected_only(g);
        let p = Partition::singletons(3);
        let c = contract(&m, &p).unwrap();
        assert_eq!(c.z, 3);
        assert_eq!(c.und.len(), 3);
        assert!(c.und.values().all(|&w| w == 1));
    }

    #[test]
    fn contract_triangle_two_blocks() {
        let m = MixedGraph::undirected_only(triangle());
        let p = Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let c = contract(&m, &p).unwrap();
        // crossing edges are (1,2) and (0,2): multiplicity 2
        assert_eq!(c.und_total(), 2);
        assert_eq!(c.und.len(), 1);
    }

    #[test]
    fn contract_path_two_blocks() {
        let g = Graph::with_edges(4, 0, 3, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = MixedGraph::undirected_only(g);
        let p = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let c = contract(&m, &p).unwrap();
        assert_eq!(c.und_total(), 1);
    }

    #[test]
    fn contract_rejects_merged_terminals() {
        let m = MixedGraph::undirected_only(triangle());
        let p = Partition::new(3, vec![vec![0, 2], vec![1]]).unwrap();
        assert!(matches!(
            contract(&m, &p),
            Err(Error::TerminalsInOneBlock)
        ));
    }

    #[test]
    fn contract_preserves_respecting_cut_weights() {
        let (g, _) = figure_graph();
        let m = MixedGraph::undirected_only(g);
        let p = Partition::new(8, vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]]).unwrap();
        let c = contract(&m, &p).unwrap();
        for cut in all_st_cuts(8, 0, 7) {
            if !p.respected_by(&cut) {
                continue;
            }
            let direct = cut_weight_graph(&m.g, &cut).unwrap();
            let id = p.block_of();
            let lifted: u64 = c
                .und
                .iter()
                .filter(|(&(a, b), _)| {
                    let va = p.blocks()[a][0];
                    let vb = p.blocks()[b][0];
                    let _ = id;
                    cut.in_t(va) != cut.in_t(vb)
                })
                .map(|(_, &w)| w)
                .sum();
            assert_eq!(direct, lifted);
        }
    }

    #[test]
    fn edge_list_roundtrip() {
        let text = "4 0 3\n0 1\n1 2\n2 3\n1 3 2 D\n";
        let m = parse_edge_list(text).unwrap();
        assert_eq!(m.n(), 4);
        assert_eq!(m.g.m(), 3);
        assert_eq!(m.f.weight(1, 3), 2);
        let written = write_edge_list(&m);
        let re = parse_edge_list(&written).unwrap();
        assert_eq!(re.g, m.g);
        assert_eq!(re.f, m.f);
    }

    #[test]
    fn edge_list_rejects_duplicates() {
        let text = "3 0 2\n0 1\n1 0\n";
        match parse_edge_list(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
