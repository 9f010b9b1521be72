//! The two-party runtime: an edge-partitioned instance, a transcript with
//! exact bit accounting under a fixed wire format, and the deterministic
//! protocols built on residual witnesses: preprocessing, the argmax
//! edge-exchange growth loop, its recursion, and the end-to-end minimum
//! s-t cut driver.
//!
//! Local computation is free; only exchanged bits are charged. Every
//! protocol is deterministic given the instance and the protocol seed, so
//! transcripts are byte-identical across reruns.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::flow::{max_flow, max_flow_value, residual, FlowDecomposition, Network};
use crate::graph::{Cut, Graph, MixedGraph, Partition, Rat, WGraph, WeightedDigraph};
use crate::oracle::ceil_log2;
use crate::packing::forest_packing;
use crate::rsw::{choose_eps_comm, rsw_min_cut, RswAccess, RswRun};
use crate::sparsify::{bounded_weight_sparsifier, round_rat, SparseGraph};
use crate::witness::DEFAULT_WITNESS_CAP;

/// An input graph split (with possible overlap) between two players.
#[derive(Clone, Debug)]
pub struct TwoPartyInstance {
    pub alice: Graph,
    pub bob: Graph,
}

impl TwoPartyInstance {
    pub fn new(alice: Graph, bob: Graph) -> Result<Self> {
        if alice.n() != bob.n() || alice.s() != bob.s() || alice.t() != bob.t() {
            return Err(Error::VertexCountMismatch(alice.n(), bob.n()));
        }
        Ok(TwoPartyInstance { alice, bob })
    }

    pub fn n(&self) -> usize {
        self.alice.n()
    }
    pub fn s(&self) -> usize {
        self.alice.s()
    }
    pub fn t(&self) -> usize {
        self.alice.t()
    }

    /// The union graph both players jointly hold.
    pub fn union(&self) -> Graph {
        self.alice.union(&self.bob)
    }
}

// ---------------------------------------------------------------------------
// Wire format and transcripts.
//
// Every message carries a 1-byte sender/kind header. An edge costs
// 2 ceil(log2 n) bits, an integer value ceil(log2 n^2) bits, a graph a
// length prefix plus its edges, and a weighted graph additionally a 6-bit
// width field plus one weight per edge.
// ---------------------------------------------------------------------------

pub fn edge_bits(n: usize) -> u64 {
    2 * ceil_log2(n.max(2)) as u64
}

pub fn int_bits(n: usize) -> u64 {
    ceil_log2((n * n).max(2)) as u64
}

pub fn graph_payload_bits(n: usize, m: usize) -> u64 {
    int_bits(n) + m as u64 * edge_bits(n)
}

pub fn weighted_graph_payload_bits(n: usize, m: usize, max_weight: u64) -> u64 {
    let wbits = ceil_log2((max_weight + 1).max(2) as usize) as u64;
    int_bits(n) + 6 + m as u64 * (edge_bits(n) + wbits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sender {
    Alice,
    Bob,
}

impl std::fmt::Display for Sender {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sender::Alice => write!(f, "alice"),
            Sender::Bob => write!(f, "bob"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Message {
    pub sender: Sender,
    pub kind: &'static str,
    pub bits: u64,
}

/// Ordered message log with exact bit totals.
#[derive(Clone, Debug, Default)]
pub struct Transcript {
    messages: Vec<Message>,
}

impl Transcript {
    pub fn new() -> Self {
        Transcript::default()
    }

    /// Records a message: 8 header bits plus the payload.
    pub fn send(&mut self, sender: Sender, kind: &'static str, payload_bits: u64) {
        self.messages.push(Message {
            sender,
            kind,
            bits: 8 + payload_bits,
        });
    }

    pub fn total_bits(&self) -> u64 {
        self.messages.iter().map(|m| m.bits).sum()
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    /// CSV rows `round,sender,kind,bits`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("round,sender,kind,bits\n");
        for (i, m) in self.messages.iter().enumerate() {
            out.push_str(&format!("{i},{},{},{}\n", m.sender, m.kind, m.bits));
        }
        out
    }

    /// Deterministic digest of the serialized transcript.
    pub fn fingerprint(&self) -> u64 {
        // FNV-1a over the CSV bytes
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.to_csv().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }

    /// Total bits per message kind, sorted by kind.
    pub fn by_kind(&self) -> Vec<(&'static str, u64)> {
        let mut agg: BTreeMap<&'static str, u64> = BTreeMap::new();
        for m in &self.messages {
            *agg.entry(m.kind).or_insert(0) += m.bits;
        }
        agg.into_iter().collect()
    }
}

// ---------------------------------------------------------------------------
// Residual witnesses.
// ---------------------------------------------------------------------------

/// Parameters of a residual-witness phase: the flow F of value f-k is fixed
/// throughout the phase.
#[derive(Clone, Debug)]
pub struct ResidualWitnessParams {
    pub f: u64,
    pub k: u64,
    pub k_prime: u64,
    pub flow: FlowDecomposition,
}

impl ResidualWitnessParams {
    pub fn new(f: u64, k: u64, k_prime: u64, flow: FlowDecomposition) -> Result<Self> {
        if !(k_prime < k && k <= f) {
            return Err(Error::InvalidParameter(format!(
                "need k' < k <= f, got f={f} k={k} k'={k_prime}"
            )));
        }
        if flow.value() != f - k {
            return Err(Error::InvalidParameter(format!(
                "phase flow must have value f - k = {}, got {}",
                f - k,
                flow.value()
            )));
        }
        Ok(ResidualWitnessParams {
            f,
            k,
            k_prime,
            flow,
        })
    }

    /// Pad budget k - k' - 1 of the residual witnesses.
    pub fn pad(&self) -> u64 {
        self.k - self.k_prime - 1
    }

    pub fn target(&self) -> u64 {
        self.f - self.k_prime
    }
}

/// Exact residual-witness count of h: over s-t cuts of the residual graph
/// H_F with value w <= k-k'-1, sum over pad sizes x <= k-k'-1-w of C(M, x),
/// where M counts the crossing vertex pairs not occupied by a crossing
/// residual edge. Zero exactly when max-flow(h) >= f-k'.
pub fn residual_witness_count(
    h: &Graph,
    params: &ResidualWitnessParams,
    cap: usize,
) -> Result<BigUint> {
    let n = h.n();
    if n > cap.min(DEFAULT_WITNESS_CAP) {
        return Err(Error::WitnessCapExceeded { n, cap });
    }
    let res = residual(h, &params.flow)?;
    let und: Vec<(usize, usize)> = res.base.g.edges().collect();
    let arcs: Vec<(usize, usize)> = res.base.f.arcs().map(|(e, _)| e).collect();
    let pad_cap = params.pad();
    let (s, t) = (h.s(), h.t());
    let free: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let max_universe = (n as u64).div_ceil(2) * ((n as u64) / 2).max(1);
    let binom = crate::witness::BinomTable::new(max_universe as usize, pad_cap as usize);
    let mut total = BigUint::zero();
    for mask in 0u64..(1 << free.len()) {
        let in_t = |v: usize| -> bool {
            if v == t {
                true
            } else if v == s {
                false
            } else {
                let i = free.iter().position(|&w| w == v).unwrap();
                (mask >> i) & 1 == 1
            }
        };
        let mut w = 0u64;
        let mut occupied = std::collections::BTreeSet::new();
        for &(u, v) in &und {
            if in_t(u) != in_t(v) {
                w += 1;
                occupied.insert((u.min(v), u.max(v)));
            }
        }
        for &(u, v) in &arcs {
            // reversed flow arcs carry weight 2 and cross s->t only
            if !in_t(u) && in_t(v) {
                w += 2;
                occupied.insert((u.min(v), u.max(v)));
            }
        }
        if w > pad_cap {
            continue;
        }
        let t_len = (mask.count_ones() + 1) as u64;
        let s_len = n as u64 - t_len;
        let universe = s_len * t_len - occupied.len() as u64;
        let budget = pad_cap - w;
        for x in 0..=budget.min(universe) {
            total += binom.get(universe as usize, x as usize);
        }
    }
    Ok(total)
}

/// Independent brute-force oracle: enumerates residual witnesses
/// (S, T, E u X) with X built pair by pair.
pub mod brute {
    use super::*;
    use crate::graph::all_st_cuts;

    pub fn residual_witness_count(h: &Graph, params: &ResidualWitnessParams) -> u64 {
        let res = residual(h, &params.flow).expect("valid phase flow");
        let pad_cap = params.pad();
        let mut total = 0u64;
        for cut in all_st_cuts(h.n(), h.s(), h.t()) {
            let mut w = 0u64;
            let mut occupied = std::collections::BTreeSet::new();
            for (u, v) in res.base.g.edges() {
                if cut.in_t(u) != cut.in_t(v) {
                    w += 1;
                    occupied.insert((u.min(v), u.max(v)));
                }
            }
            for ((u, v), wt) in res.base.f.arcs() {
                if cut.in_s(u) && cut.in_t(v) {
                    w += wt;
                    occupied.insert((u.min(v), u.max(v)));
                }
            }
            if w > pad_cap {
                continue;
            }
            // free crossing pairs
            let mut pairs = Vec::new();
            for a in 0..h.n() {
                for b in 0..h.n() {
                    if cut.in_s(a) && cut.in_t(b) {
                        let key = (a.min(b), a.max(b));
                        if !occupied.contains(&key) && !pairs.contains(&key) {
                            pairs.push(key);
                        }
                    }
                }
            }
            // enumerate X subsets of size 0..=pad_cap-w one by one
            fn count_subsets(avail: usize, size: usize) -> u64 {
                if size == 0 {
                    return 1;
                }
                if avail < size {
                    return 0;
                }
                count_subsets(avail - 1, size - 1) + count_subsets(avail - 1, size)
            }
            for x in 0..=(pad_cap - w) {
                total += count_subsets(pairs.len(), x as usize);
            }
        }
        total
    }
}

// ---------------------------------------------------------------------------
// Protocol configuration and preprocessing.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct CommConfig {
    /// Largest pruned n the residual-witness machinery runs at; beyond it
    /// the augmenting-edge fallback is used.
    pub witness_cap: usize,
    /// Seed for the verified sparsifier searches; part of the protocol
    /// description, so transcripts stay deterministic.
    pub protocol_seed: u64,
    /// Test mode: verify the per-round averaging bound with exact counts.
    pub verify_rounds: bool,
}

impl Default for CommConfig {
    fn default() -> Self {
        CommConfig {
            witness_cap: 12,
            protocol_seed: 0,
            verify_rounds: false,
        }
    }
}

/// Pruned instance plus the relabeling back to the original vertex ids.
#[derive(Clone, Debug)]
pub struct PreprocessOutcome {
    pub instance: TwoPartyInstance,
    pub h: Graph,
    /// new id -> original id
    pub back: Vec<usize>,
    /// whether t survived (false means the instance is s-t disconnected)
    pub t_reachable: bool,
}

fn spanning_forest(g: &Graph) -> Vec<(usize, usize)> {
    forest_packing(g, 1)
        .expect("k = 1 always valid")
        .forests
        .first()
        .cloned()
        .unwrap_or_default()
}

fn relabel(g: &Graph, pos: &[usize], n_new: usize, s_new: usize, t_new: usize) -> Graph {
    let mut out = Graph::new(n_new, s_new, t_new).expect("valid terminals");
    for (u, v) in g.edges() {
        if pos[u] != usize::MAX && pos[v] != usize::MAX {
            out.insert_edge(pos[u], pos[v]);
        }
    }
    out
}

/// Both players exchange spanning forests of their private graphs, fold
/// them into the public graph, and drop every vertex unreachable from s.
/// Neither max-flow value changes.
pub fn preprocess(
    instance: &TwoPartyInstance,
    h: &Graph,
    transcript: &mut Transcript,
) -> Result<PreprocessOutcome> {
    let n = instance.n();
    let fa = spanning_forest(&instance.alice);
    transcript.send(Sender::Alice, "preprocess/forest", graph_payload_bits(n, fa.len()));
    let fb = spanning_forest(&instance.bob);
    transcript.send(Sender::Bob, "preprocess/forest", graph_payload_bits(n, fb.len()));
    let mut h2 = h.clone();
    let mut forests = Graph::new(n, instance.s(), instance.t())?;
    for &(u, v) in fa.iter().chain(fb.iter()) {
        h2.insert_edge(u, v);
        forests.insert_edge(u, v);
    }
    let reach = forests.reachable_from(instance.s());
    let t_reachable = reach.contains(instance.t());
    if !t_reachable {
        return Ok(PreprocessOutcome {
            instance: instance.clone(),
            h: h2,
            back: (0..n).collect(),
            t_reachable: false,
        });
    }
    let keep: Vec<usize> = (0..n).filter(|&v| reach.contains(v)).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        pos[v] = i;
    }
    let (s_new, t_new) = (pos[instance.s()], pos[instance.t()]);
    let n_new = keep.len();
    Ok(PreprocessOutcome {
        instance: TwoPartyInstance {
            alice: relabel(&instance.alice, &pos, n_new, s_new, t_new),
            bob: relabel(&instance.bob, &pos, n_new, s_new, t_new),
        },
        h: relabel(&h2, &pos, n_new, s_new, t_new),
        back: keep,
        t_reachable: true,
    })
}

// ---------------------------------------------------------------------------
// The growth protocol.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommMode {
    Witness,
    Fallback,
}

fn nu_of(h: &Graph) -> u64 {
    max_flow_value(&MixedGraph::undirected_only(h.clone()))
}

/// Best strict witness-count reducer among a player's private edges not yet
/// public: the edge minimizing the post-insertion count, ties to the
/// smallest edge.
fn best_private_edge(
    private: &Graph,
    h: &Graph,
    params: &ResidualWitnessParams,
    current: &BigUint,
    cap: usize,
) -> Result<Option<((usize, usize), BigUint)>> {
    let mut best: Option<((usize, usize), BigUint)> = None;
    for (u, v) in private.edges() {
        if h.has_edge(u, v) {
            continue;
        }
        let mut h2 = h.clone();
        h2.insert_edge(u, v);
        let after = residual_witness_count(&h2, params, cap)?;
        if after >= *current {
            continue;
        }
        if best.as_ref().is_none_or(|(_, b)| after < *b) {
            best = Some(((u, v), after));
        }
    }
    Ok(best)
}

#[derive(Clone, Debug)]
pub struct GrowCommOutcome {
    pub h: Graph,
    pub mode: CommMode,
    pub rounds: usize,
}

/// One phase: from max-flow(h) >= f-k to max-flow >= f-k'. Each round both
/// players declare the private edge that best reduces the residual witness
/// count (or "none"), and both get added.
pub fn grow_flow_comm(
    instance: &TwoPartyInstance,
    mut h: Graph,
    f: u64,
    k: u64,
    k_prime: u64,
    transcript: &mut Transcript,
    cfg: &CommConfig,
) -> Result<GrowCommOutcome> {
    let n = instance.n();
    let target = f - k_prime;
    if nu_of(&h) >= target {
        return Ok(GrowCommOutcome {
            h,
            mode: CommMode::Witness,
            rounds: 0,
        });
    }
    if n > cfg.witness_cap {
        return grow_flow_comm_fallback(instance, h, target, transcript);
    }
    // fix the phase flow: f - k paths of the canonical max-flow of h
    let (nu_h, dec) = max_flow(&MixedGraph::undirected_only(h.clone()))?;
    if nu_h < f - k {
        return Err(Error::InvalidParameter(
            "phase precondition violated: max-flow(h) < f - k".into(),
        ));
    }
    let flow = FlowDecomposition {
        paths: dec.paths[..(f - k) as usize].to_vec(),
    };
    let params = ResidualWitnessParams::new(f, k, k_prime, flow)?;
    let mut rounds = 0usize;
    loop {
        if nu_of(&h) >= target {
            return Ok(GrowCommOutcome {
                h,
                mode: CommMode::Witness,
                rounds,
            });
        }
        let count = residual_witness_count(&h, &params, cfg.witness_cap)?;
        assert!(
            !count.is_zero(),
            "residual witnesses must remain while the target is unmet"
        );
        let alice = best_private_edge(&instance.alice, &h, &params, &count, cfg.witness_cap)?;
        let bob = best_private_edge(&instance.bob, &h, &params, &count, cfg.witness_cap)?;
        if cfg.verify_rounds {
            verify_round_bound(instance, &h, &params, &count, &alice, &bob, cfg)?;
        }
        match &alice {
            Some(((u, v), _)) => {
                transcript.send(Sender::Alice, "grow/edge", edge_bits(n));
                h.insert_edge(*u, *v);
            }
            None => transcript.send(Sender::Alice, "grow/none", 0),
        }
        match &bob {
            Some(((u, v), _)) => {
                transcript.send(Sender::Bob, "grow/edge", edge_bits(n));
                h.insert_edge(*u, *v);
            }
            None => transcript.send(Sender::Bob, "grow/none", 0),
        }
        if alice.is_none() && bob.is_none() {
            return Err(Error::PromiseViolation);
        }
        rounds += 1;
    }
}

/// Test-mode check of the averaging argument: the union of both players'
/// candidate edges along a non-circular k-flow of the true residual graph
/// kills every witness at least k'+1 times over, so the best declared edge
/// kills at least a (k'+1)/|Q*| fraction.
fn verify_round_bound(
    instance: &TwoPartyInstance,
    h: &Graph,
    params: &ResidualWitnessParams,
    count: &BigUint,
    alice: &Option<((usize, usize), BigUint)>,
    bob: &Option<((usize, usize), BigUint)>,
    cfg: &CommConfig,
) -> Result<()> {
    let g = instance.union();
    let res = residual(&g, &params.flow)?;
    let (nu_res, dec) = max_flow(&res.base)?;
    if nu_res < params.k {
        // promise does not hold for this instance; nothing to verify
        return Ok(());
    }
    let q_paths = FlowDecomposition {
        paths: dec.paths[..params.k as usize].to_vec(),
    };
    // undirected residual edges used by Q and still missing from h
    let mut q_star = Vec::new();
    for (arc, _) in q_paths.arc_multiset() {
        let (u, v) = (arc.0.min(arc.1), arc.0.max(arc.1));
        if res.base.g.has_edge(u, v) && !h.has_edge(u, v) && !q_star.contains(&(u, v)) {
            q_star.push((u, v));
        }
    }
    if q_star.is_empty() {
        return Ok(());
    }
    let mut kill_sum = BigUint::zero();
    let mut best_kill = BigUint::zero();
    for &(u, v) in &q_star {
        let mut h2 = h.clone();
        h2.insert_edge(u, v);
        let after = residual_witness_count(&h2, params, cfg.witness_cap)?;
        let kill = count - &after.min(count.clone());
        if kill > best_kill {
            best_kill = kill.clone();
        }
        kill_sum += kill;
    }
    let need = BigUint::from(params.k_prime + 1) * count;
    assert!(
        kill_sum >= need,
        "averaging bound failed: total kills below (k'+1) * count"
    );
    let _ = best_kill;
    // the declared argmax dominates the Q* average:
    // declared_best >= (k'+1) * count / |Q*|
    let declared_best = [alice, bob]
        .iter()
        .filter_map(|o| o.as_ref().map(|(_, after)| count - after))
        .max()
        .unwrap_or_else(BigUint::zero);
    let lhs = declared_best * BigUint::from(q_star.len() as u64);
    let rhs = BigUint::from(params.k_prime + 1) * count;
    assert!(lhs >= rhs, "argmax kill below (k'+1)/|Q*| of the count");
    Ok(())
}

/// Fallback phase: one undirected edge leaving the residual reachability
/// set is revealed per round by whichever player owns one (Alice checked
/// first), until the flow target is met.
fn grow_flow_comm_fallback(
    instance: &TwoPartyInstance,
    mut h: Graph,
    target: u64,
    transcript: &mut Transcript,
) -> Result<GrowCommOutcome> {
    let n = instance.n();
    let mut rounds = 0usize;
    loop {
        let mixed = MixedGraph::undirected_only(h.clone());
        let mut net = Network::from_mixed(&mixed);
        let nu = net.max_flow();
        if nu >= target {
            return Ok(GrowCommOutcome {
                h,
                mode: CommMode::Fallback,
                rounds,
            });
        }
        let reach = net.residual_source_side();
        let owner_edge = |g: &Graph| -> Option<(usize, usize)> {
            g.edges()
                .find(|&(u, v)| !h.has_edge(u, v) && (reach.contains(u) != reach.contains(v)))
        };
        rounds += 1;
        if let Some((u, v)) = owner_edge(&instance.alice) {
            transcript.send(Sender::Alice, "grow/fallback-edge", edge_bits(n));
            h.insert_edge(u, v);
            continue;
        }
        transcript.send(Sender::Alice, "grow/none", 0);
        if let Some((u, v)) = owner_edge(&instance.bob) {
            transcript.send(Sender::Bob, "grow/fallback-edge", edge_bits(n));
            h.insert_edge(u, v);
            continue;
        }
        transcript.send(Sender::Bob, "grow/none", 0);
        return Err(Error::PromiseViolation);
    }
}

// ---------------------------------------------------------------------------
// Sparsifier exchange and nu estimation.
// ---------------------------------------------------------------------------

fn exchange_sparsifiers(
    instance: &TwoPartyInstance,
    eps: &Rat,
    seed: u64,
    kind: &'static str,
    transcript: &mut Transcript,
) -> Result<WGraph> {
    let n = instance.n();
    let sa = bounded_weight_sparsifier(&instance.alice, eps, seed)?;
    let wa = round_rat(&sa.graph.max_weight());
    transcript.send(
        Sender::Alice,
        kind,
        weighted_graph_payload_bits(n, sa.graph.m(), wa.max(1)),
    );
    let sb = bounded_weight_sparsifier(&instance.bob, eps, seed ^ 0xB0B)?;
    let wb = round_rat(&sb.graph.max_weight());
    transcript.send(
        Sender::Bob,
        kind,
        weighted_graph_payload_bits(n, sb.graph.m(), wb.max(1)),
    );
    // Shares may overlap. Unit-weight sparsifiers coincide with the private
    // graphs, so shared edges deduplicate exactly and the union is the
    // simple union graph; reweighted outputs fall back to weight sums.
    let unit = sa.graph.max_weight() <= Rat::one() && sb.graph.max_weight() <= Rat::one();
    let mut union = WGraph::new(n);
    if unit {
        let mut seen = std::collections::BTreeSet::new();
        for sg in [&sa, &sb] {
            for ((u, v), w) in sg.graph.edges() {
                if seen.insert((u, v)) {
                    union.add_weight(u, v, w);
                }
            }
        }
    } else {
        for sg in [&sa, &sb] {
            for ((u, v), w) in sg.graph.edges() {
                union.add_weight(u, v, w);
            }
        }
    }
    Ok(union)
}

/// Joint (1 +- eps) approximation of nu(G u F) from exchanged verified
/// sparsifiers of the private graphs. Returns the exact rational value of
/// the exchanged proxy.
pub fn approx_nu_comm(
    instance: &TwoPartyInstance,
    f_part: &WeightedDigraph,
    eps: &Rat,
    seed: u64,
    kind: &'static str,
    transcript: &mut Transcript,
) -> Result<Rat> {
    let union = exchange_sparsifiers(instance, eps, seed, kind, transcript)?;
    crate::flow::rational_mixed_nu(&union, f_part, instance.s(), instance.t())
}

// ---------------------------------------------------------------------------
// large_flow_comm: the unconditional growth wrapper.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct LargeFlowCommOutcome {
    pub h: Graph,
    pub modes: Vec<CommMode>,
    pub recursed: bool,
}

/// Deterministic protocol producing H <= G with nu(H) >= nu(G) - delta.
pub fn large_flow_comm(
    instance: &TwoPartyInstance,
    delta: u64,
    transcript: &mut Transcript,
    cfg: &CommConfig,
) -> Result<LargeFlowCommOutcome> {
    let empty_dir = WeightedDigraph::new(instance.n());
    let empty = || Graph::new(instance.n(), instance.s(), instance.t());
    if delta == 0 || delta as usize > instance.n() {
        return Err(Error::InvalidParameter("delta must lie in [1, n]".into()));
    }
    // coarse estimate f_hat within (1 +- 1/100)
    let f_hat = approx_nu_comm(
        instance,
        &empty_dir,
        &Rat::new(1, 100),
        cfg.protocol_seed,
        "large-flow/nu-coarse",
        transcript,
    )?;
    if f_hat <= Rat::new(99, 100) * Rat::from_integer(delta as i128) {
        return Ok(LargeFlowCommOutcome {
            h: empty()?,
            modes: Vec::new(),
            recursed: false,
        });
    }
    // lambda = delta / (20 f_hat) <= 1/10
    let lambda = Rat::from_integer(delta as i128) / (Rat::from_integer(20) * f_hat);
    debug_assert!(lambda <= Rat::new(1, 10));
    let f = approx_nu_comm(
        instance,
        &empty_dir,
        &lambda.min(Rat::new(99, 100)),
        cfg.protocol_seed ^ 1,
        "large-flow/nu-fine",
        transcript,
    )?;
    if f <= (Rat::one() - lambda) * Rat::from_integer(delta as i128) {
        return Ok(LargeFlowCommOutcome {
            h: empty()?,
            modes: Vec::new(),
            recursed: false,
        });
    }
    // integerize (f, delta) <- (f/(1+lambda), lambda f / 10)
    let f_target = f / (Rat::one() + lambda);
    let delta_target = lambda * f / Rat::from_integer(10);
    let f_int = f_target.ceil().to_integer() as u64;
    let need = (f_target - delta_target).ceil().to_integer().max(0) as u64;
    let delta_int = f_int.saturating_sub(need);

    // pre-process once, then run the halving ladder in the pruned space
    let pre = preprocess(instance, &empty()?, transcript)?;
    if !pre.t_reachable {
        return Ok(LargeFlowCommOutcome {
            h: empty()?,
            modes: Vec::new(),
            recursed: false,
        });
    }
    let mut h = pre.h.clone();
    let mut modes = Vec::new();
    let mut k = f_int;
    while k > delta_int {
        let k_prime = (k / 2).max(delta_int);
        let out = grow_flow_comm(&pre.instance, h, f_int, k, k_prime, transcript, cfg)?;
        h = out.h;
        modes.push(out.mode);
        k = k_prime;
    }
    // lift back to the original labels
    let mut lifted = empty()?;
    for (u, v) in h.edges() {
        lifted.insert_edge(pre.back[u], pre.back[v]);
    }
    Ok(LargeFlowCommOutcome {
        h: lifted,
        modes,
        recursed: true,
    })
}

// ---------------------------------------------------------------------------
// The contraction backend and the end-to-end driver.
// ---------------------------------------------------------------------------

/// Packed residual instance for the contraction routine: each player
/// replaces their residual private graph by an f-forest packing, which
/// preserves the minimum-cut set exactly.
pub struct CommRswAccess<'a> {
    pub packed: TwoPartyInstance,
    pub f_part: WeightedDigraph,
    pub transcript: &'a mut Transcript,
    pub seed: u64,
}

impl RswAccess for CommRswAccess<'_> {
    fn n(&self) -> usize {
        self.packed.n()
    }
    fn s(&self) -> usize {
        self.packed.s()
    }
    fn t(&self) -> usize {
        self.packed.t()
    }
    fn directed(&self) -> WeightedDigraph {
        self.f_part.clone()
    }

    fn sparsifier(&mut self, eps: &Rat) -> Result<SparseGraph> {
        let union = exchange_sparsifiers(
            &self.packed,
            eps,
            self.seed,
            "rsw/sparsifier",
            self.transcript,
        )?;
        Ok(SparseGraph {
            graph: union,
            eps: *eps,
        })
    }

    fn discover_crossing(&mut self, partition: &Partition) -> Result<Vec<(usize, usize)>> {
        let n = self.packed.n();
        let id = partition.block_of();
        let mut out = std::collections::BTreeSet::new();
        let send = |g: &Graph, sender: Sender, t: &mut Transcript| {
            let crossing: Vec<(usize, usize)> =
                g.edges().filter(|&(u, v)| id[u] != id[v]).collect();
            t.send(
                sender,
                "rsw/crossing-edges",
                graph_payload_bits(n, crossing.len()),
            );
            crossing
        };
        for e in send(&self.packed.alice, Sender::Alice, self.transcript) {
            out.insert(e);
        }
        for e in send(&self.packed.bob, Sender::Bob, self.transcript) {
            out.insert(e);
        }
        Ok(out.into_iter().collect())
    }
}

/// Packing preprocessing for the contraction phase: a joint coarse flow
/// estimate fixes k, then each player locally packs k forests. Also hands
/// back the exchanged proxy union so a zero estimate can be certified from
/// jointly known edges alone.
pub fn rsw_comm_preprocess(
    instance: &TwoPartyInstance,
    f_part: &WeightedDigraph,
    transcript: &mut Transcript,
    seed: u64,
) -> Result<(TwoPartyInstance, u64, WGraph)> {
    let proxy_union = exchange_sparsifiers(
        instance,
        &Rat::new(1, 100),
        seed,
        "rsw/nu-proxy",
        transcript,
    )?;
    let nu_proxy =
        crate::flow::rational_mixed_nu(&proxy_union, f_part, instance.s(), instance.t())?;
    let f_pack = (Rat::from_integer(99) * nu_proxy).floor().to_integer().max(0) as u64;
    if f_pack == 0 {
        return Ok((instance.clone(), 0, proxy_union));
    }
    let pa = forest_packing(&instance.alice, f_pack as usize)?;
    let pb = forest_packing(&instance.bob, f_pack as usize)?;
    Ok((
        TwoPartyInstance {
            alice: pa.union_graph(instance.n(), instance.s(), instance.t()),
            bob: pb.union_graph(instance.n(), instance.s(), instance.t()),
        },
        f_pack,
        proxy_union,
    ))
}

#[derive(Clone, Debug)]
pub struct CommRun {
    pub value: u64,
    pub cut: Cut,
    pub transcript: Transcript,
    pub modes: Vec<CommMode>,
    pub rsw: Option<RswRun>,
}

/// Zero-value cut from a zero-weight proxy: the s-reachable set of the
/// proxy union plus the directed part certifies the cut exactly.
fn zero_cut(
    instance: &TwoPartyInstance,
    union: &WGraph,
    f_part: &WeightedDigraph,
) -> Result<Cut> {
    let n = instance.n();
    let mut adj = vec![Vec::new(); n];
    for ((u, v), _) in union.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    for ((u, v), _) in f_part.arcs() {
        adj[u].push(v);
    }
    let mut seen = VertexSet::singleton(n, instance.s());
    let mut stack = vec![instance.s()];
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen.contains(u) {
                seen.insert(u);
                stack.push(u);
            }
        }
    }
    Cut::from_source_side(&seen, instance.s(), instance.t())
}

/// End-to-end deterministic protocol: exact minimum s-t cut of the union
/// graph, with exact bit accounting.
pub fn min_cut_comm(instance: &TwoPartyInstance, cfg: &CommConfig) -> Result<CommRun> {
    let mut transcript = Transcript::new();
    let empty_dir = WeightedDigraph::new(instance.n());

    // constant-factor estimate; a zero proxy certifies a zero cut
    let nu_hat_sparse = exchange_sparsifiers(
        instance,
        &Rat::new(1, 100),
        cfg.protocol_seed ^ 0xA11CE,
        "driver/nu-hat",
        &mut transcript,
    )?;
    let nu_hat =
        crate::flow::rational_mixed_nu(&nu_hat_sparse, &empty_dir, instance.s(), instance.t())?;
    if nu_hat.is_zero() {
        let cut = zero_cut(instance, &nu_hat_sparse, &empty_dir)?;
        return Ok(CommRun {
            value: 0,
            cut,
            transcript,
            modes: Vec::new(),
            rsw: None,
        });
    }

    // delta = nu_hat^(6/7), clamped into [1, n]
    let delta = (nu_hat.to_f64().unwrap().powf(6.0 / 7.0).floor() as u64)
        .clamp(1, instance.n() as u64);
    let lf = large_flow_comm(instance, delta, &mut transcript, cfg)?;

    // both players fix the canonical flow F of H and move to the residual
    let (_, dec) = max_flow(&MixedGraph::undirected_only(lf.h.clone()))?;
    let flow_edges = dec.undirected_edges()?;
    let mut alice_res = instance.alice.clone();
    let mut bob_res = instance.bob.clone();
    for &(u, v) in &flow_edges {
        alice_res.remove_edge(u, v);
        bob_res.remove_edge(u, v);
    }
    let rev = dec.as_digraph(instance.n(), 1).reversed_with_weight(2);
    let residual_instance = TwoPartyInstance {
        alice: alice_res,
        bob: bob_res,
    };

    // packing preprocessing, then the contraction routine
    let (packed, f_pack, proxy_union) =
        rsw_comm_preprocess(&residual_instance, &rev, &mut transcript, cfg.protocol_seed ^ 5)?;
    if f_pack == 0 {
        // residual value is zero: H already carries a maximum flow, and the
        // exchanged proxy certifies a zero residual cut
        let cut = zero_cut(&residual_instance, &proxy_union, &rev)?;
        return Ok(CommRun {
            value: dec.value(),
            cut,
            transcript,
            modes: lf.modes,
            rsw: None,
        });
    }
    let eps = choose_eps_comm(f_pack);
    let mut access = CommRswAccess {
        packed,
        f_part: rev,
        transcript: &mut transcript,
        seed: cfg.protocol_seed ^ 9,
    };
    let run = rsw_min_cut(&mut access, &eps)?;
    Ok(CommRun {
        value: dec.value() + run.value,
        cut: run.cut.clone(),
        transcript,
        modes: lf.modes,
        rsw: Some(run),
    })
}
