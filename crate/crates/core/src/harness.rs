//! End-to-end drivers, baselines, instance generators, experiment sweeps
//! and CSV reporting. Correctness flags are always computed against the
//! local exact solver, never self-reported by the algorithms.

use std::time::Instant;

use num_traits::Zero;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::comm::{min_cut_comm, CommConfig, TwoPartyInstance};
use crate::error::{Error, Result};
use crate::flow::{max_flow, min_cut, Network};
use crate::graph::{
    cut_weight_graph, Cut, Graph, MixedGraph, Partition, Rat, WGraph,
};
use crate::grow::{large_flow, GrowConfig, GrowMode};
use crate::oracle::{find_edge, learn_contracted, CutOracle, MaskedSurface};
use crate::rsw::{choose_eps_cut_query, rsw_min_cut, CutQueryAccess};
use crate::sparsify::{
    cut_quality_ok, round_rat, sparse_mixed_nu, sparsify_by_queries, sparsify_exact, SparseGraph,
};

// ---------------------------------------------------------------------------
// Generators.
// ---------------------------------------------------------------------------

/// Instance families. All are deterministic under the seed.
#[derive(Clone, Debug, PartialEq)]
pub enum GenKind {
    Path,
    Complete,
    Er { p: f64 },
    /// Prescribed max-flow value: nu disjoint length-2 s-t paths plus
    /// random internal edges that cannot raise the terminal degrees.
    FlowGadget { nu: u64 },
    /// Two dense clusters joined by a few bridges.
    TwoCluster { bridges: usize },
}

pub fn generate(kind: &GenKind, n: usize, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter("need at least 2 vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n, 0, n - 1)?;
    match kind {
        GenKind::Path => {
            for v in 0..n - 1 {
                g.insert_edge(v, v + 1);
            }
        }
        GenKind::Complete => {
            for u in 0..n {
                for v in u + 1..n {
                    g.insert_edge(u, v);
                }
            }
        }
        GenKind::Er { p } => {
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(*p) {
                        g.insert_edge(u, v);
                    }
                }
            }
        }
        GenKind::FlowGadget { nu } => {
            let nu = *nu as usize;
            if nu == 0 || nu > n - 2 {
                return Err(Error::InvalidParameter(
                    "flow gadget needs 1 <= nu <= n - 2".into(),
                ));
            }
            for i in 1..=nu {
                g.insert_edge(0, i);
                g.insert_edge(i, n - 1);
            }
            // internal decoys keep nu pinned at the terminal degrees
            for u in 1..n - 1 {
                for v in u + 1..n - 1 {
                    if !g.has_edge(u, v) && rng.gen_bool(0.25) {
                        g.insert_edge(u, v);
                    }
                }
            }
        }
        GenKind::TwoCluster { bridges } => {
            let half = n / 2;
            for u in 0..half {
                for v in u + 1..half {
                    if rng.gen_bool(0.7) {
                        g.insert_edge(u, v);
                    }
                }
            }
            for u in half..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.7) {
                        g.insert_edge(u, v);
                    }
                }
            }
            for b in 0..*bridges {
                let u = b % half;
                let v = half + (b % (n - half));
                g.insert_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Random edge split of a generated graph; a small fraction of edges lands
/// in both shares.
pub fn generate_two_party(kind: &GenKind, n: usize, seed: u64) -> Result<TwoPartyInstance> {
    let g = generate(kind, n, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5917);
    let mut alice = Graph::new(n, 0, n - 1)?;
    let mut bob = Graph::new(n, 0, n - 1)?;
    for (u, v) in g.edges() {
        match rng.gen_range(0..10) {
            0 => {
                alice.insert_edge(u, v);
                bob.insert_edge(u, v);
            }
            x if x < 5 => {
                alice.insert_edge(u, v);
            }
            _ => {
                bob.insert_edge(u, v);
            }
        }
    }
    TwoPartyInstance::new(alice, bob)
}

// ---------------------------------------------------------------------------
// Run reports.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct RunReport {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub nu_reference: u64,
    pub value: u64,
    pub correct: bool,
    pub sparsifier_ok: bool,
    pub mode: String,
    pub queries_total: u64,
    pub bits_total: u64,
    /// Sorted (tag, count) breakdown: query tags or message kinds.
    pub ledger: Vec<(String, u64)>,
    pub seed: u64,
    pub wall_ms: u64,
}

impl RunReport {
    pub fn csv_header() -> &'static str {
        "algorithm,n,m,nu,value,correct,sparsifier_ok,mode,queries,bits,seed,ledger"
    }

    /// Deterministic row: wall time is deliberately excluded so reruns are
    /// byte-identical.
    pub fn csv_row(&self) -> String {
        let ledger = self
            .ledger
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},\"{}\"",
            self.algorithm,
            self.n,
            self.m,
            self.nu_reference,
            self.value,
            self.correct,
            self.sparsifier_ok,
            self.mode,
            self.queries_total,
            self.bits_total,
            self.seed,
            ledger
        )
    }
}

fn reference_min_cut(g: &Graph) -> u64 {
    let (v, _) = min_cut(&MixedGraph::undirected_only(g.clone())).expect("reference solver");
    v
}

/// Post-hoc quality check of a produced sparsifier against the graph it
/// approximates (the harness holds the reference; the algorithm never did).
pub fn sparsifier_verified(target: &WGraph, sp: &SparseGraph, seed: u64) -> bool {
    cut_quality_ok(target, &sp.graph, &sp.eps, seed)
}

// ---------------------------------------------------------------------------
// The cut-query driver and baselines.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct CqConfig {
    pub seed: u64,
    pub exact_sparsifier: bool,
    pub witness_cap: usize,
}

impl Default for CqConfig {
    fn default() -> Self {
        CqConfig {
            seed: 0,
            exact_sparsifier: false,
            witness_cap: 12,
        }
    }
}

/// Full pipeline in the cut-query model: grow a large flow, fix its
/// decomposition, and contract-and-solve the residual. Reports exact query
/// accounting and a correctness flag computed against the local solver.
pub fn min_cut_cq_driver(hidden: &Graph, cfg: &CqConfig) -> Result<RunReport> {
    let started = Instant::now();
    let n = hidden.n();
    let reference = reference_min_cut(hidden);
    let mut oracle = CutOracle::new(hidden.clone());
    let grow_cfg = GrowConfig {
        witness_cap: cfg.witness_cap,
        seed: cfg.seed,
        exact_sparsifier: cfg.exact_sparsifier,
        verify_kill_fractions: false,
    };
    let delta = ((n as f64).powf(0.8).ceil() as u64).clamp(1, n as u64);

    let mut sparsifiers: Vec<(WGraph, SparseGraph)> = Vec::new();
    let target_full = WGraph::from_unit_graph(hidden);

    let outcome = (|| -> Result<(u64, Cut, String)> {
        let lf = large_flow(&mut oracle, delta, &grow_cfg)?;
        sparsifiers.push((target_full.clone(), lf.sparsifier.sparse.clone()));
        let mode = if !lf.recursed {
            "trivial".to_string()
        } else if lf.stages.iter().any(|s| s.mode == GrowMode::Fallback) {
            "fallback".to_string()
        } else {
            "witness".to_string()
        };
        // fix the flow and move to the residual mixed graph
        let (_, dec) = max_flow(&MixedGraph::undirected_only(lf.h.clone()))?;
        let flow_edges = dec.undirected_edges()?;
        let mut mask = Graph::new(n, hidden.s(), hidden.t())?;
        for &(u, v) in &flow_edges {
            mask.insert_edge(u, v);
        }
        let rev = dec.as_digraph(n, 1).reversed_with_weight(2);
        let residual_target = {
            let mut w = WGraph::new(n);
            for (u, v) in hidden.edges() {
                if !mask.has_edge(u, v) {
                    w.add_weight(u, v, Rat::from_integer(1));
                }
            }
            w
        };

        // constant-factor proxy for the residual value
        let mut surface = MaskedSurface::new(&mut oracle, mask.clone());
        let proxy = if cfg.exact_sparsifier {
            sparsify_exact(&mut surface, "driver/nu-proxy")?
        } else {
            sparsify_by_queries(&mut surface, &Rat::new(1, 100), cfg.seed ^ 3, "driver/nu-proxy")?
        };
        sparsifiers.push((residual_target.clone(), proxy.sparse.clone()));
        let nu_proxy = sparse_mixed_nu(&proxy.sparse, &rev, hidden.s(), hidden.t())?;
        if nu_proxy.is_zero() {
            // residual value zero: H carries a maximum flow already, and the
            // learned proxy certifies the reachability cut
            let mut adj = vec![Vec::new(); n];
            for ((u, v), _) in proxy.sparse.graph.edges() {
                adj[u].push(v);
                adj[v].push(u);
            }
            for ((u, v), _) in rev.arcs() {
                adj[u].push(v);
            }
            let mut seen = VertexSet::singleton(n, hidden.s());
            let mut stack = vec![hidden.s()];
            while let Some(v) = stack.pop() {
                for &u in &adj[v] {
                    if !seen.contains(u) {
                        seen.insert(u);
                        stack.push(u);
                    }
                }
            }
            let cut = Cut::from_source_side(&seen, hidden.s(), hidden.t())?;
            return Ok((dec.value(), cut, mode));
        }
        let nu_est = round_rat(&nu_proxy).max(1);
        let eps = choose_eps_cut_query(n, nu_est);
        let mut surface = MaskedSurface::new(&mut oracle, mask);
        let mut access = CutQueryAccess {
            surface: &mut surface,
            f: rev,
            exact_sparsifier: cfg.exact_sparsifier,
            seed: cfg.seed ^ 7,
        };
        let run = rsw_min_cut(&mut access, &eps)?;
        sparsifiers.push((residual_target, run.sparsifier.clone()));
        Ok((dec.value() + run.value, run.cut, mode))
    })();

    let (value, cut, mode, failed) = match outcome {
        Ok((v, c, m)) => (v, c, m, false),
        Err(Error::PromiseViolation)
        | Err(Error::TerminalsInOneBlock)
        | Err(Error::SparsifierUnusable) => {
            // an unverified sparsifier misled the pipeline; surface the
            // failure in the report rather than silently retrying
            let side = VertexSet::singleton(n, hidden.s());
            (
                u64::MAX,
                Cut::from_source_side(&side, hidden.s(), hidden.t())?,
                "failed".to_string(),
                true,
            )
        }
        Err(e) => return Err(e),
    };

    let sparsifier_ok = !failed
        && sparsifiers
            .iter()
            .all(|(target, sp)| sparsifier_verified(target, sp, cfg.seed ^ 0xC0DE));
    let correct = !failed
        && value == reference
        && cut_weight_graph(hidden, &cut)? == reference;
    Ok(RunReport {
        algorithm: "cq".to_string(),
        n,
        m: hidden.m(),
        nu_reference: reference,
        value: if failed { 0 } else { value },
        correct,
        sparsifier_ok,
        mode,
        queries_total: oracle.ledger().total(),
        bits_total: 0,
        ledger: oracle
            .ledger()
            .tags()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        seed: cfg.seed,
        wall_ms: started.elapsed().as_millis() as u64,
    })
}

/// Baseline: repeatedly discover an edge leaving the residual reachability
/// set of the learned graph and augment, until the reachability cut is
/// certified. Exact, with roughly n * nu found-edge discoveries.
pub fn baseline_augmenting(hidden: &Graph, seed: u64) -> Result<RunReport> {
    let started = Instant::now();
    let n = hidden.n();
    let reference = reference_min_cut(hidden);
    let mut oracle = CutOracle::new(hidden.clone());
    let mut learned = Graph::new(n, hidden.s(), hidden.t())?;
    let (value, cut) = loop {
        let mixed = MixedGraph::undirected_only(learned.clone());
        let mut net = Network::from_mixed(&mixed);
        let nu = net.max_flow();
        let reach = net.residual_source_side();
        let rest = reach.complement();
        if rest.is_empty() {
            break (nu, Cut::from_source_side(&reach, hidden.s(), hidden.t())?);
        }
        let mut view = MaskedSurface::new(&mut oracle, learned.clone());
        match find_edge(&mut view, &reach, &rest, "baseline/augment")? {
            Some((u, v)) => {
                learned.insert_edge(u, v);
            }
            None => break (nu, Cut::from_source_side(&reach, hidden.s(), hidden.t())?),
        }
    };
    let correct = value == reference && cut_weight_graph(hidden, &cut)? == reference;
    Ok(RunReport {
        algorithm: "baseline-aug".to_string(),
        n,
        m: hidden.m(),
        nu_reference: reference,
        value,
        correct,
        sparsifier_ok: true,
        mode: "exact".to_string(),
        queries_total: oracle.ledger().total(),
        bits_total: 0,
        ledger: oracle
            .ledger()
            .tags()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        seed,
        wall_ms: started.elapsed().as_millis() as u64,
    })
}

/// Baseline: learn the whole graph through the oracle and solve locally.
pub fn baseline_learn_all(hidden: &Graph, seed: u64) -> Result<RunReport> {
    let started = Instant::now();
    let n = hidden.n();
    let reference = reference_min_cut(hidden);
    let mut oracle = CutOracle::new(hidden.clone());
    let edges = learn_contracted(&mut oracle, &Partition::singletons(n), "baseline/learn")?;
    let mut g = Graph::new(n, hidden.s(), hidden.t())?;
    for (u, v) in edges {
        g.insert_edge(u, v);
    }
    let (value, cut) = min_cut(&MixedGraph::undirected_only(g))?;
    let correct = value == reference && cut_weight_graph(hidden, &cut)? == reference;
    Ok(RunReport {
        algorithm: "baseline-learn".to_string(),
        n,
        m: hidden.m(),
        nu_reference: reference,
        value,
        correct,
        sparsifier_ok: true,
        mode: "exact".to_string(),
        queries_total: oracle.ledger().total(),
        bits_total: 0,
        ledger: oracle
            .ledger()
            .tags()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        seed,
        wall_ms: started.elapsed().as_millis() as u64,
    })
}

/// Communication-model driver wrapper with reference checking.
pub fn min_cut_comm_driver(
    instance: &TwoPartyInstance,
    cfg: &CommConfig,
    seed: u64,
) -> Result<RunReport> {
    let started = Instant::now();
    let union = instance.union();
    let reference = reference_min_cut(&union);
    let run = min_cut_comm(instance, cfg)?;
    let correct =
        run.value == reference && cut_weight_graph(&union, &run.cut)? == reference;
    Ok(RunReport {
        algorithm: "comm".to_string(),
        n: union.n(),
        m: union.m(),
        nu_reference: reference,
        value: run.value,
        correct,
        sparsifier_ok: true,
        mode: if run
            .modes.contains(&crate::comm::CommMode::Fallback)
        {
            "fallback".to_string()
        } else {
            "witness".to_string()
        },
        queries_total: 0,
        bits_total: run.transcript.total_bits(),
        ledger: run
            .transcript
            .by_kind()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        seed,
        wall_ms: started.elapsed().as_millis() as u64,
    })
}

// ---------------------------------------------------------------------------
// Sweeps.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub enum SweepAlgorithm {
    Cq { exact: bool },
    BaselineAug,
    BaselineLearn,
    Comm,
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub algorithms: Vec<SweepAlgorithm>,
    pub instances: Vec<(GenKind, usize)>,
    pub seeds: Vec<u64>,
}

impl SweepSpec {
    /// Line format: `alg <name>`, `inst <kind> <n> [params]`, `seeds <s>...`.
    /// Blank lines and `#` comments are skipped; errors carry line numbers.
    pub fn parse(text: &str) -> Result<SweepSpec> {
        let mut spec = SweepSpec {
            algorithms: Vec::new(),
            instances: Vec::new(),
            seeds: Vec::new(),
        };
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let fail = |msg: &str| Error::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            match toks[0] {
                "alg" => {
                    if toks.len() != 2 {
                        return Err(fail("expected `alg <name>`"));
                    }
                    spec.algorithms.push(match toks[1] {
                        "cq" => SweepAlgorithm::Cq { exact: false },
                        "cq-exact" => SweepAlgorithm::Cq { exact: true },
                        "baseline-aug" => SweepAlgorithm::BaselineAug,
                        "baseline-learn" => SweepAlgorithm::BaselineLearn,
                        "comm" => SweepAlgorithm::Comm,
                        other => return Err(fail(&format!("unknown algorithm `{other}`"))),
                    });
                }
                "inst" => {
                    if toks.len() < 3 {
                        return Err(fail("expected `inst <kind> <n> [params]`"));
                    }
                    let n: usize = toks[2]
                        .parse()
                        .map_err(|_| fail("instance size must be an integer"))?;
                    let kind = match toks[1] {
                        "path" => GenKind::Path,
                        "complete" => GenKind::Complete,
                        "er" => {
                            let p: f64 = toks
                                .get(3)
                                .ok_or_else(|| fail("er needs a probability"))?
                                .parse()
                                .map_err(|_| fail("invalid probability"))?;
                            GenKind::Er { p }
                        }
                        "gadget" => {
                            let nu: u64 = toks
                                .get(3)
                                .ok_or_else(|| fail("gadget needs a flow value"))?
                                .parse()
                                .map_err(|_| fail("invalid flow value"))?;
                            GenKind::FlowGadget { nu }
                        }
                        "cluster" => {
                            let b: usize = toks
                                .get(3)
                                .ok_or_else(|| fail("cluster needs a bridge count"))?
                                .parse()
                                .map_err(|_| fail("invalid bridge count"))?;
                            GenKind::TwoCluster { bridges: b }
                        }
                        other => return Err(fail(&format!("unknown instance kind `{other}`"))),
                    };
                    spec.instances.push((kind, n));
                }
                "seeds" => {
                    for t in &toks[1..] {
                        spec.seeds.push(
                            t.parse()
                                .map_err(|_| fail(&format!("invalid seed `{t}`")))?,
                        );
                    }
                }
                other => return Err(fail(&format!("unknown directive `{other}`"))),
            }
        }
        if spec.algorithms.is_empty() || spec.instances.is_empty() || spec.seeds.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "sweep needs at least one alg, inst and seed".into(),
            });
        }
        Ok(spec)
    }
}

fn run_one(
    alg: &SweepAlgorithm,
    kind: &GenKind,
    n: usize,
    seed: u64,
    witness_cap: usize,
) -> Result<RunReport> {
    match alg {
        SweepAlgorithm::Cq { exact } => {
            let g = generate(kind, n, seed)?;
            min_cut_cq_driver(
                &g,
                &CqConfig {
                    seed,
                    exact_sparsifier: *exact,
                    witness_cap,
                },
            )
        }
        SweepAlgorithm::BaselineAug => baseline_augmenting(&generate(kind, n, seed)?, seed),
        SweepAlgorithm::BaselineLearn => baseline_learn_all(&generate(kind, n, seed)?, seed),
        SweepAlgorithm::Comm => {
            let inst = generate_two_party(kind, n, seed)?;
            min_cut_comm_driver(
                &inst,
                &CommConfig {
                    witness_cap,
                    protocol_seed: seed,
                    verify_rounds: false,
                },
                seed,
            )
        }
    }
}

/// Runs the full cross product and renders one CSV row per run, in stable
/// (algorithm, instance, seed) order regardless of execution order.
pub fn sweep(spec: &SweepSpec, witness_cap: usize) -> Result<(String, Vec<RunReport>)> {
    let mut jobs = Vec::new();
    for (ai, alg) in spec.algorithms.iter().enumerate() {
        for (ii, (kind, n)) in spec.instances.iter().enumerate() {
            for &seed in &spec.seeds {
                jobs.push((ai, ii, alg.clone(), kind.clone(), *n, seed));
            }
        }
    }
    #[cfg(feature = "parallel")]
    let results: Vec<Result<(usize, usize, u64, RunReport)>> = {
        use rayon::prelude::*;
        jobs.par_iter()
            .map(|(ai, ii, alg, kind, n, seed)| {
                run_one(alg, kind, *n, *seed, witness_cap).map(|r| (*ai, *ii, *seed, r))
            })
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<(usize, usize, u64, RunReport)>> = jobs
        .iter()
        .map(|(ai, ii, alg, kind, n, seed)| {
            run_one(alg, kind, *n, *seed, witness_cap).map(|r| (*ai, *ii, *seed, r))
        })
        .collect();
    let mut rows = Vec::new();
    for r in results {
        rows.push(r?);
    }
    rows.sort_by_key(|(ai, ii, seed, _)| (*ai, *ii, *seed));
    let mut csv = String::from(RunReport::csv_header());
    csv.push('\n');
    let mut reports = Vec::new();
    for (_, _, _, report) in rows {
        csv.push_str(&report.csv_row());
        csv.push('\n');
        reports.push(report);
    }
    Ok((csv, reports))
}

/// Debug dump of one growth run at full verification: per accepted edge,
/// the stage parameters, the ladder rung, the potential gap and the exact
/// witness kill fraction, followed by the unit paths of the final flow.
pub fn grow_debug_csv(hidden: &Graph, delta: u64, seed: u64, witness_cap: usize) -> Result<String> {
    let mut oracle = CutOracle::new(hidden.clone());
    let cfg = GrowConfig {
        witness_cap,
        seed,
        exact_sparsifier: true,
        verify_kill_fractions: hidden.n() <= witness_cap,
    };
    let out = large_flow(&mut oracle, delta, &cfg)?;
    let mut csv = String::from("k,k_prime,delta,edge_u,edge_v,gap,kill_fraction\n");
    for s in &out.iter_stats {
        let kf = s
            .kill_fraction
            .as_ref()
            .map(|f| f.to_string())
            .unwrap_or_default();
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            s.k, s.k_prime, s.delta, s.edge.0, s.edge.1, s.gap, kf
        ));
    }
    let (_, dec) = max_flow(&MixedGraph::undirected_only(out.h.clone()))?;
    csv.push_str(&dec.paths_csv());
    Ok(csv)
}

/// Quick invariant suite for the `verify` CLI verb: a fast cross-section of
/// the identities the integration tests exercise in depth. Returns one
/// (name, passed) row per check.
pub fn verify_suite(seed: u64) -> Result<Vec<(String, bool)>> {
    use crate::flow::{cut_identity_check, residual};
    use crate::graph::{all_st_cuts, rat};
    use crate::packing::forest_packing;
    use crate::sparsify::{bounded_weight_sparsifier, resistance_profile};
    use crate::witness::{brute, witness_count, WitnessParams};
    use num_traits::One;

    let mut rows: Vec<(String, bool)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut ok = true;
    for _ in 0..10 {
        let n = rng.gen_range(4..=9);
        let g = generate(&GenKind::Er { p: 0.5 }, n, rng.gen())?;
        let m = MixedGraph::undirected_only(g.clone());
        let (v, dec) = max_flow(&m)?;
        let res = residual(&g, &dec)?;
        ok &= dec.value() + crate::flow::max_flow_value(&res.base) == v;
        for cut in all_st_cuts(n, 0, n - 1) {
            ok &= cut_identity_check(&g, &dec, &cut)?;
        }
    }
    rows.push(("flow residual identity and flow sum".into(), ok));

    let mut ok = true;
    for _ in 0..10 {
        let n = rng.gen_range(3..=8);
        let g = generate(&GenKind::Er { p: 0.5 }, n, rng.gen())?;
        let k = rng.gen_range(1..=4);
        let p = forest_packing(&g, k)?;
        let pg = p.union_graph(n, 0, n - 1);
        for cut in all_st_cuts(n, 0, n - 1) {
            let orig = cut_weight_graph(&g, &cut)?;
            let packed = cut_weight_graph(&pg, &cut)?;
            ok &= if orig <= k as u64 {
                orig == packed
            } else {
                packed >= k as u64
            };
        }
    }
    rows.push(("forest packing preserves small cuts".into(), ok));

    let mut ok = true;
    for _ in 0..30 {
        let n = rng.gen_range(3..=6);
        let g = generate(&GenKind::Er { p: 0.45 }, n, rng.gen())?;
        let f = rng.gen_range(1..=(n as u64 - 1));
        let k = rng.gen_range(1..=f);
        let kp = rng.gen_range(0..k);
        let params = WitnessParams::new(f, k, kp)?;
        let count = witness_count(&g, &params, 22)?;
        let nu = crate::flow::max_flow_value(&MixedGraph::undirected_only(g.clone()));
        ok &= count.is_zero() == (nu >= f - kp);
        ok &= count == num_bigint::BigUint::from(brute::witness_count(&g, &params));
    }
    rows.push(("witness count invariant and brute-force match".into(), ok));

    let g = generate(&GenKind::Complete, 12, 0)?;
    let profile = resistance_profile(&WGraph::from_unit_graph(&g))?;
    rows.push((
        "effective resistances sum to n - 1".into(),
        profile.forster_gap() < 1e-9,
    ));
    let sg = bounded_weight_sparsifier(&g, &rat(1, 2), seed)?;
    rows.push((
        "bounded-weight sparsifier passes the cut check".into(),
        sg.graph.max_weight() == Rat::one()
            && cut_quality_ok(&WGraph::from_unit_graph(&g), &sg.graph, &sg.eps, seed),
    ));

    let mut ok = true;
    for _ in 0..5 {
        let n = rng.gen_range(5..=12);
        let g = generate(&GenKind::Er { p: 0.5 }, n, rng.gen())?;
        let r = min_cut_cq_driver(
            &g,
            &CqConfig {
                seed: rng.gen(),
                ..CqConfig::default()
            },
        )?;
        ok &= !r.sparsifier_ok || r.correct;
        let inst = generate_two_party(&GenKind::Er { p: 0.5 }, n, rng.gen())?;
        let rc = min_cut_comm_driver(&inst, &CommConfig::default(), seed)?;
        ok &= rc.correct;
    }
    rows.push(("drivers agree with the reference solver".into(), ok));

    Ok(rows)
}

/// Query-count trend table on the prescribed-flow family with nu = n/2:
/// one row per n, one column per algorithm.
pub fn trend_report(sizes: &[usize], seed: u64, witness_cap: usize) -> Result<String> {
    let mut out = String::from("n,nu,cq,baseline_aug,baseline_learn\n");
    for &n in sizes {
        let kind = GenKind::FlowGadget { nu: (n / 2) as u64 };
        let g = generate(&kind, n, seed)?;
        let cq = min_cut_cq_driver(
            &g,
            &CqConfig {
                seed,
                exact_sparsifier: false,
                witness_cap,
            },
        )?;
        let aug = baseline_augmenting(&g, seed)?;
        let learn = baseline_learn_all(&g, seed)?;
        out.push_str(&format!(
            "{n},{},{},{},{}\n",
            n / 2,
            cq.queries_total,
            aug.queries_total,
            learn.queries_total
        ));
    }
    Ok(out)
}
