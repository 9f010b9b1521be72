//! Witness counting over explicit subgraphs: exact counts of padded
//! small-cut certificates, the per-vertex potential they induce, assignment
//! families for interval matching, and the FindLongEdge query subroutine.
//!
//! A witness of H (for parameters f, k') is a tuple (S, T, Y): an s-t cut
//! of value at most f-k'-1 together with a set Y of exactly f-k'-1
//! crossing vertex pairs containing all crossing edges. Witnesses exist
//! exactly while max-flow(H) < f-k', so driving their count to zero is the
//! same as certifying a flow of value f-k'.
//!
//! Counts use exact big-integer arithmetic: the inequalities downstream
//! compare ratios of astronomically large binomials and must not drift.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, Rat};
use crate::oracle::{find_edge, find_edge_found_cost_bound, QuerySurface};

/// Default ceiling on n for the 2^(n-2) cut enumeration behind counts.
pub const DEFAULT_WITNESS_CAP: usize = 22;

/// Flow-growth parameters: target flow f, current deficit k, target
/// deficit k'.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessParams {
    pub f: u64,
    pub k: u64,
    pub k_prime: u64,
}

impl WitnessParams {
    pub fn new(f: u64, k: u64, k_prime: u64) -> Result<Self> {
        if !(k_prime < k && k <= f) {
            return Err(Error::InvalidParameter(format!(
                "need k' < k <= f, got f={f} k={k} k'={k_prime}"
            )));
        }
        Ok(WitnessParams { f, k, k_prime })
    }

    /// The pad size f - k' - 1 (|Y| of every witness).
    pub fn pad(&self) -> u64 {
        self.f - self.k_prime - 1
    }

    /// The flow value that kills all witnesses.
    pub fn target(&self) -> u64 {
        self.f - self.k_prime
    }
}

/// Pascal table of C(m, r) for m <= max_m, r <= max_r.
pub(crate) struct BinomTable {
    rows: Vec<Vec<BigUint>>,
}

impl BinomTable {
    pub(crate) fn new(max_m: usize, max_r: usize) -> Self {
        let mut rows = Vec::with_capacity(max_m + 1);
        for m in 0..=max_m {
            let mut row = vec![BigUint::one()];
            for r in 1..=max_r.min(m) {
                // C(m, r) = C(m, r-1) * (m - r + 1) / r
                let prev: &BigUint = &row[r - 1];
                row.push(prev * BigUint::from(m - r + 1) / BigUint::from(r));
            }
            rows.push(row);
        }
        BinomTable { rows }
    }

    pub(crate) fn get(&self, m: usize, r: usize) -> BigUint {
        if r > m {
            BigUint::zero()
        } else {
            self.rows[m][r].clone()
        }
    }
}

/// Per-edge crossing classification against a mask over the free vertices.
#[derive(Clone, Copy, Debug)]
enum EdgeKind {
    Always,
    /// Neighbor of s: crosses iff the free bit is on the t side.
    SBit(u32),
    /// Neighbor of t: crosses iff the free bit is on the s side.
    TBit(u32),
    /// Crosses iff the two free bits differ.
    Pair(u32, u32),
}

struct CutSpace {
    n: usize,
    free: Vec<usize>,
    kinds: Vec<EdgeKind>,
}

impl CutSpace {
    fn new(h: &Graph) -> Self {
        let (n, s, t) = (h.n(), h.s(), h.t());
        let free: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
        let mut index = vec![u32::MAX; n];
        for (i, &v) in free.iter().enumerate() {
            index[v] = i as u32;
        }
        let kinds = h
            .edges()
            .map(|(u, v)| {
                let iu = index[u];
                let iv = index[v];
                match ((u == s, u == t), (v == s, v == t)) {
                    ((true, _), (_, true)) | ((_, true), (true, _)) => EdgeKind::Always,
                    ((true, _), _) => EdgeKind::SBit(iv),
                    (_, (true, _)) => EdgeKind::SBit(iu),
                    ((_, true), _) => EdgeKind::TBit(iv),
                    (_, (_, true)) => EdgeKind::TBit(iu),
                    _ => EdgeKind::Pair(iu, iv),
                }
            })
            .collect();
        CutSpace { n, free, kinds }
    }

    #[inline]
    fn crossing(&self, mask: u64) -> u64 {
        let mut c = 0u64;
        for kind in &self.kinds {
            c += match *kind {
                EdgeKind::Always => 1,
                EdgeKind::SBit(i) => (mask >> i) & 1,
                EdgeKind::TBit(i) => 1 - ((mask >> i) & 1),
                EdgeKind::Pair(i, j) => ((mask >> i) ^ (mask >> j)) & 1,
            };
        }
        c
    }
}

/// Exact witness count plus the per-vertex t-side weighted sums from the
/// same enumeration. z_hat is sums / count.
#[derive(Clone, Debug)]
pub struct WitnessStats {
    pub count: BigUint,
    pub t_side_sums: Vec<BigUint>,
}

#[allow(clippy::needless_range_loop)]
fn stats_kernel(
    space: &CutSpace,
    h: &Graph,
    pad: u64,
    binom: &BinomTable,
    lo: u64,
    hi: u64,
) -> WitnessStats {
    let n = space.n;
    let free_count = space.free.len() as u32;
    let mut count = BigUint::zero();
    let mut sums = vec![BigUint::zero(); n];
    for mask in lo..hi {
        let c = space.crossing(mask);
        if c > pad {
            continue;
        }
        let t_len = (mask.count_ones() + 1) as u64;
        let s_len = n as u64 - t_len;
        let universe = s_len * t_len;
        let w = binom.get((universe - c) as usize, (pad - c) as usize);
        if w.is_zero() {
            continue;
        }
        for i in 0..free_count {
            if (mask >> i) & 1 == 1 {
                sums[space.free[i as usize]] += &w;
            }
        }
        sums[h.t()] += &w;
        count += w;
    }
    WitnessStats {
        count,
        t_side_sums: sums,
    }
}

fn merge(a: WitnessStats, b: WitnessStats) -> WitnessStats {
    WitnessStats {
        count: a.count + b.count,
        t_side_sums: a
            .t_side_sums
            .into_iter()
            .zip(b.t_side_sums)
            .map(|(x, y)| x + y)
            .collect(),
    }
}

fn check_cap_and_params(h: &Graph, params: &WitnessParams, cap: usize) -> Result<()> {
    let n = h.n();
    if n > cap.min(DEFAULT_WITNESS_CAP) {
        return Err(Error::WitnessCapExceeded { n, cap });
    }
    if params.f > (n as u64).saturating_sub(1) {
        return Err(Error::InvalidParameter(format!(
            "f = {} exceeds n - 1 = {}",
            params.f,
            n - 1
        )));
    }
    Ok(())
}

/// Sequential enumeration over all 2^(n-2) s-t cuts.
pub fn witness_stats_seq(h: &Graph, params: &WitnessParams, cap: usize) -> Result<WitnessStats> {
    check_cap_and_params(h, params, cap)?;
    let space = CutSpace::new(h);
    let pad = params.pad();
    let n = h.n() as u64;
    let max_universe = n.div_ceil(2) * (n / 2).max(1);
    let binom = BinomTable::new(max_universe as usize, pad as usize);
    let total = 1u64 << space.free.len();
    Ok(stats_kernel(&space, h, pad, &binom, 0, total))
}

/// Rayon-parallel enumeration; identical output to the sequential path.
#[cfg(feature = "parallel")]
pub fn witness_stats_par(h: &Graph, params: &WitnessParams, cap: usize) -> Result<WitnessStats> {
    use rayon::prelude::*;
    check_cap_and_params(h, params, cap)?;
    let space = CutSpace::new(h);
    let pad = params.pad();
    let n = h.n() as u64;
    let max_universe = n.div_ceil(2) * (n / 2).max(1);
    let binom = BinomTable::new(max_universe as usize, pad as usize);
    let total = 1u64 << space.free.len();
    let chunks = (rayon::current_num_threads() as u64 * 4).clamp(1, total);
    let step = total.div_ceil(chunks);
    let stats = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let lo = i * step;
            let hi = ((i + 1) * step).min(total);
            stats_kernel(&space, h, pad, &binom, lo, hi)
        })
        .reduce(
            || WitnessStats {
                count: BigUint::zero(),
                t_side_sums: vec![BigUint::zero(); h.n()],
            },
            merge,
        );
    Ok(stats)
}

/// Witness statistics for H; dispatches to the parallel kernel when built
/// with the `parallel` feature and the cut space is large enough to pay.
pub fn witness_stats(h: &Graph, params: &WitnessParams, cap: usize) -> Result<WitnessStats> {
    #[cfg(feature = "parallel")]
    {
        if h.n() >= 16 {
            return witness_stats_par(h, params, cap);
        }
    }
    witness_stats_seq(h, params, cap)
}

/// Exact number of witnesses of H: the sum over qualifying s-t cuts of
/// C(|S||T| - c, f-k'-1 - c). Zero exactly when max-flow(H) >= f-k'.
pub fn witness_count(h: &Graph, params: &WitnessParams, cap: usize) -> Result<BigUint> {
    Ok(witness_stats(h, params, cap)?.count)
}

/// Per-cut contributions to the witness count, keyed by the t-side of the
/// cut. Intended for inspection and verification at small n.
pub fn witness_cut_contributions(
    h: &Graph,
    params: &WitnessParams,
    cap: usize,
) -> Result<Vec<(crate::graph::Cut, BigUint)>> {
    check_cap_and_params(h, params, cap)?;
    let pad = params.pad();
    let n = h.n() as u64;
    let max_universe = n.div_ceil(2) * (n / 2).max(1);
    let binom = BinomTable::new(max_universe as usize, pad as usize);
    let mut out = Vec::new();
    for cut in crate::graph::all_st_cuts(h.n(), h.s(), h.t()) {
        let c = h
            .edges()
            .filter(|&(u, v)| cut.in_t(u) != cut.in_t(v))
            .count() as u64;
        if c > pad {
            continue;
        }
        let universe = (cut.s_len() as u64) * (cut.t_len() as u64);
        let w = binom.get((universe - c) as usize, (pad - c) as usize);
        if !w.is_zero() {
            out.push((cut, w));
        }
    }
    Ok(out)
}

/// The potential vector: z_hat[v] is the probability that v lies on the
/// t side under a uniformly random surviving witness. Exact rationals;
/// z_hat[s] = 0 and z_hat[t] = 1.
pub fn z_hat(h: &Graph, params: &WitnessParams, cap: usize) -> Result<Vec<BigRational>> {
    let stats = witness_stats(h, params, cap)?;
    z_hat_from_stats(&stats)
}

pub fn z_hat_from_stats(stats: &WitnessStats) -> Result<Vec<BigRational>> {
    if stats.count.is_zero() {
        return Err(Error::ZeroWitnesses);
    }
    let total = BigRational::from_integer(stats.count.clone().into());
    Ok(stats
        .t_side_sums
        .iter()
        .map(|s| BigRational::from_integer(s.clone().into()) / total.clone())
        .collect())
}

/// Weighted probability that u and v fall on different sides of a random
/// witness cut. Used by the separation checks.
pub fn split_probability(
    h: &Graph,
    params: &WitnessParams,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<BigRational> {
    check_cap_and_params(h, params, cap)?;
    let space = CutSpace::new(h);
    let pad = params.pad();
    let n = h.n() as u64;
    let max_universe = n.div_ceil(2) * (n / 2).max(1);
    let binom = BinomTable::new(max_universe as usize, pad as usize);
    let total_masks = 1u64 << space.free.len();
    let mut total = BigUint::zero();
    let mut split = BigUint::zero();
    let side_of = |mask: u64, x: usize| -> bool {
        if x == h.t() {
            true
        } else if x == h.s() {
            false
        } else {
            let i = space.free.iter().position(|&w| w == x).unwrap();
            (mask >> i) & 1 == 1
        }
    };
    for mask in 0..total_masks {
        let c = space.crossing(mask);
        if c > pad {
            continue;
        }
        let t_len = (mask.count_ones() + 1) as u64;
        let s_len = n - t_len;
        let w = binom.get((s_len * t_len - c) as usize, (pad - c) as usize);
        if w.is_zero() {
            continue;
        }
        if side_of(mask, u) != side_of(mask, v) {
            split += &w;
        }
        total += w;
    }
    if total.is_zero() {
        return Err(Error::ZeroWitnesses);
    }
    Ok(BigRational::new(split.into(), total.into()))
}

// ---------------------------------------------------------------------------
// Assignments and FindLongEdge.
// ---------------------------------------------------------------------------

/// A sequence over {1,2,3} x {1,2} whose consecutive first coordinates
/// differ. A pair of positions (i, j) is matched when p_i = p_j and
/// q_i != q_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub pairs: Vec<(u8, u8)>,
}

impl Assignment {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn matches(&self, i: usize, j: usize) -> bool {
        let (pi, qi) = self.pairs[i];
        let (pj, qj) = self.pairs[j];
        pi == pj && qi != qj
    }
}

fn random_assignment<R: Rng>(ell: usize, rng: &mut R) -> Assignment {
    let mut pairs = Vec::with_capacity(ell);
    let mut prev_p = 0u8;
    for i in 0..ell {
        let p = if i == 0 {
            1
        } else {
            // uniform over {1,2,3} minus the previous value
            let choices: Vec<u8> = (1..=3).filter(|&x| x != prev_p).collect();
            choices[rng.gen_range(0..2)]
        };
        let q = rng.gen_range(1..=2) as u8;
        pairs.push((p, q));
        prev_p = p;
    }
    Assignment { pairs }
}

/// Whether every index pair at distance >= 2 is matched by some assignment.
/// O(t l^2 / 64) via per-assignment bucket products.
#[allow(clippy::needless_range_loop)]
pub fn assignments_cover(assignments: &[Assignment], ell: usize) -> bool {
    if ell < 3 {
        return true;
    }
    let words = ell.div_ceil(64);
    let mut matched = vec![vec![0u64; words]; ell];
    for a in assignments {
        debug_assert_eq!(a.len(), ell);
        // bucket positions by (p, q)
        let mut buckets: [[Vec<usize>; 2]; 3] = Default::default();
        for (i, &(p, q)) in a.pairs.iter().enumerate() {
            buckets[(p - 1) as usize][(q - 1) as usize].push(i);
        }
        for p in 0..3 {
            let (ones, twos) = (&buckets[p][0], &buckets[p][1]);
            let mut two_mask = vec![0u64; words];
            for &j in twos {
                two_mask[j / 64] |= 1 << (j % 64);
            }
            let mut one_mask = vec![0u64; words];
            for &i in ones {
                one_mask[i / 64] |= 1 << (i % 64);
            }
            for &i in ones {
                for w in 0..words {
                    matched[i][w] |= two_mask[w];
                }
            }
            for &j in twos {
                for w in 0..words {
                    matched[j][w] |= one_mask[w];
                }
            }
        }
    }
    for i in 0..ell {
        for j in (i + 2)..ell {
            if matched[i][j / 64] >> (j % 64) & 1 == 0 {
                return false;
            }
        }
    }
    true
}

/// Builds a family of assignments matching every pair at distance >= 2,
/// verified exhaustively and retried with fresh seeds until the cover
/// check passes. At most 24 ceil(log2(ell - 1)) assignments are produced.
pub fn build_assignments(ell: usize, seed: u64) -> Result<Vec<Assignment>> {
    if ell < 3 {
        return Ok(Vec::new());
    }
    let t = 24 * crate::oracle::ceil_log2(ell - 1) as usize;
    for attempt in 0..64u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9E37)));
        let assignments: Vec<Assignment> = (0..t).map(|_| random_assignment(ell, &mut rng)).collect();
        if assignments_cover(&assignments, ell) {
            return Ok(assignments);
        }
    }
    Err(Error::RetryCapExceeded("build_assignments"))
}

/// Outcome of a FindLongEdge run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LongEdge {
    /// An edge whose potential gap is at least delta/2.
    Edge(usize, usize),
    /// No edge found; guaranteed to imply delta exceeds the largest gap.
    Fail,
}

fn big(r: &Rat) -> BigRational {
    BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

/// Number of potential intervals for a threshold delta: floor(2/delta) + 1,
/// so the top endpoint 1 falls strictly inside the last interval.
pub fn interval_count(delta: &Rat) -> usize {
    let two_over = Rat::new(2 * *delta.denom(), *delta.numer());
    (two_over.floor().to_integer() + 1) as usize
}

fn interval_index(phi: &BigRational, delta: &Rat, ell: usize) -> usize {
    // floor(2 phi / delta) + 1, clamped into [1, ell]
    let d = big(delta);
    let j = (BigRational::from_integer(2.into()) * phi / d).floor();
    let j = j.to_integer().to_usize().unwrap_or(usize::MAX);
    (j + 1).min(ell)
}

/// Searches the surface's graph for an edge whose endpoints' potentials are
/// at least delta/2 apart. Partitions [0,1] into intervals of length
/// delta/2, groups them by assignment labels into six vertex classes per
/// assignment, and asks three find-edge queries per assignment. Any
/// returned edge honours the delta/2 bound; Fail is only possible when
/// every edge has gap below delta.
#[allow(clippy::needless_range_loop)]
pub fn find_long_edge<S: QuerySurface + ?Sized>(
    surface: &mut S,
    phi: &[BigRational],
    delta: &Rat,
    seed: u64,
    tag: &str,
) -> Result<LongEdge> {
    use num_traits::Signed;
    if *delta <= Rat::zero() || *delta > Rat::one() {
        return Err(Error::InvalidParameter("delta must lie in (0, 1]".into()));
    }
    let n = surface.n();
    if phi.len() != n {
        return Err(Error::DimensionMismatch {
            cut_n: phi.len(),
            graph_n: n,
        });
    }
    let ell = interval_count(delta);
    let assignments = build_assignments(ell, seed)?;
    let before = surface.queries_used();
    let interval: Vec<usize> = phi.iter().map(|p| interval_index(p, delta, ell)).collect();
    let half = big(delta) / BigRational::from_integer(2.into());
    for a in &assignments {
        // six classes: V_{p,q} for the label the vertex's interval carries
        let mut classes: [[VertexSet; 2]; 3] = [
            [VertexSet::empty(n), VertexSet::empty(n)],
            [VertexSet::empty(n), VertexSet::empty(n)],
            [VertexSet::empty(n), VertexSet::empty(n)],
        ];
        for v in 0..n {
            let (p, q) = a.pairs[interval[v] - 1];
            classes[(p - 1) as usize][(q - 1) as usize].insert(v);
        }
        for p in 0..3 {
            let (left, right) = (&classes[p][0], &classes[p][1]);
            if left.is_empty() || right.is_empty() {
                continue;
            }
            if let Some((u, v)) = find_edge(surface, left, right, tag)? {
                let gap = (phi[u].clone() - phi[v].clone()).abs();
                assert!(
                    gap >= half,
                    "long-edge contract violated: gap {gap} below delta/2"
                );
                let cost = surface.queries_used() - before;
                assert!(
                    cost <= 9 * assignments.len() as u64 + find_edge_found_cost_bound(n),
                    "find_long_edge cost {cost} exceeds contract"
                );
                return Ok(LongEdge::Edge(u, v));
            }
        }
    }
    let cost = surface.queries_used() - before;
    assert!(cost <= 9 * assignments.len() as u64);
    Ok(LongEdge::Fail)
}

// ---------------------------------------------------------------------------
// Independent brute-force oracle: enumerates (S, T, Y) triples directly,
// with Y built pair by pair. Verification-only; no shared code with the
// closed-form counting above.
// ---------------------------------------------------------------------------

pub mod brute {
    use super::*;
    use crate::graph::{all_st_cuts, Cut};

    fn crossing_pairs(cut: &Cut) -> Vec<(usize, usize)> {
        let n = cut.n();
        let mut out = Vec::new();
        for a in 0..n {
            if cut.in_t(a) {
                continue;
            }
            for b in 0..n {
                if cut.in_t(b) {
                    out.push((a.min(b), a.max(b)));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn count_supersets(universe: usize, extra: usize) -> u64 {
        // number of ways to pick `extra` items from `universe`, enumerated
        // one by one rather than by formula
        fn rec(remaining: usize, need: usize) -> u64 {
            if need == 0 {
                return 1;
            }
            if remaining < need {
                return 0;
            }
            rec(remaining - 1, need - 1) + rec(remaining - 1, need)
        }
        rec(universe, extra)
    }

    /// Exact witness count by direct triple enumeration.
    pub fn witness_count(h: &Graph, params: &WitnessParams) -> u64 {
        let pad = params.pad() as usize;
        let mut total = 0u64;
        for cut in all_st_cuts(h.n(), h.s(), h.t()) {
            let pairs = crossing_pairs(&cut);
            let crossing: Vec<(usize, usize)> = h
                .edges()
                .filter(|&(u, v)| cut.in_t(u) != cut.in_t(v))
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            if crossing.len() > pad {
                continue;
            }
            let free = pairs.len() - crossing.len();
            total += count_supersets(free, pad - crossing.len());
        }
        total
    }

    /// z_hat by direct averaging over enumerated witnesses.
    pub fn z_hat(h: &Graph, params: &WitnessParams) -> Option<Vec<BigRational>> {
        let pad = params.pad() as usize;
        let mut total = 0u64;
        let mut sums = vec![0u64; h.n()];
        for cut in all_st_cuts(h.n(), h.s(), h.t()) {
            let pairs = crossing_pairs(&cut);
            let crossing: Vec<(usize, usize)> = h
                .edges()
                .filter(|&(u, v)| cut.in_t(u) != cut.in_t(v))
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            if crossing.len() > pad {
                continue;
            }
            let free = pairs.len() - crossing.len();
            let ways = count_supersets(free, pad - crossing.len());
            if ways == 0 {
                continue;
            }
            total += ways;
            for (v, sum) in sums.iter_mut().enumerate() {
                if cut.in_t(v) {
                    *sum += ways;
                }
            }
        }
        if total == 0 {
            return None;
        }
        Some(
            sums.into_iter()
                .map(|s| BigRational::new(s.into(), total.into()))
                .collect(),
        )
    }
}
