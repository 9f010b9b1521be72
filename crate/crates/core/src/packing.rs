//! Iterated spanning-forest packings. A k-forest packing keeps every cut of
//! size at most k exactly and keeps larger cuts at size at least k, while
//! holding at most k(n-1) edges total.

use crate::error::{Error, Result};
use crate::graph::{ForestPacking, Graph};

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, v: usize) -> usize {
        if self.0[v] != v {
            let r = self.find(self.0[v]);
            self.0[v] = r;
        }
        self.0[v]
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Packs k spanning forests greedily; forest i spans whatever the first
/// i-1 forests left. Deterministic: edges are scanned in sorted order.
pub fn forest_packing(g: &Graph, k: usize) -> Result<ForestPacking> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut remaining: Vec<(usize, usize)> = g.edges().collect();
    let mut forests = Vec::with_capacity(k);
    for _ in 0..k {
        let mut dsu = Dsu::new(g.n());
        let mut forest = Vec::new();
        let mut rest = Vec::new();
        for (u, v) in remaining {
            if dsu.union(u, v) {
                forest.push((u, v));
            } else {
                rest.push((u, v));
            }
        }
        remaining = rest;
        forests.push(forest);
        if remaining.is_empty() {
            // later forests would be empty; keep them implicit
            break;
        }
    }
    Ok(ForestPacking { forests })
}
