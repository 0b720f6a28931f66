use serde::Serialize;

use super::CorankData;
use crate::registry::{Named, Registry};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleOutcome {
    pub rule: &'static str,
    pub passed: bool,
    pub note: String,
}

/// One necessary condition for h_k^{p,q} ≠ 0.
pub trait RegionRule: Named {
    fn evaluate(&self, cd: &CorankData, k: usize, p: usize, q: usize) -> RuleOutcome;
}

fn outcome(rule: &'static str, passed: bool, why: String) -> RuleOutcome {
    let note = if passed { format!("not excluded: {why}") } else { format!("excluded: {why}") };
    RuleOutcome { rule, passed, note }
}

/// p + q ≥ k and p, q ≤ min(k, n).
struct Triangle;
/// The mixed Hodge structure on H^k is pure below the boundary codimension.
struct PureBelowBoundary;
/// |p − q| ≤ n − n(i) on the step n(i−1) < m ≤ n(i), m = p + q − k.
struct Stairs;
/// Nothing above weight k + n(r).
struct Vacuum;
/// h_k^{k,q} = h_k^{q,k} = 0 for q > 0 when k < n.
struct Roof;

impl Named for Triangle {
    fn name(&self) -> &'static str {
        "triangle"
    }
}

impl RegionRule for Triangle {
    fn evaluate(&self, cd: &CorankData, k: usize, p: usize, q: usize) -> RuleOutcome {
        let side = k.min(cd.n);
        let passed = p + q >= k && p <= side && q <= side;
        outcome(self.name(), passed, format!("p+q={} vs k={k}, max(p,q)={} vs {side}", p + q, p.max(q)))
    }
}

impl Named for PureBelowBoundary {
    fn name(&self) -> &'static str {
        "pure-bb"
    }
}

impl RegionRule for PureBelowBoundary {
    fn evaluate(&self, cd: &CorankData, k: usize, p: usize, q: usize) -> RuleOutcome {
        if k >= cd.c {
            return outcome(self.name(), true, format!("k={k} ≥ c={}", cd.c));
        }
        outcome(self.name(), p + q == k, format!("k={k} < c={} forces p+q=k", cd.c))
    }
}

impl Named for Stairs {
    fn name(&self) -> &'static str {
        "stairs"
    }
}

impl RegionRule for Stairs {
    fn evaluate(&self, cd: &CorankData, k: usize, p: usize, q: usize) -> RuleOutcome {
        let Some(m) = (p + q).checked_sub(k).filter(|&m| m > 0) else {
            return outcome(self.name(), true, "weight k".into());
        };
        let Some(i) = cd.corank_of(m) else {
            return outcome(self.name(), true, format!("m={m} above n(r)"));
        };
        let bound = cd.n - cd.n_of(i);
        let diff = p.abs_diff(q);
        outcome(self.name(), diff <= bound, format!("m={m} on step {i}: |p-q|={diff} vs n-n({i})={bound}"))
    }
}

impl Named for Vacuum {
    fn name(&self) -> &'static str {
        "vacuum"
    }
}

impl RegionRule for Vacuum {
    fn evaluate(&self, cd: &CorankData, k: usize, p: usize, q: usize) -> RuleOutcome {
        let m = (p + q).saturating_sub(k);
        let top = cd.n_of(cd.r());
        outcome(self.name(), m <= top, format!("m={m} vs n(r)={top}"))
    }
}

impl Named for Roof {
    fn name(&self) -> &'static str {
        "roof"
    }
}

impl RegionRule for Roof {
    fn evaluate(&self, cd: &CorankData, k: usize, p: usize, q: usize) -> RuleOutcome {
        if k >= cd.n {
            return outcome(self.name(), true, format!("k={k} ≥ n={}", cd.n));
        }
        let on_roof = (p == k && q > 0) || (q == k && p > 0);
        outcome(self.name(), !on_roof, format!("k={k} < n={}, roof is p=k or q=k", cd.n))
    }
}

pub fn rules() -> Registry<dyn RegionRule> {
    let mut r: Registry<dyn RegionRule> = Registry::new("region rule");
    r.register(Box::new(Triangle))
        .register(Box::new(PureBelowBoundary))
        .register(Box::new(Stairs))
        .register(Box::new(Vacuum))
        .register(Box::new(Roof));
    r
}
