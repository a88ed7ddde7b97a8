//! Maximum matchings in general graphs, Tutte witnesses, and families of
//! edge-disjoint perfect matchings.
//!
//! The matching engine is Edmonds' blossom algorithm (augmenting paths found
//! by BFS with odd-cycle contraction). When no perfect matching exists, a
//! Tutte set is read off the Gallai–Edmonds decomposition; for small graphs a
//! full subset scan produces the set of maximum deficiency instead.

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::config::RunConfig;
use crate::graph::{edge_connectivity, full_mask, mask_components, Graph, VertexSet};
use crate::hypothesis::{regular_violations, HypothesisError, Violation};
use crate::policy::{at_most, floor_guarded, strictly_below, Decision, DEFAULT_EPSILON};
use crate::spectral::Spectrum;

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("degree {0} is below 3")]
    DegreeTooSmall(usize),
    #[error("graph of order {n} exceeds the exhaustive limit {limit}; use peel_disjoint_pms")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid matching family: {0}")]
    InvalidFamily(String),
}

/// A set of pairwise vertex-disjoint edges, each stored as `(u, v)` with `u < v`
/// and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Matching(Vec<Edge>);

impl Matching {
    fn from_mates(mate: &[Option<usize>]) -> Self {
        let edges = mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect();
        Matching(edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_perfect_in(&self, g: &Graph) -> bool {
        2 * self.0.len() == g.order() && self.is_valid_in(g)
    }

    /// Every pair is an edge of `g` and no vertex is used twice.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.order()];
        self.0.iter().all(|&(u, v)| {
            let ok = g.has_edge(u, v) && !used[u] && !used[v];
            used[u] = true;
            used[v] = true;
            ok
        })
    }
}

/// Edmonds' blossom algorithm state.
struct Blossom<'g> {
    g: &'g Graph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'g> Blossom<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.order();
        Self {
            g,
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lowest_common_base(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.order()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                Some(m) => a = self.parent[m].expect("matched tree vertex has a parent"),
                None => break,
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b].expect("non-root base is matched")]
                .expect("matched tree vertex has a parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("odd-cycle vertex is matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("matched tree vertex has a parent");
        }
    }

    /// Searches for an augmenting path from the exposed vertex `root` and
    /// returns its other endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.order();
        self.in_tree.fill(false);
        self.parent.fill(None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.in_tree[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer =
                    to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lowest_common_base(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.in_tree[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&mut self, end: usize) {
        let mut v = Some(end);
        while let Some(x) = v {
            let px = self.parent[x].expect("augmenting path vertex has a parent");
            let next = self.mate[px];
            self.mate[x] = Some(px);
            self.mate[px] = Some(x);
            v = next;
        }
    }

    fn try_augment_from(&mut self, root: usize) -> bool {
        if self.mate[root].is_some() {
            return false;
        }
        match self.find_path(root) {
            Some(end) => {
                self.augment(end);
                true
            }
            None => false,
        }
    }

    fn run(&mut self) {
        // greedy start
        for u in 0..self.g.order() {
            if self.mate[u].is_none() {
                if let Some(&v) = self.g.neighbors(u).iter().find(|&&v| self.mate[v].is_none()) {
                    self.mate[u] = Some(v);
                    self.mate[v] = Some(u);
                }
            }
        }
        for root in 0..self.g.order() {
            self.try_augment_from(root);
        }
    }
}

/// A maximum-cardinality matching.
pub fn maximum_matching(g: &Graph) -> Matching {
    let mut b = Blossom::new(g);
    b.run();
    Matching::from_mates(&b.mate)
}

/// Maximum matching computed on a relabelled copy, so the scan order (and
/// hence which maximum matching is returned) follows `order`.
fn maximum_matching_in_order(g: &Graph, order: &[usize]) -> Matching {
    // order[i] = original vertex placed at position i
    let mut to_new = vec![0; g.order()];
    for (i, &v) in order.iter().enumerate() {
        to_new[v] = i;
    }
    let h = g.permuted(&to_new);
    let m = maximum_matching(&h);
    let mut edges: Vec<Edge> = m
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (order[a], order[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    Matching(edges)
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    g.order().is_multiple_of(2) && 2 * maximum_matching(g).len() == g.order()
}

/// A set `S` with more odd components in `G − S` than `|S|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TutteWitness {
    pub s: VertexSet,
    pub odd_count: usize,
}

impl TutteWitness {
    pub fn deficiency(&self) -> usize {
        self.odd_count - self.s.len()
    }
}

/// `max over S of (o(G − S) − |S|)` with the lexicographically first set
/// among those of smallest size attaining it, by full subset scan.
fn max_deficiency_scan(g: &Graph) -> (usize, VertexSet) {
    let n = g.order();
    assert!(n <= 64);
    let adj = g.adjacency_masks().unwrap();
    let all = full_mask(n);
    let mut best: Option<(i64, VertexSet)> = None;
    for size in 0..=n {
        for_each_subset_of_size(n, size, |s| {
            let (_, odd) = mask_components(&adj, all & !s);
            let def = odd as i64 - size as i64;
            if best.as_ref().is_none_or(|(b, _)| def > *b) {
                best = Some((def, VertexSet::from_mask(s)));
            }
        });
    }
    let (def, s) = best.unwrap();
    (def.max(0) as usize, s)
}

/// Calls `f` on every `size`-subset of `0..n` as a bitmask, in lexicographic
/// order of the sorted member lists.
pub(crate) fn for_each_subset_of_size(n: usize, size: usize, mut f: impl FnMut(u64)) {
    fn rec(start: usize, n: usize, left: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if left == 0 {
            f(acc);
            return;
        }
        for v in start..=n - left {
            rec(v + 1, n, left - 1, acc | 1 << v, f);
        }
    }
    if size <= n {
        rec(0, n, size, 0, &mut f);
    }
}

/// Gallai–Edmonds: `D` is the set of vertices missed by some maximum
/// matching, `A = N(D) \ D`. `G − A` then has exactly `n − 2ν + |A|` odd
/// components.
#[allow(clippy::needless_range_loop)]
fn gallai_edmonds_barrier(g: &Graph) -> VertexSet {
    let n = g.order();
    let mut base = Blossom::new(g);
    base.run();
    let nu = Matching::from_mates(&base.mate).len();
    let mut in_d = vec![false; n];
    for v in 0..n {
        match base.mate[v] {
            None => in_d[v] = true,
            Some(m) => {
                // ν(G − v) = ν(G) iff the matching minus vm extends in G − v
                let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
                let h = g.induced(&VertexSet::new(keep.iter().copied())).unwrap();
                let idx = |u: usize| if u < v { u } else { u - 1 };
                let mut b = Blossom::new(&h);
                for u in (0..n).filter(|&u| u != v && u != m) {
                    b.mate[idx(u)] = base.mate[u].map(idx);
                }
                if b.try_augment_from(idx(m)) {
                    in_d[v] = true;
                }
                debug_assert!(Matching::from_mates(&b.mate).len() <= nu);
            }
        }
    }
    VertexSet::new((0..n).filter(|&v| !in_d[v] && g.neighbors(v).iter().any(|&w| in_d[w])))
}

/// A Tutte witness iff the graph has no perfect matching.
///
/// Graphs of order at most `exhaustive_limit` get the witness of maximum
/// deficiency from a full subset scan; larger graphs get the Gallai–Edmonds
/// barrier.
pub fn tutte_witness(g: &Graph, exhaustive_limit: usize) -> Option<TutteWitness> {
    if has_perfect_matching(g) {
        return None;
    }
    let s = if g.order() <= exhaustive_limit.min(64) {
        max_deficiency_scan(g).1
    } else {
        gallai_edmonds_barrier(g)
    };
    let odd_count = g.odd_component_count(&s).expect("witness lies in the graph");
    assert!(odd_count > s.len(), "Tutte set must be violating");
    Some(TutteWitness { s, odd_count })
}

/// `n − 2ν = max over S of (o(G − S) − |S|)`, by subset scan (`n ≤ 64`, exponential).
pub fn tutte_berge_deficiency(g: &Graph) -> usize {
    max_deficiency_scan(g).0
}

/// Odd order and `G − u` perfectly matchable for every vertex `u`.
pub fn is_factor_critical(g: &Graph) -> bool {
    let n = g.order();
    n % 2 == 1
        && (0..n).all(|u| {
            if n == 1 {
                return true;
            }
            let h = g.induced(&VertexSet::new((0..n).filter(|&v| v != u))).unwrap();
            has_perfect_matching(&h)
        })
}

fn check_degree(d: usize) -> Result<(), MatchingError> {
    if d < 3 {
        Err(MatchingError::DegreeTooSmall(d))
    } else {
        Ok(())
    }
}

/// A guaranteed count, with a flag when the floor argument sat within epsilon
/// of an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Guarantee {
    pub value: usize,
    pub borderline: bool,
}

fn guarded_count(x: f64, eps: f64) -> Guarantee {
    let (v, borderline) = floor_guarded(x, eps);
    Guarantee {
        value: v.max(0) as usize,
        borderline,
    }
}

/// `⌊2(d − λ₂)/3⌋` edge-disjoint perfect matchings.
pub fn guarantee_main(d: usize, lambda2: f64) -> Result<Guarantee, MatchingError> {
    guarantee_main_eps(d, lambda2, DEFAULT_EPSILON)
}

pub fn guarantee_main_eps(d: usize, lambda2: f64, eps: f64) -> Result<Guarantee, MatchingError> {
    check_degree(d)?;
    Ok(guarded_count(2.0 * (d as f64 - lambda2) / 3.0, eps))
}

/// The earlier guarantee `⌊(d − λ₂)/2 + 1/2⌋`.
pub fn guarantee_prior(d: usize, lambda2: f64) -> Result<Guarantee, MatchingError> {
    guarantee_prior_eps(d, lambda2, DEFAULT_EPSILON)
}

pub fn guarantee_prior_eps(d: usize, lambda2: f64, eps: f64) -> Result<Guarantee, MatchingError> {
    check_degree(d)?;
    Ok(guarded_count((d as f64 - lambda2) / 2.0 + 0.5, eps))
}

fn cubic(x: f64) -> f64 {
    ((x - 1.0) * x - 6.0) * x + 2.0
}

/// Largest root of `x³ − x² − 6x + 2`, bracketed in `[2.8, 2.9]`.
pub fn theta() -> f64 {
    let (mut lo, mut hi) = (2.8_f64, 2.9_f64);
    debug_assert!(cubic(lo) < 0.0 && cubic(hi) > 0.0);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if cubic(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let step = cubic(x) / ((3.0 * x - 2.0) * x - 6.0);
        let next = (x - step).clamp(lo, hi);
        if (next - x).abs() <= 1e-15 {
            x = next;
            break;
        }
        x = next;
    }
    x
}

/// `λ₃` bound below which a connected `d`-regular graph of even order has a
/// perfect matching.
pub fn pm_threshold_lambda3(d: usize) -> Result<f64, MatchingError> {
    check_degree(d)?;
    let df = d as f64;
    Ok(match d {
        3 => theta(),
        _ if d.is_multiple_of(2) => (df - 2.0 + (df * df + 12.0).sqrt()) / 2.0,
        _ => (df - 3.0 + ((df + 1.0).powi(2) + 16.0).sqrt()) / 2.0,
    })
}

/// Perfect matchings that are pairwise edge-disjoint in one host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingFamily {
    pub matchings: Vec<Matching>,
}

impl MatchingFamily {
    pub fn len(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }

    /// Re-scans every matching against `host`.
    pub fn validate(&self, host: &Graph) -> Result<(), MatchingError> {
        let mut seen = HashSet::new();
        for (i, m) in self.matchings.iter().enumerate() {
            if !m.is_perfect_in(host) {
                return Err(MatchingError::InvalidFamily(format!(
                    "matching {i} is not a perfect matching"
                )));
            }
            for e in m.edges() {
                if !seen.insert(*e) {
                    return Err(MatchingError::InvalidFamily(format!(
                        "edge {e:?} reused by matching {i}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeelStatus {
    TargetMet,
    TargetMissed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelOutcome {
    pub family: MatchingFamily,
    pub status: PeelStatus,
    /// Perfect-matching computations performed.
    pub expansions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeelConfig {
    pub target: usize,
    /// Attempts at an alternative perfect matching per level.
    pub alternatives: usize,
    /// Total perfect-matching computations before giving up.
    pub max_expansions: usize,
    pub seed: u64,
}

impl PeelConfig {
    pub fn new(target: usize, seed: u64) -> Self {
        Self {
            target,
            alternatives: 200,
            max_expansions: 200_000,
            seed,
        }
    }
}

struct Peeler {
    cfg: PeelConfig,
    rng: ChaCha8Rng,
    order: Vec<usize>,
    expansions: usize,
    best: Vec<Matching>,
}

impl Peeler {
    fn random_perfect_matching(&mut self, g: &Graph) -> Option<Matching> {
        self.order.shuffle(&mut self.rng);
        self.expansions += 1;
        let m = maximum_matching_in_order(g, &self.order);
        (2 * m.len() == g.order()).then_some(m)
    }

    fn search(&mut self, remaining: &Graph, family: &mut Vec<Matching>) -> bool {
        if family.len() >= self.cfg.target {
            return true;
        }
        let mut tried = HashSet::new();
        for _ in 0..self.cfg.alternatives.max(1) {
            if self.expansions >= self.cfg.max_expansions {
                return false;
            }
            let Some(m) = self.random_perfect_matching(remaining) else {
                return false;
            };
            if !tried.insert(m.clone()) {
                continue;
            }
            let next = remaining.without_edges(m.edges());
            family.push(m);
            if family.len() > self.best.len() {
                self.best = family.clone();
            }
            if self.search(&next, family) {
                return true;
            }
            family.pop();
        }
        false
    }
}

/// Peels perfect matchings off `g` one at a time, backtracking over randomly
/// drawn alternatives until `target` matchings are found, then keeps peeling
/// greedily. Returns the largest family seen.
pub fn peel_disjoint_pms(g: &Graph, cfg: PeelConfig) -> PeelOutcome {
    let mut p = Peeler {
        cfg,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        order: (0..g.order()).collect(),
        expansions: 0,
        best: Vec::new(),
    };
    let mut family = Vec::new();
    let status = if p.search(g, &mut family) {
        PeelStatus::TargetMet
    } else {
        PeelStatus::TargetMissed
    };
    if status == PeelStatus::TargetMet {
        let mut remaining = family
            .iter()
            .fold(g.clone(), |h, m| h.without_edges(m.edges()));
        while let Some(m) = p.random_perfect_matching(&remaining) {
            remaining = remaining.without_edges(m.edges());
            family.push(m);
        }
        p.best = family;
    }
    PeelOutcome {
        family: MatchingFamily { matchings: p.best },
        status,
        expansions: p.expansions,
    }
}

/// Exact maximum number of edge-disjoint perfect matchings by exhaustive
/// search. Families are enumerated with their matchings ordered by the
/// partner of vertex 0, which every perfect matching fixes uniquely.
pub fn max_disjoint_pms_oracle(g: &Graph, limit: usize) -> Result<usize, MatchingError> {
    let n = g.order();
    if n > limit.min(64) {
        return Err(MatchingError::TooLarge { n, limit });
    }
    if n % 2 == 1 {
        return Ok(0);
    }
    let mut adj = g.adjacency_masks().unwrap();
    let cap = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    let mut search = FamilySearch {
        n,
        best: 0,
        cap,
        pm: Vec::with_capacity(n / 2),
    };
    search.extend_family(&mut adj, 0, None);
    Ok(search.best)
}

struct FamilySearch {
    n: usize,
    best: usize,
    cap: usize,
    pm: Vec<Edge>,
}

impl FamilySearch {
    fn extend_family(&mut self, adj: &mut [u64], count: usize, last: Option<usize>) {
        self.best = self.best.max(count);
        if self.best >= self.cap {
            return;
        }
        let allowed = partner_mask(last);
        if count + (adj[0] & allowed).count_ones() as usize <= self.best {
            return;
        }
        self.match_rest(adj, full_mask(self.n), count, last);
    }

    fn match_rest(&mut self, adj: &mut [u64], unmatched: u64, count: usize, last: Option<usize>) {
        if self.best >= self.cap {
            return;
        }
        if unmatched == 0 {
            let partner0 = self.pm[0].1;
            let pm = self.pm.clone();
            for &(u, v) in &pm {
                adj[u] &= !(1 << v);
                adj[v] &= !(1 << u);
            }
            self.extend_family(adj, count + 1, Some(partner0));
            for &(u, v) in &pm {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            return;
        }
        let mut rest = unmatched;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[u] & unmatched == 0 {
                return;
            }
        }
        let v = unmatched.trailing_zeros() as usize;
        let mut cands = adj[v] & unmatched;
        if v == 0 {
            cands &= partner_mask(last);
        }
        while cands != 0 {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            self.pm.push((v, w));
            self.match_rest(adj, unmatched & !(1 << v) & !(1 << w), count, last);
            self.pm.pop();
        }
    }
}

fn partner_mask(last: Option<usize>) -> u64 {
    match last {
        None => u64::MAX,
        Some(63) => 0,
        Some(p) => !((1u64 << (p + 1)) - 1),
    }
}

/// Theorem-level record for one connected `d`-regular graph of even order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchingCertificate {
    pub n: usize,
    pub d: usize,
    pub lambda2: f64,
    pub lambda3: f64,
    pub guarantee_main: Guarantee,
    pub guarantee_prior: Guarantee,
    pub pm_threshold_lambda3: f64,
    pub lambda3_below_threshold: Decision,
    pub lambda2_at_most_d_minus_1: Decision,
    pub edge_connectivity: usize,
    pub family: MatchingFamily,
    pub achieved: usize,
    pub target_met: bool,
    pub expansions: usize,
    /// Exact maximum, for graphs within the PM-family limit.
    pub oracle_max: Option<usize>,
    /// Present iff the graph has no perfect matching.
    pub tutte_witness: Option<TutteWitness>,
    /// Some family of `guarantee_main` disjoint perfect matchings exists,
    /// by construction or by the exact oracle.
    pub theorem_consistent: bool,
    pub borderline: bool,
}

pub fn certify_matchings(
    g: &Graph,
    spectrum: &Spectrum,
    cfg: &RunConfig,
) -> Result<MatchingCertificate, HypothesisError> {
    let n = g.order();
    let mut violations = Vec::new();
    if n % 2 == 1 {
        violations.push(Violation::OddOrder);
    }
    violations.extend(regular_violations(g));
    if !violations.is_empty() {
        return Err(HypothesisError(violations));
    }
    let d = g.regular_degree().expect("checked regular");
    let eps = cfg.epsilon;
    let lambda2 = spectrum.lambda(2).expect("n ≥ 4");
    let lambda3 = spectrum.lambda(3).expect("n ≥ 4");
    let guarantee = guarantee_main_eps(d, lambda2, eps).expect("d ≥ 3");
    let prior = guarantee_prior_eps(d, lambda2, eps).expect("d ≥ 3");
    let threshold = pm_threshold_lambda3(d).expect("d ≥ 3");

    let peel = peel_disjoint_pms(
        g,
        PeelConfig {
            alternatives: cfg.backtrack_limit,
            ..PeelConfig::new(guarantee.value, cfg.seed)
        },
    );
    peel.family
        .validate(g)
        .expect("peeled matchings are perfect and pairwise disjoint");
    let achieved = peel.family.len();
    let oracle_max = (n <= cfg.limits.pm_family)
        .then(|| max_disjoint_pms_oracle(g, cfg.limits.pm_family).ok())
        .flatten();
    let best_known = achieved.max(oracle_max.unwrap_or(0));

    let below = strictly_below(lambda3, threshold, eps);
    let at_most_d1 = at_most(lambda2, d as f64 - 1.0, eps);
    Ok(MatchingCertificate {
        n,
        d,
        lambda2,
        lambda3,
        guarantee_main: guarantee,
        guarantee_prior: prior,
        pm_threshold_lambda3: threshold,
        lambda3_below_threshold: below,
        lambda2_at_most_d_minus_1: at_most_d1,
        edge_connectivity: edge_connectivity(g).value,
        achieved,
        target_met: peel.status == PeelStatus::TargetMet,
        expansions: peel.expansions,
        family: peel.family,
        oracle_max,
        tutte_witness: tutte_witness(g, cfg.limits.tutte),
        theorem_consistent: best_known >= guarantee.value,
        borderline: guarantee.borderline || below.borderline || at_most_d1.borderline,
    })
}
