//! Exact toughness, the eigenvalue thresholds for `t(G) ≥ 1` and `t(G) > 1`,
//! the older spectral lower bounds, and recognition of the extremal graph `G_d`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::config::RunConfig;
use crate::generators::gen_gd;
use crate::graph::{full_mask, mask_components, Bipartiteness, Graph, VertexSet};
use crate::hypothesis::{regular_violations, HypothesisError, Violation};
use crate::iso::is_isomorphic;
use crate::policy::{at_most, Decision};
use crate::spectral::Spectrum;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ToughnessError {
    #[error("degree {0} is below 3")]
    DegreeTooSmall(usize),
    #[error("order {n} exceeds the exhaustive limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("lower bounds need a positive eigenvalue, got {0}")]
    NonPositiveLambda(f64),
}

/// `|S| / c(G−S)` kept as an unreduced integer pair, or the marker for
/// complete graphs where no `S` disconnects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ToughnessValue {
    Finite { num: usize, den: usize },
    Infinite,
}

impl ToughnessValue {
    pub fn as_f64(&self) -> f64 {
        match *self {
            ToughnessValue::Finite { num, den } => num as f64 / den as f64,
            ToughnessValue::Infinite => f64::INFINITY,
        }
    }

    pub fn exceeds_one(&self) -> bool {
        match *self {
            ToughnessValue::Finite { num, den } => num > den,
            ToughnessValue::Infinite => true,
        }
    }
}

impl Ord for ToughnessValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use ToughnessValue::*;
        match (*self, *other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, _) => Ordering::Greater,
            (_, Infinite) => Ordering::Less,
            (Finite { num: a, den: b }, Finite { num: c, den: d }) => (a * d).cmp(&(c * b)),
        }
    }
}

impl PartialOrd for ToughnessValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ToughnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ToughnessValue::Infinite => f.write_str("infinite"),
            ToughnessValue::Finite { num, den } => {
                let g = gcd(num, den);
                let (p, q) = (num / g, den / g);
                if q == 1 {
                    write!(f, "{p}")
                } else {
                    write!(f, "{p}/{q}")
                }
            }
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToughnessResult {
    pub value: ToughnessValue,
    pub witness: VertexSet,
    /// `c(G − witness)`.
    pub component_count: usize,
}

impl ToughnessResult {
    /// Recomputes the witness ratio from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        let Ok(comps) = g.components_without(&self.witness) else {
            return false;
        };
        if comps.len() != self.component_count {
            return false;
        }
        match self.value {
            ToughnessValue::Infinite => g.is_complete() && self.witness.is_empty(),
            ToughnessValue::Finite { num, den } => {
                let connected_case = self.witness.is_empty() && num == 0;
                (connected_case || comps.len() >= 2)
                    && num == self.witness.len()
                    && den == comps.len()
            }
        }
    }
}

/// Size of a maximum independent set, by branching on a max-degree vertex.
fn independence_number(adj: &[u64], alive: u64) -> usize {
    if alive == 0 {
        return 0;
    }
    let mut best_v = None;
    let mut best_deg = 0;
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let deg = (adj[v] & alive).count_ones();
        if deg <= 1 {
            // a vertex of degree ≤ 1 belongs to some maximum independent set
            return 1 + independence_number(adj, alive & !(1 << v) & !adj[v]);
        }
        if best_v.is_none() || deg > best_deg {
            best_v = Some(v);
            best_deg = deg;
        }
    }
    let v = best_v.unwrap();
    let with = 1 + independence_number(adj, alive & !(1 << v) & !adj[v]);
    let without = independence_number(adj, alive & !(1 << v));
    with.max(without)
}

/// `min |S|/c(G−S)` over all `S` with `c(G−S) ≥ 2`, by enumeration in order
/// of increasing `|S|`. Ties go to the lexicographically smallest `S`.
pub fn exact_toughness(g: &Graph, limit: usize) -> Result<ToughnessResult, ToughnessError> {
    let n = g.order();
    if n > limit.min(64) {
        return Err(ToughnessError::TooLarge { n, limit });
    }
    let components = g.components().len();
    if components != 1 {
        return Ok(ToughnessResult {
            value: ToughnessValue::Finite { num: 0, den: components },
            witness: VertexSet::default(),
            component_count: components,
        });
    }
    if g.is_complete() {
        return Ok(ToughnessResult {
            value: ToughnessValue::Infinite,
            witness: VertexSet::default(),
            component_count: 1,
        });
    }
    let adj = g.adjacency_masks().expect("order checked above");
    let all = full_mask(n);
    let alpha = independence_number(&adj, all);

    let mut best: Option<(ToughnessValue, u64, usize)> = None;
    for k in 1..=n - 2 {
        let c_max = (n - k).min(alpha);
        if let Some((bv, _, _)) = best {
            if (ToughnessValue::Finite { num: k, den: c_max }) > bv {
                break;
            }
        }
        crate::matching::for_each_subset_of_size(n, k, |s| {
            let (c, _) = mask_components(&adj, all & !s);
            if c < 2 {
                return;
            }
            let value = ToughnessValue::Finite { num: k, den: c };
            let better = match best {
                None => true,
                Some((bv, bs, _)) => match value.cmp(&bv) {
                    Ordering::Less => true,
                    Ordering::Equal => VertexSet::from_mask(s) < VertexSet::from_mask(bs),
                    Ordering::Greater => false,
                },
            };
            if better {
                best = Some((value, s, c));
            }
        });
    }
    let (value, s, c) = best.expect("a connected non-complete graph has a separating set");
    Ok(ToughnessResult {
        value,
        witness: VertexSet::from_mask(s),
        component_count: c,
    })
}

fn check_degree(d: usize) -> Result<(), ToughnessError> {
    if d < 3 {
        Err(ToughnessError::DegreeTooSmall(d))
    } else {
        Ok(())
    }
}

/// The two sides of the bracket `d − 3/2 + 1/(8d) < λ₂(G_d) < d − 3/2 + 3/(16d)`.
pub fn main2_sandwich(d: usize) -> (f64, f64) {
    let df = d as f64;
    (df - 1.5 + 1.0 / (8.0 * df), df - 1.5 + 3.0 / (16.0 * df))
}

/// `(√(1 + 4(d−1)²) − 1)/2`: at or below this `λ₂` a connected non-bipartite
/// `d`-regular graph other than `G_d` has `t > 1`.
pub fn threshold_main2(d: usize) -> Result<f64, ToughnessError> {
    check_degree(d)?;
    let dm = (d - 1) as f64;
    let value = ((1.0 + 4.0 * dm * dm).sqrt() - 1.0) / 2.0;
    let (lo, hi) = main2_sandwich(d);
    assert!(lo < value && value < hi, "sandwich fails at d = {d}");
    Ok(value)
}

/// `λ₂` bound for `t(G) ≥ 1` with parity-dependent constant.
pub fn threshold_liu_chen(d: usize) -> Result<f64, ToughnessError> {
    check_degree(d)?;
    let df = d as f64;
    let c = if d.is_multiple_of(2) { 3.0 } else { 2.0 };
    Ok(df - 1.0 + c / (df + 1.0))
}

pub fn threshold_cioaba_wong(d: usize) -> Result<f64, ToughnessError> {
    check_degree(d)?;
    let df = d as f64;
    let c = if d.is_multiple_of(2) { 12.0 } else { 8.0 };
    Ok((df - 2.0 + (df * df + c).sqrt()) / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LegacyBounds {
    pub alon: f64,
    pub brouwer: f64,
    pub gu: f64,
}

/// Lower bounds on `t(G)` in terms of `λ = max |λᵢ|, i ≥ 2`.
pub fn legacy_lower_bounds(d: usize, lambda: f64) -> Result<LegacyBounds, ToughnessError> {
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(ToughnessError::NonPositiveLambda(lambda));
    }
    let df = d as f64;
    Ok(LegacyBounds {
        alon: (df * df / (df * lambda + lambda * lambda) - 1.0) / 3.0,
        brouwer: df / lambda - 2.0,
        gu: df / lambda - 1.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    pub liu_chen: f64,
    pub cioaba_wong: f64,
    pub main2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub d: usize,
    pub lambda2: f64,
    pub lambda_abs: f64,
    pub thresholds: Thresholds,
    pub lower_bounds: Option<LegacyBounds>,
}

pub fn threshold_report(d: usize, spectrum: &Spectrum) -> Result<ThresholdReport, ToughnessError> {
    let lambda2 = spectrum.lambda(2).map_err(|_| ToughnessError::DegreeTooSmall(d))?;
    let lambda_abs = spectrum.lambda_abs().unwrap_or(0.0);
    Ok(ThresholdReport {
        d,
        lambda2,
        lambda_abs,
        thresholds: Thresholds {
            liu_chen: threshold_liu_chen(d)?,
            cioaba_wong: threshold_cioaba_wong(d)?,
            main2: threshold_main2(d)?,
        },
        lower_bounds: legacy_lower_bounds(d, lambda_abs).ok(),
    })
}

/// Structural test for `G_d`: some vertex neighbourhood `A` is an
/// independent `d`-set whose removal leaves `d − 1` isolated vertices and one
/// `d`-clique matched perfectly onto `A`.
fn is_gd_structural(g: &Graph, d: usize) -> bool {
    let n = g.order();
    for v in 0..n {
        let a = VertexSet::new(g.neighbors(v).iter().copied());
        if a.iter().any(|&x| a.iter().any(|&y| g.has_edge(x, y))) {
            continue;
        }
        let Ok(comps) = g.components_without(&a) else {
            continue;
        };
        if comps.len() != d {
            continue;
        }
        let singles = comps.iter().filter(|c| c.len() == 1).count();
        let Some(clique) = comps.iter().find(|c| c.len() == d) else {
            continue;
        };
        if singles != d - 1 {
            continue;
        }
        let complete = clique
            .iter()
            .all(|&x| clique.iter().all(|&y| x == y || g.has_edge(x, y)));
        // each hub vertex has exactly one clique neighbour, each clique vertex one hub neighbour
        let matched = a
            .iter()
            .all(|&h| g.neighbors(h).iter().filter(|&&w| clique.contains(w)).count() == 1)
            && clique
                .iter()
                .all(|&c| g.neighbors(c).iter().filter(|&&w| a.contains(w)).count() == 1);
        if complete && matched {
            return true;
        }
    }
    false
}

/// Whether `g` is isomorphic to `G_d` with `d` its regular degree.
pub fn is_gd(g: &Graph) -> bool {
    let Some(d) = g.regular_degree() else {
        return false;
    };
    if d < 3 || g.order() != 3 * d - 1 {
        return false;
    }
    if is_gd_structural(g, d) {
        return true;
    }
    g.order() <= 20 && is_isomorphic(g, &gen_gd(d).expect("d ≥ 3"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Prediction {
    #[serde(rename = "t>1")]
    AboveOne,
    #[serde(rename = "t<=1 (G_d)")]
    Extremal,
    #[serde(rename = "t<=1 (bipartite)")]
    Bipartite,
    #[serde(rename = "no-prediction")]
    None,
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prediction::AboveOne => "t>1",
            Prediction::Extremal => "t<=1 (G_d)",
            Prediction::Bipartite => "t<=1 (bipartite)",
            Prediction::None => "no-prediction",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToughnessCertificate {
    pub n: usize,
    pub d: Option<usize>,
    pub violations: Vec<Violation>,
    pub lambda2: Option<f64>,
    pub threshold_main2: Option<f64>,
    pub report: Option<ThresholdReport>,
    pub non_bipartite: bool,
    pub lambda2_within_threshold: Option<Decision>,
    pub is_gd: bool,
    pub prediction: Prediction,
    /// A colour class, whose removal leaves `|S|` isolated vertices.
    pub bipartite_witness: Option<VertexSet>,
    pub exact: Option<ToughnessResult>,
    /// `t ≥ d/λ − 1`, checked when the exact value is known.
    pub gu_bound_holds: Option<bool>,
    /// Present when the exact value was computed.
    pub theorem_consistent: Option<bool>,
    pub borderline: bool,
}

/// The toughness section for any graph. Hypothesis failures are listed in
/// `violations` and give no prediction; the exact value is still computed
/// when `n` is within the limit.
pub fn toughness_section(g: &Graph, spectrum: &Spectrum, cfg: &RunConfig) -> ToughnessCertificate {
    let n = g.order();
    let violations = regular_violations(g);
    let d = g.regular_degree();
    let lambda2 = spectrum.lambda(2).ok();
    let bip = match g.bipartiteness() {
        Bipartiteness::Bipartite(colour) => Some(VertexSet::new((0..n).filter(|&v| colour[v] == 0))),
        Bipartiteness::OddCycle(_) => None,
    };

    let report = d.and_then(|d| threshold_report(d, spectrum).ok());
    let threshold = report.as_ref().map(|r| r.thresholds.main2);
    let within = match (lambda2, threshold) {
        (Some(l2), Some(t)) => Some(at_most(l2, t, cfg.epsilon)),
        _ => None,
    };
    let gd = is_gd(g);

    let prediction = if !violations.is_empty() {
        Prediction::None
    } else if bip.is_some() {
        Prediction::Bipartite
    } else if gd {
        Prediction::Extremal
    } else if within.is_some_and(|w| w.holds) {
        Prediction::AboveOne
    } else {
        Prediction::None
    };

    let exact = (n <= cfg.limits.toughness)
        .then(|| exact_toughness(g, cfg.limits.toughness).ok())
        .flatten();
    let gu_bound_holds = match (&exact, &report) {
        (Some(t), Some(r)) if violations.is_empty() => r
            .lower_bounds
            .map(|b| t.value.as_f64() >= b.gu - cfg.epsilon),
        _ => None,
    };
    let theorem_consistent = exact.as_ref().map(|t| {
        let predicted = match prediction {
            Prediction::AboveOne => t.value.exceeds_one(),
            Prediction::Extremal | Prediction::Bipartite => !t.value.exceeds_one(),
            Prediction::None => true,
        };
        predicted && gu_bound_holds != Some(false)
    });

    ToughnessCertificate {
        n,
        d,
        lambda2,
        threshold_main2: threshold,
        report,
        non_bipartite: bip.is_none(),
        lambda2_within_threshold: within,
        is_gd: gd,
        prediction,
        bipartite_witness: if violations.is_empty() { bip } else { None },
        exact,
        gu_bound_holds,
        theorem_consistent,
        borderline: within.is_some_and(|w| w.borderline),
        violations,
    }
}

/// The toughness certificate for a connected `d`-regular graph, `d ≥ 3`.
pub fn certify_toughness(
    g: &Graph,
    spectrum: &Spectrum,
    cfg: &RunConfig,
) -> Result<ToughnessCertificate, HypothesisError> {
    let cert = toughness_section(g, spectrum, cfg);
    if cert.violations.is_empty() {
        Ok(cert)
    } else {
        Err(HypothesisError(cert.violations))
    }
}
