//! Cross-oracle suites: each compares a production routine against an
//! independent computation on seeded samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::exact_eigenvalues;
use crate::generators::{gen_gd, gen_gnp, gen_random_regular, GdParts};
use crate::graph::{Graph, Partition};
use crate::matching::{
    has_perfect_matching, maximum_matching, pm_threshold_lambda3, theta, tutte_berge_deficiency,
    tutte_witness,
};
use crate::spectral::{check_interlacing, quotient_matrix, spectrum};
use crate::toughness::{main2_sandwich, threshold_main2};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    /// First failure, if any.
    pub detail: String,
}

impl SuiteReport {
    fn from_failures(name: &'static str, checked: usize, failures: Vec<String>) -> Self {
        Self {
            name,
            passed: failures.is_empty(),
            checked,
            detail: failures.into_iter().next().unwrap_or_default(),
        }
    }
}

fn sample_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(2..=max_n);
    let p = [0.15, 0.3, 0.5, 0.7][rng.gen_range(0..4)];
    gen_gnp(n, p, rng.gen())
}

/// Blossom and the Tutte condition agree on perfect matchability, and the
/// maximum matching size obeys the Tutte–Berge formula.
pub fn suite_tutte_blossom(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut checked = 0;
    for i in 0..300 {
        let g = if i % 3 == 0 {
            let d = rng.gen_range(3..=4);
            gen_random_regular(2 * rng.gen_range(3..=6), d, rng.gen()).unwrap()
        } else {
            sample_graph(&mut rng, 12)
        };
        let n = g.order();
        let pm = has_perfect_matching(&g);
        let scan = tutte_witness(&g, 16);
        let barrier = tutte_witness(&g, 0);
        if pm != scan.is_none() || pm != barrier.is_none() {
            failures.push(format!("{:?}: blossom says {pm}, Tutte scan disagrees", g.label()));
        }
        let nu = maximum_matching(&g).len();
        if 2 * nu != n - tutte_berge_deficiency(&g) {
            failures.push(format!("{:?}: matching {nu} violates Tutte-Berge", g.label()));
        }
        checked += 1;
    }
    SuiteReport::from_failures("tutte-blossom", checked, failures)
}

/// Jacobi eigenvalues agree with the exact characteristic-polynomial roots.
pub fn suite_eigen_charpoly(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut checked = 0;
    for _ in 0..200 {
        let g = sample_graph(&mut rng, 8);
        let numeric = spectrum(&g).unwrap();
        let exact = exact_eigenvalues(&g);
        let worst = numeric
            .values()
            .iter()
            .zip(&exact)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if exact.len() != numeric.len() || worst > 1e-8 {
            failures.push(format!("{:?}: eigenvalue error {worst:e}", g.label()));
        }
        checked += 1;
    }
    SuiteReport::from_failures("eigen-charpoly", checked, failures)
}

/// Quotient eigenvalues interlace the graph spectrum for random partitions,
/// and lie in it for equitable ones.
pub fn suite_interlacing(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut checked = 0;
    for i in 0..1000 {
        let (g, p) = if i % 50 == 0 {
            let d = 3 + (i / 50) % 6;
            (gen_gd(d).unwrap(), GdParts::new(d).partition())
        } else {
            let g = sample_graph(&mut rng, 12);
            let n = g.order();
            let m = rng.gen_range(1..=n);
            let mut labels: Vec<usize> = (0..n).map(|v| if v < m { v } else { rng.gen_range(0..m) }).collect();
            for k in (1..n).rev() {
                labels.swap(k, rng.gen_range(0..=k));
            }
            (g, Partition::from_labels(&labels).unwrap())
        };
        let s = spectrum(&g).unwrap();
        let q = quotient_matrix(&g, &p).unwrap();
        let report = check_interlacing(&s, &q).unwrap();
        if !report.holds {
            failures.push(format!("{:?} with {} parts fails interlacing", g.label(), p.len()));
        }
        checked += 1;
    }
    SuiteReport::from_failures("interlacing", checked, failures)
}

/// The bracket around `λ₂(G_d)` for `d ≤ 50`, and the eigensolver's `λ₂(G_d)`
/// against the closed form for `d ≤ 10`.
pub fn suite_gd_lambda2() -> SuiteReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for d in 3..=50 {
        let t = threshold_main2(d).unwrap();
        let (lo, hi) = main2_sandwich(d);
        if !(lo < t && t < hi) {
            failures.push(format!("d = {d}: {lo} < {t} < {hi} fails"));
        }
        checked += 1;
    }
    for d in 3..=10 {
        let l2 = spectrum(&gen_gd(d).unwrap()).unwrap().lambda(2).unwrap();
        let t = threshold_main2(d).unwrap();
        if (l2 - t).abs() > 1e-9 {
            failures.push(format!("d = {d}: lambda2 {l2} vs closed form {t}"));
        }
        checked += 1;
    }
    SuiteReport::from_failures("gd-lambda2", checked, failures)
}

/// `θ` is a root of `x³ − x² − 6x + 2` and equals 2.85577 to four places.
pub fn suite_theta() -> SuiteReport {
    let t = theta();
    let residual = ((t - 1.0) * t - 6.0) * t + 2.0;
    let mut failures = Vec::new();
    if residual.abs() > 1e-12 {
        failures.push(format!("residual {residual:e} at {t}"));
    }
    if (t - 2.85577).abs() > 1e-4 {
        failures.push(format!("theta = {t}"));
    }
    if pm_threshold_lambda3(3).ok() != Some(t) {
        failures.push("d = 3 threshold is not theta".into());
    }
    SuiteReport::from_failures("theta", 3, failures)
}

pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    vec![
        suite_tutte_blossom(seed),
        suite_eigen_charpoly(seed),
        suite_interlacing(seed),
        suite_gd_lambda2(),
        suite_theta(),
    ]
}
