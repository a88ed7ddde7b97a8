//! Adjacency spectra, quotient matrices of vertex partitions, and eigenvalue
//! interlacing checks.

#![allow(clippy::needless_range_loop)]

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, Partition};

/// Entrywise tolerance for the symmetry precondition.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Off-diagonal Frobenius norm target, relative to `1 + ‖A‖_F`.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Slack allowed in each interlacing inequality.
pub const INTERLACING_SLACK: f64 = 1e-9;
/// Distance at which a quotient eigenvalue counts as a graph eigenvalue.
pub const CONTAINMENT_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("spectrum has {0} values; at least 2 are required")]
    TooSmall(usize),
    #[error("largest eigenvalue {lambda1} of a connected {d}-regular graph differs from d")]
    RegularMismatch { d: usize, lambda1: f64 },
    #[error("quotient of {quotient_order} vertices does not match spectrum of length {spectrum_len}")]
    DimensionMismatch {
        quotient_order: usize,
        spectrum_len: usize,
    },
    #[error("invalid arguments: {0}")]
    Domain(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Eigenvalues sorted in non-increasing order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    /// Convergence tolerance the values were computed with.
    tol: f64,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The `k`-th largest eigenvalue, 1-based.
    pub fn lambda(&self, k: usize) -> Result<f64, SpectralError> {
        if k == 0 || k > self.values.len() {
            return Err(SpectralError::IndexOutOfRange {
                k,
                n: self.values.len(),
            });
        }
        Ok(self.values[k - 1])
    }

    pub fn lambda_min(&self) -> f64 {
        *self.values.last().expect("spectrum is non-empty")
    }

    /// `max(λ₂, −λ_n)`.
    pub fn lambda_abs(&self) -> Result<f64, SpectralError> {
        if self.values.len() < 2 {
            return Err(SpectralError::TooSmall(self.values.len()));
        }
        Ok(self.values[1].max(-self.lambda_min()))
    }

    /// Distinct values with multiplicities, merging neighbours closer than `gap`.
    pub fn grouped(&self, gap: f64) -> Vec<(f64, usize)> {
        let mut groups: Vec<(f64, usize, f64)> = Vec::new();
        for &x in &self.values {
            match groups.last_mut() {
                Some((sum, count, last)) if *last - x < gap => {
                    *sum += x;
                    *count += 1;
                    *last = x;
                }
                _ => groups.push((x, 1, x)),
            }
        }
        groups
            .into_iter()
            .map(|(sum, count, _)| (sum / count as f64, count))
            .collect()
    }
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
pub fn eigenvalues_symmetric(a: &[Vec<f64>]) -> Result<Spectrum, SpectralError> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(SpectralError::NotSquare);
    }
    for i in 0..n {
        for j in i + 1..n {
            if (a[i][j] - a[j][i]).abs() > SYMMETRY_TOLERANCE {
                return Err(SpectralError::NotSymmetric { row: i, col: j });
            }
        }
    }
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let frobenius = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let target = JACOBI_TOLERANCE * (1.0 + frobenius);
    let off_norm = |m: &[Vec<f64>]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i][j] * m[i][j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&m);
        if off <= target {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(SpectralError::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, p, q, c, s);
            }
        }
        sweeps += 1;
    }

    let mut values: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(Spectrum {
        values,
        tol: target,
    })
}

/// Applies `Jᵀ M J` for the plane rotation in `(p, q)`.
fn rotate(m: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let n = m.len();
    for k in 0..n {
        let mkp = m[k][p];
        let mkq = m[k][q];
        m[k][p] = c * mkp - s * mkq;
        m[k][q] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let mpk = m[p][k];
        let mqk = m[q][k];
        m[p][k] = c * mpk - s * mqk;
        m[q][k] = s * mpk + c * mqk;
    }
    m[p][q] = 0.0;
    m[q][p] = 0.0;
}

/// Adjacency spectrum. For connected regular graphs the top eigenvalue is
/// checked against the degree.
pub fn spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    let s = eigenvalues_symmetric(&g.adjacency_matrix())?;
    if let Some(d) = g.regular_degree() {
        if g.is_connected() && (s.values[0] - d as f64).abs() > 1e-8 * (1.0 + d as f64) {
            return Err(SpectralError::RegularMismatch {
                d,
                lambda1: s.values[0],
            });
        }
    }
    Ok(s)
}

/// Quotient matrix `B` of a vertex partition:
/// `b_ij = e(V_i, V_j) / |V_i|` off the diagonal and `b_ii = 2 e(G[V_i]) / |V_i|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientMatrix {
    pub b: Vec<Vec<f64>>,
    pub part_sizes: Vec<usize>,
    /// `edge_counts[i][j] = e(V_i, V_j)` for `i ≠ j` and `2 e(G[V_i])` on the diagonal.
    pub edge_counts: Vec<Vec<usize>>,
    pub equitable: bool,
}

impl QuotientMatrix {
    pub fn order(&self) -> usize {
        self.part_sizes.len()
    }

    /// Eigenvalues of `B`, computed from the similar symmetric matrix
    /// `D^{-1/2} E D^{-1/2}` with `D = diag(|V_i|)`.
    pub fn eigenvalues(&self) -> Result<Spectrum, SpectralError> {
        let m = self.order();
        let sym: Vec<Vec<f64>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        self.edge_counts[i][j] as f64
                            / ((self.part_sizes[i] * self.part_sizes[j]) as f64).sqrt()
                    })
                    .collect()
            })
            .collect();
        eigenvalues_symmetric(&sym)
    }
}

pub fn quotient_matrix(g: &Graph, p: &Partition) -> Result<QuotientMatrix, SpectralError> {
    if p.parts().iter().map(|s| s.len()).sum::<usize>() != g.order() {
        return Err(GraphError::InvalidPartition("partition does not cover the graph".into()).into());
    }
    let m = p.len();
    let mut part_of = vec![0usize; g.order()];
    for (i, part) in p.parts().iter().enumerate() {
        for &v in part {
            part_of[v] = i;
        }
    }
    let mut edge_counts = vec![vec![0usize; m]; m];
    for (u, v) in g.edges() {
        let (i, j) = (part_of[u], part_of[v]);
        edge_counts[i][j] += 1;
        edge_counts[j][i] += 1;
    }
    // the diagonal now holds 2 e(G[V_i]), off-diagonal e(V_i, V_j)

    let mut equitable = true;
    'check: for part in p.parts() {
        let mut expected: Option<Vec<usize>> = None;
        for &v in part {
            let mut counts = vec![0usize; m];
            for &w in g.neighbors(v) {
                counts[part_of[w]] += 1;
            }
            match &expected {
                None => expected = Some(counts),
                Some(e) if *e != counts => {
                    equitable = false;
                    break 'check;
                }
                Some(_) => {}
            }
        }
    }

    let part_sizes: Vec<usize> = p.parts().iter().map(|s| s.len()).collect();
    let b = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| edge_counts[i][j] as f64 / part_sizes[i] as f64)
                .collect()
        })
        .collect();
    Ok(QuotientMatrix {
        b,
        part_sizes,
        edge_counts,
        equitable,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterlacingReport {
    pub holds: bool,
    pub quotient_eigenvalues: Vec<f64>,
    /// `λ_i(G) − λ_i(B)` for each `i`; must be ≥ −slack.
    pub upper_slack: Vec<f64>,
    /// `λ_i(B) − λ_{i+n−m}(G)` for each `i`; must be ≥ −slack.
    pub lower_slack: Vec<f64>,
    /// For equitable partitions: every eigenvalue of `B`, with multiplicity,
    /// occurs in the graph spectrum.
    pub containment: Option<bool>,
}

/// Checks `λ_{i+n−m}(G) ≤ λ_i(B) ≤ λ_i(G)` for all `i`, plus spectrum
/// containment when the partition is equitable.
pub fn check_interlacing(
    graph_spectrum: &Spectrum,
    q: &QuotientMatrix,
) -> Result<InterlacingReport, SpectralError> {
    let n = graph_spectrum.len();
    let order: usize = q.part_sizes.iter().sum();
    if order != n {
        return Err(SpectralError::DimensionMismatch {
            quotient_order: order,
            spectrum_len: n,
        });
    }
    let m = q.order();
    let qs = q.eigenvalues()?;
    let g = graph_spectrum.values();
    let b = qs.values();
    let upper_slack: Vec<f64> = (0..m).map(|i| g[i] - b[i]).collect();
    let lower_slack: Vec<f64> = (0..m).map(|i| b[i] - g[i + n - m]).collect();
    let mut holds = upper_slack
        .iter()
        .chain(&lower_slack)
        .all(|&s| s >= -INTERLACING_SLACK);

    let containment = q.equitable.then(|| {
        let mut used = vec![false; n];
        b.iter().all(|&mu| {
            match (0..n).find(|&k| !used[k] && (g[k] - mu).abs() <= CONTAINMENT_TOLERANCE) {
                Some(k) => {
                    used[k] = true;
                    true
                }
                None => false,
            }
        })
    });
    if containment == Some(false) {
        holds = false;
    }
    Ok(InterlacingReport {
        holds,
        quotient_eigenvalues: b.to_vec(),
        upper_slack,
        lower_slack,
        containment,
    })
}

/// Smaller eigenvalue of the 2×2 matrix `[[a, c], [c, b]]`:
/// `(a + b − √((a − b)² + 4c²)) / 2`, strictly increasing in `a` and `b`.
///
/// Any graph with an induced two-part subgraph whose inner average degrees
/// exceed `a` and `b` and whose cross densities are at most `c` has `λ₂`
/// strictly above this value.
pub fn two_part_lower_bound(a: f64, b: f64, c: f64) -> Result<f64, SpectralError> {
    if !(a >= 0.0 && b >= 0.0 && c > 0.0) || !(a + b + c).is_finite() {
        return Err(SpectralError::Domain(format!(
            "need a, b >= 0 and c > 0, got a = {a}, b = {b}, c = {c}"
        )));
    }
    Ok((a + b - ((a - b).powi(2) + 4.0 * c * c).sqrt()) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, gen_gd, petersen, GdParts};
    use crate::graph::VertexSet;
    use crate::policy::MULTIPLICITY_GAP;

    fn assert_values(s: &Spectrum, expected: &[f64]) {
        assert_eq!(s.len(), expected.len());
        for (x, y) in s.values().iter().zip(expected) {
            assert!((x - y).abs() < 1e-10, "{:?} vs {:?}", s.values(), expected);
        }
    }

    #[test]
    fn solver_examples() {
        let s = eigenvalues_symmetric(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_values(&s, &[1.0, -1.0]);
        let id = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        assert_values(&eigenvalues_symmetric(&id).unwrap(), &[1.0, 1.0, 1.0]);
        assert_values(&spectrum(&cycle(4)).unwrap(), &[2.0, 0.0, 0.0, -2.0]);
    }

    #[test]
    fn solver_rejects_bad_input() {
        assert_eq!(
            eigenvalues_symmetric(&[vec![0.0, 1.0], vec![0.5, 0.0]]),
            Err(SpectralError::NotSymmetric { row: 0, col: 1 })
        );
        assert_eq!(
            eigenvalues_symmetric(&[vec![0.0, 1.0]]),
            Err(SpectralError::NotSquare)
        );
    }

    #[test]
    fn graph_spectra() {
        assert_values(&spectrum(&complete(4)).unwrap(), &[3.0, -1.0, -1.0, -1.0]);
        assert_values(
            &spectrum(&complete_bipartite(3, 3)).unwrap(),
            &[3.0, 0.0, 0.0, 0.0, 0.0, -3.0],
        );
        let p = spectrum(&petersen()).unwrap();
        let grouped = p.grouped(MULTIPLICITY_GAP);
        assert_eq!(grouped.len(), 3);
        let expect = [(3.0, 1), (1.0, 5), (-2.0, 4)];
        for ((x, m), (y, k)) in grouped.iter().zip(expect) {
            assert!((x - y).abs() < 1e-10);
            assert_eq!(*m, k);
        }
    }

    #[test]
    fn cycle_spectrum_closed_form() {
        for n in 3..=12 {
            let mut expected: Vec<f64> = (0..n)
                .map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
                .collect();
            expected.sort_by(|a, b| b.total_cmp(a));
            assert_values(&spectrum(&cycle(n)).unwrap(), &expected);
        }
    }

    #[test]
    fn lambda_accessors() {
        let s = spectrum(&complete(4)).unwrap();
        assert!((s.lambda(2).unwrap() + 1.0).abs() < 1e-12);
        assert!((s.lambda(1).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(s.lambda(5), Err(SpectralError::IndexOutOfRange { k: 5, n: 4 }));
        assert!((s.lambda_abs().unwrap() - 1.0).abs() < 1e-12);
        let kb = spectrum(&complete_bipartite(3, 3)).unwrap();
        assert!((kb.lambda_abs().unwrap() - 3.0).abs() < 1e-12);
        let pet = spectrum(&petersen()).unwrap();
        assert!((pet.lambda_abs().unwrap() - 2.0).abs() < 1e-10);
        let single = spectrum(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!(single.lambda_abs(), Err(SpectralError::TooSmall(1)));
    }

    #[test]
    fn quotient_examples() {
        let g3 = gen_gd(3).unwrap();
        let q = quotient_matrix(&g3, &GdParts::new(3).partition()).unwrap();
        // hub, satellites, clique
        assert_eq!(
            q.b,
            vec![vec![0.0, 2.0, 1.0], vec![3.0, 0.0, 0.0], vec![1.0, 0.0, 2.0]]
        );
        assert!(q.equitable);

        let k4 = complete(4);
        let p = Partition::new(4, vec![VertexSet::new([0]), VertexSet::new([1, 2, 3])]).unwrap();
        let q = quotient_matrix(&k4, &p).unwrap();
        assert_eq!(q.b, vec![vec![0.0, 3.0], vec![1.0, 2.0]]);
        assert!(q.equitable);

        let c4 = cycle(4);
        let p = Partition::new(4, vec![VertexSet::new([0, 1]), VertexSet::new([2, 3])]).unwrap();
        let q = quotient_matrix(&c4, &p).unwrap();
        assert_eq!(q.b, vec![vec![1.0, 1.0], vec![1.0, 1.0]]);
        assert!(q.equitable);

        let p = Partition::new(4, vec![VertexSet::new([0]), VertexSet::new([1, 2, 3])]).unwrap();
        assert!(!quotient_matrix(&c4, &p).unwrap().equitable);
    }

    #[test]
    fn gd_interlacing_and_containment() {
        let g3 = gen_gd(3).unwrap();
        let q = quotient_matrix(&g3, &GdParts::new(3).partition()).unwrap();
        let report = check_interlacing(&spectrum(&g3).unwrap(), &q).unwrap();
        assert!(report.holds);
        assert_eq!(report.containment, Some(true));
        let r17 = 17f64.sqrt();
        let expected = [3.0, (r17 - 1.0) / 2.0, (-1.0 - r17) / 2.0];
        for (x, y) in report.quotient_eigenvalues.iter().zip(expected) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn trivial_partition_interlaces() {
        let g = petersen();
        let p = Partition::new(10, vec![VertexSet::new(0..10)]).unwrap();
        let q = quotient_matrix(&g, &p).unwrap();
        assert_eq!(q.b, vec![vec![3.0]]);
        assert!(check_interlacing(&spectrum(&g).unwrap(), &q).unwrap().holds);
    }

    #[test]
    fn interlacing_dimension_mismatch() {
        let q = quotient_matrix(&complete(4), &Partition::new(4, vec![VertexSet::new(0..4)]).unwrap())
            .unwrap();
        let s = spectrum(&complete(5)).unwrap();
        assert!(matches!(
            check_interlacing(&s, &q),
            Err(SpectralError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn two_part_bound_examples() {
        assert_eq!(two_part_lower_bound(2.0, 2.0, 1.0).unwrap(), 1.0);
        assert_eq!(two_part_lower_bound(0.0, 0.0, 1.0).unwrap(), -1.0);
        let (d, t) = (6.0, 2.0);
        assert_eq!(two_part_lower_bound(d - t - 1.0, d - t - 1.0, t / 2.0).unwrap(), 2.0);
        assert!(two_part_lower_bound(-1.0, 0.0, 1.0).is_err());
        assert!(two_part_lower_bound(0.0, 0.0, 0.0).is_err());
    }
}
