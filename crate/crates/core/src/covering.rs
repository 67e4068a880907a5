//! Graph covering maps: pull-back operators, cover verification, quotient
//! graphs, eigenvector lifting, and quotient-walk equivalence.
//!
//! A surjection `π: V(Y) → V(X)` with pull-back
//! `P = Σ_u Σ_{x∈π⁻¹(u)} |u⟩⟨x| / √|π⁻¹(u)|` makes `Y` a cover of `X`
//! exactly when `P·A(Y) = A(X)·P`. Covers transport spectra downward
//! (`A(X)^r = P A(Y)^r P†`), lift eigenvectors upward (`g = P†f`), and make
//! walks started on fibre-constant states factor through the quotient walk:
//! `U[Y](t) P† = P† U[X](t)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::group::{cayley_graph, schreier_graph, FiniteGroup, GeneratingSet, Subgroup};
use crate::linalg::{Matrix, SymmetricMatrix};
use crate::spectral::{
    eigendecompose, evolve, HamiltonianKind, QuantumState, SpectralDecomposition,
};
use crate::tol;

/// A projection between two graphs together with its fibre structure.
#[derive(Debug, Clone)]
pub struct CoveringMap {
    source: WeightedGraph,
    target: WeightedGraph,
    pi: Vec<usize>,
    fibres: Vec<Vec<usize>>,
}

impl CoveringMap {
    /// Checks that `pi` is total on `V(Y)`, lands in `V(X)`, and is
    /// surjective. Whether it is actually a covering map is decided by
    /// [`CoveringMap::verify`].
    pub fn new(source: WeightedGraph, target: WeightedGraph, pi: Vec<usize>) -> Result<Self> {
        if pi.len() != source.num_vertices() {
            return Err(Error::InvalidProjection);
        }
        let nx = target.num_vertices();
        let mut fibres = vec![Vec::new(); nx];
        for (y, &u) in pi.iter().enumerate() {
            if u >= nx {
                return Err(Error::InvalidProjection);
            }
            fibres[u].push(y);
        }
        if let Some(empty) = fibres.iter().position(|f| f.is_empty()) {
            return Err(Error::NonSurjectiveProjection { target: empty });
        }
        Ok(Self { source, target, pi, fibres })
    }

    pub fn source(&self) -> &WeightedGraph {
        &self.source
    }

    pub fn target(&self) -> &WeightedGraph {
        &self.target
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn fibre(&self, u: usize) -> &[usize] {
        &self.fibres[u]
    }

    pub fn fibre_sizes(&self) -> Vec<usize> {
        self.fibres.iter().map(|f| f.len()).collect()
    }

    /// Index `μ` of a verified cover; errors when the map is not a cover.
    pub fn index_mu(&self) -> Result<f64> {
        let report = self.verify();
        if report.is_cover {
            Ok(report.mu)
        } else {
            Err(Error::NotACover { residual: report.max_residual })
        }
    }

    /// Godsil–McKay check `‖P·A(Y) − A(X)·P‖_max ≤ 1e−9` plus consistency
    /// of the index `μ` across all weighted pairs.
    pub fn verify(&self) -> CoverReport {
        let ay = self.source.adjacency_matrix();
        let ax = self.target.adjacency_matrix();
        let ny = self.source.num_vertices();
        let nx = self.target.num_vertices();

        // max |(P A(Y))_{u,y} − (A(X) P)_{u,y}|
        let mut max_residual = 0.0f64;
        let mut worst = (0usize, 0usize);
        for u in 0..nx {
            let scale_u = 1.0 / (self.fibres[u].len() as f64).sqrt();
            for y in 0..ny {
                let lhs: f64 =
                    self.fibres[u].iter().map(|&x| ay.get(x, y)).sum::<f64>() * scale_u;
                let v = self.pi[y];
                let rhs = ax.get(u, v) / (self.fibres[v].len() as f64).sqrt();
                let r = (lhs - rhs).abs();
                if r > max_residual {
                    max_residual = r;
                    worst = (u, y);
                }
            }
        }

        // Index μ from the weight-sum condition, one value for every pair.
        let mut mu: Option<f64> = None;
        let mut mu_consistent = true;
        for u in 0..nx {
            for v in u..nx {
                let fibre_sum: f64 = self.fibres[u]
                    .iter()
                    .map(|&x| self.fibres[v].iter().map(|&y| ay.get(x, y)).sum::<f64>())
                    .sum();
                let wx = ax.get(u, v);
                let geom = ((self.fibres[u].len() * self.fibres[v].len()) as f64).sqrt();
                if wx != 0.0 {
                    let ratio = fibre_sum / (geom * wx);
                    match mu {
                        None => mu = Some(ratio),
                        Some(m) if (ratio - m).abs() > tol::STRUCTURAL => {
                            mu_consistent = false;
                        }
                        _ => {}
                    }
                } else if fibre_sum.abs() > tol::STRUCTURAL {
                    // w_X(u,v) = 0 forces the fibre sum to vanish.
                    mu_consistent = false;
                }
            }
        }
        // An edgeless pair of graphs is vacuously a cover of index 1.
        let mu = mu.unwrap_or(1.0);
        let is_cover = max_residual <= tol::STRUCTURAL && mu_consistent && mu > 0.0;
        CoverReport {
            is_cover,
            mu,
            max_residual,
            worst_target: worst.0,
            worst_source: worst.1,
        }
    }
}

/// Outcome of [`CoveringMap::verify`]; a false result keeps the worst
/// residual location for diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct CoverReport {
    pub is_cover: bool,
    pub mu: f64,
    pub max_residual: f64,
    /// Target vertex of the worst residual entry.
    pub worst_target: usize,
    /// Source vertex of the worst residual entry.
    pub worst_source: usize,
}

/// Constructs the map and runs [`CoveringMap::verify`].
pub fn verify_cover(
    source: &WeightedGraph,
    target: &WeightedGraph,
    pi: &[usize],
) -> Result<CoverReport> {
    Ok(CoveringMap::new(source.clone(), target.clone(), pi.to_vec())?.verify())
}

/// The pull-back operator `P`, one row per target vertex with value
/// `1/√|π⁻¹(u)|` on that fibre's columns.
#[derive(Debug, Clone)]
pub struct PullbackOperator {
    matrix: Matrix,
}

impl PullbackOperator {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `P ψ` — pushes a source state down to the target space (not generally
    /// norm-preserving).
    pub fn project(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let (nx, ny) = (self.matrix.rows(), self.matrix.cols());
        assert_eq!(ny, psi.len());
        (0..nx)
            .map(|u| {
                self.matrix
                    .row(u)
                    .iter()
                    .zip(psi)
                    .map(|(p, a)| a * *p)
                    .sum()
            })
            .collect()
    }

    /// `P† φ` — the isometric embedding of a target state.
    pub fn embed(&self, phi: &[Complex64]) -> Vec<Complex64> {
        let (nx, ny) = (self.matrix.rows(), self.matrix.cols());
        assert_eq!(nx, phi.len());
        let mut out = vec![Complex64::new(0.0, 0.0); ny];
        for u in 0..nx {
            let row = self.matrix.row(u);
            for (y, &p) in row.iter().enumerate() {
                if p != 0.0 {
                    out[y] += phi[u] * p;
                }
            }
        }
        out
    }
}

/// Builds `P` from the fibre structure.
pub fn pullback_operator(cm: &CoveringMap) -> PullbackOperator {
    let nx = cm.target.num_vertices();
    let ny = cm.source.num_vertices();
    let mut matrix = Matrix::zeros(nx, ny);
    for u in 0..nx {
        let w = 1.0 / (cm.fibre(u).len() as f64).sqrt();
        for &y in cm.fibre(u) {
            matrix.set(u, y, w);
        }
    }
    PullbackOperator { matrix }
}

/// Quotient of `Y` under an equitable projection: the graph with adjacency
/// `P A(Y) P†` (index fixed to `μ = 1`) and the diagonal `P D(Y) P†` needed
/// for the quotient Laplacian.
#[derive(Debug, Clone)]
pub struct QuotientGraph {
    pub graph: WeightedGraph,
    pub mu: f64,
    /// Diagonal of `P D(Y) P†`: the (fibre-constant) degree over each fibre.
    pub degree_diagonal: Vec<f64>,
}

/// Computes the quotient; errors with the violating pair when the partition
/// induced by `pi` is not equitable.
pub fn quotient_graph(source: &WeightedGraph, pi: &[usize]) -> Result<QuotientGraph> {
    let nx = pi.iter().copied().max().map(|m| m + 1).unwrap_or(0);
    let target_placeholder = WeightedGraph::new(nx.max(1))?;
    let cm = CoveringMap::new(source.clone(), target_placeholder, pi.to_vec())?;
    check_equitable(&cm)?;

    let ay = source.adjacency_matrix();
    let mut graph = WeightedGraph::new(nx)?;
    for u in 0..nx {
        for v in u..nx {
            let fibre_sum: f64 = cm
                .fibre(u)
                .iter()
                .map(|&x| cm.fibre(v).iter().map(|&y| ay.get(x, y)).sum::<f64>())
                .sum();
            let geom = ((cm.fibre(u).len() * cm.fibre(v).len()) as f64).sqrt();
            let w = fibre_sum / geom;
            if w != 0.0 {
                graph.set_weight(u, v, w)?;
            }
        }
    }
    let degree_diagonal = (0..nx)
        .map(|u| {
            cm.fibre(u)
                .iter()
                .map(|&x| source.degree(x).expect("vertex in range"))
                .sum::<f64>()
                / cm.fibre(u).len() as f64
        })
        .collect();
    Ok(QuotientGraph { graph, mu: 1.0, degree_diagonal })
}

/// Definition of equitability: vertices in the same fibre see the same
/// weight sum into every fibre.
fn check_equitable(cm: &CoveringMap) -> Result<()> {
    let ay = cm.source.adjacency_matrix();
    let ny = cm.source.num_vertices();
    let nx = cm.fibres.len();
    // h[x][v] = Σ_{z ∈ π⁻¹(v)} w(z, x)
    let mut h = Matrix::zeros(ny, nx);
    for x in 0..ny {
        for v in 0..nx {
            let s: f64 = cm.fibre(v).iter().map(|&z| ay.get(z, x)).sum();
            h.set(x, v, s);
        }
    }
    for (u, fibre) in cm.fibres.iter().enumerate() {
        let first = fibre[0];
        for &x in &fibre[1..] {
            for v in 0..nx {
                let a = h.get(first, v);
                let b = h.get(x, v);
                if (a - b).abs() > tol::STRUCTURAL {
                    return Err(Error::FibreNotEquitable {
                        target: u,
                        a: first,
                        b: x,
                        towards: v,
                        sum_a: a,
                        sum_b: b,
                    });
                }
            }
        }
    }
    Ok(())
}

/// The projection `g ↦ gH` from a Cayley graph onto its Schreier graph,
/// packaged as a verified covering map.
pub fn cayley_to_schreier_map(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    gens: &GeneratingSet,
) -> Result<CoveringMap> {
    let y = cayley_graph(group, gens)?;
    let (x, coset) = schreier_graph(group, subgroup, gens)?;
    let cm = CoveringMap::new(y, x, coset)?;
    let report = cm.verify();
    if !report.is_cover {
        return Err(Error::NotACover { residual: report.max_residual });
    }
    Ok(cm)
}

/// `P†|φ⟩`: spreads each target amplitude uniformly over its fibre.
pub fn lift_state(cm: &CoveringMap, phi: &QuantumState) -> Result<QuantumState> {
    if phi.dim() != cm.target.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: cm.target.num_vertices(),
            got: phi.dim(),
        });
    }
    let p = pullback_operator(cm);
    QuantumState::from_amplitudes(p.embed(phi.amplitudes()))
}

/// Whether `ψ` lies in the image of `P†` (equal amplitude across each fibre).
pub fn is_fibre_constant(cm: &CoveringMap, psi: &QuantumState) -> Result<bool> {
    if psi.dim() != cm.source.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: cm.source.num_vertices(),
            got: psi.dim(),
        });
    }
    // P†P averages over fibres; compare with the original state.
    let mut defect_sq = 0.0f64;
    for fibre in &cm.fibres {
        let mean: Complex64 = fibre.iter().map(|&y| psi.amplitude(y)).sum::<Complex64>()
            / fibre.len() as f64;
        for &y in fibre {
            defect_sq += (psi.amplitude(y) - mean).norm_sqr();
        }
    }
    Ok(defect_sq.sqrt() <= tol::STATE)
}

/// Lifts an eigenpair of `A(X)` to one of `A(Y)` via `g = P†f`.
pub fn lift_eigenvector(cm: &CoveringMap, f: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let report = cm.verify();
    if !report.is_cover {
        return Err(Error::NotACover { residual: report.max_residual });
    }
    let ax = cm.target.adjacency_matrix();
    if f.len() != ax.dim() {
        return Err(Error::DimensionMismatch { expected: ax.dim(), got: f.len() });
    }
    // Input must actually be an eigenpair.
    let mut residual = 0.0f64;
    for u in 0..ax.dim() {
        let av: f64 = ax.row(u).iter().zip(f).map(|(a, b)| a * b).sum();
        residual += (av - lambda * f[u]).powi(2);
    }
    let residual = residual.sqrt();
    if residual > tol::STRUCTURAL {
        return Err(Error::NotAnEigenpair { residual });
    }
    let mut g = vec![0.0; cm.source.num_vertices()];
    for (u, fibre) in cm.fibres.iter().enumerate() {
        let w = f[u] / (fibre.len() as f64).sqrt();
        for &y in fibre {
            g[y] = w;
        }
    }
    Ok(g)
}

/// Sorted-multiset containment of `sub` inside `full` within `tolerance`.
pub fn spectrum_contained(sub: &[f64], full: &[f64], tolerance: f64) -> bool {
    let mut a = sub.to_vec();
    let mut b = full.to_vec();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut j = 0usize;
    for &lam in &a {
        let mut found = false;
        while j < b.len() {
            if (b[j] - lam).abs() <= tolerance {
                found = true;
                j += 1;
                break;
            }
            if b[j] > lam + tolerance {
                break;
            }
            j += 1;
        }
        if !found {
            return false;
        }
    }
    true
}

/// Precomputed spectral data for repeated quotient-walk checks against one
/// covering map.
///
/// The quotient Hamiltonians are the matrices `P A(Y) P†` and
/// `P D(Y) P† − P A(Y) P†` read off the cover, not the intrinsic operators
/// of the stored target graph; for a verified cover the two agree.
pub struct QuotientWalkChecker {
    cm: CoveringMap,
    y_adj: SpectralDecomposition,
    y_lap: SpectralDecomposition,
    x_adj: SpectralDecomposition,
    x_lap: SpectralDecomposition,
}

impl QuotientWalkChecker {
    /// Verifies the cover and eigendecomposes all four walk generators.
    /// For a regular source graph the Laplacian decomposition reuses the
    /// adjacency basis through the exact identity `Δ = d·I − A`.
    pub fn new(cm: CoveringMap) -> Result<Self> {
        let report = cm.verify();
        if !report.is_cover {
            return Err(Error::NotACover { residual: report.max_residual });
        }
        let y_adj = eigendecompose(&cm.source.adjacency_matrix())?;
        let (regular, degree) = cm.source.is_regular();
        let y_lap = if regular {
            shift_reflect(&y_adj, degree)
        } else {
            eigendecompose(&cm.source.laplacian())?
        };

        let quotient = quotient_graph(&cm.source, &cm.pi)?;
        let qa = quotient.graph.adjacency_matrix();
        let x_adj = eigendecompose(&qa)?;
        let mut ql = SymmetricMatrix::zeros(qa.dim());
        for u in 0..qa.dim() {
            for v in u..qa.dim() {
                if u == v {
                    ql.set_sym(u, u, quotient.degree_diagonal[u] - qa.get(u, u));
                } else {
                    ql.set_sym(u, v, -qa.get(u, v));
                }
            }
        }
        let x_lap = eigendecompose(&ql)?;
        Ok(Self { cm, y_adj, y_lap, x_adj, x_lap })
    }

    pub fn map(&self) -> &CoveringMap {
        &self.cm
    }

    /// `‖U[Y](t)·P†φ − P†·U[X](t)φ‖₂`.
    pub fn residual(&self, phi: &QuantumState, t: f64, kind: HamiltonianKind) -> Result<f64> {
        let (dy, dx) = match kind {
            HamiltonianKind::Adjacency => (&self.y_adj, &self.x_adj),
            HamiltonianKind::Laplacian => (&self.y_lap, &self.x_lap),
        };
        let lifted = lift_state(&self.cm, phi)?;
        let evolved_up = evolve(&lifted, dy, t)?;
        let evolved_down = evolve(phi, dx, t)?;
        let relifted = lift_state(&self.cm, &evolved_down)?;
        Ok(evolved_up.distance(&relifted))
    }
}

/// Decomposition of `shift·I − M` from a decomposition of `M`: same basis,
/// reflected eigenvalues, re-sorted ascending.
fn shift_reflect(d: &SpectralDecomposition, shift: f64) -> SpectralDecomposition {
    let n = d.dim();
    let mut order: Vec<usize> = (0..n).collect();
    // shift − λ reverses the ascending order.
    order.sort_by(|&i, &j| {
        let a = shift - d.eigenvalues()[i];
        let b = shift - d.eigenvalues()[j];
        a.partial_cmp(&b).unwrap().then(i.cmp(&j))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| shift - d.eigenvalues()[i]).collect();
    let mut vt = Matrix::zeros(n, n);
    for (row, &src) in order.iter().enumerate() {
        for (col, &x) in d.vector(src).iter().enumerate() {
            vt.set(row, col, x);
        }
    }
    SpectralDecomposition::from_parts(eigenvalues, vt)
}

/// One-shot [`QuotientWalkChecker::residual`]; prefer the checker when
/// sweeping many states or times over the same cover.
pub fn quotient_walk_residual(
    cm: &CoveringMap,
    phi: &QuantumState,
    t: f64,
    kind: HamiltonianKind,
) -> Result<f64> {
    QuotientWalkChecker::new(cm.clone())?.residual(phi, t, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group;
    use crate::rng::SplitMix64;

    fn hamming_cover(n: usize) -> CoveringMap {
        let q = group::hypercube(n).unwrap();
        let (path, pi) = group::hypercube_path_quotient(n).unwrap();
        CoveringMap::new(q, path, pi).unwrap()
    }

    fn random_state(dim: usize, rng: &mut SplitMix64) -> QuantumState {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.next_gaussian(), rng.next_gaussian()))
            .collect();
        QuantumState::normalised(amps).unwrap()
    }

    #[test]
    fn pullback_identity_map() {
        let g = group::cycle(4).unwrap();
        let cm = CoveringMap::new(g.clone(), g, vec![0, 1, 2, 3]).unwrap();
        let p = pullback_operator(&cm);
        assert!(p.matrix().sub(&Matrix::identity(4)).max_abs() < 1e-15);
        assert!(cm.verify().is_cover);
        assert!((cm.index_mu().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pullback_all_to_one() {
        let g = group::cycle(4).unwrap();
        let target = {
            let mut t = WeightedGraph::new(1).unwrap();
            t.set_weight(0, 0, 2.0).unwrap();
            t
        };
        let cm = CoveringMap::new(g, target, vec![0, 0, 0, 0]).unwrap();
        let p = pullback_operator(&cm);
        for y in 0..4 {
            assert!((p.matrix().get(0, y) - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn pullback_hamming_q2() {
        let cm = hamming_cover(2);
        let p = pullback_operator(&cm);
        assert_eq!(p.matrix().rows(), 3);
        assert_eq!(p.matrix().cols(), 4);
        let s = 1.0 / 2f64.sqrt();
        // Vertices 1 and 2 have Hamming weight one.
        let want = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, s, s, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        for u in 0..3 {
            for y in 0..4 {
                assert!((p.matrix().get(u, y) - want[u][y]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn pullback_operator_identities() {
        let cm = hamming_cover(3);
        let p = pullback_operator(&cm).matrix().clone();
        let ppt = p.matmul(&p.transpose());
        assert!(ppt.sub(&Matrix::identity(4)).max_abs() < tol::ISOMETRY);
        let ptp = p.transpose().matmul(&p);
        assert!(ptp.matmul(&ptp).sub(&ptp).max_abs() < tol::ISOMETRY);
    }

    #[test]
    fn project_after_embed_is_identity() {
        // P P† = I acting on states: pushing a lifted state back down
        // recovers the original amplitudes.
        let cm = hamming_cover(3);
        let p = pullback_operator(&cm);
        let mut rng = SplitMix64::new(6);
        let phi = random_state(4, &mut rng);
        let down = p.project(&p.embed(phi.amplitudes()));
        for (a, b) in down.iter().zip(phi.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn verify_hamming_cover_q3() {
        let cm = hamming_cover(3);
        let report = cm.verify();
        assert!(report.is_cover, "residual {}", report.max_residual);
        assert!((report.mu - 1.0).abs() < 1e-12);
        assert!(report.max_residual <= tol::STRUCTURAL);
    }

    #[test]
    fn verify_rejects_inequitable_blocks() {
        // Path 0–1–2 with blocks {0,1},{2}: vertex 0 has no neighbour in
        // {2} but vertex 1 does.
        let mut p3 = WeightedGraph::new(3).unwrap();
        p3.set_weight(0, 1, 1.0).unwrap();
        p3.set_weight(1, 2, 1.0).unwrap();
        let mut target = WeightedGraph::new(2).unwrap();
        target.set_weight(0, 1, 1.0).unwrap();
        let report = verify_cover(&p3, &target, &[0, 0, 1]).unwrap();
        assert!(!report.is_cover);
        assert!(report.max_residual > 1e-3);
    }

    #[test]
    fn quotient_of_q2_is_weighted_path() {
        let q2 = group::hypercube(2).unwrap();
        let (_, pi) = group::hypercube_path_quotient(2).unwrap();
        let q = quotient_graph(&q2, &pi).unwrap();
        let s = 2f64.sqrt();
        assert_eq!(q.graph.num_vertices(), 3);
        assert!((q.graph.weight(0, 1) - s).abs() < 1e-12);
        assert!((q.graph.weight(1, 2) - s).abs() < 1e-12);
        assert_eq!(q.mu, 1.0);
    }

    #[test]
    fn quotient_under_trivial_map_is_same_graph() {
        let g = group::cycle(5).unwrap();
        let q = quotient_graph(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(q.graph, g);
    }

    #[test]
    fn quotient_c6_mod_3() {
        let c6 = group::cycle(6).unwrap();
        let pi: Vec<usize> = (0..6).map(|k| k % 3).collect();
        let q = quotient_graph(&c6, &pi).unwrap();
        assert_eq!(q.graph, group::cycle(3).unwrap());
    }

    #[test]
    fn quotient_rejects_inequitable_partition() {
        let mut p3 = WeightedGraph::new(3).unwrap();
        p3.set_weight(0, 1, 1.0).unwrap();
        p3.set_weight(1, 2, 1.0).unwrap();
        assert!(matches!(
            quotient_graph(&p3, &[0, 0, 1]),
            Err(Error::FibreNotEquitable { .. })
        ));
    }

    #[test]
    fn cayley_to_schreier_z6() {
        let z6 = group::cyclic_group(6).unwrap();
        let h = Subgroup::new(&z6, [0, 3]).unwrap();
        let s = GeneratingSet::new(&z6, [1, 5]).unwrap();
        let cm = cayley_to_schreier_map(&z6, &h, &s).unwrap();
        assert_eq!(cm.fibre_sizes(), vec![2, 2, 2]);
        assert!((cm.index_mu().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cayley_to_schreier_d3_with_loops() {
        let d3 = group::dihedral_group(3).unwrap();
        let h = Subgroup::generated(&d3, &[3]).unwrap();
        let s = GeneratingSet::new(&d3, [1, 2, 3]).unwrap();
        let cm = cayley_to_schreier_map(&d3, &h, &s).unwrap();
        assert_eq!(cm.target().num_vertices(), 3);
        let loops: f64 = (0..3).map(|u| cm.target().weight(u, u)).sum();
        assert!(loops > 0.0);
        assert!(cm.verify().is_cover);
    }

    #[test]
    fn cayley_to_schreier_trivial_subgroup() {
        let z4 = group::cyclic_group(4).unwrap();
        let h = Subgroup::new(&z4, [0]).unwrap();
        let s = GeneratingSet::new(&z4, [1, 3]).unwrap();
        let cm = cayley_to_schreier_map(&z4, &h, &s).unwrap();
        assert_eq!(cm.target(), cm.source());
        assert_eq!(cm.pi(), &[0, 1, 2, 3]);
    }

    #[test]
    fn lift_state_examples() {
        let cm = hamming_cover(2);
        let phi = QuantumState::basis_state(3, 1).unwrap();
        let lifted = lift_state(&cm, &phi).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((lifted.amplitude(1) - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert!((lifted.amplitude(2) - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert!(lifted.amplitude(0).norm() < 1e-15);
        assert!((lifted.norm() - 1.0).abs() < 1e-15);
        assert!(is_fibre_constant(&cm, &lifted).unwrap());
    }

    #[test]
    fn fibre_constancy_detects_perturbation() {
        let cm = hamming_cover(2);
        // A state concentrated on one vertex of the middle (size-2) fibre.
        let single = QuantumState::basis_state(4, 1).unwrap();
        assert!(!is_fibre_constant(&cm, &single).unwrap());
        // Lifted state plus an orthogonal-to-image perturbation of norm 1e−3.
        let phi = QuantumState::uniform(3).unwrap();
        let lifted = lift_state(&cm, &phi).unwrap();
        let mut amps = lifted.amplitudes().to_vec();
        let eps = 1e-3 / 2f64.sqrt();
        amps[1] += Complex64::new(eps, 0.0);
        amps[2] -= Complex64::new(eps, 0.0);
        let perturbed = QuantumState::normalised(amps).unwrap();
        assert!(!is_fibre_constant(&cm, &perturbed).unwrap());
    }

    #[test]
    fn lift_eigenvector_examples() {
        let cm = hamming_cover(3);
        let dq = eigendecompose(&cm.target().adjacency_matrix()).unwrap();
        let ay = cm.source().adjacency_matrix();
        for j in 0..dq.dim() {
            let lam = dq.eigenvalues()[j];
            let g = lift_eigenvector(&cm, dq.vector(j), lam).unwrap();
            let mut residual = 0.0f64;
            for u in 0..8 {
                let av: f64 = ay.row(u).iter().zip(&g).map(|(a, b)| a * b).sum();
                residual += (av - lam * g[u]).powi(2);
            }
            assert!(residual.sqrt() < 1e-8, "eigenpair {j} lifts badly");
        }
        // Rejects a non-eigenpair.
        let junk = vec![1.0, 0.0, 0.0, 0.0];
        assert!(matches!(
            lift_eigenvector(&cm, &junk, 0.5),
            Err(Error::NotAnEigenpair { .. })
        ));
    }

    #[test]
    fn quotient_walk_residual_small_on_covers() {
        let cm = hamming_cover(3);
        let checker = QuotientWalkChecker::new(cm).unwrap();
        let mut rng = SplitMix64::new(11);
        for &t in &[0.5, 1.0, 10.0] {
            for kind in [HamiltonianKind::Adjacency, HamiltonianKind::Laplacian] {
                let phi = random_state(4, &mut rng);
                let r = checker.residual(&phi, t, kind).unwrap();
                assert!(r <= tol::EVOLUTION, "t={t} kind={kind:?} r={r}");
            }
        }
        // t = 0 gives exactly the embedding on both sides.
        let phi = QuantumState::basis_state(4, 0).unwrap();
        let r = checker.residual(&phi, 0.0, HamiltonianKind::Laplacian).unwrap();
        assert!(r < 1e-14);
    }

    #[test]
    fn corrupted_edge_breaks_quotient_walk() {
        let q3 = group::hypercube(3).unwrap();
        let (path, pi) = group::hypercube_path_quotient(3).unwrap();
        let mut bad = q3.clone();
        bad.set_weight(0, 1, 1.5).unwrap();
        let cm = CoveringMap::new(bad, path, pi).unwrap();
        // The corrupted map no longer verifies.
        assert!(!cm.verify().is_cover);
        assert!(matches!(
            QuotientWalkChecker::new(cm),
            Err(Error::NotACover { .. })
        ));
    }

    #[test]
    fn spectrum_containment_for_hamming_cover() {
        let cm = hamming_cover(4);
        let dy = eigendecompose(&cm.source().adjacency_matrix()).unwrap();
        let dx = eigendecompose(&cm.target().adjacency_matrix()).unwrap();
        assert!(spectrum_contained(
            dx.eigenvalues(),
            dy.eigenvalues(),
            tol::SPECTRUM_MATCH
        ));
        // The reverse containment fails: Y has strictly more eigenvalues.
        assert!(!spectrum_contained(
            dy.eigenvalues(),
            dx.eigenvalues(),
            tol::SPECTRUM_MATCH
        ));
    }

    #[test]
    fn quotient_powers_match() {
        // A(X)^r = P A(Y)^r P† for r = 1, 2, 3.
        let cm = hamming_cover(3);
        let p = pullback_operator(&cm).matrix().clone();
        let ay = cm.source().adjacency_matrix().to_matrix();
        let ax = cm.target().adjacency_matrix().to_matrix();
        let mut ay_pow = Matrix::identity(8);
        let mut ax_pow = Matrix::identity(4);
        for _ in 0..3 {
            ay_pow = ay_pow.matmul(&ay);
            ax_pow = ax_pow.matmul(&ax);
            let projected = p.matmul(&ay_pow).matmul(&p.transpose());
            assert!(projected.sub(&ax_pow).max_abs() < 1e-10);
        }
    }
}
