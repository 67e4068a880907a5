//! Spectral decompositions, heat kernels, propagators, and the circulant
//! fast path.
//!
//! The eigensolver is the classic symmetric pair of Householder
//! tridiagonalization and implicit-shift QL iteration: deterministic for
//! identical input bits and no external dependency. Heat kernel and
//! propagator are spectral sums `H(τ) = Σ e^{−λτ} v vᵀ` and
//! `U(t) = Σ e^{−iλt} v vᵀ`; symmetric circulant matrices bypass the dense
//! solver entirely because the Fourier modes diagonalise them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;
use crate::graph::WeightedGraph;
use crate::linalg::{ComplexMatrix, Matrix, SymmetricMatrix};
use crate::tol;
use crate::VERTEX_CAP;

/// Which operator generates the walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianKind {
    /// `Δ = D − A`, the convention of the walk definition.
    Laplacian,
    /// The adjacency matrix; for regular graphs the two walks differ by the
    /// global phase `e^{−i d t}` and a time reversal.
    Adjacency,
}

impl Default for HamiltonianKind {
    /// The walk is generated by the Laplacian unless a caller opts into the
    /// adjacency convention (gate compilation and hidden-cover sampling do).
    fn default() -> Self {
        HamiltonianKind::Laplacian
    }
}

impl HamiltonianKind {
    pub fn matrix(&self, g: &WeightedGraph) -> SymmetricMatrix {
        match self {
            HamiltonianKind::Laplacian => g.laplacian(),
            HamiltonianKind::Adjacency => g.adjacency_matrix(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            HamiltonianKind::Laplacian => "laplacian",
            HamiltonianKind::Adjacency => "adjacency",
        }
    }
}

/// Eigenvalues (ascending) and an orthonormal eigenbasis of a symmetric
/// matrix. Eigenvectors are stored as rows of `vectors_t` (so `vector(j)` is
/// a contiguous slice); as columns they form the orthogonal matrix `Q` with
/// `Qᵀ M Q = diag(λ)`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    vectors_t: Matrix,
}

impl SpectralDecomposition {
    pub(crate) fn from_parts(eigenvalues: Vec<f64>, vectors_t: Matrix) -> Self {
        debug_assert_eq!(eigenvalues.len(), vectors_t.rows());
        debug_assert_eq!(eigenvalues.len(), vectors_t.cols());
        Self { eigenvalues, vectors_t }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `j`-th eigenvector, matching `eigenvalues()[j]`.
    pub fn vector(&self, j: usize) -> &[f64] {
        self.vectors_t.row(j)
    }

    /// The orthogonal matrix whose columns are the eigenvectors.
    pub fn basis_matrix(&self) -> Matrix {
        self.vectors_t.transpose()
    }

    /// `Q diag(λ) Qᵀ`, for residual checks.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for j in 0..n {
            let lam = self.eigenvalues[j];
            if lam == 0.0 {
                continue;
            }
            let v = self.vector(j);
            for r in 0..n {
                let f = lam * v[r];
                for c in 0..n {
                    out.set(r, c, out.get(r, c) + f * v[c]);
                }
            }
        }
        out
    }

    /// `max |QᵀQ − I|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let dot: f64 =
                    self.vector(i).iter().zip(self.vector(j)).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// Contiguous index ranges of eigenvalues closer than `gap`, each with
    /// the group's mean eigenvalue. Input order is ascending, so groups are
    /// intervals.
    pub fn eigen_groups(&self, gap: f64) -> Vec<(f64, std::ops::Range<usize>)> {
        let mut groups = Vec::new();
        let n = self.dim();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && (self.eigenvalues[end] - self.eigenvalues[end - 1]).abs() < gap {
                end += 1;
            }
            let mean =
                self.eigenvalues[start..end].iter().sum::<f64>() / (end - start) as f64;
            groups.push((mean, start..end));
            start = end;
        }
        groups
    }
}

/// Full eigendecomposition of a symmetric matrix: Householder reduction to
/// tridiagonal form followed by the implicit-shift QL iteration, with the
/// orthogonal factor accumulated as rows (so every inner loop streams
/// contiguous memory). Deterministic for identical input bits.
pub fn eigendecompose(m: &SymmetricMatrix) -> Result<SpectralDecomposition> {
    let n = m.dim();
    if n > VERTEX_CAP {
        return Err(Error::VertexCapExceeded { requested: n, cap: VERTEX_CAP });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let mut a: Vec<f64> = m.data().to_vec();
    let (mut d, mut e, house) = tridiagonalize(&mut a, n);
    // vt = Qᵀ of the Householder product, accumulated backward.
    let mut vt = accumulate_transposed(&house, n);
    ql_implicit(&mut d, &mut e, &mut vt, n)?;

    // Sort ascending, stable in iteration index for determinism.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap().then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut sorted_vt = Matrix::zeros(n, n);
    for (row, &src) in order.iter().enumerate() {
        for k in 0..n {
            sorted_vt.set(row, k, vt[src * n + k]);
        }
    }
    Ok(SpectralDecomposition::from_parts(eigenvalues, sorted_vt))
}

/// One Householder reflector `H = I − β v vᵀ`, supported on indices
/// `k+1..n` of the original matrix.
struct Reflector {
    start: usize,
    beta: f64,
    v: Vec<f64>,
}

/// Householder tridiagonalization `Qᵀ A Q = T`; returns the diagonal `d`,
/// subdiagonal `e` (`e[i] = T[i][i+1]`, last entry zero) and the reflectors.
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>, Vec<Reflector>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut house = Vec::new();
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        // x = A[k, k+1..n]
        let x: Vec<f64> = (0..len).map(|i| a[k * n + (k + 1 + i)]).collect();
        let norm_x = x.iter().map(|t| t * t).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let alpha = if x[0] >= 0.0 { -norm_x } else { norm_x };
        // v = x − α e₁, β = 2/‖v‖²
        let mut v = x;
        v[0] -= alpha;
        let vsq: f64 = v.iter().map(|t| t * t).sum();
        if vsq == 0.0 {
            e[k] = alpha;
            continue;
        }
        let beta = 2.0 / vsq;
        e[k] = alpha;
        a[k * n + (k + 1)] = alpha;
        a[(k + 1) * n + k] = alpha;
        for i in 1..len {
            a[k * n + (k + 1 + i)] = 0.0;
            a[(k + 1 + i) * n + k] = 0.0;
        }
        // p = β·B·v on the trailing block B = A[k+1.., k+1..]
        let mut p = vec![0.0; len];
        for i in 0..len {
            let row = &a[(k + 1 + i) * n + (k + 1)..(k + 1 + i) * n + n];
            let mut acc = 0.0;
            for (r, vv) in row.iter().zip(&v) {
                acc += r * vv;
            }
            p[i] = beta * acc;
        }
        let pv: f64 = p.iter().zip(&v).map(|(x, y)| x * y).sum();
        let half = 0.5 * beta * pv;
        let w: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - half * vi).collect();
        // B ← B − v wᵀ − w vᵀ, streamed row by row.
        for i in 0..len {
            let (vi, wi) = (v[i], w[i]);
            let row = &mut a[(k + 1 + i) * n + (k + 1)..(k + 1 + i) * n + n];
            for ((r, &vj), &wj) in row.iter_mut().zip(&v).zip(&w) {
                *r -= vi * wj + wi * vj;
            }
        }
        house.push(Reflector { start: k + 1, beta, v });
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    if n >= 2 {
        e[n - 2] = a[(n - 2) * n + (n - 1)];
    }
    e[n - 1] = 0.0;
    (d, e, house)
}

/// `Qᵀ = H_{last} ⋯ H_0` accumulated backward into a row-major buffer;
/// rows of the result are the rows of `Qᵀ`.
fn accumulate_transposed(house: &[Reflector], n: usize) -> Vec<f64> {
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        q[i * n + i] = 1.0;
    }
    for h in house.iter().rev() {
        let s = h.start;
        let len = h.v.len();
        // q ← q·H = q − β (q v) vᵀ, restricted to the active block.
        let mut qv = vec![0.0; n - s];
        for (qi, slot) in qv.iter_mut().enumerate() {
            let row = &q[(s + qi) * n + s..(s + qi) * n + s + len];
            let mut acc = 0.0;
            for (r, vv) in row.iter().zip(&h.v) {
                acc += r * vv;
            }
            *slot = acc;
        }
        for (qi, &uvi) in qv.iter().enumerate() {
            let f = h.beta * uvi;
            if f == 0.0 {
                continue;
            }
            let row = &mut q[(s + qi) * n + s..(s + qi) * n + s + len];
            for (r, vv) in row.iter_mut().zip(&h.v) {
                *r -= f * vv;
            }
        }
    }
    q
}

/// Implicit-shift QL iteration on the tridiagonal `(d, e)`; plane rotations
/// are applied to the rows of `vt`, which enters as `Qᵀ` and leaves as the
/// transposed eigenvector matrix.
fn ql_implicit(d: &mut [f64], e: &mut [f64], vt: &mut [f64], n: usize) -> Result<()> {
    const MAX_ITER: usize = 50;
    let eps = f64::EPSILON;
    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut iter = 0;
        loop {
            // Find the first negligible subdiagonal at or after l.
            let mut m = l;
            while m < n - 1 {
                if e[m].abs() <= eps * tst1 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(Error::EigenSolverDidNotConverge { off: e[l].abs(), sweeps: iter });
            }
            // Implicit shift from the 2×2 corner.
            let g = d[l];
            let mut p = (d[l + 1] - g) / (2.0 * e[l]);
            let mut r = p.hypot(1.0);
            if p < 0.0 {
                r = -r;
            }
            d[l] = e[l] / (p + r);
            d[l + 1] = e[l] * (p + r);
            let dl1 = d[l + 1];
            let mut h = g - d[l];
            for i in (l + 2)..n {
                d[i] -= h;
            }
            f += h;
            // QL sweep from m-1 down to l.
            p = d[m];
            let mut c = 1.0f64;
            let mut c2 = c;
            let mut c3 = c;
            let el1 = e[l + 1];
            let mut s = 0.0f64;
            let mut s2 = 0.0f64;
            for i in (l..m).rev() {
                c3 = c2;
                c2 = c;
                s2 = s;
                let g = c * e[i];
                h = c * p;
                r = p.hypot(e[i]);
                e[i + 1] = s * r;
                s = e[i] / r;
                c = p / r;
                p = c * d[i] - s * g;
                d[i + 1] = h + s * (c * g + s * d[i]);
                rotate_rows(vt, n, i, i + 1, c, s);
            }
            p = -s * s2 * c3 * el1 * e[l] / dl1;
            e[l] = s * p;
            d[l] = c * p;
            if e[l].abs() <= eps * tst1 {
                break;
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Applies the plane rotation to rows `p` and `q` of a flat `n×n` buffer:
/// `(row_p, row_q) ← (c·row_p − s·row_q, s·row_p + c·row_q)`.
#[inline]
fn rotate_rows(a: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    debug_assert!(p < q);
    let (head, tail) = a.split_at_mut(q * n);
    let row_p = &mut head[p * n..p * n + n];
    let row_q = &mut tail[..n];
    for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let xp = *x;
        let xq = *y;
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

/// Complex amplitude vector over a vertex set, unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// Accepts an already-normalised amplitude vector.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = norm2(&amplitudes);
        if (norm - 1.0).abs() > tol::STATE {
            return Err(Error::NotNormalised { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Normalises an arbitrary nonzero vector.
    pub fn normalised(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = norm2(&amplitudes);
        if norm < 1e-300 {
            return Err(Error::NotNormalised { norm });
        }
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        Ok(Self { amplitudes })
    }

    pub fn basis_state(dim: usize, v: usize) -> Result<Self> {
        if v >= dim {
            return Err(Error::VertexOutOfRange { v, n: dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[v] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("empty state".into()));
        }
        let a = 1.0 / (dim as f64).sqrt();
        Ok(Self { amplitudes: vec![Complex64::new(a, 0.0); dim] })
    }

    /// Haar-ish random state: complex gaussian amplitudes, normalised.
    pub fn random(dim: usize, rng: &mut crate::rng::SplitMix64) -> Result<Self> {
        let amplitudes: Vec<Complex64> =
            (0..dim).map(|_| Complex64::new(rng.next_gaussian(), rng.next_gaussian())).collect();
        Self::normalised(amplitudes)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, v: usize) -> Complex64 {
        self.amplitudes[v]
    }

    pub fn probability(&self, v: usize) -> f64 {
        self.amplitudes[v].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.amplitudes)
    }

    /// ⟨self|other⟩ with the left argument conjugated.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// ℓ² distance to another state.
    pub fn distance(&self, other: &QuantumState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `H(τ) = Σ_j e^{−λ_j τ} v_j v_jᵀ`; `H(0) = I`.
pub fn heat_kernel(d: &SpectralDecomposition, tau: f64) -> Result<Matrix> {
    if !tau.is_finite() {
        return Err(Error::InvalidArgument("τ must be finite".into()));
    }
    let max_lam = d.eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let magnitude = tau.abs() * max_lam;
    if magnitude > tol::HEAT_EXP_LIMIT {
        return Err(Error::HeatKernelOverflow { magnitude });
    }
    let n = d.dim();
    let mut out = Matrix::zeros(n, n);
    for j in 0..n {
        let w = (-d.eigenvalues[j] * tau).exp();
        let v = d.vector(j);
        for r in 0..n {
            let f = w * v[r];
            let row = &mut out;
            for c in 0..n {
                row.set(r, c, row.get(r, c) + f * v[c]);
            }
        }
    }
    Ok(out)
}

/// Unitary walk operator, stored dense.
#[derive(Debug, Clone)]
pub struct Propagator {
    matrix: ComplexMatrix,
}

impl Propagator {
    pub fn from_matrix(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, state: &QuantumState) -> Result<QuantumState> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: state.dim() });
        }
        QuantumState::from_amplitudes(self.matrix.mul_vec(state.amplitudes()))
    }

    /// `max |(U†U − I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        self.matrix.unitarity_defect()
    }
}

/// `U(t) = Σ_j e^{−iλ_j t} v_j v_jᵀ`.
pub fn propagator(d: &SpectralDecomposition, t: f64) -> Result<Propagator> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument("t must be finite".into()));
    }
    let n = d.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let w = Complex64::from_polar(1.0, -d.eigenvalues[j] * t);
        let v = d.vector(j);
        for r in 0..n {
            let f = w * v[r];
            for c in 0..n {
                out.set(r, c, out.get(r, c) + f * v[c]);
            }
        }
    }
    Ok(Propagator::from_matrix(out))
}

/// `|ψ(t)⟩ = U(t)|ψ(0)⟩` without forming the dense propagator.
pub fn evolve(state: &QuantumState, d: &SpectralDecomposition, t: f64) -> Result<QuantumState> {
    if state.dim() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), got: state.dim() });
    }
    let n = d.dim();
    // Project onto the eigenbasis, phase, and resum.
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        let v = d.vector(j);
        let mut acc = Complex64::new(0.0, 0.0);
        for (vi, ai) in v.iter().zip(state.amplitudes()) {
            acc += ai * *vi;
        }
        coeffs[j] = acc * Complex64::from_polar(1.0, -d.eigenvalues[j] * t);
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        let v = d.vector(j);
        let c = coeffs[j];
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        for (ai, vi) in amps.iter_mut().zip(v) {
            *ai += c * *vi;
        }
    }
    // Unitarity preserves the norm up to roundoff; renormalisation would
    // hide real defects, so validate instead.
    QuantumState::from_amplitudes(amps)
}

/// Eigenstructure of a symmetric circulant matrix: `eigenvalue(j)` is the
/// character sum `Σ_k row[k] e^{2πi jk/m}` and `mode(j)` is the Fourier
/// vector `W(j)`. Eigenvalues are computed by FFT when `m` is a power of
/// two and by direct DFT otherwise.
#[derive(Debug, Clone)]
pub struct CirculantSpectrum {
    m: usize,
    eigenvalues: Vec<f64>,
}

impl CirculantSpectrum {
    pub fn dim(&self) -> usize {
        self.m
    }

    /// Eigenvalues in Fourier-index order `j = 0..m`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalues_sorted(&self) -> Vec<f64> {
        let mut v = self.eigenvalues.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    /// Fourier mode `|W(j)⟩ = (1/√m) Σ_k e^{2πi jk/m} |k⟩`.
    pub fn mode(&self, j: usize) -> Vec<Complex64> {
        let m = self.m;
        let scale = 1.0 / (m as f64).sqrt();
        (0..m)
            .map(|k| {
                let e = ((j * k) % m) as f64;
                Complex64::from_polar(scale, std::f64::consts::TAU * e / m as f64)
            })
            .collect()
    }
}

pub(crate) fn validate_symmetric_circulant(first_row: &[f64]) -> Result<()> {
    let m = first_row.len();
    if m == 0 {
        return Err(Error::InvalidArgument("empty circulant row".into()));
    }
    for k in 1..m {
        if first_row[k] != first_row[m - k] {
            return Err(Error::NotSymmetricCirculant { k, mk: m - k });
        }
    }
    Ok(())
}

/// Validates the symmetry `row[k] = row[m−k]` and returns the spectrum.
pub fn circulant_spectrum(first_row: &[f64]) -> Result<CirculantSpectrum> {
    validate_symmetric_circulant(first_row)?;
    let m = first_row.len();
    let buf: Vec<Complex64> = first_row.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let transformed = fft::transform(&buf, 1.0);
    // Symmetry of the row makes the spectrum real; the imaginary residue is
    // pure roundoff.
    let eigenvalues = transformed.iter().map(|z| z.re).collect();
    Ok(CirculantSpectrum { m, eigenvalues })
}

/// Eigenvalues of a symmetric circulant by the folded cosine sum
/// `λ_j = row[0] + Σ_{k≤m/2} 2·row[k]·cos(2πjk/m)`. One term per weight
/// and no transform roundoff, so phase oracles built on different rows of
/// the same graph family agree bitwise.
pub(crate) fn circulant_eigenvalues_analytic(row: &[f64]) -> Vec<f64> {
    let m = row.len();
    let tau = std::f64::consts::TAU;
    // cos(2πr/m) evaluated at the folded residue min(r, m−r), so that the
    // conjugate indices j and m−j produce bitwise-equal eigenvalues.
    let folded_cos = |r: usize| -> f64 {
        let r = r.min(m - r);
        (tau * r as f64 / m as f64).cos()
    };
    (0..m)
        .map(|j| {
            let mut lam = row[0];
            for k in 1..=((m - 1) / 2) {
                if row[k] != 0.0 {
                    lam += 2.0 * row[k] * folded_cos((j * k) % m);
                }
            }
            if m % 2 == 0 {
                let half = m / 2;
                if row[half] != 0.0 {
                    lam += row[half] * folded_cos((j * half) % m);
                }
            }
            lam
        })
        .collect()
}

/// First row of the circulant adjacency matrix of a graph, if the graph is
/// circulant (`w(u,v)` depends only on `(u−v) mod m`).
pub fn circulant_row_of_graph(g: &WeightedGraph) -> Option<Vec<f64>> {
    let m = g.num_vertices();
    let row: Vec<f64> = (0..m).map(|k| g.weight(0, k)).collect();
    for u in 0..m {
        for k in 0..m {
            if g.weight(u, (u + k) % m) != row[k] {
                return None;
            }
        }
    }
    Some(row)
}

/// Real orthonormal eigenbasis of a symmetric circulant: cosine/sine pairs
/// for conjugate Fourier modes, ascending eigenvalue order. Exact up to
/// trigonometric roundoff, with no iterative solve.
pub fn circulant_decomposition(first_row: &[f64]) -> Result<SpectralDecomposition> {
    validate_symmetric_circulant(first_row)?;
    let eigenvalues_by_index = circulant_eigenvalues_analytic(first_row);
    let m = first_row.len();
    let tau = std::f64::consts::TAU;
    let mut pairs: Vec<(f64, Vec<f64>)> = Vec::with_capacity(m);
    // j = 0: constant vector.
    pairs.push((eigenvalues_by_index[0], vec![1.0 / (m as f64).sqrt(); m]));
    let half = m / 2;
    for j in 1..=((m - 1) / 2) {
        let lam = eigenvalues_by_index[j];
        let norm = (2.0 / m as f64).sqrt();
        let cos_vec: Vec<f64> =
            (0..m).map(|l| norm * (tau * ((j * l) % m) as f64 / m as f64).cos()).collect();
        let sin_vec: Vec<f64> =
            (0..m).map(|l| norm * (tau * ((j * l) % m) as f64 / m as f64).sin()).collect();
        pairs.push((lam, cos_vec));
        pairs.push((lam, sin_vec));
    }
    if m % 2 == 0 {
        let lam = eigenvalues_by_index[half];
        let v: Vec<f64> =
            (0..m).map(|l| if l % 2 == 0 { 1.0 } else { -1.0 } / (m as f64).sqrt()).collect();
        pairs.push((lam, v));
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| pairs[i].0.partial_cmp(&pairs[j].0).unwrap().then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| pairs[i].0).collect();
    let mut vt = Matrix::zeros(m, m);
    for (row, &src) in order.iter().enumerate() {
        for (col, &x) in pairs[src].1.iter().enumerate() {
            vt.set(row, col, x);
        }
    }
    Ok(SpectralDecomposition::from_parts(eigenvalues, vt))
}

/// Kronecker product of factor propagators:
/// `U = ⊗_j U_j(t_j)`, as for cartesian-product walks.
pub fn tensor_propagator(factors: &[(&SpectralDecomposition, f64)]) -> Result<Propagator> {
    if factors.is_empty() {
        return Err(Error::InvalidArgument("tensor_propagator needs ≥ 1 factor".into()));
    }
    let total: usize = factors.iter().map(|(d, _)| d.dim()).product();
    if total > VERTEX_CAP {
        return Err(Error::VertexCapExceeded { requested: total, cap: VERTEX_CAP });
    }
    let mut out = propagator(factors[0].0, factors[0].1)?.matrix().clone();
    for &(d, t) in &factors[1..] {
        out = out.kron(propagator(d, t)?.matrix());
    }
    Ok(Propagator::from_matrix(out))
}
