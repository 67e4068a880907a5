//! Gate sequences for walk propagators on cycles, circulants and tori, plus
//! a dense simulator to verify them.
//!
//! A walk on a symmetric circulant of size `2ⁿ` diagonalises in the Fourier
//! basis, so its propagator factors as `QFT · Φ(t) · QFT†` where `Φ(t)` is
//! diagonal with phases `λ_j·t mod 2π`. The QFT block costs
//! `n Hadamards + n(n−1)/2 controlled phases + ⌊n/2⌋ swaps` and `Φ(t)` is a
//! single diagonal oracle with `b`-bit phases, so the gate count depends on
//! `(n, b)` only — never on `t`.
//!
//! The phase oracle stands in for a phase-kickback subcircuit (ancilla
//! register computing the phase, uncomputed afterwards); its reversible
//! arithmetic is costed separately as `O(poly(n, b))` and not expanded into
//! elementary gates here.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, SymmetricMatrix};
use crate::spectral::{self, eigendecompose, HamiltonianKind, Propagator};

/// Hard cap for dense simulation of gate sequences.
pub const SIM_WIDTH_CAP: usize = 12;

/// Eigenvalue function behind a diagonal phase oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum PhaseFunction {
    /// `λ_j = 2cos(2πj/m)`, the cycle adjacency spectrum.
    Cycle { m: usize },
    /// `λ_j = Σ_k row[k]·cos(2πjk/m)` for a symmetric circulant row.
    Circulant { row: Vec<f64> },
}

impl PhaseFunction {
    fn dim(&self) -> usize {
        match self {
            PhaseFunction::Cycle { m } => *m,
            PhaseFunction::Circulant { row } => row.len(),
        }
    }

    /// Adjacency eigenvalues in Fourier-index order, by the folded cosine
    /// sum. A cycle is the circulant with `row[±1] = 1`, so the two
    /// variants agree bitwise on cycle rows.
    fn eigenvalues(&self) -> Result<Vec<f64>> {
        match self {
            PhaseFunction::Cycle { m } => {
                if *m < 2 {
                    return Err(Error::InvalidGate("cycle function needs m ≥ 2".into()));
                }
                let mut row = vec![0.0; *m];
                row[1] += 1.0;
                row[*m - 1] += 1.0;
                Ok(spectral::circulant_eigenvalues_analytic(&row))
            }
            PhaseFunction::Circulant { row } => {
                spectral::validate_symmetric_circulant(row)?;
                Ok(spectral::circulant_eigenvalues_analytic(row))
            }
        }
    }

    /// Total weight `Σ_k row[k]`, the degree of the circulant graph.
    fn degree(&self) -> f64 {
        match self {
            PhaseFunction::Cycle { .. } => 2.0,
            PhaseFunction::Circulant { row } => row.iter().sum(),
        }
    }
}

/// Diagonal phase oracle specification: which eigenvalue function, the walk
/// time, the phase precision in bits, and whether the walk Hamiltonian is
/// the adjacency matrix or the Laplacian (`d − λ` for a `d`-regular
/// circulant).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpec {
    pub function: PhaseFunction,
    pub t: f64,
    pub bits: u32,
    pub kind: HamiltonianKind,
}

impl PhaseSpec {
    /// Oracle phases `θ_j = (2π/2ᵇ)·⌊((λ_j·t) mod 2π)·2ᵇ/(2π)⌋`; the oracle
    /// applies `e^{−iθ_j}`. Floor rounding makes compiled unitaries
    /// bit-reproducible.
    pub fn phases(&self) -> Result<Vec<f64>> {
        if self.bits == 0 || self.bits > 52 {
            return Err(Error::InvalidGate(format!("precision bits {} out of range", self.bits)));
        }
        if !self.t.is_finite() {
            return Err(Error::InvalidGate("time must be finite".into()));
        }
        let adjacency = self.function.eigenvalues()?;
        let degree = self.function.degree();
        let scale = (1u64 << self.bits) as f64;
        Ok(adjacency
            .iter()
            .map(|&lam_a| {
                let lam = match self.kind {
                    HamiltonianKind::Adjacency => lam_a,
                    HamiltonianKind::Laplacian => degree - lam_a,
                };
                let reduced = reduce_mod_tau(lam * self.t);
                (TAU / scale) * (reduced * scale / TAU).floor()
            })
            .collect())
    }
}

/// `x mod 2π` by a three-term Cody–Waite reduction: exact quotient product
/// for |x/2π| < 2²⁶, so the absolute error stays ~1e−15 even at walk times
/// like 10⁶ where a plain `rem_euclid` already loses ~|x|·ε ≈ 1e−10 and
/// would swamp a 32-bit phase grid.
fn reduce_mod_tau(x: f64) -> f64 {
    const C1: f64 = 6.283_185_362_815_857; // 2π rounded to 26 bits
    const C2: f64 = -5.563_627_045_666_846_6e-8;
    const C3: f64 = 2.547_326_865_404_38e-24;
    let k = (x / TAU).floor();
    if k.abs() >= (1u64 << 26) as f64 {
        return x.rem_euclid(TAU);
    }
    let mut r = ((x - k * C1) - k * C2) - k * C3;
    if r < 0.0 {
        r += TAU;
    }
    if r >= TAU {
        r -= TAU;
    }
    r
}

/// Elementary gate.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Hadamard { target: usize },
    ControlledPhase { control: usize, target: usize, angle: f64 },
    Swap { a: usize, b: usize },
    /// Diagonal oracle over the listed qubits (first listed = most
    /// significant bit of the oracle index).
    DiagonalOracle { qubits: Vec<usize>, phase: PhaseSpec },
    /// Basis relabeling `|v⟩ ↦ |perm[v]⟩`.
    Permutation { perm: Vec<usize> },
}

/// Per-kind gate totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCounts {
    pub hadamard: usize,
    pub controlled_phase: usize,
    pub swap: usize,
    pub diagonal_oracle: usize,
    pub permutation: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.hadamard + self.controlled_phase + self.swap + self.diagonal_oracle + self.permutation
    }
}

/// Ordered gate list on a fixed-width register; gates apply first-to-last.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSequence {
    width: usize,
    gates: Vec<Gate>,
}

impl GateSequence {
    pub fn new(width: usize) -> Result<Self> {
        if width == 0 {
            return Err(Error::InvalidArgument("register width must be ≥ 1".into()));
        }
        Ok(Self { width, gates: Vec::new() })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.validate(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    fn validate(&self, gate: &Gate) -> Result<()> {
        let check = |q: usize| -> Result<()> {
            if q >= self.width {
                return Err(Error::QubitOutOfRange { qubit: q, width: self.width });
            }
            Ok(())
        };
        match gate {
            Gate::Hadamard { target } => check(*target),
            Gate::ControlledPhase { control, target, angle } => {
                check(*control)?;
                check(*target)?;
                if control == target {
                    return Err(Error::InvalidGate("control equals target".into()));
                }
                if !angle.is_finite() {
                    return Err(Error::InvalidGate("non-finite angle".into()));
                }
                Ok(())
            }
            Gate::Swap { a, b } => {
                check(*a)?;
                check(*b)?;
                if a == b {
                    return Err(Error::InvalidGate("swap needs distinct qubits".into()));
                }
                Ok(())
            }
            Gate::DiagonalOracle { qubits, phase } => {
                for &q in qubits {
                    check(q)?;
                }
                let mut sorted = qubits.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != qubits.len() {
                    return Err(Error::InvalidGate("oracle qubits repeat".into()));
                }
                if phase.function.dim() != 1usize << qubits.len() {
                    return Err(Error::InvalidGate(
                        "oracle function size does not match qubit count".into(),
                    ));
                }
                // Reject malformed specs early rather than at simulation.
                phase.phases().map(|_| ())
            }
            Gate::Permutation { perm } => {
                let dim = 1usize << self.width;
                if perm.len() != dim {
                    return Err(Error::InvalidGate("permutation length must be 2^width".into()));
                }
                let mut seen = vec![false; dim];
                for &p in perm {
                    if p >= dim || seen[p] {
                        return Err(Error::InvalidGate("not a permutation".into()));
                    }
                    seen[p] = true;
                }
                Ok(())
            }
        }
    }

    pub fn counts(&self) -> GateCounts {
        let mut c = GateCounts::default();
        for g in &self.gates {
            match g {
                Gate::Hadamard { .. } => c.hadamard += 1,
                Gate::ControlledPhase { .. } => c.controlled_phase += 1,
                Gate::Swap { .. } => c.swap += 1,
                Gate::DiagonalOracle { .. } => c.diagonal_oracle += 1,
                Gate::Permutation { .. } => c.permutation += 1,
            }
        }
        c
    }

    /// JSON encoding `{"schema": 1, "width": n, "gates": [...], "counts": ...}`
    /// with 17-significant-digit floats.
    pub fn to_json_string(&self) -> String {
        use crate::jsonfmt::fmt_f64;
        let mut out = String::new();
        out.push_str(&format!("{{\"schema\": 1, \"width\": {}, \"gates\": [", self.width));
        for (i, g) in self.gates.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            match g {
                Gate::Hadamard { target } => {
                    out.push_str(&format!("{{\"kind\": \"hadamard\", \"target\": {target}}}"));
                }
                Gate::ControlledPhase { control, target, angle } => {
                    out.push_str(&format!(
                        "{{\"kind\": \"controlled_phase\", \"control\": {control}, \"target\": {target}, \"angle\": {}}}",
                        fmt_f64(*angle)
                    ));
                }
                Gate::Swap { a, b } => {
                    out.push_str(&format!("{{\"kind\": \"swap\", \"a\": {a}, \"b\": {b}}}"));
                }
                Gate::DiagonalOracle { qubits, phase } => {
                    let qs: Vec<String> = qubits.iter().map(|q| q.to_string()).collect();
                    let function = match &phase.function {
                        PhaseFunction::Cycle { m } => {
                            format!("{{\"name\": \"cycle\", \"m\": {m}}}")
                        }
                        PhaseFunction::Circulant { row } => {
                            let vals: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
                            format!("{{\"name\": \"circulant\", \"row\": [{}]}}", vals.join(", "))
                        }
                    };
                    out.push_str(&format!(
                        "{{\"kind\": \"diagonal_oracle\", \"qubits\": [{}], \"function\": {function}, \"hamiltonian\": \"{}\", \"t\": {}, \"bits\": {}}}",
                        qs.join(", "),
                        phase.kind.name(),
                        fmt_f64(phase.t),
                        phase.bits
                    ));
                }
                Gate::Permutation { perm } => {
                    let ps: Vec<String> = perm.iter().map(|p| p.to_string()).collect();
                    out.push_str(&format!(
                        "{{\"kind\": \"permutation\", \"perm\": [{}]}}",
                        ps.join(", ")
                    ));
                }
            }
        }
        let c = self.counts();
        out.push_str(&format!(
            "], \"counts\": {{\"hadamard\": {}, \"controlled_phase\": {}, \"swap\": {}, \"diagonal_oracle\": {}, \"permutation\": {}, \"total\": {}}}}}",
            c.hadamard, c.controlled_phase, c.swap, c.diagonal_oracle, c.permutation, c.total()
        ));
        out
    }
}

/// Appends the standard QFT circuit on `qubits` (listed MSB first):
/// Hadamards with descending controlled phases, then the bit-reversal swaps.
fn push_qft(seq: &mut GateSequence, qubits: &[usize]) -> Result<()> {
    let n = qubits.len();
    for i in 0..n {
        seq.push(Gate::Hadamard { target: qubits[i] })?;
        for k in 2..=(n - i) {
            seq.push(Gate::ControlledPhase {
                control: qubits[i + k - 1],
                target: qubits[i],
                angle: TAU / (1u64 << k) as f64,
            })?;
        }
    }
    for i in 0..n / 2 {
        seq.push(Gate::Swap { a: qubits[i], b: qubits[n - 1 - i] })?;
    }
    Ok(())
}

/// Appends the inverse QFT: the reversed gate list with negated angles.
fn push_qft_inverse(seq: &mut GateSequence, qubits: &[usize]) -> Result<()> {
    let mut fwd = GateSequence::new(seq.width())?;
    push_qft(&mut fwd, qubits)?;
    for gate in fwd.gates.into_iter().rev() {
        let inv = match gate {
            Gate::ControlledPhase { control, target, angle } => {
                Gate::ControlledPhase { control, target, angle: -angle }
            }
            g => g, // H and SWAP are involutions
        };
        seq.push(inv)?;
    }
    Ok(())
}

fn push_walk_block(
    seq: &mut GateSequence,
    qubits: &[usize],
    function: PhaseFunction,
    t: f64,
    bits: u32,
    kind: HamiltonianKind,
) -> Result<()> {
    // U = QFT · Φ(t) · QFT†, applied right-to-left.
    push_qft_inverse(seq, qubits)?;
    seq.push(Gate::DiagonalOracle {
        qubits: qubits.to_vec(),
        phase: PhaseSpec { function, t, bits, kind },
    })?;
    push_qft(seq, qubits)
}

/// Walk on the cycle `C_{2ⁿ}` for time `t` with `b`-bit oracle phases.
pub fn compile_cycle_walk(n: usize, t: f64, bits: u32) -> Result<GateSequence> {
    compile_cycle_walk_with_kind(n, t, bits, HamiltonianKind::Adjacency)
}

/// Same with the walk generator selectable; the Laplacian variant shifts
/// every phase by the cycle degree, i.e. the global phase `e^{−i·2t}` and a
/// reversed adjacency phase.
pub fn compile_cycle_walk_with_kind(
    n: usize,
    t: f64,
    bits: u32,
    kind: HamiltonianKind,
) -> Result<GateSequence> {
    if n == 0 {
        return Err(Error::InvalidArgument("cycle walk needs n ≥ 1 qubits".into()));
    }
    let mut seq = GateSequence::new(n)?;
    let qubits: Vec<usize> = (0..n).collect();
    push_walk_block(&mut seq, &qubits, PhaseFunction::Cycle { m: 1 << n }, t, bits, kind)?;
    Ok(seq)
}

/// Walk on any symmetric circulant of power-of-two size; other sizes keep
/// their exact dense propagator and are reported via
/// [`Error::DenseFallbackRequired`].
pub fn compile_circulant_walk(row: &[f64], t: f64, bits: u32) -> Result<GateSequence> {
    compile_circulant_walk_with_kind(row, t, bits, HamiltonianKind::Adjacency)
}

pub fn compile_circulant_walk_with_kind(
    row: &[f64],
    t: f64,
    bits: u32,
    kind: HamiltonianKind,
) -> Result<GateSequence> {
    let m = row.len();
    if m < 2 || !m.is_power_of_two() {
        return Err(Error::DenseFallbackRequired { m });
    }
    spectral::validate_symmetric_circulant(row)?;
    let n = m.trailing_zeros() as usize;
    let mut seq = GateSequence::new(n)?;
    let qubits: Vec<usize> = (0..n).collect();
    push_walk_block(&mut seq, &qubits, PhaseFunction::Circulant { row: row.to_vec() }, t, bits, kind)?;
    Ok(seq)
}

/// Walk on the torus `(C_{2ⁿ})^m`: one cycle block per factor on disjoint
/// qubits, so counts scale linearly in `m`.
pub fn compile_torus_walk(m: usize, n: usize, t: f64, bits: u32) -> Result<GateSequence> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("torus walk needs m ≥ 1, n ≥ 1".into()));
    }
    let width = m
        .checked_mul(n)
        .filter(|&w| w <= 64)
        .ok_or_else(|| Error::InvalidArgument("torus register too wide".into()))?;
    let mut seq = GateSequence::new(width)?;
    for block in 0..m {
        let qubits: Vec<usize> = (block * n..(block + 1) * n).collect();
        push_walk_block(
            &mut seq,
            &qubits,
            PhaseFunction::Cycle { m: 1 << n },
            t,
            bits,
            HamiltonianKind::Adjacency,
        )?;
    }
    Ok(seq)
}

/// Applies one gate to a state vector over `2^width` basis states; qubit 0
/// is the most significant bit of the index.
fn apply_gate(gate: &Gate, width: usize, state: &mut [Complex64]) -> Result<()> {
    let dim = state.len();
    match gate {
        Gate::Hadamard { target } => {
            let bit = 1usize << (width - 1 - target);
            let s = std::f64::consts::FRAC_1_SQRT_2;
            for idx in 0..dim {
                if idx & bit == 0 {
                    let a = state[idx];
                    let b = state[idx | bit];
                    state[idx] = (a + b) * s;
                    state[idx | bit] = (a - b) * s;
                }
            }
        }
        Gate::ControlledPhase { control, target, angle } => {
            let cb = 1usize << (width - 1 - control);
            let tb = 1usize << (width - 1 - target);
            let w = Complex64::from_polar(1.0, *angle);
            for (idx, amp) in state.iter_mut().enumerate() {
                if idx & cb != 0 && idx & tb != 0 {
                    *amp *= w;
                }
            }
        }
        Gate::Swap { a, b } => {
            let ab = 1usize << (width - 1 - a);
            let bb = 1usize << (width - 1 - b);
            for idx in 0..dim {
                if idx & ab != 0 && idx & bb == 0 {
                    state.swap(idx, idx ^ ab ^ bb);
                }
            }
        }
        Gate::DiagonalOracle { qubits, phase } => {
            let phases = phase.phases()?;
            for (idx, amp) in state.iter_mut().enumerate() {
                let mut sub = 0usize;
                for &q in qubits {
                    sub = (sub << 1) | ((idx >> (width - 1 - q)) & 1);
                }
                *amp *= Complex64::from_polar(1.0, -phases[sub]);
            }
        }
        Gate::Permutation { perm } => {
            let mut out = vec![Complex64::new(0.0, 0.0); dim];
            for (idx, &amp) in state.iter().enumerate() {
                out[perm[idx]] = amp;
            }
            state.copy_from_slice(&out);
        }
    }
    Ok(())
}

/// Exact dense unitary of the whole sequence, gates applied in list order.
pub fn simulate_gates(seq: &GateSequence) -> Result<ComplexMatrix> {
    let width = seq.width();
    if width > SIM_WIDTH_CAP {
        return Err(Error::WidthCapExceeded { width, cap: SIM_WIDTH_CAP });
    }
    let dim = 1usize << width;
    let mut out = ComplexMatrix::zeros(dim, dim);
    let mut column = vec![Complex64::new(0.0, 0.0); dim];
    for basis in 0..dim {
        column.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
        column[basis] = Complex64::new(1.0, 0.0);
        for gate in seq.gates() {
            apply_gate(gate, width, &mut column)?;
        }
        for (row, &amp) in column.iter().enumerate() {
            out.set(row, basis, amp);
        }
    }
    Ok(out)
}

/// Operator-norm distance (largest singular value of `U − V`) plus the
/// max-entry distance. Global phase is NOT modded out.
#[derive(Debug, Clone, Copy)]
pub struct DistanceReport {
    pub operator_norm: f64,
    pub max_entry: f64,
}

pub fn unitary_distance(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<DistanceReport> {
    if u.rows() != v.rows() || u.cols() != v.cols() {
        return Err(Error::DimensionMismatch { expected: u.rows(), got: v.rows() });
    }
    let diff = u.sub(v);
    Ok(DistanceReport {
        operator_norm: crate::linalg::operator_norm(&diff),
        max_entry: diff.max_abs(),
    })
}

/// Coupling `C` in the tower decomposition `A(Y) = A(X)⊗C + 𝒟`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrotterCoupling {
    /// `C = I_m` (fibre-preserving trivial pull-back).
    Identity,
    /// `C = J_m/√m` (fibre-mixing trivial pull-back).
    NormalizedAllOnes,
}

/// First-order Trotter approximation
/// `((e^{−i(A⊗C)t/r})·(e^{−i𝒟 t/r}))^r` of `e^{−i(A⊗C + 𝒟)t}`.
///
/// Each factor is exponentiated through its own spectral decomposition; the
/// identity coupling keeps the Kronecker structure `e^{−iAτ} ⊗ I_m`. The
/// result is a dense propagator approximation, not a gate list — the sparse
/// correction term would be handed to a sparse-Hamiltonian simulator.
pub fn trotter_compile(
    a_base: &SymmetricMatrix,
    d_sparse: &SymmetricMatrix,
    fibre_size: usize,
    t: f64,
    steps: usize,
    coupling: TrotterCoupling,
) -> Result<Propagator> {
    if fibre_size == 0 || steps == 0 {
        return Err(Error::InvalidArgument("fibre size and steps must be ≥ 1".into()));
    }
    let dim = a_base.dim() * fibre_size;
    if dim != d_sparse.dim() {
        return Err(Error::DimensionMismatch { expected: dim, got: d_sparse.dim() });
    }
    let tau = t / steps as f64;

    let base_factor = match coupling {
        TrotterCoupling::Identity => {
            let da = eigendecompose(a_base)?;
            let ua = spectral::propagator(&da, tau)?;
            ua.matrix().kron(&ComplexMatrix::identity(fibre_size))
        }
        TrotterCoupling::NormalizedAllOnes => {
            let mut j = SymmetricMatrix::zeros(fibre_size);
            let w = 1.0 / (fibre_size as f64).sqrt();
            for a in 0..fibre_size {
                for b in a..fibre_size {
                    j.set_sym(a, b, w);
                }
            }
            let full = a_base.kron(&j);
            let d = eigendecompose(&full)?;
            spectral::propagator(&d, tau)?.matrix().clone()
        }
    };
    let dd = eigendecompose(d_sparse)?;
    let sparse_factor = spectral::propagator(&dd, tau)?;
    let step = base_factor.matmul(sparse_factor.matrix());

    // step^r by binary powering.
    let mut result = ComplexMatrix::identity(dim);
    let mut base = step;
    let mut e = steps;
    while e > 0 {
        if e & 1 == 1 {
            result = result.matmul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.matmul(&base);
        }
    }
    Ok(Propagator::from_matrix(result))
}
