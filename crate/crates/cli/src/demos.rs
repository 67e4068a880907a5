//! `demo` subcommands: one per acceptance-style property, each printing a
//! deterministic report and an overall PASS/FAIL line.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use anyhow::Result;
use coverwalk::covering::{
    cayley_to_schreier_map, spectrum_contained, verify_cover, CoveringMap, QuotientWalkChecker,
};
use coverwalk::gates::{
    compile_cycle_walk, compile_torus_walk, simulate_gates, trotter_compile, unitary_distance,
    TrotterCoupling,
};
use coverwalk::group::{self, Subgroup};
use coverwalk::hidden::{
    dihedral_isospectrality_report, measure_hamiltonian, measurement_distribution,
    recovery_campaign, CosetOracle,
};
use coverwalk::jsonfmt::fmt_f64;
use coverwalk::spectral::{
    circulant_decomposition, circulant_row_of_graph, circulant_spectrum, eigendecompose,
    propagator, tensor_propagator, HamiltonianKind, QuantumState,
};
use coverwalk::{tol, SplitMix64};

fn random_state(dim: usize, rng: &mut SplitMix64) -> QuantumState {
    QuantumState::random(dim, rng).expect("nonzero gaussian vector")
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| (2..p).all(|d| d * d > p || p % d != 0)).collect()
}

/// The cover corpus shared by several demos: hypercube/path for
/// `n ∈ {2..max_n}` plus the cyclic Cayley→Schreier covers.
fn cover_corpus(max_n: usize) -> Result<Vec<(String, CoveringMap)>> {
    let mut corpus = Vec::new();
    for n in 2..=max_n {
        let y = group::hypercube(n)?;
        let (x, pi) = group::hypercube_path_quotient(n)?;
        corpus.push((format!("Q_{n} -> path"), CoveringMap::new(y, x, pi)?));
    }
    for (n, p) in [(6usize, 3usize), (15, 3), (15, 5), (35, 7)] {
        let g = group::cyclic_group(n)?;
        let h = Subgroup::generated(&g, &[p])?;
        let s = group::GeneratingSet::new(&g, [1, n - 1])?;
        let cm = cayley_to_schreier_map(&g, &h, &s)?;
        corpus.push((format!("C_{n} -> C_{p}"), cm));
    }
    Ok(corpus)
}

pub fn demo_hypercube(n: usize, t: f64, seed: u64) -> Result<(bool, String)> {
    let y = group::hypercube(n)?;
    let (x, pi) = group::hypercube_path_quotient(n)?;
    let cm = CoveringMap::new(y, x, pi)?;
    let report = cm.verify();
    let checker = QuotientWalkChecker::new(cm)?;
    let mut rng = SplitMix64::new(seed);
    let phi = random_state(n + 1, &mut rng);
    let mut out = String::new();
    writeln!(out, "hypercube Q_{n} vs weighted-path quotient (Hamming map)")?;
    writeln!(
        out,
        "cover: {} mu = {} residual = {}",
        report.is_cover,
        fmt_f64(report.mu),
        fmt_f64(report.max_residual)
    )?;
    let mut pass = report.is_cover;
    for kind in [HamiltonianKind::Laplacian, HamiltonianKind::Adjacency] {
        let r = checker.residual(&phi, t, kind)?;
        writeln!(out, "quotient-walk residual ({}) at t = {t}: {}", kind.name(), fmt_f64(r))?;
        pass &= r <= tol::EVOLUTION;
    }
    Ok((pass, out))
}

pub fn demo_covers(max_n: usize) -> Result<(bool, String)> {
    let mut out = String::new();
    let mut pass = true;
    for (name, cm) in cover_corpus(max_n)? {
        let r = cm.verify();
        let ok = r.is_cover && (r.mu - 1.0).abs() <= tol::STRUCTURAL && r.max_residual <= tol::STRUCTURAL;
        pass &= ok;
        writeln!(
            out,
            "{name}: cover = {} mu = {} residual = {} [{}]",
            r.is_cover,
            fmt_f64(r.mu),
            fmt_f64(r.max_residual),
            if ok { "ok" } else { "FAIL" }
        )?;
    }
    // Corrupted-edge negative controls.
    for (name, cm) in [cover_corpus(3)?.remove(1), cover_corpus(3)?.remove(2)] {
        let mut bad = cm.source().clone();
        let (u, v, w) = bad.edges().next().expect("corpus graphs have edges");
        bad.set_weight(u, v, w + 0.5)?;
        let r = verify_cover(&bad, cm.target(), cm.pi())?;
        let ok = !r.is_cover;
        pass &= ok;
        writeln!(
            out,
            "corrupted {name}: cover = {} residual = {} [{}]",
            r.is_cover,
            fmt_f64(r.max_residual),
            if ok { "ok" } else { "FAIL" }
        )?;
    }
    Ok((pass, out))
}

pub fn demo_quotient_walk(max_n: usize, states: usize, seed: u64) -> Result<(bool, String)> {
    let mut out = String::new();
    let mut pass = true;
    for (idx, (name, cm)) in cover_corpus(max_n)?.into_iter().enumerate() {
        let dim_x = cm.target().num_vertices();
        let checker = QuotientWalkChecker::new(cm)?;
        let mut rng = SplitMix64::new(seed).split(idx as u64);
        let mut worst = 0.0f64;
        for _ in 0..states {
            let phi = random_state(dim_x, &mut rng);
            for &t in &[0.5, 1.0, 10.0] {
                for kind in [HamiltonianKind::Laplacian, HamiltonianKind::Adjacency] {
                    worst = worst.max(checker.residual(&phi, t, kind)?);
                }
            }
        }
        let ok = worst <= tol::EVOLUTION;
        pass &= ok;
        writeln!(out, "{name}: max residual = {} [{}]", fmt_f64(worst), if ok { "ok" } else { "FAIL" })?;
    }
    Ok((pass, out))
}

pub fn demo_containment(max_n: usize) -> Result<(bool, String)> {
    let mut out = String::new();
    let mut pass = true;
    let mut corpus = cover_corpus(max_n)?;
    for n in 3..=9usize {
        let d = group::dihedral_group(n)?;
        let s = group::GeneratingSet::new(&d, [1, n - 1, n])?;
        let transposition = Subgroup::new(&d, [0, n])?;
        corpus.push((format!("D_{n} -> Schreier(<t>)"), cayley_to_schreier_map(&d, &transposition, &s)?));
        let rotations = Subgroup::new(&d, 0..n)?;
        corpus.push((format!("D_{n} -> Schreier(<s>)"), cayley_to_schreier_map(&d, &rotations, &s)?));
    }
    for (name, cm) in corpus {
        let dy = eigendecompose(&cm.source().adjacency_matrix())?;
        let dx = eigendecompose(&cm.target().adjacency_matrix())?;
        let ok = spectrum_contained(dx.eigenvalues(), dy.eigenvalues(), tol::SPECTRUM_MATCH);
        pass &= ok;
        writeln!(
            out,
            "{name}: |spec(X)| = {} within spec(Y) of size {} [{}]",
            dx.dim(),
            dy.dim(),
            if ok { "ok" } else { "FAIL" }
        )?;
    }
    Ok((pass, out))
}

pub fn demo_circulant(sizes: &[usize]) -> Result<(bool, String)> {
    let mut out = String::new();
    let mut pass = true;
    for &m in sizes {
        let g = group::cycle(m)?;
        let row = circulant_row_of_graph(&g).expect("cycles are circulant");
        let fast = circulant_spectrum(&row)?.eigenvalues_sorted();
        let dense = eigendecompose(&g.adjacency_matrix())?;
        let mut worst = 0.0f64;
        for (a, b) in fast.iter().zip(dense.eigenvalues()) {
            worst = worst.max((a - b).abs());
        }
        let ok = worst <= tol::STRUCTURAL;
        pass &= ok;
        writeln!(out, "C_{m}: max eigenvalue gap fast-vs-dense = {} [{}]", fmt_f64(worst), if ok { "ok" } else { "FAIL" })?;
    }
    Ok((pass, out))
}

pub fn demo_compile(max_n: usize, bits: u32) -> Result<(bool, String)> {
    let mut out = String::new();
    let mut pass = true;
    let bound = TAU * (2f64).powi(-(bits as i32)) + 1e-9;
    for n in 2..=max_n {
        let mut counts = None;
        for &t in &[1.0, 37.5, 1e6] {
            let seq = compile_cycle_walk(n, t, bits)?;
            match &counts {
                None => counts = Some(seq.counts()),
                Some(c) => {
                    let ok = *c == seq.counts();
                    pass &= ok;
                    if !ok {
                        writeln!(out, "n={n}: gate counts vary with t [FAIL]")?;
                    }
                }
            }
            let compiled = simulate_gates(&seq)?;
            let g = group::cycle(1 << n)?;
            let row = circulant_row_of_graph(&g).expect("cycle row");
            let exact = propagator(&circulant_decomposition(&row)?, t)?;
            let d = unitary_distance(&compiled, exact.matrix())?;
            let ok = d.operator_norm <= bound;
            pass &= ok;
            writeln!(
                out,
                "cycle n={n} t={t}: distance = {} (bound {}) [{}]",
                fmt_f64(d.operator_norm),
                fmt_f64(bound),
                if ok { "ok" } else { "FAIL" }
            )?;
        }
        if let Some(c) = counts {
            writeln!(out, "cycle n={n}: {} gates, t-invariant", c.total())?;
        }
    }
    // Torus block.
    let t = 1.0;
    let seq = compile_torus_walk(2, 2, t, bits)?;
    let compiled = simulate_gates(&seq)?;
    let c4 = group::cycle(4)?;
    let d4 = circulant_decomposition(&circulant_row_of_graph(&c4).expect("cycle row"))?;
    let exact = tensor_propagator(&[(&d4, t), (&d4, t)])?;
    let d = unitary_distance(&compiled, exact.matrix())?;
    let torus_bound = 2.0 * (TAU * (2f64).powi(-(bits as i32))) + 1e-9;
    let ok = d.operator_norm <= torus_bound;
    pass &= ok;
    writeln!(
        out,
        "torus m=2 n=2 t={t}: distance = {} (bound {}) [{}]",
        fmt_f64(d.operator_norm),
        fmt_f64(torus_bound),
        if ok { "ok" } else { "FAIL" }
    )?;
    Ok((pass, out))
}

/// The C_8 walk split over its mod-4 tower: relabel `k ↦ (k mod 4)·2 + k/4`
/// so that `A(C_8) = A(C_4)⊗I₂ + 𝒟`.
pub fn c8_tower_split() -> Result<(coverwalk::SymmetricMatrix, coverwalk::SymmetricMatrix)> {
    let c8 = group::cycle(8)?;
    let a8 = c8.adjacency_matrix();
    let mut relabeled = coverwalk::SymmetricMatrix::zeros(8);
    let relabel = |k: usize| (k % 4) * 2 + k / 4;
    for u in 0..8 {
        for v in u..8 {
            if a8.get(u, v) != 0.0 {
                relabeled.set_sym(relabel(u), relabel(v), a8.get(u, v));
            }
        }
    }
    let a4 = group::cycle(4)?.adjacency_matrix();
    let base = a4.kron(&coverwalk::SymmetricMatrix::identity(2));
    let d = relabeled.sub(&base);
    Ok((a4, d))
}

pub fn demo_trotter() -> Result<(bool, String)> {
    let mut out = String::new();
    let (a4, d) = c8_tower_split()?;
    let t = 1.0;
    let full = a4.kron(&coverwalk::SymmetricMatrix::identity(2)).add(&d);
    let exact = propagator(&eigendecompose(&full)?, t)?;
    let mut points = Vec::new();
    for r in [8usize, 16, 32, 64, 128] {
        let approx = trotter_compile(&a4, &d, 2, t, r, TrotterCoupling::Identity)?;
        let err = unitary_distance(approx.matrix(), exact.matrix())?.operator_norm;
        writeln!(out, "r = {r}: error = {}", fmt_f64(err))?;
        points.push(((r as f64).ln(), err.ln()));
    }
    // Least-squares slope of log error vs log r.
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let pass = (-1.25..=-0.8).contains(&slope);
    writeln!(out, "log-log slope = {} (expect within [-1.25, -0.8])", fmt_f64(slope))?;
    Ok((pass, out))
}

pub fn demo_hiddencover(pmax: u64, trials: usize, seed: u64) -> Result<(bool, String)> {
    let mut out = String::new();
    let mut pass = true;
    let primes = primes_up_to(pmax);
    for &p in &primes {
        for &q in &primes {
            let n = p * q;
            let pair_seed = seed ^ (p << 32) ^ (q << 16);
            let stats = recovery_campaign(n, p, 32, trials, 25, 2500, pair_seed)?;
            let predicted = (p - 1) as f64 / p as f64;
            let ok = stats.recovery_rate() >= 0.99
                && stats.wrong == 0
                && (stats.single_sample_rate() - predicted).abs() <= 0.05;
            pass &= ok;
            writeln!(
                out,
                "p={p} q={q}: recovered {}/{} wrong={} single-sample {} vs {} [{}]",
                stats.recovered,
                trials,
                stats.wrong,
                fmt_f64(stats.single_sample_rate()),
                fmt_f64(predicted),
                if ok { "ok" } else { "FAIL" }
            )?;
        }
    }
    Ok((pass, out))
}

pub fn demo_confinement(samples: usize, seed: u64) -> Result<(bool, String)> {
    let mut out = String::new();
    let n = 30u64;
    let p = 5u64;
    let bits = 32u32;
    let solver_basis = {
        let g = group::cycle(n as usize)?;
        let row = circulant_row_of_graph(&g).expect("cycle row");
        circulant_decomposition(&row)?
    };
    // Distinct eigenvalues of the hidden quotient: fold j and p−j.
    let allowed: Vec<f64> =
        (0..=p / 2).map(|j| 2.0 * (TAU * j as f64 / p as f64).cos()).collect();
    let slack = 2.0 * (2f64).powi(-(bits as i32));
    let mut oracle = CosetOracle::new(n, p, seed ^ 0x5eed)?;
    let mut rng = SplitMix64::new(seed);
    let mut confined = true;
    let mut histogram = std::collections::BTreeMap::new();
    for _ in 0..samples {
        let state = oracle.draw();
        let m = measure_hamiltonian(&state, &solver_basis, bits, &mut rng)?;
        let nearest = allowed
            .iter()
            .cloned()
            .min_by(|a, b| {
                (a - m.lambda_tilde).abs().partial_cmp(&(b - m.lambda_tilde).abs()).unwrap()
            })
            .unwrap();
        if (nearest - m.lambda_tilde).abs() > slack {
            confined = false;
        }
        *histogram.entry(format!("{}", fmt_f64(nearest))).or_insert(0usize) += 1;
    }
    // Exact distribution is j-independent: weight 1/p on λ = 2, 2/p on each
    // folded pair.
    let state = coverwalk::hidden::constant_coset_state(n, p, 0)?;
    let dist = measurement_distribution(&state, &solver_basis);
    let mut pass = confined;
    writeln!(out, "C_{n} with hidden p = {p}: {samples} samples, confined = {confined}")?;
    for (lam, w) in dist {
        if w < 1e-12 {
            continue;
        }
        let key = {
            let nearest = allowed
                .iter()
                .cloned()
                .min_by(|a, b| (a - lam).abs().partial_cmp(&(b - lam).abs()).unwrap())
                .unwrap();
            format!("{}", fmt_f64(nearest))
        };
        let observed = *histogram.get(&key).unwrap_or(&0) as f64;
        let expect = w * samples as f64;
        let sigma = (samples as f64 * w * (1.0 - w)).sqrt();
        let ok = (observed - expect).abs() <= 3.0 * sigma;
        pass &= ok;
        writeln!(
            out,
            "lambda = {key}: observed {observed} expected {} (3 sigma = {}) [{}]",
            fmt_f64(expect),
            fmt_f64(3.0 * sigma),
            if ok { "ok" } else { "FAIL" }
        )?;
    }
    Ok((pass, out))
}

pub fn demo_dihedral(ns: &[usize]) -> Result<(bool, String)> {
    let mut out = String::new();
    let mut pass = true;
    for &n in ns {
        let report = dihedral_isospectrality_report(n)?;
        let ok = report.indistinguishable && report.max_pairwise_gap <= tol::STRUCTURAL;
        pass &= ok;
        writeln!(
            out,
            "D_{n}: {} transposition subgroups, max pairwise spectral gap = {} -> {} [{}]",
            n,
            fmt_f64(report.max_pairwise_gap),
            if report.indistinguishable { "spectrally indistinguishable" } else { "distinguishable" },
            if ok { "ok" } else { "FAIL" }
        )?;
    }
    Ok((pass, out))
}
