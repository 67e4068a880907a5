//! `coverwalk` — continuous-time quantum walks on weighted graphs, graph
//! covers, walk gate compilation, and hidden-cover experiments.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod demos;
mod util;

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use coverwalk::covering::{quotient_graph, verify_cover, CoveringMap, QuotientWalkChecker};
use coverwalk::gates::{
    compile_circulant_walk_with_kind, compile_cycle_walk_with_kind, compile_torus_walk,
    simulate_gates, unitary_distance, GateSequence, SIM_WIDTH_CAP,
};
use coverwalk::group;
use coverwalk::hidden::{dihedral_isospectrality_report, CosetOracle, CycleCoverSolver};
use coverwalk::jsonfmt::fmt_f64;
use coverwalk::spectral::{
    circulant_decomposition, circulant_row_of_graph, eigendecompose, evolve, propagator,
    tensor_propagator, HamiltonianKind, QuantumState,
};
use coverwalk::SplitMix64;

#[derive(Parser)]
#[command(name = "coverwalk", version, about = "Quantum walks on graph covering spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph from a named family (JSON to stdout or --out).
    #[command(subcommand)]
    Gen(GenCmd),
    /// Evolve a walk and emit per-vertex probabilities as CSV.
    Walk(WalkArgs),
    /// Covering-map verification, quotients and walk equivalence.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Compile walk propagators into gate sequences.
    #[command(subcommand)]
    Compile(CompileCmd),
    /// Hidden-cover experiments on cycles and the dihedral obstruction.
    #[command(subcommand)]
    Hiddencover(HiddenCmd),
    /// Deterministic demonstrations of the library's key properties.
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Subcommand)]
enum GenCmd {
    /// Cycle C_m.
    Cycle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hypercube Q_n on 2^n vertices.
    Hypercube {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// m-fold cartesian product of C_size.
    Torus {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Paley graph on a prime q ≡ 1 (mod 4).
    Paley {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted path covered by Q_n, plus its Hamming projection.
    PathQuotient {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the Hamming-weight projection (JSON array) here.
        #[arg(long)]
        pi_out: Option<PathBuf>,
    },
    /// Cayley graph X(G, S).
    Cayley {
        /// Group spec: cyclic:N, dihedral:N or z2n:N.
        #[arg(long)]
        group: String,
        /// Comma-separated generators (element ids; dihedral accepts
        /// s,sinv,t; z2n accepts e1..eN). Must be inverse-closed.
        #[arg(long)]
        gens: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Schreier coset graph X(G/H, S).
    Schreier {
        #[arg(long)]
        group: String,
        /// Comma-separated subgroup elements.
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the coset projection (JSON array over group elements).
        #[arg(long)]
        pi_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct WalkArgs {
    /// Graph JSON (defaults to stdin).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Walk generator.
    #[arg(long, default_value = "laplacian", value_parser = parse_kind)]
    hamiltonian: HamiltonianKind,
    /// Evolution time.
    #[arg(long)]
    t: f64,
    /// Initial state: vertex:K or uniform.
    #[arg(long, default_value = "vertex:0")]
    initial: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Check the Godsil–McKay predicate P·A(Y) = A(X)·P and the index μ.
    Verify {
        #[arg(long = "Y")]
        y: PathBuf,
        #[arg(long = "X")]
        x: PathBuf,
        /// JSON array: target index per source vertex.
        #[arg(long)]
        pi: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the quotient graph P·A(Y)·P† of an equitable projection.
    Quotient {
        #[arg(long = "Y")]
        y: PathBuf,
        #[arg(long)]
        pi: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check quotient-walk equivalence on random lifted states.
    Walkcheck {
        #[arg(long = "Y")]
        y: PathBuf,
        #[arg(long)]
        pi: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 5)]
        states: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Residual threshold for PASS.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CompileCommon {
    /// Evolution time.
    #[arg(long)]
    t: f64,
    /// Oracle phase precision in bits.
    #[arg(long, default_value_t = 32)]
    bits: u32,
    /// Walk generator for the compiled phases.
    #[arg(long, default_value = "adjacency", value_parser = parse_kind)]
    hamiltonian: HamiltonianKind,
    /// Write the gate sequence JSON here.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Simulate the gates and compare against the exact propagator.
    #[arg(long)]
    verify: bool,
    /// Override the verification threshold (defaults to the phase-grid
    /// bound 2π·2^−bits·blocks + 1e−9).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum CompileCmd {
    /// Walk on C_{2^n}.
    Cycle {
        /// Qubit count; the cycle has 2^n vertices.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CompileCommon,
    },
    /// Walk on a symmetric circulant of power-of-two size.
    Circulant {
        /// Comma-separated first row of the circulant.
        #[arg(long, conflicts_with = "graph")]
        row: Option<String>,
        /// Circulant graph JSON to take the row from.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        common: CompileCommon,
    },
    /// Walk on the m-torus (C_{2^n})^m.
    Torus {
        #[arg(long)]
        m: usize,
        /// Qubits per factor.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CompileCommon,
    },
}

#[derive(Subcommand)]
enum HiddenCmd {
    /// Recover hidden periods of C_n over seeded trials.
    Solve {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 32)]
        bits: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 25)]
        max_samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectra of the dihedral transposition Schreier graphs.
    Dihedral {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DemoCmd {
    /// Quotient-walk residual for Q_n against its weighted-path quotient.
    Hypercube {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cover verification across the hypercube and cyclic corpus.
    Covers {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Quotient-walk equivalence across the cover corpus.
    QuotientWalk {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 20)]
        states: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Spectrum containment of quotients in covers.
    Containment {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Circulant fast path versus the dense eigensolver.
    Circulant {
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 64, 256, 1024])]
        sizes: Vec<usize>,
    },
    /// Compiled cycle/torus walks versus exact propagators.
    Compile {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 32)]
        bits: u32,
    },
    /// First-order Trotter error decay on the C_8 tower split.
    Trotter,
    /// Hidden-cover recovery statistics over prime pairs.
    Hiddencover {
        #[arg(long, default_value_t = 13)]
        pmax: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Spectral confinement of coset-state measurements on C_30.
    Confinement {
        #[arg(long, default_value_t = 10000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dihedral isospectrality obstruction report.
    Dihedral {
        #[arg(long, value_delimiter = ',', default_values_t = [3usize, 5, 7, 9])]
        ns: Vec<usize>,
    },
}

fn parse_kind(s: &str) -> std::result::Result<HamiltonianKind, String> {
    match s {
        "laplacian" => Ok(HamiltonianKind::Laplacian),
        "adjacency" => Ok(HamiltonianKind::Adjacency),
        other => Err(format!("unknown hamiltonian {other:?} (use laplacian|adjacency)")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen(cmd) => run_gen(cmd),
        Cmd::Walk(args) => run_walk(args),
        Cmd::Cover(cmd) => run_cover(cmd),
        Cmd::Compile(cmd) => run_compile(cmd),
        Cmd::Hiddencover(cmd) => run_hidden(cmd),
        Cmd::Demo(cmd) => run_demo(cmd),
    }
}

fn run_gen(cmd: GenCmd) -> Result<ExitCode> {
    let (graph, out, pi) = match cmd {
        GenCmd::Cycle { m, out } => (group::cycle(m)?, out, None),
        GenCmd::Hypercube { n, out } => (group::hypercube(n)?, out, None),
        GenCmd::Torus { m, size, out } => (group::torus(m, size)?, out, None),
        GenCmd::Paley { q, out } => (group::paley_graph(q)?, out, None),
        GenCmd::PathQuotient { n, out, pi_out } => {
            let (g, pi) = group::hypercube_path_quotient(n)?;
            (g, out, pi_out.map(|p| (p, pi)))
        }
        GenCmd::Cayley { group: spec, gens, out } => {
            let g = util::parse_group(&spec)?;
            let s = util::parse_generating_set(&spec, &g, &gens)?;
            (group::cayley_graph(&g, &s)?, out, None)
        }
        GenCmd::Schreier { group: spec, subgroup, gens, out, pi_out } => {
            let g = util::parse_group(&spec)?;
            let h = util::parse_subgroup(&spec, &g, &subgroup)?;
            let s = util::parse_generating_set(&spec, &g, &gens)?;
            let (graph, coset) = group::schreier_graph(&g, &h, &s)?;
            (graph, out, pi_out.map(|p| (p, coset)))
        }
    };
    let mut text = graph.to_json_string();
    text.push('\n');
    util::write_output(out.as_ref(), &text)?;
    if let Some((path, projection)) = pi {
        let body: Vec<String> = projection.iter().map(|v| v.to_string()).collect();
        std::fs::write(&path, format!("[{}]\n", body.join(", ")))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_initial(spec: &str, dim: usize) -> Result<QuantumState> {
    if spec == "uniform" {
        return Ok(QuantumState::uniform(dim)?);
    }
    if let Some(v) = spec.strip_prefix("vertex:") {
        let v: usize = v.parse().with_context(|| format!("initial state {spec:?}"))?;
        return Ok(QuantumState::basis_state(dim, v)?);
    }
    bail!("initial state must be vertex:K or uniform, got {spec:?}")
}

fn run_walk(args: WalkArgs) -> Result<ExitCode> {
    let graph = util::read_graph(args.graph.as_deref())?;
    let state = parse_initial(&args.initial, graph.num_vertices())?;
    let decomposition = eigendecompose(&args.hamiltonian.matrix(&graph))?;
    let evolved = evolve(&state, &decomposition, args.t)?;
    let mut csv = String::from("vertex,probability\n");
    for v in 0..graph.num_vertices() {
        writeln!(csv, "{v},{}", fmt_f64(evolved.probability(v)))?;
    }
    util::write_output(args.out.as_ref(), &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn run_cover(cmd: CoverCmd) -> Result<ExitCode> {
    match cmd {
        CoverCmd::Verify { y, x, pi, out } => {
            let source = util::read_graph(Some(&y))?;
            let target = util::read_graph(Some(&x))?;
            let projection = util::read_pi(&pi)?;
            let report = verify_cover(&source, &target, &projection)?;
            let json = format!(
                "{{\"schema\": 1, \"is_cover\": {}, \"mu\": {}, \"max_residual\": {}, \"worst_target\": {}, \"worst_source\": {}}}\n",
                report.is_cover,
                fmt_f64(report.mu),
                fmt_f64(report.max_residual),
                report.worst_target,
                report.worst_source
            );
            util::write_output(out.as_ref(), &json)?;
            eprintln!(
                "cover = {}, mu = {}, max residual = {}",
                report.is_cover,
                fmt_f64(report.mu),
                fmt_f64(report.max_residual)
            );
            Ok(if report.is_cover { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        CoverCmd::Quotient { y, pi, out } => {
            let source = util::read_graph(Some(&y))?;
            let projection = util::read_pi(&pi)?;
            let q = quotient_graph(&source, &projection)?;
            let mut text = q.graph.to_json_string();
            text.push('\n');
            util::write_output(out.as_ref(), &text)?;
            eprintln!("quotient on {} vertices, mu = {}", q.graph.num_vertices(), fmt_f64(q.mu));
            Ok(ExitCode::SUCCESS)
        }
        CoverCmd::Walkcheck { y, pi, t, states, seed, tol, out } => {
            let source = util::read_graph(Some(&y))?;
            let projection = util::read_pi(&pi)?;
            let quotient = quotient_graph(&source, &projection)?;
            let cm = CoveringMap::new(source, quotient.graph, projection)?;
            let dim_x = cm.target().num_vertices();
            let checker = QuotientWalkChecker::new(cm)?;
            let mut rng = SplitMix64::new(seed);
            let mut worst = 0.0f64;
            for _ in 0..states {
                let phi = QuantumState::random(dim_x, &mut rng)?;
                for kind in [HamiltonianKind::Laplacian, HamiltonianKind::Adjacency] {
                    worst = worst.max(checker.residual(&phi, t, kind)?);
                }
            }
            let pass = worst <= tol;
            let json = format!(
                "{{\"schema\": 1, \"max_residual\": {}, \"states\": {states}, \"t\": {}, \"pass\": {pass}}}\n",
                fmt_f64(worst),
                fmt_f64(t)
            );
            util::write_output(out.as_ref(), &json)?;
            eprintln!("max quotient-walk residual = {} ({})", fmt_f64(worst), if pass { "PASS" } else { "FAIL" });
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

/// Laplacian first row of a circulant graph: negate off-diagonal weights and
/// put the loopless degree on the diagonal.
fn laplacian_row(adjacency_row: &[f64]) -> Vec<f64> {
    let degree_off_diag: f64 = adjacency_row.iter().skip(1).sum();
    let mut row: Vec<f64> = adjacency_row.iter().map(|&w| -w).collect();
    row[0] = degree_off_diag;
    row
}

fn run_compile(cmd: CompileCmd) -> Result<ExitCode> {
    let (seq, row, blocks, common): (GateSequence, Vec<f64>, usize, CompileCommon) = match cmd {
        CompileCmd::Cycle { n, common } => {
            let seq = compile_cycle_walk_with_kind(n, common.t, common.bits, common.hamiltonian)?;
            let m = 1usize << n;
            let mut row = vec![0.0; m];
            row[1] += 1.0;
            row[m - 1] += 1.0;
            (seq, row, 1, common)
        }
        CompileCmd::Circulant { row, graph, common } => {
            let row: Vec<f64> = match (row, graph) {
                (Some(csv), None) => csv
                    .split(',')
                    .map(|x| x.trim().parse::<f64>().context("parsing --row"))
                    .collect::<Result<_>>()?,
                (None, Some(path)) => {
                    let g = util::read_graph(Some(&path))?;
                    circulant_row_of_graph(&g)
                        .ok_or_else(|| anyhow::anyhow!("graph is not circulant"))?
                }
                _ => bail!("provide exactly one of --row or --graph"),
            };
            let seq =
                compile_circulant_walk_with_kind(&row, common.t, common.bits, common.hamiltonian)?;
            (seq, row, 1, common)
        }
        CompileCmd::Torus { m, n, common } => {
            if common.hamiltonian != HamiltonianKind::Adjacency {
                bail!("torus compilation supports only the adjacency walk");
            }
            let seq = compile_torus_walk(m, n, common.t, common.bits)?;
            let size = 1usize << n;
            let mut row = vec![0.0; size];
            row[1] += 1.0;
            row[size - 1] += 1.0;
            (seq, row, m, common)
        }
    };

    let counts = seq.counts();
    println!(
        "width {} gates {} (hadamard {}, controlled_phase {}, swap {}, diagonal_oracle {})",
        seq.width(),
        counts.total(),
        counts.hadamard,
        counts.controlled_phase,
        counts.swap,
        counts.diagonal_oracle
    );
    if let Some(path) = &common.emit {
        let mut text = seq.to_json_string();
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    if !common.verify {
        return Ok(ExitCode::SUCCESS);
    }
    if seq.width() > SIM_WIDTH_CAP {
        bail!("cannot verify: width {} exceeds simulation cap {SIM_WIDTH_CAP}", seq.width());
    }
    let compiled = simulate_gates(&seq)?;
    let spectral_row = match common.hamiltonian {
        HamiltonianKind::Adjacency => row.clone(),
        HamiltonianKind::Laplacian => laplacian_row(&row),
    };
    let factor = circulant_decomposition(&spectral_row)?;
    let exact = if blocks == 1 {
        propagator(&factor, common.t)?
    } else {
        let factors: Vec<_> = (0..blocks).map(|_| (&factor, common.t)).collect();
        tensor_propagator(&factors)?
    };
    let report = unitary_distance(&compiled, exact.matrix())?;
    let bound = common
        .tol
        .unwrap_or(blocks as f64 * TAU * (2f64).powi(-(common.bits as i32)) + 1e-9);
    let pass = report.operator_norm <= bound;
    println!(
        "distance to exact propagator: operator norm {} max entry {} (bound {}) {}",
        fmt_f64(report.operator_norm),
        fmt_f64(report.max_entry),
        fmt_f64(bound),
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn nontrivial_divisors(n: u64) -> Vec<u64> {
    (2..n).filter(|d| n % d == 0).collect()
}

fn run_hidden(cmd: HiddenCmd) -> Result<ExitCode> {
    match cmd {
        HiddenCmd::Solve { n, bits, seed, trials, max_samples, out } => {
            let divisors = nontrivial_divisors(n);
            if divisors.is_empty() {
                bail!("n = {n} has no nontrivial divisors; the hidden period would be trivial");
            }
            let solver = CycleCoverSolver::new(n)?;
            let mut results = String::new();
            let mut recovered = 0usize;
            let mut wrong = 0usize;
            let mut failed = 0usize;
            let mut total_samples = 0usize;
            for trial in 0..trials {
                let mut stream = SplitMix64::new(seed).split(trial as u64);
                let hidden = divisors[stream.next_below(divisors.len() as u64) as usize];
                let oracle_seed = stream.next_u64();
                let mut oracle = CosetOracle::new(n, hidden, oracle_seed)?;
                let entry = match solver.solve(&mut oracle, bits, max_samples, &mut stream) {
                    Ok(res) => {
                        total_samples += res.samples_used;
                        if res.period == hidden {
                            recovered += 1;
                        } else {
                            wrong += 1;
                        }
                        format!(
                            "{{\"trial\": {trial}, \"hidden_p\": {hidden}, \"recovered\": {}, \"samples\": {}, \"ok\": {}}}",
                            res.period,
                            res.samples_used,
                            res.period == hidden
                        )
                    }
                    Err(_) => {
                        failed += 1;
                        format!(
                            "{{\"trial\": {trial}, \"hidden_p\": {hidden}, \"recovered\": null, \"samples\": {max_samples}, \"ok\": false}}"
                        )
                    }
                };
                if trial > 0 {
                    results.push_str(", ");
                }
                results.push_str(&entry);
            }
            let mean = total_samples as f64 / (recovered + wrong).max(1) as f64;
            let json = format!(
                "{{\"schema\": 1, \"n\": {n}, \"bits\": {bits}, \"seed\": {seed}, \"trials\": {trials}, \"max_samples\": {max_samples}, \"results\": [{results}], \"summary\": {{\"recovered\": {recovered}, \"wrong\": {wrong}, \"failed\": {failed}, \"mean_samples\": {}}}}}\n",
                fmt_f64(mean)
            );
            util::write_output(out.as_ref(), &json)?;
            eprintln!("recovered {recovered}/{trials} (wrong {wrong}, failed {failed})");
            Ok(if wrong == 0 && failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        HiddenCmd::Dihedral { n, out } => {
            let report = dihedral_isospectrality_report(n)?;
            let mut csv = String::from("subgroup,index,eigenvalue\n");
            for (j, spectrum) in report.spectra.iter().enumerate() {
                for (i, lam) in spectrum.iter().enumerate() {
                    writeln!(csv, "{j},{i},{}", fmt_f64(*lam))?;
                }
            }
            util::write_output(out.as_ref(), &csv)?;
            eprintln!(
                "max pairwise sorted-spectrum gap = {} -> {}",
                fmt_f64(report.max_pairwise_gap),
                if report.indistinguishable {
                    "spectrally indistinguishable"
                } else {
                    "distinguishable"
                }
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_demo(cmd: DemoCmd) -> Result<ExitCode> {
    let (pass, report) = match cmd {
        DemoCmd::Hypercube { n, t, seed } => demos::demo_hypercube(n, t, seed)?,
        DemoCmd::Covers { max_n } => demos::demo_covers(max_n)?,
        DemoCmd::QuotientWalk { max_n, states, seed } => {
            demos::demo_quotient_walk(max_n, states, seed)?
        }
        DemoCmd::Containment { max_n } => demos::demo_containment(max_n)?,
        DemoCmd::Circulant { sizes } => demos::demo_circulant(&sizes)?,
        DemoCmd::Compile { max_n, bits } => demos::demo_compile(max_n, bits)?,
        DemoCmd::Trotter => demos::demo_trotter()?,
        DemoCmd::Hiddencover { pmax, trials, seed } => {
            demos::demo_hiddencover(pmax, trials, seed)?
        }
        DemoCmd::Confinement { samples, seed } => demos::demo_confinement(samples, seed)?,
        DemoCmd::Dihedral { ns } => demos::demo_dihedral(&ns)?,
    };
    print!("{report}");
    println!("{}", if pass { "PASS" } else { "FAIL" });
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
