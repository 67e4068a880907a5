//! Test-only oracles, independent of the library's spectral code paths.

use coverwalk::graph::WeightedGraph;
use coverwalk::linalg::{ComplexMatrix, SymmetricMatrix};
use coverwalk::SplitMix64;
use num_complex::Complex64;

/// `e^{−iHt}` by scaling-and-squaring with a Taylor series: scale `−iHt`
/// below norm 1/2, sum 25 Taylor terms, square back up. No eigensolver
/// involved.
pub fn expm_minus_i_ht(h: &SymmetricMatrix, t: f64) -> ComplexMatrix {
    let n = h.dim();
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, Complex64::new(0.0, -t * h.get(i, j)));
        }
    }
    let inf_norm = (0..n)
        .map(|i| m.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let squarings = if inf_norm > 0.5 { (inf_norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = m.scale(Complex64::new(1.0 / (1u64 << squarings) as f64, 0.0));
    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=25u32 {
        term = term.matmul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
        result = result.add(&term);
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

/// A uniformly weighted random graph that is connected by construction:
/// a random spanning tree plus extra random edges.
pub fn random_connected_graph(n: usize, extra_edges: usize, rng: &mut SplitMix64) -> WeightedGraph {
    let mut g = WeightedGraph::new(n).expect("small test graph");
    for v in 1..n {
        let u = rng.next_below(v as u64) as usize;
        let w = 0.25 + 1.5 * rng.next_f64();
        g.set_weight(u, v, w).unwrap();
    }
    for _ in 0..extra_edges {
        let u = rng.next_below(n as u64) as usize;
        let v = rng.next_below(n as u64) as usize;
        if u != v {
            let w = 0.25 + 1.5 * rng.next_f64();
            g.set_weight(u, v, w).unwrap();
        }
    }
    g
}

/// Brute-force check of the two covering-space conditions straight from
/// their definition: a single index `μ` relating summed fibre weights to
/// base weights, and fibre-uniform weight sums. Independent of the
/// library's pull-back matrices.
pub fn definition_check(
    y: &WeightedGraph,
    x: &WeightedGraph,
    pi: &[usize],
    tolerance: f64,
) -> (bool, f64) {
    let nx = x.num_vertices();
    let mut fibres = vec![Vec::new(); nx];
    for (v, &u) in pi.iter().enumerate() {
        fibres[u].push(v);
    }
    if fibres.iter().any(|f| f.is_empty()) {
        return (false, 0.0);
    }
    // Condition (i): one μ across all pairs.
    let mut mu: Option<f64> = None;
    for u in 0..nx {
        for v in 0..nx {
            let sum: f64 = fibres[u]
                .iter()
                .map(|&a| fibres[v].iter().map(|&b| y.weight(a, b)).sum::<f64>())
                .sum();
            let wx = x.weight(u, v);
            let geom = ((fibres[u].len() * fibres[v].len()) as f64).sqrt();
            if wx != 0.0 {
                let ratio = sum / (geom * wx);
                match mu {
                    None => mu = Some(ratio),
                    Some(m) if (ratio - m).abs() > tolerance => return (false, m),
                    _ => {}
                }
            } else if sum.abs() > tolerance {
                return (false, mu.unwrap_or(0.0));
            }
        }
    }
    // Condition (ii): fibre-uniform sums.
    for fibre in &fibres {
        for v in 0..nx {
            let first: f64 = fibres[v].iter().map(|&z| y.weight(z, fibre[0])).sum();
            for &a in &fibre[1..] {
                let s: f64 = fibres[v].iter().map(|&z| y.weight(z, a)).sum();
                if (s - first).abs() > tolerance {
                    return (false, mu.unwrap_or(0.0));
                }
            }
        }
    }
    (true, mu.unwrap_or(1.0))
}
