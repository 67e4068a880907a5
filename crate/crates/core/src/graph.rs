//! Weighted graphs and their Laplacian / adjacency operators.
//!
//! A graph is a finite vertex set `{0, .., n−1}` with a symmetric nonnegative
//! weight function; absent pairs mean weight zero. Loops `(u,u)` are allowed
//! (Schreier graphs need them) and count once in the degree
//! `d_v = Σ_u w(u,v)`. The Laplacian is `Δ = D − A` with `D = diag(d_v)`.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::jsonfmt;
use crate::linalg::SymmetricMatrix;
use crate::tol;
use crate::VERTEX_CAP;

/// Index of a vertex; dense in `[0, n)`.
pub type VertexId = usize;

/// Finite weighted graph with symmetric nonnegative weights.
///
/// Weights are stored once per unordered pair (canonical `(min,max)` key),
/// so an asymmetric weight function is unrepresentable.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    num_vertices: usize,
    weights: BTreeMap<(VertexId, VertexId), f64>,
    labels: Option<Vec<String>>,
}

impl WeightedGraph {
    pub fn new(num_vertices: usize) -> Result<Self> {
        Self::with_cap(num_vertices, VERTEX_CAP)
    }

    pub fn with_cap(num_vertices: usize, cap: usize) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        if num_vertices > cap {
            return Err(Error::VertexCapExceeded { requested: num_vertices, cap });
        }
        Ok(Self { num_vertices, weights: BTreeMap::new(), labels: None })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.num_vertices {
            return Err(Error::VertexOutOfRange { v, n: self.num_vertices });
        }
        Ok(())
    }

    /// Sets `w(u,v) = w(v,u) = weight`; a zero weight removes the pair.
    pub fn set_weight(&mut self, u: VertexId, v: VertexId, weight: f64) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::InvalidWeight { weight });
        }
        let key = (u.min(v), u.max(v));
        if weight == 0.0 {
            self.weights.remove(&key);
        } else {
            self.weights.insert(key, weight);
        }
        Ok(())
    }

    /// Adds to the existing weight of the pair.
    pub fn add_weight(&mut self, u: VertexId, v: VertexId, weight: f64) -> Result<()> {
        let current = self.weight(u.min(v), u.max(v));
        self.set_weight(u, v, current + weight)
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> f64 {
        *self.weights.get(&(u.min(v), u.max(v))).unwrap_or(&0.0)
    }

    /// Stored pairs `((u,v), w)` with `u ≤ v` and `w > 0`, in key order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn num_edges(&self) -> usize {
        self.weights.len()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.num_vertices {
            return Err(Error::DimensionMismatch {
                expected: self.num_vertices,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// All weights in {0,1} and no loops.
    pub fn is_simple(&self) -> bool {
        self.weights.iter().all(|(&(u, v), &w)| u != v && w == 1.0)
    }

    /// Degree `d_v = Σ_u w(u,v)`; a loop contributes its weight once.
    pub fn degree(&self, v: VertexId) -> Result<f64> {
        self.check_vertex(v)?;
        let mut d = 0.0;
        for u in 0..self.num_vertices {
            d += self.weight(u, v);
        }
        Ok(d)
    }

    /// Entry `(u,v) = w(u,v)`, loops on the diagonal.
    pub fn adjacency_matrix(&self) -> SymmetricMatrix {
        let mut a = SymmetricMatrix::zeros(self.num_vertices);
        for (&(u, v), &w) in &self.weights {
            a.set_sym(u, v, w);
        }
        a
    }

    /// `Δ = D − A`: diagonal `d_v − w(v,v)`, off-diagonal `−w(u,v)`.
    pub fn laplacian(&self) -> SymmetricMatrix {
        let a = self.adjacency_matrix();
        let mut l = SymmetricMatrix::zeros(self.num_vertices);
        for v in 0..self.num_vertices {
            let d: f64 = a.row(v).iter().sum();
            for u in 0..self.num_vertices {
                if u == v {
                    l.set_sym(v, v, d - a.get(v, v));
                } else if a.get(u, v) != 0.0 {
                    l.set_sym(u, v, -a.get(u, v));
                }
            }
        }
        l
    }

    /// `(true, d₀)` iff all degrees agree within [`tol::REGULARITY`].
    pub fn is_regular(&self) -> (bool, f64) {
        let d0 = self.degree(0).expect("graph has at least one vertex");
        let regular = (0..self.num_vertices)
            .all(|v| (self.degree(v).unwrap() - d0).abs() <= tol::REGULARITY);
        (regular, d0)
    }

    /// Cartesian product: vertex `(i₁,i₂) ↦ i₁·|V₂| + i₂`, adjacency
    /// `A(g₁)⊗I + I⊗A(g₂)`.
    pub fn cartesian_product(&self, other: &WeightedGraph) -> Result<WeightedGraph> {
        self.cartesian_product_with_cap(other, VERTEX_CAP)
    }

    pub fn cartesian_product_with_cap(
        &self,
        other: &WeightedGraph,
        cap: usize,
    ) -> Result<WeightedGraph> {
        let n1 = self.num_vertices;
        let n2 = other.num_vertices;
        let n = n1
            .checked_mul(n2)
            .ok_or(Error::VertexCapExceeded { requested: usize::MAX, cap })?;
        let mut g = WeightedGraph::with_cap(n, cap)?;
        for (u, v, w) in self.edges() {
            for k in 0..n2 {
                g.add_weight(u * n2 + k, v * n2 + k, w)?;
            }
        }
        for (u, v, w) in other.edges() {
            for k in 0..n1 {
                g.add_weight(k * n2 + u, k * n2 + v, w)?;
            }
        }
        Ok(g)
    }

    /// Parses the JSON interchange format
    /// `{"n": int, "edges": [[u, v, w], ...], "labels": [str, ...]?}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let parsed: GraphJson = serde_json::from_str(s)?;
        let mut g = WeightedGraph::new(parsed.n)?;
        for (u, v, w) in parsed.edges {
            g.add_weight(u, v, w)?;
        }
        if let Some(labels) = parsed.labels {
            g.set_labels(labels)?;
        }
        Ok(g)
    }

    /// Serialises the interchange format with deterministic edge order and
    /// 17-significant-digit weights.
    pub fn to_json_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{{\"n\": {}, \"edges\": [", self.num_vertices));
        let mut first = true;
        for (u, v, w) in self.edges() {
            if !first {
                out.push_str(", ");
            }
            first = false;
            out.push_str(&format!("[{}, {}, {}]", u, v, jsonfmt::fmt_f64(w)));
        }
        out.push(']');
        if let Some(labels) = &self.labels {
            out.push_str(", \"labels\": [");
            for (i, l) in labels.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&jsonfmt::escape_str(l));
            }
            out.push(']');
        }
        out.push('}');
        out
    }
}

#[derive(Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(m: usize) -> WeightedGraph {
        let mut g = WeightedGraph::new(m).unwrap();
        for k in 0..m {
            g.set_weight(k, (k + 1) % m, 1.0).unwrap();
        }
        g
    }

    #[test]
    fn adjacency_of_c4() {
        let a = cycle(4).adjacency_matrix();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i + 1) % 4 == j || (j + 1) % 4 == i { 1.0 } else { 0.0 };
                assert_eq!(a.get(i, j), expect, "({i},{j})");
            }
        }
    }

    #[test]
    fn adjacency_single_loop() {
        let mut g = WeightedGraph::new(1).unwrap();
        g.set_weight(0, 0, 2.0).unwrap();
        assert_eq!(g.adjacency_matrix().get(0, 0), 2.0);
    }

    #[test]
    fn adjacency_path_is_tridiagonal() {
        let mut g = WeightedGraph::new(3).unwrap();
        g.set_weight(0, 1, 1.0).unwrap();
        g.set_weight(1, 2, 1.0).unwrap();
        let a = g.adjacency_matrix();
        assert_eq!(a.get(0, 1), 1.0);
        assert_eq!(a.get(1, 2), 1.0);
        assert_eq!(a.get(0, 2), 0.0);
        assert_eq!(a.get(0, 0), 0.0);
    }

    #[test]
    fn degrees() {
        let c4 = cycle(4);
        for v in 0..4 {
            assert_eq!(c4.degree(v).unwrap(), 2.0);
        }
        let mut loopy = WeightedGraph::new(1).unwrap();
        loopy.set_weight(0, 0, 3.0).unwrap();
        assert_eq!(loopy.degree(0).unwrap(), 3.0);
        // star K_{1,3}, center = 0
        let mut star = WeightedGraph::new(4).unwrap();
        for leaf in 1..4 {
            star.set_weight(0, leaf, 1.0).unwrap();
        }
        assert_eq!(star.degree(0).unwrap(), 3.0);
        assert!(star.degree(7).is_err());
    }

    #[test]
    fn laplacian_of_regular_graph_is_shifted_adjacency() {
        let c4 = cycle(4);
        let l = c4.laplacian();
        let a = c4.adjacency_matrix();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 2.0 } else { -a.get(i, j) };
                assert_eq!(l.get(i, j), expect);
            }
        }
    }

    #[test]
    fn laplacian_of_weighted_edge() {
        let mut g = WeightedGraph::new(2).unwrap();
        g.set_weight(0, 1, 2.5).unwrap();
        let l = g.laplacian();
        assert_eq!(l.get(0, 0), 2.5);
        assert_eq!(l.get(0, 1), -2.5);
        assert_eq!(l.get(1, 1), 2.5);
    }

    #[test]
    fn laplacian_of_pure_loop_vanishes() {
        // d_v = w(v,v), so the diagonal d_v − w(v,v) is zero.
        let mut g = WeightedGraph::new(1).unwrap();
        g.set_weight(0, 0, 4.0).unwrap();
        assert_eq!(g.laplacian().max_abs(), 0.0);
    }

    #[test]
    fn laplacian_equals_degree_matrix_minus_adjacency() {
        let mut g = WeightedGraph::new(5).unwrap();
        g.set_weight(0, 1, 0.5).unwrap();
        g.set_weight(1, 2, 2.0).unwrap();
        g.set_weight(2, 2, 1.5).unwrap();
        g.set_weight(3, 4, 1.0).unwrap();
        let a = g.adjacency_matrix();
        let l = g.laplacian();
        for i in 0..5 {
            for j in 0..5 {
                let d = if i == j { g.degree(i).unwrap() } else { 0.0 };
                assert_eq!(l.get(i, j), d - a.get(i, j));
            }
        }
    }

    #[test]
    fn cartesian_product_matches_kronecker_sum() {
        let c4 = cycle(4);
        let k2 = {
            let mut g = WeightedGraph::new(2).unwrap();
            g.set_weight(0, 1, 1.0).unwrap();
            g
        };
        // K_2 × K_2 ≅ C_4
        let q2 = k2.cartesian_product(&k2).unwrap();
        assert_eq!(q2.num_vertices(), 4);
        let (reg, d) = q2.is_regular();
        assert!(reg);
        assert_eq!(d, 2.0);

        // direct vs Kronecker-sum formula on C_4 × K_2
        let p = c4.cartesian_product(&k2).unwrap();
        let a1 = c4.adjacency_matrix().to_matrix();
        let a2 = k2.adjacency_matrix().to_matrix();
        let want = a1
            .kron(&crate::linalg::Matrix::identity(2))
            .add(&crate::linalg::Matrix::identity(4).kron(&a2));
        let got = p.adjacency_matrix().to_matrix();
        assert!(got.sub(&want).max_abs() < 1e-15);
    }

    #[test]
    fn torus_from_product_is_four_regular() {
        let c4 = cycle(4);
        let t = c4.cartesian_product(&c4).unwrap();
        assert_eq!(t.num_vertices(), 16);
        let (reg, d) = t.is_regular();
        assert!(reg);
        assert_eq!(d, 4.0);
    }

    #[test]
    fn regularity() {
        assert!(cycle(5).is_regular().0);
        let mut star = WeightedGraph::new(4).unwrap();
        for leaf in 1..4 {
            star.set_weight(0, leaf, 1.0).unwrap();
        }
        assert!(!star.is_regular().0);
    }

    #[test]
    fn product_cap_enforced() {
        let c = cycle(70);
        assert!(matches!(
            c.cartesian_product(&c),
            Err(Error::VertexCapExceeded { .. })
        ));
    }

    #[test]
    fn negative_weight_rejected() {
        let mut g = WeightedGraph::new(2).unwrap();
        assert!(matches!(
            g.set_weight(0, 1, -1.0),
            Err(Error::InvalidWeight { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let mut g = cycle(3);
        g.set_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let s = g.to_json_string();
        let back = WeightedGraph::from_json_str(&s).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn json_loop_edge() {
        let g = WeightedGraph::from_json_str(r#"{"n": 2, "edges": [[0, 0, 2.0], [0, 1, 1.0]]}"#)
            .unwrap();
        assert_eq!(g.weight(0, 0), 2.0);
        assert_eq!(g.weight(0, 1), 1.0);
    }
}
