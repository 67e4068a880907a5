//! Finite groups as explicit multiplication tables, and the graph families
//! built from them: Cayley graphs, Schreier coset graphs, hypercubes,
//! cycles, tori, Paley graphs, and the hypercube's weighted-path quotient.
//!
//! Tables keep everything exact: cosets and subgroups are enumerated by
//! brute force, and edge multiplicities become integer weights.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::rng::SplitMix64;
use crate::VERTEX_CAP;

/// Finite group given by its multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    /// `table[a * order + b] = a·b`
    table: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates the table (Latin square, two-sided identity, inverses) and
    /// spot-checks associativity on pseudo-random triples.
    pub fn from_table(table: Vec<usize>, order: usize) -> Result<Self> {
        if order == 0 || order > VERTEX_CAP {
            return Err(Error::InvalidGroupTable(format!("order {order} out of range")));
        }
        if table.len() != order * order {
            return Err(Error::InvalidGroupTable("table size mismatch".into()));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidGroupTable(format!("entry {bad} out of range")));
        }
        // Latin square: every row and column is a permutation.
        let mut seen = vec![false; order];
        for a in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let p = table[a * order + b];
                if seen[p] {
                    return Err(Error::InvalidGroupTable(format!("row {a} repeats {p}")));
                }
                seen[p] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let p = table[b * order + a];
                if seen[p] {
                    return Err(Error::InvalidGroupTable(format!("column {a} repeats {p}")));
                }
                seen[p] = true;
            }
        }
        // Two-sided identity.
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
        // Inverses.
        let mut inverse = vec![usize::MAX; order];
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| table[x * order + y] == identity && table[y * order + x] == identity)
                .ok_or_else(|| Error::InvalidGroupTable(format!("{x} has no inverse")))?;
            inverse[x] = inv;
        }
        // Associativity spot-check; exhaustive for toy orders.
        let mut rng = SplitMix64::new(order as u64);
        let triples = 256usize.min(order * order * order);
        for _ in 0..triples {
            let a = rng.next_below(order as u64) as usize;
            let b = rng.next_below(order as u64) as usize;
            let c = rng.next_below(order as u64) as usize;
            let ab_c = table[table[a * order + b] * order + c];
            let a_bc = table[a * order + table[b * order + c]];
            if ab_c != a_bc {
                return Err(Error::InvalidGroupTable(format!(
                    "associativity fails on ({a},{b},{c})"
                )));
            }
        }
        Ok(Self { order, table, inverse, identity })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }
}

/// `Z/mZ` with addition; element `k` is the residue `k`.
pub fn cyclic_group(m: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::InvalidArgument("cyclic group needs m ≥ 1".into()));
    }
    if m > VERTEX_CAP {
        return Err(Error::VertexCapExceeded { requested: m, cap: VERTEX_CAP });
    }
    let table = (0..m).flat_map(|a| (0..m).map(move |b| (a + b) % m)).collect();
    FiniteGroup::from_table(table, m)
}

/// Dihedral group `D_n = ⟨s, t | sⁿ = t² = e, tst = s⁻¹⟩` of order `2n`.
/// Element `i + n·j` is `sⁱtʲ` with `i < n`, `j ∈ {0,1}`.
pub fn dihedral_group(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("dihedral group needs n ≥ 1".into()));
    }
    let order = 2 * n;
    if order > VERTEX_CAP {
        return Err(Error::VertexCapExceeded { requested: order, cap: VERTEX_CAP });
    }
    let mut table = vec![0usize; order * order];
    for a in 0..n {
        for x in 0..2 {
            for b in 0..n {
                for y in 0..2 {
                    // (sᵃtˣ)(sᵇtʸ) = s^{a+(−1)ˣ b} t^{x⊕y}
                    let rot = if x == 0 { (a + b) % n } else { (a + n - b) % n };
                    let lhs = a + n * x;
                    let rhs = b + n * y;
                    table[lhs * order + rhs] = rot + n * (x ^ y);
                }
            }
        }
    }
    FiniteGroup::from_table(table, order)
}

/// `(Z/2Z)ⁿ` with XOR; element ids are bit masks.
pub fn elementary_abelian_2(n: usize) -> Result<FiniteGroup> {
    if n == 0 || (1usize << n) > VERTEX_CAP {
        return Err(Error::VertexCapExceeded {
            requested: 1usize.checked_shl(n as u32).unwrap_or(usize::MAX),
            cap: VERTEX_CAP,
        });
    }
    let order = 1usize << n;
    let table = (0..order).flat_map(|a| (0..order).map(move |b| a ^ b)).collect();
    FiniteGroup::from_table(table, order)
}

/// Inverse-closed generating set that avoids the identity.
#[derive(Debug, Clone)]
pub struct GeneratingSet {
    elements: BTreeSet<usize>,
}

impl GeneratingSet {
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let elements: BTreeSet<usize> = elements.into_iter().collect();
        for &s in &elements {
            if s >= group.order() {
                return Err(Error::InvalidGeneratingSet(format!("{s} out of range")));
            }
            if s == group.identity() {
                return Err(Error::InvalidGeneratingSet("contains the identity".into()));
            }
            if !elements.contains(&group.inv(s)) {
                return Err(Error::InvalidGeneratingSet(format!(
                    "not closed under inverse: {s}⁻¹ missing"
                )));
            }
        }
        if elements.is_empty() {
            return Err(Error::InvalidGeneratingSet("empty".into()));
        }
        Ok(Self { elements })
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Subgroup given by its element set; closure and Lagrange are validated.
#[derive(Debug, Clone)]
pub struct Subgroup {
    elements: BTreeSet<usize>,
}

impl Subgroup {
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let elements: BTreeSet<usize> = elements.into_iter().collect();
        if !elements.contains(&group.identity()) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &a in &elements {
            if a >= group.order() {
                return Err(Error::NotASubgroup(format!("{a} out of range")));
            }
            if !elements.contains(&group.inv(a)) {
                return Err(Error::NotASubgroup(format!("{a}⁻¹ missing")));
            }
            for &b in &elements {
                if !elements.contains(&group.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("{a}·{b} escapes the set")));
                }
            }
        }
        if group.order() % elements.len() != 0 {
            return Err(Error::NotASubgroup("order does not divide group order".into()));
        }
        Ok(Self { elements })
    }

    /// Generated subgroup ⟨gens⟩.
    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Result<Self> {
        let mut elements = BTreeSet::new();
        elements.insert(group.identity());
        let mut frontier: Vec<usize> = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                if g >= group.order() {
                    return Err(Error::NotASubgroup(format!("{g} out of range")));
                }
                for y in [group.mul(x, g), group.mul(x, group.inv(g))] {
                    if elements.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        Self::new(group, elements)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(&x)
    }
}

/// Cayley graph `X(G,S)`: vertices are group elements, and
/// `w(g,h) = |{s ∈ S : g = s⁻¹h}|` (symmetric since `S = S⁻¹`).
pub fn cayley_graph(group: &FiniteGroup, gens: &GeneratingSet) -> Result<WeightedGraph> {
    let n = group.order();
    let mut counts = vec![0u32; n * n];
    for h in 0..n {
        for s in gens.iter() {
            let g = group.mul(group.inv(s), h);
            counts[g * n + h] += 1;
        }
    }
    let mut graph = WeightedGraph::new(n)?;
    for u in 0..n {
        for v in u..n {
            let c = counts[u * n + v];
            debug_assert_eq!(c, counts[v * n + u]);
            if c > 0 {
                graph.set_weight(u, v, c as f64)?;
            }
        }
    }
    Ok(graph)
}

/// Schreier coset graph `X(G/H, S)` plus the coset table `g ↦ coset index`.
///
/// Edge weights are the per-representative transition counts
/// `w(gH, g'H) = |{(x,s) : x ∈ gH, s ∈ S, s⁻¹x ∈ g'H}| / |H|`, which are
/// integers and make the Cayley → Schreier projection a covering of index 1.
/// Loops appear whenever `H` is not normal.
pub fn schreier_graph(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    gens: &GeneratingSet,
) -> Result<(WeightedGraph, Vec<usize>)> {
    let n = group.order();
    let h = subgroup.len();
    // Left cosets in order of first appearance.
    let mut coset = vec![usize::MAX; n];
    let mut num_cosets = 0usize;
    for g in 0..n {
        if coset[g] == usize::MAX {
            for x in subgroup.iter() {
                coset[group.mul(g, x)] = num_cosets;
            }
            num_cosets += 1;
        }
    }
    let mut counts = vec![0u64; num_cosets * num_cosets];
    for x in 0..n {
        for s in gens.iter() {
            let y = group.mul(group.inv(s), x);
            counts[coset[x] * num_cosets + coset[y]] += 1;
        }
    }
    let mut graph = WeightedGraph::new(num_cosets)?;
    for u in 0..num_cosets {
        for v in u..num_cosets {
            let c = counts[u * num_cosets + v];
            debug_assert_eq!(c, counts[v * num_cosets + u]);
            if c > 0 {
                debug_assert_eq!(c % h as u64, 0, "coset transition count not fibre-uniform");
                graph.set_weight(u, v, (c / h as u64) as f64)?;
            }
        }
    }
    Ok((graph, coset))
}

/// Hypercube `Q_n = X((Z/2Z)ⁿ, {e₁, …, eₙ})`.
pub fn hypercube(n: usize) -> Result<WeightedGraph> {
    let group = elementary_abelian_2(n)?;
    let gens = GeneratingSet::new(&group, (0..n).map(|j| 1usize << j))?;
    cayley_graph(&group, &gens)
}

/// Cycle `C_m = X(Z/mZ, {±1})`; `m = 2` degenerates to a single edge.
pub fn cycle(m: usize) -> Result<WeightedGraph> {
    if m < 2 {
        return Err(Error::InvalidArgument("cycle needs m ≥ 2".into()));
    }
    let group = cyclic_group(m)?;
    let gens = GeneratingSet::new(&group, [1usize, m - 1])?;
    cayley_graph(&group, &gens)
}

/// `m`-fold cartesian product of `C_size`.
pub fn torus(m: usize, size: usize) -> Result<WeightedGraph> {
    if m == 0 {
        return Err(Error::InvalidArgument("torus needs m ≥ 1".into()));
    }
    let c = cycle(size)?;
    let mut g = c.clone();
    for _ in 1..m {
        g = g.cartesian_product(&c)?;
    }
    Ok(g)
}

/// Weighted path covered by `Q_n` (vertices = Hamming weights `0..=n`,
/// `w(j, j+1) = √((j+1)(n−j))`), plus the Hamming-weight vertex map.
pub fn hypercube_path_quotient(n: usize) -> Result<(WeightedGraph, Vec<usize>)> {
    if n == 0 {
        return Err(Error::InvalidArgument("needs n ≥ 1".into()));
    }
    if (1usize << n) > VERTEX_CAP {
        return Err(Error::VertexCapExceeded { requested: 1 << n, cap: VERTEX_CAP });
    }
    let mut path = WeightedGraph::new(n + 1)?;
    for j in 0..n {
        let w = (((j + 1) * (n - j)) as f64).sqrt();
        path.set_weight(j, j + 1, w)?;
    }
    let pi = (0..(1usize << n)).map(|v| v.count_ones() as usize).collect();
    Ok((path, pi))
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Paley graph on `F_q` (prime `q ≡ 1 mod 4`): `u ~ v` iff `u − v` is a
/// nonzero quadratic residue.
pub fn paley_graph(q: u64) -> Result<WeightedGraph> {
    if !is_prime(q) {
        return Err(Error::PaleyPrecondition { q, reason: "q is not prime".into() });
    }
    if q % 4 != 1 {
        return Err(Error::PaleyPrecondition { q, reason: "q ≢ 1 (mod 4)".into() });
    }
    let n = q as usize;
    if n > VERTEX_CAP {
        return Err(Error::VertexCapExceeded { requested: n, cap: VERTEX_CAP });
    }
    let mut residues = vec![false; n];
    for x in 1..q {
        residues[((x * x) % q) as usize] = true;
    }
    let mut g = WeightedGraph::new(n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            if residues[(v - u) % n] {
                g.set_weight(u, v, 1.0)?;
            }
        }
    }
    Ok(g)
}
