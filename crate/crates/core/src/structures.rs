//! Combinatorial carriers: weighted and signed graphs, chemical
//! hypergraphs, uniform hypergraphs and their adjacency tensors, and
//! simplicial complexes with signed boundary matrices.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Matrix};
use crate::setfn::SubsetMask;

pub const MAX_HYPERCUBE: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    w: Vec<f64>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph { n, w: vec![0.0; n * n] }
    }

    /// Edges `(i, j, w)` with 0-based endpoints; repeated edges accumulate.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut g = WeightedGraph::new(n);
        for &(i, j, w) in edges {
            g.add_edge(i, j, w)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = WeightedGraph::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.set(i, j, 1.0);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = WeightedGraph::new(n);
        for i in 1..n {
            g.set(i - 1, i, 1.0);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = WeightedGraph::path(n);
        if n > 2 {
            g.set(0, n - 1, 1.0);
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize, w: f64) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::Invalid(format!("edge ({}, {}) outside 1..={}", i + 1, j + 1, self.n)));
        }
        if i == j {
            return Err(Error::Invalid(format!("loop at vertex {}", i + 1)));
        }
        if !(w >= 0.0) || !w.is_finite() {
            return Err(Error::Invalid(format!("weight {w} must be finite and nonnegative")));
        }
        let v = self.weight(i, j) + w;
        self.set(i, j, v);
        Ok(())
    }

    fn set(&mut self, i: usize, j: usize, w: f64) {
        self.w[i * self.n + j] = w;
        self.w[j * self.n + i] = w;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.n + j]
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.w[i * self.n..(i + 1) * self.n].iter().sum()
    }

    pub fn degrees(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    /// Edges `(i, j, w)` with `i < j` and `w > 0`.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let w = self.weight(i, j);
                if w > 0.0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.weight(i, j) > 0.0)
    }

    pub fn adjacency(&self) -> Matrix {
        Matrix::from_rows(&(0..self.n).map(|i| self.w[i * self.n..(i + 1) * self.n].to_vec()).collect::<Vec<_>>())
    }

    pub fn degree_matrix(&self) -> Matrix {
        Matrix::diag(&self.degrees())
    }

    pub fn laplacian(&self) -> Matrix {
        self.degree_matrix().sub(&self.adjacency())
    }

    pub fn signless_laplacian(&self) -> Matrix {
        self.degree_matrix().add(&self.adjacency())
    }

    /// Oriented incidence matrix: one column per edge `(i, j)`, `+1` at `i`, `-1` at `j`.
    pub fn incidence(&self) -> Matrix {
        let edges = self.edges();
        let mut b = Matrix::zeros(self.n, edges.len());
        for (e, &(i, j, _)) in edges.iter().enumerate() {
            b[(i, e)] = 1.0;
            b[(j, e)] = -1.0;
        }
        b
    }

    pub fn volume(&self, a: SubsetMask) -> f64 {
        a.indices().filter(|&i| i < self.n).map(|i| self.degree(i)).sum()
    }

    /// `Σ w_ij` over `i ∈ A`, `j ∈ B` (ordered pairs).
    pub fn e_between(&self, a: SubsetMask, b: SubsetMask) -> f64 {
        let mut s = 0.0;
        for i in a.indices() {
            for j in b.indices() {
                s += self.weight(i, j);
            }
        }
        s
    }

    pub fn cut(&self, a: SubsetMask) -> f64 {
        self.e_between(a, a.complement(self.n))
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.n, |i| self.neighbors(i).collect())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// A proper 2-coloring if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for v in self.neighbors(u) {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        q.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn complement(&self) -> WeightedGraph {
        let mut g = WeightedGraph::new(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.weight(i, j) == 0.0 {
                    g.set(i, j, 1.0);
                }
            }
        }
        g
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> WeightedGraph {
        let mut g = WeightedGraph::new(vertices.len());
        for (a, &i) in vertices.iter().enumerate() {
            for (b, &j) in vertices.iter().enumerate() {
                if a < b {
                    g.set(a, b, self.weight(i, j));
                }
            }
        }
        g
    }

    /// Maximum weighted degree of the subgraph induced on `a`.
    pub fn induced_max_degree(&self, a: SubsetMask) -> f64 {
        a.indices().map(|i| a.indices().map(|j| self.weight(i, j)).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn to_signed(&self) -> SignedGraph {
        SignedGraph { n: self.n, w: self.w.clone() }
    }
}

pub(crate) fn components_of(n: usize, nbrs: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for v in nbrs(u) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    q.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignedGraph {
    n: usize,
    w: Vec<f64>,
}

impl SignedGraph {
    pub fn new(n: usize) -> Self {
        SignedGraph { n, w: vec![0.0; n * n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut g = SignedGraph::new(n);
        for &(i, j, w) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::Invalid(format!("bad signed edge ({}, {})", i + 1, j + 1)));
            }
            if !w.is_finite() {
                return Err(Error::Invalid("non-finite weight".into()));
            }
            let v = g.weight(i, j) + w;
            g.set(i, j, v);
        }
        Ok(g)
    }

    pub fn from_int_matrix(m: &IntMatrix) -> Result<Self> {
        let n = m.rows();
        let mut g = SignedGraph::new(n);
        for i in 0..n {
            if m[(i, i)] != 0 {
                return Err(Error::Invalid("nonzero diagonal".into()));
            }
            for j in 0..n {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::Invalid("matrix not symmetric".into()));
                }
                g.w[i * n + j] = m[(i, j)] as f64;
            }
        }
        Ok(g)
    }

    fn set(&mut self, i: usize, j: usize, w: f64) {
        self.w[i * self.n + j] = w;
        self.w[j * self.n + i] = w;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.n + j]
    }

    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let w = self.weight(i, j);
                if w != 0.0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.weight(i, j) != 0.0)
    }

    /// `Σ_j |w_ij|`.
    pub fn degree(&self, i: usize) -> f64 {
        self.w[i * self.n..(i + 1) * self.n].iter().map(|v| v.abs()).sum()
    }

    pub fn degrees(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn adjacency(&self) -> Matrix {
        Matrix::from_rows(&(0..self.n).map(|i| self.w[i * self.n..(i + 1) * self.n].to_vec()).collect::<Vec<_>>())
    }

    /// `D - A` with `D` the absolute degrees.
    pub fn laplacian(&self) -> Matrix {
        Matrix::diag(&self.degrees()).sub(&self.adjacency())
    }

    pub fn negated(&self) -> SignedGraph {
        SignedGraph { n: self.n, w: self.w.iter().map(|v| -v).collect() }
    }

    /// Flips the signs of all edges at the vertices with `s_i = -1`.
    pub fn switched(&self, s: &[i8]) -> SignedGraph {
        let mut g = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                g.w[i * self.n + j] *= (s[i] * s[j]) as f64;
            }
        }
        g
    }

    pub fn underlying(&self) -> WeightedGraph {
        WeightedGraph { n: self.n, w: self.w.iter().map(|v| v.abs()).collect() }
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.n, |i| self.neighbors(i).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentBalance {
    pub vertices: Vec<usize>,
    /// Switching `s` with `s_i s_j w_ij > 0` on every edge, when balanced.
    pub switching: Option<Vec<i8>>,
    /// An edge inconsistent with the spanning-tree switching, when unbalanced.
    pub witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BalanceReport {
    pub balanced: usize,
    pub components: Vec<ComponentBalance>,
}

/// Spanning-tree switching propagation per connected component.
pub fn balanced_components(g: &SignedGraph) -> BalanceReport {
    let mut comps = Vec::new();
    let mut balanced = 0;
    for comp in g.components() {
        let mut s: HashMap<usize, i8> = HashMap::new();
        s.insert(comp[0], 1);
        let mut q = VecDeque::from([comp[0]]);
        while let Some(u) = q.pop_front() {
            for v in g.neighbors(u) {
                if !s.contains_key(&v) {
                    let sign = if g.weight(u, v) > 0.0 { 1 } else { -1 };
                    s.insert(v, s[&u] * sign);
                    q.push_back(v);
                }
            }
        }
        let mut witness = None;
        'outer: for &u in &comp {
            for v in g.neighbors(u) {
                if (s[&u] * s[&v]) as f64 * g.weight(u, v) < 0.0 {
                    witness = Some((u.min(v), u.max(v)));
                    break 'outer;
                }
            }
        }
        let switching = if witness.is_none() {
            balanced += 1;
            Some(comp.iter().map(|v| s[v]).collect())
        } else {
            None
        };
        comps.push(ComponentBalance { vertices: comp, switching, witness });
    }
    BalanceReport { balanced, components: comps }
}

/// Reaction-style hyperedge with input and output sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChemicalEdge {
    pub input: SubsetMask,
    pub output: SubsetMask,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChemicalHypergraph {
    n: usize,
    edges: Vec<ChemicalEdge>,
}

impl ChemicalHypergraph {
    pub fn new(n: usize, edges: Vec<ChemicalEdge>) -> Result<Self> {
        if n == 0 || n > 24 {
            return Err(Error::Invalid(format!("vertex count {n} not in 1..=24")));
        }
        for (k, e) in edges.iter().enumerate() {
            e.input.check(n)?;
            e.output.check(n)?;
            if e.input.is_empty() || e.output.is_empty() {
                return Err(Error::Invalid(format!("edge {} has an empty side", k + 1)));
            }
            if e.input.union(e.output).len() < 2 {
                return Err(Error::Invalid(format!("edge {} touches fewer than two vertices", k + 1)));
            }
        }
        Ok(ChemicalHypergraph { n, edges })
    }

    /// A graph edge `{i, j}` becomes `e_in = e_out = {i, j}`.
    pub fn from_graph(g: &WeightedGraph) -> Result<Self> {
        let edges = g
            .edges()
            .iter()
            .map(|&(i, j, _)| {
                let m = SubsetMask::from_indices(&[i, j]);
                ChemicalEdge { input: m, output: m }
            })
            .collect();
        ChemicalHypergraph::new(g.n(), edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[ChemicalEdge] {
        &self.edges
    }

    /// `#{e : i ∈ e_in ∪ e_out}`.
    pub fn degree(&self, i: usize) -> f64 {
        self.edges.iter().filter(|e| e.input.union(e.output).contains(i)).count() as f64
    }

    pub fn degrees(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn volume(&self, a: SubsetMask) -> f64 {
        a.indices().map(|i| self.degree(i)).sum()
    }

    /// `e_in ∩ A ≠ ∅ ≠ e_out \ A`, or `e_out ⊆ A ⊆ V \ e_in`.
    pub fn in_boundary(&self, e: &ChemicalEdge, a: SubsetMask) -> bool {
        let first = !e.input.intersect(a).is_empty() && !e.output.minus(a).is_empty();
        let second = e.output.is_subset_of(a) && a.intersect(e.input).is_empty();
        first || second
    }

    pub fn boundary_size(&self, a: SubsetMask) -> usize {
        self.edges.iter().filter(|e| self.in_boundary(e, a)).count()
    }

    /// Signed incidence: `+1` on inputs, `-1` on outputs, `0` on catalysts in both.
    pub fn incidence(&self) -> Matrix {
        let mut b = Matrix::zeros(self.n, self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            for i in 0..self.n {
                let v = e.input.contains(i) as i32 - e.output.contains(i) as i32;
                b[(i, k)] = v as f64;
            }
        }
        b
    }

    pub fn underlying_graph(&self) -> WeightedGraph {
        let mut g = WeightedGraph::new(self.n);
        for e in &self.edges {
            let s: Vec<usize> = e.input.union(e.output).indices().collect();
            for a in 0..s.len() {
                for b in (a + 1)..s.len() {
                    g.set(s[a], s[b], 1.0);
                }
            }
        }
        g
    }

    /// `Σ_e |max_{e_in} x - min_{e_out} x|^p`.
    pub fn energy(&self, x: &[f64], p: f64) -> f64 {
        self.edges
            .iter()
            .map(|e| {
                let mx = e.input.indices().map(|i| x[i]).fold(f64::NEG_INFINITY, f64::max);
                let mn = e.output.indices().map(|i| x[i]).fold(f64::INFINITY, f64::min);
                (mx - mn).abs().powf(p)
            })
            .sum()
    }
}

/// Hypergraph whose edges all have `k` distinct vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformHypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

impl UniformHypergraph {
    pub fn new(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("edge size must be positive".into()));
        }
        let mut out = Vec::with_capacity(edges.len());
        for (idx, e) in edges.into_iter().enumerate() {
            let mut s = e.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != k || e.len() != k {
                return Err(Error::Invalid(format!("hyperedge {} does not have {k} distinct vertices", idx + 1)));
            }
            if s.iter().any(|&v| v >= n) {
                return Err(Error::Invalid(format!("hyperedge {} outside 1..={n}", idx + 1)));
            }
            out.push(s);
        }
        out.sort();
        out.dedup();
        Ok(UniformHypergraph { n, k, edges: out })
    }

    pub fn from_graph(g: &WeightedGraph) -> Self {
        let edges = g.edges().iter().map(|&(i, j, _)| vec![i, j]).collect();
        UniformHypergraph { n: g.n(), k: 2, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.edges.iter().filter(|e| e.contains(&i)).count() as f64
    }

    pub fn degrees(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    /// Number of hyperedges contained in `a`.
    pub fn edges_within(&self, a: SubsetMask) -> usize {
        self.edges.iter().filter(|e| e.iter().all(|&v| a.contains(v))).count()
    }
}

/// Symmetric tensor stored by sorted index multisets.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, f64>,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

/// Number of distinct orderings of a sorted multiset.
fn arrangements(sorted: &[usize]) -> f64 {
    let mut denom = 1.0;
    let mut run = 1;
    for w in 1..=sorted.len() {
        if w < sorted.len() && sorted[w] == sorted[w - 1] {
            run += 1;
        } else {
            denom *= factorial(run);
            run = 1;
        }
    }
    factorial(sorted.len()) / denom
}

impl SymmetricTensor {
    pub fn new(order: usize, dim: usize) -> Result<Self> {
        if order < 2 || dim == 0 {
            return Err(Error::Invalid("tensor needs order >= 2 and dim >= 1".into()));
        }
        Ok(SymmetricTensor { order, dim, entries: BTreeMap::new() })
    }

    /// Order-2 tensor from a symmetric matrix.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_symmetric(1e-12) {
            return Err(Error::Invalid("matrix not symmetric".into()));
        }
        let mut t = SymmetricTensor::new(2, m.rows())?;
        for i in 0..m.rows() {
            for j in i..m.rows() {
                if m[(i, j)] != 0.0 {
                    t.set(&[i, j], m[(i, j)])?;
                }
            }
        }
        Ok(t)
    }

    /// Diagonal tensor with `d_{i..i} = diag[i]`.
    pub fn diagonal(order: usize, diag: &[f64]) -> Result<Self> {
        let mut t = SymmetricTensor::new(order, diag.len())?;
        for (i, &v) in diag.iter().enumerate() {
            if v != 0.0 {
                t.set(&vec![i; order], v)?;
            }
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn key(&self, idx: &[usize]) -> Result<Vec<usize>> {
        if idx.len() != self.order {
            return Err(Error::Arity { expected: self.order, got: idx.len() });
        }
        if let Some(&v) = idx.iter().find(|&&v| v >= self.dim) {
            return Err(Error::Invalid(format!("index {} outside 1..={}", v + 1, self.dim)));
        }
        let mut k = idx.to_vec();
        k.sort_unstable();
        Ok(k)
    }

    /// Sets the value of every permutation of `idx`.
    pub fn set(&mut self, idx: &[usize], v: f64) -> Result<()> {
        let k = self.key(idx)?;
        if v == 0.0 {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, v);
        }
        Ok(())
    }

    pub fn get(&self, idx: &[usize]) -> Result<f64> {
        Ok(self.entries.get(&self.key(idx)?).copied().unwrap_or(0.0))
    }

    /// Stored multisets with values.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, f64)> {
        self.entries.iter().map(|(k, v)| (k, *v))
    }

    /// Number of nonzero entries of the full symmetric array.
    pub fn implicit_entries(&self) -> usize {
        self.entries.keys().map(|k| arrangements(k) as usize).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|&v| v >= 0.0)
    }

    /// `Σ c_{i_1..i_k} x_{i_1} ... x_{i_k}` over all index tuples.
    pub fn form(&self, x: &[f64]) -> f64 {
        self.entries.iter().map(|(k, v)| v * arrangements(k) * k.iter().map(|&i| x[i]).product::<f64>()).sum()
    }

    /// `(C x^{k-1})_i = Σ c_{i, i_2..i_k} x_{i_2} ... x_{i_k}`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (k, v) in &self.entries {
            let mut prev = usize::MAX;
            for (pos, &i) in k.iter().enumerate() {
                if i == prev {
                    continue;
                }
                prev = i;
                let mut rest = k.clone();
                rest.remove(pos);
                out[i] += v * arrangements(&rest) * rest.iter().map(|&j| x[j]).product::<f64>();
            }
        }
        out
    }
}

/// Adjacency tensor of a uniform hypergraph: 1 on every permutation of every edge.
pub fn adjacency_tensor(h: &UniformHypergraph) -> Result<SymmetricTensor> {
    let mut t = SymmetricTensor::new(h.k().max(2), h.n())?;
    if h.k() < 2 {
        return Err(Error::Invalid("adjacency tensor needs edge size >= 2".into()));
    }
    for e in h.edges() {
        t.set(e, 1.0)?;
    }
    Ok(t)
}

/// Simplicial complex with simplices stored per dimension in
/// lexicographic order, vertices increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Downward closure of the given facets.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<usize>>> = Vec::new();
        for v in 0..n_vertices {
            if by_dim.is_empty() {
                by_dim.push(Default::default());
            }
            by_dim[0].insert(vec![v]);
        }
        for (idx, f) in facets.iter().enumerate() {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != f.len() || s.is_empty() {
                return Err(Error::Invalid(format!("simplex {} has repeated or no vertices", idx + 1)));
            }
            if s.iter().any(|&v| v >= n_vertices) {
                return Err(Error::Invalid(format!("simplex {} outside 1..={n_vertices}", idx + 1)));
            }
            if s.len() > 16 {
                return Err(Error::Cap("simplices are limited to 16 vertices".into()));
            }
            let m = s.len();
            for mask in 1u32..(1 << m) {
                let face: Vec<usize> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| s[b]).collect();
                let d = face.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(Default::default());
                }
                by_dim[d].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        Ok(SimplicialComplex { n_vertices, simplices, index })
    }

    /// The clique complex of a graph truncated at dimension 1 plus chosen triangles.
    pub fn from_graph(g: &WeightedGraph, triangles: &[[usize; 3]]) -> Result<Self> {
        let mut facets: Vec<Vec<usize>> = g.edges().iter().map(|&(i, j, _)| vec![i, j]).collect();
        for t in triangles {
            facets.push(t.to_vec());
        }
        SimplicialComplex::from_facets(g.n(), &facets)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().rposition(|l| !l.is_empty())
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.index.get(d)?.get(s).copied()
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for d in 0..self.simplices.len() {
            for s in &self.simplices[d] {
                if self.cofaces(d, self.index_of(s).expect("indexed")).is_empty() {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Indices of the `(d+1)`-simplices containing simplex `i` of dimension `d`.
    pub fn cofaces(&self, d: usize, i: usize) -> Vec<usize> {
        let s = &self.simplices[d][i];
        self.simplices(d + 1)
            .iter()
            .enumerate()
            .filter(|(_, t)| s.iter().all(|v| t.contains(v)))
            .map(|(j, _)| j)
            .collect()
    }

    /// Number of cofaces of every `d`-simplex.
    pub fn up_degrees(&self, d: usize) -> Vec<f64> {
        let mut deg = vec![0.0; self.count(d)];
        for t in self.simplices(d + 1) {
            for j in 0..t.len() {
                let mut f = t.clone();
                f.remove(j);
                deg[self.index_of(&f).expect("closed")] += 1.0;
            }
        }
        deg
    }
}

/// `B_d`: rows are `(d-1)`-simplices, columns `d`-simplices, entry `(-1)^j`
/// for the face omitting the `j`-th vertex.
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> Result<IntMatrix> {
    let top = k.dim().unwrap_or(0);
    if d == 0 || d > top {
        return Err(Error::Invalid(format!("boundary dimension {d} outside 1..={top}")));
    }
    let mut b = IntMatrix::zeros(k.count(d - 1), k.count(d));
    for (c, s) in k.simplices(d).iter().enumerate() {
        for j in 0..s.len() {
            let mut f = s.clone();
            f.remove(j);
            let r = k.index_of(&f).expect("complex is closed");
            b[(r, c)] = if j % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(b)
}

/// Graph on the `d`-simplices; `τ ~ τ'` through their common coface `σ`,
/// signed by `sgn(τ, ∂σ) sgn(τ', ∂σ)`.
pub fn anti_signed_graph(k: &SimplicialComplex, d: usize) -> Result<SignedGraph> {
    let b = boundary_matrix(k, d + 1)?;
    let n = k.count(d);
    let mut g = SignedGraph::new(n);
    for c in 0..b.cols() {
        let faces: Vec<usize> = (0..n).filter(|&r| b[(r, c)] != 0).collect();
        for a in 0..faces.len() {
            for bb in (a + 1)..faces.len() {
                let (i, j) = (faces[a], faces[bb]);
                assert!(g.weight(i, j) == 0.0, "two simplices share at most one coface");
                g.set(i, j, (b[(i, c)] * b[(j, c)]) as f64);
            }
        }
    }
    Ok(g)
}

/// Huang's signing of the `m`-cube: `W'_1 = [[0,1],[1,0]]`,
/// `W'_{m} = [[W'_{m-1}, I], [I, -W'_{m-1}]]`.
pub fn huang_signing(m: usize) -> Result<IntMatrix> {
    if !(1..=MAX_HYPERCUBE).contains(&m) {
        return Err(Error::Cap(format!("huang signing needs 1 <= m <= {MAX_HYPERCUBE}")));
    }
    let mut w = IntMatrix::zeros(2, 2);
    w[(0, 1)] = 1;
    w[(1, 0)] = 1;
    for _ in 1..m {
        let n = w.rows();
        let mut next = IntMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                next[(i, j)] = w[(i, j)];
                next[(n + i, n + j)] = -w[(i, j)];
            }
            next[(i, n + i)] = 1;
            next[(n + i, i)] = 1;
        }
        w = next;
    }
    Ok(w)
}

/// Cartesian product; vertex `(g, h)` has index `h * |G| + g`.
pub fn cartesian_product(g: &WeightedGraph, h: &WeightedGraph) -> Result<WeightedGraph> {
    let n = g.n() * h.n();
    if n > 1 << 12 {
        return Err(Error::Cap("product graphs are limited to 4096 vertices".into()));
    }
    let mut p = WeightedGraph::new(n);
    for b in 0..h.n() {
        for (i, j, w) in g.edges() {
            p.set(b * g.n() + i, b * g.n() + j, w);
        }
    }
    for a in 0..g.n() {
        for (i, j, w) in h.edges() {
            p.set(i * g.n() + a, j * g.n() + a, w);
        }
    }
    Ok(p)
}

/// `m`-fold product of a unit edge, indexed compatibly with [`huang_signing`].
pub fn hypercube(m: usize) -> Result<WeightedGraph> {
    if !(1..=MAX_HYPERCUBE).contains(&m) {
        return Err(Error::Cap(format!("hypercube needs 1 <= m <= {MAX_HYPERCUBE}")));
    }
    let edge = WeightedGraph::path(2);
    let mut q = edge.clone();
    for _ in 1..m {
        q = cartesian_product(&q, &edge)?;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_boundary_column() {
        let k = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(k.count(1), 3);
        let b2 = boundary_matrix(&k, 2).unwrap();
        // edges in lexicographic order: (12), (13), (23)
        assert_eq!(b2.column(0), vec![1, -1, 1]);
        let b1 = boundary_matrix(&k, 1).unwrap();
        assert!(b1.mul(&b2).is_zero());
    }

    #[test]
    fn single_edge_boundary() {
        let k = SimplicialComplex::from_facets(2, &[vec![0, 1]]).unwrap();
        let b1 = boundary_matrix(&k, 1).unwrap();
        assert_eq!(b1.column(0), vec![-1, 1]);
        assert!(boundary_matrix(&k, 2).is_err());
    }

    #[test]
    fn tetrahedron_boundary_squares_to_zero() {
        let k = SimplicialComplex::from_facets(4, &[vec![0, 1, 2, 3]]).unwrap();
        let b2 = boundary_matrix(&k, 2).unwrap();
        let b3 = boundary_matrix(&k, 3).unwrap();
        assert!(b2.mul(&b3).is_zero());
        assert_eq!(k.facets(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn anti_signed_examples() {
        let hollow = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let g = anti_signed_graph(&hollow, 0).unwrap();
        assert_eq!(g.edges().len(), 3);
        assert!(g.edges().iter().all(|e| e.2 == -1.0));
        let path = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let g = anti_signed_graph(&path, 0).unwrap();
        assert_eq!(g.edges(), vec![(0, 1, -1.0), (1, 2, -1.0)]);
        let full = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        let g = anti_signed_graph(&full, 1).unwrap();
        // (12)-(13): +1*-1, (12)-(23): +1*+1, (13)-(23): -1*+1
        assert_eq!(g.edges(), vec![(0, 1, -1.0), (0, 2, 1.0), (1, 2, -1.0)]);
    }

    #[test]
    fn anti_signed_degree_counts_cofaces() {
        let k = SimplicialComplex::from_facets(5, &[vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![0, 4]]).unwrap();
        for d in 0..2 {
            let g = anti_signed_graph(&k, d).unwrap();
            let up = k.up_degrees(d);
            for i in 0..k.count(d) {
                assert_eq!(g.neighbors(i).count() as f64, (d as f64 + 1.0) * up[i]);
            }
        }
    }

    #[test]
    fn balance_examples() {
        let pos = SignedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        assert_eq!(balanced_components(&pos).balanced, 1);
        let one_neg = SignedGraph::from_edges(3, &[(0, 1, -1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let r = balanced_components(&one_neg);
        assert_eq!(r.balanced, 0);
        assert!(r.components[0].witness.is_some());
        let neg_path = SignedGraph::from_edges(4, &[(0, 1, -1.0), (1, 2, -1.0), (2, 3, -1.0)]).unwrap();
        assert_eq!(balanced_components(&neg_path).balanced, 1);
    }

    #[test]
    fn huang_squares() {
        for m in 1..=6 {
            let w = huang_signing(m).unwrap();
            assert_eq!(w.mul(&w), IntMatrix::identity(1 << m).scale(m as i64));
            let q = hypercube(m).unwrap();
            let a = w.map_abs();
            for i in 0..(1 << m) {
                for j in 0..(1 << m) {
                    assert_eq!(a[(i, j)] as f64, q.weight(i, j));
                }
            }
        }
        assert!(huang_signing(0).is_err());
        assert!(huang_signing(11).is_err());
    }

    #[test]
    fn hypercube_shapes() {
        let q2 = hypercube(2).unwrap();
        assert_eq!(q2.num_edges(), 4);
        assert!(q2.degrees().iter().all(|&d| d == 2.0));
        let q3 = hypercube(3).unwrap();
        assert_eq!(q3.num_edges(), 12);
        assert!(q3.degrees().iter().all(|&d| d == 3.0));
        let a = WeightedGraph::from_edges(2, &[(0, 1, 2.0)]).unwrap();
        let b = WeightedGraph::from_edges(2, &[(0, 1, 5.0)]).unwrap();
        let c4 = cartesian_product(&a, &b).unwrap();
        assert_eq!(c4.edges(), vec![(0, 1, 2.0), (0, 2, 5.0), (1, 3, 5.0), (2, 3, 2.0)]);
    }

    #[test]
    fn tensors() {
        let h = UniformHypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let t = adjacency_tensor(&h).unwrap();
        assert_eq!(t.implicit_entries(), 6);
        assert_eq!(t.get(&[2, 0, 1]).unwrap(), 1.0);
        assert_eq!(t.form(&[1.0, 1.0, 1.0]), 6.0);
        assert_eq!(t.apply(&[1.0, 1.0, 1.0]), vec![2.0, 2.0, 2.0]);
        let g = UniformHypergraph::from_graph(&WeightedGraph::path(3));
        let a = adjacency_tensor(&g).unwrap();
        assert_eq!(a.apply(&[1.0, 2.0, 3.0]), vec![2.0, 4.0, 2.0]);
        let empty = UniformHypergraph::new(4, 3, vec![]).unwrap();
        assert_eq!(adjacency_tensor(&empty).unwrap().implicit_entries(), 0);
        assert!(UniformHypergraph::new(3, 3, vec![vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn chemical_boundary() {
        let e = ChemicalEdge { input: SubsetMask::from_indices(&[0]), output: SubsetMask::from_indices(&[1]) };
        let h = ChemicalHypergraph::new(2, vec![e]).unwrap();
        assert!(h.in_boundary(&e, SubsetMask(1)));
        assert!(h.in_boundary(&e, SubsetMask(2)));
        assert!(!h.in_boundary(&e, SubsetMask(3)));
        let bad = ChemicalEdge { input: SubsetMask(1), output: SubsetMask(1) };
        assert!(ChemicalHypergraph::new(2, vec![bad]).is_err());
    }
}
