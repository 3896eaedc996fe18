//! Eigenpairs of pairs `(F, G)` of p-homogeneous functions.
//!
//! Clarke subdifferentials are represented as Minkowski sums of convex
//! hulls of finite point lists. Certification measures the ℓ∞ distance from
//! `0` to `∂F(x) - λ∂G(x)` with a small linear program.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convex::{ellipsoid_minimize, linearized_ascent, norm_subgradient, NormBall};
use crate::error::{Error, Result};
use crate::linalg::{
    conjugate, dot, generalized_eigen, norm2, norm_p, orthogonal_complement, solve, symmetric_eigen, Matrix,
};
use crate::lp::{LinearProgram, Relation};
use crate::structures::{ChemicalHypergraph, SignedGraph, SymmetricTensor, WeightedGraph};

pub const RESIDUAL_TOL: f64 = 1e-9;
pub const DEFAULT_STARTS: usize = 64;
pub const DEFAULT_SEED: u64 = 42;
pub const TERNARY_CAP: usize = 8;
const GENERATOR_CAP: usize = 1 << 16;

/// `base + Σ_j conv(hulls[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subdiff {
    pub base: Vec<f64>,
    pub hulls: Vec<Vec<Vec<f64>>>,
}

impl Subdiff {
    pub fn zeros(n: usize) -> Self {
        Subdiff { base: vec![0.0; n], hulls: Vec::new() }
    }

    pub fn point(g: Vec<f64>) -> Self {
        Subdiff { base: g, hulls: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn is_singleton(&self) -> bool {
        self.hulls.is_empty()
    }

    pub fn add_point(&mut self, g: &[f64], scale: f64) {
        for (b, v) in self.base.iter_mut().zip(g) {
            *b += scale * v;
        }
    }

    /// Adds `conv(points)`; a single point is folded into the base.
    pub fn add_hull(&mut self, mut points: Vec<Vec<f64>>) {
        points.dedup();
        if points.len() == 1 {
            let p = points.pop().unwrap_or_default();
            self.add_point(&p, 1.0);
        } else {
            self.hulls.push(points);
        }
    }

    pub fn scale(&mut self, c: f64) {
        self.base.iter_mut().for_each(|v| *v *= c);
        for h in &mut self.hulls {
            for p in h.iter_mut() {
                p.iter_mut().for_each(|v| *v *= c);
            }
        }
    }

    pub fn add(&mut self, other: Subdiff) {
        self.add_point(&other.base, 1.0);
        self.hulls.extend(other.hulls);
    }

    /// Image under `v -> Mᵀ v`.
    pub fn pull_back(&self, m: &Matrix) -> Subdiff {
        let mt = m.transpose();
        Subdiff {
            base: mt.mul_vec(&self.base),
            hulls: self.hulls.iter().map(|h| h.iter().map(|p| mt.mul_vec(p)).collect()).collect(),
        }
    }

    /// Sum of hull centroids; always a member.
    pub fn representative(&self) -> Vec<f64> {
        let mut out = self.base.clone();
        for h in &self.hulls {
            let c = 1.0 / h.len() as f64;
            for p in h {
                for (o, v) in out.iter_mut().zip(p) {
                    *o += c * v;
                }
            }
        }
        out
    }

    /// All vertex sums, a generator list of the set.
    pub fn generators(&self) -> Result<Vec<Vec<f64>>> {
        let mut count: usize = 1;
        for h in &self.hulls {
            if h.is_empty() {
                return Err(Error::EmptyGenerators);
            }
            count = count.saturating_mul(h.len());
            if count > GENERATOR_CAP {
                return Err(Error::Cap(format!("more than {GENERATOR_CAP} subgradient generators")));
            }
        }
        let mut out = vec![self.base.clone()];
        for h in &self.hulls {
            let mut next = Vec::with_capacity(out.len() * h.len());
            for a in &out {
                for p in h {
                    next.push(a.iter().zip(p).map(|(x, y)| x + y).collect());
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Positively p-homogeneous function with Clarke subgradient oracle.
pub trait HomogeneousFn: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;
    fn degree(&self) -> f64;
    fn eval(&self, x: &[f64]) -> f64;
    fn subdiff(&self, x: &[f64]) -> Subdiff;
    /// `M` with `F(x) = xᵀMx` when `F` is a quadratic form.
    fn quadratic_matrix(&self) -> Option<Matrix> {
        None
    }
    fn is_convex(&self) -> bool {
        true
    }
    fn is_piecewise_linear(&self) -> bool {
        false
    }
}

fn tie_tol(x: &[f64]) -> f64 {
    1e-12 * x.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300)
}

/// `xᵀAx`.
#[derive(Debug, Clone)]
pub struct QuadraticForm {
    a: Matrix,
    convex: bool,
}

impl QuadraticForm {
    pub fn new(a: Matrix) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::Dimension { expected: a.rows(), got: a.cols() });
        }
        if !a.is_symmetric(1e-12 * a.max_abs().max(1.0)) {
            return Err(Error::Invalid("quadratic form matrix not symmetric".into()));
        }
        let a = a.symmetrize();
        let ev = symmetric_eigen(&a)?;
        let convex = ev.values.first().is_none_or(|&l| l >= -1e-12 * a.max_abs().max(1.0));
        Ok(QuadraticForm { a, convex })
    }
}

impl HomogeneousFn for QuadraticForm {
    fn dim(&self) -> usize {
        self.a.rows()
    }
    fn degree(&self) -> f64 {
        2.0
    }
    fn eval(&self, x: &[f64]) -> f64 {
        dot(x, &self.a.mul_vec(x))
    }
    fn subdiff(&self, x: &[f64]) -> Subdiff {
        Subdiff::point(self.a.mul_vec(x).into_iter().map(|v| 2.0 * v).collect())
    }
    fn quadratic_matrix(&self) -> Option<Matrix> {
        Some(self.a.clone())
    }
    fn is_convex(&self) -> bool {
        self.convex
    }
}

/// `Σ w_i |x_i|^p`.
#[derive(Debug, Clone)]
pub struct WeightedPower {
    pub weights: Vec<f64>,
    pub p: f64,
}

impl WeightedPower {
    pub fn new(weights: Vec<f64>, p: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::Invalid(format!("exponent {p} below 1")));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::Invalid("weights must be positive".into()));
        }
        Ok(WeightedPower { weights, p })
    }
}

impl HomogeneousFn for WeightedPower {
    fn dim(&self) -> usize {
        self.weights.len()
    }
    fn degree(&self) -> f64 {
        self.p
    }
    fn eval(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, v)| w * v.abs().powf(self.p)).sum()
    }
    fn subdiff(&self, x: &[f64]) -> Subdiff {
        let n = x.len();
        let mut s = Subdiff::zeros(n);
        for i in 0..n {
            let w = self.weights[i];
            if x[i] != 0.0 {
                s.base[i] = self.p * w * x[i].abs().powf(self.p - 1.0) * x[i].signum();
            } else if self.p == 1.0 {
                let mut a = vec![0.0; n];
                let mut b = vec![0.0; n];
                a[i] = -w;
                b[i] = w;
                s.hulls.push(vec![a, b]);
            }
        }
        s
    }
    fn quadratic_matrix(&self) -> Option<Matrix> {
        (self.p == 2.0).then(|| Matrix::diag(&self.weights))
    }
    fn is_piecewise_linear(&self) -> bool {
        self.p == 1.0
    }
}

/// `Σ_e w_e |t_e · x|^p`.
#[derive(Debug, Clone)]
pub struct LinearPower {
    rows: Vec<Vec<f64>>,
    weights: Vec<f64>,
    p: f64,
    n: usize,
}

impl LinearPower {
    pub fn new(n: usize, rows: Vec<Vec<f64>>, weights: Vec<f64>, p: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::Invalid(format!("exponent {p} below 1")));
        }
        if rows.len() != weights.len() {
            return Err(Error::Dimension { expected: rows.len(), got: weights.len() });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension { expected: n, got: r.len() });
        }
        if weights.iter().any(|&w| w < 0.0) {
            return Err(Error::Invalid("weights must be nonnegative".into()));
        }
        Ok(LinearPower { rows, weights, p, n })
    }

    /// Rows of `Tᵀ` taken from the columns of `t` (vertices by edges).
    pub fn from_incidence(t: &Matrix, weights: Vec<f64>, p: f64) -> Result<Self> {
        let rows = (0..t.cols()).map(|c| t.column(c)).collect();
        LinearPower::new(t.rows(), rows, weights, p)
    }
}

impl HomogeneousFn for LinearPower {
    fn dim(&self) -> usize {
        self.n
    }
    fn degree(&self) -> f64 {
        self.p
    }
    fn eval(&self, x: &[f64]) -> f64 {
        self.rows.iter().zip(&self.weights).map(|(t, w)| w * dot(t, x).abs().powf(self.p)).sum()
    }
    fn subdiff(&self, x: &[f64]) -> Subdiff {
        let mut s = Subdiff::zeros(self.n);
        let tol = tie_tol(x);
        for (t, &w) in self.rows.iter().zip(&self.weights) {
            let v = dot(t, x);
            let scale = t.iter().map(|a| a.abs()).sum::<f64>();
            if v.abs() > tol * scale {
                s.add_point(t, self.p * w * v.abs().powf(self.p - 1.0) * v.signum());
            } else if self.p == 1.0 && w != 0.0 {
                let a: Vec<f64> = t.iter().map(|c| -w * c).collect();
                let b: Vec<f64> = t.iter().map(|c| w * c).collect();
                s.hulls.push(vec![a, b]);
            }
        }
        s
    }
    fn quadratic_matrix(&self) -> Option<Matrix> {
        if self.p != 2.0 {
            return None;
        }
        let mut m = Matrix::zeros(self.n, self.n);
        for (t, &w) in self.rows.iter().zip(&self.weights) {
            for i in 0..self.n {
                if t[i] == 0.0 {
                    continue;
                }
                for j in 0..self.n {
                    m[(i, j)] += w * t[i] * t[j];
                }
            }
        }
        Some(m)
    }
    fn is_piecewise_linear(&self) -> bool {
        self.p == 1.0
    }
}

/// `Σ_e |max_{e_in} x - min_{e_out} x|^p` on a chemical hypergraph.
#[derive(Debug, Clone)]
pub struct ChemicalEnergy {
    h: ChemicalHypergraph,
    p: f64,
}

impl ChemicalEnergy {
    pub fn new(h: ChemicalHypergraph, p: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::Invalid(format!("exponent {p} below 1")));
        }
        Ok(ChemicalEnergy { h, p })
    }
}

impl HomogeneousFn for ChemicalEnergy {
    fn dim(&self) -> usize {
        self.h.n()
    }
    fn degree(&self) -> f64 {
        self.p
    }
    fn eval(&self, x: &[f64]) -> f64 {
        self.h.energy(x, self.p)
    }
    fn subdiff(&self, x: &[f64]) -> Subdiff {
        let n = self.h.n();
        let tol = tie_tol(x);
        let mut s = Subdiff::zeros(n);
        for e in self.h.edges() {
            let mx = e.input.indices().map(|i| x[i]).fold(f64::NEG_INFINITY, f64::max);
            let mn = e.output.indices().map(|i| x[i]).fold(f64::INFINITY, f64::min);
            let arg_max: Vec<usize> = e.input.indices().filter(|&i| x[i] >= mx - tol).collect();
            let arg_min: Vec<usize> = e.output.indices().filter(|&i| x[i] <= mn + tol).collect();
            let gap = mx - mn;
            if gap.abs() > 2.0 * tol {
                let c = self.p * gap.abs().powf(self.p - 1.0) * gap.signum();
                let plus: Vec<Vec<f64>> = arg_max
                    .iter()
                    .map(|&i| {
                        let mut v = vec![0.0; n];
                        v[i] = c;
                        v
                    })
                    .collect();
                let minus: Vec<Vec<f64>> = arg_min
                    .iter()
                    .map(|&j| {
                        let mut v = vec![0.0; n];
                        v[j] = -c;
                        v
                    })
                    .collect();
                s.add_hull(plus);
                s.add_hull(minus);
            } else if self.p == 1.0 {
                let mut pts = Vec::new();
                for &i in &arg_max {
                    for &j in &arg_min {
                        let mut v = vec![0.0; n];
                        v[i] += 1.0;
                        v[j] -= 1.0;
                        pts.push(v.iter().map(|a| -a).collect());
                        pts.push(v);
                    }
                }
                s.add_hull(pts);
            }
        }
        s
    }
    fn is_convex(&self) -> bool {
        self.h.edges().iter().all(|e| e.input == e.output)
    }
    fn is_piecewise_linear(&self) -> bool {
        self.p == 1.0
    }
}

/// `Σ c_{i_1..i_k} x_{i_1}..x_{i_k}`.
#[derive(Debug, Clone)]
pub struct TensorForm {
    c: SymmetricTensor,
}

impl TensorForm {
    pub fn new(c: SymmetricTensor) -> Self {
        TensorForm { c }
    }
}

impl HomogeneousFn for TensorForm {
    fn dim(&self) -> usize {
        self.c.dim()
    }
    fn degree(&self) -> f64 {
        self.c.order() as f64
    }
    fn eval(&self, x: &[f64]) -> f64 {
        self.c.form(x)
    }
    fn subdiff(&self, x: &[f64]) -> Subdiff {
        let k = self.c.order() as f64;
        Subdiff::point(self.c.apply(x).into_iter().map(|v| k * v).collect())
    }
    fn is_convex(&self) -> bool {
        false
    }
}

/// `x -> F(Mx)` for an invertible `M`.
#[derive(Debug, Clone)]
pub struct Composed {
    inner: Arc<dyn HomogeneousFn>,
    m: Matrix,
}

impl Composed {
    pub fn new(inner: Arc<dyn HomogeneousFn>, m: Matrix) -> Result<Self> {
        if m.rows() != inner.dim() || m.cols() != inner.dim() {
            return Err(Error::Dimension { expected: inner.dim(), got: m.rows() });
        }
        Ok(Composed { inner, m })
    }
}

impl HomogeneousFn for Composed {
    fn dim(&self) -> usize {
        self.m.cols()
    }
    fn degree(&self) -> f64 {
        self.inner.degree()
    }
    fn eval(&self, x: &[f64]) -> f64 {
        self.inner.eval(&self.m.mul_vec(x))
    }
    fn subdiff(&self, x: &[f64]) -> Subdiff {
        self.inner.subdiff(&self.m.mul_vec(x)).pull_back(&self.m)
    }
    fn quadratic_matrix(&self) -> Option<Matrix> {
        self.inner.quadratic_matrix().map(|a| self.m.transpose().mul(&a).mul(&self.m))
    }
    fn is_convex(&self) -> bool {
        self.inner.is_convex()
    }
    fn is_piecewise_linear(&self) -> bool {
        self.inner.is_piecewise_linear()
    }
}

/// `F1 - F2`.
#[derive(Debug, Clone)]
pub struct Difference {
    a: Arc<dyn HomogeneousFn>,
    b: Arc<dyn HomogeneousFn>,
}

impl Difference {
    pub fn new(a: Arc<dyn HomogeneousFn>, b: Arc<dyn HomogeneousFn>) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::Dimension { expected: a.dim(), got: b.dim() });
        }
        Ok(Difference { a, b })
    }
}

impl HomogeneousFn for Difference {
    fn dim(&self) -> usize {
        self.a.dim()
    }
    fn degree(&self) -> f64 {
        self.a.degree()
    }
    fn eval(&self, x: &[f64]) -> f64 {
        self.a.eval(x) - self.b.eval(x)
    }
    fn subdiff(&self, x: &[f64]) -> Subdiff {
        let mut s = self.a.subdiff(x);
        let mut t = self.b.subdiff(x);
        t.scale(-1.0);
        s.add(t);
        s
    }
    fn is_convex(&self) -> bool {
        false
    }
    fn is_piecewise_linear(&self) -> bool {
        self.a.is_piecewise_linear() && self.b.is_piecewise_linear()
    }
}

/// Max over generators of `|⟨g, x⟩ - p F(x)|`.
pub fn euler_gap(f: &dyn HomogeneousFn, x: &[f64]) -> Result<f64> {
    let target = f.degree() * f.eval(x);
    let gens = f.subdiff(x).generators()?;
    Ok(gens.iter().map(|g| (dot(g, x) - target).abs()).fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairTag {
    QuadraticForm,
    PiecewiseLinear,
    PowerForm,
    TensorForm,
    Composite,
}

#[derive(Debug, Clone)]
pub struct HomogeneousPair {
    pub f: Arc<dyn HomogeneousFn>,
    pub g: Arc<dyn HomogeneousFn>,
    pub tag: PairTag,
}

impl HomogeneousPair {
    pub fn new(f: Arc<dyn HomogeneousFn>, g: Arc<dyn HomogeneousFn>, tag: PairTag) -> Result<Self> {
        if f.dim() != g.dim() {
            return Err(Error::Dimension { expected: f.dim(), got: g.dim() });
        }
        if f.degree() != g.degree() {
            return Err(Error::Invalid(format!("degrees differ: {} vs {}", f.degree(), g.degree())));
        }
        if !(f.degree() >= 1.0) {
            return Err(Error::Invalid("degree below 1".into()));
        }
        Ok(HomogeneousPair { f, g, tag })
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn degree(&self) -> f64 {
        self.f.degree()
    }

    pub fn ratio(&self, x: &[f64]) -> Option<f64> {
        let g = self.g.eval(x);
        (g != 0.0).then(|| self.f.eval(x) / g)
    }

    pub fn quadratic_matrices(&self) -> Option<(Matrix, Matrix)> {
        Some((self.f.quadratic_matrix()?, self.g.quadratic_matrix()?))
    }

    /// Both functions composed with `M`.
    pub fn compose(&self, m: &Matrix) -> Result<HomogeneousPair> {
        Ok(HomogeneousPair {
            f: Arc::new(Composed::new(self.f.clone(), m.clone())?),
            g: Arc::new(Composed::new(self.g.clone(), m.clone())?),
            tag: PairTag::Composite,
        })
    }

    pub fn quadratic(a: Matrix, b: Matrix) -> Result<Self> {
        HomogeneousPair::new(Arc::new(QuadraticForm::new(a)?), Arc::new(QuadraticForm::new(b)?), PairTag::QuadraticForm)
    }

    fn power_tag(p: f64) -> PairTag {
        if p == 1.0 {
            PairTag::PiecewiseLinear
        } else if p == 2.0 {
            PairTag::QuadraticForm
        } else {
            PairTag::PowerForm
        }
    }

    fn vertex_weights(g: &[f64], normalized: bool) -> Result<Vec<f64>> {
        if normalized {
            if g.iter().any(|&d| d <= 0.0) {
                return Err(Error::Invalid("normalized pair needs positive degrees".into()));
            }
            Ok(g.to_vec())
        } else {
            Ok(vec![1.0; g.len()])
        }
    }

    /// `F = Σ w_ij |x_i - x_j|^p`, `G = Σ d_i |x_i|^p` (or `Σ |x_i|^p`).
    pub fn graph_p_laplacian(g: &WeightedGraph, p: f64, normalized: bool) -> Result<Self> {
        Self::edge_pair(g.n(), &g.edges(), -1.0, &g.degrees(), p, normalized)
    }

    /// `F = Σ w_ij |x_i + x_j|^p`.
    pub fn signless_p_laplacian(g: &WeightedGraph, p: f64, normalized: bool) -> Result<Self> {
        Self::edge_pair(g.n(), &g.edges(), 1.0, &g.degrees(), p, normalized)
    }

    /// `F = Σ |w_ij| |x_i - sgn(w_ij) x_j|^p`, `G = Σ d_i |x_i|^p`.
    pub fn signed_p_laplacian(g: &SignedGraph, p: f64, normalized: bool) -> Result<Self> {
        let n = g.n();
        let mut rows = Vec::new();
        let mut ws = Vec::new();
        for (i, j, w) in g.edges() {
            let mut t = vec![0.0; n];
            t[i] = 1.0;
            t[j] = -w.signum();
            rows.push(t);
            ws.push(w.abs());
        }
        let f = LinearPower::new(n, rows, ws, p)?;
        let gw = WeightedPower::new(Self::vertex_weights(&g.degrees(), normalized)?, p)?;
        HomogeneousPair::new(Arc::new(f), Arc::new(gw), Self::power_tag(p))
    }

    fn edge_pair(
        n: usize,
        edges: &[(usize, usize, f64)],
        sign: f64,
        deg: &[f64],
        p: f64,
        normalized: bool,
    ) -> Result<Self> {
        let mut rows = Vec::new();
        let mut ws = Vec::new();
        for &(i, j, w) in edges {
            let mut t = vec![0.0; n];
            t[i] = 1.0;
            t[j] = sign;
            rows.push(t);
            ws.push(w);
        }
        let f = LinearPower::new(n, rows, ws, p)?;
        let gw = WeightedPower::new(Self::vertex_weights(deg, normalized)?, p)?;
        HomogeneousPair::new(Arc::new(f), Arc::new(gw), Self::power_tag(p))
    }

    /// Lovász p-Laplacian pair of a chemical hypergraph.
    pub fn chemical_p_laplacian(h: &ChemicalHypergraph, p: f64) -> Result<Self> {
        let gw = WeightedPower::new(h.degrees(), p)?;
        let tag = if p == 1.0 { PairTag::PiecewiseLinear } else { PairTag::PowerForm };
        HomogeneousPair::new(Arc::new(ChemicalEnergy::new(h.clone(), p)?), Arc::new(gw), tag)
    }

    /// `F = Cx^k`, `G = Dx^k`.
    pub fn tensor_pair(c: SymmetricTensor, d: SymmetricTensor) -> Result<Self> {
        HomogeneousPair::new(Arc::new(TensorForm::new(c)), Arc::new(TensorForm::new(d)), PairTag::TensorForm)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub lambda: f64,
    pub x: Vec<f64>,
    pub residual: f64,
}

/// ℓ∞ distance from `0` to `∂F(x) - λ∂G(x)`.
pub fn eigen_residual(pair: &HomogeneousPair, lambda: f64, x: &[f64]) -> Result<f64> {
    if x.len() != pair.dim() {
        return Err(Error::Dimension { expected: pair.dim(), got: x.len() });
    }
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::Invalid("residual at the zero vector".into()));
    }
    let sf = pair.f.subdiff(x);
    let sg = pair.g.subdiff(x);
    subdiff_distance(&sf, &sg, lambda)
}

/// `min ‖u - λv‖_∞` over `u ∈ a`, `v ∈ b`.
pub fn subdiff_distance(a: &Subdiff, b: &Subdiff, lambda: f64) -> Result<f64> {
    let n = a.dim();
    if a.hulls.iter().chain(&b.hulls).any(|h| h.is_empty()) {
        return Err(Error::EmptyGenerators);
    }
    let diff: Vec<f64> = a.base.iter().zip(&b.base).map(|(u, v)| u - lambda * v).collect();
    if a.is_singleton() && b.is_singleton() {
        return Ok(diff.iter().fold(0.0, |m, v| m.max(v.abs())));
    }
    // Columns: hull weights of a, hull weights of b, then s.
    let mut cols: Vec<Vec<f64>> = Vec::new();
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for h in &a.hulls {
        groups.push((cols.len(), h.len()));
        cols.extend(h.iter().cloned());
    }
    for h in &b.hulls {
        groups.push((cols.len(), h.len()));
        cols.extend(h.iter().map(|p| p.iter().map(|v| -lambda * v).collect::<Vec<f64>>()));
    }
    let nv = cols.len() + 1;
    let s = nv - 1;
    let mut lp = LinearProgram::new(nv);
    let mut obj = vec![0.0; nv];
    obj[s] = 1.0;
    lp.minimize(&obj);
    for &(start, len) in &groups {
        let mut row = vec![0.0; nv];
        row[start..start + len].iter_mut().for_each(|v| *v = 1.0);
        lp.constrain(&row, Relation::Eq, 1.0);
    }
    for c in 0..n {
        let mut row: Vec<f64> = cols.iter().map(|p| p[c]).collect();
        row.push(-1.0);
        lp.constrain(&row, Relation::Le, -diff[c]);
        row[s] = 1.0;
        lp.constrain(&row, Relation::Ge, -diff[c]);
    }
    Ok(lp.solve()?.value.max(0.0))
}

/// Generalized eigenpairs of `(A, B)` with `B` positive definite.
pub fn quadratic_pair_spectrum(a: &Matrix, b: &Matrix) -> Result<crate::linalg::GenEigen> {
    let tol = 1e-12 * a.max_abs().max(b.max_abs()).max(1.0);
    if !a.is_symmetric(tol) || !b.is_symmetric(tol) {
        return Err(Error::Invalid("quadratic pair needs symmetric matrices".into()));
    }
    let e = generalized_eigen(a, b)?;
    if e.max_residual > 1e-9 {
        return Err(Error::NoConvergence(format!("eigen residual {:e}", e.max_residual)));
    }
    Ok(e)
}

/// Minimizes `Σ w_i |x_i - t v_i|^p` over `t`; returns `(value, t*)`.
pub fn g_pi_projection(w: &[f64], p: f64, v: &[f64], x: &[f64]) -> (f64, f64) {
    let value = |t: f64| -> f64 { w.iter().zip(v).zip(x).map(|((w, v), x)| w * (x - t * v).abs().powf(p)).sum() };
    let active: Vec<usize> = (0..x.len()).filter(|&i| v[i] != 0.0 && w[i] > 0.0).collect();
    if active.is_empty() {
        return (value(0.0), 0.0);
    }
    let t = if p == 2.0 {
        let num: f64 = active.iter().map(|&i| w[i] * x[i] * v[i]).sum();
        let den: f64 = active.iter().map(|&i| w[i] * v[i] * v[i]).sum();
        num / den
    } else if p == 1.0 {
        let mut pts: Vec<(f64, f64)> = active.iter().map(|&i| (x[i] / v[i], w[i] * v[i].abs())).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: f64 = pts.iter().map(|p| p.1).sum();
        let mut acc = 0.0;
        let mut t = pts[pts.len() - 1].0;
        for k in 0..pts.len() {
            acc += pts[k].1;
            if acc >= 0.5 * total * (1.0 - 1e-15) {
                t = if (acc - 0.5 * total).abs() <= 1e-15 * total && k + 1 < pts.len() {
                    0.0f64.clamp(pts[k].0, pts[k + 1].0)
                } else {
                    pts[k].0
                };
                break;
            }
        }
        t
    } else {
        // The derivative in t is non-decreasing; bisect on its sign.
        let deriv = |t: f64| -> f64 {
            active
                .iter()
                .map(|&i| {
                    let r = x[i] - t * v[i];
                    -p * w[i] * v[i] * r.abs().powf(p - 1.0) * r.signum()
                })
                .sum()
        };
        let ratios: Vec<f64> = active.iter().map(|&i| x[i] / v[i]).collect();
        let mut lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let mut hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if lo <= 0.0 && hi >= 0.0 && deriv(0.0) == 0.0 {
            0.0
        } else {
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if deriv(mid) > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        }
    };
    (value(t), t)
}

/// `G_Π(x) = inf_{z ∈ Π} G(x + z)` for `G = Σ w_i |x_i|^p`.
#[derive(Debug, Clone)]
pub struct SubspaceProjection {
    pub g: WeightedPower,
    pub basis: Vec<Vec<f64>>,
}

impl SubspaceProjection {
    pub fn new(g: WeightedPower, basis: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(b) = basis.iter().find(|b| b.len() != g.dim()) {
            return Err(Error::Dimension { expected: g.dim(), got: b.len() });
        }
        Ok(SubspaceProjection { g, basis })
    }

    /// `Π = span(1)`.
    pub fn constants(g: WeightedPower) -> Self {
        let n = g.dim();
        SubspaceProjection { g, basis: vec![vec![1.0; n]] }
    }

    pub fn trivial(g: WeightedPower) -> Self {
        SubspaceProjection { g, basis: Vec::new() }
    }

    /// Coefficients `c` of the minimizing shift `x - Σ c_j b_j`.
    pub fn minimizer(&self, x: &[f64]) -> Vec<f64> {
        let m = self.basis.len();
        let w = &self.g.weights;
        let p = self.g.p;
        if m == 0 {
            return Vec::new();
        }
        if m == 1 {
            return vec![g_pi_projection(w, p, &self.basis[0], x).1];
        }
        if p == 2.0 {
            let mut gram = Matrix::zeros(m, m);
            let mut rhs = vec![0.0; m];
            for a in 0..m {
                for b in 0..m {
                    gram[(a, b)] = (0..x.len()).map(|i| w[i] * self.basis[a][i] * self.basis[b][i]).sum();
                }
                rhs[a] = (0..x.len()).map(|i| w[i] * self.basis[a][i] * x[i]).sum();
            }
            if let Ok(c) = solve(&gram, &rhs) {
                return c;
            }
        }
        // Cyclic coordinate descent; exact for disjointly supported bases.
        let mut c = vec![0.0; m];
        let mut r = x.to_vec();
        let mut last = self.g.eval(&r);
        for _ in 0..2000 {
            for j in 0..m {
                let b = &self.basis[j];
                let (_, t) = g_pi_projection(w, p, b, &r);
                for i in 0..r.len() {
                    r[i] -= t * b[i];
                }
                c[j] += t;
            }
            let now = self.g.eval(&r);
            if last - now <= 1e-15 * last.max(1e-300) {
                break;
            }
            last = now;
        }
        c
    }

    pub fn shift(&self, x: &[f64]) -> Vec<f64> {
        let c = self.minimizer(x);
        let mut r = x.to_vec();
        for (cj, b) in c.iter().zip(&self.basis) {
            for i in 0..r.len() {
                r[i] -= cj * b[i];
            }
        }
        r
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.g.eval(&self.shift(x))
    }
}

/// Element of `∂G(x)` closest to `Π^⊥` in the max-inner-product sense.
pub fn subdiff_element_orthogonal(sd: &Subdiff, basis: &[Vec<f64>]) -> Result<Vec<f64>> {
    if basis.is_empty() || sd.is_singleton() {
        let mut v = sd.representative();
        if !basis.is_empty() && sd.is_singleton() {
            project_out(&mut v, basis);
        }
        return Ok(v);
    }
    let mut cols: Vec<Vec<f64>> = Vec::new();
    let mut groups = Vec::new();
    for h in &sd.hulls {
        groups.push((cols.len(), h.len()));
        cols.extend(h.iter().cloned());
    }
    let nv = cols.len() + 1;
    let s = nv - 1;
    let mut lp = LinearProgram::new(nv);
    let mut obj = vec![0.0; nv];
    obj[s] = 1.0;
    lp.minimize(&obj);
    for &(start, len) in &groups {
        let mut row = vec![0.0; nv];
        row[start..start + len].iter_mut().for_each(|v| *v = 1.0);
        lp.constrain(&row, Relation::Eq, 1.0);
    }
    for b in basis {
        let b0 = dot(b, &sd.base);
        let mut row: Vec<f64> = cols.iter().map(|p| dot(b, p)).collect();
        row.push(-1.0);
        lp.constrain(&row, Relation::Le, -b0);
        row[s] = 1.0;
        lp.constrain(&row, Relation::Ge, -b0);
    }
    let sol = lp.solve()?;
    let mut v = sd.base.clone();
    for (k, p) in cols.iter().enumerate() {
        for (vi, pi) in v.iter_mut().zip(p) {
            *vi += sol.x[k] * pi;
        }
    }
    Ok(v)
}

fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    let q = orthonormalize(basis);
    for u in &q {
        let c = dot(v, u);
        for (vi, ui) in v.iter_mut().zip(u) {
            *vi -= c * ui;
        }
    }
}

fn orthonormalize(basis: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut q: Vec<Vec<f64>> = Vec::new();
    for b in basis {
        let mut w = b.clone();
        for u in &q {
            let c = dot(&w, u);
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= c * ui;
            }
        }
        let nw = norm2(&w);
        if nw > 1e-12 {
            q.push(w.into_iter().map(|a| a / nw).collect());
        }
    }
    q
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerScheme {
    /// `min_{‖x‖₂ ≤ 1} F1(x) - ⟨u + r v, x⟩`.
    Ball,
    /// `min_x F1(x) - ⟨u + r v, x⟩`, for `p > 1`.
    Free,
}

#[derive(Debug, Clone)]
pub struct RatioDcaParams {
    pub scheme: InnerScheme,
    pub max_iter: usize,
    pub rtol: f64,
    pub inner_iter: usize,
    pub inner_tol: f64,
}

impl Default for RatioDcaParams {
    fn default() -> Self {
        RatioDcaParams { scheme: InnerScheme::Ball, max_iter: 500, rtol: 1e-12, inner_iter: 20_000, inner_tol: 1e-12 }
    }
}

#[derive(Debug, Clone)]
pub struct RatioDcaRun {
    pub estimate: EigenPair,
    pub ratios: Vec<f64>,
    pub converged: bool,
    /// Some inner solve hit its iteration cap.
    pub inner_capped: bool,
    /// The inner objective was nonconvex, so inner solutions are local.
    pub inner_local: bool,
}

/// Dinkelbach-type iteration for `min (F1 - F2)/G_Π`. A step is kept only
/// when it strictly lowers the ratio.
pub fn dinkelbach_ratiodca(
    f1: &Arc<dyn HomogeneousFn>,
    f2: Option<&Arc<dyn HomogeneousFn>>,
    proj: &SubspaceProjection,
    x0: &[f64],
    params: &RatioDcaParams,
) -> Result<RatioDcaRun> {
    let n = f1.dim();
    if x0.len() != n || proj.g.dim() != n {
        return Err(Error::Dimension { expected: n, got: x0.len() });
    }
    if let Some(f2) = f2 {
        if f2.dim() != n {
            return Err(Error::Dimension { expected: n, got: f2.dim() });
        }
    }
    let p = proj.g.p;
    if params.scheme == InnerScheme::Free && p <= 1.0 {
        return Err(Error::Invalid("the unconstrained scheme needs p > 1".into()));
    }
    let fval = |x: &[f64]| f1.eval(x) - f2.map_or(0.0, |f| f.eval(x));
    let normalize = |x: Vec<f64>| -> Vec<f64> {
        let s = match params.scheme {
            InnerScheme::Ball => norm2(&x),
            InnerScheme::Free => proj.g.eval(&x).powf(1.0 / p),
        };
        x.into_iter().map(|v| v / s).collect()
    };
    let y = proj.shift(x0);
    if proj.g.eval(&y) <= 1e-14 * proj.g.eval(x0).max(1e-300) || y.iter().all(|&v| v == 0.0) {
        return Err(Error::Invalid("start vector lies in the subspace".into()));
    }
    let mut x = normalize(y);
    let mut r = fval(&x) / proj.g.eval(&x);
    let mut ratios = vec![r];
    let mut converged = false;
    let mut inner_capped = false;
    let quad = if params.scheme == InnerScheme::Free { f1.quadratic_matrix() } else { None };
    let complement = orthogonal_complement(&proj.basis, n);
    for _ in 0..params.max_iter {
        let mut w = subdiff_element_orthogonal(&proj.g.subdiff(&x), &proj.basis)?;
        w.iter_mut().for_each(|v| *v *= r);
        if let Some(f2) = f2 {
            let u = f2.subdiff(&x).representative();
            for (wi, ui) in w.iter_mut().zip(&u) {
                *wi += ui;
            }
        }
        let obj = |z: &[f64]| f1.eval(z) - dot(&w, z);
        let sub = |z: &[f64]| {
            let mut g = f1.subdiff(z).representative();
            for (gi, wi) in g.iter_mut().zip(&w) {
                *gi -= wi;
            }
            g
        };
        let cand = match (params.scheme, &quad) {
            (InnerScheme::Free, Some(l)) => quadratic_inner(l, &w, &complement),
            (InnerScheme::Free, None) => {
                let mut radius = 1.0;
                let mut best = Vec::new();
                for _ in 0..30 {
                    let sol = ellipsoid_minimize(
                        n,
                        NormBall::new(2.0, radius),
                        &obj,
                        &sub,
                        params.inner_iter,
                        params.inner_tol,
                    );
                    inner_capped |= sol.iterations >= params.inner_iter;
                    let done = norm2(&sol.x) < 0.9 * radius;
                    best = sol.x;
                    if done {
                        break;
                    }
                    radius *= 4.0;
                }
                best
            }
            (InnerScheme::Ball, _) => {
                let sol =
                    ellipsoid_minimize(n, NormBall::new(2.0, 1.0), &obj, &sub, params.inner_iter, params.inner_tol);
                inner_capped |= sol.iterations >= params.inner_iter;
                sol.x
            }
        };
        let y = proj.shift(&cand);
        let gy = proj.g.eval(&y);
        if !(gy > 0.0) || !gy.is_finite() {
            converged = true;
            break;
        }
        let r_new = fval(&y) / gy;
        if r_new < r - 1e-15 * r.abs().max(1.0) {
            let drop = r - r_new;
            x = normalize(y);
            r = r_new;
            ratios.push(r);
            if drop < params.rtol * r.abs().max(1.0) {
                converged = true;
                break;
            }
        } else {
            converged = true;
            break;
        }
    }
    let s = proj.g.eval(&x).powf(1.0 / p);
    let x: Vec<f64> = x.into_iter().map(|v| v / s).collect();
    let fd: Arc<dyn HomogeneousFn> = match f2 {
        Some(f2) => Arc::new(Difference::new(f1.clone(), f2.clone())?),
        None => f1.clone(),
    };
    let pair = HomogeneousPair { f: fd, g: Arc::new(proj.g.clone()), tag: PairTag::Composite };
    let residual = eigen_residual(&pair, r, &x).unwrap_or(f64::INFINITY);
    Ok(RatioDcaRun {
        estimate: EigenPair { lambda: r, x, residual },
        ratios,
        converged,
        inner_capped,
        inner_local: !f1.is_convex(),
    })
}

fn quadratic_inner(l: &Matrix, w: &[f64], q: &[Vec<f64>]) -> Vec<f64> {
    // Minimize yᵀLy - ⟨w, y⟩ over y ∈ span(q).
    let n = w.len();
    let m = q.len();
    let mut a = Matrix::zeros(m, m);
    let lq: Vec<Vec<f64>> = q.iter().map(|v| l.mul_vec(v)).collect();
    for i in 0..m {
        for j in 0..m {
            a[(i, j)] = 2.0 * dot(&q[i], &lq[j]);
        }
    }
    let rhs: Vec<f64> = q.iter().map(|v| dot(v, w)).collect();
    let z = solve(&a, &rhs).or_else(|_| {
        let eps = 1e-12 * a.max_abs().max(1e-300);
        let mut reg = a.clone();
        for i in 0..m {
            reg[(i, i)] += eps;
        }
        solve(&reg, &rhs)
    });
    let z = z.unwrap_or_else(|_| vec![0.0; m]);
    let mut y = vec![0.0; n];
    for (zi, v) in z.iter().zip(q) {
        for k in 0..n {
            y[k] += zi * v[k];
        }
    }
    y
}

/// Start vectors with entries uniform in `[-1, 1]`; start `i` uses seed `seed + i`.
pub fn start_vectors(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
        })
        .collect()
}

/// Best run over `starts`; ties go to the earliest start.
pub fn dinkelbach_multistart(
    f1: &Arc<dyn HomogeneousFn>,
    f2: Option<&Arc<dyn HomogeneousFn>>,
    proj: &SubspaceProjection,
    starts: &[Vec<f64>],
    params: &RatioDcaParams,
) -> Result<RatioDcaRun> {
    let mut best: Option<RatioDcaRun> = None;
    for x0 in starts {
        let run = match dinkelbach_ratiodca(f1, f2, proj, x0, params) {
            Ok(r) => r,
            Err(Error::Invalid(_)) => continue,
            Err(e) => return Err(e),
        };
        if best.as_ref().is_none_or(|b| run.estimate.lambda < b.estimate.lambda) {
            best = Some(run);
        }
    }
    best.ok_or_else(|| Error::Invalid("every start lies in the subspace".into()))
}

#[derive(Debug, Clone)]
pub struct CwReport {
    pub lambda: f64,
    /// Collatz–Wielandt bracket `[min_i r_i, max_i r_i]`.
    pub lower: f64,
    pub upper: f64,
    pub x: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Largest H-eigenvalue of `(C, D)` with `D = diag(d)` of the same order.
pub fn collatz_wielandt_max(c: &SymmetricTensor, d: &[f64], tol: f64, max_iter: usize) -> Result<CwReport> {
    if !c.is_nonnegative() {
        return Err(Error::Invalid("tensor has a negative entry".into()));
    }
    if d.len() != c.dim() {
        return Err(Error::Dimension { expected: c.dim(), got: d.len() });
    }
    cw_iterate(c.order(), d, &|x| c.apply(x), tol, max_iter)
}

/// Perron root of a nonnegative square matrix relative to `diag(d)`.
pub fn collatz_wielandt_matrix(a: &Matrix, d: &[f64], tol: f64, max_iter: usize) -> Result<CwReport> {
    if a.rows() != a.cols() || d.len() != a.rows() {
        return Err(Error::Dimension { expected: a.rows(), got: d.len() });
    }
    if (0..a.rows()).any(|i| a.row(i).iter().any(|&v| v < 0.0)) {
        return Err(Error::Invalid("matrix has a negative entry".into()));
    }
    cw_iterate(2, d, &|x| a.mul_vec(x), tol, max_iter)
}

fn cw_iterate(k: usize, d: &[f64], apply: &dyn Fn(&[f64]) -> Vec<f64>, tol: f64, max_iter: usize) -> Result<CwReport> {
    let n = d.len();
    if d.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::Invalid("diagonal must be positive".into()));
    }
    let e = (k - 1) as i32;
    let ratios = |x: &[f64], cx: &[f64]| -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = cx[i] / (d[i] * x[i].powi(e));
            lo = lo.min(r);
            hi = hi.max(r);
        }
        (lo, hi)
    };
    let mut x = vec![1.0; n];
    let mut cx = apply(&x);
    let (mut lo, mut hi) = ratios(&x, &cx);
    let alpha = hi.max(1e-300);
    let mut it = 0;
    let mut converged = hi - lo <= tol * hi.abs().max(1.0);
    while !converged && it < max_iter {
        it += 1;
        let mut y: Vec<f64> =
            (0..n).map(|i| ((cx[i] + alpha * d[i] * x[i].powi(e)) / d[i]).powf(1.0 / (k - 1) as f64)).collect();
        let m = y.iter().cloned().fold(0.0, f64::max);
        y.iter_mut().for_each(|v| *v /= m);
        x = y;
        cx = apply(&x);
        let (l, h) = ratios(&x, &cx);
        lo = l;
        hi = h;
        converged = hi - lo <= tol * hi.abs().max(1.0);
    }
    let g: f64 = (0..n).map(|i| d[i] * x[i].powi(k as i32)).sum();
    let s = g.powf(1.0 / k as f64);
    let x: Vec<f64> = x.into_iter().map(|v| v / s).collect();
    Ok(CwReport { lambda: 0.5 * (lo + hi), lower: lo, upper: hi, x, iterations: it, converged })
}

#[derive(Debug, Clone)]
pub struct TernaryReport {
    /// Ascending, deduplicated at `1e-9`.
    pub eigenvalues: Vec<f64>,
    /// One witness in `{-1, 0, 1}^n` per eigenvalue.
    pub witnesses: Vec<Vec<i8>>,
    /// `true` when every eigenvalue of the pair has a ternary eigenvector.
    pub exact_domain: bool,
    pub checked: usize,
}

/// Eigenvalues of a piecewise-linear 1-homogeneous pair certified at ternary points.
pub fn ternary_eigen_enumerate(pair: &HomogeneousPair, tol: f64) -> Result<TernaryReport> {
    let n = pair.dim();
    if n > TERNARY_CAP {
        return Err(Error::Cap(format!("ternary enumeration needs n <= {TERNARY_CAP}, got {n}")));
    }
    if pair.degree() != 1.0 || !pair.f.is_piecewise_linear() || !pair.g.is_piecewise_linear() {
        return Err(Error::Invalid("ternary enumeration needs a piecewise-linear 1-homogeneous pair".into()));
    }
    let total = 3usize.pow(n as u32);
    let mut found: Vec<(f64, Vec<i8>)> = Vec::new();
    let mut checked = 0;
    for code in 1..total {
        let mut c = code;
        let mut t = vec![0i8; n];
        for v in t.iter_mut() {
            *v = (c % 3) as i8 - 1;
            c /= 3;
        }
        // x and -x carry the same eigenvalue.
        match t.iter().find(|&&v| v != 0) {
            Some(&v) if v > 0 => {}
            _ => continue,
        }
        let x: Vec<f64> = t.iter().map(|&v| v as f64).collect();
        let Some(lambda) = pair.ratio(&x) else { continue };
        checked += 1;
        if eigen_residual(pair, lambda, &x)? <= tol {
            found.push((lambda, t));
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut eigenvalues: Vec<f64> = Vec::new();
    let mut witnesses = Vec::new();
    for (l, w) in found {
        if eigenvalues.last().is_none_or(|&last| l - last > 1e-9) {
            eigenvalues.push(l);
            witnesses.push(w);
        }
    }
    let exact_domain = matches!(pair.tag, PairTag::PiecewiseLinear);
    Ok(TernaryReport { eigenvalues, witnesses, exact_domain, checked })
}

/// Max of `‖Ax‖_a` over the vertices of the unit ℓ∞ ball.
fn vertex_max(a: &Matrix, ap: f64) -> Result<f64> {
    let n = a.cols();
    if n > 20 {
        return Err(Error::Cap(format!("vertex enumeration needs n <= 20, got {n}")));
    }
    let mut best: f64 = 0.0;
    for mask in 0u32..(1 << n) {
        let x: Vec<f64> = (0..n).map(|i| if mask >> i & 1 == 1 { 1.0 } else { -1.0 }).collect();
        best = best.max(norm_p(&a.mul_vec(&x), ap));
    }
    Ok(best)
}

/// `max ‖Ax‖_a / ‖x‖_b` by multi-start linearized ascent.
pub fn operator_norm_ascent(a: &Matrix, ap: f64, b: f64, starts: usize, seed: u64) -> f64 {
    let at = a.transpose();
    let f = |x: &[f64]| norm_p(&a.mul_vec(x), ap);
    let sub = |x: &[f64]| at.mul_vec(&norm_subgradient(&a.mul_vec(x), ap));
    let ball = NormBall::new(b, 1.0);
    start_vectors(a.cols(), starts, seed)
        .iter()
        .map(|s| linearized_ascent(ball, &f, &sub, s, 10_000).1)
        .fold(0.0, f64::max)
}

/// `max ‖Ax‖_a / ‖x‖_b` by the best exact route available.
fn operator_norm_exact(a: &Matrix, ap: f64, b: f64) -> Result<Option<f64>> {
    if ap == 2.0 && b == 2.0 {
        let ev = symmetric_eigen(&a.transpose().mul(a))?;
        return Ok(Some(ev.values.last().copied().unwrap_or(0.0).max(0.0).sqrt()));
    }
    if b.is_infinite() {
        return Ok(Some(vertex_max(a, ap)?));
    }
    if ap == 1.0 {
        // ‖Ax‖₁ = max_ε ⟨Aᵀε, x⟩ over sign vectors ε.
        return Ok(Some(vertex_max(&a.transpose(), conjugate(b))?));
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct DualityReport {
    /// `max ‖Tx‖_p / ‖x‖_q`.
    pub primal: f64,
    /// `max ‖Tᵀy‖_{q*} / ‖y‖_{p*}`.
    pub dual: f64,
    pub gap: f64,
    pub primal_method: &'static str,
    pub dual_method: &'static str,
}

/// Primal and dual extremal ratios computed by independent routes.
pub fn duality_spectrum_check(t: &Matrix, p: f64, q: f64, seed: u64) -> Result<DualityReport> {
    if !(p >= 1.0) || !(q >= 1.0) {
        return Err(Error::Invalid("exponents must be at least 1".into()));
    }
    let tt = t.transpose();
    let (ps, qs) = (conjugate(p), conjugate(q));
    let (primal, primal_method, dual, dual_method);
    if p == 2.0 && q == 2.0 {
        primal = operator_norm_exact(t, 2.0, 2.0)?.unwrap_or(0.0);
        primal_method = "eigen(TᵀT)";
        dual = operator_norm_exact(&tt, 2.0, 2.0)?.unwrap_or(0.0);
        dual_method = "eigen(TTᵀ)";
    } else if let Some(v) = operator_norm_exact(t, p, q)? {
        primal = v;
        primal_method = "exact";
        dual = operator_norm_ascent(&tt, qs, ps, DEFAULT_STARTS, seed);
        dual_method = "ascent";
    } else if let Some(v) = operator_norm_exact(&tt, qs, ps)? {
        primal = operator_norm_ascent(t, p, q, DEFAULT_STARTS, seed);
        primal_method = "ascent";
        dual = v;
        dual_method = "exact";
    } else {
        primal = operator_norm_ascent(t, p, q, DEFAULT_STARTS, seed);
        primal_method = "ascent";
        dual = operator_norm_ascent(&tt, qs, ps, DEFAULT_STARTS, seed.wrapping_add(1 << 32));
        dual_method = "ascent";
    }
    Ok(DualityReport { primal, dual, gap: (primal - dual).abs(), primal_method, dual_method })
}

#[derive(Debug, Clone)]
pub struct IncidenceReport {
    pub vertex_nonzero: Vec<f64>,
    pub edge_nonzero: Vec<f64>,
    pub gap: f64,
}

fn nonzero_sorted(values: Vec<f64>, scale: f64) -> Vec<f64> {
    let mut v: Vec<f64> = values.into_iter().filter(|l| l.abs() > 1e-9 * scale.max(1.0)).collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

/// Nonzero spectra of `BBᵀ` and `BᵀB`, or of `D^{-1/2}BBᵀD^{-1/2}` and
/// `BᵀD^{-1}B` with `D` the diagonal of `|B||B|ᵀ`.
pub fn incidence_spectra_check(b: &Matrix, normalized: bool) -> Result<IncidenceReport> {
    let bt = b.transpose();
    let (v, e) = if normalized {
        let deg: Vec<f64> = (0..b.rows()).map(|i| b.row(i).iter().map(|x| x.abs()).sum()).collect();
        if deg.iter().any(|&d| d <= 0.0) {
            return Err(Error::Invalid("isolated vertex in normalized incidence check".into()));
        }
        let dis = Matrix::diag(&deg.iter().map(|d| 1.0 / d.sqrt()).collect::<Vec<_>>());
        let di = Matrix::diag(&deg.iter().map(|d| 1.0 / d).collect::<Vec<_>>());
        (dis.mul(b).mul(&bt).mul(&dis), bt.mul(&di).mul(b))
    } else {
        (b.mul(&bt), bt.mul(b))
    };
    let scale = v.max_abs().max(e.max_abs());
    let vn = nonzero_sorted(symmetric_eigen(&v)?.values, scale);
    let en = nonzero_sorted(symmetric_eigen(&e)?.values, scale);
    let gap = if vn.len() != en.len() {
        f64::INFINITY
    } else {
        vn.iter().zip(&en).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    };
    Ok(IncidenceReport { vertex_nonzero: vn, edge_nonzero: en, gap })
}

#[derive(Debug, Clone)]
pub struct DualInnerReport {
    pub primal_min: f64,
    pub dual_min: f64,
    pub primal_max: f64,
    pub dual_max: f64,
    pub gap_min: f64,
    pub gap_max: f64,
}

/// `min_{x∈B} ‖Tx‖_p - x·u` against `-min_{‖y‖_{p*}≤1} h_B(u - Tᵀy)`, and the
/// max variant against `max_{‖y‖_{p*}≤1} h_B(Tᵀy - u)`, with `B` the unit
/// ℓ^q ball and `h_B = ‖·‖_{q*}`.
pub fn dual_inner_problem_check(p: f64, t: &Matrix, u: &[f64], q: f64, seed: u64) -> Result<DualInnerReport> {
    let n = t.cols();
    let m = t.rows();
    if u.len() != n {
        return Err(Error::Dimension { expected: n, got: u.len() });
    }
    let tt = t.transpose();
    let (ps, qs) = (conjugate(p), conjugate(q));
    let phi = |x: &[f64]| norm_p(&t.mul_vec(x), p) - dot(x, u);
    let phi_sub = |x: &[f64]| {
        let mut g = tt.mul_vec(&norm_subgradient(&t.mul_vec(x), p));
        g.iter_mut().zip(u).for_each(|(a, b)| *a -= b);
        g
    };
    let resid = |y: &[f64]| -> Vec<f64> {
        let ty = tt.mul_vec(y);
        u.iter().zip(&ty).map(|(a, b)| a - b).collect()
    };
    let psi = |y: &[f64]| norm_p(&resid(y), qs);
    let psi_sub = |y: &[f64]| t.mul_vec(&norm_subgradient(&resid(y), qs)).into_iter().map(|v| -v).collect::<Vec<_>>();
    let xb = NormBall::new(q, 1.0);
    let yb = NormBall::new(ps, 1.0);
    let primal_min = ellipsoid_minimize(n, xb, &phi, &phi_sub, 200_000, 1e-13).value;
    let dual_min = -ellipsoid_minimize(m, yb, &psi, &psi_sub, 200_000, 1e-13).value;

    let mut primal_max = start_vectors(n, DEFAULT_STARTS, seed)
        .iter()
        .map(|s| linearized_ascent(xb, &phi, &phi_sub, s, 10_000).1)
        .fold(f64::NEG_INFINITY, f64::max);
    if q.is_infinite() && n <= 20 {
        for mask in 0u32..(1 << n) {
            let x: Vec<f64> = (0..n).map(|i| if mask >> i & 1 == 1 { 1.0 } else { -1.0 }).collect();
            primal_max = primal_max.max(phi(&x));
        }
    }
    let chi = |y: &[f64]| psi(&y.iter().map(|v| -v).collect::<Vec<_>>());
    let chi_sub = |y: &[f64]| {
        let neg: Vec<f64> = y.iter().map(|v| -v).collect();
        psi_sub(&neg).into_iter().map(|v| -v).collect::<Vec<_>>()
    };
    let mut dual_max = start_vectors(m, DEFAULT_STARTS, seed.wrapping_add(1 << 32))
        .iter()
        .map(|s| linearized_ascent(yb, &chi, &chi_sub, s, 10_000).1)
        .fold(f64::NEG_INFINITY, f64::max);
    if ps.is_infinite() && m <= 20 {
        for mask in 0u32..(1 << m) {
            let y: Vec<f64> = (0..m).map(|i| if mask >> i & 1 == 1 { 1.0 } else { -1.0 }).collect();
            dual_max = dual_max.max(chi(&y));
        }
    }
    Ok(DualInnerReport {
        primal_min,
        dual_min,
        primal_max,
        dual_max,
        gap_min: (primal_min - dual_min).abs(),
        gap_max: (primal_max - dual_max).abs(),
    })
}

#[derive(Debug, Clone)]
pub struct SecondEigenReport {
    /// `min_{x ∉ Π} F(x) / G_Π(x)`.
    pub projected: f64,
    /// `min F/G` over `{x : ∇G(x) ⊥ Π}`.
    pub constrained: f64,
    /// `min_{y ⊥_G x₁} F(y) / min_t G(y - t x₁)`.
    pub mountain_pass: f64,
    /// `λ_{dim Π + 1}` of the full spectrum.
    pub oracle: f64,
    /// `λ₂` of the full spectrum, the target of the mountain-pass form.
    pub second: f64,
    pub gap: f64,
}

fn restricted_min(l: &Matrix, b: &Matrix, q: &[Vec<f64>]) -> Result<f64> {
    let m = q.len();
    if m == 0 {
        return Err(Error::Invalid("subspace fills the space".into()));
    }
    let qm = Matrix::from_columns(q);
    let qt = qm.transpose();
    let lr = qt.mul(l).mul(&qm).symmetrize();
    let br = qt.mul(b).mul(&qm).symmetrize();
    Ok(generalized_eigen(&lr, &br)?.values[0])
}

/// The three forms of the smallest eigenvalue above `Π` for a quadratic pair.
pub fn second_eigen_characterizations(pair: &HomogeneousPair, basis: &[Vec<f64>]) -> Result<SecondEigenReport> {
    let (l, d) =
        pair.quadratic_matrices().ok_or_else(|| Error::Invalid("exact mode needs a quadratic pair (p = 2)".into()))?;
    let n = l.rows();
    let scale = l.max_abs().max(1.0);
    for b in basis {
        if b.len() != n {
            return Err(Error::Dimension { expected: n, got: b.len() });
        }
        if norm2(&l.mul_vec(b)) > 1e-9 * scale * norm2(b) {
            return Err(Error::Invalid("F does not vanish on the subspace".into()));
        }
    }
    let pi = orthonormalize(basis);
    let k = pi.len();
    let full = quadratic_pair_spectrum(&l, &d)?;
    if k >= n {
        return Err(Error::Invalid("subspace fills the space".into()));
    }
    let oracle = full.values[k];

    // G_Π(x) = xᵀ(D - DP(PᵀDP)⁻¹PᵀD)x.
    let g_pi = |p: &[Vec<f64>]| -> Result<Matrix> {
        if p.is_empty() {
            return Ok(d.clone());
        }
        let pm = Matrix::from_columns(p);
        let dp = d.mul(&pm);
        let ptdp = pm.transpose().mul(&dp);
        let mut corr = Matrix::zeros(n, n);
        for c in 0..n {
            let col = dp.transpose().column(c);
            let z = solve(&ptdp, &col)?;
            let v = dp.mul_vec(&z);
            for r in 0..n {
                corr[(r, c)] = v[r];
            }
        }
        Ok(d.sub(&corr).symmetrize())
    };
    let projected = restricted_min(&l, &g_pi(&pi)?, &orthogonal_complement(&pi, n))?;

    let dpi: Vec<Vec<f64>> = pi.iter().map(|b| d.mul_vec(b)).collect();
    let constrained = restricted_min(&l, &d, &orthogonal_complement(&dpi, n))?;

    let x1 = full.vectors[0].clone();
    let dx1 = vec![d.mul_vec(&x1)];
    let mountain_pass = restricted_min(&l, &g_pi(&[x1])?, &orthogonal_complement(&dx1, n))?;

    let gap = [projected, constrained]
        .iter()
        .map(|v| (v - oracle).abs())
        .fold((mountain_pass - full.values[1]).abs(), f64::max);
    Ok(SecondEigenReport { projected, constrained, mountain_pass, oracle, second: full.values[1], gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfn::SubsetMask;
    use crate::structures::{adjacency_tensor, ChemicalEdge, UniformHypergraph};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn p3_normalized_laplacian_spectrum() {
        let g = WeightedGraph::path(3);
        let e = quadratic_pair_spectrum(&g.laplacian(), &g.degree_matrix()).unwrap();
        for (v, t) in e.values.iter().zip([0.0, 1.0, 2.0]) {
            assert!(close(*v, t, 1e-12), "{:?}", e.values);
        }
        let e = quadratic_pair_spectrum(&Matrix::identity(4), &Matrix::identity(4)).unwrap();
        assert!(e.values.iter().all(|v| close(*v, 1.0, 1e-14)));
        let e = quadratic_pair_spectrum(&g.adjacency(), &Matrix::identity(3)).unwrap();
        let s = 2f64.sqrt();
        for (v, t) in e.values.iter().zip([-s, 0.0, s]) {
            assert!(close(*v, t, 1e-12));
        }
        assert!(quadratic_pair_spectrum(&g.adjacency(), &g.adjacency()).is_err());
    }

    #[test]
    fn residual_of_quadratic_eigenvector() {
        let g = WeightedGraph::cycle(5);
        let pair = HomogeneousPair::graph_p_laplacian(&g, 2.0, true).unwrap();
        let (l, d) = pair.quadratic_matrices().unwrap();
        let e = quadratic_pair_spectrum(&l, &d).unwrap();
        for k in 0..5 {
            assert!(eigen_residual(&pair, e.values[k], &e.vectors[k]).unwrap() <= 1e-10);
        }
        let x = [0.3, -0.1, 0.8, 0.2, -0.5];
        let r = pair.ratio(&x).unwrap();
        assert!(eigen_residual(&pair, r, &x).unwrap() > 1e-3);
        assert!(eigen_residual(&pair, r, &[0.0; 5]).is_err());
    }

    #[test]
    fn k5_one_laplacian_ternary() {
        let pair = HomogeneousPair::graph_p_laplacian(&WeightedGraph::complete(5), 1.0, true).unwrap();
        let rep = ternary_eigen_enumerate(&pair, RESIDUAL_TOL).unwrap();
        assert_eq!(rep.eigenvalues.len(), 3, "{:?}", rep.eigenvalues);
        for (v, t) in rep.eigenvalues.iter().zip([0.0, 0.75, 1.0]) {
            assert!(close(*v, t, 1e-12));
        }
        assert!(rep.exact_domain);
        // 1_{12} - 1_{345} has ratio 12/20, which is not an eigenvalue.
        let x = [1.0, 1.0, -1.0, -1.0, -1.0];
        assert!(eigen_residual(&pair, 0.6, &x).unwrap() > 1e-3);
    }

    #[test]
    fn single_edge_ternary() {
        let g = WeightedGraph::path(2);
        let pair = HomogeneousPair::graph_p_laplacian(&g, 1.0, true).unwrap();
        let rep = ternary_eigen_enumerate(&pair, RESIDUAL_TOL).unwrap();
        assert_eq!(rep.eigenvalues, vec![0.0, 1.0]);
        assert_eq!(rep.checked, 4);
    }

    #[test]
    fn even_cycle_signless_matches() {
        let g = WeightedGraph::cycle(6);
        let a = ternary_eigen_enumerate(&HomogeneousPair::graph_p_laplacian(&g, 1.0, true).unwrap(), 1e-9).unwrap();
        let b = ternary_eigen_enumerate(&HomogeneousPair::signless_p_laplacian(&g, 1.0, true).unwrap(), 1e-9).unwrap();
        assert_eq!(a.eigenvalues.len(), b.eigenvalues.len());
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert!(close(*x, *y, 1e-12));
        }
        let c3 = WeightedGraph::cycle(3);
        let a = ternary_eigen_enumerate(&HomogeneousPair::graph_p_laplacian(&c3, 1.0, true).unwrap(), 1e-9).unwrap();
        let b = ternary_eigen_enumerate(&HomogeneousPair::signless_p_laplacian(&c3, 1.0, true).unwrap(), 1e-9).unwrap();
        assert_ne!(a.eigenvalues, b.eigenvalues);
    }

    #[test]
    fn ternary_cap() {
        let pair = HomogeneousPair::graph_p_laplacian(&WeightedGraph::path(9), 1.0, true).unwrap();
        assert!(matches!(ternary_eigen_enumerate(&pair, 1e-9), Err(Error::Cap(_))));
    }

    #[test]
    fn euler_identity_on_smooth_points() {
        let x = [0.31, -0.72, 0.15, 0.94];
        let g = WeightedGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5), (0, 3, 1.5)]).unwrap();
        for p in [1.0, 1.5, 2.0, 3.0] {
            let pair = HomogeneousPair::graph_p_laplacian(&g, p, true).unwrap();
            let tol = 1e-9 * pair.f.eval(&x).max(1.0);
            assert!(euler_gap(pair.f.as_ref(), &x).unwrap() <= tol);
            assert!(euler_gap(pair.g.as_ref(), &x).unwrap() <= tol);
        }
        let h = ChemicalHypergraph::new(
            4,
            vec![
                ChemicalEdge { input: SubsetMask::from_indices(&[0, 1]), output: SubsetMask::from_indices(&[2]) },
                ChemicalEdge { input: SubsetMask::from_indices(&[3]), output: SubsetMask::from_indices(&[0, 2]) },
            ],
        )
        .unwrap();
        for p in [1.0, 2.0, 2.5] {
            let f = ChemicalEnergy::new(h.clone(), p).unwrap();
            assert!(euler_gap(&f, &x).unwrap() <= 1e-9 * f.eval(&x).max(1.0));
        }
        let hg = UniformHypergraph::new(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let t = TensorForm::new(adjacency_tensor(&hg).unwrap());
        assert!(euler_gap(&t, &x).unwrap() <= 1e-12);
    }

    #[test]
    fn homogeneity_spot_check() {
        let x = [0.4, -1.1, 0.7];
        let g = WeightedGraph::complete(3);
        for p in [1.0, 1.7, 2.0] {
            let pair = HomogeneousPair::signless_p_laplacian(&g, p, true).unwrap();
            let t = 2.5;
            let tx: Vec<f64> = x.iter().map(|v| t * v).collect();
            assert!(close(pair.f.eval(&tx), t.powf(p) * pair.f.eval(&x), 1e-12));
            assert!(close(pair.g.eval(&tx), t.powf(p) * pair.g.eval(&x), 1e-12));
        }
    }

    #[test]
    fn g_pi_projection_forms() {
        let w = [1.0, 2.0, 3.0, 2.0];
        let v = [1.0; 4];
        let x = [0.5, -1.0, 2.0, 0.0];
        let (_, t) = g_pi_projection(&w, 2.0, &v, &x);
        let mean = (0.5 - 2.0 + 6.0 + 0.0) / 8.0;
        assert!(close(t, mean, 1e-15));
        let (_, t) = g_pi_projection(&w, 1.0, &v, &x);
        // sorted values -1 (2), 0 (2), 0.5 (1), 2 (3): total 8, half reached at 0.
        assert!(close(t, 0.0, 1e-15) || (0.0..=0.5).contains(&t));
        let (_, t) = g_pi_projection(&[1.0, 1.0, 5.0], 1.0, &[1.0; 3], &[3.0, -2.0, 7.0]);
        assert_eq!(t, 7.0);
        let y = [1.0, -1.0, 2.0, -2.0];
        let (_, t) = g_pi_projection(&[1.0; 4], 2.0, &v, &y);
        assert_eq!(t, 0.0);
        let (val, t) = g_pi_projection(&[1.0; 4], 3.0, &v, &y);
        assert!(t.abs() < 1e-12);
        assert!(close(val, 18.0, 1e-9));
        let (val3, t3) = g_pi_projection(&w, 3.0, &v, &x);
        for dt in [-1e-4, 1e-4] {
            let shifted: f64 = w.iter().zip(&x).map(|(w, a)| w * (a - t3 - dt).abs().powi(3)).sum();
            assert!(shifted >= val3 - 1e-12);
        }
    }

    #[test]
    fn subspace_projection_two_components() {
        let g = WeightedPower::new(vec![1.0, 2.0, 1.0, 3.0], 1.0).unwrap();
        let basis = vec![vec![1.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 1.0]];
        let pr = SubspaceProjection::new(g, basis).unwrap();
        let x = [4.0, 1.0, -2.0, 5.0];
        let y = pr.shift(&x);
        // Weighted medians: 1 on the first block, 5 on the second.
        assert_eq!(y, vec![3.0, 0.0, -7.0, 0.0]);
        assert!(pr.value(&x) <= pr.g.eval(&x));
    }

    #[test]
    fn dinkelbach_quadratic_matches_lambda2() {
        let g = WeightedGraph::from_edges(
            6,
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (2, 3, 0.5), (3, 4, 1.0), (4, 5, 1.0), (5, 3, 1.0)],
        )
        .unwrap();
        let pair = HomogeneousPair::graph_p_laplacian(&g, 2.0, true).unwrap();
        let (l, d) = pair.quadratic_matrices().unwrap();
        let lambda2 = quadratic_pair_spectrum(&l, &d).unwrap().values[1];
        let proj = SubspaceProjection::constants(WeightedPower::new(g.degrees(), 2.0).unwrap());
        let params = RatioDcaParams { scheme: InnerScheme::Free, max_iter: 5000, ..Default::default() };
        let run = dinkelbach_multistart(&pair.f, None, &proj, &start_vectors(6, 16, DEFAULT_SEED), &params).unwrap();
        assert!(close(run.estimate.lambda, lambda2, 1e-6), "{} vs {}", run.estimate.lambda, lambda2);
        assert!(run.ratios.windows(2).all(|w| w[1] < w[0]));
        let ball = RatioDcaParams { scheme: InnerScheme::Ball, max_iter: 300, ..Default::default() };
        let run = dinkelbach_ratiodca(&pair.f, None, &proj, &start_vectors(6, 1, 7)[0], &ball).unwrap();
        assert!(run.ratios.windows(2).all(|w| w[1] <= w[0]));
        assert!(close(run.estimate.lambda, lambda2, 1e-5), "{} vs {}", run.estimate.lambda, lambda2);
    }

    #[test]
    fn dinkelbach_c4_and_fixpoint() {
        let g = WeightedGraph::cycle(4);
        let pair = HomogeneousPair::graph_p_laplacian(&g, 2.0, true).unwrap();
        let proj = SubspaceProjection::constants(WeightedPower::new(g.degrees(), 2.0).unwrap());
        let params = RatioDcaParams { scheme: InnerScheme::Free, ..Default::default() };
        let run = dinkelbach_multistart(&pair.f, None, &proj, &start_vectors(4, 8, 1), &params).unwrap();
        assert!(close(run.estimate.lambda, 1.0, 1e-9));
        let x0 = [1.0, 0.0, -1.0, 0.0];
        let run = dinkelbach_ratiodca(&pair.f, None, &proj, &x0, &params).unwrap();
        assert_eq!(run.ratios.len(), 1);
        assert!(close(run.estimate.lambda, 1.0, 1e-12));
        assert!(run.estimate.residual < 1e-9);
        assert!(dinkelbach_ratiodca(&pair.f, None, &proj, &[2.0; 4], &params).is_err());
    }

    #[test]
    fn collatz_wielandt_examples() {
        let p3 = WeightedGraph::path(3).adjacency();
        let r = collatz_wielandt_matrix(&p3, &[1.0; 3], 1e-13, 100_000).unwrap();
        assert!(r.converged);
        assert!(close(r.lambda, 2f64.sqrt(), 1e-10));
        assert!(r.lower <= 2f64.sqrt() + 1e-12 && r.upper >= 2f64.sqrt() - 1e-12);
        let sw = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let r = collatz_wielandt_matrix(&sw, &[1.0; 2], 1e-13, 1000).unwrap();
        assert!(close(r.lambda, 1.0, 1e-12));
        let h = UniformHypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let r = collatz_wielandt_max(&adjacency_tensor(&h).unwrap(), &[1.0; 3], 1e-13, 1000).unwrap();
        assert!(close(r.lambda, 2.0, 1e-12));
        let c = 3f64.powf(-1.0 / 3.0);
        assert!(r.x.iter().all(|v| close(*v, c, 1e-12)));
        let neg = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        assert!(collatz_wielandt_matrix(&neg, &[1.0; 2], 1e-12, 10).is_err());
    }

    fn sample_matrix(seed: u64, r: usize, c: usize) -> Matrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Matrix::from_rows(&(0..r).map(|_| (0..c).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn duality_examples() {
        let t = sample_matrix(3, 3, 3);
        let r = duality_spectrum_check(&t, 2.0, 2.0, 42).unwrap();
        assert!(r.gap < 1e-12);
        let asc = operator_norm_ascent(&t, 2.0, 2.0, 16, 42);
        assert!(close(asc, r.primal, 1e-9));
        let r = duality_spectrum_check(&t, 2.0, f64::INFINITY, 42).unwrap();
        assert_eq!(r.primal_method, "exact");
        assert!(r.gap < 1e-6, "{r:?}");
        let r = duality_spectrum_check(&sample_matrix(5, 3, 4), 1.0, 2.0, 42).unwrap();
        assert_eq!(r.primal_method, "exact");
        assert_eq!(r.dual_method, "ascent");
        assert!(r.gap < 1e-6, "{r:?}");
    }

    #[test]
    fn incidence_spectra() {
        let g =
            WeightedGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0), (0, 2, 1.0)]).unwrap();
        let b = g.incidence();
        let rep = incidence_spectra_check(&b, false).unwrap();
        assert!(rep.gap < 1e-9);
        let lap = eigenvalues(&g.laplacian());
        let nz: Vec<f64> = lap.into_iter().filter(|v| *v > 1e-9).collect();
        for (a, b) in nz.iter().zip(&rep.vertex_nonzero) {
            assert!(close(*a, *b, 1e-9));
        }
        assert!(incidence_spectra_check(&b, true).unwrap().gap < 1e-9);
    }

    fn eigenvalues(m: &Matrix) -> Vec<f64> {
        symmetric_eigen(m).unwrap().values
    }

    #[test]
    fn dual_inner_examples() {
        let r = dual_inner_problem_check(1.0, &Matrix::identity(3), &[0.0; 3], 2.0, 42).unwrap();
        assert!(r.primal_min.abs() < 1e-9 && r.dual_min.abs() < 1e-9, "{r:?}");
        let t = sample_matrix(11, 3, 3);
        let u = [0.4, -0.3, 0.9];
        let r = dual_inner_problem_check(2.0, &t, &u, 2.0, 42).unwrap();
        assert!(r.gap_min <= 1e-6 && r.gap_max <= 1e-6, "{r:?}");
        // Sphere sampling brackets both sides.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for _ in 0..20000 {
            let mut x: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let s = norm2(&x).max(1.0);
            x.iter_mut().for_each(|v| *v /= s);
            let v = norm2(&t.mul_vec(&x)) - dot(&x, &u);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        assert!(r.primal_min <= lo + 1e-9 && lo - r.primal_min < 1e-2);
        assert!(r.primal_max >= hi - 1e-9 && r.primal_max - hi < 1e-2);
        let r = dual_inner_problem_check(1.0, &t, &u, f64::INFINITY, 42).unwrap();
        assert!(r.gap_min <= 1e-6 && r.gap_max <= 1e-6, "{r:?}");
    }

    #[test]
    fn second_eigen_forms() {
        let g = WeightedGraph::from_edges(5, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (3, 4, 2.0)]).unwrap();
        let pair = HomogeneousPair::graph_p_laplacian(&g, 2.0, true).unwrap();
        let basis = vec![vec![1.0, 1.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, 1.0, 1.0]];
        let r = second_eigen_characterizations(&pair, &basis).unwrap();
        let (l, d) = pair.quadratic_matrices().unwrap();
        let full = quadratic_pair_spectrum(&l, &d).unwrap();
        assert!(close(r.projected, full.values[2], 1e-9) && close(r.constrained, full.values[2], 1e-9));
        assert!(r.gap < 1e-9, "{r:?}");
        let g = WeightedGraph::path(5);
        let pair = HomogeneousPair::graph_p_laplacian(&g, 2.0, true).unwrap();
        let r = second_eigen_characterizations(&pair, &[vec![1.0; 5]]).unwrap();
        assert!(close(r.projected, r.second, 1e-9) && close(r.mountain_pass, r.second, 1e-9));
        assert!(second_eigen_characterizations(&pair, &[vec![1.0, 0.0, 0.0, 0.0, 0.0]]).is_err());
    }

    #[test]
    fn odd_linear_bijection_invariance() {
        let g = WeightedGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap();
        let pair = HomogeneousPair::graph_p_laplacian(&g, 2.0, true).unwrap();
        let m = Matrix::from_rows(&[
            vec![1.0, 0.5, 0.0, 0.0],
            vec![0.0, 1.0, -0.3, 0.0],
            vec![0.2, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.4, 2.0],
        ]);
        let composed = pair.compose(&m).unwrap();
        let (a, b) = pair.quadratic_matrices().unwrap();
        let (ca, cb) = composed.quadratic_matrices().unwrap();
        let e1 = quadratic_pair_spectrum(&a, &b).unwrap().values;
        let e2 = quadratic_pair_spectrum(&ca, &cb).unwrap().values;
        for (x, y) in e1.iter().zip(&e2) {
            assert!(close(*x, *y, 1e-9));
        }
        let one = HomogeneousPair::graph_p_laplacian(&WeightedGraph::complete(4), 1.0, true).unwrap();
        let mut sp = Matrix::zeros(4, 4);
        sp[(0, 2)] = -1.0;
        sp[(1, 0)] = 1.0;
        sp[(2, 3)] = 1.0;
        sp[(3, 1)] = -1.0;
        let a = ternary_eigen_enumerate(&one, 1e-9).unwrap();
        let b = ternary_eigen_enumerate(&one.compose(&sp).unwrap(), 1e-9).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert!(!b.exact_domain);
    }

    #[test]
    fn chemical_graph_case_matches_one_laplacian() {
        let g = WeightedGraph::complete(4);
        let h = ChemicalHypergraph::from_graph(&g).unwrap();
        let a = ternary_eigen_enumerate(&HomogeneousPair::chemical_p_laplacian(&h, 1.0).unwrap(), 1e-9).unwrap();
        let b = ternary_eigen_enumerate(&HomogeneousPair::graph_p_laplacian(&g, 1.0, true).unwrap(), 1e-9).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
    }
}
