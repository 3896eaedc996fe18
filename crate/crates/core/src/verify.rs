//! Brute-force verification of the discrete/continuous equalities and the
//! spectral inequalities on seeded random instances.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constants::{
    cheeger, chemical_cheeger, hypergraph_independence_clique, hypergraph_lagrangian, independence_clique,
    k_way_cheeger, maxcut, motzkin_straus, nodal_domains,
};
use crate::error::{Error, Result};
use crate::extend::{lovasz, multilinear, multiple_integral};
use crate::linalg::{generalized_eigen, symmetric_eigen, Matrix};
use crate::lp::{self, solve_matrix_game, LinearProgram};
use crate::scalar::{ratio, Rational, Scalar};
use crate::setfn::{
    is_chain, modularity_check, submodularity_check, supermodularity_check, DisjointPair, DisjointPairFunction,
    SetTupleFunction, SubsetMask,
};
use crate::spectra::{
    collatz_wielandt_matrix, dinkelbach_multistart, duality_spectrum_check, incidence_spectra_check, start_vectors,
    ternary_eigen_enumerate, ChemicalEnergy, HomogeneousFn, HomogeneousPair, RatioDcaParams, SubspaceProjection,
    WeightedPower, RESIDUAL_TOL,
};
use crate::structures::{
    adjacency_tensor, anti_signed_graph, balanced_components, boundary_matrix, huang_signing, hypercube, ChemicalEdge,
    ChemicalHypergraph, SignedGraph, SimplicialComplex, UniformHypergraph, WeightedGraph,
};

pub const EXACT_TOL: f64 = 1e-9;
pub const ITER_TOL: f64 = 1e-6;
pub const SLACK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

/// How `lhs` is compared with `rhs`. `Lt` is strict: it passes when
/// `lhs < rhs - tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub anchor: String,
    pub instance: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub gap: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub details: BTreeMap<String, f64>,
    /// Wall time in seconds; excluded from serialized output.
    #[serde(skip)]
    pub runtime: f64,
}

fn relation_gap(lhs: f64, rel: Relation, rhs: f64) -> f64 {
    if lhs.is_nan() || rhs.is_nan() {
        return f64::INFINITY;
    }
    if lhs == rhs {
        return 0.0;
    }
    match rel {
        Relation::Eq => (lhs - rhs).abs(),
        Relation::Le | Relation::Lt => (lhs - rhs).max(0.0),
        Relation::Ge => (rhs - lhs).max(0.0),
    }
}

impl VerificationReport {
    pub fn compare(
        id: impl Into<String>,
        anchor: &str,
        instance: impl Into<String>,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        let gap = relation_gap(lhs, relation, rhs);
        Self::with_gap(id, anchor, instance, lhs, relation, rhs, gap, tolerance)
    }

    /// Like [`compare`](Self::compare) with a caller-supplied gap, for
    /// checks made of several conditions.
    #[allow(clippy::too_many_arguments)]
    pub fn with_gap(
        id: impl Into<String>,
        anchor: &str,
        instance: impl Into<String>,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        gap: f64,
        tolerance: f64,
    ) -> Self {
        let gap = if gap.is_nan() { f64::INFINITY } else { gap };
        let pass = match relation {
            Relation::Lt => lhs < rhs - tolerance && gap <= tolerance,
            _ => gap <= tolerance,
        };
        VerificationReport {
            id: id.into(),
            anchor: anchor.to_string(),
            instance: instance.into(),
            lhs,
            rhs,
            relation,
            gap,
            tolerance,
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            details: BTreeMap::new(),
            runtime: 0.0,
        }
    }

    pub fn skipped(id: impl Into<String>, anchor: &str, instance: impl Into<String>, reason: &str) -> Self {
        let mut r = Self::compare(id, anchor, instance, f64::NAN, Relation::Eq, f64::NAN, 0.0);
        r.gap = 0.0;
        r.verdict = Verdict::Skip;
        r.instance = format!("{} ({reason})", r.instance);
        r
    }

    pub fn detail(mut self, key: &str, v: f64) -> Self {
        self.details.insert(key.to_string(), v);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn timed(start: Instant, mut r: VerificationReport) -> VerificationReport {
    r.runtime = start.elapsed().as_secs_f64();
    r
}

// ---------------------------------------------------------------------------
// Generators

pub fn seeded_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// `G(n, p)` with unit weights.
pub fn erdos_renyi(n: usize, p: f64, rng: &mut impl Rng) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j, 1.0).expect("valid edge");
            }
        }
    }
    g
}

/// `G(n, p)` conditioned on connectivity; after 100 rejections the
/// components are chained together.
pub fn connected_erdos_renyi(n: usize, p: f64, rng: &mut impl Rng) -> WeightedGraph {
    let mut g = erdos_renyi(n, p, rng);
    for _ in 0..100 {
        if g.is_connected() {
            return g;
        }
        g = erdos_renyi(n, p, rng);
    }
    let comps = g.components();
    for w in comps.windows(2) {
        g.add_edge(w[0][0], w[1][0], 1.0).expect("valid edge");
    }
    g
}

/// Random bipartite graph on a random nonempty bipartition.
pub fn random_bipartite(n: usize, p: f64, rng: &mut impl Rng) -> WeightedGraph {
    let mut side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    if n >= 2 && side.iter().all(|s| *s == side[0]) {
        side[0] = !side[0];
    }
    let mut g = WeightedGraph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if side[i] != side[j] && rng.gen_bool(p) {
                g.add_edge(i, j, 1.0).expect("valid edge");
            }
        }
    }
    g
}

fn has_isolated(g: &WeightedGraph) -> bool {
    g.degrees().contains(&0.0)
}

/// Graph with no isolated vertex; bipartite when `bipartite` is set.
pub fn random_graph_without_isolated(n: usize, bipartite: bool, rng: &mut impl Rng) -> WeightedGraph {
    loop {
        let g = if bipartite { random_bipartite(n, 0.6, rng) } else { erdos_renyi(n, 0.5, rng) };
        if !has_isolated(&g) {
            return g;
        }
    }
}

/// Random clique complex fragment: `G(n, 1/2)` plus each triangle with probability 1/2.
pub fn random_two_complex(n: usize, rng: &mut impl Rng) -> SimplicialComplex {
    let g = erdos_renyi(n, 0.5, rng);
    let mut tris = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if g.weight(a, b) != 0.0 && g.weight(b, c) != 0.0 && g.weight(a, c) != 0.0 && rng.gen_bool(0.5) {
                    tris.push([a, b, c]);
                }
            }
        }
    }
    SimplicialComplex::from_graph(&g, &tris).expect("valid complex")
}

/// Chemical hypergraph with `m` edges of size 2..=4 and a connected underlying graph.
pub fn random_chemical_hypergraph(n: usize, m: usize, rng: &mut impl Rng) -> ChemicalHypergraph {
    let mut verts: Vec<usize> = (0..n).collect();
    loop {
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let s = rng.gen_range(2..=4.min(n));
            verts.shuffle(rng);
            let chosen = &verts[..s];
            let e = if rng.gen_bool(0.3) {
                let all = SubsetMask::from_indices(chosen);
                ChemicalEdge { input: all, output: all }
            } else {
                let a = rng.gen_range(1..s);
                ChemicalEdge {
                    input: SubsetMask::from_indices(&chosen[..a]),
                    output: SubsetMask::from_indices(&chosen[a..]),
                }
            };
            edges.push(e);
        }
        if let Ok(h) = ChemicalHypergraph::new(n, edges) {
            if h.underlying_graph().is_connected() {
                return h;
            }
        }
    }
}

/// Random rational table vanishing on tuples with an empty component.
pub fn random_rational_function(n: usize, k: usize, rng: &mut impl Rng) -> Result<SetTupleFunction<Rational>> {
    SetTupleFunction::tabulate(n, k, |t| {
        if t.iter().any(|a| a.is_empty()) {
            Rational::zero()
        } else {
            ratio(rng.gen_range(-20..=20), rng.gen_range(1..=6))
        }
    })
}

fn describe_graph(g: &WeightedGraph) -> String {
    format!("graph n={} m={}", g.n(), g.num_edges())
}

fn indicator(a: SubsetMask, n: usize) -> Vec<f64> {
    (0..n).map(|i| if a.contains(i) { 1.0 } else { 0.0 }).collect()
}

fn tol_rel(v: f64, t: f64) -> f64 {
    t * (1.0 + v.abs())
}

// ---------------------------------------------------------------------------
// Equalities between discrete and continuous extrema

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairFamily {
    /// Tuples totally ordered by inclusion.
    Chain,
    /// All tuples of nonempty sets.
    AllNonempty,
    /// `(A, ..., A)`.
    Diagonal,
}

fn in_family(t: &[SubsetMask], fam: PairFamily) -> bool {
    if t.iter().any(|a| a.is_empty()) {
        return false;
    }
    match fam {
        PairFamily::Chain => is_chain(t),
        PairFamily::AllNonempty => true,
        PairFamily::Diagonal => t.iter().all(|a| *a == t[0]),
    }
}

struct Extrema {
    max: f64,
    argmax: Vec<SubsetMask>,
    min: f64,
    argmin: Vec<SubsetMask>,
}

fn discrete_extrema(f: &SetTupleFunction<f64>, g: &SetTupleFunction<f64>, fam: PairFamily) -> Result<Extrema> {
    let (n, k) = (f.n(), f.k());
    if n * k > 16 {
        return Err(Error::Cap(format!("family enumeration needs n*k <= 16, got {}", n * k)));
    }
    let mut ex = Extrema { max: f64::NEG_INFINITY, argmax: vec![], min: f64::INFINITY, argmin: vec![] };
    for idx in 0..1usize << (n * k) {
        let t = f.tuple_of(idx);
        if !in_family(&t, fam) {
            continue;
        }
        let gv = g.get(&t);
        if gv <= 0.0 {
            return Err(Error::Invalid(format!("denominator is not positive at {t:?}")));
        }
        let r = f.get(&t) / gv;
        if r > ex.max {
            ex.max = r;
            ex.argmax = t.clone();
        }
        if r < ex.min {
            ex.min = r;
            ex.argmin = t;
        }
    }
    Ok(ex)
}

fn sample_tuple(n: usize, k: usize, fam: PairFamily, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let free_block = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        loop {
            let x: Vec<f64> = (0..n).map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..1.0) }).collect();
            if x.iter().any(|v| *v > 0.0) {
                return x;
            }
        }
    };
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    match fam {
        PairFamily::Chain => {
            let u: Vec<f64> = (0..n).map(|_| local.gen_range(0.0..1.0)).collect();
            let top = u.iter().cloned().fold(0.0, f64::max);
            (0..k)
                .map(|_| {
                    let c = local.gen_range(0.0..0.9) * top;
                    let e = local.gen_range(0.5..2.0);
                    let s = local.gen_range(0.2..3.0);
                    u.iter().map(|v| s * (v - c).max(0.0).powf(e)).collect()
                })
                .collect()
        }
        PairFamily::AllNonempty => (0..k).map(|_| free_block(&mut local)).collect(),
        PairFamily::Diagonal => {
            let x = free_block(&mut local);
            vec![x; k]
        }
    }
}

fn continuous_ratio(f: &SetTupleFunction<f64>, g: &SetTupleFunction<f64>, xs: &[Vec<f64>]) -> Result<Option<f64>> {
    let gv = multilinear(g, xs)?;
    if gv <= 1e-14 {
        return Ok(None);
    }
    Ok(Some(multilinear(f, xs)? / gv))
}

/// Compares discrete extrema of `f/g` over `family` with the extrema of
/// `f^M/g^M` over the matching continuous domain. For `Diagonal` the check
/// is the sandwich `discrete diagonal max <= continuous sup <= chain max`.
pub fn check_indicator_and_equalities(
    id: &str,
    f: &SetTupleFunction<f64>,
    g: &SetTupleFunction<f64>,
    family: PairFamily,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if f.n() != g.n() || f.k() != g.k() {
        return Err(Error::Dimension { expected: f.n() * f.k(), got: g.n() * g.k() });
    }
    let (n, k) = (f.n(), f.k());
    let ex = discrete_extrema(f, g, family)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sup = f64::NEG_INFINITY;
    let mut inf = f64::INFINITY;
    for w in [&ex.argmax, &ex.argmin] {
        let xs: Vec<Vec<f64>> = w.iter().map(|a| indicator(*a, n)).collect();
        if let Some(r) = continuous_ratio(f, g, &xs)? {
            sup = sup.max(r);
            inf = inf.min(r);
        }
    }
    for _ in 0..samples {
        let xs = sample_tuple(n, k, family, &mut rng);
        if let Some(r) = continuous_ratio(f, g, &xs)? {
            sup = sup.max(r);
            inf = inf.min(r);
        }
    }
    let instance = format!("n={n} k={k} family={family:?} samples={samples}");
    let report = if family == PairFamily::Diagonal {
        let chain = discrete_extrema(f, g, PairFamily::Chain)?;
        let gap = (ex.max - chain.max).max(0.0).max(sup - chain.max).max(chain.min - inf).max(ex.max - sup);
        VerificationReport::with_gap(
            id,
            "diagonal sandwich between indicator and chain extrema",
            instance,
            sup,
            Relation::Le,
            chain.max,
            gap.max(0.0),
            tol_rel(chain.max, EXACT_TOL),
        )
        .detail("discrete_diagonal_max", ex.max)
        .detail("chain_max", chain.max)
        .detail("chain_min", chain.min)
        .detail("continuous_min", inf)
    } else {
        let gap = (ex.max - sup).abs().max((ex.min - inf).abs());
        VerificationReport::with_gap(
            id,
            "discrete extrema equal continuous extrema",
            instance,
            ex.max,
            Relation::Eq,
            sup,
            gap,
            tol_rel(ex.max.abs().max(ex.min.abs()), EXACT_TOL),
        )
        .detail("discrete_min", ex.min)
        .detail("continuous_min", inf)
    };
    Ok(timed(start, report))
}

/// `max_A 2e(A)/#A <= λ_max(W) <= max degree`, with `λ_max` from a dense
/// eigensolver.
pub fn check_spectral_radius(id: &str, g: &WeightedGraph) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = g.n();
    if n > 20 {
        return Err(Error::Cap(format!("subset enumeration needs n <= 20, got {n}")));
    }
    let mut avg = 0.0f64;
    for m in 1u32..1 << n {
        let a = SubsetMask(m);
        avg = avg.max(g.e_between(a, a) / a.len() as f64);
    }
    let lam = *symmetric_eigen(&g.adjacency())?.values.last().unwrap_or(&0.0);
    let maxdeg = g.degrees().into_iter().fold(0.0, f64::max);
    let gap = (avg - lam).max(0.0) + (lam - maxdeg).max(0.0);
    let r = VerificationReport::with_gap(
        id,
        "spectral radius between average and maximum degree",
        describe_graph(g),
        avg,
        Relation::Le,
        lam,
        gap,
        EXACT_TOL,
    )
    .detail("max_degree", maxdeg);
    Ok(timed(start, r))
}

/// The maxcut continuous form never exceeds the maximum cut and attains it
/// at the optimal side.
pub fn check_maxcut(id: &str, g: &WeightedGraph, samples: usize, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let rep = maxcut(g, samples, seed)?;
    let gap = (rep.witness_value - rep.value).abs().max((rep.sample_max - rep.value).max(0.0));
    let r = VerificationReport::with_gap(
        id,
        "maxcut equals its continuous form",
        describe_graph(g),
        rep.value,
        Relation::Eq,
        rep.witness_value,
        gap,
        EXACT_TOL,
    )
    .detail("sample_max", rep.sample_max);
    Ok(timed(start, r))
}

// ---------------------------------------------------------------------------
// Minimax and saddle points

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `V = C_0 ⊋ C_1 ⊋ ... ⊋ C_{n-1}` removing `perm[0], perm[1], ...`.
fn maximal_chain(perm: &[usize]) -> Vec<SubsetMask> {
    (0..perm.len()).map(|i| SubsetMask::from_indices(&perm[i..])).collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    /// `inf_x sup_y`.
    MinMax,
    /// `sup_y inf_x`.
    MaxMin,
}

/// `min_s max_rows` (or `max_s min_rows`) of `Σ_i s_i (a_i - t b_i)` over the simplex.
/// With `s_0 = 1 - Σ_{i>0} s_i` and a shifted objective the origin is a
/// feasible basis, so no phase one is needed.
fn simplex_lp(a: &[Vec<f64>], b: &[Vec<f64>], t: f64, side: Side) -> Result<f64> {
    let m = a[0].len();
    let c: Vec<Vec<f64>> =
        a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - t * y).collect()).collect();
    let big = 1.0 + c.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let sign = if side == Side::MinMax { 1.0 } else { -1.0 };
    let mut prog = LinearProgram::new(m);
    let mut obj = vec![0.0; m];
    obj[m - 1] = 1.0;
    prog.maximize(&obj);
    for row in &c {
        let mut coeffs: Vec<f64> = row[1..].iter().map(|v| sign * (v - row[0])).collect();
        coeffs.push(1.0);
        prog.constrain(&coeffs, lp::Relation::Le, big - sign * row[0]);
    }
    let mut ones = vec![1.0; m];
    ones[m - 1] = 0.0;
    prog.constrain(&ones, lp::Relation::Le, 1.0);
    let w = prog.solve()?.value;
    Ok(sign * (big - w))
}

struct Table2 {
    n: usize,
    f: Vec<f64>,
    g: Vec<f64>,
}

impl Table2 {
    fn new(f: &SetTupleFunction<f64>, g: &SetTupleFunction<f64>) -> Result<Self> {
        if f.k() != 2 || g.k() != 2 {
            return Err(Error::Arity { expected: 2, got: f.k().max(g.k()) });
        }
        if f.n() != g.n() {
            return Err(Error::Dimension { expected: f.n(), got: g.n() });
        }
        let n = f.n();
        if n > 6 {
            return Err(Error::Cap(format!("minimax over maximal chains needs n <= 6, got {n}")));
        }
        let size = 1usize << (2 * n);
        let mut tf = vec![0.0; size];
        let mut tg = vec![0.0; size];
        for idx in 0..size {
            let t = f.tuple_of(idx);
            tf[idx] = f.get(&t);
            tg[idx] = g.get(&t);
            if tg[idx] < 0.0 {
                return Err(Error::Invalid(format!("denominator is negative at {t:?}")));
            }
        }
        Ok(Table2 { n, f: tf, g: tg })
    }

    fn at(&self, a: SubsetMask, b: SubsetMask) -> (f64, f64) {
        let i = a.0 as usize | (b.0 as usize) << self.n;
        (self.f[i], self.g[i])
    }

    /// `f/g` with `c/0 = ±∞` for `c ≠ 0`; `None` for `0/0`.
    fn ratio(&self, a: SubsetMask, b: SubsetMask) -> Option<f64> {
        let (fv, gv) = self.at(a, b);
        if gv > 0.0 {
            Some(fv / gv)
        } else if fv > 0.0 {
            Some(f64::INFINITY)
        } else if fv < 0.0 {
            Some(f64::NEG_INFINITY)
        } else {
            None
        }
    }

    fn finite_bounds(&self) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for a in 1u32..1 << self.n {
            for b in 1u32..1 << self.n {
                let (fv, gv) = self.at(SubsetMask(a), SubsetMask(b));
                if gv > 0.0 {
                    lo = lo.min(fv / gv);
                    hi = hi.max(fv / gv);
                }
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// `(min_A max_B, argmin A, max_B min_A, argmax B)` over nonempty sets.
    fn discrete(&self) -> (f64, SubsetMask, f64, SubsetMask) {
        let full = 1u32 << self.n;
        let mut minimax = (f64::INFINITY, SubsetMask::EMPTY);
        for a in 1..full {
            let mut worst: Option<f64> = None;
            for b in 1..full {
                if let Some(r) = self.ratio(SubsetMask(a), SubsetMask(b)) {
                    worst = Some(worst.map_or(r, |w: f64| w.max(r)));
                }
            }
            if let Some(w) = worst {
                if w < minimax.0 {
                    minimax = (w, SubsetMask(a));
                }
            }
        }
        let mut maximin = (f64::NEG_INFINITY, SubsetMask::EMPTY);
        for b in 1..full {
            let mut worst: Option<f64> = None;
            for a in 1..full {
                if let Some(r) = self.ratio(SubsetMask(a), SubsetMask(b)) {
                    worst = Some(worst.map_or(r, |w: f64| w.min(r)));
                }
            }
            if let Some(w) = worst {
                if w > maximin.0 {
                    maximin = (w, SubsetMask(b));
                }
            }
        }
        (minimax.0, minimax.1, maximin.0, maximin.1)
    }

    /// Exact continuous minimax (or maximin) of `f^M/g^M` on the nonnegative
    /// cone: one bisection on `t` per maximal chain, each step a small LP.
    fn continuous(&self, side: Side) -> Result<f64> {
        let n = self.n;
        let (lo, hi) =
            self.finite_bounds().ok_or_else(|| Error::Invalid("denominator vanishes on every pair".into()))?;
        let full = 1u32 << n;
        let mut best = match side {
            Side::MinMax => f64::INFINITY,
            Side::MaxMin => f64::NEG_INFINITY,
        };
        for perm in permutations(n) {
            let chain = maximal_chain(&perm);
            let mut a = Vec::with_capacity(full as usize - 1);
            let mut b = Vec::with_capacity(full as usize - 1);
            for other in 1..full {
                let o = SubsetMask(other);
                let pairs: Vec<(f64, f64)> =
                    chain.iter().map(|c| if side == Side::MinMax { self.at(*c, o) } else { self.at(o, *c) }).collect();
                a.push(pairs.iter().map(|p| p.0).collect::<Vec<f64>>());
                b.push(pairs.iter().map(|p| p.1).collect::<Vec<f64>>());
            }
            let amax = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
            let bmax = b.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
            let holds = |t: f64| -> Result<bool> {
                let eps = 1e-12 * (1.0 + amax + t.abs() * bmax);
                let z = simplex_lp(&a, &b, t, side)?;
                Ok(match side {
                    Side::MinMax => z <= eps,
                    Side::MaxMin => z >= -eps,
                })
            };
            let value = match side {
                Side::MinMax => {
                    let upper = if best < hi { best } else { hi };
                    if !holds(upper)? {
                        if best < hi {
                            continue;
                        }
                        f64::INFINITY
                    } else if holds(lo)? {
                        lo
                    } else {
                        let (mut l, mut h) = (lo, upper);
                        while h - l > 1e-13 * (1.0 + h.abs()) {
                            let mid = 0.5 * (l + h);
                            if holds(mid)? {
                                h = mid;
                            } else {
                                l = mid;
                            }
                        }
                        h
                    }
                }
                Side::MaxMin => {
                    let lower = if best > lo { best } else { lo };
                    if !holds(lower)? {
                        if best > lo {
                            continue;
                        }
                        f64::NEG_INFINITY
                    } else if holds(hi)? {
                        hi
                    } else {
                        let (mut l, mut h) = (lower, hi);
                        while h - l > 1e-13 * (1.0 + l.abs()) {
                            let mid = 0.5 * (l + h);
                            if holds(mid)? {
                                l = mid;
                            } else {
                                h = mid;
                            }
                        }
                        l
                    }
                }
            };
            best = match side {
                Side::MinMax => best.min(value),
                Side::MaxMin => best.max(value),
            };
        }
        Ok(best)
    }
}

fn sample_nonneg(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..n).map(|_| if rng.gen_bool(0.25) { 0.0 } else { rng.gen_range(0.0..1.0) }).collect();
        if x.iter().any(|v| *v > 0.0) {
            return x;
        }
    }
}

/// Discrete and continuous minimax/maximin of `f/g` for `k = 2`.
///
/// Passes when `disc minimax >= cont minimax >= cont maximin >= disc maximin`
/// and, if a discrete saddle `(A*, B*)` exists, the continuous values equal it
/// and `(1_{A*}, 1_{B*})` is a saddle on sampled points.
pub fn check_saddle_transfer(
    id: &str,
    f: &SetTupleFunction<f64>,
    g: &SetTupleFunction<f64>,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let tab = Table2::new(f, g)?;
    let n = tab.n;
    let (dmm, a_star, dmx, b_star) = tab.discrete();
    let cmm = tab.continuous(Side::MinMax)?;
    let cmx = tab.continuous(Side::MaxMin)?;
    let scale = [dmm, dmx, cmm, cmx].iter().filter(|v| v.is_finite()).fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = ITER_TOL * scale;
    let excess = |hi: f64, lo: f64| if hi == lo { 0.0 } else { (lo - hi).max(0.0) };
    let mut gap = excess(dmm, cmm).max(excess(cmm, cmx)).max(excess(cmx, dmx));
    let saddle = dmm.is_finite() && (dmm - dmx).abs() <= 1e-12 * scale;
    let mut violation = 0.0f64;
    if saddle {
        gap = gap.max((cmm - dmm).abs()).max((cmx - dmm).abs());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xa = indicator(a_star, n);
        let yb = indicator(b_star, n);
        for _ in 0..samples {
            let y = sample_nonneg(n, &mut rng);
            if let Some(r) = continuous_ratio(f, g, &[xa.clone(), y])? {
                violation = violation.max(r - dmm);
            }
            let x = sample_nonneg(n, &mut rng);
            if let Some(r) = continuous_ratio(f, g, &[x, yb.clone()])? {
                violation = violation.max(dmm - r);
            }
        }
        gap = gap.max(violation);
    }
    let r = VerificationReport::with_gap(
        id,
        "saddle transfer between discrete and continuous minimax",
        format!("n={n} k=2"),
        cmm,
        if saddle { Relation::Eq } else { Relation::Ge },
        cmx,
        gap,
        tol,
    )
    .detail("discrete_minimax", dmm)
    .detail("discrete_maximin", dmx)
    .detail("continuous_minimax", cmm)
    .detail("continuous_maximin", cmx)
    .detail("discrete_saddle", if saddle { 1.0 } else { 0.0 })
    .detail("saddle_violation", violation);
    Ok(timed(start, r))
}

/// Path `1 - 2 - 3` with `f = #E(A,B)` (ordered pairs) and `g = #(A ∩ B)`.
pub fn path3_saddle_instance() -> Result<(SetTupleFunction<f64>, SetTupleFunction<f64>)> {
    let g = WeightedGraph::path(3);
    let f = SetTupleFunction::tabulate(3, 2, |t| g.e_between(t[0], t[1]))?;
    let d = SetTupleFunction::tabulate(3, 2, |t| t[0].intersect(t[1]).len() as f64)?;
    Ok((f, d))
}

/// `f(A,B) = Σ_{i∈A, j∈B} c_ij`, `g = #A · #B` for a square payoff matrix.
pub fn payoff_game_instance(c: &[Vec<f64>]) -> Result<(SetTupleFunction<f64>, SetTupleFunction<f64>)> {
    let n = c.len();
    if c.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("payoff matrix must be square".into()));
    }
    let c = c.to_vec();
    let f = SetTupleFunction::tabulate(n, 2, |t| {
        t[0].indices().map(|i| t[1].indices().map(|j| c[i][j]).sum::<f64>()).sum::<f64>()
    })?;
    let g = SetTupleFunction::tabulate(n, 2, |t| (t[0].len() * t[1].len()) as f64)?;
    Ok((f, g))
}

/// Continuous minimax of a payoff game against the LP game value.
pub fn check_payoff_game(id: &str, c: &[Vec<f64>]) -> Result<VerificationReport> {
    let start = Instant::now();
    let (f, g) = payoff_game_instance(c)?;
    let tab = Table2::new(&f, &g)?;
    let cmm = tab.continuous(Side::MinMax)?;
    let cmx = tab.continuous(Side::MaxMin)?;
    let value = solve_matrix_game(c)?.value;
    let gap = (cmm - value).abs().max((cmx - value).abs());
    let r = VerificationReport::with_gap(
        id,
        "continuous minimax of a payoff game equals its LP value",
        format!("{}x{} payoff", c.len(), c.len()),
        cmm,
        Relation::Eq,
        value,
        gap,
        ITER_TOL,
    )
    .detail("continuous_minimax", cmm)
    .detail("continuous_maximin", cmx)
    .detail("lp_value", value);
    Ok(timed(start, r))
}

/// Minimax equals maximin when `f` is submodular in the first argument,
/// supermodular in the second, `g` is modular in both and
/// `g({i}, V), g(V, {j}) > 0`. Returns a skip when the structure fails.
pub fn check_sion_case(id: &str, f: &SetTupleFunction<f64>, g: &SetTupleFunction<f64>) -> Result<VerificationReport> {
    let start = Instant::now();
    let anchor = "minimax equals maximin for convex-concave structure";
    let n = f.n();
    let instance = format!("n={n} k=2");
    let structured = submodularity_check(f, 0)?
        && supermodularity_check(f, 1)?
        && modularity_check(g, 0)?
        && modularity_check(g, 1)?
        && (0..n).all(|i| {
            g.get(&[SubsetMask::singleton(i), SubsetMask::full(n)]) > 0.0
                && g.get(&[SubsetMask::full(n), SubsetMask::singleton(i)]) > 0.0
        });
    if !structured {
        return Ok(timed(start, VerificationReport::skipped(id, anchor, instance, "structure conditions fail")));
    }
    let tab = Table2::new(f, g)?;
    let cmm = tab.continuous(Side::MinMax)?;
    let cmx = tab.continuous(Side::MaxMin)?;
    let r = VerificationReport::compare(id, anchor, instance, cmm, Relation::Eq, cmx, ITER_TOL * (1.0 + cmm.abs()));
    Ok(timed(start, r))
}

/// Random instance `f = cut(A)·#B + #A·e(B) + Σ_{A} u + Σ_{B} v`, `g = #A·#B + #A + #B`.
pub fn random_sion_instance(n: usize, rng: &mut impl Rng) -> Result<(SetTupleFunction<f64>, SetTupleFunction<f64>)> {
    let ga = erdos_renyi(n, 0.5, rng);
    let gb = erdos_renyi(n, 0.5, rng);
    let u: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let f = SetTupleFunction::tabulate(n, 2, |t| {
        let (a, b) = (t[0], t[1]);
        ga.cut(a) * b.len() as f64
            + a.len() as f64 * 0.5 * gb.e_between(b, b)
            + a.indices().map(|i| u[i]).sum::<f64>()
            + b.indices().map(|j| v[j]).sum::<f64>()
    })?;
    let g = SetTupleFunction::tabulate(n, 2, |t| {
        let (a, b) = (t[0].len() as f64, t[1].len() as f64);
        a * b + a + b
    })?;
    Ok((f, g))
}

/// A 0-homogeneous quasiconcave `H` on the positive orthant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuasiConcave {
    /// `z1 z2 / (z1 + z2)^2`.
    Product2,
    /// `e2(z1, z2, z3) / (z1 + z2 + z3)^2`.
    Symmetric2,
}

impl QuasiConcave {
    pub fn arity(self) -> usize {
        match self {
            QuasiConcave::Product2 => 2,
            QuasiConcave::Symmetric2 => 3,
        }
    }

    pub fn eval(self, z: &[f64]) -> f64 {
        let s: f64 = z.iter().sum();
        let p = match self {
            QuasiConcave::Product2 => z[0] * z[1],
            QuasiConcave::Symmetric2 => z[0] * z[1] + z[0] * z[2] + z[1] * z[2],
        };
        p / (s * s)
    }
}

/// `min_{x >= 0} H(f_1^L(x), ...) = min_{A ≠ ∅} H(f_1(A), ...)` for
/// nonnegative `f_i` positive on nonempty sets.
pub fn check_quasiconcave_composition(
    id: &str,
    h: QuasiConcave,
    fs: &[SetTupleFunction<f64>],
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if fs.len() != h.arity() {
        return Err(Error::Arity { expected: h.arity(), got: fs.len() });
    }
    let n = fs[0].n();
    if fs.iter().any(|f| f.k() != 1 || f.n() != n) {
        return Err(Error::Invalid("components must be set functions on one ground set".into()));
    }
    let mut disc = (f64::INFINITY, SubsetMask::EMPTY);
    for m in 1u32..1 << n {
        let z: Vec<f64> = fs.iter().map(|f| f.get(&[SubsetMask(m)])).collect();
        if z.iter().any(|v| *v <= 0.0) {
            return Err(Error::Invalid(format!("component is not positive at {:?}", SubsetMask(m))));
        }
        let v = h.eval(&z);
        if v < disc.0 {
            disc = (v, SubsetMask(m));
        }
    }
    let comp = |x: &[f64]| -> Result<f64> {
        let z = fs.iter().map(|f| lovasz(f, x)).collect::<Result<Vec<f64>>>()?;
        Ok(h.eval(&z))
    };
    let witness = comp(&indicator(disc.1, n))?;
    let mut cont = witness;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut homog = 0.0f64;
    for i in 0..samples {
        let x = sample_nonneg(n, &mut rng);
        let v = comp(&x)?;
        cont = cont.min(v);
        if i < 8 {
            let scaled: Vec<f64> = x.iter().map(|a| 3.7 * a).collect();
            homog = homog.max((comp(&scaled)? - v).abs());
        }
    }
    let gap = (disc.0 - cont).abs().max(homog);
    let r = VerificationReport::with_gap(
        id,
        "quasiconcave composition attains its minimum at an indicator",
        format!("n={n} H={h:?}"),
        disc.0,
        Relation::Eq,
        cont,
        gap,
        EXACT_TOL,
    )
    .detail("homogeneity_gap", homog);
    Ok(timed(start, r))
}

// ---------------------------------------------------------------------------
// Suites

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Indicator,
    Tables,
    K5,
    Saddle,
    Equalities,
    MotzkinStraus,
    CollatzWielandt,
    Duality,
    Cheeger,
    InertiaNodal,
    Bipartite,
    SimplicialIdentity,
    ZeroMultiplicity,
    Huang,
    HypergraphInertia,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::Indicator,
        Suite::Tables,
        Suite::K5,
        Suite::Saddle,
        Suite::Equalities,
        Suite::MotzkinStraus,
        Suite::CollatzWielandt,
        Suite::Duality,
        Suite::Cheeger,
        Suite::InertiaNodal,
        Suite::Bipartite,
        Suite::SimplicialIdentity,
        Suite::ZeroMultiplicity,
        Suite::Huang,
        Suite::HypergraphInertia,
    ];

    /// The spectral inequality families.
    pub const INEQUALITIES: [Suite; 8] = [
        Suite::Cheeger,
        Suite::InertiaNodal,
        Suite::Bipartite,
        Suite::SimplicialIdentity,
        Suite::ZeroMultiplicity,
        Suite::Huang,
        Suite::HypergraphInertia,
        Suite::K5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Indicator => "indicator",
            Suite::Tables => "tables",
            Suite::K5 => "k5",
            Suite::Saddle => "saddle",
            Suite::Equalities => "equalities",
            Suite::MotzkinStraus => "motzkin-straus",
            Suite::CollatzWielandt => "collatz-wielandt",
            Suite::Duality => "duality",
            Suite::Cheeger => "cheeger",
            Suite::InertiaNodal => "inertia-nodal",
            Suite::Bipartite => "bipartite",
            Suite::SimplicialIdentity => "simplicial-identity",
            Suite::ZeroMultiplicity => "zero-multiplicity",
            Suite::Huang => "huang",
            Suite::HypergraphInertia => "hypergraph-inertia",
        }
    }

    /// A suite name, `all`, or `inequalities`.
    pub fn parse_selector(s: &str) -> Option<Vec<Suite>> {
        match s {
            "all" => Some(Suite::ALL.to_vec()),
            "inequalities" => Some(Suite::INEQUALITIES.to_vec()),
            _ => Suite::ALL.iter().find(|x| x.name() == s).map(|x| vec![*x]),
        }
    }

    fn salt(self) -> u64 {
        self as u64 + 1
    }

    pub fn run(self, seed: u64) -> Result<Vec<VerificationReport>> {
        let mut rng = seeded_rng(seed, self.salt());
        let mut out = match self {
            Suite::Indicator => suite_indicator(&mut rng),
            Suite::Tables => suite_tables(&mut rng),
            Suite::K5 => suite_k5(),
            Suite::Saddle => suite_saddle(&mut rng),
            Suite::Equalities => suite_equalities(&mut rng),
            Suite::MotzkinStraus => suite_motzkin_straus(&mut rng),
            Suite::CollatzWielandt => suite_collatz_wielandt(&mut rng),
            Suite::Duality => suite_duality(&mut rng),
            Suite::Cheeger => suite_cheeger(&mut rng),
            Suite::InertiaNodal => suite_inertia_nodal(&mut rng),
            Suite::Bipartite => suite_bipartite(&mut rng),
            Suite::SimplicialIdentity => suite_simplicial_identity(seed),
            Suite::ZeroMultiplicity => suite_zero_multiplicity(seed),
            Suite::Huang => suite_huang(),
            Suite::HypergraphInertia => suite_hypergraph_inertia(&mut rng),
        }?;
        out.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(out)
    }
}

/// Runs suites on separate threads; reports are ordered by id.
pub fn run_suites(suites: &[Suite], seed: u64) -> Result<Vec<VerificationReport>> {
    let results: Vec<Result<Vec<VerificationReport>>> = std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|suite| s.spawn(move || suite.run(seed))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Invalid("suite thread panicked".into()))))
            .collect()
    });
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    all.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(all)
}

pub fn run_inequality_suites(seed: u64) -> Result<Vec<VerificationReport>> {
    run_suites(&Suite::INEQUALITIES, seed)
}

/// `(pass, fail, skip)` counts.
pub fn tally(reports: &[VerificationReport]) -> (usize, usize, usize) {
    reports.iter().fold((0, 0, 0), |(p, f, s), r| match r.verdict {
        Verdict::Pass => (p + 1, f, s),
        Verdict::Fail => (p, f + 1, s),
        Verdict::Skip => (p, f, s + 1),
    })
}

fn suite_indicator(rng: &mut ChaCha8Rng) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let zero = Rational::zero();
    let one = Rational::one();
    for idx in 0..200 {
        let start = Instant::now();
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=3);
        let f = random_rational_function(n, k, rng)?;
        let mut mismatches = 0usize;
        let total = 1usize << (n * k);
        for i in 0..total {
            let t = f.tuple_of(i);
            let xs: Vec<Vec<Rational>> =
                t.iter().map(|a| (0..n).map(|v| if a.contains(v) { one } else { zero }).collect()).collect();
            if multilinear(&f, &xs)? != f.get(&t) {
                mismatches += 1;
            }
        }
        let mut checked = total;
        if n <= 4 && k <= 2 {
            let vals: Vec<Rational> =
                (0..3usize.pow((n * k) as u32)).map(|_| ratio(rng.gen_range(-20..=20), rng.gen_range(1..=6))).collect();
            let vals = Arc::new(vals);
            let base = 3usize.pow(n as u32);
            let code = move |p: &DisjointPair| -> usize {
                (0..n).rev().fold(0, |acc, i| {
                    acc * 3
                        + if p.plus().contains(i) {
                            1
                        } else if p.minus().contains(i) {
                            2
                        } else {
                            0
                        }
                })
            };
            let table = Arc::clone(&vals);
            let h = DisjointPairFunction::from_fn(n, k, move |t: &[DisjointPair]| {
                if t.iter().any(|p| p.is_empty()) {
                    return Rational::zero();
                }
                table[t.iter().rev().fold(0, |acc, p| acc * base + code(p))]
            })?;
            let pairs: Vec<DisjointPair> = DisjointPair::all(n).collect();
            let mut tuple = vec![pairs[0]; k];
            for c in 0..pairs.len().pow(k as u32) {
                let mut r = c;
                for slot in tuple.iter_mut() {
                    *slot = pairs[r % pairs.len()];
                    r /= pairs.len();
                }
                let xs: Vec<Vec<Rational>> = tuple
                    .iter()
                    .map(|p| {
                        (0..n)
                            .map(|v| {
                                if p.plus().contains(v) {
                                    one
                                } else if p.minus().contains(v) {
                                    -one
                                } else {
                                    zero
                                }
                            })
                            .collect()
                    })
                    .collect();
                if multiple_integral(&h, &xs)? != h.get(&tuple) {
                    mismatches += 1;
                }
                checked += 1;
            }
        }
        let r = VerificationReport::compare(
            format!("indicator-{idx:03}"),
            "extensions reproduce the table at indicator tuples",
            format!("n={n} k={k} tuples={checked}"),
            mismatches as f64,
            Relation::Eq,
            0.0,
            0.0,
        );
        out.push(timed(start, r));
    }
    Ok(out)
}

fn row_report(id: String, anchor: &str, instance: String, gap: f64, start: Instant) -> VerificationReport {
    timed(start, VerificationReport::compare(id, anchor, instance, gap, Relation::Le, 0.0, 1e-12))
}

fn suite_tables(rng: &mut ChaCha8Rng) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let n = 5;
    let points = 100;
    let g = erdos_renyi(n, 0.5, rng);
    let cst: f64 = rng.gen_range(0.5..3.0);
    let anchor = "closed form of the extension";
    let rows: Vec<(&str, SetTupleFunction<f64>)> = vec![
        ("edges", SetTupleFunction::tabulate(n, 2, |t| g.e_between(t[0], t[1]))?),
        ("constant", SetTupleFunction::tabulate(n, 2, |t| if t[0].is_empty() || t[1].is_empty() { 0.0 } else { cst })?),
        ("product", SetTupleFunction::tabulate(n, 2, |t| (t[0].len() * t[1].len()) as f64)?),
        ("intersection", SetTupleFunction::tabulate(n, 2, |t| t[0].intersect(t[1]).len() as f64)?),
    ];
    let mut pts: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    for _ in 0..points {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        pts.push((x, y));
    }
    let max = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    for (name, f) in &rows {
        let start = Instant::now();
        let mut gap = 0.0f64;
        for (x, y) in &pts {
            let closed = match *name {
                "edges" => g.edges().iter().map(|(i, j, w)| w * (x[*i] * y[*j] + x[*j] * y[*i])).sum::<f64>(),
                "constant" => cst * max(x) * max(y),
                "product" => x.iter().sum::<f64>() * y.iter().sum::<f64>(),
                _ => x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>(),
            };
            gap = gap.max((multilinear(f, &[x.clone(), y.clone()])? - closed).abs());
        }
        out.push(row_report(format!("tables-1-{name}"), anchor, format!("n={n} k=2 points={points}"), gap, start));
    }
    let m = 4;
    for k in 1..=2usize {
        let l1 = DisjointPairFunction::from_fn(m, k, |t: &[DisjointPair]| {
            t.iter().map(|p| p.support().len() as f64).product::<f64>()
        })?;
        let linf = DisjointPairFunction::from_fn(
            m,
            k,
            |t: &[DisjointPair]| if t.iter().any(|p| p.is_empty()) { 0.0 } else { 1.0 },
        )?;
        for (name, f) in [("l1", &l1), ("linf", &linf)] {
            let start = Instant::now();
            let mut gap = 0.0f64;
            for _ in 0..points {
                let xs: Vec<Vec<f64>> = (0..k).map(|_| (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
                let closed: f64 = xs
                    .iter()
                    .map(|x| {
                        if name == "l1" {
                            x.iter().map(|v| v.abs()).sum::<f64>()
                        } else {
                            x.iter().fold(0.0f64, |a, v| a.max(v.abs()))
                        }
                    })
                    .product();
                gap = gap.max((multiple_integral(f, &xs)? - closed).abs());
            }
            out.push(row_report(
                format!("tables-2-{name}-k{k}"),
                anchor,
                format!("n={m} k={k} points={points}"),
                gap,
                start,
            ));
        }
    }
    Ok(out)
}

/// Eigenvalues `{0, 3/4, 1}` of the normalized 1-Laplacian on `K5`, the
/// Cheeger constants `h_2 = 3/4`, `h_3 = 1`, and `λ_3 = 3/4 < h_3` where
/// the ordered list uses multiplicity 2 for the eigenvalue 1.
fn suite_k5() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let k5 = WeightedGraph::complete(5);
    let start = Instant::now();
    let pair = HomogeneousPair::graph_p_laplacian(&k5, 1.0, true)?;
    let rep = ternary_eigen_enumerate(&pair, RESIDUAL_TOL)?;
    let expected = [0.0, 0.75, 1.0];
    let gap = if rep.eigenvalues.len() == expected.len() {
        rep.eigenvalues.iter().zip(expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    out.push(timed(
        start,
        VerificationReport::with_gap(
            "k5-1-eigenvalues",
            "1-Laplacian eigenvalues of K5",
            "K5 normalized p=1",
            rep.eigenvalues.len() as f64,
            Relation::Eq,
            3.0,
            gap,
            1e-12,
        )
        .detail("exact_domain", if rep.exact_domain { 1.0 } else { 0.0 }),
    ));
    let start = Instant::now();
    let h2 = cheeger(&k5)?.value;
    let h3 = k_way_cheeger(&k5, 3)?.value;
    out.push(timed(
        start,
        VerificationReport::compare("k5-2-h2", "Cheeger constant h2 of K5", "K5", h2, Relation::Eq, 0.75, 1e-12),
    ));
    out.push(VerificationReport::compare(
        "k5-3-h3",
        "3-way Cheeger constant of K5",
        "K5",
        h3,
        Relation::Eq,
        1.0,
        1e-12,
    ));
    // Ordered list of length 5 with the top eigenvalue repeated twice.
    let mut ordered = vec![rep.eigenvalues.first().copied().unwrap_or(f64::NAN)];
    let top = rep.eigenvalues.last().copied().unwrap_or(f64::NAN);
    let middle = rep.eigenvalues.get(1).copied().unwrap_or(f64::NAN);
    while ordered.len() < 3 {
        ordered.push(middle);
    }
    ordered.extend([top, top]);
    out.push(
        VerificationReport::compare(
            "k5-4-lambda2",
            "lambda2 equals h2 on K5",
            "K5",
            ordered[1],
            Relation::Eq,
            h2,
            1e-12,
        )
        .detail("lambda1", ordered[0]),
    );
    out.push(VerificationReport::compare(
        "k5-5-lambda3-strict",
        "lambda3 strictly below h3 on K5",
        "K5 with multiplicity 2 at eigenvalue 1",
        ordered[2],
        Relation::Lt,
        h3,
        1e-12,
    ));
    Ok(out)
}

fn suite_saddle(rng: &mut ChaCha8Rng) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let (f, g) = path3_saddle_instance()?;
    let p3 = check_saddle_transfer("saddle-p3-transfer", &f, &g, 200, rng.gen())?;
    let d = |k: &str| p3.details.get(k).copied().unwrap_or(f64::NAN);
    let dmm = d("discrete_minimax");
    let dmx = d("discrete_maximin");
    let cmm = d("continuous_minimax");
    let cmx = d("continuous_maximin");
    let anchor = "discrete and continuous minimax on the path P3";
    out.push(VerificationReport::compare("saddle-p3-discrete-maximin", anchor, "P3", dmx, Relation::Eq, 1.0, 1e-12));
    out.push(VerificationReport::compare("saddle-p3-discrete-minimax", anchor, "P3", dmm, Relation::Eq, 2.0, 1e-12));
    out.push(VerificationReport::compare(
        "saddle-p3-continuous-maximin",
        anchor,
        "P3",
        cmx,
        Relation::Eq,
        2f64.sqrt(),
        SLACK_TOL,
    ));
    out.push(VerificationReport::compare(
        "saddle-p3-continuous-minimax",
        anchor,
        "P3",
        cmm,
        Relation::Eq,
        2f64.sqrt(),
        SLACK_TOL,
    ));
    out.push(p3);
    for idx in 0..20 {
        let c: Vec<Vec<f64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        out.push(check_payoff_game(&format!("saddle-game-{idx:02}"), &c)?);
        let (f, g) = payoff_game_instance(&c)?;
        out.push(check_saddle_transfer(&format!("saddle-transfer-game-{idx:02}"), &f, &g, 100, rng.gen())?);
    }
    let pure = vec![vec![2.0, 1.0, 1.5], vec![3.0, 0.0, 5.0], vec![4.0, 2.0, 0.0]];
    let (f, g) = payoff_game_instance(&pure)?;
    out.push(check_saddle_transfer("saddle-transfer-pure", &f, &g, 200, rng.gen())?);
    out.push(check_payoff_game("saddle-game-pure", &pure)?);
    for idx in 0..10 {
        let n = 3;
        let f = SetTupleFunction::tabulate(n, 2, |t| {
            if t[0].is_empty() || t[1].is_empty() {
                0.0
            } else {
                rng.gen_range(0.0..2.0)
            }
        })?;
        let g = SetTupleFunction::tabulate(n, 2, |t| (t[0].len() + t[1].len()) as f64)?;
        out.push(check_saddle_transfer(&format!("saddle-transfer-random-{idx:02}"), &f, &g, 100, rng.gen())?);
    }
    Ok(out)
}

fn random_positive_function(n: usize, rng: &mut impl Rng) -> Result<SetTupleFunction<f64>> {
    SetTupleFunction::tabulate(n, 1, |t| if t[0].is_empty() { 0.0 } else { rng.gen_range(0.1..2.0) })
}

fn suite_equalities(rng: &mut ChaCha8Rng) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for idx in 0..10 {
        let n = 4;
        let f = SetTupleFunction::tabulate(n, 2, |t| {
            if t.iter().any(|a| a.is_empty()) {
                0.0
            } else {
                rng.gen_range(-1.0..2.0)
            }
        })?;
        let g = SetTupleFunction::tabulate(n, 2, |t| {
            if t.iter().any(|a| a.is_empty()) {
                0.0
            } else {
                rng.gen_range(0.5..2.0)
            }
        })?;
        for fam in [PairFamily::Chain, PairFamily::AllNonempty] {
            let name = if fam == PairFamily::Chain { "chain" } else { "nonempty" };
            out.push(check_indicator_and_equalities(
                &format!("equalities-{name}-{idx:02}"),
                &f,
                &g,
                fam,
                300,
                rng.gen(),
            )?);
        }
    }
    for idx in 0..10 {
        let g = erdos_renyi(rng.gen_range(3..=7), 0.5, rng);
        out.push(check_spectral_radius(&format!("equalities-radius-{idx:02}"), &g)?);
        if g.n() <= 5 {
            let n = g.n();
            let f = SetTupleFunction::tabulate(n, 2, |t| g.e_between(t[0], t[1]))?;
            let d = SetTupleFunction::tabulate(n, 2, |t| t[0].intersect(t[1]).len() as f64)?;
            let id = format!("equalities-radius-{idx:02}-diagonal");
            out.push(check_indicator_and_equalities(&id, &f, &d, PairFamily::Diagonal, 300, rng.gen())?);
        }
    }
    out.push(check_maxcut("equalities-maxcut-c5", &WeightedGraph::cycle(5), 500, rng.gen())?);
    for idx in 0..5 {
        let g = erdos_renyi(rng.gen_range(4..=8), 0.5, rng);
        out.push(check_maxcut(&format!("equalities-maxcut-{idx:02}"), &g, 300, rng.gen())?);
    }
    for idx in 0..5 {
        let (f, g) = random_sion_instance(if idx < 3 { 3 } else { 4 }, rng)?;
        out.push(check_sion_case(&format!("equalities-sion-{idx:02}"), &f, &g)?);
    }
    for idx in 0..3 {
        let c: Vec<Vec<f64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let (f, g) = payoff_game_instance(&c)?;
        let value = solve_matrix_game(&c)?.value;
        let r = check_sion_case(&format!("equalities-sion-bilinear-{idx:02}"), &f, &g)?;
        let gap = r.gap.max((r.lhs - value).abs());
        out.push(
            VerificationReport::with_gap(r.id, &r.anchor, r.instance, r.lhs, Relation::Eq, value, gap, r.tolerance)
                .detail("continuous_maximin", r.rhs)
                .detail("lp_value", value),
        );
    }
    {
        let n = 4;
        let ga = erdos_renyi(n, 0.5, rng);
        let u: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let f = SetTupleFunction::tabulate(n, 2, |t| ga.cut(t[0]) + t[0].indices().map(|i| u[i]).sum::<f64>())?;
        let g = SetTupleFunction::tabulate(n, 2, |t| (t[0].len() + t[1].len()) as f64)?;
        out.push(check_sion_case("equalities-sion-first-argument-only", &f, &g)?);
    }
    {
        let n = 4;
        let f = SetTupleFunction::tabulate(n, 2, |t| {
            if t.iter().any(|a| a.is_empty()) {
                0.0
            } else {
                rng.gen_range(0.5..2.0)
            }
        })?;
        let r = check_indicator_and_equalities("equalities-f-equals-g", &f, &f, PairFamily::Chain, 200, rng.gen())?;
        let gap = r.gap.max((r.lhs - 1.0).abs()).max((r.rhs - 1.0).abs());
        out.push(VerificationReport::with_gap(r.id, &r.anchor, r.instance, r.lhs, Relation::Eq, 1.0, gap, r.tolerance));
    }
    {
        let f = random_positive_function(4, rng)?;
        let r = check_quasiconcave_composition(
            "equalities-quasiconcave-equal-components",
            QuasiConcave::Product2,
            &[f.clone(), f],
            200,
            rng.gen(),
        )?;
        let gap = r.gap.max((r.lhs - 0.25).abs()).max((r.rhs - 0.25).abs());
        out.push(VerificationReport::with_gap(
            r.id,
            &r.anchor,
            r.instance,
            r.lhs,
            Relation::Eq,
            0.25,
            gap,
            r.tolerance,
        ));
    }
    for idx in 0..6 {
        let h = if idx % 2 == 0 { QuasiConcave::Product2 } else { QuasiConcave::Symmetric2 };
        let fs = (0..h.arity()).map(|_| random_positive_function(4, rng)).collect::<Result<Vec<_>>>()?;
        out.push(check_quasiconcave_composition(&format!("equalities-quasiconcave-{idx:02}"), h, &fs, 400, rng.gen())?);
    }
    Ok(out)
}

fn suite_motzkin_straus(rng: &mut ChaCha8Rng) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for idx in 0..20 {
        let start = Instant::now();
        let n = rng.gen_range(3..=8);
        let mut g = erdos_renyi(n, 0.5, rng);
        if g.num_edges() == 0 {
            g.add_edge(0, 1, 1.0)?;
        }
        let rep = motzkin_straus(&g, 64, rng.gen())?;
        let instance = describe_graph(&g);
        out.push(timed(
            start,
            VerificationReport::compare(
                format!("motzkin-straus-{idx:02}-attain"),
                "simplex maximum equals 1 - 1/omega",
                instance.clone(),
                rep.ascent_best,
                Relation::Eq,
                rep.exact,
                ITER_TOL,
            )
            .detail("omega", rep.omega as f64)
            .detail("clique_value", rep.clique_value),
        ));
        out.push(VerificationReport::compare(
            format!("motzkin-straus-{idx:02}-bound"),
            "simplex maximum never exceeds 1 - 1/omega",
            instance.clone(),
            rep.ascent_best,
            Relation::Le,
            rep.exact,
            SLACK_TOL,
        ));
        let alpha = independence_clique(&g)?.alpha as f64;
        let comp = motzkin_straus(&g.complement(), 64, rng.gen())?;
        let est = if comp.ascent_best >= 1.0 { f64::INFINITY } else { 1.0 / (1.0 - comp.ascent_best) };
        out.push(VerificationReport::compare(
            format!("motzkin-straus-{idx:02}-independence"),
            "independence number from the complement simplex maximum",
            instance,
            est,
            Relation::Eq,
            alpha,
            ITER_TOL * alpha,
        ));
    }
    for t in 4..=6usize {
        let start = Instant::now();
        let mut edges = Vec::new();
        for a in 0..t {
            for b in (a + 1)..t {
                for c in (b + 1)..t {
                    edges.push(vec![a, b, c]);
                }
            }
        }
        let h = UniformHypergraph::new(t, 3, edges)?;
        let rep = hypergraph_lagrangian(&h, 32, rng.gen())?;
        let exact = (t * (t - 1) * (t - 2) / 6) as f64 / (t as f64).powi(3);
        out.push(timed(
            start,
            VerificationReport::compare(
                format!("motzkin-straus-lagrangian-k{t}"),
                "Lagrangian of a clique hypergraph",
                format!("complete 3-graph on {t} vertices"),
                rep.continuous,
                Relation::Eq,
                exact,
                ITER_TOL,
            )
            .detail("discrete", rep.discrete),
        ));
    }
    Ok(out)
}

/// Largest real root of `det(λI - A)` found by scanning down from the
/// maximum row sum; used as an oracle for nonsymmetric Perron roots.
fn perron_root_by_determinant(a: &Matrix) -> f64 {
    let n = a.rows();
    let det_shift = |lam: f64| -> f64 {
        let mut m: Vec<Vec<f64>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { lam - a[(i, j)] } else { -a[(i, j)] }).collect()).collect();
        let mut det = 1.0;
        for c in 0..n {
            let p = (c..n).max_by(|x, y| m[*x][c].abs().total_cmp(&m[*y][c].abs())).unwrap_or(c);
            if m[p][c] == 0.0 {
                return 0.0;
            }
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= m[c][c];
            for r in (c + 1)..n {
                let fct = m[r][c] / m[c][c];
                for k in c..n {
                    m[r][k] -= fct * m[c][k];
                }
            }
        }
        det
    };
    let rows: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a[(i, j)]).sum()).collect();
    let hi0 = rows.iter().cloned().fold(0.0, f64::max) + 1e-9;
    let lo0 = rows.iter().cloned().fold(f64::INFINITY, f64::min) - 1e-9;
    let steps = 4000;
    let h = (hi0 - lo0) / steps as f64;
    let mut hi = hi0;
    for s in 1..=steps {
        let lo = hi0 - s as f64 * h;
        if det_shift(lo) <= 0.0 {
            let (mut l, mut u) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (l + u);
                if det_shift(mid) > 0.0 {
                    u = mid;
                } else {
                    l = mid;
                }
            }
            return 0.5 * (l + u);
        }
        hi = lo;
    }
    f64::NAN
}

fn suite_collatz_wielandt(rng: &mut ChaCha8Rng) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let anchor = "Collatz-Wielandt value equals the Perron root";
    for idx in 0..20 {
        let start = Instant::now();
        let n = rng.gen_range(3..=6);
        let symmetric = idx < 10;
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if symmetric && j < i {
                    a[(i, j)] = a[(j, i)];
                } else {
                    a[(i, j)] = rng.gen_range(0.05..1.0);
                }
            }
        }
        let cw = collatz_wielandt_matrix(&a, &vec![1.0; n], 1e-12, 100_000)?;
        let (oracle, label) = if symmetric {
            (*symmetric_eigen(&a)?.values.last().unwrap_or(&f64::NAN), "symmetric")
        } else {
            (perron_root_by_determinant(&a), "nonsymmetric")
        };
        let width = cw.upper - cw.lower;
        let gap = (cw.lambda - oracle).abs().max(width);
        out.push(timed(
            start,
            VerificationReport::with_gap(
                format!("collatz-wielandt-{idx:02}"),
                anchor,
                format!("{label} positive {n}x{n}"),
                cw.lambda,
                Relation::Eq,
                oracle,
                gap,
                ITER_TOL,
            )
            .detail("bracket_width", width)
            .detail("iterations", cw.iterations as f64),
        ));
    }
    let start = Instant::now();
    let p3 = WeightedGraph::path(3).adjacency();
    let cw = collatz_wielandt_matrix(&p3, &[1.0; 3], 1e-13, 1_000_000)?;
    out.push(timed(
        start,
        VerificationReport::with_gap(
            "collatz-wielandt-p3",
            anchor,
            "adjacency of P3",
            cw.lambda,
            Relation::Eq,
            2f64.sqrt(),
            (cw.lambda - 2f64.sqrt()).abs().max(cw.upper - cw.lower),
            ITER_TOL,
        ),
    ));
    Ok(out)
}

fn suite_duality(rng: &mut ChaCha8Rng) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for idx in 0..20 {
        let rows: Vec<Vec<f64>> = (0..3).map(|_| (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let t = Matrix::from_rows(&rows);
        for (p, q) in [(2.0, 2.0), (2.0, f64::INFINITY), (1.0, 2.0)] {
            let start = Instant::now();
            let rep = duality_spectrum_check(&t, p, q, rng.gen())?;
            let qs = if q.is_infinite() { "inf".to_string() } else { format!("{q}") };
            out.push(timed(
                start,
                VerificationReport::compare(
                    format!("duality-{idx:02}-p{p}-q{qs}"),
                    "primal and dual spectra coincide",
                    format!("3x4 matrix p={p} q={qs}"),
                    rep.primal,
                    Relation::Eq,
                    rep.dual,
                    1e-5,
                ),
            ));
        }
    }
    for idx in 0..10 {
        let g = connected_erdos_renyi(rng.gen_range(3..=7), 0.5, rng);
        for normalized in [false, true] {
            let start = Instant::now();
            let rep = incidence_spectra_check(&g.incidence(), normalized)?;
            let tag = if normalized { "normalized" } else { "plain" };
            out.push(timed(
                start,
                VerificationReport::compare(
                    format!("duality-incidence-{idx:02}-{tag}"),
                    "vertex and edge spectra share nonzero eigenvalues",
                    describe_graph(&g),
                    rep.gap,
                    Relation::Le,
                    0.0,
                    EXACT_TOL,
                ),
            ));
        }
    }
    Ok(out)
}

fn normalized_spectrum(g: &WeightedGraph, signless: bool) -> Result<crate::linalg::GenEigen> {
    let pair = if signless {
        HomogeneousPair::signless_p_laplacian(g, 2.0, true)?
    } else {
        HomogeneousPair::graph_p_laplacian(g, 2.0, true)?
    };
    let (a, b) = pair.quadratic_matrices().ok_or_else(|| Error::Invalid("pair is not quadratic".into()))?;
    generalized_eigen(&a, &b)
}

fn suite_cheeger(rng: &mut ChaCha8Rng) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let anchor = "Cheeger inequality";
    for idx in 0..50 {
        let start = Instant::now();
        let n = rng.gen_range(3..=10);
        let mut g = connected_erdos_renyi(n, 0.4, rng);
        if idx % 2 == 1 {
            let edges: Vec<(usize, usize, f64)> =
                g.edges().into_iter().map(|(i, j, _)| (i, j, rng.gen_range(0.5..2.0))).collect();
            g = WeightedGraph::from_edges(n, &edges)?;
        }
        let h = cheeger(&g)?.value;
        let lam2 = normalized_spectrum(&g, false)?.values[1];
        let lower = h * h / 2.0;
        let upper = 2.0 * h;
        let gap = (lower - lam2).max(0.0).max(lam2 - upper);
        out.push(timed(
            start,
            VerificationReport::with_gap(
                format!("cheeger-graph-{idx:02}"),
                anchor,
                describe_graph(&g),
                lam2,
                Relation::Le,
                upper,
                gap,
                EXACT_TOL,
            )
            .detail("h", h)
            .detail("lower", lower),
        ));
    }
    let params = RatioDcaParams { max_iter: 200, inner_iter: 4000, ..RatioDcaParams::default() };
    for idx in 0..10 {
        let n = rng.gen_range(4..=8);
        let m = rng.gen_range(n - 1..=n + 2);
        let (h, ch) = loop {
            let h = random_chemical_hypergraph(n, m, rng);
            let ch = chemical_cheeger(&h)?;
            if ch.value > 0.0 {
                break (h, ch);
            }
        };
        for p in [1.5, 2.0] {
            let start = Instant::now();
            let f1: Arc<dyn HomogeneousFn> = Arc::new(ChemicalEnergy::new(h.clone(), p)?);
            let proj = SubspaceProjection::constants(WeightedPower::new(h.degrees(), p)?);
            let mut starts = vec![indicator(ch.sets[0], n)];
            starts.extend(start_vectors(n, 8, rng.gen()));
            let run = dinkelbach_multistart(&f1, None, &proj, &starts, &params)?;
            let lam = run.estimate.lambda;
            let lower = ch.value.powf(p) / p.powf(p);
            let upper = 2f64.powf(p - 1.0) * ch.value;
            let gap = (lower - lam).max(0.0).max(lam - upper);
            out.push(timed(
                start,
                VerificationReport::with_gap(
                    format!("cheeger-chemical-{idx:02}-p{p}"),
                    anchor,
                    format!("chemical hypergraph n={n} edges={m} p={p}"),
                    lam,
                    Relation::Le,
                    upper,
                    gap,
                    ITER_TOL,
                )
                .detail("h", ch.value)
                .detail("lower", lower)
                .detail("converged", if run.converged { 1.0 } else { 0.0 }),
            ));
        }
    }
    Ok(out)
}

/// Clusters of numerically equal values in an ascending list, as
/// `(first index, multiplicity)` with 1-based indices.
fn clusters(values: &[f64], tol: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let mut j = i + 1;
        while j < values.len() && (values[j] - values[i]).abs() <= tol * (1.0 + values[i].abs()) {
            j += 1;
        }
        out.push((i + 1, j - i));
        i = j;
    }
    out
}

/// Worst excess of support components over `min(i + r - 1, n - i + r)` on
/// eigenvectors and random combinations inside each eigenspace.
fn nodal_excess(values: &[f64], vectors: &[Vec<f64>], carrier: &WeightedGraph, rng: &mut impl Rng) -> Result<f64> {
    let n = values.len();
    let mut worst = f64::NEG_INFINITY;
    for (i, r) in clusters(values, 1e-8) {
        let bound = (i + r - 1).min(n - i + r) as f64;
        let mut cands: Vec<Vec<f64>> = vectors[i - 1..i - 1 + r].to_vec();
        if r > 1 {
            for _ in 0..3 {
                let mut x = vec![0.0; n];
                for v in &vectors[i - 1..i - 1 + r] {
                    let c: f64 = rng.gen_range(-1.0..1.0);
                    x.iter_mut().zip(v).for_each(|(a, b)| *a += c * b);
                }
                cands.push(x);
            }
        }
        for x in cands {
            worst = worst.max(nodal_domains(&x, carrier)? as f64 - bound);
        }
    }
    Ok(worst)
}

fn suite_inertia_nodal(rng: &mut ChaCha8Rng) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for idx in 0..30 {
        let start = Instant::now();
        let n = rng.gen_range(4..=10);
        let g = connected_erdos_renyi(n, 0.4, rng);
        let eig = normalized_spectrum(&g, false)?;
        let le = eig.values.iter().filter(|v| **v <= 1.0 + 1e-9).count();
        let ge = eig.values.iter().filter(|v| **v >= 1.0 - 1e-9).count();
        let alpha = independence_clique(&g)?.alpha as f64;
        let bound = le.min(ge) as f64;
        out.push(timed(
            start,
            VerificationReport::compare(
                format!("inertia-nodal-{idx:02}-inertia"),
                "independence number bounded by eigenvalue counts around 1",
                describe_graph(&g),
                alpha,
                Relation::Le,
                bound,
                0.0,
            ),
        ));
        let start = Instant::now();
        let excess = nodal_excess(&eig.values, &eig.vectors, &g, rng)?;
        out.push(timed(
            start,
            VerificationReport::compare(
                format!("inertia-nodal-{idx:02}-nodal"),
                "support components bounded by eigenvalue index and multiplicity",
                describe_graph(&g),
                excess,
                Relation::Le,
                0.0,
                0.0,
            ),
        ));
    }
    Ok(out)
}

fn suite_bipartite(rng: &mut ChaCha8Rng) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for idx in 0..20 {
        let start = Instant::now();
        let n = rng.gen_range(3..=9);
        let g = random_graph_without_isolated(n, idx % 2 == 0, rng);
        let a = normalized_spectrum(&g, false)?.values;
        let b = normalized_spectrum(&g, true)?.values;
        let gap = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let coincide = gap <= EXACT_TOL;
        let bip = g.is_bipartite();
        out.push(timed(
            start,
            VerificationReport::compare(
                format!("bipartite-{idx:02}"),
                "Laplacian and signless spectra coincide iff bipartite",
                describe_graph(&g),
                if coincide { 1.0 } else { 0.0 },
                Relation::Eq,
                if bip { 1.0 } else { 0.0 },
                0.0,
            )
            .detail("spectral_gap", gap),
        ));
    }
    Ok(out)
}

/// The 30 complexes shared by the identity and zero-multiplicity suites.
fn complex_instances(seed: u64) -> Vec<SimplicialComplex> {
    let rng = &mut seeded_rng(seed, 100);
    let mut out = Vec::new();
    while out.len() < 30 {
        let n = rng.gen_range(4..=7);
        let k = random_two_complex(n, rng);
        if k.dim().is_some_and(|d| d >= 1) {
            out.push(k);
        }
    }
    out
}

fn describe_complex(k: &SimplicialComplex) -> String {
    let counts: Vec<String> = (0..=k.dim().unwrap_or(0)).map(|d| k.count(d).to_string()).collect();
    format!("complex f-vector ({})", counts.join(","))
}

/// Spectra of the up Laplacian and the anti-signed Laplacian on the
/// `d`-simplices with a coface.
#[derive(Debug, Clone)]
pub struct UpSpectra {
    /// Indices of the `d`-simplices with positive up degree.
    pub keep: Vec<usize>,
    /// Eigenvalues of `(B Bᵀ, D)` restricted to `keep`, ascending.
    pub up: Vec<f64>,
    /// Eigenvalues of the anti-signed normalized Laplacian, ascending.
    pub anti: Vec<f64>,
    /// `max_i |d+2 - up[m-1-i] - (d+1) anti[i]|`.
    pub identity_gap: f64,
    /// Multiplicity of `d+2` in `up`.
    pub top_multiplicity: usize,
    /// Balanced components of the anti-signed graph on `keep`.
    pub balanced: usize,
}

pub fn up_spectra(kc: &SimplicialComplex, d: usize) -> Result<UpSpectra> {
    let deg = kc.up_degrees(d);
    let keep: Vec<usize> = (0..deg.len()).filter(|i| deg[*i] > 0.0).collect();
    let m = keep.len();
    let b = boundary_matrix(kc, d + 1)?.to_f64();
    let up_m = b.mul(&b.transpose()).principal(&keep);
    let dk: Vec<f64> = keep.iter().map(|i| deg[*i]).collect();
    let up = generalized_eigen(&up_m, &Matrix::diag(&dk))?.values;
    let sg = anti_signed_graph(kc, d)?;
    let sl = sg.laplacian().principal(&keep);
    let dd: Vec<f64> = dk.iter().map(|v| (d + 1) as f64 * v).collect();
    let anti = generalized_eigen(&sl, &Matrix::diag(&dd))?.values;
    let top = (d + 2) as f64;
    let identity_gap = (0..m).map(|i| (top - up[m - 1 - i] - (d + 1) as f64 * anti[i]).abs()).fold(0.0, f64::max);
    let edges: Vec<(usize, usize, f64)> = sg
        .edges()
        .into_iter()
        .filter_map(|(i, j, w)| {
            let a = keep.iter().position(|x| *x == i)?;
            let c = keep.iter().position(|x| *x == j)?;
            Some((a, c, w))
        })
        .collect();
    let balanced = balanced_components(&SignedGraph::from_edges(m, &edges)?).balanced;
    let top_multiplicity = up.iter().filter(|v| (**v - top).abs() <= 1e-8).count();
    Ok(UpSpectra { keep, up, anti, identity_gap, top_multiplicity, balanced })
}

fn suite_simplicial_identity(seed: u64) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for (idx, kc) in complex_instances(seed).iter().enumerate() {
        let dim = kc.dim().unwrap_or(0);
        for d in 0..dim.min(2) {
            let start = Instant::now();
            let sp = up_spectra(kc, d)?;
            let elapsed = start.elapsed().as_secs_f64() / 2.0;
            let mut r = VerificationReport::compare(
                format!("simplicial-identity-{idx:02}-d{d}"),
                "up Laplacian and anti-signed Laplacian spectra are affinely related",
                describe_complex(kc),
                sp.identity_gap,
                Relation::Le,
                0.0,
                EXACT_TOL,
            );
            r.runtime = elapsed;
            out.push(r);
            let mut r = VerificationReport::compare(
                format!("simplicial-identity-{idx:02}-d{d}-balanced"),
                "multiplicity of the top eigenvalue equals the balanced component count",
                describe_complex(kc),
                sp.top_multiplicity as f64,
                Relation::Eq,
                sp.balanced as f64,
                0.0,
            );
            r.runtime = elapsed;
            out.push(r);
        }
    }
    Ok(out)
}

fn suite_zero_multiplicity(seed: u64) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for (idx, kc) in complex_instances(seed).iter().enumerate() {
        let dim = kc.dim().unwrap_or(0);
        for d in 0..dim.min(2) {
            let start = Instant::now();
            let bi = boundary_matrix(kc, d + 1)?;
            let b = bi.to_f64();
            let up = b.mul(&b.transpose());
            let vals = symmetric_eigen(&up)?.values;
            let scale = 1.0 + vals.last().copied().unwrap_or(0.0);
            let zeros = vals.iter().filter(|v| v.abs() <= 1e-9 * scale).count();
            let kernel = kc.count(d) - bi.rank();
            let deg = kc.up_degrees(d);
            let keep: Vec<usize> = (0..deg.len()).filter(|i| deg[*i] > 0.0).collect();
            let dk: Vec<f64> = keep.iter().map(|i| deg[*i]).collect();
            let norm = generalized_eigen(&up.principal(&keep), &Matrix::diag(&dk))?.values;
            let norm_zeros = norm.iter().filter(|v| v.abs() <= 1e-9).count();
            let need = (d + 1) as f64;
            let gap =
                (need - zeros as f64).max(0.0).max(need - norm_zeros as f64).max((zeros as f64 - kernel as f64).abs());
            out.push(timed(
                start,
                VerificationReport::with_gap(
                    format!("zero-multiplicity-{idx:02}-d{d}"),
                    "zero eigenvalue of the up Laplacian has multiplicity at least d+1",
                    describe_complex(kc),
                    zeros as f64,
                    Relation::Ge,
                    need,
                    gap,
                    0.0,
                )
                .detail("kernel_dimension", kernel as f64)
                .detail("normalized_zeros", norm_zeros as f64),
            ));
        }
    }
    Ok(out)
}

fn suite_huang() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for m in 2..=4usize {
        let start = Instant::now();
        let h = huang_signing(m)?;
        let size = 1usize << m;
        let sq = h.mul(&h);
        let mut err = 0i64;
        for i in 0..size {
            for j in 0..size {
                let want = if i == j { m as i64 } else { 0 };
                err = err.max((sq[(i, j)] - want).abs());
            }
        }
        let q = hypercube(m)?;
        let adj = q.adjacency();
        let abs = h.map_abs().to_f64();
        let adj_err = (0..size)
            .flat_map(|i| (0..size).map(move |j| (i, j)))
            .fold(0.0f64, |a, (i, j)| a.max((abs[(i, j)] - adj[(i, j)]).abs()));
        out.push(timed(
            start,
            VerificationReport::with_gap(
                format!("huang-m{m}-signing"),
                "signed hypercube matrix squares to m times the identity",
                format!("Q{m}"),
                err as f64,
                Relation::Eq,
                0.0,
                (err as f64).max(adj_err),
                0.0,
            ),
        ));
        let start = Instant::now();
        let s = size / 2 + 1;
        let hf = h.to_f64();
        let mut min_deg = f64::INFINITY;
        let mut min_lam = f64::INFINITY;
        let mut lam_above_deg = 0.0f64;
        let mut count = 0u64;
        for mask in 0u32..1 << size {
            if mask.count_ones() as usize != s {
                continue;
            }
            count += 1;
            let a = SubsetMask(mask);
            let d = q.induced_max_degree(a);
            let idx: Vec<usize> = a.indices().collect();
            let lam = *symmetric_eigen(&hf.principal(&idx))?.values.last().unwrap_or(&f64::NAN);
            min_deg = min_deg.min(d);
            min_lam = min_lam.min(lam);
            lam_above_deg = lam_above_deg.max(lam - d);
        }
        let root = (m as f64).sqrt();
        let gap = (root - min_deg).max(0.0).max(root - min_lam).max(lam_above_deg);
        out.push(timed(
            start,
            VerificationReport::with_gap(
                format!("huang-m{m}-induced"),
                "induced subgraphs on half plus one vertices have max degree at least sqrt(m)",
                format!("Q{m}, {count} subsets of size {s}"),
                min_deg,
                Relation::Ge,
                root,
                gap,
                EXACT_TOL,
            )
            .detail("min_signed_lambda_max", min_lam),
        ));
    }
    Ok(out)
}

fn suite_hypergraph_inertia(rng: &mut ChaCha8Rng) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for idx in 0..20 {
        let start = Instant::now();
        let n = rng.gen_range(4..=9);
        let g = erdos_renyi(n, 0.5, rng);
        let hg = UniformHypergraph::from_graph(&g);
        let t = adjacency_tensor(&hg)?;
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = t.get(&[i, j])?;
            }
        }
        let eig = symmetric_eigen(&a)?;
        let le = eig.values.iter().filter(|v| **v <= 1e-9).count();
        let ge = eig.values.iter().filter(|v| **v >= -1e-9).count();
        let alpha = hypergraph_independence_clique(&hg)?.alpha as f64;
        out.push(timed(
            start,
            VerificationReport::compare(
                format!("hypergraph-inertia-{idx:02}-inertia"),
                "independence number bounded by adjacency inertia",
                format!("2-uniform {}", describe_graph(&g)),
                alpha,
                Relation::Le,
                le.min(ge) as f64,
                0.0,
            ),
        ));
        let start = Instant::now();
        let vectors: Vec<Vec<f64>> = (0..n).map(|i| eig.vector(i)).collect();
        let excess = nodal_excess(&eig.values, &vectors, &g, rng)?;
        out.push(timed(
            start,
            VerificationReport::compare(
                format!("hypergraph-inertia-{idx:02}-nodal"),
                "support components bounded by eigenvalue index and multiplicity",
                format!("2-uniform {}", describe_graph(&g)),
                excess,
                Relation::Le,
                0.0,
                0.0,
            ),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_gaps() {
        assert_eq!(relation_gap(1.0, Relation::Le, 2.0), 0.0);
        assert_eq!(relation_gap(3.0, Relation::Le, 2.0), 1.0);
        assert_eq!(relation_gap(1.0, Relation::Ge, 2.0), 1.0);
        assert_eq!(relation_gap(f64::INFINITY, Relation::Eq, f64::INFINITY), 0.0);
        assert!(relation_gap(f64::NAN, Relation::Eq, 0.0).is_infinite());
        let r = VerificationReport::compare("x", "a", "i", 0.75, Relation::Lt, 1.0, 1e-12);
        assert!(r.passed());
        let r = VerificationReport::compare("x", "a", "i", 1.0, Relation::Lt, 1.0, 1e-12);
        assert!(!r.passed());
    }

    #[test]
    fn path3_saddle_values() {
        let (f, g) = path3_saddle_instance().unwrap();
        let r = check_saddle_transfer("t", &f, &g, 50, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["discrete_minimax"], 2.0);
        assert_eq!(r.details["discrete_maximin"], 1.0);
        assert!((r.details["continuous_minimax"] - 2f64.sqrt()).abs() < 1e-8, "{r:?}");
        assert!((r.details["continuous_maximin"] - 2f64.sqrt()).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn payoff_game_matches_lp() {
        let c = vec![vec![0.0, 1.0, -1.0], vec![-1.0, 0.0, 1.0], vec![1.0, -1.0, 0.0]];
        let r = check_payoff_game("t", &c).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.lhs.abs() < 1e-9);
        let c = vec![vec![3.0, 1.0, 2.0], vec![0.5, 2.0, 1.0], vec![1.0, 1.5, 4.0]];
        assert!(check_payoff_game("t", &c).unwrap().passed());
    }

    #[test]
    fn spectral_radius_sandwich() {
        for g in [WeightedGraph::path(4), WeightedGraph::complete(4), WeightedGraph::cycle(5)] {
            let r = check_spectral_radius("t", &g).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = check_spectral_radius("t", &WeightedGraph::path(3)).unwrap();
        assert!((r.rhs - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn maxcut_of_c5() {
        let r = check_maxcut("t", &WeightedGraph::cycle(5), 200, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.lhs, 4.0);
    }

    #[test]
    fn sion_random_instances() {
        let mut rng = seeded_rng(7, 0);
        for _ in 0..3 {
            let (f, g) = random_sion_instance(3, &mut rng).unwrap();
            let r = check_sion_case("t", &f, &g).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
    }

    #[test]
    fn sion_skips_without_structure() {
        let f =
            SetTupleFunction::tabulate(2, 2, |t| if t[0].len() == 1 && t[1].len() == 1 { 1.0 } else { 0.0 }).unwrap();
        let g = SetTupleFunction::tabulate(2, 2, |t| (t[0].len() * t[1].len()) as f64).unwrap();
        assert_eq!(check_sion_case("t", &f, &g).unwrap().verdict, Verdict::Skip);
    }

    #[test]
    fn quasiconcave_minimum_at_indicator() {
        let mut rng = seeded_rng(5, 0);
        for h in [QuasiConcave::Product2, QuasiConcave::Symmetric2] {
            let fs: Vec<_> = (0..h.arity()).map(|_| random_positive_function(4, &mut rng).unwrap()).collect();
            let r = check_quasiconcave_composition("t", h, &fs, 300, 9).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn chain_and_diagonal_equalities() {
        let mut rng = seeded_rng(11, 0);
        let f = SetTupleFunction::tabulate(3, 2, |t| {
            if t.iter().any(|a| a.is_empty()) {
                0.0
            } else {
                rng.gen_range(0.0..1.0)
            }
        })
        .unwrap();
        let g = SetTupleFunction::tabulate(3, 2, |t| if t.iter().any(|a| a.is_empty()) { 0.0 } else { 1.0 }).unwrap();
        for fam in [PairFamily::Chain, PairFamily::AllNonempty, PairFamily::Diagonal] {
            let r = check_indicator_and_equalities("t", &f, &g, fam, 200, 4).unwrap();
            assert!(r.passed(), "{fam:?} {r:?}");
        }
    }

    #[test]
    fn selector_names() {
        assert_eq!(Suite::parse_selector("all").unwrap().len(), 15);
        assert_eq!(Suite::parse_selector("k5").unwrap(), vec![Suite::K5]);
        assert!(Suite::parse_selector("nope").is_none());
        for s in Suite::ALL {
            assert_eq!(Suite::parse_selector(s.name()).unwrap(), vec![s]);
        }
    }

    #[test]
    fn k5_suite_passes() {
        let r = Suite::K5.run(42).unwrap();
        assert!(r.iter().all(|x| x.passed()), "{r:#?}");
    }

    #[test]
    fn huang_suite_passes() {
        let r = Suite::Huang.run(42).unwrap();
        assert!(r.iter().all(|x| x.passed()), "{r:#?}");
    }

    #[test]
    fn suites_are_deterministic() {
        let a = serde_json::to_string(&Suite::Bipartite.run(3).unwrap()).unwrap();
        let b = serde_json::to_string(&Suite::Bipartite.run(3).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
