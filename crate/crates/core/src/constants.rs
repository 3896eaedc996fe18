//! Exact combinatorial constants by enumeration, and the continuous
//! ascents they are compared against.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::setfn::SubsetMask;
use crate::spectra::{start_vectors, HomogeneousPair};
use crate::structures::{
    anti_signed_graph, boundary_matrix, ChemicalHypergraph, SimplicialComplex, UniformHypergraph, WeightedGraph,
};

pub const MAX_CHEEGER_N: usize = 20;
pub const MAX_KWAY_N: usize = 14;
const KWAY_WORK_CAP: f64 = 5e7;
const MULTISET_CAP: f64 = 4e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheegerVariant {
    Plain,
    KWay(usize),
    Dual(usize),
    Chemical,
    Simplicial { d: usize, k: usize },
    Down { d: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheegerReport {
    pub value: f64,
    /// Optimal sets; for pair-based variants consecutive entries form a pair.
    pub sets: Vec<SubsetMask>,
    pub enumerated: u64,
    pub variant: CheegerVariant,
}

fn check_n(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Cap(format!("enumeration needs n <= {cap}, got {n}")));
    }
    Ok(())
}

/// `min |∂A| / min(vol A, vol Aᶜ)` over nonempty proper `A`.
pub fn cheeger(g: &WeightedGraph) -> Result<CheegerReport> {
    let n = g.n();
    check_n(n, MAX_CHEEGER_N)?;
    if n < 2 {
        return Err(Error::Invalid("Cheeger constant needs at least two vertices".into()));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let a = SubsetMask::from_indices(&comps[0]);
        return Ok(CheegerReport { value: 0.0, sets: vec![a], enumerated: 0, variant: CheegerVariant::Plain });
    }
    let deg = g.degrees();
    let total: f64 = deg.iter().sum();
    let nbrs: Vec<Vec<(usize, f64)>> = (0..n).map(|i| g.neighbors(i).map(|j| (j, g.weight(i, j))).collect()).collect();
    // Gray code over subsets not containing the last vertex.
    let mut mask = 0u32;
    let mut cut = 0.0;
    let mut vol = 0.0;
    let mut best = (f64::INFINITY, 0u32);
    let steps: u64 = 1 << (n - 1);
    for s in 1..steps {
        let v = s.trailing_zeros() as usize;
        let inside = mask >> v & 1 == 1;
        for &(j, w) in &nbrs[v] {
            let j_in = mask >> j & 1 == 1;
            if j_in == inside {
                cut += w;
            } else {
                cut -= w;
            }
        }
        if inside {
            vol -= deg[v];
        } else {
            vol += deg[v];
        }
        mask ^= 1 << v;
        let r = cut / vol.min(total - vol);
        if r < best.0 {
            best = (r, mask);
        }
    }
    let a = SubsetMask(best.1);
    let value = g.cut(a) / g.volume(a).min(g.volume(a.complement(n)));
    Ok(CheegerReport { value, sets: vec![a], enumerated: steps - 1, variant: CheegerVariant::Plain })
}

/// `min over disjoint nonempty U_1..U_k of max_i table[U_i]` (or max-min).
/// Blocks are ordered by their lowest element; entries that are `NaN` are
/// not admissible.
fn disjoint_search(n: usize, table: &[f64], k: usize, minimize: bool) -> Result<(f64, Vec<u32>, u64)> {
    if k == 0 || k > n {
        return Err(Error::Invalid(format!("k = {k} outside 1..={n}")));
    }
    let work = ((k + 1) as f64).powi(n as i32);
    if work > KWAY_WORK_CAP * (1..=k).map(|v| v as f64).product::<f64>() {
        return Err(Error::Cap(format!("disjoint {k}-tuples over {n} elements exceed the enumeration cap")));
    }
    struct S<'a> {
        table: &'a [f64],
        k: usize,
        minimize: bool,
        best: f64,
        best_sets: Vec<u32>,
        chosen: Vec<u32>,
        count: u64,
        full: u32,
    }
    fn better(s: &S, a: f64, b: f64) -> bool {
        if s.minimize {
            a < b
        } else {
            a > b
        }
    }
    fn rec(s: &mut S, used: u32, min_bit: u32, cur: f64) {
        if s.chosen.len() == s.k {
            s.count += 1;
            if better(s, cur, s.best) {
                s.best = cur;
                s.best_sets = s.chosen.clone();
            }
            return;
        }
        let free = s.full & !used;
        // Lowest element of the next block is some free vertex >= min_bit.
        let mut lows = free & !((1u32 << min_bit) - 1);
        while lows != 0 {
            let low = lows.trailing_zeros();
            lows &= lows - 1;
            let rest = free & !((1u32 << (low + 1)) - 1);
            let mut sub = rest;
            loop {
                let block = sub | (1 << low);
                let v = s.table[block as usize];
                if !v.is_nan() {
                    let next = if s.chosen.is_empty() {
                        v
                    } else if s.minimize {
                        cur.max(v)
                    } else {
                        cur.min(v)
                    };
                    if better(s, next, s.best) || s.best.is_infinite() && next == s.best {
                        s.chosen.push(block);
                        rec(s, used | block, low + 1, next);
                        s.chosen.pop();
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
    }
    let mut s = S {
        table,
        k,
        minimize,
        best: if minimize { f64::INFINITY } else { f64::NEG_INFINITY },
        best_sets: Vec::new(),
        chosen: Vec::new(),
        count: 0,
        full: if n == 32 { u32::MAX } else { (1u32 << n) - 1 },
    };
    rec(&mut s, 0, 0, if minimize { f64::NEG_INFINITY } else { f64::INFINITY });
    if s.best_sets.is_empty() {
        return Err(Error::Invalid(format!("no admissible family of {k} disjoint blocks")));
    }
    Ok((s.best, s.best_sets, s.count))
}

/// `h_k = min over disjoint nonempty S_1..S_k of max_i |∂S_i| / vol(S_i)`.
pub fn k_way_cheeger(g: &WeightedGraph, k: usize) -> Result<CheegerReport> {
    let n = g.n();
    check_n(n, MAX_KWAY_N)?;
    let table: Vec<f64> = (0..1u32 << n)
        .map(|m| {
            let a = SubsetMask(m);
            let vol = g.volume(a);
            if m == 0 || vol == 0.0 {
                f64::NAN
            } else {
                g.cut(a) / vol
            }
        })
        .collect();
    let (value, sets, enumerated) = disjoint_search(n, &table, k, true)?;
    let sets: Vec<SubsetMask> = sets.into_iter().map(SubsetMask).collect();
    let value = if sets.is_empty() {
        value
    } else {
        sets.iter().map(|&a| g.cut(a) / g.volume(a)).fold(f64::NEG_INFINITY, f64::max)
    };
    Ok(CheegerReport { value, sets, enumerated, variant: CheegerVariant::KWay(k) })
}

/// `h⁺_k = max over disjoint pairs of min_i 2|E(V_{2i-1}, V_{2i})| / vol(V_{2i-1} ∪ V_{2i})`.
pub fn dual_cheeger_k(g: &WeightedGraph, k: usize) -> Result<CheegerReport> {
    let n = g.n();
    check_n(n, MAX_KWAY_N)?;
    let mut split = vec![0u32; 1 << n];
    let table: Vec<f64> = (0..1u32 << n)
        .map(|u| {
            let um = SubsetMask(u);
            let vol = g.volume(um);
            if u == 0 || vol == 0.0 {
                return f64::NAN;
            }
            let mut best = (f64::NEG_INFINITY, 0u32);
            let mut a = u;
            loop {
                let e = g.e_between(SubsetMask(a), SubsetMask(u & !a));
                if e > best.0 {
                    best = (e, a);
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & u;
            }
            split[u as usize] = best.1;
            2.0 * best.0 / vol
        })
        .collect();
    let (value, blocks, enumerated) = disjoint_search(n, &table, k, false)?;
    let mut sets = Vec::new();
    for u in blocks {
        let a = split[u as usize];
        sets.push(SubsetMask(a));
        sets.push(SubsetMask(u & !a));
    }
    Ok(CheegerReport { value, sets, enumerated, variant: CheegerVariant::Dual(k) })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxcutReport {
    pub value: f64,
    pub side: SubsetMask,
    /// Largest sampled value of the continuous form.
    pub sample_max: f64,
    /// Continuous form at `(1_side, 1_{V∖side})`.
    pub witness_value: f64,
    pub samples: usize,
}

/// `Σ_{i,j} w_ij x_i y_j / (‖x‖_∞ ‖y‖_∞)` for `x, y ≥ 0` with disjoint supports.
pub fn maxcut_continuous(g: &WeightedGraph, x: &[f64], y: &[f64]) -> Result<f64> {
    let n = g.n();
    if x.len() != n || y.len() != n {
        return Err(Error::Dimension { expected: n, got: x.len().min(y.len()) });
    }
    if x.iter().chain(y).any(|&v| v < 0.0) || x.iter().zip(y).any(|(a, b)| a * b != 0.0) {
        return Err(Error::Invalid("continuous maxcut needs x, y >= 0 with xᵀy = 0".into()));
    }
    let nx = x.iter().cloned().fold(0.0, f64::max);
    let ny = y.iter().cloned().fold(0.0, f64::max);
    if nx == 0.0 || ny == 0.0 {
        return Ok(0.0);
    }
    let s: f64 = g.edges().iter().map(|&(i, j, w)| w * (x[i] * y[j] + x[j] * y[i])).sum();
    Ok(s / (nx * ny))
}

pub fn maxcut(g: &WeightedGraph, samples: usize, seed: u64) -> Result<MaxcutReport> {
    let n = g.n();
    check_n(n, 24)?;
    let mut best = (0.0, SubsetMask(0));
    if n >= 2 {
        for m in 0..(1u32 << (n - 1)) {
            let a = SubsetMask(m);
            let c = g.cut(a);
            if c > best.0 {
                best = (c, a);
            }
        }
    }
    let side = best.1;
    let ind = |a: SubsetMask| -> Vec<f64> { (0..n).map(|i| if a.contains(i) { 1.0 } else { 0.0 }).collect() };
    let witness_value = maxcut_continuous(g, &ind(side), &ind(side.complement(n)))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample_max: f64 = 0.0;
    for _ in 0..samples {
        let mut x = vec![0.0; n];
        let mut y = vec![0.0; n];
        for i in 0..n {
            match rng.gen_range(0..3) {
                0 => x[i] = rng.gen_range(0.0..1.0),
                1 => y[i] = rng.gen_range(0.0..1.0),
                _ => {}
            }
        }
        sample_max = sample_max.max(maxcut_continuous(g, &x, &y)?);
    }
    Ok(MaxcutReport { value: best.0, side, sample_max, witness_value, samples })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndependenceReport {
    pub alpha: usize,
    pub alpha_set: SubsetMask,
    pub omega: usize,
    pub omega_set: SubsetMask,
}

fn max_clique(n: usize, adj: &[u32]) -> u32 {
    fn rec(adj: &[u32], r: u32, mut p: u32, best: &mut u32) {
        if p == 0 {
            if r.count_ones() > best.count_ones() {
                *best = r;
            }
            return;
        }
        while p != 0 {
            if r.count_ones() + p.count_ones() <= best.count_ones() {
                return;
            }
            let v = p.trailing_zeros();
            p &= !(1 << v);
            rec(adj, r | 1 << v, p & adj[v as usize], best);
        }
    }
    let mut best = if n > 0 { 1 } else { 0 };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    rec(adj, 0, full, &mut best);
    best
}

/// Independence and clique numbers by branch and bound.
pub fn independence_clique(g: &WeightedGraph) -> Result<IndependenceReport> {
    let n = g.n();
    check_n(n, 24)?;
    let adj: Vec<u32> = (0..n).map(|i| g.neighbors(i).fold(0u32, |m, j| m | 1 << j)).collect();
    let full = (1u32 << n) - 1;
    let co: Vec<u32> = (0..n).map(|i| full & !adj[i] & !(1 << i)).collect();
    let w = max_clique(n, &adj);
    let a = max_clique(n, &co);
    Ok(IndependenceReport {
        alpha: a.count_ones() as usize,
        alpha_set: SubsetMask(a),
        omega: w.count_ones() as usize,
        omega_set: SubsetMask(w),
    })
}

/// Largest vertex set containing no hyperedge, and largest set all of whose
/// `k`-subsets are hyperedges.
pub fn hypergraph_independence_clique(h: &UniformHypergraph) -> Result<IndependenceReport> {
    let n = h.n();
    check_n(n, 24)?;
    let edges: Vec<u32> = h.edges().iter().map(|e| SubsetMask::from_indices(e).0).collect();
    let k = h.k();
    fn indep(i: usize, n: usize, cur: u32, edges: &[u32], best: &mut u32) {
        if cur.count_ones() + (n - i) as u32 <= best.count_ones() {
            return;
        }
        if i == n {
            *best = cur;
            return;
        }
        let with = cur | 1 << i;
        if edges.iter().all(|&e| e & with != e) {
            indep(i + 1, n, with, edges, best);
        }
        indep(i + 1, n, cur, edges, best);
    }
    fn is_clique(set: u32, k: usize, edges: &std::collections::HashSet<u32>) -> bool {
        let idx: Vec<u32> = (0..32).filter(|&i| set >> i & 1 == 1).collect();
        if idx.len() < k {
            return true;
        }
        let mut ok = true;
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            let m = comb.iter().fold(0u32, |m, &c| m | 1 << idx[c]);
            if !edges.contains(&m) {
                ok = false;
                break;
            }
            let mut t = k;
            while t > 0 && comb[t - 1] == idx.len() - k + t - 1 {
                t -= 1;
            }
            if t == 0 {
                break;
            }
            comb[t - 1] += 1;
            for u in t..k {
                comb[u] = comb[u - 1] + 1;
            }
        }
        ok
    }
    fn clique(i: usize, n: usize, cur: u32, k: usize, edges: &std::collections::HashSet<u32>, best: &mut u32) {
        if cur.count_ones() + (n - i) as u32 <= best.count_ones() {
            return;
        }
        if i == n {
            *best = cur;
            return;
        }
        let with = cur | 1 << i;
        if is_clique(with, k, edges) {
            clique(i + 1, n, with, k, edges, best);
        }
        clique(i + 1, n, cur, k, edges, best);
    }
    let mut a = 0u32;
    indep(0, n, 0, &edges, &mut a);
    let set: std::collections::HashSet<u32> = edges.iter().copied().collect();
    let mut w = 0u32;
    clique(0, n, 0, k, &set, &mut w);
    Ok(IndependenceReport {
        alpha: a.count_ones() as usize,
        alpha_set: SubsetMask(a),
        omega: w.count_ones() as usize,
        omega_set: SubsetMask(w),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelIndependence {
    pub alpha: usize,
    pub blocks: Vec<SubsetMask>,
}

/// Largest `k` with disjoint `U_1..U_k` such that `F/G = c` on
/// `span(1_{U_1}, …, 1_{U_k}) ∖ {G = 0}`. Constancy is tested at
/// `t_a e_a + t_b e_b` for all pairs and signs, plus seeded random points.
pub fn lambda_level_independence(pair: &HomogeneousPair, c: f64, tol: f64, seed: u64) -> Result<LevelIndependence> {
    let n = pair.dim();
    check_n(n, 10)?;
    let ind = |u: u32| -> Vec<f64> { (0..n).map(|i| if u >> i & 1 == 1 { 1.0 } else { 0.0 }).collect() };
    let at = |blocks: &[u32], t: &[f64]| -> Vec<f64> {
        let mut x = vec![0.0; n];
        for (b, &ti) in blocks.iter().zip(t) {
            for i in 0..n {
                if b >> i & 1 == 1 {
                    x[i] = ti;
                }
            }
        }
        x
    };
    let level_ok = |x: &[f64]| -> bool {
        let g = pair.g.eval(x);
        if g.abs() <= 1e-300 {
            return true;
        }
        (pair.f.eval(x) / g - c).abs() <= tol * c.abs().max(1.0)
    };
    let candidates: Vec<u32> = (1..1u32 << n).filter(|&u| level_ok(&ind(u))).collect();
    let consistent = |blocks: &[u32]| -> bool {
        let k = blocks.len();
        for a in 0..k {
            for b in (a + 1)..k {
                for (sa, sb) in [(1.0, 1.0), (1.0, -1.0), (1.0, 0.5), (0.5, -1.0)] {
                    let mut t = vec![0.0; k];
                    t[a] = sa;
                    t[b] = sb;
                    if !level_ok(&at(blocks, &t)) {
                        return false;
                    }
                }
            }
        }
        if k >= 2 {
            for t in start_vectors(k, 8, seed) {
                if !level_ok(&at(blocks, &t)) {
                    return false;
                }
            }
        }
        true
    };
    struct St {
        best: Vec<u32>,
    }
    fn rec(
        cands: &[u32],
        from: usize,
        used: u32,
        cur: &mut Vec<u32>,
        n: usize,
        st: &mut St,
        ok: &dyn Fn(&[u32]) -> bool,
    ) {
        if cur.len() > st.best.len() {
            st.best = cur.clone();
        }
        let free = n as u32 - used.count_ones();
        if cur.len() + free as usize <= st.best.len() {
            return;
        }
        for (idx, &u) in cands.iter().enumerate().skip(from) {
            if u & used != 0 {
                continue;
            }
            cur.push(u);
            if ok(cur) {
                rec(cands, idx + 1, used | u, cur, n, st, ok);
            }
            cur.pop();
        }
    }
    // Smaller blocks first so that the bound prunes early.
    let mut cands = candidates;
    cands.sort_by_key(|u| (u.count_ones(), *u));
    let mut st = St { best: Vec::new() };
    rec(&cands, 0, 0, &mut Vec::new(), n, &mut st, &consistent);
    Ok(LevelIndependence { alpha: st.best.len(), blocks: st.best.into_iter().map(SubsetMask).collect() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MotzkinStrausReport {
    pub omega: usize,
    /// `1 - 1/ω`.
    pub exact: f64,
    pub ascent_best: f64,
    /// Value at the uniform vector on a maximum clique.
    pub clique_value: f64,
    pub starts: usize,
    pub stagnated: usize,
}

/// `max_{x ∈ Δ} x^T A x` by replicator updates `x_i <- x_i (Ax)_i / xᵀAx`.
fn replicator(adj: &[Vec<f64>], x0: &[f64], max_iter: usize) -> (f64, bool) {
    let n = x0.len();
    let mut x = x0.to_vec();
    let s: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= s);
    let mut val = 0.0;
    for _ in 0..max_iter {
        let ax: Vec<f64> = (0..n).map(|i| (0..n).map(|j| adj[i][j] * x[j]).sum()).collect();
        let v: f64 = (0..n).map(|i| x[i] * ax[i]).sum();
        if v <= 0.0 {
            return (0.0, false);
        }
        let next: Vec<f64> = (0..n).map(|i| x[i] * ax[i] / v).collect();
        let change: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        val = v;
        if change < 1e-15 {
            return (val, false);
        }
    }
    (val, true)
}

fn quadratic_on_simplex(adj: &[Vec<f64>], x: &[f64]) -> f64 {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| adj[i][j] * x[i] * x[j]).sum::<f64>()).sum()
}

pub fn motzkin_straus(g: &WeightedGraph, starts: usize, seed: u64) -> Result<MotzkinStrausReport> {
    let n = g.n();
    check_n(n, 24)?;
    if n == 0 {
        return Err(Error::Invalid("empty graph".into()));
    }
    let adj: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| if g.weight(i, j) != 0.0 { 1.0 } else { 0.0 }).collect()).collect();
    let rep = independence_clique(g)?;
    let omega = rep.omega;
    let exact = 1.0 - 1.0 / omega as f64;
    let clique_x: Vec<f64> = (0..n).map(|i| if rep.omega_set.contains(i) { 1.0 / omega as f64 } else { 0.0 }).collect();
    let clique_value = quadratic_on_simplex(&adj, &clique_x);
    let mut inits: Vec<Vec<f64>> = vec![vec![1.0; n]];
    for v in 0..n {
        inits.push((0..n).map(|j| if j == v || adj[v][j] > 0.0 { 1.0 } else { 1e-3 }).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..starts {
        inits.push((0..n).map(|_| rng.gen_range(0.01..1.0)).collect());
    }
    let mut best: f64 = 0.0;
    let mut stagnated = 0;
    for x0 in &inits {
        let (v, capped) = replicator(&adj, x0, 200_000);
        stagnated += capped as usize;
        best = best.max(v);
    }
    Ok(MotzkinStrausReport { omega, exact, ascent_best: best, clique_value, starts: inits.len(), stagnated })
}

/// `‖x‖₁² / (‖x‖₁² - 2 Σ_{ij ∉ E} x_i x_j)`; its maximum is `α(G)`.
pub fn independence_representation(g: &WeightedGraph, x: &[f64]) -> f64 {
    let n = g.n();
    let s: f64 = x.iter().map(|v| v.abs()).sum();
    let mut non = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            if g.weight(i, j) == 0.0 {
                non += x[i] * x[j];
            }
        }
    }
    s * s / (s * s - 2.0 * non)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianReport {
    /// `max_U #{e ⊆ U} / |U|^k`.
    pub discrete: f64,
    pub discrete_set: SubsetMask,
    /// Best multiplicative-update value of `Σ_e ∏ x / ‖x‖₁^k`.
    pub continuous: f64,
    /// The hyperedges are exactly the `k`-cliques of the 2-shadow.
    pub clique_hypergraph: bool,
}

fn lagrangian_value(edges: &[Vec<usize>], x: &[f64]) -> f64 {
    let s: f64 = x.iter().sum();
    let k = edges.first().map_or(1, |e| e.len()) as i32;
    edges.iter().map(|e| e.iter().map(|&i| x[i]).product::<f64>()).sum::<f64>() / s.powi(k)
}

pub fn hypergraph_lagrangian(h: &UniformHypergraph, starts: usize, seed: u64) -> Result<LagrangianReport> {
    let n = h.n();
    check_n(n, 20)?;
    let k = h.k();
    let edges = h.edges();
    let mut discrete = (0.0, SubsetMask(0));
    for u in 1..1u32 << n {
        let m = SubsetMask(u);
        let v = h.edges_within(m) as f64 / (m.len() as f64).powi(k as i32);
        if v > discrete.0 {
            discrete = (v, m);
        }
    }
    let mut inits = vec![vec![1.0; n]];
    inits.extend(start_vectors(n, starts, seed).into_iter().map(|v| v.into_iter().map(|a| a.abs() + 0.01).collect()));
    let mut best: f64 = 0.0;
    for x0 in inits {
        let mut x = x0;
        let s: f64 = x.iter().sum();
        x.iter_mut().for_each(|v| *v /= s);
        for _ in 0..20_000 {
            let mut grad = vec![0.0; n];
            let mut p = 0.0;
            for e in edges {
                let prod: f64 = e.iter().map(|&i| x[i]).product();
                p += prod;
                for &i in e {
                    if x[i] > 0.0 {
                        grad[i] += prod / x[i];
                    } else {
                        grad[i] += e.iter().filter(|&&j| j != i).map(|&j| x[j]).product::<f64>();
                    }
                }
            }
            if p <= 0.0 {
                break;
            }
            let next: Vec<f64> = (0..n).map(|i| x[i] * grad[i] / (k as f64 * p)).collect();
            let change: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
            x = next;
            if change < 1e-15 {
                break;
            }
        }
        best = best.max(lagrangian_value(edges, &x));
    }
    let shadow = {
        let mut g = WeightedGraph::new(n);
        for e in edges {
            for a in 0..e.len() {
                for b in (a + 1)..e.len() {
                    if g.weight(e[a], e[b]) == 0.0 {
                        g.add_edge(e[a], e[b], 1.0)?;
                    }
                }
            }
        }
        g
    };
    let mut clique_count = 0usize;
    for u in 1..1u32 << n {
        let m = SubsetMask(u);
        if m.len() == k {
            let idx: Vec<usize> = m.indices().collect();
            let all = (0..k).all(|a| ((a + 1)..k).all(|b| shadow.weight(idx[a], idx[b]) != 0.0));
            clique_count += all as usize;
        }
    }
    Ok(LagrangianReport {
        discrete: discrete.0,
        discrete_set: discrete.1,
        continuous: best,
        clique_hypergraph: clique_count == edges.len(),
    })
}

/// `min #∂A / min(vol A, vol Aᶜ)` with `deg(i) = #{e ∋ i}`.
pub fn chemical_cheeger(h: &ChemicalHypergraph) -> Result<CheegerReport> {
    let n = h.n();
    check_n(n, MAX_CHEEGER_N)?;
    if n < 2 {
        return Err(Error::Invalid("Cheeger constant needs at least two vertices".into()));
    }
    let comps = h.underlying_graph().components();
    if comps.len() > 1 {
        let a = SubsetMask::from_indices(&comps[0]);
        return Ok(CheegerReport { value: 0.0, sets: vec![a], enumerated: 0, variant: CheegerVariant::Chemical });
    }
    let full = SubsetMask::full(n);
    let mut best = (f64::INFINITY, SubsetMask(0));
    let mut count = 0;
    for m in 1..(1u32 << n) - 1 {
        let a = SubsetMask(m);
        let v = h.volume(a).min(h.volume(full.minus(a)));
        if v <= 0.0 {
            continue;
        }
        count += 1;
        let r = h.boundary_size(a) as f64 / v;
        if r < best.0 {
            best = (r, a);
        }
    }
    let mut a = best.1;
    if h.volume(a) > h.volume(full.minus(a)) {
        // Report the side of smaller volume; the boundary may differ for
        // oriented edges, so keep it only when the ratio is unchanged.
        let b = full.minus(a);
        if h.boundary_size(b) as f64 / h.volume(b) == best.0 {
            a = b;
        }
    }
    Ok(CheegerReport { value: best.0, sets: vec![a], enumerated: count, variant: CheegerVariant::Chemical })
}

/// `h_k(S_d)` by the β formula on the anti-signed graph; simplices with no
/// coface carry no volume and are excluded.
pub fn simplicial_cheeger(k_cx: &SimplicialComplex, d: usize, k: usize) -> Result<CheegerReport> {
    let n = k_cx.count(d);
    check_n(n, MAX_KWAY_N)?;
    let g = anti_signed_graph(k_cx, d)?;
    let deg = k_cx.up_degrees(d);
    let mut pos = vec![0u32; n];
    let mut neg = vec![0u32; n];
    for (i, j, w) in g.edges() {
        if w > 0.0 {
            pos[i] |= 1 << j;
            pos[j] |= 1 << i;
        } else {
            neg[i] |= 1 << j;
            neg[j] |= 1 << i;
        }
    }
    let vol = |u: u32| -> f64 { (0..n).filter(|&i| u >> i & 1 == 1).map(|i| deg[i]).sum() };
    let beta = |a: u32, b: u32| -> f64 {
        let u = a | b;
        let mut e_minus = 0u32;
        let mut e_plus = 0u32;
        let mut boundary = 0u32;
        for i in 0..n {
            if a >> i & 1 == 1 {
                e_minus += (neg[i] & a).count_ones();
                e_plus += (pos[i] & b).count_ones();
            }
            if b >> i & 1 == 1 {
                e_minus += (neg[i] & b).count_ones();
            }
            if u >> i & 1 == 1 {
                boundary += ((pos[i] | neg[i]) & !u).count_ones();
            }
        }
        // e_minus counted each internal edge twice.
        (e_minus as f64 + 2.0 * e_plus as f64 + boundary as f64) / vol(u)
    };
    let mut split = vec![0u32; 1 << n];
    let table: Vec<f64> = (0..1u32 << n)
        .map(|u| {
            if u == 0 || vol(u) == 0.0 {
                return f64::NAN;
            }
            let mut best = (f64::INFINITY, 0u32);
            let mut a = u;
            loop {
                let b = beta(a, u & !a);
                if b < best.0 {
                    best = (b, a);
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & u;
            }
            split[u as usize] = best.1;
            best.0
        })
        .collect();
    let (value, blocks, enumerated) = disjoint_search(n, &table, k, true)?;
    let mut sets = Vec::new();
    for u in blocks {
        let a = split[u as usize];
        sets.push(SubsetMask(a));
        sets.push(SubsetMask(u & !a));
    }
    Ok(CheegerReport { value, sets, enumerated, variant: CheegerVariant::Simplicial { d, k } })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultisetCheeger {
    pub n: usize,
    /// `+∞` when every multiset has empty (co)boundary.
    pub value: f64,
    pub witness: Vec<i64>,
    pub enumerated: u64,
}

/// `min |Mx|₁ / vol[x]` over `x ∈ {-N..N}^m` with `Mx ≠ 0`, where
/// `vol[x]` is the least weighted ℓ¹ norm among `x'` with `Mx' = Mx`.
fn multiset_ratio(m: &IntMatrix, weights: &[f64], big_n: usize) -> Result<MultisetCheeger> {
    let cols = m.cols();
    let base = 2 * big_n + 1;
    let total = (base as f64).powi(cols as i32);
    if total > MULTISET_CAP {
        return Err(Error::Cap(format!("{base}^{cols} multisets exceed the enumeration cap")));
    }
    let total = total as u64;
    let rows = m.rows();
    let mut best_vol: HashMap<Vec<i64>, (f64, Vec<i64>)> = HashMap::new();
    let mut x = vec![-(big_n as i64); cols];
    for step in 0..total {
        if step > 0 {
            let mut c = 0;
            loop {
                if x[c] < big_n as i64 {
                    x[c] += 1;
                    break;
                }
                x[c] = -(big_n as i64);
                c += 1;
            }
        }
        let y: Vec<i64> = (0..rows).map(|r| (0..cols).map(|c| m[(r, c)] * x[c]).sum()).collect();
        if y.iter().all(|&v| v == 0) {
            continue;
        }
        let vol: f64 = x.iter().zip(weights).map(|(a, w)| a.unsigned_abs() as f64 * w).sum();
        match best_vol.get_mut(&y) {
            Some(e) if e.0 <= vol => {}
            Some(e) => *e = (vol, x.clone()),
            None => {
                best_vol.insert(y, (vol, x.clone()));
            }
        }
    }
    let mut best = (f64::INFINITY, Vec::new());
    let mut keys: Vec<&Vec<i64>> = best_vol.keys().collect();
    keys.sort();
    for y in keys {
        let (vol, w) = &best_vol[y];
        let size: i64 = y.iter().map(|v| v.abs()).sum();
        let r = if *vol == 0.0 { f64::INFINITY } else { size as f64 / vol };
        if r < best.0 {
            best = (r, w.clone());
        }
    }
    Ok(MultisetCheeger { n: big_n, value: best.0, witness: best.1, enumerated: total })
}

/// `min |∂*S| / vol[S]` over multisets on `S_d` with multiplicities in
/// `{-N..N}` and nonempty coboundary, one entry per `N`. Each value bounds
/// `h(S_d)` from above.
pub fn simplicial_h(k_cx: &SimplicialComplex, d: usize, n_list: &[usize]) -> Result<Vec<MultisetCheeger>> {
    let b = boundary_matrix(k_cx, d + 1)?;
    let deg = k_cx.up_degrees(d);
    n_list.iter().map(|&big_n| multiset_ratio(&b.transpose(), &deg, big_n)).collect()
}

/// Down analogue on `B_d` with `deg = d + 1` for every `d`-simplex.
pub fn down_cheeger(k_cx: &SimplicialComplex, d: usize, big_n: usize) -> Result<CheegerReport> {
    let b = boundary_matrix(k_cx, d)?;
    let deg = vec![(d + 1) as f64; k_cx.count(d)];
    let r = multiset_ratio(&b, &deg, big_n)?;
    let plus: Vec<usize> = (0..r.witness.len()).filter(|&i| r.witness[i] > 0).collect();
    let minus: Vec<usize> = (0..r.witness.len()).filter(|&i| r.witness[i] < 0).collect();
    Ok(CheegerReport {
        value: r.value,
        sets: vec![SubsetMask::from_indices(&plus), SubsetMask::from_indices(&minus)],
        enumerated: r.enumerated,
        variant: CheegerVariant::Down { d },
    })
}

/// Connected components of `supp(x)` in `carrier`; entries below
/// `1e-9 · max|x|` count as zero.
pub fn nodal_domains(x: &[f64], carrier: &WeightedGraph) -> Result<usize> {
    let n = carrier.n();
    if x.len() != n {
        return Err(Error::Dimension { expected: n, got: x.len() });
    }
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Ok(0);
    }
    let support: Vec<usize> = (0..n).filter(|&i| x[i].abs() > 1e-9 * scale).collect();
    Ok(carrier.induced_subgraph(&support).components().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::ChemicalEdge;

    #[test]
    fn plain_cheeger_examples() {
        let r = cheeger(&WeightedGraph::complete(5)).unwrap();
        assert_eq!(r.value, 0.75);
        assert_eq!(r.sets[0].len().min(5 - r.sets[0].len()), 2);
        assert_eq!(cheeger(&WeightedGraph::cycle(4)).unwrap().value, 0.5);
        let g = WeightedGraph::from_edges(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(cheeger(&g).unwrap().value, 0.0);
    }

    #[test]
    fn cheeger_matches_naive() {
        let g = WeightedGraph::from_edges(
            6,
            &[(0, 1, 2.0), (1, 2, 1.0), (2, 0, 1.0), (2, 3, 0.5), (3, 4, 1.0), (4, 5, 3.0), (5, 3, 1.0), (1, 4, 0.25)],
        )
        .unwrap();
        let mut best = f64::INFINITY;
        for m in 1..63u32 {
            let a = SubsetMask(m);
            best = best.min(g.cut(a) / g.volume(a).min(g.volume(a.complement(6))));
        }
        assert!((cheeger(&g).unwrap().value - best).abs() < 1e-15);
    }

    #[test]
    fn k_way_on_k5() {
        let g = WeightedGraph::complete(5);
        assert_eq!(k_way_cheeger(&g, 1).unwrap().value, 0.0);
        assert_eq!(k_way_cheeger(&g, 2).unwrap().value, 0.75);
        for k in 3..=5 {
            assert_eq!(k_way_cheeger(&g, k).unwrap().value, 1.0);
        }
        for k in 1..5 {
            assert!(k_way_cheeger(&g, k).unwrap().value <= k_way_cheeger(&g, k + 1).unwrap().value);
        }
    }

    #[test]
    fn dual_cheeger_bipartite() {
        let r = dual_cheeger_k(&WeightedGraph::cycle(6), 1).unwrap();
        assert_eq!(r.value, 1.0);
        let r = dual_cheeger_k(&WeightedGraph::complete(3), 1).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn maxcut_examples() {
        assert_eq!(maxcut(&WeightedGraph::complete(3), 100, 1).unwrap().value, 2.0);
        let r = maxcut(&WeightedGraph::cycle(4), 2000, 1).unwrap();
        assert_eq!(r.value, 4.0);
        assert_eq!(r.witness_value, 4.0);
        assert!(r.sample_max <= 4.0 + 1e-12);
        let e = WeightedGraph::path(2);
        assert_eq!(maxcut(&e, 10, 1).unwrap().value, 1.0);
        assert_eq!(maxcut_continuous(&e, &[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
    }

    #[test]
    fn independence_examples() {
        let r = independence_clique(&WeightedGraph::path(3)).unwrap();
        assert_eq!((r.alpha, r.omega), (2, 2));
        let r = independence_clique(&WeightedGraph::complete(5)).unwrap();
        assert_eq!((r.alpha, r.omega), (1, 5));
        let c5 = WeightedGraph::cycle(5);
        let r = independence_clique(&c5).unwrap();
        assert_eq!((r.alpha, r.omega), (2, 2));
        let x = [0.5, 0.0, 0.5];
        assert!((independence_representation(&WeightedGraph::path(3), &x) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn level_independence_on_cut_volume() {
        let g = WeightedGraph::from_edges(6, &[(0, 1, 1.0), (1, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0)]).unwrap();
        let pair = HomogeneousPair::graph_p_laplacian(&g, 1.0, true).unwrap();
        assert_eq!(lambda_level_independence(&pair, 0.0, 1e-12, 1).unwrap().alpha, 2);
        assert_eq!(
            lambda_level_independence(&pair, 1.0, 1e-12, 1).unwrap().alpha,
            independence_clique(&g).unwrap().alpha
        );
        let pair = HomogeneousPair::graph_p_laplacian(&g, 2.0, true).unwrap();
        assert_eq!(lambda_level_independence(&pair, 1.0, 1e-12, 1).unwrap().alpha, 4);
    }

    #[test]
    fn motzkin_straus_examples() {
        let r = motzkin_straus(&WeightedGraph::complete(3), 8, 1).unwrap();
        assert!((r.ascent_best - 2.0 / 3.0).abs() < 1e-9);
        let r = motzkin_straus(&WeightedGraph::cycle(5), 16, 1).unwrap();
        assert_eq!(r.exact, 0.5);
        assert!(r.ascent_best <= 0.5 + 1e-12 && r.ascent_best > 0.5 - 1e-6);
    }

    #[test]
    fn lagrangian_of_clique_hypergraph() {
        // Triangles of K4 form the clique hypergraph with 4 edges on 4 vertices.
        let h = UniformHypergraph::new(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        let r = hypergraph_lagrangian(&h, 8, 1).unwrap();
        assert!(r.clique_hypergraph);
        assert!((r.discrete - 4.0 / 64.0).abs() < 1e-15);
        assert!((r.continuous - r.discrete).abs() < 1e-9);
    }

    #[test]
    fn hypergraph_independence() {
        let h = UniformHypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let r = hypergraph_independence_clique(&h).unwrap();
        assert_eq!(r.alpha, 4);
        assert_eq!(r.omega, 3);
    }

    #[test]
    fn chemical_cheeger_examples() {
        let e = ChemicalEdge { input: SubsetMask::from_indices(&[0]), output: SubsetMask::from_indices(&[1]) };
        let h = ChemicalHypergraph::new(2, vec![e]).unwrap();
        assert_eq!(chemical_cheeger(&h).unwrap().value, 1.0);
        let g = WeightedGraph::cycle(5);
        let hc = ChemicalHypergraph::from_graph(&g).unwrap();
        assert_eq!(chemical_cheeger(&hc).unwrap().value, cheeger(&g).unwrap().value);
    }

    #[test]
    fn simplicial_cheeger_examples() {
        let path = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(simplicial_cheeger(&path, 0, 1).unwrap().value, 0.0);
        let hollow = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(simplicial_cheeger(&hollow, 0, 1).unwrap().value > 0.0);
        let filled = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        let r = simplicial_cheeger(&filled, 1, 1).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn multiset_h_on_graphs() {
        // d = 0 with N = 1 gives the graph Cheeger constant on a connected graph.
        let g = WeightedGraph::cycle(5);
        let k = SimplicialComplex::from_graph(&g, &[]).unwrap();
        let r = simplicial_h(&k, 0, &[1]).unwrap();
        assert!(r[0].value <= cheeger(&g).unwrap().value + 1e-15);
        let hollow = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let dn = down_cheeger(&hollow, 1, 1).unwrap();
        assert!(dn.value > 0.0 && dn.value.is_finite());
    }

    #[test]
    fn nodal_examples() {
        let p3 = WeightedGraph::path(3);
        assert_eq!(nodal_domains(&[1.0, 2.0, 3.0], &p3).unwrap(), 1);
        assert_eq!(nodal_domains(&[1.0, 0.0, -1.0], &p3).unwrap(), 2);
    }
}
