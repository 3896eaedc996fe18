//! Extensions of set functions to real vectors: Lovász, piecewise
//! multilinear, diagonal and the multiple-integral extension on disjoint pairs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::setfn::{DisjointPair, DisjointPairFunction, SetTupleFunction, SubsetMask};

/// Cap on the number of table probes of one extension call.
pub const PROBE_CAP: u64 = 1_000_000;

/// Sorted order of one block together with its upper level sets.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetDecomposition<T> {
    /// Permutation with `x[order[0]] <= x[order[1]] <= ...`, ties by index.
    pub order: Vec<usize>,
    /// `x_(1) <= ... <= x_(n)`.
    pub sorted: Vec<T>,
    /// `V^(i) = {j : x_j > x_(i-1)}` with `V^(1) = V`.
    pub levels: Vec<SubsetMask>,
    /// `x_(i) - x_(i-1)` with `x_(0) = 0`.
    pub weights: Vec<T>,
}

pub fn decompose<T: Scalar>(x: &[T]) -> LevelSetDecomposition<T> {
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b)));
    let sorted: Vec<T> = order.iter().map(|&i| x[i].clone()).collect();
    let mut levels = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        if i == 0 {
            levels.push(SubsetMask::full(n));
            weights.push(sorted[0].clone());
        } else {
            let thr = &sorted[i - 1];
            let m = (0..n).filter(|&j| x[j] > *thr).fold(0u32, |m, j| m | 1 << j);
            levels.push(SubsetMask(m));
            weights.push(sorted[i].clone() - sorted[i - 1].clone());
        }
    }
    LevelSetDecomposition { order, sorted, levels, weights }
}

fn check_blocks<T>(n: usize, k: usize, xs: &[Vec<T>]) -> Result<()> {
    if xs.len() != k {
        return Err(Error::Arity { expected: k, got: xs.len() });
    }
    for b in xs {
        if b.len() != n {
            return Err(Error::Dimension { expected: n, got: b.len() });
        }
    }
    let probes = (n as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if probes > PROBE_CAP {
        return Err(Error::Cap(format!("{probes} table probes exceed {PROBE_CAP}")));
    }
    Ok(())
}

/// Piecewise multilinear extension of `f: P(V)^k -> T`.
pub fn multilinear<T: Scalar>(f: &SetTupleFunction<T>, xs: &[Vec<T>]) -> Result<T> {
    check_blocks(f.n(), f.k(), xs)?;
    let decs: Vec<LevelSetDecomposition<T>> = xs.iter().map(|b| decompose(b)).collect();
    let mut tuple = vec![SubsetMask::EMPTY; f.k()];
    Ok(accumulate(f, &decs, 0, T::one(), &mut tuple))
}

fn accumulate<T: Scalar>(
    f: &SetTupleFunction<T>,
    decs: &[LevelSetDecomposition<T>],
    depth: usize,
    weight: T,
    tuple: &mut Vec<SubsetMask>,
) -> T {
    if depth == decs.len() {
        return weight * f.get(tuple);
    }
    let mut acc = T::zero();
    let d = &decs[depth];
    for (w, lvl) in d.weights.iter().zip(&d.levels) {
        if w.is_zero() {
            continue;
        }
        tuple[depth] = *lvl;
        acc = acc + accumulate(f, decs, depth + 1, weight.clone() * w.clone(), tuple);
    }
    acc
}

/// Lovász extension of a one-argument set function.
pub fn lovasz<T: Scalar>(f: &SetTupleFunction<T>, x: &[T]) -> Result<T> {
    if f.k() != 1 {
        return Err(Error::Arity { expected: 1, got: f.k() });
    }
    multilinear(f, &[x.to_vec()])
}

/// `f^M(x, ..., x)`.
pub fn diagonal<T: Scalar>(f: &SetTupleFunction<T>, x: &[T]) -> Result<T> {
    let xs = vec![x.to_vec(); f.k()];
    multilinear(f, &xs)
}

/// Distinct positive absolute values of `x` preceded by 0.
fn abs_breakpoints<T: Scalar>(x: &[T]) -> Vec<T> {
    let mut v: Vec<T> = x.iter().map(|a| a.abs()).filter(|a| !a.is_zero()).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    v.dedup();
    let mut out = vec![T::zero()];
    out.extend(v);
    out
}

/// Cells `[b_j, b_{j+1})` of one block: lengths and the constant pair on each.
fn cells<T: Scalar>(x: &[T]) -> Vec<(T, DisjointPair)> {
    let b = abs_breakpoints(x);
    let mut out = Vec::with_capacity(b.len().saturating_sub(1));
    for j in 0..b.len().saturating_sub(1) {
        let t = &b[j];
        let mut p = 0u32;
        let mut m = 0u32;
        for (i, xi) in x.iter().enumerate() {
            if *xi > *t {
                p |= 1 << i;
            } else if *xi < -t.clone() {
                m |= 1 << i;
            }
        }
        let pair = DisjointPair::new(SubsetMask(p), SubsetMask(m)).expect("level sets are disjoint");
        out.push((b[j + 1].clone() - b[j].clone(), pair));
    }
    out
}

/// Multiple-integral extension of `f: P2(V)^k -> T`.
pub fn multiple_integral<T: Scalar>(f: &DisjointPairFunction<T>, xs: &[Vec<T>]) -> Result<T> {
    check_blocks(f.n(), f.k(), xs)?;
    let grid: Vec<Vec<(T, DisjointPair)>> = xs.iter().map(|b| cells(b)).collect();
    let mut tuple = vec![DisjointPair::default(); f.k()];
    Ok(integrate(f, &grid, 0, T::one(), &mut tuple))
}

fn integrate<T: Scalar>(
    f: &DisjointPairFunction<T>,
    grid: &[Vec<(T, DisjointPair)>],
    depth: usize,
    weight: T,
    tuple: &mut Vec<DisjointPair>,
) -> T {
    if depth == grid.len() {
        return weight * f.get(tuple);
    }
    let mut acc = T::zero();
    for (len, pair) in &grid[depth] {
        tuple[depth] = *pair;
        acc = acc + integrate(f, grid, depth + 1, weight.clone() * len.clone(), tuple);
    }
    acc
}

/// Multiple-integral extension with `k = 1`.
pub fn disjoint_pair_lovasz<T: Scalar>(f: &DisjointPairFunction<T>, x: &[T]) -> Result<T> {
    if f.k() != 1 {
        return Err(Error::Arity { expected: 1, got: f.k() });
    }
    multiple_integral(f, &[x.to_vec()])
}

fn sign<T: Scalar>(v: &T) -> i8 {
    if v.is_zero() {
        0
    } else if *v > T::zero() {
        1
    } else {
        -1
    }
}

fn pair_comonotone<T: Scalar>(a: &[T], b: &[T]) -> bool {
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let s = sign(&(a[i].clone() - a[j].clone())) * sign(&(b[i].clone() - b[j].clone()));
            if s < 0 {
                return false;
            }
        }
    }
    true
}

/// `(x_i - x_j)(y_i - y_j) >= 0` for every pair of blocks and all `i, j`.
pub fn comonotone_check<T: Scalar>(xs: &[Vec<T>]) -> bool {
    let n = xs.first().map_or(0, |b| b.len());
    if xs.iter().any(|b| b.len() != n) {
        return false;
    }
    (0..xs.len()).all(|a| ((a + 1)..xs.len()).all(|b| pair_comonotone(&xs[a], &xs[b])))
}

/// Blocks pairwise share sign patterns (`x_i y_i >= 0`) and their absolute
/// values are comonotone.
pub fn absolutely_comonotone_check<T: Scalar>(xs: &[Vec<T>]) -> bool {
    let n = xs.first().map_or(0, |b| b.len());
    if xs.iter().any(|b| b.len() != n) {
        return false;
    }
    let abs: Vec<Vec<T>> = xs.iter().map(|b| b.iter().map(|v| v.abs()).collect()).collect();
    for a in 0..xs.len() {
        for b in (a + 1)..xs.len() {
            if (0..n).any(|i| sign(&xs[a][i]) * sign(&xs[b][i]) < 0) {
                return false;
            }
            if !pair_comonotone(&abs[a], &abs[b]) {
                return false;
            }
        }
    }
    true
}

/// Some coordinate attains the maximum of `x` and of `y` simultaneously.
pub fn comaximal_check<T: Scalar>(x: &[T], y: &[T]) -> bool {
    if x.is_empty() || x.len() != y.len() {
        return false;
    }
    let mx = x.iter().skip(1).fold(x[0].clone(), |m, v| if *v > m { v.clone() } else { m });
    let my = y.iter().skip(1).fold(y[0].clone(), |m, v| if *v > m { v.clone() } else { m });
    (0..x.len()).any(|i| x[i] == mx && y[i] == my)
}

/// Distinct upper level sets `{j : x_j > t}` over all real `t`, including `V` and `∅`.
pub fn upper_level_sets<T: Scalar>(x: &[T]) -> Vec<SubsetMask> {
    let mut out = BTreeSet::new();
    out.insert(SubsetMask::full(x.len()));
    for t in x {
        let m = x.iter().enumerate().filter(|(_, v)| *v > t).fold(0u32, |m, (j, _)| m | 1 << j);
        out.insert(SubsetMask(m));
    }
    out.into_iter().collect()
}

/// Multiple upper level sets of a tuple of blocks: the product of the
/// per-block families.
pub fn multiple_level_sets<T: Scalar>(xs: &[Vec<T>]) -> Result<Vec<Vec<SubsetMask>>> {
    let fams: Vec<Vec<SubsetMask>> = xs.iter().map(|b| upper_level_sets(b)).collect();
    let total: u64 = fams.iter().map(|f| f.len() as u64).product();
    if total > PROBE_CAP {
        return Err(Error::Cap(format!("{total} level-set tuples exceed {PROBE_CAP}")));
    }
    let mut out = vec![Vec::new()];
    for fam in &fams {
        let mut next = Vec::with_capacity(out.len() * fam.len());
        for prefix in &out {
            for m in fam {
                let mut t: Vec<SubsetMask> = prefix.clone();
                t.push(*m);
                next.push(t);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Domain families with a built-in membership rule.
pub enum DomainFamily<'a> {
    /// Nonnegative, pairwise comonotone blocks.
    Chain,
    /// Nonnegative blocks that are all equal.
    Diagonal,
    /// Tuples with every component nonempty; the domain is the positive orthant.
    AllNonempty,
    /// Arbitrary family `A`: every multiple upper level set lies in `A` or has an empty component.
    Custom(&'a dyn Fn(&[SubsetMask]) -> bool),
}

/// Membership of `xs` in the continuous domain attached to `family`.
pub fn perfect_pair_membership<T: Scalar>(xs: &[Vec<T>], family: &DomainFamily<'_>) -> Result<bool> {
    let nonneg = xs.iter().all(|b| b.iter().all(|v| *v >= T::zero()));
    match family {
        DomainFamily::Chain => Ok(nonneg && comonotone_check(xs)),
        DomainFamily::Diagonal => Ok(nonneg && xs.windows(2).all(|w| w[0] == w[1])),
        DomainFamily::AllNonempty => Ok(nonneg),
        DomainFamily::Custom(pred) => {
            if !nonneg {
                return Ok(false);
            }
            let sets = multiple_level_sets(xs)?;
            Ok(sets.iter().all(|t| t.iter().any(|m| m.is_empty()) || pred(t)))
        }
    }
}

/// `A(D)`: all multiple upper level sets with nonempty components of the sample points.
pub fn induced_family<T: Scalar>(samples: &[Vec<Vec<T>>]) -> Result<BTreeSet<Vec<SubsetMask>>> {
    let mut out = BTreeSet::new();
    for xs in samples {
        for t in multiple_level_sets(xs)? {
            if t.iter().all(|m| !m.is_empty()) {
                out.insert(t);
            }
        }
    }
    Ok(out)
}

/// Checks `D(A(D(A))) = D(A)` on sample points: the family induced by the
/// samples inside `D(A)` is a subfamily of `A` and admits the same samples.
pub fn idempotence_check<T: Scalar>(pred: &dyn Fn(&[SubsetMask]) -> bool, samples: &[Vec<Vec<T>>]) -> Result<bool> {
    let fam = DomainFamily::Custom(pred);
    let mut inside = Vec::new();
    for s in samples {
        if perfect_pair_membership(s, &fam)? {
            inside.push(s.clone());
        }
    }
    let induced = induced_family(&inside)?;
    if !induced.iter().all(|t| pred(t)) {
        return Ok(false);
    }
    let pred2 = |t: &[SubsetMask]| induced.contains(t);
    let fam2 = DomainFamily::Custom(&pred2);
    for s in samples {
        if perfect_pair_membership(s, &fam)? != perfect_pair_membership(s, &fam2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn cut_p3() -> SetTupleFunction<f64> {
        SetTupleFunction::tabulate(3, 1, |t| {
            [(0, 1), (1, 2)].iter().filter(|&&(i, j)| t[0].contains(i) != t[0].contains(j)).count() as f64
        })
        .unwrap()
    }

    #[test]
    fn lovasz_cut_is_total_variation() {
        let v = lovasz(&cut_p3(), &[0.5, 1.0, 0.0]).unwrap();
        assert!((v - 1.5).abs() < 1e-15);
    }

    #[test]
    fn lovasz_indicator_and_constants() {
        let f = cut_p3();
        assert_eq!(lovasz(&f, &[1.0, 0.0, 0.0]).unwrap(), 1.0);
        let g = SetTupleFunction::<f64>::tabulate(3, 1, |t| t[0].len() as f64 + 1.0).unwrap();
        assert!((lovasz(&g, &[2.5, 2.5, 2.5]).unwrap() - 2.5 * 4.0).abs() < 1e-12);
    }

    #[test]
    fn multilinear_table_rows() {
        let g = SetTupleFunction::<f64>::tabulate(2, 2, |t| (t[0].len() * t[1].len()) as f64).unwrap();
        assert_eq!(multilinear(&g, &[vec![1.0, 2.0], vec![3.0, 0.0]]).unwrap(), 9.0);
        let h = SetTupleFunction::<f64>::tabulate(3, 2, |t| t[0].intersect(t[1]).len() as f64).unwrap();
        assert_eq!(multilinear(&h, &[vec![1.0, 1.0, 0.0], vec![1.0, 1.0, 0.0]]).unwrap(), 2.0);
    }

    #[test]
    fn empty_components_get_zero_weight() {
        let f = SetTupleFunction::<Rational>::tabulate(2, 2, |t| {
            if t.iter().any(|m| m.is_empty()) {
                Rational::from_i64(1000)
            } else {
                Rational::from_i64(1)
            }
        })
        .unwrap();
        let one = Rational::from_i64(1);
        let zero = Rational::from_i64(0);
        let v = multilinear(&f, &[vec![one, zero], vec![zero, one]]).unwrap();
        assert_eq!(v, Rational::from_i64(1));
        let v0 = multilinear(&f, &[vec![zero, zero], vec![one, one]]).unwrap();
        assert_eq!(v0, Rational::from_i64(0));
    }

    #[test]
    fn disjoint_pair_norms() {
        let f1 = DisjointPairFunction::<f64>::from_fn(2, 1, |t| t[0].support().len() as f64).unwrap();
        assert_eq!(disjoint_pair_lovasz(&f1, &[1.0, -2.0]).unwrap(), 3.0);
        let finf = DisjointPairFunction::<f64>::from_fn(2, 1, |t| if t[0].is_empty() { 0.0 } else { 1.0 }).unwrap();
        assert_eq!(disjoint_pair_lovasz(&finf, &[1.0, -2.0]).unwrap(), 2.0);
    }

    #[test]
    fn multiple_integral_product_of_l1() {
        let f = DisjointPairFunction::<f64>::from_fn(2, 2, |t| (t[0].support().len() * t[1].support().len()) as f64)
            .unwrap();
        let v = multiple_integral(&f, &[vec![1.0, -2.0], vec![-0.5, 3.0]]).unwrap();
        assert!((v - 3.0 * 3.5).abs() < 1e-12);
    }

    #[test]
    fn multiple_integral_at_indicators() {
        let f = DisjointPairFunction::<Rational>::from_fn(3, 1, |t| {
            Rational::from_i64(3 * t[0].plus().0 as i64 + t[0].minus().0 as i64)
        })
        .unwrap();
        let x = vec![Rational::from_i64(1), Rational::from_i64(0), Rational::from_i64(-1)];
        let v = disjoint_pair_lovasz(&f, &x).unwrap();
        assert_eq!(v, Rational::from_i64(3 + 4));
    }

    #[test]
    fn hyperedge_diagonal_counts_orderings() {
        let f = SetTupleFunction::<f64>::tabulate(3, 3, |t| {
            let mut c = 0;
            for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                if (0..3).all(|l| t[l].contains(p[l])) {
                    c += 1;
                }
            }
            c as f64
        })
        .unwrap();
        assert_eq!(diagonal(&f, &[1.0, 1.0, 1.0]).unwrap(), 6.0);
    }

    #[test]
    fn comonotone_examples() {
        assert!(comonotone_check(&[vec![1.0, 2.0], vec![0.0, 5.0]]));
        assert!(!comonotone_check(&[vec![1.0, 2.0], vec![5.0, 0.0]]));
        for a in 0u32..16 {
            for b in 0u32..16 {
                let x: Vec<f64> = (0..4).map(|i| (a >> i & 1) as f64).collect();
                let y: Vec<f64> = (0..4).map(|i| (b >> i & 1) as f64).collect();
                let nested = a & b == a || a & b == b;
                assert_eq!(comonotone_check(&[x, y]), nested);
            }
        }
    }

    #[test]
    fn absolute_comonotone() {
        assert!(absolutely_comonotone_check(&[vec![1.0, -2.0], vec![0.5, -3.0]]));
        assert!(!absolutely_comonotone_check(&[vec![1.0, -2.0], vec![-0.5, -3.0]]));
        assert!(!absolutely_comonotone_check(&[vec![1.0, -2.0], vec![3.0, -1.0]]));
    }

    #[test]
    fn comaximal() {
        assert!(comaximal_check(&[1.0, 3.0, 3.0], &[0.0, 1.0, 2.0]));
        assert!(!comaximal_check(&[1.0, 3.0, 2.0], &[0.0, 1.0, 2.0]));
    }

    #[test]
    fn domain_membership() {
        let xs = vec![vec![0.0, 1.0, 2.0], vec![0.5, 0.7, 3.0]];
        assert!(perfect_pair_membership(&xs, &DomainFamily::Chain).unwrap());
        let crossing = vec![vec![0.0, 1.0, 2.0], vec![0.5, 3.0, 0.7]];
        assert!(!perfect_pair_membership(&crossing, &DomainFamily::Chain).unwrap());
        assert!(perfect_pair_membership(&crossing, &DomainFamily::AllNonempty).unwrap());
        let chain_pred = |t: &[SubsetMask]| crate::setfn::is_chain(t);
        let fam = DomainFamily::Custom(&chain_pred);
        assert!(perfect_pair_membership(&xs, &fam).unwrap());
        assert!(!perfect_pair_membership(&crossing, &fam).unwrap());
        let samples = vec![xs, crossing];
        assert!(idempotence_check(&chain_pred, &samples).unwrap());
    }

    #[test]
    fn level_decomposition_ties() {
        let d = decompose(&[ratio(1, 2), ratio(1, 2), ratio(0, 1)]);
        assert_eq!(d.order, vec![2, 0, 1]);
        assert_eq!(d.levels[0], SubsetMask(7));
        assert_eq!(d.levels[1], SubsetMask(3));
        assert_eq!(d.levels[2], SubsetMask(0));
        assert_eq!(d.weights[2], ratio(0, 1));
    }
}
