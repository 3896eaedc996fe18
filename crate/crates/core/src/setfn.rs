//! Set functions on k-tuples of subsets `P(V)^k` and of disjoint pairs
//! `P2(V)^k`, stored densely by concatenated bitmasks or behind a callback.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 24;
/// Dense tables are used when the concatenated index fits in this many bits.
pub const DENSE_BITS: usize = 24;
/// Cap on `n * k` for chain enumeration.
pub const CHAIN_BITS: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::Invalid(format!("ground set size {n} not in 1..={MAX_GROUND}")));
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut g = GroundSet::new(labels.len())?;
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::Invalid("duplicate labels".into()));
        }
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// All subsets in increasing bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        (0..(1u32 << self.n)).map(SubsetMask)
    }
}

/// A subset of `{0, ..., n-1}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn from_indices(idx: &[usize]) -> Self {
        SubsetMask(idx.iter().fold(0u32, |m, &i| m | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        SubsetMask(self.0 | o.0)
    }

    pub fn intersect(self, o: Self) -> Self {
        SubsetMask(self.0 & o.0)
    }

    pub fn minus(self, o: Self) -> Self {
        SubsetMask(self.0 & !o.0)
    }

    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    pub fn is_subset_of(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let b = self.0;
        (0..32).filter(move |i| b >> i & 1 == 1)
    }

    pub fn check(self, n: usize) -> Result<Self> {
        if n < 32 && self.0 >> n != 0 {
            Err(Error::MaskRange { mask: self.0, n })
        } else {
            Ok(self)
        }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<usize> = self.indices().map(|i| i + 1).collect();
        write!(f, "{v:?}")
    }
}

/// `(A+, A-)` with `A+ ∩ A- = ∅`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct DisjointPair {
    plus: SubsetMask,
    minus: SubsetMask,
}

impl DisjointPair {
    pub fn new(plus: SubsetMask, minus: SubsetMask) -> Result<Self> {
        if plus.0 & minus.0 != 0 {
            return Err(Error::Invalid(format!("pair {plus:?}, {minus:?} is not disjoint")));
        }
        Ok(DisjointPair { plus, minus })
    }

    pub fn plus(&self) -> SubsetMask {
        self.plus
    }

    pub fn minus(&self) -> SubsetMask {
        self.minus
    }

    pub fn support(&self) -> SubsetMask {
        self.plus.union(self.minus)
    }

    pub fn is_empty(&self) -> bool {
        self.support().is_empty()
    }

    /// All disjoint pairs on a ground set of size `n`.
    pub fn all(n: usize) -> impl Iterator<Item = DisjointPair> {
        let total = 3usize.pow(n as u32);
        (0..total).map(move |mut c| {
            let mut p = 0u32;
            let mut m = 0u32;
            for i in 0..n {
                match c % 3 {
                    1 => p |= 1 << i,
                    2 => m |= 1 << i,
                    _ => {}
                }
                c /= 3;
            }
            DisjointPair { plus: SubsetMask(p), minus: SubsetMask(m) }
        })
    }
}

type TupleFn<T> = Arc<dyn Fn(&[SubsetMask]) -> T + Send + Sync>;
type PairFn<T> = Arc<dyn Fn(&[DisjointPair]) -> T + Send + Sync>;

#[derive(Clone)]
enum Storage<T, F> {
    Dense(Vec<T>),
    Callback(F),
}

/// `f: P(V)^k -> T`.
#[derive(Clone)]
pub struct SetTupleFunction<T> {
    n: usize,
    k: usize,
    storage: Storage<T, TupleFn<T>>,
}

impl<T: Scalar> fmt::Debug for SetTupleFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = if self.is_dense() { "dense" } else { "callback" };
        write!(f, "SetTupleFunction(n={}, k={}, {mode})", self.n, self.k)
    }
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::Invalid(format!("ground set size {n} not in 1..={MAX_GROUND}")));
    }
    if k == 0 {
        return Err(Error::Invalid("arity must be positive".into()));
    }
    Ok(())
}

impl<T: Scalar> SetTupleFunction<T> {
    /// Dense table when `k*n <= 24`, callback otherwise.
    pub fn from_fn<F>(n: usize, k: usize, f: F) -> Result<Self>
    where
        F: Fn(&[SubsetMask]) -> T + Send + Sync + 'static,
    {
        check_shape(n, k)?;
        if n * k <= DENSE_BITS {
            Self::tabulate(n, k, f)
        } else {
            Ok(SetTupleFunction { n, k, storage: Storage::Callback(Arc::new(f)) })
        }
    }

    /// Always dense; fails if `k*n > 24`.
    pub fn tabulate<F>(n: usize, k: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[SubsetMask]) -> T,
    {
        check_shape(n, k)?;
        if n * k > DENSE_BITS {
            return Err(Error::Cap(format!("dense table needs k*n <= {DENSE_BITS}, got {}", n * k)));
        }
        let size = 1usize << (n * k);
        let mask = (1usize << n) - 1;
        let mut tuple = vec![SubsetMask::EMPTY; k];
        let mut values = Vec::with_capacity(size);
        for idx in 0..size {
            for (l, t) in tuple.iter_mut().enumerate() {
                *t = SubsetMask(((idx >> (l * n)) & mask) as u32);
            }
            values.push(f(&tuple));
        }
        Ok(SetTupleFunction { n, k, storage: Storage::Dense(values) })
    }

    pub fn from_callback<F>(n: usize, k: usize, f: F) -> Result<Self>
    where
        F: Fn(&[SubsetMask]) -> T + Send + Sync + 'static,
    {
        check_shape(n, k)?;
        Ok(SetTupleFunction { n, k, storage: Storage::Callback(Arc::new(f)) })
    }

    /// Dense table given in concatenated-bitmask order.
    pub fn from_table(n: usize, k: usize, values: Vec<T>) -> Result<Self> {
        check_shape(n, k)?;
        if n * k > DENSE_BITS {
            return Err(Error::Cap(format!("dense table needs k*n <= {DENSE_BITS}")));
        }
        let size = 1usize << (n * k);
        if values.len() != size {
            return Err(Error::Dimension { expected: size, got: values.len() });
        }
        Ok(SetTupleFunction { n, k, storage: Storage::Dense(values) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn table(&self) -> Option<&[T]> {
        match &self.storage {
            Storage::Dense(v) => Some(v),
            Storage::Callback(_) => None,
        }
    }

    pub fn index_of(&self, tuple: &[SubsetMask]) -> usize {
        tuple.iter().enumerate().fold(0usize, |acc, (l, m)| acc | (m.0 as usize) << (l * self.n))
    }

    pub fn tuple_of(&self, idx: usize) -> Vec<SubsetMask> {
        let mask = (1usize << self.n) - 1;
        (0..self.k).map(|l| SubsetMask(((idx >> (l * self.n)) & mask) as u32)).collect()
    }

    /// Lookup without validation.
    pub fn get(&self, tuple: &[SubsetMask]) -> T {
        match &self.storage {
            Storage::Dense(v) => v[self.index_of(tuple)].clone(),
            Storage::Callback(f) => f(tuple),
        }
    }

    pub fn eval(&self, tuple: &[SubsetMask]) -> Result<T> {
        if tuple.len() != self.k {
            return Err(Error::Arity { expected: self.k, got: tuple.len() });
        }
        for m in tuple {
            m.check(self.n)?;
        }
        Ok(self.get(tuple))
    }

    pub fn map<U: Scalar>(&self, g: impl Fn(&T) -> U + Send + Sync + 'static) -> SetTupleFunction<U> {
        match &self.storage {
            Storage::Dense(v) => {
                SetTupleFunction { n: self.n, k: self.k, storage: Storage::Dense(v.iter().map(&g).collect()) }
            }
            Storage::Callback(f) => {
                let f = f.clone();
                SetTupleFunction {
                    n: self.n,
                    k: self.k,
                    storage: Storage::Callback(Arc::new(move |t: &[SubsetMask]| g(&f(t)))),
                }
            }
        }
    }

    pub fn to_f64(&self) -> SetTupleFunction<f64> {
        self.map(|v| v.to_f64())
    }

    /// Fixes every component except `component` and returns the induced
    /// one-argument function.
    pub fn restrict(&self, component: usize, fixed: &[SubsetMask]) -> Result<SetTupleFunction<T>> {
        if component >= self.k {
            return Err(Error::Arity { expected: self.k, got: component + 1 });
        }
        if fixed.len() != self.k {
            return Err(Error::Arity { expected: self.k, got: fixed.len() });
        }
        let mut base = fixed.to_vec();
        SetTupleFunction::tabulate(self.n, 1, |a| {
            base[component] = a[0];
            self.get(&base)
        })
    }

    /// Separable product `f(A_1..A_k) = ∏ f_l(A_l)` of one-argument functions.
    pub fn product(factors: &[SetTupleFunction<T>]) -> Result<SetTupleFunction<T>> {
        let first = factors.first().ok_or_else(|| Error::Invalid("no factors".into()))?;
        let n = first.n;
        for f in factors {
            if f.k != 1 {
                return Err(Error::Arity { expected: 1, got: f.k });
            }
            if f.n != n {
                return Err(Error::Dimension { expected: n, got: f.n });
            }
        }
        let fs = factors.to_vec();
        SetTupleFunction::from_fn(n, factors.len(), move |t| {
            let mut acc = T::one();
            for (f, a) in fs.iter().zip(t) {
                acc = acc * f.get(&[*a]);
            }
            acc
        })
    }

    /// Calls `visit` for every assignment of the components other than
    /// `component`, with `component` left empty.
    fn for_each_context(&self, component: usize, mut visit: impl FnMut(&mut Vec<SubsetMask>) -> bool) -> bool {
        let others = self.k - 1;
        let total = 1u64 << (self.n * others);
        let mask = (1u64 << self.n) - 1;
        let mut tuple = vec![SubsetMask::EMPTY; self.k];
        for c in 0..total {
            let mut slot = 0;
            for (l, t) in tuple.iter_mut().enumerate() {
                if l == component {
                    continue;
                }
                *t = SubsetMask(((c >> (slot * self.n)) & mask) as u32);
                slot += 1;
            }
            if !visit(&mut tuple) {
                return false;
            }
        }
        true
    }

    fn lattice_check(&self, component: usize, cmp: impl Fn(&T, &T) -> bool) -> Result<bool> {
        if component >= self.k {
            return Err(Error::Arity { expected: self.k, got: component + 1 });
        }
        if self.n * self.k > 30 {
            return Err(Error::Cap("lattice checks need k*n <= 30".into()));
        }
        let size = 1u32 << self.n;
        let ok = self.for_each_context(component, |tuple| {
            let mut vals = Vec::with_capacity(size as usize);
            for a in 0..size {
                tuple[component] = SubsetMask(a);
                vals.push(self.get(tuple));
            }
            for a in 0..size {
                for b in (a + 1)..size {
                    if a & b == a || a & b == b {
                        continue;
                    }
                    let lhs = vals[(a | b) as usize].clone() + vals[(a & b) as usize].clone();
                    let rhs = vals[a as usize].clone() + vals[b as usize].clone();
                    if !cmp(&lhs, &rhs) {
                        return false;
                    }
                }
            }
            true
        });
        Ok(ok)
    }
}

/// Checked lookup.
pub fn eval_tuple<T: Scalar>(f: &SetTupleFunction<T>, tuple: &[SubsetMask]) -> Result<T> {
    f.eval(tuple)
}

/// `f(A∪B) + f(A∩B) = f(A) + f(B)` in `component`, all other components fixed.
pub fn modularity_check<T: Scalar>(f: &SetTupleFunction<T>, component: usize) -> Result<bool> {
    f.lattice_check(component, |l, r| l.close(r))
}

/// `f(A∪B) + f(A∩B) <= f(A) + f(B)` in `component`.
pub fn submodularity_check<T: Scalar>(f: &SetTupleFunction<T>, component: usize) -> Result<bool> {
    f.lattice_check(component, |l, r| l.le_close(r))
}

/// `f(A∪B) + f(A∩B) >= f(A) + f(B)` in `component`.
pub fn supermodularity_check<T: Scalar>(f: &SetTupleFunction<T>, component: usize) -> Result<bool> {
    f.lattice_check(component, |l, r| r.le_close(l))
}

pub fn is_chain(tuple: &[SubsetMask]) -> bool {
    tuple.iter().enumerate().all(|(i, a)| tuple[i + 1..].iter().all(|b| a.is_subset_of(*b) || b.is_subset_of(*a)))
}

/// Iterator over the k-tuples of subsets that are totally ordered by inclusion.
pub struct ChainIter {
    n: usize,
    k: usize,
    next: u64,
    end: u64,
}

impl Iterator for ChainIter {
    type Item = Vec<SubsetMask>;

    fn next(&mut self) -> Option<Self::Item> {
        let mask = (1u64 << self.n) - 1;
        while self.next < self.end {
            let c = self.next;
            self.next += 1;
            let t: Vec<SubsetMask> = (0..self.k).map(|l| SubsetMask(((c >> (l * self.n)) & mask) as u32)).collect();
            if is_chain(&t) {
                return Some(t);
            }
        }
        None
    }
}

/// All chains `A_σ(1) ⊆ ... ⊆ A_σ(k)`, each tuple once. Requires `n*k <= 22`.
pub fn enumerate_chains(n: usize, k: usize) -> Result<ChainIter> {
    check_shape(n, k)?;
    if n * k > CHAIN_BITS {
        return Err(Error::Cap(format!("chain enumeration needs n*k <= {CHAIN_BITS}")));
    }
    Ok(ChainIter { n, k, next: 0, end: 1u64 << (n * k) })
}

/// `f: P2(V)^k -> T`. Each pair uses `2n` bits (plus bits, then minus bits).
#[derive(Clone)]
pub struct DisjointPairFunction<T> {
    n: usize,
    k: usize,
    storage: Storage<T, PairFn<T>>,
}

impl<T: Scalar> fmt::Debug for DisjointPairFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DisjointPairFunction(n={}, k={})", self.n, self.k)
    }
}

impl<T: Scalar> DisjointPairFunction<T> {
    /// Dense when `2*k*n <= 24`, callback otherwise. Entries at
    /// non-disjoint encodings are filled with zero and never read.
    pub fn from_fn<F>(n: usize, k: usize, f: F) -> Result<Self>
    where
        F: Fn(&[DisjointPair]) -> T + Send + Sync + 'static,
    {
        check_shape(n, k)?;
        if 2 * n * k > DENSE_BITS {
            return Ok(DisjointPairFunction { n, k, storage: Storage::Callback(Arc::new(f)) });
        }
        let size = 1usize << (2 * n * k);
        let mask = (1usize << n) - 1;
        let mut values = Vec::with_capacity(size);
        let mut tuple = vec![DisjointPair::default(); k];
        for idx in 0..size {
            let mut ok = true;
            for (l, t) in tuple.iter_mut().enumerate() {
                let p = (idx >> (2 * l * n)) & mask;
                let m = (idx >> ((2 * l + 1) * n)) & mask;
                if p & m != 0 {
                    ok = false;
                    break;
                }
                *t = DisjointPair { plus: SubsetMask(p as u32), minus: SubsetMask(m as u32) };
            }
            values.push(if ok { f(&tuple) } else { T::zero() });
        }
        Ok(DisjointPairFunction { n, k, storage: Storage::Dense(values) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn index_of(&self, tuple: &[DisjointPair]) -> usize {
        tuple.iter().enumerate().fold(0usize, |acc, (l, p)| {
            acc | (p.plus.0 as usize) << (2 * l * self.n) | (p.minus.0 as usize) << ((2 * l + 1) * self.n)
        })
    }

    pub fn get(&self, tuple: &[DisjointPair]) -> T {
        match &self.storage {
            Storage::Dense(v) => v[self.index_of(tuple)].clone(),
            Storage::Callback(f) => f(tuple),
        }
    }

    pub fn eval(&self, tuple: &[DisjointPair]) -> Result<T> {
        if tuple.len() != self.k {
            return Err(Error::Arity { expected: self.k, got: tuple.len() });
        }
        for p in tuple {
            p.support().check(self.n)?;
        }
        Ok(self.get(tuple))
    }

    /// The `P(V)^k` function `(A_1..A_k) ↦ f((A_1,∅),...,(A_k,∅))`.
    pub fn positive_part(&self) -> Result<SetTupleFunction<T>> {
        SetTupleFunction::from_fn(self.n, self.k, {
            let me = self.clone();
            move |t| {
                let pairs: Vec<DisjointPair> =
                    t.iter().map(|a| DisjointPair { plus: *a, minus: SubsetMask::EMPTY }).collect();
                me.get(&pairs)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn path3_edges() -> Vec<(usize, usize)> {
        vec![(0, 1), (1, 2)]
    }

    fn e_ab(edges: Vec<(usize, usize)>, n: usize) -> SetTupleFunction<Rational> {
        SetTupleFunction::tabulate(n, 2, move |t| {
            let mut c = 0i64;
            for &(i, j) in &edges {
                if t[0].contains(i) && t[1].contains(j) {
                    c += 1;
                }
                if t[0].contains(j) && t[1].contains(i) {
                    c += 1;
                }
            }
            Rational::from_i64(c)
        })
        .unwrap()
    }

    #[test]
    fn eval_counts_ordered_pairs() {
        let f = e_ab(path3_edges(), 3);
        let v = eval_tuple(&f, &[SubsetMask::from_indices(&[0]), SubsetMask::from_indices(&[1])]).unwrap();
        assert_eq!(v, Rational::from_i64(1));
    }

    #[test]
    fn eval_keeps_empty_entries() {
        let f = SetTupleFunction::<f64>::tabulate(2, 2, |_| 7.0).unwrap();
        assert_eq!(f.eval(&[SubsetMask::EMPTY, SubsetMask(1)]).unwrap(), 7.0);
    }

    #[test]
    fn eval_cardinality() {
        let f = SetTupleFunction::<f64>::tabulate(3, 1, |t| t[0].len() as f64).unwrap();
        assert_eq!(f.eval(&[SubsetMask::from_indices(&[0, 2])]).unwrap(), 2.0);
    }

    #[test]
    fn eval_errors() {
        let f = SetTupleFunction::<f64>::tabulate(3, 2, |_| 0.0).unwrap();
        assert!(matches!(f.eval(&[SubsetMask(1)]), Err(Error::Arity { .. })));
        assert!(matches!(f.eval(&[SubsetMask(1), SubsetMask(8)]), Err(Error::MaskRange { .. })));
    }

    #[test]
    fn modularity_examples() {
        let g = SetTupleFunction::<Rational>::tabulate(3, 2, |t| Rational::from_i64((t[0].len() * t[1].len()) as i64))
            .unwrap();
        assert!(modularity_check(&g, 0).unwrap());
        assert!(modularity_check(&g, 1).unwrap());
        let cut = SetTupleFunction::<Rational>::tabulate(3, 1, |t| {
            let c = path3_edges().iter().filter(|&&(i, j)| t[0].contains(i) != t[0].contains(j)).count();
            Rational::from_i64(c as i64)
        })
        .unwrap();
        assert!(!modularity_check(&cut, 0).unwrap());
        assert!(submodularity_check(&cut, 0).unwrap());
        let edges = vec![(0, 1), (1, 2), (2, 3), (0, 3), (1, 4), (0, 2)];
        let f = e_ab(edges, 5);
        assert!(modularity_check(&f, 0).unwrap());
        assert!(modularity_check(&f, 1).unwrap());
    }

    #[test]
    fn square_of_cardinality_not_submodular() {
        let f = SetTupleFunction::<Rational>::tabulate(2, 1, |t| Rational::from_i64((t[0].len() * t[0].len()) as i64))
            .unwrap();
        assert!(!submodularity_check(&f, 0).unwrap());
        assert!(supermodularity_check(&f, 0).unwrap());
    }

    #[test]
    fn chain_counts() {
        let c: Vec<_> = enumerate_chains(1, 2).unwrap().collect();
        assert_eq!(c.len(), 4);
        assert_eq!(enumerate_chains(2, 1).unwrap().count(), 4);
        assert_eq!(enumerate_chains(2, 2).unwrap().count(), 14);
        assert!(enumerate_chains(12, 2).is_err());
    }

    #[test]
    fn chains_closed_under_permutation() {
        let all: std::collections::HashSet<Vec<SubsetMask>> = enumerate_chains(3, 3).unwrap().collect();
        for t in &all {
            let mut r = t.clone();
            r.rotate_left(1);
            assert!(all.contains(&r));
            let mut s = t.clone();
            s.swap(0, 1);
            assert!(all.contains(&s));
        }
    }

    #[test]
    fn disjoint_pairs() {
        assert_eq!(DisjointPair::all(3).count(), 27);
        assert!(DisjointPair::new(SubsetMask(3), SubsetMask(2)).is_err());
        let f = DisjointPairFunction::<f64>::from_fn(3, 1, |t| t[0].support().len() as f64).unwrap();
        let p = DisjointPair::new(SubsetMask(1), SubsetMask(4)).unwrap();
        assert_eq!(f.eval(&[p]).unwrap(), 2.0);
    }

    #[test]
    fn product_and_restrict() {
        let a = SetTupleFunction::<Rational>::tabulate(3, 1, |t| Rational::from_i64(t[0].len() as i64)).unwrap();
        let b = SetTupleFunction::<Rational>::tabulate(3, 1, |t| Rational::from_i64(t[0].0 as i64)).unwrap();
        let p = SetTupleFunction::product(&[a.clone(), b.clone()]).unwrap();
        let v = p.get(&[SubsetMask(3), SubsetMask(5)]);
        assert_eq!(v, Rational::from_i64(10));
        let r = p.restrict(1, &[SubsetMask(3), SubsetMask(0)]).unwrap();
        assert_eq!(r.get(&[SubsetMask(6)]), Rational::from_i64(12));
    }

    #[test]
    fn callback_mode() {
        let f = SetTupleFunction::<f64>::from_fn(13, 2, |t| (t[0].len() + t[1].len()) as f64).unwrap();
        assert!(!f.is_dense());
        assert_eq!(f.get(&[SubsetMask(3), SubsetMask(1)]), 3.0);
    }
}
