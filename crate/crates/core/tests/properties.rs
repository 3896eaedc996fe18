use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use setext::cli::{emit_graph, parse_graph};
use setext::constants::{cheeger, k_way_cheeger, motzkin_straus};
use setext::extend::{lovasz, multilinear};
use setext::linalg::Matrix;
use setext::scalar::{ratio, Rational};
use setext::setfn::{enumerate_chains, modularity_check, submodularity_check, SetTupleFunction, SubsetMask};
use setext::spectra::{
    collatz_wielandt_max, dinkelbach_ratiodca, euler_gap, quadratic_pair_spectrum, HomogeneousFn, HomogeneousPair,
    RatioDcaParams, SubspaceProjection, WeightedPower,
};
use setext::structures::{
    anti_signed_graph, balanced_components, boundary_matrix, huang_signing, hypercube, SignedGraph, SymmetricTensor,
    WeightedGraph,
};
use setext::verify::{erdos_renyi, random_rational_function, random_two_complex, seeded_rng};

fn rng(seed: u64) -> ChaCha8Rng {
    seeded_rng(seed, 9)
}

fn rat(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

fn point(n: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..n).map(|_| ratio(rng.gen_range(-8..=8), rng.gen_range(1..=3))).collect()
}

fn modular_function(n: usize, rng: &mut impl Rng) -> SetTupleFunction<Rational> {
    let w: Vec<Rational> = (0..n).map(|_| rat(rng)).collect();
    SetTupleFunction::tabulate(n, 1, |t| t[0].indices().fold(ratio(0, 1), |acc, i| acc + w[i])).unwrap()
}

fn indicator(a: SubsetMask, n: usize) -> Vec<Rational> {
    (0..n).map(|i| if a.contains(i) { ratio(1, 1) } else { ratio(0, 1) }).collect()
}

/// Lovász value from an explicit ordering of the coordinates.
fn lovasz_by_order(f: &SetTupleFunction<Rational>, x: &[Rational], order: &[usize]) -> Rational {
    let n = x.len();
    let mut value = x[order[n - 1]] * f.get(&[SubsetMask::full(n)]);
    let mut set = SubsetMask::EMPTY;
    for w in 0..n - 1 {
        set = set.union(SubsetMask::singleton(order[w]));
        value += (x[order[w]] - x[order[w + 1]]) * f.get(&[set]);
    }
    value
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn modular_implies_submodular(seed in any::<u64>(), n in 1usize..=5, k in 1usize..=2) {
        let rng = &mut rng(seed);
        let f = random_rational_function(n, k, rng).unwrap();
        for i in 0..k {
            if modularity_check(&f, i).unwrap() {
                prop_assert!(submodularity_check(&f, i).unwrap());
            }
        }
        let m = modular_function(n, rng);
        prop_assert!(modularity_check(&m, 0).unwrap());
        prop_assert!(submodularity_check(&m, 0).unwrap());
    }

    #[test]
    fn product_modularity_is_factorwise(seed in any::<u64>(), n in 1usize..=4) {
        let rng = &mut rng(seed);
        let f1 = if rng.gen_bool(0.5) { modular_function(n, rng) } else { random_rational_function(n, 1, rng).unwrap() };
        let f2 = SetTupleFunction::tabulate(n, 1, |_| ratio(1, 1) + ratio(rng.gen_range(0..3), 1)).unwrap();
        let f2 = if rng.gen_bool(0.5) { f2 } else { modular_function(n, rng) };
        let p = SetTupleFunction::product(&[f1.clone(), f2.clone()]).unwrap();
        let f2_zero = f2.table().unwrap().iter().all(|v| *v == ratio(0, 1));
        if !f2_zero {
            prop_assert_eq!(modularity_check(&p, 0).unwrap(), modularity_check(&f1, 0).unwrap());
        }
    }

    #[test]
    fn chains_closed_under_permutation(n in 1usize..=4, k in 1usize..=3) {
        let chains: std::collections::HashSet<Vec<SubsetMask>> = enumerate_chains(n, k).unwrap().collect();
        for c in &chains {
            let mut r = c.clone();
            r.reverse();
            prop_assert!(chains.contains(&r));
            let mut s = c.clone();
            s.rotate_left(1);
            prop_assert!(chains.contains(&s));
        }
    }

    #[test]
    fn multilinear_homogeneity(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=3) {
        let rng = &mut rng(seed);
        let f = random_rational_function(n, k, rng).unwrap();
        let xs: Vec<Vec<Rational>> = (0..k).map(|_| point(n, rng)).collect();
        let t = ratio(rng.gen_range(1..=7), rng.gen_range(1..=5));
        let base = multilinear(&f, &xs).unwrap();
        let scaled: Vec<Vec<Rational>> = xs.iter().map(|x| x.iter().map(|v| *v * t).collect()).collect();
        let tk = (0..k).fold(ratio(1, 1), |a, _| a * t);
        prop_assert_eq!(multilinear(&f, &scaled).unwrap(), base * tk);
        let b = rng.gen_range(0..k);
        let mut one = xs.clone();
        one[b] = xs[b].iter().map(|v| *v * t).collect();
        prop_assert_eq!(multilinear(&f, &one).unwrap(), base * t);
    }

    #[test]
    fn tie_independence(seed in any::<u64>(), n in 2usize..=5) {
        let rng = &mut rng(seed);
        let f = random_rational_function(n, 1, rng).unwrap();
        let x: Vec<Rational> = (0..n).map(|_| ratio(rng.gen_range(-2..=2), 1)).collect();
        let reference = lovasz(&f, &x).unwrap();
        for _ in 0..6 {
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            order.sort_by(|a, b| x[*b].cmp(&x[*a]));
            prop_assert_eq!(lovasz_by_order(&f, &x, &order), reference);
        }
    }

    #[test]
    fn modular_iff_linear(seed in any::<u64>(), n in 1usize..=4) {
        let rng = &mut rng(seed);
        let f = if rng.gen_bool(0.5) { modular_function(n, rng) } else { random_rational_function(n, 1, rng).unwrap() };
        let modular = modularity_check(&f, 0).unwrap();
        let mut linear = true;
        for a in 0u32..1 << n {
            for b in 0u32..1 << n {
                let (a, b) = (SubsetMask(a), SubsetMask(b));
                let sum: Vec<Rational> = indicator(a, n).iter().zip(indicator(b, n)).map(|(p, q)| *p + q).collect();
                let lhs = lovasz(&f, &sum).unwrap();
                let rhs = lovasz(&f, &indicator(a, n)).unwrap() + lovasz(&f, &indicator(b, n)).unwrap();
                linear &= lhs == rhs;
            }
        }
        prop_assert_eq!(modular, linear);
        if modular {
            let x = point(n, rng);
            let y = point(n, rng);
            let t = ratio(rng.gen_range(-5..=5), 3);
            let xy: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| *a + t * *b).collect();
            let second = lovasz(&f, &xy).unwrap() - lovasz(&f, &x).unwrap() - t * lovasz(&f, &y).unwrap();
            prop_assert_eq!(second, ratio(0, 1));
        }
    }

    #[test]
    fn separable_product(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=3) {
        let rng = &mut rng(seed);
        let fs: Vec<_> = (0..k).map(|_| random_rational_function(n, 1, rng).unwrap()).collect();
        let p = SetTupleFunction::product(&fs).unwrap();
        let xs: Vec<Vec<Rational>> = (0..k).map(|_| point(n, rng)).collect();
        let expected = fs.iter().zip(&xs).fold(ratio(1, 1), |a, (f, x)| a * lovasz(f, x).unwrap());
        prop_assert_eq!(multilinear(&p, &xs).unwrap(), expected);
        let pf = p.to_f64();
        let xf: Vec<Vec<f64>> = xs.iter().map(|x| x.iter().map(|v| *v.numer() as f64 / *v.denom() as f64).collect()).collect();
        let e = *expected.numer() as f64 / *expected.denom() as f64;
        prop_assert!((multilinear(&pf, &xf).unwrap() - e).abs() <= 1e-12 * (1.0 + e.abs()));
    }

    #[test]
    fn restriction_to_one_block(seed in any::<u64>(), n in 1usize..=4) {
        let rng = &mut rng(seed);
        let f = random_rational_function(n, 2, rng).unwrap();
        let b = SubsetMask(rng.gen_range(1..1u32 << n));
        let x = point(n, rng);
        let induced = SetTupleFunction::tabulate(n, 1, |t| f.get(&[t[0], b])).unwrap();
        let got = multilinear(&f, &[x.clone(), indicator(b, n)]).unwrap();
        prop_assert_eq!(got, lovasz(&induced, &x).unwrap());
    }

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>(), n in 3usize..=7) {
        let rng = &mut rng(seed);
        let kc = random_two_complex(n, rng);
        let dim = kc.dim().unwrap_or(0);
        for d in 1..dim {
            let p = boundary_matrix(&kc, d).unwrap().mul(&boundary_matrix(&kc, d + 1).unwrap());
            prop_assert!(p.is_zero());
        }
    }

    #[test]
    fn huang_matches_hypercube(m in 1usize..=5) {
        let w = huang_signing(m).unwrap();
        let q = hypercube(m).unwrap();
        let size = 1usize << m;
        let sq = w.mul(&w);
        for i in 0..size {
            for j in 0..size {
                prop_assert_eq!(w[(i, j)].abs() as f64, q.weight(i, j));
                prop_assert_eq!(sq[(i, j)], if i == j { m as i64 } else { 0 });
            }
        }
    }

    #[test]
    fn balance_invariant_under_switching(seed in any::<u64>(), n in 2usize..=8) {
        let rng = &mut rng(seed);
        let g = erdos_renyi(n, 0.5, rng);
        let edges: Vec<_> = g.edges().into_iter().map(|(i, j, w)| (i, j, if rng.gen_bool(0.4) { -w } else { w })).collect();
        let sg = SignedGraph::from_edges(n, &edges).unwrap();
        let s: Vec<i8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        prop_assert_eq!(balanced_components(&sg).balanced, balanced_components(&sg.switched(&s)).balanced);
    }

    #[test]
    fn anti_signed_degree_counts_cofaces(seed in any::<u64>(), n in 3usize..=7) {
        let rng = &mut rng(seed);
        let kc = random_two_complex(n, rng);
        let dim = kc.dim().unwrap_or(0);
        for d in 0..dim {
            let sg = anti_signed_graph(&kc, d).unwrap();
            let up = kc.up_degrees(d);
            for i in 0..kc.count(d) {
                let deg: f64 = (0..kc.count(d)).map(|j| sg.weight(i, j).abs()).sum();
                prop_assert_eq!(deg, (d + 1) as f64 * up[i]);
            }
        }
    }

    #[test]
    fn euler_identity(seed in any::<u64>(), n in 2usize..=6, p in 1.0f64..3.5) {
        let rng = &mut rng(seed);
        let g = setext::verify::connected_erdos_renyi(n, 0.6, rng);
        let pair = HomogeneousPair::graph_p_laplacian(&g, p, true).unwrap();
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for f in [&pair.f, &pair.g] {
            let gap = euler_gap(f.as_ref(), &x).unwrap();
            prop_assert!(gap <= 1e-9 * (1.0 + f.eval(&x).abs()), "gap {}", gap);
        }
    }

    #[test]
    fn eigenvalue_ratio_law_and_odd_bijection(seed in any::<u64>(), n in 2usize..=6) {
        let rng = &mut rng(seed);
        let mut g = erdos_renyi(n, 0.7, rng);
        for i in 0..n {
            if g.degree(i) == 0.0 {
                g.add_edge(i, (i + 1) % n, 1.0).unwrap();
            }
        }
        let pair = HomogeneousPair::graph_p_laplacian(&g, 2.0, true).unwrap();
        let (a, b) = pair.quadratic_matrices().unwrap();
        let eig = quadratic_pair_spectrum(&a, &b).unwrap();
        for (lam, x) in eig.values.iter().zip(&eig.vectors) {
            let r = pair.ratio(x).unwrap();
            prop_assert!((r - lam).abs() <= 1e-9 * (1.0 + lam.abs()));
        }
        let mut m = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && rng.gen_bool(0.3) {
                    m[(i, j)] = rng.gen_range(-0.3..0.3);
                }
            }
        }
        let c = pair.compose(&m).unwrap();
        let (ca, cb) = c.quadratic_matrices().unwrap();
        let e2 = quadratic_pair_spectrum(&ca, &cb).unwrap().values;
        for (x, y) in eig.values.iter().zip(&e2) {
            prop_assert!((x - y).abs() <= 1e-7 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn lattice_optimality(seed in any::<u64>(), n in 2usize..=4) {
        let rng = &mut rng(seed);
        let f = SetTupleFunction::tabulate(n, 1, |t| if t[0].is_empty() { 0.0 } else { rng.gen_range(0.5..3.0) }).unwrap();
        let g = SetTupleFunction::tabulate(n, 1, |t| if t[0].is_empty() { 0.0 } else { rng.gen_range(0.5..3.0) }).unwrap();
        let r = |x: &[f64]| lovasz(&f, x).unwrap() / lovasz(&g, x).unwrap();
        let big = 6usize;
        let mut lattice = f64::NEG_INFINITY;
        let mut x = vec![1usize; n];
        loop {
            let xf: Vec<f64> = x.iter().map(|v| *v as f64).collect();
            lattice = lattice.max(r(&xf));
            let mut i = 0;
            while i < n && x[i] == big {
                x[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
            x[i] += 1;
        }
        let mut vertex = f64::NEG_INFINITY;
        for m in 0u32..1 << n {
            let xf: Vec<f64> = (0..n).map(|i| if m >> i & 1 == 1 { big as f64 } else { 1.0 }).collect();
            vertex = vertex.max(r(&xf));
        }
        prop_assert!((lattice - vertex).abs() <= 1e-12 * lattice.abs().max(1.0));
        for _ in 0..300 {
            let xf: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..=big as f64)).collect();
            prop_assert!(r(&xf) <= lattice + 1e-12);
        }
    }

    #[test]
    fn dinkelbach_ratios_non_increasing(seed in any::<u64>(), n in 3usize..=6, p in 1.2f64..2.5) {
        let rng = &mut rng(seed);
        let g = setext::verify::connected_erdos_renyi(n, 0.5, rng);
        let pair = HomogeneousPair::graph_p_laplacian(&g, p, true).unwrap();
        let proj = SubspaceProjection::constants(WeightedPower::new(g.degrees(), p).unwrap());
        let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let params = RatioDcaParams { max_iter: 40, inner_iter: 2000, ..RatioDcaParams::default() };
        let f1: Arc<dyn HomogeneousFn> = pair.f.clone();
        if let Ok(run) = dinkelbach_ratiodca(&f1, None, &proj, &x0, &params) {
            for w in run.ratios.windows(2) {
                prop_assert!(w[1] <= w[0], "{:?}", run.ratios);
            }
        }
    }

    #[test]
    fn collatz_wielandt_certificate(seed in any::<u64>(), n in 2usize..=4, k in 3usize..=4) {
        let rng = &mut rng(seed);
        let mut t = SymmetricTensor::new(k, n).unwrap();
        let mut idx = vec![0usize; k];
        loop {
            if idx.windows(2).all(|w| w[0] <= w[1]) {
                t.set(&idx, rng.gen_range(0.1..1.0)).unwrap();
            }
            let mut i = 0;
            while i < k && idx[i] == n - 1 {
                idx[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
            idx[i] += 1;
        }
        let r = collatz_wielandt_max(&t, &vec![1.0; n], 1e-10, 100_000).unwrap();
        prop_assert!(r.converged);
        prop_assert!(r.upper - r.lower <= 1e-10 * r.upper.max(1.0));
    }

    #[test]
    fn cheeger_optimum_re_evaluates(seed in any::<u64>(), n in 3usize..=8) {
        let rng = &mut rng(seed);
        let g = setext::verify::connected_erdos_renyi(n, 0.5, rng);
        let r = cheeger(&g).unwrap();
        let a = r.sets[0];
        let full = SubsetMask::full(n);
        let v = g.cut(a) / g.volume(a).min(g.volume(a.complement(n).intersect(full)));
        prop_assert_eq!(v, r.value);
        let mut prev = 0.0;
        for k in 1..=3.min(n) {
            let h = k_way_cheeger(&g, k).unwrap().value;
            prop_assert!(h >= prev - 1e-12);
            prev = h;
        }
    }

    #[test]
    fn motzkin_straus_never_exceeds(seed in any::<u64>(), n in 2usize..=7) {
        let rng = &mut rng(seed);
        let g = erdos_renyi(n, 0.5, rng);
        prop_assume!(g.num_edges() > 0);
        let r = motzkin_straus(&g, 8, seed).unwrap();
        prop_assert!(r.ascent_best <= r.exact + 1e-6);
    }

    #[test]
    fn graph_files_round_trip(seed in any::<u64>(), n in 1usize..=9) {
        let rng = &mut rng(seed);
        let mut g = WeightedGraph::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(0.4) {
                    g.add_edge(i, j, rng.gen_range(1e-3..1e3)).unwrap();
                }
            }
        }
        prop_assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
    }
}
