//! Nonsmooth convex minimization over norm balls by the ellipsoid method,
//! and ascent for convex maximization over the same balls.

use crate::linalg::{dot, norm_p};

/// `{x : ‖x‖_q <= radius}` for `q ∈ [1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBall {
    pub q: f64,
    pub radius: f64,
}

impl NormBall {
    pub fn new(q: f64, radius: f64) -> Self {
        NormBall { q, radius }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        norm_p(x, self.q) <= self.radius * (1.0 + 1e-12)
    }

    /// Subgradient of `‖x‖_q` at `x ≠ 0`.
    pub fn norm_subgradient(&self, x: &[f64]) -> Vec<f64> {
        norm_subgradient(x, self.q)
    }

    /// Radius of a Euclidean ball containing this ball.
    pub fn euclidean_cover(&self, n: usize) -> f64 {
        if self.q <= 2.0 {
            self.radius
        } else if self.q.is_infinite() {
            self.radius * (n as f64).sqrt()
        } else {
            self.radius * (n as f64).powf(0.5 - 1.0 / self.q)
        }
    }

    /// `argmax_{x in ball} <c, x>`; the value is `radius * ‖c‖_{q*}`.
    pub fn linear_maximizer(&self, c: &[f64]) -> Vec<f64> {
        let n = c.len();
        let mut x = vec![0.0; n];
        if self.q.is_infinite() {
            for i in 0..n {
                x[i] = if c[i] >= 0.0 { self.radius } else { -self.radius };
            }
        } else if self.q == 1.0 {
            let i = argmax_abs(c);
            x[i] = if c[i] >= 0.0 { self.radius } else { -self.radius };
        } else {
            let qs = self.q / (self.q - 1.0);
            for i in 0..n {
                x[i] = c[i].signum() * c[i].abs().powf(qs - 1.0);
            }
            let nx = norm_p(&x, self.q);
            if nx > 0.0 {
                x.iter_mut().for_each(|v| *v *= self.radius / nx);
            } else {
                x[0] = self.radius;
            }
        }
        x
    }
}

fn argmax_abs(c: &[f64]) -> usize {
    let mut best = 0;
    for i in 1..c.len() {
        if c[i].abs() > c[best].abs() {
            best = i;
        }
    }
    best
}

/// A subgradient of `‖z‖_q`.
pub fn norm_subgradient(z: &[f64], q: f64) -> Vec<f64> {
    let n = z.len();
    let mut g = vec![0.0; n];
    let nz = norm_p(z, q);
    if nz == 0.0 {
        return g;
    }
    if q.is_infinite() {
        let i = argmax_abs(z);
        g[i] = z[i].signum();
    } else if q == 1.0 {
        for i in 0..n {
            g[i] = if z[i] > 0.0 {
                1.0
            } else if z[i] < 0.0 {
                -1.0
            } else {
                0.0
            };
        }
    } else {
        for i in 0..n {
            g[i] = z[i].signum() * (z[i].abs() / nz).powf(q - 1.0);
        }
    }
    g
}

#[derive(Debug, Clone)]
pub struct ConvexSolution {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    /// Bound on the optimality gap of `value` for convex objectives.
    pub gap_bound: f64,
}

/// Minimizes a convex `f` over `ball` with the central-cut ellipsoid method.
pub fn ellipsoid_minimize(
    n: usize,
    ball: NormBall,
    f: &dyn Fn(&[f64]) -> f64,
    sub: &dyn Fn(&[f64]) -> Vec<f64>,
    max_iter: usize,
    tol: f64,
) -> ConvexSolution {
    if n == 1 {
        return bisect_1d(ball.radius, f, sub, tol);
    }
    let nf = n as f64;
    let r0 = ball.euclidean_cover(n) * (1.0 + 1e-9);
    let mut x = vec![0.0; n];
    let mut p = vec![0.0; n * n];
    for i in 0..n {
        p[i * n + i] = r0 * r0;
    }
    let mut best_x = x.clone();
    let mut best = f(&x);
    let mut gap_bound = f64::INFINITY;
    let mut pg = vec![0.0; n];
    let mut it = 0;
    while it < max_iter {
        it += 1;
        let g = if ball.contains(&x) {
            let v = f(&x);
            if v < best {
                best = v;
                best_x = x.clone();
            }
            let g = sub(&x);
            if g.iter().all(|a| *a == 0.0) {
                gap_bound = 0.0;
                break;
            }
            g
        } else {
            ball.norm_subgradient(&x)
        };
        for i in 0..n {
            pg[i] = dot(&p[i * n..(i + 1) * n], &g);
        }
        let gpg = dot(&g, &pg).max(0.0);
        if gpg <= 0.0 {
            break;
        }
        let s = gpg.sqrt();
        if ball.contains(&x) {
            gap_bound = gap_bound.min(s);
            if s <= tol * (1.0 + best.abs()) {
                break;
            }
        }
        for i in 0..n {
            x[i] -= pg[i] / (s * (nf + 1.0));
        }
        let c1 = nf * nf / (nf * nf - 1.0);
        let c2 = 2.0 / ((nf + 1.0) * gpg);
        for i in 0..n {
            for j in 0..n {
                p[i * n + j] = c1 * (p[i * n + j] - c2 * pg[i] * pg[j]);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let a = 0.5 * (p[i * n + j] + p[j * n + i]);
                p[i * n + j] = a;
                p[j * n + i] = a;
            }
        }
    }
    ConvexSolution { x: best_x, value: best, iterations: it, gap_bound }
}

fn bisect_1d(radius: f64, f: &dyn Fn(&[f64]) -> f64, sub: &dyn Fn(&[f64]) -> Vec<f64>, tol: f64) -> ConvexSolution {
    let (mut lo, mut hi) = (-radius, radius);
    let mut it = 0;
    while hi - lo > tol * radius.max(1.0) && it < 200 {
        it += 1;
        let mid = 0.5 * (lo + hi);
        let g = sub(&[mid])[0];
        if g > 0.0 {
            hi = mid;
        } else if g < 0.0 {
            lo = mid;
        } else {
            lo = mid;
            hi = mid;
        }
    }
    let cands = [-radius, radius, 0.5 * (lo + hi)];
    let mut best = (cands[0], f(&[cands[0]]));
    for &c in &cands[1..] {
        let v = f(&[c]);
        if v < best.1 {
            best = (c, v);
        }
    }
    ConvexSolution { x: vec![best.0], value: best.1, iterations: it, gap_bound: hi - lo }
}

/// Maximizes a convex `f` over `ball` by repeated linearization
/// `x <- argmax_{ball} <g, x>`; values are non-decreasing.
pub fn linearized_ascent(
    ball: NormBall,
    f: &dyn Fn(&[f64]) -> f64,
    sub: &dyn Fn(&[f64]) -> Vec<f64>,
    start: &[f64],
    max_iter: usize,
) -> (Vec<f64>, f64) {
    let mut x = start.to_vec();
    let nx = norm_p(&x, ball.q);
    if nx > 0.0 {
        x.iter_mut().for_each(|v| *v *= ball.radius / nx);
    }
    let mut val = f(&x);
    for _ in 0..max_iter {
        let g = sub(&x);
        let y = ball.linear_maximizer(&g);
        let vy = f(&y);
        if vy <= val + 1e-15 * val.abs().max(1.0) {
            if vy > val {
                x = y;
                val = vy;
            }
            break;
        }
        x = y;
        val = vy;
    }
    (x, val)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ellipsoid_on_quadratic() {
        let f = |x: &[f64]| (x[0] - 0.3).powi(2) + 2.0 * (x[1] + 0.2).powi(2) + (x[2] - 0.1).abs();
        let sub = |x: &[f64]| vec![2.0 * (x[0] - 0.3), 4.0 * (x[1] + 0.2), (x[2] - 0.1).signum()];
        let s = ellipsoid_minimize(3, NormBall::new(2.0, 1.0), &f, &sub, 20000, 1e-12);
        assert!(s.value.abs() < 1e-9, "{s:?}");
    }

    #[test]
    fn ellipsoid_constrained_linear() {
        let c = [1.0, -2.0, 0.5];
        let f = |x: &[f64]| dot(&c, x);
        let sub = |_: &[f64]| c.to_vec();
        let s = ellipsoid_minimize(3, NormBall::new(f64::INFINITY, 1.0), &f, &sub, 20000, 1e-12);
        assert!((s.value + 3.5).abs() < 1e-8, "{s:?}");
        let s = ellipsoid_minimize(3, NormBall::new(2.0, 1.0), &f, &sub, 20000, 1e-12);
        assert!((s.value + norm_p(&c, 2.0)).abs() < 1e-8, "{s:?}");
    }

    #[test]
    fn ascent_finds_operator_norm() {
        let f = |x: &[f64]| (2.0 * x[0] + x[1]).abs() + (x[0] - x[1]).abs();
        let sub = |x: &[f64]| {
            let s1 = (2.0 * x[0] + x[1]).signum();
            let s2 = (x[0] - x[1]).signum();
            vec![2.0 * s1 + s2, s1 - s2]
        };
        let (_, v) = linearized_ascent(NormBall::new(f64::INFINITY, 1.0), &f, &sub, &[0.3, 0.1], 100);
        assert!((v - 3.0).abs() < 1e-12, "{v}");
    }
}
