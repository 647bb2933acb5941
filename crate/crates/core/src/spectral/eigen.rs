//! Symmetric eigensolvers: Householder tridiagonalisation with implicit QL
//! for dense matrices, and Lanczos with full reorthogonalisation for
//! operators.

use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Householder reduction of the row-major symmetric matrix `a` (n×n) to
/// tridiagonal form. Returns `(diagonal, off_diagonal)` with `off[0] = 0`.
fn tridiagonalize<T: Scalar>(a: &mut [T], n: usize) -> (Vec<T>, Vec<T>) {
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    let at = |i: usize, j: usize| i * n + j;
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = T::zero();
        if l > 0 {
            let scale = (0..=l).fold(T::zero(), |s, k| s + a[at(i, k)].abs());
            if scale == T::zero() {
                e[i] = a[at(i, l)];
            } else {
                for k in 0..=l {
                    a[at(i, k)] = a[at(i, k)] / scale;
                    h = h + a[at(i, k)] * a[at(i, k)];
                }
                let f = a[at(i, l)];
                let g = if f >= T::zero() { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h = h - f * g;
                a[at(i, l)] = f - g;
                let mut f = T::zero();
                for j in 0..=l {
                    let mut g = T::zero();
                    for k in 0..=j {
                        g = g + a[at(j, k)] * a[at(i, k)];
                    }
                    for k in j + 1..=l {
                        g = g + a[at(k, j)] * a[at(i, k)];
                    }
                    e[j] = g / h;
                    f = f + e[j] * a[at(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[at(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[at(j, k)] = a[at(j, k)] - (f * e[k] + g * a[at(i, k)]);
                    }
                }
            }
        } else {
            e[i] = a[at(i, l)];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[at(i, i)];
    }
    (d, e)
}

/// Implicit QL on a symmetric tridiagonal matrix. `off[i]` couples `i-1`
/// and `i` (`off[0]` ignored). When `vectors` is given (row-major n×n,
/// initialised to the identity) it accumulates eigenvectors as columns.
pub(crate) fn tridiagonal_ql<T: Scalar>(
    diag: &mut [T],
    off: &[T],
    mut vectors: Option<&mut [T]>,
) -> Result<(), &'static str> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    let mut e: Vec<T> = (1..n).map(|i| off[i]).chain(std::iter::once(T::zero())).collect();
    let d = diag;
    let eps = T::epsilon();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err("QL iteration did not converge");
            }
            let two = T::of(2.0);
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = vectors.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

/// All eigenvalues of the row-major symmetric matrix `a`, ascending.
pub fn symmetric_eigenvalues<T: Scalar>(mut a: Vec<T>, n: usize) -> Result<Vec<T>, &'static str> {
    assert_eq!(a.len(), n * n);
    let (mut d, e) = tridiagonalize(&mut a, n);
    tridiagonal_ql(&mut d, &e, None)?;
    d.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(d)
}

/// Extreme eigenvalues found by Lanczos.
#[derive(Debug, Clone, Copy)]
pub struct Extremes<T> {
    pub min: T,
    pub max: T,
    pub residual: T,
    pub converged: bool,
    pub steps: usize,
}

/// Lanczos with full reorthogonalisation on the symmetric operator `apply`.
/// With `deflate_ones` every Krylov vector is kept orthogonal to the all-ones
/// vector. Stops when both extreme Ritz residuals fall below `tol`, restarting
/// from the extreme Ritz vectors when the window fills.
pub fn lanczos_extremes<T: Scalar>(
    n: usize,
    apply: impl Fn(&[T], &mut [T]),
    deflate_ones: bool,
    tol: T,
    window: usize,
    restarts: usize,
    seed: u64,
) -> Extremes<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = if deflate_ones { n.saturating_sub(1) } else { n };
    if dim == 0 {
        return Extremes { min: T::zero(), max: T::zero(), residual: T::zero(), converged: true, steps: 0 };
    }
    let window = window.max(2).min(dim);
    let mut start: Vec<T> = (0..n).map(|_| T::of(rng.gen::<f64>() - 0.5)).collect();
    let mut best = Extremes { min: T::zero(), max: T::zero(), residual: T::infinity(), converged: false, steps: 0 };
    let project = |v: &mut [T]| {
        if deflate_ones {
            let s = v.iter().fold(T::zero(), |a, &x| a + x) / T::of_usize(n);
            v.iter_mut().for_each(|x| *x = *x - s);
        }
    };
    for _ in 0..=restarts {
        project(&mut start);
        if !normalize(&mut start) {
            start = (0..n).map(|_| T::of(rng.gen::<f64>() - 0.5)).collect();
            project(&mut start);
            normalize(&mut start);
        }
        let mut basis: Vec<Vec<T>> = vec![start.clone()];
        let mut alpha: Vec<T> = Vec::new();
        let mut beta: Vec<T> = vec![T::zero()];
        let mut w = vec![T::zero(); n];
        let outcome;
        loop {
            let j = basis.len() - 1;
            apply(&basis[j], &mut w);
            project(&mut w);
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(&w, b);
                    axpy(&mut w, -c, b);
                }
                project(&mut w);
            }
            let b = norm(&w);
            best.steps += 1;
            let m = alpha.len();
            let exhausted = b <= T::epsilon() * T::of(1e3) * (a.abs() + T::one()) || m == dim;
            if exhausted || m == window || m % 8 == 0 {
                let (ritz, vecs) = ritz_pairs(&alpha, &beta);
                let (imin, imax) = (0, m - 1);
                let res = |i: usize| (b * vecs[(m - 1) * m + i]).abs();
                let residual = if exhausted { T::zero() } else { res(imin).max(res(imax)) };
                let ext = Extremes {
                    min: ritz[imin],
                    max: ritz[imax],
                    residual,
                    converged: residual < tol,
                    steps: best.steps,
                };
                if ext.converged || exhausted || m == window {
                    let combine = |i: usize| -> Vec<T> {
                        let mut v = vec![T::zero(); n];
                        for (k, bv) in basis.iter().enumerate() {
                            axpy(&mut v, vecs[k * m + i], bv);
                        }
                        v
                    };
                    let lo = combine(imin);
                    let mut hi = combine(imax);
                    axpy(&mut hi, T::one(), &lo);
                    outcome = Some((ext, hi));
                    break;
                }
            }
            w.iter_mut().for_each(|x| *x = *x / b);
            beta.push(b);
            basis.push(std::mem::replace(&mut w, vec![T::zero(); n]));
        }
        let (ext, next) = outcome.expect("loop exits with an outcome");
        let steps = best.steps;
        best = Extremes { steps, ..ext };
        if ext.converged {
            break;
        }
        start = next;
    }
    best
}

fn ritz_pairs<T: Scalar>(alpha: &[T], beta: &[T]) -> (Vec<T>, Vec<T>) {
    let m = alpha.len();
    let mut d = alpha.to_vec();
    let mut z = vec![T::zero(); m * m];
    for i in 0..m {
        z[i * m + i] = T::one();
    }
    tridiagonal_ql(&mut d, &beta[..m], Some(&mut z)).expect("tridiagonal QL converges");
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite"));
    let vals = idx.iter().map(|&i| d[i]).collect();
    let mut vecs = vec![T::zero(); m * m];
    for (new, &old) in idx.iter().enumerate() {
        for k in 0..m {
            vecs[k * m + new] = z[k * m + old];
        }
    }
    (vals, vecs)
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y)
}

fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

fn axpy<T: Scalar>(y: &mut [T], c: T, x: &[T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = *yi + c * xi;
    }
}

fn normalize<T: Scalar>(v: &mut [T]) -> bool {
    let s = norm(v);
    if s <= T::epsilon() {
        return false;
    }
    v.iter_mut().for_each(|x| *x = *x / s);
    true
}
