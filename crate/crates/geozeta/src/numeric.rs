//! Quadrature, the logarithmic integral, and order-independent summation.

use num_complex::Complex64;
use rayon::prelude::*;
use std::ops::Add;
use std::sync::OnceLock;

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

fn gl20() -> &'static (Vec<f64>, Vec<f64>) {
    static NODES: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    NODES.get_or_init(|| gauss_legendre(20))
}

/// 20-point Gauss-Legendre on `[a, b]` split into `pieces` equal parts.
pub fn gl_integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, pieces: usize) -> f64 {
    let (x, w) = gl20();
    let h = (b - a) / pieces as f64;
    let mut total = 0.0;
    for p in 0..pieces {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let mut s = 0.0;
        for (xi, wi) in x.iter().zip(w) {
            s += wi * f(mid + 0.5 * h * xi);
        }
        total += 0.5 * h * s;
    }
    total
}

const GK_X: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const GK_WK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const GK_WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * GK_WK[7];
    let mut g = fc * GK_WG[3];
    for i in 0..7 {
        let x = h * GK_X[i];
        let s = f(c - x) + f(c + x);
        k += GK_WK[i] * s;
        if i % 2 == 1 {
            g += GK_WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss-Kronrod (7/15) with absolute tolerance `tol`.
pub fn adaptive_gk<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        // rounding floor: no point refining below a few ulps of the value
        if err <= tol.max(v.abs() * 4.0 * f64::EPSILON) || depth > 40 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, tol * 0.5, depth + 1) + rec(f, m, b, tol * 0.5, depth + 1)
    }
    rec(&f, a, b, tol, 0)
}

/// `li(x) = int_2^x dt / log t`, computed as `int_{log 2}^{log x} e^u / u du`.
pub fn li(x: f64) -> f64 {
    assert!(x >= 2.0, "li is defined here for x >= 2");
    if x == 2.0 {
        return 0.0;
    }
    adaptive_gk(|u: f64| u.exp() / u, std::f64::consts::LN_2, x.ln(), 1e-10)
}

/// `int_a^b dt / log t` for short intervals with `a >= 2`.
pub fn li_increment(a: f64, b: f64) -> f64 {
    gl_integrate(|t| 1.0 / t.ln(), a, b, 1)
}

/// Pairwise (cascade) summation in a fixed tree order.
pub fn pairwise_sum<T: Copy + Add<Output = T>>(xs: &[T], zero: T) -> T {
    match xs.len() {
        0 => zero,
        1 => xs[0],
        n if n <= 8 => xs[1..].iter().fold(xs[0], |a, &b| a + b),
        n => {
            let m = n / 2;
            pairwise_sum(&xs[..m], zero) + pairwise_sum(&xs[m..], zero)
        }
    }
}

/// Items per chunk in the parallel reductions; fixed so results do not
/// depend on the number of threads.
pub const CHUNK: usize = 512;

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("ZETA_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
            if n > 0 {
                b = b.num_threads(n);
            }
        }
        b.build().expect("thread pool")
    })
}

/// Sums `f(i)` for `i in 0..n` by fixed chunks, each chunk summed pairwise and
/// the chunk totals combined pairwise: bit-identical for any thread count.
pub fn par_sum<T, F>(n: usize, zero: T, f: F) -> T
where
    T: Copy + Add<Output = T> + Send + Sync,
    F: Fn(usize) -> T + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let partial: Vec<T> = pool().install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * CHUNK;
                let hi = (lo + CHUNK).min(n);
                let vals: Vec<T> = (lo..hi).map(&f).collect();
                pairwise_sum(&vals, zero)
            })
            .collect()
    });
    pairwise_sum(&partial, zero)
}

pub fn par_sum_c<F>(n: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    par_sum(n, Complex64::new(0.0, 0.0), f)
}

pub fn par_sum_f<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    par_sum(n, 0.0, f)
}

/// Composite Simpson with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}
