//! Counting functions over a spectrum, the bump-weighted window sums, the
//! difference operator, Tauberian extrapolation and main-term fits.

use crate::cartan::det_one_minus_ad_n_at;
use crate::euler_char::Q;
use crate::km_ring::{sigma_tilde, VirtualRep};
use crate::numeric::{gl_integrate, par_sum_f};
use crate::spectrum::{PrimitiveClass, Spectrum};
use num_integer::binomial;
use num_traits::{One, Zero};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CountError {
    #[error("x = {0} is below 2")]
    BelowTwo(f64),
    #[error("invalid window: {0}")]
    BadWindow(String),
    #[error("input is not monotone non-decreasing at index {0}")]
    NotMonotone(usize),
    #[error("input is negative at index {0}")]
    Negative(usize),
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
}

/// Open box `(t0, t1) x (p0, p1)` in radians with `t0` in `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub t0: f64,
    pub t1: f64,
    pub p0: f64,
    pub p1: f64,
}

impl Rect {
    /// From bounds in units of pi.
    pub fn from_pi_units(t0: f64, t1: f64, p0: f64, p1: f64) -> Result<Rect, CountError> {
        for (a, b, name) in [(t0, t1, "theta"), (p0, p1, "phi")] {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(CountError::BadWindow(format!("{name} range ({a}, {b}) is empty")));
            }
            if b > a.floor() + 1.0 {
                return Err(CountError::BadWindow(format!(
                    "{name} range ({a}, {b}) crosses a multiple of pi"
                )));
            }
        }
        let shift = 2.0 * (t0 / 2.0).floor();
        let pshift = 2.0 * (p0 / 2.0).floor();
        Ok(Rect {
            t0: (t0 - shift) * PI,
            t1: (t1 - shift) * PI,
            p0: (p0 - pshift) * PI,
            p1: (p1 - pshift) * PI,
        })
    }

    fn pi_units(&self) -> [f64; 4] {
        [self.t0 / PI, self.t1 / PI, self.p0 / PI, self.p1 / PI]
    }

    fn flipped(&self) -> Rect {
        let [t0, t1, p0, p1] = self.pi_units();
        Rect::from_pi_units(-t1, -t0, -p1, -p0).expect("flip of a valid box")
    }

    fn same_as(&self, o: &Rect) -> bool {
        self.pi_units()
            .iter()
            .zip(o.pi_units())
            .all(|(a, b)| (a - b).abs() < 1e-12)
    }

    /// Distance to the boundary for a point inside, `None` outside.
    pub fn inner_distance(&self, theta: f64, phi: f64) -> Option<f64> {
        let tt = self.t0 + (theta - self.t0).rem_euclid(2.0 * PI);
        let pp = self.p0 + (phi - self.p0).rem_euclid(2.0 * PI);
        if tt > self.t0 && tt < self.t1 && pp > self.p0 && pp < self.p1 {
            Some((tt - self.t0).min(self.t1 - tt).min(pp - self.p0).min(self.p1 - pp))
        } else {
            None
        }
    }
}

/// Union of open boxes on the torus, closed under `(theta, phi) -> (-theta, -phi)`.
/// `margin` is the width of the transition band of the bump weight; `0` gives
/// the sharp indicator.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    rects: Vec<Rect>,
    pub margin: f64,
}

impl Window {
    /// Adds the flipped box of every box that lacks one.
    pub fn new(rects: Vec<Rect>, margin: f64) -> Result<Window, CountError> {
        if !(margin >= 0.0 && margin.is_finite()) {
            return Err(CountError::BadWindow(format!("margin {margin} must be >= 0")));
        }
        let mut all: Vec<Rect> = Vec::new();
        for r in rects {
            for cand in [r, r.flipped()] {
                if !all.iter().any(|x| x.same_as(&cand)) {
                    all.push(cand);
                }
            }
        }
        Ok(Window { rects: all, margin })
    }

    pub fn empty() -> Window {
        Window { rects: Vec::new(), margin: 0.0 }
    }

    /// All four open quadrants.
    pub fn full_torus(margin: f64) -> Window {
        Window::parse("0,1,0,1;0,1,1,2", margin).expect("valid")
    }

    /// `(0, pi)^2` and its flip.
    pub fn half_torus(margin: f64) -> Window {
        Window::parse("0,1,0,1", margin).expect("valid")
    }

    /// The four quadrants shrunk by `alpha pi` on every side.
    pub fn inset(alpha: f64, margin: f64) -> Result<Window, CountError> {
        let (a, b) = (alpha, 1.0 - alpha);
        Window::new(
            vec![
                Rect::from_pi_units(a, b, a, b)?,
                Rect::from_pi_units(a, b, 1.0 + a, 1.0 + b)?,
            ],
            margin,
        )
    }

    /// `"t0,t1,p0,p1;..."` in units of pi.
    pub fn parse(spec: &str, margin: f64) -> Result<Window, CountError> {
        let mut rects = Vec::new();
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let nums: Vec<f64> = part
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| CountError::BadWindow(format!("`{x}` is not a number in box `{part}`")))
                })
                .collect::<Result<_, _>>()?;
            let [t0, t1, p0, p1] = nums[..] else {
                return Err(CountError::BadWindow(format!(
                    "box `{part}` needs four numbers t0,t1,p0,p1"
                )));
            };
            rects.push(Rect::from_pi_units(t0, t1, p0, p1)?);
        }
        Window::new(rects, margin)
    }

    pub fn with_margin(&self, margin: f64) -> Window {
        Window { rects: self.rects.clone(), margin }
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn contains(&self, theta: f64, phi: f64) -> bool {
        self.rects.iter().any(|r| r.inner_distance(theta, phi).is_some())
    }

    /// Bump weight: 1 at distance `>= margin` from the boundary, a C^2 quintic
    /// ramp in the distance below that, 0 outside.
    pub fn weight(&self, theta: f64, phi: f64) -> f64 {
        self.rects
            .iter()
            .filter_map(|r| r.inner_distance(theta, phi))
            .map(|d| ramp(d, self.margin))
            .fold(0.0, f64::max)
    }
}

fn ramp(d: f64, margin: f64) -> f64 {
    if margin == 0.0 {
        return 1.0;
    }
    let t = (d / margin).min(1.0);
    t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
}

fn chi_at(c: &PrimitiveClass, k: u64) -> f64 {
    c.chi1_at_power(k)
}

/// Sum of `f(class, k)` over powers `gamma_0^k` with `k l0 <= log x`.
fn sum_powers(sp: &Spectrum, x: f64, f: impl Fn(&PrimitiveClass, u64) -> f64 + Sync) -> f64 {
    if !(x > 1.0) {
        return 0.0;
    }
    let lx = x.ln();
    let classes = sp.classes();
    let n = classes.partition_point(|c| c.l0 <= lx);
    par_sum_f(n, |i| {
        let c = &classes[i];
        let mut acc = 0.0;
        let mut k = 1u64;
        while k as f64 * c.l0 <= lx {
            acc += f(c, k);
            k += 1;
        }
        acc
    })
}

fn sum_primitive(sp: &Spectrum, x: f64, f: impl Fn(&PrimitiveClass) -> f64 + Sync) -> f64 {
    if !(x > 1.0) {
        return 0.0;
    }
    let lx = x.ln();
    let classes = sp.classes();
    let n = classes.partition_point(|c| c.l0 <= lx);
    par_sum_f(n, |i| f(&classes[i]))
}

fn sigma_tilde_weight(st: &VirtualRep, c: &PrimitiveClass, k: u64) -> f64 {
    let a = c.angles.times(k);
    if a.is_regular() {
        st.trace_at_pair(&a)
    } else {
        0.0
    }
}

/// `sum_{N(gamma) <= x} chi_1(Gamma_gamma) l0` over all powers.
pub fn psi(sp: &Spectrum, x: f64) -> f64 {
    sum_powers(sp, x, |c, k| chi_at(c, k) * c.l0)
}

/// As `psi` over regular powers, weighted by the sigma-tilde trace.
pub fn psi_tilde(sp: &Spectrum, x: f64) -> f64 {
    let st = sigma_tilde();
    sum_powers(sp, x, |c, k| chi_at(c, k) * c.l0 * sigma_tilde_weight(&st, c, k))
}

/// As `psi`, weighted by the bump weight of the window at the angles of the power.
pub fn psi_window(sp: &Spectrum, w: &Window, x: f64) -> f64 {
    sum_powers(sp, x, |c, k| {
        let (t, p) = c.angles.times(k).radians();
        chi_at(c, k) * c.l0 * w.weight(t, p)
    })
}

/// As `psi` over powers whose angles lie in the open window.
pub fn psi1(sp: &Spectrum, w: &Window, x: f64) -> f64 {
    sum_powers(sp, x, |c, k| {
        let (t, p) = c.angles.times(k).radians();
        if w.contains(t, p) {
            chi_at(c, k) * c.l0
        } else {
            0.0
        }
    })
}

/// `sum chi_1(Gamma_{gamma_0})` over primitive classes with `N <= x`.
pub fn pi_count(sp: &Spectrum, x: f64) -> f64 {
    sum_primitive(sp, x, chi1_primitive)
}

fn chi1_primitive(c: &PrimitiveClass) -> f64 {
    chi_at(c, 1)
}

/// Regular primitive classes weighted by the sigma-tilde trace.
pub fn pi_tilde(sp: &Spectrum, x: f64) -> f64 {
    let st = sigma_tilde();
    sum_primitive(sp, x, |c| chi1_primitive(c) * sigma_tilde_weight(&st, c, 1))
}

/// Primitive classes whose angles lie in the open window.
pub fn pi1(sp: &Spectrum, w: &Window, x: f64) -> f64 {
    sum_primitive(sp, x, |c| {
        let (t, p) = c.angles.radians();
        if w.contains(t, p) {
            chi1_primitive(c)
        } else {
            0.0
        }
    })
}

/// `(1/j!) sum_{N(gamma) <= x} chi_1(Gamma_gamma) l0 (x - N(gamma))^j`.
pub fn psi_j(sp: &Spectrum, j: u32, x: f64) -> f64 {
    let fact: f64 = (1..=j).map(f64::from).product();
    sum_powers(sp, x, |c, k| {
        let n = (k as f64 * c.l0).exp();
        chi_at(c, k) * c.l0 * (x - n).powi(j as i32)
    }) / fact
}

/// `sum_{i=0}^{2D} (-1)^i C(2D, i) f(x + (2D - i) d)`.
pub fn delta_op(f: impl Fn(f64) -> f64, d: f64, big_d: u32, x: f64) -> f64 {
    let n = 2 * big_d as u64;
    (0..=n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(n, i) as f64 * f(x + (n - i) as f64 * d)
        })
        .sum()
}

/// `delta_op` applied to the polynomial with coefficients `coeffs` (constant
/// term first) and a rational step, in exact arithmetic.
pub fn delta_poly(coeffs: &[Q], d: Q, big_d: u32) -> Vec<Q> {
    let n = 2 * big_d as i64;
    let mut out = vec![Q::zero(); coeffs.len().max(1)];
    for i in 0..=n {
        let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
        let c = sign * Q::from_integer(binomial(n, i));
        let shift = Q::from_integer(n - i) * d;
        // f(x + shift) = sum_p a_p sum_r C(p, r) x^r shift^{p-r}
        for (p, a) in coeffs.iter().enumerate() {
            for r in 0..=p {
                let term = *a * Q::from_integer(binomial(p as i64, r as i64)) * pow_q(shift, (p - r) as u32);
                out[r] += c * term;
            }
        }
    }
    while out.len() > 1 && out.last() == Some(&Q::zero()) {
        out.pop();
    }
    out
}

fn pow_q(x: Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

/// `li(x) = int_2^x dt / log t`.
pub fn li(x: f64) -> Result<f64, CountError> {
    if !(x >= 2.0) {
        return Err(CountError::BelowTwo(x));
    }
    Ok(crate::numeric::li(x))
}

/// `sum_{N(gamma) <= x} chi_1(Gamma_{gamma_0}) l0 / l_gamma` over all powers.
pub fn s_fn(sp: &Spectrum, x: f64) -> Result<f64, CountError> {
    if !(x >= 2.0) {
        return Err(CountError::BelowTwo(x));
    }
    Ok(sum_powers(sp, x, |c, k| chi1_primitive(c) / k as f64))
}

/// `phi^j` terms `(l_gamma, chi_1 h(b_gamma) l0 l_gamma^{j+1} / det(1 - Ad((ab)^k)|n))`
/// for powers with `l_gamma <= l_max`, sorted by length.
pub fn phi_terms(sp: &Spectrum, w: &Window, j: u32, l_max: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for c in sp.classes() {
        let mut k = 1u64;
        while k as f64 * c.l0 <= l_max {
            let l = k as f64 * c.l0;
            let (t, p) = c.angles.times(k).radians();
            let h = w.weight(t, p);
            if h > 0.0 {
                let det = det_one_minus_ad_n_at(l, t, p);
                out.push((l, chi_at(c, k) * h * c.l0 * l.powi(j as i32 + 1) / det));
            }
            k += 1;
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// `phi^j(x)`: the `phi_terms` weights summed over `N(gamma) <= x`.
pub fn phi_nj(sp: &Spectrum, w: &Window, j: u32, x: f64) -> f64 {
    if !(x > 1.0) {
        return 0.0;
    }
    let lx = x.ln();
    sum_powers(sp, x, |c, k| {
        let l = k as f64 * c.l0;
        let (t, p) = c.angles.times(k).radians();
        let h = w.weight(t, p);
        if h == 0.0 || l > lx {
            return 0.0;
        }
        chi_at(c, k) * h * c.l0 * l.powi(j as i32 + 1) / det_one_minus_ad_n_at(l, t, p)
    })
}

/// Estimates `lim A(x) x^{-(j+1)} e^{-x}` from samples of a non-negative
/// non-decreasing `A` on an increasing grid.
///
/// The scaled values at the grid points nearest `x_max`, `x_max - log(10)/2`
/// and `x_max - log(10)` (the last decade of `e^x`) are extrapolated to
/// `1/x = 0` by a quadratic in `1/x`.
pub fn tauberian_estimate(xs: &[f64], a: &[f64], j: u32) -> Result<f64, CountError> {
    if xs.len() != a.len() || xs.len() < 3 {
        return Err(CountError::DegenerateGrid("need at least three samples".into()));
    }
    for i in 0..xs.len() {
        if a[i] < 0.0 {
            return Err(CountError::Negative(i));
        }
        if i > 0 && (a[i] < a[i - 1] || xs[i] <= xs[i - 1]) {
            return Err(CountError::NotMonotone(i));
        }
    }
    let x_max = xs[xs.len() - 1];
    let decade = std::f64::consts::LN_10;
    if !(xs[0] <= x_max - decade + 1e-9 && x_max - decade > 0.0) {
        return Err(CountError::DegenerateGrid("grid must cover a full decade of e^x".into()));
    }
    let nearest = |target: f64| {
        (0..xs.len())
            .min_by(|&i, &k| (xs[i] - target).abs().total_cmp(&(xs[k] - target).abs()))
            .unwrap()
    };
    let idx = [xs.len() - 1, nearest(x_max - decade / 2.0), nearest(x_max - decade)];
    if idx[1] == idx[0] || idx[2] == idx[1] {
        return Err(CountError::DegenerateGrid("grid too coarse for three levels".into()));
    }
    let h: Vec<f64> = idx.iter().map(|&i| 1.0 / xs[i]).collect();
    let g: Vec<f64> = idx
        .iter()
        .map(|&i| a[i] * (-xs[i]).exp() / xs[i].powi(j as i32 + 1))
        .collect();
    // Lagrange interpolation at h = 0
    let mut est = 0.0;
    for i in 0..3 {
        let mut l = 1.0;
        for k in 0..3 {
            if k != i {
                l *= h[k] / (h[k] - h[i]);
            }
        }
        est += l * g[i];
    }
    Ok(est)
}

fn int_sin2(a: f64, b: f64) -> f64 {
    (b - a) / 2.0 - ((2.0 * b).sin() - (2.0 * a).sin()) / 4.0
}

fn breakpoints(a: f64, b: f64, extra: &[f64]) -> Vec<f64> {
    let mut v = vec![a, b];
    v.extend(extra.iter().copied().filter(|&x| x > a && x < b));
    v.sort_by(f64::total_cmp);
    v.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    v
}

fn piecewise(f: impl Fn(f64) -> f64, pts: &[f64]) -> f64 {
    pts.windows(2).map(|s| gl_integrate(&f, s[0], s[1], 2)).sum()
}

fn rect_mass(r: &Rect, m: f64) -> f64 {
    if m == 0.0 {
        return int_sin2(r.t0, r.t1) * int_sin2(r.p0, r.p1);
    }
    let (a, b, c, e) = (r.t0, r.t1, r.p0, r.p1);
    let (wt, wp) = (b - a, e - c);
    let outer_extra = [
        a + m,
        b - m,
        a + wt / 2.0,
        a + wp / 2.0,
        b - wp / 2.0,
        a + wp - m,
        b - wp + m,
    ];
    let outer = breakpoints(a, b, &outer_extra);
    piecewise(
        |theta| {
            let dt = (theta - a).min(b - theta);
            let inner = breakpoints(c, e, &[c + m, e - m, c + dt, e - dt, c + wp / 2.0]);
            let v = piecewise(
                |phi| {
                    let d = dt.min(phi - c).min(e - phi);
                    ramp(d, m) * phi.sin().powi(2)
                },
                &inner,
            );
            v * theta.sin().powi(2)
        },
        &outer,
    )
}

/// `r = (1/|W|) int h 16 sin^2 theta sin^2 phi dtheta dphi / (2 pi)^2` with
/// `|W| = 2` and `h` the window's bump at plateau distance `1/n`; `n = 0`
/// gives the sharp indicator.
pub fn weyl_mass(w: &Window, margin_n: u32) -> f64 {
    let m = if margin_n == 0 { 0.0 } else { 1.0 / margin_n as f64 };
    let total: f64 = w.rects().iter().map(|r| rect_mass(r, m)).sum();
    0.5 * 16.0 * total / (4.0 * PI * PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Linear,
    XOverLog,
    Li,
}

impl Model {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Model::Linear => x,
            Model::XOverLog => x / x.ln(),
            Model::Li => crate::numeric::li(x),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Linear => "x",
            Model::XOverLog => "x/log x",
            Model::Li => "li",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub c: f64,
    pub max_rel_residual: f64,
}

/// Least-squares `c` for `y = c f(x)` and the largest `|y - c f(x)| / |y|`.
pub fn fit_main_term(xs: &[f64], ys: &[f64], model: Model) -> Result<Fit, CountError> {
    if xs.len() != ys.len() {
        return Err(CountError::DegenerateGrid("xs and ys differ in length".into()));
    }
    if xs.len() < 10 {
        return Err(CountError::DegenerateGrid(format!("{} points, need at least 10", xs.len())));
    }
    let (lo, hi) = xs.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
    if !(lo >= 2.0) {
        return Err(CountError::BelowTwo(lo));
    }
    if hi / lo < 100.0 * (1.0 - 1e-12) {
        return Err(CountError::DegenerateGrid(format!("grid spans {lo}..{hi}, need two decades")));
    }
    let f: Vec<f64> = xs.iter().map(|&x| model.eval(x)).collect();
    let c = f.iter().zip(ys).map(|(f, y)| f * y).sum::<f64>() / f.iter().map(|f| f * f).sum::<f64>();
    let max_rel_residual = f
        .iter()
        .zip(ys)
        .map(|(f, y)| if *y == 0.0 { (c * f).abs() } else { ((y - c * f) / y).abs() })
        .fold(0.0, f64::max);
    Ok(Fit { c, max_rel_residual })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountRow {
    pub x: f64,
    pub psi: f64,
    pub psi_tilde: f64,
    pub psi1: f64,
    pub pi: f64,
    pub pi_tilde: f64,
    pub pi1: f64,
    pub li2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountTable {
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn build(sp: &Spectrum, w: &Window, xs: &[f64]) -> Result<CountTable, CountError> {
        let mut rows = Vec::with_capacity(xs.len());
        for (i, &x) in xs.iter().enumerate() {
            if i > 0 && x <= xs[i - 1] {
                return Err(CountError::NotMonotone(i));
            }
            rows.push(CountRow {
                x,
                psi: psi(sp, x),
                psi_tilde: psi_tilde(sp, x),
                psi1: psi1(sp, w, x),
                pi: pi_count(sp, x),
                pi_tilde: pi_tilde(sp, x),
                pi1: pi1(sp, w, x),
                li2: 2.0 * li(x)?,
            });
        }
        Ok(CountTable { rows })
    }

    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|r| {
            let (a, b) = (&r[0], &r[1]);
            b.psi >= a.psi
                && b.psi_tilde >= a.psi_tilde
                && b.psi1 >= a.psi1
                && b.pi >= a.pi
                && b.pi_tilde >= a.pi_tilde
                && b.pi1 >= a.pi1
                && b.li2 >= a.li2
        })
    }
}

/// `n` points from `lo` to `hi`, equally spaced in `log x`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}
