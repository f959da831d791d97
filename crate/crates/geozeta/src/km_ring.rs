//! Representation ring of K_M = S(O(2) x O(2)).
//!
//! Irreducibles are the trivial character, the determinant character and the
//! two-dimensional `Delta(l, k)`, whose restriction to SO(2) x SO(2) is
//! `eps(l,k) + eps(-l,-k)`.

use crate::euler_char::{Angle, AnglePair};
use num_integer::Integer;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KmError {
    #[error("exterior power index {0} out of range 0..=4")]
    IndexOutOfRange(usize),
    #[error("exterior powers need a genuine representation (negative multiplicity of {0})")]
    NotGenuine(KMType),
    #[error("cutoff {given} too small: a type with |l| or |k| = {needed} can still pair")]
    CutoffTooSmall { given: i64, needed: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KMType {
    Triv,
    Det,
    /// Canonical: `l > 0`, or `l == 0 && k > 0`.
    Delta(i64, i64),
}

impl KMType {
    pub fn dim(&self) -> i64 {
        match self {
            KMType::Triv | KMType::Det => 1,
            KMType::Delta(..) => 2,
        }
    }

    /// Canonical Delta type, or `None` for the reducible (0,0).
    pub fn delta(l: i64, k: i64) -> Option<KMType> {
        if l == 0 && k == 0 {
            None
        } else if l > 0 || (l == 0 && k > 0) {
            Some(KMType::Delta(l, k))
        } else {
            Some(KMType::Delta(-l, -k))
        }
    }

    /// Largest |l|, |k| index of the type.
    pub fn degree(&self) -> i64 {
        match self {
            KMType::Delta(l, k) => l.abs().max(k.abs()),
            _ => 0,
        }
    }
}

impl fmt::Display for KMType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KMType::Triv => write!(f, "triv"),
            KMType::Det => write!(f, "det"),
            KMType::Delta(l, k) => write!(f, "delta({l},{k})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Identity,
    /// The coset of `T = diag(-1, 1, -1, 1)`.
    Reflected,
}

/// Integer combination of K_M irreducibles; zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct VirtualRep {
    terms: BTreeMap<KMType, i64>,
}

impl VirtualRep {
    pub fn zero() -> Self {
        VirtualRep::default()
    }

    pub fn single(t: KMType, mult: i64) -> Self {
        let mut v = VirtualRep::zero();
        v.add_term(t, mult);
        v
    }

    pub fn triv() -> Self {
        Self::single(KMType::Triv, 1)
    }

    pub fn det() -> Self {
        Self::single(KMType::Det, 1)
    }

    /// `delta(0, 0)` expands to triv + det.
    pub fn delta(l: i64, k: i64) -> Self {
        match KMType::delta(l, k) {
            Some(t) => Self::single(t, 1),
            None => Self::triv().add(&Self::det()),
        }
    }

    /// Builds from `(type, multiplicity)` pairs; Delta entries are canonicalized.
    pub fn from_terms(terms: &[(KMType, i64)]) -> Self {
        let mut v = VirtualRep::zero();
        for &(t, m) in terms {
            match t {
                KMType::Delta(l, k) => v = v.add(&Self::delta(l, k).scale(m)),
                _ => v.add_term(t, m),
            }
        }
        v
    }

    fn add_term(&mut self, t: KMType, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.terms.entry(t).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&t);
        }
    }

    pub fn multiplicity(&self, t: KMType) -> i64 {
        self.terms.get(&t).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (KMType, i64)> + '_ {
        self.terms.iter().map(|(t, m)| (*t, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &VirtualRep) -> VirtualRep {
        let mut v = self.clone();
        for (t, m) in other.iter() {
            v.add_term(t, m);
        }
        v
    }

    pub fn sub(&self, other: &VirtualRep) -> VirtualRep {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, s: i64) -> VirtualRep {
        let mut v = VirtualRep::zero();
        for (t, m) in self.iter() {
            v.add_term(t, m * s);
        }
        v
    }

    pub fn dimension(&self) -> i64 {
        self.iter().map(|(t, m)| m * t.dim()).sum()
    }

    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|t| t.degree()).max().unwrap_or(0)
    }

    pub fn tensor(&self, other: &VirtualRep) -> VirtualRep {
        let mut out = VirtualRep::zero();
        for (a, ma) in self.iter() {
            for (b, mb) in other.iter() {
                out = out.add(&tensor_irreducible(a, b).scale(ma * mb));
            }
        }
        out
    }

    /// Multiplicity of the trivial type.
    pub fn dim_invariants(&self) -> i64 {
        self.multiplicity(KMType::Triv)
    }

    pub fn character(&self, theta: f64, eta: f64, component: Component) -> f64 {
        grouped_sum(self.iter().map(|(t, m)| (irreducible_character(t, theta, eta, component), m)))
    }

    /// Character at `blockdiag(R(theta), R(phi))`.
    pub fn trace_at(&self, theta: f64, phi: f64) -> f64 {
        self.character(theta, phi, Component::Identity)
    }

    /// `trace_at` with exact phases for angles that are rational multiples of
    /// pi, so that e.g. the sigma-tilde trace is exactly 0 off the regular set.
    pub fn trace_at_pair(&self, a: &AnglePair) -> f64 {
        if let (Angle::Irrational(t), Angle::Irrational(p)) = (a.theta, a.phi) {
            return self.trace_at(t, p);
        }
        grouped_sum(self.iter().map(|(t, m)| {
            let v = match t {
                KMType::Triv | KMType::Det => 1.0,
                KMType::Delta(l, k) => {
                    let (c1, s1) = cos_sin_multiple(&a.theta, l);
                    let (c2, s2) = cos_sin_multiple(&a.phi, k);
                    2.0 * (c1 * c2 - s1 * s2)
                }
            };
            (v, m)
        }))
    }
}

/// `sum m v`, adding the integer multiplicities of bit-identical values first
/// so that cancelling terms cancel exactly.
fn grouped_sum(terms: impl Iterator<Item = (f64, i64)>) -> f64 {
    let mut by_value: Vec<(f64, i64)> = Vec::new();
    for (v, m) in terms {
        let v = if v == 0.0 { 0.0 } else { v };
        match by_value.iter_mut().find(|(w, _)| w.to_bits() == v.to_bits()) {
            Some(e) => e.1 += m,
            None => by_value.push((v, m)),
        }
    }
    by_value.iter().map(|&(v, m)| m as f64 * v).sum()
}

/// `(cos n x, sin n x)`, exact at multiples of pi/2 and pi/3 for rational angles.
fn cos_sin_multiple(x: &Angle, n: i64) -> (f64, f64) {
    match *x {
        Angle::Rational { p, q } => {
            let (num, den) = (n as i128 * p as i128, q as i128);
            (cos_pi_fraction(num, den), cos_pi_fraction(num * 2 - den, 2 * den))
        }
        Angle::Irrational(v) => {
            let y = n as f64 * v;
            (y.cos(), y.sin())
        }
    }
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(t, m)| if m == 1 { t.to_string() } else { format!("{m}*{t}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn tensor_irreducible(a: KMType, b: KMType) -> VirtualRep {
    use KMType::*;
    match (a, b) {
        (Triv, x) | (x, Triv) => VirtualRep::single(x, 1),
        (Det, Det) => VirtualRep::triv(),
        (Det, d @ Delta(..)) | (d @ Delta(..), Det) => VirtualRep::single(d, 1),
        (Delta(l, k), Delta(l2, k2)) => {
            VirtualRep::delta(l + l2, k + k2).add(&VirtualRep::delta(l - l2, k - k2))
        }
    }
}

/// `cos(pi num / den)`, exact where the value is 0, 1/2 or 1 in modulus.
fn cos_pi_fraction(num: i128, den: i128) -> f64 {
    let g = num.gcd(&den).max(1);
    let (num, den) = ((num / g).rem_euclid(2 * den / g), den / g);
    // cos is even: fold into [0, pi] so that x and -x give identical bits
    let num = if num > den { 2 * den - num } else { num };
    match (num, den) {
        (0, 1) => 1.0,
        (1, 1) => -1.0,
        (_, 2) => 0.0,
        (1, 3) => 0.5,
        (2, 3) => -0.5,
        _ => (PI * num as f64 / den as f64).cos(),
    }
}

fn irreducible_character(t: KMType, theta: f64, eta: f64, component: Component) -> f64 {
    match (t, component) {
        (KMType::Triv, _) => 1.0,
        (KMType::Det, Component::Identity) => 1.0,
        (KMType::Det, Component::Reflected) => -1.0,
        (KMType::Delta(l, k), Component::Identity) => 2.0 * (l as f64 * theta + k as f64 * eta).cos(),
        (KMType::Delta(..), Component::Reflected) => 0.0,
    }
}

/// Elementary symmetric polynomial `e_q` of a list.
fn elementary_symmetric(vals: &[i64], q: usize) -> i64 {
    let mut e = vec![0i64; q + 1];
    e[0] = 1;
    for &v in vals {
        for j in (1..=q).rev() {
            e[j] += e[j - 1] * v;
        }
    }
    e[q]
}

/// `q`-th exterior power, computed from the weights on the torus and the
/// eigenvalues of a reflected element.
pub fn exterior_power(x: &VirtualRep, q: usize) -> Result<VirtualRep, KmError> {
    let mut weights: Vec<(i64, i64)> = Vec::new();
    let mut refl: Vec<i64> = Vec::new();
    for (t, m) in x.iter() {
        if m < 0 {
            return Err(KmError::NotGenuine(t));
        }
        for _ in 0..m {
            match t {
                KMType::Triv => {
                    weights.push((0, 0));
                    refl.push(1);
                }
                KMType::Det => {
                    weights.push((0, 0));
                    refl.push(-1);
                }
                KMType::Delta(l, k) => {
                    weights.extend([(l, k), (-l, -k)]);
                    refl.extend([1, -1]);
                }
            }
        }
    }
    let n = weights.len();
    if q > n {
        return Ok(VirtualRep::zero());
    }
    let mut counts: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != q {
            continue;
        }
        let mut w = (0, 0);
        for (i, wi) in weights.iter().enumerate() {
            if mask & (1 << i) != 0 {
                w.0 += wi.0;
                w.1 += wi.1;
            }
        }
        *counts.entry(w).or_insert(0) += 1;
    }
    let mut out = VirtualRep::zero();
    let zero = counts.get(&(0, 0)).copied().unwrap_or(0);
    let c = elementary_symmetric(&refl, q);
    out.add_term(KMType::Triv, (zero + c) / 2);
    out.add_term(KMType::Det, (zero - c) / 2);
    for (&(l, k), &m) in &counts {
        if let Some(t @ KMType::Delta(cl, ck)) = KMType::delta(l, k) {
            if (cl, ck) == (l, k) {
                out.add_term(t, m);
            }
        }
    }
    Ok(out)
}

/// p_M as a K_M-module.
pub fn module_pm() -> VirtualRep {
    VirtualRep::from_terms(&[(KMType::Delta(2, 0), 1), (KMType::Delta(0, 2), 1)])
}

/// m as a K_M-module.
pub fn module_m() -> VirtualRep {
    VirtualRep::from_terms(&[
        (KMType::Det, 2),
        (KMType::Delta(2, 0), 1),
        (KMType::Delta(0, 2), 1),
    ])
}

/// n as a K_M-module under the adjoint action.
///
/// Conjugating `E13, E14, E23, E24` by `blockdiag(R(theta), R(phi))` gives the
/// characters `eps(+-1, +-1)`, so n is `Delta(1,1) + Delta(1,-1)`.
pub fn module_n() -> VirtualRep {
    VirtualRep::from_terms(&[(KMType::Delta(1, 1), 1), (KMType::Delta(1, -1), 1)])
}

pub fn wedge_pm(p: usize) -> Result<VirtualRep, KmError> {
    use KMType::*;
    let t: &[(KMType, i64)] = match p {
        0 | 4 => &[(Triv, 1)],
        1 | 3 => &[(Delta(2, 0), 1), (Delta(0, 2), 1)],
        2 => &[(Det, 2), (Delta(2, 2), 1), (Delta(2, -2), 1)],
        _ => return Err(KmError::IndexOutOfRange(p)),
    };
    Ok(VirtualRep::from_terms(t))
}

pub fn wedge_m(q: usize) -> Result<VirtualRep, KmError> {
    use KMType::*;
    let t: &[(KMType, i64)] = match q {
        0 => &[(Triv, 1)],
        1 => &[(Det, 2), (Delta(2, 0), 1), (Delta(0, 2), 1)],
        2 | 4 => &[
            (Triv, 1),
            (Det, 2),
            (Delta(2, 0), 2),
            (Delta(0, 2), 2),
            (Delta(2, 2), 1),
            (Delta(2, -2), 1),
        ],
        3 => &[
            (Triv, 4),
            (Delta(2, 0), 2),
            (Delta(0, 2), 2),
            (Delta(2, 2), 2),
            (Delta(2, -2), 2),
        ],
        _ => return Err(KmError::IndexOutOfRange(q)),
    };
    Ok(VirtualRep::from_terms(t))
}

/// `q`-th exterior power of n-bar (isomorphic to n as a K_M-module).
pub fn wedge_nbar(q: usize) -> Result<VirtualRep, KmError> {
    if q > 4 {
        return Err(KmError::IndexOutOfRange(q));
    }
    exterior_power(&module_n(), q)
}

/// Coefficients of `sigma~ = sum_q SIGMA_TILDE_COEFFS[q] * wedge^q m`.
pub const SIGMA_TILDE_COEFFS: [i64; 5] = [15, -10, 6, -3, 1];

pub fn sigma_tilde() -> VirtualRep {
    SIGMA_TILDE_COEFFS
        .iter()
        .enumerate()
        .fold(VirtualRep::zero(), |acc, (q, &c)| {
            acc.add(&wedge_m(q).expect("index in range").scale(c))
        })
}

/// `4 (1 - cos 2 theta)(1 - cos 2 phi)`.
pub fn sigma_tilde_closed_form(theta: f64, phi: f64) -> f64 {
    4.0 * (1.0 - (2.0 * theta).cos()) * (1.0 - (2.0 * phi).cos())
}

/// `sum_p (-1)^p dim (wedge^p p_M (x) sigma)^{K_M}`.
pub fn euler_invariant_sum(sigma: &VirtualRep) -> i64 {
    (0..=4)
        .map(|p| {
            let sign = if p % 2 == 0 { 1 } else { -1 };
            sign * wedge_pm(p).unwrap().tensor(sigma).dim_invariants()
        })
        .sum()
}

/// The double sum over `p, q` with weights `(-1)^{p+q} a'_q`, `a' = (15,10,6,3,1)`.
pub fn sigma_tilde_invariant_double_sum() -> i64 {
    let a = [15i64, 10, 6, 3, 1];
    let mut total = 0;
    for p in 0..=4 {
        for (qi, &aq) in a.iter().enumerate() {
            let sign = if (p + qi) % 2 == 0 { 1 } else { -1 };
            let inv = wedge_pm(p).unwrap().tensor(&wedge_m(qi).unwrap()).dim_invariants();
            total += sign * aq * inv;
        }
    }
    total
}

/// K_M-types of the discrete-series factor with parameters `(m1, m2)`,
/// truncated to `|j|, |k| <= cutoff`.
pub fn xi_types(m1: i64, m2: i64, cutoff: i64) -> VirtualRep {
    let mut v = VirtualRep::zero();
    let same_parity = |a: i64, m: i64| (a - m).rem_euclid(2) == 0;
    match (m1, m2) {
        (0, 0) => v = VirtualRep::triv(),
        (0, _) => {
            for k in (m2..=cutoff).filter(|&k| same_parity(k, m2)) {
                v = v.add(&VirtualRep::delta(0, k));
            }
        }
        (_, 0) => {
            for j in (m1..=cutoff).filter(|&j| same_parity(j, m1)) {
                v = v.add(&VirtualRep::delta(j, 0));
            }
        }
        _ => {
            for j in (m1..=cutoff).filter(|&j| same_parity(j, m1)) {
                for k in (m2..=cutoff).filter(|&k| same_parity(k, m2)) {
                    v = v.add(&VirtualRep::delta(j, k)).add(&VirtualRep::delta(-j, k));
                }
            }
        }
    }
    v
}

/// Euler-Poincare trace `sum_p (-1)^p dim (V_xi (x) wedge^p p_M (x) sigma)^{K_M}`.
///
/// Every irreducible of K_M is self-dual, so the invariant dimension is the
/// pairing of multiplicities; only types in the support of
/// `wedge^* p_M (x) sigma` can contribute.
pub fn ep_trace(m1: i64, m2: i64, sigma: &VirtualRep, cutoff: i64) -> Result<i64, KmError> {
    let alt = (0..=4).fold(VirtualRep::zero(), |acc, p| {
        let w = wedge_pm(p).unwrap().tensor(sigma);
        if p % 2 == 0 {
            acc.add(&w)
        } else {
            acc.sub(&w)
        }
    });
    let needed = alt.degree();
    if cutoff < needed {
        return Err(KmError::CutoffTooSmall { given: cutoff, needed });
    }
    let xi = xi_types(m1, m2, cutoff);
    Ok(xi.iter().map(|(t, m)| m * alt.multiplicity(t)).sum())
}

/// One-factor analogue on SL(2): `sum_p (-1)^p dim (D_n^+- (x) wedge^p p)^{SO(2)}`
/// with `p = eps(2) + eps(-2)` and `D_n^+-` carrying `eps(+-(n + 2j))`, j >= 0.
pub fn sl2_ep_trace(n: i64, cutoff: i64) -> i64 {
    let mut ds: BTreeMap<i64, i64> = BTreeMap::new();
    let mut j = n;
    while j <= cutoff {
        *ds.entry(j).or_insert(0) += 1;
        *ds.entry(-j).or_insert(0) += 1;
        j += 2;
    }
    let wedges: [&[i64]; 3] = [&[0], &[2, -2], &[0]];
    let mut total = 0;
    for (p, w) in wedges.iter().enumerate() {
        let sign = if p % 2 == 0 { 1 } else { -1 };
        for &e in w.iter() {
            total += sign * ds.get(&(-e)).copied().unwrap_or(0);
        }
    }
    total
}

/// Invariant dimension from the character: average over both components by the
/// trapezoid rule with `n` points per circle (exact for degree below `n`).
pub fn invariants_by_quadrature(x: &VirtualRep, n: usize) -> f64 {
    let h = 2.0 * PI / n as f64;
    let mut id = 0.0;
    for i in 0..n {
        let th = i as f64 * h;
        let mut row = 0.0;
        for j in 0..n {
            row += x.character(th, j as f64 * h, Component::Identity);
        }
        id += row;
    }
    id /= (n * n) as f64;
    let mut refl = 0.0;
    for i in 0..n {
        refl += x.character(i as f64 * h, 0.0, Component::Reflected);
    }
    refl /= n as f64;
    0.5 * (id + refl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use KMType::*;

    #[test]
    fn tensor_examples() {
        let a = VirtualRep::delta(2, 0).tensor(&VirtualRep::delta(0, 2));
        assert_eq!(a, VirtualRep::from_terms(&[(Delta(2, 2), 1), (Delta(2, -2), 1)]));
        let b = VirtualRep::delta(2, 2).tensor(&VirtualRep::delta(2, 2));
        assert_eq!(b, VirtualRep::from_terms(&[(Delta(4, 4), 1), (Triv, 1), (Det, 1)]));
        let x = sigma_tilde();
        assert_eq!(VirtualRep::triv().tensor(&x), x);
        assert_eq!(VirtualRep::det().tensor(&VirtualRep::det()), VirtualRep::triv());
    }

    #[test]
    fn canonical_delta() {
        assert_eq!(KMType::delta(-2, 1), Some(Delta(2, -1)));
        assert_eq!(KMType::delta(0, -3), Some(Delta(0, 3)));
        assert_eq!(KMType::delta(0, 0), None);
        assert_eq!(VirtualRep::delta(0, 0).dimension(), 2);
    }

    #[test]
    fn character_examples() {
        let d = VirtualRep::delta(2, 2);
        assert!((d.character(PI / 2.0, PI / 2.0, Component::Identity) - 2.0).abs() < 1e-12);
        assert_eq!(VirtualRep::det().character(0.3, 0.1, Component::Reflected), -1.0);
        assert_eq!(VirtualRep::triv().character(0.3, 0.1, Component::Reflected), 1.0);
        assert_eq!(VirtualRep::triv().trace_at(1.0, 2.0), 1.0);
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(wedge_pm(0).unwrap().dim_invariants(), 1);
        assert_eq!(wedge_pm(2).unwrap().dim_invariants(), 0);
        let dd = VirtualRep::delta(2, 2).tensor(&VirtualRep::delta(2, 2));
        assert_eq!(dd.dim_invariants(), 1);
        assert!((invariants_by_quadrature(&dd, 32) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tables_match_exterior_powers() {
        for p in 0..=4 {
            assert_eq!(wedge_pm(p).unwrap(), exterior_power(&module_pm(), p).unwrap());
            assert_eq!(wedge_m(p).unwrap(), exterior_power(&module_m(), p).unwrap());
        }
        assert!(wedge_m(5).is_err());
        assert_eq!(wedge_nbar(0).unwrap(), VirtualRep::triv());
        assert_eq!(wedge_nbar(4).unwrap().dimension(), 1);
    }

    #[test]
    fn wedge_m_dimensions() {
        let dims: Vec<i64> = (0..=4).map(|q| wedge_m(q).unwrap().dimension()).collect();
        assert_eq!(dims, vec![1, 6, 15, 20, 15]);
    }

    #[test]
    fn sigma_tilde_examples() {
        let s = sigma_tilde();
        assert_eq!(s.dimension(), 0);
        assert!((s.trace_at(PI / 2.0, PI / 2.0) - 16.0).abs() < 1e-12);
        for i in 0..20 {
            let phi = i as f64 * 0.37;
            assert!(s.trace_at(0.0, phi).abs() < 1e-12);
        }
    }

    #[test]
    fn module_n_trace() {
        let (t, p) = (0.7f64, -0.4f64);
        let want = 2.0 * (t + p).cos() + 2.0 * (t - p).cos();
        assert!((module_n().trace_at(t, p) - want).abs() < 1e-14);
    }

    #[test]
    fn ep_trace_examples() {
        let triv = VirtualRep::triv();
        assert_eq!(ep_trace(2, 2, &triv, 8).unwrap(), 2);
        assert_eq!(ep_trace(0, 0, &triv, 8).unwrap(), 2);
        for m1 in 0..=6 {
            for m2 in 0..=6 {
                if ep_trace(m1, m2, &triv, 8).unwrap() != 0 {
                    assert!([0, 2, 4].contains(&m1) && [0, 2, 4].contains(&m2));
                }
            }
        }
        assert_eq!(sl2_ep_trace(2, 10), -2);
        assert!(matches!(
            ep_trace(2, 2, &sigma_tilde(), 1),
            Err(KmError::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn triv_vanishing_order() {
        assert_eq!(euler_invariant_sum(&VirtualRep::triv()), 2);
        assert_eq!(sigma_tilde_invariant_double_sum(), euler_invariant_sum(&sigma_tilde()));
    }

    #[test]
    fn exterior_power_rejects_virtual() {
        assert!(exterior_power(&VirtualRep::triv().scale(-1), 1).is_err());
    }

    #[test]
    fn exact_pair_trace_agrees_with_float() {
        let st = sigma_tilde();
        for (p1, q1, p2, q2) in [(1, 2, 1, 3), (2, 5, -3, 7), (1, 1, 1, 4), (0, 1, 5, 6), (7, 12, 1, 2)] {
            let a = AnglePair::new(Angle::rational(p1, q1).unwrap(), Angle::rational(p2, q2).unwrap());
            let (t, p) = a.radians();
            assert!((st.trace_at_pair(&a) - st.trace_at(t, p)).abs() < 1e-12);
            if !a.is_regular() {
                assert_eq!(st.trace_at_pair(&a), 0.0);
            }
        }
    }
}
