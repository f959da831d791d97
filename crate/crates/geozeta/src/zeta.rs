//! Truncated Euler products for the generalized Selberg and Ruelle zeta
//! functions, evaluated in log space.

use crate::cartan::det_one_minus_ad_n_at;
use crate::euler_char::{chi_terms, AnglePair};
use crate::km_ring::{wedge_nbar, VirtualRep};
use crate::numeric::par_sum_c;
use crate::spectrum::{PrimitiveClass, Spectrum};
use num_complex::Complex64;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ZetaError {
    #[error("l_max must be positive and finite (got {0})")]
    BadLength(f64),
    #[error("m_max must be at least 1")]
    BadIndex,
}

/// Terms with total length `m * n_I * l0 > l_max` or `m > m_max` are dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConfig {
    pub l_max: f64,
    pub m_max: u64,
}

impl TruncationConfig {
    pub fn new(l_max: f64, m_max: u64) -> Result<Self, ZetaError> {
        if !(l_max > 0.0 && l_max.is_finite()) {
            return Err(ZetaError::BadLength(l_max));
        }
        if m_max < 1 {
            return Err(ZetaError::BadIndex);
        }
        Ok(TruncationConfig { l_max, m_max })
    }

    /// Number of `(gamma_0, I, m)` triples kept.
    pub fn term_count(&self, sp: &Spectrum) -> usize {
        let mut n = 0usize;
        for c in sp.classes() {
            for (_, n_i, _) in chi_terms(&c.chi, c.r()).expect("validated") {
                let per = c.l0 * n_i as f64;
                if per <= self.l_max {
                    n += ((self.l_max / per).floor() as u64).min(self.m_max) as usize;
                }
            }
        }
        n
    }
}

/// One `(I, m)` term of a class with `k = m n_I`: length `k l0`, the angles of
/// `b^k` in radians, and `chi_I / m`.
struct Term {
    length: f64,
    angles: AnglePair,
    theta: f64,
    phi: f64,
    chi_over_m: f64,
}

fn for_each_term(c: &PrimitiveClass, cfg: &TruncationConfig, mut f: impl FnMut(&Term)) {
    for (_, n_i, chi) in chi_terms(&c.chi, c.r()).expect("validated") {
        let chi = chi.to_f64().unwrap();
        if chi == 0.0 {
            continue;
        }
        for m in 1..=cfg.m_max {
            let k = m * n_i;
            let length = k as f64 * c.l0;
            if length > cfg.l_max {
                break;
            }
            let angles = c.angles.times(k);
            let (theta, phi) = angles.radians();
            f(&Term { length, angles, theta, phi, chi_over_m: chi / m as f64 });
        }
    }
}

fn warn_half_plane(s: Complex64) {
    if s.re <= 1.0 {
        log::warn!("Re(s) = {} <= 1: outside the region of absolute convergence", s.re);
    }
}

fn class_sum(
    sp: &Spectrum,
    cfg: &TruncationConfig,
    term: impl Fn(&Term) -> Complex64 + Sync,
) -> Complex64 {
    let classes = sp.classes();
    par_sum_c(classes.len(), |i| {
        let c = &classes[i];
        let mut acc = Complex64::new(0.0, 0.0);
        for_each_term(c, cfg, |t| acc += term(t));
        acc
    })
}

/// `log Z_{P,sigma}(s)` truncated by `cfg`.
pub fn log_selberg(sp: &Spectrum, sigma: &VirtualRep, s: Complex64, cfg: &TruncationConfig) -> Complex64 {
    warn_half_plane(s);
    -class_sum(sp, cfg, |t| {
        let tr = sigma.trace_at_pair(&t.angles);
        let det = det_one_minus_ad_n_at(t.length, t.theta, t.phi);
        (-s * t.length).exp() * (t.chi_over_m * tr / det)
    })
}

/// `log R_{Gamma,sigma}(s)` truncated by `cfg`.
pub fn log_ruelle(sp: &Spectrum, sigma: &VirtualRep, s: Complex64, cfg: &TruncationConfig) -> Complex64 {
    warn_half_plane(s);
    -class_sum(sp, cfg, |t| {
        let tr = sigma.trace_at_pair(&t.angles);
        (-s * t.length).exp() * (t.chi_over_m * tr)
    })
}

/// `log R(s) - sum_q (-1)^q log Z(wedge^q nbar (x) sigma, s + q/4)` over the same term set.
pub fn factorization_residual(
    sp: &Spectrum,
    sigma: &VirtualRep,
    s: Complex64,
    cfg: &TruncationConfig,
) -> Complex64 {
    let mut out = log_ruelle(sp, sigma, s, cfg);
    for q in 0..=4usize {
        let rep = wedge_nbar(q).expect("q <= 4").tensor(sigma);
        let z = log_selberg(sp, &rep, s + q as f64 / 4.0, cfg);
        if q % 2 == 0 {
            out -= z;
        } else {
            out += z;
        }
    }
    out
}

/// `d/ds log R(s)` as a Dirichlet series over the kept terms: each power
/// `gamma_0^k` carries `sum_{I : n_I | k} chi_I n_I l0`, which is
/// `chi_1(Gamma_{gamma_0^k}) l0`.
pub fn dirichlet_logderiv(
    sp: &Spectrum,
    sigma: &VirtualRep,
    s: Complex64,
    cfg: &TruncationConfig,
) -> Complex64 {
    warn_half_plane(s);
    class_sum(sp, cfg, |t| {
        let tr = sigma.trace_at_pair(&t.angles);
        (-s * t.length).exp() * (t.chi_over_m * t.length * tr)
    })
}

/// Upper bound `C e^{-(sigma0 - 1) l_max}` for the discarded tail of
/// `log_selberg` at `Re(s) = sigma0`, for a spectrum with `pi(x) <= constant li(x)`.
pub fn tail_bound(sp: &Spectrum, sigma: &VirtualRep, sigma0: f64, cfg: &TruncationConfig) -> f64 {
    assert!(sigma0 > 1.0);
    let l_min = sp.classes().first().map_or(std::f64::consts::LN_2, |c| c.l0);
    let rep_norm: f64 = sigma.iter().map(|(t, m)| (m.abs() * t.dim()) as f64).sum();
    let chi_max = sp
        .classes()
        .iter()
        .flat_map(|c| chi_terms(&c.chi, c.r()).expect("validated"))
        .map(|(_, _, q)| q.to_f64().unwrap().abs())
        .fold(0.0, f64::max);
    let det_min = (1.0 - (-l_min / 4.0).exp()).powi(4);
    // powers at most double the primitive density; 1/l <= 1/l_min
    let c = 2.0 * sp.meta.constant.max(1.0) * chi_max * rep_norm / (det_min * l_min * (sigma0 - 1.0));
    c * (-(sigma0 - 1.0) * cfg.l_max).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaKind {
    Selberg,
    Ruelle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub s: Complex64,
    pub log_value: Complex64,
    pub residual_abs: Option<f64>,
}

/// Evaluates along a grid of `s`, optionally with the factorization residual.
pub fn evaluate_grid(
    sp: &Spectrum,
    sigma: &VirtualRep,
    grid: &[Complex64],
    cfg: &TruncationConfig,
    kind: ZetaKind,
    check_factorization: bool,
) -> Vec<GridRow> {
    grid.iter()
        .map(|&s| GridRow {
            s,
            log_value: match kind {
                ZetaKind::Selberg => log_selberg(sp, sigma, s, cfg),
                ZetaKind::Ruelle => log_ruelle(sp, sigma, s, cfg),
            },
            residual_abs: check_factorization.then(|| factorization_residual(sp, sigma, s, cfg).norm()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::matrix;
    use crate::euler_char::{Angle, Chi1Table, Q};
    use crate::km_ring::sigma_tilde;
    use crate::spectrum::Meta;

    fn meta() -> Meta {
        Meta { generator: "test".into(), seed: 0, constant: 2.0 }
    }

    fn irr(t: f64, p: f64) -> AnglePair {
        AnglePair::new(Angle::irrational(t), Angle::irrational(p))
    }

    fn one_class(c: PrimitiveClass) -> Spectrum {
        Spectrum::new(vec![c], meta()).unwrap()
    }

    fn torsion_class() -> PrimitiveClass {
        let a = AnglePair::new(Angle::rational(1, 2).unwrap(), Angle::rational(2, 3).unwrap());
        let chi = Chi1Table {
            chi1_1: Q::new(3, 2),
            chi1_r1: Some(Q::from_integer(2)),
            chi1_r2: Some(Q::new(5, 2)),
            chi1_lcm: Some(Q::from_integer(4)),
        };
        PrimitiveClass::new(1.3, a, chi).unwrap()
    }

    fn matrix_det(l: f64, t: f64, p: f64, k: i32) -> f64 {
        matrix::det_one_minus(&matrix::adjoint_on(&matrix::group_element(l, t, p, k), false))
    }

    #[test]
    fn empty_spectrum_is_zero() {
        let sp = Spectrum::empty();
        let cfg = TruncationConfig::new(20.0, 5).unwrap();
        let s = Complex64::new(2.0, 1.0);
        let st = sigma_tilde();
        assert_eq!(log_selberg(&sp, &st, s, &cfg), Complex64::new(0.0, 0.0));
        assert_eq!(log_ruelle(&sp, &st, s, &cfg), Complex64::new(0.0, 0.0));
        assert_eq!(factorization_residual(&sp, &st, s, &cfg), Complex64::new(0.0, 0.0));
        assert_eq!(dirichlet_logderiv(&sp, &st, s, &cfg), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn single_selberg_term() {
        let (l0, t, p) = (2.1, 0.7, 1.9);
        let sp = one_class(PrimitiveClass::unit_weight(l0, irr(t, p)));
        let cfg = TruncationConfig::new(l0 + 0.1, 1).unwrap();
        assert_eq!(cfg.term_count(&sp), 1);
        let s = Complex64::new(2.5, -0.3);
        let want = -(-s * l0).exp() / matrix_det(l0, t, p, 1);
        assert!((log_selberg(&sp, &VirtualRep::triv(), s, &cfg) - want).norm() < 1e-14);
    }

    #[test]
    fn ruelle_literal_expansion() {
        let c = torsion_class();
        let sp = one_class(c.clone());
        let cfg = TruncationConfig::new(100.0, 1).unwrap();
        let s = Complex64::new(2.0, 0.5);
        // R = {2, 3}; chi_I by hand from the table
        let e = |n: f64| (-s * n * 1.3).exp();
        let chi_empty = 1.5;
        let chi_2 = -(1.5 - 2.0) / 2.0;
        let chi_3 = -(1.5 - 2.5) / 3.0;
        let chi_23 = (1.5 - 2.0 - 2.5 + 4.0) / 6.0;
        let want = -(chi_empty * e(1.0) + chi_2 * e(2.0) + chi_3 * e(3.0) + chi_23 * e(6.0));
        assert!((log_ruelle(&sp, &VirtualRep::triv(), s, &cfg) - want).norm() < 1e-15);
    }

    #[test]
    fn linear_in_chi() {
        let sp = crate::spectrum::generate_pnt_like(300.0, 4, 2.0, crate::spectrum::AngleLaw::WeylMeasure).unwrap();
        let twice = sp.scale_chi(Q::from_integer(2));
        let cfg = TruncationConfig::new(25.0, 6).unwrap();
        let s = Complex64::new(2.2, 3.0);
        let st = sigma_tilde();
        let a = log_selberg(&sp, &st, s, &cfg);
        let b = log_selberg(&twice, &st, s, &cfg);
        assert!((b - a * 2.0).norm() < 1e-13 * a.norm().max(1.0));
    }

    #[test]
    fn non_regular_sigma_tilde_vanishes() {
        let half = Angle::rational(1, 2).unwrap();
        let classes = vec![
            PrimitiveClass::unit_weight(1.0, AnglePair::new(Angle::rational(0, 1).unwrap(), half)),
            PrimitiveClass::unit_weight(1.5, AnglePair::new(Angle::rational(1, 1).unwrap(), Angle::irrational(0.3))),
        ];
        let sp = Spectrum::new(classes, meta()).unwrap();
        let cfg = TruncationConfig::new(40.0, 10).unwrap();
        let s = Complex64::new(2.0, 0.0);
        assert_eq!(log_ruelle(&sp, &sigma_tilde(), s, &cfg).norm(), 0.0);
        assert_eq!(dirichlet_logderiv(&sp, &sigma_tilde(), s, &cfg).norm(), 0.0);
    }

    #[test]
    fn single_class_factorization() {
        let cfg = TruncationConfig::new(30.0, 8).unwrap();
        for c in [torsion_class(), PrimitiveClass::unit_weight(0.9, irr(2.0, -0.4))] {
            let sp = one_class(c);
            for s in [Complex64::new(2.0, 0.0), Complex64::new(3.3, 7.0)] {
                for sigma in [VirtualRep::triv(), sigma_tilde(), VirtualRep::delta(2, 2)] {
                    assert!(factorization_residual(&sp, &sigma, s, &cfg).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn logderiv_matches_finite_difference() {
        let sp = one_class(torsion_class());
        let cfg = TruncationConfig::new(30.0, 8).unwrap();
        let s = Complex64::new(2.5, 0.0);
        let h = 1e-4;
        let st = sigma_tilde();
        let fd = (log_ruelle(&sp, &st, s + h, &cfg) - log_ruelle(&sp, &st, s - h, &cfg)) / (2.0 * h);
        let d = dirichlet_logderiv(&sp, &st, s, &cfg);
        assert!((fd - d).norm() < 1e-6 * d.norm());
    }

    #[test]
    fn weakly_neat_collapse() {
        let classes: Vec<_> = (0..20)
            .map(|i| PrimitiveClass::unit_weight(0.8 + 0.1 * i as f64, irr(0.3 + i as f64, 1.1 * i as f64 - 2.0)))
            .collect();
        let sp = Spectrum::new(classes, meta()).unwrap();
        let cfg = TruncationConfig::new(12.0, 50).unwrap();
        let s = Complex64::new(2.0, 1.0);
        let st = sigma_tilde();
        let mut want = Complex64::new(0.0, 0.0);
        for c in sp.classes() {
            let (t, p) = c.angles.radians();
            let mut m = 1;
            while m as f64 * c.l0 <= 12.0 {
                let det = matrix_det(c.l0, t, p, m);
                want -= (-s * (m as f64 * c.l0)).exp() * st.trace_at(m as f64 * t, m as f64 * p) / (m as f64 * det);
                m += 1;
            }
        }
        assert!((log_selberg(&sp, &st, s, &cfg) - want).norm() < 1e-12);
    }

    #[test]
    fn truncation_tail_is_bounded() {
        let sp = crate::spectrum::generate_pnt_like(3e3, 1, 2.0, crate::spectrum::AngleLaw::WeylMeasure).unwrap();
        let st = sigma_tilde();
        let s = Complex64::new(2.0, 0.0);
        let full = log_selberg(&sp, &st, s, &TruncationConfig::new(60.0, 1000).unwrap());
        let mut prev = f64::INFINITY;
        for l in [2.0, 3.0, 4.0, 5.0, 6.0, 7.0] {
            let cfg = TruncationConfig::new(l, 1000).unwrap();
            let tail = (full - log_selberg(&sp, &st, s, &cfg)).norm();
            assert!(tail <= tail_bound(&sp, &st, 2.0, &cfg), "{l}");
            assert!(tail <= prev);
            prev = tail;
        }
    }

    #[test]
    fn config_validation() {
        assert!(TruncationConfig::new(0.0, 1).is_err());
        assert!(TruncationConfig::new(1.0, 0).is_err());
        assert!(TruncationConfig::new(f64::NAN, 1).is_err());
    }
}
