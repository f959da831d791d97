//! Infinitesimal characters of unitary representations of SL(4,R) induced
//! from the parabolic P, their Weyl-orbit restrictions to a, and the
//! resulting candidate zero locations of the Selberg zeta function.
//!
//! The order on the one-dimensional a* is read through `value_at_h1`. Since
//! rho_P(H1) = -1/2 < 0, a *larger* multiple of rho_P has a *smaller* value.

use crate::cartan::{restrict_to_a, rho_0, weyl_apply, AWeight, HWeight, Perm, Q};
use num_traits::Zero;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InfCharError {
    #[error("complementary series parameter t = {0} outside (0, 1/2)")]
    BadComplementaryT(Q),
    #[error("complementary series needs m >= 1 (got {0})")]
    BadComplementaryM(i64),
    #[error("discrete series parameters must be non-negative (got {0}, {1})")]
    NegativeParameter(i64, i64),
    #[error("representations induced from other parabolics contribute no zeros or poles")]
    NoContribution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReprParam {
    /// `Ind(D_{m1} (x) D_{m2} (x) nu)`, `nu(diag(a,a,-a,-a)) = alpha a`, alpha imaginary.
    /// `m = 0` stands for the trivial SL(2) factor.
    PrincipalDS { m1: i64, m2: i64, alpha: Q },
    /// `Ind(pi_m (x) t rho_P)` with `0 < t < 1/2`.
    Complementary { m: i64, t: Q },
    /// The Langlands quotient `pi_m` (and the limit of complementary series, which shares it).
    LanglandsPi { m: i64 },
    TrivialRep,
    /// Induced from P0, P' or P''.
    OtherParabolic,
}

impl ReprParam {
    pub fn validate(&self) -> Result<(), InfCharError> {
        match *self {
            ReprParam::PrincipalDS { m1, m2, .. } if m1 < 0 || m2 < 0 => {
                Err(InfCharError::NegativeParameter(m1, m2))
            }
            ReprParam::Complementary { m, .. } if m < 1 => Err(InfCharError::BadComplementaryM(m)),
            ReprParam::Complementary { t, .. } if t <= Q::zero() || t >= Q::new(1, 2) => {
                Err(InfCharError::BadComplementaryT(t))
            }
            ReprParam::LanglandsPi { m } if m < 1 => Err(InfCharError::BadComplementaryM(m)),
            _ => Ok(()),
        }
    }
}

fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// `Lambda` as a functional on the diagonal Cartan.
///
/// Coefficients `(x, y, z, 0)` represent `diag(a,b,c,-a-b-c) -> x a + y b + z c`.
pub fn infinitesimal_character(p: &ReprParam) -> Result<HWeight, InfCharError> {
    p.validate()?;
    let half = Q::new(1, 2);
    Ok(match *p {
        ReprParam::PrincipalDS { m1, m2, alpha } => {
            // Lambda_xi(diag(s,-s,t,-t)) = |m1-1| s + |m2-1| t with s = (t1-t2)/2, t = (t3-t4)/2
            let a = qi((m1 - 1).abs()) * half;
            let b = qi((m2 - 1).abs()) * half;
            let nu = alpha / qi(4);
            HWeight::complex([a, -a, b, -b], [nu, nu, -nu, -nu])
        }
        ReprParam::Complementary { m, t } => {
            // (m-1)(a+c) + 2t(a+b)
            let mm = qi(m - 1);
            HWeight::new([mm + t * qi(2), t * qi(2), mm, Q::zero()])
        }
        ReprParam::LanglandsPi { m } => HWeight::new([qi(m), qi(1), qi(m - 1), Q::zero()]),
        ReprParam::TrivialRep => rho_0(),
        ReprParam::OtherParabolic => return Err(InfCharError::NoContribution),
    })
}

/// `Re(w Lambda)|_a` for all 24 Weyl elements, in the order of `Perm::all()`.
pub fn weyl_restrictions(lambda: &HWeight) -> Vec<AWeight> {
    let re = lambda.real_part();
    Perm::all()
        .iter()
        .map(|w| restrict_to_a(&weyl_apply(w, &re)))
        .collect()
}

/// `mu >= -(1/2) rho_P` in the rho_P-order.
pub fn above_half_rho(mu: &AWeight) -> bool {
    mu.value_at_h1 <= Q::new(1, 4)
}

/// `mu <= -rho_P` in the rho_P-order.
pub fn below_rho(mu: &AWeight) -> bool {
    mu.value_at_h1 >= Q::new(1, 2)
}

pub fn satisfies_region_condition(lambda: &HWeight) -> bool {
    weyl_restrictions(lambda)
        .iter()
        .all(|mu| above_half_rho(mu) || below_rho(mu))
}

/// `{ value_at_h1(w Lambda|_a) + 1/2 }` over the Weyl group.
pub fn candidate_zeros(lambda: &HWeight) -> BTreeSet<Q> {
    weyl_restrictions(lambda)
        .iter()
        .map(|mu| mu.value_at_h1 + Q::new(1, 2))
        .collect()
}

/// Parameters whose Euler-Poincare traces can be non-zero: the
/// `m1, m2 in {0,2,4}` principal series, complementary `m in {2,4}` at the
/// given `t` values, and `pi_m` for `m = 1..=m_max`.
pub fn relevant_parameters(ts: &[Q], m_max: i64) -> Vec<ReprParam> {
    let mut out = Vec::new();
    for m1 in [0, 2, 4] {
        for m2 in [0, 2, 4] {
            out.push(ReprParam::PrincipalDS { m1, m2, alpha: Q::new(3, 7) });
        }
    }
    for m in [2, 4] {
        for &t in ts {
            out.push(ReprParam::Complementary { m, t });
        }
    }
    for m in 1..=m_max {
        out.push(ReprParam::LanglandsPi { m });
    }
    out.push(ReprParam::TrivialRep);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::rho_p;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    /// Evaluates on `diag(a, b, c, -a-b-c)`.
    fn eval_abc(w: &HWeight, a: i64, b: i64, c: i64) -> (Q, Q) {
        w.eval(&[qi(a), qi(b), qi(c), qi(-a - b - c)])
    }

    #[test]
    fn principal_trivial_factors_formula() {
        let alpha = q(5, 3);
        let l = infinitesimal_character(&ReprParam::PrincipalDS { m1: 0, m2: 0, alpha }).unwrap();
        for (a, b, c) in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, -3, 5)] {
            let (re, im) = eval_abc(&l, a, b, c);
            assert_eq!(re, qi(a + c));
            assert_eq!(im, alpha / qi(2) * qi(a + b));
        }
    }

    #[test]
    fn langlands_and_complementary_formulas() {
        for m in 1..7 {
            let l = infinitesimal_character(&ReprParam::LanglandsPi { m }).unwrap();
            assert_eq!(eval_abc(&l, 1, 2, 3).0, qi(m) + qi(2) + qi(3 * (m - 1)));
        }
        let t = q(1, 8);
        let l = infinitesimal_character(&ReprParam::Complementary { m: 4, t }).unwrap();
        assert_eq!(eval_abc(&l, 1, 2, 3).0, (qi(3) + t * qi(2)) + t * qi(4) + qi(9));
    }

    #[test]
    fn trivial_rep_orbit() {
        let lam = infinitesimal_character(&ReprParam::TrivialRep).unwrap();
        let vals: BTreeSet<Q> = weyl_restrictions(&lam).iter().map(|a| a.value_at_h1).collect();
        assert!(vals.contains(&q(-1, 2)) && vals.contains(&q(1, 2)));
        assert_eq!(weyl_restrictions(&lam)[0].value_at_h1, q(-1, 2));
        // -rho_P sits in the orbit
        assert!(vals.contains(&restrict_to_a(&rho_p().scale(qi(-1))).value_at_h1));
        assert!(candidate_zeros(&lam).contains(&qi(1)));
    }

    #[test]
    fn principal_identity_real_part_zero() {
        let lam = infinitesimal_character(&ReprParam::PrincipalDS { m1: 0, m2: 0, alpha: q(2, 1) }).unwrap();
        assert_eq!(weyl_restrictions(&lam)[0].value_at_h1, Q::zero());
        for s in candidate_zeros(&lam) {
            assert!(s >= q(1, 4) && s <= q(3, 4));
        }
    }

    #[test]
    fn langlands_w1_value() {
        let w1 = Perm::transposition(0, 3);
        for m in 1..7 {
            let lam = infinitesimal_character(&ReprParam::LanglandsPi { m }).unwrap();
            let img = weyl_apply(&w1, &lam);
            // at diag(a,a,-a,-a) with a = 1
            assert_eq!(img.eval(&[qi(1), qi(1), qi(-1), qi(-1)]).0, qi(-2 * (m - 1)));
            assert_eq!(below_rho(&restrict_to_a(&img)), m >= 3);
        }
    }

    #[test]
    fn region_condition_holds() {
        for p in relevant_parameters(&[q(1, 8), q(1, 4), q(3, 8)], 6) {
            let lam = infinitesimal_character(&p).unwrap();
            assert!(satisfies_region_condition(&lam), "{p:?}");
        }
    }

    #[test]
    fn candidates_symmetric_under_long_element() {
        for p in relevant_parameters(&[q(1, 4)], 5) {
            let lam = infinitesimal_character(&p).unwrap();
            let image = weyl_apply(&Perm::longest(), &lam);
            let reflected: BTreeSet<Q> = candidate_zeros(&image).iter().map(|s| qi(1) - s).collect();
            assert_eq!(candidate_zeros(&lam), reflected);
        }
    }

    #[test]
    fn validation() {
        assert!(infinitesimal_character(&ReprParam::Complementary { m: 2, t: q(1, 2) }).is_err());
        assert!(infinitesimal_character(&ReprParam::Complementary { m: 2, t: Q::zero() }).is_err());
        assert_eq!(
            infinitesimal_character(&ReprParam::OtherParabolic),
            Err(InfCharError::NoContribution)
        );
    }
}
