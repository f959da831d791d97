//! First higher Euler characteristics and the torsion bookkeeping
//! (`R_gamma`, `n_I`, `chi_I`) entering the Euler products.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::f64::consts::PI;
use std::fmt;

pub type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EulerError {
    #[error("index must be positive (got {0})")]
    BadIndex(i64),
    #[error("chi_1 value must be positive (got {0})")]
    NonPositive(Q),
    #[error("I must be a subset of R")]
    NotSubset,
    #[error("missing chi_1 table entry for n = {0}")]
    MissingEntry(u64),
    #[error("chi_1 table has entry {0} but R_gamma has no matching element")]
    UnexpectedEntry(&'static str),
    #[error("angle denominator must be positive")]
    BadDenominator,
}

/// An angle of `b_gamma`: `p/q * pi` exactly, or a float in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Rational { p: i64, q: i64 },
    Irrational(f64),
}

impl Angle {
    /// `p/q * pi`, reduced and normalized into (-pi, pi].
    pub fn rational(p: i64, q: i64) -> Result<Angle, EulerError> {
        if q <= 0 {
            return Err(EulerError::BadDenominator);
        }
        let g = p.gcd(&q).max(1);
        let (p, q) = (p / g, q / g);
        // representative of p/q mod 2 in (-1, 1]
        let mut r = p.rem_euclid(2 * q);
        if r > q {
            r -= 2 * q;
        }
        Ok(Angle::Rational { p: r, q })
    }

    /// Radians, normalized into (-pi, pi].
    pub fn irrational(x: f64) -> Angle {
        let mut r = x.rem_euclid(2.0 * PI);
        if r > PI {
            r -= 2.0 * PI;
        }
        Angle::Irrational(r)
    }

    pub fn radians(&self) -> f64 {
        match *self {
            Angle::Rational { p, q } => p as f64 * PI / q as f64,
            Angle::Irrational(x) => x,
        }
    }

    /// The angle of the k-th power.
    pub fn times(&self, k: u64) -> Angle {
        match *self {
            Angle::Rational { p, q } => {
                let kp = ((p as i128 * k as i128).rem_euclid(2 * q as i128)) as i64;
                Angle::rational(kp, q).expect("q positive")
            }
            Angle::Irrational(x) => Angle::irrational(x * k as f64),
        }
    }

    /// Smallest `n >= 1` with `n * angle` in `pi Z`; floats never qualify.
    pub fn min_power_in_pi_z(&self) -> Option<u64> {
        match *self {
            Angle::Rational { p, q } => Some((q / p.gcd(&q).max(1)) as u64),
            Angle::Irrational(_) => None,
        }
    }

    pub fn is_multiple_of_pi(&self) -> bool {
        self.min_power_in_pi_z() == Some(1)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Rational { p, q } => write!(f, "{p}pi/{q}"),
            Angle::Irrational(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePair {
    pub theta: Angle,
    pub phi: Angle,
}

impl AnglePair {
    pub fn new(theta: Angle, phi: Angle) -> Self {
        AnglePair { theta, phi }
    }

    pub fn times(&self, k: u64) -> AnglePair {
        AnglePair::new(self.theta.times(k), self.phi.times(k))
    }

    pub fn radians(&self) -> (f64, f64) {
        (self.theta.radians(), self.phi.radians())
    }

    /// Regular iff neither angle lies in `pi Z`.
    pub fn is_regular(&self) -> bool {
        !self.theta.is_multiple_of_pi() && !self.phi.is_multiple_of_pi()
    }
}

/// `chi_1` of the centralizers of `gamma^{n_J}` for the subsets `J` of `R_gamma`.
///
/// `R_gamma` is ordered increasingly: `chi1_r1` belongs to its smaller element,
/// `chi1_r2` to the larger and `chi1_lcm` to the whole set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chi1Table {
    pub chi1_1: Q,
    pub chi1_r1: Option<Q>,
    pub chi1_r2: Option<Q>,
    pub chi1_lcm: Option<Q>,
}

impl Chi1Table {
    pub fn weakly_neat(chi1: Q) -> Self {
        Chi1Table {
            chi1_1: chi1,
            chi1_r1: None,
            chi1_r2: None,
            chi1_lcm: None,
        }
    }

    /// Positivity and presence of exactly the entries required by `r`.
    pub fn validate(&self, r: &[u64]) -> Result<(), EulerError> {
        for v in [Some(self.chi1_1), self.chi1_r1, self.chi1_r2, self.chi1_lcm]
            .into_iter()
            .flatten()
        {
            if !v.is_positive() {
                return Err(EulerError::NonPositive(v));
            }
        }
        let need = [!r.is_empty(), r.len() >= 2, r.len() >= 2];
        let have = [self.chi1_r1.is_some(), self.chi1_r2.is_some(), self.chi1_lcm.is_some()];
        let names = ["chi1_r1", "chi1_r2", "chi1_lcm"];
        let ns = [
            r.first().copied().unwrap_or(0),
            r.get(1).copied().unwrap_or(0),
            r.iter().fold(1, |a, b| a.lcm(b)),
        ];
        for i in 0..3 {
            if need[i] && !have[i] {
                return Err(EulerError::MissingEntry(ns[i]));
            }
            if have[i] && !need[i] {
                return Err(EulerError::UnexpectedEntry(names[i]));
            }
        }
        Ok(())
    }

    /// `chi_1(Gamma_{gamma^{n_J}})` for `J` given as a bitmask over `r`.
    pub fn entry(&self, r: &[u64], mask: u32) -> Result<Q, EulerError> {
        let n = n_of(r, mask);
        let v = match (r.len(), mask) {
            (_, 0) => Some(self.chi1_1),
            (_, 1) => self.chi1_r1,
            (2, 2) => self.chi1_r2,
            (2, 3) => self.chi1_lcm,
            _ => None,
        };
        v.ok_or(EulerError::MissingEntry(n))
    }

    /// `chi_1(Gamma_{gamma^n})`: the entry for `J = {r in R : r | n}`.
    pub fn at_power(&self, r: &[u64], n: u64) -> Result<Q, EulerError> {
        let mut mask = 0u32;
        for (i, &ri) in r.iter().enumerate() {
            if n % ri == 0 {
                mask |= 1 << i;
            }
        }
        self.entry(r, mask)
    }
}

/// `sum_j (-1)^{j+1} j h^j`.
pub fn chi1_from_betti(h: &[u64]) -> i64 {
    h.iter()
        .enumerate()
        .map(|(j, &hj)| {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            sign * j as i64 * hj as i64
        })
        .sum()
}

/// `chi_1(Gamma) = chi_1(Gamma') [Gamma_A : Gamma'_A] / [Gamma : Gamma']`.
pub fn chi1_index(chi1_prime: Q, index_a: i64, index_gamma: i64) -> Result<Q, EulerError> {
    for i in [index_a, index_gamma] {
        if i < 1 {
            return Err(EulerError::BadIndex(i));
        }
    }
    Ok(chi1_prime * Q::from_integer(index_a) / Q::from_integer(index_gamma))
}

/// `R_gamma = {min R_theta, min R_phi}`, sorted and deduplicated.
pub fn r_gamma(a: &AnglePair) -> Vec<u64> {
    let mut r: Vec<u64> = [a.theta, a.phi]
        .iter()
        .filter_map(|x| x.min_power_in_pi_z())
        .collect();
    r.sort_unstable();
    r.dedup();
    r
}

/// `n_J = lcm(J)`, `n_{empty} = 1`.
pub fn n_of(r: &[u64], mask: u32) -> u64 {
    r.iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .fold(1, |acc, (_, &x)| acc.lcm(&x))
}

/// `chi_I = (-1)^{|I|} / n_I * sum_{J subset I} (-1)^{|J|} chi_1(Gamma_{gamma^{n_J}})`.
pub fn chi_i(t: &Chi1Table, r: &[u64], i_mask: u32) -> Result<Q, EulerError> {
    if i_mask >> r.len() != 0 {
        return Err(EulerError::NotSubset);
    }
    let mut sum = Q::zero();
    let mut j = i_mask;
    loop {
        let sign = if j.count_ones() % 2 == 0 { Q::one() } else { -Q::one() };
        sum += sign * t.entry(r, j)?;
        if j == 0 {
            break;
        }
        j = (j - 1) & i_mask;
    }
    let sign = if i_mask.count_ones() % 2 == 0 { Q::one() } else { -Q::one() };
    Ok(sign * sum / Q::from_integer(n_of(r, i_mask) as i64))
}

/// All `(mask, n_I, chi_I)` for subsets `I` of `r`.
pub fn chi_terms(t: &Chi1Table, r: &[u64]) -> Result<Vec<(u32, u64, Q)>, EulerError> {
    (0..(1u32 << r.len()))
        .map(|m| Ok((m, n_of(r, m), chi_i(t, r, m)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn betti_examples() {
        assert_eq!(chi1_from_betti(&[1, 1]), 1);
        assert_eq!(chi1_from_betti(&[1]), 0);
        assert_eq!(chi1_from_betti(&[1, 2, 1]), 0);
    }

    #[test]
    fn index_examples() {
        assert_eq!(chi1_index(q(1, 1), 1, 1).unwrap(), q(1, 1));
        assert_eq!(chi1_index(q(1, 1), 2, 6).unwrap(), q(1, 3));
        assert!(chi1_index(q(1, 1), 0, 6).is_err());
    }

    #[test]
    fn r_gamma_examples() {
        let a = AnglePair::new(Angle::rational(1, 2).unwrap(), Angle::rational(1, 3).unwrap());
        assert_eq!(r_gamma(&a), vec![2, 3]);
        let b = AnglePair::new(Angle::irrational(1.0), Angle::irrational(2.0));
        assert!(r_gamma(&b).is_empty());
        let c = AnglePair::new(Angle::rational(0, 1).unwrap(), Angle::rational(1, 5).unwrap());
        assert_eq!(r_gamma(&c), vec![1, 5]);
    }

    #[test]
    fn r_gamma_brute_force() {
        for qd in 1..13 {
            for p in -12..13 {
                let a = Angle::rational(p, qd).unwrap();
                let brute = (1..=100u64)
                    .find(|&n| (n as i64 * p) % qd == 0)
                    .unwrap();
                assert_eq!(a.min_power_in_pi_z(), Some(brute));
            }
        }
    }

    #[test]
    fn angle_normalization() {
        assert_eq!(Angle::rational(3, 2).unwrap(), Angle::Rational { p: -1, q: 2 });
        assert_eq!(Angle::rational(2, 2).unwrap(), Angle::Rational { p: 1, q: 1 });
        assert_eq!(Angle::rational(-1, 1).unwrap(), Angle::Rational { p: 1, q: 1 });
        assert_eq!(Angle::rational(1, 3).unwrap().times(3), Angle::Rational { p: 1, q: 1 });
        assert!(Angle::rational(1, 3).unwrap().times(6).is_multiple_of_pi());
    }

    #[test]
    fn chi_i_examples() {
        let r = vec![2];
        let t = Chi1Table {
            chi1_1: q(1, 1),
            chi1_r1: Some(q(5, 2)),
            chi1_r2: None,
            chi1_lcm: None,
        };
        assert_eq!(chi_i(&t, &r, 0).unwrap(), q(1, 1));
        assert_eq!(chi_i(&t, &r, 1).unwrap(), (q(5, 2) - q(1, 1)) / q(2, 1));
    }

    #[test]
    fn weighted_sum_reproduces_power_values() {
        let r = vec![2, 3];
        let t = Chi1Table {
            chi1_1: q(1, 1),
            chi1_r1: Some(q(2, 1)),
            chi1_r2: Some(q(3, 1)),
            chi1_lcm: Some(q(7, 1)),
        };
        let terms = chi_terms(&t, &r).unwrap();
        for n in 1..=12u64 {
            let s: Q = terms
                .iter()
                .filter(|(_, ni, _)| n % ni == 0)
                .map(|(_, ni, c)| *c * Q::from_integer(*ni as i64))
                .sum();
            assert_eq!(s, t.at_power(&r, n).unwrap());
        }
    }

    #[test]
    fn table_validation() {
        let t = Chi1Table::weakly_neat(q(1, 1));
        assert!(t.validate(&[]).is_ok());
        assert!(matches!(t.validate(&[2]), Err(EulerError::MissingEntry(2))));
        let bad = Chi1Table::weakly_neat(q(-1, 1));
        assert!(bad.validate(&[]).is_err());
    }
}
