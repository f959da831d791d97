//! Diagonal Cartan of sl(4): weights, the Weyl group S4, the invariant form,
//! and adjoint eigenvalues of `a b` on the nilradicals n and n-bar.

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;
use std::fmt;

pub type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CartanError {
    #[error("diagonal entries must sum to zero (got sum {0})")]
    NotTraceless(Q),
    #[error("not a permutation of 0..4: {0:?}")]
    BadPermutation([usize; 4]),
}

fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

fn canonical(c: [Q; 4]) -> [Q; 4] {
    let mean = (c[0] + c[1] + c[2] + c[3]) / Q::from_integer(4);
    [c[0] - mean, c[1] - mean, c[2] - mean, c[3] - mean]
}

/// Linear functional `diag(t1..t4) -> sum c_i t_i`, stored modulo the trace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HWeight {
    re: [Q; 4],
    im: [Q; 4],
}

impl HWeight {
    pub fn new(re: [Q; 4]) -> Self {
        Self::complex(re, [Q::zero(); 4])
    }

    pub fn complex(re: [Q; 4], im: [Q; 4]) -> Self {
        HWeight {
            re: canonical(re),
            im: canonical(im),
        }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Self::new(c.map(Q::from_integer))
    }

    pub fn zero() -> Self {
        Self::new([Q::zero(); 4])
    }

    pub fn re(&self) -> &[Q; 4] {
        &self.re
    }

    pub fn im(&self) -> &[Q; 4] {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.iter().all(|x| x.is_zero())
    }

    pub fn real_part(&self) -> HWeight {
        HWeight::new(self.re)
    }

    /// Evaluate on a traceless diagonal, returning (real, imaginary) parts.
    pub fn eval(&self, diag: &[Q; 4]) -> (Q, Q) {
        let dot = |c: &[Q; 4]| (0..4).fold(Q::zero(), |acc, i| acc + c[i] * diag[i]);
        // canonical form is only defined up to the trace functional
        let tr = diag.iter().fold(Q::zero(), |a, b| a + b);
        assert!(tr.is_zero(), "evaluation needs a traceless diagonal");
        (dot(&self.re), dot(&self.im))
    }

    pub fn add(&self, other: &HWeight) -> HWeight {
        let mut re = self.re;
        let mut im = self.im;
        for i in 0..4 {
            re[i] += other.re[i];
            im[i] += other.im[i];
        }
        HWeight::complex(re, im)
    }

    pub fn scale(&self, s: Q) -> HWeight {
        HWeight::complex(self.re.map(|x| x * s), self.im.map(|x| x * s))
    }
}

impl fmt::Display for HWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.re.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", r.join(", "))?;
        if !self.is_real() {
            let i: Vec<String> = self.im.iter().map(|x| x.to_string()).collect();
            write!(f, " + i({})", i.join(", "))?;
        }
        Ok(())
    }
}

/// Functional on the split Cartan a, recorded by its value at H1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AWeight {
    pub value_at_h1: Q,
    pub imag_at_h1: Q,
}

impl AWeight {
    pub fn real(v: Q) -> Self {
        AWeight {
            value_at_h1: v,
            imag_at_h1: Q::zero(),
        }
    }

    /// `t` with `lambda = t * rho_P`; rho_P(H1) = -1/2 so value = -t/2.
    pub fn from_rho_multiple(t: Q) -> Self {
        AWeight::real(-t / Q::from_integer(2))
    }

    pub fn rho_multiple(&self) -> Q {
        -self.value_at_h1 * Q::from_integer(2)
    }
}

/// `H1 = (1/8) diag(-1,-1,1,1)`, the unit vector in a^- for the form b.
pub fn h1() -> [Q; 4] {
    [q(-1, 8), q(-1, 8), q(1, 8), q(1, 8)]
}

pub fn rho_p() -> HWeight {
    HWeight::from_ints([1, 1, -1, -1])
}

pub fn rho_0() -> HWeight {
    HWeight::new([q(3, 2), q(1, 2), q(-1, 2), q(-3, 2)])
}

/// `b(X, Y) = 16 tr(XY)` on traceless diagonals.
pub fn bform_diag(x: &[Q; 4], y: &[Q; 4]) -> Result<Q, CartanError> {
    for v in [x, y] {
        let s = v.iter().fold(Q::zero(), |a, b| a + b);
        if !s.is_zero() {
            return Err(CartanError::NotTraceless(s));
        }
    }
    let dot = (0..4).fold(Q::zero(), |acc, i| acc + x[i] * y[i]);
    Ok(dot * Q::from_integer(16))
}

/// Permutation of {0,1,2,3}; `p[i]` is the image of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub [usize; 4]);

impl Perm {
    pub fn new(p: [usize; 4]) -> Result<Self, CartanError> {
        let mut seen = [false; 4];
        for &i in &p {
            if i >= 4 || seen[i] {
                return Err(CartanError::BadPermutation(p));
            }
            seen[i] = true;
        }
        Ok(Perm(p))
    }

    pub fn identity() -> Self {
        Perm([0, 1, 2, 3])
    }

    /// Transposition of two positions (0-based).
    pub fn transposition(i: usize, j: usize) -> Self {
        let mut p = [0, 1, 2, 3];
        p.swap(i, j);
        Perm(p)
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm([0, 1, 2, 3].map(|i| self.0[other.0[i]]))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = [0; 4];
        for i in 0..4 {
            inv[self.0[i]] = i;
        }
        Perm(inv)
    }

    /// The longest element, reversing the diagonal.
    pub fn longest() -> Self {
        Perm([3, 2, 1, 0])
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> Vec<Perm> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if let Ok(p) = Perm::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Coefficient in slot `i` moves to slot `perm(i)`.
pub fn weyl_apply(perm: &Perm, w: &HWeight) -> HWeight {
    let mut re = [Q::zero(); 4];
    let mut im = [Q::zero(); 4];
    for i in 0..4 {
        re[perm.0[i]] = w.re[i];
        im[perm.0[i]] = w.im[i];
    }
    HWeight::complex(re, im)
}

pub fn restrict_to_a(w: &HWeight) -> AWeight {
    let h = h1();
    let (re, im) = w.eval(&h);
    AWeight {
        value_at_h1: re,
        imag_at_h1: im,
    }
}

/// Eigenvalues of `Ad((a b)^{-k})` on n-bar, `a = exp(l H1)`,
/// `b = blockdiag(R(theta), R(phi))`.
/// Phase order: -(theta-phi), +(theta-phi), -(theta+phi), +(theta+phi), each times k.
pub fn ad_eigenvalues_nbar(l: f64, theta: f64, phi: f64, k: u32) -> [Complex64; 4] {
    let kf = k as f64;
    let r = (-kf * l / 4.0).exp();
    let d = theta - phi;
    let s = theta + phi;
    [-d, d, -s, s].map(|ph| Complex64::from_polar(r, kf * ph))
}

/// `det(1 - Ad((a b)^k) | n)`; same value as the n-bar determinant at `(a b)^{-k}`.
pub fn det_one_minus_ad_n(l: f64, theta: f64, phi: f64, k: u32) -> f64 {
    let kf = k as f64;
    let qv = (-kf * l / 4.0).exp();
    let f = |ph: f64| 1.0 - 2.0 * qv * (kf * ph).cos() + qv * qv;
    f(theta - phi) * f(theta + phi)
}

/// Same determinant with the angles of `b^k` already supplied.
pub fn det_one_minus_ad_n_at(kl: f64, ktheta: f64, kphi: f64) -> f64 {
    let qv = (-kl / 4.0).exp();
    let f = |ph: f64| 1.0 - 2.0 * qv * ph.cos() + qv * qv;
    f(ktheta - kphi) * f(ktheta + kphi)
}

/// Dense 4x4 matrix routines used as an independent check of the closed forms.
pub mod matrix {
    use num_complex::Complex64;

    pub type M4 = [[f64; 4]; 4];

    pub fn mul(a: &M4, b: &M4) -> M4 {
        let mut c = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for (k, bk) in b.iter().enumerate() {
                    c[i][j] += a[i][k] * bk[j];
                }
            }
        }
        c
    }

    /// The group element `(a b)^k` in SL(4).
    pub fn group_element(l: f64, theta: f64, phi: f64, k: i32) -> M4 {
        let kf = k as f64;
        let e = (kf * l / 8.0).exp();
        let (st, ct) = (kf * theta).sin_cos();
        let (sp, cp) = (kf * phi).sin_cos();
        [
            [ct / e, -st / e, 0.0, 0.0],
            [st / e, ct / e, 0.0, 0.0],
            [0.0, 0.0, cp * e, -sp * e],
            [0.0, 0.0, sp * e, cp * e],
        ]
    }

    pub fn inverse_block(g: &M4) -> M4 {
        // g is block diagonal with 2x2 blocks of the form s * rotation
        let mut inv = [[0.0; 4]; 4];
        for b in [0usize, 2] {
            let det = g[b][b] * g[b + 1][b + 1] - g[b][b + 1] * g[b + 1][b];
            inv[b][b] = g[b + 1][b + 1] / det;
            inv[b][b + 1] = -g[b][b + 1] / det;
            inv[b + 1][b] = -g[b + 1][b] / det;
            inv[b + 1][b + 1] = g[b][b] / det;
        }
        inv
    }

    /// Basis E31, E32, E41, E42 (n-bar) or E13, E14, E23, E24 (n).
    pub fn basis(nbar: bool) -> [(usize, usize); 4] {
        if nbar {
            [(2, 0), (2, 1), (3, 0), (3, 1)]
        } else {
            [(0, 2), (0, 3), (1, 2), (1, 3)]
        }
    }

    /// Matrix of `X -> g X g^{-1}` on n or n-bar, by explicit conjugation.
    pub fn adjoint_on(g: &M4, nbar: bool) -> M4 {
        let gi = inverse_block(g);
        let basis = basis(nbar);
        let mut out = [[0.0; 4]; 4];
        for (col, &(i, j)) in basis.iter().enumerate() {
            let mut e = [[0.0; 4]; 4];
            e[i][j] = 1.0;
            let img = mul(&mul(g, &e), &gi);
            for (row, &(r, c)) in basis.iter().enumerate() {
                out[row][col] = img[r][c];
            }
        }
        out
    }

    pub fn trace(m: &M4) -> f64 {
        (0..4).map(|i| m[i][i]).sum()
    }

    /// Determinant by partial-pivot elimination over the complex numbers.
    pub fn det_c(m: &[[Complex64; 4]; 4]) -> Complex64 {
        let mut a = *m;
        let mut det = Complex64::new(1.0, 0.0);
        for c in 0..4 {
            let p = (c..4)
                .max_by(|&x, &y| a[x][c].norm().partial_cmp(&a[y][c].norm()).unwrap())
                .unwrap();
            if a[p][c].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= a[c][c];
            for r in c + 1..4 {
                let f = a[r][c] / a[c][c];
                for k in c..4 {
                    let v = a[c][k];
                    a[r][k] -= f * v;
                }
            }
        }
        det
    }

    /// `det(z - m)`.
    pub fn char_poly_at(m: &M4, z: Complex64) -> Complex64 {
        let mut a = [[Complex64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                a[i][j] = Complex64::new(-m[i][j], 0.0);
            }
            a[i][i] += z;
        }
        det_c(&a)
    }

    pub fn det_one_minus(m: &M4) -> f64 {
        char_poly_at(m, Complex64::new(1.0, 0.0)).re
    }
}
