//! Synthetic primitive length spectra: generation, validation and JSON-lines
//! persistence.

use crate::euler_char::{r_gamma, Angle, AnglePair, Chi1Table, EulerError, Q};
use crate::numeric::{li, li_increment};
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum SpectrumError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: field `{field}`: {msg}")]
    Parse { line: usize, field: String, msg: String },
    #[error("class {index}: {msg}")]
    Invalid { index: usize, msg: String },
    #[error("x_max = {0} is too small to contain a class")]
    TooSmall(f64),
    #[error("constant must be positive (got {0})")]
    BadConstant(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveClass {
    pub l0: f64,
    pub angles: AnglePair,
    pub chi: Chi1Table,
    r: Vec<u64>,
}

impl PrimitiveClass {
    pub fn new(l0: f64, angles: AnglePair, chi: Chi1Table) -> Result<Self, EulerError> {
        let r = r_gamma(&angles);
        chi.validate(&r)?;
        Ok(PrimitiveClass { l0, angles, chi, r })
    }

    /// Weakly neat class with `chi_1 = 1` when the angles allow it, otherwise
    /// every required table entry set to 1.
    pub fn unit_weight(l0: f64, angles: AnglePair) -> Self {
        let r = r_gamma(&angles);
        let one = Some(Q::one());
        let chi = Chi1Table {
            chi1_1: Q::one(),
            chi1_r1: if !r.is_empty() { one } else { None },
            chi1_r2: if r.len() > 1 { one } else { None },
            chi1_lcm: if r.len() > 1 { one } else { None },
        };
        PrimitiveClass { l0, angles, chi, r }
    }

    /// `R_gamma`, ascending.
    pub fn r(&self) -> &[u64] {
        &self.r
    }

    pub fn norm(&self) -> f64 {
        self.l0.exp()
    }

    /// `chi_1(Gamma_{gamma^k})` as a float.
    pub fn chi1_at_power(&self, k: u64) -> f64 {
        self.chi
            .at_power(&self.r, k)
            .expect("validated table")
            .to_f64()
            .unwrap()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Meta {
    pub generator: String,
    pub seed: u64,
    pub constant: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    classes: Vec<PrimitiveClass>,
    pub meta: Meta,
}

impl Spectrum {
    pub fn new(classes: Vec<PrimitiveClass>, meta: Meta) -> Result<Self, SpectrumError> {
        for (i, c) in classes.iter().enumerate() {
            if !(c.l0 > 0.0 && c.l0.is_finite()) {
                return Err(SpectrumError::Invalid {
                    index: i,
                    msg: format!("length must be positive and finite (got {})", c.l0),
                });
            }
            if i > 0 && c.l0 < classes[i - 1].l0 {
                return Err(SpectrumError::Invalid {
                    index: i,
                    msg: "classes must be sorted by length".into(),
                });
            }
            c.chi
                .validate(&c.r)
                .map_err(|e| SpectrumError::Invalid { index: i, msg: e.to_string() })?;
        }
        Ok(Spectrum { classes, meta })
    }

    pub fn empty() -> Self {
        Spectrum {
            classes: Vec::new(),
            meta: Meta { generator: "empty".into(), seed: 0, constant: 0.0 },
        }
    }

    pub fn classes(&self) -> &[PrimitiveClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes with `l0 <= l_max`.
    pub fn truncated(&self, l_max: f64) -> Spectrum {
        let n = self.classes.partition_point(|c| c.l0 <= l_max);
        Spectrum { classes: self.classes[..n].to_vec(), meta: self.meta.clone() }
    }

    /// The same classes with every chi_1 entry multiplied by `s`.
    pub fn scale_chi(&self, s: Q) -> Spectrum {
        let classes = self
            .classes
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.chi.chi1_1 *= s;
                for v in [&mut c.chi.chi1_r1, &mut c.chi.chi1_r2, &mut c.chi.chi1_lcm]
                    .into_iter()
                    .flatten()
                {
                    *v *= s;
                }
                c
            })
            .collect();
        Spectrum { classes, meta: self.meta.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleLaw {
    /// Density proportional to `sin^2 theta sin^2 phi`.
    WeylMeasure,
    Uniform,
    Fixed(AnglePair),
}

impl AngleLaw {
    pub fn name(&self) -> &'static str {
        match self {
            AngleLaw::WeylMeasure => "weyl",
            AngleLaw::Uniform => "uniform",
            AngleLaw::Fixed(_) => "fixed",
        }
    }
}

fn sample_sin2(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let t: f64 = rng.gen::<f64>() * 2.0 * PI;
        let u: f64 = rng.gen();
        if u < t.sin().powi(2) {
            return t;
        }
    }
}

fn sample_angles(law: &AngleLaw, rng: &mut ChaCha8Rng) -> AnglePair {
    match law {
        AngleLaw::WeylMeasure => {
            let t = sample_sin2(rng);
            let p = sample_sin2(rng);
            AnglePair::new(Angle::irrational(t), Angle::irrational(p))
        }
        AngleLaw::Uniform => {
            let t = rng.gen::<f64>() * 2.0 * PI;
            let p = rng.gen::<f64>() * 2.0 * PI;
            AnglePair::new(Angle::irrational(t), Angle::irrational(p))
        }
        AngleLaw::Fixed(a) => *a,
    }
}

/// Norms `N_k = li^{-1}(k / constant)` for `k = 1 .. floor(constant li(x_max))`,
/// so that `#{k : N_k <= x} = floor(constant li(x))`; `chi_1 = 1` throughout and
/// angles drawn independently of the lengths.
pub fn generate_pnt_like(
    x_max: f64,
    seed: u64,
    constant: f64,
    law: AngleLaw,
) -> Result<Spectrum, SpectrumError> {
    if !(constant > 0.0) {
        return Err(SpectrumError::BadConstant(constant));
    }
    if x_max <= 2.0 {
        return Err(SpectrumError::TooSmall(x_max));
    }
    let count = (constant * li(x_max)).floor() as u64;
    if count == 0 {
        return Err(SpectrumError::TooSmall(x_max));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes = Vec::with_capacity(count as usize);
    let (mut n_prev, mut l_prev) = (2.0f64, 0.0f64);
    for k in 1..=count {
        let target = k as f64 / constant;
        // periodic re-anchoring against the full quadrature
        if k % 4096 == 0 {
            l_prev = li(n_prev);
        }
        let mut n = n_prev + (target - l_prev) * n_prev.ln();
        for _ in 0..50 {
            let f = l_prev + li_increment(n_prev, n) - target;
            let step = f * n.ln();
            n -= step;
            if step.abs() <= 1e-15 * n {
                break;
            }
        }
        n_prev = n;
        l_prev = target;
        classes.push(PrimitiveClass::unit_weight(n.ln(), sample_angles(&law, &mut rng)));
    }
    // an inexact last inversion must not leave the requested range
    while classes.last().is_some_and(|c| c.l0 > x_max.ln()) {
        classes.pop();
    }
    Spectrum::new(
        classes,
        Meta { generator: format!("pnt_like/{}", law.name()), seed, constant },
    )
}

fn angle_json(a: &Angle) -> Value {
    match a {
        Angle::Rational { p, q } => json!([p, q]),
        Angle::Irrational(x) => json!({ "irr": x }),
    }
}

fn rational_json(x: &Q) -> Value {
    if x.is_integer() {
        json!(x.to_integer())
    } else {
        json!([x.numer(), x.denom()])
    }
}

pub fn save(s: &Spectrum, path: &Path) -> Result<(), SpectrumError> {
    let mut w = BufWriter::new(File::create(path)?);
    write_jsonl(s, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_jsonl<W: Write>(s: &Spectrum, w: &mut W) -> Result<(), SpectrumError> {
    let header = json!({"meta": {
        "generator": s.meta.generator,
        "seed": s.meta.seed,
        "constant": s.meta.constant,
    }});
    writeln!(w, "{header}")?;
    for c in &s.classes {
        let mut obj = serde_json::Map::new();
        obj.insert("l0".into(), json!(c.l0));
        obj.insert("theta".into(), angle_json(&c.angles.theta));
        obj.insert("phi".into(), angle_json(&c.angles.phi));
        obj.insert("chi1".into(), rational_json(&c.chi.chi1_1));
        for (k, v) in [("chi1_r1", &c.chi.chi1_r1), ("chi1_r2", &c.chi.chi1_r2), ("chi1_lcm", &c.chi.chi1_lcm)] {
            if let Some(v) = v {
                obj.insert(k.into(), rational_json(v));
            }
        }
        writeln!(w, "{}", Value::Object(obj))?;
    }
    Ok(())
}

fn perr(line: usize, field: &str, msg: impl Into<String>) -> SpectrumError {
    SpectrumError::Parse { line, field: field.into(), msg: msg.into() }
}

fn parse_angle(v: Option<&Value>, line: usize, field: &str) -> Result<Angle, SpectrumError> {
    let v = v.ok_or_else(|| perr(line, field, "missing"))?;
    if let Some(arr) = v.as_array() {
        let (p, q) = match arr.as_slice() {
            [p, q] => (p.as_i64(), q.as_i64()),
            _ => (None, None),
        };
        let (p, q) = p.zip(q).ok_or_else(|| perr(line, field, "expected [p, q] integers"))?;
        return Angle::rational(p, q).map_err(|e| perr(line, field, e.to_string()));
    }
    if let Some(x) = v.get("irr").and_then(Value::as_f64) {
        return Ok(Angle::irrational(x));
    }
    Err(perr(line, field, "expected [p, q] or {\"irr\": x}"))
}

fn parse_rational(v: &Value, line: usize, field: &str) -> Result<Q, SpectrumError> {
    if let Some(i) = v.as_i64() {
        return Ok(Q::from_integer(i));
    }
    if let Some(arr) = v.as_array() {
        if let [Some(p), Some(q)] = [arr.first().and_then(Value::as_i64), arr.get(1).and_then(Value::as_i64)] {
            if arr.len() == 2 && q != 0 {
                return Ok(Q::new(p, q));
            }
        }
        return Err(perr(line, field, "expected [p, q] with q != 0"));
    }
    if let Some(x) = v.as_f64() {
        return Q::approximate_float(x).ok_or_else(|| perr(line, field, "not representable"));
    }
    Err(perr(line, field, "expected a number or [p, q]"))
}

pub fn load(path: &Path) -> Result<Spectrum, SpectrumError> {
    read_jsonl(BufReader::new(File::open(path)?))
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<Spectrum, SpectrumError> {
    let mut meta = None;
    let mut classes = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let ln = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(&line).map_err(|e| perr(ln, "<record>", e.to_string()))?;
        if let Some(m) = v.get("meta") {
            let generator = m
                .get("generator")
                .and_then(Value::as_str)
                .ok_or_else(|| perr(ln, "meta.generator", "missing string"))?;
            let seed = m
                .get("seed")
                .and_then(Value::as_u64)
                .ok_or_else(|| perr(ln, "meta.seed", "missing integer"))?;
            let constant = m
                .get("constant")
                .and_then(Value::as_f64)
                .ok_or_else(|| perr(ln, "meta.constant", "missing number"))?;
            meta = Some(Meta { generator: generator.into(), seed, constant });
            continue;
        }
        let l0 = v
            .get("l0")
            .and_then(Value::as_f64)
            .ok_or_else(|| perr(ln, "l0", "missing number"))?;
        let theta = parse_angle(v.get("theta"), ln, "theta")?;
        let phi = parse_angle(v.get("phi"), ln, "phi")?;
        let chi1 = parse_rational(v.get("chi1").ok_or_else(|| perr(ln, "chi1", "missing"))?, ln, "chi1")?;
        let opt = |f: &str| -> Result<Option<Q>, SpectrumError> {
            v.get(f).map(|x| parse_rational(x, ln, f)).transpose()
        };
        let chi = Chi1Table {
            chi1_1: chi1,
            chi1_r1: opt("chi1_r1")?,
            chi1_r2: opt("chi1_r2")?,
            chi1_lcm: opt("chi1_lcm")?,
        };
        let angles = AnglePair::new(theta, phi);
        let r = r_gamma(&angles);
        classes.push(PrimitiveClass { l0, angles, chi, r });
    }
    let meta = meta.unwrap_or(Meta { generator: "unknown".into(), seed: 0, constant: 0.0 });
    Spectrum::new(classes, meta)
}
