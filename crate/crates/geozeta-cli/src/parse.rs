use crate::Failure;
use geozeta::euler_char::{Angle, AnglePair};
use geozeta::km_ring::{sigma_tilde, wedge_nbar, VirtualRep};
use geozeta::spectrum::AngleLaw;
use num_complex::Complex64;
use std::path::Path;

fn bad(msg: String) -> Failure {
    Failure::Validation(msg)
}

fn number(s: &str, what: &str) -> Result<f64, Failure> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| bad(format!("{what}: '{s}' is not a finite number")))
}

fn angle(s: &str) -> Result<Angle, Failure> {
    let err = || bad(format!("angle '{s}': expected p/q in units of pi, e.g. 1/3"));
    let (p, q) = s.trim().split_once('/').ok_or_else(err)?;
    let p: i64 = p.trim().parse().map_err(|_| err())?;
    let q: i64 = q.trim().parse().map_err(|_| err())?;
    Angle::rational(p, q).map_err(|e| bad(format!("angle '{s}': {e}")))
}

pub fn angle_law(s: &str) -> Result<AngleLaw, Failure> {
    match s {
        "weyl" => Ok(AngleLaw::WeylMeasure),
        "uniform" => Ok(AngleLaw::Uniform),
        _ => {
            let rest = s
                .strip_prefix("fixed:")
                .ok_or_else(|| bad(format!("--angles '{s}': use weyl, uniform or fixed:p/q,p/q")))?;
            let (t, p) = rest
                .split_once(',')
                .ok_or_else(|| bad(format!("--angles '{s}': fixed needs two angles, e.g. fixed:1/3,1/5")))?;
            Ok(AngleLaw::Fixed(AnglePair::new(angle(t)?, angle(p)?)))
        }
    }
}

pub fn sigma(s: &str) -> Result<VirtualRep, Failure> {
    match s {
        "triv" => Ok(VirtualRep::triv()),
        "tilde" => Ok(sigma_tilde()),
        _ => {
            let q = s
                .strip_prefix("wedge-nbar:")
                .and_then(|q| q.parse::<usize>().ok())
                .ok_or_else(|| bad(format!("--sigma '{s}': use triv, tilde or wedge-nbar:q with q in 0..=4")))?;
            wedge_nbar(q).map_err(|e| bad(format!("--sigma '{s}': {e}")))
        }
    }
}

/// `re0:re1:step[,im]`
pub fn s_grid(s: &str) -> Result<Vec<Complex64>, Failure> {
    let (line, im) = match s.split_once(',') {
        Some((l, i)) => (l, number(i, "--grid imaginary part")?),
        None => (s, 0.0),
    };
    let parts: Vec<&str> = line.split(':').collect();
    if parts.len() != 3 {
        return Err(bad(format!("--grid '{s}': expected re0:re1:step[,im]")));
    }
    let (a, b, h) = (number(parts[0], "--grid")?, number(parts[1], "--grid")?, number(parts[2], "--grid")?);
    if h <= 0.0 || b < a {
        return Err(bad(format!("--grid '{s}': need re0 <= re1 and step > 0")));
    }
    let n = ((b - a) / h + 1e-9).floor() as usize;
    if n > 1_000_000 {
        return Err(bad(format!("--grid '{s}': more than a million points")));
    }
    Ok((0..=n).map(|k| Complex64::new(a + k as f64 * h, im)).collect())
}

/// `lo:hi:n`
pub fn x_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad(format!("--grid '{s}': expected lo:hi:n")));
    }
    let (lo, hi) = (number(parts[0], "--grid")?, number(parts[1], "--grid")?);
    let n: usize = parts[2].trim().parse().map_err(|_| bad(format!("--grid '{s}': n must be a positive integer")))?;
    if lo < 2.0 || hi <= lo || n < 2 {
        return Err(bad(format!("--grid '{s}': need 2 <= lo < hi and n >= 2")));
    }
    Ok(geozeta::counting::log_grid(lo, hi, n))
}

pub fn readable(p: &Path) -> Result<(), Failure> {
    std::fs::File::open(p).map(|_| ()).map_err(|e| bad(format!("cannot read {}: {e}", p.display())))
}

pub fn writable(p: &Path) -> Result<(), Failure> {
    let dir = match p.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    if !dir.is_dir() {
        return Err(bad(format!("cannot write {}: directory {} does not exist", p.display(), dir.display())));
    }
    if p.is_dir() {
        return Err(bad(format!("cannot write {}: it is a directory", p.display())));
    }
    Ok(())
}
