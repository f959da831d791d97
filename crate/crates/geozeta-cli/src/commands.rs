use crate::parse;
use crate::Failure;
use geozeta::counting::{fit_main_term, CountTable, Model, Window};
use geozeta::spectrum::{generate_pnt_like, load, save, Spectrum};
use geozeta::zeta::{evaluate_grid, TruncationConfig, ZetaKind};
use std::path::Path;

#[derive(Clone, Copy, clap::ValueEnum)]
pub enum Kind {
    Selberg,
    Ruelle,
}

#[derive(Clone, Copy, clap::ValueEnum)]
pub enum ModelArg {
    Linear,
    XOverLog,
    Li,
}

const FACTORIZATION_TOL: f64 = 1e-8;

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

fn load_spectrum(p: &Path) -> Result<Spectrum, Failure> {
    load(p).map_err(|e| Failure::Validation(format!("{}: {e}", p.display())))
}

pub fn gen(xmax: f64, seed: u64, constant: f64, angles: &str, out: &Path) -> Result<(), Failure> {
    let law = parse::angle_law(angles)?;
    parse::writable(out)?;
    let sp = generate_pnt_like(xmax, seed, constant, law).map_err(invalid)?;
    save(&sp, out).map_err(invalid)?;
    println!("wrote {} classes to {}", sp.len(), out.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn zeta(
    spectrum: &Path,
    sigma: &str,
    grid: &str,
    lmax: f64,
    mmax: u64,
    kind: Kind,
    out: &Path,
    check: bool,
) -> Result<(), Failure> {
    parse::readable(spectrum)?;
    parse::writable(out)?;
    let rep = parse::sigma(sigma)?;
    let points = parse::s_grid(grid)?;
    let cfg = TruncationConfig::new(lmax, mmax).map_err(invalid)?;
    if let Some(s) = points.iter().find(|s| s.re <= 1.0) {
        return Err(Failure::Validation(format!("--grid: Re(s) = {} is outside the half-plane Re(s) > 1", s.re)));
    }
    let sp = load_spectrum(spectrum)?;
    let (kind, prefix) = match kind {
        Kind::Selberg => (ZetaKind::Selberg, "logZ"),
        Kind::Ruelle => (ZetaKind::Ruelle, "logR"),
    };
    let rows = evaluate_grid(&sp, &rep, &points, &cfg, kind, check);
    let mut w = csv::Writer::from_path(out).map_err(invalid)?;
    let mut header = vec!["s_re".to_string(), "s_im".into(), format!("{prefix}_re"), format!("{prefix}_im")];
    if check {
        header.push("residual_abs".into());
    }
    w.write_record(&header).map_err(invalid)?;
    for r in &rows {
        let mut rec = vec![r.s.re.to_string(), r.s.im.to_string(), r.log_value.re.to_string(), r.log_value.im.to_string()];
        if let Some(res) = r.residual_abs {
            rec.push(res.to_string());
        }
        w.write_record(&rec).map_err(invalid)?;
    }
    w.flush().map_err(invalid)?;
    println!("wrote {} rows to {}", rows.len(), out.display());
    if check {
        let worst = rows.iter().filter_map(|r| r.residual_abs).fold(0.0, f64::max);
        println!("max |residual| = {worst:e}");
        let relevant = rows.iter().filter(|r| r.s.re >= 2.0).filter_map(|r| r.residual_abs).fold(0.0, f64::max);
        if relevant >= FACTORIZATION_TOL {
            return Err(Failure::Verification(format!("factorization residual {relevant:e} at Re(s) >= 2")));
        }
    }
    Ok(())
}

pub fn count(spectrum: &Path, window: &str, margin: f64, grid: &str, out: &Path) -> Result<(), Failure> {
    parse::readable(spectrum)?;
    parse::writable(out)?;
    let w = Window::parse(window, margin).map_err(|e| Failure::Validation(format!("--window '{window}': {e}")))?;
    let xs = parse::x_grid(grid)?;
    let sp = load_spectrum(spectrum)?;
    if let Some(last) = sp.classes().last() {
        if xs[xs.len() - 1] > last.norm() * 1.5 {
            eprintln!("warning: grid extends past the largest primitive norm {:.6e}; counts there are truncated", last.norm());
        }
    }
    let table = CountTable::build(&sp, &w, &xs).map_err(invalid)?;
    let mut wr = csv::Writer::from_path(out).map_err(invalid)?;
    wr.write_record(["x", "psi", "psi_tilde", "psi1", "pi", "pi_tilde", "pi1", "li2"]).map_err(invalid)?;
    for r in &table.rows {
        let vals = [r.x, r.psi, r.psi_tilde, r.psi1, r.pi, r.pi_tilde, r.pi1, r.li2];
        wr.write_record(vals.iter().map(|v| v.to_string())).map_err(invalid)?;
    }
    wr.flush().map_err(invalid)?;
    println!("wrote {} rows to {}", table.rows.len(), out.display());
    Ok(())
}

pub fn fit(table: &Path, model: ModelArg, column: &str) -> Result<(), Failure> {
    parse::readable(table)?;
    let mut rd = csv::Reader::from_path(table).map_err(|e| Failure::Validation(format!("{}: {e}", table.display())))?;
    let headers = rd.headers().map_err(invalid)?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Failure::Validation(format!("{}: no column '{name}'", table.display())))
    };
    let (ix, iy) = (find("x")?, find(column)?);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (line, rec) in rd.records().enumerate() {
        let rec = rec.map_err(invalid)?;
        let get = |i: usize| -> Result<f64, Failure> {
            rec.get(i)
                .and_then(|v| v.parse::<f64>().ok())
                .ok_or_else(|| Failure::Validation(format!("{}: row {}: bad number in column {}", table.display(), line + 2, headers[i].to_string())))
        };
        xs.push(get(ix)?);
        ys.push(get(iy)?);
    }
    let model = match model {
        ModelArg::Linear => Model::Linear,
        ModelArg::XOverLog => Model::XOverLog,
        ModelArg::Li => Model::Li,
    };
    let f = fit_main_term(&xs, &ys, model).map_err(invalid)?;
    let report = serde_json::json!({
        "model": model.name(),
        "column": column,
        "c": f.c,
        "max_rel_residual": f.max_rel_residual,
    });
    println!("{report}");
    Ok(())
}
