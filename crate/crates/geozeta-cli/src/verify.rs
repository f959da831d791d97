use crate::Failure;
use geozeta::euler_char::{Angle, AnglePair, Q};
use geozeta::inf_chars::{infinitesimal_character, relevant_parameters, satisfies_region_condition};
use geozeta::km_ring::{
    euler_invariant_sum, exterior_power, module_m, module_n, module_pm, sigma_tilde, sigma_tilde_closed_form,
    sigma_tilde_invariant_double_sum, wedge_m, wedge_nbar, wedge_pm, VirtualRep,
};
use geozeta::spectrum::{generate_pnt_like, AngleLaw};
use geozeta::zeta::{factorization_residual, TruncationConfig};
use num_complex::Complex64;
use std::f64::consts::PI;

type Item = Result<String, String>;

fn km_tables() -> Item {
    for q in 0..=4 {
        let pairs = [
            (wedge_pm(q), exterior_power(&module_pm(), q), "wedge_pM"),
            (wedge_m(q), exterior_power(&module_m(), q), "wedge_m"),
            (wedge_nbar(q), exterior_power(&module_n(), q), "wedge_nbar"),
        ];
        for (table, power, name) in pairs {
            let (t, p) = (table.map_err(|e| e.to_string())?, power.map_err(|e| e.to_string())?);
            if t != p {
                return Err(format!("{name}({q}) = {t}, exterior power gives {p}"));
            }
        }
    }
    Ok("wedge_pM, wedge_m, wedge_nbar match exterior powers for q = 0..4".into())
}

fn alternating_sum() -> Item {
    let a = [1i64, -3, 6, -10, 15];
    let c2 = [1i64, 2, 1];
    for k in 0..=4usize {
        let s: i64 = (0..=k.min(2)).map(|m| a[k - m] * c2[m]).sum();
        if s != if k % 2 == 0 { 1 } else { -1 } {
            return Err(format!("k = {k}: {s}"));
        }
    }
    Ok("(-1)^k for k = 0..4".into())
}

fn sigma_tilde_identity() -> Item {
    let st = sigma_tilde();
    let mut worst = 0.0f64;
    for i in 0..32 {
        for j in 0..32 {
            let (t, p) = (PI * i as f64 / 16.0, PI * j as f64 / 16.0);
            worst = worst.max((st.trace_at(t, p) - sigma_tilde_closed_form(t, p)).abs());
            let exact = AnglePair::new(Angle::rational(i, 16).unwrap(), Angle::rational(j, 16).unwrap());
            if !exact.is_regular() && st.trace_at_pair(&exact) != 0.0 {
                return Err(format!("non-zero trace at ({i}pi/16, {j}pi/16)"));
            }
        }
    }
    if worst < 1e-10 {
        Ok(format!("max |error| {worst:.1e}, exact zeros off the regular set"))
    } else {
        Err(format!("max |error| {worst:e}"))
    }
}

fn order_triv() -> Item {
    let v = euler_invariant_sum(&VirtualRep::triv());
    if v == 2 {
        Ok("2".into())
    } else {
        Err(format!("{v}, expected 2"))
    }
}

fn order_tilde() -> Item {
    let v = sigma_tilde_invariant_double_sum();
    if v == 8 {
        Ok("8".into())
    } else {
        Err(format!("{v}, expected 8"))
    }
}

fn inf_chars() -> Item {
    let params = relevant_parameters(&[Q::new(1, 8), Q::new(1, 4), Q::new(3, 8)], 6);
    for p in &params {
        let lam = infinitesimal_character(p).map_err(|e| e.to_string())?;
        if !satisfies_region_condition(&lam) {
            return Err(format!("{p:?} violates the region condition"));
        }
    }
    Ok(format!("{} parameters", params.len()))
}

fn factorization() -> Item {
    let sp = generate_pnt_like(2e4, 1, 2.0, AngleLaw::WeylMeasure).map_err(|e| e.to_string())?;
    let cfg = TruncationConfig::new(40.0, 20).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for sigma in [VirtualRep::triv(), sigma_tilde()] {
        for k in 0..8 {
            let s = Complex64::new(2.0 + 0.25 * k as f64, 1.5 * k as f64);
            worst = worst.max(factorization_residual(&sp, &sigma, s, &cfg).norm());
        }
    }
    if worst < 1e-8 {
        Ok(format!("max |residual| {worst:.2e} on {} classes", sp.len()))
    } else {
        Err(format!("max |residual| {worst:e}"))
    }
}

pub fn run() -> Result<(), Failure> {
    let items: [(&str, fn() -> Item); 7] = [
        ("K_M tables", km_tables),
        ("alternating binomial sum", alternating_sum),
        ("sigma-tilde trace identity", sigma_tilde_identity),
        ("vanishing order, trivial", order_triv),
        ("vanishing order, sigma-tilde", order_tilde),
        ("infinitesimal-character regions", inf_chars),
        ("factorization residuals", factorization),
    ];
    let mut failed = Vec::new();
    for (name, f) in items {
        match f() {
            Ok(m) => println!("PASS {name}: {m}"),
            Err(m) => {
                println!("FAIL {name}: {m}");
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failed.join(", ")))
    }
}
