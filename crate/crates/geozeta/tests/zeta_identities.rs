use geozeta::counting::{phi_terms, Window};
use geozeta::euler_char::{Angle, AnglePair, Chi1Table, Q};
use geozeta::km_ring::{sigma_tilde, VirtualRep};
use geozeta::numeric::gl_integrate;
use geozeta::spectrum::{generate_pnt_like, AngleLaw, Meta, PrimitiveClass, Spectrum};
use geozeta::zeta::{dirichlet_logderiv, factorization_residual, log_ruelle, log_selberg, TruncationConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn meta() -> Meta {
    Meta { generator: "hand".into(), seed: 0, constant: 2.0 }
}

#[test]
fn single_class_factorization_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let cfg = TruncationConfig::new(50.0, 30).unwrap();
    for _ in 0..100 {
        let l0 = rng.gen_range(0.7..4.0);
        let a = if rng.gen_bool(0.5) {
            AnglePair::new(Angle::irrational(rng.gen_range(-3.0..3.0)), Angle::irrational(rng.gen_range(-3.0..3.0)))
        } else {
            AnglePair::new(Angle::rational(rng.gen_range(-5..6), 6).unwrap(), Angle::irrational(rng.gen_range(-3.0..3.0)))
        };
        let sp = Spectrum::new(vec![PrimitiveClass::unit_weight(l0, a)], meta()).unwrap();
        let s = Complex64::new(rng.gen_range(2.0..4.0), rng.gen_range(-20.0..20.0));
        let sigma = if rng.gen_bool(0.5) { sigma_tilde() } else { VirtualRep::delta(2, 0) };
        assert!(factorization_residual(&sp, &sigma, s, &cfg).norm() < 1e-10);
    }
}

#[test]
fn generated_spectrum_factorization_at_three() {
    let sp = generate_pnt_like(5.8e4, 2, 2.0, AngleLaw::WeylMeasure).unwrap();
    assert!(sp.len() >= 10_000);
    let cfg = TruncationConfig::new(40.0, 20).unwrap();
    let s = Complex64::new(3.0, 0.0);
    for sigma in [VirtualRep::triv(), sigma_tilde()] {
        assert!(factorization_residual(&sp, &sigma, s, &cfg).norm() < 1e-8);
    }
}

#[test]
fn non_regular_spectrum_has_no_sigma_tilde_terms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let classes: Vec<PrimitiveClass> = (1..50)
        .map(|i| {
            let t = if i % 2 == 0 { Angle::rational(0, 1).unwrap() } else { Angle::rational(1, 1).unwrap() };
            let p = Angle::irrational(rng.gen_range(-3.0..3.0));
            let a = if i % 3 == 0 { AnglePair::new(p, t) } else { AnglePair::new(t, p) };
            PrimitiveClass::unit_weight(0.5 + 0.1 * i as f64, a)
        })
        .collect();
    let sp = Spectrum::new(classes, meta()).unwrap();
    let cfg = TruncationConfig::new(30.0, 10).unwrap();
    for s in [2.0, 3.5] {
        let s = Complex64::new(s, 1.0);
        assert_eq!(log_ruelle(&sp, &sigma_tilde(), s, &cfg).norm(), 0.0);
        assert_eq!(dirichlet_logderiv(&sp, &sigma_tilde(), s, &cfg).norm(), 0.0);
    }
}

#[test]
fn single_power_logderiv() {
    let chi = Chi1Table::weakly_neat(Q::new(5, 2));
    let c = PrimitiveClass::new(1.7, AnglePair::new(Angle::irrational(0.3), Angle::irrational(2.2)), chi).unwrap();
    let sp = Spectrum::new(vec![c], meta()).unwrap();
    let cfg = TruncationConfig::new(2.0, 5).unwrap();
    let s = Complex64::new(2.0, 0.4);
    let st = sigma_tilde();
    let want = (-s * 1.7).exp() * (2.5 * st.trace_at(0.3, 2.2) * 1.7);
    assert!((dirichlet_logderiv(&sp, &st, s, &cfg) - want).norm() < 1e-15);
}

#[test]
fn logderiv_on_random_spectra() {
    for seed in 0..4 {
        let sp = generate_pnt_like(2e3, seed, 2.0, AngleLaw::WeylMeasure).unwrap();
        let cfg = TruncationConfig::new(30.0, 10).unwrap();
        let h = 1e-4;
        for s in [2.0, 2.7] {
            let s = Complex64::new(s, 0.5);
            let fd = (log_ruelle(&sp, &sigma_tilde(), s + h, &cfg) - log_ruelle(&sp, &sigma_tilde(), s - h, &cfg)) / (2.0 * h);
            let d = dirichlet_logderiv(&sp, &sigma_tilde(), s, &cfg);
            assert!((fd - d).norm() < 1e-6 * d.norm());
        }
    }
}

#[test]
fn doubling_chi_doubles_the_logs() {
    let sp = generate_pnt_like(500.0, 8, 2.0, AngleLaw::WeylMeasure).unwrap();
    let twice = sp.scale_chi(Q::from_integer(2));
    let cfg = TruncationConfig::new(20.0, 5).unwrap();
    let s = Complex64::new(2.5, 0.0);
    let (a, b) = (log_selberg(&sp, &VirtualRep::triv(), s, &cfg), log_selberg(&twice, &VirtualRep::triv(), s, &cfg));
    assert!((b - 2.0 * a).norm() < 1e-13 * a.norm());
}

#[test]
fn thread_count_does_not_change_results() {
    // the pool is process-wide, so compare against a serial pairwise evaluation
    let sp = generate_pnt_like(3e4, 4, 2.0, AngleLaw::WeylMeasure).unwrap();
    let cfg = TruncationConfig::new(30.0, 10).unwrap();
    let s = Complex64::new(2.0, 3.0);
    let a = log_selberg(&sp, &sigma_tilde(), s, &cfg);
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| log_selberg(&sp, &sigma_tilde(), s, &cfg));
    assert_eq!(a, b);
}

#[test]
fn abel_summation_of_the_window_series() {
    let sp = generate_pnt_like(5e3, 12, 2.0, AngleLaw::WeylMeasure).unwrap();
    let w = Window::full_torus(0.25);
    let l_max = 5e3f64.ln();
    for j in [0u32, 1] {
        let terms = phi_terms(&sp, &w, j, l_max);
        for s in [2.0f64, 3.0] {
            let series: f64 = terms.iter().map(|(l, v)| v * (-s * l).exp()).sum();
            // the counting function is a step function; integrate it piece by piece
            let mut integral = 0.0;
            let mut level = 0.0;
            let mut prev = 0.0;
            for (l, v) in &terms {
                integral += level * gl_integrate(|x| (-s * x).exp(), prev, *l, 1);
                level += v;
                prev = *l;
            }
            integral += level * (-s * prev).exp() / s;
            assert!((integral - series / s).abs() < 1e-6 * series / s, "j={j} s={s}");
        }
    }
}
