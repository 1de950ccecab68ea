use fracwave::mild_solver::*;
use fracwave::regime_analyzer::*;
use fracwave::spectral_grid::*;
use std::time::Instant;

fn main() {
    let amp: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.05);
    let n: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(48);
    let steps: usize = std::env::args().nth(3).and_then(|s| s.parse().ok()).unwrap_or(300);
    let geom = BoxGeometry::new(3, n, 140.0).unwrap();
    let config = SystemConfig {
        gamma1: 1.5,
        gamma2: 1.5,
        f_nl: Nonlinearity::signed_power(1.0, 3.0),
        g_nl: Nonlinearity::signed_power(1.0, 3.0),
        geometry: geom,
        u0: profiles::gaussian(geom, 1.0, 14.0),
        u1: GridFunction::zeros(geom),
        v0: profiles::gaussian(geom, 1.0, 14.0),
        v1: GridFunction::zeros(geom),
        data_scale: amp,
    };
    let point = ParamPoint::new(1.5, 1.5, 3.0, 3.0, 3).unwrap();
    let d = derive_exponents(&point, None).unwrap();
    println!("s1={} sigma1={} delta={}", d.s1, d.sigma1, d.delta);
    let mesh = TimeMesh::graded_for(50.0, steps, 1.5, 1.5);
    let opts = SolverOptions { s1: d.s1, s2: d.s2, ..Default::default() };
    let t0 = Instant::now();
    let h = solve(&config, &mesh, &opts).unwrap();
    println!("elapsed {:?}  termination {:?}  alias {:?}", t0.elapsed(), h.termination, h.alias_warning);
    // sup monotone after t=5?
    let mut bad = 0;
    let recs: Vec<_> = h.records.iter().filter(|r| r.t >= 5.0).collect();
    for w in recs.windows(2) {
        if w[1].norm_u_inf > w[0].norm_u_inf * (1.0 + 1e-9) { bad += 1; if bad < 12 { println!("  inc at t={:.3}: {:.8e} -> {:.8e} (rel {:.2e})", w[1].t, w[0].norm_u_inf, w[1].norm_u_inf, w[1].norm_u_inf/w[0].norm_u_inf - 1.0); } }
    }
    println!("sup increases after t=5: {bad} of {}", recs.len());
    if h.termination == Termination::Completed {
        let (slope, r2) = fit_decay_rate(&h, (5.0, 50.0), NormSelector::US1).unwrap();
        println!("u_s1 slope {slope:.4} (r2 {r2:.4}); need <= {:.4}", -0.75 * d.sigma1);
        let (si, _) = fit_decay_rate(&h, (5.0, 50.0), NormSelector::UInf).unwrap();
        println!("u_inf slope {si:.4}");
    }
    for r in h.records.iter().step_by(30) {
        println!("t={:8.3}  |u|s1={:.4e}  |u|inf={:.4e}", r.t, r.norm_u_s1, r.norm_u_inf);
    }
}
