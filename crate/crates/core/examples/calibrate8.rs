use fracwave::mild_solver::*;
use fracwave::spectral_grid::*;
use std::time::Instant;

fn main() {
    let geom = BoxGeometry::new(1, 1024, 200.0).unwrap();
    let config = SystemConfig {
        gamma1: 1.5,
        gamma2: 1.5,
        f_nl: Nonlinearity::signed_power(1.0, 2.0),
        g_nl: Nonlinearity::signed_power(1.0, 2.0),
        geometry: geom,
        u0: profiles::gaussian(geom, 1.0, 2.0),
        u1: profiles::gaussian(geom, 1.0, 2.0),
        v0: profiles::gaussian(geom, 1.0, 2.0),
        v1: profiles::gaussian(geom, 1.0, 2.0),
        data_scale: 1.0,
    };
    assert!(config.u1.integral() > 0.0);
    let mesh = TimeMesh::graded_for(50.0, 400, 1.5, 1.5);
    let t0 = Instant::now();
    let h = step_mild_system(&config, &mesh).unwrap();
    println!("elapsed {:?}", t0.elapsed());
    println!("termination: {:?}", h.termination);
    println!("records: {}", h.records.len());
    let tail: Vec<(f64, f64)> = h.records.iter().rev().take(8).map(|r| (r.t, r.norm_u_inf + r.norm_v_inf)).collect();
    println!("last records: {tail:?}");
}
