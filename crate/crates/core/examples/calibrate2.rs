use fracwave::frac_calculus::*;
use fracwave::mittag_leffler::{ml_eval, MLParams};

fn err_at(alpha: f64, lam: f64, n: usize, chi: f64) -> f64 {
    let f = TimeSamples::from_fn_graded(
        |t| if t == 0.0 { 0.0 } else {
            t.powf(alpha - 1.0) * ml_eval(MLParams::new(alpha, alpha, lam * t.powf(alpha))).unwrap()
        },
        1.0, n, chi,
    );
    let j = rl_integral(&f, 1.0 - alpha).unwrap();
    // terminal-node error
    let t = *j.nodes().last().unwrap();
    let v = *j.values().last().unwrap();
    let want = ml_eval(MLParams::new(alpha, 1.0, lam * t.powf(alpha))).unwrap();
    (v - want).abs()
}

fn main() {
    for alpha in [0.4, 0.7] {
        for chi in [1.5, 2.0, 2.25, 1.0/alpha] {
            let e1 = err_at(alpha, -2.0, 1024, chi);
            let e2 = err_at(alpha, -2.0, 2048, chi);
            println!("alpha={alpha} chi={chi:.3}: e(1024)={e1:.3e} e(2048)={e2:.3e} order={:.3}", (e1/e2).log2());
        }
    }
}
