use cycloproj::fn_solver::{maximize_product, project_feasible, FeasibleSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn dbg_projection() {
    let spec = FeasibleSpec::new(4, 0.35).unwrap();
    // replicate the random seeds from maximize(seed=1234567)
    for k in 0..5u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1234567u64.wrapping_add(31 * k + 1));
        let n = 4;
        let mut m = vec![0.0; 16];
        for i in 0..n { m[i*n+i] = 1.0; }
        for i in 0..n {
            for j in i+1..n {
                let v: f64 = rng.gen_range(-1.0..1.0);
                m[i*n+j] = v; m[j*n+i] = v;
            }
        }
        match project_feasible(&m, &spec) {
            Ok(p) => println!("seed {k}: ok, product {}", p.product()),
            Err(e) => println!("seed {k}: ERR {e}"),
        }
    }
    let r = maximize_product(&spec, 8, 1234567);
    match r {
        Ok(r) => println!("solve ok f={}", r.f_estimate),
        Err(e) => println!("solve ERR {e}"),
    }
}
