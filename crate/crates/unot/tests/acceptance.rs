//! Acceptance criteria, one line each. Exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unot_core::completion::{simulate_full, UnotIsometry, COMPLETION_MAX_QUBITS};
use unot_core::estimation::{classical_unot_analytic, classical_unot_montecarlo};
use unot_core::gate::{
    apply_unot, check_pairwise_separability, clone_output, complement_output, complement_pair,
    gate_coefficients,
};
use unot_core::haar::haar_pure;
use unot_core::linalg::max_abs;
use unot_core::optimality::{delta_of_channel, twirl_channel, ExtremalChannel, HalfInt, StinespringChannel};
use unot_core::qubit::{self, PureQubit, ScaledStateForm};
use unot_core::restricted::{perfect_real_not, real_estimation_fidelity, real_not_fidelity, RealQubit};
use unot_core::tensor;

struct Outcome {
    passed: bool,
    detail: String,
}

fn within(dev: f64, tol: f64) -> bool {
    dev.is_finite() && dev <= tol
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    out.detail = format!("{}; {:.2} s", out.detail, took.as_secs_f64());
    if let Some(limit) = limit {
        if took > limit {
            out.passed = false;
            out.detail = format!("{} exceeds {} s", out.detail, limit.as_secs());
        }
    }
    out
}

fn c1_fidelity_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for m in 1..=4 {
            for _ in 0..50 {
                let psi = haar_pure(&mut rng);
                let out = complement_output(&apply_unot(&psi, n, m).unwrap());
                let f = qubit::fidelity(&out, &psi.complement().density()).unwrap();
                worst = worst.max((f - (n as f64 + 1.0) / (n as f64 + 2.0)).abs());
            }
        }
    }
    Outcome {
        passed: within(worst, 1e-10),
        detail: format!("max |F - (N+1)/(N+2)| = {worst:.2e}, tol 1e-10"),
    }
}

fn c2_scaled_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for m in 1..=4 {
            for _ in 0..50 {
                let psi = haar_pure(&mut rng);
                let out = complement_output(&apply_unot(&psi, n, m).unwrap());
                let s = n as f64 / (n as f64 + 2.0);
                let target = ScaledStateForm::new(psi.complement(), s).unwrap().density();
                worst = worst.max(2.0 * out.trace_distance(&target));
            }
        }
    }
    Outcome {
        passed: within(worst, 1e-10),
        detail: format!("max trace norm to s_N sigma_perp + (1-s_N)/2 = {worst:.2e}, tol 1e-10"),
    }
}

fn c3_clone_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for m in 1..=4 {
            let (nf, mf) = (n as f64, m as f64);
            let s = nf / (nf + 2.0) + 2.0 * nf / ((nf + mf) * (nf + 2.0));
            for _ in 0..50 {
                let psi = haar_pure(&mut rng);
                let out = clone_output(&apply_unot(&psi, n, m).unwrap());
                let target = ScaledStateForm::new(psi, s).unwrap().density();
                worst = worst.max(2.0 * out.trace_distance(&target));
            }
        }
    }
    let psi = PureQubit::from_angles(1.0, 2.0);
    let f11 = qubit::fidelity(&clone_output(&apply_unot(&psi, 1, 1).unwrap()), &psi.density()).unwrap();
    let dev11 = (f11 - 5.0 / 6.0).abs();
    Outcome {
        passed: within(worst, 1e-10) && within(dev11, 1e-10),
        detail: format!("max trace norm to clone scaled form = {worst:.2e}; F(1,1) = {f11:.12}, tol 1e-10"),
    }
}

fn c4_measurement_coincidence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for _ in 0..20 {
            let psi = haar_pure(&mut rng);
            let est = classical_unot_analytic(&psi, n).unwrap().out;
            let gate = complement_output(&apply_unot(&psi, n, 1).unwrap());
            worst = worst.max(est.max_deviation(&gate));
        }
    }
    let mut sigmas = Vec::new();
    for n in 1..=4 {
        let psi = haar_pure(&mut rng);
        let mc = classical_unot_montecarlo(&psi, n, 1_000_000, 4000 + n as u64).unwrap();
        sigmas.push((mc.delta - 1.0 / (n as f64 + 2.0)).abs() / mc.stderr);
    }
    let zmax = sigmas.iter().cloned().fold(0.0, f64::max);
    Outcome {
        passed: within(worst, 1e-10) && zmax <= 4.0,
        detail: format!("analytic vs gate {worst:.2e} (tol 1e-10); Monte Carlo 1e6 samples, max {zmax:.2} sigma (tol 4)"),
    }
}

fn c5_extremal_values() -> Outcome {
    // As stated: Delta(T_{N/2-1/2}) = 1/(N+2) and Delta(T_{N/2+1/2}) = 1.
    let mut worst: f64 = 0.0;
    let mut measured = Vec::new();
    for n in 1..=5 {
        let minus = delta_of_channel(&ExtremalChannel::new(n, HalfInt::spin_below(n)).unwrap(), 200, n as u64).unwrap();
        let plus = delta_of_channel(&ExtremalChannel::new(n, HalfInt::spin_above(n)).unwrap(), 200, n as u64).unwrap();
        worst = worst
            .max((minus.delta - 1.0 / (n as f64 + 2.0)).abs())
            .max((plus.delta - 1.0).abs());
        measured.push(format!("N={n}: {:.6}/{:.6}", minus.delta, plus.delta));
    }
    Outcome {
        passed: within(worst, 1e-10),
        detail: format!(
            "measured Delta(j=N/2-1/2)/Delta(j=N/2+1/2) {}; max deviation from stated labels {worst:.3}, tol 1e-10",
            measured.join(", ")
        ),
    }
}

fn c6_isometry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for m in 1..=4 {
            for _ in 0..50 {
                let (psi, phi) = (haar_pure(&mut rng), haar_pure(&mut rng));
                let a = apply_unot(&psi, n, m).unwrap();
                let b = apply_unot(&phi, n, m).unwrap();
                worst = worst.max((a.inner(&b).unwrap() - psi.inner(&phi).powu(n as u32)).norm());
            }
        }
    }
    Outcome {
        passed: within(worst, 1e-10),
        detail: format!("max |<U Psi, U Phi> - <Psi,Phi>^N| = {worst:.2e}, tol 1e-10"),
    }
}

fn c7_full_tensor() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    let mut dense = 0;
    for n in 1..=10 {
        for m in 1..=5 {
            if n + 2 * m > 12 {
                continue;
            }
            cases += 1;
            let gate = gate_coefficients(n, m).unwrap();
            for _ in 0..3 {
                let psi = haar_pure(&mut rng);
                let joint = unot_core::gate::apply_unot_with(&psi, &gate);
                let full = simulate_full(&psi, &gate).unwrap();
                let (c, ab) = (complement_output(&joint), clone_output(&joint));
                for s in &full.c_singles {
                    worst = worst.max(s.max_deviation(&c));
                }
                for s in &full.ab_singles {
                    worst = worst.max(s.max_deviation(&ab));
                }
                if let Some(p) = &full.c_pair {
                    worst = worst.max(p.max_deviation(&complement_pair(&joint).unwrap()));
                }
                worst = worst.max(full.input_residual).max((full.output_norm - 1.0).abs());
            }
            if n + 2 * m <= COMPLETION_MAX_QUBITS {
                dense += 1;
                let u = UnotIsometry::new(&gate).unwrap().unitary_completion().unwrap();
                let dim = u.nrows();
                worst = worst.max(max_abs(&(u.adjoint() * &u - unot_core::linalg::identity(dim))));
                let psi = haar_pure(&mut rng);
                let input = qubit::product_vector(&psi, n).kronecker(&tensor::basis_vector(2 * m, 0));
                let joint = unot_core::gate::apply_unot_with(&psi, &gate);
                worst = worst.max(max_abs(&(&u * input - joint.embed().unwrap())));
            }
        }
    }
    Outcome {
        passed: within(worst, 1e-10),
        detail: format!(
            "{cases} (N,M) with N+2M <= 12, dense unitary for {dense} of them; max deviation {worst:.2e}, tol 1e-10"
        ),
    }
}

fn c8_separability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut min_eig = f64::INFINITY;
    for (n, m) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        for _ in 0..20 {
            let joint = apply_unot(&haar_pure(&mut rng), n, m).unwrap();
            min_eig = min_eig.min(check_pairwise_separability(&joint).unwrap().min_pt_eigenvalue);
        }
    }
    Outcome {
        passed: min_eig >= -1e-10,
        detail: format!("min partial-transpose eigenvalue {min_eig:.3e}, bound -1e-10"),
    }
}

fn c9_real_case() -> Outcome {
    let d1 = (real_estimation_fidelity(1).unwrap() - 0.75).abs();
    let d2 = (real_estimation_fidelity(2).unwrap() - (0.5 + 2f64.sqrt() / 4.0)).abs();
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let exact = (0..100).all(|_| {
        let psi = RealQubit::from_angle(rand::Rng::random_range(&mut rng, 0.0..std::f64::consts::TAU));
        real_not_fidelity(&psi) == 1.0 && psi.inner(&perfect_real_not(&psi)) == 0.0
    });
    let seq: Vec<f64> = (1..=30).map(|n| real_estimation_fidelity(n).unwrap()).collect();
    let monotone = seq.windows(2).all(|w| w[0] < w[1]);
    Outcome {
        passed: within(d1, 1e-12) && within(d2, 1e-12) && exact && monotone,
        detail: format!("|F1 - 3/4| = {d1:.1e}, |F2 - (1/2+sqrt2/4)| = {d2:.1e}; exact NOT {exact}; increasing N=1..30 {monotone}"),
    }
}

fn c10_twirl_dominance() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for n in 1..=2 {
        for k in 0..10u64 {
            let seed = 1000 * n as u64 + k;
            let ch = StinespringChannel::random(n, n + 1, seed).unwrap();
            let raw = delta_of_channel(&ch, 200, seed).unwrap().delta;
            let tw = twirl_channel(&ch, 1000, seed).unwrap();
            let d = delta_of_channel(&tw, 200, seed).unwrap();
            let (_, se) = tw.fidelity_stats(&d.argmax).unwrap();
            worst = worst.max((d.delta - raw) / se);
        }
    }
    Outcome {
        passed: worst <= 3.0,
        detail: format!("max (Delta(twirl T) - Delta(T))/sigma = {worst:.2} over 20 channels, bound 3"),
    }
}

fn c11_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("unot-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| {
        let path = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_unot"))
            .args(["sweep", "--n-max", "3", "--m-max", "3", "--samples", "20000", "--seed", "11", "--format", "csv", "--out"])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(path).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    std::fs::remove_dir_all(&dir).ok();
    Outcome {
        passed: !a.is_empty() && a == b,
        detail: format!("two sweeps, {} bytes each, identical {}", a.len(), a == b),
    }
}

/// Name, runtime limit in seconds, check.
type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("U-NOT fidelity law", Some(30), c1_fidelity_law),
        ("scaled-form law", None, c2_scaled_form),
        ("clone law", None, c3_clone_law),
        ("measurement-based coincidence", Some(60), c4_measurement_coincidence),
        ("extremal-channel values", Some(10), c5_extremal_values),
        ("isometry property", None, c6_isometry),
        ("structured vs full-tensor oracle", None, c7_full_tensor),
        ("pairwise separability", None, c8_separability),
        ("real-case gap", None, c9_real_case),
        ("twirl dominance", None, c10_twirl_dominance),
        ("determinism", None, c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let out = timed(limit.map(Duration::from_secs), f);
        if !out.passed {
            failed += 1;
        }
        println!("criterion {:>2} {} {}: {}", i + 1, if out.passed { "PASS" } else { "FAIL" }, name, out.detail);
    }
    println!("acceptance: {} passed, {} failed", 11 - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
