//! Invariant checks behind `unot verify`.

use std::fmt;
use std::time::Instant;

use anyhow::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unot_core::completion::{simulate_full, UnotIsometry};
use unot_core::estimation::{classical_channel, classical_unot_analytic, classical_unot_montecarlo};
use unot_core::gate::{
    apply_unot_with, clone_output, clone_scaling_exact, complement_output, complement_pair, expected_clone,
    expected_complement, output_report, ratio_to_f64, GateCoefficients,
};
use unot_core::haar::haar_pure;
use unot_core::linalg::max_abs;
use unot_core::dicke::SymDensity;
use unot_core::optimality::{
    build_intertwiner, delta_of_channel, twirl_channel, Channel, ExtremalChannel, HalfInt, StinespringChannel,
};
use unot_core::qubit::{self, is_ppt};
use unot_core::restricted::{real_estimation_fidelity, real_not_fidelity, RealQubit};
use unot_core::tensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    /// The law being checked, in words.
    pub law: String,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<26} deviation {:.3e} (tol {:.1e})  {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.deviation,
            self.tolerance,
            self.law
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub level: Level,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} of {} checks passed in {:.1} s",
            self.checks.len() - failed,
            self.checks.len(),
            self.seconds
        )
    }
}

/// Options for [`verify`]. `perturb_gamma` adds a constant to `gamma_1`
/// of every gate, to exercise the failure path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub level: Level,
    pub seed: u64,
    pub perturb_gamma: Option<f64>,
}

struct Limits {
    max_nm: usize,
    full_tensor_qubits: usize,
    mc_samples: usize,
    probes: usize,
}

fn max_over<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    // NaN propagates as a failure
    it.into_iter().fold(0.0, |a: f64, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
}

pub fn verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let lim = match opts.level {
        Level::Quick => Limits {
            max_nm: 3,
            full_tensor_qubits: 8,
            mc_samples: 100_000,
            probes: 10,
        },
        Level::Full => Limits {
            max_nm: 4,
            full_tensor_qubits: 12,
            mc_samples: 1_000_000,
            probes: 50,
        },
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let gate = |n: usize, m: usize| -> Result<GateCoefficients> {
        let g = GateCoefficients::new(n, m)?;
        Ok(match opts.perturb_gamma {
            Some(d) => g.perturbed(1, d),
            None => g,
        })
    };
    let pairs: Vec<(usize, usize)> = (1..=lim.max_nm).flat_map(|n| (1..=lim.max_nm).map(move |m| (n, m))).collect();
    let mut checks = Vec::new();

    checks.push(Check {
        name: "gamma-normalization",
        law: "sum_j gamma_j^2 = 1".into(),
        deviation: max_over(pairs.iter().map(|&(n, m)| gate(n, m).map(|g| g.normalization_defect()).unwrap_or(f64::NAN))),
        tolerance: 1e-12,
    });

    let mut fid = Vec::new();
    let mut scaled = Vec::new();
    let mut clone = Vec::new();
    let mut iso = Vec::new();
    let mut coincide = Vec::new();
    let mut ppt: Vec<f64> = Vec::new();
    for &(n, m) in &pairs {
        let g = gate(n, m)?;
        let nf = n as f64;
        for _ in 0..lim.probes {
            let psi = haar_pure(&mut rng);
            let phi = haar_pure(&mut rng);
            let a = apply_unot_with(&psi, &g);
            let b = apply_unot_with(&phi, &g);
            let rep = output_report(&a);
            fid.push((rep.fidelity_not - (nf + 1.0) / (nf + 2.0)).abs());
            scaled.push(rep.c_single.trace_distance(&expected_complement(&psi, n)));
            clone.push(
                (rep.scaling_clone - ratio_to_f64(clone_scaling_exact(n, m)))
                    .abs()
                    .max(rep.ab_single.trace_distance(&expected_clone(&psi, n, m))),
            );
            iso.push((a.inner(&b)? - psi.inner(&phi).powu(n as u32)).norm());
            if m == 1 {
                coincide.push(complement_output(&a).max_deviation(&classical_channel(&SymDensity::product(&psi, n))));
            }
            if m >= 2 {
                let (_, min) = is_ppt(&complement_pair(&a)?)?;
                ppt.push((-min).max(0.0));
            }
        }
    }
    checks.push(Check {
        name: "complement-fidelity",
        law: "complement fidelity equals (N+1)/(N+2) for every input".into(),
        deviation: max_over(fid),
        tolerance: 1e-10,
    });
    checks.push(Check {
        name: "complement-scaled-form",
        law: "complement output is s_N sigma_perp + (1-s_N)/2, s_N = N/(N+2), trace norm".into(),
        deviation: max_over(scaled),
        tolerance: 1e-10,
    });
    checks.push(Check {
        name: "clone-scaling",
        law: "clone output scaling N/(N+2) + 2N/((N+M)(N+2))".into(),
        deviation: max_over(clone),
        tolerance: 1e-10,
    });
    checks.push(Check {
        name: "isometry",
        law: "<U(Psi^N X), U(Phi^N X)> = <Psi,Phi>^N".into(),
        deviation: max_over(iso),
        tolerance: 1e-10,
    });
    checks.push(Check {
        name: "estimation-coincidence",
        law: "estimate-and-prepare output equals the gate's complement output".into(),
        deviation: max_over(coincide),
        tolerance: 1e-10,
    });
    checks.push(Check {
        name: "pairwise-separability",
        law: "two-qubit complement marginals have positive partial transpose".into(),
        deviation: max_over(ppt),
        tolerance: 1e-10,
    });

    // Extremal channels and intertwiners.
    let mut ext = Vec::new();
    let mut cg = Vec::new();
    for n in 1..=5 {
        let probe = haar_pure(&mut rng);
        let below = ExtremalChannel::new(n, HalfInt::spin_below(n))?;
        let above = ExtremalChannel::new(n, HalfInt::spin_above(n))?;
        ext.push((below.fidelity_with_input(&probe)? - 1.0).abs());
        ext.push((above.fidelity_with_input(&probe)? - 1.0 / (n as f64 + 2.0)).abs());
        for j in [HalfInt::spin_below(n), HalfInt::spin_above(n)] {
            let v = build_intertwiner(n, j)?;
            cg.push(v.isometry_defect());
            for _ in 0..5 {
                cg.push(v.intertwining_defect(&unot_core::haar::haar_su2(&mut rng)));
            }
        }
    }
    checks.push(Check {
        name: "extremal-channels",
        law: "Delta(T_{N/2-1/2}) = 1 (keeps a copy), Delta(T_{N/2+1/2}) = 1/(N+2)".into(),
        deviation: max_over(ext),
        tolerance: 1e-10,
    });
    checks.push(Check {
        name: "cg-intertwiner",
        law: "V isometric and V D_{N/2}(U) = (U (x) D_j(U)) V".into(),
        deviation: max_over(cg),
        tolerance: 1e-10,
    });

    // Full-tensor cross-check.
    let mut ft = Vec::new();
    for n in 1..=lim.full_tensor_qubits {
        for m in 1..=lim.full_tensor_qubits {
            if n + 2 * m > lim.full_tensor_qubits {
                continue;
            }
            let g = gate(n, m)?;
            let psi = haar_pure(&mut rng);
            let joint = apply_unot_with(&psi, &g);
            let full = simulate_full(&psi, &g)?;
            let (c, ab) = (complement_output(&joint), clone_output(&joint));
            ft.extend(full.c_singles.iter().map(|s| s.max_deviation(&c)));
            ft.extend(full.ab_singles.iter().map(|s| s.max_deviation(&ab)));
            if let Some(p) = &full.c_pair {
                ft.push(p.max_deviation(&complement_pair(&joint)?));
            }
            if n + 2 * m <= unot_core::completion::COMPLETION_MAX_QUBITS {
                let u = UnotIsometry::new(&g)?.unitary_completion()?;
                let input = qubit::product_vector(&psi, n).kronecker(&tensor::basis_vector(2 * m, 0));
                ft.push(max_abs(&(&u * input - joint.embed()?)));
            }
        }
    }
    checks.push(Check {
        name: "full-tensor",
        law: format!("structured outputs match the full-tensor simulation, N+2M <= {}", lim.full_tensor_qubits),
        deviation: max_over(ft),
        tolerance: 1e-10,
    });

    // Analytic and sampled estimation.
    let mut analytic = Vec::new();
    let mut sigmas: Vec<f64> = Vec::new();
    for n in 1..=4 {
        let psi = haar_pure(&mut rng);
        let a = classical_unot_analytic(&psi, n)?;
        analytic.push((a.delta - 1.0 / (n as f64 + 2.0)).abs());
        let mc = classical_unot_montecarlo(&psi, n, lim.mc_samples, opts.seed.wrapping_add(n as u64))?;
        sigmas.push((mc.delta - 1.0 / (n as f64 + 2.0)).abs() / mc.stderr);
    }
    checks.push(Check {
        name: "estimation-analytic",
        law: "estimation error Delta = 1/(N+2)".into(),
        deviation: max_over(analytic),
        tolerance: 1e-12,
    });
    checks.push(Check {
        name: "estimation-monte-carlo",
        law: format!("sampled Delta within 4 sigma of 1/(N+2), {} samples (deviation in sigma)", lim.mc_samples),
        deviation: max_over(sigmas),
        tolerance: 4.0,
    });

    // Real-amplitude case.
    let mut real = vec![
        (real_estimation_fidelity(1)? - 0.75).abs(),
        (real_estimation_fidelity(2)? - (0.5 + 2f64.sqrt() / 4.0)).abs(),
    ];
    for k in 0..100 {
        real.push((real_not_fidelity(&RealQubit::from_angle(0.0628 * k as f64)) - 1.0).abs());
    }
    let seq: Vec<f64> = (1..=30).map(real_estimation_fidelity).collect::<unot_core::Result<_>>()?;
    let monotone = seq.windows(2).all(|w| w[0] < w[1]) && seq.iter().all(|&f| f > 0.5 && f < 1.0);
    real.push(if monotone { 0.0 } else { 1.0 });
    checks.push(Check {
        name: "real-case",
        law: "exact NOT on real states; estimation fidelity 3/4, 1/2+sqrt2/4, increasing".into(),
        deviation: max_over(real),
        tolerance: 1e-12,
    });

    if opts.level == Level::Full {
        let mut worst = f64::NEG_INFINITY;
        for n in 1..=2 {
            for k in 0..10 {
                let seed = opts.seed.wrapping_mul(31).wrapping_add(100 * n as u64 + k);
                let ch = StinespringChannel::random(n, n + 1, seed)?;
                let raw = delta_of_channel(&ch, 200, seed)?.delta;
                let tw = twirl_channel(&ch, 1000, seed)?;
                let d = delta_of_channel(&tw, 50, seed)?;
                let (_, se) = tw.fidelity_stats(&d.argmax)?;
                worst = worst.max((d.delta - raw) / se.max(f64::MIN_POSITIVE));
            }
        }
        checks.push(Check {
            name: "twirl-dominance",
            law: "Delta(twirl T) <= Delta(T) + 3 sigma for random channels (excess in sigma)".into(),
            deviation: worst.max(0.0),
            tolerance: 3.0,
        });
    }

    Ok(VerifyReport {
        level: opts.level,
        checks,
        seconds: start.elapsed().as_secs_f64(),
    })
}
