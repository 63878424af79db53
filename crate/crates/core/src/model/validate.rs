//! Identity checks for anyon-model tables.
//!
//! Only identities the tables must satisfy among themselves are checked
//! here; comparisons against external golden values live in the test
//! suites. Full pentagon/hexagon coherence is deliberately not verified.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] use num_traits::Float;

use super::{AnyonModel, Charge};

/// One identity with its maximum observed deviation.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub max_deviation: f64,
}

/// Outcome of [`AnyonModel::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub tolerance: f64,
    pub checks: Vec<IdentityCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.max_deviation < self.tolerance)
    }

    pub fn summary(&self) -> String {
        let worst = self
            .checks
            .iter()
            .max_by(|a, b| a.max_deviation.total_cmp(&b.max_deviation));
        match worst {
            Some(c) if !self.passed() => {
                format!("FAIL worst check {} deviates {:.3e}", c.name, c.max_deviation)
            }
            Some(c) => format!(
                "pass ({} checks, worst {} at {:.3e})",
                self.checks.len(),
                c.name,
                c.max_deviation
            ),
            None => String::from("no checks run"),
        }
    }
}

/// Largest eigenvalue of the non-negative fusion matrix `[N_a]_b^c` by power
/// iteration.
fn fusion_eigenvalue(model: &AnyonModel, a: Charge) -> f64 {
    let n = model.charge_count();
    let mut v = vec![1.0f64; n];
    let mut lambda = 0.0;
    for _ in 0..500 {
        let mut w = vec![0.0f64; n];
        for (b, wb) in w.iter_mut().enumerate() {
            for c in 0..n {
                if model.n_fuse(a, Charge(b as u8), Charge(c as u8)) {
                    *wb += v[c];
                }
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        lambda = norm;
        for (x, y) in v.iter_mut().zip(w.iter()) {
            *x = y / norm;
        }
    }
    lambda
}

pub(super) fn run(model: &AnyonModel, tol: f64) -> ValidationReport {
    let n = model.charge_count();
    let charges: Vec<Charge> = model.charges().collect();
    let mut checks = Vec::new();
    let mut push = |name: &'static str, dev: f64| checks.push(IdentityCheck { name, max_deviation: dev });

    // Fusion algebra: commutativity and associativity.
    let mut dev = 0.0f64;
    for &a in &charges {
        for &b in &charges {
            for &c in &charges {
                let lhs = model.n_fuse(a, b, c) as u8;
                let rhs = model.n_fuse(b, a, c) as u8;
                dev = dev.max((lhs as f64 - rhs as f64).abs());
            }
        }
    }
    push("fusion_commutative", dev);

    let mut dev = 0.0f64;
    for &a in &charges {
        for &b in &charges {
            for &c in &charges {
                for &d in &charges {
                    let lhs: u32 = charges
                        .iter()
                        .filter(|&&e| model.n_fuse(a, b, e) && model.n_fuse(e, c, d))
                        .count() as u32;
                    let rhs: u32 = charges
                        .iter()
                        .filter(|&&f| model.n_fuse(b, c, f) && model.n_fuse(a, f, d))
                        .count() as u32;
                    dev = dev.max((lhs as f64 - rhs as f64).abs());
                }
            }
        }
    }
    push("fusion_associative", dev);

    // Vacuum and dual structure.
    let mut dev = 0.0f64;
    for &a in &charges {
        for &c in &charges {
            let want = (a == c) as u8 as f64;
            dev = dev.max((model.n_fuse(a, Charge::VACUUM, c) as u8 as f64 - want).abs());
            dev = dev.max((model.n_fuse(Charge::VACUUM, a, c) as u8 as f64 - want).abs());
        }
        for &b in &charges {
            let want = (b == model.dual(a)) as u8 as f64;
            dev = dev.max((model.n_fuse(a, b, Charge::VACUUM) as u8 as f64 - want).abs());
        }
        if model.dual(model.dual(a)) != a {
            dev = dev.max(1.0);
        }
    }
    push("vacuum_and_dual", dev);

    // d_a = largest eigenvalue of N_a; D = sqrt(sum d^2).
    let mut dev = 0.0f64;
    for &a in &charges {
        dev = dev.max((model.qdim(a) - fusion_eigenvalue(model, a)).abs());
    }
    let d2: f64 = charges.iter().map(|&a| model.qdim(a) * model.qdim(a)).sum();
    dev = dev.max((model.total_qdim() - d2.sqrt()).abs());
    push("qdim_eigenvalue", dev);

    // Dimension consistency: sum_c N_{a abar}^c d_c = d_a^2.
    let mut dev = 0.0f64;
    for &a in &charges {
        let s: f64 = model
            .fuse(a, model.dual(a))
            .iter()
            .map(|&c| model.qdim(c))
            .sum();
        dev = dev.max((s - model.qdim(a) * model.qdim(a)).abs());
    }
    push("qdim_consistency", dev);

    // Twists are phases, trivial on the vacuum.
    let mut dev = 0.0f64;
    for &a in &charges {
        dev = dev.max((model.twist(a).norm() - 1.0).abs());
    }
    dev = dev.max((model.twist(Charge::VACUUM) - Complex64::new(1.0, 0.0)).norm());
    push("twist_unit", dev);

    // θ_a = sum_c (d_c / d_a) R_c^{aa}.
    let mut dev = 0.0f64;
    for &a in &charges {
        let mut theta = Complex64::new(0.0, 0.0);
        for &c in model.fuse(a, a) {
            theta += model.r_symbol(a, a, c) * (model.qdim(c) / model.qdim(a));
        }
        dev = dev.max((theta - model.twist(a)).norm());
    }
    push("theta_from_r", dev);

    // Every F-block is unitary over its admissible intermediate charges.
    let mut dev = 0.0f64;
    for &a in &charges {
        for &b in &charges {
            for &c in &charges {
                for &d in &charges {
                    let block = model.f_block(a, b, c, d);
                    let (rows, cols) = (block.es.len(), block.fs.len());
                    if rows == 0 && cols == 0 {
                        continue;
                    }
                    dev = dev.max((rows as f64 - cols as f64).abs());
                    for i in 0..rows {
                        for j in 0..rows {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for l in 0..cols {
                                acc += block.mat[i * cols + l] * block.mat[j * cols + l].conj();
                            }
                            let want = if i == j { 1.0 } else { 0.0 };
                            dev = dev.max((acc - Complex64::new(want, 0.0)).norm());
                        }
                    }
                }
            }
        }
    }
    push("f_unitarity", dev);

    // Eq. (idF): [F_{ab}^{ab}]_{0c} = sqrt(d_c / (d_a d_b)).
    let mut dev = 0.0f64;
    for &a in &charges {
        for &b in &charges {
            for &c in model.fuse(a, b) {
                let got = model.f_bend(a, b, a, b, Charge::VACUUM, c);
                let want = (model.qdim(c) / (model.qdim(a) * model.qdim(b))).sqrt();
                dev = dev.max((got - Complex64::new(want, 0.0)).norm());
            }
        }
    }
    push("idf_vacuum_row", dev);

    // The bent F-blocks are unitary as well (the F-type relation between the
    // two kinds of F-symbols composed with the d-factors).
    let mut dev = 0.0f64;
    for &a in &charges {
        for &b in &charges {
            for &c in &charges {
                for &d in &charges {
                    let es: Vec<Charge> = charges
                        .iter()
                        .copied()
                        .filter(|&e| model.n_fuse(c, e, a) && model.n_fuse(e, b, d))
                        .collect();
                    let fs: Vec<Charge> = charges
                        .iter()
                        .copied()
                        .filter(|&f| model.n_fuse(a, b, f) && model.n_fuse(c, d, f))
                        .collect();
                    if es.is_empty() && fs.is_empty() {
                        continue;
                    }
                    dev = dev.max((es.len() as f64 - fs.len() as f64).abs());
                    for (i, &e1) in es.iter().enumerate() {
                        for (j, &e2) in es.iter().enumerate() {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for &f in &fs {
                                acc += model.f_bend(a, b, c, d, e1, f)
                                    * model.f_bend(a, b, c, d, e2, f).conj();
                            }
                            let want = if i == j { 1.0 } else { 0.0 };
                            dev = dev.max((acc - Complex64::new(want, 0.0)).norm());
                        }
                    }
                }
            }
        }
    }
    push("f_bend_unitarity", dev);

    // S_ab = D^{-1} sum_c N_ab^c (θ_c / (θ_a θ_b)) d_c.
    let mut dev = 0.0f64;
    for &a in &charges {
        for &b in &charges {
            let mut s = Complex64::new(0.0, 0.0);
            for &c in model.fuse(a, b) {
                s += model.twist(c) / (model.twist(a) * model.twist(b)) * model.qdim(c);
            }
            s /= model.total_qdim();
            dev = dev.max((s - model.s_matrix(a, b)).norm());
        }
    }
    push("s_from_n_theta_d", dev);

    // M_ab two ways: S_ab S_00 / (S_0a S_0b) versus the quantum-trace form
    // sum_c N_ab^c (θ_c / (θ_a θ_b)) d_c / (d_a d_b).
    let mut dev = 0.0f64;
    for &a in &charges {
        for &b in &charges {
            let via_s = model.s_matrix(a, b) * model.s_matrix(Charge::VACUUM, Charge::VACUUM)
                / (model.s_matrix(Charge::VACUUM, a) * model.s_matrix(Charge::VACUUM, b));
            let mut via_t = Complex64::new(0.0, 0.0);
            for &c in model.fuse(a, b) {
                via_t += model.twist(c) / (model.twist(a) * model.twist(b)) * model.qdim(c);
            }
            via_t /= model.qdim(a) * model.qdim(b);
            dev = dev.max((via_s - model.monodromy(a, b)).norm());
            dev = dev.max((via_t - model.monodromy(a, b)).norm());
        }
    }
    push("monodromy_from_s", dev);

    // Pentagon-derived modulus identity:
    // |[F_a^{e fbar a}]_{xbar a}| = sqrt(d_x / d_f) |[F_a^{x e a}]_{f a}|.
    let mut dev = 0.0f64;
    for &a in &charges {
        for &e in &charges {
            for &f in &charges {
                for &x in &charges {
                    let lhs = model
                        .f_symbol(e, model.dual(f), a, a, model.dual(x), a)
                        .norm();
                    let rhs = (model.qdim(x) / model.qdim(f)).sqrt()
                        * model.f_symbol(x, e, a, a, f, a).norm();
                    dev = dev.max((lhs - rhs).abs());
                }
            }
        }
    }
    push("pentagon_modulus", dev);

    let _ = n;
    ValidationReport { tolerance: tol, checks }
}
