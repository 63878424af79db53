//! Spin-1/2 reference implementation of forced-measurement teleportation.
//!
//! Three qubits: sites 1 and 2 hold the singlet Bell state, site 3 the state
//! to teleport. Bell measurements on (2,3) and (1,2) alternate until the
//! (2,3) outcome is the singlet; the state then sits on site 1 up to an
//! unobservable global sign. Every Bell outcome has probability 1/4, so the
//! attempt count is geometric with success probability 1/4.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng as _;

use super::{ForcedMeasurementRecord, OutcomeLabel, RecordMethod};
use crate::{Complex, Rng};

/// Basis order: `state[s1*4 + s2*2 + s3]` with spin-up = 0.
type State = [Complex; 8];

/// The four Bell vectors `|Φ_μ> = (I ⊗ σ_μ) |Φ_0>` with
/// `|Φ_0> = (|↑↓> - |↓↑>)/sqrt(2)`, as 4-vectors over `(s_a, s_b)`.
fn bell(mu: usize) -> [Complex; 4] {
    let h = 1.0 / 2.0f64.sqrt();
    let z = Complex64::new(0.0, 0.0);
    let r = |x: f64| Complex64::new(x * h, 0.0);
    let i = |x: f64| Complex64::new(0.0, x * h);
    match mu {
        // (|01> - |10>)/sqrt(2)
        0 => [z, r(1.0), r(-1.0), z],
        // I ⊗ σ_x: (|00> - |11>)/sqrt(2)
        1 => [r(1.0), z, z, r(-1.0)],
        // I ⊗ σ_y: (-i|00> - i|11>)/sqrt(2)
        2 => [i(-1.0), z, z, i(-1.0)],
        // I ⊗ σ_z: (-|01> - |10>)/sqrt(2)
        _ => [z, r(-1.0), r(-1.0), z],
    }
}

/// Indices of the joint basis grouped by the two measured sites: returns
/// `(i_joint, pair_index)` pairs for measuring sites `(a, b)` (1-based).
fn site_bits(a: usize, b: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..8usize).map(move |i| {
        let bits = [(i >> 2) & 1, (i >> 1) & 1, i & 1];
        (i, bits[a - 1] * 2 + bits[b - 1])
    })
}

fn project_bell(state: &State, a: usize, b: usize, mu: usize) -> (State, f64) {
    let phi = bell(mu);
    // amplitude over the unmeasured site for each of its two values.
    let mut overlap = [Complex64::new(0.0, 0.0); 2];
    let other = 6 - a - b;
    for (i, pair) in site_bits(a, b) {
        let bits = [(i >> 2) & 1, (i >> 1) & 1, i & 1];
        overlap[bits[other - 1]] += phi[pair].conj() * state[i];
    }
    let prob = overlap.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let mut out = [Complex64::new(0.0, 0.0); 8];
    if prob > 0.0 {
        let norm = prob.sqrt();
        for (i, pair) in site_bits(a, b) {
            let bits = [(i >> 2) & 1, (i >> 1) & 1, i & 1];
            out[i] = phi[pair] * overlap[bits[other - 1]] / norm;
        }
    }
    (out, prob)
}

/// Result of the spin-1/2 forced teleport.
#[derive(Clone, Debug)]
pub struct QubitTeleport {
    /// Final three-site state vector.
    pub state: State,
    /// Reduced density matrix of site 1, row-major 2x2.
    pub site1: [Complex; 4],
    pub record: ForcedMeasurementRecord,
}

/// Teleport `psi` from site 3 to site 1 by forced Bell measurements.
pub fn qubit_reference_forced_teleport(psi: [Complex; 2], rng: &mut Rng) -> QubitTeleport {
    // |Φ_0>_{12} ⊗ |ψ>_3.
    let phi0 = bell(0);
    let mut state: State = [Complex64::new(0.0, 0.0); 8];
    for s1 in 0..2 {
        for s2 in 0..2 {
            for s3 in 0..2 {
                state[s1 * 4 + s2 * 2 + s3] = phi0[s1 * 2 + s2] * psi[s3];
            }
        }
    }

    let mut outcomes: Vec<(OutcomeLabel, u8)> = Vec::new();
    let mut attempts = 0usize;
    loop {
        attempts += 1;
        // Bell measurement on (2,3).
        let mut probs = [0.0f64; 4];
        for (mu, p) in probs.iter_mut().enumerate() {
            *p = project_bell(&state, 2, 3, mu).1;
        }
        let mu = sample(&probs, rng);
        state = project_bell(&state, 2, 3, mu).0;
        outcomes.push((OutcomeLabel::Mu, mu as u8));
        if mu == 0 {
            break;
        }
        // Reset via (1,2); the outcome value is irrelevant.
        let mut probs = [0.0f64; 4];
        for (nu, p) in probs.iter_mut().enumerate() {
            *p = project_bell(&state, 1, 2, nu).1;
        }
        let nu = sample(&probs, rng);
        state = project_bell(&state, 1, 2, nu).0;
        outcomes.push((OutcomeLabel::Nu, nu as u8));
    }

    // Reduced density matrix of site 1.
    let mut site1 = [Complex64::new(0.0, 0.0); 4];
    for r in 0..2 {
        for c in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for rest in 0..4 {
                acc += state[r * 4 + rest] * state[c * 4 + rest].conj();
            }
            site1[r * 2 + c] = acc;
        }
    }

    QubitTeleport {
        state,
        site1,
        record: ForcedMeasurementRecord {
            method: RecordMethod::QubitReference,
            outcomes,
            attempts,
        },
    }
}

fn sample(probs: &[f64], rng: &mut Rng) -> usize {
    let total: f64 = probs.iter().sum();
    let u = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc && p > 0.0 {
            return i;
        }
    }
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng_for_stream;

    #[test]
    fn bell_states_orthonormal() {
        for a in 0..4 {
            for b in 0..4 {
                let x = bell(a);
                let y = bell(b);
                let dot: Complex = x.iter().zip(y.iter()).map(|(p, q)| p.conj() * q).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - Complex64::new(want, 0.0)).norm() < 1e-14, "{a} {b}");
            }
        }
    }

    #[test]
    fn first_round_probabilities_are_quarter() {
        let psi = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let phi0 = bell(0);
        let mut state: State = [Complex64::new(0.0, 0.0); 8];
        for s1 in 0..2 {
            for s2 in 0..2 {
                for s3 in 0..2 {
                    state[s1 * 4 + s2 * 2 + s3] = phi0[s1 * 2 + s2] * psi[s3];
                }
            }
        }
        for mu in 0..4 {
            let (_, p) = project_bell(&state, 2, 3, mu);
            assert!((p - 0.25).abs() < 1e-14, "mu={mu}: {p}");
        }
    }

    #[test]
    fn teleports_exactly() {
        let mut rng = rng_for_stream(42, 0);
        for psi in [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)],
            [Complex64::new(0.5, 0.5), Complex64::new(0.5, -0.5)],
        ] {
            for _ in 0..20 {
                let out = qubit_reference_forced_teleport(psi, &mut rng);
                assert!(out.record.check_invariants());
                for r in 0..2 {
                    for c in 0..2 {
                        let want = psi[r] * psi[c].conj();
                        assert!(
                            (out.site1[r * 2 + c] - want).norm() < 1e-12,
                            "density matrix mismatch"
                        );
                    }
                }
            }
        }
    }
}
