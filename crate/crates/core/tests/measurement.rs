//! Projective and interferometric measurement semantics.

use std::sync::Arc;

use anyonforge_core::fusion::{random_density_matrix, random_pure_state, AnyonicDensityMatrix};
use anyonforge_core::measure::{
    charge_classes, decohere, entanglement_weight, interferometry, interferometry_forced, project,
    project_forced, projector_probabilities, route_target, unroute, MeasurementTarget, RoutingTag,
};
use anyonforge_core::model::{build_model, Charge, ModelSpec, ProbeSpec};
use anyonforge_core::{rng_for_stream, Complex};

const PHI: f64 = 1.618033988749894848;
const I: Charge = Charge(0);
const S: Charge = Charge(1);
const P: Charge = Charge(2);

fn ising() -> Arc<anyonforge_core::AnyonModel> {
    Arc::new(build_model(ModelSpec::Ising).unwrap())
}

fn fib() -> Arc<anyonforge_core::AnyonModel> {
    Arc::new(build_model(ModelSpec::Fib).unwrap())
}

fn su2k(k: u32) -> Arc<anyonforge_core::AnyonModel> {
    Arc::new(build_model(ModelSpec::Su2k { k }).unwrap())
}

fn qubit0(model: &Arc<anyonforge_core::AnyonModel>) -> AnyonicDensityMatrix {
    // Pairs (1,2) and (3,4) in the vacuum channel.
    let v = AnyonicDensityMatrix::vacuum_pair(model.clone(), S).unwrap();
    v.tensor(&v).unwrap()
}

#[test]
fn project_vacuum_pair_is_trivial() {
    let m = ising();
    let v = AnyonicDensityMatrix::vacuum_pair(m, S).unwrap();
    let mut rng = rng_for_stream(1, 0);
    let (c, post, p) = project(&v, &MeasurementTarget::new(vec![1, 2]), &mut rng).unwrap();
    assert_eq!(c, I);
    assert!((p - 1.0).abs() < 1e-12);
    assert!(v.trace_distance(&post).unwrap() < 1e-12);
}

#[test]
fn qubit_pair_23_probabilities() {
    // Ising |0>: measuring (2,3) gives I and ψ with probability 1/2 each.
    let q = qubit0(&ising());
    let probs = projector_probabilities(&q, &MeasurementTarget::new(vec![2, 3])).unwrap();
    assert_eq!(probs.len(), 2);
    assert!((probs[0].1 - 0.5).abs() < 1e-12);
    assert!((probs[1].1 - 0.5).abs() < 1e-12);

    // Fib |0>: Prob(I) = φ^{-2}, Prob(ε) = φ^{-1}.
    let q = qubit0(&fib());
    let probs = projector_probabilities(&q, &MeasurementTarget::new(vec![2, 3])).unwrap();
    assert!((probs[0].1 - 1.0 / (PHI * PHI)).abs() < 1e-12);
    assert!((probs[1].1 - 1.0 / PHI).abs() < 1e-12);
}

#[test]
fn unentangled_pair_probabilities_follow_qdim() {
    // Across a tensor boundary: Prob(f) = N_{a abar}^f d_f / d_a^2.
    let m = ising();
    let v = AnyonicDensityMatrix::vacuum_pair(m.clone(), S).unwrap();
    let rho = v.tensor(&v).unwrap();
    // Anyons 2 and 3 are unentangled (different pairs).
    let probs = projector_probabilities(&rho, &MeasurementTarget::new(vec![2, 3])).unwrap();
    for (c, p) in probs {
        let want = m.qdim(c) / (m.qdim(S) * m.qdim(S));
        assert!((p - want).abs() < 1e-12, "{c:?}");
    }
    let f = fib();
    let v = AnyonicDensityMatrix::vacuum_pair(f.clone(), S).unwrap();
    let rho = v.tensor(&v).unwrap();
    let probs = projector_probabilities(&rho, &MeasurementTarget::new(vec![2, 3])).unwrap();
    assert!((probs[0].1 - 1.0 / (PHI * PHI)).abs() < 1e-12);
    assert!((probs[1].1 - PHI / (PHI * PHI)).abs() < 1e-12);
}

#[test]
fn probabilities_sum_to_one_and_projection_idempotent() {
    let mut rng = rng_for_stream(5, 0);
    for model in [ising(), fib(), su2k(3)] {
        for trial in 0..20 {
            let rho = random_density_matrix(model.clone(), &[S, S, S, S], &mut rng).unwrap();
            for target in [vec![1, 2], vec![2, 3], vec![1, 2, 3], vec![2, 4]] {
                let t = MeasurementTarget::new(target.clone());
                let probs = projector_probabilities(&rho, &t).unwrap();
                let sum: f64 = probs.iter().map(|&(_, p)| p).sum();
                assert!((sum - 1.0).abs() < 1e-9, "{target:?} trial {trial}");

                let (c, post, _) = project(&rho, &t, &mut rng).unwrap();
                let (post2, p2) = project_forced(&post, &t, c).unwrap();
                assert!((p2 - 1.0).abs() < 1e-9);
                assert!(post.trace_distance(&post2).unwrap() < 1e-12);
                assert!((post.qtrace() - 1.0).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn law_of_total_probability() {
    // Forcing each outcome and recombining with its probability reproduces
    // the pre-measurement state's diagonal blocks with respect to the
    // measured charge: every observable probability of the same target is
    // unchanged, and the recombined mixture is a fixed point of the
    // measurement (it carries no cross-charge coherence to destroy).
    let mut rng = rng_for_stream(7, 0);
    for model in [ising(), fib()] {
        let rho = random_density_matrix(model.clone(), &[S, S, S, S], &mut rng).unwrap();
        let t = MeasurementTarget::new(vec![2, 3]);
        let probs = projector_probabilities(&rho, &t).unwrap();
        let recombine = |state: &AnyonicDensityMatrix| -> AnyonicDensityMatrix {
            let probs = projector_probabilities(state, &t).unwrap();
            let mut mix: Option<AnyonicDensityMatrix> = None;
            for &(c, p) in &probs {
                let (post, _) = project_forced(state, &t, c).unwrap();
                let scaled = scale(&post, p);
                mix = Some(match mix {
                    None => scaled,
                    Some(acc) => add(&acc, &scaled),
                });
            }
            mix.unwrap()
        };
        let mix = recombine(&rho);
        assert!((mix.qtrace() - 1.0).abs() < 1e-9);
        let probs_mix = projector_probabilities(&mix, &t).unwrap();
        assert_eq!(probs.len(), probs_mix.len());
        for (&(c1, p1), &(c2, p2)) in probs.iter().zip(probs_mix.iter()) {
            assert_eq!(c1, c2);
            assert!((p1 - p2).abs() < 1e-9);
        }
        // The pinched state is a fixed point, entrywise.
        let mix2 = recombine(&mix);
        assert!(mix.trace_distance(&mix2).unwrap() < 1e-9);
    }
}

fn scale(rho: &AnyonicDensityMatrix, s: f64) -> AnyonicDensityMatrix {
    let mut out = rho.clone();
    let basis = out.basis();
    let entries: Vec<(Vec<Charge>, Vec<Charge>, Complex)> = basis
        .iter()
        .enumerate()
        .flat_map(|(r, kc)| {
            basis.iter().enumerate().map(move |(c, bc)| {
                let mut ket = kc.intermediates.clone();
                ket.push(kc.overall);
                let mut bra = bc.intermediates.clone();
                bra.push(bc.overall);
                (r, c, ket, bra)
            })
        })
        .filter(|(_, _, k, b)| k.last() == b.last())
        .map(|(r, c, ket, bra)| {
            let _ = (r, c);
            let v = rho.coefficient(&ket, &bra) * s;
            (ket, bra, v)
        })
        .collect();
    out = AnyonicDensityMatrix::from_entries(rho.model().clone(), rho.leaves().to_vec(), &entries).unwrap();
    out
}

fn add(a: &AnyonicDensityMatrix, b: &AnyonicDensityMatrix) -> AnyonicDensityMatrix {
    let basis = a.basis();
    let entries: Vec<(Vec<Charge>, Vec<Charge>, Complex)> = basis
        .iter()
        .flat_map(|kc| {
            basis.iter().map(move |bc| {
                let mut ket = kc.intermediates.clone();
                ket.push(kc.overall);
                let mut bra = bc.intermediates.clone();
                bra.push(bc.overall);
                (ket, bra)
            })
        })
        .filter(|(k, b)| k.last() == b.last())
        .map(|(ket, bra)| {
            let v = a.coefficient(&ket, &bra) + b.coefficient(&ket, &bra);
            (ket, bra, v)
        })
        .collect();
    AnyonicDensityMatrix::from_entries(a.model().clone(), a.leaves().to_vec(), &entries).unwrap()
}

fn diag(rho: &AnyonicDensityMatrix, r: usize) -> Complex {
    let basis = rho.basis();
    let mut key = basis[r].intermediates.clone();
    key.push(basis[r].overall);
    rho.coefficient(&key, &key)
}

#[test]
fn charge_class_partitions() {
    let m = ising();
    let part = charge_classes(&m, &ProbeSpec::pure(S));
    assert_eq!(part.classes.len(), 3);
    assert!(part.fully_distinguishing());

    let f = fib();
    let part = charge_classes(&f, &ProbeSpec::pure(S));
    assert_eq!(part.classes.len(), 2);

    // A vacuum probe distinguishes nothing.
    let part = charge_classes(&m, &ProbeSpec::pure(I));
    assert_eq!(part.classes.len(), 1);
    assert_eq!(part.classes[0].len(), 3);
}

#[test]
fn decohere_vacuum_cut_is_identity() {
    // |0> has only e = 0 across the 2|3 cut (it is a product of pairs), so
    // the decoherence superoperator acts trivially there.
    let q = qubit0(&ising());
    let probe = ProbeSpec::pure(S);
    let (post, removed) = decohere(&q, 2, &probe).unwrap();
    assert!(removed < 1e-12);
    assert!(q.trace_distance(&post).unwrap() < 1e-12);
}

#[test]
fn decohere_pair_interior_gives_channel_mixture() {
    // Cutting through a vacuum pair (inside = anyon 1) removes the e = ψ
    // coherence and leaves the equal incoherent mixture of pair channels
    // weighted by d_c/d_a^2.
    let m = ising();
    let v = AnyonicDensityMatrix::vacuum_pair(m.clone(), S).unwrap();
    let probe = ProbeSpec::pure(S);
    let (post, removed) = decohere(&v, 1, &probe).unwrap();
    assert!((post.qtrace() - 1.0).abs() < 1e-12, "decoherence is trace-preserving");
    assert!(removed > 0.4);
    for (c, want) in [(I, 0.5), (P, 0.5)] {
        let got = post.coefficient(&[c], &[c]);
        assert!((got - Complex::new(want, 0.0)).norm() < 1e-12, "{c:?}");
    }
    // Idempotent.
    let (post2, removed2) = decohere(&post, 1, &probe).unwrap();
    assert!(removed2 < 1e-12);
    assert!(post.trace_distance(&post2).unwrap() < 1e-12);

    // Same for Fib: weights d_c/d_ε^2 = (φ^{-2}, φ^{-1}).
    let f = fib();
    let v = AnyonicDensityMatrix::vacuum_pair(f, S).unwrap();
    let (post, _) = decohere(&v, 1, &ProbeSpec::pure(S)).unwrap();
    assert!((post.coefficient(&[I], &[I]) - Complex::new(1.0 / (PHI * PHI), 0.0)).norm() < 1e-12);
    assert!((post.coefficient(&[S], &[S]) - Complex::new(1.0 / PHI, 0.0)).norm() < 1e-12);
}

#[test]
fn interferometry_equals_projection_for_abelian_outcomes() {
    // Measuring a σ pair interferometrically always yields an Abelian
    // charge, so the result must coincide with projective measurement.
    let m = ising();
    let probe = m.standard_probe();
    let mut rng = rng_for_stream(9, 0);
    for _ in 0..20 {
        let rho = random_density_matrix(m.clone(), &[S, S, S, S], &mut rng).unwrap();
        for target in [vec![1, 2], vec![2, 3], vec![3, 4]] {
            let t = MeasurementTarget::new(target);
            let probs = projector_probabilities(&rho, &t).unwrap();
            for &(c, _) in &probs {
                let (proj, _) = project_forced(&rho, &t, c).unwrap();
                let (out, intf) = interferometry_forced(&rho, &t, &probe, c).unwrap();
                assert_eq!(out.charge(), c);
                assert!(proj.trace_distance(&intf).unwrap() < 1e-9);
            }
        }
    }
}

#[test]
fn interferometry_class_probabilities_match_projective_sums() {
    let f = fib();
    let probe = f.standard_probe();
    let mut rng = rng_for_stream(13, 0);
    let rho = random_density_matrix(f.clone(), &[S, S, S, S], &mut rng).unwrap();
    let t = MeasurementTarget::new(vec![1, 2]);
    let probs = projector_probabilities(&rho, &t).unwrap();
    for &(c, p) in &probs {
        let (out, _) = interferometry_forced(&rho, &t, &probe, c).unwrap();
        assert!((out.probability - p).abs() < 1e-9);
    }
}

#[test]
fn interferometry_severs_exterior_entanglement() {
    // After measuring (1,2) of a fib state, only e = 0 survives across the
    // cut: the measured block factorizes from the rest.
    let f = fib();
    let probe = f.standard_probe();
    let mut rng = rng_for_stream(15, 0);
    for _ in 0..10 {
        let rho = random_pure_state(f.clone(), &[S, S, S, S], I, &mut rng).unwrap();
        let t = MeasurementTarget::new(vec![1, 2]);
        let (out, post) = interferometry(&rho, &t, &probe, &mut rng).unwrap();
        let w = entanglement_weight(&post, 1, 2, &probe).unwrap();
        assert!(w < 1e-10, "outcome {:?} left entanglement {w}", out.class);
        // Re-measuring yields the same charge with probability 1.
        let (out2, post2) = interferometry(&post, &t, &probe, &mut rng).unwrap();
        assert_eq!(out2.charge(), out.charge());
        assert!((out2.probability - 1.0).abs() < 1e-9);
        assert!(post.trace_distance(&post2).unwrap() < 1e-9);
    }
}

#[test]
fn full_range_interferometry_reads_overall_charge() {
    // Measuring every anyon of a definite-overall-charge state returns that
    // charge with probability 1.
    let f = fib();
    let probe = f.standard_probe();
    let mut rng = rng_for_stream(19, 0);
    for overall in [I, S] {
        let rho = random_pure_state(f.clone(), &[S, S, S], overall, &mut rng).unwrap();
        let t = MeasurementTarget::new(vec![1, 2, 3]);
        let (out, _) = interferometry(&rho, &t, &probe, &mut rng).unwrap();
        assert_eq!(out.charge(), overall);
        assert!((out.probability - 1.0).abs() < 1e-12);
    }
}

#[test]
fn routing_identity_for_adjacent_targets() {
    let m = ising();
    let mut rng = rng_for_stream(21, 0);
    let rho = random_density_matrix(m, &[S, S, S, S], &mut rng).unwrap();
    let (routed, recipe) = route_target(&rho, &MeasurementTarget::new(vec![2, 3])).unwrap();
    assert!(recipe.is_identity());
    assert!(rho.trace_distance(&routed).unwrap() < 1e-15);
}

#[test]
fn over_and_under_routing_differ_by_monodromy() {
    let m = ising();
    let mut rng = rng_for_stream(25, 0);
    let rho = random_density_matrix(m, &[S, S, S], &mut rng).unwrap();
    let t_over = MeasurementTarget::with_configuration(vec![1, 3], vec![RoutingTag::Over]);
    let t_under = MeasurementTarget::with_configuration(vec![1, 3], vec![RoutingTag::Under]);
    let (r_over, _) = route_target(&rho, &t_over).unwrap();
    let (r_under, _) = route_target(&rho, &t_under).unwrap();
    // over = cw braid at (2,3); under = ccw. They differ by the double
    // braid, i.e. the monodromy conjugation of the bypassed anyon.
    let mono = r_under.apply_braid(2, false).unwrap().apply_braid(2, false).unwrap();
    assert!(r_over.trace_distance(&mono).unwrap() < 1e-12);
}

#[test]
fn routed_projection_round_trip() {
    // Route, project, un-route on target (2,4) of the qubit state |0>.
    // Each outcome has probability d_c / d_σ^2 = 1/2, the measurement is
    // idempotent, and charge conservation fixes the complementary charge of
    // {1,3}: in the topologically compatible (mirror) configuration the
    // outcomes agree exactly, while measuring {1,3} in the same-handed
    // configuration reads the monodromy-conjugated charge (ψ-twisted for
    // Ising σ anyons).
    let q = qubit0(&ising());
    let t24 = MeasurementTarget::new(vec![2, 4]);
    let probs = projector_probabilities(&q, &t24).unwrap();
    assert_eq!(probs.len(), 2);
    assert!((probs[0].1 - 0.5).abs() < 1e-12);
    assert!((probs[1].1 - 0.5).abs() < 1e-12);
    for &(c, _) in &probs {
        let (post, _) = project_forced(&q, &t24, c).unwrap();
        assert!((post.qtrace() - 1.0).abs() < 1e-12);
        // Leaves restored in order by unrouting.
        assert_eq!(post.leaves(), q.leaves());
        // Mirror configuration: perfect complementary correlation.
        let t13_mirror = MeasurementTarget::with_configuration(vec![1, 3], vec![RoutingTag::Under]);
        let probs13 = projector_probabilities(&post, &t13_mirror).unwrap();
        assert_eq!(probs13.len(), 1);
        assert_eq!(probs13[0].0, c);
        assert!((probs13[0].1 - 1.0).abs() < 1e-9);
        // Same-handed configuration: the ψ-twisted charge, also determinate.
        let t13_same = MeasurementTarget::new(vec![1, 3]);
        let probs13 = projector_probabilities(&post, &t13_same).unwrap();
        assert_eq!(probs13.len(), 1);
        let twisted = if c == I { P } else { I };
        assert_eq!(probs13[0].0, twisted);
        // Re-measuring (2,4) is idempotent.
        let (post2, p2) = project_forced(&post, &t24, c).unwrap();
        assert!((p2 - 1.0).abs() < 1e-9);
        assert!(post.trace_distance(&post2).unwrap() < 1e-12);
    }
}

#[test]
fn unroute_inverts_route() {
    let f = fib();
    let mut rng = rng_for_stream(29, 0);
    let rho = random_density_matrix(f, &[S, S, S, S, S], &mut rng).unwrap();
    let t = MeasurementTarget::new(vec![2, 5]);
    let (routed, recipe) = route_target(&rho, &t).unwrap();
    let back = unroute(&routed, &recipe).unwrap();
    assert!(rho.trace_distance(&back).unwrap() < 1e-12);
}

#[test]
fn forced_zero_probability_outcome_rejected() {
    let m = ising();
    let v = AnyonicDensityMatrix::vacuum_pair(m, S).unwrap();
    let t = MeasurementTarget::new(vec![1, 2]);
    assert!(project_forced(&v, &t, P).is_err());
}
