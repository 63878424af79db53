use std::sync::Arc;
use anyonforge_core::fusion::{random_pure_state, AnyonicDensityMatrix};
use anyonforge_core::measure::{interferometry_forced, projector_probabilities, MeasurementTarget};
use anyonforge_core::model::{build_model, Charge, ModelSpec};
use anyonforge_core::rng_for_stream;

const S: Charge = Charge(1);

fn main() {
    let m = Arc::new(build_model(ModelSpec::Fib).unwrap());
    let probe = m.standard_probe();
    let mut rng = rng_for_stream(7, 0);

    let psi = random_pure_state(m.clone(), &[S, S, S, S], Charge(0), &mut rng).unwrap();
    let pair = AnyonicDensityMatrix::vacuum_pair(m.clone(), S).unwrap();
    let mut combined = psi.tensor(&pair).unwrap();
    for pos in [4usize, 3, 2] { combined = combined.apply_braid(pos, true).unwrap(); }
    for pos in [5usize, 4, 3] { combined = combined.apply_braid(pos, true).unwrap(); }
    // leaves: [s1, R, R, s4, s5, s6]; resource channel:
    println!("resource channel: {:?}", projector_probabilities(&combined, &MeasurementTarget::new(vec![2,3])).unwrap());
    println!("state block {{1,4,5,6}}: {:?}", projector_probabilities(&combined, &MeasurementTarget::new(vec![1,4,5,6])).unwrap());

    // FM1 ccw: pair (2,1) forced to each outcome; then z-block {3,4,5,6} distribution.
    for f in [Charge(0), Charge(1)] {
        let (out, post) = interferometry_forced(&combined, &MeasurementTarget::new(vec![1,2]), &probe, f).unwrap();
        println!("pair(1,2) -> {:?} p={:.4}", out.charge(), out.probability);
        let z = projector_probabilities(&post, &MeasurementTarget::new(vec![3,4,5,6])).unwrap();
        println!("  z-block {{3,4,5,6}} dist: {z:?}");
        let z2 = projector_probabilities(&post, &MeasurementTarget::new(vec![3,4,5,6].into_iter().collect())).unwrap();
        let _ = z2;
        // check resource factorization: entanglement weight of block (1,2)
        let w = anyonforge_core::measure::entanglement_weight(&post, 1, 2, &probe).unwrap();
        println!("  resource (1,2) residual entanglement: {w:.3e}");
        // what does the overall charge of everything look like?
        let all = projector_probabilities(&post, &MeasurementTarget::new(vec![1,2,3,4,5,6])).unwrap();
        println!("  total charge dist: {all:?}");
    }
}
