//! Forced-measurement teleportation and measurement-generated braiding.
//!
//! A forced measurement repeats a predetermined pair of topological charge
//! measurements until the desired vacuum outcome is obtained, teleporting
//! the state carried by one anyon onto another without any recovery
//! unitaries. Three forced measurements around an entanglement-resource pair
//! compose to the braiding transformation of two computational anyons.

pub mod qubit;

use alloc::vec::Vec;
use core::fmt;

use crate::fusion::{AnyonicDensityMatrix, FusionError};
use crate::measure::{
    interferometry, project, projector_probabilities, MeasureError, MeasurementEvent,
    MeasurementTarget, Method,
};
use crate::model::{Charge, ProbeSpec};
use crate::Rng;

/// Hard cap on forced-measurement attempts; the probability of reaching it
/// is below `(1 - d_a^{-2})^{10^4}`, i.e. effectively zero, so hitting the
/// cap indicates a defect rather than bad luck.
pub const MAX_ATTEMPTS: usize = 10_000;

/// Labels for the outcomes recorded during a forced measurement.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum OutcomeLabel {
    /// Resource-pair reset measurement.
    E,
    /// Teleporting pair measurement.
    F,
    /// Interferometric success check on the state block.
    Z,
    /// Bell outcomes of the spin-1/2 reference protocol.
    Mu,
    Nu,
}

/// Which protocol produced a record.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RecordMethod {
    Projective,
    Interferometric,
    QubitReference,
}

/// Outcome sequence of one forced measurement.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ForcedMeasurementRecord {
    pub method: RecordMethod,
    /// `(label, charge index)` in measurement order.
    pub outcomes: Vec<(OutcomeLabel, u8)>,
    /// Number of attempts until the desired vacuum outcome.
    pub attempts: usize,
}

impl ForcedMeasurementRecord {
    /// Check the structural invariants: the final success outcome is vacuum
    /// and no earlier one is.
    pub fn check_invariants(&self) -> bool {
        let success_label = match self.method {
            RecordMethod::Projective => OutcomeLabel::F,
            RecordMethod::Interferometric => OutcomeLabel::Z,
            RecordMethod::QubitReference => OutcomeLabel::Mu,
        };
        let succ: Vec<u8> = self
            .outcomes
            .iter()
            .filter(|(l, _)| *l == success_label)
            .map(|&(_, c)| c)
            .collect();
        succ.len() == self.attempts
            && succ.last() == Some(&0)
            && succ[..succ.len() - 1].iter().all(|&c| c != 0)
    }
}

/// Errors from protocol execution.
#[derive(Clone, Debug, PartialEq)]
pub enum ProtocolError {
    Measure(MeasureError),
    Fusion(FusionError),
    /// The resource pair was not in the expected definite channel.
    BadResource,
    /// The teleported anyon does not carry the computational charge.
    BadStateCharge,
    /// The state block must have definite vacuum overall charge for the
    /// interferometric protocol.
    StateBlockNotVacuum,
    /// Forced measurement failed to terminate within [`MAX_ATTEMPTS`].
    AttemptCapExceeded,
    /// The probe must distinguish all charges for the interferometric
    /// protocol.
    ProbeNotDistinguishing,
}

impl From<MeasureError> for ProtocolError {
    fn from(e: MeasureError) -> Self {
        ProtocolError::Measure(e)
    }
}

impl From<FusionError> for ProtocolError {
    fn from(e: FusionError) -> Self {
        ProtocolError::Fusion(e)
    }
}

impl fmt::Display for ProtocolError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProtocolError::Measure(e) => write!(f, "{e}"),
            ProtocolError::Fusion(e) => write!(f, "{e}"),
            ProtocolError::BadResource => write!(f, "resource pair not in the expected channel"),
            ProtocolError::BadStateCharge => write!(f, "state anyon carries the wrong charge"),
            ProtocolError::StateBlockNotVacuum => {
                write!(f, "state block must have definite vacuum overall charge")
            }
            ProtocolError::AttemptCapExceeded => {
                write!(f, "forced measurement exceeded {MAX_ATTEMPTS} attempts")
            }
            ProtocolError::ProbeNotDistinguishing => {
                write!(f, "probe must distinguish all charges")
            }
        }
    }
}

impl core::error::Error for ProtocolError {}

/// Read the definite collective charge of a target, if any.
fn definite_charge(
    rho: &AnyonicDensityMatrix,
    target: &MeasurementTarget,
) -> Result<Option<Charge>, MeasureError> {
    let probs = projector_probabilities(rho, target)?;
    Ok(probs
        .iter()
        .find(|&&(_, p)| (p - 1.0).abs() < 1e-9)
        .map(|&(c, _)| c))
}

/// One forced-measurement teleport step specification, in absolute anyon
/// positions of the combined state.
#[derive(Clone, Debug)]
pub(crate) struct TeleportSpec {
    /// Pair measured until the success condition holds.
    pub pair_xy: MeasurementTarget,
    /// Reset pair (the resource's previous location).
    pub pair_xz: MeasurementTarget,
    /// State block for the interferometric success check.
    pub z_block: MeasurementTarget,
    /// Known channel of `pair_xz` at entry (its measurement is skipped, as
    /// it was already performed by the previous series).
    pub resource_in: Charge,
}

pub(crate) struct TeleportOutput {
    pub rho: AnyonicDensityMatrix,
    pub record: ForcedMeasurementRecord,
    /// Channel of `pair_xy` (the resource's new location) after success.
    pub resource_out: Charge,
}

/// Shared forced-measurement loop used by the protocol entry points and the
/// schedule executor.
pub(crate) fn forced_teleport(
    rho: &AnyonicDensityMatrix,
    spec: &TeleportSpec,
    method: Method,
    probe: &ProbeSpec,
    rng: &mut Rng,
    mut events: Option<&mut Vec<MeasurementEvent>>,
) -> Result<TeleportOutput, ProtocolError> {
    let model = rho.model().clone();
    let mut state = rho.clone();
    let mut outcomes: Vec<(OutcomeLabel, u8)> = Vec::new();
    let mut log = |ev: MeasurementEvent, events: &mut Option<&mut Vec<MeasurementEvent>>| {
        if let Some(sink) = events.as_deref_mut() {
            sink.push(ev);
        }
    };

    match method {
        Method::Projective => {
            // Loop: measure the teleporting pair; on failure reset via the
            // previous pair and try again.
            for attempt in 1..=MAX_ATTEMPTS {
                let (f, post, p) = project(&state, &spec.pair_xy, rng)?;
                state = post;
                outcomes.push((OutcomeLabel::F, f.0));
                log(
                    MeasurementEvent {
                        target: spec.pair_xy.subset.clone(),
                        method,
                        outcome: f.0,
                        probability: p,
                    },
                    &mut events,
                );
                if f.is_vacuum() {
                    return Ok(TeleportOutput {
                        rho: state,
                        record: ForcedMeasurementRecord {
                            method: RecordMethod::Projective,
                            outcomes,
                            attempts: attempt,
                        },
                        resource_out: Charge::VACUUM,
                    });
                }
                let (e, post, p) = project(&state, &spec.pair_xz, rng)?;
                state = post;
                outcomes.push((OutcomeLabel::E, e.0));
                log(
                    MeasurementEvent {
                        target: spec.pair_xz.subset.clone(),
                        method,
                        outcome: e.0,
                        probability: p,
                    },
                    &mut events,
                );
            }
            Err(ProtocolError::AttemptCapExceeded)
        }
        Method::Interferometric => {
            // The state block has definite vacuum charge at entry; track
            // whether its charge stays inferable so redundant z checks can
            // be skipped (possible exactly when both pair outcomes flanking
            // a teleport step are Abelian).
            let mut resource = spec.resource_in;
            let mut block_charge: Option<Charge> = Some(Charge::VACUUM);
            for attempt in 1..=MAX_ATTEMPTS {
                let (out, post) = interferometry(&state, &spec.pair_xy, probe, rng)?;
                state = post;
                let f = out.charge();
                outcomes.push((OutcomeLabel::F, f.0));
                log(
                    MeasurementEvent {
                        target: spec.pair_xy.subset.clone(),
                        method,
                        outcome: f.0,
                        probability: out.probability,
                    },
                    &mut events,
                );

                let inferred = infer_block_charge(&model, resource, f, block_charge);
                let z = match inferred {
                    Some(z) => z,
                    None => {
                        let (zout, post) = interferometry(&state, &spec.z_block, probe, rng)?;
                        state = post;
                        let z = zout.charge();
                        log(
                            MeasurementEvent {
                                target: spec.z_block.subset.clone(),
                                method,
                                outcome: z.0,
                                probability: zout.probability,
                            },
                            &mut events,
                        );
                        z
                    }
                };
                outcomes.push((OutcomeLabel::Z, z.0));
                block_charge = Some(z);

                if z.is_vacuum() {
                    return Ok(TeleportOutput {
                        rho: state,
                        record: ForcedMeasurementRecord {
                            method: RecordMethod::Interferometric,
                            outcomes,
                            attempts: attempt,
                        },
                        resource_out: f,
                    });
                }

                // Undo the failed teleport; the block charge of the next
                // round is inferable only when this step is fully Abelian.
                let prev_pair_resource = f;
                let (eout, post) = interferometry(&state, &spec.pair_xz, probe, rng)?;
                state = post;
                let e = eout.charge();
                outcomes.push((OutcomeLabel::E, e.0));
                log(
                    MeasurementEvent {
                        target: spec.pair_xz.subset.clone(),
                        method,
                        outcome: e.0,
                        probability: eout.probability,
                    },
                    &mut events,
                );
                resource = e;
                block_charge = infer_block_charge(&model, prev_pair_resource, e, block_charge);
            }
            Err(ProtocolError::AttemptCapExceeded)
        }
    }
}

/// After teleporting across a resource in channel `e` with pair outcome `f`,
/// the new block charge is determined classically iff both are Abelian and
/// the previous block charge `x` was definite: `y = (e x fbar) x`.
fn infer_block_charge(
    model: &crate::model::AnyonModel,
    e: Charge,
    f: Charge,
    x: Option<Charge>,
) -> Option<Charge> {
    let x = x?;
    if !model.is_abelian(e) || !model.is_abelian(f) {
        return None;
    }
    let q = model.fuse(e, model.dual(f));
    debug_assert_eq!(q.len(), 1);
    let y = model.fuse(q[0], x);
    debug_assert_eq!(y.len(), 1);
    Some(y[0])
}

/// Anyonic state teleportation by forced projective measurement.
///
/// The combined state carries the vacuum resource pair on anyons `(1, 2)`
/// and the state anyon of charge `a` at position `3` (the rest of the state
/// from position 4 on). Pairs `(2,3)` and `(1,2)` are measured alternately
/// until the `(2,3)` outcome is vacuum; the state then lives on anyon 1 and
/// the replenished vacuum pair on `(3, 2)`.
pub fn forced_teleport_projective(
    rho: &AnyonicDensityMatrix,
    rng: &mut Rng,
) -> Result<(AnyonicDensityMatrix, ForcedMeasurementRecord), ProtocolError> {
    let leaves = rho.leaves();
    let a = leaves[0];
    if leaves[2] != a {
        return Err(ProtocolError::BadStateCharge);
    }
    if definite_charge(rho, &MeasurementTarget::new(alloc::vec![1, 2]))? != Some(Charge::VACUUM) {
        return Err(ProtocolError::BadResource);
    }
    let spec = TeleportSpec {
        pair_xy: MeasurementTarget::new(alloc::vec![2, 3]),
        pair_xz: MeasurementTarget::new(alloc::vec![1, 2]),
        z_block: MeasurementTarget::new(alloc::vec![1]),
        resource_in: Charge::VACUUM,
    };
    let probe = rho.model().standard_probe();
    let out = forced_teleport(rho, &spec, Method::Projective, &probe, rng, None)?;
    Ok((out.rho, out.record))
}

/// Anyonic state teleportation by forced interferometry measurement.
///
/// The resource pair `(1/d_e)|a,abar;e><a,abar;e|` sits on anyons `(1, 2)`
/// (any definite channel `e`), the state anyon of charge `a` at position 3,
/// and the rest of the state block, which must have definite vacuum overall
/// charge, from position 4 on. Each attempt measures the pair `(2,3)`, reads
/// the block charge `z` of anyons `(1, 4, ...)`, and on failure undoes the
/// teleport via `(1,2)`. Per-attempt success probability is exactly
/// `d_a^{-2}`.
pub fn forced_teleport_interferometric(
    rho: &AnyonicDensityMatrix,
    probe: &ProbeSpec,
    rng: &mut Rng,
) -> Result<(AnyonicDensityMatrix, ForcedMeasurementRecord), ProtocolError> {
    let model = rho.model().clone();
    if !crate::measure::charge_classes(&model, probe).fully_distinguishing() {
        return Err(ProtocolError::ProbeNotDistinguishing);
    }
    let leaves = rho.leaves();
    let m = leaves.len();
    let a = leaves[0];
    if leaves[2] != a {
        return Err(ProtocolError::BadStateCharge);
    }
    let resource_in = definite_charge(rho, &MeasurementTarget::new(alloc::vec![1, 2]))?
        .ok_or(ProtocolError::BadResource)?;
    // The state block (3..m) must have definite vacuum charge.
    let block: Vec<usize> = (3..=m).collect();
    if definite_charge(rho, &MeasurementTarget::new(block))? != Some(Charge::VACUUM) {
        return Err(ProtocolError::StateBlockNotVacuum);
    }
    let mut z_block = alloc::vec![1];
    z_block.extend(4..=m);
    let spec = TeleportSpec {
        pair_xy: MeasurementTarget::new(alloc::vec![2, 3]),
        pair_xz: MeasurementTarget::new(alloc::vec![1, 2]),
        z_block: MeasurementTarget::new(z_block),
        resource_in,
    };
    let out = forced_teleport(rho, &spec, Method::Interferometric, probe, rng, None)?;
    Ok((out.rho, out.record))
}

/// Conjugate the state by the unitary exchanging anyons `i < j`
/// counterclockwise in the plane: the strand starting at `i` passes over
/// every strand between, composed from adjacent transpositions
/// `[i, i+1, ..., j-1, j-2, ..., i]`.
pub fn direct_braid(
    rho: &AnyonicDensityMatrix,
    i: usize,
    j: usize,
    ccw: bool,
) -> Result<AnyonicDensityMatrix, ProtocolError> {
    if i == 0 || i >= j || j > rho.leaves().len() {
        return Err(ProtocolError::Fusion(FusionError::IndexOutOfRange));
    }
    let mut word: Vec<usize> = (i..j).collect();
    word.extend((i..j - 1).rev());
    let mut out = rho.clone();
    for &pos in &word {
        out = out.apply_braid(pos, ccw)?;
    }
    Ok(out)
}

/// Measurement-generated braiding of computational anyons 1 and 4 around the
/// entanglement-resource pair at `(2, 3)`: three forced teleports whose
/// composition equals the direct braid `R^{(14)}` (counterclockwise) or its
/// inverse. Spectator anyons carrying the rest of the state sit from
/// position 5 on.
///
/// For the interferometric method the state block (everything except the
/// resource pair) must have definite vacuum overall charge, and the probe
/// must distinguish all charges. The resource pair ends unentangled at its
/// original location: in the vacuum channel (projective) or in the definite
/// channel given by the final pair outcome (interferometric).
pub fn measurement_braid(
    rho: &AnyonicDensityMatrix,
    ccw: bool,
    method: Method,
    probe: &ProbeSpec,
    rng: &mut Rng,
    mut events: Option<&mut Vec<MeasurementEvent>>,
) -> Result<(AnyonicDensityMatrix, Vec<ForcedMeasurementRecord>), ProtocolError> {
    let model = rho.model().clone();
    let m = rho.leaves().len();
    if m < 4 {
        return Err(ProtocolError::Fusion(FusionError::IndexOutOfRange));
    }
    if method == Method::Interferometric
        && !crate::measure::charge_classes(&model, probe).fully_distinguishing()
    {
        return Err(ProtocolError::ProbeNotDistinguishing);
    }
    let resource_in = definite_charge(rho, &MeasurementTarget::new(alloc::vec![2, 3]))?
        .ok_or(ProtocolError::BadResource)?;
    if method == Method::Projective && resource_in != Charge::VACUUM {
        return Err(ProtocolError::BadResource);
    }

    let spectators: Vec<usize> = (5..=m).collect();
    let block = |positions: &[usize]| -> MeasurementTarget {
        let mut v = positions.to_vec();
        v.extend(spectators.iter().copied());
        v.sort_unstable();
        MeasurementTarget::new(v)
    };
    let pair = |x: usize, y: usize| {
        MeasurementTarget::new(if x < y { alloc::vec![x, y] } else { alloc::vec![y, x] })
    };

    // Pair sequences of the three forced measurements, counterclockwise:
    // (21<-23), (24<-21), (23<-24); clockwise: (24<-23), (21<-24), (23<-21).
    let seq: [(MeasurementTarget, MeasurementTarget, MeasurementTarget); 3] = if ccw {
        [
            (pair(2, 1), pair(2, 3), block(&[3, 4])),
            (pair(2, 4), pair(2, 1), block(&[1, 3])),
            (pair(2, 3), pair(2, 4), block(&[1, 4])),
        ]
    } else {
        [
            (pair(2, 4), pair(2, 3), block(&[1, 3])),
            (pair(2, 1), pair(2, 4), block(&[3, 4])),
            (pair(2, 3), pair(2, 1), block(&[1, 4])),
        ]
    };

    let mut state = rho.clone();
    let mut records = Vec::with_capacity(3);
    let mut resource = resource_in;
    for (pair_xy, pair_xz, z_block) in seq {
        let spec = TeleportSpec { pair_xy, pair_xz, z_block, resource_in: resource };
        let out = forced_teleport(&state, &spec, method, probe, rng, events.as_deref_mut())?;
        state = out.rho;
        resource = out.resource_out;
        records.push(out.record);
    }
    Ok((state, records))
}

/// Summary statistics over forced-measurement attempt counts.
#[derive(Clone, Debug, PartialEq)]
pub struct AttemptStatistics {
    pub mean: f64,
    /// `(attempts, count)` sorted by attempts.
    pub histogram: Vec<(usize, usize)>,
    pub total: usize,
}

impl AttemptStatistics {
    /// Empirical probability of needing more than `n` attempts.
    pub fn tail(&self, n: usize) -> f64 {
        let above: usize = self
            .histogram
            .iter()
            .filter(|&&(k, _)| k > n)
            .map(|&(_, c)| c)
            .sum();
        above as f64 / self.total as f64
    }
}

/// Aggregate attempt counts of a batch of forced measurements.
pub fn attempt_statistics(records: &[ForcedMeasurementRecord]) -> Option<AttemptStatistics> {
    if records.is_empty() {
        return None;
    }
    let mut histogram: Vec<(usize, usize)> = Vec::new();
    for r in records {
        match histogram.binary_search_by_key(&r.attempts, |&(k, _)| k) {
            Ok(i) => histogram[i].1 += 1,
            Err(i) => histogram.insert(i, (r.attempts, 1)),
        }
    }
    let total = records.len();
    let mean = records.iter().map(|r| r.attempts as f64).sum::<f64>() / total as f64;
    Some(AttemptStatistics { mean, histogram, total })
}
