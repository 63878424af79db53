//! Topological charge measurement on anyonic density matrices.
//!
//! Projective measurement projects a contiguous (after routing) group of
//! anyons onto a definite collective charge. Interferometric measurement, in
//! the asymptotic many-probe limit, composes that projection with the
//! decoherence superoperator that removes anyonic charge entanglement the
//! probes can see crossing the interferometer boundary.
//!
//! Non-adjacent targets are handled by conjugation with explicit routing
//! braids: route the target together, measure, route back. An `over` tag
//! routes the moved anyon's charge line over the bypassed anyon, `under`
//! routes it beneath; topologically inequivalent configurations give
//! different measurement operators.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)] use num_traits::Float;
use rand::Rng as _;

use crate::fusion::{AnyonicDensityMatrix, FusionError};
use crate::model::{AnyonModel, Charge, ProbeSpec};
use crate::{Complex, Rng};

/// Measurement kind.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    Projective,
    Interferometric,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Projective => write!(f, "projective"),
            Method::Interferometric => write!(f, "interferometric"),
        }
    }
}

/// Spatial routing choice for one bypassed anyon.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RoutingTag {
    Over,
    Under,
}

/// Which anyons to measure, with the spatial configuration for non-adjacent
/// subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementTarget {
    /// 1-based anyon positions, strictly increasing.
    pub subset: Vec<usize>,
    /// One tag per bypassed anyon (non-target positions strictly between the
    /// first and last target position), in increasing position order.
    pub configuration: Vec<RoutingTag>,
}

impl MeasurementTarget {
    /// Target with the default `over` configuration for every bypassed anyon.
    pub fn new(subset: Vec<usize>) -> MeasurementTarget {
        let bypassed = bypassed_positions(&subset).len();
        MeasurementTarget {
            subset,
            configuration: alloc::vec![RoutingTag::Over; bypassed],
        }
    }

    pub fn with_configuration(subset: Vec<usize>, configuration: Vec<RoutingTag>) -> MeasurementTarget {
        MeasurementTarget { subset, configuration }
    }
}

fn bypassed_positions(subset: &[usize]) -> Vec<usize> {
    if subset.len() < 2 {
        return Vec::new();
    }
    let (lo, hi) = (subset[0], *subset.last().unwrap());
    (lo + 1..hi).filter(|p| !subset.contains(p)).collect()
}

/// Errors from measurement operations.
#[derive(Clone, Debug, PartialEq)]
pub enum MeasureError {
    Fusion(FusionError),
    EmptyTarget,
    /// Positions out of range, not strictly increasing, or configuration
    /// length mismatch.
    BadTarget,
    /// A forced outcome had probability below `1e-12`.
    ImpossibleOutcome,
    /// The cut does not split the anyons into two non-empty groups.
    BadCut,
}

impl From<FusionError> for MeasureError {
    fn from(e: FusionError) -> MeasureError {
        MeasureError::Fusion(e)
    }
}

impl fmt::Display for MeasureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureError::Fusion(e) => write!(f, "{e}"),
            MeasureError::EmptyTarget => write!(f, "measurement target is empty"),
            MeasureError::BadTarget => write!(f, "invalid measurement target"),
            MeasureError::ImpossibleOutcome => write!(f, "forced outcome has zero probability"),
            MeasureError::BadCut => write!(f, "invalid decoherence cut"),
        }
    }
}

impl core::error::Error for MeasureError {}

/// One measurement event for run logs.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeasurementEvent {
    pub target: Vec<usize>,
    pub method: Method,
    /// Charge index of the outcome (class representative for
    /// interferometry).
    pub outcome: u8,
    pub probability: f64,
}

/// Recorded routing braids; `unroute` undoes them.
#[derive(Clone, Debug, Default)]
pub struct RoutingRecipe {
    /// `(position, ccw)` braids in application order.
    braids: Vec<(usize, bool)>,
}

impl RoutingRecipe {
    pub fn is_identity(&self) -> bool {
        self.braids.is_empty()
    }
}

fn check_target(rho: &AnyonicDensityMatrix, target: &MeasurementTarget) -> Result<(), MeasureError> {
    let n = rho.leaves().len();
    if target.subset.is_empty() {
        return Err(MeasureError::EmptyTarget);
    }
    if target.subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MeasureError::BadTarget);
    }
    if *target.subset.last().unwrap() > n || target.subset[0] == 0 {
        return Err(MeasureError::BadTarget);
    }
    if target.configuration.len() != bypassed_positions(&target.subset).len() {
        return Err(MeasureError::BadTarget);
    }
    Ok(())
}

/// Chirality of one routing braid. Moving a target anyon leftward past a
/// bypassed anyon: with `Over` the moving anyon's line passes over the
/// bypassed one, which in the R-convention used here (counterclockwise =
/// left strand over right) is the clockwise braid.
fn routing_ccw(tag: RoutingTag, moving_left: bool) -> bool {
    match (tag, moving_left) {
        (RoutingTag::Over, true) => false,
        (RoutingTag::Over, false) => true,
        (RoutingTag::Under, true) => true,
        (RoutingTag::Under, false) => false,
    }
}

/// Bring the target anyons together by braiding, compacting the subset into
/// a contiguous run starting at `anchor` (defaults to the first target
/// position). Returns the routed state, the contiguous range (1-based,
/// inclusive), and the recipe to undo the move.
fn route_compact(
    rho: &AnyonicDensityMatrix,
    target: &MeasurementTarget,
    anchor: usize,
) -> Result<(AnyonicDensityMatrix, (usize, usize), RoutingRecipe), MeasureError> {
    check_target(rho, target)?;
    let n = rho.leaves().len();
    let bypassed = bypassed_positions(&target.subset);
    let tag_of = |orig: usize| -> RoutingTag {
        bypassed
            .iter()
            .position(|&p| p == orig)
            .map(|i| target.configuration[i])
            .unwrap_or(RoutingTag::Over)
    };

    // perm[current position - 1] = original position.
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut out = rho.clone();
    let mut recipe = RoutingRecipe::default();

    for (idx, &orig) in target.subset.iter().enumerate() {
        let desired = anchor + idx;
        let mut pos = perm.iter().position(|&o| o == orig).unwrap() + 1;
        while pos > desired {
            let tag = tag_of(perm[pos - 2]);
            let ccw = routing_ccw(tag, true);
            out = out.apply_braid(pos - 1, ccw)?;
            recipe.braids.push((pos - 1, ccw));
            perm.swap(pos - 2, pos - 1);
            pos -= 1;
        }
        debug_assert_eq!(pos, desired, "targets must move left only");
    }
    Ok((out, (anchor, anchor + target.subset.len() - 1), recipe))
}

/// Undo a routing.
pub fn unroute(rho: &AnyonicDensityMatrix, recipe: &RoutingRecipe) -> Result<AnyonicDensityMatrix, MeasureError> {
    let mut out = rho.clone();
    for &(pos, ccw) in recipe.braids.iter().rev() {
        out = out.apply_braid(pos, !ccw)?;
    }
    Ok(out)
}

/// Conjugate the state by the braid word that makes the target adjacent.
/// Measuring the compacted range and then un-routing realizes the
/// non-adjacent measurement in the chosen spatial configuration.
pub fn route_target(
    rho: &AnyonicDensityMatrix,
    target: &MeasurementTarget,
) -> Result<(AnyonicDensityMatrix, RoutingRecipe), MeasureError> {
    let (out, _, recipe) = route_compact(rho, target, target.subset[0])?;
    Ok((out, recipe))
}

enum Choice<'a> {
    Sample(&'a mut Rng),
    Forced(Charge),
}

/// Projective measurement outcome probabilities for a routed-adjacent
/// target: map from collective charge to probability.
pub fn projector_probabilities(
    rho: &AnyonicDensityMatrix,
    target: &MeasurementTarget,
) -> Result<Vec<(Charge, f64)>, MeasureError> {
    let (mut routed, (i, j), _) = route_compact(rho, target, target.subset[0])?;
    let info = routed.expose_segment(i, j)?;
    let dim = routed.dim();
    let model = routed.model().clone();
    let mut probs: Vec<(Charge, f64)> = model.charges().map(|c| (c, 0.0)).collect();
    for r in 0..dim {
        let c = info.total_value(routed.leaves(), &routed.labels()[r]);
        probs[c.idx()].1 += routed.mat()[r * dim + r].re;
    }
    probs.retain(|&(_, p)| p.abs() > 0.0);
    Ok(probs)
}

fn project_impl(
    rho: &AnyonicDensityMatrix,
    target: &MeasurementTarget,
    choice: Choice<'_>,
) -> Result<(Charge, AnyonicDensityMatrix, f64), MeasureError> {
    let (mut routed, (i, j), recipe) = route_compact(rho, target, target.subset[0])?;
    let info = routed.expose_segment(i, j)?;
    let dim = routed.dim();

    let totals: Vec<Charge> = (0..dim)
        .map(|r| info.total_value(routed.leaves(), routed.labels()[r].as_slice()))
        .collect();
    let model = routed.model().clone();
    let mut probs = alloc::vec![0.0f64; model.charge_count()];
    for r in 0..dim {
        probs[totals[r].idx()] += routed.mat()[r * dim + r].re;
    }

    let outcome = match choice {
        Choice::Forced(c) => {
            if probs[c.idx()] <= 1e-12 {
                return Err(MeasureError::ImpossibleOutcome);
            }
            c
        }
        Choice::Sample(rng) => sample_charge(&probs, rng),
    };
    let prob = probs[outcome.idx()];

    let mat = routed.mat_mut();
    for r in 0..dim {
        for c in 0..dim {
            if totals[r] != outcome || totals[c] != outcome {
                mat[r * dim + c] = Complex64::new(0.0, 0.0);
            }
        }
    }
    routed.renormalize()?;
    routed.restore_segment(&info)?;
    let out = unroute(&routed, &recipe)?;
    Ok((outcome, out, prob))
}

fn sample_charge(probs: &[f64], rng: &mut Rng) -> Charge {
    let total: f64 = probs.iter().sum();
    let u = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc && p > 0.0 {
            return Charge(i as u8);
        }
    }
    // Fall back to the last nonzero outcome under rounding.
    Charge(probs.iter().rposition(|&p| p > 0.0).unwrap_or(0) as u8)
}

/// Projective measurement of the collective charge of `target`, sampling the
/// outcome by the Born rule. Returns `(outcome, post-state, probability)`.
pub fn project(
    rho: &AnyonicDensityMatrix,
    target: &MeasurementTarget,
    rng: &mut Rng,
) -> Result<(Charge, AnyonicDensityMatrix, f64), MeasureError> {
    project_impl(rho, target, Choice::Sample(rng))
}

/// Projective measurement with a forced outcome (must have probability above
/// `1e-12`). Returns `(post-state, probability)`.
pub fn project_forced(
    rho: &AnyonicDensityMatrix,
    target: &MeasurementTarget,
    outcome: Charge,
) -> Result<(AnyonicDensityMatrix, f64), MeasureError> {
    let (_, out, p) = project_impl(rho, target, Choice::Forced(outcome))?;
    Ok((out, p))
}

/// Charge classes a probe can distinguish by monodromy.
#[derive(Clone, Debug)]
pub struct ChargeClassPartition {
    /// Disjoint classes covering every charge.
    pub classes: Vec<Vec<Charge>>,
    /// Representative `M_{aB}` value per class.
    pub representative: Vec<Complex>,
}

impl ChargeClassPartition {
    pub fn class_of(&self, a: Charge) -> usize {
        self.classes
            .iter()
            .position(|cl| cl.contains(&a))
            .expect("classes partition the charge set")
    }

    /// True when every class is a singleton.
    pub fn fully_distinguishing(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// Partition the charges by equality of `M_{aB}` within `1e-9`.
pub fn charge_classes(model: &AnyonModel, probe: &ProbeSpec) -> ChargeClassPartition {
    let mut classes: Vec<Vec<Charge>> = Vec::new();
    let mut representative: Vec<Complex> = Vec::new();
    for a in model.charges() {
        let m = model.monodromy_probe(a, probe);
        match representative.iter().position(|r| (r - m).norm() < 1e-9) {
            Some(i) => classes[i].push(a),
            None => {
                classes.push(alloc::vec![a]);
                representative.push(m);
            }
        }
    }
    ChargeClassPartition { classes, representative }
}

/// Decoherence superoperator across the cut `inside 1..=n | outside n+1..=m`:
/// rewrite the state into the single-`e`-line form and zero every component
/// whose `e` the probe can see (`M_{eB} != 1`). The map is exactly
/// trace-preserving (the removed components carry no quantum trace); the
/// returned weight is the removed coefficient mass, zero iff the cut carried
/// no probe-visible entanglement.
pub fn decohere(
    rho: &AnyonicDensityMatrix,
    cut: usize,
    probe: &ProbeSpec,
) -> Result<(AnyonicDensityMatrix, f64), MeasureError> {
    let m = rho.leaves().len();
    if cut == 0 || cut >= m {
        return Err(MeasureError::BadCut);
    }
    let mut work = rho.clone();
    let info = work.expose_segment(cut + 1, m)?;
    let removed = decohere_exposed(&mut work, cut, &info, probe)?;
    work.restore_segment(&info)?;
    Ok((work, removed))
}

/// Decoherence on a state already in the suffix-exposed shape. `info` must
/// come from `expose_segment(cut+1, m)`.
fn decohere_exposed(
    work: &mut AnyonicDensityMatrix,
    cut: usize,
    info: &crate::fusion::SegmentInfo,
    probe: &ProbeSpec,
) -> Result<f64, MeasureError> {
    let model = work.model().clone();
    let dim = work.dim();
    let m = work.leaves().len();
    let f_slot = m - 2;

    // Visible-e filter.
    let keep: Vec<bool> = model
        .charges()
        .map(|e| (model.monodromy_probe(e, probe) - Complex64::new(1.0, 0.0)).norm() < 1e-9)
        .collect();

    // a_in per basis element (ket side), a_ex = segment total.
    let first_leaf = work.leaves()[0];
    let a_in_of = move |labels: &[Charge]| -> Charge {
        if cut == 1 {
            first_leaf
        } else {
            labels[cut - 2]
        }
    };

    // Group basis elements by all labels except the overall slot.
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&x, &y| {
        let lx = &work.labels()[x];
        let ly = &work.labels()[y];
        lx[..f_slot].cmp(&ly[..f_slot])
    });
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(g) if work.labels()[g[0]][..f_slot] == work.labels()[i][..f_slot] => g.push(i),
            _ => groups.push(alloc::vec![i]),
        }
    }

    let labels = work.labels().to_vec();
    let leaves = work.leaves().to_vec();
    let mat = work.mat_mut();
    let mut removed = 0.0f64;

    for gk in &groups {
        let a_in = a_in_of(&labels[gk[0]]);
        let a_ex = info.total_value(&leaves, &labels[gk[0]]);
        for gb in &groups {
            let a_in_b = a_in_of(&labels[gb[0]]);
            let a_ex_b = info.total_value(&leaves, &labels[gb[0]]);

            // f values admissible on both sides, in charge order.
            let fs: Vec<(Charge, usize, usize)> = gk
                .iter()
                .filter_map(|&r| {
                    let f = labels[r][f_slot];
                    gb.iter()
                        .find(|&&c| labels[c][f_slot] == f)
                        .map(|&c| (f, r, c))
                })
                .collect();
            if fs.is_empty() {
                continue;
            }
            let es: Vec<Charge> = model
                .charges()
                .filter(|&e| model.n_fuse(a_in_b, e, a_in) && model.n_fuse(e, a_ex, a_ex_b))
                .collect();

            // Orthonormal-coefficient vector over f.
            let cvec: Vec<Complex> = fs
                .iter()
                .map(|&(f, r, c)| mat[r * dim + c] / model.qdim(f).sqrt())
                .collect();
            // e-line amplitudes; the bent-F matrix U[e][f] is unitary.
            let mut evec: Vec<Complex> = alloc::vec![Complex64::new(0.0, 0.0); es.len()];
            for (ei, &e) in es.iter().enumerate() {
                for (fi, &(f, _, _)) in fs.iter().enumerate() {
                    let u = model.f_bend(a_in, a_ex, a_in_b, a_ex_b, e, f);
                    evec[ei] += u.conj() * cvec[fi];
                }
            }
            for (ei, &e) in es.iter().enumerate() {
                if !keep[e.idx()] {
                    removed += evec[ei].norm_sqr();
                    evec[ei] = Complex64::new(0.0, 0.0);
                }
            }
            for (fi, &(f, r, c)) in fs.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (ei, &e) in es.iter().enumerate() {
                    let u = model.f_bend(a_in, a_ex, a_in_b, a_ex_b, e, f);
                    acc += u * evec[ei];
                }
                let _ = fi;
                mat[r * dim + c] = acc * model.qdim(f).sqrt();
            }
        }
    }
    Ok(removed)
}

/// Result of an interferometry measurement.
#[derive(Clone, Debug)]
pub struct InterferometryOutcome {
    /// Charges in the observed class (singleton for fully distinguishing
    /// probes).
    pub class: Vec<Charge>,
    pub probability: f64,
}

impl InterferometryOutcome {
    /// The measured charge, for fully-distinguishing probes.
    pub fn charge(&self) -> Charge {
        debug_assert_eq!(self.class.len(), 1, "outcome class is not a singleton");
        self.class[0]
    }
}

enum ClassChoice<'a> {
    Sample(&'a mut Rng),
    Forced(usize),
}

fn interferometry_impl(
    rho: &AnyonicDensityMatrix,
    target: &MeasurementTarget,
    probe: &ProbeSpec,
    choice: ClassChoice<'_>,
) -> Result<(InterferometryOutcome, AnyonicDensityMatrix), MeasureError> {
    let model = rho.model().clone();
    let partition = charge_classes(&model, probe);
    let n_inside = target.subset.len();
    let m = rho.leaves().len();
    if n_inside == m {
        // Measuring every anyon: the projection below still applies, but
        // there is no exterior to decohere from.
        let (mut routed, (i, j), recipe) = route_compact(rho, target, 1)?;
        let info = routed.expose_segment(i, j)?;
        let dim = routed.dim();
        let totals: Vec<Charge> = (0..dim)
            .map(|r| info.total_value(routed.leaves(), routed.labels()[r].as_slice()))
            .collect();
        let mut class_probs = alloc::vec![0.0f64; partition.classes.len()];
        for r in 0..dim {
            class_probs[partition.class_of(totals[r])] += routed.mat()[r * dim + r].re;
        }
        let kappa = match choice {
            ClassChoice::Forced(k) => {
                if class_probs[k] <= 1e-12 {
                    return Err(MeasureError::ImpossibleOutcome);
                }
                k
            }
            ClassChoice::Sample(rng) => sample_index(&class_probs, rng),
        };
        let prob = class_probs[kappa];
        let mat = routed.mat_mut();
        for r in 0..dim {
            for c in 0..dim {
                if partition.class_of(totals[r]) != kappa || partition.class_of(totals[c]) != kappa {
                    mat[r * dim + c] = Complex64::new(0.0, 0.0);
                }
            }
        }
        routed.renormalize()?;
        routed.restore_segment(&info)?;
        let out = unroute(&routed, &recipe)?;
        return Ok((
            InterferometryOutcome { class: partition.classes[kappa].clone(), probability: prob },
            out,
        ));
    }

    // Route the inside anyons to the front, project the prefix onto a charge
    // class, decohere across the cut, un-route.
    let (mut routed, (_, j), recipe) = route_compact(rho, target, 1)?;
    debug_assert_eq!(j, n_inside);
    let suffix_info = routed.expose_segment(n_inside + 1, m)?;

    let dim = routed.dim();
    let a_in_of = |labels: &[Charge]| -> Charge {
        if n_inside == 1 {
            routed.leaves()[0]
        } else {
            labels[n_inside - 2]
        }
    };
    let totals: Vec<Charge> = (0..dim).map(|r| a_in_of(&routed.labels()[r])).collect();
    let mut class_probs = alloc::vec![0.0f64; partition.classes.len()];
    for r in 0..dim {
        class_probs[partition.class_of(totals[r])] += routed.mat()[r * dim + r].re;
    }
    let kappa = match choice {
        ClassChoice::Forced(k) => {
            if class_probs[k] <= 1e-12 {
                return Err(MeasureError::ImpossibleOutcome);
            }
            k
        }
        ClassChoice::Sample(rng) => sample_index(&class_probs, rng),
    };
    let prob = class_probs[kappa];

    {
        let mat = routed.mat_mut();
        for r in 0..dim {
            for c in 0..dim {
                if partition.class_of(totals[r]) != kappa || partition.class_of(totals[c]) != kappa {
                    mat[r * dim + c] = Complex64::new(0.0, 0.0);
                }
            }
        }
    }
    routed.renormalize()?;
    decohere_exposed(&mut routed, n_inside, &suffix_info, probe)?;
    routed.restore_segment(&suffix_info)?;
    let out = unroute(&routed, &recipe)?;
    Ok((
        InterferometryOutcome { class: partition.classes[kappa].clone(), probability: prob },
        out,
    ))
}

fn sample_index(probs: &[f64], rng: &mut Rng) -> usize {
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

/// Interferometry measurement of the target anyons in the asymptotic probe
/// limit: projection onto a monodromy charge class composed with decoherence
/// across the interferometer boundary.
pub fn interferometry(
    rho: &AnyonicDensityMatrix,
    target: &MeasurementTarget,
    probe: &ProbeSpec,
    rng: &mut Rng,
) -> Result<(InterferometryOutcome, AnyonicDensityMatrix), MeasureError> {
    interferometry_impl(rho, target, probe, ClassChoice::Sample(rng))
}

/// Interferometry with a forced outcome class (by representative charge).
pub fn interferometry_forced(
    rho: &AnyonicDensityMatrix,
    target: &MeasurementTarget,
    probe: &ProbeSpec,
    outcome: Charge,
) -> Result<(InterferometryOutcome, AnyonicDensityMatrix), MeasureError> {
    let partition = charge_classes(rho.model(), probe);
    let k = partition.class_of(outcome);
    interferometry_impl(rho, target, probe, ClassChoice::Forced(k))
}

/// Coefficient mass of probe-visible charge entanglement between the block
/// `i..=j` and the rest of the system: routes the block to the front and
/// reports what a decoherence cut there would remove. Zero iff the block
/// factorizes from everything else up to probe-invisible channels.
pub fn entanglement_weight(
    rho: &AnyonicDensityMatrix,
    i: usize,
    j: usize,
    probe: &ProbeSpec,
) -> Result<f64, MeasureError> {
    let m = rho.leaves().len();
    if i == 0 || i > j || j > m {
        return Err(MeasureError::BadTarget);
    }
    if j - i + 1 == m {
        return Ok(0.0);
    }
    let target = MeasurementTarget::new((i..=j).collect());
    let (mut routed, _, _) = route_compact(rho, &target, 1)?;
    let n_inside = j - i + 1;
    let info = routed.expose_segment(n_inside + 1, m)?;
    decohere_exposed(&mut routed, n_inside, &info, probe)
}
