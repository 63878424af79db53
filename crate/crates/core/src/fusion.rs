//! Canonical fusion-tree bases and anyonic density matrices.
//!
//! A basis state for `n` anyons is a left-to-right fusion chain: leaf charges
//! `a_1..a_n`, intermediate charges `x_2..x_{n-1}` (`x_t` is the collective
//! charge of leaves `1..t`) and the overall charge `f = x_n`. A density
//! matrix is a coefficient table over (ket chain, bra chain) pairs with equal
//! leaf charges and equal overall charge. The `1/d_f` weight of the
//! density-matrix normalization is folded into the stored coefficients, so
//! the quantum trace is the plain sum of diagonal entries.
//!
//! Internally a state may temporarily be re-expressed in a different fusion
//! order (a [`Shape`]); every public constructor returns the canonical chain
//! and every re-coupling is a composition of unitary elementary `F`-moves.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)] use num_traits::Float;
use rand::Rng as _;

use crate::linalg;
use crate::model::{AnyonModel, Charge};
use crate::{Complex, Rng};

/// One basis label of the canonical fusion chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionChain {
    pub leaves: Vec<Charge>,
    /// Intermediate charges `x_2 .. x_{n-1}` (empty for two leaves).
    pub intermediates: Vec<Charge>,
    pub overall: Charge,
}

/// Errors from fusion-space operations.
#[derive(Clone, Debug, PartialEq)]
pub enum FusionError {
    /// Operation requires at least two leaves.
    TooFewLeaves,
    /// Charge pair cannot fuse to the requested channel.
    InadmissibleChannel,
    /// Two states were built over different models.
    ModelMismatch,
    /// Leaf or position index out of range.
    IndexOutOfRange,
    /// Shapes or leaf charges incompatible.
    ShapeMismatch,
    /// A sub-state failed to factorize where required.
    NotFactorized { residual: f64 },
    /// Renormalization by a vanishing probability.
    ZeroWeight,
}

impl fmt::Display for FusionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionError::TooFewLeaves => write!(f, "state needs at least two anyons"),
            FusionError::InadmissibleChannel => write!(f, "inadmissible fusion channel"),
            FusionError::ModelMismatch => write!(f, "states belong to different models"),
            FusionError::IndexOutOfRange => write!(f, "index out of range"),
            FusionError::ShapeMismatch => write!(f, "incompatible shapes"),
            FusionError::NotFactorized { residual } => {
                write!(f, "subsystem does not factorize (residual {residual:.3e})")
            }
            FusionError::ZeroWeight => write!(f, "zero-probability renormalization"),
        }
    }
}

impl core::error::Error for FusionError {}

/// Source of one input to a fusion step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Src {
    Leaf(usize),
    Slot(usize),
}

/// A fusion order over `n` leaves: step `k` fuses its two sources into slot
/// `k`. Steps are topologically ordered (slot references point backwards)
/// and the final step's output is the overall charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Shape {
    pub steps: Vec<(Src, Src)>,
}

impl Shape {
    pub fn canonical(n: usize) -> Shape {
        debug_assert!(n >= 2);
        let mut steps = Vec::with_capacity(n - 1);
        steps.push((Src::Leaf(0), Src::Leaf(1)));
        for t in 2..n {
            steps.push((Src::Slot(t - 2), Src::Leaf(t)));
        }
        Shape { steps }
    }

    fn is_canonical(&self) -> bool {
        *self == Shape::canonical(self.steps.len() + 1)
    }
}

fn src_value(src: Src, leaves: &[Charge], labels: &[Charge]) -> Charge {
    match src {
        Src::Leaf(i) => leaves[i],
        Src::Slot(k) => labels[k],
    }
}

/// Enumerate all admissible label vectors of a shape, lexicographically.
fn enumerate_shape(model: &AnyonModel, leaves: &[Charge], shape: &Shape) -> Vec<Vec<Charge>> {
    fn rec(
        model: &AnyonModel,
        leaves: &[Charge],
        steps: &[(Src, Src)],
        k: usize,
        labels: &mut Vec<Charge>,
        out: &mut Vec<Vec<Charge>>,
    ) {
        if k == steps.len() {
            out.push(labels.clone());
            return;
        }
        let a = src_value(steps[k].0, leaves, labels);
        let b = src_value(steps[k].1, leaves, labels);
        for &c in model.fuse(a, b) {
            labels[k] = c;
            rec(model, leaves, steps, k + 1, labels, out);
        }
    }
    let mut out = Vec::new();
    let mut labels: Vec<Charge> = vec![Charge::VACUUM; shape.steps.len()];
    rec(model, leaves, &shape.steps, 0, &mut labels, &mut out);
    out
}

/// Direction of an elementary recoupling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum MoveDir {
    /// `((A x B) x C) -> (A x (B x C))`: steps `p: (A,B)`, `q: (Slot p, C)`
    /// become `p: (B,C)`, `q: (A, Slot p)`.
    Forward,
    /// The inverse.
    Backward,
}

/// Anyonic density matrix over a fusion-chain basis.
///
/// Coefficients are stored with the `1/d_f` normalization folded in: the
/// represented operator is `sum_{u,v} (C[u][v]/d_f) |u><v|` over orthonormal
/// chain kets, so [`Self::qtrace`] is the plain diagonal sum. Operations
/// return new values; a value is never mutated after it is handed out.
#[derive(Clone)]
pub struct AnyonicDensityMatrix {
    model: Arc<AnyonModel>,
    leaves: Vec<Charge>,
    shape: Shape,
    /// Sorted label vectors (one slot per fusion step; the last slot is the
    /// overall charge).
    labels: Vec<Vec<Charge>>,
    /// Row-major `dim x dim` coefficients.
    mat: Vec<Complex>,
}

impl fmt::Debug for AnyonicDensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnyonicDensityMatrix")
            .field("model", &self.model.name())
            .field("leaves", &self.leaves)
            .field("dim", &self.labels.len())
            .finish()
    }
}

/// All admissible canonical chains for the given leaves, lexicographically
/// ordered by `(x_2, ..., x_{n-1}, f)`; optionally filtered to one overall
/// charge.
pub fn enumerate_basis(
    model: &AnyonModel,
    leaves: &[Charge],
    overall: Option<Charge>,
) -> Vec<FusionChain> {
    if leaves.len() < 2 {
        return Vec::new();
    }
    let shape = Shape::canonical(leaves.len());
    enumerate_shape(model, leaves, &shape)
        .into_iter()
        .filter(|l| overall.is_none_or(|f| *l.last().unwrap() == f))
        .map(|l| {
            let (f, inner) = l.split_last().unwrap();
            FusionChain {
                leaves: leaves.to_vec(),
                intermediates: inner.to_vec(),
                overall: *f,
            }
        })
        .collect()
}

impl AnyonicDensityMatrix {
    fn empty(model: Arc<AnyonModel>, leaves: Vec<Charge>) -> Result<Self, FusionError> {
        if leaves.len() < 2 {
            return Err(FusionError::TooFewLeaves);
        }
        let shape = Shape::canonical(leaves.len());
        let labels = enumerate_shape(&model, &leaves, &shape);
        let dim = labels.len();
        Ok(AnyonicDensityMatrix {
            model,
            leaves,
            shape,
            labels,
            mat: vec![Complex64::new(0.0, 0.0); dim * dim],
        })
    }

    /// The maximally entangled pair `|a, abar; 0><a, abar; 0|`.
    pub fn vacuum_pair(model: Arc<AnyonModel>, a: Charge) -> Result<Self, FusionError> {
        Self::resource_pair(model, a, Charge::VACUUM)
    }

    /// The pair `(1/d_e) |a, abar; e><a, abar; e|` in a definite channel `e`.
    pub fn resource_pair(model: Arc<AnyonModel>, a: Charge, e: Charge) -> Result<Self, FusionError> {
        if !model.n_fuse(a, model.dual(a), e) {
            return Err(FusionError::InadmissibleChannel);
        }
        let leaves = vec![a, model.dual(a)];
        let mut rho = Self::empty(model, leaves)?;
        let idx = rho.index_of(&[e]).expect("channel admissible");
        let dim = rho.dim();
        rho.mat[idx * dim + idx] = Complex64::new(1.0, 0.0);
        Ok(rho)
    }

    /// Construct a state from explicit canonical-chain coefficients.
    ///
    /// Chains are given as `[x_2, ..., x_{n-1}, f]`; ket and bra of every
    /// entry must share the overall charge.
    pub fn from_entries(
        model: Arc<AnyonModel>,
        leaves: Vec<Charge>,
        entries: &[(Vec<Charge>, Vec<Charge>, Complex)],
    ) -> Result<Self, FusionError> {
        let mut rho = Self::empty(model, leaves)?;
        let dim = rho.dim();
        for (ket, bra, v) in entries {
            if ket.last() != bra.last() {
                return Err(FusionError::ShapeMismatch);
            }
            let r = rho.index_of(ket).ok_or(FusionError::InadmissibleChannel)?;
            let c = rho.index_of(bra).ok_or(FusionError::InadmissibleChannel)?;
            rho.mat[r * dim + c] = *v;
        }
        Ok(rho)
    }

    pub fn model(&self) -> &Arc<AnyonModel> {
        &self.model
    }

    pub fn leaves(&self) -> &[Charge] {
        &self.leaves
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub(crate) fn labels(&self) -> &[Vec<Charge>] {
        &self.labels
    }

    pub(crate) fn mat(&self) -> &[Complex] {
        &self.mat
    }

    pub(crate) fn mat_mut(&mut self) -> &mut [Complex] {
        &mut self.mat
    }

    /// Chains of the canonical basis in storage order.
    pub fn basis(&self) -> Vec<FusionChain> {
        self.assert_canonical();
        self.labels
            .iter()
            .map(|l| {
                let (f, inner) = l.split_last().unwrap();
                FusionChain {
                    leaves: self.leaves.clone(),
                    intermediates: inner.to_vec(),
                    overall: *f,
                }
            })
            .collect()
    }

    pub(crate) fn index_of(&self, labels: &[Charge]) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_slice().cmp(labels)).ok()
    }

    /// Stored coefficient for a (ket, bra) chain pair, each given as
    /// `[x_2, ..., x_{n-1}, f]`.
    pub fn coefficient(&self, ket: &[Charge], bra: &[Charge]) -> Complex {
        match (self.index_of(ket), self.index_of(bra)) {
            (Some(r), Some(c)) => self.mat[r * self.dim() + c],
            _ => Complex64::new(0.0, 0.0),
        }
    }

    /// Overall charge of basis element `i` (the last slot).
    #[inline]
    pub(crate) fn overall_of(&self, i: usize) -> Charge {
        *self.labels[i].last().unwrap()
    }

    /// Quantum trace (sum of diagonal coefficients in the stored convention).
    pub fn qtrace(&self) -> f64 {
        let dim = self.dim();
        (0..dim).map(|i| self.mat[i * dim + i].re).sum()
    }

    /// Maximum Hermiticity violation `max |C[u][v] - conj(C[v][u])|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for r in 0..dim {
            for c in 0..dim {
                worst = worst.max((self.mat[r * dim + c] - self.mat[c * dim + r].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue over all overall-charge blocks (negative values
    /// beyond tolerance indicate a non-physical state).
    pub fn min_eigenvalue(&self) -> f64 {
        let mut min = f64::INFINITY;
        for f in self.model.charges() {
            let idx: Vec<usize> = (0..self.dim()).filter(|&i| self.overall_of(i) == f).collect();
            if idx.is_empty() {
                continue;
            }
            let dim = self.dim();
            let mut sub = Vec::with_capacity(idx.len() * idx.len());
            for &r in &idx {
                for &c in &idx {
                    sub.push(self.mat[r * dim + c]);
                }
            }
            for ev in linalg::hermitian_eigenvalues(&sub, idx.len()) {
                min = min.min(ev);
            }
        }
        min
    }

    /// Renormalize so the quantum trace is 1.
    pub(crate) fn renormalize(&mut self) -> Result<(), FusionError> {
        let t = self.qtrace();
        if t.abs() < 1e-300 {
            return Err(FusionError::ZeroWeight);
        }
        let inv = 1.0 / t;
        for v in &mut self.mat {
            *v *= inv;
        }
        Ok(())
    }

    pub(crate) fn assert_canonical(&self) {
        debug_assert!(self.shape.is_canonical(), "state must be in the canonical basis");
    }

    /// Apply one elementary recoupling in place.
    pub(crate) fn reassoc(&mut self, p: usize, q: usize, dir: MoveDir) -> Result<(), FusionError> {
        let steps = &self.shape.steps;
        if p >= steps.len() || q >= steps.len() || p >= q {
            return Err(FusionError::IndexOutOfRange);
        }
        let (a_src, b_src, c_src) = match dir {
            MoveDir::Forward => {
                if steps[q].0 != Src::Slot(p) {
                    return Err(FusionError::ShapeMismatch);
                }
                (steps[p].0, steps[p].1, steps[q].1)
            }
            MoveDir::Backward => {
                if steps[q].1 != Src::Slot(p) {
                    return Err(FusionError::ShapeMismatch);
                }
                (steps[q].0, steps[p].0, steps[p].1)
            }
        };
        let mut new_shape = self.shape.clone();
        match dir {
            MoveDir::Forward => {
                new_shape.steps[p] = (b_src, c_src);
                new_shape.steps[q] = (a_src, Src::Slot(p));
            }
            MoveDir::Backward => {
                new_shape.steps[p] = (a_src, b_src);
                new_shape.steps[q] = (Src::Slot(p), c_src);
            }
        }

        let new_labels = enumerate_shape(&self.model, &self.leaves, &new_shape);
        let old_dim = self.labels.len();
        let new_dim = new_labels.len();
        let find = |labels: &[Vec<Charge>], key: &[Charge]| -> usize {
            labels
                .binary_search_by(|l| l.as_slice().cmp(key))
                .expect("admissible target label")
        };

        // Sparse transform rows: targets of each old basis element.
        let mut rows: Vec<Vec<(usize, Complex)>> = Vec::with_capacity(old_dim);
        let mut key = Vec::new();
        for l in &self.labels {
            let av = src_value(a_src, &self.leaves, l);
            let bv = src_value(b_src, &self.leaves, l);
            let cv = src_value(c_src, &self.leaves, l);
            let w = l[q];
            let mut targets = Vec::new();
            match dir {
                MoveDir::Forward => {
                    for &vp in self.model.fuse(bv, cv) {
                        if !self.model.n_fuse(av, vp, w) {
                            continue;
                        }
                        let amp = self.model.f_symbol(av, bv, cv, w, l[p], vp);
                        if amp.norm_sqr() == 0.0 {
                            continue;
                        }
                        key.clear();
                        key.extend_from_slice(l);
                        key[p] = vp;
                        targets.push((find(&new_labels, &key), amp));
                    }
                }
                MoveDir::Backward => {
                    for &vp in self.model.fuse(av, bv) {
                        if !self.model.n_fuse(vp, cv, w) {
                            continue;
                        }
                        let amp = self.model.f_symbol(av, bv, cv, w, vp, l[p]).conj();
                        if amp.norm_sqr() == 0.0 {
                            continue;
                        }
                        key.clear();
                        key.extend_from_slice(l);
                        key[p] = vp;
                        targets.push((find(&new_labels, &key), amp));
                    }
                }
            }
            rows.push(targets);
        }

        // M' = A M A^dagger as row ops followed by column ops.
        let mut t = vec![Complex64::new(0.0, 0.0); new_dim * old_dim];
        for (r, targets) in rows.iter().enumerate() {
            for &(r2, amp) in targets {
                let src = &self.mat[r * old_dim..(r + 1) * old_dim];
                let dst = &mut t[r2 * old_dim..(r2 + 1) * old_dim];
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d += amp * s;
                }
            }
        }
        let mut out = vec![Complex64::new(0.0, 0.0); new_dim * new_dim];
        for (c, targets) in rows.iter().enumerate() {
            for &(c2, amp) in targets {
                let amp = amp.conj();
                for r2 in 0..new_dim {
                    out[r2 * new_dim + c2] += t[r2 * old_dim + c] * amp;
                }
            }
        }

        self.shape = new_shape;
        self.labels = new_labels;
        self.mat = out;
        Ok(())
    }

    /// Recouple the internal edge at `position` (1-based, `1..=n-2`): the
    /// canonical pattern `((x_{pos} x a_{pos+1}) x a_{pos+2})` becomes
    /// `(x_{pos} x (a_{pos+1} x a_{pos+2}))`. With `inverse`, undo it.
    pub fn apply_f_basis_change(&self, position: usize, inverse: bool) -> Result<Self, FusionError> {
        let n = self.leaves.len();
        if position == 0 || position > n - 2 {
            return Err(FusionError::IndexOutOfRange);
        }
        let mut out = self.clone();
        let dir = if inverse { MoveDir::Backward } else { MoveDir::Forward };
        out.reassoc(position - 1, position, dir)?;
        Ok(out)
    }

    /// Expose the collective charge of leaves `i..=j` (1-based) as an
    /// explicit slot. No-op when the charge is already a slot or a leaf
    /// (`i == 1` or `i == j`).
    pub(crate) fn expose_segment(&mut self, i: usize, j: usize) -> Result<SegmentInfo, FusionError> {
        let n = self.leaves.len();
        if i == 0 || j > n || i > j {
            return Err(FusionError::IndexOutOfRange);
        }
        if i == 1 {
            return Ok(SegmentInfo {
                i,
                j,
                total: if j == 1 { Src::Leaf(0) } else { Src::Slot(j - 2) },
                moved: false,
            });
        }
        if i == j {
            return Ok(SegmentInfo { i, j, total: Src::Leaf(i - 1), moved: false });
        }
        for t in (i + 1)..=j {
            self.reassoc(t - 3, t - 2, MoveDir::Forward)?;
        }
        Ok(SegmentInfo { i, j, total: Src::Slot(j - 3), moved: true })
    }

    /// Undo [`Self::expose_segment`].
    pub(crate) fn restore_segment(&mut self, info: &SegmentInfo) -> Result<(), FusionError> {
        if !info.moved {
            return Ok(());
        }
        for t in ((info.i + 1)..=info.j).rev() {
            self.reassoc(t - 3, t - 2, MoveDir::Backward)?;
        }
        Ok(())
    }

    /// Braid leaves `i` and `i+1` (1-based). `ccw` exchanges them
    /// counterclockwise (the left strand ends up passing over the right
    /// one); the clockwise braid is the exact inverse.
    pub fn apply_braid(&self, i: usize, ccw: bool) -> Result<Self, FusionError> {
        self.assert_canonical();
        let n = self.leaves.len();
        if i == 0 || i >= n {
            return Err(FusionError::IndexOutOfRange);
        }
        let mut out = self.clone();
        let slot = if i >= 2 {
            out.reassoc(i - 2, i - 1, MoveDir::Forward)?;
            i - 2
        } else {
            0
        };
        let a = out.leaves[i - 1];
        let b = out.leaves[i];
        // Diagonal R-phase in the pair-channel basis, then swap the leaves.
        let dim = out.dim();
        let phases: Vec<Complex> = out
            .labels
            .iter()
            .map(|l| {
                let c = l[slot];
                if ccw {
                    out.model.r_symbol(a, b, c)
                } else {
                    out.model.r_symbol(b, a, c).conj()
                }
            })
            .collect();
        for r in 0..dim {
            for c in 0..dim {
                out.mat[r * dim + c] *= phases[r] * phases[c].conj();
            }
        }
        out.leaves.swap(i - 1, i);
        if i >= 2 {
            out.reassoc(i - 2, i - 1, MoveDir::Backward)?;
        } else {
            debug_assert_eq!(enumerate_shape(&out.model, &out.leaves, &out.shape), out.labels);
        }
        Ok(out)
    }

    /// Tensor product: leaves concatenated, coefficients recoupled into the
    /// canonical chain. The quantum trace is multiplicative.
    pub fn tensor(&self, other: &Self) -> Result<Self, FusionError> {
        if !Arc::ptr_eq(&self.model, &other.model) && self.model.spec() != other.model.spec() {
            return Err(FusionError::ModelMismatch);
        }
        self.assert_canonical();
        other.assert_canonical();
        let model = self.model.clone();
        let n1 = self.leaves.len();
        let n2 = other.leaves.len();
        let m = n1 + n2;
        let mut leaves = self.leaves.clone();
        leaves.extend_from_slice(&other.leaves);

        // Joint shape with the second factor exposed as a suffix segment:
        // slots 0..n1-1 hold the first factor's labels, slots n1-1..m-2 the
        // second factor's, slot m-2 the joint overall charge.
        let mut shell = AnyonicDensityMatrix {
            model: model.clone(),
            leaves: leaves.clone(),
            shape: Shape::canonical(m),
            labels: Vec::new(),
            mat: Vec::new(),
        };
        let info = shell.expose_segment(n1 + 1, m)?;
        debug_assert_eq!(info.total, Src::Slot(m - 3));
        let shape = shell.shape.clone();

        let labels = enumerate_shape(&model, &leaves, &shape);
        let dim = labels.len();
        let mut mat = vec![Complex64::new(0.0, 0.0); dim * dim];
        let index_of = |key: &[Charge]| -> usize {
            labels
                .binary_search_by(|l| l.as_slice().cmp(key))
                .expect("admissible joint label")
        };

        let d1 = self.dim();
        let d2 = other.dim();
        let mut kkey = vec![Charge::VACUUM; m - 1];
        let mut bkey = vec![Charge::VACUUM; m - 1];
        for r1 in 0..d1 {
            let f1 = self.overall_of(r1);
            for c1 in 0..d1 {
                let v1 = self.mat[r1 * d1 + c1];
                if v1.norm_sqr() == 0.0 || self.overall_of(c1) != f1 {
                    continue;
                }
                for r2 in 0..d2 {
                    let f2 = other.overall_of(r2);
                    for c2 in 0..d2 {
                        let v2 = other.mat[r2 * d2 + c2];
                        if v2.norm_sqr() == 0.0 || other.overall_of(c2) != f2 {
                            continue;
                        }
                        for &ff in model.fuse(f1, f2) {
                            let weight = model.qdim(ff) / (model.qdim(f1) * model.qdim(f2));
                            kkey[..n1 - 1].copy_from_slice(&self.labels[r1]);
                            kkey[n1 - 1..m - 2].copy_from_slice(&other.labels[r2]);
                            kkey[m - 2] = ff;
                            bkey[..n1 - 1].copy_from_slice(&self.labels[c1]);
                            bkey[n1 - 1..m - 2].copy_from_slice(&other.labels[c2]);
                            bkey[m - 2] = ff;
                            let rr = index_of(&kkey);
                            let cc = index_of(&bkey);
                            mat[rr * dim + cc] += v1 * v2 * weight;
                        }
                    }
                }
            }
        }

        let mut out = AnyonicDensityMatrix { model, leaves, shape, labels, mat };
        out.restore_segment(&info)?;
        debug_assert!(out.shape.is_canonical());
        Ok(out)
    }

    /// Trace distance `(1/2) qTr|rho1 - rho2|`, computed blockwise over the
    /// overall charge.
    pub fn trace_distance(&self, other: &Self) -> Result<f64, FusionError> {
        if self.leaves != other.leaves {
            return Err(FusionError::ShapeMismatch);
        }
        self.assert_canonical();
        other.assert_canonical();
        debug_assert_eq!(self.labels, other.labels);
        let dim = self.dim();
        let mut total = 0.0;
        for f in self.model.charges() {
            let idx: Vec<usize> = (0..dim).filter(|&i| self.overall_of(i) == f).collect();
            if idx.is_empty() {
                continue;
            }
            let mut sub = Vec::with_capacity(idx.len() * idx.len());
            for &r in &idx {
                for &c in &idx {
                    sub.push(self.mat[r * dim + c] - other.mat[r * dim + c]);
                }
            }
            total += linalg::hermitian_trace_norm(&sub, idx.len());
        }
        Ok(0.5 * total)
    }

    /// Canonical text listing `(ket chain | bra chain | re | im)` of nonzero
    /// coefficients, sorted lexicographically, 12 significant digits.
    pub fn snapshot(&self) -> String {
        self.assert_canonical();
        let dim = self.dim();
        let chain_str = |l: &[Charge]| -> String {
            let parts: Vec<&str> = l.iter().map(|&c| self.model.charge_name(c)).collect();
            parts.join(",")
        };
        let mut out = String::new();
        for r in 0..dim {
            for c in 0..dim {
                let v = self.mat[r * dim + c];
                if v.norm() > 0.0 {
                    out.push_str(&format!(
                        "{} | {} | {:.11e} | {:.11e}\n",
                        chain_str(&self.labels[r]),
                        chain_str(&self.labels[c]),
                        v.re,
                        v.im
                    ));
                }
            }
        }
        out
    }
}

/// Bookkeeping for an exposed segment.
#[derive(Clone, Debug)]
pub(crate) struct SegmentInfo {
    pub i: usize,
    pub j: usize,
    /// Where the segment's collective charge lives.
    pub total: Src,
    moved: bool,
}

impl SegmentInfo {
    pub fn total_value(&self, leaves: &[Charge], labels: &[Charge]) -> Charge {
        src_value(self.total, leaves, labels)
    }
}

/// Random mixed state over the given leaves: a normalized `G G^dagger` per
/// overall-charge block with random block weights.
pub fn random_density_matrix(
    model: Arc<AnyonModel>,
    leaves: &[Charge],
    rng: &mut Rng,
) -> Result<AnyonicDensityMatrix, FusionError> {
    let mut rho = AnyonicDensityMatrix::empty(model.clone(), leaves.to_vec())?;
    let dim = rho.dim();
    let mut blocks: Vec<(Vec<usize>, f64)> = Vec::new();
    for f in model.charges() {
        let idx: Vec<usize> = (0..dim).filter(|&i| rho.overall_of(i) == f).collect();
        if !idx.is_empty() {
            blocks.push((idx, rng.random::<f64>()));
        }
    }
    let wsum: f64 = blocks.iter().map(|(_, w)| w).sum();
    for (idx, w) in &blocks {
        let k = idx.len();
        let mut g = vec![Complex64::new(0.0, 0.0); k * k];
        for v in &mut g {
            *v = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
        let mut block = vec![Complex64::new(0.0, 0.0); k * k];
        for r in 0..k {
            for c in 0..k {
                let mut acc = Complex64::new(0.0, 0.0);
                for l in 0..k {
                    acc += g[r * k + l] * g[c * k + l].conj();
                }
                block[r * k + c] = acc;
            }
        }
        let tr: f64 = (0..k).map(|i| block[i * k + i].re).sum();
        let scale = (w / wsum) / tr;
        for (bi, &i) in idx.iter().enumerate() {
            for (bj, &j) in idx.iter().enumerate() {
                rho.mat[i * dim + j] = block[bi * k + bj] * scale;
            }
        }
    }
    Ok(rho)
}

/// Random pure state with a definite overall charge.
pub fn random_pure_state(
    model: Arc<AnyonModel>,
    leaves: &[Charge],
    overall: Charge,
    rng: &mut Rng,
) -> Result<AnyonicDensityMatrix, FusionError> {
    let mut rho = AnyonicDensityMatrix::empty(model, leaves.to_vec())?;
    let dim = rho.dim();
    let idx: Vec<usize> = (0..dim).filter(|&i| rho.overall_of(i) == overall).collect();
    if idx.is_empty() {
        return Err(FusionError::InadmissibleChannel);
    }
    let mut psi: Vec<Complex> = (0..idx.len())
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for v in &mut psi {
        *v /= norm;
    }
    for (bi, &i) in idx.iter().enumerate() {
        for (bj, &j) in idx.iter().enumerate() {
            rho.mat[i * dim + j] = psi[bi] * psi[bj].conj();
        }
    }
    Ok(rho)
}
