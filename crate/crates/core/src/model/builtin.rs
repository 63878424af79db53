//! Hard-coded Ising and Fibonacci tables.
//!
//! Only the non-trivial `F` and `R` symbols are listed explicitly; every
//! other symbol is 1 when its vertices are admissible and 0 otherwise.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] use num_traits::Float;

use super::{AnyonModel, Charge, FBlock, ModelSpec};
use crate::Complex;

/// Fill `fuse_list`, default-`1` F-blocks and default-`1` R-symbols from a
/// fusion table, then let the caller overwrite the non-trivial entries.
pub(super) struct TableBuilder {
    pub n: usize,
    pub nfuse: Vec<bool>,
    pub fuse_list: Vec<Vec<Charge>>,
    pub fsym: Vec<FBlock>,
    pub rsym: Vec<Complex>,
}

impl TableBuilder {
    pub fn new(n: usize, fusion: impl Fn(Charge, Charge, Charge) -> bool) -> TableBuilder {
        let mut nfuse = vec![false; n * n * n];
        let mut fuse_list = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ca, cb, cc) = (Charge(a as u8), Charge(b as u8), Charge(c as u8));
                    if fusion(ca, cb, cc) {
                        nfuse[(a * n + b) * n + c] = true;
                        fuse_list[a * n + b].push(cc);
                    }
                }
            }
        }
        let mut builder = TableBuilder {
            n,
            nfuse,
            fuse_list,
            fsym: Vec::new(),
            rsym: Vec::new(),
        };
        builder.default_f();
        builder.default_r();
        builder
    }

    fn admissible(&self, a: Charge, b: Charge, c: Charge) -> bool {
        self.nfuse[(a.idx() * self.n + b.idx()) * self.n + c.idx()]
    }

    /// F-blocks with every admissible entry set to 1.
    fn default_f(&mut self) {
        let n = self.n;
        let mut fsym = Vec::with_capacity(n * n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (ca, cb, cc, cd) =
                            (Charge(a as u8), Charge(b as u8), Charge(c as u8), Charge(d as u8));
                        let es: Vec<Charge> = (0..n as u8)
                            .map(Charge)
                            .filter(|&e| self.admissible(ca, cb, e) && self.admissible(e, cc, cd))
                            .collect();
                        let fs: Vec<Charge> = (0..n as u8)
                            .map(Charge)
                            .filter(|&f| self.admissible(cb, cc, f) && self.admissible(ca, f, cd))
                            .collect();
                        let mat = vec![Complex64::new(1.0, 0.0); es.len() * fs.len()];
                        fsym.push(FBlock { es, fs, mat });
                    }
                }
            }
        }
        self.fsym = fsym;
    }

    /// R-symbols with every admissible entry set to 1.
    fn default_r(&mut self) {
        let n = self.n;
        let mut rsym = vec![Complex64::new(0.0, 0.0); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.nfuse[(a * n + b) * n + c] {
                        rsym[(a * n + b) * n + c] = Complex64::new(1.0, 0.0);
                    }
                }
            }
        }
        self.rsym = rsym;
    }

    pub fn set_f(&mut self, a: Charge, b: Charge, c: Charge, d: Charge, e: Charge, f: Charge, v: Complex) {
        let n = self.n;
        let block = &mut self.fsym[((a.idx() * n + b.idx()) * n + c.idx()) * n + d.idx()];
        let i = block.es.iter().position(|&x| x == e).expect("inadmissible e");
        let j = block.fs.iter().position(|&x| x == f).expect("inadmissible f");
        let cols = block.fs.len();
        block.mat[i * cols + j] = v;
    }

    pub fn set_r(&mut self, a: Charge, b: Charge, c: Charge, v: Complex) {
        let n = self.n;
        self.rsym[(a.idx() * n + b.idx()) * n + c.idx()] = v;
    }
}

/// Assemble the final model from tables plus closed-form derived data.
#[allow(clippy::too_many_arguments)]
pub(super) fn assemble(
    spec: ModelSpec,
    names: Vec<String>,
    builder: TableBuilder,
    dual: Vec<Charge>,
    qdim: Vec<f64>,
    twist: Vec<Complex>,
    smat: Vec<Complex>,
) -> AnyonModel {
    let n = builder.n;
    let total_qdim = qdim.iter().map(|d| d * d).sum::<f64>().sqrt();
    let mut mono = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..n {
        for b in 0..n {
            mono[a * n + b] = smat[a * n + b] * smat[0] / (smat[b] * smat[a * n]);
        }
    }
    AnyonModel {
        spec,
        names,
        n,
        dual,
        nfuse: builder.nfuse,
        fuse_list: builder.fuse_list,
        qdim,
        total_qdim,
        rsym: builder.rsym,
        fsym: builder.fsym,
        twist,
        smat,
        mono,
    }
}

/// Ising model: charges `{I, σ, ψ}`.
pub(super) fn ising() -> AnyonModel {
    let (i, s, p) = (Charge(0), Charge(1), Charge(2));
    let fusion = move |a: Charge, b: Charge, c: Charge| -> bool {
        // I x a = a; σ x σ = I + ψ; σ x ψ = σ; ψ x ψ = I.
        if a == i {
            return b == c;
        }
        if b == i {
            return a == c;
        }
        match (a, b) {
            (x, y) if x == s && y == s => c == i || c == p,
            (x, y) if (x == s && y == p) || (x == p && y == s) => c == s,
            (x, y) if x == p && y == p => c == i,
            _ => false,
        }
    };
    let mut t = TableBuilder::new(3, fusion);

    let h = 1.0 / 2.0f64.sqrt();
    // [F_σ^{σσσ}]_{ef} over e, f in {I, ψ}.
    t.set_f(s, s, s, s, i, i, Complex::new(h, 0.0));
    t.set_f(s, s, s, s, i, p, Complex::new(h, 0.0));
    t.set_f(s, s, s, s, p, i, Complex::new(h, 0.0));
    t.set_f(s, s, s, s, p, p, Complex::new(-h, 0.0));
    // [F_ψ^{σψσ}]_{σσ} = [F_σ^{ψσψ}]_{σσ} = -1.
    t.set_f(s, p, s, p, s, s, Complex::new(-1.0, 0.0));
    t.set_f(p, s, p, s, s, s, Complex::new(-1.0, 0.0));

    t.set_r(s, s, i, Complex::from_polar(1.0, -PI / 8.0));
    t.set_r(s, s, p, Complex::from_polar(1.0, 3.0 * PI / 8.0));
    t.set_r(s, p, s, Complex::new(0.0, -1.0));
    t.set_r(p, s, s, Complex::new(0.0, -1.0));
    t.set_r(p, p, i, Complex::new(-1.0, 0.0));

    let names = vec![String::from("I"), String::from("σ"), String::from("ψ")];
    let dual = vec![i, s, p];
    let qdim = vec![1.0, 2.0f64.sqrt(), 1.0];
    let twist = vec![
        Complex::new(1.0, 0.0),
        Complex::from_polar(1.0, PI / 8.0),
        Complex::new(-1.0, 0.0),
    ];
    let r2 = 2.0f64.sqrt();
    let smat: Vec<Complex> = [
        [1.0, r2, 1.0],
        [r2, 0.0, -r2],
        [1.0, -r2, 1.0],
    ]
    .iter()
    .flatten()
    .map(|&x| Complex::new(x / 2.0, 0.0))
    .collect();

    assemble(ModelSpec::Ising, names, t, dual, qdim, twist, smat)
}

/// Fibonacci model: charges `{I, ε}`. `conj` builds the mirror theory with
/// complex-conjugated `R`-symbols and twists.
pub(super) fn fib(conj: bool) -> AnyonModel {
    let (i, e) = (Charge(0), Charge(1));
    let fusion = move |a: Charge, b: Charge, c: Charge| -> bool {
        if a == i {
            return b == c;
        }
        if b == i {
            return a == c;
        }
        // ε x ε = I + ε.
        true
    };
    let mut t = TableBuilder::new(2, fusion);

    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let pi1 = 1.0 / phi;
    let pih = 1.0 / phi.sqrt();
    t.set_f(e, e, e, e, i, i, Complex::new(pi1, 0.0));
    t.set_f(e, e, e, e, i, e, Complex::new(pih, 0.0));
    t.set_f(e, e, e, e, e, i, Complex::new(pih, 0.0));
    t.set_f(e, e, e, e, e, e, Complex::new(-pi1, 0.0));

    let sign = if conj { 1.0 } else { -1.0 };
    t.set_r(e, e, i, Complex::from_polar(1.0, sign * 4.0 * PI / 5.0));
    t.set_r(e, e, e, Complex::from_polar(1.0, -sign * 3.0 * PI / 5.0));

    let names = vec![String::from("I"), String::from("ε")];
    let dual = vec![i, e];
    let qdim = vec![1.0, phi];
    let twist = vec![
        Complex::new(1.0, 0.0),
        Complex::from_polar(1.0, -sign * 4.0 * PI / 5.0),
    ];
    let norm = 1.0 / (phi + 2.0).sqrt();
    let smat: Vec<Complex> = [[1.0, phi], [phi, -1.0]]
        .iter()
        .flatten()
        .map(|&x| Complex::new(x * norm, 0.0))
        .collect();

    let spec = if conj { ModelSpec::FibConj } else { ModelSpec::Fib };
    assemble(spec, names, t, dual, qdim, twist, smat)
}
