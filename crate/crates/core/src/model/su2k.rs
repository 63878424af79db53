//! SU(2)_k data built from q-deformed recoupling theory.
//!
//! Integers `n` are replaced by `[n]_q = (q^{n/2} - q^{-n/2})/(q^{1/2} - q^{-1/2})`
//! with `q = e^{i 2π/(k+2)}`, so `[n]_q = sin(nπ/(k+2)) / sin(π/(k+2))`.
//! Spins are handled internally as doubled integers to keep the arithmetic
//! exact.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] use num_traits::Float;

use super::builtin::{assemble, TableBuilder};
use super::{AnyonModel, Charge, ModelSpec};
use crate::Complex;

/// The q-deformed integer `[n]_q` at level `k`.
pub fn q_number(n: u32, k: u32) -> f64 {
    let t = PI / (k as f64 + 2.0);
    (n as f64 * t).sin() / t.sin()
}

fn q_factorial(n: i64, k: u32) -> f64 {
    debug_assert!(n >= 0, "q-factorial of negative argument");
    let mut acc = 1.0;
    for m in 1..=n {
        acc *= q_number(m as u32, k);
    }
    acc
}

/// Triangle admissibility at level `k`, on doubled spins: `|a-b| <= c <= a+b`,
/// `a+b+c` even, `a+b+c <= 2k`.
fn triangle_ok(ta: i64, tb: i64, tc: i64, k: u32) -> bool {
    tc >= (ta - tb).abs() && tc <= ta + tb && (ta + tb + tc) % 2 == 0 && ta + tb + tc <= 2 * k as i64
}

/// The triangle factor `Δ(j1, j2, j3)` on doubled spins.
fn delta(t1: i64, t2: i64, t3: i64, k: u32) -> f64 {
    let a = (-t1 + t2 + t3) / 2;
    let b = (t1 - t2 + t3) / 2;
    let c = (t1 + t2 - t3) / 2;
    let d = (t1 + t2 + t3) / 2 + 1;
    (q_factorial(a, k) * q_factorial(b, k) * q_factorial(c, k) / q_factorial(d, k)).sqrt()
}

fn q_6j_doubled(tj1: i64, tj2: i64, tj12: i64, tj3: i64, tj: i64, tj23: i64, k: u32) -> f64 {
    if !triangle_ok(tj1, tj2, tj12, k)
        || !triangle_ok(tj12, tj3, tj, k)
        || !triangle_ok(tj2, tj3, tj23, k)
        || !triangle_ok(tj1, tj23, tj, k)
    {
        return 0.0;
    }
    let pref = delta(tj1, tj2, tj12, k)
        * delta(tj12, tj3, tj, k)
        * delta(tj2, tj3, tj23, k)
        * delta(tj1, tj23, tj, k);

    // Everything below is in undoubled (integer) units.
    let t1 = (tj1 + tj2 + tj12) / 2;
    let t2 = (tj12 + tj3 + tj) / 2;
    let t3 = (tj2 + tj3 + tj23) / 2;
    let t4 = (tj1 + tj23 + tj) / 2;
    let s5 = (tj1 + tj2 + tj3 + tj) / 2;
    let s6 = (tj1 + tj12 + tj3 + tj23) / 2;
    let s7 = (tj2 + tj12 + tj + tj23) / 2;

    let z_min = t1.max(t2).max(t3).max(t4);
    let z_max = s5.min(s6).min(s7);
    let mut sum = 0.0;
    for z in z_min..=z_max {
        let sign = if z % 2 == 0 { 1.0 } else { -1.0 };
        let num = q_factorial(z + 1, k);
        let den = q_factorial(z - t1, k)
            * q_factorial(z - t2, k)
            * q_factorial(z - t3, k)
            * q_factorial(z - t4, k)
            * q_factorial(s5 - z, k)
            * q_factorial(s6 - z, k)
            * q_factorial(s7 - z, k);
        sum += sign * num / den;
    }
    pref * sum
}

/// q-deformed 6j-symbol `{j1 j2 j12; j3 j j23}_q` at level `k`.
///
/// Spins are non-negative half-integers. Inadmissible labels give 0.
pub fn q_6j(j1: f64, j2: f64, j12: f64, j3: f64, j: f64, j23: f64, k: u32) -> f64 {
    let dbl = |x: f64| -> i64 {
        let t = (2.0 * x).round();
        debug_assert!((2.0 * x - t).abs() < 1e-9, "spin must be a half-integer");
        t as i64
    };
    q_6j_doubled(dbl(j1), dbl(j2), dbl(j12), dbl(j3), dbl(j), dbl(j23), k)
}

fn charge_name(tj: i64) -> String {
    if tj % 2 == 0 {
        format!("{}", tj / 2)
    } else {
        format!("{tj}/2")
    }
}

/// Build the SU(2)_k model for `1 <= k <= 16`.
pub(super) fn build(k: u32) -> AnyonModel {
    let n = k as usize + 1; // charges j = 0, 1/2, ..., k/2
    let kk = k as i64;
    let t = PI / (k as f64 + 2.0);

    // Charge index i holds doubled spin tj = i.
    let fusion = move |a: Charge, b: Charge, c: Charge| -> bool {
        triangle_ok(a.idx() as i64, b.idx() as i64, c.idx() as i64, k)
    };
    let mut builder = TableBuilder::new(n, fusion);

    // R_j^{j1 j2} = (-1)^{j - j1 - j2} q^{(j(j+1) - j1(j1+1) - j2(j2+1))/2}.
    for a in 0..n as i64 {
        for b in 0..n as i64 {
            for c in 0..n as i64 {
                if !triangle_ok(a, b, c, k) {
                    continue;
                }
                let exp_int = (c - a - b) / 2; // integer
                let sign = if exp_int.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                // j(j+1) in doubled units: tj(tj+2)/4; q^s = e^{i 2π s/(k+2)}.
                let s = (c * (c + 2) - a * (a + 2) - b * (b + 2)) as f64 / 8.0;
                let phase = Complex64::from_polar(1.0, 2.0 * PI * s / (k as f64 + 2.0));
                builder.set_r(Charge(a as u8), Charge(b as u8), Charge(c as u8), sign * phase);
            }
        }
    }

    // [F_j^{j1 j2 j3}]_{j12 j23}
    //   = (-1)^{j1+j2+j3+j} sqrt([2 j12 + 1][2 j23 + 1]) {j1 j2 j12; j3 j j23}_q.
    for a in 0..n as i64 {
        for b in 0..n as i64 {
            for c in 0..n as i64 {
                for d in 0..n as i64 {
                    let es: Vec<i64> = (0..n as i64)
                        .filter(|&e| triangle_ok(a, b, e, k) && triangle_ok(e, c, d, k))
                        .collect();
                    let fs: Vec<i64> = (0..n as i64)
                        .filter(|&f| triangle_ok(b, c, f, k) && triangle_ok(a, f, d, k))
                        .collect();
                    if es.is_empty() || fs.is_empty() {
                        continue;
                    }
                    let sgn_int = (a + b + c + d) / 2;
                    let sign = if sgn_int.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                    for &e in &es {
                        for &f in &fs {
                            let v = sign
                                * (q_number(e as u32 + 1, k) * q_number(f as u32 + 1, k)).sqrt()
                                * q_6j_doubled(a, b, e, c, d, f, k);
                            builder.set_f(
                                Charge(a as u8),
                                Charge(b as u8),
                                Charge(c as u8),
                                Charge(d as u8),
                                Charge(e as u8),
                                Charge(f as u8),
                                Complex::new(v, 0.0),
                            );
                        }
                    }
                }
            }
        }
    }

    let names: Vec<String> = (0..n as i64).map(charge_name).collect();
    let dual: Vec<Charge> = (0..n as u8).map(Charge).collect();
    let qdim: Vec<f64> = (0..n as u32).map(|tj| q_number(tj + 1, k)).collect();
    let twist: Vec<Complex> = (0..n as i64)
        .map(|tj| Complex64::from_polar(1.0, PI * (tj * (tj + 2)) as f64 / (2.0 * (k as f64 + 2.0))))
        .collect();
    let norm = (2.0 / (k as f64 + 2.0)).sqrt();
    let mut smat = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..n as i64 {
        for b in 0..n as i64 {
            let v = norm * (((a + 1) * (b + 1)) as f64 * t).sin();
            smat[(a * (n as i64) + b) as usize] = Complex::new(v, 0.0);
        }
    }
    let _ = kk;

    assemble(ModelSpec::Su2k { k }, names, builder, dual, qdim, twist, smat)
}
