//! Canonical text export of model tables for golden-file tests.

use alloc::format;
use alloc::string::String;

use num_complex::Complex64;

use super::AnyonModel;

/// Format with 12 significant digits.
fn sig(x: f64) -> String {
    if x == 0.0 {
        return String::from("0");
    }
    format!("{x:.11e}")
}

fn sig_c(z: Complex64) -> String {
    format!("{} {}", sig(z.re), sig(z.im))
}

/// One line per nonzero `N`/`F`/`R` entry, followed by the derived tables,
/// all with fixed 12-significant-digit formatting.
pub fn model_table_report(model: &AnyonModel) -> String {
    let mut out = String::new();
    let name = |c| model.charge_name(c);
    out.push_str(&format!("model {}\n", model.name()));
    out.push_str(&format!("D {}\n", sig(model.total_qdim())));
    for a in model.charges() {
        out.push_str(&format!(
            "charge {} dual {} d {} theta {}\n",
            name(a),
            name(model.dual(a)),
            sig(model.qdim(a)),
            sig_c(model.twist(a)),
        ));
    }
    for a in model.charges() {
        for b in model.charges() {
            for &c in model.fuse(a, b) {
                out.push_str(&format!("N {} {} {} 1\n", name(a), name(b), name(c)));
            }
        }
    }
    for a in model.charges() {
        for b in model.charges() {
            for c in model.charges() {
                for d in model.charges() {
                    let block = model.f_block(a, b, c, d);
                    for &e in &block.es {
                        for &f in &block.fs {
                            let v = model.f_symbol(a, b, c, d, e, f);
                            if v.norm() > 0.0 {
                                out.push_str(&format!(
                                    "F {} {} {} {} {} {} {}\n",
                                    name(a), name(b), name(c), name(d), name(e), name(f), sig_c(v),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    for a in model.charges() {
        for b in model.charges() {
            for &c in model.fuse(a, b) {
                let v = model.r_symbol(a, b, c);
                if v.norm() > 0.0 {
                    out.push_str(&format!("R {} {} {} {}\n", name(a), name(b), name(c), sig_c(v)));
                }
            }
        }
    }
    for a in model.charges() {
        for b in model.charges() {
            out.push_str(&format!("S {} {} {}\n", name(a), name(b), sig_c(model.s_matrix(a, b))));
        }
    }
    for a in model.charges() {
        for b in model.charges() {
            out.push_str(&format!("M {} {} {}\n", name(a), name(b), sig_c(model.monodromy(a, b))));
        }
    }
    out
}
