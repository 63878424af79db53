//! Small dense complex Hermitian eigensolver (cyclic Jacobi) used for trace
//! distances and positivity checks. Matrices here are tiny (fusion-basis
//! blocks), so simplicity wins over sophistication.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] use num_traits::Float;

/// Eigenvalues of a Hermitian matrix given row-major. The input is
/// symmetrized against numerical noise first.
pub fn hermitian_eigenvalues(mat: &[Complex64], n: usize) -> Vec<f64> {
    debug_assert_eq!(mat.len(), n * n);
    if n == 0 {
        return Vec::new();
    }
    let mut a = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (mat[i * n + j] + mat[j * n + i].conj()) * 0.5;
        }
    }

    // Cyclic Jacobi with complex rotations.
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i * n + j].norm_sqr();
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.norm_sqr() < 1e-32 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // Annihilate a_pq = |a| e^{iφ} with the unitary rotation
                // U = [[c, -s e^{iφ}], [s e^{-iφ}, c]], tan(2θ) = 2|a|/(app - aqq).
                let phi = apq.arg();
                let absa = apq.norm();
                let theta = 0.5 * (2.0 * absa).atan2(app - aqq);
                let (c, s) = (theta.cos(), theta.sin());
                let e_pos = Complex64::from_polar(1.0, phi);
                let e_neg = e_pos.conj();
                // A <- A U.
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c + akq * e_neg * s;
                    a[k * n + q] = -akp * e_pos * s + akq * c;
                }
                // A <- U^dagger A.
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c + aqk * e_pos * s;
                    a[q * n + k] = -apk * e_neg * s + aqk * c;
                }
            }
        }
    }

    (0..n).map(|i| a[i * n + i].re).collect()
}

/// Nuclear norm (sum of absolute eigenvalues) of a Hermitian matrix.
pub fn hermitian_trace_norm(mat: &[Complex64], n: usize) -> f64 {
    hermitian_eigenvalues(mat, n).iter().map(|l| l.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ];
        let mut ev = hermitian_eigenvalues(&m, 2);
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] + 1.0).abs() < 1e-12);
        assert!((ev[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_pauli_y_like() {
        // [[0, -i], [i, 0]] has eigenvalues ±1.
        let m = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ];
        let mut ev = hermitian_eigenvalues(&m, 2);
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] + 1.0).abs() < 1e-10);
        assert!((ev[1] - 1.0).abs() < 1e-10);
        assert!((hermitian_trace_norm(&m, 2) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn eigenvalues_of_random_hermitian() {
        // Fixed 3x3 Hermitian with known trace and Frobenius norm; the
        // eigenvalues must reproduce both.
        let m = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, 0.25),
            Complex64::new(-0.3, 0.1),
            Complex64::new(0.5, -0.25),
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.0, 0.7),
            Complex64::new(-0.3, -0.1),
            Complex64::new(0.0, -0.7),
            Complex64::new(0.5, 0.0),
        ];
        let ev = hermitian_eigenvalues(&m, 3);
        let tr: f64 = ev.iter().sum();
        assert!((tr - (-0.5)).abs() < 1e-10);
        let frob2: f64 = m.iter().map(|z| z.norm_sqr()).sum();
        let ev2: f64 = ev.iter().map(|l| l * l).sum();
        assert!((frob2 - ev2).abs() < 1e-9);
    }
}
