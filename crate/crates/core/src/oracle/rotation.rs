//! Rotation matrices of the tesseral basis, built degree by degree with
//! the Ivanic-Ruedenberg recursion from the 3x3 rotation.
//!
//! Convention: if `f = sum a_i Z_i` then `D(R) a` are the coefficients of
//! `x -> f(R^T x)`, so `D(R1 R2) = D(R1) D(R2)`.

use nalgebra::{DMatrix, DVector, Matrix3};

use crate::catalog::GroupElement;
use crate::characters::Parity;

/// `D^l(R)` for every `l <= l_max`.
pub fn rotation_matrices(r: &Matrix3<f64>, l_max: u32) -> Vec<DMatrix<f64>> {
    let mut out = Vec::with_capacity(l_max as usize + 1);
    out.push(DMatrix::from_element(1, 1, 1.0));
    if l_max == 0 {
        return out;
    }
    // Basis order at l = 1 is (y, z, x).
    let idx = [1usize, 2, 0];
    let r1 = DMatrix::from_fn(3, 3, |i, j| r[(idx[i], idx[j])]);
    out.push(r1.clone());
    for l in 2..=l_max as i32 {
        let prev = &out[(l - 1) as usize];
        let dim = (2 * l + 1) as usize;
        let mut cur = DMatrix::zeros(dim, dim);
        let g1 = |i: i32, j: i32| r1[((i + 1) as usize, (j + 1) as usize)];
        let gp = |i: i32, j: i32| prev[((i + l - 1) as usize, (j + l - 1) as usize)];
        let p = |i: i32, a: i32, b: i32| -> f64 {
            if b == l {
                g1(i, 1) * gp(a, l - 1) - g1(i, -1) * gp(a, -l + 1)
            } else if b == -l {
                g1(i, 1) * gp(a, -l + 1) + g1(i, -1) * gp(a, l - 1)
            } else {
                g1(i, 0) * gp(a, b)
            }
        };
        for m in -l..=l {
            for n in -l..=l {
                let d = if m == 0 { 1.0 } else { 0.0 };
                let denom = if n.abs() == l {
                    (2 * l * (2 * l - 1)) as f64
                } else {
                    ((l + n) * (l - n)) as f64
                };
                let am = m.abs();
                let u = (((l + m) * (l - m)) as f64 / denom).sqrt();
                let v = 0.5 * ((1.0 + d) * ((l + am - 1) * (l + am)) as f64 / denom).sqrt()
                    * (1.0 - 2.0 * d);
                let w = -0.5 * (((l - am - 1) * (l - am)) as f64 / denom).max(0.0).sqrt()
                    * (1.0 - d);
                let mut val = 0.0;
                if u != 0.0 {
                    val += u * p(0, m, n);
                }
                if v != 0.0 {
                    let vv = if m == 0 {
                        p(1, 1, n) + p(-1, -1, n)
                    } else if m > 0 {
                        let d1: f64 = if m == 1 { 1.0 } else { 0.0 };
                        let mut s = p(1, m - 1, n) * (1.0 + d1).sqrt();
                        if m != 1 {
                            s -= p(-1, -m + 1, n);
                        }
                        s
                    } else {
                        let d1: f64 = if m == -1 { 1.0 } else { 0.0 };
                        let mut s = p(-1, -m - 1, n) * (1.0 + d1).sqrt();
                        if m != -1 {
                            s += p(1, m + 1, n);
                        }
                        s
                    };
                    val += v * vv;
                }
                if w != 0.0 {
                    let ww = if m > 0 {
                        p(1, m + 1, n) + p(-1, -m - 1, n)
                    } else {
                        p(1, m - 1, n) - p(-1, -m + 1, n)
                    };
                    val += w * ww;
                }
                cur[((m + l) as usize, (n + l) as usize)] = val;
            }
        }
        out.push(cur);
    }
    out
}

/// `D^l(R)` for a proper rotation.
pub fn rotation_matrix_l(l: u32, r: &Matrix3<f64>) -> DMatrix<f64> {
    rotation_matrices(r, l).pop().expect("l_max >= 0")
}

/// Representation matrix of an O(3) element on degree `l` with the given
/// parity: improper elements pick up the parity sign. With no parity only
/// proper elements are accepted.
pub fn element_matrix(l: u32, parity: Option<Parity>, e: &GroupElement) -> DMatrix<f64> {
    let d = rotation_matrix_l(l, &e.proper_part());
    if e.is_proper() {
        return d;
    }
    match parity {
        Some(p) => d * p.sign(),
        None => panic!("improper element acting on an SO(3) representation"),
    }
}

/// `D(R_z(angle))`: each (m+, m-) pair is rotated by `m * angle`.
pub fn z_rotation(l: u32, angle: f64) -> DMatrix<f64> {
    let dim = (2 * l + 1) as usize;
    let li = l as usize;
    let mut d = DMatrix::zeros(dim, dim);
    d[(li, li)] = 1.0;
    for m in 1..=li {
        let (s, c) = (m as f64 * angle).sin_cos();
        let (p, q) = (li + m, li - m);
        d[(p, p)] = c;
        d[(q, q)] = c;
        d[(p, q)] = -s;
        d[(q, p)] = s;
    }
    d
}

pub fn apply(d: &DMatrix<f64>, a: &DVector<f64>) -> DVector<f64> {
    d * a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::rotation_matrix;
    use crate::oracle::tesseral::{eval_all, labels};
    use nalgebra::Vector3;

    fn sample_rotation(seed: u64) -> Matrix3<f64> {
        let s = seed as f64;
        let axis = Vector3::new((1.3 * s).sin(), (2.1 * s + 0.4).cos(), 0.7 + (0.9 * s).sin());
        rotation_matrix(&axis, 0.3 + 1.7 * s)
    }

    #[test]
    fn rotates_functions() {
        let dirs = [
            Vector3::new(0.2, 0.9, -0.4),
            Vector3::new(-0.7, 0.1, 0.7),
            Vector3::new(0.0, 0.0, 1.0),
            Vector3::new(0.5, -0.5, -0.1),
        ];
        for l in 0..=8u32 {
            for seed in 1..4u64 {
                let r = sample_rotation(seed);
                let d = rotation_matrix_l(l, &r);
                for (k, _) in labels(l).iter().enumerate() {
                    let mut a = DVector::zeros((2 * l + 1) as usize);
                    a[k] = 1.0;
                    let b = &d * &a;
                    for x in &dirs {
                        let x = x.normalize();
                        let lhs = b.dot(&eval_all(l, &x));
                        let rhs = a.dot(&eval_all(l, &(r.transpose() * x)));
                        assert!((lhs - rhs).abs() < 1e-10, "l={l} k={k}: {lhs} vs {rhs}");
                    }
                }
            }
        }
    }

    #[test]
    fn homomorphism_and_orthogonality() {
        let (r1, r2) = (sample_rotation(5), sample_rotation(9));
        for l in 0..=12u32 {
            let d12 = rotation_matrix_l(l, &(r1 * r2));
            let prod = rotation_matrix_l(l, &r1) * rotation_matrix_l(l, &r2);
            assert!((d12.clone() - prod).norm() < 1e-10, "l={l}");
            let eye = DMatrix::identity(d12.nrows(), d12.ncols());
            assert!((d12.transpose() * &d12 - eye).norm() < 1e-10);
        }
    }

    #[test]
    fn z_rotation_matches_recursion() {
        for l in 0..=6u32 {
            let r = rotation_matrix(&Vector3::z(), 0.83);
            assert!((rotation_matrix_l(l, &r) - z_rotation(l, 0.83)).norm() < 1e-12);
        }
    }
}
