//! Removing rotational freedom: Euler-angle canonical form and the
//! quadratic-form diagonalisation at l = 2.

use std::f64::consts::PI;

use nalgebra::{DVector, Matrix3, SymmetricEigen, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::rotation::rotation_matrix_l;
use crate::oracle::tesseral::{CoeffVector, Tesseral};

/// `R_z(alpha) R_y(beta) R_z(gamma)`.
pub fn euler_zyz(alpha: f64, beta: f64, gamma: f64) -> Matrix3<f64> {
    let rz = |t: f64| crate::catalog::rotation_matrix(&Vector3::z(), t);
    let ry = crate::catalog::rotation_matrix(&Vector3::y(), beta);
    rz(alpha) * ry * rz(gamma)
}

pub fn rotate(a: &CoeffVector, r: &Matrix3<f64>) -> CoeffVector {
    CoeffVector {
        coeffs: rotation_matrix_l(a.l, r) * &a.coeffs,
        ..a.clone()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Canonical {
    #[serde(skip)]
    pub rotation: Matrix3<f64>,
    pub euler: [f64; 3],
    pub vector: CoeffVector,
    pub residual: f64,
}

/// Labels zeroed by the canonical form at degree `l`.
pub fn canonical_targets(l: u32) -> Vec<Tesseral> {
    match l {
        0 => vec![],
        1 => vec![Tesseral::cos(1), Tesseral::sin(1)],
        _ => vec![Tesseral::cos(1), Tesseral::sin(1), Tesseral::sin(2)],
    }
}

fn target_residual(a: &CoeffVector, e: &[f64; 3], targets: &[Tesseral]) -> DVector<f64> {
    let b = rotate(a, &euler_zyz(e[0], e[1], e[2]));
    DVector::from_iterator(targets.len(), targets.iter().map(|t| b.get(*t)))
}

/// Rotation making `a_{1+} = a_{1-} = 0` and, for `l >= 2`, `a_{2-} = 0`,
/// by damped Gauss-Newton on the Euler angles from several starts.
pub fn canonicalize(a: &CoeffVector, seed: u64) -> Result<Canonical> {
    let a = a.normalized()?;
    let targets = canonical_targets(a.l);
    if targets.is_empty() {
        return Ok(Canonical {
            rotation: Matrix3::identity(),
            euler: [0.0; 3],
            vector: a,
            residual: 0.0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<([f64; 3], f64)> = None;
    for attempt in 0..64 {
        let mut e = if attempt == 0 {
            [0.0; 3]
        } else {
            [
                rng.gen_range(-PI..PI),
                rng.gen_range(0.0..PI),
                rng.gen_range(-PI..PI),
            ]
        };
        let mut r = target_residual(&a, &e, &targets);
        let mut lambda = 1e-3;
        for _ in 0..100 {
            let r0 = r.norm_squared();
            if r0 < 1e-28 {
                break;
            }
            let h = 1e-7;
            let cols: Vec<DVector<f64>> = (0..3)
                .map(|i| {
                    let mut q = e;
                    q[i] += h;
                    (target_residual(&a, &q, &targets) - &r) / h
                })
                .collect();
            let j = nalgebra::DMatrix::from_columns(&cols);
            let jtj = j.transpose() * &j;
            let jtr = j.transpose() * &r;
            let mut improved = false;
            for _ in 0..12 {
                let damped = &jtj
                    + nalgebra::DMatrix::from_diagonal(&jtj.diagonal()) * lambda
                    + nalgebra::DMatrix::identity(3, 3) * 1e-14;
                let Some(step) = damped.lu().solve(&(-&jtr)) else {
                    lambda *= 10.0;
                    continue;
                };
                let q = [e[0] + step[0], e[1] + step[1], e[2] + step[2]];
                let rq = target_residual(&a, &q, &targets);
                if rq.norm_squared() < r0 {
                    e = q;
                    r = rq;
                    lambda = (lambda * 0.3).max(1e-12);
                    improved = true;
                    break;
                }
                lambda *= 10.0;
            }
            if !improved {
                break;
            }
        }
        let res = r.norm();
        if best.map_or(true, |(_, b)| res < b) {
            best = Some((e, res));
        }
        if res < 1e-12 {
            break;
        }
    }
    let (e, residual) = best.expect("at least one start");
    if residual > 1e-9 {
        return Err(Error::Consistency(format!(
            "Euler-angle search did not converge; best residual {residual:.3e}"
        )));
    }
    let rotation = euler_zyz(e[0], e[1], e[2]);
    let mut vector = rotate(&a, &rotation);
    for t in targets {
        vector.set(t, 0.0);
    }
    Ok(Canonical {
        rotation,
        euler: e,
        vector,
        residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Diagonal {
    #[serde(skip)]
    pub rotation: Matrix3<f64>,
    pub eigenvalues: [f64; 3],
    pub vector: CoeffVector,
    /// Two eigenvalues coincide within 1e-8: the form is uniaxial.
    pub uniaxial: bool,
}

/// Symmetric traceless matrix `M` with `f(x) = x^T M x` on the unit sphere.
pub fn quadratic_form(a: &CoeffVector) -> Result<Matrix3<f64>> {
    if a.l != 2 {
        return Err(Error::Coefficients(format!("expected l = 2, got l = {}", a.l)));
    }
    let k0 = 0.25 * (5.0 / PI).sqrt();
    let k2 = 0.25 * (15.0 / PI).sqrt();
    let z = a.get(Tesseral::ZERO) * k0;
    let b = a.get(Tesseral::sin(2)) * k2;
    let c = a.get(Tesseral::sin(1)) * k2;
    let d = a.get(Tesseral::cos(1)) * k2;
    let e = a.get(Tesseral::cos(2)) * k2;
    Ok(Matrix3::new(e - z, b, d, b, -e - z, c, d, c, 2.0 * z))
}

/// Rotates an l = 2 vector to principal axes, leaving only `Z_0` and
/// `Z_{2+}`; eigenvalues are sorted ascending.
pub fn diagonalize_l2(a: &CoeffVector) -> Result<Diagonal> {
    let m = quadratic_form(a)?;
    let eig = SymmetricEigen::new(m);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    // The principal axis of the most distinct eigenvalue goes to z.
    let (lo, mid, hi) = (
        eig.eigenvalues[order[0]],
        eig.eigenvalues[order[1]],
        eig.eigenvalues[order[2]],
    );
    let cols = if (hi - mid) >= (mid - lo) {
        [order[0], order[1], order[2]]
    } else {
        [order[1], order[2], order[0]]
    };
    let mut v = Matrix3::from_columns(&[
        eig.eigenvectors.column(cols[0]).into_owned(),
        eig.eigenvectors.column(cols[1]).into_owned(),
        eig.eigenvectors.column(cols[2]).into_owned(),
    ]);
    if v.determinant() < 0.0 {
        v.column_mut(0).neg_mut();
    }
    let rotation = v.transpose();
    let vector = rotate(a, &rotation);
    let scale = (mid - lo).abs().max((hi - mid).abs()).max(1e-300);
    Ok(Diagonal {
        rotation,
        eigenvalues: [lo, mid, hi],
        vector,
        uniaxial: (mid - lo).abs() < 1e-8 * scale.max(1.0) || (hi - mid).abs() < 1e-8 * scale.max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::Parity;
    use crate::oracle::tesseral::labels;

    fn random(l: u32, rng: &mut ChaCha8Rng) -> CoeffVector {
        let mut v = CoeffVector::zeros(l, Some(Parity::Even));
        for t in labels(l) {
            v.set(t, rng.gen_range(-1.0..1.0));
        }
        v
    }

    #[test]
    fn quadratic_form_matches_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = random(2, &mut rng);
        let m = quadratic_form(&v).unwrap();
        for x in [Vector3::new(0.3, 0.4, 0.5), Vector3::new(-0.9, 0.1, 0.2)] {
            let x = x.normalize();
            assert!((v.eval(&x) - (x.transpose() * m * x)[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let d = diagonalize_l2(&random(2, &mut rng)).unwrap();
            assert!((d.eigenvalues.iter().sum::<f64>()).abs() < 1e-10);
            for t in ["1+", "1-", "2-"] {
                assert!(d.vector.get(t.parse().unwrap()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn canonical_zeroes_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for l in 1..=5 {
            let v = random(l, &mut rng);
            let c = canonicalize(&v, 11).unwrap();
            for t in canonical_targets(l) {
                assert!(c.vector.get(t).abs() < 1e-9, "l={l} {t}");
            }
            assert!((c.vector.norm() - 1.0).abs() < 1e-9);
        }
        let z0 = CoeffVector::from_pairs(3, None, &[(Tesseral::ZERO, 2.0)]);
        let c = canonicalize(&z0, 1).unwrap();
        assert!((c.rotation - Matrix3::identity()).norm() < 1e-9);
    }
}
