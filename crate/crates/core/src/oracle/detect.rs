//! Maximal symmetry group of a coefficient vector, with free axes.
//!
//! Candidate axes come from a Fibonacci grid on the upper hemisphere. For
//! an axis `n` the coefficients seen from `n` are `b = D(Q^T) a` with `Q`
//! taking z to `n`; a rotation by `2 pi / k` about `n` then costs
//! `sum_m w_m (2 - 2 s cos(2 pi m / k))` with `w_m` the power in order `m`
//! and `s = -1` when the improper partner is what leaves `a` fixed. Grid
//! minima are polished by Levenberg-Marquardt on the full residual.

use std::f64::consts::PI;

use nalgebra::{DVector, Matrix2, Matrix3, Vector2, Vector3};
use serde::Serialize;

use crate::catalog::{close, rotation_matrix, GroupElement, GroupId, Rotations, Structure};
use crate::characters::Parity;
use crate::error::{Error, Result};
use crate::lattice::{align, embed_elements};
use crate::oracle::rotation::{element_matrix, rotation_matrix_l};
use crate::oracle::tesseral::CoeffVector;

pub const SYMMETRY_TOL: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct DetectOptions {
    pub tol: f64,
    pub grid: usize,
    /// Treat the vector as an SO(3) representation even if it has a parity.
    pub proper_only: bool,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            tol: SYMMETRY_TOL,
            grid: 2000,
            proper_only: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub element: String,
    pub axis: [f64; 3],
    pub angle: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub group: GroupId,
    /// Rotation taking the standard orientation of `group` onto the
    /// detected axes.
    #[serde(serialize_with = "matrix_rows")]
    pub orientation: Matrix3<f64>,
    pub witnesses: Vec<Witness>,
    pub warnings: Vec<String>,
}

fn matrix_rows<S: serde::Serializer>(m: &Matrix3<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize as _;
    let rows: Vec<[f64; 3]> = (0..3).map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)]]).collect();
    rows.serialize(s)
}

impl SymmetryReport {
    pub fn max_residual(&self) -> f64 {
        self.witnesses.iter().map(|w| w.residual).fold(0.0, f64::max)
    }
}

fn primes_up_to(n: u32) -> Vec<u32> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Fibonacci points on the closed upper hemisphere.
pub fn hemisphere_grid(n: usize) -> Vec<Vector3<f64>> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden * i as f64;
            Vector3::new(r * t.cos(), r * t.sin(), z)
        })
        .collect()
}

/// Power in each order `m = 0..=l` of `a` seen from axis `n`.
fn spectrum(a: &CoeffVector, n: &Vector3<f64>) -> Vec<f64> {
    let q = align(&Vector3::z(), n);
    let b = rotation_matrix_l(a.l, &q.transpose()) * &a.coeffs;
    let l = a.l as usize;
    let mut w = vec![b[l] * b[l]; l + 1];
    for m in 1..=l {
        w[m] = b[l + m] * b[l + m] + b[l - m] * b[l - m];
    }
    w
}

fn cost(w: &[f64], k: u32, s: f64) -> f64 {
    w.iter()
        .enumerate()
        .map(|(m, wm)| wm * (2.0 - 2.0 * s * (2.0 * PI * m as f64 / k as f64).cos()))
        .sum()
}

fn direction(theta: f64, phi: f64) -> Vector3<f64> {
    Vector3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos())
}

/// `D(R(n, 2 pi / k)) a - s a`.
fn residual(a: &CoeffVector, n: &Vector3<f64>, k: u32, s: f64) -> DVector<f64> {
    let r = rotation_matrix(n, 2.0 * PI / k as f64);
    rotation_matrix_l(a.l, &r) * &a.coeffs - &a.coeffs * s
}

/// Levenberg-Marquardt on the two polar angles of the axis.
fn polish(a: &CoeffVector, start: &Vector3<f64>, k: u32, s: f64) -> (Vector3<f64>, f64) {
    let mut p = Vector2::new(start.z.clamp(-1.0, 1.0).acos(), start.y.atan2(start.x));
    let f = |p: &Vector2<f64>| residual(a, &direction(p.x, p.y), k, s);
    let mut r = f(&p);
    let mut lambda = 1e-3;
    let h = 1e-7;
    for _ in 0..60 {
        let r0 = r.norm_squared();
        if r0 < 1e-30 {
            break;
        }
        let j0 = (f(&(p + Vector2::new(h, 0.0))) - &r) / h;
        let j1 = (f(&(p + Vector2::new(0.0, h))) - &r) / h;
        let jtj = Matrix2::new(j0.dot(&j0), j0.dot(&j1), j1.dot(&j0), j1.dot(&j1));
        let jtr = Vector2::new(j0.dot(&r), j1.dot(&r));
        let mut improved = false;
        for _ in 0..10 {
            let damped = jtj + Matrix2::from_diagonal(&jtj.diagonal()) * lambda
                + Matrix2::identity() * 1e-18;
            let Some(step) = damped.lu().solve(&(-jtr)) else {
                lambda *= 10.0;
                continue;
            };
            let q = p + step;
            let rq = f(&q);
            if rq.norm_squared() < r0 {
                p = q;
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
    let mut n = direction(p.x, p.y);
    if n.z < 0.0 || (n.z.abs() < 1e-12 && n.y < 0.0) {
        n = -n;
    }
    (n, r.norm())
}

/// Neighbour lists of a grid within `radius` radians.
fn neighbours(grid: &[Vector3<f64>], radius: f64) -> Vec<Vec<usize>> {
    let c = radius.cos();
    let mut out = vec![Vec::new(); grid.len()];
    for i in 0..grid.len() {
        for j in (i + 1)..grid.len() {
            // Antipodal points are identified across the equator.
            if grid[i].dot(&grid[j]).abs() > c {
                out[i].push(j);
                out[j].push(i);
            }
        }
    }
    out
}

struct Axis {
    n: Vector3<f64>,
    /// Largest proper order, `None` for a continuous axis.
    order: Option<u32>,
    /// Whether `-R(n, pi / order)` leaves the vector fixed.
    improper_coset: bool,
}

fn invariant_rotation(a: &CoeffVector, n: &Vector3<f64>, angle: f64, s: f64, tol: f64) -> (bool, f64) {
    let r = rotation_matrix(n, angle);
    let res = (rotation_matrix_l(a.l, &r) * &a.coeffs - &a.coeffs * s).norm();
    (res < tol, res)
}

fn rotation_group(elems: &[Matrix3<f64>]) -> Result<Rotations> {
    let n = elems.len() as u32;
    let order = |m: &Matrix3<f64>| -> u32 {
        let (_, angle) = crate::catalog::axis_angle(m);
        if angle < 1e-6 {
            1
        } else {
            (2.0 * PI / angle).round() as u32
        }
    };
    let max = elems.iter().map(order).max().unwrap_or(1);
    Ok(if max == n {
        Rotations::Cyclic(n)
    } else {
        match (n, max) {
            (12, 3) => Rotations::T,
            (24, 4) => Rotations::O,
            (60, 5) => Rotations::Y,
            _ if n % 2 == 0 && max == n / 2 => Rotations::Dihedral(n / 2),
            _ => {
                return Err(Error::Consistency(format!(
                    "cannot classify a rotation group of order {n} with largest order {max}"
                )))
            }
        }
    })
}

fn dedup_matrices(ms: Vec<Matrix3<f64>>) -> Vec<Matrix3<f64>> {
    let mut out: Vec<Matrix3<f64>> = Vec::new();
    for m in ms {
        if !out.iter().any(|q| (q - m).norm() < 1e-7) {
            out.push(m);
        }
    }
    out
}

/// Names the finite group formed by `elems`.
pub fn classify_elements(elems: &[GroupElement]) -> Result<GroupId> {
    let kernel: Vec<Matrix3<f64>> =
        elems.iter().filter(|e| e.is_proper()).map(|e| e.matrix).collect();
    let full = dedup_matrices(elems.iter().map(|e| e.proper_part()).collect());
    let inversion = elems.iter().any(|e| (e.matrix + Matrix3::identity()).norm() < 1e-7);
    let kr = rotation_group(&kernel)?;
    let fr = rotation_group(&full)?;
    let s = if kernel.len() == elems.len() {
        Structure::Proper(kr)
    } else if inversion {
        Structure::Inversion(kr)
    } else {
        Structure::Mixed { full: fr, kernel: kr }
    };
    GroupId::from_structure(s)
        .ok_or_else(|| Error::Consistency(format!("no point group with structure {s:?}")))
}

fn axial_group(l: u32, parity: Option<Parity>) -> GroupId {
    let natural = l % 2 == 0;
    match parity {
        None => {
            if natural {
                GroupId::DINF
            } else {
                GroupId::CINF
            }
        }
        Some(Parity::Even) => {
            if natural {
                GroupId::DINFH
            } else {
                GroupId::CINFH
            }
        }
        Some(Parity::Odd) => {
            if natural {
                GroupId::DINF
            } else {
                GroupId::CINFV
            }
        }
    }
}

fn witness(a: &CoeffVector, e: &GroupElement) -> Witness {
    let norm = a.norm();
    let res = (element_matrix(a.l, a.parity, e) * &a.coeffs - &a.coeffs).norm() / norm;
    let (axis, angle) = e.axis_angle();
    Witness {
        element: e.kind(),
        axis: [axis.x, axis.y, axis.z],
        angle,
        residual: res,
    }
}

/// Largest group leaving `a` fixed, with the orientation in which it does.
pub fn detect_symmetry(a: &CoeffVector, opts: &DetectOptions) -> Result<SymmetryReport> {
    let a = a.normalized()?;
    let parity = if opts.proper_only { None } else { a.parity };
    let a = CoeffVector { parity, ..a };
    let tol = opts.tol;
    let mut warnings = Vec::new();
    if a.l == 0 {
        let group = if parity == Some(Parity::Even) {
            GroupId::O3
        } else {
            GroupId::SO3
        };
        return Ok(SymmetryReport {
            group,
            orientation: Matrix3::identity(),
            witnesses: vec![],
            warnings,
        });
    }
    let l = a.l;
    let grid = hemisphere_grid(opts.grid);
    let spacing = (2.0 * PI / opts.grid as f64).sqrt();
    let near = neighbours(&grid, 2.5 * spacing);
    let spectra: Vec<Vec<f64>> = grid.iter().map(|n| spectrum(&a, n)).collect();

    let mut searches: Vec<(u32, f64)> = primes_up_to(2 * l).into_iter().map(|k| (k, 1.0)).collect();
    if parity == Some(Parity::Odd) {
        searches.push((2, -1.0));
    }
    let mut axes: Vec<Vector3<f64>> = Vec::new();
    for &(k, s) in &searches {
        let f: Vec<f64> = spectra.iter().map(|w| cost(w, k, s)).collect();
        let mut minima: Vec<usize> = (0..grid.len())
            .filter(|&i| near[i].iter().all(|&j| f[i] <= f[j]))
            .collect();
        minima.sort_by(|&i, &j| f[i].total_cmp(&f[j]));
        minima.truncate(400);
        for i in minima {
            let (n, res) = polish(&a, &grid[i], k, s);
            if res < tol && !axes.iter().any(|m| m.dot(&n).abs() > 1.0 - 1e-6) {
                axes.push(n);
            }
        }
    }

    let mut found = Vec::new();
    for n in &axes {
        let mut order = 1;
        for k in (2..=2 * l + 1).rev() {
            let (ok, res) = invariant_rotation(&a, n, 2.0 * PI / k as f64, 1.0, tol);
            if res >= tol && res < 10.0 * tol {
                warnings.push(format!("rotation of order {k} is borderline ({res:.2e})"));
            }
            if ok {
                order = k;
                break;
            }
        }
        let order = (order <= 2 * l).then_some(order);
        let improper_coset = match (order, parity) {
            (Some(k), Some(Parity::Odd)) => invariant_rotation(&a, n, PI / k as f64, -1.0, tol).0,
            _ => false,
        };
        found.push(Axis {
            n: *n,
            order,
            improper_coset,
        });
    }

    if let Some(ax) = found.iter().find(|x| x.order.is_none()) {
        let group = axial_group(l, parity);
        let orientation = align(&Vector3::z(), &ax.n);
        let witnesses = group
            .finite_witness(2 * l + 1)
            .expect("axial")
            .iter()
            .filter(|e| parity.is_some() || e.is_proper())
            .map(|e| witness(&a, &e.conjugate_by(&orientation)))
            .collect();
        return finish(group, orientation, witnesses, warnings, tol);
    }

    let mut gens = Vec::new();
    for ax in &found {
        let k = ax.order.expect("finite axes only");
        if k > 1 {
            gens.push(GroupElement::rotation(&ax.n, 2.0 * PI / k as f64));
        }
        if ax.improper_coset {
            gens.push(GroupElement::improper(&ax.n, PI / k as f64));
        } else if parity == Some(Parity::Odd) && k == 1 {
            // A lone mirror: the order-2 anti-invariant axis.
            if invariant_rotation(&a, &ax.n, PI, -1.0, tol).0 {
                gens.push(GroupElement::improper(&ax.n, PI));
            }
        }
    }
    if parity == Some(Parity::Even) {
        gens.push(GroupElement::inversion());
    }
    let elems = close(&gens);
    if elems.len() > 240 {
        return Err(Error::Consistency(format!(
            "detected elements generate {} > 240 elements",
            elems.len()
        )));
    }
    let group = classify_elements(&elems)?;
    let standard = group.elements()?;
    let orientation = embed_elements(&standard, &elems).ok_or_else(|| {
        Error::Consistency(format!("could not orient {group} onto the detected elements"))
    })?;
    let witnesses = standard
        .iter()
        .map(|e| witness(&a, &e.conjugate_by(&orientation)))
        .collect();
    finish(group, orientation, witnesses, warnings, tol)
}

fn finish(
    group: GroupId,
    orientation: Matrix3<f64>,
    witnesses: Vec<Witness>,
    warnings: Vec<String>,
    tol: f64,
) -> Result<SymmetryReport> {
    let report = SymmetryReport {
        group,
        orientation,
        witnesses,
        warnings,
    };
    let worst = report.max_residual();
    if worst >= tol {
        return Err(Error::Consistency(format!(
            "detected {group} but a witness has residual {worst:.2e}"
        )));
    }
    Ok(report)
}

/// Stabiliser of `a` inside an axial group whose axis is z. Only rotations
/// about z and half turns about horizontal axes (with inversion where the
/// parent allows) are tried.
pub fn detect_in_axial(a: &CoeffVector, parent: GroupId, tol: f64) -> Result<GroupId> {
    use crate::catalog::Family;
    let a = a.normalized()?;
    let l = a.l;
    let parity = a.parity;
    let improper_z = matches!(parent.family(), Family::Cinfh | Family::Dinfh);
    let proper_flip = matches!(parent.family(), Family::Dinf | Family::Dinfh);
    let improper_flip = matches!(parent.family(), Family::Cinfv | Family::Dinfh);
    let need_parity = improper_z || improper_flip;
    if need_parity && parity.is_none() {
        return Err(Error::IrrepMismatch {
            irrep: format!("degree {l} without parity"),
            group: parent.to_string(),
            reason: "improper parent needs a parity".into(),
        });
    }
    let z = Vector3::z();
    let fixed = |e: &GroupElement| -> bool {
        let d = element_matrix(l, if e.is_proper() { None } else { parity }, e);
        (d * &a.coeffs - &a.coeffs).norm() < tol
    };

    let mut kz = 1;
    for k in (2..=2 * l + 1).rev() {
        if fixed(&GroupElement::rotation(&z, 2.0 * PI / k as f64)) {
            kz = k;
            break;
        }
    }
    let continuous = kz == 2 * l + 1;
    let inversion = improper_z && fixed(&GroupElement::inversion());
    let odd_coset = improper_z
        && !continuous
        && !inversion
        && fixed(&GroupElement::improper(&z, PI / kz as f64));

    // Half turns about horizontal axes: scan the azimuth, then refine.
    let flip = |beta: f64, improper: bool| {
        let axis = Vector3::new(beta.cos(), beta.sin(), 0.0);
        if improper {
            GroupElement::improper(&axis, PI)
        } else {
            GroupElement::rotation(&axis, PI)
        }
    };
    let flip_cost = |beta: f64, improper: bool| -> f64 {
        let e = flip(beta, improper);
        let d = element_matrix(l, if improper { parity } else { None }, &e);
        (d * &a.coeffs - &a.coeffs).norm()
    };
    let find_flip = |improper: bool| -> bool {
        let steps = 720;
        let vals: Vec<f64> = (0..steps)
            .map(|i| flip_cost(PI * i as f64 / steps as f64, improper))
            .collect();
        (0..steps).any(|i| {
            let prev = vals[(i + steps - 1) % steps];
            let next = vals[(i + 1) % steps];
            if vals[i] > prev || vals[i] > next {
                return false;
            }
            let h = PI / steps as f64;
            let (mut lo, mut hi) = (PI * i as f64 / steps as f64 - h, PI * i as f64 / steps as f64 + h);
            let g = (5f64.sqrt() - 1.0) / 2.0;
            for _ in 0..80 {
                let m1 = hi - g * (hi - lo);
                let m2 = lo + g * (hi - lo);
                if flip_cost(m1, improper) < flip_cost(m2, improper) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            flip_cost((lo + hi) / 2.0, improper) < tol
        })
    };
    let pflip = proper_flip && find_flip(false);
    let iflip = improper_flip && find_flip(true);

    let dihedral = |k: u32, flips: bool| -> Rotations {
        match (continuous, flips) {
            (true, true) => Rotations::Dinf,
            (true, false) => Rotations::Cinf,
            (false, true) if k == 1 => Rotations::Cyclic(2),
            (false, true) => Rotations::Dihedral(k),
            (false, false) => Rotations::Cyclic(k),
        }
    };
    let kernel = dihedral(kz, pflip);
    let full_k = if odd_coset { 2 * kz } else { kz };
    let full = dihedral(full_k, pflip || iflip);
    let any_improper = inversion || odd_coset || iflip;
    let s = if !any_improper {
        Structure::Proper(kernel)
    } else if inversion {
        Structure::Inversion(kernel)
    } else {
        Structure::Mixed { full, kernel }
    };
    GroupId::from_structure(s)
        .ok_or_else(|| Error::Consistency(format!("no axial subgroup with structure {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::tesseral::Tesseral;

    fn vector(l: u32, parity: Option<Parity>, pairs: &[(&str, f64)]) -> CoeffVector {
        let pairs: Vec<(Tesseral, f64)> =
            pairs.iter().map(|(t, c)| (t.parse().unwrap(), *c)).collect();
        CoeffVector::from_pairs(l, parity, &pairs)
    }

    fn detect(v: &CoeffVector) -> String {
        detect_symmetry(v, &DetectOptions::default()).unwrap().group.to_string()
    }

    #[test]
    fn uniaxial_and_biaxial() {
        let even = Some(Parity::Even);
        assert_eq!(detect(&vector(2, even, &[("0", 1.0)])), "Dinfh");
        assert_eq!(detect(&vector(2, even, &[("2+", 1.0)])), "D2h");
        assert_eq!(detect(&vector(1, Some(Parity::Odd), &[("1+", 1.0)])), "Cinfv");
        assert_eq!(detect(&vector(2, even, &[("0", 0.3), ("2+", 0.8)])), "D2h");
    }

    #[test]
    fn cubic_invariant() {
        let z0 = (7f64).sqrt() / (2.0 * 3f64.sqrt());
        let z4 = (5f64).sqrt() / (2.0 * 3f64.sqrt());
        let v = vector(4, Some(Parity::Even), &[("0", z0), ("4+", z4)]);
        assert_eq!(detect(&v), "Oh");
        let r = crate::catalog::rotation_matrix(&Vector3::new(0.3, -0.2, 0.9), 0.7);
        let w = CoeffVector {
            coeffs: rotation_matrix_l(4, &r) * &v.coeffs,
            ..v.clone()
        };
        assert_eq!(detect(&w), "Oh");
    }

    #[test]
    fn mirror_example() {
        let v = vector(3, Some(Parity::Odd), &[("0", 0.4), ("2+", 0.4), ("2-", 0.7)]);
        assert_eq!(detect(&v), "C2v");
    }

    #[test]
    fn axial_restriction() {
        let v = vector(1, Some(Parity::Odd), &[("1+", 0.6), ("1-", 0.8)]);
        assert_eq!(detect_in_axial(&v, GroupId::DINFH, 1e-9).unwrap().to_string(), "C2v");
        let v = vector(1, Some(Parity::Even), &[("1+", 0.6), ("1-", 0.8)]);
        assert_eq!(detect_in_axial(&v, GroupId::DINFH, 1e-9).unwrap().to_string(), "C2h");
        let v = vector(2, Some(Parity::Odd), &[("2+", 0.6), ("2-", 0.8)]);
        assert_eq!(detect_in_axial(&v, GroupId::CINFH, 1e-9).unwrap().to_string(), "S4");
    }
}
