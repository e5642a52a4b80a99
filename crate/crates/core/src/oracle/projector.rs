//! Group-averaged projectors onto the invariant subspace of a degree-l
//! representation.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::catalog::{GroupElement, GroupId};
use crate::characters::Parity;
use crate::error::{Error, Result};
use crate::oracle::rotation::element_matrix;
use crate::oracle::tesseral::{CoeffVector, Tesseral};

pub const RANK_TOL: f64 = 1e-8;

/// Elements averaged over for `h` at degree `l`. The continuous axial
/// groups are replaced by their order-(2l + 1) witness, which fixes the
/// same functions of degree `l`.
pub fn averaging_elements(h: GroupId, l: u32) -> Result<Vec<GroupElement>> {
    if h.is_finite() {
        return h.elements();
    }
    h.finite_witness(2 * l + 1)
        .ok_or_else(|| Error::Continuous(h.to_string()))
}

fn check_parity(h: GroupId, parity: Option<Parity>) -> Result<()> {
    if parity.is_none() && !h.is_proper() {
        return Err(Error::IrrepMismatch {
            irrep: "SO(3) irrep".into(),
            group: h.to_string(),
            reason: "improper group needs a parity".into(),
        });
    }
    Ok(())
}

/// `P = (1/|H|) sum_g D(g)`.
pub fn projector(h: GroupId, l: u32, parity: Option<Parity>) -> Result<DMatrix<f64>> {
    check_parity(h, parity)?;
    let dim = (2 * l + 1) as usize;
    if h.lie_dim() == 3 {
        let mut p = DMatrix::zeros(dim, dim);
        let inv_ok = h == GroupId::SO3 || parity != Some(Parity::Odd);
        if l == 0 && inv_ok {
            p[(0, 0)] = 1.0;
        }
        return Ok(p);
    }
    let elems = averaging_elements(h, l)?;
    let mut p = DMatrix::zeros(dim, dim);
    for e in &elems {
        p += element_matrix(l, parity, e);
    }
    Ok(p / elems.len() as f64)
}

/// Orthonormal basis of the fixed-point subspace, one vector per column.
pub fn invariant_basis(h: GroupId, l: u32, parity: Option<Parity>) -> Result<DMatrix<f64>> {
    let p = projector(h, l, parity)?;
    // P is an orthogonal projector, so its eigenvalues are 0 or 1.
    let sym = (&p + p.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let cols: Vec<DVector<f64>> = (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i] > 0.5)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect();
    let dim = (2 * l + 1) as usize;
    Ok(if cols.is_empty() {
        DMatrix::zeros(dim, 0)
    } else {
        DMatrix::from_columns(&cols)
    })
}

pub fn invariant_vectors(h: GroupId, l: u32, parity: Option<Parity>) -> Result<Vec<CoeffVector>> {
    let basis = invariant_basis(h, l, parity)?;
    Ok(basis
        .column_iter()
        .map(|c| CoeffVector {
            l,
            parity,
            coeffs: c.into_owned(),
        })
        .collect())
}

/// Number of singular values of `P` above [`RANK_TOL`].
pub fn rank(h: GroupId, l: u32, parity: Option<Parity>) -> Result<usize> {
    let p = projector(h, l, parity)?;
    Ok(p.singular_values().iter().filter(|s| **s > RANK_TOL).count())
}

/// Tesseral labels fixed by `h` in standard orientation. Fails when the
/// fixed subspace is not spanned by individual labels.
pub fn invariant_labels(h: GroupId, l: u32, parity: Option<Parity>) -> Result<Vec<Tesseral>> {
    let p = projector(h, l, parity)?;
    let dim = (2 * l + 1) as usize;
    let mut out = Vec::new();
    for i in 0..dim {
        if p[(i, i)] > 0.5 {
            out.push(Tesseral::from_index(l, i));
        }
    }
    let diag: f64 = (0..dim).map(|i| p[(i, i)]).sum();
    let off = (&p - DMatrix::from_diagonal(&p.diagonal())).norm();
    if off > 1e-9 || (diag - out.len() as f64).abs() > 1e-9 {
        return Err(Error::NonTesseral { group: h.to_string() });
    }
    out.sort_by_key(|t| (t.m, t.sine));
    Ok(out)
}

/// Largest `||D(g) a - a|| / ||a||` over the given elements.
pub fn max_residual(a: &CoeffVector, elems: &[GroupElement]) -> f64 {
    let n = a.norm().max(1e-300);
    elems
        .iter()
        .map(|e| (element_matrix(a.l, a.parity, e) * &a.coeffs - &a.coeffs).norm() / n)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::all_groups;
    use crate::characters::{subduce_trace, Irrep};

    #[test]
    fn idempotent_and_rank_matches_trace() {
        for h in all_groups(6) {
            if !h.is_finite() {
                continue;
            }
            for l in 0..=4u32 {
                for parity in [Parity::Even, Parity::Odd] {
                    let p = projector(h, l, Some(parity)).unwrap();
                    assert!((&p * &p - &p).norm() < 1e-9, "{h} {l}{parity}");
                    let r = rank(h, l, Some(parity)).unwrap();
                    let c = subduce_trace(h, &Irrep::o3(l, parity)).unwrap();
                    assert_eq!(r as u32, c, "{h} {l}{parity}");
                }
            }
        }
    }

    #[test]
    fn continuous_groups() {
        for l in 0..=5u32 {
            for parity in [Parity::Even, Parity::Odd] {
                for h in [
                    GroupId::CINF,
                    GroupId::CINFH,
                    GroupId::CINFV,
                    GroupId::DINF,
                    GroupId::DINFH,
                    GroupId::O3,
                ] {
                    let r = rank(h, l, Some(parity)).unwrap() as u32;
                    let c = subduce_trace(h, &Irrep::o3(l, parity)).unwrap();
                    assert_eq!(r, c, "{h} {l}{parity}");
                }
            }
        }
    }

    #[test]
    fn axial_labels() {
        let g = |s: &str| s.parse::<GroupId>().unwrap();
        let labels = invariant_labels(g("D3"), 4, None).unwrap();
        let text: Vec<String> = labels.iter().map(|t| t.to_string()).collect();
        assert_eq!(text, ["0", "3-"]);
        assert!(invariant_labels(GroupId::O, 4, None).is_err());
    }
}
