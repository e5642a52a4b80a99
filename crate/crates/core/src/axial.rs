//! Irreps of the infinite axial groups C∞, C∞h, C∞v, D∞, D∞h and their
//! little groups.
//!
//! Labels: an integer `m` for C∞ and C∞v (`m >= 0` for C∞v), `m` with a
//! parity for C∞h (`2+`), and `A1`, `A2`, `En` for D∞, with a parity
//! suffix for D∞h (`E2-`). Parity always refers to the inversion.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::catalog::{all_groups, rotation_matrix, Family, GroupElement, GroupId};
use crate::characters::Parity;
use crate::error::{Error, Result};
use crate::lattice::is_subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxialLabel {
    M(i32),
    A1,
    A2,
    E(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AxialIrrep {
    pub group: GroupId,
    pub label: AxialLabel,
    pub parity: Option<Parity>,
}

fn label_error(s: &str) -> Error {
    Error::IrrepLabel(s.to_string())
}

impl AxialIrrep {
    pub fn new(group: GroupId, label: AxialLabel, parity: Option<Parity>) -> Result<AxialIrrep> {
        use AxialLabel::*;
        let irrep = AxialIrrep { group, label, parity };
        let ok = match (group.family(), label, parity) {
            (Family::Cinf, M(_), None) => true,
            (Family::Cinfh, M(_), Some(_)) => true,
            (Family::Cinfv, M(m), None) => m >= 0,
            (Family::Dinf, A1 | A2, None) => true,
            (Family::Dinf, E(n), None) => n >= 1,
            (Family::Dinfh, A1 | A2, Some(_)) => true,
            (Family::Dinfh, E(n), Some(_)) => n >= 1,
            _ => false,
        };
        if ok {
            Ok(irrep)
        } else {
            Err(label_error(&irrep.to_string()))
        }
    }

    /// Every irrep of `group` with `|m| <= m_max` (or `n <= m_max`).
    pub fn all(group: GroupId, m_max: u32) -> Vec<AxialIrrep> {
        use AxialLabel::*;
        let mm = m_max as i32;
        let both = [Some(Parity::Even), Some(Parity::Odd)];
        let mut labels: Vec<(AxialLabel, Option<Parity>)> = Vec::new();
        match group.family() {
            Family::Cinf => labels.extend((-mm..=mm).map(|m| (M(m), None))),
            Family::Cinfh => {
                for m in -mm..=mm {
                    labels.extend(both.iter().map(|p| (M(m), *p)));
                }
            }
            Family::Cinfv => labels.extend((0..=mm).map(|m| (M(m), None))),
            Family::Dinf => {
                labels.extend([(A1, None), (A2, None)]);
                labels.extend((1..=m_max).map(|n| (E(n), None)));
            }
            Family::Dinfh => {
                for p in both {
                    labels.extend([(A1, p), (A2, p)]);
                    labels.extend((1..=m_max).map(|n| (E(n), p)));
                }
            }
            _ => {}
        }
        labels
            .into_iter()
            .map(|(label, parity)| AxialIrrep { group, label, parity })
            .collect()
    }

    /// Real dimension: 1 for `m = 0` and the A irreps, 2 otherwise.
    pub fn dim(&self) -> u32 {
        match self.label {
            AxialLabel::M(0) | AxialLabel::A1 | AxialLabel::A2 => 1,
            _ => 2,
        }
    }

    /// One-dimensional over the complex numbers (every irrep of C∞, C∞h).
    pub fn is_complex_line(&self) -> bool {
        matches!(self.group.family(), Family::Cinf | Family::Cinfh)
    }

    /// Angular order `|m|` or `n`, 0 for the A irreps.
    pub fn order(&self) -> u32 {
        match self.label {
            AxialLabel::M(m) => m.unsigned_abs(),
            AxialLabel::E(n) => n,
            _ => 0,
        }
    }

    fn mismatch(&self, e: &GroupElement) -> Error {
        Error::IrrepMismatch {
            irrep: self.to_string(),
            group: e.kind(),
            reason: format!("element is not in {}", self.group),
        }
    }

    /// Character, taking the real part for the complex irreps of C∞ and
    /// C∞h; averages over subgroups are unaffected.
    pub fn character(&self, e: &GroupElement) -> Result<f64> {
        use AxialLabel::*;
        let kind = AxialElement::classify(e).ok_or_else(|| self.mismatch(e))?;
        if !kind_allowed(self.group, kind) {
            return Err(self.mismatch(e));
        }
        let sign = |improper: bool| match (improper, self.parity) {
            (true, Some(p)) => p.sign(),
            _ => 1.0,
        };
        let chi = match (self.label, kind) {
            (M(m), AxialElement::Z { phi, improper }) => {
                let base = (m as f64 * phi).cos();
                if self.group == GroupId::CINFV {
                    if m == 0 {
                        1.0
                    } else {
                        2.0 * base
                    }
                } else {
                    sign(improper) * base
                }
            }
            (M(m), AxialElement::Flip { .. }) => (m == 0) as u8 as f64,
            (A1, k) => sign(k.improper()),
            (A2, AxialElement::Z { improper, .. }) => sign(improper),
            (A2, AxialElement::Flip { improper }) => -sign(improper),
            (E(n), AxialElement::Z { phi, improper }) => sign(improper) * 2.0 * (n as f64 * phi).cos(),
            (E(_), AxialElement::Flip { .. }) => 0.0,
        };
        Ok(chi)
    }

    /// Subduction frequency onto `h`, embedded in the irrep's group.
    pub fn subduce(&self, h: GroupId) -> Result<u32> {
        let elems = axial_embeddings(h, self.group, 2 * self.order() + 3)
            .into_iter()
            .next()
            .ok_or_else(|| Error::IrrepMismatch {
                irrep: self.to_string(),
                group: h.to_string(),
                reason: "not a subgroup of the axial group".into(),
            })?;
        self.mean_character(&elems)
    }

    fn mean_character(&self, elems: &[GroupElement]) -> Result<u32> {
        let mut s = 0.0;
        for e in elems {
            s += self.character(e)?;
        }
        let v = s / elems.len() as f64;
        let r = v.round();
        if (v - r).abs() > 1e-6 || r < 0.0 {
            return Err(Error::NonInteger {
                group: format!("{} subgroup", self.group),
                irrep: self.to_string(),
                value: v,
            });
        }
        Ok(r as u32)
    }
}

impl fmt::Display for AxialIrrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.group)?;
        match self.label {
            AxialLabel::M(m) => write!(f, "{m}")?,
            AxialLabel::A1 => write!(f, "A1")?,
            AxialLabel::A2 => write!(f, "A2")?,
            AxialLabel::E(n) => write!(f, "E{n}")?,
        }
        match self.parity {
            Some(p) => write!(f, "{p}"),
            None => Ok(()),
        }
    }
}

impl FromStr for AxialIrrep {
    type Err = Error;

    fn from_str(s: &str) -> Result<AxialIrrep> {
        let (g, rest) = s.split_once(':').ok_or_else(|| label_error(s))?;
        let group: GroupId = g.parse()?;
        let rest = rest.trim();
        let (body, parity) = match group.family() {
            Family::Cinfh | Family::Dinfh if rest.len() > 1 => {
                let (body, sign) = rest.split_at(rest.len() - 1);
                (body, Some(sign.parse::<Parity>().map_err(|_| label_error(s))?))
            }
            _ => (rest, None),
        };
        let label = match body {
            "A1" => AxialLabel::A1,
            "A2" => AxialLabel::A2,
            b if b.starts_with('E') => {
                AxialLabel::E(b[1..].parse().map_err(|_| label_error(s))?)
            }
            b => AxialLabel::M(b.parse().map_err(|_| label_error(s))?),
        };
        AxialIrrep::new(group, label, parity)
    }
}

/// Position of an element relative to the z axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AxialElement {
    /// Rotation about z by the signed angle `phi`, possibly times inversion.
    Z { phi: f64, improper: bool },
    /// Half turn about an axis in the xy plane, possibly times inversion.
    Flip { improper: bool },
}

impl AxialElement {
    pub fn classify(e: &GroupElement) -> Option<AxialElement> {
        let improper = !e.is_proper();
        let (axis, angle) = e.axis_angle();
        if angle < 1e-9 {
            return Some(AxialElement::Z { phi: 0.0, improper });
        }
        if axis.z.abs() > 1.0 - 1e-9 {
            return Some(AxialElement::Z {
                phi: angle * axis.z.signum(),
                improper,
            });
        }
        if (angle - PI).abs() < 1e-9 && axis.z.abs() < 1e-9 {
            return Some(AxialElement::Flip { improper });
        }
        None
    }

    fn improper(self) -> bool {
        match self {
            AxialElement::Z { improper, .. } | AxialElement::Flip { improper } => improper,
        }
    }
}

fn kind_allowed(parent: GroupId, kind: AxialElement) -> bool {
    use AxialElement::*;
    match (parent.family(), kind) {
        (Family::Cinf, Z { improper, .. }) => !improper,
        (Family::Cinfh, Z { .. }) => true,
        (Family::Cinfv, Z { improper, .. }) => !improper,
        (Family::Cinfv, Flip { improper }) => improper,
        (Family::Dinf, k) => !k.improper(),
        (Family::Dinfh, _) => true,
        _ => false,
    }
}

fn inside(parent: GroupId, elems: &[GroupElement]) -> bool {
    elems
        .iter()
        .all(|e| AxialElement::classify(e).is_some_and(|k| kind_allowed(parent, k)))
}

/// Elements of `h` in the orientations (up to rotation about z) in which it
/// sits inside the axial group `parent`. Continuous groups are represented
/// by their finite witness of the given order.
pub fn axial_embeddings(h: GroupId, parent: GroupId, witness: u32) -> Vec<Vec<GroupElement>> {
    let base = if h.is_finite() {
        match h.elements() {
            Ok(e) => e,
            Err(_) => return Vec::new(),
        }
    } else {
        match h.finite_witness(witness.max(3)) {
            Some(e) => e,
            None => return Vec::new(),
        }
    };
    let tilt = rotation_matrix(&Vector3::y(), PI / 2.0);
    let mut out: Vec<Vec<GroupElement>> = Vec::new();
    for g in [Matrix3::identity(), tilt] {
        let elems: Vec<GroupElement> = base.iter().map(|e| e.conjugate_by(&g)).collect();
        if inside(parent, &elems) && !out.iter().any(|o| same_set(o, &elems)) {
            out.push(elems);
        }
    }
    out
}

fn member(e: &GroupElement, set: &[GroupElement]) -> bool {
    set.iter().any(|q| q.distance(e) < 1e-7)
}

fn same_set(a: &[GroupElement], b: &[GroupElement]) -> bool {
    a.len() == b.len() && a.iter().all(|e| member(e, b))
}

fn flip_angle(e: &GroupElement) -> Option<f64> {
    match AxialElement::classify(e)? {
        AxialElement::Flip { .. } => {
            let (axis, _) = e.axis_angle();
            Some(axis.y.atan2(axis.x))
        }
        _ => None,
    }
}

/// A node of the axial subgroup lattice: a group in one explicit
/// orientation. Continuous nodes carry a finite witness.
#[derive(Clone, Debug)]
pub struct AxialNode {
    pub group: GroupId,
    pub elements: Vec<GroupElement>,
}

/// Whether some rotation about z carries `h` into `k`.
fn node_in(h: &AxialNode, k: &AxialNode) -> bool {
    if !k.group.is_finite() {
        if !h.group.is_finite() {
            return is_subgroup(h.group, k.group) && inside(k.group, &h.elements);
        }
        return inside(k.group, &h.elements);
    }
    if !h.group.is_finite() || k.elements.len() % h.elements.len() != 0 {
        return false;
    }
    let mut angles = vec![0.0];
    if let Some(bh) = h.elements.iter().find_map(flip_angle) {
        angles.extend(k.elements.iter().filter_map(flip_angle).map(|bk| bk - bh));
    }
    angles.into_iter().any(|a| {
        let g = rotation_matrix(&Vector3::z(), a);
        h.elements.iter().all(|e| member(&e.conjugate_by(&g), &k.elements))
    })
}

/// Truncated subgroup lattice of an axial group with explicit embeddings.
pub struct AxialLattice {
    pub parent: GroupId,
    pub nodes: Vec<AxialNode>,
    up: Vec<Vec<usize>>,
}

impl AxialLattice {
    pub fn new(parent: GroupId, n_max: u32) -> AxialLattice {
        let witness = 4 * n_max + 3;
        let mut nodes = Vec::new();
        let mut groups: Vec<GroupId> = all_groups(n_max)
            .into_iter()
            .filter(|g| g.lie_dim() <= 1 && is_subgroup(*g, parent))
            .collect();
        groups.sort_by(|a, b| a.listing_cmp(b));
        for g in groups {
            for elements in axial_embeddings(g, parent, witness) {
                nodes.push(AxialNode { group: g, elements });
            }
        }
        let n = nodes.len();
        let mut less = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && node_in(&nodes[i], &nodes[j]) && !node_in(&nodes[j], &nodes[i]) {
                    less[i][j] = true;
                }
            }
        }
        let up = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]))
                    .collect()
            })
            .collect();
        AxialLattice { parent, nodes, up }
    }

    pub fn adjacent_supergroups(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    /// Nodes passing Michel's test for a one-dimensional (over C) irrep.
    pub fn michel(&self, irrep: &AxialIrrep) -> Result<Vec<GroupId>> {
        let mut c = HashMap::new();
        for (i, node) in self.nodes.iter().enumerate() {
            c.insert(i, irrep.mean_character(&node.elements)?);
        }
        let mut out = Vec::new();
        for i in 0..self.nodes.len() {
            if c[&i] >= 1 && self.up[i].iter().all(|j| c[j] < c[&i]) {
                let g = self.nodes[i].group;
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxialResult {
    pub little_group: GroupId,
    pub vector_dim: u32,
}

fn result(little_group: GroupId, vector_dim: u32) -> AxialResult {
    AxialResult {
        little_group,
        vector_dim,
    }
}

pub fn little_group_cinf(m: i32) -> AxialResult {
    match m.unsigned_abs() {
        0 => result(GroupId::CINF, 1),
        n => result(GroupId::cn(n), 1),
    }
}

/// For `n` even the odd irrep is fixed by `-R_z(pi / n)` as well as by
/// `C_n`, so its little group is `S_2n`.
pub fn little_group_cinfh(m: i32, parity: Parity) -> AxialResult {
    let n = m.unsigned_abs();
    let g = match (n, parity) {
        (0, Parity::Even) => GroupId::CINFH,
        (0, Parity::Odd) => GroupId::CINF,
        (n, Parity::Even) if n % 2 == 0 => GroupId::cnh(n),
        (n, Parity::Odd) if n % 2 == 0 => GroupId::s2n(n),
        (n, Parity::Even) => GroupId::s2n(n),
        (n, Parity::Odd) => GroupId::cnh(n),
    };
    result(g, 1)
}

pub fn little_group_cinfv(m: u32) -> AxialResult {
    match m {
        0 => result(GroupId::CINFV, 1),
        n => result(GroupId::cnv(n), 2),
    }
}

/// The dimension 2 returned for A2 is the published value; A2 is one
/// dimensional.
pub fn little_group_dinf(label: AxialLabel) -> Result<AxialResult> {
    Ok(match label {
        AxialLabel::A1 => result(GroupId::DINF, 1),
        AxialLabel::A2 => result(GroupId::CINF, 2),
        AxialLabel::E(n) if n >= 1 => result(GroupId::dn(n), 2),
        _ => return Err(label_error(&format!("{label:?}"))),
    })
}

/// `E1-` follows the odd-n rule and gives D1h = C2v.
pub fn little_group_dinfh(label: AxialLabel, parity: Parity) -> Result<AxialResult> {
    use Parity::*;
    Ok(match (label, parity) {
        (AxialLabel::A1, Even) => result(GroupId::DINFH, 1),
        (AxialLabel::A1, Odd) => result(GroupId::DINF, 1),
        (AxialLabel::A2, Even) => result(GroupId::CINFH, 1),
        (AxialLabel::A2, Odd) => result(GroupId::CINFV, 1),
        (AxialLabel::E(n), p) if n >= 1 => {
            let g = match (n % 2 == 0, p) {
                (true, Even) | (false, Odd) => GroupId::dnh(n),
                (true, Odd) | (false, Even) => GroupId::dnd(n),
            };
            result(g, 2)
        }
        _ => return Err(label_error(&format!("{label:?}"))),
    })
}

pub fn little_group(irrep: &AxialIrrep) -> Result<AxialResult> {
    let parity = || irrep.parity.ok_or_else(|| label_error(&irrep.to_string()));
    match (irrep.group.family(), irrep.label) {
        (Family::Cinf, AxialLabel::M(m)) => Ok(little_group_cinf(m)),
        (Family::Cinfh, AxialLabel::M(m)) => Ok(little_group_cinfh(m, parity()?)),
        (Family::Cinfv, AxialLabel::M(m)) if m >= 0 => Ok(little_group_cinfv(m as u32)),
        (Family::Dinf, label) => little_group_dinf(label),
        (Family::Dinfh, label) => little_group_dinfh(label, parity()?),
        _ => Err(label_error(&irrep.to_string())),
    }
}

/// The little groups exactly as listed in the literature, including the
/// two entries that [`little_group`] corrects.
pub fn published_little_group(irrep: &AxialIrrep) -> Result<AxialResult> {
    let n = irrep.order();
    match (irrep.group.family(), irrep.label, irrep.parity) {
        (Family::Cinfh, AxialLabel::M(_), Some(Parity::Odd)) if n >= 2 && n % 2 == 0 => {
            Ok(result(GroupId::cn(n), 1))
        }
        (Family::Dinfh, AxialLabel::E(1), Some(Parity::Odd)) => Ok(result(GroupId::cnh(2), 2)),
        _ => little_group(irrep),
    }
}

/// Degree and parity of an O(3) irrep whose tesseral functions of order
/// `|m|` or `n` realise `irrep` on restriction to its axial group.
pub fn realisation(irrep: &AxialIrrep) -> (u32, Option<Parity>) {
    let n = irrep.order();
    match irrep.group.family() {
        Family::Cinf | Family::Dinf => (n, None),
        Family::Cinfv => (n, Some(Parity::natural(n))),
        _ => (n, irrep.parity),
    }
}
