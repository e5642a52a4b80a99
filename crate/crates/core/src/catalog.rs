//! Point groups of O(3) in Schoenflies notation.
//!
//! Every finite group is built in a fixed standard orientation: principal
//! axis along z, a secondary two-fold axis along x, and vertical mirrors of
//! `Cnv` containing x. The cubic groups have their four-fold (O) or two-fold
//! (T, Y) axes along x, y, z, and Y has a five-fold axis along (0, 1, phi).

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Frobenius distance under which two matrices are the same element.
pub const ELEMENT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    C1,
    Ci,
    Cs,
    Cn,
    Cnh,
    Cnv,
    S2n,
    Dn,
    Dnh,
    Dnd,
    T,
    Td,
    Th,
    O,
    Oh,
    Y,
    Yh,
    Cinf,
    Cinfh,
    Cinfv,
    Dinf,
    Dinfh,
    SO3,
    O3,
}

impl Family {
    pub const ALL: [Family; 24] = [
        Family::C1,
        Family::Ci,
        Family::Cs,
        Family::Cn,
        Family::Cnh,
        Family::Cnv,
        Family::S2n,
        Family::Dn,
        Family::Dnh,
        Family::Dnd,
        Family::T,
        Family::Td,
        Family::Th,
        Family::O,
        Family::Oh,
        Family::Y,
        Family::Yh,
        Family::Cinf,
        Family::Cinfh,
        Family::Cinfv,
        Family::Dinf,
        Family::Dinfh,
        Family::SO3,
        Family::O3,
    ];

    pub fn takes_n(self) -> bool {
        matches!(
            self,
            Family::Cn
                | Family::Cnh
                | Family::Cnv
                | Family::S2n
                | Family::Dn
                | Family::Dnh
                | Family::Dnd
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Proper rotation groups, the building blocks of every point group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rotations {
    Cyclic(u32),
    Dihedral(u32),
    T,
    O,
    Y,
    Cinf,
    Dinf,
    SO3,
}

impl Rotations {
    pub fn order(self) -> Option<usize> {
        match self {
            Rotations::Cyclic(n) => Some(n as usize),
            Rotations::Dihedral(n) => Some(2 * n as usize),
            Rotations::T => Some(12),
            Rotations::O => Some(24),
            Rotations::Y => Some(60),
            _ => None,
        }
    }

    /// Whether `self` is conjugate in SO(3) to a subgroup of `other`.
    pub fn embeds_in(self, other: Rotations) -> bool {
        use Rotations::*;
        match (self, other) {
            (_, SO3) => true,
            (SO3, _) => false,
            (Cyclic(1), _) => true,
            (Cyclic(m), Cyclic(n)) => n % m == 0,
            (Cyclic(m), Dihedral(n)) => n % m == 0 || m == 2,
            (Cyclic(m), T) => matches!(m, 2 | 3),
            (Cyclic(m), O) => matches!(m, 2 | 3 | 4),
            (Cyclic(m), Y) => matches!(m, 2 | 3 | 5),
            (Cyclic(_), Cinf | Dinf) => true,
            (Dihedral(m), Dihedral(n)) => n % m == 0,
            (Dihedral(m), T) => m == 2,
            (Dihedral(m), O) => matches!(m, 2 | 3 | 4),
            (Dihedral(m), Y) => matches!(m, 2 | 3 | 5),
            (Dihedral(_), Dinf) => true,
            (T, T | O | Y) => true,
            (O, O) | (Y, Y) => true,
            (Cinf, Cinf | Dinf) => true,
            (Dinf, Dinf) => true,
            _ => false,
        }
    }
}

/// How a point group sits over its group of rotations.
///
/// Writing every element as `R` or `-R` with `R` proper, `full` is the group
/// of all such `R` and `kernel` those appearing without the sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Structure {
    Proper(Rotations),
    Inversion(Rotations),
    Mixed { full: Rotations, kernel: Rotations },
}

impl Structure {
    pub fn full(self) -> Rotations {
        match self {
            Structure::Proper(r) | Structure::Inversion(r) => r,
            Structure::Mixed { full, .. } => full,
        }
    }

    pub fn kernel(self) -> Rotations {
        match self {
            Structure::Proper(r) | Structure::Inversion(r) => r,
            Structure::Mixed { kernel, .. } => kernel,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupId {
    family: Family,
    n: u32,
}

impl GroupId {
    pub const C1: GroupId = GroupId::fixed(Family::C1);
    pub const CI: GroupId = GroupId::fixed(Family::Ci);
    pub const CS: GroupId = GroupId::fixed(Family::Cs);
    pub const T: GroupId = GroupId::fixed(Family::T);
    pub const TD: GroupId = GroupId::fixed(Family::Td);
    pub const TH: GroupId = GroupId::fixed(Family::Th);
    pub const O: GroupId = GroupId::fixed(Family::O);
    pub const OH: GroupId = GroupId::fixed(Family::Oh);
    pub const Y: GroupId = GroupId::fixed(Family::Y);
    pub const YH: GroupId = GroupId::fixed(Family::Yh);
    pub const CINF: GroupId = GroupId::fixed(Family::Cinf);
    pub const CINFH: GroupId = GroupId::fixed(Family::Cinfh);
    pub const CINFV: GroupId = GroupId::fixed(Family::Cinfv);
    pub const DINF: GroupId = GroupId::fixed(Family::Dinf);
    pub const DINFH: GroupId = GroupId::fixed(Family::Dinfh);
    pub const SO3: GroupId = GroupId::fixed(Family::SO3);
    pub const O3: GroupId = GroupId::fixed(Family::O3);

    const fn fixed(family: Family) -> GroupId {
        GroupId { family, n: 0 }
    }

    /// Builds a canonical identifier, folding the `n = 1` aliases
    /// (C1v = C1h = Cs, D1 = C2, S2 = Ci, D1h = C2v, D1d = C2h).
    pub fn new(family: Family, n: u32) -> Result<GroupId> {
        if !family.takes_n() {
            return Ok(GroupId::fixed(family));
        }
        if n == 0 {
            return Err(Error::Order {
                family: family.to_string(),
                n,
                min: 1,
            });
        }
        let id = match (family, n) {
            (Family::Cn, 1) => GroupId::C1,
            (Family::Cnh | Family::Cnv, 1) => GroupId::CS,
            (Family::S2n, 1) => GroupId::CI,
            (Family::Dn, 1) => GroupId { family: Family::Cn, n: 2 },
            (Family::Dnh, 1) => GroupId { family: Family::Cnv, n: 2 },
            (Family::Dnd, 1) => GroupId { family: Family::Cnh, n: 2 },
            _ => GroupId { family, n },
        };
        Ok(id)
    }

    pub fn cn(n: u32) -> GroupId {
        GroupId::new(Family::Cn, n).expect("n >= 1")
    }
    pub fn cnh(n: u32) -> GroupId {
        GroupId::new(Family::Cnh, n).expect("n >= 1")
    }
    pub fn cnv(n: u32) -> GroupId {
        GroupId::new(Family::Cnv, n).expect("n >= 1")
    }
    pub fn s2n(n: u32) -> GroupId {
        GroupId::new(Family::S2n, n).expect("n >= 1")
    }
    pub fn dn(n: u32) -> GroupId {
        GroupId::new(Family::Dn, n).expect("n >= 1")
    }
    pub fn dnh(n: u32) -> GroupId {
        GroupId::new(Family::Dnh, n).expect("n >= 1")
    }
    pub fn dnd(n: u32) -> GroupId {
        GroupId::new(Family::Dnd, n).expect("n >= 1")
    }

    pub fn family(self) -> Family {
        self.family
    }

    /// Axial order for the parametrised families, 0 otherwise.
    pub fn n(self) -> u32 {
        self.n
    }

    pub fn is_finite(self) -> bool {
        self.lie_dim() == 0
    }

    pub fn lie_dim(self) -> u32 {
        match self.family {
            Family::SO3 | Family::O3 => 3,
            Family::Cinf | Family::Cinfh | Family::Cinfv | Family::Dinf | Family::Dinfh => 1,
            _ => 0,
        }
    }

    pub fn order(self) -> Option<usize> {
        let n = self.n as usize;
        match self.family {
            Family::C1 => Some(1),
            Family::Ci | Family::Cs => Some(2),
            Family::Cn => Some(n),
            Family::Cnh | Family::Cnv | Family::S2n | Family::Dn => Some(2 * n),
            Family::Dnh | Family::Dnd => Some(4 * n),
            Family::T => Some(12),
            Family::Td | Family::Th | Family::O => Some(24),
            Family::Oh => Some(48),
            Family::Y => Some(60),
            Family::Yh => Some(120),
            _ => None,
        }
    }

    pub fn is_proper(self) -> bool {
        matches!(self.structure(), Structure::Proper(_))
    }

    pub fn has_inversion(self) -> bool {
        matches!(self.structure(), Structure::Inversion(_))
    }

    pub fn structure(self) -> Structure {
        use Rotations::*;
        let n = self.n;
        match self.family {
            Family::C1 => Structure::Proper(Cyclic(1)),
            Family::Ci => Structure::Inversion(Cyclic(1)),
            Family::Cs => Structure::Mixed {
                full: Cyclic(2),
                kernel: Cyclic(1),
            },
            Family::Cn => Structure::Proper(Cyclic(n)),
            Family::Cnh if n % 2 == 0 => Structure::Inversion(Cyclic(n)),
            Family::Cnh => Structure::Mixed {
                full: Cyclic(2 * n),
                kernel: Cyclic(n),
            },
            Family::S2n if n % 2 == 1 => Structure::Inversion(Cyclic(n)),
            Family::S2n => Structure::Mixed {
                full: Cyclic(2 * n),
                kernel: Cyclic(n),
            },
            Family::Cnv => Structure::Mixed {
                full: Dihedral(n),
                kernel: Cyclic(n),
            },
            Family::Dn => Structure::Proper(Dihedral(n)),
            Family::Dnh if n % 2 == 0 => Structure::Inversion(Dihedral(n)),
            Family::Dnd if n % 2 == 1 => Structure::Inversion(Dihedral(n)),
            Family::Dnh | Family::Dnd => Structure::Mixed {
                full: Dihedral(2 * n),
                kernel: Dihedral(n),
            },
            Family::T => Structure::Proper(T),
            Family::Td => Structure::Mixed { full: O, kernel: T },
            Family::Th => Structure::Inversion(T),
            Family::O => Structure::Proper(O),
            Family::Oh => Structure::Inversion(O),
            Family::Y => Structure::Proper(Y),
            Family::Yh => Structure::Inversion(Y),
            Family::Cinf => Structure::Proper(Cinf),
            Family::Cinfh => Structure::Inversion(Cinf),
            Family::Cinfv => Structure::Mixed {
                full: Dinf,
                kernel: Cinf,
            },
            Family::Dinf => Structure::Proper(Dinf),
            Family::Dinfh => Structure::Inversion(Dinf),
            Family::SO3 => Structure::Proper(SO3),
            Family::O3 => Structure::Inversion(SO3),
        }
    }

    /// Inverse of [`GroupId::structure`]; `None` for pairs that are not
    /// index-two subgroup pairs.
    pub fn from_structure(s: Structure) -> Option<GroupId> {
        use Rotations::*;
        let id = match s {
            Structure::Proper(r) => match r {
                Cyclic(n) if n >= 1 => GroupId::cn(n),
                Dihedral(n) if n >= 2 => GroupId::dn(n),
                T => GroupId::T,
                O => GroupId::O,
                Y => GroupId::Y,
                Cinf => GroupId::CINF,
                Dinf => GroupId::DINF,
                SO3 => GroupId::SO3,
                _ => return None,
            },
            Structure::Inversion(r) => match r {
                Cyclic(1) => GroupId::CI,
                Cyclic(n) if n % 2 == 0 => GroupId::cnh(n),
                Cyclic(n) if n >= 3 => GroupId::s2n(n),
                Dihedral(n) if n >= 2 && n % 2 == 0 => GroupId::dnh(n),
                Dihedral(n) if n >= 3 => GroupId::dnd(n),
                T => GroupId::TH,
                O => GroupId::OH,
                Y => GroupId::YH,
                Cinf => GroupId::CINFH,
                Dinf => GroupId::DINFH,
                SO3 => GroupId::O3,
                _ => return None,
            },
            Structure::Mixed { full, kernel } => match (full, kernel) {
                (Cyclic(2), Cyclic(1)) => GroupId::CS,
                (Cyclic(m), Cyclic(k)) if m == 2 * k && k % 2 == 1 => GroupId::cnh(k),
                (Cyclic(m), Cyclic(k)) if m == 2 * k => GroupId::s2n(k),
                (Dihedral(m), Cyclic(k)) if m == k && k >= 2 => GroupId::cnv(k),
                (Dihedral(m), Dihedral(k)) if m == 2 * k && k >= 2 && k % 2 == 0 => {
                    GroupId::dnd(k)
                }
                (Dihedral(m), Dihedral(k)) if m == 2 * k && k >= 3 => GroupId::dnh(k),
                (O, T) => GroupId::TD,
                (Dinf, Cinf) => GroupId::CINFV,
                _ => return None,
            },
        };
        Some(id)
    }

    /// Proper rotation subgroup.
    pub fn rotation_subgroup(self) -> GroupId {
        GroupId::from_structure(Structure::Proper(self.structure().kernel()))
            .expect("kernel is a proper group")
    }

    /// Generic dimension of the normaliser in O(3): 3 when the group is
    /// C1 or Ci, 1 for abelian single-axis groups and infinite axial groups,
    /// 0 otherwise.
    pub fn normalizer_dim(self) -> u32 {
        match self.family {
            Family::C1 | Family::Ci | Family::SO3 | Family::O3 => 3,
            Family::Cs | Family::Cn | Family::Cnh | Family::S2n => 1,
            Family::Cinf | Family::Cinfh | Family::Cinfv | Family::Dinf | Family::Dinfh => 1,
            _ => 0,
        }
    }

    /// Generators in the standard orientation.
    pub fn generators(self) -> Result<Vec<GroupElement>> {
        if !self.is_finite() {
            return Err(Error::Continuous(self.to_string()));
        }
        let z = Vector3::z();
        let x = Vector3::x();
        let n = self.n as f64;
        let cn = || GroupElement::rotation(&z, 2.0 * PI / n);
        let s2n = || GroupElement::improper(&z, PI + PI / n);
        let sigma_h = GroupElement::improper(&z, PI);
        let sigma_v = GroupElement::improper(&Vector3::y(), PI);
        let c2x = GroupElement::rotation(&x, PI);
        let inv = GroupElement::inversion();
        let tetra = || {
            vec![
                GroupElement::rotation(&z, PI),
                GroupElement::rotation(&x, PI),
                GroupElement::rotation(&Vector3::new(1.0, 1.0, 1.0), 2.0 * PI / 3.0),
            ]
        };
        let octa = || {
            vec![
                GroupElement::rotation(&z, PI / 2.0),
                GroupElement::rotation(&Vector3::new(1.0, 1.0, 1.0), 2.0 * PI / 3.0),
            ]
        };
        let icosa = || {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            let mut g = tetra();
            g.push(GroupElement::rotation(
                &Vector3::new(0.0, 1.0, phi),
                2.0 * PI / 5.0,
            ));
            g
        };
        let gens = match self.family {
            Family::C1 => vec![],
            Family::Ci => vec![inv],
            Family::Cs => vec![sigma_h],
            Family::Cn => vec![cn()],
            Family::Cnh => vec![cn(), sigma_h],
            Family::Cnv => vec![cn(), sigma_v],
            Family::S2n => vec![s2n()],
            Family::Dn => vec![cn(), c2x],
            Family::Dnh => vec![cn(), c2x, sigma_h],
            Family::Dnd => vec![s2n(), c2x],
            Family::T => tetra(),
            Family::Td => {
                let mut g = tetra();
                g.push(GroupElement::improper(&z, PI / 2.0));
                g
            }
            Family::Th => {
                let mut g = tetra();
                g.push(inv);
                g
            }
            Family::O => octa(),
            Family::Oh => {
                let mut g = octa();
                g.push(inv);
                g
            }
            Family::Y => icosa(),
            Family::Yh => {
                let mut g = icosa();
                g.push(inv);
                g
            }
            _ => unreachable!("continuous families handled above"),
        };
        Ok(gens)
    }

    /// All elements in the standard orientation, identity first.
    pub fn elements(self) -> Result<Vec<GroupElement>> {
        let gens = self.generators()?;
        let elems = close(&gens);
        let expected = self.order().expect("finite");
        if elems.len() != expected {
            return Err(Error::Consistency(format!(
                "{self}: closure produced {} elements, expected {expected}",
                elems.len()
            )));
        }
        Ok(elems)
    }

    /// Finite stand-in for a continuous axial group: the z rotations are
    /// cut down to order `order`, the discrete generators are kept.
    pub fn finite_witness(self, order: u32) -> Option<Vec<GroupElement>> {
        let z = Vector3::z();
        let rot = GroupElement::rotation(&z, 2.0 * PI / order as f64);
        let sigma_h = GroupElement::improper(&z, PI);
        let gens = match self.family {
            Family::Cinf => vec![rot],
            Family::Cinfh => vec![rot, GroupElement::inversion(), sigma_h],
            Family::Cinfv => vec![rot, GroupElement::improper(&Vector3::y(), PI)],
            Family::Dinf => vec![rot, GroupElement::rotation(&Vector3::x(), PI)],
            Family::Dinfh => vec![
                rot,
                GroupElement::rotation(&Vector3::x(), PI),
                GroupElement::inversion(),
                sigma_h,
            ],
            _ => return None,
        };
        Some(close(&gens))
    }

    /// Key for listings: larger groups first, then family, then n.
    pub fn listing_cmp(&self, other: &GroupId) -> Ordering {
        let size = |g: &GroupId| (g.lie_dim(), g.order().unwrap_or(0));
        size(other)
            .cmp(&size(self))
            .then(self.family.cmp(&other.family))
            .then(self.n.cmp(&other.n))
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match self.family {
            Family::Cn => write!(f, "C{n}"),
            Family::Cnh => write!(f, "C{n}h"),
            Family::Cnv => write!(f, "C{n}v"),
            Family::S2n if n % 2 == 1 => write!(f, "C{n}i"),
            Family::S2n => write!(f, "S{}", 2 * n),
            Family::Dn => write!(f, "D{n}"),
            Family::Dnh => write!(f, "D{n}h"),
            Family::Dnd => write!(f, "D{n}d"),
            other => write!(f, "{other}"),
        }
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupId> {
        let bad = || Error::GroupLabel(s.to_string());
        let t: String = s
            .trim()
            .replace('∞', "inf")
            .replace("(3)", "3")
            .chars()
            .filter(|c| !matches!(c, '_' | ' ' | '$' | '{' | '}'))
            .collect();
        let fixed = match t.as_str() {
            "C1" => Some(GroupId::C1),
            "Ci" | "S2" => Some(GroupId::CI),
            "Cs" => Some(GroupId::CS),
            "T" => Some(GroupId::T),
            "Td" => Some(GroupId::TD),
            "Th" => Some(GroupId::TH),
            "O" => Some(GroupId::O),
            "Oh" => Some(GroupId::OH),
            "Y" | "I" => Some(GroupId::Y),
            "Yh" | "Ih" => Some(GroupId::YH),
            "Cinf" => Some(GroupId::CINF),
            "Cinfh" => Some(GroupId::CINFH),
            "Cinfv" => Some(GroupId::CINFV),
            "Dinf" => Some(GroupId::DINF),
            "Dinfh" => Some(GroupId::DINFH),
            "SO3" => Some(GroupId::SO3),
            "O3" => Some(GroupId::O3),
            _ => None,
        };
        if let Some(g) = fixed {
            return Ok(g);
        }
        let mut chars = t.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest: String = chars.collect();
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        let suffix = &rest[digits.len()..];
        let n: u32 = digits.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        let family = match (head, suffix) {
            ('C', "") => Family::Cn,
            ('C', "h") => Family::Cnh,
            ('C', "v") => Family::Cnv,
            ('C', "i") if n % 2 == 1 => Family::S2n,
            ('D', "") => Family::Dn,
            ('D', "h") => Family::Dnh,
            ('D', "d") => Family::Dnd,
            ('S', "") if n % 2 == 1 => Family::Cnh,
            ('S', "") => return GroupId::new(Family::S2n, n / 2),
            _ => return Err(bad()),
        };
        GroupId::new(family, n)
    }
}

impl Serialize for GroupId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of O(3) stored as an orthogonal matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    pub matrix: Matrix3<f64>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement {
            matrix: Matrix3::identity(),
        }
    }

    pub fn inversion() -> Self {
        GroupElement {
            matrix: -Matrix3::identity(),
        }
    }

    pub fn rotation(axis: &Vector3<f64>, angle: f64) -> Self {
        GroupElement {
            matrix: rotation_matrix(axis, angle),
        }
    }

    /// Inversion composed with a rotation; `improper(z, PI)` is the
    /// horizontal mirror and `improper(z, PI + PI / n)` generates S2n.
    pub fn improper(axis: &Vector3<f64>, angle: f64) -> Self {
        GroupElement {
            matrix: -rotation_matrix(axis, angle),
        }
    }

    pub fn from_matrix(matrix: Matrix3<f64>) -> Self {
        GroupElement { matrix }
    }

    pub fn is_proper(&self) -> bool {
        self.matrix.determinant() > 0.0
    }

    pub fn proper_part(&self) -> Matrix3<f64> {
        if self.is_proper() {
            self.matrix
        } else {
            -self.matrix
        }
    }

    /// Axis and angle in [0, pi] of the proper part.
    pub fn axis_angle(&self) -> (Vector3<f64>, f64) {
        axis_angle(&self.proper_part())
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: self.matrix * other.matrix,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            matrix: self.matrix.transpose(),
        }
    }

    /// `g M g^T` for a rotation `g`.
    pub fn conjugate_by(&self, g: &Matrix3<f64>) -> GroupElement {
        GroupElement {
            matrix: g * self.matrix * g.transpose(),
        }
    }

    pub fn distance(&self, other: &GroupElement) -> f64 {
        (self.matrix - other.matrix).norm()
    }

    /// Short description such as `C3`, `S4`, `sigma`, `i` or `E`.
    pub fn kind(&self) -> String {
        let (_, angle) = self.axis_angle();
        let order = if angle < 1e-6 {
            1
        } else {
            (2.0 * PI / angle).round() as u32
        };
        match (self.is_proper(), order) {
            (true, 1) => "E".into(),
            (true, k) => format!("C{k}"),
            (false, 1) => "i".into(),
            (false, 2) => "sigma".into(),
            (false, k) => {
                let m = if k % 2 == 0 { k } else { 2 * k };
                format!("S{m}")
            }
        }
    }
}

pub fn rotation_matrix(axis: &Vector3<f64>, angle: f64) -> Matrix3<f64> {
    let u = axis.normalize();
    let (s, c) = angle.sin_cos();
    let k = Matrix3::new(0.0, -u.z, u.y, u.z, 0.0, -u.x, -u.y, u.x, 0.0);
    Matrix3::identity() + k * s + k * k * (1.0 - c)
}

pub fn axis_angle(r: &Matrix3<f64>) -> (Vector3<f64>, f64) {
    let cos = ((r.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
    let angle = cos.acos();
    let skew = Vector3::new(r[(2, 1)] - r[(1, 2)], r[(0, 2)] - r[(2, 0)], r[(1, 0)] - r[(0, 1)]);
    if angle < 1e-9 {
        return (Vector3::z(), 0.0);
    }
    if PI - angle > 1e-6 {
        return (skew.normalize(), angle);
    }
    // Near a half turn: (R + I) / 2 = n n^T.
    let b = (r + Matrix3::identity()) / 2.0;
    let (mut best, mut val) = (0, b[(0, 0)]);
    for i in 1..3 {
        if b[(i, i)] > val {
            best = i;
            val = b[(i, i)];
        }
    }
    let mut n: Vector3<f64> = b.column(best).into();
    n /= val.max(1e-300).sqrt();
    if n.dot(&skew) < 0.0 {
        n = -n;
    }
    (n.normalize(), angle)
}

/// Closes a generator set under composition.
pub fn close(generators: &[GroupElement]) -> Vec<GroupElement> {
    let mut elems = vec![GroupElement::identity()];
    let mut frontier = vec![GroupElement::identity()];
    while let Some(e) = frontier.pop() {
        for g in generators {
            let p = e.compose(g);
            if !elems.iter().any(|q| q.distance(&p) < ELEMENT_TOL) {
                elems.push(p);
                frontier.push(p);
            }
        }
    }
    elems
}

/// Every finite canonical group with axial order at most `n_max`, plus the
/// continuous ones.
pub fn all_groups(n_max: u32) -> Vec<GroupId> {
    let mut out = Vec::new();
    for family in Family::ALL {
        if family.takes_n() {
            for n in 1..=n_max {
                let g = GroupId::new(family, n).expect("n >= 1");
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        } else {
            let g = GroupId::fixed(family);
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_closure() {
        for g in all_groups(12).into_iter().filter(|g| g.is_finite()) {
            let e = g.elements().unwrap();
            assert_eq!(e.len(), g.order().unwrap(), "{g}");
        }
    }

    #[test]
    fn aliases_fold() {
        let cases = [
            ("C1v", "Cs"),
            ("C1h", "Cs"),
            ("D1", "C2"),
            ("S2", "Ci"),
            ("D1h", "C2v"),
            ("D1d", "C2h"),
            ("S6", "C3i"),
            ("S3", "C3h"),
            ("S4", "S4"),
            ("C∞v", "Cinfv"),
            ("O(3)", "O3"),
        ];
        for (a, b) in cases {
            assert_eq!(a.parse::<GroupId>().unwrap().to_string(), b, "{a}");
        }
        assert!("C0".parse::<GroupId>().is_err());
        assert!("Q7".parse::<GroupId>().is_err());
    }

    #[test]
    fn labels_round_trip() {
        for g in all_groups(9) {
            assert_eq!(g.to_string().parse::<GroupId>().unwrap(), g);
        }
    }

    #[test]
    fn structure_round_trips() {
        for g in all_groups(12) {
            assert_eq!(GroupId::from_structure(g.structure()), Some(g), "{g}");
        }
    }

    #[test]
    fn structure_matches_elements() {
        for g in all_groups(8).into_iter().filter(|g| g.is_finite()) {
            let e = g.elements().unwrap();
            let has_inv = e.iter().any(|x| x.distance(&GroupElement::inversion()) < 1e-9);
            assert_eq!(has_inv, g.has_inversion(), "{g}");
            let proper = e.iter().filter(|x| x.is_proper()).count();
            let s = g.structure();
            assert_eq!(Some(proper), s.kernel().order(), "{g}");
        }
    }

    #[test]
    fn icosahedral_contains_tetrahedral_axes() {
        let y = GroupId::Y.elements().unwrap();
        for t in GroupId::T.elements().unwrap() {
            assert!(y.iter().any(|e| e.distance(&t) < 1e-9));
        }
    }
}
