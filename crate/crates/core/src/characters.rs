//! Irreps of SO(3) and O(3), their characters, and subduction frequencies
//! onto point groups.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::axial::AxialIrrep;
use crate::catalog::{GroupElement, GroupId, Rotations, Structure};
use crate::error::{Error, Result};
use crate::oracle::projector::invariant_labels;
use crate::oracle::tesseral::Tesseral;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    /// Parity of an ordinary (polar) function of degree `l`.
    pub fn natural(l: u32) -> Parity {
        if l % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "+",
            Parity::Odd => "-",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Parity> {
        match s.trim() {
            "+" | "even" | "g" => Ok(Parity::Even),
            "-" | "odd" | "u" => Ok(Parity::Odd),
            other => Err(Error::IrrepLabel(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Irrep {
    /// Degree-l irrep of SO(3), dimension 2l + 1.
    Rotation { l: u32 },
    /// Degree-l irrep of O(3) with the given behaviour under inversion.
    Orthogonal { l: u32, parity: Parity },
    Axial(AxialIrrep),
}

impl Irrep {
    pub fn so3(l: u32) -> Irrep {
        Irrep::Rotation { l }
    }

    pub fn o3(l: u32, parity: Parity) -> Irrep {
        Irrep::Orthogonal { l, parity }
    }

    pub fn degree(&self) -> Option<u32> {
        match *self {
            Irrep::Rotation { l } | Irrep::Orthogonal { l, .. } => Some(l),
            Irrep::Axial(_) => None,
        }
    }

    pub fn parity(&self) -> Option<Parity> {
        match *self {
            Irrep::Orthogonal { parity, .. } => Some(parity),
            Irrep::Axial(a) => a.parity,
            Irrep::Rotation { .. } => None,
        }
    }

    pub fn dim(&self) -> u32 {
        match *self {
            Irrep::Rotation { l } | Irrep::Orthogonal { l, .. } => 2 * l + 1,
            Irrep::Axial(a) => a.dim(),
        }
    }

    /// The group whose irrep this is.
    pub fn parent(&self) -> GroupId {
        match *self {
            Irrep::Rotation { .. } => GroupId::SO3,
            Irrep::Orthogonal { .. } => GroupId::O3,
            Irrep::Axial(a) => a.group,
        }
    }

    /// Character of `e`. Improper elements are inversion times a rotation
    /// and carry the parity sign.
    pub fn character(&self, e: &GroupElement) -> Result<f64> {
        match *self {
            Irrep::Rotation { l } => {
                if !e.is_proper() {
                    return Err(self.mismatch(e.kind(), "improper element in SO(3)"));
                }
                Ok(chi_rotation(l, e.axis_angle().1))
            }
            Irrep::Orthogonal { l, parity } => {
                let chi = chi_rotation(l, e.axis_angle().1);
                Ok(if e.is_proper() { chi } else { parity.sign() * chi })
            }
            Irrep::Axial(a) => a.character(e),
        }
    }

    fn mismatch(&self, group: impl fmt::Display, reason: &str) -> Error {
        Error::IrrepMismatch {
            irrep: self.to_string(),
            group: group.to_string(),
            reason: reason.to_string(),
        }
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irrep::Rotation { l } => write!(f, "{l}"),
            Irrep::Orthogonal { l, parity } => write!(f, "{l}{parity}"),
            Irrep::Axial(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for Irrep {
    type Err = Error;

    /// `4` for SO(3), `4+` / `4-` for O(3), `Group:label` for the axial
    /// groups (for example `Dinfh:E2-`).
    fn from_str(s: &str) -> Result<Irrep> {
        let t = s.trim();
        if t.contains(':') {
            return Ok(Irrep::Axial(t.parse()?));
        }
        let bad = || Error::IrrepLabel(s.to_string());
        let (num, parity) = match t.chars().last() {
            Some('+') => (&t[..t.len() - 1], Some(Parity::Even)),
            Some('-') => (&t[..t.len() - 1], Some(Parity::Odd)),
            Some(_) => (t, None),
            None => return Err(bad()),
        };
        let l: u32 = num.parse().map_err(|_| bad())?;
        Ok(match parity {
            Some(parity) => Irrep::Orthogonal { l, parity },
            None => Irrep::Rotation { l },
        })
    }
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Irrep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Irrep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Character of the degree-l rotation irrep at rotation angle `phi`.
pub fn chi_rotation(l: u32, phi: f64) -> f64 {
    let half = (phi / 2.0).sin();
    if half.abs() < 1e-6 {
        (-(l as i64)..=l as i64)
            .map(|m| (m as f64 * phi).cos())
            .sum()
    } else {
        ((l as f64 + 0.5) * phi).sin() / half
    }
}

fn round_frequency(sum: f64, group: GroupId, irrep: &Irrep) -> Result<u32> {
    let r = sum.round();
    if (sum - r).abs() > 1e-6 || r < -0.5 {
        return Err(Error::NonInteger {
            group: group.to_string(),
            irrep: irrep.to_string(),
            value: sum,
        });
    }
    Ok(r as u32)
}

fn check_restricts(h: GroupId, irrep: &Irrep) -> Result<()> {
    let ok = match irrep {
        Irrep::Rotation { .. } => h.is_proper(),
        Irrep::Orthogonal { .. } => true,
        Irrep::Axial(a) => crate::lattice::is_subgroup(h, a.group),
    };
    if ok {
        Ok(())
    } else {
        Err(irrep.mismatch(h, "not a subgroup of the irrep's group"))
    }
}

/// Multiplicity of the identity irrep of `h` in `irrep`, from the mean of
/// the character over the elements of `h`.
pub fn subduce_trace(h: GroupId, irrep: &Irrep) -> Result<u32> {
    check_restricts(h, irrep)?;
    if let Irrep::Axial(a) = irrep {
        return a.subduce(h);
    }
    if !h.is_finite() {
        return subduce_continuous(h, irrep);
    }
    let elems = h.elements()?;
    let mut sum = 0.0;
    for e in &elems {
        sum += irrep.character(e)?;
    }
    round_frequency(sum / elems.len() as f64, h, irrep)
}

/// Frequencies for the continuous groups in closed form.
pub fn subduce_continuous(h: GroupId, irrep: &Irrep) -> Result<u32> {
    check_restricts(h, irrep)?;
    if h.is_finite() {
        return Err(irrep.mismatch(h, "finite group passed to the continuous rule"));
    }
    if let Irrep::Axial(a) = irrep {
        return a.subduce(h);
    }
    let l = irrep.degree().expect("degree");
    let even_p = irrep.parity() != Some(Parity::Odd);
    let natural = irrep.parity().map_or(true, |p| p == Parity::natural(l));
    let c = match h {
        GroupId::CINF => true,
        GroupId::CINFH => even_p,
        GroupId::CINFV => natural,
        GroupId::DINF => l % 2 == 0,
        GroupId::DINFH => l % 2 == 0 && even_p,
        GroupId::SO3 => l == 0,
        GroupId::O3 => l == 0 && even_p,
        _ => unreachable!("finite groups excluded above"),
    };
    Ok(c as u32)
}

fn floor(a: u32, b: u32) -> i64 {
    (a / b) as i64
}

fn rotation_closed(r: Rotations, l: u32) -> i64 {
    let li = l as i64;
    let even = (l % 2 == 0) as i64;
    match r {
        Rotations::Cyclic(n) => 2 * floor(l, n) + 1,
        Rotations::Dihedral(n) => floor(l, n) + even,
        Rotations::T => 2 * floor(l, 3) + floor(l, 2) - li + 1,
        Rotations::O => floor(l, 4) + floor(l, 3) + floor(l, 2) - li + 1,
        Rotations::Y => floor(l, 5) + floor(l, 3) + floor(l, 2) - li + 1,
        Rotations::Cinf => 1,
        Rotations::Dinf => even,
        Rotations::SO3 => (l == 0) as i64,
    }
}

/// Tabulated closed forms: every proper group, the inversion groups
/// (by their rotation subgroup for even parity, zero for odd), and the
/// non-inversion improper groups for odd parity. Improper groups without
/// inversion under even parity have no tabulated form.
pub fn subduce_closed(h: GroupId, irrep: &Irrep) -> Result<u32> {
    check_restricts(h, irrep)?;
    let no_form = || Error::NoClosedForm {
        group: h.to_string(),
        irrep: irrep.to_string(),
    };
    let l = irrep.degree().ok_or_else(no_form)?;
    let li = l as i64;
    let c = match (h.structure(), irrep.parity()) {
        (Structure::Proper(r), _) => rotation_closed(r, l),
        (Structure::Inversion(r), Some(Parity::Even)) => rotation_closed(r, l),
        (Structure::Inversion(_), _) => 0,
        (Structure::Mixed { full, kernel }, Some(Parity::Odd)) => match (full, kernel) {
            (Rotations::Cyclic(_), Rotations::Cyclic(k)) => 2 * floor(l + k, 2 * k),
            (Rotations::Dihedral(m), Rotations::Cyclic(k)) if m == k => {
                floor(l, k) + (l % 2) as i64
            }
            (Rotations::Dihedral(_), Rotations::Dihedral(k)) => floor(l + k, 2 * k),
            (Rotations::O, Rotations::T) => {
                floor(l + 2, 4) + floor(l, 3) + floor(l + 1, 2) - li
            }
            (Rotations::Dinf, Rotations::Cinf) => (l % 2) as i64,
            _ => return Err(no_form()),
        },
        _ => return Err(no_form()),
    };
    if c < 0 {
        return Err(Error::Consistency(format!("negative closed form for {h} in {irrep}")));
    }
    Ok(c as u32)
}

/// Frequency from the closed form when one exists, else from the trace.
pub fn subduce(h: GroupId, irrep: &Irrep) -> Result<u32> {
    match subduce_closed(h, irrep) {
        Ok(c) => Ok(c),
        Err(Error::NoClosedForm { .. }) => subduce_trace(h, irrep),
        Err(e) => Err(e),
    }
}

/// Tesseral labels of a representative vector with little group `h` in
/// standard orientation, after the components removable by rotations in
/// the normaliser have been dropped: first `1-`, `1+`, then the sine
/// partner of the lowest remaining |m|.
pub fn rep_vectors(h: GroupId, irrep: &Irrep) -> Result<Vec<Tesseral>> {
    use crate::catalog::Family::*;
    if matches!(h.family(), T | Td | Th | O | Oh | Y | Yh) {
        return Err(Error::NonTesseral { group: h.to_string() });
    }
    let (l, parity) = match *irrep {
        Irrep::Rotation { l } => (l, None),
        Irrep::Orthogonal { l, parity } => (l, Some(parity)),
        Irrep::Axial(_) => return Err(irrep.mismatch(h, "axial irreps have no tesseral basis")),
    };
    check_restricts(h, irrep)?;
    let mut labels = invariant_labels(h, l, parity)?;
    let c = labels.len() as u32;
    let f0 = crate::criteria::massless_frequency(h, c);
    // Massless directions are spent on the lowest azimuthal orders, sine
    // before cosine.
    let mut order: Vec<Tesseral> = labels.iter().copied().filter(|t| t.m > 0).collect();
    order.sort_by_key(|t| (t.m, !t.sine));
    if (order.len() as u32) < f0 {
        return Err(Error::Consistency(format!(
            "could not drop {f0} massless components for {h} in {irrep}"
        )));
    }
    let dropped = &order[..f0 as usize];
    labels.retain(|t| !dropped.contains(t));
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rotation_character_limits() {
        for l in 0..10 {
            assert!((chi_rotation(l, 0.0) - (2 * l + 1) as f64).abs() < 1e-12);
            assert!((chi_rotation(l, 1e-9) - (2 * l + 1) as f64).abs() < 1e-6);
            let pi = if l % 2 == 0 { 1.0 } else { -1.0 };
            assert!((chi_rotation(l, PI) - pi).abs() < 1e-9);
        }
        assert!((chi_rotation(2, PI / 2.0) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn improper_characters() {
        let sigma_h = GroupElement::improper(&nalgebra::Vector3::z(), PI);
        assert_eq!(Irrep::o3(1, Parity::Even).character(&sigma_h).unwrap().round(), -1.0);
        assert_eq!(Irrep::o3(1, Parity::Odd).character(&sigma_h).unwrap().round(), 1.0);
        let inv = GroupElement::inversion();
        for l in 0..6 {
            for p in [Parity::Even, Parity::Odd] {
                let chi = Irrep::o3(l, p).character(&inv).unwrap();
                assert!((chi - p.sign() * (2 * l + 1) as f64).abs() < 1e-12);
            }
        }
        assert!(Irrep::so3(2).character(&inv).is_err());
    }

    #[test]
    fn irrep_labels() {
        assert_eq!("4+".parse::<Irrep>().unwrap(), Irrep::o3(4, Parity::Even));
        assert_eq!("3-".parse::<Irrep>().unwrap(), Irrep::o3(3, Parity::Odd));
        assert_eq!("5".parse::<Irrep>().unwrap(), Irrep::so3(5));
        assert!("x".parse::<Irrep>().is_err());
    }

    #[test]
    fn known_frequencies() {
        let g = |s: &str| s.parse::<GroupId>().unwrap();
        let c = |h: &str, i: &str| subduce_trace(g(h), &i.parse().unwrap()).unwrap();
        assert_eq!(c("C1", "3-"), 7);
        assert_eq!(c("Cs", "1+"), 1);
        assert_eq!(c("Cs", "1-"), 2);
        assert_eq!(c("C2v", "3-"), 2);
        assert_eq!(c("Td", "3-"), 1);
        assert_eq!(c("Y", "6"), 1);
        assert_eq!(c("T", "6"), 2);
        assert_eq!(c("Oh", "4+"), 1);
        assert_eq!(c("C5h", "1+"), 1);
        assert_eq!(c("C5h", "1-"), 0);
    }

    #[test]
    fn wrong_parent_rejected() {
        assert!(subduce_trace(GroupId::TD, &Irrep::so3(3)).is_err());
    }
}
