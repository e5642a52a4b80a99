//! Real (tesseral) spherical harmonics and coefficient vectors.
//!
//! `Z_{m+}` carries `cos(m phi)` and `Z_{m-}` carries `sin(m phi)`; the
//! functions are orthonormal on the sphere and carry no Condon-Shortley
//! phase, so `Z_{1+}`, `Z_{1-}`, `Z_0` at l = 1 are positive multiples of
//! x, y, z. Vectors are stored in m order: index `l + m` holds `Z_{m+}`
//! for m > 0 and index `l - m` holds `Z_{m-}`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DVector, Vector3};
use serde::{Deserialize, Serialize};

use crate::characters::Parity;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tesseral {
    pub m: u32,
    /// `true` for the sine partner; always `false` when `m == 0`.
    pub sine: bool,
}

impl Tesseral {
    pub const ZERO: Tesseral = Tesseral { m: 0, sine: false };

    pub fn cos(m: u32) -> Tesseral {
        Tesseral { m, sine: false }
    }

    pub fn sin(m: u32) -> Tesseral {
        assert!(m > 0, "Z_0 has no sine partner");
        Tesseral { m, sine: true }
    }

    /// Signed m: positive for cosine, negative for sine.
    pub fn signed_m(self) -> i32 {
        if self.sine {
            -(self.m as i32)
        } else {
            self.m as i32
        }
    }

    pub fn index(self, l: u32) -> usize {
        (l as i32 + self.signed_m()) as usize
    }

    pub fn from_index(l: u32, i: usize) -> Tesseral {
        let m = i as i32 - l as i32;
        Tesseral {
            m: m.unsigned_abs(),
            sine: m < 0,
        }
    }
}

impl fmt::Display for Tesseral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.sine) {
            (0, _) => write!(f, "0"),
            (m, false) => write!(f, "{m}+"),
            (m, true) => write!(f, "{m}-"),
        }
    }
}

impl FromStr for Tesseral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tesseral> {
        let s = s.trim();
        let bad = || Error::Coefficients(format!("bad tesseral label `{s}`"));
        if s == "0" {
            return Ok(Tesseral::ZERO);
        }
        let (num, sign) = s.split_at(s.len().checked_sub(1).ok_or_else(bad)?);
        let m: u32 = num.parse().map_err(|_| bad())?;
        match (m, sign) {
            (0, _) => Err(bad()),
            (m, "+") => Ok(Tesseral::cos(m)),
            (m, "-") => Ok(Tesseral::sin(m)),
            _ => Err(bad()),
        }
    }
}

/// Labels in listing order: 0, 1+, 1-, 2+, 2-, ..., l+, l-.
pub fn labels(l: u32) -> Vec<Tesseral> {
    let mut out = vec![Tesseral::ZERO];
    for m in 1..=l {
        out.push(Tesseral::cos(m));
        out.push(Tesseral::sin(m));
    }
    out
}

/// Associated Legendre functions P_l^m(x) for 0 <= m <= l, without the
/// Condon-Shortley phase.
fn legendre(l: u32, m: u32, x: f64) -> f64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= (2 * k - 1) as f64 * s;
    }
    if l == m {
        return pmm;
    }
    let mut p1 = x * (2 * m + 1) as f64 * pmm;
    let mut p0 = pmm;
    for ll in (m + 2)..=l {
        let p = ((2 * ll - 1) as f64 * x * p1 - (ll + m - 1) as f64 * p0) / (ll - m) as f64;
        p0 = p1;
        p1 = p;
    }
    p1
}

fn norm(l: u32, m: u32) -> f64 {
    let mut ratio = 1.0;
    for k in (l - m + 1)..=(l + m) {
        ratio /= k as f64;
    }
    let base = ((2 * l + 1) as f64 / (4.0 * PI) * ratio).sqrt();
    if m > 0 {
        base * 2f64.sqrt()
    } else {
        base
    }
}

/// Value of `Z_label` of degree `l` in direction `dir`.
pub fn eval(l: u32, label: Tesseral, dir: &Vector3<f64>) -> f64 {
    let d = dir.normalize();
    let phi = d.y.atan2(d.x);
    let p = norm(l, label.m) * legendre(l, label.m, d.z.clamp(-1.0, 1.0));
    let m = label.m as f64;
    match (label.m, label.sine) {
        (0, _) => p,
        (_, false) => p * (m * phi).cos(),
        (_, true) => p * (m * phi).sin(),
    }
}

/// All `2l + 1` values in m order.
pub fn eval_all(l: u32, dir: &Vector3<f64>) -> DVector<f64> {
    DVector::from_fn((2 * l + 1) as usize, |i, _| {
        eval(l, Tesseral::from_index(l, i), dir)
    })
}

/// Coefficients of a function in the degree-`l` tesseral basis. A missing
/// parity means the vector is read as a representation of SO(3) only.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffVector {
    pub l: u32,
    pub parity: Option<Parity>,
    pub coeffs: DVector<f64>,
}

impl CoeffVector {
    pub fn zeros(l: u32, parity: Option<Parity>) -> CoeffVector {
        CoeffVector {
            l,
            parity,
            coeffs: DVector::zeros((2 * l + 1) as usize),
        }
    }

    pub fn from_pairs(l: u32, parity: Option<Parity>, pairs: &[(Tesseral, f64)]) -> CoeffVector {
        let mut v = CoeffVector::zeros(l, parity);
        for &(t, c) in pairs {
            v.set(t, c);
        }
        v
    }

    pub fn get(&self, t: Tesseral) -> f64 {
        self.coeffs[t.index(self.l)]
    }

    pub fn set(&mut self, t: Tesseral, value: f64) {
        assert!(t.m <= self.l, "label {t} exceeds l = {}", self.l);
        let i = t.index(self.l);
        self.coeffs[i] = value;
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }

    pub fn normalized(&self) -> Result<CoeffVector> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::ZeroVector);
        }
        Ok(CoeffVector {
            coeffs: &self.coeffs / n,
            ..self.clone()
        })
    }

    /// Labels whose coefficient exceeds `tol` in magnitude.
    pub fn support(&self, tol: f64) -> Vec<Tesseral> {
        labels(self.l)
            .into_iter()
            .filter(|t| self.get(*t).abs() > tol)
            .collect()
    }

    pub fn eval(&self, dir: &Vector3<f64>) -> f64 {
        self.coeffs.dot(&eval_all(self.l, dir))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: BTreeMap<String, f64> = labels(self.l)
            .into_iter()
            .filter(|t| self.get(*t) != 0.0)
            .map(|t| (t.to_string(), self.get(t)))
            .collect();
        let mut obj = serde_json::json!({ "l": self.l, "coeffs": coeffs });
        if let Some(p) = self.parity {
            obj["parity"] = serde_json::Value::String(p.to_string());
        }
        obj
    }

    pub fn from_json(text: &str) -> Result<CoeffVector> {
        #[derive(Deserialize)]
        struct Raw {
            l: u32,
            parity: Option<String>,
            coeffs: BTreeMap<String, f64>,
        }
        let raw: Raw =
            serde_json::from_str(text).map_err(|e| Error::Coefficients(e.to_string()))?;
        let parity = match raw.parity.as_deref() {
            None => None,
            Some(p) => Some(p.parse()?),
        };
        let mut v = CoeffVector::zeros(raw.l, parity);
        for (k, c) in raw.coeffs {
            let t: Tesseral = k.parse()?;
            if t.m > raw.l {
                return Err(Error::Coefficients(format!(
                    "label {t} exceeds l = {}",
                    raw.l
                )));
            }
            if !c.is_finite() {
                return Err(Error::Coefficients(format!("coefficient {k} is not finite")));
            }
            v.set(t, c);
        }
        Ok(v)
    }
}

impl Serialize for CoeffVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
