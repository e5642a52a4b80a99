//! Chain criteria for little groups: Michel, Ihrig-Golubitsky, and the
//! massive chain criterion, with little-group enumeration over SO(3) and
//! O(3).

use std::collections::HashMap;

use serde::Serialize;

use crate::catalog::{Family, GroupId, Structure};
use crate::characters::{rep_vectors, subduce, Irrep, Parity};
use crate::error::{Error, Result};
use crate::lattice::{default_n_max, subgroups, LatticeSlice};
use crate::oracle::tesseral::Tesseral;

/// Number of normaliser directions that move an invariant of `h` inside
/// its own fixed space: 3 for C1 and Ci, 1 for the finite single-axis
/// groups without vertical elements, 0 otherwise.
pub fn fbar(h: GroupId) -> u32 {
    match h.family() {
        Family::C1 | Family::Ci => 3,
        Family::Cs | Family::Cn | Family::Cnh | Family::S2n => 1,
        _ => 0,
    }
}

/// `min(c - 1, fbar)`, or 0 when there is no invariant.
pub fn massless_frequency(h: GroupId, c: u32) -> u32 {
    if c == 0 {
        0
    } else {
        (c - 1).min(fbar(h))
    }
}

pub fn massive_frequency(h: GroupId, c: u32) -> u32 {
    c - massless_frequency(h, c)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LittleGroupEntry {
    pub group: GroupId,
    pub c: u32,
    pub f0: u32,
    pub fm: u32,
    pub stratum_dim: u32,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "labels_as_text")]
    pub rep_vector: Option<Vec<Tesseral>>,
}

fn labels_as_text<S: serde::Serializer>(
    v: &Option<Vec<Tesseral>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let text: Option<Vec<String>> = v
        .as_ref()
        .map(|ls| ls.iter().map(|t| t.to_string()).collect());
    text.serialize(s)
}

impl LittleGroupEntry {
    pub fn new(group: GroupId, c: u32, rep_vector: Option<Vec<Tesseral>>) -> LittleGroupEntry {
        let f0 = massless_frequency(group, c);
        let fm = c - f0;
        LittleGroupEntry {
            group,
            c,
            f0,
            fm,
            stratum_dim: 3 - group.lie_dim() + fm,
            rep_vector,
        }
    }
}

pub fn stratum_dimension(entry: &LittleGroupEntry) -> u32 {
    3 - entry.group.lie_dim() + entry.fm
}

/// A chain `h < supergroup` on which the compared quantity fails to drop.
/// `supergroup == None` records that `h` has no invariant at all.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailingChain {
    pub supergroup: Option<GroupId>,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionVerdict {
    pub group: GroupId,
    pub passes: bool,
    pub failing_chains: Vec<FailingChain>,
}

/// How many adjacent chains must show the drop for a candidate to pass.
/// The historical criteria were applied as `AnyChain`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ChainCoverage {
    #[default]
    AnyChain,
    EveryChain,
}

/// Shared chain test: `h` passes when `value(h) >= 1` and the strict
/// inequality `sup(h') < sub(h, h')` holds on every (or some) adjacent
/// supergroup.
fn chain_test(
    h: GroupId,
    slice: &LatticeSlice,
    value: &dyn Fn(GroupId) -> Result<i64>,
    sup: &dyn Fn(GroupId) -> Result<i64>,
    sub: &dyn Fn(GroupId, GroupId) -> Result<i64>,
    coverage: ChainCoverage,
) -> Result<CriterionVerdict> {
    let c = value(h)?;
    if c < 1 {
        return Ok(CriterionVerdict {
            group: h,
            passes: false,
            failing_chains: vec![FailingChain {
                supergroup: None,
                lhs: c,
                rhs: 1,
            }],
        });
    }
    let ups = slice.adjacent_supergroups(h);
    let mut failing = Vec::new();
    for &k in &ups {
        let (lhs, rhs) = (sup(k)?, sub(h, k)?);
        if lhs >= rhs {
            failing.push(FailingChain {
                supergroup: Some(k),
                lhs,
                rhs,
            });
        }
    }
    let passes = match coverage {
        ChainCoverage::EveryChain => failing.is_empty(),
        ChainCoverage::AnyChain => ups.is_empty() || failing.len() < ups.len(),
    };
    if passes {
        failing.clear();
    }
    Ok(CriterionVerdict {
        group: h,
        passes,
        failing_chains: failing,
    })
}

/// Michel's test with an arbitrary subduction function, for lattices whose
/// irreps are not those of SO(3) or O(3).
pub fn michel_with(
    h: GroupId,
    slice: &LatticeSlice,
    c: &dyn Fn(GroupId) -> Result<u32>,
    coverage: ChainCoverage,
) -> Result<CriterionVerdict> {
    let v = |g: GroupId| c(g).map(i64::from);
    chain_test(h, slice, &v, &v, &|g, _| v(g), coverage)
}

/// `c(h) >= 1` and `c(h') < c(h)` on adjacent supergroups.
pub fn michel(
    h: GroupId,
    irrep: &Irrep,
    slice: &LatticeSlice,
    coverage: ChainCoverage,
) -> Result<CriterionVerdict> {
    michel_with(h, slice, &|g| subduce(g, irrep), coverage)
}

/// Lie dimension of the normaliser of `h` inside `k`.
pub fn normalizer_dim_in(h: GroupId, k: GroupId) -> u32 {
    if matches!(k, GroupId::SO3 | GroupId::O3) || matches!(h, GroupId::C1 | GroupId::CI) {
        return 3;
    }
    if h.normalizer_dim() == 1 {
        let two_fold = h == GroupId::cn(2) || h == GroupId::CS || h == GroupId::cnh(2);
        let dihedral_axial = matches!(k, GroupId::DINF | GroupId::DINFH | GroupId::CINFV);
        return if two_fold && dihedral_axial { 2 } else { 1 };
    }
    k.lie_dim().min(1)
}

/// `c(h') - dim N(h') < c(h) - dim N(h, h')` on adjacent supergroups.
pub fn ihrig_golubitsky(
    h: GroupId,
    irrep: &Irrep,
    slice: &LatticeSlice,
    coverage: ChainCoverage,
) -> Result<CriterionVerdict> {
    let c = |g: GroupId| subduce(g, irrep).map(i64::from);
    let sup = |k: GroupId| Ok(c(k)? - k.normalizer_dim() as i64);
    let sub = |h: GroupId, k: GroupId| Ok(c(h)? - normalizer_dim_in(h, k) as i64);
    chain_test(h, slice, &c, &sup, &sub, coverage)
}

/// Subduction and massive frequencies of every node, computed once.
pub struct FrequencyCache {
    irrep: Irrep,
    c: HashMap<GroupId, u32>,
}

impl FrequencyCache {
    pub fn new(irrep: Irrep, slice: &LatticeSlice) -> Result<FrequencyCache> {
        let mut c = HashMap::new();
        for &g in slice.nodes() {
            c.insert(g, subduce(g, &irrep)?);
        }
        Ok(FrequencyCache { irrep, c })
    }

    pub fn c(&self, g: GroupId) -> Result<u32> {
        match self.c.get(&g) {
            Some(&v) => Ok(v),
            None => subduce(g, &self.irrep),
        }
    }

    pub fn fm(&self, g: GroupId) -> Result<u32> {
        Ok(massive_frequency(g, self.c(g)?))
    }
}

/// The massive chain criterion: `c(h) >= 1` and `fm(h') < fm(h)` for every
/// adjacent supergroup.
pub fn massive(h: GroupId, cache: &FrequencyCache, slice: &LatticeSlice) -> Result<CriterionVerdict> {
    let c = |g: GroupId| cache.c(g).map(i64::from);
    let fm = |g: GroupId| cache.fm(g).map(i64::from);
    chain_test(h, slice, &c, &fm, &|g, _| fm(g), ChainCoverage::EveryChain)
}

fn parent_of(irrep: &Irrep) -> Result<GroupId> {
    match irrep {
        Irrep::Rotation { .. } => Ok(GroupId::SO3),
        Irrep::Orthogonal { .. } => Ok(GroupId::O3),
        Irrep::Axial(a) => Err(Error::IrrepMismatch {
            irrep: irrep.to_string(),
            group: a.group.to_string(),
            reason: "axial irreps have closed-form little groups".into(),
        }),
    }
}

/// Lattice slice used for an SO(3) or O(3) irrep.
pub fn slice_for(irrep: &Irrep, n_max: Option<u32>) -> Result<LatticeSlice> {
    let parent = parent_of(irrep)?;
    let l = irrep.degree().unwrap_or(0);
    Ok(subgroups(parent, n_max.unwrap_or_else(|| default_n_max(l))))
}

/// Every verdict of the massive criterion over the slice, in listing order.
pub fn massive_verdicts(irrep: &Irrep, n_max: Option<u32>) -> Result<Vec<CriterionVerdict>> {
    let slice = slice_for(irrep, n_max)?;
    let cache = FrequencyCache::new(*irrep, &slice)?;
    slice
        .nodes()
        .iter()
        .map(|&h| massive(h, &cache, &slice))
        .collect()
}

/// Little groups of an SO(3) or O(3) irrep under the massive criterion.
pub fn massive_little_groups(irrep: &Irrep, n_max: Option<u32>) -> Result<Vec<LittleGroupEntry>> {
    let slice = slice_for(irrep, n_max)?;
    let cache = FrequencyCache::new(*irrep, &slice)?;
    let mut out = Vec::new();
    for &h in slice.nodes() {
        if massive(h, &cache, &slice)?.passes {
            let rep = rep_vectors(h, irrep).ok();
            out.push(LittleGroupEntry::new(h, cache.c(h)?, rep));
        }
    }
    out.sort_by(|a, b| a.group.listing_cmp(&b.group));
    Ok(out)
}

/// Groups accepted by Michel or Ihrig-Golubitsky over the same slice.
pub fn historical_little_groups(
    irrep: &Irrep,
    ig: bool,
    coverage: ChainCoverage,
    n_max: Option<u32>,
) -> Result<Vec<GroupId>> {
    let slice = slice_for(irrep, n_max)?;
    let mut out = Vec::new();
    for &h in slice.nodes() {
        let v = if ig {
            ihrig_golubitsky(h, irrep, &slice, coverage)?
        } else {
            michel(h, irrep, &slice, coverage)?
        };
        if v.passes {
            out.push(h);
        }
    }
    Ok(out)
}

/// The proper group with inversion adjoined.
pub fn lift_group(g: GroupId) -> GroupId {
    match g.structure() {
        Structure::Proper(r) => {
            GroupId::from_structure(Structure::Inversion(r)).expect("every rotation group lifts")
        }
        _ => g,
    }
}

/// Maps little groups of the SO(3) irrep `l` to those of `l+` in O(3).
/// Frequencies and representation vectors carry over unchanged.
pub fn parity_lift(entries: &[LittleGroupEntry]) -> Vec<LittleGroupEntry> {
    let mut out: Vec<LittleGroupEntry> = entries
        .iter()
        .map(|e| {
            let group = lift_group(e.group);
            LittleGroupEntry::new(group, e.c, e.rep_vector.clone())
        })
        .collect();
    out.sort_by(|a, b| a.group.listing_cmp(&b.group));
    out
}

/// Convenience for the O(3) irrep `l` with parity `p`.
pub fn o3_little_groups(l: u32, p: Parity) -> Result<Vec<LittleGroupEntry>> {
    massive_little_groups(&Irrep::o3(l, p), None)
}
