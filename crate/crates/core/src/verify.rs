//! Cross-checks between the closed forms, the chain criteria, the numeric
//! oracle and the bundled tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{all_groups, GroupElement, GroupId};
use crate::characters::{rep_vectors, subduce, subduce_trace, Irrep, Parity};
use crate::criteria::{historical_little_groups, massive_little_groups, parity_lift, ChainCoverage};
use crate::error::Result;
use crate::oracle::detect::{detect_symmetry, DetectOptions};
use crate::oracle::projector::rank;
use crate::oracle::rotation::element_matrix;
use crate::oracle::tesseral::{CoeffVector, Tesseral};
use crate::tables::{self, LedgerEntry, Mismatch};

#[derive(Clone, Debug, Serialize)]
pub struct TrialFailure {
    pub trial: u32,
    pub detected: Option<GroupId>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepVectorReport {
    pub group: GroupId,
    pub irrep: Irrep,
    pub labels: Vec<String>,
    pub trials: u32,
    pub passed: u32,
    pub failures: Vec<TrialFailure>,
}

/// Random combination of the given labels with coefficients in `[0.2, 1]`
/// and random sign.
pub fn random_combination(l: u32, parity: Option<Parity>, labels: &[Tesseral], rng: &mut impl Rng) -> CoeffVector {
    let mut a = CoeffVector::zeros(l, parity);
    for &t in labels {
        let v: f64 = rng.gen_range(0.2..1.0);
        a.set(t, if rng.gen_bool(0.5) { v } else { -v });
    }
    a
}

/// Draws random vectors over the representation vectors of `h` and checks
/// that each has little group exactly `h`.
pub fn verify_rep_vectors(h: GroupId, irrep: &Irrep, trials: u32, seed: u64) -> Result<RepVectorReport> {
    let labels = rep_vectors(h, irrep)?;
    let (l, parity) = (irrep.degree().unwrap_or(0), irrep.parity());
    let opts = DetectOptions {
        proper_only: parity.is_none(),
        ..DetectOptions::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let a = random_combination(l, parity, &labels, &mut rng);
        match detect_symmetry(&a, &opts) {
            Ok(r) if r.group == h => {}
            Ok(r) => failures.push(TrialFailure {
                trial,
                detected: Some(r.group),
                error: None,
            }),
            Err(e) => failures.push(TrialFailure {
                trial,
                detected: None,
                error: Some(e.to_string()),
            }),
        }
    }
    Ok(RepVectorReport {
        group: h,
        irrep: *irrep,
        labels: labels.iter().map(|t| t.to_string()).collect(),
        trials,
        passed: trials - failures.len() as u32,
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    /// Every disagreement with the bundled tables, with its ledger id.
    pub mismatches: Vec<Mismatch>,
    pub ledger: Vec<LedgerEntry>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, suite: &str, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            suite: suite.into(),
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn push_result(&mut self, suite: &str, name: &str, r: Result<(bool, String)>) {
        match r {
            Ok((ok, d)) => self.push(suite, name, ok, d),
            Err(e) => self.push(suite, name, false, format!("error: {e}")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyScope {
    pub tables: bool,
    pub criteria: bool,
    pub oracle: bool,
    pub l_max: u32,
    pub seed: u64,
}

impl Default for VerifyScope {
    fn default() -> Self {
        VerifyScope {
            tables: true,
            criteria: true,
            oracle: true,
            l_max: 6,
            seed: 1,
        }
    }
}

fn table_check(m: Result<Vec<Mismatch>>, report: &mut VerifyReport) -> Result<(bool, String)> {
    let m = m?;
    let open: Vec<&Mismatch> = m.iter().filter(|x| x.ledger.is_none()).collect();
    let detail = format!("{} cells differ, {} covered by the ledger", m.len(), m.len() - open.len());
    let ok = open.is_empty();
    report.mismatches.extend(m);
    Ok((ok, detail))
}

fn names(groups: &[GroupId]) -> String {
    groups.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

/// Groups that must be rejected by the massive criterion, and the Michel
/// and Ihrig-Golubitsky false positive.
pub fn regressions() -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    let lg = |irrep: Irrep| -> Result<Vec<GroupId>> {
        Ok(massive_little_groups(&irrep, None)?.into_iter().map(|e| e.group).collect())
    };
    let cases = [
        (Irrep::so3(3), vec![GroupId::dn(2)]),
        (Irrep::o3(1, Parity::Odd), vec![GroupId::CS]),
        (Irrep::o3(3, Parity::Even), vec![GroupId::dnh(2)]),
        (Irrep::o3(4, Parity::Even), vec![GroupId::s2n(3), GroupId::cnh(4)]),
        (Irrep::o3(3, Parity::Odd), vec![GroupId::T]),
        (Irrep::o3(4, Parity::Odd), vec![GroupId::T]),
    ];
    for (irrep, excluded) in cases {
        let found = lg(irrep)?;
        for g in excluded {
            out.push((format!("{g} rejected at {irrep}"), !found.contains(&g)));
        }
    }
    for ig in [false, true] {
        let g = historical_little_groups(&Irrep::so3(3), ig, ChainCoverage::AnyChain, None)?;
        let name = if ig { "Ihrig-Golubitsky" } else { "Michel" };
        out.push((format!("{name} accepts D2 at 3"), g.contains(&GroupId::dn(2))));
    }
    Ok(out)
}

/// Degrees at which T, O and Y are SO(3) little groups, as a predicate.
pub fn polyhedral_rule(g: GroupId, l: u32) -> bool {
    match g {
        GroupId::T => matches!(l, 3 | 6 | 7) || l >= 9,
        GroupId::O => matches!(l, 4 | 6 | 8 | 9 | 10) || l >= 12,
        GroupId::Y => matches!(l, 6 | 10 | 12 | 15 | 16 | 18 | 20 | 21 | 22 | 24..=28) || l >= 30,
        _ => false,
    }
}

fn polyhedral_check(l_lo: u32, l_hi: u32) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for l in l_lo..=l_hi {
        let found: Vec<GroupId> = massive_little_groups(&Irrep::so3(l), None)?
            .into_iter()
            .map(|e| e.group)
            .collect();
        for g in [GroupId::T, GroupId::O, GroupId::Y] {
            if found.contains(&g) != polyhedral_rule(g, l) {
                bad.push(format!("{g}@{l}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("l = {l_lo}..{l_hi}; wrong: [{}]", bad.join(", "))))
}

fn lift_check(l_max: u32) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for l in 0..=l_max {
        let lifted: Vec<GroupId> = parity_lift(&massive_little_groups(&Irrep::so3(l), None)?)
            .into_iter()
            .map(|e| e.group)
            .collect();
        let direct: Vec<GroupId> = massive_little_groups(&Irrep::o3(l, Parity::Even), None)?
            .into_iter()
            .map(|e| e.group)
            .collect();
        if lifted != direct {
            bad.push(format!("l={l}: lifted [{}] direct [{}]", names(&lifted), names(&direct)));
        }
    }
    Ok((bad.is_empty(), format!("l = 0..{l_max}; {}", bad.join("; "))))
}

/// Finite catalogued groups of order at most 120.
pub fn finite_groups(n_max: u32) -> Vec<GroupId> {
    all_groups(n_max)
        .into_iter()
        .filter(|g| g.order().is_some_and(|o| o <= 120))
        .collect()
}

/// Projector rank against the trace formula on a group/irrep grid.
pub fn rank_sweep(groups: &[GroupId], l_max: u32) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for &g in groups {
        for l in 0..=l_max {
            for p in [Parity::Even, Parity::Odd] {
                let c = subduce_trace(g, &Irrep::o3(l, p))? as usize;
                let r = rank(g, l, Some(p))?;
                if c != r {
                    bad.push(format!("{g} {l}{p}: rank {r}, trace {c}"));
                }
            }
        }
    }
    Ok(bad)
}

fn homomorphism_check(l_max: u32, seed: u64) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let random_element = |rng: &mut ChaCha8Rng| {
        let axis = nalgebra::Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        if rng.gen_bool(0.5) {
            GroupElement::rotation(&axis, angle)
        } else {
            GroupElement::improper(&axis, angle)
        }
    };
    for l in 0..=l_max {
        for _ in 0..20 {
            let (a, b) = (random_element(&mut rng), random_element(&mut rng));
            for p in [Parity::Even, Parity::Odd] {
                let lhs = element_matrix(l, Some(p), &a.compose(&b));
                let rhs = element_matrix(l, Some(p), &a) * element_matrix(l, Some(p), &b);
                worst = worst.max((lhs - rhs).amax());
            }
        }
    }
    (worst < 1e-9, format!("max deviation {worst:.2e}"))
}

fn rep_vector_check(l_max: u32, seed: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut checked = 0;
    for l in 1..=l_max {
        for irrep in [Irrep::so3(l), Irrep::o3(l, Parity::Odd)] {
            for e in massive_little_groups(&irrep, None)? {
                if e.rep_vector.is_none() {
                    continue;
                }
                checked += 1;
                let r = verify_rep_vectors(e.group, &irrep, 3, seed)?;
                if !r.failures.is_empty() {
                    let got: Vec<String> = r
                        .failures
                        .iter()
                        .map(|f| f.detected.map_or_else(|| "error".into(), |g| g.to_string()))
                        .collect();
                    bad.push(format!("{} at {irrep}: {}", e.group, got.join(" ")));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} pairs; failures: [{}]", bad.join("; "))))
}

pub fn run(scope: &VerifyScope) -> VerifyReport {
    let mut report = VerifyReport {
        ledger: tables::ledger(),
        ..VerifyReport::default()
    };
    if scope.tables {
        let r = table_check(tables::check_frequency_table(), &mut report);
        report.push_result("tables", "frequency table", r);
        let r = table_check(tables::check_adjacency(), &mut report);
        report.push_result("tables", "adjacency", r);
        let r = table_check(tables::check_so3_table(), &mut report);
        report.push_result("tables", "SO(3) strata", r);
        let r = table_check(tables::check_o3_table(), &mut report);
        report.push_result("tables", "O(3) strata", r);
    }
    if scope.criteria {
        match regressions() {
            Ok(rs) => {
                for (name, ok) in rs {
                    report.push("criteria", &name, ok, "");
                }
            }
            Err(e) => report.push("criteria", "regressions", false, e.to_string()),
        }
        let hi = scope.l_max.max(5).min(30);
        report.push_result("criteria", "T, O, Y general rules", polyhedral_check(1, hi));
        report.push_result("criteria", "parity lift", lift_check(scope.l_max));
    }
    if scope.oracle {
        let (ok, d) = homomorphism_check(scope.l_max, scope.seed);
        report.push("oracle", "homomorphism", ok, d);
        let r = rank_sweep(&finite_groups(6), scope.l_max)
            .map(|bad| (bad.is_empty(), format!("mismatches: [{}]", bad.join("; "))));
        report.push_result("oracle", "projector rank equals trace", r);
        let closed = closed_form_sweep(12, scope.l_max.max(6))
            .map(|bad| (bad.is_empty(), format!("mismatches: [{}]", bad.join("; "))));
        report.push_result("oracle", "closed forms equal trace", closed);
        report.push_result(
            "oracle",
            "representation vectors",
            rep_vector_check(scope.l_max.min(4), scope.seed),
        );
    }
    report
}

/// Closed-form frequencies against the trace formula.
pub fn closed_form_sweep(n_max: u32, l_max: u32) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for g in all_groups(n_max) {
        for l in 0..=l_max {
            let mut irreps = vec![Irrep::o3(l, Parity::Even), Irrep::o3(l, Parity::Odd)];
            if g.is_proper() {
                irreps.push(Irrep::so3(l));
            }
            for irrep in irreps {
                let Ok(closed) = crate::characters::subduce_closed(g, &irrep) else {
                    continue;
                };
                let trace = subduce_trace(g, &irrep)?;
                if closed != trace {
                    bad.push(format!("{g} {irrep}: closed {closed}, trace {trace}"));
                }
            }
        }
    }
    Ok(bad)
}

/// Subduction with the method used, for reporting.
pub fn subduce_with_provenance(h: GroupId, irrep: &Irrep) -> Result<(u32, &'static str, Option<u32>)> {
    let trace = subduce_trace(h, irrep)?;
    match crate::characters::subduce_closed(h, irrep) {
        Ok(c) => Ok((c, "closed form", Some(trace))),
        Err(_) => Ok((subduce(h, irrep)?, "trace", None)),
    }
}
