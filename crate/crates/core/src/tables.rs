//! Published reference tables bundled as data, their recomputation, and the
//! ledger of known disagreements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::GroupId;
use crate::characters::{subduce, Irrep, Parity};
use crate::criteria::massive_little_groups;
use crate::error::{Error, Result};
use crate::lattice::{subgroups, LatticeSlice};

const TABLE3: &str = include_str!("../data/table3.csv");
const TABLE4: &str = include_str!("../data/table4.csv");
const TABLE5: &str = include_str!("../data/table5.csv");
const LEDGER: &str = include_str!("../data/ledger.json");

/// Irreps of the frequency table in column order; `0+` is implicit.
pub fn table3_irreps() -> Vec<Irrep> {
    let mut out = vec![Irrep::o3(0, Parity::Odd)];
    for l in 1..=6 {
        out.push(Irrep::o3(l, Parity::Even));
        out.push(Irrep::o3(l, Parity::Odd));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct FrequencyRow {
    pub group: GroupId,
    pub subgroups: Vec<GroupId>,
    pub supergroups: Vec<GroupId>,
    pub fbar: u32,
    /// Frequencies for `0-, 1+, 1-, ..., 6-`.
    pub c: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumRow {
    pub parity: Option<Parity>,
    pub group: GroupId,
    /// Entry per degree; `None` where the group is not a little group.
    pub entries: Vec<Option<u32>>,
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
}

fn parse_err(what: &str, line: &str) -> Error {
    Error::Consistency(format!("malformed {what} line `{line}`"))
}

fn groups(field: &str) -> Result<Vec<GroupId>> {
    field.split_whitespace().map(str::parse).collect()
}

pub fn frequency_table() -> Result<Vec<FrequencyRow>> {
    data_lines(TABLE3)
        .map(|line| {
            let f: Vec<&str> = line.split(';').collect();
            if f.len() != 17 {
                return Err(parse_err("frequency table", line));
            }
            let c = f[4..]
                .iter()
                .map(|v| v.parse().map_err(|_| parse_err("frequency table", line)))
                .collect::<Result<Vec<u32>>>()?;
            Ok(FrequencyRow {
                group: f[0].parse()?,
                subgroups: groups(f[1])?,
                supergroups: groups(f[2])?,
                fbar: f[3].parse().map_err(|_| parse_err("frequency table", line))?,
                c,
            })
        })
        .collect()
}

fn entries(field: &str, line: &str) -> Result<Vec<Option<u32>>> {
    field
        .split_whitespace()
        .map(|v| match v {
            "-" => Ok(None),
            n => n.parse().map(Some).map_err(|_| parse_err("stratum table", line)),
        })
        .collect()
}

/// SO(3) stratum table, degrees 0 to 4.
pub fn so3_table() -> Result<Vec<StratumRow>> {
    data_lines(TABLE4)
        .map(|line| {
            let (g, rest) = line.split_once(';').ok_or_else(|| parse_err("SO(3) table", line))?;
            Ok(StratumRow {
                parity: None,
                group: g.parse()?,
                entries: entries(rest, line)?,
            })
        })
        .collect()
}

/// O(3) stratum table, degrees 0 to 9, both parities.
pub fn o3_table() -> Result<Vec<StratumRow>> {
    data_lines(TABLE5)
        .map(|line| {
            let f: Vec<&str> = line.split(';').collect();
            if f.len() != 3 {
                return Err(parse_err("O(3) table", line));
            }
            Ok(StratumRow {
                parity: Some(f[0].parse()?),
                group: f[1].parse()?,
                entries: entries(f[2], line)?,
            })
        })
        .collect()
}

/// A known disagreement between a published value and what this crate
/// computes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub id: String,
    pub table: String,
    pub group: Option<String>,
    pub irrep: Option<String>,
    pub published: Option<String>,
    pub computed: Option<String>,
    pub note: String,
}

pub fn ledger() -> Vec<LedgerEntry> {
    serde_json::from_str(LEDGER).expect("bundled ledger is valid JSON")
}

/// The ledger entry covering a given cell, if any.
pub fn ledger_lookup(table: &str, group: &str, irrep: &str) -> Option<LedgerEntry> {
    ledger().into_iter().find(|e| {
        e.table == table
            && e.group.as_deref() == Some(group)
            && e.irrep.as_deref().map_or(true, |i| i == irrep)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub table: String,
    pub group: String,
    pub irrep: String,
    pub published: String,
    pub computed: String,
    pub ledger: Option<String>,
}

fn mismatch(table: &str, group: String, irrep: String, published: String, computed: String) -> Mismatch {
    let ledger = ledger_lookup(table, &group, &irrep).map(|e| e.id);
    Mismatch {
        table: table.into(),
        group,
        irrep,
        published,
        computed,
        ledger,
    }
}

/// Cells of the frequency table where the trace formula disagrees.
pub fn check_frequency_table() -> Result<Vec<Mismatch>> {
    let irreps = table3_irreps();
    let mut out = Vec::new();
    for row in frequency_table()? {
        for (irrep, &published) in irreps.iter().zip(&row.c) {
            let c = subduce(row.group, irrep)?;
            if c != published {
                out.push(mismatch(
                    "3",
                    row.group.to_string(),
                    irrep.to_string(),
                    published.to_string(),
                    c.to_string(),
                ));
            }
        }
        let fbar = crate::criteria::fbar(row.group);
        if fbar != row.fbar {
            out.push(mismatch(
                "3",
                row.group.to_string(),
                "fbar".into(),
                row.fbar.to_string(),
                fbar.to_string(),
            ));
        }
    }
    Ok(out)
}

/// Adjacency column of the frequency table against the lattice of O(3)
/// cut at n = 6 and restricted to the listed groups.
pub fn check_adjacency() -> Result<Vec<Mismatch>> {
    let rows = frequency_table()?;
    let listed: Vec<GroupId> = rows.iter().map(|r| r.group).collect();
    let nodes: Vec<GroupId> = subgroups(GroupId::O3, 6)
        .nodes()
        .iter()
        .copied()
        .filter(|g| listed.contains(g))
        .collect();
    let slice = LatticeSlice::from_nodes(GroupId::O3, 6, nodes);
    let mut out = Vec::new();
    for row in &rows {
        let mut computed = slice.adjacent_supergroups(row.group);
        let mut published = row.supergroups.clone();
        computed.sort_by(|a, b| a.listing_cmp(b));
        published.sort_by(|a, b| a.listing_cmp(b));
        if computed != published {
            let show = |v: &[GroupId]| v.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ");
            out.push(mismatch(
                "3-adjacency",
                row.group.to_string(),
                "supergroups".into(),
                show(&published),
                show(&computed),
            ));
        }
    }
    Ok(out)
}

/// Computed stratum dimensions keyed by group, for one irrep.
fn computed_strata(irrep: &Irrep) -> Result<BTreeMap<String, u32>> {
    Ok(massive_little_groups(irrep, None)?
        .into_iter()
        .map(|e| (e.group.to_string(), e.stratum_dim))
        .collect())
}

fn check_strata(table: &str, rows: &[StratumRow], irrep_of: impl Fn(u32, Option<Parity>) -> Irrep) -> Result<Vec<Mismatch>> {
    let mut out = Vec::new();
    let degrees = rows.first().map_or(0, |r| r.entries.len()) as u32;
    let parities: Vec<Option<Parity>> = {
        let mut p: Vec<Option<Parity>> = rows.iter().map(|r| r.parity).collect();
        p.dedup();
        p
    };
    for parity in parities {
        for l in 0..degrees {
            let irrep = irrep_of(l, parity);
            let computed = computed_strata(&irrep)?;
            let mut seen = Vec::new();
            for row in rows.iter().filter(|r| r.parity == parity) {
                let g = row.group.to_string();
                seen.push(g.clone());
                let published = row.entries[l as usize];
                let mine = computed.get(&g).copied();
                if published != mine {
                    let show = |v: Option<u32>| v.map_or("-".to_string(), |x| x.to_string());
                    out.push(mismatch(table, g, irrep.to_string(), show(published), show(mine)));
                }
            }
            for (g, d) in &computed {
                if !seen.contains(g) {
                    out.push(mismatch(table, g.clone(), irrep.to_string(), "absent".into(), d.to_string()));
                }
            }
        }
    }
    Ok(out)
}

pub fn check_so3_table() -> Result<Vec<Mismatch>> {
    check_strata("4", &so3_table()?, |l, _| Irrep::so3(l))
}

pub fn check_o3_table() -> Result<Vec<Mismatch>> {
    check_strata("5", &o3_table()?, |l, p| Irrep::o3(l, p.expect("parity")))
}

/// A rendered table: header plus string cells.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_text(&self) -> String {
        let mut width = vec![0; self.header.len()];
        for row in std::iter::once(&self.header).chain(&self.rows) {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |row: &[String]| {
            row.iter()
                .zip(&width)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = format!("{}\n{}\n", self.title, line(&self.header));
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let quote = |c: &String| {
            if c.contains([',', '"', '\n']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        };
        std::iter::once(&self.header)
            .chain(&self.rows)
            .map(|r| r.iter().map(quote).collect::<Vec<_>>().join(",") + "\n")
            .collect()
    }
}

fn dash(v: Option<u32>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn joined(groups: &[GroupId]) -> String {
    groups.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

/// Frequencies recomputed for the groups of the bundled frequency table.
pub fn emit_frequency_table() -> Result<Table> {
    let irreps = table3_irreps();
    let rows = frequency_table()?;
    let listed: Vec<GroupId> = rows.iter().map(|r| r.group).collect();
    let nodes = subgroups(GroupId::O3, 6)
        .nodes()
        .iter()
        .copied()
        .filter(|g| listed.contains(g))
        .collect();
    let slice = LatticeSlice::from_nodes(GroupId::O3, 6, nodes);
    let mut header = vec!["H".to_string(), "subgroups".into(), "supergroups".into(), "fbar".into()];
    header.extend(irreps.iter().map(|i| i.to_string()));
    let mut out = Vec::new();
    for g in listed {
        let mut row = vec![
            g.to_string(),
            joined(&slice.adjacent_subgroups(g)),
            joined(&slice.adjacent_supergroups(g)),
            crate::criteria::fbar(g).to_string(),
        ];
        for irrep in &irreps {
            row.push(subduce(g, irrep)?.to_string());
        }
        out.push(row);
    }
    Ok(Table {
        title: "Subduction frequencies within O(3), l <= 6".into(),
        header,
        rows: out,
    })
}

fn emit_strata(title: &str, published: &[StratumRow], parities: &[Option<Parity>], l_max: u32) -> Result<Table> {
    let mut header = vec!["H".to_string()];
    if parities[0].is_some() {
        header.insert(0, "parity".into());
    }
    header.extend((0..=l_max).map(|l| l.to_string()));
    let mut rows = Vec::new();
    for &p in parities {
        let mut grid: Vec<(GroupId, Vec<Option<u32>>)> = published
            .iter()
            .filter(|r| r.parity == p)
            .map(|r| (r.group, vec![None; l_max as usize + 1]))
            .collect();
        for l in 0..=l_max {
            let irrep = match p {
                Some(p) => Irrep::o3(l, p),
                None => Irrep::so3(l),
            };
            for e in massive_little_groups(&irrep, None)? {
                let i = match grid.iter().position(|(g, _)| *g == e.group) {
                    Some(i) => i,
                    None => {
                        grid.push((e.group, vec![None; l_max as usize + 1]));
                        grid.len() - 1
                    }
                };
                grid[i].1[l as usize] = Some(e.stratum_dim);
            }
        }
        for (g, v) in grid {
            let mut row = vec![g.to_string()];
            if let Some(p) = p {
                row.insert(0, p.to_string());
            }
            row.extend(v.into_iter().map(dash));
            rows.push(row);
        }
    }
    Ok(Table {
        title: title.into(),
        header,
        rows,
    })
}

pub fn emit_so3_table(l_max: u32) -> Result<Table> {
    emit_strata("Little groups of SO(3) irreps; entries are stratum dimensions", &so3_table()?, &[None], l_max)
}

pub fn emit_o3_table(l_max: u32) -> Result<Table> {
    emit_strata(
        "Little groups of O(3) irreps; entries are stratum dimensions",
        &o3_table()?,
        &[Some(Parity::Even), Some(Parity::Odd)],
        l_max,
    )
}

fn closed_form_text(g: GroupId, odd: bool) -> &'static str {
    use crate::catalog::Family::*;
    match (g.family(), odd) {
        (Y, _) => "[l/5]+[l/3]+[l/2]-l+1",
        (O, _) => "[l/4]+[l/3]+[l/2]-l+1",
        (T, _) => "2[l/3]+[l/2]-l+1",
        (Td, _) => "[(l+2)/4]+[l/3]+[(l+1)/2]-l",
        (Dinf | Cinf | Cinfv, _) => "1 or 0 by parity of l",
        (Dn, _) => "[l/n]+[l even]",
        (Cn, _) => "2[l/n]+1",
        (Cnv, true) => "[l/n]+[l odd]",
        (Dnd | Dnh, true) => "[(l+n)/2n]",
        (Cnh | S2n, true) => "2[(l+n)/2n]",
        (Cs, true) => "2[(l+1)/2]",
        (C1, _) => "2l+1",
        _ => "",
    }
}

fn membership_table(title: &str, groups: Vec<GroupId>, irrep_of: impl Fn(u32) -> Irrep, odd: bool, l_max: u32) -> Result<Table> {
    let mut hits: Vec<Vec<u32>> = vec![Vec::new(); groups.len()];
    for l in 1..=l_max {
        let lg = massive_little_groups(&irrep_of(l), None)?;
        for (i, g) in groups.iter().enumerate() {
            if lg.iter().any(|e| e.group == *g) {
                hits[i].push(l);
            }
        }
    }
    let rows = groups
        .iter()
        .zip(hits)
        .map(|(g, ls)| {
            vec![
                g.to_string(),
                closed_form_text(*g, odd).to_string(),
                ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "),
            ]
        })
        .collect();
    Ok(Table {
        title: format!("{title}, 1 <= l <= {l_max}"),
        header: vec!["H".into(), "c".into(), "little group at l".into()],
        rows,
    })
}

/// Degrees at which each proper group is an SO(3) little group.
pub fn emit_so3_rules(l_max: u32, n_max: u32) -> Result<Table> {
    let mut groups = vec![GroupId::Y, GroupId::O, GroupId::T, GroupId::DINF, GroupId::CINF];
    groups.extend((2..=n_max).rev().map(GroupId::dn));
    groups.extend((2..=n_max).rev().map(GroupId::cn));
    groups.push(GroupId::C1);
    membership_table("Little groups of SO(3) irreps", groups, Irrep::so3, false, l_max)
}

/// Degrees at which each non-inversion group is a little group of `l-`.
pub fn emit_o3_odd_rules(l_max: u32, n_max: u32) -> Result<Table> {
    let mut groups = vec![GroupId::Y, GroupId::O, GroupId::TD, GroupId::T, GroupId::DINF, GroupId::CINFV];
    for n in (2..=n_max).rev() {
        groups.push(if n % 2 == 0 { GroupId::dnd(n) } else { GroupId::dnh(n) });
    }
    groups.extend((2..=n_max).rev().map(GroupId::dn));
    groups.extend((2..=n_max).rev().map(GroupId::cnv));
    groups.extend((3..=n_max).rev().filter(|n| n % 2 == 1).map(GroupId::cnh));
    groups.push(GroupId::CS);
    groups.extend((2..=n_max).rev().filter(|n| n % 2 == 0).map(GroupId::s2n));
    groups.extend((2..=n_max).rev().map(GroupId::cn));
    groups.push(GroupId::C1);
    membership_table("Little groups of O(3) irreps l-", groups, |l| Irrep::o3(l, Parity::Odd), true, l_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        assert_eq!(frequency_table().unwrap().len(), 50);
        assert_eq!(so3_table().unwrap().len(), 11);
        assert_eq!(o3_table().unwrap().len(), 61);
        assert!(!ledger().is_empty());
    }

    #[test]
    fn every_mismatch_is_in_the_ledger() {
        let all = [
            check_frequency_table().unwrap(),
            check_adjacency().unwrap(),
            check_so3_table().unwrap(),
        ]
        .concat();
        for m in all {
            assert!(m.ledger.is_some(), "{m:?}");
        }
    }

    #[test]
    fn emitted_tables_render() {
        let t = emit_so3_table(4).unwrap();
        assert_eq!(t.rows.len(), 11);
        assert!(t.to_text().contains("Dinf"));
        assert_eq!(t.to_csv().lines().count(), 12);
        let r = emit_so3_rules(12, 4).unwrap();
        assert_eq!(r.rows[2], ["T", "2[l/3]+[l/2]-l+1", "3 6 7 9 10 11 12"]);
    }
}
