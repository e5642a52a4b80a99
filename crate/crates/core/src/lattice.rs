//! Conjugacy-class subgroup relation between point groups and the
//! adjacency (covering) graph of a truncated slice of the lattice.

use std::collections::HashMap;
use std::fmt::Write as _;

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::catalog::{all_groups, GroupElement, GroupId, Rotations, Structure};

/// Default truncation of the axial order for an irrep of degree `l`.
pub fn default_n_max(l: u32) -> u32 {
    (2 * l + 1).max(6)
}

/// Index-two pairs `(full, kernel)` sorted into the five kinds that occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mixed {
    /// `(C2k, Ck)`: Cs, Ckh with k odd, S2k with k even.
    Z(u32),
    /// `(Dk, Ck)`: Ckv.
    V(u32),
    /// `(D2k, Dk)`: Dkd with k even, Dkh with k odd.
    M(u32),
    Td,
    Cinfv,
}

fn mixed_kind(full: Rotations, kernel: Rotations) -> Mixed {
    use Rotations::*;
    match (full, kernel) {
        (Cyclic(_), Cyclic(k)) => Mixed::Z(k),
        (Dihedral(m), Cyclic(k)) if m == k => Mixed::V(k),
        (Dihedral(_), Dihedral(k)) => Mixed::M(k),
        (O, T) => Mixed::Td,
        (Dinf, Cinf) => Mixed::Cinfv,
        _ => unreachable!("not an index-two pair: {full:?} > {kernel:?}"),
    }
}

fn odd_multiple(big: u32, small: u32) -> bool {
    big % small == 0 && (big / small) % 2 == 1
}

fn mixed_in_mixed(h: Mixed, k: Mixed) -> bool {
    use Mixed::*;
    match (h, k) {
        (Z(a), Z(b)) => odd_multiple(b, a),
        (Z(1), V(_) | M(_) | Td | Cinfv) => true,
        (Z(a), M(b)) => odd_multiple(b, a),
        (Z(2), Td) => true,
        (V(a), V(b)) => b % a == 0,
        (V(a), M(b)) => b % a == 0 || a == 2,
        (V(a), Td) => a == 2 || a == 3,
        (V(_), Cinfv) => true,
        (M(a), M(b)) => odd_multiple(b, a),
        (M(2), Td) => true,
        (Td, Td) | (Cinfv, Cinfv) => true,
        _ => false,
    }
}

/// Whether `h` is conjugate in O(3) to a subgroup of `k`.
pub fn is_subgroup(h: GroupId, k: GroupId) -> bool {
    use Structure::*;
    match (h.structure(), k.structure()) {
        (Proper(a), Proper(b) | Inversion(b)) => a.embeds_in(b),
        (Proper(a), Mixed { kernel, .. }) => a.embeds_in(kernel),
        (Inversion(a), Inversion(b)) => a.embeds_in(b),
        (Inversion(_), _) => false,
        (Mixed { .. }, Proper(_)) => false,
        (Mixed { full, .. }, Inversion(b)) => full.embeds_in(b),
        (Mixed { full: f1, kernel: k1 }, Mixed { full: f2, kernel: k2 }) => {
            mixed_in_mixed(mixed_kind(f1, k1), mixed_kind(f2, k2))
        }
    }
}

/// Numerically searches for a rotation `g` with `g h g^T` inside `k`, both
/// in standard orientation. Used to check [`is_subgroup`] on finite groups.
pub fn find_embedding(h: GroupId, k: GroupId) -> Option<Matrix3<f64>> {
    let he = h.elements().ok()?;
    let ke = k.elements().ok()?;
    if ke.len() % he.len() != 0 {
        return None;
    }
    embed_elements(&he, &ke)
}

/// A rotation `g` with `g e g^T` in `ke` for every `e` in `he`.
pub fn embed_elements(he: &[GroupElement], ke: &[GroupElement]) -> Option<Matrix3<f64>> {
    let member = |e: &GroupElement| ke.iter().any(|q| q.distance(e) < 1e-7);
    let fits = |g: &Matrix3<f64>| he.iter().all(|e| member(&e.conjugate_by(g)));

    let nontrivial: Vec<(GroupElement, Vector3<f64>, f64)> = he
        .iter()
        .filter_map(|e| {
            let (axis, angle) = e.axis_angle();
            (angle > 1e-6).then_some((*e, axis, angle))
        })
        .collect();
    if nontrivial.is_empty() {
        let id = Matrix3::identity();
        return fits(&id).then_some(id);
    }
    // The smallest rotation angle belongs to the highest-order axis.
    let (h1, a1, t1) = *nontrivial
        .iter()
        .min_by(|x, y| x.2.partial_cmp(&y.2).unwrap())
        .unwrap();
    let second = nontrivial
        .iter()
        .find(|(_, a, _)| a.cross(&a1).norm() > 1e-6)
        .copied();
    let images = |e: &GroupElement, t: f64| -> Vec<Vector3<f64>> {
        ke.iter()
            .filter(|q| q.is_proper() == e.is_proper())
            .filter_map(|q| {
                let (axis, angle) = q.axis_angle();
                ((angle - t).abs() < 1e-6).then_some(axis)
            })
            .collect()
    };
    let b1s = images(&h1, t1);
    match second {
        None => {
            for b in &b1s {
                for s in [1.0, -1.0] {
                    let g = align(&a1, &(b * s));
                    if fits(&g) {
                        return Some(g);
                    }
                }
            }
            None
        }
        Some((h2, a2, t2)) => {
            let b2s = images(&h2, t2);
            let dot = a1.dot(&a2);
            for b in &b1s {
                for c in &b2s {
                    for s1 in [1.0, -1.0] {
                        for s2 in [1.0, -1.0] {
                            let (u, v) = (b * s1, c * s2);
                            if (u.dot(&v) - dot).abs() > 1e-6 {
                                continue;
                            }
                            let g = frame(&u, &v) * frame(&a1, &a2).transpose();
                            if fits(&g) {
                                return Some(g);
                            }
                        }
                    }
                }
            }
            None
        }
    }
}

/// Orthonormal frame whose first column is `a` and second lies in span(a, b).
fn frame(a: &Vector3<f64>, b: &Vector3<f64>) -> Matrix3<f64> {
    let e1 = a.normalize();
    let e2 = (b - e1 * e1.dot(b)).normalize();
    let e3 = e1.cross(&e2);
    Matrix3::from_columns(&[e1, e2, e3])
}

/// Some rotation taking `a` to `b`.
pub fn align(a: &Vector3<f64>, b: &Vector3<f64>) -> Matrix3<f64> {
    let (a, b) = (a.normalize(), b.normalize());
    let axis = a.cross(&b);
    let s = axis.norm();
    let c = a.dot(&b);
    if s < 1e-12 {
        if c > 0.0 {
            return Matrix3::identity();
        }
        let perp = if a.x.abs() < 0.9 {
            a.cross(&Vector3::x())
        } else {
            a.cross(&Vector3::y())
        };
        return crate::catalog::rotation_matrix(&perp, std::f64::consts::PI);
    }
    crate::catalog::rotation_matrix(&axis, s.atan2(c))
}

/// A truncated slice of the subgroup lattice of `parent`.
#[derive(Clone, Debug)]
pub struct LatticeSlice {
    pub parent: GroupId,
    pub n_max: u32,
    nodes: Vec<GroupId>,
    index: HashMap<GroupId, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphExport {
    pub parent: GroupId,
    pub n_max: u32,
    pub nodes: Vec<GroupId>,
    /// `(subgroup, supergroup)` index pairs into `nodes`.
    pub edges: Vec<(usize, usize)>,
}

/// All conjugacy classes of subgroups of `parent` with axial order at most
/// `n_max`, with covering relations.
pub fn subgroups(parent: GroupId, n_max: u32) -> LatticeSlice {
    let nodes: Vec<GroupId> = all_groups(n_max)
        .into_iter()
        .filter(|g| is_subgroup(*g, parent))
        .collect();
    LatticeSlice::from_nodes(parent, n_max, nodes)
}

impl LatticeSlice {
    /// Builds the covering graph of an arbitrary node set.
    pub fn from_nodes(parent: GroupId, n_max: u32, mut nodes: Vec<GroupId>) -> LatticeSlice {
        nodes.sort_by(|a, b| a.listing_cmp(b));
        nodes.dedup();
        let n = nodes.len();
        let sub: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| i != j && is_subgroup(nodes[i], nodes[j]))
                    .collect()
            })
            .collect();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if sub[i][j] && !(0..n).any(|m| sub[i][m] && sub[m][j]) {
                    up[i].push(j);
                    down[j].push(i);
                }
            }
        }
        let index = nodes.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        LatticeSlice {
            parent,
            n_max,
            nodes,
            index,
            up,
            down,
        }
    }

    pub fn nodes(&self) -> &[GroupId] {
        &self.nodes
    }

    pub fn contains(&self, g: GroupId) -> bool {
        self.index.contains_key(&g)
    }

    pub fn adjacent_supergroups(&self, g: GroupId) -> Vec<GroupId> {
        self.neighbours(g, &self.up)
    }

    pub fn adjacent_subgroups(&self, g: GroupId) -> Vec<GroupId> {
        self.neighbours(g, &self.down)
    }

    fn neighbours(&self, g: GroupId, adj: &[Vec<usize>]) -> Vec<GroupId> {
        match self.index.get(&g) {
            Some(&i) => adj[i].iter().map(|&j| self.nodes[j]).collect(),
            None => Vec::new(),
        }
    }

    /// Covering pairs `(subgroup, supergroup)`.
    pub fn edges(&self) -> Vec<(GroupId, GroupId)> {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
            .map(|(i, j)| (self.nodes[i], self.nodes[j]))
            .collect()
    }

    pub fn export(&self) -> GraphExport {
        GraphExport {
            parent: self.parent,
            n_max: self.n_max,
            nodes: self.nodes.clone(),
            edges: self
                .up
                .iter()
                .enumerate()
                .flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
                .collect(),
        }
    }

    /// Plain-text graph: a `nodes` block of `index label order` lines
    /// followed by an `edges` block of `sub sup` index pairs.
    pub fn to_graph_text(&self) -> String {
        let g = self.export();
        let mut out = String::new();
        writeln!(out, "nodes {}", g.nodes.len()).unwrap();
        for (i, node) in g.nodes.iter().enumerate() {
            let order = node
                .order()
                .map(|o| o.to_string())
                .unwrap_or_else(|| "inf".into());
            writeln!(out, "{i} {node} {order}").unwrap();
        }
        writeln!(out, "edges {}", g.edges.len()).unwrap();
        for (a, b) in g.edges {
            writeln!(out, "{a} {b}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupId {
        s.parse().unwrap()
    }

    #[test]
    fn documented_relations() {
        assert!(!is_subgroup(g("D2d"), g("D4d")));
        assert!(is_subgroup(g("D2d"), g("D6d")));
        assert!(is_subgroup(g("C2v"), g("D3h")));
        assert!(is_subgroup(g("S4"), g("Td")));
        assert!(!is_subgroup(g("S4"), g("D4d")));
        assert!(is_subgroup(g("Cs"), g("C3h")));
        assert!(!is_subgroup(g("Cs"), g("S4")));
        assert!(is_subgroup(g("C3i"), g("Th")));
        assert!(!is_subgroup(g("C3h"), g("C6v")));
        assert!(is_subgroup(g("D5"), g("Y")));
        assert!(!is_subgroup(g("D4"), g("Y")));
    }

    #[test]
    fn rules_agree_with_embedding_search() {
        let groups: Vec<GroupId> = all_groups(9).into_iter().filter(|g| g.is_finite()).collect();
        for &h in &groups {
            for &k in &groups {
                let rule = is_subgroup(h, k);
                let found = find_embedding(h, k).is_some();
                assert_eq!(rule, found, "{h} in {k}: rule {rule}, search {found}");
            }
        }
    }

    #[test]
    fn slice_of_dinfh() {
        let s = subgroups(GroupId::DINFH, 4);
        for name in ["Dinf", "Cinfv", "Cinfh", "Cinf", "D4h", "D3d", "D4", "C4v", "C4h", "S4", "Cs", "Ci", "C2h", "C1"] {
            assert!(s.contains(g(name)), "{name}");
        }
        for name in ["T", "Td", "O3", "SO3"] {
            assert!(!s.contains(g(name)), "{name}");
        }
    }

    #[test]
    fn so3_slice_is_proper() {
        let s = subgroups(GroupId::SO3, 7);
        assert!(s.nodes().iter().all(|g| g.is_proper()));
        assert_eq!(s.adjacent_supergroups(GroupId::T), vec![GroupId::Y, GroupId::O]);
    }

    #[test]
    fn graph_text_lists_every_edge() {
        let s = subgroups(GroupId::O, 6);
        let text = s.to_graph_text();
        assert!(text.starts_with(&format!("nodes {}", s.nodes().len())));
        assert!(text.contains(&format!("edges {}", s.edges().len())));
    }
}
