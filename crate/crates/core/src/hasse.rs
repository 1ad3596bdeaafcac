//! Labeled Hasse diagrams of positive roots and their export formats.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::Error;
use crate::grading::GradedRootSystem;
use crate::rootsys::{Root, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HasseNode {
    #[serde(rename = "coeffs")]
    pub root: Root,
    /// Height in the full diagram, P-grade in the flag diagram.
    pub grade: i32,
}

/// `nodes[from] + alpha_label = nodes[to]`, with a 1-based label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HasseEdge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

/// Nodes are ordered by height, then by descending coefficients; edges by
/// source, then label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HasseDiagram {
    pub nodes: Vec<HasseNode>,
    pub edges: Vec<HasseEdge>,
}

impl HasseDiagram {
    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.nodes.iter().position(|n| &n.root == r)
    }

    pub fn roots(&self) -> Vec<Root> {
        self.nodes.iter().map(|n| n.root.clone()).collect()
    }

    /// Sorted multiset of edge labels.
    pub fn labels(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.edges.iter().map(|e| e.label).collect();
        l.sort_unstable();
        l
    }

    /// Nodes without incoming edges.
    pub fn sources(&self) -> Vec<Root> {
        let mut has_in = vec![false; self.nodes.len()];
        for e in &self.edges {
            has_in[e.to] = true;
        }
        (0..self.nodes.len())
            .filter(|&i| !has_in[i])
            .map(|i| self.nodes[i].root.clone())
            .collect()
    }

    pub fn to_digraph(&self) -> DiGraph<Root, usize> {
        let mut g = DiGraph::with_capacity(self.nodes.len(), self.edges.len());
        let ix: Vec<_> = self.nodes.iter().map(|n| g.add_node(n.root.clone())).collect();
        for e in &self.edges {
            g.add_edge(ix[e.from], ix[e.to], e.label);
        }
        g
    }

    /// The induced subdiagram on the given roots, in this diagram's order.
    pub fn restrict(&self, keep: &[Root]) -> HasseDiagram {
        let mut new_index = vec![None; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if keep.contains(&n.root) {
                new_index[i] = Some(nodes.len());
                nodes.push(n.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(HasseEdge {
                    from: new_index[e.from]?,
                    to: new_index[e.to]?,
                    label: e.label,
                })
            })
            .collect();
        HasseDiagram { nodes, edges }
    }

    pub fn export(&self, format: Format) -> String {
        match format {
            Format::Dot => self.to_dot(),
            Format::Json => serde_json::to_string(self).expect("diagram serializes"),
            Format::Text => self.to_text(),
        }
    }

    fn by_height(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut rows: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            rows.entry(n.root.height()).or_default().push(i);
        }
        rows
    }

    fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\", grade={}];", n.root, n.grade);
        }
        for row in self.by_height().values() {
            let names: Vec<String> = row.iter().map(|i| format!("n{i};")).collect();
            let _ = writeln!(s, "  {{ rank=same; {} }}", names.join(" "));
        }
        for e in &self.edges {
            let _ = writeln!(s, "  n{} -> n{} [label={}];", e.from, e.to, e.label);
        }
        s.push_str("}\n");
        s
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        for (h, row) in self.by_height() {
            let roots: Vec<String> = row.iter().map(|&i| self.nodes[i].root.to_string()).collect();
            let _ = writeln!(s, "height {h}: {}", roots.join(" "));
        }
        let _ = writeln!(s, "edges: {}", self.edges.len());
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  {} -{}-> {}",
                self.nodes[e.from].root, e.label, self.nodes[e.to].root
            );
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format, Error> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

fn build(rs: &RootSystem, grade: impl Fn(usize) -> i32, keep_label: impl Fn(usize) -> bool) -> HasseDiagram {
    let mut order: Vec<usize> = rs.positive_indices().to_vec();
    order.sort_by_key(|&i| (rs.root(i).height(), Reverse(rs.root(i).clone())));
    let mut position = vec![usize::MAX; rs.len()];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let nodes = order
        .iter()
        .map(|&i| HasseNode {
            root: rs.root(i).clone(),
            grade: grade(i),
        })
        .collect();
    let mut edges = Vec::new();
    for (p, &i) in order.iter().enumerate() {
        for s in (0..rs.rank()).filter(|&s| keep_label(s)) {
            if let Some(j) = rs.index_of(&rs.root(i).add(&Root::simple(rs.rank(), s))) {
                edges.push(HasseEdge {
                    from: p,
                    to: position[j],
                    label: s + 1,
                });
            }
        }
    }
    HasseDiagram { nodes, edges }
}

/// All positive roots, with an edge `alpha -> alpha + alpha_i` labeled `i`.
pub fn hasse(rs: &RootSystem) -> HasseDiagram {
    build(rs, |i| rs.root(i).height(), |_| true)
}

/// [`hasse`] with the edges of crossed labels erased and P-grades as grades.
pub fn flag_hasse(g: &GradedRootSystem) -> HasseDiagram {
    build(g.root_system(), |i| g.grade_at(i), |s| !g.decoration().is_crossed(s))
}

/// Per ambient component, the undirected connected component of `h`
/// containing that component's highest root, in root order. Empty for an
/// inactive component.
pub fn highest_component(h: &HasseDiagram, g: &GradedRootSystem) -> Vec<Vec<Root>> {
    let mut uf = UnionFind::<usize>::new(h.nodes.len());
    for e in &h.edges {
        uf.union(e.from, e.to);
    }
    let rs = g.root_system();
    rs.highest_indices()
        .iter()
        .enumerate()
        .map(|(k, &top)| {
            if !g.is_active(k) {
                return Vec::new();
            }
            let t = h.index_of(rs.root(top)).expect("highest root is a node");
            let rep = uf.find(t);
            let mut out: Vec<Root> = (0..h.nodes.len())
                .filter(|&i| uf.find(i) == rep)
                .map(|i| h.nodes[i].root.clone())
                .collect();
            out.sort();
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{DiagramType, Family};
    use std::sync::Arc;

    fn rs(f: Family, r: usize) -> Arc<RootSystem> {
        Arc::new(RootSystem::new(&DiagramType::simple(f, r).unwrap()))
    }

    #[test]
    fn a1_json() {
        let h = hasse(&rs(Family::A, 1));
        assert_eq!(
            h.export(Format::Json),
            r#"{"nodes":[{"coeffs":[1],"grade":1}],"edges":[]}"#
        );
    }

    #[test]
    fn counts() {
        assert_eq!(hasse(&rs(Family::F, 4)).nodes.len(), 24);
        let g2 = hasse(&rs(Family::G, 2));
        assert_eq!((g2.nodes.len(), g2.edges.len()), (6, 5));
        assert!(g2.edges.iter().all(|e| e.label == 1 || e.label == 2));
        for r in 1..=8 {
            // successors of e_i - e_j are e_{i-1} - e_j and e_i - e_{j+1}
            let brute: usize = (1..=r + 1)
                .flat_map(|i| (i + 1..=r + 1).map(move |j| (i, j)))
                .map(|(i, j)| usize::from(i > 1) + usize::from(j <= r))
                .sum();
            assert_eq!(hasse(&rs(Family::A, r)).edges.len(), brute);
            assert_eq!(brute, 2 * (r * (r + 1) / 2 - r));
        }
    }

    #[test]
    fn edges_go_up_one() {
        let h = hasse(&rs(Family::E, 6));
        for e in &h.edges {
            assert_eq!(h.nodes[e.to].root.height(), h.nodes[e.from].root.height() + 1);
            assert!(e.from < e.to);
        }
        assert_eq!(h.sources().len(), 6);
    }

    #[test]
    fn borel_has_no_edges() {
        let g = GradedRootSystem::new(rs(Family::B, 3), "xxx".parse().unwrap()).unwrap();
        let h = flag_hasse(&g);
        assert_eq!((h.nodes.len(), h.edges.len()), (9, 0));
        assert_eq!(highest_component(&h, &g), vec![vec![Root::new(vec![1, 2, 2])]]);
    }

    #[test]
    fn erasure_by_label() {
        let full = hasse(&rs(Family::A, 3));
        let g = GradedRootSystem::new(rs(Family::A, 3), "oox".parse().unwrap()).unwrap();
        let flag = flag_hasse(&g);
        let kept: Vec<HasseEdge> = full.edges.iter().copied().filter(|e| e.label != 3).collect();
        assert_eq!(flag.edges, kept);
        assert_eq!(flag.roots(), full.roots());
    }

    #[test]
    fn f4_box_component() {
        let g = GradedRootSystem::new(rs(Family::F, 4), "ooox".parse().unwrap()).unwrap();
        let h = flag_hasse(&g);
        let comp = highest_component(&h, &g);
        assert_eq!(comp[0].len(), 7);
        assert_eq!(comp[0], g.maximal_roots());
        let sub = h.restrict(&comp[0]);
        assert_eq!(sub.sources(), vec![Root::new(vec![0, 1, 2, 2])]);
    }

    #[test]
    fn formats() {
        let h = hasse(&rs(Family::G, 2));
        let dot = h.export(Format::Dot);
        assert_eq!(dot.matches("->").count(), 5);
        assert_eq!(dot, h.export(Format::Dot));
        let text = h.export(Format::Text);
        assert!(text.starts_with("height 1: [1,0] [0,1]\n"));
        assert!(matches!("svg".parse::<Format>(), Err(Error::UnknownFormat(_))));
    }
}
