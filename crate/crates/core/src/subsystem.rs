//! The root subsystem generated by the P-maximal and P-minimal roots, its
//! simple system and its decorated Dynkin diagram.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::classify::recognize;
use crate::error::{Error, Result};
use crate::grading::{Decoration, GradedRootSystem};
use crate::rootsys::{DiagramType, Root, RootSystem};

/// A reflection-closed set of ambient roots with its induced simple system.
#[derive(Debug, Clone)]
pub struct Subsystem {
    ambient: Arc<RootSystem>,
    members: Vec<usize>,
    simples: Vec<usize>,
    cartan: Vec<Vec<i32>>,
    /// Grade relative to the component maximum, aligned with `members`.
    check_grades: Vec<i32>,
}

/// Ambient indices of the smallest reflection-closed set containing the
/// P-maximal and P-minimal roots.
pub fn generated_members(g: &GradedRootSystem) -> Vec<usize> {
    let rs = g.root_system();
    let mut present = vec![false; rs.len()];
    let mut members: Vec<usize> = g.maximal_indices();
    members.extend(g.minimal_indices());
    for &m in &members {
        present[m] = true;
    }
    let mut push = |x: usize, members: &mut Vec<usize>| {
        if !present[x] {
            present[x] = true;
            members.push(x);
        }
    };
    // Each pair is visited once, when its later member is processed.
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for j in 0..=i {
            let y = members[j];
            push(rs.reflect_at(x, y), &mut members);
            push(rs.reflect_at(y, x), &mut members);
        }
        i += 1;
    }
    members.sort_unstable();
    members
}

/// Ambient indices of the box, its negative, and every root that is a
/// difference of two box roots.
pub fn direct_members(g: &GradedRootSystem) -> Vec<usize> {
    let rs = g.root_system();
    let boxed = g.maximal_indices();
    let mut out: BTreeSet<usize> = boxed.iter().copied().collect();
    out.extend(g.minimal_indices());
    for &b in &boxed {
        for &c in &boxed {
            if b == c {
                continue;
            }
            if let Some(d) = rs.index_of(&rs.root(b).sub(rs.root(c))) {
                out.insert(d);
            }
        }
    }
    out.into_iter().collect()
}

/// Members whose grade is not `0` or `+-max` of their component.
pub fn trichotomy_violations(g: &GradedRootSystem, members: &[usize]) -> Vec<Root> {
    members
        .iter()
        .filter(|&&i| !matches!(g.relative_grade_at(i), Some(-1..=1)))
        .map(|&i| g.root_system().root(i).clone())
        .collect()
}

/// The subsystem generated by reflections from the box and its negative.
pub fn generate_subsystem(g: &GradedRootSystem) -> Result<Subsystem> {
    Subsystem::from_members(g, generated_members(g))
}

/// The same subsystem assembled directly as box, negated box and the
/// differences of box roots.
pub fn direct_subsystem(g: &GradedRootSystem) -> Result<Subsystem> {
    Subsystem::from_members(g, direct_members(g))
}

/// Positive members that are not the sum of two positive members, ordered by
/// ambient component, then height, then descending coefficients.
pub fn simple_system(sub: &Subsystem) -> Vec<Root> {
    sub.simples.iter().map(|&i| sub.ambient.root(i).clone()).collect()
}

fn simple_indices(rs: &RootSystem, members: &[usize]) -> Vec<usize> {
    let positive: HashSet<usize> = members.iter().copied().filter(|&i| rs.root(i).is_positive()).collect();
    let mut simples: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&p| {
            !positive.iter().any(|&q| {
                q != p
                    && rs
                        .index_of(&rs.root(p).sub(rs.root(q)))
                        .is_some_and(|d| positive.contains(&d))
            })
        })
        .collect();
    simples.sort_by_key(|&i| (rs.component_at(i), rs.root(i).height(), Reverse(rs.root(i).clone())));
    simples
}

impl Subsystem {
    /// Wraps a reflection-closed member set; fails if some member has grade
    /// outside `{-max, 0, +max}` of its component.
    pub fn from_members(g: &GradedRootSystem, members: Vec<usize>) -> Result<Subsystem> {
        let bad = trichotomy_violations(g, &members);
        if !bad.is_empty() {
            return Err(Error::Internal(format!(
                "subsystem roots with grade outside {{-max, 0, +max}}: {}",
                bad.iter().map(Root::to_string).collect::<Vec<_>>().join(" ")
            )));
        }
        let rs = g.root_system();
        let check_grades = members
            .iter()
            .map(|&i| g.relative_grade_at(i).expect("checked above"))
            .collect();
        let simples = simple_indices(rs, &members);
        let cartan = simples
            .iter()
            .map(|&a| simples.iter().map(|&b| rs.pairing_at(a, b)).collect())
            .collect();
        Ok(Subsystem {
            ambient: g.shared_root_system(),
            members,
            simples,
            cartan,
            check_grades,
        })
    }

    pub fn ambient(&self) -> &RootSystem {
        &self.ambient
    }

    /// Sorted ambient indices of the members.
    pub fn member_indices(&self) -> &[usize] {
        &self.members
    }

    pub fn roots(&self) -> Vec<Root> {
        self.members.iter().map(|&i| self.ambient.root(i).clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.ambient.index_of(r).is_some_and(|i| self.contains_index(i))
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simples
    }

    /// Pairings `<s_i, s_j^vee>` between the simples.
    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Grade in `{-1, 0, 1}` of a member.
    pub fn check_grade(&self, r: &Root) -> Option<i32> {
        let i = self.ambient.index_of(r)?;
        let pos = self.members.binary_search(&i).ok()?;
        Some(self.check_grades[pos])
    }

    fn check_grade_at(&self, i: usize) -> i32 {
        self.check_grades[self.members.binary_search(&i).expect("member")]
    }

    /// True if closed under negation and under reflection in every member.
    pub fn is_closed(&self) -> bool {
        let rs = &self.ambient;
        self.members.iter().all(|&a| {
            self.contains_index(rs.negate_at(a))
                && self.members.iter().all(|&b| self.contains_index(rs.reflect_at(a, b)))
        })
    }
}

/// A decorated Dynkin diagram in Bourbaki numbering, with the ambient root
/// realizing each node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecoratedDiagram {
    pub dtype: DiagramType,
    pub dec: Decoration,
    pub node_embedding: Vec<Root>,
}

impl DecoratedDiagram {
    /// Global 0-based index of the crossed node of each component.
    pub fn crossed_nodes(&self) -> Vec<Vec<usize>> {
        let offsets = self.dtype.offsets();
        self.dtype
            .components()
            .iter()
            .zip(offsets)
            .map(|(c, off)| (off..off + c.rank).filter(|&i| self.dec.is_crossed(i)).collect())
            .collect()
    }
}

/// Recognizes the simples' Cartan matrix and crosses the simples of grade
/// `+1`.
pub fn decorated_diagram(sub: &Subsystem) -> Result<DecoratedDiagram> {
    if sub.simples.is_empty() {
        return Err(Error::Internal("empty subsystem has no diagram".into()));
    }
    let rec = recognize(&sub.cartan)?;
    let n = sub.simples.len();
    let mut crossed = vec![false; n];
    let mut node_embedding = vec![Root::new(Vec::new()); n];
    for (k, &s) in sub.simples.iter().enumerate() {
        crossed[rec.perm[k]] = sub.check_grade_at(s) == 1;
        node_embedding[rec.perm[k]] = sub.ambient.root(s).clone();
    }
    let d = DecoratedDiagram {
        dtype: rec.dtype,
        dec: Decoration::new(crossed),
        node_embedding,
    };
    for (k, nodes) in d.crossed_nodes().iter().enumerate() {
        if nodes.len() != 1 {
            return Err(Error::CrossCount {
                component: k + 1,
                crosses: nodes.len(),
            });
        }
    }
    Ok(d)
}

/// Ambient compact roots of active components that lie outside the
/// subsystem and are orthogonal to all of it.
pub fn perpendicular_compact_roots(g: &GradedRootSystem, sub: &Subsystem) -> Vec<Root> {
    let rs = g.root_system();
    (0..rs.len())
        .filter(|&i| g.is_compact_at(i) && g.is_active(rs.component_at(i)) && !sub.contains_index(i))
        .filter(|&i| sub.members.iter().all(|&m| rs.pairing_at(m, i) == 0))
        .map(|i| rs.root(i).clone())
        .collect()
}
