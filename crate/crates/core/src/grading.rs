//! Decorations and the P-grading of roots.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem};

/// Cross (`x`, noncompact) or dot (`o`, compact) on every simple root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Decoration {
    crossed: Vec<bool>,
}

impl Decoration {
    pub fn new(crossed: Vec<bool>) -> Decoration {
        Decoration { crossed }
    }

    /// Crosses exactly the given 0-based nodes.
    pub fn from_nodes(rank: usize, nodes: &[usize]) -> Decoration {
        let mut crossed = vec![false; rank];
        for &n in nodes {
            crossed[n] = true;
        }
        Decoration { crossed }
    }

    /// Decoration whose bits are those of `mask`, node `i` crossed iff bit `i`.
    pub fn from_mask(rank: usize, mask: u64) -> Decoration {
        Decoration {
            crossed: (0..rank).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn all_crossed(rank: usize) -> Decoration {
        Decoration {
            crossed: vec![true; rank],
        }
    }

    pub fn len(&self) -> usize {
        self.crossed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossed.is_empty()
    }

    pub fn is_crossed(&self, node: usize) -> bool {
        self.crossed[node]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.crossed
    }

    /// 0-based crossed nodes in increasing order.
    pub fn crossed_nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.crossed[i]).collect()
    }

    /// Moves the mark on node `i` to node `map[i]`.
    pub fn relabel(&self, map: &[usize]) -> Decoration {
        let mut crossed = vec![false; self.len()];
        for (i, &c) in self.crossed.iter().enumerate() {
            crossed[map[i]] = c;
        }
        Decoration { crossed }
    }

    pub fn slice(&self, start: usize, len: usize) -> Decoration {
        Decoration {
            crossed: self.crossed[start..start + len].to_vec(),
        }
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.crossed {
            f.write_str(if c { "x" } else { "o" })?;
        }
        Ok(())
    }
}

impl FromStr for Decoration {
    type Err = (usize, char);

    /// Errors carry the offending 0-based position and character.
    fn from_str(s: &str) -> std::result::Result<Decoration, (usize, char)> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                'x' => Ok(true),
                'o' => Ok(false),
                _ => Err((i, c)),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Decoration::new)
    }
}

/// A root system together with a decoration and the induced P-grading.
///
/// The grade of a root is the sum of its coefficients over the crossed simple
/// roots. Components without a cross are either rejected or, when point
/// factors are allowed, marked inactive and ignored by everything downstream.
#[derive(Debug, Clone)]
pub struct GradedRootSystem {
    rs: Arc<RootSystem>,
    dec: Decoration,
    grades: Vec<i32>,
    max_grade: Vec<Option<i32>>,
}

impl GradedRootSystem {
    pub fn new(rs: Arc<RootSystem>, dec: Decoration) -> Result<GradedRootSystem> {
        Self::build(rs, dec, false)
    }

    /// Like [`GradedRootSystem::new`] but drops crossless components.
    pub fn with_point_factors(rs: Arc<RootSystem>, dec: Decoration) -> Result<GradedRootSystem> {
        Self::build(rs, dec, true)
    }

    pub fn build(rs: Arc<RootSystem>, dec: Decoration, allow_point_factors: bool) -> Result<GradedRootSystem> {
        if dec.len() != rs.rank() {
            return Err(Error::DecorationLength {
                expected: rs.rank(),
                got: dec.len(),
            });
        }
        let grades: Vec<i32> = rs
            .roots()
            .iter()
            .map(|r| {
                r.coeffs()
                    .iter()
                    .zip(dec.as_slice())
                    .filter(|(_, &x)| x)
                    .map(|(c, _)| c)
                    .sum()
            })
            .collect();

        let dtype = rs.dtype().clone();
        let offsets = dtype.offsets();
        let mut max_grade = Vec::with_capacity(dtype.components().len());
        for (k, comp) in dtype.components().iter().enumerate() {
            let has_cross = (offsets[k]..offsets[k] + comp.rank).any(|i| dec.is_crossed(i));
            if !has_cross {
                if allow_point_factors {
                    max_grade.push(None);
                    continue;
                }
                return Err(Error::MissingCross {
                    component: k + 1,
                    label: comp.to_string(),
                });
            }
            let top = rs.highest_indices()[k];
            max_grade.push(Some(grades[top]));
        }
        if max_grade.iter().all(Option::is_none) {
            return Err(Error::NothingCrossed);
        }
        Ok(GradedRootSystem {
            rs,
            dec,
            grades,
            max_grade,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn shared_root_system(&self) -> Arc<RootSystem> {
        Arc::clone(&self.rs)
    }

    pub fn decoration(&self) -> &Decoration {
        &self.dec
    }

    pub fn p_grade(&self, alpha: &Root) -> Result<i32> {
        self.rs
            .index_of(alpha)
            .map(|i| self.grades[i])
            .ok_or_else(|| Error::NotARoot(alpha.clone()))
    }

    pub fn grade_at(&self, i: usize) -> i32 {
        self.grades[i]
    }

    /// Maximal grade of component `k`, `None` for a dropped point factor.
    pub fn max_grade(&self, k: usize) -> Option<i32> {
        self.max_grade[k]
    }

    pub fn is_active(&self, k: usize) -> bool {
        self.max_grade[k].is_some()
    }

    pub fn active_components(&self) -> Vec<usize> {
        (0..self.max_grade.len()).filter(|&k| self.is_active(k)).collect()
    }

    /// Grade of root `i` divided by the maximal grade of its component.
    /// Exact only for roots whose grade is `0` or `+-max`.
    pub fn relative_grade_at(&self, i: usize) -> Option<i32> {
        let m = self.max_grade[self.rs.component_at(i)]?;
        let g = self.grades[i];
        (g % m == 0).then_some(g / m)
    }

    fn at_grade(&self, sign: i32) -> Vec<usize> {
        (0..self.rs.len())
            .filter(|&i| self.max_grade[self.rs.component_at(i)].is_some_and(|m| self.grades[i] == sign * m))
            .collect()
    }

    /// Indices of the P-maximal roots (the box) over all active components.
    pub fn maximal_indices(&self) -> Vec<usize> {
        self.at_grade(1)
    }

    /// The box: positive roots of maximal grade, per active component, in
    /// root order.
    pub fn maximal_roots(&self) -> Vec<Root> {
        self.maximal_indices()
            .into_iter()
            .map(|i| self.rs.root(i).clone())
            .collect()
    }

    /// The box of component `k`; empty for an inactive component.
    pub fn maximal_roots_of(&self, k: usize) -> Vec<Root> {
        self.maximal_indices()
            .into_iter()
            .filter(|&i| self.rs.component_at(i) == k)
            .map(|i| self.rs.root(i).clone())
            .collect()
    }

    pub fn minimal_indices(&self) -> Vec<usize> {
        self.at_grade(-1)
    }

    /// The P-minimal roots, i.e. the negated box.
    pub fn minimal_roots(&self) -> Vec<Root> {
        self.minimal_indices()
            .into_iter()
            .map(|i| self.rs.root(i).clone())
            .collect()
    }

    pub fn is_compact_at(&self, i: usize) -> bool {
        self.grades[i] == 0
    }

    /// Number of positive roots of positive grade: the dimension of the flag
    /// variety.
    pub fn dimension(&self) -> usize {
        self.rs
            .positive_indices()
            .iter()
            .filter(|&&i| self.grades[i] > 0)
            .count()
    }
}
