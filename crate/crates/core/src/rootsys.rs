//! Finite reduced root systems built from Cartan data.
//!
//! Roots are integer coefficient vectors over the simple roots, with simple
//! roots numbered as in the Bourbaki plates, component by component. The
//! Cartan matrix convention is `cartan[i][j] = <alpha_i, alpha_j^vee>`, so
//! for `G2` (node 1 short) it reads `[[2, -1], [-3, 2]]`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// Cartan–Killing family letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.letter() == c)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// One simple factor of a diagram type, always in normal form: `A>=1`,
/// `B>=2`, `C>=2`, `D>=4`, `E6..E8`, `F4`, `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
}

impl Component {
    /// Accepts only normal-form components. See [`Component::normalize`] for
    /// the low-rank coincidences.
    pub fn new(family: Family, rank: usize) -> Result<Component> {
        let invalid = |reason| Error::InvalidType { family, rank, reason };
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Component { family, rank })
        } else {
            Err(invalid(match family {
                Family::A => "rank must be at least 1",
                Family::B | Family::C => "rank must be at least 2",
                Family::D => "rank must be at least 4 (D3 is A3, D2 is A1xA1)",
                Family::E => "rank must be 6, 7 or 8",
                Family::F => "rank must be 4",
                Family::G => "rank must be 2",
            }))
        }
    }

    /// Maps `B1`/`C1` to `A1` and `D3` to `A3`. Returns the component and the
    /// node map `input node (0-based) -> normalized node`.
    pub fn normalize(family: Family, rank: usize) -> Result<(Component, Vec<usize>)> {
        match (family, rank) {
            (Family::B | Family::C, 1) => Ok((Component::new(Family::A, 1)?, vec![0])),
            // D3 node 1 is the middle of the path; nodes 2 and 3 are its ends.
            (Family::D, 3) => Ok((Component::new(Family::A, 3)?, vec![1, 0, 2])),
            (Family::D, 2) => Err(Error::InvalidType {
                family,
                rank,
                reason: "D2 is not simple; write A1xA1",
            }),
            _ => Ok((Component::new(family, rank)?, (0..rank).collect())),
        }
    }

    /// Bourbaki Cartan matrix of this component.
    pub fn cartan(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut c = vec![vec![0i32; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, cij: i32, cji: i32| {
            c[i - 1][j - 1] = cij;
            c[j - 1][i - 1] = cji;
        };
        match self.family {
            Family::A => (1..n).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B => {
                (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
                // alpha_n short
                link(n - 1, n, -2, -1);
            }
            Family::C => {
                (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
                // alpha_n long
                link(n - 1, n, -1, -2);
            }
            Family::D => {
                (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n, -1, -1);
            }
            Family::E => {
                link(1, 3, -1, -1);
                link(2, 4, -1, -1);
                (3..n).for_each(|i| link(i, i + 1, -1, -1));
            }
            Family::F => {
                link(1, 2, -1, -1);
                link(2, 3, -2, -1);
                link(3, 4, -1, -1);
            }
            Family::G => link(1, 2, -1, -3),
        }
        c
    }

    /// Number of positive roots, by the closed forms.
    pub fn positive_root_count(&self) -> usize {
        let r = self.rank;
        match (self.family, r) {
            (Family::A, _) => r * (r + 1) / 2,
            (Family::B | Family::C, _) => r * r,
            (Family::D, _) => r * (r - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, _) => 120,
            (Family::F, _) => 24,
            (Family::G, _) => 6,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// An ordered product of simple diagram types, e.g. `A2xA1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DiagramType {
    components: Vec<Component>,
}

/// A normalized diagram type together with the node map that carries input
/// positions (0-based, across all components) to normalized positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub dtype: DiagramType,
    pub node_map: Vec<usize>,
}

impl DiagramType {
    pub fn new(components: Vec<Component>) -> Result<DiagramType> {
        if components.is_empty() {
            return Err(Error::EmptyType);
        }
        for c in &components {
            Component::new(c.family, c.rank)?;
        }
        Ok(DiagramType { components })
    }

    pub fn simple(family: Family, rank: usize) -> Result<DiagramType> {
        DiagramType::new(vec![Component::new(family, rank)?])
    }

    /// Builds a type from raw `(family, rank)` pairs, applying the low-rank
    /// normalizations of [`Component::normalize`].
    pub fn normalize(parts: &[(Family, usize)]) -> Result<Normalized> {
        if parts.is_empty() {
            return Err(Error::EmptyType);
        }
        let mut components = Vec::with_capacity(parts.len());
        let mut node_map = Vec::new();
        let mut offset = 0;
        for &(family, rank) in parts {
            let (c, map) = Component::normalize(family, rank)?;
            node_map.extend(map.into_iter().map(|k| offset + k));
            offset += c.rank;
            components.push(c);
        }
        Ok(Normalized {
            dtype: DiagramType { components },
            node_map,
        })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    /// First global node index of each component.
    pub fn offsets(&self) -> Vec<usize> {
        self.components
            .iter()
            .scan(0, |acc, c| {
                let start = *acc;
                *acc += c.rank;
                Some(start)
            })
            .collect()
    }

    /// Component index of each global node.
    pub fn node_components(&self) -> Vec<usize> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(k, c)| std::iter::repeat_n(k, c.rank))
            .collect()
    }

    /// Block-diagonal Cartan matrix.
    pub fn cartan(&self) -> Vec<Vec<i32>> {
        let n = self.rank();
        let mut m = vec![vec![0; n]; n];
        for (c, off) in self.components.iter().zip(self.offsets()) {
            for (i, row) in c.cartan().into_iter().enumerate() {
                m[off + i][off..off + c.rank].copy_from_slice(&row);
            }
        }
        m
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str("x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A coefficient vector in the simple-root basis. Arithmetic on `Root`s does
/// not check membership in any root system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Root {
        Root(coeffs)
    }

    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().any(|&c| c > 0)
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `self - k * other`
    pub fn sub_scaled(&self, k: i32, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - k * b).collect())
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Root {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Root, String> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| format!("expected [c1,c2,...], got {s:?}"))?;
        inner
            .split(',')
            .map(|t| t.trim().parse::<i32>().map_err(|e| e.to_string()))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Root)
    }
}

/// The full root system of a [`DiagramType`]. Immutable once built.
#[derive(Debug, Clone)]
pub struct RootSystem {
    dtype: DiagramType,
    cartan: Vec<Vec<i32>>,
    symmetrizer: Vec<i64>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    /// Per root `a`, the functional `b -> <b, a^vee>` on coefficient vectors.
    coroots: Vec<Vec<i32>>,
    component: Vec<usize>,
    positive: Vec<usize>,
    highest: Vec<usize>,
}

impl RootSystem {
    /// Generates all roots by closing the simple roots under the simple
    /// reflections.
    pub fn new(dtype: &DiagramType) -> RootSystem {
        let rank = dtype.rank();
        let cartan = dtype.cartan();
        let symmetrizer = symmetrizer(&cartan);

        let mut seen: HashSet<Root> = HashSet::new();
        let mut queue: VecDeque<Root> = (0..rank).map(|i| Root::simple(rank, i)).collect();
        seen.extend(queue.iter().cloned());
        while let Some(beta) = queue.pop_front() {
            #[allow(clippy::needless_range_loop)]
            for i in 0..rank {
                let p: i32 = (0..rank).map(|k| beta.0[k] * cartan[k][i]).sum();
                if p == 0 {
                    continue;
                }
                let mut next = beta.clone();
                next.0[i] -= p;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_iter().collect();
        roots.sort();

        let index: HashMap<Root, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

        // (x, y) = sum x_k y_j cartan[k][j] d_j
        let form = |x: &[i32], y: &[i32]| -> i64 {
            let mut s = 0i64;
            for k in 0..rank {
                if x[k] == 0 {
                    continue;
                }
                for j in 0..rank {
                    s += x[k] as i64 * y[j] as i64 * cartan[k][j] as i64 * symmetrizer[j];
                }
            }
            s
        };
        let coroots = roots
            .iter()
            .map(|a| {
                let norm = form(&a.0, &a.0);
                (0..rank)
                    .map(|k| {
                        let e = Root::simple(rank, k);
                        let num = 2 * form(&e.0, &a.0);
                        debug_assert_eq!(num % norm, 0);
                        (num / norm) as i32
                    })
                    .collect()
            })
            .collect();

        let node_comp = dtype.node_components();
        let component: Vec<usize> = roots
            .iter()
            .map(|r| {
                let k = r.0.iter().position(|&c| c != 0).expect("roots are nonzero");
                node_comp[k]
            })
            .collect();
        let positive: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].is_positive()).collect();

        let offsets = dtype.offsets();
        let highest = dtype
            .components()
            .iter()
            .enumerate()
            .map(|(k, comp)| {
                let tops: Vec<usize> = positive
                    .iter()
                    .copied()
                    .filter(|&i| component[i] == k)
                    .filter(|&i| {
                        (offsets[k]..offsets[k] + comp.rank).all(|s| {
                            let mut up = roots[i].clone();
                            up.0[s] += 1;
                            !index.contains_key(&up)
                        })
                    })
                    .collect();
                assert_eq!(tops.len(), 1, "highest root of {comp} is not unique");
                tops[0]
            })
            .collect();

        RootSystem {
            dtype: dtype.clone(),
            cartan,
            symmetrizer,
            roots,
            index,
            coroots,
            component,
            positive,
            highest,
        }
    }

    pub fn dtype(&self) -> &DiagramType {
        &self.dtype
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Positive integers with gcd 1 per component such that
    /// `cartan[i][j] * d[j]` is symmetric.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// All roots in lexicographic order of their coefficient vectors.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    fn require(&self, r: &Root) -> Result<usize> {
        self.index_of(r).ok_or_else(|| Error::NotARoot(r.clone()))
    }

    /// Indices of positive roots, in root order.
    pub fn positive_indices(&self) -> &[usize] {
        &self.positive
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.positive.iter().map(|&i| &self.roots[i])
    }

    /// Index of the highest root of each component.
    pub fn highest_indices(&self) -> &[usize] {
        &self.highest
    }

    pub fn highest_roots(&self) -> Vec<&Root> {
        self.highest.iter().map(|&i| &self.roots[i]).collect()
    }

    pub fn simple_index(&self, node: usize) -> usize {
        self.index[&Root::simple(self.rank(), node)]
    }

    /// Component index of root `i`.
    pub fn component_at(&self, i: usize) -> usize {
        self.component[i]
    }

    pub fn negate_at(&self, i: usize) -> usize {
        self.index[&-&self.roots[i]]
    }

    /// `<roots[b], roots[a]^vee>`
    pub fn pairing_at(&self, b: usize, a: usize) -> i32 {
        self.coroots[a].iter().zip(&self.roots[b].0).map(|(w, c)| w * c).sum()
    }

    /// Index of the reflection of `roots[b]` in `roots[a]`.
    pub fn reflect_at(&self, a: usize, b: usize) -> usize {
        let p = self.pairing_at(b, a);
        if p == 0 {
            return b;
        }
        self.index[&self.roots[b].sub_scaled(p, &self.roots[a])]
    }

    /// The Cartan pairing `<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)`.
    pub fn pairing(&self, beta: &Root, alpha: &Root) -> Result<i32> {
        let b = self.require(beta)?;
        let a = self.require(alpha)?;
        Ok(self.pairing_at(b, a))
    }

    /// `beta - <beta, alpha^vee> alpha`
    pub fn reflect(&self, alpha: &Root, beta: &Root) -> Result<Root> {
        let a = self.require(alpha)?;
        let b = self.require(beta)?;
        Ok(self.roots[self.reflect_at(a, b)].clone())
    }
}

/// Per connected component, the positive integer vector with gcd 1 making
/// `cartan[i][j] * d[j]` symmetric.
fn symmetrizer(cartan: &[Vec<i32>]) -> Vec<i64> {
    let n = cartan.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    let mut out = vec![0i64; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Ratio::from_integer(1));
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].expect("visited");
            for j in 0..n {
                if i == j || cartan[i][j] == 0 || d[j].is_some() {
                    continue;
                }
                // cartan[i][j] d_j = cartan[j][i] d_i
                d[j] = Some(di * Ratio::new(cartan[j][i] as i64, cartan[i][j] as i64));
                members.push(j);
                queue.push_back(j);
            }
        }
        let lcm = members
            .iter()
            .fold(1i64, |acc, &i| acc.lcm(d[i].expect("visited").denom()));
        let scaled: Vec<i64> = members
            .iter()
            .map(|&i| (d[i].expect("visited") * lcm).to_integer())
            .collect();
        let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, x) in members.iter().zip(scaled) {
            out[i] = x / g;
        }
    }
    out
}
