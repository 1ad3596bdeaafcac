//! Finite-type recognition of Cartan matrices and the table of irreducible
//! cominuscule varieties.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{Component, DiagramType, Family};
use crate::subsystem::DecoratedDiagram;

/// Result of [`recognize`]: the diagram type and, for each input node, its
/// (0-based, global) position in Bourbaki numbering of that type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognition {
    pub dtype: DiagramType,
    pub perm: Vec<usize>,
}

/// Identifies a Cartan matrix (`cartan[i][j] = <alpha_i, alpha_j^vee>`) as a
/// product of finite-type diagrams.
///
/// Components are listed in order of their smallest input node. Within a
/// component the node permutation is the lexicographically least one among
/// all isomorphisms onto the Bourbaki diagram, which fixes a representative
/// under diagram automorphisms. Low-rank coincidences resolve to the first
/// family listed: `A3` over `D3`, `B2` over `C2`.
pub fn recognize(cartan: &[Vec<i32>]) -> Result<Recognition> {
    let n = cartan.len();
    if n == 0 {
        return Err(Error::BadCartan("empty matrix".into()));
    }
    for (i, row) in cartan.iter().enumerate() {
        if row.len() != n {
            return Err(Error::BadCartan(format!("row {} has length {}", i + 1, row.len())));
        }
        if row[i] != 2 {
            return Err(Error::BadCartan(format!("diagonal entry {} is {}", i + 1, row[i])));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if row[j] > 0 {
                return Err(Error::BadCartan(format!("positive entry at ({}, {})", i + 1, j + 1)));
            }
            if (row[j] == 0) != (cartan[j][i] == 0) {
                return Err(Error::BadCartan(format!(
                    "zero pattern not symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }

    let mut seen = vec![false; n];
    let mut components = Vec::new();
    let mut perm = vec![0; n];
    let mut offset = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // BFS order doubles as the assignment order of the isomorphism search.
        let mut order = vec![start];
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(i) = q.pop_front() {
            for j in 0..n {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    order.push(j);
                    q.push_back(j);
                }
            }
        }
        let mut nodes = order.clone();
        nodes.sort_unstable();
        let local = |i: usize| nodes.binary_search(&i).expect("member");
        let sub: Vec<Vec<i32>> = nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| cartan[i][j]).collect())
            .collect();
        let bfs: Vec<usize> = order.iter().map(|&i| local(i)).collect();

        let (comp, sigma) = recognize_connected(&sub, &bfs)?;
        for (k, &i) in nodes.iter().enumerate() {
            perm[i] = offset + sigma[k];
        }
        offset += comp.rank;
        components.push(comp);
    }
    Ok(Recognition {
        dtype: DiagramType::new(components)?,
        perm,
    })
}

fn candidates(n: usize) -> Vec<Component> {
    let mut out = vec![Component {
        family: Family::A,
        rank: n,
    }];
    if n >= 2 {
        out.push(Component {
            family: Family::B,
            rank: n,
        });
    }
    if n >= 3 {
        out.push(Component {
            family: Family::C,
            rank: n,
        });
    }
    if n >= 4 {
        out.push(Component {
            family: Family::D,
            rank: n,
        });
    }
    if (6..=8).contains(&n) {
        out.push(Component {
            family: Family::E,
            rank: n,
        });
    }
    if n == 4 {
        out.push(Component {
            family: Family::F,
            rank: 4,
        });
    }
    if n == 2 {
        out.push(Component {
            family: Family::G,
            rank: 2,
        });
    }
    out
}

fn edge_profile(m: &[Vec<i32>]) -> Vec<(i32, i32)> {
    let mut v = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, &a) in row.iter().enumerate().skip(i + 1) {
            if a != 0 {
                let b = m[j][i];
                v.push((a.min(b), a.max(b)));
            }
        }
    }
    v.sort_unstable();
    v
}

fn recognize_connected(m: &[Vec<i32>], bfs: &[usize]) -> Result<(Component, Vec<usize>)> {
    let n = m.len();
    let profile = edge_profile(m);
    for comp in candidates(n) {
        let target = comp.cartan();
        if edge_profile(&target) != profile {
            continue;
        }
        let mut all = Vec::new();
        let mut sigma = vec![usize::MAX; n];
        let mut used = vec![false; n];
        search(m, &target, bfs, 0, &mut sigma, &mut used, &mut all);
        if let Some(best) = all.into_iter().min() {
            return Ok((comp, best));
        }
    }
    Err(Error::NotFiniteType(format!(
        "connected component of rank {n} with bonds {profile:?} matches no Dynkin diagram"
    )))
}

/// Enumerates every `sigma` with `m[i][j] == target[sigma[i]][sigma[j]]`.
fn search(
    m: &[Vec<i32>],
    target: &[Vec<i32>],
    bfs: &[usize],
    depth: usize,
    sigma: &mut [usize],
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    if depth == bfs.len() {
        out.push(sigma.to_vec());
        return;
    }
    let v = bfs[depth];
    for t in 0..target.len() {
        if used[t] {
            continue;
        }
        let consistent = bfs[..depth]
            .iter()
            .all(|&u| m[v][u] == target[t][sigma[u]] && m[u][v] == target[sigma[u]][t]);
        if !consistent {
            continue;
        }
        sigma[v] = t;
        used[t] = true;
        search(m, target, bfs, depth + 1, sigma, used, out);
        used[t] = false;
        sigma[v] = usize::MAX;
    }
}

/// One irreducible cominuscule variety.
///
/// `crossed_node` is the canonical representative of the cross under diagram
/// automorphisms (1-based, Bourbaki); `embedded_node` is where the cross
/// actually sits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CominusculeId {
    pub family: Family,
    pub rank: usize,
    pub crossed_node: usize,
    pub embedded_node: usize,
    pub dimension: usize,
    pub description: String,
}

impl CominusculeId {
    /// Classifies `family``rank` with the 1-based `node` crossed. Accepts the
    /// low-rank aliases `B1`, `C1`, `C2` and `D3`.
    pub fn new(family: Family, rank: usize, node: usize) -> Result<CominusculeId> {
        let not_cominuscule = Error::NotCominuscule { family, rank, node };
        if node == 0 || node > rank {
            return Err(not_cominuscule);
        }
        let (comp, map) = Component::normalize(family, rank)?;
        let mut node = map[node - 1] + 1;
        let (family, r) = if comp.family == Family::C && comp.rank == 2 {
            node = 3 - node;
            (Family::B, 2)
        } else {
            (comp.family, comp.rank)
        };
        let embedded_node = node;
        let err = || Error::NotCominuscule { family, rank: r, node };

        let (canonical, dimension, description) = match family {
            Family::A => {
                let k = node.min(r + 1 - node);
                let desc = match (k, r) {
                    (1, 1) => "projective line P^1".to_string(),
                    (1, _) => format!("projective space P^{r}"),
                    _ => format!("Grassmannian Gr({k}, {})", r + 1),
                };
                (k, k * (r + 1 - k), desc)
            }
            Family::B if node == 1 => (1, 2 * r - 1, format!("quadric hypersurface Q^{}", 2 * r - 1)),
            Family::C if node == r => (
                r,
                r * (r + 1) / 2,
                format!("Lagrangian Grassmannian LG({r}, {})", 2 * r),
            ),
            Family::D if node == 1 || (r == 4 && node >= 3) => {
                (1, 2 * r - 2, format!("quadric hypersurface Q^{}", 2 * r - 2))
            }
            Family::D if node >= r - 1 => (r, r * (r - 1) / 2, format!("spinor variety OG({r}, {})", 2 * r)),
            Family::E if r == 6 && (node == 1 || node == 6) => (1, 16, "Cayley plane".to_string()),
            Family::E if r == 7 && node == 7 => (7, 27, "Freudenthal variety".to_string()),
            _ => return Err(err()),
        };
        Ok(CominusculeId {
            family,
            rank: r,
            crossed_node: canonical,
            embedded_node,
            dimension,
            description,
        })
    }

    /// Equality up to diagram automorphism.
    pub fn same_variety(&self, other: &CominusculeId) -> bool {
        (self.family, self.rank, self.crossed_node) == (other.family, other.rank, other.crossed_node)
    }

    /// One line: type, canonical crossed node, dimension and description.
    pub fn summary(&self) -> String {
        format!(
            "{}{}, node {} crossed, dim {} \u{2014} {}",
            self.family, self.rank, self.crossed_node, self.dimension, self.description
        )
    }
}

/// Classifies every component of a decorated diagram, which must carry
/// exactly one cross per component.
pub fn classify_cominuscule(d: &DecoratedDiagram) -> Result<Vec<CominusculeId>> {
    let offsets = d.dtype.offsets();
    d.dtype
        .components()
        .iter()
        .zip(offsets)
        .enumerate()
        .map(|(k, (comp, off))| {
            let crosses: Vec<usize> = (0..comp.rank).filter(|&i| d.dec.is_crossed(off + i)).collect();
            if crosses.len() != 1 {
                return Err(Error::CrossCount {
                    component: k + 1,
                    crosses: crosses.len(),
                });
            }
            CominusculeId::new(comp.family, comp.rank, crosses[0] + 1)
        })
        .collect()
}

/// The irreducible cominuscule varieties: `(type, crossed node(s), dimension,
/// description)`.
pub const COMINUSCULE_TABLE: &[(&str, &str, &str, &str)] = &[
    ("A_r", "k (any)", "k(r+1-k)", "Grassmannian of k-planes in C^{r+1}"),
    ("B_r", "1", "2r-1", "quadric hypersurface in P^{2r}"),
    ("C_r", "r", "r(r+1)/2", "Lagrangian r-planes in C^{2r}"),
    ("D_r", "1", "2r-2", "quadric hypersurface in P^{2r-1}"),
    (
        "D_r",
        "r-1 or r",
        "r(r-1)/2",
        "null r-planes in C^{2r} (spinor variety)",
    ),
    ("E_6", "1 or 6", "16", "Cayley plane"),
    ("E_7", "7", "27", "Freudenthal variety"),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two() {
        let a2 = recognize(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2.dtype.to_string(), "A2");
        assert_eq!(a2.perm, vec![0, 1]);

        let g2 = recognize(&[vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(g2.dtype.to_string(), "G2");
        assert_eq!(g2.perm, vec![0, 1]);
        // long node first
        let g2r = recognize(&[vec![2, -3], vec![-1, 2]]).unwrap();
        assert_eq!(g2r.perm, vec![1, 0]);

        // C2 is reported as B2 with the long node first
        let c2 = Component::new(Family::C, 2).unwrap().cartan();
        let r = recognize(&c2).unwrap();
        assert_eq!(r.dtype.to_string(), "B2");
        assert_eq!(r.perm, vec![1, 0]);
    }

    #[test]
    fn bourbaki_matrices_are_fixed_points() {
        for f in Family::ALL {
            for r in 1..=8 {
                let Ok(dt) = DiagramType::simple(f, r) else { continue };
                if f == Family::C && r == 2 {
                    continue;
                }
                let rec = recognize(&dt.cartan()).unwrap();
                assert_eq!(rec.dtype, dt);
                assert_eq!(rec.perm, (0..r).collect::<Vec<_>>(), "{dt}");
            }
        }
    }

    #[test]
    fn products_and_automorphisms() {
        let dt = DiagramType::normalize(&[(Family::D, 4), (Family::A, 1), (Family::E, 6)])
            .unwrap()
            .dtype;
        let rec = recognize(&dt.cartan()).unwrap();
        assert_eq!(rec.dtype, dt);
        assert_eq!(rec.perm, (0..11).collect::<Vec<_>>());

        // reversed A3 path picks the identity-like least permutation
        let a3 = vec![vec![2, 0, -1], vec![0, 2, -1], vec![-1, -1, 2]];
        let rec = recognize(&a3).unwrap();
        assert_eq!(rec.dtype.to_string(), "A3");
        assert_eq!(rec.perm, vec![0, 2, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(recognize(&[vec![2, 1], vec![1, 2]]), Err(Error::BadCartan(_))));
        assert!(matches!(
            recognize(&[vec![2, -1], vec![0, 2]]),
            Err(Error::BadCartan(_))
        ));
        // affine A1
        assert!(matches!(
            recognize(&[vec![2, -2], vec![-2, 2]]),
            Err(Error::NotFiniteType(_))
        ));
        // triangle
        let tri = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert!(matches!(recognize(&tri), Err(Error::NotFiniteType(_))));
    }

    #[test]
    fn table_rows() {
        let b4 = CominusculeId::new(Family::B, 4, 1).unwrap();
        assert_eq!(b4.dimension, 7);
        assert!(b4.description.contains("quadric"));
        let c3 = CominusculeId::new(Family::C, 3, 3).unwrap();
        assert_eq!(c3.dimension, 6);
        assert!(c3.description.contains("Lagrangian"));
        assert_eq!(CominusculeId::new(Family::A, 5, 2).unwrap().dimension, 8);
        assert_eq!(CominusculeId::new(Family::E, 6, 6).unwrap().dimension, 16);
        assert_eq!(CominusculeId::new(Family::E, 7, 7).unwrap().dimension, 27);
        assert_eq!(
            CominusculeId::new(Family::B, 3, 3),
            Err(Error::NotCominuscule {
                family: Family::B,
                rank: 3,
                node: 3
            })
        );
        assert!(CominusculeId::new(Family::E, 8, 1).is_err());
        assert!(CominusculeId::new(Family::F, 4, 4).is_err());
    }

    #[test]
    fn automorphic_crosses_coincide() {
        let a = CominusculeId::new(Family::A, 5, 4).unwrap();
        assert!(a.same_variety(&CominusculeId::new(Family::A, 5, 2).unwrap()));
        assert_eq!(a.embedded_node, 4);
        let d = CominusculeId::new(Family::D, 6, 5).unwrap();
        assert!(d.same_variety(&CominusculeId::new(Family::D, 6, 6).unwrap()));
        // D4 triality
        let q = CominusculeId::new(Family::D, 4, 1).unwrap();
        assert!(q.same_variety(&CominusculeId::new(Family::D, 4, 4).unwrap()));
        // D3 spinor is projective 3-space, D3 quadric is Gr(2,4)
        let p3 = CominusculeId::new(Family::D, 3, 3).unwrap();
        assert_eq!(
            (p3.family, p3.rank, p3.crossed_node, p3.dimension),
            (Family::A, 3, 1, 3)
        );
        let gr = CominusculeId::new(Family::D, 3, 1).unwrap();
        assert_eq!((gr.crossed_node, gr.dimension), (2, 4));
        // C2 Lagrangian is the B2 quadric
        let lg = CominusculeId::new(Family::C, 2, 2).unwrap();
        assert!(lg.same_variety(&CominusculeId::new(Family::B, 2, 1).unwrap()));
    }
}
