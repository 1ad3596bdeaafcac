//! Root systems checked against explicit Euclidean models.

use std::collections::HashSet;

use cominuscule::{Component, DiagramType, Family, Numbering, Root, RootSystem};

type V = Vec<i64>;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn e(n: usize, i: usize) -> V {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn lin(terms: &[(i64, &V)]) -> V {
    let n = terms[0].1.len();
    (0..n).map(|k| terms.iter().map(|(c, v)| c * v[k]).sum()).collect()
}

fn pm_pairs(n: usize, scale: i64, limit: usize, out: &mut HashSet<V>) {
    for i in 0..limit {
        for j in i + 1..limit {
            for (s, t) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.insert(lin(&[(s * scale, &e(n, i)), (t * scale, &e(n, j))]));
            }
        }
    }
}

fn closure(simples: &[V]) -> HashSet<V> {
    let mut set: HashSet<V> = simples.iter().cloned().collect();
    let mut todo: Vec<V> = simples.to_vec();
    while let Some(b) = todo.pop() {
        for a in simples {
            let k = 2 * dot(&b, a) / dot(a, a);
            let r: V = b.iter().zip(a).map(|(x, y)| x - k * y).collect();
            if set.insert(r.clone()) {
                todo.push(r);
            }
        }
    }
    set
}

/// Euclidean image of a root given in the simple-root basis.
fn embed(root: &Root, simples: &[V]) -> V {
    let n = simples[0].len();
    (0..n)
        .map(|k| root.coeffs().iter().zip(simples).map(|(&c, s)| c as i64 * s[k]).sum())
        .collect()
}

/// `simples` in Bourbaki order; `model` is the full Euclidean root set.
fn check_model(family: Family, rank: usize, simples: &[V], model: &HashSet<V>) {
    let comp = Component::new(family, rank).unwrap();
    let cartan = comp.cartan();
    for i in 0..rank {
        for j in 0..rank {
            let p = 2 * dot(&simples[i], &simples[j]) / dot(&simples[j], &simples[j]);
            assert_eq!(p as i32, cartan[i][j], "{comp} cartan ({i}, {j})");
        }
    }
    let rs = RootSystem::new(&DiagramType::simple(family, rank).unwrap());
    let images: HashSet<V> = rs.roots().iter().map(|r| embed(r, simples)).collect();
    assert_eq!(images.len(), rs.len(), "{comp}: embedding not injective");
    assert_eq!(&images, model, "{comp}: root sets differ");
    assert_eq!(rs.positive_indices().len(), comp.positive_root_count());
    let roots = rs.roots();
    let step = (roots.len() / 40).max(1);
    for a in roots.iter().step_by(step) {
        let ea = embed(a, simples);
        for b in roots {
            let eb = embed(b, simples);
            let expected = 2 * dot(&eb, &ea) / dot(&ea, &ea);
            assert_eq!(rs.pairing(b, a).unwrap() as i64, expected, "{comp}: <{b}, {a}^vee>");
        }
    }
}

#[test]
fn classical_models() {
    for r in 1..=8 {
        let n = r + 1;
        let simples: Vec<V> = (0..r).map(|i| lin(&[(1, &e(n, i)), (-1, &e(n, i + 1))])).collect();
        let model: HashSet<V> = (0..n)
            .flat_map(|i| {
                (0..n)
                    .filter(move |&j| j != i)
                    .map(move |j| lin(&[(1, &e(n, i)), (-1, &e(n, j))]))
            })
            .collect();
        check_model(Family::A, r, &simples, &model);
    }
    for r in 2..=8 {
        let chain: Vec<V> = (0..r - 1).map(|i| lin(&[(1, &e(r, i)), (-1, &e(r, i + 1))])).collect();

        let mut b = HashSet::new();
        pm_pairs(r, 1, r, &mut b);
        let mut c = b.clone();
        for i in 0..r {
            b.insert(e(r, i));
            b.insert(lin(&[(-1, &e(r, i))]));
            c.insert(lin(&[(2, &e(r, i))]));
            c.insert(lin(&[(-2, &e(r, i))]));
        }
        let mut bs = chain.clone();
        bs.push(e(r, r - 1));
        check_model(Family::B, r, &bs, &b);
        let mut cs = chain.clone();
        cs.push(lin(&[(2, &e(r, r - 1))]));
        check_model(Family::C, r, &cs, &c);

        if r >= 4 {
            let mut d = HashSet::new();
            pm_pairs(r, 1, r, &mut d);
            let mut ds = chain.clone();
            ds.push(lin(&[(1, &e(r, r - 2)), (1, &e(r, r - 1))]));
            check_model(Family::D, r, &ds, &d);
        }
    }
}

#[test]
fn g2_model() {
    let n = 3;
    let mut model = HashSet::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            model.insert(lin(&[(1, &e(n, i)), (-1, &e(n, j))]));
            let k = 3 - i - j;
            model.insert(lin(&[(2, &e(n, i)), (-1, &e(n, j)), (-1, &e(n, k))]));
            model.insert(lin(&[(-2, &e(n, i)), (1, &e(n, j)), (1, &e(n, k))]));
        }
    }
    assert_eq!(model.len(), 12);
    let simples = vec![
        lin(&[(1, &e(n, 0)), (-1, &e(n, 1))]),
        lin(&[(-2, &e(n, 0)), (1, &e(n, 1)), (1, &e(n, 2))]),
    ];
    check_model(Family::G, 2, &simples, &model);
}

fn sign_vectors(filter: impl Fn(&[i64]) -> bool) -> Vec<V> {
    (0..256u32)
        .map(|m| (0..8).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect::<V>())
        .filter(|v| filter(v))
        .collect()
}

/// Carter-ordered simple roots of E8 in coordinates scaled by 2.
fn e8_carter() -> Vec<V> {
    let n = 8;
    let mut s: Vec<V> = (0..6).map(|i| lin(&[(2, &e(n, i)), (-2, &e(n, i + 1))])).collect();
    s.push(lin(&[(2, &e(n, 5)), (2, &e(n, 6))]));
    s.push(vec![-1; 8]);
    s
}

fn to_bourbaki(carter: &[V], rank: usize) -> Vec<V> {
    let c = Component::new(Family::E, rank).unwrap();
    let map = Numbering::carter_to_bourbaki(c).unwrap();
    let mut out = vec![Vec::new(); rank];
    for (k, v) in carter.iter().enumerate() {
        out[map[k]] = v.clone();
    }
    out
}

#[test]
fn e8_model() {
    let mut model = HashSet::new();
    pm_pairs(8, 2, 8, &mut model);
    model.extend(sign_vectors(|v| v.iter().product::<i64>() == 1));
    assert_eq!(model.len(), 240);
    check_model(Family::E, 8, &to_bourbaki(&e8_carter(), 8), &model);
}

#[test]
fn e6_model() {
    let n = 8;
    let mut carter: Vec<V> = (0..4).map(|i| lin(&[(2, &e(n, i)), (-2, &e(n, i + 1))])).collect();
    carter.push(lin(&[(2, &e(n, 3)), (2, &e(n, 4))]));
    carter.push(vec![-1; 8]);
    let mut model = HashSet::new();
    pm_pairs(n, 2, 5, &mut model);
    model.extend(sign_vectors(|v| {
        v[5] == v[6] && v[6] == v[7] && v.iter().product::<i64>() == 1
    }));
    assert_eq!(model.len(), 72);
    assert_eq!(closure(&carter), model);
    check_model(Family::E, 6, &to_bourbaki(&carter, 6), &model);
}

#[test]
fn e7_model() {
    // Carter's E7 is Carter's E8 without its first node.
    let carter: Vec<V> = e8_carter()[1..].to_vec();
    let model = closure(&carter);
    assert_eq!(model.len(), 126);
    check_model(Family::E, 7, &to_bourbaki(&carter, 7), &model);
}

#[test]
fn f4_carter_is_bourbaki() {
    assert!(Numbering::carter_to_bourbaki(Component::new(Family::F, 4).unwrap()).is_none());
}

#[test]
fn f4_model() {
    let n = 4;
    let mut model = HashSet::new();
    pm_pairs(n, 2, n, &mut model);
    for i in 0..n {
        model.insert(lin(&[(2, &e(n, i))]));
        model.insert(lin(&[(-2, &e(n, i))]));
    }
    for m in 0..16u32 {
        model.insert((0..n).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect());
    }
    assert_eq!(model.len(), 48);
    let simples = vec![
        vec![0, 2, -2, 0],
        vec![0, 0, 2, -2],
        vec![0, 0, 0, 2],
        vec![1, -1, -1, -1],
    ];
    check_model(Family::F, 4, &simples, &model);
}
