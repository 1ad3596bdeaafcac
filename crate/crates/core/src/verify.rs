//! Rule-based expected answers and the exhaustive sweep that checks the
//! pipeline against them.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::classify::{classify_cominuscule, CominusculeId};
use crate::error::{Error, Result};
use crate::grading::{Decoration, GradedRootSystem};
use crate::hasse::{flag_hasse, highest_component};
use crate::notation::render_spec;
use crate::rootsys::{Component, DiagramType, Family, Root, RootSystem};
use crate::subsystem::{
    decorated_diagram, direct_members, generated_members, perpendicular_compact_roots, trichotomy_violations,
    DecoratedDiagram, Subsystem,
};

/// Expected associated cominuscule per component, with the rule that
/// produced each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedResult {
    pub spec: String,
    pub expected: Vec<CominusculeId>,
    pub rules: Vec<&'static str>,
}

/// The case analysis per family. `inject_fault` corrupts one row so the
/// harness can be shown to catch it.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rules {
    pub inject_fault: bool,
}

impl Rules {
    pub fn standard() -> Rules {
        Rules { inject_fault: false }
    }

    pub fn faulty() -> Rules {
        Rules { inject_fault: true }
    }

    pub fn expected_answer(&self, dtype: &DiagramType, dec: &Decoration) -> Result<ExpectedResult> {
        if dec.len() != dtype.rank() {
            return Err(Error::DecorationLength {
                expected: dtype.rank(),
                got: dec.len(),
            });
        }
        let mut expected = Vec::new();
        let mut rules = Vec::new();
        for (k, (c, off)) in dtype.components().iter().zip(dtype.offsets()).enumerate() {
            let marks = &dec.as_slice()[off..off + c.rank];
            if !marks.contains(&true) {
                return Err(Error::MissingCross {
                    component: k + 1,
                    label: c.to_string(),
                });
            }
            let (id, rule) = self.expected_component(*c, marks)?;
            expected.push(id);
            rules.push(rule);
        }
        Ok(ExpectedResult {
            spec: render_spec(dtype, dec),
            expected,
            rules,
        })
    }

    fn expected_component(&self, c: Component, marks: &[bool]) -> Result<(CominusculeId, &'static str)> {
        let r = c.rank;
        // 1-based node predicates
        let x = |i: usize| marks[i - 1];
        let first_in = |lo: usize, hi: usize| (lo..=hi).find(|&i| x(i));
        let crosses: Vec<usize> = (1..=r).filter(|&i| x(i)).collect();
        let id = CominusculeId::new;
        let p = |n: usize| id(Family::A, n, 1);

        let (result, rule) = match c.family {
            Family::A => {
                let (first, last) = (crosses[0], crosses[crosses.len() - 1]);
                (
                    id(Family::A, first + r - last, first),
                    "A: span of the crosses collapsed to one node",
                )
            }
            Family::B => {
                if x(2) {
                    (p(1), "B: node 2 crossed")
                } else if x(1) {
                    match first_in(3, r) {
                        None => (id(Family::B, r, 1), "B: only node 1 crossed"),
                        Some(next) => (p(next - 1), "B: node 1 crossed, next cross at l+1"),
                    }
                } else {
                    let l = crosses[0];
                    (id(Family::D, l, l), "B: first cross at l >= 3")
                }
            }
            Family::C => {
                let l = crosses[0];
                if l == r {
                    (id(Family::C, r, r), "C: only node r crossed")
                } else {
                    (id(Family::C, l, l), "C: first cross at l < r")
                }
            }
            Family::D => {
                if crosses.len() == 1 && [1, r - 1, r].contains(&crosses[0]) {
                    (id(Family::D, r, crosses[0]), "D: cominuscule")
                } else if x(2) {
                    (p(1), "D: node 2 crossed")
                } else if x(1) {
                    match first_in(3, r - 2) {
                        Some(m) => (p(m - 1), "D: node 1 and a middle node crossed"),
                        None if x(r - 1) && x(r) => (p(r - 2), "D: nodes 1, r-1, r crossed"),
                        None => (p(r - 1), "D: node 1 and one fork node crossed"),
                    }
                } else {
                    match first_in(3, r - 2) {
                        Some(l) => (id(Family::D, l, l), "D: first cross at l in 3..r-2"),
                        None => (id(Family::D, r - 1, r - 1), "D: both fork nodes crossed"),
                    }
                }
            }
            Family::E if r == 6 => {
                if x(2) {
                    (p(1), "E6: node 2 crossed")
                } else if x(4) {
                    (p(2), "E6: node 4 crossed")
                } else {
                    let arm = |near: usize, far: usize| {
                        if x(near) {
                            0
                        } else if x(far) {
                            1
                        } else {
                            2
                        }
                    };
                    let (a, b) = (arm(3, 1), arm(5, 6));
                    match (a.min(b), a.max(b)) {
                        (0, 0) => (p(3), "E6: nodes 3 and 5 crossed"),
                        (0, 1) => (p(4), "E6: one inner arm node and the other end crossed"),
                        (0, 2) => (p(5), "E6: one inner arm node crossed"),
                        (1, 1) => (id(Family::D, 5, 1), "E6: both end nodes crossed"),
                        (1, 2) => (id(Family::E, 6, 1), "E6: cominuscule"),
                        _ => return Err(Error::Internal(format!("E6 rules do not cover {marks:?}"))),
                    }
                }
            }
            Family::E if r == 7 => {
                if x(1) {
                    (p(1), "E7: node 1 crossed")
                } else if x(3) {
                    (p(2), "E7: node 3 crossed")
                } else if x(4) {
                    (p(3), "E7: node 4 crossed")
                } else {
                    let k = (5..=7).take_while(|&i| !x(i)).count();
                    match (x(2), k) {
                        (true, _) => (p(4 + k), "E7: node 2 crossed"),
                        (false, 0) => (p(5), "E7: node 5 crossed"),
                        (false, 1) => (id(Family::D, 6, 1), "E7: node 6 crossed"),
                        (false, 2) => (id(Family::E, 7, 7), "E7: cominuscule"),
                        _ => return Err(Error::Internal(format!("E7 rules do not cover {marks:?}"))),
                    }
                }
            }
            Family::E => {
                if let Some(c) = [8, 7, 6, 5, 4].iter().position(|&i| x(i)) {
                    (p(c + 1), "E8: first cross walking in from node 8")
                } else {
                    let a = if x(3) {
                        0
                    } else if x(1) {
                        1
                    } else {
                        2
                    };
                    match (x(2), a) {
                        (true, _) => (p(6 + a), "E8: node 2 crossed"),
                        (false, 0) => (p(7), "E8: node 3 crossed"),
                        (false, 1) => (id(Family::D, 8, 1), "E8: only node 1 crossed"),
                        _ => return Err(Error::Internal(format!("E8 rules do not cover {marks:?}"))),
                    }
                }
            }
            Family::F => match crosses[0] {
                4 if self.inject_fault => (p(4), "F4: injected fault"),
                4 => (id(Family::B, 4, 1), "F4: only node 4 crossed"),
                c => (p(c), "F4: first crossed node"),
            },
            Family::G => {
                if x(2) {
                    (p(1), "G2: long node crossed")
                } else {
                    (p(2), "G2: only the short node crossed")
                }
            }
        };
        Ok((result?, rule))
    }
}

pub fn expected_answer(dtype: &DiagramType, dec: &Decoration) -> Result<ExpectedResult> {
    Rules::standard().expected_answer(dtype, dec)
}

/// Every stage of one pipeline run.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub graded: GradedRootSystem,
    pub subsystem: Subsystem,
    pub diagram: DecoratedDiagram,
    pub ids: Vec<CominusculeId>,
}

pub fn run_pipeline(rs: Arc<RootSystem>, dec: Decoration, allow_point_factors: bool) -> Result<Pipeline> {
    let graded = GradedRootSystem::build(rs, dec, allow_point_factors)?;
    let subsystem = Subsystem::from_members(&graded, generated_members(&graded))?;
    let diagram = decorated_diagram(&subsystem)?;
    let ids = classify_cominuscule(&diagram)?;
    Ok(Pipeline {
        graded,
        subsystem,
        diagram,
        ids,
    })
}

/// Root systems shared across sweep inputs.
#[derive(Debug, Default)]
pub struct RootSystemCache {
    systems: HashMap<DiagramType, Arc<RootSystem>>,
}

impl RootSystemCache {
    pub fn get(&mut self, dtype: &DiagramType) -> Arc<RootSystem> {
        Arc::clone(
            self.systems
                .entry(dtype.clone())
                .or_insert_with(|| Arc::new(RootSystem::new(dtype))),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// A pipeline stage returned an error.
    Pipeline,
    Expected,
    OracleEquivalence,
    Closure,
    BoxComponent,
    Dimension,
    Idempotence,
    GradeTrichotomy,
    CompactDichotomy,
    ComponentCount,
    LowestBoxRoot,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Pipeline,
        Check::Expected,
        Check::OracleEquivalence,
        Check::Closure,
        Check::BoxComponent,
        Check::Dimension,
        Check::Idempotence,
        Check::GradeTrichotomy,
        Check::CompactDichotomy,
        Check::ComponentCount,
        Check::LowestBoxRoot,
    ];
}

/// One failed check. Carries the subsystem from both constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub spec: String,
    pub check: Check,
    pub detail: String,
    pub generated: Vec<Root>,
    pub direct: Vec<Root>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn is_success(&self) -> bool {
        self.failed == 0
    }

    pub fn failures_of(&self, check: Check) -> usize {
        self.mismatches.iter().filter(|m| m.check == check).count()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "inputs: {}, passed: {}, failed: {}",
            self.total, self.passed, self.failed
        );
        for c in Check::ALL {
            let n = self.failures_of(c);
            if n > 0 {
                let _ = writeln!(s, "  {c:?}: {n} failures");
            }
        }
        for m in &self.mismatches {
            let _ = writeln!(s, "MISMATCH {} [{:?}] {}", m.spec, m.check, m.detail);
            let list = |v: &[Root]| v.iter().map(Root::to_string).collect::<Vec<_>>().join(" ");
            let _ = writeln!(s, "  generated: {}", list(&m.generated));
            let _ = writeln!(s, "  direct:    {}", list(&m.direct));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Irreducible types of rank at most `max_rank` (`D` from 4), plus every
/// exceptional type, each with all nonempty decorations.
pub fn sweep_inputs(max_rank: usize) -> Vec<(DiagramType, Decoration)> {
    let mut types = Vec::new();
    for (family, lo) in [(Family::A, 1), (Family::B, 2), (Family::C, 2), (Family::D, 4)] {
        for r in lo..=max_rank {
            types.push(DiagramType::simple(family, r).expect("valid"));
        }
    }
    for (family, r) in [
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::F, 4),
        (Family::G, 2),
    ] {
        types.push(DiagramType::simple(family, r).expect("valid"));
    }
    types
        .into_iter()
        .flat_map(|t| {
            let r = t.rank();
            (1..1u64 << r).map(move |mask| (t.clone(), Decoration::from_mask(r, mask)))
        })
        .collect()
}

pub fn sweep(max_rank: usize) -> SweepReport {
    sweep_with(max_rank, Rules::standard())
}

pub fn sweep_with(max_rank: usize, rules: Rules) -> SweepReport {
    let mut cache = RootSystemCache::default();
    let mut report = SweepReport::default();
    for (dtype, dec) in sweep_inputs(max_rank) {
        let found = check_input(&mut cache, &dtype, &dec, rules);
        report.total += 1;
        if found.is_empty() {
            report.passed += 1;
        } else {
            report.failed += 1;
            report.mismatches.extend(found);
        }
    }
    report
}

/// Runs the pipeline on one input and every cross-module check.
pub fn check_input(cache: &mut RootSystemCache, dtype: &DiagramType, dec: &Decoration, rules: Rules) -> Vec<Mismatch> {
    let spec = render_spec(dtype, dec);
    let rs = cache.get(dtype);
    let mut out = Vec::new();
    let g = match GradedRootSystem::new(Arc::clone(&rs), dec.clone()) {
        Ok(g) => g,
        Err(e) => {
            out.push(Mismatch {
                spec,
                check: Check::Pipeline,
                detail: e.to_string(),
                generated: Vec::new(),
                direct: Vec::new(),
            });
            return out;
        }
    };
    let gen = generated_members(&g);
    let dir = direct_members(&g);
    let roots = |v: &[usize]| v.iter().map(|&i| rs.root(i).clone()).collect::<Vec<_>>();
    let (gen_roots, dir_roots) = (roots(&gen), roots(&dir));
    let mut fail = |check: Check, detail: String| {
        out.push(Mismatch {
            spec: spec.clone(),
            check,
            detail,
            generated: gen_roots.clone(),
            direct: dir_roots.clone(),
        })
    };

    if gen != dir {
        fail(
            Check::OracleEquivalence,
            format!("generated {} roots, direct {} roots", gen.len(), dir.len()),
        );
    }
    let bad = trichotomy_violations(&g, &gen);
    if !bad.is_empty() {
        fail(
            Check::GradeTrichotomy,
            format!("{} members with other grades", bad.len()),
        );
    }
    let sub = match Subsystem::from_members(&g, gen.clone()) {
        Ok(s) => s,
        Err(e) => {
            fail(Check::Pipeline, e.to_string());
            return out;
        }
    };
    if !sub.is_closed() {
        fail(Check::Closure, "not closed under reflection".into());
    }

    let dir_set: BTreeSet<usize> = dir.iter().copied().collect();
    let perp: BTreeSet<Root> = perpendicular_compact_roots(&g, &sub).into_iter().collect();
    let stray = (0..rs.len())
        .filter(|&i| g.is_compact_at(i) && g.is_active(rs.component_at(i)))
        .filter(|&i| !dir_set.contains(&i) && !perp.contains(rs.root(i)))
        .count();
    if stray > 0 {
        fail(
            Check::CompactDichotomy,
            format!("{stray} compact roots neither differences of box roots nor perpendicular"),
        );
    }

    let diagram = match decorated_diagram(&sub) {
        Ok(d) => d,
        Err(e) => {
            fail(Check::Pipeline, e.to_string());
            return out;
        }
    };
    let ids = match classify_cominuscule(&diagram) {
        Ok(ids) => ids,
        Err(e) => {
            fail(Check::Pipeline, e.to_string());
            return out;
        }
    };
    let out_spec = render_spec(&diagram.dtype, &diagram.dec);
    let active = g.active_components();
    if ids.len() != active.len() {
        fail(
            Check::ComponentCount,
            format!("{out_spec} has {} components, input has {}", ids.len(), active.len()),
        );
    }

    match rules.expected_answer(dtype, dec) {
        Ok(exp) => {
            let ok =
                exp.expected.len() == ids.len() && exp.expected.iter().zip(&ids).all(|(e, got)| e.same_variety(got));
            if !ok {
                let show = |v: &[CominusculeId]| v.iter().map(CominusculeId::summary).collect::<Vec<_>>().join("; ");
                fail(
                    Check::Expected,
                    format!(
                        "expected {} ({}), got {} from {out_spec}",
                        show(&exp.expected),
                        exp.rules.join("; "),
                        show(&ids)
                    ),
                );
            }
        }
        Err(e) => fail(Check::Expected, e.to_string()),
    }

    let h = flag_hasse(&g);
    let comps = highest_component(&h, &g);
    let crossed = diagram.crossed_nodes();
    for (j, &k) in active.iter().enumerate() {
        let boxed = g.maximal_roots_of(k);
        if comps[k] != boxed {
            fail(
                Check::BoxComponent,
                format!(
                    "component {}: highest component has {} roots, box {}",
                    k + 1,
                    comps[k].len(),
                    boxed.len()
                ),
            );
        }
        if let Some(id) = ids.get(j) {
            if id.dimension != boxed.len() {
                fail(
                    Check::Dimension,
                    format!(
                        "component {}: {} has dimension {}, box has {}",
                        k + 1,
                        id.summary(),
                        id.dimension,
                        boxed.len()
                    ),
                );
            }
        }
        let sources = h.restrict(&boxed).sources();
        let lowest = crossed
            .get(j)
            .and_then(|c| c.first())
            .map(|&n| &diagram.node_embedding[n]);
        if sources.len() != 1 || Some(&sources[0]) != lowest {
            fail(
                Check::LowestBoxRoot,
                format!(
                    "component {}: box sources {sources:?}, crossed simple {lowest:?}",
                    k + 1
                ),
            );
        }
    }

    match run_pipeline(cache.get(&diagram.dtype), diagram.dec.clone(), false) {
        Ok(again) => {
            let box_total = g.maximal_indices().len();
            if again.graded.dimension() != box_total {
                fail(
                    Check::Dimension,
                    format!(
                        "{out_spec} has dimension {}, box has {box_total}",
                        again.graded.dimension()
                    ),
                );
            }
            if (&again.diagram.dtype, &again.diagram.dec) != (&diagram.dtype, &diagram.dec) {
                fail(
                    Check::Idempotence,
                    format!(
                        "{out_spec} maps to {}",
                        render_spec(&again.diagram.dtype, &again.diagram.dec)
                    ),
                );
            }
        }
        Err(e) => fail(Check::Idempotence, format!("{out_spec}: {e}")),
    }
    out
}
